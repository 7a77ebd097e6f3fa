"""Tests for decoder tools and the MCP server handlers."""

import pytest

from doped_decoder.server import handle_call_tool, handle_list_tools
from doped_decoder.tools.decoder_tools import (
    decompose_circuit,
    get_resolution_bound,
    hp_fidelity,
    learn_decoder,
    run_experiment,
    sample_clifford,
    verify_oracles,
)

CLIFFORD_CIRCUIT = "circuit n=4\nH 1\nCNOT 1 2\nS 3\nCNOT 3 4\nH 4\nCNOT 2 3\n"
DOPED_CIRCUIT = "circuit n=4\nH 1\nCNOT 1 2\nT 1\nH 3\nCNOT 3 4\nT 4\nCNOT 2 3\n"


@pytest.mark.asyncio
async def test_sample_clifford():
    """Test sampling a random Clifford."""
    result = await sample_clifford(n=3, seed=1)
    assert result["success"] is True
    assert result["tableau"].startswith("tableau n=3\n")
    assert result == await sample_clifford(n=3, seed=1)


@pytest.mark.asyncio
async def test_sample_clifford_invalid_n():
    """Test invalid qubit counts are reported, not raised."""
    result = await sample_clifford(n=0)
    assert result["success"] is False
    assert "error" in result


@pytest.mark.asyncio
async def test_learn_decoder():
    """Test learning a decoder from circuit text."""
    result = await learn_decoder(circuit=DOPED_CIRCUIT, m=0, seed=3)
    assert result["success"] is True
    assert result["generators"]
    assert result["decoder"].startswith("decoder n=4\n")
    assert result["stats"]["k_reached"] == len(result["generators"])


@pytest.mark.asyncio
async def test_learn_decoder_bad_circuit():
    """Test malformed circuit text."""
    result = await learn_decoder(circuit="H 1\n")
    assert result["success"] is False
    assert result["generators"] == []


@pytest.mark.asyncio
async def test_decompose_circuit():
    """Test decomposing a Clifford circuit."""
    result = await decompose_circuit(circuit=CLIFFORD_CIRCUIT, seed=2)
    assert result["success"] is True
    assert result["t"] == 0
    assert result["s"] == 4
    assert set(result["gate_counts"]) == {"u0", "u0_prime", "circuit"}


@pytest.mark.asyncio
async def test_hp_fidelity():
    """Test the decoding report for a small doped circuit."""
    result = await hp_fidelity(circuit=DOPED_CIRCUIT, n_a=1, n_d=2, seed=5)
    assert result["success"] is True
    report = result["report"]
    assert report["consistent"] is True
    assert 0.0 < report["fidelity"] <= 1.0
    assert isinstance(result["scrambler"], bool)


@pytest.mark.asyncio
async def test_hp_fidelity_bad_partition():
    """Test |D| larger than the register."""
    result = await hp_fidelity(circuit=CLIFFORD_CIRCUIT, n_a=1, n_d=5)
    assert result["success"] is False


@pytest.mark.asyncio
async def test_get_resolution_bound():
    """Test the resolution bound tool."""
    result = await get_resolution_bound(t=0)
    assert result["success"] is True
    assert result["bound"] == pytest.approx(0.2357022603955)
    assert (await get_resolution_bound(t=-1))["success"] is False


@pytest.mark.asyncio
async def test_run_experiment():
    """Test a tiny experiment run."""
    result = await run_experiment(n=4, n_a=1, n_d=2, t_min=0, t_max=1, samples=1, seed=7)
    assert result["success"] is True
    assert [s["t"] for s in result["summaries"]] == [0, 1]
    assert result["verified"] is True


@pytest.mark.asyncio
async def test_verify_oracles():
    """Test cross-validation and its register cap."""
    result = await verify_oracles(n_max=2, cases=5, seed=1)
    assert result["success"] is True
    assert result["passed"] is True
    assert (await verify_oracles(n_max=7))["success"] is False


@pytest.mark.asyncio
async def test_list_tools():
    """Test the server advertises every tool."""
    tools = await handle_list_tools()
    assert {tool.name for tool in tools} == {
        "sample_clifford",
        "learn_decoder",
        "decompose_circuit",
        "hp_fidelity",
        "resolution_bound",
        "run_experiment",
        "verify_oracles",
    }


@pytest.mark.asyncio
async def test_call_tool_dispatch():
    """Test tool dispatch and unknown tool names."""
    content = await handle_call_tool("resolution_bound", {"t": 2})
    assert "'success': True" in content[0].text
    unknown = await handle_call_tool("no_such_tool", {})
    assert "Unknown tool: no_such_tool" in unknown[0].text
