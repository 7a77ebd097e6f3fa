"""MCP server exposing decoder learning for doped Clifford scramblers."""

import asyncio
import logging
import sys
from typing import Any

import mcp.server.stdio
import mcp.types as types
from mcp.server import Server
from mcp.server.models import InitializationOptions

from . import __version__
from .config import settings
from .tools.decoder_tools import (
    decompose_circuit,
    get_resolution_bound,
    hp_fidelity,
    learn_decoder,
    run_experiment,
    sample_clifford,
    verify_oracles,
)

logging.basicConfig(
    level=getattr(logging, settings.log_level.upper()),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
)
logger = logging.getLogger(__name__)

server = Server("doped-decoder")

_CIRCUIT = {
    "type": "string",
    "description": "Circuit text: a 'circuit n=<n>' header followed by gate lines such as 'H 1' or 'CNOT 1 2'"
}
_SEED = {"type": "integer", "description": "Seed for the random generator"}


@server.list_tools()
async def handle_list_tools() -> list[types.Tool]:
    """List available MCP tools."""
    return [
        types.Tool(
            name="sample_clifford",
            description="Sample a uniformly random n-qubit Clifford and return its tableau",
            inputSchema={
                "type": "object",
                "properties": {
                    "n": {"type": "integer", "description": "Number of qubits", "minimum": 1},
                    "seed": _SEED,
                },
                "required": ["n"]
            }
        ),
        types.Tool(
            name="learn_decoder",
            description="Learn a Clifford decoder for a t-doped circuit from oracle queries",
            inputSchema={
                "type": "object",
                "properties": {
                    "circuit": _CIRCUIT,
                    "m": {"type": "integer", "description": "Excluded leading qubits", "minimum": 0, "default": 0},
                    "seed": _SEED,
                    "mode": {"type": "string", "enum": ["exact", "shots"], "default": "exact"},
                },
                "required": ["circuit"]
            }
        ),
        types.Tool(
            name="decompose_circuit",
            description="Decompose a doped circuit into two Cliffords around a residual on few qubits",
            inputSchema={
                "type": "object",
                "properties": {"circuit": _CIRCUIT, "seed": _SEED},
                "required": ["circuit"]
            }
        ),
        types.Tool(
            name="hp_fidelity",
            description="Learn a decoder on D and report Hayden-Preskill decoding quantities",
            inputSchema={
                "type": "object",
                "properties": {
                    "circuit": _CIRCUIT,
                    "n_a": {"type": "integer", "description": "|A|", "minimum": 0, "default": 1},
                    "n_d": {"type": "integer", "description": "|D|", "minimum": 1, "default": 4},
                    "seed": _SEED,
                },
                "required": ["circuit"]
            }
        ),
        types.Tool(
            name="resolution_bound",
            description="Smallest gap between distinct Choi expectations of a t-doped circuit",
            inputSchema={
                "type": "object",
                "properties": {"t": {"type": "integer", "description": "Number of T gates", "minimum": 0}},
                "required": ["t"]
            }
        ),
        types.Tool(
            name="run_experiment",
            description="Run the decoder-learning experiment over a range of T counts",
            inputSchema={
                "type": "object",
                "properties": {
                    "n": {"type": "integer", "default": 8},
                    "n_a": {"type": "integer", "default": 1},
                    "n_d": {"type": "integer", "default": 4},
                    "t_min": {"type": "integer", "default": 0},
                    "t_max": {"type": "integer", "default": 6},
                    "samples": {"type": "integer", "minimum": 1, "default": 10},
                    "seed": _SEED,
                    "mode": {"type": "string", "enum": ["exact", "shots"], "default": "exact"},
                }
            }
        ),
        types.Tool(
            name="verify_oracles",
            description="Cross-check exact propagation and tableaux against dense simulation",
            inputSchema={
                "type": "object",
                "properties": {
                    "n_max": {"type": "integer", "minimum": 1, "maximum": 6, "default": 4},
                    "cases": {"type": "integer", "minimum": 1, "default": 50},
                    "seed": _SEED,
                }
            }
        ),
    ]


@server.call_tool()
async def handle_call_tool(name: str, arguments: dict[str, Any] | None) -> list[types.TextContent]:
    """Handle tool calls."""
    try:
        if arguments is None:
            arguments = {}

        logger.info(f"Calling tool: {name} with arguments: {arguments}")

        if name == "sample_clifford":
            result = await sample_clifford(**arguments)
        elif name == "learn_decoder":
            result = await learn_decoder(**arguments)
        elif name == "decompose_circuit":
            result = await decompose_circuit(**arguments)
        elif name == "hp_fidelity":
            result = await hp_fidelity(**arguments)
        elif name == "resolution_bound":
            result = await get_resolution_bound(**arguments)
        elif name == "run_experiment":
            result = await run_experiment(**arguments)
        elif name == "verify_oracles":
            result = await verify_oracles(**arguments)
        else:
            result = {
                "success": False,
                "error": f"Unknown tool: {name}",
            }

        logger.info(f"Tool {name} completed")
        return [types.TextContent(type="text", text=str(result))]

    except Exception as e:
        error_msg = f"Error calling tool {name}: {str(e)}"
        logger.error(error_msg)
        return [types.TextContent(type="text", text=str({"success": False, "error": error_msg}))]


async def main():
    """Main server entry point."""
    logger.info(f"Starting doped-decoder MCP server v{__version__}")
    logger.info(f"Log level: {settings.log_level}, oracle mode: {settings.oracle_mode}")

    capabilities = types.ServerCapabilities(
        tools={},
        resources={},
        prompts=None,
        logging=None
    )

    async with mcp.server.stdio.stdio_server() as (read_stream, write_stream):
        await server.run(
            read_stream,
            write_stream,
            InitializationOptions(
                server_name="doped-decoder",
                server_version=__version__,
                capabilities=capabilities,
            ),
        )


def cli_main():
    """CLI entry point."""
    try:
        asyncio.run(main())
    except KeyboardInterrupt:
        logger.info("Server stopped by user")
        sys.exit(0)
    except Exception as e:
        logger.error(f"Server error: {e}")
        sys.exit(1)


if __name__ == "__main__":
    cli_main()
