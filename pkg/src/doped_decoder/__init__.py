"""
Doped Clifford Decoder

Learns Clifford decoders for t-doped Clifford scramblers from query access,
checks the compression decomposition and the Hayden-Preskill decoding fidelity,
and reproduces the doped-scrambler learning numerics.
"""

__version__ = "0.1.0"
__author__ = "Doped Decoder Team"
__description__ = "Clifford decoder learning for t-doped Clifford scramblers"
