"""Paired-bit simulation of the Deutsch-Jozsa and Simon oracle algorithms."""

from .algorithms import (
    DjResult,
    IterationLimitExceeded,
    SimonResult,
    classical_dj_deterministic,
    classical_dj_randomized,
    deutsch_jozsa,
    simon_deterministic,
    simon_probabilistic,
    simon_subroutine,
)
from .core import Circuit, GateOp, QslBit, QslRegister, cnot_across
from .gf2 import (
    BitMatrix,
    BitVec,
    dot,
    nullspace_basis,
    orthogonal_complement_basis,
    rank,
    solve_secret,
    xor,
)
from .oracles import (
    DjOracleSpec,
    SimonOracleSpec,
    build_dj_oracle,
    build_simon_oracle,
    random_dj_spec,
    random_simon_spec,
    spec_from_json_dict,
)
from .perms import CircuitPerm, TablePerm, identity_perm, random_circuit_perm, random_table_perm
from .rng import ConstantBits, RngStream

__all__ = [
    "BitMatrix",
    "BitVec",
    "Circuit",
    "CircuitPerm",
    "ConstantBits",
    "DjOracleSpec",
    "DjResult",
    "GateOp",
    "IterationLimitExceeded",
    "QslBit",
    "QslRegister",
    "RngStream",
    "SimonOracleSpec",
    "SimonResult",
    "TablePerm",
    "build_dj_oracle",
    "build_simon_oracle",
    "classical_dj_deterministic",
    "classical_dj_randomized",
    "cnot_across",
    "deutsch_jozsa",
    "dot",
    "identity_perm",
    "nullspace_basis",
    "orthogonal_complement_basis",
    "random_circuit_perm",
    "random_dj_spec",
    "random_simon_spec",
    "random_table_perm",
    "rank",
    "simon_deterministic",
    "simon_probabilistic",
    "simon_subroutine",
    "solve_secret",
    "spec_from_json_dict",
    "xor",
]
