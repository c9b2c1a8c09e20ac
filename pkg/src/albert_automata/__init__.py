"""Simulation and verification of self-measuring quantum automata."""

from importlib import resources

from .automaton import (
    ChainState,
    Gait,
    Observable,
    albert_chain,
    albert_record_observable,
    commuting_gait,
    construct_u1,
    error_observable,
    external_chain,
    godel_observable,
    measurement_unitary,
    proof_gait,
    readout_godel_number,
    verify_error_commutator_identity,
)
from .godel import NumberRegistry, Proposition, decode, diagonal_sentence, encode
from .hilbert import RegisterLayout
from .protocol import ParseError, execute, parse, render
from .report import ChainReport

__version__ = "0.1.0"


def demo_script() -> str:
    """Text of the bundled two-stage demo scenario."""
    return resources.files(__package__).joinpath("data/albert_demo.scn").read_text(encoding="utf-8")
