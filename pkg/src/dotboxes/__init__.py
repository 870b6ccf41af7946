"""Dots & Boxes engine, endgame analyzer, and formula-to-board compiler."""

from .board import (
    Edge,
    GameState,
    MoveOutcome,
    apply_move,
    available_moves,
    is_terminal,
    new_board,
    parse_board,
    serialize_board,
    winner,
)
from .dual import build_dual, classify_move, decompose, is_loony_endgame
from .cycles import enumerate_cycles, max_disjoint_cycles
from .endgame import controlled_value, simulate_controlled_play
from .solver import perft, solve

__all__ = [
    "Edge",
    "GameState",
    "MoveOutcome",
    "apply_move",
    "available_moves",
    "is_terminal",
    "new_board",
    "parse_board",
    "serialize_board",
    "winner",
    "build_dual",
    "classify_move",
    "decompose",
    "is_loony_endgame",
    "enumerate_cycles",
    "max_disjoint_cycles",
    "controlled_value",
    "simulate_controlled_play",
    "perft",
    "solve",
]
