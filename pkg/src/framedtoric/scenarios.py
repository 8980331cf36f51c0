"""Canned inputs: named complete-intersection families over projective
space.  All matrices are generated from the block formulas, never typed in
by hand."""

from __future__ import annotations

from .ftv import PartitionedFtv, generate_dd_input


def pn_fan_matrix(n):
    """Standard fan matrix of P^n: [I_n | -1]."""
    return [[1 if i == j else 0 for j in range(n)] + [-1] for i in range(n)]


def _pn_scenario(n, block_supports_and_tails):
    """Blocks over P^n in normal form: each block is given by (support
    length m_k, excess delta_k) in order, supports consecutive."""
    blocks = []
    pos = 0
    total = n + 1
    for m, delta in block_supports_and_tails:
        a = [0] * total
        for i in range(m - 1):
            a[pos + i] = 1
        a[pos + m - 1] = delta
        pos += m
        blocks.append(a)
    if pos != total:
        raise ValueError("block supports do not cover all columns")
    return PartitionedFtv(pn_fan_matrix(n), blocks)


SCENARIO_NAMES = ("y22", "y33", "y223p5", "y223p6", "y456")


def scenario(name: str) -> PartitionedFtv:
    """Look up a scenario by name; ``ydd:<d>`` gives the degree-(d,d)
    family in P^{2d-1}."""
    if name.startswith("ydd:"):
        d = int(name.split(":", 1)[1])
        return generate_dd_input(d)[0]
    table = {
        "y22": (3, [(2, 1), (2, 1)]),
        "y33": (5, [(3, 1), (3, 1)]),
        "y223p5": (5, [(2, 1), (2, 1), (2, 2)]),
        "y223p6": (6, [(2, 1), (2, 1), (3, 1)]),
        "y456": (8, [(3, 2), (3, 3), (3, 4)]),
    }
    if name not in table:
        raise KeyError(f"unknown scenario {name!r}")
    n, blocks = table[name]
    return _pn_scenario(n, blocks)
