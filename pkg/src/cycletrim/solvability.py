"""Selecting basis subsets that can carry a spanning cycle.

A subset of basis cycles is a *solution* when its total (length - 2) equals
``vertex_count - 2``; this is the Grinberg-style counting identity that a
chained cycle decomposition of a Hamilton cycle satisfies. The complement of
a solution is its *co-solution*: the cycles the solver is allowed to delete.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cycle_space import Cycle, CycleBasis
from .graphs import Graph, mask_vertices

PAIR_TWO_VERTEX_ONE_EDGE = "two_vertex_one_edge"
PAIR_TWO_VERTEX_NO_EDGE = "two_vertex_no_edge"
PAIR_OTHER = "other"


@dataclass(frozen=True)
class PairProfile:
    """How two cycles intersect: shared vertex and edge counts plus a tag."""

    tag: str
    shared_vertices: int
    shared_edges: int


@dataclass(frozen=True)
class SolutionPartition:
    """A solution subset together with its co-solution complement.

    ``pool`` is the initial set of deletable cycles (the whole co-solution);
    ``groups`` splits the co-solution into maximal clusters connected by
    edge sharing.
    """

    solution: tuple[int, ...]
    co_solution: tuple[int, ...]
    pool: tuple[int, ...]
    groups: tuple[tuple[int, ...], ...]


def solution_sum(basis: CycleBasis, indices: Sequence[int]) -> int:
    """Total (length - 2) over the chosen cycles."""
    if len(set(indices)) != len(indices):
        raise ValueError("cycle indices must be distinct")
    return sum(basis.cycles[i].length - 2 for i in indices)


def classify_pair(g: Graph, a: Cycle, b: Cycle) -> PairProfile:
    """Intersection profile of two distinct cycles.

    Two cycles meeting in exactly two vertices can share at most the one
    edge joining them, hence the tags distinguish the one-edge and no-edge
    cases only.
    """
    if a == b:
        raise ValueError("classify_pair requires two distinct cycles")
    shared_edges = (a.edges & b.edges).bit_count()
    shared_vertices = len(mask_vertices(g, a.edges) & mask_vertices(g, b.edges))
    if shared_vertices == 2 and shared_edges == 1:
        tag = PAIR_TWO_VERTEX_ONE_EDGE
    elif shared_vertices == 2 and shared_edges == 0:
        tag = PAIR_TWO_VERTEX_NO_EDGE
    else:
        tag = PAIR_OTHER
    return PairProfile(tag, shared_vertices, shared_edges)


def _co_solution_groups(
    basis: CycleBasis, co_solution: tuple[int, ...]
) -> tuple[tuple[int, ...], ...]:
    # maximal clusters of co-solution cycles connected by edge sharing
    remaining = set(co_solution)
    groups = []
    while remaining:
        seed = min(remaining)
        members = {seed}
        frontier = [seed]
        while frontier:
            cur = frontier.pop()
            row = basis.cycles[cur].edges
            for other in sorted(remaining - members):
                if row & basis.cycles[other].edges:
                    members.add(other)
                    frontier.append(other)
        remaining -= members
        groups.append(tuple(sorted(members)))
    return tuple(groups)


def _make_partition(basis: CycleBasis, solution: tuple[int, ...]) -> SolutionPartition:
    co = tuple(i for i in range(basis.dimension) if i not in set(solution))
    return SolutionPartition(
        solution=solution,
        co_solution=co,
        pool=co,
        groups=_co_solution_groups(basis, co),
    )


def enumerate_solutions(basis: CycleBasis, *, cap: int = 64) -> tuple[SolutionPartition, ...]:
    """All solution subsets, smallest first then lexicographic, up to ``cap``.

    Every cycle contributes at least 1 to the total, so solutions have at
    most ``vertex_count - 2`` members; the search prunes on that bound. An
    empty result means the identity has no solutions under this basis.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    target = basis.graph.vertex_count - 2
    values = [c.length - 2 for c in basis.cycles]
    dim = len(values)
    max_value = max(values, default=0)
    found: list[tuple[int, ...]] = []
    chosen: list[int] = []

    def extend(start: int, acc: int, remaining: int) -> bool:
        if remaining == 0:
            if acc == target:
                found.append(tuple(chosen))
                return len(found) >= cap
            return False
        for i in range(start, dim - remaining + 1):
            nacc = acc + values[i]
            if nacc + (remaining - 1) > target:
                continue
            if nacc + (remaining - 1) * max_value < target:
                continue
            chosen.append(i)
            stop = extend(i + 1, nacc, remaining - 1)
            chosen.pop()
            if stop:
                return True
        return False

    for size in range(1, min(dim, target) + 1):
        if extend(0, 0, size):
            break
    return tuple(_make_partition(basis, sol) for sol in found)


def is_solvable(basis: CycleBasis) -> bool:
    return bool(enumerate_solutions(basis, cap=1))
