"""Fuzzy simulation between max-min automata.

A relation ``phi`` (n1×n2, entry ``phi[i][j]`` = degree to which state i of
the first automaton is simulated by state j of the second) is a simulation
when

* initial:    ``x01 <= x02 ⊙ phiᵀ``
* marked:     ``xm1 ⊙ phi <= xm2``
* transition: ``phiᵀ ⊙ σ1 <= σ2 ⊙ phiᵀ`` for every event σ.

Two deciders are provided.  :func:`greatest_simulation` iterates a
residuum-based operator downward to the largest relation satisfying the
marked and transition conditions.  :func:`find_simulation_exhaustive` scans
every relation whose entries come from the candidate grid and joins the
solutions; it is the independent oracle for the fixpoint.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .algebra import (
    ONE,
    ZERO,
    FuzzyMatrix,
    Grade,
    godel_residuum,
    matrix_leq,
    maxmin_product,
)
from .automaton import FuzzyAutomaton, same_alphabet
from .errors import FDESError, ResourceLimitError, ShapeError

DEFAULT_BUDGET = 10**7
BUDGET_ENV = "FDES_BUDGET"
_CHUNK = 1 << 15

Method = Literal["exhaustive", "fixpoint", "supplied"]


@dataclass(frozen=True)
class SimulationWitness:
    phi: FuzzyMatrix
    method: Method
    direction: tuple[str, str]


@dataclass(frozen=True)
class SimulationVerdict:
    """Per-condition outcome of :func:`check_simulation`."""

    initial: bool
    marked: bool
    transitions: dict[str, bool] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.initial and self.marked and all(self.transitions.values())

    def __bool__(self) -> bool:
        return self.holds

    def failing(self) -> list[str]:
        out = []
        if not self.initial:
            out.append("initial")
        if not self.marked:
            out.append("marked")
        out.extend(f"transition:{label}" for label, ok in self.transitions.items() if not ok)
        return out


@dataclass(frozen=True)
class CandidateGrid:
    grades: tuple[Grade, ...]

    def __iter__(self):
        return iter(self.grades)

    def __len__(self) -> int:
        return len(self.grades)

    def __contains__(self, g: object) -> bool:
        return g in self.grades

    def round_up(self, value: int) -> Grade:
        """Least grid value that is ``>= value``."""
        for g in self.grades:
            if g >= value:
                return g
        raise ValueError(f"{value} exceeds the grid maximum")  # unreachable: 1 is in the grid


def _check_phi_shape(g1: FuzzyAutomaton, g2: FuzzyAutomaton, phi: FuzzyMatrix) -> None:
    if phi.shape != (g1.states, g2.states):
        raise ShapeError(
            f"relation has shape {phi.shape}, expected ({g1.states}, {g2.states}) "
            f"for {g1.name!r} -> {g2.name!r}"
        )


def check_simulation(
    g1: FuzzyAutomaton, g2: FuzzyAutomaton, phi: FuzzyMatrix
) -> SimulationVerdict:
    """Evaluate each simulation condition for ``phi`` from ``g1`` to ``g2``."""
    same_alphabet(g1, g2)
    _check_phi_shape(g1, g2, phi)
    phi_t = phi.transpose()
    initial = matrix_leq(g1.initial, maxmin_product(g2.initial, phi_t))
    marked = matrix_leq(maxmin_product(g1.marked, phi), g2.marked)
    transitions = {
        label: matrix_leq(
            maxmin_product(phi_t, g1.events[label]),
            maxmin_product(g2.events[label], phi_t),
        )
        for label in g1.alphabet
    }
    return SimulationVerdict(initial, marked, transitions)


def candidate_grid(g1: FuzzyAutomaton, g2: FuzzyAutomaton) -> CandidateGrid:
    """All grades occurring in either automaton, plus 0 and 1, ascending."""
    same_alphabet(g1, g2)
    return CandidateGrid(tuple(sorted(g1.grades() | g2.grades() | {ZERO, ONE})))


def _budget(budget: int | None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise FDESError(f"{BUDGET_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_BUDGET


def _arr(m: FuzzyMatrix) -> np.ndarray:
    return np.array(m.rows, dtype=np.int64)


def find_simulation_exhaustive(
    g1: FuzzyAutomaton,
    g2: FuzzyAutomaton,
    budget: int | None = None,
    grid: CandidateGrid | None = None,
) -> SimulationWitness | None:
    """Scan every grid-valued relation and return the join of all simulations.

    The join of simulations is again a simulation, so the answer does not
    depend on scan order.  ``grid`` defaults to :func:`candidate_grid`.
    Raises :class:`ResourceLimitError` when ``|grid| ** (n1*n2)`` exceeds the
    budget (``FDES_BUDGET`` environment variable, default 10**7).
    """
    same_alphabet(g1, g2)
    if grid is None:
        grid = candidate_grid(g1, g2)
    m, n = g1.states, g2.states
    k = len(grid)
    total = k ** (m * n)
    limit = _budget(budget)
    if total > limit:
        raise ResourceLimitError(
            f"exhaustive search needs {k}^{m * n} = {total} candidates, budget is "
            f"{limit}; use the fixpoint method instead"
        )

    values = np.array(grid.grades, dtype=np.int64)
    x01 = _arr(g1.initial)[0]
    x02 = _arr(g2.initial)[0]
    xm1 = _arr(g1.marked)[0]
    xm2 = _arr(g2.marked)[0]
    pairs = [(_arr(g1.events[a]), _arr(g2.events[a])) for a in g1.alphabet]
    powers = k ** np.arange(m * n - 1, -1, -1, dtype=np.int64)

    best = None
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        digits = (idx[:, None] // powers[None, :]) % k
        phi = values[digits].reshape(-1, m, n)  # (C, i, j)

        # initial: x01[i] <= max_j min(x02[j], phi[i, j])
        ok = (np.minimum(x02[None, None, :], phi).max(axis=2) >= x01[None, :]).all(axis=1)
        # marked: max_i min(xm1[i], phi[i, j]) <= xm2[j]
        ok &= (np.minimum(xm1[None, :, None], phi).max(axis=1) <= xm2[None, :]).all(axis=1)
        for s1, s2 in pairs:
            if not ok.any():
                break
            cand = phi[ok]
            # lhs[c, j, i] = max_i' min(phi[i', j], s1[i', i])
            lhs = np.minimum(cand[:, :, :, None], s1[None, :, None, :]).max(axis=1)
            # rhs[c, j, i] = max_j' min(s2[j, j'], phi[i, j'])
            rhs = np.minimum(
                s2[None, :, :, None], cand.transpose(0, 2, 1)[:, None, :, :]
            ).max(axis=2)
            sub = (lhs <= rhs).all(axis=(1, 2))
            ok[np.flatnonzero(ok)[~sub]] = False
        if ok.any():
            chunk_join = phi[ok].max(axis=0)
            best = chunk_join if best is None else np.maximum(best, chunk_join)

    if best is None:
        return None
    phi_m = FuzzyMatrix([[Grade(int(v)) for v in row] for row in best])
    return SimulationWitness(phi_m, "exhaustive", (g1.name, g2.name))


def greatest_marked_transition_solution(
    g1: FuzzyAutomaton, g2: FuzzyAutomaton
) -> FuzzyMatrix:
    """Largest relation satisfying the marked and transition conditions.

    Starts from the marked-condition bound ``phi[i][j] = xm1[i] -> xm2[j]`` and
    repeatedly lowers each entry to
    ``min over σ, i' of σ1[i][i'] -> (σ2 ⊙ phiᵀ)[j][i']`` until stable.
    """
    same_alphabet(g1, g2)
    m, n = g1.states, g2.states
    xm1 = g1.marked.rows[0]
    xm2 = g2.marked.rows[0]
    phi = [[godel_residuum(xm1[i], xm2[j]) for j in range(n)] for i in range(m)]
    events = [(g1.events[a].rows, g2.events[a].rows) for a in g1.alphabet]
    grid_size = len(g1.grades() | g2.grades() | {ZERO, ONE})
    limit = m * n * grid_size + 1

    for _ in range(limit):
        changed = False
        for s1, s2 in events:
            # rhs[j][i'] = max_j' min(s2[j][j'], phi[i'][j'])
            rhs = [
                [max(map(min, s2[j], phi[ip])) for ip in range(m)]
                for j in range(n)
            ]
            for i in range(m):
                row1 = s1[i]
                for j in range(n):
                    cur = phi[i][j]
                    if cur == ZERO:
                        continue
                    bound = cur
                    rj = rhs[j]
                    for ip in range(m):
                        a = row1[ip]
                        if a > rj[ip] and rj[ip] < bound:
                            bound = rj[ip]
                    if bound < cur:
                        phi[i][j] = bound
                        changed = True
        if not changed:
            return FuzzyMatrix._trusted(tuple(tuple(r) for r in phi))
    raise AssertionError(
        f"fixpoint iteration did not stabilise within {limit} rounds"
    )  # pragma: no cover - entries strictly decrease in a finite set


def greatest_simulation(
    g1: FuzzyAutomaton, g2: FuzzyAutomaton
) -> SimulationWitness | None:
    """The greatest simulation from ``g1`` to ``g2``, or ``None`` if none exists."""
    phi = greatest_marked_transition_solution(g1, g2)
    if not matrix_leq(g1.initial, maxmin_product(g2.initial, phi.transpose())):
        return None
    return SimulationWitness(phi, "fixpoint", (g1.name, g2.name))


def find_simulation(
    g1: FuzzyAutomaton,
    g2: FuzzyAutomaton,
    method: Literal["fixpoint", "exhaustive"] = "fixpoint",
    budget: int | None = None,
) -> SimulationWitness | None:
    if method == "fixpoint":
        return greatest_simulation(g1, g2)
    if method == "exhaustive":
        return find_simulation_exhaustive(g1, g2, budget=budget)
    raise ValueError(f"unknown method {method!r}")


def is_simulated(g1: FuzzyAutomaton, g2: FuzzyAutomaton) -> bool:
    return greatest_simulation(g1, g2) is not None


def simulation_equivalent(g1: FuzzyAutomaton, g2: FuzzyAutomaton) -> bool:
    return is_simulated(g1, g2) and is_simulated(g2, g1)


# Explicit witness constructions for derived simulations.


def compose_witnesses(phi12: FuzzyMatrix, phi23: FuzzyMatrix) -> FuzzyMatrix:
    """Witness for ``g1 ⊆ g3`` from witnesses of ``g1 ⊆ g2`` and ``g2 ⊆ g3``."""
    return maxmin_product(phi12, phi23)


def lift_left_witness(phi13: FuzzyMatrix, n2: int) -> FuzzyMatrix:
    """Witness for ``g1 || g2 ⊆ g3`` given ``g1 ⊆ g3``; ``n2`` = states of g2."""
    rows = phi13.rows
    return FuzzyMatrix._trusted(tuple(row for row in rows for _ in range(n2)))


def lift_right_witness(phi23: FuzzyMatrix, n1: int) -> FuzzyMatrix:
    """Witness for ``g1 || g2 ⊆ g3`` given ``g2 ⊆ g3``; ``n1`` = states of g1."""
    return FuzzyMatrix._trusted(tuple(phi23.rows) * n1)


def pair_witnesses(phi31: FuzzyMatrix, phi32: FuzzyMatrix) -> FuzzyMatrix:
    """Witness for ``g3 ⊆ g1 || g2`` from ``g3 ⊆ g1`` and ``g3 ⊆ g2``.

    Column ``q * n2 + r`` of row ``p`` is ``min(phi31[p][q], phi32[p][r])``.
    """
    return FuzzyMatrix._trusted(
        tuple(
            tuple(min(a, b) for a in r1 for b in r2)
            for r1, r2 in zip(phi31.rows, phi32.rows)
        )
    )


def project_witness(phi: FuzzyMatrix, n1: int, n2: int, side: int) -> FuzzyMatrix:
    """Witness for ``g3 ⊆ g_side`` from a witness of ``g3 ⊆ g1 || g2``.

    Takes the maximum over the other component's index.
    """
    if phi.shape[1] != n1 * n2:
        raise ShapeError(f"relation has {phi.shape[1]} columns, expected {n1 * n2}")
    out = []
    for row in phi.rows:
        if side == 1:
            out.append(tuple(max(row[q * n2 : (q + 1) * n2]) for q in range(n1)))
        elif side == 2:
            out.append(tuple(max(row[q * n2 + r] for q in range(n1)) for r in range(n2)))
        else:
            raise ValueError("side must be 1 or 2")
    return FuzzyMatrix._trusted(tuple(out))


def round_to_grid(phi: FuzzyMatrix, grid: CandidateGrid) -> FuzzyMatrix:
    """Raise each entry to the least grid value at or above it."""
    return FuzzyMatrix._trusted(tuple(tuple(grid.round_up(v) for v in row) for row in phi.rows))


def all_grid_relations(shape: tuple[int, int], grid: CandidateGrid):
    """Iterate every grid-valued relation of ``shape`` (pure Python, small cases)."""
    m, n = shape
    for flat in itertools.product(grid.grades, repeat=m * n):
        yield FuzzyMatrix._trusted(tuple(flat[i * n : (i + 1) * n] for i in range(m)))
