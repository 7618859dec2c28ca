"""Supervisor existence and construction for fuzzy discrete event systems."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping

from .algebra import ZERO, FuzzyMatrix, Grade
from .automaton import (
    DEFAULT_CLOSURE_CAP,
    FuzzyAutomaton,
    parallel_compose,
    same_alphabet,
    step,
)
from .errors import AlphabetError, HypothesisError, ResourceLimitError
from .simulation import SimulationWitness, greatest_simulation


class UncontrollabilityMap(Mapping[str, Grade]):
    """Degree of uncontrollability per event; controllability is ``1 - uc``."""

    def __init__(self, degrees: Mapping[str, Grade | str | int]):
        self._uc = {label: Grade.parse(v) for label, v in degrees.items()}

    @classmethod
    def zero(cls, alphabet) -> UncontrollabilityMap:
        return cls({label: ZERO for label in alphabet})

    def __getitem__(self, label: str) -> Grade:
        try:
            return self._uc[label]
        except KeyError:
            raise AlphabetError(f"no uncontrollability degree for event {label!r}") from None

    def __iter__(self):
        return iter(self._uc)

    def __len__(self) -> int:
        return len(self._uc)

    def controllability(self, label: str) -> Grade:
        return self[label].complement()

    def covers(self, g: FuzzyAutomaton) -> None:
        missing = [a for a in g.alphabet if a not in self._uc]
        if missing:
            raise AlphabetError(
                f"uncontrollability map lacks events {missing} of {g.name!r}"
            )

    def __repr__(self) -> str:
        body = ", ".join(f"{k}={v}" for k, v in self._uc.items())
        return f"UncontrollabilityMap({body})"


def is_uc_compatible(s: FuzzyAutomaton, uc: UncontrollabilityMap) -> bool:
    """True when every row of every event matrix reaches the event's
    uncontrollability degree, i.e. no uncontrollable slack can be disabled."""
    uc.covers(s)
    return all(
        max(row) >= uc[label] for label, m in s.events.items() for row in m.rows
    )


def build_plus(r: FuzzyAutomaton, uc: UncontrollabilityMap) -> FuzzyAutomaton:
    """Extend ``r`` with one crisp sink state that absorbs uncontrollable slack.

    Rows whose maximum already meets ``uc[σ]`` get 0 in the new column; the
    others get ``uc[σ]``.  The new state loops on σ with degree ``uc[σ]`` and is
    neither initial nor marked.
    """
    uc.covers(r)
    events = {}
    for label, m in r.events.items():
        u = uc[label]
        rows = [row + (ZERO if max(row) >= u else u,) for row in m.rows]
        rows.append((ZERO,) * r.states + (u,))
        events[label] = FuzzyMatrix._trusted(tuple(rows))
    return FuzzyAutomaton(
        r.states + 1,
        events,
        r.initial.rows[0] + (ZERO,),
        r.marked.rows[0] + (ZERO,),
        name=f"{r.name}+",
    )


@dataclass(frozen=True)
class ConditionResult:
    description: str
    holds: bool
    witness: SimulationWitness | None


@dataclass(frozen=True)
class SynthesisReport:
    """Outcome of a target or range supervisor-existence check."""

    condition1: ConditionResult
    condition2: ConditionResult
    supervisor: FuzzyAutomaton | None

    @property
    def controllable(self) -> bool:
        return self.supervisor is not None

    @property
    def verdict(self) -> str:
        return "controllable" if self.controllable else "not_controllable"

    @property
    def failing(self) -> list[str]:
        out = []
        if not self.condition1.holds:
            out.append("condition1")
        if not self.condition2.holds:
            out.append("condition2")
        return out


def _condition(lhs: FuzzyAutomaton, rhs: FuzzyAutomaton) -> ConditionResult:
    witness = greatest_simulation(lhs, rhs)
    return ConditionResult(f"{lhs.name} <= {rhs.name}", witness is not None, witness)


def check_target(
    g: FuzzyAutomaton, r: FuzzyAutomaton, uc: UncontrollabilityMap
) -> SynthesisReport:
    """Decide whether some uc-compatible supervisor S gives ``g || S ~ r``.

    Holds iff ``r ⊆ g`` and ``g || r+ ⊆ r``; ``r+`` is then a supervisor.
    """
    same_alphabet(g, r)
    uc.covers(g)
    plus = build_plus(r, uc)
    c1 = _condition(r, g)
    c2 = _condition(parallel_compose(g, plus), r)
    return SynthesisReport(c1, c2, plus if c1.holds and c2.holds else None)


def check_range(
    g: FuzzyAutomaton,
    r1: FuzzyAutomaton,
    r2: FuzzyAutomaton,
    uc: UncontrollabilityMap,
) -> SynthesisReport:
    """Decide whether some uc-compatible supervisor S gives
    ``r1 ⊆ g || S ⊆ r2``.  Requires ``r1 ⊆ r2``.

    Holds iff ``r1 ⊆ g`` and ``g || r1+ ⊆ r2``.
    """
    same_alphabet(g, r1)
    same_alphabet(g, r2)
    uc.covers(g)
    if greatest_simulation(r1, r2) is None:
        raise HypothesisError(
            f"range control needs the lower bound {r1.name!r} to be simulated by "
            f"the upper bound {r2.name!r}"
        )
    plus = build_plus(r1, uc)
    c1 = _condition(r1, g)
    c2 = _condition(parallel_compose(g, plus), r2)
    return SynthesisReport(c1, c2, plus if c1.holds and c2.holds else None)


def language_controllability_violation(
    g: FuzzyAutomaton,
    r: FuzzyAutomaton,
    uc: UncontrollabilityMap,
    cap: int = DEFAULT_CLOSURE_CAP,
) -> tuple[tuple[str, ...], str] | None:
    """A string ``s`` and event ``σ`` violating

        min(L(r)(s), uc[σ], L(g)(sσ)) <= L(r)(sσ),

    or ``None`` when the inequality holds for every string.  All strings are
    covered by exploring the joint reachable configurations of ``g`` and ``r``.
    Language values are max entries of the reached vectors, so ε is valued
    ``max(x0)`` of the specification rather than 1.
    """
    same_alphabet(g, r)
    uc.covers(g)
    labels = g.alphabet
    start = (g.initial.rows[0], r.initial.rows[0])
    paths: dict[tuple, tuple[str, ...]] = {start: ()}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        xg, xr = node
        path = paths[node]
        k_s = max(xr)
        for label in labels:
            yg = step(xg, g.events[label])
            yr = step(xr, r.events[label])
            if min(k_s, uc[label], max(yg)) > max(yr):
                return path, label
            nxt = (yg, yr)
            if nxt not in paths:
                if len(paths) >= cap:
                    raise ResourceLimitError(
                        f"joint configuration closure exceeds cap of {cap} pairs"
                    )
                paths[nxt] = path + (label,)
                queue.append(nxt)
    return None


def language_controllable(
    g: FuzzyAutomaton,
    r: FuzzyAutomaton,
    uc: UncontrollabilityMap,
    cap: int = DEFAULT_CLOSURE_CAP,
) -> bool:
    """Exact fuzzy language-based controllability of ``L(r)`` w.r.t. ``L(g)``."""
    return language_controllability_violation(g, r, uc, cap) is None
