"""Fuzzy automata as max-min systems: languages, composition, reachability."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .algebra import (
    ONE,
    ZERO,
    FuzzyMatrix,
    Grade,
    as_row,
    fuzzy_tensor,
)
from .errors import AlphabetError, GradeError, ResourceLimitError, ShapeError

DEFAULT_CLOSURE_CAP = 10**6

Vector = tuple[Grade, ...]


@dataclass(frozen=True)
class FuzzyAutomaton:
    """A fuzzy automaton over ``n`` crisp states.

    ``events`` maps each label to its n×n matrix; the mapping order is the
    alphabet order.  ``initial`` and ``marked`` are 1×n row matrices.
    """

    states: int
    events: Mapping[str, FuzzyMatrix]
    initial: FuzzyMatrix
    marked: FuzzyMatrix
    name: str = "G"

    def __init__(
        self,
        states: int,
        events: Mapping[str, FuzzyMatrix | Sequence[Sequence[str | int | Grade]]],
        initial: FuzzyMatrix | Sequence[str | int | Grade],
        marked: FuzzyMatrix | Sequence[str | int | Grade],
        name: str = "G",
    ):
        if not isinstance(states, int) or states < 1:
            raise ShapeError(f"state count must be a positive integer, got {states!r}")
        built: dict[str, FuzzyMatrix] = {}
        for label, m in events.items():
            if not isinstance(label, str) or not label:
                raise AlphabetError(f"event labels must be non-empty strings, got {label!r}")
            matrix = m if isinstance(m, FuzzyMatrix) else FuzzyMatrix(m)
            if matrix.shape != (states, states):
                raise ShapeError(
                    f"event {label!r}: matrix shape {matrix.shape}, expected ({states}, {states})"
                )
            built[label] = matrix
        x0 = as_row(initial)
        xm = as_row(marked)
        for what, vec in (("initial", x0), ("marked", xm)):
            if vec.shape != (1, states):
                raise ShapeError(f"{what} vector has length {vec.shape[1]}, expected {states}")
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "events", _FrozenDict(built))
        object.__setattr__(self, "initial", x0)
        object.__setattr__(self, "marked", xm)
        object.__setattr__(self, "name", name)

    @property
    def alphabet(self) -> tuple[str, ...]:
        return tuple(self.events)

    def matrix(self, label: str) -> FuzzyMatrix:
        try:
            return self.events[label]
        except KeyError:
            raise AlphabetError(
                f"event {label!r} is not in the alphabet of {self.name!r} {list(self.events)}"
            ) from None

    def grades(self) -> set[Grade]:
        found = set(self.initial.values()) | set(self.marked.values())
        for m in self.events.values():
            found |= m.values()
        return found

    def is_crisp(self) -> bool:
        return all(g == ZERO or g == ONE for g in self.grades())

    def renamed(self, name: str) -> FuzzyAutomaton:
        return FuzzyAutomaton(self.states, self.events, self.initial, self.marked, name)

    def __hash__(self) -> int:
        return hash((self.states, tuple(self.events.items()), self.initial, self.marked))


class _FrozenDict(dict):
    """Insertion-ordered, read-only mapping."""

    def _readonly(self, *args, **kwargs):
        raise TypeError("automaton event maps are immutable")

    __setitem__ = __delitem__ = clear = pop = popitem = setdefault = update = _readonly  # type: ignore[assignment]

    def __hash__(self) -> int:  # type: ignore[override]
        return hash(tuple(self.items()))


def same_alphabet(g1: FuzzyAutomaton, g2: FuzzyAutomaton) -> None:
    """Raise :class:`AlphabetError` unless both automata share one alphabet."""
    if set(g1.alphabet) != set(g2.alphabet):
        raise AlphabetError(
            f"alphabets differ: {g1.name!r} has {sorted(g1.alphabet)}, "
            f"{g2.name!r} has {sorted(g2.alphabet)}"
        )


def step(vector: Vector, matrix: FuzzyMatrix) -> Vector:
    """One max-min transition ``x ⊙ σ`` on a plain tuple vector."""
    return tuple(max(map(min, vector, col)) for col in zip(*matrix.rows))


def _run(g: FuzzyAutomaton, s: Sequence[str]) -> Vector:
    matrices = [g.matrix(label) for label in s]
    x = g.initial.rows[0]
    for m in matrices:
        x = step(x, m)
    return x


def _as_string(s: str | Sequence[str]) -> Sequence[str]:
    # a bare string is one label, not a sequence of characters
    return (s,) if isinstance(s, str) else s


def eval_generated(g: FuzzyAutomaton, s: str | Sequence[str]) -> Grade:
    """Degree to which ``g`` generates the event string ``s`` (1 for ε)."""
    s = _as_string(s)
    if len(s) == 0:
        return ONE
    return max(_run(g, s))


def eval_marked(g: FuzzyAutomaton, s: str | Sequence[str]) -> Grade:
    """Degree to which ``g`` marks ``s``: ``x0 ⊙ σ1 ⊙ … ⊙ σk ⊙ xmᵀ`` (1 for ε)."""
    s = _as_string(s)
    if len(s) == 0:
        return ONE
    return max(map(min, _run(g, s), g.marked.rows[0]))


def parallel_compose(g1: FuzzyAutomaton, g2: FuzzyAutomaton) -> FuzzyAutomaton:
    """Synchronous product using the fuzzy tensor.

    Shared events tensor their matrices; a private event is tensored with the
    identity of the other component.  State ``(i, j)`` maps to flat index
    ``i * g2.states + j``.
    """
    i1 = FuzzyMatrix.identity(g1.states)
    i2 = FuzzyMatrix.identity(g2.states)
    events: dict[str, FuzzyMatrix] = {}
    for label in g1.alphabet:
        other = g2.events.get(label)
        events[label] = fuzzy_tensor(g1.events[label], other if other is not None else i2)
    for label in g2.alphabet:
        if label not in events:
            events[label] = fuzzy_tensor(i1, g2.events[label])
    return FuzzyAutomaton(
        g1.states * g2.states,
        events,
        fuzzy_tensor(g1.initial, g2.initial),
        fuzzy_tensor(g1.marked, g2.marked),
        name=f"{g1.name}||{g2.name}",
    )


def crisp_approximation(g: FuzzyAutomaton, threshold: Grade | str) -> FuzzyAutomaton:
    """Round every grade to 1 if it reaches ``threshold``, else to 0."""
    threshold = Grade.parse(threshold)
    if threshold == ZERO:
        raise GradeError("crisp threshold must be strictly positive")

    def cut(m: FuzzyMatrix) -> FuzzyMatrix:
        return FuzzyMatrix([[ONE if v >= threshold else ZERO for v in row] for row in m.rows])

    return FuzzyAutomaton(
        g.states,
        {label: cut(m) for label, m in g.events.items()},
        cut(g.initial),
        cut(g.marked),
        name=g.name,
    )


@dataclass
class ConfigurationClosure:
    """Every fuzzy state vector reachable from ``x0`` by a non-empty or empty
    string, together with the deterministic transition map between them.

    ``eval_generated(g, s)`` equals ``max(vector reached by s)`` for every
    non-empty ``s``; ε is valued 1 by convention.
    """

    initial: Vector
    vectors: list[Vector] = field(default_factory=list)
    transitions: dict[tuple[Vector, str], Vector] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.vectors)

    def __contains__(self, vector: object) -> bool:
        return vector in set(self.vectors)

    def reach(self, s: Sequence[str]) -> Vector:
        x = self.initial
        for label in s:
            x = self.transitions[(x, label)]
        return x


def configuration_closure(
    g: FuzzyAutomaton, cap: int = DEFAULT_CLOSURE_CAP
) -> ConfigurationClosure:
    """Breadth-first enumeration of reachable fuzzy state vectors.

    Finite because every entry of a reached vector is drawn from the grades of
    ``x0`` and the event matrices (plus 0).
    """
    start = g.initial.rows[0]
    closure = ConfigurationClosure(initial=start, vectors=[start])
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for label, m in g.events.items():
            y = step(x, m)
            closure.transitions[(x, label)] = y
            if y not in seen:
                if len(seen) >= cap:
                    raise ResourceLimitError(
                        f"configuration closure of {g.name!r} exceeds cap of {cap} vectors"
                    )
                seen.add(y)
                closure.vectors.append(y)
                queue.append(y)
    return closure


def languages_equal(
    g1: FuzzyAutomaton, g2: FuzzyAutomaton, cap: int = DEFAULT_CLOSURE_CAP
) -> bool:
    """Exact check that ``L(g1)(s) == L(g2)(s)`` for every string ``s``."""
    return language_counterexample(g1, g2, cap, strict=True) is None


def language_included(
    g1: FuzzyAutomaton, g2: FuzzyAutomaton, cap: int = DEFAULT_CLOSURE_CAP
) -> bool:
    """Exact check that ``L(g1)(s) <= L(g2)(s)`` for every string ``s``."""
    return language_counterexample(g1, g2, cap, strict=False) is None


def language_counterexample(
    g1: FuzzyAutomaton,
    g2: FuzzyAutomaton,
    cap: int = DEFAULT_CLOSURE_CAP,
    strict: bool = True,
) -> tuple[str, ...] | None:
    """Shortest string where the generated languages differ (or where ``g1``
    exceeds ``g2`` when ``strict`` is false), or ``None``."""
    same_alphabet(g1, g2)
    # the root stands for ε (valued 1); a non-empty string that returns to the
    # initial vectors must still be compared, so it gets a distinct key
    start = ("eps", g1.initial.rows[0], g2.initial.rows[0])
    paths: dict[tuple, tuple[str, ...]] = {start: ()}
    queue = deque([start])
    labels = g1.alphabet
    while queue:
        node = queue.popleft()
        _, x1, x2 = node
        path = paths[node]
        for label in labels:
            y1, y2 = step(x1, g1.events[label]), step(x2, g2.events[label])
            nxt = ("str", y1, y2)
            if nxt in paths:
                continue
            a, b = max(y1), max(y2)
            if (a != b) if strict else (a > b):
                return path + (label,)
            if len(paths) >= cap:
                raise ResourceLimitError(
                    f"joint configuration closure exceeds cap of {cap} pairs"
                )
            paths[nxt] = path + (label,)
            queue.append(nxt)
    return None


def strings(alphabet: Iterable[str], max_length: int) -> Iterator[tuple[str, ...]]:
    """All strings over ``alphabet`` of length 0..max_length, shortest first."""
    labels = tuple(alphabet)
    layer: list[tuple[str, ...]] = [()]
    for _ in range(max_length + 1):
        yield from layer
        layer = [s + (a,) for s in layer for a in labels]
