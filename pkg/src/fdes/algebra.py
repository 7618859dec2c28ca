"""Exact grades and the max-min / fuzzy-tensor matrix algebra.

Membership degrees are stored as integer numerators over a fixed denominator
(``DENOMINATOR = 10**4``), so ``min``, ``max`` and every comparison are exact.
Row and column vectors are plain 1×n / n×1 matrices.
"""

from __future__ import annotations

import re
from decimal import Decimal, InvalidOperation
from typing import Iterable, Sequence

from .errors import GradeError, ShapeError

DENOMINATOR = 10**4
SCALE_DIGITS = 4

_DECIMAL_RE = re.compile(r"^\s*[+]?(\d+(\.\d*)?|\.\d+)\s*$")


class Grade(int):
    """A membership degree in [0, 1], stored as ``numerator / DENOMINATOR``.

    Subclassing ``int`` keeps ``min``/``max``/ordering at C speed and exact.
    """

    __slots__ = ()

    def __new__(cls, numerator: int = 0) -> Grade:
        if isinstance(numerator, Grade):
            return numerator
        if isinstance(numerator, bool) or not isinstance(numerator, int):
            raise GradeError(f"grade numerator must be an int, got {numerator!r}")
        if not 0 <= numerator <= DENOMINATOR:
            raise GradeError(
                f"grade numerator {numerator} outside [0, {DENOMINATOR}]"
            )
        return super().__new__(cls, numerator)

    @property
    def numerator(self) -> int:  # type: ignore[override]
        return int(self)

    @classmethod
    def parse(cls, text: str | int | Decimal) -> Grade:
        """Parse a decimal string such as ``"0.75"``.

        Rejects values outside [0, 1] and anything needing more than four
        fractional digits.  Floats are refused outright.
        """
        if isinstance(text, Grade):
            return text
        if isinstance(text, float):
            raise GradeError(f"refusing float grade {text!r}; pass a decimal string")
        if isinstance(text, int) and not isinstance(text, bool):
            if text in (0, 1):
                return ZERO if text == 0 else ONE
            raise GradeError(f"grade {text} outside [0, 1]")
        if isinstance(text, Decimal):
            value = text
        else:
            if not isinstance(text, str) or not _DECIMAL_RE.match(text):
                raise GradeError(f"malformed grade {text!r}")
            try:
                value = Decimal(text.strip())
            except InvalidOperation as exc:
                raise GradeError(f"malformed grade {text!r}") from exc
        scaled = value * DENOMINATOR
        if scaled != scaled.to_integral_value():
            raise GradeError(
                f"grade {text!r} needs more than {SCALE_DIGITS} fractional digits"
            )
        numerator = int(scaled)
        if not 0 <= numerator <= DENOMINATOR:
            raise GradeError(f"grade {text!r} outside [0, 1]")
        return cls(numerator)

    def complement(self) -> Grade:
        return Grade(DENOMINATOR - int(self))

    def to_decimal(self) -> Decimal:
        return Decimal(int(self)).scaleb(-SCALE_DIGITS).normalize()

    def __str__(self) -> str:
        if self == DENOMINATOR:
            return "1"
        if self == 0:
            return "0"
        frac = f"{int(self):0{SCALE_DIGITS}d}".rstrip("0")
        return f"0.{frac}"

    def __repr__(self) -> str:
        return f"Grade({self})"


ZERO = Grade(0)
ONE = Grade(DENOMINATOR)


def grade(value: str | int | Decimal) -> Grade:
    """Shorthand for :meth:`Grade.parse`."""
    return Grade.parse(value)


def godel_residuum(a: int, b: int) -> Grade:
    """Gödel implication: 1 when ``a <= b``, otherwise ``b``."""
    return ONE if a <= b else Grade(b)


class FuzzyMatrix:
    """Immutable dense matrix of grades, row-major."""

    __slots__ = ("_rows", "_shape", "_hash")

    def __init__(self, rows: Iterable[Iterable[str | int | Grade]]):
        built = tuple(tuple(_coerce(v) for v in row) for row in rows)
        if not built or not built[0]:
            raise ShapeError("a fuzzy matrix needs at least one row and one column")
        width = len(built[0])
        for k, row in enumerate(built):
            if len(row) != width:
                raise ShapeError(
                    f"ragged matrix: row {k} has {len(row)} entries, expected {width}"
                )
        object.__setattr__(self, "_rows", built)
        object.__setattr__(self, "_shape", (len(built), width))
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _trusted(cls, rows: tuple[tuple[Grade, ...], ...]) -> FuzzyMatrix:
        obj = object.__new__(cls)
        object.__setattr__(obj, "_rows", rows)
        object.__setattr__(obj, "_shape", (len(rows), len(rows[0])))
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("FuzzyMatrix is immutable")

    @classmethod
    def row(cls, values: Iterable[str | int | Grade]) -> FuzzyMatrix:
        return cls([list(values)])

    @classmethod
    def column(cls, values: Iterable[str | int | Grade]) -> FuzzyMatrix:
        return cls([[v] for v in values])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> FuzzyMatrix:
        return cls._trusted(tuple((ZERO,) * cols for _ in range(rows)))

    @classmethod
    def ones(cls, rows: int, cols: int) -> FuzzyMatrix:
        return cls._trusted(tuple((ONE,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> FuzzyMatrix:
        return cls._trusted(
            tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))
        )

    @property
    def shape(self) -> tuple[int, int]:
        return self._shape

    @property
    def rows(self) -> tuple[tuple[Grade, ...], ...]:
        return self._rows

    def __getitem__(self, index: tuple[int, int]) -> Grade:
        i, j = index
        return self._rows[i][j]

    def transpose(self) -> FuzzyMatrix:
        return FuzzyMatrix._trusted(tuple(zip(*self._rows)))

    @property
    def T(self) -> FuzzyMatrix:
        return self.transpose()

    def values(self) -> set[Grade]:
        return {v for row in self._rows for v in row}

    def flat(self) -> tuple[Grade, ...]:
        """Entries of a single-row or single-column matrix as a tuple."""
        if self._shape[0] == 1:
            return self._rows[0]
        if self._shape[1] == 1:
            return tuple(r[0] for r in self._rows)
        raise ShapeError(f"matrix of shape {self._shape} is not a vector")

    def max_entry(self) -> Grade:
        return max(v for row in self._rows for v in row)

    def is_crisp(self) -> bool:
        return all(v == 0 or v == DENOMINATOR for row in self._rows for v in row)

    def to_strings(self) -> list[list[str]]:
        return [[str(v) for v in row] for row in self._rows]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FuzzyMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self._rows))
        return self._hash

    def __matmul__(self, other: FuzzyMatrix) -> FuzzyMatrix:
        return maxmin_product(self, other)

    def __le__(self, other: FuzzyMatrix) -> bool:
        return matrix_leq(self, other)

    def __or__(self, other: FuzzyMatrix) -> FuzzyMatrix:
        return join(self, other)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(v) for v in row) for row in self._rows)
        return f"FuzzyMatrix([{body}])"


def _coerce(value: str | int | Grade) -> Grade:
    if isinstance(value, Grade):
        return value
    return Grade.parse(value)


def _require_same_shape(a: FuzzyMatrix, b: FuzzyMatrix, op: str) -> None:
    if a.shape != b.shape:
        raise ShapeError(f"{op}: shapes {a.shape} and {b.shape} differ")


def maxmin_product(a: FuzzyMatrix, b: FuzzyMatrix) -> FuzzyMatrix:
    """``c[i][j] = max_l min(a[i][l], b[l][j])``."""
    if a.shape[1] != b.shape[0]:
        raise ShapeError(
            f"max-min product: cannot multiply {a.shape} by {b.shape}"
        )
    cols = tuple(zip(*b.rows))
    return FuzzyMatrix._trusted(
        tuple(
            tuple(max(map(min, row, col)) for col in cols)
            for row in a.rows
        )
    )


def fuzzy_tensor(a: FuzzyMatrix, b: FuzzyMatrix) -> FuzzyMatrix:
    """Kronecker-style block product with ``min`` in place of multiplication.

    Entry ``(i*b.rows + k, j*b.cols + l)`` is ``min(a[i][j], b[k][l])``.
    """
    return FuzzyMatrix._trusted(
        tuple(
            tuple(min(x, y) for x in arow for y in brow)
            for arow in a.rows
            for brow in b.rows
        )
    )


def matrix_leq(a: FuzzyMatrix, b: FuzzyMatrix) -> bool:
    _require_same_shape(a, b, "matrix_leq")
    return all(x <= y for ra, rb in zip(a.rows, b.rows) for x, y in zip(ra, rb))


def join(a: FuzzyMatrix, b: FuzzyMatrix) -> FuzzyMatrix:
    _require_same_shape(a, b, "join")
    return FuzzyMatrix._trusted(
        tuple(tuple(map(max, ra, rb)) for ra, rb in zip(a.rows, b.rows))
    )


def meet(a: FuzzyMatrix, b: FuzzyMatrix) -> FuzzyMatrix:
    _require_same_shape(a, b, "meet")
    return FuzzyMatrix._trusted(
        tuple(tuple(map(min, ra, rb)) for ra, rb in zip(a.rows, b.rows))
    )


def as_row(values: Sequence[str | int | Grade] | FuzzyMatrix) -> FuzzyMatrix:
    if isinstance(values, FuzzyMatrix):
        if values.shape[0] != 1:
            raise ShapeError(f"expected a row vector, got shape {values.shape}")
        return values
    return FuzzyMatrix.row(values)
