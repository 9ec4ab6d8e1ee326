"""Exact dense linear algebra over a prime field or the rationals.

Two backends share one interface:

* ``FieldSpec.prime(p)``: scalars are Python ints in ``[0, p)``.
* ``FieldSpec.rationals()``: scalars are :class:`fractions.Fraction`; elimination
  is done fraction-free (Bareiss) on an integer copy of the matrix and only the
  final echelon form is converted back to fractions.

Pivoting is deterministic: columns are scanned left to right and, inside a
column, the first nonzero entry at or below the current pivot row is used.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

DEFAULT_PRIME = 2147483647
PRIME_ENV_VAR = "PLANEBUNDLES_PRIME"
MIN_PRIME = 10**6


@lru_cache(maxsize=None)
def _is_prime(n: int) -> bool:
    from sympy import isprime

    return bool(isprime(n))


@dataclass(frozen=True)
class FieldSpec:
    """Which exact field scalars live in.

    ``kind`` is ``"fp"`` (prime field, ``p`` required) or ``"q"`` (rationals).
    """

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "fp":
            if self.p is None or self.p <= MIN_PRIME or not _is_prime(self.p):
                raise ValueError(f"prime field needs a prime p > {MIN_PRIME}, got {self.p!r}")
        elif self.kind == "q":
            if self.p is not None:
                raise ValueError("the rational field takes no modulus")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> "FieldSpec":
        return cls("fp", p)

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("q")

    @classmethod
    def default(cls) -> "FieldSpec":
        """Prime field, modulus taken from ``PLANEBUNDLES_PRIME`` if set."""
        value = os.environ.get(PRIME_ENV_VAR)
        if value is None:
            return cls.prime(DEFAULT_PRIME)
        try:
            p = int(value)
        except ValueError:
            raise ValueError(f"{PRIME_ENV_VAR} must be an integer, got {value!r}") from None
        return cls.prime(p)

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "fp"

    # scalar arithmetic

    def __call__(self, x) -> int | Fraction:
        """Coerce an int, Fraction or decimal string ("a" or "a/b") into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.kind == "q":
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def add(self, a, b):
        return (a + b) % self.p if self.kind == "fp" else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.kind == "fp" else a - b

    def mul(self, a, b):
        return a * b % self.p if self.kind == "fp" else a * b

    def neg(self, a):
        return -a % self.p if self.kind == "fp" else -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, -1, self.p) if self.kind == "fp" else 1 / Fraction(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def random_element(self, rng, bound: int = 20):
        """Uniform element of F_p, or an integer in ``[-bound, bound]`` over Q."""
        if self.kind == "fp":
            return rng.randrange(self.p)
        return Fraction(rng.randint(-bound, bound))

    def format(self, a) -> str:
        if self.kind == "fp":
            return str(a)
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def to_json(self) -> dict:
        return {"type": "fp", "p": self.p} if self.kind == "fp" else {"type": "q"}

    @classmethod
    def from_json(cls, data: dict) -> "FieldSpec":
        kind = data.get("type")
        if kind == "fp":
            return cls.prime(int(data.get("p", DEFAULT_PRIME)))
        if kind == "q":
            return cls.rationals()
        raise ValueError(f"unknown field type {kind!r}")


@dataclass(frozen=True)
class DenseMatrix:
    field: FieldSpec
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0 or len(self.entries) != self.rows * self.cols:
            raise ValueError(f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows, cols: int | None = None) -> "DenseMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(field, len(rows), cols, tuple(field(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "DenseMatrix":
        return cls(field, rows, cols, (field.zero,) * (rows * cols))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "DenseMatrix":
        return cls.from_rows(field, [[int(i == j) for j in range(n)] for i in range(n)], n)

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def transpose(self) -> "DenseMatrix":
        return DenseMatrix(
            self.field, self.cols, self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def matvec(self, v) -> list:
        F = self.field
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        out = []
        for i in range(self.rows):
            acc = F.zero
            for a, b in zip(self.row(i), v):
                acc = F.add(acc, F.mul(a, b))
            out.append(acc)
        return out


def transpose(M: DenseMatrix) -> DenseMatrix:
    return M.transpose()


def _rref_mod_p(rows: list[list[int]], ncols: int, p: int):
    pivots = []
    prow = 0
    nrows = len(rows)
    for col in range(ncols):
        if prow == nrows:
            break
        sel = next((i for i in range(prow, nrows) if rows[i][col]), None)
        if sel is None:
            continue
        rows[prow], rows[sel] = rows[sel], rows[prow]
        inv = pow(rows[prow][col], -1, p)
        pr = [x * inv % p for x in rows[prow]]
        rows[prow] = pr
        for i in range(nrows):
            if i != prow:
                f = rows[i][col]
                if f:
                    rows[i] = [(x - f * y) % p for x, y in zip(rows[i], pr)]
        pivots.append(col)
        prow += 1
    return rows, pivots


def _bareiss(rows: list[list[int]], ncols: int):
    """Fraction-free forward elimination of an integer matrix (in place)."""
    pivots = []
    prow = 0
    prev = 1
    nrows = len(rows)
    for col in range(ncols):
        if prow == nrows:
            break
        sel = next((i for i in range(prow, nrows) if rows[i][col]), None)
        if sel is None:
            continue
        rows[prow], rows[sel] = rows[sel], rows[prow]
        piv = rows[prow][col]
        for i in range(prow + 1, nrows):
            f = rows[i][col]
            # exact division is the Bareiss invariant (Sylvester's identity)
            rows[i] = [(piv * x - f * y) // prev for x, y in zip(rows[i], rows[prow])]
        prev = piv
        pivots.append(col)
        prow += 1
    return rows, pivots


def _integer_rows(M: DenseMatrix) -> list[list[int]]:
    out = []
    for i in range(M.rows):
        r = [Fraction(x) for x in M.row(i)]
        m = lcm(*(x.denominator for x in r)) if r else 1
        out.append([int(x * m) for x in r])
    return out


def _rref_rational(M: DenseMatrix):
    rows, pivots = _bareiss(_integer_rows(M), M.cols)
    rank = len(pivots)
    red = [[Fraction(x, r[c]) for x in r] for r, c in zip(rows[:rank], pivots)]
    for k in range(rank - 1, -1, -1):
        c = pivots[k]
        for i in range(k):
            f = red[i][c]
            if f:
                red[i] = [x - f * y for x, y in zip(red[i], red[k])]
    red.extend([Fraction(0)] * M.cols for _ in range(M.rows - rank))
    return red, pivots


def rref(M: DenseMatrix) -> tuple[DenseMatrix, list[int]]:
    """Reduced row-echelon form and the (increasing) list of pivot columns."""
    F = M.field
    if F.is_prime_field:
        rows, pivots = _rref_mod_p(M.to_rows(), M.cols, F.p)
    else:
        rows, pivots = _rref_rational(M)
    return DenseMatrix(F, M.rows, M.cols, tuple(x for r in rows for x in r)), pivots


def rank(M: DenseMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    if M.field.is_prime_field:
        # forward elimination only; rank needs no back substitution
        p = M.field.p
        rows = M.to_rows()
        r = 0
        for col in range(M.cols):
            if r == M.rows:
                break
            sel = next((i for i in range(r, M.rows) if rows[i][col]), None)
            if sel is None:
                continue
            rows[r], rows[sel] = rows[sel], rows[r]
            inv = pow(rows[r][col], -1, p)
            pr = rows[r]
            for i in range(r + 1, M.rows):
                f = rows[i][col]
                if f:
                    f = f * inv % p
                    rows[i] = [(x - f * y) % p for x, y in zip(rows[i], pr)]
            r += 1
        return r
    return len(_bareiss(_integer_rows(M), M.cols)[1])


def kernel_basis(M: DenseMatrix) -> list[list]:
    """Basis of the right kernel, one vector per free column (ascending)."""
    F = M.field
    R, pivots = rref(M)
    pivset = set(pivots)
    basis = []
    for f in range(M.cols):
        if f in pivset:
            continue
        v = [F.zero] * M.cols
        v[f] = F.one
        for k, c in enumerate(pivots):
            v[c] = F.neg(R[k, f])
        basis.append(v)
    return basis
