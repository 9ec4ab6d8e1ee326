"""Cohomology, generators and Betti numbers of ideal sheaves of plane schemes.

For a zero-dimensional Z in the plane the ideal has a length-one resolution
``0 -> L1 -> L0 -> I_Z -> 0``. Generators are found by exact rank
computations; syzygy degrees then follow from the Hilbert function, so no
Groebner basis is ever formed.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .errors import ClassificationAlarm
from .exact_linalg import DenseMatrix, kernel_basis, rank
from .schemes import (
    ZeroDimScheme,
    colength_one_subschemes,
    conditions,
    evaluation_matrix,
    in_line,
    monomial_basis,
    n_monomials,
    subschemes_of_length,
)


def h0_line_bundle(n: int) -> int:
    return n_monomials(n)


def h2_line_bundle(n: int) -> int:
    # Serre duality: h^2(O(n)) = h^0(O(-n-3))
    return n_monomials(-n - 3)


def h0_ideal(Z: ZeroDimScheme, d: int) -> int:
    if d < 0:
        return 0
    return n_monomials(d) - conditions(Z, d)


def ideal_cohomology(Z: ZeroDimScheme, d: int) -> tuple[int, int, int]:
    """``(h0, h1, h2)`` of ``I_Z(d)``."""
    u = Z.degree
    if d < 0:
        return 0, u, h2_line_bundle(d)
    rk = conditions(Z, d)
    return n_monomials(d) - rk, u - rk, 0


def regularity(Z: ZeroDimScheme) -> int:
    """Least m >= 1 with h^1(I_Z(m-1)) = 0."""
    if Z.degree == 0:
        raise ValueError("regularity of the empty scheme is not defined")
    m = 1
    while ideal_cohomology(Z, m - 1)[1]:
        m += 1
    return m


def hilbert_function(Z: ZeroDimScheme, top: int) -> list[int]:
    """``[h0(I_Z(d)) for d in 0..top]``."""
    return [h0_ideal(Z, d) for d in range(top + 1)]


@lru_cache(maxsize=4096)
def ideal_basis(Z: ZeroDimScheme, d: int) -> tuple:
    """Coefficient vectors (monomial basis of degree d) spanning I_Z(d)."""
    if d < 0:
        return ()
    if Z.degree == 0:
        F = Z.field
        return tuple(tuple(F(int(i == j)) for j in range(n_monomials(d))) for i in range(n_monomials(d)))
    return tuple(tuple(v) for v in kernel_basis(evaluation_matrix(Z, d)))


def _multiples_rank(Z: ZeroDimScheme, d: int) -> int:
    """Dimension of the degree-d part of the ideal generated in degrees < d."""
    prev = ideal_basis(Z, d - 1)
    if not prev:
        return 0
    F = Z.field
    index = {m: i for i, m in enumerate(monomial_basis(d))}
    src = monomial_basis(d - 1)
    rows = []
    for shift in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        targets = [index[(a + shift[0], b + shift[1], c + shift[2])] for a, b, c in src]
        for f in prev:
            row = [F.zero] * len(index)
            for coeff, t in zip(f, targets):
                row[t] = coeff
            rows.append(row)
    return rank(DenseMatrix(F, len(rows), len(index), tuple(x for r in rows for x in r)))


def minimal_generator_counts(Z: ZeroDimScheme) -> dict[int, int]:
    """Degree -> number of minimal generators of the saturated ideal of Z."""
    reg = regularity(Z)
    counts = {}
    for d in range(1, reg + 3):
        new = h0_ideal(Z, d) - _multiples_rank(Z, d)
        if new:
            if d > reg:
                raise ClassificationAlarm(f"minimal generator in degree {d} beyond regularity {reg}")
            counts[d] = new
    return counts


def _binom2(n: int) -> int:
    return n * (n - 1) // 2 if n >= 2 else 0


@dataclass(frozen=True)
class GradedBetti:
    """Twist multisets of ``0 -> (+) O(-s) -> (+) O(-g) -> I_Z -> 0``.

    A summand ``O(-e)`` is recorded as the degree ``e``.
    """

    generators: tuple
    syzygies: tuple

    def hilbert_dim(self, d: int) -> int:
        """dim I_Z(d) predicted by the resolution."""
        return sum(_binom2(d - g + 2) for g in self.generators) - sum(_binom2(d - s + 2) for s in self.syzygies)

    def check(self, hilbert: list[int]) -> None:
        if len(self.generators) != len(self.syzygies) + 1:
            raise ClassificationAlarm(f"rank condition fails for {self}")
        if self.syzygies and min(self.syzygies) <= min(self.generators):
            raise ClassificationAlarm(f"syzygy degree not above the initial degree in {self}")
        for d, h in enumerate(hilbert):
            if self.hilbert_dim(d) != h:
                raise ClassificationAlarm(f"Hilbert consistency fails at degree {d} for {self}")

    def to_json(self) -> dict:
        return {"generators": list(self.generators), "syzygies": list(self.syzygies)}


def graded_betti(Z: ZeroDimScheme) -> GradedBetti:
    gens = minimal_generator_counts(Z)
    reg = regularity(Z)
    hilbert = hilbert_function(Z, reg + 2)
    gen_list = sorted(g for g, n in gens.items() for _ in range(n))
    syz = []
    for d in range(reg + 3):
        n = GradedBetti(tuple(gen_list), tuple(syz)).hilbert_dim(d) - hilbert[d]
        if n < 0:
            raise ClassificationAlarm(f"negative syzygy count {n} in degree {d}")
        syz.extend([d] * n)
    betti = GradedBetti(tuple(gen_list), tuple(syz))
    betti.check(hilbert)
    return betti


class ResolutionClass(str, Enum):
    """The ten resolution shapes of ideals of degree <= 5 schemes."""

    CI_LINE_1 = "CI_LINE(1)"
    CI_LINE_2 = "CI_LINE(2)"
    CI_LINE_3 = "CI_LINE(3)"
    CI_LINE_4 = "CI_LINE(4)"
    CI_LINE_5 = "CI_LINE(5)"
    B1 = "B1"
    B2 = "B2"
    B3 = "B3"
    B4 = "B4"
    B5 = "B5"

    @property
    def template(self) -> tuple[int, GradedBetti]:
        return TEMPLATES[self]

    @classmethod
    def ci_line(cls, u: int) -> "ResolutionClass":
        return cls(f"CI_LINE({u})")


TEMPLATES = {
    **{ResolutionClass.ci_line(u): (u, GradedBetti((1, u), (u + 1,))) for u in range(1, 6)},
    ResolutionClass.B1: (3, GradedBetti((2, 2, 2), (3, 3))),
    ResolutionClass.B2: (4, GradedBetti((2, 2, 3), (3, 4))),
    ResolutionClass.B3: (4, GradedBetti((2, 2), (4,))),
    ResolutionClass.B4: (5, GradedBetti((2, 2, 4), (3, 5))),
    ResolutionClass.B5: (5, GradedBetti((2, 3, 3), (4, 4))),
}


def has_collinear_subscheme(Z: ZeroDimScheme, length: int) -> bool:
    return any(in_line(S) for S, _ in subschemes_of_length(Z, length))


def _side_conditions_hold(label: ResolutionClass, Z: ZeroDimScheme) -> bool:
    if label.name.startswith("CI_LINE"):
        return in_line(Z)
    if in_line(Z):
        return False
    if label is ResolutionClass.B1:
        return True
    if label is ResolutionClass.B2:
        return has_collinear_subscheme(Z, 3)
    if label is ResolutionClass.B3:
        return not has_collinear_subscheme(Z, 3)
    if label is ResolutionClass.B4:
        return has_collinear_subscheme(Z, 4)
    return h0_ideal(Z, 2) == 1


def classify_resolution(Z: ZeroDimScheme, betti: GradedBetti | None = None) -> ResolutionClass:
    """Match the Betti numbers of Z against the ten templates.

    Raises ClassificationAlarm if no template fits or if the matched case's
    geometric side condition does not hold.
    """
    u = Z.degree
    if not 1 <= u <= 5:
        raise ValueError(f"classification covers degrees 1..5, got {u}")
    betti = betti or graded_betti(Z)
    for label, (tu, tb) in TEMPLATES.items():
        if tu == u and tb == betti:
            if not _side_conditions_hold(label, Z):
                raise ClassificationAlarm(f"{label.value} matched but its side condition fails")
            return label
    raise ClassificationAlarm(f"no template for u={u}, betti={betti}")


def cayley_bacharach(Z: ZeroDimScheme, l: int) -> bool:
    """Every colength-one subscheme imposes as many conditions in degree l as Z."""
    if l < 0:
        return True
    full = h0_ideal(Z, l)
    return all(h0_ideal(Zp, l) == full for Zp in colength_one_subschemes(Z))


def betti_summary(Z: ZeroDimScheme) -> dict:
    """JSON-ready record: degree, label (degree <= 5 only), Betti data, Hilbert values."""
    betti = graded_betti(Z)
    reg = regularity(Z)
    label = classify_resolution(Z, betti).value if Z.degree <= 5 else None
    return {
        "u": Z.degree,
        "label": label,
        "generators": list(betti.generators),
        "syzygies": list(betti.syzygies),
        "hilbert": hilbert_function(Z, reg + 2),
    }

