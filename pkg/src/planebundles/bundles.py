"""Normalized rank-two bundles on the plane given by Serre data.

A bundle is stored as ``(Z, c1, r)``: its least twist with a section is
``E(r)``, and that section vanishes exactly on ``Z``:

    0 -> O -> E(r) -> I_Z(2r + c1) -> 0

Intermediate cohomology of line bundles on the plane vanishes, so this
sequence is exact on global sections. That gives ``h0(E(k))`` directly.
``h2`` follows by Serre duality and ``h1`` by Riemann-Roch.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ConnectednessViolation,
    InvalidC1,
    LocalFreenessViolation,
    MinimalityViolation,
    OracleMismatch,
    WindowTooSmall,
)
from .ideals import cayley_bacharach, graded_betti, h0_ideal, h0_line_bundle, regularity
from .schemes import ZeroDimScheme


def _check_c1(c1: int) -> None:
    if c1 not in (-1, 0):
        raise InvalidC1(f"normalized bundles have c1 in {{-1, 0}}, got {c1}")


def rr_chi_p2(c1: int, c2: int, k: int) -> int:
    """Euler characteristic of E(k) for a normalized rank-two bundle on P^2."""
    _check_c1(c1)
    twice = c1 * (c1 + 2 * k + 3)
    return twice // 2 + (k + 1) * (k + 2) - c2


def rr_chi_p3(c1: int, c2: int, k: int) -> Fraction:
    """Euler characteristic of F(k) for a normalized rank-two bundle on P^3."""
    _check_c1(c1)
    if c1 == 0:
        return -c2 * (k + 2) + Fraction((k + 1) * (k + 2) * (k + 3), 3)
    return Fraction((k + 1) * (k + 2) * (2 * k + 3), 6) - Fraction(c2 * (2 * k + 3), 2)


def chi_rank_two(c1: int, c2: int) -> int:
    """Riemann-Roch for any rank-two bundle on P^2 (no twist, any c1)."""
    return 2 + c1 * (c1 + 3) // 2 - c2


@dataclass(frozen=True)
class ChernPair:
    c1: int
    c2: int


def twist_chern(c: ChernPair, m: int) -> ChernPair:
    return ChernPair(c.c1 + 2 * m, c.c1 * m + c.c2 + m * m)


@dataclass(frozen=True)
class SerreBundle:
    Z: ZeroDimScheme
    c1: int
    r: int

    @property
    def c2(self) -> int:
        # deg Z = c2(E(r)) = c1*r + c2 + r^2
        return self.Z.degree - self.c1 * self.r - self.r * self.r

    @property
    def chern(self) -> ChernPair:
        return ChernPair(self.c1, self.c2)

    @property
    def stable(self) -> bool:
        return self.r >= 1

    @property
    def is_split(self) -> bool:
        return self.Z.degree == 0

    def describe(self) -> str:
        return f"SerreBundle(deg Z={self.Z.degree}, c1={self.c1}, c2={self.c2}, r={self.r})"


def make_bundle(Z: ZeroDimScheme, c1: int, r: int) -> SerreBundle:
    """Validate Serre data and return the bundle.

    Raises MinimalityViolation when ``E(r-1)`` would still have a section and
    LocalFreenessViolation when Cayley-Bacharach fails for ``O(2r + c1 - 3)``.
    """
    _check_c1(c1)
    k = 2 * r + c1
    if h0_ideal(Z, k - 1) > 0:
        raise MinimalityViolation(
            f"h0(I_Z({k - 1})) = {h0_ideal(Z, k - 1)} > 0, so E({r - 1}) has a section"
        )
    if k > 2 and not cayley_bacharach(Z, k - 3):
        raise LocalFreenessViolation(f"Z fails Cayley-Bacharach for forms of degree {k - 3}")
    return SerreBundle(Z, c1, r)


def h0_bundle(E: SerreBundle, k: int) -> int:
    return h0_line_bundle(k - E.r) + h0_ideal(E.Z, k + E.r + E.c1)


def h2_bundle(E: SerreBundle, k: int) -> int:
    return h0_bundle(E, -E.c1 - k - 3)


def h1_bundle(E: SerreBundle, k: int) -> int:
    return h0_bundle(E, k) + h2_bundle(E, k) - rr_chi_p2(E.c1, E.c2, k)


@dataclass(frozen=True)
class CohomologyRow:
    k: int
    h0: int
    h1: int
    h2: int
    chi: int


@dataclass(frozen=True)
class CohomologyTable:
    chern: ChernPair
    k_min: int
    k_max: int
    rows: tuple

    def __post_init__(self):
        for row in self.rows:
            if row.h0 - row.h1 + row.h2 != row.chi or row.chi != rr_chi_p2(self.chern.c1, self.chern.c2, row.k):
                raise AssertionError(f"Riemann-Roch fails at k={row.k}")
            if min(row.h0, row.h1, row.h2) < 0:
                raise AssertionError(f"negative cohomology at k={row.k}")
        by_k = self.as_dict()
        for k, row in by_k.items():
            dual = by_k.get(-self.chern.c1 - k - 3)
            if dual is not None and dual.h0 != row.h2:
                raise AssertionError(f"Serre duality fails at k={k}")

    def as_dict(self) -> dict[int, CohomologyRow]:
        return {row.k: row for row in self.rows}

    def __getitem__(self, k: int) -> CohomologyRow:
        return self.as_dict()[k]

    def h1(self, k: int) -> int:
        return self[k].h1

    @property
    def ks(self) -> list[int]:
        return [row.k for row in self.rows]

    def to_json(self, E: SerreBundle | None = None) -> dict:
        out = {"c1": self.chern.c1, "c2": self.chern.c2}
        if E is not None:
            out.update(r=E.r, stable=E.stable)
        out["rows"] = [{"k": x.k, "h0": x.h0, "h1": x.h1, "h2": x.h2, "chi": x.chi} for x in self.rows]
        return out

    def format_text(self) -> str:
        ks = self.ks
        cells = {
            "k": ks,
            "h0": [self[k].h0 for k in ks],
            "h1": [self[k].h1 for k in ks],
            "h2": [self[k].h2 for k in ks],
        }
        width = max(len(str(v)) for vals in cells.values() for v in vals)
        lines = []
        for name in ("k", "h2", "h1", "h0"):
            lines.append(f"{name:>2} | " + " ".join(f"{v:>{width}}" for v in cells[name]))
            if name == "k":
                lines.append("-" * len(lines[0]))
        return "\n".join(lines)


def default_window(E: SerreBundle) -> tuple[int, int]:
    """Duality-symmetric window containing every twist with h1 != 0."""
    if E.is_split:
        K = max(E.r - 2, -E.r - E.c1) + 1
    else:
        K = max(E.r - 2, regularity(E.Z) - 1 - E.r - E.c1) + 1
    return -E.c1 - 3 - K, K


def cohomology_table(E: SerreBundle, window: tuple[int, int] | None = None) -> CohomologyTable:
    lo, hi = window if window is not None else default_window(E)
    if lo > hi:
        raise ValueError(f"empty window {lo}..{hi}")
    rows = []
    for k in range(lo, hi + 1):
        h0 = h0_bundle(E, k)
        h2 = h2_bundle(E, k)
        chi = rr_chi_p2(E.c1, E.c2, k)
        rows.append(CohomologyRow(k, h0, h0 + h2 - chi, h2, chi))
    table = CohomologyTable(E.chern, lo, hi, tuple(rows))
    if table[lo].h1 or table[hi].h1:
        raise WindowTooSmall(f"h1 is nonzero on the boundary of {lo}..{hi}")
    return table


def minimal_section_twist(E: SerreBundle) -> int:
    # h0(E(k)) is nondecreasing in k, and zero below both r and -r-c1
    k = min(E.r, -E.r - E.c1) - 1
    while h0_bundle(E, k) == 0:
        k += 1
    return k


def splits(E: SerreBundle) -> bool:
    """Splitting test by vanishing of h1(E(-1)), checked against deg Z = 0."""
    by_h1 = h1_bundle(E, -1) == 0
    if by_h1 != E.is_split:
        raise OracleMismatch(f"h1(E(-1)) = {h1_bundle(E, -1)} but deg Z = {E.Z.degree}")
    return by_h1


def bundle_resolution(E: SerreBundle) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Line-bundle twists of ``0 -> back -> middle -> E -> 0``.

    For empty Z this is the splitting ``O(-r) + O(r + c1)`` with nothing behind it.
    """
    if E.is_split:
        return tuple(sorted((-E.r, E.r + E.c1), reverse=True)), ()
    betti = graded_betti(E.Z)
    s = E.r + E.c1
    middle = [-E.r] + [s - g for g in betti.generators]
    back = [s - t for t in betti.syzygies]
    return tuple(sorted(middle, reverse=True)), tuple(sorted(back, reverse=True))


def dual_presentation(E: SerreBundle) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Twists of ``0 -> E -> middle -> back -> 0`` obtained by dualizing."""
    if E.is_split:
        return tuple(sorted((E.r + E.c1, -E.r))), ()
    betti = graded_betti(E.Z)
    middle = [E.r + E.c1] + [g - E.r for g in betti.generators]
    back = [t - E.r for t in betti.syzygies]
    return tuple(sorted(middle)), tuple(sorted(back))


def resolution_h0(middle, back, k: int) -> int:
    return sum(h0_line_bundle(k + t) for t in middle) - sum(h0_line_bundle(k + t) for t in back)


@dataclass(frozen=True)
class H1Module:
    support: tuple[int, int] | None
    dims: tuple[int, ...]
    gens_plus_two: bool


def h1_module(E: SerreBundle, table: CohomologyTable | None = None) -> H1Module:
    """Support and dimensions of the graded module of first cohomology."""
    table = table or cohomology_table(E)
    nonzero = [k for k in table.ks if table.h1(k)]
    middle, back = dual_presentation(E)
    rank_identity = len(middle) == len(back) + 2
    if not nonzero:
        return H1Module(None, (), rank_identity)
    lo, hi = nonzero[0], nonzero[-1]
    if len(nonzero) != hi - lo + 1:
        raise ConnectednessViolation(f"h1 support {nonzero} has gaps")
    return H1Module((lo, hi), tuple(table.h1(k) for k in range(lo, hi + 1)), rank_identity)
