"""Zero-dimensional subschemes of the projective plane.

A scheme is a finite union of reduced points and curvilinear arcs with
pairwise distinct supports. An arc of length ``l`` at ``base`` is the
subscheme cut out by the first ``l`` Taylor coefficients along the jet
``t -> base + t*v + t**2*w``. All its conditions on forms of degree ``d`` are
linear functionals on the coefficient vector, which is all the cohomology
code ever needs.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .exact_linalg import DenseMatrix, FieldSpec, rank

MAX_DEGREE = 12
MAX_ARC_LENGTH = 5
MAX_RESAMPLES = 1000


def monomial_basis(d: int) -> list[tuple[int, int, int]]:
    """Exponent triples of degree ``d``, graded lex with x heaviest."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    return [(a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1)]


def n_monomials(d: int) -> int:
    return (d + 1) * (d + 2) // 2 if d >= 0 else 0


def _normalize(F: FieldSpec, coords) -> tuple:
    coords = tuple(F(c) for c in coords)
    if len(coords) != 3:
        raise ValueError("points of the plane have three coordinates")
    nz = [c for c in coords if c != 0]
    if not nz:
        raise ValueError("(0, 0, 0) is not a point of the plane")
    s = F.inv(nz[-1])
    return tuple(F.mul(c, s) for c in coords)


@dataclass(frozen=True)
class ProjPoint:
    """A point with its last nonzero coordinate scaled to 1."""

    coords: tuple

    @classmethod
    def make(cls, F: FieldSpec, coords) -> "ProjPoint":
        return cls(_normalize(F, coords))

    @property
    def chart(self) -> int:
        return max(i for i, c in enumerate(self.coords) if c != 0)


@dataclass(frozen=True)
class Arc:
    base: ProjPoint
    v: tuple
    w: tuple
    length: int

    @classmethod
    def make(cls, F: FieldSpec, base, v, w=(0, 0, 0), length: int = 2) -> "Arc":
        v = tuple(F(c) for c in v)
        w = tuple(F(c) for c in w)
        if len(v) != 3 or len(w) != 3:
            raise ValueError("jet directions have three coordinates")
        if not isinstance(base, ProjPoint):
            raw = tuple(F(c) for c in base)
            base = ProjPoint.make(F, raw)
            # rescale the whole jet with the base so the curve is unchanged
            s = F.div(base.coords[base.chart], raw[base.chart])
            v = tuple(F.mul(s, c) for c in v)
            w = tuple(F.mul(s, c) for c in w)
        if not 2 <= length <= MAX_ARC_LENGTH:
            raise ValueError(f"arc length must lie in [2, {MAX_ARC_LENGTH}], got {length}")
        if rank(DenseMatrix.from_rows(F, [base.coords, v], 3)) < 2:
            raise ValueError("arc direction is proportional to its base point")
        return cls(base, v, w, length)

    def truncate(self, length: int):
        """The unique subscheme of the given length: an Arc, a point or None."""
        if length <= 0:
            return None
        if length == 1:
            return self.base
        return Arc(self.base, self.v, self.w, min(length, self.length))


@dataclass(frozen=True)
class ZeroDimScheme:
    field: FieldSpec
    points: tuple = ()
    arcs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "arcs", tuple(self.arcs))
        supports = [p.coords for p in self.points] + [a.base.coords for a in self.arcs]
        if len(set(supports)) != len(supports):
            raise ValueError("scheme components must have distinct supports")
        if self.degree > MAX_DEGREE:
            raise ValueError(f"degree {self.degree} exceeds {MAX_DEGREE}")

    @classmethod
    def from_coords(cls, F: FieldSpec, points=(), arcs=()) -> "ZeroDimScheme":
        """Build from raw coordinate triples; ``arcs`` are dicts of Arc.make kwargs."""
        return cls(F, [ProjPoint.make(F, p) for p in points], [Arc.make(F, **a) for a in arcs])

    @property
    def degree(self) -> int:
        return len(self.points) + sum(a.length for a in self.arcs)

    def is_empty(self) -> bool:
        return self.degree == 0

    def components(self) -> list:
        return list(self.points) + list(self.arcs)

    @classmethod
    def from_components(cls, F: FieldSpec, comps) -> "ZeroDimScheme":
        comps = [c for c in comps if c is not None]
        return cls(F, [c for c in comps if isinstance(c, ProjPoint)], [c for c in comps if isinstance(c, Arc)])

    def to_json(self) -> dict:
        fmt = self.field.format
        return {
            "field": self.field.to_json(),
            "points": [[fmt(c) for c in p.coords] for p in self.points],
            "arcs": [
                {
                    "base": [fmt(c) for c in a.base.coords],
                    "v": [fmt(c) for c in a.v],
                    "w": [fmt(c) for c in a.w],
                    "length": a.length,
                }
                for a in self.arcs
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ZeroDimScheme":
        F = FieldSpec.from_json(data.get("field", {"type": "fp"}))
        arcs = [
            dict(base=a["base"], v=a["v"], w=a.get("w", ["0", "0", "0"]), length=int(a["length"]))
            for a in data.get("arcs", [])
        ]
        return cls.from_coords(F, data.get("points", []), arcs)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def loads(cls, text: str) -> "ZeroDimScheme":
        return cls.from_json(json.loads(text))


def degree(Z: ZeroDimScheme) -> int:
    return Z.degree


def _eval_monomials(F: FieldSpec, coords, d: int) -> list:
    out = []
    for a, b, c in monomial_basis(d):
        val = F.one
        for x, e in zip(coords, (a, b, c)):
            if e:
                val = F.mul(val, pow(x, e, F.p) if F.is_prime_field else x**e)
        out.append(val)
    return out


def _series_mul(F, s, t, n):
    out = [F.zero] * n
    for i, a in enumerate(s):
        if a == 0:
            continue
        for j in range(n - i):
            out[i + j] = F.add(out[i + j], F.mul(a, t[j]))
    return out


def _arc_rows(F: FieldSpec, arc: Arc, d: int) -> list[list]:
    n = arc.length
    if arc.base.coords[arc.base.chart] == 0:
        raise ValueError("arc chart coordinate vanishes along the jet")
    # gamma_i(t) = base_i + v_i t + w_i t^2 truncated mod t^n. The chart
    # coordinate is a unit series, so dehomogenizing rescales each jet by a
    # unit and leaves the span of the Taylor conditions unchanged.
    gammas = []
    for i in range(3):
        g = [arc.base.coords[i], arc.v[i], arc.w[i]] + [F.zero] * n
        gammas.append(g[:n])
    powers = []
    for g in gammas:
        pw = [[F.one] + [F.zero] * (n - 1)]
        for _ in range(d):
            pw.append(_series_mul(F, pw[-1], g, n))
        powers.append(pw)
    cols = []
    for a, b, c in monomial_basis(d):
        s = _series_mul(F, _series_mul(F, powers[0][a], powers[1][b], n), powers[2][c], n)
        cols.append(s)
    return [[col[e] for col in cols] for e in range(n)]


@lru_cache(maxsize=8192)
def evaluation_matrix(Z: ZeroDimScheme, d: int) -> DenseMatrix:
    """Matrix of the restriction H^0(O(d)) -> H^0(O_Z) in the monomial basis."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    F = Z.field
    rows = [_eval_monomials(F, p.coords, d) for p in Z.points]
    for arc in Z.arcs:
        rows.extend(_arc_rows(F, arc, d))
    return DenseMatrix(F, len(rows), n_monomials(d), tuple(x for r in rows for x in r))


@lru_cache(maxsize=8192)
def conditions(Z: ZeroDimScheme, d: int) -> int:
    """Number of independent conditions Z imposes on forms of degree d."""
    if d < 0 or Z.degree == 0:
        return 0
    return rank(evaluation_matrix(Z, d))


def remove_component_point(Z: ZeroDimScheme, index: int, truncate_arc: bool = False) -> ZeroDimScheme:
    """Drop one reduced point, or with ``truncate_arc`` shorten an arc by one.

    Indices address ``Z.components()``: points first, then arcs.
    """
    comps = Z.components()
    if not 0 <= index < len(comps):
        raise IndexError(f"component index {index} out of range")
    target = comps[index]
    if isinstance(target, Arc):
        if not truncate_arc:
            raise ValueError("index addresses an arc; pass truncate_arc=True to shorten it")
        comps[index] = target.truncate(target.length - 1)
    else:
        comps[index] = None
    return ZeroDimScheme.from_components(Z.field, comps)


def colength_one_subschemes(Z: ZeroDimScheme) -> list[ZeroDimScheme]:
    return [remove_component_point(Z, i, truncate_arc=True) for i in range(len(Z.components()))]


def subschemes_of_length(Z: ZeroDimScheme, n: int):
    """Yield every subscheme of length ``n`` (component-wise truncations).

    Yields ``(scheme, kept)`` where ``kept`` holds the component indices used.
    """
    comps = Z.components()
    ranges = [range(c.length + 1) if isinstance(c, Arc) else range(2) for c in comps]
    for lengths in product(*ranges):
        if sum(lengths) != n:
            continue
        parts = []
        for c, l in zip(comps, lengths):
            parts.append(c.truncate(l) if isinstance(c, Arc) else (c if l else None))
        kept = frozenset(i for i, l in enumerate(lengths) if l)
        yield ZeroDimScheme.from_components(Z.field, parts), kept


def in_line(Z: ZeroDimScheme) -> bool:
    return Z.degree > 0 and conditions(Z, 1) <= 2


def on_conic(Z: ZeroDimScheme) -> bool:
    return conditions(Z, 2) <= 5


# random generation

_CONSTRAINT_RE = re.compile(r"^\s*(generic|on_conic|collinear_subset|collinear|with_arc|arc)\s*(?:[(:]\s*(\d+)\s*\)?)?\s*$")


@dataclass(frozen=True)
class SchemeSpec:
    """Request for :func:`random_scheme`: total degree plus one constraint.

    ``constraint`` is one of ``generic``, ``collinear_subset``, ``on_conic``,
    ``with_arc``; ``param`` is ``k`` for collinear subsets and ``l`` for arcs.
    """

    u: int
    constraint: str = "generic"
    param: int = 0

    def __post_init__(self):
        if not 0 <= self.u <= MAX_DEGREE:
            raise ValueError(f"u must lie in [0, {MAX_DEGREE}]")
        if self.constraint == "collinear_subset" and not 0 <= self.param <= self.u:
            raise ValueError("collinear subset size must be at most u")
        if self.constraint == "with_arc" and not 2 <= self.param <= min(self.u, MAX_ARC_LENGTH):
            raise ValueError("arc length must lie in [2, min(u, 5)]")
        if self.constraint not in ("generic", "collinear_subset", "on_conic", "with_arc"):
            raise ValueError(f"unknown constraint {self.constraint!r}")

    @classmethod
    def parse(cls, u: int, text: str) -> "SchemeSpec":
        m = _CONSTRAINT_RE.match(text)
        if not m:
            raise ValueError(f"cannot parse constraint {text!r}")
        name, arg = m.group(1), m.group(2)
        name = {"collinear": "collinear_subset", "arc": "with_arc"}.get(name, name)
        if name in ("collinear_subset", "with_arc") and arg is None:
            raise ValueError(f"constraint {name} needs a size")
        return cls(u, name, int(arg) if arg else 0)

    def label(self) -> str:
        return self.constraint if self.constraint in ("generic", "on_conic") else f"{self.constraint}({self.param})"


def _random_point(F, rng):
    while True:
        coords = [F.random_element(rng) for _ in range(3)]
        if any(coords):
            return ProjPoint.make(F, coords)


def _line_point(F, rng, P, Q):
    while True:
        s, t = F.random_element(rng), F.random_element(rng)
        coords = [F.add(F.mul(s, a), F.mul(t, b)) for a, b in zip(P.coords, Q.coords)]
        if any(coords):
            return ProjPoint.make(F, coords)


def _candidate(spec: SchemeSpec, F: FieldSpec, rng):
    u = spec.u
    comps = []
    marked = set()
    if spec.constraint == "collinear_subset" and spec.param >= 3:
        P, Q = _random_point(F, rng), _random_point(F, rng)
        if P == Q:
            return None, marked
        comps = [_line_point(F, rng, P, Q) for _ in range(spec.param)]
        marked = set(range(spec.param))
    elif spec.constraint == "on_conic":
        A = [[F.random_element(rng) for _ in range(3)] for _ in range(3)]
        if rank(DenseMatrix.from_rows(F, A, 3)) < 3:
            return None, marked
        for _ in range(u):
            t = F.random_element(rng)
            q = (F.one, t, F.mul(t, t))
            comps.append(ProjPoint.make(F, [sum(F.mul(A[i][j], q[j]) for j in range(3)) for i in range(3)]))
    elif spec.constraint == "with_arc":
        base = _random_point(F, rng)
        v = [F.random_element(rng) for _ in range(3)]
        w = [F.random_element(rng) for _ in range(3)]
        try:
            comps = [Arc.make(F, base, v, w, spec.param)]
        except ValueError:
            return None, marked
    while sum(getattr(c, "length", 1) for c in comps) < u:
        comps.append(_random_point(F, rng))
    try:
        return ZeroDimScheme.from_components(F, comps), marked
    except ValueError:
        return None, marked


def _generic_hilbert(Z: ZeroDimScheme) -> bool:
    d = 0
    while True:
        if conditions(Z, d) != min(Z.degree, n_monomials(d)):
            return False
        if n_monomials(d) >= Z.degree:
            return True
        d += 1


def _no_unrequested_degeneracy(Z: ZeroDimScheme, spec: SchemeSpec, marked: set) -> bool:
    u = Z.degree
    if spec.constraint in ("generic", "with_arc") or (spec.constraint == "collinear_subset" and spec.param < 3):
        if not _generic_hilbert(Z):
            return False
    if spec.constraint == "on_conic" and conditions(Z, 2) != min(u, 5):
        return False
    if u >= 3:
        for S, kept in subschemes_of_length(Z, 3):
            if in_line(S) and not kept <= marked:
                return False
    if spec.constraint == "collinear_subset" and spec.param >= 3:
        line = ZeroDimScheme.from_components(Z.field, [Z.components()[i] for i in sorted(marked)])
        if not in_line(line):
            return False
    if u >= 6 and spec.constraint != "on_conic":
        for S, kept in subschemes_of_length(Z, 6):
            # four or more collinear points always lie on a line pair
            if len(kept & marked) >= 4:
                continue
            if on_conic(S):
                return False
    return True


def random_scheme(spec: SchemeSpec, rng, field: FieldSpec | None = None) -> ZeroDimScheme:
    """Sample a scheme of degree ``spec.u`` satisfying exactly the requested constraint.

    Candidates are resampled until the rank checks confirm the constraint and
    rule out every other collinear or conic coincidence.
    """
    F = field or FieldSpec.default()
    for _ in range(MAX_RESAMPLES):
        Z, marked = _candidate(spec, F, rng)
        if Z is not None and Z.degree == spec.u and _no_unrequested_degeneracy(Z, spec, marked):
            return Z
    raise RuntimeError(f"no scheme satisfying {spec.label()} (u={spec.u}) after {MAX_RESAMPLES} samples")
