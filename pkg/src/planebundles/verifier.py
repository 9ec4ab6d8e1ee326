"""Executable checks of the cohomological statements on concrete bundles.

Every check yields a :class:`CheckReport`. ``fail`` means a proven statement
was contradicted by exact computation. ``flag`` marks the one known
discrepancy we report on purpose: a stable bundle with ``c1 = -1`` and
``c2 = 3`` built on three non-collinear points. Riemann-Roch gives it
``h1(E) = c2 - 1 = 2``, not 0.
"""

from __future__ import annotations

import hashlib
import json
import random
from collections import Counter
from dataclasses import asdict, dataclass, field

from .bundles import (
    SerreBundle,
    bundle_resolution,
    chi_rank_two,
    cohomology_table,
    dual_presentation,
    h1_module,
    make_bundle,
    minimal_section_twist,
    resolution_h0,
    splits,
    twist_chern,
)
from .errors import PreconditionViolation, VerificationAlarm
from .exact_linalg import FieldSpec
from .ideals import ResolutionClass, TEMPLATES, classify_resolution, graded_betti, h0_ideal
from .schemes import SchemeSpec, ZeroDimScheme, random_scheme

PASS, FAIL, FLAG = "pass", "fail", "flag"


@dataclass(frozen=True)
class CheckReport:
    check_id: str
    instance_digest: str
    status: str
    details: tuple = ()

    def to_json(self) -> dict:
        return {
            "id": self.check_id,
            "instance": self.instance_digest,
            "status": self.status,
            "details": [{"name": n, "expected": _jsonable(e), "computed": _jsonable(c)} for n, e, c in self.details],
        }


def _jsonable(x):
    if isinstance(x, (tuple, list)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return str(x)


def _report(check_id, digest, ok, *details, flag=False):
    status = FLAG if flag else (PASS if ok else FAIL)
    return CheckReport(check_id, digest, status, tuple(details))


def verify_bundle(E: SerreBundle, digest: str = "") -> list[CheckReport]:
    """Run the per-bundle theorem checks; alarms become ``fail`` reports."""
    digest = digest or E.describe()
    reports = []
    try:
        table = cohomology_table(E)
    except (VerificationAlarm, AssertionError, ValueError) as exc:
        return [_report("cohomology_table", digest, False, ("table", "consistent", str(exc)))]
    ks = table.ks
    h1 = {k: table.h1(k) for k in ks}
    u = h1[-1]

    peak = max(h1.values())
    reports.append(_report(
        "tcv2_max_at_minus1", digest, peak == u,
        ("max h1 over window", u, peak),
    ))

    try:
        split = splits(E)
        reports.append(_report("tcv2_splitting", digest, split == (u == 0), ("split", E.is_split, split)))
    except VerificationAlarm as exc:
        reports.append(_report("tcv2_splitting", digest, False, ("oracle", "agreement", str(exc))))

    dual_ok = all(h1[k] == h1[-E.c1 - k - 3] for k in ks if -E.c1 - k - 3 in h1)
    reports.append(_report("duality_symmetry", digest, dual_ok, ("h1(k) = h1(-c1-k-3)", True, dual_ok)))

    chi_bad = [
        k for k in ks
        if table[k].chi != chi_rank_two(*_pair(twist_chern(E.chern, k)))
    ]
    reports.append(_report("rr_consistency", digest, not chi_bad, ("twists disagreeing", [], chi_bad)))

    try:
        mod = h1_module(E, table)
        reports.append(_report("h1_connected", digest, True, ("support", "interval", mod.support)))
    except VerificationAlarm as exc:
        mod = None
        reports.append(_report("h1_connected", digest, False, ("support", "interval", str(exc))))

    if E.stable:
        reports.append(_report("u_equals_c2", digest, u == E.c2, ("h1(E(-1))", E.c2, u)))
    else:
        reports.append(_report("u_equals_deg_z", digest, u == E.Z.degree, ("h1(E(-1))", E.Z.degree, u)))

    middle, back = bundle_resolution(E)
    h0_bad = [k for k in ks if table[k].h0 != resolution_h0(middle, back, k)]
    reports.append(_report("h0_two_routes", digest, not h0_bad, ("twists disagreeing", [], h0_bad)))

    dmid, dback = dual_presentation(E)
    rank_ok = len(middle) == len(back) + 2 and len(dmid) == len(dback) + 2
    if mod is not None:
        rank_ok = rank_ok and mod.gens_plus_two
    reports.append(_report("rank_identity", digest, rank_ok, ("|middle| - |back|", 2, len(middle) - len(back))))

    r_min = minimal_section_twist(E)
    reports.append(_report("minimal_twist", digest, r_min == E.r, ("r", E.r, r_min)))

    if not E.stable and E.c1 == -1:
        # unstable c1 = -1: h1(E) = 0 forces a splitting, h1(E(1)) = 0 forces
        # splitting or a single point with r = 0
        ok = (h1[0] != 0 or E.is_split) and (
            h1[1] != 0 or E.is_split or (E.r == 0 and E.Z.degree == 1)
        )
        reports.append(_report("unstable_c1_minus1", digest, ok, ("(h1(E), h1(E(1)))", "consistent", (h1[0], h1[1]))))

    if 1 <= E.Z.degree <= 5:
        try:
            label = classify_resolution(E.Z)
            reports.append(_report("resolution_class", digest, True, ("label", "one of ten", label.value)))
        except VerificationAlarm as exc:
            reports.append(_report("resolution_class", digest, False, ("label", "one of ten", str(exc))))
    return reports


def _pair(c):
    return c.c1, c.c2


def verify_prop_stable(E: SerreBundle, digest: str = "") -> CheckReport:
    """Least-twist statement for stable bundles with h1(E(-1)) <= 4."""
    digest = digest or E.describe()
    if not E.stable:
        raise PreconditionViolation("bundle is not stable")
    table = cohomology_table(E)
    u = table.h1(-1)
    if u > 4:
        raise PreconditionViolation(f"h1(E(-1)) = {u} > 4")
    r = minimal_section_twist(E)
    ok = r == 1 or (r == 2 and E.c1 == -1 and u == 4)
    details = [("r", "1, or 2 with c1=-1 and u=4", r), ("u", u, u)]
    if E.c1 == 0:
        ok = ok and u >= 2 and h0_ideal(E.Z, 1) == 0 and E.Z.degree == u + 1
        details += [("h0(I_Z(1))", 0, h0_ideal(E.Z, 1)), ("deg Z", u + 1, E.Z.degree)]
    elif r == 1:
        ok = ok and u >= 1 and E.Z.degree == u
        details.append(("deg Z", u, E.Z.degree))
    else:
        ok = ok and E.Z.degree == 6 and h0_ideal(E.Z, 2) == 0
        details += [("deg Z", 6, E.Z.degree), ("h0(I_Z(2))", 0, h0_ideal(E.Z, 2))]
    return _report("prop_stable", digest, ok, *details)


def corollary_templates(E: SerreBundle, u: int) -> list[tuple[tuple, tuple]]:
    """Expected (middle, back) shapes for h1(E(-1)) in {1, 2}."""
    a, b = E.r, -E.r - E.c1 + 1
    if u == 1:
        shapes = [((-a, -b, -b), (-b - 1,))]
    else:
        shapes = [((-b - 1, -b, -a), (-b - 2,)), ((-1, -1, -1, -1), (-2, -2))]
    return [(tuple(sorted(m, reverse=True)), tuple(sorted(k, reverse=True))) for m, k in shapes]


def verify_corollaries(E: SerreBundle, digest: str = "") -> CheckReport:
    digest = digest or E.describe()
    u = cohomology_table(E).h1(-1)
    if u not in (1, 2):
        raise PreconditionViolation(f"h1(E(-1)) = {u}; corollaries cover 1 and 2")
    a, b = E.r, -E.r - E.c1 + 1
    got = bundle_resolution(E)
    shapes = corollary_templates(E, u)
    ok = got in shapes
    if u in (1, 2) and got == shapes[0]:
        ok = ok and a <= b
    details = [("resolution", shapes, got), ("(a, b)", "a <= b", (a, b))]
    if u == 1 and E.stable:
        ok = ok and a == b and E.c1 == -1
        details.append(("stable u=1", "a = b, c1 = -1", (a, b, E.c1)))
    if u == 2 and E.stable and E.c1 == 0:
        ok = ok and got == shapes[1]
        details.append(("stable c1=0 shape", shapes[1], got))
    return _report(f"corollary_u{u}", digest, ok, *details)


def _fresh(field_spec, rng, u, constraint="generic", param=0):
    return random_scheme(SchemeSpec(u, constraint, param), rng, field_spec)


def verify_remarks(rng, field_spec: FieldSpec | None = None) -> list[CheckReport]:
    F = field_spec or FieldSpec.default()
    reports = []

    Z = _fresh(F, rng, 1)
    E = make_bundle(Z, -1, 0)
    h1_1 = cohomology_table(E, (-5, 3)).h1(1)
    split = splits(E)
    reports.append(_report(
        "remark_unstable_point", "remark: Z=1 point, c1=-1, r=0",
        h1_1 == 0 and not split, ("h1(E(1))", 0, h1_1), ("splits", False, split),
    ))

    Z = _fresh(F, rng, 6)
    E = make_bundle(Z, -1, 2)
    t = cohomology_table(E)
    ok = t.h1(1) == 0 and E.c2 == 4 and h0_ideal(Z, 2) == 0
    reports.append(_report(
        "remark_six_points", "remark: Z=6 points off a conic, c1=-1, r=2", ok,
        ("h1(E(1))", 0, t.h1(1)), ("c2", 4, E.c2), ("h0(I_Z(2))", 0, h0_ideal(Z, 2)),
    ))

    Z = _fresh(F, rng, 3)
    E = make_bundle(Z, -1, 1)
    t = cohomology_table(E)
    reports.append(_report(
        "remark_three_points", "remark: Z=3 non-collinear points, c1=-1, r=1", False,
        ("h1(E)", 0, t.h1(0)), ("c2", 3, E.c2), ("c2 - 1", E.c2 - 1, t.h1(0)),
        flag=True,
    ))
    return reports


def realize_ten_cases(rng, field_spec: FieldSpec | None = None) -> dict[ResolutionClass, ZeroDimScheme]:
    """One validated witness scheme per resolution class."""
    F = field_spec or FieldSpec.default()
    recipes = {
        **{ResolutionClass.ci_line(u): (u, "collinear_subset", u) for u in range(1, 6)},
        ResolutionClass.B1: (3, "generic", 0),
        ResolutionClass.B2: (4, "collinear_subset", 3),
        ResolutionClass.B3: (4, "generic", 0),
        ResolutionClass.B4: (5, "collinear_subset", 4),
        ResolutionClass.B5: (5, "generic", 0),
    }
    out = {}
    for label, (u, constraint, param) in recipes.items():
        for _ in range(1000):
            Z = _fresh(F, rng, u, constraint, param)
            if classify_resolution(Z) is label:
                out[label] = Z
                break
        else:
            raise VerificationAlarm(f"could not realize {label.value}")
    return out


def verify_ten_cases(rng, field_spec: FieldSpec | None = None) -> list[CheckReport]:
    reports = []
    for label, Z in realize_ten_cases(rng, field_spec).items():
        betti = graded_betti(Z)
        expected = TEMPLATES[label][1]
        reports.append(_report(
            "ten_cases", f"witness {label.value}", betti == expected,
            ("betti", expected.to_json(), betti.to_json()),
        ))
    return reports


# ensembles

STABLE_RECIPES = [(0, c2, 1) for c2 in range(2, 6)] + [(-1, c2, 1) for c2 in range(1, 6)] + [(-1, 4, 2)]
NONSTABLE_R = (-2, -1, 0)


@dataclass(frozen=True)
class EnsembleConfig:
    trials: int = 100
    u_range: tuple[int, int] = (1, 5)
    stability_mix: float = 0.0
    field: FieldSpec = field(default_factory=FieldSpec.default)
    seed: int = 20240601

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if not 0.0 <= self.stability_mix <= 1.0:
            raise ValueError("stability_mix is a fraction")
        lo, hi = self.u_range
        if not 0 <= lo <= hi <= 12:
            raise ValueError("u_range must satisfy 0 <= lo <= hi <= 12")

    def to_json(self) -> dict:
        d = asdict(self)
        d["u_range"] = list(self.u_range)
        d["field"] = self.field.to_json()
        return d


def trial_rng(seed: int, index: int) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{index}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def _random_constraint(rng, u: int):
    options = [("generic", 0), ("on_conic", 0)]
    options += [("collinear_subset", k) for k in range(3, u + 1)]
    options += [("with_arc", l) for l in range(2, min(u, 5) + 1)]
    return rng.choice(options)


def sample_nonstable(rng, config: EnsembleConfig):
    u = rng.randint(*config.u_range)
    c1 = rng.choice((-1, 0))
    r = rng.choice(NONSTABLE_R)
    if u == 0:
        Z = ZeroDimScheme(config.field)
        tag = "split"
    else:
        constraint, param = _random_constraint(rng, u)
        Z = _fresh(config.field, rng, u, constraint, param)
        tag = SchemeSpec(u, constraint, param).label()
    return make_bundle(Z, c1, r), f"nonstable u={u} {tag} c1={c1} r={r}"


def sample_stable(rng, config: EnsembleConfig):
    lo, hi = config.u_range
    recipes = [x for x in STABLE_RECIPES if lo <= x[1] <= hi] or STABLE_RECIPES
    c1, c2, r = rng.choice(recipes)
    if r == 2:
        Z = _fresh(config.field, rng, 6)
        tag = "generic(6)"
    else:
        deg = c2 + 1 if c1 == 0 else c2
        while True:
            constraint, param = _random_constraint(rng, deg)
            if c1 == 0 and constraint == "collinear_subset" and param == deg:
                continue  # c1 = 0 needs Z off every line
            break
        Z = _fresh(config.field, rng, deg, constraint, param)
        tag = SchemeSpec(deg, constraint, param).label()
    return make_bundle(Z, c1, r), f"stable c1={c1} c2={c2} r={r} {tag}"


def run_trial(config: EnsembleConfig, index: int) -> tuple[SerreBundle, list[CheckReport]]:
    rng = trial_rng(config.seed, index)
    stable = rng.random() < config.stability_mix
    E, tag = (sample_stable if stable else sample_nonstable)(rng, config)
    digest = f"seed={config.seed} trial={index} {tag}"
    reports = verify_bundle(E, digest)
    u = cohomology_table(E).h1(-1)
    if E.stable and u <= 4:
        reports.append(verify_prop_stable(E, digest))
    if u in (1, 2):
        reports.append(verify_corollaries(E, digest))
    return E, reports


def summarize(config_json: dict, reports: list[CheckReport]) -> dict:
    counts: dict[str, Counter] = {}
    for rep in reports:
        counts.setdefault(rep.check_id, Counter())[rep.status] += 1
    return {
        "config": config_json,
        "checks": [
            {"id": cid, "pass": c[PASS], "fail": c[FAIL], "flag": c[FLAG]}
            for cid, c in sorted(counts.items())
        ],
        "failures": [rep.to_json() for rep in reports if rep.status == FAIL],
    }


def verify_ensemble(config: EnsembleConfig) -> dict:
    """Summary dict (see :func:`summarize`) over ``config.trials`` seeded trials."""
    reports = []
    for i in range(config.trials):
        reports.extend(run_trial(config, i)[1])
    return summarize(config.to_json(), reports)


def summary_failed(summary: dict) -> bool:
    return any(c["fail"] for c in summary["checks"])


def dumps_summary(summary: dict) -> str:
    return json.dumps(summary, indent=2, sort_keys=True)
