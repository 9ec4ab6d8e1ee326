import random
from fractions import Fraction
from functools import lru_cache

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from planebundles.bundles import (
    ChernPair,
    bundle_resolution,
    chi_rank_two,
    cohomology_table,
    default_window,
    dual_presentation,
    h0_bundle,
    h1_module,
    make_bundle,
    minimal_section_twist,
    resolution_h0,
    rr_chi_p2,
    rr_chi_p3,
    splits,
    twist_chern,
)
from planebundles.errors import InvalidC1, LocalFreenessViolation, MinimalityViolation, WindowTooSmall
from planebundles.ideals import h0_ideal
from planebundles.schemes import SchemeSpec, ZeroDimScheme, random_scheme

from conftest import FP, sample


H = sympy.Symbol("h")


@lru_cache(maxsize=None)
def _todd(n):
    return sympy.series((H / (1 - sympy.exp(-H))) ** (n + 1), H, 0, n + 1).removeO()


def _hrr(n, c1, c2):
    """Hirzebruch-Riemann-Roch for a rank-two bundle on P^n (n = 2, 3), c3 = 0."""
    h = H
    ch = 2 + c1 * h + sympy.Rational(c1**2 - 2 * c2, 2) * h**2 + sympy.Rational(c1**3 - 3 * c1 * c2, 6) * h**3
    return sympy.expand(ch * _todd(n)).coeff(h, n)


@pytest.mark.parametrize("c1", [-1, 0])
@pytest.mark.parametrize("c2", range(0, 8))
@pytest.mark.parametrize("k", range(-4, 5))
def test_riemann_roch_against_hrr(c1, c2, k):
    tw = twist_chern(ChernPair(c1, c2), k)
    assert rr_chi_p2(c1, c2, k) == _hrr(2, tw.c1, tw.c2) == chi_rank_two(tw.c1, tw.c2)
    assert rr_chi_p3(c1, c2, k) == Fraction(str(_hrr(3, tw.c1, tw.c2)))


def test_rr_anchor_values():
    assert rr_chi_p2(0, 0, 0) == 2
    assert rr_chi_p2(-1, 3, 1) == 1
    assert rr_chi_p2(-1, 4, 2) == 5
    for c2 in range(11):
        assert rr_chi_p3(-1, c2, 0) == 1 - Fraction(3 * c2, 2)
        assert rr_chi_p3(-1, c2, 1) == 5 - Fraction(5 * c2, 2)
        assert rr_chi_p3(0, c2, 0) == 2 - 2 * c2


def test_rr_rejects_unnormalized():
    with pytest.raises(InvalidC1):
        rr_chi_p2(1, 0, 0)
    with pytest.raises(InvalidC1):
        rr_chi_p3(-2, 0, 0)


def test_twist_chern():
    assert twist_chern(ChernPair(0, 2), 1) == ChernPair(2, 3)
    assert twist_chern(ChernPair(-1, 4), 0) == ChernPair(-1, 4)
    assert twist_chern(ChernPair(-1, 1), 1) == ChernPair(1, 1)


def omega1(F=FP):
    return make_bundle(sample(F, 1), -1, 1)


def test_make_bundle_examples(field):
    E = omega1(field)
    assert E.stable and E.c2 == 1
    S = make_bundle(ZeroDimScheme(field), 0, 0)
    assert S.is_split and not S.stable and S.c2 == 0
    E = make_bundle(sample(field, 2), 0, 0)
    assert not E.stable and E.c2 == 2


def test_make_bundle_errors():
    with pytest.raises(MinimalityViolation):
        make_bundle(sample(FP, 1), 0, 1)  # the point lies on lines, so E(0) has a section
    with pytest.raises(MinimalityViolation):
        make_bundle(ZeroDimScheme(FP), -1, 1)
    with pytest.raises(InvalidC1):
        make_bundle(sample(FP, 1), 1, 0)


def test_local_freeness_guard(monkeypatch):
    # minimality forces Cayley-Bacharach, so exercise the guard in isolation
    import planebundles.bundles as b

    monkeypatch.setattr(b, "cayley_bacharach", lambda Z, l: False)
    with pytest.raises(LocalFreenessViolation):
        b.make_bundle(sample(FP, 6), -1, 2)
    b.make_bundle(sample(FP, 3), 0, 1)  # 2r + c1 = 2: no condition


def test_h0_bundle_examples():
    E = omega1()
    assert h0_bundle(E, 0) == 0
    assert h0_bundle(E, 1) == 3
    for seed in range(5):
        Z = sample(FP, 4, seed=seed)
        for c1, r in [(0, 0), (-1, 1), (0, -2)]:
            E = make_bundle(Z, c1, r)
            assert h0_bundle(E, r - 1) == 0


def test_cohomology_table_examples():
    t = cohomology_table(omega1())
    assert t.h1(-1) == 1 and all(t.h1(k) == 0 for k in t.ks if k != -1)
    t = cohomology_table(make_bundle(sample(FP, 2), 0, 0))
    assert t.h1(-1) == 2
    t = cohomology_table(make_bundle(ZeroDimScheme(FP), 0, 0))
    assert all(t.h1(k) == 0 for k in t.ks)


def test_window_too_small():
    E = make_bundle(sample(FP, 5), 0, -1)
    with pytest.raises(WindowTooSmall):
        cohomology_table(E, (-2, 0))
    lo, hi = default_window(E)
    assert cohomology_table(E, (lo - 2, hi + 3)).h1(-1) == 5


def test_text_and_json_output():
    E = omega1()
    t = cohomology_table(E)
    lines = t.format_text().splitlines()
    assert lines[0].split("|")[1].split() == ["-3", "-2", "-1", "0", "1"]
    assert lines[3].split("|")[1].split() == ["0", "0", "1", "0", "0"]
    data = t.to_json(E)
    assert data["c1"] == -1 and data["c2"] == 1 and data["r"] == 1 and data["stable"] is True
    assert data["rows"][2] == {"k": -1, "h0": 0, "h1": 1, "h2": 0, "chi": -1}


def test_minimal_section_twist_examples():
    assert minimal_section_twist(omega1()) == 1
    assert minimal_section_twist(make_bundle(ZeroDimScheme(FP), 0, 0)) == 0
    six = make_bundle(sample(FP, 6), -1, 2)
    assert h0_ideal(six.Z, 2) == 0
    assert minimal_section_twist(six) == 2


def test_splits_examples():
    assert splits(make_bundle(ZeroDimScheme(FP), 0, 0))
    assert not splits(omega1())
    assert not splits(make_bundle(sample(FP, 1), -1, 0))


def test_bundle_resolution_examples():
    assert bundle_resolution(omega1()) == ((-1, -1, -1), (-2,))
    assert bundle_resolution(make_bundle(sample(FP, 2), -1, 1)) == ((-1, -1, -2), (-3,))
    assert bundle_resolution(make_bundle(sample(FP, 3), 0, 1)) == ((-1, -1, -1, -1), (-2, -2))


def test_dual_presentation_examples():
    assert dual_presentation(omega1()) == ((0, 0, 0), (1,))
    assert dual_presentation(make_bundle(sample(FP, 2), 0, 0)) == ((0, 1, 2), (3,))


def test_h1_module_examples():
    m = h1_module(omega1())
    assert m.support == (-1, -1) and m.dims == (1,) and m.gens_plus_two
    m = h1_module(make_bundle(ZeroDimScheme(FP), -1, -2))
    assert m.support is None and m.dims == () and m.gens_plus_two
    m = h1_module(make_bundle(sample(FP, 4), 0, 0))
    lo, hi = m.support
    assert lo <= -1 <= hi and max(m.dims) == 4 == m.dims[-1 - lo]


@st.composite
def bundles(draw):
    seed = draw(st.integers(0, 10**6))
    rng = random.Random(seed)
    kind = draw(st.sampled_from(["nonstable", "stable0", "stable1", "special", "split"]))
    if kind == "split":
        return make_bundle(ZeroDimScheme(FP), draw(st.sampled_from([-1, 0])), draw(st.integers(-3, 0)))
    if kind == "nonstable":
        u = draw(st.integers(1, 7))
        Z = random_scheme(SchemeSpec(u), rng, FP)
        return make_bundle(Z, draw(st.sampled_from([-1, 0])), draw(st.integers(-3, 0)))
    if kind == "stable0":
        return make_bundle(random_scheme(SchemeSpec(draw(st.integers(3, 7))), rng, FP), 0, 1)
    if kind == "stable1":
        return make_bundle(random_scheme(SchemeSpec(draw(st.integers(1, 6))), rng, FP), -1, 1)
    return make_bundle(random_scheme(SchemeSpec(6), rng, FP), -1, 2)


@settings(max_examples=80, deadline=None)
@given(bundles())
def test_bundle_invariants(E):
    t = cohomology_table(E)
    u = t.h1(-1)
    assert all(t.h1(k) <= u for k in t.ks)
    assert (u == 0) == E.is_split
    assert u == (E.c2 if E.stable else E.Z.degree)
    for k in t.ks:
        if -E.c1 - k - 3 in t.ks:
            assert t.h1(k) == t.h1(-E.c1 - k - 3)
        tw = twist_chern(E.chern, k)
        assert t[k].chi == chi_rank_two(tw.c1, tw.c2)
    middle, back = bundle_resolution(E)
    assert len(middle) == len(back) + 2
    for k in t.ks:
        assert t[k].h0 == resolution_h0(middle, back, k)
    h1_module(E, t)
    assert minimal_section_twist(E) == E.r
