"""Page model: standard pages, push-offs, twists, intersection numbers."""

import random

import pytest

from openbook.errors import DegeneratePage, NonEmbeddedCurve
from openbook.page import (
    make_standard_page, cut_arc_path, standard_pushoff, push_off,
    core_curve, boundary_parallel_curve, geometric_intersection,
    apply_mapping_class, apply_mapping_class_to_paths, make_word, compose,
    homology_vector, is_embedded, realize, MappingClassWord,
)

import oracles


def annulus():
    return make_standard_page(0, 2)


def torus():
    return make_standard_page(1, 1)


# ---------------------------------------------------------------------------
# Standard pages
# ---------------------------------------------------------------------------

def test_standard_page_arc_counts():
    assert make_standard_page(0, 2).arc_count == 1
    assert make_standard_page(1, 1).arc_count == 2
    assert make_standard_page(1, 2).arc_count == 3
    assert make_standard_page(2, 1).arc_count == 4


def test_disk_rejected():
    with pytest.raises(DegeneratePage):
        make_standard_page(0, 1)


def test_boundary_orbits():
    assert len(make_standard_page(0, 3).gap_orbits()) == 3
    assert len(make_standard_page(1, 2).gap_orbits()) == 2
    # punctured torus: all four gaps form one boundary component
    orbits = torus().gap_orbits()
    assert len(orbits) == 1 and len(orbits[0]) == 4


# ---------------------------------------------------------------------------
# Push-offs
# ---------------------------------------------------------------------------

def test_pushoff_intersections():
    for page in (annulus(), torus(), make_standard_page(1, 2)):
        for arc in range(page.arc_count):
            a = cut_arc_path(page, arc)
            b = standard_pushoff(page, arc, 1)
            c = push_off(page, b)
            assert c.pushoff_of == (arc, 2)
            assert geometric_intersection(page, a, b) == 1
            assert geometric_intersection(page, b, c) == 1
            assert geometric_intersection(page, a, c) == 1


def test_pushoff_endpoints_on_same_boundary_components():
    page = make_standard_page(1, 2)
    for arc in range(page.arc_count):
        a = cut_arc_path(page, arc)
        b = standard_pushoff(page, arc, 1)
        comp_of_gap = {}
        for ci, orbit in enumerate(page.gap_orbits()):
            for g in orbit:
                comp_of_gap[g] = ci
        assert comp_of_gap[a.start[0]] == comp_of_gap[b.start[0]]
        assert comp_of_gap[a.end[0]] == comp_of_gap[b.end[0]]


def test_pushoffs_of_distinct_arcs_disjoint():
    page = torus()
    b1 = standard_pushoff(page, 0, 1)
    b2 = standard_pushoff(page, 1, 1)
    assert geometric_intersection(page, b1, b2) == 0
    c1 = standard_pushoff(page, 0, 2)
    assert geometric_intersection(page, c1, b2) == 0


# ---------------------------------------------------------------------------
# Basic curves
# ---------------------------------------------------------------------------

def test_core_curves_embedded_and_dual():
    page = torus()
    p = core_curve(page, 0)
    q = core_curve(page, 1)
    assert is_embedded(page, p) and is_embedded(page, q)
    assert geometric_intersection(page, p, q) == 1


def test_boundary_parallel_curve_torus():
    page = torus()
    d = boundary_parallel_curve(page, 0)
    assert len(d.word) == 4
    assert is_embedded(page, d)
    assert homology_vector(page, d) == [0, 0]
    # null-homologous but essential: disjoint from nothing forced, but it
    # can be twisted about (permitted)
    make_word(page, [(d, 1)])


def test_boundary_parallel_curve_annulus_is_core():
    page = annulus()
    d = boundary_parallel_curve(page, 0)
    core = core_curve(page, 0)
    assert abs(homology_vector(page, d)[0]) == 1
    assert geometric_intersection(page, d, core) == 0


def test_null_homotopic_twist_rejected():
    page = annulus()
    from openbook.page import EmbeddedPath
    triv = EmbeddedPath(kind="closed", word=(), params=())
    with pytest.raises(NonEmbeddedCurve):
        make_word(page, [(triv, 1)])


# ---------------------------------------------------------------------------
# Twists: basics
# ---------------------------------------------------------------------------

def test_twist_disjoint_support_is_identity():
    page = make_standard_page(1, 2)
    w = make_word(page, [(core_curve(page, 2), 1)])
    b1 = standard_pushoff(page, 0, 1)
    image = apply_mapping_class(page, w, b1)
    assert image.isotopy_key(page) == b1.isotopy_key(page)


def test_empty_word_is_identity():
    page = annulus()
    b = standard_pushoff(page, 0, 1)
    image = apply_mapping_class(page, MappingClassWord.identity(), b)
    assert image == b


def test_annulus_positive_twist_untwists_pushoff():
    # The sign convention is pinned here: positively twisting the positive
    # push-off about the core must cancel its crossing with the cut arc.
    page = annulus()
    b = standard_pushoff(page, 0, 1)
    core = core_curve(page, 0)
    plus = apply_mapping_class(page, make_word(page, [(core, 1)]), b)
    minus = apply_mapping_class(page, make_word(page, [(core, -1)]), b)
    assert len(plus.word) == 0
    assert len(minus.word) == 2
    a = cut_arc_path(page, 0)
    assert geometric_intersection(page, a, plus) == 0
    assert geometric_intersection(page, a, minus) == 2


def test_round_trip_words():
    rng = random.Random(7)
    page = torus()
    curves = [core_curve(page, 0), core_curve(page, 1),
              boundary_parallel_curve(page, 0)]
    targets = [cut_arc_path(page, 0), cut_arc_path(page, 1),
               standard_pushoff(page, 0, 1), standard_pushoff(page, 1, 1)]
    for _ in range(8):
        letters = [(rng.choice(curves), rng.choice([1, -1]))
                   for _ in range(rng.randint(1, 6))]
        w = make_word(page, letters)
        wi = w.inverse()
        round_trip = compose(page, w, wi)
        for d in targets:
            image = apply_mapping_class(page, round_trip, d)
            assert image.isotopy_key(page) == d.isotopy_key(page)


def test_twist_preserves_embeddedness():
    rng = random.Random(11)
    page = torus()
    curves = [core_curve(page, 0), core_curve(page, 1)]
    for _ in range(10):
        letters = [(rng.choice(curves), rng.choice([1, -1]))
                   for _ in range(rng.randint(1, 5))]
        w = make_word(page, letters)
        for d in (cut_arc_path(page, 0), standard_pushoff(page, 1, 1),
                  core_curve(page, 0)):
            image = apply_mapping_class(page, w, d)
            assert is_embedded(page, image)


def test_twist_invariance_of_intersection():
    rng = random.Random(3)
    page = torus()
    p, q = core_curve(page, 0), core_curve(page, 1)
    x0 = standard_pushoff(page, 0, 1)
    y0 = core_curve(page, 1)
    for _ in range(6):
        letters = [(rng.choice([p, q]), rng.choice([1, -1]))
                   for _ in range(rng.randint(1, 4))]
        w = make_word(page, letters)
        x1, y1 = apply_mapping_class_to_paths(page, w, [x0, y0])
        assert (geometric_intersection(page, x1, y1)
                == geometric_intersection(page, x0, y0))


# ---------------------------------------------------------------------------
# Twists: slope oracle on the once-punctured torus
# ---------------------------------------------------------------------------

def _torus_setup():
    page = torus()
    p = core_curve(page, 0)
    q = core_curve(page, 1)
    # Verify the oracle's symplectic convention against the machine once:
    # <p, q> must match the sign of the single crossing.
    return page, p, q


def test_oracle_classes_match_homology():
    page, p, q = _torus_setup()
    hp = homology_vector(page, p)
    hq = homology_vector(page, q)
    assert sorted(map(abs, hp)) == [0, 1]
    assert sorted(map(abs, hq)) == [0, 1]
    assert oracles.form(tuple(hp), tuple(hq)) in (1, -1)


def test_twist_action_on_homology():
    page, p, q = _torus_setup()
    hp, hq = tuple(homology_vector(page, p)), tuple(homology_vector(page, q))
    for c, hc in ((p, hp), (q, hq)):
        for e in (1, -1):
            w = make_word(page, [(c, e)])
            img = apply_mapping_class(page, w, q if c is p else p)
            hv = tuple(homology_vector(page, img))
            target = oracles.twist(hc, e, hq if c is p else hp)
            assert hv == target, (hv, target, hc, e)


def test_slope_oracle_powers():
    page, p, q = _torus_setup()
    hp, hq = tuple(homology_vector(page, p)), tuple(homology_vector(page, q))
    for n in range(1, 5):
        w = make_word(page, [(p, 1)] * n)
        img = apply_mapping_class(page, w, q)
        expected = oracles.curve_curve(oracles.twist_word([(hp, 1)] * n, hq),
                                       hq)
        assert geometric_intersection(page, img, q) == expected
        assert expected == n  # matches p * i(p,q)^2


def test_slope_oracle_random_words():
    rng = random.Random(2024)
    page, p, q = _torus_setup()
    hp, hq = tuple(homology_vector(page, p)), tuple(homology_vector(page, q))
    curves = [(p, hp), (q, hq)]
    checked = 0
    for _ in range(60):
        n = rng.randint(1, 6)
        letters = []
        for _ in range(n):
            c, hc = rng.choice(curves)
            e = rng.choice([1, -1])
            letters.append(((c, e), (hc, e)))
        w = make_word(page, [l[0] for l in letters])
        oletters = [l[1] for l in letters]
        for target, htarget in curves:
            img = apply_mapping_class(page, w, target)
            got = geometric_intersection(page, img, q)
            want = oracles.curve_curve(oracles.twist_word(oletters, htarget),
                                       hq)
            assert got == want, (got, want)
            got_p = geometric_intersection(page, img, p)
            want_p = oracles.curve_curve(oracles.twist_word(oletters, htarget),
                                         hp)
            assert got_p == want_p
            checked += 1
    assert checked >= 50


def test_slope_oracle_twisted_arcs():
    rng = random.Random(99)
    page, p, q = _torus_setup()
    hp, hq = tuple(homology_vector(page, p)), tuple(homology_vector(page, q))
    a1, a2 = cut_arc_path(page, 0), cut_arc_path(page, 1)
    # the cut arc of a band pairs with curves like the dual band's core
    ha1 = hq
    ha2 = hp
    assert geometric_intersection(page, a1, q) == oracles.arc_curve(ha1, hq)
    assert geometric_intersection(page, a2, p) == oracles.arc_curve(ha2, hp)
    curves = [(p, hp), (q, hq)]
    checked = 0
    for _ in range(30):
        n = rng.randint(1, 6)
        pairs = [(rng.choice(curves), rng.choice([1, -1])) for _ in range(n)]
        w = make_word(page, [(c, e) for (c, _), e in pairs])
        oletters = [(hc, e) for (_, hc), e in pairs]
        for arc, harc in ((a1, ha1), (a2, ha2)):
            img = apply_mapping_class(page, w, arc)
            cls = oracles.twist_word(oletters, harc)
            assert geometric_intersection(page, img, p) == \
                oracles.arc_curve(cls, hp)
            assert geometric_intersection(page, img, q) == \
                oracles.arc_curve(cls, hq)
            checked += 2
    assert checked >= 50
