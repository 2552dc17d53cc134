"""Acceptance gate: every stated guarantee at its stated scale.

Each test prints one PASS line with the observed counts so the suite doubles
as a human-readable report (run with ``pytest tests/test_acceptance.py -s``).
"""

import itertools
import time
from fractions import Fraction

import numpy as np
import pytest

import indicatrix.cones as cones
import indicatrix.predicates as pr
import indicatrix.reduction as reduction
import indicatrix.simplicity as simplicity
from indicatrix.applications import mobius_check, tennis_ball_check
from indicatrix.cones import (
    closed_hemisphere_witness,
    nonessential_vertices,
)
from indicatrix.errors import GeometryError, NotBalanced, TheoremViolation
from indicatrix.harness import (
    GeneratorConfig,
    _balanced_point_set,
    _centrally_symmetric_polygon,
    _nearest_neighbor_order,
    _planar_great_circle_polygon,
    _tree_with_leaves,
    _unit_points,
    gen_balanced_simple,
    gen_rational_balanced,
    gen_segre_space_polygon,
    oracle_arc_intersection,
)
from indicatrix.lifting import lift, lift_weights
from indicatrix.polygons import (
    SphericalPolygon,
    count_sign_changes,
    epsilon_sequence,
    flattenings,
    is_generic,
    spherical_inflections,
    tangent_indicatrix,
)
from indicatrix.reduction import reduce_to_base
from indicatrix.simplicity import (
    good_vertices,
    is_simple,
    region_dual_edges,
    triangulate_regions,
)

from conftest import EXAMPLE1_POINTS


def _report(criterion: str, detail: str) -> None:
    print(f"ACCEPTANCE {criterion}: PASS -- {detail}")


def _general_position_quadruple(pts) -> bool:
    for tri in itertools.combinations(pts, 3):
        if pr.orientation(*tri) is pr.Sign.ZERO:
            return False
    return True


def test_criterion_1_example1_reproduction():
    start = time.perf_counter()
    q = SphericalPolygon(EXAMPLE1_POINTS)
    eps = epsilon_sequence(q)
    assert eps.symbols() == ["+", "+", "+", "+"]
    assert spherical_inflections(q) == []
    assert is_simple(q) is True
    assert cones.is_balanced(q) is False
    with pytest.raises(NotBalanced):
        lift_weights(q)
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    _report("1 [example-1 reproduction]",
            f"epsilon ++++ , 0 inflections, simple, not balanced, "
            f"lift refused; {elapsed:.3f}s")


def test_criterion_2_quadruple_equivalence():
    trials = 100_000
    start = time.perf_counter()
    rng = np.random.default_rng(20_002)
    batch = rng.normal(size=(trials, 4, 3))
    batch /= np.linalg.norm(batch, axis=2, keepdims=True)
    checked = balanced_count = 0
    for quad in batch:
        pts = tuple(map(tuple, quad))
        if not _general_position_quadruple(pts):
            continue
        checked += 1
        balanced = closed_hemisphere_witness(pts) is None
        criterion = cones.four_point_characterization(*pts)
        poly = SphericalPolygon(pts)
        four_changes = count_sign_changes(epsilon_sequence(poly)) == 4
        assert balanced == criterion == four_changes
        if balanced:
            balanced_count += 1
            assert cones.cone_membership(pr.neg(pts[0]), pts[1:]) is not None
            assert is_simple(poly)
    elapsed = time.perf_counter() - start
    assert checked >= trials * 0.999
    assert balanced_count > 0
    assert elapsed < 30.0
    _report("2 [n=4 equivalence suite]",
            f"{checked} quadruples, {balanced_count} balanced, "
            f"zero disagreements; {elapsed:.1f}s")


def test_criterion_3_nonessential_bound():
    trials = 1000
    rng = np.random.default_rng(20_003)
    for _ in range(trials):
        n = int(rng.integers(5, 17))
        pts = _balanced_point_set(rng, n, 4000)
        assert len(nonessential_vertices(pts)) >= n - 3
    _report("3 [nonessential >= n-3]", f"{trials} balanced sets, n in [5,16]")


def test_criterion_4_good_vertices_and_dual_trees():
    trials = 1000
    rng = np.random.default_rng(20_004)
    cfg = GeneratorConfig(seed=20_004, n_range=(4, 16), attempts=4000)
    for _ in range(trials):
        q = gen_balanced_simple(cfg, rng)
        assert len(good_vertices(q)) >= 4
        tri = triangulate_regions(q)
        duals = region_dual_edges(tri)
        for tag in (1, 2):
            nodes = [i for i, r in enumerate(tri.region) if r == tag]
            assert _tree_with_leaves(nodes, duals[tag])
    _report("4 [>=4 good vertices, dual trees]",
            f"{trials} simple balanced polygons, n in [4,16]")


def test_criterion_5_main_theorem_and_traces():
    trials = 1000
    start = time.perf_counter()
    rng = np.random.default_rng(20_005)
    cfg = GeneratorConfig(seed=20_005, n_range=(4, 12), attempts=4000)
    total_steps = 0
    for _ in range(trials):
        q = gen_balanced_simple(cfg, rng)
        changes = count_sign_changes(epsilon_sequence(q))
        assert changes >= 4 and changes % 2 == 0
        trace = reduce_to_base(q)
        counts = trace.counts()
        assert all(a >= b for a, b in zip(counts, counts[1:]))
        assert all(s.delta in (0, 2, 4) for s in trace.steps)
        assert counts[-1] == 4
        assert count_sign_changes(trace.terminal_epsilon) == 4
        total_steps += len(trace.steps)
    elapsed = time.perf_counter() - start
    assert elapsed < 300.0
    _report("5 [main theorem + monotone traces]",
            f"{trials} polygons, {total_steps} deletions, terminal always 4; "
            f"{elapsed:.1f}s")


def test_criterion_6_lifting_round_trip():
    trials = 1000
    rng = np.random.default_rng(20_006)
    for _ in range(trials):
        n = int(rng.integers(4, 21))
        pts = _balanced_point_set(rng, n, 4000)
        order = _nearest_neighbor_order(pts)
        q = SphericalPolygon([pts[i] for i in order])
        weights = lift_weights(q)
        assert all(l > 0 for l in weights.lambdas)
        assert weights.closure_residual(q) <= 1e-9 * float(weights.weight_sum())
        p = lift(q, tuple(rng.normal(size=3)), weights=weights)
        back = tangent_indicatrix(p)
        worst = max(pr.vec_angle(u, v) for u, v in zip(q.vertices, back.vertices))
        assert worst <= 1e-8
    exact_trials = 50
    exact_rng = np.random.default_rng(20_106)
    for _ in range(exact_trials):
        q = gen_rational_balanced(exact_rng, int(exact_rng.integers(5, 8)))
        weights = lift_weights(q)
        acc = (Fraction(0), Fraction(0), Fraction(0))
        for lam, u in zip(weights.lambdas, q.vertices):
            acc = pr.add(acc, pr.scale(u, lam))
        assert acc == (0, 0, 0)
    _report("6 [lifting round trip]",
            f"{trials} float lifts (n in [4,20]) within tolerance, "
            f"{exact_trials} exact lifts with residual exactly 0")


def test_criterion_7_arc_predicate_vs_oracle():
    trials = 10_000
    rng = np.random.default_rng(20_007)
    checked = crossings = antipodal_rejections = 0
    while checked < trials:
        pts = rng.normal(size=(4, 3))
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
        a1, a2, b1, b2 = map(tuple, pts)
        try:
            got = simplicity.minor_arcs_cross(a1, a2, b1, b2)
            want = oracle_arc_intersection(a1, a2, b1, b2)
        except GeometryError:
            continue
        assert got == want
        checked += 1
        if got:
            crossings += 1
            # constructed case (e): the antipodal image still satisfies the
            # separation half-relation but must be rejected
            c1, c2 = pr.neg(b1), pr.neg(b2)
            s = pr.orientation
            assert s(a1, a2, c1) is not s(a1, a2, c2)
            assert s(a1, c1, c2) is not s(a2, c1, c2)
            assert simplicity.minor_arcs_cross(a1, a2, c1, c2) is False
            assert oracle_arc_intersection(a1, a2, c1, c2) is False
            antipodal_rejections += 1
    assert crossings > 0
    _report("7 [crossing criterion vs oracle]",
            f"{checked} arc pairs, {crossings} crossings, "
            f"{antipodal_rejections} antipodal rejections, zero disagreements")


def test_criterion_8_segre_transfer():
    trials = 500
    rng = np.random.default_rng(20_008)
    cfg = GeneratorConfig(seed=20_008, n_range=(4, 12), attempts=4000)
    for _ in range(trials):
        p = gen_segre_space_polygon(cfg, rng)
        assert is_generic(p)
        q = tangent_indicatrix(p)
        assert is_simple(q)
        flats = flattenings(p)
        infl = spherical_inflections(q)
        assert len(flats) >= 4
        assert [t[0] for t in flats] == [e[0] for e in infl]
    _report("8 [flattening transfer]",
            f"{trials} lifted polygons, flattenings == inflections >= 4")


def test_criterion_9_tennis_ball():
    trials = 200
    rng = np.random.default_rng(20_009)
    symmetric = planar = 0
    worst_gap = 0.0
    for t in range(trials):
        if t % 3 == 2:
            q = _planar_great_circle_polygon(rng, int(rng.integers(4, 13)))
            planar += 1
        else:
            q = _centrally_symmetric_polygon(rng, int(rng.integers(3, 11)), 4000)
            symmetric += 1
        report = tennis_ball_check(q)
        assert report.equal_area is True
        assert report.inflections >= 4
        assert report.theorem_holds is True
        if not report.planar:
            tri = triangulate_regions(q)
            gap = abs(report.areas.area1 - tri.region_area(1))
            worst_gap = max(worst_gap, gap)
            assert gap <= 1e-8
    _report("9 [equal-area bound]",
            f"{symmetric} symmetric + {planar} planar polygons, "
            f"worst area-route gap {worst_gap:.2e} sr")


def test_criterion_10_symmetric_pairing():
    trials = 200
    rng = np.random.default_rng(20_010)
    for _ in range(trials):
        m = int(rng.integers(3, 11))
        q = _centrally_symmetric_polygon(rng, m, 4000)
        report = mobius_check(q)
        assert report.inflections >= 6
        assert report.theorem_holds is True
        infl = {e for e, _ in spherical_inflections(q)}
        covered = {e for pair in report.paired for e in pair}
        assert covered == infl
        n = len(q)
        for a, b in report.paired:
            assert (a + n // 2) % n == b
    _report("10 [symmetric >=6 + pairing]",
            f"{trials} centrally symmetric polygons, n in [6,20]")


# ----------------------------------------------------------------- mutation

def _mini_quadruple_equivalence(trials=250, seed=1) -> bool:
    rng = np.random.default_rng(seed)
    try:
        for _ in range(trials):
            pts = tuple(map(tuple, _unit_points(rng, 4)))
            if not _general_position_quadruple(pts):
                continue
            balanced = closed_hemisphere_witness(pts) is None
            criterion = cones.four_point_characterization(*pts)
            poly = SphericalPolygon(pts)
            if (count_sign_changes(epsilon_sequence(poly)) == 4) != balanced:
                return False
            if criterion != balanced:
                return False
            if balanced:
                if cones.cone_membership(pr.neg(pts[0]), pts[1:]) is None:
                    return False
                if not is_simple(poly):
                    return False
        return True
    except GeometryError:
        return False


def _mini_reduction(trials=15, seed=2) -> bool:
    rng = np.random.default_rng(seed)
    cfg = GeneratorConfig(seed=seed, n_range=(6, 10), attempts=4000)
    try:
        for _ in range(trials):
            q = gen_balanced_simple(cfg, rng)
            trace = reduction.reduce_to_base(q)
            counts = trace.counts()
            if counts[-1] != 4 or any(a < b for a, b in zip(counts, counts[1:])):
                return False
            if any(s.delta not in (0, 2, 4) for s in trace.steps):
                return False
        return True
    except (GeometryError, TheoremViolation):
        return False


def _mini_arc_oracle(trials=400, seed=3) -> bool:
    rng = np.random.default_rng(seed)
    checked = 0
    try:
        while checked < trials:
            pts = rng.normal(size=(4, 3))
            pts /= np.linalg.norm(pts, axis=1, keepdims=True)
            a1, a2, b1, b2 = map(tuple, pts)
            try:
                got = simplicity.minor_arcs_cross(a1, a2, b1, b2)
                want = oracle_arc_intersection(a1, a2, b1, b2)
            except GeometryError:
                continue
            if got != want:
                return False
            if got:
                if simplicity.minor_arcs_cross(a1, a2, pr.neg(b1), pr.neg(b2)):
                    return False
            checked += 1
        return True
    except GeometryError:
        return False


def _mutations(monkeypatch):
    """Single-site sign-convention flips in the predicate kernel and the
    crossing criterion; each must be caught by criteria 2, 5 or 7."""
    original_det3 = pr.det3
    original_cross = simplicity.minor_arcs_cross
    original_cone = cones.cone_membership
    original_inflections = reduction.spherical_inflections

    def det3_one_term_flipped(a, b, c):
        return (a[0] * (b[1] * c[2] - b[2] * c[1])
                - a[1] * (b[0] * c[2] - b[2] * c[0])
                - a[2] * (b[0] * c[1] - b[1] * c[0]))

    def characterization_wrong_pattern(u1, u2, u3, u4, tol=pr.DEGENERACY_TOL):
        s123 = pr.orientation(u1, u2, u3, tol)
        s134 = pr.orientation(u1, u3, u4, tol)
        s124 = pr.orientation(u1, u2, u4, tol)
        s234 = pr.orientation(u2, u3, u4, tol)
        if pr.Sign.ZERO in (s123, s134, s124, s234):
            raise cones.CollinearTriple("degenerate")
        return s123 is s134 and s124 is s234 and s123 is s124  # dropped flip

    def half_criterion(a, b, c, d, tol=pr.DEGENERACY_TOL, on_degenerate="raise"):
        s_abc = pr.orientation(a, b, c, tol)
        s_abd = pr.orientation(a, b, d, tol)
        s_bcd = pr.orientation(b, c, d, tol)
        s_acd = pr.orientation(a, c, d, tol)
        if pr.Sign.ZERO in (s_abc, s_abd, s_bcd, s_acd):
            return original_cross(a, b, c, d, tol, on_degenerate)
        return s_abc is not s_abd and s_bcd is not s_acd

    def flipped_agreement(a, b, c, d, tol=pr.DEGENERACY_TOL, on_degenerate="raise"):
        s_abc = pr.orientation(a, b, c, tol)
        s_abd = pr.orientation(a, b, d, tol)
        s_bcd = pr.orientation(b, c, d, tol)
        s_acd = pr.orientation(a, c, d, tol)
        if pr.Sign.ZERO in (s_abc, s_abd, s_bcd, s_acd):
            return original_cross(a, b, c, d, tol, on_degenerate)
        return s_abc is not s_bcd and s_abd is s_acd and s_abc is not s_abd

    def cone_cramer_swapped(target, generators, coefficient_tol=cones.COEFFICIENT_TOL,
                            tol=pr.DEGENERACY_TOL):
        g1, g2, g3 = generators
        d = pr.det3(g1, g2, g3)
        if abs(float(d)) <= tol:
            raise cones.SingularGenerators("dependent")
        lams = (
            pr.det3(target, g3, g2) / d,  # swapped columns: sign error
            pr.det3(g1, target, g3) / d,
            pr.det3(g1, g2, target) / d,
        )
        if all(l > coefficient_tol for l in lams):
            return cones.ConeCertificate((0, 1, 2), lams, target)
        return None

    def inverted_inflections(q, tol=pr.DEGENERACY_TOL):
        eps = epsilon_sequence(q, tol).signs
        n = len(q)
        return [(i, (i + 1) % n) for i in range(n) if eps[(i - 1) % n] is eps[i]]

    return [
        ("det3 one-term sign flip",
         lambda: monkeypatch.setattr(pr, "det3", det3_one_term_flipped)),
        ("characterization pattern without negation",
         lambda: monkeypatch.setattr(cones, "four_point_characterization",
                                     characterization_wrong_pattern)),
        ("crossing half-criterion only",
         lambda: monkeypatch.setattr(simplicity, "minor_arcs_cross", half_criterion)),
        ("crossing agreement flipped",
         lambda: monkeypatch.setattr(simplicity, "minor_arcs_cross", flipped_agreement)),
        ("cone membership Cramer columns swapped",
         lambda: monkeypatch.setattr(cones, "cone_membership", cone_cramer_swapped)),
        ("inflection comparison inverted",
         lambda: monkeypatch.setattr(reduction, "spherical_inflections",
                                     inverted_inflections)),
    ]


def test_criterion_11_mutation_sanity(monkeypatch):
    assert _mini_quadruple_equivalence()
    assert _mini_reduction()
    assert _mini_arc_oracle()
    caught = []
    for name, apply in _mutations(monkeypatch):
        apply()
        detected = (not _mini_quadruple_equivalence()
                    or not _mini_arc_oracle()
                    or not _mini_reduction())
        monkeypatch.undo()
        assert detected, f"mutation not detected: {name}"
        caught.append(name)
    # sanity: suite is green again with mutations removed
    assert _mini_quadruple_equivalence() and _mini_arc_oracle()
    _report("11 [mutation sanity]",
            f"{len(caught)} single-sign mutations all detected")
