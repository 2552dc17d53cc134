"""Randomized certification: generators, independent oracles, claim suite.

Every claim pairs a seeded instance generator with a self-contained checker
that consumes the *serialized* instance, so any violation written to disk
replays from the file alone.  The arc-intersection oracle is metric
(plane-line intersection plus angle interpolation) and shares no sign
shortcut with the determinant criterion it cross-checks.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import predicates as pr
from .applications import mobius_check, tennis_ball_check
from .cones import (
    RECONSTRUCTION_TOL,
    caratheodory_cone,
    closed_hemisphere_witness,
    find_balanced_quadruple,
    four_point_characterization,
    cone_membership,
    is_balanced,
    nonessential_vertices,
)
from .errors import (
    DegenerateGeometry,
    GenerationExhausted,
    GeometryError,
    ParallelPlanes,
    TheoremViolation,
)
from .lifting import CLOSURE_TOL, ROUNDTRIP_TOL, lift, lift_weights
from .polygons import (
    SpacePolygon,
    SphericalPolygon,
    count_sign_changes,
    epsilon_sequence,
    flattenings,
    is_generic,
    spherical_inflections,
    tangent_indicatrix,
)
from .reduction import reduce_to_base
from . import simplicity
from .simplicity import (
    AREA_TOL,
    good_vertices,
    is_simple,
    region_dual_edges,
    triangulate_regions,
)

DEFAULT_TRIALS = 100


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    n_range: tuple[int, int] = (4, 12)
    attempts: int = 5000
    mode: str = "spherical_simple_balanced"
    trials: int = DEFAULT_TRIALS

    def __post_init__(self):
        if self.n_range[0] < 4:
            raise ValueError("n_range minimum must be >= 4")
        if self.attempts < 1:
            raise ValueError("attempts must be >= 1")


@dataclass
class Finding:
    claim: str
    seed: int
    instance: dict
    observed: object
    required: object
    message: str = ""

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "seed": self.seed,
            "instance": self.instance,
            "observed": self.observed,
            "required": self.required,
            "message": self.message,
        }


@dataclass
class ClaimStats:
    trials: int = 0
    passes: int = 0

    @property
    def failures(self) -> int:
        return self.trials - self.passes


@dataclass
class CertifyReport:
    claims: dict[str, ClaimStats] = field(default_factory=dict)
    findings: list[Finding] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.findings

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "claims": {
                k: {"trials": v.trials, "passes": v.passes, "failures": v.failures}
                for k, v in self.claims.items()
            },
            "findings": [f.to_json() for f in self.findings],
        }


# ---------------------------------------------------------------- sampling

def _unit_points(rng: np.random.Generator, n: int) -> list[tuple[float, float, float]]:
    g = rng.normal(size=(n, 3))
    norms = np.linalg.norm(g, axis=1)
    while (norms < 1e-8).any():
        bad = norms < 1e-8
        g[bad] = rng.normal(size=(int(bad.sum()), 3))
        norms = np.linalg.norm(g, axis=1)
    g /= norms[:, None]
    return [tuple(row) for row in g]


def _general_position(points) -> bool:
    for i, j, k in itertools.combinations(range(len(points)), 3):
        if pr.orientation(points[i], points[j], points[k]) is pr.Sign.ZERO:
            return False
    return True


def _nearest_neighbor_order(points) -> list[int]:
    m = np.asarray([pr.to_float(p) for p in points])
    order = [0]
    left = set(range(1, len(points)))
    while left:
        last = m[order[-1]]
        nxt = max(left, key=lambda i: float(m[i] @ last))
        order.append(nxt)
        left.remove(nxt)
    return order


def _axis_sorted_order(points, rng: np.random.Generator) -> list[int]:
    m = np.asarray([pr.to_float(p) for p in points])
    axis = rng.normal(size=3)
    axis /= np.linalg.norm(axis)
    pick = np.zeros(3)
    pick[int(np.argmin(np.abs(axis)))] = 1.0
    e1 = np.cross(axis, pick)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(axis, e1)
    return list(np.argsort(np.arctan2(m @ e2, m @ e1)))


def _balanced_point_set(rng, n, attempts):
    for _ in range(attempts):
        pts = _unit_points(rng, n)
        if closed_hemisphere_witness(pts) is not None:
            continue
        if not _general_position(pts):
            continue
        return pts
    raise GenerationExhausted(f"no balanced general-position set of {n} points found")


def _simple_balanced_polygon(rng, n, attempts):
    for _ in range(attempts):
        pts = _balanced_point_set(rng, n, attempts)
        for order in (_nearest_neighbor_order(pts), _axis_sorted_order(pts, rng)):
            arranged = [pts[i] for i in order]
            try:
                poly = SphericalPolygon(arranged)
                if is_simple(poly):
                    return poly
            except GeometryError:
                continue
    raise GenerationExhausted(f"no simple balanced polygon of {n} vertices found")


def _pick_n(rng, config: GeneratorConfig) -> int:
    lo, hi = config.n_range
    return int(rng.integers(lo, hi + 1))


def gen_balanced_simple(config: GeneratorConfig,
                        rng: np.random.Generator | None = None) -> SphericalPolygon:
    """Rejection-sample a simple balanced general-position polygon."""
    rng = rng if rng is not None else np.random.default_rng(config.seed)
    return _simple_balanced_polygon(rng, _pick_n(rng, config), config.attempts)


def gen_segre_space_polygon(config: GeneratorConfig,
                            rng: np.random.Generator | None = None) -> SpacePolygon:
    """Lift of a simple balanced polygon from a random base; always generic."""
    rng = rng if rng is not None else np.random.default_rng(config.seed)
    for _ in range(config.attempts):
        q = _simple_balanced_polygon(rng, _pick_n(rng, config), config.attempts)
        base = tuple(rng.normal(size=3))
        p = lift(q, base)
        if is_generic(p):
            return p
    raise GenerationExhausted("no generic lifted polygon found")


def _centrally_symmetric_polygon(rng, m, attempts, max_lat=0.45):
    for _ in range(attempts):
        half = []
        for k in range(m):
            phi = (k + 0.7 * (rng.random() - 0.5)) * math.pi / m
            theta = (2.0 * rng.random() - 1.0) * max_lat
            half.append((math.cos(phi) * math.cos(theta),
                         math.sin(phi) * math.cos(theta),
                         math.sin(theta)))
        verts = half + [(-x, -y, -z) for x, y, z in half]
        try:
            poly = SphericalPolygon(verts)
            epsilon_sequence(poly)  # consecutive triples must be decisive
            if is_simple(poly, on_degenerate="metric"):
                return poly
        except GeometryError:
            continue
    raise GenerationExhausted(f"no simple centrally symmetric polygon with {2 * m} vertices")


def _planar_great_circle_polygon(rng, n):
    axis = rng.normal(size=3)
    axis /= np.linalg.norm(axis)
    pick = np.zeros(3)
    pick[int(np.argmin(np.abs(axis)))] = 1.0
    e1 = np.cross(axis, pick)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(axis, e1)
    jitter = 0.6 * (rng.random(n) - 0.5) * (2.0 * math.pi / n)
    angles = np.sort(np.arange(n) * 2.0 * math.pi / n + jitter)
    verts = [tuple(math.cos(a) * e1 + math.sin(a) * e2) for a in angles]
    return SphericalPolygon(verts)


def _rational_unit_point(rng, k=9) -> tuple[Fraction, Fraction, Fraction]:
    a = Fraction(int(rng.integers(-k, k + 1)), int(rng.integers(1, k + 1)))
    b = Fraction(int(rng.integers(-k, k + 1)), int(rng.integers(1, k + 1)))
    d = 1 + a * a + b * b
    return (2 * a / d, 2 * b / d, (a * a + b * b - 1) / d)


def gen_rational_balanced(rng, n, attempts=2000) -> SphericalPolygon:
    """Balanced general-position polygon with exactly-unit rational vertices."""
    for _ in range(attempts):
        pts = [_rational_unit_point(rng) for _ in range(n)]
        if len({p for p in pts}) < n:
            continue
        if not _general_position(pts):
            continue
        if closed_hemisphere_witness(pts) is not None:
            continue
        order = _nearest_neighbor_order(pts)
        try:
            return SphericalPolygon([pts[i] for i in order])
        except GeometryError:
            continue
    raise GenerationExhausted(f"no rational balanced polygon of {n} points found")


def _near_degenerate_polygon(rng, n, attempts):
    """Simple balanced polygon with one triple pushed near collinearity."""
    poly = _simple_balanced_polygon(rng, n, attempts)
    pts = [np.asarray(pr.to_float(v)) for v in poly.vertices]
    k = int(rng.integers(1, n - 1))
    a, b = pts[k - 1], pts[(k + 1) % n]
    nrm = np.cross(a, b)
    nrm /= np.linalg.norm(nrm)
    u = pts[k]
    in_plane = u - (u @ nrm) * nrm
    in_plane /= np.linalg.norm(in_plane)
    # Detuned offset spanning both sides of the degeneracy band.
    gamma = pr.DEGENERACY_TOL * 10.0 ** rng.uniform(-2.0, 2.0)
    moved = in_plane + gamma * nrm
    moved /= np.linalg.norm(moved)
    pts[k] = moved
    return SphericalPolygon([tuple(p) for p in pts])


def generate(config: GeneratorConfig):
    """Mode-dispatched instance generation (deterministic per seed)."""
    rng = np.random.default_rng(config.seed)
    if config.mode == "spherical_simple_balanced":
        return gen_balanced_simple(config, rng)
    if config.mode == "space_generic_segre":
        return gen_segre_space_polygon(config, rng)
    if config.mode == "centrally_symmetric":
        m = max(3, _pick_n(rng, config) // 2)
        return _centrally_symmetric_polygon(rng, m, config.attempts)
    if config.mode == "adversarial_near_degenerate":
        return _near_degenerate_polygon(rng, max(5, _pick_n(rng, config)), config.attempts)
    raise ValueError(f"unknown generation mode {config.mode!r}")


# ------------------------------------------------------------------ oracle

def _on_minor_arc(p, a, b, slack=1e-9) -> bool:
    return pr.vec_angle(a, p) + pr.vec_angle(p, b) <= pr.vec_angle(a, b) + slack


def oracle_arc_intersection(a1, a2, b1, b2) -> bool:
    """Metric minor-arc intersection test: intersect the two great-circle
    planes and check both candidate directions against angle bounds."""
    n1 = pr.cross(pr.to_float(a1), pr.to_float(a2))
    n2 = pr.cross(pr.to_float(b1), pr.to_float(b2))
    d = pr.cross(n1, n2)
    if pr.norm(d) <= 1e-12 * pr.norm(n1) * pr.norm(n2):
        raise ParallelPlanes("arcs lie on the same great circle")
    d = pr.normalize(d)
    for cand in (d, pr.neg(d)):
        if _on_minor_arc(cand, a1, a2) and _on_minor_arc(cand, b1, b2):
            return True
    return False


# ------------------------------------------------------------------ claims

def _ser_points(points) -> list:
    return [pr.format_point(p) for p in points]


def _parse_points(raw) -> tuple:
    return tuple(pr.parse_point(p) for p in raw)


def _polygon_instance(poly) -> dict:
    kind = "space" if isinstance(poly, SpacePolygon) else "spherical"
    return {"kind": kind, "vertices": _ser_points(poly.vertices)}


def _gen_four_point(rng, config):
    while True:
        pts = _unit_points(rng, 4)
        if _general_position(pts):
            return {"points": _ser_points(pts)}


def _check_four_point(instance):
    pts = _parse_points(instance["points"])
    balanced = closed_hemisphere_witness(pts) is None
    crit = four_point_characterization(*pts)
    cone = cone_membership(pr.neg(pts[0]), pts[1:]) is not None
    poly = SphericalPolygon(pts)
    changes = count_sign_changes(epsilon_sequence(poly))
    has_four = changes == 4
    simple = is_simple(poly)
    agree = balanced == crit == cone == has_four and (not balanced or simple)
    observed = {"balanced": balanced, "criterion": crit, "cone": cone,
                "sign_changes": changes, "simple": simple}
    return agree, observed, "balanced = criterion = cone = (4 sign changes); balanced implies simple"


def _gen_cone_span(rng, config):
    lo, hi = config.n_range
    n = int(rng.integers(max(4, lo), hi + 1))
    pts = _balanced_point_set(rng, n, config.attempts)
    target = _unit_points(rng, 1)[0]
    return {"points": _ser_points(pts), "target": pr.format_point(target)}


def _check_cone_span(instance):
    pts = _parse_points(instance["points"])
    target = pr.parse_point(instance["target"])
    cert = caratheodory_cone(target, pts)
    residual = cert.residual(pts)
    ok = (len(cert.indices) <= 3 and all(c > 0 for c in cert.coefficients)
          and residual <= RECONSTRUCTION_TOL)
    observed = {"support": list(cert.indices), "residual": residual}
    return ok, observed, f"<=3 positive coefficients, residual <= {RECONSTRUCTION_TOL}"


def _gen_nonessential(rng, config):
    lo, hi = config.n_range
    n = int(rng.integers(max(5, lo), max(5, hi) + 1))
    pts = _balanced_point_set(rng, n, config.attempts)
    return {"points": _ser_points(pts)}


def _check_nonessential(instance):
    pts = _parse_points(instance["points"])
    found = nonessential_vertices(pts)
    need = len(pts) - 3
    return len(found) >= need, {"nonessential": found}, f"at least {need} nonessential vertices"


def _gen_simple_balanced(rng, config):
    return _polygon_instance(_simple_balanced_polygon(rng, _pick_n(rng, config), config.attempts))


def _tree_with_leaves(nodes: list[int], edges: list[tuple[int, int]]) -> bool:
    if len(edges) != len(nodes) - 1:
        return False
    adj = {v: [] for v in nodes}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != len(nodes):
        return False
    if len(nodes) >= 2:
        leaves = sum(1 for v in nodes if len(adj[v]) == 1)
        return leaves >= 2
    return True


def _check_good_vertices(instance):
    poly = SphericalPolygon(_parse_points(instance["vertices"]))
    good = good_vertices(poly)
    tri = triangulate_regions(poly)
    duals = region_dual_edges(tri)
    trees_ok = True
    for tag in (1, 2):
        nodes = [i for i, r in enumerate(tri.region) if r == tag]
        trees_ok = trees_ok and _tree_with_leaves(nodes, duals[tag])
    area_ok = abs(tri.area_sum() - 4.0 * math.pi) <= AREA_TOL
    ok = len(good) >= 4 and trees_ok and area_ok
    observed = {"good": good, "dual_trees": trees_ok, "area_sum": tri.area_sum()}
    return ok, observed, ">=4 good vertices; dual graphs are trees with >=2 leaves; areas tile the sphere"


def _check_main_theorem(instance):
    poly = SphericalPolygon(_parse_points(instance["vertices"]))
    changes = count_sign_changes(epsilon_sequence(poly))
    inflections = len(spherical_inflections(poly))
    ok = changes >= 4 and changes % 2 == 0 and inflections == changes
    return ok, {"sign_changes": changes, "inflections": inflections}, \
        "even sign-change count >= 4, equal to inflection count"


def _check_reduction(instance):
    poly = SphericalPolygon(_parse_points(instance["vertices"]))
    trace = reduce_to_base(poly)
    counts = trace.counts()
    deltas = [s.delta for s in trace.steps]
    ok = (all(d in (0, 2, 4) for d in deltas)
          and all(a >= b for a, b in zip(counts, counts[1:]))
          and count_sign_changes(trace.terminal_epsilon) == 4)
    return ok, {"counts": counts, "deltas": deltas}, \
        "monotone counts, step deltas in {0,2,4}, terminal count 4"


def _gen_liftable(rng, config):
    lo, hi = config.n_range
    n = int(rng.integers(max(4, lo), hi + 1))
    pts = _balanced_point_set(rng, n, config.attempts)
    order = _nearest_neighbor_order(pts)
    return {"kind": "spherical", "vertices": _ser_points([pts[i] for i in order])}


def _check_lifting(instance):
    poly = SphericalPolygon(_parse_points(instance["vertices"]))
    weights = lift_weights(poly)
    residual = weights.closure_residual(poly)
    bound = CLOSURE_TOL * float(weights.weight_sum())
    polygon = lift(poly, base=(0.25, -0.125, 0.5))
    back = tangent_indicatrix(polygon)
    worst = max(pr.vec_angle(u, w) for u, w in zip(poly.vertices, back.vertices))
    ok = all(l > 0 for l in weights.lambdas) and residual <= bound and worst <= ROUNDTRIP_TOL
    return ok, {"residual": residual, "roundtrip": worst}, \
        f"positive weights, residual <= {CLOSURE_TOL}*sum, roundtrip <= {ROUNDTRIP_TOL}"


def _gen_segre(rng, config):
    return _polygon_instance(gen_segre_space_polygon(config, rng))


def _check_segre(instance):
    poly = SpacePolygon(_parse_points(instance["vertices"]))
    flats = flattenings(poly)
    q = tangent_indicatrix(poly)
    infl = spherical_inflections(q)
    ok = (is_generic(poly) and is_simple(q) and len(flats) >= 4
          and [f[0] for f in flats] == [e[0] for e in infl])
    return ok, {"flattenings": len(flats), "inflections": len(infl)}, \
        "generic, simple indicatrix, >=4 flattenings matching inflections index-for-index"


def _gen_arcs(rng, config):
    while True:
        pts = _unit_points(rng, 4)
        if not _general_position(pts):
            continue
        try:
            simplicity.minor_arcs_cross(*pts)
        except DegenerateGeometry:
            continue
        return {"arcs": _ser_points(pts)}


def _check_arcs(instance):
    a1, a2, b1, b2 = _parse_points(instance["arcs"])
    results = {}
    ok = True
    for label, (c1, c2) in (("direct", (b1, b2)), ("antipodal", (pr.neg(b1), pr.neg(b2)))):
        try:
            pred = simplicity.minor_arcs_cross(a1, a2, c1, c2)
            orac = oracle_arc_intersection(a1, a2, c1, c2)
        except DegenerateGeometry:
            continue
        results[label] = {"criterion": pred, "oracle": orac}
        ok = ok and pred == orac
    return ok, results, "determinant criterion equals parametric oracle (incl. antipodal arcs)"


def _gen_hemisphere(rng, config):
    lo, hi = config.n_range
    n = int(rng.integers(max(4, lo), hi + 1))
    while True:
        pts = _unit_points(rng, n)
        if _general_position(pts):
            return {"points": _ser_points(pts)}


def _check_hemisphere(instance):
    pts = _parse_points(instance["points"])
    by_witness = closed_hemisphere_witness(pts) is None
    by_quadruple = find_balanced_quadruple(pts) is not None
    return by_witness == by_quadruple, \
        {"witness_route": by_witness, "quadruple_route": by_quadruple}, \
        "candidate-enumeration decision equals balanced-quadruple decision"


def _gen_tennis(rng, config):
    if rng.random() < 0.5:
        m = int(rng.integers(3, 11))
        poly = _centrally_symmetric_polygon(rng, m, config.attempts)
    else:
        n = int(rng.integers(4, 13))
        poly = _planar_great_circle_polygon(rng, n)
    return _polygon_instance(poly)


def _check_tennis(instance):
    poly = SphericalPolygon(_parse_points(instance["vertices"]))
    report = tennis_ball_check(poly)
    consistency = True
    gb_delta = 0.0
    if not report.planar:
        tri = triangulate_regions(poly)
        gb_delta = abs(report.areas.area1 - tri.region_area(1))
        consistency = gb_delta <= 1e-8
    ok = report.equal_area and report.theorem_holds and consistency
    return ok, {"equal_area": report.equal_area, "inflections": report.inflections,
                "gb_vs_triangulation": gb_delta}, \
        "equal areas imply >=4 inflections; area routes agree within 1e-8"


def _gen_mobius(rng, config):
    m = int(rng.integers(3, 11))
    return _polygon_instance(_centrally_symmetric_polygon(rng, m, config.attempts))


def _check_mobius(instance):
    poly = SphericalPolygon(_parse_points(instance["vertices"]))
    report = mobius_check(poly)
    covered = {e for pair in report.paired for e in pair}
    infl = {i for i, _ in spherical_inflections(poly)} if not report.planar else set(range(len(poly)))
    ok = report.inflections >= 6 and report.theorem_holds and covered == infl
    return ok, {"inflections": report.inflections, "pairs": list(report.paired)}, \
        ">=6 inflections, antipodal pairing covers every inflection edge"


def _gen_adversarial(rng, config):
    n = max(5, _pick_n(rng, config))
    return _polygon_instance(_near_degenerate_polygon(rng, n, config.attempts))


def _to_exact(points):
    return tuple(tuple(Fraction(c) for c in p) for p in points)


def _check_adversarial(instance):
    """Near-degenerate inputs must raise, never silently disagree with the
    exact-arithmetic answer on the same coordinates."""
    pts = _parse_points(instance["vertices"])
    exact_pts = _to_exact(pts)
    poly = SphericalPolygon(pts)
    exact_poly = SphericalPolygon(exact_pts)
    observed = {}
    ok = True
    try:
        float_eps = [int(s) for s in epsilon_sequence(poly).signs]
        exact_eps = [int(s) for s in epsilon_sequence(exact_poly).signs]
        observed["epsilon"] = "agrees" if float_eps == exact_eps else "DISAGREES"
        ok = ok and float_eps == exact_eps
    except DegenerateGeometry:
        observed["epsilon"] = "raised"
    try:
        fs = is_simple(poly)
        es = is_simple(exact_poly)
        observed["simple"] = "agrees" if fs == es else "DISAGREES"
        ok = ok and fs == es
    except DegenerateGeometry:
        observed["simple"] = "raised"
    try:
        fb = is_balanced(poly, check_preconditions=False)
        eb = is_balanced(exact_poly, check_preconditions=False)
        observed["balanced"] = "agrees" if fb == eb else "DISAGREES"
        ok = ok and fb == eb
    except DegenerateGeometry:
        observed["balanced"] = "raised"
    return ok, observed, "float path raises or agrees with exact arithmetic"


CLAIMS: dict[str, tuple] = {
    "four-point-equivalence": (_gen_four_point, _check_four_point),
    "cone-spans-space": (_gen_cone_span, _check_cone_span),
    "nonessential-bound": (_gen_nonessential, _check_nonessential),
    "good-vertex-bound": (_gen_simple_balanced, _check_good_vertices),
    "main-theorem": (_gen_simple_balanced, _check_main_theorem),
    "reduction-monotone": (_gen_simple_balanced, _check_reduction),
    "lifting-roundtrip": (_gen_liftable, _check_lifting),
    "segre-transfer": (_gen_segre, _check_segre),
    "arc-predicate-oracle": (_gen_arcs, _check_arcs),
    "hemisphere-dual-route": (_gen_hemisphere, _check_hemisphere),
    "tennis-ball": (_gen_tennis, _check_tennis),
    "mobius-pairing": (_gen_mobius, _check_mobius),
    "degeneracy-honesty": (_gen_adversarial, _check_adversarial),
}


def replay_finding(finding: dict) -> bool:
    """Re-run a claim on a serialized instance; True when it still violates."""
    _, check = CLAIMS[finding["claim"]]
    ok, _, _ = check(finding["instance"])
    return not ok


def certify_all(config: GeneratorConfig,
                findings_dir: str | Path | None = None,
                claims: list[str] | None = None) -> CertifyReport:
    """Run every claim suite over seeded instances; violations become data."""
    report = CertifyReport()
    selected = claims or list(CLAIMS)
    for idx, name in enumerate(selected):
        gen, check = CLAIMS[name]
        stats = ClaimStats()
        for t in range(config.trials):
            ss = np.random.SeedSequence(entropy=config.seed, spawn_key=(idx, t))
            trial_seed = int(ss.generate_state(1, np.uint64)[0])
            rng = np.random.default_rng(ss)
            instance = gen(rng, config)
            try:
                ok, observed, required = check(instance)
                message = ""
            except TheoremViolation as exc:
                ok, observed, required = False, exc.payload, "no theorem violation"
                message = str(exc)
            stats.trials += 1
            if ok:
                stats.passes += 1
            else:
                report.findings.append(Finding(name, trial_seed, instance,
                                               observed, required, message))
        report.claims[name] = stats
    if findings_dir is not None:
        write_findings(report, findings_dir)
    return report


def write_findings(report: CertifyReport, findings_dir: str | Path) -> list[Path]:
    root = Path(findings_dir)
    written = []
    for f in report.findings:
        d = root / f.claim
        d.mkdir(parents=True, exist_ok=True)
        path = d / f"{f.seed}.json"
        path.write_text(json.dumps(f.to_json(), indent=2, default=str))
        written.append(path)
    return written
