import numpy as np
import pytest

from indicatrix.cones import is_balanced, nonessential_vertices
from indicatrix.errors import InvalidInput, TooFewPoints
from indicatrix.harness import GeneratorConfig, gen_balanced_simple
from indicatrix.polygons import count_sign_changes, spherical_inflections
from indicatrix.reduction import deletion_delta, pick_reduction_vertex, reduce_to_base
from indicatrix.simplicity import delete_vertex, good_vertices, is_simple


def _polygons(seed, n_range, count):
    rng = np.random.default_rng(seed)
    cfg = GeneratorConfig(seed=seed, n_range=n_range)
    return [gen_balanced_simple(cfg, rng) for _ in range(count)]


def test_pick_vertex_is_eligible():
    for q in _polygons(70, (5, 9), 15):
        i = pick_reduction_vertex(q)
        assert is_simple(delete_vertex(q, i))
        rest = q.vertices[:i] + q.vertices[i + 1:]
        assert is_balanced(rest, check_preconditions=False)


def test_pick_vertex_needs_five(tetra):
    with pytest.raises(TooFewPoints):
        pick_reduction_vertex(tetra)


def test_good_and_nonessential_always_intersect():
    """|X| + |Y| - n >= (n-3) + 4 - n = 1 on every tested instance."""
    for q in _polygons(71, (5, 12), 25):
        good = set(good_vertices(q))
        nonessential = set(nonessential_vertices(q))
        assert len(good) >= 4
        assert len(nonessential) >= len(q) - 3
        assert good & nonessential


def test_deletion_delta_values():
    seen = set()
    for q in _polygons(72, (7, 12), 60):
        eligible = [i for i in range(len(q))
                    if is_simple(delete_vertex(q, i))
                    and is_balanced(q.vertices[:i] + q.vertices[i + 1:],
                                    check_preconditions=False)]
        for i in eligible:
            d = deletion_delta(q, i)
            assert d in (0, 2, 4)
            seen.add(d)
        if seen == {0, 2, 4}:
            break
    assert 0 in seen and 2 in seen, f"observed deltas {seen}"


def test_deletion_delta_four_occurs():
    """The double-zigzag configuration (delta = 4) appears in the wild."""
    for q in _polygons(2024, (7, 12), 400):
        for i in range(len(q)):
            if not is_simple(delete_vertex(q, i)):
                continue
            if not is_balanced(q.vertices[:i] + q.vertices[i + 1:],
                               check_preconditions=False):
                continue
            if deletion_delta(q, i) == 4:
                return
    pytest.fail("no delta-4 deletion found")


def test_deletion_delta_rejects_ineligible():
    for q in _polygons(73, (6, 10), 30):
        bad = [i for i in range(len(q)) if not is_simple(delete_vertex(q, i))]
        if bad:
            with pytest.raises(InvalidInput):
                deletion_delta(q, bad[0])
            return
    pytest.skip("no bad vertex found to exercise rejection")


def test_deletion_delta_locality():
    """Inflection status is decided by epsilon entries; deleting vertex i
    can only change edges whose epsilon window touches {i-2, ..., i+2}."""
    for q in _polygons(74, (8, 12), 20):
        n = len(q)
        i = pick_reduction_vertex(q)
        before = {e for e, _ in spherical_inflections(q)}
        after_poly = delete_vertex(q, i)
        # map old indices to new ones for edges not adjacent to i
        def old_to_new(e):
            return e if e < i else e - 1
        after = {e for e, _ in spherical_inflections(after_poly)}
        window = {(i + k) % n for k in (-2, -1, 0, 1, 2)}
        for e in before:
            if e in window or (e + 1) % n in window:
                continue
            assert old_to_new(e) in after
        for e_new in after:
            candidates = [e for e in range(n) if old_to_new(e) == e_new and e != i]
            if all(e in window or (e + 1) % n in window for e in candidates):
                continue
            assert any(e in before for e in candidates)


def test_reduce_tetra_trivial(tetra):
    trace = reduce_to_base(tetra)
    assert trace.steps == ()
    assert count_sign_changes(trace.terminal_epsilon) == 4


def test_reduce_traces_random():
    for q in _polygons(75, (5, 12), 30):
        trace = reduce_to_base(q)
        assert len(trace.steps) == len(q) - 4
        counts = trace.counts()
        assert counts[0] == len(spherical_inflections(q))
        assert all(a >= b for a, b in zip(counts, counts[1:]))
        assert all(s.delta in (0, 2, 4) for s in trace.steps)
        assert counts[-1] == 4
        assert count_sign_changes(trace.terminal_epsilon) == 4


def test_reduce_with_randomized_eligible_choice():
    """The invariants hold for any eligible choice, not only smallest-index."""
    rng = np.random.default_rng(76)
    for q in _polygons(76, (6, 11), 15):
        current = q
        count = len(spherical_inflections(current))
        while len(current) > 4:
            eligible = [i for i in range(len(current))
                        if is_simple(delete_vertex(current, i))
                        and is_balanced(current.vertices[:i] + current.vertices[i + 1:],
                                        check_preconditions=False)]
            assert eligible
            i = eligible[int(rng.integers(0, len(eligible)))]
            current = delete_vertex(current, i)
            new_count = len(spherical_inflections(current))
            assert count - new_count in (0, 2, 4)
            count = new_count
        assert count == 4


def test_main_theorem_on_generated_instances():
    for q in _polygons(77, (4, 14), 40):
        assert len(spherical_inflections(q)) >= 4
