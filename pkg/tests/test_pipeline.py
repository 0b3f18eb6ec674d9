import pytest

from kplane import dcel
from kplane import pipeline as P
from kplane.constructions import nested_drawing
from kplane.dcel import HUB

D2 = list(range(10, 20))


def _hubs(d):
    return sum(1 for x in range(len(d.kind)) if d.kind[x] == HUB and d.ndart[x] >= 0)


def test_base_both_sides_potential_final():
    c = P.classify_faces(P.base_drawing())
    assert c.counts()[P.POTENTIAL_FINAL] == 2
    assert c.potential_final <= c.active


def test_nested_classification():
    d = nested_drawing(2)
    c = P.classify_faces(d, D2)
    (inner,) = c.potential_final
    assert set(D2) == {d.nlabel[d.org[z]] for z in c.walks[inner]}
    # the annulus is saturated by the doubly crossed matching
    assert c.counts()[P.IRRELEVANT] == len(c.walks) - 1


def test_enclosed_frontier_is_dead():
    with pytest.raises(P.DeadDrawing):
        P.classify_faces(nested_drawing(3, True), D2)


def test_potential_final_faces_agree_with_classification():
    d = nested_drawing(2)
    assert P.potential_final_faces(d, D2) == P.classify_faces(d, D2).potential_final


def test_remove_region_seals_annulus():
    d = nested_drawing(2)
    r, c = P.reduce_drawing(d, D2)
    assert dcel.validate(r, reduced=True) == []
    assert _hubs(r) == 1
    assert len(c.walks) < len(dcel.faces(d))
    assert r.labels[:10] == [f"v_{j}" for j in range(10)]


def test_remove_region_identity_without_irrelevant_faces():
    b = P.base_drawing()
    r = P.remove_region(b, P.classify_faces(b))
    assert dcel.to_json(r) == dcel.to_json(b)


def test_common_face_monotone_on_base():
    b = P.base_drawing()
    assert P.has_common_face(b, list(range(10)))
    d = nested_drawing(3, True)
    assert not P.has_common_face(d, D2)


def test_uncrossable_extension_of_base_is_nested():
    kids = P.extend_with_cycle(P.base_drawing(), True)
    keys = {P.process_child(c)[0] for c in kids}
    ref, _ = P.reduce_drawing(nested_drawing(2, True), D2)
    assert keys == {P.canonical_key(ref)}
    for c in kids:
        assert dcel.validate(c) == []


def test_no_active_face_no_extension():
    b = P.base_drawing()
    c = P.classify_faces(b)
    c.classes = [P.IRRELEVANT] * len(c.classes)
    assert P.extend_with_cycle(b, False, c) == []


def test_cleanup_preserves_uncrossable_extensions():
    full = P.compact(nested_drawing(2), D2)
    red, _ = P.reduce_drawing(nested_drawing(2), D2)

    def kids(d):
        return {P.process_child(c)[0] for c in P.extend_with_cycle(d, True)}

    assert kids(full) == kids(red)


def test_cleanup_preserves_children():
    full = P.compact(nested_drawing(2), D2)
    red, _ = P.reduce_drawing(nested_drawing(2), D2)
    a, b = P.expand(full), P.expand(red)
    assert set(a["children"]) == set(b["children"])
    assert a["final"] and b["final"]


def test_equal_classes_expand_equally():
    # the same class reached under an even rotation of the frontier
    red, _ = P.reduce_drawing(nested_drawing(2, True), D2)
    rot = P.compact(nested_drawing(2, True), [10 + (j + 2) % 10 for j in range(10)])
    rot, _ = P.reduce_drawing(rot, P.FRONTIER)
    assert P.canonical_key(red) == P.canonical_key(rot)
    ka = {P.process_child(c)[0] for c in P.extend_with_cycle(red, True)}
    kb = {P.process_child(c)[0] for c in P.extend_with_cycle(rot, True)}
    assert ka == kb


def test_run_pipeline_zero_iterations(tmp_path):
    rep = P.run_pipeline(max_iter=0, state_dir=tmp_path)
    assert rep.as_dict()["reduced_drawings"] == 1
    assert rep.final_hits == []


def test_dead_child_is_dropped():
    d = nested_drawing(3, True)
    d.labels[10:20] = [f"w_{j}" for j in range(10)]
    assert P.process_child(d) is None


def test_oriented_multiplicity_of_base():
    assert P.oriented_multiplicity(P.base_drawing()) == 1
