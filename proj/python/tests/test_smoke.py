import math

import pytest

import exchkit


def test_tilted_model_probabilities():
    f = exchkit.build_model([[1, 2], [1, 2]], [1, 1, 1, 1])
    assert f.probs == pytest.approx([1 / 9, 2 / 9, 2 / 9, 4 / 9])
    assert exchkit.is_weighted_exchangeable(f, [[1, 2], [1, 2]])
    assert exchkit.marginal(f, 1).probs == pytest.approx([1 / 3, 2 / 3])


def test_permanent():
    assert exchkit.permanent([[1, 1], [1, 2]]) == pytest.approx(3)
    ones = [[1.0] * 8 for _ in range(8)]
    assert exchkit.permanent(ones) == pytest.approx(math.factorial(8))


def test_urn_laws_on_two_slots():
    lam = [[1, 1], [1, 2]]
    p = exchkit.urn_conditional(lam, [1, 1], 2)
    assert p.probs == pytest.approx([0, 2 / 3, 1 / 3, 0])
    q = exchkit.urn_weighted_iid(lam, [1, 1], 2)
    assert q.probs == pytest.approx([1 / 6, 1 / 3, 1 / 6, 1 / 3])
    assert exchkit.tv_distance(p, q) == pytest.approx(0.5)


def test_sampler_is_seeded():
    a = exchkit.sample_urn_conditional([[1, 1], [1, 2]], [1, 1], 7, 200)
    b = exchkit.sample_urn_conditional([[1, 1], [1, 2]], [1, 1], 7, 200)
    assert a == b
    assert all(sorted(x) == [0, 1] for x in a)


def test_decompose_uniform():
    p = exchkit.TupleDistribution(2, 2, [0.25] * 4)
    atoms = dict((tuple(u), w) for u, w in exchkit.decompose(p, [[1, 1], [1, 1]]))
    assert atoms == pytest.approx({(2, 0): 0.25, (1, 1): 0.5, (0, 2): 0.25})


def test_instance_round_trip_and_reports():
    inst = exchkit.random_instance(5, 2, 4, 0.5)
    again = exchkit.Instance.from_json(inst.to_json())
    assert again.p.probs == inst.p.probs
    rows = exchkit.verify(inst)
    assert [r["k"] for r in rows] == [1, 2, 3, 4]
    assert all(r["pass_finite"] for r in rows)
    assert exchkit.lp_project(inst, 2, 20) <= rows[1]["tv_exact"] + 1e-8


def test_bounds_and_errors():
    assert exchkit.bound_general(100, 3, [1, 1, 1]) == pytest.approx(0.03)
    assert exchkit.bound_finite(2, 2, 1, [1, 0.5]) == pytest.approx(4.0)
    assert exchkit.freedman_gap(5, 3)[2]
    with pytest.raises(exchkit.InputError):
        exchkit.TupleDistribution(1, 2, [0.7, 0.7])


def test_decay_curve():
    curve = exchkit.tv_decay("exchangeable", 2, [4, 5, 6])
    assert [n for n, _, _ in curve] == [4, 5, 6]
    assert all(tv <= b + 1e-10 for _, tv, b in curve)
