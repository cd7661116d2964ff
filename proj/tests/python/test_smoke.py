import math
from fractions import Fraction

import pytest

import permlab


def test_sample_is_reproducible():
    a = permlab.sample(6, reps=5, seed=42)
    assert a == permlab.sample(6, reps=5, seed=42)
    for p in a:
        assert sorted(p) == list(range(1, 7))
    assert permlab.sample(6, reps=5, seed=43) != a


def test_configured_models():
    phi = {"phi": {"table": [[1, 1], [2, 3]], "default": "identity"}}
    assert len(permlab.sample(5, reps=3, seed=1, model="phi", phi=phi)) == 3
    assert permlab.sample(5, reps=3, seed=1, model="phi", phi="identity") == permlab.sample(5, reps=3, seed=1)
    chain = {"states": [1, 2], "transitions": [[0, 1], [0, 1]]}
    assert len(permlab.sample(4, seed=1, model="markov", chain=chain)[0]) == 4


def test_exact_probabilities():
    assert permlab.pmf_exact([1, 2, 3, 4]) == Fraction(2, 15)
    assert permlab.pmf([1, 2, 3, 4]) == pytest.approx(2 / 15, abs=1e-15)
    assert permlab.pmf_exact([4, 1, 2, 3], model="unfair") == Fraction(24, 1400)
    law = permlab.enumerate_law(4)
    assert len(law) == 24
    assert math.fsum(p for _, p in law) == pytest.approx(1.0, abs=1e-12)
    for sigma, p in law:
        inv = [0] * 4
        for i, v in enumerate(sigma):
            inv[v - 1] = i + 1
        assert permlab.pmf(inv, model="unfair") == pytest.approx(p, abs=1e-15)
    with pytest.raises(permlab.PermlabError):
        permlab.enumerate_law(9)


def test_statistics():
    assert permlab.statistic("inv", [4, 3, 1, 2]) == 5
    assert permlab.statistic("desc:2", [4, 3, 1, 2]) == 4
    assert permlab.statistic("las", [1, 2, 3]) == 1
    with pytest.raises(permlab.PermlabError):
        permlab.statistic("inv", [1, 1])


def test_moments_and_bounds():
    assert permlab.var_descents(3) == pytest.approx(74 / 225, abs=1e-12)
    c = permlab.inversion_constants()
    assert c["mean_coeff"] == pytest.approx((1 - math.log(2)) / 2, abs=1e-15)
    b = permlab.tv_event_lower_bound(10**6)
    assert b["diff"] == pytest.approx(0.9285, abs=1e-3)
    assert permlab.tv_to_uniform(3) == pytest.approx(0.25, abs=1e-12)
    assert permlab.moment_ratio_descents(10**4) == pytest.approx(1.0, abs=1e-3)


def test_monte_carlo():
    e = permlab.estimate("inv", 4, 20000, seed=3, model="uniform", threads=2)
    assert abs(e["mean"] - 3.0) < 4 * e["std_error"]
    r = permlab.clt("inv", 200, 500, seed=7)
    assert len(r["values"]) == 500
    assert 0 < r["ks"] < 0.2


def test_size_bias():
    d = permlab.couple(10, seed=1)
    assert d["w_s"] >= 1 and abs(d["w_s"] - d["w"]) <= 20
    c = permlab.verify_size_bias_identity(5, "square", reps=20000, seed=2)
    assert abs(c["lhs"] - c["rhs"]) <= 4 * c["pooled_se"]
    s = permlab.stein_bound(20, 500, 2, seed=3)
    assert s["bound"] > 0
