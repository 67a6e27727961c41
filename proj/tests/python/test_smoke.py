import math

import pytest

import asep_lab as al


def test_marginal_orientation():
    assert al.marginal(3, 1, 0.5) == pytest.approx(8 / 9)
    assert al.marginal(0, 1, 0.5) == pytest.approx(0.5)


def test_laws_normalize():
    assert sum(al.prob_N(n, 0.5) for n in range(-40, 41)) == pytest.approx(1, abs=1e-10)
    assert sum(al.prob_left_particles(0, k, 0.9, 1.0) for k in range(200)) == pytest.approx(1, abs=1e-12)
    law = al.brute_force_window_law(-3, 2, 0.5)
    for k, p in enumerate(law):
        assert al.prob_window_particles(-3, 2, k, 0.5) == pytest.approx(p, rel=1e-12)


def test_single_second_class_value():
    assert al.prob_second_class_at(0, 0.5) == pytest.approx(1 / 6)
    assert al.prob_positions([0], 0.5) == pytest.approx(1 / 6)


def test_exact_polynomials_are_python_ints():
    coeffs = al.qbinomial_poly(4, 2)
    assert coeffs == [1, 1, 2, 1, 1]
    assert al.count_bounded(4, 2, 2) == 1
    assert len(al.enumerate_partitions(30)) == 5604


def test_durfee_example():
    assert al.durfee_decompose([8, 8, 7, 3, 2, 1, 1], -3) == (5, [6, 6, 5, 1], [1, 1])


def test_identities():
    assert al.verify_euler(0.5, 1.0)["pass"]
    assert al.verify_jacobi(0.9, 0.5, 1e-8)["pass"]
    assert al.verify_qbinomial_exact(8)


def test_sampler_is_seeded():
    a = al.sample_pi(2, 0.5, seed=3, n=50)
    assert a == al.sample_pi(2, 0.5, seed=3, n=50)
    assert all(0 <= x[0] < x[1] for x in a)


def test_simulation_summary():
    r = al.simulate(d=1, T=5, replicas=10, seed=4)
    assert r["conservation_violations"] == 0
    assert len(r["sites"]) == 51
    assert math.isclose(sum(m for m, _ in r["second_class_at"]), 1.0, rel_tol=1e-12)


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        al.marginal(0, 1, 1.5)
    with pytest.raises(ValueError):
        al.sample_blocking(-3, 3, 0.5)


def test_cli_roundtrip():
    code, out, err = al.run_cli(["verify", "--identity", "euler", "--q", "0.5"])
    assert code == 0 and "euler" in out
    code, _, err = al.run_cli(["verify", "--identity", "euler"])
    assert code == 2 and "--q" in err
