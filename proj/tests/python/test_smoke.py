import math

import pytest

import hashbound as hb


def test_psi_matches_closed_form_at_uniform():
    b, j = 7, 5
    u = [1.0 / b] * b
    assert hb.psi(u, u, j) == pytest.approx(hb.psi_uniform(b, j), rel=1e-12)
    assert hb.psi(u, u, j) == pytest.approx(hb.psi_naive(u, u, j), rel=1e-12)


def test_rejects_non_distributions():
    with pytest.raises(ValueError):
        hb.psi([0.5, 0.6, 0.0], [1 / 3] * 3, 2)


def test_shortcut_bound():
    r = hb.bound(7, 6)
    assert r["path"] == "uniform-shortcut"
    assert r["rate_rounded"] == "0.19897"


def test_partition_bound_at_preset():
    p = hb.preset(7, 7)
    r = hb.bound(7, 7, kind=p["kind"], eps=p["eps"])
    assert r["path"] == "partition"
    assert hb.format_up(r["rate"]) == "0.04090"
    assert abs(r["partition_M"] - 0.0861594) < 1e-5


def test_classical():
    assert hb.dvj(5, 4) == pytest.approx(0.5730286, abs=1e-6)
    value, j = hb.korner_marton(5, 5)
    assert hb.round_up(value, 5) == pytest.approx(0.192)
    assert math.isfinite(hb.fredman_komlos(6, 6))


def test_combine_and_lemmas():
    c = hb.combine(0.085679, 0.092593, 0.000006, 0.000107, 7)
    assert abs(c["M"] - 0.0861594) < 1e-6
    assert hb.check_lemma("L6", 6, 4, samples=2000)["violations"] == 0


def test_sampling_stays_below_engine():
    m = hb.compute_mi("max", 0.09, "M1", 7, 5)
    s = hb.sample_mi("max", 0.09, "M1", 7, 5, samples=5000, seed=3)
    assert s["best_value"] <= m["value"] + 1e-9


def test_codes():
    r = hb.max_code(3, 3, 2)
    assert r["complete"] and r["size"] == 4
    assert hb.is_hash_code(r["words"], 3, 3)
    assert not hb.is_hash_code([[1, 1], [1, 2], [2, 1]], 3, 3)
