import math

import numpy as np
import pytest

import probsynth


def test_octahedron_face_center():
    r = 1 / math.sqrt(3)
    # Pure state with Bloch vector (r, r, r).
    c = math.sqrt((1 + r) / 2)
    phi = np.array([c, complex(r, r) / (2 * c)])
    target = np.outer(phi, phi.conj())
    sol = probsynth.solve(target, probsynth.pauli_eigenstates())
    assert sol["value"] == pytest.approx((math.sqrt(3) - 1) / (2 * math.sqrt(3)), abs=1e-8)
    assert sol["gap"] <= 1e-9
    assert np.isclose(sol["p"].sum(), 1.0)


def test_trace_distance_orthogonal():
    assert probsynth.trace_distance(np.array([1, 0]), np.array([0, 1])) == pytest.approx(1.0)


def test_bad_tolerance_raises():
    with pytest.raises(probsynth.PreconditionViolation):
        probsynth.solve(np.eye(2) / 2, probsynth.pauli_eigenstates(), tol=1e-12)


def test_closed_forms():
    assert probsynth.werner_distance(2, 1.0) == pytest.approx(0.5)
    assert probsynth.isotropic_distance(3, 1.0) == pytest.approx(8 / 9 * (1 - 1 / 4))
    assert probsynth.ball_volume(2, 0.5) == pytest.approx(0.25)


def test_coherence_matches_simplex():
    alpha = np.array([0.8, 0.6])
    sol = probsynth.coherence_distance(alpha)
    value, p, spread = probsynth.simplex_formula(alpha, seed=1)
    assert sol["value"] == pytest.approx(value, abs=2e-6)


def test_reports_are_dicts():
    cover = probsynth.meridian_covering(0.2)
    assert cover["verified"]
    report = probsynth.bounds_report(2, 0.25)
    assert report["l"] == pytest.approx(2.0)


def test_small_library_synthesis(tmp_path):
    lib = probsynth.SynthesisLibrary.enumerate(6, 40)
    assert len(lib) > 100
    path = tmp_path / "lib.jsonl"
    lib.save_jsonl(str(path))
    again = probsynth.SynthesisLibrary.load_jsonl(str(path))
    assert len(again) == len(lib)
    ens = probsynth.probabilistic_synthesize(lib, 1.0, 0.3)
    assert ens["achieved_error"] <= 0.09 + 1e-6
    assert sum(item["probability"] for item in ens["items"]) == pytest.approx(1.0)
