import json
import math

import pytest

import circlespd as cs

BOTH_EVEN = json.dumps(
    {
        "mode": "real",
        "explicit": [],
        "removed": [],
        "tail": {"kind": "periodic", "m": 2, "residues": [[0, 0]]},
    }
)
FULL = json.dumps(
    {
        "mode": "real",
        "explicit": [],
        "removed": [],
        "tail": {"kind": "periodic", "m": 1, "residues": [[0, 0]]},
    }
)


def test_decide_both_even():
    spec = cs.SupportSpec.from_json(BOTH_EVEN)
    verdict = cs.decide_spd(spec)
    assert verdict.outcome == "not_strictly_pd"
    witness = verdict.witness
    assert json.loads(witness.to_json()) == {"gens": [[2, 0], [0, 2]], "offset": [1, 0]}
    assert cs.verify_witness_disjoint(spec, witness)

    bounded = cs.decide_spd_bounded(spec, 12, 96)
    assert bounded.outcome == "not_strictly_pd"
    assert bounded.witness == witness


def test_decide_full_support():
    spec = cs.SupportSpec.from_json(FULL)
    assert cs.decide_spd(spec).outcome == "strictly_pd"
    pts = cs.intersection_sampler(spec, cs.Coset((0, 0), cs.canonicalize([(1, 0), (0, 1)])), 3)
    assert pts == [(0, 0), (0, 1), (1, 0)]


def test_lattice_algebra():
    s = cs.canonicalize([(2, 1), (0, 3)])
    assert s.index == 6
    assert s.contains((2, 1))
    assert not s.contains((1, 1))
    evens = cs.Coset((0, 0), cs.canonicalize([(2, 0), (0, 1)]))
    thirds = cs.Coset((0, 0), cs.canonicalize([(3, 0), (0, 1)]))
    meet = cs.coset_intersect(evens, thirds)
    assert meet is not None
    assert meet.group.generators == [(6, 0), (0, 1)]
    assert len(cs.decompose_to_square(s)) == 6


def test_juru_null_witness():
    cfg, weights = cs.juru_config(2, 2, 1, 0)
    kern = cs.ChebKernel({(0, 0): 1.0, (2, 0): 1.0, (0, 2): 1.0, (2, 2): 1.0})
    qf = cs.quadratic_form(kern, cfg, weights)
    assert abs(qf) < 1e-10 * sum(abs(w) for w in weights) ** 2 * cs.schoenberg_norm(kern)
    assert cs.check_null_equivalence(kern, cfg, weights, 1e-10).equivalent


def test_general_lattice_parity_witness():
    cfg, weights = cs.general_lattice_config(1, 1, 2, 0, 1)
    assert len(cfg) == 2
    assert weights == pytest.approx([-1.0, 1.0])


def test_gram_and_spectrum():
    kern = cs.ChebKernel({(k, l): 1.0 for k in range(3) for l in range(3)})
    cfg = cs.config_from_angles([(0.1, 0.2), (1.0, 2.0), (3.0, 4.0), (5.0, 0.5)])
    rows = cs.gram(kern, cfg)
    assert rows[0][0] == pytest.approx(cs.schoenberg_norm(kern))
    assert rows[1][2] == rows[2][1]
    assert cs.gram_min_eigen(kern, cfg) >= -1e-9
    assert cs.min_eigen([[1.0, -1.0], [-1.0, 1.0]]) == pytest.approx(0.0, abs=1e-12)


def test_eval_kr():
    kern = cs.ChebKernel({(0, 0): 1.0, (2, 0): 0.5})
    assert cs.eval_kr(kern, math.pi / 2, 0.3) == pytest.approx(0.5)


def test_fit_roundtrip():
    kern = cs.ChebKernel({(0, 0): 0.5, (1, 2): 0.75})
    fitted = cs.fit_coefficients(cs.sample_grid(kern, 4), 4)
    assert fitted.coeffs == pytest.approx({(0, 0): 0.5, (1, 2): 0.75})


def test_zero_structure():
    cfg = cs.config_from_rational(2, [(0, 0), (1, 1)])
    structure = cs.zero_structure(cfg, [1.0, -1.0])
    assert structure.zeros == [(0, 0), (1, 1)]
    assert len(structure.cosets) == 1
    assert json.loads(structure.cosets[0].to_json()) == {
        "gens": [[1, 1], [0, 2]],
        "offset": [0, 0],
    }
    assert cs.verify_not_all_zero(cfg, [1.0, -1.0])


def test_circle_criterion():
    outcome, witness = cs.decide_spd_circle_periodic(2, [0])
    assert outcome == "not_strictly_pd"
    assert witness == (1, 2)
    outcome, witness = cs.decide_spd_circle_periodic(1, [0])
    assert outcome == "strictly_pd"
    assert witness is None


def test_verify_spd_empirical_deterministic():
    kern = cs.ChebKernel({(k, l): 1.0 for k in range(4) for l in range(4)})
    a = cs.verify_spd_empirical(kern, n_points=8, trials=10, seed=11, min_separation=0.1)
    b = cs.verify_spd_empirical(kern, n_points=8, trials=10, seed=11, min_separation=0.1)
    assert a.trials == 10
    assert a.min_eigenvalue > 0.0
    assert a.min_eigenvalue == b.min_eigenvalue


def test_invalid_inputs_raise():
    with pytest.raises(ValueError):
        cs.ChebKernel({(0, 0): -1.0})
    with pytest.raises(ValueError):
        cs.config_from_angles([(0.0, 0.0), (0.0, 0.0)])
    with pytest.raises(ValueError):
        cs.SupportSpec.from_json(
            json.dumps(
                {
                    "mode": "real",
                    "explicit": [[0, 0]],
                    "removed": [[0, 0]],
                    "tail": {"kind": "none"},
                }
            )
        )
