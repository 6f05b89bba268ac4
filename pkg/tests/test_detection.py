import numpy as np
import pytest

from circwit.detection import (
    alpha_grid,
    certify_indecomposable,
    circulant_probe,
    detect_horodecki,
    golden_section,
    pair,
    pair_form,
    reports_to_csv,
    search_curve,
    sweep_alpha,
)
from circwit.errors import DimensionError, ParameterError
from circwit.io import dumps
from circwit.states import HorodeckiParams, horodecki_state, is_ppt, max_entangled
from circwit.witness import Decomposability, decomposability_flag, params_on_curve, raw


def horodecki_pair_oracle(p, alpha):
    if p.n == 3:
        a, b, c = p.values
        return (2 * a - 4 + alpha * b + (5 - alpha) * c) / 7
    a, b, c, d = p.values
    return (3 * a - 9 + alpha * b + 3 * c + (10 - alpha) * d) / 16


def test_pair_maximally_entangled():
    for x in (0.6, 0.9):
        p = params_on_curve("class1", x)
        assert pair(max_entangled(4), p) == pytest.approx(p.a - 3, abs=1e-12)


@pytest.mark.parametrize("alpha", [0.0, 1.0, 2.5, 4.0, 5.0])
def test_pair_closed_form_n3(alpha):
    p = params_on_curve("ellipse3", 0.3, -1)
    rho = horodecki_state(HorodeckiParams(3, alpha))
    assert pair(rho, p) == pytest.approx(horodecki_pair_oracle(p, alpha), abs=1e-12)


@pytest.mark.parametrize("alpha", [0.0, 3.0, 8.5, 10.0])
def test_pair_closed_form_n4(alpha):
    for p in (params_on_curve("class1", 0.8), params_on_curve("class2", 1.1, -1)):
        rho = horodecki_state(HorodeckiParams(4, alpha))
        assert pair(rho, p) == pytest.approx(horodecki_pair_oracle(p, alpha), abs=1e-12)


def test_pair_example_value():
    rho = horodecki_state(HorodeckiParams(3, 4.0))
    assert pair(rho, raw(0.9, 0.0091673, 1.0908327)) == pytest.approx(-0.15316, abs=1e-4)


def test_pair_dimension_mismatch():
    with pytest.raises(DimensionError):
        pair(np.eye(9) / 9, params_on_curve("class1", 0.7))


def test_pair_is_affine(rng):
    p = params_on_curve("class2", 0.7)
    r1 = horodecki_state(HorodeckiParams(4, 1.5))
    r2 = horodecki_state(HorodeckiParams(4, 8.0))
    for lam in rng.uniform(size=5):
        mix = lam * r1 + (1 - lam) * r2
        assert pair(mix, p) == pytest.approx(lam * pair(r1, p) + (1 - lam) * pair(r2, p), abs=1e-12)


def test_pair_form_matches_trace(rng):
    p = params_on_curve("class1", 0.66, -1)
    A = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
    rho = A @ A.conj().T
    rho /= np.trace(rho)
    G, H = pair_form(rho, 4)
    assert np.dot(p.values, G) - H == pytest.approx(pair(rho, p), abs=1e-12)


def test_golden_section():
    x, fx = golden_section(lambda t: (t - 0.3) ** 2, 0.0, 1.0)
    assert x == pytest.approx(0.3, abs=1e-9) and fx < 1e-18
    x, _ = golden_section(lambda t: t, 0.0, 1.0)
    assert x == 0.0
    with pytest.raises(ParameterError):
        golden_section(lambda t: t, 1.0, 0.0)


@pytest.mark.parametrize("alpha", [1.0, 1.5, 3.5, 4.0])
def test_detects_ppt_band_n3(alpha):
    rep = detect_horodecki(3, alpha)
    assert rep.detected and rep.best_value < -1e-10
    assert rep.best_params.family.value == "ellipse3"
    assert rep.best_value == pytest.approx(horodecki_pair_oracle(rep.best_params, alpha), abs=1e-12)


def test_refinement_improves_on_grid():
    coarse = detect_horodecki(3, 3.5, grid=20)
    rough = search_curve(horodecki_state(HorodeckiParams(3, 3.5)), grid=20, refine=False)
    assert coarse.best_value <= rough.best_value


def test_separable_band_not_detected():
    rep = detect_horodecki(3, 2.5)
    assert not rep.detected and rep.best_value >= -1e-10
    assert rep.ppt_status


@pytest.mark.parametrize("alpha", [1.0, 2.0, 8.0, 9.0])
def test_detects_ppt_band_n4(alpha):
    rep = detect_horodecki(4, alpha)
    assert rep.detected and rep.ppt_status and rep.indecomposability_certified


def test_products_never_detected(rng):
    for _ in range(100):
        n = int(rng.choice([3, 4]))
        vs = [rng.normal(size=n) + 1j * rng.normal(size=n) for _ in range(2)]
        x = np.kron(vs[0], vs[1])
        rho = np.outer(x, x.conj()) / np.vdot(x, x).real
        assert not search_curve(rho, grid=50).detected


def test_family_mismatch():
    with pytest.raises(ParameterError):
        search_curve(max_entangled(3), "class1")


def test_sweep_csv_and_intervals():
    reports = sweep_alpha(3, alphas=alpha_grid(3, 0.0, 5.0, 0.25))
    flags = [r.detected for r in reports]
    changes = sum(flags[k] != flags[k + 1] for k in range(len(flags) - 1))
    assert changes == 2
    text = reports_to_csv(reports)
    header, first = text.splitlines()[:2]
    assert header == "alpha,ppt_min_eig,best_driver,best_branch,best_value,detected"
    assert first.startswith("0.0,")
    assert all(not r.ppt_status for r in reports if r.state["alpha"] > 4.0)


def test_alpha_grid():
    assert alpha_grid(3, 1.0, 1.2, 0.05) == [1.0, 1.05, 1.1, 1.15, 1.2]
    assert len(alpha_grid(4)) == 201
    with pytest.raises(ParameterError):
        alpha_grid(3, 0.0, 6.0)


def test_probe_state_is_ppt_and_detects_class2():
    p = params_on_curve("class2", 0.9)
    rho, desc = circulant_probe(p)
    assert is_ppt(rho, 4)[0]
    s = np.sqrt(p.b * p.d)
    # unnormalized trace 4(b + d + 2s), unnormalized value 4 * 2s(s - 1)
    assert pair(rho, p) * 4 * (p.b + p.d + 2 * s) == pytest.approx(8 * s * (s - 1), abs=1e-12)
    assert desc["kind"] == "circulant_probe"


@pytest.mark.parametrize(
    "p",
    [
        params_on_curve("class1", 0.75),
        params_on_curve("class1", 0.95, -1),
        params_on_curve("class2", 0.8),
        params_on_curve("class2", 1.4, -1),
        params_on_curve("ellipse3", 0.5),
    ],
)
def test_indecomposable_certified(p):
    ok, rep = certify_indecomposable(p)
    assert ok and rep.ppt_status and rep.best_value < -1e-10
    assert decomposability_flag(p) is Decomposability.INDECOMPOSABLE


@pytest.mark.parametrize(
    "p", [params_on_curve("class1", 0.5), raw(0, 1, 1, 1), params_on_curve("ellipse3", 0.0)]
)
def test_decomposable_not_certified(p):
    ok, rep = certify_indecomposable(p)
    assert not ok and not rep.indecomposability_certified


def test_report_json_stable():
    rep = detect_horodecki(4, 8.0)
    assert dumps(rep.to_dict()) == dumps(detect_horodecki(4, 8.0).to_dict())
