import numpy as np
import pytest

from circwit.errors import DimensionError, ParameterError
from circwit.linalg import hermitian_spectrum, partial_transpose
from circwit.states import (
    HorodeckiParams,
    check_density,
    circulant_state,
    horodecki_state,
    is_ppt,
    locate_ppt_boundary,
    max_entangled,
    pi_projector,
    ppt_boundaries,
)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_max_entangled_is_pure_state(n):
    P = max_entangled(n)
    assert np.trace(P).real == pytest.approx(1.0)
    assert np.allclose(P @ P, P)
    assert is_ppt(P, n)[1] == pytest.approx(-1.0 / n)


def test_pi_projector_support():
    P = pi_projector(4, 1)
    assert np.trace(P).real == pytest.approx(1.0)
    support = {i for i in range(16) if P[i, i] != 0}
    assert support == {1, 6, 11, 12}  # |01>, |12>, |23>, |30>
    with pytest.raises(ParameterError):
        pi_projector(4, 0)
    with pytest.raises(ParameterError):
        pi_projector(4, 4)


@pytest.mark.parametrize("n,alpha", [(3, 0.0), (3, 2.5), (3, 5.0), (4, 0.0), (4, 5.0), (4, 10.0)])
def test_horodecki_states_are_densities(n, alpha):
    check_density(horodecki_state(HorodeckiParams(n, alpha)))


def test_horodecki_alpha_range():
    with pytest.raises(ParameterError):
        HorodeckiParams(3, 5.1)
    with pytest.raises(ParameterError):
        HorodeckiParams(4, -0.1)
    with pytest.raises(ParameterError):
        HorodeckiParams(5, 1.0)


def test_pt_eigenvalue_closed_form_n3():
    # rho^Gamma splits into |ll> entries 2/21 and blocks [[alpha, 2], [2, 5 - alpha]] / 21
    for alpha in np.linspace(0, 5, 11):
        rho = horodecki_state(HorodeckiParams(3, alpha))
        block = (5 - np.sqrt((2 * alpha - 5) ** 2 + 16)) / 42
        got = hermitian_spectrum(partial_transpose(rho, 3))[0]
        assert got == pytest.approx(min(block, 2 / 21), abs=1e-13)


def test_ppt_status_bands():
    assert is_ppt(horodecki_state(HorodeckiParams(3, 2.5)), 3)[0]
    assert not is_ppt(horodecki_state(HorodeckiParams(3, 4.5)), 3)[0]
    assert is_ppt(horodecki_state(HorodeckiParams(4, 5.0)), 4)[0]
    assert not is_ppt(horodecki_state(HorodeckiParams(4, 0.5)), 4)[0]


def test_is_ppt_dimension_check():
    with pytest.raises(DimensionError):
        is_ppt(np.eye(9) / 9, 4)


def test_boundaries():
    b3 = ppt_boundaries(3)
    b4 = ppt_boundaries(4)
    assert b3 == pytest.approx([1.0, 4.0], abs=1e-6)
    assert b4 == pytest.approx([1.0, 9.0], abs=1e-6)


def test_locate_boundary_validates_bracket():
    with pytest.raises(ParameterError):
        locate_ppt_boundary(3, 0.5, 2.0)


def test_check_density_rejects():
    with pytest.raises(ParameterError):
        check_density(np.eye(4))
    with pytest.raises(ParameterError):
        check_density(np.diag([1.5, -0.5]))


def test_circulant_state_is_ppt_density():
    s = 0.3
    rho = circulant_state(4, [0, 0.9, s, 0.1], [s] * 4)
    check_density(rho)
    assert np.allclose(rho, rho.conj().T)
    assert is_ppt(rho, 4)[0]
