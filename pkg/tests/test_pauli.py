"""Phase-tracked Pauli algebra: group law, commutation, sums, projectors,
and text round-trips, all checked against kron-built dense oracles."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import oracle_string_matrix
from wignerlab.pauli import (HilbertLayout, LayoutMismatchError, PauliString,
                             PauliSum, ancilla_layout, commutes, eta_string,
                             format_string, format_sum, link_layout,
                             matter_layout, mul, parse_string, parse_sum,
                             sum_commutator, symmetry_projector)

LAYOUT3 = matter_layout(3)


def strings(layout=LAYOUT3):
    full = layout.dim - 1
    return st.builds(PauliString, st.just(layout),
                     st.integers(0, full), st.integers(0, full),
                     st.integers(0, 3))


def dense_sum(s: PauliSum) -> np.ndarray:
    out = np.zeros((s.layout.dim, s.layout.dim), dtype=complex)
    for c, p in s:
        out = out + c * oracle_string_matrix(p)
    return out


# -- layouts ---------------------------------------------------------------

def test_layout_indexing_roundtrip():
    lay = link_layout(3)
    assert lay.total_sites == 6
    for b in range(lay.total_sites):
        assert lay.index_of(lay.site_of(b)) == b
    assert lay.index_of(1) == 0
    assert lay.index_of(3) == 2


def test_ancilla_layout_slot():
    lay = ancilla_layout(4)
    assert lay.gauge_slots == ("L+1",)
    assert lay.index_of("L+1") == 4
    assert lay.dim == 32


def test_layout_mismatch_raises():
    p = PauliString.single(matter_layout(2), "X", 1)
    q = PauliString.single(matter_layout(3), "X", 1)
    with pytest.raises(LayoutMismatchError):
        mul(p, q)


def test_mask_outside_layout_rejected():
    with pytest.raises(ValueError):
        PauliString(matter_layout(2), x_mask=4)


# -- single strings ----------------------------------------------------------

def test_single_site_matrices_match_oracle():
    # trivial: X, Y, Z on one site of a 2-site chain
    lay = matter_layout(2)
    x = oracle_string_matrix(PauliString.single(lay, "X", 1))
    y = oracle_string_matrix(PauliString.single(lay, "Y", 1))
    z = oracle_string_matrix(PauliString.single(lay, "Z", 1))
    assert np.allclose(x @ x, np.eye(4))
    assert np.allclose(1j * x @ z, y)
    assert np.allclose(x @ z + z @ x, 0)


@settings(max_examples=200)
@given(strings(), strings())
def test_group_law_matches_dense(p, q):
    lhs = oracle_string_matrix(mul(p, q))
    rhs = oracle_string_matrix(p) @ oracle_string_matrix(q)
    assert np.allclose(lhs, rhs, atol=1e-14)


@settings(max_examples=200)
@given(strings(), strings())
def test_commutes_matches_dense(p, q):
    a, b = oracle_string_matrix(p), oracle_string_matrix(q)
    dense_commutes = np.allclose(a @ b, b @ a, atol=1e-14)
    assert commutes(p, q) == dense_commutes


@settings(max_examples=200)
@given(strings())
def test_dagger_and_hermiticity_match_dense(p):
    m = oracle_string_matrix(p)
    assert np.allclose(oracle_string_matrix(p.dagger()), m.conj().T, atol=1e-14)
    assert p.is_hermitian() == np.allclose(m, m.conj().T, atol=1e-14)


@settings(max_examples=100)
@given(strings())
def test_square_is_phase_times_identity(p):
    sq = mul(p, p)
    assert sq.x_mask == 0 and sq.z_mask == 0
    assert sq.phase_exp in (0, 2)


def test_weight_and_coefficient():
    p = PauliString.from_sites(LAYOUT3, [("Y", 1), ("Z", 3)])
    assert p.weight() == 2
    assert p.coefficient == 1j  # stored as i * X1 Z1 Z3


# -- sums --------------------------------------------------------------------

@settings(max_examples=60)
@given(strings(), strings(), strings())
def test_sum_distributivity_matches_dense(p, q, r):
    a = PauliSum.from_string(p, 0.5) + PauliSum.from_string(q, -2.0)
    b = PauliSum.from_string(r, 1.5j)
    assert np.allclose(dense_sum(a * b), dense_sum(a) @ dense_sum(b), atol=1e-12)
    assert np.allclose(dense_sum(a + b), dense_sum(a) + dense_sum(b), atol=1e-12)


def test_sum_cancellation_is_exact():
    p = PauliString.from_sites(LAYOUT3, [("X", 1), ("Z", 2)])
    s = PauliSum.from_string(p) + (-1.0) * PauliSum.from_string(p)
    assert s.is_zero() and len(s) == 0


def test_sum_canonicalizes_phases():
    p = PauliString.from_sites(LAYOUT3, [("Y", 2)])
    # i * (X2 Z2 with phase 1)  ==  -1 * (X2 Z2 with phase 3)
    a = PauliSum.from_string(p, 1.0)
    b = PauliSum.from_string(PauliString(LAYOUT3, p.x_mask, p.z_mask, 3), -1.0)
    assert a == b


@settings(max_examples=60)
@given(strings(), strings())
def test_sum_commutator_matches_dense(p, q):
    a, b = PauliSum.from_string(p), PauliSum.from_string(q)
    lhs = dense_sum(sum_commutator(a, b))
    am, bm = dense_sum(a), dense_sum(b)
    assert np.allclose(lhs, am @ bm - bm @ am, atol=1e-12)


def test_sum_hermiticity_predicate():
    y = PauliString.single(LAYOUT3, "Y", 1)
    assert PauliSum.from_string(y, 2.0).is_hermitian()
    assert not PauliSum.from_string(y, 2.0j).is_hermitian()


# -- eta and projectors ------------------------------------------------------

def test_eta_string_is_all_x_on_matter():
    lay = ancilla_layout(3)
    eta = eta_string(lay)
    assert eta.x_mask == 0b0111 and eta.z_mask == 0 and eta.phase_exp == 0


@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("on_ancilla", [False, True])
def test_projector_idempotent_and_resolution(sign, on_ancilla):
    lay = ancilla_layout(3) if on_ancilla else matter_layout(3)
    p = symmetry_projector(sign, lay, on_ancilla=on_ancilla)
    assert p * p == p
    both = symmetry_projector(1, lay, on_ancilla=on_ancilla) + \
        symmetry_projector(-1, lay, on_ancilla=on_ancilla)
    assert both == PauliSum.identity(lay)


def test_projector_eigenvalue_relation():
    lay = matter_layout(3)
    p = symmetry_projector(-1, lay)
    eta = PauliSum.from_string(eta_string(lay))
    assert eta * p == (-1.0) * p


# -- text serialization -------------------------------------------------------

def test_format_string_examples():
    assert format_string(PauliString.from_sites(LAYOUT3, [("X", 1), ("Z", 3)])) \
        == "(+1i^0) X1 Z3 | L=3, gauge=[]"
    lay = link_layout(2)
    p = PauliString.single(lay, "X", "3/2")
    assert "X[3/2]" in format_string(p)


@settings(max_examples=100)
@given(strings())
def test_string_text_roundtrip(p):
    assert parse_string(format_string(p)) == p


@settings(max_examples=60)
@given(strings(), strings(),
       st.complex_numbers(allow_nan=False, allow_infinity=False, max_magnitude=1e6))
def test_sum_text_roundtrip(p, q, c):
    s = PauliSum.from_string(p, c) + PauliSum.from_string(q, 1.25)
    assert parse_sum(format_sum(s)) == s


def test_parse_rejects_malformed():
    with pytest.raises(ValueError):
        parse_string("(+1i^0) Q1 | L=3, gauge=[]")
