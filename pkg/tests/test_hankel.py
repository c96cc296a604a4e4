import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dixmier_lab.config import TOL
from dixmier_lab.hankel import (
    BandedHermitian,
    BidegreeSymbol,
    SingularSpectrum,
    gram,
    gram_by_quadrature,
    m_alpha_diag,
    m_alpha_limit,
    m_alpha_summary,
    monomial_spectrum,
    singular_values,
)
from dixmier_lab.macaev import trace_slope

coeff = st.complex_numbers(max_magnitude=3.0, allow_nan=False, allow_infinity=False)
antiholo = st.dictionaries(st.tuples(st.just(0), st.integers(1, 4)), coeff, min_size=1, max_size=4)
general = st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), coeff, min_size=1, max_size=5)


def test_symbol_canonical_form():
    s = BidegreeSymbol({(0, 1): 1, (2, 0): 0, (1, 1): 0j})
    assert s.terms == {(0, 1): 1}
    assert (s.degz, s.degzbar, s.bandwidth) == (0, 1, 1)
    assert BidegreeSymbol({(0, 1): 2}) == BidegreeSymbol({(0, 1): 2.0 + 0j})
    with pytest.raises(ValueError):
        BidegreeSymbol({(-1, 0): 1})


def test_symbol_algebra():
    f = BidegreeSymbol({(1, 2): 2 + 1j})
    assert f.conj() == BidegreeSymbol({(2, 1): 2 - 1j})
    assert f.dbar() == BidegreeSymbol({(1, 1): 4 + 2j})
    assert (f + 3).terms[(0, 0)] == 3
    assert (2 * f).terms[(1, 2)] == 4 + 2j
    z = 0.3 - 0.2j
    assert f(z) == pytest.approx((2 + 1j) * z * np.conj(z) ** 2)
    assert BidegreeSymbol.conj_of_holomorphic([0, 1, 0.5j]) == BidegreeSymbol({(0, 1): 1, (0, 2): -0.5j})


def test_gram_conj_z_diagonal():
    G = gram(BidegreeSymbol({(0, 1): 1}), 0.0, 4)
    assert np.allclose(G.to_dense(), np.diag([1 / 2, 1 / 6, 1 / 12, 1 / 20]), atol=1e-15)


@pytest.mark.parametrize("alpha", [0.0, 1.0, 3.5])
@pytest.mark.parametrize("dim", [1, 8, 64])
def test_constant_symbol_annihilated(alpha, dim):
    G = gram(BidegreeSymbol.constant(2.5 - 1j), alpha, dim)
    assert not np.any(G.to_dense())


@settings(max_examples=40, deadline=None)
@given(antiholo, coeff, st.sampled_from([0.0, 0.5, 2.0]))
def test_shift_invariance(terms, c, alpha):
    f = BidegreeSymbol(terms)
    a, b = gram(f, alpha, 32).to_dense(), gram(f + c, alpha, 32).to_dense()
    assert np.allclose(a, b, atol=1e-12, rtol=0)


@settings(max_examples=40, deadline=None)
@given(general, st.sampled_from([0.0, 1.0]))
def test_band_structure_and_hermitian(terms, alpha):
    f = BidegreeSymbol(terms)
    D = gram(f, alpha, 24).to_dense()
    assert np.allclose(D, D.conj().T, atol=1e-14)
    m, n = np.indices(D.shape)
    assert not np.any(D[np.abs(m - n) > f.bandwidth])


@settings(max_examples=30, deadline=None)
@given(general, coeff.filter(lambda c: abs(c) > 1e-3))
def test_homogeneity(terms, c):
    f = BidegreeSymbol(terms)
    s = singular_values(gram(f, 0.5, 48)).values
    sc = singular_values(gram(c * f, 0.5, 48)).values
    scale = max(s.max(), 1e-300)
    assert np.allclose(sc, abs(c) * s, rtol=1e-12, atol=1e-12 * abs(c) * scale)


@pytest.mark.parametrize("text_terms", [{(0, 2): 1}, {(0, 1): 1, (1, 2): 0.5 - 0.25j}, {(1, 1): 1}, {(2, 1): 1j, (0, 1): 2}, {(0, 3): 1, (0, 1): -2}])
@pytest.mark.parametrize("alpha", [0.0, 1.0])
def test_gram_matches_quadrature(text_terms, alpha):
    f = BidegreeSymbol(text_terms)
    dev = np.abs(gram(f, alpha, 32).to_dense() - gram_by_quadrature(f, alpha, 32)).max()
    assert dev <= TOL.gram_oracle


def test_banded_entry_and_dense():
    bands = np.array([[1.0, 2.0, 3.0], [0.5j, -1j, 0.0]])
    B = BandedHermitian(bands)
    D = B.to_dense()
    assert D[1, 0] == 0.5j and D[0, 1] == -0.5j
    assert B.entry(0, 1) == -0.5j and B.entry(2, 0) == 0
    with pytest.raises(IndexError):
        B.entry(3, 0)
    assert np.allclose(np.sort(B.eigvalsh()), np.linalg.eigvalsh(D))


def test_singular_values_examples():
    zero = BandedHermitian(np.zeros((1, 8)))
    assert np.array_equal(singular_values(zero).values, np.zeros(8))
    diag = BandedHermitian(np.array([[1 / 2, 1 / 6, 1 / 12]]))
    assert np.allclose(singular_values(diag).values, [1 / np.sqrt(2), 1 / np.sqrt(6), 1 / np.sqrt(12)])
    with pytest.raises(ValueError):
        singular_values(BandedHermitian(np.array([[1.0, -0.5]])))


def test_spectrum_validation():
    with pytest.raises(ValueError):
        SingularSpectrum(np.array([1.0, 2.0]))
    with pytest.raises(ValueError):
        SingularSpectrum(np.array([1.0, -1.0]))
    s = SingularSpectrum(np.linspace(1, 0, 10), source_dim=10)
    assert len(s.trusted()) == 5


def test_monomial_spectrum_closed_form():
    n = np.arange(1000)
    s = monomial_spectrum(1, 0.0, 1000).values
    assert np.allclose(s, 1 / np.sqrt((n + 1) * (n + 2)), rtol=1e-14)
    assert s[0] == pytest.approx(1 / np.sqrt(2))


def test_monomial_spectrum_no_cancellation_deep():
    # s_n ~ k sqrt(alpha+1)/n far out; naive moment differences lose this entirely.
    s = monomial_spectrum(2, 3.0, 10**6).values
    assert s[-1] * 10**6 == pytest.approx(4.0, rel=1e-4)
    assert np.all(np.diff(s) <= 0)


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0, 3.0])
def test_monomial_vs_eigensolver(k, alpha):
    eig = singular_values(gram(BidegreeSymbol({(0, k): 1}), alpha, 256)).trusted().values
    assert np.abs(eig - monomial_spectrum(k, alpha, 128).values).max() <= TOL.monomial_vs_eigensolver


def test_gram_conj_z_eigensolver_256():
    s = singular_values(gram(BidegreeSymbol({(0, 1): 1}), 0.0, 256)).values
    n = np.arange(256)
    assert np.abs(s - 1 / np.sqrt((n + 1) * (n + 2))).max() <= 1e-10


def test_monomial_trace_examples():
    assert trace_slope(monomial_spectrum(1, 0.0, 10**5)).value == pytest.approx(1.0, abs=0.02)
    assert trace_slope(monomial_spectrum(2, 3.0, 10**5)).value == pytest.approx(4.0, abs=0.08)


def test_m_alpha():
    assert np.all(m_alpha_diag(np.arange(5000), 0.0) == 1.0)
    assert m_alpha_diag(0, 1.0) == pytest.approx(1.5, rel=1e-14)
    assert m_alpha_limit(1.0) == pytest.approx(np.sqrt(2) * 2 / np.sqrt(np.pi), rel=1e-14)
    assert m_alpha_diag(10**6, 1.0) == pytest.approx(1.5957691216057308, abs=1e-4)
    info = m_alpha_summary(1.0)
    assert info["sup"] <= info["limit"]
    assert info["sqrt_alpha_plus_1"] == pytest.approx(np.sqrt(2))
