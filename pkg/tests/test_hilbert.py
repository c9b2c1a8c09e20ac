import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import unitary_group

from albert_automata import hilbert
from albert_automata.errors import DimensionError, NotHermitianError, ScopeError
from albert_automata.hilbert import RegisterLayout

from oracles import full_operator, gram_schmidt

X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.diag([1, -1]).astype(complex)
I2 = np.eye(2)


def random_unitary(n, seed):
    return unitary_group.rvs(n, random_state=np.random.default_rng(seed))


def random_hermitian(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return a + a.conj().T


# -- tensor ---------------------------------------------------------------

def test_tensor_basis_vectors():
    np.testing.assert_array_equal(hilbert.tensor([1, 0], [0, 1]), [0, 1, 0, 0])


def test_tensor_identity():
    np.testing.assert_array_equal(hilbert.tensor(I2, I2), np.eye(4))


def test_tensor_dims():
    assert hilbert.tensor(np.eye(2), np.eye(3)).shape == (6, 6)


@pytest.mark.parametrize("seed", range(10))
def test_tensor_of_unitaries_is_unitary(seed):
    u, v = random_unitary(3, seed), random_unitary(3, seed + 100)
    assert hilbert.is_unitary(hilbert.tensor(u, v), 1e-10)


# -- layout ---------------------------------------------------------------

def test_layout_basics():
    lay = RegisterLayout.of(s=2, a1=3, a2=4)
    assert lay.total_dim == 24
    assert lay.names == ("s", "a1", "a2")
    assert lay.to_digits(0) == (0, 0, 0)
    assert lay.to_digits(23) == (1, 2, 3)
    # leftmost register most significant
    assert lay.to_index((1, 0, 0)) == 12


def test_layout_rejects_duplicates_and_unknown():
    with pytest.raises(ScopeError):
        RegisterLayout((("s", 2), ("s", 2)))
    with pytest.raises(ScopeError):
        RegisterLayout.of(s=2).dim("a")


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 5), min_size=1, max_size=4), st.data())
def test_layout_index_round_trip(dims, data):
    lay = RegisterLayout(tuple((f"r{i}", d) for i, d in enumerate(dims)))
    k = data.draw(st.integers(0, lay.total_dim - 1))
    assert lay.to_index(lay.to_digits(k)) == k


def test_layout_round_trip_exhaustive():
    lay = RegisterLayout.of(s=3, a=2, b=4)
    assert [lay.to_index(lay.to_digits(k)) for k in range(lay.total_dim)] == list(range(24))


# -- embed / apply --------------------------------------------------------

def test_embed_left_and_right():
    lay = RegisterLayout.of(S=2, A=2)
    np.testing.assert_allclose(hilbert.embed(Z, ["S"], lay), np.kron(Z, I2))
    np.testing.assert_allclose(hilbert.embed(Z, ["A"], lay), np.kron(I2, Z))


def test_embed_identity():
    lay = RegisterLayout.of(s=2, a=3, b=2)
    np.testing.assert_allclose(hilbert.embed(np.eye(6), ["b", "a"], lay), np.eye(12))


@pytest.mark.parametrize("scope", [("s", "b"), ("b", "s"), ("a",), ("b", "a", "s")])
def test_embed_matches_bruteforce(scope):
    lay = RegisterLayout.of(s=2, a=3, b=2)
    n = lay.scope_dim(scope)
    op = random_hermitian(n, 7) + 1j * np.arange(n * n).reshape(n, n)
    positions = [lay.position(r) for r in scope]
    np.testing.assert_allclose(hilbert.embed(op, scope, lay), full_operator(op, positions, lay.dims), atol=1e-13)


def test_apply_matches_embed():
    lay = RegisterLayout.of(s=3, a=2, b=2)
    op = random_unitary(6, 3)
    v = np.random.default_rng(1).standard_normal(12) + 0j
    np.testing.assert_allclose(hilbert.apply(op, ("b", "s"), lay, v), hilbert.embed(op, ("b", "s"), lay) @ v, atol=1e-13)


def test_embed_errors():
    lay = RegisterLayout.of(s=2, a=2)
    with pytest.raises(DimensionError):
        hilbert.embed(np.eye(3), ["s"], lay)
    with pytest.raises(ScopeError):
        hilbert.embed(np.eye(2), ["q"], lay)


@pytest.mark.parametrize("seed", range(5))
def test_embed_preserves_spectrum(seed):
    lay = RegisterLayout.of(s=2, a=3, b=2)
    op = random_hermitian(3, seed)
    vals = np.linalg.eigvalsh(op)
    full_vals = np.linalg.eigvalsh(hilbert.embed(op, ["a"], lay))
    np.testing.assert_allclose(full_vals, np.sort(np.repeat(vals, 4)), atol=1e-10)


# -- commutator -----------------------------------------------------------

def test_commutator_examples():
    assert not np.any(hilbert.commutator(np.diag([1, 2]), np.diag([3, 4])))
    a = random_hermitian(3, 0)
    np.testing.assert_allclose(hilbert.commutator(a, a), 0, atol=1e-14)
    # XZ = [[0,-1],[1,0]], ZX = [[0,1],[-1,0]]
    np.testing.assert_array_equal(hilbert.commutator(X, Z), [[0, -2], [2, 0]])


def test_commutator_antisymmetric():
    for seed in range(10):
        a, b = random_unitary(4, seed), random_hermitian(4, seed)
        assert hilbert.frobenius(hilbert.commutator(a, b) + hilbert.commutator(b, a)) <= 1e-14


def test_commutator_shape_mismatch():
    with pytest.raises(DimensionError):
        hilbert.commutator(np.eye(2), np.eye(3))


# -- eigendecomposition ---------------------------------------------------

def test_eigh_examples():
    vals, _ = hilbert.hermitian_eigendecomposition(np.diag([3, 1, 2]))
    np.testing.assert_allclose(vals, [1, 2, 3])
    vals, _ = hilbert.hermitian_eigendecomposition(X)
    np.testing.assert_allclose(vals, [-1, 1])
    with pytest.raises(NotHermitianError):
        hilbert.hermitian_eigendecomposition([[0, 1], [0, 0]])


@pytest.mark.parametrize("seed", range(10))
def test_eigh_reconstruction(seed):
    m = random_hermitian(5, seed)
    vals, vecs = hilbert.hermitian_eigendecomposition(m)
    assert hilbert.frobenius(vecs @ np.diag(vals) @ vecs.conj().T - m) <= 1e-9
    assert hilbert.frobenius(vecs.conj().T @ vecs - np.eye(5)) <= 1e-10
    assert np.all(np.diff(vals) >= 0)


# -- basis completion -----------------------------------------------------

def test_completion_single_vector():
    b = hilbert.basis_completion([[1, 0]], 2, seed=0)
    assert abs(np.vdot(b[:, 0], b[:, 1])) < 1e-12
    assert abs(np.linalg.norm(b[:, 1]) - 1) < 1e-12
    np.testing.assert_array_equal(b[:, 0], [1, 0])


def test_completion_full_basis_unchanged():
    u = random_unitary(3, 5)
    np.testing.assert_array_equal(hilbert.basis_completion(list(u.T), 3, seed=1), u)


def test_completion_against_gram_schmidt():
    v = np.array([1, 1]) / np.sqrt(2)
    b = hilbert.basis_completion([v], 2, seed=3)
    # in dimension 2 the completion is fixed up to a phase
    ref = gram_schmidt([v, [1, 0], [0, 1]])[1]
    assert abs(abs(np.vdot(ref, b[:, 1])) - 1) < 1e-12
    assert hilbert.frobenius(b.conj().T @ b - np.eye(2)) <= 1e-12


def test_completion_is_seeded():
    v = [np.array([1, 1j, 0, 0]) / np.sqrt(2)]
    a = hilbert.basis_completion(v, 4, seed=11)
    np.testing.assert_array_equal(a, hilbert.basis_completion(v, 4, seed=11))
    assert not np.allclose(a, hilbert.basis_completion(v, 4, seed=12))


@pytest.mark.parametrize("seed", range(20))
def test_completion_orthonormal(seed):
    u = random_unitary(6, seed)
    k = seed % 6
    b = hilbert.basis_completion(list(u.T[:k]), 6, seed)
    assert hilbert.frobenius(b.conj().T @ b - np.eye(6)) <= 1e-10
    np.testing.assert_array_equal(b[:, :k], u[:, :k])


def test_completion_rejects_non_orthonormal():
    with pytest.raises(DimensionError):
        hilbert.basis_completion([[1, 0], [1, 1e-3]], 2)
    with pytest.raises(DimensionError):
        hilbert.basis_completion([[1, 0], [1, 0]], 2)


# -- expectation ----------------------------------------------------------

def test_expectation_examples():
    assert hilbert.expectation([1, 0], np.diag([5, 7])) == 5
    assert hilbert.expectation(np.ones(2) / np.sqrt(2), np.diag([0, 1])) == pytest.approx(0.5)
    psi = np.array([0.6, 0.8j])
    assert hilbert.expectation(psi, np.eye(2)) == pytest.approx(1.0)


def test_expectation_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        hilbert.expectation(np.array([1, 1j]) / np.sqrt(2), [[0, 1], [0, 0]])


def test_state_vector_checks():
    with pytest.raises(DimensionError):
        hilbert.state_vector([1, 1])
    np.testing.assert_allclose(hilbert.state_vector([3, 4], normalize=True), [0.6, 0.8])
    with pytest.raises(DimensionError):
        hilbert.as_matrix([[np.nan, 0], [0, 1]])
