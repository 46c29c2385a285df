import numpy as np
import pytest

from qweigh.designs import TernaryMatrix, W43, verify_weighing, tensor
from qweigh.designs import identity, sylvester, w43_power, paley_one, paley_two
from qweigh.designs import legendre_matrix, jacobsthal_matrix, conference_matrix
from qweigh.designs import parse_matrix, serialize_matrix, read_matrix, write_matrix
from qweigh.field import field_for_order, is_prime_power
from qweigh.utils import NotWeighingError, MatrixFormatError, FieldError, SizeCapError

ODD_PRIME_POWERS = [q for q in range(3, 201) if q % 2 == 1 and is_prime_power(q) is not None]

W43_TEXT = '4 3\n+++0\n+-0+\n+0--\n0+-+\n'


def _gram(M):
    m = M.entries.astype(np.int64)
    return m @ m.T


def test_verify_identity_and_w43():
    cert = verify_weighing(identity(5))
    assert (cert.n, cert.k) == (5, 1)
    cert = verify_weighing(TernaryMatrix(W43))
    assert cert.k == 3
    assert cert.row_counts == (3, 3, 3, 3)
    assert not cert.is_hadamard


def test_verify_rejects_all_ones():
    with pytest.raises(NotWeighingError) as err:
        verify_weighing(TernaryMatrix([[1, 1], [1, 1]]))
    assert err.value.pair == (0, 1)


def test_verify_rejects_unequal_weights():
    with pytest.raises(NotWeighingError) as err:
        verify_weighing(TernaryMatrix([[1, 0, 0], [0, 1, 1], [0, 1, -1]]))
    assert err.value.pair == (0, 1)


def test_ternary_matrix_checks():
    with pytest.raises(ValueError):
        TernaryMatrix([[1, 2], [0, 1]])
    with pytest.raises(ValueError):
        TernaryMatrix([[1, 0, 1], [0, 1, 1]])
    with pytest.raises(NotWeighingError):
        TernaryMatrix(W43, claimed_weight=2)
    M = TernaryMatrix(W43)
    assert not M.verified
    with pytest.raises(ValueError):
        M.entries[0, 0] = 0


def test_tensor():
    assert tensor(identity(2), identity(2)) == identity(4)
    M = tensor(w43_power(1), w43_power(1))
    assert (M.n, M.claimed_weight) == (16, 9)
    assert M == w43_power(2)
    H = tensor(sylvester(1), sylvester(1))
    assert verify_weighing(H).is_hadamard
    assert H == sylvester(2)
    with pytest.raises(NotWeighingError):
        tensor(TernaryMatrix(W43), identity(2))


def test_sylvester_entries():
    assert np.array_equal(sylvester(1).entries, [[1, 1], [1, -1]])
    assert np.array_equal(sylvester(2).entries, [[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]])
    H = sylvester(4).entries
    for r in range(16):
        for c in range(16):
            assert H[r, c] == (-1)**bin(r & c).count('1')


@pytest.mark.parametrize('t', range(1, 7))
def test_sylvester_certified(t):
    M = sylvester(t)
    assert np.array_equal(_gram(M), 2**t*np.eye(2**t, dtype=np.int64))
    assert verify_weighing(M).is_hadamard


def test_sylvester_cap():
    with pytest.raises(SizeCapError):
        sylvester(13)


@pytest.mark.parametrize('q', [3, 7, 11, 19, 23, 27])
def test_paley_one(q):
    M = paley_one(q)
    assert M.n == q+1
    assert np.all(np.abs(M.entries) == 1)
    assert np.array_equal(_gram(M), (q+1)*np.eye(q+1, dtype=np.int64))
    assert verify_weighing(M).k == q+1


@pytest.mark.parametrize('q', [5, 9, 13, 25])
def test_paley_two(q):
    M = paley_two(q)
    assert M.n == 2*q+2
    assert np.all(np.abs(M.entries) == 1)
    assert np.array_equal(_gram(M), (2*q+2)*np.eye(2*q+2, dtype=np.int64))


def test_paley_wrong_class():
    with pytest.raises(ValueError):
        paley_one(5)
    with pytest.raises(ValueError):
        paley_two(7)
    with pytest.raises(FieldError):
        paley_one(15)


@pytest.mark.parametrize('t,n,k', [(1, 4, 3), (2, 16, 9), (3, 64, 27)])
def test_w43_power(t, n, k):
    M = w43_power(t)
    assert (M.n, M.claimed_weight) == (n, k)
    assert np.array_equal(_gram(M), k*np.eye(n, dtype=np.int64))
    if(t == 1):
        assert np.array_equal(M.entries, W43)


@pytest.mark.parametrize('n', [1, 2, 17, 64])
def test_identity(n):
    cert = verify_weighing(identity(n))
    assert (cert.n, cert.k) == (n, 1)


@pytest.mark.parametrize('q', [3, 5, 7, 9, 11, 13])
def test_conference(q):
    C = conference_matrix(q)
    cert = verify_weighing(C)
    assert cert.is_conference
    c = C.entries.astype(np.int64)
    if(q % 4 == 1):
        assert np.array_equal(c, c.T)
    else:
        assert np.array_equal(c, -c.T)


@pytest.mark.parametrize('q', [3, 9, 25, 27])
def test_jacobsthal(q):
    Q = jacobsthal_matrix(field_for_order(q))
    assert np.array_equal(Q @ Q.T, q*np.eye(q, dtype=np.int64) - 1)
    assert np.all(Q.sum(axis=1) == 0)


def test_legendre_matrix_three():
    L = legendre_matrix(field_for_order(3))
    assert np.array_equal(L.entries, [[0, 1, -1], [1, -1, 0], [-1, 0, 1]])
    assert not L.verified


@pytest.mark.parametrize('q', ODD_PRIME_POWERS)
def test_legendre_matrix_identity(q):
    L = legendre_matrix(field_for_order(q)).entries.astype(np.int64)
    assert np.array_equal(L.T @ L, q*np.eye(q, dtype=np.int64) - np.ones((q, q), dtype=np.int64))


def test_parse_examples():
    assert parse_matrix('2 2\n++\n+-') == sylvester(1)
    assert parse_matrix(W43_TEXT) == w43_power(1)
    assert serialize_matrix(parse_matrix(W43_TEXT)) == W43_TEXT
    M = parse_matrix('2 -1\n++\n++\n')
    assert not M.verified
    assert serialize_matrix(M) == '2 -1\n++\n++\n'


@pytest.mark.parametrize('text', ['2 2\n+x\n++', '2 2\n++', '2 2\n++\n+', 'two 2\n++\n+-', '', '2\n++\n+-'])
def test_parse_errors(text):
    with pytest.raises(MatrixFormatError):
        parse_matrix(text)


def test_parse_wrong_weight():
    with pytest.raises(NotWeighingError):
        parse_matrix('2 1\n++\n+-')


def test_file_io(tmp_path):
    path = tmp_path / 'h8.wm'
    write_matrix(paley_one(7), path)
    text = path.read_text()
    assert text.startswith('8 8\n')
    assert text.endswith('\n') and not text.endswith('\n\n')
    assert read_matrix(path) == paley_one(7)


def test_empty_matrix_rejected():
    with pytest.raises(ValueError):
        identity(0)
    with pytest.raises(ValueError):
        TernaryMatrix(np.zeros((0, 0)))
