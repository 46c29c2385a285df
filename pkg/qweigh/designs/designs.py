import logging
from dataclasses import dataclass
from functools import reduce

import numpy as np

from qweigh.field import make_field, is_prime_power
from qweigh.utils import NotWeighingError, FieldError, check_cap

logger = logging.getLogger(__name__)

#4 x 4 W(4,3), the base of w43_power
W43 = ((1, 1, 1, 0),
       (1, -1, 0, 1),
       (1, 0, -1, -1),
       (0, 1, -1, 1))


class TernaryMatrix():
    '''
    Square matrix over {-1, 0, +1} with an optional, verified weight.

    Parameters
    ----------
    entries : array-like
     n x n values in {-1, 0, +1}
    claimed_weight : int, optional
     If given, M.M^T = k.I_n is checked exactly on construction (NotWeighingError otherwise)
    '''
    def __init__(self, entries, claimed_weight=None):
        m = np.array(entries, dtype=np.int64)
        if(m.ndim != 2 or m.shape[0] != m.shape[1]):
            raise ValueError(f'matrix must be square, got shape {m.shape}')
        if(m.shape[0] < 1):
            raise ValueError('matrix must have at least one row')
        if(not np.all(np.isin(m, (-1, 0, 1)))):
            raise ValueError('matrix entries must lie in {-1, 0, +1}')
        check_cap(m.shape[0], 'matrix_cap', 'matrix dimension n')
        m = m.astype(np.int8)
        m.flags.writeable = False
        self.entries = m
        self.n = m.shape[0]
        self.claimed_weight = None
        if(claimed_weight is not None):
            cert = verify_weighing(self)
            if(cert.k != claimed_weight):
                raise NotWeighingError(f'claimed weight {claimed_weight} but M.M^T = {cert.k}.I', pair=(0, 0))
            self.claimed_weight = int(claimed_weight)

    @property
    def verified(self):
        return self.claimed_weight is not None

    def row(self, s):
        return self.entries[s]

    def __eq__(self, other):
        return (isinstance(other, TernaryMatrix) and self.claimed_weight == other.claimed_weight
                and np.array_equal(self.entries, other.entries))

    def __repr__(self):
        return f'TernaryMatrix(n={self.n}, claimed_weight={self.claimed_weight})'


@dataclass(frozen=True)
class WeighingCertificate:
    n: int
    k: int
    row_counts: tuple
    col_counts: tuple
    verified: bool

    @property
    def is_hadamard(self):
        return self.verified and self.k == self.n

    @property
    def is_conference(self):
        return self.verified and self.k == self.n - 1


def verify_weighing(M):
    '''
    Certify M.M^T = k.I_n in exact integer arithmetic.

    Parameters
    ----------
    M : TernaryMatrix

    Returns
    ----------
    cert : WeighingCertificate
     k is the unique weight; k = n classifies M as Hadamard.
    '''
    m = M.entries.astype(np.int64)
    gram = m @ m.T
    off = gram - np.diag(np.diag(gram))
    bad = np.argwhere(np.triu(off) != 0)
    if(bad.size > 0):
        i, j = (int(v) for v in bad[0])
        raise NotWeighingError(f'rows {i} and {j} are not orthogonal (inner product {gram[i, j]})', pair=(i, j))
    diag = np.diag(gram)
    unequal = np.nonzero(diag != diag[0])[0]
    if(unequal.size > 0):
        j = int(unequal[0])
        raise NotWeighingError(f'row weights differ: row 0 has {diag[0]}, row {j} has {diag[j]}', pair=(0, j))
    k = int(diag[0])
    row_counts = tuple(int(c) for c in np.count_nonzero(m, axis=1))
    col_counts = tuple(int(c) for c in np.count_nonzero(m, axis=0))
    if(any(c != k for c in row_counts + col_counts)):
        raise NotWeighingError(f'nonzero counts differ from weight {k}', pair=(0, 0))
    return WeighingCertificate(n=M.n, k=k, row_counts=row_counts, col_counts=col_counts, verified=True)


def _certified(entries):
    M = TernaryMatrix(entries)
    cert = verify_weighing(M)
    logger.debug('certified W(%d,%d)', cert.n, cert.k)
    return TernaryMatrix(M.entries, claimed_weight=cert.k)


def tensor(M1, M2):
    '''
    Kronecker product of two verified weighing matrices, a W(n1 n2, k1 k2)
    '''
    for M in (M1, M2):
        if(not M.verified):
            raise NotWeighingError('tensor needs verified weighing matrices')
    check_cap(M1.n*M2.n, 'matrix_cap', 'matrix dimension n')
    return TernaryMatrix(np.kron(M1.entries.astype(np.int64), M2.entries.astype(np.int64)),
                         claimed_weight=M1.claimed_weight*M2.claimed_weight)


def _tensor_power(base, t, what):
    if(t < 1):
        raise ValueError(f'{what}: t = {t} must be positive')
    check_cap(np.shape(base)[0]**t, 'matrix_cap', 'matrix dimension n')
    return reduce(np.kron, [np.array(base, dtype=np.int64)]*t)


def identity(n):
    if(n < 1):
        raise ValueError(f'identity: n = {n} must be positive')
    check_cap(n, 'matrix_cap', 'matrix dimension n')
    return TernaryMatrix(np.eye(n, dtype=np.int64), claimed_weight=1)


def sylvester(t):
    '''
    Sylvester Hadamard matrix (sqrt(2) H)^{otimes t}; entry (r, c) = (-1)^{<r,c>}
    '''
    m = _tensor_power(((1, 1), (1, -1)), t, 'sylvester')
    return TernaryMatrix(m, claimed_weight=2**t)


def w43_power(t):
    '''
    t-fold tensor power of the W(4,3) matrix W43, a W(4^t, 3^t)
    '''
    m = _tensor_power(W43, t, 'w43_power')
    return TernaryMatrix(m, claimed_weight=3**t)


def _field_of(q):
    pk = is_prime_power(q)
    if(pk is None or pk[0] == 2):
        raise FieldError(f'q = {q} is not an odd prime power')
    return make_field(*pk)


def jacobsthal_matrix(F):
    '''
    Q[i][j] = chi(x_i - x_j) in rank order.  Q.Q^T = qI - J and Q.J = 0.
    '''
    chi = F.chi_table.astype(np.int64)
    return chi[F.add_table[:, F.neg_table]]


def legendre_matrix(F):
    '''
    L[i][j] = chi(x_i + x_j) in rank order.  L^T.L = qI - J.

    Parameters
    ----------
    F : FieldSpec

    Returns
    ----------
    L : TernaryMatrix
     Unverified (it is not a weighing matrix)
    '''
    check_cap(F.q, 'matrix_cap', 'matrix dimension n')
    chi = F.chi_table.astype(np.int64)
    return TernaryMatrix(chi[F.add_table])


def conference_matrix(q):
    '''
    Bordered Jacobsthal matrix [[0, j^T], [eps j, Q]] with eps = chi(-1).
    Skew-symmetric for q = 3 mod 4, symmetric for q = 1 mod 4; a W(q+1, q).
    '''
    F = _field_of(q)
    check_cap(q+1, 'matrix_cap', 'matrix dimension n')
    Q = jacobsthal_matrix(F)
    eps = 1 if q % 4 == 1 else -1
    C = np.zeros((q+1, q+1), dtype=np.int64)
    C[0, 1:] = 1
    C[1:, 0] = eps
    C[1:, 1:] = Q
    return TernaryMatrix(C, claimed_weight=q)


def paley_one(q):
    '''
    Paley construction I: (q+1) x (q+1) Hadamard matrix I + C for q = 3 mod 4
    '''
    if(q % 4 != 3):
        raise ValueError(f'Paley I needs q = 3 mod 4, got q = {q} = {q % 4} mod 4')
    check_cap(q+1, 'matrix_cap', 'matrix dimension n')
    C = conference_matrix(q).entries.astype(np.int64)
    return _certified(np.eye(q+1, dtype=np.int64) + C)


def paley_two(q):
    '''
    Paley construction II: (2q+2) x (2q+2) Hadamard matrix from the symmetric conference matrix C,
    [[C+I, C-I], [C-I, -C-I]] for q = 1 mod 4
    '''
    if(q % 4 != 1):
        raise ValueError(f'Paley II needs q = 1 mod 4, got q = {q} = {q % 4} mod 4')
    check_cap(2*q+2, 'matrix_cap', 'matrix dimension n')
    C = conference_matrix(q).entries.astype(np.int64)
    I = np.eye(q+1, dtype=np.int64)
    return _certified(np.block([[C+I, C-I], [C-I, -C-I]]))
