import logging
import math

import pandas as pd

from qweigh.field import is_prime_power
from qweigh.qsim import grover_budget
from qweigh.utils import check_cap
from .reports import BoundsReport, SlsBoundsReport

logger = logging.getLogger(__name__)


def _check_eps(eps):
    if(not 0 <= eps < 1):
        raise ValueError(f'error probability eps = {eps} must lie in [0, 1)')


def wm_budget(n, k):
    '''
    Query budget of the weighing matrix protocol: ceil(pi/4 sqrt(n/k)) + 1, or 1 when k = n
    '''
    if(k == n):
        return 1
    return grover_budget(n, k) + 1


def classical_bounds(n, k, eps=0.0):
    '''
    The three classical decision-tree lower bounds for a W(n,k) weighing matrix problem.

    Parameters
    ----------
    n : int
    k : int
     1 <= k <= n
    eps : float, optional
     Error probability, 0 <= eps < 1

    Returns
    ----------
    BoundsReport
     bound_log3 = log_3 n + log_3(1-eps), bound_nk = (1-eps) n/k - 1/k,
     bound_log2 = log_2(n/(n-k+1)) + log_2(1-eps), quantum_upper = ceil(pi/4 sqrt(n/k)) + 1
    '''
    if(not 1 <= k <= n):
        raise ValueError(f'need 1 <= k <= n, got n = {n}, k = {k}')
    _check_eps(eps)
    bound_log3 = math.log(n, 3) + math.log(1-eps, 3)
    bound_nk = (1-eps)*n/k - 1/k
    bound_log2 = math.log2(n/(n-k+1)) + math.log2(1-eps)
    min_depth = max(0, math.ceil(max(bound_log3, bound_nk, bound_log2) - 1e-9))
    return BoundsReport(n=int(n), k=int(k), eps=float(eps), bound_log3=bound_log3, bound_nk=bound_nk,
                        bound_log2=bound_log2, quantum_upper=grover_budget(n, k)+1, min_depth=min_depth)


def sls_classical_budget(q):
    return math.ceil(math.log(q)/math.log(4/3)) + 3


def sls_bounds(q, eps=0.0):
    '''
    Classical lower bounds for the shifted Legendre sequence problem over F_q, as stated
    (log q + log((1-eps)/2)) and in proof form (log((1-eps) q + 1) - 1), with both upper budgets.
    '''
    _check_eps(eps)
    pk = is_prime_power(q)
    if(pk is None or pk[0] == 2):
        raise ValueError(f'q = {q} is not an odd prime power')
    stated = math.log2(q) + math.log2((1-eps)/2)
    proof = math.log2((1-eps)*q + 1) - 1
    return SlsBoundsReport(q=int(q), eps=float(eps), bound_stated=stated, bound_proof=proof,
                           classical_upper=sls_classical_budget(q), quantum_upper=2,
                           min_depth=max(0, math.ceil(proof - 1e-9)))


def corollary_family(n, k, t_max, eps=0.0):
    '''
    Tensor-power family W(n^t, k^t), t = 1..t_max, with gamma = 1 - log_n k.

    Parameters
    ----------
    n, k : int
     Parameters of the base weighing matrix
    t_max : int
    eps : float, optional

    Returns
    ----------
    pandas DataFrame
     columns t, N, K, gamma, quantum (ceil(pi/4 sqrt(N^gamma)) + 1), classical_lower ((1-eps) N^gamma - 1/K)
    '''
    if(n < 2 or not 1 <= k <= n):
        raise ValueError(f'need n >= 2 and 1 <= k <= n, got n = {n}, k = {k}')
    if(t_max < 1):
        raise ValueError(f't_max = {t_max} must be positive')
    _check_eps(eps)
    check_cap(n**t_max, 'matrix_cap', 'family dimension N')
    gamma = 1 - math.log(k)/math.log(n)
    rows = []
    for t in range(1, t_max+1):
        N, K = n**t, k**t
        ngamma = N/K
        rows.append({'t': t, 'N': N, 'K': K, 'gamma': gamma,
                     'quantum': math.ceil(math.pi/4*math.sqrt(ngamma)) + 1,
                     'classical_lower': (1-eps)*ngamma - 1/K})
    logger.debug('tensor-power family W(%d,%d): gamma = %.6f', n, k, gamma)
    return pd.DataFrame(rows, columns=['t', 'N', 'K', 'gamma', 'quantum', 'classical_lower'])
