import logging
import math

import numpy as np
from scipy.optimize import brentq

from qweigh.utils import VerificationError, defaults
from .qsim import StateVector, uniform_state
from .oracle import oracle_mark_phase, kickback

logger = logging.getLogger(__name__)


def grover_budget(n, k):
    '''
    ceil(pi/4 sqrt(n/k)), the amplification query budget
    '''
    return math.ceil(math.pi/4*math.sqrt(n/k))


def amplification_rounds(n, k):
    '''
    Number m of amplification iterations: 0 for k = n, else ceil(pi/(4 theta) - 1/2)
    with sin(theta) = sqrt(k/n).  Always at most grover_budget(n, k).
    '''
    if(k == n):
        return 0
    theta = math.asin(math.sqrt(k/n))
    return max(1, math.ceil(math.pi/(4*theta) - 0.5 - 1e-9))


def final_phases(n, k, m):
    '''
    Phases (phi, psi) of the last iteration so that m-1 standard Grover iterations followed by
    -S_u(psi) S_f(phi) land exactly on the marked subspace.

    After m-1 iterations the state is a|g> + b|b> with a = sin((2m-1) theta), b = cos((2m-1) theta).
    The |b> component of the last iteration vanishes iff
    b - 2 cos(theta) (sin(theta) a cos(phi) + cos(theta) b) = 0, which has a root in [0, pi].
    '''
    theta = math.asin(math.sqrt(k/n))
    s, c = math.sin(theta), math.cos(theta)
    a, b = math.sin((2*m-1)*theta), math.cos((2*m-1)*theta)

    def residual(phi):
        return b - 2*c*(s*a*math.cos(phi) + c*b)

    if(residual(math.pi) <= 1e-13):
        #standard iteration already hits pi/2
        return math.pi, math.pi
    phi = brentq(residual, 0.0, math.pi, xtol=1e-15, rtol=4*np.finfo(float).eps)
    z = c*(s*a*np.exp(1j*phi) + c*b)
    psi = float(np.angle(1 - b/z)) % (2*math.pi)
    return phi, psi


def _diffuse(state, psi):
    '''
    -S_u(psi) = -(I + (e^{i psi} - 1)|u><u|) about the uniform state; no query
    '''
    v = state.amplitudes
    n = v.size
    overlap = v.sum()/np.sqrt(n)
    w = v + (np.exp(1j*psi) - 1)*overlap/np.sqrt(n)
    return StateVector(state.dims, -w)


def _strip_global_phase(state):
    v = state.amplitudes
    ref = v[np.argmax(np.abs(v))]
    return StateVector(state.dims, v*(abs(ref)/ref))


def grover_exact(oracle, n, k):
    '''
    Exact amplitude amplification: prepare 1/sqrt(k) sum_{f(i) != 0} |i>.

    Parameters
    ----------
    oracle : QueryOracle
     Ternary black box with exactly k nonzero values
    n : int
     Domain size
    k : int
     Number of nonzero values, 1 <= k <= n

    Returns
    ----------
    state : StateVector
    queries_used : int
     At most ceil(pi/4 sqrt(n/k)); zero when k = n
    '''
    if(oracle.n != n):
        raise ValueError(f'oracle domain {oracle.n} differs from n = {n}')
    if(k < 1 or k > n):
        raise ValueError(f'need 1 <= k <= n, got k = {k}, n = {n}')
    start = oracle.queries
    state = uniform_state((n,))
    m = amplification_rounds(n, k)
    if(m > grover_budget(n, k)):
        raise VerificationError(f'{m} iterations exceed the budget {grover_budget(n, k)}')
    if(m > 0):
        phi, psi = final_phases(n, k, m)
        logger.debug('amplification n=%d k=%d: %d iterations, final phases (%.15f, %.15f)', n, k, m, phi, psi)
        for _ in range(m-1):
            state = _diffuse(oracle_mark_phase(state, oracle, math.pi), math.pi)
        state = _diffuse(oracle_mark_phase(state, oracle, phi), psi)
    state = _strip_global_phase(state)
    marked = oracle._values() != 0
    weight = float(np.sum(np.abs(state.amplitudes[marked])**2))
    if(1 - weight > defaults.getpar('exact_tol')):
        raise VerificationError(f'amplification is not exact (marked weight {weight}); is k = {k} correct?')
    return state, oracle.queries - start


def construct_signed_state(oracle, n, k):
    '''
    Prepare |f> = 1/sqrt(k) sum f(i)|i>: exact amplification followed by one kick-back query.

    Returns
    ----------
    state : StateVector
    queries_used : int
     At most ceil(pi/4 sqrt(n/k)) + 1; exactly 1 when k = n
    '''
    start = oracle.queries
    state, _ = grover_exact(oracle, n, k)
    state = kickback(state, oracle)
    return state, oracle.queries - start
