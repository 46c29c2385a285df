import logging

import numpy as np

from qweigh.utils import QuantumStateError, defaults
from .qsim import StateVector, _check_register, _from_tensor, attach_register, detach_register

logger = logging.getLogger(__name__)

#f value -> amount added mod 4 to the answer register
_ENC = {1: 1, 0: 0, -1: 3}

#1/2 (|0> + i|1> - |2> - i|3>)
KICKBACK_ANCILLA = 0.5*np.array([1, 1j, -1, -1j], dtype=np.complex128)


class QueryOracle():
    '''
    Ternary black box f: {0..n-1} -> {-1, 0, +1} with a query counter.

    Every classical query and every application of an f-dependent unitary counts one query.
    The counter can only grow; a fresh count needs a fresh oracle.

    Parameters
    ----------
    table : sequence of int
     Values f(0), .., f(n-1) in {-1, 0, +1}
    '''
    def __init__(self, table):
        t = np.array(table, dtype=np.int64).reshape(-1)
        if(not np.all(np.isin(t, (-1, 0, 1)))):
            raise ValueError('oracle values must lie in {-1, 0, +1}')
        t = t.astype(np.int8)
        t.flags.writeable = False
        self.__table = t
        self.__count = 0

    @property
    def n(self):
        return self.__table.size

    @property
    def queries(self):
        return self.__count

    @property
    def weight(self):
        return int(np.count_nonzero(self.__table))

    def _record(self):
        self.__count += 1

    def _values(self):
        return self.__table

    def query(self, i):
        '''
        Classical query of f(i)
        '''
        i = int(i)
        if(i < 0 or i >= self.n):
            raise IndexError(f'query index {i} outside the oracle domain [0, {self.n})')
        self._record()
        return int(self.__table[i])

    def __repr__(self):
        return f'QueryOracle(n={self.n}, queries={self.queries})'


def _check_domain(state, oracle, register):
    _check_register(state, register)
    if(state.dims[register] < oracle.n):
        raise QuantumStateError(f'register of dimension {state.dims[register]} is smaller than the oracle domain {oracle.n}')


def _phase_on(state, oracle, register, mask, phi):
    t = np.array(state.tensor())
    index = [slice(None)]*len(state.dims)
    index[register] = np.nonzero(mask)[0]
    t[tuple(index)] *= np.exp(1j*phi)
    return _from_tensor(state.dims, t)


def oracle_xor4(state, oracle, main=0, answer=1, inverse=False):
    '''
    |i>|a> -> |i>|a + enc(f(i)) mod 4>, enc(+1)=1, enc(0)=0, enc(-1)=3.  One query.

    Main-register values outside the oracle domain (dummy indices) are left untouched.

    Parameters
    ----------
    state : StateVector
    oracle : QueryOracle
    main : int, optional
     Register holding the query index
    answer : int, optional
     4-dimensional answer register
    inverse : bool, optional
     Subtract instead of add (the erasing call)
    '''
    _check_domain(state, oracle, main)
    _check_register(state, answer)
    if(state.dims[answer] != 4):
        raise QuantumStateError(f'answer register must have dimension 4, got {state.dims[answer]}')
    if(main == answer):
        raise QuantumStateError('main and answer registers must differ')
    t = np.array(state.tensor())
    out = t.copy()
    sign = -1 if inverse else 1
    values = oracle._values()
    for i in range(oracle.n):
        shift = sign*_ENC[int(values[i])]
        if(shift % 4 == 0):
            continue
        index = [slice(None)]*len(state.dims)
        index[main] = i
        index = tuple(index)
        axis = answer if answer < main else answer - 1
        out[index] = np.roll(t[index], shift, axis=axis)
    oracle._record()
    return _from_tensor(state.dims, out)


def oracle_phase(state, oracle, phi, register=0):
    '''
    Multiply the amplitude of |i> by e^{i phi} where f(i) = -1.  For phi = pi this is the
    sign oracle sum a_i|i> -> sum f(i) a_i |i> on the +-1 support.  One query.
    '''
    _check_domain(state, oracle, register)
    mask = oracle._values() == -1
    oracle._record()
    return _phase_on(state, oracle, register, mask, phi)


def oracle_mark_phase(state, oracle, phi, register=0):
    '''
    Multiply the amplitude of |i> by e^{i phi} where f(i) != 0.  One query.
    '''
    _check_domain(state, oracle, register)
    mask = oracle._values() != 0
    oracle._record()
    return _phase_on(state, oracle, register, mask, phi)


def kickback(state, oracle, register=0):
    '''
    Phase kick-back: sum a_i|i> -> sum f(i) a_i|i> with a single xor-mod-4 query.

    Attaches the ancilla 1/2(|0> + i|1> - |2> - i|3>), adds f(i) mod 4, applies the global
    phase i and detaches the (unchanged) ancilla.

    Parameters
    ----------
    state : StateVector
    oracle : QueryOracle
     Values must be +-1 wherever the register has support
    register : int, optional
     Register holding the query index
    '''
    _check_domain(state, oracle, register)
    marginal = state.probabilities(register)
    if(np.any(marginal[oracle.n:] > defaults.getpar('branch_tol'))):
        raise QuantumStateError('state has support outside the oracle domain')
    probs = marginal[:oracle.n]
    zeros = np.nonzero((oracle._values() == 0) & (probs > defaults.getpar('branch_tol')))[0]
    if(zeros.size > 0):
        raise QuantumStateError(f'f({int(zeros[0])}) = 0 on the support of the state')
    extended = attach_register(state, KICKBACK_ANCILLA)
    extended = oracle_xor4(extended, oracle, main=register, answer=len(extended.dims)-1)
    extended = StateVector(extended.dims, 1j*extended.amplitudes)
    return detach_register(extended, KICKBACK_ANCILLA)
