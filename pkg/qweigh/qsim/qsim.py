import logging
from dataclasses import dataclass

import numpy as np

from qweigh.utils import QuantumStateError, check_cap, defaults

logger = logging.getLogger(__name__)


class StateVector():
    '''
    Normalized amplitude vector over a product of registers.  Immutable: every operation returns a new state.

    Parameters
    ----------
    dims : sequence of int
     Register dimensions, first register most significant in the flat index
    amplitudes : array-like
     Complex amplitudes, flat (length prod(dims)) or shaped as dims
    '''
    def __init__(self, dims, amplitudes):
        self.dims = tuple(int(d) for d in dims)
        if(len(self.dims) == 0 or any(d < 1 for d in self.dims)):
            raise QuantumStateError(f'invalid register dimensions {self.dims}')
        amps = np.array(amplitudes, dtype=np.complex128).reshape(-1)
        if(amps.size != int(np.prod(self.dims))):
            raise QuantumStateError(f'{amps.size} amplitudes do not fit registers {self.dims}')
        norm = np.vdot(amps, amps).real
        if(abs(norm - 1.0) > defaults.getpar('norm_tol')*max(1, amps.size)**0.5 + defaults.getpar('norm_tol')):
            raise QuantumStateError(f'state is not normalized (norm^2 = {norm})')
        amps.flags.writeable = False
        self.amplitudes = amps

    @property
    def size(self):
        return self.amplitudes.size

    def tensor(self):
        return self.amplitudes.reshape(self.dims)

    def norm(self):
        return float(np.sqrt(np.vdot(self.amplitudes, self.amplitudes).real))

    def fidelity(self, other):
        '''
        |<self|other>|^2, insensitive to global phase
        '''
        if(self.dims != other.dims):
            raise QuantumStateError(f'register mismatch {self.dims} vs {other.dims}')
        return float(abs(np.vdot(self.amplitudes, other.amplitudes))**2)

    def probabilities(self, register=None):
        '''
        Marginal distribution of one register in the computational basis (joint distribution if register is None)
        '''
        p = np.abs(self.amplitudes)**2
        if(register is None):
            return p
        _check_register(self, register)
        axes = tuple(a for a in range(len(self.dims)) if a != register)
        return p.reshape(self.dims).sum(axis=axes)

    def __repr__(self):
        return f'StateVector(dims={self.dims})'


def _check_register(state, register):
    if(register < 0 or register >= len(state.dims)):
        raise QuantumStateError(f'register {register} out of range for {len(state.dims)} registers')


def _from_tensor(dims, tensor):
    return StateVector(dims, np.asarray(tensor).reshape(-1))


def uniform_state(dims, register=None):
    '''
    Uniform superposition.  Flat over all joint indices when register is None, otherwise
    uniform over the given register with every other register in |0>.

    Parameters
    ----------
    dims : int or sequence of int
     Register dimensions
    register : int, optional
     Register carrying the superposition
    '''
    dims = (dims,) if np.isscalar(dims) else tuple(dims)
    check_cap(int(np.prod(dims)), 'state_cap', 'state dimension')
    if(register is None):
        n = int(np.prod(dims))
        return StateVector(dims, np.full(n, 1/np.sqrt(n), dtype=np.complex128))
    t = np.zeros(dims, dtype=np.complex128)
    index = [0]*len(dims)
    index[register] = slice(None)
    t[tuple(index)] = 1/np.sqrt(dims[register])
    return _from_tensor(dims, t)


def basis_state(dims, indices):
    dims = (dims,) if np.isscalar(dims) else tuple(dims)
    indices = (indices,) if np.isscalar(indices) else tuple(indices)
    check_cap(int(np.prod(dims)), 'state_cap', 'state dimension')
    t = np.zeros(dims, dtype=np.complex128)
    t[indices] = 1
    return _from_tensor(dims, t)


def _check_unitary(U, dim):
    U = np.asarray(U, dtype=np.complex128)
    if(U.shape != (dim, dim)):
        raise QuantumStateError(f'operator of shape {U.shape} does not act on a register of dimension {dim}')
    if(not np.allclose(U.conj().T @ U, np.eye(dim), atol=defaults.getpar('unitary_tol'), rtol=0)):
        raise QuantumStateError('operator is not unitary')
    return U


def _apply_on_axis(tensor, U, axis):
    out = np.tensordot(U, tensor, axes=([1], [axis]))
    return np.moveaxis(out, 0, axis)


def apply_unitary(state, U, register=0):
    '''
    Apply the unitary U to one register.

    Parameters
    ----------
    state : StateVector
    U : complex matrix
     Unitary within the configured tolerance, dimension equal to the register's
    register : int, optional
     Target register.  Defaults to 0.

    Returns
    ----------
    StateVector
    '''
    _check_register(state, register)
    U = _check_unitary(U, state.dims[register])
    return _from_tensor(state.dims, _apply_on_axis(state.tensor(), U, register))


def apply_controlled(state, U, target, control, value):
    '''
    Apply U to the target register on the branch where the control register holds value
    '''
    _check_register(state, target)
    _check_register(state, control)
    if(target == control):
        raise QuantumStateError('control and target must differ')
    U = _check_unitary(U, state.dims[target])
    t = np.array(state.tensor())
    index = [slice(None)]*len(state.dims)
    index[control] = value
    index = tuple(index)
    #the control axis disappears from the slice
    axis = target if target < control else target - 1
    t[index] = _apply_on_axis(t[index], U, axis)
    return _from_tensor(state.dims, t)


def apply_global_phase(state, phase):
    return StateVector(state.dims, state.amplitudes*np.exp(1j*phase))


def attach_register(state, vector):
    '''
    Append a new last register prepared in the given normalized vector
    '''
    vector = np.asarray(vector, dtype=np.complex128)
    return StateVector(state.dims + (vector.size,), np.kron(state.amplitudes, vector))


def detach_register(state, vector):
    '''
    Remove the last register, which must be in the product state vector (up to the configured tolerance)
    '''
    vector = np.asarray(vector, dtype=np.complex128)
    t = state.amplitudes.reshape(-1, state.dims[-1])
    reduced = t @ vector.conj()
    residual = t - np.outer(reduced, vector)
    if(np.linalg.norm(residual) > defaults.getpar('prob_tol')):
        raise QuantumStateError('register is entangled with the rest of the state')
    return StateVector(state.dims[:-1], reduced)


#------------------------------------------------------------------------------------
class MeasurementBasis():
    '''
    Orthonormal measurement basis; the columns of matrix are the basis vectors m_0..m_{n-1}
    '''
    def __init__(self, matrix):
        B = np.array(matrix, dtype=np.complex128)
        if(B.ndim != 2 or B.shape[0] != B.shape[1]):
            raise QuantumStateError(f'basis matrix must be square, got shape {B.shape}')
        if(not np.allclose(B.conj().T @ B, np.eye(B.shape[0]), atol=defaults.getpar('basis_tol'), rtol=0)):
            raise QuantumStateError('basis vectors are not orthonormal')
        B.flags.writeable = False
        self.matrix = B
        self.n = B.shape[0]

    @classmethod
    def computational(cls, n):
        return cls(np.eye(n))


@dataclass(frozen=True)
class Sample:
    seed: int = 0


@dataclass(frozen=True)
class Branch:
    outcome: int


@dataclass(frozen=True)
class Outcome:
    index: int
    probability: float
    state: StateVector


def _select(probs, mode):
    if(isinstance(mode, Branch)):
        index = int(mode.outcome)
        if(index < 0 or index >= probs.size):
            raise QuantumStateError(f'outcome {index} out of range')
        if(probs[index] < defaults.getpar('branch_tol')):
            raise QuantumStateError(f'outcome {index} has negligible probability {probs[index]:.3e}')
        return index
    if(isinstance(mode, Sample)):
        rng = np.random.default_rng(mode.seed)
        p = np.clip(probs, 0, None)
        return int(rng.choice(probs.size, p=p/p.sum()))
    raise QuantumStateError(f'unknown measurement mode {mode!r}')


def _basis_coefficients(state, basis, register):
    t = np.moveaxis(state.tensor(), register, 0).reshape(state.dims[register], -1)
    return basis.matrix.conj().T @ t


def outcome_distribution(state, basis, register=None):
    '''
    Probabilities |<m_i|psi>|^2 for every basis vector (marginalized over other registers)

    Parameters
    ----------
    state : StateVector
    basis : MeasurementBasis
    register : int, optional
     Measured register; the whole state (flattened) when None

    Returns
    ----------
    probs : numpy array
    '''
    if(register is None):
        state = StateVector((state.size,), state.amplitudes)
        register = 0
    _check_register(state, register)
    if(basis.n != state.dims[register]):
        raise QuantumStateError(f'basis of dimension {basis.n} does not match register dimension {state.dims[register]}')
    coeffs = _basis_coefficients(state, basis, register)
    probs = np.sum(np.abs(coeffs)**2, axis=1)
    if(abs(probs.sum() - 1) > defaults.getpar('prob_tol')):
        raise QuantumStateError(f'outcome probabilities sum to {probs.sum()}')
    return probs


def measure_in_basis(state, basis, mode, register=None):
    '''
    Measure in an orthonormal basis.

    Parameters
    ----------
    state : StateVector
    basis : MeasurementBasis
    mode : Sample or Branch
     Seeded sampling, or a forced outcome with its exact probability
    register : int, optional
     Measured register; the whole state when None

    Returns
    ----------
    Outcome
     index, probability and the renormalized post-measurement state
    '''
    dims = state.dims
    flat = register is None
    if(flat):
        state = StateVector((state.size,), state.amplitudes)
        register = 0
    probs = outcome_distribution(state, basis, register)
    index = _select(probs, mode)
    coeffs = _basis_coefficients(state, basis, register)[index]
    rest = [d for a, d in enumerate(state.dims) if a != register]
    collapsed = np.outer(basis.matrix[:, index], coeffs).reshape([state.dims[register]] + rest)
    collapsed = np.moveaxis(collapsed, 0, register) / np.sqrt(probs[index])
    post = StateVector(dims, collapsed.reshape(-1)) if flat else _from_tensor(state.dims, collapsed)
    logger.debug('basis measurement: outcome %d with probability %.12f', index, probs[index])
    return Outcome(index=index, probability=float(probs[index]), state=post)


def measure_register(state, register, mode):
    '''
    Measure one register in the computational basis
    '''
    _check_register(state, register)
    return measure_in_basis(state, MeasurementBasis.computational(state.dims[register]), mode, register=register)


def measure_membership(state, register, values, mode):
    '''
    Two-outcome projective measurement "does the register hold one of values?".

    Parameters
    ----------
    state : StateVector
    register : int
    values : sequence of int
    mode : Sample or Branch
     Branch(1) forces membership, Branch(0) its complement

    Returns
    ----------
    Outcome
     index 1 for membership, 0 otherwise
    '''
    _check_register(state, register)
    inside = np.zeros(state.dims[register], dtype=bool)
    inside[list(values)] = True
    marginal = state.probabilities(register)
    p_in = float(marginal[inside].sum())
    probs = np.array([max(0.0, 1 - p_in), p_in])
    index = _select(probs, mode)
    keep = inside if index == 1 else ~inside
    t = np.array(state.tensor())
    drop = [slice(None)]*len(state.dims)
    drop[register] = np.nonzero(~keep)[0]
    t[tuple(drop)] = 0
    post = _from_tensor(state.dims, t/np.sqrt(probs[index]))
    logger.debug('membership measurement on register %d: outcome %d with probability %.12f', register, index, probs[index])
    return Outcome(index=index, probability=float(probs[index]), state=post)
