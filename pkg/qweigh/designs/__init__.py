from .designs import TernaryMatrix, WeighingCertificate, W43, verify_weighing, tensor
from .designs import identity, sylvester, w43_power, paley_one, paley_two
from .designs import legendre_matrix, jacobsthal_matrix, conference_matrix
from .helpers import parse_matrix, serialize_matrix, read_matrix, write_matrix
