from .utils import Config, defaults, check_cap, configure_logging
from .utils import QweighError, SizeCapError, FieldError, NotWeighingError, MatrixFormatError
from .utils import QuantumStateError, VerificationError
