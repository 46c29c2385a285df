import json
import logging
import pkgutil
import sys


class QweighError(Exception):
    '''
    Base class for every error raised by qweigh.
    '''


class SizeCapError(QweighError, ValueError):
    pass


class FieldError(QweighError, ValueError):
    pass


class NotWeighingError(QweighError):
    '''
    Raised when M.M^T is not a multiple of the identity.

    Parameters
    ----------
    message : str
     Human readable description
    pair : tuple of int, optional
     First offending row pair (i, j).  For unequal diagonals this is (0, j).
    '''
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class MatrixFormatError(QweighError, ValueError):
    pass


class QuantumStateError(QweighError, ValueError):
    pass


class VerificationError(QweighError):
    pass


class Config():
    '''
    Class for handling tolerances, size caps and the default seed
    '''
    def __init__(self, config_file=None):
        if(config_file is None):
            config_data = pkgutil.get_data(__name__, 'config.json')
            self.config = json.loads(config_data)
        if(config_file is not None):
            with open(config_file, 'r') as file:
                self.config = json.load(file)

    def getpar(self, name):
        return self.config[name]


#Package-wide defaults
defaults = Config()


def check_cap(value, capname, what):
    '''
    Raise SizeCapError if value exceeds the configured cap

    Parameters
    ----------
    value : int
     Size to check
    capname : str
     Config key of the cap, e.g. 'matrix_cap'
    what : str
     Description used in the error message
    '''
    cap = defaults.getpar(capname)
    if(value > cap):
        raise SizeCapError(f'{what} = {value} exceeds the size cap of {cap}')


def configure_logging(verbose=False, stream=None):
    '''
    Attach a stderr handler to the qweigh logger.  The library itself installs no handlers.

    Parameters
    ----------
    verbose : bool, optional
     DEBUG level if True, WARNING otherwise
    stream : file-like, optional
     Defaults to sys.stderr
    '''
    logger = logging.getLogger('qweigh')
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    handler = logging.StreamHandler(stream if stream is not None else sys.stderr)
    handler.setFormatter(logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s'))
    logger.addHandler(handler)
    logger.setLevel(logging.DEBUG if verbose else logging.WARNING)
    return logger
