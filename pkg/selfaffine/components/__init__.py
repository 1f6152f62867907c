from . import ids, settings, errors
from . import linalg, words, potentials, pressure
from . import equilibrium, irreducibility, ifs, data_utils
