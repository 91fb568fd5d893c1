from . import errors
from . import fparith
from . import disc19
from . import curves1
from . import curves2
from . import curves3
from . import search
from . import zeta
from . import tables
from . import store
from .errors import *
from .fparith import *
from .disc19 import *
from .curves1 import *
from .curves2 import *
from .curves3 import *
from .search import *
from .zeta import *
from .tables import *
from .store import *

__version__ = '0.1.0'

__all__ = ['OptCurveError', 'SingularCurveError', 'DegenerateRecipeError',
           'DegenerateCoverError', 'NotFoundError', 'InconsistentCountsError',
           'UnsupportedError', 'DatasetError']
for _mod in (fparith, disc19, curves1, curves2, curves3, search, zeta, tables,
             store):
    __all__.extend(_mod.__all__)
del _mod
