from .errors import *
from .decorator import *
from .parallel import *
from .circuit import *
from .lattice import *
from .modes import *
from .effective import *
from .chirality import *
from .openloss import *
from .dynamics import *
from .analysis import *
from .export import *
