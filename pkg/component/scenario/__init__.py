from .outcome import *
from .spectrum import *
from .quench import *
from .chirality import *
from .dissipation import *
from .emission import *
from .budget import *
from .runner import *
