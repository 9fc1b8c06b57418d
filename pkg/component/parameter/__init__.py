from .app import *
from .device import *
from .directory import *
