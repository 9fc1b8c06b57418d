from .device_model import *
from .experiment_model import *
from .config_model import *
