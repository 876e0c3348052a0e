from .curves import *
from .state_factory import *
