from .plot import *
from .util import *
