from .config import *
from .presets import *
from .sweep import *
from .cli import *
