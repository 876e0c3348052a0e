from .closed_form import *
from .rotation import *
from .translation import *
from .confined import *
from .boosted import *
