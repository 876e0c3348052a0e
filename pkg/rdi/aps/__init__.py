from .aps_algebra import *
