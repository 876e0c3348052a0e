from .jets import *
