from .physicality import *
