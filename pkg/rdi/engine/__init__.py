from .rdi_engine import *
