from .verify_all import *
