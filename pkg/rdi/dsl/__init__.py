from .scenario_dsl import *
