import unittest
import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt
import numpy as np
import pandas as pd
from rdi.cli import FIELD_MAP_COLUMNS
from rdi.util.plot import field_map, residual_map


def _table():
    x, y = np.meshgrid(np.linspace(-1, 1, 5), np.linspace(-1, 1, 5), indexing='ij')
    n = x.size
    table = pd.DataFrame(np.zeros((2 * n, len(FIELD_MAP_COLUMNS))),
                         columns=FIELD_MAP_COLUMNS)
    table['t'] = np.repeat([0.0, 1.0], n)
    table['x'] = np.tile(x.ravel(), 2)
    table['y'] = np.tile(y.ravel(), 2)
    table['E_1'] = -table['y']
    table['E_2'] = table['x']
    table['B_3'] = 1.0
    table['hermiticity_residual'] = np.linspace(0, 1e-10, 2 * n)
    return table


class Plot_Tester(unittest.TestCase):
    def tearDown(self):
        plt.close('all')

    def test_Plot_field_map(self):
        ax = field_map(_table())
        self.assertEqual(ax.get_xlabel(), 'x (m)')
        self.assertEqual(ax.get_title(), 't = 0 s')
        ax = field_map(_table(), t=1.0)
        self.assertEqual(ax.get_title(), 't = 1 s')
        with self.assertRaises(ValueError):
            field_map(_table(), t=0.5)

    def test_Plot_residual_map(self):
        fig, ax = plt.subplots()
        self.assertIs(residual_map(_table(), ax=ax), ax)
        self.assertEqual(len(ax.collections), 1)


if __name__ == '__main__':
    unittest.main()
