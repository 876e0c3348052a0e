"""
Grid sweeps of the inversion pipeline, written as field-map tables
"""

__author__ = "rdi developers"

import json
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pandas as pd
from tqdm.auto import tqdm

from rdi.cli.presets import build_scenario
from rdi.engine import (DEFAULT_HERMITICITY_TOL, dirac_residual,
                        field_strength, hermiticity_gate, invert_potential,
                        maxwell_current, scalar_inversion)
from rdi.jets import jets
from rdi.physicality import DEFAULT_RATIO_THRESHOLD
from rdi.states import evaluate_state

__all__ = [
    'FIELD_MAP_COLUMNS', 'SCALAR_MAP_COLUMNS', 'SWEEP_TOLERANCES',
    'FieldMapSweep'
]

FIELD_MAP_COLUMNS = [
    't', 'x', 'y', 'z', 'eA_0', 'eA_1', 'eA_2', 'eA_3', 'E_1', 'E_2', 'E_3',
    'B_1', 'B_2', 'B_3', 'J_0', 'J_1', 'J_2', 'J_3', 'hermiticity_residual',
    'dirac_residual'
]

SCALAR_MAP_COLUMNS = ['t', 'x', 'y', 'z', 'V', 'scalar_residual']

SWEEP_TOLERANCES = {
    'hermiticity': DEFAULT_HERMITICITY_TOL,
    'scalar potential': 1e-8,
    'physicality ratio': DEFAULT_RATIO_THRESHOLD,
}

FLOAT_FORMAT = '%.17g'


def _electromagnetic_rows(state, point):
    k = state.constants
    spinor = evaluate_state(state, point, k, order=3)
    A_raw, residual = invert_potential(spinor, constants=k)
    # the gate is applied to the whole grid afterwards
    potential = hermiticity_gate(A_raw, np.inf, k)
    fields = field_strength(potential)
    current = maxwell_current(fields)
    eA = np.asarray(jets.value_of(potential.covariant), dtype=float)
    columns = [eA[..., mu] for mu in range(4)]
    columns += [fields.E[..., i] for i in range(3)]
    columns += [fields.B[..., i] for i in range(3)]
    columns += [current.J[..., mu] for mu in range(4)]
    columns += [residual, dirac_residual(spinor, potential, constants=k)]
    return columns


def _scalar_rows(state, point, kappa):
    result = scalar_inversion(state, point, kappa=kappa, tol=np.inf)
    return [result.V, result.residual]


def _invert_row(built, point):
    if built.kind == 'scalar':
        values = _scalar_rows(built.state, point, built.kappa)
    else:
        values = _electromagnetic_rows(built.state, point)
    shape = point[0].shape
    return np.stack(list(point) + [np.broadcast_to(v, shape) for v in values],
                    axis=-1)


def _rows(config):
    '''
    The grid split into rows: one row per (t, x), holding every (y, z)

    Rows are the unit of parallel work; their order fixes the output order.
    '''
    nt, nx, ny, nz = config.shape
    points = [p.reshape(nt * nx, ny * nz) for p in config.points()]
    return [tuple(p[i] for p in points) for i in range(nt * nx)]


def _sweep(config, threads, progress):
    built = build_scenario(config)
    rows = _rows(config)
    columns = SCALAR_MAP_COLUMNS if built.kind == 'scalar' else FIELD_MAP_COLUMNS
    tolerances = dict(SWEEP_TOLERANCES)
    tolerances.update(
        {k: v for k, v in config.tolerances.items() if k in SWEEP_TOLERANCES})

    def work(point):
        return _invert_row(built, point)

    blocks = []
    with ThreadPoolExecutor(max_workers=threads) as pool:
        with tqdm(total=len(rows), disable=not progress) as pbar:
            # map yields in submission order whatever the completion order
            for i, block in enumerate(pool.map(work, rows)):
                blocks.append(block)
                pbar.set_description('Processed {} grid rows out of {}'.format(
                    i + 1, len(rows)))
                pbar.update(1)
    table = pd.DataFrame(np.concatenate(blocks, axis=0), columns=columns)

    if built.kind == 'scalar':
        gate, tol = 'scalar_residual', tolerances['scalar potential']
    else:
        gate, tol = 'hermiticity_residual', tolerances['hermiticity']
    worst = float(table[gate].max())
    summary = {
        'scenario': config.scenario,
        'kind': built.kind,
        'points': int(len(table)),
        'shape': list(config.shape),
        'gate': gate,
        'tolerance': tol,
        'max_residual': worst,
        'physical': bool(worst <= tol),
    }
    if built.kind != 'scalar':
        summary['max_dirac_residual'] = float(table['dirac_residual'].max())
    summary['physicality'] = None
    if built.physicality is not None:
        verdict = built.physicality(tolerances['physicality ratio'])
        summary['physicality'] = verdict.as_dict()
    return table, summary


class FieldMapSweep:
    '''
    Run the inversion over the grid of a scenario configuration

    Parameters
    ----------

    config   : ScenarioConfig

    threads  : int
               worker threads; rows are gathered in index order so the table
               does not depend on it

    progress : bool
               show a progress bar

    Attributes
    ----------

    computed : a pandas DataFrame, one record per grid point in (t, x, y, z)
               order with the columns of ``FIELD_MAP_COLUMNS`` (or
               ``SCALAR_MAP_COLUMNS`` for scalar scenarios). eA_mu in kg m/s,
               E in V/m, B in T, J in A/m^2, V in J.

    summary  : dict with the largest residuals, whether the gate passed, and
               the physicality verdict when the scenario has one

    physical : bool, every point passed the gate

    Examples
    --------

    >>> from rdi.cli import load_config
    >>> sweep = FieldMapSweep(load_config(preset='soft-coulomb'), progress=False)
    >>> sweep.computed.shape
    (101, 20)

    '''

    def __init__(self, config, threads=1, progress=True):

        aux = _sweep(config, threads, progress)

        self.config = config
        self.computed = aux[0]
        self.summary = aux[1]
        self.physical = aux[1]['physical']

    def write(self):
        '''
        Write the field map (CSV) and the summary (JSON)

        Returns
        -------

        (csv path, json path)
        '''
        directory = self.config.output['directory']
        os.makedirs(directory, exist_ok=True)
        csv_path = self.config.path('field_map')
        json_path = self.config.path('summary')
        self.computed.to_csv(csv_path, index=False, float_format=FLOAT_FORMAT)
        with open(json_path, 'w') as f:
            json.dump(self.summary, f, indent=2, sort_keys=True)
            f.write('\n')
        return csv_path, json_path
