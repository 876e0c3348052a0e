"""
Run the whole verification suite at once
"""

__author__ = "rdi developers"

import numpy as np
import pandas as pd
from tqdm.auto import tqdm

from rdi.catalog import (Confined3dParams, RotationScenarioParams,
                         TranslationScenarioParams,
                         boosted_landau_closed_form, confined_3d_closed_form,
                         cyclotron_expansion_check, nonlinear_potential,
                         quantum_gap, radiation_reaction_gap,
                         resonant_frequency, rotation_3d_closed_form,
                         rotation_classical_fields, rotation_closed_form,
                         scalar_potential_closed_form, soft_coulomb,
                         translation_classical_fields, translation_closed_form)
from rdi.engine import (FourPotential, dirac_current, dirac_residual,
                        field_strength, hermiticity_gate,
                        homogeneous_maxwell_residual, invert_point,
                        invert_potential, scalar_inversion)
from rdi.physicality import bremsstrahlung_check, synchrotron_check
from rdi.states import (PhysicalConstants, SoftCoreProfile,
                        accelerated_boost_state, boosted_landau,
                        evaluate_state, nonlinear_state,
                        rotating_confined_3d_state, scalar_state)
from rdi.util.util import relative_difference

__all__ = [
    'VerifyAll', 'CHECKS', 'DEFAULT_TOLERANCES', 'RING_ROTATION',
    'TRANSFER_TRANSLATION'
]

NATURAL = PhysicalConstants.natural()

# reference scenarios, SI
RING_ROTATION = {'r0': 2e-6, 'B0': 0.35, 'omega': -61.55e9}
TRANSFER_TRANSLATION = {'L': 10e-6, 'T': 1e-9, 'B0': 1.0}

DEFAULT_TOLERANCES = {
    'potential': 1e-9,
    'fields': 1e-9,
    'current': 1e-6,
    'dirac residual': 1e-9,
    'accelerated boost residual': 1e-8,
    'homogeneous maxwell': 1e-9,
    'quantum gap': 1e-6,
    'resonance constancy': 1e-6,
    'resonance offset': 1e-3,
    'resonant frequency': 1e-3,
    'cyclotron expansion': 5e-2,
    'physicality decades': 2.0,
    'physicality energy': 1e-6,
    'velocity': 1e-10,
    'reachability': 1e-3,
    'hermiticity': 1e-8,
    'scalar potential': 1e-9,
    'jet derivatives': 1e-6,
}


def _cloud(rng, n, t, x, y, z):
    return tuple(rng.uniform(lo, hi, n) for lo, hi in (t, x, y, z))


def _grid(t, x, y, z, count=5):
    axes = [np.linspace(lo, hi, count) for lo, hi in (t, x, y, z)]
    return tuple(np.meshgrid(*axes, indexing='ij'))


def _row(check, value, tolerance, below=True):
    value = float(value)
    passed = value < tolerance if below else value > tolerance
    return {
        'Check': check,
        'Passed': bool(passed),
        'Value': value,
        'Tolerance': float(tolerance)
    }


def _natural_rotation():
    return RotationScenarioParams(1.0, -0.3, 0.5, NATURAL)


def _natural_translation(constants=NATURAL):
    return TranslationScenarioParams.sinusoidal(1.0, 10.0, 1.0, constants)


def _current_floor(closed, constants, length):
    # a vanishing current is compared on the scale curl B / mu0 over length
    field = np.linalg.norm(closed.E) / constants.c + np.linalg.norm(closed.B)
    return field / (constants.mu0 * length)


def _oracle_rows(name, report, closed, tol, fields=True, length=1.0):
    rows = [
        _row('{} oracle: potential'.format(name),
             relative_difference(report.potential.contravariant, closed.eA),
             tol['potential'])
    ]
    if fields:
        rows.append(
            _row('{} oracle: fields'.format(name),
                 max(relative_difference(report.E, closed.E),
                     relative_difference(report.B, closed.B)), tol['fields']))
    if fields and closed.mu0_eJ is not None:
        rows.append(
            _row('{} oracle: current'.format(name),
                 relative_difference(
                     report.maxwell_current, closed.J,
                     floor=_current_floor(closed, closed.constants, length)),
                 tol['current']))
    return rows


def _check_rotation_oracle(tol, rng):
    params = _natural_rotation()
    point = _cloud(rng, 200, (0, 2 * np.pi / abs(params.omega)), (-2.5, 2.5),
                   (-2.5, 2.5), (-1, 1))
    report = invert_point(params.state(), point)
    closed = rotation_closed_form(params, point)
    rows = _oracle_rows('rotation', report, closed, tol)
    rows.append(
        _row('rotation: Dirac current',
             relative_difference(report.dirac_current, closed.J_D),
             tol['fields']))
    return rows


def _check_translation_oracle(tol, rng):
    params = _natural_translation()
    point = _cloud(rng, 200, (0, 10.0), (-2, 2), (-2, 2), (-1, 1))
    report = invert_point(params.state(), point)
    return _oracle_rows('translation', report,
                        translation_closed_form(params, point), tol)


def _check_boosted_oracle(tol, rng):
    point = _cloud(rng, 200, (-1, 1), (-2, 2), (-2, 2), (-1, 1))
    report = invert_point(boosted_landau(0.7, 1.0, NATURAL), point)
    return _oracle_rows('boosted Landau', report,
                        boosted_landau_closed_form(0.7, 1.0, point, NATURAL), tol)


def _check_confined_oracle(tol, rng):
    params = Confined3dParams.soft_core(1.0, 0.5, 0.3, NATURAL)
    point = _cloud(rng, 200, (0, 1), (-2, 2), (-2, 2), (-10, 10))
    report = invert_point(params.state(), point)
    closed = confined_3d_closed_form(params, point)
    rows = _oracle_rows('confined', report, closed, tol, fields=False)
    rows.append(
        _row('confined oracle: magnetic field',
             relative_difference(report.B, closed.B), tol['fields']))

    z = np.linspace(-10, 10, 101)
    zero = np.zeros_like(z)
    coulomb = Confined3dParams.soft_core(1.0, 0.0, 0.0, NATURAL)
    report = invert_point(coulomb.state(), (zero, zero, zero, z))
    rows.append(
        _row('soft Coulomb oracle',
             relative_difference(report.potential.contravariant[..., 0],
                                 soft_coulomb(1.0, z, NATURAL)),
             tol['potential']))
    return rows


def _check_rotation_3d_oracle(tol, rng):
    params = _natural_rotation()
    profile = SoftCoreProfile(1.0)
    point = _cloud(rng, 200, (0, 2 * np.pi / abs(params.omega)), (-2.5, 2.5),
                   (-2.5, 2.5), (-5, 5))
    state = rotating_confined_3d_state(params.r0, params.omega, params.B0,
                                       profile, NATURAL)
    A_raw, _ = invert_potential(state, point)
    potential = hermiticity_gate(A_raw, tol['hermiticity'], NATURAL)
    closed = rotation_3d_closed_form(params, profile, point)
    return [
        _row('rotating confined oracle: potential',
             relative_difference(potential.contravariant, closed.eA),
             tol['potential'])
    ]


def _check_homogeneous_maxwell(tol, rng):
    params = _natural_rotation()
    point = _cloud(rng, 100, (0, 20), (-2, 2), (-2, 2), (-1, 1))
    A_raw, _ = invert_potential(params.state(), point)
    fields = field_strength(hermiticity_gate(A_raw, tol['hermiticity'], NATURAL))
    rows = [
        _row('homogeneous Maxwell: rotation',
             homogeneous_maxwell_residual(fields), tol['homogeneous maxwell'])
    ]
    translation = _natural_translation()
    A_raw, _ = invert_potential(translation.state(), point)
    fields = field_strength(hermiticity_gate(A_raw, tol['hermiticity'], NATURAL))
    rows.append(
        _row('homogeneous Maxwell: translation',
             homogeneous_maxwell_residual(fields), tol['homogeneous maxwell']))
    return rows


def _check_dirac_residuals(tol, rng):
    rows = []
    rotation = _natural_rotation()
    translation = _natural_translation()
    confined = Confined3dParams.soft_core(1.0, 0.5, 0.3, NATURAL)
    coulomb = Confined3dParams.soft_core(1.0, 0.0, 0.0, NATURAL)
    pairs = [
        ('rotation', rotation.state(),
         lambda p: rotation_closed_form(rotation, p), (0, 20)),
        ('translation', translation.state(),
         lambda p: translation_closed_form(translation, p), (0, 10)),
        ('confined', confined.state(),
         lambda p: confined_3d_closed_form(confined, p), (0, 1)),
        ('soft Coulomb', coulomb.state(),
         lambda p: confined_3d_closed_form(coulomb, p), (0, 1)),
        ('boosted Landau', boosted_landau(0.7, 1.0, NATURAL),
         lambda p: boosted_landau_closed_form(0.7, 1.0, p, NATURAL), (-1, 1)),
    ]
    for name, state, closed, window in pairs:
        point = _grid(window, (-2, 2), (-2, 2), (-3, 3))
        potential = FourPotential(closed(point).covariant, NATURAL)
        rows.append(
            _row('Dirac residual: {}'.format(name),
                 np.max(dirac_residual(state, potential, point)),
                 tol['dirac residual']))
    state = accelerated_boost_state(0.3, 1.0, NATURAL, window=(0, 2))
    point = _grid((0, 2), (-2, 2), (-2, 2), (-3, 3))
    report = invert_point(state, point)
    rows.append(
        _row('Dirac residual: accelerated boost', np.max(report.dirac_residual),
             tol['accelerated boost residual']))
    return rows


def _check_quantum_gaps(tol, rng):
    rows = []
    ratios = []
    for s in (1.0, 0.5, 0.25):
        k = NATURAL.replace(hbar=s)
        params = RotationScenarioParams(1.0, -0.3, 0.5, k)
        point = _cloud(rng, 50, (0, 20), (-2, 2), (-2, 2), (-1, 1))
        report = invert_point(params.state(), point)
        gap = np.linalg.norm(report.E - rotation_classical_fields(params, point).E,
                             axis=-1)
        expected = quantum_gap(params)
        rows.append(
            _row('rotation quantum gap (hbar x {})'.format(s),
                 np.max(np.abs(gap - expected)) / expected, tol['quantum gap']))
        ratios.append(np.mean(gap) / s)

        translation = _natural_translation(k)
        point = _cloud(rng, 50, (0.5, 9.5), (-2, 2), (-2, 2), (-1, 1))
        report = invert_point(translation.state(), point)
        classical = translation_classical_fields(translation, point)
        gap = classical.E[..., 0] - report.E[..., 0]
        expected = radiation_reaction_gap(translation, point[0])
        rows.append(
            _row('translation radiation-reaction gap (hbar x {})'.format(s),
                 relative_difference(gap, expected), tol['quantum gap']))
    rows.append(
        _row('rotation quantum gap linear in hbar',
             (max(ratios) - min(ratios)) / max(ratios), tol['quantum gap']))
    return rows


def _current_variation(params, x, y, samples=64):
    period = 2 * np.pi / abs(params.omega)
    t = np.linspace(0, period, samples)
    point = (t, np.full_like(t, x), np.full_like(t, y), np.zeros_like(t))
    J = np.linalg.norm(invert_point(params.state(), point).maxwell_current, axis=-1)
    return (J.max() - J.min()) / J.max()


def _check_resonance(tol, rng):
    resonant = RotationScenarioParams.resonant(1.0, 0.5, NATURAL)
    detuned = RotationScenarioParams(1.0, 1.01 * resonant.omega, 0.5, NATURAL)
    w0 = resonant_frequency(0.35)
    residuals = [
        cyclotron_expansion_check(1.0, NATURAL.replace(hbar=s)) / s**2
        for s in (1e-2, 5e-3, 2.5e-3)
    ]
    return [
        _row('resonance: current constant over a period',
             _current_variation(resonant, 0.5, 0.3), tol['resonance constancy']),
        _row('resonance: 1% detuning modulates the current',
             _current_variation(detuned, 0.5, 0.3), tol['resonance offset'],
             below=False),
        _row('resonant frequency at 0.35 T', abs(w0 / RING_ROTATION['omega'] - 1),
             tol['resonant frequency']),
        _row('cyclotron expansion remainder is second order in hbar',
             max(abs(r / -0.5 - 1) for r in residuals), tol['cyclotron expansion'])
    ]


def _check_physicality(tol, rng):
    rotation = RotationScenarioParams(**RING_ROTATION)
    translation = TranslationScenarioParams.sinusoidal(**TRANSFER_TRANSLATION)
    synchrotron = synchrotron_check(rotation)
    bremsstrahlung = bremsstrahlung_check(translation)
    k = translation.constants
    L, T = TRANSFER_TRANSLATION['L'], TRANSFER_TRANSLATION['T']
    # low-speed Larmor integral of the sinusoidal transfer, and m v^2/2 at peak speed
    radiated = k.e**2 * (L / 2)**2 * (np.pi / T)**4 * (T / 2) / (
        6 * np.pi * k.epsilon_0 * k.c**3)
    kinetic = 0.5 * k.m * translation.max_speed**2
    return [
        _row('synchrotron loss ratio within decades of 1e-11',
             abs(np.log10(synchrotron.ratio) + 11), tol['physicality decades']),
        _row('bremsstrahlung loss ratio within decades of 1e-14',
             abs(np.log10(bremsstrahlung.ratio) + 14), tol['physicality decades']),
        _row('bremsstrahlung radiated energy matches the Larmor integral',
             relative_difference(bremsstrahlung.radiated_energy, radiated),
             tol['physicality energy']),
        _row('bremsstrahlung kinetic energy matches m v^2/2',
             relative_difference(bremsstrahlung.kinetic_energy, kinetic),
             tol['physicality energy']),
        _row('synchrotron verdict passes', 0.0 if synchrotron.passed else 1.0, 0.5),
        _row('bremsstrahlung verdict passes', 0.0 if bremsstrahlung.passed else 1.0,
             0.5)
    ]


def _check_velocity(tol, rng):
    params = RotationScenarioParams(**RING_ROTATION)
    period = 2 * np.pi / abs(params.omega)
    point = _cloud(rng, 50, (0, period), (-4e-6, 4e-6), (-4e-6, 4e-6), (0, 0))
    current = dirac_current(params.state(), point)
    speed = np.linalg.norm(current.velocity, axis=-1)
    return [
        _row('bilinear speed equals r0|omega|',
             np.max(np.abs(speed / params.speed - 1)), tol['velocity'])
    ]


def _check_reachability(tol, rng):
    params = TranslationScenarioParams.sinusoidal(1.0, 2.0, 1.0, NATURAL)
    n = 200
    t = np.concatenate([rng.uniform(0.1, 0.9, n // 2), rng.uniform(1.1, 1.9, n // 2)])
    point = (t, rng.uniform(-1, 1, n), rng.uniform(-1, 1, n), rng.uniform(-1, 1, n))
    _, broken = invert_potential(params.state(normalized=False), point)
    _, reachable = invert_potential(params.state(), point)
    return [
        _row('unnormalized translation fails the gate',
             np.mean(broken > tol['reachability']), 0.95, below=False),
        _row('normalized translation passes the gate', np.max(reachable),
             tol['hermiticity'])
    ]


def _check_scalar(tol, rng):
    k = PhysicalConstants()
    xi = 1e-12
    energy = 0.2e6 * k.e
    z = np.linspace(-5 * xi, 5 * xi, 41)
    zero = np.zeros_like(z)
    point = (zero, zero, zero, z)
    result = scalar_inversion(scalar_state(xi, energy, k), point, tol=tol['scalar potential'])
    kappa = 1e-27
    nonlinear = scalar_inversion(nonlinear_state(xi, k), point, kappa=kappa,
                                 tol=tol['scalar potential'])
    return [
        _row('scalar potential of the arctan state',
             relative_difference(result.V,
                                 scalar_potential_closed_form(xi, energy, z, k)),
             tol['scalar potential']),
        _row('scalar state needs no electromagnetic field', np.max(result.residual),
             tol['scalar potential']),
        _row('nonlinear scalar potential',
             relative_difference(nonlinear.V,
                                 nonlinear_potential(xi, z, kappa, k)),
             tol['scalar potential'])
    ]


def _finite_difference_error(state, point, h):
    spinor = evaluate_state(state, point, order=2)
    gradient = spinor.psi.gradient
    hessian = spinor.psi.hessian
    c = state.constants.c
    fd_gradient = []
    fd_hessian = []
    for mu in range(4):
        step = [0.0] * 4
        step[mu] = h / c if mu == 0 else h
        plus = tuple(p + s for p, s in zip(point, step))
        minus = tuple(p - s for p, s in zip(point, step))
        up = evaluate_state(state, plus, order=1).psi
        down = evaluate_state(state, minus, order=1).psi
        fd_gradient.append((up.value - down.value) / (2 * h))
        fd_hessian.append((up.gradient - down.gradient) / (2 * h))
    return max(relative_difference(gradient, np.stack(fd_gradient)),
               relative_difference(hessian, np.stack(fd_hessian)))


def _check_jet_derivatives(tol, rng):
    rotation = _natural_rotation()
    translation = _natural_translation()
    states = [
        ('rotation', rotation.state(), (0, 20)),
        ('translation', translation.state(), (0.5, 9.5)),
        ('confined', Confined3dParams.soft_core(1.0, 0.5, 0.3, NATURAL).state(),
         (0, 1)),
        ('boosted Landau', boosted_landau(0.7, 1.0, NATURAL), (-1, 1)),
        ('scalar', scalar_state(1.0, 0.3, NATURAL), (0, 1)),
        ('nonlinear', nonlinear_state(1.0, NATURAL), (0, 1)),
        ('accelerated boost', accelerated_boost_state(0.3, 1.0, NATURAL, (0, 2)),
         (0.1, 1.9)),
    ]
    rows = []
    for name, state, window in states:
        point = _cloud(rng, 100, window, (-1.5, 1.5), (-1.5, 1.5), (-1, 1))
        rows.append(
            _row('jet derivatives vs finite differences: {}'.format(name),
                 _finite_difference_error(state, point, 1e-5),
                 tol['jet derivatives']))
    return rows


CHECKS = {
    'rotation oracle': _check_rotation_oracle,
    'translation oracle': _check_translation_oracle,
    'boosted Landau oracle': _check_boosted_oracle,
    'confined oracle': _check_confined_oracle,
    'rotating confined oracle': _check_rotation_3d_oracle,
    'homogeneous Maxwell': _check_homogeneous_maxwell,
    'Dirac residuals': _check_dirac_residuals,
    'quantum gaps': _check_quantum_gaps,
    'resonance': _check_resonance,
    'physicality': _check_physicality,
    'velocity': _check_velocity,
    'reachability': _check_reachability,
    'scalar inversion': _check_scalar,
    'jet derivatives': _check_jet_derivatives,
}


def _verify_all(groups, tolerances, seed, progress):
    tol = dict(DEFAULT_TOLERANCES)
    tol.update(tolerances or {})
    unknown = set(tolerances or {}) - set(DEFAULT_TOLERANCES)
    if unknown:
        raise ValueError('unknown tolerance {!r}'.format(sorted(unknown)[0]))
    groups = list(CHECKS) if groups is None else list(groups)
    for group in groups:
        if group not in CHECKS:
            raise ValueError('unknown check group {!r}'.format(group))
    rng = np.random.default_rng(seed)
    rows = []
    with tqdm(total=len(groups), disable=not progress) as pbar:
        for i, group in enumerate(groups):
            rows.extend(CHECKS[group](tol, rng))
            pbar.set_description('Processed {} check groups out of {}'.format(
                i + 1, len(groups)))
            pbar.update(1)
    return pd.DataFrame(rows, columns=['Check', 'Passed', 'Value', 'Tolerance'])


class VerifyAll:
    '''
    Run the verification checks at once

    Parameters
    ----------

    groups     : list of str, optional
                 names from ``CHECKS``; all groups by default

    tolerances : dict, optional
                 overrides of ``DEFAULT_TOLERANCES``

    seed       : int
                 seed of the random point clouds

    progress   : bool
                 show a progress bar

    Attributes
    ----------

    computed   : a pandas DataFrame with the columns Check, Passed, Value and
                 Tolerance, one row per check

    passed     : bool, every check passed

    Examples
    --------

    >>> from rdi.verification import VerifyAll
    >>> fit = VerifyAll(['resonance'], progress=False)
    >>> fit.passed
    True

    '''

    def __init__(self, groups=None, tolerances=None, seed=0, progress=True):

        aux = _verify_all(groups, tolerances, seed, progress)

        self.computed = aux
        self.passed = bool(aux['Passed'].all())

    @property
    def failures(self):
        return self.computed[~self.computed['Passed']]
