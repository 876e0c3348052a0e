import matplotlib.pyplot as plt
import numpy as np


def field_map(table, t=None, ax=None, scale=None):
    """Plot the electric field of a field-map snapshot.

    Arrows show (E_1, E_2) in the x-y plane, coloured by B_3.

    Parameters
    ----------
    table : pandas.DataFrame
        field map as produced by :class:`rdi.cli.FieldMapSweep`.
    t : float
        time of the snapshot; the first time in the table by default.
    ax : matplotlib Axes
        axes to draw on; a new figure is created by default.
    scale : float
        quiver scale, passed to matplotlib.

    Returns
    -------
    type
        matplotlib Axes.

    """
    if t is None:
        t = table['t'].iloc[0]
    snapshot = table[np.isclose(table['t'], t, rtol=1e-12, atol=0)]
    if snapshot.empty:
        raise ValueError('the table has no snapshot at t = {}'.format(t))
    if ax is None:
        fig, ax = plt.subplots(figsize=[6, 6])
    arrows = ax.quiver(snapshot['x'],
                       snapshot['y'],
                       snapshot['E_1'],
                       snapshot['E_2'],
                       snapshot['B_3'],
                       scale=scale,
                       cmap='viridis')
    plt.colorbar(arrows, ax=ax, label='B_3 (T)')
    ax.set_xlabel('x (m)')
    ax.set_ylabel('y (m)')
    ax.set_title('t = {:.4g} s'.format(t))
    ax.set_aspect('equal')
    return ax


def residual_map(table, column='hermiticity_residual', t=None, ax=None):
    """Scatter the residual of a field map on a log colour scale.

    Parameters
    ----------
    table : pandas.DataFrame
        field map as produced by :class:`rdi.cli.FieldMapSweep`.
    column : str
        residual column to show.
    t : float
        time of the snapshot; the first time in the table by default.

    Returns
    -------
    type
        matplotlib Axes.

    """
    if t is None:
        t = table['t'].iloc[0]
    snapshot = table[np.isclose(table['t'], t, rtol=1e-12, atol=0)]
    if ax is None:
        fig, ax = plt.subplots(figsize=[6, 6])
    # log10 of an exact zero
    values = np.log10(np.maximum(snapshot[column].to_numpy(), 1e-300))
    points = ax.scatter(snapshot['x'], snapshot['y'], c=values, s=10)
    plt.colorbar(points, ax=ax, label='log10 {}'.format(column))
    ax.set_xlabel('x (m)')
    ax.set_ylabel('y (m)')
    return ax
