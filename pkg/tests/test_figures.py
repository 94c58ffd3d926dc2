import math

import numpy as np
import pytest
from scipy.special import gamma

from exotic_landau import figures
from exotic_landau.exceptions import ParameterError
from exotic_landau.model import ModelParams, derive

P = ModelParams(theta=0.3)


def test_fsurface_minimum():
    (t,) = figures.fsurface_table()
    assert t.meta["r"] == pytest.approx(math.sqrt(2))
    assert t.rows[:, 2].min() >= 1.0


def test_pnd_cell_sum_matches_marginal():
    t = figures.pnd_tables(pairs=((2, 2),), x_max=6.0, n_grid=241)[0]
    h = 6.0 / 240
    # int_0^inf exp(-x^2) x^(2n)/n! dx = Gamma(n + 1/2) / (2 n!)
    analytic = (gamma(2.5) / (2 * math.factorial(2))) ** 2
    assert np.sum(t.rows[:, 2]) * h * h == pytest.approx(analytic, rel=1e-2)


def test_density_self_point():
    t = figures.density_tables(P, z_abs=0.8, z_prime_abs=0.0, ms=(0,), n_arg=5, n_t=4)[0]
    assert t.rows[0, 2] == pytest.approx(1.0)


def test_qvcs_frequency_rescaling():
    p = figures.params_with_frequency(P, 2.5e-3)
    assert derive(p).effective_frequency == pytest.approx(2.5e-3)
    with pytest.raises(ParameterError):
        figures.params_with_frequency(P, 0.0)


def test_qvcs_density_maxima_decrease():
    tables = figures.qvcs_density_tables(P, n_angle=25, n_t=25)
    maxima = [t.max_value for t in tables[:3]]
    assert maxima[0] > 10 * maxima[1] > 100 * maxima[2]


def test_propagator_table_needs_theta():
    with pytest.raises(ParameterError):
        figures.propagator_tables(ModelParams())
