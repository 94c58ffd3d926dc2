"""Physical parameters of the exotic Landau model and derived constants."""
from dataclasses import dataclass
import math

from .exceptions import CriticalPointError, ParameterError

CRITICAL_GUARD = 1e-12
CONFIG_KEYS = ("mass", "charge", "b_field", "theta", "hbar")


@dataclass(frozen=True)
class ModelParams:
    """Mass ``M``, charge ``e``, field ``B``, noncommutativity ``theta`` and ``hbar``."""

    mass: float = 1.0
    charge: float = 1.0
    b_field: float = 1.0
    theta: float = 0.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in CONFIG_KEYS:
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ParameterError(f"{name} must be finite, got {value!r}")
        if self.mass <= 0:
            raise ParameterError(f"mass must be positive, got {self.mass!r}")
        if self.charge == 0:
            raise ParameterError("charge must be nonzero")
        if self.hbar <= 0:
            raise ParameterError(f"hbar must be positive, got {self.hbar!r}")

    @property
    def eb(self):
        return self.charge * self.b_field

    @property
    def gap(self):
        """``1 - e B theta``; zero at the critical point."""
        return 1.0 - self.eb * self.theta

    def with_(self, **changes):
        values = {k: getattr(self, k) for k in CONFIG_KEYS}
        values.update(changes)
        return ModelParams(**values)


@dataclass(frozen=True)
class DerivedParams:
    effective_mass: float
    cyclotron: float
    effective_frequency: float
    big_theta: float
    kappa: float


def check_noncritical(params):
    if abs(params.gap) < CRITICAL_GUARD:
        raise CriticalPointError(
            f"e*B*theta = {params.eb * params.theta!r} is at the critical point (vanishing effective mass)"
        )


def derive(params):
    """Effective mass, cyclotron and effective frequencies, Theta and kappa.

    ``Theta = 1/(e B (1 - e B theta))`` is infinite when ``e B = 0``.
    """
    if params.mass <= 0:
        raise ParameterError(f"mass must be positive, got {params.mass!r}")
    check_noncritical(params)
    eb, gap, m = params.eb, params.gap, params.mass
    m_eff = m * gap
    big_theta = math.inf if eb == 0 else 1.0 / (eb * gap)
    return DerivedParams(
        effective_mass=m_eff,
        cyclotron=eb / m,
        effective_frequency=eb / m_eff,
        big_theta=big_theta,
        kappa=params.theta * m * m,
    )


def parse_config_text(text):
    """Parse ``key = value`` lines (``#`` starts a comment) into a dict of floats."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParameterError(f"line {lineno}: expected key = value, got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        try:
            values[key] = float(value)
        except ValueError:
            raise ParameterError(f"line {lineno}: {key} is not a number: {value!r}") from None
    return values


def params_from_mapping(values, base=None):
    base = base or ModelParams()
    unknown = sorted(set(values) - set(CONFIG_KEYS))
    if unknown:
        raise ParameterError(f"unknown model keys: {', '.join(unknown)}")
    return base.with_(**values)


def load_config(path):
    """Read model parameters from a key=value file; missing keys keep defaults.

    Returns ``(params, extra)`` where ``extra`` holds the non-model keys.
    """
    with open(path, encoding="utf-8") as fh:
        values = parse_config_text(fh.read())
    model_values = {k: v for k, v in values.items() if k in CONFIG_KEYS}
    extra = {k: v for k, v in values.items() if k not in CONFIG_KEYS}
    return params_from_mapping(model_values), extra
