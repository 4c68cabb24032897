"""Input distributions over {-1,+1}^n.

All four kinds are i.i.d. per-bit product measures, so each has a closed-form
marginal q = P(bit = +1). That marginal drives both the samplers and the
exact probability mass function used by the enumeration oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConfigError

KINDS = ("uniform", "binomial", "beta", "bernoulli")

# documented defaults: binomial is the low-entropy regime, bernoulli the
# heavily biased one
DEFAULT_BINOMIAL_P = 0.25
DEFAULT_BETA = (2.0, 5.0, 0.5)
DEFAULT_BERNOULLI_P = 0.75


@dataclass(frozen=True)
class DistributionSpec:
    kind: str
    p: float | None = None  # binomial / bernoulli bias
    a: float | None = None  # beta shape alpha
    b: float | None = None  # beta shape beta
    t: float | None = None  # beta discretization threshold

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(
                f"unknown distribution kind {self.kind!r}; valid kinds: {', '.join(KINDS)}"
            )
        if self.kind in ("binomial", "bernoulli"):
            if self.p is None or not 0.0 < self.p < 1.0:
                raise ConfigError(f"{self.kind} needs p in (0, 1), got {self.p}")
        elif self.kind == "beta":
            if self.a is None or self.b is None or self.a <= 0.0 or self.b <= 0.0:
                raise ConfigError(f"beta needs shapes a, b > 0, got a={self.a}, b={self.b}")
            if self.t is None or not 0.0 < self.t < 1.0:
                raise ConfigError(f"beta needs threshold t in (0, 1), got {self.t}")

    def canonical(self) -> str:
        """Parseable form, e.g. ``beta:a=2,b=5,t=0.5``."""
        if self.kind == "uniform":
            return "uniform"
        if self.kind == "beta":
            return f"beta:a={_num(self.a)},b={_num(self.b)},t={_num(self.t)}"
        return f"{self.kind}:p={_num(self.p)}"

    def slug(self) -> str:
        """Filesystem- and CSV-safe label (no commas or colons)."""
        if self.kind == "uniform":
            return "uniform"
        if self.kind == "beta":
            return f"beta-a{_num(self.a)}-b{_num(self.b)}-t{_num(self.t)}"
        return f"{self.kind}-p{_num(self.p)}"


def _num(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


UNIFORM = DistributionSpec("uniform")

_PARAM_KEYS = {"binomial": ("p",), "bernoulli": ("p",), "beta": ("a", "b", "t")}


def parse_dist(text: str) -> DistributionSpec:
    """Parse ``uniform``, ``binomial:p=0.25``, ``beta:a=2,b=5,t=0.5`` or
    ``bernoulli:p=0.75``. Omitted parameters take the defaults above."""
    kind, _, rest = text.strip().partition(":")
    kind = kind.strip().lower()
    if kind not in KINDS:
        raise ConfigError(
            f"unknown distribution {text!r}; valid kinds: {', '.join(KINDS)}"
        )
    params: dict[str, float] = {}
    if rest:
        for item in rest.split(","):
            key, eq, val = item.partition("=")
            key = key.strip()
            if not eq or key not in _PARAM_KEYS.get(kind, ()):
                raise ConfigError(f"bad parameter {item!r} for distribution kind {kind!r}")
            try:
                params[key] = float(val)
            except ValueError:
                raise ConfigError(f"non-numeric value in {item!r}") from None
    if kind == "uniform":
        return DistributionSpec("uniform")
    if kind == "beta":
        a, b, t = DEFAULT_BETA
        return DistributionSpec(
            "beta", a=params.get("a", a), b=params.get("b", b), t=params.get("t", t)
        )
    default_p = DEFAULT_BINOMIAL_P if kind == "binomial" else DEFAULT_BERNOULLI_P
    return DistributionSpec(kind, p=params.get("p", default_p))


def bit_probability(d: DistributionSpec) -> float:
    """Closed-form marginal P(bit = +1)."""
    if d.kind == "uniform":
        return 0.5
    if d.kind in ("binomial", "bernoulli"):
        return float(d.p)
    return _beta_tail(float(d.a), float(d.b), float(d.t))


@lru_cache(maxsize=None)
def _beta_tail(a: float, b: float, t: float) -> float:
    """P(Beta(a, b) >= t) via the regularized incomplete beta function."""
    return 1.0 - _betainc(a, b, t)


def _betainc(a: float, b: float, x: float) -> float:
    # Lentz continued-fraction evaluation of I_x(a, b), double precision.
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - math.exp(ln_front) * _betacf(b, a, 1.0 - x) / b


def _betacf(a: float, b: float, x: float) -> float:
    tiny = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, 300):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-15:
            return h
    raise ArithmeticError(f"incomplete beta did not converge for a={a}, b={b}, x={x}")


def sample_batch(d: DistributionSpec, n: int, s: int, rng: np.random.Generator) -> np.ndarray:
    """Draw s independent assignments as an (s, n) int8 matrix of +-1 entries.

    Beta draws one continuous sample per bit and thresholds it; the other
    kinds draw the bit directly from its Bernoulli marginal.
    """
    if n < 1:
        raise ConfigError(f"dimension must be >= 1, got {n}")
    if s < 1:
        raise ConfigError(f"sample count must be >= 1, got {s}")
    if d.kind == "beta":
        plus = rng.beta(d.a, d.b, size=(s, n)) >= d.t
    else:
        plus = rng.random((s, n)) < bit_probability(d)
    return np.where(plus, 1, -1).astype(np.int8)


def sample_assignment(d: DistributionSpec, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw one assignment; consumes the stream exactly like sample_batch(s=1)."""
    return sample_batch(d, n, 1, rng)[0]


def pmf(d: DistributionSpec, x) -> float:
    """Exact probability of one assignment under the product measure."""
    x = np.asarray(x)
    if x.ndim != 1 or not np.all(np.abs(x) == 1):
        raise ConfigError("assignment must be a 1-D vector of +-1 entries")
    q = bit_probability(d)
    k = int(np.count_nonzero(x == 1))
    return q**k * (1.0 - q) ** (x.size - k)


def pmf_batch(d: DistributionSpec, X: np.ndarray) -> np.ndarray:
    """Vectorized pmf over the rows of an (m, n) assignment matrix."""
    q = bit_probability(d)
    k = np.count_nonzero(X == 1, axis=1)
    return q**k * (1.0 - q) ** (X.shape[1] - k)
