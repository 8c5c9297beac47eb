"""Argument-reduced trigonometry in units of pi.

``sinpi(x) = sin(pi*x)`` and ``cospi(x) = cos(pi*x)`` reduce ``x`` exactly
before multiplying by pi, so integer (half-integer) arguments give exact
zeros of sin (cos) and large arguments keep full relative accuracy.
"""

import numpy as np

# Below this |pi*x| sinc switches to its Taylor series; the next omitted term
# (pi*x)**8/362880 is < 3e-38 there.
SINC_TAYLOR_THRESHOLD = 1e-4


def sinpi(x):
    x = np.asarray(x, dtype=float)
    r = np.fmod(x, 2.0)  # exact, r in (-2, 2)
    r = np.where(r > 1.0, r - 2.0, r)
    r = np.where(r < -1.0, r + 2.0, r)  # r in [-1, 1]
    # sin(pi r) = sin(pi (1 - r)) for r > 1/2, mirrored for r < -1/2
    folded = np.where(r > 0.5, 1.0 - r, np.where(r < -0.5, -1.0 - r, r))
    return np.sin(np.pi * folded)


def cospi(x):
    x = np.asarray(x, dtype=float)
    r = np.fmod(np.abs(x), 2.0)
    r = np.where(r > 1.0, 2.0 - r, r)  # r in [0, 1]
    return np.where(r < 0.25, np.cos(np.pi * r), np.sin(np.pi * (0.5 - r)))


def sinc(x):
    """Normalized sinc, ``sin(pi x) / (pi x)`` with ``sinc(0) = 1``."""
    x = np.asarray(x, dtype=float)
    y = np.pi * x
    y2 = y * y
    series = 1.0 - y2 / 6.0 * (1.0 - y2 / 20.0 * (1.0 - y2 / 42.0))
    small = np.abs(y) < SINC_TAYLOR_THRESHOLD
    safe = np.where(small, 1.0, x)
    return np.where(small, series, sinpi(safe) / (np.pi * safe))


def expj_pi(a):
    """``exp(j*pi*a)`` with exact zeros in either component where they belong."""
    return cospi(a) + 1j * sinpi(a)


def dirichlet(d, n):
    """``sin(pi d) / (n sin(pi d / n))`` including its removable singularities.

    At ``d / n`` a nonzero integer ``k`` the limit is ``(-1)**(k*(n-1))``.
    """
    d = np.asarray(d, dtype=float)
    ratio = d / n
    k = np.rint(ratio)
    singular = ratio == k
    denom = np.where(singular, 1.0, n * sinpi(ratio))
    limit = np.where(np.fmod(np.abs(k) * (n - 1), 2.0) == 0.0, 1.0, -1.0)
    return np.where(singular, limit, sinpi(d) / denom)


def is_power_of_two(value: int) -> bool:
    return value > 0 and value & (value - 1) == 0
