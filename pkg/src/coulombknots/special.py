"""Special functions used throughout the package.

Provides stable evaluation of associated Laguerre polynomials, integer-order
Bessel functions of the first kind, orthonormal complex spherical harmonics,
and the two radial mode families of the Coulomb problem in dimensionless
units:

* bound modes   f_nl(r) = A_nl exp(-r/n) r^l L_{n-l-1}^{2l+1}(2r/n),
  with A_nl = 2^(l-1) (n-l-1)! / (n+l)!  and energy -1/n^2,
* zero-energy modes  g_l(r) = J_{2l+1}(sqrt(8r)) / sqrt(8r).

All evaluators accept scalars or numpy arrays for the coordinate argument
and are pure functions (safe to call from any number of threads).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

FOUR_PI = 4.0 * math.pi


@dataclass(frozen=True)
class RadialModeIndex:
    """Index (n, l) of a bound radial mode; requires 0 <= l <= n-1."""

    n: int
    l: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"principal number must be >= 1, got n={self.n}")
        if not 0 <= self.l <= self.n - 1:
            raise ValueError(f"need 0 <= l <= n-1, got n={self.n}, l={self.l}")

    @property
    def energy(self) -> float:
        return -1.0 / (self.n * self.n)


@dataclass(frozen=True)
class HarmonicIndex:
    """Index (l, m) of a spherical harmonic; requires |m| <= l."""

    l: int
    m: int

    def __post_init__(self) -> None:
        if self.l < 0:
            raise ValueError(f"degree must be >= 0, got l={self.l}")
        if abs(self.m) > self.l:
            raise ValueError(f"need |m| <= l, got l={self.l}, m={self.m}")


@dataclass(frozen=True)
class EvalPoint:
    """Spherical coordinates (r, theta, phi) with r >= 0, theta in [0, pi]."""

    r: float
    theta: float
    phi: float

    def __post_init__(self) -> None:
        if self.r < 0:
            raise ValueError(f"radius must be >= 0, got {self.r}")
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"polar angle must lie in [0, pi], got {self.theta}")

    @staticmethod
    def from_cartesian(x: float, y: float, z: float) -> "EvalPoint":
        r = math.sqrt(x * x + y * y + z * z)
        theta = math.acos(min(1.0, max(-1.0, z / r))) if r > 0 else 0.0
        phi = math.atan2(y, x) % (2.0 * math.pi)
        return EvalPoint(r, theta, phi)


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _unwrap(value, scalar):
    return float(value[()]) if scalar else value


# ---------------------------------------------------------------------------
# Associated Laguerre polynomials
# ---------------------------------------------------------------------------

def laguerre(k: int, alpha: int, x):
    """Associated Laguerre polynomial L_k^alpha(x) by the three-term recurrence.

    The recurrence in the degree k,

        (k+1) L_{k+1} = (2k + alpha + 1 - x) L_k - (k + alpha) L_{k-1},

    is forward stable for alpha >= 1 and x >= 0.
    """
    if k < 0:
        raise ValueError(f"degree must be >= 0, got k={k}")
    if alpha < 1:
        raise ValueError(f"order must be >= 1, got alpha={alpha}")
    x, scalar = _as_array(x)
    prev = np.ones_like(x)
    if k == 0:
        return _unwrap(prev, scalar)
    cur = alpha + 1.0 - x
    for j in range(1, k):
        prev, cur = cur, ((2 * j + alpha + 1 - x) * cur - (j + alpha) * prev) / (j + 1)
    return _unwrap(cur, scalar)


def laguerre_deriv(k: int, alpha: int, x):
    """d/dx L_k^alpha(x) = -L_{k-1}^{alpha+1}(x)."""
    if k == 0:
        x, scalar = _as_array(x)
        return _unwrap(np.zeros_like(x), scalar)
    out = laguerre(k - 1, alpha + 1, x)
    return -out


# ---------------------------------------------------------------------------
# Bessel functions of the first kind, integer order
# ---------------------------------------------------------------------------

_BESSEL_RESCALE = 1e250


def _bessel_series(nu: int, x: float) -> float:
    # Safe only while terms decrease from the start: (x/2)^2 <= nu+1.
    half = 0.5 * x
    term = half**nu / math.factorial(nu)
    total = term
    z = half * half
    for m in range(1, 200):
        term *= -z / (m * (m + nu))
        total += term
        if abs(term) < 1e-18 * abs(total) + 1e-300:
            break
    return total


def _bessel_ladder(nmax: int, x: float) -> np.ndarray:
    """J_0(x) .. J_nmax(x) by downward (Miller) recurrence.

    Starts well above both nmax and x, runs J_{k-1} = (2k/x)J_k - J_{k+1}
    downward with periodic rescaling, then normalizes the whole ladder with
    the Neumann identity J_0 + 2*sum_k J_{2k} = 1.
    """
    top = max(nmax, int(math.ceil(x)))
    start = top + 22 + int(2.5 * math.sqrt(top + 1.0))
    out = np.zeros(nmax + 1)
    jp = 0.0
    j = 1e-280
    total = 0.0
    for k in range(start, 0, -1):
        jm = (2.0 * k / x) * j - jp
        jp, j = j, jm
        if k - 1 <= nmax:
            out[k - 1] = j
        if (k - 1) % 2 == 0:
            total += j if k - 1 == 0 else 2.0 * j
        if abs(j) > _BESSEL_RESCALE:
            scale = 1.0 / _BESSEL_RESCALE
            j *= scale
            jp *= scale
            total *= scale
            out *= scale
    return out / total


def bessel_j(nu: int, x):
    """Bessel function J_nu(x) for integer nu >= 0 and x >= 0.

    Power series where the terms decrease monotonically from the first one,
    downward Miller recurrence with Neumann-sum normalization otherwise.
    Accurate to at least 11 significant digits for nu <= 60, x <= 120.
    """
    if nu < 0:
        raise ValueError(f"order must be >= 0, got nu={nu}")
    xa, scalar = _as_array(x)
    if np.any(xa < 0):
        raise ValueError("argument must be >= 0")
    if scalar:
        return _bessel_scalar(nu, float(xa))
    flat = xa.ravel()
    vals = np.array([_bessel_scalar(nu, float(v)) for v in flat])
    return vals.reshape(xa.shape)


def _bessel_scalar(nu: int, x: float) -> float:
    if x == 0.0:
        return 1.0 if nu == 0 else 0.0
    if x * x <= 4.0 * (nu + 1.0):
        return _bessel_series(nu, x)
    return float(_bessel_ladder(nu, x)[nu])


def bessel_ladder(nmax: int, x: float) -> np.ndarray:
    """All of J_0(x) .. J_nmax(x) at once (cheapest way to get a ladder)."""
    if x == 0.0:
        out = np.zeros(nmax + 1)
        out[0] = 1.0
        return out
    if x * x <= 4.0:
        return np.array([_bessel_series(k, x) for k in range(nmax + 1)])
    return _bessel_ladder(nmax, x)


# ---------------------------------------------------------------------------
# Orthonormal spherical harmonics (complex, Condon-Shortley phase)
# ---------------------------------------------------------------------------

def tri_index(l: int, m: int) -> int:
    """Flat index of (l, m), m >= 0, in the packed lower triangle."""
    return l * (l + 1) // 2 + m


def legendre_triangle(nmax: int, ct, st) -> np.ndarray:
    """Normalized associated Legendre values for all 0 <= m <= l <= nmax.

    Returns an array of shape (T, ...) with T = (nmax+1)(nmax+2)/2 and
    P[tri_index(l, m)] = Pbar_l^m(cos theta), normalized so that
    Y_lm = Pbar_l^m e^{i m phi} has unit L^2 norm on the sphere.  Includes
    the Condon-Shortley factor (-1)^m.  ct = cos(theta), st = sin(theta)
    may be arrays of any common shape.
    """
    ct = np.asarray(ct, dtype=float)
    st = np.asarray(st, dtype=float)
    shape = np.broadcast_shapes(ct.shape, st.shape)
    size = (nmax + 1) * (nmax + 2) // 2
    P = np.zeros((size,) + shape)
    P[0] = 1.0 / math.sqrt(FOUR_PI)
    for m in range(1, nmax + 1):
        P[tri_index(m, m)] = (
            -math.sqrt((2 * m + 1) / (2.0 * m)) * st * P[tri_index(m - 1, m - 1)]
        )
    for m in range(0, nmax):
        P[tri_index(m + 1, m)] = math.sqrt(2 * m + 3.0) * ct * P[tri_index(m, m)]
    for m in range(0, nmax - 1):
        for l in range(m + 2, nmax + 1):
            a = math.sqrt((4.0 * l * l - 1.0) / (l * l - m * m))
            b = math.sqrt(((l - 1.0) ** 2 - m * m) / (4.0 * (l - 1.0) ** 2 - 1.0))
            P[tri_index(l, m)] = a * (ct * P[tri_index(l - 1, m)] - b * P[tri_index(l - 2, m)])
    return P


def legendre_theta_deriv(nmax: int, P: np.ndarray) -> np.ndarray:
    """d/dtheta of the normalized triangle, from the ladder identity

        2 dPbar_l^m/dtheta = sqrt((l-m)(l+m+1)) Pbar_l^{m+1}
                           - sqrt((l+m)(l-m+1)) Pbar_l^{m-1},

    with the signed convention Pbar_l^{-1} = -Pbar_l^1.  Pole-regular.
    """
    dP = np.zeros_like(P)
    for l in range(nmax + 1):
        for m in range(l + 1):
            up = math.sqrt((l - m) * (l + m + 1.0)) * P[tri_index(l, m + 1)] if m + 1 <= l else 0.0
            if m == 0:
                down = -math.sqrt(l * (l + 1.0)) * (P[tri_index(l, 1)] if l >= 1 else 0.0)
            else:
                down = math.sqrt((l + m) * (l - m + 1.0)) * P[tri_index(l, m - 1)]
            dP[tri_index(l, m)] = 0.5 * (up - down)
    return dP


def legendre_m_over_sin(nmax: int, P: np.ndarray) -> np.ndarray:
    """m * Pbar_l^m / sin(theta), computed without dividing by sin(theta).

    Uses the degree-lowering ladder

        2 m Pbar_l^m / sin = sqrt((2l+1)/(2l-1)) *
            [ sqrt((l+m)(l+m-1)) Pbar_{l-1}^{m-1}
            + sqrt((l-m)(l-m-1)) Pbar_{l-1}^{m+1} ],

    again with Pbar_{l-1}^{-1} read via the signed convention.  Entries with
    m = 0 are zero.  Pole-regular.
    """
    W = np.zeros_like(P)
    for l in range(1, nmax + 1):
        pref = 0.5 * math.sqrt((2.0 * l + 1.0) / (2.0 * l - 1.0))
        for m in range(1, l + 1):
            lo = P[tri_index(l - 1, m - 1)] if m - 1 <= l - 1 else 0.0
            if m == 1:
                # Pbar_{l-1}^{-0} term is Pbar_{l-1}^{0} itself; the m-1=0 slot.
                lo = P[tri_index(l - 1, 0)]
            hi = P[tri_index(l - 1, m + 1)] if m + 1 <= l - 1 else 0.0
            W[tri_index(l, m)] = pref * (
                math.sqrt((l + m) * (l + m - 1.0)) * lo
                + math.sqrt((l - m) * (l - m - 1.0)) * hi
            )
    return W


def sph_harm(idx: HarmonicIndex, theta, phi):
    """Orthonormal complex spherical harmonic Y_lm(theta, phi)."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    scalar = theta.ndim == 0 and phi.ndim == 0
    ct, st = np.cos(theta), np.sin(theta)
    P = legendre_triangle(idx.l, ct, st)
    m = abs(idx.m)
    val = P[tri_index(idx.l, m)] * np.exp(1j * m * phi)
    if idx.m < 0:
        val = (-1.0) ** m * np.conj(val)
    return complex(val[()]) if scalar else val


# ---------------------------------------------------------------------------
# Radial modes
# ---------------------------------------------------------------------------

def bound_norm_log(n: int, l: int) -> float:
    """log A_nl with A_nl = 2^(l-1) (n-l-1)! / (n+l)!, via log-gamma.

    Direct factorials overflow near n = 170; the log-space form is good to
    n well beyond 300.
    """
    return (l - 1) * math.log(2.0) + math.lgamma(n - l) - math.lgamma(n + l + 1)


def radial_bound(idx: RadialModeIndex, r):
    """Bound radial mode f_nl(r); f_n0(0) = 1/2 for every n."""
    return _radial_bound_impl(idx.n, idx.l, r, deriv=False)


def radial_bound_deriv(idx: RadialModeIndex, r):
    """d/dr f_nl(r), from the Laguerre derivative identity (no differencing)."""
    return _radial_bound_impl(idx.n, idx.l, r, deriv=True)


def _radial_bound_impl(n: int, l: int, r, deriv: bool):
    r, scalar = _as_array(r)
    if np.any(r < 0):
        raise ValueError("radius must be >= 0")
    k = n - l - 1
    alpha = 2 * l + 1
    x = 2.0 * r / n
    log_a = bound_norm_log(n, l)
    with np.errstate(divide="ignore", invalid="ignore"):
        logr = np.where(r > 0, np.log(np.maximum(r, 1e-300)), 0.0)
        pref = np.exp(log_a - r / n + l * logr)
    if l > 0:
        pref = np.where(r > 0, pref, 0.0)
    L = laguerre(k, alpha, x)
    if not deriv:
        out = pref * L
        if l == 0:
            out = np.where(r == 0, math.exp(log_a) * laguerre(k, alpha, 0.0), out)
        return _unwrap(out, scalar)
    dL = laguerre_deriv(k, alpha, x)
    with np.errstate(divide="ignore", invalid="ignore"):
        inv_r = np.where(r > 0, 1.0 / np.maximum(r, 1e-300), 0.0)
    out = pref * ((l * inv_r - 1.0 / n) * L + (2.0 / n) * dL)
    # At r = 0 the derivative is finite only for l <= 1; callers stay off the
    # origin (gradients are never requested there).
    return _unwrap(out, scalar)


_ZERO_ENERGY_SERIES_RMAX = 12.0


def radial_zero_energy(l: int, r):
    """Zero-energy radial mode g_l(r) = J_{2l+1}(sqrt(8r)) / sqrt(8r).

    The removable singularity at r = 0 is handled by the power series

        g_l(r) = sum_m (-1)^m 2^(l+m-1) r^(l+m) / (m! (m+2l+1)!),

    which is also used for all r <= 12 (cancellation loses < 5 digits there);
    beyond that the Bessel ladder takes over.
    """
    return _radial_zero_energy_impl(l, r, deriv=False)


def radial_zero_energy_deriv(l: int, r):
    """d/dr g_l(r)."""
    return _radial_zero_energy_impl(l, r, deriv=True)


def _radial_zero_energy_impl(l: int, r, deriv: bool):
    if l < 0:
        raise ValueError(f"degree must be >= 0, got l={l}")
    r, scalar = _as_array(r)
    if np.any(r < 0):
        raise ValueError("radius must be >= 0")
    out = np.empty_like(r)
    small = r <= _ZERO_ENERGY_SERIES_RMAX
    if np.any(small):
        out[small] = _zero_energy_series(l, r[small], deriv)
    if np.any(~small):
        big = np.where(~small)[0] if r.ndim else []
        flat = r.ravel()
        o = out.ravel()
        for i in np.where(flat > _ZERO_ENERGY_SERIES_RMAX)[0]:
            o[i] = _zero_energy_bessel(l, float(flat[i]), deriv)
    return _unwrap(out, scalar)


def _zero_energy_series(l: int, r: np.ndarray, deriv: bool) -> np.ndarray:
    nu = 2 * l + 1
    # m = 0 term: 2^(l-1) r^l / (2l+1)!
    coef = math.exp((l - 1) * math.log(2.0) - math.lgamma(nu + 1))
    total = np.zeros_like(r)
    if deriv:
        if l == 0:
            term_d = np.zeros_like(r)
        else:
            term_d = coef * l * r ** (l - 1)
        term = coef * r**l
        total_d = term_d.copy()
        total = term.copy()
        for m in range(1, 300):
            coef *= -2.0 / (m * (m + nu))
            p = l + m
            term = coef * r**p
            total += term
            total_d += coef * p * r ** (p - 1)
            if np.all(np.abs(term) <= 1e-18 * np.abs(total) + 1e-300):
                break
        return total_d
    term = coef * r**l
    total = term.copy()
    for m in range(1, 300):
        coef *= -2.0 / (m * (m + nu))
        term = coef * r ** (l + m)
        total += term
        if np.all(np.abs(term) <= 1e-18 * np.abs(total) + 1e-300):
            break
    return total


def _zero_energy_bessel(l: int, r: float, deriv: bool) -> float:
    nu = 2 * l + 1
    s = math.sqrt(8.0 * r)
    J = bessel_ladder(nu + 1, s)
    if not deriv:
        return J[nu] / s
    # dg/dr = 4[(nu-1) J_nu(s) - s J_{nu+1}(s)] / s^3  with s = sqrt(8r)
    return 4.0 * ((nu - 1.0) * J[nu] - s * J[nu + 1]) / s**3
