"""Quasi-static microstrip models and coupled-line dimension synthesis.

Single lines use the Hammerstad-Jensen closed forms (the qucs/ADS lineage),
optionally corrected for dispersion with the Kirschning-Jansen single-line
model. Coupled pairs use the Kirschning-Jansen static even/odd-mode fits,
which reduce to the same single-line forms as the gap opens. Synthesis
inverts the coupled model with a damped 2-D Newton iteration in log space,
falling back to coordinate bisection.

Dimensions are millimeters at every interface; frequencies GHz.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

C0 = 299_792_458.0  # m/s
MU0 = 4e-7 * math.pi
ETA0 = 376.73031366686166  # ohm, free-space impedance

# published fit range of the coupled-line model
VALID_U = (0.1, 10.0)
VALID_G = (0.1, 5.0)
GAP_FLOOR_MM = 0.1  # typical PCB fabrication floor
GAP_HARD_MIN_MM = 1e-3


class NoConvergence(RuntimeError):
    """Dimension synthesis exhausted its iteration budget."""


class CouplingUnreachable(ValueError):
    """Requested mode split exceeds what the model can give at any gap."""


class GapTooSmallWarning(UserWarning):
    """Synthesized gap is below the fabrication floor."""


class ModelValidityWarning(UserWarning):
    """Geometry lies outside the published fit range of the model."""


@dataclass(frozen=True)
class Substrate:
    name: str
    eps_r: float
    tan_d: float
    h: float  # substrate height, mm
    t: float = 0.035  # conductor thickness, mm
    conductivity: float = 5.8e7  # S/m

    def __post_init__(self):
        if self.eps_r < 1:
            raise ValueError("eps_r must be >= 1")
        if self.tan_d < 0:
            raise ValueError("tan_d must be >= 0")
        if self.h <= 0:
            raise ValueError("substrate height must be positive")
        if self.t < 0:
            raise ValueError("conductor thickness must be >= 0")


@dataclass(frozen=True)
class CoupledSectionDims:
    w: float  # strip width, mm
    s: float  # gap, mm
    l: float  # section length, mm

    def __post_init__(self):
        if self.w <= 0 or self.s <= 0 or self.l <= 0:
            raise ValueError("dimensions must be positive")


@dataclass(frozen=True)
class ModeParams:
    """Electrical parameters of one coupled section (attenuation in Np/m)."""

    z0e: float
    z0o: float
    eps_eff_e: float
    eps_eff_o: float
    alpha_e: float = 0.0
    alpha_o: float = 0.0


# --- Hammerstad-Jensen single line -----------------------------------------

def _hj_a(u: float) -> float:
    return (
        1.0
        + math.log((u**4 + (u / 52.0) ** 2) / (u**4 + 0.432)) / 49.0
        + math.log(1.0 + (u / 18.1) ** 3) / 18.7
    )


def _hj_b(er: float) -> float:
    return 0.564 * ((er - 0.9) / (er + 3.0)) ** 0.053


def _z01(u: float) -> float:
    # homogeneous (air) impedance of the strip
    fu = 6.0 + (2.0 * math.pi - 6.0) * math.exp(-((30.666 / u) ** 0.7528))
    return ETA0 / (2.0 * math.pi) * math.log(fu / u + math.sqrt(1.0 + (2.0 / u) ** 2))


def _eps_eff_static(u: float, er: float) -> float:
    return (er + 1.0) / 2.0 + (er - 1.0) / 2.0 * (1.0 + 10.0 / u) ** (
        -_hj_a(u) * _hj_b(er)
    )


def analyze_single(w: float, sub: Substrate, f: float | None = None) -> tuple[float, float]:
    """Characteristic impedance and effective permittivity of a single strip.

    Quasi-static by default; pass ``f`` (GHz) to apply the Kirschning-Jansen
    dispersion correction.
    """
    if w <= 0:
        raise ValueError("width must be positive")
    u = w / sub.h
    ee = _eps_eff_static(u, sub.eps_r)
    z0 = _z01(u) / math.sqrt(ee)
    if f is None:
        return z0, ee
    return _single_dispersion(u, sub.eps_r, sub.h, z0, ee, f)


def _single_dispersion(u, er, h, z0_0, ee0, f):
    # Kirschning-Jansen, fn in GHz*mm
    fn = f * h
    p1 = 0.27488 + (0.6315 + 0.525 / (1 + 0.0157 * fn) ** 20) * u - 0.065683 * math.exp(-8.7513 * u)
    p2 = 0.33622 * (1 - math.exp(-0.03442 * er))
    p3 = 0.0363 * math.exp(-4.6 * u) * (1 - math.exp(-((fn / 38.7) ** 4.97)))
    p4 = 1 + 2.751 * (1 - math.exp(-((er / 15.916) ** 8)))
    pf = p1 * p2 * ((0.1844 + p3 * p4) * fn) ** 1.5763
    eef = er - (er - ee0) / (1 + pf)
    r1 = 0.03891 * er**1.4
    r2 = 0.267 * u**7
    r3 = 4.766 * math.exp(-3.228 * u**0.641)
    r4 = 0.016 + (0.0514 * er) ** 4.524
    r5 = (fn / 28.843) ** 12
    r6 = 22.20 * u**1.92
    r7 = 1.206 - 0.3144 * math.exp(-r1) * (1 - math.exp(-r2))
    r8 = 1 + 1.275 * (1 - math.exp(-0.004625 * r3 * er**1.674 * (fn / 18.365) ** 2.745))
    r9 = (
        5.086 * r4 * r5 / (0.3838 + 0.386 * r4)
        * math.exp(-r6) / (1 + 1.2992 * r5)
        * (er - 1) ** 6 / (1 + 10 * (er - 1) ** 6)
    )
    r10 = 0.00044 * er**2.136 + 0.0184
    r11 = (fn / 19.47) ** 6 / (1 + 0.0962 * (fn / 19.47) ** 6)
    r12 = 1 / (1 + 0.00245 * u**2)
    r13 = 0.9408 * eef**r8 - 0.9603
    r14 = (0.9408 - r9) * ee0**r8 - 0.9603
    r15 = 0.707 * r10 * (fn / 12.3) ** 1.097
    r16 = 1 + 0.0503 * er**2 * r11 * (1 - math.exp(-((u / 15) ** 6)))
    r17 = r7 * (1 - 1.1241 * r12 / r16 * math.exp(-0.026 * fn**1.15656 - r15))
    return z0_0 * (r13 / r14) ** r17, eef


def synthesize_single_width(z0_target: float, sub: Substrate) -> float:
    """Width (mm) realizing a single-line impedance; bisection, z0 monotone in w."""
    if z0_target <= 0:
        raise ValueError("target impedance must be positive")
    lo, hi = 0.02 * sub.h, 40.0 * sub.h
    if analyze_single(lo, sub)[0] < z0_target:
        raise CouplingUnreachable(f"{z0_target} ohm is above the model range")
    for _ in range(200):
        mid = math.sqrt(lo * hi)
        if analyze_single(mid, sub)[0] > z0_target:
            lo = mid
        else:
            hi = mid
        if hi / lo < 1 + 1e-13:
            break
    return math.sqrt(lo * hi)


# --- Kirschning-Jansen static coupled pair ----------------------------------

def analyze_coupled(w: float, s: float, sub: Substrate) -> ModeParams:
    """Even/odd-mode impedances and permittivities of a symmetric coupled pair.

    Warns (ModelValidityWarning) outside the published fit range
    0.1 <= w/h <= 10, 0.1 <= s/h <= 5. Attenuations are returned as 0;
    loss is attached per frequency by the sweep code.
    """
    if w <= 0 or s <= 0:
        raise ValueError("width and gap must be positive")
    u = w / sub.h
    g = s / sub.h
    if not (VALID_U[0] <= u <= VALID_U[1]) or not (VALID_G[0] <= g <= VALID_G[1]):
        warnings.warn(
            f"w/h={u:.3g}, s/h={g:.3g} outside the coupled-model fit range",
            ModelValidityWarning,
            stacklevel=2,
        )
    er = sub.eps_r

    ee_s = _eps_eff_static(u, er)
    z_s = _z01(u) / math.sqrt(ee_s)

    # even-mode permittivity: single-line form at the mode's equivalent width
    v = u * (20.0 + g * g) / (10.0 + g * g) + g * math.exp(-g)
    ee_e = (er + 1.0) / 2.0 + (er - 1.0) / 2.0 * (1.0 + 10.0 / v) ** (
        -_hj_a(v) * _hj_b(er)
    )

    # odd-mode permittivity
    bo = 0.747 * er / (0.15 + er)
    co = bo - (bo - 0.207) * math.exp(-0.414 * u)
    do = 0.593 + 0.694 * math.exp(-0.562 * u)
    ao = 0.7287 * (ee_s - (er + 1.0) / 2.0) * (1.0 - math.exp(-0.179 * u))
    ee_o = ((er + 1.0) / 2.0 + ao - ee_s) * math.exp(-co * g**do) + ee_s

    # mode impedances (q-polynomial fits)
    q1 = 0.8695 * u**0.194
    q2 = 1.0 + 0.7519 * g + 0.189 * g**2.31
    q3 = 0.1975 + (16.6 + (8.4 / g) ** 6) ** (-0.387) + math.log(
        g**10 / (1.0 + (g / 3.4) ** 10)
    ) / 241.0
    q4 = 2.0 * q1 / (q2 * (math.exp(-g) * u**q3 + (2.0 - math.exp(-g)) * u ** (-q3)))
    q5 = 1.794 + 1.14 * math.log(1.0 + 0.638 / (g + 0.517 * g**2.43))
    q6 = 0.2305 + math.log(g**10 / (1.0 + (g / 5.8) ** 10)) / 281.3 + math.log(
        1.0 + 0.598 * g**1.154
    ) / 5.1
    q7 = (10.0 + 190.0 * g * g) / (1.0 + 82.3 * g**3)
    q8 = math.exp(-6.5 - 0.95 * math.log(g) - (g / 0.15) ** 5)
    q9 = math.log(q7) * (q8 + 1.0 / 16.5)
    q10 = (q2 * q4 - q5 * math.exp(math.log(u) * q6 * u ** (-q9))) / q2
    z0e = z_s * math.sqrt(ee_s / ee_e) / (1.0 - math.sqrt(ee_s) * q4 * z_s / ETA0)
    z0o = z_s * math.sqrt(ee_s / ee_o) / (1.0 - math.sqrt(ee_s) * q10 * z_s / ETA0)

    return ModeParams(z0e=z0e, z0o=z0o, eps_eff_e=ee_e, eps_eff_o=ee_o)


def synthesize_coupled(z0e: float, z0o: float, sub: Substrate) -> tuple[float, float]:
    """Width and gap (mm) realizing the requested even/odd-mode impedances.

    Damped Newton iteration on (ln w, ln s); coordinate bisection fallback.
    Converges to 1e-6 relative on both impedances or raises NoConvergence.
    Warns GapTooSmallWarning below the 0.1 mm fabrication floor; raises
    CouplingUnreachable when the requested split cannot be met at any gap.
    """
    if not (z0e > z0o > 0):
        raise ValueError("need z0e > z0o > 0")
    h = sub.h

    def residual(x: np.ndarray) -> np.ndarray:
        mp = _analyze_quiet(math.exp(x[0]), math.exp(x[1]), sub)
        return np.array([math.log(mp.z0e / z0e), math.log(mp.z0o / z0o)])

    w0 = synthesize_single_width(math.sqrt(z0e * z0o), sub)
    x = np.array([math.log(w0), math.log(h)])
    f = residual(x)
    converged = False
    for _ in range(200):
        if max(abs(f)) < 1e-6:
            converged = True
            break
        jac = np.empty((2, 2))
        step = 1e-6
        for j in range(2):
            xp = x.copy()
            xp[j] += step
            jac[:, j] = (residual(xp) - f) / step
        try:
            dx = np.linalg.solve(jac, -f)
        except np.linalg.LinAlgError:
            break
        lam = 1.0
        xn, fn = x, f
        while lam > 1e-8:
            cand = np.clip(x + lam * dx, _log_bounds_lo(h), _log_bounds_hi(h))
            fc = residual(cand)
            if np.linalg.norm(fc) < np.linalg.norm(f):
                xn, fn = cand, fc
                break
            lam *= 0.5
        if lam <= 1e-8:
            break
        x, f = xn, fn

    if converged:
        w, s = math.exp(x[0]), math.exp(x[1])
    else:
        w, s = _bisect_fallback(z0e, z0o, sub)

    _post_synthesis_checks(w, s, sub)
    return w, s


def _log_bounds_lo(h):
    return np.array([math.log(0.02 * h), math.log(GAP_HARD_MIN_MM)])


def _log_bounds_hi(h):
    return np.array([math.log(40.0 * h), math.log(60.0 * h)])


def _analyze_quiet(w, s, sub):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ModelValidityWarning)
        return analyze_coupled(w, s, sub)


def _split(w, s, sub):
    mp = _analyze_quiet(w, s, sub)
    return mp.z0e - mp.z0o


def _bisect_fallback(z0e, z0o, sub, iters=200):
    # alternate: width sets the geometric-mean impedance, gap sets the split
    h = sub.h
    target_mean = math.sqrt(z0e * z0o)
    split = z0e - z0o
    if _split(synthesize_single_width(target_mean, sub), GAP_HARD_MIN_MM, sub) < split:
        raise CouplingUnreachable(
            f"mode split {split:.2f} ohm not reachable at the minimum gap"
        )
    w, s = synthesize_single_width(target_mean, sub), h
    for _ in range(iters):
        lo, hi = 0.02 * h, 40.0 * h
        for _ in range(100):
            wm = math.sqrt(lo * hi)
            mp = _analyze_quiet(wm, s, sub)
            if math.sqrt(mp.z0e * mp.z0o) > target_mean:
                lo = wm
            else:
                hi = wm
        w = math.sqrt(lo * hi)
        lo, hi = GAP_HARD_MIN_MM, 60.0 * h
        if _split(w, lo, sub) < split:
            raise CouplingUnreachable(
                f"mode split {split:.2f} ohm not reachable at the minimum gap"
            )
        for _ in range(100):
            sm = math.sqrt(lo * hi)
            if _split(w, sm, sub) > split:
                lo = sm
            else:
                hi = sm
        s = math.sqrt(lo * hi)
        mp = _analyze_quiet(w, s, sub)
        if abs(mp.z0e / z0e - 1) < 1e-6 and abs(mp.z0o / z0o - 1) < 1e-6:
            return w, s
    raise NoConvergence(
        f"synthesis for (z0e={z0e:.3f}, z0o={z0o:.3f}) did not converge"
    )


def _post_synthesis_checks(w, s, sub):
    if s < GAP_FLOOR_MM:
        warnings.warn(
            f"gap {s:.4f} mm is below the {GAP_FLOOR_MM} mm fabrication floor",
            GapTooSmallWarning,
            stacklevel=3,
        )
    u, g = w / sub.h, s / sub.h
    if not (VALID_U[0] <= u <= VALID_U[1]) or not (VALID_G[0] <= g <= VALID_G[1]):
        warnings.warn(
            f"synthesized w/h={u:.3g}, s/h={g:.3g} outside the model fit range",
            ModelValidityWarning,
            stacklevel=3,
        )


# --- derived quantities ------------------------------------------------------

def resonator_length(mp: ModeParams, f0: float) -> float:
    """Quarter-wave section length (mm) at f0 GHz, using the mode-average permittivity."""
    if f0 <= 0:
        raise ValueError("f0 must be positive")
    eps_avg = (mp.eps_eff_e + mp.eps_eff_o) / 2.0
    return C0 / (4.0 * f0 * 1e9 * math.sqrt(eps_avg)) * 1e3


def dielectric_loss(sub: Substrate, eps_eff: float, f: float) -> float:
    """Dielectric attenuation (Np/m) of a quasi-TEM line at f GHz.

    alpha_d = (pi/lambda0) * er (eps_eff - 1) / (sqrt(eps_eff) (er - 1)) * tan_d,
    degenerating to the homogeneous-fill form as er -> 1.
    """
    if eps_eff < 1:
        raise ValueError("eps_eff must be >= 1")
    if f <= 0:
        raise ValueError("frequency must be positive")
    lam0 = C0 / (f * 1e9)
    er = sub.eps_r
    if er == 1.0:
        return math.pi / lam0 * math.sqrt(eps_eff) * sub.tan_d
    return (
        math.pi / lam0
        * er * (eps_eff - 1.0)
        / (math.sqrt(eps_eff) * (er - 1.0))
        * sub.tan_d
    )


def conductor_loss(sub: Substrate, z0: float, w: float, f: float) -> float:
    """Skin-effect attenuation (Np/m): Rs / (z0 w), Rs = sqrt(pi f mu0 / sigma)."""
    if z0 <= 0 or w <= 0 or f <= 0:
        raise ValueError("z0, w and f must be positive")
    rs = math.sqrt(math.pi * f * 1e9 * MU0 / sub.conductivity)
    return rs / (z0 * w * 1e-3)


def unloaded_q(
    sub: Substrate,
    eps_eff: float,
    f: float,
    z0: float | None = None,
    w: float | None = None,
    include_conductor: bool = False,
) -> float:
    """Unloaded resonator Q at f GHz: Q = beta / (2 alpha)."""
    alpha = dielectric_loss(sub, eps_eff, f)
    if include_conductor:
        if z0 is None or w is None:
            raise ValueError("conductor loss needs z0 and w")
        alpha += conductor_loss(sub, z0, w, f)
    if alpha == 0.0:
        return math.inf
    beta = 2.0 * math.pi * f * 1e9 * math.sqrt(eps_eff) / C0
    return beta / (2.0 * alpha)
