"""Self-adjoint radial Hamiltonians for the pure Aharonov-Bohm field (B = 0).

Each angular channel l carries the radial operator

    h(l) = -d^2/drho^2 + (kappa_l^2 - 1/4)/rho^2,   kappa_l = |l + mu|,

on the half line.  The strength alpha = kappa_l^2 - 1/4 splits the
channels into three regions:

  R1  alpha >= 3/4   (kappa_l >= 1)  unique extension, spectrum = R+;
  R2  -1/4 < alpha < 3/4             only mu > 0 with l in {0, -1};
                                     one-parameter family lambda_a, an
                                     optional bound state for
                                     lambda_a in (-pi/2, 0);
  R3  alpha = -1/4   (kappa_l = 0)   only mu = 0 with l = 0; family
                                     lambda, bound state for |lambda| < pi/2.

Continuous-spectrum eigenfunctions are delta-normalized in the energy
(spectral measure dE); the measure rescaling for assembled 2D/3D operators
is applied exactly once in the assembly layer.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import specfun as sf
from .angles import HALF_PI, is_endpoint, normalize_angle


@dataclass(frozen=True)
class FluxConfig:
    """Physical parameters of the flux line (plus uniform field strength).

    phi is the total flux in units of the flux quantum; the sign of the
    uniform field enters through eps_B and the particle charge through
    eps_q.  gamma = e|B|/c hbar is zero for the pure AB field.  kappa0 is
    the inverse-length scale entering the R2/R3 boundary conditions.
    """

    phi: float
    eps_B: int = 1
    eps_q: int = 1
    gamma: float = 0.0
    kappa0: float = 1.0

    def __post_init__(self):
        if self.eps_B not in (-1, 1) or self.eps_q not in (-1, 1):
            raise ValueError("eps_B and eps_q must be +-1")
        if self.gamma < 0:
            raise ValueError("gamma must be >= 0")
        if self.kappa0 <= 0:
            raise ValueError("kappa0 must be > 0")

    @classmethod
    def from_mantissa(cls, mu, phi0=0, **kw):
        eps_B = kw.get("eps_B", 1)
        return cls(phi=eps_B * (phi0 + mu), **kw)

    @property
    def phi0(self) -> int:
        """Integer part [eps_B phi] of the reduced flux."""
        return math.floor(self.eps_B * self.phi)

    @property
    def mu(self) -> float:
        """Flux mantissa eps_B phi - [eps_B phi] in [0, 1)."""
        return self.eps_B * self.phi - self.phi0

    @property
    def eps(self) -> int:
        return self.eps_B * self.eps_q


@dataclass(frozen=True)
class RegionTag:
    tag: str  # R1 | R2 | R3
    kappa_l: float
    alpha: float


@dataclass(frozen=True)
class EigenfunctionHandle:
    """Evaluatable normalized (generalized) eigenfunction with metadata."""

    evaluate: Callable[[float], float]
    region: str
    l: Optional[int]
    energy: float
    lam: Optional[float] = None
    meta: dict = field(default_factory=dict)

    def __call__(self, rho: float):
        return self.evaluate(rho)


@dataclass(frozen=True)
class BoundState:
    energy: float
    eigenfunction: EigenfunctionHandle


@dataclass(frozen=True)
class RadialSpectrum:
    """Continuous ray [continuous_min, inf) plus an optional bound state."""

    l: int
    region: RegionTag
    continuous_min: float
    bound: Optional[BoundState]
    lam: Optional[float] = None


def classify(l: int, mu: float) -> RegionTag:
    """Region of the angular channel l at flux mantissa mu."""
    if not 0.0 <= mu < 1.0:
        raise ValueError(f"mu must be in [0, 1), got {mu}")
    kappa = abs(l + mu)
    alpha = kappa * kappa - 0.25
    if kappa == 0.0:
        return RegionTag("R3", kappa, alpha)
    if kappa < 1.0:
        return RegionTag("R2", kappa, alpha)
    return RegionTag("R1", kappa, alpha)


def lambda_tilde_a(kappa_a: float, lam: float) -> float:
    """Gamma(1-kappa)/Gamma(1+kappa) * tan(lambda); +inf at the endpoint."""
    if is_endpoint(lam):
        return math.inf
    return sf.gamma(1.0 - kappa_a) / sf.gamma(1.0 + kappa_a) * math.tan(lam)


def _require_lambda(region: RegionTag, lam):
    if region.tag == "R1":
        if lam is not None:
            raise ValueError("region R1 has a unique extension; lambda not allowed")
        return None
    if lam is None:
        raise ValueError(f"region {region.tag} requires an extension angle lambda")
    return normalize_angle(lam)


def continuous_eigenfunction(l, cfg: FluxConfig, energy, rho, lam=None) -> float:
    """Delta-normalized (in spectral measure dE) eigenfunction U_E(rho).

    R1: sqrt(rho/2) J_kappa(sqrt(E) rho).
    R2: sqrt(rho/(2 Q_a)) [J_kappa + ltilde (sqrt(E)/2 kappa0)^{2 kappa}
        J_{-kappa}], with Q_a the consistent norm built from the same
        (sqrt(E)/2 kappa0)^{2 kappa} factor that appears in U_E.
    R3: sqrt(rho/(2 (ltilde^2 + pi^2/4))) [ltilde J_0 + (pi/2) Y_0],
        ltilde = tan(lambda) - C - ln(sqrt(E)/2 kappa0).
    E = 0 returns the E -> 0+ limit, which vanishes in every region.
    """
    if energy < 0:
        raise ValueError("continuous spectrum requires E >= 0")
    if rho <= 0:
        raise ValueError("rho must be > 0")
    region = classify(l, cfg.mu)
    lam = _require_lambda(region, lam)
    if energy == 0.0:
        return 0.0
    sq = math.sqrt(energy)
    if region.tag == "R1":
        return math.sqrt(rho / 2.0) * sf.bessel_j(region.kappa_l, sq * rho)
    if region.tag == "R2":
        kappa = region.kappa_l
        if is_endpoint(lam):
            # tan(lambda) -> inf: the J_{-kappa} branch survives
            return math.sqrt(rho / 2.0) * sf.bessel_j(-kappa, sq * rho)
        lt = lambda_tilde_a(kappa, lam)
        q = (sq / (2.0 * cfg.kappa0)) ** (2.0 * kappa)
        qa = 1.0 + 2.0 * lt * q * math.cos(math.pi * kappa) + (lt * q) ** 2
        val = sf.bessel_j(kappa, sq * rho) + lt * q * sf.bessel_j(-kappa, sq * rho)
        return math.sqrt(rho / (2.0 * qa)) * val
    # R3
    if is_endpoint(lam):
        return math.sqrt(rho / 2.0) * sf.bessel_j(0.0, sq * rho)
    lt = math.tan(lam) - sf.EULER_GAMMA - math.log(sq / (2.0 * cfg.kappa0))
    norm = 2.0 * (lt * lt + math.pi * math.pi / 4.0)
    val = lt * sf.bessel_j(0.0, sq * rho) + HALF_PI * sf.bessel_y0(sq * rho)
    return math.sqrt(rho / norm) * val


def bound_state(l, cfg: FluxConfig, lam) -> Optional[BoundState]:
    """Negative-energy level of the R2/R3 channel, when it exists.

    R2: exists iff lambda_a in (-pi/2, 0), at
        E = -4 kappa0^2 |ltilde_a|^(-1/kappa_a);
    R3: exists iff |lambda| < pi/2, at E = -4 kappa0^2 exp(2(tan l - C)).
    """
    region = classify(l, cfg.mu)
    lam = _require_lambda(region, lam)
    if region.tag == "R2":
        if is_endpoint(lam) or not -HALF_PI < lam < 0.0:
            return None
        kappa = region.kappa_l
        lt = lambda_tilde_a(kappa, lam)
        energy = -4.0 * cfg.kappa0**2 * abs(lt) ** (-1.0 / kappa)
        beta = math.sqrt(-energy)
        pref = 2.0 * (-energy) * math.sin(math.pi * kappa) / (math.pi * kappa)

        def u_minus(rho, _p=pref, _b=beta, _k=kappa):
            return math.sqrt(_p * rho) * sf.bessel_k(_k, _b * rho)

    else:  # R3
        if is_endpoint(lam):
            return None
        energy = -4.0 * cfg.kappa0**2 * math.exp(2.0 * (math.tan(lam) - sf.EULER_GAMMA))
        beta = math.sqrt(-energy)

        def u_minus(rho, _b=beta, _e=energy):
            return math.sqrt(2.0 * rho * (-_e)) * sf.bessel_k(0.0, _b * rho)

    handle = EigenfunctionHandle(
        evaluate=u_minus, region=region.tag, l=l, energy=energy, lam=lam
    )
    return BoundState(energy=energy, eigenfunction=handle)


def spectrum(l, cfg: FluxConfig, lam=None) -> RadialSpectrum:
    """Full spectrum of the channel: the ray R+ plus any bound state."""
    region = classify(l, cfg.mu)
    checked = _require_lambda(region, lam)
    bound = bound_state(l, cfg, checked) if region.tag != "R1" else None
    return RadialSpectrum(
        l=l, region=region, continuous_min=0.0, bound=bound, lam=checked
    )
