"""Laser-field geometry, dressed electron states and channel kinematics.

Metric is (+,-,-,-); all scalar products are relativistic, a.b = a0*b0 - avec.bvec.
The wave four-vector is k = omega*(1, khat) and the inner-field state is
characterized by the quasimomentum

    Pi = p + k * Z * (1 + zeta^2),      Z = (e*Abar0)^2 / (4 k.p),

which sits on the effective-mass shell Pi^2 = m^2 + (e*Abar0)^2 (1+zeta^2)/2.
A channel exchanging n photons has quasienergy Pi0' = Pi0 + n*omega and final
quasimomentum magnitude Pi_n = sqrt(Pivec^2 + n*omega*(2*Pi0 + n*omega)).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ChannelClosedError, DomainError
from .units import ELECTRON_MASS_EV

# Fixed global frame: wave propagates along z, polarization axes along x, y.
E1_DEFAULT = (1.0, 0.0, 0.0)
E2_DEFAULT = (0.0, 1.0, 0.0)
KHAT_DEFAULT = (0.0, 0.0, 1.0)

_ORTHO_TOL = 1.0e-14


def _vec(x):
    return np.asarray(x, dtype=float)


@dataclass(frozen=True)
class FourVector:
    """Contravariant four-vector, time component first, components in eV."""

    t: float
    x: float
    y: float
    z: float

    @property
    def vec3(self):
        return np.array([self.x, self.y, self.z])

    def dot(self, other):
        return self.t * other.t - (
            self.x * other.x + self.y * other.y + self.z * other.z
        )

    @property
    def mass2(self):
        return self.dot(self)

    @classmethod
    def from_parts(cls, t, vec3):
        v = _vec(vec3)
        return cls(float(t), float(v[0]), float(v[1]), float(v[2]))


@dataclass(frozen=True, eq=False)
class LaserField:
    """Plane monochromatic wave A(phi) = Abar0 (e1 cos(phi) + zeta e2 sin(phi)).

    a0bar stores e*Abar0 in eV, i.e. K * m; zeta = 0 is linear polarization
    along e1, zeta = 1 circular.
    """

    omega: float
    zeta: float
    a0bar: float
    e1: np.ndarray = field(default=E1_DEFAULT)
    e2: np.ndarray = field(default=E2_DEFAULT)
    khat: np.ndarray = field(default=KHAT_DEFAULT)

    def __post_init__(self):
        object.__setattr__(self, "e1", _vec(self.e1))
        object.__setattr__(self, "e2", _vec(self.e2))
        object.__setattr__(self, "khat", _vec(self.khat))
        if not (math.isfinite(self.omega) and self.omega > 0.0):
            raise DomainError(f"omega must be > 0, got {self.omega}")
        if not 0.0 <= self.zeta <= 1.0:
            raise DomainError(f"zeta must lie in [0, 1], got {self.zeta}")
        if not (math.isfinite(self.a0bar) and self.a0bar >= 0.0):
            raise DomainError(f"a0bar must be >= 0, got {self.a0bar}")
        for a, b in ((self.e1, self.e2), (self.e1, self.khat), (self.e2, self.khat)):
            if abs(float(np.dot(a, b))) > _ORTHO_TOL:
                raise DomainError("polarization triad must be orthogonal")
        for v in (self.e1, self.e2, self.khat):
            if abs(float(np.dot(v, v)) - 1.0) > _ORTHO_TOL:
                raise DomainError("polarization triad must be unit-normed")

    @property
    def K(self):
        return self.a0bar / ELECTRON_MASS_EV

    @property
    def k4(self):
        return FourVector.from_parts(self.omega, self.omega * self.khat)

    @classmethod
    def from_K(cls, omega, K, zeta, e1=E1_DEFAULT, e2=E2_DEFAULT, khat=KHAT_DEFAULT):
        return cls(omega, zeta, K * ELECTRON_MASS_EV, e1, e2, khat)

    def with_K(self, K):
        return LaserField(self.omega, self.zeta, K * ELECTRON_MASS_EV,
                          self.e1, self.e2, self.khat)


@dataclass(frozen=True, eq=False)
class DressedState:
    """Free four-momentum plus the wave-intensity parameter and quasimomentum."""

    p: FourVector
    Z: float
    Pi: FourVector
    kdotp: float

    @property
    def mstar2(self):
        return self.Pi.mass2


def dress(kinetic_energy, direction, laser):
    """Dressed state of an electron with the given kinetic energy [eV].

    direction is the free-momentum direction (any nonzero 3-vector).
    """
    if not (math.isfinite(kinetic_energy) and kinetic_energy >= 0.0):
        raise DomainError(f"kinetic energy must be >= 0, got {kinetic_energy}")
    d = _vec(direction)
    norm = float(np.linalg.norm(d))
    if norm == 0.0:
        raise DomainError("electron direction must be a nonzero vector")
    d = d / norm
    m = ELECTRON_MASS_EV
    energy = m + kinetic_energy
    p_mag = math.sqrt(kinetic_energy * (2.0 * m + kinetic_energy))
    p = FourVector.from_parts(energy, p_mag * d)
    kdotp = laser.k4.dot(p)
    Z = laser.a0bar**2 / (4.0 * kdotp)
    shift = Z * (1.0 + laser.zeta**2)
    Pi = FourVector.from_parts(
        p.t + laser.omega * shift, p.vec3 + laser.omega * shift * laser.khat
    )
    return DressedState(p=p, Z=Z, Pi=Pi, kdotp=kdotp)


def alpha_theta(rho, laser):
    """Dynamic amplitude alpha(rho) and phase theta(rho) of the dressing.

    alpha = e*Abar0 * sqrt((rho.e1)^2 + zeta^2 (rho.e2)^2); theta is the
    quadrant-resolved angle of (rho.e1, zeta*rho.e2), fixed to 0 when alpha
    vanishes (every theta-dependent term then carries a factor alpha).
    """
    r = _vec(rho)
    c1 = float(np.dot(r, laser.e1))
    c2 = laser.zeta * float(np.dot(r, laser.e2))
    alpha = laser.a0bar * math.hypot(c1, c2)
    if alpha == 0.0:
        return 0.0, 0.0
    return alpha, math.atan2(c2, c1)


def _frame_rhat(axis_hat, deflection, azimuth, laser):
    """Unit vector at `deflection` from axis_hat; azimuth 0 lies in the
    plane spanned by axis_hat and e1 (falls back to e2 when axis || e1)."""
    t1 = laser.e1 - float(np.dot(laser.e1, axis_hat)) * axis_hat
    n1 = float(np.linalg.norm(t1))
    if n1 < 1.0e-12:
        t1 = laser.e2 - float(np.dot(laser.e2, axis_hat)) * axis_hat
        n1 = float(np.linalg.norm(t1))
    t1 = t1 / n1
    t2 = np.cross(axis_hat, t1)
    r = (
        math.cos(deflection) * axis_hat
        + math.sin(deflection) * (math.cos(azimuth) * t1 + math.sin(azimuth) * t2)
    )
    return r / float(np.linalg.norm(r))


def deflection_frame(dressed, deflection, azimuth, laser):
    """Observation direction making `deflection` with the quasimomentum."""
    if not 0.0 <= deflection <= math.pi:
        raise DomainError(f"deflection must lie in [0, pi], got {deflection}")
    pivec = dressed.Pi.vec3
    norm = float(np.linalg.norm(pivec))
    if norm == 0.0:
        raise DomainError("quasimomentum has no direction")
    return _frame_rhat(pivec / norm, deflection, azimuth, laser)


@dataclass(frozen=True, eq=False)
class Channel:
    """All derived kinematics of the n-photon channel."""

    n: int
    Pi0_final: float
    Pi_n: float
    rhat: np.ndarray
    q_n: np.ndarray
    p_final: FourVector
    Z_final: float
    kdotp_final: float
    alpha1: float
    alpha2: float
    theta1: float
    beta2: float

    def __post_init__(self):
        object.__setattr__(self, "rhat", _vec(self.rhat))
        object.__setattr__(self, "q_n", _vec(self.q_n))


def open_channel(dressed, n, rhat, laser):
    """Channel kinematics for n exchanged photons in direction rhat.

    Raises ChannelClosedError when the final quasienergy falls below the
    effective mass.
    """
    n = int(n)
    r = _vec(rhat)
    r = r / float(np.linalg.norm(r))
    omega = laser.omega
    zeta = laser.zeta
    Pi0 = dressed.Pi.t
    pivec = dressed.Pi.vec3

    Pi0f = Pi0 + n * omega
    mstar = math.sqrt(dressed.mstar2)
    if Pi0f < mstar:
        raise ChannelClosedError(n)
    pin2 = float(np.dot(pivec, pivec)) + n * omega * (2.0 * Pi0 + n * omega)
    Pi_n = math.sqrt(max(pin2, 0.0))

    pivec_f = Pi_n * r
    q = pivec_f - pivec - n * omega * laser.khat
    kdotpi_f = omega * (Pi0f - float(np.dot(laser.khat, pivec_f)))
    Zf = laser.a0bar**2 / (4.0 * kdotpi_f)
    shift = Zf * (1.0 + zeta**2)
    p_final = FourVector.from_parts(
        Pi0f - omega * shift, pivec_f - omega * shift * laser.khat
    )

    kdotpi = dressed.kdotp  # k.Pi = k.p exactly (k^2 = 0)
    rho = pivec_f / kdotpi_f - pivec / kdotpi
    alpha1, theta1 = alpha_theta(rho, laser)
    alpha2 = 0.5 * (Zf - dressed.Z) * (1.0 - zeta**2)

    q_perp2 = max(float(np.dot(q, q)) - float(np.dot(laser.khat, q)) ** 2, 0.0)
    beta2 = laser.a0bar**2 * omega**2 * q_perp2 / (kdotpi * kdotpi_f)

    return Channel(
        n=n,
        Pi0_final=Pi0f,
        Pi_n=Pi_n,
        rhat=r,
        q_n=q,
        p_final=p_final,
        Z_final=Zf,
        kdotp_final=kdotpi_f,
        alpha1=alpha1,
        alpha2=alpha2,
        theta1=theta1,
        beta2=beta2,
    )
