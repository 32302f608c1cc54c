"""Fourier transforms U~(q) of the electrostatic scattering potential.

The cross-section layer consumes only pointwise values of U~ at the channel
momentum transfer, so custom potentials enter as radial tables of the
transform itself; no real-space quadrature is performed.

Units: with e^2 = alpha the screened Coulomb transform is
U~(q) = 4*pi*Za*alpha / (q^2 + chi^2) in eV^-2.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import DomainError
from .units import FINE_STRUCTURE, HARTREE_EV, BOHR_INV_EV, screening_chi_ev

SCREENED_COULOMB = "screened_coulomb"
CUSTOM_TABLE = "custom_table"

# U~ in atomic units (hartree*bohr^3) -> natural units (eV^-2)
_UT_AU_TO_NAT = HARTREE_EV / BOHR_INV_EV**3


@dataclass(frozen=True, eq=False)
class PotentialFT:
    """Radial Fourier transform of the scattering potential."""

    kind: str
    Za: float = 0.0
    chi: float = 0.0
    q_table: np.ndarray = None
    u_table: np.ndarray = None
    _interp: PchipInterpolator = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind == SCREENED_COULOMB:
            if not self.Za > 0.0:
                raise DomainError(f"Za must be > 0, got {self.Za}")
            if self.chi < 0.0:
                raise DomainError(f"chi must be >= 0, got {self.chi}")
        elif self.kind != CUSTOM_TABLE:
            raise DomainError(f"unknown potential kind {self.kind!r}")

    @classmethod
    def screened_coulomb(cls, Za, chi_ev):
        """Screened Coulomb potential with inverse screening length chi [eV]."""
        return cls(kind=SCREENED_COULOMB, Za=float(Za), chi=float(chi_ev))

    @classmethod
    def screened_coulomb_au(cls, Za, screening_radius_au):
        """Screened Coulomb with the screening radius given in bohr."""
        return cls.screened_coulomb(Za, screening_chi_ev(screening_radius_au))

    @classmethod
    def from_table(cls, path):
        """Load a two-column table `q_au  u_tilde_au` (atomic units).

        Interpolation is monotone cubic; evaluation outside the tabulated
        range is an error.
        """
        data = np.loadtxt(path, ndmin=2)
        if data.shape[1] != 2:
            raise DomainError(f"expected two columns in {path}")
        q_au, u_au = data[:, 0], data[:, 1]
        if np.any(np.diff(q_au) <= 0.0):
            raise DomainError("table q values must be strictly increasing")
        q_ev = q_au * BOHR_INV_EV
        u_nat = u_au * _UT_AU_TO_NAT
        interp = PchipInterpolator(q_ev, u_nat, extrapolate=False)
        return cls(
            kind=CUSTOM_TABLE,
            q_table=q_ev,
            u_table=u_nat,
            _interp=interp,
        )


def u_tilde(pot, q):
    """U~ at the 3-vector momentum transfer q [eV]; result in eV^-2."""
    qv = np.asarray(q, dtype=float)
    q2 = float(np.dot(qv, qv))
    if not math.isfinite(q2):
        raise DomainError("momentum transfer must be finite")
    if pot.kind == SCREENED_COULOMB:
        denom = q2 + pot.chi**2
        if denom == 0.0:
            raise DomainError("pure Coulomb transform is singular at q = 0")
        return 4.0 * math.pi * pot.Za * FINE_STRUCTURE / denom
    qmag = math.sqrt(q2)
    if qmag < pot.q_table[0] or qmag > pot.q_table[-1]:
        raise DomainError(
            f"|q| = {qmag} eV outside table range "
            f"[{pot.q_table[0]}, {pot.q_table[-1]}] eV"
        )
    return float(pot._interp(qmag))
