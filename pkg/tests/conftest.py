import pytest

from sbxs.kinematics import LaserField
from sbxs.potential import PotentialFT
from sbxs.units import intensity_to_K
from sbxs.xsection import Scenario

OMEGA_ND = 1.17          # Nd-laser photon energy [eV]
EK_FIG = 2700.0          # initial kinetic energy of the figure scenarios [eV]


@pytest.fixture(scope="session")
def pot_fig():
    """Screened Coulomb of the figure scenarios: Za = 1, 1/chi = 4 bohr."""
    return PotentialFT.screened_coulomb_au(1.0, 4.0)


@pytest.fixture(scope="session")
def k_fig():
    """K for the Nd-laser intensity 3.5e16 W/cm^2 at 1.17 eV (~0.17)."""
    return intensity_to_K(3.5e16, OMEGA_ND)


def make_scenario(pot, K=0.17, zeta=1.0, deflection_mrad=0.6,
                  direction=(0.0, 0.0, 1.0), azimuth=0.0, ek=EK_FIG,
                  omega=OMEGA_ND, formula="general"):
    return Scenario(
        laser=LaserField.from_K(omega, K, zeta),
        kinetic_energy=ek,
        direction=direction,
        potential=pot,
        deflection=deflection_mrad * 1.0e-3,
        azimuth=azimuth,
        formula=formula,
    )


@pytest.fixture(scope="session")
def fig1a(pot_fig, k_fig):
    """Fig. 1a: circular wave, electron along the propagation direction."""
    return make_scenario(pot_fig, K=k_fig, zeta=1.0, deflection_mrad=0.6)
