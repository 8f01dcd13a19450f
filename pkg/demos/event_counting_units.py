"""From event counts to kilograms: the mass/frequency dictionary.

A mass is a coupling frequency omega between the left and right information
flows; hbar is nothing but the conversion factor between that frequency and
the conventional mass unit, m = hbar * omega / c**2.
"""

from causalqca.units import (
    PhysicalUnits,
    causal_speed,
    compton_from_omega,
    mass_from_omega,
    omega_from_compton,
    omega_from_mass,
)

si = PhysicalUnits()
print(f"causal speed c = {causal_speed(si):.9g} m/s, hbar = {si.hbar:.9g} J s")

print("\nparticle      omega [1/s]      mass [kg]        reduced Compton [m]")
for name, lam in (("electron", 3.8615926796e-13), ("proton", 2.10308910336e-16)):
    omega = omega_from_compton(lam, si)
    mass = mass_from_omega(omega, si)
    print(f"{name:12s}  {omega:.6e}   {mass:.6e}   {lam:.6e}")

print("\nround trips:")
m_e = 9.1093837015e-31
omega = omega_from_mass(m_e, si)
print(f"electron mass -> omega = {omega:.6e} 1/s -> wavelength {compton_from_omega(omega, si):.6e} m")
print(f"massless limit: omega=0 -> wavelength {compton_from_omega(0.0, si)}")

planck = mass_from_omega(omega, si) * causal_speed(si) * compton_from_omega(omega, si)
print(f"\nPlanck relation check: m * c * lambda = {planck:.12e} (hbar = {si.hbar:.12e})")
