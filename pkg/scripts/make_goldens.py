"""Regenerate the frozen high-precision constants used by the test suite.

Run `python3 scripts/make_goldens.py` and paste the output into
tests/goldens.py.  mpmath is only needed here, not by the package.
"""
import mpmath as mp

mp.mp.dps = 40


def phi(x):
    return mp.exp(-x * x / 2) / mp.sqrt(2 * mp.pi)


def Phi(x):
    return mp.ncdf(x)


def Phi_inv(u):
    return mp.sqrt(2) * mp.erfinv(2 * u - 1)


def rankit(n):
    # E[max of n std normal draws], integrated in the quantile domain
    f = lambda t: Phi_inv(mp.power(t, mp.mpf(1) / n)) if t > 0 else mp.mpf(0)
    return mp.quad(f, [0, 1])


def v_plus(z):
    return phi(z) + z * (Phi(z) - 1)


print("RANKITS = {")
for n in (1, 2, 3, 4, 5, 10, 30, 70, 99, 100):
    print(f"    {n}: {mp.nstr(rankit(n), 17)},")
print("}")

print("PHI_TABLE = {  # x -> standard normal cdf")
for x in (-8.0, -6.0, -4.0, -2.0, -1.0, -0.5, 0.0, 0.3, 1.0, 2.0, 4.0, 6.0, 8.0):
    print(f"    {x}: {mp.nstr(Phi(x), 18)},")
print("}")

print("PHI_INV_TABLE = {  # u -> standard normal quantile")
for u in (1e-12, 1e-8, 1e-4, 0.01, 0.025, 0.1, 0.25, 0.5, 0.75, 0.9, 0.975, 0.99, 1 - 1e-4, 1 - 1e-8, 0.6827):
    print(f"    {u}: {mp.nstr(Phi_inv(mp.mpf(u)), 17)},")
print("}")

print("V_PLUS_TABLE = {  # z -> phi(z) + z*(Phi(z)-1)")
for z in (-5.0, -2.0, -1.0, 0.0, 0.5, 1.0, 2.0, 5.0, 8.0):
    print(f"    {z}: {mp.nstr(v_plus(mp.mpf(z)), 17)},")
print("}")
