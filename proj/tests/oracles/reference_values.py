"""Independent reference values for the C++ test suites.

Double sums are evaluated as single alternating or monotone series whose inner
tails are closed forms in Hurwitz zeta and digamma; mpmath.nsum extrapolates
the outer sum. Run with `python3 reference_values.py` and paste the printed
constants into tests/common/reference_values.hpp.
"""
from mpmath import mp, mpf, zeta, altzeta, digamma, nsum, inf, pi, polylog, euler

mp.dps = 45


def mzv2(a, b):
    # sum_{0<k<l} k^-a l^-b, a >= 2
    return nsum(lambda l: l**(-b) * (zeta(a) - zeta(a, l)), [2, inf])


def alt_tail(m, l):
    # sum_{k>=l} (-1)^k k^-m
    if m == 1:
        return (-1) ** int(l) * (digamma((l + 1) / 2) - digamma(l / 2)) / 2
    return (-1) ** int(l) * (zeta(m, l / 2) - zeta(m, (l + 1) / 2)) / mpf(2) ** m


def phi2(m, n):
    # sum_{0<k<l} (-1)^(k+l) k^-m l^-n; the inner sum over k < l is -phi(m) - alt_tail(m, l)
    return nsum(lambda l: (-1) ** int(l) * l ** (-n) * (-altzeta(m) - alt_tail(m, l)), [2, inf])


def show(name, v):
    print(f"{name} = \"{mp.nstr(v, 40)}\"", flush=True)


for m in (1, 2, 3):
    for n in (1, 2, 3):
        show(f"phi({m},{n})", phi2(m, n))
for a, b in [(2, 3), (3, 2), (3, 5), (5, 3), (2, 2), (3, 3), (4, 4)]:
    show(f"zeta({a},{b})", mzv2(a, b))
z35 = mzv2(3, 5)
show("p35", mpf(2) / 5 * (29 * zeta(8) - 12 * z35) - 9 * zeta(5) * zeta(3))
show("Li2(1/2)", polylog(2, mpf(1) / 2))
show("Li3(-1/2)", polylog(3, -mpf(1) / 2))
show("Li3(1/2)", polylog(3, mpf(1) / 2))
show("Li4(-0.7)", polylog(4, mpf('-0.7')))
show("gamma", +euler)
phi = altzeta
a2 = phi(3) - 6 * phi(1) * phi(2) + phi(2) + mpf(197) / 144
show("a2", a2)
show("a2_without_phi2", a2 - phi(2))
p13 = phi2(1, 3)
a3p = (mpf(2) / 9 * (83 * phi(2) * phi(3) - 43 * phi(5)) - mpf(50) / 3 * p13 + mpf(13) / 5 * phi(2)**2
       + mpf(278) / 3 * (phi(3) / 9 - 12 * phi(1) * phi(2)) + mpf(34202) / 135 * phi(2) + mpf(28259) / 2592)
show("a3_as_printed", a3p)
a4 = mpf('-1.912245764926445574152647167439830054060873390658725')
x = 1 / (mpf('137.035999049') * pi)
a3c = (mpf('1.159652181664e-3') - (x / 2 + a2 * x**2 + a4 * x**4)) / x**3
show("a3_consistent", a3c)
