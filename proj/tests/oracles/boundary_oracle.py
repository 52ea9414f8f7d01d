"""Independent high-precision evaluation of the closed-form boundaries.

Values printed here are frozen into the C++ unit tests. mpmath is used so
that zeta and the logs do not share code with the library under test.
"""
from mpmath import mp, mpf, zeta, log, sqrt, pi, e, ceil, exp, quad, inf, npdf, ncdf

mp.dps = 30


def ell(k, a=2):
    return max(mpf(1), mpf(k)) ** a * zeta(a)


def g(k, a=2):
    return e * max(mpf(2), mpf(k)) ** (a + 1) * (zeta(a) - zeta(a + 1))


def log2(x):
    return log(x, 2)


def show(name, v):
    print(f"{name} = {mp.nstr(v, 17)}")


# one-sample radius, sub-Gaussian kappa^2(t)=1/t
L = log(ell(0)) + log(20)
show("one_sample t=1 ceil", sqrt(2 * 1 * L))
show("one_sample t=1 real", sqrt(2 * 2 * L))
# two-sample t=s=2, delta_side=0.025, kappa^2 = 1/t + 1/s at (1,1)
L2 = log(g(2)) + log(40)
show("log g(2)", log(g(2)))
show("two_sample t=s=2", sqrt(2 * 2 * L2))
# subgaussian radius at t=1024
mu = sqrt(pi / 512)
Lc = log(ell(10)) + log(20)
show("crossing t=1024", Lc)
show("subgaussian t=1024", mu + sqrt(2 * (mpf(2) / 512) * Lc))
show("dkw t=1024", sqrt(pi / 1024) + 2 * sqrt(mpf(2) / 1024 * Lc))
# maximal tail
show("tail u=3", exp(-mpf(9) / 2))
# forward boundary t=4
show("forward t=4", 2 * sqrt(2 * 4 * (log(ell(2)) + log(40))))
# kappa_upper t=1
show("kappa t=1", sqrt(log(ell(0)) + log(80)))
# dkw
show("dkw t=1", sqrt(pi) + 2 * sqrt(2 * L))
t = 10**4
show("dkw t=1e4", sqrt(pi / t) + 2 * sqrt(mpf(2) / t * (log(ell(log2(t))) + log(20))))
# ks two-sample DC t=s=2
show("ks2 dc t=s=2", 2 * sqrt(pi / 2) + sqrt(2 * 4 * L2))
show("ks2 as-stated t=s=2", 2 * sqrt(pi / 2) + 2 * sqrt(2 * 1 * L2))
# mmd as-stated t=s=100
Lm = log(g(2 * log2(100))) + log(40)
show("log g(2log2 100)", log(g(2 * log2(100))))
show("mmd as-stated t=s=100", 2 * sqrt(2) * (mpf(2) / 10) + 4 * sqrt(mpf(2) / 100 * Lm))
show("mmd dc t=s=100", 2 * (sqrt(mpf(1) / 50) * 2) + sqrt(2 * 8 * (mpf(100) / 2500) * Lm))
show("mmd ustat t=2", 16 * sqrt(1 * (log(ell(1)) + log(20))))
# kl t=2 example
show("kl t=2", 2 / (mpf(0.5) * 2) * log(mpf(1.5) * zeta(2) / mpf(0.05)))
# tv t=8 k=2
show("tv t=8 k=2", mpf(1) / 2 * sqrt(mpf(2) / 16) + sqrt(mpf(2) / 8 * (log(ell(3)) + log(20))))
# smoothed constants
c1 = sqrt(2) * (1 / sqrt(2) + 1) ** mpf(0.5) * exp(mpf(3) / 16)
C1 = 2 * 1 * (1 / sqrt(2) + 1) * c1
show("c_1", c1)
show("C_1", C1)
L1 = log(ell(log2(t))) + log(20)
show("smoothed w1 t=1e4", C1 / 100 + 2 * sqrt(L1 / t))
show("smoothed tv t=1e4", c1 / 100 + 4 * sqrt(2 * L1 / t))
show("entropy t=1e4", 3 * sqrt((log(ell(log2(t))) + log(80)) / t) + C1 / 100)
# rademacher t=100, pop complexity 1/sqrt(n) evaluated at t/2=50
Lr = log(ell(log2(100))) + log(20)
show("rademacher t=100", 1 / sqrt(50) + 2 * sqrt(mpf(2) / 100 * Lr))
show("rademacher t=100 (R at t)", mpf(1) / 10 + 2 * sqrt(mpf(2) / 100 * Lr))
# multivariate means, d=3, sub-exponential sigma2=1 alpha=1, gamma=1/2
gt = (mpf(2) / t) * (log(ell(log2(t))) + log(20) + 3 * log(5))
show("gamma_t means d=3", gt)
inv = sqrt(2 * gt) if gt < mpf(1) / 2 else gt + mpf(1) / 2
show("means d=3 radius", 2 * inv)
k1 = (2 ** mpf(0.25) + 2 ** mpf(-0.25)) / sqrt(2)
show("k1", k1)
show("2/k1", 2 / k1)
# smoothed entropy of a point mass
show("entropy N(0,1)", log(2 * pi * e) / 2)
