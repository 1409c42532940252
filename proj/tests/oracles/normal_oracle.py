"""High-precision reference values for the unit tests (mpmath, 50 digits).

Run: python3 tests/oracles/normal_oracle.py
The printed numbers are frozen into tests/unit/*.cpp.
"""
import itertools
from mpmath import mp, mpf, erfc, exp, sqrt, pi, log, findroot, quad, inf

mp.dps = 50


def pdf(z):
    return exp(-mpf(z) ** 2 / 2) / sqrt(2 * pi)


def ccdf(z):
    return erfc(mpf(z) / sqrt(2)) / 2


def cdf(z):
    return erfc(-mpf(z) / sqrt(2)) / 2


def inv_ccdf(p):
    p = mpf(p)
    return findroot(lambda z: ccdf(z) - p, 0 if p > 0.3 else 3)


def show(name, v):
    print(f"{name} = {mp.nstr(v, 20)}")


show("pdf(1)", pdf(1))
show("cdf(1.04)", cdf(mpf("1.04")))
show("ccdf(10)", ccdf(10))
# Independent tail check: ccdf by quadrature of the density.
show("ccdf(10) quad", quad(pdf, [10, inf]))
show("log_cdf(-40)", log(cdf(-40)))
show("log_cdf(3)", log(cdf(3)))
show("inv_ccdf(0.025)", inv_ccdf("0.025"))
show("inv_ccdf(0.0125)", inv_ccdf("0.0125"))
show("inv_ccdf(0.05/6)", inv_ccdf(mpf("0.05") / 6))
show("inv_ccdf(0.025/6)", inv_ccdf(mpf("0.025") / 6))
show("p(1.959964)", ccdf(mpf("1.959964")))

# Marginal / disjunctive power.
c025 = inv_ccdf("0.025")
show("marginal(theta=3,w=1,a=.025)", ccdf(c025 - 3))
c05_2 = inv_ccdf("0.025")
show("disj((2,2),(.5,.5),.05)", 1 - cdf(c05_2 - 2) ** 2)

# Closed-form PoS, unweighted, alpha = 0.05, m = 2.
crit = inv_ccdf("0.025")
mp2 = ccdf(crit - 3) ** 2
show("mPoS theta=3", mp2)
show("dPoS (3,3)", 1 - (1 - mp2) ** 2)
show("FWER trial1 (0,0)", 1 - (1 - mpf("0.025")) ** 2)


def grid_argmax(means, alpha, n=200):
    """Exhaustive lattice search, exact arithmetic at 30 digits."""
    mp.dps = 30
    thr = [None] + [inv_ccdf(mpf(k) / n * alpha) for k in range(1, n + 1)]
    best = None
    for k1 in range(n + 1):
        k2 = n - k1
        v = 1
        for k, th in ((k1, means[0]), (k2, means[1])):
            if k:
                v *= cdf(thr[k] - th)
        if best is None or v < best[0]:
            best = (v, (k1, k2))
    mp.dps = 50
    return best


v, ks = grid_argmax([mpf(2), mpf(2)], mpf("0.05"))
print("grid (2,2) argmax", ks, "power", mp.nstr(1 - v, 15))
v, ks = grid_argmax([mpf(0), mpf(3)], mpf("0.05"))
print("grid (0,3) argmax", ks, "power", mp.nstr(1 - v, 15))
