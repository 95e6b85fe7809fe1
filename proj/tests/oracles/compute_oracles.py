"""Independent oracles for frozen expected values used by the C++ tests.

Run with: python3 tests/oracles/compute_oracles.py
Nothing here shares code with the C++ implementation.
"""
import math

import mpmath as mp
import numpy as np
from scipy.optimize import minimize
from scipy.stats import norm

mp.mp.dps = 40


def logistic(z):
    return mp.e ** z / (1 + mp.e ** z)


print("logistic(0.1) =", mp.nstr(logistic(mp.mpf("0.1")), 17))
print("logistic(0.6) =", mp.nstr(logistic(mp.mpf("0.6")), 17))
print("1 - logistic(0.6) =", mp.nstr(1 - logistic(mp.mpf("0.6")), 17))
print("exp2(1) =", mp.nstr(mp.mpf("0.2") * mp.sin(15) + mp.mpf("0.5"), 17))

# Grid minimisation of the sinusoidal law at step 1e-6.
grid = np.linspace(0.0, 1.0, 1_000_001)
vals = 0.2 * np.sin(15 * grid) + 0.4 * grid + 0.1
k = int(np.argmin(vals))
print("exp2 min (grid) =", repr(vals[k]), "at w =", grid[k])
print("exp2 max (grid) =", repr(vals.max()))

mu1_exp1 = 2 * (mp.log(1 + mp.e ** mp.mpf("0.6")) - mp.log(1 + mp.e ** mp.mpf("0.1")))
print("mu1 exp1 =", mp.nstr(mu1_exp1, 17))
mu1_exp1_quad = mp.quad(lambda w: logistic(mp.mpf("0.5") * w + mp.mpf("0.1")), [0, 1])
print("mu1 exp1 (quadrature) =", mp.nstr(mu1_exp1_quad, 17))
mu1_exp2 = mp.quad(lambda w: mp.mpf("0.2") * mp.sin(15 * w) + mp.mpf("0.4") * w + mp.mpf("0.1"), [0, 1])
print("mu1 exp2 (quadrature) =", mp.nstr(mu1_exp2, 17))

print("hoeffding mu1 (1000,.1,.05) =", mp.nstr(mp.sqrt(mp.log(40) / 20), 17))
print("hoeffding ate (1000,.1,.05) =", mp.nstr(2 * mp.sqrt(mp.log(40) / 20), 17))
print("z_{0.975} =", repr(norm.ppf(0.975)))


def nll(beta, ws, ys, wt=None):
    a, b = beta
    eta = a + b * np.asarray(ws)
    ys = np.asarray(ys, dtype=float)
    wt = np.ones_like(ys) if wt is None else np.asarray(wt)
    return float(np.sum(wt * (np.logaddexp(0, eta) - ys * eta)))


def mle(ws, ys, wt=None):
    r = minimize(nll, x0=[0.0, 0.0], args=(ws, ys, wt), method="BFGS",
                 options={"gtol": 1e-12})
    r = minimize(nll, x0=r.x, args=(ws, ys, wt), method="Nelder-Mead",
                 options={"xatol": 1e-13, "fatol": 1e-15, "maxiter": 20000})
    return r.x


# Grid search oracle on the 6-point fixture, step 1e-3 over [-5, 5]^2.
ws6 = np.array([0, 0, 1, 1, 0.5, 0.5])
ys6 = np.array([0, 1, 1, 1, 1, 0])
a_grid = np.round(np.arange(-5000, 5001) * 1e-3, 3)


def grid_mle(ws, ys):
    best = (math.inf, None, None)
    for b in a_grid:
        eta = a_grid[:, None] + b * ws[None, :]
        ll = np.sum(np.logaddexp(0, eta) - ys * eta, axis=1)
        i = int(np.argmin(ll))
        if ll[i] < best[0]:
            best = (ll[i], a_grid[i], b)
    return best[1], best[2]


print("grid MLE 6-pt fixture: intercept=%.3f slope=%.3f" % grid_mle(ws6, ys6))
print("BFGS MLE 6-pt fixture:", repr(mle(ws6, ys6)))

# 20-unit fixture shared with tests/unit/fixtures.hpp.
ws20 = np.array([0.03, 0.08, 0.12, 0.17, 0.22, 0.26, 0.31, 0.35, 0.41, 0.44,
                 0.52, 0.57, 0.61, 0.66, 0.70, 0.74, 0.81, 0.86, 0.91, 0.97])
xs20 = np.array([0, 1, 0, 0, 1, 0, 1, 1, 0, 1, 0, 1, 1, 0, 1, 0, 1, 1, 0, 1])
ys20 = np.array([0, 0, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 1, 1, 0, 1, 1, 1, 0, 1])

t = xs20 == 1
c = ~t
b1 = mle(ws20[t], ys20[t])
b0 = mle(ws20[c], ys20[c])
m1 = 1 / (1 + np.exp(-(b1[0] + b1[1] * ws20)))
m0 = 1 / (1 + np.exp(-(b0[0] + b0[1] * ws20)))
print("plugin fits: treated", repr(b1), "control", repr(b0))
print("logistic plug-in ATE 20-unit =", repr(float(np.mean(m1 - m0))))

bp = mle(ws20, xs20)
pi_hat = 1 / (1 + np.exp(-(bp[0] + bp[1] * ws20)))
pi_hat = np.clip(pi_hat, 0.01, 0.99)
mu1 = np.mean(xs20 * (ys20 - m1) / pi_hat + m1)
mu0 = np.mean((1 - xs20) * (ys20 - m0) / (1 - pi_hat) + m0)
print("ps fit", repr(bp))
print("AIPW logistic/logistic 20-unit ATE =", repr(float(mu1 - mu0)))

for label, mask_w, mask_y in (("treated", ws20[t], ys20[t]), ("control", ws20[c], ys20[c]),
                              ("propensity", ws20, xs20)):
    print("grid MLE 20-unit %s: intercept=%.3f slope=%.3f" % ((label,) + grid_mle(mask_w, mask_y)))
