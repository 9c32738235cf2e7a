"""Freeze statsmodels reference values for the ADF, VAR, Granger, IRF and
FEVD unit tests into tests/data/statsmodels_oracles.json.

Run from the repository root; needs numpy and statsmodels. The output is
checked in so the C++ tests never need Python.
"""
import json
import warnings
import pathlib

import numpy as np
import statsmodels
from statsmodels.tsa.api import VAR
from statsmodels.tsa.stattools import adfuller, grangercausalitytests

OUT = pathlib.Path("tests/data/statsmodels_oracles.json")


def adf_case(name, x, regression):
    stat, p, lag, nobs, crit, _ = adfuller(x, regression=regression, autolag="AIC")
    return {
        "name": name,
        "regression": regression,
        "series": [float(v) for v in x],
        "statistic": float(stat),
        "p_value": float(p),
        "lags": int(lag),
        "nobs": int(nobs),
        "critical": [float(crit["1%"]), float(crit["5%"]), float(crit["10%"])],
    }


def simulate(rng, a_list, t, sigma):
    m = a_list[0].shape[0]
    k = len(a_list)
    chol = np.linalg.cholesky(sigma)
    y = np.zeros((t + 200, m))
    for i in range(k, t + 200):
        y[i] = sum(a_list[j] @ y[i - j - 1] for j in range(k)) + chol @ rng.standard_normal(m)
    return y[200:]


def var_case(name, y, lag, max_lag, horizon):
    res = VAR(y).fit(lag, trend="c")
    sel = VAR(y).select_order(max_lag, trend="c")
    irf = res.irf(horizon)
    fevd = res.fevd(horizon)
    g01 = grangercausalitytests(y[:, [1, 0]], [lag], verbose=False)[lag][0]["ssr_ftest"]
    g10 = grangercausalitytests(y[:, [0, 1]], [lag], verbose=False)[lag][0]["ssr_ftest"]
    return {
        "name": name,
        "lag": lag,
        "max_lag": max_lag,
        "horizon": horizon,
        "data": y.tolist(),
        "intercepts": res.params[0].tolist(),
        # coeffs[i][row][col]: equation row, regressor col, lag i+1
        "coeffs": [res.coefs[i].tolist() for i in range(lag)],
        "sigma_mle": res.sigma_u_mle.tolist(),
        "aic": float(res.aic),
        "selected_lag": int(sel.selected_orders["aic"]),
        # Granger "y0 causes y1" and "y1 causes y0": F, p, df_den, df_num
        "granger_0_to_1": [float(g01[0]), float(g01[1]), int(g01[2]), int(g01[3])],
        "granger_1_to_0": [float(g10[0]), float(g10[1]), int(g10[2]), int(g10[3])],
        # statsmodels orthogonalizes with the dof-adjusted sigma_u; the toolkit
        # uses the T_eff denominator, so rebuild from the MA terms.
        "orth_irf": (irf.irfs @ np.linalg.cholesky(res.sigma_u_mle)).tolist(),
        "ma": irf.irfs.tolist(),
        # fevd.decomp[target][h][source], h = 0..horizon-1
        "fevd": fevd.decomp.tolist(),
    }


def main():
    warnings.simplefilter("ignore", FutureWarning)
    rng = np.random.default_rng(20220201)
    adf = [
        adf_case("white_noise_c", rng.standard_normal(250), "c"),
        adf_case("random_walk_c", np.cumsum(rng.standard_normal(300)), "c"),
        adf_case("trend_ar_ct", 0.05 * np.arange(200) + simulate(rng, [np.array([[0.6]])], 200, np.eye(1))[:, 0], "ct"),
        adf_case("ar2_c", simulate(rng, [np.array([[0.5]]), np.array([[0.3]])], 400, np.eye(1))[:, 0], "c"),
    ]
    var = [
        var_case("var1", simulate(rng, [np.array([[0.5, 0.1], [0.0, 0.4]])], 400, np.array([[1.0, 0.3], [0.3, 2.0]])), 1, 4, 14),
        var_case(
            "var2",
            simulate(rng, [np.array([[0.3, 0.2], [0.1, 0.2]]), np.array([[0.2, -0.1], [0.25, 0.1]])], 500, np.array([[2.0, 0.5], [0.5, 1.0]])),
            2,
            6,
            14,
        ),
    ]
    OUT.write_text(json.dumps({"statsmodels": statsmodels.__version__, "adf": adf, "var": var}, indent=1) + "\n")


if __name__ == "__main__":
    main()
