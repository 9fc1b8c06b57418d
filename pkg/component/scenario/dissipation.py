"""Mode linewidths: disorder ensembles and the reflection fit round trip."""

import logging

import numpy as np
import pandas as pd
from scipy import linalg

import component.scripts as scripts
from component.message import cm

from .outcome import Outcome

__all__ = ["run_dissipation_ensemble", "run_fit_roundtrip", "synthetic_draw"]

logger = logging.getLogger(__name__)

RATE_UNITS = {
    c: "GHz"
    for c in ["omega"]
    + [f"{r}{s}" for r in scripts.RATE_NAMES for s in ("", "_mean", "_low", "_high")]
}


def _relative_spread(df, rows, name):
    """mean width of the percentile band relative to the mean rate"""

    sub = df.iloc[rows]
    return float(((sub[f"{name}_high"] - sub[f"{name}_low"]) / sub[f"{name}_mean"]).mean())


def run_dissipation_ensemble(config, out, workers=1):

    outcome = Outcome()
    tb = config.tight_binding()
    lm = config.loss_model()
    H = scripts.tight_binding_matrix(tb)

    clean = scripts.extract_mode_rates(H, lm, qubit=False)
    rates = clean.to_frame()
    rates["gamma_tot_perturbative"] = scripts.perturbative_rates(H, lm, qubit=False)
    units = {**RATE_UNITS, "gamma_tot_perturbative": "GHz"}
    outcome.files.append(scripts.write_csv(rates, out / "rates.csv", units))
    perturbative = (rates.gamma_tot_perturbative / rates.gamma_tot - 1).abs()

    df = scripts.disorder_ensemble(
        tb, lm, config.sweep.sigma, config.sweep.realizations, config.sweep.seed, workers
    )
    outcome.files.append(scripts.write_csv(df, out / "ensemble.csv", RATE_UNITS))

    omega, vectors = linalg.eigh(H)
    bands = scripts.classify_bands(omega, vectors)
    spreads = {
        f"{band}_{name}_spread": _relative_spread(df, getattr(bands, band), name)
        for band in ("lower", "upper")
        for name in ("gamma_ext_L", "gamma_ext_R")
    }

    return outcome.add(
        sigma=config.sweep.sigma,
        realizations=config.sweep.realizations,
        seed=config.sweep.seed,
        perturbative_error=float(perturbative.max()),
        **spreads,
    )


def synthetic_draw(rng):
    """random single-mode reflection parameters of comparable rates"""

    return scripts.ReflectionTraceParams(
        omega_m=rng.uniform(7.5, 8.0),
        gamma_ext_L=rng.uniform(2e-3, 6e-3),
        gamma_ext_R=rng.uniform(2e-3, 6e-3),
        gamma_int=rng.uniform(1e-3, 3e-3),
        A_L=rng.uniform(0.5, 2.0),
        alpha_L=rng.uniform(-1.0, 1.0),
        phi_L=rng.uniform(-0.3, 0.3),
        A_R=rng.uniform(0.5, 2.0),
        alpha_R=rng.uniform(-1.0, 1.0),
        phi_R=rng.uniform(-0.3, 0.3),
    )


def _roundtrip(child, noise):

    rng = np.random.default_rng(child)
    truth = synthetic_draw(rng)
    width = 10 * truth.gamma_tot
    omega = np.linspace(truth.omega_m - width, truth.omega_m + width, 801)

    S_LL, S_RR = scripts.reflection_spectrum(truth, omega)
    for trace, A in ((S_LL, truth.A_L), (S_RR, truth.A_R)):
        trace += noise * A * (rng.normal(size=omega.size) + 1j * rng.normal(size=omega.size))

    fitted, _ = scripts.fit_reflection(omega, S_LL, S_RR)

    row = {"omega_m": truth.omega_m, "omega_m_fit": fitted.omega_m}
    for name in ("gamma_ext_L", "gamma_ext_R", "gamma_int"):
        row[name] = getattr(truth, name)
        row[f"{name}_fit"] = getattr(fitted, name)
        row[f"{name}_error"] = abs(getattr(fitted, name) / getattr(truth, name) - 1)
    row["omega_m_error"] = abs(fitted.omega_m / truth.omega_m - 1)

    return row


def run_fit_roundtrip(config, out, workers=1):
    """Fit synthetic noisy reflection traces and compare with the truth"""

    outcome = Outcome()
    children = np.random.SeedSequence(config.sweep.seed).spawn(config.sweep.draws)
    noise = config.sweep.noise

    rows = scripts.parallel_map(
        lambda child: _roundtrip(child, noise), children, workers, desc=cm.progress.fits
    )
    df = pd.DataFrame(rows)
    units = {c: "GHz" for c in df.columns if not c.endswith("_error")}
    outcome.files.append(scripts.write_csv(df, out / "roundtrip.csv", units))

    rates = df[[f"{n}_error" for n in ("gamma_ext_L", "gamma_ext_R", "gamma_int")]]

    return outcome.add(
        draws=len(df),
        seed=config.sweep.seed,
        noise=noise,
        max_rate_error=float(rates.max().max()),
        max_frequency_error=float(df.omega_m_error.max()),
        rates_within_5_percent=float((rates.max(axis=1) <= 0.05).mean()),
    )
