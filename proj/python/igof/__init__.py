"""Smooth goodness-of-fit tests for multivariate models."""

from ._core import (
    BracketError,
    Coefficients,
    DomainError,
    IgofError,
    LookupError,
    MarginalityError,
    Model,
    ParseError,
    RankError,
    Selection,
    StateError,
    UnsupportedError,
    __version__,
    band_grid,
    catalog,
    catalog_names,
    chi2_logsf,
    chi2_sf,
    deviance_test,
    diagnose,
    estimate_lkc,
    eval_d,
    fit,
    legendre,
    mc_sup_quantile,
    model_from_json,
    read_model,
    rejection_study,
    select,
    solve_c_alpha,
)


def transform(model, x):
    """Rosenblatt transform of the rows of ``x`` under ``model``."""
    return model.rosenblatt(x)


def test(model, x, degrees, criterion="aic"):
    """Fit, select and run the deviance test in one call; returns the report dict."""
    import numpy as np

    x = np.asarray(x, dtype=float)
    if isinstance(degrees, int):
        degrees = [degrees] * model.dimension
    coeffs = fit(model.rosenblatt(x), list(degrees))
    if criterion == "none":
        return deviance_test(coeffs)
    return deviance_test(coeffs, select(coeffs, criterion))
