"""Correlation backends - imported to register them."""

# Import all backends to register them
from corrinv.models import (
    determinantal,
    kirkwood,
    low_activity,
    poisson,
    tabulated,
)
from corrinv.models.base import AssumptionParams, CorrelationModel
from corrinv.models.determinantal import DeterminantalModel, determinantal_model, gaussian_kernel
from corrinv.models.functions import Gaussian
from corrinv.models.kirkwood import KirkwoodModel, kirkwood_model
from corrinv.models.low_activity import LowActivityModel, gaussian_potential, low_activity_model
from corrinv.models.poisson import PoissonModel, poisson_model
from corrinv.models.tabulated import TabulatedModel, tabulated_model

__all__ = [
    "determinantal",
    "kirkwood",
    "low_activity",
    "poisson",
    "tabulated",
    "AssumptionParams",
    "CorrelationModel",
    "DeterminantalModel",
    "Gaussian",
    "KirkwoodModel",
    "LowActivityModel",
    "PoissonModel",
    "TabulatedModel",
    "determinantal_model",
    "gaussian_kernel",
    "gaussian_potential",
    "kirkwood_model",
    "low_activity_model",
    "poisson_model",
    "tabulated_model",
]
