import numpy as np
import pytest

from src.core.families import Family68Params, SmoothFunction, example2_solution
from src.core.model import ModelParams
from src.core.model.enums import Variant
from src.core.steady import Tissue, example1_scenario


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def manufactured_params() -> ModelParams:
    """γ-restricted, κ = 0 (σ = γ = 0)"""
    return ModelParams(k=0.1, lambda_star=1.0, kappa=0.0, D1=0.1, D2=0.1, S1=0.5, S2=0.5, rhoF0=1.0)


@pytest.fixture
def manufactured_family68() -> Family68Params:
    return Family68Params(
        u1=0.1, u2=0.05, w1=1.0, w2=0.5, thetaF0=1.0, rho0=1.0, f=SmoothFunction.sine(0.1)
    )


@pytest.fixture
def coupled_params() -> ModelParams:
    """σ, γ, κ 가 모두 0 이 아닌 파라미터"""
    return ModelParams(
        k=0.7,
        lambda_star=3.0,
        kappa=2.0,
        alpha=0.4,
        RT=1.5,
        sigma1=0.3,
        sigma2=0.2,
        gamma0=0.1,
        gamma1=0.05,
        gamma2=0.4,
        S1=0.6,
        S2=0.3,
        D1=0.8,
        D2=0.5,
        rhoF0=1.2,
    )


@pytest.fixture
def example1_healthy():
    return example1_scenario(Tissue.HEALTHY, 0.0)


@pytest.fixture
def example2_pair():
    corrected, fig = example2_solution(Variant.CORRECTED)
    printed, _ = example2_solution(Variant.AS_PRINTED)
    return corrected, printed, fig
