# tests/test_strip/conftest.py
"""
Pytest configuration for strip equation tests
"""
import pytest
import sys
import os

# Add project root to Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..'))

@pytest.fixture(autouse=True)
def fresh_config():
    """Every test starts from the default configuration"""
    from painleve_strip.config import reset_config
    reset_config()
    yield
    reset_config()

@pytest.fixture
def params():
    """Reference parameters ν = 1/4, θ = 1"""
    from painleve_strip.specfun import make_params
    return make_params(0.25, 1.0)

@pytest.fixture(scope="module")
def nystrom_pair():
    """(g_c, g_s) by the Nyström solver at ν = 1/4, θ = 1"""
    from painleve_strip.specfun import make_params
    from painleve_strip.solver import special_solutions
    return special_solutions(make_params(0.25, 1.0), method="nystrom")

@pytest.fixture(scope="module")
def eta_curve():
    """Painlevé curve for ν = 1/4 on [θ₀, 8]"""
    from painleve_strip.painleve import integrate_eta
    return integrate_eta(0.25, theta1=8.0)

@pytest.fixture(scope="module")
def even_modes():
    """First eight even spheroidal modes at ν = 1/4, θ = 1"""
    from painleve_strip.specfun import make_params
    from painleve_strip.spheroidal import angular_modes
    return angular_modes(make_params(0.25, 1.0), "even", 8)

@pytest.fixture
def sample_config_data():
    """Partial configuration mapping as found in a YAML file"""
    return {
        "solver": {"n_quad": 80, "tol_res": 1e-9},
        "spheroidal": {"n_modes": 16},
        "output": {"format": "json", "precision": 12},
    }
