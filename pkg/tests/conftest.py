import pytest

from mwbpf.design import synthesize_design
from mwbpf.materials import MaterialsRegistry
from mwbpf.prototype import FilterSpec, design_prototype

# the 2.52-2.65 GHz design this toolkit reproduces out of the box
PAPER_SPEC = dict(
    f_lower=2.52,
    f_upper=2.65,
    f0=2.58,
    ripple_db=0.01,
    stop_freq=2.77,
    stop_atten_db=25.0,
    z0=50.0,
)

# published reference values for that design (4-decimal rounding)
TABLE1_J = (0.3332, 0.0855, 0.0628, 0.0856, 0.3332)
TABLE1_ZE = (72.2092, 54.6432, 53.3393, 54.6435, 72.2092)
TABLE1_ZO = (38.8915, 46.0886, 47.0556, 46.0884, 38.8915)
TABLE2_FR4 = (  # (w, l, s) mm
    (2.352, 16.528, 0.47708),
    (3.305, 16.073, 2.738),
    (3.331, 16.0557, 4.54),
    (3.305, 16.073, 2.738),
    (2.352, 16.528, 0.47708),
)
TABLE3_RO3003 = (
    (1.543, 19.3057, 0.28032),
    (1.798, 18.7772, 1.2930),
    (1.995, 18.7625, 2.0327),
    (1.798, 18.7772, 1.2930),
    (1.543, 19.3057, 0.28032),
)
PCL_FR4_SIZE = (73.765, 27.506)  # mm
ML_FR4_SIZE = (38.66, 31.41)  # mm


@pytest.fixture(scope="session")
def paper_spec():
    return FilterSpec(**PAPER_SPEC)


@pytest.fixture(scope="session")
def paper_proto(paper_spec):
    return design_prototype(paper_spec)


@pytest.fixture(scope="session")
def registry():
    return MaterialsRegistry()


@pytest.fixture(scope="session")
def fr4(registry):
    return registry.get("FR4")


@pytest.fixture(scope="session")
def ro3003(registry):
    return registry.get("RO3003")


@pytest.fixture(scope="session")
def fr4_design(paper_spec, fr4):
    return synthesize_design(paper_spec, fr4, created="2026-01-01T00:00:00+00:00")


@pytest.fixture(scope="session")
def ro3003_design(paper_spec, ro3003):
    return synthesize_design(paper_spec, ro3003, created="2026-01-01T00:00:00+00:00")
