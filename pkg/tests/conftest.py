import pytest

from hgspdc import reference
from hgspdc.channel import derive_constants, turbulence_strength


@pytest.fixture(scope="session")
def ref_cfg():
    return reference.reference_config()


@pytest.fixture(scope="session")
def vac_consts(ref_cfg):
    return derive_constants(ref_cfg)


@pytest.fixture(scope="session")
def turb_consts(ref_cfg):
    return derive_constants(ref_cfg, turbulence_strength(reference.REFERENCE_RYTOV))
