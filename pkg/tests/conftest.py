import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qldpc_cnr import ghp_882_24
from qldpc_cnr.minsum import DecoderGraph
from qldpc_cnr.tanner import TannerGraph


@pytest.fixture(scope="session")
def builtin():
    return ghp_882_24()


@pytest.fixture(scope="session")
def hz_tanner(builtin):
    return TannerGraph(builtin.h_z)


@pytest.fixture(scope="session")
def hz_graph(builtin):
    return DecoderGraph(builtin.h_z)
