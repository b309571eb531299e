import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from flowinfo import _kernels_py  # noqa: E402

try:
    from flowinfo import _kernels as _kernels_c
except ImportError:  # extension not built
    _kernels_c = None

KERNELS = [pytest.param(_kernels_py, id="python")]
if _kernels_c is not None:
    KERNELS.append(pytest.param(_kernels_c, id="cython"))


@pytest.fixture(params=KERNELS)
def kernel(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(20121))


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p
