from __future__ import annotations

import pytest

from ctdesign import kernels


@pytest.fixture(params=kernels.available())
def backend(request):
    """Run a test once per available kernel backend, restoring the default after."""
    before = kernels.BACKEND
    kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(before)
