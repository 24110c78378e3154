import doctest
import importlib

import pytest

MODULES = ["gkz.exactlat", "gkz.gkzsys", "gkz.fan", "gkz.special", "gkz.series", "gkz.basis", "gkz.contour", "gkz.estimator"]


@pytest.mark.parametrize("name", MODULES)
def test_docstring_examples(name):
    result = doctest.testmod(importlib.import_module(name), optionflags=doctest.NORMALIZE_WHITESPACE)
    assert result.failed == 0
