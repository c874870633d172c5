import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from planarweb.web import Web

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "src", "planarweb", "fixtures")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name)


@pytest.fixture(scope="session")
def cauchy_web():
    return Web.from_expressions(["x", "y", "x/y"], name="cauchy")


@pytest.fixture(scope="session")
def arctan_web():
    return Web.from_expressions(["x", "y", "(x+y)/(1-x*y)"], name="arctan")


@pytest.fixture(scope="session")
def bol_web():
    return Web.from_expressions(
        ["x", "y", "x/y", "(1-y)/(1-x)", "y*(1-x)/(x*(1-y))"], name="bol"
    )


@pytest.fixture(scope="session")
def bol_web_indomain():
    # same web as foliations; the fifth integral is the reciprocal that keeps
    # its values inside (0, 1), which the characterization patterns need
    return Web.from_expressions(
        ["x", "y", "x/y", "(1-y)/(1-x)", "x*(1-y)/(y*(1-x))"], name="bol-indomain"
    )


@pytest.fixture(scope="session")
def sk_web():
    return Web.from_expressions(
        [
            "x",
            "y",
            "x/y",
            "(1-y)/(1-x)",
            "y*(1-x)/(x*(1-y))",
            "x*y",
            "x*(1-y)/(x-1)",
            "(1-y)/(y*(x-1))",
            "x*(1-y)^2/(y*(1-x)^2)",
        ],
        name="sk",
    )


@pytest.fixture(scope="session")
def configc_web():
    return Web.from_expressions(
        [
            "x",
            "y",
            "x/y",
            "(1-y)/(1-x)",
            "x*(1-y)/(y*(1-x))",
            "(1+x)/(1+y)",
            "x*(1+y)/(y*(1+x))",
            "(1-y)*(1+x)/((1-x)*(1+y))",
        ],
        name="config-c",
    )
