import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

import refdata  # noqa: E402
from monadkit.extmatrix import ExtMatrix  # noqa: E402
from monadkit.fields import Field  # noqa: E402
from monadkit.monad import Monad  # noqa: E402

# Reduced sample sizes for smoke runs (set by `monadkit reproduce --quick`).
QUICK = bool(os.environ.get("MONADKIT_QUICK"))


def scaled(full: int, quick: int) -> int:
    return quick if QUICK else full


@pytest.fixture(scope="session")
def qq() -> Field:
    return Field.QQ()


@pytest.fixture(scope="session")
def f101() -> Field:
    return Field.GF(101)


@pytest.fixture(scope="session")
def n_span4(qq) -> ExtMatrix:
    return refdata.matrix(qq, refdata.N_SPAN4)


@pytest.fixture(scope="session")
def n_span3(qq) -> ExtMatrix:
    return refdata.matrix(qq, refdata.N_SPAN3)


@pytest.fixture(scope="session")
def monad_span4(qq) -> Monad:
    return Monad(
        refdata.matrix(qq, refdata.M_GOLDEN_SPAN4),
        refdata.matrix(qq, refdata.N_SPAN4),
    )


@pytest.fixture(scope="session")
def monad_span3(qq) -> Monad:
    return Monad(
        refdata.matrix(qq, refdata.M_GOLDEN_SPAN3),
        refdata.matrix(qq, refdata.N_SPAN3),
    )
