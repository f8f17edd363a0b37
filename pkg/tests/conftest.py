from __future__ import annotations

import pytest

from folsym.groups import (
    hessian_cover,
    icosahedral_A5,
    klein_PSL27,
    linear_characters,
    valentiner_cover,
)
from folsym.series import molien_fields, molien_ring, molien_vector_part

TRUNC = 40

# printed numerators / denominator exponents of the six closed-form series
CLOSED_FORMS = {
    "hessian-chi0": ({4: 1, 7: 1, 10: 1, 13: 1, 16: 1, 19: 1}, [9, 12, 18]),
    "hessian-chi1": ({16: 1, 19: 1, 22: 1, 25: 1, 28: 1, 31: 1}, [9, 12, 18]),
    "hessian-chi2": ({13: 1, 16: 1, 19: 2, 22: 1, 25: 1, 28: 1, 37: -1}, [9, 12, 18]),
    "icosahedral": ({5: 1, 6: 1, 9: 1, 10: 1, 14: 1, 16: -1}, [2, 6, 10]),
    "klein": ({8: 1, 9: 1, 11: 1, 16: 1, 18: 1, 22: -1}, [4, 6, 14]),
    "valentiner": ({16: 1, 19: 1, 25: 1, 34: 1, 40: 1, 46: -1}, [6, 12, 30]),
}


@pytest.fixture(scope="session")
def hess():
    return hessian_cover()


@pytest.fixture(scope="session")
def ico():
    return icosahedral_A5()


@pytest.fixture(scope="session")
def klein():
    return klein_PSL27()


@pytest.fixture(scope="session")
def valentiner():
    return valentiner_cover()


@pytest.fixture(scope="session")
def hess_chars(hess):
    """The three linear characters of the 648-element cover, keyed by the
    value on the first generator (1 / zeta3 / zeta3^2)."""
    from folsym.cyclotomic import zeta

    chars = linear_characters(hess)
    assert len(chars) == 3
    r1 = hess.generators[0]
    by_val = {}
    for ch in chars:
        v = ch(r1)
        by_val[str(v)] = ch
    return {
        "chi0": by_val[str(zeta(3, 0))],
        "chi1": by_val[str(zeta(3, 1))],
        "chi2": by_val[str(zeta(3, 2))],
    }


@pytest.fixture(scope="session")
def six_pairs(hess, ico, klein, valentiner, hess_chars):
    """The six (group, character) pairs with printed Poincare series."""
    return {
        "hessian-chi0": (hess, hess_chars["chi0"]),
        "hessian-chi1": (hess, hess_chars["chi1"]),
        "hessian-chi2": (hess, hess_chars["chi2"]),
        "icosahedral": (ico, linear_characters(ico)[0]),
        "klein": (klein, linear_characters(klein)[0]),
        "valentiner": (valentiner, linear_characters(valentiner)[0]),
    }


@pytest.fixture(scope="session")
def six_series(six_pairs):
    """molien_fields through degree 40 for every pair (the slow part)."""
    return {
        key: molien_fields(G, chi, TRUNC) for key, (G, chi) in six_pairs.items()
    }


@pytest.fixture(scope="session")
def six_ring_series(six_pairs):
    return {
        key: molien_ring(G, chi, TRUNC) for key, (G, chi) in six_pairs.items()
    }


@pytest.fixture(scope="session")
def six_vector_series(six_pairs):
    return {
        key: molien_vector_part(G, chi, TRUNC)
        for key, (G, chi) in six_pairs.items()
    }
