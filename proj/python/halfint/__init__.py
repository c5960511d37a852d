"""Python face of the half-integral overconvergent pipelines.

Every helper returns the parsed JSON artifact the CLI would write; the heavy
lifting happens in the compiled extension.
"""

import json
import os
import sys

try:
    from . import _core
except ImportError:  # dev tree: the extension lives in the build directory
    _dir = os.environ.get("HALFINT_CORE_DIR")
    if not _dir:
        raise
    sys.path.insert(0, _dir)
    import _core

HalfintError = _core.HalfintError

__all__ = [
    "HalfintError",
    "theta",
    "eisenstein",
    "eisenstein_padic",
    "weight",
    "hecke_t",
    "hecke_u",
    "oracle_t",
    "katz_basis",
    "u_matrix",
    "charseries",
    "classicality",
]


def theta(p, prec):
    return json.loads(_core.theta(p, prec))


def eisenstein(p, lambda_, prec):
    return json.loads(_core.eisenstein(p, lambda_, prec))


def eisenstein_padic(p, lambda_, prec, M):
    return json.loads(_core.eisenstein_padic(p, lambda_, prec, M))


def weight(p, lambda_):
    return json.loads(_core.weight(p, lambda_))


def hecke_t(form, ell):
    return json.loads(_core.hecke_t(json.dumps(form), ell))


def hecke_u(form):
    return json.loads(_core.hecke_u(json.dumps(form)))


def oracle_t(form, ell, prec):
    return json.loads(_core.oracle_t(json.dumps(form), ell, prec))


def katz_basis(p, lambda_, J, prec, M):
    return json.loads(_core.katz_basis(p, lambda_, J, prec, M))


def u_matrix(p, lambda_, J, prec, M):
    return json.loads(_core.u_matrix(p, lambda_, J, prec, M))


def charseries(p, lambda_, J, prec, M):
    return json.loads(_core.charseries(p, lambda_, J, prec, M))


def classicality(slopes, lambda_):
    return json.loads(_core.classicality([str(s) for s in slopes], lambda_))
