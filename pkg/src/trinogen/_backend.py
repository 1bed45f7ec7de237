"""Kernel backend selection.

The compiled ``_kernels`` extension is used when it imports; otherwise, or
when ``TRINOGEN_PURE_PYTHON=1`` is set, the pure-Python twin is used.
"""

import os

from trinogen import _kernels_py as python_kernels

BACKEND = "python"
kernels = python_kernels
compiled_kernels = None

if os.environ.get("TRINOGEN_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from trinogen import _kernels as compiled_kernels
    except ImportError:  # extension not built
        compiled_kernels = None
    else:
        kernels = compiled_kernels
        BACKEND = "cython"

# Largest modulus the compiled kernels accept.
COMPILED_MOD_LIMIT = 2**63


def lucas_pair_mod(k, n, m):
    if kernels is not python_kernels and m < COMPILED_MOD_LIMIT and n < 2**64:
        return kernels.lucas_pair_mod(k, n, m)
    return python_kernels.lucas_pair_mod(k, n, m)


def period_iter(k, m, limit):
    if kernels is not python_kernels and m < COMPILED_MOD_LIMIT:
        return kernels.period_iter(k, m, limit)
    return python_kernels.period_iter(k, m, limit)


def wss_chunk(k, disc, lo, hi):
    if kernels is not python_kernels and hi * hi < COMPILED_MOD_LIMIT and k < COMPILED_MOD_LIMIT:
        return kernels.wss_chunk(k, disc, lo, hi)
    return python_kernels.wss_chunk(k, disc, lo, hi)
