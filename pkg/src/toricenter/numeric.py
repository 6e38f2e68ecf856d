"""Fixed-precision mpmath contexts and decimal formatting.

Every precision gets its own private ``MPContext`` so that numeric code never
touches the global ``mpmath.mp`` state.
"""

from __future__ import annotations

import math
from functools import lru_cache

from mpmath.ctx_mp import MPContext

# Extra bits used internally by every evaluation before rounding to the
# caller's precision.
GUARD_BITS = 16


@lru_cache(maxsize=None)
def context(bits: int) -> MPContext:
    if bits < 2:
        raise ValueError(f"precision must be at least 2 bits, got {bits}")
    ctx = MPContext()
    ctx.prec = bits
    return ctx


def check_precision(bits: int) -> None:
    if not isinstance(bits, int) or bits < 53:
        raise ValueError(f"precision_bits must be an integer >= 53, got {bits!r}")


def magnitude_bits(total: int) -> int:
    """Guard bits needed to absorb a relative error amplification of ``total``."""
    return max(int(total), 1).bit_length()


def to_point(z, ctx: MPContext) -> list:
    return [ctx.mpc(c) for c in z]


def digits_for(bits: int) -> int:
    return max(1, int(math.floor(bits * math.log10(2))))


def decimal(x, bits: int) -> str:
    """Deterministic decimal string of a real mpmath number at ``bits`` precision."""
    ctx = context(bits)
    return ctx.nstr(ctx.mpf(x), digits_for(bits), min_fixed=-4, max_fixed=6)
