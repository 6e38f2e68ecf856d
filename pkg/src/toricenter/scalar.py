"""Exact nonzero complex scalars in multiplicative polar form.

An :class:`ExactScalar` is ``prod(p ** e_p) * exp(2*pi*i*turns)`` with prime
bases ``p``, rational exponents ``e_p`` and rational ``turns`` in ``[0, 1)``.
The set is a group under multiplication and closed under integer powers and
``d``-th roots, which is all the centering construction ever needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .errors import FactorizationError, ParseError
from .numeric import GUARD_BITS, check_precision, context

DEFAULT_FACTOR_BOUND = 10**6

# Relative error of evaluate() is below 2**(-precision_bits + EVAL_GUARD).
EVAL_GUARD = 2


def factor_integer(n: int, bound: int = DEFAULT_FACTOR_BOUND) -> dict[int, int]:
    """Prime factorization of ``n > 0`` by trial division up to ``bound``.

    Raises :class:`FactorizationError` when a cofactor is left that could
    still be composite with all its factors above ``bound``.
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        if d > bound:
            raise FactorizationError(
                f"{n} has no prime factor <= {bound}; increase the factor bound"
            )
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def _as_fraction(value) -> Fraction:
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, float):
        raise TypeError("floating point values are not exact; pass a 'p/q' string")
    return Fraction(value)


def _normalize_modulus(modulus) -> tuple[tuple[int, Fraction], ...]:
    items = modulus.items() if isinstance(modulus, Mapping) else modulus
    acc: dict[int, Fraction] = {}
    for base, exponent in items:
        base = int(base)
        exponent = _as_fraction(exponent)
        if base < 2:
            raise ValueError(f"modulus base must be an integer > 1, got {base}")
        for p, k in factor_integer(base).items():
            acc[p] = acc.get(p, Fraction(0)) + k * exponent
    return tuple(sorted((p, e) for p, e in acc.items() if e != 0))


@dataclass(frozen=True)
class ExactScalar:
    """Nonzero complex number ``prod(p**e) * exp(2*pi*i*turns)``.

    ``modulus`` may be given as a mapping or as ``(base, exponent)`` pairs;
    composite bases are factored, so ``ExactScalar({4: '1/2'})`` equals
    ``ExactScalar({2: 1})``. Instances are always stored normalized, which
    makes ``==`` exact equality of complex numbers.
    """

    modulus: tuple[tuple[int, Fraction], ...] = ()
    turns: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "modulus", _normalize_modulus(self.modulus))
        object.__setattr__(self, "turns", _as_fraction(self.turns) % 1)

    @property
    def modulus_exponents(self) -> dict[int, Fraction]:
        return dict(self.modulus)

    def __mul__(self, other: ExactScalar) -> ExactScalar:
        if not isinstance(other, ExactScalar):
            return NotImplemented
        acc = dict(self.modulus)
        for p, e in other.modulus:
            acc[p] = acc.get(p, Fraction(0)) + e
        return ExactScalar(acc, self.turns + other.turns)

    def __truediv__(self, other: ExactScalar) -> ExactScalar:
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k: int) -> ExactScalar:
        if isinstance(k, bool) or not isinstance(k, int):
            return NotImplemented
        return ExactScalar([(p, k * e) for p, e in self.modulus], k * self.turns)

    def inverse(self) -> ExactScalar:
        return self ** -1

    def root(self, d: int, branch: int = 0) -> ExactScalar:
        """The ``d``-th root on branch ``branch``; branch 0 is the principal root.

        Branch ``b`` has argument ``(turns + b) / d`` turns, so the ``d``
        branches are exactly the ``d`` solutions of ``x**d == self``.
        """
        if d < 1:
            raise ValueError(f"root degree must be positive, got {d}")
        if not 0 <= branch < d:
            raise ValueError(f"branch index {branch} outside 0..{d - 1}")
        return ExactScalar(
            [(p, e / d) for p, e in self.modulus], (self.turns + branch) / d
        )

    def is_one(self) -> bool:
        return not self.modulus and self.turns == 0

    def is_unit_modulus(self) -> bool:
        return not self.modulus

    def evaluate(self, precision_bits: int = 128):
        """Numeric value as an mpmath ``mpc`` carrying ``precision_bits`` bits."""
        check_precision(precision_bits)
        work = context(precision_bits + GUARD_BITS)
        return context(precision_bits).mpc(self._evaluate_in(work))

    def _evaluate_in(self, ctx):
        return _value(self, ctx.prec)

    @classmethod
    def from_rational(cls, q) -> ExactScalar:
        """Exact form of a nonzero rational; the sign folds into half a turn."""
        q = _as_fraction(q)
        if q == 0:
            raise ValueError("zero is not a valid scalar")
        modulus = {p: k for p, k in factor_integer(abs(q.numerator)).items()}
        for p, k in factor_integer(q.denominator).items():
            modulus[p] = modulus.get(p, 0) - k
        return cls(modulus, Fraction(1, 2) if q < 0 else 0)

    _SHORTHAND = {
        "1": Fraction(0),
        "-1": Fraction(1, 2),
        "i": Fraction(1, 4),
        "-i": Fraction(3, 4),
    }

    @classmethod
    def from_json(cls, obj) -> ExactScalar:
        try:
            if isinstance(obj, str):
                if obj not in cls._SHORTHAND:
                    raise ParseError(f"unknown scalar shorthand {obj!r}")
                return cls((), cls._SHORTHAND[obj])
            if isinstance(obj, dict):
                if "rational" in obj:
                    if set(obj) != {"rational"}:
                        raise ParseError(f"unexpected keys next to 'rational': {obj}")
                    return cls.from_rational(Fraction(str(obj["rational"])))
                unknown = set(obj) - {"modulus", "turns"}
                if unknown:
                    raise ParseError(f"unknown scalar keys {sorted(unknown)}")
                modulus = obj.get("modulus", {})
                if not isinstance(modulus, dict):
                    raise ParseError("'modulus' must be an object")
                return cls(
                    {int(b): Fraction(str(e)) for b, e in modulus.items()},
                    Fraction(str(obj.get("turns", "0"))),
                )
        except ParseError:
            raise
        except (ValueError, TypeError, ZeroDivisionError, FactorizationError) as exc:
            raise ParseError(f"invalid scalar {obj!r}: {exc}") from exc
        raise ParseError(f"invalid scalar {obj!r}")

    def to_json(self):
        if not self.modulus:
            for text, turns in self._SHORTHAND.items():
                if turns == self.turns:
                    return text
        return {
            "modulus": {str(p): str(e) for p, e in self.modulus},
            "turns": str(self.turns),
        }

    def __str__(self) -> str:
        form = self.to_json()
        if isinstance(form, str):
            return form
        parts = [f"{p}^({e})" for p, e in self.modulus]
        if self.turns:
            parts.append(f"e^(2pi i*{self.turns})")
        return "*".join(parts)


@lru_cache(maxsize=4096)
def _value(a: ExactScalar, bits: int):
    ctx = context(bits)
    log_modulus = ctx.mpf(0)
    for p, e in a.modulus:
        log_modulus += ctx.mpf(e.numerator) / e.denominator * ctx.ln(p)
    r = ctx.exp(log_modulus)
    # cospi/sinpi are exact at multiples of 1/2, so quarter turns come out exact
    angle = ctx.mpf(2 * a.turns.numerator) / a.turns.denominator
    return ctx.mpc(r * ctx.cospi(angle), r * ctx.sinpi(angle))


ONE = ExactScalar()


def one() -> ExactScalar:
    return ONE


def unit(turns) -> ExactScalar:
    """The root of unity ``exp(2*pi*i*turns)``."""
    return ExactScalar((), turns)


def principal_root(a: ExactScalar, d: int, branch: int = 0) -> ExactScalar:
    return a.root(d, branch)


def evaluate(a: ExactScalar, precision_bits: int = 128):
    return a.evaluate(precision_bits)
