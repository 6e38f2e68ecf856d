"""Diffeomorphisms of (C*)^n: coordinate permutations, unimodular monomial
maps and componentwise rescalings, plus finite chains of them.

Every map acts on points (numerically, through mpmath) and on torus
equations (exactly). ``pushforward`` answers: if ``z`` satisfies ``eq``,
which equation does ``map(z)`` satisfy?
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .arrangement import ToricArrangement, TorusEquation
from .errors import NotUnimodular, ParseError, ShapeMismatch, ZeroCoordinate
from .intlinalg import IntMatrix, block_diag, det, mat_mul, unimodular_inverse
from .numeric import GUARD_BITS, check_precision, context, magnitude_bits, to_point
from .scalar import ExactScalar


def _apply_numeric(step, z, precision_bits: int):
    check_precision(precision_bits)
    if len(z) != step.dim:
        raise ShapeMismatch(f"point has {len(z)} coordinates, map acts on {step.dim}")
    work = context(precision_bits + GUARD_BITS + step.condition_bits())
    pt = to_point(z, work)
    if any(c == 0 for c in pt):
        raise ZeroCoordinate("points of (C*)^n have no zero coordinate")
    out = context(precision_bits)
    return tuple(out.mpc(c) for c in step._apply_in(pt, work))


def _check_eq(step, eq: TorusEquation) -> None:
    if eq.dim != step.dim:
        raise ShapeMismatch(f"equation in dimension {eq.dim}, map acts on {step.dim}")


@dataclass(frozen=True)
class Permutation:
    """``t_k = z_{perm[k]}`` with ``perm`` a 1-based permutation of ``1..n``."""

    perm: tuple[int, ...]

    def __post_init__(self):
        perm = tuple(int(p) for p in self.perm)
        if sorted(perm) != list(range(1, len(perm) + 1)):
            raise ValueError(f"{perm} is not a permutation of 1..{len(perm)}")
        object.__setattr__(self, "perm", perm)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @property
    def dim(self) -> int:
        return len(self.perm)

    def inverse(self) -> Permutation:
        inv = [0] * self.dim
        for k, p in enumerate(self.perm, start=1):
            inv[p - 1] = k
        return Permutation(tuple(inv))

    def condition_bits(self) -> int:
        return 0

    def _apply_in(self, z, ctx):
        return [z[p - 1] for p in self.perm]

    def apply(self, z, precision_bits: int = 128):
        return _apply_numeric(self, z, precision_bits)

    def pushforward(self, eq: TorusEquation) -> TorusEquation:
        _check_eq(self, eq)
        return TorusEquation(tuple(eq.exponents[p - 1] for p in self.perm), eq.constant)

    def to_json(self) -> dict:
        return {"kind": "permutation", "perm": list(self.perm)}


@dataclass(frozen=True)
class MonomialMap:
    """``t_i = prod_j z_j ** forward[i][j]``; inverse ``z_i = prod_l t_l ** backward[i][l]``."""

    forward: IntMatrix
    backward: IntMatrix

    def __post_init__(self):
        f, b = self.forward, self.backward
        if not f.is_square or f.shape != b.shape:
            raise ShapeMismatch(f"forward {f.shape} and backward {b.shape} must be equal squares")
        ident = IntMatrix.identity(f.rows)
        if mat_mul(f, b) != ident or mat_mul(b, f) != ident:
            raise NotUnimodular("backward is not the inverse of forward")

    @classmethod
    def from_matrix(cls, forward: IntMatrix) -> MonomialMap:
        return cls(forward, unimodular_inverse(forward))

    @classmethod
    def identity(cls, n: int) -> MonomialMap:
        ident = IntMatrix.identity(n)
        return cls(ident, ident)

    @property
    def dim(self) -> int:
        return self.forward.rows

    def inverse(self) -> MonomialMap:
        return MonomialMap(self.backward, self.forward)

    def condition_bits(self) -> int:
        # relative errors grow by at most the row norm of the exponent matrix
        return magnitude_bits(self.forward.row_norm()) + 2

    def _apply_in(self, z, ctx):
        out = []
        for row in self.forward.entries:
            t = ctx.mpc(1)
            for zj, e in zip(z, row):
                if e:
                    t *= zj**e
            out.append(t)
        return out

    def apply(self, z, precision_bits: int = 128):
        return _apply_numeric(self, z, precision_bits)

    def pushforward(self, eq: TorusEquation) -> TorusEquation:
        # substituting z = backward(t) turns exponent row p into p @ backward
        _check_eq(self, eq)
        p = IntMatrix(1, self.dim, [eq.exponents])
        return TorusEquation(mat_mul(p, self.backward).row(0), eq.constant)

    def to_json(self) -> dict:
        return {
            "kind": "monomial",
            "forward": self.forward.to_json(),
            "backward": self.backward.to_json(),
        }


@dataclass(frozen=True)
class TranslationMap:
    """``t'_i = t_i * scale[i]``."""

    scale: tuple[ExactScalar, ...]

    def __post_init__(self):
        object.__setattr__(self, "scale", tuple(self.scale))
        if not self.scale or not all(isinstance(s, ExactScalar) for s in self.scale):
            raise TypeError("scale must be a nonempty sequence of ExactScalar")

    @classmethod
    def single(cls, n: int, coordinate: int, factor: ExactScalar) -> TranslationMap:
        """Rescale only ``coordinate`` (1-based) by ``factor``."""
        one = ExactScalar()
        return cls(tuple(factor if j == coordinate else one for j in range(1, n + 1)))

    @property
    def dim(self) -> int:
        return len(self.scale)

    def inverse(self) -> TranslationMap:
        return TranslationMap(tuple(s.inverse() for s in self.scale))

    def condition_bits(self) -> int:
        return 2

    def _apply_in(self, z, ctx):
        return [c if s.is_one() else c * s._evaluate_in(ctx) for c, s in zip(z, self.scale)]

    def apply(self, z, precision_bits: int = 128):
        return _apply_numeric(self, z, precision_bits)

    def pushforward(self, eq: TorusEquation) -> TorusEquation:
        # t = t' / s, so prod t^p = alpha becomes prod t'^p = alpha * prod s^p
        _check_eq(self, eq)
        c = eq.constant
        for s, p in zip(self.scale, eq.exponents):
            if p:
                c = c * s**p
        return TorusEquation(eq.exponents, c)

    def to_json(self) -> dict:
        return {"kind": "translation", "scale": [s.to_json() for s in self.scale]}


Step = Union[Permutation, MonomialMap, TranslationMap]


@dataclass(frozen=True)
class DiffeoChain:
    """Composition applied left to right: ``steps[0]`` acts first."""

    steps: tuple[Step, ...]

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        if not self.steps:
            raise ValueError("a chain needs at least one step")
        dims = {s.dim for s in self.steps}
        if len(dims) != 1:
            raise ShapeMismatch(f"chain mixes dimensions {sorted(dims)}")

    @property
    def dim(self) -> int:
        return self.steps[0].dim

    def inverse(self) -> DiffeoChain:
        return DiffeoChain(tuple(s.inverse() for s in reversed(self.steps)))

    def condition_bits(self) -> int:
        return sum(s.condition_bits() for s in self.steps)

    def _apply_in(self, z, ctx):
        for s in self.steps:
            z = s._apply_in(z, ctx)
        return z

    def apply(self, z, precision_bits: int = 128):
        """Apply the whole chain at one working precision, rounding only at the end."""
        return _apply_numeric(self, z, precision_bits)

    def pushforward(self, eq: TorusEquation) -> TorusEquation:
        for s in self.steps:
            eq = s.pushforward(eq)
        return eq

    def then(self, step) -> DiffeoChain:
        extra = step.steps if isinstance(step, DiffeoChain) else (step,)
        return DiffeoChain(self.steps + tuple(extra))

    def to_json(self) -> dict:
        return {"steps": [s.to_json() for s in self.steps]}

    @classmethod
    def from_json(cls, obj) -> DiffeoChain:
        try:
            return cls(tuple(step_from_json(s) for s in obj["steps"]))
        except ParseError:
            raise
        except (KeyError, TypeError, ValueError, ShapeMismatch) as exc:
            raise ParseError(f"invalid chain: {exc}") from exc


Map = Union[Permutation, MonomialMap, TranslationMap, DiffeoChain]


def step_from_json(obj) -> Step:
    try:
        kind = obj["kind"]
        if kind == "permutation":
            return Permutation(tuple(obj["perm"]))
        if kind == "monomial":
            return MonomialMap(
                IntMatrix.from_json(obj["forward"]), IntMatrix.from_json(obj["backward"])
            )
        if kind == "translation":
            return TranslationMap(tuple(ExactScalar.from_json(s) for s in obj["scale"]))
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError, ShapeMismatch, NotUnimodular) as exc:
        raise ParseError(f"invalid chain step: {exc}") from exc
    raise ParseError(f"unknown step kind {obj.get('kind')!r}")


def monomial_from_block(k_block: IntMatrix, n: int) -> MonomialMap:
    """Monomial map acting by ``k_block`` on ``z_1..z_m`` and fixing ``z_{m+1}..z_n``."""
    if not k_block.is_square:
        raise ShapeMismatch("block must be square")
    if abs(det(k_block)) != 1:
        raise NotUnimodular(f"block determinant is {det(k_block)}")
    return MonomialMap(block_diag(k_block, n), block_diag(unimodular_inverse(k_block), n))


def apply_point(map: Map, z: Sequence, precision_bits: int = 128):
    return map.apply(z, precision_bits)


def invert(map: Map) -> Map:
    return map.inverse()


def pushforward_equation(map: Map, eq: TorusEquation) -> TorusEquation:
    return map.pushforward(eq)


def pushforward_arrangement(map: Map, a: ToricArrangement) -> ToricArrangement:
    if a.n != map.dim:
        raise ShapeMismatch(f"arrangement in dimension {a.n}, map acts on {map.dim}")
    return ToricArrangement(a.n, [map.pushforward(eq) for eq in a.equations])


def compose(chain: DiffeoChain, step: Map) -> DiffeoChain:
    return chain.then(step)
