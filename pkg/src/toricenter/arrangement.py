"""Toric arrangements in (C*)^n and their basic predicates."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .errors import (
    EmptyArrangement,
    ParseError,
    RankDeficient,
    ShapeMismatch,
    TooManyEquations,
)
from .intlinalg import IntMatrix, decode_int, encode_int, rank
from .scalar import ExactScalar


@dataclass(frozen=True)
class TorusEquation:
    """The subtorus ``prod(z_j ** exponents[j]) == constant``."""

    exponents: tuple[int, ...]
    constant: ExactScalar

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(p) for p in self.exponents))
        if not isinstance(self.constant, ExactScalar):
            raise TypeError("constant must be an ExactScalar")

    @property
    def dim(self) -> int:
        return len(self.exponents)

    def is_degenerate(self) -> bool:
        return not any(self.exponents)

    def to_json(self) -> dict:
        return {
            "exponents": [encode_int(p) for p in self.exponents],
            "constant": self.constant.to_json(),
        }

    @classmethod
    def from_json(cls, obj) -> TorusEquation:
        try:
            return cls(
                tuple(decode_int(p) for p in obj["exponents"]),
                ExactScalar.from_json(obj["constant"]),
            )
        except ParseError:
            raise
        except (KeyError, TypeError) as exc:
            raise ParseError(f"invalid equation {obj!r}: {exc}") from exc

    def __str__(self) -> str:
        terms = [
            f"z{j + 1}" + (f"^{p}" if p != 1 else "")
            for j, p in enumerate(self.exponents)
            if p
        ]
        return f"{' '.join(terms) or '1'} = {self.constant}"


@dataclass(frozen=True)
class ToricArrangement:
    """An ordered list of subtori of ``(C*)^ambient_dim``.

    Order matters: certificates refer to equations by position, and the
    image of equation ``i`` is always equation ``i`` of the target.
    """

    ambient_dim: int
    equations: tuple[TorusEquation, ...]

    def __post_init__(self):
        object.__setattr__(self, "equations", tuple(self.equations))
        if self.ambient_dim < 1:
            raise ShapeMismatch(f"ambient dimension must be positive, got {self.ambient_dim}")
        for i, eq in enumerate(self.equations, start=1):
            if eq.dim != self.ambient_dim:
                raise ShapeMismatch(
                    f"equation {i} has {eq.dim} exponents in dimension {self.ambient_dim}"
                )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], constants: Sequence[ExactScalar]):
        if len(rows) != len(constants):
            raise ShapeMismatch("one constant per exponent row")
        if not rows:
            raise ShapeMismatch("use ToricArrangement(n, ()) for an empty arrangement")
        return cls(len(rows[0]), [TorusEquation(r, c) for r, c in zip(rows, constants)])

    @property
    def m(self) -> int:
        return len(self.equations)

    @property
    def n(self) -> int:
        return self.ambient_dim

    @property
    def constants(self) -> tuple[ExactScalar, ...]:
        return tuple(eq.constant for eq in self.equations)

    def associated_matrix(self) -> IntMatrix:
        if not self.equations:
            raise EmptyArrangement("an empty arrangement has no associated matrix")
        return IntMatrix(self.m, self.n, [eq.exponents for eq in self.equations])

    def is_complexified(self) -> bool:
        return all(eq.constant.is_unit_modulus() for eq in self.equations)

    def is_centered(self) -> bool:
        return all(eq.constant.is_one() for eq in self.equations)

    def with_constants(self, constants: Sequence[ExactScalar]) -> ToricArrangement:
        return ToricArrangement(
            self.n, [TorusEquation(eq.exponents, c) for eq, c in zip(self.equations, constants)]
        )

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "equations": [eq.to_json() for eq in self.equations],
        }

    @classmethod
    def from_json(cls, obj) -> ToricArrangement:
        try:
            n = obj["ambient_dim"]
            if not isinstance(n, int) or isinstance(n, bool):
                raise ParseError("'ambient_dim' must be an integer")
            return cls(n, [TorusEquation.from_json(e) for e in obj["equations"]])
        except ParseError:
            raise
        except (KeyError, TypeError, ShapeMismatch) as exc:
            raise ParseError(f"invalid arrangement: {exc}") from exc

    def __str__(self) -> str:
        return "\n".join(f"H{i}: {eq}" for i, eq in enumerate(self.equations, start=1))


def associated_matrix(a: ToricArrangement) -> IntMatrix:
    return a.associated_matrix()


def is_complexified(a: ToricArrangement) -> bool:
    return a.is_complexified()


def is_centered(a: ToricArrangement) -> bool:
    return a.is_centered()


def validate_hypothesis(a: ToricArrangement) -> tuple[int, int]:
    """Return ``(m, n)`` if ``n >= m >= 1`` and the exponent matrix has rank ``m``."""
    m, n = a.m, a.n
    if m == 0:
        raise EmptyArrangement("arrangement has no equations")
    if m > n:
        raise TooManyEquations(f"m {m} > n {n}")
    r = rank(a.associated_matrix())
    if r < m:
        raise RankDeficient(f"rank {r} < m {m}")
    return m, n


def load_arrangement(path) -> ToricArrangement:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON ({exc})") from exc
    return ToricArrangement.from_json(data)


def dump_arrangement(a: ToricArrangement, path) -> None:
    Path(path).write_text(json.dumps(a.to_json(), indent=2) + "\n")
