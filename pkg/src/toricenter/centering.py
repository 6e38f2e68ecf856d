"""Turning a full-rank toric arrangement into a centered one.

The pipeline has four stages:

1. permute coordinates so the first ``m`` exponent columns form a
   nonsingular minor ``M_A``, and find a unimodular ``H`` with
   ``U = M_A @ H`` upper triangular;
2. apply the monomial map with exponent block ``K = H^-1``; the exponent
   rows become ``[U | P_rest]``;
3. for ``k = 1..m`` rescale coordinate ``m-k+1`` by ``gamma^-1`` where
   ``gamma`` is a ``d``-th root of the current constant of equation
   ``m-k+1`` (``d`` the diagonal entry of ``U`` there), which sets that
   constant to 1 without disturbing the rows below;
4. record everything as a :class:`CenteringCertificate`.

Sign note on the transformed exponents: substituting ``z = backward(t)``
gives row ``i`` of ``M_A @ H`` as the new exponents of ``t_1..t_m``. The
variant written with entries of ``K`` instead of ``H`` does not agree with
that substitution in general and is not used here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import NamedTuple, Sequence

from .arrangement import ToricArrangement, validate_hypothesis
from .errors import ParseError, PreconditionViolated, ToricError
from .intlinalg import (
    IntMatrix,
    block_diag,
    column_hnf_triangularize,
    det,
    is_upper_triangular,
    mat_mul,
    select_pivot_columns,
    unimodular_inverse,
)
from .monomial import (
    DiffeoChain,
    MonomialMap,
    Permutation,
    TranslationMap,
    monomial_from_block,
    pushforward_arrangement,
)
from .scalar import ExactScalar


class Triangularization(NamedTuple):
    sigma: Permutation
    H: IntMatrix
    K: IntMatrix
    U: IntMatrix
    C: ToricArrangement


def pivot_coordinate(m: int, k: int) -> int:
    """1-based coordinate rescaled by centering step ``k`` (``k = 1..m``)."""
    return m - k + 1


def step1_triangularize(a: ToricArrangement) -> Triangularization:
    m, n = validate_hypothesis(a)
    sigma = Permutation(select_pivot_columns(a.associated_matrix()))
    permuted = pushforward_arrangement(sigma, a)
    minor = permuted.associated_matrix().submatrix(range(m), range(m))
    h, u = column_hnf_triangularize(minor)
    k = unimodular_inverse(h)
    c = pushforward_arrangement(monomial_from_block(k, n), permuted)
    return Triangularization(sigma, h, k, u, c)


def _check_branch(branch: int, d: int) -> None:
    if isinstance(branch, bool) or not isinstance(branch, int) or not 0 <= branch < d:
        raise ValueError(f"branch index {branch!r} outside 0..{d - 1}")


def centering_step(
    c_prev: ToricArrangement, k: int, u: IntMatrix, branch: int = 0
) -> tuple[ToricArrangement, ExactScalar]:
    """Centering step ``k``: returns the rescaled arrangement and the root used."""
    m = c_prev.m
    if not 1 <= k <= m:
        raise ValueError(f"step {k} outside 1..{m}")
    i = pivot_coordinate(m, k) - 1
    d = u[i, i]
    if d <= 0:
        raise PreconditionViolated(f"diagonal entry d_{i + 1} = {d} is not positive")
    for r in range(i + 1, m):
        if not c_prev.equations[r].constant.is_one():
            raise PreconditionViolated(
                f"equation {r + 1} should already be centered before step {k}"
            )
        if c_prev.equations[r].exponents[i]:
            raise PreconditionViolated(
                f"equation {r + 1} has a nonzero exponent in pivot coordinate {i + 1}"
            )
    if c_prev.equations[i].exponents[i] != d:
        raise PreconditionViolated(
            f"equation {i + 1} has exponent {c_prev.equations[i].exponents[i]} "
            f"in coordinate {i + 1}, expected d = {d}"
        )
    _check_branch(branch, d)
    alpha = c_prev.equations[i].constant
    gamma = alpha.root(d, branch)
    c_next = pushforward_arrangement(_rescaling(c_prev.n, i + 1, gamma), c_prev)

    # the two case formulas overlap at the pivot row; both must give 1 there
    if not (alpha * gamma ** -c_prev.equations[i].exponents[i]).is_one():
        raise PreconditionViolated(f"gamma^{d} != alpha at equation {i + 1}")
    for r in range(i, m):
        if not c_next.equations[r].constant.is_one():
            raise PreconditionViolated(f"equation {r + 1} not centered after step {k}")
    return c_next, gamma


def _rescaling(n: int, coordinate: int, gamma: ExactScalar) -> TranslationMap:
    return TranslationMap.single(n, coordinate, gamma.inverse())


@dataclass(frozen=True)
class CenteringCertificate:
    """Everything needed to replay ``source -> target`` exactly.

    ``gammas[k-1]`` is the root used in step ``k`` (so ``gammas`` runs
    ``gamma_m, ..., gamma_1``); ``radicands[k-1]`` is the constant it was
    extracted from and ``branch_indices[k-1]`` the branch chosen.
    """

    sigma: Permutation
    H: IntMatrix
    K: IntMatrix
    U: IntMatrix
    gammas: tuple[ExactScalar, ...]
    radicands: tuple[ExactScalar, ...]
    branch_indices: tuple[int, ...]
    chain: DiffeoChain
    source: ToricArrangement
    target: ToricArrangement

    @property
    def m(self) -> int:
        return self.source.m

    @property
    def n(self) -> int:
        return self.source.n

    @property
    def diagonal(self) -> tuple[int, ...]:
        """``d_1..d_m``."""
        return tuple(self.U[i, i] for i in range(self.U.rows))

    @property
    def step_degrees(self) -> tuple[int, ...]:
        """Root degree of each centering step, in application order."""
        d = self.diagonal
        return tuple(d[pivot_coordinate(self.m, k) - 1] for k in range(1, self.m + 1))

    def folded_translation(self) -> TranslationMap:
        """The ``m`` rescalings merged into one (they touch distinct coordinates)."""
        scale = [ExactScalar()] * self.n
        for k, g in enumerate(self.gammas, start=1):
            scale[pivot_coordinate(self.m, k) - 1] = g.inverse()
        return TranslationMap(tuple(scale))

    def to_json(self) -> dict:
        return {
            "sigma": list(self.sigma.perm),
            "H": self.H.to_json(),
            "K": self.K.to_json(),
            "U": self.U.to_json(),
            "gammas": [g.to_json() for g in self.gammas],
            "radicands": [r.to_json() for r in self.radicands],
            "branch_indices": list(self.branch_indices),
            "chain": self.chain.to_json(),
            "folded_translation": self.folded_translation().to_json(),
            "source": self.source.to_json(),
            "target": self.target.to_json(),
        }

    @classmethod
    def from_json(cls, obj) -> CenteringCertificate:
        try:
            return cls(
                sigma=Permutation(tuple(obj["sigma"])),
                H=IntMatrix.from_json(obj["H"]),
                K=IntMatrix.from_json(obj["K"]),
                U=IntMatrix.from_json(obj["U"]),
                gammas=tuple(ExactScalar.from_json(g) for g in obj["gammas"]),
                radicands=tuple(ExactScalar.from_json(r) for r in obj["radicands"]),
                branch_indices=tuple(int(b) for b in obj["branch_indices"]),
                chain=DiffeoChain.from_json(obj["chain"]),
                source=ToricArrangement.from_json(obj["source"]),
                target=ToricArrangement.from_json(obj["target"]),
            )
        except ParseError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"invalid certificate: {exc}") from exc


def center(
    a: ToricArrangement, branch_indices: Sequence[int] | None = None
) -> CenteringCertificate:
    """Build a centered arrangement diffeomorphic to ``a`` together with its certificate.

    ``branch_indices[k-1]`` selects the root branch of step ``k``; the
    default is the principal root everywhere.
    """
    m, n = validate_hypothesis(a)
    if branch_indices is None:
        branch_indices = (0,) * m
    branch_indices = tuple(branch_indices)
    if len(branch_indices) != m:
        raise ValueError(f"need {m} branch indices, got {len(branch_indices)}")

    tri = step1_triangularize(a)
    steps: list = [tri.sigma, monomial_from_block(tri.K, n)]
    c = tri.C
    gammas, radicands = [], []
    for k in range(1, m + 1):
        coord = pivot_coordinate(m, k)
        radicands.append(c.equations[coord - 1].constant)
        c, gamma = centering_step(c, k, tri.U, branch_indices[k - 1])
        gammas.append(gamma)
        steps.append(_rescaling(n, coord, gamma))

    return CenteringCertificate(
        sigma=tri.sigma,
        H=tri.H,
        K=tri.K,
        U=tri.U,
        gammas=tuple(gammas),
        radicands=tuple(radicands),
        branch_indices=branch_indices,
        chain=DiffeoChain(tuple(steps)),
        source=a,
        target=c,
    )


def all_branch_vectors(cert: CenteringCertificate):
    """Every branch-index vector admissible for the root degrees of ``cert``."""
    return product(*(range(d) for d in cert.step_degrees))


@dataclass
class ExactCheck:
    """Outcome of :func:`verify_certificate_exact`; truthy iff every identity holds."""

    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    def fail(self, message: str) -> None:
        self.failures.append(message)


def replay(cert: CenteringCertificate) -> list[ToricArrangement]:
    """Source pushed through each chain step in turn (first entry is the source)."""
    stages = [cert.source]
    for step in cert.chain.steps:
        stages.append(pushforward_arrangement(step, stages[-1]))
    return stages


def verify_certificate_exact(cert: CenteringCertificate) -> ExactCheck:
    """Recheck every identity of ``cert`` in exact arithmetic."""
    check = ExactCheck()
    try:
        _verify_exact(cert, check)
    except (ToricError, ValueError, IndexError, TypeError) as exc:
        check.fail(f"certificate is malformed: {type(exc).__name__}: {exc}")
    return check


def _verify_exact(cert: CenteringCertificate, check: ExactCheck) -> None:
    m, n = validate_hypothesis(cert.source)
    if cert.target.m != m or cert.target.n != n:
        check.fail(f"target has shape {cert.target.m}x{cert.target.n}, source {m}x{n}")
        return
    for name, mat in (("H", cert.H), ("K", cert.K), ("U", cert.U)):
        if mat.shape != (m, m):
            check.fail(f"{name} has shape {mat.shape}, expected {(m, m)}")
            return
    if cert.sigma.dim != n:
        check.fail(f"sigma acts on {cert.sigma.dim} coordinates, expected {n}")
        return
    if len(cert.gammas) != m or len(cert.radicands) != m or len(cert.branch_indices) != m:
        check.fail("gammas, radicands and branch_indices must each have m entries")
        return

    if abs(det(cert.H)) != 1:
        check.fail(f"H is not unimodular (det {det(cert.H)})")
    ident = IntMatrix.identity(m)
    if mat_mul(cert.H, cert.K) != ident or mat_mul(cert.K, cert.H) != ident:
        check.fail("K is not the inverse of H")
    if not is_upper_triangular(cert.U):
        check.fail("U is not upper triangular")
    if any(d <= 0 for d in cert.diagonal):
        check.fail(f"U has a non-positive diagonal {cert.diagonal}")

    permuted = pushforward_arrangement(cert.sigma, cert.source).associated_matrix()
    minor = permuted.submatrix(range(m), range(m))
    if mat_mul(minor, cert.H) != cert.U:
        check.fail("M_A @ H != U")

    degrees = cert.step_degrees
    for k, (g, r, b, d) in enumerate(
        zip(cert.gammas, cert.radicands, cert.branch_indices, degrees), start=1
    ):
        if g**d != r:
            check.fail(f"gamma[{k}]^{d} != radicand[{k}] ({g}^{d} != {r})")
        elif not 0 <= b < d or r.root(d, b) != g:
            check.fail(f"gamma[{k}] is not branch {b} of the {d}-th root of {r}")

    steps = cert.chain.steps
    if len(steps) != m + 2:
        check.fail(f"chain has {len(steps)} steps, expected {m + 2}")
        return
    if steps[0] != cert.sigma:
        check.fail("chain step 1 is not the permutation sigma")
    expected_mono = MonomialMap(block_diag(cert.K, n), block_diag(cert.H, n))
    if steps[1] != expected_mono:
        check.fail("chain step 2 is not the monomial map with exponent block K")
    for k, g in enumerate(cert.gammas, start=1):
        expected = _rescaling(n, pivot_coordinate(m, k), g)
        if steps[k + 1] != expected:
            check.fail(f"chain step {k + 2} is not the rescaling by gamma[{k}]^-1")

    stages = replay(cert)
    c = stages[2]
    u_rows = [list(cert.U.row(i)) + list(permuted.row(i)[m:]) for i in range(m)]
    if c.associated_matrix() != IntMatrix(m, n, u_rows):
        check.fail("exponents after the monomial map are not [U | P_rest]")
    for k in range(1, m + 1):
        coord = pivot_coordinate(m, k)
        before, after = stages[k + 1], stages[k + 2]
        if before.equations[coord - 1].constant != cert.radicands[k - 1]:
            check.fail(f"radicand[{k}] is not the constant of equation {coord} before step {k}")
        for r in range(coord - 1, m):
            if not after.equations[r].constant.is_one():
                check.fail(f"equation {r + 1} is not centered after step {k}")

    final = stages[-1]
    for i, (got, want) in enumerate(zip(final.equations, cert.target.equations), start=1):
        if got != want:
            check.fail(f"pushforward of source equation {i} is {got}, target says {want}")
    if not cert.target.is_centered():
        check.fail("target is not centered")


def load_certificate(path) -> CenteringCertificate:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON ({exc})") from exc
    return CenteringCertificate.from_json(data)


def dump_certificate(cert: CenteringCertificate, path) -> None:
    Path(path).write_text(json.dumps(cert.to_json(), indent=2) + "\n")
