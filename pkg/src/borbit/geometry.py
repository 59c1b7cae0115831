"""Exact flag geometry: membership tests and identity verification.

Everything here reduces to exact ranks of concatenated column blocks over
the rationals: complete-flag compatibility with a square-zero matrix,
Schubert rank conditions, membership in labelled incidence sets, the
curve and factorisation identities behind the tangent bookkeeping, and
blueprints for the Bott-Samelson-style resolutions read off a reduced
word.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .atlas import Context, OrbitLabel, label_perm
from .perms import Perm, evaluate_word, is_reduced, length, transposition
from .ratmat import RationalMatrix
from .tangent import CurveSpec, Root, base_point, curve, full_corner_positions, phi_plus


def x_matrix(ctx: Context) -> RationalMatrix:
    """The base matrix E_{1,n-k+1} + ... + E_{k,n}."""
    return base_point(ctx)


def rank(m: RationalMatrix) -> int:
    return m.rank()


def is_two_nilpotent_of_rank(m: RationalMatrix, k: int) -> bool:
    return (m * m).is_zero() and m.rank() == k


def in_Ck(ctx: Context, g: RationalMatrix) -> bool:
    """Membership in the base point's stabiliser group.

    Runs both characterisations - the block shape (upper block-triangular
    with equal outer corner blocks) and the commutation test - and insists
    they agree.  ``g`` must be invertible.
    """
    n, k = ctx.n, ctx.k
    if g.nrows != n or g.ncols != n:
        raise ValueError(f"expected a {n}x{n} matrix")
    if g.rank() != n:
        raise ValueError("matrix is singular")
    by_blocks = (
        all(
            g.rows[r][c] == 0
            for r in range(k, n)
            for c in range(min(k, r))
        )
        and all(
            g.rows[r][c] == 0
            for r in range(n - k, n)
            for c in range(k, min(n - k, r))
        )
        and all(
            g.rows[r][c] == g.rows[r + n - k][c + n - k]
            for r in range(k)
            for c in range(k)
        )
    )
    x = x_matrix(ctx)
    by_commutation = (g * x) == (x * g)
    if by_blocks != by_commutation:
        raise AssertionError(
            "stabiliser characterisations disagree; this is a bug"
        )
    return by_blocks


@dataclass(frozen=True)
class Flag:
    """A complete flag: V^i is the span of the first i columns of ``basis``."""

    basis: RationalMatrix

    def __post_init__(self):
        if self.basis.nrows != self.basis.ncols:
            raise ValueError("flag basis must be square")
        if self.basis.rank() != self.basis.nrows:
            raise ValueError("flag basis is singular")

    @property
    def n(self) -> int:
        return self.basis.nrows

    def subspace(self, i: int) -> RationalMatrix:
        return self.basis.take_columns(i)


def standard_flag(n: int) -> Flag:
    return Flag(RationalMatrix.matrix_identity(n))


def permutation_flag(p: Perm) -> Flag:
    return Flag(RationalMatrix.permutation(p))


def compatible(ctx: Context, u: RationalMatrix, f: Flag) -> bool:
    """Does ``u`` kill V^i for i <= n-k and drop each later V^i into
    V^{i-(n-k)}?  Containments are exact rank comparisons."""
    n, k = ctx.n, ctx.k
    if f.n != n or u.nrows != n or u.ncols != n:
        raise ValueError(f"expected size {n}")
    if not (u * f.subspace(n - k)).is_zero():
        return False
    for i in range(n - k + 1, n + 1):
        small = f.subspace(i - (n - k))
        if small.augment(u * f.subspace(i)).rank() != i - (n - k):
            return False
    return True


@dataclass(frozen=True)
class RankConditionSet:
    """Schubert conditions: dim(V^i + K^j) <= bound for each (i, j)."""

    tau: Perm
    conditions: tuple[tuple[int, int, int], ...]


def schubert_conditions(tau: Perm) -> RankConditionSet:
    """All n^2 rank bounds ``i + j - #{a <= i : tau(a) <= j}``."""
    n = len(tau)
    conds = tuple(
        (i, j, i + j - sum(1 for a in range(i) if tau[a] <= j))
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    )
    return RankConditionSet(tau, conds)


def flag_in_schubert(f: Flag, tau: Perm) -> bool:
    """Is the flag in the Schubert variety of ``tau`` (standard reference
    flag)?  dim(V^i + K^j) is the rank of the augmented column block."""
    n = len(tau)
    if f.n != n:
        raise ValueError(f"expected a flag in dimension {n}")
    ident = RationalMatrix.matrix_identity(n)
    for i, j, bound in schubert_conditions(tau).conditions:
        if f.subspace(i).augment(ident.take_columns(j)).rank() > bound:
            return False
    return True


def incidence_member(ctx: Context, u: RationalMatrix, f: Flag, lbl: OrbitLabel) -> bool:
    """Is (u, f) in the labelled incidence set: u compatible with f and
    f inside the Schubert variety of the label's product permutation?"""
    return compatible(ctx, u, f) and flag_in_schubert(f, label_perm(lbl))


def witness_flag(lbl: OrbitLabel) -> Flag:
    """The permutation flag of the label's product; together with
    ``rep_matrix`` it always passes ``incidence_member``."""
    return permutation_flag(label_perm(lbl))


@dataclass(frozen=True)
class CurveReport:
    """Outcome of the per-sample curve identities; empty failures = pass."""

    root: Root
    samples: tuple[Fraction, ...]
    failures: tuple[tuple[str, str], ...]

    @property
    def ok(self) -> bool:
        return not self.failures


DEFAULT_SAMPLES: tuple[Fraction, ...] = (
    Fraction(1),
    Fraction(-1),
    Fraction(2),
    Fraction(1, 3),
)


def verify_curve(
    ctx: Context, rt: Root, samples: tuple[Fraction, ...] = DEFAULT_SAMPLES
) -> CurveReport:
    """Check the curve of a root pointwise, with exact arithmetic.

    Per sample t != 0:
      * the curve point is square-zero of rank k;
      * it equals the conjugate of the base point by I + t E_{j,i};
      * I + t E_{j,i} factors as (upper triangular, invertible) *
        (reflection permutation matrix) * (I + t^{-1} E_{i,j}), certifying
        which Borel double coset the conjugator lives in;
      * subtracting the base point and the quadratic term leaves exactly
        t times the tabulated tangent vector.
    """
    n, k = ctx.n, ctx.k
    spec = curve(ctx, rt)
    E = RationalMatrix.elementary
    ident = RationalMatrix.matrix_identity(n)
    i, j = rt.i, rt.j
    x = base_point(ctx)
    failures: list[tuple[str, str]] = []

    if spec.point(0) != x:
        failures.append(("0", "constant-term"))

    for t in samples:
        t = Fraction(t)
        tag = str(t)
        p = spec.point(t)
        if not (p * p).is_zero() or p.rank() != k:
            failures.append((tag, "square-zero-rank"))
        lower = ident + t * E(n, j, i)
        lower_inv = ident - t * E(n, j, i)
        if p != lower * x * lower_inv:
            failures.append((tag, "conjugation"))
        reconstructed = p - x - (t * t) * spec.quadratic
        if reconstructed != t * spec.tangent_vector:
            failures.append((tag, "linear-coefficient"))
        if t == 0:
            continue
        refl = RationalMatrix.permutation(transposition(n, i, j))
        upper = refl + t * E(n, j, j) - (1 / t) * E(n, i, i) - E(n, j, i)
        if not upper.is_upper_triangular() or any(
            upper.rows[d][d] == 0 for d in range(n)
        ):
            failures.append((tag, "factor-not-borel"))
        if upper * refl * (ident + (1 / t) * E(n, i, j)) != lower:
            failures.append((tag, "factorisation"))
    return CurveReport(rt, tuple(Fraction(t) for t in samples), tuple(failures))


def tangent_stack_rank(ctx: Context) -> int:
    """Rank of all corner-block positions stacked with all curve tangents."""
    n = ctx.n
    E = RationalMatrix.elementary
    rows = [E(n, r, s).flatten() for (r, s) in full_corner_positions(ctx)]
    rows += [curve(ctx, rt).tangent_vector.flatten() for rt in phi_plus(ctx)]
    if not rows:
        return 0
    return RationalMatrix(rows).rank()


def tangent_independence(ctx: Context) -> bool:
    """Do the corner positions plus all curve tangents span a space of
    dimension exactly 2k(n-k)?"""
    return tangent_stack_rank(ctx) == 2 * ctx.k * (ctx.n - ctx.k)


@dataclass(frozen=True)
class ResolutionBlueprint:
    """Flag-chain data for a Bott-Samelson-style resolution.

    Row ``s`` lists the subspace symbols of the s-th flag; flag ``s``
    agrees with flag ``s-1`` (row 0 being the standard flag ``K1..Kn``)
    everywhere except position ``moves[s-1]``.  Symbols surviving into the
    final flag are named ``W<dim>``; transient ones ``U<dim>`` (primed on
    reuse).  ``relations`` are the compatibility constraints tying the
    matrix to the final flag.
    """

    n: int
    k: int
    moves: tuple[int, ...]
    flags: tuple[tuple[str, ...], ...]
    final: tuple[str, ...]
    relations: tuple[str, ...]


def resolution_blueprint(
    ctx: Context, lbl: OrbitLabel, word: tuple[int, ...]
) -> ResolutionBlueprint:
    """Blueprint from a reduced word for the label's product permutation."""
    n, k = ctx.n, ctx.k
    tau = label_perm(lbl)
    for letter in word:
        if not 1 <= letter <= n - 1:
            raise ValueError(f"letter out of range: s_{letter}")
    if evaluate_word(n, word) != tau:
        raise ValueError(
            f"word does not evaluate to the label product {tau}"
        )
    if not is_reduced(n, word) or len(word) != length(tau):
        raise ValueError("word is not reduced")

    names = []
    dead_seen: dict[int, int] = {}
    for s, pos in enumerate(word):
        if any(later == pos for later in word[s + 1 :]):
            primes = "'" * dead_seen.get(pos, 0)
            dead_seen[pos] = dead_seen.get(pos, 0) + 1
            names.append(f"U{pos}{primes}")
        else:
            names.append(f"W{pos}")

    current = [f"K{m}" for m in range(1, n + 1)]
    rows = []
    for s, pos in enumerate(word):
        current[pos - 1] = names[s]
        rows.append(tuple(current))
    final = rows[-1] if rows else tuple(current)

    relations = [f"{final[n - k - 1]} <= Ker(u)"]
    for i in range(n - k + 1, n + 1):
        relations.append(f"u({final[i - 1]}) <= {final[i - (n - k) - 1]}")

    return ResolutionBlueprint(
        n, k, tuple(word), tuple(rows), final, tuple(relations)
    )


def blueprint_to_json(bp: ResolutionBlueprint) -> str:
    return json.dumps(
        {
            "flags": len(bp.moves),
            "moves": list(bp.moves),
            "compat": f"2-nilpotent rank <= {bp.k}, V_r-compatible",
            "chain": [" < ".join(row) for row in bp.flags],
            "relations": list(bp.relations),
        },
        indent=2,
    )
