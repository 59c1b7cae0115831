"""Tangent-space bookkeeping and the smoothness verdict rules.

For each positive root of the stabiliser of the base point there is an
explicit curve through the base point inside the orbit closure; its tangent
vector, together with the tangent space of the base orbit, spans the full
tangent space of the ambient conjugacy class.  Which curve tangents survive
inside a given labelled closure is controlled by the closure order on the
reflections' cosets; counting them gives exact tangent dimensions for
upper labels and lower bounds in general.  A Lie-bracket closure under the
base-point Borel stabiliser sharpens the lower bound.

The verdict engine applies six rules in order: a pattern criterion for
rank one, fibration criteria when ``alpha`` is longest or ``sigma`` is
trivial, the exact tangent count for upper labels, and the two
tangent-versus-dimension bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Literal

from .atlas import (
    Context,
    OrbitLabel,
    coset_of,
    dim_y0,
    dimension,
    is_upper_label,
    label_of_coset,
    label_perm,
)
from .perms import (
    Perm,
    bruhat_leq,
    compose,
    identity,
    length,
    pattern_positions,
    transposition,
)
from .poset import leq, leq_witness
from .ratmat import RationalMatrix

INSIDE_GLK = "INSIDE_GLK"
DELTA = "DELTA"
CROSS_FAR = "CROSS_FAR"
TOP_MIDDLE = "TOP_MIDDLE"
MIDDLE_BOTTOM = "MIDDLE_BOTTOM"

#: Patterns whose presence makes a Schubert variety singular.
SINGULAR_PATTERNS: tuple[Perm, ...] = ((4, 2, 3, 1), (3, 4, 1, 2))

#: Pattern controlling rank-one singularity.
RANK_ONE_PATTERN: Perm = (3, 1, 4, 2)


@dataclass(frozen=True)
class Root:
    """A positive stabiliser root, recorded as the pair ``i < j``."""

    i: int
    j: int
    family: str


def classify_root(ctx: Context, i: int, j: int) -> str | None:
    """Family of ``(i, j)`` in the stabiliser root system, or None."""
    n, k = ctx.n, ctx.k
    if not (1 <= i < j <= n):
        return None
    if j <= k:
        return INSIDE_GLK
    if i <= k and j == i + n - k:
        return DELTA
    if i <= k and j > n - k:
        return CROSS_FAR
    if i <= k < j <= n - k:
        return TOP_MIDDLE
    if k < i <= n - k < j:
        return MIDDLE_BOTTOM
    return None


def root(ctx: Context, i: int, j: int) -> Root:
    family = classify_root(ctx, i, j)
    if family is None:
        raise ValueError(f"({i}, {j}) is not a stabiliser root for {ctx}")
    return Root(i, j, family)


@lru_cache(maxsize=None)
def phi_plus(ctx: Context) -> tuple[Root, ...]:
    """All positive stabiliser roots; count 2k(n-k) - k(k+1)/2."""
    n, k = ctx.n, ctx.k
    out = tuple(
        Root(i, j, family)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        if (family := classify_root(ctx, i, j)) is not None
    )
    assert len(out) == 2 * k * (n - k) - k * (k + 1) // 2
    return out


def phi_plus_restricted(ctx: Context) -> tuple[Root, ...]:
    """Roots kept by the upper-label theory: drop pairings of the first block
    with the last block unless ``j > i + n - k``."""
    n, k = ctx.n, ctx.k
    return tuple(
        r
        for r in phi_plus(ctx)
        if not (r.i <= k and r.j > n - k and r.i + n - k >= r.j)
    )


@dataclass(frozen=True)
class CurveSpec:
    """A curve ``t -> constant + t*linear + t^2*quadratic`` in the closure."""

    root: Root
    constant: RationalMatrix
    linear: RationalMatrix
    quadratic: RationalMatrix

    @property
    def tangent_vector(self) -> RationalMatrix:
        return self.linear

    def point(self, t: Fraction | int) -> RationalMatrix:
        t = Fraction(t)
        return self.constant + t * self.linear + (t * t) * self.quadratic


def base_point(ctx: Context) -> RationalMatrix:
    """The base matrix ``sum_{r<=k} E_{r, r+n-k}``."""
    n, k = ctx.n, ctx.k
    out = RationalMatrix.zero(n)
    for r in range(1, k + 1):
        out = out + RationalMatrix.elementary(n, r, r + n - k)
    return out


def curve(ctx: Context, rt: Root) -> CurveSpec:
    """The explicit curve attached to a stabiliser root.

    Conjugating the base point by the one-parameter subgroup of the
    negative root gives, per family, the linear and quadratic coefficients
    below; the linear one is the curve's tangent vector at the base point.
    """
    n, k = ctx.n, ctx.k
    if classify_root(ctx, rt.i, rt.j) != rt.family:
        raise ValueError(f"root does not belong to {ctx}: {rt}")
    i, j = rt.i, rt.j
    E = RationalMatrix.elementary
    zero = RationalMatrix.zero(n)
    if rt.family == INSIDE_GLK:
        linear, quadratic = E(n, j, i + n - k), zero
    elif rt.family == DELTA:
        linear = E(n, i + n - k, i + n - k) - E(n, i, i)
        quadratic = -E(n, i + n - k, i)
    elif rt.family == CROSS_FAR:
        linear, quadratic = E(n, j, i + n - k) - E(n, j - n + k, i), zero
    elif rt.family == TOP_MIDDLE:
        linear, quadratic = E(n, j, i + n - k), zero
    else:  # MIDDLE_BOTTOM
        linear, quadratic = -E(n, j - n + k, i), zero
    return CurveSpec(rt, base_point(ctx), linear, quadratic)


def root_coset_label(ctx: Context, rt: Root) -> OrbitLabel:
    """Label of the coset of the reflection ``r_(i,j)``."""
    return label_of_coset(ctx, coset_of(ctx, transposition(ctx.n, rt.i, rt.j)))


def t_k_set(ctx: Context, lbl: OrbitLabel) -> tuple[Root, ...]:
    """Roots whose reflection coset lies below the label in closure order."""
    return tuple(
        rt for rt in phi_plus(ctx) if leq(ctx, root_coset_label(ctx, rt), lbl)
    )


def t_k_table(
    ctx: Context, lbl: OrbitLabel
) -> tuple[tuple[Root, bool, bool, Perm | None], ...]:
    """Per-root record (root, in t_k, kept by the upper-label restriction,
    Bruhat witness) used by reports."""
    restricted = set(phi_plus_restricted(ctx))
    out = []
    for rt in phi_plus(ctx):
        witness = leq_witness(ctx, root_coset_label(ctx, rt), lbl)
        out.append((rt, witness is not None, rt in restricted, witness))
    return tuple(out)


def s_set(ctx: Context, lbl: OrbitLabel) -> tuple[Root, ...]:
    """The t_k roots that survive the upper-label restriction."""
    restricted = set(phi_plus_restricted(ctx))
    return tuple(rt for rt in t_k_set(ctx, lbl) if rt in restricted)


def tangent_lower_bound(ctx: Context, lbl: OrbitLabel) -> int:
    """k(k+1)/2 + |t_k|: a lower bound for the tangent dimension at the
    base point of the labelled closure."""
    return dim_y0(ctx) + len(t_k_set(ctx, lbl))


def tangent_dimension_upper(ctx: Context, lbl: OrbitLabel) -> int:
    """Exact tangent dimension at the base point, for upper labels only."""
    if not is_upper_label(ctx, lbl):
        raise ValueError(
            f"tangent dimension formula requires an upper label: {lbl}"
        )
    return tangent_lower_bound(ctx, lbl)


def base_orbit_tangent_positions(ctx: Context) -> tuple[tuple[int, int], ...]:
    """Positions E_{r,s} spanning the base orbit's tangent space: the
    upper-triangular part of the corner block (r <= s - (n-k))."""
    n, k = ctx.n, ctx.k
    return tuple(
        (r, s)
        for r in range(1, k + 1)
        for s in range(n - k + 1, n + 1)
        if r <= s - (n - k)
    )


def full_corner_positions(ctx: Context) -> tuple[tuple[int, int], ...]:
    """All k^2 positions of the corner block {1..k} x {n-k+1..n}."""
    n, k = ctx.n, ctx.k
    return tuple(
        (r, s) for r in range(1, k + 1) for s in range(n - k + 1, n + 1)
    )


@lru_cache(maxsize=None)
def borel_stabiliser_basis(ctx: Context) -> tuple[RationalMatrix, ...]:
    """Basis of the upper-triangular part of the base point's stabiliser
    algebra: paired corner blocks plus every block strictly above the
    diagonal of the (k, n-2k, k) block structure."""
    n, k = ctx.n, ctx.k
    E = RationalMatrix.elementary
    out = []
    for a in range(1, k + 1):
        for b in range(a, k + 1):
            out.append(E(n, a, b) + E(n, a + n - k, b + n - k))
    for a in range(k + 1, n - k + 1):
        for b in range(a, n - k + 1):
            out.append(E(n, a, b))
    for a in range(1, k + 1):
        for b in range(k + 1, n - k + 1):
            out.append(E(n, a, b))
    for a in range(1, k + 1):
        for b in range(n - k + 1, n + 1):
            out.append(E(n, a, b))
    for a in range(k + 1, n - k + 1):
        for b in range(n - k + 1, n + 1):
            out.append(E(n, a, b))
    return tuple(out)


class _Span:
    """Incremental exact row space: add vectors, track the rank."""

    def __init__(self):
        self.pivots: list[tuple[int, list[Fraction]]] = []

    def add(self, vec: tuple[Fraction, ...]) -> bool:
        v = list(vec)
        for piv, row in self.pivots:
            if v[piv] != 0:
                c = v[piv] / row[piv]
                for idx in range(len(v)):
                    v[idx] -= c * row[idx]
        for idx, val in enumerate(v):
            if val != 0:
                self.pivots.append((idx, v))
                return True
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)


def bk_span(ctx: Context, lbl: OrbitLabel) -> int:
    """Dimension of the bracket closure, under the Borel stabiliser
    algebra, of the base-orbit tangent space plus the label's curve
    tangents.  Always a lower bound for the tangent dimension."""
    n = ctx.n
    E = RationalMatrix.elementary
    seeds = [E(n, r, s) for (r, s) in base_orbit_tangent_positions(ctx)]
    seeds += [curve(ctx, rt).tangent_vector for rt in t_k_set(ctx, lbl)]
    span = _Span()
    queue = [m for m in seeds if span.add(m.flatten())]
    borel = borel_stabiliser_basis(ctx)
    while queue:
        v = queue.pop()
        for b in borel:
            w = b * v - v * b
            if span.add(w.flatten()):
                queue.append(w)
    return span.rank


def _character_index(ctx: Context, m: int) -> int:
    """Coordinate of basis position ``m`` in the stabiliser torus: the
    first and last blocks share coordinates 0..k-1, the middle block gets
    k..n-k-1."""
    n, k = ctx.n, ctx.k
    return m - 1 if m <= n - k else m - (n - k) - 1


def _matrix_character(ctx: Context, m: RationalMatrix) -> tuple[int, ...]:
    n, k = ctx.n, ctx.k
    chars = set()
    for r in range(1, n + 1):
        for s in range(1, n + 1):
            if m.entry(r, s) != 0:
                vec = [0] * (n - k)
                vec[_character_index(ctx, r)] += 1
                vec[_character_index(ctx, s)] -= 1
                chars.add(tuple(vec))
    if len(chars) != 1:
        raise ValueError("matrix is not a torus eigenvector")
    return chars.pop()


TangentTag = tuple[str, tuple[int, int]]


def weight_decomposition(
    ctx: Context,
) -> dict[tuple[int, ...], tuple[TangentTag, ...]]:
    """Group the 2k(n-k) tangent basis vectors by stabiliser-torus character.

    Tags are ``("base", (r, s))`` for base-orbit positions and
    ``("curve", (i, j))`` for curve tangents.  The trivial character
    collects exactly 2k vectors; each character pairing two distinct
    corner coordinates collects exactly 2.
    """
    n = ctx.n
    E = RationalMatrix.elementary
    out: dict[tuple[int, ...], list[TangentTag]] = {}
    for (r, s) in base_orbit_tangent_positions(ctx):
        char = _matrix_character(ctx, E(n, r, s))
        out.setdefault(char, []).append(("base", (r, s)))
    for rt in phi_plus(ctx):
        char = _matrix_character(ctx, curve(ctx, rt).tangent_vector)
        out.setdefault(char, []).append(("curve", (rt.i, rt.j)))
    return {char: tuple(tags) for char, tags in out.items()}


def omega_k(ctx: Context) -> Perm:
    """Longest element among the label ``alpha`` parts."""
    return tuple(range(ctx.k, 0, -1)) + tuple(range(ctx.k + 1, ctx.n + 1))


def o_k(ctx: Context) -> Perm:
    """Longest element of the block-diagonal Levi: each block reversed."""
    n, k = ctx.n, ctx.k
    return (
        tuple(range(k, 0, -1))
        + tuple(range(n - k, k, -1))
        + tuple(range(n, n - k, -1))
    )


Status = Literal["smooth", "singular", "unknown"]


@dataclass(frozen=True)
class Verdict:
    status: Status
    rule: str | None
    witness: dict

    def to_dict(self) -> dict:
        return {"verdict": self.status, "rule": self.rule, "witness": self.witness}


def _pattern_verdict(rule: str, w: Perm, patterns: tuple[Perm, ...]) -> Verdict:
    for pattern in patterns:
        positions = pattern_positions(w, pattern)
        if positions is not None:
            return Verdict(
                "singular",
                rule,
                {"pattern": list(pattern), "positions": list(positions)},
            )
    return Verdict(
        "smooth",
        rule,
        {"avoids": [list(p) for p in patterns], "tested": list(w)},
    )


def verdict(ctx: Context, lbl: OrbitLabel) -> Verdict:
    """First matching rule decides; falls through to ``unknown``.

    R1: rank one - singular exactly on one pattern in sigma.
    R2: alpha longest - smoothness of a Grassmannian Schubert variety.
    R3: sigma trivial - smoothness of a rank-k flag Schubert variety.
    R4: upper label - exact tangent count versus dimension.
    R5: tangent lower bound exceeds dimension.
    R6: bracket-closure span exceeds dimension.
    """
    if ctx.k == 1:
        return _pattern_verdict("R1", lbl.sigma, (RANK_ONE_PATTERN,))
    if lbl.alpha == omega_k(ctx):
        return _pattern_verdict(
            "R2", compose(lbl.sigma, o_k(ctx)), SINGULAR_PATTERNS
        )
    if lbl.sigma == identity(ctx.n):
        return _pattern_verdict("R3", lbl.alpha[: ctx.k], SINGULAR_PATTERNS)
    dim = dimension(ctx, lbl)
    count = len(t_k_set(ctx, lbl))
    moved = length(lbl.sigma) + length(lbl.alpha)
    if is_upper_label(ctx, lbl):
        status = "smooth" if count == moved else "singular"
        return Verdict(status, "R4", {"t_k": count, "length": moved})
    bound = dim_y0(ctx) + count
    if bound > dim:
        return Verdict(
            "singular", "R5", {"tangent_lower_bound": bound, "dimension": dim}
        )
    span = bk_span(ctx, lbl)
    if span > dim:
        return Verdict("singular", "R6", {"bk_span": span, "dimension": dim})
    return Verdict("unknown", None, {"tangent_lower_bound": bound, "bk_span": span, "dimension": dim})


def verdict_json(ctx: Context, lbl: OrbitLabel) -> dict:
    from .perms import format_perm

    v = verdict(ctx, lbl)
    return {
        "label": {
            "n": ctx.n,
            "k": ctx.k,
            "sigma": format_perm(lbl.sigma),
            "alpha": format_perm(lbl.alpha),
        },
        **v.to_dict(),
    }
