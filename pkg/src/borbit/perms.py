"""Symmetric group in one-line notation, reduced words, and Bruhat order.

A permutation of ``{1, ..., n}`` is a tuple of the integers ``1..n``;
``p[i-1]`` is the image of ``i``.  Composition is right-to-left:
``compose(p, q)`` applies ``q`` first.  Consequently multiplying by the
simple transposition ``s_i`` on the left swaps the *values* ``i`` and
``i+1``, while multiplying on the right swaps the *positions* ``i`` and
``i+1``.

Words in the generators are tuples of indices: ``(1, 3, 2)`` stands for
the product ``s_1 s_3 s_2``, evaluated left factor first, i.e. the
rightmost letter acts first on points.
"""

from __future__ import annotations

import itertools
from bisect import insort
from functools import lru_cache
from typing import Iterator, Sequence

Perm = tuple[int, ...]
Word = tuple[int, ...]

#: Longest reduced word accepted by the subword-enumeration routines.
WORD_LENGTH_CAP = 20


class CapExceeded(Exception):
    """An enumeration would exceed its configured size cap."""


def check_perm(p: Sequence[int]) -> Perm:
    """Validate and normalise a one-line permutation.

    >>> check_perm([2, 1])
    (2, 1)
    """
    t = tuple(p)
    if sorted(t) != list(range(1, len(t) + 1)):
        raise ValueError(f"not a permutation of 1..{len(t)}: {t!r}")
    return t


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def compose(p: Perm, q: Perm) -> Perm:
    """Product ``p q`` acting as the map ``i -> p(q(i))``.

    >>> compose((2, 1, 3, 4), (1, 3, 2, 4))   # s_1 s_2
    (2, 3, 1, 4)
    """
    if len(p) != len(q):
        raise ValueError(f"size mismatch: {len(p)} vs {len(q)}")
    return tuple(p[v - 1] for v in q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v - 1] = i + 1
    return tuple(out)


def simple(n: int, i: int) -> Perm:
    """The simple transposition ``s_i`` exchanging ``i`` and ``i+1``."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"simple reflection index out of range: {i}")
    return transposition(n, i, i + 1)


def transposition(n: int, i: int, j: int) -> Perm:
    if not (1 <= i <= n and 1 <= j <= n and i != j):
        raise ValueError(f"transposition indices out of range: ({i}, {j})")
    out = list(range(1, n + 1))
    out[i - 1], out[j - 1] = out[j - 1], out[i - 1]
    return tuple(out)


def length(p: Perm) -> int:
    """Coxeter length = number of inversions.

    >>> length((3, 4, 1, 2))
    4
    """
    n = len(p)
    return sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])


def evaluate_word(n: int, word: Sequence[int]) -> Perm:
    """Product of the simple transpositions named by ``word``.

    >>> evaluate_word(4, (1, 3, 2))
    (2, 4, 1, 3)
    """
    acc = list(range(1, n + 1))
    for i in word:
        if not 1 <= i <= n - 1:
            raise ValueError(f"letter out of range: s_{i} in S_{n}")
        acc[i - 1], acc[i] = acc[i], acc[i - 1]
    return tuple(acc)


def is_reduced(n: int, word: Sequence[int]) -> bool:
    return length(evaluate_word(n, word)) == len(word)


def left_descents(p: Perm) -> tuple[int, ...]:
    """Indices ``i`` with ``length(s_i p) < length(p)``."""
    pos = inverse(p)
    return tuple(i for i in range(1, len(p)) if pos[i - 1] > pos[i])


def right_descents(p: Perm) -> tuple[int, ...]:
    return tuple(i for i in range(1, len(p)) if p[i - 1] > p[i])


def reduced_word(p: Perm) -> Word:
    """Deterministic reduced word, peeling the smallest left descent.

    >>> reduced_word((3, 4, 1, 2))
    (2, 1, 3, 2)
    >>> evaluate_word(4, reduced_word((3, 4, 1, 2)))
    (3, 4, 1, 2)
    """
    n = len(p)
    word = []
    q = p
    ident = identity(n)
    while q != ident:
        i = left_descents(q)[0]
        word.append(i)
        q = compose(simple(n, i), q)
    return tuple(word)


def bruhat_leq(u: Perm, w: Perm) -> bool:
    """Bruhat order via prefix dominance.

    ``u <= w`` iff for every ``i`` the sorted initial values
    ``{u(1), ..., u(i)}`` are entrywise at most ``{w(1), ..., w(i)}``.

    >>> bruhat_leq((2, 1, 3, 4), (3, 1, 4, 2))
    True
    >>> bruhat_leq((1, 2, 4, 3), (2, 1, 3, 4))
    False
    """
    if len(u) != len(w):
        raise ValueError(f"size mismatch: {len(u)} vs {len(w)}")
    if u == w:
        return True
    su: list[int] = []
    sw: list[int] = []
    for i in range(len(u) - 1):
        insort(su, u[i])
        insort(sw, w[i])
        if any(a > b for a, b in zip(su, sw)):
            return False
    return True


@lru_cache(maxsize=None)
def lower_interval(w: Perm, word_cap: int = WORD_LENGTH_CAP) -> frozenset[Perm]:
    """All permutations below ``w``, by enumerating subwords of one reduced word.

    The set of subword evaluations of any reduced word for ``w`` is exactly
    the lower Bruhat interval of ``w``.  The running set of partial products
    is extended one letter at a time, which keeps the enumeration polynomial
    in the interval size instead of ``2**length``.
    """
    word = reduced_word(w)
    if len(word) > word_cap:
        raise CapExceeded(
            f"reduced word of length {len(word)} exceeds cap {word_cap}"
        )
    n = len(w)
    reach: set[Perm] = {identity(n)}
    for i in word:
        s = simple(n, i)
        reach |= {compose(p, s) for p in reach}
    return frozenset(reach)


def bruhat_leq_oracle(u: Perm, w: Perm, word_cap: int = WORD_LENGTH_CAP) -> bool:
    """Independent Bruhat test by subword enumeration (for cross-checks)."""
    if len(u) != len(w):
        raise ValueError(f"size mismatch: {len(u)} vs {len(w)}")
    return u in lower_interval(w, word_cap)


def pattern_positions(w: Perm, pattern: Perm) -> tuple[int, ...] | None:
    """Positions (1-based, increasing) of the first embedding of ``pattern``.

    Returns ``None`` when ``w`` avoids the pattern.  A pattern embeds at
    positions ``i_1 < ... < i_m`` when the values ``w(i_1), ..., w(i_m)``
    are in the same relative order as the pattern.

    >>> pattern_positions((3, 1, 4, 2), (3, 1, 4, 2))
    (1, 2, 3, 4)
    >>> pattern_positions((2, 1, 4, 3), (3, 4, 1, 2)) is None
    True
    """
    m = len(pattern)
    for combo in itertools.combinations(range(len(w)), m):
        vals = [w[i] for i in combo]
        order = sorted(vals)
        if all(order[pattern[t] - 1] == vals[t] for t in range(m)):
            return tuple(i + 1 for i in combo)
    return None


def contains_pattern(w: Perm, pattern: Perm) -> bool:
    return pattern_positions(w, pattern) is not None


def all_perms(n: int) -> Iterator[Perm]:
    """All of S_n in lexicographic one-line order."""
    return itertools.permutations(range(1, n + 1))


def longest_element(n: int) -> Perm:
    return tuple(range(n, 0, -1))


def format_perm(p: Perm) -> str:
    """One-line serialisation: ``(2, 4, 1, 3)`` -> ``"2,4,1,3"``."""
    return ",".join(str(v) for v in p)


def parse_perm(text: str, n: int | None = None) -> Perm:
    """Inverse of :func:`format_perm`; ``"id"`` needs an explicit ``n``."""
    text = text.strip()
    if text == "id":
        if n is None:
            raise ValueError('"id" requires the group size')
        return identity(n)
    try:
        p = check_perm([int(part) for part in text.split(",")])
    except ValueError as exc:
        raise ValueError(f"bad permutation {text!r}: {exc}") from None
    if n is not None and len(p) != n:
        raise ValueError(f"expected a permutation of 1..{n}, got {text!r}")
    return p


def format_word(word: Word) -> str:
    """Generator-word serialisation: ``(1, 3, 2)`` -> ``"s1.s3.s2"``."""
    if not word:
        return "id"
    return ".".join(f"s{i}" for i in word)


def parse_word(text: str) -> Word:
    """Inverse of :func:`format_word`; bare indices like ``"1.3.2"`` also work."""
    text = text.strip()
    if text in ("", "id"):
        return ()
    letters = []
    for part in text.split("."):
        part = part.strip()
        if part.startswith("s"):
            part = part[1:]
        if not part.isdigit() or int(part) < 1:
            raise ValueError(f"bad generator word: {text!r}")
        letters.append(int(part))
    return tuple(letters)
