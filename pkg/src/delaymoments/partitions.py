"""Integer partitions and the symmetric-group combinatorics built on them.

Partitions index everything in this package: Schur moments, characters,
conjugacy classes and Littlewood-Richardson expansions.  All functions are
pure and return exact integers; the expensive ones (characters, dimensions,
Schur products) are memoized and their cached return values must not be
mutated by callers.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from functools import cache
from math import factorial, prod
from typing import Iterable, Iterator


class WeightMismatchError(ValueError):
    """Two partitions that must have equal weight do not."""


class ContainmentError(ValueError):
    """A partition required to contain another one does not."""


PartitionLike = "Partition | Iterable[int]"


class Partition:
    """A non-increasing tuple of positive integers; the empty partition is valid.

    The text form used across the package is comma-separated parts, e.g.
    "3,1,1"; the empty partition parses from "" or "0" and prints as "0".
    """

    __slots__ = ("_parts",)

    def __init__(self, parts: Iterable[int] = ()):
        ps = tuple(int(p) for p in parts)
        for a, b in zip(ps, ps[1:]):
            if a < b:
                raise ValueError(f"parts must be non-increasing: {ps}")
        if ps and ps[-1] <= 0:
            raise ValueError(f"parts must be positive: {ps}")
        self._parts = ps

    @classmethod
    def parse(cls, text: str) -> Partition:
        text = text.strip()
        if text in ("", "0"):
            return cls()
        return cls(int(tok) for tok in text.split(","))

    @property
    def parts(self) -> tuple[int, ...]:
        return self._parts

    @property
    def weight(self) -> int:
        return sum(self._parts)

    @property
    def length(self) -> int:
        return len(self._parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self._parts)

    def __len__(self) -> int:
        return len(self._parts)

    def __getitem__(self, i: int) -> int:
        return self._parts[i]

    def __bool__(self) -> bool:
        return bool(self._parts)

    def __eq__(self, other) -> bool:
        if isinstance(other, Partition):
            return self._parts == other._parts
        if isinstance(other, tuple):
            return self._parts == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._parts)

    def __repr__(self) -> str:
        return f"Partition({list(self._parts)})"

    def __str__(self) -> str:
        return ",".join(str(p) for p in self._parts) if self._parts else "0"

    def conjugate(self) -> Partition:
        if not self._parts:
            return Partition()
        cols = [0] * self._parts[0]
        for p in self._parts:
            for j in range(p):
                cols[j] += 1
        return Partition(cols)

    def cells(self) -> Iterator[tuple[int, int]]:
        """Yield the (row, column) cells of the Young diagram, 0-based."""
        for i, p in enumerate(self._parts):
            for j in range(p):
                yield i, j

    def contains(self, other: PartitionLike) -> bool:
        """Part-wise containment: every row of `other` fits inside this shape."""
        o = as_parts(other)
        if len(o) > len(self._parts):
            return False
        return all(o[i] <= self._parts[i] for i in range(len(o)))


def as_parts(p: PartitionLike) -> tuple[int, ...]:
    if isinstance(p, Partition):
        return p.parts
    return Partition(p).parts


def contains(mu: PartitionLike, lam: PartitionLike) -> bool:
    """True iff mu fits inside lam part-wise (missing parts read as 0)."""
    return Partition(as_parts(lam)).contains(mu)


def enumerate_partitions(m: int, forbid_part_one: bool = False) -> list[Partition]:
    """All partitions of weight m in reverse-lexicographic order.

    With forbid_part_one, only partitions with every part >= 2 are kept
    (one-cycles carry no weight in the large-M sums and are excluded there).
    """
    if m < 0:
        raise ValueError("weight must be non-negative")
    min_part = 2 if forbid_part_one else 1
    out: list[Partition] = []

    def descend(remaining: int, max_part: int, prefix: list[int]) -> None:
        if remaining == 0:
            out.append(Partition(prefix))
            return
        for k in range(min(remaining, max_part), min_part - 1, -1):
            if remaining - k and remaining - k < min_part:
                continue
            prefix.append(k)
            descend(remaining - k, k, prefix)
            prefix.pop()

    descend(m, m, [])
    return out


def subpartitions(lam: PartitionLike) -> list[Partition]:
    """All partitions contained in lam, reverse-lexicographically ordered."""
    lp = as_parts(lam)
    out: list[Partition] = []

    def descend(row: int, bound: int, prefix: list[int]) -> None:
        out.append(Partition(prefix))
        if row == len(lp):
            return
        for k in range(min(bound, lp[row]), 0, -1):
            prefix.append(k)
            descend(row + 1, k, prefix)
            prefix.pop()

    descend(0, lp[0] if lp else 0, [])
    return sorted(out, key=lambda p: p.parts, reverse=True)


def durfee(lam: PartitionLike) -> int:
    """Side of the largest square fitting inside the Young diagram."""
    lp = as_parts(lam)
    d = 0
    for i, p in enumerate(lp):
        if p >= i + 1:
            d = i + 1
    return d


def content_product(lam: PartitionLike) -> int:
    """Product of the non-zero cell contents j - i (empty product is 1)."""
    lp = as_parts(lam)
    return prod(j - i for i, p in enumerate(lp) for j in range(p) if j != i)


@cache
def _dimension(parts: tuple[int, ...]) -> int:
    n = sum(parts)
    if n == 0:
        return 1
    hooks = 1
    conj = Partition(parts).conjugate().parts
    for i, p in enumerate(parts):
        for j in range(p):
            hooks *= (p - j) + (conj[j] - i) - 1
    d, rem = divmod(factorial(n), hooks)
    assert rem == 0
    return d


def dimension(nu: PartitionLike) -> int:
    """Number of standard tableaux of the shape, by the hook-length formula."""
    return _dimension(as_parts(nu))


def class_size(beta: PartitionLike) -> int:
    """Size of the conjugacy class of permutations with this cycle type."""
    bp = as_parts(beta)
    z = 1
    for q, mult in Counter(bp).items():
        z *= q**mult * factorial(mult)
    return factorial(sum(bp)) // z


def _parts_from_betas(betas: list[int], length: int) -> tuple[int, ...]:
    """Recover a partition from a descending beta-set of the given length."""
    parts = [betas[j] - (length - 1 - j) for j in range(length)]
    return tuple(p for p in parts if p > 0)


def _strip_removals(parts: tuple[int, ...], k: int) -> list[tuple[tuple[int, ...], int]]:
    """All ways to remove a border strip of size k; yields (shape, height)."""
    length = len(parts)
    if length == 0:
        return []
    betas = [parts[i] + (length - 1 - i) for i in range(length)]
    beta_set = set(betas)
    out = []
    for b in betas:
        t = b - k
        if t < 0 or t in beta_set:
            continue
        height = sum(1 for c in betas if t < c < b)
        new = sorted((beta_set - {b}) | {t}, reverse=True)
        out.append((_parts_from_betas(new, length), height))
    return out


def _strip_additions(parts: tuple[int, ...], k: int) -> list[tuple[tuple[int, ...], int]]:
    """All ways to add a border strip of size k; yields (shape, height)."""
    length = len(parts) + k
    padded = list(parts) + [0] * (length - len(parts))
    betas = [padded[i] + (length - 1 - i) for i in range(length)]
    beta_set = set(betas)
    out = []
    for b in betas:
        t = b + k
        if t in beta_set:
            continue
        height = sum(1 for c in betas if b < c < t)
        new = sorted((beta_set - {b}) | {t}, reverse=True)
        out.append((_parts_from_betas(new, length), height))
    return out


@cache
def _character(mu: tuple[int, ...], beta: tuple[int, ...]) -> int:
    if not beta:
        return 1
    k, rest = beta[0], beta[1:]
    return sum((-1) ** height * _character(shape, rest)
               for shape, height in _strip_removals(mu, k))


def character(mu: PartitionLike, beta: PartitionLike) -> int:
    """Symmetric-group character at cycle type beta, irreducible label mu.

    Computed by the border-strip (Murnaghan-Nakayama) recursion over the
    parts of beta, memoized on (shape, remaining cycle type).
    """
    mp, bp = as_parts(mu), as_parts(beta)
    if sum(mp) != sum(bp):
        raise WeightMismatchError(f"|mu|={sum(mp)} differs from |beta|={sum(bp)}")
    return _character(mp, bp)


@cache
def character_row(beta: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    """Characters of every irreducible at cycle type beta, as one dict.

    Expands the power-sum product for the cycle type in the Schur basis by
    iterated border-strip addition; entry [mu] equals character(mu, beta).
    Callers must not mutate the returned dict.
    """
    row: dict[tuple[int, ...], int] = {(): 1}
    for k in beta:
        nxt: dict[tuple[int, ...], int] = defaultdict(int)
        for shape, coef in row.items():
            for grown, height in _strip_additions(shape, k):
                nxt[grown] += coef * (-1) ** height
        row = {s: c for s, c in nxt.items() if c}
    return row


def _lr_expand(base: tuple[int, ...], content: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    """Expand the Schur product s_base * s_content as {shape: multiplicity}.

    Counts column-strict strip sequences on top of `base` with the given
    content whose reverse reading word is a lattice word.
    """
    out: dict[tuple[int, ...], int] = defaultdict(int)
    nvals = len(content)
    if nvals == 0:
        return {base: 1}
    maxrows = len(base) + nvals
    start = list(base) + [0] * (maxrows - len(base))

    def fill_value(v: int, shape: list[int], prev_prefix: list[int] | None) -> None:
        if v > nvals:
            out[tuple(x for x in shape if x)] += 1
            return
        need = content[v - 1]
        baseline = shape[:]

        # Assign cells of value v row by row; `cum` counts value-v cells so far.
        def fill_row(r: int, remaining: int, cur: list[int], cum: int) -> None:
            if remaining == 0:
                prefix = [0] * (maxrows + 1)
                for i in range(maxrows):
                    prefix[i + 1] = prefix[i] + (cur[i] - baseline[i])
                fill_value(v + 1, cur, prefix)
                return
            if r > maxrows:
                return
            if r == 1:
                cap = remaining
            else:
                # Horizontal strip: stay at or left of the previous shape's row above.
                cap = min(baseline[r - 2] - baseline[r - 1], remaining)
                cap = min(cap, cur[r - 2] - baseline[r - 1])
            if prev_prefix is not None:
                cap = min(cap, prev_prefix[r - 1] - cum)
            for a in range(cap, -1, -1):
                if a:
                    nxt = cur[:]
                    nxt[r - 1] += a
                    fill_row(r + 1, remaining - a, nxt, cum + a)
                else:
                    fill_row(r + 1, remaining, cur, cum)

        fill_row(1, need, baseline, 0)

    fill_value(1, start, None)
    return dict(out)


@cache
def schur_product(a: tuple[int, ...], b: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    """Littlewood-Richardson expansion of s_a * s_b, keyed by result shape.

    The smaller-weight factor is inserted into the larger one.  Callers must
    not mutate the returned dict.
    """
    if (sum(a), a) >= (sum(b), b):
        base, content = a, b
    else:
        base, content = b, a
    return _lr_expand(base, content)


def lr_coefficient(mu: PartitionLike, rho: PartitionLike, nu: PartitionLike) -> int:
    """Multiplicity of s_nu in s_mu * s_rho (0 unless weights add up)."""
    mp, rp, np_ = as_parts(mu), as_parts(rho), as_parts(nu)
    if sum(np_) != sum(mp) + sum(rp):
        return 0
    return schur_product(mp, rp).get(np_, 0)
