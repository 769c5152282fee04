"""Finite patterns, admissibility with violation reporting, sieving, density.

A pattern is a finite set of integers together with the closed window on
which it is the whole configuration; the window matters whenever a pattern
is handed to a block code. Patterns double as 0/1 words via `Word`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .errors import NotFoundInTruncation
from .numtheory import BSpec, find_coprime_element


@dataclass(frozen=True)
class FinitePattern:
    support: tuple[int, ...]
    window: tuple[int, int]

    def __post_init__(self):
        lo, hi = self.window
        if self.support:
            if list(self.support) != sorted(set(self.support)):
                raise ValueError("support must be sorted and duplicate-free")
            if self.support[0] < lo or self.support[-1] > hi:
                raise ValueError(f"support {self.support} escapes window [{lo},{hi}]")

    @classmethod
    def from_points(cls, points: Iterable[int], window: tuple[int, int] | None = None):
        pts = tuple(sorted(set(int(p) for p in points)))
        if window is None:
            window = (pts[0], pts[-1]) if pts else (0, -1)  # empty-pattern convention
        return cls(pts, (int(window[0]), int(window[1])))

    def __len__(self):
        return len(self.support)

    def __contains__(self, n: int) -> bool:
        return n in set(self.support)

    def translate(self, t: int) -> "FinitePattern":
        lo, hi = self.window
        return FinitePattern(tuple(p + t for p in self.support), (lo + t, hi + t))

    def to_word(self) -> "Word":
        lo, hi = self.window
        sup = set(self.support)
        return Word(lo, tuple(1 if lo + i in sup else 0 for i in range(hi - lo + 1)))

    def set_literal(self) -> str:
        return "{" + ",".join(str(p) for p in self.support) + "}"

    def __str__(self):
        return self.set_literal()


EMPTY_PATTERN = FinitePattern((), (0, -1))


@dataclass(frozen=True)
class Word:
    """A 0/1 word with an absolute left endpoint; literal form `0110@0`."""

    start: int
    bits: tuple[int, ...]

    @property
    def end(self) -> int:
        return self.start + len(self.bits) - 1

    def __len__(self):
        return len(self.bits)

    def to_pattern(self) -> FinitePattern:
        pts = tuple(self.start + i for i, b in enumerate(self.bits) if b)
        return FinitePattern(pts, (self.start, self.end))

    def __str__(self):
        return "".join(str(b) for b in self.bits) + f"@{self.start}"


def parse_word(text: str) -> Word:
    body, _, at = text.partition("@")
    if not all(ch in "01" for ch in body) or not body:
        raise ValueError(f"bad word literal {text!r}")
    return Word(int(at) if at else 0, tuple(int(ch) for ch in body))


_SET_RE = re.compile(r"^\{([^}]*)\}$")


def parse_pattern(text: str) -> FinitePattern:
    """Accept the set form `{1,2,3}` or the word form `0110@0`."""
    text = text.strip()
    m = _SET_RE.match(text)
    if m:
        inner = m.group(1).strip()
        pts = [int(x) for x in inner.split(",")] if inner else []
        return FinitePattern.from_points(pts)
    return parse_word(text).to_pattern()


def format_pattern(pattern: FinitePattern) -> str:
    return f"{pattern.set_literal()}  {pattern.to_word()}"


@dataclass(frozen=True)
class AdmissibilityVerdict:
    admissible: bool
    modulus: int | None = None  # smallest modulus whose residues are all hit
    covered: frozenset[int] | None = None

    def __bool__(self):
        return self.admissible


def occupied_residues(pattern: FinitePattern | Iterable[int], b: int) -> set[int]:
    """The set {u mod b : u in support}, normalized to 0..b-1."""
    if b < 2:
        raise ValueError("modulus must be >= 2")
    points = pattern.support if isinstance(pattern, FinitePattern) else pattern
    return {p % b for p in points}


def is_admissible(pattern: FinitePattern | Iterable[int], bspec: BSpec) -> AdmissibilityVerdict:
    """Check that no modulus has all of its residues occupied.

    Only moduli b <= |support| can be fully covered (coverage needs at least
    b points), so larger ones are skipped. The verdict carries the smallest
    violating modulus.
    """
    points = tuple(pattern.support) if isinstance(pattern, FinitePattern) else tuple(pattern)
    size = len(points)
    for b in bspec.elements:
        if b > size:
            break
        hit = occupied_residues(points, b)
        if len(hit) == b:
            return AdmissibilityVerdict(False, b, frozenset(hit))
    return AdmissibilityVerdict(True)


def bfree_window(bspec: BSpec, lo: int, hi: int) -> FinitePattern:
    """Sieve [lo,hi] for integers divisible by no modulus.

    Every modulus participates (divisibility, not coverage, is tested), but
    only those <= max(|lo|,|hi|) can divide a nonzero member of the window.
    """
    if lo > hi:
        raise ValueError("empty interval")
    size = hi - lo + 1
    free = np.ones(size, dtype=bool)
    if lo <= 0 <= hi:
        free[-lo] = False  # 0 is divisible by everything
    biggest = max(abs(lo), abs(hi))
    for b in bspec.elements:
        if b > biggest:
            break
        first = -(-lo // b) * b  # smallest multiple of b that is >= lo
        free[first - lo :: b] = False
    points = tuple(int(n) for n in np.nonzero(free)[0] + lo)
    return FinitePattern(points, (lo, hi))


class DensityEstimate(NamedTuple):
    observed: float
    product: float
    count: int
    half_width: int


def density_estimate(bspec: BSpec, half_width: int) -> DensityEstimate:
    """Observed density of the sieved set on [-N,N] next to the truncated product."""
    n = int(half_width)
    if n < 1:
        raise ValueError("half width must be >= 1")
    free = np.ones(n + 1, dtype=bool)
    free[0] = False
    for b in bspec.elements:
        if b > n:
            break
        free[b::b] = False
    count = 2 * int(free.sum())  # symmetric window, 0 is never free
    return DensityEstimate(count / (2 * n + 1), bspec.density_product(), count, n)


def reflect(pattern: FinitePattern) -> FinitePattern:
    """Reflection through the origin: support negated, window endpoints swapped."""
    lo, hi = pattern.window
    return FinitePattern(tuple(sorted(-p for p in pattern.support)), (-hi, -lo))


class PeriodicityCertificate(NamedTuple):
    modulus: int
    window_length: int
    period: int
    anchor: int


def periodicity_certificate(
    seed: FinitePattern, t: int, bspec: BSpec
) -> PeriodicityCertificate:
    """Why a t-periodic extension of a nonempty pattern cannot stay admissible.

    Picks the smallest modulus b coprime to the period; the arithmetic
    progression anchor + t*Z then occupies every residue class mod b, and any
    window of length b*t already contains b of its terms.
    """
    if not seed.support:
        raise ValueError("seed must be nonempty")
    if t < 1:
        raise ValueError("period must be >= 1")
    b = find_coprime_element(bspec, t)
    return PeriodicityCertificate(b, b * t, t, seed.support[0])


def periodic_extension_window(seed: FinitePattern, t: int, lo: int, length: int) -> FinitePattern:
    """The t-periodic extension of seed restricted to [lo, lo+length-1]."""
    residues = sorted({p % t for p in seed.support})
    pts = [n for n in range(lo, lo + length) if n % t in residues]
    return FinitePattern(tuple(pts), (lo, lo + length - 1))
