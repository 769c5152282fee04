"""Sliding block-code families: k local maps of radius rho over {0,1} windows.

A family is k truth tables; the table applied at absolute position j is
tables[j mod k]. Window encoding: a length-(2*rho+1) window is an integer
whose bit i is the cell at offset i - rho (leftmost cell = bit 0). Tables
are total over all 2^(2*rho+1) windows; entries on non-admissible windows
are never exercised by admissible configurations and are zeroed when a
family is canonicalized for output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .admissibility import FinitePattern, Word, is_admissible
from .errors import LengthTooLarge, RadiusTooSmall, WindowTooShort
from .language import MAX_LIST_LENGTH, enumerate_admissible_words
from .numtheory import BSpec

DEFAULT_RHO_CAP = 3
DEFAULT_K_CAP = 4


@dataclass(frozen=True)
class BlockCodeFamily:
    k: int
    rho: int
    tables: tuple[int, ...]  # one bitmask per phase; bit w = output on window w

    def __post_init__(self):
        if self.k < 1 or self.rho < 0 or len(self.tables) != self.k:
            raise ValueError("need k >= 1 tables and rho >= 0")
        if any(t < 0 or t >> self.n_windows for t in self.tables):
            raise ValueError("table out of range for this radius")

    @property
    def width(self) -> int:
        return 2 * self.rho + 1

    @property
    def n_windows(self) -> int:
        return 1 << self.width

    def value(self, phase: int, windex: int) -> int:
        return (self.tables[phase % self.k] >> windex) & 1

    def zero_window_fixed(self) -> bool:
        """True when every map sends the all-zero window to 0."""
        return all((t & 1) == 0 for t in self.tables)

    def table_array(self) -> np.ndarray:
        out = np.zeros((self.k, self.n_windows), dtype=np.uint8)
        for c, t in enumerate(self.tables):
            for w in range(self.n_windows):
                out[c, w] = (t >> w) & 1
        return out

    # -- serialization: hex of the table bitstring, little-endian window order
    def to_json_dict(self) -> dict:
        nbytes = (self.n_windows + 7) // 8
        return {
            "schema": 1,
            "k": self.k,
            "rho": self.rho,
            "maps": [t.to_bytes(nbytes, "little").hex() for t in self.tables],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "BlockCodeFamily":
        tables = tuple(int.from_bytes(bytes.fromhex(h), "little") for h in data["maps"])
        return cls(int(data["k"]), int(data["rho"]), tables)


def windex_of_offsets(offsets, rho: int) -> int:
    """Window integer for the given set of occupied offsets in [-rho, rho]."""
    w = 0
    for d in offsets:
        if abs(d) > rho:
            raise ValueError(f"offset {d} outside radius {rho}")
        w |= 1 << (d + rho)
    return w


def window_offsets(windex: int, rho: int) -> tuple[int, ...]:
    return tuple(i - rho for i in range(2 * rho + 1) if (windex >> i) & 1)


@lru_cache(maxsize=128)
def _admissible_windows(elements: tuple[int, ...], rho: int) -> tuple[int, ...]:
    spec = BSpec(elements)
    good = []
    for w in range(1 << (2 * rho + 1)):
        if is_admissible(window_offsets(w, rho), spec):
            good.append(w)
    return tuple(good)


def admissible_windows(bspec: BSpec, rho: int) -> tuple[int, ...]:
    """All admissible window integers of length 2*rho+1, ascending."""
    return _admissible_windows(bspec.elements, rho)


def canonicalize(family: BlockCodeFamily, bspec: BSpec) -> BlockCodeFamily:
    """Zero every entry on a non-admissible window; action on the shift is unchanged."""
    keep = 0
    for w in admissible_windows(bspec, family.rho):
        keep |= 1 << w
    return BlockCodeFamily(family.k, family.rho, tuple(t & keep for t in family.tables))


# ---------------------------------------------------------------------------
# application


def apply_family(family: BlockCodeFamily, word: Word) -> Word:
    """Slide the family across a word; output lives on the inner window."""
    rho, k = family.rho, family.k
    if len(word) - 1 < 2 * rho:
        raise WindowTooShort(f"need length >= {2 * rho + 1}, got {len(word)}")
    bits = word.bits
    out = []
    for j in range(rho, len(bits) - rho):
        w = 0
        for i in range(2 * rho + 1):
            w |= bits[j - rho + i] << i
        out.append(family.value((word.start + j) % k, w))
    return Word(word.start + rho, tuple(out))


def apply_to_pattern(
    family: BlockCodeFamily, pattern: FinitePattern, margin: int | None = None
) -> FinitePattern:
    """Image of a pattern read as the full local configuration on its window.

    The caller vouches that the configuration is zero for `margin` cells
    beyond the declared window (default 2*rho, enough to expose every image
    point a radius-rho code can produce).
    """
    rho, k = family.rho, family.k
    if margin is None:
        margin = 2 * rho
    if margin < 0:
        raise ValueError("margin must be >= 0")
    lo, hi = pattern.window
    sup = set(pattern.support)
    out_lo, out_hi = lo - margin + rho, hi + margin - rho
    points = []
    for q in range(out_lo, out_hi + 1):
        w = 0
        for i in range(2 * rho + 1):
            if q - rho + i in sup:
                w |= 1 << i
        if family.value(q % k, w):
            points.append(q)
    return FinitePattern(tuple(points), (out_lo, out_hi))


# ---------------------------------------------------------------------------
# stock families


def shift_family(t: int, k: int = 1, rho: int | None = None) -> BlockCodeFamily:
    """The code realizing the t-th shift power: output j copies input j + t."""
    if rho is None:
        rho = abs(t)
    if abs(t) > rho:
        raise RadiusTooSmall(f"|t|={abs(t)} needs rho >= {abs(t)}")
    table = 0
    for w in range(1 << (2 * rho + 1)):
        if (w >> (t + rho)) & 1:
            table |= 1 << w
    return BlockCodeFamily(k, rho, tuple(table for _ in range(k)))


def parity_inverse_offsets(u: int, v: int) -> tuple[int, int]:
    """Offsets of the inverse parity translation; u and v must agree mod 2."""
    if (u - v) % 2:
        raise ValueError("parity translations must agree mod 2")
    return (-u, -v) if u % 2 == 0 else (-v, -u)


def parity_family(u: int, v: int, k: int = 2, rho: int | None = None) -> BlockCodeFamily:
    """Translate even-position points by u and odd-position points by v.

    Well defined as a k-periodic family only for even k; u = v recovers a
    plain shift. The source offset feeding output phase c is -u when c - u is
    even and -v otherwise (exactly one case applies since u = v mod 2).
    """
    if k % 2:
        raise ValueError("parity families need even k")
    if (u - v) % 2:
        raise ValueError("parity translations must agree mod 2")
    if rho is None:
        rho = max(abs(u), abs(v))
    if max(abs(u), abs(v)) > rho:
        raise RadiusTooSmall(f"offsets ({u},{v}) need rho >= {max(abs(u), abs(v))}")
    tables = []
    for c in range(k):
        d = -u if (c - u) % 2 == 0 else -v
        table = 0
        for w in range(1 << (2 * rho + 1)):
            if (w >> (d + rho)) & 1:
                table |= 1 << w
        tables.append(table)
    return BlockCodeFamily(k, rho, tuple(tables))


def compose(outer: BlockCodeFamily, inner: BlockCodeFamily) -> BlockCodeFamily:
    """The family acting as outer-after-inner; radius adds, period is the lcm."""
    k = math.lcm(outer.k, inner.k)
    rho = outer.rho + inner.rho
    ri, ro = inner.rho, outer.rho
    mask_i = (1 << (2 * ri + 1)) - 1
    tables = []
    for c in range(k):
        table = 0
        for w in range(1 << (2 * rho + 1)):
            mid = 0
            for o in range(-ro, ro + 1):
                sub = (w >> (o - ri + rho)) & mask_i
                mid |= inner.value((c + o) % inner.k, sub) << (o + ro)
            if outer.value(c % outer.k, mid):
                table |= 1 << w
        tables.append(table)
    return BlockCodeFamily(k, rho, tuple(tables))


def reflect_family(family: BlockCodeFamily) -> BlockCodeFamily:
    """Conjugate by the reflection through the origin: reverse windows, negate phase."""
    rho, k = family.rho, family.k
    width = 2 * rho + 1
    tables = []
    for c in range(k):
        src = family.tables[(-c) % k]
        table = 0
        for w in range(1 << width):
            rev = 0
            for i in range(width):
                if (w >> i) & 1:
                    rev |= 1 << (width - 1 - i)
            if (src >> rev) & 1:
                table |= 1 << w
        tables.append(table)
    return BlockCodeFamily(k, rho, tuple(tables))


# ---------------------------------------------------------------------------
# singleton behaviour


class SingletonEntry(NamedTuple):
    kind: str  # "fixed" | "empty" | "multi"
    offset: int | None  # image of {m} is {m + offset} when kind == "fixed"
    defect: tuple[int, int] | None  # two smallest image points of {m} when "multi"


@dataclass(frozen=True)
class SingletonProfile:
    k: int
    rho: int
    entries: tuple[SingletonEntry, ...]  # indexed by residue class m
    empty_set_moved: bool  # some map turns the all-zero window into 1

    def all_fixed(self) -> bool:
        return not self.empty_set_moved and all(e.kind == "fixed" for e in self.entries)

    def uniform_offset(self) -> int | None:
        if not self.all_fixed():
            return None
        offs = {e.offset for e in self.entries}
        return self.entries[0].offset if len(offs) == 1 else None

    def parity_offsets(self) -> tuple[int, int] | None:
        """(even-class offset, odd-class offset) when both classes are uniform."""
        if not self.all_fixed() or self.k % 2:
            return None
        evens = {self.entries[m].offset for m in range(0, self.k, 2)}
        odds = {self.entries[m].offset for m in range(1, self.k, 2)}
        if len(evens) == 1 and len(odds) == 1:
            return (next(iter(evens)), next(iter(odds)))
        return None

    def positions_mod_k(self) -> list[int] | None:
        if not self.all_fixed():
            return None
        return [(m + e.offset) % self.k for m, e in enumerate(self.entries)]

    def position_collisions(self) -> list[tuple[int, int]]:
        """Pairs of classes whose singleton images land in the same class mod k."""
        pos = self.positions_mod_k()
        if pos is None:
            return []
        return [(m, n) for m in range(self.k) for n in range(m + 1, self.k) if pos[m] == pos[n]]


def singleton_profile(family: BlockCodeFamily, bspec: BSpec | None = None) -> SingletonProfile:
    """How the family acts on one-point patterns, one entry per residue class.

    `bspec` is accepted for interface symmetry with the other classifiers;
    the computation itself is arithmetic-free.
    """
    del bspec
    rho, k = family.rho, family.k
    moved = not family.zero_window_fixed()
    entries = []
    for m in range(k):
        image = apply_to_pattern(family, FinitePattern((m,), (m, m))).support
        if not image:
            entries.append(SingletonEntry("empty", None, None))
        elif len(image) == 1:
            entries.append(SingletonEntry("fixed", image[0] - m, None))
        else:
            entries.append(SingletonEntry("multi", None, (image[0], image[1])))
    return SingletonProfile(k, rho, tuple(entries), moved)


def commutes_with_shift_k(family: BlockCodeFamily) -> int:
    """Commutation with the k-th shift power holds by construction; return the
    minimal divisor k' of k such that the tables are k'-periodic in phase."""
    k = family.k
    for kp in range(1, k + 1):
        if k % kp:
            continue
        if all(family.tables[i] == family.tables[i % kp] for i in range(k)):
            return kp
    return k


# ---------------------------------------------------------------------------
# vectorized application over word lists, and injectivity on the language


def _window_matrix(words: np.ndarray, n: int, rho: int) -> np.ndarray:
    """Window integers at every output offset in [-rho, n-1+rho], zero-extended."""
    mask = np.uint64((1 << (2 * rho + 1)) - 1)
    padded = words.astype(np.uint64) << np.uint64(2 * rho)
    shifts = np.arange(0, n + 2 * rho, dtype=np.uint64)
    return ((padded[:, None] >> shifts[None, :]) & mask).astype(np.int64)


def _phase_row(a: int, n: int, rho: int, k: int) -> np.ndarray:
    return (a + np.arange(-rho, n + rho)) % k


class InjectivityResult(NamedTuple):
    injective: bool
    collision: tuple[int, Word, Word] | None  # (left endpoint, word, word)


def injective_on_language(
    family: BlockCodeFamily,
    bspec: BSpec,
    n: int,
    *,
    max_length: int = MAX_LIST_LENGTH,
) -> InjectivityResult:
    """Whether distinct admissible length-n words keep distinct images.

    Words are read as full local configurations (zero outside their window),
    one test per residue class of the left endpoint; the first colliding pair
    in word order is reported.
    """
    rho = family.rho
    if n < 2 * rho + 1:
        raise WindowTooShort(f"need n >= {2 * rho + 1}")
    if n > max_length:
        raise LengthTooLarge(f"n={n} beyond listing bound {max_length}")
    words = enumerate_admissible_words(bspec, n)
    arr = np.asarray(words, dtype=np.uint64)
    win = _window_matrix(arr, n, rho)
    tables = family.table_array()
    for a in range(family.k):
        phases = _phase_row(a, n, rho, family.k)
        images = tables[phases[None, :], win]
        packed = np.packbits(images, axis=1)
        seen: dict[bytes, int] = {}
        for idx in range(len(words)):
            key = packed[idx].tobytes()
            if key in seen:
                w1 = Word(a, tuple((words[seen[key]] >> i) & 1 for i in range(n)))
                w2 = Word(a, tuple((words[idx] >> i) & 1 for i in range(n)))
                return InjectivityResult(False, (a, w1, w2))
            seen[key] = idx
    return InjectivityResult(True, None)


def batch_images(
    family: BlockCodeFamily, words: np.ndarray, n: int, left_endpoint: int
) -> np.ndarray:
    """Packed image rows for many words at once (zero-extension semantics)."""
    win = _window_matrix(words.astype(np.uint64), n, family.rho)
    phases = _phase_row(left_endpoint, n, family.rho, family.k)
    return np.packbits(family.table_array()[phases[None, :], win], axis=1)
