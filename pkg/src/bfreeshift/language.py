"""Counting and listing admissible words, entropy estimates vs the closed form.

Only moduli b <= n can constrain a length-n word (full coverage mod b needs
at least b occupied positions), so truncating the modulus list to b <= n is
exact for counting, not an approximation.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from .errors import LengthTooLarge
from .numtheory import BSpec

MAX_COUNT_LENGTH = 24
MAX_LIST_LENGTH = 20


def _counting_moduli(bspec: BSpec, n: int) -> list[int]:
    return [b for b in bspec.elements if b <= n]


def _count_from(n: int, mods: list[int], full: list[int], i: int, masks: tuple[int, ...]) -> int:
    if i == n:
        return 1
    total = _count_from(n, mods, full, i + 1, masks)  # position i left empty
    new = []
    for b, m, f in zip(mods, masks, full):
        m |= 1 << (i % b)
        if m == f:
            return total  # coverage complete: prune the whole occupied branch
        new.append(m)
    return total + _count_from(n, mods, full, i + 1, tuple(new))


def count_admissible_words(
    bspec: BSpec, n: int, *, max_length: int = MAX_COUNT_LENGTH, workers: int = 1
) -> int:
    """Number of admissible subsets of {0,..,n-1}, by pruned DFS over positions."""
    if n < 0:
        raise ValueError("length must be >= 0")
    if n > max_length:
        raise LengthTooLarge(f"n={n} beyond counting bound {max_length}")
    mods = _counting_moduli(bspec, n)
    full = [(1 << b) - 1 for b in mods]
    if workers <= 1 or n < 4:
        return _count_from(n, mods, full, 0, tuple(0 for _ in mods))
    # split on the first few positions; exact integers make the merge associative
    split = min(6, n)
    prefixes: list[tuple[int, tuple[int, ...]]] = []

    def gather(i: int, masks: tuple[int, ...]):
        if i == split:
            prefixes.append((i, masks))
            return
        gather(i + 1, masks)
        new = []
        for b, m, f in zip(mods, masks, full):
            m |= 1 << (i % b)
            if m == f:
                return
            new.append(m)
        gather(i + 1, tuple(new))

    gather(0, tuple(0 for _ in mods))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(lambda pm: _count_from(n, mods, full, pm[0], pm[1]), prefixes)
    return sum(parts)


@lru_cache(maxsize=64)
def _word_list(elements: tuple[int, ...], n: int) -> tuple[int, ...]:
    mods = [b for b in elements if b <= n]
    full = [(1 << b) - 1 for b in mods]
    out: list[int] = []

    def rec(i: int, masks: tuple[int, ...], word: int):
        if i == n:
            out.append(word)
            return
        rec(i + 1, masks, word)
        new = []
        for b, m, f in zip(mods, masks, full):
            m |= 1 << (i % b)
            if m == f:
                return
            new.append(m)
        rec(i + 1, tuple(new), word | (1 << i))

    rec(0, tuple(0 for _ in mods), 0)
    out.sort()
    return tuple(out)


def enumerate_admissible_words(
    bspec: BSpec, n: int, *, max_length: int = MAX_LIST_LENGTH
) -> tuple[int, ...]:
    """All admissible length-n words as bitmasks (bit i = position i), sorted."""
    if n < 0:
        raise ValueError("length must be >= 0")
    if n > max_length:
        raise LengthTooLarge(f"n={n} beyond listing bound {max_length}")
    return _word_list(bspec.elements, n)


def closed_form_entropy(bspec: BSpec, *, unit: str = "nats") -> float:
    """log(2) times the truncated density product."""
    h = math.log(2.0) * bspec.density_product()
    return h / math.log(2.0) if unit == "bits" else h


@dataclass(frozen=True)
class EntropyReport:
    lengths: tuple[int, ...]
    counts: tuple[int, ...]
    estimates: tuple[float, ...]  # (1/n) log |L_n|
    closed_form: float
    density_factor: float
    unit: str
    submultiplicative: bool
    monotone: bool

    def rows(self):
        return list(zip(self.lengths, self.counts, self.estimates))


def entropy_report(
    bspec: BSpec, n_max: int, *, unit: str = "nats", workers: int = 1
) -> EntropyReport:
    """Counts and per-length entropy estimates for n = 1..n_max."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if unit not in ("nats", "bits"):
        raise ValueError("unit must be nats or bits")
    log = math.log if unit == "nats" else math.log2
    counts = [count_admissible_words(bspec, n, workers=workers) for n in range(1, n_max + 1)]
    estimates = [log(c) / n for n, c in zip(range(1, n_max + 1), counts)]
    submul = all(
        counts[m + n - 1] <= counts[m - 1] * counts[n - 1]
        for m in range(1, n_max + 1)
        for n in range(1, n_max + 1 - m)
    )
    monotone = all(a >= b - 1e-12 for a, b in zip(estimates, estimates[1:]))
    return EntropyReport(
        tuple(range(1, n_max + 1)),
        tuple(counts),
        tuple(estimates),
        closed_form_entropy(bspec, unit=unit),
        bspec.density_product(),
        unit,
        submul,
        monotone,
    )


def entropy_ratio(b1: BSpec, b2: BSpec) -> float:
    """Ratio of closed-form entropies over the two truncations."""
    return closed_form_entropy(b1) / closed_form_entropy(b2)
