"""Exact integer primitives: modulus-list validation, CRT solving, coprime lookup.

Everything here is pure and deterministic; all arithmetic is exact.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    ContainsOne,
    ModuliNotCoprime,
    NotCoprime,
    NotFoundInTruncation,
    Overflow,
    RepeatedOrUnordered,
)

# Products of CRT moduli are refused beyond this, so a port to fixed-width
# integers cannot silently wrap.
DEFAULT_CRT_CAP = 2**62

CONFIG_SCHEMA = 1


def primes_upto(n: int) -> list[int]:
    """All primes <= n, by sieve."""
    if n < 2:
        return []
    mask = np.ones(n + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return [int(p) for p in np.nonzero(mask)[0]]


@dataclass(frozen=True)
class BSpec:
    """A validated, finite truncation of an infinite modulus list.

    `elements` is strictly increasing, all > 1, pairwise coprime.
    `thin_declared` records that the (infinite) generating family has a
    convergent reciprocal sum; it is caller-supplied metadata, never checked,
    since no finite truncation can decide it.
    """

    elements: tuple[int, ...]
    generator: str = "explicit"  # explicit | prime_powers | custom
    exponent: int | None = None
    prime_bound: int | None = None
    thin_declared: bool = False

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, b: int) -> bool:
        return b in set(self.elements)

    @property
    def degenerate(self) -> bool:
        """True when 2 is a modulus, so every admissible set is single-parity."""
        return 2 in self.elements

    def density_product(self) -> float:
        """Truncated product of (1 - 1/b) over the elements."""
        out = 1.0
        for b in self.elements:
            out *= 1.0 - 1.0 / b
        return out

    def describe(self) -> dict:
        cfg = {"schema": CONFIG_SCHEMA, "kind": self.generator, "thin_declared": self.thin_declared}
        if self.generator == "prime_powers":
            cfg["exponent"] = self.exponent
            cfg["prime_bound"] = self.prime_bound
        else:
            cfg["elements"] = list(self.elements)
        return cfg


def _check_pairwise_coprime(elements: Sequence[int]) -> None:
    # gcd against the running product finds a violation in O(n) bigint ops;
    # the offending pair is recovered by a scan only on failure.
    prod = 1
    for i, b in enumerate(elements):
        if math.gcd(b, prod) != 1:
            for j in range(i):
                if math.gcd(elements[j], b) != 1:
                    raise NotCoprime(elements[j], b)
        prod *= b


def validate_bspec(
    raw: Iterable[int],
    generator: str = "explicit",
    *,
    exponent: int | None = None,
    prime_bound: int | None = None,
    thin_declared: bool = False,
) -> BSpec:
    """Validate a modulus list: strictly increasing, all > 1, pairwise coprime."""
    elements = tuple(int(b) for b in raw)
    if not elements:
        raise RepeatedOrUnordered("empty modulus list")
    if any(b == 1 for b in elements):
        raise ContainsOne("1 in modulus list forbids every integer")
    if any(b < 1 for b in elements):
        raise RepeatedOrUnordered(f"non-positive modulus in {elements!r}")
    if any(a >= b for a, b in zip(elements, elements[1:])):
        raise RepeatedOrUnordered(f"list not strictly increasing: {elements!r}")
    _check_pairwise_coprime(elements)
    if generator == "prime_powers":
        if exponent is None or prime_bound is None or exponent < 2:
            raise RepeatedOrUnordered("prime_powers needs exponent >= 2 and a prime bound")
        expected = tuple(p**exponent for p in primes_upto(prime_bound))
        if elements != expected:
            raise RepeatedOrUnordered("elements do not match the declared prime-power family")
    return BSpec(elements, generator, exponent, prime_bound, thin_declared)


def prime_powers_bspec(exponent: int, prime_bound: int) -> BSpec:
    """The truncation {p**exponent : p prime <= prime_bound}."""
    elements = [p**exponent for p in primes_upto(prime_bound)]
    return validate_bspec(
        elements,
        "prime_powers",
        exponent=exponent,
        prime_bound=prime_bound,
        thin_declared=exponent >= 2,
    )


def crt_solve(
    congruences: Sequence[tuple[int, int]], *, cap: int = DEFAULT_CRT_CAP
) -> tuple[int, int]:
    """Solve x = r_i (mod m_i) for pairwise coprime m_i.

    Returns (x, M) with 0 <= x < M = prod(m_i). Raises ModuliNotCoprime or,
    when M would exceed `cap`, Overflow.
    """
    pairs = [(int(r), int(m)) for r, m in congruences]
    if not pairs:
        return (0, 1)
    for _, m in pairs:
        if m < 1:
            raise ModuliNotCoprime(f"modulus {m} < 1")
    x, big = pairs[0][0] % pairs[0][1], pairs[0][1]
    for r, m in pairs[1:]:
        if math.gcd(big, m) != 1:
            raise ModuliNotCoprime(f"modulus {m} not coprime to product of the others")
        if big * m > cap:
            raise Overflow(f"modulus product exceeds cap {cap}")
        # x + big*t = r (mod m)
        t = ((r - x) * pow(big, -1, m)) % m
        x += big * t
        big *= m
    return (x % big, big)


def congruences_hold(x: int, congruences: Sequence[tuple[int, int]]) -> bool:
    return all(x % m == r % m for r, m in congruences)


def find_coprime_element(
    bspec: BSpec, t: int, extra_pred: Callable[[int], bool] | None = None
) -> int:
    """Smallest element coprime to t that also satisfies extra_pred."""
    if t < 1:
        raise ValueError("t must be >= 1")
    for b in bspec.elements:
        if math.gcd(b, t) == 1 and (extra_pred is None or extra_pred(b)):
            return b
    raise NotFoundInTruncation(f"no element coprime to {t} matching the predicate; extend the list")


# ---------------------------------------------------------------------------
# modulus-list config files


def bspec_to_config(bspec: BSpec) -> dict:
    return bspec.describe()


def bspec_from_config(cfg: dict) -> BSpec:
    if cfg.get("schema", 1) != CONFIG_SCHEMA:
        raise ValueError(f"unsupported config schema {cfg.get('schema')!r}")
    kind = cfg.get("kind", "explicit")
    thin = bool(cfg.get("thin_declared", False))
    if kind == "prime_powers":
        spec = prime_powers_bspec(int(cfg["exponent"]), int(cfg["prime_bound"]))
        return BSpec(spec.elements, "prime_powers", spec.exponent, spec.prime_bound, thin)
    return validate_bspec(cfg["elements"], kind, thin_declared=thin)


def save_bspec(bspec: BSpec, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(bspec_to_config(bspec), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_bspec(path: str) -> BSpec:
    with open(path) as fh:
        return bspec_from_config(json.load(fh))


def bspec_from_shorthand(text: str, *, default_prime_bound: int = 10_000) -> BSpec:
    """Parse CLI shorthands.

    primes-sq | primes-4th | primes-pow:E[:P] | explicit:4,9,25,49 | a bare
    comma-separated list.
    """
    text = text.strip()
    if text == "primes-sq":
        return prime_powers_bspec(2, default_prime_bound)
    if text == "primes-4th":
        return prime_powers_bspec(4, default_prime_bound)
    if text.startswith("primes-pow:"):
        parts = text.split(":")[1:]
        e = int(parts[0])
        bound = int(parts[1]) if len(parts) > 1 else default_prime_bound
        return prime_powers_bspec(e, bound)
    if text.startswith("explicit:"):
        text = text[len("explicit:") :]
    return validate_bspec(int(x) for x in text.strip("{}").split(","))
