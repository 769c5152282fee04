import math
import random

import pytest

from bfreeshift import (
    ContainsOne,
    ModuliNotCoprime,
    NotCoprime,
    NotFoundInTruncation,
    Overflow,
    RepeatedOrUnordered,
    bspec_from_config,
    bspec_from_shorthand,
    bspec_to_config,
    crt_solve,
    find_coprime_element,
    prime_powers_bspec,
    primes_upto,
    validate_bspec,
)


def crt_bruteforce(pairs):
    # independent oracle: scan the full residue range
    big = math.prod(m for _, m in pairs)
    for x in range(big):
        if all(x % m == r % m for r, m in pairs):
            return (x, big)
    raise AssertionError("no solution found")


def test_validate_accepts_prime_squares():
    spec = validate_bspec([4, 9, 25, 49])
    assert spec.elements == (4, 9, 25, 49)
    assert not spec.degenerate


def test_validate_accepts_degenerate_two():
    assert validate_bspec([2, 9, 25]).degenerate


def test_validate_rejects_shared_factor():
    with pytest.raises(NotCoprime) as exc:
        validate_bspec([4, 6])
    assert exc.value.pair == (4, 6)


def test_validate_rejects_one_and_disorder():
    with pytest.raises(ContainsOne):
        validate_bspec([1, 4])
    with pytest.raises(RepeatedOrUnordered):
        validate_bspec([9, 4])
    with pytest.raises(RepeatedOrUnordered):
        validate_bspec([4, 4, 9])
    with pytest.raises(RepeatedOrUnordered):
        validate_bspec([])


def test_validate_prime_squares_up_to_100():
    spec = prime_powers_bspec(2, 100)
    assert spec.elements[:5] == (4, 9, 25, 49, 121)
    assert len(spec.elements) == len(primes_upto(100))
    assert spec.thin_declared


def test_two_even_numbers_always_rejected():
    rng = random.Random(7)
    for _ in range(200):
        evens = sorted(rng.sample(range(2, 500, 2), 2))
        rest = sorted(rng.sample(range(3, 500, 2), 3))
        raw = sorted(set(evens + rest))
        with pytest.raises((NotCoprime, RepeatedOrUnordered)):
            validate_bspec(raw)
        # at minimum the two evens alone must fail
        with pytest.raises(NotCoprime):
            validate_bspec(evens if evens[0] < evens[1] else evens[::-1])


def test_prime_powers_mismatch_rejected():
    with pytest.raises(RepeatedOrUnordered):
        validate_bspec([4, 9, 35], "prime_powers", exponent=2, prime_bound=5)


def test_crt_examples():
    assert crt_solve([(2, 3), (3, 5)]) == (8, 15)
    assert crt_solve([(0, 7)]) == (0, 7)
    assert crt_solve([(1, 4), (2, 9), (3, 25)]) == (353, 900)


def test_crt_agrees_with_bruteforce():
    rng = random.Random(20240801)
    for _ in range(1000):
        moduli = []
        while math.prod(moduli, start=1) < 50 or len(moduli) < 2:
            m = rng.randint(2, 30)
            if all(math.gcd(m, x) == 1 for x in moduli):
                moduli.append(m)
            if math.prod(moduli, start=1) > 10_000:
                moduli.pop()
                break
        pairs = [(rng.randrange(m), m) for m in moduli]
        x, big = crt_solve(pairs)
        assert 0 <= x < big
        assert all(x % m == r for r, m in pairs)
        if big <= 10_000:
            assert (x, big) == crt_bruteforce(pairs)


def test_crt_noncoprime_and_overflow():
    with pytest.raises(ModuliNotCoprime):
        crt_solve([(1, 4), (2, 6)])
    with pytest.raises(Overflow):
        crt_solve([(1, 2**40), (2, 2**40 + 1)], cap=2**62)


def test_find_coprime_element():
    spec = validate_bspec([4, 9, 25, 49])
    assert find_coprime_element(spec, 6) == 25
    assert find_coprime_element(spec, 1) == 4
    assert find_coprime_element(spec, 35) == 4
    assert find_coprime_element(spec, 6, lambda b: b > 30) == 49
    with pytest.raises(NotFoundInTruncation):
        find_coprime_element(spec, 4 * 9 * 25 * 49)
    with pytest.raises(ValueError):
        find_coprime_element(spec, 0)


def test_config_roundtrip(tmp_path):
    spec = prime_powers_bspec(2, 50)
    again = bspec_from_config(bspec_to_config(spec))
    assert again.elements == spec.elements
    explicit = validate_bspec([4, 9, 25], thin_declared=True)
    again = bspec_from_config(bspec_to_config(explicit))
    assert again.elements == (4, 9, 25) and again.thin_declared


def test_shorthands():
    assert bspec_from_shorthand("4,9,25,49").elements == (4, 9, 25, 49)
    assert bspec_from_shorthand("explicit:2,9").degenerate
    assert bspec_from_shorthand("primes-sq").elements[0] == 4
    assert bspec_from_shorthand("primes-4th").elements[0] == 16
    assert bspec_from_shorthand("primes-pow:3:10").elements == (8, 27, 125, 343)
