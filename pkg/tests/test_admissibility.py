import math
import random
from itertools import combinations

import pytest

from bfreeshift import (
    FinitePattern,
    bfree_window,
    density_estimate,
    format_pattern,
    is_admissible,
    occupied_residues,
    parse_pattern,
    periodic_extension_window,
    periodicity_certificate,
    prime_powers_bspec,
    reflect,
    validate_bspec,
)

B = validate_bspec([4, 9, 25, 49])
BSQ = prime_powers_bspec(2, 100)


def pat(*points, window=None):
    return FinitePattern.from_points(points, window)


def bfree_oracle(spec, lo, hi):
    # trial division, point by point
    return [n for n in range(lo, hi + 1) if all(n % b for b in spec.elements)]


def test_occupied_residues():
    assert occupied_residues(pat(0, 3, 6), 3) == {0}
    assert occupied_residues(pat(1, 2, 3, 5), 4) == {1, 2, 3}
    assert occupied_residues(pat(-1), 4) == {3}
    with pytest.raises(ValueError):
        occupied_residues(pat(1), 1)


def test_is_admissible_examples():
    assert is_admissible(pat(), B).admissible
    verdict = is_admissible(pat(0, 1, 2, 3), B)
    assert not verdict.admissible
    assert verdict.modulus == 4 and verdict.covered == frozenset({0, 1, 2, 3})
    assert is_admissible(pat(1, 2, 3, 5), B).admissible


def test_violation_reports_smallest_modulus():
    # covers mod 4 and sits inside {0..8}, so 4 must be reported before 9
    points = tuple(range(9))
    verdict = is_admissible(pat(*points), validate_bspec([4, 9]))
    assert verdict.modulus == 4


def test_bfree_window_examples():
    got = bfree_window(BSQ, 1, 20)
    assert got.support == tuple(bfree_oracle(BSQ, 1, 20))
    assert got.support == (1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19)
    assert bfree_window(B, 0, 0).support == ()
    b4 = prime_powers_bspec(4, 100)
    assert bfree_window(b4, 14, 18).support == (14, 15, 17, 18)


def test_bfree_window_matches_oracle_random():
    rng = random.Random(3)
    for _ in range(50):
        lo = rng.randint(-300, 300)
        hi = lo + rng.randint(0, 200)
        assert bfree_window(BSQ, lo, hi).support == tuple(bfree_oracle(BSQ, lo, hi))


def test_bfree_window_is_admissible():
    for lo, hi in [(-50, 50), (0, 120), (-121, -1)]:
        assert is_admissible(bfree_window(BSQ, lo, hi), BSQ).admissible


def test_density_single_modulus():
    est = density_estimate(validate_bspec([4]), 10**5)
    assert est.product == 0.75
    assert abs(est.observed - 0.75) < 1e-3


def test_density_two_moduli_product():
    est = density_estimate(validate_bspec([2, 9]), 10**4)
    assert math.isclose(est.product, 4 / 9)


def test_density_observed_bounded_and_monotone():
    n = 2000
    prev = 1.0
    for cut in (1, 3, 6, 12, 25):
        spec = validate_bspec(BSQ.elements[:cut])
        est = density_estimate(spec, n)
        assert est.product - 2 * spec.elements[-1] / n <= est.observed <= 1.0
        assert est.observed <= prev + 1e-12  # more moduli remove points
        prev = est.observed


def test_reflect():
    assert reflect(FinitePattern((1, 3), (0, 4))) == FinitePattern((-3, -1), (-4, 0))
    assert reflect(FinitePattern((), (0, -1))) == FinitePattern((), (1, 0))
    assert reflect(pat(0)).support == (0,)


def test_pattern_literals():
    assert parse_pattern("{1,2,3}").support == (1, 2, 3)
    assert parse_pattern("{}").support == ()
    w = parse_pattern("0110@0")
    assert w.support == (1, 2) and w.window == (0, 3)
    assert "{1,2}" in format_pattern(w)
    assert "0110@0" in format_pattern(w)


def test_pattern_validation():
    with pytest.raises(ValueError):
        FinitePattern((3, 1), (0, 5))
    with pytest.raises(ValueError):
        FinitePattern((9,), (0, 5))


# -- randomized invariant suites -------------------------------------------


def random_admissible(rng, spec, span=60, tries=50):
    for _ in range(tries):
        size = rng.randint(0, 12)
        points = sorted(rng.sample(range(-span, span), size)) if size else []
        if is_admissible(points, spec).admissible:
            return FinitePattern.from_points(points)
    return FinitePattern.from_points([])


def test_hereditary_full_enumeration_small():
    rng = random.Random(11)
    for _ in range(30):
        base = random_admissible(rng, B)
        if len(base.support) > 8:
            continue
        for r in range(len(base.support) + 1):
            for sub in combinations(base.support, r):
                assert is_admissible(FinitePattern.from_points(sub), B).admissible


def test_hereditary_random_subsets_1000():
    rng = random.Random(12)
    for _ in range(1000):
        base = random_admissible(rng, B)
        keep = [p for p in base.support if rng.random() < 0.6]
        assert is_admissible(FinitePattern.from_points(keep), B).admissible


def test_translation_invariance_1000():
    rng = random.Random(13)
    for _ in range(1000):
        size = rng.randint(0, 10)
        points = sorted(set(rng.randint(-50, 50) for _ in range(size)))
        t = rng.randint(-100, 100)
        a = is_admissible(points, B).admissible
        b = is_admissible([p + t for p in points], B).admissible
        assert a == b


def test_reflection_invariance_1000():
    rng = random.Random(14)
    for _ in range(1000):
        size = rng.randint(0, 10)
        points = sorted(set(rng.randint(-50, 50) for _ in range(size)))
        pattern = FinitePattern.from_points(points)
        assert is_admissible(pattern, B).admissible == is_admissible(reflect(pattern), B).admissible


def test_maximality_of_sieved_set():
    # every excluded point is excluded by direct divisibility, and whenever
    # the window already shows every other coset of that modulus, adding the
    # point kills admissibility
    n = 200
    window = bfree_window(BSQ, -n, n)
    free = set(window.support)
    for point in range(-n, n + 1):
        if point in free:
            continue
        divisors = [b for b in BSQ.elements if point == 0 or point % b == 0]
        assert divisors and divisors[0] <= 2 * n + 1
        grown = FinitePattern.from_points(window.support + (point,))
        verdict = is_admissible(grown, BSQ)
        for b in divisors:
            if occupied_residues(window, b) == set(range(b)) - {point % b}:
                assert not verdict.admissible and verdict.modulus <= b
                break


def test_periodicity_certificate_examples():
    c = periodicity_certificate(pat(0), 1, B)
    assert c.modulus == 4 and c.window_length <= 4
    c = periodicity_certificate(pat(1), 6, B)
    assert c.modulus == 25 and c.window_length <= 150
    c = periodicity_certificate(pat(0, 2), 4, B)
    assert c.modulus == 9 and c.window_length <= 36


def test_periodicity_certificate_windows_violate():
    rng = random.Random(15)
    for t in range(1, 51):
        for _ in range(20):
            size = rng.randint(1, min(4, t))
            seed = FinitePattern.from_points(rng.sample(range(t), size))
            cert = periodicity_certificate(seed, t, BSQ)
            assert math.gcd(cert.modulus, t) == 1
            assert cert.window_length <= cert.modulus * t
            lo = rng.randint(-1000, 1000)
            window = periodic_extension_window(seed, t, lo, cert.window_length)
            verdict = is_admissible(window, BSQ)
            assert not verdict.admissible
            covered = occupied_residues(window, cert.modulus)
            assert covered == set(range(cert.modulus))
