import random

import pytest

from bfreeshift import (
    BlockCodeFamily,
    FinitePattern,
    RadiusTooSmall,
    WindowTooShort,
    Word,
    apply_family,
    apply_to_pattern,
    admissible_windows,
    canonicalize,
    commutes_with_shift_k,
    compose,
    injective_on_language,
    parity_family,
    reflect,
    reflect_family,
    shift_family,
    singleton_profile,
    validate_bspec,
    windex_of_offsets,
)
from bfreeshift.blockcodes import parity_inverse_offsets

B = validate_bspec([4, 9, 25, 49])


def family_from_offsets(op, offsets, rho=1, k=1):
    """Build a one-map family computing op over the cells at the offsets."""
    table = 0
    for w in range(1 << (2 * rho + 1)):
        bits = [(w >> (d + rho)) & 1 for d in offsets]
        if op(bits):
            table |= 1 << w
    return BlockCodeFamily(k, rho, tuple(table for _ in range(k)))


AND_NEXT = family_from_offsets(all, [0, 1])  # erases: needs the right neighbour
OR_NEXT = family_from_offsets(any, [0, 1])  # creates: fires one cell early too


def random_family(rng, k, rho, fix_zero=True):
    nwin = 1 << (2 * rho + 1)
    tables = []
    for _ in range(k):
        t = rng.getrandbits(nwin)
        if fix_zero:
            t &= ~1
        tables.append(t)
    return BlockCodeFamily(k, rho, tuple(tables))


def test_apply_family_identity():
    assert apply_family(shift_family(0, 1, 0), Word(0, (0, 1, 1, 0))) == Word(0, (0, 1, 1, 0))


def test_apply_family_shift_and_erase():
    # the left shift copies from the right neighbour
    assert apply_family(shift_family(1, 1, 1), Word(0, (0, 0, 1, 1, 0))) == Word(1, (1, 1, 0))
    assert apply_family(AND_NEXT, Word(0, (0, 1, 1, 0, 0))) == Word(1, (1, 0, 0))
    # same words under the left-to-right window-slot reading of the two maps
    slot1 = family_from_offsets(lambda b: b[0], [0])  # middle slot of a width-3 window
    assert apply_family(slot1, Word(0, (0, 0, 1, 1, 0))) == Word(1, (0, 1, 1))
    and_slots01 = family_from_offsets(all, [-1, 0])
    assert apply_family(and_slots01, Word(0, (0, 1, 1, 0, 0))) == Word(1, (0, 1, 0))


def test_apply_family_window_too_short():
    with pytest.raises(WindowTooShort):
        apply_family(shift_family(2, 1, 2), Word(0, (1, 0, 1)))


def test_apply_to_pattern_fixes_empty():
    for fam in (AND_NEXT, shift_family(1, 1, 1), shift_family(0, 2, 2)):
        assert apply_to_pattern(fam, FinitePattern.from_points([])).support == ()


def test_apply_to_pattern_shift():
    for t in (-2, -1, 0, 1, 2):
        fam = shift_family(t, 1, 2)
        assert apply_to_pattern(fam, FinitePattern.from_points([5])).support == (5 - t,)


def test_separation_property_random_1000():
    rng = random.Random(21)
    for _ in range(1000):
        k = rng.randint(1, 3)
        rho = rng.randint(0, 2)
        fam = random_family(rng, k, rho)
        left = sorted(rng.sample(range(-20, -5), rng.randint(1, 4)))
        gap = 2 * rho + 1 + rng.randint(0, 4)
        right = sorted(rng.sample(range(left[-1] + gap, left[-1] + gap + 15), rng.randint(1, 4)))
        both = FinitePattern.from_points(left + right)
        img_both = apply_to_pattern(fam, both)
        img_left = apply_to_pattern(fam, FinitePattern.from_points(left))
        img_right = apply_to_pattern(fam, FinitePattern.from_points(right))
        assert set(img_both.support) == set(img_left.support) | set(img_right.support)


def test_phase_equivariance_random():
    rng = random.Random(22)
    for _ in range(300):
        k = rng.randint(1, 4)
        rho = rng.randint(0, 2)
        fam = random_family(rng, k, rho)
        pts = sorted(rng.sample(range(-15, 15), rng.randint(0, 6)))
        pat = FinitePattern.from_points(pts, (-15, 15))
        assert apply_to_pattern(fam, pat.translate(k)) == apply_to_pattern(fam, pat).translate(k)


def test_shift_family_requires_radius():
    with pytest.raises(RadiusTooSmall):
        shift_family(3, 1, 2)


def test_shift_families_compose():
    s1 = shift_family(1, 1, 1)
    s2 = compose(s1, s1)
    assert s2.rho == 2
    direct = shift_family(2, 1, 2)
    for w in range(32):
        assert s2.value(0, w) == direct.value(0, w)


def test_compose_matches_sequential_application():
    rng = random.Random(23)
    for _ in range(100):
        outer = random_family(rng, rng.randint(1, 2), rng.randint(0, 1))
        inner = random_family(rng, rng.randint(1, 2), rng.randint(0, 1))
        comp = compose(outer, inner)
        pts = sorted(rng.sample(range(-10, 10), rng.randint(0, 5)))
        pat = FinitePattern.from_points(pts, (-10, 10))
        assert apply_to_pattern(comp, pat) == apply_to_pattern(
            outer, apply_to_pattern(inner, pat)
        )


def test_parity_family_action():
    fam = parity_family(0, 2, 2, 2)
    assert apply_to_pattern(fam, FinitePattern.from_points([1, 3], (0, 6))).support == (3, 5)
    assert apply_to_pattern(fam, FinitePattern.from_points([0, 4], (0, 6))).support == (0, 4)
    odd = parity_family(1, -1, 2, 1)
    assert apply_to_pattern(odd, FinitePattern.from_points([0])).support == (1,)
    assert apply_to_pattern(odd, FinitePattern.from_points([1])).support == (0,)


def test_parity_inverse():
    for u, v in [(0, 2), (2, 0), (1, -1), (-1, 1), (2, 2)]:
        iu, iv = parity_inverse_offsets(u, v)
        fam = parity_family(u, v, 2, 2)
        inv = parity_family(iu, iv, 2, 2)
        both = compose(inv, fam)
        prof = singleton_profile(both)
        assert prof.uniform_offset() == 0


def test_singleton_profiles():
    assert singleton_profile(shift_family(0, 1, 1)).uniform_offset() == 0
    assert singleton_profile(shift_family(2, 1, 2)).uniform_offset() == -2
    assert all(e.kind == "empty" for e in singleton_profile(AND_NEXT).entries)
    entry = singleton_profile(OR_NEXT).entries[0]
    assert entry.kind == "multi" and entry.defect == (-1, 0)
    par = singleton_profile(parity_family(0, 2, 2, 2)).parity_offsets()
    assert par == (0, 2)


def test_profile_position_collisions():
    # even points -> +0, odd points -> +1: both classes land on even positions
    tables = [0, 0]
    for m, o in ((0, 0), (1, 1)):
        tables[(m + o) % 2] |= 1 << windex_of_offsets([-o], 1)
    fam = BlockCodeFamily(2, 1, tuple(tables))
    prof = singleton_profile(fam)
    assert prof.entries[0].offset == 0 and prof.entries[1].offset == 1
    assert prof.position_collisions() == [(0, 1)]


def test_commutes_with_shift_k_minimal():
    ident2 = shift_family(0, 2, 1)
    assert commutes_with_shift_k(ident2) == 1
    assert commutes_with_shift_k(shift_family(1, 1, 1)) == 1
    alternating = parity_family(0, 2, 2, 2)
    assert commutes_with_shift_k(alternating) == 2


def test_injectivity():
    assert injective_on_language(shift_family(0, 1, 1), B, 8).injective
    assert injective_on_language(shift_family(1, 1, 1), B, 8).injective
    res = injective_on_language(AND_NEXT, B, 8)
    assert not res.injective
    a, w1, w2 = res.collision
    assert sorted((sum(w1.bits), sum(w2.bits))) == [0, 1]  # one-point word vs empty word
    with pytest.raises(WindowTooShort):
        injective_on_language(shift_family(2, 1, 2), B, 3)


def test_serialization_roundtrip_random():
    rng = random.Random(24)
    for _ in range(200):
        fam = random_family(rng, rng.randint(1, 4), rng.randint(0, 3), fix_zero=False)
        data = fam.to_json_dict()
        assert BlockCodeFamily.from_json_dict(data) == fam
        assert all(len(h) == 2 * ((fam.n_windows + 7) // 8) for h in data["maps"])


def test_reflection_conjugation_random():
    rng = random.Random(25)
    for _ in range(300):
        fam = random_family(rng, rng.randint(1, 3), rng.randint(0, 2))
        mirrored = reflect_family(fam)
        pts = sorted(rng.sample(range(-12, 12), rng.randint(0, 6)))
        pat = FinitePattern.from_points(pts, (-12, 12))
        lhs = apply_to_pattern(mirrored, reflect(pat))
        rhs = reflect(apply_to_pattern(fam, pat))
        assert lhs == rhs


def test_admissible_windows_counts():
    assert len(admissible_windows(B, 0)) == 2
    assert len(admissible_windows(B, 1)) == 8
    assert len(admissible_windows(B, 2)) == 29
    degenerate = validate_bspec([2, 9, 25, 49])
    assert len(admissible_windows(degenerate, 2)) == 11


def test_canonicalize_zeroes_inadmissible_entries():
    full = BlockCodeFamily(1, 2, ((1 << 32) - 1,))
    canon = canonicalize(full, B)
    good = set(admissible_windows(B, 2))
    for w in range(32):
        assert canon.value(0, w) == (1 if w in good else 0)


def test_windex_helpers():
    assert windex_of_offsets([0], 1) == 0b010
    assert windex_of_offsets([-1, 1], 1) == 0b101
    with pytest.raises(ValueError):
        windex_of_offsets([3], 1)
