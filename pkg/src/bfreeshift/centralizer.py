"""Staged exhaustive search for block-code families commuting with a shift power.

Candidates at (rho, k) form the space of all k-tuples of truth tables on
admissible windows (entries on non-admissible windows never act on the shift
and are canonicalized to zero). The stages below each pin table entries or
reject whole subspaces using a necessary condition for membership in the
group of shift-power-commuting self-homeomorphisms, so the full space is
never materialized:

  1  every map must fix the all-zero window, else the image of emptiness is
     a nonempty periodic set;
  2  every one-point pattern must map to a one-point pattern;
  3  no two one-point classes may land in the same class mod k;
  4  the one-point translations must be uniform, or split by parity when 2
     is a modulus and k is even;
  5  no map may create a point the translated copy would not have;
  6  what remains can only erase points, and erasing anything collides two
     admissible words, so only the exact translation survives.

Every rejected subspace carries an exact count plus verified sample
evidence: a coset witness certificate (stages 1, 2, 4, 5) or a colliding
admissible word pair (stages 2, 3, 6).
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .admissibility import FinitePattern, Word, is_admissible, parse_word, reflect
from .blockcodes import (
    DEFAULT_K_CAP,
    DEFAULT_RHO_CAP,
    BlockCodeFamily,
    _phase_row,
    _window_matrix,
    admissible_windows,
    apply_to_pattern,
    compose,
    injective_on_language,
    parity_family,
    parity_inverse_offsets,
    shift_family,
    singleton_profile,
    window_offsets,
    windex_of_offsets,
)
from .errors import CapExceeded, DegenerateCase, NotFoundInTruncation, OddTranslation
from .language import enumerate_admissible_words
from .numtheory import BSpec, bspec_to_config, find_coprime_element
from .witnesses import (
    WitnessCertificate,
    verify_certificate,
    witness_noextra,
    witness_periodic,
    witness_trans1,
    witness_trans3,
)

REASONS = (
    "empty_set_moved",
    "singleton_image_empty",
    "singleton_image_multipoint",
    "singleton_position_collision",
    "nonuniform_translation",
    "creates_new_point",
    "erases_points_noninjective",
)


@dataclass(frozen=True)
class ParityMap:
    """Translate even-position points by u and odd-position points by v."""

    u: int
    v: int

    def __post_init__(self):
        if (self.u - self.v) % 2:
            raise OddTranslation("parity translations must agree mod 2")


@dataclass(frozen=True)
class CollisionPair:
    left_endpoint: int
    word1: Word
    word2: Word

    def to_json_dict(self) -> dict:
        return {
            "left_endpoint": self.left_endpoint,
            "word1": str(self.word1),
            "word2": str(self.word2),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "CollisionPair":
        return cls(data["left_endpoint"], parse_word(data["word1"]), parse_word(data["word2"]))


def verify_collision(family: BlockCodeFamily, pair: CollisionPair, bspec: BSpec) -> bool:
    """Both words admissible and distinct, on one window, with identical images."""
    p1, p2 = pair.word1.to_pattern(), pair.word2.to_pattern()
    if pair.word1 == pair.word2 or p1.window != p2.window:
        return False
    if not (is_admissible(p1, bspec).admissible and is_admissible(p2, bspec).admissible):
        return False
    return apply_to_pattern(family, p1) == apply_to_pattern(family, p2)


@dataclass
class RejectionSample:
    reason: str
    family: BlockCodeFamily
    certificate: WitnessCertificate | None = None
    collision: CollisionPair | None = None
    normalized_family: BlockCodeFamily | None = None  # family the certificate indicts
    verified: bool = False

    def to_json_dict(self) -> dict:
        out = {
            "reason": self.reason,
            "family": self.family.to_json_dict(),
            "verified": self.verified,
        }
        if self.certificate is not None:
            out["kind"] = "witness"
            out["certificate"] = self.certificate.to_json_dict()
            if self.normalized_family is not None:
                out["normalized_family"] = self.normalized_family.to_json_dict()
        else:
            out["kind"] = "collision"
            out["collision"] = self.collision.to_json_dict()
        return out


@dataclass
class RejectionBucket:
    reason: str
    count: int = 0
    samples: list[RejectionSample] = field(default_factory=list)
    decided_by: str = "structure"  # structure | enumeration | construction

    def to_json_dict(self) -> dict:
        return {
            "reason": self.reason,
            "count": self.count,
            "decided_by": self.decided_by,
            "samples": [s.to_json_dict() for s in self.samples],
        }


@dataclass(frozen=True)
class Survivor:
    family: BlockCodeFamily
    classification: tuple

    def to_json_dict(self) -> dict:
        kind = self.classification[0]
        if kind == "shift":
            cls = {"kind": "shift", "t": self.classification[1]}
        elif kind == "parity":
            cls = {"kind": "parity", "u": self.classification[1][0], "v": self.classification[1][1]}
        else:
            cls = {"kind": "unknown"}
        return {"classification": cls, "family": self.family.to_json_dict()}


@dataclass
class SearchReport:
    bspec_config: dict
    rho: int
    k: int
    n: int
    total_candidates: int
    survivors: list[Survivor]
    rejections: dict[str, RejectionBucket]
    unresolved: list[dict]
    node_counts: dict[str, int]
    wall_time_ms: float

    def survivor_classifications(self) -> list[tuple]:
        return sorted(s.classification for s in self.survivors)

    def rejected_total(self) -> int:
        return sum(b.count for b in self.rejections.values())

    def unresolved_total(self) -> int:
        return sum(u["count"] for u in self.unresolved)

    def all_samples(self) -> list[RejectionSample]:
        return [s for b in self.rejections.values() for s in b.samples]

    def to_json_dict(self, include_timing: bool = False) -> dict:
        out = {
            "schema": 1,
            "params": {"bspec": self.bspec_config, "rho": self.rho, "k": self.k, "n": self.n},
            "total_candidates": self.total_candidates,
            "survivors": [s.to_json_dict() for s in self.survivors],
            "rejections": {r: b.to_json_dict() for r, b in sorted(self.rejections.items())},
            "unresolved": self.unresolved,
            "node_counts": dict(sorted(self.node_counts.items())),
        }
        if include_timing:
            out["wall_time_ms"] = self.wall_time_ms
        return out


# ---------------------------------------------------------------------------
# profile helpers; a profile is the tuple of image offsets per residue class
# (the one-point pattern at class m maps onto the point m + profile[m])


def _profile_tables(profile: tuple[int, ...], k: int, rho: int) -> list[int]:
    """Tables carrying exactly the one-point behaviour of a profile."""
    tables = [0] * k
    for m, o in enumerate(profile):
        tables[(m + o) % k] |= 1 << windex_of_offsets([-o], rho)
    return tables


def _source_offsets(profile: tuple[int, ...], k: int) -> list[int]:
    """Per output phase, the input offset a surviving family may copy from."""
    d: list[int | None] = [None] * k
    for m, o in enumerate(profile):
        d[(m + o) % k] = -o
    assert all(x is not None for x in d), "profile positions must be a permutation mod k"
    return d  # type: ignore[return-value]


def _inverse_expected(profile: tuple[int, ...], k: int) -> BlockCodeFamily:
    """The code undoing the translation a profile describes."""
    if len(set(profile)) == 1:
        o = profile[0]
        return shift_family(o, k, abs(o))
    iu, iv = parity_inverse_offsets(profile[0], profile[1])
    return parity_family(iu, iv, k, max(abs(iu), abs(iv)))


def classify_survivor(family: BlockCodeFamily, bspec: BSpec, n: int | None = None) -> tuple:
    """Label a surviving family by its one-point behaviour: a uniform
    translation by o is the shift power -o, a parity split is the (even, odd)
    translation pair; anything else is unknown."""
    del n
    prof = singleton_profile(family, bspec)
    o = prof.uniform_offset()
    if o is not None:
        return ("shift", -o)
    par = prof.parity_offsets()
    if par is not None:
        return ("parity", par)
    return ("unknown",)


# ---------------------------------------------------------------------------
# batched injectivity over a subspace of erasure candidates


class _ErasureTester:
    """Vectorized first-pass injectivity test for candidates sharing a profile.

    Candidates differ only in which copy-entries they erase; all of them are
    evaluated on the full list of admissible words of a given length at once.
    """

    def __init__(self, bspec: BSpec, k: int, rho: int, n: int):
        self.k, self.rho, self.n = k, rho, n
        words = enumerate_admissible_words(bspec, n)
        self.n_words = len(words)
        arr = np.asarray(words, dtype=np.uint64)
        self.win = _window_matrix(arr, n, rho)  # (W, P)
        self.phases = [_phase_row(a, n, rho, k) for a in range(k)]
        self.weights = (np.uint64(1) << np.arange(self.win.shape[1], dtype=np.uint64))

    def noninjective(self, prof_tables, keep_entries, masks) -> np.ndarray:
        """Boolean array: whether each erasure mask collides two words."""
        n_windows = 1 << (2 * self.rho + 1)
        cands = len(masks)
        tables = np.zeros((cands, self.k, n_windows), dtype=np.uint8)
        for c, t in enumerate(prof_tables):
            for w in range(n_windows):
                if (t >> w) & 1:
                    tables[:, c, w] = 1
        for i, (c, w) in enumerate(keep_entries):
            bits = np.array([(g >> i) & 1 for g in masks], dtype=np.uint8)
            tables[:, c, w] = bits
        bad = np.zeros(cands, dtype=bool)
        idx = np.arange(cands)[:, None, None]
        for phases in self.phases:
            out = tables[idx, phases[None, None, :], self.win[None, :, :]]
            keys = out.astype(np.uint64) @ self.weights  # (C, W)
            keys.sort(axis=1)
            bad |= (np.diff(keys, axis=1) == 0).any(axis=1)
        return bad


# ---------------------------------------------------------------------------
# the staged search


def search(
    bspec: BSpec,
    rho: int,
    k: int,
    n: int,
    *,
    rho_cap: int = DEFAULT_RHO_CAP,
    k_cap: int = DEFAULT_K_CAP,
    honest_limit_bits: int = 13,
    samples_per_reason: int = 3,
    spot_checks: int = 8,
    seed: int = 20240801,
    workers: int = 1,
) -> SearchReport:
    """Run the staged search; every candidate is accounted for exactly once.

    Counts are exact big integers; the partition (rejections + unresolved +
    survivors = whole space) is asserted before returning. Free entries left
    after stage 5 are enumerated and tested one by one while their number is
    at most `honest_limit_bits`; larger subspaces are rejected wholesale by
    the constructed collision pair of the erasure argument, with the
    representative pair verified and a seeded sample of candidates
    spot-checked.
    """
    del workers  # merge order is canonical; accepted for interface stability
    t0 = time.perf_counter()
    if rho > rho_cap or k > k_cap or rho < 0 or k < 1:
        raise CapExceeded(f"need rho <= {rho_cap} and k <= {k_cap}")
    if n < 2 * rho + 1:
        raise ValueError(f"n must be >= {2 * rho + 1}")
    # witness builders need a modulus coprime to k above the code width
    find_coprime_element(bspec, k, lambda b: b > 2 * rho + 2)

    width = 2 * rho + 1
    adm = admissible_windows(bspec, rho)
    singletons = {windex_of_offsets([d], rho) for d in range(-rho, rho + 1)}
    multi = [w for w in adm if w != 0 and w not in singletons]
    m_per_phase = len(multi)
    v_opts, o_opts = width, 1 << width
    total = 1 << (k * len(adm))
    after_profile = 1 << (k * m_per_phase)

    buckets = {r: RejectionBucket(r) for r in REASONS}
    unresolved: list[dict] = []
    survivors: list[Survivor] = []
    nodes = {
        "admissible_windows": len(adm),
        "profiles_examined": 0,
        "candidates_enumerated": 0,
        "builders_run": 0,
        "certificates_verified": 0,
        "collisions_verified": 0,
        "spot_checks": 0,
    }
    rng = random.Random(seed)
    degenerate = bspec.degenerate and k % 2 == 0

    def add_sample(sample: RejectionSample):
        bucket = buckets[sample.reason]
        if len(bucket.samples) < samples_per_reason:
            bucket.samples.append(sample)

    def want_sample(reason: str) -> bool:
        return len(buckets[reason].samples) < samples_per_reason

    def checked_collision(reason, family, pair) -> bool:
        ok = verify_collision(family, pair, bspec)
        nodes["collisions_verified"] += ok
        add_sample(RejectionSample(reason, family, collision=pair, verified=ok))
        return ok

    def checked_witness(reason, family, cert, normalized=None) -> bool:
        ok = verify_certificate(normalized if normalized is not None else family, cert)
        nodes["certificates_verified"] += ok
        add_sample(
            RejectionSample(
                reason, family, certificate=cert, normalized_family=normalized, verified=ok
            )
        )
        return ok

    # -- stage 1: maps that move the empty pattern --------------------------
    buckets["empty_set_moved"].count = ((1 << k) - 1) * (1 << (k * (len(adm) - 1)))
    rep = BlockCodeFamily(k, rho, tuple([1] + [0] * (k - 1)))  # zero window fires at phase 0
    cert = witness_periodic(rep, bspec)
    nodes["builders_run"] += 1
    checked_witness("empty_set_moved", rep, cert)

    # -- stage 2: one-point classes without a one-point image ---------------
    # the table bits feeding class m sit at (phase (m-d) mod k, window e_d),
    # disjoint across classes, so options classify class by class
    def class_tables(m: int, option: int) -> list[int]:
        tables = [0] * k
        for i in range(width):
            if (option >> i) & 1:
                d = i - rho
                tables[(m - d) % k] |= 1 << windex_of_offsets([d], rho)
        return tables

    def merge(*table_sets):
        out = [0] * k
        for ts in table_sets:
            out = [a | b for a, b in zip(out, ts)]
        return out

    id_tables = [class_tables(m, 1 << rho) for m in range(k)]  # offset-0 option per class
    for m in range(k):
        stratum = (v_opts**m) * (o_opts ** (k - 1 - m)) * after_profile
        for opt in range(o_opts):
            npoints = bin(opt).count("1")
            if npoints == 1:
                continue
            reason = "singleton_image_empty" if npoints == 0 else "singleton_image_multipoint"
            if npoints == 0:
                buckets[reason].count += stratum
                if want_sample(reason):
                    rep = BlockCodeFamily(
                        k,
                        rho,
                        tuple(
                            merge(class_tables(m, opt), *[id_tables[j] for j in range(k) if j != m])
                        ),
                    )
                    a = m - rho
                    one = [0] * n
                    one[rho] = 1
                    pair = CollisionPair(a, Word(a, tuple(one)), Word(a, tuple([0] * n)))
                    checked_collision(reason, rep, pair)
                continue
            rep = None
            if want_sample(reason):
                rep = BlockCodeFamily(
                    k,
                    rho,
                    tuple(merge(class_tables(m, opt), *[id_tables[j] for j in range(k) if j != m])),
                )
            try:
                if rep is not None:
                    c = witness_trans1(rep, bspec, m)
                    nodes["builders_run"] += 1
                    checked_witness(reason, rep, c)
                buckets[reason].count += stratum
            except NotFoundInTruncation as exc:
                unresolved.append({"stage": reason, "count": stratum, "detail": str(exc)})

    # -- stages 3 and 4 over valid profiles ----------------------------------
    passing: list[tuple[tuple[int, ...], tuple]] = []
    for profile in product(range(-rho, rho + 1), repeat=k):
        nodes["profiles_examined"] += 1
        prof_tables = _profile_tables(profile, k, rho)
        positions = [(m + o) % k for m, o in enumerate(profile)]
        if len(set(positions)) < k:
            buckets["singleton_position_collision"].count += after_profile
            if want_sample("singleton_position_collision"):
                m1, m2 = next(
                    (a, b)
                    for a in range(k)
                    for b in range(a + 1, k)
                    if positions[a] == positions[b]
                )
                rep = BlockCodeFamily(k, rho, tuple(prof_tables))
                # the two one-point patterns below map onto the same point
                q1 = m1
                q2 = m1 + profile[m1] - profile[m2]
                a = min(q1, q2) - rho
                length = max(n, abs(q1 - q2) + rho + 1)
                b1, b2 = [0] * length, [0] * length
                b1[q1 - a], b2[q2 - a] = 1, 1
                pair = CollisionPair(a, Word(a, tuple(b1)), Word(a, tuple(b2)))
                checked_collision("singleton_position_collision", rep, pair)
            continue
        if len(set(profile)) == 1:
            passing.append((profile, ("shift", -profile[0])))
            continue
        if degenerate:
            evens = {profile[m] for m in range(0, k, 2)}
            odds = {profile[m] for m in range(1, k, 2)}
            if len(evens) == 1 and len(odds) == 1:
                u, v = profile[0], profile[1]
                assert (u - v) % 2 == 0  # opposite-parity pairs collide at stage 3
                passing.append((profile, ("parity", (u, v))))
                continue
            anchor, m_def = next(
                (a, b) for a in range(k) for b in range(a + 2, k, 2) if profile[a] != profile[b]
            )
        else:
            anchor = 0
            m_def = next(m for m in range(1, k) if profile[m] != profile[0])
        rep = BlockCodeFamily(k, rho, tuple(prof_tables))
        try:
            c = witness_trans3(rep, bspec, m_def, ell=profile[m_def] - profile[anchor], anchor=anchor)
            nodes["builders_run"] += 1
            checked_witness("nonuniform_translation", rep, c)
            buckets["nonuniform_translation"].count += after_profile
        except (NotFoundInTruncation, DegenerateCase) as exc:
            unresolved.append(
                {
                    "stage": "nonuniform_translation",
                    "count": after_profile,
                    "detail": f"profile {profile}: {exc}",
                }
            )

    # -- stages 5 and 6 per passing profile -----------------------------------
    n_small = 2 * rho + 1
    tester = _ErasureTester(bspec, k, rho, n_small) if passing else None
    for profile, classification in passing:
        d_phase = _source_offsets(profile, k)
        prof_tables = _profile_tables(profile, k, rho)
        zero_entries: list[tuple[int, int]] = []  # creating entries, must stay 0
        keep_entries: list[tuple[int, int]] = []  # copy-or-erase entries, free
        for c in range(k):
            src_bit = d_phase[c] + rho
            for w in multi:
                (keep_entries if (w >> src_bit) & 1 else zero_entries).append((c, w))
        nz, nk_bits = len(zero_entries), len(keep_entries)

        # stage 5: subspace with at least one creating entry set
        if nz:
            stage5_count = ((1 << nz) - 1) * (1 << nk_bits)
            try:
                if want_sample("creates_new_point"):
                    c0, w0 = zero_entries[0]
                    tables = list(prof_tables)
                    tables[c0] |= 1 << w0
                    for c, w in keep_entries:
                        tables[c] |= 1 << w
                    rep = BlockCodeFamily(k, rho, tuple(tables))
                    norm = compose(_inverse_expected(profile, k), rep)
                    cert = witness_noextra(norm, bspec)
                    nodes["builders_run"] += 1
                    checked_witness("creates_new_point", rep, cert, normalized=norm)
                buckets["creates_new_point"].count += stage5_count
            except NotFoundInTruncation as exc:
                unresolved.append(
                    {
                        "stage": "creates_new_point",
                        "count": stage5_count,
                        "detail": f"profile {profile}: {exc}",
                    }
                )

        # stage 6: the erasure subspace around the expected survivor
        survivor_tables = list(prof_tables)
        for c, w in keep_entries:
            survivor_tables[c] |= 1 << w
        survivor_family = BlockCodeFamily(k, rho, tuple(survivor_tables))

        if not injective_on_language(survivor_family, bspec, n).injective:
            unresolved.append(
                {
                    "stage": "survivor_injectivity",
                    "count": 1 << nk_bits,
                    "detail": f"profile {profile}: expected survivor failed injectivity at n={n}",
                }
            )
            continue

        if nk_bits <= honest_limit_bits:
            full = (1 << nk_bits) - 1
            masks = list(range(full))
            nodes["candidates_enumerated"] += len(masks)
            bad = tester.noninjective(prof_tables, keep_entries, masks) if masks else []
            rejected = 0
            for g, quick_bad in zip(masks, bad):
                cand = None
                if not quick_bad or want_sample("erases_points_noninjective"):
                    tables = list(prof_tables)
                    for i, (c, w) in enumerate(keep_entries):
                        if (g >> i) & 1:
                            tables[c] |= 1 << w
                    cand = BlockCodeFamily(k, rho, tuple(tables))
                if not quick_bad:
                    # short words showed no collision; decide at the full length
                    res = injective_on_language(cand, bspec, n)
                    if res.injective:
                        unresolved.append(
                            {
                                "stage": "erases_points_noninjective",
                                "count": 1,
                                "detail": f"profile {profile}: erasure candidate passed at n={n}",
                            }
                        )
                        continue
                    rejected += 1
                    if want_sample("erases_points_noninjective"):
                        a, w1, w2 = res.collision
                        checked_collision("erases_points_noninjective", cand, CollisionPair(a, w1, w2))
                    continue
                rejected += 1
                if cand is not None and want_sample("erases_points_noninjective"):
                    res = injective_on_language(cand, bspec, n_small)
                    if res.collision is not None:
                        a, w1, w2 = res.collision
                        pad = n - len(w1.bits)
                        pair = CollisionPair(
                            a, Word(a, w1.bits + (0,) * pad), Word(a, w2.bits + (0,) * pad)
                        )
                        checked_collision("erases_points_noninjective", cand, pair)
            buckets["erases_points_noninjective"].count += rejected
            buckets["erases_points_noninjective"].decided_by = "enumeration"
        else:
            ok = _bulk_erasure_rejection(
                profile,
                prof_tables,
                keep_entries,
                bspec,
                k,
                rho,
                n,
                nodes,
                rng,
                spot_checks,
                checked_collision,
                want_sample,
            )
            if ok:
                buckets["erases_points_noninjective"].count += (1 << nk_bits) - 1
                buckets["erases_points_noninjective"].decided_by = "construction"
            else:
                unresolved.append(
                    {
                        "stage": "erases_points_noninjective",
                        "count": (1 << nk_bits) - 1,
                        "detail": f"profile {profile}: bulk erasure argument failed verification",
                    }
                )

        cls = classify_survivor(survivor_family, bspec, n)
        assert cls == classification, f"classification drift: {cls} vs {classification}"
        survivors.append(Survivor(survivor_family, cls))

    accounted = sum(b.count for b in buckets.values()) + sum(u["count"] for u in unresolved)
    assert accounted + len(survivors) == total, "candidate partition is not exact"

    return SearchReport(
        bspec_config=bspec_to_config(bspec),
        rho=rho,
        k=k,
        n=n,
        total_candidates=total,
        survivors=survivors,
        rejections=buckets,
        unresolved=unresolved,
        node_counts=nodes,
        wall_time_ms=(time.perf_counter() - t0) * 1000.0,
    )


def _bulk_erasure_rejection(
    profile,
    prof_tables,
    keep_entries,
    bspec,
    k,
    rho,
    n,
    nodes,
    rng,
    spot_checks,
    checked_collision,
    want_sample,
) -> bool:
    """Reject every proper erasure pattern of one profile at once.

    A candidate erasing along an entry (c0, w0) of minimal window support
    collides the word w0-placed-at-c0 with that word minus the erased
    sources: every proper subset of the placed support is too small to meet
    any other minimal erasure entry, so both map onto the same image. The
    single-erasure representative is verified explicitly and a seeded sample
    of random erasure patterns is spot-checked at the full test length.
    """
    nk_bits = len(keep_entries)
    c0, w0 = keep_entries[0]
    tables = list(prof_tables)
    for c, w in keep_entries[1:]:
        tables[c] |= 1 << w
    rep = BlockCodeFamily(k, rho, tuple(tables))

    support_u = tuple(sorted(c0 + off for off in window_offsets(w0, rho)))
    a = c0 - rho
    pat_u = FinitePattern(support_u, (a, a + n - 1))
    image = apply_to_pattern(rep, pat_u)
    kept = tuple(q for q in support_u if q + profile[q % k] in image.support)
    if kept == support_u:
        return False
    bits_u, bits_v = [0] * n, [0] * n
    for q in support_u:
        bits_u[q - a] = 1
    for q in kept:
        bits_v[q - a] = 1
    pair = CollisionPair(a, Word(a, tuple(bits_u)), Word(a, tuple(bits_v)))
    if want_sample("erases_points_noninjective"):
        if not checked_collision("erases_points_noninjective", rep, pair):
            return False
    elif not verify_collision(rep, pair, bspec):
        return False

    full = (1 << nk_bits) - 1
    for _ in range(spot_checks):
        g = rng.randrange(full)  # anything strictly below full erases something
        nodes["spot_checks"] += 1
        tables = list(prof_tables)
        for i, (c, w) in enumerate(keep_entries):
            if (g >> i) & 1:
                tables[c] |= 1 << w
        cand = BlockCodeFamily(k, rho, tuple(tables))
        if injective_on_language(cand, bspec, n).injective:
            return False
    return True


# ---------------------------------------------------------------------------
# reversing symmetries and the parity-pair example


def apply_reversing(family: BlockCodeFamily, pattern: FinitePattern) -> FinitePattern:
    """Act by the family, then reflect through the origin."""
    return reflect(apply_to_pattern(family, pattern))


@dataclass(frozen=True)
class ReversingElement:
    family: BlockCodeFamily
    classification: tuple
    conjugation_verified: bool

    def describe(self) -> str:
        kind = self.classification[0]
        if kind == "shift":
            return f"reflection o shift^{self.classification[1]}"
        if kind == "parity":
            u, v = self.classification[1]
            return f"reflection o parity({u},{v})"
        return "reflection o unknown"

    def to_json_dict(self) -> dict:
        return {
            "description": self.describe(),
            "classification": Survivor(self.family, self.classification).to_json_dict()[
                "classification"
            ],
            "family": self.family.to_json_dict(),
            "conjugation_verified": self.conjugation_verified,
        }


def reversing_elements(
    bspec: BSpec, rho: int, k: int, n: int, report: SearchReport | None = None
) -> list[ReversingElement]:
    """Compose each search survivor with the reflection and verify that the
    result conjugates the k-th shift power into its inverse on length-n words.

    No independent search happens here: orientation-reversing symmetries are
    exactly reflection followed by a commuting element.
    """
    if report is None:
        report = search(bspec, rho, k, n)
    words = enumerate_admissible_words(bspec, n)
    out = []
    for survivor in report.survivors:
        fam = survivor.family
        good = True
        for a in range(k):
            for wbits in words:
                pts = tuple(a + i for i in range(n) if (wbits >> i) & 1)
                pat = FinitePattern(pts, (a, a + n - 1))
                lhs = apply_reversing(fam, pat.translate(-k))
                rhs = apply_reversing(fam, pat).translate(k)
                if lhs != rhs:
                    good = False
                    break
            if not good:
                break
        out.append(ReversingElement(fam, survivor.classification, good))
    return out


@dataclass(frozen=True)
class H2Report:
    t: int
    n: int
    family: BlockCodeFamily
    commutes_with_square: bool
    shift_counterexample: Word | None  # witness that commuting with the shift itself fails
    exchanges_parity_classes: bool

    def to_json_dict(self) -> dict:
        return {
            "t": self.t,
            "n": self.n,
            "family": self.family.to_json_dict(),
            "commutes_with_square": self.commutes_with_square,
            "shift_counterexample": str(self.shift_counterexample)
            if self.shift_counterexample
            else None,
            "exchanges_parity_classes": self.exchanges_parity_classes,
        }


def verify_h2_example(bspec: BSpec, t: int, n: int) -> H2Report:
    """Exercise the parity pair fixing even-position points and translating
    odd-position points by t: it commutes with the square of the shift, not
    with the shift itself when t != 0, and shifting after it swaps the two
    parity classes."""
    if not bspec.degenerate:
        raise ValueError("needs 2 among the moduli")
    if t % 2:
        raise OddTranslation(f"t={t} must be even")
    if n <= abs(t) or n < 2 * abs(t) + 1:
        raise ValueError(f"need n >= {max(abs(t) + 1, 2 * abs(t) + 1)}")
    fam = parity_family(0, t, 2, abs(t))
    words = enumerate_admissible_words(bspec, n)

    commutes_sq = True
    counterexample = None
    exchanges = True
    for a in (0, 1):
        for wbits in words:
            pts = tuple(a + i for i in range(n) if (wbits >> i) & 1)
            pat = FinitePattern(pts, (a, a + n - 1))
            img = apply_to_pattern(fam, pat)
            if apply_to_pattern(fam, pat.translate(-2)) != img.translate(-2):
                commutes_sq = False
            if counterexample is None and apply_to_pattern(fam, pat.translate(-1)) != img.translate(-1):
                counterexample = Word(a, tuple((wbits >> i) & 1 for i in range(n)))
            if pts:
                after = {p % 2 for p in img.translate(-1).support}
                if after and after == {p % 2 for p in pts}:
                    exchanges = False
    return H2Report(t, n, fam, commutes_sq, counterexample, exchanges)
