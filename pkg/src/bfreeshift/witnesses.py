"""Executable coset witnesses: admissible patterns whose images leave the shift.

Each builder takes a defective code family, assembles an admissible pattern
by solving congruences, and certifies that the image occupies every residue
class of some modulus. Point selection is deterministic: each congruence
class is scanned upward from its smallest non-negative representative until
the separation constraints hold, so certificates are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .admissibility import FinitePattern, is_admissible, occupied_residues
from .blockcodes import (
    BlockCodeFamily,
    apply_to_pattern,
    admissible_windows,
    singleton_profile,
    window_offsets,
)
from .errors import DegenerateCase, NotFoundInTruncation
from .numtheory import BSpec, bspec_from_config, bspec_to_config, crt_solve, find_coprime_element

KINDS = ("trans1", "trans3", "no-extra", "periodic")


@dataclass(frozen=True)
class AuditEntry:
    point: int
    modulus: int
    residue: int
    tag: str

    def holds(self) -> bool:
        return self.point % self.modulus == self.residue % self.modulus


@dataclass(frozen=True)
class WitnessCertificate:
    kind: str
    modulus: int  # the modulus whose residues the image fully covers
    phase: int  # residue class the defect lives at
    pattern: FinitePattern  # admissible input, already placed at its phase
    separated: tuple[int, ...]  # points required to sit > gap_bound apart
    core: tuple[int, ...]  # clustered core (no-extra only), exempt from gaps
    gap_bound: int
    congruence_audit: tuple[AuditEntry, ...]
    image_support: tuple[int, ...]
    bspec_config: dict = field(compare=False)

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "kind": self.kind,
            "modulus": self.modulus,
            "phase": self.phase,
            "pattern": {"support": list(self.pattern.support), "window": list(self.pattern.window)},
            "separated": list(self.separated),
            "core": list(self.core),
            "gap_bound": self.gap_bound,
            "congruence_audit": [
                {"point": a.point, "modulus": a.modulus, "residue": a.residue, "tag": a.tag}
                for a in self.congruence_audit
            ],
            "image_support": list(self.image_support),
            "image_residues": sorted({p % self.modulus for p in self.image_support}),
            "bspec": self.bspec_config,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "WitnessCertificate":
        pat = data["pattern"]
        return cls(
            kind=data["kind"],
            modulus=int(data["modulus"]),
            phase=int(data["phase"]),
            pattern=FinitePattern(tuple(pat["support"]), tuple(pat["window"])),
            separated=tuple(data["separated"]),
            core=tuple(data["core"]),
            gap_bound=int(data["gap_bound"]),
            congruence_audit=tuple(
                AuditEntry(e["point"], e["modulus"], e["residue"], e["tag"])
                for e in data["congruence_audit"]
            ),
            image_support=tuple(data["image_support"]),
            bspec_config=data["bspec"],
        )


def _scan_point(
    congruences: list[tuple[int, int, str]],
    gap: int,
    chosen: list[int],
    keep_away: tuple[int, ...] = (),
    min_abs: int = 0,
) -> tuple[int, list[AuditEntry]]:
    """Smallest non-negative CRT representative obeying the separation rules."""
    base, modulus = crt_solve([(r, m) for r, m, _ in congruences])
    x = base
    while True:
        ok = abs(x) > min_abs or min_abs == 0
        if ok and all(abs(x - y) > gap for y in chosen) and all(abs(x - y) > gap for y in keep_away):
            return x, [AuditEntry(x, m, r % m, tag) for r, m, tag in congruences]
        x += modulus


def witness_trans1(
    family: BlockCodeFamily,
    bspec: BSpec,
    phase: int,
    defect: tuple[int, int] | None = None,
) -> WitnessCertificate:
    """Reject a family whose image of the one-point pattern at `phase` has
    two points l < l'.

    Chooses a modulus c coprime to k with c not dividing l' - l, then places
    c-1 points hitting residues 1..c-1 mod c, all in class `phase` mod k and
    congruent to 0 mod every smaller modulus coprime to k. The pattern is
    admissible while its image covers every residue mod c.
    """
    k, rho = family.k, family.rho
    if defect is None:
        entry = singleton_profile(family).entries[phase % k]
        if entry.kind != "multi":
            raise ValueError(f"class {phase} has no multi-point defect")
        defect = entry.defect
    l1, l2 = defect
    if l1 >= l2:
        raise ValueError("defect must satisfy l < l'")
    c = find_coprime_element(bspec, k, lambda b: (l2 - l1) % b != 0)
    small = [b for b in bspec.elements if b < c and math.gcd(b, k) == 1]
    gap = 2 * rho
    points, audit = [], []
    for i in range(1, c):
        cong = [(i, c, "hits residue i mod c")]
        cong += [(0, b, "zero coset mod smaller coprime modulus") for b in small]
        if k > 1:
            cong.append((phase % k, k, "stays in the defect's phase class"))
        x, entries = _scan_point(cong, gap, points)
        points.append(x)
        audit += entries
    pattern = FinitePattern.from_points(points)
    return _certify(family, bspec, "trans1", c, phase % k, pattern, tuple(points), (), gap, audit)


def witness_trans3(
    family: BlockCodeFamily,
    bspec: BSpec,
    phase: int,
    ell: int | None = None,
    anchor: int = 0,
) -> WitnessCertificate:
    """Reject a family translating the one-point classes `anchor` and `phase`
    by different amounts (difference `ell` != 0).

    Raises DegenerateCase when 2 is a modulus, k is even and the two classes
    have opposite parity: the pattern below would mix parities and no such
    witness exists (those translation pairs are genuine symmetries).
    """
    k, rho = family.k, family.rho
    prof = singleton_profile(family)
    if ell is None:
        ea, ep = prof.entries[anchor % k], prof.entries[phase % k]
        if ea.kind != "fixed" or ep.kind != "fixed":
            raise ValueError("both classes must act as translations")
        ell = ep.offset - ea.offset
    if ell == 0:
        raise ValueError("classes translate uniformly; nothing to witness")
    if bspec.degenerate and k % 2 == 0 and (phase - anchor) % 2 == 1:
        raise DegenerateCase("2 is a modulus and k is even: opposite-parity classes may differ")
    c = find_coprime_element(bspec, k, lambda b: b > 2 and ell % b != 0)
    small = [b for b in bspec.elements if b < c and math.gcd(b, k) == 1]
    gap = 2 * rho
    points, audit = [], []
    for i in range(1, c):
        cong = [(i, c, "hits residue i mod c")]
        cong.append((anchor % k, k, "anchor phase class"))
        cong += [(0, b, "zero coset mod smaller coprime modulus") for b in small]
        x, entries = _scan_point(cong, gap, points)
        points.append(x)
        audit += entries
    cong = [(-ell, c, "lands on the residue the others miss")]
    cong.append((phase % k, k, "defect phase class"))
    cong += [(0, b, "zero coset mod smaller coprime modulus") for b in small]
    s_prime, entries = _scan_point(cong, gap, points)
    audit += entries
    all_points = points + [s_prime]
    # moduli sharing a factor with k carry no explicit congruence; the phase
    # conditions already bound their occupied cosets by b/gcd(b,k) + 1 < b
    # (with a single parity class when b = 2), so the pattern stays admissible
    for b in bspec.elements:
        if b < c and math.gcd(b, k) > 1:
            used = len(occupied_residues(all_points, b))
            assert used < b, f"coset bound violated at modulus {b}"
    pattern = FinitePattern.from_points(all_points)
    return _certify(
        family, bspec, "trans3", c, phase % k, pattern, tuple(all_points), (), gap, audit
    )


def witness_noextra(
    family: BlockCodeFamily,
    bspec: BSpec,
    phase: int | None = None,
    windex: int | None = None,
) -> WitnessCertificate:
    """Reject a singleton-fixing family whose map at `phase` turns some
    admissible window with empty centre into an occupied one.

    The offending window's support becomes the pattern core; c-1 far-away
    points pinned to the core's residues mod every nearby modulus make the
    whole pattern admissible, while the image picks up the created point and
    covers every residue mod c.
    """
    k, rho = family.k, family.rho
    prof = singleton_profile(family)
    if not prof.all_fixed() or any(e.offset != 0 for e in prof.entries):
        raise ValueError("family must fix all one-point patterns")
    if phase is None or windex is None:
        phase, windex = _first_creating_entry(family, bspec)
    if (windex >> rho) & 1 or windex == 0:
        raise ValueError("offending window must have an empty centre and some point")
    if not family.value(phase, windex):
        raise ValueError("window is not mapped to 1 at this phase")
    core_offsets = window_offsets(windex, rho)
    ell = min(core_offsets, key=lambda x: (abs(x), x))
    c = None
    for b in bspec.elements:
        if b > 2 * rho and all(o % b != 0 for o in core_offsets):
            c = b
            break
    if c is None:
        raise NotFoundInTruncation(f"no modulus above {2 * rho} compatible with the core")
    nearby = [b for b in bspec.elements if b != c and b <= c + 2 * rho]
    gap = 2 * rho
    core = tuple(o + phase for o in core_offsets)
    points, audit = [], []
    for i in range(1, c):
        cong = [(i + phase, c, "hits residue i mod c after phase placement")]
        cong += [(ell + phase, b, "matches the chosen core point mod nearby modulus") for b in nearby]
        x, entries = _scan_point(cong, gap, points, keep_away=core, min_abs=gap)
        points.append(x)
        audit += entries
    support = tuple(sorted(core + tuple(points)))
    pattern = FinitePattern.from_points(support)
    return _certify(family, bspec, "no-extra", c, phase, pattern, tuple(points), core, gap, audit)


def _first_creating_entry(family: BlockCodeFamily, bspec: BSpec) -> tuple[int, int]:
    rho = family.rho
    for phase in range(family.k):
        for w in admissible_windows(bspec, rho):
            if w and not ((w >> rho) & 1) and family.value(phase, w):
                return phase, w
    raise ValueError("family creates no point on any admissible window")


def witness_periodic(family: BlockCodeFamily, bspec: BSpec) -> WitnessCertificate:
    """Reject a family that moves the empty pattern.

    The image of emptiness is a union of residue classes mod k, so it is
    periodic and already meets every residue class of the smallest modulus
    coprime to k inside a long enough window.
    """
    k = family.k
    bad = [c for c in range(k) if family.value(c, 0)]
    if not bad:
        raise ValueError("family fixes the empty pattern")
    c = find_coprime_element(bspec, k)
    pattern = FinitePattern((), (0, k * c))
    audit = tuple(
        AuditEntry(bad[0] + j * k, c, (bad[0] + j * k) % c, "periodic image point") for j in range(c)
    )
    return _certify(family, bspec, "periodic", c, bad[0], pattern, (), (), 2 * family.rho, list(audit))


def _certify(family, bspec, kind, c, phase, pattern, separated, core, gap, audit):
    verdict = is_admissible(pattern, bspec)
    if not verdict.admissible:
        raise NotFoundInTruncation(f"constructed pattern not admissible (modulus {verdict.modulus})")
    image = apply_to_pattern(family, pattern)
    covered = occupied_residues(image.support, c) if image.support else set()
    if covered != set(range(c)):
        # degenerate composition can shuffle the planned modulus; fall back to
        # any modulus of the truncation that the image does fully cover
        for b in bspec.elements:
            if len(occupied_residues(image.support, b)) == b:
                c = b
                covered = occupied_residues(image.support, b)
                break
        else:
            raise NotFoundInTruncation("image does not cover all residues of any modulus")
    cert = WitnessCertificate(
        kind=kind,
        modulus=c,
        phase=phase,
        pattern=pattern,
        separated=tuple(separated),
        core=tuple(core),
        gap_bound=gap,
        congruence_audit=tuple(audit),
        image_support=tuple(image.support),
        bspec_config=bspec_to_config(bspec),
    )
    if not verify_certificate(family, cert):
        raise NotFoundInTruncation("freshly built certificate failed verification")
    return cert


def verify_certificate(family: BlockCodeFamily, cert: WitnessCertificate) -> bool:
    """Re-check every claim of a certificate from scratch.

    Pattern admissibility, separation gaps, the congruence audit, membership
    of the modulus in the truncation, and full residue coverage of the
    recomputed image are verified independently of the builders.
    """
    try:
        bspec = bspec_from_config(cert.bspec_config)
    except Exception:
        return False
    if cert.kind not in KINDS:
        return False
    if cert.modulus not in bspec:
        return False
    if set(cert.separated) | set(cert.core) != set(cert.pattern.support):
        return False
    if not is_admissible(cert.pattern, bspec).admissible:
        return False
    pts = cert.separated
    for i, x in enumerate(pts):
        for y in pts[i + 1 :]:
            if abs(x - y) <= cert.gap_bound:
                return False
        if any(abs(x - y) <= cert.gap_bound for y in cert.core):
            return False
    if not all(entry.holds() for entry in cert.congruence_audit):
        return False
    image = apply_to_pattern(family, cert.pattern)
    if tuple(image.support) != cert.image_support:
        return False
    return occupied_residues(image.support, cert.modulus) == set(range(cert.modulus)) if image.support else False
