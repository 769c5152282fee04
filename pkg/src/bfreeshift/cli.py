"""Command-line front end. Data goes to stdout, logs to stderr.

Structured (json) output is byte-identical across repeated runs of the same
configuration; wall-clock timing is therefore only included on request.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .admissibility import (
    bfree_window,
    density_estimate,
    format_pattern,
    is_admissible,
    parse_pattern,
)
from .blockcodes import BlockCodeFamily
from .centralizer import (
    CollisionPair,
    reversing_elements,
    search,
    verify_collision,
    verify_h2_example,
)
from .errors import BFreeError
from .language import count_admissible_words, enumerate_admissible_words, entropy_ratio, entropy_report
from .numtheory import BSpec, bspec_from_config, bspec_from_shorthand, load_bspec
from .witnesses import (
    WitnessCertificate,
    verify_certificate,
    witness_noextra,
    witness_periodic,
    witness_trans1,
    witness_trans3,
)

CONFIG_SCHEMA = 1


def log(*args):
    print(*args, file=sys.stderr)


def emit(obj_or_text):
    if isinstance(obj_or_text, str):
        print(obj_or_text)
    else:
        print(json.dumps(obj_or_text, indent=2, sort_keys=True))


def resolve_bspec(args) -> BSpec:
    if getattr(args, "b_file", None):
        return load_bspec(args.b_file)
    if getattr(args, "b", None):
        return bspec_from_shorthand(args.b)
    raise SystemExit("need --b or --b-file")


def config_echo(args, command: str, fields: list[str]) -> dict:
    cfg = {"schema": CONFIG_SCHEMA, "command": command, "seed": args.seed, "threads": args.threads}
    for f in fields:
        cfg[f] = getattr(args, f.replace("-", "_"))
    return cfg


# ---------------------------------------------------------------------------
# subcommand handlers


def cmd_generate(args) -> int:
    bspec = resolve_bspec(args)
    lo, hi = (int(x) for x in args.range.split(":"))
    pattern = bfree_window(bspec, lo, hi)
    if args.format == "json":
        emit(
            {
                "config": config_echo(args, "generate", ["b", "b_file", "range"]),
                "support": list(pattern.support),
                "window": list(pattern.window),
                "word": str(pattern.to_word()),
            }
        )
    else:
        emit(format_pattern(pattern))
    return 0


def cmd_admissible(args) -> int:
    bspec = resolve_bspec(args)
    pattern = parse_pattern(args.pattern)
    verdict = is_admissible(pattern, bspec)
    if args.format == "json":
        emit(
            {
                "config": config_echo(args, "admissible", ["b", "b_file", "pattern"]),
                "admissible": verdict.admissible,
                "violating_modulus": verdict.modulus,
                "covered_residues": sorted(verdict.covered) if verdict.covered else None,
            }
        )
    elif verdict.admissible:
        emit("admissible")
    else:
        emit(f"not admissible: modulus {verdict.modulus} fully covered {sorted(verdict.covered)}")
    return 0


def cmd_density(args) -> int:
    bspec = resolve_bspec(args)
    est = density_estimate(bspec, args.half_width)
    if args.format == "json":
        emit(
            {
                "config": config_echo(args, "density", ["b", "b_file", "half_width"]),
                "observed": est.observed,
                "product": est.product,
                "count": est.count,
            }
        )
    else:
        emit(f"observed {est.observed:.6f}   truncated product {est.product:.6f}   ({est.count} points on [-{est.half_width},{est.half_width}])")
    return 0


def cmd_entropy(args) -> int:
    bspec = resolve_bspec(args)
    report = entropy_report(bspec, args.n_max, unit=args.unit, workers=args.threads)
    if args.format == "json":
        emit(
            {
                "config": config_echo(args, "entropy", ["b", "b_file", "n_max", "unit"]),
                "rows": [
                    {"n": n, "count": c, "estimate": e} for n, c, e in report.rows()
                ],
                "closed_form": report.closed_form,
                "density_factor": report.density_factor,
                "unit": report.unit,
                "submultiplicative": report.submultiplicative,
                "monotone": report.monotone,
            }
        )
    else:
        emit(f"{'n':>4} {'count':>12} {'estimate':>12}   [{report.unit}]")
        for n, c, e in report.rows():
            emit(f"{n:>4} {c:>12} {e:>12.6f}")
        emit(f"closed form {report.closed_form:.6f} {report.unit}  (density factor {report.density_factor:.6f})")
        emit(f"submultiplicative: {report.submultiplicative}   estimates monotone: {report.monotone}")
    return 0


def cmd_ratio(args) -> int:
    b1 = load_bspec(args.b_file) if args.b_file else bspec_from_shorthand(args.b)
    b2 = load_bspec(args.b2_file) if args.b2_file else bspec_from_shorthand(args.b2)
    r = entropy_ratio(b1, b2)
    if args.format == "json":
        emit({"config": config_echo(args, "ratio", ["b", "b_file", "b2", "b2_file"]), "ratio": r})
    else:
        emit(f"{r:.6f}")
    return 0


def cmd_words(args) -> int:
    bspec = resolve_bspec(args)
    count = count_admissible_words(bspec, args.n, workers=args.threads)
    listing = None
    if args.list:
        listing = [
            "".join(str((w >> i) & 1) for i in range(args.n))
            for w in enumerate_admissible_words(bspec, args.n)
        ]
    if args.format == "json":
        out = {"config": config_echo(args, "words", ["b", "b_file", "n", "list"]), "count": count}
        if listing is not None:
            out["words"] = listing
        emit(out)
    else:
        emit(f"|L_{args.n}| = {count}")
        if listing is not None:
            for w in listing:
                emit(w)
    return 0


def cmd_search(args) -> int:
    bspec = resolve_bspec(args)
    report = search(
        bspec,
        args.rho,
        args.k,
        args.n,
        samples_per_reason=args.samples,
        seed=args.seed,
    )
    log(
        f"search rho={args.rho} k={args.k} n={args.n}: "
        f"{len(report.survivors)} survivors, {report.rejected_total()} rejected, "
        f"{report.unresolved_total()} unresolved, {report.wall_time_ms:.1f} ms"
    )
    if args.certs_dir:
        os.makedirs(args.certs_dir, exist_ok=True)
        manifest = []
        for i, sample in enumerate(report.all_samples()):
            name = f"sample_{i:04d}.json"
            record = sample.to_json_dict()
            record["bspec"] = report.bspec_config  # bundles stay self-contained
            with open(os.path.join(args.certs_dir, name), "w") as fh:
                json.dump(record, fh, indent=2, sort_keys=True)
                fh.write("\n")
            manifest.append(name)
        with open(os.path.join(args.certs_dir, "manifest.json"), "w") as fh:
            json.dump({"schema": 1, "samples": manifest}, fh, indent=2, sort_keys=True)
            fh.write("\n")
        log(f"wrote {len(manifest)} evidence files to {args.certs_dir}")
    if args.format == "json":
        out = report.to_json_dict(include_timing=args.timing)
        out["config"] = config_echo(args, "search", ["b", "b_file", "rho", "k", "n", "samples"])
        emit(out)
    else:
        emit(f"total candidates: {report.total_candidates}")
        emit("survivors:")
        for s in report.survivors:
            emit(f"  {s.to_json_dict()['classification']}")
        emit("rejections:")
        for reason, bucket in sorted(report.rejections.items()):
            emit(f"  {reason:32s} {bucket.count:>16}  [{bucket.decided_by}]")
        emit(f"unresolved: {report.unresolved_total()}")
        if args.timing:
            emit(f"wall time: {report.wall_time_ms:.1f} ms")
    return 2 if report.unresolved else 0


def _verify_bundle(args) -> int:
    paths = []
    if args.bundle:
        with open(os.path.join(args.bundle, "manifest.json")) as fh:
            manifest = json.load(fh)
        paths = [os.path.join(args.bundle, name) for name in manifest["samples"]]
    if args.cert:
        paths.append(args.cert)
    failures = 0
    for path in paths:
        with open(path) as fh:
            data = json.load(fh)
        if "certificate" in data:
            fam = BlockCodeFamily.from_json_dict(data.get("normalized_family") or data["family"])
            cert = WitnessCertificate.from_json_dict(data["certificate"])
            ok = verify_certificate(fam, cert)
        else:
            fam = BlockCodeFamily.from_json_dict(data["family"])
            pair = CollisionPair.from_json_dict(data["collision"])
            bspec = bspec_from_config(data["bspec"]) if "bspec" in data else resolve_bspec(args)
            ok = verify_collision(fam, pair, bspec)
        log(f"{'ok  ' if ok else 'FAIL'} {path}")
        failures += not ok
    emit({"checked": len(paths), "failures": failures})
    return 1 if failures else 0


def cmd_witness(args) -> int:
    if args.verify:
        return _verify_bundle(args)
    bspec = resolve_bspec(args)
    with open(args.family) as fh:
        family = BlockCodeFamily.from_json_dict(json.load(fh))
    if args.kind == "trans1":
        cert = witness_trans1(family, bspec, args.phase)
    elif args.kind == "trans3":
        cert = witness_trans3(family, bspec, args.phase, ell=args.ell, anchor=args.anchor)
    elif args.kind == "no-extra":
        cert = witness_noextra(family, bspec)
    elif args.kind == "periodic":
        cert = witness_periodic(family, bspec)
    else:
        raise SystemExit(f"unknown witness kind {args.kind!r}")
    ok = verify_certificate(family, cert)
    record = {
        "config": config_echo(args, "witness", ["b", "b_file", "family", "kind", "phase"]),
        "family": family.to_json_dict(),
        "certificate": cert.to_json_dict(),
        "verified": ok,
    }
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(record, fh, indent=2, sort_keys=True)
            fh.write("\n")
        log(f"wrote certificate to {args.out} (verified={ok})")
    else:
        emit(record)
    return 0 if ok else 1


def cmd_h2(args) -> int:
    bspec = resolve_bspec(args)
    report = verify_h2_example(bspec, args.t, args.n)
    if args.format == "json":
        out = report.to_json_dict()
        out["config"] = config_echo(args, "h2", ["b", "b_file", "t", "n"])
        emit(out)
    else:
        emit(f"commutes with square of shift: {report.commutes_with_square}")
        emit(f"counterexample against the shift itself: {report.shift_counterexample}")
        emit(f"shift-then-map exchanges parity classes: {report.exchanges_parity_classes}")
    return 0


def cmd_reverse(args) -> int:
    bspec = resolve_bspec(args)
    elements = reversing_elements(bspec, args.rho, args.k, args.n)
    if args.format == "json":
        emit(
            {
                "config": config_echo(args, "reverse", ["b", "b_file", "rho", "k", "n"]),
                "elements": [e.to_json_dict() for e in elements],
            }
        )
    else:
        for e in elements:
            emit(f"{e.describe():40s} conjugation verified: {e.conjugation_verified}")
    return 0 if all(e.conjugation_verified for e in elements) else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bfreeshift",
        description="Sieved integer sets, admissible patterns, entropy, and "
        "certified symmetry search for hereditary {0,1} subshifts.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--config", help="JSON file with a saved run configuration")
    sub = parser.add_subparsers(dest="command")

    def common(p, with_b=True):
        if with_b:
            p.add_argument("--b", help="modulus shorthand: primes-sq | primes-4th | primes-pow:E[:P] | 4,9,25,49")
            p.add_argument("--b-file", help="modulus config file (JSON)")
        p.add_argument("--format", choices=["table", "json"], default="table")
        p.add_argument("--seed", type=int, default=20240801)
        p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("generate", help="sieve a window of the modulus-free set")
    common(p)
    p.add_argument("--range", required=True, help="lo:hi closed interval")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("admissible", help="test a pattern for admissibility")
    common(p)
    p.add_argument("--pattern", required=True, help="{1,2,3} or 0110@0")
    p.set_defaults(func=cmd_admissible)

    p = sub.add_parser("density", help="observed density vs the truncated product")
    common(p)
    p.add_argument("--half-width", type=int, required=True)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("entropy", help="word counts and entropy estimates")
    common(p)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--unit", choices=["nats", "bits"], default="nats")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("ratio", help="ratio of closed-form entropies of two truncations")
    common(p)
    p.add_argument("--b2", help="second modulus shorthand")
    p.add_argument("--b2-file", help="second modulus config file")
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("words", help="count (or list) admissible words of one length")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_words)

    p = sub.add_parser("search", help="staged symmetry search over code families")
    common(p)
    p.add_argument("--rho", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=3, help="evidence samples kept per rejection reason")
    p.add_argument("--certs-dir", help="write sample evidence files here")
    p.add_argument("--timing", action="store_true", help="include wall time in json output")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("witness", help="build or re-check coset witness certificates")
    common(p)
    p.add_argument("--family", help="family file (JSON)")
    p.add_argument("--kind", choices=["trans1", "trans3", "no-extra", "periodic"])
    p.add_argument("--phase", type=int, default=0)
    p.add_argument("--ell", type=int, default=None)
    p.add_argument("--anchor", type=int, default=0)
    p.add_argument("--out", help="write the certificate to this file")
    p.add_argument("--verify", action="store_true", help="re-check existing certificates")
    p.add_argument("--bundle", help="bundle directory to verify")
    p.add_argument("--cert", help="single evidence file to verify")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("h2", help="exercise the even/odd translation pair (needs modulus 2)")
    common(p)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_h2)

    p = sub.add_parser("reverse", help="reflection-composed symmetries from a search")
    common(p)
    p.add_argument("--rho", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_reverse)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        with open(args.config) as fh:
            saved = json.load(fh)
        if saved.get("schema", 1) != CONFIG_SCHEMA:
            raise SystemExit(f"unsupported config schema {saved.get('schema')!r}")
        argv2 = [saved["command"]]
        for key, val in saved.items():
            if key in ("schema", "command") or val in (None, False):
                continue
            flag = "--" + key.replace("_", "-")
            if val is True:
                argv2.append(flag)
            else:
                argv2 += [flag, str(val)]
        args = parser.parse_args(argv2)
    if not getattr(args, "command", None):
        parser.print_help()
        return 0
    try:
        return args.func(args)
    except BFreeError as exc:
        log(f"error: {type(exc).__name__}: {exc}")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
