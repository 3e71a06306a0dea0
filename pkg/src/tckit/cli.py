"""Command-line front end.

Exit codes: 0 ok, 1 check failure, 2 bad input, 3 missing non-CM assertion,
4 resource ceiling, 64 usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib import resources

from . import conductor, corpus, curve, image, intmath, lemmas
from .config import DEFAULT_POINT_CEILING, DEFAULT_PRIME_LIMIT
from .errors import (
    BadReduction,
    BudgetExceeded,
    CeilingExceeded,
    CMCurveError,
    CorpusFormatError,
    SingularModel,
    SizeExceeded,
)
from .gl2 import occ_search

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_ASSERT, EXIT_CEILING, EXIT_USAGE = 0, 1, 2, 3, 4, 64

SUITE_CHOICES = ("all",) + tuple(lemmas.SUITES)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _alpha_override(text: str) -> tuple[int, int]:
    p, sep, k = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError("expected P=K")
    return int(p), int(k)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tckit", description="Torsion conductor bounds for elliptic curves over Q.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    curves = _Parser(add_help=False)
    src = curves.add_mutually_exclusive_group(required=True)
    src.add_argument("--curve", help="coefficients a1,a2,a3,a4,a6")
    src.add_argument("--corpus", help="corpus file, one label:a1,a2,a3,a4,a6 per line")
    src.add_argument("--builtin", choices=["semistable"], help="bundled corpus")
    curves.add_argument("--label", default=None, help="label for --curve")
    curves.add_argument("--non-cm", action="store_true", help="assert that every curve is non-CM")
    curves.add_argument("--conductor", type=int, default=None, help="conductor N for --curve")
    curves.add_argument("--jobs", type=int, default=1)
    curves.add_argument("--ceiling", type=int, default=DEFAULT_POINT_CEILING)

    sub.add_parser("curve-info", parents=[curves], help="invariants and reduction data")
    ap = sub.add_parser("ap", parents=[curves], help="Frobenius traces")
    ap.add_argument("--limit", type=int, required=True)
    im = sub.add_parser("image", parents=[curves], help="classify the mod-ell image")
    im.add_argument("--ell", type=int, required=True, choices=image.CHECKABLE)
    im.add_argument("--prime-limit", type=int, default=DEFAULT_PRIME_LIMIT)
    ex = sub.add_parser("exceptional-set", parents=[curves], help="the exceptional prime set S")
    ex.add_argument("--prime-limit", type=int, default=DEFAULT_PRIME_LIMIT)
    cb = sub.add_parser("conductor-bound", parents=[curves], help="n_E and its bound checks")
    cb.add_argument("--prime-limit", type=int, default=DEFAULT_PRIME_LIMIT)
    cb.add_argument("--alpha-override", type=_alpha_override, action="append", default=[])
    cb.add_argument("--cq", type=int, default=None, help="C_Q for the conditional m_E bound")

    ver = sub.add_parser("verify", help="run lemma checks")
    ver.add_argument("suite", choices=SUITE_CHOICES)
    ver.add_argument("--seed", type=int, default=0)
    occ = sub.add_parser("occ", help="sampled simple sections of GL2(Z/MZ)")
    occ.add_argument("--modulus", type=int, required=True)
    occ.add_argument("--budget", type=int, default=200)
    occ.add_argument("--seed", type=int, default=0)
    return parser


def _records(args) -> list[corpus.CurveRecord]:
    if args.curve is not None:
        rec = corpus.CurveRecord(args.label or args.curve, corpus.parse_ainvs(args.curve))
        rec.conductor = args.conductor
        records = [rec]
    elif args.corpus is not None:
        records = corpus.read_corpus(args.corpus)
    else:
        text = resources.files("tckit.data").joinpath(f"{args.builtin}.txt").read_text("ascii")
        records = corpus.parse_corpus(text)
    if args.non_cm:
        for rec in records:
            if rec.non_cm is None:
                rec.non_cm = True
    return records


# -- per-curve commands ----------------------------------------------------------


def curve_info(rec: corpus.CurveRecord, opts: dict) -> dict:
    E = rec.curve()
    bad = curve.bad_primes(E)
    semistable = curve.is_semistable(E)
    N = rec.conductor
    if N is None and semistable:
        N = curve.semistable_conductor(E)
    return {
        "label": rec.label,
        "ainvs": list(E.ainvs),
        "b2": E.b2,
        "b4": E.b4,
        "b6": E.b6,
        "b8": E.b8,
        "c4": str(E.c4),
        "c6": str(E.c6),
        "disc": str(E.disc),
        "rad_disc": str(intmath.radical(abs(E.disc))),
        "sqfree_disc": str(intmath.sqfree_part(abs(E.disc))),
        "reduction": {str(p): curve.reduction_type(E, p).value for p in bad},
        "semistable": semistable,
        "conductor": None if N is None else str(N),
    }


def ap_list(rec, opts) -> dict:
    E = rec.curve()
    samples = curve.frobenius_samples(E, opts["limit"], opts["ceiling"])
    return {"label": rec.label, "limit": opts["limit"], "ap": [[s.p, s.ap] for s in samples]}


def image_class(rec, opts) -> dict:
    E = rec.curve()
    im = image.classify_mod_ell(E, opts["ell"], opts["prime_limit"], opts["ceiling"])
    out = {"label": rec.label, "image": im.to_json()}
    if im.is_full and im.basis == "signature":
        out["certificate_revalidated"] = image.revalidate(E, im, opts["ceiling"])
    return out


def exceptional(rec, opts) -> dict:
    E = rec.curve()
    exc = image.exceptional_set(E, bool(rec.non_cm), opts["prime_limit"], opts["ceiling"])
    return {
        "label": rec.label,
        "S": exc.primes,
        "nonfull": exc.nonfull,
        "semistable": exc.semistable,
        "conditional": bool(exc.conditional_reasons),
        "conditional_reasons": exc.conditional_reasons,
        "images": {str(ell): im.to_json() for ell, im in exc.images.items()},
    }


def conductor_bound(rec, opts) -> dict:
    E = rec.curve()
    overrides = dict(rec.alpha_overrides)
    overrides.update(opts.get("alpha_overrides", {}))
    report = conductor.compute_nE(
        E,
        bool(rec.non_cm),
        opts["prime_limit"],
        overrides,
        rec.conductor,
        opts["ceiling"],
        rec.label,
    )
    out = report.to_json()
    if report.semistable:
        holds, lhs, rhs = conductor.check_nE_bound(report)
        out["bound_check"] = {"holds": holds, "n_E": str(lhs), "rhs": str(rhs)}
    if opts.get("cq") is not None:
        if report.conductor is None:
            raise ValueError("the conditional bound needs a conductor (N=... or --conductor)")
        out["conditional_bound"] = {
            "C_Q": opts["cq"],
            "B_E": conductor.B_E(report.conductor, report.disc),
            "value": str(conductor.conditional_mE_bound(report.conductor, report.disc, opts["cq"])),
        }
    return out


CURVE_COMMANDS = {
    "curve-info": curve_info,
    "ap": ap_list,
    "image": image_class,
    "exceptional-set": exceptional,
    "conductor-bound": conductor_bound,
}


def _run_one(job):
    command, rec, opts = job
    return CURVE_COMMANDS[command](rec, opts)


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _curve_command(args) -> int:
    records = _records(args)
    opts = {"ceiling": args.ceiling}
    for key in ("limit", "ell", "prime_limit", "cq"):
        if hasattr(args, key):
            opts[key] = getattr(args, key)
    if getattr(args, "alpha_override", None):
        opts["alpha_overrides"] = dict(args.alpha_override)
    jobs = [(args.command, rec, opts) for rec in records]
    if args.command in ("exceptional-set", "conductor-bound"):
        missing = [rec.label for rec in records if not rec.non_cm]
        if missing:
            raise CMCurveError(f"non-CM assertion missing for: {', '.join(missing)}")
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(job) for job in jobs]
    if args.curve is not None:
        payload = dict(results[0])
    else:
        payload = {"results": results}
    payload["schema"] = conductor.SCHEMA
    payload["command"] = args.command
    _emit(payload)
    return EXIT_OK


def _verify(args) -> int:
    outcomes = lemmas.run_suite(args.suite, args.seed)
    ok = all(o.ok for o in outcomes)
    _emit(
        {
            "schema": conductor.SCHEMA,
            "command": "verify",
            "suite": args.suite,
            "seed": args.seed,
            "ok": ok,
            "checks": [o.to_json() for o in outcomes],
        }
    )
    return EXIT_OK if ok else EXIT_CHECK


def _occ(args) -> int:
    if args.modulus < 1:
        raise ValueError("modulus must be >= 1")
    found = occ_search(args.modulus, budget=args.budget, seed=args.seed)
    expected = lemmas.occ_formula(args.modulus)
    _emit(
        {
            "schema": conductor.SCHEMA,
            "command": "occ",
            "modulus": args.modulus,
            "budget": args.budget,
            "seed": args.seed,
            "found": sorted(map(str, found)),
            "predicted": sorted(map(str, expected)),
            "sound": found <= expected,
        }
    )
    return EXIT_OK if found <= expected else EXIT_CHECK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return _verify(args)
        if args.command == "occ":
            return _occ(args)
        return _curve_command(args)
    except CMCurveError as exc:
        print(f"tckit: {exc}", file=sys.stderr)
        return EXIT_ASSERT
    except (BudgetExceeded, CeilingExceeded, SizeExceeded) as exc:
        print(f"tckit: {exc}", file=sys.stderr)
        return EXIT_CEILING
    except (SingularModel, CorpusFormatError, BadReduction, ValueError, OSError) as exc:
        print(f"tckit: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
