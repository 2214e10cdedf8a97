"""Command-line entry point: ``uclab <subcommand>``.

Exit codes: 0 success, 1 verification failed, 2 input error, 3 size guard.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import analytic
from .clauses import ClauseFamily
from .constructions import (
    CSV_HEADER,
    ConstructionSpec,
    abundance_inequality,
    approx_uc_experiment,
)
from .entropy import (
    entropy_gain_scan,
    gilmer_certificate,
    uniform_distribution,
    union_distribution,
)
from .enumerate import enumerate_union_closed
from .errors import DomainError, ParseError, ResourceError
from .family import (
    SetFamily,
    abundant_elements,
    blocks,
    elements_of,
    frequency_profile,
    is_union_closed,
    parse_family,
    serialize_family,
)

log = logging.getLogger("uclab")

DEFAULT_SEED = 1979
DEFAULT_TOLERANCE = 1e-9
EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3
MAX_PRINTED_ATOMS = 64


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    inputs: tuple[str, ...] = ()
    output_format: str = "text"
    seed: int = DEFAULT_SEED
    tolerance: float = DEFAULT_TOLERANCE
    verbosity: int = 0


def num(x: float) -> str:
    return f"{x:.12g}"


def num_f(x: float) -> float:
    return float(num(x))


def brace(bits: int) -> str:
    return "{" + ",".join(map(str, elements_of(bits))) + "}"


def emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=False))


def read_family(path: str) -> SetFamily:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_family(text)


# -- subcommands --------------------------------------------------------------------


def cmd_analyze(args, cfg: RunConfig) -> int:
    F = read_family(args.file)
    prof = frequency_profile(F)
    part = blocks(F)
    closed = is_union_closed(F)
    report = gilmer_certificate(F) if len(F) >= 2 else None
    atoms = None
    if len(F) ** 2 <= 10**6:
        u = uniform_distribution(F)
        atoms = list(union_distribution(u, u).items())

    if cfg.output_format == "json":
        emit(
            {
                "family": {"n": F.n, "size": len(F)},
                "union_closed": closed,
                "counts": {str(i): c for i, c in prof.counts.items()},
                "max_fraction_num": prof.max_fraction.numerator,
                "max_fraction_den": prof.max_fraction.denominator,
                "abundant": sorted(prof.abundant()),
                "blocks": [list(b) for b in part.blocks],
                "absent": list(part.absent),
                "certificate": report.to_dict() if report else None,
                # Full double precision with rounding-error bounds; the
                # certificate block above is rounded to 12 significant digits.
                "entropy": None
                if report is None
                else {
                    "h_a": report.h_a.bits,
                    "h_a_error": report.h_a.error,
                    "h_aub": report.h_aub.bits,
                    "h_aub_error": report.h_aub.error,
                },
                "union_distribution": None
                if atoms is None or len(atoms) > MAX_PRINTED_ATOMS
                else [
                    {"set": list(elements_of(b)), "num": p.numerator, "den": p.denominator}
                    for b, p in atoms
                ],
            }
        )
        return EXIT_OK

    print(f"family: n={F.n} size={len(F)}")
    print(f"union-closed: {str(closed).lower()}")
    print("counts: " + " ".join(f"{i}:{c}" for i, c in prof.counts.items()))
    print(f"max fraction: {prof.max_fraction} ({num(float(prof.max_fraction))})")
    print("abundant: " + brace(sum(1 << (i - 1) for i in prof.abundant())))
    print("blocks: " + " ".join("{" + ",".join(map(str, b)) + "}" for b in part.blocks))
    if part.absent:
        print("never-appearing: {" + ",".join(map(str, part.absent)) + "}")
    if report is None:
        print("certificate: not applicable (needs |F| >= 2)")
    else:
        print("certificate:")
        print(f"  H(A)     = {num(report.h_a.bits)}")
        print(f"  H(AuB)   = {num(report.h_aub.bits)}")
        print(f"  log2|F|  = {num(report.h_a.bits)}")
        print(f"  verdict  = {report.verdict.value}")
    if atoms is not None and len(atoms) <= MAX_PRINTED_ATOMS:
        print("union distribution: " + " ".join(f"{brace(b)}:{p}" for b, p in atoms))
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    if not cfg.tolerance > 0:
        raise DomainError("tolerance must be positive")
    if args.target == "psi-table":
        rows = [(k, analytic.psi_k(k, min(cfg.tolerance, 1e-12))) for k in range(1, args.kmax + 1)]
        if cfg.output_format == "json":
            emit({"psi_k": [{"k": k, "psi": num_f(v)} for k, v in rows]})
        else:
            print("k psi_k")
            for k, v in rows:
                print(f"{k} {num(v)}")
        return EXIT_OK

    cert = analytic.certify(args.target, cfg.tolerance)
    if args.output:
        Path(args.output).write_text(cert.serialize())
    summary = {
        "target": cert.target,
        "expression": analytic.TARGETS[cert.target].expression,
        "domain": [cert.domain.lo, cert.domain.hi],
        "tolerance": cert.tolerance,
        "pieces": len(cert.pieces),
        "methods": cert.method_counts(),
        "status": cert.status.value,
        "witness": None if cert.witness is None else [cert.witness.lo, cert.witness.hi],
    }
    if cfg.output_format == "json":
        emit(summary)
    else:
        print(f"target: {cert.target} ({summary['expression']} >= 0)")
        print(f"domain: [{num(cert.domain.lo)}, {num(cert.domain.hi)}]")
        print(f"pieces: {len(cert.pieces)} " + " ".join(f"{m}={c}" for m, c in summary["methods"].items()))
        line = f"status: {cert.status.value}"
        if cert.witness is not None:
            line += f" witness=[{cert.witness.lo!r}, {cert.witness.hi!r}]"
        print(line)
    return EXIT_OK if cert.proved else EXIT_FAILED


def cmd_replay(args, cfg: RunConfig) -> int:
    try:
        text = Path(args.file).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {args.file}: {exc.strerror}") from None
    result = analytic.replay_certificate(text)
    if cfg.output_format == "json":
        emit({"ok": result.ok, "pieces_checked": result.pieces_checked, "problems": result.problems})
    else:
        print(f"replay: {'ok' if result.ok else 'FAILED'} ({result.pieces_checked} pieces re-verified)")
        for p in result.problems:
            print(f"  {p}")
    return EXIT_OK if result.ok else EXIT_FAILED


_KIND_ALIASES = {
    "fm": "Fm",
    "binomial-at-most": "BinomialAtMost",
    "binomial-at-least": "BinomialAtLeast",
    "binomial-exact": "BinomialExact",
    "s12-4": "S12_4",
    "s12_4": "S12_4",
    "snk": "Snk",
}


def cmd_construct(args, cfg: RunConfig) -> int:
    kind = _KIND_ALIASES.get(args.kind.lower(), args.kind)
    params = {k: getattr(args, k) for k in ("m", "n", "k") if getattr(args, k) is not None}
    spec = ConstructionSpec(kind, params)
    try:
        F = spec.build()
    except KeyError as exc:
        raise DomainError(f"construction {kind} needs --{exc.args[0]}") from None
    if args.output:
        explicit = F.materialize() if isinstance(F, ClauseFamily) else F
        Path(args.output).write_text(serialize_family(explicit))
    size = F.size if isinstance(F, ClauseFamily) else len(F)
    closed = is_union_closed(F)
    abundant = sorted(abundant_elements(F))
    ineq = None
    if kind == "S12_4":
        ineq = abundance_inequality(12, 4)
    elif kind == "Snk":
        ineq = abundance_inequality(params["n"], params["k"])

    if cfg.output_format == "json":
        out = {"kind": kind, "params": params, "n": F.n, "size": size, "union_closed": closed, "abundant": abundant}
        if ineq is not None:
            out["abundance_inequality"] = {"lhs": ineq.lhs, "rhs": ineq.rhs, "holds": ineq.holds}
        if args.output:
            out["output"] = args.output
        emit(out)
    else:
        print(f"construction: {kind} {' '.join(f'{k}={v}' for k, v in params.items())}".rstrip())
        print(f"ground set: [{F.n}]")
        print(f"size: {size}")
        print(f"union-closed: {str(closed).lower()}")
        print("abundant: {" + ",".join(map(str, abundant)) + "}")
        if ineq is not None:
            print(f"abundance inequality: {ineq}")
        if args.output:
            print(f"written: {args.output}")
    return EXIT_OK


def cmd_enumerate(args, cfg: RunConfig) -> int:
    report = enumerate_union_closed(args.n, brute_force=args.brute_force)
    if args.emit_worst:
        Path(args.emit_worst).write_text(serialize_family(report.worst_family))
    emit(report.to_dict())
    return EXIT_OK


def cmd_approx_uc(args, cfg: RunConfig) -> int:
    res = approx_uc_experiment(args.n, args.k, args.trials, cfg.seed)
    if cfg.output_format == "json":
        emit(
            {
                "n": res.n,
                "k_draws": res.k_draws,
                "trials": res.trials,
                "seed": res.seed,
                "slice_size": res.slice_size,
                "threshold": res.threshold,
                "p_hat": res.p_hat,
                "log_gap": num_f(res.log_gap),
            }
        )
    else:
        if args.header:
            print(CSV_HEADER)
        print(res.csv_row())
    return EXIT_OK


def _parse_deltas(text: str | None):
    if text is None:
        return None
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise DomainError(f"--deltas must be comma-separated numbers, got {text!r}") from None


def cmd_entropy_gain(args, cfg: RunConfig) -> int:
    F = read_family(args.file)
    scan = entropy_gain_scan(F, _parse_deltas(args.deltas))
    if cfg.output_format == "json":
        emit(
            {
                "rows": [{"delta": d, "gain": num_f(g), "error": e} for d, g, e in scan.rows],
                "best_delta": scan.best_delta,
                "best_gain": num_f(scan.best_gain),
            }
        )
    elif cfg.output_format == "csv":
        print("delta,gain")
        for d, g, _ in scan.rows:
            print(f"{d!r},{num(g)}")
    else:
        print("delta gain")
        for d, g, _ in scan.rows:
            print(f"{num(d)} {num(g)}")
        print(f"best: delta={num(scan.best_delta)} gain={num(scan.best_gain)}")
    return EXIT_OK


# -- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uclab", description="Union-closed family analysis toolkit")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p, choices=("text", "json")):
        p.add_argument("--format", choices=choices, default=choices[0])

    p = sub.add_parser("analyze", help="closure, frequencies, blocks and entropy certificate of a .ucf file")
    p.add_argument("file")
    fmt(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="rigorous certificate for an analytic inequality, or the psi_k table")
    p.add_argument("target", choices=("key-lemma", "gilmer-refinement", "psi-table"))
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p.add_argument("--kmax", type=int, default=6)
    p.add_argument("-o", "--output", help="write the full certificate text here")
    fmt(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("replay", help="independently re-check a saved certificate")
    p.add_argument("file")
    fmt(p)
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("construct", help="build a named family")
    p.add_argument("kind", help="fm | binomial-at-most | binomial-at-least | binomial-exact | s12-4 | snk")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("-o", "--output")
    fmt(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("enumerate", help="exhaustive union-closed check on [n], n <= 4")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--emit-worst", metavar="PATH")
    p.add_argument("--brute-force", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("approx-uc", help="Monte Carlo sharpness experiment")
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--header", action="store_true")
    fmt(p, ("csv", "json"))
    p.set_defaults(func=cmd_approx_uc)

    p = sub.add_parser("entropy-gain", help="entropy of the perturbed mixture over a delta grid")
    p.add_argument("file")
    p.add_argument("--deltas", help="comma-separated; default 2^-1 .. 2^-20")
    fmt(p, ("text", "json", "csv"))
    p.set_defaults(func=cmd_entropy_gain)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(message)s")
    cfg = RunConfig(
        subcommand=args.command,
        inputs=tuple(v for v in (getattr(args, "file", None),) if v),
        output_format=getattr(args, "format", "json"),
        seed=getattr(args, "seed", DEFAULT_SEED),
        tolerance=getattr(args, "tolerance", DEFAULT_TOLERANCE),
        verbosity=args.verbose,
    )
    log.info("running %s", cfg)
    try:
        return args.func(args, cfg)
    except (ParseError, DomainError) as exc:
        print(f"uclab: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceError as exc:
        print(f"uclab: resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
