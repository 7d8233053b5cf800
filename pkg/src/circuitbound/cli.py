"""Command-line front end.

Subcommands: analyze (structure and bounds, no counting), count (oracle
only), verify (bounds plus count plus verdict), family (emit a built-in
instance), fuzz (seeded random instances through verify).  Exit codes:
0 success, 1 a verify/fuzz verdict reported a violation, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import Pool

from .bounds import BoundReport, assemble_report
from .circuit import CircuitProfile, circuit_profile, exponent_config
from .errors import (
    DimensionError,
    GenerationError,
    ParseError,
    PreconditionError,
    ZeroPolynomialError,
)
from .forge import Instance, family_prs, family_prs_modified, random_instance
from .gale import GaleSystem, coefficient_matrix, gale_dual, ordering, s_alpha
from .oracle import CountResult, count_positive_solutions

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2

INPUT_ERRORS = (
    ParseError,
    PreconditionError,
    DimensionError,
    ZeroPolynomialError,
    GenerationError,
    OSError,
)


# ---------------------------------------------------------------------------
# Instance file format


def fraction_str(x: Fraction) -> str:
    """Lowest-terms serialization, sign on the numerator; "p" when q = 1."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ParseError(
            f"{where}: float literals are not exact; write the value as a string "
            f'like "1/3" or "-0.25"'
        )
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"{where}: cannot parse rational {value!r} ({exc})") from None
    raise ParseError(f"{where}: expected a rational, got {type(value).__name__}")


def parse_instance(text: str) -> Instance:
    """Parse the JSON instance document; exact rationals, exact dimensions."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")
    if not isinstance(doc, dict):
        raise ParseError("instance document must be a JSON object")
    for key in ("n", "exponents", "coefficients"):
        if key not in doc:
            raise ParseError(f"missing required field {key!r}")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(f"n: expected a positive integer, got {n!r}")
    exps = doc["exponents"]
    if not isinstance(exps, list) or len(exps) != n + 2:
        raise ParseError(f"exponents: expected {n + 2} vectors, got {len(exps) if isinstance(exps, list) else type(exps).__name__}")
    points = []
    for idx, vec in enumerate(exps):
        if not isinstance(vec, list) or len(vec) != n:
            raise ParseError(f"exponents[{idx}]: expected {n} integers")
        for t, v in enumerate(vec):
            if not isinstance(v, int) or isinstance(v, bool):
                raise ParseError(f"exponents[{idx}][{t}]: expected an integer, got {v!r}")
        points.append(tuple(vec))
    coeffs = doc["coefficients"]
    if not isinstance(coeffs, list) or len(coeffs) != n:
        raise ParseError(f"coefficients: expected {n} rows")
    rows = []
    for i, row in enumerate(coeffs):
        if not isinstance(row, list) or len(row) != n + 2:
            got = len(row) if isinstance(row, list) else type(row).__name__
            raise ParseError(f"coefficients[{i}]: expected {n + 2} entries, got {got}")
        rows.append([parse_rational(v, f"coefficients[{i}][{j}]") for j, v in enumerate(row)])
    try:
        config = exponent_config(points)
        C = coefficient_matrix(rows)
    except (PreconditionError, DimensionError) as exc:
        raise ParseError(f"instance violates rank conditions: {exc}") from None
    return Instance(
        config=config,
        C=C,
        label=str(doc.get("label", "instance")),
        provenance=str(doc.get("provenance", "file")),
    )


def instance_to_dict(inst: Instance) -> dict:
    return {
        "n": inst.config.n,
        "exponents": [list(p) for p in inst.config.points],
        "coefficients": [
            [fraction_str(x) for x in row] for row in inst.C.mat.data
        ],
        "label": inst.label,
        "provenance": inst.provenance,
    }


def serialize_instance(inst: Instance) -> str:
    doc = instance_to_dict(inst)
    exps = ",\n    ".join(json.dumps(v) for v in doc["exponents"])
    rows = ",\n    ".join(json.dumps(r) for r in doc["coefficients"])
    return (
        "{\n"
        f'  "n": {doc["n"]},\n'
        f'  "exponents": [\n    {exps}\n  ],\n'
        f'  "coefficients": [\n    {rows}\n  ],\n'
        f'  "label": {json.dumps(doc["label"])},\n'
        f'  "provenance": {json.dumps(doc["provenance"])}\n'
        "}\n"
    )


# ---------------------------------------------------------------------------
# Reports


@dataclass(frozen=True)
class RunReport:
    label: str
    n: int
    profile: CircuitProfile
    halfspace_ok: bool
    gale: GaleSystem | None
    bar_lambda: tuple[int, ...] | None
    sgnvar: int | None
    bounds: BoundReport | None
    count: CountResult | None
    verdict: str  # "ok" | "violation" | "not_applicable"
    timing_ms: float


def _verdict(bounds: BoundReport | None, count: CountResult | None) -> str:
    if count is None or bounds is None:
        # analyze-only reports, or the halfplane short-circuit: nothing to violate
        return "ok" if count is not None or bounds is not None else "not_applicable"
    if count.kind == "infinite":
        return "not_applicable"
    if count.kind == "no_positive_solutions":
        return "ok"
    c = count.with_multiplicity
    if c > bounds.combined or c > bounds.k_minus_1 or c > bounds.signature_bound:
        return "violation"
    if bounds.parity.applies and (bounds.sgnvar_bound - c) % 2 != 0:
        return "violation"
    return "ok"


def build_report(inst: Instance, with_bounds: bool = True, with_count: bool = True) -> RunReport:
    start = time.perf_counter()
    profile = circuit_profile(inst.config)
    g = gale_dual(inst.C)
    bar = sgn = None
    bounds = None
    ordered = None
    if g.halfspace_ok:
        ordered = ordering(g)
        seq = s_alpha(ordered, profile)
        bar, sgn = seq.bar_lambda, seq.sgnvar
        if with_bounds:
            bounds = assemble_report(profile, ordered, seq)
    count = None
    if with_count:
        count = count_positive_solutions(inst.config, inst.C)
    verdict = _verdict(bounds, count) if (with_bounds and with_count) else "not_applicable"
    elapsed = (time.perf_counter() - start) * 1000.0
    return RunReport(
        label=inst.label,
        n=inst.config.n,
        profile=profile,
        halfspace_ok=g.halfspace_ok,
        gale=ordered if ordered is not None else g,
        bar_lambda=bar,
        sgnvar=sgn,
        bounds=bounds,
        count=count,
        verdict=verdict,
        timing_ms=elapsed,
    )


def report_to_dict(rep: RunReport) -> dict:
    profile = rep.profile
    out = {
        "label": rep.label,
        "n": rep.n,
        "profile": {
            "lambda": list(profile.lam),
            "lambda_primitive": list(profile.lam_primitive),
            "index": profile.index,
            "signature": [profile.a_plus, profile.a_minus],
            "sigma": profile.sigma,
            "vol_z": profile.vol_z,
            "vol_za": profile.vol_za,
            "is_circuit": profile.is_circuit,
            "zero_support": list(profile.zero_support),
            "has_cayley": profile.has_cayley,
        },
        "halfspace_ok": rep.halfspace_ok,
        "verdict": rep.verdict,
        "timing_ms": rep.timing_ms,
    }
    if rep.gale is not None and rep.gale.is_ordered:
        out["ordering"] = {
            "alpha": list(rep.gale.alpha),
            "classes": [list(c) for c in rep.gale.classes],
            "representatives": list(rep.gale.reps),
            "k": rep.gale.k,
        }
    if rep.bar_lambda is not None:
        out["s_alpha"] = {"bar_lambda": list(rep.bar_lambda), "sgnvar": rep.sgnvar}
    if rep.bounds is not None:
        b = rep.bounds
        out["bounds"] = {
            "sgnvar_bound": b.sgnvar_bound,
            "vol_bound": b.vol_bound,
            "combined": b.combined,
            "k_minus_1": b.k_minus_1,
            "signature_bound": b.signature_bound,
            "parity": {
                "applies": b.parity.applies,
                "expected": b.parity.expected,
                "reason": b.parity.reason,
            },
            "finiteness": b.finiteness,
            "uniform": b.uniform,
            "cayley_free": b.cayley_free,
        }
    if rep.count is not None:
        out["count"] = {
            "kind": rep.count.kind,
            "distinct": rep.count.distinct,
            "with_multiplicity": rep.count.with_multiplicity,
            "reason": rep.count.reason,
            "multiplicity_note": rep.count.multiplicity_note,
        }
    return out


def render_text(rep: RunReport) -> str:
    lines = [f"instance: {rep.label} (n={rep.n})"]
    p = rep.profile
    lines.append(
        f"  relation lambda = {list(p.lam)}  index={p.index}  "
        f"signature={{{p.a_plus},{p.a_minus}}}  vol_Z={p.vol_z}  vol_ZA={p.vol_za}"
    )
    flags = []
    flags.append("circuit" if p.is_circuit else f"pyramid (zero support {list(p.zero_support)})")
    if p.has_cayley:
        flags.append("cayley structure")
    lines.append(f"  structure: {', '.join(flags)}")
    if not rep.halfspace_ok:
        lines.append("  halfplane condition fails: no positive solutions")
    else:
        g = rep.gale
        if g is not None and g.is_ordered:
            lines.append(f"  ordering alpha = {list(g.alpha)}  classes = {[list(c) for c in g.classes]}")
        if rep.bar_lambda is not None:
            lines.append(f"  s_alpha = {list(rep.bar_lambda)}  sgnvar = {rep.sgnvar}")
        if rep.bounds is not None:
            b = rep.bounds
            parity = (
                f"parity {b.parity.expected}" if b.parity.applies
                else f"parity n/a ({b.parity.reason})"
            )
            lines.append(
                f"  bounds: min(sgnvar, vol) = min({b.sgnvar_bound}, {b.vol_bound}) = "
                f"{b.combined}; k-1 = {b.k_minus_1}; signature bound = {b.signature_bound}; "
                f"{parity}; {b.finiteness}"
            )
    if rep.count is not None:
        c = rep.count
        if c.kind == "finite":
            note = f" [{c.multiplicity_note}]" if c.multiplicity_note else ""
            lines.append(
                f"  count: {c.with_multiplicity} with multiplicity "
                f"({c.distinct} distinct){note}"
            )
        elif c.kind == "infinite":
            lines.append("  count: infinitely many positive solutions")
        else:
            lines.append(f"  count: 0 ({c.reason})")
    lines.append(f"  verdict: {rep.verdict}  ({rep.timing_ms:.1f} ms)")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Gale vector diagram


def render_gale_svg(g: GaleSystem) -> str:
    """Static SVG of the Gale vectors (display scaling only; data stays exact)."""
    size = 420
    half = size / 2
    margin = 30
    norms = [max(abs(float(x)), abs(float(y))) for x, y in g.P]
    scale = (half - margin) / max(max(norms), 1e-9)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<line x1="0" y1="{half}" x2="{size}" y2="{half}" stroke="#ccc"/>',
        f'<line x1="{half}" y1="0" x2="{half}" y2="{size}" stroke="#ccc"/>',
    ]
    for idx, (x, y) in enumerate(g.P):
        px = half + float(x) * scale
        py = half - float(y) * scale
        parts.append(
            f'<line x1="{half}" y1="{half}" x2="{px:.2f}" y2="{py:.2f}" '
            f'stroke="#1f6fb2" stroke-width="2"/>'
        )
        parts.append(
            f'<circle cx="{px:.2f}" cy="{py:.2f}" r="3" fill="#1f6fb2"/>'
        )
        parts.append(
            f'<text x="{px + 6:.2f}" y="{py - 6:.2f}" font-size="12" '
            f'font-family="monospace">P{idx}</text>'
        )
    if g.witness is not None:
        wx, wy = (float(v) for v in g.witness)
        wn = max(abs(wx), abs(wy), 1e-9)
        px = half + wx / wn * (half - margin) * 0.9
        py = half - wy / wn * (half - margin) * 0.9
        parts.append(
            f'<line x1="{half}" y1="{half}" x2="{px:.2f}" y2="{py:.2f}" '
            f'stroke="#b22222" stroke-width="1.5" stroke-dasharray="6 3"/>'
        )
        parts.append(
            f'<text x="{px + 6:.2f}" y="{py + 12:.2f}" font-size="12" '
            f'font-family="monospace" fill="#b22222">mu</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# ---------------------------------------------------------------------------
# Fuzz driver


# Exponent ranges per dimension for fuzzing.  The relation entries are
# (n+1)x(n+1) minors, so a fixed range would let the normalized volume (and
# with it the degree of the counting polynomial) explode with n; shrinking
# the range keeps the volume distribution comparable across dimensions.
FUZZ_EXP_BOUNDS = {1: 6, 2: 4, 3: 2, 4: 1}
FUZZ_VOL_CAP = 32


def _fuzz_trial(args: tuple) -> dict:
    trial, n_max, seed, require_halfspace = args
    trial_seed = seed * 1_000_003 + trial
    rng_n = (trial_seed % n_max) + 1
    inst = random_instance(
        rng_n,
        trial_seed,
        exp_bound=FUZZ_EXP_BOUNDS.get(rng_n, 1),
        require_halfspace=require_halfspace,
        vol_cap=FUZZ_VOL_CAP,
    )
    rep = build_report(inst)
    out = {
        "trial": trial,
        "seed": trial_seed,
        "n": rng_n,
        "verdict": rep.verdict,
        "halfspace_ok": rep.halfspace_ok,
        "kind": rep.count.kind if rep.count else None,
        "count": rep.count.with_multiplicity if rep.count and rep.count.is_finite else None,
    }
    if rep.verdict == "violation":
        out["instance"] = instance_to_dict(inst)
    return out


def run_fuzz(n_max: int, trials: int, seed: int, jobs: int = 1,
             require_halfspace: bool = False) -> dict:
    """Run seeded trials through verify; deterministic fold in trial order."""
    started = time.perf_counter()
    work = [(t, n_max, seed, require_halfspace) for t in range(trials)]
    if jobs > 1:
        with Pool(jobs) as pool:
            results = pool.map(_fuzz_trial, work, chunksize=max(1, trials // (8 * jobs)))
    else:
        results = [_fuzz_trial(w) for w in work]
    verdicts: dict[str, int] = {}
    kinds: dict[str, int] = {}
    violations = []
    max_count = None
    for r in results:
        verdicts[r["verdict"]] = verdicts.get(r["verdict"], 0) + 1
        if r["kind"]:
            kinds[r["kind"]] = kinds.get(r["kind"], 0) + 1
        if r["count"] is not None and (max_count is None or r["count"] > max_count):
            max_count = r["count"]
        if r["verdict"] == "violation":
            violations.append(r)
    return {
        "trials": trials,
        "n_max": n_max,
        "seed": seed,
        "require_halfspace": require_halfspace,
        "verdicts": dict(sorted(verdicts.items())),
        "count_kinds": dict(sorted(kinds.items())),
        "max_finite_count": max_count,
        "violations": violations,
        "elapsed_ms": (time.perf_counter() - started) * 1000.0,
    }


# ---------------------------------------------------------------------------
# Entry point


def _read_instance(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance(fh.read())


def _emit_report(rep: RunReport, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report_to_dict(rep), indent=2))
    else:
        print(render_text(rep))


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="circuitbound",
        description=(
            "Sign-variation bounds and exact positive-solution counts for "
            "polynomial systems with n+2 monomials in n variables"
        ),
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add_io(p, svg=False):
        p.add_argument("-i", "--instance", required=True, help="instance JSON file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if svg:
            p.add_argument("--svg", help="write a diagram of the Gale vectors")

    add_io(sub.add_parser("analyze", help="structure, ordering, and bounds (no count)"), svg=True)
    add_io(sub.add_parser("count", help="exact positive-solution count only"))
    add_io(sub.add_parser("verify", help="bounds plus count plus verdict"))

    fam = sub.add_parser("family", help="emit a built-in instance")
    fam.add_argument("kind", choices=["prs", "modified"])
    fam.add_argument("--n", type=int, required=True)
    fam.add_argument("--r", type=int, default=None)
    fam.add_argument("--eps", default="1/4", help='rational, e.g. "1/4"')
    fam.add_argument("--variant", choices=["parity", "single"], default="parity")
    fam.add_argument("-o", "--output", help="write the instance file here")
    fam.add_argument("--verify", action="store_true", help="also run verify on it")
    fam.add_argument("--json", action="store_true")

    fz = sub.add_parser("fuzz", help="seeded random instances through verify")
    fz.add_argument("--n-max", type=int, required=True)
    fz.add_argument("--trials", type=int, required=True)
    fz.add_argument("--seed", type=int, required=True)
    fz.add_argument("--jobs", type=int, default=1)
    fz.add_argument("--require-halfspace", action="store_true")
    fz.add_argument("--json", action="store_true")
    return ap


def run(argv) -> int:
    args = _build_parser().parse_args(argv)
    if args.command in ("analyze", "count", "verify"):
        inst = _read_instance(args.instance)
        rep = build_report(
            inst,
            with_bounds=args.command != "count",
            with_count=args.command != "analyze",
        )
        _emit_report(rep, args.json)
        if args.command == "analyze" and args.svg:
            g = rep.gale if rep.gale is not None else gale_dual(inst.C)
            with open(args.svg, "w", encoding="utf-8") as fh:
                fh.write(render_gale_svg(g))
        if args.command == "verify" and rep.verdict == "violation":
            return EXIT_VIOLATION
        return EXIT_OK

    if args.command == "family":
        eps = parse_rational(args.eps, "--eps")
        if args.kind == "prs":
            inst = family_prs(args.n, eps)
        else:
            r = args.r if args.r is not None else args.n
            inst = family_prs_modified(args.n, r, eps, variant=args.variant)
        text = serialize_instance(inst)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        if args.verify:
            rep = build_report(inst)
            _emit_report(rep, args.json)
            if rep.verdict == "violation":
                return EXIT_VIOLATION
        return EXIT_OK

    if args.command == "fuzz":
        summary = run_fuzz(
            n_max=args.n_max,
            trials=args.trials,
            seed=args.seed,
            jobs=args.jobs,
            require_halfspace=args.require_halfspace,
        )
        if args.json:
            print(json.dumps(summary, indent=2))
        else:
            print(
                f"fuzz: {summary['trials']} trials (n <= {summary['n_max']}, "
                f"seed {summary['seed']}): verdicts {summary['verdicts']}, "
                f"kinds {summary['count_kinds']}, max finite count "
                f"{summary['max_finite_count']}, {summary['elapsed_ms']:.0f} ms"
            )
            for v in summary["violations"]:
                print(f"  VIOLATION at trial {v['trial']} (seed {v['seed']})")
        return EXIT_VIOLATION if summary["violations"] else EXIT_OK

    raise AssertionError(f"unhandled command {args.command}")


def main(argv=None) -> int:
    try:
        return run(sys.argv[1:] if argv is None else argv)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
