"""Command-line front end: build codes, export matrices, run verification
suites and censuses, classify/decompose polynomials, and emit comparison
tables.

Exit-code contract: 0 on success, 1 when a verification suite fails an
assertion, 2 on invalid usage or parameters.  All outputs are deterministic
for a fixed configuration: canonical orders everywhere, seeded sampling, a
provenance header that embeds the semantic config (the --jobs degree only
schedules work and is deliberately not part of it).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import __version__, bounds, codes
from .gf import Field, FieldError, NonPrimeCharacteristic, parse_field_spec
from .mvpoly import MultiPoly, NotDivisible, Permutation, WrongArity
from .perm import (
    GroupTooLarge,
    NotDistinguished,
    TooManyVariables,
    alternating_group,
    am_orbit_reps,
    distinguished_count,
    orbit_partition,
)
from .sym import (
    ComboType,
    EvenCharacteristic,
    IndexOutOfRange,
    NotAmInvariant,
    SymCombo,
    classify_sym_combo,
    decompose_am_invariant,
    eval_all_elem_sym_batch,
    vandermonde_eval_batch,
    vandermonde_poly,
)


class UsageError(Exception):
    pass


_DOMAIN_ERRORS = (
    FieldError,
    TooManyVariables,
    NotDistinguished,
    GroupTooLarge,
    codes.EvenQ,
    codes.DegreeOutOfRange,
    codes.WrongLength,
    bounds.ScanTooLarge,
    EvenCharacteristic,
    NotAmInvariant,
    IndexOutOfRange,
    WrongArity,
    NotDivisible,
    ValueError,
)


def _provenance(cmd: str, opts: dict) -> str:
    pairs = " ".join(f"{k}={opts[k]}" for k in sorted(opts))
    return f"# amcodes {__version__} | {cmd} {pairs}".rstrip()


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".amcodes-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(args, lines: list[str]) -> None:
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if getattr(args, "out", None):
        _atomic_write(args.out, text)


def _field_for(args) -> Field:
    try:
        return parse_field_spec(args.q, getattr(args, "modulus", None))
    except NonPrimeCharacteristic:
        raise UsageError("q must be a prime power")


def _check_am_preconditions(field: Field, m: int) -> None:
    if field.order % 2 == 0:
        raise UsageError("q must be odd")
    if m > field.order:
        raise UsageError("m exceeds q")
    if m < 2:
        raise UsageError("m must be at least 2")


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.6f}"
    return str(x)


def _json_line(record: dict) -> str:
    return json.dumps(record, sort_keys=True)


# ---------------------------------------------------------------------------
# params
# ---------------------------------------------------------------------------


def _code_record(kind: str, p: codes.CodeParams) -> dict:
    return {
        "record": "code",
        "kind": kind,
        "n": p.n,
        "k": p.k,
        "d": p.d,
        "d_exact": p.d_is_exact,
        "delta": round(p.delta, 6),
        "rho": round(p.rho, 6),
    }


def cmd_params(args) -> int:
    field = _field_for(args)
    q, m = field.order, args.m
    _check_am_preconditions(field, m)
    if m >= q:
        raise UsageError("reed-muller comparison at t=m requires m < q")
    comparison = bounds.compare_codes(q, m)
    report = bounds.bound_report(q, m)
    lines = [_provenance("params", {"q": args.q, "m": m, "format": args.format})]
    rows = [("am", comparison.am), ("dj", comparison.dj), ("grm", comparison.grm)]
    if args.format == "json":
        for kind, p in rows:
            lines.append(_json_line(_code_record(kind, p)))
        lines.append(_json_line({"record": "bounds", **report.as_record()}))
        lines.append(
            _json_line({"record": "flags", **report.precondition_flags})
        )
    else:
        lines.append("kind,n,k,d,d_exact,delta,rho")
        for kind, p in rows:
            lines.append(
                f"{kind},{p.n},{p.k},{p.d},{_fmt(p.d_is_exact)},"
                f"{_fmt(p.delta)},{_fmt(p.rho)}"
            )
        rec = report.as_record()
        lines.append(",".join(bounds.BOUND_REPORT_FIELDS))
        lines.append(",".join(_fmt(rec[k]) for k in bounds.BOUND_REPORT_FIELDS))
        flags = report.precondition_flags
        lines.append("flag," + ",".join(sorted(flags)))
        lines.append("value," + ",".join(_fmt(flags[k]) for k in sorted(flags)))
    _emit(args, lines)
    return 0


# ---------------------------------------------------------------------------
# build
# ---------------------------------------------------------------------------


def cmd_build(args) -> int:
    field = _field_for(args)
    m = args.m
    if args.kind == "am":
        _check_am_preconditions(field, m)
        code = codes.build_am_code(field, m)
    else:
        if m > field.order:
            raise UsageError("m exceeds q")
        code = codes.build_dj_code(field, m)
    header = _provenance("build", {"q": args.q, "m": m, "kind": args.kind})
    text = header + "\n" + codes.generator_matrix_csv(code)
    if args.out:
        _atomic_write(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# verify suites
# ---------------------------------------------------------------------------


def _suite_orbits(field, m, args):
    q = field.order
    half = math.factorial(m) // 2
    parts = orbit_partition(field, m, alternating_group(m))
    sizes = {len(p) for p in parts}
    yield "orbit_sizes", sizes == {half}, f"sizes={sorted(sizes)} expected {half}"
    expected = 2 * math.comb(q, m)
    yield "orbit_count", len(parts) == expected, f"{len(parts)} orbits expected {expected}"
    covered = sum(len(p) for p in parts)
    total = distinguished_count(q, m)
    yield "coverage", covered == total, f"{covered} points expected {total}"
    reps = am_orbit_reps(field, m)
    hits = [sum(1 for r in reps if r in p) for p in parts]
    yield "reps_hit_each_orbit", all(h == 1 for h in hits), (
        f"per-orbit rep counts {sorted(set(hits))} expected all 1"
    )


def _suite_fibers(field, m, args):
    census = bounds.vm_fiber_census(field, m, cap=args.cap, force=args.force)
    q = field.order
    d = bounds.fiber_gcd(q, m)
    total = distinguished_count(q, m)
    yield "fiber_sum", sum(census.nonzero_counts) == total, (
        f"nonzero fibers sum {sum(census.nonzero_counts)} expected {total}"
    )
    if d == 1:
        ok = census.uniform and census.max_fiber == census.expected_uniform
        yield "fibers_uniform", ok, (
            f"all fibers = {census.expected_uniform}"
            if ok
            else f"fibers {sorted(set(census.nonzero_counts))} expected uniform {census.expected_uniform}"
        )
    yield "fiber_bound", census.max_fiber <= census.fiber_bound, (
        f"max fiber {census.max_fiber} <= bound {census.fiber_bound} (d={d})"
    )


def _suite_rank(field, m, args):
    q = field.order
    try:
        am = codes.build_am_code(field, m)
        yield "am_rank", True, f"n={am.n} k={am.k} rank verified"
        yield "am_length", am.n == 2 * math.comb(q, m), f"n={am.n}"
    except codes.RankDeficient as exc:
        yield "am_rank", False, str(exc)
    try:
        dj = codes.build_dj_code(field, m)
        yield "dj_rank", True, f"n={dj.n} k={dj.k} rank verified"
        yield "dj_length", dj.n == math.comb(q, m), f"n={dj.n}"
    except codes.RankDeficient as exc:
        yield "dj_rank", False, str(exc)


def _suite_depfamily(field, m, args):
    result = codes.dependent_family_scan(
        field, m, samples=args.samples, seed=args.seed, jobs=args.jobs
    )
    mode = "exhaustive" if result.exhaustive else f"sampled({result.classes_scanned})"
    yield "dep_min_weight", result.ok, (
        f"min weight {result.min_weight} >= bound {result.bound} [{mode}] "
        f"at class {result.at_class} lambda {result.at_lambda}"
    )


def _random_combos(field, m, rng, count, nonzero=False):
    out = []
    q = field.order
    while len(out) < count:
        coeffs = tuple(int(c) for c in rng.integers(0, q, size=m + 1))
        if nonzero and not any(coeffs):
            continue
        out.append(SymCombo(field, m, coeffs))
    return out


def _suite_eq4(field, m, args):
    q = field.order
    samples = args.samples if args.samples is not None else 200
    if q**m > args.cap:
        raise UsageError(f"full {q}^{m} scan exceeds cap {args.cap}")
    rng = np.random.default_rng(args.seed)
    s1s = _random_combos(field, m, rng, samples)
    s2s = _random_combos(field, m, rng, samples, nonzero=True)
    bad = 0
    for s1, s2 in zip(s1s, s2s):
        z_f = z_s2 = zd_f = zd_s2 = 0
        for pts in bounds.full_tuple_batches(field, m):
            fv = codes.eval_pair_batch(field, s1, s2, pts)
            s2v = codes.combo_values(field, s2.coeffs, eval_all_elem_sym_batch(field, pts))
            vnz = vandermonde_eval_batch(field, pts) != 0
            z_f += int(np.count_nonzero(fv == 0))
            z_s2 += int(np.count_nonzero(s2v == 0))
            zd_f += int(np.count_nonzero((fv == 0) & vnz))
            zd_s2 += int(np.count_nonzero((s2v == 0) & vnz))
        if zd_f != z_f - z_s2 + zd_s2:
            bad += 1
    yield "zero_count_identity", bad == 0, (
        f"{samples - bad}/{samples} sampled pairs satisfy "
        "|Z_D(F)| = |Z(F)| - |Z(s2)| + |Z_D(s2)|"
    )


def _type2_patterns(field, m):
    """Coefficient vectors of a * prod(alpha + x_i) for every (a, alpha)."""
    patterns = {}
    q = field.order
    for a in range(1, q):
        for alpha in range(q):
            vec = tuple(field.mul(a, field.pow(alpha, m - i)) for i in range(m + 1))
            patterns.setdefault(vec, (a, alpha))
    return patterns


def _product_form_poly(field, m, a, alpha):
    out = MultiPoly.constant(field, m, a)
    for i in range(1, m + 1):
        out = out * (MultiPoly.variable(field, m, i) + MultiPoly.constant(field, m, alpha))
    return out


def _suite_classify(field, m, args):
    q = field.order
    total = q ** (m + 1)
    if total > args.cap:
        raise UsageError(f"classification sweep of {total} vectors exceeds cap {args.cap}")
    patterns = _type2_patterns(field, m)
    mismatches = 0
    unconfirmed = 0
    for idx in range(total):
        coeffs = []
        v = idx
        for _ in range(m + 1):
            coeffs.append(v % q)
            v //= q
        combo = SymCombo(field, m, tuple(coeffs))
        verdict = classify_sym_combo(combo)
        if all(c == 0 for c in combo.coeffs[1:]):
            expected = ComboType.DEGENERATE
        elif combo.coeffs in patterns:
            expected = ComboType.TYPE2
        else:
            expected = ComboType.TYPE1
        if verdict.kind is not expected:
            mismatches += 1
        elif verdict.kind is ComboType.TYPE2:
            if _product_form_poly(field, m, verdict.a, verdict.alpha) != combo.to_poly():
                unconfirmed += 1
    yield "classification_oracle", mismatches == 0, (
        f"{total - mismatches}/{total} coefficient vectors agree with the brute-force search"
    )
    yield "type2_expansions", unconfirmed == 0, (
        f"all product-form verdicts confirmed by symbolic expansion"
        if unconfirmed == 0
        else f"{unconfirmed} product-form witnesses failed symbolic confirmation"
    )


def _suite_decompose(field, m, args):
    samples = args.samples if args.samples is not None else 1000
    rng = np.random.default_rng(args.seed)
    v = vandermonde_poly(field, m)
    bad_roundtrip = 0
    for s1, s2 in zip(
        _random_combos(field, m, rng, samples), _random_combos(field, m, rng, samples)
    ):
        g = s1.to_poly() * v + s2.to_poly()
        pair = decompose_am_invariant(g)
        if pair.s1 != s1.to_poly() or pair.s2 != s2.to_poly():
            bad_roundtrip += 1
    yield "decompose_roundtrip", bad_roundtrip == 0, (
        f"{samples - bad_roundtrip}/{samples} seeded pairs recovered exactly"
    )

    tau = Permutation.transposition(m, 1, 2)
    half = field.inv(field.add(1, 1))
    bad_parity = 0
    for _ in range(samples):
        terms = {}
        for _ in range(int(rng.integers(1, 8))):
            exps = tuple(int(e) for e in rng.integers(0, 3, size=m))
            terms[exps] = int(rng.integers(0, field.order))
        f = MultiPoly(field, m, terms)
        f_tau = f.apply_permutation(tau)
        even_part = (f + f_tau).scale(half)
        odd_part = (f - f_tau).scale(half)
        if even_part.apply_permutation(tau) != even_part:
            bad_parity += 1
        elif odd_part.apply_permutation(tau) != -odd_part:
            bad_parity += 1
        elif even_part + odd_part != f:
            bad_parity += 1
    yield "parity_split", bad_parity == 0, (
        f"{samples - bad_parity}/{samples} random polynomials split into "
        "swap-even plus swap-odd parts"
    )


_SUITES = {
    "orbits": _suite_orbits,
    "fibers": _suite_fibers,
    "rank": _suite_rank,
    "depfamily": _suite_depfamily,
    "eq4": _suite_eq4,
    "classify": _suite_classify,
    "decompose": _suite_decompose,
}


def cmd_verify(args) -> int:
    field = _field_for(args)
    m = args.m
    if m > field.order:
        raise UsageError("m exceeds q")
    suite = _SUITES[args.suite]
    opts = {
        "q": args.q,
        "m": m,
        "suite": args.suite,
        "seed": args.seed,
        "samples": args.samples,
        "cap": args.cap,
        "format": args.format,
    }
    lines = [_provenance("verify", opts)]
    all_ok = True
    for name, ok, detail in suite(field, m, args):
        all_ok = all_ok and ok
        if args.format == "json":
            lines.append(_json_line({"assertion": name, "ok": ok, "detail": detail}))
        else:
            lines.append(f"{'PASS' if ok else 'FAIL'} {args.suite}.{name}: {detail}")
    if args.format == "json":
        lines.append(_json_line({"result": "pass" if all_ok else "fail"}))
    else:
        lines.append(f"RESULT {'pass' if all_ok else 'fail'}")
    _emit(args, lines)
    return 0 if all_ok else 1


# ---------------------------------------------------------------------------
# census
# ---------------------------------------------------------------------------


def cmd_census(args) -> int:
    field = _field_for(args)
    m = args.m
    census = bounds.vm_fiber_census(field, m, scan=args.scan, cap=args.cap, force=args.force)
    opts = {"q": args.q, "m": m, "scan": args.scan, "format": args.format}
    lines = [_provenance("census", opts)]
    summary = {
        "record": "summary",
        "q": census.q,
        "m": census.m,
        "scan": census.scan,
        "max_fiber": census.max_fiber,
        "uniform": census.uniform,
        "expected_uniform": census.expected_uniform,
        "fiber_bound": census.fiber_bound,
        "zero_fiber": census.zero_fiber,
    }
    if args.format == "json":
        for rec in census.records():
            lines.append(_json_line({"record": "fiber", **rec}))
        lines.append(_json_line(summary))
    else:
        lines.append("lambda,count")
        for rec in census.records():
            lines.append(f"{rec['lambda']},{rec['count']}")
        keys = sorted(k for k in summary if k != "record")
        lines.append("summary," + ",".join(keys))
        lines.append("value," + ",".join(_fmt(summary[k]) for k in keys))
    _emit(args, lines)
    return 0


# ---------------------------------------------------------------------------
# classify / decompose
# ---------------------------------------------------------------------------


def cmd_classify(args) -> int:
    field = _field_for(args)
    combo = SymCombo.from_string(field, args.m, args.coeffs)
    verdict = classify_sym_combo(combo)
    record = {
        "coeffs": combo.to_string(),
        "kind": verdict.kind.value,
        "a": verdict.a,
        "alpha": verdict.alpha,
    }
    lines = [_provenance("classify", {"q": args.q, "m": args.m, "coeffs": args.coeffs})]
    if args.format == "json":
        lines.append(_json_line(record))
    else:
        lines.append(f"kind={record['kind']} a={record['a']} alpha={record['alpha']}")
    _emit(args, lines)
    return 0


def cmd_decompose(args) -> int:
    field = _field_for(args)
    g = MultiPoly.from_text(field, args.m, args.poly)
    pair = decompose_am_invariant(g)
    lines = [_provenance("decompose", {"q": args.q, "m": args.m, "poly": args.poly})]
    if args.format == "json":
        lines.append(_json_line({"s1": pair.s1.to_text(), "s2": pair.s2.to_text()}))
    else:
        lines.append(f"s1: {pair.s1.to_text()}")
        lines.append(f"s2: {pair.s2.to_text()}")
    _emit(args, lines)
    return 0


# ---------------------------------------------------------------------------
# compare / mindist
# ---------------------------------------------------------------------------


def cmd_compare(args) -> int:
    q_values = [s for s in args.q.split(",") if s.strip()]
    if not q_values:
        raise UsageError("at least one q value required")
    m = args.m
    lines = [_provenance("compare", {"m": m, "q": args.q, "format": args.format})]
    header = (
        "q,n_am,k_am,d_am,n_dj,k_dj,d_dj,n_grm,k_grm,d_grm,"
        "delta_am,delta_dj,delta_ratio_am_dj,rho_am,rho_grm,rho_ratio_am_grm"
    )
    if args.format != "json":
        lines.append(header)
    for q_spec in q_values:
        try:
            field = parse_field_spec(q_spec)
            q = field.order
            if q % 2 == 0:
                raise UsageError("q must be odd")
            if m >= q:
                raise UsageError("m must be below q")
            row = bounds.compare_codes(q, m)
        except (UsageError, *_DOMAIN_ERRORS) as exc:
            lines.append(f"WARN skipping q={q_spec}: {exc}")
            continue
        if args.format == "json":
            lines.append(
                _json_line(
                    {
                        "q": q,
                        "am": _code_record("am", row.am),
                        "dj": _code_record("dj", row.dj),
                        "grm": _code_record("grm", row.grm),
                        "delta_ratio_am_dj": round(row.delta_ratio, 6),
                        "rho_ratio_am_grm": round(row.rho_ratio, 6),
                    }
                )
            )
        else:
            lines.append(
                ",".join(
                    [
                        str(q),
                        str(row.am.n), str(row.am.k), str(row.am.d),
                        str(row.dj.n), str(row.dj.k), str(row.dj.d),
                        str(row.grm.n), str(row.grm.k), str(row.grm.d),
                        _fmt(row.am.delta), _fmt(row.dj.delta), _fmt(row.delta_ratio),
                        _fmt(row.am.rho), _fmt(row.grm.rho), _fmt(row.rho_ratio),
                    ]
                )
            )
    _emit(args, lines)
    return 0


def cmd_mindist(args) -> int:
    field = _field_for(args)
    m = args.m
    if args.kind == "am":
        _check_am_preconditions(field, m)
        code = codes.build_am_code(field, m)
    else:
        if m > field.order:
            raise UsageError("m exceeds q")
        code = codes.build_dj_code(field, m)
    result = codes.min_distance(code, budget=args.budget)
    opts = {"q": args.q, "m": m, "kind": args.kind, "budget": args.budget}
    lines = [_provenance("mindist", opts)]
    record = {
        "n": result.n,
        "k": result.k,
        "d": result.d,
        "exact": result.d_is_exact,
        "classes": codes.projective_class_count(field.order, code.k),
    }
    if args.format == "json":
        lines.append(_json_line(record))
    else:
        lines.append(
            f"n={record['n']} k={record['k']} d={record['d']} "
            f"exact={_fmt(record['exact'])} classes={record['classes']}"
        )
    _emit(args, lines)
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="amcodes",
        description="evaluation codes from even-permutation-invariant polynomials",
    )
    parser.add_argument("--version", action="version", version=f"amcodes {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, modulus=True, out=True, fmt=True):
        p.add_argument("--q", required=True, help='field order, "q" or "p^e"')
        if modulus:
            p.add_argument(
                "--modulus",
                help="modulus digit string, base-p digits highest degree first",
            )
        p.add_argument("--m", type=int, required=True, help="number of variables")
        if out:
            p.add_argument("--out", help="also write the output to this file")
        if fmt:
            p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("params", help="code parameters and bound report")
    common(p)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("build", help="export a generator matrix")
    common(p, fmt=False)
    p.add_argument("--kind", choices=("am", "dj"), default="am")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="run a verification suite")
    common(p)
    p.add_argument("--suite", required=True, choices=sorted(_SUITES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--cap", type=int, default=bounds.DEFAULT_SCAN_CAP)
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("census", help="Vandermonde fiber census")
    common(p)
    p.add_argument("--scan", choices=("distinguished", "full"), default="distinguished")
    p.add_argument("--cap", type=int, default=bounds.DEFAULT_SCAN_CAP)
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("classify", help="classify a symmetric combination")
    common(p)
    p.add_argument("--coeffs", required=True, help='coefficients "a0,a1,...,am"')
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("decompose", help="split an invariant polynomial")
    common(p)
    p.add_argument("--poly", required=True, help="polynomial in c*x1^a1*... text form")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("compare", help="trend table against the reference codes")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--q", required=True, help="comma-separated field orders")
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("mindist", help="minimum distance search")
    common(p)
    p.add_argument("--kind", choices=("am", "dj"), default="am")
    p.add_argument("--budget", type=int, default=codes.DEFAULT_DISTANCE_BUDGET)
    p.set_defaults(func=cmd_mindist)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; pass through
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
