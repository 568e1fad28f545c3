"""Batch front end: run session files, write JSON and text reports.

Exit codes: 0 when every task computes or verifies, 2 when any task fails
or errors, 3 when the only blemishes are UNDECIDED/INCONCLUSIVE verdicts.
JSON reports are byte-deterministic for a fixed session and seed (timing
appears only in the text summary).
"""

import argparse
import json
import os
import random
import sys
import time

from .errors import ParseError, SpecdivError
from .groebner import Ideal
from .cover import NumericProfile, ideal_norm
from .divisors import (chart_degree, degree_at_point, direct_image,
                       find_preimage_divisor, inverse_image,
                       GeneralizedDivisor)
from .session import load_session
from .spectral import (char_coeffs, degree_formulas, gsp_translate,
                       higgs_to_module, module_to_higgs, norm_fiber_check,
                       shifted_charpoly_identity, sp_duality_check,
                       sp_parity_check, to_fractional, verify_bnr_sequence)

REPORT_SCHEMA = "specdiv-report/1"

PASS, FAIL, OK, UNDECIDED, ERROR = "pass", "fail", "ok", "undecided", "error"

LAWS = {
    "norm-element": "element-norm-determinant",
    "norm-ideal": "lattice-determinant-norm",
    "pushforward": "fitting-image",
    "pullback": "ideal-extension",
    "degree": "artinian-length-degree",
    "degree-at": "localized-degree",
    "find-preimage": "pushforward-surjectivity",
    "spectral-to-higgs": "multiplication-matrix",
    "higgs-to-spectral": "eigen-cokernel",
    "verify-bnr": "four-term-exactness",
    "sl-check": "norm-fiber-membership",
    "sp-check": "involution-duality",
    "gsp-translate": "trace-translation",
    "formulas": "degree-euler-formulas",
}


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="specdiv",
        description="Exact spectral-cover and divisor computations on "
                    "affine curve charts.")
    sub = parser.add_subparsers(dest="command", required=True)
    run_p = sub.add_parser("run", help="run a session file")
    run_p.add_argument("session", help="path to a session TOML file")
    run_p.add_argument("--seed", type=int, default=0,
                       help="seed for randomized tasks (default 0)")
    run_p.add_argument("--trials", type=int, default=None,
                       help="trial count override for randomized tasks")
    run_p.add_argument("--json", dest="json_path", default=None,
                       help="write the JSON report here")
    run_p.add_argument("--text", dest="text_path", default=None,
                       help="write the text summary here as well")
    run_p.add_argument("--continue-on-error", action="store_true",
                       help="record task errors and keep going")
    run_p.add_argument("--parallel", action="store_true",
                       help="run independent tasks concurrently")
    run_p.add_argument("--quiet", action="store_true",
                       help="suppress the per-task summary on stdout")
    args = parser.parse_args(argv)
    return run_command(args)


def run_command(args):
    try:
        session = load_session(args.session)
    except FileNotFoundError:
        print(f"error: no such session file: {args.session}", file=sys.stderr)
        return 1
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    started = time.monotonic()
    records, aborted = execute_tasks(session, args)
    elapsed = time.monotonic() - started
    report = {
        "schema": REPORT_SCHEMA,
        "session": os.path.basename(args.session),
        "seed": args.seed,
        "field": repr(session.field),
        "tasks": records,
        "summary": summarize(records),
    }
    if aborted:
        report["aborted"] = True
    blob = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.json_path:
        with open(args.json_path, "w", encoding="utf-8") as fh:
            fh.write(blob)
    lines = text_summary(report, elapsed)
    if args.text_path:
        with open(args.text_path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    if not args.quiet:
        print("\n".join(lines))
    counts = report["summary"]
    if counts[FAIL] or counts[ERROR]:
        return 2
    if counts[UNDECIDED]:
        return 3
    return 0


def execute_tasks(session, args):
    records = []
    aborted = False

    def run_one(index, task):
        rng = random.Random((args.seed << 20) ^ (index * 1000003 + 12345))
        record = {"index": index, "op": task["op"], "law": LAWS[task["op"]],
                  "inputs": {k: v for k, v in task.items() if k != "op"}}
        try:
            status, outputs = TASK_HANDLERS[task["op"]](session, task, rng, args)
            record["status"] = status
            record["outputs"] = outputs
        except SpecdivError as exc:
            record["status"] = ERROR
            record["outputs"] = {"error": str(exc)}
        except (ValueError, ZeroDivisionError, ArithmeticError) as exc:
            record["status"] = ERROR
            record["outputs"] = {"error": f"{type(exc).__name__}: {exc}"}
        return record

    if args.parallel:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor() as pool:
            futures = [pool.submit(run_one, i, t)
                       for i, t in enumerate(session.tasks)]
            records = [f.result() for f in futures]
        if not args.continue_on_error and any(r["status"] == ERROR
                                              for r in records):
            aborted = False  # all tasks already ran
    else:
        for i, task in enumerate(session.tasks):
            record = run_one(i, task)
            records.append(record)
            if record["status"] == ERROR and not args.continue_on_error:
                aborted = True
                break
    return records, aborted


def summarize(records):
    counts = {PASS: 0, FAIL: 0, OK: 0, UNDECIDED: 0, ERROR: 0}
    for r in records:
        counts[r["status"]] += 1
    return counts


def text_summary(report, elapsed):
    lines = [f"session {report['session']} (field {report['field']}, "
             f"seed {report['seed']})"]
    for r in report["tasks"]:
        keys = ", ".join(f"{k}={v!r}" for k, v in sorted(r["inputs"].items()))
        detail = ""
        for key in ("value", "status", "degree", "gens", "verdict"):
            if key in r["outputs"]:
                detail = f" -> {r['outputs'][key]}"
                break
        if r["status"] == ERROR:
            detail = f" -> {r['outputs'].get('error', '')}"
        lines.append(f"  [{r['index']:>2}] {r['op']}({keys}) "
                     f"{r['status'].upper()}{detail}")
    counts = report["summary"]
    lines.append(
        "  summary: "
        + ", ".join(f"{k}={counts[k]}" for k in (PASS, FAIL, OK, UNDECIDED, ERROR))
        + f"; wall time {elapsed:.2f}s")
    if report.get("aborted"):
        lines.append("  aborted on first error (use --continue-on-error)")
    return lines


# ---------------------------------------------------------------------------
# task handlers


def _verdict(condition, has_expectation):
    if not has_expectation:
        return OK
    return PASS if condition else FAIL


def _gens_str(ideal_like):
    if isinstance(ideal_like, Ideal):
        return sorted(str(g) for g in ideal_like.groebner().gens)
    return sorted(str(g) for g in ideal_like)


def handle_norm_element(session, task, rng, args):
    cover = _need_cover(session)
    f = cover.ring.parse(task["element"])
    value = cover.element_norm(f)
    outputs = {"value": str(value)}
    expect = task.get("expect")
    ok = expect is None or value == cover.base.parse(expect)
    return _verdict(ok, expect is not None), outputs


def handle_norm_ideal(session, task, rng, args):
    cover = _need_cover(session)
    module = session.object_of_kind(task["module"], "module")
    nm = ideal_norm(cover, module.fractional)
    num = str(nm.numerator.gens[0])
    den = str(nm.denominator)
    outputs = {"numerator": num, "denominator": den, "value": f"({num})/({den})"}
    has_expect = "expect_num" in task or "expect_den" in task
    ok = True
    if "expect_num" in task:
        ok = ok and nm.numerator.gens[0] == cover.base.parse(task["expect_num"])
    if "expect_den" in task:
        ok = ok and nm.denominator == cover.base.parse(task["expect_den"])
    return _verdict(ok, has_expect), outputs


def handle_pushforward(session, task, rng, args):
    cover = _need_cover(session)
    divisor, on = session.object_of_kind(task["divisor"], "divisor")
    if on != "cover":
        raise ParseError("pushforward expects a divisor on the cover")
    image = direct_image(cover, divisor)
    outputs = {"gens": _gens_str(image.effective)}
    if image.negative is not None:
        outputs["negative"] = str(image.negative)
    has_expect = "expect_gens" in task
    ok = True
    if has_expect:
        want = GeneralizedDivisor(cover.base,
                                  [cover.base.parse(g)
                                   for g in task["expect_gens"]],
                                  None if "expect_negative" not in task
                                  else cover.base.parse(task["expect_negative"]))
        ok = image == want
    return _verdict(ok, has_expect), outputs


def handle_pullback(session, task, rng, args):
    cover = _need_cover(session)
    divisor, on = session.object_of_kind(task["divisor"], "divisor")
    if on != "base":
        raise ParseError("pullback expects a divisor on the base")
    image = inverse_image(cover, divisor)
    outputs = {"gens": _gens_str(image.effective)}
    if image.negative is not None:
        outputs["negative"] = str(image.negative)
    has_expect = "expect_gens" in task
    ok = True
    if has_expect:
        want = GeneralizedDivisor(cover.ring,
                                  [cover.ring.parse(g)
                                   for g in task["expect_gens"]])
        ok = image == want
    return _verdict(ok, has_expect), outputs


def handle_degree(session, task, rng, args):
    divisor, _ = session.object_of_kind(task["divisor"], "divisor")
    value = chart_degree(divisor)
    expect = task.get("expect")
    return (_verdict(expect is None or value == expect, expect is not None),
            {"value": value})


def handle_degree_at(session, task, rng, args):
    divisor, _ = session.object_of_kind(task["divisor"], "divisor")
    point = Ideal(divisor.ring, [divisor.ring.parse(g) for g in task["point"]])
    value = degree_at_point(divisor, point)
    expect = task.get("expect")
    return (_verdict(expect is None or value == expect, expect is not None),
            {"value": value})


def handle_find_preimage(session, task, rng, args):
    cover = _need_cover(session)
    divisor, on = session.object_of_kind(task["divisor"], "divisor")
    if on != "base":
        raise ParseError("find-preimage expects a divisor on the base")
    result = find_preimage_divisor(cover, divisor, rng)
    outputs = {
        "gens": _gens_str(result.divisor.effective),
        "verified": result.verified,
        "transcript": list(result.transcript),
    }
    return (PASS if result.verified else FAIL), outputs


def handle_spectral_to_higgs(session, task, rng, args):
    cover = _need_cover(session)
    module = session.object_of_kind(task["module"], "module")
    phi = module_to_higgs(module)
    coeffs = [str(a) for a in char_coeffs(phi)]
    outputs = {"matrix": [[str(e) for e in row] for row in phi.mat.rows],
               "char_coeffs": coeffs}
    has_expect = "expect_coeffs" in task
    ok = True
    if has_expect:
        ok = coeffs == [str(cover.base.parse(c)) for c in task["expect_coeffs"]]
    return _verdict(ok, has_expect), outputs


def handle_higgs_to_spectral(session, task, rng, args):
    cover = _need_cover(session)
    phi = session.object_of_kind(task["higgs"], "higgs")
    module = higgs_to_module(cover, phi)
    outputs = {"presentation":
               [[str(e) for e in row] for row in module.presentation.rows],
               "twist": module.twist}
    try:
        frac = to_fractional(module)
        outputs["gens"] = _gens_str(frac.fractional.numerator)
    except SpecdivError:
        pass
    return OK, outputs


def handle_verify_bnr(session, task, rng, args):
    module = session.object_of_kind(task["module"], "module")
    spots = task.get("specializations", 20)
    if args.trials is not None:
        spots = args.trials
    report = verify_bnr_sequence(module, rng, specializations=spots)
    outputs = {
        "status": report.status,
        "symbolic_compositions_vanish":
            report.symbolic_psi_q and report.symbolic_ev_psi,
        "specializations": [
            {"point": str(rec["point"]), "ok": rec["ok"]}
            for rec in report.specializations],
    }
    if report.status == "PASS":
        return PASS, outputs
    if report.status == "INCONCLUSIVE":
        return UNDECIDED, outputs
    return FAIL, outputs


def handle_sl_check(session, task, rng, args):
    module = session.object_of_kind(task["module"], "module")
    result = norm_fiber_check(module)
    outputs = {"status": result.status, "detail": result.detail}
    if result.witness is not None:
        outputs["witness"] = str(result.witness)
    expect = task.get("expect")
    if expect is not None:
        return _verdict(result.status == expect, True), outputs
    if result.status == "UNDECIDED":
        return UNDECIDED, outputs
    return OK, outputs


def handle_sp_check(session, task, rng, args):
    cover = _need_cover(session)
    module = session.object_of_kind(task["module"], "module")
    parity = sp_parity_check(cover.coefficients())
    outputs = {"parity": parity}
    if not parity:
        outputs["status"] = "FAILS"
        outputs["detail"] = "cover is not invariant under the sign involution"
        return (FAIL if task.get("expect") else OK), outputs
    result = sp_duality_check(module, rng)
    outputs["status"] = result.status
    outputs["detail"] = result.detail
    if result.witness is not None:
        outputs["witness"] = str(result.witness)
    expect = task.get("expect")
    if expect is not None:
        return _verdict(result.status == expect, True), outputs
    if result.status == "UNDECIDED":
        return UNDECIDED, outputs
    return OK, outputs


def handle_gsp_translate(session, task, rng, args):
    phi = session.object_of_kind(task["higgs"], "higgs")
    shifted, mu = gsp_translate(phi)
    trace_zero = shifted.mat.trace().is_zero()
    identity = shifted_charpoly_identity(phi, shifted, mu)
    outputs = {"mu": str(mu),
               "matrix": [[str(e) for e in row] for row in shifted.mat.rows],
               "trace_zero": trace_zero,
               "shifted_charpoly_identity": identity}
    return (PASS if trace_zero and identity else FAIL), outputs


def handle_formulas(session, task, rng, args):
    profile = NumericProfile(r=task["r"], g=task["g"], ell=task["ell"],
                             d=task.get("d", 0))
    record = degree_formulas(profile, task.get("group", "GL"))
    outputs = dict(record)
    # the Euler relation chi = -deg(omega)/2 is checked on every run
    euler_relation = (2 * record["chi"] == -record["omega_degree"])
    outputs["euler_relation"] = euler_relation
    ok = euler_relation
    for key in ("d_prime", "chi", "omega_degree"):
        want = task.get(f"expect_{key}")
        if want is not None:
            ok = ok and record[key] == want
    return (PASS if ok else FAIL), outputs


def _need_cover(session):
    if session.cover is None:
        raise ParseError("this task needs a cover declaration")
    return session.cover


TASK_HANDLERS = {
    "norm-element": handle_norm_element,
    "norm-ideal": handle_norm_ideal,
    "pushforward": handle_pushforward,
    "pullback": handle_pullback,
    "degree": handle_degree,
    "degree-at": handle_degree_at,
    "find-preimage": handle_find_preimage,
    "spectral-to-higgs": handle_spectral_to_higgs,
    "higgs-to-spectral": handle_higgs_to_spectral,
    "verify-bnr": handle_verify_bnr,
    "sl-check": handle_sl_check,
    "sp-check": handle_sp_check,
    "gsp-translate": handle_gsp_translate,
    "formulas": handle_formulas,
}


if __name__ == "__main__":
    sys.exit(main())
