"""Command-line front end.

Exit codes (stable):
    0  result delivered, matrix is PositiveDefinite / PositiveSemidefinite / Zero
    1  result delivered, matrix is NegativeDefinite / NegativeSemidefinite / Indefinite
    2  input error
    3  internal verification failure (a certificate or witness failed its own check)
"""
from __future__ import annotations

import argparse
import contextlib
import json
import sys
from typing import Any, Dict, List

from .certificates import (
    InternalVerificationError,
    SosCertificate,
    Witness,
    certifies_nonnegative,
    negative_witness_ternary,
    positive_witness,
    psd_certificate,
)
from .classifier import classify, classify_critical_point, classify_with_evidence
from .core import SymMatrix, fmt, negate
from .minors import all_principal_minors, leading_minors
from .oracle import sampling_refute, spectrum_classify
from .parsing import (
    parse_form,
    parse_input,
    parse_matrix,
    render_certificate,
    render_form,
    variable_names,
)

EXIT_NONNEGATIVE = 0
EXIT_OTHER = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3

_VALUE_FLAGS = ("--matrix", "--form", "--file", "--batch")
COMMANDS = ("classify", "certify", "witness", "minors", "hessian", "oracle")


class InputError(ValueError):
    pass


def _vec(v) -> List[str]:
    return [fmt(c) for c in v]


def certificate_json(cert: SosCertificate) -> Dict[str, Any]:
    return {
        "n": cert.n,
        "claim": cert.claim,
        "terms": [{"weight": fmt(w), "form": _vec(f)} for w, f in cert.terms],
    }


def certificate_from_json(data: Dict[str, Any]) -> SosCertificate:
    return SosCertificate(
        data["n"], tuple((t["weight"], t["form"]) for t in data["terms"]), data["claim"]
    )


def witness_json(w: Witness | None):
    if w is None:
        return None
    return {"x": _vec(w.x), "value": fmt(w.value), "sign": w.sign_claim}


def _witness_text(w: Witness) -> str:
    return f"Q({', '.join(_vec(w.x))}) = {fmt(w.value)}"


def _checked(A: SymMatrix, res):
    # Never emit anything that does not re-verify against the input.
    if isinstance(res, SosCertificate):
        if not certifies_nonnegative(A, res):
            raise InternalVerificationError("certificate failed verification")
    elif res is not None and not res.check(A):
        raise InternalVerificationError("witness failed verification")
    return res


def _exit_for(cls) -> int:
    return EXIT_NONNEGATIVE if cls.nonnegative else EXIT_OTHER


def _evidence(A: SymMatrix, report: Dict[str, Any], lines: List[str]):
    cls, ev = classify_with_evidence(A)
    names = variable_names(A.n)
    if ev.certificate is not None:
        target = negate(A) if ev.of_negation else A
        _checked(target, ev.certificate)
        lhs = "-Q" if ev.of_negation else "Q"
        lines.append(f"certificate: {lhs} = {render_certificate(ev.certificate, names)}")
        report["evidence"] = {
            "kind": "certificate",
            "of_negation": ev.of_negation,
            "verified": True,
            **certificate_json(ev.certificate),
        }
    else:
        _checked(A, ev.positive)
        _checked(A, ev.negative)
        lines.append(f"positive witness: {_witness_text(ev.positive)}")
        lines.append(f"negative witness: {_witness_text(ev.negative)}")
        report["evidence"] = {
            "kind": "witnesses",
            "positive": witness_json(ev.positive),
            "negative": witness_json(ev.negative),
        }
    return cls


def process(command: str, A: SymMatrix, args) -> tuple[int, Dict[str, Any], List[str]]:
    """Run one command on one matrix; returns (exit code, JSON report, text lines)."""
    report: Dict[str, Any] = {
        "command": command,
        "matrix": [_vec(r) for r in A.rows],
        "form": render_form(A),
    }
    lines: List[str] = []

    if command == "classify":
        cls = classify(A)
        lines.append(str(cls))
        report["class"] = cls.value
        _evidence(A, report, lines)

    elif command == "certify":
        cls = classify(A)
        res = _checked(A, psd_certificate(A))
        lines.append(str(cls))
        report["class"] = cls.value
        if isinstance(res, SosCertificate):
            lines.append(f"certificate: Q = {render_certificate(res)}")
            lines.append("verified: exact coefficient match, all weights >= 0")
            report["certificate"] = {**certificate_json(res), "verified": True}
        else:
            lines.append(f"not nonnegative; witness: {_witness_text(res)}")
            report["witness"] = witness_json(res)
            if cls.nonpositive:
                neg = _checked(negate(A), psd_certificate(negate(A)))
                lines.append(f"certificate: -Q = {render_certificate(neg)}")
                report["certificate_of_negation"] = {**certificate_json(neg), "verified": True}

    elif command == "witness":
        cls = classify(A)
        neg = None
        if A.n == 3:
            neg = negative_witness_ternary(A)
        if neg is None:
            res = psd_certificate(A)
            neg = res if isinstance(res, Witness) else None
        pos = positive_witness(A)
        _checked(A, neg)
        _checked(A, pos)
        lines.append(str(cls))
        lines.append(f"negative witness: {_witness_text(neg) if neg else 'none (Q >= 0)'}")
        lines.append(f"positive witness: {_witness_text(pos) if pos else 'none (Q <= 0)'}")
        report["class"] = cls.value
        report["negative"] = witness_json(neg)
        report["positive"] = witness_json(pos)

    elif command == "minors":
        cls = classify(A)
        lm = leading_minors(A)
        lines.append("Δ: " + ", ".join(_vec(lm)))
        report["class"] = cls.value
        report["leading_minors"] = _vec(lm)
        if args.all:
            table = all_principal_minors(A)
            for S, v in table.items():
                lines.append(f"{{{','.join(map(str, S))}}}: {fmt(v)}")
            report["principal_minors"] = [{"indices": list(S), "value": fmt(v)} for S, v in table.items()]
        lines.append(f"class: {cls}")

    elif command == "hessian":
        cls = classify(A)
        verdict = classify_critical_point(A)
        lines.append(str(verdict))
        lines.append(f"Hessian class: {cls}")
        report["class"] = cls.value
        report["verdict"] = verdict.value

    elif command == "oracle":
        cls = classify(A)
        spec = spectrum_classify(A)
        hit = _checked(A, sampling_refute(A, args.trials, args.seed))
        lines.append(f"exact:    {cls}")
        lines.append(f"spectrum: {spec.label}  eigenvalues {', '.join(f'{e:.12g}' for e in spec.eigenvalues)}")
        lines.append(f"sampling: {_witness_text(hit) if hit else f'no negative value in {args.trials} trials'}")
        if spec.verdict is not None and spec.verdict is not cls:
            lines.append("warning: float oracle disagrees with the exact class; the exact class stands")
        report["class"] = cls.value
        report["oracle"] = {
            "eigenvalues": spec.eigenvalues,
            "zero_threshold": spec.zero_threshold,
            "verdict": spec.label,
            "agrees": spec.verdict is None or spec.verdict is cls,
            "sampling_witness": witness_json(hit),
            "trials": args.trials,
            "seed": args.seed,
        }

    else:  # argparse guards this
        raise InputError(f"unknown command {command!r}")

    code = _exit_for(cls)
    report["exit_code"] = code
    return code, report, lines


def _read_single(args, stdin) -> SymMatrix:
    if args.matrix is not None:
        return parse_matrix(args.matrix)
    if args.form is not None:
        return parse_form(args.form)
    if args.file is not None:
        with open(args.file, encoding="utf-8") as fh:
            return parse_input(fh.read())
    return parse_input(stdin.read())


def _batch_entries(path: str) -> List[str]:
    with open(path, encoding="utf-8") as fh:
        return [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="quadcert",
        description="Classify quadratic forms by definiteness, with exact certificates.",
    )
    p.add_argument("command", choices=COMMANDS)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--matrix", help='rows split by ";" or newlines, e.g. "2 1; 1 2"')
    src.add_argument("--form", help='polynomial, e.g. "2x^2 + 2xy + 2y^2"')
    src.add_argument("--file", help="file holding one matrix or form")
    src.add_argument("--batch", help="file with one matrix (';' rows) or form per line")
    p.add_argument("--all", action="store_true", help="minors: print every principal minor")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--seed", type=int, default=0, help="oracle: sampling seed")
    p.add_argument("--trials", type=int, default=100, help="oracle: sampling trials")
    return p


def _glue_values(argv: List[str]) -> List[str]:
    # "--form -y^2" would otherwise be read as an unknown option
    out = []
    it = iter(argv)
    for a in it:
        if a in _VALUE_FLAGS:
            v = next(it, None)
            out.append(a if v is None else f"{a}={v}")
        else:
            out.append(a)
    return out


def run(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    argv = _glue_values(list(sys.argv[1:] if argv is None else argv))
    try:
        with contextlib.redirect_stderr(stderr), contextlib.redirect_stdout(stdout):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else 0
    if args.trials < 1:
        print("error: --trials must be >= 1", file=stderr)
        return EXIT_INPUT

    if args.batch is None:
        try:
            A = _read_single(args, stdin)
        except (ValueError, IndexError, OSError) as exc:
            print(f"error: {exc}", file=stderr)
            return EXIT_INPUT
        try:
            code, report, lines = process(args.command, A, args)
        except InternalVerificationError as exc:
            print(f"internal verification failure: {exc}", file=stderr)
            return EXIT_INTERNAL
        if args.json:
            print(json.dumps(report, indent=2), file=stdout)
        else:
            print("\n".join(lines), file=stdout)
        return code

    try:
        entries = _batch_entries(args.batch)
    except OSError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    worst = 0
    reports = []
    for k, text in enumerate(entries, 1):
        try:
            code, report, lines = process(args.command, parse_input(text), args)
        except InternalVerificationError as exc:
            print(f"entry {k}: internal verification failure: {exc}", file=stderr)
            code, report, lines = EXIT_INTERNAL, {"input": text, "error": str(exc)}, []
        except (ValueError, IndexError) as exc:
            print(f"entry {k}: error: {exc}", file=stderr)
            code, report, lines = EXIT_INPUT, {"input": text, "error": str(exc)}, []
        report["input"] = text
        report["exit_code"] = code
        reports.append(report)
        worst = max(worst, code)
        if not args.json and lines:
            print(f"[{k}] {text}", file=stdout)
            print("\n".join("    " + ln for ln in lines), file=stdout)
    if args.json:
        print(json.dumps(reports, indent=2), file=stdout)
    return worst


def main() -> None:
    sys.exit(run())
