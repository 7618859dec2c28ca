"""Command-line entry point.

Exit codes: 0 the property holds (or the command succeeded), 1 the property
fails, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Any, Callable, Sequence

from . import __version__
from .algebra import FuzzyMatrix
from .automaton import FuzzyAutomaton, eval_generated, eval_marked, parallel_compose
from .errors import FDESError, ModelFormatError
from .io import (
    REPORT_SCHEMA_VERSION,
    content_hash,
    dump_report,
    matrix_to_strings,
    model_to_dict,
    parse_model,
    serialize_model,
)
from .simulation import (
    SimulationWitness,
    check_simulation,
    find_simulation,
    greatest_simulation,
)
from .synthesis import (
    SynthesisReport,
    UncontrollabilityMap,
    build_plus,
    check_range,
    check_target,
    is_uc_compatible,
    language_controllability_violation,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Inputs:
    """Models read for one invocation, with their content hashes."""

    def __init__(self) -> None:
        self.records: list[dict[str, str]] = []

    def load(self, arg: str) -> tuple[FuzzyAutomaton, UncontrollabilityMap | None]:
        path = Path(arg)
        if not path.exists() and path.suffix != ".json":
            alt = path.with_name(path.name + ".json")
            if alt.exists():
                path = alt
        try:
            data = path.read_bytes()
        except OSError as exc:
            raise ModelFormatError(f"{arg}: {exc.strerror or exc}") from None
        try:
            g, uc = parse_model(data)
        except FDESError as exc:
            raise ModelFormatError(f"{path}: {exc}") from None
        self.records.append({"path": str(path), "name": g.name, "hash": content_hash(data)})
        return g, uc


def _pick_uc(*pairs: tuple[FuzzyAutomaton, UncontrollabilityMap | None]) -> UncontrollabilityMap:
    found = [(g, uc) for g, uc in pairs if uc is not None]
    if not found:
        raise ModelFormatError(
            "no model document carries an 'uncontrollability' map"
        )
    base = found[0][1]
    for g, uc in found[1:]:
        for label in uc:
            if label in base and base[label] != uc[label]:
                raise ModelFormatError(
                    f"conflicting uncontrollability for event {label!r}: "
                    f"{base[label]} vs {uc[label]} in {g.name!r}"
                )
    return base


def _witness_doc(w: SimulationWitness | None) -> dict[str, Any] | None:
    if w is None:
        return None
    return {
        "method": w.method,
        "direction": list(w.direction),
        "phi": matrix_to_strings(w.phi),
    }


def _fmt_matrix(m: FuzzyMatrix, indent: str = "  ") -> str:
    cells = m.to_strings()
    width = max(len(c) for row in cells for c in row)
    return "\n".join(indent + " ".join(c.rjust(width) for c in row) for row in cells)


def _synthesis_doc(rep: SynthesisReport) -> dict[str, Any]:
    return {
        "condition1": {
            "description": rep.condition1.description,
            "holds": rep.condition1.holds,
            "witness": _witness_doc(rep.condition1.witness),
        },
        "condition2": {
            "description": rep.condition2.description,
            "holds": rep.condition2.holds,
            "witness": _witness_doc(rep.condition2.witness),
        },
    }


def _synthesis_text(rep: SynthesisReport) -> list[str]:
    lines = [f"verdict: {rep.verdict}"]
    for key, cond in (("condition1", rep.condition1), ("condition2", rep.condition2)):
        lines.append(f"{key} ({cond.description}): {'holds' if cond.holds else 'FAILS'}")
    if rep.failing:
        lines.append("failed: " + ", ".join(rep.failing))
    if rep.supervisor is not None:
        lines.append(f"supervisor: {rep.supervisor.name} ({rep.supervisor.states} states)")
    return lines


# Each handler returns (exit code, verdict string, result payload, text lines).
Handler = Callable[[argparse.Namespace, _Inputs], tuple[int, str, dict[str, Any], list[str]]]


def _cmd_validate(args, inputs):
    g, uc = inputs.load(args.model)
    result: dict[str, Any] = {
        "states": g.states,
        "events": list(g.alphabet),
        "crisp": g.is_crisp(),
        "has_uncontrollability": uc is not None,
    }
    lines = [
        f"{g.name}: {g.states} states, events {', '.join(g.alphabet) or '(none)'}",
        f"crisp: {'yes' if g.is_crisp() else 'no'}",
    ]
    if uc is not None:
        compat = is_uc_compatible(g, uc)
        result["uc_compatible"] = compat
        lines.append(f"uc-compatible: {'yes' if compat else 'no'}")
    return EXIT_OK, "valid", result, lines


def _write_model(path: str, g: FuzzyAutomaton, uc: UncontrollabilityMap | None) -> None:
    try:
        Path(path).write_text(serialize_model(g, uc), encoding="utf-8")
    except OSError as exc:
        raise ModelFormatError(f"{path}: {exc.strerror or exc}") from None


def _cmd_compose(args, inputs):
    p1, p2 = inputs.load(args.model1), inputs.load(args.model2)
    g = parallel_compose(p1[0], p2[0])
    uc = None
    if p1[1] is not None or p2[1] is not None:
        _pick_uc(p1, p2)  # rejects conflicting degrees
        merged = {a: m[a] for _, m in (p2, p1) if m is not None for a in m}
        if set(merged) == set(g.alphabet):
            uc = UncontrollabilityMap(merged)
    _write_model(args.output, g, uc)
    return EXIT_OK, "written", {"output": args.output, "states": g.states}, [
        f"wrote {g.name} ({g.states} states) to {args.output}"
    ]


def _cmd_lang(args, inputs):
    g, _ = inputs.load(args.model)
    s = tuple(x.strip() for x in args.string.split(",") if x.strip()) if args.string else ()
    value = eval_marked(g, s) if args.marked else eval_generated(g, s)
    kind = "marked" if args.marked else "generated"
    label = ",".join(s) if s else "ε"
    return EXIT_OK, str(value), {"string": list(s), "kind": kind, "value": str(value)}, [
        f"L_{kind}({label}) = {value}"
    ]


def _cmd_sim(args, inputs):
    g1, _ = inputs.load(args.model1)
    g2, _ = inputs.load(args.model2)
    w = find_simulation(g1, g2, method=args.method)
    holds = w is not None
    result: dict[str, Any] = {"holds": holds, "method": args.method, "witness": _witness_doc(w)}
    lines = [f"{g1.name} <= {g2.name}: {'simulated' if holds else 'NOT simulated'} ({args.method})"]
    if holds and args.witness:
        lines.append("witness:")
        lines.append(_fmt_matrix(w.phi))
    if holds:
        result["recheck"] = check_simulation(g1, g2, w.phi).holds
    return (EXIT_OK if holds else EXIT_FAIL), ("simulated" if holds else "not_simulated"), result, lines


def _cmd_simeq(args, inputs):
    g1, _ = inputs.load(args.model1)
    g2, _ = inputs.load(args.model2)
    fwd = greatest_simulation(g1, g2)
    bwd = greatest_simulation(g2, g1)
    holds = fwd is not None and bwd is not None
    result = {
        "holds": holds,
        "forward": {"holds": fwd is not None, "witness": _witness_doc(fwd)},
        "backward": {"holds": bwd is not None, "witness": _witness_doc(bwd)},
    }
    lines = [
        f"{g1.name} <= {g2.name}: {'yes' if fwd else 'no'}",
        f"{g2.name} <= {g1.name}: {'yes' if bwd else 'no'}",
        f"equivalent: {'yes' if holds else 'no'}",
    ]
    return (EXIT_OK if holds else EXIT_FAIL), ("equivalent" if holds else "not_equivalent"), result, lines


def _cmd_plus(args, inputs):
    r, uc = inputs.load(args.model)
    uc = _pick_uc((r, uc))
    plus = build_plus(r, uc)
    _write_model(args.output, plus, uc)
    return EXIT_OK, "written", {"output": args.output, "states": plus.states}, [
        f"wrote {plus.name} ({plus.states} states) to {args.output}"
    ]


def _cmd_check_target(args, inputs):
    pg, pr = inputs.load(args.g), inputs.load(args.r)
    uc = _pick_uc(pg, pr)
    rep = check_target(pg[0], pr[0], uc)
    result = _synthesis_doc(rep)
    result["supervisor"] = None if rep.supervisor is None else _supervisor_doc(rep.supervisor, uc)
    return (EXIT_OK if rep.controllable else EXIT_FAIL), rep.verdict, result, _synthesis_text(rep)


def _cmd_check_range(args, inputs):
    pg, p1, p2 = inputs.load(args.g), inputs.load(args.r1), inputs.load(args.r2)
    uc = _pick_uc(pg, p1, p2)
    rep = check_range(pg[0], p1[0], p2[0], uc)
    result = _synthesis_doc(rep)
    result["supervisor"] = None if rep.supervisor is None else _supervisor_doc(rep.supervisor, uc)
    return (EXIT_OK if rep.controllable else EXIT_FAIL), rep.verdict, result, _synthesis_text(rep)


def _supervisor_doc(s: FuzzyAutomaton, uc: UncontrollabilityMap) -> dict[str, Any]:
    return model_to_dict(s, uc)


def _cmd_lang_controllable(args, inputs):
    pg, pr = inputs.load(args.g), inputs.load(args.r)
    uc = _pick_uc(pg, pr)
    violation = language_controllability_violation(pg[0], pr[0], uc)
    holds = violation is None
    result: dict[str, Any] = {"holds": holds, "counterexample": None}
    lines = [f"language-based controllable: {'yes' if holds else 'no'}"]
    if violation is not None:
        s, label = violation
        result["counterexample"] = {"string": list(s), "event": label}
        lines.append(f"violated after '{','.join(s) or 'ε'}' by event {label!r}")
    return (EXIT_OK if holds else EXIT_FAIL), ("controllable" if holds else "not_controllable"), result, lines


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report on stdout")

    parser = argparse.ArgumentParser(
        prog="fdes",
        description="Fuzzy simulation checking and supervisor synthesis for max-min automata.",
    )
    # separate dest: subparser defaults would otherwise clobber a leading --json
    parser.add_argument("--json", dest="json_global", action="store_true", help=argparse.SUPPRESS)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, handler: Handler, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help, parents=[common])
        p.set_defaults(handler=handler)
        return p

    p = add("validate", _cmd_validate, "parse and summarise a model")
    p.add_argument("model")

    p = add("compose", _cmd_compose, "parallel composition of two models")
    p.add_argument("model1")
    p.add_argument("model2")
    p.add_argument("-o", "--output", required=True)

    p = add("lang", _cmd_lang, "evaluate the generated or marked language on a string")
    p.add_argument("model")
    p.add_argument("--string", default="", help="comma-separated event labels (empty = ε)")
    p.add_argument("--marked", action="store_true")

    p = add("sim", _cmd_sim, "decide whether model1 is simulated by model2")
    p.add_argument("model1")
    p.add_argument("model2")
    p.add_argument("--method", choices=("fixpoint", "exhaustive"), default="fixpoint")
    p.add_argument("--witness", action="store_true", help="print the witnessing relation")

    p = add("simeq", _cmd_simeq, "decide simulation equivalence")
    p.add_argument("model1")
    p.add_argument("model2")

    p = add("plus", _cmd_plus, "build the uc-compatible supervisor candidate R+")
    p.add_argument("model")
    p.add_argument("-o", "--output", required=True)

    p = add("check-target", _cmd_check_target, "supervisor existence for G || S ~ R")
    p.add_argument("g")
    p.add_argument("r")

    p = add("check-range", _cmd_check_range, "supervisor existence for R1 <= G || S <= R2")
    p.add_argument("g")
    p.add_argument("r1")
    p.add_argument("r2")

    p = add("lang-controllable", _cmd_lang_controllable, "fuzzy language-based controllability")
    p.add_argument("g")
    p.add_argument("r")
    return parser


def run_cli(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE

    inputs = _Inputs()
    started = time.perf_counter()
    try:
        code, verdict, result, lines = args.handler(args, inputs)
    except FDESError as exc:
        print(f"fdes {args.command}: error: {exc}", file=stderr)
        return EXIT_USAGE
    elapsed = time.perf_counter() - started

    if args.json or args.json_global:
        report = {
            "schema": REPORT_SCHEMA_VERSION,
            "command": args.command,
            "inputs": inputs.records,
            "exit_code": code,
            "verdict": verdict,
            "result": result,
            "timing": {"seconds": round(elapsed, 6)},
        }
        print(dump_report(report), file=stdout)
    else:
        for line in lines:
            print(line, file=stdout)
    return code


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
