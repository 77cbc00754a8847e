"""Command-line front end: ``tropopt solve`` and ``tropopt verify``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from . import oracle, projectfile
from .errors import (
    ParseError,
    TropicalError,
    UnsupportedConstraintCombination,
    ValidationError,
)
from .scheduling import ProjectSpec, ScheduleResult, solve_project
from .semifield import max_plus

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_INFEASIBLE = 3
EXIT_UNSUPPORTED = 4


def _vec(result_vec, sf) -> list[str]:
    return [sf.fmt(a) for a in result_vec.entries()]


def result_to_dict(project: ProjectSpec, result: ScheduleResult) -> dict:
    sf = project.sf
    names = projectfile.activity_names(project)
    gen = result.solutions
    out = {
        "problem": result.problem_class,
        "activities": list(names),
        "makespan": sf.fmt(result.makespan),
        "generator": {
            "star": gen.star.to_lists(),
            "u_low": None if gen.scale_free else _vec(gen.u_low, sf),
            "u_high": None if gen.u_high is None else _vec(gen.u_high, sf),
            "scale_free": gen.scale_free,
        },
        "schedule": dict(zip(names, _vec(result.earliest_x, sf))),
        "completions": dict(zip(names, _vec(result.completions_y, sf))),
    }
    if result.u is not None:
        out["schedule_u"] = _vec(result.u, sf)
    if result.box is not None:
        out["box"] = {"lower": _vec(result.box.lower, sf), "upper": _vec(result.box.upper, sf)}
    return out


def format_text(project: ProjectSpec, result: ScheduleResult) -> str:
    d = result_to_dict(project, result)
    gen = d["generator"]
    lines = [
        f"problem: {d['problem']} ({project.n} activities)",
        f"minimum makespan: {d['makespan']}",
        "optimal schedules x = S u with S =",
    ]
    lines += ["  " + line for line in str(result.solutions.star).splitlines()]
    if gen["scale_free"]:
        lines.append("  u: any finite vector")
    else:
        low = "(" + ", ".join(gen["u_low"]) + ")"
        if gen["u_high"]:
            lines.append(f"  u: {low} <= u <= ({', '.join(gen['u_high'])})")
        else:
            lines.append(f"  u: u >= {low}")
    if "box" in d:
        lines.append(
            f"equivalently a + ({', '.join(d['box']['lower'])}) <= x <= "
            f"a + ({', '.join(d['box']['upper'])}) for any real a"
        )
    width = max(len(n) for n in d["activities"])
    lines.append("schedule:")
    for name in d["activities"]:
        lines.append(f"  {name.ljust(width)}  start {d['schedule'][name]:>6}  "
                     f"finish {d['completions'][name]:>6}")
    return "\n".join(lines)


def _load(path, backend: str, eps: float) -> ProjectSpec:
    return projectfile.load(path, max_plus(backend, eps))


def _fail(exc: TropicalError) -> tuple[int, str]:
    if isinstance(exc, (ParseError, ValidationError)):
        code = EXIT_INPUT
    elif isinstance(exc, UnsupportedConstraintCombination):
        code = EXIT_UNSUPPORTED
    else:
        code = EXIT_INFEASIBLE
    return code, f"error ({type(exc).__name__}): {exc}"


def cmd_solve(path, fmt: str = "text", backend: str = "rational", eps: float = 1e-9) -> tuple[int, str]:
    try:
        project = _load(path, backend, eps)
        result = solve_project(project)
    except TropicalError as exc:
        return _fail(exc)
    if fmt == "json":
        return EXIT_OK, json.dumps(result_to_dict(project, result), indent=2)
    return EXIT_OK, format_text(project, result)


def cmd_verify(path, samples: int = 10_000, seed: int = 0, fmt: str = "text",
               backend: str = "rational", eps: float = 1e-9,
               tamper: Callable[[ScheduleResult], ScheduleResult] | None = None) -> tuple[int, str]:
    """Solve, then check the answer with the oracle.

    ``tamper`` lets tests corrupt the solver output before it is checked.
    """
    try:
        project = _load(path, backend, eps)
        result = solve_project(project)
    except TropicalError as exc:
        return _fail(exc)
    if tamper is not None:
        result = tamper(result)
    reports = [oracle.sample_check(result.problem, result.makespan, result.solutions, samples, seed)]
    data = list(project.C.entries()) + [
        a for v in (project.D, project.g, project.f) if v is not None for a in v.entries()
    ]
    box = oracle.schedule_grid_box(project)
    if project.sf.exact and project.n <= oracle.MAX_GRID_DIM and oracle.integer_box(data) and box:
        try:
            reports.append(oracle.grid_check(result.problem, box[0], box[1], result.makespan))
        except TropicalError:
            pass
    passed = all(r.passed for r in reports)
    if fmt == "json":
        text = json.dumps({"passed": passed, "reports": [r.to_dict() for r in reports]}, indent=2)
    else:
        lines = []
        for r in reports:
            status = "ok" if r.passed else "FAILED"
            lines.append(
                f"{r.kind} check: {status}  claimed {r.claimed}, best found {r.best} "
                f"({r.feasible_samples} feasible of {r.samples}, {r.member_samples} set members)"
            )
            lines += ["  " + v for v in r.violations]
            if r.violation_count > len(r.violations):
                lines.append(f"  ... {r.violation_count - len(r.violations)} more")
        lines.append("verified" if passed else "verification FAILED")
        text = "\n".join(lines)
    return (EXIT_OK if passed else EXIT_VIOLATION), text


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=("rational", "float"), default="rational")
    common.add_argument("--float-eps", type=float, default=1e-9, metavar="EPS",
                        help="comparison tolerance of the float backend")
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="tropopt", description="Minimum-makespan scheduling in max-plus algebra")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("solve", parents=[common], help="solve a project file")
    p.add_argument("file")
    p = sub.add_parser("verify", parents=[common], help="solve and cross-check with the brute-force oracle")
    p.add_argument("file")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "solve":
        code, text = cmd_solve(args.file, args.format, args.backend, args.float_eps)
    else:
        code, text = cmd_verify(args.file, args.samples, args.seed, args.format,
                                args.backend, args.float_eps)
    failed = code not in (EXIT_OK, EXIT_VIOLATION)
    print(text, file=sys.stderr if failed else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
