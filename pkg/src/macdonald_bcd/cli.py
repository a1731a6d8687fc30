"""Command-line interface: compute, verify and specialize."""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from . import macdonald as mac
from . import qseries as qs
from . import transition as tr
from .report import FAIL, VerificationReport
from .rootsys import RootSystem, build
from .scalars import Scalar

CACHE_ENV = "MACDONALD_BCD_CACHE"
MAX_N, MAX_R = 3, 6
TYPES = ("B", "C", "D")
SUITES = ("qseries", "matrices", "weyl", "theorem4", "theorem5", "conjectures",
          "specialization", "orthogonality", "all")
BASES = ("a", "T-half", "T", "one")
INNER_POINTS = ((1, 1), (1, 2), (2, 1))


class UsageError(Exception):
    pass


# -- tasks ---------------------------------------------------------------------------
# A task is (module name, function name, positional args, keyword args); tasks are
# plain tuples so that worker processes can receive them.
_MODULES = {"mac": mac, "qs": qs, "tr": tr}


def run_task(task) -> VerificationReport:
    mod, name, args, kwargs = task
    args = tuple(RootSystem(*a[1:]) if isinstance(a, tuple) and a and a[0] == "R" else a for a in args)
    start = time.perf_counter()
    report = getattr(_MODULES[mod], name)(*args, **kwargs)
    report.wall_time = time.perf_counter() - start
    return report


def _R(type_: str, n: int) -> tuple:
    return ("R", type_, n)


def _qseries_tasks(max_n, max_r, seed):
    out = []
    for r in range(max_r + 1):
        for name in ("theorem1_check", "theorem2_check", "theorem3_check", "lemma7_check"):
            out.append(("qs", name, (r,), {"seed": seed}))
        out.append(("qs", "lemma9_check", (r,), {"seed": seed}))
        for oracle in sorted(qs.ORACLES):
            out.append(("qs", "oracle_check", (oracle, r), {"seed": seed}))
    out.append(("qs", "q_binomial_check", (max_r,), {"seed": seed}))
    for r in range(min(max_r, 2) + 1):
        for name in ("theorem1_check", "theorem2_check", "theorem3_check", "lemma7_check"):
            out.append(("qs", name, (r,), {"symbolic": True}))
    return out


def _matrix_tasks(max_n, max_r, seed):
    size = 2 * max_r
    out = [("tr", "mutual_inverse_check", (tag, size), {"seed": seed}) for tag in tr.FAMILIES]
    out += [("tr", "bressoud_reduction_check", (r, d), {"seed": seed}) for d in (0, 1) for r in range(max_r + 1)]
    out.append(("tr", "lemma1_rescaling_check", (size,), {"seed": seed}))
    out.append(("tr", "theorem23_matrix_check", (max_r + 2,), {"seed": seed}))
    out.append(("tr", "composition_check", (max_r + 2,), {}))
    out += [("tr", "coherence_check", (k, n, max_r + 1), {}) for k in (1, 2, 3, 4) for n in range(2, max_n + 1)]
    return out


def _weyl_tasks(max_n, max_r, seed):
    return [("mac", "weyl_character_check", (_R(t, n), r), {})
            for t in TYPES for n in range(2, max_n + 1) for r in range(max_r + 1)]


def _theorem4_tasks(max_n, max_r, seed):
    out = [("mac", "theorem4_check", (n, r), {}) for n in range(1, max_n + 1) for r in range(max_r + 1)]
    out += [("mac", "generating_product_check", (n, max_r), {}) for n in range(1, max_n + 1)]
    return out


def _theorem5_tasks(max_n, max_r, seed):
    out = [("mac", "theorem5_check", (n,), {}) for n in range(1, max_n + 1)]
    out += [("mac", "theorem5_check", (n, "sampled"), {"seed": seed}) for n in range(1, max_n + 3)]
    out += [("mac", "lemma8_check", (n,), {}) for n in range(1, max_n + 2)]
    out += [("mac", "lemma2_check", (n, r), {}) for n in range(1, max_n + 1) for r in range(max_r + 1)]
    return out


def _conjecture_tasks(max_n, max_r, seed):
    out = []
    for k in (1, 2, 3, 4):
        for n in range(tr.MIN_RANK[k], max_n + 1):
            for r in range(max_r + 1):
                for d in ("forward", "converse"):
                    out.append(("tr", "conjecture_check", (k, n, r, d), {}))
    for n in range(tr.MIN_RANK[5], max_n + 1):
        for r in range(max_r + 1):
            for d in ("forward", "converse"):
                out.append(("tr", "conjecture5_coefficients_check", (n, r, d), {}))
                out.append(("tr", "conjecture5_check", (n, r, d), {}))
    for k in (1, 2, 4):
        for n in range(tr.MIN_RANK[k], max_n + 1):
            out += [("tr", "degeneration_check", (k, n, r), {}) for r in range(max_r + 1)]
    for n in range(2, max_n + 1):
        out += [("tr", "lemma5_check", (n, r), {}) for r in range(max_r + 1)]
        out.append(("tr", "lemma5_check", (n, max_r), {"mode": "sampled", "seed": seed}))
    return out


def _specialization_tasks(max_n, max_r, seed):
    out = []
    for t in TYPES:
        for n in range(2, max_n + 1):
            for r in range(max_r + 1):
                out.append(("mac", "specialization_check", (_R(t, n), r), {}))
                out.append(("mac", "principal_g_checks", (_R(t, n), r), {}))
                out.append(("mac", "eigenvalue_ratio_check", (_R(t, n), r), {}))
    return out


def _orthogonality_tasks(max_n, max_r, seed):
    return [("mac", "orthogonality_check", (_R(t, n), r, k, K), {})
            for t in TYPES for n in range(2, max_n + 1) for r in range(max_r + 1) for k, K in INNER_POINTS]


SUITE_TASKS = {
    "qseries": _qseries_tasks,
    "matrices": _matrix_tasks,
    "weyl": _weyl_tasks,
    "theorem4": _theorem4_tasks,
    "theorem5": _theorem5_tasks,
    "conjectures": _conjecture_tasks,
    "specialization": _specialization_tasks,
    "orthogonality": _orthogonality_tasks,
}


def suite_tasks(suite: str, max_n: int, max_r: int, seed: int) -> list:
    names = [s for s in SUITES if s != "all"] if suite == "all" else [suite]
    out = []
    for name in names:
        out += SUITE_TASKS[name](max_n, max_r, seed)
    return out


def run_suite(suite, max_n, max_r, seed, jobs=1, out=None, timing=False) -> int:
    """Stream one JSON line per task; return the number of fail verdicts."""
    out = sys.stdout if out is None else out
    tasks = suite_tasks(suite, max_n, max_r, seed)
    failures = 0
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = pool.map(run_task, tasks)
            for report in reports:
                failures += report.verdict == FAIL
                print(report.to_line(timing), file=out, flush=True)
    else:
        for task in tasks:
            report = run_task(task)
            failures += report.verdict == FAIL
            print(report.to_line(timing), file=out, flush=True)
    return failures


# -- compute -------------------------------------------------------------------------
def _gens_tag(gens) -> str:
    return "-".join(gens.names)


def cache_path(cache_dir: Path, type_: str, n: int, r: int) -> Path:
    gens = _gens_tag(mac.GENS)
    return Path(cache_dir) / __version__ / f"{type_}{n}_r{r}_{gens}.json"


def computed_record(type_: str, n: int, r: int, cache_dir: Path | None = None) -> dict:
    """Serialized P_{r omega_1} and g_r, read from or written to the cache."""
    path = cache_path(cache_dir, type_, n, r) if cache_dir else None
    if path is not None and path.exists():
        return json.loads(path.read_text())
    R = build(type_, n, allow_rank_one=True)
    P = mac.macdonald_P(R, r)
    record = P.to_json()
    record["version"] = __version__
    record["g_r"] = [[list(mu), c.to_json()] for mu, c in mac.g_r(R, r).items()]
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(record, sort_keys=True, separators=(",", ":")))
        tmp.replace(path)
    return record


_SQRT_GEN = re.compile(r"s([qtTU])(?:\^(\d+))?")


def _latex_power(m: re.Match) -> str:
    e = Fraction(int(m.group(2) or 1), 2)
    if e == 1:
        return m.group(1)
    return f"{m.group(1)}^{{{e}}}"


def _latex_scalar(s: Scalar) -> str:
    return _SQRT_GEN.sub(_latex_power, str(s)).replace("*", " ")


def render(record: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(record, sort_keys=True, separators=(",", ":"))
    lines = []
    for label, key in (("P", "terms"), ("g", "g_r")):
        for mu, c in record[key]:
            s = Scalar.from_json(c)
            weight = ",".join(map(str, mu))
            if fmt == "latex":
                lines.append(f"{label}: \\left({_latex_scalar(s)}\\right) m_{{({weight})}}")
            else:
                lines.append(f"{label} m({weight}): {s}")
    ev = Scalar.from_json(record["eigenvalue"])
    lines.append(f"eigenvalue: {_latex_scalar(ev) if fmt == 'latex' else ev}")
    return "\n".join(lines)


def _check_limits(n: int, r: int, override: bool):
    if not override and (n > MAX_N or r > MAX_R):
        raise UsageError(f"(n, r) = ({n}, {r}) exceeds the limits n <= {MAX_N}, r <= {MAX_R}; "
                         "pass --override-limits to proceed")


def cmd_compute(args) -> int:
    _check_limits(args.rank, args.r, args.override_limits)
    cache = args.cache or os.environ.get(CACHE_ENV)
    record = computed_record(args.type, args.rank, args.r, Path(cache) if cache else None)
    print(render(record, args.format))
    return 0


def cmd_verify(args) -> int:
    _check_limits(args.max_n, args.max_r, args.override_limits)
    failures = run_suite(args.suite, args.max_n, args.max_r, args.seed, args.jobs, timing=args.timing)
    return 1 if failures else 0


def specialize_value(type_: str, n: int, r: int, base: str) -> dict:
    R = build(type_, n, allow_rank_one=True)
    point = {"a": mac.A_, "T-half": mac.STT, "T": mac.TT, "one": Scalar(1)}[base]
    value = mac.principal(mac.g_r(R, r), point)
    out = {"type": type_, "n": n, "r": r, "base": base, "value": value.to_json(), "string": str(value)}
    corner = {"C": "T-half", "B": "T", "D": "one"}[type_]
    if base == corner:
        out["matches_specialization_formula"] = value == mac.specialization_rhs(R, r)
    if base == "a":
        out["matches_closed_form"] = value == mac.principal_closed_form(R, r, mac.A_)
    return out


def cmd_specialize(args) -> int:
    _check_limits(args.rank, args.r, args.override_limits)
    print(json.dumps(specialize_value(args.type, args.rank, args.r, args.base), sort_keys=True,
                     separators=(",", ":")))
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="macdonald-bcd", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="P_{r omega_1} and g_r in the orbit-sum basis")
    p.add_argument("--type", required=True, choices=TYPES)
    p.add_argument("--rank", required=True, type=int)
    p.add_argument("--r", required=True, type=int)
    p.add_argument("--format", choices=("json", "text", "latex"), default="json")
    p.add_argument("--cache", help=f"cache directory (default: ${CACHE_ENV})")
    p.add_argument("--override-limits", action="store_true")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="run a verification suite, one JSON report per line")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--max-rank", "--max-n", dest="max_n", type=int, default=2)
    p.add_argument("--max-r", type=int, default=4)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timing", action="store_true", help="include wall time (output is then not reproducible)")
    p.add_argument("--override-limits", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("specialize", help="g_r at x_i = t^{n-i} base")
    p.add_argument("--type", required=True, choices=TYPES)
    p.add_argument("--rank", required=True, type=int)
    p.add_argument("--r", required=True, type=int)
    p.add_argument("--base", choices=BASES, default="a")
    p.add_argument("--override-limits", action="store_true")
    p.set_defaults(func=cmd_specialize)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    for name in ("rank", "r", "max_n", "max_r", "jobs"):
        if getattr(args, name, 1) < (0 if name == "r" or name == "max_r" else 1):
            parser.error(f"--{name.replace('_', '-')} out of range")
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"macdonald-bcd: error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the final flush
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 141


if __name__ == "__main__":
    raise SystemExit(main())
