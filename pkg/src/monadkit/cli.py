"""Command-line front end.

Every command reads JSON inputs, writes a JSON report with a
``schema_version`` field to stdout (or ``--out``), and exits with:

* 0 — success,
* 1 — internal error,
* 2 — semantic or validation failure,
* 3 — argument or input parse error.

Outputs are deterministic functions of the inputs and the seed.
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
from typing import List, Optional, Sequence

from .exterior import Multivector
from .extmatrix import ExtMatrix
from .fields import Field
from .linalg import ScalarMatrix
from .monad import Monad

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_SEMANTIC = 2
EXIT_PARSE = 3


class CliParseError(ValueError):
    """Bad command line or unreadable input file."""


class CliSemanticError(ValueError):
    """Input parsed but failed a mathematical check."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 3 instead of argparse's default 2
        raise CliParseError(message)


# ---------------------------------------------------------------------------
# I/O helpers


def _read_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise CliParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliParseError(f"invalid JSON in {path}: {exc}") from exc


def _load_monad(path: str) -> Monad:
    obj = _read_json(path)
    if "monad" in obj:  # accept a make-m report as input
        obj = obj["monad"]
    try:
        return Monad.from_json_obj(obj)
    except (KeyError, ValueError) as exc:
        raise CliParseError(f"not a monad file: {path}: {exc}") from exc


def _load_matrix(path: str) -> ExtMatrix:
    """A 2×2 grade-1 matrix from either a bare matrix file
    ({field, entries}) or the N of a monad file."""
    obj = _read_json(path)
    try:
        if "N" in obj:
            field = Field.from_json(obj["field"])
            return ExtMatrix.from_json_obj(field, obj["N"])
        field = Field.from_json(obj["field"])
        return ExtMatrix.parse(field, obj["entries"])
    except (KeyError, ValueError) as exc:
        raise CliParseError(f"not a matrix file: {path}: {exc}") from exc


def _parse_scalars(field: Field, text: str, n: int) -> List:
    parts = [p.strip() for p in text.replace(";", ",").split(",") if p.strip()]
    if len(parts) != n:
        raise CliParseError(f"expected {n} comma-separated scalars, got {len(parts)}")
    try:
        return [field.parse(p) for p in parts]
    except ValueError as exc:
        raise CliParseError(f"bad scalar: {exc}") from exc


def _parse_vectors(field: Field, text: str) -> List[Multivector]:
    parts = [p.strip() for p in text.split(";") if p.strip()]
    try:
        return [Multivector.parse(field, p) for p in parts]
    except ValueError as exc:
        raise CliParseError(f"bad vector: {exc}") from exc


def _scalar_matrix_obj(mat: ScalarMatrix) -> dict:
    return {
        "rows": mat.rows,
        "cols": mat.cols,
        "entries": [[mat.field.format(x) for x in row] for row in mat.entries],
    }


def _emit(report: dict, out: Optional[str]) -> None:
    report = {"schema_version": SCHEMA_VERSION, **report}
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Commands


def _cmd_validate(args) -> tuple[dict, int]:
    monad = _load_monad(args.file)
    rep = monad.validate()
    code = EXIT_OK if rep.in_x0 else EXIT_SEMANTIC
    return {"command": "validate", "report": rep.to_json_obj()}, code


def _cmd_normalize_n(args) -> tuple[dict, int]:
    from .normal_forms import ClassificationError, normalize_n

    n = _load_matrix(args.file)
    try:
        res = normalize_n(n)
    except ClassificationError as exc:
        raise CliSemanticError(str(exc)) from exc
    return {"command": "normalize-n", "result": res.to_json_obj()}, EXIT_OK


def _cmd_classify_n1(args) -> tuple[dict, int]:
    from .normal_forms import ClassificationError, classify_n1

    n1 = _load_matrix(args.file)
    try:
        res = classify_n1(n1)
    except ClassificationError as exc:
        raise CliSemanticError(str(exc)) from exc
    return {"command": "classify-n1", "result": res.to_json_obj()}, EXIT_OK


def _cmd_syzygy(args) -> tuple[dict, int]:
    from .syzygy import syzygy_space

    n = _load_matrix(args.file)
    space = syzygy_space(n)
    cols = space.column_matrix()
    return {
        "command": "syzygy",
        "dimension": space.dimension,
        "columns": None if cols is None else cols.to_json_obj(),
    }, EXIT_OK


def _cmd_make_m(args) -> tuple[dict, int]:
    from .syzygy import syzygy_space

    n = _load_matrix(args.file)
    space = syzygy_space(n)
    p = _parse_scalars(n.field, args.p, space.dimension)
    q = _parse_scalars(n.field, args.q, space.dimension)
    m = space.make_m(p, q)
    monad = Monad(m, n)
    rep = monad.validate()
    code = EXIT_OK if rep.in_x0 else EXIT_SEMANTIC
    return {
        "command": "make-m",
        "monad": monad.to_json_obj(),
        "report": rep.to_json_obj(),
    }, code


def _cmd_dual(args) -> tuple[dict, int]:
    from .dual import diagnose, dual_monad

    monad = _load_monad(args.file)
    if not monad.in_x0:
        raise CliSemanticError("monad fails validation")
    diag = diagnose(monad)
    result = dual_monad(monad)
    return {
        "command": "dual",
        "rank": diag.rank,
        "result": result.to_json_obj(),
    }, EXIT_OK


def _cmd_jump(args) -> tuple[dict, int]:
    from .lines import LineError, PlueckerLine, classify_line

    monad = _load_monad(args.file)
    vecs = _parse_vectors(monad.field, args.line)
    if len(vecs) != 2:
        raise CliParseError("--line expects two ';'-separated vectors")
    try:
        line = PlueckerLine.from_span(vecs[0], vecs[1])
    except LineError as exc:
        raise CliSemanticError(str(exc)) from exc
    res = classify_line(monad, line)
    return {
        "command": "jump",
        "line": line.to_json_obj(),
        "class": res.to_json_obj(),
    }, EXIT_OK


def _cmd_jump_strata(args) -> tuple[dict, int]:
    from .lines import classify_line, enumerate_lines, line_count

    monad = _load_monad(args.file)
    q = args.q
    if monad.field != Field.GF(q):
        raise CliSemanticError(f"monad must be over Fp:{q} for enumeration")
    histogram: dict = {}
    total = 0
    for line in enumerate_lines(q):
        cls = classify_line(monad, line)
        key = ",".join(str(a) for a in cls.splitting)
        histogram[key] = histogram.get(key, 0) + 1
        total += 1
        if args.quick and total >= 500:
            break
    report = {
        "command": "jump-strata",
        "q": q,
        "lines_seen": total,
        "expected_total": line_count(q),
        "histogram": dict(sorted(histogram.items())),
    }
    return report, EXIT_OK


def _cmd_splitting(args) -> tuple[dict, int]:
    from .normal_forms import span_basis
    from .restriction import RestrictionError, decompose_m, solve_splitting

    monad = _load_monad(args.file)
    dim, w_basis = span_basis(monad.n)
    if dim != 4:
        raise CliSemanticError("the entry span of N must be 4-dimensional")
    field = monad.field
    v0 = None
    for j in range(5):
        cand = Multivector.basis(field, (j,))
        coords = [w.coords(1) for w in w_basis] + [cand.coords(1)]
        if ScalarMatrix(field, coords).rank() == 5:
            v0 = cand
            break
    try:
        mprime, mdprime = decompose_m(monad.m, w_basis, v0)
        s = solve_splitting(mprime, mdprime, w_basis)
    except RestrictionError as exc:
        raise CliSemanticError(str(exc)) from exc
    if s is None:
        return {
            "command": "splitting",
            "found": False,
            "detail": "no splitting found at this point",
        }, EXIT_SEMANTIC
    return {
        "command": "splitting",
        "found": True,
        "mprime": mprime.to_json_obj(),
        "mdprime": mdprime.to_json_obj(),
        "s": s.to_json_obj(),
    }, EXIT_OK


def _cmd_smooth_check(args) -> tuple[dict, int]:
    from .moduli import jacobian, stabilizer_tangent_rank

    monad = _load_monad(args.file)
    jac = jacobian(monad.m, monad.n)
    rank = jac.rank()
    report = {
        "command": "smooth-check",
        "jacobian_rank": rank,
        "jacobian_shape": [jac.rows, jac.cols],
        "stabilizer_rank_n": stabilizer_tangent_rank(monad.n),
        "stabilizer_rank_mn": stabilizer_tangent_rank(monad.n, monad.m),
    }
    return report, EXIT_OK if rank == 20 else EXIT_SEMANTIC


def _cmd_stability(args) -> tuple[dict, int]:
    from .moduli import stability_sample

    monad = _load_monad(args.file)
    if not monad.in_x0:
        raise CliSemanticError("monad fails validation")
    rep = stability_sample(monad, trials=args.trials, seed=args.seed)
    code = EXIT_OK if rep.all_stable else EXIT_SEMANTIC
    return {"command": "stability", "report": rep.to_json_obj()}, code


def _cmd_det_quadric(args) -> tuple[dict, int]:
    from .moduli import ModuliError, det_quadric

    n = _load_matrix(args.file)
    try:
        gram, rank = det_quadric(n)
    except ModuliError as exc:
        raise CliSemanticError(str(exc)) from exc
    return {
        "command": "det-quadric",
        "gram": _scalar_matrix_obj(gram),
        "rank": rank,
    }, EXIT_OK


def _cmd_sample_strata(args) -> tuple[dict, int]:
    from .moduli import ModuliError, strata_sample

    trials = min(args.trials, 10_000) if args.quick else args.trials
    try:
        rep = strata_sample(args.q, trials=trials, seed=args.seed,
                            engine=args.engine)
    except ModuliError as exc:
        raise CliSemanticError(str(exc)) from exc
    code = EXIT_OK if rep.rank7_span_violations == 0 else EXIT_SEMANTIC
    return {"command": "sample-strata", "report": rep.to_json_obj()}, code


def _cmd_restrict(args) -> tuple[dict, int]:
    from .normal_forms import span_basis
    from .restriction import RestrictionError, h0_restriction, induced_p3_monad

    monad = _load_monad(args.file)
    if args.hyperplane:
        w_basis = _parse_vectors(monad.field, args.hyperplane)
        if len(w_basis) != 4:
            raise CliParseError("--hyperplane expects four ';'-separated vectors")
    else:
        dim, w_basis = span_basis(monad.n)
        if dim != 4:
            raise CliSemanticError("the entry span of N must be 4-dimensional")
    try:
        h0 = h0_restriction(monad, w_basis)
    except RestrictionError as exc:
        raise CliSemanticError(str(exc)) from exc
    report = {
        "command": "restrict",
        "h0": h0,
        "hyperplane": [str(w) for w in w_basis],
    }
    if h0 == 2 and not args.hyperplane:
        try:
            report["induced"] = induced_p3_monad(monad).to_json_obj()
        except RestrictionError as exc:
            report["induced"] = None
            report["detail"] = str(exc)
            return report, EXIT_SEMANTIC
    return report, EXIT_OK


def _cmd_scroll_test(args) -> tuple[dict, int]:
    from .normal_forms import ClassificationError, normalize_n
    from .restriction import RestrictionError, scroll_membership

    n = _load_matrix(args.file)
    try:
        tag = normalize_n(n).tag
    except ClassificationError as exc:
        raise CliSemanticError(str(exc)) from exc
    p = _parse_scalars(n.field, args.p, 10)
    try:
        res = scroll_membership(n.field, p, tag)
    except RestrictionError as exc:
        raise CliSemanticError(str(exc)) from exc
    return {
        "command": "scroll-test",
        "tag": tag,
        "result": res.to_json_obj(),
    }, EXIT_OK


def _cmd_reproduce(args) -> tuple[dict, int]:
    here = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
    test_file = os.path.join(here, "tests", "test_acceptance.py")
    if not os.path.exists(test_file):
        raise CliSemanticError(f"acceptance suite not found at {test_file}")
    env = dict(os.environ)
    if args.quick:
        env["MONADKIT_QUICK"] = "1"
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", test_file, "-v", "--no-header", "-rN"],
        capture_output=True,
        text=True,
        env=env,
    )
    rows = []
    for line in proc.stdout.splitlines():
        if "::" in line and ("PASSED" in line or "FAILED" in line or "ERROR" in line):
            name = line.split("::", 1)[1].split(" ")[0]
            status = "pass" if "PASSED" in line else "fail"
            rows.append({"criterion": name, "status": status})
            sys.stderr.write(f"{name}: {status}\n")
    code = EXIT_OK if proc.returncode == 0 else EXIT_SEMANTIC
    return {
        "command": "reproduce",
        "quick": bool(args.quick),
        "results": rows,
        "all_pass": proc.returncode == 0,
    }, code


# ---------------------------------------------------------------------------
# Argument parsing


def _build_parser() -> _Parser:
    parser = _Parser(prog="monadkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=func)
        p.add_argument("--out", help="write the JSON report to this path")
        p.add_argument("--field", default=None,
                       help="scalar field: Q or Fp:<prime>")
        p.add_argument("--seed", type=int, default=7)
        p.add_argument("--quick", action="store_true")
        return p

    add("validate", _cmd_validate).add_argument("file")
    add("normalize-n", _cmd_normalize_n).add_argument("file")
    add("classify-n1", _cmd_classify_n1).add_argument("file")
    add("syzygy", _cmd_syzygy).add_argument("file")
    p = add("make-m", _cmd_make_m)
    p.add_argument("file")
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    add("dual", _cmd_dual).add_argument("file")
    p = add("jump", _cmd_jump)
    p.add_argument("file")
    p.add_argument("--line", required=True,
                   help="two ';'-separated grade-1 vectors spanning the line")
    p = add("jump-strata", _cmd_jump_strata)
    p.add_argument("file")
    p.add_argument("--q", type=int, default=5)
    add("splitting", _cmd_splitting).add_argument("file")
    add("smooth-check", _cmd_smooth_check).add_argument("file")
    p = add("stability", _cmd_stability)
    p.add_argument("file")
    p.add_argument("--trials", type=int, default=500)
    p = add("det-quadric", _cmd_det_quadric)
    p.add_argument("file")
    p = add("sample-strata", _cmd_sample_strata)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--engine", choices=["numba", "python"], default="numba")
    p = add("restrict", _cmd_restrict)
    p.add_argument("file")
    p.add_argument("--hyperplane", default=None,
                   help="four ';'-separated grade-1 vectors spanning W")
    p = add("scroll-test", _cmd_scroll_test)
    p.add_argument("file")
    p.add_argument("--p", required=True, help="ten comma-separated scalars")
    add("reproduce", _cmd_reproduce)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    threads = os.environ.get("IML_THREADS")
    if threads and "NUMBA_NUM_THREADS" not in os.environ:
        os.environ["NUMBA_NUM_THREADS"] = threads
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        report, code = args.func(args)
    except CliParseError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except CliSemanticError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_SEMANTIC
    except ValueError as exc:
        # module-level validation errors (degenerate inputs etc.)
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_SEMANTIC
    except Exception as exc:  # noqa: BLE001 — report and exit 1
        sys.stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL
    _emit(report, args.out)
    return code


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
