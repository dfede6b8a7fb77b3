"""Command line interface: ``magicplanes <group> <command> ...``.

Data goes to stdout, diagnostics to stderr. Exit codes carry the verdict:
0 when the mathematical check succeeds, 1 on failure or domain error, 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import sys
from pathlib import Path

from . import acceptance, geometry, incidence, magic, oracle
from .gf import FieldError
from .groups import GroupError, labeling_from_json, verify


class CommandError(Exception):
    pass


def _emit(obj, args) -> None:
    if isinstance(obj, dict) and args.timestamps:
        obj = {**obj, "generated_at": _dt.datetime.now(_dt.timezone.utc).isoformat()}
    print(json.dumps(obj, indent=None if args.compact else 2))


def _write(path: str, text: str) -> None:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(text)


def _load_plane(path: str, fmt: str) -> geometry.Plane:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CommandError(f"cannot read {path}: {exc.strerror}") from None
    if fmt == "incidence":
        return geometry.from_incidence_text(text)
    try:
        return geometry.from_json(text)
    except json.JSONDecodeError as exc:
        raise CommandError(f"{path}: invalid JSON ({exc.msg})") from None


def _parse_moduli(text: str) -> list[int]:
    out: list[int] = []
    for part in text.split(","):
        lo, _, hi = part.partition("-")
        try:
            a = int(lo)
            b = int(hi) if hi else a
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad modulus list {text!r}") from None
        out.extend(range(a, b + 1))
    if not out or min(out) < 2:
        raise argparse.ArgumentTypeError("moduli must be >= 2")
    return out


# -- plane -------------------------------------------------------------------

def cmd_plane_build(args) -> int:
    plane = geometry.build_plane(args.q)
    text = plane.dumps() + "\n"
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_plane_check(args) -> int:
    plane = _load_plane(args.infile, args.format)
    rep = geometry.validate_axioms(plane)
    if args.json:
        _emit(rep.to_json(), args)
    else:
        print(rep.summary())
    return 0 if rep.ok else 1


def cmd_plane_matrix(args) -> int:
    plane = geometry.fano_plane() if args.q == 2 and args.textbook else geometry.build_plane(args.q)
    a = incidence.incidence_matrix(plane)
    g = incidence.gram(a) if (args.gram or args.figure) else None
    if args.gram:
        sys.stdout.write("".join(" ".join(map(str, r)) + "\n" for r in g))
    else:
        sys.stdout.write(a.text())
    if args.figure:
        from . import report
        report.incidence_figure(a, args.figure, g)
    if args.det:
        d = incidence.gram_determinant(a)
        print(f"det(AA^T) computed {d.computed} closed-form {d.closed_form} {'=' if d.agrees else '!='}")
        return 0 if d.agrees else 1
    return 0


# -- label -------------------------------------------------------------------

def _labeling_output(lab, args) -> None:
    rep = verify(lab)
    if getattr(args, "out", None):
        _write(args.out, lab.dumps() + "\n")
        _emit({"report": rep.to_json()}, args)
    else:
        _emit({"labeling": lab.to_json(), "report": rep.to_json()}, args)
    print(rep.text(), file=sys.stderr)


def cmd_label_vline(args) -> int:
    plane = geometry.build_plane(args.q)
    if not 0 <= args.line < plane.num_lines:
        raise CommandError(f"line index {args.line} out of range 0..{plane.num_lines - 1}")
    _labeling_output(magic.v_line(plane, args.line, args.mod), args)
    return 0


def cmd_label_magic(args) -> int:
    lab = magic.magic_labeling(geometry.build_plane(args.q))
    _labeling_output(lab, args)
    return 0 if verify(lab).classification == "magic" else 1


def cmd_label_product(args) -> int:
    lab = magic.product_magic(geometry.build_plane(args.q))
    _labeling_output(lab, args)
    return 0 if verify(lab).classification == "magic" else 1


def cmd_label_verify(args) -> int:
    plane = _load_plane(args.plane, args.plane_format)
    try:
        data = json.loads(Path(args.labeling).read_text())
    except OSError as exc:
        raise CommandError(f"cannot read {args.labeling}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise CommandError(f"{args.labeling}: invalid JSON ({exc.msg})") from None
    rep = verify(labeling_from_json(plane, data))
    _emit(rep.to_json(), args)
    print(rep.text(), file=sys.stderr)
    return 0 if rep.is_line_invariant else 1


# -- oracle ------------------------------------------------------------------

def cmd_oracle_cyclic(args) -> int:
    plane = geometry.build_plane(args.q)
    verdicts = [oracle.confirm_no_cyclic_magic(plane, m, args.bound) for m in args.mod]
    sys.stdout.write(oracle.render_csv(verdicts))
    if args.figure:
        from . import report
        report.cyclic_figure(verdicts, args.figure)
    return 0 if all(v.matches_prediction for v in verdicts) else 1


def cmd_oracle_acceptance(args) -> int:
    if args.timestamps:
        print(f"# {_dt.datetime.now(_dt.timezone.utc).isoformat()}")
    ok = True
    for num, *_ in acceptance.CRITERIA:
        r = acceptance.run_criterion(num)
        print(r.line() if args.timings else r.line().rsplit(" [", 1)[0], flush=True)
        ok &= r.passed
    return 0 if ok else 1


def cmd_oracle_spot(args) -> int:
    checks = oracle.spot_check_derived()
    sys.stdout.write(oracle.render_checks_csv(checks))
    return 0 if all(c.passed for c in checks) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--timestamps", action="store_true", help="stamp reports with the current time")
    common.add_argument("--compact", action="store_true", help="single-line JSON")
    ap = argparse.ArgumentParser(prog="magicplanes", description=__doc__.splitlines()[0])
    top = ap.add_subparsers(dest="group", required=True)

    plane = top.add_parser("plane").add_subparsers(dest="command", required=True)
    p = plane.add_parser("build", parents=[common], help="PG(2, q) as plane JSON")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_plane_build)

    p = plane.add_parser("check", parents=[common], help="validate the projective plane axioms")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--format", choices=("json", "incidence"), default="json")
    p.add_argument("--json", action="store_true", help="report as JSON")
    p.set_defaults(func=cmd_plane_check)

    p = plane.add_parser("matrix", parents=[common], help="incidence matrix, Gram matrix and determinant")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--gram", action="store_true")
    p.add_argument("--det", action="store_true")
    p.add_argument("--textbook", action="store_true", help="for q=2, use the x1..x7 / L1..L7 enumeration")
    p.add_argument("--figure", help="also render the matrix to this image file")
    p.set_defaults(func=cmd_plane_matrix)

    label = top.add_parser("label").add_subparsers(dest="command", required=True)
    p = label.add_parser("vline", parents=[common], help="the single-line labeling into Z/m")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--line", type=int, required=True)
    p.add_argument("--mod", type=int, required=True)
    p.set_defaults(func=cmd_label_vline)

    p = label.add_parser("magic", parents=[common], help="magic labeling into (Z/n)^3")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_label_magic)

    p = label.add_parser("product", parents=[common], help="magic labeling into (Z/n)^(n^2+n+1)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_label_product)

    p = label.add_parser("verify", parents=[common], help="line sums and classification of a labeling file")
    p.add_argument("--plane", required=True)
    p.add_argument("--plane-format", choices=("json", "incidence"), default="json")
    p.add_argument("--labeling", required=True)
    p.set_defaults(func=cmd_label_verify)

    orc = top.add_parser("oracle").add_subparsers(dest="command", required=True)
    p = orc.add_parser("cyclic", parents=[common], help="enumerate line-invariant labelings into Z/m")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--mod", type=_parse_moduli, required=True, help="m, or a list like 2-13 or 4,6,8")
    p.add_argument("--bound", type=int, default=None,
                   help=f"largest solution set to enumerate (default ${oracle.BOUND_ENV} or {oracle.DEFAULT_BOUND})")
    p.add_argument("--figure", help="also render a summary figure to this image file")
    p.set_defaults(func=cmd_oracle_cyclic)

    p = orc.add_parser("acceptance", parents=[common], help="run every exit criterion")
    p.add_argument("--timings", action="store_true", help="append wall-clock seconds to each line")
    p.set_defaults(func=cmd_oracle_acceptance)

    p = orc.add_parser("spot", parents=[common], help="recompute the worked examples as a CSV table")
    p.set_defaults(func=cmd_oracle_spot)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CommandError, FieldError, geometry.PlaneError, GroupError, magic.ConstructionError,
            oracle.BoundExceeded, incidence.SingularMatrixError, ValueError) as exc:
        print(f"magicplanes: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
