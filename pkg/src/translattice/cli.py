"""Command line entry point ``translattice``.

Exit codes: 0 success, 1 input or usage error, 2 numerical certificate failure,
3 violated assumption of the method.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import InputError, TranslatticeError
from .lattice2 import BinaryForm, LatticeError, discriminant_form, enumerate_classes, is_real, reduce_gl2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def _form(ns) -> BinaryForm:
    try:
        return BinaryForm.from_gram(ns.A, ns.B, ns.C)
    except LatticeError as err:
        raise InputError(str(err), module="lattice2")


def cmd_compute(ns) -> int:
    from .pipeline import compute, load_problem, validate_report
    problem = load_problem(ns.file)
    emb = None if ns.embedding is None else (("plus", "minus") if ns.embedding == "both" else (ns.embedding,))
    svg_dir = Path(ns.svg) if ns.svg else problem.svg_dir
    report = compute(problem, emb, ns.precision, keep_samples=svg_dir is not None)
    data = report.to_dict()
    validate_report(data)
    text = report.to_json()
    out = Path(ns.out) if ns.out else problem.report_path
    if out:
        out.write_text(text)
    else:
        sys.stdout.write(text)
    if svg_dir is not None:
        from .svg import write_svgs
        for run in report.runs:
            write_svgs(run, svg_dir)
    for e in data["embeddings"]:
        print(f"{e['embedding']}: {e['reduced_form'] or 'rank ' + str(e['quotient_rank'])}", file=sys.stderr)
    return 0


def cmd_reduce(ns) -> int:
    f = _form(ns)
    r = reduce_gl2(f).form
    print(r)
    if ns.verbose:
        print(f"det {f.det}, real {is_real(f)}")
    return 0


def cmd_genus(ns) -> int:
    try:
        cl = enumerate_classes(ns.det)
    except LatticeError as err:
        raise InputError(str(err), module="lattice2")
    for i, gen in enumerate(cl.genera, start=1):
        forms = ", ".join(f"{f}{'' if is_real(f) else ' (not real)'}" for f in gen)
        print(f"genus {i}: {forms}")
    return 0


def cmd_discform(ns) -> int:
    f = _form(ns)
    q = discriminant_form(f.gram())
    if not q.orders:
        print("trivial (unimodular)")
        return 0
    kind = "cyclic" if len(q.orders) == 1 else "group " + " x ".join(f"Z/{o}" for o in q.orders)
    print(f"order {q.order} {kind}")
    for o, v in zip(q.orders, q.q_values):
        print(f"  Z/{o}: q = {v} mod 2")
    return 0


def cmd_singtype(ns) -> int:
    from .exact import PolySyntaxError, parse_poly
    from .singrec import recognize_A
    try:
        if ns.chart:
            f = parse_poly(ns.poly, ns.d, ("x", "y", "z"))
            keep = tuple(v for v in ("x", "y", "z") if v != ns.chart)
            f = f.subs({ns.chart: 1}).with_vars(keep)
        else:
            keep = tuple(ns.vars.split(","))
            f = parse_poly(ns.poly, ns.d, keep)
        point = tuple(parse_poly(t, ns.d, ()).constant_value() for t in ns.at)
    except PolySyntaxError as err:
        raise InputError(f"cannot parse: {err}", module="singrec")
    if f.eval(dict(zip(keep, point))):
        raise InputError("the curve does not pass through the point", module="singrec")
    try:
        verdict = recognize_A(f, point, keep)
    except TranslatticeError as err:
        verdict = f"inconclusive({err})"
    print(verdict)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="translattice", description="Transcendental lattices of double planes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", help="run the full pipeline on a problem file")
    c.add_argument("file")
    c.add_argument("--embedding", choices=["plus", "minus", "both"])
    c.add_argument("--precision", type=int, metavar="BITS")
    c.add_argument("--out", metavar="FILE")
    c.add_argument("--svg", metavar="DIR")
    c.set_defaults(func=cmd_compute)

    for name, helptext, fn in [("reduce", "reduced representative of [A,B,C]", cmd_reduce),
                               ("discform", "discriminant form of [A,B,C]", cmd_discform)]:
        s = sub.add_parser(name, help=helptext)
        s.add_argument("A", type=int)
        s.add_argument("B", type=int)
        s.add_argument("C", type=int)
        if name == "reduce":
            s.add_argument("-v", "--verbose", action="store_true")
        s.set_defaults(func=fn)

    g = sub.add_parser("genus", help="classes and genera of a given determinant")
    g.add_argument("--det", type=int, required=True)
    g.set_defaults(func=cmd_genus)

    s = sub.add_parser("singtype", help="recognize an A_m singularity")
    s.add_argument("--poly", required=True)
    s.add_argument("--at", nargs=2, required=True, metavar=("X", "Y"))
    s.add_argument("--chart", choices=["x", "y", "z"], help="dehomogenize a ternary form by setting this to 1")
    s.add_argument("--vars", default="x,y", help="local variables when no chart is given")
    s.add_argument("--d", type=int, default=0, help="field discriminant; 'a' denotes its square root")
    s.set_defaults(func=cmd_singtype)
    return p


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        return ns.func(ns)
    except TranslatticeError as err:
        print(err.describe(), file=sys.stderr)
        return err.exit_code


if __name__ == "__main__":
    sys.exit(main())
