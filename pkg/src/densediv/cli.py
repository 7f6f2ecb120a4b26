"""Command-line entry point: ``densediv <subcommand> [flags]``.

Every subcommand writes CSV (or JSON) to stdout or ``--output``.  Exit
status 2 means the inputs failed validation, 3 that a size budget was hit.
"""

import argparse
import cmath
import contextlib
import csv
import json
import os
import sys

from .arithmetic import NuMode, ThetaRule, enumerate_B
from .errors import BudgetExceeded, ConvergenceError, DomainError

EXIT_OK, EXIT_INVALID, EXIT_BUDGET = 0, 2, 3


def _complex(text):
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _rule(args):
    if args.rule == "dense":
        if args.t is None:
            raise DomainError("--t is required for the dense rule")
        return ThetaRule.dense(args.t)
    return ThetaRule.practical()


def _z(args):
    if args.z is not None:
        return args.z
    return cmath.exp(1j * args.phi)


@contextlib.contextmanager
def _sink(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _g(v):
    return f"{v:.12g}"


def cmd_enumerate(args, out):
    for f in enumerate_B(_rule(args), args.x):
        out.write(f.to_line() + "\n")


def cmd_constants(args, out):
    from .special import coeff_table, constants

    coeffs = coeff_table(1.0, args.coeffs) if args.coeffs is not None else None
    out.write(constants().to_json(coeffs) + "\n")


def cmd_ekac(args, out):
    from .harness import moments_report, run_manifest, write_report_csv

    rule = _rule(args)
    report = moments_report(rule, args.x, args.mode)
    if args.format == "json":
        config = {"cmd": "ekac", "rule": args.rule, "t": args.t, "x": args.x, "mode": NuMode.parse(args.mode).value}
        out.write(json.dumps(run_manifest(config, [report]), indent=2) + "\n")
    else:
        write_report_csv(out, [report])


def cmd_s0(args, out):
    from .laplace import root_table, write_root_csv

    rows = root_table(args.phi)
    if args.format == "json":
        data = [{"phi": p, "s0": [s.real, s.imag], "Cz": [c.real, c.imag], "residual": r} for p, s, c, r in rows]
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        write_root_csv(out, rows)


def cmd_dz(args, out):
    from .laplace import solve_dz

    z = _z(args)
    v_max = max(args.v_max, max(args.v))
    sol = solve_dz(z, v_max, args.h)
    w = csv.writer(out)
    w.writerow(["v", "re_d", "im_d", "re_asym", "im_asym"])
    for v in args.v:
        d, a = complex(sol(v)), complex(sol.asymptotic(v))
        w.writerow([_g(v), _g(d.real), _g(d.imag), _g(a.real), _g(a.imag)])


def cmd_omega(args, out):
    from .buchstab import solve_omega

    z = _z(args)
    sol = solve_omega(z, max(args.u_max, max(args.u)), args.h)
    w = csv.writer(out)
    w.writerow(["u", "re_omega", "im_omega"])
    for u in args.u:
        val = complex(sol(u))
        w.writerow([_g(u), _g(val.real), _g(val.imag)])


def cmd_sifted(args, out):
    from .harness import sifted_compare

    c = sifted_compare(args.x, args.y, args.phi, args.mode)
    w = csv.writer(out)
    w.writerow(["x", "y", "phi", "mode", "re_exact", "im_exact", "re_main", "im_main", "rel_err"])
    w.writerow([args.x, _g(args.y), _g(args.phi), c.mode, _g(c.exact.real), _g(c.exact.imag),
                _g(c.main_terms.real), _g(c.main_terms.imag), f"{c.rel_err:.6e}"])


def build_parser():
    p = argparse.ArgumentParser(prog="densediv", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", default=None, help="output file (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument(
        "--threads",
        type=int,
        default=int(os.environ.get("DENSEDIV_THREADS", "1")),
        help="accepted for compatibility; work is vectorized in one process",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    def rule_flags(sp):
        sp.add_argument("--rule", choices=("dense", "practical"), required=True)
        sp.add_argument("--t", type=str, default=None, help="density parameter (exact decimal or fraction)")
        sp.add_argument("--x", type=int, required=True)

    def z_flags(sp, phi_default=0.0):
        sp.add_argument("--z", type=_complex, default=None, help="complex parameter, e.g. 1 or 0.99+0.05j")
        sp.add_argument("--phi", type=float, default=phi_default, help="z = e^{i phi} when --z is absent")

    sp = add("enumerate", cmd_enumerate, "list B(x) as checkpoint lines")
    rule_flags(sp)

    sp = add("constants", cmd_constants, "the constants as JSON")
    sp.add_argument("--coeffs", type=int, default=None, metavar="K", help="also emit b/a/c up to K at z = 1")

    sp = add("ekac", cmd_ekac, "moments and KS distance of nu over B(x)")
    rule_flags(sp)
    sp.add_argument("--mode", default="omega", choices=("omega", "Omega"))

    sp = add("s0", cmd_s0, "root s_0 and residue C_z for z = e^{i phi}")
    sp.add_argument("--phi", type=float, nargs="+", required=True)

    sp = add("dz", cmd_dz, "d_z(v) and its asymptotic prediction")
    z_flags(sp)
    sp.add_argument("--v", type=float, nargs="+", required=True)
    sp.add_argument("--v-max", dest="v_max", type=float, default=50.0)
    sp.add_argument("--h", type=float, default=0.005)

    sp = add("omega", cmd_omega, "omega_z(u)")
    z_flags(sp)
    sp.add_argument("--u", type=float, nargs="+", required=True)
    sp.add_argument("--u-max", dest="u_max", type=float, default=50.0)
    sp.add_argument("--h", type=float, default=0.005)

    sp = add("sifted", cmd_sifted, "exact sifted sum against its large-y main terms")
    sp.add_argument("--x", type=int, required=True)
    sp.add_argument("--y", type=float, required=True)
    sp.add_argument("--phi", type=float, default=0.0)
    sp.add_argument("--mode", default="omega", choices=("omega", "Omega"))
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        print("densediv: --threads must be >= 1", file=sys.stderr)
        return EXIT_INVALID
    try:
        with _sink(args.output) as out:
            args.func(args, out)
    except BudgetExceeded as exc:
        print(f"densediv: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (DomainError, ConvergenceError, ValueError, ZeroDivisionError) as exc:
        print(f"densediv: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
