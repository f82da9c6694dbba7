"""Command-line interface.

Every command prints one JSON document (a ``CommandResult``) with canonical key
order and every number encoded as a string.  Exit codes: 0 ok, 1 domain error
(or failed verification), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import mpmath

from . import __version__
from .errors import PeriodscopeError
from .griffiths_dwork import derive_pf_dwork
from .hodge import (
    CATALOG_KEYS,
    BallPoint,
    borcea_voisin_hodge,
    catalog,
    hodge_from_ball,
    period_domain_dim,
    rohde_data,
    rohde_eigenspace_dims,
    verify_polarization,
)
from .ode import (
    Loop,
    ODEOperator,
    SingularPoint,
    default_loop,
    is_maximally_unipotent,
    local_data,
    numerical_monodromy,
    singular_points,
    vhs_mum_verdict,
)
from .superelliptic import (
    SuperellipticFamily,
    eigenspace_dims,
    family_from_strings,
    genus_report,
    parse_form,
    pf_operator_for_form,
)
from .verification import DEFAULT_DIGITS, SUITES, run_suite

DIGITS_ENV = "PERIODSCOPE_DIGITS"


class UsageError(Exception):
    def __init__(self, message: str, usage: str = ""):
        super().__init__(message)
        self.usage = usage


@dataclass
class CommandResult:
    status: str  # "ok" | "error"
    payload: object
    provenance: list = field(default_factory=list)
    milliseconds: float = 0.0
    exit_code: int = 0

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "payload": self.payload,
            "provenance": list(self.provenance),
            "timing": {"milliseconds": f"{self.milliseconds:.1f}"},
        }

    def dumps(self) -> str:
        return canonical_dumps(self.to_json())


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def _stringify(obj):
    """Encode every remaining number as a string (booleans and null stay as they are)."""
    if isinstance(obj, dict):
        return {str(k): _stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    return str(obj)


# --------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message, self.format_usage())


def default_digits() -> int:
    raw = os.environ.get(DIGITS_ENV)
    if raw is None or raw == "":
        return DEFAULT_DIGITS
    try:
        d = int(raw)
    except ValueError:
        raise UsageError(f"{DIGITS_ENV} must be a positive integer, got {raw!r}")
    if d <= 0:
        raise UsageError(f"{DIGITS_ENV} must be a positive integer, got {raw!r}")
    return d


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", metavar="PATH", default=argparse.SUPPRESS,
                        help="write the JSON result to PATH instead of standard output")

    p = _Parser(prog="periodscope", description="Picard-Fuchs operators, monodromy and Hodge data.")
    p.add_argument("--version", action="version", version=f"periodscope {__version__}")
    p.add_argument("--output", metavar="PATH", default=None,
                   help="write the JSON result to PATH instead of standard output")
    sub = p.add_subparsers(dest="command", metavar="{pf,local,monodromy,hodge,verify}", parser_class=_Parser)
    sub.required = True

    pf = sub.add_parser("pf", help="derive Picard-Fuchs operators")
    pfs = pf.add_subparsers(dest="pf_kind", metavar="{dwork,curve}", parser_class=_Parser)
    pfs.required = True
    dw = pfs.add_parser("dwork", parents=[common], help="operator of the one-parameter quintic pencil")
    dw.add_argument("--no-certificates", action="store_true", help="skip re-expanding reduction certificates")
    cv = pfs.add_parser("curve", parents=[common], help="operator for a form on a cyclic cover v^n = f(t, λ)")
    cv.add_argument("--n", type=int, help="degree of the cyclic cover")
    cv.add_argument("--roots", help="comma-separated branch points (expressions in λ)")
    cv.add_argument("--mults", help="comma-separated multiplicities")
    cv.add_argument("--family", metavar="JSON", help="family file {\"n\", \"factors\": [{\"root\", \"mult\"}]}")
    cv.add_argument("--form", required=True, help="form such as 'dt/v' or '(t-λ)dt/v^2'")

    lc = sub.add_parser("local", parents=[common], help="local exponents and Jordan structure")
    lc.add_argument("--op", required=True, metavar="JSON", help="operator file (ODEOperator schema)")
    lc.add_argument("--point", required=True, help="rational point, 'oo', or 'all' for every singular point")
    lc.add_argument("--multiplicity", type=int, default=2,
                    help="copies of the local system in the full variation (default 2)")

    mo = sub.add_parser("monodromy", parents=[common], help="numerical monodromy matrix")
    mo.add_argument("--op", required=True, metavar="JSON", help="operator file (ODEOperator schema)")
    mo.add_argument("--around", help="rational point or 'oo' (default square loop)")
    mo.add_argument("--loop", help="explicit loop 're,im;re,im;...' with rational coordinates")
    mo.add_argument("--digits", type=int, default=None, help=f"working digits (default ${DIGITS_ENV} or 50)")

    hd = sub.add_parser("hodge", help="Hodge numbers, catalog and the ball model")
    hs = hd.add_subparsers(dest="hodge_kind", metavar="{bv,rohde,ball,catalog,domain}", parser_class=_Parser)
    hs.required = True
    bv = hs.add_parser("bv", parents=[common], help="Borcea-Voisin Hodge numbers")
    bv.add_argument("--k", type=int, required=True)
    ro = hs.add_parser("rohde", parents=[common], help="cyclic triple-cover table entry")
    ro.add_argument("--deg-g", type=int, required=True)
    ro.add_argument("--deg-h", type=int, required=True)
    ba = hs.add_parser("ball", parents=[common], help="Hodge structure attached to a ball point")
    ba.add_argument("--q", type=int, required=True)
    ba.add_argument("--w", required=True, help="comma-separated coordinates, e.g. '0.5,0' or '0.1+0.2j,0'")
    ca = hs.add_parser("catalog", parents=[common], help="named example")
    ca.add_argument("--name", required=True, choices=CATALOG_KEYS)
    do = hs.add_parser("domain", parents=[common], help="period-domain dimension")
    do.add_argument("--q", type=int, required=True)

    ve = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    ve.add_argument("suite", choices=SUITES)
    return p


def _split(text: str | None, flag: str) -> list[str]:
    if not text:
        raise UsageError(f"{flag} is required")
    return [s.strip() for s in text.split(",") if s.strip()]


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except ValueError:
        raise UsageError(f"not a rational number: {text!r}")


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}")


def _load_operator(path: str) -> ODEOperator:
    data = _read_json(path)
    if isinstance(data, dict) and "payload" in data and "status" in data:
        data = data["payload"]  # accept a saved CommandResult
    if isinstance(data, dict) and "operator" in data:
        data = data["operator"]
    try:
        return ODEOperator.from_json(data)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{path} does not hold an operator: {exc}")


def _parse_point(text: str) -> SingularPoint:
    if text.strip().lower() in ("oo", "inf", "infinity", "∞"):
        return SingularPoint.oo()
    return SingularPoint.at(_parse_rational(text))


def _point_for(op: ODEOperator, pt: SingularPoint) -> SingularPoint:
    """Use the operator's own singular-point record (with regularity info) when there is one."""
    for s in singular_points(op):
        if s.same_place(pt):
            return s
    return pt


# --------------------------------------------------------------------------
# commands


def _cmd_pf_dwork(args) -> CommandResult:
    der = derive_pf_dwork(check_certificates=not args.no_certificates)
    prov = der.provenance()
    payload = {"operator": der.operator.to_json(), "provenance": prov}
    return CommandResult("ok", payload, [
        "Griffiths-Dwork reduction of the derivatives of the residue form on the invariant subspace",
        "exact reductions at rational sample points, rational reconstruction with held-out samples",
    ])


def _curve_family(args) -> SuperellipticFamily:
    if args.family:
        try:
            return SuperellipticFamily.from_json(_read_json(args.family))
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"{args.family} does not hold a family: {exc}")
    if args.n is None:
        raise UsageError("pf curve needs --n, --roots and --mults (or --family)")
    roots = _split(args.roots, "--roots")
    try:
        mults = [int(m) for m in _split(args.mults, "--mults")]
        return family_from_strings(args.n, roots, mults)
    except (ValueError, SyntaxError) as exc:
        raise UsageError(str(exc))


def _cmd_pf_curve(args) -> CommandResult:
    fam = _curve_family(args)
    try:
        form = parse_form(args.form)
    except (ValueError, SyntaxError) as exc:
        raise UsageError(str(exc))
    op = pf_operator_for_form(fam, form)
    rep = genus_report(fam)
    payload = {
        "operator": op.to_json(),
        "family": fam.to_json(),
        "form": str(form),
        "genus": str(rep.genus),
    }
    return CommandResult("ok", payload, [
        "Gauss-Manin connection on the eigenspace of the cyclic-cover cohomology, reduction modulo exact forms",
        "minimal monic annihilating operator of the class of the form",
    ])


def _local_entry(op: ODEOperator, pt: SingularPoint, multiplicity: int) -> dict:
    ld = local_data(op, pt)
    max_block, mum_full = vhs_mum_verdict(op, pt, multiplicity)
    out = ld.to_json()
    out["mum"] = is_maximally_unipotent(ld, op.order)
    out["full_variation"] = {
        "multiplicity": str(multiplicity),
        "max_jordan_block": str(max_block),
        "mum": mum_full,
    }
    return out


def _cmd_local(args) -> CommandResult:
    op = _load_operator(args.op)
    if args.multiplicity < 1:
        raise UsageError("--multiplicity must be positive")
    if args.point.strip().lower() == "all":
        pts = singular_points(op)
    else:
        pts = [_point_for(op, _parse_point(args.point))]
    payload = {"points": [_local_entry(op, p, args.multiplicity) for p in pts], "order": str(op.order)}
    return CommandResult("ok", payload, [
        "Fuchs criterion, indicial equation and Frobenius expansion with logarithmic terms",
        "full variation modelled as block-diagonal copies of the eigenspace local system",
    ])


def _parse_loop(text: str) -> Loop:
    pts = []
    for chunk in text.split(";"):
        parts = chunk.split(",")
        if len(parts) != 2:
            raise UsageError(f"loop vertices are 're,im' pairs, got {chunk!r}")
        pts.append((_parse_rational(parts[0]), _parse_rational(parts[1])))
    if len(pts) < 3:
        raise UsageError("a loop needs at least three vertices")
    return Loop(pts)


def _cmd_monodromy(args) -> CommandResult:
    op = _load_operator(args.op)
    digits = args.digits if args.digits is not None else default_digits()
    if digits <= 0:
        raise UsageError("--digits must be positive")
    if bool(args.around) == bool(args.loop):
        raise UsageError("give exactly one of --around or --loop")
    if args.loop:
        loop = _parse_loop(args.loop)
    else:
        pt = _parse_point(args.around)
        loop = default_loop(op, "oo" if pt.infinity else pt.value)
    M = numerical_monodromy(op, loop, digits)
    with mpmath.workdps(digits + 15):
        ev = mpmath.eig(M.matrix(), left=False, right=False)
    payload = M.to_json(digits)
    payload["eigenvalues"] = [[mpmath.nstr(mpmath.re(e), 20), mpmath.nstr(mpmath.im(e), 20)] for e in ev]
    if args.around:
        payload["around"] = args.around
    return CommandResult("ok", payload, [
        "Taylor-series analytic continuation along a polygonal path with step at most half the distance to the nearest singularity",
        "columns are continued solution vectors (y, y', ...) of the basis with unit initial data at the base point",
    ])


def _cmd_hodge(args) -> CommandResult:
    kind = args.hodge_kind
    if kind == "bv":
        hn = borcea_voisin_hodge(args.k)
        return CommandResult("ok", {**hn.to_json(), "k": str(args.k)}, [
            "Borcea-Voisin construction: Hodge numbers of the resolved quotient (E x S)/(Z/2) from the fixed-locus data of the K3 involution",
        ])
    if kind == "rohde":
        g, q, h11 = rohde_data(args.deg_g, args.deg_h)
        payload = {"deg_g": str(args.deg_g), "deg_h": str(args.deg_h),
                   "genus": str(g), "h21": str(q), "h11": str(h11)}
        return CommandResult("ok", payload, [
            "cyclic triple covers v^3 = g(t) h(t)^2 and the associated order-3 Calabi-Yau threefolds without maximal unipotent monodromy",
        ])
    if kind == "ball":
        try:
            coords = [complex(s.replace("i", "j")) for s in _split(args.w, "--w")]
        except ValueError:
            raise UsageError(f"cannot parse --w {args.w!r}")
        if len(coords) != args.q:
            raise UsageError(f"--w has {len(coords)} coordinates but --q is {args.q}")
        point = BallPoint(coords)
        hs = hodge_from_ball(args.q, point)
        rep = verify_polarization(hs)
        payload = {"ball_point": point.to_json(), "structure": hs.to_json(),
                   "polarized": rep.ok, "diagnostics": list(rep.diagnostics),
                   "period_domain_dim": str(period_domain_dim(args.q))}
        return CommandResult("ok", payload, [
            "complex ball of dimension q parametrizing weight-3 structures with an order-3 automorphism, V^{3,0} spanned by (1, w)",
            "Hermitian form i^{p-q}-signed on the Hodge pieces; checked for signature, orthogonality and conjugation",
        ])
    if kind == "catalog":
        entry = catalog(args.name)
        out = entry.to_json()
        prov = out.pop("provenance")
        return CommandResult("ok", out, prov)
    if kind == "domain":
        return CommandResult("ok", {"q": str(args.q), "dimension": str(period_domain_dim(args.q))}, [
            "dimension q + (q + 1)(q + 2)/2 of the period domain for h^{3,0} = 1, h^{2,1} = q",
        ])
    raise UsageError(f"unknown hodge command {kind!r}")


def _cmd_verify(args) -> CommandResult:
    results = run_suite(args.suite, default_digits())
    ok = all(r.passed for r in results)
    payload = {"suite": args.suite, "passed": ok, "criteria": [r.to_json() for r in results]}
    if not ok:
        payload["code"] = "criteria failed"
    return CommandResult("ok" if ok else "error", payload,
                         ["acceptance checks run in-process; measured values reported per criterion"],
                         exit_code=0 if ok else 1)


def _dispatch(args) -> CommandResult:
    if args.command == "pf":
        return _cmd_pf_dwork(args) if args.pf_kind == "dwork" else _cmd_pf_curve(args)
    if args.command == "local":
        return _cmd_local(args)
    if args.command == "monodromy":
        return _cmd_monodromy(args)
    if args.command == "hodge":
        return _cmd_hodge(args)
    if args.command == "verify":
        return _cmd_verify(args)
    raise UsageError(f"unknown command {args.command!r}")


def run(argv: Sequence[str]) -> tuple[CommandResult, str | None, str]:
    """Parse and execute; returns (result, output path or None, usage text)."""
    parser = build_parser()
    start = time.perf_counter()
    output = None
    try:
        args = parser.parse_args(list(argv))
        output = getattr(args, "output", None)
        res = _dispatch(args)
        usage = ""
    except UsageError as exc:
        usage = exc.usage or parser.format_usage()
        res = CommandResult("error", {"code": "usage", "message": str(exc)}, [], exit_code=2)
    except PeriodscopeError as exc:
        res = CommandResult("error", {"code": exc.code, "message": str(exc)}, [], exit_code=1)
        usage = ""
    res.payload = _stringify(res.payload)
    res.milliseconds = (time.perf_counter() - start) * 1000
    return res, output, usage


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if any(a in ("-h", "--help") for a in argv) or any(a == "--version" for a in argv):
        try:
            build_parser().parse_args(list(argv))
        except UsageError as exc:
            sys.stderr.write(exc.usage + f"periodscope: error: {exc}\n")
            return 2
        except SystemExit as exc:
            return int(exc.code or 0)
    res, output, usage = run(argv)
    text = res.dumps()
    if usage:
        sys.stderr.write(usage + f"periodscope: error: {res.payload.get('message', '')}\n")
    if output:
        try:
            Path(output).write_text(text, encoding="utf-8")
        except OSError as exc:
            sys.stderr.write(f"periodscope: cannot write {output}: {exc.strerror}\n")
            return 2
    else:
        sys.stdout.write(text)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
