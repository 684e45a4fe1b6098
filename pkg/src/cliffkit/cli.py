"""Command-line front end: ``cliffkit <subcommand> [--json]``.

Exit codes: 0 ok, 1 a computed invariant failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import dirac4d, majorana, matrep
from ._config import TOL_ENV_VAR, numeric_tol
from .classify import check_consistency, classify, even_subalgebra, verify_periodicity
from .blade import ParseError, Signature, format_multivector, parse_multivector
from .lipschitz import group_membership, rotor_from_axis_angle

SCHEMA = "1"
SIG_DIGITS = 15


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    status: str = "ok"
    payload: dict = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 0 if self.status == "ok" else 1


# --------------------------------------------------------------------------
# value encoding


def encode_number(x):
    """15 significant digits; integral values become ints, Fractions become 'p/q'."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (complex, np.complexfloating)):
        return [encode_number(float(x.real)), encode_number(float(x.imag))]
    x = float(x)
    if not math.isfinite(x):
        return repr(x)
    r = float(f"{x:.{SIG_DIGITS}g}")
    if r == int(r) and abs(r) < 1e15:
        return int(r)
    return r


def encode_matrix(a) -> list:
    """Row-major list of rows of [re, im] pairs."""
    a = np.asarray(a, dtype=complex)
    return [[[encode_number(float(v.real)), encode_number(float(v.imag))] for v in row] for row in a]


def decode_matrix(rows) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows])


def _encode(obj):
    if isinstance(obj, dict):
        return {k: _encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_encode(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return encode_matrix(obj) if obj.ndim == 2 else [_encode(v) for v in obj.tolist()]
    if isinstance(obj, str):
        return obj
    return encode_number(obj)


# --------------------------------------------------------------------------
# argument helpers


def _signature(text: str) -> Signature:
    try:
        return Signature.parse(text)
    except (ValueError, TypeError) as err:
        raise UsageError(f"malformed signature {text!r}: expected 'p,q'") from err


def _floats(text: str, n: int, what: str) -> list[float]:
    try:
        vals = [float(t) for t in text.split(",")]
    except ValueError:
        vals = []
    if len(vals) != n:
        raise UsageError(f"{what} must be {n} comma-separated numbers, got {text!r}")
    return vals


# --------------------------------------------------------------------------
# subcommands


def cmd_classify(args) -> CommandResult:
    sig = _signature(args.signature)
    rec = classify(sig)
    res = CommandResult(payload=rec.as_json())
    report = check_consistency(sig)
    if not report.ok:
        res.status = "error"
        res.diagnostics += report.problems
    return res


def cmd_even(args) -> CommandResult:
    sig = _signature(args.signature)
    try:
        sub = even_subalgebra(sig)
    except ValueError as err:
        raise UsageError(str(err)) from err
    defects = sub.relation_defects()
    res = CommandResult(
        payload={
            "source": [sig.p, sig.q],
            "target": [sub.target.p, sub.target.q],
            "generators": [format_multivector(g) for g in sub.generators],
            "verified": not defects,
        }
    )
    if defects:
        res.status = "error"
        res.diagnostics += [f"generators {i},{j}: anticommutator {g}" for i, j, g in defects]
    return res


def cmd_periodicity(args) -> CommandResult:
    sig = _signature(args.signature)
    rep = verify_periodicity(sig, cap=args.cap)
    checks = [
        {"name": c.name, "passed": c.passed, "skipped": c.skipped, "detail": c.detail}
        for c in rep.checks
    ]
    res = CommandResult(payload={"base": list(rep.base), "checks": checks, "complete": rep.complete})
    if not rep.ok:
        res.status = "error"
        res.diagnostics.append("a periodicity relation failed")
    return res


def cmd_pin_check(args) -> CommandResult:
    sig = _signature(args.signature)
    try:
        x = parse_multivector(sig, args.element)
    except ParseError as err:
        raise UsageError(f"cannot parse multivector: {err}") from err
    tol = numeric_tol() if os.environ.get(TOL_ENV_VAR) else None
    verdict, image = group_membership(x, tol=tol)
    payload = {
        "element": format_multivector(x),
        "membership": verdict.membership,
        "in_lipschitz": verdict.in_lipschitz,
        "parity": verdict.parity,
        "norm": verdict.norm_value,
        "borderline": verdict.borderline,
    }
    if image is not None:
        payload["image"] = [list(row) for row in image.matrix]
        payload["det"] = image.det
    res = CommandResult(payload=payload, diagnostics=list(verdict.diagnostics))
    if verdict.membership == "none":
        res.status = "error"
    return res


def cmd_rotor(args) -> CommandResult:
    axis = _floats(args.axis, 3, "--axis")
    try:
        rotor, image = rotor_from_axis_angle(axis, args.angle)
    except ValueError as err:
        raise UsageError(str(err)) from err
    return CommandResult(
        payload={
            "rotor": format_multivector(rotor),
            "matrix": image.as_array().tolist(),
            "det": image.det,
        }
    )


def _check_D(D: int, lo: int, hi: int):
    if not lo <= D <= hi:
        raise UsageError(f"D={D} outside {lo}..{hi}")


def cmd_gamma(args) -> CommandResult:
    _check_D(args.D, 1, matrep.MAX_D)
    rep = matrep.gamma_matrices(args.D, args.lorentzian)
    gammas = list(rep.gammas)
    chirality, C = rep.chirality, rep.C
    if args.basis != "chiral":
        if not (args.D == 4 and args.lorentzian):
            raise UsageError("--basis dirac|majorana needs D=4 --lorentzian")
        change = dirac4d.dirac_basis() if args.basis == "dirac" else dirac4d.majorana_basis()
        gammas, chirality, C = list(change.gammas), change.gamma5, change.C
    payload = {"D": args.D, "lorentzian": args.lorentzian, "basis": args.basis,
               "eta": list(rep.eta), "gammas": gammas}
    if chirality is not None:
        payload["chirality"] = chirality
    if C is not None:
        payload["C"] = C
    res = CommandResult(payload=payload)
    defect = rep.clifford_defect()
    if defect > matrep.MATRIX_TOL:
        res.status = "error"
        res.diagnostics.append(f"Clifford relations violated by {defect:.3g}")
    return res


def cmd_conjugation(args) -> CommandResult:
    _check_D(args.D, 2, 10)
    D = args.D
    if D % 2 == 0 and (args.primed or args.irreducible):
        raise UsageError("--primed/--irreducible apply to odd D only")
    res = CommandResult()
    try:
        C = matrep.charge_conjugation(D, primed=args.primed, irreducible=args.irreducible)
    except matrep.NoIrreducibleSolution as err:
        res.status = "error"
        res.payload = {"D": D, "C": None}
        res.diagnostics.append(str(err))
        return res
    if D % 2 == 0 or args.irreducible:
        gens = matrep.euclidean_generators(D)
    else:
        gens = matrep.reducible_odd_generators(D)
    defects = matrep.intertwining_defect(gens, C)
    cbar_c = C.conj() @ C
    res.payload = {
        "D": D,
        "primed": args.primed,
        "C": C,
        "real": bool(np.abs(C.imag).max() == 0),
        "CbarC": int(round(cbar_c[0, 0].real)),
        "intertwining_defect": defects,
    }
    if args.primed:
        res.payload["relation_sign"] = matrep.primed_relation_sign(D)
    if max(defects.values()) > matrep.MATRIX_TOL:
        res.status = "error"
        res.diagnostics.append("C fails -gamma^t C = C gamma")
    return res


def cmd_ko(args) -> CommandResult:
    if args.D % 2:
        raise UsageError("ko needs even D")
    _check_D(args.D, 2, 10)
    ko = matrep.ko_signs(args.D, args.lorentzian)
    res = CommandResult(payload=ko.as_json())
    m = args.D // 2
    expected = (matrep.j_squared_formula(m, args.lorentzian), matrep.epsilon_formula(m, args.lorentzian))
    if (ko.j_squared, ko.epsilon) != expected:
        res.status = "error"
        res.diagnostics.append(f"signs {(ko.j_squared, ko.epsilon)} differ from closed form {expected}")
    return res


def cmd_majorana_class(args) -> CommandResult:
    sig = _signature(args.signature)
    return CommandResult(payload=matrep.majorana_class(sig.p, sig.q).as_json())


def _spinor(v) -> list:
    return [encode_number(complex(c)) for c in v]


def cmd_dirac(args) -> CommandResult:
    pvec = _floats(args.p, 3, "--p")
    if not args.mass > 0:
        raise UsageError("--mass must be positive")
    p = dirac4d.FourMomentum.on_shell(args.mass, pvec)
    us, vs = dirac4d.plane_wave_spinors(args.mass, p)
    report = dirac4d.check_spin_sums(args.mass, p)
    su, sv = dirac4d.spin_sum(us), dirac4d.spin_sum(vs)
    if args.basis != "chiral":
        T = (dirac4d.dirac_basis() if args.basis == "dirac" else dirac4d.majorana_basis()).T
        Td = T.conj().T
        us, vs = [T @ u for u in us], [T @ v for v in vs]
        su, sv = T @ su @ Td, T @ sv @ Td
    res = CommandResult(
        payload={
            "basis": args.basis,
            "p": [p.p0, p.p1, p.p2, p.p3],
            "u": [_spinor(u) for u in us],
            "v": [_spinor(v) for v in vs],
            "spin_sums": {"u": su, "v": sv},
            "residuals": {
                "u_sum": report.u_sum_error,
                "v_sum": report.v_sum_error,
                "normalization": report.normalization_error,
                "dirac": report.dirac_residual,
                "chiral": report.chiral_error,
            },
        }
    )
    if report.worst > numeric_tol():
        res.status = "error"
        res.diagnostics.append(f"spin-sum identities off by {report.worst:.3g}")
    return res


def cmd_majorana_audit(args) -> CommandResult:
    mc = majorana.mass_term("commuting")
    ma = majorana.mass_term("anticommuting")
    currents = [majorana.u1_current("anticommuting", mu) for mu in range(4)]
    facts = majorana.matrix_facts()
    res = CommandResult(
        payload={
            "mass_commuting": str(mc),
            "mass_anticommuting": str(ma),
            "current_anticommuting": "0" if all(c.is_zero for c in currents) else
            "; ".join(str(c) for c in currents),
            "matrix_facts": facts,
        }
    )
    if not mc.is_zero or ma.is_zero or not all(c.is_zero for c in currents) or not all(facts.values()):
        res.status = "error"
        res.diagnostics.append("bilinear audit does not match the symmetry argument")
    return res


def cmd_seesaw(args) -> CommandResult:
    try:
        block = majorana.SeesawBlock(args.yh, args.m)
    except ValueError as err:
        raise UsageError(str(err)) from err
    r = majorana.seesaw_masses(block)
    return CommandResult(
        payload={
            "m_light": r.m_light,
            "M_heavy": r.M_heavy,
            "eigenvalues": list(r.eigenvalues),
            "approx_light": r.approx_light,
            "rel_err_light": r.rel_err_light,
            "rel_err_heavy": r.rel_err_heavy,
            "hierarchical": r.hierarchical,
        }
    )


def cmd_weyl1d(args) -> CommandResult:
    if args.n < 2 or not args.length > 0 or not args.width > 0:
        raise UsageError("--n >= 2, --length > 0 and --width > 0 required")
    x = np.linspace(-args.length / 2, args.length / 2, args.n)

    def bump(center):
        return lambda y: np.exp(-((y - center) / args.width) ** 2)

    psi_L, psi_R = matrep.weyl_1p1_solve(bump(args.center_l), bump(args.center_r), x, args.t)
    err_L = float(np.linalg.norm(psi_L - bump(args.center_l - args.t)(x)) * math.sqrt(x[1] - x[0]))
    err_R = float(np.linalg.norm(psi_R - bump(args.center_r + args.t)(x)) * math.sqrt(x[1] - x[0]))
    real = bool(np.isrealobj(psi_L) and np.isrealobj(psi_R))
    res = CommandResult(
        payload={
            "t": args.t,
            "peak_L": float(x[np.argmax(psi_L)]),
            "peak_R": float(x[np.argmax(psi_R)]),
            "l2_error": max(err_L, err_R),
            "real": real,
        }
    )
    if max(err_L, err_R) > numeric_tol() or not real:
        res.status = "error"
        res.diagnostics.append("transport differs from the shifted profile")
    return res


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cliffkit", description="Clifford algebras, gamma matrices and spinors.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit canonical JSON")
    sub = parser.add_subparsers(dest="command", required=True, metavar="subcommand")

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(func=func)
        return p

    p = add("classify", cmd_classify,
            "Matrix algebra of Cl(p,q) from (p-q) mod 8, checked against omega^2 and the center.")
    p.add_argument("signature", help="p,q")
    p = add("even", cmd_even,
            "Signature of the even subalgebra with generators e_n e_i: Cl(p,q-1) if q>0 else Cl(0,p-1).")
    p.add_argument("signature", help="p,q")
    p = add("periodicity", cmd_periodicity,
            "Check Cl(p+1,q+1)=Cl(p,q)[2], Cl(p+4,q)=Cl(p,q+4) and Cl(p+8,q)=Cl(p,q)[16].")
    p.add_argument("signature", help="p,q")
    p.add_argument("--cap", type=int, default=12, help="largest number of generators to examine")
    p = add("pin-check", cmd_pin_check,
            "Lipschitz/Pin/Spin membership via the twisted adjoint v -> alpha(x) v x^-1 and N(x)=x x^dagger.")
    p.add_argument("signature", help="p,q")
    p.add_argument("element", help="multivector, e.g. '1 + 2*e1^e2'")
    p = add("rotor", cmd_rotor,
            "Spin(3) element cos(theta/2) - omega (n.sigma) sin(theta/2) and its rotation matrix.")
    p.add_argument("--axis", required=True, help="unit vector x,y,z")
    p.add_argument("--angle", required=True, type=float, help="angle in radians")
    p = add("gamma", cmd_gamma,
            "Pauli tensor-product gamma matrices of Cl(D) or Cl(D-1,1) with gamma^0 = i gamma_D.")
    p.add_argument("D", type=int)
    p.add_argument("--lorentzian", action="store_true")
    p.add_argument("--basis", choices=["chiral", "dirac", "majorana"], default="chiral")
    p = add("conjugation", cmd_conjugation,
            "Charge conjugation C with -gamma^t C = C gamma; odd D uses the embedding in Cl(D+1).")
    p.add_argument("D", type=int)
    p.add_argument("--primed", action="store_true", help="second odd-D solution i^(5-m) omega C")
    p.add_argument("--irreducible", action="store_true", help="solve in the irreducible odd-D rep")
    p = add("ko", cmd_ko, "Signs J^2 = conj(C) C, J gamma = eps gamma J and the KO dimension mod 8.")
    p.add_argument("D", type=int)
    p.add_argument("--lorentzian", action="store_true")
    p = add("majorana-class", cmd_majorana_class,
            "Majorana spinors iff p-q = 0,1,2 mod 8; Weyl pairs conjugate iff p-q = 2 mod 4.")
    p.add_argument("signature", help="p,q")
    p = add("dirac", cmd_dirac,
            "Plane-wave spinors of (m + i p gamma) u = 0 and spin sums m - i p gamma, -m - i p gamma.")
    p.add_argument("--mass", type=float, required=True)
    p.add_argument("--p", required=True, help="3-momentum px,py,pz")
    p.add_argument("--basis", choices=["chiral", "dirac", "majorana"], default="chiral")
    p = add("majorana-audit", cmd_majorana_audit,
            "Mass term i psi C^-1 psi and current psi C gamma^mu psi for commuting vs Grassmann components.")
    p = add("seesaw", cmd_seesaw,
            "Eigenvalues of [[0, yH], [yH, M]]: m_light ~ (yH)^2/M, M_heavy ~ M.")
    p.add_argument("--yh", type=float, required=True)
    p.add_argument("--m", type=float, required=True)
    p = add("weyl1d", cmd_weyl1d,
            "Massless Dirac equation in 1+1D: psi_L(x+t) moves left, psi_R(x-t) moves right.")
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--n", type=int, default=401, help="grid points")
    p.add_argument("--length", type=float, default=20.0)
    p.add_argument("--width", type=float, default=1.0)
    p.add_argument("--center-l", type=float, default=0.0)
    p.add_argument("--center-r", type=float, default=0.0)
    return parser


def _emit_json(res: CommandResult) -> str:
    out = {"schema": SCHEMA, "status": res.status}
    out.update(_encode(res.payload))
    if res.diagnostics:
        out["diagnostics"] = list(res.diagnostics)
    return json.dumps(out)


def _emit_text(res: CommandResult) -> str:
    lines = []
    for k, v in res.payload.items():
        if isinstance(v, np.ndarray) and v.ndim == 2:
            lines.append(f"{k}:")
            lines.append(np.array2string(v, precision=SIG_DIGITS, suppress_small=True))
        elif isinstance(v, list) and v and isinstance(v[0], np.ndarray):
            for i, a in enumerate(v):
                lines.append(f"{k}[{i}]:")
                lines.append(np.array2string(a, precision=SIG_DIGITS, suppress_small=True))
        else:
            lines.append(f"{k}: {json.dumps(_encode(v))}")
    lines += [f"! {d}" for d in res.diagnostics]
    lines.append(f"status: {res.status}")
    return "\n".join(lines)


def dispatch(argv=None) -> tuple[CommandResult | None, int, argparse.Namespace | None]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return None, int(exc.code or 0), None
    try:
        numeric_tol()
        res = args.func(args)
    except (UsageError, ValueError) as err:
        print(f"cliffkit {args.command}: {err}", file=sys.stderr)
        return None, 2, args
    return res, res.exit_code, args


def main(argv=None) -> int:
    res, code, args = dispatch(argv)
    if res is not None:
        print(_emit_json(res) if args.json else _emit_text(res))
    return code


if __name__ == "__main__":
    sys.exit(main())
