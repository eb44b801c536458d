"""Command-line interface.

Verb grammar:

    symtt ham    {build, certify, spectrum, ground}
    symtt mps    {from-vector, to-vector, eval, normalize, truncate, check}
    symtt sym    {detect, construct, normal-form, verify, orbits, dof}
    symtt struct {classify, split, blockdiag, circulant-eig}

Reports go to stdout as key=value lines (or one JSON object with --json);
matrices, vectors, chains, and witnesses go to files in the documented MAT1 /
VEC1 / MPS1 / WIT formats.  Exit codes: 0 success, 1 domain error, 2 usage.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import fileio, hamiltonian, mps, structured, symmetry
from .errors import SymttError
from .linalg import frob
from .symmetry import SymmetryWitness


def _g17(value: float) -> str:
    return f"{value:.17g}"


class Report:
    """Ordered key=value collector with a --json rendering."""

    def __init__(self):
        self.items: list[tuple[str, object]] = []

    def add(self, key: str, value) -> None:
        self.items.append((key, value))

    def emit(self, as_json: bool) -> None:
        if as_json:
            print(json.dumps(dict(self.items), default=str))
            return
        for key, value in self.items:
            if isinstance(value, float):
                value = _g17(value)
            print(f"{key}={value}")


def _model_params(args) -> dict:
    params = {}
    for key, attr in (("jx", "jx"), ("jy", "jy"), ("jz", "jz"), ("lam", "lam"), ("theta", "theta")):
        val = getattr(args, attr, None)
        if val is not None:
            params[key] = val
    return params


def _spec_from_args(args) -> hamiltonian.HamiltonianSpec:
    return hamiltonian.model(args.model, args.p, _model_params(args), boundary=args.bc)


def _add_model_args(sub) -> None:
    sub.add_argument("--model", required=True, choices=hamiltonian.MODEL_NAMES)
    sub.add_argument("--p", type=int, required=True)
    sub.add_argument("--jx", type=float)
    sub.add_argument("--jy", type=float)
    sub.add_argument("--jz", type=float)
    sub.add_argument("--lambda", dest="lam", type=float)
    sub.add_argument("--theta", type=float)
    sub.add_argument("--bc", choices=("open", "periodic"), default="open")


def _flags_report(rep: Report, flags: structured.StructureFlags) -> None:
    for name in (
        "symmetric",
        "skew_symmetric",
        "hermitian",
        "persymmetric",
        "skew_persymmetric",
        "centrosymmetric",
        "toeplitz",
        "circulant",
        "skew_circulant",
        "diagonal",
    ):
        rep.add(name, str(getattr(flags, name)).lower())
    if flags.omega is not None:
        rep.add("omega", f"{flags.omega.real:.17g}{flags.omega.imag:+.17g}j")


# ------------------------------------------------------------------- ham verbs

def _run_ham(args, rep: Report) -> None:
    if args.verb == "build":
        h = hamiltonian.assemble(_spec_from_args(args))
        fileio.write_mat(args.out, h)
        rep.add("written", args.out)
        rep.add("dim", h.shape[0])
    elif args.verb == "certify":
        if args.matrix is not None:
            flags = structured.classify(fileio.read_mat(args.matrix), tol=args.tol)
        else:
            flags = hamiltonian.certify_structure(_spec_from_args(args), tol=args.tol)
        _flags_report(rep, flags)
    elif args.verb == "spectrum":
        h = hamiltonian.assemble(_spec_from_args(args))
        values = np.linalg.eigvalsh(h)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write("\n".join(_g17(v) for v in values) + "\n")
            rep.add("written", args.out)
        else:
            for v in values:
                print(_g17(v))
        rep.add("dim", h.shape[0])
    elif args.verb == "ground":
        report = hamiltonian.ground_state(_spec_from_args(args))
        rep.add("energy", report.ground_energy)
        rep.add("gap", report.gap)
        if args.out:
            fileio.write_mat(args.out, report.ground_vector.reshape(-1, 1))
            rep.add("written", args.out)


# ------------------------------------------------------------------- mps verbs

def _run_mps(args, rep: Report) -> None:
    if args.verb == "from-vector":
        state = mps.from_vector(fileio.read_vec(args.vec), tol=args.tol)
        fileio.write_mps(args.out, state)
        rep.add("written", args.out)
        rep.add("dims", ",".join(str(d) for d in state.dims))
    elif args.verb == "to-vector":
        x = mps.to_vector(fileio.read_mps(args.mps))
        fileio.write_vec(args.out, x)
        rep.add("written", args.out)
    elif args.verb == "eval":
        state = fileio.read_mps(args.mps)
        bits = [int(b) for b in args.bits]
        z = mps.eval_component(state, bits)
        rep.add("re", z.real)
        rep.add("im", z.imag)
    elif args.verb == "normalize":
        state = fileio.read_mps(args.mps)
        if args.form in ("left", "right"):
            out = mps.two_site_sweep(state, args.form)
        elif args.form == "strong":
            out = mps.strong_normalize(mps.two_site_sweep(state, "left"))
        else:  # vidal
            vform = mps.vidal_from_vector(mps.to_vector(state))
            for j, lam in enumerate(vform.lambdas, start=1):
                rep.add(f"lambda_{j}", ",".join(_g17(v) for v in lam))
            out = mps.vidal_to_a(vform, "left")
        fileio.write_mps(args.out, out)
        rep.add("written", args.out)
        rep.add("dims", ",".join(str(d) for d in out.dims))
    elif args.verb == "truncate":
        state = fileio.read_mps(args.mps)
        out = mps.truncate(state, d_max=args.dmax, tol=args.tol)
        fileio.write_mps(args.out, out)
        rep.add("written", args.out)
        rep.add("dims", ",".join(str(d) for d in out.dims))
    elif args.verb == "check":
        state = fileio.read_mps(args.mps)
        report = mps.check_gauge(state)
        residuals = getattr(report, args.gauge)
        for j, r in enumerate(residuals, start=1):
            rep.add(f"site_{j}", r)
        rep.add("max_residual", max(residuals))


# ------------------------------------------------------------------- sym verbs

def _run_sym(args, rep: Report) -> None:
    if args.verb == "detect":
        kinds = symmetry.detect_vector_symmetries(fileio.read_vec(args.vec), tol=args.tol)
        rep.add("kinds", ",".join(sorted(kinds)) or "none")
    elif args.verb == "construct":
        _run_sym_construct(args, rep)
    elif args.verb == "normal-form":
        _run_sym_normal_form(args, rep)
    elif args.verb == "verify":
        state = fileio.read_mps(args.mps)
        witness = fileio.read_witness(args.wit)
        report = symmetry.verify_relation(state, witness)
        rep.add("kind", report.kind)
        rep.add("max_residual", report.max_residual)
        for j, r in enumerate(report.site_residuals, start=1):
            rep.add(f"site_{j}", r)
        for j, r in enumerate(report.consistency_residuals, start=1):
            rep.add(f"consistency_{j}", r)
    elif args.verb == "orbits":
        report = symmetry.orbits(args.bits)
        # orbit reports are newline-delimited sorted bit strings per section
        if args.json:
            rep.add("shift_orbit", sorted(report.shift_orbit))
            rep.add("flip_orbit", sorted(report.flip_orbit))
            rep.add("reverse_orbit", sorted(report.reverse_orbit))
        else:
            for name, orbit in (
                ("shift_orbit", report.shift_orbit),
                ("flip_orbit", report.flip_orbit),
                ("reverse_orbit", report.reverse_orbit),
            ):
                print(name)
                for bits in sorted(orbit):
                    print(bits)
    elif args.verb == "dof":
        kinds = [k for k in args.kinds.split(",") if k]
        report = symmetry.dof_count(args.p, kinds)
        for name, count in report.counts.items():
            rep.add(f"count_{name}", count)
        for name, factor in report.reduction_factors.items():
            rep.add(f"reduction_{name}", factor)


def _run_sym_construct(args, rep: Report) -> None:
    kind = args.kind
    if kind == "fullbit":
        state = symmetry.fullbit_state(fileio.read_mat(args.mat), args.p)
        witness = SymmetryWitness(kind="fullbit")
    elif kind in ("firstsite", "lastsite"):
        build = symmetry.firstsite_construct if kind == "firstsite" else symmetry.lastsite_construct
        state = build(fileio.read_vec(args.vec), sign=args.sign)
        witness = SymmetryWitness(kind=kind, sign=args.sign)
    else:
        base = mps.from_vector(fileio.read_vec(args.vec))
        if kind == "bitshift":
            state = symmetry.ti_construct(base, block_len=args.block_len)
            witness = SymmetryWitness(kind="bitshift", block_len=args.block_len)
        elif kind == "reverse":
            state, witness = symmetry.reverse_construct(base)
        else:  # bitflip
            state, witness = symmetry.bitflip_construct(base, sign=args.sign)
    fileio.write_mps(args.out, state)
    rep.add("written", args.out)
    rep.add("dims", ",".join(str(d) for d in state.dims))
    if args.wit:
        fileio.write_witness(args.wit, witness)
        rep.add("witness", args.wit)


def _run_sym_normal_form(args, rep: Report) -> None:
    kind = args.kind
    if kind == "reverse":
        x = fileio.read_vec(args.vec)
        nf = symmetry.reverse_normal_form(x)
        err = float(np.linalg.norm(nf.to_vector() - x))
        rep.add("reconstruction_error", err)
        for j, u in enumerate(nf.us, start=1):
            rep.add(f"unitarity_{j}", frob(u.conj().T @ u - np.eye(u.shape[1])))
        rep.add("sigma", ",".join(_g17(v) for v in nf.sigma))
        rep.add("lambda", ",".join(_g17(v) for v in nf.lam))
    elif kind == "bitflip":
        state = fileio.read_mps(args.mps)
        witness = fileio.read_witness(args.wit)
        out, diag = symmetry.bitflip_normal_form(state, witness)
        fileio.write_mps(args.out, out)
        rep.add("written", args.out)
        if args.wit_out:
            fileio.write_witness(args.wit_out, diag)
            rep.add("witness", args.wit_out)
    elif kind == "ti":
        state = fileio.read_mps(args.mps)
        check = symmetry.verify_relation(state, SymmetryWitness(kind="bitshift"))
        if check.max_residual > symmetry.EPS_SYM:
            raise SymttError(
                f"ti normal form needs a site-independent chain (site residual {check.max_residual:.2e})"
            )
        a0, a1 = state.sites[0]
        nf0, nf1 = symmetry.ti_normal_form(a0, a1)
        out = mps.MPSState([(nf0, nf1)] * state.p, boundary="periodic")
        fileio.write_mps(args.out, out)
        rep.add("written", args.out)
    else:  # fullbit
        lam, b = symmetry.fullbit_normal_form(fileio.read_mat(args.mat))
        fileio.write_mat(args.out, lam)
        fileio.write_mat(args.out2, b)
        rep.add("written", args.out)
        rep.add("written_b", args.out2)


# ---------------------------------------------------------------- struct verbs

def _run_struct(args, rep: Report) -> None:
    if args.verb == "classify":
        _flags_report(rep, structured.classify(fileio.read_mat(args.mat), tol=args.tol))
    elif args.verb == "split":
        persym, skew = structured.persym_split(fileio.read_mat(args.mat))
        fileio.write_mat(args.out_p, persym)
        fileio.write_mat(args.out_s, skew)
        rep.add("written_p", args.out_p)
        rep.add("written_s", args.out_s)
    elif args.verb == "blockdiag":
        pair = structured.block_diagonalize(fileio.read_mat(args.mat))
        fileio.write_mat(args.out_plus, pair.b_plus)
        fileio.write_mat(args.out_minus, pair.b_minus)
        rep.add("written_plus", args.out_plus)
        rep.add("written_minus", args.out_minus)
        if args.out_q:
            fileio.write_mat(args.out_q, pair.q)
            rep.add("written_q", args.out_q)
    elif args.verb == "circulant-eig":
        row = fileio.read_mat(args.mat).reshape(-1)
        values = structured.circulant_eigenvalues(row)
        for k, z in enumerate(values):
            rep.add(f"ev_{k}", f"{z.real:.17g}{z.imag:+.17g}j")


# --------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symtt", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="emit one JSON object instead of key=value lines")
    parser.add_argument("--seed", type=int, default=0, help="seed for any randomized checks (default 0)")
    groups = parser.add_subparsers(dest="group", required=True)

    ham = groups.add_parser("ham", help="Hamiltonian builders").add_subparsers(dest="verb", required=True)
    sub = ham.add_parser("build")
    _add_model_args(sub)
    sub.add_argument("--out", required=True)
    sub = ham.add_parser("certify")
    sub.add_argument("matrix", nargs="?", help="MAT1 file; omit to certify a model")
    _add_model_args_optional(sub)
    sub.add_argument("--tol", type=float, default=structured.EPS_STRUCT)
    sub = ham.add_parser("spectrum")
    _add_model_args(sub)
    sub.add_argument("--out")
    sub = ham.add_parser("ground")
    _add_model_args(sub)
    sub.add_argument("--out")

    mpsg = groups.add_parser("mps", help="matrix product state operations").add_subparsers(dest="verb", required=True)
    sub = mpsg.add_parser("from-vector")
    sub.add_argument("vec")
    sub.add_argument("--tol", type=float, default=0.0)
    sub.add_argument("--out", required=True)
    sub = mpsg.add_parser("to-vector")
    sub.add_argument("mps")
    sub.add_argument("--out", required=True)
    sub = mpsg.add_parser("eval")
    sub.add_argument("mps")
    sub.add_argument("--bits", required=True)
    sub = mpsg.add_parser("normalize")
    sub.add_argument("mps")
    sub.add_argument("--form", choices=("left", "right", "vidal", "strong"), required=True)
    sub.add_argument("--out", required=True)
    sub = mpsg.add_parser("truncate")
    sub.add_argument("mps")
    sub.add_argument("--dmax", type=int)
    sub.add_argument("--tol", type=float, default=0.0)
    sub.add_argument("--out", required=True)
    sub = mpsg.add_parser("check")
    sub.add_argument("mps")
    sub.add_argument("--gauge", choices=("left", "right", "strong"), default="left")

    symg = groups.add_parser("sym", help="symmetry detection and constructions").add_subparsers(dest="verb", required=True)
    sub = symg.add_parser("detect")
    sub.add_argument("vec")
    sub.add_argument("--tol", type=float, default=symmetry.EPS_SYM)
    sub = symg.add_parser("construct")
    sub.add_argument("--kind", choices=("bitshift", "reverse", "bitflip", "fullbit", "firstsite", "lastsite"), required=True)
    sub.add_argument("--vec", help="VEC1 input (all kinds except fullbit)")
    sub.add_argument("--mat", help="MAT1 input (fullbit)")
    sub.add_argument("--p", type=int, help="site count (fullbit)")
    sub.add_argument("--sign", type=int, choices=(1, -1), default=1)
    sub.add_argument("--block-len", dest="block_len", type=int, default=1)
    sub.add_argument("--out", required=True)
    sub.add_argument("--wit")
    sub = symg.add_parser("normal-form")
    sub.add_argument("--kind", choices=("reverse", "bitflip", "ti", "fullbit"), required=True)
    sub.add_argument("--vec", help="VEC1 input (reverse)")
    sub.add_argument("--mps", help="MPS1 input (bitflip, ti)")
    sub.add_argument("--mat", help="MAT1 input (fullbit)")
    sub.add_argument("--wit", help="witness input (bitflip)")
    sub.add_argument("--out")
    sub.add_argument("--out2", help="second output matrix (fullbit)")
    sub.add_argument("--wit-out", dest="wit_out")
    sub = symg.add_parser("verify")
    sub.add_argument("mps")
    sub.add_argument("--wit", required=True)
    sub = symg.add_parser("orbits")
    sub.add_argument("--bits", required=True)
    sub = symg.add_parser("dof")
    sub.add_argument("--p", type=int, required=True)
    sub.add_argument("--kinds", required=True, help="comma-separated: bitshift,bitflip,reverse")

    structg = groups.add_parser("struct", help="structured-matrix transforms").add_subparsers(dest="verb", required=True)
    sub = structg.add_parser("classify")
    sub.add_argument("mat")
    sub.add_argument("--tol", type=float, default=structured.EPS_STRUCT)
    sub = structg.add_parser("split")
    sub.add_argument("mat")
    sub.add_argument("--out-p", dest="out_p", required=True)
    sub.add_argument("--out-s", dest="out_s", required=True)
    sub = structg.add_parser("blockdiag")
    sub.add_argument("mat")
    sub.add_argument("--out-plus", dest="out_plus", required=True)
    sub.add_argument("--out-minus", dest="out_minus", required=True)
    sub.add_argument("--out-q", dest="out_q")
    sub = structg.add_parser("circulant-eig")
    sub.add_argument("mat", help="MAT1 file holding the first row (1 x n or n x 1)")

    return parser


def _add_model_args_optional(sub) -> None:
    sub.add_argument("--model", choices=hamiltonian.MODEL_NAMES)
    sub.add_argument("--p", type=int)
    sub.add_argument("--jx", type=float)
    sub.add_argument("--jy", type=float)
    sub.add_argument("--jz", type=float)
    sub.add_argument("--lambda", dest="lam", type=float)
    sub.add_argument("--theta", type=float)
    sub.add_argument("--bc", choices=("open", "periodic"), default="open")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    np.random.seed(args.seed)
    rep = Report()
    try:
        if args.group == "ham":
            if args.verb == "certify" and args.matrix is None and args.model is None:
                parser.error("ham certify needs a MAT1 file or --model")
            _run_ham(args, rep)
        elif args.group == "mps":
            _run_mps(args, rep)
        elif args.group == "sym":
            if args.verb == "construct":
                if args.kind == "fullbit" and (args.mat is None or args.p is None):
                    parser.error("sym construct --kind fullbit needs --mat and --p")
                if args.kind != "fullbit" and args.vec is None:
                    parser.error(f"sym construct --kind {args.kind} needs --vec")
            if args.verb == "normal-form":
                needed = {"reverse": ("vec",), "bitflip": ("mps", "wit", "out"), "ti": ("mps", "out"), "fullbit": ("mat", "out", "out2")}
                for field in needed[args.kind]:
                    if getattr(args, field) is None:
                        parser.error(f"sym normal-form --kind {args.kind} needs --{field}")
            _run_sym(args, rep)
        else:
            _run_struct(args, rep)
    except SymttError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    rep.emit(args.json)
    return 0


if __name__ == "__main__":
    sys.exit(main())
