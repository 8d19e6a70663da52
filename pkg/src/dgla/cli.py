"""Command-line front end.

Every command reads JSON inputs, runs a computation over an explicit degree
window, and emits a machine-readable report.  Exit codes: 0 when all
verdicts pass, 1 when a verification fails (the report is still written),
2 on malformed input (with a position-annotated message on stderr).

Report files have the shape {"report": <body>, "timing": seconds}; the body
is serialized canonically, so two runs on identical inputs are
byte-identical modulo the timing field.
"""

import argparse
import sys
import time

from . import expr as expr_mod
from . import io as io_mod
from .ce import ce_cohomology
from .derivations import der_complex, deru
from .errors import DglaError, GrammarError, SchemaError, WindowTooNarrow
from .expmc import exp_automorphism, homotopy_check, mc_check
from .gluing import boundary_connected_sum, forget_compare, glue_headline_g
from .graded import betti_numbers
from .models import build_block_g, build_g, tilde_model
from .morphisms import GeneratorMorphism, check_morphism
from .presentation import lie_chain_slice, presentation_slice
from .slices import SliceElement


def _window(args):
    if args.min > args.max:
        raise SchemaError("window min exceeds max", "")
    return (args.min, args.max)


def _verdict(name, ok, witness=None):
    v = {"name": name, "pass": bool(ok)}
    if witness is not None:
        v["witness"] = str(witness)
    return v


def _report_validation(rep, prefix=""):
    return [
        _verdict(prefix + name, ok, witness) for name, ok, witness in rep.checks
    ]


def _betti_table(b):
    return {str(k): v for k, v in sorted(b.items())}


def cmd_check(args, inputs):
    p = io_mod.load_presentation(io_mod.load_json_file(args.file))
    inputs.append(args.file)
    rep = p.validate()
    return {}, _report_validation(rep)


def cmd_homology(args, inputs):
    from .graded import homology as homology_op

    p = io_mod.load_presentation(io_mod.load_json_file(args.file))
    inputs.append(args.file)
    c = lie_chain_slice(p, max(0, args.min - 1), args.max + 1)
    res = homology_op(c, _window(args))
    betti = {str(k): v[0] for k, v in res.items()}
    reps = {}
    for k, (_, vectors) in res.items():
        if vectors:
            reps[str(k)] = [
                expr_mod.terms_to_str(p.element_from_vector(k, v).terms())
                for v in vectors
            ]
    dims = {str(d): p.dim(d) for d in range(args.min, args.max + 1)}
    tables = {"betti": betti, "dims": dims}
    if reps:
        tables["cycle_representatives"] = reps
    return tables, []


def cmd_indec(args, inputs):
    p = io_mod.load_presentation(io_mod.load_json_file(args.file))
    inputs.append(args.file)
    slc = p.indecomposables(args.sub)
    dims = {str(d): slc.dim(d) for d in range(slc.lo + 1, slc.hi)}
    minimal = p.is_minimal(args.sub)
    return {"dims": dims, "minimal": minimal}, []


def cmd_der(args, inputs):
    p = io_mod.load_presentation(io_mod.load_json_file(args.file))
    inputs.append(args.file)
    rho = None
    if args.rho:
        rho, _ = io_mod.load_rho(io_mod.load_json_file(args.rho), p)
        inputs.append(args.rho)
    if args.deru:
        mode = "trivial-differential" if args.mode == "trivial-differential" else "semisimple-indec"
        if mode == "semisimple-indec" and p.differential and not args.assert_semisimple:
            raise SchemaError(
                "deru in semisimple-indec mode needs --assert-semisimple", ""
            )
        slc = deru(p, args.sub, rho, _window(args), mode=mode)
        chain = slc.to_chain(pad_below=True)
    else:
        slc = der_complex(p, args.sub, _window(args))
        chain = slc.to_chain()
    dims = {str(d): slc.dim(d) for d in range(slc.lo, slc.hi + 1)}
    b = betti_numbers(chain, (chain.lo + 1, chain.hi - 1))
    return {"dims": dims, "betti": _betti_table(b)}, []


def cmd_ce(args, inputs):
    obj = io_mod.load_json_file(args.file)
    inputs.append(args.file)
    if "window" in obj:
        g = io_mod.load_slice(obj)
        if getattr(g, "bounded", False) and g.hi < args.max:
            g = g.pad_to(min(g.lo, 0), args.max)
    else:
        p = io_mod.load_presentation(obj)
        g = presentation_slice(p, 0, args.max)
    b = ce_cohomology(g, args.coeff_dim, _window(args))
    return {"betti": _betti_table(b)}, []


def cmd_model(args, inputs):
    inputs.append(args.file)
    verdicts = []
    try:
        m = io_mod.load_manifold(io_mod.load_json_file(args.file))
    except DglaError as e:
        if isinstance(e, (SchemaError, GrammarError)):
            raise
        return {}, [_verdict("model_valid", False, e)]
    verdicts.append(_verdict("model_valid", True))
    tables = {
        "omega": expr_mod.terms_to_str(m.omega.terms()) or "0",
        "model": io_mod.serialize_manifold(m),
    }
    return tables, verdicts


def cmd_tilde(args, inputs):
    m = io_mod.load_manifold(io_mod.load_json_file(args.file))
    inputs.append(args.file)
    tilde, inc, proj = tilde_model(m)
    verdicts = []
    verdicts.extend(_report_validation(tilde.validate(), "tilde_"))
    verdicts.append(_verdict("minimal_rel_beta", tilde.is_minimal("beta")))
    verdicts.extend(_report_validation(check_morphism(proj), "projection_"))
    return {"tilde": io_mod.serialize_presentation(tilde)}, verdicts


def cmd_xi(args, inputs):
    m = io_mod.load_manifold(io_mod.load_json_file(args.file))
    inputs.append(args.file)
    if m.presentation.differential and not args.assert_semisimple:
        raise SchemaError("xi on a model with nonzero differential needs --assert-semisimple", "")
    tilde, inc, proj = tilde_model(m)
    mode = "trivial-differential" if not m.presentation.differential else "semisimple-indec"
    lo, hi = _window(args)
    ul = deru(m.presentation, "omega", None, (lo, hi + 1), mode=mode)
    ut = deru(tilde, "beta", None, (lo, hi + 1), mode="semisimple-indec")
    bl = betti_numbers(ul.to_chain(pad_below=True), (lo, hi))
    bt = betti_numbers(ut.to_chain(pad_below=True), (lo, hi))
    verdicts = [
        _verdict("rank_agree_degree_%d" % k, bl[k] == bt[k], "%d vs %d" % (bl[k], bt[k]))
        for k in range(lo, hi + 1)
    ]
    return {"left": _betti_table(bl), "right": _betti_table(bt)}, verdicts


def _g_tables(slc, lo, hi):
    dims = {str(d): slc.dim(d) for d in range(lo, hi + 1)}
    b = betti_numbers(slc.to_chain(pad_below=True), (lo, max(lo, hi - 1)))
    return {"dims": dims, "betti": _betti_table(b)}


def cmd_block_g(args, inputs):
    m = io_mod.load_manifold(io_mod.load_json_file(args.file))
    inputs.append(args.file)
    if m.presentation.differential and not args.assert_semisimple:
        raise SchemaError("block-g on a model with nonzero differential needs --assert-semisimple", "")
    g = build_block_g(m, _window(args))
    g.check_d_squared()
    return _g_tables(g, args.min, args.max), [_verdict("d_squared_zero", True)]


def cmd_g(args, inputs):
    p = io_mod.load_presentation(io_mod.load_json_file(args.file))
    inputs.append(args.file)
    rho = pi = None
    if args.rho:
        rho, pi = io_mod.load_rho(io_mod.load_json_file(args.rho), p)
        inputs.append(args.rho)
    if not args.mode == "trivial-differential" and p.differential and not args.assert_semisimple:
        raise SchemaError("g in semisimple-indec mode needs --assert-semisimple", "")
    mode = "trivial-differential" if args.mode == "trivial-differential" else "semisimple-indec"
    g = build_g(p, args.sub_b, args.sub, rho, pi, _window(args), mode=mode)
    g.check_d_squared()
    return _g_tables(g, max(0, args.min), args.max), [_verdict("d_squared_zero", True)]


def cmd_glue(args, inputs):
    m = io_mod.load_manifold(io_mod.load_json_file(args.left))
    n = io_mod.load_manifold(io_mod.load_json_file(args.right))
    inputs.extend([args.left, args.right])
    if not args.assert_semisimple:
        raise SchemaError("glue needs --assert-semisimple", "")
    mn = boundary_connected_sum(m, n)
    w = _window(args)
    gm = build_block_g(m, w)
    gn = build_block_g(n, w)
    gmn = build_block_g(mn, w)
    gmap = glue_headline_g(
        gm, gn, gmn, mn.left_names, mn.right_names, assert_semisimple=True
    )
    tables = {
        "left_dims": {str(d): gm.dim(d) for d in range(w[0], w[1] + 1)},
        "right_dims": {str(d): gn.dim(d) for d in range(w[0], w[1] + 1)},
        "glued_dims": {str(d): gmn.dim(d) for d in range(w[0], w[1] + 1)},
    }
    return tables, _report_validation(gmap.report, "glue_")


def cmd_connected_sum(args, inputs):
    m = io_mod.load_manifold(io_mod.load_json_file(args.left))
    n = io_mod.load_manifold(io_mod.load_json_file(args.right))
    inputs.extend([args.left, args.right])
    mn = boundary_connected_sum(m, n)
    return (
        {
            "model": io_mod.serialize_manifold(mn),
            "omega": expr_mod.terms_to_str(mn.omega.terms()) or "0",
        },
        [_verdict("omega_additive", True)],
    )


def cmd_forget(args, inputs):
    m = io_mod.load_manifold(io_mod.load_json_file(args.file))
    inputs.append(args.file)
    if m.presentation.differential and not args.assert_semisimple:
        raise SchemaError("forget on a model with nonzero differential needs --assert-semisimple", "")
    rows = forget_compare(m, _window(args))
    return {"comparison": rows}, []


def cmd_exp(args, inputs):
    p = io_mod.load_presentation(io_mod.load_json_file(args.file))
    inputs.append(args.file)
    th = io_mod.load_derivation(io_mod.load_json_file(args.derivation), p)
    inputs.append(args.derivation)
    e = exp_automorphism(th)
    e_inv = exp_automorphism(th.scale(-1))
    ident = GeneratorMorphism.identity(p)
    verdicts = _report_validation(check_morphism(e, fixed_sub=th.rel), "exp_")
    verdicts.append(_verdict("exp_inverse_identity", e.compose(e_inv) == ident))
    images = {
        n: expr_mod.terms_to_str(v.terms()) or "0" for n, v in e.images.items()
    }
    return {"images": images}, verdicts


def cmd_mc(args, inputs):
    obj = io_mod.load_json_file(args.file)
    inputs.append(args.file)
    slc = io_mod.load_slice(obj)
    cand = obj.get("candidate")
    if cand is None:
        raise SchemaError("mc needs a 'candidate' field in the slice file", "/candidate")
    if not slc.in_window(-1) or not slc.in_window(-2):
        raise SchemaError("mc needs the slice window to cover degrees -1 and -2", "/window")
    vec = [io_mod.parse_rational(cand.get(nm, 0), "/candidate") for nm in slc.labels[-1]]
    tau = SliceElement(slc, -1, vec)
    ok, residual = mc_check(tau)
    res = {
        nm: io_mod.rational_str(c)
        for nm, c in zip(slc.labels[-2], residual.vector)
        if c
    }
    return {"residual": res}, [_verdict("maurer_cartan", ok, res if not ok else None)]


def cmd_homotopy(args, inputs):
    obj = io_mod.load_json_file(args.file)
    inputs.append(args.file)
    for key in ("source", "target", "f", "g", "h"):
        if key not in obj:
            raise SchemaError("homotopy input needs %r" % key, "/%s" % key)
    src = io_mod.load_presentation(obj["source"])
    tgt = io_mod.load_presentation(obj["target"])

    def images(values):
        out = {}
        for name, deg in src.generators.entries:
            v = values.get(name)
            out[name] = tgt.zero(deg) if v is None else v
        return out

    f = GeneratorMorphism(src, tgt, images(obj["f"]))
    g = GeneratorMorphism(src, tgt, images(obj["g"]))
    h_values = {}
    for name, parts in obj["h"].items():
        h_values[name] = (parts.get("one", {}), parts.get("dt", {}))
    rep = homotopy_check(h_values, f, g, rel=obj.get("rel"))
    return {}, _report_validation(rep, "homotopy_")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="dgla",
        description="Exact computations with dg Lie algebra presentations.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, window=True, **extra):
        sp = sub.add_parser(name)
        sp.set_defaults(fn=fn)
        if window:
            sp.add_argument("--min", type=int, required=True)
            sp.add_argument("--max", type=int, required=True)
        sp.add_argument("--out", default=None)
        return sp

    sp = add("check", cmd_check, window=False)
    sp.add_argument("file")
    sp = add("homology", cmd_homology)
    sp.add_argument("file")
    sp = add("indec", cmd_indec, window=False)
    sp.add_argument("file")
    sp.add_argument("--sub", default=None)
    sp = add("der", cmd_der)
    sp.add_argument("file")
    sp.add_argument("--sub", default=None)
    sp.add_argument("--deru", action="store_true")
    sp.add_argument("--rho", default=None)
    sp.add_argument("--assert-semisimple", action="store_true")
    sp.add_argument("--mode", choices=["trivial-differential"], default=None)
    sp = add("ce", cmd_ce)
    sp.add_argument("file")
    sp.add_argument("--coeff-dim", type=int, default=1)
    sp = add("model", cmd_model, window=False)
    sp.add_argument("file")
    sp = add("tilde", cmd_tilde, window=False)
    sp.add_argument("file")
    sp = add("xi", cmd_xi)
    sp.add_argument("file")
    sp.add_argument("--assert-semisimple", action="store_true")
    sp = add("block-g", cmd_block_g)
    sp.add_argument("file")
    sp.add_argument("--assert-semisimple", action="store_true")
    sp = add("g", cmd_g)
    sp.add_argument("file")
    sp.add_argument("--sub", default=None, help="the relative sub (L_A)")
    sp.add_argument("--sub-b", default=None, help="the Hom-source sub (L_B)")
    sp.add_argument("--rho", default=None)
    sp.add_argument("--assert-semisimple", action="store_true")
    sp.add_argument("--mode", choices=["trivial-differential"], default=None)
    sp = add("glue", cmd_glue)
    sp.add_argument("left")
    sp.add_argument("right")
    sp.add_argument("--assert-semisimple", action="store_true")
    sp = add("connected-sum", cmd_connected_sum, window=False)
    sp.add_argument("left")
    sp.add_argument("right")
    sp = add("forget", cmd_forget)
    sp.add_argument("file")
    sp.add_argument("--assert-semisimple", action="store_true")
    sp = add("exp", cmd_exp, window=False)
    sp.add_argument("file")
    sp.add_argument("--derivation", required=True)
    sp = add("mc", cmd_mc, window=False)
    sp.add_argument("file")
    sp = add("homotopy", cmd_homotopy, window=False)
    sp.add_argument("file")
    return ap


def run(argv):
    """Parse, dispatch, and write a report; returns (exit_code, payload)."""
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return (2 if e.code not in (0, None) else 0), None
    start = time.monotonic()
    inputs = []
    try:
        tables, verdicts = args.fn(args, inputs)
    except (SchemaError, GrammarError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2, None
    except WindowTooNarrow as e:
        msg = str(e)
        if e.required is not None:
            msg += " (required window: [%d, %d])" % e.required
        print("error: %s" % msg, file=sys.stderr)
        return 2, None
    except KeyError as e:
        # referenced names (subalgebras, generators) must exist in inputs
        print("error: %s" % e, file=sys.stderr)
        return 2, None
    except DglaError as e:
        verdicts = [_verdict(type(e).__name__, False, e)]
        tables = {}
    body = {
        "command": [args.command] + _echo_args(args),
        "inputs": {path: io_mod.file_sha256(path) for path in inputs},
        "tables": tables,
        "verdicts": verdicts,
    }
    timing = time.monotonic() - start
    if args.out:
        payload = io_mod.write_report_atomic(args.out, body, timing)
    else:
        payload = '{"report":%s,"timing":%s}\n' % (
            io_mod.canonical_dumps(body),
            round(timing, 6),
        )
        sys.stdout.write(payload)
    ok = all(v["pass"] for v in verdicts)
    return (0 if ok else 1), payload


def _echo_args(args):
    skip = {"fn", "command", "out"}
    out = []
    for k in sorted(vars(args)):
        if k in skip:
            continue
        v = getattr(args, k)
        if v is None or v is False:
            continue
        out.append("%s=%s" % (k, v))
    return out


def main(argv=None):
    code, _ = run(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
