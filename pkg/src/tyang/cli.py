"""Scenario runner: declarative verification pipelines with JSON reports.

A scenario file names a pipeline and describes its inputs with small
constructor blocks; the runner executes the pipeline's checks in a fixed
order and emits a deterministic report (timings are opt-in because they
would break byte-for-byte reproducibility).
"""

import argparse
import json
import sys
import time
from fractions import Fraction

from tyang import daha as daha_mod
from tyang import drinfeld as drinfeld_mod
from tyang import twisted as twisted_mod
from tyang import yangian as yangian_mod
from tyang.exactalg import Poly, RatFun, rat
from tyang.glmn import ParitySeq, gl_from_json, make_Lab, make_vector_rep
from tyang.superlinalg import Grid2Witness


class InputError(ValueError):
    pass


PIPELINES = (
    "verify-yangian",
    "verify-twisted",
    "classify",
    "reduce",
    "daha",
    "drinfeld",
    "appendix",
)


# ---------------------------------------------------------------------------
# Declarative constructors.

def _rat_list(values):
    return [rat(v) for v in values]


def build_gl_module(spec):
    kind = spec.get("type")
    if kind == "vector":
        return make_vector_rep(ParitySeq(spec["ps"]))
    if kind == "Lab":
        return make_Lab(int(spec["s1"]), rat(spec["a"]), rat(spec["b"]))
    if kind == "gl-json":
        return gl_from_json(spec["data"])
    raise InputError(f"unknown gl module constructor {kind!r}")


def build_taction(spec):
    kind = spec.get("type")
    if kind == "evaluation":
        return yangian_mod.evaluation_action(build_gl_module(spec["module"]), rat(spec.get("z", 0)))
    if kind == "tensor":
        return yangian_mod.tensor_action(build_taction(spec["left"]), build_taction(spec["right"]))
    if kind == "trivial":
        return yangian_mod.trivial_action(ParitySeq(spec["ps"]))
    if kind == "dual":
        return yangian_mod.dual_action(build_taction(spec["of"]))
    raise InputError(f"unknown action constructor {kind!r}")


def build_baction(spec):
    kind = spec.get("type")
    if kind == "from-T":
        T = build_taction(spec["t"])
        ctx = twisted_mod.TwistedContext(T.ps, spec["eps"], spec.get("gamma"))
        return twisted_mod.b_from_T(T, ctx)
    if kind == "c-gamma":
        ctx = twisted_mod.TwistedContext(ParitySeq(spec["ps"]), spec["eps"])
        return twisted_mod.c_gamma(ctx, rat(spec["gamma"]))
    if kind == "tensor":
        return twisted_mod.b_tensor(build_taction(spec["t"]), build_baction(spec["b"]))
    if kind == "b-json":
        return twisted_mod.b_from_json(spec["data"])
    if kind == "corrupt-sign":
        base = build_baction(spec["base"])
        i, j = int(spec["i"]), int(spec["j"])
        b = dict(base.b)
        b[(i, j)] = b[(i, j)].scale(-1)
        return twisted_mod.BAction(base.ctx, base.space, b)
    raise InputError(f"unknown twisted constructor {kind!r}")


def build_daha_module(spec):
    kind = spec.get("type")
    if kind == "char":
        params = daha_mod.DahaParams(int(spec["l"]), rat(spec["theta1"]), rat(spec["theta2"]))
        return daha_mod.char_module(params, int(spec.get("sign_sigma", 1)), int(spec.get("sign_zeta", 1)))
    if kind == "principal":
        params = daha_mod.DahaParams(int(spec["l"]), rat(spec["theta1"]), rat(spec["theta2"]))
        return daha_mod.principal_series(params, _rat_list(spec["lambda"]))
    if kind == "daha-json":
        return daha_mod.daha_from_json(spec["data"])
    raise InputError(f"unknown hecke module constructor {kind!r}")


# ---------------------------------------------------------------------------
# Serialization helpers for report payloads.

def _rf_json(f: RatFun):
    return {"num": [str(c) for c in f.num.coeffs], "den": [str(c) for c in f.den.coeffs]}


def _poly_str(p: Poly):
    return [str(c) for c in p.coeffs]


def _witness_json(w):
    if w is None:
        return None
    if isinstance(w, Grid2Witness):
        return {
            "point": [str(w.point[0]), str(w.point[1])],
            "label": w.label,
            "lhs": [[str(x) for x in row] for row in w.lhs],
            "rhs": [[str(x) for x in row] for row in w.rhs],
        }
    return {"detail": str(w)}


# ---------------------------------------------------------------------------
# Pipelines.  Each returns a list of check dicts.

def _check(cid, anchor, ok, witness=None, data=None):
    rec = {"id": cid, "anchor": anchor, "status": "pass" if ok else "fail"}
    if witness is not None:
        rec["witness"] = witness
    if data is not None:
        rec["data"] = data
    return rec


def pipe_verify_yangian(inputs, max_dim):
    T = build_taction(inputs["t"])
    _guard_dim(T.dim * T.kappa, max_dim)
    checks = []
    w = yangian_mod.verify_rtt(T)
    checks.append(_check("exchange-relation", "series exchange relation on two auxiliary spaces", w is None, _witness_json(w)))
    Tp = yangian_mod.inverse_series_action(T)
    prod_ok = (T.full() @ Tp.full()).is_identity()
    checks.append(_check("inverse-product", "series times inverse series is the identity", prod_ok))
    if "xi" in inputs:
        xi = _rat_list(inputs["xi"])
        try:
            lams = yangian_mod.highest_lweight(T, xi)
            checks.append(_check("highest-weight", "upper series annihilate, diagonal series are scalar", True,
                                 data={"lambda": [_rf_json(l) for l in lams]}))
            res = yangian_mod.lambda_prime_check(T, xi, lams)
            checks.append(_check("inverse-weight-formula", "closed form of the inverse-series eigenvalues", res is None,
                                 None if res is None else {"detail": str(res)}))
        except yangian_mod.NotHighest as e:
            checks.append(_check("highest-weight", "upper series annihilate, diagonal series are scalar", False,
                                 {"detail": str(e)}))
    return checks


def pipe_verify_twisted(inputs, max_dim):
    B = build_baction(inputs["b"])
    _guard_dim(B.dim * B.kappa, max_dim)
    checks = []
    rep = twisted_mod.verify_b(B)
    checks.append(_check("reflection-equation", "quartic exchange relation with both spectral arguments",
                         rep.reflection is None, _witness_json(rep.reflection)))
    checks.append(_check("unitarity-scalar", "product at opposite arguments is an even scalar",
                         rep.scalar_ok and rep.even_ok,
                         None if rep.scalar_ok else {"detail": "non-scalar product"},
                         data={"f": _rf_json(rep.f)} if rep.f is not None else None))
    if "eta" in inputs:
        eta = _rat_list(inputs["eta"])
        try:
            mu = twisted_mod.highest_bweight(B, eta)
            checks.append(_check("highest-weight", "upper series annihilate, diagonal series are scalar", True,
                                 data={"mu": [_rf_json(m) for m in mu.mus]}))
            bad = twisted_mod.verma_conditions(mu)
            checks.append(_check("weight-symmetry", "highest-weight symmetry constraints", bad is None,
                                 None if bad is None else {"index": bad}))
        except yangian_mod.NotHighest as e:
            checks.append(_check("highest-weight", "upper series annihilate, diagonal series are scalar", False,
                                 {"detail": str(e)}))
    return checks


def pipe_classify(inputs, max_dim):
    B = build_baction(inputs["b"])
    _guard_dim(B.dim * B.kappa, max_dim)
    eta = _rat_list(inputs["eta"])
    mu = twisted_mod.highest_bweight(B, eta)
    checks = []
    bad = twisted_mod.verma_conditions(mu)
    checks.append(_check("weight-symmetry", "highest-weight symmetry constraints", bad is None,
                         None if bad is None else {"index": bad}))
    cert = twisted_mod.classify_rank1(mu)
    data = {"case": cert.case, "status": cert.status}
    if cert.P is not None:
        data["P"] = _poly_str(cert.P)
    if cert.gamma is not None:
        data["gamma"] = str(cert.gamma)
    checks.append(_check("rank1-certificate", "finite-dimensionality certificate polynomial",
                         cert.status == "verified", None, data))
    verdict = twisted_mod.irreducible_burnside(B)
    checks.append(_check("irreducibility", "span closure of the expansion coefficients",
                         verdict.status in ("irreducible", "reducible"),
                         None, {"verdict": verdict.status, "closure": verdict.closure_dim}))
    return checks


def pipe_reduce(inputs, max_dim):
    B = build_baction(inputs["b"])
    _guard_dim(B.dim * B.kappa, max_dim)
    mode = inputs["mode"]
    a = int(inputs["a"]) if "a" in inputs else None
    checks = []
    try:
        red = twisted_mod.reduce_rank(B, mode, a)
    except twisted_mod.EmptySubspace as e:
        return [_check("reduction-exists", "singular subspace of the reduction", False, {"detail": str(e)})]
    checks.append(_check("reduction-exists", "singular subspace of the reduction", True,
                         data={"dim": red.dim}))
    rep = twisted_mod.verify_b(red)
    checks.append(_check("reduced-relations", "relations of the lower-rank family on the subspace",
                         rep.reflection is None and rep.scalar_ok and rep.even_ok,
                         _witness_json(rep.reflection)))
    if mode == "star":
        K = red.provenance[3]
        shift = B.ps.rho(a + 2) / 2
        ok = all(
            red.tilde_operator(i) == twisted_mod.restrict_rf(B.tilde_operator(a + i - 1).shift(shift), K)
            for i in (1, 2)
        )
        checks.append(_check("tilde-shift", "spectral shift of the diagonal combinations", ok))
    return checks


def pipe_daha(inputs, max_dim):
    M = build_daha_module(inputs["m"])
    _guard_dim(M.dim, max_dim)
    checks = []
    bad = daha_mod.verify_daha(M)
    checks.append(_check("relations", "defining relations of the degenerate Hecke algebra", bad is None,
                         None if bad is None else {"relation": bad}))
    if M.params.kind == "BC":
        _ys, fail = daha_mod.sf_presentation(M)
        checks.append(_check("transformed-presentation", "anticommuting family and its bracket formula",
                             fail is None, None if fail is None else {"relation": fail}))
    if "center" in inputs:
        poly = {tuple(int(e) for e in term["mono"]): rat(term["coeff"]) for term in inputs["center"]}
        bad = daha_mod.center_check(M, poly)
        checks.append(_check("center", "symmetric polynomials in the squares are central", bad is None,
                             None if bad is None else {"generator": bad}))
    return checks


def pipe_drinfeld(inputs, max_dim):
    M = build_daha_module(inputs["m"])
    ps = ParitySeq(inputs["ps"])
    eps = inputs["eps"]
    epsilon = int(inputs.get("epsilon", 1))
    kwargs = {}
    if "chi" in inputs:
        kwargs["chi"] = rat(inputs["chi"])
    if "gamma" in inputs:
        kwargs["gamma"] = rat(inputs["gamma"])
    _guard_dim(M.dim * ps.kappa ** (M.params.l + 1), max_dim)
    checks = []
    try:
        D = drinfeld_mod.drinfeld_BC(M, ps, eps, epsilon, **kwargs)
    except drinfeld_mod.WellDefinednessFailure as e:
        return [_check("well-defined", "series coefficients preserve the quotient subspace", False,
                       {"witness": str(e.witness)})]
    checks.append(_check("well-defined", "series coefficients preserve the quotient subspace", True,
                         data={"dim": D.dim}))
    if D.action is not None:
        rep = twisted_mod.verify_b(D.action)
        checks.append(_check("reduced-relations", "reflection and scalar conditions on the functor output",
                             rep.reflection is None and rep.scalar_ok and rep.even_ok,
                             _witness_json(rep.reflection),
                             data={"f": _rf_json(rep.f)}))
    if inputs.get("expansion", True):
        res = drinfeld_mod.bchi_expansion_check(M, ps, eps, epsilon)
        checks.append(_check("expansion", "first three series coefficients in closed form", res is None,
                             None if res is None else {"order": res[0], "entry": list(res[1])}))
    return checks


def pipe_appendix(inputs, max_dim):
    ps = ParitySeq(inputs["ps"])
    l = int(inputs["l"])
    _guard_dim(ps.kappa ** (l + 1), max_dim)
    bad = drinfeld_mod.appendix_identities(ps, inputs["eps"], l)
    return [_check("operator-identities", "coupling-operator identities on the tensor power",
                   bad is None, None if bad is None else {"identity": bad})]


PIPELINE_FUNCS = {
    "verify-yangian": pipe_verify_yangian,
    "verify-twisted": pipe_verify_twisted,
    "classify": pipe_classify,
    "reduce": pipe_reduce,
    "daha": pipe_daha,
    "drinfeld": pipe_drinfeld,
    "appendix": pipe_appendix,
}


def _guard_dim(dim, max_dim):
    if dim > max_dim:
        raise InputError(f"module dimension {dim} exceeds the safety cap {max_dim}")


def run_scenario(path, only=None, max_dim=64, timings=False):
    """Execute one scenario file; returns (report dict, exit code)."""
    try:
        with open(path) as fh:
            scenario = json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from e
    for field in ("name", "pipeline", "inputs"):
        if field not in scenario:
            raise InputError(f"scenario is missing the {field!r} field")
    pipeline = scenario["pipeline"]
    func = PIPELINE_FUNCS.get(pipeline)
    if func is None:
        raise InputError(f"unknown pipeline {pipeline!r}")
    t0 = time.monotonic()
    checks = func(scenario["inputs"], max_dim)
    elapsed = time.monotonic() - t0
    if only is not None:
        checks = [c for c in checks if c["id"] == only]
        if not checks:
            raise InputError(f"no check with id {only!r} in pipeline {pipeline!r}")
    checks.sort(key=lambda c: c["id"])
    overall = "pass" if all(c["status"] == "pass" for c in checks) else "fail"
    report = {
        "scenario": scenario["name"],
        "pipeline": pipeline,
        "checks": checks,
        "overall": overall,
    }
    expectations = scenario.get("expectations") or {}
    if expectations:
        mismatches = _expectation_mismatches(expectations, report)
        report["expectations"] = "pass" if not mismatches else mismatches
        if mismatches:
            report["overall"] = "fail"
    if timings:
        report["elapsed_seconds"] = round(elapsed, 3)
    return report, 0 if report["overall"] == "pass" else 1


def _expectation_mismatches(expect, report):
    out = []
    if "overall" in expect and expect["overall"] != report["overall"]:
        out.append({"field": "overall", "expected": expect["overall"], "got": report["overall"]})
    for cid, fields in (expect.get("checks") or {}).items():
        rec = next((c for c in report["checks"] if c["id"] == cid), None)
        if rec is None:
            out.append({"field": cid, "expected": "present", "got": "missing"})
            continue
        for key, val in fields.items():
            data = rec.get("data") or {}
            got = data.get(key) if key in data else rec.get(key)
            if got != val:
                out.append({"field": f"{cid}.{key}", "expected": val, "got": got})
    return out


def main(argv=None):
    parser = argparse.ArgumentParser(prog="tyang", description=__doc__)
    sub = parser.add_subparsers(dest="command")
    runp = sub.add_parser("run", help="run one scenario file")
    runp.add_argument("scenario")
    runp.add_argument("--out", help="write the report here instead of stdout")
    runp.add_argument("--only", help="run only the check with this id")
    runp.add_argument("--max-dim", type=int, default=64, help="safety cap on carrier dimensions")
    runp.add_argument("--timings", action="store_true", help="include wall-clock timing (non-reproducible)")
    runp.add_argument("--list-pipelines", action="store_true")
    sub.add_parser("list", help="list the available pipelines")
    args = parser.parse_args(argv)

    if args.command == "list" or (args.command == "run" and args.list_pipelines):
        for p in PIPELINES:
            print(p)
        return 0
    if args.command != "run":
        parser.print_help()
        return 2
    try:
        report, code = run_scenario(args.scenario, args.only, args.max_dim, args.timings)
    except InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
