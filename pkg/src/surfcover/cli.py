"""Command-line front end: ``surfcover build`` and ``surfcover check NAME``.

Exit codes: 0 when the verdict is TRUE, 2 when INCONCLUSIVE, 1 on FALSE or error.
Reports are JSON with sorted keys; integers other than ``schema`` are written
as decimal strings so that no precision is lost.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import tempfile
from fractions import Fraction

from . import nilcert, spancheck
from .covering import CoverError, abelian_rep, identity_rep, load_rep, mod_ell_rep, random_rep
from .curves import NONSEP, TopType, sample_curves, standard_pants
from .surface_model import SurfaceType

SCHEMA = 1
CHECKS = ("fullness", "symplectic", "twistfixed", "pants", "gap", "orbit", "powerlemma")

EXIT_TRUE, EXIT_FALSE, EXIT_INCONCLUSIVE = 0, 1, 2


def parse_abelian(spec: str):
    """``G:D1,D2,...:a1=x,y;b1=x,y`` -> abelian cover of genus G with the given targets."""
    try:
        g_txt, mod_txt, tgt_txt = spec.split(":", 2)
        moduli = [int(d) for d in mod_txt.split(",")]
        targets = {}
        for item in filter(None, tgt_txt.split(";")):
            name, vec = item.split("=")
            targets[name.strip()] = [int(x) for x in vec.split(",")]
    except ValueError:
        raise CoverError(f"cannot parse abelian spec {spec!r}; expected G:D1,...:a1=x,...;b1=...") from None
    return abelian_rep(int(g_txt), moduli, targets, label=f"abelian({spec})")


def rep_from_args(args):
    chosen = [x for x in ("cover", "mod_ell", "abelian", "identity", "random") if getattr(args, x) is not None]
    if len(chosen) > 1:
        raise CoverError("give only one of --cover, --mod-ell, --abelian, --identity, --random")
    if args.cover is not None:
        return load_rep(args.cover)
    if args.mod_ell is not None:
        return mod_ell_rep(*args.mod_ell)
    if args.abelian is not None:
        return parse_abelian(args.abelian)
    if args.random is not None:
        g, deg = args.random
        return random_rep(SurfaceType(g, 0), deg, args.seed)
    return identity_rep(SurfaceType(args.identity if args.identity is not None else args.g, 0))


def _stringify(obj, top=True):
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float):
        return "inf" if obj == float("inf") else repr(obj)
    if isinstance(obj, dict):
        return {str(k): (v if top and k == "schema" else _stringify(v, False)) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(v, False) for v in obj]
    if hasattr(obj, "item"):
        return _stringify(obj.item(), False)
    return str(obj)


def render(report: dict) -> str:
    return json.dumps(_stringify({"schema": SCHEMA, **report}), sort_keys=True, indent=2) + "\n"


def write_atomic(path: str, text: str) -> None:
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".surfcover-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _sigma(args, rep) -> list[TopType]:
    if args.sigma == "pants":
        return sorted({c.ttype for c in standard_pants(rep.st.genus).curves}, key=str)
    return [TopType.parse(args.sigma)]


def power_lemma_report(n: int, ell: int, trials: int, seed: int) -> dict:
    params = nilcert.NilParams(n, ell)
    rng = random.Random(seed)
    failures = {"power": 0, "central": 0}
    for _ in range(trials):
        u = nilcert.random_element(params, rng)
        v = nilcert.random_element(params, rng)
        if (u * v) ** ell != (u ** ell) * (v ** ell):
            failures["power"] += 1
        ul = u ** ell
        if ul * v != v * ul:
            failures["central"] += 1
    divides = (ell * (ell - 1) // 2) % params.ell_hat == 0
    ok = not any(failures.values()) and divides
    return {"check": "powerlemma", "n": n, "ell": ell, "ell_hat": params.ell_hat, "trials": trials,
            "rng_seed": seed, "failures": failures, "ell_hat_divides_binomial": divides,
            "verdict": "ALL_PASS" if ok else "FAIL", "status": spancheck.TRUE if ok else spancheck.FALSE}


def gap_report(g: int, ell: int, budget: int, seed: int, lattice: bool) -> dict:
    samples = sample_curves(SurfaceType(g, 0), NONSEP, budget, seed, include_seeds=True)
    cross = None
    if lattice:
        cover = spancheck.Cover.from_rep(mod_ell_rep(g, ell))
        cross = lambda w, p: nilcert.lattice_route(cover.cx, cover.lat, samples, w)  # noqa: E731
    rep = nilcert.integral_gap_certificate(g, ell, samples, cross_check=cross)
    rep.update({"check": "gap", "budget": budget, "rng_seed": seed})
    ok = rep["verdict"] == "GAP_CERTIFIED"
    if lattice and (not rep["lattice_route"]["witness_class_nonzero"] or rep["lattice_route"]["witness_in_sampled_span"]):
        ok = False
    rep["status"] = spancheck.TRUE if ok else spancheck.INCONCLUSIVE
    return rep


def run_check(args) -> dict:
    name = args.name
    if name == "powerlemma":
        return power_lemma_report(args.n, args.ell, args.trials, args.seed)
    if name == "gap":
        return gap_report(args.g, args.ell, args.budget, args.seed, args.lattice)
    rep = rep_from_args(args)
    cover = spancheck.Cover.from_rep(rep)
    kw = dict(budget=args.budget, seed=args.seed, window=args.window)
    if name == "pants":
        return spancheck.pants_span_check(cover, standard_pants(rep.st.genus), **kw)
    sigma = _sigma(args, rep)
    if name == "fullness":
        return spancheck.rational_fullness(cover, sigma, **kw)
    if name == "symplectic":
        return spancheck.symplectic_check(cover, sigma, **kw)
    if name == "twistfixed":
        return spancheck.lemma_twistfixed_check(cover, sigma, **kw)
    if name == "orbit":
        return spancheck.orbit_check(cover, sigma, **kw)
    raise ValueError(f"unknown check {name!r}")


def _add_cover_flags(p: argparse.ArgumentParser) -> None:
    grp = p.add_argument_group("cover")
    grp.add_argument("--cover", metavar="FILE", help="JSON cover description")
    grp.add_argument("--mod-ell", nargs=2, type=int, metavar=("G", "L"), help="mod-L homology cover of genus G")
    grp.add_argument("--abelian", metavar="SPEC", help="abelian cover, G:D1,...:a1=x,...;b1=...")
    grp.add_argument("--identity", type=int, metavar="G", help="trivial cover of genus G")
    grp.add_argument("--random", nargs=2, type=int, metavar=("G", "N"), help="random transitive degree-N cover")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="surfcover", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a cover and print its summary")
    _add_cover_flags(b)
    b.add_argument("--g", type=int, default=2)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out", metavar="FILE")

    c = sub.add_parser("check", help="run a verification and write a JSON report")
    c.add_argument("name", choices=CHECKS)
    _add_cover_flags(c)
    c.add_argument("--sigma", default="nonseparating", help="nonseparating | separating1 | pants")
    c.add_argument("--budget", type=int, default=spancheck.DEFAULT_BUDGET)
    c.add_argument("--window", type=int, default=spancheck.DEFAULT_WINDOW)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--g", type=int, default=2)
    c.add_argument("--ell", type=int, default=3)
    c.add_argument("--n", type=int, default=3)
    c.add_argument("--trials", type=int, default=1000)
    c.add_argument("--lattice", action="store_true", help="gap: also run the cover-lattice cross-check")
    c.add_argument("--out", metavar="FILE")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "build":
            rep = rep_from_args(args)
            cover = spancheck.Cover.from_rep(rep)
            from .covering import cover_summary
            report = {"command": "build", **cover_summary(cover.cx, cover.lat)}
            _emit(render(report), args.out)
            return EXIT_TRUE
        report = run_check(args)
    except (CoverError, ValueError) as exc:
        print(f"surfcover: error: {exc}", file=sys.stderr)
        return EXIT_FALSE
    except AssertionError as exc:
        print(f"surfcover: hard failure: {exc}", file=sys.stderr)
        return EXIT_FALSE
    _emit(render(report), args.out)
    status = report.get("status")
    if status == spancheck.TRUE:
        return EXIT_TRUE
    if status == spancheck.INCONCLUSIVE:
        return EXIT_INCONCLUSIVE
    return EXIT_FALSE


if __name__ == "__main__":
    sys.exit(main())
