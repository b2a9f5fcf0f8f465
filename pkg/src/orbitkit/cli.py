"""Command-line front end.

Every command prints one JSON report ``{"command", "inputs", "results",
"verdicts"}`` on stdout.  Exit status: 0 when no verdict is FAIL, 1 when one
is, 2 on bad input (the report is then an error object).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import catalog, jsonio
from .contraction import contract, necessary_report, orbit_vanishing_test, trace_functor_check, verify_certificate
from .errors import BadInput, NotAmenable, OrbitKitError
from .exactalg import INFINITY, QT, det
from .jsonio import enc_family, enc_form, enc_mat, enc_scalar, enc_structure
from .quadforms import (
    contraction_limit_qf,
    diagonalize,
    family_for_representation,
    ordered_diagonalize_qt,
    represents,
    witt_invariants,
)
from .structvec import invariant_dims, trace_form
from .verify import verify_paper

DEFAULT_SEED = 1
DEFAULT_SAMPLES = 100
DEFAULT_HEIGHT = 20


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise BadInput(f"usage: {message}")


def _order(o):
    return "inf" if o == INFINITY else o


def _verdict(name: str, ok, detail: str = "") -> dict:
    status = ok if isinstance(ok, str) else ("PASS" if ok else "FAIL")
    return {"check": name, "status": status, "detail": detail}


def _report(command: str, inputs: dict, results: dict, verdicts: list) -> dict:
    return {"command": command, "inputs": inputs, "results": results, "verdicts": verdicts}


def _inv_json(inv) -> dict:
    return {
        "trace_rank": inv.trace_rank,
        "annihilator_dim": inv.annihilator_dim,
        "square_dim": inv.square_dim,
        "derivation_dim": inv.derivation_dim,
        "commutative": inv.commutative,
        "associative": inv.associative,
    }


def _load(path, decoder):
    return decoder(jsonio.load(path))


# ---------------------------------------------------------------------------
# commands


def cmd_trace_form(args) -> dict:
    lam = _load(args.algebra, jsonio.dec_structure)
    T = trace_form(lam)
    return _report(
        "trace-form",
        {"algebra": enc_structure(lam)},
        {"trace_form": enc_form(T), "det": enc_scalar(det(T.gram)), "rank": T.rank},
        [],
    )


def cmd_contract(args) -> dict:
    lam = _load(args.algebra, jsonio.dec_structure)
    C = _load(args.family, jsonio.dec_family)
    res = contract(lam, C)
    inputs = {"algebra": enc_structure(lam), "family": enc_family(C)}
    results = {
        "lambda_t": enc_structure(res.lambda_t),
        "amenable": res.amenable,
        "min_order": _order(res.min_order),
        "limit": enc_structure(res.limit) if res.amenable else None,
    }
    verdicts = [_verdict("amenable", res.amenable, f"least order {_order(res.min_order)}")]
    if res.amenable:
        verdicts.append(_verdict("trace functoriality", trace_functor_check(lam, C)))
    if args.target:
        target = _load(args.target, jsonio.dec_structure)
        matcher = _load(args.matcher, jsonio.dec_mat) if args.matcher else None
        inputs["target"] = enc_structure(target)
        if matcher is not None:
            inputs["matcher"] = enc_mat(matcher)
        ok = verify_certificate(lam, C, target, matcher)
        verdicts.append(_verdict("certificate", ok, "limit equals target" if ok else "limit differs from target"))
    return _report("contract", inputs, results, verdicts)


def _blocks_json(dec) -> list:
    return [{"exponent": e, "units": [enc_scalar(u) for u in us]} for e, us in dec.blocks]


def cmd_qf_diagonalize(args) -> dict:
    Qf = _load(args.form, jsonio.dec_form)
    inputs = {"form": enc_form(Qf), "over": args.over}
    if args.over == "qt":
        dec = ordered_diagonalize_qt(Qf)
        even, odd = dec.residue_parts()
        results = {
            "transform": enc_mat(dec.transform),
            "blocks": _blocks_json(dec),
            "corank": dec.corank,
            "limit": enc_mat(dec.limit()),
            "even_residues": [enc_scalar(x) for x in even],
            "odd_residues": [enc_scalar(x) for x in odd],
        }
        T = dec.transform
        ok = T.T @ Qf.gram.lift() @ T == dec.block_matrix()
    else:
        g, d = diagonalize(Qf)
        results = {"transform": enc_mat(g), "diagonal": [enc_scalar(x) for x in d]}
        if Qf.field != QT:
            results["witt_invariants"] = witt_invariants(Qf).to_json()
        ok = g.T @ Qf.gram @ g == type(g).diag(d, g.field)
    return _report("qf diagonalize", inputs, results, [_verdict("congruence identity", ok)])


def cmd_qf_represents(args) -> dict:
    Qf = _load(args.Q, jsonio.dec_form)
    Qp = _load(args.Qp, jsonio.dec_form)
    flag, witness = represents(Qf, Qp, height=args.height)
    results = {
        "represents": flag,
        "witness": enc_mat(witness) if witness is not None else None,
        "witt_invariants": {"Q": witt_invariants(Qf).to_json(), "Qp": witt_invariants(Qp).to_json()},
    }
    verdicts = [_verdict("represented", flag, "represented" if flag else "not represented")]
    if witness is not None:
        C = family_for_representation(Qf, Qp, witness)
        results["family"] = enc_family(C)
        verdicts.append(_verdict("contraction limit", contraction_limit_qf(Qf, C) == Qp, "limit of the family equals Q'"))
    elif flag:
        verdicts.append(_verdict("witness search", "INCONCLUSIVE", f"no witness up to height {args.height}"))
    return _report("qf represents", {"Q": enc_form(Qf), "Qp": enc_form(Qp), "height": args.height}, results, verdicts)


def cmd_qf_limit(args) -> dict:
    Qf = _load(args.Q, jsonio.dec_form)
    C = _load(args.family, jsonio.dec_family)
    inputs = {"Q": enc_form(Qf), "family": enc_family(C)}
    try:
        limit = contraction_limit_qf(Qf, C)
    except NotAmenable as exc:
        return _report("qf limit", inputs, {"amenable": False, "offending": exc.to_json()}, [_verdict("amenable", False, str(exc))])
    results = {"amenable": True, "limit": enc_form(limit)}
    verdicts = [_verdict("amenable", True)]
    if Qf.field != QT:
        flag, _ = represents(Qf, limit, search=False)
        verdicts.append(_verdict("limit is represented", flag))
    return _report("qf limit", inputs, results, verdicts)


def cmd_degen_check(args) -> dict:
    src = _load(args.source, jsonio.dec_structure)
    dst = _load(args.target, jsonio.dec_structure)
    rep = necessary_report(src, dst)
    inputs = {"from": enc_structure(src), "to": enc_structure(dst)}
    results = {
        "rank_from": rep.rank_from,
        "rank_to": rep.rank_to,
        "invariants_from": _inv_json(rep.invariants_from),
        "invariants_to": _inv_json(rep.invariants_to),
    }
    verdicts = [_verdict("rank condition", rep.rank_condition, f"rank {rep.rank_to} <= {rep.rank_from} required")]
    blocked = rep.verdict == "BLOCKED"
    if args.witness:
        P = _load(args.witness, jsonio.dec_polynomial)
        inputs.update(witness=jsonio.enc_polynomial(P), samples=args.samples, seed=args.seed)
        van = orbit_vanishing_test(P, src, samples=args.samples, seed=args.seed)
        at_target = P(dst)
        results["witness"] = {
            "orbit_status": van.status,
            "samples": van.samples,
            "counterexample": enc_mat(van.counterexample) if van.counterexample is not None else None,
            "counterexample_value": enc_scalar(van.value) if van.value is not None else None,
            "value_at_target": enc_scalar(at_target),
        }
        if not van.all_zero:
            verdicts.append(_verdict("witness", "INCONCLUSIVE", "witness does not vanish on the source orbit"))
        elif at_target:
            blocked = True
            verdicts.append(
                _verdict("witness", False, "vanishes on all sampled source-orbit points (evidence) but not at the target")
            )
        else:
            verdicts.append(_verdict("witness", True, "vanishes at the target"))
    results["verdict"] = "BLOCKED" if blocked else "INCONCLUSIVE"
    return _report("degen check", inputs, results, verdicts)


def _catalog_entry(name: str, params: list[str]) -> dict:
    if name == "contractions":
        certs = catalog.standard_contractions(*params[:1])
        return {
            "certificates": [
                {
                    "name": c.name,
                    "from": enc_structure(c.lam_from),
                    "family": enc_family(c.family),
                    "to": enc_structure(c.lam_to),
                    "matcher": enc_mat(c.matcher) if c.matcher is not None else None,
                    "note": c.note,
                    "verified": verify_certificate(c.lam_from, c.family, c.lam_to, c.matcher),
                }
                for c in certs
            ]
        }
    if name == "forbidden":
        return {
            "pairs": [
                {"from": enc_structure(a), "to": enc_structure(b), "witness": jsonio.enc_polynomial(P), "text": str(P)}
                for a, b, P in catalog.forbidden_pairs()
            ]
        }
    spec = name if not params else f"{name}:{params[0]}"
    lam = catalog.by_name(spec)
    T = trace_form(lam)
    return {
        "algebra": enc_structure(lam),
        "trace_form": enc_form(T),
        "det": enc_scalar(det(T.gram)),
        "invariants": _inv_json(invariant_dims(lam)),
    }


def cmd_catalog(args) -> dict:
    results = _catalog_entry(args.name, args.params)
    verdicts = []
    if "certificates" in results:
        verdicts = [_verdict(c["name"], c["verified"]) for c in results["certificates"]]
    return _report("catalog", {"name": args.name, "params": args.params}, results, verdicts)


def cmd_verify_paper(args) -> dict:
    return verify_paper(args.seed)


# ---------------------------------------------------------------------------


def _env_seed() -> int:
    raw = os.environ.get("ORBITKIT_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise BadInput(f"ORBITKIT_SEED must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="orbitkit", description="Exact degenerations and contractions over Q and Q(t).")
    p.add_argument("--pretty", action="store_true", help="indent the JSON report")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("trace-form", help="trace form of an algebra")
    s.add_argument("algebra", type=Path)
    s.set_defaults(func=cmd_trace_form)

    s = sub.add_parser("contract", help="limit of an algebra along a contraction family")
    s.add_argument("algebra", type=Path)
    s.add_argument("family", type=Path)
    s.add_argument("--target", type=Path)
    s.add_argument("--matcher", type=Path)
    s.set_defaults(func=cmd_contract)

    qf = sub.add_parser("qf", help="quadratic forms").add_subparsers(dest="qf_command", required=True, parser_class=_Parser)
    s = qf.add_parser("diagonalize")
    s.add_argument("form", type=Path)
    s.add_argument("--over", choices=("q", "qt"), default="q")
    s.set_defaults(func=cmd_qf_diagonalize)
    s = qf.add_parser("represents")
    s.add_argument("Q", type=Path)
    s.add_argument("Qp", type=Path)
    s.add_argument("--height", type=int, default=DEFAULT_HEIGHT)
    s.set_defaults(func=cmd_qf_represents)
    s = qf.add_parser("limit")
    s.add_argument("Q", type=Path)
    s.add_argument("family", type=Path)
    s.set_defaults(func=cmd_qf_limit)

    degen = sub.add_parser("degen", help="degeneration obstructions").add_subparsers(
        dest="degen_command", required=True, parser_class=_Parser
    )
    s = degen.add_parser("check")
    s.add_argument("source", type=Path, metavar="from")
    s.add_argument("target", type=Path, metavar="to")
    s.add_argument("--witness", type=Path)
    s.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    s.add_argument("--seed", type=int)
    s.set_defaults(func=cmd_degen_check)

    s = sub.add_parser("catalog", help="named algebras: f2:s, a0, a4, a5, f3:c, split3:s, contractions, forbidden")
    s.add_argument("name")
    s.add_argument("params", nargs="*")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("verify-paper", help="run the reproduction suite")
    s.add_argument("--seed", type=int)
    s.set_defaults(func=cmd_verify_paper)
    return p


def run(argv: list[str] | None = None) -> tuple[int, str]:
    """Execute a command; returns (exit code, rendered report)."""
    pretty = "--pretty" in (argv if argv is not None else sys.argv[1:])
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "seed", "absent") is None:
            args.seed = _env_seed()
        if getattr(args, "samples", 1) < 1 or getattr(args, "height", 1) < 0:
            raise BadInput("--samples must be positive and --height nonnegative")
        report = args.func(args)
    except OrbitKitError as exc:
        return 2, jsonio.dumps(exc.to_json(), pretty)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        return 2, jsonio.dumps({"error": "bad_input", "message": str(exc)}, pretty)
    failed = any(v["status"] == "FAIL" for v in report["verdicts"])
    return (1 if failed else 0), jsonio.dumps(report, args.pretty)


def main(argv: list[str] | None = None) -> int:
    code, text = run(argv)
    sys.stdout.write(text + "\n")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
