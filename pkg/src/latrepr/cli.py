"""Command-line front end.

Exit codes: 0 clean run, 1 usage, parse error or unrepresentable input,
2 a claim that did not hold, 3 a resource cap was hit.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .core import (
    distributivity_witness,
    is_distributive,
    is_isomorphic,
    lattice_from_dict,
    lattice_to_dict,
    load_lattice,
)
from .errors import BudgetExhausted, CarrierTooLarge, LatticeError, NotRepresentable, ParseError
from .families import REGISTRY, check_descriptor, get_family, verdict_to_dict
from .filters import enumerate_prime_filters, filter_table
from .irreducibles import irreducibles
from .modelcheck import canonical_model, check_theory, structure_from_dict
from .representation import (
    dumps,
    hierarchy,
    represent,
    representation_from_dict,
    representation_to_dict,
    verify_join_complete,
    verify_meet_complete,
)
from .ultra import UltrafilterOnFiniteIndex, lower_star, star_set, ultrapower, verify_dist_root, verify_inf_exist

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_CAP = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(report: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, indent=2, sort_keys=True))
        return

    def walk(obj, indent):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)) and v:
                    print(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    print(f"{pad}{k}: {v}")
        elif isinstance(obj, list):
            for v in obj:
                if isinstance(v, dict):
                    print(f"{pad}-")
                    walk(v, indent + 1)
                else:
                    print(f"{pad}- {v}")
        else:
            print(f"{pad}{obj}")

    walk(report, 0)


def _provenance(args) -> dict:
    return {"budget": args.budget, "cap": int(os.environ.get("LATREPR_CAP", 20)), "seed": args.seed}


# -- check ----------------------------------------------------------------------

def _lattice_report(L, args) -> dict:
    labels = [L.label(a) for a in range(L.n)]
    w = distributivity_witness(L)
    irr = irreducibles(L)
    sections = {
        "distributivity": {"distributive": w is None,
                           "witness": None if w is None else [labels[i] for i in w]},
        "irreducibles": {
            "join": [labels[i] for i in irr.join_irr],
            "meet": [labels[i] for i in irr.meet_irr],
            "completely_join": [labels[i] for i in irr.completely_join_irr],
            "completely_meet": [labels[i] for i in irr.completely_meet_irr],
            "theorem_shortcut": irr.shortcut,
        },
        "prime_filters": filter_table(L, enumerate_prime_filters(L)),
    }
    try:
        h = represent(L)
    except NotRepresentable as exc:
        sections["representation"] = {"status": "NotRepresentable",
                                      "witness": [labels[i] for i in exc.triple]}
    else:
        m = verify_meet_complete(h, seed=args.seed)
        j = verify_join_complete(h, seed=args.seed)
        sections["representation"] = {
            "status": "ok" if h.is_valid() else "invalid",
            "base_size": h.size,
            "violations": h.violations(),
            "meet_complete": {"ok": m.ok, "mode": m.mode, "checked": m.checked},
            "join_complete": {"ok": j.ok, "mode": j.mode, "checked": j.checked},
        }
    sections["hierarchy"] = hierarchy(L)
    return sections


def _family_report(F, args) -> tuple[dict, bool]:
    clean = True
    rows = {}
    names = [args.descriptor] if args.descriptor else [d.name for d in F.catalog()]
    for name in names:
        try:
            d = F.descriptor(name)
        except KeyError:
            raise ParseError(f"family {F.family_id} has no descriptor {name!r}") from None
        verdicts = check_descriptor(F, d, args.budget, strict=False)
        clean &= all(v.matches for v in verdicts.values())
        rows[name] = {k: verdict_to_dict(F, v) for k, v in verdicts.items()}
    return {"family": F.family_id, "description": F.description, "descriptors": rows}, clean


def cmd_check(args) -> int:
    if (args.path is None) == (args.family is None):
        raise ParseError("check needs exactly one of PATH or --family")
    if args.family:
        body, clean = _family_report(get_family(args.family), args)
        subject = args.family
    else:
        body, clean = _lattice_report(load_lattice(args.path), args), True
        subject = args.path
    _emit({"subject": subject, "sections": body, "provenance": _provenance(args)}, args.json)
    return EXIT_OK if clean else EXIT_MISMATCH


# -- represent ------------------------------------------------------------------

def cmd_represent(args) -> int:
    if args.verify:
        with open(args.path) as fh:
            text = fh.read()
        try:
            h = representation_from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(f"{args.path}: {exc}") from None
        again = dumps(h)
        same = again.rstrip("\n") == text.rstrip("\n")
        summary = representation_to_dict(h)["verification"]
        ok = same and summary["invariants"] == "ok" and summary["meet_complete"]["ok"] \
            and summary["join_complete"]["ok"]
        _emit({"byte_identical": same, "verification": summary}, args.json)
        return EXIT_OK if ok else EXIT_MISMATCH
    L = load_lattice(args.path)
    try:
        h = represent(L)
    except NotRepresentable as exc:
        print(f"NotRepresentable: distributivity fails at "
              f"{[L.label(i) for i in exc.triple]}", file=sys.stderr)
        return EXIT_USAGE
    print(dumps(h))
    return EXIT_OK


# -- modelcheck -----------------------------------------------------------------

def cmd_modelcheck(args) -> int:
    try:
        with open(args.path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{args.path}: {exc}") from None
    if isinstance(data, dict) and "ssort" in data:
        M, kind = structure_from_dict(data), "structure"
    else:
        M, kind = canonical_model(lattice_from_dict(data)), "canonical model"
    report = check_theory(M)
    _emit({"subject": args.path, "model": kind, "s_sort_size": len(M.ssort),
           "ok": report.ok, "failed": report.failed, "axioms": report.to_dict()}, args.json)
    return EXIT_OK


# -- ultra ----------------------------------------------------------------------

def cmd_ultra(args) -> int:
    L = load_lattice(args.path)
    U = UltrafilterOnFiniteIndex.principal(args.index, args.principal)
    cap = int(os.environ.get("LATREPR_CAP", 20))
    if L.n > cap:
        raise CarrierTooLarge(f"{L.n} elements exceed the subset cap {cap}")
    up = ultrapower(L, U)
    inf_failures, star_failures = [], []
    for S in range(1 << L.n):
        r = verify_inf_exist(up, S)
        if not r.ok:
            inf_failures.append(S)
        if lower_star(up, star_set(up, S)) != frozenset(i for i in range(L.n) if S >> i & 1):
            star_failures.append(S)
    root = verify_dist_root(up)
    iso = is_isomorphic(up.lattice, L)
    report = {
        "subject": args.path,
        "index_size": args.index,
        "principal_point": args.principal,
        "subsets_checked": 1 << L.n,
        "inf_exist": {"ok": not inf_failures, "failures": inf_failures},
        "star_roundtrip": {"ok": not star_failures, "failures": star_failures},
        "isomorphic_to_base": iso,
        "dist_root": {"ok": root.ok, "ultrapower": root.ultrapower_value, "base": root.base_value},
    }
    _emit(report, args.json)
    ok = not inf_failures and not star_failures and iso and root.ok
    return EXIT_OK if ok else EXIT_MISMATCH


# -- truncate / families ----------------------------------------------------------

def cmd_truncate(args) -> int:
    F = get_family(args.family)
    if args.depth < 1:
        raise ParseError("--depth must be positive")
    L = F.truncate(args.depth)
    d = lattice_to_dict(L)
    d["distributive"] = is_distributive(L)
    print(json.dumps(d, indent=None if not args.json else 2, sort_keys=True))
    return EXIT_OK


def cmd_families(args) -> int:
    out = {}
    for fid in REGISTRY:
        F = get_family(fid)
        out[fid] = {"description": F.description,
                    "descriptors": {d.name: d.claimed for d in F.catalog()}}
    _emit(out, args.json)
    return EXIT_OK


# -- entry point ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=1000, help="candidate subsets per family claim")
    common.add_argument("--cap", type=int, default=None,
                        help="largest carrier checked over all subsets (overrides LATREPR_CAP)")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled verification")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = _Parser(prog="latrepr", description="Set representations of finite distributive lattices.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("check", parents=[common], help="classification report for a lattice or family")
    s.add_argument("path", nargs="?")
    s.add_argument("--family")
    s.add_argument("--descriptor", help="probe one catalog entry only")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("represent", parents=[common], help="prime-filter representation as JSON")
    s.add_argument("path")
    s.add_argument("--verify", action="store_true",
                   help="PATH is a saved representation; re-verify it and compare bytes")
    s.set_defaults(func=cmd_represent)

    s = sub.add_parser("modelcheck", parents=[common], help="check a two-sorted structure")
    s.add_argument("path", help="structure JSON, or lattice JSON for its canonical model")
    s.set_defaults(func=cmd_modelcheck)

    s = sub.add_parser("ultra", parents=[common], help="ultrapower checks over a principal ultrafilter")
    s.add_argument("path")
    s.add_argument("--index", type=int, default=2, help="size of the index set")
    s.add_argument("--principal", type=int, default=0, help="generating point of the ultrafilter")
    s.set_defaults(func=cmd_ultra)

    s = sub.add_parser("truncate", parents=[common], help="finite restriction of a family")
    s.add_argument("family")
    s.add_argument("--depth", type=int, required=True)
    s.set_defaults(func=cmd_truncate)

    s = sub.add_parser("families", parents=[common], help="list families and catalogs")
    s.set_defaults(func=cmd_families)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.budget < 1:
        print("latrepr: --budget must be positive", file=sys.stderr)
        return EXIT_USAGE
    saved = os.environ.get("LATREPR_CAP")
    if args.cap is not None:
        os.environ["LATREPR_CAP"] = str(args.cap)
    try:
        return args.func(args)
    except (CarrierTooLarge, BudgetExhausted) as exc:
        print(f"latrepr: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (LatticeError, OSError, ValueError) as exc:
        print(f"latrepr: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if saved is None:
            os.environ.pop("LATREPR_CAP", None)
        else:
            os.environ["LATREPR_CAP"] = saved


if __name__ == "__main__":
    sys.exit(main())
