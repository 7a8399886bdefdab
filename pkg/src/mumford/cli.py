"""Command-line front end.

Exit codes: 0 when every verdict holds, 1 on a failed verdict, 2 on a
parse or scenario error, 3 when a budget is exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from importlib.metadata import PackageNotFoundError, version

from .cohomology import BudgetExceeded, h2
from .cover import build_cover, h1_cover, invariants_subgroup, restriction_image
from .extension import extension_class, extension_for_class
from .group import cyclic
from .moduli import (
    class_coset,
    class_map_kernel,
    dihedral_example,
    verify_fiber_theorem,
    weyl_action,
    weyl_example,
    weyl_orbit_check,
)
from .scenario import Scenario, ScenarioError
from .surface import commutator_convolution_count, enumerate_homs
from .verify import verify_all

EXIT_OK, EXIT_VERDICT, EXIT_PARSE, EXIT_BUDGET = 0, 1, 2, 3


def _flat_factor_set(f) -> list:
    return [list(t) for t in f.table]


def _group_info(G) -> dict:
    return {"order": G.order, "abelian": G.is_abelian(),
            "order_profile": [list(p) for p in G.order_profile()]}


# ---------------------------------------------------------------------------
# subcommands: each returns (payload, table rows or None)


def cmd_h2(sc: Scenario, args):
    H = h2(sc.W, sc.T, sc.sigma)
    payload = {
        "W": _group_info(sc.W),
        "T": list(sc.T.cyclic_orders),
        "order": H.order,
        "invariants": list(H.orders),
        "cocycles": H.Z2.order,
        "coboundaries": H.B2.order,
        "basis": [{"coords": list(b.coords), "factor_set": _flat_factor_set(b.rep)} for b in H.basis],
        "verdict": True,
    }
    return payload, [{"order": H.order, "cocycles": H.Z2.order, "coboundaries": H.B2.order}]


def cmd_extensions(sc: Scenario, args):
    H = h2(sc.W, sc.T, sc.sigma)
    rows, ok = [], True
    for cls in H.classes():
        E = extension_for_class(sc.sigma, cls.coords)
        E.check()
        back = extension_class(E).coords
        ok &= back == cls.coords
        rows.append({"class": list(cls.coords), "N": _group_info(E.N),
                     "factor_set": _flat_factor_set(cls.rep), "round_trip": back == cls.coords})
    table = [{"class": " ".join(map(str, r["class"])), "N_order": r["N"]["order"],
              "abelian": r["N"]["abelian"]} for r in rows]
    return {"h2_order": H.order, "extensions": rows, "verdict": ok}, table


def cmd_homs(sc: Scenario, args):
    G, g = sc.G, sc.genus
    homs = enumerate_homs(g, G, budget=sc.budget, workers=args.workers)
    conv = commutator_convolution_count(g, G)
    surj = sum(1 for r in homs if r.is_surjective())
    payload = {"genus": g, "group": _group_info(G), "enumerated": len(homs), "convolution": conv,
               "surjective": surj, "verdict": len(homs) == conv}
    return payload, [{"genus": g, "order": G.order, "enumerated": len(homs), "convolution": conv,
                      "surjective": surj}]


def cmd_cover(sc: Scenario, args):
    rho = sc.cover_rep()
    C = build_cover(rho)
    free, torsion = C.kab_invariants()
    H1 = h1_cover(C, sc.T)
    ok = free == 2 * C.cover_genus and not torsion and H1.order == sc.T.order ** free
    payload = {
        "genus": C.genus, "rho_bar": list(rho.images), "cover_genus": C.cover_genus,
        "schreier_generators": [list(p) for p in C.schreier_gens],
        "transversal": {str(w): list(word) for w, word in sorted(C.transversal.items())},
        "relator_matrix": C.relator_matrix, "relator_rank": C.relator_rank(),
        "kab_rank": free, "kab_torsion": torsion, "T": list(sc.T.cyclic_orders), "h1_order": H1.order,
        "verdict": ok,
    }
    return payload, [{"r": C.r, "cover_genus": C.cover_genus, "kab_rank": free, "h1_order": H1.order}]


def cmd_invariants(sc: Scenario, args):
    rho = sc.cover_rep()
    C = build_cover(rho)
    inv = invariants_subgroup(C, sc.sigma)
    kern = class_map_kernel(C, sc.sigma, inv)
    image = restriction_image(C, sc.sigma)
    H = h2(sc.W, sc.T, sc.sigma)
    cosets = []
    for cls in H.classes():
        phi0, k = class_coset(C, sc.sigma, cls.coords, inv)
        cosets.append({"class": list(cls.coords), "size": 0 if phi0 is None else k.order})
    ok = kern.same_as(image) and sum(c["size"] for c in cosets) == inv.order
    payload = {"rho_bar": list(rho.images), "h1_order": h1_cover(C, sc.T).order,
               "invariant_order": inv.order, "kernel_order": kern.order,
               "restriction_image_order": image.order, "cosets": cosets, "verdict": ok}
    table = [{"class": " ".join(map(str, c["class"])), "size": c["size"]} for c in cosets]
    return payload, table


def cmd_fiber(sc: Scenario, args):
    E = sc.extension
    rho = sc.cover_rep()
    R = verify_fiber_theorem(sc.genus, E, rho, budget=sc.budget, workers=args.workers)
    payload = R.as_dict()
    payload["lift_counts"] = sorted([list(phi), c] for phi, c in R.lift_count_by_phi.items())
    payload["notes"] = R.notes
    return payload, [{k: payload[k] for k in ("reached", "h1_eta_size", "kernel_size", "h1_w", "verdict")}]


def cmd_orbit(sc: Scenario, args):
    report = weyl_orbit_check(sc.genus, sc.extension, budget=sc.budget)
    return report, [{k: report[k] for k in ("bundles", "fibers", "orbits", "free_orbits", "verdict")}]


def cmd_dihedral(sc: Scenario, args):
    sc.require("n")
    rho = sc.cover_rep(cyclic(2))
    report = dihedral_example(sc.genus, sc.data["n"], rho)
    return report, [{"h1": report["h1"], "fixed": report["fixed"], "anti_fixed": report["anti_fixed"],
                     "verdict": report["verdict"]}]


def cmd_weyl(sc: Scenario, args):
    sc.require("n")
    W, _ = weyl_action(sc.data["n"], sc.data.get("family", "B_or_C"))
    rho = sc.cover_rep(W)
    report = weyl_example(sc.genus, sc.data["n"], sc.data.get("family", "B_or_C"), rho)
    return report, [{"invariants": report["invariants"], "h1_eta": report["h1_eta"],
                     "verdict": report["verdict"]}]


def cmd_verify_all(sc: Scenario, args):
    only = set(sc.data["criteria"]) if "criteria" in sc.data else None
    report = verify_all(workers=args.workers, only=only)
    table = [{"criterion": k, "verdict": v["verdict"]} for k, v in report["criteria"].items()]
    return report, table


COMMANDS = {
    "h2": (cmd_h2, "H^2(W, T; sigma) with a basis of factor sets"),
    "extensions": (cmd_extensions, "one extension per H^2 class"),
    "homs": (cmd_homs, "|Hom(pi_g, G)| by enumeration and by convolution"),
    "cover": (cmd_cover, "Schreier data of the cover and |H^1(Z, T)|"),
    "invariants": (cmd_invariants, "invariant bundles and their class cosets"),
    "fiber": (cmd_fiber, "brute-force fiber check over one cover"),
    "orbit": (cmd_orbit, "W-orbits against fibers of bundles on X"),
    "dihedral": (cmd_dihedral, "the dihedral example"),
    "weyl": (cmd_weyl, "the Weyl group examples"),
    "verify-all": (cmd_verify_all, "run the full acceptance matrix"),
}


# ---------------------------------------------------------------------------
# output


def to_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def to_csv(rows) -> str:
    buf = io.StringIO()
    fields = list(rows[0]) if rows else []
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def to_table(rows) -> str:
    if not rows:
        return ""
    fields = list(rows[0])
    cells = [[str(r[f]) for f in fields] for r in rows]
    widths = [max(len(f), *(len(c[i]) for c in cells)) for i, f in enumerate(fields)]

    def line(vals):
        return "  ".join(v.ljust(w) for v, w in zip(vals, widths)).rstrip()

    out = [line(fields), line(["-" * w for w in widths])] + [line(c) for c in cells]
    return "\n".join(out) + "\n"


def _version() -> str:
    try:
        return version("artifact")
    except PackageNotFoundError:
        return "unknown"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mumford", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--scenario", help="scenario JSON file")
        p.add_argument("--workers", type=int, default=1, help="processes for enumeration")
        p.add_argument("--budget", type=int, help="cap on enumerated tuples")
        p.add_argument("--format", choices=("json", "csv", "table"), default="json")
        p.add_argument("--out", help="directory for report files (stdout if omitted)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.workers < 1:
        parser.error("--workers must be positive")
    fn, _ = COMMANDS[args.command]
    try:
        if args.scenario is None and args.command != "verify-all":
            raise ScenarioError(f"{args.command} needs --scenario")
        sc = Scenario.load(args.scenario, args.budget)
        payload, rows = fn(sc, args)
    except ScenarioError as exc:
        print(f"mumford: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"mumford: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET

    if args.format == "json":
        text, ext = to_json(payload), "json"
    elif args.format == "csv":
        text, ext = to_csv(rows), "csv"
    else:
        text, ext = to_table(rows), "txt"
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        stem = os.path.join(args.out, args.command)
        with open(f"{stem}.{ext}", "w", encoding="utf-8") as fh:
            fh.write(text)
        meta = {"command": args.command, "scenario": args.scenario, "workers": args.workers,
                "budget": args.budget, "version": _version()}
        with open(f"{stem}.meta.json", "w", encoding="utf-8") as fh:
            fh.write(to_json(meta))
    else:
        sys.stdout.write(text)
    return EXIT_OK if payload.get("verdict", True) else EXIT_VERDICT


if __name__ == "__main__":
    sys.exit(main())
