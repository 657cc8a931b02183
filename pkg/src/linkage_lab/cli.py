"""Command-line front end: JSON in, JSON out.

Exit codes: 0 success, 1 property violated / verdict false, 2 usage error,
3 inconclusive (a search guard was hit).  Every run echoes its resolved
configuration, and identical inputs with identical seeds produce identical
bytes on stdout.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .graph_core import (
    DomainError,
    Graph,
    GuardExceeded,
    VPath,
    graph_from_dict,
    graph_to_dict,
)
from . import decomposition as dec
from . import families, generators, society
from .linkage import (
    BipartiteSubdivisionWitness,
    LinkageProblem,
    disjoint_paths,
    is_k_linked,
    link_via_bipartite_subdivision,
)
from .separations import nested_cover
from .token_game import (
    Movement,
    Pairing,
    induced_pairing,
    reachability_oracle,
    solve_block,
    solve_hub,
    solve_simple,
    solve_star,
    solve_wilson,
    verify_movement,
)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as ex:
        raise UsageError(f"malformed JSON in {path} at line {ex.lineno} "
                         f"column {ex.colno}: {ex.msg}")
    except OSError as ex:
        raise UsageError(str(ex))


class UsageError(Exception):
    pass


def _load_graph(path: str) -> Graph:
    data = _load_json(path)
    try:
        return graph_from_dict(data)
    except (KeyError, TypeError, DomainError) as ex:
        raise UsageError(f"bad graph file {path}: {ex}")


def _parse_ints(text: str) -> list[int]:
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}")


def _parse_pairs(text: str) -> list[tuple[int, int]]:
    out = []
    for part in text.split(","):
        try:
            s, t = part.split(":")
            out.append((int(s), int(t)))
        except ValueError:
            raise UsageError(f"expected pairs like 0:1,2:3, got {text!r}")
    return out


def _emit(config: dict, payload: dict, code: int) -> int:
    doc = {"config": config}
    doc.update(payload)
    print(json.dumps(doc, sort_keys=True, separators=(",", ":")))
    return code


def _movement_json(m: Movement) -> dict:
    return m.to_json_obj()


# --------------------------------------------------------------------------
# Subcommands
# --------------------------------------------------------------------------

def cmd_gen(args) -> int:
    cfg = {"cmd": "gen", "family": args.family, "k": args.k,
           "copies": args.copies, "a": args.a, "p": args.p,
           "subdivisions": args.subdivisions, "out": args.out}
    if args.family == "jorgensen":
        if args.k is None:
            raise UsageError("--k required for jorgensen")
        g = families.jorgensen(args.k)
        extra = {"matching": families.jorgensen_matching(args.k)}
    elif args.family == "fat-star":
        fs = families.fat_star(args.copies or 1)
        g = fs.graph
        extra = {"outer_cycle": list(fs.outer_cycle),
                 "inner_cycle": list(fs.inner_cycle)}
    elif args.family == "fat-star-join":
        if args.k is None:
            raise UsageError("--k required for fat-star-join")
        fj = families.fat_star_join(args.copies or 1, args.k)
        g = fj.graph
        extra = {"spare_vertices": list(fj.spare_vertices),
                 "terminals": [list(p) for p in
                               families.fat_star_join_terminals(fj)]}
    elif args.family == "complete-bipartite":
        g, w = families.complete_bipartite_subdivided(
            args.a or 2, args.p or 2, args.subdivisions or 0)
        extra = {"witness": w.to_json_obj()}
    else:
        raise UsageError(f"unknown family {args.family!r}")
    doc = graph_to_dict(g)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(doc, fh, sort_keys=True)
    return _emit(cfg, {"graph": doc, **extra}, EXIT_OK)


def cmd_check_linked(args) -> int:
    cfg = {"cmd": "check-linked", "graph": args.graph, "k": args.k,
           "guard": args.guard}
    g = _load_graph(args.graph)
    linked, witness = is_k_linked(g, args.k, guard=args.guard)
    payload = {"linked": linked}
    if witness is not None:
        payload["witness"] = [list(p) for p in witness]
    return _emit(cfg, payload, EXIT_OK if linked else EXIT_FALSE)


def cmd_disjoint_paths(args) -> int:
    cfg = {"cmd": "disjoint-paths", "graph": args.graph, "pairs": args.pairs,
           "guard": args.guard}
    g = _load_graph(args.graph)
    prob = LinkageProblem(g, _parse_pairs(args.pairs))
    found = disjoint_paths(prob, guard=args.guard)
    if found is None:
        return _emit(cfg, {"feasible": False}, EXIT_FALSE)
    return _emit(cfg, {"feasible": True,
                       "paths": [list(p.vertices) for p in found]}, EXIT_OK)


def cmd_link_bipartite(args) -> int:
    cfg = {"cmd": "link-bipartite", "graph": args.graph,
           "witness": args.witness, "pairs": args.pairs}
    g = _load_graph(args.graph)
    wdata = _load_json(args.witness)
    w = BipartiteSubdivisionWitness.from_json_obj(
        wdata.get("witness", wdata))
    prob = LinkageProblem(g, _parse_pairs(args.pairs))
    links = link_via_bipartite_subdivision(g, w, prob)
    return _emit(cfg, {"paths": [list(p.vertices) for p in links]}, EXIT_OK)


def cmd_solve_tokens(args) -> int:
    cfg = {"cmd": "solve-tokens", "graph": args.graph,
           "pairing": args.pairing, "lemma": args.lemma,
           "marginal": args.marginal, "hub": args.hub, "block": args.block,
           "ncap": args.ncap, "guard": args.guard}
    h = _load_graph(args.graph)
    L = Pairing.from_json_obj(_load_json(args.pairing))
    a = set(_parse_ints(args.marginal or ""))
    if args.lemma == "simple":
        m = solve_simple(h, L.x, L.y, a)
    elif args.lemma == "stars":
        m = solve_star(h, L, a)
    elif args.lemma == "maxdeg":
        if args.hub is None:
            raise UsageError("--hub required for maxdeg")
        m = solve_hub(h, L, a, args.hub)
    elif args.lemma == "corecase":
        if not args.block:
            raise UsageError("--block required for corecase")
        m = solve_block(h, L, a, set(_parse_ints(args.block)),
                        args.ncap or h.n)
    elif args.lemma == "wilson":
        m = solve_wilson(h, L.bijection())
    elif args.lemma == "oracle":
        m = reachability_oracle(h, L.x, L, guard_states=args.guard)
        if m is None:
            return _emit(cfg, {"feasible": False}, EXIT_FALSE)
    else:
        raise UsageError(f"unknown lemma {args.lemma!r}")
    return _emit(cfg, {"feasible": True, "movement": _movement_json(m),
                       "length": m.length,
                       "pairing": induced_pairing(m).to_json_obj()}, EXIT_OK)


def cmd_verify_movement(args) -> int:
    cfg = {"cmd": "verify-movement", "graph": args.graph,
           "movement": args.movement}
    h = _load_graph(args.graph)
    m = Movement.from_json_obj(_load_json(args.movement))
    ok, bad = verify_movement(h, m)
    payload = {"valid": ok}
    if not ok:
        payload["violation_index"] = bad
    return _emit(cfg, payload, EXIT_OK if ok else EXIT_FALSE)


def cmd_nested_cover(args) -> int:
    cfg = {"cmd": "nested-cover", "graph": args.graph, "x": args.x,
           "y": args.y, "z": args.z}
    g = _load_graph(args.graph)
    cover, bad = nested_cover(g, set(_parse_ints(args.x)),
                              set(_parse_ints(args.y)),
                              set(_parse_ints(args.z)))
    if cover is None:
        return _emit(cfg, {"feasible": False, "violating_vertex": bad},
                     EXIT_FALSE)
    return _emit(cfg, {"feasible": True,
                       "separations": [s.to_dict() for s in cover]}, EXIT_OK)


def _load_decomposition(args) -> tuple[dec.SlimDecomposition,
                                       dec.FoundationalLinkage]:
    g = _load_graph(args.graph)
    data = _load_json(args.decomposition)
    sd = dec.SlimDecomposition(g, [set(b) for b in data["bags"]])
    if getattr(args, "linkage", None):
        ldata = _load_json(args.linkage)
        fl = dec.FoundationalLinkage([VPath(p) for p in ldata["paths"]])
    else:
        _, fl = dec.verify_slim(sd)
    return sd, fl


def cmd_verify_slim(args) -> int:
    cfg = {"cmd": "verify-slim", "graph": args.graph,
           "decomposition": args.decomposition}
    g = _load_graph(args.graph)
    data = _load_json(args.decomposition)
    sd = dec.SlimDecomposition(g, [set(b) for b in data["bags"]])
    try:
        adhesion, fl = dec.verify_slim(sd)
    except dec.AxiomViolation as ex:
        return _emit(cfg, {"valid": False, "axiom": ex.axiom,
                           "witness": repr(ex.witness)}, EXIT_FALSE)
    return _emit(cfg, {"valid": True, "adhesion": adhesion,
                       "linkage": fl.to_json_obj()}, EXIT_OK)


def cmd_verify_regular(args) -> int:
    cfg = {"cmd": "verify-regular", "graph": args.graph,
           "decomposition": args.decomposition, "linkage": args.linkage,
           "p": args.p}
    sd, fl = _load_decomposition(args)
    report = dec.verify_regular(sd, fl, args.p)
    ok = report.l6_ok and report.l7_ok and report.l8_ok
    return _emit(cfg, {
        "l6": report.l6_ok, "l7": report.l7_ok, "l8": report.l8_ok,
        "witnesses": {k: repr(v) for k, v in report.witnesses.items()},
        "auxiliary": graph_to_dict(report.auxiliary),
    }, EXIT_OK if ok else EXIT_FALSE)


def cmd_stabilize(args) -> int:
    cfg = {"cmd": "stabilize", "graph": args.graph,
           "decomposition": args.decomposition, "linkage": args.linkage,
           "p": args.p, "target_length": args.target_length,
           "guard": args.guard}
    sd, fl = _load_decomposition(args)
    result = dec.stabilize(sd, fl, args.p, args.target_length,
                           guard=args.guard)
    if isinstance(result, dec.StabilizeFailure):
        return _emit(cfg, {"stable": False, "reason": result.reason,
                           "length_available": result.length_available,
                           "length_needed": result.length_needed,
                           "non_edges": result.non_edges,
                           "supergraph_bound": result.z_bound}, EXIT_FALSE)
    new_sd, new_fl, rounds = result
    return _emit(cfg, {"stable": True, "rounds": rounds,
                       "decomposition": new_sd.to_json_obj(),
                       "linkage": new_fl.to_json_obj()}, EXIT_OK)


def cmd_aux_graph(args) -> int:
    cfg = {"cmd": "aux-graph", "graph": args.graph,
           "decomposition": args.decomposition, "linkage": args.linkage}
    sd, fl = _load_decomposition(args)
    gamma = dec.auxiliary_graph(sd, fl)
    return _emit(cfg, {"auxiliary": graph_to_dict(gamma),
                       "lambda": sorted(fl.lam),
                       "theta": sorted(fl.theta)}, EXIT_OK)


def cmd_rural(args) -> int:
    cfg = {"cmd": "rural", "graph": args.graph, "omega": args.omega}
    g = _load_graph(args.graph)
    s = society.Society(g, _parse_ints(args.omega))
    verdict = society.is_rural(s)
    if verdict.rural:
        return _emit(cfg, {
            "rural": True,
            "hub": verdict.hub,
            "embedding": {str(v): list(r)
                          for v, r in sorted(verdict.embedding.items())},
        }, EXIT_OK)
    cross = society.find_cross(s)
    payload = {"rural": False,
               "obstruction": [list(e) for e in verdict.obstruction]}
    if cross is not None:
        payload["cross"] = [list(cross[0].vertices), list(cross[1].vertices)]
    return _emit(cfg, payload, EXIT_FALSE)


def _sweep_one(task) -> str:
    seed, index, n_max = task
    rng = random.Random((seed << 20) ^ index)
    s = generators.society_instance(rng, n_max=n_max)
    kind, _ = society.cross_or_rural_check(s)
    return kind


def cmd_cross_or_rural_sweep(args) -> int:
    cfg = {"cmd": "cross-or-rural-sweep", "count": args.count, "n": args.n,
           "seed": args.seed, "jobs": args.jobs}
    tasks = [(args.seed, i, args.n) for i in range(args.count)]
    if args.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            kinds = list(pool.map(_sweep_one, tasks, chunksize=16))
    else:
        kinds = [_sweep_one(t) for t in tasks]
    tally = {"rural": kinds.count("rural"), "cross": kinds.count("cross")}
    return _emit(cfg, {"both_fail": 0, "tally": tally}, EXIT_OK)


def cmd_euler_check(args) -> int:
    cfg = {"cmd": "euler-check", "graph": args.graph, "omega": args.omega}
    g = _load_graph(args.graph)
    s = society.Society(g, _parse_ints(args.omega))
    rep = society.euler_bound_check(s)
    if not rep.applicable:
        return _emit(cfg, {"applicable": False, "note": rep.note},
                     EXIT_INCONCLUSIVE)
    return _emit(cfg, {"applicable": True, "holds": rep.holds,
                       "boundary_degree_sum": rep.boundary_degree_sum,
                       "bound": rep.bound},
                 EXIT_OK if rep.holds else EXIT_FALSE)


def cmd_report(args) -> int:
    from .plotting import write_report

    cfg = {"cmd": "report", "out": args.out, "seed": args.seed,
           "count": args.count}
    paths = write_report(args.out, seed=args.seed, count=args.count)
    return _emit(cfg, {"written": paths}, EXIT_OK)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="linkage-lab",
        description="token-sliding movements, slim decompositions, "
                    "linkages, and societies at verifiable scale")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("gen", help="generate a family graph")
    p.add_argument("--family", required=True,
                   choices=["jorgensen", "fat-star", "fat-star-join",
                            "complete-bipartite"])
    p.add_argument("--k", type=int)
    p.add_argument("--copies", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--subdivisions", type=int)
    p.add_argument("-o", "--out")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("check-linked")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--guard", type=int, default=16)
    p.set_defaults(fn=cmd_check_linked)

    p = sub.add_parser("disjoint-paths")
    p.add_argument("--graph", required=True)
    p.add_argument("--pairs", required=True)
    p.add_argument("--guard", type=int, default=16)
    p.set_defaults(fn=cmd_disjoint_paths)

    p = sub.add_parser("link-bipartite")
    p.add_argument("--graph", required=True)
    p.add_argument("--witness", required=True)
    p.add_argument("--pairs", required=True)
    p.set_defaults(fn=cmd_link_bipartite)

    p = sub.add_parser("solve-tokens")
    p.add_argument("--graph", required=True)
    p.add_argument("--pairing", required=True)
    p.add_argument("--lemma", required=True,
                   choices=["simple", "stars", "maxdeg", "corecase",
                            "wilson", "oracle"])
    p.add_argument("--marginal")
    p.add_argument("--hub", type=int)
    p.add_argument("--block")
    p.add_argument("--ncap", type=int)
    p.add_argument("--guard", type=int, default=300000)
    p.set_defaults(fn=cmd_solve_tokens)

    p = sub.add_parser("verify-movement")
    p.add_argument("--graph", required=True)
    p.add_argument("--movement", required=True)
    p.set_defaults(fn=cmd_verify_movement)

    p = sub.add_parser("nested-cover")
    p.add_argument("--graph", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--z", required=True)
    p.set_defaults(fn=cmd_nested_cover)

    p = sub.add_parser("verify-slim")
    p.add_argument("--graph", required=True)
    p.add_argument("--decomposition", required=True)
    p.set_defaults(fn=cmd_verify_slim)

    p = sub.add_parser("verify-regular")
    p.add_argument("--graph", required=True)
    p.add_argument("--decomposition", required=True)
    p.add_argument("--linkage")
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(fn=cmd_verify_regular)

    p = sub.add_parser("stabilize")
    p.add_argument("--graph", required=True)
    p.add_argument("--decomposition", required=True)
    p.add_argument("--linkage")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--target-length", type=int, required=True)
    p.add_argument("--guard", type=int, default=200000)
    p.set_defaults(fn=cmd_stabilize)

    p = sub.add_parser("aux-graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--decomposition", required=True)
    p.add_argument("--linkage")
    p.set_defaults(fn=cmd_aux_graph)

    p = sub.add_parser("rural")
    p.add_argument("--graph", required=True)
    p.add_argument("--omega", required=True)
    p.set_defaults(fn=cmd_rural)

    p = sub.add_parser("cross-or-rural-sweep")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--n", type=int, default=9)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=cmd_cross_or_rural_sweep)

    p = sub.add_parser("euler-check")
    p.add_argument("--graph", required=True)
    p.add_argument("--omega", required=True)
    p.set_defaults(fn=cmd_euler_check)

    p = sub.add_parser("report")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=60)
    p.set_defaults(fn=cmd_report)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as ex:
        return EXIT_USAGE if ex.code not in (0, None) else 0
    try:
        return args.fn(args)
    except UsageError as ex:
        print(json.dumps({"error": str(ex)}), file=sys.stderr)
        return EXIT_USAGE
    except DomainError as ex:
        print(json.dumps({"error": str(ex)}), file=sys.stderr)
        return EXIT_USAGE
    except GuardExceeded as ex:
        print(json.dumps({"inconclusive": str(ex)}), file=sys.stderr)
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
