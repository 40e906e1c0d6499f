"""Command line interface.

Exit codes: 0 success, 1 input error, 2 certificate/oracle disagreement.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import datasets
from .cone import NotInConeError, build_exterior, homogenize, system_to_csv, system_to_dict
from .extend import build_counterexample, extend_instance
from .extremes import certify, enumerate_extremes, express_in_extremes, polytope_probe
from .hypergraph import tangent_hypergraph, to_dot
from .io import (
    certificate_to_dict,
    matrix_rows,
    matrix_to_csv,
    newick_batch,
    num,
    parse_candidate,
    rays_to_csv,
    read_dissimilarity,
    ultrametric_to_dict,
)
from .nearest import nearest_ultrametric
from .sliding import QUANTIFIERS, analyze, bernstein_candidates
from .trees import DissimilarityError, UltrametricError, linf_distance
from .validation import check_rational

log = logging.getLogger("ultratrop")

EXIT_OK, EXIT_INPUT, EXIT_DISAGREE = 0, 1, 2


class _Disagreement(Exception):
    pass


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_nearest(args) -> str:
    d = read_dissimilarity(args.input)
    res = nearest_ultrametric(d)
    if args.format == "csv":
        return matrix_to_csv(res.delta_star)
    if args.format == "newick":
        return ultrametric_to_dict(res.delta_star, d.labels)["newick"] + "\n"
    return _dumps({
        "n": d.n,
        "q": num(res.q),
        "delta_star": ultrametric_to_dict(res.delta_star, d.labels),
        "d_star": matrix_rows(res.d_star),
        "mst_edges": [[i + 1, j + 1, num(w)] for i, j, w in res.mst_edges],
    })


def cmd_cone(args) -> str:
    d = read_dissimilarity(args.input)
    system = build_exterior(d, nearest_ultrametric(d).q)
    if args.format == "csv":
        return system_to_csv(system)
    return _dumps(system_to_dict(system))


def cmd_candidates(args) -> str:
    d = read_dissimilarity(args.input)
    cands = bernstein_candidates(d, args.quantifier)
    states = sorted(cands.all, key=lambda s: s.vector())
    bern = sorted(cands.bernstein, key=lambda s: s.vector())
    if args.format == "csv":
        return rays_to_csv([s.vector() for s in bern], d.n)
    if args.format == "newick":
        return newick_batch((s.ultrametric for s in bern), d.labels)
    out = []
    for s in states:
        entry = ultrametric_to_dict(s.ultrametric, d.labels)
        entry["mobile_nodes"] = [sorted(i + 1 for i in c) for c in sorted(s.mobile_nodes, key=sorted)]
        entry["mobile_per_resolution"] = list(s.per_resolution)
        entry["bernstein"] = {qf: s.mobile_count(qf) <= 1 for qf in QUANTIFIERS}
        entry["provenance"] = [{"resolution": r, "slid_node": list(c), "new_weight": num(w)}
                               for r, c, w in s.provenance]
        out.append(entry)
    return _dumps({
        "n": d.n,
        "q": num(cands.q),
        "quantifier": cands.quantifier,
        "counts": {"all": len(cands.all), **{f"bernstein[{k}]": v for k, v in cands.counts().items()}},
        "candidates": out,
        "warnings": cands.warnings,
    })


def cmd_extremes(args) -> str:
    d = read_dissimilarity(args.input)
    report = enumerate_extremes(d, args.quantifier, args.oracle)
    if report.oracle_agreement is False:
        bad = [o.vector for o in report.oracle if not o.agrees]
        raise _Disagreement(f"certificate and oracle disagree on {len(bad)} candidate(s)")
    if args.format == "csv":
        return rays_to_csv(report.extreme_vectors, d.n)
    if args.format == "newick":
        return newick_batch((c.ultrametric for c in report.extremes), d.labels)
    if args.format == "dot":
        return "".join(to_dot(tangent_hypergraph(report.system, homogenize(c.ultrametric)), c.certificate,
                              name=f"ray_{k + 1}")
                       for k, c in enumerate(report.extremes))
    ix = report.system.indexer

    def entry(c):
        e = ultrametric_to_dict(c.ultrametric, d.labels)
        e["certificate"] = certificate_to_dict(c.certificate, ix)
        e["mobile_nodes"] = len(c.state.mobile_nodes)
        if c.multi_tail:
            e["multi_node_tail"] = True
        return e

    extremes = [entry(c) for c in report.extremes]
    if args.input in datasets.PUBLISHED_EXTREMES:
        for e, xref in zip(extremes, datasets.cross_reference(args.input, report.extreme_vectors)):
            e.update(xref)
    nonext = []
    for c in report.satisfying_nonextremes:
        e = entry(c)
        member, witness = express_in_extremes(report, c.ultrametric)
        e["combination_of_extremes"] = {"member": member, "coefficients": [str(w) for w in witness]}
        nonext.append(e)
    out = {
        "n": d.n,
        "q": num(report.q),
        "quantifier": args.quantifier,
        "cone_shape": list(report.system.A.shape),
        "delta_star": ultrametric_to_dict(report.delta_star, d.labels),
        "counts": report.counts(),
        "extremes": extremes,
        "satisfying_nonextremes": nonext,
        "warnings": report.candidates.warnings,
    }
    if report.oracle is not None:
        out["oracle"] = {
            "agreement": report.oracle_agreement,
            "checks": [{"vector": [num(x) for x in o.vector], "extreme": o.extreme,
                        "in_span_of_others": o.in_span_of_others,
                        "witness": [str(w) for w in o.witness]} for o in report.oracle],
        }
    if args.trials:
        out["probe"] = {"trials": args.trials, "seed": args.seed,
                        "passed": polytope_probe(d, report, args.trials, args.seed)}
    return _dumps(out)


def _verdict(d, delta):
    """Certify a candidate; raises NotInConeError with the violated constraint."""
    q = nearest_ultrametric(d).q
    system = build_exterior(d, q)
    dist = linf_distance(delta, d)
    if dist > q:
        raise NotInConeError(f"candidate is at distance {dist} > q = {q}")
    state = analyze(delta, d, q)
    return system, state, certify(system, state)


def cmd_check(args) -> str:
    d = read_dissimilarity(args.input)
    delta = parse_candidate(args.candidate, d.n)
    system, state, cert = _verdict(d, delta)
    if args.format == "dot":
        return to_dot(tangent_hypergraph(system, homogenize(delta)), cert.certificate)
    return _dumps({
        "candidate": ultrametric_to_dict(delta, d.labels),
        "extreme": cert.extreme,
        "certificate": certificate_to_dict(cert.certificate, system.indexer),
        "mobile_nodes": [sorted(i + 1 for i in c) for c in sorted(state.mobile_nodes, key=sorted)],
        "mobile_per_resolution": list(state.per_resolution),
    })


def _transcript(d, witness, quantifier) -> dict:
    report = enumerate_extremes(d, quantifier, oracle=False)
    vec = witness.vector()
    in_bern = vec in set(report.extreme_vectors) | set(report.nonextreme_vectors)
    extreme = vec in set(report.extreme_vectors)
    return {"in_bernstein": in_bern, "extreme": extreme, "counterexample": in_bern and not extreme,
            "counts": report.counts()}


def _instance_output(args, d, witness, extra: dict) -> str:
    if args.format == "csv":
        return matrix_to_csv(d)
    if args.format == "newick":
        return newick_batch([witness], d.labels)
    res = nearest_ultrametric(d)
    out = {
        "n": d.n,
        **extra,
        "d": matrix_rows(d),
        "q": num(res.q),
        "delta_star": matrix_rows(res.delta_star),
        "witness": ultrametric_to_dict(witness, d.labels),
        "witness_root_weight": num(max(witness.vector())),
        "verification": _transcript(d, witness, args.quantifier),
    }
    return _dumps(out)


def cmd_extend(args) -> str:
    d = read_dissimilarity(args.input)
    delta = parse_candidate(args.candidate, d.n)
    eps = check_rational(args.epsilon, "epsilon", positive=True)
    ext = extend_instance(d, delta, eps)
    return _instance_output(args, ext.d_ext, ext.delta_ext,
                            {"epsilon": num(eps), "r": num(ext.r), "new_entry": num(ext.r + ext.q + eps)})


def cmd_counterexample(args) -> str:
    eps = check_rational(args.epsilon, "epsilon", positive=True)
    d, witness = build_counterexample(args.n, eps)
    return _instance_output(args, d, witness, {"epsilon": num(eps)})


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ultratrop", description="Extreme rays of l-infinity nearest ultrametrics.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats, default="json"):
        sp.add_argument("--format", choices=formats, default=default)
        sp.add_argument("--output", "-o", help="write here instead of stdout")

    def src(sp):
        sp.add_argument("input", help=f"matrix file or built-in dataset ({', '.join(datasets.NAMES)})")

    def quant(sp):
        sp.add_argument("--quantifier", choices=QUANTIFIERS, default="all-resolutions")

    sp = sub.add_parser("nearest", help="one nearest ultrametric and q")
    src(sp); common(sp, ["json", "csv", "newick"])
    sp.set_defaults(func=cmd_nearest)

    sp = sub.add_parser("cone", help="homogenized exterior description (A, B)")
    src(sp); common(sp, ["json", "csv"], "csv")
    sp.set_defaults(func=cmd_cone)

    sp = sub.add_parser("candidates", help="sliding closure and Bernstein filter")
    src(sp); common(sp, ["json", "csv", "newick"]); quant(sp)
    sp.set_defaults(func=cmd_candidates)

    sp = sub.add_parser("extremes", help="certified extreme rays")
    src(sp); common(sp, ["json", "csv", "newick", "dot"]); quant(sp)
    sp.add_argument("--oracle", action=argparse.BooleanOptionalAction, default=True,
                    help="cross-check with residuation (default on)")
    sp.add_argument("--trials", type=int, default=0, help="random combinations to probe")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_extremes)

    sp = sub.add_parser("check", help="extremality certificate for one candidate")
    src(sp); common(sp, ["json", "dot"])
    sp.add_argument("--candidate", required=True, help='matrix file or pair vector like "4,6,6"')
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("extend", help="add one item preserving extremality")
    src(sp); common(sp, ["json", "csv", "newick"]); quant(sp)
    sp.add_argument("--candidate", required=True)
    sp.add_argument("--epsilon", default="1")
    sp.set_defaults(func=cmd_extend)

    sp = sub.add_parser("counterexample", help="non-extreme Bernstein candidate on n items")
    sp.add_argument("n", type=int)
    common(sp, ["json", "csv", "newick"]); quant(sp)
    sp.add_argument("--epsilon", default="1")
    sp.set_defaults(func=cmd_counterexample)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        text = args.func(args)
    except _Disagreement as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DISAGREE
    except (DissimilarityError, UltrametricError, NotInConeError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
