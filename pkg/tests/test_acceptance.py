"""Acceptance criteria; each records one PASS/FAIL line shown at the end of the run."""
import json
import random
import time
from fractions import Fraction
from itertools import combinations

import pytest

from conftest import random_dissimilarity
from ultratrop import cli, datasets
from ultratrop.cone import build_exterior, check_membership, homogenize
from ultratrop.extend import build_counterexample, extend_instance
from ultratrop.extremes import enumerate_extremes, polytope_probe
from ultratrop.hypergraph import is_extreme
from ultratrop.nearest import bottleneck_map, nearest_ultrametric
from ultratrop.sliding import bernstein_candidates
from ultratrop.trees import DissimilarityMap, tree_from_ultrametric, ultrametric_from_tree
from ultratrop.tropical import BOTTOM, oplus, otimes

RESULTS: dict[str, tuple[bool, str]] = {}


def record(key: str, ok: bool, detail: str):
    RESULTS[key] = (ok, detail)
    assert ok, detail


def _cli_json(capsys, *argv):
    code = cli.main(list(argv))
    out, _ = capsys.readouterr()
    assert code == 0
    return json.loads(out)


def _vec(strings):
    return tuple(Fraction(s) for s in strings)


def test_criterion_1_three_items(capsys):
    t0 = time.perf_counter()
    near = _cli_json(capsys, "nearest", "paper-n3")
    ext = _cli_json(capsys, "extremes", "paper-n3")
    elapsed = time.perf_counter() - t0
    rays = sorted(_vec(e["vector"]) for e in ext["extremes"])
    ok = (_vec(near["delta_star"]["vector"]) == (4, 6, 6) and near["q"] == "2"
          and rays == [(0, 6, 6), (4, 6, 6)] and elapsed < 1)
    record("1", ok, f"q={near['q']} rays={[list(map(str, r)) for r in rays]} in {elapsed:.2f}s")


def test_criterion_2_four_items(capsys):
    t0 = time.perf_counter()
    ext = _cli_json(capsys, "extremes", "paper-n4")
    elapsed = time.perf_counter() - t0
    rays = sorted(_vec(e["vector"]) for e in ext["extremes"])
    delta = [[int(x) for x in r] for r in ext["delta_star"]["matrix"]]
    ok = (ext["q"] == "4" and delta == datasets.NEAREST["paper-n4"]["delta_star"]
          and rays == sorted(datasets.published_rays("paper-n4"))
          and len(ext["satisfying_nonextremes"]) == 2 and elapsed < 5)
    record("2", ok, f"q={ext['q']} extremes={len(rays)} non-extremes={len(ext['satisfying_nonextremes'])} "
                    f"in {elapsed:.2f}s")


@pytest.fixture(scope="module")
def n8_output():
    import io
    import contextlib

    buf = io.StringIO()
    t0 = time.perf_counter()
    with contextlib.redirect_stdout(buf):
        code = cli.main(["extremes", "paper-n8"])
    elapsed = time.perf_counter() - t0
    assert code == 0
    return json.loads(buf.getvalue()), elapsed


def test_criterion_3a_eight_items_q_and_cone(n8_output):
    out, elapsed = n8_output
    ok = out["q"] == "9" and out["cone_shape"] == [224, 29] and elapsed < 300
    record("3a", ok, f"q={out['q']} cone={out['cone_shape'][0]}x{out['cone_shape'][1]} in {elapsed:.2f}s")


def test_criterion_3b_eight_items_extremes(n8_output):
    out, _ = n8_output
    cols = sorted(e["published_column"] for e in out["extremes"] if e["published_column"] is not None)
    ok = len(out["extremes"]) == 16 and cols == list(range(1, 17))
    record("3b", ok, f"extremes={len(out['extremes'])} matched published columns={len(cols)}")


def test_criterion_3c_eight_items_non_extremes(n8_output):
    out, _ = n8_output
    found = len(out["satisfying_nonextremes"])
    record("3c", found == 4, f"satisfying non-extremes={found} (expected 4)")


def _closed_form(vals):
    """Extreme rays for three items from the case analysis, in pair order (12, 13, 23)."""
    order = sorted(range(3), key=lambda k: vals[k])
    a, b, c = (vals[k] for k in order)
    q = Fraction(c - b, 2)
    if b == c:
        return {tuple(Fraction(x) for x in vals)}, 3
    rays = set()
    if a < b:
        for lo in (a + q, a - q):
            v = [b + q] * 3
            v[order[0]] = lo
            rays.add(tuple(v))
        return rays, 1
    for p, other in ((order[0], order[1]), (order[1], order[0])):
        v = [a + q] * 3
        v[p] = a - q
        rays.add(tuple(v))
    return rays, 2


def test_criterion_4_three_item_sufficiency():
    rng = random.Random(4)
    triples = [[rng.randint(1, 100) for _ in range(3)] for _ in range(1000)]
    for _ in range(100):
        a, c = sorted(rng.sample(range(1, 101), 2))
        t = [a, a, c]
        rng.shuffle(t)
        triples.append(t)
        b = rng.randint(1, c)
        t = [b, c, c]
        rng.shuffle(t)
        triples.append(t)
    cases = {1: 0, 2: 0, 3: 0}
    bad = []
    for t in triples:
        expected, case = _closed_form(t)
        cases[case] += 1
        r = enumerate_extremes(DissimilarityMap.from_vector(t), oracle=False)
        if r.satisfying_nonextremes or set(r.extreme_vectors) != expected:
            bad.append(t)
    ok = not bad and all(cases.values())
    record("4", ok, f"{len(triples)} triples, cases={cases}, mismatches={len(bad)} {bad[:3]}")


def test_criterion_5_five_item_counterexample(capsys):
    t0 = time.perf_counter()
    out = _cli_json(capsys, "counterexample", "5")
    elapsed = time.perf_counter() - t0
    d = [[int(x) for x in r] for r in out["d"]]
    delta = [[int(x) for x in r] for r in out["delta_star"]]
    expected_d = [
        [0, 6, 6, 5, 15],
        [6, 0, 14, 12, 15],
        [6, 14, 0, 9, 15],
        [5, 12, 9, 0, 15],
        [15, 15, 15, 15, 0],
    ]
    expected_delta = [
        [0, 10, 10, 9, 19],
        [10, 0, 10, 10, 19],
        [10, 10, 0, 10, 19],
        [9, 10, 10, 0, 19],
        [19, 19, 19, 19, 0],
    ]
    v = out["verification"]
    ok = (d == expected_d and delta == expected_delta and out["witness_root_weight"] == "11"
          and v["in_bernstein"] and not v["extreme"] and elapsed < 5)
    record("5", ok, f"matrix ok={d == expected_d} delta* ok={delta == expected_delta} "
                    f"root={out['witness_root_weight']} in_bernstein={v['in_bernstein']} "
                    f"extreme={v['extreme']} in {elapsed:.2f}s")


def test_criterion_6_counterexample_chain():
    t0 = time.perf_counter()
    verdicts = {}
    for n in (4, 5, 6, 7):
        d, witness = build_counterexample(n)
        r = enumerate_extremes(d, oracle=False)
        vec = witness.vector()
        verdicts[n] = vec in r.nonextreme_vectors and vec not in r.extreme_vectors
    elapsed = time.perf_counter() - t0
    record("6", all(verdicts.values()) and elapsed < 60, f"{verdicts} in {elapsed:.2f}s")


def test_criterion_7_oracle_agreement():
    disagreements = 0
    checked = 0
    for name in datasets.NAMES:
        r = enumerate_extremes(datasets.load(name))
        disagreements += sum(not o.agrees for o in r.oracle)
        checked += len(r.oracle)
    rng = random.Random(7)
    for _ in range(200):
        r = enumerate_extremes(random_dissimilarity(rng, rng.choice([3, 4])))
        disagreements += sum(not o.agrees for o in r.oracle)
        checked += len(r.oracle)
    record("7", disagreements == 0, f"{checked} candidates checked, {disagreements} disagreements")


def test_criterion_8_extension_preserves_extremality():
    rng = random.Random(8)
    violations = 0
    pairs = 0
    while pairs < 100:
        d = random_dissimilarity(rng, 3)
        cs = bernstein_candidates(d)
        delta = rng.choice(cs.all).ultrametric
        system = build_exterior(d, cs.q)
        before = is_extreme(system, homogenize(delta))[0]
        for eps in (Fraction(1), Fraction(1, 2)):
            ext = extend_instance(d, delta, eps)
            after = is_extreme(build_exterior(ext.d_ext, ext.q), homogenize(ext.delta_ext))[0]
            violations += before != after
        pairs += 1
    record("8", violations == 0, f"{pairs} pairs x 2 epsilons, {violations} violations")


def test_criterion_9_structural_invariants():
    rng = random.Random(9)
    failures = []
    vals = [Fraction(rng.randint(-20, 20), rng.randint(1, 4)) for _ in range(30)] + [BOTTOM]
    for _ in range(2000):
        a, b, c = (rng.choice(vals) for _ in range(3))
        if not (oplus(a, b) == oplus(b, a) and otimes(a, oplus(b, c)) == oplus(otimes(a, b), otimes(a, c))
                and oplus(oplus(a, b), c) == oplus(a, oplus(b, c))
                and otimes(otimes(a, b), c) == otimes(a, otimes(b, c))):
            failures.append("semiring")
            break
    for _ in range(300):
        n = rng.randint(3, 7)
        d = random_dissimilarity(rng, n, 1, 6)
        u = bottleneck_map(d)
        if ultrametric_from_tree(tree_from_ultrametric(u)).entries != u.entries:
            failures.append("round trip")
        order = d.pairs()
        rng.shuffle(order)
        if bottleneck_map(d, order).entries != u.entries:
            failures.append("tie-break")
        res = nearest_ultrametric(d)
        system = build_exterior(d, res.q)
        v = homogenize(res.delta_star)
        lam = Fraction(rng.randint(-50, 50), rng.randint(1, 3))
        if not (check_membership(v, system)[0] and check_membership(tuple(x + lam for x in v), system)[0]):
            failures.append("scaling")
    for name in datasets.NAMES:
        d = datasets.load(name)
        if not polytope_probe(d, enumerate_extremes(d, oracle=False), trials=100, seed=9):
            failures.append(f"probe {name}")
    record("9", not failures, "all invariants hold" if not failures else f"failed: {sorted(set(failures))}")
