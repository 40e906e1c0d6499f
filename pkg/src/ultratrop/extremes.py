"""Extreme rays of the nearest-ultrametric cone.

Every extreme ray is among the Bernstein candidates, so filtering the
candidates through the greatest-SCC test yields the extreme set exactly.
The residuation oracle re-derives each verdict independently: a candidate
is extreme iff it is not a max-plus combination of the other candidates.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .cone import NotInConeError, TropicalSystem, build_exterior, check_membership, homogenize, normalize
from .hypergraph import SCCDecomposition, scc_decomposition, tangent_hypergraph
from .sliding import CandidateSet, CandidateState, bernstein_candidates
from .trees import DissimilarityMap, Ultrametric, is_ultrametric, linf_distance
from .tropical import BOTTOM, span_membership, trop_combine


@dataclass
class CertifiedCandidate:
    state: CandidateState
    extreme: bool
    certificate: SCCDecomposition
    multi_tail: bool = False

    @property
    def ultrametric(self) -> Ultrametric:
        return self.state.ultrametric

    @property
    def vector(self) -> tuple:
        return self.state.vector()


@dataclass
class OracleCheck:
    vector: tuple
    extreme: bool
    in_span_of_others: bool
    witness: tuple
    agrees: bool


@dataclass
class ExtremeReport:
    d: DissimilarityMap
    q: Fraction
    delta_star: Ultrametric
    system: TropicalSystem
    candidates: CandidateSet
    extremes: list  # CertifiedCandidate, lexicographic on the normalized vector
    satisfying_nonextremes: list
    oracle: Optional[list] = None
    timings: dict = field(default_factory=dict)

    @property
    def extreme_vectors(self) -> list:
        return [c.vector for c in self.extremes]

    @property
    def nonextreme_vectors(self) -> list:
        return [c.vector for c in self.satisfying_nonextremes]

    @property
    def oracle_agreement(self) -> Optional[bool]:
        if self.oracle is None:
            return None
        return all(o.agrees for o in self.oracle)

    def counts(self) -> dict:
        return {
            "candidates": len(self.candidates.all),
            "bernstein": len(self.extremes) + len(self.satisfying_nonextremes),
            "extremes": len(self.extremes),
            "satisfying_nonextremes": len(self.satisfying_nonextremes),
            "bernstein_by_quantifier": self.candidates.counts(),
        }


def certify(system: TropicalSystem, state: CandidateState) -> CertifiedCandidate:
    v = homogenize(state.ultrametric)
    H = tangent_hypergraph(system, v)
    dec = scc_decomposition(H)
    return CertifiedCandidate(state, dec.greatest is not None, dec, bool(H.multi_tail_arcs))


def enumerate_extremes(d: DissimilarityMap, quantifier: str = "all-resolutions",
                       oracle: bool = True) -> ExtremeReport:
    if d.n < 3:
        raise ValueError("extreme enumeration needs at least three items")
    t0 = time.perf_counter()
    cands = bernstein_candidates(d, quantifier)
    t1 = time.perf_counter()
    system = build_exterior(d, cands.q)
    certified = [certify(system, s) for s in cands.bernstein]
    t2 = time.perf_counter()
    certified.sort(key=lambda c: c.vector)
    report = ExtremeReport(
        d=d,
        q=cands.q,
        delta_star=cands.delta_star,
        system=system,
        candidates=cands,
        extremes=[c for c in certified if c.extreme],
        satisfying_nonextremes=[c for c in certified if not c.extreme],
        timings={"candidates_s": t1 - t0, "certify_s": t2 - t1},
    )
    if oracle:
        report.oracle = cross_validate(report)
        report.timings["oracle_s"] = time.perf_counter() - t2
    return report


def cross_validate(report: ExtremeReport) -> list[OracleCheck]:
    """Residuation verdict for every Bernstein candidate against the others."""
    members = report.extremes + report.satisfying_nonextremes
    vecs = [homogenize(c.ultrametric) for c in members]
    out = []
    for k, c in enumerate(members):
        others = vecs[:k] + vecs[k + 1:]
        member, witness = span_membership(vecs[k], others)
        out.append(OracleCheck(c.vector, c.extreme, member, witness, member != c.extreme))
    return out


def express_in_extremes(report: ExtremeReport, delta: Ultrametric) -> tuple[bool, tuple]:
    """Residuation of ``delta`` against the extreme rays alone."""
    gens = [homogenize(c.ultrametric) for c in report.extremes]
    return span_membership(homogenize(delta), gens)


def polytope_probe(d: DissimilarityMap, report: ExtremeReport, trials: int = 100,
                   seed: int = 0) -> bool:
    """Random max-plus combinations of the extremes stay in the polytope."""
    gens = [homogenize(c.ultrametric) for c in report.extremes]
    if not gens:
        raise ValueError("report has no extreme rays")
    rng = random.Random(seed)
    span = max(int(2 * report.q), 1) + 2
    for _ in range(trials):
        coeffs = []
        for _ in gens:
            if rng.random() < 0.1:
                coeffs.append(BOTTOM)
            else:
                coeffs.append(Fraction(rng.randint(-4 * span, 0), rng.choice((1, 2, 3))))
        if all(c is BOTTOM for c in coeffs):
            coeffs[rng.randrange(len(coeffs))] = Fraction(0)
        v = trop_combine(gens, coeffs)
        if not check_membership(v, report.system)[0]:
            return False
        try:
            delta = normalize(v, report.system.indexer)
        except NotInConeError:
            return False
        if not is_ultrametric(delta)[0] or linf_distance(delta, d) > report.q:
            return False
    return True
