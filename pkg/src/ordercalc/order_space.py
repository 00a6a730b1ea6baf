"""Finite-ball approximations of points of the space of orderings.

An ordering is seen only through its fingerprint: the signs it gives to
the nontrivial elements of a ball.  Two orderings are close when their
fingerprints agree on a large ball.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .braid import burau_matrix, sigma_classify
from .conradian import n2_violations
from .crossings import CrossingCandidate, CrossingError, refine_between, search_crossings, verify_crossing
from .orderings import (
    EXOTIC_C,
    GEN_Y,
    KLEIN_CONES,
    KleinCone,
    Ordering,
    OrderingError,
    Sign,
    ball,
    compare,
    conjugate_ordering,
    embed_free2,
    is_positive,
    parse_ordering,
)
from .words import FREE2, Braid, GroupTag, Word, parse_word


@dataclass(frozen=True)
class BallFingerprint:
    tag: GroupTag
    radius: int
    signs: tuple[tuple[Word, Sign], ...]

    def restrict(self, radius: int) -> BallFingerprint:
        return BallFingerprint(self.tag, radius, tuple((w, s) for w, s in self.signs if len(w) <= radius))

    def as_dict(self) -> dict[Word, Sign]:
        return dict(self.signs)

    def negated(self) -> BallFingerprint:
        return BallFingerprint(self.tag, self.radius, tuple((w, -s) for w, s in self.signs))

    def to_json(self) -> dict:
        return {"radius": self.radius, "signs": {str(w): s.symbol for w, s in self.signs}}

    def __str__(self) -> str:
        return " ".join(f"{w}:{s.symbol}" for w, s in self.signs)


def fingerprint(ord: Ordering, radius: int) -> BallFingerprint:
    signs = tuple((w, is_positive(ord, w)) for w in ball(ord.tag, radius) if not w.is_identity())
    return BallFingerprint(ord.tag, radius, signs)


def in_U_f(ord: Ordering, f: Word) -> bool:
    if f.is_identity():
        raise OrderingError("U_f needs f != 1")
    return is_positive(ord, f) == Sign.POSITIVE


def agreement_radius(ord1: Ordering, ord2: Ordering, max_radius: int) -> int:
    if ord1.tag != ord2.tag:
        raise OrderingError(f"orderings live in different groups: {ord1.tag}, {ord2.tag}")
    for w in ball(ord1.tag, max_radius):
        if not w.is_identity() and is_positive(ord1, w) != is_positive(ord2, w):
            return len(w) - 1
    return max_radius


def conjugate_orbit_fingerprints(ord: Ordering, conj_radius: int, fp_radius: int) -> dict[Word, BallFingerprint]:
    return {h: fingerprint(conjugate_ordering(ord, h), fp_radius) for h in ball(ord.tag, conj_radius)}


def distinct_fingerprints(fps: dict[Word, BallFingerprint]) -> list[BallFingerprint]:
    out: list[BallFingerprint] = []
    for fp in fps.values():
        if fp not in out:
            out.append(fp)
    return out


# -- experiment reports -----------------------------------------------------------


def comparison(ord: Ordering, lhs: Word, rhs: Word, expected: bool, reference: Optional[dict] = None) -> dict:
    """Evidence record for the claim ``lhs < rhs`` under ``ord``."""
    row = {
        "order": str(ord),
        "lhs": str(lhs),
        "rhs": str(rhs),
        "holds": compare(ord, lhs, rhs) == Sign.POSITIVE,
        "expected": expected,
    }
    if reference is not None:
        row["reference"] = reference
    return row


@dataclass
class ExperimentReport:
    experiment: str
    params: dict
    verdict: str = "pass"
    witness: Optional[dict] = None
    evidence: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self) -> dict:
        out = {
            "experiment": self.experiment,
            "params": self.params,
            "verdict": self.verdict,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.summary:
            out["summary"] = self.summary
        out["evidence"] = self.evidence
        return out


def _row_passes(row: dict) -> bool:
    comps = all(c["holds"] == c["expected"] for c in row.get("comparisons", []))
    return comps and all(row.get("checks", {}).values())


def _finish(report: ExperimentReport) -> ExperimentReport:
    for row in report.evidence:
        if not _row_passes(row):
            report.verdict = "fail"
            report.witness = row
            break
    return report


def replay_verdict(report: ExperimentReport | dict) -> str:
    """Re-derive the verdict from stored evidence only; no oracle calls."""
    evidence = report["evidence"] if isinstance(report, dict) else report.evidence
    return "pass" if all(_row_passes(row) for row in evidence) else "fail"


def recheck_evidence(report: ExperimentReport | dict) -> bool:
    """Re-run every stored comparison through the oracle and match the record."""
    evidence = report["evidence"] if isinstance(report, dict) else report.evidence
    for row in evidence:
        for c in row.get("comparisons", []):
            ord = parse_ordering(c["order"])
            holds = compare(ord, parse_word(c["lhs"], ord.tag), parse_word(c["rhs"], ord.tag)) == Sign.POSITIVE
            if holds != c["holds"]:
                return False
            ref = c.get("reference")
            if ref is not None:
                rord = parse_ordering(ref["order"])
                expected = (
                    compare(rord, parse_word(ref["lhs"], rord.tag), parse_word(ref["rhs"], rord.tag))
                    == Sign.POSITIVE
                )
                if expected != c["expected"]:
                    return False
    return True


# -- experiments --------------------------------------------------------------------


def refined_crossing_below(
    ord: Ordering, h2: Word, search_bounds: tuple[int, int, int, int] = (3, 4, 4, 10), n_max: int = 25
) -> CrossingCandidate:
    """Search a crossing with 1 <= u and w < h2, then refine it so 1 < u and v < h2."""
    radius, M_max, N_max, search_n = search_bounds
    one = Word.identity(h2.tag)
    found = search_crossings(
        ord,
        radius,
        M_max,
        N_max,
        search_n,
        limit=1,
        u_filter=lambda u: compare(ord, u, one) != Sign.POSITIVE,
        w_filter=lambda w: compare(ord, w, h2) == Sign.POSITIVE,
    )
    if not found:
        raise CrossingError(f"no crossing with w < {h2} within the search bounds")
    return refine_between(ord, found[0][0], one, h2, n_max)


def primero_perturbation(
    ord: Ordering, c: CrossingCandidate, family: Sequence[Word], n_max: int = 25
) -> ExperimentReport:
    """Check that conjugating by v^-1 and by w^-1 keeps the family positive
    while the two conjugates disagree on g^M f^N."""
    one = Word.identity(c.tag)
    if not family:
        raise CrossingError("family must be nonempty")
    if not verify_crossing(ord, c, n_max).ok:
        raise CrossingError("candidate does not verify as a crossing")
    for f in family:
        if is_positive(ord, f) != Sign.POSITIVE:
            raise CrossingError(f"family element {f} is not positive")
    least = family[0]
    for f in family[1:]:
        if compare(ord, f, least) == Sign.POSITIVE:
            least = f
    if not (compare(ord, one, c.u) == Sign.POSITIVE and compare(ord, c.v, least) == Sign.POSITIVE):
        raise CrossingError("need 1 < u < v < min(family)")
    by_v = conjugate_ordering(ord, ~c.v)
    by_w = conjugate_ordering(ord, ~c.w)
    h = c.g**c.M * c.f**c.N
    report = ExperimentReport(
        "primero",
        {"order": str(ord), "candidate": c.to_json(), "family": [str(f) for f in family], "n_max": n_max},
    )
    for f in family:
        report.evidence.append(
            {
                "input": {"element": str(f)},
                "comparisons": [comparison(by_v, one, f, True), comparison(by_w, one, f, True)],
            }
        )
    report.evidence.append(
        {
            "input": {"element": str(h)},
            "comparisons": [comparison(by_v, h, one, True), comparison(by_w, one, h, True)],
        }
    )
    return _finish(report)


def rigidity_experiment(conj_radius: int, check_radius: int) -> ExperimentReport:
    """For each conjugator b: y^-1 is positive for the b-conjugate of exoticC
    exactly when b is a power of y, and then the conjugate matches exoticC on
    the check ball."""
    one = Word.identity(FREE2)
    y_inv = parse_word("Y", FREE2)
    base_fp = fingerprint(EXOTIC_C, check_radius)
    report = ExperimentReport("rigidity", {"conj_radius": conj_radius, "check_radius": check_radius})
    for beta in ball(FREE2, conj_radius):
        conj = conjugate_ordering(EXOTIC_C, beta)
        in_y = beta in GEN_Y
        row = {
            "input": {"beta": str(beta), "in_gen_y": in_y},
            "comparisons": [comparison(conj, one, y_inv, in_y)],
        }
        if in_y:
            for g, s in base_fp.signs:
                row["comparisons"].append(
                    comparison(
                        conj, one, g, s == Sign.POSITIVE, reference={"order": str(EXOTIC_C), "lhs": "1", "rhs": str(g)}
                    )
                )
        report.evidence.append(row)
    return _finish(report)


_B3 = Braid(3)


def _split_leading(reduced: Word) -> tuple[int, Word]:
    """Write a 1-positive handle-free word as s2^k s1 rest; return (k, rest)."""
    letters = reduced.letters
    first = next(i for i, a in enumerate(letters) if abs(a) == 1)
    k = sum(1 if a > 0 else -1 for a in letters[:first])
    return k, Word(_B3, letters[first + 1 :])


def convex_subgroup_experiment(radius: int) -> ExperimentReport:
    """Every 1-positive exoticC-positive b in the ball gives x < y^l b once the
    leading s2-exponent of y^l b is positive."""
    report = ExperimentReport("convex", {"radius": radius})
    s1, s2 = Word.generator(_B3, 1), Word.generator(_B3, 2)
    for m in range(-3, 4):
        lhs = ~s1 * s2**m * s1
        rhs = s2 * s1**m * ~s2
        report.evidence.append(
            {"input": {"identity_m": m}, "checks": {"burau_equal": burau_matrix(lhs) == burau_matrix(rhs)}}
        )
    x = parse_word("x", FREE2)
    for beta in ball(FREE2, radius):
        if is_positive(EXOTIC_C, beta) != Sign.POSITIVE:
            continue
        cls = sigma_classify(embed_free2(beta))
        if not (cls.kind == "positive" and cls.index == 1):
            continue
        k, rest = _split_leading(cls.reduced)
        l = -k // 2 + 1  # least l with 2l + k > 0
        k_prime = 2 * l + k
        beta_prime = Word.generator(FREE2, 2, l) * beta
        lhs = s1**-2 * s2**k_prime * s1 * rest
        rhs = s2 * s1 * ~s2 * s1 ** (k_prime - 1) * ~s2 * rest
        # a word whose s1 letters are all positive and that contains s1
        rhs_one_positive = any(a == 1 for a in rhs.letters) and all(a != -1 for a in rhs.letters)
        report.evidence.append(
            {
                "input": {"beta": str(beta), "k": k, "l": l, "k_prime": k_prime, "beta_prime": str(beta_prime)},
                "checks": {
                    "leading_form": burau_matrix(s2**k_prime * s1 * rest) == burau_matrix(embed_free2(beta_prime)),
                    "identity_chain": burau_matrix(lhs) == burau_matrix(rhs),
                    "rhs_one_positive": rhs_one_positive,
                },
                "comparisons": [comparison(EXOTIC_C, x, beta_prime, True)],
            }
        )
    return _finish(report)


def klein_enumeration(radius: int, search_bounds: tuple[int, int, int, int] = (4, 3, 3, 10)) -> ExperimentReport:
    """The four Klein cones: distinct fingerprints, no n = 2 violations and
    no crossings within the search bounds."""
    s_radius, M_max, N_max, n_max = search_bounds
    report = ExperimentReport("klein", {"radius": radius, "search_bounds": list(search_bounds)})
    fps = {k: fingerprint(k, radius) for k in KLEIN_CONES}
    distinct = len(set(fps.values()))
    for k in KLEIN_CONES:
        flipped = KleinCone(-k.eps_a, -k.eps_b)
        violations = n2_violations(k, radius)
        crossings = search_crossings(k, s_radius, M_max, N_max, n_max, limit=1)
        report.evidence.append(
            {
                "input": {"order": str(k)},
                "checks": {
                    "no_n2_violation": not violations,
                    "no_crossing": not crossings,
                    "flip_negates": fps[flipped] == fps[k].negated(),
                },
            }
        )
    report.evidence.append({"input": {"distinct_fingerprints": distinct}, "checks": {"four_distinct": distinct == 4}})
    report.summary = {"count": distinct, "power_of_two": distinct > 0 and distinct & (distinct - 1) == 0}
    return _finish(report)
