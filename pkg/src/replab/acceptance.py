"""The ten reproduction checks, shared by `replab paper-suite` and the test suite.

Each check returns a CheckResult with a one-line summary and the
individual comparisons that went into it.  Expected decompositions and
table columns are written out as data below.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Dict, List, Tuple

from . import char_ring as cr
from . import free_lie as fl
from . import johnson as jh
from . import mmclasses as mm
from . import symp_linalg as sl
from .rep_core import SL, Partition, Sp, dominant_multiplicities, orbit_size, partitions_of, weyl_dim

ONE = (1,)


def _p(*parts) -> Partition:
    return Partition(parts)


def _ones(k: int) -> Partition:
    return Partition((1,) * k)


# ------------------------------------------------------------ expected data

WEDGE2_WEDGE3 = {_p(): 2, _ones(2): 3, _p(2, 2): 1, _p(2, 1, 1): 1, _ones(4): 2, _p(2, 2, 1, 1): 1, _ones(6): 1}
WEDGE2_QUOTIENT = {_p(): 1, _ones(2): 1, _p(2, 2): 1, _ones(4): 1, _p(2, 2, 1, 1): 1, _ones(6): 1}
SYM2_WEDGE2 = {_ones(4): 1, _ones(2): 2, _p(): 2, _p(2, 2): 1}
WEDGE4 = {_ones(4): 1, _ones(2): 1, _p(): 1}
H_WEDGE2 = {_ones(3): 1, _ones(1): 2, _p(2, 1): 1}
H_LIE3 = {_p(): 1, _ones(2): 2, _p(2, 2): 1, _p(2, 1, 1): 1, _p(2): 2, _p(3, 1): 1}
CUP_BOUNDARY = {_ones(2): 2, _p(2, 1, 1): 1, _ones(4): 2, _p(2, 2, 1, 1): 1, _ones(6): 1}
CUP_CLOSED = {_ones(2): 1, _ones(4): 1, _p(2, 2, 1, 1): 1, _ones(6): 1}
COINVARIANTS = {_p(): 2, _ones(2): 1, _p(2, 2): 1}
TABLE_T = (0, 1, 0, 3, 0, 15)
TABLE_HOM = (0, 2, 0, 17, 0, 175)
TABLE_SUM = (0, 3, 0, 20, 0, 190)


def wedge_k_expected(k: int) -> Dict[Partition, int]:
    return {_ones(j): 1 for j in range(k % 2, k + 1, 2)}


# ------------------------------------------------------------------ results


@dataclass
class CheckResult:
    number: int
    title: str
    items: List[Tuple[str, bool, str]] = field(default_factory=list)
    seconds: float = 0.0

    def add(self, label: str, ok: bool, detail: str = ""):
        self.items.append((label, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.items)

    @property
    def failures(self) -> List[Tuple[str, bool, str]]:
        return [it for it in self.items if not it[1]]

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        n = len(self.items)
        bad = len(self.failures)
        tail = f"{n - bad}/{n} checks"
        if bad:
            tail += "; failed: " + "; ".join(f"{lab} ({det})" if det else lab for lab, _, det in self.failures)
        return f"criterion {self.number:>2} {status}: {self.title} [{tail}] ({self.seconds:.1f}s)"

    def to_json_obj(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "pass": self.ok,
            "checks": [{"label": lab, "pass": ok, "detail": det} for lab, ok, det in self.items],
            "seconds": round(self.seconds, 3),
        }


def _same(dec: cr.Decomposition, expected: Dict) -> Tuple[bool, str]:
    got = dec.as_dict()
    want = {Partition(k): v for k, v in expected.items()}
    if got == want:
        return True, ""
    exp = cr.Decomposition.from_mapping(dec.group, want).text()
    return False, f"got {dec.text()}, expected {exp}"


def _dec(expr_char: cr.FormalCharacter) -> cr.Decomposition:
    return cr.decompose(expr_char)


# ----------------------------------------------------------------- checks


def check_1() -> CheckResult:
    r = CheckResult(1, "Sp decompositions at g=6,7")
    for g in (6, 7):
        G = Sp(g)
        h = cr.std_char(G)
        w2, w3, w4 = (cr.wedge_power(h, k) for k in (2, 3, 4))
        cases = [
            ("wedge2 wedge3 H", cr.wedge_power(w3, 2), WEDGE2_WEDGE3),
            ("wedge2 (wedge3 H / H)", cr.wedge_power(w3 - h, 2), WEDGE2_QUOTIENT),
            ("Sym2 wedge2 H", cr.sym_power(w2, 2), SYM2_WEDGE2),
            ("wedge4 H", w4, WEDGE4),
            ("H x wedge2 H", cr.tensor(h, w2), H_WEDGE2),
            ("H x FLie3(H)", cr.tensor(h, fl.lie_character(G, 3)), H_LIE3),
        ]
        for k in range(1, 7):
            cases.append((f"wedge{k} H", cr.wedge_power(h, k), wedge_k_expected(k)))
        for label, ch, want in cases:
            ok, det = _same(_dec(ch), want)
            r.add(f"{label} g={g}", ok, det)
    return r


def check_2() -> CheckResult:
    r = CheckResult(2, "SL tensor powers including unstable ranks")
    cases = [(2, 2, {_p(): 1, _p(2): 1}), (2, 3, {_ones(1): 2, _p(3): 1}), (3, 3, {_p(): 1, _p(2, 1): 2, _p(3): 1})]
    for n in range(3, 9):
        cases.append((n, 2, {_ones(2): 1, _p(2): 1}))
    for n in range(4, 9):
        cases.append((n, 3, {_ones(3): 1, _p(2, 1): 2, _p(3): 1}))
    for n, d, want in cases:
        ok, det = _same(_dec(cr.tensor_power(cr.std_char(SL(n)), d)), want)
        r.add(f"(k^{n})^{d}", ok, det)
    return r


def _jacobi_ok(n: int, max_degree: int) -> bool:
    words = {d: fl.lyndon_basis(n, d) for d in range(1, max_degree - 1)}
    for dx in range(1, max_degree - 1):
        for dy in range(1, max_degree - dx):
            for dz in range(1, max_degree - dx - dy + 1):
                for x in words[dx][:3]:
                    for y in words[dy][:3]:
                        for z in words[dz][:3]:
                            X, Y, Z = (fl.expand_bracket(t) for t in (x, y, z))
                            total: Dict = {}
                            for a, b_, c in ((X, Y, Z), (Y, Z, X), (Z, X, Y)):
                                for w, v in fl.commutator(a, fl.commutator(b_, c)).items():
                                    total[w] = total.get(w, 0) + v
                            if any(total.values()):
                                return False
    return True


def check_3() -> CheckResult:
    r = CheckResult(3, "free Lie algebra characters, bracket kernels, Jacobi")
    lie_cases = [
        (1, 3, {_ones(1): 1}),
        (2, 3, {_ones(2): 1}),
        (3, 5, {_p(2, 1): 1}),
        (4, 6, {_p(3, 1): 1, _p(2, 1, 1): 1}),
    ]
    for d, n, want in lie_cases:
        for m in (n, n + 1):
            ok, det = _same(_dec(fl.lie_character(SL(m), d)), want)
            r.add(f"FLie_{d}(k^{m})", ok, det)
    for n in range(2, 7):
        ker2 = len(fl.bracket_map(n, 2).kernel_basis())
        r.add(f"kernel d=2 n={n}", ker2 == comb(n, 3), f"{ker2} vs {comb(n, 3)}")
        want3 = comb(comb(n, 2) + 1, 2) - comb(n, 4)
        ker3 = len(fl.bracket_map(n, 3).kernel_basis())
        r.add(f"kernel d=3 n={n}", ker3 == want3, f"{ker3} vs {want3}")
    r.add("Jacobi identity up to degree 6", _jacobi_ok(3, 6))
    return r


def check_4() -> CheckResult:
    r = CheckResult(4, "symplectic contraction coefficients")
    for g in range(3, 9):
        ok = all(
            sl.q_k(sl.iota(sl.hvec(g, {i: 1}))) == sl.hvec(g, {i: g - 1}) for i in range(2 * g)
        )
        r.add(f"q1 . iota = (g-1) id, g={g}", ok)
    for g in (6, 7, 8):
        want1 = sl.hvec_ext((sl.a(1), sl.a(2), sl.a(3), sl.a(4)), g) * -3
        got1 = sl.certify1(g)
        r.add(f"certify1 g={g}", got1 == want1, f"got {got1.text()}")
        want2 = sl.hvec_ext((sl.a(1), sl.a(2)), g) * (6 * g - 2)
        got2 = sl.certify2(g)
        r.add(f"certify2 g={g}", got2 == want2, f"got {got2.text()}, expected {want2.text()}")
    return r


def check_5(seed: int = 0) -> CheckResult:
    r = CheckResult(5, "Johnson image spans and bracket vanishing")
    for g in (3, 4, 5):
        d = jh.tau1_image_span(g)
        r.add(f"tau1 span g={g}", d == comb(2 * g, 3), f"{d} vs {comb(2 * g, 3)}")
    for g in (4, 5):
        n = 2 * g
        want = comb(comb(n, 2) + 1, 2) - comb(n, 4)
        d = jh.tau2_image_span(g)
        r.add(f"tau2 span g={g}", d == want, f"{d} vs {want}")
    r.add("tau2 span g=4 is 336", jh.tau2_image_span(4) == 336)
    vals = jh.random_johnson_values(seed, 100)
    bad = sum(not jh.check_bracket(v) for _, v in vals)
    r.add("bracket vanishes on 100 random values", bad == 0, f"{bad} nonzero")
    return r


def check_6() -> CheckResult:
    r = CheckResult(6, "cup-product image, boundary and closed")
    for g in (6, 7):
        boundary = jh.cup_image_boundary(g)
        ok, det = _same(boundary, CUP_BOUNDARY)
        r.add(f"boundary g={g}", ok, det)
        ok, det = _same(jh.cup_image_closed(g), CUP_CLOSED)
        r.add(f"closed g={g}", ok, det)
        ok, det = _same(jh.wedge2_wedge3(g) - boundary, COINVARIANTS)
        r.add(f"complement g={g}", ok, det)
    return r


def check_7() -> CheckResult:
    r = CheckResult(7, "comparison tables at g=12")
    try:
        rows = mm.comparison_table(12, 6)
        mismatch = ""
    except mm.TableMismatch as e:
        rows = mm.comparison_table(12, 6, check=False)
        mismatch = str(e)
    r.add("t_d", tuple(x.t_d for x in rows) == TABLE_T, str(tuple(x.t_d for x in rows)))
    r.add("hom", tuple(x.hom for x in rows) == TABLE_HOM, str(tuple(x.hom for x in rows)))
    r.add("t_d + hom", tuple(x.total for x in rows) == TABLE_SUM, str(tuple(x.total for x in rows)))
    r.add("weighted partitions", tuple(x.kawazumi for x in rows) == TABLE_SUM, str(tuple(x.kawazumi for x in rows)))
    r.add(
        "k=0 and k=2 counts",
        tuple(len(mm.enumerate_weighted(d, 0)) for d in range(1, 7)) == TABLE_T
        and tuple(len(mm.enumerate_weighted(d, 2)) for d in range(1, 7)) == TABLE_HOM,
    )
    r.add("right-hand columns agree", not mismatch, mismatch)
    return r


def check_8() -> CheckResult:
    r = CheckResult(8, "Sp branching rule")
    bad_rule, bad_cor = [], []
    for g in range(4, 8):
        for d in range(0, 5):
            for lam in partitions_of(d, max_parts=g):
                got = set(cr.branch_sp(lam, g).partitions)
                if got != set(cr.interval_rule(lam, g)):
                    bad_rule.append((lam, g))
                if d and len(lam) <= g - 1:
                    if lam not in got or not any(p.degree == d - 1 for p in got):
                        bad_cor.append((lam, g))
    r.add("factor sets follow the interval rule", not bad_rule, str(bad_rule[:3]))
    r.add("contains lam and a degree d-1 factor", not bad_cor, str(bad_cor[:3]))
    return r


def check_9() -> CheckResult:
    r = CheckResult(9, "property surrogates")
    bad = []
    for n in range(1, 8):
        for G in ([Sp(n)] + ([SL(n)] if n >= 2 else [])):
            for d in range(0, 7):
                for lam in partitions_of(d, max_parts=G.max_parts):
                    m = dominant_multiplicities(G, lam)
                    if sum(orbit_size(G, w) * k for w, k in m.items()) != weyl_dim(G, lam):
                        bad.append((str(G), lam))
    r.add("Freudenthal vs Weyl, degree <= 6, rank <= 7", not bad, str(bad[:3]))

    round_trip = True
    for g in (2, 3, 4):
        G = Sp(g)
        h = cr.std_char(G)
        for ch in (cr.tensor_power(h, 3), cr.tensor(cr.wedge_power(h, 2), cr.sym_power(h, 2)), cr.wedge_power(h, 3)):
            round_trip &= cr.decompose(ch).character() == ch
    r.add("peeling rebuilds the character", round_trip)

    stable = True
    for d in (2, 3, 4):
        ref = None
        for g in range(d, d + 3):
            dec = cr.decompose(cr.tensor_power(cr.std_char(Sp(g)), d)).as_dict()
            stable &= ref is None or dec == ref
            ref = dec
    r.add("tensor power decompositions stable across ranks", stable)

    for d in (2, 4, 6, 8):
        dfact = 1
        for k in range(d - 1, 0, -2):
            dfact *= k
        e = len(mm.enumerate_weighted(d, 0))
        t = cr.trivial_multiplicity(d, d)
        r.add(f"|P_{d}(k=0)| = t_{d} = {dfact}", e == t == dfact, f"{e}, {t}, {dfact}")
    return r


def check_10() -> CheckResult:
    r = CheckResult(10, "dimension bookkeeping")
    for g in (6, 7):
        b = mm.bookkeeping_identities(g)
        r.add(f"punctured = boundary + 1, g={g}", b.punctured_is_boundary_plus_one)
        r.add(f"closed + 1 + dim H(x)(wedge3 H/H) = punctured, g={g}", b.closed_identity)
        r.add(f"extra factors have dimension 1 + dim H(x)(wedge3 H/H), g={g}", b.extra_matches_h_tensor_quotient)
        extra = (jh.cup_image_boundary(g) + cr.Decomposition.from_mapping(Sp(g), {(): 1})) - jh.cup_image_closed(g)
        want = mm.h_tensor_quotient_decomposition(g) + cr.Decomposition.from_mapping(Sp(g), {(): 1})
        r.add(f"extra factors match V_0 + H(x)(wedge3 H/H), g={g}", extra.same_terms(want), extra.text())
    return r


CHECKS: Dict[int, Callable[[], CheckResult]] = {
    1: check_1,
    2: check_2,
    3: check_3,
    4: check_4,
    5: check_5,
    6: check_6,
    7: check_7,
    8: check_8,
    9: check_9,
    10: check_10,
}


def run_check(number: int) -> CheckResult:
    start = time.perf_counter()
    res = CHECKS[number]()
    res.seconds = time.perf_counter() - start
    return res


def thread_cap() -> int:
    raw = os.environ.get("REPLAB_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"REPLAB_THREADS must be an integer >= 1, got {raw!r}") from None
    if n < 1:
        raise ValueError(f"REPLAB_THREADS must be an integer >= 1, got {raw!r}")
    return n


def run_all(numbers=None, workers: int | None = None) -> List[CheckResult]:
    numbers = sorted(CHECKS) if numbers is None else list(numbers)
    workers = thread_cap() if workers is None else workers
    if workers <= 1:
        return [run_check(n) for n in numbers]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_check, numbers))
