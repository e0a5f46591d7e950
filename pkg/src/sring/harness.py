"""Statement catalog, corpus generation, and counterexample search.

Every cataloged statement compiles to an executable check over one
(ring, multiplicative set) instance.  Hypothesis failures are a distinct
verdict from holds/VIOLATED: the side conditions (0 not in S, S-reduced,
S disjoint from the zero divisors) fail often on random instances and a
vacuously green suite would be worthless.

A VIOLATED verdict always carries a re-checkable payload listing the
concrete elements and ideals involved.  Statement checks are pure, so the
runner may fan instances out across worker processes; reports are merged
in canonical (statement, instance-index) order regardless of scheduling.
"""

from __future__ import annotations

import enum
import hashlib
import itertools
import os
import random
import time
from dataclasses import dataclass, field

from .errors import MalformedExpressionError, SizeCapExceededError, SRingError, ZeroInClosureError
from .ideals import (
    Ideal,
    MultiplicativeSet,
    dominant_colon_witness,
    enumerate_ideals,
    ideal_from_mask,
    ideal_intersection,
    ideal_product,
    ideal_sum,
    is_ideal_mask,
    is_maximal_ideal,
    is_prime_ideal,
    mult_closure,
    s_minimal_s_primes,
    s_radical,
    s_nilradical,
    s_spectrum,
    spectrum_intersection,
)
from .predicates import (
    annihilator_mask,
    is_reduced,
    is_s_zero_ideal,
    is_s_integral_domain,
    is_s_pf,
    is_s_reduced,
    is_s_zero_element,
    is_u_s_armendariz_up_to,
    localize,
)
from .rings import (
    FiniteRing,
    Idealization,
    IdealizationRing,
    ModuleSpec,
    Product,
    ProductRing,
    Quotient,
    QuotientRing,
    TriangularE,
    TriangularERing,
    ZMod,
    build_ring,
    mask_elements,
    nilpotent_profile,
    thaw_literal,
    zero_divisor_set,
)
from .ringfile import instance_to_json, parse_ring_data


class StatementId(enum.Enum):
    S_RADICAL_QUOTIENT = "an ideal is S-radical iff its quotient is S-reduced (quotient zero divisors avoiding S)"
    INTERSECTION_VS_PRODUCT = "over an S-reduced ring, I*J is S-zero iff the intersection of I and J is"
    SPECTRUM_S_ZERO = "over an S-reduced ring with 0 not in S, the intersection of all S-primes is S-zero"
    NILS_IN_COLON = "the S-nilradical sits inside the dominant colon ideal of every S-prime"
    NILS_S_ZERO = "over an S-reduced ring the S-nilradical is S-zero"
    LOCALIZATION_REDUCED = "the localization of an S-reduced ring is reduced"
    LOCALIZATION_ARTINIAN = "the localization is Artinian when every nonzero localized element is a unit or zero divisor"
    PRODUCT_OF_FIELDS = "a reduced ring with S avoiding zero divisors splits into a product of fields"
    POLY_TRANSFER = "S-reducedness transfers between the ring and its bounded-degree polynomials"
    U_S_RED_IMPLIES_U_S_ARM = "uniformly S-reduced rings pass the uniform zero-product coefficient test"
    E_RING_ARMENDARIZ = "the triangular matrix carrier over an S-reduced ring passes the uniform test"
    IDEALIZATION_ARMENDARIZ = "the square-zero extension of a uniformly S-reduced ring passes the uniform test"
    S_REDUCED_IMPLIES_HOPFIAN = "annihilator chains of an S-reduced ring are S-stationary"
    S_PF_IMPLIES_S_REDUCED = "rings with S-pure annihilators are S-reduced"
    STRUCTURE_FORWARD = "an S-reduced ring embeds S-subdirectly into its S-minimal S-prime quotients"
    STRUCTURE_CONVERSE = "such a subdirect decomposition forces S-reducedness back"
    NIL_IS_INTERSECTION = "with S avoiding zero divisors, the nilradical is the intersection of primes missing S"
    NIL_NILPOTENT = "with S avoiding zero divisors, the nilradical is a nilpotent ideal"


HOLDS = "holds"
HYP_NOT_MET = "hypothesis-not-met"
VIOLATED = "VIOLATED"


@dataclass(frozen=True)
class CorpusConfig:
    seed: int = 42
    count: int = 30
    max_size: int = 64
    depth: int = 2
    filters: tuple[str, ...] = ()


@dataclass(frozen=True)
class VerifyConfig:
    seed: int = 42
    budget: int = 100_000
    exhaustive_degree: int = 2
    sampled_degree: int = 1
    exhaustive_size_limit: int = 12
    e_base_limit: int = 12
    extension_size_cap: int = 4096
    ideal_pair_limit: int = 16
    ideal_cap: int = 4096
    poly_budget: int = 4096


@dataclass
class StatementReport:
    statement: StatementId
    instance_label: str
    instance_index: int
    hypotheses: dict
    verdict: str
    details: dict
    notes: tuple[str, ...]
    runtime: float

    def to_json(self) -> dict:
        # runtime is deliberately excluded: report streams must be
        # byte-identical across runs with the same seed
        return {
            "statement": self.statement.name,
            "instance": self.instance_label,
            "instance_index": self.instance_index,
            "hypotheses": self.hypotheses,
            "verdict": self.verdict,
            "details": self.details,
            "notes": list(self.notes),
        }


@dataclass
class CorpusInstance:
    label: str
    origin: str
    ring: FiniteRing
    mult_set: MultiplicativeSet
    index: int = -1

    def to_json(self) -> dict:
        doc = instance_to_json(self.ring, self.mult_set)
        doc["label"] = self.label
        return doc


def derive_seed(master: int, *parts) -> int:
    text = ":".join([str(master), *(str(p) for p in parts)])
    return int.from_bytes(hashlib.blake2b(text.encode(), digest_size=8).digest(), "big")


# ---------------------------------------------------------------------------
# Corpus

_CURATED: tuple[tuple[str, object, tuple], ...] = (
    ("z24-pow2", ZMod(24), (2,)),
    ("z12-s4", ZMod(12), (4,)),
    ("z4-s3", ZMod(4), (3,)),
    ("z6-s2", ZMod(6), (2,)),
    ("z6-unit", ZMod(6), (1,)),
    ("z5-unit", ZMod(5), (1,)),
    ("z7-unit", ZMod(7), (1,)),
    ("z8-s3", ZMod(8), (3,)),
    ("z30-unit", ZMod(30), (1,)),
    ("z12-pow2", ZMod(12), (2,)),
    ("z2xz2-diag", Product((ZMod(2), ZMod(2))), ((1, 1),)),
    ("z2xz2-proj", Product((ZMod(2), ZMod(2))), ((1, 1), (1, 0))),
    ("z24-mod3", Quotient(ZMod(24), (3,)), (1,)),
    ("z2-dual", Idealization(ZMod(2), ModuleSpec(((0,),))), ((1, (0,)),)),
    ("z4-halfdual", Idealization(ZMod(4), ModuleSpec(((2,),))), ((3, (0,)),)),
)


def curated_instances(*, max_size: int = 64) -> list[CorpusInstance]:
    out = []
    for label, expr, gens in _CURATED:
        ring = build_ring(expr, size_cap=max(max_size, 64))
        S = mult_closure(ring, tuple(ring.encode(g) for g in gens))
        out.append(CorpusInstance(label, "curated", ring, S))
    return out


_SQUARE_BLOCKS = (4, 8, 9, 16, 25, 27)


def _random_expression(rng: random.Random, max_size: int, depth: int):
    roll = rng.random()
    if depth <= 1 or roll < 0.45:
        # bias toward moduli with square factors: squarefree carriers make
        # every S-predicate collapse to the classical one
        if rng.random() < 0.6:
            q = _SQUARE_BLOCKS[rng.randrange(len(_SQUARE_BLOCKS))]
            m = rng.randint(1, max(1, max_size // q))
            return ZMod(min(q * m, max_size))
        return ZMod(rng.randint(2, max_size))
    if roll < 0.70:
        n1 = rng.randint(2, 8)
        n2 = rng.randint(2, max(2, max_size // n1))
        return Product((ZMod(n1), ZMod(n2)))
    if roll < 0.85:
        n = rng.randint(4, max_size)
        g = rng.randint(2, n - 1)
        return Quotient(ZMod(n), (g,))
    n = rng.randint(2, 8)
    d = rng.randrange(n)
    return Idealization(ZMod(n), ModuleSpec(((d,),)))


_FILTERS = {
    "s-reduced": lambda r, s: is_s_reduced(r, s).verdict,
    "u-s-reduced": lambda r, s: is_s_reduced(r, s).uniform_witness is not None,
    "reduced": lambda r, s: is_reduced(r),
}


def _passes_filters(ring, S, filters) -> bool:
    return all(_FILTERS[name](ring, S) for name in filters)


def generate_corpus(config: CorpusConfig) -> list[CorpusInstance]:
    """Curated worked examples first, then seeded random constructions.

    The same config always yields the same instance list, byte for byte.
    """
    for name in config.filters:
        if name not in _FILTERS:
            raise SRingError(f"unknown corpus filter {name!r}")
    out = [inst for inst in curated_instances(max_size=config.max_size)
           if _passes_filters(inst.ring, inst.mult_set, config.filters)]
    rng = random.Random(config.seed)
    made = 0
    attempts = 0
    max_attempts = 200 * max(config.count, 1) + 200
    while made < config.count:
        attempts += 1
        if attempts > max_attempts:
            raise SRingError("corpus generation exhausted its attempt budget")
        expr = _random_expression(rng, config.max_size, config.depth)
        try:
            ring = build_ring(expr, size_cap=config.max_size)
        except (MalformedExpressionError, SizeCapExceededError):
            continue
        gens = tuple(rng.randint(1, ring.size - 1)
                     for _ in range(rng.choice((1, 1, 2))))
        try:
            S = mult_closure(ring, gens)
        except ZeroInClosureError:
            continue
        if len(S.members) > 12:
            # huge unit groups slow every scan without adding coverage;
            # the interesting sets in this theory are small powers
            continue
        if not _passes_filters(ring, S, config.filters):
            continue
        out.append(CorpusInstance(f"seeded-{made:02d}", "seeded", ring, S))
        made += 1
    for i, inst in enumerate(out):
        inst.index = i
    return out


# ---------------------------------------------------------------------------
# Per-instance context with memoized building blocks


class InstanceContext:
    def __init__(self, instance: CorpusInstance, cfg: VerifyConfig):
        self.instance = instance
        self.cfg = cfg
        self.ring = instance.ring
        self.S = instance.mult_set
        self._cache: dict = {}

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def ideals(self) -> list[Ideal]:
        return self._memo("ideals",
                          lambda: enumerate_ideals(self.ring, cap=self.cfg.ideal_cap))

    @property
    def proper_ideals(self) -> list[Ideal]:
        return [I for I in self.ideals if I.is_proper]

    @property
    def spectrum(self):
        return self._memo("spectrum",
                          lambda: s_spectrum(self.ring, self.S, cap=self.cfg.ideal_cap))

    @property
    def s_minimal(self):
        return self._memo("s_minimal",
                          lambda: s_minimal_s_primes(self.ring, self.S,
                                                     spectrum=self.spectrum))

    @property
    def nilpotents(self) -> dict[int, int]:
        return self._memo("nilpotents", lambda: nilpotent_profile(self.ring))

    @property
    def s_reduced(self):
        return self._memo("s_reduced", lambda: is_s_reduced(self.ring, self.S))

    @property
    def u_s_witness(self):
        return self.s_reduced.uniform_witness

    @property
    def reduced(self) -> bool:
        return len(self.nilpotents) == 1

    @property
    def zero_divisors(self) -> frozenset[int]:
        return self._memo("zdiv", lambda: zero_divisor_set(self.ring))

    @property
    def localization(self):
        return self._memo("localization", lambda: localize(self.ring, self.S))

    @property
    def nil_s(self):
        return self._memo("nil_s", lambda: s_nilradical(self.ring, self.S))

    def quotient(self, I: Ideal) -> QuotientRing:
        key = ("quotient", I.mask)
        return self._memo(key, lambda: QuotientRing(self.ring, I.mask,
                                                    gens_idx=tuple(I.gens)))

    def projected_set(self, q: QuotientRing) -> MultiplicativeSet | None:
        """Image of S in the quotient; None when it degenerates to contain 0."""
        gens = tuple(sorted({q.project(g) for g in self.S.gens})) or (q.one,)
        try:
            return mult_closure(q, gens)
        except ZeroInClosureError:
            return None

    def lit(self, x: int):
        return thaw_literal(self.ring.decode(x))

    def lits(self, xs) -> list:
        return [self.lit(x) for x in xs]


def _degenerate_guard(ctx: InstanceContext):
    if ctx.S.contains_zero:
        return ({"nondegenerate_mult_set": False}, HYP_NOT_MET,
                {"reason": "0 lies in the multiplicative set"},
                ("degenerate: 0 in S",))
    return None


# ---------------------------------------------------------------------------
# Statement checkers.  Each returns (hypotheses, verdict, details, notes).


def _armendariz_plan(size: int, cfg: VerifyConfig) -> tuple[int, str]:
    if size <= cfg.exhaustive_size_limit:
        return cfg.exhaustive_degree, "exhaustive"
    return cfg.sampled_degree, "sampled"


def _radical_quotient_records(ctx: InstanceContext) -> list[dict]:
    """Per proper ideal: hypothesis status plus both sides of the equivalence."""
    out = []
    for I in ctx.proper_ideals:
        q = ctx.quotient(I)
        sbar = ctx.projected_set(q)
        if sbar is None:
            out.append({"ideal": ctx.lits(I.elements), "hyp_ok": False,
                        "reason": "projected set contains 0", "lhs": None, "rhs": None})
            continue
        zdiv_q = zero_divisor_set(q)
        hyp_ok = not (zdiv_q & set(sbar.members))
        lhs = s_radical(ctx.ring, ctx.S, I).is_s_radical
        rhs = is_s_reduced(q, sbar).verdict
        out.append({"ideal": ctx.lits(I.elements), "hyp_ok": hyp_ok,
                    "lhs": lhs, "rhs": rhs})
    return out


def _check_s_radical_quotient(ctx: InstanceContext):
    records = _radical_quotient_records(ctx)
    checked = [r for r in records if r["hyp_ok"]]
    violations = [r for r in checked if r["lhs"] != r["rhs"]]
    hyp = {"nondegenerate_mult_set": True,
           "some_ideal_with_quotient_zero_divisors_avoiding_S": bool(checked)}
    details = {"ideals_checked": len(checked),
               "ideals_skipped": len(records) - len(checked),
               "violations": violations}
    if violations:
        return hyp, VIOLATED, details, ()
    if not checked:
        return hyp, HYP_NOT_MET, details, ()
    return hyp, HOLDS, details, ()


def _check_intersection_vs_product(ctx: InstanceContext):
    hyp = {"s_reduced": ctx.s_reduced.verdict,
           f"ideal_count<={ctx.cfg.ideal_pair_limit}":
               len(ctx.ideals) <= ctx.cfg.ideal_pair_limit}
    if not all(hyp.values()):
        return hyp, HYP_NOT_MET, {"ideal_count": len(ctx.ideals)}, ()
    violations = []
    pairs = 0
    ideals = ctx.ideals
    for i, I in enumerate(ideals):
        for J in ideals[i:]:
            pairs += 1
            inter_ok = is_s_zero_ideal(ctx.S, ideal_intersection(I, J)).verdict
            prod_ok = is_s_zero_ideal(ctx.S, ideal_product(I, J)).verdict
            if inter_ok != prod_ok:
                violations.append({"I": ctx.lits(I.elements), "J": ctx.lits(J.elements),
                                   "intersection_s_zero": inter_ok,
                                   "product_s_zero": prod_ok})
    details = {"pairs_checked": pairs, "violations": violations}
    return hyp, VIOLATED if violations else HOLDS, details, ()


def _check_spectrum_s_zero(ctx: InstanceContext):
    hyp = {"s_reduced": ctx.s_reduced.verdict,
           "zero_not_in_S": not ctx.S.contains_zero}
    if not all(hyp.values()):
        return hyp, HYP_NOT_MET, {}, ()
    inter = spectrum_intersection(ctx.ring, ctx.S, spectrum=ctx.spectrum)
    witnesses = {}
    missing = []
    for x in inter.elements:
        s = is_s_zero_element(ctx.ring, ctx.S, x)
        if s is None:
            missing.append(ctx.lit(x))
        else:
            witnesses[str(ctx.lit(x))] = ctx.lit(s)
    details = {"spectrum_size": len(ctx.spectrum),
               "intersection": ctx.lits(inter.elements),
               "witnesses": witnesses, "unwitnessed": missing}
    return hyp, VIOLATED if missing else HOLDS, details, ()


def _check_nils_in_colon(ctx: InstanceContext):
    hyp = {"nondegenerate_mult_set": not ctx.S.contains_zero,
           "spectrum_nonempty": bool(ctx.spectrum)}
    if not all(hyp.values()):
        return hyp, HYP_NOT_MET, {}, ()
    nil_mask = ctx.nil_s.ideal.mask
    entries = []
    violations = []
    for P, _ in ctx.spectrum:
        s_p, colon = dominant_colon_witness(ctx.S, P)
        entry = {"prime": ctx.lits(P.elements), "s_P": ctx.lit(s_p)}
        if not is_prime_ideal(colon):
            violations.append({**entry, "reason": "dominant colon ideal not prime",
                               "colon": ctx.lits(colon.elements)})
        elif nil_mask & ~colon.mask:
            extra = [ctx.lit(x) for x in mask_elements(nil_mask & ~colon.mask)]
            violations.append({**entry, "reason": "S-nilradical escapes colon ideal",
                               "escaping": extra})
        entries.append(entry)
    details = {"primes": entries, "violations": violations,
               "nil_s": ctx.lits(ctx.nil_s.ideal.elements)}
    return hyp, VIOLATED if violations else HOLDS, details, ()


def _check_nils_s_zero(ctx: InstanceContext):
    hyp = {"s_reduced": ctx.s_reduced.verdict}
    if not hyp["s_reduced"]:
        return hyp, HYP_NOT_MET, {}, ()
    missing = [ctx.lit(a) for a in ctx.nil_s.ideal.elements
               if is_s_zero_element(ctx.ring, ctx.S, a) is None]
    details = {"nil_s": ctx.lits(ctx.nil_s.ideal.elements), "unwitnessed": missing}
    return hyp, VIOLATED if missing else HOLDS, details, ()


def _check_localization_reduced(ctx: InstanceContext):
    hyp = {"s_reduced": ctx.s_reduced.verdict}
    if not hyp["s_reduced"]:
        return hyp, HYP_NOT_MET, {}, ()
    loc = ctx.localization
    ok = is_reduced(loc.ring)
    details = {"kernel": ctx.lits(loc.torsion_kernel.elements),
               "localized_size": loc.ring.size, "localized_reduced": ok}
    return hyp, HOLDS if ok else VIOLATED, details, ()


def _check_localization_artinian(ctx: InstanceContext):
    loc = ctx.localization
    zd_or_unit = all(
        loc.ring.is_unit(x) or any(loc.ring.mul(x, y) == loc.ring.zero
                                   for y in range(1, loc.ring.size))
        for x in range(1, loc.ring.size))
    hyp = {"s_noetherian": True,  # every finite ring is
           "s_reduced": ctx.s_reduced.verdict,
           "localized_elements_zero_divisor_or_unit": zd_or_unit}
    notes = ("degenerate hypotheses: every finite ring is S-Noetherian and Artinian",)
    if not all(hyp.values()):
        return hyp, HYP_NOT_MET, {}, notes
    loc_ideals = enumerate_ideals(loc.ring, cap=ctx.cfg.ideal_cap)
    primes = [I for I in loc_ideals if is_prime_ideal(I)]
    non_maximal = [I for I in primes if not is_maximal_ideal(I, loc_ideals)]
    details = {"localized_size": loc.ring.size,
               "prime_count": len(primes),
               "all_primes_maximal": not non_maximal}
    return hyp, VIOLATED if non_maximal else HOLDS, details, notes


def _check_product_of_fields(ctx: InstanceContext):
    ring, S = ctx.ring, ctx.S
    hyp = {"reduced": ctx.reduced,
           "S_avoids_zero_divisors": not (set(S.members) & ctx.zero_divisors),
           "s_artinian": True}
    notes = ("degenerate hypothesis: every finite ring is S-Artinian "
             "(stationarity read as s*I_k inside I_n for n >= k)",)
    if not all(hyp.values()):
        return hyp, HYP_NOT_MET, {}, notes
    primes = [I for I in ctx.ideals
              if is_prime_ideal(I) and not (I.mask & S.mask)]
    failures = []
    inter = (1 << ring.size) - 1
    for P in primes:
        inter &= P.mask
        if not is_maximal_ideal(P, ctx.ideals):
            failures.append({"reason": "prime not maximal",
                             "prime": ctx.lits(P.elements)})
    if inter != 1:
        failures.append({"reason": "intersection of the primes is not zero",
                         "intersection": [ctx.lit(x) for x in mask_elements(inter)]})
    for i, P in enumerate(primes):
        for Q in primes[i + 1:]:
            if ideal_sum(P, Q).size != ring.size:
                failures.append({"reason": "primes not comaximal",
                                 "P": ctx.lits(P.elements), "Q": ctx.lits(Q.elements)})
    quotients = [ctx.quotient(P) for P in primes]
    if failures:
        return hyp, VIOLATED, {"failures": failures}, notes
    product = ProductRing(tuple(quotients))
    def phi(r: int) -> int:
        return product._join(q.project(r) for q in quotients)
    images = {phi(r) for r in range(ring.size)}
    if len(images) != ring.size or product.size != ring.size:
        failures.append({"reason": "map not bijective",
                         "image_size": len(images), "product_size": product.size})
    else:
        for a in range(ring.size):
            fa = phi(a)
            for b in range(ring.size):
                if phi(ring.add(a, b)) != product.add(fa, phi(b)) or \
                   phi(ring.mul(a, b)) != product.mul(fa, phi(b)):
                    failures.append({"reason": "map not a homomorphism",
                                     "a": ctx.lit(a), "b": ctx.lit(b)})
                    break
            if failures:
                break
    for q in quotients:
        if not all(q.is_unit(x) for x in range(1, q.size)):
            failures.append({"reason": "quotient is not a field", "size": q.size})
    details = {"field_sizes": sorted(q.size for q in quotients),
               "products_verified": ring.size * ring.size,
               "failures": failures}
    return hyp, VIOLATED if failures else HOLDS, details, notes


def _check_poly_transfer(ctx: InstanceContext):
    ring, S = ctx.ring, ctx.S
    nilp = sorted(ctx.nilpotents)
    degree = 2
    while degree > 0 and len(nilp) ** (degree + 1) > ctx.cfg.poly_budget:
        degree -= 1
    total = len(nilp) ** (degree + 1)
    if total <= ctx.cfg.poly_budget:
        vectors = itertools.product(nilp, repeat=degree + 1)
        mode = "exhaustive"
        count = total
    else:
        rng = random.Random(derive_seed(ctx.cfg.seed, "poly-transfer",
                                        ctx.instance.label))
        count = ctx.cfg.poly_budget
        vectors = (tuple(nilp[int(rng.random() * len(nilp))]
                         for _ in range(degree + 1)) for _ in range(count))
        mode = "sampled"
    poly_ok = True
    violating = None
    for vec in vectors:
        s = next((s for s in S.members
                  if all(ring.mul(s, c) == ring.zero for c in vec)), None)
        if s is None:
            poly_ok = False
            violating = [ctx.lit(c) for c in vec]
            break
    ring_ok = ctx.s_reduced.verdict
    details = {"degree": degree, "mode": mode, "polynomials_checked": count,
               "ring_s_reduced": ring_ok, "nilpotent_poly_side": poly_ok,
               "violating_coefficients": violating}
    hyp = {"nondegenerate_mult_set": not S.contains_zero}
    if not hyp["nondegenerate_mult_set"]:
        return hyp, HYP_NOT_MET, details, ()
    return hyp, HOLDS if ring_ok == poly_ok else VIOLATED, details, ()


def _armendariz_verdict_details(ctx: InstanceContext, ring: FiniteRing, verdict) -> dict:
    return verdict.to_json(ring)


def _check_u_s_red_implies_arm(ctx: InstanceContext):
    hyp = {"u_s_reduced": ctx.u_s_witness is not None}
    if not hyp["u_s_reduced"]:
        return hyp, HYP_NOT_MET, {}, ()
    degree, mode = _armendariz_plan(ctx.ring.size, ctx.cfg)
    verdict = is_u_s_armendariz_up_to(
        ctx.ring, ctx.S, degree, mode=mode,
        seed=derive_seed(ctx.cfg.seed, "usred-arm", ctx.instance.label),
        budget=ctx.cfg.budget)
    details = _armendariz_verdict_details(ctx, ctx.ring, verdict)
    return hyp, HOLDS if verdict.uniform_ok else VIOLATED, details, ()


def _constant_quadruple_set(ring: FiniteRing, e_ring: TriangularERing,
                            S: MultiplicativeSet) -> MultiplicativeSet:
    gens = tuple(e_ring._join(s, s, s, s) for s in S.members)
    return mult_closure(e_ring, gens)


def _check_e_ring_armendariz(ctx: InstanceContext):
    hyp = {"s_reduced": ctx.s_reduced.verdict,
           f"base_size<={ctx.cfg.e_base_limit}": ctx.ring.size <= ctx.cfg.e_base_limit}
    if not all(hyp.values()):
        return hyp, HYP_NOT_MET, {"base_size": ctx.ring.size}, ()
    e_ring = TriangularERing(ctx.ring)
    S_prime = _constant_quadruple_set(ctx.ring, e_ring, ctx.S)
    degree, mode = _armendariz_plan(e_ring.size, ctx.cfg)
    verdict = is_u_s_armendariz_up_to(
        e_ring, S_prime, degree, mode=mode,
        seed=derive_seed(ctx.cfg.seed, "e-ring", ctx.instance.label),
        budget=ctx.cfg.budget)
    details = {"carrier_size": e_ring.size,
               "mult_set_size": len(S_prime.members),
               **_armendariz_verdict_details(ctx, e_ring, verdict)}
    return hyp, HOLDS if verdict.uniform_ok else VIOLATED, details, ()


def _square_pair_set(ring: FiniteRing, rr: IdealizationRing,
                     S: MultiplicativeSet) -> MultiplicativeSet:
    gens = tuple(rr._join(ring.mul(s, s), (s,)) for s in S.members)
    return mult_closure(rr, gens)


def _check_idealization_armendariz(ctx: InstanceContext):
    size_sq = ctx.ring.size ** 2
    hyp = {"u_s_reduced": ctx.u_s_witness is not None,
           f"extension_size<={ctx.cfg.extension_size_cap}":
               size_sq <= ctx.cfg.extension_size_cap}
    if not all(hyp.values()):
        return hyp, HYP_NOT_MET, {"extension_size": size_sq}, ()
    rr = IdealizationRing(ctx.ring, (QuotientRing(ctx.ring, 1),))
    S2 = _square_pair_set(ctx.ring, rr, ctx.S)
    degree, mode = _armendariz_plan(rr.size, ctx.cfg)
    verdict = is_u_s_armendariz_up_to(
        rr, S2, degree, mode=mode,
        seed=derive_seed(ctx.cfg.seed, "idealization", ctx.instance.label),
        budget=ctx.cfg.budget)
    details = {"carrier_size": rr.size,
               "mult_set_size": len(S2.members),
               **_armendariz_verdict_details(ctx, rr, verdict)}
    return hyp, HOLDS if verdict.uniform_ok else VIOLATED, details, ()


def _check_s_reduced_implies_hopfian(ctx: InstanceContext):
    hyp = {"s_reduced": ctx.s_reduced.verdict}
    if not hyp["s_reduced"]:
        return hyp, HYP_NOT_MET, {}, ()
    ring, S = ctx.ring, ctx.S
    violations = []
    max_k = 0
    for a in range(ring.size):
        anns = []
        p = a
        seen = set()
        while True:
            anns.append(annihilator_mask(ring, p))
            if p in seen or p == ring.zero:
                break
            seen.add(p)
            p = ring.mul(p, a)
        for n in range(len(anns) - 1):
            upper, lower = anns[n + 1], anns[n]
            s = next(
                (s for s in S.members
                 if all((lower >> ring.mul(s, y)) & 1
                        for y in mask_elements(upper))),
                None)
            if s is None:
                violations.append({"a": ctx.lit(a), "n": n + 1})
                break
            # independent containment re-check, element by element
            for y in mask_elements(upper):
                if not (lower >> ring.mul(s, y)) & 1:
                    violations.append({"a": ctx.lit(a), "n": n + 1,
                                       "s": ctx.lit(s), "y": ctx.lit(y)})
                    break
        max_k = max(max_k, len(anns))
    details = {"elements_profiled": ring.size, "longest_chain": max_k,
               "violations": violations}
    return hyp, VIOLATED if violations else HOLDS, details, ()


def _check_s_pf_implies_s_reduced(ctx: InstanceContext):
    pf = is_s_pf(ctx.ring, ctx.S)
    hyp = {"s_pf": pf.verdict}
    if not pf.verdict:
        return hyp, HYP_NOT_MET, {"failing_annihilator_of": ctx.lit(pf.failing)}, ()
    ok = ctx.s_reduced.verdict
    details = {"s_reduced": ok,
               "failing": None if ok else ctx.lit(ctx.s_reduced.failing)}
    return hyp, HOLDS if ok else VIOLATED, details, ()


def _structure_data(ctx: InstanceContext):
    """Kernel of the subdirect map plus per-quotient integral-domain witnesses."""
    ring, S = ctx.ring, ctx.S
    minimal = ctx.s_minimal
    if not minimal:
        return None
    kernel = (1 << ring.size) - 1
    for P in minimal:
        kernel &= P.mask
    quotient_info = []
    for P in minimal:
        q = ctx.quotient(P)
        sbar = ctx.projected_set(q)
        witness = None if sbar is None else is_s_integral_domain(q, sbar)
        surjective = len({q.project(r) for r in range(ring.size)}) == q.size
        quotient_info.append({"prime": P, "quotient": q, "sbar": sbar,
                              "domain_witness": witness, "surjective": surjective})
    torsion_witnesses = {
        x: is_s_zero_element(ring, S, x) for x in mask_elements(kernel)}
    return {"minimal": minimal, "kernel": kernel,
            "quotients": quotient_info, "torsion": torsion_witnesses}


def _check_structure_forward(ctx: InstanceContext):
    hyp = {"s_reduced": ctx.s_reduced.verdict}
    if not hyp["s_reduced"]:
        return hyp, HYP_NOT_MET, {}, ()
    data = _structure_data(ctx)
    if data is None:
        return {**hyp, "s_minimal_primes_exist": False}, HYP_NOT_MET, {}, ()
    violations = []
    for x, s in data["torsion"].items():
        if s is None:
            violations.append({"reason": "kernel element not S-torsion",
                               "element": ctx.lit(x)})
    for info in data["quotients"]:
        if not info["surjective"]:
            violations.append({"reason": "projection not surjective",
                               "prime": ctx.lits(info["prime"].elements)})
        if info["sbar"] is None or info["domain_witness"] is None:
            violations.append({"reason": "quotient not an S-integral domain",
                               "prime": ctx.lits(info["prime"].elements)})
    details = {
        "minimal_prime_count": len(data["minimal"]),
        "kernel": [ctx.lit(x) for x in mask_elements(data["kernel"])],
        "quotient_sizes": [info["quotient"].size for info in data["quotients"]],
        "violations": violations,
    }
    return hyp, VIOLATED if violations else HOLDS, details, ()


def _check_structure_converse(ctx: InstanceContext):
    data = _structure_data(ctx)
    hyp = {"s_minimal_primes_exist": data is not None}
    if data is not None:
        hyp["kernel_is_s_torsion"] = all(
            s is not None for s in data["torsion"].values())
        hyp["quotients_are_s_integral_domains"] = all(
            info["sbar"] is not None and info["domain_witness"] is not None
            for info in data["quotients"])
    if not all(hyp.values()):
        return hyp, HYP_NOT_MET, {}, ()
    ring, S = ctx.ring, ctx.S
    kernel = data["kernel"]
    violations = []
    derived = {}
    for a in sorted(ctx.nilpotents):
        s_star = next((s for s in S.members if (kernel >> ring.mul(s, a)) & 1), None)
        if s_star is None:
            violations.append({"reason": "no member maps the nilpotent into the kernel",
                               "a": ctx.lit(a)})
            continue
        sa = ring.mul(s_star, a)
        u = next((u for u in S.members if ring.mul(u, sa) == ring.zero), None)
        if u is None:
            violations.append({"reason": "kernel element escaped S-torsion",
                               "a": ctx.lit(a)})
            continue
        combined = ring.mul(u, s_star)
        if combined not in S or ring.mul(combined, a) != ring.zero:
            violations.append({"reason": "combined witness failed re-check",
                               "a": ctx.lit(a)})
            continue
        derived[str(ctx.lit(a))] = ctx.lit(combined)
    details = {"rederived_witnesses": derived, "violations": violations,
               "s_reduced_confirmed": not violations}
    return hyp, VIOLATED if violations else HOLDS, details, ()


def _check_nil_is_intersection(ctx: InstanceContext):
    ring, S = ctx.ring, ctx.S
    hyp = {"S_avoids_zero_divisors": not (set(S.members) & ctx.zero_divisors),
           "zero_not_in_S": not S.contains_zero}
    if not all(hyp.values()):
        return hyp, HYP_NOT_MET, {}, ()
    nil_mask = 0
    for a in ctx.nilpotents:
        nil_mask |= 1 << a
    primes = [I for I in ctx.ideals
              if is_prime_ideal(I) and not (I.mask & S.mask)]
    inter = (1 << ring.size) - 1
    for P in primes:
        inter &= P.mask
    ok = inter == nil_mask
    details = {"nilradical": [ctx.lit(x) for x in mask_elements(nil_mask)],
               "primes_disjoint_from_S": len(primes),
               "intersection": [ctx.lit(x) for x in mask_elements(inter)]}
    return hyp, HOLDS if ok else VIOLATED, details, ()


def _check_nil_nilpotent(ctx: InstanceContext):
    ring, S = ctx.ring, ctx.S
    hyp = {"S_avoids_zero_divisors": not (set(S.members) & ctx.zero_divisors),
           "s_artinian": True}
    notes = ("degenerate hypothesis: every finite ring is S-Artinian "
             "(stationarity read as s*I_k inside I_n for n >= k)",)
    if not all(hyp.values()):
        return hyp, HYP_NOT_MET, {}, notes
    nil_mask = 0
    for a in ctx.nilpotents:
        nil_mask |= 1 << a
    if not is_ideal_mask(ring, nil_mask):
        return hyp, VIOLATED, {"reason": "nilradical is not an ideal"}, notes
    N = ideal_from_mask(ring, nil_mask)
    power = N
    k = 1
    seen = {power.mask}
    while power.mask != 1:
        power = ideal_product(power, N)
        k += 1
        if power.mask in seen:
            return hyp, VIOLATED, {
                "reason": "power chain of the nilradical stabilized above zero",
                "stuck_at": [ctx.lit(x) for x in power.elements]}, notes
        seen.add(power.mask)
    details = {"nilradical": [ctx.lit(x) for x in mask_elements(nil_mask)],
               "nilpotency_index": k}
    return hyp, HOLDS, details, notes


_CHECKERS = {
    StatementId.S_RADICAL_QUOTIENT: _check_s_radical_quotient,
    StatementId.INTERSECTION_VS_PRODUCT: _check_intersection_vs_product,
    StatementId.SPECTRUM_S_ZERO: _check_spectrum_s_zero,
    StatementId.NILS_IN_COLON: _check_nils_in_colon,
    StatementId.NILS_S_ZERO: _check_nils_s_zero,
    StatementId.LOCALIZATION_REDUCED: _check_localization_reduced,
    StatementId.LOCALIZATION_ARTINIAN: _check_localization_artinian,
    StatementId.PRODUCT_OF_FIELDS: _check_product_of_fields,
    StatementId.POLY_TRANSFER: _check_poly_transfer,
    StatementId.U_S_RED_IMPLIES_U_S_ARM: _check_u_s_red_implies_arm,
    StatementId.E_RING_ARMENDARIZ: _check_e_ring_armendariz,
    StatementId.IDEALIZATION_ARMENDARIZ: _check_idealization_armendariz,
    StatementId.S_REDUCED_IMPLIES_HOPFIAN: _check_s_reduced_implies_hopfian,
    StatementId.S_PF_IMPLIES_S_REDUCED: _check_s_pf_implies_s_reduced,
    StatementId.STRUCTURE_FORWARD: _check_structure_forward,
    StatementId.STRUCTURE_CONVERSE: _check_structure_converse,
    StatementId.NIL_IS_INTERSECTION: _check_nil_is_intersection,
    StatementId.NIL_NILPOTENT: _check_nil_nilpotent,
}


def check_statement(statement: StatementId, instance: CorpusInstance,
                    cfg: VerifyConfig | None = None,
                    ctx: InstanceContext | None = None) -> StatementReport:
    cfg = cfg or VerifyConfig()
    if ctx is None:
        ctx = InstanceContext(instance, cfg)
    start = time.perf_counter()
    guard = _degenerate_guard(ctx)
    if guard is not None:
        hyp, verdict, details, notes = guard
    else:
        hyp, verdict, details, notes = _CHECKERS[statement](ctx)
    runtime = time.perf_counter() - start
    return StatementReport(statement, instance.label, instance.index,
                           hyp, verdict, details, tuple(notes), runtime)


# ---------------------------------------------------------------------------
# Catalog runner (optionally fanned out across processes)

_STATEMENT_ORDER = {stmt: i for i, stmt in enumerate(StatementId)}

_WORKER_STATE: dict = {}


def _worker_init(instance_docs, cfg):
    _WORKER_STATE["docs"] = instance_docs
    _WORKER_STATE["cfg"] = cfg
    _WORKER_STATE["ctx"] = {}


def _worker_run(index: int):
    docs = _WORKER_STATE["docs"]
    cfg = _WORKER_STATE["cfg"]
    doc = docs[index]
    ring, S = parse_ring_data({k: doc[k] for k in ("ring", "mult_set")})
    instance = CorpusInstance(doc["label"], "worker", ring, S, index)
    ctx = InstanceContext(instance, cfg)
    out = []
    for stmt in StatementId:
        report = check_statement(stmt, instance, cfg, ctx)
        out.append(report)
    return index, out


def default_workers() -> int:
    env = os.environ.get("SRING_THREADS", "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return max(1, os.cpu_count() or 1)


def run_catalog(instances: list[CorpusInstance], cfg: VerifyConfig | None = None,
                statements: list[StatementId] | None = None,
                workers: int | None = None) -> list[StatementReport]:
    """Check every statement against every instance.

    With more than one worker the instances are distributed over processes;
    the merged report list is sorted into (statement, instance) order either
    way, so worker scheduling never shows in the output.
    """
    cfg = cfg or VerifyConfig()
    statements = statements or list(StatementId)
    workers = workers if workers is not None else default_workers()
    reports: list[StatementReport] = []
    if workers > 1 and len(instances) > 1 and set(statements) == set(StatementId):
        import concurrent.futures as cf
        docs = [inst.to_json() for inst in instances]
        with cf.ProcessPoolExecutor(
                max_workers=min(workers, len(instances)),
                initializer=_worker_init, initargs=(docs, cfg)) as pool:
            for _, batch in pool.map(_worker_run, range(len(instances))):
                reports.extend(batch)
    else:
        for inst in instances:
            ctx = InstanceContext(inst, cfg)
            for stmt in statements:
                reports.append(check_statement(stmt, inst, cfg, ctx))
    reports.sort(key=lambda r: (_STATEMENT_ORDER[r.statement], r.instance_index))
    return reports


def summarize(reports: list[StatementReport]) -> str:
    """Plain text table: statement x verdict counts plus accumulated time."""
    rows = {}
    for r in reports:
        row = rows.setdefault(r.statement,
                              {"holds": 0, "hyp": 0, "violated": 0, "time": 0.0})
        if r.verdict == HOLDS:
            row["holds"] += 1
        elif r.verdict == HYP_NOT_MET:
            row["hyp"] += 1
        else:
            row["violated"] += 1
        row["time"] += r.runtime
    width = max(len(s.name) for s in StatementId)
    lines = [f"{'statement':<{width}}  holds  hyp-not-met  violated  time(s)"]
    for stmt in StatementId:
        if stmt not in rows:
            continue
        row = rows[stmt]
        lines.append(f"{stmt.name:<{width}}  {row['holds']:>5}  "
                     f"{row['hyp']:>11}  {row['violated']:>8}  {row['time']:>7.2f}")
    total_violated = sum(row["violated"] for row in rows.values())
    total_time = sum(row["time"] for row in rows.values())
    lines.append(f"{'TOTAL':<{width}}  {sum(r['holds'] for r in rows.values()):>5}  "
                 f"{sum(r['hyp'] for r in rows.values()):>11}  "
                 f"{total_violated:>8}  {total_time:>7.2f}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Counterexample search


@dataclass
class SearchResult:
    statement: StatementId
    variant: str
    found: bool
    supported: bool
    scanned: int
    instance: dict | None = None
    payload: dict | None = None
    shrink_steps: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "statement": self.statement.name,
            "variant": self.variant,
            "supported": self.supported,
            "found": self.found,
            "scanned": self.scanned,
            "instance": self.instance,
            "payload": self.payload,
            "shrink_steps": self.shrink_steps,
        }


def _drop_s_radical_quotient(ctx: InstanceContext):
    for rec in _radical_quotient_records(ctx):
        if not rec["hyp_ok"] and rec["lhs"] is not None and rec["lhs"] != rec["rhs"]:
            return {"ideal": rec["ideal"], "s_radical": rec["lhs"],
                    "quotient_s_reduced": rec["rhs"],
                    "dropped": "quotient zero divisors avoiding S"}
    return None


def _drop_spectrum_s_zero(ctx: InstanceContext):
    if ctx.s_reduced.verdict or ctx.S.contains_zero:
        return None
    if not ctx.spectrum:
        return None
    inter = spectrum_intersection(ctx.ring, ctx.S, spectrum=ctx.spectrum)
    for x in inter.elements:
        if is_s_zero_element(ctx.ring, ctx.S, x) is None:
            return {"dropped": "S-reduced", "element": ctx.lit(x),
                    "intersection": ctx.lits(inter.elements)}
    return None


def _drop_intersection_vs_product(ctx: InstanceContext):
    if ctx.s_reduced.verdict:
        return None
    if len(ctx.ideals) > ctx.cfg.ideal_pair_limit:
        return None
    for i, I in enumerate(ctx.ideals):
        for J in ctx.ideals[i:]:
            a = is_s_zero_ideal(ctx.S, ideal_intersection(I, J)).verdict
            b = is_s_zero_ideal(ctx.S, ideal_product(I, J)).verdict
            if a != b:
                return {"dropped": "S-reduced", "I": ctx.lits(I.elements),
                        "J": ctx.lits(J.elements),
                        "intersection_s_zero": a, "product_s_zero": b}
    return None


def _drop_nils_s_zero(ctx: InstanceContext):
    if ctx.s_reduced.verdict:
        return None
    for a in ctx.nil_s.ideal.elements:
        if is_s_zero_element(ctx.ring, ctx.S, a) is None:
            return {"dropped": "S-reduced", "element": ctx.lit(a)}
    return None


def _drop_localization_reduced(ctx: InstanceContext):
    if ctx.s_reduced.verdict:
        return None
    loc = ctx.localization
    if not is_reduced(loc.ring):
        nil = [x for x, n in nilpotent_profile(loc.ring).items() if x != 0]
        return {"dropped": "S-reduced", "localized_size": loc.ring.size,
                "localized_nilpotents": len(nil)}
    return None


def _drop_product_of_fields(ctx: InstanceContext):
    hyp_ok = ctx.reduced and not (set(ctx.S.members) & ctx.zero_divisors)
    if hyp_ok:
        return None
    primes = [I for I in ctx.ideals
              if is_prime_ideal(I) and not (I.mask & ctx.S.mask)]
    inter = (1 << ctx.ring.size) - 1
    for P in primes:
        inter &= P.mask
    if inter != 1 or sum(1 for _ in primes) == 0:
        return {"dropped": "reduced / S avoids zero divisors",
                "primes_disjoint": len(primes),
                "intersection": [ctx.lit(x) for x in mask_elements(inter)]}
    return None


def _drop_nil_is_intersection(ctx: InstanceContext):
    if not (set(ctx.S.members) & ctx.zero_divisors):
        return None
    nil_mask = 0
    for a in ctx.nilpotents:
        nil_mask |= 1 << a
    primes = [I for I in ctx.ideals
              if is_prime_ideal(I) and not (I.mask & ctx.S.mask)]
    inter = (1 << ctx.ring.size) - 1
    for P in primes:
        inter &= P.mask
    if inter != nil_mask:
        return {"dropped": "S avoids zero divisors",
                "nilradical": [ctx.lit(x) for x in mask_elements(nil_mask)],
                "intersection": [ctx.lit(x) for x in mask_elements(inter)]}
    return None


_DROP_CHECKS = {
    StatementId.S_RADICAL_QUOTIENT: _drop_s_radical_quotient,
    StatementId.SPECTRUM_S_ZERO: _drop_spectrum_s_zero,
    StatementId.INTERSECTION_VS_PRODUCT: _drop_intersection_vs_product,
    StatementId.NILS_S_ZERO: _drop_nils_s_zero,
    StatementId.LOCALIZATION_REDUCED: _drop_localization_reduced,
    StatementId.PRODUCT_OF_FIELDS: _drop_product_of_fields,
    StatementId.NIL_IS_INTERSECTION: _drop_nil_is_intersection,
}


def _converse_u_s_red(ctx: InstanceContext):
    if ctx.u_s_witness is not None:
        return None
    degree, mode = _armendariz_plan(ctx.ring.size, ctx.cfg)
    verdict = is_u_s_armendariz_up_to(
        ctx.ring, ctx.S, degree, mode=mode,
        seed=derive_seed(ctx.cfg.seed, "converse-arm", ctx.instance.label),
        budget=min(ctx.cfg.budget, 20_000))
    if verdict.uniform_ok:
        return {"direction": "uniform zero-product test passed, not u-S-reduced",
                "degree": degree, "mode": verdict.mode}
    return None


def _converse_s_pf(ctx: InstanceContext):
    if not ctx.s_reduced.verdict:
        return None
    pf = is_s_pf(ctx.ring, ctx.S)
    if not pf.verdict:
        return {"direction": "S-reduced but not S-PF",
                "failing_annihilator_of": ctx.lit(pf.failing)}
    return None


def _converse_localization_reduced(ctx: InstanceContext):
    if ctx.s_reduced.verdict:
        return None
    if is_reduced(ctx.localization.ring):
        return {"direction": "localization reduced, ring not S-reduced",
                "localized_size": ctx.localization.ring.size}
    return None


def _converse_hopfian(ctx: InstanceContext):
    # finite rings are always S-stationary (take s = 1 at the plain
    # stabilization point), so any non-S-reduced instance witnesses
    # the failure of the converse
    if not ctx.s_reduced.verdict:
        return {"direction": "S-stationary chains but not S-reduced",
                "failing": ctx.lit(ctx.s_reduced.failing)}
    return None


_CONVERSE_CHECKS = {
    StatementId.U_S_RED_IMPLIES_U_S_ARM: _converse_u_s_red,
    StatementId.S_PF_IMPLIES_S_REDUCED: _converse_s_pf,
    StatementId.LOCALIZATION_REDUCED: _converse_localization_reduced,
    StatementId.S_REDUCED_IMPLIES_HOPFIAN: _converse_hopfian,
}


def _variant_payload(statement: StatementId, variant: str,
                     instance: CorpusInstance, cfg: VerifyConfig):
    ctx = InstanceContext(instance, cfg)
    if instance.mult_set.contains_zero:
        return None
    if variant == "full":
        report = check_statement(statement, instance, cfg, ctx)
        if report.verdict == VIOLATED:
            return report.to_json()
        return None
    if variant == "drop-hypothesis":
        fn = _DROP_CHECKS.get(statement)
        return fn(ctx) if fn else None
    if variant == "converse":
        fn = _CONVERSE_CHECKS.get(statement)
        return fn(ctx) if fn else None
    raise SRingError(f"unknown search variant {variant!r}")


def _variant_supported(statement: StatementId, variant: str) -> bool:
    if variant == "full":
        return True
    if variant == "drop-hypothesis":
        return statement in _DROP_CHECKS
    if variant == "converse":
        return statement in _CONVERSE_CHECKS
    return False


def _shrink_ring_moves(expr):
    """Smaller construction expressions, most aggressive shrink first."""
    if isinstance(expr, ZMod):
        divisors = [d for d in range(2, expr.n) if expr.n % d == 0]
        for d in sorted(divisors):
            yield ZMod(d), None
    elif isinstance(expr, Product):
        for i in range(len(expr.factors)):
            if len(expr.factors) > 1:
                rest = expr.factors[:i] + expr.factors[i + 1:]
                keep = rest[0] if len(rest) == 1 else Product(rest)
                yield keep, ("drop-factor", i)
    elif isinstance(expr, Idealization):
        yield expr.base, ("take-base", None)
    elif isinstance(expr, TriangularE):
        yield expr.base, ("take-base", None)


def _project_generator_literal(lit, move):
    kind, arg = move
    if kind == "drop-factor":
        if isinstance(lit, tuple) and len(lit) > 1:
            reduced = lit[:arg] + lit[arg + 1:]
            return reduced[0] if len(reduced) == 1 else reduced
        return lit
    if kind == "take-base":
        if isinstance(lit, tuple) and lit:
            return lit[0]
        return lit
    return lit


def _shrink_candidates(instance: CorpusInstance, max_size: int):
    ring, S = instance.ring, instance.mult_set
    gens_lits = [ring.decode(g) for g in S.gens]
    for expr, move in _shrink_ring_moves(ring.expression):
        lits = gens_lits if move is None else [
            _project_generator_literal(lit, move) for lit in gens_lits]
        try:
            new_ring = build_ring(expr, size_cap=max_size)
            new_gens = tuple(new_ring.encode(lit) for lit in lits)
            new_gens = tuple(g for g in new_gens if g != new_ring.zero) or (new_ring.one,)
            new_S = mult_closure(new_ring, new_gens)
        except (MalformedExpressionError, SizeCapExceededError, ZeroInClosureError):
            continue
        yield CorpusInstance(f"{instance.label}~shrunk", "shrunk", new_ring, new_S)
    if len(S.gens) > 1:
        for i in range(len(S.gens)):
            new_gens = S.gens[:i] + S.gens[i + 1:]
            try:
                new_S = mult_closure(ring, new_gens)
            except ZeroInClosureError:
                continue
            yield CorpusInstance(f"{instance.label}~shrunk", "shrunk", ring, new_S)


def counterexample_search(statement: StatementId, variant: str = "full",
                          corpus_config: CorpusConfig | None = None,
                          cfg: VerifyConfig | None = None) -> SearchResult:
    """Scan the corpus for the requested violation pattern, then shrink.

    Shrinking greedily prefers a smaller carrier, then fewer generators,
    and keeps going while the pattern persists.  A hit from the ``full``
    variant is a genuine soundness problem, never an expected outcome.
    """
    corpus_config = corpus_config or CorpusConfig()
    cfg = cfg or VerifyConfig()
    if not _variant_supported(statement, variant):
        return SearchResult(statement, variant, False, False, 0)
    instances = generate_corpus(corpus_config)
    for scanned, inst in enumerate(instances, start=1):
        payload = _variant_payload(statement, variant, inst, cfg)
        if payload is None:
            continue
        steps = []
        current, current_payload = inst, payload
        improved = True
        while improved:
            improved = False
            for cand in _shrink_candidates(current, corpus_config.max_size):
                key_now = (current.ring.size, len(current.mult_set.gens))
                key_cand = (cand.ring.size, len(cand.mult_set.gens))
                if key_cand >= key_now:
                    continue
                cand_payload = _variant_payload(statement, variant, cand, cfg)
                if cand_payload is not None:
                    steps.append({"ring": cand.ring.label,
                                  "size": cand.ring.size,
                                  "generators": len(cand.mult_set.gens)})
                    current, current_payload = cand, cand_payload
                    improved = True
                    break
        return SearchResult(statement, variant, True, True, scanned,
                            instance=current.to_json(), payload=current_payload,
                            shrink_steps=steps)
    return SearchResult(statement, variant, False, True, len(instances))
