"""Predicates for a ring with a designated multiplicative subset.

Every verdict carries explicit witnesses chosen at the least canonical
index, so repeated runs print identical reports.  When the multiplicative
set contains zero every predicate short-circuits to the trivial verdict
with witness 0 and the certificate is watermarked degenerate.

Bounded-degree zero-product searches never claim anything beyond their
degree bound and search mode; both fields travel with the verdict.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .errors import BudgetExceededError, SRingError
from .ideals import Ideal, MultiplicativeSet, ideal_from_mask, is_ideal_mask
from .polynomials import poly
from .rings import FiniteRing, QuotientRing, mask_elements, nilpotent_profile


def _require_commutative(ring: FiniteRing) -> None:
    if not ring.commutative:
        raise SRingError(
            f"{ring.label} is noncommutative; this predicate assumes commutativity")


def annihilator_mask(ring: FiniteRing, a: int) -> int:
    mask = 0
    mul = ring.mul
    for x in range(ring.size):
        if mul(a, x) == ring.zero:
            mask |= 1 << x
    return mask


def annihilator(ring: FiniteRing, a: int) -> Ideal:
    return ideal_from_mask(ring, annihilator_mask(ring, a))


def is_reduced(ring: FiniteRing) -> bool:
    """Classical test: no nonzero nilpotent."""
    return len(nilpotent_profile(ring)) == 1


# ---------------------------------------------------------------------------
# S-reduced and friends


@dataclass(frozen=True)
class SReducedCertificate:
    verdict: bool
    witnesses: dict[int, int]
    uniform_witness: int | None
    failing: int | None
    degenerate: bool = False

    def to_json(self, ring: FiniteRing) -> dict:
        from .rings import thaw_literal
        return {
            "verdict": self.verdict,
            "uniform_witness": None if self.uniform_witness is None
            else thaw_literal(ring.decode(self.uniform_witness)),
            "witnesses": {
                str(thaw_literal(ring.decode(a))): thaw_literal(ring.decode(s))
                for a, s in sorted(self.witnesses.items())
            },
            "failing": None if self.failing is None
            else thaw_literal(ring.decode(self.failing)),
            "degenerate": self.degenerate,
        }


def is_s_reduced(ring: FiniteRing, S: MultiplicativeSet) -> SReducedCertificate:
    """Every nilpotent must be killed by some member of S.

    The witness map records the least killer per nilpotent; a uniform
    witness valid for all nilpotents is searched as a by-product.
    """
    _require_commutative(ring)
    if S.contains_zero:
        nil = sorted(nilpotent_profile(ring))
        return SReducedCertificate(True, {a: ring.zero for a in nil}, ring.zero,
                                   None, degenerate=True)
    members = S.members
    nilpotents = sorted(nilpotent_profile(ring))
    witnesses: dict[int, int] = {}
    for a in nilpotents:
        hit = next((s for s in members if ring.mul(s, a) == ring.zero), None)
        if hit is None:
            return SReducedCertificate(False, witnesses, None, a)
        witnesses[a] = hit
    uniform = next(
        (s for s in members
         if all(ring.mul(s, a) == ring.zero for a in nilpotents)),
        None)
    return SReducedCertificate(True, witnesses, uniform, None)


def is_u_s_reduced(ring: FiniteRing, S: MultiplicativeSet) -> int | None:
    """Least member of S killing every nilpotent at once, if one exists."""
    return is_s_reduced(ring, S).uniform_witness


def is_s_integral_domain(ring: FiniteRing, S: MultiplicativeSet) -> int | None:
    """Least s working for every zero-product pair: ab = 0 forces sa = 0 or sb = 0.

    The quantifier order matters: one s is fixed before all pairs.
    """
    _require_commutative(ring)
    if S.contains_zero:
        return ring.zero
    zero = ring.zero
    mul = ring.mul
    pairs = [(a, b) for a in range(ring.size) for b in range(ring.size)
             if mul(a, b) == zero]
    for s in S.members:
        if all(mul(s, a) == zero or mul(s, b) == zero for a, b in pairs):
            return s
    return None


def is_s_zero_element(ring: FiniteRing, S: MultiplicativeSet, a: int) -> int | None:
    """Least s with s*a = 0, if any."""
    for s in S.members:
        if ring.mul(s, a) == ring.zero:
            return s
    return None


@dataclass(frozen=True)
class SZeroIdealResult:
    verdict: bool
    witnesses: dict[int, int]
    failing: int | None


def is_s_zero_ideal(S: MultiplicativeSet, I: Ideal) -> SZeroIdealResult:
    ring = I.ring
    witnesses: dict[int, int] = {}
    for a in I.elements:
        s = is_s_zero_element(ring, S, a)
        if s is None:
            return SZeroIdealResult(False, witnesses, a)
        witnesses[a] = s
    return SZeroIdealResult(True, witnesses, None)


# ---------------------------------------------------------------------------
# Localization


@dataclass(frozen=True)
class LocalizationResult:
    """Localization of a finite ring, realized as the quotient by S-torsion.

    Multiplication by any s acts injectively on R/T, hence bijectively, so
    every image of S is a unit and the quotient is the localization.
    """

    ring: FiniteRing
    torsion_kernel: Ideal
    projection: tuple[int, ...]
    degenerate: bool

    def to_json(self, base: FiniteRing) -> dict:
        from .rings import thaw_literal
        return {
            "torsion_kernel": [thaw_literal(base.decode(x))
                               for x in self.torsion_kernel.elements],
            "localized_size": self.ring.size,
            "degenerate": self.degenerate,
        }


def localize(ring: FiniteRing, S: MultiplicativeSet) -> LocalizationResult:
    _require_commutative(ring)
    zero = ring.zero
    mask = 0
    for r in range(ring.size):
        if any(ring.mul(s, r) == zero for s in S.members):
            mask |= 1 << r
    if not is_ideal_mask(ring, mask):
        raise SRingError(f"S-torsion set of {ring.label} is not an ideal")
    torsion = ideal_from_mask(ring, mask)
    loc = QuotientRing(ring, mask)
    projection = tuple(loc.project(x) for x in range(ring.size))
    degenerate = S.contains_zero
    if not degenerate:
        for x in range(ring.size):
            if (projection[x] == loc.zero) != bool((mask >> x) & 1):
                raise SRingError("localization kernel differs from the torsion ideal")
        for s in S.members:
            if not loc.is_unit(projection[s]):
                raise SRingError(
                    f"image of {s} is not a unit in the localization of {ring.label}")
    return LocalizationResult(loc, torsion, projection, degenerate)


# ---------------------------------------------------------------------------
# Purity


@dataclass(frozen=True)
class SPureResult:
    verdict: bool
    witnesses: dict[int, tuple[int, int]]  # a -> (b, s) with s*a = a*b
    failing: int | None


def is_s_pure(S: MultiplicativeSet, I: Ideal) -> SPureResult:
    """Each a in I needs b in I and s in S with s*a = a*b."""
    ring = I.ring
    witnesses: dict[int, tuple[int, int]] = {}
    elems = I.elements
    for a in elems:
        found = None
        for b in elems:
            ab = ring.mul(a, b)
            hit = next((s for s in S.members if ring.mul(s, a) == ab), None)
            if hit is not None:
                found = (b, hit)
                break
        if found is None:
            return SPureResult(False, witnesses, a)
        witnesses[a] = found
    return SPureResult(True, witnesses, None)


@dataclass(frozen=True)
class SPFResult:
    verdict: bool
    failing: int | None
    failing_annihilator: Ideal | None
    detail: SPureResult | None


def is_s_pf(ring: FiniteRing, S: MultiplicativeSet) -> SPFResult:
    """Every annihilator (0 : a) must be an S-pure ideal."""
    _require_commutative(ring)
    for a in range(ring.size):
        ann = annihilator(ring, a)
        res = is_s_pure(S, ann)
        if not res.verdict:
            return SPFResult(False, a, ann, res)
    return SPFResult(True, None, None, None)


# ---------------------------------------------------------------------------
# Annihilator chains


@dataclass(frozen=True)
class HopfianEntry:
    """Certificate that the annihilator chain of one element is S-stationary.

    ``k`` is the least index with some s in S satisfying
    s*ann(a**n) <= ann(a**k) for all n >= k; ``stabilization`` is the plain
    chain stabilization point (always witnessed by s = 1 in a finite ring).
    """

    k: int
    s: int
    stabilization: int
    chain_sizes: tuple[int, ...]


def s_strongly_hopfian_profile(ring: FiniteRing,
                               S: MultiplicativeSet) -> dict[int, HopfianEntry]:
    _require_commutative(ring)
    profile: dict[int, HopfianEntry] = {}
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
        # the chain ann(a) <= ann(a^2) <= ... is increasing, so its last
        # computed member is the stable value
        top = anns[-1]
        stabilization = next(i + 1 for i, m in enumerate(anns) if m == top)
        entry = None
        for k in range(1, stabilization + 1):
            target = anns[k - 1]
            for s in S.members:
                if all((target >> ring.mul(s, y)) & 1 for y in mask_elements(top)):
                    entry = HopfianEntry(
                        k, s, stabilization,
                        tuple(m.bit_count() for m in anns))
                    break
            if entry is not None:
                break
        if entry is None:
            # s = 1 at the stabilization point always works
            entry = HopfianEntry(stabilization, ring.one, stabilization,
                                 tuple(m.bit_count() for m in anns))
        profile[a] = entry
    return profile


# ---------------------------------------------------------------------------
# Zero-product polynomial pairs


def _conv_coeff(ring: FiniteRing, a, b, k: int, deg: int) -> int:
    t = ring.zero
    for i in range(max(0, k - deg), min(k, deg) + 1):
        t = ring.add(t, ring.mul(a[i], b[k - i]))
    return t


def _exhaustive_vector_pairs(ring: FiniteRing, degree: int):
    """All coefficient-vector pairs (a, b) of length degree+1 with a*b = 0.

    For each left vector the solutions are enumerated by walking the
    convolution conditions in order; condition k pins coefficient b_k via
    a_0 * b_k = -(rest), so the walk only ever visits genuine prefixes.
    """
    size = ring.size
    add, mul, neg = ring.add, ring.mul, ring.neg
    solve = ring.solve_mul_all
    D = degree
    for a in itertools.product(range(size), repeat=D + 1):
        stack: list[tuple[int, tuple[int, ...]]] = [(0, ())]
        while stack:
            k, b = stack.pop()
            if k > D:
                ok = True
                for m in range(D + 1, 2 * D + 1):
                    t = ring.zero
                    for i in range(m - D, D + 1):
                        t = add(t, mul(a[i], b[m - i]))
                    if t != ring.zero:
                        ok = False
                        break
                if ok:
                    yield a, b
                continue
            t = ring.zero
            for i in range(1, k + 1):
                t = add(t, mul(a[i], b[k - i]))
            for x in reversed(solve(a[0], neg(t))):
                stack.append((k + 1, b + (x,)))


def _sampled_vector_pairs(ring: FiniteRing, degree: int, seed: int, budget: int):
    """Seeded stream of exactly ``budget`` genuine zero-product vector pairs.

    The left vector is drawn uniformly; the right one is solved coefficient
    by coefficient choosing randomly among the solutions of each convolution
    condition, with the zero vector as the always-valid fallback.
    """
    rng = random.Random(seed)
    rnd = rng.random
    size = ring.size
    add, mul, neg = ring.add, ring.mul, ring.neg
    solve = ring.solve_mul_random
    D = degree
    zero = ring.zero
    zero_vec = (0,) * (D + 1)
    emitted = 0
    while emitted < budget:
        a = tuple(int(rnd() * size) for _ in range(D + 1))
        b = None
        for _ in range(2):
            cand = []
            fail = False
            for k in range(D):
                t = zero
                for i in range(1, k + 1):
                    t = add(t, mul(a[i], cand[k - i]))
                x = solve(a[0], neg(t), rng)
                if x is None:
                    fail = True
                    break
                cand.append(x)
            if fail:
                break
            # the last coefficient is the cheapest to redraw against the
            # trailing convolution conditions, so give it a few tries
            t = zero
            for i in range(1, D + 1):
                t = add(t, mul(a[i], cand[D - i]))
            t = neg(t)
            for _ in range(3):
                x = solve(a[0], t, rng)
                if x is None:
                    break
                tail = cand + [x]
                ok = True
                for m in range(D + 1, 2 * D + 1):
                    u = zero
                    for i in range(m - D, D + 1):
                        u = add(u, mul(a[i], tail[m - i]))
                    if u != zero:
                        ok = False
                        break
                if ok:
                    b = tuple(tail)
                    break
            if b is not None:
                break
        if b is None:
            b = zero_vec
        yield a, b
        emitted += 1


def zero_product_poly_pairs(ring: FiniteRing, degree: int, *, mode: str = "auto",
                            seed: int = 0, budget: int = 100_000,
                            exhaustive_budget: int = 10_000_000):
    """Stream of polynomial pairs (f, g) with f*g = 0 and deg <= degree.

    Exhaustive mode requires size**(2*degree+2) <= exhaustive_budget and
    emits every pair exactly once; sampled mode emits ``budget`` genuine
    pairs drawn from the given seed (duplicates possible).
    """
    mode = _resolve_mode(ring, degree, mode, exhaustive_budget)
    if mode == "exhaustive":
        src = _exhaustive_vector_pairs(ring, degree)
    else:
        src = _sampled_vector_pairs(ring, degree, seed, budget)
    for a, b in src:
        yield poly(a), poly(b)


def _resolve_mode(ring: FiniteRing, degree: int, mode: str,
                  exhaustive_budget: int) -> str:
    space = ring.size ** (2 * degree + 2)
    if mode == "auto":
        return "exhaustive" if space <= exhaustive_budget else "sampled"
    if mode == "exhaustive" and space > exhaustive_budget:
        raise BudgetExceededError(
            f"exhaustive pair space {space} exceeds budget {exhaustive_budget}")
    if mode not in ("exhaustive", "sampled"):
        raise SRingError(f"unknown search mode {mode!r}")
    return mode


# ---------------------------------------------------------------------------
# Armendariz verdicts


@dataclass(frozen=True)
class ArmendarizViolation:
    f: tuple[int, ...]
    g: tuple[int, ...]
    i: int | None
    j: int | None
    strong: bool  # some coefficient product is killed by no member at all

    def to_json(self, ring: FiniteRing) -> dict:
        from .rings import thaw_literal
        return {
            "f": [thaw_literal(ring.decode(c)) for c in self.f],
            "g": [thaw_literal(ring.decode(c)) for c in self.g],
            "i": self.i,
            "j": self.j,
            "strong": self.strong,
        }


@dataclass(frozen=True)
class ArmendarizVerdict:
    """Outcome of a bounded-degree zero-product coefficient check.

    Both readings are decided: ``per_pair_ok`` allows the witness to vary
    with the pair, ``uniform_witness`` must cover every examined pair.  The
    verdict is always relative to ``degree`` and ``mode``.
    """

    degree: int
    mode: str
    seed: int | None
    budget: int
    pairs_checked: int
    uniform_witness: int | None
    per_pair_ok: bool
    per_pair_histogram: dict[int, int]
    per_pair_violation: ArmendarizViolation | None
    uniform_failed_after: int | None
    degenerate: bool = False

    @property
    def uniform_ok(self) -> bool:
        return self.uniform_witness is not None

    def to_json(self, ring: FiniteRing) -> dict:
        from .rings import thaw_literal
        return {
            "mode": {
                "degree": self.degree,
                "search": self.mode,
                "seed": self.seed,
                "budget": self.budget,
            },
            "pairs_checked": self.pairs_checked,
            "uniform_witness": None if self.uniform_witness is None
            else thaw_literal(ring.decode(self.uniform_witness)),
            "per_pair_ok": self.per_pair_ok,
            "per_pair_histogram": {
                str(thaw_literal(ring.decode(s))): n
                for s, n in sorted(self.per_pair_histogram.items())
            },
            "per_pair_violation": None if self.per_pair_violation is None
            else self.per_pair_violation.to_json(ring),
            "uniform_failed_after": self.uniform_failed_after,
            "degenerate": self.degenerate,
        }


def is_u_s_armendariz_up_to(ring: FiniteRing, S: MultiplicativeSet, degree: int,
                            *, mode: str = "auto", seed: int = 0,
                            budget: int = 100_000,
                            exhaustive_budget: int = 10_000_000) -> ArmendarizVerdict:
    """Check s * a_i * b_j = 0 over zero-product pairs up to ``degree``.

    Factor order is preserved, so the check is meaningful on the
    noncommutative triangular carrier as well.
    """
    resolved = _resolve_mode(ring, degree, mode, exhaustive_budget)
    if S.contains_zero:
        return ArmendarizVerdict(degree, resolved, seed, budget, 0, ring.zero,
                                 True, {}, None, None, degenerate=True)
    members = S.members
    mul = ring.mul
    if resolved == "exhaustive":
        src = _exhaustive_vector_pairs(ring, degree)
        used_seed: int | None = None
    else:
        src = _sampled_vector_pairs(ring, degree, seed, budget)
        used_seed = seed
    # which members kill a given product, memoized as a bitmask over the
    # member list; products repeat heavily so this dominates nothing
    full_mask = (1 << len(members)) - 1
    kill_cache: dict[int, int] = {0: full_mask}
    def kill_mask(p: int) -> int:
        m = kill_cache.get(p)
        if m is None:
            m = 0
            for i, s in enumerate(members):
                if mul(s, p) == 0:
                    m |= 1 << i
            kill_cache[p] = m
        return m
    uniform_mask = full_mask
    histogram: dict[int, int] = {}
    pairs = 0
    per_pair_ok = True
    per_pair_violation: ArmendarizViolation | None = None
    uniform_failed_after: int | None = None
    for a, b in src:
        pairs += 1
        pm = full_mask
        for ai in a:
            if ai == 0:
                continue
            for bj in b:
                if bj == 0:
                    continue
                p = mul(ai, bj)
                if p:
                    pm &= kill_mask(p)
        if pm:
            w = members[(pm & -pm).bit_length() - 1]
            histogram[w] = histogram.get(w, 0) + 1
        elif per_pair_ok:
            per_pair_ok = False
            per_pair_violation = _locate_violation(ring, members, a, b)
        if uniform_mask:
            uniform_mask &= pm
            if not uniform_mask:
                uniform_failed_after = pairs
    uniform_witness = (members[(uniform_mask & -uniform_mask).bit_length() - 1]
                       if uniform_mask else None)
    return ArmendarizVerdict(
        degree=degree,
        mode=resolved,
        seed=used_seed,
        budget=budget,
        pairs_checked=pairs,
        uniform_witness=uniform_witness,
        per_pair_ok=per_pair_ok,
        per_pair_histogram=histogram,
        per_pair_violation=per_pair_violation,
        uniform_failed_after=uniform_failed_after,
    )


def _locate_violation(ring: FiniteRing, members, a, b) -> ArmendarizViolation:
    zero = ring.zero
    mul = ring.mul
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            p = mul(ai, bj)
            if p == zero:
                continue
            if all(mul(s, p) != zero for s in members):
                return ArmendarizViolation(a, b, i, j, strong=True)
    return ArmendarizViolation(a, b, None, None, strong=False)
