"""Finite rings built compositionally from construction expressions.

Elements are canonical integer indices in ``range(ring.size)``.  Arithmetic
is computed structurally from the expression (residues, tuples, cosets), so
rings with tens of thousands of elements stay cheap to construct; carriers
up to 256 elements additionally install flat operation tables, which keeps
the solver loops of the derived constructions fast.  Index 0 is always the
zero element.

Rings are immutable after construction; every operation here is a pure
function of its inputs, so ring values may be shared freely across workers.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .errors import MalformedExpressionError, SizeCapExceededError

DEFAULT_SIZE_CAP = 4096
AXIOM_EXHAUSTIVE_LIMIT = 256
AXIOM_SAMPLE_TRIPLES = 100_000


def freeze_literal(lit):
    """Normalize a decoded element literal to hashable form (lists -> tuples)."""
    if isinstance(lit, (list, tuple)):
        return tuple(freeze_literal(x) for x in lit)
    return lit


def thaw_literal(lit):
    """Inverse of :func:`freeze_literal` for JSON output (tuples -> lists)."""
    if isinstance(lit, tuple):
        return [thaw_literal(x) for x in lit]
    return lit


# ---------------------------------------------------------------------------
# Construction expressions


@dataclass(frozen=True)
class ZMod:
    """Integers modulo ``n``."""

    n: int


@dataclass(frozen=True)
class Product:
    """Direct product of the factor rings, componentwise operations."""

    factors: tuple


@dataclass(frozen=True)
class Quotient:
    """Quotient of ``base`` by the ideal generated by the element literals."""

    base: object
    ideal: tuple


@dataclass(frozen=True)
class ModuleSpec:
    """Finite module given as a direct sum of cyclic quotients base/J_k.

    Each entry of ``cyclic`` is a tuple of element literals generating J_k.
    """

    cyclic: tuple


@dataclass(frozen=True)
class Idealization:
    """Square-zero extension: pairs (r, m) with (r1,m1)(r2,m2) = (r1r2, r1m2+r2m1)."""

    base: object
    module: ModuleSpec


@dataclass(frozen=True)
class TriangularE:
    """Quadruples (a,b,c,d) encoding 3x3 upper-triangular matrices with
    constant diagonal a over the base ring.  The product is

        (a1a2, a1b2+b1a2, a1c2+b1d2+c1a2, a1d2+d1a2)

    which is literal matrix multiplication.  Note b1d2 is not symmetric, so
    this carrier is noncommutative whenever the base has more than one
    element.
    """

    base: object


RingExpression = ZMod | Product | Quotient | Idealization | TriangularE


def _literal_text(lit) -> str:
    if isinstance(lit, tuple):
        return "[" + ",".join(_literal_text(x) for x in lit) + "]"
    return str(lit)


def expression_label(expr: RingExpression) -> str:
    """Short deterministic display name for a construction expression."""
    if isinstance(expr, ZMod):
        return f"Z{expr.n}"
    if isinstance(expr, Product):
        return "x".join(expression_label(f) for f in expr.factors)
    if isinstance(expr, Quotient):
        gens = ",".join(_literal_text(g) for g in expr.ideal)
        return f"{expression_label(expr.base)}/({gens})"
    if isinstance(expr, Idealization):
        comps = ";".join(
            ",".join(_literal_text(g) for g in comp) or "0"
            for comp in expr.module.cyclic
        )
        return f"{expression_label(expr.base)}(+)({comps})"
    if isinstance(expr, TriangularE):
        return f"UT3({expression_label(expr.base)})"
    raise MalformedExpressionError(f"unknown expression {expr!r}")


# ---------------------------------------------------------------------------
# Ring carriers


SOLUTION_CACHE_LIMIT = 256
OP_TABLE_LIMIT = 256


class FiniteRing:
    """Total exact arithmetic on canonical element indices.

    Subclasses implement ``add``, ``mul``, ``neg``, ``decode``, ``encode``
    and, where the structure admits something faster than a scan, the
    ``_solve_all`` / ``_solve_random`` equation solvers for a*x = t.
    Small carriers memoize whole solution lists (at most size*size of
    them), which collapses the hot solver loops of the derived
    constructions into dictionary hits; callers must not mutate the lists.
    """

    commutative = True
    _add_table: list[int] | None = None
    _mul_table: list[int] | None = None
    _neg_table: list[int] | None = None

    def __init__(self, size: int, expression, one: int):
        self.size = size
        self.expression = expression
        self.zero = 0
        self.one = one
        self._solutions_cache: dict[int, list[int]] | None = (
            {} if size <= SOLUTION_CACHE_LIMIT else None)

    def _install_op_tables(self, limit: int = OP_TABLE_LIMIT) -> None:
        """Flat operation tables for small carriers (size*size entries).

        Structured arithmetic composes; for the carriers that sit at the
        bottom of the derived constructions, table lookups beat walking the
        structure by an order of magnitude.
        """
        if self.size > limit:
            return
        n = self.size
        self._neg_table = [self.neg(a) for a in range(n)]
        add_t = []
        mul_t = []
        for a in range(n):
            for b in range(n):
                add_t.append(self.add(a, b))
                mul_t.append(self.mul(a, b))
        self._add_table = add_t
        self._mul_table = mul_t

    # -- arithmetic -------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        raise NotImplementedError

    def mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def neg(self, a: int) -> int:
        raise NotImplementedError

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def pow(self, a: int, n: int) -> int:
        acc = self.one
        base = a
        while n:
            if n & 1:
                acc = self.mul(acc, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return acc

    # -- encoding ---------------------------------------------------------
    def decode(self, index: int):
        raise NotImplementedError

    def encode(self, literal) -> int:
        raise NotImplementedError

    def elements(self) -> range:
        return range(self.size)

    # -- equation solving: all / one random solution of a*x = t ------------
    def solve_mul_all(self, a: int, t: int) -> list[int]:
        cache = self._solutions_cache
        if cache is None:
            return self._solve_all(a, t)
        key = a * self.size + t
        sols = cache.get(key)
        if sols is None:
            sols = self._solve_all(a, t)
            cache[key] = sols
        return sols

    def solve_mul_random(self, a: int, t: int, rng: random.Random) -> int | None:
        if self._solutions_cache is not None:
            sols = self.solve_mul_all(a, t)
            if not sols:
                return None
            return sols[int(rng.random() * len(sols))]
        return self._solve_random(a, t, rng)

    def _solve_all(self, a: int, t: int) -> list[int]:
        return [x for x in range(self.size) if self.mul(a, x) == t]

    def _solve_random(self, a: int, t: int, rng: random.Random) -> int | None:
        sols = self._solve_all(a, t)
        if not sols:
            return None
        return sols[int(rng.random() * len(sols))]

    def is_unit(self, a: int) -> bool:
        return bool(self.solve_mul_all(a, self.one))

    @property
    def label(self) -> str:
        return expression_label(self.expression)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.label} size={self.size}>"


class ZModRing(FiniteRing):
    def __init__(self, n: int, expression=None):
        super().__init__(n, expression if expression is not None else ZMod(n), 1 % n)
        self.n = n
        self._solve_cache: dict[int, tuple[int, int, int]] = {}

    def add(self, a, b):
        return (a + b) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def sub(self, a, b):
        return (a - b) % self.n

    def decode(self, index):
        return index

    def encode(self, literal):
        if not isinstance(literal, int):
            raise MalformedExpressionError(
                f"expected integer literal for {self.label}, got {literal!r}"
            )
        return literal % self.n

    def _solve_params(self, a):
        params = self._solve_cache.get(a)
        if params is None:
            g = math.gcd(a, self.n)
            m = self.n // g
            inv = pow(a // g, -1, m) if m > 1 else 0
            params = (g, m, inv)
            self._solve_cache[a] = params
        return params

    def _solve_all(self, a, t):
        g, m, inv = self._solve_params(a)
        if t % g:
            return []
        x0 = ((t // g) * inv) % m
        return [x0 + k * m for k in range(g)]

    def _solve_random(self, a, t, rng):
        g, m, inv = self._solve_params(a)
        if t % g:
            return None
        x0 = ((t // g) * inv) % m
        return x0 + int(rng.random() * g) * m

    def is_unit(self, a):
        return math.gcd(a, self.n) == 1


class ProductRing(FiniteRing):
    def __init__(self, factors: tuple[FiniteRing, ...], expression=None):
        self.factors = tuple(factors)
        size = math.prod(f.size for f in self.factors)
        if expression is None:
            expression = Product(tuple(f.expression for f in self.factors))
        one = self._join(tuple(f.one for f in self.factors))
        super().__init__(size, expression, one)
        self.commutative = all(f.commutative for f in self.factors)
        self._install_op_tables()

    def _split(self, i: int) -> tuple[int, ...]:
        parts = []
        for f in self.factors:
            i, p = divmod(i, f.size)
            parts.append(p)
        return tuple(parts)

    def _join(self, parts) -> int:
        i = 0
        for f, p in zip(reversed(self.factors), reversed(tuple(parts))):
            i = i * f.size + p
        return i

    def add(self, a, b):
        table = self._add_table
        if table is not None:
            return table[a * self.size + b]
        xs, ys = self._split(a), self._split(b)
        return self._join(f.add(x, y) for f, x, y in zip(self.factors, xs, ys))

    def mul(self, a, b):
        table = self._mul_table
        if table is not None:
            return table[a * self.size + b]
        xs, ys = self._split(a), self._split(b)
        return self._join(f.mul(x, y) for f, x, y in zip(self.factors, xs, ys))

    def neg(self, a):
        table = self._neg_table
        if table is not None:
            return table[a]
        xs = self._split(a)
        return self._join(f.neg(x) for f, x in zip(self.factors, xs))

    def decode(self, index):
        return tuple(f.decode(x) for f, x in zip(self.factors, self._split(index)))

    def encode(self, literal):
        literal = freeze_literal(literal)
        if not isinstance(literal, tuple) or len(literal) != len(self.factors):
            raise MalformedExpressionError(
                f"expected {len(self.factors)}-tuple literal for {self.label}, got {literal!r}"
            )
        return self._join(f.encode(x) for f, x in zip(self.factors, literal))

    def _solve_all(self, a, t):
        xs, ts = self._split(a), self._split(t)
        per_factor = []
        for f, x, u in zip(self.factors, xs, ts):
            sols = f.solve_mul_all(x, u)
            if not sols:
                return []
            per_factor.append(sols)
        out = []
        idx = [0] * len(per_factor)
        while True:
            out.append(self._join(per_factor[k][idx[k]] for k in range(len(idx))))
            k = 0
            while k < len(idx):
                idx[k] += 1
                if idx[k] < len(per_factor[k]):
                    break
                idx[k] = 0
                k += 1
            else:
                break
        out.sort()
        return out

    def _solve_random(self, a, t, rng):
        xs, ts = self._split(a), self._split(t)
        parts = []
        for f, x, u in zip(self.factors, xs, ts):
            sol = f.solve_mul_random(x, u, rng)
            if sol is None:
                return None
            parts.append(sol)
        return self._join(parts)

    def is_unit(self, a):
        return all(f.is_unit(x) for f, x in zip(self.factors, self._split(a)))


class QuotientRing(FiniteRing):
    """Quotient by an ideal; elements are cosets named by their least base rep."""

    def __init__(self, base: FiniteRing, ideal_mask: int, expression=None,
                 gens_idx: tuple[int, ...] = ()):
        self.base = base
        self.ideal_elements = tuple(_mask_elements(ideal_mask))
        reps: list[int] = []
        proj: list[int] = [-1] * base.size
        for x in range(base.size):
            if proj[x] < 0:
                idx = len(reps)
                reps.append(x)
                for i in self.ideal_elements:
                    proj[base.add(x, i)] = idx
        self._reps = tuple(reps)
        self._proj = tuple(proj)
        if expression is None:
            expression = Quotient(
                base.expression,
                tuple(freeze_literal(base.decode(g)) for g in gens_idx),
            )
        super().__init__(len(reps), expression, proj[base.one])
        self.commutative = base.commutative
        self._install_op_tables()

    def lift(self, i: int) -> int:
        return self._reps[i]

    def project(self, x: int) -> int:
        return self._proj[x]

    def add(self, a, b):
        table = self._add_table
        if table is not None:
            return table[a * self.size + b]
        return self._proj[self.base.add(self._reps[a], self._reps[b])]

    def mul(self, a, b):
        table = self._mul_table
        if table is not None:
            return table[a * self.size + b]
        return self._proj[self.base.mul(self._reps[a], self._reps[b])]

    def neg(self, a):
        table = self._neg_table
        if table is not None:
            return table[a]
        return self._proj[self.base.neg(self._reps[a])]

    def decode(self, index):
        return self.base.decode(self._reps[index])

    def encode(self, literal):
        return self._proj[self.base.encode(literal)]

    def _solve_all(self, a, t):
        la, lt = self._reps[a], self._reps[t]
        seen = set()
        for i in self.ideal_elements:
            u = self.base.add(lt, i)
            for x in self.base.solve_mul_all(la, u):
                seen.add(self._proj[x])
        return sorted(seen)

    def _solve_random(self, a, t, rng):
        # probe every coset offset starting from a random one; complete,
        # since solutions exist iff some lift of t is hit in the base
        la, lt = self._reps[a], self._reps[t]
        ideal = self.ideal_elements
        start = int(rng.random() * len(ideal))
        for k in range(len(ideal)):
            u = self.base.add(lt, ideal[(start + k) % len(ideal)])
            x = self.base.solve_mul_random(la, u, rng)
            if x is not None:
                return self._proj[x]
        return None


class IdealizationRing(FiniteRing):
    """Pairs (r, m) over base ring and module; (0, m) squares to zero."""

    def __init__(self, base: FiniteRing, components: tuple[QuotientRing, ...],
                 expression=None):
        self.base = base
        self.components = tuple(components)
        self.module_size = math.prod(c.size for c in self.components)
        size = base.size * self.module_size
        if expression is None:
            module = ModuleSpec(tuple(() for _ in self.components))
            expression = Idealization(base.expression, module)
        super().__init__(size, expression, base.one * self.module_size)
        self.commutative = base.commutative
        # single full-module component (the R(+)R shape) skips the
        # coset tables entirely; it dominates the verification workload
        self._full_module = (len(self.components) == 1
                             and self.components[0].size == base.size)
        self._install_op_tables()

    def _split(self, i: int) -> tuple[int, tuple[int, ...]]:
        r, m = divmod(i, self.module_size)
        if len(self.components) == 1:
            return r, (m,)
        parts = []
        for c in self.components:
            m, p = divmod(m, c.size)
            parts.append(p)
        return r, tuple(parts)

    def _join(self, r: int, parts) -> int:
        parts = tuple(parts)
        if len(parts) == 1:
            return r * self.module_size + parts[0]
        m = 0
        for c, p in zip(reversed(self.components), reversed(parts)):
            m = m * c.size + p
        return r * self.module_size + m

    def add(self, a, b):
        table = self._add_table
        if table is not None:
            return table[a * self.size + b]
        if self._full_module:
            ms = self.module_size
            B = self.base
            r1, m1 = divmod(a, ms)
            r2, m2 = divmod(b, ms)
            return B.add(r1, r2) * ms + B.add(m1, m2)
        r1, m1 = self._split(a)
        r2, m2 = self._split(b)
        return self._join(
            self.base.add(r1, r2),
            (c.add(x, y) for c, x, y in zip(self.components, m1, m2)),
        )

    def neg(self, a):
        table = self._neg_table
        if table is not None:
            return table[a]
        if self._full_module:
            ms = self.module_size
            B = self.base
            r, m = divmod(a, ms)
            return B.neg(r) * ms + B.neg(m)
        r, m = self._split(a)
        return self._join(self.base.neg(r),
                          (c.neg(x) for c, x in zip(self.components, m)))

    def mul(self, a, b):
        table = self._mul_table
        if table is not None:
            return table[a * self.size + b]
        if self._full_module:
            ms = self.module_size
            B = self.base
            r1, m1 = divmod(a, ms)
            r2, m2 = divmod(b, ms)
            return B.mul(r1, r2) * ms + B.add(B.mul(r1, m2), B.mul(r2, m1))
        r1, m1 = self._split(a)
        r2, m2 = self._split(b)
        parts = (
            c.add(c.mul(c.project(r1), y), c.mul(c.project(r2), x))
            for c, x, y in zip(self.components, m1, m2)
        )
        return self._join(self.base.mul(r1, r2), parts)

    def decode(self, index):
        r, m = self._split(index)
        return (self.base.decode(r),
                tuple(c.decode(x) for c, x in zip(self.components, m)))

    def encode(self, literal):
        literal = freeze_literal(literal)
        if not isinstance(literal, tuple) or len(literal) != 2:
            raise MalformedExpressionError(
                f"expected [r, [components...]] literal for {self.label}, got {literal!r}"
            )
        r_lit, m_lits = literal
        if not isinstance(m_lits, tuple) or len(m_lits) != len(self.components):
            raise MalformedExpressionError(
                f"module part of an {self.label} literal must list "
                f"{len(self.components)} component(s), got {m_lits!r}"
            )
        return self._join(
            self.base.encode(r_lit),
            (c.encode(x) for c, x in zip(self.components, m_lits)),
        )

    def _solve_all(self, a, t):
        r, m = self._split(a)
        tr, tm = self._split(t)
        out = []
        for y in self.base.solve_mul_all(r, tr):
            per_comp = []
            ok = True
            for c, mk, tk in zip(self.components, m, tm):
                target = c.sub(tk, c.mul(c.project(y), mk))
                sols = c.solve_mul_all(c.project(r), target)
                if not sols:
                    ok = False
                    break
                per_comp.append(sols)
            if not ok:
                continue
            idx = [0] * len(per_comp)
            while True:
                out.append(self._join(y, (per_comp[k][idx[k]] for k in range(len(idx)))))
                k = 0
                while k < len(idx):
                    idx[k] += 1
                    if idx[k] < len(per_comp[k]):
                        break
                    idx[k] = 0
                    k += 1
                else:
                    break
        out.sort()
        return out

    def _solve_random(self, a, t, rng):
        if self._full_module:
            ms = self.module_size
            B = self.base
            r, m = divmod(a, ms)
            tr, tm = divmod(t, ms)
            ys = B.solve_mul_all(r, tr)
            if not ys:
                return None
            start = int(rng.random() * len(ys))
            for k in range(min(len(ys), 16)):
                y = ys[(start + k) % len(ys)]
                mu = B.solve_mul_random(r, B.sub(tm, B.mul(y, m)), rng)
                if mu is not None:
                    return y * ms + mu
            return None
        # the module equations are solvable or not depending on y, so walk
        # the y-candidates from a random offset instead of blind retries
        r, m = self._split(a)
        tr, tm = self._split(t)
        ys = self.base.solve_mul_all(r, tr)
        if not ys:
            return None
        start = int(rng.random() * len(ys))
        for k in range(min(len(ys), 16)):
            y = ys[(start + k) % len(ys)]
            parts = []
            ok = True
            for c, mk, tk in zip(self.components, m, tm):
                target = c.sub(tk, c.mul(c.project(y), mk))
                sol = c.solve_mul_random(c.project(r), target, rng)
                if sol is None:
                    ok = False
                    break
                parts.append(sol)
            if ok:
                return self._join(y, parts)
        return None


class TriangularERing(FiniteRing):
    """Quadruples with the upper-triangular constant-diagonal product law.

    Noncommutative for bases with more than one element (the b1*d2 cross
    term has no mirror), so only the operations that do not assume
    commutativity may be used on this carrier.
    """

    def __init__(self, base: FiniteRing, expression=None):
        self.base = base
        n = base.size
        if expression is None:
            expression = TriangularE(base.expression)
        super().__init__(n ** 4, expression, base.one * n ** 3)
        self.commutative = base.size == 1
        self._install_op_tables()

    def _split(self, i: int) -> tuple[int, int, int, int]:
        n = self.base.size
        i, d = divmod(i, n)
        i, c = divmod(i, n)
        a, b = divmod(i, n)
        return a, b, c, d

    def _join(self, a: int, b: int, c: int, d: int) -> int:
        n = self.base.size
        return ((a * n + b) * n + c) * n + d

    def add(self, x, y):
        table = self._add_table
        if table is not None:
            return table[x * self.size + y]
        B = self.base
        a1, b1, c1, d1 = self._split(x)
        a2, b2, c2, d2 = self._split(y)
        return self._join(B.add(a1, a2), B.add(b1, b2), B.add(c1, c2), B.add(d1, d2))

    def neg(self, x):
        table = self._neg_table
        if table is not None:
            return table[x]
        B = self.base
        a, b, c, d = self._split(x)
        return self._join(B.neg(a), B.neg(b), B.neg(c), B.neg(d))

    def mul(self, x, y):
        table = self._mul_table
        if table is not None:
            return table[x * self.size + y]
        B = self.base
        a1, b1, c1, d1 = self._split(x)
        a2, b2, c2, d2 = self._split(y)
        a = B.mul(a1, a2)
        b = B.add(B.mul(a1, b2), B.mul(b1, a2))
        c = B.add(B.add(B.mul(a1, c2), B.mul(b1, d2)), B.mul(c1, a2))
        d = B.add(B.mul(a1, d2), B.mul(d1, a2))
        return self._join(a, b, c, d)

    def decode(self, index):
        return tuple(self.base.decode(x) for x in self._split(index))

    def encode(self, literal):
        literal = freeze_literal(literal)
        if not isinstance(literal, tuple) or len(literal) != 4:
            raise MalformedExpressionError(
                f"expected [a,b,c,d] literal for {self.label}, got {literal!r}"
            )
        a, b, c, d = (self.base.encode(x) for x in literal)
        return self._join(a, b, c, d)

    def _solve_all(self, alpha, tau):
        B = self.base
        a1, b1, c1, d1 = self._split(alpha)
        t0, t1, t2, t3 = self._split(tau)
        out = []
        for x in B.solve_mul_all(a1, t0):
            ys = B.solve_mul_all(a1, B.sub(t1, B.mul(b1, x)))
            if not ys:
                continue
            for w in B.solve_mul_all(a1, B.sub(t3, B.mul(d1, x))):
                zt = B.sub(B.sub(t2, B.mul(b1, w)), B.mul(c1, x))
                for z in B.solve_mul_all(a1, zt):
                    for y in ys:
                        out.append(self._join(x, y, z, w))
        out.sort()
        return out

    def _solve_random(self, alpha, tau, rng):
        # all four component equations share the left factor a1, but their
        # solvability depends on x (and w), so probe those candidate sets
        # from random offsets; complete up to the probe caps
        B = self.base
        a1, b1, c1, d1 = self._split(alpha)
        t0, t1, t2, t3 = self._split(tau)
        xs = B.solve_mul_all(a1, t0)
        if not xs:
            return None
        xstart = int(rng.random() * len(xs))
        for kx in range(min(len(xs), 16)):
            x = xs[(xstart + kx) % len(xs)]
            y = B.solve_mul_random(a1, B.sub(t1, B.mul(b1, x)), rng)
            if y is None:
                continue
            ws = B.solve_mul_all(a1, B.sub(t3, B.mul(d1, x)))
            if not ws:
                continue
            wstart = int(rng.random() * len(ws))
            for kw in range(min(len(ws), 16)):
                w = ws[(wstart + kw) % len(ws)]
                z = B.solve_mul_random(
                    a1, B.sub(B.sub(t2, B.mul(b1, w)), B.mul(c1, x)), rng)
                if z is not None:
                    return self._join(x, y, z, w)
        return None


# ---------------------------------------------------------------------------
# Ideal span (used by quotient construction; re-exported for the ideal layer)


def _mask_elements(mask: int):
    x = 0
    while mask:
        if mask & 1:
            yield x
        mask >>= 1
        x += 1


def mask_elements(mask: int) -> tuple[int, ...]:
    return tuple(_mask_elements(mask))


def ideal_span(ring: FiniteRing, gens) -> int:
    """Bitmask of the smallest two-sided ideal containing ``gens``.

    Multiples of the generators are closed under addition to a fixpoint;
    the additive closure of a finite set already contains negatives.
    """
    mul = ring.mul
    add = ring.add
    seeds = {0}
    for g in gens:
        for r in range(ring.size):
            seeds.add(mul(r, g))
            if not ring.commutative:
                seeds.add(mul(g, r))
    members: list[int] = []
    mask = 0
    for x in sorted(seeds):
        if not (mask >> x) & 1:
            mask |= 1 << x
            members.append(x)
    qi = 0
    while qi < len(members):
        x = members[qi]
        qi += 1
        for j in range(len(members)):
            s = add(x, members[j])
            if not (mask >> s) & 1:
                mask |= 1 << s
                members.append(s)
    return mask


# ---------------------------------------------------------------------------
# Construction


def quotient_ring(base: FiniteRing, gens_idx, *, size_cap: int = DEFAULT_SIZE_CAP,
                  allow_trivial: bool = False) -> QuotientRing:
    """Quotient of ``base`` by the ideal generated by the given element indices."""
    gens_idx = tuple(gens_idx)
    mask = ideal_span(base, gens_idx)
    ring = QuotientRing(base, mask, gens_idx=gens_idx)
    if ring.size == 1 and not allow_trivial:
        raise MalformedExpressionError(
            f"quotient of {base.label} by the unit ideal collapses to the zero ring"
        )
    if ring.size > size_cap:
        raise SizeCapExceededError(
            f"quotient size {ring.size} exceeds cap {size_cap}")
    return ring


def product_ring(factors, *, size_cap: int = DEFAULT_SIZE_CAP) -> ProductRing:
    ring = ProductRing(tuple(factors))
    if ring.size > size_cap:
        raise SizeCapExceededError(
            f"product size {ring.size} exceeds cap {size_cap}")
    return ring


def build_ring(expr: RingExpression, *, size_cap: int = DEFAULT_SIZE_CAP,
               check: bool = True) -> FiniteRing:
    """Realize a construction expression as a concrete ring.

    Raises MalformedExpressionError for invalid expressions and
    SizeCapExceededError when the realized carrier would exceed ``size_cap``.
    A cheap seeded sample of the ring axioms runs on every construction;
    the exhaustive suite lives in :func:`verify_ring_axioms`.
    """
    ring = _realize(expr, size_cap)
    if ring.size > size_cap:
        raise SizeCapExceededError(
            f"ring size {ring.size} exceeds cap {size_cap}")
    if check:
        _quick_axiom_sample(ring)
    return ring


def _realize(expr, size_cap: int) -> FiniteRing:
    if isinstance(expr, ZMod):
        if not isinstance(expr.n, int) or expr.n < 2:
            raise MalformedExpressionError(f"zmod requires integer n >= 2, got {expr.n!r}")
        if expr.n > size_cap:
            raise SizeCapExceededError(f"zmod size {expr.n} exceeds cap {size_cap}")
        return ZModRing(expr.n, expr)
    if isinstance(expr, Product):
        if not expr.factors:
            raise MalformedExpressionError("product requires at least one factor")
        factors = tuple(_realize(f, size_cap) for f in expr.factors)
        size = math.prod(f.size for f in factors)
        if size > size_cap:
            raise SizeCapExceededError(f"product size {size} exceeds cap {size_cap}")
        return ProductRing(factors, expr)
    if isinstance(expr, Quotient):
        base = _realize(expr.base, size_cap)
        try:
            gens = tuple(base.encode(g) for g in expr.ideal)
        except MalformedExpressionError:
            raise
        except Exception as exc:  # noqa: BLE001 - surface as a parse problem
            raise MalformedExpressionError(
                f"invalid quotient generator for {base.label}: {exc}") from exc
        mask = ideal_span(base, gens)
        ring = QuotientRing(base, mask, expr, gens_idx=gens)
        if ring.size == 1:
            raise MalformedExpressionError(
                f"quotient of {base.label} by the unit ideal collapses to the zero ring")
        return ring
    if isinstance(expr, Idealization):
        base = _realize(expr.base, size_cap)
        comps = []
        for comp_gens in expr.module.cyclic:
            gens = tuple(base.encode(g) for g in comp_gens)
            mask = ideal_span(base, gens)
            comps.append(QuotientRing(base, mask, gens_idx=gens))
        if not comps:
            raise MalformedExpressionError("idealization module needs >= 1 cyclic component")
        size = base.size * math.prod(c.size for c in comps)
        if size > size_cap:
            raise SizeCapExceededError(f"idealization size {size} exceeds cap {size_cap}")
        return IdealizationRing(base, tuple(comps), expr)
    if isinstance(expr, TriangularE):
        base = _realize(expr.base, size_cap)
        size = base.size ** 4
        if size > size_cap:
            raise SizeCapExceededError(
                f"triangular carrier size {size} exceeds cap {size_cap}")
        return TriangularERing(base, expr)
    raise MalformedExpressionError(f"unknown expression node {expr!r}")


def _quick_axiom_sample(ring: FiniteRing, triples: int = 64) -> None:
    rng = random.Random(0xC0FFEE ^ ring.size)
    size = ring.size
    if size > 1 and ring.zero == ring.one:
        raise MalformedExpressionError(f"{ring.label}: zero equals one")
    for _ in range(triples):
        a = rng.randrange(size)
        b = rng.randrange(size)
        c = rng.randrange(size)
        assert ring.add(a, ring.zero) == a
        assert ring.mul(a, ring.one) == a and ring.mul(ring.one, a) == a
        assert ring.add(a, ring.neg(a)) == ring.zero
        assert ring.add(ring.add(a, b), c) == ring.add(a, ring.add(b, c))
        assert ring.add(a, b) == ring.add(b, a)
        assert ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c))
        assert ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c))
        assert ring.mul(ring.add(b, c), a) == ring.add(ring.mul(b, a), ring.mul(c, a))
        if ring.commutative:
            assert ring.mul(a, b) == ring.mul(b, a)


def verify_ring_axioms(ring: FiniteRing, *, exhaustive_limit: int = AXIOM_EXHAUSTIVE_LIMIT,
                       samples: int = AXIOM_SAMPLE_TRIPLES, seed: int = 0) -> list[str]:
    """Check the ring axioms, exhaustively for small carriers.

    Returns a list of human-readable failure descriptions (empty when all
    axioms hold).  Above ``exhaustive_limit`` elements the triple checks
    downgrade to ``samples`` seeded random draws.
    """
    failures: list[str] = []
    size = ring.size
    add, mul, neg = ring.add, ring.mul, ring.neg
    zero, one = ring.zero, ring.one

    if size > 1 and zero == one:
        failures.append("zero equals one")
    for a in range(size):
        if add(a, zero) != a:
            failures.append(f"additive identity fails at {a}")
        if mul(a, one) != a or mul(one, a) != a:
            failures.append(f"multiplicative identity fails at {a}")
        if add(a, neg(a)) != zero:
            failures.append(f"additive inverse fails at {a}")
        if failures:
            break

    def triples():
        if size <= exhaustive_limit:
            for a in range(size):
                for b in range(size):
                    for c in range(size):
                        yield a, b, c
        else:
            rng = random.Random(seed)
            for _ in range(samples):
                yield rng.randrange(size), rng.randrange(size), rng.randrange(size)

    for a, b, c in triples():
        if add(add(a, b), c) != add(a, add(b, c)):
            failures.append(f"addition not associative at {(a, b, c)}")
            break
        if add(a, b) != add(b, a):
            failures.append(f"addition not commutative at {(a, b)}")
            break
        if mul(mul(a, b), c) != mul(a, mul(b, c)):
            failures.append(f"multiplication not associative at {(a, b, c)}")
            break
        if mul(a, add(b, c)) != add(mul(a, b), mul(a, c)):
            failures.append(f"left distributivity fails at {(a, b, c)}")
            break
        if mul(add(b, c), a) != add(mul(b, a), mul(c, a)):
            failures.append(f"right distributivity fails at {(a, b, c)}")
            break
        if ring.commutative and mul(a, b) != mul(b, a):
            failures.append(f"multiplication not commutative at {(a, b)}")
            break
    return failures


# ---------------------------------------------------------------------------
# Elementwise classification


def nilpotent_profile(ring: FiniteRing) -> dict[int, int]:
    """Map each nilpotent element to the least n >= 1 with a**n == 0."""
    profile: dict[int, int] = {}
    for a in range(ring.size):
        p = a
        n = 1
        seen = set()
        while True:
            if p == ring.zero:
                profile[a] = n
                break
            if p in seen:
                break
            seen.add(p)
            p = ring.mul(p, a)
            n += 1
        # the power sequence cycles within ring.size steps, so the loop halts
    return profile


def zero_divisor_set(ring: FiniteRing) -> frozenset[int]:
    """Nonzero elements a admitting a nonzero b with a*b == 0."""
    out = set()
    mul = ring.mul
    for a in range(1, ring.size):
        for b in range(1, ring.size):
            if mul(a, b) == ring.zero:
                out.add(a)
                break
    return frozenset(out)
