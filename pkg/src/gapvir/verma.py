"""PBW bases and straightening for Verma modules over the gap-p algebra.

Grading is by "p-level": the L_0-eigenvalue shift from the highest weight,
scaled by p so every level is a non-negative integer.  A factor L_{-n}
contributes n*p, a factor I_{-m}^i contributes m*p - i.  Since the two
families cover the multiples of p and the non-multiples of p respectively,
monomials of p-level d correspond exactly to integer partitions of d (for the
unrestricted module), and a basis enumeration is a partition enumeration.

A monomial is kept in canonical order: L-factors to the left of I-factors,
L-factors by depth descending, I-factors by (m, i) descending.  Negative-mode
I-factors commute with each other (their bracket needs m + m' = 1, impossible
for m, m' >= 1), so the I-block carries no ordering corrections.

Straightening is rightmost-first: a generator applied to a canonical monomial
is either prepended (when the canonical order allows) or commuted past the
leading factor, trading the pair for a bracket term at lower p-level.  Results
are memoized per module, keyed by (generator, monomial).
"""

from dataclasses import dataclass
from fractions import Fraction

from .algebra import KIND_C, KIND_I, KIND_L, Element, Gen
from .errors import ConfigError
from .linalg import nullspace
from .scalars import Scalar, scalar

ZERO_S = Scalar.zero()
ONE_S = Scalar.one()


@dataclass(frozen=True)
class PBWMonomial:
    """Ordered product of lowering generators applied to the highest weight vector.

    lparts: depths n of the L_{-n} factors, descending.
    iparts: pairs (m, i) of the I_{-m}^i factors, descending lexicographically.
    """

    lparts: tuple = ()
    iparts: tuple = ()

    def plevel(self, p):
        return sum(n * p for n in self.lparts) + sum(m * p - i for m, i in self.iparts)

    def degree(self):
        return len(self.lparts) + len(self.iparts)

    def is_empty(self):
        return not self.lparts and not self.iparts

    def leading(self):
        """Label of the leftmost factor; None on the empty monomial."""
        if self.lparts:
            return Gen(KIND_L, -self.lparts[0])
        if self.iparts:
            m, i = self.iparts[0]
            return Gen(KIND_I, -m, i)
        return None

    def tail(self):
        if self.lparts:
            return PBWMonomial(self.lparts[1:], self.iparts)
        return PBWMonomial(self.lparts, self.iparts[1:])

    def factors(self):
        gens = [Gen(KIND_L, -n) for n in self.lparts]
        gens += [Gen(KIND_I, -m, i) for m, i in self.iparts]
        return gens

    def text(self):
        body = "".join("L[%d]" % -n for n in self.lparts)
        body += "".join("I[%d,%d]" % (-m, i) for m, i in self.iparts)
        return body + "|hw"

    def __str__(self):
        return self.text()


EMPTY_MONOMIAL = PBWMonomial((), ())


def _rank(g):
    """Canonical factor order: any L-factor outranks any I-factor."""
    if g.kind == KIND_L:
        return (1, -g.n, 0)
    return (0, -g.n, g.i)


@dataclass(frozen=True)
class Sector:
    """Which lowering generators a Verma sub-case uses.

    The unrestricted module takes every generator; the Virasoro sub-case only
    L-factors; Heisenberg-type sub-cases only I-factors with index in a fixed
    symmetric set.  Generators of I-type outside the set act as zero (the
    trivial extension), while L-generators on an L-free sector are rejected.
    """

    include_l: bool
    i_indices: frozenset

    @classmethod
    def full(cls, p):
        return cls(True, frozenset(range(1, p)))

    @classmethod
    def virasoro(cls):
        return cls(True, frozenset())

    @classmethod
    def heisenberg(cls, indices):
        return cls(False, frozenset(indices))

    @classmethod
    def complement(cls, p, j_set):
        return cls(True, frozenset(range(1, p)) - frozenset(j_set))


@dataclass(frozen=True)
class HighestWeight:
    """Values of the highest weight on L_0 and C_0..C_{floor(p/2)}."""

    p: int
    l0: Scalar
    c: tuple

    def __post_init__(self):
        if self.p < 2:
            raise ConfigError("p must be >= 2")
        if len(self.c) != self.p // 2 + 1:
            raise ConfigError("need %d central values C_0..C_%d"
                              % (self.p // 2 + 1, self.p // 2))

    @classmethod
    def make(cls, p, l0, c_values):
        return cls(p, scalar(l0), tuple(scalar(v) for v in c_values))

    def c_value(self, j):
        """phi(C_j) for 0 <= j <= p-1, through the alias C_j = C_{p-j}."""
        return self.c[min(j, self.p - j)]

    def j_set(self):
        """The symmetric set J = {i : phi(C_i) != 0}."""
        return frozenset(i for i in range(1, self.p) if self.c_value(i))

    def is_real(self):
        return self.l0.is_real() and all(v.is_real() for v in self.c)

    def describe(self):
        out = {"p": self.p, "l0": str(self.l0)}
        for j, v in enumerate(self.c):
            out["c%d" % j] = str(v)
        return out


class ModuleVector:
    """Finite combination of PBW monomials over one module."""

    __slots__ = ("module", "terms")

    def __init__(self, module, terms=None):
        self.module = module
        self.terms = {}
        if terms:
            for m, c in terms.items():
                c = scalar(c)
                if c:
                    self.terms[m] = c

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            tot = out.get(m, ZERO_S) + c
            if tot:
                out[m] = tot
            elif m in out:
                del out[m]
        return ModuleVector(self.module, out)

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, c):
        c = scalar(c)
        if not c:
            return ModuleVector(self.module)
        return ModuleVector(self.module, {m: c * v for m, v in self.terms.items()})

    __mul__ = __rmul__

    def __neg__(self):
        return (-1) * self

    def __eq__(self, other):
        return (isinstance(other, ModuleVector) and self.module is other.module
                and self.terms == other.terms)

    def max_plevel(self):
        p = self.module.alg.p
        return max((m.plevel(p) for m in self.terms), default=0)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda t: (t.lparts, t.iparts), reverse=True):
            c = self.terms[m]
            cs = str(c)
            if c.im:
                cs = "(%s)" % cs
            parts.append("%s*%s" % (cs, m.text()))
        return " + ".join(parts)


class VermaModule:
    """A Verma module (or restricted sub-case) with exact straightening."""

    def __init__(self, alg, hw, sector=None):
        if hw.p != alg.p:
            raise ConfigError("highest weight built for p=%d, algebra has p=%d"
                              % (hw.p, alg.p))
        self.alg = alg
        self.hw = hw
        self.sector = sector if sector is not None else Sector.full(alg.p)
        self._act_cache = {}
        self._basis_cache = {}

    # -- basis ---------------------------------------------------------

    def _part_sizes(self, d):
        """Allowed factor sizes up to d: size n*p for L_{-n}, m*p - i for I_{-m}^i."""
        p = self.alg.p
        sizes = []
        for s in range(1, d + 1):
            r = s % p
            if r == 0:
                if self.sector.include_l:
                    sizes.append(s)
            elif (p - r) in self.sector.i_indices:
                sizes.append(s)
        return sizes

    def pbw_basis(self, d):
        """All monomials of p-level d, in canonical descending order."""
        if d < 0:
            raise ConfigError("p-level must be >= 0")
        cached = self._basis_cache.get(d)
        if cached is not None:
            return cached
        p = self.alg.p
        sizes = self._part_sizes(d)
        out = []

        def build(remaining, max_size, chosen):
            if remaining == 0:
                lparts = tuple(sorted((s // p for s in chosen if s % p == 0), reverse=True))
                iparts = tuple(sorted((((s + (p - s % p)) // p, p - s % p)
                                       for s in chosen if s % p != 0), reverse=True))
                out.append(PBWMonomial(lparts, iparts))
                return
            for s in sizes:
                if s <= min(remaining, max_size):
                    build(remaining - s, s, chosen + (s,))

        build(d, d if d else 1, ())
        out.sort(key=lambda m: (m.lparts, m.iparts), reverse=True)
        self._basis_cache[d] = out
        return out

    def graded_dim(self, d):
        return len(self.pbw_basis(d))

    def highest_vector(self):
        return ModuleVector(self, {EMPTY_MONOMIAL: ONE_S})

    def vector(self, terms):
        return ModuleVector(self, terms)

    def basis_vector(self, mono):
        return ModuleVector(self, {mono: ONE_S})

    # -- action ----------------------------------------------------------

    def act(self, g, vec):
        """Action of a basis generator on a module vector."""
        out = {}
        for mono, c in vec.terms.items():
            for m2, c2 in self.act_gen(g, mono).items():
                tot = out.get(m2, ZERO_S) + c * c2
                if tot:
                    out[m2] = tot
                elif m2 in out:
                    del out[m2]
        return ModuleVector(self, out)

    def act_element(self, x, vec):
        """Action of an algebra element, extended linearly."""
        out = ModuleVector(self)
        for g, c in x.terms.items():
            out = out + c * self.act(g, vec)
        return out

    def act_gen(self, g, mono):
        """Straightened action of one generator on one monomial, memoized."""
        key = (g, mono)
        hit = self._act_cache.get(key)
        if hit is not None:
            return hit
        res = self._act_gen_raw(g, mono)
        self._act_cache[key] = res
        return res

    def _act_gen_raw(self, g, mono):
        alg = self.alg
        p = alg.p
        if g.kind == KIND_C:
            c = self.hw.c_value(g.n)
            return {mono: c} if c else {}
        if g.kind == KIND_L:
            if not self.sector.include_l:
                raise ConfigError("L-generators do not act on this sector")
            if g.n == 0:
                c = self.hw.l0 + Scalar(Fraction(mono.plevel(p), p))
                return {mono: c} if c else {}
            lowering = g.n < 0
        else:
            if g.i not in self.sector.i_indices:
                return {}
            lowering = g.n < 0
        lead = mono.leading()
        if lead is None:
            # acting on the highest weight vector
            if lowering:
                return {self._prepended(g, mono): ONE_S}
            return {}
        if lowering and _rank(g) >= _rank(lead):
            return {self._prepended(g, mono): ONE_S}
        # commute g past the leading factor: g f = f g + [g, f]
        tail = mono.tail()
        out = {}
        for m2, c2 in self.act_gen(g, tail).items():
            for m3, c3 in self.act_gen(lead, m2).items():
                tot = out.get(m3, ZERO_S) + c2 * c3
                if tot:
                    out[m3] = tot
                elif m3 in out:
                    del out[m3]
        for h, ch in alg.bracket_gens(g, lead):
            for m2, c2 in self.act_gen(h, tail).items():
                tot = out.get(m2, ZERO_S) + ch * c2
                if tot:
                    out[m2] = tot
                elif m2 in out:
                    del out[m2]
        return out

    @staticmethod
    def _prepended(g, mono):
        if g.kind == KIND_L:
            return PBWMonomial((-g.n,) + mono.lparts, mono.iparts)
        return PBWMonomial(mono.lparts, ((-g.n, g.i),) + mono.iparts)

    # -- raising structure ---------------------------------------------

    def raising_set(self):
        """Finite generating set of the raising subalgebra for this sector."""
        gens = []
        if self.sector.include_l:
            gens += [self.alg.L(1), self.alg.L(2)]
        gens += [self.alg.I(0, i) for i in sorted(self.sector.i_indices)]
        return gens

    def singular_vectors(self, d, raising=None):
        """Exact basis of level-d vectors killed by the raising set."""
        if d < 1:
            raise ConfigError("singular vectors live at p-level >= 1")
        basis = self.pbw_basis(d)
        if not basis:
            return []
        gens = raising if raising is not None else self.raising_set()
        p = self.alg.p
        rows = []
        for g in gens:
            shift = -self.alg.weight_of(g) * p  # positive drop in p-level
            target = d - int(shift)
            if target < 0:
                continue
            tgt_basis = self.pbw_basis(target)
            index = {m: k for k, m in enumerate(tgt_basis)}
            cols = []
            for mono in basis:
                image = self.act_gen(g, mono)
                col = [ZERO_S] * len(tgt_basis)
                for m2, c2 in image.items():
                    col[index[m2]] = c2
                cols.append(col)
            for r in range(len(tgt_basis)):
                rows.append([cols[k][r] for k in range(len(basis))])
        sols = nullspace(rows, len(basis))
        return [ModuleVector(self, {m: c for m, c in zip(basis, sol) if c})
                for sol in sols]

    def commutator_defect(self, g1, g2, vec):
        """act(g1)act(g2) - act(g2)act(g1) - act([g1,g2]) applied to vec."""
        lhs = self.act(g1, self.act(g2, vec)) - self.act(g2, self.act(g1, vec))
        br = Element(self.alg.p, dict(self.alg.bracket_gens(g1, g2)))
        return lhs - self.act_element(br, vec)


def partition_count(n, cache={0: 1}):
    """Partition numbers by Euler's pentagonal recurrence (independent of enumeration)."""
    if n < 0:
        return 0
    if n in cache:
        return cache[n]
    for m in range(max(cache) + 1, n + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > m and g2 > m:
                break
            sign = 1 if k % 2 else -1
            if g1 <= m:
                total += sign * cache[m - g1]
            if g2 <= m:
                total += sign * cache[m - g2]
            k += 1
        cache[m] = total
    return cache[n]
