"""The gap-p Virasoro algebra.

Fix an integer p >= 2.  The algebra has basis L_n (Virasoro part), I_n^i with
1 <= i <= p-1 (fractional-weight Heisenberg part) and central elements C_j
with 0 <= j <= floor(p/2), subject to

    [L_m, L_n]     = (m-n) L_{m+n} + (m^3-m)/12 * C_0            (if m+n = 0)
    [L_m, I_n^i]   = -(n + i/p) I_{m+n}^i
    [I_m^i, I_n^j] = (m + i/p) C_{min(i,p-i)}      (if i+j = p and m+n+1 = 0)

with every C central.  Central indices obey the alias C_i = C_{p-i}, which is
normalized away at construction: stored indices always satisfy j <= floor(p/2).
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigError
from .scalars import ONE, Scalar, scalar

KIND_L = "L"
KIND_I = "I"
KIND_C = "C"


@dataclass(frozen=True)
class Gen:
    """A basis label: L[n], I[n,i] or C[j] (C-index already alias-normalized)."""

    kind: str
    n: int = 0
    i: int = 0

    def __str__(self):
        if self.kind == KIND_L:
            return "L[%d]" % self.n
        if self.kind == KIND_I:
            return "I[%d,%d]" % (self.n, self.i)
        return "C[%d]" % self.n


def _sort_key(g):
    rank = {KIND_L: 0, KIND_I: 1, KIND_C: 2}[g.kind]
    return (rank, g.n, g.i)


class Element:
    """A finite Q(i)-linear combination of basis labels of one algebra."""

    __slots__ = ("p", "terms")

    def __init__(self, p, terms=None):
        self.p = p
        self.terms = {}
        if terms:
            for g, c in terms.items() if isinstance(terms, dict) else terms:
                c = scalar(c)
                if c:
                    acc = self.terms.get(g)
                    tot = c if acc is None else acc + c
                    if tot:
                        self.terms[g] = tot
                    elif g in self.terms:
                        del self.terms[g]

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if self.p != other.p:
            raise ConfigError("elements over different p")
        out = dict(self.terms)
        for g, c in other.terms.items():
            tot = out.get(g, ZERO_S) + c
            if tot:
                out[g] = tot
            elif g in out:
                del out[g]
        return Element(self.p, out)

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, c):
        c = scalar(c)
        if not c:
            return Element(self.p)
        return Element(self.p, {g: c * v for g, v in self.terms.items()})

    __mul__ = __rmul__

    def __neg__(self):
        return (-1) * self

    def __eq__(self, other):
        return isinstance(other, Element) and self.p == other.p and self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for g in sorted(self.terms, key=_sort_key):
            c = self.terms[g]
            cs = str(c)
            if c.im:
                cs = "(%s)" % cs  # keep the coefficient's "*i" out of the term grammar
            parts.append("%s*%s" % (cs, g))
        return " + ".join(parts)

    def __repr__(self):
        return "Element(p=%d, %s)" % (self.p, self)


ZERO_S = Scalar.zero()


@dataclass(frozen=True)
class AntiInvolution:
    """A conjugate-linear anti-involution theta of the gap-p algebra.

    kind "plus":  L_n -> a^n L_{-n},  I_n^i -> a^n b_{p-i} I_{-n-1}^{p-i},
                  C_0 -> C_0,         C_i -> a^{-1} b_i b_{p-i} C_i,
                  with a real nonzero and conj(b_i) b_{p-i} = a for all i.
    kind "minus": L_n -> -a^n L_n,    I_n^i -> a^n b_i I_n^i,
                  C_0 -> -C_0,        C_i -> -a^{-1} b_i b_{p-i} C_i,
                  with a and every b_i of modulus one.
    """

    p: int
    kind: str
    alpha: Scalar
    beta: tuple

    def __post_init__(self):
        if self.kind not in ("plus", "minus"):
            raise ConfigError("involution kind must be 'plus' or 'minus'")
        if len(self.beta) != self.p - 1:
            raise ConfigError("need %d beta values, got %d" % (self.p - 1, len(self.beta)))
        if self.alpha.is_zero():
            raise ConfigError("alpha must be nonzero")
        if self.kind == "plus":
            if not self.alpha.is_real():
                raise ConfigError("plus involution needs real alpha")
            for i in range(1, self.p):
                if self._b(i).conj() * self._b(self.p - i) != self.alpha:
                    raise ConfigError(
                        "plus involution needs conj(beta_%d)*beta_%d = alpha" % (i, self.p - i))
        else:
            if self.alpha.norm2() != 1:
                raise ConfigError("minus involution needs |alpha| = 1")
            for i in range(1, self.p):
                if self._b(i).norm2() != 1:
                    raise ConfigError("minus involution needs |beta_%d| = 1" % i)

    def _b(self, i):
        return self.beta[i - 1]

    @classmethod
    def plus(cls, p, alpha=1, beta=None):
        alpha = scalar(alpha)
        if beta is None:
            beta = [ONE] * (p - 1)
        return cls(p, "plus", alpha, tuple(scalar(b) for b in beta))

    @classmethod
    def minus(cls, p, alpha=1, beta=None):
        alpha = scalar(alpha)
        if beta is None:
            beta = [ONE] * (p - 1)
        return cls(p, "minus", alpha, tuple(scalar(b) for b in beta))

    def image_of(self, g):
        """Image of one basis label as a (Gen, Scalar) pair."""
        a = self.alpha
        if self.kind == "plus":
            if g.kind == KIND_L:
                return Gen(KIND_L, -g.n), a ** g.n
            if g.kind == KIND_I:
                return Gen(KIND_I, -g.n - 1, self.p - g.i), (a ** g.n) * self._b(self.p - g.i)
            if g.n == 0:
                return g, ONE
            return g, (a ** -1) * self._b(g.n) * self._b(self.p - g.n)
        if g.kind == KIND_L:
            return g, -(a ** g.n)
        if g.kind == KIND_I:
            return g, (a ** g.n) * self._b(g.i)
        if g.n == 0:
            return g, -ONE
        return g, -(a ** -1) * self._b(g.n) * self._b(self.p - g.n)


class GapVirasoro:
    """The gap-p Virasoro algebra for one fixed p >= 2."""

    def __init__(self, p):
        if not isinstance(p, int) or p < 2:
            raise ConfigError("p must be an integer >= 2")
        self.p = p

    # -- basis labels --------------------------------------------------

    def L(self, n):
        return Gen(KIND_L, n)

    def I(self, n, i):
        if not 1 <= i <= self.p - 1:
            raise ConfigError("I-index must satisfy 1 <= i <= p-1, got %d" % i)
        return Gen(KIND_I, n, i)

    def C(self, j):
        if not 0 <= j <= self.p - 1:
            raise ConfigError("C-index must satisfy 0 <= j <= p-1, got %d" % j)
        return Gen(KIND_C, min(j, self.p - j))

    def gen_element(self, g, coeff=1):
        return Element(self.p, {g: scalar(coeff)})

    def basis_window(self, lo, hi):
        """All basis labels with mode in [lo, hi], plus every central C_j."""
        gens = [self.L(n) for n in range(lo, hi + 1)]
        gens += [self.I(n, i) for n in range(lo, hi + 1) for i in range(1, self.p)]
        gens += [self.C(j) for j in range(0, self.p // 2 + 1)]
        return gens

    # -- structure -----------------------------------------------------

    def bracket_gens(self, a, b):
        """[a, b] for basis labels, as a list of (Gen, Scalar) terms."""
        p = self.p
        if a.kind == KIND_C or b.kind == KIND_C:
            return []
        if a.kind == KIND_L and b.kind == KIND_L:
            m, n = a.n, b.n
            out = []
            if m != n:
                out.append((self.L(m + n), Scalar(m - n)))
            if m + n == 0:
                c = Fraction(m ** 3 - m, 12)
                if c:
                    out.append((self.C(0), Scalar(c)))
            return out
        if a.kind == KIND_L and b.kind == KIND_I:
            coeff = -Fraction(b.n * p + b.i, p)
            if not coeff:
                return []
            return [(self.I(a.n + b.n, b.i), Scalar(coeff))]
        if a.kind == KIND_I and b.kind == KIND_L:
            return [(g, -c) for g, c in self.bracket_gens(b, a)]
        # I with I: needs i+j = p and m+n+1 = 0
        if a.i + b.i == p and a.n + b.n + 1 == 0:
            return [(self.C(a.i), Scalar(Fraction(a.n * p + a.i, p)))]
        return []

    def bracket(self, x, y):
        """Bilinear extension of the basis relations."""
        if x.p != self.p or y.p != self.p:
            raise ConfigError("bracket operands built over a different p")
        acc = {}
        for gx, cx in x.terms.items():
            for gy, cy in y.terms.items():
                c = cx * cy
                for g, s in self.bracket_gens(gx, gy):
                    tot = acc.get(g, ZERO_S) + c * s
                    if tot:
                        acc[g] = tot
                    elif g in acc:
                        del acc[g]
        return Element(self.p, acc)

    def weight_of(self, g):
        """ad-L_0 eigenvalue: -n for L_n, -(n + i/p) for I_n^i, 0 for C_j."""
        if g.kind == KIND_L:
            return Fraction(-g.n)
        if g.kind == KIND_I:
            return -Fraction(g.n * self.p + g.i, self.p)
        return Fraction(0)

    def apply_involution(self, theta, x):
        """Conjugate-linear extension of theta to an element."""
        if theta.p != self.p or x.p != self.p:
            raise ConfigError("involution and element disagree on p")
        acc = {}
        for g, c in x.terms.items():
            h, s = theta.image_of(g)
            tot = acc.get(h, ZERO_S) + c.conj() * s
            if tot:
                acc[h] = tot
            elif h in acc:
                del acc[h]
        return Element(self.p, acc)

    def chevalley(self, x):
        """Order-two linear automorphism exchanging raising and lowering parts.

        L_n -> -L_{-n}, I_n^i -> -I_{-n-1}^{p-i}, C_j -> -C_j.  The I-mode
        shift mirrors the one in the plus-type anti-involutions; it is the
        unique choice compatible with the mixed bracket, since I_{-n-1}^{p-i}
        is the basis label of weight opposite to I_n^i.
        """
        acc = {}
        for g, c in x.terms.items():
            if g.kind == KIND_L:
                h = self.L(-g.n)
            elif g.kind == KIND_I:
                h = self.I(-g.n - 1, self.p - g.i)
            else:
                h = g
            tot = acc.get(h, ZERO_S) - c
            if tot:
                acc[h] = tot
            elif h in acc:
                del acc[h]
        return Element(self.p, acc)

    # -- text ------------------------------------------------------------

    def parse_element(self, text):
        """Parse "c*L[n] + c*I[n,i] + c*C[j]" sums; bare labels mean coefficient 1."""
        s = text.strip()
        if s == "0":
            return Element(self.p)
        acc = {}
        for chunk in _split_terms(s):
            g, c = self._parse_term(chunk)
            tot = acc.get(g, ZERO_S) + c
            if tot:
                acc[g] = tot
            elif g in acc:
                del acc[g]
        return Element(self.p, acc)

    def _parse_term(self, chunk):
        import re as _re

        m = _re.match(r"^(?:(?P<coef>\([^)]*\)|[^*\[\]]*)\*)?(?P<kind>[LIC])\[(?P<idx>[-0-9,\s]+)\]$",
                      chunk.replace(" ", ""))
        if not m:
            raise ConfigError("cannot parse term %r" % chunk)
        coef = m.group("coef")
        c = ONE if coef is None else scalar(coef.strip("()"))
        idx = [int(t) for t in m.group("idx").split(",")]
        kind = m.group("kind")
        if kind == KIND_L:
            if len(idx) != 1:
                raise ConfigError("L takes one index: %r" % chunk)
            return self.L(idx[0]), c
        if kind == KIND_I:
            if len(idx) != 2:
                raise ConfigError("I takes two indices: %r" % chunk)
            return self.I(idx[0], idx[1]), c
        if len(idx) != 1:
            raise ConfigError("C takes one index: %r" % chunk)
        return self.C(idx[0]), c


def _split_terms(s):
    """Split a rendered element on top-level ' + ' while keeping parenthesized coefficients intact."""
    parts = []
    depth = 0
    cur = []
    i = 0
    while i < len(s):
        ch = s[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and s.startswith(" + ", i):
            parts.append("".join(cur))
            cur = []
            i += 3
            continue
        cur.append(ch)
        i += 1
    parts.append("".join(cur))
    return [t for t in (t.strip() for t in parts) if t]


# -- seeded sampling and axiom checks ----------------------------------------


def sample_involution(alg, rng, kind):
    """Draw a random valid anti-involution from a seeded generator.

    Plus type: when p is even the constraint at i = p/2 forces alpha to be a
    positive square norm, so alpha is derived from the middle beta; otherwise
    alpha is a free nonzero rational.  Minus type: unit-modulus values are
    drawn at Pythagorean points so the modulus condition is exact.
    """
    p = alg.p

    def rand_rational(nonzero=False):
        while True:
            q = Fraction(rng.randint(-6, 6), rng.randint(1, 6))
            if nonzero and not q:
                continue
            return q

    def rand_scalar_nonzero():
        while True:
            s = Scalar(rand_rational(), rand_rational())
            if s:
                return s

    def rand_unit():
        while True:
            a = rng.randint(-4, 4)
            b = rng.randint(-4, 4)
            if a or b:
                n = a * a + b * b
                return Scalar(Fraction(a * a - b * b, n), Fraction(2 * a * b, n))

    if kind == "plus":
        beta = [None] * (p - 1)
        if p % 2 == 0:
            mid = rand_scalar_nonzero()
            beta[p // 2 - 1] = mid
            alpha = Scalar(mid.norm2())
        else:
            alpha = Scalar(rand_rational(nonzero=True))
        for i in range(1, (p + 1) // 2):
            b = rand_scalar_nonzero()
            beta[i - 1] = b
            beta[p - i - 1] = alpha / b.conj()
        return AntiInvolution.plus(p, alpha, beta)
    return AntiInvolution.minus(p, rand_unit(), [rand_unit() for _ in range(p - 1)])


def involution_axiom_report(alg, theta, lo=-4, hi=4):
    """Exact axiom checks for one anti-involution on the mode window [lo, hi].

    Covers theta^2 = id, conjugate-linearity, anti-multiplicativity, and
    stability of the Virasoro and Heisenberg spans.
    """
    window = alg.basis_window(lo, hi)
    checks = {"square": True, "conjugateLinear": True,
              "antiMultiplicative": True, "stability": True}
    probe = Scalar(Fraction(2, 3), Fraction(1, 5))
    for g in window:
        x = alg.gen_element(g)
        if alg.apply_involution(theta, alg.apply_involution(theta, x)) != x:
            checks["square"] = False
        if (alg.apply_involution(theta, probe * x)
                != probe.conj() * alg.apply_involution(theta, x)):
            checks["conjugateLinear"] = False
        image = alg.apply_involution(theta, x)
        kinds = {_span_tag(h) for h in image.terms}
        allowed = {"L": {"L", "C0"}, "C0": {"C0"}, "I": {"I", "C+"}, "C+": {"C+"}}
        if not kinds <= allowed[_span_tag(g)]:
            checks["stability"] = False
    for gx in window:
        x = alg.gen_element(gx)
        tx = alg.apply_involution(theta, x)
        for gy in window:
            y = alg.gen_element(gy)
            lhs = alg.apply_involution(theta, alg.bracket(x, y))
            rhs = alg.bracket(alg.apply_involution(theta, y), tx)
            if lhs != rhs:
                checks["antiMultiplicative"] = False
    return checks


def _span_tag(g):
    if g.kind == KIND_C:
        return "C0" if g.n == 0 else "C+"
    return g.kind
