"""Modules of intermediate series V(a, b, F) and their predicates.

The basis is indexed by pairs (k, j) with k an integer and j a column of the
coefficient matrix F; the pair stands for the fused index k + j/p.  Actions:

    L_m (k, j)   -> -(a + k + j/p + b m)  at (m+k, j)
    I_m^i (k, j) -> F[i][j]               at the fused index m + k + (i+j)/p
    C_s          -> 0

When i + j reaches p the fused index carries into the integer part, so the
target pair is (m + k + (i+j)//p, (i+j) mod p); the window axiom check fails
for any other convention.
"""

from dataclasses import dataclass
from fractions import Fraction

from .algebra import KIND_C, KIND_L, AntiInvolution
from .errors import ConfigError
from .scalars import Scalar, scalar

ZERO_S = Scalar.zero()


@dataclass(frozen=True)
class FMatrix:
    """(p-1) x p coefficient matrix, rows 1..p-1, columns 0..p-1."""

    p: int
    rows: tuple

    @classmethod
    def make(cls, p, rows):
        rows = tuple(tuple(scalar(v) for v in row) for row in rows)
        if len(rows) != p - 1 or any(len(r) != p for r in rows):
            raise ConfigError("F must be (p-1) x p")
        return cls(p, rows)

    def entry(self, i, j):
        """F_{i,j} with 1 <= i <= p-1 and 0 <= j <= p-1."""
        return self.rows[i - 1][j]

    def col_set(self):
        return sorted({j for j in range(self.p)
                       if any(self.entry(i, j) for i in range(1, self.p))})

    def row_set(self):
        return sorted({i for i in range(1, self.p)
                       if any(self.entry(i, j) for j in range(self.p))})

    def to_strings(self):
        return [[str(v) for v in row] for row in self.rows]


def validate_f(f):
    """All compatibility and column-closure violations, empty when valid."""
    p = f.p
    violations = []
    for r in range(1, p):
        for s in range(1, p):
            for i in range(p):
                lhs = f.entry(s, i) * f.entry(r, (i + s) % p)
                rhs = f.entry(r, i) * f.entry(s, (i + r) % p)
                if lhs != rhs:
                    violations.append({"kind": "compatibility", "r": r, "s": s, "i": i})
    cols = set(f.col_set())
    for i in f.row_set():
        for j in cols:
            if (i + j) % p not in cols:
                violations.append({"kind": "column-closure", "i": i, "j": j})
    return violations


class SeriesModule:
    """V(a, b, F) with exact basis bookkeeping on pairs (k, j)."""

    def __init__(self, alg, a, b, f, allow_invalid=False):
        if f.p != alg.p:
            raise ConfigError("F matrix and algebra disagree on p")
        self.alg = alg
        self.a = scalar(a)
        self.b = scalar(b)
        self.f = f
        self.violations = validate_f(f)
        if self.violations and not allow_invalid:
            raise ConfigError("invalid F matrix: %s" % self.violations[0])
        self.columns = f.col_set()

    def act_basis(self, g, k, j):
        """Image of the basis vector at (k, j): a (coefficient, target) pair."""
        p = self.alg.p
        if j not in self.columns:
            raise ConfigError("column %d is not in col(F)" % j)
        if g.kind == KIND_C:
            return ZERO_S, None
        if g.kind == KIND_L:
            coeff = -(self.a + Scalar(k) + Scalar(Fraction(j, p)) + self.b * g.n)
            return coeff, (g.n + k, j)
        coeff = self.f.entry(g.i, j)
        if not coeff:
            return ZERO_S, None
        fused = g.i + j
        return coeff, (g.n + k + fused // p, fused % p)

    def act_vector(self, g, terms):
        """Action on a dict {(k, j): Scalar}."""
        out = {}
        for (k, j), c in terms.items():
            coeff, target = self.act_basis(g, k, j)
            val = c * coeff
            if target is not None and val:
                tot = out.get(target, ZERO_S) + val
                if tot:
                    out[target] = tot
                elif target in out:
                    del out[target]
        return out

    def axiom_check(self, window):
        """Bracket action equals commutator of actions on a finite window."""
        alg = self.alg
        p = alg.p
        gens = [alg.L(n) for n in range(-window, window + 1)]
        gens += [alg.I(n, i) for n in range(-window, window + 1) for i in range(1, p)]
        gens += [alg.C(j) for j in range(p // 2 + 1)]
        for gx in gens:
            for gy in gens:
                bracket = alg.bracket_gens(gx, gy)
                for j in self.columns:
                    for k in range(-window, window + 1):
                        start = {(k, j): Scalar.one()}
                        lhs = {}
                        for m, c in self.act_vector(gy, start).items():
                            for m2, c2 in self.act_vector(gx, {m: c}).items():
                                lhs[m2] = lhs.get(m2, ZERO_S) + c2
                        for m, c in self.act_vector(gx, start).items():
                            for m2, c2 in self.act_vector(gy, {m: c}).items():
                                lhs[m2] = lhs.get(m2, ZERO_S) - c2
                        rhs = {}
                        for h, ch in bracket:
                            for m, c in self.act_vector(h, {(k, j): ch}).items():
                                rhs[m] = rhs.get(m, ZERO_S) + c
                        lhs = {m: c for m, c in lhs.items() if c}
                        rhs = {m: c for m, c in rhs.items() if c}
                        if lhs != rhs:
                            return {"pass": False,
                                    "witness": {"x": str(gx), "y": str(gy),
                                                "k": k, "j": j}}
        return {"pass": True, "witness": None}

    def column_restriction_matches(self, j, window):
        """The L-action on column j matches the rank-one module at a + j/p."""
        shift = self.a + Scalar(Fraction(j, self.alg.p))
        for n in range(-window, window + 1):
            for k in range(-window, window + 1):
                coeff, target = self.act_basis(self.alg.L(n), k, j)
                expected = -(shift + Scalar(k) + self.b * n)
                if coeff != expected or target != (n + k, j):
                    return False
        return True


def delta_form_contravariant(module, beta, window):
    """Check <g u, w> = <u, theta(g) w> for the orthonormal delta form."""
    alg = module.alg
    theta = AntiInvolution.plus(alg.p, 1, beta)
    gens = [alg.L(n) for n in range(-window, window + 1)]
    gens += [alg.I(n, i) for n in range(-window, window + 1)
             for i in range(1, alg.p)]
    basis = [(k, j) for k in range(-window, window + 1) for j in module.columns]
    for g in gens:
        gh, ch = theta.image_of(g)
        for u in basis:
            img = module.act_vector(g, {u: Scalar.one()})
            for w in basis:
                lhs = img.get(w, ZERO_S)
                back = module.act_vector(gh, {w: ch})
                rhs = back.get(u, ZERO_S).conj()
                if lhs != rhs:
                    return False
    return True


def series_predicates(module, beta):
    """Closed-form reducibility and unitarity verdicts with per-condition flags.

    The reducibility formula is evaluated literally on the supplied matrix;
    the validation status travels alongside so callers can see when the
    matrix fails the closure constraints that every honest single-column
    matrix necessarily violates.
    """
    a, b, f = module.a, module.b, module.f
    p = module.alg.p
    beta = [scalar(x) for x in beta]
    if len(beta) != p - 1:
        raise ConfigError("need %d beta values" % (p - 1))
    for i in range(1, p):
        if beta[i - 1].conj() * beta[p - i - 1] != Scalar.one():
            raise ConfigError("beta must satisfy conj(beta_i) beta_{p-i} = 1")

    cols = module.columns
    reducible = (len(cols) == 1 and a.is_real() and a.re.denominator == 1
                 and not a.im and b in (Scalar(0), Scalar(1)))

    failures = []
    if not a.is_real():
        failures.append("a-not-real")
    if b.re != Fraction(1, 2):
        failures.append("b-real-part-not-one-half")
    sym_ok = True
    for j in cols:
        for i in range(1, p):
            lhs = beta[p - i - 1] * f.entry(p - i, (i + j) % p)
            if lhs != f.entry(i, j).conj():
                sym_ok = False
    if not sym_ok:
        failures.append("delta-form-symmetry")
    unitary = not failures

    report = {
        "reducible": reducible,
        "unitary": unitary,
        "failures": failures,
        "colF": cols,
        "fValidation": module.violations,
        "aIsZero": a.is_zero(),
    }
    if unitary:
        report["deltaFormSelfTest"] = delta_form_contravariant(module, beta, 3)
    return report
