"""Contravariant Gram forms on Verma levels and exact definiteness verdicts.

The form is fixed by contravariance <x u, w> = <u, theta(x) w> and the
normalization <v, v> = 1 on the highest weight vector, for a plus-type
anti-involution theta.  Products are reversed when theta is extended to
monomials, so the entry at (x, y) is the coefficient of the highest weight
vector in theta(f_k)...theta(f_1) x v, where y = f_1...f_k.  The form is
linear in its first slot and conjugate-linear in its second.

Definiteness is decided by LDL* with complete symmetric pivoting (largest
|diagonal| first).  When every remaining diagonal entry vanishes but an
off-diagonal one does not, the corresponding 2x2 principal block [[0,g],[g*,0]]
contributes one positive and one negative inertia count; leading principal
minors alone would misclassify such matrices.  Sylvester's law then turns the
exact pivot signs into an exact inertia triple, hence an exact verdict.
"""

from dataclasses import dataclass
from fractions import Fraction

from .algebra import AntiInvolution
from .errors import GramIntegrityError, UnsupportedInvolutionError
from .linalg import rank
from .scalars import Scalar, scalar
from .verma import EMPTY_MONOMIAL, HighestWeight, Sector, VermaModule

ZERO_S = Scalar.zero()
ONE_S = Scalar.one()

PD = "positive-definite"
PSD_SINGULAR = "positive-semidefinite-singular"
INDEFINITE = "indefinite"
NEGATIVE = "negative-containing"


@dataclass
class GramMatrix:
    level: int
    basis: list
    entries: list
    theta: object

    def dim(self):
        return len(self.basis)

    def is_hermitian(self):
        n = self.dim()
        for a in range(n):
            for b in range(a, n):
                if self.entries[b][a] != self.entries[a][b].conj():
                    return False
        return True

    def to_strings(self):
        return [[str(v) for v in row] for row in self.entries]


@dataclass
class DefinitenessVerdict:
    kind: str
    kernel_dim: int = 0
    witness: tuple = ()
    inertia: tuple = (0, 0, 0)

    def is_psd(self):
        return self.kind in (PD, PSD_SINGULAR)

    def describe(self):
        out = {"kind": self.kind, "kernelDim": self.kernel_dim,
               "inertia": list(self.inertia)}
        if self.witness:
            out["witness"] = list(self.witness)
        return out


def theta_tilde_apply(module, theta, mono, vec):
    """Apply theta(f_k)...theta(f_1) for mono = f_1...f_k to a module vector."""
    out = vec
    for f in mono.factors():
        g, c = theta.image_of(f)
        if out.is_zero():
            break
        out = c * module.act(g, out)
    return out


def pairing(module, theta, u, w):
    """<u, w> for arbitrary module vectors, conjugate-linear in w."""
    total = ZERO_S
    for mono, c in w.terms.items():
        moved = theta_tilde_apply(module, theta, mono, u)
        coeff = moved.terms.get(EMPTY_MONOMIAL)
        if coeff:
            total = total + c.conj() * coeff
    return total


def gram(module, theta, d):
    """Gram matrix of the level-d basis for the contravariant form of theta."""
    if theta.kind != "plus":
        raise UnsupportedInvolutionError(
            "contravariant Gram forms need a plus-type involution")
    basis = module.pbw_basis(d)
    n = len(basis)
    entries = [[ZERO_S] * n for _ in range(n)]
    for b, y in enumerate(basis):
        for a, x in enumerate(basis):
            moved = theta_tilde_apply(module, theta, y, module.basis_vector(x))
            entries[a][b] = moved.terms.get(EMPTY_MONOMIAL, ZERO_S)
    return GramMatrix(d, basis, entries, theta)


def gram_kernel_dim(g):
    """Kernel dimension via plain row reduction (independent of the LDL route)."""
    n = g.dim()
    if n == 0:
        return 0
    return n - rank(g.entries, n)


def definiteness(g):
    """Exact definiteness verdict for a Hermitian Gram matrix."""
    if not g.is_hermitian():
        raise GramIntegrityError("gram matrix is not Hermitian")
    n = g.dim()
    a = [[g.entries[r][c] for c in range(n)] for r in range(n)]
    active = list(range(n))
    n_pos = n_neg = n_zero = 0
    pivot_trail = []
    witness = ()
    while active:
        best = max(active, key=lambda k: abs(a[k][k].re))
        if a[best][best]:
            d = a[best][best].re
            pivot_trail.append(best)
            if d > 0:
                n_pos += 1
            else:
                n_neg += 1
            active.remove(best)
            dinv = Scalar(Fraction(1) / d)
            col = {r: a[r][best] for r in active}
            for r in active:
                cr = col[r]
                if not cr:
                    continue
                f = cr * dinv
                for c in active:
                    if col[c]:
                        a[r][c] = a[r][c] - f * col[c].conj()
            if not witness and n_pos and n_neg:
                witness = tuple(pivot_trail)
            continue
        # all remaining diagonals vanish
        pair = None
        for ii in active:
            for jj in active:
                if ii < jj and a[ii][jj]:
                    pair = (ii, jj)
                    break
            if pair:
                break
        if pair is None:
            n_zero += len(active)
            break
        ii, jj = pair
        gg = a[ii][jj]
        n_pos += 1
        n_neg += 1
        if not witness:
            witness = (ii, jj)
        active.remove(ii)
        active.remove(jj)
        gi = gg.inv()
        gci = gg.conj().inv()
        coli = {r: a[r][ii] for r in active}
        colj = {r: a[r][jj] for r in active}
        for r in active:
            for c in active:
                corr = (colj[r] * gi * coli[c].conj()
                        + coli[r] * gci * colj[c].conj())
                if corr:
                    a[r][c] = a[r][c] - corr
    inertia = (n_pos, n_neg, n_zero)
    if n_neg == 0:
        if n_zero == 0:
            return DefinitenessVerdict(PD, 0, (), inertia)
        return DefinitenessVerdict(PSD_SINGULAR, n_zero, (), inertia)
    if n_pos == 0:
        return DefinitenessVerdict(NEGATIVE, n_zero, (), inertia)
    return DefinitenessVerdict(INDEFINITE, n_zero, witness, inertia)


# -- closed-form Gram factors -----------------------------------------------


def phi_virasoro(h, c, a, b):
    """Exact value of the degree-two Gram factor for the Virasoro sub-case."""
    h = scalar(h)
    c = scalar(c)
    fac1 = h + Scalar(Fraction(a * a - 1, 24)) * (c - 13) + Scalar(Fraction(a * b - 1, 2))
    fac2 = h + Scalar(Fraction(b * b - 1, 24)) * (c - 13) + Scalar(Fraction(a * b - 1, 2))
    return fac1 * fac2 + Scalar(Fraction((a * a - b * b) ** 2, 16))


def phi_gap(hw, a, b):
    """The linear factor of the gap-p irreducibility criterion at (a, b)."""
    p = hw.p
    gap_sum = sum(Fraction(j * (p - j), p * p) for j in range(1, p))
    val = 4 * hw.l0 - Scalar(gap_sum)
    val = val + Scalar(Fraction(a * a - 1, 6)) * (hw.c_value(0) - (p + 12))
    return val + Scalar(2 * (a * b - 1))


def phi_gap_criterion(hw, a, b):
    """Combined criterion value: product of the two factor orders plus (a^2-b^2)^2."""
    return phi_gap(hw, a, b) * phi_gap(hw, b, a) + Scalar((a * a - b * b) ** 2)


def index_pairs(max_ab):
    """All (a, b) with a, b >= 1 and a*b <= max_ab, in a fixed scan order."""
    pairs = []
    for a in range(1, max_ab + 1):
        for b in range(1, max_ab // a + 1):
            pairs.append((a, b))
    return pairs


def gap_criterion_zeros(hw, max_ab):
    return [[a, b] for a, b in index_pairs(max_ab)
            if phi_gap_criterion(hw, a, b).is_zero()]


def virasoro_criterion_zeros(h, c, max_ab):
    return [[a, b] for a, b in index_pairs(max_ab)
            if phi_virasoro(h, c, a, b).is_zero()]


# -- reducibility oracle ------------------------------------------------------


def reducibility_report(module, max_level, theta=None, max_ab=None):
    """Level-by-level singular-vector and Gram-kernel scan.

    Both routes run when the weight is real; otherwise only the
    singular-vector route.  At the first level where either route fires the
    two dimensions must agree, which is asserted by the test suite rather
    than here.
    """
    hw = module.hw
    if theta is None:
        theta = AntiInvolution.plus(hw.p)
    use_gram = hw.is_real()
    levels = []
    first_singular = None
    for d in range(0, max_level + 1):
        dim = module.graded_dim(d)
        entry = {"d": d, "dim": dim}
        sing = len(module.singular_vectors(d)) if d >= 1 and dim else 0
        entry["singular"] = sing
        if use_gram:
            gm = gram(module, theta, d)
            entry["gramKernel"] = gram_kernel_dim(gm)
            entry["verdict"] = definiteness(gm).kind if dim else PD
        else:
            entry["gramKernel"] = None
            entry["verdict"] = None
        if first_singular is None and (sing or entry["gramKernel"]):
            first_singular = d
        levels.append(entry)
    report = {
        "phi": hw.describe(),
        "p": hw.p,
        "levels": levels,
        "firstSingularLevel": first_singular,
    }
    if max_ab:
        full_j = hw.j_set() == frozenset(range(1, hw.p))
        report["phiCriterion"] = {
            "applicable": full_j,
            "zeros": gap_criterion_zeros(hw, max_ab) if full_j else [],
        }
    return report


# -- Virasoro sub-case scan ----------------------------------------------------


def virasoro_weight(p, h, c):
    """Weight with only L_0 and C_0 values set; the Heisenberg centers vanish."""
    central = [scalar(c)] + [ZERO_S] * (p // 2)
    return HighestWeight(p, scalar(h), tuple(central))


def virasoro_module(alg, h, c):
    return VermaModule(alg, virasoro_weight(alg.p, h, c), Sector.virasoro())


def kac_scan(alg, c_values, h_values, max_vir_level, max_ab):
    """Compare the closed-form zero set with brute-force singular vectors.

    For each central charge, collects the grid weights where some criterion
    factor vanishes (index product bounded by max_ab) and the grid weights
    where a singular vector exists at Virasoro level <= max_vir_level.  The
    scan records which logical direction the comparison supports.
    """
    p = alg.p
    per_c = []
    all_equal = True
    for c in c_values:
        zero_h = []
        singular_h = []
        for h in h_values:
            if any(phi_virasoro(h, c, a, b).is_zero() for a, b in index_pairs(max_ab)):
                zero_h.append(str(scalar(h)))
            module = virasoro_module(alg, h, c)
            if any(module.singular_vectors(p * lvl)
                   for lvl in range(1, max_vir_level + 1)):
                singular_h.append(str(scalar(h)))
        equal = zero_h == singular_h
        all_equal = all_equal and equal
        per_c.append({
            "c": str(scalar(c)),
            "criterionZeroWeights": zero_h,
            "singularVectorWeights": singular_h,
            "setsEqual": equal,
        })
    return {
        "grid": per_c,
        "setsEqual": all_equal,
        "direction": ("zero of the criterion marks a reducible module"
                      if all_equal else "unresolved: sets differ"),
    }
