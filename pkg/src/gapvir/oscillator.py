"""Fock-space realization: Virasoro operators as normal-ordered quadratics.

On the Heisenberg Verma module with symmetric index set J the full algebra
acts: I-generators with index in J act as themselves, those outside J by
zero, C_0 by |J|, and

    L_n = sum_{j in J} 1/(2 phi(C_j)) sum_k :I_k^j I_{n-k-1}^{p-j}:
          + [n = 0] * sum_{j in J} j(p-j)/(4p^2),

with :A_k B_l: = A_k B_l if k < l and B_l A_k otherwise.  On a vector of
p-level d the mode sum truncates exactly: a term is nonzero only if its
rightmost factor does not drop below level zero, so only modes
max(k, n-k-1) <= (d-1)/p survive (all modes when both factors create).  The
bound is recomputed per call from the vector itself.

The quadratic sum is generic over any module whose sector contains the J
indices, which lets the same code drive both the Fock realization and
tensor-splitting checks inside the unrestricted Verma module.
"""

from fractions import Fraction

from .algebra import KIND_C, KIND_L
from .errors import ConfigError
from .scalars import Scalar
from .verma import ModuleVector, Sector, VermaModule

ZERO_S = Scalar.zero()


def gap_weight_sum(p, j_set):
    """sum_{j in J} j(p-j)/(4p^2), the L_0 eigenvalue of the Fock vacuum."""
    return Scalar(sum(Fraction(j * (p - j), 4 * p * p) for j in j_set))


def shifted_weight(hw):
    """Weight left for the complementary factor once the J-part is split off."""
    from .verma import HighestWeight

    psi_l0 = hw.l0 - gap_weight_sum(hw.p, hw.j_set())
    psi_c0 = hw.c_value(0) - Scalar(len(hw.j_set()))
    central = (psi_c0,) + (ZERO_S,) * (hw.p // 2)
    return HighestWeight(hw.p, psi_l0, central)


def sugawara_sum(module, j_set, phi_c, n, vec):
    """Apply the normal-ordered quadratic part of L_n to a module vector."""
    p = module.alg.p
    if vec.is_zero():
        return vec
    out = ModuleVector(module)
    d = vec.max_plevel()
    bound = (d - 1) // p if d >= 1 else -1
    for j in sorted(j_set):
        pref = (2 * phi_c(j)).inv()
        for k in range(n - 1 - bound, bound + 1):
            l = n - k - 1
            if k < l:
                first, second = module.alg.I(l, p - j), module.alg.I(k, j)
            else:
                first, second = module.alg.I(k, j), module.alg.I(l, p - j)
            tmp = module.act(first, vec)
            if tmp.is_zero():
                continue
            out = out + pref * module.act(second, tmp)
    return out


class OscillatorModule:
    """The Fock module of a weight, with the extended action of the full algebra."""

    def __init__(self, alg, hw):
        if hw.p != alg.p:
            raise ConfigError("weight and algebra disagree on p")
        self.alg = alg
        self.hw = hw
        self.j_set = hw.j_set()
        if not self.j_set:
            raise ConfigError("the Fock realization needs a nonempty J")
        self.fock = VermaModule(alg, hw, Sector.heisenberg(self.j_set))

    def vacuum(self):
        return self.fock.highest_vector()

    def act(self, g, vec):
        """Extended action: I and C through the Heisenberg rules, L through L_n above."""
        if g.kind == KIND_L:
            return self.sugawara_l(g.n, vec)
        if g.kind == KIND_C:
            if g.n == 0:
                return Scalar(len(self.j_set)) * vec
            c = self.hw.c_value(g.n)
            return c * vec if c else ModuleVector(self.fock)
        return self.fock.act(g, vec)

    def sugawara_l(self, n, vec):
        out = sugawara_sum(self.fock, self.j_set, self.hw.c_value, n, vec)
        if n == 0:
            out = out + gap_weight_sum(self.alg.p, self.j_set) * vec
        return out

    def central_charge(self):
        return len(self.j_set)


def virasoro_relation_check(alg, hw, m, n, max_level):
    """Check the Virasoro relation for the realized L_m, L_n on all levels <= max_level."""
    osc = OscillatorModule(alg, hw)
    central = Fraction(m ** 3 - m, 12) * osc.central_charge() if m + n == 0 else Fraction(0)
    failures = []
    for d in range(0, max_level + 1):
        for mono in osc.fock.pbw_basis(d):
            x = osc.fock.basis_vector(mono)
            lhs = osc.sugawara_l(m, osc.sugawara_l(n, x)) - osc.sugawara_l(n, osc.sugawara_l(m, x))
            rhs = Scalar(m - n) * osc.sugawara_l(m + n, x)
            if central:
                rhs = rhs + Scalar(central) * x
            if lhs != rhs:
                failures.append({"level": d, "monomial": mono.text()})
    return {
        "m": m,
        "n": n,
        "maxLevel": max_level,
        "pass": not failures,
        "failures": failures,
    }


def mixed_relation_check(alg, hw, m, n, i, max_level, osc=None):
    """Check [L_m, I_n^i] = -(n + i/p) I_{m+n}^i on the realized module."""
    if osc is None:
        osc = OscillatorModule(alg, hw)
    p = alg.p
    coeff = Scalar(-Fraction(n * p + i, p))
    for d in range(0, max_level + 1):
        for mono in osc.fock.pbw_basis(d):
            x = osc.fock.basis_vector(mono)
            gi = alg.I(n, i)
            lhs = osc.sugawara_l(m, osc.act(gi, x)) - osc.act(gi, osc.sugawara_l(m, x))
            rhs = coeff * osc.act(alg.I(m + n, i), x)
            if lhs != rhs:
                return False
    return True


def fock_singular_vectors(osc, d, max_mode=3):
    """Heisenberg-only singular vector search at one p-level."""
    raising = [osc.alg.I(n, i) for n in range(0, max_mode + 1)
               for i in sorted(osc.j_set)]
    return osc.fock.singular_vectors(d, raising=raising)
