"""
Submultiplicative Potentials

Potentials are functions from words to positive reals. Three kinds are
provided: the singular value potential of a tuple, products of powers of
norms of several tuples, and the two factor potentials of a Kronecker tuple
A_i = B_i (x) B_iota(i), which are evaluated from the d-dimensional B
matrices and never from the d^2-dimensional products.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import OutOfRangeS, ValidationError
from .words import MatrixTuple, kronecker_tuple, level_products, validate_word

logger = logging.getLogger(__name__)


class Potential(ABC):
    """
    A word -> (0, inf) weight.

    Subclasses implement ``level_values`` (all words of a level under a
    prefix, lexicographic order) and ``periodic_log_rates`` (the growth rate
    lim_k (1/k) log Phi(w^k), divided by |w|, from eigenvalue moduli).
    """

    irreducibility_evidence = None

    @property
    @abstractmethod
    def alphabet_size(self):
        ...

    @property
    @abstractmethod
    def label(self):
        ...

    @abstractmethod
    def level_values(self, n, prefix=()):
        ...

    @abstractmethod
    def periodic_log_rates(self, n, prefix=()):
        ...

    def evaluate(self, word):
        word = validate_word(word, self.alphabet_size)
        return float(self.level_values(len(word), prefix=word)[0])

    def __call__(self, word):
        return self.evaluate(word)


@dataclass(frozen=True, eq=False)
class PhiS(Potential):
    """Phi(w) = phi^s(A_w)."""

    tuple: MatrixTuple
    s: float
    irreducibility_evidence: str = None

    def __post_init__(self):
        if not np.isfinite(self.s) or self.s < 0:
            raise OutOfRangeS(f"s={self.s} must be non-negative")

    @property
    def alphabet_size(self):
        return self.tuple.N

    @property
    def label(self):
        return f"phi^{self.s:g}"

    def level_values(self, n, prefix=()):
        spectra = linalg.singular_values_batch(level_products(self.tuple, n, prefix))
        return linalg.phi_from_spectrum(spectra, self.s)

    def periodic_log_rates(self, n, prefix=()):
        moduli = linalg.eigen_moduli_batch(level_products(self.tuple, n, prefix))
        return linalg.log_phi_from_spectrum(moduli, self.s) / n


@dataclass(frozen=True, eq=False)
class NormProduct(Potential):
    """Phi(w) = prod_j ||A^(j)_w||^beta_j."""

    tuples: tuple
    betas: tuple
    irreducibility_evidence: str = None

    def __post_init__(self):
        tuples = tuple(self.tuples)
        betas = tuple(float(b) for b in self.betas)
        if len(tuples) == 0 or len(tuples) != len(betas):
            raise ValidationError("need one positive exponent per tuple")
        if any(b <= 0 for b in betas):
            raise ValidationError(f"exponents must be positive, got {betas}")
        if len({t.N for t in tuples}) != 1:
            raise ValidationError("all tuples must share the alphabet size")
        object.__setattr__(self, "tuples", tuples)
        object.__setattr__(self, "betas", betas)

    @property
    def alphabet_size(self):
        return self.tuples[0].N

    @property
    def label(self):
        return "norm-product(" + ", ".join(f"{b:g}" for b in self.betas) + ")"

    def level_values(self, n, prefix=()):
        total = 0.0
        for T, beta in zip(self.tuples, self.betas):
            top = linalg.singular_values_batch(level_products(T, n, prefix))[..., 0]
            total = total + beta * np.log(top)
        return np.exp(total)

    def periodic_log_rates(self, n, prefix=()):
        total = 0.0
        for T, beta in zip(self.tuples, self.betas):
            top = linalg.eigen_moduli_batch(level_products(T, n, prefix))[..., 0]
            total = total + beta * np.log(top)
        return total / n


def _factor_values(first, second, s):
    # sigma_1(X)^s * sigma_1(Y) * sigma_2(Y)^(s-1)
    return first[..., 0] ** s * second[..., 0] * second[..., 1] ** (s - 1)


@dataclass(frozen=True, eq=False)
class Factor(Potential):
    """
    Factor potentials of the Kronecker tuple B_i (x) B_iota(i), 1 < s <= 2:

        which=1: ||B_w||^s ||B_iota(w)||^(2-s) ||B_iota(w)^{wedge 2}||^(s-1)
        which=2: the same with B_w and B_iota(w) exchanged

    For an involution iota, which=2 at w equals which=1 at iota(w).
    """

    base: MatrixTuple
    iota: object
    s: float
    which: int = 1
    irreducibility_evidence: str = None

    def __post_init__(self):
        if not 1 < self.s <= 2:
            raise OutOfRangeS(f"factor potentials need 1 < s <= 2, got s={self.s}; dualize first")
        if self.which not in (1, 2):
            raise ValidationError(f"which must be 1 or 2, got {self.which}")
        if self.base.d < 2:
            raise ValidationError("factor potentials need matrices of dimension >= 2")
        if self.iota.size != self.base.N:
            raise ValidationError("permutation size does not match the alphabet")

    @property
    def alphabet_size(self):
        return self.base.N

    @property
    def label(self):
        return f"Phi^({self.which}) s={self.s:g}"

    @property
    def partner(self):
        return self.base.permuted(self.iota)

    def _pair(self, n, prefix, spectrum):
        own = spectrum(level_products(self.base, n, prefix))
        other = spectrum(level_products(self.partner, n, prefix))
        return (own, other) if self.which == 1 else (other, own)

    def level_values(self, n, prefix=()):
        first, second = self._pair(n, prefix, linalg.singular_values_batch)
        return _factor_values(first, second, self.s)

    def periodic_log_rates(self, n, prefix=()):
        first, second = self._pair(n, prefix, linalg.eigen_moduli_batch)
        return np.log(_factor_values(first, second, self.s)) / n

    def sibling(self):
        return Factor(self.base, self.iota, self.s, 3 - self.which, self.irreducibility_evidence)

    def as_norm_product(self):
        """The same potential as a norm product, zero exponents dropped."""
        own, other = (self.base, self.partner) if self.which == 1 else (self.partner, self.base)
        terms = [(own, self.s), (other, 2 - self.s), (other.exterior_power(2), self.s - 1)]
        terms = [(T, beta) for T, beta in terms if beta > 0]
        return NormProduct(
            tuple(T for T, _ in terms),
            tuple(beta for _, beta in terms),
            self.irreducibility_evidence,
        )


def evaluate(P, word):
    """Phi(w) for any potential kind."""
    return P.evaluate(word)


def factor_pair(base, iota, s):
    return Factor(base, iota, s, 1), Factor(base, iota, s, 2)


@dataclass(frozen=True)
class MaxIdentityCheck:
    lhs: float
    rhs1: float
    rhs2: float
    holds: bool

    @property
    def relative_defect(self):
        return abs(self.lhs - max(self.rhs1, self.rhs2)) / abs(self.lhs)


def max_identity_check(base, iota, s, word, tol=1e-8):
    """
    Compare phi^s(B_w (x) B_iota(w)), computed from the d^2-dimensional
    product, with max(Phi^(1)(w), Phi^(2)(w)).
    """
    phi1, phi2 = factor_pair(base, iota, s)
    lhs = PhiS(kronecker_tuple(base, iota), s).evaluate(word)
    rhs1 = phi1.evaluate(word)
    rhs2 = phi2.evaluate(word)
    holds = abs(lhs - max(rhs1, rhs2)) <= tol * abs(lhs)
    return MaxIdentityCheck(lhs, rhs1, rhs2, bool(holds))


def max_identity_level(base, iota, s, n):
    """Worst relative defect of the max identity over every word of level n."""
    phi1, phi2 = factor_pair(base, iota, s)
    lhs = PhiS(kronecker_tuple(base, iota), s).level_values(n)
    rhs = np.maximum(phi1.level_values(n), phi2.level_values(n))
    return float(np.max(np.abs(lhs - rhs) / np.abs(lhs)))


def dual_tuple(base, s):
    """
    B'_i = |det B_i|^(d/(d^2 - s)) (B_i^{-1})^T.

    With this exponent B'_i (x) B'_iota(i) = |det A_i|^(1/(d^2 - s)) (A_i^{-1})^T,
    as |det A_i| = |det B_i|^d |det B_iota(i)|^d.
    """
    d = base.d
    exponent = d / (d * d - s)

    def dual(B):
        return abs(np.linalg.det(B)) ** exponent * np.linalg.inv(B).T

    return base.transformed(dual)


@dataclass(frozen=True, eq=False)
class DualizedSystem:
    """Dual tuple with phi^dual_s(A'_w) = phi^primal_s(A_w), A'_i = B'_i (x) B'_iota(i)."""

    primal_s: float
    dual_s: float
    dual_tuple: MatrixTuple
    iota: object = field(default=None)

    def invert(self):
        """Dualize back: exponent dual_s -> primal_s."""
        return DualizedSystem(
            primal_s=self.dual_s,
            dual_s=self.primal_s,
            dual_tuple=dual_tuple(self.dual_tuple, self.dual_s),
            iota=self.iota,
        )


def dualize(base, iota, s):
    """Reduce d^2 - 2 <= s < d^2 - 1 to the exponent d^2 - s in (1, 2]."""
    d = base.d
    if not d * d - 2 <= s < d * d - 1:
        raise OutOfRangeS(f"dualize needs {d * d - 2} <= s < {d * d - 1}, got s={s}")
    logger.info("dualizing %d maps of dimension %d at s=%g", base.N, d, s)
    return DualizedSystem(
        primal_s=float(s),
        dual_s=float(d * d - s),
        dual_tuple=dual_tuple(base, s),
        iota=iota,
    )
