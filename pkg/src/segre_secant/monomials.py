"""Monomial bases for the two sides of the affine/multigraded dictionary.

A bidegree-(a, b) form on P^n x P^m is a combination of monomials
x^alpha y^beta with |alpha| = a, |beta| = b.  Fixing inside P^(n+m) the two
disjoint coordinate subspaces

    H1 = {z_n = ... = z_(n+m) = 0}   (dimension n - 1),
    H2 = {z_0 = ... = z_n = 0}       (dimension m - 1),

the degree-(a+b) monomials z^gamma that vanish to order b on H1 and order a
on H2 are exactly those with block degree >= a on {z_0..z_n} and >= b on
{z_n..z_(n+m)} (the overlap variable z_n belongs to both blocks).  Both
monomial sets have C(n+a, n) * C(m+b, m) elements and correspond under an
explicit bijection that splits the exponent of z_n between the two factors.

All enumerations use descending lexicographic order on exponent tuples and
are stable across runs; every matrix in the package orders its columns this
way.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np


def exponent_vectors(degree: int, nvars: int) -> np.ndarray:
    """All exponent vectors of the given total degree, descending lex.

    Returns an int64 array of shape (C(degree + nvars - 1, nvars - 1), nvars).
    """
    if degree < 0 or nvars < 1:
        raise ValueError(f"need degree >= 0 and nvars >= 1, got ({degree}, {nvars})")
    if nvars == 1:
        return np.array([[degree]], dtype=np.int64)
    rows = []
    for first in range(degree, -1, -1):
        tail = exponent_vectors(degree - first, nvars - 1)
        head = np.full((tail.shape[0], 1), first, dtype=np.int64)
        rows.append(np.hstack([head, tail]))
    return np.vstack(rows)


@dataclass(frozen=True)
class BiExponent:
    """Exponents of a bidegree-(a, b) monomial x^alpha y^beta."""

    alpha: tuple[int, ...]
    beta: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(e < 0 for e in self.alpha) or any(e < 0 for e in self.beta):
            raise ValueError(f"negative exponent in {self}")


@dataclass(frozen=True)
class SplitExponent:
    """Exponent of a degree-(a+b) monomial z^gamma in n + m + 1 variables."""

    gamma: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(e < 0 for e in self.gamma):
            raise ValueError(f"negative exponent in {self}")


def _validate(spec) -> tuple[int, int, int, int]:
    n, m, a, b = spec.n, spec.m, spec.a, spec.b
    if min(n, m, a, b) < 1:
        raise ValueError(f"n, m, a, b must all be >= 1, got ({n}, {m}, {a}, {b})")
    return n, m, a, b


def bigraded_basis(spec) -> list[BiExponent]:
    """Monomial basis of the bidegree-(a, b) graded piece, alpha-major order.

    The list has exactly C(n+a, n) * C(m+b, m) entries; its length minus one
    is the ambient projective dimension N of the embedding.
    """
    n, m, a, b = _validate(spec)
    alphas = exponent_vectors(a, n + 1)
    betas = exponent_vectors(b, m + 1)
    return [
        BiExponent(tuple(int(e) for e in alpha), tuple(int(e) for e in beta))
        for alpha in alphas
        for beta in betas
    ]


def split_basis(spec) -> list[SplitExponent]:
    """Degree-(a+b) monomials vanishing to order b on H1 and order a on H2.

    These are the gamma with sum(gamma[0..n]) >= a and sum(gamma[n..n+m]) >= b
    (index n counted in both blocks).  The count always equals that of
    ``bigraded_basis``.
    """
    n, m, a, b = _validate(spec)
    out = []
    for gamma in exponent_vectors(a + b, n + m + 1):
        if gamma[: n + 1].sum() >= a and gamma[n:].sum() >= b:
            out.append(SplitExponent(tuple(int(e) for e in gamma)))
    return out


def split_exponent_array(spec) -> np.ndarray:
    """The split basis as an int64 exponent array (same order as split_basis)."""
    n, m, a, b = _validate(spec)
    gammas = exponent_vectors(a + b, n + m + 1)
    keep = (gammas[:, : n + 1].sum(axis=1) >= a) & (gammas[:, n:].sum(axis=1) >= b)
    return gammas[keep]


def split_to_bigraded(spec, split: SplitExponent) -> BiExponent:
    """Image of one split monomial under the dictionary.

    gamma maps to (alpha, beta) with alpha_i = gamma_i for i < n,
    beta_j = gamma_(n+j) for j >= 1, and the exponent of the overlap variable
    z_n splitting as alpha_n = a - sum(gamma[:n]), beta_0 = b - sum(gamma[n+1:]).
    This is the unique split consistent with both bidegrees.
    """
    n, m, a, b = _validate(spec)
    gamma = split.gamma
    if len(gamma) != n + m + 1 or sum(gamma) != a + b:
        raise ValueError(f"{split} is not a degree-{a + b} exponent in {n + m + 1} variables")
    alpha = gamma[:n] + (a - sum(gamma[:n]),)
    beta = (b - sum(gamma[n + 1 :]),) + gamma[n + 1 :]
    return BiExponent(alpha, beta)


def basis_bijection(spec) -> dict[SplitExponent, BiExponent]:
    """The full dictionary between the two bases, as an explicit mapping.

    Raises if the map fails to be a well-defined bijection onto the bigraded
    basis (which would indicate a violated invariant, not a user error).
    """
    n, m, a, b = _validate(spec)
    mapping = {g: split_to_bigraded(spec, g) for g in split_basis(spec)}
    images = set(mapping.values())
    expected = comb(n + a, n) * comb(m + b, m)
    if len(mapping) != expected or len(images) != expected:
        raise AssertionError(
            f"dictionary is not bijective for ({n}, {m}, {a}, {b}): "
            f"{len(mapping)} monomials, {len(images)} images, expected {expected}"
        )
    if images != set(bigraded_basis(spec)):
        raise AssertionError(f"dictionary image differs from the bigraded basis for ({n}, {m}, {a}, {b})")
    return mapping
