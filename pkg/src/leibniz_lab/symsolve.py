"""Linear algebra over named indeterminates and seeded rational sampling.

Bridges Poly values and the exact matrix kernel: spans of linear forms,
membership of a polynomial in the scalar span of others, affine solving,
and deterministic random points used by the sampling-based checks.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .linalg import Matrix, Subspace, kernel_of_sparse_rows, rref
from .scalars import ONE, ZERO, Poly, Scalar


def linear_parts(p: Poly, variables: Sequence[str]):
    """Coefficient row of a degree <= 1 polynomial plus its constant."""
    pos = {v: k for k, v in enumerate(variables)}
    row = [ZERO] * len(variables)
    const = ZERO
    for mon, coeff in p.terms.items():
        if mon == ():
            const = coeff
            continue
        if len(mon) != 1 or mon[0][1] != 1:
            raise ValueError(f"{p} is not a linear form")
        name = mon[0][0]
        if name not in pos:
            raise ValueError(f"{p} uses an indeterminate outside the given list: {name}")
        row[pos[name]] = coeff
    return row, const


class LinearSpan:
    """Canonical span of homogeneous linear forms in named indeterminates."""

    __slots__ = ("variables", "sub")

    def __init__(self, forms: Iterable[Poly]):
        forms = [f for f in forms if not f.is_zero()]
        names = set()
        for f in forms:
            if f.degree() != 1 or not f.constant_term().is_zero():
                raise ValueError(f"{f} is not a homogeneous linear form")
            names |= f.indeterminates()
        self.variables = tuple(sorted(names))
        vectors = [linear_parts(f, self.variables)[0] for f in forms]
        self.sub = Subspace.from_vectors(vectors, ambient=len(self.variables))

    @property
    def dim(self) -> int:
        return self.sub.dim

    def contains(self, form: Poly) -> bool:
        if form.is_zero():
            return True
        if form.degree() != 1 or not form.constant_term().is_zero():
            return False
        if not form.indeterminates() <= set(self.variables):
            return False
        row, _ = linear_parts(form, self.variables)
        return self.sub.contains(row)

    def basis_forms(self) -> list:
        out = []
        for row in self.sub.mat.rows:
            p = Poly.zero()
            for v, c in zip(self.variables, row):
                if not c.is_zero():
                    p = p + Poly.var(v).scale(c)
            out.append(p)
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearSpan):
            return NotImplemented
        mine = self.basis_forms()
        theirs = other.basis_forms()
        return all(other.contains(f) for f in mine) and all(self.contains(f) for f in theirs)

    def __repr__(self) -> str:
        return f"LinearSpan(dim={self.dim}, nvars={len(self.variables)})"


def linear_span(forms: Iterable[Poly]) -> LinearSpan:
    return LinearSpan(forms)


def affine_solve(m: Matrix, rhs: Sequence[Scalar]) -> list:
    """One exact solution of m x = rhs; raises ValueError when inconsistent."""
    if m.nrows != len(rhs):
        raise ValueError("right-hand side length mismatch")
    aug = Matrix([list(row) + [rhs[k]] for k, row in enumerate(m.rows)], ncols=m.ncols + 1)
    red, rank = rref(aug)
    x = [ZERO] * m.ncols
    for r in range(rank):
        lead = next(c for c in range(m.ncols + 1) if not red.rows[r][c].is_zero())
        if lead == m.ncols:
            raise ValueError("inconsistent linear system")
        x[lead] = red.rows[r][m.ncols]
    return x


def poly_combination(generators: Sequence[Poly], target: Poly):
    """Coefficients expressing target as a scalar combination, or None."""
    if target.is_zero():
        return [ZERO] * len(generators)
    monomials = set(target.terms)
    for g in generators:
        monomials |= set(g.terms)
    monomials = sorted(monomials)
    if not generators:
        return None
    rows = [[g.coefficient(mon) for g in generators] for mon in monomials]
    rhs = [target.coefficient(mon) for mon in monomials]
    try:
        return affine_solve(Matrix(rows, ncols=len(generators)), rhs)
    except ValueError:
        return None


def poly_span_contains(generators: Sequence[Poly], target: Poly) -> bool:
    return poly_combination(generators, target) is not None


def homogeneous_system(polys: Iterable[Poly], variables: Sequence[str]) -> Matrix:
    """Rows of coefficients for degree <= 1 polynomials with zero constant."""
    rows = []
    for p in polys:
        row, const = linear_parts(p, variables)
        if not const.is_zero():
            raise ValueError(f"equation {p} = 0 has a nonzero constant part")
        rows.append(row)
    if not rows:
        rows = [[ZERO] * len(variables)]
    return Matrix(rows, ncols=len(variables))


def solution_point(polys: Iterable[Poly], variables: Sequence[str],
                   rng: random.Random) -> dict:
    """A random exact point in the common zero set of linear equations."""
    pos = {v: k for k, v in enumerate(variables)}
    rows = []
    seen = set()
    for p in polys:
        sparse = {}
        for mon, coeff in p.terms.items():
            if len(mon) != 1 or mon[0][1] != 1:
                raise ValueError(f"{p} is not a homogeneous linear equation")
            name = mon[0][0]
            if name not in pos:
                raise ValueError(f"{p} uses an indeterminate outside the given list: {name}")
            sparse[pos[name]] = coeff
        if not sparse:
            continue
        lead = min(sparse)
        inv = sparse[lead].inverse()
        key = tuple(sorted((k, c * inv) for k, c in sparse.items()))
        if key in seen:
            continue
        seen.add(key)
        rows.append(sparse)
    ker = kernel_of_sparse_rows(rows, len(variables))
    vec = random_member(ker, rng)
    return {v: vec[k] for k, v in enumerate(variables)}


def random_scalar(rng: random.Random, lo: int = -9, hi: int = 9) -> Scalar:
    """Small random element of Q(i); imaginary part present one draw in four."""
    re = Fraction(rng.randint(lo, hi), rng.choice((1, 1, 1, 2, 3)))
    im = Fraction(rng.randint(lo, hi)) if rng.random() < 0.25 else Fraction(0)
    return Scalar(re, im)


def random_nonzero_scalar(rng: random.Random, lo: int = -9, hi: int = 9) -> Scalar:
    while True:
        s = random_scalar(rng, lo, hi)
        if not s.is_zero():
            return s


def random_point(variables: Sequence[str], rng: random.Random) -> dict:
    return {v: random_scalar(rng) for v in variables}


def random_combination(rows: Sequence[Sequence[Scalar]], ambient: int,
                       rng: random.Random, tries: int = 8) -> list:
    """Random combination of independent rows, biased away from zero."""
    if not rows:
        return [ZERO] * ambient
    for attempt in range(tries):
        coeffs = [Scalar(Fraction(rng.randint(-5, 5))) for _ in range(len(rows))]
        if all(c.is_zero() for c in coeffs) and attempt + 1 < tries:
            continue
        vec = [ZERO] * ambient
        for c, row in zip(coeffs, rows):
            if c.is_zero():
                continue
            for k, e in enumerate(row):
                if not e.is_zero():
                    vec[k] = vec[k] + c * e
        if any(not x.is_zero() for x in vec):
            return vec
    return list(rows[0])


def random_member(sub: Subspace, rng: random.Random, tries: int = 8) -> list:
    """Random combination of the basis rows, biased away from zero."""
    return random_combination(sub.mat.rows, sub.ambient, rng, tries)
