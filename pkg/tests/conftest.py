"""Shared fixtures: contexts, normal-form battery, random generators, oracles."""

import random
from fractions import Fraction
from itertools import product

import pytest

from morinclass import MapGerm, Polynomial, VariableContext


def make_context(*names, params=()):
    return VariableContext.make(names, params)


def poly_vars(ctx):
    return [Polynomial.variable(ctx, n) for n in ctx.names]


# -- the stable normal forms ----------------------------------------------------

BATTERY_DIMS = ((3, 2), (4, 2), (4, 3), (5, 3))


def normal_form(m, n, k, signs):
    """The k-Morin normal form with quadratic part sign pattern `signs`.

    For k = 1 the quadratic part uses all m-n+1 kernel variables; for k >= 2
    it uses m-n of them and the last variable carries z^{k+1} + sum x_i z^i.
    """
    n_x = n - 1
    if k == 1:
        n_y = m - n + 1
        names = tuple(f"x{i}" for i in range(1, n_x + 1)) + tuple(
            f"y{i}" for i in range(1, n_y + 1)
        )
        ctx = VariableContext.make(names)
        ys = [Polynomial.variable(ctx, f"y{i}") for i in range(1, n_y + 1)]
        q = sum((s * y**2 for s, y in zip(signs, ys)), Polynomial.zero(ctx))
        comps = [Polynomial.variable(ctx, f"x{i}") for i in range(1, n_x + 1)] + [q]
        return MapGerm(ctx, tuple(comps))
    n_y = m - n
    names = (
        tuple(f"x{i}" for i in range(1, n_x + 1))
        + tuple(f"y{i}" for i in range(1, n_y + 1))
        + ("z",)
    )
    ctx = VariableContext.make(names)
    ys = [Polynomial.variable(ctx, f"y{i}") for i in range(1, n_y + 1)]
    z = Polynomial.variable(ctx, "z")
    q = sum((s * y**2 for s, y in zip(signs, ys)), Polynomial.zero(ctx))
    last = q + z ** (k + 1)
    for i in range(1, k):
        last = last + Polynomial.variable(ctx, f"x{i}") * z**i
    comps = [Polynomial.variable(ctx, f"x{i}") for i in range(1, n_x + 1)] + [last]
    return MapGerm(ctx, tuple(comps))


def battery():
    """Every (m, n, k, sign pattern) of the normal-form battery."""
    for m, n in BATTERY_DIMS:
        for k in range(1, n + 1):
            n_q = m - n + 1 if k == 1 else m - n
            for signs in product((1, -1), repeat=n_q):
                yield m, n, k, signs


@pytest.fixture(scope="session")
def battery_germs():
    return [(m, n, k, signs, normal_form(m, n, k, signs)) for m, n, k, signs in battery()]


# -- random generators -----------------------------------------------------------

def random_rational(rng, lo=-3, hi=3, den_max=2):
    den = rng.randint(1, den_max)
    num = rng.randint(lo * den, hi * den)
    return Fraction(num, den)


def random_polynomial(rng, ctx, max_degree=2, n_terms=4, den_max=2):
    terms = {}
    nv = len(ctx)
    for _ in range(n_terms):
        exps = [0] * nv
        budget = rng.randint(0, max_degree)
        for _ in range(budget):
            exps[rng.randrange(nv)] += 1
        coeff = random_rational(rng, den_max=den_max)
        if coeff:
            terms[tuple(exps)] = terms.get(tuple(exps), Fraction(0)) + coeff
    return Polynomial.from_terms(ctx, terms)


def random_invertible_matrix(rng, size, lo=-3, hi=3):
    from morinclass import RationalMatrix

    while True:
        entries = [random_rational(rng, lo, hi) for _ in range(size * size)]
        mat = RationalMatrix(size, size, entries)
        if mat.rank() == size:
            return mat


def linear_source_change(rng, germ):
    """Compose the germ with a random invertible linear source change."""
    ctx = germ.context
    names = ctx.source_names
    mat = random_invertible_matrix(rng, len(names))
    bindings = {}
    for i, name in enumerate(names):
        acc = Polynomial.zero(ctx)
        for j, other in enumerate(names):
            acc = acc + mat[i, j] * Polynomial.variable(ctx, other)
        bindings[name] = acc
    return MapGerm(ctx, tuple(p.substitute(bindings) for p in germ.components))


def linear_target_change(rng, germ):
    mat = random_invertible_matrix(rng, germ.n)
    comps = []
    for r in range(germ.n):
        acc = Polynomial.zero(germ.context)
        for c in range(germ.n):
            acc = acc + mat[r, c] * germ.components[c]
        comps.append(acc)
    return MapGerm(germ.context, tuple(comps))


def unipotent_source_change(rng, germ, max_degree=3):
    """x_i -> x_i + one random monomial of degree 2..max_degree (sparse)."""
    ctx = germ.context
    names = ctx.source_names
    nv = len(ctx)
    bindings = {}
    touched = rng.sample(range(len(names)), k=min(2, len(names)))
    for i in touched:
        exps = [0] * nv
        deg = rng.randint(2, max_degree)
        for _ in range(deg):
            exps[ctx.index(names[rng.randrange(len(names))])] += 1
        coeff = Fraction(rng.choice([-2, -1, 1, 2]), rng.choice([1, 2]))
        mono = Polynomial(ctx, {tuple(exps): coeff})
        bindings[names[i]] = Polynomial.variable(ctx, names[i]) + mono
    return MapGerm(ctx, tuple(p.substitute(bindings) for p in germ.components))


def unipotent_target_change(rng, germ, max_degree=3):
    """u_r -> u_r + one random monomial of degree 2..max_degree in the components."""
    comps = list(germ.components)
    r = rng.randrange(germ.n)
    deg = rng.randint(2, max_degree)
    mono = Polynomial.constant(germ.context, Fraction(rng.choice([-1, 1]), rng.choice([1, 2])))
    for _ in range(deg):
        mono = mono * comps[rng.randrange(germ.n)]
    comps[r] = comps[r] + mono
    return MapGerm(germ.context, tuple(comps))


# -- oracles ---------------------------------------------------------------------

def cofactor_determinant(rows):
    """Naive cofactor expansion over the first row; independent oracle."""
    size = len(rows)
    if size == 1:
        return rows[0][0]
    total = None
    for c in range(size):
        minor = [[rows[r][cc] for cc in range(size) if cc != c] for r in range(1, size)]
        term = rows[0][c] * cofactor_determinant(minor)
        if c % 2:
            term = -term
        total = term if total is None else total + term
    return total


def minor_rank(rows):
    """Rank as the maximal order of a nonzero minor (enumeration oracle)."""
    from itertools import combinations

    n_rows = len(rows)
    n_cols = len(rows[0]) if n_rows else 0
    for order in range(min(n_rows, n_cols), 0, -1):
        for rsel in combinations(range(n_rows), order):
            for csel in combinations(range(n_cols), order):
                sub = [[rows[r][c] for c in csel] for r in rsel]
                if cofactor_determinant(sub) != 0:
                    return order
    return 0


def component_samples(per_component=10, seed=1618):
    """Generic rational points on each hard-coded non-cusp locus component.

    Solves the component equation for one parameter with the others random,
    rejecting points that land on a second component or on the degenerate
    coefficient pairs.
    """
    from morinclass.lefschetz import noncusp_polynomials

    locus = noncusp_polynomials()
    samples = {i: [] for i in range(5)}
    rng = random.Random(seed)

    def rq():
        return Fraction(rng.randint(-6, 6), rng.choice([1, 2, 3]))

    while any(len(v) < per_component for v in samples.values()):
        a1, a2, b1, b2 = (rq() for _ in range(4))
        for idx in range(5):
            if len(samples[idx]) >= per_component:
                continue
            try:
                if idx == 0:
                    if a2**2 == b2**2 or a2 * b2 == 0:
                        continue
                    pars = (2 * a2 * b1 * b2 / (a2**2 - b2**2), a2, b1, b2)
                elif idx == 1:
                    if a1 + b1 == 0 or a2 == 0:
                        continue
                    pars = (a1, a2, b1, a2 * (a1**2 + b1**2) / (2 * (a1 + b1)))
                elif idx == 2:
                    if b2 == 0 or a1 * a2 == 0:
                        continue
                    pars = (a1, a2, -a1 * a2 / b2, b2)
                elif idx == 3:
                    if a1 * b1 == 0 or a2 == 0:
                        continue
                    pars = (a1, a2, b1, a2 * (a1**2 - b1**2) / (2 * a1 * b1))
                else:
                    if a2 + b2 == 0 or a1 == 0:
                        continue
                    pars = (a1, a2, a1 * (a2**2 + b2**2) / (2 * (a2 + b2)), b2)
            except ZeroDivisionError:
                continue
            values = locus.evaluate(pars)
            if values[idx] != 0:
                continue
            others = [v for j, v in enumerate(values) if j != idx]
            if any(v == 0 for v in others):
                continue
            if (pars[0] == 0 and pars[2] == 0) or (pars[1] == 0 and pars[3] == 0):
                continue
            samples[idx].append(pars)
    return samples


def labels_equivalent(a, b):
    """Label equality up to the fold-signature swap.

    (x, q) and (x, -q) are equivalent germs, so a fold's (pos, neg) pair is
    an invariant only as a multiset.
    """
    if a.kind != b.kind or a.k != b.k or a.reason != b.reason:
        return False
    if a.signature is None or b.signature is None:
        return a.signature == b.signature
    return sorted(a.signature) == sorted(b.signature)


@pytest.fixture
def rng():
    return random.Random(20240817)
