"""Bifurcation study of the Lefschetz singularity.

The Lefschetz germ L(x1,x2,y1,y2) = (x1x2 - y1y2, x1y2 + x2y1) is zw in the
complex coordinates z = x1 + i y1, w = x2 + i y2.  Its four-parameter linear
deformation adds a1x1 + a2x2 to the first component and b1x1 + b2x2 to the
second.  This module reproduces the classical study of that family: the
singular-locus equations of the chart x-pivot frame, the kernel Hessian and
its determinant, the published non-cusp locus equations with CSV slice
export, witness search over the singular set, and the full symbolic
substitution chain used to re-derive the locus equations.

A structural fact this module computes along the way: in the chart
parametrization tau = y1/x1 of the singular circle, the cusp condition is
tau * (p + 3q tau - 3p tau^2 - q tau^3) with p + iq = (a1+ib1)(a2+ib2), whose
cubic factor has discriminant 108 (p^2+q^2)^2.  See `cusp_tau_polynomial`.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .context import VariableContext
from .criteria import Label, classify, lambdas_for_frame
from .germ import MapGerm, cramer_frame
from .linalg import PolyMatrix
from .polynomial import Polynomial
from .rationals import rat

SOURCE_VARS = ("x1", "x2", "y1", "y2")
PARAM_VARS = ("a1", "a2", "b1", "b2")


def family_context() -> VariableContext:
    return VariableContext.make(SOURCE_VARS, PARAM_VARS)


def _vars(ctx):
    return [Polynomial.variable(ctx, n) for n in ctx.names]


@dataclass(frozen=True)
class LefschetzFamily:
    """The deformed Lefschetz germ; at zero parameters it is L itself."""

    germ: MapGerm

    @classmethod
    def symbolic(cls):
        ctx = family_context()
        x1, x2, y1, y2, a1, a2, b1, b2 = _vars(ctx)
        p = x1 * x2 - y1 * y2 + a1 * x1 + a2 * x2
        q = x1 * y2 + x2 * y1 + b1 * x1 + b2 * x2
        return cls(germ=MapGerm(ctx, (p, q)))

    def at(self, params) -> MapGerm:
        """Bind (a1, a2, b1, b2) to exact rationals."""
        vals = _params_dict(params)
        return self.germ.bind_parameters(vals)


def lefschetz_germ() -> MapGerm:
    """The undeformed Lefschetz germ (all parameters zero)."""
    return LefschetzFamily.symbolic().at((0, 0, 0, 0))


def wrinkling_germ(s) -> MapGerm:
    """The stable wrinkling move: s(x1+x2) added to the first component."""
    s = rat(s)
    return LefschetzFamily.symbolic().at((s, s, 0, 0))


def _params_dict(params):
    if isinstance(params, dict):
        missing = [k for k in PARAM_VARS if k not in params]
        if missing:
            raise ValueError(f"missing parameter values for {missing}")
        return {k: rat(params[k]) for k in PARAM_VARS}
    vals = [rat(v) for v in params]
    if len(vals) != 4:
        raise ValueError("expected four parameter values (a1, a2, b1, b2)")
    return dict(zip(PARAM_VARS, vals))


def _params_tuple(params):
    d = _params_dict(params)
    return tuple(d[k] for k in PARAM_VARS)


def chart_frame(germ: MapGerm):
    """The x1-pivot kernel frame of the first component (valid where a1+x2 != 0)."""
    return cramer_frame(germ, ("x1",))


def lefschetz_lambdas(params=None):
    """Singular-locus equations of the family in the x1-pivot chart.

    Returns a dict with the raw Cramer lambdas, the normalized lambdas
    obtained by exact division by +-(a1+x2), and the units used.  With
    `params` the family is bound first; otherwise everything is symbolic.
    """
    fam = LefschetzFamily.symbolic()
    germ = fam.germ if params is None else fam.at(params)
    frame = chart_frame(germ)
    ls = lambdas_for_frame(germ, frame)
    unit = frame.pivot_minor  # x2 + a1, with parameters bound if the germ is
    normalized = []
    units = []
    for lam in ls.lambdas:
        # each Cramer lambda is a multiple of the pivot minor; the quotient
        # carries whatever sign the kernel-field orientation produced, and the
        # golden test pins it against the classical display
        q, r = lam.divide(unit)
        if not r.is_zero():
            raise AssertionError("chart lambda is not a multiple of (a1+x2)")
        normalized.append(q)
        units.append(unit)
    return {
        "system": ls,
        "cramer": list(ls.lambdas),
        "normalized": normalized,
        "units": units,
        "frame": frame,
        "germ": germ,
    }


def chart_hessian(params=None):
    """Kernel Hessian data of the chart: matrix (eta_j lam_i), h = det, theta, theta h.

    Built from the normalized lambdas so the substitution chain matches the
    published displays; theta is the last-column adjugate combination (the
    published three-cofactor formula).
    """
    data = lefschetz_lambdas(params)
    etas = data["frame"].eta
    lams = data["normalized"]
    rows = [[eta.apply(lam) for eta in etas] for lam in lams]
    mat = PolyMatrix.from_rows(rows)
    h = mat.determinant()
    adj = mat.adjugate()
    theta = None
    for i, eta in enumerate(etas):
        scaled = eta.scaled(adj[i, 2])
        theta = scaled if theta is None else theta + scaled
    data.update(
        {"h_matrix": mat, "h": h, "adjugate": adj, "theta": theta, "theta_h": theta.apply(h)}
    )
    return data


# -- the non-cusp locus --------------------------------------------------------

def locus_context() -> VariableContext:
    """Parameters as coordinates of the locus."""
    return VariableContext.make(PARAM_VARS)


@dataclass(frozen=True)
class NoncuspLocus:
    """The five published defining polynomials of the non-cusp locus."""

    components: tuple

    def evaluate(self, params):
        vals = _params_dict(params)
        return [c.evaluate(vals) for c in self.components]

    def on_locus(self, params) -> bool:
        return any(v == 0 for v in self.evaluate(params))


def noncusp_polynomials() -> NoncuspLocus:
    ctx = locus_context()
    a1, a2, b1, b2 = (Polynomial.variable(ctx, n) for n in PARAM_VARS)
    comps = (
        a1 * (a2**2 - b2**2) - 2 * a2 * b1 * b2,
        a2 * (a1**2 + b1**2) - 2 * b2 * (a1 + b1),
        a1 * a2 + b1 * b2,
        a2 * (a1**2 - b1**2) - 2 * a1 * b1 * b2,
        a1 * (a2**2 + b2**2) - 2 * b1 * (a2 + b2),
    )
    return NoncuspLocus(components=comps)


# -- singular-point census -----------------------------------------------------

def cusp_tau_polynomial(params):
    """Coefficients (ascending in tau) of the cusp condition on the singular circle.

    The circle is a2 x1 + b2 y1 + x1^2 + y1^2 = 0, parametrized by the slope
    tau = y1/x1; the returned quartic is tau*(p + 3q tau - 3p tau^2 - q tau^3)
    with p = a1a2 - b1b2 and q = a1b2 + a2b1.  Its tau = 0 root is the
    chart-edge point (-a2, -a1, 0, 0), and the cubic factor has discriminant
    108 (p^2 + q^2)^2.
    """
    a1, a2, b1, b2 = _params_tuple(params)
    p = a1 * a2 - b1 * b2
    q = a1 * b2 + a2 * b1
    return [Fraction(0), p, 3 * q, -3 * p, -q]


def circle_point(params, tau):
    """Rational singular point of the family from the slope parametrization."""
    a1, a2, b1, b2 = _params_tuple(params)
    tau = rat(tau)
    x1 = -(a2 + b2 * tau) / (1 + tau * tau)
    y1 = tau * x1
    return _branch_point(params, x1, y1)


def swap_circle_point(params, tau):
    """Singular point from the swap-symmetric chart (x1<->x2, y1<->y2, a<->b pairs)."""
    a1, a2, b1, b2 = _params_tuple(params)
    pt = circle_point((a2, a1, b2, b1), tau)
    return (pt[1], pt[0], pt[3], pt[2])


def _branch_point(params, x1, y1):
    """(x2, y2) closed forms over a circle point with (x1, y1) != 0."""
    a1, a2, b1, b2 = _params_tuple(params)
    d = x1 * x1 + y1 * y1
    if d == 0:
        raise ZeroDivisionError("branch point needs (x1, y1) != (0, 0)")
    s = a1 * x1 + b1 * y1
    return (x1, -x1 * s / d, y1, -y1 * s / d)


def distinguished_points(params):
    """Rational singular points of the family that exist in closed form.

    Yields (name, point) pairs: the chart-edge point, the x1=y1=0 closed-form
    point and its swap twin, the sheet points in the (a1,b1) and (a2,b2)
    directions, and the x1=x2=0 point.
    """
    a1, a2, b1, b2 = _params_tuple(params)
    out = [("edge", (-a2, -a1, Fraction(0), Fraction(0)))]
    d2 = a2 * a2 + b2 * b2
    if d2 != 0:
        out.append(
            ("closed-form", (Fraction(0), b2 * (a2 * b1 - a1 * b2) / d2, Fraction(0), a2 * (a1 * b2 - a2 * b1) / d2))
        )
    d1 = a1 * a1 + b1 * b1
    if d1 != 0:
        out.append(
            ("closed-form-swap", (b1 * (a1 * b2 - a2 * b1) / d1, Fraction(0), a1 * (a2 * b1 - a1 * b2) / d1, Fraction(0)))
        )
        t = -(a1 * a2 + b1 * b2) / d1
        out.append(("sheet", (t * a1, -a1, t * b1, -b1)))
    if d2 != 0:
        s = -(a1 * a2 + b1 * b2) / d2
        out.append(("sheet-swap", (-a2, s * a2, -b2, s * b2)))
    out.append(("x-axis", (Fraction(0), Fraction(0), -b2, -b1)))
    return out


def is_singular(germ: MapGerm, point) -> bool:
    return germ.translate(point).jacobian_at_origin().rank() < germ.n


@dataclass
class WitnessReport:
    params: tuple
    component_values: list
    on_locus: bool
    candidates: list          # (name, point, Label) for singular candidates
    witness: tuple = None     # first candidate that is neither Fold nor Morin{2}
    witness_label: Label = None

    @property
    def counterexample_candidate(self):
        """On the locus but no non-fold/non-cusp point found."""
        return self.on_locus and self.witness is None


def _is_noncusp_label(label: Label) -> bool:
    return label.kind in ("Degenerate", "CorankHigh") or (
        label.kind == "Morin" and label.k is not None and label.k >= 3
    )


def witness_verify(params, extra_taus=None) -> WitnessReport:
    """Search the family's singular set for a point that is neither fold nor cusp.

    Tries the closed-form branch points first (the circle slope grid plus
    every distinguished point), classifying each exactly after recentering.
    On the locus, failure to find a witness is reported as a counterexample
    candidate rather than raised.
    """
    params = _params_tuple(params)
    locus = noncusp_polynomials()
    values = locus.evaluate(dict(zip(PARAM_VARS, params)))
    on_locus = any(v == 0 for v in values)
    fam = LefschetzFamily.symbolic()
    germ = fam.at(params)

    candidates = []
    taus = list(extra_taus or [])
    taus += [Fraction(n, d) for d in (1, 2, 3) for n in range(-3 * d, 3 * d + 1)]
    seen = set()
    points = []
    for name, pt in distinguished_points(params):
        points.append((name, pt))
    for tau in taus:
        try:
            points.append((f"circle tau={tau}", circle_point(params, tau)))
        except ZeroDivisionError:
            pass
        try:
            points.append((f"swap-circle tau={tau}", swap_circle_point(params, tau)))
        except ZeroDivisionError:
            pass
    witness = None
    witness_label = None
    for name, pt in points:
        if pt in seen:
            continue
        seen.add(pt)
        if not is_singular(germ, pt):
            continue
        label = classify(germ.translate(pt)).label
        candidates.append((name, pt, label))
        if witness is None and _is_noncusp_label(label):
            witness = pt
            witness_label = label
    return WitnessReport(
        params=params,
        component_values=values,
        on_locus=on_locus,
        candidates=candidates,
        witness=witness,
        witness_label=witness_label,
    )


# -- symbolic substitution chain ------------------------------------------------

def _substitute_cleared(p, var, numerator, denominator):
    """p with var -> numerator/denominator, multiplied by denominator^deg_var(p)."""
    ctx = p.context
    iv = ctx.index(var)
    deg = max((e[iv] for e in p.terms), default=0)
    out = Polynomial.zero(ctx)
    for exps, coeff in p.terms.items():
        e = exps[iv]
        base = list(exps)
        base[iv] = 0
        term = Polynomial(ctx, {tuple(base): coeff})
        if e:
            term = term * numerator**e
        if deg - e:
            term = term * denominator ** (deg - e)
        out = out + term
    return out


def _drop_factors(p, named_factors):
    tally = {}
    for name, f in named_factors:
        while not p.is_zero():
            q, r = p.divide(f)
            if r.is_zero():
                p = q
                tally[name] = tally.get(name, 0) + 1
            else:
                break
    return p, tally


def rederive_noncusp_chain():
    """The symbolic substitution chain behind the published locus equations.

    Returns a dict with each verified stage:

      * `g_branch`: the cofactor of (b1x1 - a1y1) after substituting the
        singular-branch closed forms into h (matches the published second
        factor exactly; `g_matches` is the verbatim comparison).
      * `theta_h_factors`: the complete factorization of theta(h) under the
        same substitutions with b1 eliminated along g = 0; the surviving
        linear factors are exactly (a2+x1) and (a2+2x1) (`theta_h_reduction`).
      * `subbranch`: the x1=y1=0, b1=-2y2 reduction of theta(h) for the
        published sub-branch display, and its further reduction to
        3 a2 (a1+x2)(a1+2x2).
      * `eliminations`: per-branch eliminant of (x1, y1) against each
        hard-coded component (exact divisibility results).
    """
    data = chart_hessian()
    ctx = data["germ"].context
    x1, x2, y1, y2, a1, a2, b1, b2 = _vars(ctx)
    h = data["h"]
    theta_h = data["theta_h"]
    d = x1**2 + y1**2
    s = a1 * x1 + b1 * y1
    big_a = -3 * x1**2 + y1**2 - 2 * a2 * x1
    big_b = x1**3 - 3 * x1 * y1**2 + a2 * x1**2 - a2 * y1**2
    g_published = a1 * y1 * big_a + b1 * big_b
    fac = b1 * x1 - a1 * y1

    def branch_substitute(p, eliminate_b1=False):
        w = _substitute_cleared(p, "b2", -(a2 * x1 + d), y1)
        w = _substitute_cleared(w, "x2", -x1 * s, d)
        w = _substitute_cleared(w, "y2", -y1 * s, d)
        if eliminate_b1:
            w = _substitute_cleared(w, "b1", -a1 * y1 * big_a, big_b)
        return w

    # stage 1: h under the branch closed forms
    h_sub = branch_substitute(h)
    h_red = h_sub.primitive_part()
    h_red, h_tally = _drop_factors(
        h_red, [("b1x1-a1y1", fac), ("x1^2+y1^2", d), ("y1", y1)]
    )
    g_matches = h_red == g_published

    # stage 2: theta(h) under the branch closed forms with g = 0 imposed
    th_sub = branch_substitute(theta_h, eliminate_b1=True)
    th_red = th_sub.primitive_part()
    th_red, th_tally = _drop_factors(
        th_red,
        [
            ("x1^2+y1^2", d),
            ("(a2+x1)", a2 + x1),
            ("(a2+2x1)", a2 + 2 * x1),
            ("(a2+x1)^2+y1^2", (a2 + x1) ** 2 + y1**2),
            ("y1", y1),
            ("a1", a1),
            ("A", big_a),
            ("B", big_b),
        ],
    )
    theta_h_reduction = (
        th_red.degree() == 0
        and th_tally.get("(a2+x1)", 0) >= 1
        and th_tally.get("(a2+2x1)", 0) >= 1
    )

    # stage 3: the published x1 = y1 = 0, b1 = -2y2 sub-branch.  There the
    # kernel combination is a2 eta_2 + (a1+x2) eta_3; modulo the remaining
    # singular equation y2^2 = a1x2 + x2^2 its derivative of h is a multiple
    # of a2 (3a1^2 + 7a1x2 + 4x2^2 + 2y2^2), which collapses further to
    # 3 a2 (a1+x2)(a1+2x2).  The cofactor (3a1+4x2) has no real points on the
    # branch (it would force y2^2 < 0).
    etas = data["frame"].eta
    theta_branch = etas[1].scaled(a2) + etas[2].scaled(a1 + x2)
    tb_h = theta_branch.apply(h)
    zero = Polynomial.zero(ctx)
    tb_h = tb_h.substitute({"x1": zero, "y1": zero})
    tb_h = tb_h.substitute({"b1": -2 * y2})

    def reduce_y2sq(p):
        y2sq = a1 * x2 + x2**2
        iy2 = ctx.index("y2")
        while max((e[iy2] for e in p.terms), default=0) >= 2:
            nxt = Polynomial.zero(ctx)
            for exps, coeff in p.terms.items():
                e = exps[iy2]
                if e >= 2:
                    base = list(exps)
                    base[iy2] = e - 2
                    nxt = nxt + Polynomial(ctx, {tuple(base): coeff}) * y2sq
                else:
                    nxt = nxt + Polynomial(ctx, {tuple(exps): coeff})
            p = nxt
        return p

    reduced = reduce_y2sq(tb_h)
    sub_display = 3 * a1**2 + 7 * a1 * x2 + 4 * x2**2 + 2 * y2**2
    display_reduced = reduce_y2sq(sub_display)
    q_disp, r_disp = reduced.divide(a2 * display_reduced)
    subbranch_display_ok = r_disp.is_zero() and not reduced.is_zero()
    sub_red, sub_tally = _drop_factors(
        reduced,
        [
            ("a2", a2),
            ("(a1+x2)", a1 + x2),
            ("(a1+2x2)", a1 + 2 * x2),
            ("(3a1+4x2)", 3 * a1 + 4 * x2),
        ],
    )
    subbranch_ok = (
        sub_red.degree() == 0
        and sub_tally.get("a2", 0) == 1
        and sub_tally.get("(a1+x2)", 0) >= 1
        and sub_tally.get("(a1+2x2)", 0) == 1
    )

    # stage 4: branch eliminations against the hard-coded components
    locus = noncusp_polynomials()
    lctx = locus_context()
    eliminations = []

    # branch a2 + x1 = 0: x1 = -a2, then the circle equation forces y1 = -b2,
    # and g = 0 eliminates to a parameter relation
    g1 = g_published.substitute({"x1": -a2, "y1": -b2})
    g1 = _to_locus_poly(g1, lctx)
    lb2 = Polynomial.variable(lctx, "b2")
    g1, g1_tally = _drop_factors(g1.primitive_part(), [("b2", lb2)])
    branch1 = {"branch": "a2+x1", "eliminant": g1, "per_component": []}
    for idx, comp in enumerate(locus.components):
        branch1["per_component"].append(
            {"component": idx + 1, "divides": _divisible(g1, comp)}
        )
    eliminations.append(branch1)

    # branch a2 + 2x1 = 0: g collapses onto the chart boundary
    g2 = g_published.substitute({"a2": -2 * x1})
    g2_expected = (x1**2 + y1**2) * (a1 * y1 - b1 * x1)
    eliminations.append(
        {"branch": "a2+2x1", "eliminant": g2, "boundary_collapse": g2 == g2_expected}
    )
    return {
        "h_branch_factors": h_tally,
        "g_branch": h_red,
        "g_published": g_published,
        "g_matches": g_matches,
        "theta_h_factors": th_tally,
        "theta_h_residual": th_red,
        "theta_h_reduction": theta_h_reduction,
        "subbranch_display_ok": subbranch_display_ok,
        "subbranch_factors": sub_tally,
        "subbranch_ok": subbranch_ok,
        "eliminations": eliminations,
    }


def _to_locus_poly(p, lctx):
    """Rebase a parameters-only polynomial onto the locus context."""
    src_ctx = p.context
    keep = [src_ctx.index(n) for n in PARAM_VARS]
    drop = [i for i in range(len(src_ctx)) if i not in keep]
    terms = {}
    for exps, coeff in p.terms.items():
        if any(exps[i] for i in drop):
            raise ValueError("polynomial still involves source variables")
        terms[tuple(exps[i] for i in keep)] = coeff
    return Polynomial(lctx, terms)


def _divisible(p, f):
    if p.is_zero():
        return False
    _, r = p.divide(f)
    return r.is_zero()


# -- slice export ----------------------------------------------------------------

@dataclass
class SliceGrid:
    b2: Fraction
    lo: Fraction
    hi: Fraction
    resolution: int
    nodes: list              # grid values, one list shared by the three axes
    values: np.ndarray       # shape (5, resolution^3), component-major, lex order


def emit_slice(b2, resolution: int, value_range=(-1, 1)) -> SliceGrid:
    """Evaluate the five locus components on an (a1, a2, b1) grid at fixed b2.

    Evaluation is exact (integer arithmetic over a common denominator) and
    cast to float only at emission.
    """
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    b2 = rat(b2)
    lo, hi = rat(value_range[0]), rat(value_range[1])
    step = (hi - lo) / (resolution - 1)
    nodes = [lo + k * step for k in range(resolution)]
    den = 1
    for v in nodes + [b2]:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in nodes]
    b2_int = int(b2 * den)

    locus = noncusp_polynomials()
    values = np.empty((5, resolution**3), dtype=float)
    max_n = max((abs(v) for v in ints), default=0) or 1
    for ci, comp in enumerate(locus.components):
        deg = comp.degree()
        scale_den = den**deg
        terms = []
        bound = 0
        for exps, coeff in sorted(comp.terms.items()):
            e1, e2, e3, e4 = exps  # context order a1, a2, b1, b2
            c_int = coeff * (b2_int**e4) * den ** (deg - e1 - e2 - e3 - e4)
            assert c_int.denominator == 1
            terms.append((int(c_int), e1, e2, e3))
            bound += abs(int(c_int)) * max_n ** (e1 + e2 + e3)
        if bound < 2**53 and scale_den < 2**53:
            n_arr = np.array(ints, dtype=np.int64)
            pows = {0: np.ones_like(n_arr), 1: n_arr, 2: n_arr * n_arr, 3: n_arr**3}
            total = np.zeros((resolution, resolution, resolution), dtype=np.int64)
            for c_int, e1, e2, e3 in terms:
                total += c_int * (
                    pows[e1][:, None, None] * pows[e2][None, :, None] * pows[e3][None, None, :]
                )
            # |total| < 2^53 and den^deg < 2^53: the float division below is
            # exactly the correctly-rounded cast of the exact rational value
            values[ci] = total.reshape(-1).astype(float) / float(scale_den)
        else:
            flat = np.empty(resolution**3, dtype=float)
            idx = 0
            for i in range(resolution):
                for jj in range(resolution):
                    for k in range(resolution):
                        acc = 0
                        for c_int, e1, e2, e3 in terms:
                            acc += c_int * ints[i] ** e1 * ints[jj] ** e2 * ints[k] ** e3
                        flat[idx] = float(Fraction(acc, scale_den))
                        idx += 1
            values[ci] = flat
    return SliceGrid(b2=b2, lo=lo, hi=hi, resolution=resolution, nodes=nodes, values=values)


def write_slice_csv(grid: SliceGrid, path):
    """CSV per the plot-data contract: header a1,a2,b1,n1..n5, lex grid order."""
    res = grid.resolution
    nodes_f = [float(v) for v in grid.nodes]
    with open(path, "w", newline="") as fh:
        fh.write("a1,a2,b1,n1,n2,n3,n4,n5\n")
        idx = 0
        for i in range(res):
            for j in range(res):
                for k in range(res):
                    row = [nodes_f[i], nodes_f[j], nodes_f[k]] + [
                        float(grid.values[c, idx]) for c in range(5)
                    ]
                    fh.write(",".join(f"{v:.17g}" for v in row) + "\n")
                    idx += 1


def slice_filename(b2) -> str:
    """`slice_b2_<value>.csv` with `/` replaced by `_` (path-safe)."""
    b2 = rat(b2)
    if b2.denominator == 1:
        tag = str(b2.numerator)
    else:
        tag = f"{b2.numerator}_{b2.denominator}"
    return f"slice_b2_{tag}.csv"


STANDARD_SLICE_VALUES = (
    Fraction(-1, 2),
    Fraction(-1, 4),
    Fraction(0),
    Fraction(1, 4),
    Fraction(1, 2),
)
