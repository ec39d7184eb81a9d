"""Sparse multivariate polynomials with exact rational coefficients.

The term map is canonical (no zero coefficients), so two polynomials are
equal iff their term maps are equal.  All arithmetic is exact; the heavy
term-merging loops live in `morinclass.kernel`.  Coefficients are exact
rational scalars: plain ints are kept as ints (integer arithmetic is far
cheaper than normalized fractions), everything else is a Fraction, and the
two mix freely.

Canonical text rendering sorts monomials by graded lexicographic order,
where the grade counts source-role variables only (parameters weigh zero)
and ties break on the exponent vector, descending, in context order.  That
ordering is the contract for golden-file tests.
"""

from fractions import Fraction

from . import kernel
from .context import ContextMismatchError, VariableContext, check_same_context
from .rationals import format_rational, rat


def _jet_min(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class Polynomial:
    """`jet` is an optional total-degree cap: arithmetic on capped polynomials
    truncates every result, so whole pipelines can run in the jet ring at the
    base point without intermediate term blowup."""

    __slots__ = ("context", "terms", "jet")

    def __init__(self, context: VariableContext, terms: dict, jet: int = None):
        self.context = context
        if jet is not None:
            terms = kernel.truncate_terms(terms, jet)
        self.terms = terms  # canonical: no zero coefficients; treat as immutable
        self.jet = jet

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_terms(cls, context, mapping):
        terms = {}
        for exps, coeff in mapping.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(context):
                raise ValueError(f"exponent vector {exps} has wrong length for context")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            if not isinstance(coeff, int):
                coeff = rat(coeff)
            if coeff:
                terms[exps] = terms.get(exps, 0) + coeff
        return cls(context, {e: c for e, c in terms.items() if c})

    @classmethod
    def constant(cls, context, value):
        if not isinstance(value, int):
            value = rat(value)
        if not value:
            return cls(context, {})
        return cls(context, {(0,) * len(context): value})

    @classmethod
    def variable(cls, context, name):
        exps = [0] * len(context)
        exps[context.index(name)] = 1
        return cls(context, {tuple(exps): 1})

    @classmethod
    def zero(cls, context):
        return cls(context, {})

    # -- basic queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree over all variables; zero polynomial has degree 0."""
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def source_degree(self) -> int:
        idx = self.context.source_indices
        if not self.terms:
            return 0
        return max(sum(e[i] for i in idx) for e in self.terms)

    def degree_in(self, names) -> int:
        idx = [self.context.index(n) for n in names]
        if not self.terms:
            return 0
        return max(sum(e[i] for i in idx) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.context), Fraction(0))

    def coefficient(self, exps) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            check_same_context(self, other)
            return other
        return Polynomial.constant(self.context, other)

    def __add__(self, other):
        other = self._coerce(other)
        return Polynomial(
            self.context, kernel.add_terms(self.terms, other.terms), _jet_min(self.jet, other.jet)
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return Polynomial(
            self.context, kernel.sub_terms(self.terms, other.terms), _jet_min(self.jet, other.jet)
        )

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return Polynomial(self.context, kernel.neg_terms(self.terms), self.jet)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial(self.context, kernel.scale_terms(self.terms, other), self.jet)
        other = self._coerce(other)
        jet = _jet_min(self.jet, other.jet)
        trunc = -1 if jet is None else jet
        return Polynomial(self.context, kernel.mul_terms(self.terms, other.terms, trunc), jet)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers take a non-negative integer exponent")
        if k == 0:
            return Polynomial.constant(self.context, 1)
        trunc = -1 if self.jet is None else self.jet
        return Polynomial(self.context, kernel.pow_terms(self.terms, k, trunc), self.jet)

    def mul_truncated(self, other, max_degree: int):
        other = self._coerce(other)
        return Polynomial(self.context, kernel.mul_terms(self.terms, other.terms, max_degree))

    def truncated(self, max_degree: int):
        """The jet at 0: drops higher-degree terms and caps all later products."""
        return Polynomial(self.context, self.terms, max_degree)

    def uncapped(self):
        """Same terms with the jet cap removed."""
        return Polynomial(self.context, self.terms)

    def integer_scaled(self):
        """A positive integer multiple of this polynomial with int coefficients."""
        from math import gcd

        den = 1
        for c in self.terms.values():
            if not isinstance(c, int):
                den = den * c.denominator // gcd(den, c.denominator)
        terms = {e: int(c * den) for e, c in self.terms.items()}
        return Polynomial(self.context, terms, self.jet)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, Fraction)):
                other = Polynomial.constant(self.context, other)
            else:
                return NotImplemented
        return self.context == other.context and self.terms == other.terms

    def __hash__(self):
        return hash((self.context, frozenset(self.terms.items())))

    # -- calculus ------------------------------------------------------------

    def derivative(self, name):
        """Exact formal partial derivative with respect to one variable."""
        return Polynomial(
            self.context, kernel.diff_terms(self.terms, self.context.index(name)), self.jet
        )

    def evaluate(self, assignment) -> Fraction:
        """Exact value at a point given as a mapping name -> rational.

        The assignment must cover every variable of the context.
        """
        values = []
        for name in self.context.names:
            if name not in assignment:
                raise KeyError(f"missing assignment for variable {name!r}")
            values.append(rat(assignment[name]))
        return kernel.eval_terms(self.terms, tuple(values))

    def substitute(self, bindings, target_context=None):
        """Exact composition: replace variables by polynomials.

        Without `target_context` the result stays in this context and unbound
        variables map to themselves.  With it, every variable actually present
        must be bound by a polynomial over the target context.
        """
        ctx = target_context if target_context is not None else self.context
        images = []
        for i, name in enumerate(self.context.names):
            if name in bindings:
                img = bindings[name]
                if not isinstance(img, Polynomial):
                    img = Polynomial.constant(ctx, img)
                elif img.context != ctx:
                    raise ContextMismatchError(
                        f"binding for {name!r} lives in a different context"
                    )
                images.append(img)
            elif target_context is None:
                images.append(Polynomial.variable(ctx, name))
            else:
                images.append(None)  # must stay unused
        result = Polynomial.zero(ctx)
        power_cache = {}
        for exps, coeff in sorted(self.terms.items()):
            term = Polynomial.constant(ctx, coeff)
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                if images[i] is None:
                    raise KeyError(
                        f"variable {self.context.names[i]!r} is unbound under the target context"
                    )
                key = (i, e)
                p = power_cache.get(key)
                if p is None:
                    p = images[i] ** e
                    power_cache[key] = p
                term = term * p
            result = result + term
        return result

    # -- canonical ordering, rendering, division ------------------------------

    def _order_key(self, exps):
        idx = self.context.source_indices
        return (sum(exps[i] for i in idx), exps)

    def sorted_terms(self):
        """Terms in canonical (graded-lex, descending) order."""
        return sorted(self.terms.items(), key=lambda t: self._order_key(t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=self._order_key)
        return exps, self.terms[exps]

    def render(self) -> str:
        """Canonical text form, e.g. `x2^2 + y2^2 + a1*x2 + b1*y2`.

        Within a monomial, parameter factors print before source factors
        (each group in context order), matching the classical displays.
        """
        if not self.terms:
            return "0"
        order = list(self.context.parameter_indices) + list(self.context.source_indices)
        pieces = []
        for n, (exps, coeff) in enumerate(self.sorted_terms()):
            factors = []
            for i in order:
                name, e = self.context.names[i], exps[i]
                if e == 0:
                    continue
                factors.append(name if e == 1 else f"{name}^{e}")
            mag = abs(coeff)
            if not factors:
                body = format_rational(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = format_rational(mag) + "*" + "*".join(factors)
            if n == 0:
                pieces.append(body if coeff > 0 else "-" + body)
            else:
                pieces.append(("+ " if coeff > 0 else "- ") + body)
        return " ".join(pieces)

    def __repr__(self):
        return f"Polynomial({self.render()})"

    def divide(self, divisor):
        """Single-divisor multivariate division: returns (quotient, remainder).

        Uses the canonical monomial order.  When `self` is a multiple of
        `divisor` the remainder is exactly zero, so this doubles as an exact
        divisibility test.
        """
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.jet is not None or divisor.jet is not None:
            raise ValueError("division is not defined on jet-capped polynomials")
        div_exps, div_coeff = divisor.leading_term()
        quotient = Polynomial.zero(self.context)
        remainder = Polynomial.zero(self.context)
        work = self
        while not work.is_zero():
            exps, coeff = work.leading_term()
            delta = tuple(a - b for a, b in zip(exps, div_exps))
            if all(d >= 0 for d in delta):
                ratio = Fraction(coeff, div_coeff)
                if ratio.denominator == 1:
                    ratio = ratio.numerator
                mono = Polynomial(self.context, {delta: ratio})
                quotient = quotient + mono
                work = work - mono * divisor
            else:
                mono = Polynomial(self.context, {exps: coeff})
                remainder = remainder + mono
                work = work - mono
        return quotient, remainder

    def div_exact(self, divisor):
        q, r = self.divide(divisor)
        if not r.is_zero():
            raise ValueError(f"{divisor!r} does not divide {self!r} exactly")
        return q

    def monomial_content(self):
        """Largest monomial (with rational coefficient) dividing every term.

        Returns (exponent tuple, coefficient) where the coefficient is the
        positive gcd of all coefficients carrying the sign of the leading term.
        """
        if not self.terms:
            raise ValueError("zero polynomial has no content")
        exps_min = [min(e[i] for e in self.terms) for i in range(len(self.context))]
        from math import gcd

        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, abs(c.numerator))
            den = den * c.denominator // gcd(den, c.denominator)
        coeff = Fraction(num, den)
        if self.leading_term()[1] < 0:
            coeff = -coeff
        return tuple(exps_min), coeff

    def primitive_part(self):
        exps, coeff = self.monomial_content()
        content = Polynomial(self.context, {exps: coeff})
        return self.div_exact(content)
