"""Exact coefficient arithmetic: multivariate rational functions in three flavors.

Every quantity in the package is a ``Scalar``: an element of one of three
exact fraction fields, all with arbitrary-precision rational coefficients.

* classical mode -- rational functions in the lambda-coordinates l1..ln;
* quantum mode   -- rational functions in s and t1..tn, encoding
  s = q^(1/2) and t_i = q^(lambda_i), so that half-integer lambda shifts
  stay Laurent in s;
* symbol mode    -- rational functions in e, w1..wn, l1..ln, encoding the
  deformation coupling epsilon and the exponentials w_a = exp(-e*l_a/2).
  This field hosts the coefficients of gamma-series (the step-gamma limit)
  and the trigonometric solution families, whose "cotanh" entries are the
  rational functions (e/2)(u+1)/(u-1) in the monomials u = (w_a/w_b)^(-2).

Truncated power series in the step gamma live in ``GammaSeries``, a plain
coefficient list over the symbol field.

The backing representation is sympy's sparse polynomial fraction field,
which keeps numerator/denominator cancelled and sign-normalized, so two
Scalars are equal iff their representations are identical.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from sympy.polys.domains import QQ
from sympy.polys.fields import field as _sym_field

CLASSICAL = "classical"
QUANTUM = "quantum"
SYMBOL = "symbol"


class ScalarError(Exception):
    pass


class UnsupportedShiftError(ScalarError):
    """Shift weight not representable in the coefficient field."""


class NotRegularError(ScalarError):
    """The gamma-series of this value has a pole at gamma = 0."""


class PoleAtPointError(ScalarError):
    """Denominator vanishes at the evaluation point (non-generic lambda)."""


class Context:
    """A fixed coefficient field: mode plus rank (number of lambda coordinates)."""

    def __init__(self, mode, n, extra=()):
        if mode == CLASSICAL:
            names = [f"l{i + 1}" for i in range(n)]
        elif mode == QUANTUM:
            names = ["s"] + [f"t{i + 1}" for i in range(n)]
        elif mode == SYMBOL:
            names = ["e"] + [f"w{i + 1}" for i in range(n)] + [f"l{i + 1}" for i in range(n)]
        else:
            raise ValueError(f"unknown mode {mode!r}")
        names += list(extra)
        self.mode = mode
        self.n = n
        self.extra = tuple(extra)
        self.var_names = tuple(names)
        created = _sym_field(",".join(names), QQ)
        self.field = created[0]
        self._gens = {name: g for name, g in zip(names, created[1:])}
        self.zero = Scalar(self, self.field.zero)
        self.one = Scalar(self, self.field.one)

    def __repr__(self):
        return f"Context({self.mode}, n={self.n})"

    def gen(self, name):
        return Scalar(self, self._gens[name])

    def lam(self, i):
        """The coordinate l_{i+1} as a Scalar (classical/symbol modes)."""
        return self.gen(f"l{i + 1}")

    def t(self, i):
        return self.gen(f"t{i + 1}")

    @property
    def s(self):
        return self.gen("s")

    @property
    def eps(self):
        return self.gen("e")

    def w(self, i):
        return self.gen(f"w{i + 1}")

    def from_fraction(self, value):
        value = Fraction(value)
        return Scalar(self, self.field(QQ(value.numerator, value.denominator)))

    def __call__(self, value):
        if isinstance(value, Scalar):
            if value.ctx is not self:
                raise ScalarError("scalar from a different context")
            return value
        return self.from_fraction(value)

    def q_power(self, k2):
        """q^(k2/2) = s^k2 as a Scalar; k2 must be an integer (quantum mode)."""
        k2 = Fraction(k2)
        if k2.denominator != 1:
            raise UnsupportedShiftError(f"q^({k2}/2) is not Laurent in s")
        return self.s ** int(k2)


@lru_cache(maxsize=None)
def classical_ctx(n):
    return Context(CLASSICAL, n)


@lru_cache(maxsize=None)
def quantum_ctx(n):
    return Context(QUANTUM, n)


@lru_cache(maxsize=None)
def symbol_ctx(n):
    return Context(SYMBOL, n)


@lru_cache(maxsize=None)
def quantum_aux_ctx(n, extra):
    """Quantum field with extra generators (used by the universal sl2 recursion)."""
    return Context(QUANTUM, n, extra=extra)


def _to_frac_element(ctx, value):
    if isinstance(value, Scalar):
        if value.ctx is not ctx:
            raise ScalarError(f"context mismatch: {value.ctx} vs {ctx}")
        return value.f
    value = Fraction(value)
    return ctx.field(QQ(value.numerator, value.denominator))


class Scalar:
    """Element of a Context's fraction field. Immutable and canonical."""

    __slots__ = ("ctx", "f")

    def __init__(self, ctx, f):
        self.ctx = ctx
        self.f = f

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        return Scalar(self.ctx, self.f + _to_frac_element(self.ctx, other))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.ctx, self.f - _to_frac_element(self.ctx, other))

    def __rsub__(self, other):
        return Scalar(self.ctx, _to_frac_element(self.ctx, other) - self.f)

    def __mul__(self, other):
        return Scalar(self.ctx, self.f * _to_frac_element(self.ctx, other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        g = _to_frac_element(self.ctx, other)
        if not g:
            raise ZeroDivisionError("division by zero Scalar")
        return Scalar(self.ctx, self.f / g)

    def __rtruediv__(self, other):
        if not self.f:
            raise ZeroDivisionError("division by zero Scalar")
        return Scalar(self.ctx, _to_frac_element(self.ctx, other) / self.f)

    def __pow__(self, k):
        return Scalar(self.ctx, self.f ** k)

    def __neg__(self):
        return Scalar(self.ctx, -self.f)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.ctx is other.ctx and self.f == other.f
        if isinstance(other, (int, Fraction)):
            return self.f == _to_frac_element(self.ctx, other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.f))

    def __bool__(self):
        return bool(self.f)

    @property
    def is_zero(self):
        return not self.f

    def __repr__(self):
        return f"Scalar({self.f})"

    # -- structure ----------------------------------------------------------

    def to_fraction(self):
        """The value as an exact rational; error if not constant."""
        num, den = self.f.numer, self.f.denom
        zero_mon = (0,) * self.f.field.ngens
        if any(m != zero_mon for m in num.monoms()):
            raise ScalarError(f"not a constant: {self.f}")
        if any(m != zero_mon for m in den.monoms()):
            raise ScalarError(f"not a constant: {self.f}")
        a = num.get(zero_mon, QQ(0))
        b = den.get(zero_mon, QQ(0))
        val = QQ(a) / QQ(b)
        return Fraction(int(val.numerator), int(val.denominator))

    def convert(self, tgt, mapping):
        """Map into another context: every generator must be sent to a target
        Scalar (omitted names map to the same-named target generator)."""
        vals = []
        for name in self.ctx.var_names:
            if name in mapping:
                vals.append(_to_frac_element(tgt, tgt(mapping[name])))
            else:
                vals.append(_to_frac_element(tgt, tgt.gen(name)))
        num = _eval_poly_into(tgt, self.f.numer, vals)
        den = _eval_poly_into(tgt, self.f.denom, vals)
        if not den:
            raise ZeroDivisionError("conversion produced a zero denominator")
        return Scalar(tgt, num / den)

    def subs(self, mapping):
        """Substitute generators (by name) with Scalars of the same context."""
        vals = []
        for name in self.ctx.var_names:
            if name in mapping:
                vals.append(_to_frac_element(self.ctx, mapping[name]))
            else:
                vals.append(self.ctx._gens[name])
        num = _eval_poly(self.ctx, self.f.numer, vals)
        den = _eval_poly(self.ctx, self.f.denom, vals)
        if not den:
            raise ZeroDivisionError("substitution produced a zero denominator")
        return Scalar(self.ctx, num / den)

    def diff_lambda(self, i, eps=None):
        """Exact partial derivative along lambda_{i+1}.

        In symbol mode this is the twisted derivation that also sees the
        lambda-dependence of the exponential symbols, d w_a/d l_a =
        -(eps/2) w_a, where eps defaults to the symbol e but may be a fixed
        rational coupling (the w_a then encode exp(-eps*l_a/2) at that
        coupling).
        """
        ctx = self.ctx
        if ctx.mode == QUANTUM:
            raise ScalarError("no polynomial lambda-derivative in quantum mode")
        out = self.f.diff(ctx._gens[f"l{i + 1}"])
        if ctx.mode == SYMBOL:
            wi = ctx._gens[f"w{i + 1}"]
            eps_el = ctx._gens["e"] if eps is None else _to_frac_element(ctx, eps)
            out = out + self.f.diff(wi) * wi * eps_el * QQ(-1, 2)
        return Scalar(ctx, out)

    def shift_lambda(self, mu):
        """lambda -> lambda - mu, for a weight mu given in coordinates.

        Classical: l_i -> l_i - mu_i.  Quantum: t_i -> s^(-2 mu_i) t_i, which
        requires every 2*mu_i to be an integer.  Symbol mode supports only
        rational shifts on the polynomial part when all w-shift factors are
        trivial (mu paired into the exponentials must vanish), since
        exp(e*c) for generic rational c is not in the field.
        """
        ctx = self.ctx
        mu = [Fraction(x) for x in mu]
        if len(mu) != ctx.n:
            raise UnsupportedShiftError("shift weight has wrong length")
        if all(x == 0 for x in mu):
            return self
        if ctx.mode == CLASSICAL:
            return self.subs({f"l{i + 1}": ctx.lam(i) - mu[i] for i in range(ctx.n)})
        if ctx.mode == QUANTUM:
            mapping = {}
            for i, m in enumerate(mu):
                k2 = -2 * m
                if k2.denominator != 1:
                    raise UnsupportedShiftError(
                        f"quantum shift by {m} is not half-integral")
                if k2 != 0:
                    mapping[f"t{i + 1}"] = ctx.t(i) * ctx.s ** int(k2)
            return self.subs(mapping)
        # symbol mode
        for i, m in enumerate(mu):
            if m != 0 and self.f.diff(ctx._gens[f"w{i + 1}"]):
                raise UnsupportedShiftError(
                    "symbol-mode shift would need exp(e*c) factors outside the field")
        return self.subs({f"l{i + 1}": ctx.lam(i) - mu[i] for i in range(ctx.n)
                          if mu[i] != 0})

    def evaluate_at(self, point):
        """Exact rational value at a rational point {var name: value}."""
        ctx = self.ctx
        vals = []
        for name in ctx.var_names:
            if name not in point:
                raise ScalarError(f"no value given for {name}")
            v = Fraction(point[name])
            vals.append(ctx.field(QQ(v.numerator, v.denominator)))
        num = _eval_poly(ctx, self.f.numer, vals)
        den = _eval_poly(ctx, self.f.denom, vals)
        if not den:
            raise PoleAtPointError(f"denominator vanishes at {point}")
        return Scalar(ctx, num / den).to_fraction()

    def gamma_expand(self, order):
        """Expand at lambda -> lambda/gamma (and q = exp(-e*gamma/2)) to the
        given order in gamma; returns a GammaSeries over the symbol field.
        """
        if order < 0:
            raise ValueError("order must be >= 0")
        ctx = self.ctx
        if ctx.extra:
            raise ScalarError("gamma_expand is not defined for auxiliary contexts")
        tgt = symbol_ctx(ctx.n)
        if ctx.mode == CLASSICAL:
            dn, num = _classical_gamma_poly(ctx, tgt, self.f.numer)
            dd, den = _classical_gamma_poly(ctx, tgt, self.f.denom)
            net_shift = dd - dn
        elif ctx.mode == QUANTUM:
            num = _quantum_gamma_poly(ctx, tgt, self.f.numer, order)
            den = _quantum_gamma_poly(ctx, tgt, self.f.denom, order)
            net_shift = 0
        else:
            raise ScalarError("gamma_expand expects a classical or quantum Scalar")
        return _series_divide(tgt, num, den, order, net_shift)

    # -- canonical text -----------------------------------------------------

    def to_text(self):
        """Deterministic canonical text: integer-coefficient numerator and
        denominator in graded-lex monomial order, denominator content-free
        with positive leading coefficient."""
        return _fraction_text(self.ctx, self.f)


def _eval_poly(ctx, poly, vals):
    """Evaluate a PolyElement at field-element values (monomial by monomial)."""
    fld = ctx.field
    out = fld.zero
    for monom, coeff in poly.terms():
        term = fld(coeff)
        for g, e in zip(vals, monom):
            if e:
                term = term * g ** e
        out = out + term
    return out


def _eval_poly_into(tgt, poly, vals):
    """Like _eval_poly but lands in a different context's field."""
    fld = tgt.field
    out = fld.zero
    for monom, coeff in poly.terms():
        term = fld(coeff)
        for g, e in zip(vals, monom):
            if e:
                term = term * g ** e
        out = out + term
    return out


def _classical_gamma_poly(src, tgt, poly):
    """gamma-polynomial coefficients of gamma^deg * P(lambda/gamma).

    Returns (deg, c[0..deg]) with gamma^deg P(lambda/gamma) = sum c[j] gamma^j;
    c[j] is the homogeneous part of P of total degree deg - j.
    """
    if not poly:
        return 0, [tgt.field.zero]
    deg = max(sum(m) for m in poly.monoms())
    coeffs = [tgt.field.zero] * (deg + 1)
    lam = [tgt._gens[f"l{i + 1}"] for i in range(src.n)]
    for monom, coeff in poly.terms():
        term = tgt.field(coeff)
        for g, e in zip(lam, monom):
            if e:
                term = term * g ** e
        coeffs[deg - sum(monom)] += term
    return deg, coeffs


def _exp_series(tgt, rate, order):
    """Series of exp(rate * e * gamma) to the given order; rate rational."""
    rate = Fraction(rate)
    e = tgt._gens["e"]
    out = [tgt.field.one]
    term = tgt.field.one
    for k in range(1, order + 1):
        term = term * e * QQ(rate.numerator, rate.denominator) / QQ(k)
        out.append(term)
    return out


def _quantum_gamma_poly(src, tgt, poly, order):
    """gamma-series (to given order) of P after s -> exp(-e g/4), t_i -> w_i."""
    out = [tgt.field.zero] * (order + 1)
    w = [tgt._gens[f"w{i + 1}"] for i in range(src.n)]
    for monom, coeff in poly.terms():
        s_exp = monom[0]
        mono = tgt.field(coeff)
        for g, e in zip(w, monom[1:]):
            if e:
                mono = mono * g ** e
        exp_part = _exp_series(tgt, Fraction(-s_exp, 4), order)
        for j in range(order + 1):
            out[j] += mono * exp_part[j]
    return out


def _series_divide(tgt, num, den, order, net_shift):
    """gamma^net_shift * (sum num[j] g^j) / (sum den[j] g^j) as a GammaSeries."""

    def valuation(c):
        for j, x in enumerate(c):
            if x:
                return j
        return None

    vn, vd = valuation(num), valuation(den)
    if vd is None:
        raise ZeroDivisionError("zero denominator series")
    if vn is None:
        return GammaSeries(tgt, order, [tgt.field.zero] * (order + 1))
    shift = net_shift + vn - vd
    if shift < 0:
        raise NotRegularError("pole at gamma = 0")
    a = num[vn:vn + order + 1]
    b = den[vd:vd + order + 1]
    a += [tgt.field.zero] * (order + 1 - len(a))
    b += [tgt.field.zero] * (order + 1 - len(b))
    q = [tgt.field.zero] * (order + 1)
    for k in range(order + 1 - shift):
        acc = a[k]
        for j in range(k):
            acc = acc - q[j] * b[k - j]
        q[k] = acc / b[0]
    coeffs = [tgt.field.zero] * shift + q[:order + 1 - shift]
    return GammaSeries(tgt, order, coeffs)


class GammaSeries:
    """Truncated power series in gamma over the symbol field."""

    __slots__ = ("ctx", "order", "_c")

    def __init__(self, ctx, order, coeffs):
        if len(coeffs) != order + 1:
            raise ValueError("coefficient list does not match order")
        self.ctx = ctx
        self.order = order
        self._c = list(coeffs)

    def coeff(self, k):
        if not 0 <= k <= self.order:
            raise IndexError(f"order {k} beyond truncation {self.order}")
        return Scalar(self.ctx, self._c[k])

    def __eq__(self, other):
        return (isinstance(other, GammaSeries) and self.ctx is other.ctx
                and self.order == other.order and self._c == other._c)

    def __add__(self, other):
        self._check(other)
        return GammaSeries(self.ctx, self.order,
                           [a + b for a, b in zip(self._c, other._c)])

    def __sub__(self, other):
        self._check(other)
        return GammaSeries(self.ctx, self.order,
                           [a - b for a, b in zip(self._c, other._c)])

    def __mul__(self, other):
        if isinstance(other, GammaSeries):
            self._check(other)
            out = [self.ctx.field.zero] * (self.order + 1)
            for i, a in enumerate(self._c):
                if not a:
                    continue
                for j in range(self.order + 1 - i):
                    b = other._c[j]
                    if b:
                        out[i + j] += a * b
            return GammaSeries(self.ctx, self.order, out)
        g = _to_frac_element(self.ctx, other)
        return GammaSeries(self.ctx, self.order, [c * g for c in self._c])

    __rmul__ = __mul__

    def inverse(self):
        if not self._c[0]:
            raise NotRegularError("constant term vanishes; series not invertible")
        out = [self.ctx.field.zero] * (self.order + 1)
        out[0] = self.ctx.field.one / self._c[0]
        for k in range(1, self.order + 1):
            acc = self.ctx.field.zero
            for j in range(k):
                acc += out[j] * self._c[k - j]
            out[k] = -acc / self._c[0]
        return GammaSeries(self.ctx, self.order, out)

    @property
    def is_zero(self):
        return all(not c for c in self._c)

    def _check(self, other):
        if self.ctx is not other.ctx or self.order != other.order:
            raise ScalarError("gamma-series context/order mismatch")

    def __repr__(self):
        parts = [f"({c})*g^{k}" for k, c in enumerate(self._c) if c]
        return " + ".join(parts) if parts else "0"


def scalar_constant(ctx, value):
    return ctx.from_fraction(value)


# -- canonical text -------------------------------------------------------


def _monomial_key(monom):
    return (-sum(monom),) + tuple(-x for x in monom)


def _poly_text_integer(ctx, terms):
    """Render a term list with integer coefficients canonically."""
    if not terms:
        return "0"
    parts = []
    names = ctx.var_names
    for monom, c in terms:
        factors = []
        for name, e in zip(names, monom):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        body = "*".join(factors)
        if body:
            text = body if abs(c) == 1 else f"{abs(c)}*{body}"
        else:
            text = f"{abs(c)}"
        if not parts:
            parts.append(text if c > 0 else f"-{text}")
        else:
            parts.append(f"+ {text}" if c > 0 else f"- {text}")
    return " ".join(parts)


def _fraction_text(ctx, f):
    from math import gcd

    num, den = f.numer, f.denom
    if not num:
        return "0"
    terms_n = sorted(num.terms(), key=lambda t: _monomial_key(t[0]))
    terms_d = sorted(den.terms(), key=lambda t: _monomial_key(t[0]))
    # common integer scale: clear all coefficient denominators, then strip
    # the shared integer content, keeping the exact value of num/den
    lcm = 1
    for _, c in terms_n + terms_d:
        d = int(QQ(c).denominator)
        lcm = lcm * d // gcd(lcm, d)
    ints_n = [int(QQ(c).numerator) * (lcm // int(QQ(c).denominator)) for _, c in terms_n]
    ints_d = [int(QQ(c).numerator) * (lcm // int(QQ(c).denominator)) for _, c in terms_d]
    g = 0
    for c in ints_n + ints_d:
        g = gcd(g, c)
    sign = 1 if ints_d[0] > 0 else -1
    ints_n = [sign * c // g for c in ints_n]
    ints_d = [sign * c // g for c in ints_d]
    num_text = _poly_text_integer(ctx, [(m, c) for (m, _), c in zip(terms_n, ints_n)])
    den_text = _poly_text_integer(ctx, [(m, c) for (m, _), c in zip(terms_d, ints_d)])
    if den_text == "1":
        return num_text
    return f"({num_text})/({den_text})"
