"""Transfer difference operators, Macdonald operators and polynomials, and
the weighted trace functions of quantum sl2.

Difference operators are finite sums sum_nu c_nu(lambda) T_nu with exact
coefficients; on the Macdonald side everything is a Laurent polynomial or
rational function in x_i = q^(2 lambda_i) = t_i^2, with the Macdonald
parameter fixed at t = q^(m+1) so all coefficients stay Laurent in s.

The trace functions live in a small dedicated series type: a prefactor
q^(2 c (lambda,mu)) times a truncated Laurent series in zeta = q^(-lambda)
(the sl2 coordinate), with coefficients exact rational functions of
t = q^mu.
"""

from __future__ import annotations

from fractions import Fraction

from .fusion import (
    DynOp,
    exchange_matrix,
    universal_sl2_fusion,
)
from .linalg import Mat
from .reps import TensorIndex, dual, sym_power, trivial_rep, vector_rep
from .rootdata import build_type_A
from .scalars import quantum_ctx
from .verma import apply_coproduct_word, solve_intertwiner, verma_slice


class MacdonaldError(Exception):
    pass


# -- difference operators -----------------------------------------------------


class DiffOp:
    """Finite sum of shift terms with matrix (or scalar) coefficients."""

    def __init__(self, ctx, dim, terms=None):
        self.ctx = ctx
        self.dim = dim
        self.terms = {}
        if terms:
            for nu, mat in terms.items():
                self._put(tuple(Fraction(x) for x in nu), mat)

    def _put(self, nu, mat):
        if mat.is_zero:
            self.terms.pop(nu, None)
        else:
            self.terms[nu] = mat

    @classmethod
    def identity(cls, ctx, dim, ncoords):
        nu = (Fraction(0),) * ncoords
        return cls(ctx, dim, {nu: Mat.identity(dim, ctx)})

    @classmethod
    def scalar_term(cls, ctx, nu, coeff):
        m = Mat(1, 1, ctx)
        m.set(0, 0, coeff)
        return cls(ctx, 1, {tuple(nu): m})

    def _shift_mat(self, mat, nu):
        """Coefficient matrix evaluated at lambda + nu."""
        out = Mat(mat.nrows, mat.ncols, self.ctx)
        neg = [-x for x in nu]
        for (r, c, v) in mat.entries():
            out.set(r, c, v.shift_lambda(neg))
        return out

    def __mul__(self, other):
        if not isinstance(other, DiffOp):
            raise TypeError("DiffOp composes with DiffOp")
        out = DiffOp(self.ctx, self.dim)
        for nu1, m1 in self.terms.items():
            for nu2, m2 in other.terms.items():
                nu = tuple(a + b for a, b in zip(nu1, nu2))
                term = m1 * self._shift_mat(m2, nu1)
                cur = out.terms.get(nu)
                out._put(nu, term if cur is None else cur + term)
        return out

    def __add__(self, other):
        out = DiffOp(self.ctx, self.dim, dict(self.terms))
        for nu, m in other.terms.items():
            cur = out.terms.get(nu)
            out._put(nu, m if cur is None else cur + m)
        return out

    def __sub__(self, other):
        out = DiffOp(self.ctx, self.dim, dict(self.terms))
        for nu, m in other.terms.items():
            cur = out.terms.get(nu)
            out._put(nu, -m if cur is None else cur - m)
        return out

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return (self - other).is_zero

    @property
    def is_zero(self):
        return all(m.is_zero for m in self.terms.values())

    def scalar_coefficient(self, nu):
        m = self.terms.get(tuple(Fraction(x) for x in nu))
        if m is None:
            return self.ctx.zero
        return m[0, 0]

    def apply_scalar(self, f):
        """Apply a scalar-coefficient operator to a function of lambda."""
        if self.dim != 1:
            raise MacdonaldError("apply_scalar needs 1x1 coefficients")
        out = self.ctx.zero
        for nu, m in self.terms.items():
            out = out + m[0, 0] * f.shift_lambda([-x for x in nu])
        return out

    def conjugate_by(self, g):
        """g . D . g^{-1} for a multiplication operator g(lambda)."""
        out = DiffOp(self.ctx, self.dim)
        for nu, m in self.terms.items():
            scale = g / g.shift_lambda([-x for x in nu])
            out._put(nu, m * scale)
        return out

    def transform_q_inverse_neg_lambda(self):
        """The (q -> q^{-1}, lambda -> -lambda) transform of the operator.

        In the (s, t_a) encoding the combined substitution leaves every
        t_a = q^(lambda_a) fixed -- (q^{-1})^{(-lambda)} = q^lambda -- so
        only s inverts, while the shift operators flip direction under the
        coordinate change."""
        ctx = self.ctx
        mapping = {"s": 1 / ctx.s}
        out = DiffOp(ctx, self.dim)
        for nu, m in self.terms.items():
            m2 = Mat(m.nrows, m.ncols, ctx)
            for (r, c, v) in m.entries():
                m2.set(r, c, v.subs(mapping))
            out._put(tuple(-x for x in nu), m2)
        return out


def sl_normalized_exchange(m1, m2):
    """Exchange matrix in the invariant (sl) normalization of the constant
    R-matrix, which the trace theory (Theorems 9.1-9.4) requires.  For the
    sl2 datum this is q^(-deg(M1) deg(M2)/2) times the gl-normalized one
    (dual factors counting negative degree); classically the two agree."""
    return exchange_matrix(m1, m2, normalized=True)


def _neg_lambda_minus_rho(x, datum):
    """Substitute lambda -> -lambda - rho into a Scalar (both modes)."""
    ctx = x.ctx
    if ctx.mode == "classical":
        return x.subs({f"l{a + 1}": -ctx.lam(a) - datum.rho[a]
                       for a in range(datum.n_coords)})
    mapping = {}
    for a in range(datum.n_coords):
        k2 = -2 * Fraction(datum.rho[a])
        mapping[f"t{a + 1}"] = ctx.s ** int(k2) / ctx.t(a)
    return x.subs(mapping)


def transfer_diffop(traced, base, exchange_provider=None, zero_weight=None):
    """D^base_traced = sum_nu Tr_{traced[nu]}(R_{traced,base}(-lambda-rho)) T_nu.

    With zero_weight given, the (weight-preserving) coefficients are
    restricted to that weight space of base, which is where the scalar
    Macdonald-Ruijsenaars theory lives; otherwise they act on all of base,
    which is what the commuting-family identities need for small modules
    with no zero-weight vectors."""
    datum = traced.datum
    provider = exchange_provider or sl_normalized_exchange
    rop = provider(traced, base)
    ctx = rop.ctx
    if zero_weight is None:
        base_idx = list(range(base.dim))
    else:
        zero = tuple(Fraction(x) for x in zero_weight)
        base_idx = [i for i, w in enumerate(base.weights) if w == zero]
    if not base_idx:
        raise MacdonaldError("base module has no zero-weight space")
    idx = TensorIndex([traced.dim, base.dim])
    shifted = Mat(rop.mat.nrows, rop.mat.ncols, ctx)
    for (r, c, v) in rop.mat.entries():
        shifted.set(r, c, _neg_lambda_minus_rho(v, datum))
    out = DiffOp(ctx, len(base_idx))
    blocks = traced.weight_blocks()
    for nu, rows in blocks.items():
        coeff = Mat(len(base_idx), len(base_idx), ctx)
        for w in rows:
            for bi, vi in enumerate(base_idx):
                for bj, vj in enumerate(base_idx):
                    val = shifted[idx.flat((w, vi)), idx.flat((w, vj))]
                    if not val.is_zero:
                        coeff.add_to(bi, bj, val)
        cur = out.terms.get(tuple(nu))
        out._put(tuple(nu), coeff if cur is None else cur + coeff)
    return out


# -- Macdonald operators and polynomials --------------------------------------


def macdonald_operator(n, r, m):
    """M_r on functions of lambda_1..lambda_n, with t = q^(m+1)."""
    if not 1 <= r <= n:
        raise MacdonaldError("need 1 <= r <= n")
    ctx = quantum_ctx(n)
    t_par = ctx.s ** (2 * (m + 1))
    out = DiffOp(ctx, 1)
    from itertools import combinations
    for subset in combinations(range(n), r):
        coeff = ctx.one
        inside = set(subset)
        for i in subset:
            xi = ctx.t(i) ** 2
            for j in range(n):
                if j in inside:
                    continue
                xj = ctx.t(j) ** 2
                coeff = coeff * (t_par * xi - xj / t_par) / (xi - xj)
        nu = tuple(Fraction(1 if i in inside else 0) for i in range(n))
        mat = Mat(1, 1, ctx)
        mat.set(0, 0, coeff)
        cur = out.terms.get(nu)
        out._put(nu, mat if cur is None else cur + mat)
    return out


def macdonald_eigenvalue(n, r, m, mu):
    """sum_{|I|=r} prod_{i in I} q^(2 mu_i) t^(n+1-2i), t = q^(m+1)."""
    ctx = quantum_ctx(n)
    from itertools import combinations
    out = ctx.zero
    for subset in combinations(range(n), r):
        term = ctx.one
        for i in subset:
            expo = 4 * mu[i] + 2 * (m + 1) * (n + 1 - 2 * (i + 1))
            term = term * ctx.s ** expo
        out = out + term
    return out


def partitions_of(d, n):
    out = []

    def rec(remaining, maxpart, acc):
        if len(acc) == n:
            if remaining == 0:
                out.append(tuple(acc))
            return
        for k in range(min(remaining, maxpart), -1, -1):
            rec(remaining - k, k, acc + [k])

    rec(d, d, [])
    return out


def dominates(mu, nu):
    """mu >= nu in dominance order (same size)."""
    s1 = s2 = 0
    for a, b in zip(mu, nu):
        s1 += a
        s2 += b
        if s1 < s2:
            return False
    return True


def monomial_symmetric(ctx, nu):
    from itertools import permutations
    out = ctx.zero
    for sigma in sorted(set(permutations(nu))):
        term = ctx.one
        for i, k in enumerate(sigma):
            if k:
                term = term * ctx.t(i) ** (2 * k)
        out = out + term
    return out


def as_laurent(x):
    """Split a Scalar whose denominator is a single t-monomial into
    {t-exponent tuple: s-only Scalar}."""
    ctx = x.ctx
    den_terms = list(x.f.denom.terms())
    if len(den_terms) != 1:
        raise MacdonaldError("not a Laurent polynomial in the t variables")
    dmon, dcoef = den_terms[0]
    out = {}
    for monom, coeff in x.f.numer.terms():
        t_exp = tuple(monom[1 + a] - dmon[1 + a] for a in range(ctx.n))
        s_pow = monom[0] - dmon[0]
        val = ctx.from_fraction(Fraction(int(coeff.numerator),
                                         int(coeff.denominator))) \
            / ctx.from_fraction(Fraction(int(dcoef.numerator),
                                         int(dcoef.denominator)))
        val = val * ctx.s ** s_pow
        cur = out.get(t_exp)
        out[t_exp] = val if cur is None else cur + val
    return {k: v for k, v in out.items() if not v.is_zero}


def _monomial_expansion(ctx, x, degree, n):
    """Expand a symmetric Laurent polynomial in monomial symmetric functions."""
    coeffs = as_laurent(x)
    out = {}
    for t_exp, val in coeffs.items():
        if any(e % 2 for e in t_exp):
            raise MacdonaldError("odd t-exponent: not a polynomial in x_i")
        expo = tuple(e // 2 for e in t_exp)
        part = tuple(sorted(expo, reverse=True))
        if expo == part:
            out[part] = val
    return out


def macdonald_polynomial(n, mu, m):
    """The monic Macdonald polynomial P_mu(q, t=q^(m+1)) as a monomial-basis
    coefficient dict {partition: Scalar}, computed by the triangular
    eigenvalue solve against M_1 and verified against every M_r."""
    mu = tuple(mu)
    if list(mu) != sorted(mu, reverse=True) or any(k < 0 for k in mu):
        raise MacdonaldError("mu must be a partition")
    if len(mu) != n:
        mu = tuple(list(mu) + [0] * (n - len(mu)))
    ctx = quantum_ctx(n)
    d = sum(mu)
    space = [nu for nu in partitions_of(d, n) if dominates(mu, nu)]
    space.sort(key=lambda p: p, reverse=True)  # linear extension of dominance
    m1 = macdonald_operator(n, 1, m)
    # matrix of M_1 on the monomial basis of the dominance ideal
    col = {}
    for nu in space:
        image = m1.apply_scalar(monomial_symmetric(ctx, nu))
        col[nu] = _monomial_expansion(ctx, image, d, n)
    e1 = macdonald_eigenvalue(n, 1, m, mu)
    coeffs = {mu: ctx.one}
    for nu in space:
        if nu == mu:
            continue
        acc = ctx.zero
        for sigma, c_sigma in coeffs.items():
            acc = acc + c_sigma * col[sigma].get(nu, ctx.zero)
        diag = col[nu].get(nu, ctx.zero)
        denom = e1 - diag
        if denom.is_zero:
            raise MacdonaldError("eigenvalue collision at symbolic q")
        coeffs[nu] = acc / denom
    # verify every eigen-equation exactly
    poly = ctx.zero
    for nu, c in coeffs.items():
        poly = poly + c * monomial_symmetric(ctx, nu)
    for r in range(1, n + 1):
        mr = macdonald_operator(n, r, m)
        lhs = mr.apply_scalar(poly)
        rhs = macdonald_eigenvalue(n, r, m, mu) * poly
        if not (lhs - rhs).is_zero:
            raise MacdonaldError(f"eigen-equation fails for M_{r}")
    return coeffs


def schur_polynomial(n, mu):
    """Bialternant Schur polynomial in x_i = t_i^2 (monomial coefficients)."""
    ctx = quantum_ctx(n)
    mu = tuple(mu) + (0,) * (n - len(mu))
    from itertools import permutations

    def det(rows_exp):
        out = ctx.zero
        for sigma in permutations(range(n)):
            sign = 1
            seen = list(sigma)
            # permutation sign by counting inversions
            inv = sum(1 for i in range(n) for j in range(i + 1, n)
                      if seen[i] > seen[j])
            sign = -1 if inv % 2 else 1
            term = ctx.from_fraction(sign)
            for i in range(n):
                term = term * ctx.t(i) ** (2 * rows_exp[sigma[i]])
            out = out + term
        return out

    num = det([mu[j] + n - 1 - j for j in range(n)])
    den = det([n - 1 - j for j in range(n)])
    return _monomial_expansion(ctx, num / den, sum(mu), n)


def sl2_reduced_macdonald(r, m):
    """M_r for n = 2 reduced to the sl2 coordinate l = lambda_1 - lambda_2:
    coefficients are functions of x_1/x_2 = t^2 and the gl shifts e_1, e_2
    become l -> l +- 1 (all Macdonald coefficients are homogeneous of
    degree zero, so the reduction is exact)."""
    gl_op = macdonald_operator(2, r, m)
    ctx = quantum_ctx(1)
    out = DiffOp(ctx, 1)
    for nu, mat in gl_op.terms.items():
        c = mat[0, 0].convert(ctx, {"t1": ctx.t(0), "t2": ctx.one, "s": ctx.s})
        shift = (Fraction(nu[0]) - Fraction(nu[1]),)
        m2 = Mat(1, 1, ctx)
        m2.set(0, 0, c)
        cur = out.terms.get(shift)
        out._put(shift, m2 if cur is None else cur + m2)
    return out


def delta_q_sl2(ctx):
    """The Weyl denominator (Tr_{M_-rho} q^(2 lambda))^{-1}: expanding the
    geometric series gives q^(2(lambda,rho)) (1 - q^(-2(lambda,alpha))) --
    note the positive rho exponent -- which is t - 1/t in the sl2 coordinate."""
    return ctx.t(0) - 1 / ctx.t(0)


def gamma_m_sl2(ctx, m):
    out = ctx.one
    for i in range(1, m + 1):
        out = out * (ctx.t(0) - ctx.s ** (4 * i) / ctx.t(0))
    return out


def corollary91_check(n, r, m):
    """D_{Lambda^r}(q^{-1},-lambda) = delta gamma_m M_r gamma_m^{-1} delta^{-1}.

    The identity is an sl_n statement (in gl coordinates both sides differ
    by central q^(c(lambda_1+...+lambda_n)) gauge factors), so it is checked
    in the sl2 coordinate; desk scale n = 2, r = 1, m in {0, 1}.
    Returns (exact, lhs, rhs)."""
    if n != 2 or r != 1:
        raise MacdonaldError("the desk-scale identity is n = 2, r = 1")
    datum = build_type_A(2, "sl")
    vq = vector_rep(datum, quantum=True)
    base = trivial_rep(datum, quantum=True) if m == 0 else sym_power(vq, m * n)
    d_op = transfer_diffop(vq, base, zero_weight=datum.zero_weight)
    lhs = d_op.transform_q_inverse_neg_lambda()
    ctx = lhs.ctx
    g = delta_q_sl2(ctx) * gamma_m_sl2(ctx, m)
    rhs = sl2_reduced_macdonald(r, m).conjugate_by(g)
    return (lhs - rhs).is_zero, lhs, rhs


# -- weighted trace functions for quantum sl2 ---------------------------------


def zeta_expand(x, order):
    """Laurent expansion of a quantum sl2 Scalar at t -> infinity in
    zeta = 1/t: returns (valuation, coefficients as s-only Scalars)."""
    ctx = x.ctx
    if ctx.n != 1:
        raise MacdonaldError("zeta expansion is an sl2 (rank-1) computation")

    def reversed_poly(poly):
        terms = list(poly.terms())
        deg = max(mon[1] for mon, _ in terms)
        out = {}
        for mon, coeff in terms:
            key = deg - mon[1]
            cur = out.get(key, ctx.zero)
            out[key] = cur + ctx.from_fraction(
                Fraction(int(coeff.numerator), int(coeff.denominator))) \
                * ctx.s ** mon[0]
        return deg, out

    if x.is_zero:
        return 0, [ctx.zero] * (order + 1)
    dn, num = reversed_poly(x.f.numer)
    dd, den = reversed_poly(x.f.denom)
    vn = min(k for k, v in num.items() if not v.is_zero)
    vd = min(k for k, v in den.items() if not v.is_zero)
    val = (dd - dn) + (vn - vd)
    a = [num.get(vn + k, ctx.zero) for k in range(order + 1)]
    b = [den.get(vd + k, ctx.zero) for k in range(order + 1)]
    q = [ctx.zero] * (order + 1)
    for k in range(order + 1):
        acc = a[k]
        for j in range(k):
            acc = acc - q[j] * b[k - j]
        q[k] = acc / b[0]
    return val, q


class TraceSeries:
    """q^(2 c (lambda,mu)) times a zeta-Laurent series with mu-rational
    coefficients (zeta = q^(-lambda), sl2 coordinates)."""

    def __init__(self, ctx, mu_exp, val, coeffs):
        self.ctx = ctx          # quantum_ctx(1): s and t = q^mu
        self.mu_exp = Fraction(mu_exp)
        self.val = val
        self.coeffs = list(coeffs)

    def order_window(self):
        return self.val, self.val + len(self.coeffs) - 1

    def coeff_at(self, k):
        i = k - self.val
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ctx.zero

    def add(self, other):
        if self.mu_exp != other.mu_exp:
            raise MacdonaldError("prefactor mismatch")
        lo = min(self.val, other.val)
        hi = min(self.val + len(self.coeffs), other.val + len(other.coeffs))
        coeffs = [self.coeff_at(k) + other.coeff_at(k) for k in range(lo, hi)]
        return TraceSeries(self.ctx, self.mu_exp, lo, coeffs)

    def sub(self, other):
        return self.add(other.scale(self.ctx.from_fraction(-1)))

    def scale(self, factor):
        return TraceSeries(self.ctx, self.mu_exp, self.val,
                           [c * factor for c in self.coeffs])

    def mul_zeta_series(self, val2, coeffs2):
        n_keep = len(self.coeffs)
        out = [self.ctx.zero] * n_keep
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(coeffs2):
                if i + j < n_keep and not b.is_zero:
                    out[i + j] = out[i + j] + a * b
        return TraceSeries(self.ctx, self.mu_exp, self.val + val2, out)

    def shift_lambda_by(self, c):
        """lambda -> lambda + c: zeta -> zeta q^{-c}, prefactor gains t^(exp*c)."""
        c = Fraction(c)
        tfac = self.ctx.t(0) ** int(self.mu_exp * c) if (self.mu_exp * c).denominator == 1 \
            else None
        if tfac is None:
            raise MacdonaldError("non-integral prefactor shift")
        out = []
        for i, a in enumerate(self.coeffs):
            k = self.val + i
            out.append(a * tfac * self.ctx.s ** int(-2 * c * k))
        return TraceSeries(self.ctx, self.mu_exp, self.val, out)

    def shift_mu_by(self, c):
        """mu -> mu + c: t -> q^c t, prefactor gains zeta^(-exp*c)."""
        c = Fraction(c)
        zshift = self.mu_exp * c
        if (2 * c).denominator != 1 or zshift.denominator != 1:
            raise MacdonaldError("non-integral mu shift")
        sub = {"t1": self.ctx.t(0) * self.ctx.s ** int(2 * c)}
        out = [a.subs(sub) for a in self.coeffs]
        return TraceSeries(self.ctx, self.mu_exp, self.val - int(zshift), out)

    def mul_mu_rational(self, factor):
        return self.scale(factor)

    def is_zero_through(self, k_max):
        for k in range(self.val, k_max + 1):
            if not self.coeff_at(k).is_zero:
                return False
        return True


def sl2_trace_function(depth, module=None):
    """Psi data for the quantum sl2 module (default: the 3-dimensional one).

    Returns (module, diagonal coefficients a_k(mu) for k = 0..depth): the
    trace over the Verma slice is q^(2(lambda,mu)) sum_k a_k zeta^(2k)."""
    datum = build_type_A(2, "sl")
    if module is None:
        v = vector_rep(datum, quantum=True)
        module = sym_power(v, 2)
    zero = (Fraction(0),)
    idx0 = module.weights.index(zero)
    sl = verma_slice(datum, datum.zero_weight, depth, quantum=True)
    phi = solve_intertwiner(sl, module, idx0)
    ctx = sl.ctx
    a = []
    for k in range(depth + 1):
        word = (0,) * k
        vec = apply_coproduct_word(phi, list(word))
        a.append(vec.get((word, idx0), ctx.zero))
    return module, a


def _q_matrix_on_dual(module, depth):
    """Q(mu) restricted to module*, as a matrix over q^mu: the universal
    fusion at argument -mu-rho pushed through m^op (1 (x) S^{-1})."""
    datum = module.datum
    ctx = module.ctx
    terms = universal_sl2_fusion(depth, quantum=True)
    e_mat = module.e(0)
    f_mat = module.f(0)
    k_inv = module.k_diag(0, inverse=True)
    s_f = (f_mat * k_inv) * ctx.from_fraction(-1)  # S(f) = -f K^{-1}
    out = Mat.identity(module.dim, ctx)
    e_pow = Mat.identity(module.dim, ctx)
    sf_pow_t = Mat.identity(module.dim, ctx)
    for term in terms:
        n = term.n
        if n == 0:
            continue
        e_pow = e_mat * e_pow
        sf_pow_t = sf_pow_t * s_f.transpose()
        if e_pow.is_zero:
            break
        # G_n = g_n(arg, h) e^n evaluated on the module, arg = -mu - rho
        g_eval = Mat(module.dim, module.dim, ctx)
        for (r, c, v) in e_pow.entries():
            h_val = module.weights[r][0]
            k2 = 2 * Fraction(h_val)
            coeff = term.coeff.convert(
                ctx, {"t1": ctx.s ** -2 / ctx.t(0), "x": ctx.s ** int(k2),
                      "s": ctx.s})
            g_eval.set(r, c, coeff * v)
        out = out + g_eval.transpose() * sf_pow_t
    return out


def f_v_series(depth, order, module=None):
    """F_V(lambda, mu) as a TraceSeries through zeta-order `order`."""
    datum = build_type_A(2, "sl")
    module, a = sl2_trace_function(depth, module)
    ctx = quantum_ctx(1)
    # Psi(lambda, -mu-rho): substitute t -> q^{-mu-1} in the a_k, prefactor
    # becomes q^{-2(lambda,mu)} zeta
    sub = {"t1": ctx.s ** -2 / ctx.t(0)}
    coeffs = [ctx.zero] * (order + 1)
    for k, ak in enumerate(a):
        if 2 * k <= order:
            coeffs[2 * k] = ak.subs(sub)
    psi = TraceSeries(ctx, -1, 1, coeffs)  # the zeta from q^{-2(lambda,rho)}
    # delta_q(lambda) = q^(2(lambda,rho))(1 - q^(-2(lambda,alpha)))
    #                 = zeta^{-1} (1 - zeta^2)
    delta_val, delta_coeffs = -1, [ctx.one, ctx.zero, ctx.from_fraction(-1)]
    out = psi.mul_zeta_series(delta_val, delta_coeffs)
    # Q^{-1}(mu) on the dual zero-weight line
    qmat = _q_matrix_on_dual(module, min(depth, 2 * len(module.weights)))
    zero = (Fraction(0),)
    i0 = module.weights.index(zero)
    q_scalar = qmat[i0, i0]
    if q_scalar.is_zero:
        raise MacdonaldError("Q is singular on the zero-weight line")
    return module, out.mul_mu_rational(1 / q_scalar)


def _transfer_zeta_terms(traced, base, order):
    """The shifted-exchange transfer coefficients, zeta-expanded: a list of
    (nu coordinate, valuation, coefficients) restricted to base[0]."""
    datum = traced.datum
    rop = sl_normalized_exchange(traced, base)
    ctx = rop.ctx
    zero = (Fraction(0),)
    base_idx = [i for i, w in enumerate(base.weights) if w == zero]
    if len(base_idx) != 1:
        raise MacdonaldError("base zero-weight space must be one-dimensional")
    b0 = base_idx[0]
    idx = TensorIndex([traced.dim, base.dim])
    out = []
    for nu, rows in traced.weight_blocks().items():
        acc = ctx.zero
        for w in rows:
            v = rop.mat[idx.flat((w, b0)), idx.flat((w, b0))]
            if not v.is_zero:
                acc = acc + _neg_lambda_minus_rho(v, datum)
        if acc.is_zero:
            continue
        val, coeffs = zeta_expand(acc, order)
        out.append((Fraction(nu[0]), val, coeffs))
    return out


def mr_residual(depth, order, dual_side=False):
    """Theorem 9.1 (or 9.2) residual through the given zeta order, for the
    3-dimensional quantum sl2 module with W = C^2."""
    datum = build_type_A(2, "sl")
    w_mod = vector_rep(datum, quantum=True)
    module, f_series = f_v_series(depth, 2 * depth + 2)
    ctx = f_series.ctx
    if not dual_side:
        terms = _transfer_zeta_terms(w_mod, module, 2 * depth + 2)
        applied = None
        for (nu, val, coeffs) in terms:
            shifted = f_series.shift_lambda_by(nu)
            term = shifted.mul_zeta_series(val, coeffs)
            applied = term if applied is None else applied.add(term)
        chi = ctx.t(0) + 1 / ctx.t(0)
        rhs = f_series.mul_mu_rational(chi)
        resid = applied.sub(rhs)
        return resid, resid.is_zero_through(order)
    # dual side: operator in mu with V* exchange, chi at q^{-2 lambda}
    vdual = dual(module)
    rop = sl_normalized_exchange(w_mod, vdual)
    zero = (Fraction(0),)
    i0 = vdual.weights.index(zero)
    idx = TensorIndex([w_mod.dim, vdual.dim])
    applied = None
    for nu, rows in w_mod.weight_blocks().items():
        acc = ctx.zero
        for w in rows:
            v = rop.mat[idx.flat((w, i0)), idx.flat((w, i0))]
            if not v.is_zero:
                acc = acc + _neg_lambda_minus_rho(v, datum)
        if acc.is_zero:
            continue
        shifted = f_series.shift_mu_by(Fraction(nu[0]))
        term = shifted.mul_mu_rational(acc)
        applied = term if applied is None else applied.add(term)
    # chi_W(q^{-2 lambda}) = zeta + zeta^{-1}
    rhs = f_series.mul_zeta_series(-1, [ctx.one, ctx.zero, ctx.one])
    resid = applied.sub(rhs)
    return resid, resid.is_zero_through(order)


def symmetry_residuals(depth, biorder):
    """Theorem 9.3: F_V(lambda,mu) = F*_{V*}(mu,lambda) through bi-order.

    Returns the list of mismatched coefficient positions (empty = pass)."""
    datum = build_type_A(2, "sl")
    v = sym_power(vector_rep(datum, quantum=True), 2)
    vd = dual(v)
    _, f_v = f_v_series(depth, 2 * depth + 2, v)
    _, f_vd = f_v_series(depth, 2 * depth + 2, vd)
    ctx = f_v.ctx
    bad = []
    for i in range(biorder + 1):
        for j in range(biorder + 1):
            lhs = _bi_coefficient(ctx, f_v, i, j, 2 * depth + 2)
            rhs = _bi_coefficient(ctx, f_vd, j, i, 2 * depth + 2)
            if not (lhs - rhs).is_zero:
                bad.append((i, j))
    return bad


def _bi_coefficient(ctx, series, i, j, order):
    """Coefficient of zeta_lambda^i zeta_mu^j after expanding the mu-rational
    coefficient of zeta_lambda^i at t -> infinity."""
    c = series.coeff_at(i)
    if c.is_zero:
        return ctx.zero
    val, coeffs = zeta_expand(c, order)
    k = j - val
    if 0 <= k < len(coeffs):
        return coeffs[k]
    return ctx.zero
