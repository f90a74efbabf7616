from fractions import Fraction

from dybax.macdonald import (
    DiffOp,
    corollary91_check,
    macdonald_eigenvalue,
    macdonald_operator,
    macdonald_polynomial,
    monomial_symmetric,
    mr_residual,
    schur_polynomial,
    sl2_trace_function,
    symmetry_residuals,
    transfer_diffop,
    zeta_expand,
)
from dybax.reps import sym_power, tensor, trivial_rep, vector_rep
from dybax.rootdata import build_type_A
from dybax.scalars import quantum_ctx


def test_diffop_composition_law():
    ctx = quantum_ctx(2)
    a = DiffOp.scalar_term(ctx, (1, 0), ctx.t(0))
    b = DiffOp.scalar_term(ctx, (0, 1), ctx.t(1) ** 2)
    ab = a * b
    # (c T_nu)(c' T_mu) = c * c'(lambda+nu) T_(nu+mu)
    assert list(ab.terms) == [(1, 0 + 1)] or list(ab.terms) == [(Fraction(1), Fraction(1))]
    coeff = ab.scalar_coefficient((1, 1))
    assert coeff == ctx.t(0) * (ctx.t(1) ** 2)
    # associativity on a third term
    c = DiffOp.scalar_term(ctx, (1, 1), 1 / (ctx.t(0) - 1))
    assert ((a * b) * c - a * (b * c)).is_zero
    ident = DiffOp.identity(ctx, 1, 2)
    assert (ident * a - a).is_zero and (a * ident - a).is_zero


def test_macdonald_operator_coefficients():
    m1 = macdonald_operator(2, 1, 0)
    ctx = m1.ctx
    x1, x2 = ctx.t(0) ** 2, ctx.t(1) ** 2
    t = ctx.s ** 2
    assert m1.scalar_coefficient((1, 0)) == (t * x1 - x2 / t) / (x1 - x2)
    assert m1.scalar_coefficient((0, 1)) == (t * x2 - x1 / t) / (x2 - x1)
    # |I| = n: empty product
    mn = macdonald_operator(3, 3, 2)
    assert len(mn.terms) == 1
    assert mn.scalar_coefficient((1, 1, 1)) == ctx.one if False else \
        mn.scalar_coefficient((1, 1, 1)) == mn.ctx.one


def test_macdonald_commutativity():
    for m in (0, 1, 2):
        ops = [macdonald_operator(3, r, m) for r in (1, 2, 3)]
        for i in range(3):
            for j in range(i + 1, 3):
                assert (ops[i] * ops[j] - ops[j] * ops[i]).is_zero, (i, j, m)


def test_macdonald_commutativity_on_monomials():
    # exact operator application to all Laurent monomials of degree <= 3
    ctx = quantum_ctx(2)
    m1 = macdonald_operator(2, 1, 1)
    m2 = macdonald_operator(2, 2, 1)
    comm = m1 * m2 - m2 * m1
    for e1 in range(-3, 4):
        for e2 in range(-3, 4):
            if abs(e1) + abs(e2) > 3:
                continue
            mono = ctx.t(0) ** (2 * e1) * ctx.t(1) ** (2 * e2)
            assert comm.apply_scalar(mono).is_zero


def test_macdonald_polynomial_small():
    p = macdonald_polynomial(2, (1, 0), 0)
    ctx = quantum_ctx(2)
    assert set(p) == {(1, 0)} and p[(1, 0)] == ctx.one
    p0 = macdonald_polynomial(2, (0, 0), 1)
    assert set(p0) == {(0, 0)}


def test_macdonald_polynomial_coefficient():
    # n=2, mu=(2,0): P = m_(2,0) + c m_(1,1), c = (1+q^2)(1-t^2... pinned by
    # the eigen-equation; at t=q the coefficient must be the Schur value 1
    p = macdonald_polynomial(2, (2, 0), 0)
    ctx = quantum_ctx(2)
    assert p[(1, 1)] == ctx.one
    # generic m: coefficient differs from 1
    p1 = macdonald_polynomial(2, (2, 0), 1)
    assert not (p1[(1, 1)] - 1).is_zero


def test_schur_specialization():
    for n, mu in ((2, (2, 0)), (2, (2, 1)), (3, (2, 1, 0)), (3, (1, 1, 1))):
        p = macdonald_polynomial(n, mu, 0)
        s = schur_polynomial(n, mu)
        assert set(p) == set(s)
        assert all((p[k] - s[k]).is_zero for k in p)


def test_eigenvalue_formula():
    # apply M_r directly and compare with the closed-form eigenvalue
    ctx = quantum_ctx(2)
    mu = (2, 1)
    m = 1
    coeffs = macdonald_polynomial(2, mu, m)
    poly = ctx.zero
    for nu, c in coeffs.items():
        poly = poly + c * monomial_symmetric(ctx, nu)
    for r in (1, 2):
        lhs = macdonald_operator(2, r, m).apply_scalar(poly)
        assert lhs == macdonald_eigenvalue(2, r, m, mu) * poly


def test_transfer_factorization_on_zero_weight():
    datum = build_type_A(2, "sl")
    for quantum in (False, True):
        v = vector_rep(datum, quantum)
        u = sym_power(v, 2)
        d_v = transfer_diffop(v, u, zero_weight=(0,))
        d_vw = transfer_diffop(tensor(v, v), u, zero_weight=(0,))
        assert (d_vw - d_v * d_v).is_zero
        d_s = transfer_diffop(u, u, zero_weight=(0,))
        assert (d_v * d_s - d_s * d_v).is_zero
        assert (transfer_diffop(tensor(v, u), u, zero_weight=(0,))
                - d_v * d_s).is_zero


def test_transfer_trivial_traced():
    datum = build_type_A(2, "sl")
    u = vector_rep(datum)
    d = transfer_diffop(trivial_rep(datum), u)
    assert list(d.terms) == [(0,)]
    assert d.terms[(Fraction(0),)].is_identity()


def test_corollary91():
    for m in (0, 1):
        ok, lhs, rhs = corollary91_check(2, 1, m)
        assert ok, f"m={m}"


def test_zeta_expand():
    ctx = quantum_ctx(1)
    s, t = ctx.s, ctx.t(0)
    # 1/(t - 1) = zeta/(1 - zeta) = zeta + zeta^2 + ...
    val, coeffs = zeta_expand(1 / (t - 1), 3)
    assert val == 1
    assert all(c == ctx.one for c in coeffs)
    # s-dependence stays exact
    val2, coeffs2 = zeta_expand((s * t + 1) / t, 2)
    assert val2 == 0 and coeffs2[0] == s and coeffs2[1] == ctx.one


def test_trace_leading_coefficient():
    module, a = sl2_trace_function(2)
    assert a[0] == quantum_ctx(1).one
    # depth-1 coefficient is a nontrivial rational function of q^mu
    assert not a[1].is_zero


def test_mr_equations_and_symmetry():
    _, ok1 = mr_residual(depth=3, order=6)
    assert ok1
    _, ok2 = mr_residual(depth=3, order=6, dual_side=True)
    assert ok2
    assert symmetry_residuals(depth=3, biorder=2) == []
