"""Exact residual checks: QDYBE, CDYBE, Hecke, unitarity, cocycle, gauge
closure, and the dynamical Hecke/braid representation.

Every check returns a ResidualReport whose exact_zero flag is true iff the
residual vanishes identically in the coefficient field; on failure the
first offending entry is recorded as a witness.  Nothing here is numeric.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .catalog import ClassicalRMatrix
from .fusion import DynOp, fusion_exchange_construction, place_in_slots
from .linalg import Mat
from .reps import TensorIndex, permutation_matrix, tensor


class VerifyError(Exception):
    pass


class PreconditionError(VerifyError):
    pass


class InvalidGaugeError(VerifyError):
    pass


@dataclass
class ResidualReport:
    equation: str
    operands: str
    exact_zero: bool
    witness: Optional[Tuple] = None
    entries_checked: int = 0

    def __bool__(self):
        return self.exact_zero

    def to_dict(self):
        out = {
            "equation": self.equation,
            "operands": self.operands,
            "exact_zero": self.exact_zero,
            "entries_checked": self.entries_checked,
        }
        if self.witness is not None:
            out["witness"] = {"index": list(self.witness[0]),
                              "value": self.witness[1]}
        return out


def _report_from_matrix(equation, operands, mat, indexer=None):
    witness = None
    count = 0
    for (r, c, v) in sorted(mat.entries()):
        count += 1
        if not v.is_zero and witness is None:
            key = (r, c) if indexer is None else (indexer(r), indexer(c))
            witness = (key, v.to_text())
    return ResidualReport(equation, operands, witness is None, witness, count)


def qdybe_residual(rop, name="R"):
    """R12(l-h3) R13 R23(l-h1) - R23 R13(l-h2) R12 on V (x) V (x) V."""
    if len(rop.factors) != 2:
        raise PreconditionError("QDYBE needs a two-factor operator")
    if not rop.is_weight_zero():
        raise PreconditionError("QDYBE needs a weight-zero operator")
    v, w = rop.factors
    if v is not w and v.dim != w.dim:
        raise PreconditionError("QDYBE is stated on V (x) V")
    factors = [v, v, v]
    r12 = place_in_slots(rop, factors, 0, 1)
    r13 = place_in_slots(rop, factors, 0, 2)
    r23 = place_in_slots(rop, factors, 1, 2)
    lhs = r12.shifted(2) * r13 * r23.shifted(0)
    rhs = r23 * r13.shifted(1) * r12
    diff = lhs.mat - rhs.mat
    idx = TensorIndex([v.dim, v.dim, v.dim])
    return _report_from_matrix("qdybe", name, diff, idx.multi)


def cdybe_residual(rmat, name=None):
    """The classical dynamical Yang-Baxter residual of a g (x) g tensor.

    Alt(sum_j h_j (x) d/dl_j applied to r) + [r12,r13]+[r12,r23]+[r13,r23],
    expanded over the elementary-matrix basis of g (x) g (x) g.
    """
    datum, ctx = rmat.datum, rmat.ctx
    name = name or rmat.name
    acc = {}

    def add_tensor(a, b, c, coeff):
        if coeff.is_zero:
            return
        for (i1, j1), v1 in a.items():
            for (i2, j2), v2 in b.items():
                for (i3, j3), v3 in c.items():
                    val = coeff * (Fraction(v1) * Fraction(v2) * Fraction(v3))
                    key = ((i1, j1), (i2, j2), (i3, j3))
                    cur = acc.get(key)
                    acc[key] = val if cur is None else cur + val

    # derivative part (r-matrices defined on l* carry their own pairs)
    for (h, coord) in rmat.cartan_pairs():
        for (a, b, c) in rmat.terms:
            dc = c.diff_lambda(coord, eps=rmat.w_eps) if ctx.mode == "symbol" \
                else c.diff_lambda(coord)
            if dc.is_zero:
                continue
            add_tensor(h, a, b, dc)                 # x^(1) d r^23
            add_tensor(a, h, b, -dc)                # -x^(2) d r^13
            add_tensor(a, b, h, dc)                 # +x^(3) d r^12
    # commutator part
    from .rootdata import mat_bracket
    terms = rmat.terms
    for (a1, b1, c1) in terms:
        for (a2, b2, c2) in terms:
            cc = c1 * c2
            if cc.is_zero:
                continue
            add_tensor(mat_bracket(a1, a2), b1, b2, cc)   # [r12, r13]
            add_tensor(a1, mat_bracket(b1, a2), b2, cc)   # [r12, r23]
            add_tensor(a1, a2, mat_bracket(b1, b2), cc)   # [r13, r23]
    witness = None
    count = 0
    for key in sorted(acc):
        count += 1
        if not acc[key].is_zero and witness is None:
            witness = (key, acc[key].to_text())
    return ResidualReport("cdybe", name, witness is None, witness, count)


def hecke_check(rop, q, name="R"):
    """PR has eigenvalue 1 on V_a (x) V_a and eigenvalues 1, -q on the mixed
    weight blocks: (PR - 1) kills the diagonal blocks and (PR-1)(PR+q) = 0."""
    v = rop.factors[0]
    ctx = rop.ctx
    n = v.dim
    idx = TensorIndex([n, n])
    pr = DynOp([v, v], permutation_matrix(n, n, ctx) * rop.mat)
    ident = Mat.identity(n * n, ctx)
    m1 = pr.mat - ident
    for a in range(n):
        col = idx.flat((a, a))
        for r in range(n * n):
            if not m1[r, col].is_zero:
                return ResidualReport("hecke", name, False,
                                      ((idx.multi(r), (a, a)), m1[r, col].to_text()))
    quad = m1 * (pr.mat + ident * q)
    return _report_from_matrix("hecke", name, quad, idx.multi)


def unitarity_check(rmat, eps=None, name=None):
    """r + r^21 = eps * Omega as an exact g (x) g tensor identity."""
    ctx = rmat.ctx
    eps = rmat.coupling if eps is None else ctx(eps)
    name = name or rmat.name
    acc = {}

    def add(a, b, coeff):
        if coeff.is_zero:
            return
        for (i1, j1), v1 in a.items():
            for (i2, j2), v2 in b.items():
                key = ((i1, j1), (i2, j2))
                val = coeff * (Fraction(v1) * Fraction(v2))
                cur = acc.get(key)
                acc[key] = val if cur is None else cur + val

    for (a, b, c) in rmat.terms:
        add(a, b, c)
        add(b, a, c)
    for (a, b, c) in rmat.datum.casimir():
        add(a, b, -eps * Fraction(c))
    witness = None
    count = 0
    for key in sorted(acc):
        count += 1
        if not acc[key].is_zero and witness is None:
            witness = (key, acc[key].to_text())
    return ResidualReport("unitarity", name, witness is None, witness, count)


def cocycle_residual(u, w, v, builder=fusion_exchange_construction, name="J"):
    """J_{U(x)W,V} (J_{UW}(l-h3) (x) 1) = J_{U,W(x)V} (1 (x) J_{WV})."""
    uw = tensor(u, w)
    wv = tensor(w, v)
    factors = [u, w, v]
    j_uw_v = builder(uw, v)       # on (U (x) W) (x) V: same flat space
    j_uw = builder(u, w)
    j_u_wv = builder(u, wv)
    j_wv = builder(w, v)
    left = DynOp(factors, j_uw_v.mat) * place_in_slots(j_uw, factors, 0, 1).shifted(2)
    right = DynOp(factors, j_u_wv.mat) * place_in_slots(j_wv, factors, 1, 2)
    diff = left.mat - right.mat
    idx = TensorIndex([u.dim, w.dim, v.dim])
    return _report_from_matrix("cocycle", name, diff, idx.multi)


# -- gauge transformations ---------------------------------------------------


def gauge_classical(rmat, kind, data):
    """The Section-4.1 moves on classical dynamical r-matrices."""
    datum, ctx = rmat.datum, rmat.ctx
    if kind == 1:
        coeffs = {tuple(k): ctx(val) for k, val in data.items()}
        _check_closed_2form(ctx, datum, coeffs, rmat.w_eps)
        terms = list(rmat.terms)
        pairs = datum.cartan_pairs()
        for (i, j), c in coeffs.items():
            hi = pairs[i][0]
            hj = pairs[j][0]
            terms.append((hi, hj, c))
            terms.append((hj, hi, -c))
        return ClassicalRMatrix(datum, ctx, terms, rmat.coupling, rmat.w_eps,
                                rmat.name + "+2form")
    if kind == 2:
        nu = [Fraction(x) for x in data]
        terms = [(a, b, c.shift_lambda(nu)) for (a, b, c) in rmat.terms]
        return ClassicalRMatrix(datum, ctx, terms, rmat.coupling, rmat.w_eps,
                                rmat.name + "+shift")
    if kind == 3:
        sigma = list(data)
        terms = []
        for (a, b, c) in rmat.terms:
            a2 = _conjugate_by_permutation(a, sigma)
            b2 = _conjugate_by_permutation(b, sigma)
            c2 = _permute_coordinates(ctx, c, sigma)
            terms.append((a2, b2, c2))
        return ClassicalRMatrix(datum, ctx, terms, rmat.coupling, rmat.w_eps,
                                rmat.name + "+weyl")
    raise InvalidGaugeError(f"unknown classical gauge kind {kind}")


def _check_closed_2form(ctx, datum, coeffs, w_eps):
    n = datum.n_coords

    def get(i, j):
        if (i, j) in coeffs:
            return coeffs[(i, j)]
        if (j, i) in coeffs:
            return -coeffs[(j, i)]
        return ctx.zero

    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                diff = (get(i, j).diff_lambda(k, eps=w_eps)
                        - get(i, k).diff_lambda(j, eps=w_eps)
                        + get(j, k).diff_lambda(i, eps=w_eps)) \
                    if ctx.mode == "symbol" else (
                        get(i, j).diff_lambda(k)
                        - get(i, k).diff_lambda(j)
                        + get(j, k).diff_lambda(i))
                if not diff.is_zero:
                    raise InvalidGaugeError("2-form is not closed")


def _conjugate_by_permutation(x, sigma):
    return {(sigma[a], sigma[b]): v for (a, b), v in x.items()}


def _permute_coordinates(ctx, c, sigma):
    """Substitute coordinate a by coordinate sigma(a) in every symbol."""
    mapping = {}
    for a, b in enumerate(sigma):
        if a != b:
            if ctx.mode == "quantum":
                mapping[f"t{a + 1}"] = ctx.gen(f"t{b + 1}")
            else:
                mapping[f"l{a + 1}"] = ctx.gen(f"l{b + 1}")
                if ctx.mode == "symbol":
                    mapping[f"w{a + 1}"] = ctx.gen(f"w{b + 1}")
    return c.subs(mapping) if mapping else c


def gauge_quantum(rop, kind, data):
    """The Section-6.2 moves on quantum dynamical R-matrices of Hecke form."""
    v = rop.factors[0]
    ctx = rop.ctx
    n = v.dim
    idx = TensorIndex([n, n])
    if kind == 1:
        phi = {k: ctx(val) for k, val in data.items()}
        _check_multiplicative_2form(ctx, v, phi)
        out = rop.mat.copy()
        for a in range(n):
            for b in range(n):
                if a == b:
                    continue
                key = (idx.flat((a, b)), idx.flat((a, b)))
                cur = out[key[0], key[1]]
                if not cur.is_zero:
                    out.set(key[0], key[1], cur * _phi_get(ctx, phi, a, b))
        return DynOp([v, v], out)
    if kind == 2:
        nu = [Fraction(x) for x in data]
        return rop.shift_all(nu)
    if kind == 3:
        sigma = list(data)
        out = Mat(rop.dim, rop.dim, ctx)
        for (r, c, val) in rop.mat.entries():
            ra, rb = idx.multi(r)
            ca, cb = idx.multi(c)
            val2 = _permute_coordinates(ctx, val, sigma)
            out.set(idx.flat((sigma[ra], sigma[rb])),
                    idx.flat((sigma[ca], sigma[cb])), val2)
        return DynOp([v, v], out)
    raise InvalidGaugeError(f"unknown quantum gauge kind {kind}")


def _phi_get(ctx, phi, a, b):
    if (a, b) in phi:
        return phi[(a, b)]
    if (b, a) in phi:
        return 1 / phi[(b, a)]
    return ctx.one


def _check_multiplicative_2form(ctx, v, phi):
    n = v.dim
    eps_a = [v.weights[a] for a in range(n)]
    for a in range(n):
        for b in range(n):
            pab = _phi_get(ctx, phi, a, b)
            pba = _phi_get(ctx, phi, b, a)
            if not (pab * pba - 1).is_zero:
                raise InvalidGaugeError("phi_ab phi_ba != 1")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                pab = _phi_get(ctx, phi, a, b)
                pbc = _phi_get(ctx, phi, b, c)
                pca = _phi_get(ctx, phi, c, a)
                lhs = (pab / pab.shift_lambda(eps_a[c])) \
                    * (pbc / pbc.shift_lambda(eps_a[a])) \
                    * (pca / pca.shift_lambda(eps_a[b]))
                if not (lhs - 1).is_zero:
                    raise InvalidGaugeError("multiplicative 2-form not closed")


# -- dynamical Hecke / braid representation ----------------------------------


def dynamical_hecke_rep(rop, p, q, name="R"):
    """Check operators R-hat_i = P R in slots (i, i+1), argument shifted by
    the weights of the earlier slots (lambda - sum_{k<i} h^(k)), on V^(x p).

    With the P-then-R composition this is the convention whose p = 3 braid
    relation is literally the QDYBE (shifting by the later slots gives the
    reversed-product equation instead).  Returns (operators, report): the
    report asserts braid relations, locality, and the quadratic Hecke
    relation per generator, exactly.
    """
    v = rop.factors[0]
    ctx = rop.ctx
    factors = [v] * p
    ops = []
    for i in range(p - 1):
        placed = place_in_slots(rop, factors, i, i + 1)
        for k in range(i):
            placed = placed.shifted(k)
        pmat = place_in_slots(
            DynOp([v, v], permutation_matrix(v.dim, v.dim, ctx)), factors, i, i + 1)
        ops.append(DynOp(factors, pmat.mat * placed.mat))
    dim = ops[0].dim if ops else 0
    ident = Mat.identity(dim, ctx)
    failures = []
    count = 0
    for i, op in enumerate(ops):
        quad = (op.mat - ident) * (op.mat + ident * q)
        count += 1
        if not quad.is_zero:
            failures.append(("quadratic", i, _first_entry(quad)))
    for i in range(len(ops) - 1):
        lhs = ops[i].mat * ops[i + 1].mat * ops[i].mat
        rhs = ops[i + 1].mat * ops[i].mat * ops[i + 1].mat
        count += 1
        if not (lhs - rhs).is_zero:
            failures.append(("braid", i, _first_entry(lhs - rhs)))
    for i in range(len(ops)):
        for j in range(i + 2, len(ops)):
            comm = ops[i].mat * ops[j].mat - ops[j].mat * ops[i].mat
            count += 1
            if not comm.is_zero:
                failures.append(("locality", (i, j), _first_entry(comm)))
    report = ResidualReport("dynamical-hecke", f"{name}, p={p}",
                            not failures,
                            failures[0] if failures else None, count)
    return ops, report


def _first_entry(mat):
    for (r, c, v) in sorted(mat.entries()):
        if not v.is_zero:
            return ((r, c), v.to_text())
    return None


def perturb_dynop(rop, row_multi, col_multi, value):
    """Add value at a (weight-zero) position: negative-control helper."""
    out = rop.mat.copy()
    idx = rop.index
    out.add_to(idx.flat(tuple(row_multi)), idx.flat(tuple(col_multi)),
               rop.ctx(value))
    return DynOp(rop.factors, out)
