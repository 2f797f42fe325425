"""Irreducible highest-weight modules as explicit exact matrices.

Modules are built from the highest-weight vector by applying lowering
operators level by level.  Linear dependence among the lowered vectors is
decided through the contravariant form, computed by the commutation
recursion <f_i b, u> = <b, e_i u>; since that form is definite on each
weight space, a singular Gram matrix certifies dependence and yields the
expansion coefficients.  Termination is certified by reaching the Weyl
dimension, and the per-weight counts must land exactly on the Freudenthal
multiplicities.
"""

import threading
import weakref

from .exactla import (
    G_ONE,
    G_ZERO,
    RAT,
    SparseOp,
    as_gauss,
)


class ModuleError(ValueError):
    pass


def weyl_dimension(rs, lam):
    lam = tuple(lam)
    if not rs.is_dominant_integral(lam):
        raise ModuleError("weight is not dominant integral: %r" % (lam,))
    rho = rs.rho_w()
    shifted = tuple(a + b for a, b in zip(lam, rho))
    q = as_gauss(1)
    for alpha in rs.positive_roots:
        q = q * rs.form_weight_root(shifted, alpha) / rs.form_weight_root(
            rho, alpha
        )
    if not q.is_integer():
        raise ModuleError("non-integral Weyl dimension")
    return int(q.re)


def freudenthal_multiplicities(rs, lam):
    """Weight multiplicities by the Freudenthal recursion, top down."""
    lam = tuple(lam)
    if not rs.is_dominant_integral(lam):
        raise ModuleError("weight is not dominant integral: %r" % (lam,))
    rho = rs.rho_w()
    top = tuple(a + b for a, b in zip(lam, rho))
    top_norm = rs.weight_form(top, top)
    simple_fund = [
        tuple(rs.cartan[j][i] for j in range(rs.rank)) for i in range(rs.rank)
    ]
    pos_fund = [rs.root_weight_coords(a) for a in rs.positive_roots]

    mult = {lam: 1}
    frontier = [lam]
    while frontier:
        candidates = sorted(
            {
                tuple(m - s for m, s in zip(mu, sv))
                for mu in frontier
                for sv in simple_fund
            },
            reverse=True,
        )
        frontier = []
        for mu in candidates:
            rhs = as_gauss(0)
            for alpha, af in zip(rs.positive_roots, pos_fund):
                k = 1
                while True:
                    up = tuple(m + k * a for m, a in zip(mu, af))
                    m_up = mult.get(up)
                    if m_up is None:
                        break
                    rhs = rhs + rs.form_weight_root(up, alpha) * (2 * m_up)
                    k += 1
            if rhs.is_zero():
                continue
            shifted = tuple(m + r for m, r in zip(mu, rho))
            den = top_norm - rs.weight_form(shifted, shifted)
            if den.is_zero():
                raise ModuleError("Freudenthal denominator vanished")
            m = rhs / den
            if not m.is_integer() or m.re <= 0:
                raise ModuleError("non-integral multiplicity")
            mult[mu] = int(m.re)
            frontier.append(mu)
    if sum(mult.values()) != weyl_dimension(rs, lam):
        raise ModuleError("multiplicity total disagrees with Weyl dimension")
    return mult


class HighestWeightModule:
    """Immutable module data: weights per basis index and generator matrices.

    nu_basis[k] is the matrix of the k-th algebra basis element, in the
    algebra's own basis order (positive roots, negative roots, Cartan).
    """

    def __init__(self, alg, lam, weights, mult, nu_basis):
        self.alg = alg
        self.lam = lam
        self.dim = len(weights)
        self.weights = weights
        self.mult = mult
        self.nu_basis = nu_basis
        self.weight_index = {}
        for b, w in enumerate(weights):
            self.weight_index.setdefault(w, []).append(b)

    def action(self, x):
        """nu(X) as a sparse operator; ScaledScalar coordinates supported."""
        if x.algebra is not self.alg:
            raise ModuleError("algebra mismatch")
        out = SparseOp(self.dim)
        for k, c in enumerate(x.coords):
            if hasattr(c, "is_zero") and c.is_zero():
                continue
            out = out.add(self.nu_basis[k].scale(c))
        return out

    def dual(self, x):
        return self.action(x).transpose().negate()

    def extreme_vector(self, sigma, sign):
        """Weight vector of weight sign*sigma(lam) in the dual module."""
        if sign not in (1, -1):
            raise ModuleError("sign must be +1 or -1")
        w = sigma.act(self.lam)
        target = tuple(-sign * c for c in w)
        hits = self.weight_index.get(target, [])
        if len(hits) != 1:
            raise ModuleError("extreme weight space is not a line")
        coords = [G_ZERO] * self.dim
        coords[hits[0]] = G_ONE
        return coords


_CACHE_LOCK = threading.Lock()
_MODULE_CACHE = weakref.WeakKeyDictionary()

DEFAULT_CEILING = 5000


def build_module(alg, lam, ceiling=DEFAULT_CEILING):
    lam = tuple(int(c) for c in lam)
    dim = weyl_dimension(alg.rs, lam)
    if dim > ceiling:
        raise ModuleError(
            "module dimension %d exceeds ceiling %d" % (dim, ceiling)
        )
    with _CACHE_LOCK:
        per_alg = _MODULE_CACHE.get(alg)
        if per_alg is None:
            per_alg = {}
            _MODULE_CACHE[alg] = per_alg
        cached = per_alg.get(lam)
    if cached is not None:
        return cached
    built = _construct(alg, lam, dim)
    with _CACHE_LOCK:
        # idempotent insert: concurrent duplicate builds agree
        existing = per_alg.get(lam)
        if existing is not None:
            return existing
        per_alg[lam] = built
    return built


def _construct(alg, lam, dim):
    rs = alg.rs
    rank = rs.rank
    mult = freudenthal_multiplicities(rs, lam)
    simple_fund = [
        tuple(rs.cartan[j][i] for j in range(rank)) for i in range(rank)
    ]

    weights = [lam]
    gram = {(0, 0): G_ONE}
    f_act = {}
    e_act = {(0, i): {} for i in range(rank)}
    level = [0]
    total = 1

    def comb(action, i, combo):
        out = {}
        for b, c in combo.items():
            for t, v in action[(b, i)].items():
                acc = out.get(t)
                term = c * v
                acc = term if acc is None else acc + term
                if not acc.is_zero():
                    out[t] = acc
                elif t in out:
                    del out[t]
        return out

    def pair_with(b, combo):
        acc = G_ZERO
        for t, c in combo.items():
            g = gram.get((b, t))
            if g is not None:
                acc = acc + c * g
        return acc

    def solve_gram(sel, row):
        from .exactla import ExactMatrix

        g = ExactMatrix([[gram[(a, b)] for b in sel] for a in sel])
        x = g.solve(row)
        if x is None:
            raise ModuleError("contravariant Gram degenerated")
        return x

    while total < dim:
        groups = {}
        order = []
        for b in level:
            for i in range(rank):
                mu = tuple(
                    w - s for w, s in zip(weights[b], simple_fund[i])
                )
                if mu not in groups:
                    groups[mu] = []
                    order.append(mu)
                groups[mu].append((b, i))
        new_level = []
        for mu in sorted(order, reverse=True):
            target = mult.get(mu, 0)
            sel = []
            for b, i in groups[mu]:
                if target == 0:
                    f_act[(b, i)] = {}
                    continue
                row = [pair_with(b, e_act[(u, i)]) for u in sel]
                norm = pair_with(b, comb(f_act, i, e_act[(b, i)])) + as_gauss(
                    weights[b][i]
                ) * gram[(b, b)]
                if not sel:
                    x = []
                    schur = norm
                else:
                    x = solve_gram(sel, row)
                    schur = norm
                    for r, xv in zip(row, x):
                        schur = schur - r * xv
                if len(sel) < target and not schur.is_zero():
                    n = len(weights)
                    weights.append(mu)
                    gram[(n, n)] = norm
                    for u, r in zip(sel, row):
                        gram[(n, u)] = r
                        gram[(u, n)] = r
                    f_act[(b, i)] = {n: G_ONE}
                    for j in range(rank):
                        combo = comb(f_act, i, e_act[(b, j)])
                        if j == i:
                            coeff = as_gauss(weights[b][j])
                            if not coeff.is_zero():
                                acc = combo.get(b)
                                acc = coeff if acc is None else acc + coeff
                                if not acc.is_zero():
                                    combo[b] = acc
                                elif b in combo:
                                    del combo[b]
                        e_act[(n, j)] = combo
                    sel.append(n)
                    new_level.append(n)
                    total += 1
                else:
                    if not schur.is_zero():
                        raise ModuleError("weight space exceeded Freudenthal")
                    f_act[(b, i)] = {
                        u: xv for u, xv in zip(sel, x) if not xv.is_zero()
                    }
            if len(sel) != target:
                raise ModuleError("weight space fell short of Freudenthal")
        if not new_level:
            raise ModuleError("lowering stalled before the Weyl dimension")
        level = new_level
    if len(weights) != dim:
        raise ModuleError("dimension mismatch after construction")

    return HighestWeightModule(
        alg, lam, weights, mult, _generator_matrices(alg, weights, f_act, e_act)
    )


def _generator_matrices(alg, weights, f_act, e_act):
    dim = len(weights)
    rank = alg.rank
    f_ops = [SparseOp(dim) for _ in range(rank)]
    e_ops = [SparseOp(dim) for _ in range(rank)]
    for (b, i), combo in f_act.items():
        f_ops[i].cols[b] = dict(combo)
    for (b, i), combo in e_act.items():
        e_ops[i].cols[b] = dict(combo)
    h_ops = [
        SparseOp.diagonal([as_gauss(w[j]) for w in weights])
        for j in range(rank)
    ]

    nu = [None] * alg.dim
    simple_pos = {}
    for k, root in enumerate(alg.pos):
        if sum(root) == 1:
            simple_pos[root.index(1)] = k
    for k, root in enumerate(alg.pos):
        if sum(root) == 1:
            i = root.index(1)
            nu[k] = e_ops[i].scale(alg.rescale[k])
            nu[alg.npos + k] = f_ops[i]
        else:
            for i in range(rank):
                lower = list(root)
                lower[i] -= 1
                lower = tuple(lower)
                if lower in alg._pos_index:
                    break
            else:
                raise ModuleError("root has no simple lowering")
            ki = simple_pos[i]
            kl = alg._pos_index[lower]
            c = alg.bracket_indices(ki, kl).get(k)
            if c is None or c.is_zero():
                raise ModuleError("bracket recipe failed for a positive root")
            nu[k] = nu[ki].commutator(nu[kl]).scale(G_ONE / c)
            c2 = alg.bracket_indices(alg.npos + ki, alg.npos + kl).get(
                alg.npos + k
            )
            if c2 is None or c2.is_zero():
                raise ModuleError("bracket recipe failed for a negative root")
            nu[alg.npos + k] = (
                nu[alg.npos + ki].commutator(nu[alg.npos + kl]).scale(G_ONE / c2)
            )
    for j in range(rank):
        nu[2 * alg.npos + j] = h_ops[j]
    return nu


def module_action(m, x):
    return m.action(x)


def dual_action(m, x):
    return m.dual(x)


def extreme_weight_vector(m, sigma, sign):
    return m.extreme_vector(sigma, sign)
