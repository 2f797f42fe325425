"""Brute-force Chevalley-Eilenberg complexes used as an independent check.

Bracket tables and differentials are assembled from first principles here;
the only shared ingredients are exact linear algebra and representation
matrices, so agreement with the closed-form side is meaningful.

Every complex is graded by a torus character (a dual basis vector carries
the negated weight of its algebra element, and for the per-lambda module
only the dual tensor factor is graded, which keeps the grading valid for
arbitrary commuting X).  The differential must preserve the grading, and
ranks are taken block by block.
"""

import itertools

from .deform import evaluate
from .exactla import (
    ExactMatrix,
    G_ONE,
    G_ZERO,
    SparseOp,
    as_gauss,
    gauss_to_literal,
)
from .reps import DEFAULT_CEILING, build_module
from .resonance import resonances_at_lambda
from .weyl import enumerate_group


class OracleError(ValueError):
    pass


def _wedge_word(word):
    """Sign and sorted tuple of a wedge monomial; (0, None) if repeated."""
    word = list(word)
    sign = 1
    for i in range(1, len(word)):
        j = i
        while j > 0 and word[j - 1] > word[j]:
            word[j - 1], word[j] = word[j], word[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(word, word[1:]):
        if a == b:
            return 0, None
    return sign, tuple(word)


def _sp_identity(n):
    return SparseOp.diagonal([G_ONE] * n)


def _sp_scalar(n, c):
    return SparseOp.diagonal([c] * n)


def _kron(a, b):
    out = SparseOp(a.n * b.n)
    for ca, col_a in enumerate(a.cols):
        for ra, va in col_a.items():
            for cb, col_b in enumerate(b.cols):
                for rb, vb in col_b.items():
                    out.add_entry(ra * b.n + rb, ca * b.n + cb, va * vb)
    return out


class CEComplex:
    """Cochains wedge^p(dual) tensor M with the standard differential.

    d(w tensor m) = sum_b z_b* ^ w tensor z_b.m + (d w) tensor m, where on
    one-forms d z_c* = -sum_{a<b} C^c_{ab} z_a* ^ z_b*, extended as an odd
    derivation.  brackets is {(a, b): {c: C^c_{ab}}} for a < b; action is
    one sparse operator per algebra basis element.
    """

    def __init__(self, dim, brackets, action, module_dim,
                 g_weights, v_weights):
        if len(action) != dim:
            raise OracleError("one action operator per basis element")
        self.dim = dim
        self.module_dim = module_dim
        self.brackets = dict(brackets)
        self.action = list(action)
        self.subsets = [
            list(itertools.combinations(range(dim), p))
            for p in range(dim + 1)
        ]
        self.subset_index = [
            {s: k for k, s in enumerate(level)} for level in self.subsets
        ]
        self._bracket_by_c = {}
        for (a, b), row in self.brackets.items():
            for c, coeff in row.items():
                self._bracket_by_c.setdefault(c, []).append(
                    (a, b, as_gauss(coeff))
                )
        self.g_weights = [tuple(w) for w in g_weights]
        self.v_weights = [tuple(w) for w in v_weights]
        self.keys = [self._degree_keys(p) for p in range(dim + 1)]
        self.diff = [self._differential(p) for p in range(dim)]
        self._check_d_squared()
        self._check_no_leakage()
        self._rank_cache = {}

    def basis_size(self, p):
        return len(self.subsets[p]) * self.module_dim

    def _degree_keys(self, p):
        keys = []
        for s in self.subsets[p]:
            base = None
            for a in s:
                w = self.g_weights[a]
                base = w if base is None else tuple(
                    x + y for x, y in zip(base, w)
                )
            for j in range(self.module_dim):
                w = self.v_weights[j]
                total = w if base is None else tuple(
                    x + y for x, y in zip(base, w)
                )
                keys.append(total)
        return keys

    def _differential(self, p):
        m = self.module_dim
        cols = [dict() for _ in range(self.basis_size(p))]

        def add(row, col, val):
            cur = cols[col].get(row)
            cur = val if cur is None else cur + val
            if cur.is_zero():
                cols[col].pop(row, None)
            else:
                cols[col][row] = cur

        for si, s in enumerate(self.subsets[p]):
            in_s = set(s)
            for b in range(self.dim):
                if b in in_s:
                    continue
                sign, t = _wedge_word((b,) + s)
                ti = self.subset_index[p + 1][t]
                op = self.action[b]
                for j in range(m):
                    col = op.cols[j]
                    if not col:
                        continue
                    src = si * m + j
                    for i, v in col.items():
                        add(ti * m + i, src, v if sign > 0 else -v)
            for k, c in enumerate(s):
                rest = s[:k] + s[k + 1:]
                for a, b, coeff in self._bracket_by_c.get(c, ()):
                    if a in rest or b in rest:
                        continue
                    sign, t = _wedge_word(s[:k] + (a, b) + s[k + 1:])
                    if t is None:
                        continue
                    val = -coeff if (sign > 0) == (k % 2 == 0) else coeff
                    ti = self.subset_index[p + 1][t]
                    for j in range(m):
                        add(ti * m + j, si * m + j, val)
        return cols

    def _check_d_squared(self):
        for p in range(self.dim - 1):
            upper = self.diff[p + 1]
            for col in self.diff[p]:
                acc = {}
                for mid, v in col.items():
                    for row, w in upper[mid].items():
                        cur = acc.get(row)
                        term = w * v
                        cur = term if cur is None else cur + term
                        if cur.is_zero():
                            acc.pop(row, None)
                        else:
                            acc[row] = cur
                if acc:
                    raise OracleError(
                        "differential does not square to zero in degree %d"
                        % p
                    )

    def _check_no_leakage(self):
        for p, cols in enumerate(self.diff):
            src_keys = self.keys[p]
            dst_keys = self.keys[p + 1]
            for src, col in enumerate(cols):
                for row in col:
                    if dst_keys[row] != src_keys[src]:
                        raise OracleError(
                            "differential does not preserve the grading"
                        )

    def _blocks(self, p):
        out = {}
        for idx, key in enumerate(self.keys[p]):
            out.setdefault(key, []).append(idx)
        return out

    def _rank(self, p):
        if p < 0 or p >= self.dim:
            return 0
        cached = self._rank_cache.get(p)
        if cached is not None:
            return cached
        cols = self.diff[p]
        src_blocks = self._blocks(p)
        total = 0
        for key, col_ids in src_blocks.items():
            live = [src for src in col_ids if cols[src]]
            if not live:
                continue
            row_ids = sorted({row for src in live for row in cols[src]})
            row_pos = {r: i for i, r in enumerate(row_ids)}
            dense = [[G_ZERO] * len(live) for _ in range(len(row_ids))]
            for cj, src in enumerate(live):
                for row, v in cols[src].items():
                    dense[row_pos[row]][cj] = v
            total += ExactMatrix(dense).rank()
        self._rank_cache[p] = total
        return total

    def cohomology_dims(self):
        return [
            self.basis_size(p) - self._rank(p) - self._rank(p - 1)
            for p in range(self.dim + 1)
        ]

    def d_apply(self, p, vec):
        """Image of a sparse cochain {index: coeff} under d_p."""
        out = {}
        for src, v in vec.items():
            for row, w in self.diff[p][src].items():
                cur = out.get(row)
                term = w * v
                cur = term if cur is None else cur + term
                if cur.is_zero():
                    out.pop(row, None)
                else:
                    out[row] = cur
        return out

    def is_closed(self, p, vec):
        if p >= self.dim:
            return True
        return not self.d_apply(p, vec)

    def survives(self, p, vec):
        """Closed and not a coboundary; decided inside the weight block."""
        if not self.is_closed(p, vec):
            return False
        if not vec:
            return False
        keys = {self.keys[p][i] for i in vec}
        if len(keys) != 1:
            raise OracleError("class is not weight-homogeneous")
        key = keys.pop()
        if p == 0:
            return True
        col_ids = [
            i for i, k in enumerate(self.keys[p - 1]) if k == key
        ]
        row_ids = [i for i, k in enumerate(self.keys[p]) if k == key]
        row_pos = {r: i for i, r in enumerate(row_ids)}
        cols = self.diff[p - 1]
        dense = [
            [G_ZERO] * (len(col_ids) + 1) for _ in range(len(row_ids))
        ]
        for cj, src in enumerate(col_ids):
            for row, v in cols[src].items():
                dense[row_pos[row]][cj] = v
        for row, v in vec.items():
            dense[row_pos[row]][len(col_ids)] = as_gauss(v)
        mat = ExactMatrix(dense)
        base_rank = ExactMatrix(
            [row[:-1] for row in dense]
        ).rank() if col_ids else 0
        return mat.rank() == base_rank + 1


def ce_nilradical(alg, lam, ceiling=DEFAULT_CEILING):
    """H^k of the negative nilradical with dual-module coefficients.

    Dims must equal the Weyl length histogram, and each extreme-weight
    basis cochain (the wedge over Phi_sigma, tensored with the dual vector
    of weight -sigma.lam) must be closed and survive in cohomology.
    """
    rs = alg.rs
    module = build_module(alg, lam, ceiling=ceiling)
    npos = alg.npos
    brackets = {}
    for a in range(npos):
        for b in range(a + 1, npos):
            row = alg.bracket_indices(npos + a, npos + b)
            local = {}
            for g, coeff in row.items():
                if not npos <= g < 2 * npos:
                    raise OracleError("bracket leaves the nilradical")
                local[g - npos] = coeff
            if local:
                brackets[(a, b)] = local
    action = [module.dual(alg.e_minus(k + 1)) for k in range(npos)]
    g_weights = [rs.root_weight_coords(a) for a in rs.positive_roots]
    v_weights = [tuple(-c for c in w) for w in module.weights]
    cx = CEComplex(npos, brackets, action, module.dim, g_weights, v_weights)
    dims = cx.cohomology_dims()
    weyl = enumerate_group(rs)
    hist = weyl.length_histogram()
    if dims != hist:
        raise OracleError(
            "dims %r disagree with the Weyl length histogram %r"
            % (dims, hist)
        )
    cocycles = []
    for sigma in weyl.elements:
        phi = sigma.phi_set()
        subset = tuple(sorted(rs.positive_index[a] for a in phi))
        slam = tuple(sigma.act(lam))
        hits = module.weight_index.get(slam, [])
        if len(hits) != 1:
            raise OracleError("extreme weight space is not a line")
        index = cx.subset_index[sigma.length][subset] * module.dim + hits[0]
        vec = {index: G_ONE}
        if not cx.is_closed(sigma.length, vec):
            raise OracleError(
                "extreme cochain is not closed for sigma=%r"
                % (list(sigma.word),)
            )
        if not cx.survives(sigma.length, vec):
            raise OracleError(
                "extreme cocycle is exact for sigma=%r" % (list(sigma.word),)
            )
        cocycles.append(
            {
                "sigma": list(sigma.word),
                "degree": sigma.length,
                "weight": [int(c) for c in slam],
            }
        )
    return {"dims": dims, "expected": hist, "cocycles": cocycles}


def per_lambda_complex(rho, lam, data, ceiling=DEFAULT_CEILING):
    """Graded dims of the solvable-algebra complex on V tensor V-dual.

    Basis F_1..F_l then E_{-alpha} in positive-root order; brackets
    [F_i, E_{-alpha}] = -alpha(conj A_i) E_{-alpha} and the structure
    constants among the E_{-alpha}; F_i acts by rho(conj A_i) + nu(X_i) on
    the left factor + dual nu(conj A_i) on the right, E_{-alpha} by the
    dual action on the right factor only.
    """
    if data.mode != "exact":
        raise OracleError("the oracle runs on exact-mode data only")
    alg = data.alg
    rs = data.rs
    l = data.l
    npos = alg.npos
    module = build_module(alg, lam, ceiling=ceiling)
    m = module.dim

    brackets = {}
    for i in range(l):
        for k in range(npos):
            alpha = rs.positive_roots[k]
            c = -evaluate(rs.root_weight_coords(alpha), data, i)
            if not c.is_zero():
                brackets[(i, l + k)] = {l + k: c}
    for a in range(npos):
        for b in range(a + 1, npos):
            row = alg.bracket_indices(npos + a, npos + b)
            local = {}
            for g, coeff in row.items():
                if not npos <= g < 2 * npos:
                    raise OracleError("bracket leaves the nilradical")
                local[l + g - npos] = coeff
            if local:
                brackets[(l + a, l + b)] = local

    ident = _sp_identity(m)
    action = []
    for i in range(l):
        abar = alg.from_h_coords(list(data.abar_coords[i]))
        op = _kron(module.action(data.x_exact(i)), ident)
        op = op.add(_kron(ident, module.dual(abar)))
        rho_val = evaluate(rho, data, i)
        if not rho_val.is_zero():
            op = op.add(_sp_scalar(m * m, rho_val))
        action.append(op)
    for k in range(npos):
        action.append(_kron(ident, module.dual(alg.e_minus(k + 1))))

    zero = (0,) * rs.rank
    g_weights = [zero] * l + [
        rs.root_weight_coords(a) for a in rs.positive_roots
    ]
    # only the dual tensor factor is graded; X_i may mix left-factor weights
    v_weights = [
        tuple(-c for c in module.weights[q])
        for p in range(m)
        for q in range(m)
    ]
    cx = CEComplex(l + npos, brackets, action, m * m, g_weights, v_weights)
    return cx.cohomology_dims()


def euler_consistency(rho, data, lams, ceiling=DEFAULT_CEILING):
    """Per-degree comparison of the oracle against the closed-form side."""
    from .cohomology import bwbd

    entries = []
    all_match = True
    for lam in lams:
        lam = tuple(int(c) for c in lam)
        triples = resonances_at_lambda(rho, lam, data, ceiling=ceiling)
        closed = bwbd(rho, data, triples, ceiling=ceiling).dims
        direct = per_lambda_complex(rho, lam, data, ceiling=ceiling)
        match = closed == direct
        all_match = all_match and match
        entries.append(
            {
                "lambda": list(lam),
                "bwbd": closed,
                "oracle": direct,
                "euler": sum((-1) ** q * d for q, d in enumerate(direct)),
                "match": match,
            }
        )
    return {
        "rho": [gauss_to_literal(as_gauss(c)) for c in rho],
        "entries": entries,
        "all_match": all_match,
    }
