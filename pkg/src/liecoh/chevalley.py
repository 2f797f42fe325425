"""Complex semisimple Lie algebras as explicit structure constants.

The algebra is first built on a unit Chevalley basis {e_a, h_j} with signs
fixed by the extraspecial-pair convention over the deterministic positive
root order, then the positive root vectors are rescaled so that the Killing
pairing satisfies (E_a, E_{-b}) = delta_ab and [E_a, E_{-a}] is Killing-dual
to a.  Over Q that rescaling cannot be split symmetrically between E_a and
E_{-a} (it would need square roots), so the compact conjugation carries the
rescale factors: omega(E_a) = -q_a E_{-a}, omega(E_{-a}) = -(1/q_a) E_a,
omega(H_j) = -H_j, an antilinear involutive automorphism with compact fixed
set.
"""

from .exactla import (
    ExactMatrix,
    G_ONE,
    G_ZERO,
    GaussianRational,
    RAT,
    ScaledScalar,
    as_gauss,
    gauss_from_literal,
    gauss_to_literal,
    joint_generalized_space,
    scaled_from_literal,
    scaled_to_literal,
)


class AlgebraError(ValueError):
    pass


class AlgebraElement:
    """Coordinate vector over the algebra basis (Gaussian or scaled scalars)."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra, coords):
        if len(coords) != algebra.dim:
            raise AlgebraError("coordinate length mismatch")
        self.algebra = algebra
        self.coords = list(coords)

    def __add__(self, other):
        self._check(other)
        return AlgebraElement(
            self.algebra, [a + b for a, b in zip(self.coords, other.coords)]
        )

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement(
            self.algebra, [a - b for a, b in zip(self.coords, other.coords)]
        )

    def __neg__(self):
        return AlgebraElement(self.algebra, [-a for a in self.coords])

    def scale(self, c):
        return AlgebraElement(self.algebra, [c * a for a in self.coords])

    def is_zero(self):
        return all(not _nonzero(c) for c in self.coords)

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and self.algebra is other.algebra
            and all(a == b for a, b in zip(self.coords, other.coords))
        )

    def _check(self, other):
        if not isinstance(other, AlgebraElement) or other.algebra is not self.algebra:
            raise AlgebraError("algebra mismatch")

    def is_scaled(self):
        return any(isinstance(c, ScaledScalar) for c in self.coords)

    def gauss_coords(self):
        return [as_gauss(c) for c in self.coords]

    def scale_part(self):
        """Coordinates of the s-part; requires no constant part anywhere."""
        out = []
        for c in self.coords:
            c = c if isinstance(c, ScaledScalar) else ScaledScalar(as_gauss(c))
            if not c.const.is_zero():
                raise AlgebraError("element mixes constant and scaled parts")
            out.append(c.scale)
        return out

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coords):
            if _nonzero(c):
                terms.append("(%s)%s" % (c, self.algebra.basis_labels[k]))
        return " + ".join(terms) if terms else "0"


def _nonzero(c):
    if isinstance(c, (GaussianRational, ScaledScalar)):
        return not c.is_zero()
    return bool(c)


class ChevalleyAlgebra:
    """Structure constants, Killing data and the compact conjugation.

    Basis order: E_a for a in Delta+ (deterministic order), then E_{-a} in
    the same order, then H_1..H_r.
    """

    def __init__(self, rs):
        self.rs = rs
        self.pos = rs.positive_roots
        self.npos = len(self.pos)
        self.rank = rs.rank
        self.dim = 2 * self.npos + self.rank
        self.basis_labels = (
            ["E+%d" % (k + 1) for k in range(self.npos)]
            + ["E-%d" % (k + 1) for k in range(self.npos)]
            + ["H%d" % (j + 1) for j in range(self.rank)]
        )
        self._pos_index = {a: k for k, a in enumerate(self.pos)}
        self._n_pos = {}
        self._n_memo = {}
        self._fill_positive_constants()
        self.rescale = self._killing_rescale_factors()
        self.table = self._build_table()
        self._ad_cache = {}
        self._check_normalization()

    # -- index helpers -----------------------------------------------------

    def root_of_index(self, idx):
        if idx < self.npos:
            return self.pos[idx]
        if idx < 2 * self.npos:
            return tuple(-c for c in self.pos[idx - self.npos])
        return None

    def index_of_root(self, root):
        root = tuple(root)
        if root in self._pos_index:
            return self._pos_index[root]
        neg = tuple(-c for c in root)
        if neg in self._pos_index:
            return self.npos + self._pos_index[neg]
        raise AlgebraError("not a root: %r" % (root,))

    def e_plus(self, k):
        return self.basis_element(k - 1)

    def e_minus(self, k):
        return self.basis_element(self.npos + k - 1)

    def h(self, j):
        return self.basis_element(2 * self.npos + j - 1)

    def basis_element(self, idx):
        coords = [G_ZERO] * self.dim
        coords[idx] = G_ONE
        return AlgebraElement(self, coords)

    def zero(self):
        return AlgebraElement(self, [G_ZERO] * self.dim)

    def from_h_coords(self, values):
        coords = [G_ZERO] * self.dim
        for j, v in enumerate(values):
            coords[2 * self.npos + j] = as_gauss(v)
        return AlgebraElement(self, coords)

    # -- structure constants on the unit basis -----------------------------

    def _is_root(self, vec):
        vec = tuple(vec)
        return vec in self._pos_index or tuple(-c for c in vec) in self._pos_index

    def _p_val(self, alpha, beta):
        """Largest p with beta - p alpha a root."""
        p = 0
        cur = tuple(b - a for a, b in zip(alpha, beta))
        while self._is_root(cur):
            p += 1
            cur = tuple(c - a for a, c in zip(alpha, cur))
        return p

    def _fill_positive_constants(self):
        """N_{a,b} for positive pairs by height induction (Carter signs)."""
        norms = self.rs.root_norm
        for gamma in self.pos:
            if sum(gamma) < 2:
                continue
            specials = []
            for ia, alpha in enumerate(self.pos):
                beta = tuple(g - a for g, a in zip(gamma, alpha))
                if beta in self._pos_index and self._pos_index[beta] > ia:
                    specials.append((alpha, beta))
            if not specials:
                raise AlgebraError("no special pair for %r" % (gamma,))
            a_star, b_star = specials[0]
            self._n_pos[(a_star, b_star)] = as_gauss(self._p_val(a_star, b_star) + 1)
            gn = as_gauss(norms(gamma))
            for xi, eta in specials[1:]:
                neg_xi = tuple(-c for c in xi)
                neg_eta = tuple(-c for c in eta)
                total = G_ZERO
                mid = tuple(b - x for b, x in zip(b_star, xi))
                if self._is_root(mid):
                    t = self._nconst(b_star, neg_xi) * self._nconst(a_star, neg_eta)
                    total = total + t * (1 / as_gauss(norms(mid)))
                mid2 = tuple(a - x for a, x in zip(a_star, xi))
                if self._is_root(mid2):
                    t = self._nconst(neg_xi, a_star) * self._nconst(b_star, neg_eta)
                    total = total + t * (1 / as_gauss(norms(mid2)))
                n_neg = -(gn * total) / self._n_pos[(a_star, b_star)]
                self._n_pos[(xi, eta)] = -n_neg
                expect = self._p_val(xi, eta) + 1
                if n_neg * n_neg != as_gauss(expect * expect):
                    raise AlgebraError("structure constant magnitude mismatch")

    def _nconst(self, u, v):
        """N_{u,v} for arbitrary roots with u+v a root (unit basis)."""
        key = (u, v)
        if key in self._n_memo:
            return self._n_memo[key]
        norms = self.rs.root_norm
        u_pos = all(c >= 0 for c in u)
        v_pos = all(c >= 0 for c in v)
        s = tuple(a + b for a, b in zip(u, v))
        if not self._is_root(s):
            raise AlgebraError("sum is not a root")
        if u_pos and v_pos:
            if (u, v) in self._n_pos:
                out = self._n_pos[(u, v)]
            elif (v, u) in self._n_pos:
                out = -self._n_pos[(v, u)]
            else:
                raise AlgebraError("positive table incomplete at %r,%r" % (u, v))
        elif not u_pos and not v_pos:
            nu = tuple(-c for c in u)
            nv = tuple(-c for c in v)
            out = -self._nconst(nu, nv)
        else:
            if not u_pos:
                # N_{u,v} = -N_{v,u}
                out = -self._nconst(v, u)
            else:
                delta = tuple(-c for c in v)  # positive
                if all(c >= 0 for c in s):
                    # (u, v, -s) sums to zero; N(v, -s) = -N(delta, s)
                    out = (
                        -as_gauss(norms(s))
                        * self._nconst(delta, s)
                        * (1 / as_gauss(norms(u)))
                    )
                else:
                    ns = tuple(-c for c in s)  # positive
                    # (u, v, ns) sums to zero; N(ns, u) is positive-positive
                    out = (
                        as_gauss(norms(ns))
                        * self._nconst(ns, u)
                        * (1 / as_gauss(norms(delta)))
                    )
        self._n_memo[key] = out
        return out

    def _coroot_h_coords(self, root):
        d_root = self.rs.root_norm(root) / 2
        out = []
        for i, c in enumerate(root):
            val = RAT(c) * self.rs.dsym[i] / d_root
            if val.denominator != 1:
                raise AlgebraError("non-integral coroot expansion")
            out.append(val)
        return out

    def _unit_bracket(self, i, j):
        """Sparse bracket column {k: coeff} of unit basis elements i, j."""
        if i == j:
            return {}
        ri = self.root_of_index(i)
        rj = self.root_of_index(j)
        out = {}
        if ri is None and rj is None:
            return {}
        if ri is None or rj is None:
            # H against a root vector
            if ri is None:
                hj = i - 2 * self.npos
                sign = G_ONE
                root, ridx = rj, j
            else:
                hj = j - 2 * self.npos
                sign = -G_ONE
                root, ridx = ri, i
            coeff = sum(
                self.rs.cartan[hj][k] * root[k] for k in range(self.rank)
            )
            if coeff:
                out[ridx] = sign * as_gauss(coeff)
            return out
        total = tuple(a + b for a, b in zip(ri, rj))
        if all(c == 0 for c in total):
            for jx, val in enumerate(self._coroot_h_coords(ri if all(c >= 0 for c in ri) else rj)):
                if val != 0:
                    sign = G_ONE if all(c >= 0 for c in ri) else -G_ONE
                    out[2 * self.npos + jx] = sign * as_gauss(val)
            return out
        if self._is_root(total):
            out[self.index_of_root(total)] = self._nconst(ri, rj)
        return out

    # -- Killing rescale and final table -----------------------------------

    def _unit_ad_sparse(self, idx):
        cols = {}
        for j in range(self.dim):
            col = self._unit_bracket(idx, j)
            if col:
                cols[j] = col
        return cols

    def _killing_rescale_factors(self):
        """s_a = 1/kappa(e_a, e_{-a}) per positive root (paper basis scale)."""
        factors = []
        for k in range(self.npos):
            ad_p = self._unit_ad_sparse(k)
            ad_m = self._unit_ad_sparse(self.npos + k)
            tr = G_ZERO
            for j, col in ad_m.items():
                for i, val in col.items():
                    back = ad_p.get(i, {}).get(j)
                    if back is not None:
                        tr = tr + back * val
            if tr.is_zero():
                raise AlgebraError("degenerate Killing pairing")
            factors.append(G_ONE / tr)
        return factors

    def _scale_of_index(self, idx):
        if idx < self.npos:
            return self.rescale[idx]
        return G_ONE

    def _build_table(self):
        table = {}
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                col = self._unit_bracket(i, j)
                if not col:
                    continue
                fi = self._scale_of_index(i)
                fj = self._scale_of_index(j)
                scaled = {}
                for k, val in col.items():
                    entry = fi * fj * val / self._scale_of_index(k)
                    if not entry.is_zero():
                        scaled[k] = entry
                if scaled:
                    table[(i, j)] = scaled
        return table

    def bracket_indices(self, i, j):
        """Sparse bracket of paper-basis elements i, j."""
        if i == j:
            return {}
        if i < j:
            return self.table.get((i, j), {})
        flipped = self.table.get((j, i), {})
        return {k: -v for k, v in flipped.items()}

    def bracket(self, x, y):
        if x.algebra is not self or y.algebra is not self:
            raise AlgebraError("algebra mismatch")
        coords = [None] * self.dim
        for i, ci in enumerate(x.coords):
            if not _nonzero(ci):
                continue
            for j, cj in enumerate(y.coords):
                if not _nonzero(cj):
                    continue
                for k, val in self.bracket_indices(i, j).items():
                    term = ci * cj * val
                    coords[k] = term if coords[k] is None else coords[k] + term
        return AlgebraElement(
            self, [c if c is not None else G_ZERO for c in coords]
        )

    # -- Killing form on the paper basis -----------------------------------

    def killing(self, x, y):
        """Killing form on exact elements (trace of ad products)."""
        mx = self.ad_matrix(x)
        my = self.ad_matrix(y)
        tr = G_ZERO
        for i in range(self.dim):
            for j in range(self.dim):
                a = mx.rows[i][j]
                if a.is_zero():
                    continue
                b = my.rows[j][i]
                if not b.is_zero():
                    tr = tr + a * b
        return tr

    def killing_h(self, i, j):
        """kappa(H_i, H_j) = sum over Delta of a(H_i) a(H_j)."""
        acc = 0
        for root in self.pos:
            ai = sum(self.rs.cartan[i][k] * root[k] for k in range(self.rank))
            aj = sum(self.rs.cartan[j][k] * root[k] for k in range(self.rank))
            acc += 2 * ai * aj
        return as_gauss(acc)

    def _check_normalization(self):
        for k, alpha in enumerate(self.pos):
            col = self.bracket_indices(k, self.npos + k)
            # [E_a, E_{-a}] lands in the Cartan
            for idx, val in col.items():
                if idx < 2 * self.npos:
                    raise AlgebraError("bad [E_a, E_-a] support")
            for j in range(self.rank):
                acc = G_ZERO
                for idx, val in col.items():
                    acc = acc + val * self.killing_h(idx - 2 * self.npos, j)
                expect = as_gauss(
                    sum(self.rs.cartan[j][i] * alpha[i] for i in range(self.rank))
                )
                if acc != expect:
                    raise AlgebraError("Killing normalization failed")

    # -- adjoint matrices, conjugation, centralizers ------------------------

    def ad_basis_matrix(self, idx):
        if idx not in self._ad_cache:
            rows = [[G_ZERO] * self.dim for _ in range(self.dim)]
            for j in range(self.dim):
                for k, val in self.bracket_indices(idx, j).items():
                    rows[k][j] = val
            self._ad_cache[idx] = ExactMatrix(rows)
        return self._ad_cache[idx]

    def ad_matrix(self, x):
        if x.algebra is not self:
            raise AlgebraError("algebra mismatch")
        rows = [[G_ZERO] * self.dim for _ in range(self.dim)]
        for i, ci in enumerate(x.coords):
            ci = as_gauss(ci)
            if ci.is_zero():
                continue
            m = self.ad_basis_matrix(i)
            for a in range(self.dim):
                row = m.rows[a]
                out = rows[a]
                for b in range(self.dim):
                    if not row[b].is_zero():
                        out[b] = out[b] + ci * row[b]
        return ExactMatrix(rows)

    def conjugate(self, x):
        """Compact conjugation omega; antilinear involutive automorphism."""
        coords = [G_ZERO] * self.dim
        for i, ci in enumerate(x.coords):
            if isinstance(ci, ScaledScalar):
                cc = ci.conjugate()
            else:
                cc = as_gauss(ci).conjugate()
            if not _nonzero(cc):
                continue
            if i < self.npos:
                coords[self.npos + i] = coords[self.npos + i] + cc * (-self.rescale[i])
            elif i < 2 * self.npos:
                k = i - self.npos
                coords[k] = coords[k] + cc * (-(G_ONE / self.rescale[k]))
            else:
                coords[i] = coords[i] + (-cc)
        return AlgebraElement(self, coords)

    def commuting_check(self, elements):
        elements = [self._exact_representative(x) for x in elements]
        for a in range(len(elements)):
            for b in range(a + 1, len(elements)):
                if not self.bracket(elements[a], elements[b]).is_zero():
                    return False
        return True

    def _exact_representative(self, x):
        """Strip the formal scale: s X0 and X0 have identical centralizer data."""
        if not x.is_scaled():
            return AlgebraElement(self, x.gauss_coords())
        consts = []
        scales = []
        for c in x.coords:
            c = c if isinstance(c, ScaledScalar) else ScaledScalar(as_gauss(c))
            consts.append(c.const)
            scales.append(c.scale)
        if all(v.is_zero() for v in scales):
            return AlgebraElement(self, consts)
        if all(v.is_zero() for v in consts):
            return AlgebraElement(self, scales)
        raise AlgebraError("element mixes constant and scaled parts")

    def centralizer(self, elements):
        if not self.commuting_check(elements):
            raise AlgebraError("tuple does not commute")
        mats = [
            self.ad_matrix(self._exact_representative(x)) for x in elements
        ]
        nonzero = [m for m in mats if not m.is_zero()]
        if not nonzero:
            return [self.basis_element(k).coords for k in range(self.dim)]
        stacked = nonzero[0]
        for m in nonzero[1:]:
            stacked = stacked.stack(m)
        return stacked.kernel_basis()

    def generalized_zero_space(self, elements):
        if not self.commuting_check(elements):
            raise AlgebraError("tuple does not commute")
        mats = [
            self.ad_matrix(self._exact_representative(x)) for x in elements
        ]
        return joint_generalized_space([(m, G_ZERO) for m in mats])

    # -- serialization ------------------------------------------------------

    def element_from_json(self, data):
        coords = [G_ZERO] * self.dim

        def lit(text):
            text = str(text)
            return (
                scaled_from_literal(text) if text.endswith("*s") else gauss_from_literal(text)
            )

        for j, val in (data.get("H") or {}).items():
            idx = 2 * self.npos + int(j) - 1
            if not 2 * self.npos <= idx < self.dim:
                raise AlgebraError("bad H index %r" % j)
            coords[idx] = lit(val)
        for key, val in (data.get("E") or {}).items():
            key = str(key)
            if not key or key[0] not in "+-":
                raise AlgebraError("bad E key %r" % key)
            k = int(key[1:])
            if not 1 <= k <= self.npos:
                raise AlgebraError("bad root index %r" % key)
            idx = k - 1 if key[0] == "+" else self.npos + k - 1
            coords[idx] = lit(val)
        return AlgebraElement(self, coords)

    def element_to_json(self, x):
        h = {}
        e = {}
        for i, c in enumerate(x.coords):
            if not _nonzero(c):
                continue
            text = (
                scaled_to_literal(c)
                if isinstance(c, ScaledScalar)
                else gauss_to_literal(as_gauss(c))
            )
            if i < self.npos:
                e["+%d" % (i + 1)] = text
            elif i < 2 * self.npos:
                e["-%d" % (i - self.npos + 1)] = text
            else:
                h["%d" % (i - 2 * self.npos + 1)] = text
        out = {}
        if h:
            out["H"] = h
        if e:
            out["E"] = e
        return out


def build(rs):
    return ChevalleyAlgebra(rs)
