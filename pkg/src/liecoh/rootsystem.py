"""Root systems for the series A-G and their direct sums.

Roots are integer vectors in the simple-root basis.  Weights and characters
on the Cartan subalgebra are stored as coroot evaluations
(mu(H_1), ..., mu(H_r)), so integrality and dominance are coordinate-wise.
The Cartan matrix convention is C[i][j] = alpha_j(H_i) = <alpha_j, alpha_i^v>.
"""

from .exactla import (
    RAT,
    ExactMatrix,
    G_ONE,
    G_ZERO,
    as_gauss,
)


class RootSystemError(ValueError):
    pass


def _series_cartan(series, rank):
    """Cartan matrix block for one simple factor (0-indexed rows/cols)."""
    if series == "A":
        if rank < 1:
            raise RootSystemError("A requires rank >= 1")
        edges = [(i, i + 1) for i in range(rank - 1)]
        special = {}
    elif series == "B":
        if rank < 2:
            raise RootSystemError("B requires rank >= 2")
        edges = [(i, i + 1) for i in range(rank - 1)]
        # last simple root short: <alpha_{r-2}, alpha_{r-1}^v> = -2
        special = {(rank - 1, rank - 2): -2}
    elif series == "C":
        if rank < 2:
            raise RootSystemError("C requires rank >= 2")
        edges = [(i, i + 1) for i in range(rank - 1)]
        special = {(rank - 2, rank - 1): -2}
    elif series == "D":
        if rank < 3:
            raise RootSystemError("D requires rank >= 3")
        edges = [(i, i + 1) for i in range(rank - 3)] + [
            (rank - 3, rank - 2),
            (rank - 3, rank - 1),
        ]
        special = {}
    elif series == "E":
        if rank not in (6, 7, 8):
            raise RootSystemError("E requires rank 6, 7 or 8")
        # Bourbaki labels 1..rank mapped to 0..rank-1; node 2 hangs off node 4
        edges = [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)]
        if rank >= 7:
            edges.append((5, 6))
        if rank == 8:
            edges.append((6, 7))
        special = {}
    elif series == "F":
        if rank != 4:
            raise RootSystemError("F requires rank 4")
        edges = [(0, 1), (1, 2), (2, 3)]
        # alpha_3 short, alpha_2 long: <alpha_2, alpha_3^v> = -2
        special = {(2, 1): -2}
    elif series == "G":
        if rank != 2:
            raise RootSystemError("G requires rank 2")
        # first root short: <beta, alpha^v> = -3
        edges = [(0, 1)]
        special = {(0, 1): -3}
    else:
        raise RootSystemError("unknown series %r" % series)
    cartan = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i, j in edges:
        cartan[i][j] = -1
        cartan[j][i] = -1
    for (i, j), v in special.items():
        cartan[i][j] = v
    return cartan


def parse_spec_string(text):
    """Parse "A1xA1", "G2", "A2xB2" into a list of (series, rank) factors."""
    factors = []
    for piece in text.strip().split("x"):
        piece = piece.strip()
        if len(piece) < 2 or piece[0].upper() not in "ABCDEFG":
            raise RootSystemError("bad factor %r in spec %r" % (piece, text))
        try:
            rank = int(piece[1:])
        except ValueError:
            raise RootSystemError("bad rank in factor %r" % piece)
        factors.append((piece[0].upper(), rank))
    if not factors:
        raise RootSystemError("empty root system spec")
    return factors


def _matrix_inverse(cartan):
    n = len(cartan)
    aug = ExactMatrix([[as_gauss(cartan[i][j]) for j in range(n)]
                       + [G_ONE if i == j else G_ZERO for j in range(n)]
                       for i in range(n)])
    reduced, pivots = aug.rref()
    if pivots != list(range(n)):
        raise RootSystemError("singular Cartan matrix")
    return ExactMatrix([row[n:] for row in reduced.rows])


class RootSystem:
    """Immutable root system for a (possibly reducible) semisimple type."""

    def __init__(self, factors, spec_string=None):
        self.factors = list(factors)
        self.spec_string = spec_string or "x".join(
            "%s%d" % (s, r) for s, r in self.factors
        )
        blocks = [_series_cartan(s, r) for s, r in self.factors]
        self.rank = sum(r for _, r in self.factors)
        self.cartan = [[0] * self.rank for _ in range(self.rank)]
        self.component_of_simple = [0] * self.rank
        self.component_simples = []
        offset = 0
        for k, block in enumerate(blocks):
            r = len(block)
            for i in range(r):
                self.component_of_simple[offset + i] = k
                for j in range(r):
                    self.cartan[offset + i][offset + j] = block[i][j]
            self.component_simples.append(list(range(offset, offset + r)))
            offset += r
        self.n_components = len(blocks)
        self.dsym = self._symmetrizers()
        self.cartan_inverse = _matrix_inverse(self.cartan)
        self.positive_roots = self._closure()
        self.positive_index = {a: k for k, a in enumerate(self.positive_roots)}
        self._norms = {a: self._root_norm(a) for a in self.positive_roots}

    # -- construction ------------------------------------------------------

    def _symmetrizers(self):
        """Minimal positive integers d with d_i C[i][j] = d_j C[j][i]."""
        d = [None] * self.rank
        for comp in self.component_simples:
            d[comp[0]] = RAT(1)
            todo = [comp[0]]
            while todo:
                i = todo.pop()
                for j in comp:
                    if self.cartan[i][j] != 0 and i != j and d[j] is None:
                        d[j] = d[i] * self.cartan[i][j] / RAT(self.cartan[j][i])
                        todo.append(j)
            denom = 1
            for i in comp:
                denom_i = d[i].denominator
                denom = denom * denom_i // _gcd(denom, denom_i)
            numer = None
            for i in comp:
                d[i] = d[i] * denom
                n_i = int(d[i].numerator)
                numer = n_i if numer is None else _gcd(numer, n_i)
            for i in comp:
                d[i] = d[i] / numer
        return d

    def _closure(self):
        seen = set()
        frontier = []
        for i in range(self.rank):
            root = tuple(1 if j == i else 0 for j in range(self.rank))
            seen.add(root)
            frontier.append(root)
        while frontier:
            nxt = []
            for root in frontier:
                for i in range(self.rank):
                    pairing = sum(
                        self.cartan[i][k] * root[k] for k in range(self.rank)
                    )
                    image = list(root)
                    image[i] -= pairing
                    image = tuple(image)
                    if image not in seen:
                        seen.add(image)
                        nxt.append(image)
            frontier = nxt
        positive = []
        for root in seen:
            pos = all(c >= 0 for c in root)
            neg = all(c <= 0 for c in root)
            if not pos and not neg:
                raise RootSystemError("closure produced a mixed-sign vector")
            if pos:
                positive.append(root)
        positive.sort(key=lambda a: (sum(a), a))
        return positive

    # -- basic queries -----------------------------------------------------

    def height(self, root):
        return sum(root)

    def is_positive_root(self, vec):
        return tuple(vec) in self.positive_index

    def is_root(self, vec):
        vec = tuple(vec)
        return vec in self.positive_index or tuple(-c for c in vec) in self.positive_index

    def component_of_root(self, root):
        for i, c in enumerate(root):
            if c != 0:
                return self.component_of_simple[i]
        raise RootSystemError("zero vector is not a root")

    def component_positive_roots(self, comp):
        return [a for a in self.positive_roots if self.component_of_root(a) == comp]

    def highest_root(self, comp):
        roots = self.component_positive_roots(comp)
        top = roots[-1]
        ties = [a for a in roots if sum(a) == sum(top)]
        if len(ties) != 1:
            raise RootSystemError("no unique highest root in component")
        return top

    def root_weight_coords(self, root):
        """Coroot evaluations (alpha(H_1), ..., alpha(H_r)) of a root."""
        return tuple(
            sum(self.cartan[j][i] * root[i] for i in range(self.rank))
            for j in range(self.rank)
        )

    # -- invariant form ----------------------------------------------------

    def _root_norm(self, root):
        acc = RAT(0)
        for i in range(self.rank):
            if root[i] == 0:
                continue
            for j in range(self.rank):
                if root[j] == 0 or self.cartan[i][j] == 0:
                    continue
                acc = acc + root[i] * root[j] * self.dsym[i] * self.cartan[i][j]
        return acc

    def root_norm(self, root):
        root = tuple(root)
        if root in self._norms:
            return self._norms[root]
        return self._root_norm(root)

    def form_weight_root(self, mu, root):
        """(mu, alpha) with mu in coroot coordinates, alpha a root vector."""
        acc = G_ZERO
        for i, c in enumerate(root):
            if c == 0:
                continue
            acc = acc + as_gauss(mu[i]) * (self.dsym[i] * c)
        return acc

    def coroot_pairing(self, mu, root):
        """<mu, alpha^v> = 2 (mu, alpha) / (alpha, alpha)."""
        return self.form_weight_root(mu, root) * (2 / self.root_norm(root))

    def weight_form(self, mu, nu):
        """Invariant form of two coroot-coordinate weights."""
        t = self.cartan_inverse.apply([as_gauss(x) for x in mu])
        acc = G_ZERO
        for i in range(self.rank):
            acc = acc + t[i] * self.dsym[i] * as_gauss(nu[i])
        return acc

    # -- dominance, regularity, rho ---------------------------------------

    def rho_w(self):
        return tuple(1 for _ in range(self.rank))

    def is_dominant_integral(self, weight):
        for c in weight:
            g = as_gauss(c)
            if not g.is_integer():
                return False
            if g.re < 0:
                return False
        return True

    def is_integral(self, values):
        return all(as_gauss(c).is_integer() for c in values)

    def is_regular(self, mu):
        for alpha in self.positive_roots:
            if self.coroot_pairing(mu, alpha).is_zero():
                return False
        return True

    def dominant_weights_up_to(self, bound):
        if bound < 0:
            raise RootSystemError("negative bound")
        out = []

        def rec(prefix, remaining):
            if len(prefix) == self.rank:
                out.append(tuple(prefix))
                return
            for n in range(remaining + 1):
                rec(prefix + [n], remaining - n)

        rec([], bound)
        out.sort(key=lambda w: (sum(w), w))
        return out

    # -- filtration and regular chains ------------------------------------

    def filtration_order(self, comp):
        roots = self.component_positive_roots(comp)
        index = {a: k for k, a in enumerate(roots)}
        for j, aj in enumerate(roots):
            for gamma in self.positive_roots:
                diff = tuple(x - y for x, y in zip(aj, gamma))
                if diff in self.positive_index:
                    if index[diff] >= j:
                        raise RootSystemError("filtration closure violated")
        if roots[-1] != self.highest_root(comp):
            raise RootSystemError("filtration does not end at the highest root")
        return roots

    def regular_root_chain(self, comp):
        """Positive roots alpha of the component with alpha + rho_W regular.

        Returns (roots, relation); relation is (a_prime, a_dprime, beta) with
        a_prime = a_dprime + beta for a simple beta when such a pair exists
        (B/C/F chains), else None (ADE single roots, G2).
        """
        rho = self.rho_w()
        chain = []
        for alpha in self.filtration_order(comp):
            shifted = tuple(
                as_gauss(m) + as_gauss(a)
                for m, a in zip(rho, self.root_weight_coords(alpha))
            )
            if self.is_regular(shifted):
                chain.append(alpha)
        simply_laced = all(
            self.cartan[i][j] in (0, -1)
            for i in self.component_simples[comp]
            for j in self.component_simples[comp]
            if i != j
        )
        if simply_laced:
            if chain != [self.highest_root(comp)]:
                raise RootSystemError("ADE chain must be the highest root only")
        elif len(chain) != 3:
            raise RootSystemError("non-ADE chain must have exactly 3 roots")
        relation = None
        for a_prime in chain:
            for a_dprime in chain:
                if a_prime == a_dprime:
                    continue
                beta = tuple(x - y for x, y in zip(a_prime, a_dprime))
                if sum(beta) == 1 and beta in self.positive_index:
                    relation = (a_prime, a_dprime, beta)
                    break
            if relation:
                break
        return chain, relation


def _gcd(a, b):
    a, b = abs(int(a)), abs(int(b))
    while b:
        a, b = b, a % b
    return a


def build(spec):
    """Build a RootSystem from a spec string or a list of factors."""
    if isinstance(spec, str):
        factors = parse_spec_string(spec)
        return RootSystem(factors, spec_string=spec)
    return RootSystem(list(spec))
