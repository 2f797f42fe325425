"""Weyl group enumeration, lengths, twist sets Phi_sigma, weight action."""

from .exactla import as_gauss

DEFAULT_CEILING = 10**6


class WeylError(ValueError):
    pass


class WeylElement:
    """Group element with a canonical reduced word and integer action matrix.

    The action matrix acts on coroot-evaluation coordinates; the word is the
    BFS-first reduced word, so representatives are deterministic.
    """

    __slots__ = ("word", "matrix", "group")

    def __init__(self, word, matrix, group):
        self.word = word
        self.matrix = matrix
        self.group = group

    @property
    def length(self):
        return len(self.word)

    def act(self, mu):
        """Apply to a weight/character in coroot coordinates."""
        n = len(self.matrix)
        if len(mu) != n:
            raise WeylError("coordinate length mismatch")
        out = []
        for j in range(n):
            acc = None
            for k in range(n):
                c = self.matrix[j][k]
                if c == 0:
                    continue
                term = as_gauss(mu[k]) * c if not isinstance(mu[k], int) else mu[k] * c
                acc = term if acc is None else acc + term
            if acc is None:
                acc = 0 if all(isinstance(x, int) for x in mu) else as_gauss(0)
            out.append(acc)
        return tuple(out)

    def act_root(self, root):
        """Apply to a root given in the simple-root basis (integer output)."""
        rs = self.group.rs
        coords = rs.root_weight_coords(root)
        image = tuple(
            sum(self.matrix[j][k] * coords[k] for k in range(rs.rank))
            for j in range(rs.rank)
        )
        try:
            return self.group._root_by_coords[image]
        except KeyError:
            raise WeylError("image is not a root; broken action matrix")

    def phi_set(self):
        """Phi_sigma = sigma(-Delta+) intersect Delta+, in Delta+ order."""
        rs = self.group.rs
        out = []
        for beta in rs.positive_roots:
            img = self.act_root(tuple(-c for c in beta))
            if img in rs.positive_index:
                out.append(img)
        out.sort(key=lambda a: (sum(a), a))
        if len(out) != self.length:
            raise WeylError("|Phi_sigma| differs from word length")
        return out

    def inverse(self):
        n = len(self.matrix)
        # orthogonal over Z only up to the form; invert by word reversal
        return self.group.element_for_word(tuple(reversed(self.word)))

    def __repr__(self):
        return "WeylElement(word=%s)" % (list(self.word),)


class WeylGroup:
    """BFS enumeration over simple reflections, deduplicated by matrix."""

    def __init__(self, rs, max_length=None, ceiling=DEFAULT_CEILING):
        self.rs = rs
        self.ceiling = ceiling
        self._root_by_coords = {}
        for a in rs.positive_roots:
            self._root_by_coords[rs.root_weight_coords(a)] = a
            neg = tuple(-c for c in a)
            self._root_by_coords[rs.root_weight_coords(neg)] = neg
        n = rs.rank
        self.simple_matrices = []
        for i in range(n):
            m = [[1 if j == k else 0 for k in range(n)] for j in range(n)]
            for j in range(n):
                m[j][i] -= rs.cartan[j][i]
            self.simple_matrices.append(tuple(tuple(row) for row in m))
        identity = tuple(
            tuple(1 if j == k else 0 for k in range(n)) for j in range(n)
        )
        self.elements = []
        self._by_matrix = {}
        self.by_length = {}
        frontier = [WeylElement((), identity, self)]
        self._register(frontier[0])
        depth = 0
        while frontier and (max_length is None or depth < max_length):
            nxt = []
            for el in frontier:
                for i in range(n):
                    mat = _matmul(el.matrix, self.simple_matrices[i])
                    if mat in self._by_matrix:
                        continue
                    new = WeylElement(el.word + (i,), mat, self)
                    self._register(new)
                    nxt.append(new)
                    if len(self.elements) > self.ceiling:
                        raise WeylError(
                            "Weyl group larger than ceiling %d" % self.ceiling
                        )
            frontier = nxt
            depth += 1
        self.max_length = max(self.by_length) if self.by_length else 0

    def _register(self, el):
        self.elements.append(el)
        self._by_matrix[el.matrix] = el
        self.by_length.setdefault(el.length, []).append(el)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def identity(self):
        return self.elements[0]

    def longest(self):
        top = self.by_length[self.max_length]
        if len(top) != 1:
            raise WeylError("longest element not unique; truncated enumeration?")
        return top[0]

    def element_for_word(self, word):
        mat = self.elements[0].matrix
        for i in word:
            mat = _matmul(mat, self.simple_matrices[i])
        try:
            return self._by_matrix[mat]
        except KeyError:
            raise WeylError("word leads outside the enumerated range")

    def length_histogram(self):
        return [len(self.by_length.get(k, ())) for k in range(self.max_length + 1)]


def _matmul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def enumerate_group(rs, max_length=None, ceiling=DEFAULT_CEILING):
    return WeylGroup(rs, max_length=max_length, ceiling=ceiling)
