"""Deformation data: the splitting of the Cartan and the commuting tuple.

The subspace of the complexified Cartan is given by a basis A_1..A_l with
coordinates on {H_j}; validity means the 2l vectors A_i, conj(A_i) span the
whole Cartan.  Conjugation on the Cartan is c |-> -conj(c) coordinatewise,
the restriction of the compact conjugation.  The X_i are arbitrary
commuting algebra elements, either exact or pure multiples of the formal
scale s.
"""

from .chevalley import AlgebraElement
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
    rat_from_literal,
)


class DeformError(ValueError):
    pass


def conjugate_on_h(coords):
    """Conjugation restricted to the Cartan: c_j |-> -conj(c_j)."""
    return [-(as_gauss(c).conjugate()) for c in coords]


class DeformationData:
    """Validated container; immutable once validate() has passed."""

    def __init__(self, alg, a_coords, x_elements, mode="exact", y_coords=None):
        self.alg = alg
        self.rs = alg.rs
        self.a_coords = [[as_gauss(c) for c in row] for row in a_coords]
        self.abar_coords = [conjugate_on_h(row) for row in self.a_coords]
        self.x = list(x_elements)
        self.mode = mode
        self.y_coords = y_coords
        self.l = len(self.a_coords)
        self.validated = False

    def a_element(self, i):
        return self.alg.from_h_coords(self.a_coords[i])

    def abar_element(self, i):
        return self.alg.from_h_coords(self.abar_coords[i])

    def x_exact(self, i):
        """X_i over Q(i): the element itself, or its s-part in scaled mode."""
        return self.alg._exact_representative(self.x[i])


def validate(data):
    """All structural diagnostics; empty list means valid."""
    problems = []
    rank = data.rs.rank
    if rank % 2 != 0:
        problems.append("root system rank %d is odd" % rank)
    if data.mode not in ("exact", "scaled"):
        problems.append("unknown mode %r" % (data.mode,))
    if rank % 2 == 0 and data.l != rank // 2:
        problems.append(
            "expected %d basis elements for the splitting, got %d"
            % (rank // 2, data.l)
        )
    for row in data.a_coords:
        if len(row) != rank:
            problems.append("splitting coordinate length mismatch")
            break
    if not problems:
        rows = [list(r) for r in data.a_coords] + [
            list(r) for r in data.abar_coords
        ]
        if ExactMatrix(rows).rank() != rank:
            problems.append(
                "splitting basis and its conjugate do not span the Cartan"
            )
    if len(data.x) != data.l:
        problems.append(
            "expected %d commuting elements, got %d" % (data.l, len(data.x))
        )
    for i, x in enumerate(data.x):
        if not isinstance(x, AlgebraElement) or x.algebra is not data.alg:
            problems.append("X_%d is not an element of the algebra" % (i + 1))
            return problems
    if data.mode == "scaled":
        for i, x in enumerate(data.x):
            for c in x.coords:
                if isinstance(c, ScaledScalar):
                    ok = c.const.is_zero()
                else:
                    ok = as_gauss(c).is_zero()
                if not ok:
                    problems.append(
                        "X_%d has a constant part in scaled mode" % (i + 1)
                    )
                    break
    if not problems and not data.alg.commuting_check(data.x):
        problems.append("the X tuple does not commute")
    if not problems:
        data.validated = True
    return problems


def ensure_valid(data):
    problems = validate(data)
    if problems:
        raise DeformError("; ".join(problems))
    return data


def kuranishi_membership(data):
    """[X_i, X_j] = 0 for all pairs; Y never enters."""
    return data.alg.commuting_check(data.x)


def evaluate(mu, data, i):
    """mu(conj A_i) for a character given by its values on the H_j."""
    acc = G_ZERO
    for j, c in enumerate(data.abar_coords[i]):
        if not c.is_zero():
            acc = acc + as_gauss(mu[j]) * c
    return acc


def standard_splitting_coords(rank, a, b):
    """A_j = -H_{2j-1} - (a+ib) H_{2j}; valid exactly when b is nonzero."""
    a = as_gauss(a)
    b = as_gauss(b)
    coeff = -(a + b * GaussianRational(RAT(0), RAT(1)))
    rows = []
    for j in range(rank // 2):
        row = [G_ZERO] * rank
        row[2 * j] = -G_ONE
        row[2 * j + 1] = coeff
        rows.append(row)
    return rows


def su2su2_preset(alg, a, b, x_elements=None, mode="exact"):
    """The worked example: the product of two su(2)'s with the pairing above."""
    if alg.rs.rank % 2 != 0:
        raise DeformError("preset needs an even-rank root system")
    coords = standard_splitting_coords(alg.rs.rank, a, b)
    if x_elements is None:
        x_elements = [alg.zero() for _ in range(alg.rs.rank // 2)]
    return DeformationData(alg, coords, x_elements, mode=mode)


def _scalar_from_literal(text):
    text = str(text)
    if text.endswith("*s"):
        from .exactla import scaled_from_literal

        return scaled_from_literal(text)
    return gauss_from_literal(text)


def from_json(alg, payload):
    mode = payload.get("mode", "exact")
    a_rows = payload.get("A")
    if not a_rows:
        raise DeformError("missing splitting basis A")
    a_coords = [[gauss_from_literal(str(v)) for v in row] for row in a_rows]
    x_elements = [
        alg.element_from_json(entry) for entry in payload.get("X", [])
    ]
    y = payload.get("Y")
    return DeformationData(alg, a_coords, x_elements, mode=mode, y_coords=y)


def to_json(data):
    out = {
        "rootsystem": getattr(data.rs, "spec_string", None),
        "A": [
            [gauss_to_literal(c) for c in row] for row in data.a_coords
        ],
        "X": [data.alg.element_to_json(x) for x in data.x],
        "mode": data.mode,
    }
    if data.y_coords is not None:
        out["Y"] = data.y_coords
    return out
