"""Resonance detection and non-resonance certificates.

A triple (sigma, lambda, beta) is resonant for rho when the defining
equation

    sum_{alpha in Phi_sigma} alpha(conj A_i) - (sigma lambda)(conj A_i)
        + rho(conj A_i) + beta(X_i) = 0        for every i

holds with beta a joint eigenvalue tuple of the nu_lambda(X_i) whose
generalized eigenspace V^lambda(beta) is nonzero.  The equation forces
beta, so detection is a generalized-kernel rank test at the forced value;
no spectra are ever enumerated.

In scaled mode X = s X0 with s a formal parameter, so the equation splits
into a constant part (the beta = 0 classifier) and an s-part (0 must be a
joint generalized eigenvalue of the nu(X0_i)); both sides are exact, which
is what makes the scaled certificate unconditional.
"""

from .exactla import (
    G_ZERO,
    ScaledScalar,
    as_gauss,
    gauss_to_literal,
    joint_generalized_space,
    scaled_to_literal,
)
from .reps import DEFAULT_CEILING, build_module
from .weyl import enumerate_group

DEFAULT_CUTOFF = 4


class ResonanceError(ValueError):
    pass


class ResonanceTriple:
    __slots__ = ("sigma", "lam", "beta", "eigenspace_dim", "eigenspace")

    def __init__(self, sigma, lam, beta, eigenspace):
        self.sigma = sigma
        self.lam = lam
        self.beta = beta
        self.eigenspace = eigenspace
        self.eigenspace_dim = len(eigenspace)

    def beta_is_zero(self):
        return all(
            b.is_zero() if hasattr(b, "is_zero") else not b for b in self.beta
        )

    def to_json(self):
        lits = []
        for b in self.beta:
            if isinstance(b, ScaledScalar):
                lits.append(scaled_to_literal(b))
            else:
                lits.append(gauss_to_literal(as_gauss(b)))
        return {
            "sigma": list(self.sigma.word),
            "lambda": list(self.lam),
            "beta": lits,
            "eigenspace_dim": self.eigenspace_dim,
        }

    def __repr__(self):
        return "ResonanceTriple(sigma=%r, lambda=%r, beta=%r, dim=%d)" % (
            list(self.sigma.word),
            self.lam,
            self.beta,
            self.eigenspace_dim,
        )


class NonResonanceCertificate:
    def __init__(
        self,
        mode,
        cutoff,
        rho,
        resonances,
        verdict,
        witness=None,
        rho_integral=True,
        notes=(),
    ):
        self.mode = mode
        self.cutoff = cutoff
        self.rho = rho
        self.resonances = resonances
        self.verdict = verdict
        self.witness = witness
        self.rho_integral = rho_integral
        self.notes = list(notes)

    def passed(self):
        return self.verdict == "non_resonant"

    def to_json(self):
        return {
            "mode": self.mode,
            "cutoff": self.cutoff,
            "rho": [gauss_to_literal(as_gauss(c)) for c in self.rho],
            "verdict": self.verdict,
            "resonances": [t.to_json() for t in self.resonances],
            "witness": None if self.witness is None else self.witness.to_json(),
            "rho_integral": self.rho_integral,
            "notes": self.notes,
        }


def candidate_beta(sigma, lam, rho, data):
    """The unique beta values admitted by the resonance equation."""
    from .deform import evaluate

    slam = sigma.act(tuple(lam))
    out = []
    for i in range(data.l):
        acc = evaluate(slam, data, i)
        for root in sigma.phi_set():
            acc = acc - evaluate(data.rs.root_weight_coords(root), data, i)
        acc = acc - evaluate(tuple(rho), data, i)
        out.append(acc)
    return out


def resonances_at_lambda(rho, lam, data, ceiling=DEFAULT_CEILING, weyl=None):
    """All resonant triples with this lambda, in Weyl enumeration order."""
    if not data.validated:
        from .deform import ensure_valid

        ensure_valid(data)
    rs = data.rs
    lam = tuple(lam)
    if weyl is None:
        weyl = enumerate_group(rs)
    module = build_module(data.alg, lam, ceiling=ceiling)
    ops = [
        module.action(data.x_exact(i)).to_exact() for i in range(data.l)
    ]
    scaled = data.mode == "scaled"
    out = []
    for sigma in weyl.elements:
        c = candidate_beta(sigma, lam, rho, data)
        if scaled:
            # constant part forces c = 0; the s-part forces eigenvalue 0
            if any(not v.is_zero() for v in c):
                continue
            space = joint_generalized_space([(op, G_ZERO) for op in ops])
            beta = [ScaledScalar(G_ZERO, G_ZERO) for _ in range(data.l)]
        else:
            space = joint_generalized_space(list(zip(ops, c)))
            beta = c
        if space:
            out.append(ResonanceTriple(sigma, lam, beta, space))
    return out


def beta_zero_solutions(rho, rs, weyl=None):
    """(sigma, lambda) pairs solving the equation with beta = 0.

    Returns (pairs, rho_integral).  A non-integral rho admits no integral
    lambda, so the list is empty and the flag is False.
    """
    rho = tuple(rho)
    if weyl is None:
        weyl = enumerate_group(rs)
    if not rs.is_integral(rho):
        return [], False
    rho_int = tuple(int(as_gauss(c).re) for c in rho)
    pairs = []
    for sigma in weyl.elements:
        acc = [0] * rs.rank
        for root in sigma.phi_set():
            for j, v in enumerate(rs.root_weight_coords(root)):
                acc[j] += v
        target = tuple(a + r for a, r in zip(acc, rho_int))
        lam = sigma.inverse().act(target)
        if rs.is_dominant_integral(lam):
            pairs.append((sigma, tuple(int(c) for c in lam)))
    return pairs, True


def integral_regular_test(rho, rs):
    """rho integral and rho + rho_W regular; decides the beta = 0 list."""
    rho = tuple(rho)
    if not rs.is_integral(rho):
        return False
    shifted = tuple(as_gauss(c) + 1 for c in rho)
    return rs.is_regular(shifted)


def certify(rho, data, strategy="scaled", cutoff=DEFAULT_CUTOFF,
            ceiling=DEFAULT_CEILING):
    """Non-resonance certificate for one rho under the given strategy."""
    if not data.validated:
        from .deform import ensure_valid

        ensure_valid(data)
    rho = tuple(rho)
    if strategy not in ("scaled", "cutoff"):
        raise ResonanceError("unknown strategy %r" % (strategy,))
    if strategy == "scaled" and data.mode != "scaled":
        raise ResonanceError("scaled strategy requires scaled-mode data")
    weyl = enumerate_group(data.rs)
    x_zero = [data.x_exact(i) for i in range(data.l)]
    exact_path = (
        data.mode == "scaled" or all(x.is_zero() for x in x_zero)
    )

    if exact_path:
        notes = []
        if data.mode == "scaled":
            notes.append(
                "scaled certificate: assumes the deformation parameter is "
                "small enough that the deformed Cartan keeps full dimension"
            )
        else:
            notes.append(
                "X = 0: the resonance set equals the beta = 0 list, so the "
                "verdict is exact without a cutoff"
            )
        pairs, integral = beta_zero_solutions(rho, data.rs, weyl)
        triples = []
        for sigma, lam in pairs:
            module = build_module(data.alg, lam, ceiling=ceiling)
            ops = [module.action(x).to_exact() for x in x_zero]
            space = joint_generalized_space([(op, G_ZERO) for op in ops])
            if not space:
                continue
            if data.mode == "scaled":
                beta = [ScaledScalar(G_ZERO, G_ZERO) for _ in range(data.l)]
            else:
                beta = [G_ZERO for _ in range(data.l)]
            triples.append(ResonanceTriple(sigma, lam, beta, space))
        if len(triples) <= 1:
            verdict = "non_resonant"
            witness = None
        else:
            verdict = "resonant"
            witness = triples[1]
        mode_label = "scaled" if data.mode == "scaled" else "cutoff"
        return NonResonanceCertificate(
            mode_label,
            None,
            rho,
            triples,
            verdict,
            witness=witness,
            rho_integral=integral,
            notes=notes,
        )

    triples = []
    for lam in data.rs.dominant_weights_up_to(cutoff):
        triples.extend(
            resonances_at_lambda(rho, lam, data, ceiling=ceiling, weyl=weyl)
        )
    nonzero = [t for t in triples if not t.beta_is_zero()]
    if nonzero:
        verdict = "resonant"
        witness = nonzero[0]
    elif len(triples) >= 2:
        verdict = "resonant"
        witness = triples[1]
    else:
        verdict = "inconclusive_beyond_cutoff"
        witness = None
    notes = [
        "cutoff scan: dominant weights with coefficient sum up to %d"
        % cutoff
    ]
    return NonResonanceCertificate(
        "cutoff",
        cutoff,
        rho,
        triples,
        verdict,
        witness=witness,
        rho_integral=data.rs.is_integral(rho),
        notes=notes,
    )
