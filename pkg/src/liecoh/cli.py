"""Command-line front end.

Exit codes: 0 success, 2 validation failure (bad input, ceilings), 3
refusal (a required non-resonance certificate was resonant or
inconclusive), 4 internal assertion (oracle mismatch, structural
invariant violation).

Reports are deterministic: the JSON payload never contains timing, which
goes to stderr; heavy subcommands memoize their payloads on disk keyed by
a content hash of the package version and the canonical input.
"""

import argparse
import hashlib
import json
import os
import re
import sys
import tempfile
import time

from . import __version__
from .chevalley import AlgebraElement, AlgebraError, build as build_algebra
from .cohomology import (
    CohomologyError,
    ResonanceRefusal,
    bwbd,
    h0_lie_structure,
    h0_sections,
    invariance_verdict,
    tangent_cohomology,
)
from .deform import (
    DeformationData,
    DeformError,
    from_json as deform_from_json,
    su2su2_preset,
    to_json as deform_to_json,
    validate as deform_validate,
)
from .exactla import G_ONE, G_ZERO, RAT, GaussianRational, ScaledScalar
from .oracle import OracleError, ce_nilradical, euler_consistency, per_lambda_complex
from .reps import (
    DEFAULT_CEILING,
    ModuleError,
    build_module,
    freudenthal_multiplicities,
    weyl_dimension,
)
from .resonance import DEFAULT_CUTOFF, ResonanceError, certify, resonances_at_lambda
from .rootsystem import RootSystemError, build as build_rs
from .weyl import WeylError, enumerate_group

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_REFUSAL = 3
EXIT_INTERNAL = 4

CACHE_DIR = ".liecoh_cache"


class CLIError(ValueError):
    pass


# -- element expressions --------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(E[+-]\d+|H\d+|\d+/\d+|\d+|i|s|[()+\-*])")


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise CLIError("unreadable element expression near %r" % text[pos:])
        out.append(m.group(1))
        pos = m.end()
    return out


class _Value:
    """Either a scalar or a scalar multiple of an algebra element."""

    def __init__(self, scalar, vector=None):
        self.scalar = scalar
        self.vector = vector

    def times(self, other):
        if self.vector is not None and other.vector is not None:
            raise CLIError("cannot multiply two algebra elements")
        vector = self.vector if self.vector is not None else other.vector
        return _Value(self.scalar * other.scalar, vector)

    def plus(self, other, alg):
        a = self.to_element(alg)
        b = other.to_element(alg)
        coords = [x + y for x, y in zip(a.coords, b.coords)]
        return _Value(G_ONE, AlgebraElement(alg, coords))

    def to_element(self, alg):
        if self.vector is None:
            raise CLIError("expression is a bare scalar, not an element")
        return self.vector.scale(self.scalar)


class _ExprParser:
    def __init__(self, text, alg):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.alg = alg

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise CLIError("unexpected end of element expression")
        self.pos += 1
        return tok

    def parse(self):
        value = self.expr()
        if self.peek() is not None:
            raise CLIError("trailing input in element expression")
        return value.to_element(self.alg)

    def expr(self):
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        value = self.term()
        if sign < 0:
            value = _Value(G_ZERO - G_ONE).times(value)
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            if op == "-":
                rhs = _Value(G_ZERO - G_ONE).times(rhs)
            value = value.plus(rhs, self.alg)
        return value

    def term(self):
        value = self.factor()
        while self.peek() == "*":
            self.take()
            value = value.times(self.factor())
        return value

    def factor(self):
        tok = self.take()
        if tok == "(":
            value = self.expr()
            if self.take() != ")":
                raise CLIError("unbalanced parenthesis in element expression")
            return value
        if tok == "i":
            return _Value(GaussianRational(RAT(0), RAT(1)))
        if tok == "s":
            return _Value(ScaledScalar(G_ZERO, G_ONE))
        if tok.startswith("H"):
            return _Value(G_ONE, self._basis(self.alg.h, tok[1:], "H"))
        if tok.startswith("E+"):
            return _Value(G_ONE, self._basis(self.alg.e_plus, tok[2:], "E+"))
        if tok.startswith("E-"):
            return _Value(G_ONE, self._basis(self.alg.e_minus, tok[2:], "E-"))
        if re.fullmatch(r"\d+/\d+|\d+", tok):
            return _Value(GaussianRational(RAT(tok), RAT(0)))
        raise CLIError("unexpected token %r in element expression" % tok)

    def _basis(self, getter, index_text, kind):
        try:
            return getter(int(index_text))
        except (AlgebraError, IndexError):
            raise CLIError("no basis element %s%s" % (kind, index_text))


def parse_element(text, alg):
    return _ExprParser(text, alg).parse()


# -- shared input assembly ------------------------------------------------

def _parse_weight(text, rank):
    parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
    try:
        coords = tuple(int(p) for p in parts)
    except ValueError:
        raise CLIError("weights are comma-separated integers, got %r" % text)
    if len(coords) != rank:
        raise CLIError("weight needs %d coordinates, got %d" % (rank, len(coords)))
    return coords


def _parse_rho(text, rank):
    parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
    if len(parts) != rank:
        raise CLIError("rho needs %d coordinates" % rank)
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise CLIError("rho coordinates are integers, got %r" % text)


def _load_data(args):
    if getattr(args, "deformation", None):
        try:
            with open(args.deformation) as fh:
                payload = json.load(fh)
        except (OSError, json.JSONDecodeError) as err:
            raise CLIError("cannot read deformation file: %s" % err)
        spec = payload.get("rootsystem") or getattr(args, "rootsystem", None)
        if not spec:
            raise CLIError("deformation file lacks a rootsystem entry")
        alg = build_algebra(build_rs(spec))
        data = deform_from_json(alg, payload)
    else:
        preset = getattr(args, "preset", None)
        if preset != "su2su2":
            raise CLIError("give --deformation FILE or --preset su2su2")
        spec = getattr(args, "rootsystem", None) or "A1xA1"
        alg = build_algebra(build_rs(spec))
        mode = "scaled" if getattr(args, "scaled", False) else "exact"
        xs = _load_x(args, alg)
        data = su2su2_preset(
            alg,
            getattr(args, "a", None) or "0",
            getattr(args, "b", None) or "1",
            x_elements=xs,
            mode=mode,
        )
    problems = deform_validate(data)
    if problems:
        raise CLIError("invalid deformation data: " + "; ".join(problems))
    return data


def _load_x(args, alg):
    exprs = getattr(args, "x", None) or []
    x_file = getattr(args, "x_file", None)
    if exprs and x_file:
        raise CLIError("give --x or --x-file, not both")
    if x_file:
        try:
            with open(x_file) as fh:
                payload = json.load(fh)
        except (OSError, json.JSONDecodeError) as err:
            raise CLIError("cannot read element file: %s" % err)
        if isinstance(payload, dict):
            payload = [payload]
        return [alg.element_from_json(entry) for entry in payload]
    if exprs:
        return [parse_element(text, alg) for text in exprs]
    return None


# -- output ---------------------------------------------------------------

def canonical_json(payload):
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def _emit(payload, args, lines=()):
    for line in lines:
        print(line)
    out = getattr(args, "json", None)
    if out:
        text = canonical_json(payload)
        if out == "-":
            sys.stdout.write(text)
        else:
            _atomic_write(out, text)


def _atomic_write(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".liecoh-tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- disk cache -----------------------------------------------------------

def _cache_key(kind, inputs):
    blob = canonical_json({"version": __version__, "kind": kind, "inputs": inputs})
    return hashlib.sha256(blob.encode()).hexdigest()


def _cache_path(key):
    return os.path.join(CACHE_DIR, key + ".json")


def _cache_get(args, key):
    if getattr(args, "no_cache", False):
        return None
    path = _cache_path(key)
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError):
        return None


def _cache_put(args, key, payload):
    if getattr(args, "no_cache", False):
        return
    os.makedirs(CACHE_DIR, exist_ok=True)
    _atomic_write(_cache_path(key), canonical_json(payload))


# -- subcommands ----------------------------------------------------------

def cmd_rootsys_show(args):
    rs = build_rs(args.rootsystem)
    weyl = enumerate_group(rs)
    payload = {
        "spec": args.rootsystem,
        "rank": rs.rank,
        "cartan": [list(row) for row in rs.cartan],
        "positive_roots": [list(a) for a in rs.positive_roots],
        "weyl_order": len(weyl),
    }
    _emit(payload, args, [
        "root system %s: rank %d, %d positive roots, |W| = %d"
        % (args.rootsystem, rs.rank, len(rs.positive_roots), len(weyl)),
    ])
    return EXIT_OK


def cmd_weyl_enum(args):
    rs = build_rs(args.rootsystem)
    weyl = enumerate_group(rs)
    payload = {
        "order": len(weyl),
        "histogram": weyl.length_histogram(),
        "elements": [
            {
                "word": list(el.word),
                "length": el.length,
                "phi": [list(a) for a in el.phi_set()],
            }
            for el in weyl.elements
        ],
    }
    _emit(payload, args, [
        "|W| = %d, length histogram %s" % (len(weyl), weyl.length_histogram()),
    ])
    return EXIT_OK


def cmd_repn_info(args):
    rs = build_rs(args.rootsystem)
    lam = _parse_weight(args.lam, rs.rank)
    dim = weyl_dimension(rs, lam)
    mults = freudenthal_multiplicities(rs, lam)
    payload = {
        "lambda": list(lam),
        "dimension": dim,
        "weights": [
            {"weight": list(w), "multiplicity": m}
            for w, m in sorted(mults.items())
        ],
    }
    _emit(payload, args, [
        "V^%s: dimension %d, %d distinct weights"
        % (list(lam), dim, len(mults)),
    ])
    return EXIT_OK


def cmd_deform_validate(args):
    if getattr(args, "deformation", None):
        try:
            with open(args.deformation) as fh:
                payload_in = json.load(fh)
        except (OSError, json.JSONDecodeError) as err:
            raise CLIError("cannot read deformation file: %s" % err)
        spec = payload_in.get("rootsystem") or getattr(args, "rootsystem", None)
        if not spec:
            raise CLIError("deformation file lacks a rootsystem entry")
        alg = build_algebra(build_rs(spec))
        data = deform_from_json(alg, payload_in)
    else:
        if getattr(args, "preset", None) != "su2su2":
            raise CLIError("give --deformation FILE or --preset su2su2")
        spec = getattr(args, "rootsystem", None) or "A1xA1"
        alg = build_algebra(build_rs(spec))
        mode = "scaled" if args.scaled else "exact"
        data = su2su2_preset(
            alg, args.a or "0", args.b or "1",
            x_elements=_load_x(args, alg), mode=mode,
        )
    problems = deform_validate(data)
    payload = {
        "valid": not problems,
        "problems": problems,
        "canonical": deform_to_json(data) if not problems else None,
    }
    if problems:
        _emit(payload, args, ["invalid: " + "; ".join(problems)])
        return EXIT_VALIDATION
    _emit(payload, args, ["valid deformation data (mode %s, l = %d)"
                          % (data.mode, data.l)])
    return EXIT_OK


def _strategy(args, data):
    return "scaled" if data.mode == "scaled" else "cutoff"


def cmd_resonance_scan(args):
    data = _load_data(args)
    rho = _parse_rho(args.rho, data.rs.rank)
    cert = certify(rho, data, strategy=_strategy(args, data),
                   cutoff=args.cutoff, ceiling=args.ceiling_dim)
    payload = cert.to_json()
    lines = ["rho %s: %s (%d triples)" % (list(rho), cert.verdict,
                                          len(cert.resonances))]
    for t in cert.resonances:
        entry = t.to_json()
        lines.append("  sigma=%s lambda=%s beta=%s dim=%d" % (
            entry["sigma"], entry["lambda"], entry["beta"],
            entry["eigenspace_dim"]))
    _emit(payload, args, lines)
    return EXIT_OK


def cmd_cohomology_line(args):
    data = _load_data(args)
    rho = _parse_rho(args.rho, data.rs.rank)
    cert = certify(rho, data, strategy=_strategy(args, data),
                   cutoff=args.cutoff, ceiling=args.ceiling_dim)
    if not cert.passed():
        raise ResonanceRefusal(rho, cert)
    graded = bwbd(rho, data, cert.resonances, ceiling=args.ceiling_dim)
    h0, sections = h0_sections(rho, data, cert.resonances,
                               ceiling=args.ceiling_dim)
    if graded.dims[0] != h0:
        raise CohomologyError("degree-0 table disagrees with sections")
    payload = {
        "rho": list(rho),
        "certificate": cert.to_json(),
        "dims": graded.dims,
        "summands": graded.descriptors,
        "sections": {"dim": h0, "summands": sections},
    }
    _emit(payload, args, ["H^q dims: %s" % (graded.dims,),
                          "H^0 sections: %d" % h0])
    return EXIT_OK


def cmd_cohomology_tangent(args):
    data = _load_data(args)
    graded, certs = tangent_cohomology(
        data, strategy=_strategy(args, data),
        cutoff=args.cutoff, ceiling=args.ceiling_dim,
    )
    payload = {
        "dims": graded.dims,
        "summands": graded.descriptors,
        "certificates": [
            {"rho": list(rho), "certificate": cert.to_json()}
            for rho, cert in certs
        ],
    }
    _emit(payload, args, ["tangent H^q dims: %s" % (graded.dims,)])
    return EXIT_OK


def cmd_verdict(args):
    data = _load_data(args)
    out = invariance_verdict(data, strategy=_strategy(args, data),
                             cutoff=args.cutoff, ceiling=args.ceiling_dim)
    line = "verdict: %s" % out["verdict"]
    if out["d_deformed"] is not None:
        line += " (deformed %d vs invariant %d)" % (
            out["d_deformed"], out["d_invariant"])
    _emit(out, args, [line])
    return EXIT_REFUSAL if out["verdict"] == "inconclusive" else EXIT_OK


def cmd_oracle_kostant(args):
    rs = build_rs(args.rootsystem)
    lam = _parse_weight(args.lam, rs.rank)
    key = _cache_key("kostant", {"rs": args.rootsystem, "lambda": list(lam),
                                 "ceiling": args.ceiling_dim})
    payload = _cache_get(args, key)
    if payload is None:
        alg = build_algebra(rs)
        payload = ce_nilradical(alg, lam, ceiling=args.ceiling_dim)
        _cache_put(args, key, payload)
    _emit(payload, args, [
        "H^k(nilradical) dims %s == Weyl histogram %s; %d cocycles checked"
        % (payload["dims"], payload["expected"], len(payload["cocycles"])),
    ])
    return EXIT_OK


def cmd_oracle_bwbd(args):
    data = _exact_specialization(_load_data(args))
    rho = _parse_rho(args.rho, data.rs.rank)
    lam = _parse_weight(args.lam, data.rs.rank)
    key = _cache_key("bwbd", {
        "deformation": deform_to_json(data), "rho": list(rho),
        "lambda": list(lam), "ceiling": args.ceiling_dim,
    })
    payload = _cache_get(args, key)
    if payload is None:
        triples = resonances_at_lambda(rho, lam, data,
                                       ceiling=args.ceiling_dim)
        closed = bwbd(rho, data, triples, ceiling=args.ceiling_dim).dims
        direct = per_lambda_complex(rho, lam, data, ceiling=args.ceiling_dim)
        payload = {
            "rho": list(rho),
            "lambda": list(lam),
            "bwbd": closed,
            "oracle": direct,
            "match": closed == direct,
        }
        _cache_put(args, key, payload)
    _emit(payload, args, [
        "bwbd %s vs oracle %s: %s" % (
            payload["bwbd"], payload["oracle"],
            "match" if payload["match"] else "MISMATCH"),
    ])
    if not payload["match"]:
        print("oracle disagreement at rho=%s lambda=%s"
              % (list(rho), list(lam)), file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


def _exact_specialization(data):
    if data.mode == "exact":
        return data
    exact = DeformationData(
        data.alg, data.a_coords,
        [data.x_exact(i) for i in range(data.l)],
        mode="exact", y_coords=data.y_coords,
    )
    problems = deform_validate(exact)
    if problems:
        raise CohomologyError(
            "exact specialization failed validation: " + "; ".join(problems))
    return exact


def _sweep_rhos(rs):
    zero = tuple(0 for _ in range(rs.rank))
    return [zero] + [tuple(rs.root_weight_coords(a)) for a in rs.positive_roots]


def cmd_oracle_sweep(args):
    data = _exact_specialization(_load_data(args))
    rs = data.rs
    lams = sorted(rs.dominant_weights_up_to(args.cutoff))
    lams = [lam for lam in lams
            if weyl_dimension(rs, lam) <= args.ceiling_dim]
    key = _cache_key("sweep", {
        "deformation": deform_to_json(data), "cutoff": args.cutoff,
        "ceiling": args.ceiling_dim,
    })
    payload = _cache_get(args, key)
    if payload is None:
        rhos = _sweep_rhos(rs)
        if args.jobs > 1:
            from concurrent.futures import ThreadPoolExecutor

            with ThreadPoolExecutor(max_workers=args.jobs) as pool:
                reports = list(pool.map(
                    lambda rho: euler_consistency(rho, data, lams,
                                                  ceiling=args.ceiling_dim),
                    rhos,
                ))
        else:
            reports = [
                euler_consistency(rho, data, lams, ceiling=args.ceiling_dim)
                for rho in rhos
            ]
        payload = {
            "lambdas": [list(lam) for lam in lams],
            "reports": reports,
            "all_match": all(r["all_match"] for r in reports),
        }
        _cache_put(args, key, payload)
    checked = sum(len(r["entries"]) for r in payload["reports"])
    _emit(payload, args, [
        "sweep over %d (rho, lambda) pairs: %s" % (
            checked, "all match" if payload["all_match"] else "MISMATCH"),
    ])
    return EXIT_OK if payload["all_match"] else EXIT_INTERNAL


def cmd_report(args):
    data = _load_data(args)
    rs = data.rs
    strategy = _strategy(args, data)
    key = _cache_key("report", {
        "deformation": deform_to_json(data), "cutoff": args.cutoff,
        "ceiling": args.ceiling_dim,
    })
    cached = _cache_get(args, key)
    if cached is not None:
        payload = cached
    else:
        certs = []
        for rho in _sweep_rhos(rs):
            cert = certify(rho, data, strategy=strategy, cutoff=args.cutoff,
                           ceiling=args.ceiling_dim)
            certs.append((rho, cert))
        all_passed = all(cert.passed() for _, cert in certs)

        tangent = None
        refusal = None
        h0_lie = None
        if all_passed:
            graded, _ = tangent_cohomology(
                data, strategy=strategy, cutoff=args.cutoff,
                ceiling=args.ceiling_dim,
            )
            tangent = {"dims": graded.dims, "summands": graded.descriptors}
            h0_lie = h0_lie_structure(
                data, strategy=strategy, cutoff=args.cutoff,
                ceiling=args.ceiling_dim,
            )
        else:
            failing = [(rho, c) for rho, c in certs if not c.passed()]
            resonant = [x for x in failing if x[1].verdict == "resonant"]
            rho, cert = resonant[0] if resonant else failing[0]
            refusal = {
                "rho": list(rho),
                "verdict": cert.verdict,
                "witness": None if cert.witness is None
                else cert.witness.to_json(),
            }

        # The oracle runs on exact data; for a scaled deformation it
        # cross-checks the s = 1 specialization on the same lambdas.
        oracle_data = _exact_specialization(data)
        lines = []
        oracle_reports = []
        for rho, cert in certs:
            if cert.passed():
                graded = bwbd(rho, data, cert.resonances,
                              ceiling=args.ceiling_dim)
                h0, sections = h0_sections(rho, data, cert.resonances,
                                           ceiling=args.ceiling_dim)
                lines.append({
                    "rho": list(rho),
                    "dims": graded.dims,
                    "sections": h0,
                })
            else:
                lines.append({"rho": list(rho), "refused": cert.verdict})
            lams = sorted({t.lam for t in cert.resonances})
            oracle_reports.append(
                euler_consistency(rho, oracle_data, lams,
                                  ceiling=args.ceiling_dim)
            )

        payload = {
            "versions": {"liecoh": __version__},
            "input": {
                "deformation": deform_to_json(data),
                "strategy": strategy,
                "cutoff": args.cutoff,
                "ceiling": args.ceiling_dim,
            },
            "certificates": [
                {"rho": list(rho), "certificate": cert.to_json()}
                for rho, cert in certs
            ],
            "tangent": tangent,
            "refusal": refusal,
            "h0_lie": h0_lie,
            "verdict": invariance_verdict(
                data, strategy=strategy, cutoff=args.cutoff,
                ceiling=args.ceiling_dim,
            ),
            "line_bundles": lines,
            "oracle": oracle_reports,
            "oracle_specialization": "s=1" if data.mode == "scaled" else None,
        }
        _cache_put(args, key, payload)

    summary = ["verdict: %s" % payload["verdict"]["verdict"]]
    if payload["tangent"]:
        summary.append("tangent dims: %s" % (payload["tangent"]["dims"],))
    if payload["refusal"]:
        summary.append("refusal at rho %s (%s)" % (
            payload["refusal"]["rho"], payload["refusal"]["verdict"]))
    mismatch = not all(r["all_match"] for r in payload["oracle"])
    summary.append("oracle: %s" % ("MISMATCH" if mismatch else "all match"))
    _emit(payload, args, summary)
    if mismatch:
        return EXIT_INTERNAL
    return EXIT_OK


# -- parser ---------------------------------------------------------------

def _add_data_flags(p):
    p.add_argument("--preset", choices=["su2su2"])
    p.add_argument("--a", help="real part of the splitting parameter")
    p.add_argument("--b", help="imaginary part of the splitting parameter")
    p.add_argument("--rootsystem")
    p.add_argument("--deformation", help="deformation JSON file")
    p.add_argument("--x", action="append",
                   help="deformation element expression (repeatable)")
    p.add_argument("--x-file", dest="x_file",
                   help="JSON file with deformation element(s)")
    p.add_argument("--scaled", action="store_true",
                   help="treat X as s times an exact element")


def _add_common_flags(p):
    p.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    p.add_argument("--ceiling-dim", dest="ceiling_dim", type=int,
                   default=DEFAULT_CEILING)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", help="write canonical JSON to this path ('-' for stdout)")
    p.add_argument("--no-cache", dest="no_cache", action="store_true")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="liecoh",
        description="Exact Dolbeault cohomology of deformed complex "
                    "structures on even-rank compact Lie groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rootsys")
    ps = p.add_subparsers(dest="subcommand", required=True)
    q = ps.add_parser("show")
    q.add_argument("--rootsystem", required=True)
    _add_common_flags(q)
    q.set_defaults(handler=cmd_rootsys_show)

    p = sub.add_parser("weyl")
    ps = p.add_subparsers(dest="subcommand", required=True)
    q = ps.add_parser("enum")
    q.add_argument("--rootsystem", required=True)
    _add_common_flags(q)
    q.set_defaults(handler=cmd_weyl_enum)

    p = sub.add_parser("repn")
    ps = p.add_subparsers(dest="subcommand", required=True)
    q = ps.add_parser("info")
    q.add_argument("--rootsystem", required=True)
    q.add_argument("--lambda", dest="lam", required=True)
    _add_common_flags(q)
    q.set_defaults(handler=cmd_repn_info)

    p = sub.add_parser("deform")
    ps = p.add_subparsers(dest="subcommand", required=True)
    q = ps.add_parser("validate")
    _add_data_flags(q)
    _add_common_flags(q)
    q.set_defaults(handler=cmd_deform_validate)

    p = sub.add_parser("resonance")
    ps = p.add_subparsers(dest="subcommand", required=True)
    q = ps.add_parser("scan")
    q.add_argument("--rho", required=True)
    _add_data_flags(q)
    _add_common_flags(q)
    q.set_defaults(handler=cmd_resonance_scan)

    p = sub.add_parser("cohomology")
    ps = p.add_subparsers(dest="subcommand", required=True)
    q = ps.add_parser("line")
    q.add_argument("--rho", required=True)
    _add_data_flags(q)
    _add_common_flags(q)
    q.set_defaults(handler=cmd_cohomology_line)
    q = ps.add_parser("tangent")
    _add_data_flags(q)
    _add_common_flags(q)
    q.set_defaults(handler=cmd_cohomology_tangent)

    p = sub.add_parser("verdict")
    _add_data_flags(p)
    _add_common_flags(p)
    p.set_defaults(handler=cmd_verdict)

    p = sub.add_parser("oracle")
    ps = p.add_subparsers(dest="subcommand", required=True)
    q = ps.add_parser("kostant")
    q.add_argument("--rootsystem", required=True)
    q.add_argument("--lambda", dest="lam", required=True)
    _add_common_flags(q)
    q.set_defaults(handler=cmd_oracle_kostant)
    q = ps.add_parser("bwbd")
    q.add_argument("--rho", required=True)
    q.add_argument("--lambda", dest="lam", required=True)
    _add_data_flags(q)
    _add_common_flags(q)
    q.set_defaults(handler=cmd_oracle_bwbd)
    q = ps.add_parser("sweep")
    _add_data_flags(q)
    _add_common_flags(q)
    q.set_defaults(handler=cmd_oracle_sweep)

    p = sub.add_parser("report")
    _add_data_flags(p)
    _add_common_flags(p)
    p.set_defaults(handler=cmd_report)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return EXIT_VALIDATION if err.code not in (0, None) else EXIT_OK
    started = time.monotonic()
    try:
        code = args.handler(args)
    except ResonanceRefusal as refusal:
        print("refusal: %s" % refusal, file=sys.stderr)
        witness = refusal.certificate.witness
        if witness is not None:
            print("witness: %s" % canonical_json(witness.to_json()).strip(),
                  file=sys.stderr)
        code = EXIT_REFUSAL
    except (CLIError, DeformError, RootSystemError, WeylError, ModuleError,
            ResonanceError) as err:
        print("error: %s" % err, file=sys.stderr)
        code = EXIT_VALIDATION
    except (OracleError, CohomologyError, AlgebraError, AssertionError) as err:
        print("internal error: %s" % err, file=sys.stderr)
        code = EXIT_INTERNAL
    finally:
        elapsed = time.monotonic() - started
        print("elapsed: %.2fs" % elapsed, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
