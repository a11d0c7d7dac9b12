"""Scenario-driven command line front end.

A scenario file is JSON: the ambient multiplicity data, an optional list
of central generators (gamma), named subgroup descriptors, named discrete
generator sets, and optional pre-validated queries.  Commands are given on
the command line and produce deterministic JSON reports on stdout.

Exit codes: 0 success, 2 parse/validation problems, 3 violated
mathematical preconditions.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import AalieError, MathDomainError, ParseError, ValidationError
from .exactnum import (
    encode_exact_scalar,
    parse_exact_scalar,
    set_default_tolerance,
)
from .exactnum import encode_gaussian
from .group import (
    GroupElement,
    encode_element,
    exp_map,
    is_simply_connected_twoblock,
    mul,
    parse_algebra_element,
    parse_element,
)
from .group import center as group_center
from .quotients import (
    CertificateCase,
    FinGenCertificate,
    MaximalCompactCandidate,
    QuotientShape,
    finite_generation_certificate,
    is_compact_subgroup,
    maximal_compact_candidate,
    purity_split,
    quotient_shape,
    validate_quotient,
)
from .spectrum import (
    MultiplicityFunction,
    encode_multiplicity_function,
    encode_t_aleph,
    jordan_matrix,
    k_set_contains,
    k_set_witness,
    parse_multiplicity_function,
    t_aleph,
)
from .subgroups import (
    SubgroupDescriptor,
    element_of,
    encode_descriptor,
    intersect,
    parse_descriptor,
    subgroup_contains,
)

_COMMANDS_WITH_SUBGROUP = {"subgroup", "compact", "shape"}
_KNOWN_COMMANDS = {"describe", "taleph", "kset", "exp", "mul", "subgroup",
                   "intersect", "compact", "maxcompact", "fingen", "shape"}


@dataclass(frozen=True)
class Scenario:
    aleph: MultiplicityFunction
    gamma: Optional[tuple[GroupElement, ...]]
    subgroups: dict[str, SubgroupDescriptor] = field(default_factory=dict)
    discrete_sets: dict[str, tuple[GroupElement, ...]] = field(default_factory=dict)
    queries: tuple[tuple[str, ...], ...] = ()


def parse_scenario_text(text: str) -> Scenario:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("", f"invalid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ParseError("", "scenario must be a JSON object")
    unknown = set(raw) - {"aleph", "gamma", "subgroups", "discreteSets", "queries"}
    if unknown:
        raise ParseError("", f"unknown top-level fields {sorted(unknown)}")
    if "aleph" not in raw:
        raise ParseError("aleph", "missing")
    aleph = parse_multiplicity_function(raw["aleph"], "aleph")
    gamma = None
    if "gamma" in raw and raw["gamma"] is not None:
        if not isinstance(raw["gamma"], list):
            raise ParseError("gamma", "expected a list of elements")
        gamma = tuple(parse_element(aleph, g, f"gamma[{k}]")
                      for k, g in enumerate(raw["gamma"]))
    subgroups: dict[str, SubgroupDescriptor] = {}
    for name, obj in (raw.get("subgroups") or {}).items():
        subgroups[name] = parse_descriptor(aleph, obj, f"subgroups.{name}")
    discrete_sets: dict[str, tuple[GroupElement, ...]] = {}
    for name, obj in (raw.get("discreteSets") or {}).items():
        if not isinstance(obj, list):
            raise ParseError(f"discreteSets.{name}", "expected a list of elements")
        discrete_sets[name] = tuple(
            parse_element(aleph, g, f"discreteSets.{name}[{k}]")
            for k, g in enumerate(obj))
    queries = []
    for k, q in enumerate(raw.get("queries") or []):
        if not (isinstance(q, list) and q and all(isinstance(x, str) for x in q)):
            raise ParseError(f"queries[{k}]", "expected [command, names...]")
        queries.append(tuple(q))
    scenario = Scenario(aleph, gamma, subgroups, discrete_sets, tuple(queries))
    _validate_queries(scenario)
    return scenario


def _validate_queries(sc: Scenario) -> None:
    for q in sc.queries:
        command = q[0]
        if command not in _KNOWN_COMMANDS:
            raise ValidationError(command, "unknown query command")
        if command in _COMMANDS_WITH_SUBGROUP or command == "intersect":
            for name in q[1:]:
                if name not in sc.subgroups:
                    raise ValidationError(name, "query references an undefined subgroup")
        if command == "fingen":
            for name in q[1:]:
                if name not in sc.discrete_sets:
                    raise ValidationError(name, "query references an undefined set")


def parse_scenario(path: str) -> Scenario:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_scenario_text(fh.read())


def encode_scenario(sc: Scenario) -> dict:
    out: dict = {"aleph": encode_multiplicity_function(sc.aleph)}
    if sc.gamma is not None:
        out["gamma"] = [encode_element(g) for g in sc.gamma]
    if sc.subgroups:
        out["subgroups"] = {name: encode_descriptor(h)
                            for name, h in sc.subgroups.items()}
    if sc.discrete_sets:
        out["discreteSets"] = {name: [encode_element(g) for g in gens]
                               for name, gens in sc.discrete_sets.items()}
    if sc.queries:
        out["queries"] = [list(q) for q in sc.queries]
    return out


# ---------------------------------------------------------------------------
# report rendering
# ---------------------------------------------------------------------------


def _fnum(x: float) -> float:
    return float(f"{x:.17g}")


def _enc_complex(z: complex) -> dict:
    return {"re": _fnum(z.real), "im": _fnum(z.imag)}


def _enc_element(g: GroupElement) -> dict:
    out: dict = {
        "exact": g.exact,
        "vNumeric": [_enc_complex(z) for z in g.v_num],
        "t": encode_exact_scalar(g.t),
    }
    if g.exact:
        out["v"] = [encode_exact_scalar(x) for x in g.v]
    return out


def _enc_shape(shape: Optional[QuotientShape]) -> Optional[dict]:
    if shape is None:
        return None
    return {"torusRank": shape.torus_rank, "epsilon": shape.epsilon,
            "eta": shape.eta, "compact": shape.is_compact}


def _enc_certificate(cert: FinGenCertificate) -> dict:
    out: dict = {
        "case": cert.case.value,
        "projections": [encode_exact_scalar(t) for t in cert.projections],
        "reconstruction": [encode_element(g) for g in cert.reconstruct()],
    }
    if cert.case is CertificateCase.INSIDE_K:
        out["witnesses"] = [
            None if w is None else {"m": w[0], "eigenvalue": encode_gaussian(w[1])}
            for w in cert.k_witnesses]
    if cert.case is CertificateCase.STRAIGHTENED_COMMUTATOR:
        out["t0"] = encode_exact_scalar(cert.t0)
        out["straightenedGenerator"] = _enc_element(cert.straightened_generator)
        out["kernelIndices"] = list(cert.kernel_indices)
        out["imageElements"] = [_enc_element(g) for g in cert.image_elements]
    return out


def _enc_maxcompact(res: MaximalCompactCandidate) -> dict:
    out = {
        "subgroup": encode_descriptor(res.subgroup),
        "compact": res.compact,
        "shape": _enc_shape(res.shape),
    }
    if not res.compact:
        out["openQuestion"] = "max-compact-discrepancy"
    return out


# ---------------------------------------------------------------------------
# command execution
# ---------------------------------------------------------------------------


def _need_subgroup(sc: Scenario, name: str) -> SubgroupDescriptor:
    if name not in sc.subgroups:
        raise ValidationError(name, "no such subgroup in the scenario")
    return sc.subgroups[name]


def _need_gamma(sc: Scenario):
    if sc.gamma is None:
        raise ValidationError("gamma", "scenario defines no gamma generators")
    return validate_quotient(sc.aleph, list(sc.gamma))


def _parse_json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(what, f"invalid JSON argument: {exc}") from None


def execute_command(sc: Scenario, argv: Sequence[str]) -> dict:
    if not argv:
        raise ValidationError("command", "no command given")
    command, *args = argv
    aleph = sc.aleph

    if command == "describe":
        dense = jordan_matrix(aleph).blocks
        j_rows = []
        d = aleph.dimension
        grid = [[None] * d for _ in range(d)]
        for lam, n, start in dense:
            for j in range(n):
                grid[start + j][start + j] = lam
                if j + 1 < n:
                    grid[start + j][start + j + 1] = None  # filled below
        from .exactnum import GaussianRational, ONE_G, ZERO_G

        for r in range(d):
            row = []
            for c in range(d):
                row.append(encode_gaussian(grid[r][c] if grid[r][c] is not None
                                           else ZERO_G))
            j_rows.append(row)
        for lam, n, start in dense:
            for j in range(n - 1):
                j_rows[start + j][start + j + 1] = encode_gaussian(ONE_G)
        cen = group_center(aleph)
        return {
            "d": aleph.dimension,
            "J": j_rows,
            "taleph": encode_t_aleph(cen.t_part),
            "center": {
                "kernelBasis": [[encode_exact_scalar(x) for x in v]
                                for v in cen.kernel_basis],
                "tPart": encode_t_aleph(cen.t_part),
            },
            "simplyConnected2Block": is_simply_connected_twoblock(aleph),
        }
    if command == "taleph":
        return encode_t_aleph(t_aleph(aleph))
    if command == "kset":
        if len(args) != 1:
            raise ValidationError("kset", "usage: kset <exact-scalar-json>")
        t = parse_exact_scalar(_parse_json_arg(args[0], "kset"), "kset")
        w = k_set_witness(aleph, t)
        return {"contains": k_set_contains(aleph, t),
                "witness": None if w is None else
                {"m": w[0], "eigenvalue": encode_gaussian(w[1])}}
    if command == "exp":
        if len(args) != 1:
            raise ValidationError("exp", "usage: exp <algebra-element-json>")
        x = parse_algebra_element(aleph, _parse_json_arg(args[0], "exp"), "exp")
        return {"element": _enc_element(exp_map(x))}
    if command == "mul":
        if len(args) != 2:
            raise ValidationError("mul", "usage: mul <element-json> <element-json>")
        g = parse_element(aleph, _parse_json_arg(args[0], "mul"), "mul[0]")
        h = parse_element(aleph, _parse_json_arg(args[1], "mul"), "mul[1]")
        return {"element": _enc_element(mul(g, h))}
    if command == "subgroup":
        if len(args) != 1:
            raise ValidationError("subgroup", "usage: subgroup <name>")
        h = _need_subgroup(sc, args[0])
        samples = []
        if h.w_rows:
            samples.append(element_of(h, [1] * len(h.w_rows), 0))
        if h.kind == "type2":
            samples.append(element_of(h, [0] * len(h.w_rows), 1))
        return {
            "descriptor": encode_descriptor(h),
            "dimComplex": h.dim_complex,
            "dimReal": h.dim_real,
            "abelian": h.is_abelian(),
            "samples": [_enc_element(g) for g in samples],
            "samplesContained": [subgroup_contains(h, g) for g in samples],
        }
    if command == "intersect":
        if len(args) != 2:
            raise ValidationError("intersect", "usage: intersect <a> <b>")
        h = intersect(_need_subgroup(sc, args[0]), _need_subgroup(sc, args[1]))
        return {"descriptor": encode_descriptor(h), "dimComplex": h.dim_complex}
    if command == "compact":
        if len(args) != 1:
            raise ValidationError("compact", "usage: compact <subgroup>")
        q = _need_gamma(sc)
        return {"compact": is_compact_subgroup(q, _need_subgroup(sc, args[0]))}
    if command == "maxcompact":
        q = _need_gamma(sc)
        return _enc_maxcompact(maximal_compact_candidate(q))
    if command == "fingen":
        if len(args) != 1:
            raise ValidationError("fingen", "usage: fingen <set>")
        if args[0] not in sc.discrete_sets:
            raise ValidationError(args[0], "no such discrete set in the scenario")
        cert = finite_generation_certificate(aleph, list(sc.discrete_sets[args[0]]))
        return _enc_certificate(cert)
    if command == "shape":
        if len(args) != 1:
            raise ValidationError("shape", "usage: shape <subgroup>")
        q = _need_gamma(sc)
        h = _need_subgroup(sc, args[0])
        inside, _ = purity_split(q.gamma, h)
        return {"shape": _enc_shape(quotient_shape(h, inside)),
                "gammaInsideRank": inside.z_rank}
    raise ValidationError(command, "unknown command")


def run_scenario_command(sc: Scenario, argv: Sequence[str],
                         pretty: bool = False) -> str:
    report = {"command": argv[0], "result": execute_command(sc, argv)}
    if pretty:
        return json.dumps(report, indent=2, sort_keys=True)
    return json.dumps(report, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# shipped fixture scenarios
# ---------------------------------------------------------------------------

_Z = {"re": "0", "im": "0"}
_EX0 = {"alg": _Z, "tau": _Z}


def _sc(alg_re="0", alg_im="0", tau_re="0", tau_im="0") -> dict:
    return {"alg": {"re": alg_re, "im": alg_im},
            "tau": {"re": tau_re, "im": tau_im}}


FIXTURE_SCENARIOS = {
    "torus": json.dumps({
        "aleph": {"entries": [
            {"eigenvalue": {"re": "0", "im": "0"}, "size": 1, "mult": 1},
            {"eigenvalue": {"re": "0", "im": "1"}, "size": 1, "mult": 1},
        ]},
        "gamma": [
            {"v": [_sc(alg_re="1"), _EX0], "t": _EX0},
            {"v": [_sc(alg_im="1"), _EX0], "t": _EX0},
        ],
        "subgroups": {
            "K": {"kind": "type1", "W": [[_sc(alg_re="1"), _EX0]]},
            "taxis": {"kind": "type2", "W": [],
                      "v0": [_EX0, _EX0]},
        },
        "discreteSets": {
            "pd": [{"v": [_EX0, _EX0], "t": _sc(alg_re="1")},
                   {"v": [_EX0, _EX0], "t": _sc(tau_re="1")}],
        },
        "queries": [["describe"], ["compact", "K"], ["maxcompact"],
                    ["shape", "K"], ["fingen", "pd"]],
    }, indent=1),
    "cylinder": json.dumps({
        "aleph": {"entries": [
            {"eigenvalue": {"re": "0", "im": "1"}, "size": 1, "mult": 1},
        ]},
        "gamma": [
            {"v": [_EX0], "t": _sc(tau_im="-1")},
        ],
        "subgroups": {
            "taxis": {"kind": "type2", "W": [], "v0": [_EX0]},
        },
        "discreteSets": {
            "insideK": [{"v": [_EX0], "t": _sc(tau_im="-1")},
                        {"v": [_EX0], "t": _sc(tau_im="-2")}],
        },
        "queries": [["describe"], ["maxcompact"], ["compact", "taxis"],
                    ["fingen", "insideK"]],
    }, indent=1),
    "heisenberg": json.dumps({
        "aleph": {"entries": [
            {"eigenvalue": {"re": "0", "im": "0"}, "size": 2, "mult": 1},
        ]},
        "gamma": [
            {"v": [_sc(alg_re="1"), _EX0], "t": _EX0},
        ],
        "subgroups": {
            "center": {"kind": "type1", "W": [[_sc(alg_re="1"), _EX0]]},
            "full": {"kind": "type2",
                     "W": [[_sc(alg_re="1"), _EX0], [_EX0, _sc(alg_re="1")]],
                     "v0": [_EX0, _EX0]},
        },
        "queries": [["describe"], ["taleph"], ["compact", "center"],
                    ["intersect", "center", "full"]],
    }, indent=1),
}


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="aalie",
        description="Computations in complex almost Abelian Lie groups")
    p.add_argument("command", help="describe|taleph|kset|exp|mul|subgroup|"
                                   "intersect|compact|maxcompact|fingen|shape|verify")
    p.add_argument("args", nargs="*", help="command arguments")
    p.add_argument("--scenario", help="scenario JSON file")
    p.add_argument("--pretty", action="store_true", help="indented output")
    p.add_argument("--tol", type=float, default=None,
                   help="override the global tolerance (default 1e-9)")
    p.add_argument("--seed", type=int, default=42, help="seed for verify")
    p.add_argument("--size", choices=("small", "medium"), default="small",
                   help="verify suite size")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    ns = parser.parse_args(argv)
    if ns.tol is not None:
        set_default_tolerance(ns.tol)
    try:
        if ns.command == "verify":
            from .verify import format_report, run_verify

            report = run_verify(ns.seed, ns.size)
            print(format_report(report))
            return 0 if report.ok else 1
        if not ns.scenario:
            raise ValidationError(ns.command, "a --scenario file is required")
        sc = parse_scenario(ns.scenario)
        print(run_scenario_command(sc, [ns.command, *ns.args], pretty=ns.pretty))
        return 0
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MathDomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except AalieError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
