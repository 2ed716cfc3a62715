"""Command-line front end.

Reads a cone (or strata) description as JSON from a file or stdin, runs one
stage of the pipeline and prints its report.  Exit status is 0 on success,
1 when an invariant fails and 2 on malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .cone import GradedCone, InvalidCone, validate
from .decomposition import (MINUS, PLUS, GenericityFailure, build_decomposition, choose_xi,
                            direction_from_xi, verify_partition)
from .exactmath import as_rational, format_rational
from .pairing import PresentationNotCertified, build_pairing, check_nondegeneracy
from .quotient import (build_presentation, make_forms, random_coefficients, regularity_check,
                       specialized_coefficients)
from .series import check_duality, hilbert_numerator_truncated, s_polynomial, t_polynomial
from .stringy import BivariatePolynomial, StratumRecord, string_e_polynomial, string_hodge_numbers
from .triangulation import TriangulationError, triangulate

COMMANDS = ("validate", "triangulate", "decompose", "series", "quotient", "pairing",
            "stringy", "certify")
COEFFICIENT_RETRIES = 8


class MalformedInput(ValueError):
    pass


class InvariantFailure(Exception):
    def __init__(self, invariant: str, message: str, **context):
        super().__init__(message)
        self.invariant = invariant
        self.context = context


@dataclass
class JobConfig:
    command: str
    cone: GradedCone | None = None
    raw: dict = field(default_factory=dict)
    seed: int = 0
    degree_cap: int | None = None
    q: Fraction | None = None


def _int_vector(v, what: str) -> tuple[int, ...]:
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool)
                                          for x in v):
        raise MalformedInput(f"{what} must be a list of integers")
    return tuple(v)


def _rational_list(v, what: str) -> list[Fraction]:
    if not isinstance(v, list):
        raise MalformedInput(f"{what} must be a list")
    try:
        return [as_rational(x) for x in v]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(f"{what}: {exc}") from None


def parse_cone(desc: Any) -> GradedCone:
    if not isinstance(desc, dict):
        raise MalformedInput("cone description must be a JSON object")
    for key in ("rank", "rayGenerators", "degree"):
        if key not in desc:
            raise MalformedInput(f"missing key {key!r}")
    r = desc["rank"]
    if not isinstance(r, int) or isinstance(r, bool) or r < 0:
        raise MalformedInput("rank must be a nonnegative integer")
    if not isinstance(desc["rayGenerators"], list):
        raise MalformedInput("rayGenerators must be a list")
    rays = [_int_vector(v, "ray generator") for v in desc["rayGenerators"]]
    degree = _int_vector(desc["degree"], "degree")
    pts_raw = desc.get("points", desc["rayGenerators"])
    if not isinstance(pts_raw, list):
        raise MalformedInput("points must be a list")
    points = [_int_vector(v, "point") for v in pts_raw]
    return GradedCone(r, tuple(rays), degree, tuple(points))


class Pipeline:
    """Lazily built stages shared by the commands; every random choice is echoed."""

    def __init__(self, cfg: JobConfig):
        self.cfg = cfg
        self.cone = cfg.cone
        self.echo: dict = {"seed": cfg.seed}
        self._tri = self._dec = None
        self._pres: dict = {}

    @property
    def rank(self) -> int:
        return self.cone.rank

    @property
    def degree_cap(self) -> int:
        return self.cfg.degree_cap if self.cfg.degree_cap is not None else 2 * self.rank + 2

    def validate(self) -> dict:
        report = validate(self.cone)
        if not report.valid:
            raise InvariantFailure("cone.valid", "; ".join(report.failures),
                                   failures=report.failures)
        return report.to_dict()

    @property
    def triangulation(self):
        if self._tri is None:
            self.validate()
            heights = self.cfg.raw.get("heights")
            if heights is not None:
                heights = _rational_list(heights, "heights")
            try:
                self._tri = triangulate(self.cone, heights, seed=self.cfg.seed)
            except TriangulationError as exc:
                raise InvariantFailure("triangulation.strictly_convex", str(exc)) from None
            self.echo["heights"] = [format_rational(h) for h in self._tri.heights]
            self.echo["triangulation_attempts"] = self._tri.attempts
        return self._tri

    @property
    def decomposition(self):
        if self._dec is None:
            tri = self.triangulation
            xi = self.cfg.raw.get("xi")
            try:
                if xi is not None:
                    direction = direction_from_xi(tri, _rational_list(xi, "xi"))
                else:
                    direction = choose_xi(tri, self.cfg.seed)
            except GenericityFailure as exc:
                raise InvariantFailure("xi.generic", str(exc)) from None
            self.echo["xi"] = [format_rational(x) for x in direction.xi]
            self.echo["xi_attempts"] = direction.attempts
            self._dec = build_decomposition(tri, direction)
        return self._dec

    def _coefficient_candidates(self):
        raw = self.cfg.raw.get("coefficients")
        if raw is not None:
            yield "input", _rational_list(raw, "coefficients")
        elif self.cfg.q is not None:
            try:
                yield "q-mode", specialized_coefficients(self.cfg.q, self.triangulation.heights)
            except ValueError as exc:
                raise InvariantFailure("coefficients.q_mode", str(exc)) from None
        else:
            for attempt in range(COEFFICIENT_RETRIES):
                yield "random", random_coefficients(self.cone, self.cfg.seed + attempt)

    def presentations(self):
        """Quotient presentations of ``R`` and ``R^open``.

        Seeded coefficients are redrawn while the quotients fail to certify;
        user-supplied or q-specialised ones are used once.
        """
        if not self._pres:
            dec = self.decomposition
            attempts = 0
            for source, coeffs in self._coefficient_candidates():
                attempts += 1
                if len(coeffs) != self.cone.num_points:
                    raise MalformedInput(f"expected {self.cone.num_points} coefficients")
                forms = make_forms(self.cone, coefficients=coeffs)
                pres = {flavor: build_presentation(dec, forms, self.degree_cap, interior=inner)
                        for flavor, inner in (("R", False), ("R_open", True))}
                self._pres = pres
                self.echo["coefficients"] = [format_rational(c) for c in coeffs]
                self.echo["coefficient_source"] = source
                self.echo["coefficient_attempts"] = attempts
                if all(p.certified for p in pres.values()):
                    break
        return self._pres

    def series(self) -> dict:
        dec = self.decomposition
        S, T = s_polynomial(dec), t_polynomial(dec)
        return {"S": S.to_list(), "T": T.to_list(), "duality": check_duality(S, T, self.rank)}

    def hilbert(self) -> dict:
        S, T = s_polynomial(self.decomposition), t_polynomial(self.decomposition)
        D = self.degree_cap
        hR = hilbert_numerator_truncated(self.cone, D, False, self.triangulation)
        hO = hilbert_numerator_truncated(self.cone, D, True, self.triangulation)
        return {"hilbert_R": hR.to_list(), "hilbert_R_open": hO.to_list(),
                "S_matches": hR == S.truncate(D), "T_matches": hO == T.truncate(D)}

    def quotient(self) -> dict:
        out = {}
        for flavor, p in self.presentations().items():
            reg = regularity_check(p.dims, self.rank)
            out[flavor] = {"dims": p.dims, "certified": p.certified,
                           "regular": reg.ok, "first_failure": reg.details["first_failure"],
                           "failures": reg.failures}
        out["max_degree"] = self.degree_cap
        return out

    def pairing(self) -> dict:
        pres = self.presentations()
        try:
            data = build_pairing(pres["R"], pres["R_open"])
        except PresentationNotCertified as exc:
            raise InvariantFailure("pairing.certified_quotients", str(exc)) from None
        report = check_nondegeneracy(data)
        return {**data.to_dict(), "nondegenerate": report.ok, "failures": report.failures}


def _decompose_report(p: Pipeline) -> dict:
    dec = p.decomposition
    boxes = {}
    for sign, name in ((PLUS, "plus"), (MINUS, "minus")):
        boxes[name] = [{"simplex": list(bs.simplex.indices),
                        "points": [list(b.coords) for b in bs.points]}
                       for bs in dec.boxes[sign]]
    return {"direction": dec.direction.to_dict(), "boxes": boxes}


def _require(cond: bool, invariant: str, message: str, **context) -> None:
    if not cond:
        raise InvariantFailure(invariant, message, **context)


def certify(p: Pipeline) -> dict:
    steps: dict = {}
    steps["validate"] = p.validate()
    steps["triangulate"] = p.triangulation.to_dict()
    steps["decompose"] = _decompose_report(p)
    D = p.degree_cap
    for sign, name in ((PLUS, "plus"), (MINUS, "minus")):
        rep = verify_partition(p.decomposition, D, sign)
        steps[f"partition_{name}"] = {"ok": rep.ok, "points": rep.details["points"]}
        _require(rep.ok, f"partition.{name}", "; ".join(rep.failures[:5]))
    series = p.series()
    steps["series"] = series
    _require(series["duality"], "series.duality", "S(t) != t^r T(1/t)")
    hil = p.hilbert()
    steps["hilbert"] = hil
    _require(hil["S_matches"] and hil["T_matches"], "series.hilbert_oracle",
             "box counts disagree with lattice point counts")
    q = p.quotient()
    steps["quotient"] = q
    for flavor in ("R", "R_open"):
        _require(q[flavor]["regular"], f"quotient.regular.{flavor}",
                 "; ".join(q[flavor]["failures"][:5]),
                 first_failure=q[flavor]["first_failure"])
        _require(q[flavor]["certified"], f"quotient.box_basis.{flavor}",
                 "quotient does not match the box basis")
    pair = p.pairing()
    steps["pairing"] = pair
    _require(pair["nondegenerate"], "pairing.nondegenerate", "; ".join(pair["failures"]))
    return {"certified": True, "steps": steps}


def _stringy(cfg: JobConfig) -> dict:
    raw = cfg.raw
    if not isinstance(raw, dict) or not isinstance(raw.get("strata"), list):
        raise MalformedInput('expected {"strata": [...]}')
    records = []
    for k, st in enumerate(raw["strata"]):
        if not isinstance(st, dict) or "ePolynomial" not in st or "cone" not in st:
            raise MalformedInput(f"stratum {k} needs ePolynomial and cone")
        try:
            e = BivariatePolynomial.from_triples(st["ePolynomial"])
        except (TypeError, ValueError) as exc:
            raise MalformedInput(f"stratum {k}: {exc}") from None
        cone = None if st["cone"] == "smooth" else parse_cone(st["cone"])
        if cone is not None:
            report = validate(cone)
            if not report.valid:
                raise InvariantFailure("cone.valid", f"stratum {k}: " + "; ".join(report.failures))
        records.append(StratumRecord(e, cone))
    try:
        e_st = string_e_polynomial(records, cfg.seed)
    except (TriangulationError, GenericityFailure, InvalidCone) as exc:
        raise InvariantFailure("stringy.cone_pipeline", str(exc)) from None
    hodge = string_hodge_numbers(e_st)
    return {"seed": cfg.seed, "E_st": e_st.to_triples(),
            "hodge": [[p, q, h] for (p, q), h in hodge.items()]}


HANDLERS: dict[str, Callable[[Pipeline], dict]] = {
    "validate": lambda p: p.validate(),
    "triangulate": lambda p: p.triangulation.to_dict(),
    "decompose": _decompose_report,
    "series": lambda p: p.series(),
    "quotient": lambda p: p.quotient(),
    "pairing": lambda p: p.pairing(),
    "certify": certify,
}


def run(cfg: JobConfig) -> tuple[int, dict]:
    try:
        if cfg.command == "stringy":
            return 0, _stringy(cfg)
        p = Pipeline(cfg)
        try:
            body = HANDLERS[cfg.command](p)
        except InvariantFailure as exc:
            return 1, {"ok": False, **p.echo,
                       "error": {"invariant": exc.invariant, "message": str(exc),
                                 **exc.context}}
        return 0, {"ok": True, **p.echo, **body}
    except InvariantFailure as exc:
        return 1, {"ok": False, "seed": cfg.seed,
                   "error": {"invariant": exc.invariant, "message": str(exc), **exc.context}}
    except MalformedInput as exc:
        return 2, {"ok": False, "error": {"invariant": "input", "message": str(exc)}}


def _to_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for k, v in obj.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_to_text(v, indent + 1))
        else:
            lines.append(f"{pad}{k}: {json.dumps(v)}")
    return "\n".join(lines)


def render(report: dict, fmt: str) -> str:
    if fmt == "text":
        return _to_text(report)
    return json.dumps(report, sort_keys=True, separators=(",", ":"))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="stringcone",
                                 description="Box decompositions, S/T-polynomials and "
                                             "string cohomology of graded cones.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("input", nargs="?", default="-", help="JSON file, or - for stdin")
    ap.add_argument("--degree-cap", type=int, default=None, metavar="D")
    ap.add_argument("--seed", type=int, default=None, metavar="S")
    ap.add_argument("--q-mode", default=None, metavar="Q",
                    help="use c_i = Q**psi(e_i) instead of random coefficients")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        text = sys.stdin.read() if args.input == "-" else open(args.input).read()
    except OSError as exc:
        code, report = 2, {"ok": False, "error": {"invariant": "input", "message": str(exc)}}
        print(render(report, args.format))
        return code
    try:
        cfg = _config(args, text)
    except MalformedInput as exc:
        report = {"ok": False, "error": {"invariant": "input", "message": str(exc)}}
        print(render(report, args.format))
        return 2
    code, report = run(cfg)
    print(render(report, args.format))
    return code


def _config(args, text: str) -> JobConfig:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON at line {exc.lineno}, column {exc.colno}: "
                             f"{exc.msg}") from None
    if not isinstance(raw, dict):
        raise MalformedInput("top-level JSON must be an object")
    seed = args.seed if args.seed is not None else raw.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise MalformedInput("seed must be an integer")
    if args.degree_cap is not None and args.degree_cap < 0:
        raise MalformedInput("--degree-cap must be >= 0")
    q = None
    if args.q_mode is not None:
        try:
            q = as_rational(args.q_mode)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise MalformedInput(f"--q-mode: {exc}") from None
    cone = None if args.command == "stringy" else parse_cone(raw)
    return JobConfig(args.command, cone, raw, seed, args.degree_cap, q)


if __name__ == "__main__":
    sys.exit(main())
