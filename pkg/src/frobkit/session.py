"""Session files: a JSON description of a field, a ring, an ideal, named
objects (Cartier modules, gamma-sheaves, immersions, points) and a list of
commands.  Commands run in order; a command may store its result under a name
for later commands.  Output is one JSON record per command."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

from .cartier import (CartierModule, crystal_is_zero, is_crystal_supported_on,
                      is_nilpotent, validate_cartier_structure)
from .field import FieldSpec
from .gamma import (GammaSheaf, gamma_is_nilpotent, gen_stable_dimension,
                    twist_to_cartier, twist_to_gamma, validate_gamma_structure)
from .koszul import (ClosedImmersion, cartier_pullback,
                     check_pullback_twist_commutes, dualizing_module,
                     gamma_pullback, transition_factor)
from .polyring import (DEFAULT_SPAIR_BUDGET, ParseError, QuotientContext,
                       RingContext, buchberger, format_polynomial,
                       format_vector, parse_polynomial, parse_vector)
from .solutions import (DEFAULT_GUARD, RationalPoint, artin_schreier_kernel,
                        enumerate_points, point_field, solutions_at_point)


class SessionError(ValueError):
    """Schema violation or unresolvable reference in a session file."""


class CommandError(RuntimeError):
    """A command failed during execution."""


@dataclass
class Budgets:
    spair: int = DEFAULT_SPAIR_BUDGET
    chain: int = 64
    guard: int = DEFAULT_GUARD


def _parse_kappa_key(key: str, rank: int, nvars: int, p: int) -> tuple:
    try:
        jpart, _, apart = key.partition(",")
        j = int(jpart)
        a = tuple(int(t) for t in apart.split())
    except ValueError as exc:
        raise SessionError(f"bad kappa key {key!r}") from exc
    if not 0 <= j < rank:
        raise SessionError(f"kappa key {key!r}: position out of range")
    if len(a) != nvars or any(not 0 <= e < p for e in a):
        raise SessionError(f"kappa key {key!r}: exponents must lie in "
                           f"[0,{p})^{nvars}")
    return j, a


def _format_kappa_key(j: int, a: tuple) -> str:
    return f"{j},{' '.join(str(e) for e in a)}"


def serialize_module(m: CartierModule) -> dict:
    return {
        "rank": m.rank,
        "relations": [format_vector(g) for g in m.relations.generators],
        "kappa": {_format_kappa_key(j, a): format_vector(v)
                  for (j, a), v in sorted(m.kappa_table.items())},
    }


def serialize_gamma(n: GammaSheaf) -> dict:
    return {
        "rank": n.rank,
        "relations": [format_vector(g) for g in n.relations.generators],
        "matrix": [[format_polynomial(e) for e in row] for row in n.matrix],
    }


class Session:
    """A parsed session: context plus a mutable object namespace."""

    def __init__(self, data: dict, budgets: Optional[Budgets] = None):
        self.budgets = budgets or Budgets()
        try:
            self.field = FieldSpec.from_json(data["field"])
            ring_spec = data["ring"]
            self.ring = RingContext(self.field, tuple(ring_spec["vars"]),
                                    ring_spec.get("order", "grevlex"))
        except (KeyError, TypeError, ValueError) as exc:
            raise SessionError(f"bad field/ring specification: {exc}") from exc
        ideal_texts = data.get("ideal", [])
        self.ideal_gens = [parse_polynomial(self.ring, t) for t in ideal_texts]
        self.ctx = QuotientContext.from_generators(self.ring, self.ideal_gens,
                                                   self.budgets.spair)
        self.objects: dict[str, Any] = {}
        for name, spec in data.get("objects", {}).items():
            self.objects[name] = self._build_object(name, spec)
        self.commands = list(data.get("commands", []))
        for cmd in self.commands:
            if not isinstance(cmd, dict) or "op" not in cmd:
                raise SessionError("each command needs an \"op\" field")

    # -- object construction -------------------------------------------------
    def _build_object(self, name: str, spec: dict):
        if not isinstance(spec, dict) or len(spec) != 1:
            raise SessionError(f"object {name!r} must have exactly one kind")
        kind, body = next(iter(spec.items()))
        try:
            if kind == "module":
                return self._build_module(body)
            if kind == "gamma":
                return self._build_gamma(body)
            if kind == "immersion":
                seq = [parse_polynomial(self.ring, t) for t in body["sequence"]]
                return ClosedImmersion.create(self.ring, seq,
                                              self.budgets.spair)
            if kind == "point":
                m = int(body["m"])
                spec_f = (self.field if self.field.e > 1
                          else point_field(self.field.p, m))
                coords = tuple(spec_f.element(c) for c in body["coords"])
                if len(coords) != self.ring.nvars:
                    raise SessionError("point coordinate count mismatch")
                return RationalPoint(m, spec_f, coords)
        except (ParseError, ValueError, KeyError) as exc:
            raise SessionError(f"object {name!r}: {exc}") from exc
        raise SessionError(f"object {name!r}: unknown kind {kind!r}")

    def _build_module(self, body: dict) -> CartierModule:
        rank = int(body["rank"])
        rels = [parse_vector(self.ring, rank, t)
                for t in body.get("relations", [])]
        table = {}
        for key, text in body.get("kappa", {}).items():
            j, a = _parse_kappa_key(key, rank, self.ring.nvars, self.field.p)
            table[(j, a)] = parse_vector(self.ring, rank, text)
        m = CartierModule.create(self.ctx, rank, rels, table,
                                 self.budgets.spair)
        if not validate_cartier_structure(m):
            raise SessionError("kappa table is inconsistent with the "
                               "relations")
        return m

    def _build_gamma(self, body: dict) -> GammaSheaf:
        rank = int(body["rank"])
        rels = [parse_vector(self.ring, rank, t)
                for t in body.get("relations", [])]
        matrix = [[parse_polynomial(self.ring, e) for e in row]
                  for row in body["matrix"]]
        n = GammaSheaf.create(self.ctx, rank, matrix, rels,
                              self.budgets.spair)
        if not validate_gamma_structure(n):
            raise SessionError("gamma matrix is inconsistent with the "
                               "relations")
        return n

    # -- command execution ----------------------------------------------------
    def _get(self, cmd: dict, key: str, kinds: tuple):
        name = cmd.get(key)
        if name is None:
            raise CommandError(f"missing argument {key!r}")
        obj = self.objects.get(name)
        if obj is None:
            raise CommandError(f"unknown object {name!r}")
        if not isinstance(obj, kinds):
            raise CommandError(f"object {name!r} has the wrong kind for "
                               f"{cmd['op']}")
        return obj

    def _store(self, cmd: dict, obj) -> None:
        name = cmd.get("store")
        if name:
            self.objects[name] = obj

    def run_command(self, cmd: dict) -> dict:
        op = cmd["op"]
        handler = _HANDLERS.get(op)
        if handler is None:
            raise CommandError(f"unknown op {op!r}")
        return handler(self, cmd)


# -- handlers -----------------------------------------------------------------

def _h_gb(s: Session, cmd: dict) -> dict:
    texts = cmd.get("polys")
    polys = (s.ideal_gens if texts is None
             else [parse_polynomial(s.ring, t) for t in texts])
    gb = buchberger(polys, s.ring, s.budgets.spair) if polys else None
    gens = [] if gb is None else [format_polynomial(g) for g in gb.polys]
    return {"basis": gens}


def _h_validate(s: Session, cmd: dict) -> dict:
    obj = s._get(cmd, "target", (CartierModule, GammaSheaf))
    if isinstance(obj, CartierModule):
        ok, bad = validate_cartier_structure(obj, collect=True)
        return {"valid": ok,
                "violations": [{"relation": g, "residue": list(a)}
                               for g, a in bad]}
    ok, bad = validate_gamma_structure(obj, collect=True)
    return {"valid": ok, "violations": [{"relation": g} for g in bad]}


def _h_nilpotent(s: Session, cmd: dict) -> dict:
    obj = s._get(cmd, "target", (CartierModule, GammaSheaf))
    if isinstance(obj, CartierModule):
        v = is_nilpotent(obj, s.budgets.chain, s.budgets.spair)
    else:
        v = gamma_is_nilpotent(obj, cmd.get("bound", 16), s.budgets.spair)
    return v.to_json()


def _h_crystal_zero(s: Session, cmd: dict) -> dict:
    m = s._get(cmd, "target", (CartierModule,))
    return crystal_is_zero(m, s.budgets.chain, s.budgets.spair).to_json()


def _h_supported_on(s: Session, cmd: dict) -> dict:
    m = s._get(cmd, "target", (CartierModule,))
    gens = [parse_polynomial(s.ring, t) for t in cmd.get("ideal", [])]
    ok = is_crystal_supported_on(m, gens, s.budgets.chain, s.budgets.spair)
    return {"supported": ok}


def _h_twist_to_cartier(s: Session, cmd: dict) -> dict:
    n = s._get(cmd, "target", (GammaSheaf,))
    seq = [parse_polynomial(s.ring, t) for t in cmd.get("sequence", [])]
    m = twist_to_cartier(n, seq, cmd.get("method", "projection"),
                         s.budgets.spair)
    s._store(cmd, m)
    return {"module": serialize_module(m)}


def _h_twist_to_gamma(s: Session, cmd: dict) -> dict:
    m = s._get(cmd, "target", (CartierModule,))
    n = twist_to_gamma(m, s.budgets.spair)
    s._store(cmd, n)
    return {"gamma": serialize_gamma(n)}


def _h_pullback(s: Session, cmd: dict) -> dict:
    obj = s._get(cmd, "target", (CartierModule, GammaSheaf))
    im = s._get(cmd, "immersion", (ClosedImmersion,))
    if isinstance(obj, CartierModule):
        out = cartier_pullback(obj, im, s.budgets.spair)
        s._store(cmd, out)
        return {"module": serialize_module(out)}
    out = gamma_pullback(obj, im, s.budgets.spair)
    s._store(cmd, out)
    return {"gamma": serialize_gamma(out)}


def _h_dualizing(s: Session, cmd: dict) -> dict:
    im = s._get(cmd, "immersion", (ClosedImmersion,))
    m = dualizing_module(im, s.budgets.spair)
    s._store(cmd, m)
    return {"module": serialize_module(m)}


def _h_transition(s: Session, cmd: dict) -> dict:
    f = [parse_polynomial(s.ring, t) for t in cmd["f"]]
    g = [parse_polynomial(s.ring, t) for t in cmd["g"]]
    tr = transition_factor(f, g, s.ring, s.budgets.spair)
    return {"det": format_polynomial(tr.det),
            "matrix": [[format_polynomial(e) for e in row]
                       for row in tr.matrix]}


def _h_check_2_14(s: Session, cmd: dict) -> dict:
    n = s._get(cmd, "target", (GammaSheaf,))
    im = s._get(cmd, "immersion", (ClosedImmersion,))
    cert = check_pullback_twist_commutes(n, im, s.budgets.spair)
    return {"equal": cert.equal,
            "discrepancies": [{"position": j, "residue": list(a),
                               "first": format_vector(va),
                               "second": format_vector(vb)}
                              for j, a, va, vb in cert.discrepancies]}


def _h_gen_dim(s: Session, cmd: dict) -> dict:
    n = s._get(cmd, "target", (GammaSheaf,))
    return {"dim": gen_stable_dimension(n, s.budgets.spair)}


def _h_solutions(s: Session, cmd: dict) -> dict:
    n = s._get(cmd, "target", (GammaSheaf,))
    if "point" in cmd:
        pts = [s._get(cmd, "point", (RationalPoint,))]
    else:
        m = int(cmd.get("m", 1))
        pts = enumerate_points(s.ctx, m, s.budgets.guard)
    rows = []
    for pt in pts:
        space = solutions_at_point(n, pt)
        rows.append({"point": pt.to_json()["coords"], "m": pt.m,
                     "dim": space.dimension,
                     "basis": space.to_json()["basis"]})
    return {"solutions": rows}


def _h_as_kernel(s: Session, cmd: dict) -> dict:
    q = int(cmd["q"])
    return {"q": q, "dim": artin_schreier_kernel(q, s.budgets.guard)}


def _h_verify_suite(s: Session, cmd: dict) -> dict:
    from .verify import run_verify
    results = run_verify(seed=int(cmd.get("seed", 0)),
                         quick=bool(cmd.get("quick", False)))
    return {"checks": results,
            "passed": sum(1 for r in results if r["ok"]),
            "failed": sum(1 for r in results if not r["ok"])}


_HANDLERS = {
    "gb": _h_gb,
    "validate": _h_validate,
    "nilpotent": _h_nilpotent,
    "crystal-zero": _h_crystal_zero,
    "supported-on": _h_supported_on,
    "twist-to-cartier": _h_twist_to_cartier,
    "twist-to-gamma": _h_twist_to_gamma,
    "pullback": _h_pullback,
    "dualizing": _h_dualizing,
    "transition": _h_transition,
    "check-2-14": _h_check_2_14,
    "gen-dim": _h_gen_dim,
    "solutions": _h_solutions,
    "as-kernel": _h_as_kernel,
    "verify-suite": _h_verify_suite,
}


def run_session(data: dict, budgets: Optional[Budgets] = None) -> list[dict]:
    """Execute a parsed session; returns one report record per command.  The
    records are deterministic for a fixed session (timings are not part of
    them)."""
    session = Session(data, budgets)
    reports = []
    for i, cmd in enumerate(session.commands):
        record: dict = {"index": i, "op": cmd["op"]}
        try:
            record["result"] = session.run_command(cmd)
            record["status"] = "ok"
        except Exception as exc:  # structured errors, never a bare crash
            record["status"] = "error"
            record["error"] = str(exc)
        reports.append(record)
    return reports


def load_session_file(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SessionError(f"invalid JSON at line {exc.lineno} column "
                               f"{exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise SessionError("session file must hold a JSON object")
    return data
