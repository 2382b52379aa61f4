"""Command line front end.

Every subcommand prints one JSON document (sorted keys) on stdout.  Vertices
are 1-based on the command line; class ids look like ``1,1:0`` (dimension
vector, then the index among classes of that dimension vector, as listed by
``classify``).  The exit code is 0 when every requested check passes, 1 when
a check fails and 2 on bad input or an exceeded cap.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .cartan import CartanDatum, preset as cartan_preset
from .coeffring import RONE
from .fquot import FAlgebra, WeightCapExceeded, parse_word
from .linalg_fq import is_prime as _is_prime
from .quiverrep import CapExceeded, ValuedQuiver, category

__all__ = ["Config", "PRESETS", "load_config", "main", "run"]


# presets: a quiver description and/or a Cartan preset name
PRESETS = {
    "A2": {"vertices": 2, "edges": [[1, 2, 1]], "eps": [1, 1]},
    "A2-rev": {"vertices": 2, "edges": [[2, 1, 1]], "eps": [1, 1]},
    "A3": {"vertices": 3, "edges": [[1, 2, 1], [2, 3, 1]], "eps": [1, 1, 1]},
    "A1xA1": {"cartan": "A1xA1"},
    "B2": {"vertices": 2, "edges": [[1, 2, 1]], "eps": [1, 2], "cartan": "B2"},
    "G2": {"vertices": 2, "edges": [[1, 2, 1]], "eps": [1, 3], "cartan": "G2"},
}


class CliError(Exception):
    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind
        self.message = message


@dataclass
class Config:
    quiver: ValuedQuiver | None
    cartan: CartanDatum
    fields: list = field(default_factory=lambda: [2])
    cap: int | None = None
    weight_cap: int = 12
    suites: dict = field(default_factory=dict)
    name: str = ""

    @property
    def q(self) -> int:
        return self.fields[0]

    def category(self):
        if self.quiver is None:
            raise CliError("config", f"{self.name or 'config'} has no quiver; only U-dot commands apply")
        return category(self.quiver, self.q, self.cap)


def parse_config(raw: dict, name: str = "") -> Config:
    if not isinstance(raw, dict):
        raise CliError("config", "config must be a JSON object")
    quiver = None
    if "vertices" in raw:
        n = raw["vertices"]
        edges = raw.get("edges", [])
        try:
            arrows = [(int(e[0]) - 1, int(e[1]) - 1, int(e[2]) if len(e) > 2 else 1) for e in edges]
            quiver = ValuedQuiver(n, arrows, raw.get("eps"), name=raw.get("name", name))
        except (TypeError, IndexError) as exc:
            raise CliError("config", f"bad edge list: {exc}") from None
        except ValueError as exc:
            raise CliError("config", str(exc)) from None
    cart = raw.get("cartan")
    try:
        if isinstance(cart, str):
            cd = cartan_preset(cart)
        elif isinstance(cart, dict):
            cd = CartanDatum(cart["matrix"], cart["eps"], cart.get("d_values"), name=cart.get("name", ""))
        elif quiver is not None:
            cd = quiver.cartan()
        else:
            raise CliError("config", "config needs a quiver or a Cartan datum")
    except (KeyError, ValueError) as exc:
        raise CliError("config", str(exc)) from None
    if quiver is not None and quiver.cartan().matrix != cd.matrix:
        raise CliError("config", "Cartan datum does not match the quiver")
    fields = raw.get("fields", [2])
    if not fields or not all(isinstance(p, int) and _is_prime(p) for p in fields):
        raise CliError("config", "fields must be a nonempty list of primes")
    cap = raw.get("cap")
    if cap is not None and (not isinstance(cap, int) or cap < 0):
        raise CliError("config", "cap must be a nonnegative integer")
    wcap = raw.get("weight_cap", 12)
    if not isinstance(wcap, int) or wcap < 0:
        raise CliError("config", "weight_cap must be a nonnegative integer")
    return Config(quiver, cd, list(fields), cap, wcap, dict(raw.get("suites", {})), name)


def load_config(path: str | None = None, preset: str | None = None) -> Config:
    if path:
        try:
            with open(path) as fh:
                raw = json.load(fh)
        except OSError as exc:
            raise CliError("config", f"cannot read {path}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise CliError("config", f"{path} is not valid JSON: {exc}") from None
        return parse_config(raw, path)
    name = preset or "A2"
    key = name.replace("×", "x")
    if key not in PRESETS:
        raise CliError("config", f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    return parse_config(PRESETS[key], key)


# argument helpers ----------------------------------------------------------------
def _ints(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise CliError("input", f"expected comma separated integers, got {text!r}") from None


def _vertex(cfg: Config, k: int) -> int:
    if not 1 <= k <= cfg.cartan.n:
        raise CliError("input", f"vertex {k} out of range 1..{cfg.cartan.n}")
    return k - 1


def _cls(cat, cid: str):
    try:
        return cat.by_id(cid)
    except CapExceeded:
        raise
    except (ValueError, IndexError):
        raise CliError("input", f"unknown class id {cid!r}") from None


def _zeta(cfg: Config, text: str | None) -> tuple:
    vals = _ints(text) if text else (0,) * cfg.cartan.n
    try:
        return cfg.cartan.weight(vals)
    except ValueError as exc:
        raise CliError("input", str(exc)) from None


def _hdot(cfg: Config):
    from .hdot import hdot_algebra
    return hdot_algebra(cfg.category())


# commands --------------------------------------------------------------------------
def cmd_classify(cfg, args):
    cat = cfg.category()
    return {"field": cat.q, "quiver": cat.quiver.to_json(),
            "classes": [c.to_json() for c in cat.classify(args.max_dim)]}


def cmd_hall_mul(cfg, args):
    from .hallalg import HallAlgebra
    cat = cfg.category()
    H = HallAlgebra(cat)
    x = H.mul(H.u(_cls(cat, args.a)), H.u(_cls(cat, args.b)))
    return {"product": x.to_json()}


def cmd_hall_number(cfg, args):
    cat = cfg.category()
    L, M, N = (_cls(cat, c) for c in (args.L, args.M, args.N))
    return {"value": cat.hall_number(L, M, N)}


def cmd_euler(cfg, args):
    a, b = _ints(args.a), _ints(args.b)
    n = cfg.cartan.n
    if len(a) != n or len(b) != n:
        raise CliError("input", f"dimension vectors need {n} entries")
    if cfg.quiver is None:
        raise CliError("config", "the Euler form needs a quiver")
    return {"value": cfg.quiver.euler(a, b)}


def cmd_aut(cfg, args):
    lam = _cls(cfg.category(), args.cls)
    return {"id": lam.id, "value": lam.aut, "endo_dim": lam.endo_dim}


def cmd_reflect(cfg, args):
    from .bgp import reflect_minus_class, reflect_plus_class
    cat = cfg.category()
    i = _vertex(cfg, args.vertex)
    lam = _cls(cat, args.cls)
    minus = args.minus
    if minus and not cat.quiver.is_source(i):
        raise CliError("input", f"vertex {args.vertex} is not a source")
    if not minus and not cat.quiver.is_sink(i):
        raise CliError("input", f"vertex {args.vertex} is not a sink")
    img = reflect_minus_class(cat, i, lam) if minus else reflect_plus_class(cat, i, lam)
    return {"image": img.to_json(), "quiver": cat.quiver.reoriented(i).to_json()}


def cmd_f_normal(cfg, args):
    f = FAlgebra(cfg.cartan, cfg.weight_cap)
    x = f.normal_form({parse_word(args.word): RONE})
    return {"normal_form": f.to_json(x)}


def _udot_term(U, text: str, zeta):
    """``E1``, ``F2``, ``E1^(2)`` style generator at right idempotent ``zeta``."""
    text = text.strip()
    t = 1
    if "^" in text:
        text, power = text.split("^", 1)
        t = int(power.strip("()"))
    kind, i = text[0].upper(), int(text[1:]) - 1
    if kind not in "EF" or not 0 <= i < U.n:
        raise CliError("input", f"unknown generator {text!r}")
    return U.E(i, zeta, t) if kind == "E" else U.F(i, zeta, t)


def cmd_udot_mul(cfg, args):
    from .udot import UdotAlgebra
    U = UdotAlgebra(cfg.cartan, cfg.weight_cap)
    zeta = _zeta(cfg, args.zeta)
    y = _udot_term(U, args.b, zeta)
    (key,) = y.terms
    x = _udot_term(U, args.a, U.left_weight(key))
    return {"product": (x * y).to_json()}


def cmd_apply_T(cfg, args):
    from .udot import UdotAlgebra
    U = UdotAlgebra(cfg.cartan, cfg.weight_cap)
    i = _vertex(cfg, args.vertex)
    x = _udot_term(U, args.gen, _zeta(cfg, args.zeta))
    return {"image": U.lusztig_T(i, x).to_json()}


def _hdot_input(cfg, A, args):
    zeta = _zeta(cfg, args.zeta)
    if args.gen:
        return A.generator(args.gen, zeta)
    cat = A.cat
    plus = _cls(cat, args.plus) if args.plus else cat.zero()
    minus = _cls(cat, args.minus) if args.minus else cat.zero()
    return A.monomial(plus, zeta, minus)


def cmd_apply_bgp_T(cfg, args):
    from .hdot import bgp_T, bgp_T_prime
    A = _hdot(cfg)
    i = _vertex(cfg, args.vertex)
    x = _hdot_input(cfg, A, args)
    Q = A.quiver
    if args.source:
        if not Q.is_source(i):
            raise CliError("input", f"vertex {args.vertex} is not a source")
        y = bgp_T_prime(i, x)
    else:
        if not Q.is_sink(i):
            raise CliError("input", f"vertex {args.vertex} is not a sink")
        y = bgp_T(i, x)
    return {"input": x.to_json(), "image": y.to_json(), "quiver": Q.reoriented(i).to_json()}


def cmd_straighten(cfg, args):
    A = _hdot(cfg)
    cat = A.cat
    x = A.straighten(_cls(cat, args.minus), _zeta(cfg, args.kappa), _cls(cat, args.plus))
    return {"value": x.to_json()}


def cmd_braid_check(cfg, args):
    from .udot import UdotAlgebra
    U = UdotAlgebra(cfg.cartan, cfg.weight_cap)
    i, j = _vertex(cfg, args.i), _vertex(cfg, args.j)
    if i == j:
        raise CliError("input", "braid check needs two distinct vertices")
    x = _udot_term(U, args.gen, _zeta(cfg, args.zeta))
    r = U.braid_check(i, j, x)
    out = {"applicable": r["applicable"], "equal": r["equal"], "m": r["m"]}
    if r["applicable"]:
        out["lhs"] = r["lhs"].to_json()
        out["rhs"] = r["rhs"].to_json()
    return out


def cmd_coincidence_check(cfg, args):
    from .hdot import coincidence_check
    A = _hdot(cfg)
    i = _vertex(cfg, args.vertex)
    if not A.quiver.is_sink(i):
        raise CliError("input", f"vertex {args.vertex} is not a sink")
    r = coincidence_check(A, i, args.gen, _zeta(cfg, args.zeta))
    return {"lhs": r["lhs"].to_json(), "rhs": r["rhs"].to_json(), "equal": r["equal"]}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


def cmd_verify(cfg, args):
    from .suites import LIMITS, SUITES, run_suite
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if args.suite != "all" and args.suite not in SUITES:
        raise CliError("input", f"unknown suite {args.suite!r}; choose from {sorted(SUITES)} or all")
    g2 = bool(args.enable_g2 or cfg.suites.get("enable_g2_braid"))
    reports = []
    for name in names:
        kw = {"include_g2": True} if name == "braid" and g2 else {}
        r = run_suite(name, **kw)
        r["within_limit"] = r["seconds"] < LIMITS[r["id"]] * (6 if kw else 1)
        reports.append(_jsonable(r))
    # timings are kept out of the default output so repeated runs are byte-identical
    if not args.timings:
        for r in reports:
            r.pop("seconds", None)
    return {"reports": reports, "passed": all(r["passed"] for r in reports)}


COMMANDS = {
    "classify": cmd_classify,
    "hall-mul": cmd_hall_mul,
    "hall-number": cmd_hall_number,
    "euler": cmd_euler,
    "aut": cmd_aut,
    "reflect": cmd_reflect,
    "f-normal": cmd_f_normal,
    "udot-mul": cmd_udot_mul,
    "apply-T": cmd_apply_T,
    "apply-bgp-T": cmd_apply_bgp_T,
    "straighten": cmd_straighten,
    "braid-check": cmd_braid_check,
    "coincidence-check": cmd_coincidence_check,
    "verify": cmd_verify,
}


def _common(suppress: bool) -> argparse.ArgumentParser:
    # the subcommand copy must not overwrite values given before the subcommand
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file", **kw)
    common.add_argument("--preset", help=f"built-in config: {', '.join(PRESETS)}", **kw)
    common.add_argument("--field", type=int, help="prime field size (overrides the config)", **kw)
    common.add_argument("--cap", type=int, help="total dimension cap for classification", **kw)
    common.add_argument("--json", action="store_true", help="compact single-line output", **kw)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common(True)
    p = argparse.ArgumentParser(prog="hallquant", parents=[_common(False)],
                                description="Hall algebras, reflection functors and Lusztig symmetries.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    s = add("classify", "list isomorphism classes")
    s.add_argument("--max-dim", type=int, default=None)
    s = add("hall-mul", "product u_a * u_b in the twisted Hall algebra")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s = add("hall-number", "g^L_{MN}: submodules of L iso to N with quotient M")
    s.add_argument("--L", required=True)
    s.add_argument("--M", required=True)
    s.add_argument("--N", required=True)
    s = add("euler", "Euler form of two dimension vectors")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s = add("aut", "automorphism group order of a class")
    s.add_argument("--class", dest="cls", required=True)
    s = add("reflect", "reflection functor on a class")
    s.add_argument("--vertex", type=int, required=True)
    s.add_argument("--class", dest="cls", required=True)
    s.add_argument("--minus", action="store_true", help="use the source functor")
    s = add("f-normal", "normal form of a word in f")
    s.add_argument("--word", required=True, help="e.g. '1 2 1'")
    s = add("udot-mul", "product a * b of two U-dot generators")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--zeta", help="right idempotent of b")
    s = add("apply-T", "Lusztig symmetry T_i on a U-dot generator")
    s.add_argument("--vertex", type=int, required=True)
    s.add_argument("--gen", required=True)
    s.add_argument("--zeta")
    for name, help_ in (("apply-bgp-T", "reflection symmetry on an H-dot monomial"),):
        s = add(name, help_)
        s.add_argument("--vertex", type=int, required=True)
        s.add_argument("--gen")
        s.add_argument("--plus")
        s.add_argument("--minus")
        s.add_argument("--zeta")
        s.add_argument("--source", action="store_true", help="inverse symmetry at a source")
    s = add("straighten", "<minus>^- 1_kappa <plus>^+ in normal form")
    s.add_argument("--minus", required=True)
    s.add_argument("--plus", required=True)
    s.add_argument("--kappa")
    s = add("braid-check", "braid relation of Lusztig symmetries on a generator")
    s.add_argument("--gen", required=True)
    s.add_argument("--i", type=int, default=1)
    s.add_argument("--j", type=int, default=2)
    s.add_argument("--zeta")
    s = add("coincidence-check", "reflection symmetry against T_i through the composition algebra")
    s.add_argument("--vertex", type=int, required=True)
    s.add_argument("--gen", required=True)
    s.add_argument("--zeta")
    s = add("verify", "run acceptance suites")
    s.add_argument("--suite", default="all")
    s.add_argument("--enable-g2", action="store_true")
    s.add_argument("--timings", action="store_true")
    return p


def _passed(out: dict) -> bool:
    for key in ("equal", "passed"):
        if key in out and out[key] is not None:
            return bool(out[key])
    return True


def run(argv=None) -> tuple:
    """Parse, execute and return ``(exit code, JSON text)``."""
    args = build_parser().parse_args(argv)
    compact = args.json
    try:
        cfg = load_config(args.config, args.preset)
        if args.field is not None:
            if not _is_prime(args.field):
                raise CliError("input", f"field size {args.field} is not prime")
            cfg.fields = [args.field]
        if args.cap is not None:
            cfg.cap = args.cap
        out = COMMANDS[args.command](cfg, args)
        code = 0 if _passed(out) else 1
    except CliError as exc:
        out, code = {"error": {"type": exc.kind, "message": exc.message}}, 2
    except (CapExceeded, WeightCapExceeded) as exc:
        out, code = {"error": {"type": "cap", "message": str(exc)}}, 2
    except (ValueError, KeyError) as exc:
        out, code = {"error": {"type": "input", "message": str(exc).strip("'\"")}}, 2
    text = json.dumps(out, sort_keys=True, separators=(",", ":") if compact else None,
                      indent=None if compact else 2)
    return code, text


def main(argv=None) -> int:
    code, text = run(argv)
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
