"""Session files: a TOML description of a chart, a cover, named objects
and a list of tasks.

Grammar (all polynomial literals use the infix syntax of the parser, e.g.
``x^2 - t``):

    [field]                  prime = 7        # or: rational = true

    [base]                   vars = ["t"]
                             relations = []   # optional

    [cover]                  kind = "monic"   # or "free"
      monic:                 var = "x", coeffs = ["0", "-t"]
      free:                  vars = [...], relations = [...],
                             basis = [...], [cover.images] s = "x^2" ...

    [objects.NAME]           kind = "divisor" | "module" | "higgs"
      divisor:               gens = [...], on = "cover"|"base",
                             negative = "f"            # optional
      module:                gens = [...], den = "f"   # optional
      higgs:                 matrix = [["0","1"],["t","0"]]

    [[tasks]]                op = "...", plus op-specific keys; optional
                             expect* keys turn a computation into a check.
"""

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .errors import ParseError
from .fields import GF, QQ
from .groebner import Ideal
from .polynomials import Ring
from .cover import CoverChart, FractionalIdeal
from .divisors import GeneralizedDivisor
from .spectral import HiggsChart, SpectralModule


KNOWN_OPS = ("norm-element", "norm-ideal", "pushforward", "pullback",
             "degree", "degree-at", "find-preimage", "spectral-to-higgs",
             "higgs-to-spectral", "verify-bnr", "sl-check", "sp-check",
             "gsp-translate", "formulas")


class Session:
    def __init__(self, name, field, base, cover, objects, tasks):
        self.name = name
        self.field = field
        self.base = base
        self.cover = cover
        self.objects = objects
        self.tasks = tasks

    def object_of_kind(self, name, kind):
        if name not in self.objects:
            raise ParseError(f"unknown object {name!r}")
        got_kind, value = self.objects[name]
        if got_kind != kind:
            raise ParseError(f"object {name!r} is a {got_kind}, expected {kind}")
        return value


def load_session(path):
    with open(path, "rb") as fh:
        try:
            data = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from None
    return build_session(data, name=str(path))


def build_session(data, name="<session>"):
    field = _build_field(data.get("field", {}))
    base = _build_base(field, data.get("base", {}))
    cover = _build_cover(base, data.get("cover"))
    objects = {}
    for obj_name, spec in data.get("objects", {}).items():
        objects[obj_name] = _build_object(base, cover, obj_name, spec)
    tasks = []
    for i, spec in enumerate(data.get("tasks", [])):
        op = spec.get("op")
        if op not in KNOWN_OPS:
            raise ParseError(f"task {i}: unknown op {op!r}")
        tasks.append(dict(spec))
    session = Session(name, field, base, cover, objects, tasks)
    _check_references(session)
    return session


def _build_field(spec):
    if spec.get("rational"):
        return QQ
    prime = spec.get("prime")
    if prime is None:
        raise ParseError("field: give either prime = p or rational = true")
    return GF(int(prime))


def _build_base(field, spec):
    names = spec.get("vars")
    if not names:
        raise ParseError("base: vars list is required")
    ring = Ring(field, [str(n) for n in names])
    relations = spec.get("relations", [])
    if relations:
        ring = ring.quotient([ring.parse(r) for r in relations])
    return ring


def _build_cover(base, spec):
    if spec is None:
        return None
    kind = spec.get("kind", "monic")
    if kind == "monic":
        var = spec.get("var")
        coeffs = spec.get("coeffs")
        if var is None or coeffs is None:
            raise ParseError("monic cover needs var and coeffs")
        return CoverChart.monic(base, str(var), [base.parse(c) for c in coeffs])
    if kind == "free":
        names = spec.get("vars")
        relations = spec.get("relations", [])
        basis = spec.get("basis")
        images = spec.get("images")
        if not (names and basis and images):
            raise ParseError("free cover needs vars, basis and images")
        ring = Ring(base.field, [str(n) for n in names])
        if relations:
            ring = ring.quotient([ring.parse(r) for r in relations])
        return CoverChart.free(base, ring,
                               [ring.parse(b) for b in basis],
                               {str(k): ring.parse(v)
                                for k, v in images.items()})
    raise ParseError(f"unknown cover kind {kind!r}")


def _build_object(base, cover, name, spec):
    kind = spec.get("kind")
    if kind == "divisor":
        on = spec.get("on", "cover")
        if on == "base":
            ring = base
        else:
            if cover is None:
                raise ParseError(f"object {name!r}: no cover declared")
            ring = cover.ring
        gens = [ring.parse(g) for g in spec.get("gens", [])]
        negative = spec.get("negative")
        divisor = GeneralizedDivisor(
            ring, gens, None if negative is None else ring.parse(negative))
        return ("divisor", (divisor, on))
    if kind == "module":
        if cover is None:
            raise ParseError(f"object {name!r}: no cover declared")
        ring = cover.ring
        gens = [ring.parse(g) for g in spec.get("gens", [])]
        den = spec.get("den")
        frac = FractionalIdeal(ring, gens,
                               None if den is None else ring.parse(den))
        return ("module", SpectralModule(cover, fractional=frac))
    if kind == "higgs":
        matrix = spec.get("matrix")
        if not matrix:
            raise ParseError(f"object {name!r}: higgs needs a matrix")
        rows = [[base.parse(entry) for entry in row] for row in matrix]
        return ("higgs", HiggsChart(base, rows))
    raise ParseError(f"object {name!r}: unknown kind {kind!r}")


_OP_REFS = {
    "norm-ideal": [("module", "module")],
    "pushforward": [("divisor", "divisor")],
    "pullback": [("divisor", "divisor")],
    "degree": [("divisor", "divisor")],
    "degree-at": [("divisor", "divisor")],
    "find-preimage": [("divisor", "divisor")],
    "spectral-to-higgs": [("module", "module")],
    "higgs-to-spectral": [("higgs", "higgs")],
    "verify-bnr": [("module", "module")],
    "sl-check": [("module", "module")],
    "sp-check": [("module", "module")],
    "gsp-translate": [("higgs", "higgs")],
}


def _check_references(session):
    for i, task in enumerate(session.tasks):
        for key, kind in _OP_REFS.get(task["op"], []):
            name = task.get(key)
            if name is None:
                raise ParseError(f"task {i} ({task['op']}): missing {key!r}")
            session.object_of_kind(name, kind)
        if task["op"] == "norm-element" and "element" not in task:
            raise ParseError(f"task {i}: norm-element needs element")
        if task["op"] == "degree-at" and "point" not in task:
            raise ParseError(f"task {i}: degree-at needs point")
        if task["op"] == "formulas":
            for key in ("r", "g", "ell"):
                if key not in task:
                    raise ParseError(f"task {i}: formulas needs {key}")
