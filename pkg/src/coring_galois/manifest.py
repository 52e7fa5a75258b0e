"""JSON manifests: named definition blocks plus an ordered task list.

Scalars are integers or "num/den" strings.  Structure constants are nested
arrays: an algebra's ``mult[i][j]`` lists the coordinates of b_i b_j, and
matrices are lists of rows.  See docs/manifest.md for the full schema.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .algcore import AlgebraError, Bimodule, ground
from .coring import (
    Comodule,
    CoringError,
    cofree_comodule,
    grouplike_comodule,
    regular_comodule,
    trivial_coring,
)
from .exactla import GF, QQ, Field, Mat
from .examples import algebras as alg_ex
from .examples import extensions as ext_ex
from .examples import hopf as hopf_ex
from .examples import matrix as mat_ex
from .examples import quasi as quasi_ex
from .galois import (
    ContextError,
    comatrix_context,
    context_from_comodule,
    dual_adjoint_pair,
    trivial_context,
)

SECTIONS = ("algebras", "bialgebras", "bimodules", "extensions", "corings", "comodules", "contexts", "quasi", "quasi_data")

# (section, key) pairs whose string values name a definition in another section
REFERENCES = {
    "algebra": "algebras",
    "left": "algebras",
    "right": "algebras",
    "A": "algebras",
    "B": "algebras",
    "bialgebra": "bialgebras",
    "bimodule": "bimodules",
    "carrier": "bimodules",
    "extension": "extensions",
    "coring": "corings",
    "comodule": "comodules",
    "quasi": "quasi",
    "data": "quasi_data",
}

COMMANDS = {
    "check-algebra": "algebras",
    "check-coring": "corings",
    "check-comodule": "comodules",
    "comatrix": "contexts",
    "can": "contexts",
    "galois-report": "contexts",
    "coseparable": "corings",
    "descent-report": "extensions",
    "quasi-check": ("quasi", "quasi_data"),
    "cotensor-dim": "comodules",
}


@dataclass
class LocatedError:
    path: tuple
    message: str
    line: int = 0
    column: int = 0
    name: str = ""

    def __str__(self) -> str:
        where = "/".join(str(p) for p in self.path) or "<root>"
        pos = f"{self.line}:{self.column}" if self.line else "?"
        return f"{pos} {where}: {self.message}"

    def to_record(self) -> dict:
        out = {"path": list(self.path), "line": self.line, "column": self.column, "message": self.message}
        if self.name:
            out["name"] = self.name
        return out


class ManifestError(ValueError):
    def __init__(self, errors: list[LocatedError]):
        self.errors = errors
        super().__init__("; ".join(str(e) for e in errors))


def _locate(text: str, path: tuple) -> tuple[int, int]:
    """Line and column of the last key of ``path`` found by walking keys in order."""
    pos, found = 0, None
    for key in path:
        if isinstance(key, int):
            continue
        idx = text.find(json.dumps(str(key)), pos)
        if idx < 0:
            break
        pos, found = idx, idx
    if found is None:
        return 0, 0
    line = text.count("\n", 0, found) + 1
    col = found - (text.rfind("\n", 0, found) + 1) + 1
    return line, col


def parse_field(spec) -> Field:
    """"Q", "Fp:P", {"kind": "Q"} or {"kind": "Fp", "p": P}."""
    if isinstance(spec, dict):
        kind = spec.get("kind")
        if kind == "Q":
            return QQ
        if kind == "Fp":
            return GF(int(spec["p"]))
        raise ValueError(f"unknown field kind {kind!r}")
    if isinstance(spec, str):
        if spec == "Q":
            return QQ
        if spec.startswith("Fp:"):
            return GF(int(spec[3:]))
    raise ValueError(f"unknown field {spec!r}")


@dataclass
class Manifest:
    text: str
    data: dict
    field: Field
    source: str = ""
    _built: dict = field(default_factory=dict, repr=False)
    _building: set = field(default_factory=set, repr=False)

    @property
    def tasks(self) -> list[dict]:
        return list(self.data.get("tasks", []))

    def names(self, section: str) -> list[str]:
        return list(self.data.get(section, {}))

    def error(self, path: tuple, message: str, name: str = "") -> ManifestError:
        line, col = _locate(self.text, path)
        return ManifestError([LocatedError(tuple(path), message, line, col, name)])

    def get(self, section: str, name: str):
        key = (section, name)
        if key in self._built:
            return self._built[key]
        block = self.data.get(section, {}).get(name)
        if block is None:
            raise self.error((section,), f"undefined {section.removesuffix('s')} {name!r}", name)
        if key in self._building:
            raise self.error((section, name), "cyclic reference", name)
        self._building.add(key)
        try:
            obj = _BUILDERS[section](self, name, block)
        except ManifestError:
            raise
        except (AlgebraError, CoringError, ContextError, quasi_ex.QuasiError, ValueError, KeyError, TypeError, IndexError) as exc:
            raise self.error((section, name), f"{type(exc).__name__}: {exc}", name) from None
        finally:
            self._building.discard(key)
        self._built[key] = obj
        return obj

    # value helpers
    def mat(self, rows, nrows: int, ncols: int, path: tuple) -> Mat:
        if not isinstance(rows, list) or len(rows) != nrows or any(not isinstance(r, list) or len(r) != ncols for r in rows):
            raise self.error(path, f"expected a {nrows}x{ncols} matrix")
        return Mat.from_rows(self.field, rows, ncols)

    def vec(self, values, n: int, path: tuple) -> Mat:
        if not isinstance(values, list) or len(values) != n:
            raise self.error(path, f"expected {n} coordinates")
        return Mat.vector(self.field, values)

    def ref(self, block: dict, key: str, path: tuple):
        if key not in block:
            raise self.error(path, f"missing key {key!r}")
        return self.get(REFERENCES[key], block[key])


def _check_refs(m: Manifest) -> list[LocatedError]:
    errors = []
    for section in SECTIONS:
        blocks = m.data.get(section, {})
        if not isinstance(blocks, dict):
            errors.append(LocatedError((section,), "section must be an object", *_locate(m.text, (section,))))
            continue
        for name, block in blocks.items():
            if not isinstance(block, dict):
                errors.append(LocatedError((section, name), "definition must be an object", *_locate(m.text, (section, name))))
                continue
            for key, value in block.items():
                target = REFERENCES.get(key)
                if target and isinstance(value, str) and value not in m.data.get(target, {}):
                    path = (section, name, key)
                    errors.append(LocatedError(path, f"unresolved reference to {target} {value!r}", *_locate(m.text, path), name=value))
    for i, task in enumerate(m.data.get("tasks", [])):
        path = ("tasks", i)
        if not isinstance(task, dict) or "command" not in task:
            errors.append(LocatedError(path, "task needs a command", *_locate(m.text, ("tasks",))))
            continue
        cmd = task["command"]
        if cmd not in COMMANDS:
            errors.append(LocatedError(path, f"unknown command {cmd!r}", *_locate(m.text, ("tasks", "command")), name=cmd))
            continue
        target = task.get("target")
        sections = COMMANDS[cmd] if isinstance(COMMANDS[cmd], tuple) else (COMMANDS[cmd],)
        if not any(target in m.data.get(s, {}) for s in sections):
            errors.append(LocatedError(path, f"unresolved task target {target!r} for {cmd}", *_locate(m.text, ("tasks", "target")), name=str(target)))
    return errors


def parse_manifest_text(text: str, field_override: Field | None = None, source: str = "") -> Manifest:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifestError([LocatedError((), f"syntax error: {exc.msg}", exc.lineno, exc.colno)]) from None
    if not isinstance(data, dict):
        raise ManifestError([LocatedError((), "manifest must be a JSON object", 1, 1)])
    try:
        fld = field_override or parse_field(data.get("field", "Q"))
    except (ValueError, KeyError) as exc:
        raise ManifestError([LocatedError(("field",), str(exc), *_locate(text, ("field",)))]) from None
    m = Manifest(text, data, fld, source)
    errors = _check_refs(m)
    if errors:
        raise ManifestError(errors)
    return m


def parse_manifest(path: str, field_override: Field | None = None) -> Manifest:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_manifest_text(text, field_override, source=path)


def build_all(m: Manifest) -> None:
    """Build every definition, raising the first located error (dimension checks happen here)."""
    for section in SECTIONS:
        for name in m.names(section):
            m.get(section, name)


# builders ------------------------------------------------------------------------

def _algebra(m: Manifest, name: str, b: dict):
    f, kind = m.field, b.get("kind", "explicit")
    path = ("algebras", name)
    if kind == "explicit":
        unit = b.get("unit")
        if not isinstance(unit, list):
            raise m.error(path, "explicit algebra needs 'unit'")
        n = len(unit)
        table = b.get("mult")
        if not isinstance(table, list) or len(table) != n or any(not isinstance(r, list) or len(r) != n for r in table):
            raise m.error(path + ("mult",), f"mult must be {n}x{n} lists of {n} coordinates")
        for i, row in enumerate(table):
            for j, coords in enumerate(row):
                if not isinstance(coords, list) or len(coords) != n:
                    raise m.error(path + ("mult",), f"b{i}*b{j} needs {n} coordinates")
        from .algcore import Algebra

        return Algebra.from_table(f, table, unit, name=name)
    makers = {
        "ground": lambda: ground(f),
        "matrix": lambda: alg_ex.matrix_algebra(f, int(b["n"])),
        "upper-triangular": lambda: alg_ex.upper_triangular(f),
        "truncated-polynomial": lambda: alg_ex.truncated_polynomial(f, int(b["n"])),
        "quadratic": lambda: alg_ex.quadratic_extension(f, b["d"]),
        "cyclic-group": lambda: alg_ex.cyclic_group_algebra(f, int(b["n"])),
        "product": lambda: alg_ex.product_algebra(f, int(b["n"])),
    }
    if kind not in makers:
        raise m.error(path, f"unknown algebra kind {kind!r}")
    return makers[kind]()


def _bialgebra(m: Manifest, name: str, b: dict):
    path = ("bialgebras", name)
    kind = b.get("kind", "explicit")
    if kind == "cyclic-group":
        return hopf_ex.group_bialgebra(m.field, int(b["n"]))
    if kind == "trivial":
        return hopf_ex.trivial_bialgebra(m.field)
    if kind != "explicit":
        raise m.error(path, f"unknown bialgebra kind {kind!r}")
    H = m.ref(b, "algebra", path)
    n = H.dim
    comult = b.get("comult")
    if not isinstance(comult, list) or len(comult) != n:
        raise m.error(path + ("comult",), f"comult needs {n} coordinate lists")
    cols = [m.vec(c, n * n, path + ("comult",)) for c in comult]
    from .exactla import hstack

    counit = m.mat([b.get("counit")], 1, n, path + ("counit",))
    bi = hopf_ex.Bialgebra(H, hstack(m.field, cols, n * n), counit)
    return bi


def _bimodule(m: Manifest, name: str, b: dict):
    path = ("bimodules", name)
    kind = b.get("kind", "explicit")
    f = m.field
    if kind == "row":
        return alg_ex.row_module(f, int(b["n"]), m.ref(b, "algebra", path) if "algebra" in b else None)
    if kind == "column":
        return alg_ex.column_module(f, int(b["n"]), m.ref(b, "algebra", path) if "algebra" in b else None)
    if kind in ("regular", "right-regular", "left-regular"):
        A = m.ref(b, "algebra", path)
        return {"regular": A.regular, "right-regular": A.right_regular, "left-regular": A.left_regular}[kind]
    if kind == "right-ideal":
        A = m.ref(b, "algebra", path)
        return ext_ex.right_ideal_module(A, m.vec(b.get("generator"), A.dim, path + ("generator",)), name=name)
    if kind != "explicit":
        raise m.error(path, f"unknown bimodule kind {kind!r}")
    L, R = m.ref(b, "left", path), m.ref(b, "right", path)
    d = b.get("dim")
    if not isinstance(d, int) or d < 0:
        raise m.error(path + ("dim",), "dim must be a non-negative integer")
    la, ra = b.get("lact"), b.get("ract")
    if not isinstance(la, list) or len(la) != L.dim:
        raise m.error(path + ("lact",), f"lact needs {L.dim} matrices")
    if not isinstance(ra, list) or len(ra) != R.dim:
        raise m.error(path + ("ract",), f"ract needs {R.dim} matrices")
    lact = [m.mat(x, d, d, path + ("lact",)) for x in la]
    ract = [m.mat(x, d, d, path + ("ract",)) for x in ra]
    return Bimodule(L, R, d, lact, ract, name=name)


def _extension(m: Manifest, name: str, b: dict):
    path = ("extensions", name)
    kind = b.get("kind", "explicit")
    A = m.ref(b, "A", path)
    if kind == "scalar":
        return ext_ex.scalar_extension(A)
    if kind == "identity":
        return ext_ex.identity_extension(A)
    if kind != "explicit":
        raise m.error(path, f"unknown extension kind {kind!r}")
    B = m.ref(b, "B", path)
    return ext_ex.RingExtension(B, A, m.mat(b.get("iota"), A.dim, B.dim, path + ("iota",)), name=name)


def _hopf(m: Manifest, name: str, b: dict):
    path = ("corings", name)
    H = m.ref(b, "bialgebra", path)
    A = m.ref(b, "algebra", path)
    rho = m.mat(b.get("coaction"), A.dim * H.dim, A.dim, path + ("coaction",))
    pair = hopf_ex.hopf_comodule_algebra_coring(H, A, rho, name=name)
    # the context shares the coring object, so cache both
    m._built[("hopf", name)] = pair
    return pair


def _coring(m: Manifest, name: str, b: dict):
    path = ("corings", name)
    kind = b.get("kind")
    f = m.field
    if kind == "trivial":
        return trivial_coring(m.ref(b, "algebra", path))
    if kind == "sweedler":
        return ext_ex.sweedler_coring(m.ref(b, "extension", path))[0]
    if kind == "hopf":
        return _hopf(m, name, b)[0]
    if kind == "matrix-coalgebra":
        return mat_ex.matrix_coalgebra(f, int(b["n"]))
    if kind == "comatrix":
        return comatrix_context(dual_adjoint_pair(m.ref(b, "bimodule", path)), name=name).c
    if kind == "quasi-comatrix":
        data = m.get("quasi_data", b["data"])
        return quasi_ex.quasi_comatrix_coring(data).coring
    if kind == "explicit":
        from .algcore import tensor
        from .coring import Coring

        A = m.ref(b, "algebra", path)
        x = m.ref(b, "carrier", path)
        amb = tensor(x, x).ambient
        lift = m.mat(b.get("comult"), amb, x.dim, path + ("comult",))
        counit = m.mat(b.get("counit"), A.dim, x.dim, path + ("counit",))
        return Coring.from_lift(A, x, lift, counit, name=name)
    raise m.error(path, f"unknown coring kind {kind!r}")


def _comodule(m: Manifest, name: str, b: dict):
    path = ("comodules", name)
    kind = b.get("kind")
    C = m.ref(b, "coring", path)
    if kind == "regular":
        return regular_comodule(C)
    if kind == "grouplike":
        carrier = m.ref(b, "carrier", path) if "carrier" in b else None
        return grouplike_comodule(C, m.vec(b.get("element"), C.dim, path + ("element",)), carrier=carrier)
    if kind == "cofree":
        return cofree_comodule(m.ref(b, "bimodule", path), C)
    if kind == "vector":
        return mat_ex.vector_comodule(C, int(b["n"]))
    if kind == "trivial":
        from .algcore import runit_inv

        x = m.ref(b, "carrier", path)
        if not C.is_trivial():
            raise m.error(path, "kind 'trivial' needs a trivial coring")
        return Comodule(C, x, runit_inv(x), name=name)
    if kind == "explicit":
        from .algcore import tensor

        x = m.ref(b, "carrier", path)
        amb = tensor(x, C.carrier).ambient
        return Comodule.from_lift(C, x, m.mat(b.get("coaction"), amb, x.dim, path + ("coaction",)), name=name)
    raise m.error(path, f"unknown comodule kind {kind!r}")


def _context(m: Manifest, name: str, b: dict):
    path = ("contexts", name)
    kind = b.get("kind")
    if kind == "sweedler":
        return ext_ex.sweedler_context(m.ref(b, "extension", path))
    if kind == "hopf":
        cb = m.data.get("corings", {}).get(b.get("coring"))
        if not cb or cb.get("kind") != "hopf":
            raise m.error(path + ("coring",), "hopf context needs a coring of kind 'hopf'")
        m.get("corings", b["coring"])
        return m._built[("hopf", b["coring"])][1]
    if kind == "comodule":
        return context_from_comodule(m.ref(b, "comodule", path), name=name)
    if kind == "comatrix":
        return comatrix_context(dual_adjoint_pair(m.ref(b, "bimodule", path)), name=name)
    if kind == "trivial":
        return trivial_context(m.ref(b, "algebra", path))
    if kind == "row-vector":
        return mat_ex.row_vector_context(m.field, int(b.get("n", 2)))
    if kind == "non-generator":
        return mat_ex.non_generator_context(m.field)
    raise m.error(path, f"unknown context kind {kind!r}")


def _quasi(m: Manifest, name: str, b: dict):
    path = ("quasi", name)
    kind = b.get("kind", "group")
    f = m.field
    if kind == "sign-z2":
        return quasi_ex.z2_sign_cocycle(f)
    if kind == "trivial":
        return quasi_ex.trivial_quasi_bialgebra(f, int(b.get("n", 1)))
    if kind != "group":
        raise m.error(path, f"unknown quasi kind {kind!r}")
    n = int(b["n"])
    phi = b.get("phi")
    if not isinstance(phi, list) or len(phi) != n ** 3:
        raise m.error(path + ("phi",), f"phi needs {n ** 3} values")
    inv = b.get("phi_inv")
    if inv is not None and (not isinstance(inv, list) or len(inv) != n ** 3):
        raise m.error(path + ("phi_inv",), f"phi_inv needs {n ** 3} values")
    at = lambda table: (lambda a, c, d: table[(a * n + c) * n + d])
    return quasi_ex.group_quasi_bialgebra(f, n, at(phi), at(inv) if inv else None, name=name)


def _quasi_data(m: Manifest, name: str, b: dict):
    path = ("quasi_data", name)
    kind = b.get("kind")
    f = m.field
    if kind == "internal-end":
        H = m.ref(b, "quasi", path)
        B = quasi_ex.internal_end(H, [int(d) for d in b["degrees"]])
        n = len(b["degrees"])
        trace = b.get("trace", [1 if i == j else 0 for i in range(n) for j in range(n)])
        return quasi_ex.self_dual_data(H, B, trace, name=name)
    if kind == "trivial":
        return quasi_ex.trivial_quasi_example(f)
    if kind == "matrix":
        return quasi_ex.matrix_quasi_example(f, int(b.get("n", 2)))
    raise m.error(path, f"unknown quasi data kind {kind!r}")


_BUILDERS: dict[str, Any] = {
    "algebras": _algebra,
    "bialgebras": _bialgebra,
    "bimodules": _bimodule,
    "extensions": _extension,
    "corings": _coring,
    "comodules": _comodule,
    "contexts": _context,
    "quasi": _quasi,
    "quasi_data": _quasi_data,
}
