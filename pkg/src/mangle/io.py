"""JSON input and output.

Scalars are written as strings ``"p/q"`` or ``"p/q+r/s i"``; plain JSON
integers are accepted on input, floats never are.  Index sets are 1-based in
files and 0-based in memory.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

from .complexes import SimplicialComplex
from .errors import InputError
from .exact import GaussianRational, format_gaussian
from .fans import FanData
from .polytopes import Presentation
from .quadrics import REALMS, QuadricSystem

_RATIONAL = re.compile(r"[+-]?\d+(?:/\d+)?")

KINDS = {
    "presentation": ({"A", "b"}, set()),
    "quadrics": ({"Gamma", "delta"}, {"realm"}),
    "fan": ({"m", "faces", "vectors"}, {"psi"}),
    "complex": ({"m", "faces"}, set()),
}
SHARED_OPTIONAL = {"name", "meta"}


def parse_rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool):
        raise InputError(f"{where}: booleans are not numbers")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise InputError(f"{where}: floats are not accepted ({value!r}); write \"p/q\"")
    if isinstance(value, str):
        text = value.strip()
        if _RATIONAL.fullmatch(text):
            if text.split("/")[-1] == "0" and "/" in text:
                raise InputError(f"{where}: zero denominator in {value!r}")
            return Fraction(text)
        raise InputError(f"{where}: {value!r} is not a rational of the form \"p/q\"")
    raise InputError(f"{where}: expected a rational, got {type(value).__name__}")


def parse_gaussian(value: Any, where: str) -> GaussianRational:
    """Parse ``"p/q"``, ``"p/q+r/s i"``, ``"r/s i"``, ``"i"`` or ``"-i"``."""
    if not isinstance(value, str) or not value.strip().endswith("i"):
        return GaussianRational(parse_rational(value, where))
    text = value.strip()[:-1].strip()
    split = max(text.rfind("+"), text.rfind("-"))
    if split > 0:
        real_text, imag_text = text[:split], text[split:]
    else:
        real_text, imag_text = "", text
    sign = -1 if imag_text.startswith("-") else 1
    coeff_text = imag_text.lstrip("+-").strip()
    try:
        coeff = parse_rational(coeff_text, where) if coeff_text else Fraction(1)
        real = parse_rational(real_text.strip(), where) if real_text.strip() else Fraction(0)
    except InputError:
        raise InputError(f"{where}: {value!r} is not a Gaussian rational of the form \"p/q+r/s i\"") from None
    return GaussianRational(real, sign * coeff)


def _list(value: Any, where: str) -> list:
    if not isinstance(value, list):
        raise InputError(f"{where}: expected a list")
    return value


def _matrix(value: Any, where: str, gaussian: bool = False) -> list[list]:
    rows = _list(value, where)
    parse = parse_gaussian if gaussian else parse_rational
    out = [[parse(x, f"{where}[{i}][{j}]") for j, x in enumerate(_list(r, f"{where}[{i}]"))] for i, r in enumerate(rows)]
    if len({len(r) for r in out}) > 1:
        raise InputError(f"{where}: rows have different lengths")
    return out


def _vector(value: Any, where: str) -> list[Fraction]:
    return [parse_rational(x, f"{where}[{i}]") for i, x in enumerate(_list(value, where))]


@dataclass
class Document:
    """A parsed input file: the typed value plus optional extras."""

    value: Any
    kind: str
    psi: list[list[GaussianRational]] | None = None
    notices: list[str] = field(default_factory=list)


def _complex(data: dict, notices: list[str]) -> SimplicialComplex:
    m = data["m"]
    if not isinstance(m, int) or isinstance(m, bool) or m < 0:
        raise InputError("m: expected a nonnegative integer")
    faces = []
    for i, face in enumerate(_list(data["faces"], "faces")):
        idx = []
        for j, v in enumerate(_list(face, f"faces[{i}]")):
            if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= m:
                raise InputError(f"faces[{i}][{j}]: vertex {v!r} is not in 1..{m}")
            idx.append(v - 1)
        faces.append(idx)
    k = SimplicialComplex.from_faces(m, faces)
    given = {frozenset(f) for f in faces}
    if any(f not in given for f in k.faces if f):
        notices.append("faces were closed under taking subsets")
    return k


def detect_kind(data: dict) -> str:
    keys = set(data) - SHARED_OPTIONAL
    for kind, (required, optional) in KINDS.items():
        if required <= keys and keys <= required | optional:
            return kind
    raise InputError(f"unrecognised keys {sorted(keys)}; expected one of " + "; ".join(
        f"{kind}: {sorted(req)}" for kind, (req, _) in KINDS.items()
    ))


def parse_document(data: Any) -> Document:
    if not isinstance(data, dict):
        raise InputError("top level must be a JSON object")
    kind = detect_kind(data)
    if kind == "presentation":
        a = _matrix(data["A"], "A")
        b = _vector(data["b"], "b")
        if any(len(r) != len(b) for r in a):
            raise InputError("A must have one column per entry of b")
        return Document(Presentation(a, b, len(a)), kind)
    if kind == "quadrics":
        gamma = _matrix(data["Gamma"], "Gamma")
        delta = _vector(data["delta"], "delta")
        realm = data.get("realm", "hermitian")
        if realm not in REALMS:
            raise InputError(f"realm: expected one of {list(REALMS)}")
        if len(gamma) != len(delta):
            raise InputError("Gamma must have one row per entry of delta")
        width = len(gamma[0]) if gamma else 0
        return Document(QuadricSystem(gamma, delta, width, realm), kind)
    notices: list[str] = []
    k = _complex(data, notices)
    if kind == "complex":
        return Document(k, kind, notices=notices)
    vectors = _matrix(data["vectors"], "vectors")
    if len(vectors) != k.m:
        raise InputError(f"vectors: expected {k.m} vectors, got {len(vectors)}")
    n = len(vectors[0]) if vectors else 0
    psi = _matrix(data["psi"], "psi", gaussian=True) if "psi" in data else None
    return Document(FanData(k, vectors, n), kind, psi, notices)


def parse_value(data: Any) -> Any:
    """Turn decoded JSON into a ``Presentation``, ``QuadricSystem``, ``FanData`` or ``SimplicialComplex``."""
    return parse_document(data).value


def decode(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def read_document(path: str | Path) -> Document:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_document(decode(text, str(path)))


def load_json(text: str, source: str = "<input>") -> Any:
    return parse_value(decode(text, source))


def _reject_float(text: str) -> None:
    raise InputError(f"floats are not accepted ({text}); write \"p/q\"")


def parse_input(path: str | Path) -> Any:
    return read_document(path).value


# ---------------------------------------------------------------------------
# Output


def scalar(x: Any) -> str:
    if isinstance(x, GaussianRational):
        return format_gaussian(x)
    return str(Fraction(x))


def matrix_json(rows: Sequence[Sequence[Any]]) -> list[list[str]]:
    return [[scalar(x) for x in r] for r in rows]


def vector_json(v: Sequence[Any]) -> list[str]:
    return [scalar(x) for x in v]


def index_set(s: Any) -> list[int]:
    return sorted(i + 1 for i in s)


def presentation_json(p: Presentation) -> dict:
    return {"A": matrix_json(p.A), "b": vector_json(p.b)}


def quadrics_json(q: QuadricSystem) -> dict:
    return {"Gamma": matrix_json(q.Gamma), "delta": vector_json(q.delta), "realm": q.realm}


def complex_json(k: SimplicialComplex) -> dict:
    faces = sorted((index_set(f) for f in k.maximal_faces() if f), key=lambda f: (len(f), f))
    return {"m": k.m, "faces": faces}


def fan_json(fan: FanData) -> dict:
    return {**complex_json(fan.complex), "vectors": matrix_json(fan.vectors)}


def _inline(match: re.Match) -> str:
    text = re.sub(r"\s*\n\s*", " ", match.group(0))
    return re.sub(r"^\[\s+", "[", re.sub(r"\s+\]$", "]", text))


def dumps(data: Any) -> str:
    """Indented JSON with innermost arrays kept on one line."""
    return re.sub(r"\[[^\[\]{}]*\]", _inline, json.dumps(data, indent=2, ensure_ascii=False))


def bundled_examples() -> list[str]:
    root = resources.files("mangle") / "examples"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("mangle") / "examples" / f"{name}.json"))


def bundled_example(name: str) -> Any:
    path = bundled_path(name)
    if not path.exists():
        raise InputError(f"no bundled example named {name!r}")
    return parse_input(path)


def bundled_meta(name: str) -> dict:
    data = json.loads(bundled_path(name).read_text())
    return data.get("meta", {})
