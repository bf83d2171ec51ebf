"""JSON shapes for every value the CLI reads or writes.

Scalars travel as rational strings ("3/2"); blades by name
("e1we2").  Square operators carry the blade order they are written in.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

from .exterior import Multivector, TensorPoly, blade_name, blade_order, parse_blade
from .hopf import Endo, LinForm
from .pairing import VectorForm
from .qft import HamTerm, NormalForm
from .renorm import GeneralPairing, OrderingForm
from .scalars import Scalar, fmt_scalar, to_scalar


class ConfigError(ValueError):
    pass


def scalar_json(c: Scalar) -> str:
    return fmt_scalar(c)


def multivector_json(u: Multivector) -> dict:
    return {"dim": u.dim, "terms": [{"coeff": fmt_scalar(c), "blade": blade_name(m)} for m, c in u]}


def multivector_from_json(obj: dict) -> Multivector:
    dim = int(obj["dim"])
    acc = Multivector(dim)
    for t in obj["terms"]:
        s, m = parse_blade(t["blade"])
        acc = acc + Multivector(dim, {m: s * to_scalar(t["coeff"])})
    return acc


def tensor_json(t: TensorPoly) -> dict:
    return {"dim": t.dim, "rank": t.rank,
            "terms": [{"coeff": fmt_scalar(c), "blades": [blade_name(m) for m in key]} for key, c in t]}


def tensor_from_json(obj: dict) -> TensorPoly:
    dim, rank = int(obj["dim"]), int(obj["rank"])
    acc = TensorPoly(dim, rank)
    for t in obj["terms"]:
        sign, key = 1, []
        for name in t["blades"]:
            s, m = parse_blade(name)
            sign *= s
            key.append(m)
        acc = acc + TensorPoly(dim, rank, {tuple(key): sign * to_scalar(t["coeff"])})
    return acc


def matrix_json(rows) -> list[list[str]]:
    return [[fmt_scalar(x) for x in r] for r in rows]


def matrix_from_json(obj: Any) -> list[list[Scalar]]:
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise ConfigError("matrix must be a JSON list of lists")
    try:
        return [[to_scalar(x) for x in r] for r in obj]
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None


def square_json(dim: int, rows) -> dict:
    return {"dim": dim, "blade_order": [blade_name(m) for m in blade_order(dim)], "matrix": matrix_json(rows)}


def _square_rows(obj: dict) -> tuple[int, list[list[Scalar]]]:
    dim = int(obj["dim"])
    order = obj.get("blade_order")
    if order is not None and order != [blade_name(m) for m in blade_order(dim)]:
        raise ConfigError("unsupported blade order header")
    return dim, matrix_from_json(obj["matrix"])


def endo_json(f: Endo) -> dict:
    return square_json(f.dim, f.rows)


def endo_from_json(obj: dict) -> Endo:
    return Endo(*_square_rows(obj))


def general_pairing_json(BF: GeneralPairing) -> dict:
    return square_json(BF.dim, BF.rows)


def general_pairing_from_json(obj: dict | list, dim: int | None = None) -> GeneralPairing:
    if isinstance(obj, list):
        rows = matrix_from_json(obj)
        if dim is None:
            dim = len(rows).bit_length() - 1
        return GeneralPairing(dim, rows)
    return GeneralPairing(*_square_rows(obj))


def linform_json(f: LinForm) -> dict:
    return {"dim": f.dim, "blade_order": [blade_name(m) for m in blade_order(f.dim)],
            "values": [fmt_scalar(c) for c in f.coeffs]}


def hamiltonian_from_json(obj: Any) -> list[HamTerm]:
    """[{"degree": k, "coefficients": nested k-deep rational arrays}, ...]"""
    if not isinstance(obj, list):
        raise ConfigError("Hamiltonian must be a JSON list of terms")
    terms = []
    for t in obj:
        try:
            k = int(t["degree"])
            terms.append(HamTerm.of(k, t["coefficients"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad Hamiltonian term: {exc}") from None
    return terms


def normal_form_json(nf: NormalForm) -> dict:
    return {"dim": nf.dim, "terms": [{"coeff": fmt_scalar(c), "j": blade_name(a), "d": blade_name(b)}
                                     for c, a, b in nf.terms]}


def normal_form_from_json(obj: dict) -> NormalForm:
    dim = int(obj["dim"])
    terms = []
    for t in obj["terms"]:
        sa, a = parse_blade(t["j"])
        sb, b = parse_blade(t["d"])
        terms.append((sa * sb * to_scalar(t["coeff"]), a, b))
    return NormalForm(dim, tuple(terms))


def dumps(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False)


# -- configuration ------------------------------------------------------------


@dataclass(frozen=True)
class AlgebraConfig:
    dim: int = 2
    B: VectorForm | None = None
    C: VectorForm | None = None
    F: VectorForm | None = None
    BF: GeneralPairing | None = None
    Z: OrderingForm | None = None
    extra: dict = field(default_factory=dict)

    def validate(self) -> AlgebraConfig:
        if not isinstance(self.dim, int) or not 1 <= self.dim <= 9:
            raise ConfigError(f"dim must be in 1..9, got {self.dim!r}")
        for name in ("B", "C", "F"):
            f = getattr(self, name)
            if f is not None and f.dim != self.dim:
                raise ConfigError(f"{name} is {f.dim}x{f.dim}, expected {self.dim}x{self.dim}")
        if self.F is not None and not self.F.is_antisymmetric():
            raise ConfigError("F must be antisymmetric")
        if self.BF is not None and self.BF.dim != self.dim:
            raise ConfigError(f"BF must be {1 << self.dim}x{1 << self.dim}")
        if self.Z is not None and self.Z.dim != self.dim:
            raise ConfigError(f"Z must have {1 << self.dim} values")
        return self


def _load_json_arg(text: str) -> Any:
    """Inline JSON, or a path to a JSON file."""
    s = text.strip()
    if s.startswith("[") or s.startswith("{"):
        try:
            return json.loads(s)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"bad inline JSON: {exc}") from None
    p = Path(text)
    if not p.exists():
        raise ConfigError(f"no such file: {text}")
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"bad JSON in {text}: {exc}") from None


def _form(obj: Any) -> VectorForm:
    if isinstance(obj, dict) and "matrix" in obj:
        obj = obj["matrix"]
    rows = matrix_from_json(obj)
    try:
        return VectorForm.of(rows)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _zform(obj: Any, dim: int) -> OrderingForm:
    if isinstance(obj, dict):
        even = bool(obj.get("even", False))
        obj = obj.get("values", obj)
    else:
        even = False
    if not isinstance(obj, list):
        raise ConfigError("Z must be a list of rational strings")
    try:
        return OrderingForm(dim, [to_scalar(x) for x in obj], even=even)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad Z: {exc}") from None


def build_config(dim: int | None = None, config: str | None = None, default_dim: int = 2,
                 **overrides: str | None) -> AlgebraConfig:
    """Merge a config file with per-slot overrides (inline JSON or file paths).

    dim comes from the argument, then the config, then the size of B, C or F,
    then ``default_dim``.
    """
    raw: dict = {}
    if config:
        raw = _load_json_arg(config)
        if not isinstance(raw, dict):
            raise ConfigError("config file must hold a JSON object")
    for k, v in overrides.items():
        if v is not None:
            raw[k] = _load_json_arg(v)
    if dim is None:
        dim = raw.get("dim")
    if dim is None:
        B = raw.get("B") or raw.get("C") or raw.get("F")
        dim = len(B["matrix"] if isinstance(B, dict) else B) if B else default_dim
    try:
        dim = int(dim)
    except (TypeError, ValueError):
        raise ConfigError(f"bad dim {dim!r}") from None
    cfg = AlgebraConfig(dim=dim)
    if not 1 <= dim <= 9:
        raise ConfigError(f"dim must be in 1..9, got {dim}")
    for name in ("B", "C", "F"):
        if raw.get(name) is not None:
            cfg = replace(cfg, **{name: _form(raw[name])})
    if raw.get("BF") is not None:
        try:
            cfg = replace(cfg, BF=general_pairing_from_json(raw["BF"], dim))
        except (ValueError, KeyError) as exc:
            raise ConfigError(f"bad BF: {exc}") from None
    if raw.get("Z") is not None:
        cfg = replace(cfg, Z=_zform(raw["Z"], dim))
    return cfg.validate()
