"""Evaluate parsed expressions against an algebra configuration."""

from __future__ import annotations

from typing import Union

from .cayley import bracket, erganzung, meet, vee
from .exterior import (
    DimensionError,
    Multivector,
    TensorPoly,
    gco,
    grade_involution,
    grade_project,
    mask_of,
    reversion_wedge,
    wedge,
)
from .exterior import counit as _counit
from .hopf import antipode_solve, grassmann_antipode
from .pairing import VectorForm, cco, cmul, dotted_wedge, left_contract, reversion_clifford, right_contract
from .parser import BinOp, Blade, Call, Neg, Node, Num, parse
from .renorm import GeneralPairing, combined_pairing, rmul
from .scalars import Scalar
from .serial import AlgebraConfig, ConfigError

Value = Union[Multivector, TensorPoly, Scalar]


class EvalError(ValueError):
    pass


class Evaluator:
    def __init__(self, cfg: AlgebraConfig):
        self.cfg = cfg
        self.dim = cfg.dim
        self._rpair: GeneralPairing | None = None

    def need(self, slot: str, what: str) -> VectorForm:
        f = getattr(self.cfg, slot)
        if f is None:
            raise ConfigError(f"{what} needs the {slot} form; pass --{slot}")
        return f

    def rpairing(self) -> GeneralPairing:
        if self._rpair is None:
            cfg = self.cfg
            if cfg.BF is not None:
                self._rpair = cfg.BF
            elif cfg.Z is not None:
                self._rpair = combined_pairing(cfg.B or VectorForm.zero(self.dim), cfg.Z)
            elif cfg.B is not None:
                self._rpair = GeneralPairing.graded(cfg.B)
            else:
                raise ConfigError("&r needs BF, Z or B")
        return self._rpair

    def mv(self, x: Value, what: str) -> Multivector:
        if isinstance(x, Multivector):
            return x
        if isinstance(x, TensorPoly):
            raise EvalError(f"{what} does not accept a tensor")
        return Multivector.scalar(self.dim, x)

    def eval(self, node: Node) -> Value:
        if isinstance(node, Num):
            return node.value
        if isinstance(node, Blade):
            for i in node.indices:
                if i > self.dim:
                    raise DimensionError(f"e{i} exceeds dim {self.dim}")
            sign, mask = mask_of(node.indices)
            return Multivector.blade(self.dim, mask, sign)
        if isinstance(node, Neg):
            v = self.eval(node.operand)
            return -v
        if isinstance(node, BinOp):
            return self.binop(node.op, self.eval(node.left), self.eval(node.right))
        if isinstance(node, Call):
            return self.call(node.name, [self.eval(a) for a in node.args])
        raise TypeError(f"not an expression node: {node!r}")

    def binop(self, op: str, a: Value, b: Value) -> Value:
        if op == "*":
            return self.scale(a, b)
        if op in "+-":
            if isinstance(a, TensorPoly) or isinstance(b, TensorPoly):
                if not (isinstance(a, TensorPoly) and isinstance(b, TensorPoly)):
                    raise EvalError("cannot add a tensor and a multivector")
                return a + b if op == "+" else a - b
            if not isinstance(a, Multivector) and not isinstance(b, Multivector):
                return a + b if op == "+" else a - b
            u, v = self.mv(a, op), self.mv(b, op)
            return u + v if op == "+" else u - v
        u, v = self.mv(a, op), self.mv(b, op)
        if op == "^":
            return wedge(u, v)
        if op == ".":
            return dotted_wedge(u, v, self.need("F", "the dotted wedge"))
        if op == "&c":
            return cmul(u, v, self.need("B", "&c"))
        if op == "&r":
            return rmul(u, v, self.rpairing())
        if op == "&v":
            return vee(u, v)
        raise EvalError(f"unknown operator {op!r}")

    def scale(self, a: Value, b: Value) -> Value:
        sa, sb = self.as_scalar(a), self.as_scalar(b)
        if sa is not None and (sb is None or not isinstance(a, Multivector)):
            return b * sa
        if sb is not None:
            return a * sb
        raise EvalError("'*' needs a scalar operand; use ^, &c or &r between multivectors")

    @staticmethod
    def as_scalar(x: Value) -> Scalar | None:
        if isinstance(x, TensorPoly):
            return None
        if isinstance(x, Multivector):
            if set(x.terms) <= {0}:
                return x.coeff(0)
            return None
        return x

    def call(self, name: str, args: list[Value]) -> Value:
        if name == "bracket":
            return bracket([self.mv(a, name) for a in args])
        if name == "grade":
            k = self.as_scalar(args[1])
            if k is None or k != int(k) or not 0 <= k <= self.dim:
                raise EvalError(f"grade needs an integer in 0..{self.dim}")
            return grade_project(self.mv(args[0], name), int(k))
        xs = [self.mv(a, name) for a in args]
        cfg = self.cfg
        if name == "gco":
            return gco(xs[0])
        if name == "cco":
            return cco(xs[0], self.need("C", "cco"))
        if name == "antipode":
            if cfg.B is None and cfg.C is None:
                return grassmann_antipode(xs[0])
            return antipode_solve(cfg.B, cfg.C, dim=self.dim)(xs[0])
        if name == "rev":
            return reversion_clifford(xs[0], cfg.B) if cfg.B is not None else reversion_wedge(xs[0])
        if name == "grinv":
            return grade_involution(xs[0])
        if name == "erg":
            return erganzung(xs[0])
        if name == "counit":
            return _counit(xs[0])
        if name == "meet":
            return meet(xs[0], xs[1])
        if name == "vee":
            return vee(xs[0], xs[1])
        if name == "lc":
            return left_contract(xs[0], xs[1], self.need("B", "lc"))
        if name == "rc":
            return right_contract(xs[0], xs[1], self.need("B", "rc"))
        raise EvalError(f"unknown function {name!r}")


def evaluate(node: Node | str, cfg: AlgebraConfig) -> Value:
    if isinstance(node, str):
        node = parse(node, cfg.dim)
    return Evaluator(cfg).eval(node)
