"""Named, parameterized complex-valued fields evaluable as jets.

A ``Field`` couples an evaluator (closed-form expression or arbitrary
jet-building closure) with its declared singular loci, so samplers can stay
clear of poles.  Evaluators are deterministic and fields are immutable after
construction; everything downstream (residual scans, Hirota operators, flow
reconstructions) consumes fields only through :meth:`Field.jet`.
"""

from __future__ import annotations

from dataclasses import dataclass, field as _dc_field
from typing import Callable, Mapping, Sequence

from . import expr as _expr
from .jets import Jet

__all__ = ["Field", "FieldError"]


class FieldError(ValueError):
    pass


@dataclass(frozen=True)
class Field:
    name: str
    vars: tuple[str, ...]
    evaluator: Callable[[tuple[complex, ...], tuple[int, ...]], Jet]
    params: dict = _dc_field(default_factory=dict)
    loci: tuple["Field", ...] = ()

    def jet(self, point: Sequence[complex], orders: Sequence[int]) -> Jet:
        point = tuple(complex(p) for p in point)
        orders = tuple(int(k) for k in orders)
        if len(point) != len(self.vars) or len(orders) != len(self.vars):
            raise FieldError(
                f"field {self.name!r} expects point/orders over {self.vars}"
            )
        return self.evaluator(point, orders)

    def value(self, point: Sequence[complex]) -> complex:
        return self.jet(point, (0,) * len(self.vars)).value

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_expression(name: str, text, vars: Sequence[str],
                        params: Mapping[str, complex] | None = None,
                        loci: Sequence = ()) -> "Field":
        """Field backed by an expression in the catalog grammar.

        ``params`` binds the expression's non-variable symbols to constants;
        ``loci`` are expressions whose zero sets are singular for the field.
        """
        e = _expr.parse(text) if isinstance(text, str) else text
        params = dict(params or {})
        vars = tuple(vars)
        missing = _expr.free_symbols(e) - set(vars) - set(params)
        if missing:
            raise FieldError(f"field {name!r} has unbound symbols {sorted(missing)}")

        def evaluator(point, orders, _e=e, _vars=vars, _params=params):
            env = {
                v: Jet.variable(v, _vars, point, orders) for v in _vars
            }
            env.update(_params)
            out = _expr.evaluate_generic(_e, env)
            if not isinstance(out, Jet):
                out = Jet.constant(out, _vars, point, orders)
            return out

        locus_fields = tuple(
            loc if isinstance(loc, Field)
            else Field.from_expression(f"{name}.locus{i}", loc, vars, params)
            for i, loc in enumerate(loci)
        )
        return Field(name, vars, evaluator, params, locus_fields)

    @staticmethod
    def from_function(name: str, fn: Callable, vars: Sequence[str],
                      params: Mapping[str, complex] | None = None,
                      loci: Sequence["Field"] = ()) -> "Field":
        """Field backed by ``fn(bindings) -> Jet`` where bindings maps each
        variable name to its lifted jet (parameters are closed over in fn)."""
        vars = tuple(vars)

        def evaluator(point, orders):
            env = {v: Jet.variable(v, vars, point, orders) for v in vars}
            out = fn(env)
            if not isinstance(out, Jet):
                out = Jet.constant(out, vars, point, orders)
            return out

        return Field(name, vars, evaluator, dict(params or {}), tuple(loci))

    # -- derived fields -------------------------------------------------------

    def diff(self, var: str, k: int = 1) -> "Field":
        """Partial-derivative field; requests a correspondingly deeper jet."""
        if var not in self.vars:
            raise FieldError(f"{self.name!r} has no variable {var!r}")
        ax = self.vars.index(var)

        def evaluator(point, orders):
            bumped = list(orders)
            bumped[ax] += k
            return self.jet(point, bumped).deriv(var, k)

        return Field(f"d{var}^{k}({self.name})" if k > 1 else f"d{var}({self.name})",
                     self.vars, evaluator, dict(self.params), self.loci)

    def combine(self, name: str, other: "Field",
                op: Callable[[Jet, Jet], Jet]) -> "Field":
        if self.vars != other.vars:
            raise FieldError("cannot combine fields over different variables")

        def evaluator(point, orders):
            return op(self.jet(point, orders), other.jet(point, orders))

        return Field(name, self.vars, evaluator, dict(self.params),
                     tuple(self.loci) + tuple(other.loci))
