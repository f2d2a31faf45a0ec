"""Small closed-form expression language.

Grammar (documented in docs/grammar.md): infix ``+ - * / ^`` with the usual
precedence, function-call syntax, decimal/scientific literals, and
identifiers.  An identifier like ``u_xxt`` is a derivative marker: it refers
to the mixed x,x,t-derivative of the field bound to ``u`` and can only be
evaluated against jet bindings.  ``i`` is reserved for the imaginary unit.

Expression trees are immutable; evaluation works over complex scalars or
jets, so one catalog entry serves both point evaluation and residual
checking.
"""

from __future__ import annotations

import cmath
import re
from dataclasses import dataclass

from . import specfun
from .jets import Jet, apply_function

__all__ = [
    "Expression", "Const", "Sym", "Sum", "Prod", "Pow", "Quot", "Call", "DerivMark",
    "ExprSyntaxError", "UnknownFunctionError", "UnboundSymbolError",
    "parse", "to_text", "differentiate", "evaluate", "evaluate_generic",
    "simplify_basic", "free_symbols", "FUNCTIONS",
]


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        self.offset = offset
        self.expected = expected
        exp = f" (expected {', '.join(expected)})" if expected else ""
        super().__init__(f"{message} at offset {offset}{exp}")


class UnknownFunctionError(ValueError):
    def __init__(self, name: str, offset: int):
        self.name = name
        self.offset = offset
        super().__init__(f"unknown function {name!r} at offset {offset}")


class UnboundSymbolError(KeyError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unbound symbol {name!r}")


# function tag -> (principal argument slot, parameter slots)
FUNCTIONS: dict[str, tuple[int, tuple[int, ...]]] = {
    "exp": (0, ()), "log": (0, ()), "sin": (0, ()), "cos": (0, ()),
    "tan": (0, ()), "sinh": (0, ()), "cosh": (0, ()), "tanh": (0, ()),
    "sqrt": (0, ()), "arctan": (0, ()),
    "jacobi_sn": (0, (1,)), "jacobi_cn": (0, (1,)), "jacobi_dn": (0, (1,)),
    "elliptic_f": (0, (1,)),
    "bessel_j": (1, (0,)),
    "airy_ai": (0, ()), "airy_bi": (0, ()),
    "airy_ai_prime": (0, ()), "airy_bi_prime": (0, ()),
    "cosh_sqrt": (0, ()), "sinhc_sqrt": (0, ()),
}


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Expression:
    def __add__(self, other): return Sum((self, _coerce(other)))
    def __radd__(self, other): return Sum((_coerce(other), self))
    def __sub__(self, other): return Sum((self, Prod((Const(-1), _coerce(other)))))
    def __rsub__(self, other): return Sum((_coerce(other), Prod((Const(-1), self))))
    def __mul__(self, other): return Prod((self, _coerce(other)))
    def __rmul__(self, other): return Prod((_coerce(other), self))
    def __truediv__(self, other): return Quot(self, _coerce(other))
    def __rtruediv__(self, other): return Quot(_coerce(other), self)
    def __pow__(self, other): return Pow(self, _coerce(other))
    def __neg__(self): return Prod((Const(-1), self))


def _coerce(v) -> "Expression":
    return v if isinstance(v, Expression) else Const(complex(v))


@dataclass(frozen=True)
class Const(Expression):
    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))


@dataclass(frozen=True)
class Sym(Expression):
    name: str


@dataclass(frozen=True)
class Sum(Expression):
    terms: tuple[Expression, ...]


@dataclass(frozen=True)
class Prod(Expression):
    factors: tuple[Expression, ...]


@dataclass(frozen=True)
class Pow(Expression):
    base: Expression
    exponent: Expression


@dataclass(frozen=True)
class Quot(Expression):
    num: Expression
    den: Expression


@dataclass(frozen=True)
class Call(Expression):
    tag: str
    args: tuple[Expression, ...]


@dataclass(frozen=True)
class DerivMark(Expression):
    base: str
    dx: int
    dt: int


def free_symbols(e: Expression) -> set[str]:
    out: set[str] = set()
    _collect_symbols(e, out)
    return out


def _collect_symbols(e: Expression, out: set[str]) -> None:
    if isinstance(e, Sym):
        out.add(e.name)
    elif isinstance(e, DerivMark):
        out.add(e.base)
    elif isinstance(e, Sum):
        for t in e.terms:
            _collect_symbols(t, out)
    elif isinstance(e, Prod):
        for f in e.factors:
            _collect_symbols(f, out)
    elif isinstance(e, Pow):
        _collect_symbols(e.base, out)
        _collect_symbols(e.exponent, out)
    elif isinstance(e, Quot):
        _collect_symbols(e.num, out)
        _collect_symbols(e.den, out)
    elif isinstance(e, Call):
        for a in e.args:
            _collect_symbols(a, out)


# ---------------------------------------------------------------------------
# tokenizer / parser
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^(),]))"
)


def _marker_split(name: str) -> tuple[str, str] | None:
    # u_xxt -> ("u", "xxt"); names whose last segment is not pure x/t are symbols
    if "_" not in name:
        return None
    base, suffix = name.rsplit("_", 1)
    if base and suffix and all(ch in "xt" for ch in suffix):
        return base, suffix
    return None


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos and not text[pos:].strip():
            break
        if m is None:
            raise ExprSyntaxError("unexpected character", pos)
        start = m.start(m.lastgroup)
        if m.lastgroup is None:
            break
        tokens.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    rest = text[pos:]
    if rest.strip():
        off = pos + len(rest) - len(rest.lstrip())
        raise ExprSyntaxError("unexpected character", off)
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def advance(self):
        tok = self.peek()
        self.i += 1
        return tok

    def _fail_expected(self, what: tuple[str, ...]):
        tok = self.peek()
        if tok is None:
            # anchor end-of-input errors at the last token seen
            offset = self.tokens[-1][2] if self.tokens else len(self.text)
            raise ExprSyntaxError("unexpected end of input", offset, what)
        raise ExprSyntaxError(f"unexpected {tok[1]!r}", tok[2], what)

    def expect_op(self, op: str):
        tok = self.peek()
        if tok is None or tok[0] != "op" or tok[1] != op:
            self._fail_expected((repr(op),))
        return self.advance()

    def parse(self) -> Expression:
        e = self.parse_sum()
        if self.peek() is not None:
            tok = self.peek()
            raise ExprSyntaxError(f"trailing input {tok[1]!r}", tok[2], ("end of input",))
        return e

    def parse_sum(self) -> Expression:
        terms = [self.parse_term()]
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "+-":
                self.advance()
                t = self.parse_term()
                if tok[1] == "-":
                    t = _negate(t)
                terms.append(t)
            else:
                break
        if len(terms) == 1:
            return terms[0]
        return Sum(_flatten_sum(terms))

    def parse_term(self) -> Expression:
        result = self.parse_unary()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "*/":
                self.advance()
                rhs = self.parse_unary()
                if tok[1] == "*":
                    result = Prod(_flatten_prod([result, rhs]))
                else:
                    result = Quot(result, rhs)
            else:
                break
        return result

    def parse_unary(self) -> Expression:
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "-":
            self.advance()
            return _negate(self.parse_unary())
        if tok and tok[0] == "op" and tok[1] == "+":
            self.advance()
            return self.parse_unary()
        return self.parse_power()

    def parse_power(self) -> Expression:
        base = self.parse_atom()
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.advance()
            return Pow(base, self.parse_unary())
        return base

    def parse_atom(self) -> Expression:
        tok = self.peek()
        if tok is None:
            self._fail_expected(("expression",))
        kind, val, off = tok
        if kind == "num":
            self.advance()
            return Const(float(val))
        if kind == "ident":
            self.advance()
            nxt = self.peek()
            if nxt and nxt[0] == "op" and nxt[1] == "(":
                if val not in FUNCTIONS:
                    raise UnknownFunctionError(val, off)
                self.advance()
                args = [self.parse_sum()]
                while self.peek() and self.peek()[0] == "op" and self.peek()[1] == ",":
                    self.advance()
                    args.append(self.parse_sum())
                self.expect_op(")")
                return Call(val, tuple(args))
            m = _marker_split(val)
            if m is not None:
                base, suffix = m
                return DerivMark(base, suffix.count("x"), suffix.count("t"))
            if val == "i":
                return Const(1j)
            return Sym(val)
        if kind == "op" and val == "(":
            self.advance()
            e = self.parse_sum()
            self.expect_op(")")
            return e
        self._fail_expected(("expression",))


def _negate(e: Expression) -> Expression:
    if isinstance(e, Const):
        return Const(-e.value)
    if isinstance(e, Prod) and isinstance(e.factors[0], Const):
        return Prod((Const(-e.factors[0].value),) + e.factors[1:])
    return Prod((Const(-1), e))


def _flatten_sum(terms) -> tuple[Expression, ...]:
    out = []
    for t in terms:
        if isinstance(t, Sum):
            out.extend(t.terms)
        else:
            out.append(t)
    return tuple(out)


def _flatten_prod(factors) -> tuple[Expression, ...]:
    out = []
    for f in factors:
        if isinstance(f, Prod):
            out.extend(f.factors)
        else:
            out.append(f)
    return tuple(out)


def parse(text: str) -> Expression:
    """Parse expression text to its AST (unique up to associativity flattening)."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# printer
# ---------------------------------------------------------------------------

_PREC_SUM, _PREC_PROD, _PREC_UNARY, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def _fmt_real(x: float) -> str:
    if x == int(x) and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def _render(e: Expression) -> tuple[str, int]:
    if isinstance(e, Const):
        v = e.value
        if v.imag == 0:
            s = _fmt_real(v.real)
            return s, (_PREC_UNARY if v.real < 0 else _PREC_ATOM)
        if v == 1j:
            return "i", _PREC_ATOM
        parts = []
        if v.real != 0:
            parts.append(_fmt_real(v.real))
        im = _fmt_real(v.imag)
        parts.append(f"{im}*i")
        s = " + ".join(parts)
        return (s, _PREC_SUM) if len(parts) > 1 else (s, _PREC_PROD)
    if isinstance(e, Sym):
        return e.name, _PREC_ATOM
    if isinstance(e, DerivMark):
        return f"{e.base}_{'x' * e.dx}{'t' * e.dt}", _PREC_ATOM
    if isinstance(e, Sum):
        out = []
        for idx, t in enumerate(e.terms):
            s, neg = _render_signed(t)
            if idx == 0:
                out.append(("-" if neg else "") + s)
            else:
                out.append((" - " if neg else " + ") + s)
        return "".join(out), _PREC_SUM
    if isinstance(e, Prod):
        parts = [_paren(f, _PREC_PROD) for f in e.factors]
        return "*".join(parts), _PREC_PROD
    if isinstance(e, Quot):
        return f"{_paren(e.num, _PREC_PROD)}/{_paren(e.den, _PREC_UNARY)}", _PREC_PROD
    if isinstance(e, Pow):
        return f"{_paren(e.base, _PREC_ATOM)}^{_paren(e.exponent, _PREC_UNARY)}", _PREC_POW
    if isinstance(e, Call):
        args = ", ".join(_render(a)[0] for a in e.args)
        return f"{e.tag}({args})", _PREC_ATOM
    raise TypeError(f"cannot render {type(e).__name__}")


def _strip_negative(t: Expression) -> Expression | None:
    # return the positive counterpart if t carries a leading real negative factor
    if isinstance(t, Const) and t.value.imag == 0 and t.value.real < 0:
        return Const(-t.value)
    if isinstance(t, Prod) and isinstance(t.factors[0], Const):
        c = t.factors[0].value
        if c.imag == 0 and c.real < 0:
            rest = t.factors[1:]
            if c == -1 and rest:
                return rest[0] if len(rest) == 1 else Prod(rest)
            return Prod((Const(-c),) + rest)
    if isinstance(t, Quot):
        num = _strip_negative(t.num)
        if num is not None:
            return Quot(num, t.den)
    return None


def _render_signed(t: Expression) -> tuple[str, bool]:
    pos = _strip_negative(t)
    if pos is not None:
        return _render(pos)[0], True
    return _render(t)[0], False


def _paren(e: Expression, min_prec: int) -> str:
    s, prec = _render(e)
    if prec < min_prec:
        return f"({s})"
    return s


def to_text(e: Expression) -> str:
    """Render to grammar text; ``parse(to_text(e))`` prints back identically."""
    return _render(e)[0]


# ---------------------------------------------------------------------------
# differentiation
# ---------------------------------------------------------------------------

def differentiate(e: Expression, s: str, order: int = 1) -> Expression:
    if order < 0:
        raise ValueError("derivative order must be nonnegative")
    if not re.match(r"^[A-Za-z][A-Za-z0-9]*$", s):
        raise ValueError(f"not a valid symbol name: {s!r}")
    out = e
    for _ in range(order):
        out = _d(out, s)
    return out


def _d(e: Expression, s: str) -> Expression:
    if isinstance(e, Const):
        return Const(0)
    if isinstance(e, Sym):
        return Const(1 if e.name == s else 0)
    if isinstance(e, DerivMark):
        if s == "x":
            return DerivMark(e.base, e.dx + 1, e.dt)
        if s == "t":
            return DerivMark(e.base, e.dx, e.dt + 1)
        return Const(0)
    if isinstance(e, Sum):
        return Sum(tuple(_d(t, s) for t in e.terms))
    if isinstance(e, Prod):
        terms = []
        fs = e.factors
        for i in range(len(fs)):
            terms.append(Prod(fs[:i] + (_d(fs[i], s),) + fs[i + 1:]))
        return Sum(tuple(terms))
    if isinstance(e, Quot):
        return Quot(Sum((Prod((_d(e.num, s), e.den)),
                         Prod((Const(-1), e.num, _d(e.den, s))))),
                    Pow(e.den, Const(2)))
    if isinstance(e, Pow):
        b, p = e.base, e.exponent
        if isinstance(p, Const):
            return Prod((p, Pow(b, Const(p.value - 1)), _d(b, s)))
        # general exponent: b^p * (p' log b + p b'/b)
        return Prod((e, Sum((Prod((_d(p, s), Call("log", (b,)))),
                             Quot(Prod((p, _d(b, s))), b)))))
    if isinstance(e, Call):
        return _d_call(e, s)
    raise TypeError(f"cannot differentiate {type(e).__name__}")


def _d_call(e: Call, s: str) -> Expression:
    principal, params = FUNCTIONS[e.tag]
    for slot in params:
        if s in free_symbols(e.args[slot]):
            raise ValueError(
                f"cannot differentiate {e.tag} with respect to its parameter slot"
            )
    u = e.args[principal]
    du = _d(u, s)

    def rebuilt(tag, *args):
        return Call(tag, tuple(args))

    if e.tag == "exp":
        outer = e
    elif e.tag == "log":
        outer = Quot(Const(1), u)
    elif e.tag == "sin":
        outer = rebuilt("cos", u)
    elif e.tag == "cos":
        outer = Prod((Const(-1), rebuilt("sin", u)))
    elif e.tag == "tan":
        outer = Sum((Const(1), Pow(e, Const(2))))
    elif e.tag == "sinh":
        outer = rebuilt("cosh", u)
    elif e.tag == "cosh":
        outer = rebuilt("sinh", u)
    elif e.tag == "tanh":
        outer = Sum((Const(1), Prod((Const(-1), Pow(e, Const(2))))))
    elif e.tag == "sqrt":
        outer = Quot(Const(1), Prod((Const(2), e)))
    elif e.tag == "arctan":
        outer = Quot(Const(1), Sum((Const(1), Pow(u, Const(2)))))
    elif e.tag == "jacobi_sn":
        n = e.args[1]
        outer = Prod((rebuilt("jacobi_cn", u, n), rebuilt("jacobi_dn", u, n)))
    elif e.tag == "jacobi_cn":
        n = e.args[1]
        outer = Prod((Const(-1), rebuilt("jacobi_sn", u, n), rebuilt("jacobi_dn", u, n)))
    elif e.tag == "jacobi_dn":
        n = e.args[1]
        outer = Prod((Const(-1), Pow(n, Const(2)),
                      rebuilt("jacobi_sn", u, n), rebuilt("jacobi_cn", u, n)))
    elif e.tag == "elliptic_f":
        n = e.args[1]
        one_m_y2 = Sum((Const(1), Prod((Const(-1), Pow(u, Const(2))))))
        one_m_n2y2 = Sum((Const(1), Prod((Const(-1), Pow(n, Const(2)), Pow(u, Const(2))))))
        outer = Quot(Const(1), Prod((rebuilt("sqrt", one_m_y2), rebuilt("sqrt", one_m_n2y2))))
    elif e.tag == "bessel_j":
        nu = e.args[0]
        lower = Call("bessel_j", (Sum((nu, Const(-1))), u))
        upper = Call("bessel_j", (Sum((nu, Const(1))), u))
        outer = Quot(Sum((lower, Prod((Const(-1), upper)))), Const(2))
    elif e.tag == "airy_ai":
        outer = rebuilt("airy_ai_prime", u)
    elif e.tag == "airy_bi":
        outer = rebuilt("airy_bi_prime", u)
    elif e.tag == "airy_ai_prime":
        outer = Prod((u, rebuilt("airy_ai", u)))
    elif e.tag == "airy_bi_prime":
        outer = Prod((u, rebuilt("airy_bi", u)))
    elif e.tag == "cosh_sqrt":
        outer = Quot(rebuilt("sinhc_sqrt", u), Const(2))
    elif e.tag == "sinhc_sqrt":
        outer = Quot(Sum((rebuilt("cosh_sqrt", u),
                          Prod((Const(-1), rebuilt("sinhc_sqrt", u))))),
                     Prod((Const(2), u)))
    else:
        raise ValueError(f"no derivative rule for {e.tag}")
    return Prod((outer, du))


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

_SCALAR_FUNCS = {
    "exp": cmath.exp, "log": cmath.log, "sin": cmath.sin, "cos": cmath.cos,
    "tan": cmath.tan, "sinh": cmath.sinh, "cosh": cmath.cosh, "tanh": cmath.tanh,
    "sqrt": cmath.sqrt, "arctan": cmath.atan,
    "jacobi_sn": lambda u, n: specfun.jacobi_elliptic("sn", u, n),
    "jacobi_cn": lambda u, n: specfun.jacobi_elliptic("cn", u, n),
    "jacobi_dn": lambda u, n: specfun.jacobi_elliptic("dn", u, n),
    "elliptic_f": specfun.elliptic_f_incomplete,
    "bessel_j": lambda nu, z: specfun.bessel_j(nu.real, z),
    "airy_ai": lambda z: specfun.airy("Ai", z),
    "airy_bi": lambda z: specfun.airy("Bi", z),
    "airy_ai_prime": lambda z: specfun.airy("Ai'", z),
    "airy_bi_prime": lambda z: specfun.airy("Bi'", z),
    "cosh_sqrt": specfun.cosh_sqrt,
    "sinhc_sqrt": specfun.sinhc_sqrt,
}


def evaluate(e: Expression, bindings: dict[str, complex]) -> complex:
    """Evaluate to a complex number; every free symbol must be bound."""
    v = evaluate_generic(e, bindings)
    if isinstance(v, Jet):
        raise TypeError("jet-valued binding in scalar evaluation")
    return complex(v)


def evaluate_generic(e: Expression, env: dict):
    """Evaluate with symbols bound to complex numbers or jets (mixed allowed)."""
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Sym):
        if e.name not in env:
            raise UnboundSymbolError(e.name)
        return env[e.name]
    if isinstance(e, DerivMark):
        if e.base not in env:
            raise UnboundSymbolError(e.base)
        v = env[e.base]
        if not isinstance(v, Jet):
            raise TypeError(f"derivative marker {e.base!r} requires a jet binding")
        out = v
        if e.dx:
            out = out.deriv("x", e.dx)
        if e.dt:
            out = out.deriv("t", e.dt)
        return out
    if isinstance(e, Sum):
        vals = [evaluate_generic(t, env) for t in e.terms]
        out = vals[0]
        for v in vals[1:]:
            out = out + v
        return out
    if isinstance(e, Prod):
        vals = [evaluate_generic(f, env) for f in e.factors]
        out = vals[0]
        for v in vals[1:]:
            out = out * v
        return out
    if isinstance(e, Quot):
        num = evaluate_generic(e.num, env)
        den = evaluate_generic(e.den, env)
        if not isinstance(den, Jet) and not isinstance(num, Jet) and den == 0:
            raise ZeroDivisionError("division by zero in expression")
        return num / den
    if isinstance(e, Pow):
        base = evaluate_generic(e.base, env)
        p = evaluate_generic(e.exponent, env)
        if isinstance(p, Jet):
            raise TypeError("jet-valued exponents are not supported")
        if isinstance(base, Jet):
            return base ** (p.real if p.imag == 0 and float(p.real).is_integer() else p)
        return base ** p
    if isinstance(e, Call):
        principal, params = FUNCTIONS[e.tag]
        vals = [evaluate_generic(a, env) for a in e.args]
        pvals = []
        for slot in params:
            v = vals[slot]
            if isinstance(v, Jet):
                v = _require_constant_jet(v, e.tag)
            pvals.append(v)
        arg = vals[principal]
        if isinstance(arg, Jet):
            return apply_function(e.tag, arg, pvals)
        if e.tag == "bessel_j":
            return _SCALAR_FUNCS[e.tag](pvals[0], arg)
        if pvals:
            return complex(_SCALAR_FUNCS[e.tag](arg, *pvals))
        return complex(_SCALAR_FUNCS[e.tag](arg))
    raise TypeError(f"cannot evaluate {type(e).__name__}")


def _require_constant_jet(v: Jet, tag: str) -> complex:
    c = v.coef.copy()
    c[(0,) * len(v.vars)] = 0
    import numpy as np
    if np.max(np.abs(c)) > 0:
        raise TypeError(f"parameter argument of {tag} must be constant")
    return v.value


# ---------------------------------------------------------------------------
# light simplification: folding, identities, flattening, like terms
# ---------------------------------------------------------------------------

def simplify_basic(e: Expression) -> Expression:
    if isinstance(e, Sum):
        terms = []
        for t in e.terms:
            st = simplify_basic(t)
            if isinstance(st, Sum):
                terms.extend(st.terms)
            else:
                terms.append(st)
        const = 0j
        coeffs: dict[str, complex] = {}
        reps: dict[str, Expression] = {}
        order: list[str] = []
        for t in terms:
            if isinstance(t, Const):
                const += t.value
                continue
            coeff, core = _split_coeff(t)
            key = to_text(core)
            if key not in coeffs:
                coeffs[key] = 0j
                reps[key] = core
                order.append(key)
            coeffs[key] += coeff
        out: list[Expression] = []
        for key in order:
            c = coeffs[key]
            if c == 0:
                continue
            if c == 1:
                out.append(reps[key])
            else:
                out.append(Prod((Const(c),) + _as_factors(reps[key])))
        if const != 0 or not out:
            out.append(Const(const))
        if len(out) == 1:
            return out[0]
        return Sum(tuple(out))
    if isinstance(e, Prod):
        factors = []
        const = 1 + 0j
        for f in e.factors:
            sf = simplify_basic(f)
            if isinstance(sf, Prod):
                for g in sf.factors:
                    if isinstance(g, Const):
                        const *= g.value
                    else:
                        factors.append(g)
            elif isinstance(sf, Const):
                const *= sf.value
            else:
                factors.append(sf)
        if const == 0:
            return Const(0)
        if not factors:
            return Const(const)
        if const != 1:
            factors = [Const(const)] + factors
        if len(factors) == 1:
            return factors[0]
        return Prod(tuple(factors))
    if isinstance(e, Quot):
        num = simplify_basic(e.num)
        den = simplify_basic(e.den)
        if isinstance(den, Const) and den.value == 1:
            return num
        if isinstance(num, Const) and num.value == 0 and not (
                isinstance(den, Const) and den.value == 0):
            return Const(0)
        if isinstance(num, Const) and isinstance(den, Const) and den.value != 0:
            return Const(num.value / den.value)
        return Quot(num, den)
    if isinstance(e, Pow):
        base = simplify_basic(e.base)
        p = simplify_basic(e.exponent)
        if isinstance(p, Const):
            if p.value == 1:
                return base
            if p.value == 0:
                return Const(1)
            if isinstance(base, Const):
                return Const(base.value ** p.value)
        return Pow(base, p)
    if isinstance(e, Call):
        return Call(e.tag, tuple(simplify_basic(a) for a in e.args))
    return e


def _split_coeff(t: Expression) -> tuple[complex, Expression]:
    if isinstance(t, Prod):
        coeff = 1 + 0j
        rest = []
        for f in t.factors:
            if isinstance(f, Const):
                coeff *= f.value
            else:
                rest.append(f)
        if not rest:
            return coeff, Const(1)
        core = rest[0] if len(rest) == 1 else Prod(tuple(rest))
        return coeff, core
    return 1 + 0j, t


def _as_factors(core: Expression) -> tuple[Expression, ...]:
    if isinstance(core, Prod):
        return core.factors
    if isinstance(core, Const) and core.value == 1:
        return ()
    return (core,)
