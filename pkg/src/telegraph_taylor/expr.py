"""Immutable expression trees over the two variables ``x`` and ``t``.

The node set is deliberately small: constants (exact rationals or floats),
the variables, ``pi``, sums, products, negation, positive integer powers and
the entire functions ``sin cos sinh cosh exp``.  It is closed under
differentiation in both variables and has no poles.

``simplify`` brings an expression to an expanded sum-of-monomials form with
exact rational coefficient folding and like-term collection.  Function
arguments are simplified recursively, so two expressions that expand to the
same polynomial in the same atoms simplify to structurally equal trees.

Example::

    >>> e = parse("(3 - 4*10 + 5^2) * exp(-2*t) * sinh(x)")
    >>> simplify(e)
    Expr('-12*exp(-2*t)*sinh(x)')
    >>> [str(c) for c in t_taylor_coeffs(e, 2)]
    ['-12*sinh(x)', '24*sinh(x)', '-24*sinh(x)']
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, Tuple, Union

import numpy as np

Number = Union[Fraction, float]

#: Abort threshold for expression growth (tree node count).
MAX_NODES = 10**6


class ExpressionTooLarge(RuntimeError):
    """Raised when a simplified expression exceeds :data:`MAX_NODES` nodes."""


def as_number(value: Any) -> Number:
    """Coerce ints to exact fractions; floats stay floats."""
    if isinstance(value, bool):
        raise TypeError("booleans are not numeric constants")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, (Fraction, float)):
        return value
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.integer):
        return Fraction(int(value))
    raise TypeError(f"not a numeric constant: {value!r}")


# ---------------------------------------------------------------------------
# Nodes
# ---------------------------------------------------------------------------


class Expr:
    __slots__ = ("_key", "_hash", "size", "free", "_poly", "_simp")

    def _init(self, key, size, free):
        self._key = key
        self._hash = hash(key)
        self.size = size
        self.free = free
        self._poly = None
        self._simp = None

    @property
    def key(self) -> tuple:
        """Total-order sort key; equal keys mean structurally equal trees."""
        return self._key

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Expr):
            return NotImplemented
        return self._hash == other._hash and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Expr({to_string(self)!r})"

    def __str__(self):
        return to_string(self)

    # arithmetic builds raw (unsimplified) trees
    def __add__(self, other):
        return Add(self, _wrap(other))

    def __radd__(self, other):
        return Add(_wrap(other), self)

    def __sub__(self, other):
        return Add(self, Neg(_wrap(other)))

    def __rsub__(self, other):
        return Add(_wrap(other), Neg(self))

    def __mul__(self, other):
        return Mul(self, _wrap(other))

    def __rmul__(self, other):
        return Mul(_wrap(other), self)

    def __neg__(self):
        return Neg(self)

    def __pow__(self, n):
        if n == 0:
            return Const(1)
        return Pow(self, n)

    def children(self) -> Tuple["Expr", ...]:
        return ()

    def has(self, var: str) -> bool:
        return var in self.free

    def eval(self, x, t=0.0):
        return evaluate(self, x, t)


def _wrap(value) -> Expr:
    if isinstance(value, Expr):
        return value
    return Const(value)


class Const(Expr):
    __slots__ = ("value",)

    def __init__(self, value):
        value = as_number(value)
        self.value = value
        if isinstance(value, Fraction):
            key = (0, "q", value.numerator, value.denominator)
        else:
            key = (0, "f", value)
        self._init(key, 1, frozenset())

    def is_zero(self) -> bool:
        return self.value == 0


class Var(Expr):
    __slots__ = ("name",)

    def __init__(self, name: str):
        if name not in ("x", "t"):
            raise ValueError(f"unknown variable {name!r}")
        self.name = name
        self._init((1, name), 1, frozenset((name,)))


class Pi(Expr):
    __slots__ = ()

    def __init__(self):
        self._init((2,), 1, frozenset())


class Add(Expr):
    __slots__ = ("terms",)

    def __init__(self, *terms: Expr):
        if len(terms) == 1 and not isinstance(terms[0], Expr):
            terms = tuple(terms[0])
        if not terms:
            raise ValueError("Add needs at least one term")
        self.terms = tuple(terms)
        self._init(
            (5, tuple(c._key for c in self.terms)),
            1 + sum(c.size for c in self.terms),
            frozenset().union(*(c.free for c in self.terms)),
        )

    def children(self):
        return self.terms


class Mul(Expr):
    __slots__ = ("factors",)

    def __init__(self, *factors: Expr):
        if len(factors) == 1 and not isinstance(factors[0], Expr):
            factors = tuple(factors[0])
        if not factors:
            raise ValueError("Mul needs at least one factor")
        self.factors = tuple(factors)
        self._init(
            (6, tuple(c._key for c in self.factors)),
            1 + sum(c.size for c in self.factors),
            frozenset().union(*(c.free for c in self.factors)),
        )

    def children(self):
        return self.factors


class Neg(Expr):
    __slots__ = ("child",)

    def __init__(self, child: Expr):
        self.child = child
        self._init((4, child._key), 1 + child.size, child.free)

    def children(self):
        return (self.child,)


class Pow(Expr):
    __slots__ = ("base", "exp")

    def __init__(self, base: Expr, exp: int):
        if isinstance(exp, bool) or not isinstance(exp, (int, np.integer)) or exp < 1:
            raise ValueError(f"Pow exponent must be an integer >= 1, got {exp!r}")
        self.base = base
        self.exp = int(exp)
        self._init((7, base._key, self.exp), 1 + base.size, base.free)

    def children(self):
        return (self.base,)


class Func(Expr):
    """Base for the unary elementary functions."""

    __slots__ = ("arg",)
    name = ""
    # value at 0 as an exact rational, used for folding f(0)
    at_zero = Fraction(0)

    def __init__(self, arg: Expr):
        self.arg = _wrap(arg)
        self._init((3, self.name, self.arg._key), 1 + self.arg.size, self.arg.free)

    def children(self):
        return (self.arg,)


class Sin(Func):
    __slots__ = ()
    name = "sin"
    at_zero = Fraction(0)


class Cos(Func):
    __slots__ = ()
    name = "cos"
    at_zero = Fraction(1)


class Sinh(Func):
    __slots__ = ()
    name = "sinh"
    at_zero = Fraction(0)


class Cosh(Func):
    __slots__ = ()
    name = "cosh"
    at_zero = Fraction(1)


class Exp(Func):
    __slots__ = ()
    name = "exp"
    at_zero = Fraction(1)


FUNCS: Dict[str, type] = {c.name: c for c in (Sin, Cos, Sinh, Cosh, Exp)}

X = Var("x")
T = Var("t")
PI = Pi()
ZERO = Const(0)
ONE = Const(1)


# ---------------------------------------------------------------------------
# Normal form: dict {monomial: coefficient}, monomial = sorted ((atom, power), ...)
# ---------------------------------------------------------------------------

Monomial = Tuple[Tuple[Expr, int], ...]
Poly = Dict[Monomial, Number]


def _mono_key(m: Monomial):
    return tuple((a._key, p) for a, p in m)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    powers: Dict[Expr, int] = dict(a)
    for atom, p in b:
        powers[atom] = powers.get(atom, 0) + p
    return tuple(sorted(powers.items(), key=lambda ap: ap[0]._key))


def _padd_into(acc: Poly, p: Poly, scale: Number = 1) -> None:
    for m, c in p.items():
        v = acc.get(m, 0) + c * scale
        if v == 0:
            acc.pop(m, None)
        else:
            acc[m] = v


def _pmul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = _mono_mul(m1, m2)
            v = out.get(m, 0) + c1 * c2
            if v == 0:
                out.pop(m, None)
            else:
                out[m] = v
    return out


def _atom_poly(atom: Expr) -> Poly:
    return {((atom, 1),): Fraction(1)}


def _poly(e: Expr) -> Poly:
    if e._poly is not None:
        return e._poly
    if isinstance(e, Const):
        p = {(): e.value} if e.value != 0 else {}
    elif isinstance(e, (Var, Pi)):
        p = _atom_poly(e)
    elif isinstance(e, Add):
        p = {}
        for c in e.terms:
            _padd_into(p, _poly(c))
    elif isinstance(e, Mul):
        p = {(): Fraction(1)}
        for c in e.factors:
            p = _pmul(p, _poly(c))
            if not p:
                break
    elif isinstance(e, Neg):
        p = {m: -c for m, c in _poly(e.child).items()}
    elif isinstance(e, Pow):
        base = _poly(e.base)
        p = {(): Fraction(1)}
        for _ in range(e.exp):
            p = _pmul(p, base)
    elif isinstance(e, Func):
        arg = simplify(e.arg)
        if isinstance(arg, Const):
            v = arg.value
            if v == 0:
                p = {(): e.at_zero} if e.at_zero != 0 else {}
            elif isinstance(v, float):
                r = getattr(math, e.name)(v)
                p = {(): r} if r != 0 else {}
            else:
                p = _atom_poly(type(e)(arg))
        else:
            p = _atom_poly(type(e)(arg))
    else:  # pragma: no cover
        raise TypeError(f"unknown node {type(e).__name__}")
    e._poly = p
    return p


def _rebuild(p: Poly) -> Expr:
    if not p:
        return Const(0)
    terms = []
    for m in sorted(p, key=_mono_key):
        c = p[m]
        factors = [a if k == 1 else Pow(a, k) for a, k in m]
        if not factors:
            terms.append(Const(c))
            continue
        if c != 1:
            factors.insert(0, Const(c))
        terms.append(factors[0] if len(factors) == 1 else Mul(*factors))
    out = terms[0] if len(terms) == 1 else Add(*terms)
    if out.size > MAX_NODES:
        raise ExpressionTooLarge(f"expression has {out.size} nodes (cap {MAX_NODES})")
    out._poly = p
    out._simp = out
    return out


def simplify(e: Expr) -> Expr:
    """Expanded, like-term-collected form.  Idempotent."""
    if e._simp is not None:
        return e._simp
    r = _rebuild(_poly(e))
    e._simp = r
    return r


def is_zero(e: Expr) -> bool:
    """Structural zero test (after simplification)."""
    return not _poly(e)


def as_constant(e: Expr):
    """The numeric value if ``e`` simplifies to a constant, else ``None``."""
    p = _poly(e)
    if not p:
        return Fraction(0)
    if len(p) == 1 and () in p:
        return p[()]
    return None


# ---------------------------------------------------------------------------
# Differentiation and substitution
# ---------------------------------------------------------------------------


def _raw_diff(e: Expr, var: str, memo: dict) -> Expr:
    if var not in e.free:
        return ZERO
    hit = memo.get(id(e))
    if hit is not None:
        return hit
    if isinstance(e, Var):
        r = ONE
    elif isinstance(e, Add):
        r = Add(*(_raw_diff(c, var, memo) for c in e.terms if var in c.free))
    elif isinstance(e, Mul):
        fs = e.factors
        parts = []
        for i, f in enumerate(fs):
            if var not in f.free:
                continue
            parts.append(Mul(*fs[:i], _raw_diff(f, var, memo), *fs[i + 1 :]))
        r = parts[0] if len(parts) == 1 else Add(*parts)
    elif isinstance(e, Neg):
        r = Neg(_raw_diff(e.child, var, memo))
    elif isinstance(e, Pow):
        db = _raw_diff(e.base, var, memo)
        if e.exp == 1:
            r = db
        elif e.exp == 2:
            r = Mul(Const(2), e.base, db)
        else:
            r = Mul(Const(e.exp), Pow(e.base, e.exp - 1), db)
    elif isinstance(e, Func):
        da = _raw_diff(e.arg, var, memo)
        a = e.arg
        if isinstance(e, Sin):
            outer = Cos(a)
        elif isinstance(e, Cos):
            outer = Neg(Sin(a))
        elif isinstance(e, Sinh):
            outer = Cosh(a)
        elif isinstance(e, Cosh):
            outer = Sinh(a)
        else:
            outer = e
        r = Mul(outer, da)
    else:  # pragma: no cover
        raise TypeError(f"cannot differentiate {type(e).__name__}")
    memo[id(e)] = r
    return r


def diff(e: Expr, var: str) -> Expr:
    """Exact partial derivative with respect to ``'x'`` or ``'t'``, simplified."""
    if var not in ("x", "t"):
        raise ValueError(f"unknown variable {var!r}")
    return simplify(_raw_diff(e, var, {}))


def subs(e: Expr, var: str, value) -> Expr:
    """Replace every occurrence of variable ``var`` by ``value`` (raw tree)."""
    value = _wrap(value)
    memo: dict = {}

    def go(n: Expr) -> Expr:
        if var not in n.free:
            return n
        hit = memo.get(id(n))
        if hit is not None:
            return hit
        if isinstance(n, Var):
            r = value
        elif isinstance(n, Add):
            r = Add(*(go(c) for c in n.terms))
        elif isinstance(n, Mul):
            r = Mul(*(go(c) for c in n.factors))
        elif isinstance(n, Neg):
            r = Neg(go(n.child))
        elif isinstance(n, Pow):
            r = Pow(go(n.base), n.exp)
        else:
            r = type(n)(go(n.arg))
        memo[id(n)] = r
        return r

    return go(e)


def t_taylor_coeffs(e: Expr, order: int) -> list:
    """Plain Taylor coefficients in ``t`` about ``t = 0``: entry k is the
    k-th t-derivative at t = 0 divided by k!, as an x-only expression."""
    if order < 0:
        raise ValueError("order must be >= 0")
    out = []
    cur = simplify(e)
    fact = 1
    for k in range(order + 1):
        if k:
            fact *= k
        c = simplify(subs(cur, "t", ZERO))
        out.append(simplify(Mul(Const(Fraction(1, fact)), c)) if fact != 1 else c)
        if k < order:
            cur = diff(cur, "t")
    return out


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


class Lib:
    """Numeric namespace used by :func:`evaluate`."""

    def __init__(self, sin, cos, sinh, cosh, exp, pi, num: Callable[[Number], Any]):
        self.funcs = {"sin": sin, "cos": cos, "sinh": sinh, "cosh": cosh, "exp": exp}
        self.pi = pi
        self.num = num


MATH = Lib(math.sin, math.cos, math.sinh, math.cosh, math.exp, math.pi, float)
NUMPY = Lib(np.sin, np.cos, np.sinh, np.cosh, np.exp, np.pi, float)


def mpmath_lib():
    import mpmath

    def num(v):
        if isinstance(v, Fraction):
            return mpmath.mpf(v.numerator) / v.denominator
        return mpmath.mpf(v)

    return Lib(mpmath.sin, mpmath.cos, mpmath.sinh, mpmath.cosh, mpmath.exp, mpmath.pi, num)


def evaluate(e: Expr, x, t=0.0, lib: Lib = None):
    """Evaluate ``e`` at ``(x, t)``.

    With the default namespace, scalars use :mod:`math` and arrays use numpy.
    Pass ``lib`` to evaluate with another number type (mpmath, gmpy2).
    """
    if lib is None:
        lib = NUMPY if isinstance(x, np.ndarray) or isinstance(t, np.ndarray) else MATH
    pi = lib.pi() if callable(lib.pi) else lib.pi
    memo: dict = {}

    def go(n: Expr):
        hit = memo.get(id(n))
        if hit is not None:
            return hit
        if isinstance(n, Const):
            r = lib.num(n.value)
        elif isinstance(n, Var):
            r = x if n.name == "x" else t
        elif isinstance(n, Pi):
            r = pi
        elif isinstance(n, Add):
            r = go(n.terms[0])
            for c in n.terms[1:]:
                r = r + go(c)
        elif isinstance(n, Mul):
            r = go(n.factors[0])
            for c in n.factors[1:]:
                r = r * go(c)
        elif isinstance(n, Neg):
            r = -go(n.child)
        elif isinstance(n, Pow):
            r = go(n.base) ** n.exp
        else:
            r = lib.funcs[n.name](go(n.arg))
        memo[id(n)] = r
        return r

    return go(e)


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

_PREC_ADD, _PREC_MUL, _PREC_NEG, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def _num_str(v: Number) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return repr(float(v))


def _fmt(e: Expr) -> Tuple[str, int]:
    if isinstance(e, Const):
        s = _num_str(e.value)
        if s.startswith("-"):
            return s, _PREC_NEG
        if "/" in s:
            return s, _PREC_MUL
        return s, _PREC_ATOM
    if isinstance(e, Var):
        return e.name, _PREC_ATOM
    if isinstance(e, Pi):
        return "pi", _PREC_ATOM
    if isinstance(e, Func):
        return f"{e.name}({_fmt(e.arg)[0]})", _PREC_ATOM
    if isinstance(e, Pow):
        s, p = _fmt(e.base)
        if p < _PREC_ATOM:
            s = f"({s})"
        return f"{s}^{e.exp}", _PREC_POW
    if isinstance(e, Neg):
        s, p = _fmt(e.child)
        if p <= _PREC_NEG:
            s = f"({s})"
        return f"-{s}", _PREC_NEG
    if isinstance(e, Mul):
        fs = e.factors
        if len(fs) > 1 and isinstance(fs[0], Const) and fs[0].value == -1:
            rest, p = _fmt(Mul(*fs[1:]) if len(fs) > 2 else fs[1])
            if p <= _PREC_NEG:
                rest = f"({rest})"
            return "-" + rest, _PREC_NEG
        parts = []
        for i, f in enumerate(fs):
            s, p = _fmt(f)
            # a leading negative constant may stay bare: -3*x parses as -(3*x)
            if p < _PREC_MUL or (p == _PREC_NEG and i > 0):
                s = f"({s})"
            parts.append(s)
        text = "*".join(parts)
        return text, _PREC_NEG if text.startswith("-") else _PREC_MUL
    if isinstance(e, Add):
        out = _fmt(e.terms[0])[0]
        for term in e.terms[1:]:
            s, p = _fmt(term)
            if s.startswith("-"):
                out += " - " + s[1:]
            else:
                out += " + " + s
        return out, _PREC_ADD
    raise TypeError(type(e).__name__)  # pragma: no cover


def to_string(e: Expr) -> str:
    """Infix text that :func:`telegraph_taylor.parser.parse` reads back."""
    return _fmt(e)[0]


def count_nodes(e: Expr) -> int:
    return e.size


def walk(e: Expr) -> Iterable[Expr]:
    stack = [e]
    while stack:
        n = stack.pop()
        yield n
        stack.extend(n.children())


from .parser import parse  # noqa: E402  (parser depends on the node classes)

__all__ = [
    "Expr", "Const", "Var", "Pi", "Add", "Mul", "Neg", "Pow", "Func",
    "Sin", "Cos", "Sinh", "Cosh", "Exp", "X", "T", "PI",
    "diff", "simplify", "subs", "t_taylor_coeffs", "evaluate", "parse",
    "to_string", "is_zero", "as_constant", "ExpressionTooLarge", "Lib",
    "MATH", "NUMPY", "mpmath_lib", "MAX_NODES",
]
