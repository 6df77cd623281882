"""Recursive-descent parser and printer for the expression language.

Grammar (``*`` binds tighter than ``+``; prefix operators bind tighter than ``*``)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | 'd' '[' idx (',' idx)* (';' label)? ']' unary
             | 'box' '[' label ']' unary | postfix
    postfix := primary ( '(' label ')' | '^' INT )*
    primary := INT | 'i' | 'hbar' | 'm2' | '(' expr ')'
             | 'phi' | 'phis' | 'L' | 'Q' | 'j' '[' idx ']'
             | KERNEL '(' label '-' label ')' | 'g' '[' idx ',' idx ']'
             | FUNC ('[' idx ']')? '(' expr (',' expr)* ')'

with ``KERNEL`` in {DP, DF, D, delta} and ``FUNC`` in {tproduct, star, fstar,
comm, poisson, vev, theta, thetamu, beta}.  Atoms written without a point
label sit at a placeholder point until a postfix ``(x1)`` places them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .coeff import GaussQ, I
from .expr import DELTA_COMM, DELTA_F, DELTA_PLUS, DIRAC, Expr, fresh_index, all_indices
from .fields import charge_conjugate, current, interaction, noether_q, phi, phis, theta, theta_mu
from .kernels import differentiate
from .wick import poisson_bracket, star_commutator, star_product, unrenormalized_tproduct, vev

PLACEHOLDER = "_"

KERNELS = {"DP": DELTA_PLUS, "DF": DELTA_F, "D": DELTA_COMM, "delta": DIRAC}
FUNCS = {"tproduct": None, "star": 2, "fstar": 2, "comm": 2, "poisson": 2, "vev": 1,
         "theta": 1, "thetamu": 1, "beta": 1}
ATOMS = {"phi", "phis", "L", "Q", "j"}
SCALARS = {"i", "hbar", "m2"}
RESERVED = ATOMS | SCALARS | set(KERNELS) | set(FUNCS) | {"d", "box", "g"}


class ParseError(ValueError):
    def __init__(self, message, position=None, expected=()):
        self.position = position
        self.expected = tuple(expected)
        where = f" at position {position}" if position is not None else ""
        exp = f" (expected {', '.join(expected)})" if expected else ""
        super().__init__(f"{message}{where}{exp}")


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Sym:
    name: str  # i, hbar, m2


@dataclass(frozen=True)
class Atom:
    name: str
    index: str | None = None


@dataclass(frozen=True)
class Kernel:
    kind: str
    first: str
    second: str


@dataclass(frozen=True)
class Metric:
    a: str
    b: str


@dataclass(frozen=True)
class Neg:
    child: object


@dataclass(frozen=True)
class Deriv:
    indices: tuple
    label: str | None
    child: object


@dataclass(frozen=True)
class Box:
    label: str
    child: object


@dataclass(frozen=True)
class At:
    child: object
    label: str


@dataclass(frozen=True)
class Pow:
    child: object
    exponent: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple
    index: str | None = None


# ---------------------------------------------------------------------------
# tokenizer

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def tokenize(text):
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        if m.group(1):
            toks.append(("INT", m.group(1), m.start(1)))
        elif m.group(2):
            toks.append(("ID", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "()[],;+-*/^":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            toks.append((ch, ch, m.start(3)))
        pos = m.end()
    toks.append(("EOF", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.pos = 0

    def peek(self, k=0):
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind, what=None):
        t = self.peek()
        if t[0] != kind:
            raise ParseError(f"unexpected {t[1] or 'end of input'!r}", t[2], [what or kind])
        return self.next()

    def ident(self, what="identifier"):
        t = self.peek()
        if t[0] != "ID":
            raise ParseError(f"unexpected {t[1] or 'end of input'!r}", t[2], [what])
        return self.next()[1]

    def label(self):
        t = self.peek()
        name = self.ident("point label")
        if name in RESERVED or name.startswith("_"):
            raise ParseError(f"{name!r} cannot be used as a point label", t[2])
        return name

    # grammar -----------------------------------------------------------
    def parse(self):
        node = self.expr()
        t = self.peek()
        if t[0] != "EOF":
            raise ParseError(f"unexpected {t[1]!r}", t[2], ["operator", "end of input"])
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] in "+-" and self.peek()[0] != "EOF":
            op = self.next()[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.next()[0]
            node = BinOp(op, node, self.unary())
        return node

    def index_list(self, arity=None, allow_label=False):
        self.expect("[")
        idx = [self.ident("index")]
        while self.peek()[0] == ",":
            self.next()
            idx.append(self.ident("index"))
        label = None
        if allow_label and self.peek()[0] == ";":
            self.next()
            label = self.label()
        t = self.expect("]", "]")
        if arity is not None and len(idx) != arity:
            raise ParseError(f"expected {arity} index(es), got {len(idx)}", t[2])
        return idx, label

    def unary(self):
        t = self.peek()
        if t[0] == "-":
            self.next()
            return Neg(self.unary())
        if t[0] == "ID" and t[1] == "d" and self.peek(1)[0] == "[":
            self.next()
            idx, label = self.index_list(allow_label=True)
            return Deriv(tuple(idx), label, self.unary())
        if t[0] == "ID" and t[1] == "box" and self.peek(1)[0] == "[":
            self.next()
            self.expect("[")
            label = self.label()
            self.expect("]")
            return Box(label, self.unary())
        return self.postfix()

    def postfix(self):
        node = self.primary()
        while True:
            t = self.peek()
            if t[0] == "(" and self.peek(1)[0] == "ID" and self.peek(2)[0] == ")":
                self.next()
                lab = self.label()
                self.next()
                node = At(node, lab)
            elif t[0] == "^":
                self.next()
                n = self.expect("INT", "integer exponent")
                node = Pow(node, int(n[1]))
            else:
                return node

    def primary(self):
        t = self.peek()
        if t[0] == "INT":
            self.next()
            return Num(int(t[1]))
        if t[0] == "(":
            self.next()
            node = self.expr()
            self.expect(")", ")")
            return node
        if t[0] != "ID":
            raise ParseError(f"unexpected {t[1] or 'end of input'!r}", t[2],
                             ["number", "field", "kernel", "function", "("])
        name = t[1]
        if name in SCALARS:
            self.next()
            return Sym(name)
        if name in ATOMS:
            self.next()
            if name == "j":
                if self.peek()[0] != "[":
                    raise ParseError("the current needs exactly one index, as in j[mu]", t[2])
                idx, _ = self.index_list(arity=1)
                return Atom("j", idx[0])
            if self.peek()[0] == "[":
                raise ParseError(f"{name} takes no index", self.peek()[2])
            return Atom(name)
        if name in KERNELS:
            self.next()
            self.expect("(")
            a = self.label()
            self.expect("-", "-")
            b = self.label()
            self.expect(")", ")")
            return Kernel(name, a, b)
        if name == "g":
            self.next()
            idx, _ = self.index_list(arity=2)
            return Metric(idx[0], idx[1])
        if name in FUNCS:
            self.next()
            index = None
            if name == "thetamu":
                index = self.index_list(arity=1)[0][0]
            elif self.peek()[0] == "[":
                raise ParseError(f"{name} takes no index", self.peek()[2])
            self.expect("(", "(")
            args = [self.expr()]
            while self.peek()[0] == ",":
                self.next()
                args.append(self.expr())
            end = self.expect(")", ")")
            want = FUNCS[name]
            if want is not None and len(args) != want:
                raise ParseError(f"{name} takes {want} argument(s), got {len(args)}", end[2])
            return Call(name, tuple(args), index)
        raise ParseError(f"unknown identifier {name!r}", t[2])


def parse(text: str):
    """Parse text into an AST."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# printer

_PREC_ADD, _PREC_MUL, _PREC_PREFIX, _PREC_POSTFIX, _PREC_ATOM = 1, 2, 3, 4, 5


def _prec(node):
    if isinstance(node, BinOp):
        return _PREC_ADD if node.op in "+-" else _PREC_MUL
    if isinstance(node, (Neg, Deriv, Box)):
        return _PREC_PREFIX
    if isinstance(node, (At, Pow)):
        return _PREC_POSTFIX
    return _PREC_ATOM


def _wrap(node, min_prec):
    s = to_text(node)
    return f"({s})" if _prec(node) < min_prec else s


def to_text(node) -> str:
    """Print an AST so that ``parse(to_text(ast)) == ast``."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Atom):
        return f"j[{node.index}]" if node.name == "j" else node.name
    if isinstance(node, Kernel):
        return f"{node.kind}({node.first}-{node.second})"
    if isinstance(node, Metric):
        return f"g[{node.a},{node.b}]"
    if isinstance(node, Neg):
        return "-" + _wrap(node.child, _PREC_PREFIX)
    if isinstance(node, Deriv):
        lab = f";{node.label}" if node.label else ""
        return f"d[{','.join(node.indices)}{lab}] " + _wrap(node.child, _PREC_PREFIX)
    if isinstance(node, Box):
        return f"box[{node.label}] " + _wrap(node.child, _PREC_PREFIX)
    if isinstance(node, At):
        return _wrap(node.child, _PREC_POSTFIX) + f"({node.label})"
    if isinstance(node, Pow):
        return _wrap(node.child, _PREC_POSTFIX) + f"^{node.exponent}"
    if isinstance(node, BinOp):
        p = _prec(node)
        sep = f" {node.op} " if node.op in "+-" else f" {node.op} "
        return _wrap(node.left, p) + sep + _wrap(node.right, p + 1)
    if isinstance(node, Call):
        idx = f"[{node.index}]" if node.index else ""
        return f"{node.name}{idx}(" + ", ".join(to_text(a) for a in node.args) + ")"
    raise TypeError(f"not an AST node: {node!r}")


# ---------------------------------------------------------------------------
# evaluation


def _only_label(e: Expr, what):
    labs = e.labels()
    if len(labs) != 1:
        raise ParseError(f"{what} needs an explicit point label (found {sorted(labs) or 'none'})")
    return next(iter(labs))


def _scalar_value(e: Expr):
    if len(e.terms) != 1:
        raise ParseError("division is only defined by a nonzero number")
    (key, c), = e.terms.items()
    if key != (0, 0, (), (), ()):
        raise ParseError("division is only defined by a nonzero number")
    return c


def evaluate(node, eta=1) -> Expr:
    """Evaluate an AST to a canonical expression."""
    ev = lambda n: evaluate(n, eta)  # noqa: E731
    if isinstance(node, Num):
        return Expr.scalar(node.value)
    if isinstance(node, Sym):
        if node.name == "i":
            return Expr.scalar(I)
        if node.name == "hbar":
            return Expr.scalar(1, hbar_power=1)
        return Expr.scalar(1, mass2_power=1)
    if isinstance(node, Atom):
        return {
            "phi": lambda: phi(PLACEHOLDER),
            "phis": lambda: phis(PLACEHOLDER),
            "L": lambda: interaction(PLACEHOLDER),
            "Q": lambda: noether_q(PLACEHOLDER),
            "j": lambda: current(node.index, PLACEHOLDER),
        }[node.name]()
    if isinstance(node, Kernel):
        return Expr.kernel(KERNELS[node.kind], node.first, node.second)
    if isinstance(node, Metric):
        return Expr.metric(node.a, node.b)
    if isinstance(node, Neg):
        return -ev(node.child)
    if isinstance(node, Deriv):
        e = ev(node.child)
        label = node.label or _only_label(e, "a derivative")
        for idx in node.indices:
            e = differentiate(e, label, idx)
        return e
    if isinstance(node, Box):
        e = ev(node.child)
        k = fresh_index(all_indices(e), "_b")
        return differentiate(differentiate(e, node.label, k), node.label, k)
    if isinstance(node, At):
        e = ev(node.child)
        if PLACEHOLDER not in e.labels():
            raise ParseError(f"nothing left to place at {node.label!r}")
        return e.relabel({PLACEHOLDER: node.label})
    if isinstance(node, Pow):
        return ev(node.child) ** node.exponent
    if isinstance(node, BinOp):
        a, b = ev(node.left), ev(node.right)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        c = _scalar_value(b)
        if not c:
            raise ParseError("division by zero")
        return a.scale(GaussQ(1) / c)
    if isinstance(node, Call):
        args = [ev(a) for a in node.args]
        name = node.name
        if name == "tproduct":
            return unrenormalized_tproduct(args)
        if name == "star":
            return star_product(*args)
        if name == "fstar":
            return star_product(*args, kind=DELTA_F)
        if name == "comm":
            return star_commutator(*args)
        if name == "poisson":
            return poisson_bracket(*args)
        if name == "vev":
            return vev(args[0])
        if name == "theta":
            return theta(args[0])
        if name == "thetamu":
            return theta_mu(args[0], node.index)
        if name == "beta":
            return charge_conjugate(args[0], eta)
    raise TypeError(f"not an AST node: {node!r}")


def parse_expr(text: str, eta=1) -> Expr:
    """Parse and evaluate in one step."""
    return evaluate(parse(text), eta)
