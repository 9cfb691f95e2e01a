"""Shorthand coefficient expressions over named parameter sets.

A tiny recursive-descent grammar mirrors the product shorthand used for the
identity coefficients: calls g/f/h(A,B) expand to pairwise products over the
bound sets, unary vacuum-ratio functions (r1, r3, part-tagged variants) expand
to one-set products, K(A|B) is the domain-wall partition function, and '*',
'/', unary '-', integer literals and '(expr)^n' compose them. Singletons are
one-element sets; there is no scalar/set overloading.

Also hosts the partition enumerator behind every shorthand summation: a
PartitionSpec names the disjoint parts of a source set with fixed or free
cardinalities, and enumerate_partitions yields one Binding per admissible
assignment, in lexicographic order of element indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .rational import ONE
from .scalars import izergin, prod_pairs, prod_unary
from . import scalars


class ExprSyntaxError(ValueError):
    def __init__(self, message, offset):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset  # 1-based position in the source text


class UnboundName(KeyError):
    pass


class UnsatisfiableSpec(ValueError):
    pass


# --- AST ----------------------------------------------------------------

@dataclass(frozen=True)
class Lit:
    value: int


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple  # set names; K uses exactly (vset, uset)


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Div:
    left: object
    right: object


# --- parser ---------------------------------------------------------------

class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, expected):
        raise ExprSyntaxError(f"expected {expected}", self.pos + 1)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\n":
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        if self.peek() != ch:
            self.error(repr(ch))
        self.pos += 1

    def name(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        if self.pos == start:
            self.error("identifier")
        return self.text[start:self.pos]

    def integer(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("integer")
        return int(self.text[start:self.pos])

    def expr(self):
        node = self.factor()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                node = Mul(node, self.factor())
            elif ch == "/":
                self.pos += 1
                node = Div(node, self.factor())
            else:
                return node

    def factor(self):
        ch = self.peek()
        if ch == "-":
            self.pos += 1
            return Neg(self.factor())
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            self.take(")")
            if self.peek() == "^":
                self.pos += 1
                return Pow(inner, self.integer())
            return inner
        if ch.isdigit():
            return Lit(self.integer())
        ident = self.name()
        self.take("(")
        if ident == "K":
            vset = self.name()
            self.take("|")
            uset = self.name()
            self.take(")")
            return Call("K", (vset, uset))
        args = [self.name()]
        while self.peek() == ",":
            self.pos += 1
            args.append(self.name())
        self.take(")")
        return Call(ident, tuple(args))


def parse(text: str):
    p = _Parser(text)
    node = p.expr()
    p.skip_ws()
    if p.pos != len(text):
        p.error("end of input")
    return node


def print_expr(node) -> str:
    if isinstance(node, Lit):
        return str(node.value)
    if isinstance(node, Call):
        if node.name == "K":
            return f"K({node.args[0]}|{node.args[1]})"
        return f"{node.name}({','.join(node.args)})"
    if isinstance(node, Neg):
        return f"-{print_expr(node.arg)}"
    if isinstance(node, Pow):
        return f"({print_expr(node.base)})^{node.exponent}"
    if isinstance(node, (Mul, Div)):
        op = "*" if isinstance(node, Mul) else "/"
        left = print_expr(node.left)
        right = print_expr(node.right)
        if isinstance(node.right, (Mul, Div)):
            right = f"({right})"
        return f"{left}{op}{right}"
    raise TypeError(f"not an expression node: {node!r}")


# --- bindings and evaluation ------------------------------------------------

@dataclass(frozen=True)
class Binding:
    """Named parameter sets plus the ambient constant and ratio functions."""

    sets: dict
    c: object = ONE
    funcs: dict = field(default_factory=dict)

    def with_sets(self, more):
        clash = set(self.sets) & set(more)
        if clash:
            raise ValueError(f"names bound twice: {sorted(clash)}")
        merged = dict(self.sets)
        merged.update({k: tuple(v) for k, v in more.items()})
        return Binding(merged, self.c, self.funcs)

    def resolve(self, name):
        try:
            return self.sets[name]
        except KeyError:
            raise UnboundName(name) from None


_PAIR = {"g": scalars.g, "f": scalars.f, "h": scalars.h}


def eval_expr(node, binding: Binding):
    if isinstance(node, Lit):
        return ONE * node.value
    if isinstance(node, Neg):
        return -eval_expr(node.arg, binding)
    if isinstance(node, Pow):
        base = eval_expr(node.base, binding)
        acc = ONE
        for _ in range(node.exponent):
            acc = acc * base
        return acc
    if isinstance(node, Mul):
        return eval_expr(node.left, binding) * eval_expr(node.right, binding)
    if isinstance(node, Div):
        return eval_expr(node.left, binding) / eval_expr(node.right, binding)
    if isinstance(node, Call):
        if node.name == "K":
            vs = binding.resolve(node.args[0])
            us = binding.resolve(node.args[1])
            return izergin(vs, us, binding.c)
        if node.name in _PAIR:
            if len(node.args) != 2:
                raise ValueError(f"{node.name} takes two set arguments")
            left = binding.resolve(node.args[0])
            right = binding.resolve(node.args[1])
            return prod_pairs(_PAIR[node.name], left, right, binding.c)
        if node.name in binding.funcs:
            if len(node.args) != 1:
                raise ValueError(f"{node.name} takes one set argument")
            return prod_unary(binding.funcs[node.name], binding.resolve(node.args[0]))
        raise UnboundName(node.name)
    raise TypeError(f"not an expression node: {node!r}")


def evaluate(text: str, binding: Binding):
    return eval_expr(parse(text), binding)


# --- partition enumeration ---------------------------------------------------

@dataclass(frozen=True)
class PartSpec:
    name: str
    size: object = None  # int for a fixed cardinality, None for free


@dataclass(frozen=True)
class PartitionSpec:
    source: str
    parts: tuple


def _size_vectors(parts, total):
    if len({p.name for p in parts}) != len(parts):
        raise UnsatisfiableSpec(f"duplicate part names in {parts}")
    if any(p.size is not None and p.size < 0 for p in parts):
        raise UnsatisfiableSpec(f"negative part size in {parts}")
    fixed = sum(p.size for p in parts if p.size is not None)
    free_ix = [i for i, p in enumerate(parts) if p.size is None]
    if fixed > total or (not free_ix and fixed != total):
        return []  # summation over an empty family of partitions
    if not free_ix:
        return [tuple(p.size for p in parts)]
    out = []

    def fill(ix, remaining, acc):
        if ix == len(free_ix):
            if remaining == 0:
                sizes = [p.size for p in parts]
                for j, k in zip(free_ix, acc):
                    sizes[j] = k
                out.append(tuple(sizes))
            return
        if ix == len(free_ix) - 1:
            fill(ix + 1, 0, acc + [remaining])
            return
        for k in range(remaining + 1):
            fill(ix + 1, remaining - k, acc + [k])

    fill(0, total - fixed, [])
    return out


def _assignments(universe, sizes):
    # lexicographic by element index, part by part
    def go(indices, k):
        if k == len(sizes):
            yield []
            return
        for chosen in combinations(indices, sizes[k]):
            rest = [i for i in indices if i not in chosen]
            for tail in go(rest, k + 1):
                yield [tuple(universe[i] for i in chosen)] + tail

    yield from go(list(range(len(universe))), 0)


def enumerate_partitions(spec: PartitionSpec, universe, base: Binding = None):
    """All admissible splits of universe into spec.parts, one Binding each."""
    base = base if base is not None else Binding({})
    parts = tuple(spec.parts)
    out = []
    for sizes in _size_vectors(parts, len(universe)):
        for assignment in _assignments(tuple(universe), sizes):
            out.append(base.with_sets({p.name: vals for p, vals in zip(parts, assignment)}))
    return out
