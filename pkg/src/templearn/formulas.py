"""Formula ASTs for linear-time and branching-time temporal logic.

The linear-time grammar is

    f ::= p | ! f | X f | F f | G f
        | f & f | f "|" f | f -> f | f <-> f
        | f U f | f R f | f W f | f M f

and the branching-time grammar keeps boolean structure but allows temporal
operators only directly under a path quantifier (E or A).  Propositions are
shared between the two logics, so a bare `Prop` is a valid formula of either.

Size is always measured as the number of *distinct* sub-formulas (the size of
the syntax DAG), not the number of nodes of the syntax tree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

NOT, NEXT, EVENTUALLY, ALWAYS = "!", "X", "F", "G"
AND, OR, IMPLIES, IFF = "&", "|", "->", "<->"
UNTIL, RELEASE, WEAK_UNTIL, STRONG_RELEASE = "U", "R", "W", "M"
EXISTS, FORALL = "E", "A"

UNARY_OPS = (NOT, NEXT, EVENTUALLY, ALWAYS)
LOGICAL_BINARY_OPS = (AND, OR, IMPLIES, IFF)
TEMPORAL_BINARY_OPS = (UNTIL, RELEASE, WEAK_UNTIL, STRONG_RELEASE)
BINARY_OPS = LOGICAL_BINARY_OPS + TEMPORAL_BINARY_OPS
TEMPORAL_UNARY_OPS = (NEXT, EVENTUALLY, ALWAYS)
QUANTIFIERS = (EXISTS, FORALL)

# Canonical operator order used for deterministic tie-breaking.
OP_RANK = {op: i for i, op in enumerate(UNARY_OPS + BINARY_OPS)}
QUANTIFIER_RANK = {EXISTS: 0, FORALL: 1}

RESERVED_WORDS = frozenset(
    TEMPORAL_UNARY_OPS + TEMPORAL_BINARY_OPS + QUANTIFIERS
)

_PROP_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

# Spelled-out operator names accepted on the command line.
OP_NAMES = {
    "NOT": NOT, "X": NEXT, "F": EVENTUALLY, "G": ALWAYS,
    "AND": AND, "OR": OR, "IMPLIES": IMPLIES, "IFF": IFF,
    "U": UNTIL, "R": RELEASE, "W": WEAK_UNTIL, "M": STRONG_RELEASE,
    "E": EXISTS, "A": FORALL,
}


class FormulaSyntaxError(ValueError):
    """Raised on malformed formula text; `position` is a 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


def validate_proposition(name: str) -> str:
    """Check that `name` is a legal proposition and return it."""
    if not _PROP_RE.match(name):
        raise ValueError(f"illegal proposition name {name!r}")
    if name in RESERVED_WORDS:
        raise ValueError(f"proposition name {name!r} is a reserved word")
    return name


class Formula:
    """Base class of all formula nodes.  Nodes are immutable and hashable."""

    __slots__ = ("_hash",)

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return print_formula(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({print_formula(self)!r})"


class Prop(Formula):
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = validate_proposition(name)
        self._hash = hash(("p", name))

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return type(other) is Prop and self.name == other.name

    __hash__ = Formula.__hash__


class LtlUnary(Formula):
    __slots__ = ("op", "child")

    def __init__(self, op: str, child: "LtlFormula"):
        if op not in UNARY_OPS:
            raise ValueError(f"unknown unary operator {op!r}")
        self.op = op
        self.child = child
        self._hash = hash(("lu", op, child._hash))

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return (
            type(other) is LtlUnary
            and self._hash == other._hash
            and self.op == other.op
            and self.child == other.child
        )

    __hash__ = Formula.__hash__


class LtlBinary(Formula):
    __slots__ = ("op", "left", "right")

    def __init__(self, op: str, left: "LtlFormula", right: "LtlFormula"):
        if op not in BINARY_OPS:
            raise ValueError(f"unknown binary operator {op!r}")
        self.op = op
        self.left = left
        self.right = right
        self._hash = hash(("lb", op, left._hash, right._hash))

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return (
            type(other) is LtlBinary
            and self._hash == other._hash
            and self.op == other.op
            and self.left == other.left
            and self.right == other.right
        )

    __hash__ = Formula.__hash__


class CtlNot(Formula):
    __slots__ = ("child",)

    def __init__(self, child: "CtlFormula"):
        self.child = child
        self._hash = hash(("cn", child._hash))

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return type(other) is CtlNot and self.child == other.child

    __hash__ = Formula.__hash__


class CtlBinary(Formula):
    """Boolean connective between two state formulas."""

    __slots__ = ("op", "left", "right")

    def __init__(self, op: str, left: "CtlFormula", right: "CtlFormula"):
        if op not in LOGICAL_BINARY_OPS:
            raise ValueError(f"operator {op!r} needs a path quantifier here")
        self.op = op
        self.left = left
        self.right = right
        self._hash = hash(("cb", op, left._hash, right._hash))

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return (
            type(other) is CtlBinary
            and self._hash == other._hash
            and self.op == other.op
            and self.left == other.left
            and self.right == other.right
        )

    __hash__ = Formula.__hash__


class CtlQuantUnary(Formula):
    """A quantified unary path formula such as `E X f` or `A G f`."""

    __slots__ = ("quantifier", "op", "child")

    def __init__(self, quantifier: str, op: str, child: "CtlFormula"):
        if quantifier not in QUANTIFIERS:
            raise ValueError(f"unknown path quantifier {quantifier!r}")
        if op not in TEMPORAL_UNARY_OPS:
            raise ValueError(f"{op!r} is not a unary temporal operator")
        self.quantifier = quantifier
        self.op = op
        self.child = child
        self._hash = hash(("cqu", quantifier, op, child._hash))

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return (
            type(other) is CtlQuantUnary
            and self._hash == other._hash
            and self.quantifier == other.quantifier
            and self.op == other.op
            and self.child == other.child
        )

    __hash__ = Formula.__hash__


class CtlQuantBinary(Formula):
    """A quantified binary path formula such as `E (f U g)`."""

    __slots__ = ("quantifier", "op", "left", "right")

    def __init__(self, quantifier: str, op: str,
                 left: "CtlFormula", right: "CtlFormula"):
        if quantifier not in QUANTIFIERS:
            raise ValueError(f"unknown path quantifier {quantifier!r}")
        if op not in TEMPORAL_BINARY_OPS:
            raise ValueError(f"{op!r} is not a binary temporal operator")
        self.quantifier = quantifier
        self.op = op
        self.left = left
        self.right = right
        self._hash = hash(("cqb", quantifier, op, left._hash, right._hash))

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return (
            type(other) is CtlQuantBinary
            and self._hash == other._hash
            and self.quantifier == other.quantifier
            and self.op == other.op
            and self.left == other.left
            and self.right == other.right
        )

    __hash__ = Formula.__hash__


LtlFormula = Union[Prop, LtlUnary, LtlBinary]
CtlFormula = Union[Prop, CtlNot, CtlBinary, CtlQuantUnary, CtlQuantBinary]

_LTL_TYPES = (Prop, LtlUnary, LtlBinary)
_CTL_TYPES = (Prop, CtlNot, CtlBinary, CtlQuantUnary, CtlQuantBinary)


def is_ltl(f: Formula) -> bool:
    return isinstance(f, _LTL_TYPES)


def is_ctl(f: Formula) -> bool:
    return isinstance(f, _CTL_TYPES)


def children(f: Formula) -> tuple:
    """Immediate sub-formulas of `f`.

    For a quantified temporal node the children are its state-formula
    arguments; the path formula under the quantifier is not itself a member
    of the sub-formula closure.
    """
    if type(f) is Prop:
        return ()
    if type(f) is LtlUnary or type(f) is CtlNot or type(f) is CtlQuantUnary:
        return (f.child,)
    return (f.left, f.right)


def subformulas(f: Formula) -> frozenset:
    """The sub-formula closure of `f`, as a set of distinct nodes."""
    seen = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g not in seen:
            seen.add(g)
            stack.extend(children(g))
    return frozenset(seen)


def size(f: Formula) -> int:
    """DAG size of `f`: the number of distinct sub-formulas."""
    return len(subformulas(f))


def prop_names(f: Formula) -> frozenset:
    """Names of the propositions occurring in `f`."""
    return frozenset(g.name for g in subformulas(f) if type(g) is Prop)


@dataclass(frozen=True)
class OperatorSet:
    """The operators a formula may use.

    `unary` and `binary` are sets of operator tokens; `quantifiers` restricts
    the path quantifiers available in branching-time formulas.  Propositions
    are always permitted.
    """

    unary: frozenset = frozenset(UNARY_OPS)
    binary: frozenset = frozenset(BINARY_OPS)
    quantifiers: frozenset = frozenset(QUANTIFIERS)

    def __post_init__(self):
        object.__setattr__(self, "unary", frozenset(self.unary))
        object.__setattr__(self, "binary", frozenset(self.binary))
        object.__setattr__(self, "quantifiers", frozenset(self.quantifiers))
        bad = (
            (self.unary - set(UNARY_OPS))
            | (self.binary - set(BINARY_OPS))
            | (self.quantifiers - set(QUANTIFIERS))
        )
        if bad:
            raise ValueError(f"unknown operators: {sorted(bad)}")

    @classmethod
    def full(cls) -> "OperatorSet":
        return cls()

    @classmethod
    def from_names(cls, names) -> "OperatorSet":
        """Build a set from operator tokens (`|`, `!`, `U`) or spelled-out
        names (`OR`, `NOT`, `E`)."""
        all_ops = set(UNARY_OPS) | set(BINARY_OPS) | set(QUANTIFIERS)
        unary, binary, quantifiers = set(), set(), set()
        for raw in names:
            name = raw.strip()
            if not name:
                continue
            if name in all_ops:
                op = name
            else:
                op = OP_NAMES.get(name.upper())
            if op is None:
                raise ValueError(f"unknown operator name {raw!r}")
            if op in UNARY_OPS:
                unary.add(op)
            elif op in BINARY_OPS:
                binary.add(op)
            else:
                quantifiers.add(op)
        return cls(frozenset(unary), frozenset(binary), frozenset(quantifiers))


def conforms(f: Formula, operators: OperatorSet) -> bool:
    """True iff every operator used by `f` is allowed by `operators`."""
    for g in subformulas(f):
        t = type(g)
        if t is Prop:
            continue
        if t is LtlUnary:
            if g.op not in operators.unary:
                return False
        elif t is LtlBinary or t is CtlBinary:
            if g.op not in operators.binary:
                return False
        elif t is CtlNot:
            if NOT not in operators.unary:
                return False
        elif t is CtlQuantUnary:
            if g.quantifier not in operators.quantifiers or g.op not in operators.unary:
                return False
        else:
            if g.quantifier not in operators.quantifiers or g.op not in operators.binary:
                return False
    return True


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"->|<->|[!&|()]|[A-Za-z_][A-Za-z0-9_]*")


def _tokenize(text: str):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        tokens.append((m.group(), pos))
        pos = m.end()
    tokens.append(("", n))  # end marker
    return tokens


class _Parser:
    """Shared recursive-descent machinery for both logics.

    Binding strength, loosest first: <-> , -> , | , & , (U R W M) , prefix
    operators.  `->`, `<->` and the binary temporal operators associate to
    the right, `&` and `|` to the left.
    """

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self) -> str:
        return self.tokens[self.index][0]

    def pos(self) -> int:
        return self.tokens[self.index][1]

    def advance(self) -> str:
        tok = self.tokens[self.index][0]
        self.index += 1
        return tok

    def expect(self, tok: str):
        if self.peek() != tok:
            raise FormulaSyntaxError(
                f"expected {tok!r} but found {self.peek() or 'end of input'!r}",
                self.pos(),
            )
        self.advance()

    def fail(self, message: str):
        raise FormulaSyntaxError(message, self.pos())

    def parse(self):
        f = self.iff()
        if self.peek():
            self.fail(f"unexpected token {self.peek()!r}")
        return f

    def iff(self):
        left = self.implies()
        if self.peek() == IFF:
            self.advance()
            return self.make_binary(IFF, left, self.iff())
        return left

    def implies(self):
        left = self.disjunction()
        if self.peek() == IMPLIES:
            self.advance()
            return self.make_binary(IMPLIES, left, self.implies())
        return left

    def disjunction(self):
        f = self.conjunction()
        while self.peek() == OR:
            self.advance()
            f = self.make_binary(OR, f, self.conjunction())
        return f

    def conjunction(self):
        f = self.until()
        while self.peek() == AND:
            self.advance()
            f = self.make_binary(AND, f, self.until())
        return f

    def until(self):
        left = self.unary()
        if self.peek() in TEMPORAL_BINARY_OPS:
            op = self.advance()
            return self.make_temporal_binary(op, left, self.until())
        return left

    def atom(self):
        tok = self.peek()
        if tok == "(":
            self.advance()
            f = self.iff()
            self.expect(")")
            return f
        if tok == "":
            self.fail("unexpected end of input")
        if tok in RESERVED_WORDS or not _PROP_RE.match(tok):
            self.fail(f"unexpected token {tok!r}")
        self.advance()
        return Prop(tok)

    # Hooks specialised per logic.
    def unary(self):
        raise NotImplementedError

    def make_binary(self, op, left, right):
        raise NotImplementedError

    def make_temporal_binary(self, op, left, right):
        raise NotImplementedError


class _LtlParser(_Parser):
    def unary(self):
        tok = self.peek()
        if tok in UNARY_OPS:
            self.advance()
            return LtlUnary(tok, self.unary())
        if tok in QUANTIFIERS:
            self.fail(f"path quantifier {tok!r} is not part of this logic")
        return self.atom()

    def make_binary(self, op, left, right):
        return LtlBinary(op, left, right)

    make_temporal_binary = make_binary


class _CtlParser(_Parser):
    def parse(self):
        f = self.iff()
        if self.peek():
            if self.peek() in TEMPORAL_BINARY_OPS:
                self.fail(f"temporal operator {self.peek()!r} requires a "
                          f"path quantifier")
            self.fail(f"unexpected token {self.peek()!r}")
        return f

    def until(self):
        # Binary temporal operators are not connectives here; they appear
        # only as the separator inside a quantified group, consumed by
        # `quantified`.
        return self.unary()

    def unary(self):
        tok = self.peek()
        if tok == NOT:
            self.advance()
            return CtlNot(self.unary())
        if tok in QUANTIFIERS:
            return self.quantified()
        if tok in TEMPORAL_UNARY_OPS or tok in TEMPORAL_BINARY_OPS:
            self.fail(f"temporal operator {tok!r} requires a path quantifier")
        return self.atom()

    def quantified(self):
        quantifier = self.advance()
        tok = self.peek()
        if tok in TEMPORAL_UNARY_OPS:
            self.advance()
            return CtlQuantUnary(quantifier, tok, self.unary())
        if tok == "(":
            self.advance()
            left = self.iff()
            op = self.peek()
            if op not in TEMPORAL_BINARY_OPS:
                self.fail("expected a binary temporal operator")
            self.advance()
            right = self.iff()
            self.expect(")")
            return CtlQuantBinary(quantifier, op, left, right)
        self.fail(f"expected a temporal operator after {quantifier!r}")

    def make_binary(self, op, left, right):
        return CtlBinary(op, left, right)

    def make_temporal_binary(self, op, left, right):
        self.fail(f"temporal operator {op!r} requires a path quantifier")


def parse_ltl(text: str) -> LtlFormula:
    """Parse the linear-time formula in `text`."""
    return _LtlParser(text).parse()


def parse_ctl(text: str) -> CtlFormula:
    """Parse the branching-time formula in `text`."""
    return _CtlParser(text).parse()


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

_ATOM_LEVEL = 7
_UNARY_LEVEL = 6
_BINARY_LEVEL = {
    IFF: 1, IMPLIES: 2, OR: 3, AND: 4,
    UNTIL: 5, RELEASE: 5, WEAK_UNTIL: 5, STRONG_RELEASE: 5,
}
_RIGHT_ASSOC = frozenset((IFF, IMPLIES, UNTIL, RELEASE, WEAK_UNTIL, STRONG_RELEASE))


def _fmt_binary(op: str, left, right) -> tuple:
    level = _BINARY_LEVEL[op]
    lt, ll = _fmt(left)
    rt, rl = _fmt(right)
    if ll < level or (ll == level and op in _RIGHT_ASSOC):
        lt = f"({lt})"
    if rl < level or (rl == level and op not in _RIGHT_ASSOC):
        rt = f"({rt})"
    return f"{lt} {op} {rt}", level


def _fmt_unary(op: str, child) -> tuple:
    text, level = _fmt(child)
    if level < _UNARY_LEVEL:
        text = f"({text})"
    if op == NOT:
        return f"!{text}", _UNARY_LEVEL
    return f"{op} {text}", _UNARY_LEVEL


def _fmt(f: Formula) -> tuple:
    t = type(f)
    if t is Prop:
        return f.name, _ATOM_LEVEL
    if t is LtlUnary:
        return _fmt_unary(f.op, f.child)
    if t is LtlBinary or t is CtlBinary:
        return _fmt_binary(f.op, f.left, f.right)
    if t is CtlNot:
        return _fmt_unary(NOT, f.child)
    if t is CtlQuantUnary:
        text, level = _fmt(f.child)
        if level < _UNARY_LEVEL:
            text = f"({text})"
        return f"{f.quantifier} {f.op} {text}", _UNARY_LEVEL
    if t is CtlQuantBinary:
        lt, _ = _fmt(f.left)
        rt, _ = _fmt(f.right)
        return f"{f.quantifier} ({lt} {f.op} {rt})", _ATOM_LEVEL
    raise TypeError(f"not a formula: {f!r}")


def print_formula(f: Formula) -> str:
    """Render `f` with the minimal parenthesisation that re-parses to `f`."""
    return _fmt(f)[0]


def structural_key(f: Formula) -> str:
    """A total-order key on formulas.

    Propositions order by name and come before compound nodes; compound nodes
    order by operator (prefix operators, then boolean connectives, then
    binary temporal operators, with E before A on quantified nodes) and then
    by their children, left to right.  Distinct formulas get distinct keys.
    """
    parts = []

    def emit(g):
        t = type(g)
        if t is Prop:
            parts.append("0" + g.name + ";")
        elif t is LtlUnary:
            parts.append("1" + chr(65 + OP_RANK[g.op]))
            emit(g.child)
        elif t is CtlNot:
            parts.append("1" + chr(65 + OP_RANK[NOT]))
            emit(g.child)
        elif t is LtlBinary or t is CtlBinary:
            parts.append("1" + chr(65 + OP_RANK[g.op]))
            emit(g.left)
            emit(g.right)
        elif t is CtlQuantUnary:
            parts.append("1" + chr(65 + OP_RANK[g.op]) + str(QUANTIFIER_RANK[g.quantifier]))
            emit(g.child)
        else:
            parts.append("1" + chr(65 + OP_RANK[g.op]) + str(QUANTIFIER_RANK[g.quantifier]))
            emit(g.left)
            emit(g.right)

    emit(f)
    return "".join(parts)
