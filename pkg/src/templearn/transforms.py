"""Formula transformations.

* `temporal_eliminate` rewrites a linear-time formula into a temporal-free
  one that agrees with it on every single-letter word, without ever growing
  the set of distinct sub-formulas.
* `strip_quantifiers` / `insert_quantifiers` translate between the two
  logics by removing or adding path quantifiers, preserving size.
* `analyze_conciseness` reports whether a formula is read-once (every binary
  node combines children over disjoint propositions, no unary operators).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .formulas import (
    ALWAYS, AND, EVENTUALLY, NEXT, NOT, OR, RELEASE, STRONG_RELEASE, UNTIL,
    WEAK_UNTIL, LOGICAL_BINARY_OPS, TEMPORAL_BINARY_OPS, TEMPORAL_UNARY_OPS,
    CtlBinary, CtlNot, CtlQuantBinary, CtlQuantUnary, Formula,
    LtlBinary, LtlUnary, Prop, is_ltl, subformulas,
)

_BLOCK_NAME_RE = re.compile(r"^x(\d+)(_bar)?$")


def temporal_eliminate(f: Formula) -> Formula:
    """Remove every temporal operator while preserving single-letter truth.

    Next/eventually/always nodes collapse to their operand, until/release to
    their right operand, weak-until to a disjunction and strong-release to a
    conjunction; logical connectives are kept.  The result's sub-formulas are
    images of the input's sub-formulas, so the size never increases.
    """
    if not is_ltl(f):
        raise TypeError("temporal elimination is defined on linear-time "
                        "formulas only")
    memo: dict = {}

    def go(g):
        r = memo.get(g)
        if r is None:
            t = type(g)
            if t is Prop:
                r = g
            elif t is LtlUnary:
                r = LtlUnary(NOT, go(g.child)) if g.op == NOT else go(g.child)
            else:
                if g.op in (UNTIL, RELEASE):
                    r = go(g.right)
                elif g.op == WEAK_UNTIL:
                    r = LtlBinary(OR, go(g.left), go(g.right))
                elif g.op == STRONG_RELEASE:
                    r = LtlBinary(AND, go(g.left), go(g.right))
                else:
                    r = LtlBinary(g.op, go(g.left), go(g.right))
            memo[g] = r
        return r

    return go(f)


def is_temporal_free(f: Formula) -> bool:
    """True when `f` uses only propositions and logical connectives."""
    for g in subformulas(f):
        t = type(g)
        if t is LtlUnary and g.op in TEMPORAL_UNARY_OPS:
            return False
        if t is LtlBinary and g.op in TEMPORAL_BINARY_OPS:
            return False
        if t is CtlQuantUnary or t is CtlQuantBinary:
            return False
    return True


def strip_quantifiers(f: Formula) -> Formula:
    """Drop every path quantifier, turning a branching-time formula into the
    linear-time formula with the same operator tree (size-preserving)."""
    memo: dict = {}

    def go(g):
        r = memo.get(g)
        if r is None:
            t = type(g)
            if t is Prop:
                r = g
            elif t is CtlNot:
                r = LtlUnary(NOT, go(g.child))
            elif t is CtlBinary:
                r = LtlBinary(g.op, go(g.left), go(g.right))
            elif t is CtlQuantUnary:
                r = LtlUnary(g.op, go(g.child))
            elif t is CtlQuantBinary:
                r = LtlBinary(g.op, go(g.left), go(g.right))
            else:
                raise TypeError("expected a branching-time formula, got "
                                f"{g!r}")
            memo[g] = r
        return r

    return go(f)


def insert_quantifiers(f: Formula, quantifier: str = "E") -> Formula:
    """Prefix every temporal operator with the given path quantifier,
    turning a linear-time formula into a branching-time one of equal size."""
    if quantifier not in ("E", "A"):
        raise ValueError(f"unknown path quantifier {quantifier!r}")
    if not is_ltl(f):
        raise TypeError("quantifier insertion is defined on linear-time "
                        "formulas only")
    memo: dict = {}

    def go(g):
        r = memo.get(g)
        if r is None:
            t = type(g)
            if t is Prop:
                r = g
            elif t is LtlUnary:
                if g.op == NOT:
                    r = CtlNot(go(g.child))
                else:
                    r = CtlQuantUnary(quantifier, g.op, go(g.child))
            else:
                if g.op in LOGICAL_BINARY_OPS:
                    r = CtlBinary(g.op, go(g.left), go(g.right))
                else:
                    r = CtlQuantBinary(quantifier, g.op, go(g.left), go(g.right))
            memo[g] = r
        return r

    return go(f)


@dataclass(frozen=True)
class ConcisenessReport:
    """Outcome of `analyze_conciseness`."""

    is_temporal_free: bool
    is_concise: bool
    propositions_used: frozenset
    per_block_count: dict = field(compare=False)


def infer_blocks(names) -> dict:
    """Group `x<k>` / `x<k>_bar` proposition names into indexed pairs."""
    blocks: dict = {}
    for name in names:
        m = _BLOCK_NAME_RE.match(name)
        if m:
            k = int(m.group(1))
            blocks.setdefault(k, set()).update({f"x{k}", f"x{k}_bar"})
    return blocks


def analyze_conciseness(f: Formula, blocks=None) -> ConcisenessReport:
    """Check the read-once property: a proposition is concise, and a binary
    combination of concise formulas over disjoint proposition sets is
    concise; nothing else is (in particular no unary operator may occur).

    `blocks` optionally maps a block index to its proposition set; when
    omitted, blocks are inferred from `x<k>`/`x<k>_bar` name pairs.
    """
    if not is_ltl(f):
        raise TypeError("conciseness is defined on linear-time formulas only")

    def go(g):
        t = type(g)
        if t is Prop:
            return True, frozenset((g.name,))
        if t is LtlUnary:
            _, props = go(g.child)
            return False, props
        cl, pl = go(g.left)
        cr, pr = go(g.right)
        return cl and cr and not (pl & pr), pl | pr

    concise, used = go(f)
    if blocks is None:
        blocks = infer_blocks(used)
    counts = {k: len(used & frozenset(members))
              for k, members in sorted(blocks.items(), key=lambda kv: str(kv[0]))}
    return ConcisenessReport(
        is_temporal_free=is_temporal_free(f),
        is_concise=concise,
        propositions_used=frozenset(used),
        per_block_count=counts,
    )
