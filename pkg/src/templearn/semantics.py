"""Model checking over lasso words and Kripke structures.

Linear-time formulas are evaluated on the finite set of suffix classes of an
ultimately periodic word.  All sub-formula values are bit vectors (Python
ints) with one bit per suffix class; temporal operators are resolved by
backward propagation, iterating twice around the loop, which is enough for a
least fixpoint on a single cycle.

Branching-time formulas are evaluated by labelling states, with EX, EU and EG
as the trusted core; every other quantified operator is rewritten to these
three through its defining identity.
"""

from __future__ import annotations

from .formulas import (
    AND, ALWAYS, EVENTUALLY, IFF, IMPLIES, NEXT, NOT, OR, RELEASE,
    STRONG_RELEASE, UNTIL, WEAK_UNTIL,
    CtlBinary, CtlNot, CtlQuantBinary, CtlQuantUnary, Formula,
    LtlBinary, LtlUnary, Prop, is_ctl, is_ltl, prop_names,
)
from .models import CTL, LTL, KripkeStructure, Sample, Word


class LtlDomain:
    """A fixed tuple of words over which formula vectors are computed.

    Bit `offset(w) + c` of a vector is the value at suffix class `c` of word
    `w`.  The domain exposes the per-operator vector transformers so that
    callers (the checker, the learner) can build vectors bottom-up.
    """

    def __init__(self, words):
        self.words = tuple(words)
        self.word_layout = []  # (offset, length, global loop start)
        offset = 0
        for w in self.words:
            self.word_layout.append((offset, w.length, offset + w.loop_start))
            offset += w.length
        self.size = offset
        self.full = (1 << offset) - 1
        self.start_bits = [off for off, _, _ in self.word_layout]
        self._x_parts = []
        self._loop_masks = []
        for off, length, gls in self.word_layout:
            body = 0
            for i in range(off, off + length - 1):
                body |= 1 << i
            self._x_parts.append((body, off + length - 1, gls))
            loop_mask = 0
            for i in range(gls, off + length):
                loop_mask |= 1 << i
            self._loop_masks.append(loop_mask)

    def prop_vector(self, name: str) -> int:
        v = 0
        for (off, length, _), w in zip(self.word_layout, self.words):
            for c in range(length):
                if name in w.letter_at(c):
                    v |= 1 << (off + c)
        return v

    # -- vector transformers -------------------------------------------------

    def v_not(self, a: int) -> int:
        return self.full ^ a

    def v_next(self, a: int) -> int:
        r = 0
        for body, last, gls in self._x_parts:
            r |= (a >> 1) & body
            if (a >> gls) & 1:
                r |= 1 << last
        return r

    def v_eventually(self, a: int) -> int:
        r = 0
        for (off, _, gls), loop_mask in zip(self.word_layout, self._loop_masks):
            acc = bool(a & loop_mask)
            if acc:
                r |= loop_mask
            for i in range(gls - 1, off - 1, -1):
                acc = acc or bool((a >> i) & 1)
                if acc:
                    r |= 1 << i
        return r

    def v_always(self, a: int) -> int:
        r = 0
        for (off, _, gls), loop_mask in zip(self.word_layout, self._loop_masks):
            acc = (a & loop_mask) == loop_mask
            if acc:
                r |= loop_mask
            for i in range(gls - 1, off - 1, -1):
                acc = acc and bool((a >> i) & 1)
                if acc:
                    r |= 1 << i
        return r

    def v_until(self, a: int, b: int) -> int:
        r = 0
        for off, length, gls in self.word_layout:
            last = off + length - 1
            cur = 0
            for _ in range(2):  # two sweeps settle the loop fixpoint
                for i in range(last, gls - 1, -1):
                    nxt = i + 1 if i < last else gls
                    if (b >> i) & 1 or (((a >> i) & 1) and ((cur >> nxt) & 1)):
                        cur |= 1 << i
            for i in range(gls - 1, off - 1, -1):
                if (b >> i) & 1 or (((a >> i) & 1) and ((cur >> (i + 1)) & 1)):
                    cur |= 1 << i
            r |= cur
        return r

    def v_release(self, a: int, b: int) -> int:
        return self.full ^ self.v_until(self.full ^ a, self.full ^ b)

    def v_weak_until(self, a: int, b: int) -> int:
        return self.v_until(a, b) | self.v_always(a)

    def v_strong_release(self, a: int, b: int) -> int:
        return self.v_release(a, b) & self.v_eventually(a)

    def unary(self, op: str, a: int) -> int:
        if op == NOT:
            return self.full ^ a
        if op == NEXT:
            return self.v_next(a)
        if op == EVENTUALLY:
            return self.v_eventually(a)
        return self.v_always(a)

    def binary(self, op: str, a: int, b: int) -> int:
        if op == AND:
            return a & b
        if op == OR:
            return a | b
        if op == IMPLIES:
            return (self.full ^ a) | b
        if op == IFF:
            return self.full ^ (a ^ b)
        if op == UNTIL:
            return self.v_until(a, b)
        if op == RELEASE:
            return self.v_release(a, b)
        if op == WEAK_UNTIL:
            return self.v_weak_until(a, b)
        return self.v_strong_release(a, b)

    def evaluate(self, f: Formula) -> int:
        cache: dict = {}

        def go(g) -> int:
            v = cache.get(g)
            if v is None:
                t = type(g)
                if t is Prop:
                    v = self.prop_vector(g.name)
                elif t is LtlUnary:
                    v = self.unary(g.op, go(g.child))
                elif t is LtlBinary:
                    v = self.binary(g.op, go(g.left), go(g.right))
                else:
                    raise TypeError(f"not a linear-time formula: {g!r}")
                cache[g] = v
            return v

        return go(f)


class CtlDomain:
    """A fixed tuple of structures; vectors carry one bit per state."""

    def __init__(self, structures):
        self.structures = tuple(structures)
        self.succ = []
        self.init_masks = []
        self.state_offsets = []
        offset = 0
        for m in self.structures:
            index = {s: offset + i for i, s in enumerate(m.states)}
            masks = [0] * len(m.states)
            for a, b in m.edges:
                masks[index[a] - offset] |= 1 << index[b]
            self.succ.extend(masks)
            init = 0
            for s in m.initial:
                init |= 1 << index[s]
            self.init_masks.append(init)
            self.state_offsets.append(offset)
            offset += len(m.states)
        self.size = offset
        self.full = (1 << offset) - 1
        self._all_states = range(offset)

    def prop_vector(self, name: str) -> int:
        v = 0
        bit = 0
        for m in self.structures:
            for letter in m.labels:
                if name in letter:
                    v |= 1 << bit
                bit += 1
        return v

    # -- trusted core --------------------------------------------------------

    def v_ex(self, s: int) -> int:
        r = 0
        for i in self._all_states:
            if self.succ[i] & s:
                r |= 1 << i
        return r

    def v_eu(self, a: int, b: int) -> int:
        z = b
        while True:
            nz = z | (a & self.v_ex(z))
            if nz == z:
                return z
            z = nz

    def v_eg(self, a: int) -> int:
        z = a
        while True:
            nz = a & self.v_ex(z)
            if nz == z:
                return z
            z = nz

    # -- derived operators, rewritten to the core ----------------------------

    def quant_unary(self, quantifier: str, op: str, a: int) -> int:
        full = self.full
        if op == NEXT:
            if quantifier == "E":
                return self.v_ex(a)
            return full ^ self.v_ex(full ^ a)
        if op == EVENTUALLY:
            if quantifier == "E":
                return self.v_eu(full, a)
            return full ^ self.v_eg(full ^ a)
        # ALWAYS
        if quantifier == "E":
            return self.v_eg(a)
        return full ^ self.v_eu(full, full ^ a)

    def quant_binary(self, quantifier: str, op: str, a: int, b: int) -> int:
        full = self.full
        na, nb = full ^ a, full ^ b
        if op == UNTIL:
            if quantifier == "E":
                return self.v_eu(a, b)
            return full ^ (self.v_eu(nb, na & nb) | self.v_eg(nb))
        if op == RELEASE:
            if quantifier == "E":
                return self.v_eu(b, a & b) | self.v_eg(b)
            return full ^ self.v_eu(na, nb)
        if op == WEAK_UNTIL:
            if quantifier == "E":
                return self.v_eu(a, b) | self.v_eg(a)
            return full ^ self.v_eu(nb, na & nb)
        # STRONG_RELEASE
        if quantifier == "E":
            return self.v_eu(b, a & b)
        return (full ^ self.v_eu(na, nb)) & (full ^ self.v_eg(na))

    def binary(self, op: str, a: int, b: int) -> int:
        if op == AND:
            return a & b
        if op == OR:
            return a | b
        if op == IMPLIES:
            return (self.full ^ a) | b
        return self.full ^ (a ^ b)

    def evaluate(self, f: Formula) -> int:
        cache: dict = {}

        def go(g) -> int:
            v = cache.get(g)
            if v is None:
                t = type(g)
                if t is Prop:
                    v = self.prop_vector(g.name)
                elif t is CtlNot:
                    v = self.full ^ go(g.child)
                elif t is CtlBinary:
                    v = self.binary(g.op, go(g.left), go(g.right))
                elif t is CtlQuantUnary:
                    v = self.quant_unary(g.quantifier, g.op, go(g.child))
                elif t is CtlQuantBinary:
                    v = self.quant_binary(g.quantifier, g.op, go(g.left), go(g.right))
                else:
                    raise TypeError(f"not a branching-time formula: {g!r}")
                cache[g] = v
            return v

        return go(f)

    def accepts(self, vector: int, structure_index: int) -> bool:
        mask = self.init_masks[structure_index]
        return vector & mask == mask


def satisfaction_vector(f: Formula, word: Word) -> tuple:
    """Truth value of `f` at every suffix class of `word`."""
    v = LtlDomain((word,)).evaluate(f)
    return tuple(bool((v >> i) & 1) for i in range(word.length))


def check_ltl(f: Formula, word: Word) -> bool:
    """Does the infinite word satisfy `f`?"""
    return bool(LtlDomain((word,)).evaluate(f) & 1)


def satisfying_states(f: Formula, structure: KripkeStructure) -> frozenset:
    """Names of the states of `structure` that satisfy `f`."""
    d = CtlDomain((structure,))
    v = d.evaluate(f)
    return frozenset(s for i, s in enumerate(structure.states) if (v >> i) & 1)


def check_ctl(f: Formula, structure: KripkeStructure) -> bool:
    """Does the structure satisfy `f`, i.e. do all its initial states?"""
    d = CtlDomain((structure,))
    return d.accepts(d.evaluate(f), 0)


def check_separating(f: Formula, sample: Sample) -> bool:
    """Does `f` hold on every positive example and fail on every negative one?"""
    if sample.logic == LTL:
        if not is_ltl(f):
            raise ValueError("a branching-time formula cannot be checked "
                             "against a linear-time sample")
        check = check_ltl
    else:
        if not is_ctl(f):
            raise ValueError("a linear-time formula cannot be checked "
                             "against a branching-time sample")
        check = check_ctl
    extra = prop_names(f) - sample.alphabet
    if extra:
        raise ValueError(f"formula uses {sorted(extra)[0]!r} outside the "
                         f"sample alphabet")
    return (all(check(f, w) for w in sample.positives)
            and not any(check(f, w) for w in sample.negatives))


def naive_check_ltl(f: Formula, word: Word, position: int = 0) -> bool:
    """Decide satisfaction by direct recursion on the defining clauses.

    Position quantifiers scan a window of |prefix| + 2 * |period| further
    positions, which reaches every suffix class attainable from the current
    position.  Deliberately simple and slow; serves as an oracle for the
    vector-based checker.
    """
    window = len(word.prefix) + 2 * len(word.period)
    t = type(f)
    if t is Prop:
        return f.name in word.letter_at(position)
    if t is LtlUnary:
        if f.op == NOT:
            return not naive_check_ltl(f.child, word, position)
        if f.op == NEXT:
            return naive_check_ltl(f.child, word, position + 1)
        if f.op == EVENTUALLY:
            return any(naive_check_ltl(f.child, word, j)
                       for j in range(position, position + window))
        return all(naive_check_ltl(f.child, word, j)
                   for j in range(position, position + window))
    if t is LtlBinary:
        if f.op == AND:
            return (naive_check_ltl(f.left, word, position)
                    and naive_check_ltl(f.right, word, position))
        if f.op == OR:
            return (naive_check_ltl(f.left, word, position)
                    or naive_check_ltl(f.right, word, position))
        if f.op == IMPLIES:
            return (not naive_check_ltl(f.left, word, position)
                    or naive_check_ltl(f.right, word, position))
        if f.op == IFF:
            return (naive_check_ltl(f.left, word, position)
                    == naive_check_ltl(f.right, word, position))
        if f.op == UNTIL:
            return _naive_until(f.left, f.right, word, position, window)
        if f.op == RELEASE:
            return not _naive_until(LtlUnary(NOT, f.left), LtlUnary(NOT, f.right),
                                    word, position, window)
        if f.op == WEAK_UNTIL:
            return (_naive_until(f.left, f.right, word, position, window)
                    or naive_check_ltl(LtlUnary(ALWAYS, f.left), word, position))
        # STRONG_RELEASE
        return (naive_check_ltl(LtlBinary(RELEASE, f.left, f.right), word, position)
                and naive_check_ltl(LtlUnary(EVENTUALLY, f.left), word, position))
    raise TypeError(f"not a linear-time formula: {f!r}")


def _naive_until(left, right, word, position, window):
    for j in range(position, position + window):
        if naive_check_ltl(right, word, j):
            if all(naive_check_ltl(left, word, k) for k in range(position, j)):
                return True
    return False
