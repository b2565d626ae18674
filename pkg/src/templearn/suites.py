"""Exhaustive and randomized property suites.

Each suite checks one family of semantic facts over an exhaustively
enumerated (or seeded-random) input space and returns a :class:`SuiteResult`
with the number of items checked and any violations found.  The suites are
the oracles behind ``templearn verify-properties`` and the acceptance tests:

* :func:`run_reduct_identities` — on constant words every temporal operator
  collapses to a boolean reduct (X/F/G to the operand, U/R to the right
  operand, W to disjunction, M to conjunction); checked for every operand
  formula up to a size cap and, separately, for every combination of
  signature bit-vectors, which closes the family under composition at all
  sizes.

* :func:`run_formula_sweep` — a single pass over *every* formula up to a
  size cap (no semantic pruning) that checks the temporal-elimination
  properties (result temporal-free, never larger, same single-letter
  semantics, sub-formulas of the image contained in the image of the
  sub-formulas), the sub-formula counting bound, the small-formula
  conciseness consequence, and the distinguishability property of
  temporal-free formulas.

* :func:`run_quantifier_transfer` — path-quantified formulas evaluated on a
  single-state structure agree with their quantifier-stripped forms on the
  corresponding constant word; checked literally on every formula up to a
  size cap plus an operator-table closure that extends the fact to all
  sizes.

* :func:`run_cnf_round_trip` / :func:`run_ctl_round_trip` — satisfiability
  of a CNF agrees with learnability of its sample encoding, and every
  learned witness yields a satisfying assignment.

* :func:`run_lasso_oracle_equivalence` — the loop-accelerated word checker
  agrees with the bounded-window naive evaluator on random formula/word
  pairs at every position.
"""

from __future__ import annotations

import itertools
import os
import random
import time
from dataclasses import dataclass, field

from .formulas import (
    ALWAYS, AND, EVENTUALLY, IFF, IMPLIES, NEXT, NOT, OR, RELEASE,
    STRONG_RELEASE, UNTIL, WEAK_UNTIL,
    CtlBinary, CtlNot, CtlQuantBinary, CtlQuantUnary, Formula, LtlBinary,
    LtlUnary, OperatorSet, Prop, print_formula,
)
from .learner import (
    ClosureEnumeration, _ltl_op_tables, _LTL_BINARY_ORDER, _LTL_UNARY_ORDER,
    enumerate_formulas, learn,
)
from .models import CTL, Word, embed_word
from .reductions import (
    CnfInstance, ExtractionError, extract_valuation, reduce_ltl_to_ctl,
    reduce_sat, sat_oracle, satisfies,
)
from .semantics import (
    CtlDomain, LtlDomain, check_ctl, check_ltl, naive_check_ltl,
    satisfaction_vector,
)
from .transforms import (
    analyze_conciseness, is_temporal_free, strip_quantifiers,
    temporal_eliminate,
)

_MAX_REPORTED = 20


@dataclass(frozen=True)
class SuiteResult:
    """Outcome of one property suite."""

    name: str
    checked: int
    violation_count: int
    violations: tuple  # first few violation descriptions
    elapsed_seconds: float
    details: dict = field(compare=False, default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.violation_count == 0

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} {self.name}: checked={self.checked} "
                f"violations={self.violation_count} "
                f"elapsed={self.elapsed_seconds:.1f}s")


class _Violations:
    """Collects violation messages, keeping only the first few verbatim."""

    def __init__(self):
        self.count = 0
        self.kept = []

    def add(self, message: str):
        self.count += 1
        if len(self.kept) < _MAX_REPORTED:
            self.kept.append(message)


def single_letters(props=("p", "q")) -> tuple:
    """All letters over `props` in subset-mask order (bit i = props[i])."""
    out = []
    for mask in range(1 << len(props)):
        out.append(frozenset(p for i, p in enumerate(props) if mask >> i & 1))
    return tuple(out)


def constant_words(props=("p", "q")) -> tuple:
    """One single-letter repeating word per letter over `props`."""
    return tuple(Word([], [letter]) for letter in single_letters(props))


def constant_structures(props=("p", "q")) -> tuple:
    """One single-state self-loop structure per letter over `props`."""
    return tuple(embed_word(w) for w in constant_words(props))


# ---------------------------------------------------------------------------
# Single-letter reduct identities
# ---------------------------------------------------------------------------

def run_reduct_identities(max_size: int = 3, props=("p", "q"),
                          sample_count: int = 5000, seed: int = 0
                          ) -> SuiteResult:
    """Constant-word reducts of the temporal operators.

    For every operand formula (or pair) up to `max_size`, on every constant
    word: X/F/G leave the operand's truth unchanged, U and R reduce to the
    right operand, W to the disjunction and M to the conjunction.  Operands
    are evaluated once; the compound values are produced by the same vector
    operations the checker itself applies at a compound node, and a seeded
    random sample of compound formulas is re-checked end to end through
    `check_ltl` to pin the two routes together.  A final pass checks the
    same identities for *every* signature bit-vector combination, covering
    operands of arbitrary size.
    """
    start = time.time()
    words = constant_words(props)
    dom = LtlDomain(words)
    bad = _Violations()

    formulas = list(enumerate_formulas(props, max_size))
    vectors = [dom.evaluate(f) for f in formulas]

    checked = 0
    for f, a in zip(formulas, vectors):
        checked += 1
        for op in (NEXT, EVENTUALLY, ALWAYS):
            if dom.unary(op, a) != a:
                bad.add(f"{op} {print_formula(f)} differs from its operand "
                        "on a constant word")

    binary = dom.binary
    pair_checked = 0
    for (f1, a), (f2, b) in itertools.product(zip(formulas, vectors),
                                              repeat=2):
        pair_checked += 1
        if dom.v_until(a, b) != b:
            bad.add(f"({print_formula(f1)}) U ({print_formula(f2)}) differs "
                    "from its right operand on a constant word")
        if dom.v_release(a, b) != b:
            bad.add(f"({print_formula(f1)}) R ({print_formula(f2)}) differs "
                    "from its right operand on a constant word")
        if dom.v_weak_until(a, b) != binary(OR, a, b):
            bad.add(f"({print_formula(f1)}) W ({print_formula(f2)}) differs "
                    "from the disjunction on a constant word")
        if dom.v_strong_release(a, b) != binary(AND, a, b):
            bad.add(f"({print_formula(f1)}) M ({print_formula(f2)}) differs "
                    "from the conjunction on a constant word")

    # End-to-end re-check of a random sample of compound formulas.
    rng = random.Random(seed)
    reducts = {UNTIL: lambda l, r: r, RELEASE: lambda l, r: r,
               WEAK_UNTIL: lambda l, r: LtlBinary(OR, l, r),
               STRONG_RELEASE: lambda l, r: LtlBinary(AND, l, r)}
    for _ in range(sample_count):
        f1 = rng.choice(formulas)
        f2 = rng.choice(formulas)
        op = rng.choice((UNTIL, RELEASE, WEAK_UNTIL, STRONG_RELEASE))
        compound = LtlBinary(op, f1, f2)
        reduct = reducts[op](f1, f2)
        for w in words:
            if check_ltl(compound, w) != check_ltl(reduct, w):
                bad.add(f"{print_formula(compound)} vs "
                        f"{print_formula(reduct)} on {w}")

    # Closure over every signature combination (operands of any size).
    n_bits = len(words)
    full = (1 << n_bits) - 1
    table_checked = 0
    for a in range(full + 1):
        table_checked += 1
        for op in (NEXT, EVENTUALLY, ALWAYS):
            if dom.unary(op, a) != a:
                bad.add(f"{op} changes signature {a:0{n_bits}b}")
        for b in range(full + 1):
            if dom.v_until(a, b) != b or dom.v_release(a, b) != b:
                bad.add(f"U/R reduct fails at signatures {a},{b}")
            if dom.v_weak_until(a, b) != (a | b):
                bad.add(f"W reduct fails at signatures {a},{b}")
            if dom.v_strong_release(a, b) != (a & b):
                bad.add(f"M reduct fails at signatures {a},{b}")

    return SuiteResult(
        name="single-letter-reducts",
        checked=checked + pair_checked + sample_count,
        violation_count=bad.count,
        violations=tuple(bad.kept),
        elapsed_seconds=time.time() - start,
        details={"operands": checked, "operand_pairs": pair_checked,
                 "sampled_compounds": sample_count,
                 "signature_combinations": table_checked ** 2},
    )


# ---------------------------------------------------------------------------
# Full-formula sweep: temporal elimination, counting, conciseness
# ---------------------------------------------------------------------------

class _TemporalFreeUniverse:
    """Interning table for temporal-free formulas over fixed propositions.

    Every node carries its signature over the constant words, the id set of
    its sub-formulas, and a build record for reconstructing the AST.
    """

    def __init__(self, domain, props):
        self.domain = domain
        self.sigs = []
        self.closures = []
        self.builds = []  # ("p", name) | (NOT, a, None) | (op, a, b)
        self._index = {}
        self.prop_ids = {}
        for name in props:
            nid = self._add(("p", name, None), domain.prop_vector(name),
                            frozenset())
            self.prop_ids[name] = nid

    def _add(self, build, sig, child_closure):
        nid = len(self.sigs)
        self.sigs.append(sig)
        self.closures.append(child_closure | {nid})
        self.builds.append(build)
        self._index[build] = nid
        return nid

    def negate(self, a: int) -> int:
        key = (NOT, a, None)
        nid = self._index.get(key)
        if nid is None:
            nid = self._add(key, self.domain.unary(NOT, self.sigs[a]),
                            self.closures[a])
        return nid

    def combine(self, op: str, a: int, b: int) -> int:
        key = (op, a, b)
        nid = self._index.get(key)
        if nid is None:
            nid = self._add(key,
                            self.domain.binary(op, self.sigs[a], self.sigs[b]),
                            self.closures[a] | self.closures[b])
        return nid

    def formula(self, nid: int) -> Formula:
        kind, a, b = self.builds[nid]
        if kind == "p":
            return Prop(a)
        if kind == NOT:
            return LtlUnary(NOT, self.formula(a))
        return LtlBinary(kind, self.formula(a), self.formula(b))


# How each operator contributes to the temporal-free image:
# "keep" wraps the result, "child"/"right" forward an operand's image,
# (op,) rebuilds with a boolean connective.
_TR_UNARY_ACTION = {NOT: "keep", NEXT: "child", EVENTUALLY: "child",
                    ALWAYS: "child"}
_TR_BINARY_ACTION = {AND: "keep", OR: "keep", IMPLIES: "keep", IFF: "keep",
                     UNTIL: "right", RELEASE: "right",
                     WEAK_UNTIL: OR, STRONG_RELEASE: AND}


def run_formula_sweep(max_size: int = 5, props=("p", "q")) -> dict:
    """One exhaustive pass over every formula up to `max_size`.

    Enumerates the full formula space with no semantic pruning, carrying for
    each formula its signature over the constant words, its proposition set,
    its temporal-free image (as an interned node), the image of its
    sub-formula set, and its conciseness flag — all composed incrementally,
    with a cross-check against the public transform functions on every
    formula of size up to 3.

    Returns four :class:`SuiteResult` values keyed by:

    * ``"temporal-elimination"`` — the image is temporal-free by
      construction, never larger, each of its sub-formulas is the image of a
      sub-formula, and it has the same constant-word semantics;
    * ``"subformula-counting"`` — for every nonempty proposition set Y
      contained in Prop(f), at least 2|Y|-1 sub-formulas mention a member of
      Y, and at least 2|Y| when Y is a proper subset;
    * ``"concise-representation"`` — if Y ⊆ Prop(f) and size(f) ≤ 2|Y|-1
      then f is concise and Prop(f) = Y;
    * ``"distinguishability"`` — a temporal-free formula that distinguishes
      two letters differing only inside Y mentions a proposition of Y.
    """
    start = time.time()
    words = constant_words(props)
    dom = LtlDomain(words)
    nprops = len(props)
    letters = single_letters(props)
    full = (1 << len(words)) - 1

    unary_ops, binary_ops = _ltl_op_tables(OperatorSet.full(), dom, False)
    compose_fns = [fn for fn, _ in unary_ops] + [fn for fn, _ in binary_ops]
    op_builders = [b for _, b in unary_ops] + [b for _, b in binary_ops]
    n_unary = len(unary_ops)
    unary_actions = [_TR_UNARY_ACTION[op] for op in _LTL_UNARY_ORDER]
    binary_actions = [_TR_BINARY_ACTION[op] for op in _LTL_BINARY_ORDER]
    binary_tokens = list(_LTL_BINARY_ORDER)

    def compose(opcode, a, b):
        return compose_fns[opcode](a, b)

    tf = _TemporalFreeUniverse(dom, props)
    tf_sigs, tf_closures = tf.sigs, tf.closures

    # Per registered formula id:
    masks = []      # proposition bitmask
    concise = []    # conciseness flag
    temporal = []   # uses a temporal operator
    trids = []      # temporal-free image node
    trimages = []   # frozenset of image nodes of all sub-formulas

    elim = _Violations()
    counting = _Violations()
    concise_bad = _Violations()
    disting = _Violations()

    # Letter pairs differing only inside {props[i]} for distinguishability.
    flip_pairs = []
    for i in range(nprops):
        pairs = [(a, a | 1 << i) for a in range(len(letters))
                 if not a >> i & 1]
        flip_pairs.append(pairs)

    ys = _y_subsets(nprops)
    pending = [None]
    checked = [0]

    def describe(opcode, left, right):
        triple = (opcode, left, right)
        return print_formula(enum.build_formula(
            triple, lambda i: Prop(props[i]), op_builders))

    def visit(cost, opcode, left, right, sig):
        checked[0] += 1
        if opcode < 0:
            mask = 1 << left
            is_concise, is_temporal = True, False
            trid = tf.prop_ids[props[left]]
            trimage = tf_closures[trid]
            closure_ids = ()
        elif right < 0:
            mask = masks[left]
            is_concise = False
            action = unary_actions[opcode]
            if action == "keep":
                is_temporal = temporal[left]
                trid = tf.negate(trids[left])
            else:
                is_temporal = True
                trid = trids[left]
            trimage = trimages[left] | {trid}
            closure_ids = enum.closures[left]
        else:
            mask = masks[left] | masks[right]
            is_concise = (concise[left] and concise[right]
                          and not masks[left] & masks[right])
            action = binary_actions[opcode - n_unary]
            if action == "keep":
                is_temporal = temporal[left] or temporal[right]
                trid = tf.combine(binary_tokens[opcode - n_unary],
                                  trids[left], trids[right])
            elif action == "right":
                is_temporal = True
                trid = trids[right]
            else:
                is_temporal = True
                trid = tf.combine(action, trids[left], trids[right])
            trimage = trimages[left] | trimages[right] | {trid}
            closure_ids = enum.closures[left] | enum.closures[right]

        # Temporal elimination: size, sub-formula containment, semantics.
        image_closure = tf_closures[trid]
        if len(image_closure) > cost:
            elim.add(f"image of {describe(opcode, left, right)} is larger "
                     f"than the formula")
        if not image_closure <= trimage:
            elim.add(f"image of {describe(opcode, left, right)} has a "
                     f"sub-formula outside the image of its sub-formulas")
        if tf_sigs[trid] != sig:
            elim.add(f"image of {describe(opcode, left, right)} disagrees "
                     f"on a constant word")

        # Sub-formula counting over the closure plus the root itself, for
        # every nonempty proposition set Y contained in Prop(f): at least
        # 2|Y|-1 sub-formulas mention a member of Y (2|Y| when Y is proper).
        for ymask, ysize in ys:
            if ymask & mask != ymask:
                continue
            cnt = 1  # the root itself mentions a member of Y
            for i in closure_ids:
                if masks[i] & ymask:
                    cnt += 1
            need = 2 * ysize - (1 if ymask == mask else 0)
            if cnt < need:
                counting.add(
                    f"{describe(opcode, left, right)}: only {cnt} "
                    f"sub-formulas mention proposition set {ymask:b}")
            # Small formulas covering Y must be concise representations.
            if cost <= 2 * ysize - 1 and (not is_concise or mask != ymask):
                concise_bad.add(
                    f"{describe(opcode, left, right)} (size {cost}) "
                    f"is not a concise representation")

        # Temporal-free formulas can only distinguish letters via their
        # own propositions.
        if not is_temporal:
            for k in range(nprops):
                if mask >> k & 1:
                    continue
                for a, b in flip_pairs[k]:
                    if (sig >> a & 1) != (sig >> b & 1):
                        disting.add(
                            f"{describe(opcode, left, right)} distinguishes "
                            f"letters differing only in {props[k]}")
                        break

        pending[0] = (mask, is_concise, is_temporal, trid, trimage)
        return True

    def on_register(nid):
        mask, is_concise, is_temporal, trid, trimage = pending[0]
        masks.append(mask)
        concise.append(is_concise)
        temporal.append(is_temporal)
        trids.append(trid)
        trimages.append(trimage)

    seeds = [dom.prop_vector(name) for name in props]
    enum = ClosureEnumeration(seeds, n_unary, len(binary_ops), max_size,
                              compose, visit, on_register=on_register)
    for _ in enum.run():
        pass

    # Cross-check the incremental bookkeeping against the public functions
    # on every registered formula of size up to 3.
    cross_checked = 0
    for nid, cost in enumerate(enum.costs):
        if cost > 3:
            continue
        cross_checked += 1
        ast = enum.build_formula(enum.builds[nid],
                                 lambda i: Prop(props[i]), op_builders)
        vec = 0
        for i, w in enumerate(words):
            if check_ltl(ast, w):
                vec |= 1 << i
        if vec != enum.payloads[nid]:
            elim.add(f"signature mismatch for {print_formula(ast)}")
        image = temporal_eliminate(ast)
        if image != tf.formula(trids[nid]):
            elim.add(f"image mismatch for {print_formula(ast)}")
        if is_temporal_free(ast) != (not temporal[nid]):
            elim.add(f"temporal-freeness mismatch for {print_formula(ast)}")
        if not is_temporal_free(image):
            elim.add(f"image of {print_formula(ast)} is not temporal-free")
        report = analyze_conciseness(ast)
        if report.is_concise != concise[nid]:
            concise_bad.add(f"conciseness mismatch for {print_formula(ast)}")
        used = frozenset(p for k, p in enumerate(props)
                         if masks[nid] >> k & 1)
        if report.propositions_used != used:
            concise_bad.add(f"proposition-set mismatch for "
                            f"{print_formula(ast)}")

    elapsed = time.time() - start
    details = {"formulas": checked[0], "registered": len(enum.costs),
               "cross_checked": cross_checked, "max_size": max_size,
               "image_nodes": len(tf_sigs)}

    def result(name, bag):
        return SuiteResult(name=name, checked=checked[0],
                           violation_count=bag.count,
                           violations=tuple(bag.kept),
                           elapsed_seconds=elapsed, details=details)

    return {
        "temporal-elimination": result("temporal-elimination", elim),
        "subformula-counting": result("subformula-counting", counting),
        "concise-representation": result("concise-representation",
                                         concise_bad),
        "distinguishability": result("distinguishability", disting),
    }


def _y_subsets(nprops: int):
    """Nonempty proposition subsets as (bitmask, cardinality) pairs."""
    out = []
    for ymask in range(1, 1 << nprops):
        out.append((ymask, bin(ymask).count("1")))
    return out


# ---------------------------------------------------------------------------
# Quantified/quantifier-free agreement on single-state structures
# ---------------------------------------------------------------------------

def run_quantifier_transfer(literal_max_size: int = 4, props=("p", "q"),
                            sample_count: int = 2000, seed: int = 0,
                            sample_max_size: int = 5) -> SuiteResult:
    """On a single-state structure, path quantifiers are inert.

    Checks `check_ctl(f, M) == check_ltl(strip_quantifiers(f), w)` where M
    is the one-state self-loop structure carrying the same letter as the
    constant word w: literally for every branching-time formula up to
    `literal_max_size`, for a seeded random sample of larger formulas, and
    for every operator over every combination of signature bit-vectors —
    the last closing the property under composition, which extends it to
    formulas of every size.
    """
    start = time.time()
    words = constant_words(props)
    structures = constant_structures(props)
    ldom = LtlDomain(words)
    cdom = CtlDomain(structures)
    bad = _Violations()

    checked = 0
    for f in enumerate_formulas(props, literal_max_size, logic=CTL):
        checked += 1
        stripped = strip_quantifiers(f)
        for w, m in zip(words, structures):
            if check_ctl(f, m) != check_ltl(stripped, w):
                bad.add(f"{print_formula(f)} vs {print_formula(stripped)} "
                        f"on letter {sorted(w.period[0])}")

    rng = random.Random(seed)
    sampled = 0
    for _ in range(sample_count):
        f = _random_ctl_formula(rng, props, sample_max_size)
        sampled += 1
        stripped = strip_quantifiers(f)
        for w, m in zip(words, structures):
            if check_ctl(f, m) != check_ltl(stripped, w):
                bad.add(f"{print_formula(f)} vs {print_formula(stripped)} "
                        f"on letter {sorted(w.period[0])}")

    # Operator tables over all signature combinations: every quantified
    # operator agrees with its quantifier-free counterpart, and the shared
    # boolean operators agree between the two evaluators.
    n_bits = len(words)
    full = (1 << n_bits) - 1
    table_checked = 0
    for a in range(full + 1):
        table_checked += 1
        if cdom.full ^ a != ldom.unary(NOT, a):
            bad.add(f"negation differs at signature {a}")
        for quant in ("E", "A"):
            for op in (NEXT, EVENTUALLY, ALWAYS):
                if cdom.quant_unary(quant, op, a) != ldom.unary(op, a):
                    bad.add(f"{quant}{op} differs at signature {a}")
        for b in range(full + 1):
            for op in (AND, OR, IMPLIES, IFF):
                if cdom.binary(op, a, b) != ldom.binary(op, a, b):
                    bad.add(f"{op} differs at signatures {a},{b}")
            for quant in ("E", "A"):
                for op in (UNTIL, RELEASE, WEAK_UNTIL, STRONG_RELEASE):
                    if (cdom.quant_binary(quant, op, a, b)
                            != ldom.binary(op, a, b)):
                        bad.add(f"{quant}({op}) differs at "
                                f"signatures {a},{b}")

    return SuiteResult(
        name="quantifier-transfer",
        checked=checked + sampled,
        violation_count=bad.count,
        violations=tuple(bad.kept),
        elapsed_seconds=time.time() - start,
        details={"exhaustive_formulas": checked, "literal_max_size":
                 literal_max_size, "sampled_formulas": sampled,
                 "signature_combinations": table_checked ** 2},
    )


_CTL_QUANT_UNARY = tuple((q, op) for q in ("E", "A")
                         for op in (NEXT, EVENTUALLY, ALWAYS))
_CTL_QUANT_BINARY = tuple((q, op) for q in ("E", "A")
                          for op in (UNTIL, RELEASE, WEAK_UNTIL,
                                     STRONG_RELEASE))


def _random_ctl_formula(rng, props, budget: int):
    """A random branching-time formula with at most `budget` tree nodes."""
    if budget <= 1 or rng.random() < 0.25:
        return Prop(rng.choice(props))
    if budget == 2 or rng.random() < 0.4:
        child = _random_ctl_formula(rng, props, budget - 1)
        if rng.random() < 0.4:
            return CtlNot(child)
        quant, op = rng.choice(_CTL_QUANT_UNARY)
        return CtlQuantUnary(quant, op, child)
    lbud = rng.randint(1, budget - 2)
    left = _random_ctl_formula(rng, props, lbud)
    right = _random_ctl_formula(rng, props, budget - 1 - lbud)
    if rng.random() < 0.5:
        return CtlBinary(rng.choice((AND, OR, IMPLIES, IFF)), left, right)
    quant, op = rng.choice(_CTL_QUANT_BINARY)
    return CtlQuantBinary(quant, op, left, right)


# ---------------------------------------------------------------------------
# CNF round trips through the learner
# ---------------------------------------------------------------------------

def exhaustive_cnfs(variables: int = 2, max_clauses: int = 3) -> list:
    """Every CNF over `variables` with up to `max_clauses` distinct clauses,
    each clause a set of at most three literals."""
    literals = [v for k in range(1, variables + 1) for v in (k, -k)]
    pool = []
    for r in (1, 2, 3):
        pool.extend(tuple(c) for c in itertools.combinations(literals, r))
    out = []
    for n in range(max_clauses + 1):
        for clauses in itertools.combinations(pool, n):
            out.append(CnfInstance(variables, clauses))
    return out


def random_cnfs(count: int, seed: int, max_variables: int = 4,
                max_clauses: int = 6) -> list:
    """Seeded random CNFs with 1..max_variables variables and
    1..max_clauses clauses of 1-3 distinct literals each."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        m = rng.randint(1, max_variables)
        literals = [v for k in range(1, m + 1) for v in (k, -k)]
        n = rng.randint(1, max_clauses)
        clauses = []
        for _ in range(n):
            arity = rng.randint(1, min(3, len(literals)))
            clauses.append(tuple(rng.sample(literals, arity)))
        out.append(CnfInstance(m, clauses))
    return out


def _round_trip_one(args):
    variables, clauses = args
    cnf = CnfInstance(variables, clauses)
    t0 = time.time()
    satisfiable = sat_oracle(cnf) is not None
    outcome = learn(reduce_sat(cnf))
    record = {"satisfiable": satisfiable, "learned": outcome.decision,
              "extraction_ok": True, "witness_size": outcome.size}
    if outcome.decision:
        try:
            valuation = extract_valuation(outcome.witness, cnf)
            record["extraction_ok"] = satisfies(cnf, valuation)
        except (ExtractionError, RuntimeError):
            record["extraction_ok"] = False
    record["elapsed"] = time.time() - t0
    return record


def _ctl_decision_one(args):
    variables, clauses = args
    cnf = CnfInstance(variables, clauses)
    t0 = time.time()
    outcome = learn(reduce_ltl_to_ctl(reduce_sat(cnf)))
    return {"learned": outcome.decision, "witness_size": outcome.size,
            "elapsed": time.time() - t0}


def resolve_jobs(jobs: int | None = None) -> int:
    """Worker-count default: the TEMPLEARN_JOBS variable, else CPU count."""
    if jobs is not None:
        return max(1, jobs)
    env = os.environ.get("TEMPLEARN_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return max(1, min(os.cpu_count() or 1, 8))


def _parallel_map(fn, items, jobs):
    jobs = min(resolve_jobs(jobs), max(1, len(items)))
    if jobs == 1:
        return [fn(item) for item in items]
    import multiprocessing
    with multiprocessing.Pool(jobs) as pool:
        return pool.map(fn, items, chunksize=8)


def _cnf_args(instances):
    return [(cnf.variable_count, cnf.clauses) for cnf in instances]


def run_cnf_round_trip(instances, jobs: int | None = None) -> SuiteResult:
    """Satisfiability agrees with learnability of the sample encoding, and
    every learned witness yields a satisfying assignment."""
    start = time.time()
    records = _parallel_map(_round_trip_one, _cnf_args(instances), jobs)
    bad = _Violations()
    decisions = []
    sat_count = 0
    for cnf, rec in zip(instances, records):
        decisions.append(rec["learned"])
        sat_count += rec["satisfiable"]
        if rec["satisfiable"] != rec["learned"]:
            bad.add(f"decision mismatch on {cnf}: satisfiable="
                    f"{rec['satisfiable']} learned={rec['learned']}")
        elif rec["learned"] and not rec["extraction_ok"]:
            bad.add(f"extraction failed on {cnf}")
    return SuiteResult(
        name="cnf-round-trip",
        checked=len(instances),
        violation_count=bad.count,
        violations=tuple(bad.kept),
        elapsed_seconds=time.time() - start,
        details={"satisfiable": sat_count,
                 "unsatisfiable": len(instances) - sat_count,
                 "decisions": decisions,
                 "max_instance_seconds": max(
                     (r["elapsed"] for r in records), default=0.0)},
    )


def run_ctl_round_trip(instances, ltl_decisions=None,
                       jobs: int | None = None) -> SuiteResult:
    """Branching-time learner decisions on the single-state encoding agree
    with the word-based decisions (and hence with satisfiability)."""
    start = time.time()
    records = _parallel_map(_ctl_decision_one, _cnf_args(instances), jobs)
    bad = _Violations()
    for i, (cnf, rec) in enumerate(zip(instances, records)):
        expected = (ltl_decisions[i] if ltl_decisions is not None
                    else sat_oracle(cnf) is not None)
        if rec["learned"] != expected:
            bad.add(f"branching-time decision mismatch on {cnf}: "
                    f"expected {expected} got {rec['learned']}")
    return SuiteResult(
        name="ctl-round-trip",
        checked=len(instances),
        violation_count=bad.count,
        violations=tuple(bad.kept),
        elapsed_seconds=time.time() - start,
        details={"max_instance_seconds": max(
            (r["elapsed"] for r in records), default=0.0)},
    )


# ---------------------------------------------------------------------------
# Lasso checker vs bounded-window naive evaluator
# ---------------------------------------------------------------------------

_LTL_UNARY_POOL = (NOT, NEXT, EVENTUALLY, ALWAYS)
_LTL_BINARY_POOL = (AND, OR, IMPLIES, IFF, UNTIL, RELEASE, WEAK_UNTIL,
                    STRONG_RELEASE)


def _random_ltl_formula(rng, props, budget: int):
    if budget <= 1 or rng.random() < 0.25:
        return Prop(rng.choice(props))
    if budget == 2 or rng.random() < 0.4:
        return LtlUnary(rng.choice(_LTL_UNARY_POOL),
                        _random_ltl_formula(rng, props, budget - 1))
    lbud = rng.randint(1, budget - 2)
    return LtlBinary(rng.choice(_LTL_BINARY_POOL),
                     _random_ltl_formula(rng, props, lbud),
                     _random_ltl_formula(rng, props, budget - 1 - lbud))


def _random_word(rng, props, max_length: int):
    letters = single_letters(props)
    total = rng.randint(1, max_length)
    period = rng.randint(1, total)
    return Word([rng.choice(letters) for _ in range(total - period)],
                [rng.choice(letters) for _ in range(period)])


def run_lasso_oracle_equivalence(pairs: int = 10000, seed: int = 0,
                                 props=("p", "q"), max_formula_size: int = 5,
                                 max_word_length: int = 4) -> SuiteResult:
    """The loop-accelerated checker agrees with the bounded-window naive
    evaluator on random formula/word pairs, at every position."""
    start = time.time()
    rng = random.Random(seed)
    bad = _Violations()
    positions = 0
    for _ in range(pairs):
        f = _random_ltl_formula(rng, props, max_formula_size)
        w = _random_word(rng, props, max_word_length)
        vector = satisfaction_vector(f, w)
        for i in range(w.length):
            positions += 1
            if naive_check_ltl(f, w, position=i) != vector[i]:
                bad.add(f"{print_formula(f)} at position {i} of {w}")
    return SuiteResult(
        name="lasso-oracle-equivalence",
        checked=pairs,
        violation_count=bad.count,
        violations=tuple(bad.kept),
        elapsed_seconds=time.time() - start,
        details={"positions_checked": positions},
    )
