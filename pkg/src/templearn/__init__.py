"""templearn: learn and check small temporal-logic formulas.

The package models ultimately periodic words and finite Kripke structures,
checks linear- and branching-time formulas over them, learns minimal
separating formulas for labelled samples, and converts CNF satisfiability
questions into such learning problems and back.
"""

__version__ = "0.1.0"

from .formulas import (
    CtlBinary,
    CtlFormula,
    CtlNot,
    CtlQuantBinary,
    CtlQuantUnary,
    Formula,
    FormulaSyntaxError,
    LtlBinary,
    LtlFormula,
    LtlUnary,
    OperatorSet,
    Prop,
    conforms,
    parse_ctl,
    parse_ltl,
    print_formula,
    prop_names,
    size,
    subformulas,
)
from .models import (
    KripkeStructure,
    Sample,
    SampleFormatError,
    Word,
    embed_word,
    load_sample,
    save_sample,
)
from .semantics import (
    check_ctl,
    check_ltl,
    check_separating,
    naive_check_ltl,
    satisfaction_vector,
)
from .transforms import (
    ConcisenessReport,
    analyze_conciseness,
    insert_quantifiers,
    is_temporal_free,
    strip_quantifiers,
    temporal_eliminate,
)
from .learner import (
    BoundMode,
    DedupMode,
    LearnConfig,
    LearnOutcome,
    enumerate_formulas,
    learn,
    verify,
)
from .reductions import (
    CnfInstance,
    ExtractionError,
    extract_disjunction,
    extract_valuation,
    formula_from_valuation,
    parse_dimacs,
    reduce_ltl_to_ctl,
    reduce_sat,
    sat_oracle,
    write_dimacs,
)
