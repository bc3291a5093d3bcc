"""Insertion-deletion systems with graph control.

The package builds and checks small rewriting devices: plain
insertion-deletion systems, their graph-controlled variants in both the
component and the label formulation, compilers from a restricted grammar
normal form into 4-component systems, and a desk-scale verification
harness that compares bounded languages against a grammar oracle.
"""
from .core import (
    Budget,
    Diagnostic,
    EnumerationResult,
    InsDelSystem,
    Rule,
    SizeVector,
    Symbol,
    Word,
    apply_rule,
    del_rule,
    enumerate_basic,
    ins_rule,
    shortlex,
    size_of,
    word,
)
from .control import (
    CommGraph,
    ComponentGCID,
    ComponentRule,
    Configuration,
    LabelGCID,
    LabelRule,
    MemberResult,
    Trace,
    classify_graph,
    communication_graph,
    member,
    step,
    to_component_form,
    to_label_form,
    trace_is_valid,
    validate,
)
from .control import enumerate as enumerate_system
from .grammar import (
    Grammar,
    Production,
    SpecialGNFGrammar,
    grammar_derive,
    grammar_enumerate,
    linearize,
    validate_plain_form,
    validate_special_gnf,
)
from .compilers import (
    CompilationOutput,
    RuleGroup,
    compile_t1,
    compile_t2,
    compile_t3,
    compile_t4,
    compile_theorem,
)
from .verify import (
    ComparisonReport,
    NoCanonicalTrace,
    compare,
    grammar_anbn,
    grammar_erasing,
    replay_group,
    replay_prefix,
)

__version__ = "0.1.0"
