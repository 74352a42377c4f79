"""diagforge: an executable counterpart of the diagonal incompleteness argument.

A total term language is enumerated effectively; the diagonal function
g(n) = f_n(n) + 1 escapes any machine producing the stream, extension by g
yields a machine escaped again by its own diagonal, and any classifier of
total functions is refuted the same way. The same enumeration machinery
drives bottom-up program synthesis from a reflection base of component
facts, organized into analytical spaces of behavior-equivalence classes.
"""

from .enumeration import EnumCursor, Tier, enumerate_stream, index_of, program_at
from .errors import (
    DiagforgeError,
    DuplicateProbeError,
    EmptyClassifierError,
    EmptyProbesError,
    NotInTierError,
    ParseError,
    ResourceExhaustedError,
    SortMismatchError,
    TypeCheckError,
    UnboundVariableError,
    UnknownConstructorError,
)
from .interp import EvalBudget, evaluate, evaluate_env
from .kernel import (
    Sort,
    Term,
    TypedProgram,
    Value,
    check_well_formed,
    format_value,
    parse,
    parse_value,
    pretty,
    size,
)
from .machines import (
    Base,
    Extend,
    Machine,
    OracleFn,
    Witness,
    diagonal,
    extend,
    function_at,
    iterate,
    machine_stream,
    witness_table,
)
from .refuter import (
    AcceptAll,
    AcceptNone,
    MaxSize,
    ProgramDecider,
    RefutationReport,
    accepted_stream,
    refute,
)
from .spaces import AnalyticalSpace, CostPolicy, absorb, expand_domain, new_space, unify
from .synthesis import (
    Candidate,
    ComponentFact,
    GoalSpec,
    ReflectionBase,
    bottom_up_pool,
    default_list_base,
    default_nat_base,
    fill_schema_holes,
    make_goal,
    synthesize,
)

__version__ = "0.1.0"
