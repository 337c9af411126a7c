"""aislekit: exact homological algebra over polynomial rings.

Koszul complexes, homology and supports of bounded free complexes, the
perversity-function invariant of nullity classes with its canonical
generator, and machine-checkable certificates for the killing relation.
"""

from .certify import (
    Certificate,
    CheckResult,
    ExtendNode,
    GeneratorNode,
    ReplaceNode,
    RetractNode,
    SumNode,
    SuspendNode,
    cellular_certificate,
    check_certificate,
    tensor_certificate,
)
from .complexes import (
    ChainMap,
    FreeComplex,
    Homotopy,
    bottom_comparison,
    check_homotopy,
    cone,
    cone_inclusion,
    cone_projection,
    direct_sum,
    empty_complex,
    find_homotopy,
    free_resolution,
    induced_map,
    is_quasi_iso,
    quotient_resolution,
    shift,
    shift_map,
    single,
    sum_inclusion,
    sum_projection,
    tensor,
    tensor_map,
    truncate_ge,
)
from .engine import backend_name
from .errors import (
    BudgetExceededError,
    EngineError,
    InvalidComplexError,
    InvalidMapError,
    ParseError,
    PreconditionError,
    RingMismatchError,
    ShapeMismatchError,
    UnresolvedReferenceError,
    WorkbenchError,
)
from .koszul import (
    KoszulSequence,
    annihilator_power,
    check_annihilation,
    koszul,
    koszul_of_prime,
    minsupp_map,
)
from .modules import (
    ModuleMap,
    PresentedModule,
    RingMatrix,
    kernel_cokernel,
    lift_columns,
    syzygy_matrix,
)
from .perversity import (
    PerversityFunction,
    canonical_generator,
    roundtrip_check,
    support_invariant,
)
from .rings import Field, Ideal, Poly, PolyRing, poly_str
from .spectrum import (
    PrimeRef,
    PrimeTable,
    minimal_in,
    module_support,
    supp_complex,
    supp_member,
    v_of,
)

__version__ = "0.1.0"
