"""Set representations of finite distributive lattices, with filter
classification, model checking, ultrapowers and oracle-presented countable
examples."""
from .core import (
    FiniteLattice,
    FinitePoset,
    boolean_lattice,
    chain,
    direct_product,
    dual,
    is_distributive,
    is_isomorphic,
    is_vee_bigmeet_distributive,
    lattice_from_dict,
    lattice_from_hasse,
    lattice_from_poset,
    lattice_to_dict,
    load_lattice,
    m3,
    n5,
    poset_from_hasse,
)
from .errors import LatticeError, NotDistributive, NotRepresentable
from .filters import (
    FilterRecord,
    IdealRecord,
    classify_filter,
    classify_ideal,
    complement_ideal,
    enumerate_filters,
    enumerate_prime_filters,
    is_distinguishing,
    principal_filter,
)
from .irreducibles import (
    IrreducibleReport,
    birkhoff_roundtrip,
    canonical_extension,
    downset_lattice,
    irreducibles,
    is_doubly_algebraic,
)
from .representation import (
    Representation,
    dual_representation,
    hierarchy,
    represent,
    represent_from,
    verify_join_complete,
    verify_meet_complete,
)

__version__ = "0.1.0"
