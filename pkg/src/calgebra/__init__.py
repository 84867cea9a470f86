"""Finite McCarthy (C-) algebras inside 3^n, adas, atoms and if-then-else."""

from .trit import (
    MAX_WIDTH,
    F,
    PairError,
    T,
    Trit,
    TritVec,
    U,
    WidthError,
    all_vectors,
    boolean_vectors,
    from_pairs,
    pairs_and,
    pairs_not,
    pairs_or,
    to_pairs,
    trit_and,
    trit_down,
    trit_not,
    trit_or,
    vec,
    vec_and,
    vec_not,
    vec_or,
)
from .algebra import (
    AlgebraFileError,
    AxiomReport,
    ClosureError,
    FiniteCAlgebra,
    InvariantError,
    dump_algebra,
    enumerate_subalgebras,
    enumerate_subalgebras_bruteforce,
    generate,
    m_hash,
    m_hash_complement_algebra,
    orbit_representatives,
    parse_algebra,
    read_algebra,
    verify_ada_axioms,
    verify_c_axioms,
)
from .order import (
    AtomicityReport,
    atoms,
    atoms_3X,
    atoms_relative,
    is_atomic,
    is_g_closed,
    left_zeros,
    leq,
    oplus,
    oplus_atoms_criterion,
    oplus_by_permutations,
)
from .ada import FiniteAda, ada_closure, atom_bijection_G, boolean_to_ada, check_ada, downarrow, is_ada
from .ifthenelse import (
    ClosedSetFamily,
    PointedMap,
    ann2,
    ann_elem,
    ann_set,
    closed_boolean_ops,
    closed_sets,
    functional_action,
    is_closed,
    ite,
    partition_by_annihilator,
    verify_cset_axioms_algebraic,
    verify_cset_axioms_functional,
)
from .terms import decide_identity, decide_quasi_identity, eval_term, parse_term
from .kernels import BACKEND

__version__ = "0.1.0"
