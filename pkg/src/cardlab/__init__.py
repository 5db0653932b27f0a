"""Finite-truncation laboratory for cardinal comparability over doubly ordered sets.

Builds the truncated atom hierarchy T(N, K) over any finite doubly ordered
set, constructs explicit witnesses (injections, partial surjections) and
refutation certificates (fresh atoms plus closure-fixing movers) for every
sector comparison, and verifies at desk scale that the induced comparability
matrices reproduce the input relations exactly.
"""

from .atoms import Atom, Universe, build_universe, project, sector
from .closure import (
    ClosureSet,
    closure,
    closure_shape_le,
    closure_shape_lestar,
    is_closed,
    nonzero_index_part,
)
from .embedding import (
    Cell,
    EmbeddingReport,
    MoveEvidence,
    RefutationCertificate,
    WitnessMap,
    embedding_report,
    finite_le,
    finite_lestar,
    injection_witness,
    lestar_witness_from_le,
    refute_injection,
    refute_surjection,
    surjection_witness,
)
from .groups import (
    Permutation,
    compose,
    embed_permutation,
    equivariant_extension,
    fixing_generators,
    identity,
    index_transposition,
    inverse,
    is_member,
    membership_diagnostic,
    mover,
    orbits,
)
from .orders import (
    DoublyOrderedSet,
    OrderSpec,
    complete_relations,
    enumerate_small_doubly_ordered,
    strict_less,
    validate_order,
)
from .verify import verify_certificate, verify_report, verify_witness

__all__ = [
    "Atom",
    "Cell",
    "ClosureSet",
    "DoublyOrderedSet",
    "EmbeddingReport",
    "MoveEvidence",
    "OrderSpec",
    "Permutation",
    "RefutationCertificate",
    "Universe",
    "WitnessMap",
    "build_universe",
    "closure",
    "closure_shape_le",
    "closure_shape_lestar",
    "complete_relations",
    "compose",
    "embed_permutation",
    "embedding_report",
    "enumerate_small_doubly_ordered",
    "equivariant_extension",
    "finite_le",
    "finite_lestar",
    "fixing_generators",
    "identity",
    "index_transposition",
    "injection_witness",
    "inverse",
    "is_closed",
    "is_member",
    "lestar_witness_from_le",
    "membership_diagnostic",
    "mover",
    "nonzero_index_part",
    "orbits",
    "project",
    "refute_injection",
    "refute_surjection",
    "sector",
    "strict_less",
    "surjection_witness",
    "validate_order",
    "verify_certificate",
    "verify_report",
    "verify_witness",
]

__version__ = "0.1.0"
