"""Association schemes on triples over few vertices: axioms, enumeration, classification."""

from .axioms import (
    ASTReport,
    AxiomViolation,
    check_coordinate_closure,
    check_regularity,
    check_valency,
    is_circulant,
    is_symmetric,
    validate_ast,
)
from .classify import (
    ClassificationJob,
    ClassificationResult,
    ConstructionError,
    IsoClass,
    ast_from_group_orbits,
    build_candidate,
    classify,
    isomorphism_classes,
    orbit_key,
)
from .document import ASTDocument, DocumentError, document_from_candidate, parse, serialize
from .groups import (
    COORD,
    RELABEL,
    Permutation,
    PermGroup,
    coord_permute,
    coordinate_group,
    cyclic_group,
    group_from_generators,
    orbits,
    parse_group_spec,
    relabel_triple,
    symmetric_group,
    trivial_group,
)
from .partitions import enumerate_orbit_partitions, iter_rgs, stirling2
from .relations import (
    ASTCandidate,
    TernaryRelation,
    act_on_partition,
    canonical_form,
    nontrivial_domain,
    relabel_relation,
    trivial_relations,
)

__version__ = "0.1.0"
