"""Construction, analysis and classification of connected symmetric cubic
graphs of order k*p (p prime), via arc-regular quotient groups of C2 * C3
and cyclic regular covers."""

from .errors import (AbelianizationMismatchError, BudgetExceededError,
                     CharacterConflictError, Graph6Error, InvalidRootError,
                     LcfError, MultiedgeError, SubgroupError)
from .perm import (FiniteGroupOracle, PermGroup, Permutation, RegularOracle,
                   abelian_invariants, derived_subgroup, group_order,
                   is_quasiprimitive, is_semiregular, normal_closure, orbits,
                   point_stabilizer)
from .graphs import (CosetGraphResult, Graph, QuotientResult, complete_bipartite,
                     complete_graph, coset_graph, cycle_graph, graph6_decode,
                     graph6_encode, is_covering_projection, lcf_parse,
                     parse_edge_list, format_edge_list, quotient_graph)
from .fp import (CosetTable, MarkedGroup, NormalQuotient, Presentation,
                 coset_action, enumerate_arc_regular_quotients, feasibility,
                 low_index_normal_subgroups, todd_coxeter, universal_group)
from .analyze import (ArcRegularAction, CanonicalForm, LocalAction, SArcProfile,
                      automorphism_group, canonical_form, canonical_graph,
                      find_arc_regular_subgroups, local_action, s_arc_profile)
from .cover import (Character, CoverBuild, CoverSpec, SemidirectGroup,
                    StructureReport, base_graph, build_cover, build_cover_data,
                    build_semidirect, conjugation_character, covers_for_base,
                    enumerate_covers, has_inverting_automorphism,
                    root_candidates, structure_report)
from .census import (REGISTRY, NamedGraphRecord, VerifyReport, build_named,
                     coxeter_graph, cube_graph, petersen_graph, verify_named)

__all__ = [name for name in dir() if not name.startswith("_")]
