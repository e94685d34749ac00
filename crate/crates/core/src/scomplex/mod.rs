//! Finite flag and simplicial complexes: links, integer homology,
//! Cohen–Macaulay checks and simplicial-map lifting properties.

mod cm;
mod flag;
mod harness;
mod homology;
mod maps;

pub use cm::{homological_connectivity, lcm_check, wcm_check, LcmVerdict};
pub use flag::{link_of, FlagComplex};
pub use harness::{
    action_transitivity, inclusion_connectivity_harness, InclusionVerdict, TransitivityVerdict,
};
pub use homology::{homology_of, DegreeHomology, HomologyResult, SimplicialComplex, SIMPLEX_CAP};
pub use maps::{
    check_link_lifting, preserves_links, BSample, LiftBudget, LiftVerdict, SimplicialMap,
    SymRelation,
};
