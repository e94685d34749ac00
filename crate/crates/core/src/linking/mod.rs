//! Linking forms, their morphisms and hyperbolic decompositions, and ranks.

mod automorphism;
mod classify;
mod form;
mod hyperbolic;
pub(crate) mod morphism;
mod rank;
mod scramble;
mod subform;

pub use automorphism::{extend_to_automorphism, kernel_form, pairing_hom};
pub use classify::{
    are_isomorphic, are_isomorphic_with_cap, find_isomorphism, normal_form, NormalForm,
    PrimaryPart, ISO_SEARCH_CAP,
};
pub use form::LinkingForm;
pub use hyperbolic::{
    frame_coordinates, frame_morphism, hyperbolic_basis, standard_frame, HyperbolicPair,
};
pub use morphism::{
    morphisms_from_w, pair_retraction, sorted_torsion, split_along, FormMorphism, Split, WPairs,
};
pub use rank::{
    assemble, k_rank, rank_upper_bound, stable_k_rank, RankBudget, RankResult, StableRankResult,
};
pub use scramble::scramble;
pub use subform::{orthogonal_complement, Realized, Subform};

/// Tag for the sign convention `b(rho, sigma) = +1/k` used throughout.
pub const SIGN_CONVENTION: &str = "sec3";
