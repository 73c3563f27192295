//! Explicit functions and spaces: the cosine bump construction, the `ℝ^∞`
//! function whose section at the origin is the Dirichlet function, the
//! sequential-space example, and the depth-2 Dirichlet tower that feeds them.

mod lemma81;
mod rinfty;
mod sequential;
mod tagged;

pub use lemma81::{bump_g, lemma81_interval, Lemma81, SupportData};
pub use rinfty::{
    example2_eval, example2_phi, example2_piece, example2_psi, h_cap, h_defect, rinfty_membership,
    truncation_index, FinSeq, RinftySet,
};
pub use sequential::{
    dirichlet_tower, example1_eval, example1_eval_with, sequential_convergence_probe,
    BasicNeighborhood, SequentialPoint,
};
pub use tagged::{rational_enumeration, rational_index, rationals, Exactness, TaggedReal};
