//! Classification of irreducible one-sided topological Markov shifts.
//!
//! For a {0,1} transition matrix `A` the complete invariant under continuous
//! orbit equivalence is the Bowen–Franks group `BF(A^t)` pointed at the class
//! `u_A` of `(1, ..., 1)`, together with the sign of `det(id - A)`. This crate
//! computes that invariant exactly and decides continuous orbit equivalence
//! and flow equivalence from it. It also builds a matrix for any admissible
//! invariant and decides positivity of ordered-cohomology classes via periodic orbits.
//!
//! ```
//! use sftclass::{decide_coe, ZeroOneMatrix, DEFAULT_POINTED_BOUND};
//!
//! let full2 = ZeroOneMatrix::new(vec![vec![1, 1], vec![1, 1]]).unwrap();
//! let golden = ZeroOneMatrix::new(vec![vec![1, 1], vec![1, 0]]).unwrap();
//! let decision = decide_coe(&full2, &golden, DEFAULT_POINTED_BOUND).unwrap();
//! assert!(decision.equivalent);
//! ```

pub mod cohomology;
pub mod error;
pub mod format;
mod graph;
pub mod groups;
pub mod invariants;
pub mod linalg;
pub mod realization;
mod serde_int;
pub mod sft;

pub use cohomology::{
    attracting_weight, coboundary, is_positive_class, orbit_sum, LocallyConstantFn, Positivity,
};
pub use error::{Error, Result};
pub use groups::{
    height_sequence, is_isomorphic, orbit_brute_force, pointed_is_isomorphic, tensor_z2,
    FgAbelianGroup, GroupElement, Height, PointedGroup, Presentation, DEFAULT_POINTED_BOUND,
};
pub use invariants::{
    bowen_franks, decide_coe, decide_coe_from_invariants, decide_flow, decide_flow_from_groups, full_group_abelianization, invariant_data,
    invariant_triple, k_groups, Decision, KGroups, MarkovInvariant,
};
pub use linalg::{determinant, kernel_basis, smith_normal_form, solve_linear, IntMatrix, SnfResult};
pub use realization::{
    base_matrix, choose_shape, point_vector, realize, tail_extension, InvariantTriple,
    RealizationPlan, RealizeOptions,
};
pub use sft::{
    count_period_points, edge_shift, higher_block, is_irreducible, period_of,
    periodic_orbit_words, satisfies_condition_i, validate, Diagnostics, EventuallyPeriodicPoint,
    NonNegMatrix, Word, ZeroOneMatrix,
};
