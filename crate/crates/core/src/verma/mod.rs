//! Generalized Verma modules `M(μ) = U_− ⊗ F(μ)`.
//!
//! * [`element`]: vectors of `M(μ)` and the actions of `L_0` and `L_1`;
//! * [`singular`]: the search for singular vectors;
//! * [`morphism`]: morphisms `M(λ) → M(μ)`, composition, duality and the
//!   direct morphism check;
//! * [`equations`]: the degree 1–3 characterising equations;
//! * [`catalog`]: `∇_A`, `∇_B`, `∇_C` and their composites;
//! * [`classify`], [`certificate`]: sweeps, family labels and JSON output.

pub mod cache;
pub mod catalog;
pub mod certificate;
pub mod classify;
pub mod element;
pub mod equations;
pub mod morphism;
pub mod singular;

pub use cache::ModuleCache;
pub use catalog::{
    morphism_between, nabla, nabla_a_closed, nabla_b_closed, nabla_ba, nabla_ca, nabla_cb, nabla_cba, Nabla,
};
pub use certificate::{verify_certificate, Certificate, Checks};
pub use classify::{classify, classify_target, family_label, ClassRow, Family};
pub use element::{act_l0, act_odd, act_x5d45, is_highest, killed_by_l1, l1_spanning_set, L1Element, VermaElement};
pub use equations::{verify_degree_equations, EquationReport, FamilyVerdict};
pub use morphism::{
    apply_morphism, check_morphism, compose, dual_morphism, extend_equivariantly, morphism_from_singular,
    theta_decomposition, CheckFailure, MorphismCheck, MorphismData, ThetaDecomposition,
};
pub use singular::{candidate_weights, search, singular_vectors, Conditions, SingularSpace};
