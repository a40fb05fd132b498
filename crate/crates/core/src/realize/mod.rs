//! Concrete realizations of the abstract algebras on spaces of functions and
//! on truncated sequence spaces.

pub mod explorer;
pub mod func;
pub mod identities;
pub mod matrix;
pub mod operator;
pub mod pipeline;
pub mod rho;

pub use explorer::{default_mu_candidates, third_order_explorer, third_order_solution};
pub use func::{differentiate, mul_func, DerivKind, FuncExpr, FuncKey};
pub use identities::{
    verify_chvar, verify_eq5_matrix, verify_linear, verify_newexp, verify_newsin, verify_vector, verify_vector_linear,
    verify_vw_realization, ChangeOfVariables, VECTOR_ITEMS,
};
pub use matrix::Matrix;
pub use operator::{
    apply_assigned, apply_assigned_vec, apply_binomial, apply_product, MatFunc, Operator, OperatorAssignment, VecFunc,
};
pub use pipeline::{verify_pipeline, PIPELINE_SUITES};
pub use rho::{rho_truncated, verify_rho_agreement};
