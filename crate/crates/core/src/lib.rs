//! Exact Levine–Tristram and Casson–Gordon signature invariants, and the
//! lower bounds they give on 1-handles of rational homology balls and on
//! fusion numbers of ribbon knots.

pub mod abelian;
pub mod angle;
pub mod cg;
pub mod chain;
pub mod error;
pub mod family;
pub mod knot;
pub mod lattice;
pub mod matrix;
pub mod obstruct;
pub mod oracle;
pub mod reference;
pub mod signature;
pub mod snf;

pub use angle::RationalAngle;
pub use error::{Error, Result};
pub use knot::KnotExpr;
pub use matrix::IntMatrix;
pub use signature::{lt_signature, SignatureValue};
pub use snf::{cokernel_analysis, smith_normal_form, CokernelInfo, SnfResult};
