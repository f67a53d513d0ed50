//! Exact-arithmetic engine for homogeneous Rota-Baxter operators of weight 0
//! on the simple 3-Lie algebra spanned by {L_n | n in Z} with bracket
//! [L_l, L_m, L_n] = D(l, m, n) L_{l+m+n-1}.
//!
//! The crate verifies operators against the defining identities by exhaustive
//! window enumeration over exact scalars (rationals, or rational functions of
//! one parameter `a`), decides the criterion globally for finite support,
//! classifies finite-support operators by search, recognizes the closed-form
//! families, and constructs the induced 3-Lie brackets.

pub mod alie;
pub mod classify;
pub mod error;
pub mod induced;
pub mod operators;
pub mod report;
pub mod scalar;
pub mod window;

pub use error::{Error, Result};
pub use report::{CheckOptions, Counterexample, DegeneratePolicy, Report};
pub use scalar::{Poly, Rat, RatFun, Scalar};
pub use window::Window;
