//! Exact noncommutative arithmetic in a twisted Malcev-Neumann series ring
//! over a multiquadratic number field, together with a crossed-product
//! normal-form model, an expression front-end, and a verification suite.
//!
//! The ring is built from three layers:
//!
//! * [`numfield`] — the field `K_m = ℚ(√p1, ..., √pm)`, its Galois
//!   generators `f_i`, and the twist characters `Φ_g`;
//! * [`grp`] — the free abelian group `G = ⊕ℤ` with its total lex order;
//! * [`series`] — finite twisted formal sums `Σ a_x · x` with the product
//!   `(a x)(b y) = a Φ_x(b) · xy`, plus budgeted series inversion.
//!
//! [`crossed`] is an exact, total model of the same arithmetic in normal
//! form `Σ a_{ε,μ} (√p)^ε x^μ` with coefficients in a rational function
//! field; [`verify`] binds algebraic identities of the construction to
//! seeded, machine-checkable reports; [`expr`] parses and evaluates the
//! textual expression language used by the CLI.

pub mod crossed;
pub mod error;
pub mod expr;
pub mod grp;
pub mod numfield;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
