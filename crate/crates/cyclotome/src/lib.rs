//! Cyclotomic numbers over GF(q^n) of order dividing (q^n-1)/(q-1), computed
//! from Singer difference sets by pure modular arithmetic, with an
//! independent brute-force finite-field oracle for verification.
//!
//! The pipeline: a primitive polynomial of degree n over GF(q) feeds a linear
//! recurrence whose zero positions form a Singer difference set I in Z_e,
//! e = (q^n-1)/(q-1). Projective lines through the points 0 and k are carved
//! out of I by translate intersections (or pulled back from a subfield), and
//! the order-e cyclotomic numbers read off the line sets. Orders dividing e
//! are obtained by summation, and uniform closed forms cross-check the
//! special cases.
//!
//! ```
//! use cyclotome::lines::CycloCtx;
//!
//! // GF(625) over GF(5) with the default (Conway) modulus
//! let ctx = CycloCtx::new(5, 4).unwrap();
//! let s1 = ctx.line_set(1).unwrap();
//! assert_eq!(s1.members(), &[0, 1, 23, 72, 88, 97]);
//! ```

// divisibility predicates stay as `%` so the crate builds on older toolchains
#![allow(clippy::manual_is_multiple_of)]

pub mod cyclo;
pub mod error;
pub mod factor;
pub mod gf;
pub mod lines;
pub mod oracle;
pub mod residue;
pub mod singer;

pub use cyclo::CycloTable;
pub use error::{Error, Result};
pub use gf::{FieldCtx, Poly};
pub use lines::CycloCtx;
pub use residue::ResidueSet;
