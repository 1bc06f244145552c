//! Schur multipliers, toral classes and Bogomolov multipliers of finite
//! solvable groups given by power-conjugate presentations, and the
//! resulting verdicts on extending free surface actions over 3-manifolds.

pub mod corpus;
pub mod error;
pub mod multiplier;
pub mod obstruction;
pub mod pc;
pub mod zlinalg;

pub use error::{Error, ParseErrorKind, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/presentations.md")]
    mod presentations {}
    #[doc = include_str!("../../../book/src/linalg.md")]
    mod linalg {}
    #[doc = include_str!("../../../book/src/multiplier.md")]
    mod multiplier {}
    #[doc = include_str!("../../../book/src/obstructions.md")]
    mod obstructions {}
    #[doc = include_str!("../../../book/src/verdicts.md")]
    mod verdicts {}
}
