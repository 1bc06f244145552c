//! Exact integer linear algebra: Smith normal form and abelian group
//! bookkeeping built on it. No floating point anywhere.

mod abelian;
mod matrix;
mod snf;
mod span;

pub use abelian::{abelian_structure, quotient_structure, subgroup_order_in_torsion, AbelianStructure};
pub use matrix::IntMatrix;
pub use snf::{elementary_divisors, smith_normal_form, SnfResult};
pub use span::SpanTracker;
