//! Exact multivariate polynomials over ℚ and `𝔽ₚ`, reduced Groebner bases
//! and ideal-level queries.
//!
//! The default monomial order is graded reverse lexicographic with the
//! first variable largest.

mod field;
pub mod groebner;
mod ideal;
mod monomial;
mod parse;
pub(crate) mod poly;

pub use field::{Field, FieldKind, PrimeField, Rationals};
pub use groebner::{groebner_basis, groebner_basis_with_stats, reduce_by_basis, GbStats};
pub use ideal::{Ideal, IdealJson, QuotientDimension};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_polynomial;
pub use poly::{PolyRing, Polynomial};

/// Runs `$body` with `$f` bound to the concrete field described by a
/// [`FieldKind`].
#[macro_export]
macro_rules! with_field {
    ($kind:expr, |$f:ident| $body:expr) => {
        match $kind {
            $crate::polyring::FieldKind::Rationals => {
                let $f = $crate::polyring::Rationals;
                $body
            }
            $crate::polyring::FieldKind::Prime(p) => {
                let $f = $crate::polyring::PrimeField::new(p).expect("validated prime");
                $body
            }
        }
    };
}
