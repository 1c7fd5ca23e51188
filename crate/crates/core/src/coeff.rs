//! Scalar traits for series coefficients.
//!
//! The series and composita machinery is generic over any commutative ring
//! with division ([`Coefficient`], a thin bundle of `num-traits` bounds).
//! The half-iterate solver additionally needs to take exact square roots of
//! the leading coefficient, which is what [`ExactSqrt`] provides. Number
//! theory that only makes sense over the rationals (integrality checks,
//! numerator/denominator splits) is implemented concretely on [`crate::Rat`].

use std::fmt;

use num_traits::{Num, Signed};

use crate::Rat;

/// Coefficient scalar: exact field-like arithmetic plus printing.
///
/// Blanket-implemented; `Rat` is the intended instantiation, but any
/// `num-traits` numeric type (including floats, for callers that accept
/// approximation) satisfies the bounds.
pub trait Coefficient: Num + Signed + Clone + fmt::Debug + fmt::Display {}

impl<T> Coefficient for T where T: Num + Signed + Clone + fmt::Debug + fmt::Display {}

/// Scalars whose square roots can be decided and produced exactly.
pub trait ExactSqrt: Sized {
    /// The nonnegative exact square root, if one exists in this type.
    fn exact_sqrt(&self) -> Option<Self>;
}

impl ExactSqrt for Rat {
    /// A canonical rational num/den (gcd 1, den > 0) is a square iff
    /// num >= 0 and both num and den are perfect squares. Decided with
    /// integer floor square roots; no floating point.
    fn exact_sqrt(&self) -> Option<Rat> {
        if self.is_negative() {
            return None;
        }
        let num_root = self.numer().sqrt();
        let den_root = self.denom().sqrt();
        if &num_root * &num_root == *self.numer() && &den_root * &den_root == *self.denom() {
            // roots of coprime integers are coprime, so new_raw stays canonical
            Some(Rat::new_raw(num_root, den_root))
        } else {
            None
        }
    }
}
