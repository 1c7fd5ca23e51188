//! Truncated formal power series with no constant term.
//!
//! A `Series<C>` stores the coefficients `f(1)..f(N)` of
//! `f(x) = f(1)x + f(2)x^2 + ... + f(N)x^N + O(x^(N+1))`.
//!
//! Invariants:
//! - there is no index 0: every series here has zero constant term;
//! - `order >= 1`, and exactly `order` coefficients are stored (zeros
//!   included);
//! - equality compares order and coefficients, never the label.

use crate::coeff::Coefficient;

/// A truncated power series `f(1)x + ... + f(N)x^N`.
#[derive(Clone, Debug)]
pub struct Series<C> {
    order: usize,
    coeffs: Vec<C>,
    label: Option<String>,
}

impl<C: Coefficient> Series<C> {
    /// The zero series truncated at `order`.
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "series order must be at least 1");
        Series {
            order,
            coeffs: vec![C::zero(); order],
            label: None,
        }
    }

    /// The identity series `x`.
    pub fn identity(order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = C::one();
        s
    }

    /// Build from the coefficient list `f(1), f(2), ...`; the order is the
    /// list length.
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least one coefficient");
        Series {
            order: coeffs.len(),
            coeffs,
            label: None,
        }
    }

    /// Build by evaluating `f(n)` for each `n` in `1..=order`.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize) -> C) -> Self {
        assert!(order >= 1, "series order must be at least 1");
        Series {
            order,
            coeffs: (1..=order).map(|n| f(n)).collect(),
            label: None,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `x^n`. Panics if `n` is 0 or beyond the truncation.
    pub fn coeff(&self, n: usize) -> &C {
        assert!(
            n >= 1 && n <= self.order,
            "coefficient index {n} outside 1..={}",
            self.order
        );
        &self.coeffs[n - 1]
    }

    pub fn set_coeff(&mut self, n: usize, value: C) {
        assert!(
            n >= 1 && n <= self.order,
            "coefficient index {n} outside 1..={}",
            self.order
        );
        self.coeffs[n - 1] = value;
    }

    /// Coefficients `f(1)..f(N)` as a slice.
    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Iterate `(n, f(n))` pairs for `n` in `1..=order`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &C)> {
        self.coeffs.iter().enumerate().map(|(i, c)| (i + 1, c))
    }

    /// Copy truncated (or zero-extended) to a new order.
    pub fn resized(&self, order: usize) -> Series<C> {
        assert!(order >= 1, "series order must be at least 1");
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order, C::zero());
        coeffs.truncate(order);
        Series {
            order,
            coeffs,
            label: self.label.clone(),
        }
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

impl crate::Series {
    /// True iff every coefficient has denominator 1.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl<C: PartialEq> PartialEq for Series<C> {
    /// Label is presentation only; equality is order + coefficients.
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.coeffs == other.coeffs
    }
}

impl<C: Eq> Eq for Series<C> {}
