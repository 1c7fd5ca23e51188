//! Functional square roots of compositae and their iterates.
//!
//! Given the composita `F(n,k)` of a series `F` with `f(1) != 0`, the
//! composita of the half-iterate `A` (the solution of `A(A(x)) = F(x)`) is
//! determined by
//!
//! ```text
//! A(n,n) = a(1)^n                                       with a(1) = sqrt(f(1))
//! A(n,k) = (F(n,k) - sum_{m=k+1}^{n-1} A(n,m) A(m,k)) / (a(1)^n + a(1)^k)
//! ```
//!
//! filled for each `n` ascending with `k` descending from `n` to 1: the
//! entry `A(n,k)` only needs already-computed entries of row `n` with larger
//! `k` and entries of earlier rows. `2^n`-th iterative roots are obtained by
//! halving `n` times (`B = sqrt(F)`, `C = sqrt(B)`, ...).
//!
//! Only the positive branch `a(1) = +sqrt(f(1))` is taken; see
//! [`SqrtConfig`]. The empty sum at `k = n-1` is zero.

use num_traits::One;

use crate::coeff::{Coefficient, ExactSqrt};
use crate::composita::{composita_of, scale_conjugate, Composita};
use crate::error::Error;
use crate::series::Series;
use crate::{Int, Rat};

/// The resolved square root of the leading coefficient, fixing the branch of
/// the recurrence. `root_of_f1` must be positive: with the negative branch
/// the divisor `a(1)^n + a(1)^k` vanishes whenever `n` and `k` have opposite
/// parity.
#[derive(Clone, Debug, PartialEq)]
pub struct SqrtConfig<C> {
    root_of_f1: C,
    order: usize,
}

impl<C: Coefficient> SqrtConfig<C> {
    /// Validate a candidate root against the leading coefficient `f1`.
    pub fn new(root_of_f1: C, f1: &C, order: usize) -> Result<Self, Error> {
        if root_of_f1.clone() * root_of_f1.clone() != *f1 {
            return Err(Error::NonSquareLeadingCoefficient {
                value: f1.to_string(),
            });
        }
        if !root_of_f1.is_positive() {
            return Err(Error::NegativeBranch {
                value: root_of_f1.to_string(),
            });
        }
        Ok(SqrtConfig { root_of_f1, order })
    }

    pub fn root_of_f1(&self) -> &C {
        &self.root_of_f1
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

impl<C: Coefficient + ExactSqrt> SqrtConfig<C> {
    /// Resolve `a(1)` for a composita: requires `T(1,1) != 0` and an exact
    /// square root; always picks the positive branch.
    pub fn for_composita(comp: &Composita<C>) -> Result<Self, Error> {
        let f1 = comp.entry(1, 1);
        if f1.is_zero() {
            return Err(Error::ZeroLeadingCoefficient);
        }
        let root = f1
            .exact_sqrt()
            .ok_or_else(|| Error::NonSquareLeadingCoefficient {
                value: f1.to_string(),
            })?;
        SqrtConfig::new(root, f1, comp.order())
    }
}

/// Shared recurrence body: `divisor(n, k)` supplies `a(1)^n + a(1)^k`.
fn sqrt_with_diagonal<C: Coefficient>(
    f_comp: &Composita<C>,
    root: &C,
) -> Composita<C> {
    let order = f_comp.order();
    // a(1)^1 .. a(1)^N
    let mut pows = Vec::with_capacity(order + 1);
    pows.push(C::one());
    for _ in 0..order {
        let next = pows.last().unwrap().clone() * root.clone();
        pows.push(next);
    }
    let mut rows: Vec<Vec<C>> = (1..=order).map(|n| vec![C::zero(); n]).collect();
    for n in 1..=order {
        rows[n - 1][n - 1] = pows[n].clone();
        for k in (1..n).rev() {
            let mut acc = f_comp.entry(n, k).clone();
            for m in (k + 1)..n {
                acc = acc - rows[n - 1][m - 1].clone() * rows[m - 1][k - 1].clone();
            }
            rows[n - 1][k - 1] = acc / (pows[n].clone() + pows[k].clone());
        }
    }
    Composita::from_rows(rows).expect("rows are triangular by construction")
}

/// Composita of the half-iterate `A` with `A(A(x)) = F(x)`, from the
/// composita of `F`. Fails when `f(1)` is zero or has no exact square root.
pub fn functional_sqrt<C: Coefficient + ExactSqrt>(
    f_comp: &Composita<C>,
) -> Result<Composita<C>, Error> {
    let config = SqrtConfig::for_composita(f_comp)?;
    Ok(sqrt_with_diagonal(f_comp, config.root_of_f1()))
}

/// The `f(1) = 1` specialization: the diagonal is all ones and every divisor
/// is the constant 2. Produces the same table as [`functional_sqrt`] on any
/// input it accepts.
pub fn functional_sqrt_unit<C: Coefficient>(f_comp: &Composita<C>) -> Result<Composita<C>, Error> {
    let f1 = f_comp.entry(1, 1);
    if !f1.is_one() {
        return Err(Error::LeadingCoefficientNotOne {
            value: f1.to_string(),
        });
    }
    Ok(sqrt_with_diagonal(f_comp, &C::one()))
}

/// Composita of the `2^exponent`-th iterative root: `exponent` successive
/// halvings. A failed halving is reported with its step index (1-based).
pub fn iterated_root<C: Coefficient + ExactSqrt>(
    f_comp: &Composita<C>,
    exponent: u32,
) -> Result<Composita<C>, Error> {
    assert!(exponent >= 1, "iteration exponent must be at least 1");
    let mut current = functional_sqrt(f_comp).map_err(|e| e.at_step(1))?;
    for step in 2..=exponent {
        current = functional_sqrt(&current).map_err(|e| e.at_step(step))?;
    }
    Ok(current)
}

/// One entry of a 4-adic integrality report: `value = 4^(n-k) * T(n,k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegralityEntry {
    pub n: usize,
    pub k: usize,
    pub value: Rat,
    pub pass: bool,
}

/// Per-entry result of checking `4^(n-k) * T(n,k)` for integrality.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegralityReport {
    pub entries: Vec<IntegralityEntry>,
    pub pass: bool,
}

/// Check every entry of a (half-iterate) composita for the 4-adic
/// integrality property: `4^(n-k) * T(n,k)` is an integer. Failures are
/// report entries, not errors.
pub fn check_4adic_integrality(a_comp: &Composita<Rat>) -> IntegralityReport {
    let order = a_comp.order();
    let four = Rat::from_integer(Int::from(4));
    let mut pows = Vec::with_capacity(order);
    pows.push(Rat::from_integer(Int::from(1)));
    for _ in 1..order {
        let next = pows.last().unwrap().clone() * four.clone();
        pows.push(next);
    }
    let mut entries = Vec::with_capacity(order * (order + 1) / 2);
    let mut pass = true;
    for n in 1..=order {
        for k in 1..=n {
            let value = pows[n - k].clone() * a_comp.entry(n, k).clone();
            let ok = value.is_integer();
            pass &= ok;
            entries.push(IntegralityEntry { n, k, value, pass: ok });
        }
    }
    IntegralityReport { entries, pass }
}

/// Solve `A(A(x)) = F(4x)/4` for an integer-coefficient `F` with `f(1) = 1`
/// and return `A`'s coefficients, which are guaranteed integers. The scaling
/// happens internally: pass the unscaled `F`. A fractional output coefficient
/// would contradict the guarantee and is reported as an internal error.
pub fn solve_scaled_integer(f: &Series<Rat>) -> Result<Series<Rat>, Error> {
    for (n, c) in f.iter() {
        if !c.is_integer() {
            return Err(Error::NonIntegerCoefficient {
                n,
                value: c.to_string(),
            });
        }
    }
    let f1 = f.coeff(1);
    if !f1.is_one() {
        return Err(Error::LeadingCoefficientNotOne {
            value: f1.to_string(),
        });
    }
    let scaled = scale_conjugate(&composita_of(f), &Rat::from_integer(Int::from(4)))?;
    let a = functional_sqrt_unit(&scaled)?.coefficients();
    for (n, c) in a.iter() {
        if !c.is_integer() {
            return Err(Error::IntegralityViolation {
                n,
                value: c.to_string(),
            });
        }
    }
    Ok(a)
}

/// First-column coefficients rescaled by `n!`, for equations read on
/// exponential generating functions: `a(n) = n! * T(n,1)`.
pub fn egf_coefficients(a_comp: &Composita<Rat>) -> Series<Rat> {
    Series::from_fn(a_comp.order(), |n| {
        Rat::from_integer(crate::catalog::factorial(n)) * a_comp.entry(n, 1).clone()
    })
}
