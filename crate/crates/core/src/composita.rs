//! The composita of a series: the triangle `T(n,k) = [x^n] f(x)^k`.
//!
//! For a series `f` with zero constant term, power `k` first contributes at
//! order `k`, so the table is lower triangular with `1 <= k <= n <= N`.
//! Structural invariants maintained by every constructor here:
//! - `T(n,1) = f(n)` (first column is the series itself);
//! - `T(n,n) = f(1)^n` (diagonal is the powers of the leading coefficient);
//! - entries with `k > n` do not exist.
//!
//! Storage is a dense flat vector in row-major order (row `n` holds the `n`
//! entries `k = 1..n`), zeros stored explicitly; at desk-scale orders the
//! triangle is tiny and sparsity buys nothing.

use crate::coeff::Coefficient;
use crate::error::Error;
use crate::series::Series;

/// Default refusal bound for the composition-enumeration oracle: a series of
/// order `N` has `2^(N-1)` compositions to walk per order.
pub const ENUMERATION_BOUND: usize = 16;

/// Lower-triangular table of the coefficients of `f^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composita<C> {
    order: usize,
    table: Vec<C>,
}

fn triangle_len(order: usize) -> usize {
    order * (order + 1) / 2
}

fn index(n: usize, k: usize) -> usize {
    debug_assert!(k >= 1 && k <= n);
    n * (n - 1) / 2 + (k - 1)
}

impl<C: Coefficient> Composita<C> {
    /// Triangle of all zeros (not a valid composita of anything; builder use).
    fn zeros(order: usize) -> Self {
        assert!(order >= 1, "composita order must be at least 1");
        Composita {
            order,
            table: vec![C::zero(); triangle_len(order)],
        }
    }

    /// Build by evaluating `t(n,k)` over the triangle.
    pub fn from_fn(order: usize, mut t: impl FnMut(usize, usize) -> C) -> Self {
        let mut out = Composita::zeros(order);
        for n in 1..=order {
            for k in 1..=n {
                out.table[index(n, k)] = t(n, k);
            }
        }
        out
    }

    /// Composita of the identity series `x`: `T(n,k) = [n = k]`.
    pub fn identity(order: usize) -> Self {
        Composita::from_fn(order, |n, k| if n == k { C::one() } else { C::zero() })
    }

    /// Build from explicit rows; row `n` (1-based) must have exactly `n`
    /// entries.
    pub fn from_rows(rows: Vec<Vec<C>>) -> Result<Self, Error> {
        if rows.is_empty() {
            return Err(Error::InvalidSeries("composita needs at least one row".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != i + 1 {
                return Err(Error::InvalidSeries(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    i + 1
                )));
            }
        }
        let order = rows.len();
        let mut table = Vec::with_capacity(triangle_len(order));
        for row in rows {
            table.extend(row);
        }
        Ok(Composita { order, table })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `T(n,k)`. Panics outside the triangle; use [`Composita::get`] for a
    /// checked lookup.
    pub fn entry(&self, n: usize, k: usize) -> &C {
        self.get(n, k).expect("triangle index out of range")
    }

    pub fn get(&self, n: usize, k: usize) -> Option<&C> {
        if k >= 1 && k <= n && n <= self.order {
            Some(&self.table[index(n, k)])
        } else {
            None
        }
    }

    fn set(&mut self, n: usize, k: usize, value: C) {
        self.table[index(n, k)] = value;
    }

    /// Row `n`: the slice `T(n,1)..T(n,n)`.
    pub fn row(&self, n: usize) -> &[C] {
        assert!(n >= 1 && n <= self.order, "row {n} outside 1..={}", self.order);
        &self.table[index(n, 1)..=index(n, n)]
    }

    /// Rows in ascending order, as in the tabular presentation.
    pub fn rows(&self) -> impl Iterator<Item = &[C]> {
        (1..=self.order).map(|n| self.row(n))
    }

    /// First column as a series: the coefficients of `f` itself, since
    /// `a(n) = T(n,1)`.
    pub fn coefficients(&self) -> Series<C> {
        Series::from_fn(self.order, |n| self.entry(n, 1).clone())
    }
}

/// Composita of `f` by iterated truncated convolution: the row for power `k`
/// is the row for `k-1` convolved once more with `f`, O(N^2) per row.
pub fn composita_of<C: Coefficient>(f: &Series<C>) -> Composita<C> {
    let order = f.order();
    let mut out = Composita::zeros(order);
    for n in 1..=order {
        out.set(n, 1, f.coeff(n).clone());
    }
    for k in 2..=order {
        for n in k..=order {
            // T(n,k) = sum_{m=k-1}^{n-1} T(m,k-1) * f(n-m)
            let mut acc = C::zero();
            for m in (k - 1)..n {
                acc = acc + out.entry(m, k - 1).clone() * f.coeff(n - m).clone();
            }
            out.set(n, k, acc);
        }
    }
    out
}

/// Brute-force oracle: `T(n,k)` as the sum of `f(p_1)...f(p_k)` over all
/// compositions `p_1 + ... + p_k = n` into exactly `k` parts. Exponential in
/// the order; refuses orders above [`ENUMERATION_BOUND`].
pub fn composita_by_compositions<C: Coefficient>(f: &Series<C>) -> Result<Composita<C>, Error> {
    composita_by_compositions_bounded(f, ENUMERATION_BOUND)
}

/// [`composita_by_compositions`] with an explicit refusal bound.
pub fn composita_by_compositions_bounded<C: Coefficient>(
    f: &Series<C>,
    bound: usize,
) -> Result<Composita<C>, Error> {
    let order = f.order();
    if order > bound {
        return Err(Error::EnumerationBound { order, bound });
    }
    let mut out = Composita::<C>::zeros(order);
    let mut parts: Vec<usize> = Vec::new();
    for n in 1..=order {
        // Compositions of n encoded by cut sets: bit i of the mask cuts
        // between position i+1 and i+2 of 1..n.
        for mask in 0u64..(1u64 << (n - 1)) {
            parts.clear();
            let mut start = 0usize;
            for i in 0..(n - 1) {
                if mask & (1 << i) != 0 {
                    parts.push(i + 1 - start);
                    start = i + 1;
                }
            }
            parts.push(n - start);
            let k = parts.len();
            let mut product = C::one();
            for &p in &parts {
                product = product * f.coeff(p).clone();
            }
            let acc = out.entry(n, k).clone() + product;
            out.set(n, k, acc);
        }
    }
    Ok(out)
}

/// Composita of the composition `G(A(x))` from the compositae of the inner
/// series `A` and outer series `G`:
/// `T(n,k) = sum_{m=k}^{n} A(n,m) * G(m,k)`.
pub fn compose<C: Coefficient>(
    inner: &Composita<C>,
    outer: &Composita<C>,
) -> Result<Composita<C>, Error> {
    if inner.order() != outer.order() {
        return Err(Error::OrderMismatch {
            left: inner.order(),
            right: outer.order(),
        });
    }
    let order = inner.order();
    Ok(Composita::from_fn(order, |n, k| {
        let mut acc = C::zero();
        for m in k..=n {
            acc = acc + inner.entry(n, m).clone() * outer.entry(m, k).clone();
        }
        acc
    }))
}

/// Composita of `F(cx)/c` from the composita of `F`: entrywise
/// `T'(n,k) = c^(n-k) * T(n,k)`. Requires `c != 0`.
pub fn scale_conjugate<C: Coefficient>(comp: &Composita<C>, c: &C) -> Result<Composita<C>, Error> {
    if c.is_zero() {
        return Err(Error::ZeroScale);
    }
    let order = comp.order();
    let mut powers = Vec::with_capacity(order);
    powers.push(C::one());
    for _ in 1..order {
        let next = powers.last().unwrap().clone() * c.clone();
        powers.push(next);
    }
    Ok(Composita::from_fn(order, |n, k| {
        powers[n - k].clone() * comp.entry(n, k).clone()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Int, Rat};

    fn rat(n: i64) -> Rat {
        Rat::from_integer(Int::from(n))
    }

    fn series(coeffs: &[i64]) -> Series<Rat> {
        Series::from_coeffs(coeffs.iter().copied().map(rat).collect())
    }

    #[test]
    fn identity_triangle_is_kronecker_delta() {
        let comp = composita_of(&Series::<Rat>::identity(3));
        assert_eq!(comp, Composita::identity(3));
        for n in 1..=3 {
            for k in 1..=n {
                assert_eq!(*comp.entry(n, k), if n == k { rat(1) } else { rat(0) });
            }
        }
    }

    #[test]
    fn powers_of_x_plus_x_squared() {
        // (x+x^2)^2 = x^2 + 2x^3 + x^4, (x+x^2)^3 = x^3 + 3x^4 + ...
        let comp = composita_of(&series(&[1, 1, 0, 0]));
        assert_eq!(*comp.entry(3, 2), rat(2));
        assert_eq!(*comp.entry(4, 2), rat(1));
        assert_eq!(*comp.entry(4, 3), rat(3));
        assert_eq!(*comp.entry(4, 4), rat(1));
    }

    #[test]
    fn quadratic_sixteen_matches_binomial_form() {
        // T(n,k) = C(k, n-k) * 16^(n-k) for f = x + 16x^2
        let comp = composita_of(&series(&[1, 16, 0, 0]));
        assert_eq!(*comp.entry(3, 2), rat(32));
        assert_eq!(*comp.entry(4, 2), rat(256));
        assert_eq!(*comp.entry(4, 3), rat(48));
        assert_eq!(*comp.entry(2, 1), rat(16));
    }

    #[test]
    fn first_column_and_diagonal_invariants() {
        let f = series(&[3, -2, 5, 7]);
        let comp = composita_of(&f);
        for n in 1..=4 {
            assert_eq!(comp.entry(n, 1), f.coeff(n));
            let mut pow = rat(1);
            for _ in 0..n {
                pow *= rat(3);
            }
            assert_eq!(*comp.entry(n, n), pow);
        }
    }

    #[test]
    fn compositions_oracle_small_cases() {
        // compositions of 3 into 2 parts: (1,2), (2,1)
        let comp = composita_by_compositions(&series(&[1, 1, 0])).unwrap();
        assert_eq!(*comp.entry(3, 2), rat(2));
        // single composition (1,...,1) when n = k
        let comp_x = composita_by_compositions(&Series::<Rat>::identity(4)).unwrap();
        assert_eq!(*comp_x.entry(4, 4), rat(1));
        // n = k gives f(1)^n in general
        let comp_g = composita_by_compositions(&series(&[5, 1, 2])).unwrap();
        assert_eq!(*comp_g.entry(3, 3), rat(125));
    }

    #[test]
    fn compositions_oracle_refuses_large_orders() {
        let f = Series::<Rat>::identity(17);
        match composita_by_compositions(&f) {
            Err(Error::EnumerationBound { order: 17, bound: 16 }) => {}
            other => panic!("expected enumeration bound error, got {other:?}"),
        }
        assert!(composita_by_compositions_bounded(&Series::<Rat>::identity(5), 4).is_err());
    }

    #[test]
    fn compose_substitutes_inner_into_outer() {
        // f(f(x)) with f = x + x^2 is x + 2x^2 + 2x^3 + x^4
        let a = composita_of(&series(&[1, 1, 0, 0]));
        let result = compose(&a, &a).unwrap();
        let expected = composita_of(&series(&[1, 2, 2, 1]));
        assert_eq!(result, expected);
        assert_eq!(*result.entry(2, 1), rat(2));
    }

    #[test]
    fn compose_with_identity_is_neutral() {
        let a = composita_of(&series(&[2, -1, 3]));
        let id = Composita::identity(3);
        assert_eq!(compose(&a, &id).unwrap(), a);
        assert_eq!(compose(&id, &a).unwrap(), a);
    }

    #[test]
    fn compose_requires_equal_orders() {
        let a = Composita::<Rat>::identity(3);
        let b = Composita::<Rat>::identity(4);
        match compose(&a, &b) {
            Err(Error::OrderMismatch { left: 3, right: 4 }) => {}
            other => panic!("expected order mismatch, got {other:?}"),
        }
    }

    #[test]
    fn coefficients_extract_first_column() {
        let f = series(&[1, 1, 0, 0]);
        assert_eq!(composita_of(&f).coefficients(), f);
        let id = Composita::<Rat>::identity(5);
        assert_eq!(id.coefficients(), Series::identity(5));
    }

    #[test]
    fn scale_conjugate_matches_scaled_series() {
        // composita of F(4x)/4 with F = x + x^2 equals composita of x + 4x^2
        let comp = composita_of(&series(&[1, 1, 0, 0]));
        let scaled = scale_conjugate(&comp, &rat(4)).unwrap();
        assert_eq!(scaled, composita_of(&series(&[1, 4, 0, 0])));
        assert_eq!(*scaled.entry(2, 1), rat(4));
    }

    #[test]
    fn scale_conjugate_unit_and_zero() {
        let comp = composita_of(&series(&[1, 2, 3]));
        assert_eq!(scale_conjugate(&comp, &rat(1)).unwrap(), comp);
        assert!(matches!(scale_conjugate(&comp, &rat(0)), Err(Error::ZeroScale)));
    }

    #[test]
    fn from_rows_validates_shape() {
        assert!(Composita::from_rows(vec![vec![rat(1)], vec![rat(2), rat(1)]]).is_ok());
        assert!(Composita::<Rat>::from_rows(vec![vec![rat(1), rat(2)]]).is_err());
        assert!(Composita::<Rat>::from_rows(vec![]).is_err());
    }
}
