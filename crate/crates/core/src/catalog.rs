//! Built-in functions with closed-form compositae.
//!
//! Each entry supplies two views of the same function `F`:
//! - `formula(n, k)`: the closed-form composita entry `T(n,k)`, and
//! - `series_coeff(n)`: the Taylor coefficient `f(n)` of `F` itself,
//!
//! which must agree on the first column (`formula(n,1) = series_coeff(n)`)
//! and on the diagonal (`formula(n,n) = series_coeff(1)^n`). The solver
//! consumes the triangle; `composita_of` consumes the series; tests play the
//! two against each other.
//!
//! Transcendental entries (`sin`, `e^x - 1`) are represented purely by their
//! exact rational Taylor coefficients; there is no symbolic layer.

use std::fmt;
use std::str::FromStr;

use crate::composita::Composita;
use crate::error::Error;
use crate::series::Series;
use crate::{Int, Rat};

/// `n!` as a big integer.
pub fn factorial(n: usize) -> Int {
    let mut acc = Int::from(1);
    for i in 2..=n {
        acc *= Int::from(i);
    }
    acc
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> Int {
    if k > n {
        return Int::from(0);
    }
    let k = k.min(n - k);
    let mut acc = Int::from(1);
    for i in 1..=k {
        acc = acc * Int::from(n - k + i) / Int::from(i);
    }
    acc
}

/// Stirling number of the second kind `S(n, k)` by the addition recurrence
/// `S(n,k) = k*S(n-1,k) + S(n-1,k-1)`. Requires `k <= n`.
pub fn stirling2(n: usize, k: usize) -> Int {
    assert!(k <= n, "stirling2 index ({n},{k}) outside 0 <= k <= n");
    if n == 0 {
        return Int::from(1); // S(0,0)
    }
    if k == 0 {
        return Int::from(0);
    }
    let mut prev = vec![Int::from(0); k + 1];
    prev[0] = Int::from(1);
    for _ in 1..=n {
        let mut curr = vec![Int::from(0); k + 1];
        for j in 1..=k {
            curr[j] = Int::from(j) * &prev[j] + &prev[j - 1];
        }
        prev = curr;
    }
    prev[k].clone()
}

/// Alternating-sum form `S(n,k) = (1/k!) * sum_j (-1)^(k-j) C(k,j) j^n`,
/// used to cross-check the recurrence.
pub fn stirling2_by_sum(n: usize, k: usize) -> Int {
    assert!(k <= n, "stirling2 index ({n},{k}) outside 0 <= k <= n");
    if n == 0 && k == 0 {
        return Int::from(1);
    }
    let mut sum = Int::from(0);
    for j in 0..=k {
        let term = binomial(k, j) * Int::from(j).pow(n as u32);
        if (k - j) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum / factorial(k)
}

fn check_triangle(n: usize, k: usize) -> Result<(), Error> {
    if k >= 1 && k <= n {
        Ok(())
    } else {
        Err(Error::IndexOutOfTriangle { n, k })
    }
}

/// Composita of `sin(x)`:
/// `(1+(-1)^(n-k)) / (2^k n!) * sum_{m=0}^{k/2} C(k,m) (2m-k)^n (-1)^((n+k)/2-m)`.
/// Zero whenever `n - k` is odd.
pub fn sin_composita(n: usize, k: usize) -> Result<Rat, Error> {
    check_triangle(n, k)?;
    if (n - k) % 2 == 1 {
        return Ok(Rat::from_integer(Int::from(0)));
    }
    let mut sum = Int::from(0);
    for m in 0..=(k / 2) {
        let base = Int::from(2 * m as i64 - k as i64);
        let term = binomial(k, m) * base.pow(n as u32);
        if ((n + k) / 2 - m) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    // the parity prefactor is 2 when n - k is even
    let denom = Int::from(2).pow(k as u32) * factorial(n);
    Ok(Rat::new(Int::from(2) * sum, denom))
}

/// Composita of `e^x - 1` as an ordinary series: `T(n,k) = k!/n! * S(n,k)`.
pub fn expm1_composita(n: usize, k: usize) -> Result<Rat, Error> {
    check_triangle(n, k)?;
    Ok(Rat::new(factorial(k) * stirling2(n, k), factorial(n)))
}

/// Composita of the Catalan generating function `(1 - sqrt(1-4x))/2`:
/// `T(n,k) = C(2n-k-1, n-1) * k/n` (the ballot numbers).
pub fn catalan_composita(n: usize, k: usize) -> Result<Rat, Error> {
    check_triangle(n, k)?;
    Ok(Rat::new(binomial(2 * n - k - 1, n - 1) * Int::from(k), Int::from(n)))
}

/// Composita of `x + c*x^2`: `T(n,k) = C(k, n-k) * c^(n-k)`, zero when
/// `n - k > k`.
pub fn quadratic_composita(c: &Rat, n: usize, k: usize) -> Result<Rat, Error> {
    check_triangle(n, k)?;
    let mut pow = Rat::from_integer(Int::from(1));
    for _ in 0..(n - k) {
        pow *= c.clone();
    }
    Ok(Rat::from_integer(binomial(k, n - k)) * pow)
}

/// A named function with a closed-form composita.
#[derive(Clone, Debug, PartialEq)]
pub enum Catalog {
    Sin,
    Expm1,
    Catalan,
    Quadratic(Rat),
}

impl Catalog {
    /// Closed-form composita entry `T(n,k)`.
    pub fn formula(&self, n: usize, k: usize) -> Result<Rat, Error> {
        match self {
            Catalog::Sin => sin_composita(n, k),
            Catalog::Expm1 => expm1_composita(n, k),
            Catalog::Catalan => catalan_composita(n, k),
            Catalog::Quadratic(c) => quadratic_composita(c, n, k),
        }
    }

    /// Taylor coefficient `f(n)` of the function itself.
    pub fn series_coeff(&self, n: usize) -> Rat {
        assert!(n >= 1, "series coefficients start at n = 1");
        match self {
            Catalog::Sin => {
                if n % 2 == 0 {
                    Rat::from_integer(Int::from(0))
                } else {
                    let sign = if (n - 1) / 2 % 2 == 0 { 1 } else { -1 };
                    Rat::new(Int::from(sign), factorial(n))
                }
            }
            Catalog::Expm1 => Rat::new(Int::from(1), factorial(n)),
            Catalog::Catalan => Rat::new(binomial(2 * n - 2, n - 1), Int::from(n)),
            Catalog::Quadratic(c) => match n {
                1 => Rat::from_integer(Int::from(1)),
                2 => c.clone(),
                _ => Rat::from_integer(Int::from(0)),
            },
        }
    }

    /// The function truncated at `order`, as a labelled series.
    pub fn series(&self, order: usize) -> Series<Rat> {
        Series::from_fn(order, |n| self.series_coeff(n)).with_label(self.to_string())
    }

    /// The closed-form composita truncated at `order`.
    pub fn composita(&self, order: usize) -> Composita<Rat> {
        Composita::from_fn(order, |n, k| {
            self.formula(n, k).expect("triangle indices are valid")
        })
    }

    /// Whether the natural coefficients of this entry carry `1/n!` factors,
    /// i.e. the equation is usually read on exponential generating functions.
    pub fn is_egf(&self) -> bool {
        matches!(self, Catalog::Sin | Catalog::Expm1)
    }
}

impl FromStr for Catalog {
    type Err = Error;

    /// Accepts `sin`, `expm1`, `catalan`, or `quadratic:c` with `c` a
    /// rational string such as `16` or `-3/4`.
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "sin" => Ok(Catalog::Sin),
            "expm1" => Ok(Catalog::Expm1),
            "catalan" => Ok(Catalog::Catalan),
            _ => {
                if let Some(c) = s.strip_prefix("quadratic:") {
                    let c: Rat = c.parse().map_err(|_| Error::InvalidRational(c.to_string()))?;
                    Ok(Catalog::Quadratic(c))
                } else {
                    Err(Error::UnknownCatalog(s.to_string()))
                }
            }
        }
    }
}

impl fmt::Display for Catalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Catalog::Sin => write!(f, "sin"),
            Catalog::Expm1 => write!(f, "expm1"),
            Catalog::Catalan => write!(f, "catalan"),
            Catalog::Quadratic(c) => write!(f, "quadratic:{c}"),
        }
    }
}
