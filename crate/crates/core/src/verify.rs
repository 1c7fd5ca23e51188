//! Independent verification: direct series substitution, per-order
//! comparison reports, and the bundled corpus of known equations.
//!
//! [`substitute`] and [`self_compose`] work directly on truncated series
//! (Horner over truncated polynomials) and share no code with the composita
//! pipeline, so they can serve as its oracle. Comparisons are exact
//! rational equality throughout; there are no tolerances anywhere.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::catalog::{factorial, Catalog};
use crate::coeff::Coefficient;
use crate::composita::composita_of;
use crate::error::Error;
use crate::json::{parse_rat, rat_string, SeriesJson};
use crate::series::Series;
use crate::solver::iterated_root;
use crate::{Int, Rat};

/// Truncated product of two series of the same order.
fn truncated_mul<C: Coefficient>(a: &Series<C>, b: &Series<C>, order: usize) -> Series<C> {
    let mut out = Series::<C>::zero(order);
    for (i, ca) in a.iter() {
        if i >= order {
            break;
        }
        for (j, cb) in b.iter() {
            if i + j > order {
                break;
            }
            let acc = out.coeff(i + j).clone() + ca.clone() * cb.clone();
            out.set_coeff(i + j, acc);
        }
    }
    out
}

/// `outer(inner(x))` truncated at the shared order, by Horner evaluation:
/// `((b_N * A + b_{N-1}) * A + ...) * A` where `A = inner`.
pub fn substitute<C: Coefficient>(outer: &Series<C>, inner: &Series<C>) -> Series<C> {
    assert_eq!(
        outer.order(),
        inner.order(),
        "substitute requires equal truncation orders"
    );
    let order = outer.order();
    // running value is a polynomial with a constant term; track it separately
    let mut constant = C::zero();
    let mut rest = Series::zero(order);
    for n in (1..=order).rev() {
        // multiply (constant + rest) by inner, then add b_n
        let mut next = truncated_mul(&rest, inner, order);
        for (i, c) in inner.iter() {
            let acc = next.coeff(i).clone() + constant.clone() * c.clone();
            next.set_coeff(i, acc);
        }
        rest = next;
        constant = outer.coeff(n).clone();
    }
    let mut result = truncated_mul(&rest, inner, order);
    for (i, c) in inner.iter() {
        let acc = result.coeff(i).clone() + constant.clone() * c.clone();
        result.set_coeff(i, acc);
    }
    result
}

/// `a` composed with itself `times` times (`times = 1` is `a` itself),
/// truncated at `a`'s order.
pub fn self_compose<C: Coefficient>(a: &Series<C>, times: usize) -> Series<C> {
    assert!(times >= 1, "composition count must be at least 1");
    let mut result = a.clone();
    for _ in 1..times {
        result = substitute(a, &result);
    }
    result
}

/// One order of a comparison: expected vs actual.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderComparison {
    pub n: usize,
    #[serde(with = "rat_string")]
    pub expected: Rat,
    #[serde(with = "rat_string")]
    pub actual: Rat,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Per-order exact comparison between computed and expected coefficients.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub equation: String,
    pub order: usize,
    pub per_order: Vec<OrderComparison>,
    pub pass: bool,
}

impl VerificationReport {
    /// Build from `(n, expected, actual)` triples; `pass` is the conjunction.
    pub fn from_triples(equation: impl Into<String>, triples: Vec<(usize, Rat, Rat)>) -> Self {
        let per_order: Vec<OrderComparison> = triples
            .into_iter()
            .map(|(n, expected, actual)| {
                let matches = expected == actual;
                OrderComparison {
                    n,
                    expected,
                    actual,
                    matches,
                }
            })
            .collect();
        let pass = per_order.iter().all(|c| c.matches);
        VerificationReport {
            equation: equation.into(),
            order: per_order.len(),
            per_order,
            pass,
        }
    }
}

impl fmt::Display for VerificationReport {
    /// Human-readable table, one order per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.equation, if self.pass { "PASS" } else { "FAIL" })?;
        for c in &self.per_order {
            writeln!(
                f,
                "  n={:<3} expected {:<24} actual {:<24} {}",
                c.n,
                c.expected.to_string(),
                c.actual.to_string(),
                if c.matches { "ok" } else { "MISMATCH" }
            )?;
        }
        Ok(())
    }
}

/// Check a candidate solution `a` of `a∘a∘...∘a = f` (`iterations` copies of
/// `a`) by direct substitution.
pub fn verify_solution(
    a: &Series<Rat>,
    f: &Series<Rat>,
    iterations: usize,
) -> Result<VerificationReport, Error> {
    if a.order() != f.order() {
        return Err(Error::OrderMismatch {
            left: a.order(),
            right: f.order(),
        });
    }
    let composed = self_compose(a, iterations);
    let name = a.label().unwrap_or("A");
    let equation = format!("{name} composed {iterations}x = {}", f.label().unwrap_or("F"));
    let triples = (1..=f.order())
        .map(|n| (n, f.coeff(n).clone(), composed.coeff(n).clone()))
        .collect();
    Ok(VerificationReport::from_triples(equation, triples))
}

/// How a solution coefficient `a(n)` maps onto a fixture/OEIS term.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// Compare `a(n)` directly.
    Ordinary,
    /// Compare `n! * a(n)` (exponential generating function reading).
    Egf,
    /// Compare the numerator of `a(n)` (sign included).
    Numerators,
    /// Compare the (positive) denominator of `a(n)`.
    Denominators,
    /// Numerator of `n! * a(n)`.
    EgfNumerators,
    /// Denominator of `n! * a(n)`.
    EgfDenominators,
    /// Compare `c^(n-1) * a(n)` for the given rational `c` (the conjugated
    /// solution of the `F(cx)/c` equation).
    Scaled(#[serde(with = "rat_string")] Rat),
}

impl Convention {
    /// The mapped value compared against a fixture's expected rational.
    pub fn apply(&self, n: usize, value: &Rat) -> Rat {
        match self {
            Convention::Ordinary => value.clone(),
            Convention::Egf => Rat::from_integer(factorial(n)) * value,
            Convention::Numerators => Rat::from_integer(value.numer().clone()),
            Convention::Denominators => Rat::from_integer(value.denom().clone()),
            Convention::EgfNumerators => {
                let egf = Rat::from_integer(factorial(n)) * value;
                Rat::from_integer(egf.numer().clone())
            }
            Convention::EgfDenominators => {
                let egf = Rat::from_integer(factorial(n)) * value;
                Rat::from_integer(egf.denom().clone())
            }
            Convention::Scaled(c) => {
                let mut pow = Rat::from_integer(Int::from(1));
                for _ in 1..n {
                    pow *= c.clone();
                }
                pow * value
            }
        }
    }

    /// The mapped value as an integer term; errors when the convention lands
    /// on a fraction.
    pub fn integer_term(&self, n: usize, value: &Rat) -> Result<Int, Error> {
        let mapped = self.apply(n, value);
        if mapped.is_integer() {
            Ok(mapped.to_integer())
        } else {
            Err(Error::ConventionMismatch {
                convention: format!("{self:?}"),
                n,
                value: mapped.to_string(),
            })
        }
    }
}

/// The right-hand side `F` of a corpus case.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FSpec {
    /// A catalog name such as `catalan` or `quadratic:16`.
    Catalog(String),
    /// A series JSON file named `<id>.json` in the fixture directory.
    Fixture(String),
    /// An inline series.
    Series(SeriesJson),
}

impl fmt::Display for FSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FSpec::Catalog(name) => write!(f, "{name}"),
            FSpec::Fixture(id) => write!(f, "fixture {id}"),
            FSpec::Series(_) => write!(f, "inline series"),
        }
    }
}

/// One corpus equation: solve `A^(2^exponent) = F` and compare the mapped
/// solution coefficients against an expected prefix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusCase {
    /// OEIS identifier the expected prefix was taken from.
    pub id: String,
    /// The right-hand side `F`.
    pub description: FSpec,
    #[serde(default = "default_exponent")]
    pub iteration_exponent: u32,
    /// Expected terms as canonical rational strings, one per order from 1.
    pub expected_prefix: Vec<String>,
    pub coefficient_convention: Convention,
    /// Free-form provenance note (normalization, source of the terms, ...).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn default_exponent() -> u32 {
    1
}

/// Outcome of one corpus case; unresolvable cases carry the error instead of
/// being skipped.
#[derive(Debug)]
pub struct CorpusOutcome {
    pub id: String,
    pub result: Result<VerificationReport, Error>,
}

impl CorpusOutcome {
    pub fn passed(&self) -> bool {
        matches!(&self.result, Ok(report) if report.pass)
    }
}

/// Resolve a case's `F` to a series of exactly `order` coefficients.
fn resolve_f(case: &CorpusCase, order: usize, fixture_dir: &Path) -> Result<Series<Rat>, Error> {
    match &case.description {
        FSpec::Catalog(name) => {
            let entry: Catalog = name.parse()?;
            Ok(entry.series(order))
        }
        FSpec::Fixture(id) => {
            let path = fixture_dir.join(format!("{id}.json"));
            if !path.exists() {
                return Err(Error::FixtureMissing(path.display().to_string()));
            }
            let series = crate::json::load_series(&path)?;
            if series.order() < order {
                return Err(Error::FixtureTooShort {
                    id: id.clone(),
                    have: series.order(),
                    need: order,
                });
            }
            Ok(series.resized(order))
        }
        FSpec::Series(json) => {
            let series = json.to_series()?;
            if series.order() < order {
                return Err(Error::FixtureTooShort {
                    id: case.id.clone(),
                    have: series.order(),
                    need: order,
                });
            }
            Ok(series.resized(order))
        }
    }
}

/// Solve one corpus case and compare against its expected prefix.
pub fn run_case(case: &CorpusCase, fixture_dir: &Path) -> Result<VerificationReport, Error> {
    if case.expected_prefix.is_empty() {
        return Err(Error::InvalidCorpusCase {
            id: case.id.clone(),
            reason: "expected_prefix is empty".into(),
        });
    }
    if case.iteration_exponent < 1 {
        return Err(Error::InvalidCorpusCase {
            id: case.id.clone(),
            reason: "iteration_exponent must be at least 1".into(),
        });
    }
    let order = case.expected_prefix.len();
    let f = resolve_f(case, order, fixture_dir)?;
    let a = iterated_root(&composita_of(&f), case.iteration_exponent)?.coefficients();
    let equation = format!(
        "{}: A^(2^{}) = {}",
        case.id, case.iteration_exponent, case.description
    );
    let mut triples = Vec::with_capacity(order);
    for n in 1..=order {
        let expected = parse_rat(&case.expected_prefix[n - 1])?;
        let actual = case.coefficient_convention.apply(n, a.coeff(n));
        triples.push((n, expected, actual));
    }
    Ok(VerificationReport::from_triples(equation, triples))
}

/// Run every case; each outcome carries either its report or the error that
/// made the case unresolvable.
pub fn run_corpus(cases: &[CorpusCase], fixture_dir: &Path) -> Vec<CorpusOutcome> {
    cases
        .iter()
        .map(|case| CorpusOutcome {
            id: case.id.clone(),
            result: run_case(case, fixture_dir),
        })
        .collect()
}

/// Load a corpus file: a JSON array of cases.
pub fn load_corpus(path: &Path) -> Result<Vec<CorpusCase>, Error> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}
