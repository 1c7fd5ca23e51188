//! Three-way agreement for every catalog entry: the closed-form formula,
//! the convolution construction on the truncated reference series, and the
//! composition-enumeration oracle must produce identical triangles.

use composita::catalog::Catalog;
use composita::composita::{composita_by_compositions, composita_of};
use composita::{Int, Rat};

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

fn entries() -> Vec<Catalog> {
    vec![
        Catalog::Sin,
        Catalog::Expm1,
        Catalog::Catalan,
        Catalog::Quadratic(rat(16, 1)),
        Catalog::Quadratic(rat(1, 1)),
        Catalog::Quadratic(rat(-3, 4)),
        Catalog::Quadratic(rat(7, 2)),
    ]
}

#[test]
fn formula_convolution_and_enumeration_agree() {
    for entry in entries() {
        for order in [1usize, 4, 8, 12] {
            let from_formula = entry.composita(order);
            let series = entry.series(order);
            let from_convolution = composita_of(&series);
            let from_enumeration = composita_by_compositions(&series).unwrap();
            assert_eq!(from_formula, from_convolution, "{entry} at order {order}");
            assert_eq!(from_formula, from_enumeration, "{entry} at order {order}");
        }
    }
}

#[test]
fn sin_parity_vanishing_across_the_triangle() {
    for n in 1..=14 {
        for k in 1..=n {
            if (n - k) % 2 == 1 {
                assert_eq!(
                    composita::catalog::sin_composita(n, k).unwrap(),
                    rat(0, 1),
                    "sin T({n},{k})"
                );
            }
        }
    }
}

#[test]
fn catalan_and_integer_quadratic_triangles_are_integral() {
    for n in 1..=12 {
        for k in 1..=n {
            assert!(
                composita::catalog::catalan_composita(n, k).unwrap().is_integer(),
                "catalan T({n},{k})"
            );
            let q = composita::catalog::quadratic_composita(&rat(16, 1), n, k).unwrap();
            assert!(q.is_integer(), "quadratic T({n},{k})");
        }
    }
}

#[test]
fn catalan_first_column_is_the_catalan_sequence() {
    let series = Catalog::Catalan.series(6);
    let expected = [1, 1, 2, 5, 14, 42];
    for (n, want) in expected.iter().enumerate() {
        assert_eq!(*series.coeff(n + 1), rat(*want, 1));
    }
}
