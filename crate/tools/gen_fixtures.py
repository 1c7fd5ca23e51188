#!/usr/bin/env python3
"""Regenerate the verification corpus under fixtures/.

For each equation A∘A…∘A = F the script expands F to exact rational Taylor
coefficients, solves for A order by order with undetermined coefficients
(independently of the Rust solver), maps the solution through the case's
coefficient convention, and writes:

  fixtures/series/<id>.json   truncated series of F (non-catalog cases only)
  fixtures/corpus.json        the corpus cases with expected prefixes

Conventions were chosen per sequence so that the stored terms are the
integers (or exact rationals) the corresponding OEIS entry lists; where the
entry stores numerators/denominators of a rational sequence, two cases share
one equation. Run from the repository root:

  python3 tools/gen_fixtures.py
"""

import json
import pathlib

import sympy as sp

x, t = sp.symbols("x t")

ORDER = 12


def taylor_coeffs(expr, n):
    """Exact rational coefficients f(1..n); the constant term must vanish."""
    s = sp.expand(sp.series(expr, x, 0, n + 1).removeO())
    assert s.coeff(x, 0) == 0, f"nonzero constant term in {expr}"
    coeffs = [sp.Rational(s.coeff(x, i)) for i in range(1, n + 1)]
    assert coeffs[0] != 0, f"f(1) = 0 in {expr}"
    return coeffs


def trunc_mul(a, b, n):
    out = {}
    for i, ca in a.items():
        if i > n:
            continue
        for j, cb in b.items():
            if i + j > n:
                continue
            out[i + j] = out.get(i + j, sp.Integer(0)) + ca * cb
    return out


def substitute(outer, inner, n):
    """outer(inner(x)) truncated at x^n; both are coefficient lists from x^1."""
    a = {i + 1: c for i, c in enumerate(inner[:n])}
    acc = {}
    for m in range(n, 0, -1):
        acc = trunc_mul(acc, a, n)
        acc[0] = acc.get(0, sp.Integer(0)) + outer[m - 1]
    acc = trunc_mul(acc, a, n)
    return [sp.expand(acc.get(i, sp.Integer(0))) for i in range(1, n + 1)]


def half_iterate(f):
    """Solve A(A(x)) = F(x) by matching one coefficient at a time (f(1)=1)."""
    assert f[0] == 1, "solver below assumes f(1) = 1"
    a = [sp.Integer(1)]
    for n in range(2, len(f) + 1):
        trial = a + [t]
        c = substitute(trial, trial, n)[n - 1]
        (sol,) = sp.solve(sp.Eq(c, f[n - 1]), t)
        a.append(sp.Rational(sol))
    return a


def iterate_root(f, exponent):
    a = f
    for _ in range(exponent):
        a = half_iterate(a)
    return a


def rat_str(r):
    r = sp.Rational(r)
    return str(r)


def series_json(coeffs):
    return {
        "order": len(coeffs),
        "coeffs": {str(i + 1): rat_str(c) for i, c in enumerate(coeffs) if c != 0},
    }


CONVENTIONS = {
    "ordinary": lambda n, v: v,
    "egf": lambda n, v: sp.factorial(n) * v,
    "numerators": lambda n, v: sp.Rational(v).p,
    "denominators": lambda n, v: sp.Rational(v).q,
    "egf-numerators": lambda n, v: sp.Rational(sp.factorial(n) * v).p,
    "egf-denominators": lambda n, v: sp.Rational(sp.factorial(n) * v).q,
}


def apply_convention(conv, n, v):
    if isinstance(conv, dict):
        c = sp.Rational(conv["scaled"])
        return c ** (n - 1) * v
    return CONVENTIONS[conv](n, v)


# id, F expression, description (None = fixture file), exponent, convention, note
CASES = [
    ("A030274", x / (1 - x) ** 2, None, 1, "numerators",
     "terms are numerators of a(n) where A(A(x)) = x/(1-x)^2"),
    ("A097088", x + x**2, {"catalog": "quadratic:1"}, 1, {"scaled": "4"},
     "terms are 4^(n-1)*a(n), the integer solution of A(A(x)) = x + 4x^2"),
    ("A097090", x * (1 + 2 * x) ** 2, "inline", 1, "ordinary",
     "a(n) is integral for A(A(x)) = x(1+2x)^2"),
    ("A048607", sp.log(1 + x), None, 1, "numerators",
     "terms are numerators of a(n) where A(A(x)) = log(1+x)"),
    ("A072350", sp.tan(x), None, 1, "egf",
     "terms are n!*a(n), integral for A(A(x)) = tan(x)"),
    ("A199822", (1 - 4 * x - sp.sqrt(1 - 8 * x)) / (8 * x), None, 1, "ordinary",
     "a(n) is integral for A(A(x)) = (1-4x-sqrt(1-8x))/(8x)"),
    ("A199823", (x + 2 * x**2) / (1 - 2 * x - 4 * x**2), None, 1, "ordinary",
     "a(n) is integral for A(A(x)) = (x+2x^2)/(1-2x-4x^2)"),
    ("A199852", x * sp.exp(2 * x), None, 1, "egf",
     "terms are n!*a(n), integral for A(A(x)) = x*exp(2x)"),
    ("A199917", (2 - 2 * sp.cos(x)) / x, None, 1, "numerators",
     "terms are numerators of a(n) where A(A(x)) = (2-2cos(x))/x"),
    ("A048602", sp.sin(x), {"catalog": "sin"}, 1, "numerators",
     "numerators of a(n) where A(A(x)) = sin(x); denominators in A048603"),
    ("A048603", sp.sin(x), {"catalog": "sin"}, 1, "denominators",
     "denominators of a(n) where A(A(x)) = sin(x); numerators in A048602"),
    ("A052104", sp.exp(x) - 1, {"catalog": "expm1"}, 1, "egf-numerators",
     "numerators of n!*a(n) where A(A(x)) = exp(x)-1; denominators in A052105"),
    ("A052105", sp.exp(x) - 1, {"catalog": "expm1"}, 1, "egf-denominators",
     "denominators of n!*a(n) where A(A(x)) = exp(x)-1; numerators in A052104"),
    ("A052122", sp.exp(x) - 1, {"catalog": "expm1"}, 1, "numerators",
     "numerators of the plain coefficients a(n) where A(A(x)) = exp(x)-1"),
    ("A213422", (1 - sp.sqrt(1 - 16 * x)) / 8, None, 1, "ordinary",
     "a(n) is integral for A(A(x)) = (1-sqrt(1-16x))/8 = F(4x)/4 with F the Catalan gf"),
    ("A141119", x + 16 * x**2, {"catalog": "quadratic:16"}, 2, "ordinary",
     "a(n) is integral for A(A(A(A(x)))) = x + 16x^2"),
    ("A000007", x, "inline", 1, "ordinary",
     "identity smoke case: the solution of A(A(x)) = x of this form is x itself"),
]

# spot checks against independently published values
KNOWN_PREFIXES = {
    "A213422": [1, 2, 12, 96, 880, 8720, 90752],
    "A141119": [1, 4, -48, 960, -23296, 616448, -16830464],
}


def main():
    root = pathlib.Path(__file__).resolve().parent.parent
    series_dir = root / "fixtures" / "series"
    series_dir.mkdir(parents=True, exist_ok=True)

    corpus = []
    for seq_id, expr, desc, exponent, convention, note in CASES:
        f = taylor_coeffs(expr, ORDER)
        a = iterate_root(f, exponent)
        prefix = [apply_convention(convention, n, a[n - 1]) for n in range(1, ORDER + 1)]

        if seq_id in KNOWN_PREFIXES:
            got = prefix[: len(KNOWN_PREFIXES[seq_id])]
            assert got == KNOWN_PREFIXES[seq_id], f"{seq_id}: {got}"

        if desc is None:
            path = series_dir / f"{seq_id}.json"
            path.write_text(json.dumps(series_json(f), indent=2) + "\n")
            description = {"fixture": seq_id}
        elif desc == "inline":
            description = {"series": series_json(f)}
        else:
            description = desc

        corpus.append({
            "id": seq_id,
            "description": description,
            "iteration_exponent": exponent,
            "expected_prefix": [rat_str(v) for v in prefix],
            "coefficient_convention": convention,
            "note": note,
        })
        print(f"{seq_id}: {', '.join(rat_str(v) for v in prefix[:7])}, ...")

    (root / "fixtures" / "corpus.json").write_text(json.dumps(corpus, indent=2) + "\n")
    print(f"\nwrote {len(corpus)} cases to fixtures/corpus.json")


if __name__ == "__main__":
    main()
