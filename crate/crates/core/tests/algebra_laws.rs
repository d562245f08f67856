use num_rational::BigRational;
use octorb::field::{Field, PrimeField, Rationals};
use octorb::octonion::{structure_table, Basis, Octonion, SplitOctonions, DIM};
use proptest::prelude::*;

/// A 2x2 unit matrix `E(i, j)` or `v E(i, j)`, as (row, col, has_v).
fn unit(b: usize) -> (usize, usize, bool) {
    (b % 4 / 2, b % 2, b >= 4)
}

fn index(row: usize, col: usize, v: bool) -> usize {
    2 * row + col + if v { 4 } else { 0 }
}

/// `E(i, j) E(k, l) = δ_jk E(i, l)`.
fn mul_units(a: (usize, usize), b: (usize, usize)) -> Option<(usize, usize)> {
    (a.1 == b.0).then_some((a.0, b.1))
}

/// Symplectic involution on a unit: `E11 <-> E22`, `E12 -> -E12`, `E21 -> -E21`.
fn bar(a: (usize, usize)) -> ((usize, usize), i8) {
    if a.0 == a.1 {
        ((1 - a.0, 1 - a.1), 1)
    } else {
        (a, -1)
    }
}

/// The four block rules: `ab`, `a(vd) = v(ā d)`, `(vc)b = v(b c)`,
/// `(vc)(vd) = d c̄`.
fn oracle(x: usize, y: usize) -> Option<(usize, i8)> {
    let (i, j, xv) = unit(x);
    let (k, l, yv) = unit(y);
    let (a, b) = ((i, j), (k, l));
    let (product, sign, v) = match (xv, yv) {
        (false, false) => (mul_units(a, b), 1, false),
        (false, true) => {
            let (abar, s) = bar(a);
            (mul_units(abar, b), s, true)
        }
        (true, false) => (mul_units(b, a), 1, true),
        (true, true) => {
            let (cbar, s) = bar(a);
            (mul_units(b, cbar), s, false)
        }
    };
    product.map(|(r, c)| (index(r, c, v), sign))
}

#[test]
fn structure_table_matches_block_rules() {
    let table = structure_table();
    for x in 0..DIM {
        for y in 0..DIM {
            assert_eq!(
                table[x][y],
                oracle(x, y),
                "{} * {}",
                Basis::from_index(x),
                Basis::from_index(y)
            );
        }
    }
}

#[test]
fn a_few_products_by_hand() {
    use Basis::*;
    let o = SplitOctonions::new(Rationals);
    let b = |x| o.basis(x);
    assert_eq!(o.multiply(&b(E12), &b(E21)), b(E11));
    assert_eq!(o.multiply(&b(VE11), &b(VE12)), b(E12));
    assert_eq!(o.multiply(&b(E11), &b(VE11)), o.zero());
    assert_eq!(o.multiply(&b(E22), &b(VE11)), b(VE11));
    assert_eq!(o.multiply(&b(VE22), &b(E12)), b(VE12));
    assert_eq!(o.multiply(&b(E12), &b(VE22)), o.neg(&b(VE12)));
}

#[test]
fn composition_law_exhaustive_over_f2() {
    let f = PrimeField::new(2).unwrap();
    let o = SplitOctonions::new(f);
    let all: Vec<Octonion<PrimeField>> = (0..256u32)
        .map(|n| Octonion::new(std::array::from_fn(|i| f.elem(n >> (DIM - 1 - i) & 1))))
        .collect();
    let norms: Vec<_> = all.iter().map(|x| o.norm(x)).collect();
    let mut pairs = 0;
    for (x, nx) in all.iter().zip(&norms) {
        for (y, ny) in all.iter().zip(&norms) {
            assert_eq!(o.norm(&o.multiply(x, y)), f.mul(nx, ny));
            pairs += 1;
        }
    }
    assert_eq!(pairs, 65_536);
}

fn f5_octonion() -> impl Strategy<Value = Octonion<PrimeField>> {
    proptest::array::uniform8(0u32..5)
        .prop_map(|c| Octonion::new(c.map(|x| PrimeField::new(5).unwrap().elem(x))))
}

fn q_octonion() -> impl Strategy<Value = Octonion<Rationals>> {
    proptest::array::uniform8((-9i64..=9, 1i64..=5))
        .prop_map(|c| Octonion::new(c.map(|(n, d)| BigRational::new(n.into(), d.into()))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn composition_law_f5(x in f5_octonion(), y in f5_octonion()) {
        let o = SplitOctonions::new(PrimeField::new(5).unwrap());
        prop_assert_eq!(o.norm(&o.multiply(&x, &y)), o.field().mul(&o.norm(&x), &o.norm(&y)));
    }

    #[test]
    fn composition_law_q(x in q_octonion(), y in q_octonion()) {
        let o = SplitOctonions::new(Rationals);
        prop_assert_eq!(o.norm(&o.multiply(&x, &y)), o.norm(&x) * o.norm(&y));
    }

    #[test]
    fn alternative_and_flexible(x in q_octonion(), y in q_octonion()) {
        let o = SplitOctonions::new(Rationals);
        prop_assert!(o.associator(&x, &x, &y).is_zero(&Rationals));
        prop_assert!(o.associator(&y, &x, &x).is_zero(&Rationals));
        prop_assert!(o.associator(&x, &y, &x).is_zero(&Rationals));
    }

    #[test]
    fn conjugation_is_an_involutive_antiautomorphism(x in f5_octonion(), y in f5_octonion()) {
        let o = SplitOctonions::new(PrimeField::new(5).unwrap());
        prop_assert_eq!(o.conjugate(&o.conjugate(&x)), x.clone());
        prop_assert_eq!(o.conjugate(&o.multiply(&x, &y)), o.multiply(&o.conjugate(&y), &o.conjugate(&x)));
        prop_assert_eq!(o.multiply(&x, &o.conjugate(&x)), o.scale(&o.norm(&x), &o.unit()));
        prop_assert_eq!(o.add(&x, &o.conjugate(&x)), o.scale(&o.trace(&x), &o.unit()));
    }

    #[test]
    fn bilinear_form_polarizes_the_norm(x in q_octonion(), y in q_octonion()) {
        let o = SplitOctonions::new(Rationals);
        let expected = o.norm(&o.add(&x, &y)) - o.norm(&x) - o.norm(&y);
        prop_assert_eq!(o.bilinear_form(&x, &y), expected);
    }

    #[test]
    fn text_round_trip(x in q_octonion()) {
        let o = SplitOctonions::new(Rationals);
        prop_assert_eq!(o.parse(&o.format(&x)).unwrap(), x);
    }
}
