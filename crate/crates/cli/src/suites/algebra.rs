use octorb::field::Field;
use octorb::octonion::{symplectic_involution, Basis, Octonion, SplitOctonions, DIM};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use super::{nth_octonion, pair_detail, random_octonion};
use crate::Report;

const RANDOM_PAIRS: usize = 10_000;
const RANDOM_SINGLES: usize = 1_000;

/// Row-major 2x2 product.
fn mat2<F: Field>(f: &F, a: &[F::Elem; 4], b: &[F::Elem; 4]) -> [F::Elem; 4] {
    [
        f.add(&f.mul(&a[0], &b[0]), &f.mul(&a[1], &b[2])),
        f.add(&f.mul(&a[0], &b[1]), &f.mul(&a[1], &b[3])),
        f.add(&f.mul(&a[2], &b[0]), &f.mul(&a[3], &b[2])),
        f.add(&f.mul(&a[2], &b[1]), &f.mul(&a[3], &b[3])),
    ]
}

fn add2<F: Field>(f: &F, a: &[F::Elem; 4], b: &[F::Elem; 4]) -> [F::Elem; 4] {
    std::array::from_fn(|i| f.add(&a[i], &b[i]))
}

/// `(a + vc)(b + vd) = (ab + d c̄) + v(ā d + b c)` straight from 2x2 blocks.
fn block_product<F: Field>(o: &SplitOctonions<F>, x: &Octonion<F>, y: &Octonion<F>) -> Octonion<F> {
    let f = o.field();
    let (a, c) = (x.matrix_part(), x.v_part());
    let (b, d) = (y.matrix_part(), y.v_part());
    let m = add2(f, &mat2(f, &a, &b), &mat2(f, &d, &symplectic_involution(f, &c)));
    let v = add2(f, &mat2(f, &symplectic_involution(f, &a), &d), &mat2(f, &b, &c));
    Octonion::new(std::array::from_fn(|i| if i < 4 { m[i].clone() } else { v[i - 4].clone() }))
}

pub(super) fn run<F: Field>(o: &SplitOctonions<F>, report: &mut Report, rng: &mut ChaCha8Rng) {
    let f = o.field();
    let basis = o.basis_elements();
    let singles: Vec<Octonion<F>> = (0..RANDOM_SINGLES).map(|_| random_octonion(o, rng)).collect();
    let pairs: Vec<(Octonion<F>, Octonion<F>)> = (0..RANDOM_SINGLES)
        .map(|_| (random_octonion(o, rng), random_octonion(o, rng)))
        .collect();

    let mismatch = basis
        .iter()
        .flat_map(|x| basis.iter().map(move |y| (x, y)))
        .chain(pairs.iter().map(|(x, y)| (x, y)))
        .find(|(x, y)| o.multiply(x, y) != block_product(o, x, y));
    report.check(
        "product-rule",
        mismatch.is_none(),
        mismatch.map_or(json!({ "basis_pairs": 64, "random_pairs": pairs.len() }), |(x, y)| {
            pair_detail(o, x, y)
        }),
    );

    let one = o.unit();
    let bad = basis
        .iter()
        .chain(&singles)
        .find(|x| o.multiply(&one, x) != **x || o.multiply(x, &one) != **x);
    report.check(
        "unit-law",
        bad.is_none(),
        bad.map_or(serde_json::Value::Null, |x| json!({ "x": o.format(x) })),
    );

    composition_law(o, report, rng);

    let bad = singles.iter().find(|x| {
        let c = o.conjugate(x);
        o.conjugate(&c) != **x
            || o.add(x, &c) != o.scale(&o.trace(x), &one)
            || o.multiply(x, &c) != o.scale(&o.norm(x), &one)
    });
    report.check(
        "conjugation-identities",
        bad.is_none(),
        bad.map_or(json!({ "elements": singles.len() }), |x| json!({ "x": o.format(x) })),
    );

    let bad = pairs
        .iter()
        .find(|(x, y)| o.conjugate(&o.multiply(x, y)) != o.multiply(&o.conjugate(y), &o.conjugate(x)));
    report.check(
        "conjugation-reverses-products",
        bad.is_none(),
        bad.map_or(json!({ "pairs": pairs.len() }), |(x, y)| pair_detail(o, x, y)),
    );

    let bad = pairs.iter().find(|(x, y)| {
        !o.associator(x, x, y).is_zero(f) || !o.associator(y, x, x).is_zero(f)
    });
    report.check(
        "alternativity",
        bad.is_none(),
        bad.map_or(json!({ "pairs": pairs.len() }), |(x, y)| pair_detail(o, x, y)),
    );

    let witness = (0..DIM * DIM * DIM).find_map(|n| {
        let (i, j, k) = (n / (DIM * DIM), n / DIM % DIM, n % DIM);
        let a = o.associator(&basis[i], &basis[j], &basis[k]);
        (!a.is_zero(f)).then(|| (i, j, k, a))
    });
    report.check(
        "non-associative",
        witness.is_some(),
        witness.map_or(serde_json::Value::Null, |(i, j, k, a)| {
            json!({
                "triple": [Basis::from_index(i), Basis::from_index(j), Basis::from_index(k)],
                "associator": o.format(&a),
            })
        }),
    );

    let dim = o.trace_zero_subspace().dim();
    report.check("trace-zero-dimension", dim == 7, json!({ "dim": dim }));

    // The polar form n(x+y) - n(x) - n(y) carries no factor 1/2, so this
    // holds in characteristic 2 as well.
    let det = o.gram_matrix().determinant();
    report.check(
        "norm-form-nondegenerate",
        !f.is_zero(&det),
        json!({ "gram_determinant": f.format(&det) }),
    );
}

/// `n(xy) = n(x) n(y)`: every ordered pair when the field is F2, seeded
/// random pairs otherwise.
fn composition_law<F: Field>(o: &SplitOctonions<F>, report: &mut Report, rng: &mut ChaCha8Rng) {
    let f = o.field();
    let holds = |x: &Octonion<F>, y: &Octonion<F>| o.norm(&o.multiply(x, y)) == f.mul(&o.norm(x), &o.norm(y));
    let (mode, checked, bad) = if f.order() == Some(2) {
        let all: Vec<Octonion<F>> = (0..256).map(|n| nth_octonion(o, 2, n)).collect();
        let bad = (0..all.len() * all.len())
            .into_par_iter()
            .find_first(|n| !holds(&all[n / 256], &all[n % 256]))
            .map(|n| (all[n / 256].clone(), all[n % 256].clone()));
        ("exhaustive", 65_536u64, bad)
    } else {
        let pairs: Vec<(Octonion<F>, Octonion<F>)> = (0..RANDOM_PAIRS)
            .map(|_| (random_octonion(o, rng), random_octonion(o, rng)))
            .collect();
        let bad = pairs.into_par_iter().find_first(|(x, y)| !holds(x, y));
        ("random", RANDOM_PAIRS as u64, bad)
    };
    report.count("composition_pairs", checked);
    report.check(
        "composition-law",
        bad.is_none(),
        bad.map_or(json!({ "mode": mode, "pairs": checked }), |(x, y)| pair_detail(o, &x, &y)),
    );
}
