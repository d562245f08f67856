//! Subalgebra predicates, generated subalgebras, direct-sum decompositions
//! and the catalog of named subspaces.

use serde::Serialize;
use thiserror::Error;

use crate::field::{Field, FieldError};
use crate::linmap::Subspace;
use crate::octonion::{Basis, Octonion, SplitOctonions};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubalgebraError {
    #[error("search space of {size} candidates exceeds the cap of {cap}")]
    CapExceeded { size: u128, cap: u128 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub fn is_subalgebra<F: Field>(o: &SplitOctonions<F>, s: &Subspace<F>) -> bool {
    let basis = s.basis();
    basis
        .iter()
        .all(|u| basis.iter().all(|w| s.contains(&o.multiply(u, w))))
}

/// Smallest product-closed subspace containing `gens`.
pub fn generated_subalgebra<F: Field>(o: &SplitOctonions<F>, gens: &[Octonion<F>]) -> Subspace<F> {
    let mut current = Subspace::span(o.field().clone(), gens);
    loop {
        let basis = current.basis().to_vec();
        let mut products = basis.clone();
        for u in &basis {
            for w in &basis {
                products.push(o.multiply(u, w));
            }
        }
        let next = Subspace::span(o.field().clone(), &products);
        if next.dim() == current.dim() {
            return current;
        }
        current = next;
    }
}

pub fn contains_unit<F: Field>(o: &SplitOctonions<F>, s: &Subspace<F>) -> bool {
    s.contains(&o.unit())
}

pub fn is_direct_sum_decomposition<F: Field>(
    o: &SplitOctonions<F>,
    a1: &Subspace<F>,
    a2: &Subspace<F>,
) -> bool {
    a1.dim() + a2.dim() == 8
        && a1.intersection(a2).dim() == 0
        && is_subalgebra(o, a1)
        && is_subalgebra(o, a2)
}

/// First `x` in `s` with `x * x = target`, enumerating coefficient tuples over
/// the canonical basis in lexicographic order (last coefficient fastest).
pub fn find_element_with_square<F: Field>(
    o: &SplitOctonions<F>,
    s: &Subspace<F>,
    target: &Octonion<F>,
    cap: u128,
) -> Result<Option<Octonion<F>>, SubalgebraError> {
    let elems = o.field().elements()?;
    let q = elems.len() as u128;
    let size = q.checked_pow(s.dim() as u32).unwrap_or(u128::MAX);
    if size > cap {
        return Err(SubalgebraError::CapExceeded { size, cap });
    }
    let d = s.dim();
    let mut digits = vec![0usize; d];
    loop {
        let coeffs: Vec<F::Elem> = digits.iter().map(|&i| elems[i].clone()).collect();
        let x = s.combine(&coeffs);
        if o.square(&x) == *target {
            return Ok(Some(x));
        }
        let Some(pos) = (0..d).rev().find(|&i| digits[i] + 1 < elems.len()) else {
            return Ok(None);
        };
        digits[pos] += 1;
        for digit in digits.iter_mut().skip(pos + 1) {
            *digit = 0;
        }
    }
}

/// Number of nonzero `x` with `x * x = 0` in a subspace over a finite field.
pub fn square_zero_count<F: Field>(
    o: &SplitOctonions<F>,
    s: &Subspace<F>,
) -> Result<u64, FieldError> {
    let elems = o.field().elements()?;
    let d = s.dim();
    let mut digits = vec![0usize; d];
    let mut count = 0;
    loop {
        if digits.iter().any(|&i| i != 0) {
            let coeffs: Vec<F::Elem> = digits.iter().map(|&i| elems[i].clone()).collect();
            if o.square(&s.combine(&coeffs)).is_zero(o.field()) {
                count += 1;
            }
        }
        let Some(pos) = (0..d).rev().find(|&i| digits[i] + 1 < elems.len()) else {
            return Ok(count);
        };
        digits[pos] += 1;
        for digit in digits.iter_mut().skip(pos + 1) {
            *digit = 0;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedSubspace<F: Field> {
    pub name: String,
    pub locus: String,
    pub carrier: Subspace<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedDecomposition<F: Field> {
    pub name: String,
    pub locus: String,
    pub a1: Subspace<F>,
    pub a2: Subspace<F>,
}

/// Coarse isomorphism-invariant summary of a decomposition pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DecompositionFingerprint {
    pub dim_a1: usize,
    pub dim_a2: usize,
    pub unit_in_a1: bool,
    pub unit_in_a2: bool,
    /// Nonzero square-zero elements of each side, counted over F2.
    pub square_zero_f2: (u64, u64),
}

pub fn decomposition_fingerprint<F: Field>(
    o: &SplitOctonions<F>,
    d: &NamedDecomposition<F>,
) -> DecompositionFingerprint {
    let f2 = SplitOctonions::new(crate::field::PrimeField::new(2).expect("2 is prime"));
    let d2 = decompositions(&f2)
        .into_iter()
        .find(|x| x.name == d.name)
        .map(|x| (x.a1, x.a2));
    let square_zero_f2 = match d2 {
        Some((a1, a2)) => (
            square_zero_count(&f2, &a1).expect("finite"),
            square_zero_count(&f2, &a2).expect("finite"),
        ),
        None => (0, 0),
    };
    DecompositionFingerprint {
        dim_a1: d.a1.dim(),
        dim_a2: d.a2.dim(),
        unit_in_a1: contains_unit(o, &d.a1),
        unit_in_a2: contains_unit(o, &d.a2),
        square_zero_f2,
    }
}

/// A generator written as a signed sum of basis elements; `ONE` is the unit.
type Gen = &'static [(i64, Basis)];

use Basis::*;

const ONE: Gen = &[(1, E11), (1, E22)];

fn span_of<F: Field>(o: &SplitOctonions<F>, gens: &[Gen]) -> Subspace<F> {
    let f = o.field();
    let vectors: Vec<Octonion<F>> = gens
        .iter()
        .map(|g| {
            let terms: Vec<(F::Elem, Basis)> = g.iter().map(|&(c, b)| (f.from_i64(c), b)).collect();
            o.combination(&terms)
        })
        .collect();
    Subspace::span(f.clone(), &vectors)
}

const SUBSPACES: &[(&str, &str, &[Gen])] = &[
    ("B1", "Theorem 1 (R1 acts as -id)", &[&[(1, E11)], &[(1, E12)], &[(1, VE11)], &[(1, VE12)]]),
    ("B2", "Theorem 1 (R1 vanishes)", &[&[(1, E21)], &[(1, VE21)], &[(1, VE22)]]),
    ("K4", "Lemma 2 kernel", &[&[(1, E11)], &[(1, E12)], &[(1, VE11)], &[(1, VE12)]]),
    ("K3a", "Lemma 3 kernel", &[&[(1, E11)], &[(1, VE12)], &[(1, VE22)]]),
    ("K3b", "Lemma 4 kernel", &[&[(1, E12)], &[(1, VE12)], &[(1, VE22)]]),
    ("U", "Lemma 4 proof", &[&[(1, E11)], &[(1, E21)], &[(1, E22)], &[(1, VE11)], &[(1, VE21)]]),
    ("C1", "Lemma 7 case 1 A1", &[&[(1, E11)], &[(1, E22)], &[(1, VE12)], &[(1, VE22)]]),
    ("C2", "Lemma 7 case 2 A1", &[ONE, &[(1, E12)], &[(1, VE12)], &[(1, VE22)]]),
];

const M2: [Gen; 4] = [&[(1, E11)], &[(1, E12)], &[(1, E21)], &[(1, E22)]];

const DECOMPOSITIONS: &[(&str, &str, &[Gen], &[Gen])] = &[
    (
        "D1",
        "Theorem 2 case 1",
        &[M2[0], M2[1], M2[2], M2[3], &[(1, VE12)], &[(1, VE22)]],
        &[&[(1, VE11)], &[(1, VE21)]],
    ),
    (
        "D2",
        "Theorem 2 case 2",
        &[M2[0], M2[1], M2[2], M2[3], &[(1, VE12)], &[(1, VE22)]],
        &[&[(1, VE11)], &[(1, VE21), (1, E22)]],
    ),
    (
        "D3",
        "Theorem 2 case 3",
        &[&[(1, E11)], &[(1, E12)], &[(1, E22)], &[(1, VE12)], &[(1, VE22)]],
        &[&[(1, E21)], &[(1, VE11)], &[(1, VE21)]],
    ),
    (
        "D4",
        "Theorem 2 case 4",
        &[&[(1, E11)], &[(1, E12)], &[(1, E22)], &[(1, VE12)], &[(1, VE22)]],
        &[&[(1, E21), (1, E11)], &[(1, VE11)], &[(1, VE21)]],
    ),
    (
        "D5",
        "Theorem 2 case 5",
        &[&[(1, E11)], &[(1, E22)], &[(1, VE12)], &[(1, VE22)]],
        &[&[(1, E11), (1, E12)], &[(1, E21), (1, E22)], &[(1, VE11)], &[(1, VE21)]],
    ),
    (
        "D6",
        "Theorem 2 case 6",
        &[ONE, &[(1, E12)], &[(1, VE12)], &[(1, VE22)]],
        &[&[(1, E11)], &[(1, E21)], &[(1, VE11)], &[(1, VE21)]],
    ),
    (
        "D7",
        "Theorem 2 case 7",
        &[&[(1, E11)], &[(1, E12)], &[(1, VE11)], &[(1, VE12)]],
        &[&[(1, E21)], &[(1, E22)], &[(1, VE21)], &[(1, VE22)]],
    ),
    (
        "E19p",
        "Example 19' (second Example 19)",
        &[ONE, &[(1, E12), (-1, E21)], &[(1, VE12)], &[(1, VE22)]],
        &[&[(1, E11)], &[(1, E21)], &[(1, VE11)], &[(1, VE21)]],
    ),
];

/// Number of classification cases, `D1` through `D7`.
pub const CLASSIFICATION_CASES: usize = 7;

pub fn subspaces<F: Field>(o: &SplitOctonions<F>) -> Vec<NamedSubspace<F>> {
    SUBSPACES
        .iter()
        .map(|&(name, locus, gens)| NamedSubspace {
            name: name.to_string(),
            locus: locus.to_string(),
            carrier: span_of(o, gens),
        })
        .collect()
}

pub fn decompositions<F: Field>(o: &SplitOctonions<F>) -> Vec<NamedDecomposition<F>> {
    DECOMPOSITIONS
        .iter()
        .map(|&(name, locus, a1, a2)| NamedDecomposition {
            name: name.to_string(),
            locus: locus.to_string(),
            a1: span_of(o, a1),
            a2: span_of(o, a2),
        })
        .collect()
}

/// The classification pairs only, without the extra example.
pub fn classification_pairs<F: Field>(o: &SplitOctonions<F>) -> Vec<NamedDecomposition<F>> {
    decompositions(o).into_iter().take(CLASSIFICATION_CASES).collect()
}

pub fn subspace_by_name<F: Field>(o: &SplitOctonions<F>, name: &str) -> Option<NamedSubspace<F>> {
    subspaces(o).into_iter().find(|s| s.name == name)
}

pub fn decomposition_by_name<F: Field>(
    o: &SplitOctonions<F>,
    name: &str,
) -> Option<NamedDecomposition<F>> {
    decompositions(o).into_iter().find(|d| d.name == name)
}

/// Every catalog carrier as a flat list, decomposition sides named
/// `D7.A1` and so on.
pub fn catalog<F: Field>(o: &SplitOctonions<F>) -> Vec<NamedSubspace<F>> {
    let mut out = subspaces(o);
    for d in decompositions(o) {
        for (side, carrier) in [("A1", d.a1), ("A2", d.a2)] {
            out.push(NamedSubspace {
                name: format!("{}.{side}", d.name),
                locus: format!("{} {side}", d.locus),
                carrier,
            });
        }
    }
    out
}
