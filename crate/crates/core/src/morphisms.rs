//! Automorphisms and antiautomorphisms of the split octonions: the
//! parametric example family, kind verification, and the completion search
//! for the partially specified involution of Example 14.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Field, FieldError};
use crate::linmap::{LinAlgError, LinearMap};
use crate::octonion::{structure_table, Basis, Octonion, SplitOctonions, DIM};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MorphismKind {
    Auto,
    Anti,
    Unknown,
}

impl MorphismKind {
    /// Kind of `a ∘ b`.
    pub fn compose(self, other: MorphismKind) -> MorphismKind {
        use MorphismKind::*;
        match (self, other) {
            (Unknown, _) | (_, Unknown) => Unknown,
            (a, b) if a == b => Auto,
            _ => Anti,
        }
    }
}

impl fmt::Display for MorphismKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MorphismKind::Auto => "auto",
            MorphismKind::Anti => "anti",
            MorphismKind::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Source {
    Example(u8),
    Identity,
    CanonicalInvolution,
    Completion14,
    Composed,
    Inverse,
    External(String),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Example(k) => write!(f, "example {k}"),
            Source::Identity => f.write_str("identity"),
            Source::CanonicalInvolution => f.write_str("canonical involution"),
            Source::Completion14 => f.write_str("example 14 completion"),
            Source::Composed => f.write_str("composed"),
            Source::Inverse => f.write_str("inverse"),
            Source::External(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MorphismError {
    #[error("no example {0}; examples are numbered 1 to 18")]
    UnknownExample(u8),
    #[error("example {0} needs a parameter")]
    ParameterRequired(u8),
    #[error("example {0} takes no parameter")]
    UnexpectedParameter(u8),
    #[error("example {0} requires a nonzero parameter")]
    ZeroParameter(u8),
    #[error("example 14 lists only six image columns; use the completion search")]
    PartialExample,
    #[error("example {k} fails the {kind} law on ({x}, {y})")]
    Verification {
        k: u8,
        kind: MorphismKind,
        x: Basis,
        y: Basis,
    },
    #[error("search space of {size} candidates exceeds the cap of {cap}")]
    CapExceeded { size: u128, cap: u128 },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism<F: Field> {
    pub map: LinearMap<F>,
    pub kind: MorphismKind,
    pub params: Vec<F::Elem>,
    pub source: Source,
}

impl<F: Field> Morphism<F> {
    pub fn apply(&self, x: &Octonion<F>) -> Octonion<F> {
        self.map.apply(x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Morphism<F>) -> Morphism<F> {
        Morphism {
            map: self.map.compose(&other.map),
            kind: self.kind.compose(other.kind),
            params: Vec::new(),
            source: Source::Composed,
        }
    }

    pub fn inverse(&self) -> Result<Morphism<F>, LinAlgError> {
        Ok(Morphism {
            map: self.map.invert()?,
            kind: self.kind,
            params: Vec::new(),
            source: Source::Inverse,
        })
    }
}

/// First ordered basis pair breaking `m(xy) = m(x)m(y)` (or `m(y)m(x)` when
/// `reversed`).
fn law_failure<F: Field>(
    o: &SplitOctonions<F>,
    m: &LinearMap<F>,
    reversed: bool,
) -> Option<(Basis, Basis)> {
    let images = m.columns();
    let table = structure_table();
    let f = o.field();
    for i in 0..DIM {
        for j in 0..DIM {
            let expected = match table[i][j] {
                None => o.zero(),
                Some((k, s)) => o.scale(&f.from_i64(s as i64), &images[k]),
            };
            let got = if reversed {
                o.multiply(&images[j], &images[i])
            } else {
                o.multiply(&images[i], &images[j])
            };
            if got != expected {
                return Some((Basis::from_index(i), Basis::from_index(j)));
            }
        }
    }
    None
}

pub fn automorphism_failure<F: Field>(o: &SplitOctonions<F>, m: &LinearMap<F>) -> Option<(Basis, Basis)> {
    law_failure(o, m, false)
}

pub fn antiautomorphism_failure<F: Field>(
    o: &SplitOctonions<F>,
    m: &LinearMap<F>,
) -> Option<(Basis, Basis)> {
    law_failure(o, m, true)
}

pub fn is_automorphism<F: Field>(o: &SplitOctonions<F>, m: &LinearMap<F>) -> bool {
    m.is_invertible() && automorphism_failure(o, m).is_none()
}

pub fn is_antiautomorphism<F: Field>(o: &SplitOctonions<F>, m: &LinearMap<F>) -> bool {
    m.is_invertible() && antiautomorphism_failure(o, m).is_none()
}

pub fn kind_of<F: Field>(o: &SplitOctonions<F>, m: &LinearMap<F>) -> MorphismKind {
    if is_automorphism(o, m) {
        MorphismKind::Auto
    } else if is_antiautomorphism(o, m) {
        MorphismKind::Anti
    } else {
        MorphismKind::Unknown
    }
}

pub fn identity<F: Field>(o: &SplitOctonions<F>) -> Morphism<F> {
    Morphism {
        map: LinearMap::identity(o.field().clone()),
        kind: MorphismKind::Auto,
        params: Vec::new(),
        source: Source::Identity,
    }
}

/// `x -> x̄`.
pub fn canonical_involution<F: Field>(o: &SplitOctonions<F>) -> Morphism<F> {
    let cols: [Octonion<F>; DIM] = std::array::from_fn(|j| o.conjugate(&o.basis(Basis::from_index(j))));
    Morphism {
        map: LinearMap::from_columns(o.field().clone(), &cols),
        kind: MorphismKind::Anti,
        params: Vec::new(),
        source: Source::CanonicalInvolution,
    }
}

/// Coefficients appearing in the example images, as polynomials in `α`.
#[derive(Clone, Copy)]
enum C {
    One,
    Neg,
    A,
    NegA,
    A2,
    NegA2,
    AInv,
}

use Basis::*;

type Images = &'static [(Basis, &'static [(C, Basis)])];

const EX1: Images = &[
    (VE11, &[(C::One, VE11), (C::A, VE12)]),
    (VE21, &[(C::One, VE21), (C::A, VE22)]),
];
const EX2: Images = &[
    (E11, &[(C::One, E11), (C::A, VE22)]),
    (E12, &[(C::One, E12), (C::A, VE12)]),
    (E22, &[(C::One, E22), (C::NegA, VE22)]),
    (VE11, &[(C::One, VE11), (C::NegA, E11), (C::A, E22), (C::NegA2, VE22)]),
    (VE21, &[(C::One, VE21), (C::A, E21)]),
];
const EX3: Images = &[
    (E21, &[(C::One, E21), (C::A, VE12)]),
    (VE21, &[(C::One, VE21), (C::A, E12)]),
];
const EX4: Images = &[
    (E21, &[(C::One, E21), (C::A, VE11)]),
    (VE22, &[(C::One, VE22), (C::NegA, E12)]),
];
const EX5: Images = &[
    (E11, &[(C::One, E11), (C::NegA, VE12)]),
    (E21, &[(C::One, E21), (C::A, VE22)]),
    (E22, &[(C::One, E22), (C::A, VE12)]),
    (VE11, &[(C::One, VE11), (C::NegA, E12)]),
    (VE21, &[(C::One, VE21), (C::NegA, E11), (C::A, E22), (C::A2, VE12)]),
];
const EX6: Images = &[
    (E11, &[(C::One, E11), (C::A, E12)]),
    (E21, &[(C::One, E21), (C::NegA, E11), (C::A, E22), (C::NegA2, E12)]),
    (E22, &[(C::One, E22), (C::NegA, E12)]),
    (VE21, &[(C::One, VE21), (C::NegA, VE11)]),
    (VE22, &[(C::One, VE22), (C::NegA, VE12)]),
];
const EX7: Images = &[
    (VE11, &[(C::A, VE11)]),
    (VE12, &[(C::AInv, VE12)]),
    (VE21, &[(C::A, VE21)]),
    (VE22, &[(C::AInv, VE22)]),
];
const EX8: Images = &[
    (E12, &[(C::One, E12), (C::NegA, VE22)]),
    (VE11, &[(C::One, VE11), (C::A, E21)]),
];
const EX9: Images = &[
    (VE11, &[(C::One, VE12)]),
    (VE12, &[(C::Neg, VE11)]),
    (VE21, &[(C::One, VE22)]),
    (VE22, &[(C::Neg, VE21)]),
];
const EX10: Images = &[
    (E12, &[(C::One, E12), (C::A, VE21)]),
    (VE12, &[(C::One, VE12), (C::A, E21)]),
];
const EX11: Images = &[
    (E12, &[(C::One, E21)]),
    (E21, &[(C::One, E12)]),
    (VE11, &[(C::Neg, VE21)]),
    (VE12, &[(C::Neg, VE22)]),
    (VE21, &[(C::One, VE11)]),
    (VE22, &[(C::One, VE12)]),
];
const EX12: Images = &[
    (E12, &[(C::A, E12)]),
    (E21, &[(C::AInv, E21)]),
    (VE11, &[(C::A, VE11)]),
    (VE22, &[(C::AInv, VE22)]),
];
const EX13: Images = &[
    (E12, &[(C::A, E12)]),
    (E21, &[(C::AInv, E21)]),
    (VE12, &[(C::A, VE12)]),
    (VE21, &[(C::AInv, VE21)]),
];
const EX15: Images = &[
    (VE12, &[(C::One, VE12), (C::A, VE11)]),
    (VE22, &[(C::One, VE22), (C::A, VE21)]),
];
const EX17: Images = &[
    (E11, &[(C::One, E21), (C::One, E22), (C::One, VE12)]),
    (E12, &[(C::Neg, E11), (C::Neg, E12), (C::One, E21), (C::One, E22), (C::One, VE12)]),
    (E21, &[(C::Neg, E21), (C::Neg, VE22)]),
    (E22, &[(C::One, E11), (C::Neg, E21), (C::Neg, VE12)]),
    (VE11, &[(C::Neg, E12), (C::One, VE11), (C::Neg, VE21)]),
    (VE12, &[(C::One, VE12), (C::Neg, VE22)]),
    (VE21, &[(C::Neg, E11), (C::One, E21), (C::One, E22), (C::One, VE12), (C::One, VE21)]),
    (VE22, &[(C::One, VE22)]),
];
const EX18: Images = &[
    (E11, &[(C::One, E11), (C::One, VE12)]),
    (E21, &[(C::One, E21), (C::Neg, VE22)]),
    (E22, &[(C::One, E22), (C::Neg, VE12)]),
    (VE11, &[(C::One, VE11), (C::One, E12), (C::One, VE12)]),
    (VE12, &[(C::Neg, E12), (C::Neg, VE11)]),
    (VE21, &[(C::One, VE21), (C::One, E11), (C::Neg, E22), (C::One, VE12), (C::One, VE22)]),
    (VE22, &[(C::Neg, E11), (C::One, E22), (C::Neg, VE12), (C::Neg, VE21)]),
];

/// Images, whether a parameter is taken, and whether it must be nonzero.
fn example_data(k: u8) -> Result<(Images, bool, bool), MorphismError> {
    Ok(match k {
        1 => (EX1, true, false),
        2 | 16 => (EX2, true, false),
        3 => (EX3, true, false),
        4 => (EX4, true, false),
        5 => (EX5, true, false),
        6 => (EX6, true, false),
        7 => (EX7, true, true),
        8 => (EX8, true, false),
        9 => (EX9, false, false),
        10 => (EX10, true, false),
        11 => (EX11, false, false),
        12 => (EX12, true, true),
        13 => (EX13, true, true),
        14 => return Err(MorphismError::PartialExample),
        15 => (EX15, true, false),
        17 => (EX17, false, false),
        18 => (EX18, false, false),
        _ => return Err(MorphismError::UnknownExample(k)),
    })
}

/// Whether example `k` is parametrized, and whether the parameter must be
/// nonzero.
pub fn example_parameter(k: u8) -> Result<Option<bool>, MorphismError> {
    let (_, takes, nonzero) = example_data(k)?;
    Ok(takes.then_some(nonzero))
}

pub fn example_kind(k: u8) -> MorphismKind {
    if matches!(k, 11 | 17) {
        MorphismKind::Anti
    } else {
        MorphismKind::Auto
    }
}

/// Examples that have a constructor.
pub const EXAMPLES: [u8; 17] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 15, 16, 17, 18];

pub fn example_morphism<F: Field>(
    o: &SplitOctonions<F>,
    k: u8,
    alpha: Option<&F::Elem>,
) -> Result<Morphism<F>, MorphismError> {
    let f = o.field();
    let (images, takes, nonzero) = example_data(k)?;
    let a = match (takes, alpha) {
        (true, None) => return Err(MorphismError::ParameterRequired(k)),
        (false, Some(_)) => return Err(MorphismError::UnexpectedParameter(k)),
        (true, Some(a)) => {
            if nonzero && f.is_zero(a) {
                return Err(MorphismError::ZeroParameter(k));
            }
            a.clone()
        }
        (false, None) => f.one(),
    };
    let value = |c: C| -> Result<F::Elem, FieldError> {
        Ok(match c {
            C::One => f.one(),
            C::Neg => f.neg(&f.one()),
            C::A => a.clone(),
            C::NegA => f.neg(&a),
            C::A2 => f.mul(&a, &a),
            C::NegA2 => f.neg(&f.mul(&a, &a)),
            C::AInv => f.inv(&a)?,
        })
    };
    let mut cols: [Octonion<F>; DIM] = std::array::from_fn(|j| o.basis(Basis::from_index(j)));
    for &(src, terms) in images {
        let mut img = Vec::with_capacity(terms.len());
        for &(c, b) in terms {
            img.push((value(c)?, b));
        }
        cols[src.index()] = o.combination(&img);
    }
    let map = LinearMap::from_columns(f.clone(), &cols);
    let kind = example_kind(k);
    let failure = match kind {
        MorphismKind::Anti => antiautomorphism_failure(o, &map),
        _ => automorphism_failure(o, &map),
    };
    if let Some((x, y)) = failure {
        return Err(MorphismError::Verification { k, kind, x, y });
    }
    if !map.is_invertible() {
        return Err(MorphismError::LinAlg(LinAlgError::Singular));
    }
    Ok(Morphism {
        map,
        kind,
        params: if takes { vec![a] } else { Vec::new() },
        source: Source::Example(k),
    })
}

/// The six columns of Example 14 that are fixed: the four listed images plus
/// `ve22 -> e12` and `ve11 -> e21`, which `φ² = id` forces.
pub const FORCED_14: [(Basis, Basis); 6] = [
    (E11, E22),
    (E12, VE22),
    (E21, VE11),
    (E22, E11),
    (VE11, E21),
    (VE22, E12),
];

const FREE_14: [usize; 2] = [5, 6];

struct Completion<'a, F: Field> {
    o: &'a SplitOctonions<F>,
    cols: [Octonion<F>; DIM],
    known: [bool; DIM],
}

impl<F: Field> Completion<'_, F> {
    /// Checks every law and involution constraint whose columns are all known.
    fn consistent(&self, reversed: bool) -> bool {
        let f = self.o.field();
        let table = structure_table();
        for i in 0..DIM {
            for j in 0..DIM {
                if !(self.known[i] && self.known[j]) {
                    continue;
                }
                let expected = match table[i][j] {
                    None => self.o.zero(),
                    Some((k, s)) => {
                        if !self.known[k] {
                            continue;
                        }
                        self.o.scale(&f.from_i64(s as i64), &self.cols[k])
                    }
                };
                let (a, b) = if reversed { (j, i) } else { (i, j) };
                if self.o.multiply(&self.cols[a], &self.cols[b]) != expected {
                    return false;
                }
            }
        }
        for j in 0..DIM {
            if !self.known[j] {
                continue;
            }
            let support: Vec<usize> = (0..DIM).filter(|&i| !f.is_zero(&self.cols[j][i])).collect();
            if support.iter().any(|&i| !self.known[i]) {
                continue;
            }
            let mut acc = self.o.zero();
            for i in support {
                acc = self.o.add(&acc, &self.o.scale(&self.cols[j][i], &self.cols[i]));
            }
            if acc != self.o.basis(Basis::from_index(j)) {
                return false;
            }
        }
        true
    }
}

fn nth_vector<F: Field>(elems: &[F::Elem], mut n: u128) -> Octonion<F> {
    let q = elems.len() as u128;
    let mut coords: [F::Elem; DIM] = std::array::from_fn(|_| elems[0].clone());
    for i in (0..DIM).rev() {
        coords[i] = elems[(n % q) as usize].clone();
        n /= q;
    }
    Octonion::new(coords)
}

/// Every completion of Example 14's forced columns by images of `ve12` and
/// `ve21` that is an involutive automorphism or antiautomorphism.
pub fn complete_involution_14<F: Field>(
    o: &SplitOctonions<F>,
    cap: u128,
) -> Result<Vec<Morphism<F>>, MorphismError> {
    let f = o.field();
    let elems = f.elements()?;
    let q = elems.len() as u128;
    let per_column = q.checked_pow(DIM as u32).unwrap_or(u128::MAX);
    let size = per_column.saturating_mul(per_column);
    if size > cap {
        return Err(MorphismError::CapExceeded { size, cap });
    }
    let mut base: [Octonion<F>; DIM] = std::array::from_fn(|_| o.zero());
    let mut known = [false; DIM];
    for (src, dst) in FORCED_14 {
        base[src.index()] = o.basis(dst);
        known[src.index()] = true;
    }
    let mut out = Vec::new();
    for (kind, reversed) in [(MorphismKind::Auto, false), (MorphismKind::Anti, true)] {
        let root = Completion { o, cols: base.clone(), known };
        if !root.consistent(reversed) {
            continue;
        }
        let found: Vec<Vec<LinearMap<F>>> = (0..per_column)
            .into_par_iter()
            .map(|n0| {
                let mut node = Completion { o, cols: base.clone(), known };
                node.cols[FREE_14[0]] = nth_vector(&elems, n0);
                node.known[FREE_14[0]] = true;
                if !node.consistent(reversed) {
                    return Vec::new();
                }
                node.known[FREE_14[1]] = true;
                let mut hits = Vec::new();
                for n1 in 0..per_column {
                    node.cols[FREE_14[1]] = nth_vector(&elems, n1);
                    if node.consistent(reversed) {
                        hits.push(LinearMap::from_columns(f.clone(), &node.cols));
                    }
                }
                hits
            })
            .collect();
        for map in found.into_iter().flatten() {
            let ok = match kind {
                MorphismKind::Anti => is_antiautomorphism(o, &map),
                _ => is_automorphism(o, &map),
            };
            if ok && map.compose(&map).is_identity() {
                out.push(Morphism {
                    map,
                    kind,
                    params: Vec::new(),
                    source: Source::Completion14,
                });
            }
        }
    }
    Ok(out)
}
