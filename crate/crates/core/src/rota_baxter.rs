//! Rota-Baxter operators of nonzero weight on the split octonions.
//!
//! `R` is Rota-Baxter of weight `λ` when
//! `R(x)R(y) = R(R(x)y + xR(y) + λxy)` for all `x, y`. Both sides are
//! bilinear, so checking the 64 ordered basis pairs suffices.

use serde::Serialize;
use thiserror::Error;

use crate::field::Field;
use crate::linmap::{LinAlgError, LinearMap, Subspace};
use crate::octonion::{Basis, SplitOctonions, DIM};
use crate::subalgebra::is_direct_sum_decomposition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RotaBaxterError {
    #[error("weight must be nonzero (zero-weight operators are out of scope)")]
    ZeroWeight,
    #[error("scaling factor must be nonzero")]
    ZeroScale,
    #[error("not a direct sum of two subalgebras")]
    NotDecomposition,
    #[error("not a Rota-Baxter operator: identity fails on ({0}, {1})")]
    NotRotaBaxter(Basis, Basis),
    #[error("not splitting: R^2 + λR is nonzero")]
    NotSplitting,
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase", tag = "status")]
pub enum Verdict {
    Unchecked,
    Holds,
    Fails { x: Basis, y: Basis },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Unchecked => "unchecked",
            Verdict::Holds => "holds",
            Verdict::Fails { .. } => "fails",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotaBaxterCandidate<F: Field> {
    pub map: LinearMap<F>,
    pub weight: F::Elem,
    pub verdict: Verdict,
}

impl<F: Field> RotaBaxterCandidate<F> {
    pub fn new(map: LinearMap<F>, weight: F::Elem) -> Self {
        RotaBaxterCandidate {
            map,
            weight,
            verdict: Verdict::Unchecked,
        }
    }

    pub fn verify(mut self, o: &SplitOctonions<F>) -> Self {
        self.verdict = match rota_baxter_failure(o, &self.map, &self.weight) {
            None => Verdict::Holds,
            Some((x, y)) => Verdict::Fails { x, y },
        };
        self
    }
}

/// The first ordered basis pair on which the identity fails.
pub fn rota_baxter_failure<F: Field>(
    o: &SplitOctonions<F>,
    r: &LinearMap<F>,
    weight: &F::Elem,
) -> Option<(Basis, Basis)> {
    let basis = o.basis_elements();
    let images = r.columns();
    for i in 0..DIM {
        for j in 0..DIM {
            let lhs = o.multiply(&images[i], &images[j]);
            let inner = o.add(
                &o.add(&o.multiply(&images[i], &basis[j]), &o.multiply(&basis[i], &images[j])),
                &o.scale(weight, &o.multiply(&basis[i], &basis[j])),
            );
            if lhs != r.apply(&inner) {
                return Some((Basis::from_index(i), Basis::from_index(j)));
            }
        }
    }
    None
}

pub fn is_rota_baxter<F: Field>(o: &SplitOctonions<F>, r: &LinearMap<F>, weight: &F::Elem) -> bool {
    rota_baxter_failure(o, r, weight).is_none()
}

/// `R^2 = -λR`.
pub fn is_splitting<F: Field>(r: &LinearMap<F>, weight: &F::Elem) -> Result<bool, RotaBaxterError> {
    if r.field().is_zero(weight) {
        return Err(RotaBaxterError::ZeroWeight);
    }
    Ok(r.compose(r).add(&r.scale(weight)).is_zero())
}

/// `φ(R) = -R - λ id`.
pub fn phi<F: Field>(r: &LinearMap<F>, weight: &F::Elem) -> LinearMap<F> {
    r.neg().sub(&LinearMap::scalar(r.field().clone(), weight))
}

/// `(μR, μλ)`.
pub fn scale<F: Field>(
    r: &LinearMap<F>,
    mu: &F::Elem,
    weight: &F::Elem,
) -> Result<(LinearMap<F>, F::Elem), RotaBaxterError> {
    let f = r.field();
    if f.is_zero(mu) {
        return Err(RotaBaxterError::ZeroScale);
    }
    Ok((r.scale(mu), f.mul(mu, weight)))
}

/// The splitting operator acting as `-λ` on `a1` and `0` on `a2`.
pub fn from_decomposition<F: Field>(
    o: &SplitOctonions<F>,
    a1: &Subspace<F>,
    a2: &Subspace<F>,
    weight: &F::Elem,
) -> Result<LinearMap<F>, RotaBaxterError> {
    let f = o.field();
    if f.is_zero(weight) {
        return Err(RotaBaxterError::ZeroWeight);
    }
    if !is_direct_sum_decomposition(o, a1, a2) {
        return Err(RotaBaxterError::NotDecomposition);
    }
    let cols: Vec<_> = a1.basis().iter().chain(a2.basis()).cloned().collect();
    let p = LinearMap::from_columns(f.clone(), &cols.try_into().expect("dimensions sum to 8"));
    let minus = f.neg(weight);
    let d = LinearMap::from_fn(f.clone(), |r, c| {
        if r == c && r < a1.dim() {
            minus.clone()
        } else {
            f.zero()
        }
    });
    Ok(p.compose(&d).compose(&p.invert()?))
}

/// `(ker(R + λ id), ker R)` for a splitting operator.
pub fn splitting_parts<F: Field>(
    o: &SplitOctonions<F>,
    r: &LinearMap<F>,
    weight: &F::Elem,
) -> Result<(Subspace<F>, Subspace<F>), RotaBaxterError> {
    if !is_splitting(r, weight)? {
        return Err(RotaBaxterError::NotSplitting);
    }
    if let Some((x, y)) = rota_baxter_failure(o, r, weight) {
        return Err(RotaBaxterError::NotRotaBaxter(x, y));
    }
    let shifted = r.add(&LinearMap::scalar(r.field().clone(), weight));
    Ok((shifted.kernel(), r.kernel()))
}

fn from_images<F: Field>(field: F, images: &[(Basis, &[(i64, Basis)])]) -> LinearMap<F> {
    let mut rows = [[0i64; DIM]; DIM];
    for (src, terms) in images {
        for &(c, b) in terms.iter() {
            rows[b.index()][src.index()] += c;
        }
    }
    LinearMap::from_int_rows(field, rows)
}

/// `R1`: zero on `e11, e12, ve11, ve12`; `e22 -> e11`, `e21 -> -e21`,
/// `ve21 -> -ve21`, `ve22 -> -ve22`.
pub fn r1<F: Field>(field: F) -> LinearMap<F> {
    use Basis::*;
    from_images(
        field,
        &[
            (E22, &[(1, E11)]),
            (E21, &[(-1, E21)]),
            (VE21, &[(-1, VE21)]),
            (VE22, &[(-1, VE22)]),
        ],
    )
}

/// `R2`: zero on `e12, ve12, ve22`; `e11 -> -1`, and `-id` on
/// `e21, e22, ve11, ve21`.
pub fn r2<F: Field>(field: F) -> LinearMap<F> {
    use Basis::*;
    from_images(
        field,
        &[
            (E11, &[(-1, E11), (-1, E22)]),
            (E21, &[(-1, E21)]),
            (E22, &[(-1, E22)]),
            (VE11, &[(-1, VE11)]),
            (VE21, &[(-1, VE21)]),
        ],
    )
}

/// `m⁻¹ ∘ R ∘ m`.
pub fn conjugate_operator<F: Field>(
    r: &LinearMap<F>,
    m: &LinearMap<F>,
) -> Result<LinearMap<F>, LinAlgError> {
    Ok(m.invert()?.compose(r).compose(m))
}

/// `R(1) ∈ F·1`.
pub fn fixes_unit_line<F: Field>(o: &SplitOctonions<F>, r: &LinearMap<F>) -> bool {
    let image = r.apply(&o.unit());
    Subspace::span(o.field().clone(), &[o.unit()]).contains(&image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::subalgebra::{classification_pairs, decomposition_by_name, subspace_by_name};
    use Basis::*;

    fn oq() -> SplitOctonions<Rationals> {
        SplitOctonions::new(Rationals)
    }

    fn fp(p: u32) -> SplitOctonions<PrimeField> {
        SplitOctonions::new(PrimeField::new(p).unwrap())
    }

    fn one<F: Field>(o: &SplitOctonions<F>) -> F::Elem {
        o.field().one()
    }

    #[test]
    fn identity_and_zero_maps() {
        let o = oq();
        let q = Rationals;
        let id = LinearMap::identity(q);
        assert!(is_rota_baxter(&o, &id, &q.from_i64(-1)));
        assert_eq!(rota_baxter_failure(&o, &id, &q.one()), Some((E11, E11)));
        let zero = LinearMap::zero(q);
        for l in [-2, 1, 3] {
            assert!(is_rota_baxter(&o, &zero, &q.from_i64(l)));
        }
        assert!(is_splitting(&zero, &q.one()).unwrap());
        assert_eq!(is_splitting(&zero, &q.zero()), Err(RotaBaxterError::ZeroWeight));
    }

    #[test]
    fn r1_examples() {
        let o = oq();
        let r = r1(Rationals);
        assert!(is_rota_baxter(&o, &r, &one(&o)));
        assert!(!is_splitting(&r, &one(&o)).unwrap());
        let k4 = subspace_by_name(&o, "K4").unwrap().carrier;
        assert_eq!(r.kernel(), k4);
        assert_eq!(r.image().dim(), 4);
        let defect = r.compose(&r).add(&r);
        assert_eq!(defect.column(E22.index()), o.basis(E11));
        assert!((0..8).filter(|&j| j != E22.index()).all(|j| defect.column(j).is_zero(&Rationals)));
        let b1 = subspace_by_name(&o, "B1").unwrap().carrier;
        let b2 = subspace_by_name(&o, "B2").unwrap().carrier;
        for x in b1.basis() {
            assert_eq!(r.apply(x), o.zero());
        }
        for x in b2.basis() {
            assert_eq!(r.apply(x), o.neg(x));
        }
        let verified = RotaBaxterCandidate::new(r, one(&o)).verify(&o);
        assert_eq!(verified.verdict, Verdict::Holds);
    }

    #[test]
    fn r2_examples() {
        let o = oq();
        let r = r2(Rationals);
        assert!(is_rota_baxter(&o, &r, &one(&o)));
        assert!(!is_splitting(&r, &one(&o)).unwrap());
        assert_eq!(r.kernel(), subspace_by_name(&o, "K3b").unwrap().carrier);
        assert_eq!(r.image().dim(), 5);
        assert_eq!(r.apply(&o.basis(E11)), o.neg(&o.unit()));
        let r_sq_e11 = r.apply(&r.apply(&o.basis(E11)));
        assert_eq!(r_sq_e11, o.add(&o.unit(), &o.basis(E22)));
    }

    #[test]
    fn operators_over_prime_fields() {
        for p in [2, 3, 5, 7] {
            let o = fp(p);
            let f = *o.field();
            for r in [r1(f), r2(f)] {
                assert!(is_rota_baxter(&o, &r, &f.one()), "F{p}");
                assert!(!is_splitting(&r, &f.one()).unwrap(), "F{p}");
                assert!(is_rota_baxter(&o, &phi(&r, &f.one()), &f.one()), "F{p}");
            }
        }
    }

    #[test]
    fn phi_examples() {
        let o = oq();
        let q = Rationals;
        let r = r2(q);
        assert_eq!(phi(&phi(&r, &q.one()), &q.one()), r);
        let pz = phi(&LinearMap::zero(q), &q.from_i64(3));
        assert_eq!(pz, LinearMap::scalar(q, &q.from_i64(-3)));
        assert!(is_rota_baxter(&o, &pz, &q.from_i64(3)));
        let pr = phi(&r, &q.one());
        assert!(is_rota_baxter(&o, &pr, &q.one()));
        assert!(!is_splitting(&pr, &q.one()).unwrap());
    }

    #[test]
    fn scale_examples() {
        let o = fp(5);
        let f = *o.field();
        let r = r1(f);
        assert_eq!(scale(&r, &f.one(), &f.one()).unwrap(), (r.clone(), f.one()));
        for mu in [2i64, 3, -1] {
            let (s, w) = scale(&r, &f.from_i64(mu), &f.one()).unwrap();
            assert_eq!(w, f.from_i64(mu));
            assert!(is_rota_baxter(&o, &s, &w));
            let back = scale(&s, &f.inv(&f.from_i64(mu)).unwrap(), &w).unwrap();
            assert_eq!(back, (r.clone(), f.one()));
        }
        assert_eq!(scale(&r, &f.zero(), &f.one()), Err(RotaBaxterError::ZeroScale));
    }

    #[test]
    fn decomposition_round_trip() {
        let o = oq();
        let q = Rationals;
        for d in classification_pairs(&o) {
            for l in [1, -2] {
                let w = q.from_i64(l);
                let r = from_decomposition(&o, &d.a1, &d.a2, &w).unwrap();
                assert!(is_rota_baxter(&o, &r, &w), "{}", d.name);
                assert!(is_splitting(&r, &w).unwrap());
                let (a1, a2) = splitting_parts(&o, &r, &w).unwrap();
                assert_eq!((&a1, &a2), (&d.a1, &d.a2));
                assert_eq!(from_decomposition(&o, &a1, &a2, &w).unwrap(), r);
            }
        }
        let full = from_decomposition(&o, &Subspace::full(q), &Subspace::zero(q), &q.from_i64(2)).unwrap();
        assert_eq!(full, LinearMap::scalar(q, &q.from_i64(-2)));
        let zero = LinearMap::zero(q);
        assert_eq!(splitting_parts(&o, &zero, &q.one()).unwrap(), (Subspace::zero(q), Subspace::full(q)));
    }

    #[test]
    fn decomposition_errors() {
        let o = oq();
        let q = Rationals;
        let d7 = decomposition_by_name(&o, "D7").unwrap();
        assert_eq!(from_decomposition(&o, &d7.a1, &d7.a2, &q.zero()), Err(RotaBaxterError::ZeroWeight));
        let open = Subspace::span(q, &[o.basis(E12), o.basis(E21)]);
        let rest = Subspace::span(
            q,
            &[E11, E22, VE11, VE12, VE21, VE22].map(|b| o.basis(b)),
        );
        assert_eq!(from_decomposition(&o, &open, &rest, &q.one()), Err(RotaBaxterError::NotDecomposition));
        assert_eq!(splitting_parts(&o, &r1(q), &q.one()), Err(RotaBaxterError::NotSplitting));
    }

    #[test]
    fn conjugation_by_identity_and_kernel_transport() {
        let o = oq();
        let q = Rationals;
        let r = r1(q);
        assert_eq!(conjugate_operator(&r, &LinearMap::identity(q)).unwrap(), r);
        // A generic invertible map: kernel of m⁻¹Rm is m⁻¹(ker R).
        let m = LinearMap::from_fn(q, |i, j| q.from_i64(if i == j { 2 } else if j == i + 1 { 1 } else { 0 }));
        let c = conjugate_operator(&r, &m).unwrap();
        assert_eq!(c.kernel(), m.invert().unwrap().map_subspace(&r.kernel()));
        assert_eq!(conjugate_operator(&r, &r), Err(LinAlgError::Singular));
        assert!(fixes_unit_line(&o, &LinearMap::identity(q)));
        assert!(!fixes_unit_line(&o, &r));
    }
}
