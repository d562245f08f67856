//! The split Cayley-Dickson algebra `O = M2(F) + v M2(F)`.
//!
//! An element `x = a + v c` is stored as eight coordinates over the fixed
//! basis `(e11, e12, e21, e22, ve11, ve12, ve21, ve22)`: the first four are
//! the entries of `a`, the last four those of `c`, both row-major.
//!
//! The product is
//!
//! ```text
//! (a + v c)(b + v d) = (ab + d c̄) + v(ā d + b c)
//! ```
//!
//! where `m̄` is the symplectic involution on 2x2 matrices. It is evaluated
//! through a structure-constant table built once from that formula: every
//! product of two basis elements is zero or plus/minus a basis element.

use std::fmt;
use std::ops::Index;
use std::sync::LazyLock;

use crate::field::{Field, FieldError};
use crate::linmap::{LinearMap, Subspace};

pub const DIM: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    E11,
    E12,
    E21,
    E22,
    VE11,
    VE12,
    VE21,
    VE22,
}

impl Basis {
    pub const ALL: [Basis; DIM] = [
        Basis::E11,
        Basis::E12,
        Basis::E21,
        Basis::E22,
        Basis::VE11,
        Basis::VE12,
        Basis::VE21,
        Basis::VE22,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Basis {
        Basis::ALL[i]
    }

    pub fn name(self) -> &'static str {
        match self {
            Basis::E11 => "e11",
            Basis::E12 => "e12",
            Basis::E21 => "e21",
            Basis::E22 => "e22",
            Basis::VE11 => "ve11",
            Basis::VE12 => "ve12",
            Basis::VE21 => "ve21",
            Basis::VE22 => "ve22",
        }
    }

    pub fn from_name(name: &str) -> Option<Basis> {
        Basis::ALL.into_iter().find(|b| b.name() == name)
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl serde::Serialize for Basis {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// `TABLE[i][j] = Some((k, s))` means `basis_i * basis_j = s * basis_k`.
pub type StructureTable = [[Option<(usize, i8)>; DIM]; DIM];

static TABLE: LazyLock<StructureTable> = LazyLock::new(build_structure_table);

pub fn structure_table() -> &'static StructureTable {
    &TABLE
}

type IntMat2 = [i64; 4];

fn int_mul2(x: &IntMat2, y: &IntMat2) -> IntMat2 {
    [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
}

fn int_bar2(m: &IntMat2) -> IntMat2 {
    [m[3], -m[1], -m[2], m[0]]
}

fn int_add2(x: &IntMat2, y: &IntMat2) -> IntMat2 {
    [x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]]
}

/// Two-halves product over the integers.
fn int_product(x: &[i64; DIM], y: &[i64; DIM]) -> [i64; DIM] {
    let a: IntMat2 = [x[0], x[1], x[2], x[3]];
    let c: IntMat2 = [x[4], x[5], x[6], x[7]];
    let b: IntMat2 = [y[0], y[1], y[2], y[3]];
    let d: IntMat2 = [y[4], y[5], y[6], y[7]];
    let lo = int_add2(&int_mul2(&a, &b), &int_mul2(&d, &int_bar2(&c)));
    let hi = int_add2(&int_mul2(&int_bar2(&a), &d), &int_mul2(&b, &c));
    [lo[0], lo[1], lo[2], lo[3], hi[0], hi[1], hi[2], hi[3]]
}

fn build_structure_table() -> StructureTable {
    let mut table = [[None; DIM]; DIM];
    for i in 0..DIM {
        for j in 0..DIM {
            let mut x = [0i64; DIM];
            let mut y = [0i64; DIM];
            x[i] = 1;
            y[j] = 1;
            let prod = int_product(&x, &y);
            let support: Vec<usize> = (0..DIM).filter(|&k| prod[k] != 0).collect();
            table[i][j] = match support.as_slice() {
                [] => None,
                [k] => {
                    assert!(prod[*k].abs() == 1, "basis product with coefficient {}", prod[*k]);
                    Some((*k, prod[*k] as i8))
                }
                _ => panic!("basis product e{i}*e{j} is not a signed basis element"),
            };
        }
    }
    table
}

/// The symplectic involution `[[a, b], [c, d]] -> [[d, -b], [-c, a]]` on a
/// row-major 2x2 matrix.
pub fn symplectic_involution<F: Field>(field: &F, m: &[F::Elem; 4]) -> [F::Elem; 4] {
    [
        m[3].clone(),
        field.neg(&m[1]),
        field.neg(&m[2]),
        m[0].clone(),
    ]
}

/// A coordinate vector of length 8 over the fixed basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Octonion<F: Field> {
    coords: [F::Elem; DIM],
}

impl<F: Field> Octonion<F> {
    pub fn new(coords: [F::Elem; DIM]) -> Self {
        Octonion { coords }
    }

    pub fn coords(&self) -> &[F::Elem; DIM] {
        &self.coords
    }

    pub fn into_coords(self) -> [F::Elem; DIM] {
        self.coords
    }

    /// The matrix part `a` of `a + v c`.
    pub fn matrix_part(&self) -> [F::Elem; 4] {
        std::array::from_fn(|i| self.coords[i].clone())
    }

    /// The `v`-part `c` of `a + v c`.
    pub fn v_part(&self) -> [F::Elem; 4] {
        std::array::from_fn(|i| self.coords[4 + i].clone())
    }

    pub fn is_zero(&self, field: &F) -> bool {
        self.coords.iter().all(|c| field.is_zero(c))
    }
}

impl<F: Field> PartialOrd for Octonion<F> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<F: Field> Ord for Octonion<F> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl<F: Field> Index<usize> for Octonion<F> {
    type Output = F::Elem;

    fn index(&self, i: usize) -> &F::Elem {
        &self.coords[i]
    }
}

impl<F: Field> Index<Basis> for Octonion<F> {
    type Output = F::Elem;

    fn index(&self, b: Basis) -> &F::Elem {
        &self.coords[b.index()]
    }
}

/// The algebra itself: a field plus the shared structure table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplitOctonions<F: Field> {
    field: F,
}

impl<F: Field> SplitOctonions<F> {
    pub fn new(field: F) -> Self {
        SplitOctonions { field }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn zero(&self) -> Octonion<F> {
        Octonion::new(std::array::from_fn(|_| self.field.zero()))
    }

    /// `1 = e11 + e22`.
    pub fn unit(&self) -> Octonion<F> {
        self.from_ints([1, 0, 0, 1, 0, 0, 0, 0])
    }

    pub fn basis(&self, b: Basis) -> Octonion<F> {
        let mut x = self.zero();
        x.coords[b.index()] = self.field.one();
        x
    }

    pub fn basis_elements(&self) -> Vec<Octonion<F>> {
        Basis::ALL.iter().map(|&b| self.basis(b)).collect()
    }

    pub fn from_ints(&self, coords: [i64; DIM]) -> Octonion<F> {
        Octonion::new(coords.map(|n| self.field.from_i64(n)))
    }

    /// Sparse constructor: `terms` lists `(coefficient, basis)` pairs.
    pub fn combination(&self, terms: &[(F::Elem, Basis)]) -> Octonion<F> {
        let mut x = self.zero();
        for (c, b) in terms {
            let i = b.index();
            x.coords[i] = self.field.add(&x.coords[i], c);
        }
        x
    }

    pub fn add(&self, x: &Octonion<F>, y: &Octonion<F>) -> Octonion<F> {
        let f = &self.field;
        Octonion::new(std::array::from_fn(|i| f.add(&x.coords[i], &y.coords[i])))
    }

    pub fn sub(&self, x: &Octonion<F>, y: &Octonion<F>) -> Octonion<F> {
        let f = &self.field;
        Octonion::new(std::array::from_fn(|i| f.sub(&x.coords[i], &y.coords[i])))
    }

    pub fn neg(&self, x: &Octonion<F>) -> Octonion<F> {
        let f = &self.field;
        Octonion::new(std::array::from_fn(|i| f.neg(&x.coords[i])))
    }

    pub fn scale(&self, s: &F::Elem, x: &Octonion<F>) -> Octonion<F> {
        let f = &self.field;
        Octonion::new(std::array::from_fn(|i| f.mul(s, &x.coords[i])))
    }

    pub fn multiply(&self, x: &Octonion<F>, y: &Octonion<F>) -> Octonion<F> {
        let f = &self.field;
        let table = structure_table();
        let mut out = self.zero();
        for i in 0..DIM {
            if f.is_zero(&x.coords[i]) {
                continue;
            }
            for j in 0..DIM {
                let Some((k, sign)) = table[i][j] else { continue };
                if f.is_zero(&y.coords[j]) {
                    continue;
                }
                let t = f.mul(&x.coords[i], &y.coords[j]);
                out.coords[k] = if sign > 0 {
                    f.add(&out.coords[k], &t)
                } else {
                    f.sub(&out.coords[k], &t)
                };
            }
        }
        out
    }

    pub fn square(&self, x: &Octonion<F>) -> Octonion<F> {
        self.multiply(x, x)
    }

    /// `(xy)z - x(yz)`.
    pub fn associator(&self, x: &Octonion<F>, y: &Octonion<F>, z: &Octonion<F>) -> Octonion<F> {
        let left = self.multiply(&self.multiply(x, y), z);
        let right = self.multiply(x, &self.multiply(y, z));
        self.sub(&left, &right)
    }

    /// `a + v c -> ā - v c`.
    pub fn conjugate(&self, x: &Octonion<F>) -> Octonion<F> {
        let f = &self.field;
        let a_bar = symplectic_involution(f, &x.matrix_part());
        let c = x.v_part();
        Octonion::new(std::array::from_fn(|i| {
            if i < 4 {
                a_bar[i].clone()
            } else {
                f.neg(&c[i - 4])
            }
        }))
    }

    fn det2(&self, m: &[F::Elem; 4]) -> F::Elem {
        let f = &self.field;
        f.sub(&f.mul(&m[0], &m[3]), &f.mul(&m[1], &m[2]))
    }

    /// `n(a + v c) = det a - det c`.
    pub fn norm(&self, x: &Octonion<F>) -> F::Elem {
        self.field
            .sub(&self.det2(&x.matrix_part()), &self.det2(&x.v_part()))
    }

    /// `t(a + v c) = tr a`.
    pub fn trace(&self, x: &Octonion<F>) -> F::Elem {
        self.field.add(&x.coords[0], &x.coords[3])
    }

    /// `f(x, y) = n(x + y) - n(x) - n(y)`.
    pub fn bilinear_form(&self, x: &Octonion<F>, y: &Octonion<F>) -> F::Elem {
        let f = &self.field;
        let nxy = self.norm(&self.add(x, y));
        f.sub(&f.sub(&nxy, &self.norm(x)), &self.norm(y))
    }

    /// Gram matrix of the bilinear form on the basis.
    pub fn gram_matrix(&self) -> LinearMap<F> {
        let basis = self.basis_elements();
        LinearMap::from_fn(self.field.clone(), |r, c| {
            self.bilinear_form(&basis[r], &basis[c])
        })
    }

    /// `O_0 = { x : t(x) = 0 } = vM2(F) + F e12 + F e21 + F(e11 - e22)`.
    pub fn trace_zero_subspace(&self) -> Subspace<F> {
        let gens = vec![
            self.from_ints([1, 0, 0, -1, 0, 0, 0, 0]),
            self.basis(Basis::E12),
            self.basis(Basis::E21),
            self.basis(Basis::VE11),
            self.basis(Basis::VE12),
            self.basis(Basis::VE21),
            self.basis(Basis::VE22),
        ];
        Subspace::span(self.field.clone(), &gens)
    }

    /// Comma-separated scalars in basis order.
    pub fn format(&self, x: &Octonion<F>) -> String {
        x.coords
            .iter()
            .map(|c| self.field.format(c))
            .collect::<Vec<_>>()
            .join(", ")
    }

    pub fn parse(&self, text: &str) -> Result<Octonion<F>, FieldError> {
        let parts: Vec<&str> = text.split(',').collect();
        if parts.len() != DIM {
            return Err(FieldError::Parse {
                text: text.to_string(),
                reason: format!("expected {DIM} comma-separated scalars, got {}", parts.len()),
            });
        }
        let mut coords = Vec::with_capacity(DIM);
        for p in parts {
            coords.push(self.field.parse(p)?);
        }
        Ok(Octonion::new(coords.try_into().expect("length checked")))
    }

    /// Human-readable linear combination such as `e11 - 2*ve12`.
    pub fn describe(&self, x: &Octonion<F>) -> String {
        let f = &self.field;
        let mut out = String::new();
        for b in Basis::ALL {
            let c = &x[b];
            if f.is_zero(c) {
                continue;
            }
            let text = if f.is_one(c) {
                b.name().to_string()
            } else {
                format!("({})*{}", f.format(c), b.name())
            };
            if !out.is_empty() {
                out.push_str(" + ");
            }
            out.push_str(&text);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use Basis::*;

    fn f2() -> SplitOctonions<PrimeField> {
        SplitOctonions::new(PrimeField::new(2).unwrap())
    }

    fn oq() -> SplitOctonions<Rationals> {
        SplitOctonions::new(Rationals)
    }

    #[test]
    fn basis_products_from_examples() {
        let o = oq();
        assert_eq!(o.multiply(&o.basis(E11), &o.basis(E11)), o.basis(E11));
        assert_eq!(o.multiply(&o.basis(E22), &o.basis(VE12)), o.basis(VE12));
        assert!(o.multiply(&o.basis(VE11), &o.basis(VE11)).is_zero(&Rationals));
        for b in Basis::ALL {
            let x = o.basis(b);
            assert_eq!(o.multiply(&o.unit(), &x), x);
            assert_eq!(o.multiply(&x, &o.unit()), x);
        }
    }

    #[test]
    fn symplectic_involution_examples() {
        let q = Rationals;
        let m = |v: [i64; 4]| v.map(|n| q.from_i64(n));
        assert_eq!(symplectic_involution(&q, &m([1, 0, 0, 1])), m([1, 0, 0, 1]));
        assert_eq!(symplectic_involution(&q, &m([0, 1, 0, 0])), m([0, -1, 0, 0]));
        assert_eq!(symplectic_involution(&q, &m([1, 2, 3, 4])), m([4, -2, -3, 1]));
        let x = m([1, 2, 3, 4]);
        assert_eq!(symplectic_involution(&q, &symplectic_involution(&q, &x)), x);
    }

    #[test]
    fn conjugation_norm_trace_examples() {
        let o = oq();
        let q = Rationals;
        assert_eq!(o.conjugate(&o.unit()), o.unit());
        assert_eq!(o.conjugate(&o.basis(E11)), o.basis(E22));
        assert_eq!(o.conjugate(&o.basis(VE12)), o.neg(&o.basis(VE12)));
        assert_eq!(o.norm(&o.unit()), q.one());
        assert_eq!(o.norm(&o.basis(VE11)), q.zero());
        assert_eq!(o.norm(&o.from_ints([0, 0, 0, 0, 1, 0, 0, 1])), q.from_i64(-1));
        assert_eq!(o.trace(&o.unit()), q.from_i64(2));
        assert_eq!(f2().trace(&f2().unit()), f2().field().zero());
        assert_eq!(o.trace(&o.basis(E12)), q.zero());
        assert_eq!(o.trace(&o.from_ints([1, 0, 0, -1, 0, 0, 0, 0])), q.zero());
        assert_eq!(o.bilinear_form(&o.unit(), &o.unit()), q.from_i64(2));
        assert_eq!(o.bilinear_form(&o.basis(E11), &o.basis(E22)), q.one());
        assert_eq!(o.bilinear_form(&o.basis(E12), &o.basis(E12)), q.zero());
    }

    #[test]
    fn trace_zero_subspace_examples() {
        let o = oq();
        let t0 = o.trace_zero_subspace();
        assert_eq!(t0.dim(), 7);
        assert!(t0.contains(&o.basis(E12)));
        assert!(!t0.contains(&o.basis(E11)));
    }

    #[test]
    fn text_format_round_trip() {
        let o = SplitOctonions::new(PrimeField::new(5).unwrap());
        let x = o.from_ints([1, -1, 0, 2, 3, 0, 0, 4]);
        let text = o.format(&x);
        assert_eq!(text, "1 mod 5, 4 mod 5, 0 mod 5, 2 mod 5, 3 mod 5, 0 mod 5, 0 mod 5, 4 mod 5");
        assert_eq!(o.parse(&text).unwrap(), x);
        assert!(o.parse("1, 2").is_err());
    }

    #[test]
    fn describe_reads_like_a_combination() {
        let o = oq();
        assert_eq!(o.describe(&o.unit()), "e11 + e22");
        assert_eq!(o.describe(&o.zero()), "0");
    }

    #[test]
    fn conjugation_identities_on_basis() {
        let o = oq();
        let q = Rationals;
        for x in o.basis_elements() {
            let xb = o.conjugate(&x);
            assert_eq!(o.add(&x, &xb), o.scale(&o.trace(&x), &o.unit()));
            assert_eq!(o.multiply(&x, &xb), o.scale(&o.norm(&x), &o.unit()));
            assert_eq!(o.conjugate(&xb), x);
        }
        assert_eq!(o.norm(&o.zero()), q.zero());
    }
}
