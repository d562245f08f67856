//! Desk-scale classification over small prime fields: closure of the
//! example morphisms, orbit equivalence of operators, the kernel-prescribed
//! search for Rota-Baxter operators, and the isotropic-subspace audit.
//!
//! Everything here runs on dense `u8` matrices modulo a small prime and
//! converts to [`LinearMap`] only at the boundary.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::field::{Field, Fp, PrimeField};
use crate::linmap::{LinearMap, Subspace};
use crate::morphisms::{example_morphism, example_parameter, Morphism, MorphismKind, Source, EXAMPLES};
use crate::octonion::{structure_table, Basis, Octonion, SplitOctonions, DIM};
use crate::rota_baxter::{fixes_unit_line, is_rota_baxter, is_splitting, phi, r1, r2};
use crate::subalgebra::{subspace_by_name, NamedSubspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("modulus {0} is too large for the small-field kernels (limit 251)")]
    ModulusTooLarge(u32),
    #[error("weight must be nonzero (zero-weight operators are out of scope)")]
    ZeroWeight,
    #[error("unknown kernel {0}")]
    UnknownKernel(String),
    #[error("brute force over {size} assignments exceeds the cap of {cap}")]
    CapExceeded { size: u128, cap: u128 },
}

type Vec8 = [u8; DIM];
type Mat8 = [[u8; DIM]; DIM];

/// Arithmetic modulo a prime below 256.
#[derive(Clone, Copy, Debug)]
struct Zp {
    p: u16,
    inv: [u8; 256],
}

impl Zp {
    fn new(p: u32) -> Result<Zp, ClassifyError> {
        if p > 251 {
            return Err(ClassifyError::ModulusTooLarge(p));
        }
        let p = p as u16;
        let mut inv = [0u8; 256];
        for a in 1..p {
            let b = (1..p).find(|b| a * b % p == 1).expect("p is prime");
            inv[a as usize] = b as u8;
        }
        Ok(Zp { p, inv })
    }

    fn of(field: &PrimeField) -> Result<Zp, ClassifyError> {
        Zp::new(field.modulus())
    }

    #[inline]
    fn add(&self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.p) as u8
    }

    #[inline]
    fn sub(&self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.p - b as u16) % self.p) as u8
    }

    #[inline]
    fn mul(&self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p) as u8
    }

    fn neg(&self, a: u8) -> u8 {
        self.sub(0, a)
    }

    fn octonion_product(&self, x: &Vec8, y: &Vec8) -> Vec8 {
        let table = structure_table();
        let mut out = [0u8; DIM];
        for i in 0..DIM {
            if x[i] == 0 {
                continue;
            }
            for j in 0..DIM {
                if y[j] == 0 {
                    continue;
                }
                if let Some((k, s)) = table[i][j] {
                    let t = self.mul(x[i], y[j]);
                    out[k] = if s > 0 { self.add(out[k], t) } else { self.sub(out[k], t) };
                }
            }
        }
        out
    }

    fn axpy(&self, a: u8, x: &Vec8, y: &mut Vec8) {
        if a == 0 {
            return;
        }
        for i in 0..DIM {
            y[i] = self.add(y[i], self.mul(a, x[i]));
        }
    }

    fn mat_mul(&self, a: &Mat8, b: &Mat8) -> Mat8 {
        let mut out = [[0u8; DIM]; DIM];
        for r in 0..DIM {
            for k in 0..DIM {
                let x = a[r][k];
                if x == 0 {
                    continue;
                }
                for c in 0..DIM {
                    out[r][c] = self.add(out[r][c], self.mul(x, b[k][c]));
                }
            }
        }
        out
    }

    fn to_map(&self, field: &PrimeField, m: &Mat8) -> LinearMap<PrimeField> {
        LinearMap::from_fn(*field, |r, c| field.elem(m[r][c] as u32))
    }

    fn octonion(&self, field: &PrimeField, v: &Vec8) -> Octonion<PrimeField> {
        Octonion::new(v.map(|x| field.elem(x as u32)))
    }
}

fn small_vec(v: &Octonion<PrimeField>) -> Vec8 {
    v.coords().map(|x| x.value() as u8)
}

fn small_mat(m: &LinearMap<PrimeField>) -> Mat8 {
    std::array::from_fn(|r| std::array::from_fn(|c| m.entry(r, c).value() as u8))
}

/// Closure of a generating set under composition.
#[derive(Clone, Debug)]
pub struct GroupClosure {
    field: PrimeField,
    pub generators: Vec<Morphism<PrimeField>>,
    elements: Vec<Mat8>,
    kinds: Vec<MorphismKind>,
    index: HashMap<Mat8, usize>,
    pub complete: bool,
}

impl GroupClosure {
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> Morphism<PrimeField> {
        let zp = Zp::of(&self.field).expect("checked at construction");
        Morphism {
            map: zp.to_map(&self.field, &self.elements[i]),
            kind: self.kinds[i],
            params: Vec::new(),
            source: Source::Composed,
        }
    }

    pub fn contains(&self, m: &LinearMap<PrimeField>) -> bool {
        self.index.contains_key(&small_mat(m))
    }

    pub fn position(&self, m: &LinearMap<PrimeField>) -> Option<usize> {
        self.index.get(&small_mat(m)).copied()
    }

    pub fn kind_counts(&self) -> (usize, usize) {
        let auto = self.kinds.iter().filter(|&&k| k == MorphismKind::Auto).count();
        (auto, self.kinds.len() - auto)
    }
}

/// Breadth-first closure from the identity, right-multiplying by each
/// generator in order. Stops with `complete = false` once `cap` elements
/// are found.
pub fn group_closure(
    field: &PrimeField,
    generators: Vec<Morphism<PrimeField>>,
    cap: usize,
) -> Result<GroupClosure, ClassifyError> {
    let zp = Zp::of(field)?;
    let gens: Vec<Mat8> = generators.iter().map(|g| small_mat(&g.map)).collect();
    let id: Mat8 = std::array::from_fn(|r| std::array::from_fn(|c| u8::from(r == c)));
    let mut closure = GroupClosure {
        field: *field,
        generators,
        elements: vec![id],
        kinds: vec![MorphismKind::Auto],
        index: HashMap::from([(id, 0)]),
        complete: true,
    };
    let mut head = 0;
    while head < closure.elements.len() {
        for (g, gm) in gens.iter().enumerate() {
            let product = zp.mat_mul(&closure.elements[head], gm);
            if closure.index.contains_key(&product) {
                continue;
            }
            if closure.elements.len() >= cap {
                closure.complete = false;
                return Ok(closure);
            }
            let kind = closure.kinds[head].compose(closure.generators[g].kind);
            closure.index.insert(product, closure.elements.len());
            closure.elements.push(product);
            closure.kinds.push(kind);
        }
        head += 1;
    }
    Ok(closure)
}

/// Every constructible example morphism at every nonzero admissible
/// parameter, duplicates removed, in example order.
pub fn example_generators(field: &PrimeField) -> Vec<Morphism<PrimeField>> {
    let o = SplitOctonions::new(*field);
    let mut out: Vec<Morphism<PrimeField>> = Vec::new();
    let identity = LinearMap::identity(*field);
    for k in EXAMPLES {
        let params: Vec<Option<Fp>> = match example_parameter(k).expect("constructible") {
            None => vec![None],
            Some(_) => field.units().expect("finite").into_iter().map(Some).collect(),
        };
        for a in params {
            let m = example_morphism(&o, k, a.as_ref()).expect("examples verify");
            if m.map != identity && out.iter().all(|x| x.map != m.map) {
                out.push(m);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitWitness {
    /// Position of the conjugating element in the closure.
    pub element: usize,
    pub map: LinearMap<PrimeField>,
    pub kind: MorphismKind,
    pub mu: Fp,
    pub applied_phi: bool,
}

/// Looks for `m` in the closure, a scalar `μ` and a choice of `φ` with
/// `μ·Φ(m⁻¹ R m) = S`. The scalar is forced to `λ_S / λ_R`; without
/// `use_scalars` the weights must agree and `μ = 1`.
#[allow(clippy::too_many_arguments)]
pub fn orbit_equivalent(
    r: &LinearMap<PrimeField>,
    weight_r: &Fp,
    s: &LinearMap<PrimeField>,
    weight_s: &Fp,
    group: &GroupClosure,
    use_scalars: bool,
    use_phi: bool,
) -> Result<Option<OrbitWitness>, ClassifyError> {
    let f = group.field;
    if f.is_zero(weight_r) || f.is_zero(weight_s) {
        return Err(ClassifyError::ZeroWeight);
    }
    let mu = if use_scalars {
        f.div(weight_s, weight_r).expect("nonzero weight")
    } else if weight_r == weight_s {
        f.one()
    } else {
        return Ok(None);
    };
    // m⁻¹ R m = Φ(μ⁻¹ S)  <=>  R m = m Φ(μ⁻¹ S)
    let unscaled = s.scale(&f.inv(&mu).expect("nonzero"));
    let mut targets = vec![(false, small_mat(&unscaled))];
    if use_phi {
        targets.push((true, small_mat(&phi(&unscaled, weight_r))));
    }
    let zp = Zp::of(&f)?;
    let rm = small_mat(r);
    let found = (0..group.len()).into_par_iter().find_map_first(|i| {
        let m = &group.elements[i];
        let left = zp.mat_mul(&rm, m);
        targets
            .iter()
            .find(|(_, t)| zp.mat_mul(m, t) == left)
            .map(|&(applied_phi, _)| (i, applied_phi))
    });
    Ok(found.map(|(i, applied_phi)| OrbitWitness {
        element: i,
        map: zp.to_map(&f, &group.elements[i]),
        kind: group.kinds[i],
        mu,
        applied_phi,
    }))
}

/// Conjugation invariants: ranks of `R^k` and `(R + id)^k` for `k = 1..4`
/// and the characteristic polynomial, low degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GlFingerprint {
    pub ranks: [usize; 4],
    pub shifted_ranks: [usize; 4],
    pub char_poly: Vec<String>,
}

pub fn gl_invariant_fingerprint<F: Field>(r: &LinearMap<F>) -> GlFingerprint {
    let shifted = r.add(&LinearMap::identity(r.field().clone()));
    let ranks_of = |m: &LinearMap<F>| {
        let mut power = m.clone();
        let mut out = [0; 4];
        for slot in out.iter_mut() {
            *slot = power.rank();
            power = power.compose(m);
        }
        out
    };
    GlFingerprint {
        ranks: ranks_of(r),
        shifted_ranks: ranks_of(&shifted),
        char_poly: r
            .characteristic_polynomial()
            .iter()
            .map(|c| r.field().format(c))
            .collect(),
    }
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub kernel: String,
    pub field: PrimeField,
    pub weight: Fp,
    pub solutions: Vec<LinearMap<PrimeField>>,
    pub splitting_count: usize,
    pub nonsplitting_count: usize,
    /// Solutions that failed the from-scratch re-verification.
    pub reverify_failures: usize,
    pub nodes_visited: u64,
    pub complete: bool,
}

impl SearchReport {
    pub fn nonsplitting(&self) -> impl Iterator<Item = &LinearMap<PrimeField>> {
        self.solutions
            .iter()
            .filter(|r| !is_splitting(r, &self.weight).expect("nonzero weight"))
    }
}

struct PairData {
    lhs: Vec8,
    /// Coefficient of each complement slot in `R(inner)`.
    coeffs: Vec8,
    mask: u16,
}

/// Fixed data of one kernel-prescribed search.
struct KernelSearch {
    zp: Zp,
    k: usize,
    slots: usize,
    basis: [Vec8; DIM],
    /// Rows `k..8` of the inverse basis matrix: slot coordinates.
    slot_coords: [Vec8; DIM],
    lambda: u8,
    budget: u64,
    values: Vec<Vec8>,
}

#[derive(Clone)]
struct SearchState {
    cols: [Vec8; DIM],
    assigned: u16,
    pairs_len: usize,
    echelon: Vec<(usize, Vec8)>,
}

struct SearchOutcome {
    solutions: Vec<[Vec8; DIM]>,
    nodes: u64,
    limit: u64,
    complete: bool,
}

impl SearchOutcome {
    fn new(limit: u64) -> Self {
        SearchOutcome {
            solutions: Vec::new(),
            nodes: 0,
            limit,
            complete: true,
        }
    }
}

enum Step {
    Pruned,
    Leaf,
    Branch { slot: usize, candidates: Vec<Vec8> },
}

impl KernelSearch {
    fn new(kernel: &Subspace<PrimeField>, lambda: &Fp, budget: u64) -> Result<Self, ClassifyError> {
        let field = *kernel.field();
        let zp = Zp::of(&field)?;
        let k = kernel.dim();
        // Complement: non-pivot standard vectors, e22 first.
        let mut complement = kernel.standard_complement();
        complement.sort_by_key(|&c| (c != Basis::E22.index(), c));
        let mut basis = [[0u8; DIM]; DIM];
        for (i, row) in kernel.basis().iter().enumerate() {
            basis[i] = small_vec(row);
        }
        for (s, &c) in complement.iter().enumerate() {
            basis[k + s][c] = 1;
        }
        let p = LinearMap::from_fn(field, |r, c| field.elem(basis[c][r] as u32));
        let pinv = small_mat(&p.invert().expect("kernel plus complement is a basis"));
        let mut slot_coords = [[0u8; DIM]; DIM];
        for s in 0..DIM - k {
            slot_coords[s] = pinv[k + s];
        }
        let q = zp.p as u32;
        let values = (1..q.pow(DIM as u32))
            .map(|mut n| {
                let mut v = [0u8; DIM];
                for i in (0..DIM).rev() {
                    v[i] = (n % q) as u8;
                    n /= q;
                }
                v
            })
            .collect();
        Ok(KernelSearch {
            zp,
            k,
            slots: DIM - k,
            basis,
            slot_coords,
            lambda: lambda.value() as u8,
            budget,
            values,
        })
    }

    fn image(&self, state: &SearchState, idx: usize) -> Vec8 {
        if idx < self.k {
            [0; DIM]
        } else {
            state.cols[idx - self.k]
        }
    }

    fn known(&self, state: &SearchState, idx: usize) -> bool {
        idx < self.k || state.assigned & (1 << (idx - self.k)) != 0
    }

    fn pair(&self, state: &SearchState, a: usize, b: usize) -> PairData {
        let zp = &self.zp;
        let (ra, rb) = (self.image(state, a), self.image(state, b));
        let (pa, pb) = (&self.basis[a], &self.basis[b]);
        let lhs = zp.octonion_product(&ra, &rb);
        let mut inner = zp.octonion_product(&ra, pb);
        zp.axpy(1, &zp.octonion_product(pa, &rb), &mut inner);
        zp.axpy(self.lambda, &zp.octonion_product(pa, pb), &mut inner);
        let mut coeffs = [0u8; DIM];
        let mut mask = 0u16;
        for s in 0..self.slots {
            let c = (0..DIM).fold(0, |acc, j| zp.add(acc, zp.mul(self.slot_coords[s][j], inner[j])));
            coeffs[s] = c;
            if c != 0 {
                mask |= 1 << s;
            }
        }
        PairData { lhs, coeffs, mask }
    }

    /// Checks every pair whose columns are all known, and collects the
    /// values forced by pairs with exactly one unknown column.
    fn evaluate(&self, state: &SearchState, pairs: &[PairData], fresh_from: usize, just: Option<usize>) -> Step {
        let zp = &self.zp;
        let mut forced: [Option<Vec8>; DIM] = [None; DIM];
        for (i, pd) in pairs.iter().enumerate() {
            let unknown = pd.mask & !state.assigned;
            if unknown.count_ones() > 1 {
                continue;
            }
            let touched = i >= fresh_from || just.is_some_and(|s| pd.mask & (1 << s) != 0);
            if unknown == 0 && !touched {
                continue;
            }
            let mut rest = pd.lhs;
            for s in 0..self.slots {
                if pd.coeffs[s] != 0 && unknown & (1 << s) == 0 {
                    let c = zp.neg(pd.coeffs[s]);
                    zp.axpy(c, &state.cols[s], &mut rest);
                }
            }
            if unknown == 0 {
                if rest != [0; DIM] {
                    return Step::Pruned;
                }
                continue;
            }
            let s = unknown.trailing_zeros() as usize;
            let inv = zp.inv[pd.coeffs[s] as usize];
            let value = rest.map(|x| zp.mul(inv, x));
            match forced[s] {
                Some(prev) if prev != value => return Step::Pruned,
                _ => forced[s] = Some(value),
            }
        }
        let full = (1u16 << self.slots) - 1;
        if state.assigned == full {
            return Step::Leaf;
        }
        let slot = (0..self.slots)
            .find(|&s| state.assigned & (1 << s) == 0 && forced[s].is_some())
            .or_else(|| (0..self.slots).find(|&s| state.assigned & (1 << s) == 0))
            .expect("some slot is free");
        let candidates = match forced[slot] {
            Some(v) if v == [0; DIM] => return Step::Pruned,
            Some(v) => vec![v],
            None => self.values.clone(),
        };
        Step::Branch { slot, candidates }
    }

    /// Reduces `v` against the echelon form of the assigned columns.
    fn independent(&self, echelon: &[(usize, Vec8)], v: &Vec8) -> Option<(usize, Vec8)> {
        let zp = &self.zp;
        let mut w = *v;
        for (pivot, row) in echelon {
            if w[*pivot] != 0 {
                let c = zp.neg(w[*pivot]);
                zp.axpy(c, row, &mut w);
            }
        }
        let pivot = (0..DIM).find(|&i| w[i] != 0)?;
        let inv = self.zp.inv[w[pivot] as usize];
        Some((pivot, w.map(|x| zp.mul(inv, x))))
    }

    fn root_pairs(&self, state: &SearchState) -> Vec<PairData> {
        let mut pairs = Vec::new();
        for a in 0..self.k {
            for b in 0..self.k {
                pairs.push(self.pair(state, a, b));
            }
        }
        pairs
    }

    /// Assigns `value` to `slot` and appends the newly evaluable pairs.
    fn assign(&self, state: &mut SearchState, pairs: &mut Vec<PairData>, slot: usize, value: Vec8, reduced: (usize, Vec8)) {
        state.cols[slot] = value;
        state.assigned |= 1 << slot;
        state.echelon.push(reduced);
        let new = self.k + slot;
        for a in 0..DIM {
            if !self.known(state, a) {
                continue;
            }
            pairs.push(self.pair(state, a, new));
            if a != new {
                pairs.push(self.pair(state, new, a));
            }
        }
        state.pairs_len = pairs.len();
    }

    fn try_candidate(
        &self,
        state: &mut SearchState,
        pairs: &mut Vec<PairData>,
        slot: usize,
        value: Vec8,
        out: &mut SearchOutcome,
    ) {
        if out.nodes >= out.limit {
            out.complete = false;
            return;
        }
        out.nodes += 1;
        let Some(reduced) = self.independent(&state.echelon, &value) else {
            return;
        };
        let saved = (state.assigned, state.pairs_len, state.echelon.len(), state.cols[slot]);
        let fresh_from = pairs.len();
        self.assign(state, pairs, slot, value, reduced);
        self.descend(state, pairs, fresh_from, Some(slot), out);
        pairs.truncate(saved.1);
        state.assigned = saved.0;
        state.pairs_len = saved.1;
        state.echelon.truncate(saved.2);
        state.cols[slot] = saved.3;
    }

    fn descend(
        &self,
        state: &mut SearchState,
        pairs: &mut Vec<PairData>,
        fresh_from: usize,
        just: Option<usize>,
        out: &mut SearchOutcome,
    ) {
        match self.evaluate(state, pairs, fresh_from, just) {
            Step::Pruned => {}
            Step::Leaf => out.solutions.push(state.cols),
            Step::Branch { slot, candidates } => {
                for v in candidates {
                    self.try_candidate(state, pairs, slot, v, out);
                    if !out.complete {
                        return;
                    }
                }
            }
        }
    }

    fn root(&self) -> (SearchState, Vec<PairData>) {
        let state = SearchState {
            cols: [[0; DIM]; DIM],
            assigned: 0,
            pairs_len: 0,
            echelon: Vec::new(),
        };
        let pairs = self.root_pairs(&state);
        let state = SearchState { pairs_len: pairs.len(), ..state };
        (state, pairs)
    }

    fn subtree(&self, slot: usize, value: Vec8, limit: u64) -> SearchOutcome {
        let (mut state, mut pairs) = self.root();
        let mut out = SearchOutcome::new(limit);
        self.try_candidate(&mut state, &mut pairs, slot, value, &mut out);
        out
    }

    /// Parallel over the first branching level; the merge replays the
    /// sequential budget accounting so the outcome does not depend on the
    /// thread count.
    fn run(&self) -> SearchOutcome {
        let (state, pairs) = self.root();
        let mut merged = SearchOutcome::new(self.budget);
        let (slot, candidates) = match self.evaluate(&state, &pairs, 0, None) {
            Step::Pruned => return merged,
            Step::Leaf => {
                merged.solutions.push(state.cols);
                return merged;
            }
            Step::Branch { slot, candidates } => (slot, candidates),
        };
        let outcomes: Vec<SearchOutcome> = candidates
            .par_iter()
            .map(|&v| self.subtree(slot, v, self.budget))
            .collect();
        for (v, outcome) in candidates.iter().zip(outcomes) {
            let remaining = self.budget - merged.nodes;
            let outcome = if !outcome.complete || outcome.nodes > remaining {
                self.subtree(slot, *v, remaining)
            } else {
                outcome
            };
            merged.nodes += outcome.nodes;
            merged.solutions.extend(outcome.solutions);
            if !outcome.complete {
                merged.complete = false;
                break;
            }
        }
        merged
    }

    fn to_map(&self, field: &PrimeField, cols: &[Vec8; DIM]) -> LinearMap<PrimeField> {
        // R = Q P⁻¹ where Q sends the kernel basis to 0 and slot s to cols[s].
        let zp = &self.zp;
        let mut m = [[0u8; DIM]; DIM];
        for s in 0..self.slots {
            for r in 0..DIM {
                for c in 0..DIM {
                    m[r][c] = zp.add(m[r][c], zp.mul(cols[s][r], self.slot_coords[s][c]));
                }
            }
        }
        zp.to_map(field, &m)
    }
}

fn finish_report(
    name: &str,
    kernel: &Subspace<PrimeField>,
    weight: &Fp,
    maps: Vec<LinearMap<PrimeField>>,
    nodes: u64,
    complete: bool,
) -> SearchReport {
    let field = *kernel.field();
    let o = SplitOctonions::new(field);
    let mut report = SearchReport {
        kernel: name.to_string(),
        field,
        weight: *weight,
        solutions: Vec::new(),
        splitting_count: 0,
        nonsplitting_count: 0,
        reverify_failures: 0,
        nodes_visited: nodes,
        complete,
    };
    for map in maps {
        if !is_rota_baxter(&o, &map, weight) || map.kernel() != *kernel {
            report.reverify_failures += 1;
            continue;
        }
        if is_splitting(&map, weight).expect("nonzero weight") {
            report.splitting_count += 1;
        } else {
            report.nonsplitting_count += 1;
        }
        report.solutions.push(map);
    }
    report
}

/// All Rota-Baxter operators of the given weight whose kernel is exactly
/// `kernel`, by depth-first search over the images of a complement basis.
pub fn search_rb_with_kernel(
    kernel: &NamedSubspace<PrimeField>,
    weight: &Fp,
    budget: u64,
) -> Result<SearchReport, ClassifyError> {
    let field = *kernel.carrier.field();
    if field.is_zero(weight) {
        return Err(ClassifyError::ZeroWeight);
    }
    let search = KernelSearch::new(&kernel.carrier, weight, budget)?;
    let outcome = search.run();
    let maps = outcome.solutions.iter().map(|c| search.to_map(&field, c)).collect();
    Ok(finish_report(&kernel.name, &kernel.carrier, weight, maps, outcome.nodes, outcome.complete))
}

/// Unpruned enumeration of every complement assignment, for checking the
/// pruned search on small instances.
pub fn brute_force_with_kernel(
    kernel: &NamedSubspace<PrimeField>,
    weight: &Fp,
    cap: u128,
) -> Result<SearchReport, ClassifyError> {
    let field = *kernel.carrier.field();
    if field.is_zero(weight) {
        return Err(ClassifyError::ZeroWeight);
    }
    let search = KernelSearch::new(&kernel.carrier, weight, u64::MAX)?;
    let q = search.zp.p as u128;
    let size = q.checked_pow((DIM * search.slots) as u32).unwrap_or(u128::MAX);
    if size > cap {
        return Err(ClassifyError::CapExceeded { size, cap });
    }
    let o = SplitOctonions::new(field);
    let maps: Vec<LinearMap<PrimeField>> = (0..size)
        .into_par_iter()
        .filter_map(|mut n| {
            let mut cols = [[0u8; DIM]; DIM];
            for s in (0..search.slots).rev() {
                for i in (0..DIM).rev() {
                    cols[s][i] = (n % q) as u8;
                    n /= q;
                }
            }
            let map = search.to_map(&field, &cols);
            (is_rota_baxter(&o, &map, weight) && map.kernel() == kernel.carrier).then_some(map)
        })
        .collect();
    Ok(finish_report(&kernel.name, &kernel.carrier, weight, maps, size as u64, true))
}

/// Subspaces of a given dimension counted by the RREF enumeration, and how
/// many of them are totally isotropic for the norm.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsotropicCensus {
    pub dimension: usize,
    pub subspaces: u64,
    pub totally_isotropic: u64,
    pub first_isotropic: Option<Vec<String>>,
}

/// Calls `visit` on every `d`-dimensional subspace of `F_p^8` in canonical
/// RREF, grouped by pivot profile in lexicographic order.
fn for_each_rref(p: u8, d: usize, mut visit: impl FnMut(&[Vec8])) {
    let mut pivots: Vec<usize> = (0..d).collect();
    loop {
        let free: Vec<(usize, usize)> = (0..d)
            .flat_map(|r| {
                let pivots = &pivots;
                (pivots[r] + 1..DIM).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let mut digits = vec![0u8; free.len()];
        loop {
            let mut rows = vec![[0u8; DIM]; d];
            for (r, &c) in pivots.iter().enumerate() {
                rows[r][c] = 1;
            }
            for (&(r, c), &x) in free.iter().zip(&digits) {
                rows[r][c] = x;
            }
            visit(&rows);
            let Some(pos) = (0..digits.len()).rev().find(|&i| digits[i] + 1 < p) else {
                break;
            };
            digits[pos] += 1;
            for x in digits.iter_mut().skip(pos + 1) {
                *x = 0;
            }
        }
        // Next pivot combination.
        let Some(i) = (0..d).rev().find(|&i| pivots[i] < DIM - d + i) else {
            return;
        };
        pivots[i] += 1;
        for j in i + 1..d {
            pivots[j] = pivots[j - 1] + 1;
        }
    }
}

pub fn is_totally_isotropic<F: Field>(o: &SplitOctonions<F>, basis: &[Octonion<F>]) -> bool {
    let f = o.field();
    basis.iter().enumerate().all(|(i, x)| {
        f.is_zero(&o.norm(x)) && basis[i + 1..].iter().all(|y| f.is_zero(&o.bilinear_form(x, y)))
    })
}

pub fn isotropic_census(field: &PrimeField, d: usize) -> Result<IsotropicCensus, ClassifyError> {
    let zp = Zp::of(field)?;
    let o = SplitOctonions::new(*field);
    let mut census = IsotropicCensus {
        dimension: d,
        subspaces: 0,
        totally_isotropic: 0,
        first_isotropic: None,
    };
    for_each_rref(zp.p as u8, d, |rows| {
        census.subspaces += 1;
        let basis: Vec<Octonion<PrimeField>> = rows.iter().map(|r| zp.octonion(field, r)).collect();
        if is_totally_isotropic(&o, &basis) {
            census.totally_isotropic += 1;
            if census.first_isotropic.is_none() {
                census.first_isotropic = Some(basis.iter().map(|b| o.describe(b)).collect());
            }
        }
    });
    Ok(census)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsotropicAudit {
    pub five: IsotropicCensus,
    pub four: Option<IsotropicCensus>,
    /// `span{e21, e22, ve21, ve22}` is totally isotropic.
    pub exhibit_isotropic: bool,
    /// `span{1}` is totally isotropic.
    pub unit_isotropic: bool,
}

pub fn isotropic_audit(field: &PrimeField, count_four: bool) -> Result<IsotropicAudit, ClassifyError> {
    let o = SplitOctonions::new(*field);
    let exhibit: Vec<_> = [Basis::E21, Basis::E22, Basis::VE21, Basis::VE22]
        .iter()
        .map(|&b| o.basis(b))
        .collect();
    Ok(IsotropicAudit {
        five: isotropic_census(field, 5)?,
        four: if count_four { Some(isotropic_census(field, 4)?) } else { None },
        exhibit_isotropic: is_totally_isotropic(&o, &exhibit),
        unit_isotropic: is_totally_isotropic(&o, &[o.unit()]),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EquivalenceVerdict {
    OrbitMatched,
    FingerprintMatchedOnly,
    Unresolved,
}

#[derive(Clone, Debug)]
pub struct SolutionVerdict {
    pub operator: LinearMap<PrimeField>,
    pub verdict: EquivalenceVerdict,
    /// Witness relating `R1` to this operator.
    pub witness: Option<OrbitWitness>,
    /// Fingerprint equals that of the representative with the same kernel.
    pub fingerprint_match: bool,
    pub fixes_unit_line: bool,
}

#[derive(Clone, Debug)]
pub struct KernelFinding {
    pub report: SearchReport,
    /// Name of the representative whose fingerprint non-splitting solutions
    /// must share.
    pub representative: Option<&'static str>,
    pub verdicts: Vec<SolutionVerdict>,
}

#[derive(Clone, Debug)]
pub struct Theorem1Report {
    pub closure_size: usize,
    pub closure_complete: bool,
    pub findings: Vec<KernelFinding>,
}

impl Theorem1Report {
    pub fn complete(&self) -> bool {
        self.closure_complete && self.findings.iter().all(|f| f.report.complete)
    }
}

/// Kernels searched for the non-splitting classification, with the
/// representative operator expected for each.
pub const THEOREM1_KERNELS: [(&str, Option<&str>); 3] = [("K4", Some("R1")), ("K3a", None), ("K3b", Some("R2"))];

pub fn representative(name: &str, field: PrimeField) -> Option<LinearMap<PrimeField>> {
    match name {
        "R1" => Some(r1(field)),
        "R2" => Some(r2(field)),
        _ => None,
    }
}

pub fn verify_theorem1(
    field: &PrimeField,
    budget: u64,
    closure_cap: usize,
) -> Result<Theorem1Report, ClassifyError> {
    let o = SplitOctonions::new(*field);
    let one = field.one();
    let closure = group_closure(field, example_generators(field), closure_cap)?;
    let base = r1(*field);
    let mut findings = Vec::new();
    for (name, rep) in THEOREM1_KERNELS {
        let kernel = subspace_by_name(&o, name).ok_or_else(|| ClassifyError::UnknownKernel(name.into()))?;
        let report = search_rb_with_kernel(&kernel, &one, budget)?;
        let rep_print = rep.and_then(|r| representative(r, *field)).map(|m| gl_invariant_fingerprint(&m));
        let mut verdicts = Vec::new();
        for s in report.nonsplitting() {
            let witness = orbit_equivalent(&base, &one, s, &one, &closure, true, true)?;
            let fingerprint_match = rep_print.as_ref() == Some(&gl_invariant_fingerprint(s));
            let verdict = if witness.is_some() {
                EquivalenceVerdict::OrbitMatched
            } else if fingerprint_match {
                EquivalenceVerdict::FingerprintMatchedOnly
            } else {
                EquivalenceVerdict::Unresolved
            };
            verdicts.push(SolutionVerdict {
                operator: s.clone(),
                verdict,
                witness,
                fingerprint_match,
                fixes_unit_line: fixes_unit_line(&o, s),
            });
        }
        findings.push(KernelFinding {
            report,
            representative: rep,
            verdicts,
        });
    }
    Ok(Theorem1Report {
        closure_size: closure.len(),
        closure_complete: closure.complete,
        findings,
    })
}
