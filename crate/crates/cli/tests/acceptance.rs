//! The ten acceptance criteria, run in order inside one test so that the
//! wall-clock limits are measured without competing tests.

use std::time::{Duration, Instant};

use octorb::classify::{
    brute_force_with_kernel, gl_invariant_fingerprint, isotropic_audit, search_rb_with_kernel, verify_theorem1,
    EquivalenceVerdict,
};
use octorb::field::{Field, PrimeField, Rationals};
use octorb::linmap::LinearMap;
use octorb::morphisms::{
    canonical_involution, example_morphism, example_parameter, is_antiautomorphism, is_automorphism, MorphismKind,
};
use octorb::octonion::{Octonion, SplitOctonions, DIM};
use octorb::rota_baxter::{
    fixes_unit_line, from_decomposition, is_rota_baxter, is_splitting, phi, r1, r2, scale, splitting_parts,
};
use octorb::subalgebra::{
    classification_pairs, contains_unit, decomposition_by_name, is_direct_sum_decomposition, subspace_by_name,
    NamedSubspace,
};
use octorb_cli::{run, Command, RunConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUDGET: u64 = 1_000_000_000;
const CLOSURE_CAP: usize = 1_000_000;

struct Outcome {
    pass: bool,
    note: String,
}

fn outcome(pass: bool, note: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        note: note.into(),
    }
}

fn within(start: Instant, limit: Duration) -> (bool, String) {
    let t = start.elapsed();
    (t < limit, format!("{:.3}s of {:?}", t.as_secs_f64(), limit))
}

fn f(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn random_octonion<F: Field>(field: &F, rng: &mut ChaCha8Rng) -> Octonion<F> {
    Octonion::new(std::array::from_fn(|_| match field.order() {
        Some(q) => field.from_i64(rng.gen_range(0..q) as i64),
        None => field
            .div(&field.from_i64(rng.gen_range(-9..=9)), &field.from_i64(rng.gen_range(1..=5)))
            .unwrap(),
    }))
}

fn composes<F: Field>(o: &SplitOctonions<F>, x: &Octonion<F>, y: &Octonion<F>) -> bool {
    o.norm(&o.multiply(x, y)) == o.field().mul(&o.norm(x), &o.norm(y))
}

fn random_pairs_compose<F: Field>(field: F, seed: u64) -> bool {
    let o = SplitOctonions::new(field.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..10_000).all(|_| {
        let (x, y) = (random_octonion(&field, &mut rng), random_octonion(&field, &mut rng));
        composes(&o, &x, &y)
    })
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let o = SplitOctonions::new(f(2));
    let all: Vec<Octonion<PrimeField>> = (0..256u32)
        .map(|n| Octonion::new(std::array::from_fn(|i| f(2).elem(n >> (DIM - 1 - i) & 1))))
        .collect();
    let mut pairs = 0u32;
    let mut exhaustive = true;
    for x in &all {
        for y in &all {
            pairs += 1;
            exhaustive &= composes(&o, x, y);
        }
    }
    let f5 = random_pairs_compose(f(5), 1);
    let q = random_pairs_compose(Rationals, 2);
    let (fast, t) = within(start, Duration::from_secs(1));
    outcome(
        exhaustive && pairs == 65_536 && f5 && q && fast,
        format!("F2 {pairs} pairs, 10^4 random over F5 and Q; {t}"),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut ok = true;
    for p in [3, 5] {
        let field = f(p);
        let o = SplitOctonions::new(field);
        for k in [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 15, 16, 17, 18] {
            let params: Vec<_> = match example_parameter(k).unwrap() {
                None => vec![None],
                Some(nonzero) => field
                    .elements()
                    .unwrap()
                    .into_iter()
                    .filter(|a| !(nonzero && field.is_zero(a)))
                    .map(Some)
                    .collect(),
            };
            for a in params {
                let m = example_morphism(&o, k, a.as_ref()).unwrap();
                let good = if matches!(k, 11 | 17) {
                    m.kind == MorphismKind::Anti && is_antiautomorphism(&o, &m.map) && !is_automorphism(&o, &m.map)
                } else {
                    m.kind == MorphismKind::Auto && is_automorphism(&o, &m.map)
                };
                ok &= good;
                checked += 1;
            }
        }
        let c = canonical_involution(&o);
        ok &= is_antiautomorphism(&o, &c.map) && !is_automorphism(&o, &c.map);
    }
    let (fast, t) = within(start, Duration::from_secs(2));
    outcome(ok && fast, format!("{checked} example instances over F3 and F5; {t}"))
}

fn operators_hold<F: Field>(field: F) -> bool {
    let o = SplitOctonions::new(field.clone());
    let one = field.one();
    [r1(field.clone()), r2(field.clone())].iter().all(|r| {
        is_rota_baxter(&o, r, &one) && !is_splitting(r, &one).unwrap() && is_rota_baxter(&o, &phi(r, &one), &one)
    })
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let fields = operators_hold(Rationals) && operators_hold(f(2)) && operators_hold(f(3)) && operators_hold(f(5));
    let f5 = f(5);
    let o = SplitOctonions::new(f5);
    let scaled = [2, 3].iter().all(|&m| {
        let (s, w) = scale(&r1(f5), &f5.elem(m), &f5.one()).unwrap();
        w == f5.elem(m) && is_rota_baxter(&o, &s, &w)
    });
    let (fast, t) = within(start, Duration::from_secs(1));
    outcome(fields && scaled && fast, format!("R1, R2, phi over Q, F2, F3, F5; scaling over F5; {t}"))
}

/// The splitting operators built from the classification pairs at weight 1.
fn catalog_operators<F: Field>(field: F) -> (bool, Vec<LinearMap<F>>) {
    let o = SplitOctonions::new(field.clone());
    let one = field.one();
    let mut ok = true;
    let mut ops = Vec::new();
    for d in classification_pairs(&o) {
        ok &= is_direct_sum_decomposition(&o, &d.a1, &d.a2);
        let r = from_decomposition(&o, &d.a1, &d.a2, &one).unwrap();
        ok &= is_rota_baxter(&o, &r, &one) && is_splitting(&r, &one).unwrap();
        ok &= splitting_parts(&o, &r, &one).is_ok_and(|(a1, a2)| a1 == d.a1 && a2 == d.a2);
        ops.push(r);
    }
    let d6 = decomposition_by_name(&o, "D6").unwrap();
    let d7 = decomposition_by_name(&o, "D7").unwrap();
    ok &= contains_unit(&o, &d6.a1) && !contains_unit(&o, &d7.a1) && !contains_unit(&o, &d7.a2);
    (ok, ops)
}

fn criterion_4() -> (Outcome, Vec<LinearMap<PrimeField>>) {
    let start = Instant::now();
    let (q, _) = catalog_operators(Rationals);
    let (f3, _) = catalog_operators(f(3));
    let (f5, _) = catalog_operators(f(5));
    let (f2, ops) = catalog_operators(f(2));
    let (fast, t) = within(start, Duration::from_secs(1));
    (
        outcome(q && f3 && f5 && fast, format!("7 pairs over Q, F3, F5, F2 operators built: {f2}; {t}")),
        ops,
    )
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let audit = isotropic_audit(&f(2), true).unwrap();
    let four = audit.four.as_ref().unwrap();
    let (fast, t) = within(start, Duration::from_secs(60));
    outcome(
        audit.five.subspaces == 97_155
            && audit.five.totally_isotropic == 0
            && four.totally_isotropic > 0
            && four.first_isotropic.is_some()
            && audit.exhibit_isotropic
            && fast,
        format!(
            "{} five-dimensional, {} isotropic; {} isotropic four-dimensional, first {:?}; {t}",
            audit.five.subspaces,
            audit.five.totally_isotropic,
            four.totally_isotropic,
            four.first_isotropic.as_ref().unwrap(),
        ),
    )
}

fn criterion_6() -> (Outcome, Vec<LinearMap<PrimeField>>) {
    let field = f(2);
    let o = SplitOctonions::new(field);
    let k = subspace_by_name(&o, "K3a").unwrap();
    let r = search_rb_with_kernel(&k, &field.one(), BUDGET).unwrap();
    let note = format!(
        "{} solutions, nonsplitting_count {}, {} nodes, complete {}",
        r.solutions.len(),
        r.nonsplitting_count,
        r.nodes_visited,
        r.complete
    );
    (
        outcome(r.complete && r.nonsplitting_count == 0 && r.reverify_failures == 0, note),
        r.solutions,
    )
}

fn criterion_7() -> (Outcome, Vec<LinearMap<PrimeField>>) {
    let field = f(2);
    let report = verify_theorem1(&field, BUDGET, CLOSURE_CAP).unwrap();
    let mut ok = report.complete();
    let mut notes = vec![format!("closure {}", report.closure_size)];
    let mut ops = Vec::new();
    for kf in &report.findings {
        let name = kf.report.kernel.as_str();
        ok &= kf.report.reverify_failures == 0;
        ok &= kf.verdicts.iter().all(|v| v.verdict != EquivalenceVerdict::Unresolved);
        let rep = match name {
            "K4" => Some(r1(field)),
            "K3b" => Some(r2(field)),
            _ => None,
        };
        if let Some(rep) = rep {
            let print = gl_invariant_fingerprint(&rep);
            ok &= kf.report.nonsplitting().all(|s| gl_invariant_fingerprint(s) == print);
            ok &= kf.verdicts.iter().all(|v| v.fingerprint_match);
            ok &= !kf.verdicts.is_empty();
        }
        let witnessed = kf.verdicts.iter().filter(|v| v.witness.is_some()).count();
        notes.push(format!(
            "{name}: {} non-splitting, {witnessed} with orbit witness",
            kf.report.nonsplitting_count
        ));
        ops.extend(kf.report.solutions.iter().cloned());
    }
    (outcome(ok, notes.join("; ")), ops)
}

fn criterion_8(ops: &[LinearMap<PrimeField>]) -> Outcome {
    let field = f(2);
    let o = SplitOctonions::new(field);
    let one = field.one();
    let fixing: Vec<_> = ops.iter().filter(|r| fixes_unit_line(&o, r)).collect();
    let all_rb = ops.iter().all(|r| is_rota_baxter(&o, r, &one));
    let ok = all_rb && fixing.iter().all(|r| is_splitting(r, &one).unwrap());
    outcome(ok, format!("{} operators, {} with R(1) on the unit line, all splitting", ops.len(), fixing.len()))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let field = f(2);
    let o = SplitOctonions::new(field);
    let d1 = decomposition_by_name(&o, "D1").unwrap();
    let kernel = NamedSubspace {
        name: "D1.A1".into(),
        locus: String::new(),
        carrier: d1.a1,
    };
    let pruned = search_rb_with_kernel(&kernel, &field.one(), u64::MAX).unwrap();
    let brute = brute_force_with_kernel(&kernel, &field.one(), 1 << 16).unwrap();
    let key = |m: &LinearMap<PrimeField>| format!("{:?}", m.rows());
    let mut a: Vec<String> = pruned.solutions.iter().map(key).collect();
    let mut b: Vec<String> = brute.solutions.iter().map(key).collect();
    a.sort();
    b.sort();
    let (fast, t) = within(start, Duration::from_secs(10));
    outcome(
        kernel.carrier.dim() == 6 && pruned.complete && a == b && !a.is_empty() && fast,
        format!("{} solutions both ways over {} assignments; {t}", a.len(), brute.nodes_visited),
    )
}

fn criterion_10() -> Outcome {
    let mut failures = Vec::new();
    let suites = [
        (Command::VerifyAlgebra, "F5"),
        (Command::VerifyMorphisms, "Q"),
        (Command::VerifyOperators, "F3"),
        (Command::VerifyDecompositions, "Q"),
        (Command::GroupClosure, "F2"),
        (Command::SearchKernel, "F2"),
        (Command::IsotropicAudit, "F2"),
    ];
    for (command, field) in &suites {
        let mut config = RunConfig::new(command.clone());
        config.field = field.parse().unwrap();
        config.seed = 42;
        let mut outputs = Vec::new();
        for threads in [1, 3] {
            config.threads = threads;
            outputs.push(run(&config).unwrap().json);
        }
        if outputs[0] != outputs[1] {
            failures.push(command.name());
        }
    }
    outcome(
        failures.is_empty(),
        format!("{} suites at 1 and 3 threads, differing: {failures:?}", suites.len()),
    )
}

#[test]
fn acceptance() {
    let mut results = vec![criterion_1(), criterion_2(), criterion_3()];
    let (c4, mut ops) = criterion_4();
    results.push(c4);
    results.push(criterion_5());
    let (c6, k3a) = criterion_6();
    results.push(c6);
    let (c7, searched) = criterion_7();
    results.push(c7);
    ops.extend(k3a);
    ops.extend(searched);
    results.push(criterion_8(&ops));
    results.push(criterion_9());
    results.push(criterion_10());
    for (i, r) in results.iter().enumerate() {
        println!("criterion {}: {} ({})", i + 1, if r.pass { "PASS" } else { "FAIL" }, r.note);
    }
    let failed: Vec<usize> = (0..results.len()).filter(|&i| !results[i].pass).map(|i| i + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
