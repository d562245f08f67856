use std::collections::HashSet;
use std::path::Path;

use octorb::classify::{
    self, example_generators, gl_invariant_fingerprint, isotropic_census, orbit_equivalent,
    search_rb_with_kernel, ClassifyError, EquivalenceVerdict, OrbitWitness, SearchReport,
};
use octorb::field::{Field, PrimeField};
use octorb::io::{matrix_file, operator_file, read_operator, OperatorFile};
use octorb::linmap::LinearMap;
use octorb::morphisms::kind_of;
use octorb::octonion::SplitOctonions;
use octorb::rota_baxter::{rota_baxter_failure, scale, RotaBaxterCandidate};
use octorb::subalgebra::subspace_by_name;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{proposition_1, weight};
use crate::{Report, RunConfig, UsageError};

const CLOSURE_SAMPLES: usize = 10_000;
const INVERSE_SAMPLES: usize = 1_000;

fn usage(e: ClassifyError) -> UsageError {
    UsageError::Invalid(e.to_string())
}

/// `[n, k]_q`, computed with the product formula.
fn gaussian_binomial(n: u32, k: u32, q: u128) -> u128 {
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

pub(super) fn isotropic_audit(config: &RunConfig, report: &mut Report, field: PrimeField) -> Result<(), UsageError> {
    let p = field.modulus();
    if p > 251 {
        return Err(usage(ClassifyError::ModulusTooLarge(p)));
    }
    let o = SplitOctonions::new(field);
    let expected = gaussian_binomial(8, 5, p as u128);
    report.param("budget", config.budget);
    if expected > config.budget as u128 {
        report.complete = false;
        report.skip(
            "five-dimensional-census",
            &format!("{expected} subspaces exceed the budget of {}", config.budget),
        );
    } else {
        let five = isotropic_census(&field, 5).map_err(usage)?;
        report.nodes_visited += five.subspaces;
        report.count("five_dimensional_subspaces", five.subspaces);
        report.count("totally_isotropic_5", five.totally_isotropic);
        report.check(
            "subspace-count",
            five.subspaces as u128 == expected,
            json!({ "enumerated": five.subspaces, "gaussian_binomial": expected.to_string() }),
        );
        report.check(
            "no-isotropic-5-space",
            five.totally_isotropic == 0,
            json!({ "first": five.first_isotropic }),
        );
    }
    let exhibit = [
        octorb::octonion::Basis::E21,
        octorb::octonion::Basis::E22,
        octorb::octonion::Basis::VE21,
        octorb::octonion::Basis::VE22,
    ]
    .map(|b| o.basis(b));
    report.check(
        "isotropic-4-space-exhibit",
        classify::is_totally_isotropic(&o, &exhibit),
        json!(exhibit.iter().map(|x| o.describe(x)).collect::<Vec<_>>()),
    );
    report.check("unit-not-isotropic", !classify::is_totally_isotropic(&o, &[o.unit()]), Value::Null);
    if p == 2 {
        let four = isotropic_census(&field, 4).map_err(usage)?;
        report.nodes_visited += four.subspaces;
        report.count("four_dimensional_subspaces", four.subspaces);
        report.count("totally_isotropic_4", four.totally_isotropic);
        // Maximal totally singular subspaces of the hyperbolic 8-space: ∏ (q^i + 1), i < 4.
        let expected: u64 = (0..4).map(|i| 2u64.pow(i) + 1).product();
        report.check(
            "isotropic-4-space-count",
            four.subspaces as u128 == gaussian_binomial(8, 4, 2) && four.totally_isotropic == expected,
            json!({ "found": four.totally_isotropic, "expected": expected, "first": four.first_isotropic }),
        );
    }
    Ok(())
}

/// The operator a non-splitting solution is expected to share invariants with.
fn representative_for(kernel: &str) -> Option<&'static str> {
    classify::THEOREM1_KERNELS.iter().find(|(k, _)| *k == kernel).and_then(|(_, r)| *r)
}

fn solution_findings(report: &mut Report, search: &SearchReport, rep: Option<LinearMap<PrimeField>>) {
    let name = &search.kernel;
    report.check(
        &format!("{name}-reverify"),
        search.reverify_failures == 0,
        json!({ "failures": search.reverify_failures }),
    );
    let distinct: HashSet<_> = search.solutions.iter().map(|r| r.rows().clone()).collect();
    report.check(
        &format!("{name}-distinct"),
        distinct.len() == search.solutions.len(),
        json!({ "solutions": search.solutions.len() }),
    );
    match rep {
        None => report.check(
            &format!("{name}-all-splitting"),
            search.nonsplitting_count == 0,
            json!({ "nonsplitting_count": search.nonsplitting_count }),
        ),
        Some(rep) => {
            let print = gl_invariant_fingerprint(&rep);
            let mismatched = search.nonsplitting().filter(|s| gl_invariant_fingerprint(s) != print).count();
            report.check(
                &format!("{name}-fingerprints"),
                mismatched == 0,
                json!({ "mismatched": mismatched, "representative": print }),
            )
        }
    };
}

fn record_counts(report: &mut Report, prefix: &str, search: &SearchReport) {
    report.count(&format!("{prefix}solutions"), search.solutions.len() as u64);
    report.count(&format!("{prefix}splitting_count"), search.splitting_count as u64);
    report.count(&format!("{prefix}nonsplitting_count"), search.nonsplitting_count as u64);
    report.count(&format!("{prefix}reverify_failures"), search.reverify_failures as u64);
    report.nodes_visited += search.nodes_visited;
    report.complete &= search.complete;
}

pub(super) fn search_kernel(config: &RunConfig, report: &mut Report, field: PrimeField) -> Result<(), UsageError> {
    let o = SplitOctonions::new(field);
    let w = weight(config, &field, report)?;
    let kernel = match config.kernel.as_str() {
        name @ ("K4" | "K3a" | "K3b") => subspace_by_name(&o, name).expect("catalog kernel"),
        other => return Err(UsageError::Invalid(format!("unknown kernel {other:?} (expected K4, K3a or K3b)"))),
    };
    report.param("kernel", kernel.name.clone());
    report.param("budget", config.budget);
    let search = search_rb_with_kernel(&kernel, &w, config.budget).map_err(usage)?;
    record_counts(report, "", &search);
    let rep = representative_for(&kernel.name)
        .and_then(|r| classify::representative(r, field))
        .map(|r| scale(&r, &w, &field.one()).expect("nonzero weight").0);
    solution_findings(report, &search, rep);
    let seen: Vec<_> = search.solutions.iter().map(|r| (r.clone(), w)).collect();
    proposition_1(&o, report, &seen);
    let files: Vec<OperatorFile> = search
        .solutions
        .iter()
        .map(|r| operator_file(&RotaBaxterCandidate::new(r.clone(), w).verify(&o)))
        .collect();
    report.artifact("solutions", json!(files));
    Ok(())
}

fn witness_json(w: &OrbitWitness) -> Value {
    json!({
        "element": w.element,
        "kind": w.kind,
        "mu": w.mu.to_string(),
        "applied_phi": w.applied_phi,
        "map": matrix_file(&w.map),
    })
}

pub(super) fn verify_theorem1(config: &RunConfig, report: &mut Report, field: PrimeField) -> Result<(), UsageError> {
    let o = SplitOctonions::new(field);
    let w = weight(config, &field, report)?;
    if !field.is_one(&w) {
        return Err(UsageError::Invalid(
            "verify-theorem1 runs at weight 1; every nonzero weight scales to it".into(),
        ));
    }
    report.param("budget", config.budget);
    report.param("closure_cap", config.closure_cap as u64);
    let result = classify::verify_theorem1(&field, config.budget, config.closure_cap).map_err(usage)?;
    report.count("closure_size", result.closure_size as u64);
    report.complete &= result.closure_complete;
    let mut seen = Vec::new();
    for finding in &result.findings {
        let name = finding.report.kernel.clone();
        record_counts(report, &format!("{name}."), &finding.report);
        let rep = finding.representative.and_then(|r| classify::representative(r, field));
        solution_findings(report, &finding.report, rep);
        let unresolved = finding
            .verdicts
            .iter()
            .filter(|v| v.verdict == EquivalenceVerdict::Unresolved)
            .count();
        report.check(&format!("{name}-no-unresolved"), unresolved == 0, json!({ "unresolved": unresolved }));
        for (verdict, label) in [
            (EquivalenceVerdict::OrbitMatched, "orbit_matched"),
            (EquivalenceVerdict::FingerprintMatchedOnly, "fingerprint_matched_only"),
        ] {
            let n = finding.verdicts.iter().filter(|v| v.verdict == verdict).count();
            report.count(&format!("{name}.{label}"), n as u64);
        }
        let verdicts: Vec<Value> = finding
            .verdicts
            .iter()
            .map(|v| {
                json!({
                    "operator": matrix_file(&v.operator),
                    "verdict": v.verdict,
                    "fingerprint_match": v.fingerprint_match,
                    "fixes_unit_line": v.fixes_unit_line,
                    "witness": v.witness.as_ref().map(witness_json),
                })
            })
            .collect();
        report.artifact(&format!("{name}.verdicts"), json!(verdicts));
        seen.extend(finding.report.solutions.iter().map(|r| (r.clone(), w)));
    }
    proposition_1(&o, report, &seen);
    Ok(())
}

fn load(path: &Path, field: &PrimeField) -> Result<RotaBaxterCandidate<PrimeField>, UsageError> {
    let unreadable = |reason: String| UsageError::Unreadable {
        path: path.to_path_buf(),
        reason,
    };
    let text = std::fs::read_to_string(path).map_err(|e| unreadable(e.to_string()))?;
    let file: OperatorFile = serde_json::from_str(&text).map_err(|e| unreadable(e.to_string()))?;
    let c = read_operator(field, &file).map_err(|e| unreadable(e.to_string()))?;
    if field.is_zero(&c.weight) {
        return Err(unreadable("weight must be nonzero".into()));
    }
    Ok(c)
}

pub(super) fn orbit_equiv(
    config: &RunConfig,
    report: &mut Report,
    field: PrimeField,
    a: &Path,
    b: &Path,
) -> Result<(), UsageError> {
    let o = SplitOctonions::new(field);
    let ra = load(a, &field)?;
    let rb = load(b, &field)?;
    report.param("a", a.display().to_string());
    report.param("b", b.display().to_string());
    report.param("closure_cap", config.closure_cap as u64);
    for (label, c) in [("a", &ra), ("b", &rb)] {
        let fails = rota_baxter_failure(&o, &c.map, &c.weight);
        report.check(
            &format!("{label}-rota-baxter"),
            fails.is_none(),
            json!({ "weight": field.format(&c.weight), "failing_pair": fails }),
        );
    }
    let closure = classify::group_closure(&field, example_generators(&field), config.closure_cap).map_err(usage)?;
    report.count("closure_size", closure.len() as u64);
    let witness = orbit_equivalent(&ra.map, &ra.weight, &rb.map, &rb.weight, &closure, true, true).map_err(usage)?;
    if witness.is_none() && !closure.complete {
        report.complete = false;
        report.skip("orbit-witness", "closure capped before a witness was found");
    } else {
        report.check(
            "orbit-witness",
            witness.is_some(),
            witness.as_ref().map_or(Value::Null, witness_json),
        );
    }
    Ok(())
}

pub(super) fn group_closure(config: &RunConfig, report: &mut Report, field: PrimeField) -> Result<(), UsageError> {
    let o = SplitOctonions::new(field);
    report.param("closure_cap", config.closure_cap as u64);
    let gens = example_generators(&field);
    report.count("generators", gens.len() as u64);
    let closure = classify::group_closure(&field, gens, config.closure_cap).map_err(usage)?;
    let (auto, anti) = closure.kind_counts();
    report.count("size", closure.len() as u64);
    report.count("automorphisms", auto as u64);
    report.count("antiautomorphisms", anti as u64);
    report.complete &= closure.complete;

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let n = closure.len();
    if closure.complete {
        let pairs: Vec<(usize, usize)> = (0..CLOSURE_SAMPLES).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
        let outside = pairs
            .par_iter()
            .find_first(|&&(i, j)| !closure.contains(&closure.element(i).map.compose(&closure.element(j).map)));
        report.check(
            "closed-under-products",
            outside.is_none(),
            json!({ "pairs": pairs.len(), "outside": outside }),
        );
        let picks: Vec<usize> = (0..INVERSE_SAMPLES).map(|_| rng.gen_range(0..n)).collect();
        let outside = picks.par_iter().find_first(|&&i| {
            closure.element(i).map.invert().map_or(true, |inv| !closure.contains(&inv))
        });
        report.check(
            "closed-under-inverses",
            outside.is_none(),
            json!({ "elements": picks.len(), "outside": outside }),
        );
    } else {
        report.skip("closed-under-products", "closure is incomplete");
        report.skip("closed-under-inverses", "closure is incomplete");
    }

    // Preserving the polar form and fixing 1 is preserving the norm, up to
    // the diagonal, which is checked on the basis.
    let gram = o.gram_matrix();
    let basis = o.basis_elements();
    let bad = (0..n).into_par_iter().find_first(|&i| {
        let m = closure.element(i).map;
        m.apply(&o.unit()) != o.unit()
            || m.transpose().compose(&gram).compose(&m) != gram
            || basis.iter().any(|x| o.norm(&m.apply(x)) != o.norm(x))
    });
    report.check("unit-and-norm", bad.is_none(), json!({ "elements": n, "first_bad": bad }));
    let picks: Vec<usize> = (0..INVERSE_SAMPLES).map(|_| rng.gen_range(0..n)).collect();
    let bad = picks.par_iter().find_first(|&&i| {
        let m = closure.element(i);
        kind_of(&o, &m.map) != m.kind
    });
    report.check("recorded-kinds", bad.is_none(), json!({ "elements": picks.len(), "first_bad": bad }));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(8, 5, 2), 97_155);
        assert_eq!(gaussian_binomial(8, 4, 2), 200_787);
        assert_eq!(gaussian_binomial(8, 1, 3), 3280);
        assert_eq!(gaussian_binomial(8, 0, 7), 1);
    }

    #[test]
    fn representatives() {
        assert_eq!(representative_for("K4"), Some("R1"));
        assert_eq!(representative_for("K3b"), Some("R2"));
        assert_eq!(representative_for("K3a"), None);
    }
}
