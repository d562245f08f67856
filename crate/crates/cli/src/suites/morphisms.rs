use octorb::field::Field;
use octorb::linmap::LinearMap;
use octorb::morphisms::{
    automorphism_failure, canonical_involution, complete_involution_14, example_kind, example_morphism,
    example_parameter, is_antiautomorphism, is_automorphism, kind_of, Morphism, MorphismError, MorphismKind,
    EXAMPLES,
};
use octorb::octonion::{Octonion, SplitOctonions};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::random_octonion;
use crate::Report;

const NORM_SAMPLES: usize = 100;
const COMPOSITION_SAMPLES: usize = 200;
const RANDOM_RATIONAL_PARAMS: usize = 4;
const COMPLETION_CAP: u128 = 100_000_000;

/// Admissible parameters: every element (or unit) of a finite field, a fixed
/// list plus seeded draws over Q.
fn parameters<F: Field>(f: &F, nonzero: bool, rng: &mut ChaCha8Rng) -> Vec<F::Elem> {
    let mut out = match f.order() {
        Some(_) => f.elements().expect("finite"),
        None => {
            let mut v: Vec<F::Elem> = ["0", "1", "-1", "2", "1/2", "-3/2", "7/3"]
                .iter()
                .map(|s| f.parse(s).expect("literal"))
                .collect();
            for _ in 0..RANDOM_RATIONAL_PARAMS {
                let n = f.from_i64(rng.gen_range(-20..=20));
                let d = f.from_i64(rng.gen_range(1..=7));
                v.push(f.div(&n, &d).expect("nonzero"));
            }
            v
        }
    };
    if nonzero {
        out.retain(|a| !f.is_zero(a));
    }
    out
}

fn preserves_unit_and_norm<F: Field>(o: &SplitOctonions<F>, m: &LinearMap<F>, samples: &[Octonion<F>]) -> bool {
    m.apply(&o.unit()) == o.unit()
        && o.basis_elements().iter().chain(samples).all(|x| o.norm(&m.apply(x)) == o.norm(x))
}

pub(super) fn run<F: Field>(o: &SplitOctonions<F>, report: &mut Report, rng: &mut ChaCha8Rng) {
    let f = o.field();
    let samples: Vec<Octonion<F>> = (0..NORM_SAMPLES).map(|_| random_octonion(o, rng)).collect();
    let mut built: Vec<Morphism<F>> = Vec::new();

    for k in EXAMPLES {
        let params: Vec<Option<F::Elem>> = match example_parameter(k).expect("known example") {
            None => vec![None],
            Some(nonzero) => parameters(f, nonzero, rng).into_iter().map(Some).collect(),
        };
        let expected = example_kind(k);
        let mut failure = None;
        for a in &params {
            let label = a.as_ref().map_or("none".to_string(), |a| f.format(a));
            match example_morphism(o, k, a.as_ref()) {
                Err(e) => {
                    failure = Some(json!({ "param": label, "error": e.to_string() }));
                    break;
                }
                Ok(m) => {
                    let kind_ok = m.kind == expected
                        && match expected {
                            MorphismKind::Anti => is_antiautomorphism(o, &m.map) && !is_automorphism(o, &m.map),
                            _ => is_automorphism(o, &m.map),
                        };
                    if !kind_ok {
                        failure = Some(json!({ "param": label, "error": "kind mismatch" }));
                        break;
                    }
                    if !preserves_unit_and_norm(o, &m.map, &samples) {
                        failure = Some(json!({ "param": label, "error": "unit or norm not preserved" }));
                        break;
                    }
                    built.push(m);
                }
            }
        }
        report.count("example_instances", params.len() as u64);
        let detail = failure.clone().unwrap_or(json!({ "kind": expected, "params": params.len() }));
        report.check(&format!("example-{k}"), failure.is_none(), detail);
    }

    let anti_fail_auto = built
        .iter()
        .filter(|m| m.kind == MorphismKind::Anti)
        .all(|m| automorphism_failure(o, &m.map).is_some());
    report.check("anti-examples-fail-automorphism-law", anti_fail_auto, serde_json::Value::Null);

    let c = canonical_involution(o);
    report.check(
        "canonical-involution",
        is_antiautomorphism(o, &c.map)
            && !is_automorphism(o, &c.map)
            && c.map.compose(&c.map).is_identity()
            && preserves_unit_and_norm(o, &c.map, &samples),
        json!({ "kind": kind_of(o, &c.map) }),
    );

    let coincide = parameters(f, false, rng).iter().all(|a| {
        let a = Some(a);
        match (example_morphism(o, 2, a), example_morphism(o, 16, a)) {
            (Ok(x), Ok(y)) => x.map == y.map,
            (Err(x), Err(y)) => x == y,
            _ => false,
        }
    });
    report.check("examples-2-and-16-coincide", coincide, serde_json::Value::Null);

    let nine = example_morphism(o, 9, None).expect("example 9").map;
    let order = (1..=4).find(|&n| nine.pow(n).is_identity());
    report.check("example-9-order-divides-4", order.is_some(), json!({ "order": order }));

    parameter_laws(o, report, rng);

    let mut bad = None;
    if !built.is_empty() {
        for _ in 0..COMPOSITION_SAMPLES {
            let a = &built[rng.gen_range(0..built.len())];
            let b = &built[rng.gen_range(0..built.len())];
            let ab = a.compose(b);
            if bad.is_none() && kind_of(o, &ab.map) != ab.kind {
                bad = Some(json!({ "a": a.source.to_string(), "b": b.source.to_string() }));
            }
        }
    }
    report.check(
        "composition-kinds",
        bad.is_none(),
        bad.unwrap_or(json!({ "pairs": COMPOSITION_SAMPLES })),
    );

    if f.order().is_none() {
        report.skip("example-14-completion", "completion search needs a finite field");
    } else {
        match complete_involution_14(o, COMPLETION_CAP) {
            Ok(found) => {
                let auto = found.iter().filter(|m| m.kind == MorphismKind::Auto).count();
                let anti = found.len() - auto;
                report.count("example_14_automorphisms", auto as u64);
                report.count("example_14_antiautomorphisms", anti as u64);
                let sound = found.iter().all(|m| {
                    m.map.compose(&m.map).is_identity()
                        && kind_of(o, &m.map) == m.kind
                        && preserves_unit_and_norm(o, &m.map, &samples)
                });
                report.check(
                    "example-14-completion",
                    sound,
                    json!({ "automorphisms": auto, "antiautomorphisms": anti }),
                );
                report.artifact(
                    "example_14_completions",
                    json!(found.iter().map(octorb::io::morphism_file).collect::<Vec<_>>()),
                );
            }
            Err(MorphismError::CapExceeded { size, cap }) => report.skip(
                "example-14-completion",
                &format!("{size} candidate completions exceed the cap of {cap}"),
            ),
            Err(e) => {
                report.check("example-14-completion", false, json!({ "error": e.to_string() }));
            }
        }
    }
}

/// Example 1 is additive and Example 7 multiplicative in the parameter.
fn parameter_laws<F: Field>(o: &SplitOctonions<F>, report: &mut Report, rng: &mut ChaCha8Rng) {
    let f = o.field();
    let take = |v: Vec<F::Elem>| v.into_iter().take(6).collect::<Vec<_>>();
    let all = take(parameters(f, false, rng));
    let units = take(parameters(f, true, rng));
    let ex = |k: u8, a: &F::Elem| example_morphism(o, k, Some(a)).expect("admissible").map;
    let additive = all
        .iter()
        .all(|a| all.iter().all(|b| ex(1, a).compose(&ex(1, b)) == ex(1, &f.add(a, b))));
    report.check("example-1-additive", additive, json!({ "params": all.len() }));
    let multiplicative = units
        .iter()
        .all(|a| units.iter().all(|b| ex(7, a).compose(&ex(7, b)) == ex(7, &f.mul(a, b))));
    report.check("example-7-multiplicative", multiplicative, json!({ "params": units.len() }));
}
