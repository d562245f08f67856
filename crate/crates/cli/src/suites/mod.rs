use octorb::field::{Field, FieldTag, PrimeField, Rationals};
use octorb::io::catalog_entries;
use octorb::octonion::{Octonion, SplitOctonions, DIM};
use octorb::subalgebra::catalog as catalog_subspaces;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::{Command, Report, RunConfig, UsageError};

mod algebra;
mod morphisms;
mod operators;
mod search;

pub(crate) fn dispatch(config: &RunConfig) -> Result<Report, UsageError> {
    let mut report = Report::new(config.command.name(), &config.field.to_string());
    report.param("seed", config.seed);
    match config.field {
        FieldTag::Rational => generic(config, &mut report, Rationals)?,
        FieldTag::Prime(p) => {
            let field = PrimeField::new(p)?;
            match &config.command {
                Command::IsotropicAudit => search::isotropic_audit(config, &mut report, field)?,
                Command::SearchKernel => search::search_kernel(config, &mut report, field)?,
                Command::VerifyTheorem1 => search::verify_theorem1(config, &mut report, field)?,
                Command::OrbitEquiv { a, b } => search::orbit_equiv(config, &mut report, field, a, b)?,
                Command::GroupClosure => search::group_closure(config, &mut report, field)?,
                _ => generic(config, &mut report, field)?,
            }
        }
    }
    Ok(report)
}

fn generic<F: Field>(config: &RunConfig, report: &mut Report, field: F) -> Result<(), UsageError> {
    let o = SplitOctonions::new(field);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    match &config.command {
        Command::VerifyAlgebra => algebra::run(&o, report, &mut rng),
        Command::VerifyMorphisms => morphisms::run(&o, report, &mut rng),
        Command::VerifyOperators => {
            let weight = weight(config, o.field(), report)?;
            operators::run_operators(&o, report, &weight)
        }
        Command::VerifyDecompositions => {
            let weight = weight(config, o.field(), report)?;
            operators::run_decompositions(&o, report, &weight)
        }
        other => {
            return Err(UsageError::Invalid(format!(
                "{} needs a prime field with p <= 251, got {}",
                other.name(),
                config.field
            )))
        }
    }
    Ok(())
}

pub(crate) fn catalog(config: &RunConfig) -> Result<String, UsageError> {
    let entries = match config.field {
        FieldTag::Rational => catalog_entries(&catalog_subspaces(&SplitOctonions::new(Rationals))),
        FieldTag::Prime(p) => catalog_entries(&catalog_subspaces(&SplitOctonions::new(PrimeField::new(p)?))),
    };
    let mut json = serde_json::to_string_pretty(&entries).expect("catalog serializes");
    json.push('\n');
    Ok(json)
}

/// Parses `--weight`, which must be nonzero.
fn weight<F: Field>(config: &RunConfig, field: &F, report: &mut Report) -> Result<F::Elem, UsageError> {
    let w = field.parse(&config.weight)?;
    if field.is_zero(&w) {
        return Err(UsageError::Invalid("weight must be nonzero".into()));
    }
    report.param("weight", field.format(&w));
    Ok(w)
}

/// Uniform over a finite field; `n/d` with `|n| <= 9`, `1 <= d <= 5` over Q.
fn random_scalar<F: Field>(f: &F, rng: &mut ChaCha8Rng) -> F::Elem {
    match f.order() {
        Some(q) => f.from_i64(rng.gen_range(0..q) as i64),
        None => {
            let n = f.from_i64(rng.gen_range(-9..=9));
            let d = f.from_i64(rng.gen_range(1..=5));
            f.div(&n, &d).expect("nonzero denominator")
        }
    }
}

fn random_octonion<F: Field>(o: &SplitOctonions<F>, rng: &mut ChaCha8Rng) -> Octonion<F> {
    Octonion::new(std::array::from_fn(|_| random_scalar(o.field(), rng)))
}

/// The `n`-th vector of `F_q^8`, last coordinate fastest.
fn nth_octonion<F: Field>(o: &SplitOctonions<F>, q: u64, mut n: u64) -> Octonion<F> {
    let mut coords: [F::Elem; DIM] = std::array::from_fn(|_| o.field().zero());
    for i in (0..DIM).rev() {
        coords[i] = o.field().from_i64((n % q) as i64);
        n /= q;
    }
    Octonion::new(coords)
}

fn pair_detail<F: Field>(o: &SplitOctonions<F>, x: &Octonion<F>, y: &Octonion<F>) -> serde_json::Value {
    json!({ "x": o.format(x), "y": o.format(y) })
}

/// Proposition 1 tally: among the given `(operator, weight)` pairs that are
/// Rota-Baxter, those with `R(1)` on the unit line must all be splitting.
fn proposition_1<F: Field>(
    o: &SplitOctonions<F>,
    report: &mut Report,
    operators: &[(octorb::linmap::LinearMap<F>, F::Elem)],
) {
    use octorb::rota_baxter::{fixes_unit_line, is_rota_baxter, is_splitting};
    let mut fixing = 0u64;
    let mut offenders = Vec::new();
    for (i, (r, w)) in operators.iter().enumerate() {
        if !is_rota_baxter(o, r, w) || !fixes_unit_line(o, r) {
            continue;
        }
        fixing += 1;
        if !is_splitting(r, w).expect("nonzero weight") {
            offenders.push(i);
        }
    }
    report.check(
        "proposition-1",
        offenders.is_empty(),
        json!({ "operators": operators.len(), "fixing_unit_line": fixing, "non_splitting_among_them": offenders }),
    );
}
