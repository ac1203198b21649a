//! Command-line front end: argument parsing, the six commands, and report
//! serialization. Every command returns a [`Report`]; the binary maps the
//! outcome to an exit code.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::Qci;
use crate::certificates::{
    build_w, membership_full, membership_two_sided, sample_open_sets, sample_tuple, sigma_power_vanishes,
    symmetric_sum_vanishes, tuple_strings,
};
use crate::algebra::distinguished_tuple;
use crate::error::{Error, Result};
use crate::modules::{
    chain_composes_to_w, f_maps, ghost_chain_witness, periodicity_diagrams_check, CyclicQuotient, FdModule, ModuleDoc,
    StableHomTest,
};
use crate::linalg::Matrix;
use crate::par;
use crate::scalars::{Field, FieldSpec, Scalar};
use crate::towers::{chain_steps, restrict, upper_bound_report, verify_freeness, SubalgebraInclusion, FULL_END_MAX_DIM};

pub const SCHEMA_VERSION: u32 = 1;

/// Cap on the number of tuples run through the costlier diagram checks.
const DIAGRAM_SAMPLES: usize = 5;

#[derive(Parser, Debug)]
#[command(name = "qci", version, about = "Exact checks for quantum complete intersections")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Identities for σ_α, the open-set implications and the factoring diagrams.
    VerifyLemmas(Common),
    /// Sample α and test w_α ∉ σΛ + Λσ against the λ-coefficient certificate.
    SweepMembership(Common),
    /// Run the ghost-chain witness for a module.
    Ghost(GhostArgs),
    /// Global dimension of the endomorphism algebra of the tensor generator.
    Upper(UpperArgs),
    /// Freeness of every step in the subalgebra tower.
    Tower(Common),
    /// Exact rows, commuting squares and Ω-isomorphisms of the periodicity diagrams.
    Periodicity(Common),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Codimension.
    #[arg(long)]
    pub n: Option<usize>,
    /// Common exponent; commutators default to a primitive a-th root of unity.
    #[arg(long)]
    pub a: Option<u32>,
    /// Exponent list, e.g. 2,3,2,3 (tower only).
    #[arg(long, value_delimiter = ',')]
    pub exponents: Option<Vec<u32>>,
    /// Upper-triangular commutators q12,q13,...; seeded random nonzero if omitted.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub commutators: Option<Vec<String>>,
    /// p:<prime> or cyclo:<order>; defaults to cyclo:<a>.
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, env = "QCI_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct GhostArgs {
    #[command(flatten)]
    pub common: Common,
    /// Syzygy window j0,j1.
    #[arg(long, default_value = "-2,2", allow_hyphen_values = true)]
    pub window: String,
    /// simple, cyclic (Λ/(σ_β) for a sampled β) or a path to a module JSON file.
    #[arg(long, default_value = "simple")]
    pub module: String,
}

#[derive(Args, Debug, Clone)]
pub struct UpperArgs {
    #[command(flatten)]
    pub common: Common,
    /// Largest full End algebra whose global dimension is also computed.
    #[arg(long, default_value_t = FULL_END_MAX_DIM)]
    pub full_end_max_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub statement: String,
    pub instances: usize,
    pub failures: usize,
    pub passed: bool,
}

impl Check {
    fn new(id: &str, statement: &str, instances: usize, failures: usize) -> Check {
        Check { id: id.into(), statement: statement.into(), instances, failures, passed: failures == 0 }
    }

    fn flag(id: &str, statement: &str, ok: bool) -> Check {
        Check::new(id, statement, 1, usize::from(!ok))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub seed: u64,
    pub field: String,
    pub params: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub data: Value,
    pub passed: bool,
}

impl Report {
    fn new(command: &str, c: &Common, field: &Field, params: BTreeMap<String, Value>, checks: Vec<Check>, data: Value) -> Report {
        let passed = checks.iter().all(|ch| ch.passed);
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            seed: c.seed,
            field: field.spec().to_string(),
            params,
            checks,
            data,
            passed,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    /// One row per check, preceded by a header carrying the schema version.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(["schema_version", "command", "seed", "field", "id", "instances", "failures", "passed"])
            .map_err(err)?;
        for ch in &self.checks {
            w.write_record([
                self.schema_version.to_string(),
                self.command.clone(),
                self.seed.to_string(),
                self.field.clone(),
                ch.id.clone(),
                ch.instances.to_string(),
                ch.failures.to_string(),
                ch.passed.to_string(),
            ])
            .map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }
}

fn field_of(c: &Common) -> Result<Field> {
    let spec = match &c.field {
        Some(s) => s.parse::<FieldSpec>()?,
        None => FieldSpec::Cyclotomic(c.a.or_else(|| c.exponents.as_ref().and_then(|e| e.first().copied())).unwrap_or(2)),
    };
    Field::new(spec)
}

fn homogeneous(c: &Common, field: &Field) -> Result<Qci> {
    let n = c.n.ok_or_else(|| Error::Config("--n is required".into()))?;
    let a = c.a.ok_or_else(|| Error::Config("--a is required".into()))?;
    if n == 0 {
        return Err(Error::Config("--n must be at least 1".into()));
    }
    if a < 2 {
        return Err(Error::Config("--a must be at least 2".into()));
    }
    Qci::homogeneous(field, n, a)
}

fn base_params(c: &Common) -> BTreeMap<String, Value> {
    let mut p = BTreeMap::new();
    p.insert("n".into(), json!(c.n));
    p.insert("a".into(), json!(c.a));
    p.insert("trials".into(), json!(c.trials));
    p
}

fn rng_of(c: &Common) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(c.seed)
}

fn sample_nonzero_sigma(field: &Field, n: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    loop {
        let t = sample_tuple(field, n, rng);
        if t.iter().any(|x| !x.is_zero()) {
            return t;
        }
    }
}

fn sample_leading_nonzero(field: &Field, n: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    loop {
        let t = sample_tuple(field, n, rng);
        if !t[0].is_zero() {
            return t;
        }
    }
}

fn count_failures(results: Vec<Result<bool>>) -> Result<usize> {
    let mut f = 0;
    for r in results {
        if !r? {
            f += 1;
        }
    }
    Ok(f)
}

pub fn verify_lemmas(c: &Common) -> Result<Report> {
    let field = field_of(c)?;
    let alg = homogeneous(c, &field)?;
    let n = alg.n();
    let mut rng = rng_of(c);
    let alphas: Vec<Vec<Scalar>> = (0..c.trials).map(|_| sample_tuple(&field, n, &mut rng)).collect();
    let mut checks = Vec::new();
    let f1 = count_failures(par::map(&alphas, |a| sigma_power_vanishes(&alg, a)))?;
    checks.push(Check::new("lincomb-i", "sigma^a = 0", alphas.len(), f1));
    let f2 = count_failures(par::map(&alphas, |a| {
        for i in 0..n {
            if !symmetric_sum_vanishes(&alg, a, i)? {
                return Ok(false);
            }
        }
        Ok(true)
    }))?;
    checks.push(Check::new("lincomb-ii", "sum_j sigma^j x_i sigma^(a-1-j) = 0 for all i", alphas.len(), f2));

    // Open-set implications on the simple module and a cyclic quotient.
    let beta = sample_nonzero_sigma(&field, n, &mut rng);
    let simple = FdModule::new(&alg, vec![Matrix::zeros(&field, 1, 1); n])?;
    let cyclic = CyclicQuotient::new(&alg.sigma(&beta)?)?.module().clone();
    let mut open = Vec::new();
    for (name, m) in [("simple", &simple), ("cyclic", &cyclic)] {
        let s = sample_open_sets(&alg, m, c.trials, &mut rng)?;
        let generic = s.samples.iter().filter(|r| r.implications_hold.is_some()).count();
        checks.push(Check::new(
            &format!("openset-{name}"),
            "kernel implications hold on rank-generic tuples",
            generic,
            s.implication_failures,
        ));
        open.push(json!({
            "module": name,
            "module_dim": m.dim(),
            "density_u": s.density(|r| r.in_u1 && r.in_u2),
            "generic_rank_sigma": s.generic_rank_sigma,
            "generic_rank_sigma_pow": s.generic_rank_sigma_pow,
        }));
    }

    let diag: Vec<Vec<Scalar>> = (0..c.trials.min(DIAGRAM_SAMPLES)).map(|_| sample_nonzero_sigma(&field, n, &mut rng)).collect();
    let jobs: Vec<(usize, usize)> = (0..diag.len()).flat_map(|k| (1..=n).map(move |p| (k, p))).collect();
    let fd = count_failures(par::map(&jobs, |&(k, p)| periodicity_diagrams_check(&alg, &diag[k], p).map(|r| r.passed())))?;
    checks.push(Check::new("factoring-diagrams", "exact rows, commuting squares, Omega-isomorphisms", jobs.len(), fd));
    if n % 2 == 0 {
        let fc = count_failures(par::map(&diag, |a| chain_composes_to_w(&alg, a)))?;
        checks.push(Check::new("chain-composition", "f_{n-1} ... f_1 = right multiplication by w", diag.len(), fc));
    }
    Ok(Report::new("verify-lemmas", c, &field, base_params(c), checks, json!({ "open_sets": open })))
}

#[derive(Serialize)]
struct SweepRow {
    alpha: Vec<String>,
    member: bool,
    lambda_coefficient: Option<String>,
    stably_zero: bool,
    member_full: Option<bool>,
}

/// Largest algebra on which the ungraded membership test is also run.
const FULL_MEMBERSHIP_MAX_DIM: usize = 64;

pub fn sweep_membership(c: &Common) -> Result<Report> {
    let field = field_of(c)?;
    let alg = homogeneous(c, &field)?;
    let n = alg.n();
    if n % 2 == 1 {
        return Err(Error::OddCodimension(n));
    }
    let mut rng = rng_of(c);
    let alphas: Vec<Vec<Scalar>> = (0..c.trials).map(|_| sample_leading_nonzero(&field, n, &mut rng)).collect();
    let rows: Vec<Result<SweepRow>> = par::map(&alphas, |alpha| sweep_row(&alg, alpha));
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;

    let certified = rows.iter().filter(|r| r.lambda_coefficient.as_deref().is_some_and(|s| s != "0")).count();
    let cert_fail = rows.iter().filter(|r| r.lambda_coefficient.as_deref().is_some_and(|s| s != "0") && r.member).count();
    let stable_fail = rows.iter().filter(|r| r.stably_zero != r.member).count();
    let full_rows: Vec<&SweepRow> = rows.iter().filter(|r| r.member_full.is_some()).collect();
    let full_fail = full_rows.iter().filter(|r| r.member_full != Some(r.member)).count();

    let units: Vec<Scalar> = match field.spec() {
        FieldSpec::Prime(p) => (1..p.min(64) as i64).map(|v| field.from_i64(v)).collect(),
        FieldSpec::Cyclotomic(_) => (1..=3).map(|v| field.from_i64(v)).collect(),
    };
    let dist: Vec<Result<bool>> = par::map(&units, |a1| {
        let t = distinguished_tuple(&field, n, a1);
        let w = build_w(&alg, &t)?;
        Ok(!membership_two_sided(&alg, &t, &w)?.member)
    });
    let dist_fail = count_failures(dist)?;

    let in_v = rows.iter().filter(|r| !r.member).count();
    let checks = vec![
        Check::new("infinitefieldeven-certificate", "nonzero lambda-coefficient implies w not in sigma L + L sigma", certified, cert_fail),
        Check::new("infinitefieldeven-distinguished", "distinguished tuples lie in V", units.len(), dist_fail),
        Check::new("factoring-stable-zero", "w map stably zero iff w in sigma L + L sigma", rows.len(), stable_fail),
        Check::new("degree-restriction", "single-degree membership equals full membership", full_rows.len(), full_fail),
    ];
    let data = json!({
        "density_v": if rows.is_empty() { 0.0 } else { in_v as f64 / rows.len() as f64 },
        "certified": certified,
        "samples": rows,
    });
    Ok(Report::new("sweep-membership", c, &field, base_params(c), checks, data))
}

fn sweep_row(alg: &Qci, alpha: &[Scalar]) -> Result<SweepRow> {
    let w = build_w(alg, alpha)?;
    let rep = membership_two_sided(alg, alpha, &w)?;
    let chain = f_maps(alg, alpha)?;
    let map = chain.w_map(&w)?;
    let stably_zero = StableHomTest::new(map.source(), map.target())?.is_stably_zero(&map)?;
    let member_full = if alg.dim() <= FULL_MEMBERSHIP_MAX_DIM { Some(membership_full(alg, alpha, &w)?) } else { None };
    Ok(SweepRow { alpha: rep.alpha, member: rep.member, lambda_coefficient: rep.lambda_coefficient, stably_zero, member_full })
}

fn parse_window(s: &str) -> Result<(i32, i32)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b] = parts.as_slice() else {
        return Err(Error::Config(format!("window must be j0,j1, got {s}")));
    };
    let p = |x: &str| x.parse::<i32>().map_err(|_| Error::Config(format!("bad window bound {x}")));
    let w = (p(a)?, p(b)?);
    if w.0 > w.1 {
        return Err(Error::WindowEmpty);
    }
    Ok(w)
}

pub fn ghost(g: &GhostArgs) -> Result<Report> {
    let c = &g.common;
    let field = field_of(c)?;
    let alg = homogeneous(c, &field)?;
    let n = alg.n();
    let window = parse_window(&g.window)?;
    let mut rng = rng_of(c);
    let (label, m) = match g.module.as_str() {
        "simple" => ("simple".to_string(), FdModule::new(&alg, vec![Matrix::zeros(&field, 1, 1); n])?),
        "cyclic" => {
            let beta = sample_nonzero_sigma(&field, n, &mut rng);
            (format!("cyclic:{}", tuple_strings(&beta).join(",")), CyclicQuotient::new(&alg.sigma(&beta)?)?.module().clone())
        }
        path => {
            let text = std::fs::read_to_string(path)?;
            let doc: ModuleDoc = serde_json::from_str(&text)?;
            ("file".to_string(), FdModule::from_doc_over(&alg, &doc)?)
        }
    };
    let sample = sample_open_sets(&alg, &m, c.trials.max(1), &mut rng)?;
    let pick = sample.samples.iter().find(|r| {
        r.in_u1 && r.in_u2 && r.in_v != Some(false) && r.implications_hold != Some(false) && r.alpha[0] != "0"
    });
    let mut params = base_params(c);
    params.insert("window".into(), json!([window.0, window.1]));
    params.insert("module".into(), json!(label));
    let densities = json!({
        "density_u": sample.density(|r| r.in_u1 && r.in_u2),
        "density_v": sample.density(|r| r.in_v == Some(true)),
    });
    let Some(pick) = pick else {
        let checks = vec![Check::flag("alpha-found", "a tuple in U_M and V was sampled", false)];
        return Ok(Report::new("ghost", c, &field, params, checks, json!({ "densities": densities })));
    };
    let alpha = pick.alpha.iter().map(|s| field.parse_scalar(s)).collect::<Result<Vec<_>>>()?;
    let r = ghost_chain_witness(&alg, &alpha, &m, window)?;
    let failed_steps = r.steps.iter().filter(|s| !s.all_stably_zero).count();
    let checks = vec![
        Check::flag("alpha-found", "a tuple in U_M and V was sampled", true),
        Check::new("factoring-ghost", "each f_i followed by any map to a syzygy shift is stably zero", r.steps.len(), failed_steps),
        Check::flag("chain-nonzero", "the chain composition is stably nonzero", r.composition_stably_nonzero),
    ];
    let data = json!({ "densities": densities, "witness": r, "lower_bound": r.lower_bound });
    Ok(Report::new("ghost", c, &field, params, checks, data))
}

pub fn upper(u: &UpperArgs) -> Result<Report> {
    let c = &u.common;
    let field = field_of(c)?;
    let n = c.n.ok_or_else(|| Error::Config("--n is required".into()))?;
    let a = c.a.ok_or_else(|| Error::Config("--a is required".into()))?;
    if n == 0 || a < 2 {
        return Err(Error::Config("need n >= 1 and a >= 2".into()));
    }
    let r = upper_bound_report(&field, n, a, u.full_end_max_dim)?;
    let upper = match r.gldim_full {
        Some(d) if d.is_exact() => d.value().min(2 * n),
        _ => 2 * n,
    };
    let checks = vec![
        Check::flag("upperbound-gldim", "graded End has global dimension at most 2n", r.gldim.is_exact() && r.gldim.value() <= r.bound_2n),
        Check::flag("upperbound-simples", "simple End-modules are one-dimensional", r.simples_one_dimensional),
        Check::flag("upperbound-summand", "the regular module is a split summand", r.regular_summand_splits),
    ];
    let mut params = base_params(c);
    params.insert("full_end_max_dim".into(), json!(u.full_end_max_dim));
    params.remove("trials");
    let data = json!({ "report": r, "repdim_bracket": [n + 1, upper] });
    Ok(Report::new("upper", c, &field, params, checks, data))
}

fn tower_presentation(c: &Common, field: &Field) -> Result<Qci> {
    let exps = match (&c.exponents, c.n, c.a) {
        (Some(e), _, _) => e.clone(),
        (None, Some(n), Some(a)) if n > 0 => vec![a; n],
        _ => return Err(Error::Config("--exponents or both --n and --a are required".into())),
    };
    let m = exps.len() * exps.len().saturating_sub(1) / 2;
    let comms = match &c.commutators {
        Some(list) => list.iter().map(|s| field.parse_scalar(s)).collect::<Result<Vec<_>>>()?,
        None => {
            let mut rng = rng_of(c);
            (0..m).map(|_| field.sample_nonzero(&mut rng, crate::certificates::SAMPLE_BOUND)).collect()
        }
    };
    Qci::new(field, exps, comms)
}

pub fn tower(c: &Common) -> Result<Report> {
    let field = field_of(c)?;
    let alg = tower_presentation(c, &field)?;
    let steps = chain_steps(alg.n());
    let results = par::map(&steps, |(s, l)| verify_freeness(&alg, s, l));
    let results = results.into_iter().collect::<Result<Vec<_>>>()?;
    let bad_rank = results.iter().filter(|r| !r.free || r.rank != alg.exponents()[r.added] as usize).count();
    let subsets: Vec<Vec<usize>> = (1u32..(1 << alg.n())).map(|mask| (0..alg.n()).filter(|&i| mask & (1 << i) != 0).collect()).collect();
    let incs = subsets.iter().map(|s| SubalgebraInclusion::new(&alg, s)).collect::<Result<Vec<_>>>()?;
    let retract_fail = incs.iter().filter(|i| !(i.retraction_is_left_inverse() && i.inclusion_is_multiplicative())).count();
    let regular = FdModule::regular(&alg);
    let restrict_fail = incs
        .iter()
        .map(|i| restrict(&regular, i).map(|r| r.satisfies_relations()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|ok| !ok)
        .count();
    let checks = vec![
        Check::new("chain-freeness", "each step is free of rank a_t over the smaller subalgebra", results.len(), bad_rank),
        Check::new("subalgebra-retraction", "retraction after inclusion is the identity", incs.len(), retract_fail),
        Check::new("subalgebra-restriction", "restricted modules satisfy the subalgebra relations", incs.len(), restrict_fail),
    ];
    let mut params = base_params(c);
    params.insert("exponents".into(), json!(alg.exponents()));
    params.insert("commutators".into(), json!(tuple_strings(alg.commutators())));
    params.remove("trials");
    Ok(Report::new("tower", c, &field, params, checks, json!({ "steps": results })))
}

pub fn periodicity(c: &Common) -> Result<Report> {
    let field = field_of(c)?;
    let alg = homogeneous(c, &field)?;
    let n = alg.n();
    let mut rng = rng_of(c);
    let alphas: Vec<Vec<Scalar>> = (0..c.trials).map(|_| sample_nonzero_sigma(&field, n, &mut rng)).collect();
    let jobs: Vec<(usize, usize)> = (0..alphas.len()).flat_map(|k| (1..=n).map(move |p| (k, p))).collect();
    let reports = par::map(&jobs, |&(k, p)| periodicity_diagrams_check(&alg, &alphas[k], p));
    let reports = reports.into_iter().collect::<Result<Vec<_>>>()?;
    let fail = |f: fn(&crate::modules::PeriodicityReport) -> bool| reports.iter().filter(|r| !f(r)).count();
    let checks = vec![
        Check::new("factoring-rows", "rows are exact", jobs.len(), fail(|r| r.rows_exact)),
        Check::new("factoring-squares", "squares commute", jobs.len(), fail(|r| r.squares_commute)),
        Check::new("factoring-omega", "rows realize the Omega-isomorphisms", jobs.len(), fail(|r| r.omega_isomorphisms)),
        Check::new("factoring-dimensions", "quotient dimensions are complementary", jobs.len(), fail(|r| r.dimensions_complementary)),
    ];
    let rows: Vec<Value> = jobs
        .iter()
        .zip(&reports)
        .map(|(&(k, p), r)| json!({ "alpha": tuple_strings(&alphas[k]), "p": p, "passed": r.passed() }))
        .collect();
    Ok(Report::new("periodicity", c, &field, base_params(c), checks, json!({ "instances": rows })))
}

fn common_of(cmd: &Command) -> &Common {
    match cmd {
        Command::VerifyLemmas(c) | Command::SweepMembership(c) | Command::Tower(c) | Command::Periodicity(c) => c,
        Command::Ghost(g) => &g.common,
        Command::Upper(u) => &u.common,
    }
}

pub fn execute(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::VerifyLemmas(c) => verify_lemmas(c),
        Command::SweepMembership(c) => sweep_membership(c),
        Command::Ghost(g) => ghost(g),
        Command::Upper(u) => upper(u),
        Command::Tower(c) => tower(c),
        Command::Periodicity(c) => periodicity(c),
    }
}

/// Runs a parsed command, writes the report and returns the exit code:
/// 0 when every check passed, 1 when a check failed, 2 on input errors.
pub fn run(cli: &Cli) -> i32 {
    let c = common_of(&cli.command);
    let report = match execute(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let text = match c.format {
        Format::Json => report.to_json(),
        Format::Csv => match report.to_csv() {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: {e}");
                return 2;
            }
        },
    };
    let written = match &c.output {
        Some(path) => std::fs::write(path, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 2;
    }
    if report.passed {
        0
    } else {
        1
    }
}
