//! Batch verification runs. Each run produces a [`ClaimReport`] tree whose
//! leaves are individual claims with a pass/fail/inconclusive status and the
//! artifacts that back it.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use mukai_core::clifford::Parity;
use mukai_core::forms::{
    count_similarity_classes, construct_with_invariants, diagonalize, local_profile, qs_family, random_form, DiagonalForm,
    Family, Place, TrivialityReading,
};
use mukai_core::quadrics::{check_clifford_against, clifford_quadrics, interpolate_quadrics, recover_quadratic_form};
use mukai_core::variety::{dual_transport_test, enumerate_points, enumerate_points_f2, slice_degree};
use mukai_core::zmodels::{
    build_and_verify_section, certify_emptiness, dimension_audit, f2_max_independent_set, f2_secant_bound_check,
    parse_plane_json, verify_twelve_point_plane, PlaneStatus,
};
use mukai_core::{Field, FieldSpec, PrimeField, Rationals};

pub const SCHEMA_VERSION: &str = "1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("malformed input: {0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] mukai_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use mukai_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Input(_) => 64,
            CliError::Core(
                E::InvalidField(_)
                | E::FieldTooLarge(_)
                | E::Parse(_)
                | E::WrongRank { .. }
                | E::InconsistentInvariants(_)
                | E::DimensionMismatch { .. },
            ) => 64,
            CliError::Core(_) | CliError::Io(_) => 2,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "mukai", version, about = "Exact verification runs over the split spinor tenfold")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Base field: a prime `p`, `p:2` for the quadratic extension, or `Q`.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Seed for every randomized step; required by randomized subcommands.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Trial count (meaning depends on the subcommand).
    #[arg(long, global = true)]
    pub trials: Option<u64>,
    /// Comma-separated primes for the sections of `audit-z-models`
    #[arg(long, global = true, value_delimiter = ',')]
    pub primes: Option<Vec<u64>>,
    /// Write the full JSON report here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Print the full JSON report on standard output.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// Interpolate the quadric ideal and recover the relation among its generators.
    Derive,
    /// Count points of the half-spinor variety over F_2 or F_3 and measure its degree on slices.
    Count {
        #[arg(long, default_value = "even")]
        parity: String,
    },
    /// Emptiness certificates over Z and the dual sections X_5..X_9.
    AuditZModels,
    /// Quadratic form classification.
    Forms {
        #[command(subcommand)]
        action: FormsAction,
    },
    /// The four-independence search over F_2^6 and the F_2 secant bound.
    F2Lemma,
    /// Check a candidate 5-plane meeting the tenfold in twelve rational points.
    VerifyPlane { input: PathBuf },
    /// Tangent hyperplanes of the even tenfold transported to the odd one.
    DualityTest,
    /// Every claim except `verify-plane`.
    All,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "action", rename_all = "kebab-case")]
pub enum FormsAction {
    /// Count similarity classes for `r` real places.
    Classify {
        #[arg(long)]
        family: String,
        #[arg(long)]
        r: usize,
    },
    /// Build a diagonal form with prescribed local invariants.
    Construct {
        #[arg(long)]
        rank: usize,
        #[arg(long, allow_hyphen_values = true)]
        det: String,
        /// Places with Hasse invariant -1, e.g. `2,3` or `3,inf`.
        #[arg(long, value_delimiter = ',')]
        hasse: Vec<String>,
        /// `positive,negative`.
        #[arg(long)]
        signature: String,
    },
    /// The family of rank-10 forms with prescribed finite Hasse sets.
    Family {
        #[arg(long, default_value = "disc")]
        reading: String,
        /// Sets separated by `;`, primes by `,` (`-` for the empty set).
        #[arg(long)]
        sets: Option<String>,
    },
    /// Reciprocity and scaling stability on random forms.
    Properties,
}

impl Command {
    fn randomized(&self) -> bool {
        !matches!(
            self,
            Command::Forms { action: FormsAction::Classify { .. } | FormsAction::Construct { .. } | FormsAction::Family { .. } }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub field: Option<FieldSpec>,
    pub seed: Option<u64>,
    pub trials: Option<u64>,
    pub primes: Option<Vec<u64>>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub json: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig { command, field: None, seed: None, trials: None, primes: None, out: None, jobs: None, json: false }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_field(mut self, field: FieldSpec) -> Self {
        self.field = Some(field);
        self
    }

    pub fn with_trials(mut self, trials: u64) -> Self {
        self.trials = Some(trials);
        self
    }

    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let field = cli.field.as_deref().map(FieldSpec::parse).transpose().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(RunConfig {
            command: cli.command,
            field,
            seed: cli.seed,
            trials: cli.trials,
            primes: cli.primes,
            out: cli.out,
            jobs: cli.jobs,
            json: cli.json,
        })
    }

    fn seed(&self) -> Result<u64, CliError> {
        self.seed.ok_or_else(|| CliError::Usage("--seed is required for randomized subcommands".into()))
    }

    fn prime_field(&self, default: u64) -> Result<PrimeField, CliError> {
        match &self.field {
            None => Ok(PrimeField::new(default)?),
            Some(FieldSpec::Prime { p }) => Ok(PrimeField::new(*p)?),
            Some(other) => Err(CliError::Usage(format!("this subcommand needs a prime field, not {other}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
        }
    }

    fn of(pass: bool) -> Status {
        if pass {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn combine(statuses: impl IntoIterator<Item = Status>) -> Status {
        let mut out = Status::Pass;
        for s in statuses {
            match (out, s) {
                (_, Status::Fail) => out = Status::Fail,
                (Status::Pass, Status::Inconclusive) => out = Status::Inconclusive,
                _ => {}
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub schema_version: String,
    pub claim: String,
    pub status: Status,
    pub artifacts: Value,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sub_claims: Vec<ClaimReport>,
    pub wall_clock_ms: String,
    pub tool_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<Value>,
}

impl ClaimReport {
    fn leaf(claim: &str, status: Status, artifacts: Value, start: Instant) -> Self {
        ClaimReport {
            schema_version: SCHEMA_VERSION.into(),
            claim: claim.into(),
            status,
            artifacts: canonical_json(artifacts),
            sub_claims: Vec::new(),
            wall_clock_ms: start.elapsed().as_millis().to_string(),
            tool_version: TOOL_VERSION.into(),
            config: None,
        }
    }

    fn group(claim: &str, sub_claims: Vec<ClaimReport>, start: Instant) -> Self {
        let status = Status::combine(sub_claims.iter().map(|c| c.status));
        ClaimReport { sub_claims, ..ClaimReport::leaf(claim, status, Value::Null, start) }
    }

    /// Leaf claims in depth-first order.
    pub fn leaves(&self) -> Vec<&ClaimReport> {
        if self.sub_claims.is_empty() {
            vec![self]
        } else {
            self.sub_claims.iter().flat_map(|c| c.leaves()).collect()
        }
    }

    pub fn find(&self, claim: &str) -> Option<&ClaimReport> {
        if self.claim == claim {
            return Some(self);
        }
        self.sub_claims.iter().find_map(|c| c.find(claim))
    }

    /// The report as JSON with every wall-clock field removed.
    pub fn without_timing(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("serializable");
        strip_key(&mut v, "wall_clock_ms");
        v
    }

    /// One line per leaf claim.
    pub fn summary(&self) -> String {
        self.leaves()
            .iter()
            .map(|c| {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Inconclusive => "INCONCLUSIVE",
                };
                format!("{tag:<12} {:<32} {} ms", c.claim, c.wall_clock_ms)
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn strip_key(v: &mut Value, key: &str) {
    match v {
        Value::Object(map) => {
            map.remove(key);
            map.values_mut().for_each(|x| strip_key(x, key));
        }
        Value::Array(items) => items.iter_mut().for_each(|x| strip_key(x, key)),
        _ => {}
    }
}

/// Numbers become decimal strings; wall-clock fields inside artifacts are dropped.
fn canonical_json(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(items) => Value::Array(items.into_iter().map(canonical_json).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().filter(|(k, _)| k != "wall_clock_ms").map(|(k, x)| (k, canonical_json(x))).collect())
        }
        other => other,
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

/// Executes a run. The returned report carries the configuration echo.
pub fn run(config: &RunConfig) -> Result<ClaimReport, CliError> {
    if config.command.randomized() {
        config.seed()?;
    }
    let mut report = match config.jobs {
        Some(0) => return Err(CliError::Usage("--jobs must be positive".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(|| dispatch(config)),
        None => dispatch(config),
    }?;
    let mut echo = to_value(config);
    if let Value::Object(m) = &mut echo {
        m.remove("out");
        m.remove("json");
    }
    report.config = Some(canonical_json(echo));
    Ok(report)
}

fn dispatch(config: &RunConfig) -> Result<ClaimReport, CliError> {
    match &config.command {
        Command::Derive => derive(config),
        Command::Count { parity } => count(config, parity),
        Command::AuditZModels => audit_z_models(config),
        Command::Forms { action } => forms(config, action),
        Command::F2Lemma => f2_lemma(config),
        Command::VerifyPlane { input } => verify_plane(config, input),
        Command::DualityTest => duality(config),
        Command::All => all(config),
    }
}

fn derive(config: &RunConfig) -> Result<ClaimReport, CliError> {
    let start = Instant::now();
    let seed = config.seed()?;
    let budget = config.trials.unwrap_or(200) as usize;
    let mod_field = config.prime_field(2)?;

    let t = Instant::now();
    let mut systems = Vec::new();
    let mut pass = true;
    for parity in [Parity::Even, Parity::Odd] {
        let interpolated = interpolate_quadrics(parity, budget, seed)?;
        let agrees = check_clifford_against(&interpolated).is_ok();
        let mod_rank = interpolated.over(&mod_field).span_rank();
        pass &= agrees && interpolated.quadrics.len() == 10 && mod_rank == 10;
        systems.push(json!({
            "parity": parity.name(),
            "quadric_space_dim": interpolated.quadrics.len(),
            "matches_clifford_span": agrees,
            "reduction_field": mod_field.spec().to_string(),
            "reduction_span_rank": mod_rank,
            "system": interpolated,
        }));
    }
    let derivation = ClaimReport::leaf("quadric-derivation", Status::of(pass), json!({ "systems": systems }), t);

    let t = Instant::now();
    let form = recover_quadratic_form(&clifford_quadrics(Parity::Even).over(&Rationals))?;
    let diagonal = diagonalize(&form.gram)?;
    let profile = local_profile(&diagonal);
    let pass = form.rank() == 10 && profile.disc == BigInt::from(1) && profile.hasse_minus.is_empty();
    let relation = ClaimReport::leaf(
        "distinguished-relation",
        Status::of(pass),
        json!({
            "relation_space_dim": 1,
            "relation": form.relation.iter().map(|c| Rationals.render(c)).collect::<Vec<_>>(),
            "rank": form.rank(),
            "diagonal_form": diagonal,
            "profile": profile,
        }),
        t,
    );
    Ok(ClaimReport::group("derive", vec![derivation, relation], start))
}

fn count(config: &RunConfig, parity: &str) -> Result<ClaimReport, CliError> {
    let start = Instant::now();
    let seed = config.seed()?;
    let parity = match parity {
        "even" | "+" => Parity::Even,
        "odd" | "-" => Parity::Odd,
        other => return Err(CliError::Usage(format!("unknown parity {other:?}"))),
    };
    let f = config.prime_field(2)?;
    let p = f.modulus();
    let sys = clifford_quadrics(parity).over(&f);

    let t = Instant::now();
    let (report, _) = if p == 2 { enumerate_points_f2(&sys, 5)? } else { enumerate_points(&sys, 5)? };
    let expected: u64 = (1..=4).map(|k| 1 + p.pow(k)).product();
    let pass = report.total == expected && report.singular == 0;
    let count_claim = ClaimReport::leaf(
        &format!("sigma-count-f{p}"),
        Status::of(pass),
        json!({ "parity": parity.name(), "expected": expected, "report": report }),
        t,
    );

    let t = Instant::now();
    let wanted = config.trials.unwrap_or(20) as usize;
    let mut multiplicities = Vec::new();
    let mut non_transverse = Vec::new();
    for round in 0..10u64 {
        if multiplicities.len() >= wanted {
            break;
        }
        let r = slice_degree(&sys, seed.wrapping_add(round), wanted)?;
        multiplicities.extend(r.multiplicities);
        non_transverse.extend(r.non_transverse);
    }
    multiplicities.truncate(wanted);
    let status = if multiplicities.len() < wanted {
        Status::Inconclusive
    } else {
        Status::of(multiplicities.iter().all(|&m| m == 12))
    };
    let degree_claim = ClaimReport::leaf(
        &format!("sigma-degree-f{p}"),
        status,
        json!({ "transverse_slices": multiplicities.len(), "multiplicities": multiplicities, "non_transverse_dimensions": non_transverse }),
        t,
    );
    Ok(ClaimReport::group("count", vec![count_claim, degree_claim], start))
}

fn audit_z_models(config: &RunConfig) -> Result<ClaimReport, CliError> {
    let start = Instant::now();
    let seed = config.seed()?;
    let primes = config.primes.clone().unwrap_or_else(|| vec![2, 3, 5, 7]);
    let attempts = config.trials.unwrap_or(400) as usize;
    let mut claims = Vec::new();
    for i in 1..=5 {
        let t = Instant::now();
        let r = certify_emptiness(i)?;
        claims.push(ClaimReport::leaf(&format!("z-model-emptiness-v{i}"), Status::of(r.pass), to_value(&r), t));
    }
    let jobs: Vec<(usize, u64)> = (1..=5).flat_map(|i| primes.iter().map(move |&p| (i, p))).collect();
    let sections = jobs
        .par_iter()
        .map(|&(i, p)| {
            let t = Instant::now();
            build_and_verify_section(i, p, seed.wrapping_add(i as u64 * 1000 + p), attempts).map(|r| (r, t.elapsed().as_millis()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    for i in 1..=5usize {
        let reports: Vec<_> = sections.iter().filter(|(r, _)| r.index == i).collect();
        let pass = reports.iter().all(|(r, _)| r.pass);
        let ms: u128 = reports.iter().map(|(_, ms)| ms).sum();
        let sections: Vec<_> = reports.into_iter().map(|(r, _)| r).collect();
        let mut claim = ClaimReport::leaf(&format!("z-model-X{}", 10 - i), Status::of(pass), json!({ "sections": sections }), Instant::now());
        claim.wall_clock_ms = ms.to_string();
        claims.push(claim);
    }
    let t = Instant::now();
    let audit = dimension_audit();
    let pass = audit.consistent && audit.spin_below_grassmannian;
    claims.push(ClaimReport::leaf("dimension-audit", Status::of(pass), to_value(&audit), t));
    Ok(ClaimReport::group("audit-z-models", claims, start))
}

fn default_qs_sets() -> Vec<BTreeSet<u64>> {
    [&[][..], &[2, 3], &[2, 5], &[3, 5], &[2, 7], &[3, 7], &[5, 7], &[2, 3, 5, 7], &[11, 13], &[2, 11]]
        .iter()
        .map(|s| s.iter().copied().collect())
        .collect()
}

fn parse_sets(s: &str) -> Result<Vec<BTreeSet<u64>>, CliError> {
    s.split(';')
        .map(|part| {
            let part = part.trim();
            if part == "-" || part.is_empty() {
                return Ok(BTreeSet::new());
            }
            part.split(',')
                .map(|x| x.trim().parse::<u64>().map_err(|_| CliError::Usage(format!("bad prime {x:?}"))))
                .collect()
        })
        .collect()
}

fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    mukai_core::field::parse_rational(s).map_err(|e| CliError::Usage(e.to_string()))
}

fn classify_claim(family: Family, rs: &[usize]) -> Result<ClaimReport, CliError> {
    let t = Instant::now();
    let counts = rs.iter().map(|&r| count_similarity_classes(family, r)).collect::<Result<Vec<_>, _>>()?;
    let pass = counts.iter().all(|c| c.orbits == 1u64 << c.r && c.representatives_pairwise_non_similar.unwrap_or(true));
    let id = match family {
        Family::TenfoldO1 => "tenfold-2r",
        Family::Ninefold => "ninefold-2r",
    };
    Ok(ClaimReport::leaf(id, Status::of(pass), json!({ "counts": counts }), t))
}

fn family_claim(sets: &[BTreeSet<u64>], reading: TrivialityReading) -> Result<ClaimReport, CliError> {
    let t = Instant::now();
    let r = qs_family(sets, reading)?;
    Ok(ClaimReport::leaf("qs-family-infinite", Status::of(r.pairwise_non_similar), to_value(&r), t))
}

fn properties_claim(seed: u64, trials: u64) -> Result<ClaimReport, CliError> {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reciprocity_failures = Vec::new();
    for _ in 0..trials {
        let rank = rng.gen_range(1..=10);
        let f = random_form(rank, 60, &mut rng);
        if local_profile(&f).hasse_minus.len() % 2 == 1 {
            reciprocity_failures.push(f);
        }
    }
    let mut scaling_failures = Vec::new();
    let scaling_trials = 500;
    for _ in 0..scaling_trials {
        let base = random_form(9, 60, &mut rng);
        let last = BigRational::from_integer(-base.det_class());
        let mut entries: Vec<BigRational> = base.entries().iter().map(|e| BigRational::from_integer(e.clone())).collect();
        entries.push(last);
        let f = DiagonalForm::new(&entries)?;
        let c = loop {
            let c = rng.gen_range(-500i64..=500);
            if c != 0 {
                break BigRational::from_integer(BigInt::from(c));
            }
        };
        let g = f.scaled(&c)?;
        if local_profile(&f).hasse_minus != local_profile(&g).hasse_minus {
            scaling_failures.push((f, c.to_string()));
        }
    }
    let pass = reciprocity_failures.is_empty() && scaling_failures.is_empty();
    Ok(ClaimReport::leaf(
        "forms-local-global",
        Status::of(pass),
        json!({
            "reciprocity_trials": trials,
            "reciprocity_failures": reciprocity_failures,
            "scaling_trials": scaling_trials,
            "scaling_failures": scaling_failures,
        }),
        t,
    ))
}

fn forms(config: &RunConfig, action: &FormsAction) -> Result<ClaimReport, CliError> {
    let start = Instant::now();
    let claim = match action {
        FormsAction::Classify { family, r } => classify_claim(Family::parse(family)?, &[*r])?,
        FormsAction::Construct { rank, det, hasse, signature } => {
            let t = Instant::now();
            let det = parse_rational(det)?;
            if !det.is_integer() {
                return Err(CliError::Usage("det must be a squarefree integer class".into()));
            }
            let places: BTreeSet<Place> = hasse.iter().map(|s| Place::parse(s)).collect::<Result<_, _>>()?;
            let (sp, sm) = signature
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                .ok_or_else(|| CliError::Usage(format!("signature {signature:?} is not `positive,negative`")))?;
            let form = construct_with_invariants(*rank, det.numer(), &places, (sp, sm))?;
            let profile = local_profile(&form);
            let pass = profile.hasse_minus == places && profile.signature == (sp, sm) && profile.rank == *rank;
            ClaimReport::leaf("forms-construct", Status::of(pass), json!({ "form": form, "profile": profile }), t)
        }
        FormsAction::Family { reading, sets } => {
            let reading = match reading.as_str() {
                "disc" => TrivialityReading::Disc,
                "det" => TrivialityReading::Det,
                other => return Err(CliError::Usage(format!("unknown reading {other:?}"))),
            };
            let sets = sets.as_deref().map(parse_sets).transpose()?.unwrap_or_else(default_qs_sets);
            family_claim(&sets, reading)?
        }
        FormsAction::Properties => properties_claim(config.seed()?, config.trials.unwrap_or(200))?,
    };
    Ok(ClaimReport::group("forms", vec![claim], start))
}

fn f2_lemma(config: &RunConfig) -> Result<ClaimReport, CliError> {
    let start = Instant::now();
    let seed = config.seed()?;
    let t = Instant::now();
    let r = f2_max_independent_set();
    let pass = r.maximum == 8 && r.witness_verified && r.stats.deepest_dead_end == 8;
    let lemma = ClaimReport::leaf("f2-lemma-8", Status::of(pass), to_value(&r), t);
    let t = Instant::now();
    let trials = config.trials.unwrap_or(10_000);
    let s = f2_secant_bound_check(trials, 200, seed)?;
    let status = if s.zero_dimensional == 0 { Status::Inconclusive } else { Status::of(s.pass) };
    let secant = ClaimReport::leaf("f2-secant-bound", status, to_value(&s), t);
    Ok(ClaimReport::group("f2-lemma", vec![lemma, secant], start))
}

fn verify_plane(config: &RunConfig, input: &PathBuf) -> Result<ClaimReport, CliError> {
    let start = Instant::now();
    let seed = config.seed()?;
    let text = std::fs::read_to_string(input).map_err(|e| CliError::Input(format!("{}: {e}", input.display())))?;
    let basis = parse_plane_json(&text).map_err(|e| CliError::Input(e.to_string()))?;
    if basis.len() != 6 || basis.iter().any(|r| r.len() != 16) {
        return Err(CliError::Input("expected 6 rows of 16 entries".into()));
    }
    let report = verify_twelve_point_plane(&basis, seed).map_err(|e| match e {
        mukai_core::Error::Degenerate(m) => CliError::Input(m),
        other => CliError::Core(other),
    })?;
    let status = Status::of(report.status == PlaneStatus::Pass);
    Ok(ClaimReport::group(
        "verify-plane",
        vec![ClaimReport::leaf("twelve-point-plane", status, to_value(&report), start)],
        start,
    ))
}

fn duality(config: &RunConfig) -> Result<ClaimReport, CliError> {
    let start = Instant::now();
    let seed = config.seed()?;
    let p = config.prime_field(101)?.modulus();
    let trials = config.trials.unwrap_or(100) as usize;
    let r = dual_transport_test(seed, trials, p)?;
    Ok(ClaimReport::group(
        "duality-test",
        vec![ClaimReport::leaf("spinor-duality", Status::of(r.all_pass()), to_value(&r), start)],
        start,
    ))
}

fn all(config: &RunConfig) -> Result<ClaimReport, CliError> {
    let start = Instant::now();
    let seed = config.seed()?;
    let sub = |command: Command, field: Option<u64>| {
        let mut c = RunConfig::new(command).with_seed(seed);
        c.field = field.map(|p| FieldSpec::Prime { p });
        c
    };
    let mut groups = vec![
        dispatch(&sub(Command::Derive, None))?,
        dispatch(&sub(Command::Count { parity: "even".into() }, Some(2)))?,
        dispatch(&sub(Command::Count { parity: "even".into() }, Some(3)))?,
        dispatch(&sub(Command::AuditZModels, None))?,
    ];
    let t = Instant::now();
    let ranks: Vec<usize> = (1..=10).collect();
    groups.push(ClaimReport::group(
        "forms",
        vec![
            classify_claim(Family::TenfoldO1, &ranks)?,
            classify_claim(Family::Ninefold, &ranks)?,
            family_claim(&default_qs_sets(), TrivialityReading::Disc)?,
            properties_claim(seed, 200)?,
        ],
        t,
    ));
    groups.push(dispatch(&sub(Command::F2Lemma, None))?);
    groups.push(dispatch(&sub(Command::DualityTest, None))?);
    Ok(ClaimReport::group("all", groups, start))
}
