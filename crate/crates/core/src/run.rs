//! Run configurations and the end-to-end pipeline behind `branch run`.

use crate::catalog::{lookup, CatalogFlags};
use crate::embedding::{
    check_commutator_vanishing, check_quasi_abelian, check_weakly_compatible, convexity_certificate,
    has_abelian_nilradical, parabolic_from_h, quasi_abelian_transfer_check, refine_parabolic, rho_positivity_check,
    ConvexityCertificate, EmbeddingError, K1Data, ParabolicDatum, QuasiAbelian, ReductivePair, RhoPositivity,
    ThetaData, TransferVerdict, WeakCompatibility,
};
use crate::pi::{pi_degree_report, PiReport};
use crate::rational::{format_q, rats_to_q, serialize_opt_q, Rat, Q};
use crate::root_system::{RootError, RootSystem, Weight};
use crate::verma::{
    branch, cohomological_transfer_report, compare_with_oracle, comparison_level, hom_space_report, level_cap,
    Assertions, BranchingTable, Depth, HomReport, OracleDiscrepancy, Side, TransferReport, VermaDescriptor,
    VermaError,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub const SCHEMA_VERSION: u32 = 1;
/// Largest depth at which the oracle runs unless asked explicitly.
pub const ORACLE_DEFAULT_DEPTH: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RunError {
    #[error("config error at `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error("refused: {0}")]
    Refusal(String),
    #[error("{0}")]
    OracleMismatch(String),
    #[error("io error: {0}")]
    Io(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Io(_) => 1,
            RunError::Schema { .. } => 2,
            RunError::Refusal(_) => 3,
            RunError::OracleMismatch(_) => 4,
        }
    }

    fn schema(path: &str, message: impl ToString) -> Self {
        RunError::Schema { path: path.to_string(), message: message.to_string() }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum PairSpec {
    Catalog(String),
    Inline(InlinePair),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InlinePair {
    pub name: Option<String>,
    pub g: String,
    pub g_prime: String,
    /// Row `i` is the restriction of the `i`-th coordinate of `t*`.
    pub restriction: Vec<Vec<Rat>>,
    pub theta: Option<InlineTheta>,
    pub k1: Option<InlineK1>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InlineTheta {
    pub compact_roots: Vec<Weight>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InlineK1 {
    #[serde(default)]
    pub roots: Vec<Weight>,
    pub projection: Vec<Vec<Rat>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum HSpec {
    Keyword(String),
    Values(Vec<Rat>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FBasis {
    /// Values `⟨λ, α_i∨⟩` on the simple coroots of `g`.
    #[default]
    Fundamental,
    /// Ambient coordinates of `g`.
    Simple,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DepthSpec {
    pub max_degree: u32,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    pub json: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    #[serde(default = "yes")]
    pub text: bool,
}

impl Default for Outputs {
    fn default() -> Self {
        Outputs { json: None, csv: None, text: true }
    }
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssertionSpec {
    pub theta_stable: Option<bool>,
    pub transitivity_asserted: Option<bool>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSpec {
    pub enabled: Option<bool>,
    pub max_level: Option<Rat>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub pair: PairSpec,
    pub h: Option<HSpec>,
    #[serde(default)]
    pub levi_refinement: Vec<Weight>,
    pub f_hw: Weight,
    #[serde(default)]
    pub f_basis: FBasis,
    pub depth: DepthSpec,
    #[serde(default)]
    pub outputs: Outputs,
    #[serde(default)]
    pub assertions: AssertionSpec,
    #[serde(default)]
    pub oracle: OracleSpec,
    #[serde(default)]
    pub seed: u64,
    /// User assertion that the multiplicity pattern has stabilized.
    #[serde(default)]
    pub stabilization: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfigFormat {
    Toml,
    Json,
}

impl ConfigFormat {
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => ConfigFormat::Json,
            _ => ConfigFormat::Toml,
        }
    }
}

pub fn parse_config(text: &str, format: ConfigFormat) -> Result<RunConfig, RunError> {
    match format {
        ConfigFormat::Json => {
            let de = &mut serde_json::Deserializer::from_str(text);
            serde_path_to_error::deserialize(de).map_err(|e| {
                let path = e.path().to_string();
                RunError::schema(&path, e.into_inner())
            })
        }
        ConfigFormat::Toml => {
            let de = toml::de::Deserializer::parse(text).map_err(|e| RunError::schema(".", e.message()))?;
            serde_path_to_error::deserialize(de).map_err(|e| {
                let path = e.path().to_string();
                RunError::schema(&path, e.into_inner().message())
            })
        }
    }
}

pub fn load_config(path: &Path) -> Result<RunConfig, RunError> {
    let text = std::fs::read_to_string(path).map_err(|e| RunError::Io(format!("{}: {e}", path.display())))?;
    parse_config(&text, ConfigFormat::from_path(path))
}

#[derive(Debug, Clone, Serialize)]
pub struct Checks {
    pub weakly_compatible: WeakCompatibility,
    pub quasi_abelian: QuasiAbelian,
    pub commutator_vanishing: bool,
    pub abelian_nilradical: bool,
    pub convexity: Vec<ConvexityCertificate>,
    pub convexity_verified: bool,
    pub rho_positivity: RhoPositivity,
    /// `None` without involution data.
    pub quasi_abelian_transfer: Option<TransferVerdict>,
    /// Stored catalog flags, when the pair comes from the catalog.
    pub catalog_flags: Option<CatalogFlags>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub enabled: bool,
    #[serde(serialize_with = "serialize_opt_q")]
    pub level: Option<Q>,
    pub cap: usize,
    pub status: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunResult {
    pub schema_version: u32,
    pub seed: u64,
    pub checks: Checks,
    pub table: BranchingTable,
    pub hom: Vec<HomReport>,
    pub pi: PiReport,
    pub transfer: Option<TransferReport>,
    pub oracle: OracleReport,
    pub oracle_diff: Option<OracleDiscrepancy>,
    pub warnings: Vec<String>,
}

impl RunResult {
    pub fn exit_code(&self) -> i32 {
        if self.oracle_diff.is_some() {
            4
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serializes") + "\n"
    }
}

fn embedding_error(e: EmbeddingError) -> RunError {
    match e {
        EmbeddingError::UnknownCatalogEntry(_) => RunError::schema("pair", e),
        EmbeddingError::HShape { .. } => RunError::schema("h", e),
        other => RunError::Refusal(other.to_string()),
    }
}

fn root_error(path: &str, e: RootError) -> RunError {
    RunError::schema(path, e)
}

fn matrix(rows: &[Vec<Rat>]) -> Vec<Vec<Q>> {
    rows.iter().map(|r| rats_to_q(r)).collect()
}

/// Pair, `H`, Levi refinement and stored catalog flags.
type PairSetup = (ReductivePair, Vec<Q>, Vec<Weight>, Option<CatalogFlags>);

fn build_pair(cfg: &RunConfig) -> Result<PairSetup, RunError> {
    let explicit_h = match &cfg.h {
        None => None,
        Some(HSpec::Keyword(k)) if k == "from-catalog" => None,
        Some(HSpec::Keyword(k)) => return Err(RunError::schema("h", format!("expected a vector or \"from-catalog\", got `{k}`"))),
        Some(HSpec::Values(v)) => Some(rats_to_q(v)),
    };
    match &cfg.pair {
        PairSpec::Catalog(name) => {
            let e = lookup(name).map_err(embedding_error)?;
            let h = explicit_h.unwrap_or_else(|| e.h.clone());
            let refinement = if cfg.levi_refinement.is_empty() { e.levi_refinement.clone() } else { cfg.levi_refinement.clone() };
            Ok((e.pair, h, refinement, Some(e.flags)))
        }
        PairSpec::Inline(ip) => {
            let h = explicit_h.ok_or_else(|| RunError::schema("h", "an inline pair needs an explicit H"))?;
            let g = RootSystem::build(&ip.g).map_err(|e| root_error("pair.g", e))?;
            let gp = RootSystem::build(&ip.g_prime).map_err(|e| root_error("pair.g_prime", e))?;
            let theta = ip.theta.as_ref().map(|t| ThetaData::inner(t.compact_roots.clone(), g.dim()));
            let k1 = ip.k1.as_ref().map(|k| K1Data { roots: k.roots.clone(), projection: matrix(&k.projection) });
            let name = ip.name.clone().unwrap_or_else(|| format!("{}>{}", ip.g, ip.g_prime));
            let pair = ReductivePair::new(name, g, gp, matrix(&ip.restriction), None, theta, k1)
                .map_err(embedding_error)?;
            Ok((pair, h, cfg.levi_refinement.clone(), None))
        }
    }
}

fn resolve_f(cfg: &RunConfig, g: &RootSystem) -> Result<Weight, RunError> {
    match cfg.f_basis {
        FBasis::Simple => {
            if cfg.f_hw.dim() != g.dim() {
                return Err(RunError::schema("f_hw", format!("expected {} coordinates, got {}", g.dim(), cfg.f_hw.dim())));
            }
            Ok(cfg.f_hw.clone())
        }
        FBasis::Fundamental => {
            if g.dim() != g.rank() {
                return Err(RunError::schema("f_basis", "fundamental coordinates need a semisimple g; use \"simple\""));
            }
            g.from_fundamental_coords(cfg.f_hw.coords()).ok_or_else(|| {
                RunError::schema("f_hw", format!("expected {} coordinates, got {}", g.rank(), cfg.f_hw.dim()))
            })
        }
    }
}

fn verma_error(e: VermaError) -> RunError {
    RunError::Refusal(e.to_string())
}

fn checks(p: &ParabolicDatum, flags: Option<CatalogFlags>) -> Checks {
    let mut convexity = Vec::new();
    let mut convexity_verified = true;
    for a in &p.u_prime {
        match convexity_certificate(p, a) {
            Ok(c) => {
                convexity_verified &= c.verify(&p.pair);
                convexity.push(c);
            }
            Err(_) => convexity_verified = false,
        }
    }
    Checks {
        weakly_compatible: check_weakly_compatible(p),
        quasi_abelian: check_quasi_abelian(p),
        commutator_vanishing: check_commutator_vanishing(p),
        abelian_nilradical: has_abelian_nilradical(p),
        convexity,
        convexity_verified,
        rho_positivity: rho_positivity_check(p),
        quasi_abelian_transfer: quasi_abelian_transfer_check(p).ok(),
        catalog_flags: flags,
    }
}

/// Parabolic construction, checks, branching, reports and the oracle
/// cross-check. An oracle mismatch is reported in the result, not as an
/// error, so that outputs can still be written.
pub fn run_config(cfg: &RunConfig) -> Result<RunResult, RunError> {
    let (pair, h, refinement, flags) = build_pair(cfg)?;
    let f = resolve_f(cfg, &pair.g)?;
    let base = parabolic_from_h(&pair, &h).map_err(embedding_error)?;
    let p = refine_parabolic(&base, &refinement).map_err(embedding_error)?;
    let checks = checks(&p, flags);
    let v = VermaDescriptor::new(p, f, Side::Ambient).map_err(verma_error)?;
    let depth = cfg.depth.max_degree;
    let table = branch(&v, Depth { max_degree: depth as usize }).map_err(verma_error)?;

    let mut warnings = Vec::new();
    let mut seen = BTreeSet::new();
    let mut hom = Vec::new();
    for s in &table.summands {
        if seen.insert(s.hw.clone()) {
            hom.push(hom_space_report(&table, &s.hw).map_err(verma_error)?);
        }
    }
    let pi = pi_degree_report(&table, cfg.stabilization);
    let assertions = Assertions {
        theta_stable: cfg.assertions.theta_stable,
        transitivity_asserted: cfg.assertions.transitivity_asserted,
    };
    let transfer = match cohomological_transfer_report(&table, assertions) {
        Ok(t) => Some(t),
        Err(VermaError::NotCertified) => None,
        Err(e) => return Err(verma_error(e)),
    };

    let cap = level_cap();
    let enabled = cfg.oracle.enabled.unwrap_or(depth <= ORACLE_DEFAULT_DEPTH);
    let mut oracle = OracleReport { enabled, level: None, cap, status: "disabled".into() };
    let mut oracle_diff = None;
    if enabled {
        let safe = comparison_level(&table);
        let level = match cfg.oracle.max_level {
            Some(Rat(l)) => {
                if l < safe {
                    warnings.push(format!(
                        "oracle level {} lies below the complete range (>= {}); the comparison is expected to fail",
                        format_q(&l),
                        format_q(&safe)
                    ));
                }
                l
            }
            None => safe,
        };
        oracle.level = Some(level);
        match compare_with_oracle(&table, level, cap) {
            Ok(None) => oracle.status = "agree".into(),
            Ok(Some(d)) => {
                oracle.status = "mismatch".into();
                oracle_diff = Some(d);
            }
            Err(VermaError::TruncationTooDeep { cap }) => {
                oracle.enabled = false;
                oracle.status = "skipped".into();
                warnings.push(format!("oracle disabled: more than {cap} monomials below level {}", format_q(&level)));
            }
            Err(e) => return Err(verma_error(e)),
        }
    }

    Ok(RunResult {
        schema_version: SCHEMA_VERSION,
        seed: cfg.seed,
        checks,
        table,
        hom,
        pi,
        transfer,
        oracle,
        oracle_diff,
        warnings,
    })
}

#[derive(Serialize)]
struct CsvRow<'a> {
    degree: usize,
    level: String,
    hw: String,
    multiplicity: u64,
    good_range: bool,
    irreducible: bool,
    complete: bool,
    pair: &'a str,
}

pub fn to_csv(result: &RunResult) -> Result<String, RunError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for s in &result.table.summands {
        w.serialize(CsvRow {
            degree: s.grade.degree,
            level: format_q(&s.grade.level),
            hw: s.hw.to_string(),
            multiplicity: s.mult,
            good_range: s.good_range,
            irreducible: s.irreducible,
            complete: s.complete,
            pair: &result.table.source.pair,
        })
        .map_err(|e| RunError::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| RunError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| RunError::Io(e.to_string()))
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn to_text(result: &RunResult) -> String {
    let t = &result.table;
    let c = &result.checks;
    let mut out = String::new();
    let _ = writeln!(out, "pair {} ({} > {}), H = ({})", t.source.pair, t.source.g, t.source.g_prime,
        t.source.h.iter().map(format_q).collect::<Vec<_>>().join(", "));
    let _ = writeln!(out, "F = {} (dim {}), depth {}", t.source.f_hw, t.source.f_dimension, t.depth.max_degree);
    let wc = match &c.weakly_compatible.violated {
        None => "yes".to_string(),
        Some(v) => format!("no ({v} violated)"),
    };
    let qa = match &c.quasi_abelian.witness {
        None => "yes".to_string(),
        Some((a, b, x)) => format!("no (({a}, {b}) = {x})"),
    };
    let _ = writeln!(out, "weakly compatible: {wc}");
    let _ = writeln!(out, "quasi-abelian: {qa}");
    let _ = writeln!(out, "commutator vanishing: {}", yn(c.commutator_vanishing));
    let _ = writeln!(out, "source good range: {}", yn(t.verdicts.source_good_range));
    let _ = writeln!(out, "completely reducible: {:?}", t.verdicts.completely_reducible);
    let complete = match t.depth.complete_to_level {
        None => "all levels".to_string(),
        Some(l) => format!("levels >= {}", format_q(&l)),
    };
    let _ = writeln!(out, "complete range: {complete}");
    let _ = writeln!(out, "{:>6} {:>8} {:<24} {:>5} {:>5} {:>5} {:>8}", "degree", "level", "F'", "mult", "good", "irr", "complete");
    for s in &t.summands {
        let _ = writeln!(
            out,
            "{:>6} {:>8} {:<24} {:>5} {:>5} {:>5} {:>8}",
            s.grade.degree,
            format_q(&s.grade.level),
            s.hw.to_string(),
            s.mult,
            yn(s.good_range),
            yn(s.irreducible),
            yn(s.complete)
        );
    }
    let bound = result.pi.pi_degree_lower_bound.map_or("n/a".to_string(), |b| b.to_string());
    let _ = writeln!(out, "sup multiplicity {} (PI degree bound {bound}, {})", result.pi.observed_sup, result.pi.note);
    let _ = writeln!(out, "oracle: {}", result.oracle.status);
    if let Some(d) = &result.oracle_diff {
        let _ = writeln!(out, "{d}");
    }
    for w in &result.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

pub fn write_outputs(result: &RunResult, outputs: &Outputs) -> Result<(), RunError> {
    let write = |path: &Path, body: String| {
        std::fs::write(path, body).map_err(|e| RunError::Io(format!("{}: {e}", path.display())))
    };
    if let Some(p) = &outputs.json {
        write(p, result.to_json())?;
    }
    if let Some(p) = &outputs.csv {
        write(p, to_csv(result)?)?;
    }
    Ok(())
}
