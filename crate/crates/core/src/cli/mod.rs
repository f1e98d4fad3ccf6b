//! Command-line driver: builds polytopes from files or families, runs a
//! computation or verification, and writes one JSON report or a CSV table.

pub mod format;
pub mod generate;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};
use std::path::PathBuf;

use crate::covering::{covering_number_bounds, verify_covering, CoverOptions, GridOptions};
use crate::error::{Error, Result};
use crate::polytope::io::PolytopeFile;
use crate::polytope::{EnumerationOptions, Point, Polytope, PolytopeV, Tolerance};
use crate::sphere::{exact_cap_measure, exp_cap_bound, sharp_cap_bound};
use crate::verify::{self, ClaimReport, PointwiseOptions, Quantity, FacetBoundInputs};

use format::{Cell, Table};
use generate::{Family, FamilyParams};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "facetwise", version, about = "Facet-count bounds for polytopes, checked numerically")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CommonArgs {
    /// Master seed for every random stream.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Monte Carlo sample count.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub samples: u64,
    /// Grid spacing for cover certification; default 0.1 / sqrt(n).
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    /// Near-orthogonality threshold.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    /// Geometric tolerance, relative to the coordinate scale.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Write here instead of stdout.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SourceArgs {
    /// Polytope JSON file.
    #[arg(long, conflicts_with = "family")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverChoice {
    /// Greedy cover certified on the grid.
    Computed,
    /// The single ball at the origin.
    Origin,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PointwiseArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_enum, default_value_t = CoverChoice::Computed)]
    pub cover: CoverChoice,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(untagged)]
pub enum Command {
    /// Exact cap measure with its two upper bounds.
    CapMeasure {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        h: f64,
    },
    /// Facet list of a polytope.
    Facets(SourceArgs),
    /// Inradius and circumradius about the origin.
    Inradius(SourceArgs),
    /// Covering-number bounds with a certified cover.
    Cover(SourceArgs),
    /// Facet lower bound, on a polytope or on given (n, N, r, log10 |F|).
    #[command(name = "verify-theorem")]
    VerifyFacetBound {
        #[command(flatten)]
        #[serde(flatten)]
        source: SourceArgs,
        #[arg(long)]
        #[serde(skip_serializing_if = "Option::is_none")]
        covering: Option<u64>,
        #[arg(long)]
        #[serde(skip_serializing_if = "Option::is_none")]
        r: Option<f64>,
        #[arg(long)]
        #[serde(skip_serializing_if = "Option::is_none")]
        facets_log10: Option<f64>,
    },
    /// min(|F|, |V|) against the sandwich bound.
    #[command(name = "verify-prop1")]
    VerifySandwich(SourceArgs),
    /// Radial bound on near-orthogonal directions, and their measure.
    #[command(name = "verify-prop3")]
    VerifyRadial(PointwiseArgs),
    /// Facet normal alignment on near-orthogonal directions.
    #[command(name = "verify-prop4")]
    VerifyAlignment(PointwiseArgs),
    /// Simplified facet bound against the full one at r = 1.
    #[command(name = "remark6")]
    SimplifiedBound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        covering: u64,
    },
    /// Exact cap measure and both bounds over an (n, h) grid.
    SweepBounds {
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long, default_value_t = 40)]
        n_max: usize,
        #[arg(long, default_value_t = 0.05)]
        h_step: f64,
    },
    /// Vertex list of a family member, as a polytope file.
    Generate(SourceArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CapMeasure { .. } => "cap-measure",
            Command::Facets(_) => "facets",
            Command::Inradius(_) => "inradius",
            Command::Cover(_) => "cover",
            Command::VerifyFacetBound { .. } => "verify-theorem",
            Command::VerifySandwich(_) => "verify-prop1",
            Command::VerifyRadial(_) => "verify-prop3",
            Command::VerifyAlignment(_) => "verify-prop4",
            Command::SimplifiedBound { .. } => "remark6",
            Command::SweepBounds { .. } => "sweep-bounds",
            Command::Generate(_) => "generate",
        }
    }
}

/// What a command produced: top-level JSON fields, an optional CSV view,
/// and claims that decide the exit status.
#[derive(Debug, Default)]
pub struct Outcome {
    pub fields: Map<String, Value>,
    pub table: Option<Table>,
    pub claims: Option<Vec<ClaimReport>>,
    /// Written verbatim instead of the report envelope.
    pub raw: Option<Value>,
}

impl Outcome {
    fn field(&mut self, key: &str, value: impl Serialize) {
        self.fields.insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
    }

    pub fn exit_status(&self) -> i32 {
        self.claims.as_deref().map_or(0, verify::exit_status)
    }
}

#[derive(Serialize)]
struct Config<'a> {
    command: &'static str,
    #[serde(flatten)]
    common: &'a CommonArgs,
    #[serde(flatten)]
    args: &'a Command,
}

fn enumeration_options(common: &CommonArgs) -> Result<EnumerationOptions> {
    let mut opts = EnumerationOptions::default();
    if let Some(t) = common.tolerance {
        if !(t > 0.0 && t < 1e-2) {
            return Err(Error::invalid(format!("--tolerance must lie in (0, 0.01), got {t}")));
        }
        opts.tolerance = Tolerance::with_geometric(t);
    }
    Ok(opts)
}

fn load_vertices(src: &SourceArgs, seed: u64) -> Result<PolytopeV> {
    let Some(family) = src.family else {
        return Err(Error::invalid("this command needs --family"));
    };
    let Some(n) = src.n else {
        return Err(Error::invalid("--family needs --n"));
    };
    let params = FamilyParams {
        n,
        m: src.m,
        a: src.a,
        b: src.b,
    };
    generate::generate(family, &params, seed)
}

fn load(src: &SourceArgs, common: &CommonArgs) -> Result<Polytope> {
    let opts = enumeration_options(common)?;
    match &src.input {
        Some(path) => PolytopeFile::read(path)?.into_polytope(&opts),
        None => Polytope::from_vertices(&load_vertices(src, common.seed)?, &opts),
    }
}

fn grid_options(n: usize, common: &CommonArgs) -> Result<GridOptions> {
    let mut g = GridOptions::for_dim(n);
    if let Some(d) = common.delta {
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::invalid(format!("--delta must be positive, got {d}")));
        }
        g.delta = d;
    }
    Ok(g)
}

fn cover_options(n: usize, common: &CommonArgs) -> Result<CoverOptions> {
    let grid = grid_options(n, common)?;
    Ok(CoverOptions::for_dim(n).with_delta(grid.delta).with_seed(common.seed))
}

fn claims_table(claims: &[ClaimReport]) -> Table {
    let mut t = Table::new(&["id", "paper_anchor", "verdict", "informational", "lhs_log10", "rhs_log10"]);
    for c in claims {
        let id = serde_json::to_value(c.id).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        let verdict = serde_json::to_value(c.verdict).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        let lhs = match c.lhs {
            Some(Quantity::Count(k)) if k > 0 => Cell::Float((k as f64).log10()),
            Some(Quantity::Real(x)) if x > 0.0 => Cell::Float(x.log10()),
            Some(Quantity::Log(v)) => Cell::Float(v.log10()),
            _ => Cell::Empty,
        };
        t.push(vec![
            Cell::Text(id),
            c.paper_anchor.into(),
            Cell::Text(verdict),
            Cell::Text(c.informational.to_string()),
            lhs,
            c.rhs_log10.into(),
        ]);
    }
    t
}

fn with_claims(mut out: Outcome, claims: Vec<ClaimReport>) -> Outcome {
    out.table = Some(claims_table(&claims));
    out.claims = Some(claims);
    out
}

/// Runs a parsed command without writing anything.
pub fn execute(cmd: &Command, common: &CommonArgs) -> Result<Outcome> {
    let mut out = Outcome::default();
    match cmd {
        Command::CapMeasure { n, h } => {
            let exact = exact_cap_measure(*n, *h)?;
            let exp_bound = exp_cap_bound(*n, *h)?;
            let sharp = if *n >= 3 && *h > 0.0 { Some(sharp_cap_bound(*n, *h)?.value()) } else { None };
            out.field("exact", exact);
            out.field("prop2", exp_bound);
            out.field("lemma5", sharp);
            let mut t = Table::new(&["n", "h", "exact", "prop2", "lemma5"]);
            t.push(vec![(*n).into(), (*h).into(), exact.into(), exp_bound.into(), sharp.into()]);
            out.table = Some(t);
        }
        Command::Facets(src) => {
            let p = load(src, common)?;
            out.field("dim", p.dim());
            out.field("vertex_count", p.vertices().len());
            out.field("facet_count", p.facets().len());
            out.field("vertices", p.vertices());
            out.field("facets", p.facets());
            let n = p.dim();
            let mut header: Vec<String> = (0..n).map(|k| format!("u{k}")).collect();
            header.push("offset".into());
            header.push("incident".into());
            let mut t = Table::new(&header);
            for f in p.facets() {
                let mut row: Vec<Cell> = f.normal().iter().map(|&x| x.into()).collect();
                row.push(f.offset().into());
                row.push(f.incident_vertices.len().into());
                t.push(row);
            }
            out.table = Some(t);
        }
        Command::Inradius(src) => {
            let p = load(src, common)?;
            let r = p.inradius_at_origin();
            let big_r = p.circumradius_at_origin();
            out.field("inradius", r);
            out.field("circumradius", big_r);
            out.field("vertex_count", p.vertices().len());
            out.field("facet_count", p.facets().len());
            let mut t = Table::new(&["inradius", "circumradius", "vertex_count", "facet_count"]);
            t.push(vec![r.into(), big_r.into(), p.vertices().len().into(), p.facets().len().into()]);
            out.table = Some(t);
        }
        Command::Cover(src) => {
            let p = load(src, common)?;
            let bounds = covering_number_bounds(&p, &cover_options(p.dim(), common)?)?;
            let cert = bounds.certificate();
            out.field("n_low", bounds.n_low);
            out.field("n_up", bounds.n_up);
            out.field("centers", bounds.centers());
            out.field("grid_delta", cert.grid_delta);
            out.field("status", &cert.status);
            out.field("method", cert.method);
            out.field("packing", &bounds.packing.points);
            let mut t = Table::new(&["n_low", "n_up", "status", "grid_delta"]);
            t.push(vec![
                bounds.n_low.into(),
                bounds.n_up.into(),
                cert.status.label().into(),
                cert.grid_delta.into(),
            ]);
            out.table = Some(t);
        }
        Command::VerifyFacetBound {
            source,
            covering,
            r,
            facets_log10,
        } => {
            if let Some(log10) = facets_log10 {
                let (Some(n), Some(covering), Some(r)) = (source.n, covering, r) else {
                    return Err(Error::invalid("--facets-log10 needs --n, --covering and --r"));
                };
                let inputs = FacetBoundInputs {
                    n,
                    covering: *covering,
                    provenance: verify::Provenance::Exact,
                    r: *r,
                    facet_count_log10: *log10,
                };
                out.field("inputs", inputs);
                let claims = vec![
                    verify::check_facet_bound(&inputs),
                    verify::check_proof_steps(n, *covering, *r),
                ];
                return Ok(with_claims(out, claims));
            }
            let p = load(source, common)?;
            let bounds = covering_number_bounds(&p, &cover_options(p.dim(), common)?)?;
            out.field("n_low", bounds.n_low);
            out.field("n_up", bounds.n_up);
            out.field("inradius", p.inradius_at_origin());
            out.field("facet_count", p.facets().len());
            let claims = verify::check_theorem(&p, &bounds);
            return Ok(with_claims(out, claims));
        }
        Command::VerifySandwich(src) => {
            let p = load(src, common)?;
            out.field("inradius", p.inradius_at_origin());
            out.field("circumradius", p.circumradius_at_origin());
            out.field("facet_count", p.facets().len());
            out.field("vertex_count", p.vertices().len());
            return Ok(with_claims(out, vec![verify::check_sandwich(&p)]));
        }
        Command::VerifyRadial(args) | Command::VerifyAlignment(args) => {
            let p = load(&args.source, common)?;
            let n = p.dim();
            let centers = match args.cover {
                CoverChoice::Origin => vec![Point::origin(n)],
                CoverChoice::Computed => {
                    let bounds = covering_number_bounds(&p, &cover_options(n, common)?)?;
                    bounds.centers().to_vec()
                }
            };
            let cert = verify_covering(&p, &centers, grid_options(n, common)?)?;
            let epsilon = match common.epsilon {
                Some(e) => e,
                None => verify::epsilon_choice(n, centers.len() as u64).unwrap_or(DEFAULT_EPSILON),
            };
            out.field("epsilon", epsilon);
            out.field("centers", &cert.centers);
            out.field("cover_status", &cert.status);
            out.field("inradius", p.inradius_at_origin());
            let opts = PointwiseOptions {
                epsilon,
                samples: common.samples,
                seed: common.seed,
            };
            let claims = if matches!(cmd, Command::VerifyRadial(_)) {
                verify::check_radial_bound(&p, &cert, &opts)?
            } else {
                verify::check_normal_alignment(&p, &cert, &opts)?
            };
            return Ok(with_claims(out, claims));
        }
        Command::SimplifiedBound { n, covering } => {
            let claim = verify::check_simplified_consistency(*n, *covering);
            if claim.hypotheses_hold() {
                out.field("simplified", verify::simplified_facet_bound(*n, *covering)?);
                out.field("full", verify::facet_lower_bound(*n, *covering, 1.0)?);
            }
            return Ok(with_claims(out, vec![claim]));
        }
        Command::SweepBounds { n_min, n_max, h_step } => {
            if *n_min < 3 || n_max < n_min {
                return Err(Error::invalid("sweep needs 3 <= n-min <= n-max"));
            }
            if !(*h_step > 0.0 && *h_step < 1.0) {
                return Err(Error::invalid(format!("--h-step must lie in (0, 1), got {h_step}")));
            }
            let mut t = Table::new(&["n", "h", "exact", "prop2", "lemma5"]);
            let mut rows = Vec::new();
            for n in *n_min..=*n_max {
                for k in 1.. {
                    let h = k as f64 * h_step;
                    if h >= 1.0 - 1e-12 {
                        break;
                    }
                    let exact = exact_cap_measure(n, h)?;
                    let exp_bound = exp_cap_bound(n, h)?;
                    let sharp = sharp_cap_bound(n, h)?.value();
                    t.push(vec![n.into(), h.into(), exact.into(), exp_bound.into(), sharp.into()]);
                    rows.push(json!({"n": n, "h": h, "exact": exact, "prop2": exp_bound, "lemma5": sharp}));
                }
            }
            out.field("rows", rows);
            out.table = Some(t);
        }
        Command::Generate(src) => {
            if src.input.is_some() {
                return Err(Error::invalid("generate takes --family, not --input"));
            }
            let v = load_vertices(src, common.seed)?;
            let header: Vec<String> = (0..v.dim).map(|k| format!("x{k}")).collect();
            let mut t = Table::new(&header);
            for p in &v.vertices {
                t.push(p.iter().map(|&x| x.into()).collect());
            }
            out.table = Some(t);
            out.raw = Some(serde_json::to_value(PolytopeFile::from_vertices(&v)).unwrap_or(Value::Null));
        }
    }
    Ok(out)
}

/// Used when no epsilon is given and the covering size admits no choice
/// of the form `sqrt(4 log N / n)`.
const DEFAULT_EPSILON: f64 = 0.3;

/// Renders the outcome in the requested format.
pub fn render(cmd: &Command, common: &CommonArgs, out: &Outcome) -> Result<String> {
    if common.format == OutputFormat::Csv {
        return Ok(out.table.as_ref().map(Table::to_csv).unwrap_or_default());
    }
    let text = match &out.raw {
        Some(raw) => format::to_json(raw),
        None => {
            let mut doc = Map::new();
            doc.insert("version".into(), json!(VERSION));
            doc.insert("command".into(), json!(cmd.name()));
            let config = Config {
                command: cmd.name(),
                common,
                args: cmd,
            };
            doc.insert("config".into(), serde_json::to_value(config).unwrap_or(Value::Null));
            doc.insert("seed".into(), json!(common.seed));
            for (k, v) in &out.fields {
                doc.insert(k.clone(), v.clone());
            }
            if let Some(claims) = &out.claims {
                doc.insert("claims".into(), serde_json::to_value(claims).unwrap_or(Value::Null));
            }
            format::to_json(&Value::Object(doc))
        }
    };
    text.map_err(|e| Error::invalid(format!("cannot encode report: {e}")))
}

/// Parses nothing; runs `cli` and writes its output. Returns the exit status.
pub fn run(cli: &Cli) -> anyhow::Result<i32> {
    let outcome = execute(&cli.command, &cli.common)?;
    let text = render(&cli.command, &cli.common, &outcome)?;
    match &cli.common.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display()))?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(outcome.exit_status())
}
