use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use kneser_tverberg::chromatic::{
    bound_floor_formula, ceil_rational, chromatic_number, greedy_labeling, greedy_least_label, kriz_bound, relabel,
    ColoringCertificate,
};
use kneser_tverberg::complex::ComplexFile;
use kneser_tverberg::experiments::{
    render_table, standard_suite, Experiment, ExperimentOptions, ExperimentReport, Verdict,
};
use kneser_tverberg::geometry::{
    certify_strong_general_position, cyclic_boundary, format_rational, gale_facets, moment_points,
    moment_points_integer, parse_parameters, parse_rational, tverberg_search, PointConfiguration,
    PointConfigurationFile, SearchOptions, TverbergOutcome,
};
use kneser_tverberg::kneser::{
    generalized_kneser, kneser_hypergraph, s_stable_subsets, stable_avg_hypergraph, width, HypergraphFile,
};
use kneser_tverberg::{Hypergraph, Simplex, SimplicialComplex};

#[derive(Parser)]
#[command(name = "ktv", version, about = "Kneser hypergraph colorings and Tverberg partitions, computed exactly")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for the perturbation rationals of moment-curve placements.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on candidate tuples in partition searches.
    #[arg(long, global = true, default_value_t = 1 << 22)]
    cap: u128,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Build a simplicial complex and print facets and minimal nonfaces.
    Complex {
        #[command(flatten)]
        source: ComplexSource,
        /// Write the complex to a file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a Kneser-type hypergraph.
    Kneser {
        #[command(flatten)]
        source: HypergraphSource,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact chromatic number with an optimal coloring.
    Chi {
        #[command(flatten)]
        source: HypergraphSource,
        /// Refuse hypergraphs with more vertices.
        #[arg(long, default_value_t = 64)]
        vertex_limit: usize,
    },
    /// Lower and upper bounds for χ(KG^r(K, Δ_N)).
    Bounds {
        #[command(flatten)]
        source: ComplexSource,
        #[arg(short, long)]
        r: usize,
        #[arg(short, long)]
        d: usize,
    },
    /// Facets (and missing faces) of the cyclic polytope C_d(n).
    Gale {
        n: usize,
        d: usize,
        #[arg(long)]
        missing: bool,
    },
    /// Exhaustive search for r pairwise disjoint faces with intersecting hulls.
    Tverberg {
        /// Point configuration file.
        #[arg(long, conflicts_with = "moment")]
        points: Option<PathBuf>,
        /// `n:d`: moment-curve points with parameters 1..n.
        #[arg(long)]
        moment: Option<String>,
        /// Explicit moment-curve parameters (`num/den`), with --moment-dim.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["points", "moment"])]
        params: Option<Vec<String>>,
        #[arg(long, requires = "params")]
        moment_dim: Option<usize>,
        #[arg(short, long)]
        r: usize,
        /// Complex file restricting the faces searched.
        #[arg(long)]
        restrict: Option<PathBuf>,
        /// Certify strong general position first and prune with it.
        #[arg(long)]
        general_position: bool,
        /// Write the certificate (if found) to a file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run named verification experiments.
    Verify {
        #[command(subcommand)]
        experiment: VerifyCommand,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// χ(KG(n, 2n+k)) = k+2.
    Kneser { n: usize, k: usize },
    /// χ(KG'(n, 2n+k)) = k+2, optionally with vertex-criticality.
    Schrijver {
        n: usize,
        k: usize,
        #[arg(long)]
        criticality: bool,
    },
    /// χ(KG²(K, Δ_N)) = N+1−d for a named sphere.
    Spherical { name: String },
    /// χ(KG^r(k,n;t)) with a moment-curve placement and exhaustive search.
    AvgStable { r: usize, k: usize, n: usize },
    /// Tverberg-type floor bound with Kriz and greedy comparisons.
    Pipeline { name: String },
    /// Arithmetic hyperedge census of the non-prime-power instance.
    Census { r: usize, k: usize },
    /// Every documented instance, run concurrently.
    All,
}

#[derive(Args)]
struct ComplexSource {
    /// Full simplex Δ_N.
    #[arg(long, group = "complex_source")]
    simplex: Option<usize>,
    /// Boundary of Δ_N.
    #[arg(long, group = "complex_source")]
    boundary: Option<usize>,
    /// `n:t`: the cyclic runs {i, ..., i+t-1} mod n.
    #[arg(long, group = "complex_source")]
    cyclic_runs: Option<String>,
    /// `n:d`: boundary complex of the cyclic polytope C_d(n).
    #[arg(long, group = "complex_source")]
    cyclic_polytope: Option<String>,
    /// Complex file `{ "n", "facets" }`.
    #[arg(long, group = "complex_source")]
    file: Option<PathBuf>,
    /// File with a list of forbidden sets (the minimal nonfaces); needs --ground.
    #[arg(long, group = "complex_source", requires = "ground")]
    forbidden: Option<PathBuf>,
    #[arg(long)]
    ground: Option<usize>,
    /// Replace by the k-skeleton.
    #[arg(long, allow_hyphen_values = true)]
    skeleton: Option<i64>,
    /// Take the cone (apex n+1).
    #[arg(long)]
    cone: bool,
}

#[derive(Args)]
struct HypergraphSource {
    /// Hypergraph file.
    #[arg(long)]
    hypergraph: Option<PathBuf>,
    /// Uniformity.
    #[arg(short, long, default_value_t = 2)]
    r: usize,
    /// Subset size for KG^r(k, n).
    #[arg(short, long)]
    k: Option<usize>,
    /// Ground set size for KG^r(k, n).
    #[arg(short, long)]
    n: Option<usize>,
    /// Keep only s-stable subsets.
    #[arg(long, conflicts_with = "avg")]
    stable: Option<usize>,
    /// Keep only subsets t-stable on average (`num/den`).
    #[arg(long)]
    avg: Option<String>,
    /// Generalized KG^r(K, Δ_N) for a complex file.
    #[arg(long, conflicts_with_all = ["k", "n", "hypergraph"])]
    complex: Option<PathBuf>,
}

fn parse_pair(s: &str, what: &str) -> Result<(usize, usize)> {
    let (a, b) = s.split_once(':').with_context(|| format!("{what} must look like a:b, got '{s}'"))?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<()> {
    fs::write(path, serde_json::to_string_pretty(value)? + "\n").with_context(|| format!("writing {}", path.display()))
}

impl ComplexSource {
    fn build(&self) -> Result<SimplicialComplex> {
        let mut k = if let Some(n) = self.simplex {
            SimplicialComplex::simplex(n)?
        } else if let Some(n) = self.boundary {
            SimplicialComplex::simplex_boundary(n)?
        } else if let Some(s) = &self.cyclic_runs {
            let (n, t) = parse_pair(s, "--cyclic-runs")?;
            SimplicialComplex::cyclic_runs(n, t)?
        } else if let Some(s) = &self.cyclic_polytope {
            let (n, d) = parse_pair(s, "--cyclic-polytope")?;
            cyclic_boundary(n, d)?
        } else if let Some(path) = &self.file {
            SimplicialComplex::from_file(&read_json::<ComplexFile>(path)?)?
        } else if let Some(path) = &self.forbidden {
            let sets: Vec<Vec<usize>> = read_json(path)?;
            let sets = sets.into_iter().map(Simplex::from_labels).collect::<kneser_tverberg::Result<Vec<_>>>()?;
            SimplicialComplex::from_forbidden(&sets, self.ground.expect("required by clap"))?
        } else {
            bail!("no complex given: use --simplex, --boundary, --cyclic-runs, --cyclic-polytope, --file or --forbidden");
        };
        if let Some(s) = self.skeleton {
            k = k.skeleton(s)?;
        }
        if self.cone {
            k = k.cone()?;
        }
        Ok(k)
    }
}

impl HypergraphSource {
    fn build(&self) -> Result<Hypergraph> {
        if let Some(path) = &self.hypergraph {
            return Ok(Hypergraph::from_file(&read_json::<HypergraphFile>(path)?)?);
        }
        if let Some(path) = &self.complex {
            let k = SimplicialComplex::from_file(&read_json::<ComplexFile>(path)?)?;
            return Ok(generalized_kneser(&k, &SimplicialComplex::simplex(k.n() - 1)?, self.r)?);
        }
        let (Some(k), Some(n)) = (self.k, self.n) else {
            bail!("give --hypergraph, --complex, or both -k and -n");
        };
        if let Some(s) = self.stable {
            return Ok(Hypergraph::disjointness(self.r, s_stable_subsets(k, n, s)?)?);
        }
        if let Some(t) = &self.avg {
            return Ok(stable_avg_hypergraph(self.r, k, n, &parse_rational(t)?)?);
        }
        Ok(kneser_hypergraph(self.r, k, n)?)
    }
}

fn complex_json(k: &SimplicialComplex) -> Value {
    json!({
        "n": k.n(),
        "dim": k.dim(),
        "facets": k.facets(),
        "minimal_nonfaces": k.minimal_nonfaces(),
        "faces": k.face_count(),
    })
}

/// Prints a JSON value, or a two-column table of its top-level fields.
fn emit(format: Format, value: &Value) {
    match format {
        Format::Json => println!("{value}"),
        Format::Table => {
            let Some(obj) = value.as_object() else {
                println!("{value}");
                return;
            };
            let width = obj.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            for (k, v) in obj {
                let shown = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                println!("{k:<width$}  {shown}");
            }
        }
    }
}

fn load_points(
    points: &Option<PathBuf>,
    moment: &Option<String>,
    params: &Option<Vec<String>>,
    moment_dim: Option<usize>,
) -> Result<PointConfiguration> {
    if let Some(path) = points {
        return Ok(PointConfiguration::from_file(&read_json::<PointConfigurationFile>(path)?)?);
    }
    if let Some(s) = moment {
        let (n, d) = parse_pair(s, "--moment")?;
        return Ok(moment_points_integer(n, d)?);
    }
    if let Some(raw) = params {
        let d = moment_dim.context("--params needs --moment-dim")?;
        return Ok(moment_points(&parse_parameters(raw)?, d)?);
    }
    bail!("give --points, --moment or --params");
}

fn run_verify(cli: &Cli, experiment: &VerifyCommand) -> Result<bool> {
    let opts = ExperimentOptions { seed: cli.seed, cap: cli.cap, ..Default::default() };
    let experiments = match experiment {
        VerifyCommand::Kneser { n, k } => vec![Experiment::Kneser { n: *n, k: *k }],
        VerifyCommand::Schrijver { n, k, criticality } => {
            vec![Experiment::Schrijver { n: *n, k: *k, criticality: *criticality }]
        }
        VerifyCommand::Spherical { name } => vec![Experiment::Spherical { name: name.clone() }],
        VerifyCommand::AvgStable { r, k, n } => vec![Experiment::AvgStable { r: *r, k: *k, n: *n }],
        VerifyCommand::Pipeline { name } => vec![Experiment::Pipeline { name: name.clone() }],
        VerifyCommand::Census { r, k } => vec![Experiment::Census { r: *r, k: *k }],
        VerifyCommand::All => standard_suite(),
    };
    let reports: Vec<ExperimentReport> = experiments
        .par_iter()
        .map(|e| e.run(&opts))
        .collect::<kneser_tverberg::Result<_>>()?;
    match cli.format {
        Format::Json => {
            for r in &reports {
                println!("{}", serde_json::to_string(r)?);
            }
        }
        Format::Table => print!("{}", render_table(&reports)),
    }
    Ok(all_match(&reports))
}

/// Inapplicable reports make no claim, so only a mismatch fails the run.
fn all_match(reports: &[ExperimentReport]) -> bool {
    reports.iter().all(|r| r.verdict != Verdict::Mismatch)
}

/// `Ok(true)` when every verdict matched.
fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Complex { source, out } => {
            let k = source.build()?;
            if let Some(path) = out {
                write_json(path, &k.to_file())?;
            }
            emit(cli.format, &complex_json(&k));
        }
        Command::Kneser { source, out } => {
            let h = source.build()?;
            if let Some(path) = out {
                write_json(path, &h.to_file())?;
            }
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string(&h.to_file())?),
                Format::Table => emit(
                    cli.format,
                    &json!({ "r": h.r(), "vertices": h.vertex_count(), "hyperedges": h.edge_count() }),
                ),
            }
        }
        Command::Chi { source, vertex_limit } => {
            let h = source.build()?;
            let res = chromatic_number(&h, *vertex_limit)?;
            emit(
                cli.format,
                &json!({
                    "vertices": h.vertex_count(),
                    "hyperedges": h.edge_count(),
                    "chi": res.chi,
                    "coloring": ColoringCertificate::new(&h, &res.coloring)?,
                    "refutation_nodes": res.refutation_nodes,
                }),
            );
        }
        Command::Bounds { source, r, d } => {
            let k = source.build()?;
            if *r < 2 {
                bail!("need r >= 2");
            }
            let big_n = k.n() - 1;
            let kriz = kriz_bound(&k, *r)?;
            let greedy = match greedy_labeling(&k, *r, *d) {
                Some(perm) => {
                    let relabeled = relabel(&k, &perm)?;
                    let h = generalized_kneser(&relabeled, &SimplicialComplex::simplex(big_n)?, *r)?;
                    let g = greedy_least_label(&h, *r, big_n, *d)?;
                    json!({ "colors_used": g.colors_used, "proper": g.proper })
                }
                None => Value::Null,
            };
            emit(
                cli.format,
                &json!({
                    "N": big_n,
                    "r": r,
                    "d": d,
                    "width": width(&k, *r)?,
                    "kriz_bound": format_rational(&kriz),
                    "kriz_ceiling": ceil_rational(&kriz),
                    "floor_bound": bound_floor_formula(big_n, *r, *d),
                    "greedy": greedy,
                }),
            );
        }
        Command::Gale { n, d, missing } => {
            let facets = gale_facets(*n, *d)?;
            let mut v = json!({ "n": n, "d": d, "facet_count": facets.len(), "facets": facets });
            if *missing {
                v["missing_faces"] = json!(cyclic_boundary(*n, *d)?.minimal_nonfaces());
            }
            emit(cli.format, &v);
        }
        Command::Tverberg { points, moment, params, moment_dim, r, restrict, general_position, out } => {
            let config = load_points(points, moment, params, *moment_dim)?;
            let k = match restrict {
                Some(path) => Some(SimplicialComplex::from_file(&read_json::<ComplexFile>(path)?)?),
                None => None,
            };
            let cert = if *general_position {
                match certify_strong_general_position(&config, *r)? {
                    Some(c) => Some(c),
                    None => bail!("points are not in strong general position"),
                }
            } else {
                None
            };
            let outcome =
                tverberg_search(&config, *r, k.as_ref(), SearchOptions { cap: cli.cap, general_position: cert.as_ref() })?;
            let v = match &outcome {
                TverbergOutcome::Found(c) => {
                    if let Some(path) = out {
                        write_json(path, &c.to_file())?;
                    }
                    json!({ "found": true, "verified": c.verify(&config), "certificate": c.to_file() })
                }
                TverbergOutcome::Absent(a) => json!({ "found": false, "absence": a }),
            };
            emit(cli.format, &v);
        }
        Command::Verify { experiment } => return run_verify(cli, experiment),
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use kneser_tverberg::experiments::{Claim, Expected};
    use serde_json::json;

    use super::*;

    fn report(verdict: Verdict) -> ExperimentReport {
        ExperimentReport {
            name: "t".into(),
            params: json!({}),
            claimed: Claim { expected: Expected::Equals(json!(2)), citation: String::new() },
            computed: json!(2),
            verdict,
            runtime_ms: 0,
            details: json!({}),
        }
    }

    #[test]
    fn any_mismatch_fails_the_run() {
        assert!(all_match(&[report(Verdict::Match), report(Verdict::Inapplicable)]));
        assert!(!all_match(&[report(Verdict::Match), report(Verdict::Mismatch)]));
        assert!(all_match(&[]));
    }
}
