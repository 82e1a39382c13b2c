use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qwalk_cli::report::{analyze_graph, AnalyzeOptions};
use qwalk_cli::search::run_search;
use qwalk_cli::source::{fits_graph6, parse_generator, parse_time, Family};
use qwalk_core::evolution::{curve_to_csv, fidelity_curve};
use qwalk_core::graph::{parse_edge_list, parse_graph6, to_edge_list, to_graph6, Graph};
use qwalk_core::spectral::decompose;
use qwalk_core::{Error as CoreError, Hamiltonian, HamiltonianKind, Tolerances};

const EXIT_USAGE: u8 = 1;
const EXIT_CONSISTENCY: u8 = 2;

#[derive(Parser)]
#[command(name = "qwalk", version, about = "Continuous-time quantum walk analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full per-vertex analysis of one graph, as pretty JSON.
    Analyze {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_enum, default_value_t = Model::Adjacency)]
        model: Model,
        /// Embed the integer Hamiltonian in the report.
        #[arg(long)]
        dump_matrix: bool,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Fidelity |U(t)_ab|^2 sampled on [0, t_max], as CSV.
    Evolve {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_enum, default_value_t = Model::Adjacency)]
        model: Model,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        /// A number or an expression such as `pi/2` or `pi*sqrt(2)`.
        #[arg(long, default_value = "2*pi")]
        t_max: String,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        #[arg(long, default_value_t = Tolerances::default().cluster)]
        tol_cluster: f64,
    },
    /// Reads graph6 lines on stdin and writes one JSON line per graph.
    Search {
        #[arg(long, value_enum, default_value_t = Model::Adjacency)]
        model: Model,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Prints a member of a named family as graph6 or an edge list.
    Generate {
        family: String,
        k: usize,
        /// Print vertex and edge counts instead of the graph.
        #[arg(long)]
        counts: bool,
        #[arg(long, value_enum, default_value_t = Format::Auto)]
        format: Format,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SourceArgs {
    /// Generator such as `p3`, `star:3`, `p3power:2`, `q3`.
    #[arg(long)]
    gen: Option<String>,
    #[arg(long)]
    graph6: Option<String>,
    /// Edge-list file: `n m` header then `u v [w]` lines.
    #[arg(long)]
    edges: Option<PathBuf>,
}

impl SourceArgs {
    fn load(&self) -> Result<(Graph, String)> {
        if let Some(spec) = &self.gen {
            return Ok((parse_generator(spec)?, format!("gen:{spec}")));
        }
        if let Some(text) = &self.graph6 {
            return Ok((parse_graph6(text)?, format!("graph6:{text}")));
        }
        let path = self.edges.as_ref().expect("clap enforces one source");
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Ok((parse_edge_list(&text)?, format!("edges:{}", path.display())))
    }
}

#[derive(Args)]
struct TolArgs {
    #[arg(long, default_value_t = Tolerances::default().cluster)]
    tol_cluster: f64,
    #[arg(long, default_value_t = Tolerances::default().support)]
    tol_support: f64,
    #[arg(long, default_value_t = Tolerances::default().pst)]
    tol_pst: f64,
    #[arg(long, default_value_t = Tolerances::default().period)]
    tol_period: f64,
    #[arg(long, default_value_t = Tolerances::default().pst_grid)]
    pst_grid: usize,
}

impl TolArgs {
    fn tolerances(&self) -> Result<Tolerances> {
        for (name, v) in [
            ("tol-cluster", self.tol_cluster),
            ("tol-support", self.tol_support),
            ("tol-pst", self.tol_pst),
            ("tol-period", self.tol_period),
        ] {
            if !(v.is_finite() && v > 0.0 && v < 1.0) {
                bail!("--{name} must lie in (0, 1), got {v}");
            }
        }
        if self.pst_grid == 0 {
            bail!("--pst-grid must be positive");
        }
        Ok(Tolerances {
            cluster: self.tol_cluster,
            support: self.tol_support,
            pst: self.tol_pst,
            period: self.tol_period,
            pst_grid: self.pst_grid,
            ..Tolerances::default()
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Adjacency,
    Laplacian,
    Signless,
    Weighted,
}

impl From<Model> for HamiltonianKind {
    fn from(m: Model) -> Self {
        match m {
            Model::Adjacency => HamiltonianKind::Adjacency,
            Model::Laplacian => HamiltonianKind::Laplacian,
            Model::Signless => HamiltonianKind::SignlessLaplacian,
            Model::Weighted => HamiltonianKind::WeightedAdjacency,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// graph6 when the graph fits, otherwise an edge list.
    Auto,
    Graph6,
    Edges,
}

/// Failure classes that map to distinct exit codes.
enum Failure {
    Usage(anyhow::Error),
    Consistency(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

fn core_failure(e: CoreError) -> Failure {
    match e {
        CoreError::LaplacianCorollary { .. } | CoreError::Spectral(_) => {
            Failure::Consistency(e.into())
        }
        other => Failure::Usage(other.into()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Consistency(e)) => {
            eprintln!("consistency violation: {e:#}");
            ExitCode::from(EXIT_CONSISTENCY)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Analyze {
            source,
            model,
            dump_matrix,
            tol,
        } => {
            let (g, label) = source.load()?;
            let opts = AnalyzeOptions {
                source: &label,
                tolerances: tol.tolerances()?,
                dump_matrix,
            };
            let report = analyze_graph(&g, model.into(), &opts).map_err(core_failure)?;
            serde_json::to_writer_pretty(&mut out, &report).map_err(anyhow::Error::from)?;
            writeln!(out).map_err(anyhow::Error::from)?;
        }
        Command::Evolve {
            source,
            model,
            a,
            b,
            t_max,
            samples,
            tol_cluster,
        } => {
            let (g, _) = source.load()?;
            let t_max = parse_time(&t_max)?;
            let h = Hamiltonian::build(&g, model.into())
                .map_err(|e| core_failure(e.into()))?;
            let dec = decompose(&h, tol_cluster).map_err(|e| core_failure(e.into()))?;
            let curve = fidelity_curve(&dec, a, b, t_max, samples).map_err(core_failure)?;
            out.write_all(curve_to_csv(&curve).as_bytes())
                .map_err(anyhow::Error::from)?;
        }
        Command::Search { model, jobs, tol } => {
            let tol = tol.tolerances()?;
            rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build_global()
                .map_err(anyhow::Error::from)?;
            let summary = run_search(
                io::stdin().lock(),
                &mut out,
                &mut io::stderr(),
                model.into(),
                tol,
            )?;
            if !summary.is_clean() {
                return Err(Failure::Consistency(anyhow::anyhow!(
                    "{} graph(s) failed analysis; see the error lines in the output",
                    summary.failures
                )));
            }
        }
        Command::Generate {
            family,
            k,
            counts,
            format,
        } => {
            let family: Family = family.parse()?;
            let g = family.build(k)?;
            let text = if counts {
                counts_line(family, k, &g)
            } else {
                render(&g, format)?
            };
            writeln!(out, "{text}").map_err(anyhow::Error::from)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn counts_line(family: Family, k: usize, g: &Graph) -> String {
    let mut line = format!("n={} m={}", g.order(), g.size());
    if family == Family::P3Power {
        let d = 2 * k as u32;
        let n_formula = 3u64.pow(d / 2);
        let m_formula = u64::from(d) * 3u64.pow(d / 2 - 1);
        line += &format!(" d={d} formula_n={n_formula} formula_m={m_formula}");
    }
    line
}

fn render(g: &Graph, format: Format) -> Result<String> {
    Ok(match format {
        Format::Graph6 => to_graph6(g)?,
        Format::Auto if fits_graph6(g) => to_graph6(g)?,
        Format::Auto | Format::Edges => to_edge_list(g).trim_end().to_string(),
    })
}
