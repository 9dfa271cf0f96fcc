use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use listagree::cochain::dist_to_coboundaries;
use listagree::harness::{
    render, run_experiment, ExperimentConfig, Format, GeneratorSpec, ListInput, Report, RunMode, TesterSpec,
};
use listagree::io::{read_complex, read_json, CochainJson, Coefficients, ComplexJson, FaceFunctionJson, LAssignmentJson};
use listagree::rational::to_string;
use listagree::representation::RepresentationComplex;
use listagree::sampling::THREADS_ENV;
use listagree::{Bit, Perm, SimplicialComplex};

#[derive(Parser)]
#[command(name = "listagree", version, about = "List-agreement, coboundary and direct-sum testers with exact oracles")]
struct Cli {
    /// Worker threads for Monte Carlo trials.
    #[arg(long, global = true, env = THREADS_ENV)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a generated complex as JSON.
    Gen {
        #[command(subcommand)]
        family: Family,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Emit the representation complex of a complex.
    Represent {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the list-agreement tester on an l-assignment file.
    TestListAgreement {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run the direct-sum tester on a face function file or a random direct sum.
    TestDirectSum {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        corruptions: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run the empty-triangle coboundary tester on the representation complex.
    TestCoboundary {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        l: usize,
        /// A 1-cochain on the representation complex.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        corruptions: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Exact distances by exhaustive search.
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
    /// Lower-bound and building demonstrations.
    Demo {
        #[command(subcommand)]
        which: DemoCommand,
    },
    /// Run an experiment described by a JSON configuration.
    Experiment {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Subcommand)]
enum Family {
    Complete {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    Building {
        #[arg(long)]
        p: u8,
        #[arg(long, default_value_t = 1)]
        d: usize,
    },
    CyclePendants {
        #[arg(long)]
        n: usize,
    },
    CycleCone {
        #[arg(long)]
        n: usize,
    },
    Annulus {
        #[arg(long)]
        n: usize,
    },
    SixCycle,
}

impl Family {
    fn spec(&self) -> GeneratorSpec {
        match *self {
            Family::Complete { n, d } => GeneratorSpec::Complete { n, d },
            Family::Building { p, d } => GeneratorSpec::Building { p, d },
            Family::CyclePendants { n } => GeneratorSpec::CyclePendants { n },
            Family::CycleCone { n } => GeneratorSpec::CycleCone { n },
            Family::Annulus { n } => GeneratorSpec::Annulus { n },
            Family::SixCycle => GeneratorSpec::SixCycle,
        }
    }
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Distance from an l-assignment to the agreeing ones.
    DistAgreeing {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long)]
        input: PathBuf,
    },
    /// Distance from a 1-cochain to the coboundaries.
    DistCoboundary {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long)]
        input: PathBuf,
    },
    /// Distance from a face function to the direct sums.
    DistDirectSum {
        #[command(flatten)]
        complex: ComplexArg,
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum DemoCommand {
    /// The non-skipping cycle of the spherical building SB(p, d).
    BuildingCycle {
        #[arg(long)]
        p: u8,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The adversarial l-assignment and its fooling check.
    LowerBound {
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Complete complex on this many vertices, unless --complex is given.
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long)]
        complex: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ComplexArg {
    /// Complex JSON file.
    #[arg(long)]
    complex: PathBuf,
}

impl ComplexArg {
    fn load(&self) -> listagree::Result<Arc<SimplicialComplex>> {
        Ok(Arc::new(read_complex(&self.complex)?))
    }

    fn spec(&self) -> GeneratorSpec {
        GeneratorSpec::File { path: self.complex.display().to_string() }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Single,
    MonteCarlo,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: ModeArg,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also compute exact distances by exhaustive search.
    #[arg(long)]
    oracle: bool,
    /// Measure link expansion and the derived test constants.
    #[arg(long)]
    constants: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn config(&self, generator: GeneratorSpec, tester: TesterSpec) -> ExperimentConfig {
        let mode = match self.mode {
            ModeArg::Exhaustive => RunMode::Exhaustive,
            ModeArg::Single => RunMode::Single,
            ModeArg::MonteCarlo => RunMode::MonteCarlo { trials: self.trials },
        };
        ExperimentConfig {
            generator,
            tester,
            mode,
            seed: self.seed,
            oracle: self.oracle,
            measure_constants: self.constants,
            output: None,
            csv: None,
        }
    }

    fn format(&self) -> Format {
        match self.format {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Serialize)]
struct RepresentationSummary {
    k: usize,
    d: usize,
    face_counts: Vec<usize>,
    empty_triangles: usize,
    maximal_faces: Vec<Vec<u32>>,
    maximal_weights: Vec<String>,
}

#[derive(Serialize)]
struct OracleResult {
    distance: String,
    count: u64,
}

fn write_out(bytes: &[u8], out: Option<&PathBuf>) -> listagree::Result<()> {
    match out {
        Some(p) => std::fs::write(p, bytes)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(bytes)?;
        }
    }
    Ok(())
}

fn json<T: Serialize>(value: &T) -> listagree::Result<Vec<u8>> {
    let mut v = serde_json::to_vec_pretty(value)?;
    v.push(b'\n');
    Ok(v)
}

/// Runs a report-producing command; a failed lemma check maps to exit 1.
fn run_report(config: ExperimentConfig, format: Format, out: Option<&PathBuf>) -> listagree::Result<bool> {
    let report: Report = run_experiment(&config)?;
    write_out(&render(&report, format)?, out)?;
    Ok(report.passed())
}

fn dispatch(cli: Cli) -> listagree::Result<bool> {
    match cli.command {
        Command::Gen { family, out } => {
            let (x, _) = family.spec().build()?;
            write_out(&json(&ComplexJson::from_complex(&x))?, out.as_ref())?;
            Ok(true)
        }
        Command::Represent { complex, k, out } => {
            let rep = RepresentationComplex::build(complex.load()?, k)?;
            let r = rep.complex();
            let top = r.dim() as i64;
            let summary = RepresentationSummary {
                k,
                d: r.dim(),
                face_counts: (0..=top).map(|i| r.face_count(i)).collect(),
                empty_triangles: rep.empty_triangles().len(),
                maximal_faces: r.faces(top).iter().map(|f| f.iter().map(|&v| v as u32).collect()).collect(),
                maximal_weights: (0..r.face_count(top)).map(|i| to_string(&r.weight_at(top, i))).collect(),
            };
            write_out(&json(&summary)?, out.as_ref())?;
            Ok(true)
        }
        Command::TestListAgreement { complex, input, run } => {
            let x = complex.load()?;
            let a = read_json::<LAssignmentJson>(&input)?.to_assignment(x)?;
            let tester = TesterSpec::ListAgreement {
                k: a.k,
                l: a.l,
                input: ListInput::File { path: input.display().to_string() },
            };
            run_report(run.config(complex.spec(), tester), run.format(), run.out.as_ref())
        }
        Command::TestDirectSum { complex, k, input, corruptions, run } => {
            let tester = TesterSpec::DirectSum { k, corruptions, input: input.map(|p| p.display().to_string()) };
            run_report(run.config(complex.spec(), tester), run.format(), run.out.as_ref())
        }
        Command::TestCoboundary { complex, k, l, input, corruptions, run } => {
            let tester = TesterSpec::Coboundary { k, l, corruptions, input: input.map(|p| p.display().to_string()) };
            run_report(run.config(complex.spec(), tester), run.format(), run.out.as_ref())
        }
        Command::Oracle { which } => {
            let (distance, count) = match which {
                OracleCommand::DistAgreeing { complex, input } => {
                    let a = read_json::<LAssignmentJson>(&input)?.to_assignment(complex.load()?)?;
                    let w = a.dist_to_agreeing_oracle()?;
                    (w.distance, w.cost)
                }
                OracleCommand::DistCoboundary { complex, input } => {
                    let c: CochainJson = read_json(&input)?;
                    let x = complex.load()?;
                    let den = x.weight_denominator(1);
                    let d = match c.coefficients {
                        Coefficients::F2 => dist_to_coboundaries(&c.to_bit(x)?, &[Bit(false), Bit(true)])?,
                        Coefficients::Symmetric => {
                            let f = c.to_perm(x)?;
                            dist_to_coboundaries(&f, &Perm::all(c.l))?
                        }
                    };
                    let count = (&d * listagree::rational::int(den)).to_integer();
                    (d, count.try_into().unwrap_or(u64::MAX))
                }
                OracleCommand::DistDirectSum { complex, input } => {
                    let f = read_json::<FaceFunctionJson>(&input)?.to_function(complex.load()?)?;
                    f.dist_to_direct_sums_oracle()?
                }
            };
            write_out(&json(&OracleResult { distance: to_string(&distance), count })?, None)?;
            Ok(true)
        }
        Command::Demo { which } => match which {
            DemoCommand::BuildingCycle { p, d, out } => {
                let config = plain_config(GeneratorSpec::Building { p, d }, TesterSpec::BuildingCycle);
                run_report(config, Format::Json, out.as_ref())
            }
            DemoCommand::LowerBound { l, k, n, d, complex, out } => {
                let generator = match complex {
                    Some(p) => GeneratorSpec::File { path: p.display().to_string() },
                    None => GeneratorSpec::Complete { n, d },
                };
                run_report(plain_config(generator, TesterSpec::LowerBound { k, l }), Format::Json, out.as_ref())
            }
        },
        Command::Experiment { config } => {
            let config: ExperimentConfig = read_json(&config)?;
            let report = listagree::harness::run_and_emit(&config)?;
            if config.output.is_none() {
                write_out(&render(&report, Format::Json)?, None)?;
            }
            Ok(report.passed())
        }
    }
}

fn plain_config(generator: GeneratorSpec, tester: TesterSpec) -> ExperimentConfig {
    ExperimentConfig {
        generator,
        tester,
        mode: RunMode::Exhaustive,
        seed: 0,
        oracle: true,
        measure_constants: false,
        output: None,
        csv: None,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(t) = cli.threads {
        std::env::set_var(THREADS_ENV, t.to_string());
    }
    match dispatch(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
