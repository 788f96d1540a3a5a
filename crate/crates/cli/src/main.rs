use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use triarr::arrangement::TriangleArrangement;
use triarr::attach::{attach_and_verify, AttachOutcome, SubalgebraSpec};
use triarr::exactla::format_rational;
use triarr::families::{verify_family, Family, FamilyKind, FamilyReport};
use triarr::liealg::g_basis;
use triarr::poly::{cubic_of, SparsePolynomial};
use triarr::prehomog::{relative_invariant_character, transposed, RankConfig, RankMode};
use triarr::records::{write_store, ClassificationRecord, StoreHeader};
use triarr::triangulation::{classify, reduce_arrangement, reduce_with_shears, PolygonTriangulation, TableRow};

/// Prehomogeneity analysis of cubic forms built from triangle arrangements.
///
/// Exit status: 0 on success or a PV verdict, 2 on a NotPV verdict, 1 on error.
#[derive(Parser)]
#[command(name = "triarr", version)]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Seed for every random probe.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random points per rank test.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    /// Coordinates are drawn from 1..=BOUND.
    #[arg(long, global = true, default_value_t = 1 << 31, value_parser = clap::value_parser!(u64).range(2..))]
    coord_bound: u64,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Randomized)]
    mode: Mode,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Randomized,
    Symbolic,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of g[p], PV and dual-PV verdicts for one arrangement.
    Analyze {
        file: PathBuf,
        /// Candidate relative invariants, one polynomial in x1..xn per line.
        #[arg(long)]
        invariants: Option<PathBuf>,
    },
    /// Classify reduced triangulations of n-gons and print the table rows.
    Enumerate {
        #[arg(required = true)]
        n: Vec<usize>,
        /// Store every class record in this JSON-lines file.
        #[arg(long)]
        records: Option<PathBuf>,
    },
    /// Check one family instance against its closed forms.
    Family {
        /// daisy, chain, circular or edge-gluing.
        kind: Family,
        n: usize,
    },
    /// Glue two arrangements at a vertex and check the hypotheses.
    Attach {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        v1: usize,
        #[arg(long)]
        v2: usize,
        /// Entries of h₁ forced to zero, as "i,j;i,j".
        #[arg(long, default_value = "")]
        zeros1: String,
        /// Entries of h₂ forced to zero.
        #[arg(long, default_value = "")]
        zeros2: String,
    },
    /// Reduce a polygon triangulation (or any arrangement) by shears.
    Reduce { file: PathBuf },
}

impl RunArgs {
    fn config(&self) -> RankConfig {
        RankConfig {
            mode: match self.mode {
                Mode::Randomized => RankMode::Randomized,
                Mode::Symbolic => RankMode::Symbolic,
            },
            samples: self.samples as usize,
            coord_bound: self.coord_bound,
            seed: self.seed,
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut s = std::io::stdout().lock();
            s.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string(v)? + "\n")
}

fn read_arrangement(path: &Path) -> Result<TriangleArrangement> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    TriangleArrangement::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn warn_bound(cfg: &RankConfig, dim: usize) {
    if (cfg.coord_bound as u128) < dim as u128 {
        eprintln!("warning: coord bound {} is below dim V = {dim}", cfg.coord_bound);
    }
}

fn status(pv: bool) -> ExitCode {
    if pv {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

#[derive(Serialize)]
struct InvariantLine {
    polynomial: String,
    primal: bool,
    dual: bool,
}

#[derive(Serialize)]
struct AnalyzeOutput {
    config: StoreHeader,
    record: ClassificationRecord,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    invariants: Vec<InvariantLine>,
}

fn analyze(run: &RunArgs, file: &Path, invariants: Option<&Path>) -> Result<ExitCode> {
    let cfg = run.config();
    let a = read_arrangement(file)?;
    warn_bound(&cfg, a.n());
    let record = ClassificationRecord::analyze(&a, &cfg, file.display().to_string())?;
    let mut checks = Vec::new();
    if let Some(path) = invariants {
        let g = g_basis(&cubic_of(&a))?;
        let gt = transposed(&g);
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let q = SparsePolynomial::parse(a.n(), line)?;
            checks.push(InvariantLine {
                polynomial: q.to_string(),
                primal: relative_invariant_character(&q, &g)?.is_relative_invariant,
                dual: relative_invariant_character(&q, &gt)?.is_relative_invariant,
            });
        }
    }
    let pv = record.is_pv();
    let out = AnalyzeOutput {
        config: StoreHeader::new(&cfg, "analyze"),
        record,
        invariants: checks,
    };
    emit(&run.out, &json(&out)?)?;
    Ok(status(pv))
}

fn enumerate(run: &RunArgs, ns: &[usize], records: Option<&Path>) -> Result<ExitCode> {
    let cfg = run.config();
    let h = StoreHeader::new(&cfg, "enumerate");
    let mut csv = format!(
        "# schema={} seed={} samples={} coord_bound={} mode={}\n{}\n",
        h.schema,
        h.seed,
        h.samples,
        h.coord_bound,
        serde_json::to_value(h.mode)?.as_str().unwrap_or_default(),
        TableRow::CSV_HEADER
    );
    let mut stored = Vec::new();
    for &n in ns {
        let start = Instant::now();
        eprintln!("n={n}: classifying");
        let c = classify(n, &cfg.for_task(n as u64))?;
        eprintln!(
            "n={n}: {} triangulations, {} classes, {} PV in {:.1}s",
            c.row.count_a,
            c.row.count_b,
            c.row.count_c,
            start.elapsed().as_secs_f64()
        );
        if !c.reductions_sound {
            bail!("n={n}: a reduction failed its substitution replay");
        }
        if let Some(d) = &c.discrepancy {
            eprintln!("n={n}: row differs from the reference {}", d.expected);
            for k in &c.classes {
                eprintln!("  {} members={} dim_g={} {:?}", k.key, k.members, k.record.dim_g, k.record.pv);
            }
        }
        csv.push_str(&format!("{}\n", c.row));
        stored.extend(c.classes.into_iter().map(|k| k.record));
    }
    if let Some(path) = records {
        write_store(path, &h, &stored)?;
    }
    emit(&run.out, &csv)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct FamilyOutput {
    config: StoreHeader,
    report: FamilyReport,
    failures: Vec<&'static str>,
}

fn family(run: &RunArgs, kind: Family, n: usize) -> Result<ExitCode> {
    let cfg = run.config();
    let k = FamilyKind::new(kind, n)?;
    warn_bound(&cfg, k.vertex_count());
    let report = verify_family(&k, &cfg)?;
    let failures = report.failures();
    let code = if !report.pv.is_pv() {
        ExitCode::from(2)
    } else if !failures.is_empty() {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    };
    emit(
        &run.out,
        &json(&FamilyOutput {
            config: StoreHeader::new(&cfg, k.tag()),
            report,
            failures,
        })?,
    )?;
    Ok(code)
}

#[derive(Serialize)]
struct AttachOutput {
    config: StoreHeader,
    #[serde(flatten)]
    outcome: AttachOutcome,
}

fn attach(run: &RunArgs, files: [&Path; 2], v: [usize; 2], zeros: [&str; 2]) -> Result<ExitCode> {
    let cfg = run.config();
    let a1 = read_arrangement(files[0])?;
    let a2 = read_arrangement(files[1])?;
    let s1 = SubalgebraSpec::parse_zeros(zeros[0])?;
    let s2 = SubalgebraSpec::parse_zeros(zeros[1])?;
    warn_bound(&cfg, a1.n() + a2.n());
    let outcome = attach_and_verify(&a1, v[0], &s1, &a2, v[1], &s2, &cfg)?;
    if !outcome.consistent {
        eprintln!("error: hypotheses hold but the glued arrangement is not PV");
    }
    let pv = outcome.record.is_pv();
    let consistent = outcome.consistent;
    emit(
        &run.out,
        &json(&AttachOutput {
            config: StoreHeader::new(&cfg, "attach"),
            outcome,
        })?,
    )?;
    Ok(if consistent { status(pv) } else { ExitCode::FAILURE })
}

#[derive(Serialize)]
struct ReduceOutput {
    input: TriangleArrangement,
    polygon: bool,
    arrangement: TriangleArrangement,
    black_circles: Vec<usize>,
    steps: Vec<triarr::triangulation::Shear>,
    substitution: Vec<Vec<String>>,
    sound: bool,
}

fn reduce(run: &RunArgs, file: &Path) -> Result<ExitCode> {
    let a = read_arrangement(file)?;
    let polygon = PolygonTriangulation::new(a.n(), a.triangles().iter().copied());
    let r = match &polygon {
        Ok(t) => reduce_with_shears(t),
        Err(_) => reduce_arrangement(&a),
    };
    let s = &r.substitution;
    let out = ReduceOutput {
        input: r.input.clone(),
        polygon: polygon.is_ok(),
        black_circles: r.arrangement.black_circles(),
        arrangement: r.arrangement.clone(),
        steps: r.steps.clone(),
        substitution: (0..s.rows()).map(|i| s.row(i).iter().map(format_rational).collect()).collect(),
        sound: r.is_sound(),
    };
    emit(&run.out, &json(&out)?)?;
    Ok(if out.sound { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn run(cli: Cli) -> Result<ExitCode> {
    if cli.run.jobs > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(cli.run.jobs).build_global()?;
    }
    let r = &cli.run;
    match &cli.command {
        Command::Analyze { file, invariants } => analyze(r, file, invariants.as_deref()),
        Command::Enumerate { n, records } => enumerate(r, n, records.as_deref()),
        Command::Family { kind, n } => family(r, *kind, *n),
        Command::Attach {
            first,
            second,
            v1,
            v2,
            zeros1,
            zeros2,
        } => attach(r, [first, second], [*v1, *v2], [zeros1, zeros2]),
        Command::Reduce { file } => reduce(r, file),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // usage errors share the generic error status; 2 means NotPV
            return if e.use_stderr() { ExitCode::FAILURE } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
