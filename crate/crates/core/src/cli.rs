//! Command-line front end. Exit status: 0 when every check passes, 1 when a
//! check fails, 2 on usage, parse or I/O errors.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactq::fraction_string;
use crate::gfspaces::FieldSpec;
use crate::grassmann::{verify_spectrum, SchemeInstance, SpectrumReport};
use crate::identities::{sweep, SweepConfig};
use crate::steiner::io::{load_design_document, save_family_file, DesignDocument, DesignFamilyFile};
use crate::steiner::{
    enumerate_steiner, run_dimension, sample_steiner, verify_design, Acquisition, DimensionReport, ParamSet,
    ParamSummary, WitnessReport,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "qsteiner", version, about = "Exact checks for q-Steiner systems and their span")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sweep the q-series identities over a parameter grid.
    Identities(RunConfig),
    /// Check the spectrum of the Grassmann scheme J_q(n, k).
    Scheme(RunConfig),
    /// Enumerate (or sample) labeled q-Steiner systems and write them out.
    Enumerate(RunConfig),
    /// Run the full dimension pipeline.
    Dimension(RunConfig),
    /// Verify the design(s) in a file.
    VerifyDesign(RunConfig),
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args, Debug, Clone, Default)]
pub struct RunConfig {
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Field order, or a comma-separated list for `identities`.
    #[arg(long, value_delimiter = ',')]
    pub q: Vec<u64>,
    #[arg(long, default_value_t = 6)]
    pub max_n: i64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Sample systems instead of enumerating them all.
    #[arg(long)]
    pub sample: bool,
    /// Designs to sample; for `dimension`, designs per sampling batch.
    #[arg(long, default_value_t = 32)]
    pub count: usize,
    /// Report file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Design file for `verify-design`.
    #[arg(long)]
    pub designs: Option<PathBuf>,
}

impl RunConfig {
    fn single_q(&self) -> Result<u64> {
        match self.q.as_slice() {
            [q] => Ok(*q),
            [] => Err(Error::InvalidParams("--q is required".into())),
            _ => Err(Error::InvalidParams("this command takes a single --q".into())),
        }
    }

    fn require(v: Option<usize>, flag: &str) -> Result<usize> {
        v.ok_or_else(|| Error::InvalidParams(format!("--{flag} is required")))
    }

    fn params(&self) -> Result<ParamSet> {
        ParamSet::new(
            Self::require(self.t, "t")?,
            Self::require(self.k, "k")?,
            Self::require(self.n, "n")?,
            self.single_q()?,
        )
    }
}

/// A finished command: whether its checks passed and what to print.
struct Outcome {
    passed: bool,
    summary: String,
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn finish(path: &Path, w: BufWriter<File>) -> Result<()> {
    w.into_inner()
        .map_err(|e| Error::Io { path: path.to_path_buf(), source: e.into_error() })?
        .sync_all()
        .map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

/// Writes `report` as JSON or as `key,value` CSV rows.
fn emit<T: Serialize>(cfg: &RunConfig, report: &T, rows: &[(String, String)], stdout: &mut dyn Write) -> Result<()> {
    let mut buf = Vec::new();
    match cfg.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut buf, report)?;
            buf.push(b'\n');
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut buf);
            w.write_record(["key", "value"])?;
            for (k, v) in rows {
                w.write_record([k, v])?;
            }
            w.flush().map_err(|e| Error::Parse(e.to_string()))?;
        }
    }
    write_bytes(cfg, &buf, stdout)
}

fn write_bytes(cfg: &RunConfig, buf: &[u8], stdout: &mut dyn Write) -> Result<()> {
    match &cfg.out {
        Some(path) => {
            let mut w = create(path)?;
            w.write_all(buf).map_err(|source| Error::Io { path: path.clone(), source })?;
            finish(path, w)
        }
        None => stdout.write_all(buf).map_err(|source| Error::Io { path: "<stdout>".into(), source }),
    }
}

fn run_identities(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<Outcome> {
    let qs = if cfg.q.is_empty() { vec![2, 3] } else { cfg.q.clone() };
    for &q in &qs {
        FieldSpec::new(q)?;
    }
    let result = sweep(&SweepConfig { qs, max_n: cfg.max_n });
    let mut buf = Vec::new();
    match cfg.format {
        Format::Json => result.write_json(&mut buf)?,
        Format::Csv => result.write_csv(&mut buf)?,
    }
    write_bytes(cfg, &buf, stdout)?;
    let mut summary = result
        .summary()
        .iter()
        .map(|(name, (checked, failed))| format!("{name}: {checked} checked, {failed} failed"))
        .collect::<Vec<_>>()
        .join("\n");
    if summary.is_empty() {
        summary = "empty sweep".into();
    }
    Ok(Outcome { passed: result.all_equal(), summary })
}

fn spectrum_rows(r: &SpectrumReport) -> Vec<(String, String)> {
    let mut rows = vec![
        ("points".into(), r.points.to_string()),
        ("multiplicity_sum".into(), fraction_string(&r.multiplicity_sum)),
        ("all_ones_ok".into(), r.all_ones_ok.to_string()),
    ];
    for rel in &r.relations {
        for e in &rel.eigenvalues {
            rows.push((format!("nu[{}][{}]", rel.i, e.r), fraction_string(&e.value)));
            rows.push((format!("rank_ok[{}][{}]", rel.i, e.r), e.rank_ok.to_string()));
        }
        rows.push((format!("trace_ok[{}]", rel.i), rel.trace_ok.to_string()));
    }
    rows.push(("passed".into(), r.passed.to_string()));
    rows
}

fn run_scheme(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<Outcome> {
    let n = RunConfig::require(cfg.n, "n")?;
    let k = RunConfig::require(cfg.k, "k")?;
    let scheme = SchemeInstance::new(n, k, FieldSpec::new(cfg.single_q()?)?)?;
    let report = verify_spectrum(&scheme)?;
    emit(cfg, &report, &spectrum_rows(&report), stdout)?;
    Ok(Outcome {
        passed: report.passed,
        summary: format!("J_{}({n}, {k}): {} points, spectrum {}", report.q, report.points, verdict(report.passed)),
    })
}

fn run_enumerate(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<Outcome> {
    let params = cfg.params()?;
    let (designs, partial) = if cfg.sample {
        let s = sample_steiner(&params, cfg.seed, cfg.count)?;
        (s.designs, s.partial)
    } else {
        (enumerate_steiner(&params)?, false)
    };
    let file = DesignFamilyFile::from_designs(&params, &designs)?;
    match (&cfg.out, cfg.format) {
        (Some(path), Format::Json) => save_family_file(path, &file)?,
        _ => {
            let rows: Vec<(String, String)> = designs
                .iter()
                .enumerate()
                .map(|(i, d)| {
                    (format!("design[{i}]"), d.blocks().iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
                })
                .collect();
            emit(cfg, &file, &rows, stdout)?;
        }
    }
    let summary = format!(
        "{params}: {} system(s){}",
        designs.len(),
        if partial { ", sampling budget ran out" } else { "" }
    );
    Ok(Outcome { passed: !partial, summary })
}

fn dimension_rows(r: &DimensionReport) -> Vec<(String, String)> {
    let c = &r.certificate;
    let mut rows = vec![
        ("mode".into(), r.mode.to_string()),
        ("designs".into(), r.designs.to_string()),
        ("all_valid".into(), r.all_valid.to_string()),
        ("rank_w".into(), c.rank_w.to_string()),
        ("lower_bound".into(), c.lower_bound.to_string()),
        ("upper_bound".into(), c.upper_bound.to_string()),
        ("dimension".into(), r.dimension.clone()),
    ];
    if let Some(f) = &r.full_family {
        rows.push(("kappa".into(), fraction_string(&f.closed_form.kappa)));
        for (i, v) in f.closed_form.kappa_i.iter().enumerate() {
            rows.push((format!("kappa_{i}"), fraction_string(v)));
        }
        rows.push(("gram_check".into(), f.gram_check.to_string()));
        for (r, m) in f.mu.iter().enumerate() {
            rows.push((format!("mu_{r}"), m.clone()));
        }
        rows.push(("spectral_ok".into(), f.spectral.passed.to_string()));
    }
    rows.push(("intersections_ok".into(), r.intersections.passed.to_string()));
    rows.push(("passed".into(), r.passed.to_string()));
    rows
}

fn run_dimension_cmd(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<Outcome> {
    let params = cfg.params()?;
    let how = if cfg.sample { Acquisition::Sample { seed: cfg.seed, batch: cfg.count } } else { Acquisition::Enumerate };
    let report = run_dimension(&params, how)?;
    emit(cfg, &report, &dimension_rows(&report), stdout)?;
    let c = &report.certificate;
    let mut summary = format!(
        "{params}: N = {}, {} <= rank U <= {}, dimension formula {}",
        report.designs, c.lower_bound, c.upper_bound, report.dimension
    );
    if let Some(f) = &report.full_family {
        summary += &format!(", mu = [{}]", f.mu.join(", "));
    }
    summary += &format!(": {}", verdict(report.passed));
    Ok(Outcome { passed: report.passed, summary })
}

#[derive(Serialize)]
struct VerifyEntry {
    design: usize,
    blocks: usize,
    valid: bool,
    witness: Option<WitnessReport>,
}

#[derive(Serialize)]
struct VerifyReport {
    params: ParamSummary,
    lambda: u64,
    designs: Vec<VerifyEntry>,
    passed: bool,
}

fn run_verify_design(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<Outcome> {
    let path = cfg.designs.as_ref().ok_or_else(|| Error::InvalidParams("--designs <file> is required".into()))?;
    let (params, lambda, families) = match load_design_document(path)? {
        DesignDocument::Single(s) => (s.params, s.lambda, vec![s.blocks]),
        DesignDocument::Family(f) => (f.params, 1, f.designs),
    };
    let mut entries = Vec::new();
    for (i, blocks) in families.iter().enumerate() {
        let v = verify_design(blocks, &params, lambda)?;
        entries.push(VerifyEntry { design: i, blocks: v.block_count, valid: v.valid, witness: v.witness.as_ref().map(Into::into) });
    }
    let passed = entries.iter().all(|e| e.valid);
    let mut lines = vec![format!("{params}, lambda = {lambda}: {} design(s)", entries.len())];
    for e in entries.iter().filter(|e| !e.valid) {
        let w = e.witness.as_ref().expect("invalid design has a witness");
        lines.push(format!("design {}: t-subspace {:?} (index {}) lies in {} blocks", e.design, w.basis, w.index, w.coverage));
    }
    lines.push(verdict(passed).into());
    let rows: Vec<(String, String)> = entries.iter().map(|e| (format!("design[{}]", e.design), e.valid.to_string())).collect();
    let report = VerifyReport { params: (&params).into(), lambda, designs: entries, passed };
    emit(cfg, &report, &rows, stdout)?;
    Ok(Outcome { passed, summary: lines.join("\n") })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Parses `args` (including the program name) and runs the command. The
/// report goes to `--out` or `stdout`; the summary and diagnostics to `stderr`.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_PASS };
        }
    };
    let result = match &cli.command {
        Command::Identities(c) => run_identities(c, stdout),
        Command::Scheme(c) => run_scheme(c, stdout),
        Command::Enumerate(c) => run_enumerate(c, stdout),
        Command::Dimension(c) => run_dimension_cmd(c, stdout),
        Command::VerifyDesign(c) => run_verify_design(c, stdout),
    };
    match result {
        Ok(o) => {
            let _ = writeln!(stderr, "{}", o.summary);
            if o.passed {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_ERROR
        }
    }
}
