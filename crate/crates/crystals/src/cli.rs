//! Command-line front end.
//!
//! Exit codes are the only success signal: 0 means the command's claims
//! hold (tensor realized, verdict YES, crystal verified, all fooling claims
//! pass), 1 means a well-formed negative outcome (non-realistic album,
//! verdict NO, verification failure), and 2 means an input, format, or
//! capacity error. `--json-report` writes the machine-readable claim
//! record for any command.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::aip::{self, aip_level_k};
use crate::album::mine_crystal;
use crate::corpus::write_corpus;
use crate::digraph::{brute_homomorphism, Digraph};
use crate::error::{Error, Result};
use crate::fooling::{certify_fooling, is_alternating, is_polymorphism, FunctionTable};
use crate::json::{
    read_json, write_json_atomic, AlbumJson, DigraphJson, TensorJson, WitnessJson,
};
use crate::report::Report;

/// Maximum number of relaxation variables the `fool` command will attempt.
pub const FOOL_VARIABLE_CAP: u128 = 50_000;

#[derive(Parser)]
#[command(name = "crystals", version, about = "Exact integer tensor reconstruction and the affine hierarchy on digraphs")]
pub struct Cli {
    /// Seed for all randomised generation.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    /// Write the machine-readable claim report of this run.
    #[arg(long, global = true, value_name = "PATH")]
    pub json_report: Option<PathBuf>,

    /// Suppress informational output.
    #[arg(long, global = true)]
    pub quiet: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Rebuild a tensor whose projections match an album of pictures.
    Realize {
        #[arg(long)]
        album: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write the replayable construction record.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Mine a cubical tensor whose oriented pair projections all equal a matrix.
    Crystal {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check that every oriented pair projection of a tensor equals a matrix.
    VerifyCrystal {
        #[arg(long)]
        tensor: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Decide one level of the affine relaxation for instance G over template H.
    Aip {
        /// Instance digraph: a JSON file, or shorthand like K4 or C5.
        #[arg(long)]
        g: String,
        /// Template digraph: a JSON file, or shorthand like K3 or C6.
        #[arg(long)]
        h: String,
        #[arg(long)]
        level: usize,
        /// Write the integer witness when the answer is YES.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Run the full fooling pipeline for c colours against d colours.
    Fool {
        #[arg(long)]
        c: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Function-table checks characterising the base level.
    Polymorphism {
        /// Which table to check: "parity" or "constant".
        #[arg(long)]
        check: String,
        #[arg(long)]
        arity: usize,
    },
    /// Generate the deterministic test corpus.
    Corpus {
        #[arg(long)]
        out: PathBuf,
    },
}

/// Parses the command line and runs it, returning the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let mut report = Report::new(&describe(&cli.command), Some(cli.seed));
    match dispatch(&cli, &mut report) {
        Ok(code) => {
            if let Err(e) = finish_report(&cli, &report) {
                eprintln!("error: {e}");
                return 2;
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            let _ = finish_report(&cli, &report);
            match e {
                Error::Realism(_) | Error::Balance(_) => 1,
                _ => 2,
            }
        }
    }
}

fn describe(command: &Command) -> String {
    match command {
        Command::Realize { album, .. } => format!("realize {}", album.display()),
        Command::Crystal { matrix, dim, .. } => format!("crystal {} dim={dim}", matrix.display()),
        Command::VerifyCrystal { tensor, matrix } => {
            format!("verify-crystal {} {}", tensor.display(), matrix.display())
        }
        Command::Aip { g, h, level, .. } => format!("aip {g} {h} level={level}"),
        Command::Fool { c, d, level, .. } => format!("fool c={c} d={d} level={level}"),
        Command::Polymorphism { check, arity } => format!("polymorphism {check} arity={arity}"),
        Command::Corpus { out } => format!("corpus {}", out.display()),
    }
}

fn finish_report(cli: &Cli, report: &Report) -> Result<()> {
    if let Some(path) = &cli.json_report {
        write_json_atomic(path, report)?;
    }
    if !cli.quiet {
        for claim in &report.claims {
            println!(
                "{}: expected {} observed {} [{}]",
                claim.name,
                claim.expected,
                claim.observed,
                if claim.pass { "pass" } else { "FAIL" }
            );
        }
    }
    Ok(())
}

fn dispatch(cli: &Cli, report: &mut Report) -> Result<i32> {
    match &cli.command {
        Command::Realize { album, out, trace } => cmd_realize(album, out, trace.as_deref(), report),
        Command::Crystal { matrix, dim, out } => cmd_crystal(matrix, *dim, out, report),
        Command::VerifyCrystal { tensor, matrix } => cmd_verify_crystal(tensor, matrix, report),
        Command::Aip { g, h, level, witness } => cmd_aip(g, h, *level, witness.as_deref(), report),
        Command::Fool { c, d, level, report: report_path } => {
            cmd_fool(*c, *d, *level, report_path.as_deref(), report)
        }
        Command::Polymorphism { check, arity } => cmd_polymorphism(check, *arity, report),
        Command::Corpus { out } => cmd_corpus(out, cli.seed, report),
    }
}

fn cmd_realize(
    album_path: &Path,
    out: &Path,
    trace_path: Option<&Path>,
    report: &mut Report,
) -> Result<i32> {
    let album = read_json::<AlbumJson>(album_path)?.into_album()?;
    let start = std::time::Instant::now();
    match album.realize_traced() {
        Ok((tensor, trace)) => {
            report.record("album_realistic", true, true, start.elapsed().as_millis());
            let reproduced = album
                .pictures()
                .iter()
                .all(|(index, picture)| tensor.project(index).ok().as_ref() == Some(picture));
            report.record("projections_reproduced", true, reproduced, start.elapsed().as_millis());
            write_json_atomic(out, &TensorJson::from_tensor(&tensor))?;
            if let Some(path) = trace_path {
                write_json_atomic(path, &trace)?;
            }
            Ok(if reproduced { 0 } else { 1 })
        }
        Err(Error::Realism(violation)) => {
            report.record(
                "album_realistic",
                true,
                format!("violation: {violation}"),
                start.elapsed().as_millis(),
            );
            eprintln!("album is not realistic: {violation}");
            Ok(1)
        }
        Err(other) => Err(other),
    }
}

fn cmd_crystal(matrix_path: &Path, dim: usize, out: &Path, report: &mut Report) -> Result<i32> {
    let matrix = read_json::<TensorJson>(matrix_path)?.into_tensor()?;
    let start = std::time::Instant::now();
    match mine_crystal(&matrix, dim) {
        Ok(crystal) => {
            let verified = crate::album::verify_crystal(&crystal, &matrix)?;
            report.record("crystal_verified", true, verified, start.elapsed().as_millis());
            write_json_atomic(out, &TensorJson::from_tensor(&crystal))?;
            Ok(if verified { 0 } else { 1 })
        }
        Err(Error::Balance(msg)) => {
            report.record("crystal_verified", true, format!("unbalanced: {msg}"), start.elapsed().as_millis());
            eprintln!("matrix is not balanced: {msg}");
            Ok(1)
        }
        Err(other) => Err(other),
    }
}

fn cmd_verify_crystal(tensor_path: &Path, matrix_path: &Path, report: &mut Report) -> Result<i32> {
    let tensor = read_json::<TensorJson>(tensor_path)?.into_tensor()?;
    let matrix = read_json::<TensorJson>(matrix_path)?.into_tensor()?;
    let start = std::time::Instant::now();
    let verified = crate::album::verify_crystal(&tensor, &matrix)?;
    report.record("crystal_verified", true, verified, start.elapsed().as_millis());
    Ok(if verified { 0 } else { 1 })
}

/// Accepts a JSON file path or the shorthands `K<n>` (clique) and `C<n>`
/// (cycle).
fn load_digraph(spec: &str) -> Result<Digraph> {
    let shorthand = spec.len() > 1
        && (spec.starts_with('K') || spec.starts_with('C'))
        && spec[1..].chars().all(|c| c.is_ascii_digit());
    if shorthand {
        let n: usize = spec[1..]
            .parse()
            .map_err(|_| Error::Argument(format!("bad digraph shorthand {spec}")))?;
        return if spec.starts_with('K') { Digraph::clique(n) } else { Digraph::cycle(n) };
    }
    read_json::<DigraphJson>(Path::new(spec))?.into_digraph()
}

fn cmd_aip(
    g_spec: &str,
    h_spec: &str,
    level: usize,
    witness_path: Option<&Path>,
    report: &mut Report,
) -> Result<i32> {
    let g = load_digraph(g_spec)?;
    let h = load_digraph(h_spec)?;
    let start = std::time::Instant::now();
    let verdict = aip_level_k(&g, &h, level)?;
    let answer = if verdict.yes { "YES" } else { "NO" };
    report.record("aip_verdict", answer, answer, start.elapsed().as_millis());
    if let (Some(path), Some(witness)) = (witness_path, &verdict.witness) {
        let json = WitnessJson::from_assignment(verdict.system.variables(), witness)?;
        write_json_atomic(path, &json)?;
    }
    Ok(if verdict.yes { 0 } else { 1 })
}

fn cmd_fool(
    c: usize,
    d: usize,
    level: usize,
    report_path: Option<&Path>,
    report: &mut Report,
) -> Result<i32> {
    if c < 3 || c > d {
        return Err(Error::Argument(format!(
            "fooling needs 3 <= c <= d, got c={c} d={d}"
        )));
    }
    if level < 2 {
        return Err(Error::Argument(format!("fooling needs level >= 2, got {level}")));
    }
    let instance = Digraph::clique(d + 1)?;
    let template = Digraph::clique(c)?;
    let variables = aip::variable_count(&instance, &template, level);
    if variables > FOOL_VARIABLE_CAP {
        return Err(Error::Capacity(format!(
            "the level-{level} system for K{} over K{c} would have {variables} variables (cap {FOOL_VARIABLE_CAP})",
            d + 1
        )));
    }
    let search_space = (d as u128).checked_pow(d as u32 + 1).unwrap_or(u128::MAX);
    if search_space > crate::digraph::DEFAULT_SEARCH_CAP {
        return Err(Error::Capacity(format!(
            "the homomorphism search space for K{} into K{d} is {search_space} (cap {})",
            d + 1,
            crate::digraph::DEFAULT_SEARCH_CAP
        )));
    }

    report.check(&format!("aip_level{level}_K{}_K{c}", d + 1), "YES", || {
        Ok(if aip_level_k(&instance, &template, level)?.yes { "YES" } else { "NO" })
    })?;
    report.check(&format!("witness_certified_K{}_{c}_colours", d + 1), true, || {
        certify_fooling(&instance, c, level)
    })?;
    report.check(&format!("no_homomorphism_K{}_K{d}", d + 1), true, || {
        Ok(brute_homomorphism(&instance, &Digraph::clique(d)?)?.is_none())
    })?;

    if let Some(path) = report_path {
        write_json_atomic(path, report)?;
    }
    Ok(if report.all_pass() { 0 } else { 1 })
}

fn cmd_polymorphism(check: &str, arity: usize, report: &mut Report) -> Result<i32> {
    if arity < 3 || arity.is_multiple_of(2) {
        return Err(Error::Argument(format!(
            "checks need an odd arity of at least 3, got {arity}"
        )));
    }
    let k2 = Digraph::clique(2)?;
    match check {
        "parity" => {
            let table = FunctionTable::parity(arity)?;
            report.check("parity_alternating", true, || is_alternating(&table))?;
            report.check("parity_polymorphism_of_k2", true, || is_polymorphism(&table, &k2))?;
        }
        "constant" => {
            let table = FunctionTable::constant(2, arity, 1)?;
            report.check("constant_alternating", true, || is_alternating(&table))?;
            report.check("constant_polymorphism_of_k2", false, || is_polymorphism(&table, &k2))?;
        }
        other => {
            return Err(Error::Argument(format!(
                "unknown check {other:?}; expected \"parity\" or \"constant\""
            )));
        }
    }
    Ok(if report.all_pass() { 0 } else { 1 })
}

fn cmd_corpus(out: &Path, seed: u64, report: &mut Report) -> Result<i32> {
    let start = std::time::Instant::now();
    let summary = write_corpus(out, seed)?;
    report.record(
        "corpus_files",
        summary.files.len(),
        summary.files.len(),
        start.elapsed().as_millis(),
    );
    Ok(0)
}
