//! Command-line front end.
//!
//! Exit codes: 0 pass, 1 property violation or counterexample, 2 invalid
//! input, 3 hypothesis not met. JSON output is deterministic for a fixed seed.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::Complex;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::algebra::{FiniteDimRealAlgebra, StructureConstant};
use crate::characters::{self, Character, NilpotentWitness};
use crate::corpus;
use crate::error::Error;
use crate::pipeline::{self, BranchPolicy, FuzzConfig, PipelineConfig, Verdict, VerificationReport};
use crate::seminorm::{SeminormDef, SeminormSpec};
use crate::spectral::{self, GelfandEstimate};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "sqnorm", version, about = "Checks seminorms with the square property on finite-dimensional real algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the staged verification on an (algebra, seminorm) pair.
    Verify(VerifyArgs),
    /// Spectrum of an element.
    Spectrum(ElementArgs),
    /// Gelfand radius of an element.
    Radius(RadiusArgs),
    /// Search for quaternion-valued characters.
    Characters(CharacterArgs),
    /// Random search for counterexamples to submultiplicativity.
    Fuzz(FuzzArgs),
    /// List builtin algebras and seminorm pairings.
    Corpus(CorpusArgs),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub algebra: PathBuf,
    #[arg(long)]
    pub seminorm: PathBuf,
    #[arg(long, default_value_t = 2000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 50)]
    pub restarts: usize,
    #[arg(long, default_value_t = 10)]
    pub max_square_iterates: usize,
    /// Take the non-unital branch even when the quotient has a unit.
    #[arg(long)]
    pub force_unitization: bool,
    /// Require the sampled sup-norm to equal the quotient norm.
    #[arg(long)]
    pub complete_characters: bool,
}

#[derive(Args, Debug)]
pub struct ElementArgs {
    #[arg(long)]
    pub algebra: PathBuf,
    /// Whitespace-separated coordinates, e.g. "0 1".
    #[arg(long, allow_hyphen_values = true)]
    pub element: String,
}

#[derive(Args, Debug)]
pub struct RadiusArgs {
    #[command(flatten)]
    pub element: ElementArgs,
    /// Norm for the power sequence; defaults to the operator norm of `L_a`.
    #[arg(long)]
    pub seminorm: Option<PathBuf>,
    #[arg(long, default_value_t = spectral::DEFAULT_SQUARINGS)]
    pub squarings: usize,
}

#[derive(Args, Debug)]
pub struct CharacterArgs {
    #[arg(long)]
    pub algebra: PathBuf,
    #[arg(long, default_value_t = 50)]
    pub restarts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct FuzzArgs {
    #[arg(long, default_value_t = 10_000)]
    pub iterations: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Samples per instance for each check.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct CorpusArgs {
    /// Write `<id>.algebra.json`, `<id>.seminorm.json` and `manifest.json`.
    #[arg(long)]
    pub export: Option<PathBuf>,
}

/// On-disk algebra: `{"name", "dim", "basis", "table": [[i, j, k, v]], "unit"?}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub table: Vec<[f64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<f64>>,
}

impl AlgebraFile {
    pub fn from_algebra(alg: &FiniteDimRealAlgebra) -> Self {
        AlgebraFile {
            name: alg.name().to_string(),
            dim: alg.dim(),
            basis: alg.labels().to_vec(),
            table: alg
                .table()
                .iter()
                .map(|c| [c.i as f64, c.j as f64, c.k as f64, c.value])
                .collect(),
            unit: alg.unit().map(|u| u.to_vec()),
        }
    }

    pub fn build(&self) -> Result<FiniteDimRealAlgebra, Error> {
        let n = self.dim;
        if n == 0 {
            return Err(Error::invalid("dim", "must be positive"));
        }
        if self.basis.len() != n {
            return Err(Error::invalid(
                "basis",
                format!("has {} labels, dim is {n}", self.basis.len()),
            ));
        }
        let mut table = Vec::with_capacity(self.table.len());
        for (r, row) in self.table.iter().enumerate() {
            let field = format!("table[{r}]");
            let mut idx = [0usize; 3];
            for (slot, &x) in idx.iter_mut().zip(&row[..3]) {
                if !(x.fract() == 0.0 && x >= 0.0 && x < n as f64) {
                    return Err(Error::invalid(field, format!("index {x} is not an integer in 0..{n}")));
                }
                *slot = x as usize;
            }
            if !row[3].is_finite() {
                return Err(Error::invalid(field, "value is not finite"));
            }
            table.push(StructureConstant::new(idx[0], idx[1], idx[2], row[3]));
        }
        if let Some(u) = &self.unit {
            if u.len() != n {
                return Err(Error::invalid("unit", format!("has {} entries, dim is {n}", u.len())));
            }
        }
        FiniteDimRealAlgebra::new(self.name.clone(), self.basis.clone(), table, self.unit.clone())
            .map_err(|e| match e {
                Error::AssociativityViolation { .. } => Error::invalid("table", e.to_string()),
                Error::BadUnit { .. } => Error::invalid("unit", e.to_string()),
                other => Error::invalid("table", other.to_string()),
            })
    }
}

fn read_json<T: DeserializeOwned>(path: &Path, what: &str) -> Result<T, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::invalid(what, format!("cannot read {}: {e}", path.display())))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let field = if field == "." { what.to_string() } else { field };
        Error::invalid(field, e.inner().to_string())
    })
}

pub fn load_algebra(path: &Path) -> Result<FiniteDimRealAlgebra, Error> {
    read_json::<AlgebraFile>(path, "algebra")?.build()
}

pub fn load_seminorm(path: &Path, alg: &FiniteDimRealAlgebra) -> Result<SeminormSpec, Error> {
    SeminormSpec::from_def(&read_json::<SeminormDef>(path, "seminorm")?, alg)
}

pub fn parse_element(text: &str, alg: &FiniteDimRealAlgebra) -> Result<Vec<f64>, Error> {
    let coords = text
        .split_whitespace()
        .map(|t| {
            t.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Error::invalid("element", format!("{t:?} is not a finite real")))
        })
        .collect::<Result<Vec<f64>, Error>>()?;
    if coords.len() != alg.dim() {
        return Err(Error::invalid(
            "element",
            format!("has {} coordinates, algebra dimension is {}", coords.len(), alg.dim()),
        ));
    }
    Ok(coords)
}

/// Shortest round-trip form, with `-0` shown as `0`.
fn num(x: f64) -> String {
    format!("{}", x + 0.0)
}

fn complex_text(c: &Complex<f64>) -> String {
    let sign = if c.im.is_sign_negative() && c.im != 0.0 { '-' } else { '+' };
    format!("{}{}{}i", num(c.re), sign, num(c.im.abs()))
}

#[derive(Serialize)]
struct ComplexOut {
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct SpectrumOut<'a> {
    algebra: &'a str,
    element: &'a [f64],
    points: Vec<ComplexOut>,
    radius: f64,
    conjugate_closed: bool,
}

#[derive(Serialize)]
struct RadiusOut<'a> {
    algebra: &'a str,
    element: &'a [f64],
    norm: String,
    gelfand: GelfandEstimate,
    spectral_radius: f64,
}

#[derive(Serialize)]
struct CharactersOut<'a> {
    algebra: &'a str,
    restarts: usize,
    seed: u64,
    characters: &'a [Character],
    nilpotent_witness: Option<NilpotentWitness>,
}

#[derive(Serialize)]
struct CorpusEntryOut {
    id: String,
    algebra: String,
    dim: usize,
    unital: bool,
    seminorm: String,
    branch_policy: BranchPolicy,
    complete_characters: bool,
    expected: Verdict,
    exercises: String,
}

/// Output to print and the exit code.
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("outputs serialize");
    s.push('\n');
    s
}

/// Runs a parsed invocation. Errors become exit code 2 with a diagnostic on
/// stderr naming the offending field.
pub fn run(cli: &Cli, stdout: &mut impl Write, stderr: &mut impl Write) -> i32 {
    match dispatch(cli) {
        Ok(o) => {
            let _ = stdout.write_all(o.stdout.as_bytes());
            o.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INVALID
        }
    }
}

pub fn dispatch(cli: &Cli) -> Result<Outcome, Error> {
    let fmt = cli.format;
    match &cli.command {
        Command::Verify(a) => verify(a, fmt),
        Command::Spectrum(a) => spectrum(a, fmt),
        Command::Radius(a) => radius(a, fmt),
        Command::Characters(a) => characters_cmd(a, fmt),
        Command::Fuzz(a) => fuzz(a, fmt),
        Command::Corpus(a) => corpus_cmd(a, fmt),
    }
}

fn verify(a: &VerifyArgs, fmt: Format) -> Result<Outcome, Error> {
    let alg = load_algebra(&a.algebra)?;
    let p = load_seminorm(&a.seminorm, &alg)?;
    let cfg = PipelineConfig {
        sample_count: a.samples,
        seed: a.seed,
        tol: a.tol,
        restarts: a.restarts,
        max_square_iterates: a.max_square_iterates,
        branch_policy: if a.force_unitization {
            BranchPolicy::ForceUnitization
        } else {
            BranchPolicy::Natural
        },
        known_complete_characters: a.complete_characters,
        ..PipelineConfig::default()
    };
    let report = pipeline::verify_theorem(&alg, &p, &cfg)?;
    let code = match report.verdict {
        Verdict::Pass => EXIT_PASS,
        Verdict::Fail => EXIT_VIOLATION,
        Verdict::HypothesisNotMet => EXIT_HYPOTHESIS,
    };
    let stdout = match fmt {
        Format::Json => json(&report),
        Format::Text => report_text(&report),
    };
    Ok(Outcome { stdout, code })
}

fn opt(x: Option<f64>) -> String {
    x.map_or("-".into(), |v| format!("{v:e}"))
}

pub fn report_text(r: &VerificationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "algebra   {} (dim {})", r.algebra, r.dim);
    let _ = writeln!(s, "seminorm  {}", r.seminorm);
    let _ = writeln!(s, "tolerance {:e}", r.config.tol);
    let _ = writeln!(
        s,
        "stage 1  square residual {:e}; homogeneity {:e}; triangle {:e}",
        r.square_property_residual,
        r.seminorm_axioms.homogeneity_residual,
        r.seminorm_axioms.triangle_violation
    );
    let _ = writeln!(s, "stage 2  m_hat {}", opt(r.m_hat));
    if let Some(k) = r.kernel_dim {
        let _ = writeln!(
            s,
            "stage 3  kernel dim {k}; ideal {}; residual {}",
            r.ideal_check.unwrap_or(false),
            opt(r.ideal_residual)
        );
    }
    if let Some(q) = r.quotient_dim {
        let _ = writeln!(
            s,
            "stage 4  quotient dim {q}; well-defined residual {}; min on unit sphere {}",
            opt(r.quotient_norm_well_defined_residual),
            opt(r.quotient_norm_min)
        );
        let _ = writeln!(
            s,
            "stage 5  normed-algebra excess {}; ||b^2|| = m^-1 ||b||^2 residual {}",
            opt(r.normed_algebra_excess),
            opt(r.scaled_norm_square_residual)
        );
        let iter: Vec<String> = r.iterate_relation_residuals.iter().map(|v| format!("{v:.1e}")).collect();
        let _ = writeln!(s, "stage 6  iterate residuals [{}]", iter.join(", "));
        let _ = writeln!(
            s,
            "stage 7  ||b|| = m r(b) residual {}; eigenvalue agreement {}; nonconvergent {}",
            opt(r.radius_match_residual),
            opt(r.spectral_radius_agreement),
            r.radius_nonconvergent
        );
    }
    if let Some(b) = r.branch {
        let _ = writeln!(s, "stage 8  branch {b:?}; characters {}", r.character_count.unwrap_or(0));
        if let Some(c) = &r.character_stage {
            let _ = writeln!(
                s,
                "         forward {}; inclusion {:e}; equality {:e}; sup excess {:e}; sup gap {:e}",
                c.prop31.forward_ok,
                c.prop31.max_inclusion_distance,
                c.prop31.max_equality_distance,
                c.sup_norm_excess,
                c.sup_norm_gap
            );
        }
        if let Some(u) = &r.unitization_checks {
            let _ = writeln!(
                s,
                "         N(e) {}; (i) ratio {:e}; (iii) residual {:e}; (ii) violations {}/{}",
                num(u.unit_norm),
                u.submultiplicative_ratio,
                u.equivalence_residual,
                u.property_ii_violations,
                u.property_ii_samples
            );
        }
    }
    let _ = writeln!(s, "stage 9  final ratio {}", opt(r.final_submultiplicativity_ratio));
    for f in &r.findings {
        let _ = writeln!(s, "finding: {f}");
    }
    for e in &r.stage_errors {
        let _ = writeln!(s, "error: {e}");
    }
    for f in &r.failed_checks {
        let _ = writeln!(s, "failed: {f}");
    }
    let verdict = match r.verdict {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::HypothesisNotMet => "hypothesis_not_met",
    };
    let _ = writeln!(s, "verdict: {verdict}");
    s
}

/// Conjugate pairs with the positive imaginary part first.
fn display_order(mut pts: Vec<Complex<f64>>) -> Vec<Complex<f64>> {
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(b.im.total_cmp(&a.im)));
    pts
}

fn spectrum(a: &ElementArgs, fmt: Format) -> Result<Outcome, Error> {
    let alg = load_algebra(&a.algebra)?;
    let x = parse_element(&a.element, &alg)?;
    let sp = spectral::spectrum_coords(&alg, &x);
    let closed = sp.is_conjugate_closed(1e-9);
    let pts = display_order(sp.points);
    let stdout = match fmt {
        Format::Json => json(&SpectrumOut {
            algebra: alg.name(),
            element: &x,
            points: pts.iter().map(|c| ComplexOut { re: c.re + 0.0, im: c.im + 0.0 }).collect(),
            radius: sp.radius,
            conjugate_closed: closed,
        }),
        Format::Text => {
            let mut s = String::new();
            for c in &pts {
                let _ = writeln!(s, "{}", complex_text(c));
            }
            let _ = writeln!(s, "radius {}", num(sp.radius));
            s
        }
    };
    Ok(Outcome { stdout, code: EXIT_PASS })
}

fn radius(a: &RadiusArgs, fmt: Format) -> Result<Outcome, Error> {
    let alg = load_algebra(&a.element.algebra)?;
    let x = parse_element(&a.element.element, &alg)?;
    if a.squarings == 0 {
        return Err(Error::invalid("squarings", "must be positive"));
    }
    let p = match &a.seminorm {
        Some(path) => load_seminorm(path, &alg)?,
        None => SeminormSpec::OperatorNorm,
    };
    let sr = spectral::spectral_radius_coords(&alg, &x);
    let (g, code) = match spectral::gelfand_radius_coords(&alg, &x, |v| p.eval_coords(&alg, v), a.squarings) {
        Ok(g) => (g, EXIT_PASS),
        Err(Error::NonConvergence { delta, iterations }) => (
            GelfandEstimate { radius: f64::NAN, delta, squarings: iterations },
            EXIT_VIOLATION,
        ),
        Err(e) => return Err(e),
    };
    let stdout = match fmt {
        Format::Json => json(&RadiusOut {
            algebra: alg.name(),
            element: &x,
            norm: p.kind().to_string(),
            gelfand: g,
            spectral_radius: sr,
        }),
        Format::Text => {
            if code == EXIT_PASS {
                format!(
                    "gelfand radius {} (delta {:e}, {} squarings, norm {})\nspectral radius {}\n",
                    num(g.radius),
                    g.delta,
                    g.squarings,
                    p.kind(),
                    num(sr)
                )
            } else {
                format!(
                    "gelfand radius did not converge (delta {:e} after {} squarings)\nspectral radius {}\n",
                    g.delta,
                    g.squarings,
                    num(sr)
                )
            }
        }
    };
    Ok(Outcome { stdout, code })
}

fn characters_cmd(a: &CharacterArgs, fmt: Format) -> Result<Outcome, Error> {
    let alg = load_algebra(&a.algebra)?;
    if a.restarts == 0 {
        return Err(Error::invalid("restarts", "must be positive"));
    }
    let chars = characters::find_characters(&alg, a.restarts, a.seed);
    let witness = if chars.is_empty() {
        characters::nilpotent_witness(&alg)
    } else {
        None
    };
    let stdout = match fmt {
        Format::Json => json(&CharactersOut {
            algebra: alg.name(),
            restarts: a.restarts,
            seed: a.seed,
            characters: &chars,
            nilpotent_witness: witness,
        }),
        Format::Text => {
            let mut s = format!("{} characters on {}\n", chars.len(), alg.name());
            for (c, ch) in chars.iter().enumerate() {
                let _ = writeln!(s, "character {c} (residual {:e})", ch.residual);
                for (label, q) in alg.labels().iter().zip(&ch.images) {
                    let _ = writeln!(s, "  {label} -> {q}");
                }
            }
            if let Some(w) = witness {
                let _ = writeln!(s, "{}", w.note);
            }
            s
        }
    };
    Ok(Outcome { stdout, code: EXIT_PASS })
}

fn fuzz(a: &FuzzArgs, fmt: Format) -> Result<Outcome, Error> {
    let summary = pipeline::fuzz(&FuzzConfig {
        iterations: a.iterations,
        seed: a.seed,
        samples_per_instance: a.samples,
        tol: a.tol,
    })?;
    let code = if summary.counterexamples.is_empty() { EXIT_PASS } else { EXIT_VIOLATION };
    let stdout = match fmt {
        Format::Json => json(&summary),
        Format::Text => {
            let mut s = format!(
                "{} instances (seed {}): {} meet the hypothesis, {} do not\n",
                a.iterations, a.seed, summary.hypothesis_met, summary.hypothesis_not_met
            );
            for (k, v) in &summary.instances_by_seminorm {
                let _ = writeln!(s, "  {k}: {v}");
            }
            let _ = writeln!(s, "max ratio under the hypothesis {:e}", summary.max_ratio_hypothesis_met);
            let _ = writeln!(s, "counterexamples {}", summary.counterexamples.len());
            for c in &summary.counterexamples {
                let _ = writeln!(s, "  #{} {} {} ratio {:e}", c.index, c.algebra, c.seminorm, c.ratio);
            }
            s
        }
    };
    Ok(Outcome { stdout, code })
}

fn corpus_cmd(a: &CorpusArgs, fmt: Format) -> Result<Outcome, Error> {
    let entries: Vec<CorpusEntryOut> = corpus::manifest()
        .iter()
        .map(|e| CorpusEntryOut {
            id: e.id.to_string(),
            algebra: e.algebra.name().to_string(),
            dim: e.algebra.dim(),
            unital: e.algebra.is_unital(),
            seminorm: e.seminorm.kind().to_string(),
            branch_policy: e.branch_policy,
            complete_characters: e.complete_characters,
            expected: e.expected,
            exercises: e.exercises.to_string(),
        })
        .collect();
    if let Some(dir) = &a.export {
        export(dir, &entries)?;
    }
    let stdout = match fmt {
        Format::Json => json(&entries),
        Format::Text => {
            let mut s = String::from("algebras:\n");
            for alg in corpus::all_algebras() {
                let _ = writeln!(
                    s,
                    "  {} (dim {}, {})",
                    alg.name(),
                    alg.dim(),
                    if alg.is_unital() { "unital" } else { "non-unital" }
                );
            }
            s.push_str("pairings:\n");
            for e in &entries {
                let _ = writeln!(
                    s,
                    "  {} [{} / {}] expected {:?}: {}",
                    e.id, e.algebra, e.seminorm, e.expected, e.exercises
                );
            }
            s
        }
    };
    Ok(Outcome { stdout, code: EXIT_PASS })
}

fn export(dir: &Path, entries: &[CorpusEntryOut]) -> Result<(), Error> {
    let io = |e: std::io::Error| Error::invalid("export", format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    for e in corpus::manifest() {
        fs::write(
            dir.join(format!("{}.algebra.json", e.id)),
            json(&AlgebraFile::from_algebra(&e.algebra)),
        )
        .map_err(io)?;
        fs::write(
            dir.join(format!("{}.seminorm.json", e.id)),
            json(&e.seminorm.to_def()?),
        )
        .map_err(io)?;
    }
    fs::write(dir.join("manifest.json"), json(&entries)).map_err(io)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("sqnorm").chain(args.iter().copied())).unwrap()
    }

    fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
        let p = dir.join(name);
        fs::write(&p, body).unwrap();
        p
    }

    #[test]
    fn algebra_file_round_trip() {
        for alg in corpus::all_algebras() {
            let file = AlgebraFile::from_algebra(&alg);
            let back = file.build().unwrap();
            assert_eq!(back.table(), alg.table());
            assert_eq!(back.unit(), alg.unit());
        }
    }

    #[test]
    fn element_parsing() {
        let c = corpus::complexes();
        assert_eq!(parse_element(" 0  -1.5 ", &c).unwrap(), vec![0.0, -1.5]);
        for bad in ["1", "1 2 3", "1 x", "1 nan"] {
            assert!(matches!(
                parse_element(bad, &c),
                Err(Error::InvalidInput { field, .. }) if field == "element"
            ));
        }
    }

    #[test]
    fn complex_formatting() {
        assert_eq!(complex_text(&Complex::new(-0.0, 1.0)), "0+1i");
        assert_eq!(complex_text(&Complex::new(0.0, -1.0)), "0-1i");
        assert_eq!(complex_text(&Complex::new(2.5, 0.0)), "2.5+0i");
    }

    #[test]
    fn malformed_files_name_the_field() {
        let dir = tempfile::tempdir().unwrap();
        let cases = [
            (r#"{"name":"x","dim":"two","basis":[],"table":[]}"#, "dim"),
            (r#"{"name":"x","dim":1,"basis":["a"],"table":[[0,0,0,"v"]]}"#, "table[0][3]"),
            (r#"{"name":"x","dim":1,"basis":["a","b"],"table":[]}"#, "basis"),
            (r#"{"name":"x","dim":1,"basis":["a"],"table":[[0,0,1,1]]}"#, "table[0]"),
            (r#"{"name":"x","dim":1,"basis":["a"],"table":[[0,0,0,1]],"unit":[2]}"#, "unit"),
            (r#"{"name":"x","basis":["a"],"table":[]}"#, "algebra"),
        ];
        for (body, field) in cases {
            let p = write(dir.path(), "a.json", body);
            match load_algebra(&p) {
                Err(Error::InvalidInput { field: f, message }) => {
                    assert_eq!(f, field, "{body}: {message}")
                }
                other => panic!("{body}: {other:?}"),
            }
        }
        // the missing-field message itself names the field
        let p = write(dir.path(), "a.json", cases[5].0);
        assert!(load_algebra(&p).unwrap_err().to_string().contains("dim"));
    }

    #[test]
    fn spectrum_of_rotation() {
        let dir = tempfile::tempdir().unwrap();
        let a = write(
            dir.path(),
            "c.json",
            &json(&AlgebraFile::from_algebra(&corpus::complexes())),
        );
        let o = dispatch(&cli(&["spectrum", "--algebra", a.to_str().unwrap(), "--element", "0 1"])).unwrap();
        assert_eq!(o.code, EXIT_PASS);
        assert_eq!(o.stdout, "0+1i\n0-1i\nradius 1\n");
    }

    #[test]
    fn exit_codes() {
        let dir = tempfile::tempdir().unwrap();
        let d = dir.path().to_str().unwrap();
        dispatch(&cli(&["corpus", "--export", d])).unwrap();
        let f = |id: &str, kind: &str| format!("{d}/{id}.{kind}.json");
        let verify = |id: &str| {
            dispatch(&cli(&[
                "verify", "--algebra", &f(id, "algebra"), "--seminorm", &f(id, "seminorm"),
                "--samples", "200",
            ]))
            .unwrap()
            .code
        };
        assert_eq!(verify("rrc-spectral-radius"), EXIT_PASS);
        assert_eq!(verify("c-coordinate-sum"), EXIT_HYPOTHESIS);

        let mut out = Vec::new();
        let mut err = Vec::new();
        let bad = cli(&["spectrum", "--algebra", &f("rr-component-sup", "algebra"), "--element", "1"]);
        assert_eq!(run(&bad, &mut out, &mut err), EXIT_INVALID);
        assert!(String::from_utf8(err).unwrap().contains("`element`"));
    }
}
