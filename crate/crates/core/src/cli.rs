//! Command-line front end.
//!
//! Exit status is 0 on success (including passing verifications), 1 when a
//! verification fails or output cannot be written, and 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::catalog::{
    height_bijection, height_slices_mismatch, increasing_sequences, motive_a, motive_fl, motive_gl,
    motive_gr, motive_v, reduced_motive_x, verify_splitting, Signature,
};
use crate::error::Error;
use crate::hopf::{derive_adjoint_coaction, dual_algebra};
use crate::realization::thom_decomposition_check;
use crate::spectral::{
    build_e2, chart_svg, check_ss_description, differential_targets, einfty_rank_check,
    write_chart, E2Page, Variant,
};
use crate::tate::TateMotive;

#[derive(Parser, Debug)]
#[command(name = "tatecalc", version, about = "Pure Tate motive calculator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the motive of a variety as a list of Tate summands.
    Motive {
        #[arg(value_enum)]
        kind: MotiveKind,
        #[command(flatten)]
        opts: Opts,
    },
    /// Run one of the exact checks; exits 1 if it fails.
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[command(flatten)]
        opts: Opts,
    },
    /// Print the generators of an E2 page, optionally with candidate
    /// differential targets.
    E2 {
        #[arg(value_enum)]
        mode: Option<E2Mode>,
        #[command(flatten)]
        opts: Opts,
    },
    /// Write an SVG chart of an E2 page (to stdout without --svg).
    Chart {
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Args, Debug)]
struct Opts {
    #[arg(long, allow_hyphen_values = true)]
    n: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<u32>,
    /// Comma-separated strictly increasing list, e.g. 1,2,3
    #[arg(long, allow_hyphen_values = true, value_parser = clap::value_parser!(Signature))]
    sig: Option<Signature>,
    /// Weight bound for E2 pages and rank checks
    #[arg(long, env = "TATECALC_MAX_WEIGHT", allow_hyphen_values = true)]
    max_weight: Option<u32>,
    /// Largest word length for the dual algebra (defaults to n)
    #[arg(long, allow_hyphen_values = true)]
    max_word: Option<u32>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = VariantArg::Full)]
    variant: VariantArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MotiveKind {
    Gl,
    Gr,
    Fl,
    V,
    A,
    X,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Check {
    Splitting,
    Adjoint,
    DualExterior,
    Thom,
    Bijection,
    Ss,
    Rank,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum E2Mode {
    Targets,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Poly,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Full,
    Flag,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Full => Variant::Full,
            VariantArg::Flag => Variant::Flag,
        }
    }
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(e) => Failure::Runtime(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

struct Output {
    text: String,
    pass: bool,
}

impl Output {
    fn data(text: String) -> Self {
        Output { text, pass: true }
    }
}

fn require<T: Clone>(value: &Option<T>, flag: &str, what: &str) -> Result<T, Failure> {
    value
        .clone()
        .ok_or_else(|| Failure::Usage(format!("{what} needs {flag}")))
}

fn max_weight(opts: &Opts, what: &str) -> Result<u32, Failure> {
    opts.max_weight.ok_or_else(|| {
        Failure::Usage(format!(
            "{what} needs --max-weight (or TATECALC_MAX_WEIGHT)"
        ))
    })
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn unsupported(format: Format, what: &str) -> Failure {
    Failure::Usage(format!("--format {format:?} is not available for {what}").to_lowercase())
}

/// Report rendering: the verdict line alone by default, details with
/// `--format table`, or JSON.
fn report(
    format: Option<Format>,
    what: &str,
    pass: bool,
    verdict: String,
    table: impl FnOnce() -> String,
    as_json: impl FnOnce() -> String,
) -> Result<Output, Failure> {
    let text = match format {
        None => format!("{verdict}\n"),
        Some(Format::Table) => table(),
        Some(Format::Json) => as_json(),
        Some(f) => return Err(unsupported(f, what)),
    };
    Ok(Output { text, pass })
}

fn show_motive(motive: &TateMotive, format: Option<Format>) -> String {
    match format.unwrap_or(Format::Table) {
        Format::Table => motive.to_table(),
        Format::Poly => format!("{}\n", motive.poincare()),
        Format::Json => json(motive),
    }
}

fn motive(kind: MotiveKind, opts: &Opts) -> Result<Output, Failure> {
    let m = match kind {
        MotiveKind::Gl => motive_gl(require(&opts.n, "--n", "motive gl")?)?,
        MotiveKind::Gr => motive_gr(
            require(&opts.m, "--m", "motive gr")?,
            require(&opts.n, "--n", "motive gr")?,
        )?,
        MotiveKind::V => motive_v(
            require(&opts.m, "--m", "motive v")?,
            require(&opts.n, "--n", "motive v")?,
        )?,
        MotiveKind::Fl => motive_fl(&require(&opts.sig, "--sig", "motive fl")?),
        MotiveKind::A => motive_a(&require(&opts.sig, "--sig", "motive a")?)?,
        MotiveKind::X => reduced_motive_x(
            require(&opts.m, "--m", "motive x")?,
            &require(&opts.sig, "--sig", "motive x")?,
        )?,
    };
    Ok(Output::data(show_motive(&m, opts.format)))
}

fn verify(check: Check, opts: &Opts) -> Result<Output, Failure> {
    let format = opts.format;
    match check {
        Check::Splitting => {
            let r = verify_splitting(require(&opts.n, "--n", "verify splitting")?)?;
            report(
                format,
                "verify splitting",
                r.pass,
                r.verdict(),
                || r.to_text(),
                || json(&r),
            )
        }
        Check::Adjoint => {
            let n = require(&opts.n, "--n", "verify adjoint")?;
            let d = derive_adjoint_coaction(n)?;
            let pass = d.formula.is_trivial();
            let verdict = if pass {
                format!(
                    "PASS (ρ[i] ↦ 1⊗ρ[i] for i = 1..{n}, widest intermediate step {} terms)",
                    d.max_intermediate_terms()
                )
            } else {
                let i = d
                    .formula
                    .images
                    .keys()
                    .copied()
                    .find(|&i| {
                        let one = crate::hopf::Monomial::generator(i);
                        d.formula.apply(&one).map(|x| x.len() != 1).unwrap_or(true)
                    })
                    .unwrap_or(1);
                format!(
                    "FAIL: ρ[{i}] ↦ {}",
                    d.formula.render_image(i).unwrap_or_default()
                )
            };
            let table = || {
                let mut s = String::new();
                for (i, steps) in &d.traces {
                    s.push_str(&format!("ρ[{i}]\n"));
                    for step in steps {
                        s.push_str(&format!(
                            "  {:<12} {}\n",
                            step.name,
                            step.element.render(&["ρ"; 3])
                        ));
                    }
                }
                s.push_str(&verdict);
                s.push('\n');
                s
            };
            report(
                format,
                "verify adjoint",
                pass,
                verdict.clone(),
                table,
                || json(&d.to_json()),
            )
        }
        Check::DualExterior => {
            let n = require(&opts.n, "--n", "verify dual-exterior")?;
            let max_word = opts.max_word.unwrap_or(n) as usize;
            let dual = dual_algebra(n, max_word)?;
            let r = dual.check_exterior();
            let verdict = match &r.first_failure {
                None => format!(
                    "PASS (exterior on {n} generators, {} structure constants)",
                    dual.num_constants()
                ),
                Some(msg) => format!("FAIL: {msg}"),
            };
            let table = || {
                format!(
                    "squares vanish      {}\nanticommute         {}\nunit                {}\ndisjoint products   {}\noverlapping vanish  {}\n{verdict}\n",
                    r.squares_vanish,
                    r.anticommute,
                    r.unit,
                    r.disjoint_products_are_basis,
                    r.overlapping_products_vanish
                )
            };
            report(
                format,
                "verify dual-exterior",
                r.pass,
                verdict.clone(),
                table,
                || json(&r),
            )
        }
        Check::Thom => {
            let r = thom_decomposition_check(require(&opts.n, "--n", "verify thom")?)?;
            report(
                format,
                "verify thom",
                r.pass,
                r.verdict(),
                || r.to_text(),
                || json(&r),
            )
        }
        Check::Bijection => {
            let m = require(&opts.m, "--m", "verify bijection")?;
            let sig = require(&opts.sig, "--sig", "verify bijection")?;
            if m >= sig.first() {
                return Err(Failure::Usage(format!(
                    "verify bijection needs m < n_1, got m={m}, n_1={}",
                    sig.first()
                )));
            }
            let pairs = height_bijection(m, sig.first())?;
            let images: Vec<_> = pairs.iter().map(|p| p.sequence.clone()).collect();
            let onto = images == increasing_sequences(m, sig.first()).collect::<Vec<_>>();
            let bad_pair = pairs.iter().find(|p| !p.preserves_bidegree());
            let mismatch = height_slices_mismatch(m, &sig)?;
            let pass = onto && bad_pair.is_none() && mismatch.is_none();
            let verdict = if pass {
                format!("PASS ({} tuples; height-{m} slices agree)", pairs.len())
            } else if let Some((b, x, y)) = &mismatch {
                format!("FAIL: at {b} the extended signature has {x} summands, ({sig}) has {y}")
            } else if let Some(p) = bad_pair {
                format!(
                    "FAIL: tuple {:?} ↦ {} changes the bidegree",
                    p.tuple, p.sequence
                )
            } else {
                "FAIL: the tuple map does not hit every increasing sequence".to_string()
            };
            let table = || {
                let mut s = String::new();
                for p in &pairs {
                    s.push_str(&format!("{:?} ↦ {}\n", p.tuple, p.sequence));
                }
                s.push_str(&verdict);
                s.push('\n');
                s
            };
            let as_json = || {
                json(&serde_json::json!({
                    "m": m,
                    "signature": sig,
                    "pairs": pairs,
                    "pass": pass,
                }))
            };
            report(
                format,
                "verify bijection",
                pass,
                verdict.clone(),
                table,
                as_json,
            )
        }
        Check::Ss => {
            let sig = require(&opts.sig, "--sig", "verify ss")?;
            let r = check_ss_description(&sig, max_weight(opts, "verify ss")?)?;
            report(
                format,
                "verify ss",
                r.pass,
                r.verdict(),
                || r.to_text(),
                || json(&r),
            )
        }
        Check::Rank => {
            let sig = require(&opts.sig, "--sig", "verify rank")?;
            let r = einfty_rank_check(&sig, max_weight(opts, "verify rank")?)?;
            report(
                format,
                "verify rank",
                r.pass,
                r.verdict(),
                || r.to_text(),
                || json(&r),
            )
        }
    }
}

fn page_from(opts: &Opts, what: &str) -> Result<E2Page, Failure> {
    let sig = require(&opts.sig, "--sig", what)?;
    let w = max_weight(opts, what)?;
    Ok(build_e2(&sig, opts.variant.into(), w)?)
}

#[derive(Serialize)]
struct TargetSet {
    source: String,
    page: u32,
    targets: Vec<String>,
}

fn target_sets(page: &E2Page) -> Vec<TargetSet> {
    let last = (2 * page.max_weight()).max(2);
    let mut out = Vec::new();
    for g in page
        .exterior_generators()
        .iter()
        .chain(page.module_generators())
    {
        let Some(class) = page.generator_class(g) else {
            continue;
        };
        for s in 2..=last {
            let targets = differential_targets(page, &class, s).expect("s ≥ 2");
            if !targets.is_empty() {
                out.push(TargetSet {
                    source: g.label(),
                    page: s,
                    targets: targets.iter().map(|c| page.label(c)).collect(),
                });
            }
        }
    }
    out
}

fn e2(mode: Option<E2Mode>, opts: &Opts) -> Result<Output, Failure> {
    let page = page_from(opts, "e2")?;
    let with_targets = mode.is_some();
    let basis_size = page.basis().len();
    if let Some(path) = &opts.svg {
        write_chart(&page, path)?;
    }
    let text = match opts.format.unwrap_or(Format::Table) {
        Format::Table => {
            let mut s = format!(
                "E2 page ({}) {}, q ≤ {}\n{:<8} {:>3} {:>3} {:>3} {:>4}\n",
                page.signature(),
                page.variant(),
                page.max_weight(),
                "gen",
                "l",
                "p",
                "q",
                "tch"
            );
            for g in page.generators() {
                let t = g.tridegree;
                s.push_str(&format!(
                    "{:<8} {:>3} {:>3} {:>3} {:>4}\n",
                    g.label(),
                    t.l,
                    t.p,
                    t.q,
                    g.tch()
                ));
            }
            s.push_str(&format!("basis classes: {basis_size}\n"));
            if with_targets {
                for t in target_sets(&page) {
                    s.push_str(&format!(
                        "{} d_{} → {}\n",
                        t.source,
                        t.page,
                        t.targets.join(", ")
                    ));
                }
            }
            s
        }
        Format::Json => {
            let generators: Vec<_> = page
                .generators()
                .map(|g| {
                    serde_json::json!({
                        "label": g.label(),
                        "kind": g.kind,
                        "tridegree": g.tridegree,
                        "tch": g.tch(),
                    })
                })
                .collect();
            let mut v = serde_json::json!({
                "signature": page.signature(),
                "variant": page.variant(),
                "max_weight": page.max_weight(),
                "generators": generators,
                "basis_size": basis_size,
            });
            if with_targets {
                v["targets"] = serde_json::to_value(target_sets(&page)).expect("serializes");
            }
            json(&v)
        }
        Format::Poly => return Err(unsupported(Format::Poly, "e2")),
    };
    Ok(Output::data(text))
}

fn chart(opts: &Opts) -> Result<Output, Failure> {
    let page = page_from(opts, "chart")?;
    match &opts.svg {
        Some(path) => {
            write_chart(&page, path)?;
            Ok(Output::data(String::new()))
        }
        None => Ok(Output::data(chart_svg(&page))),
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    let result = match &cli.command {
        Command::Motive { kind, opts } => motive(*kind, opts),
        Command::Verify { check, opts } => verify(*check, opts),
        Command::E2 { mode, opts } => e2(*mode, opts),
        Command::Chart { opts } => chart(opts),
    };
    match result {
        Ok(output) => {
            if let Err(e) = out
                .write_all(output.text.as_bytes())
                .and_then(|_| out.flush())
            {
                let _ = writeln!(err, "error: {e}");
                return 1;
            }
            if output.pass {
                0
            } else {
                1
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("tatecalc").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn motive_poly() {
        let (code, out, _) = call(&["motive", "gl", "--n", "2", "--format", "poly"]);
        assert_eq!(code, 0);
        assert_eq!(out, "1 + t*u + t^3*u^2 + t^4*u^3\n");
    }

    #[test]
    fn splitting_verdict() {
        let (code, out, _) = call(&["verify", "splitting", "--n", "10"]);
        assert_eq!(code, 0);
        assert_eq!(out, "PASS (1023 summands matched)\n");
    }

    #[test]
    fn usage_errors() {
        let (code, _, err) = call(&["motive", "fl", "--sig", "3,2"]);
        assert_eq!(code, 2);
        assert!(
            err.contains("--sig") && err.contains("strictly increasing"),
            "{err}"
        );
        let (code, _, err) = call(&["motive", "gl", "--n", "-1"]);
        assert_eq!(code, 2);
        assert!(err.contains("--n"), "{err}");
        let (code, _, err) = call(&["motive", "fl", "--sig", "-1,2"]);
        assert_eq!(code, 2);
        assert!(err.contains("nonnegative"), "{err}");
        let (code, _, err) = call(&["motive", "gr", "--n", "4"]);
        assert_eq!(code, 2);
        assert!(err.contains("--m"), "{err}");
        let (code, _, _) = call(&["frobnicate"]);
        assert_eq!(code, 2);
        let (code, _, err) = call(&["e2", "--sig", "3", "--max-weight", "2"]);
        assert_eq!(code, 2);
        assert!(err.contains("two entries"), "{err}");
    }

    #[test]
    fn help_goes_to_stdout() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("verify"));
    }
}
