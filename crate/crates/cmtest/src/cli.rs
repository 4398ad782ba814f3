//! Command-line interface.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use cmtest_core::{ColormapSpec, EvaluationBundle, FunctionId, ScalarField, TestSpec};

use crate::error::{Error, Result};
use crate::formats::{self, colormap};
use crate::report::{self, Summary};
use crate::{generate, service};

const CATALOG_HINT: &str = "run `cmtest catalog` to list test functions and their parameters";

#[derive(Debug, Parser)]
#[command(name = "cmtest", version, about = "Test continuous colormaps against analytic scalar fields")]
pub struct Cli {
    /// Worker threads for generation (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a test field and write it as .csv or .cmtf.
    Generate {
        #[command(flatten)]
        test: TestArgs,
        /// Output field file (.csv or .cmtf).
        #[arg(long)]
        out: PathBuf,
    },
    /// Render a field through a colormap to .png or .ppm.
    Render {
        /// Input field (.csv, .cmtf or .pgm).
        #[arg(long)]
        field: PathBuf,
        /// Colormap spec file, or a built-in name (grayscale, cool-warm).
        #[arg(long)]
        colormap: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate a colormap on a field and write a report directory.
    Evaluate {
        #[arg(long)]
        field: PathBuf,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// Generate a test field, evaluate a colormap on it and write a report
    /// directory that records the test spec.
    Report {
        #[command(flatten)]
        test: TestArgs,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// List test functions and their parameter schemas.
    Catalog {
        /// Print JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Start the HTTP service.
    Serve {
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Persist named colormap specs as JSON files in this directory.
        #[arg(long)]
        spec_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct TestArgs {
    /// Test function id (see `cmtest catalog`).
    #[arg(long)]
    pub function: String,
    /// Function parameter, repeatable: --param k=v.
    #[arg(long = "param", value_name = "K=V")]
    pub params: Vec<String>,
    /// Grid resolution WxH.
    #[arg(long, default_value = "512x512")]
    pub size: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Colormap spec file, or a built-in name (grayscale, cool-warm).
    #[arg(long)]
    pub colormap: String,
    /// lab, din99, de94 or ciede2000.
    #[arg(long, default_value = "ciede2000")]
    pub metric: String,
    /// minmax, blackwhite or custom:<max>.
    #[arg(long, default_value = "minmax")]
    pub normalization: String,
    /// max, avg or median.
    #[arg(long, default_value = "max")]
    pub agg: String,
    /// Output report directory.
    #[arg(long)]
    pub out: PathBuf,
}

pub fn parse_size(text: &str) -> Result<(usize, usize)> {
    let bad = || Error::Usage(format!("size `{text}`: expected WxH with positive integers"));
    let (w, h) = text.split_once(['x', 'X']).ok_or_else(bad)?;
    let (w, h) = (w.trim().parse::<usize>().map_err(|_| bad())?, h.trim().parse::<usize>().map_err(|_| bad())?);
    if w == 0 || h == 0 {
        return Err(bad());
    }
    Ok((w, h))
}

impl TestArgs {
    pub fn to_spec(&self) -> Result<TestSpec> {
        let function = FunctionId::from_name(&self.function)?;
        let (w, h) = parse_size(&self.size)?;
        let mut spec = TestSpec::new(function, w, h).with_seed(self.seed);
        for kv in &self.params {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Usage(format!("--param `{kv}`: expected k=v")))?;
            spec.set_param_str(k.trim(), v)?;
        }
        spec.validate()?;
        Ok(spec)
    }
}

/// Loads a colormap spec file, or a built-in map spanning `range`.
pub fn load_colormap(arg: &str, range: (f64, f64), warn: &mut dyn Write) -> Result<ColormapSpec> {
    let path = Path::new(arg);
    if !path.exists() {
        if let Some(spec) = colormap::builtin(arg, range) {
            return Ok(spec);
        }
    }
    let bytes = crate::fsutil::read(path)?;
    let parsed = colormap::parse_spec(&bytes).map_err(|e| Error::format(arg, e.to_string()))?;
    for w in parsed.warnings {
        let _ = writeln!(warn, "warning: {arg}: {w}");
    }
    Ok(parsed.spec)
}

fn field_range(field: &ScalarField) -> (f64, f64) {
    field.value_range().unwrap_or((0.0, 1.0))
}

fn evaluate_to_dir(
    field: ScalarField,
    test: Option<TestSpec>,
    source: Option<String>,
    eval: &EvalArgs,
    warnings: Vec<String>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let cmap = load_colormap(&eval.colormap, field_range(&field), err)?;
    let metric = report::parse_metric(&eval.metric)?;
    let normalization = report::parse_normalization(&eval.normalization)?;
    let agg = report::parse_aggregation(&eval.agg)?;
    let mut bundle = EvaluationBundle::evaluate(field, cmap, metric, normalization, agg)?;
    if let Some(t) = test {
        bundle = bundle.with_test_spec(t);
    }
    let summary = Summary::of(&bundle, source, warnings);
    report::write_report(&eval.out, &bundle, &summary)?;
    if bundle.is_degenerate() {
        let _ = writeln!(err, "warning: degenerate normalization (constant differences); see summary.json");
    }
    let s = &summary.statistics.subtraction;
    let _ = writeln!(
        out,
        "wrote {} (subtraction: min {:.6} max {:.6} mean {:.6})",
        eval.out.display(),
        s.min,
        s.max,
        s.mean
    );
    Ok(())
}

fn generate_spec(spec: &TestSpec, threads: Option<usize>) -> Result<ScalarField> {
    match threads {
        Some(n) => generate::generate_with_threads(spec, n),
        None => generate::generate(spec),
    }
}

/// Executes a parsed command.
pub fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Generate { test, out: path } => {
            let spec = test.to_spec()?;
            for w in spec.warnings() {
                let _ = writeln!(err, "warning: {w}");
            }
            let field = generate_spec(&spec, cli.threads)?;
            formats::write_field(&field, &path)?;
            let _ = writeln!(out, "wrote {} ({}x{})", path.display(), field.width(), field.height());
        }
        Command::Render { field, colormap, out: path } => {
            let f = formats::load_field(&field)?;
            let cmap = load_colormap(&colormap, field_range(&f), err)?;
            formats::write_image(&cmtest_core::raster::render_field(&f, &cmap), &path)?;
            let _ = writeln!(out, "wrote {}", path.display());
        }
        Command::Evaluate { field, eval } => {
            let f = formats::load_field(&field)?;
            evaluate_to_dir(f, None, Some(field.display().to_string()), &eval, Vec::new(), out, err)?;
        }
        Command::Report { test, eval } => {
            let spec = test.to_spec()?;
            let warnings = spec.warnings();
            for w in &warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            let field = generate_spec(&spec, cli.threads)?;
            evaluate_to_dir(field, Some(spec), None, &eval, warnings, out, err)?;
        }
        Command::Catalog { json } => {
            let text = if json {
                serde_json::to_string_pretty(&crate::catalog::catalog_json()).expect("serializable") + "\n"
            } else {
                crate::catalog::catalog_text()
            };
            let _ = out.write_all(text.as_bytes());
        }
        Command::Serve { host, port, spec_dir } => {
            let addr = format!("{host}:{port}");
            let runtime = tokio::runtime::Runtime::new().map_err(|e| Error::io("tokio runtime", e))?;
            runtime.block_on(service::serve(&addr, spec_dir))?;
        }
    }
    Ok(())
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let Error::Core(
                cmtest_core::Error::UnknownFunction(_) | cmtest_core::Error::UnknownParameter { .. },
            ) = e
            {
                let _ = writeln!(err, "hint: {CATALOG_HINT}");
            }
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("cmtest").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn sizes() {
        assert_eq!(parse_size("800x600").unwrap(), (800, 600));
        assert!(parse_size("0x5").is_err());
        assert!(parse_size("800").is_err());
    }

    #[test]
    fn unknown_function_exits_2_with_hint() {
        let (code, _, err) = run_capture(&["generate", "--function", "teapot", "--out", "x.csv"]);
        assert_eq!(code, 2);
        assert!(err.contains("cmtest catalog"), "{err}");
    }

    #[test]
    fn unknown_param_exits_2() {
        let (code, _, err) = run_capture(&["generate", "--function", "step", "--param", "zz=1", "--out", "x.csv"]);
        assert_eq!(code, 2);
        assert!(err.contains("zz"));
    }

    #[test]
    fn parameter_and_file_errors() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("f.csv");
        let (code, _, err) = run_capture(&[
            "generate", "--function", "mms", "--param", "o=0", "--out", out.to_str().unwrap(),
        ]);
        assert_eq!(code, 2, "{err}");
        let (code, _, _) = run_capture(&["render", "--field", "/nonexistent/f.csv", "--colormap", "grayscale", "--out", "x.png"]);
        assert_eq!(code, 3);
    }

    #[test]
    fn catalog_lists_functions() {
        let (code, out, _) = run_capture(&["catalog"]);
        assert_eq!(code, 0);
        assert!(out.contains("threshold") && out.contains("noise_amplitude"));
        let (code, out, _) = run_capture(&["catalog", "--json"]);
        assert_eq!(code, 0);
        assert!(serde_json::from_str::<serde_json::Value>(&out).is_ok());
    }
}
