use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gelfand::algebra::{neumann_series, resolvent, NeumannOptions, DEFAULT_MAX_TERMS, DEFAULT_PROBE_DEPTH};
use gelfand::fekete::{binomial_convolve, limit_bracket, root_report, DEFAULT_TOL_REL};
use gelfand::generators::{SequenceGen, WeightGen};
use gelfand::io::{self, fmt_f64, json_num};
use gelfand::matrix::{spectrum_scan, GridParams};
use gelfand::shift::{op_norm_empirical, power_norm_formula, shift_limit_experiment, LpExponent};
use gelfand::wiener::{wiener_inverse, wiener_spectral_radius, DEFAULT_COEFF_CAP, DEFAULT_GRID};
use gelfand::{
    algebra, selftest, DenseMatrix, Error, NormKind, PrefixSequence, ValueColumn, WeightedShift, WienerElement,
};

#[derive(Parser, Debug)]
#[command(
    name = "gelfand",
    version,
    about = "Spectral-radius and submultiplicative-limit experiments"
)]
struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Seed for every randomized input.
    #[arg(long, global = true, default_value_t = 0, value_name = "U64")]
    seed: u64,

    /// Tolerance; the default depends on the subcommand.
    #[arg(long, global = true, value_name = "REAL")]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Norm {
    Inf,
    One,
}

impl From<Norm> for NormKind {
    fn from(n: Norm) -> Self {
        match n {
            Norm::Inf => NormKind::Inf,
            Norm::One => NormKind::One,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum WienerMode {
    Radius,
    Sup,
    Inverse,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ShiftMode {
    Limit,
    Norms,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Root table and certified upper bound for a submultiplicative prefix.
    Fekete {
        /// Generator: poly:c, geom:r or subadd:c,d.
        #[arg(long, conflicts_with = "input", required_unless_present = "input")]
        gen: Option<String>,
        /// CSV file with header k,value.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        n: usize,
    },
    /// Binomial convolution of two sequences with a_0 = b_0 = 1.
    Convolve {
        /// Generator spec or CSV file.
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 30)]
        n: usize,
    },
    /// Power norms ||x^k|| and their roots.
    Power {
        /// Matrix file, CSV rows or JSON nested arrays.
        #[arg(long, conflicts_with = "wiener", required_unless_present = "wiener")]
        matrix: Option<PathBuf>,
        /// Inline Wiener element, e.g. "1:0.5,-1:0.5".
        #[arg(long)]
        wiener: Option<String>,
        #[arg(long, value_enum, default_value_t = Norm::Inf)]
        norm: Norm,
        #[arg(long, default_value_t = 64)]
        n: usize,
    },
    /// (I - A)^{-1} by a certified Neumann series.
    Neumann {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = Norm::Inf)]
        norm: Norm,
        #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
        max_terms: usize,
        #[arg(long, default_value_t = DEFAULT_PROBE_DEPTH)]
        probe: usize,
    },
    /// (lambda I - A)^{-1}.
    Resolvent {
        #[arg(long)]
        matrix: PathBuf,
        /// Complex scalar, e.g. "2", "0.5-1j".
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, value_enum, default_value_t = Norm::Inf)]
        norm: Norm,
    },
    /// Invertibility of lambda I - A over a rectangular grid.
    Spectrum {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = Norm::Inf)]
        norm: Norm,
        #[arg(long, default_value_t = -2.0, allow_hyphen_values = true)]
        re_min: f64,
        #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
        re_max: f64,
        #[arg(long, default_value_t = -2.0, allow_hyphen_values = true)]
        im_min: f64,
        #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
        im_max: f64,
        #[arg(long, default_value_t = 0.1)]
        step: f64,
    },
    /// Wiener-algebra experiments on a finite Laurent series.
    Wiener {
        /// Inline element, e.g. "1:0.5,-1:0.5".
        #[arg(
            long,
            conflicts_with = "input",
            required_unless_present = "input",
            allow_hyphen_values = true
        )]
        f: Option<String>,
        /// CSV (degree,re,im) or JSON object file.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long, value_enum, default_value_t = WienerMode::Radius)]
        mode: WienerMode,
        /// Sample count for the sup norm.
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
    },
    /// Weighted-shift experiments.
    Shift {
        /// Generator: harmonic:a,b, const:c or geom:r.
        #[arg(long, conflicts_with = "input", required_unless_present = "input")]
        weights: Option<String>,
        /// CSV file with header j,alpha.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Weight prefix length for generators.
        #[arg(long, default_value_t = 4000)]
        m: usize,
        /// Largest power.
        #[arg(long, default_value_t = 50)]
        l: usize,
        #[arg(long, value_enum, default_value_t = ShiftMode::Limit)]
        mode: ShiftMode,
        /// Random vectors per power in norms mode.
        #[arg(long, default_value_t = 32)]
        trials: usize,
    },
    /// Runs the built-in invariant checks.
    Selftest,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_certificate_failure() { 2 } else { 1 },
            msg: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        msg: msg.into(),
    }
}

type Outcome = Result<(String, Option<Failure>), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn load_matrix(path: &Path, norm: Norm) -> Result<DenseMatrix, Failure> {
    Ok(io::parse_matrix_auto(&read(path)?, norm.into())?)
}

fn load_sequence(spec: &str, n: usize) -> Result<PrefixSequence, Failure> {
    let path = Path::new(spec);
    if path.is_file() {
        let mut seq = io::parse_sequence_csv(&read(path)?)?;
        seq.set_unit_head(true);
        return Ok(seq.truncated(n));
    }
    Ok(spec.parse::<SequenceGen>()?.materialize(n)?)
}

fn load_wiener(f: Option<&str>, input: Option<&Path>) -> Result<WienerElement, Failure> {
    match (f, input) {
        (Some(spec), _) => Ok(io::parse_wiener_inline(spec)?),
        (None, Some(path)) => {
            let text = read(path)?;
            if text.trim_start().starts_with('{') {
                Ok(io::parse_wiener_json(&text)?)
            } else {
                Ok(io::parse_wiener_csv(&text)?)
            }
        }
        (None, None) => Err(usage("need --f or --input")),
    }
}

fn matrix_out(m: &DenseMatrix, format: Format) -> String {
    match format {
        Format::Csv => io::matrix_to_csv(m),
        Format::Json => io::matrix_to_json(m),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn json_str(s: &str) -> String {
    let mut out = String::from("\"");
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn run(cli: &Cli) -> Outcome {
    let format = cli.format;
    let report = |r: &gelfand::RootReport, column| match format {
        Format::Csv => r.to_csv(column),
        Format::Json => r.to_json(column),
    };
    match &cli.command {
        Command::Fekete { gen, input, n } => {
            let seq = match (gen, input) {
                (Some(g), _) => g.parse::<SequenceGen>()?.materialize(*n)?,
                (None, Some(path)) => io::parse_sequence_csv(&read(path)?)?.truncated(*n),
                (None, None) => return Err(usage("need --gen or --input")),
            };
            limit_bracket(&seq, cli.tol.unwrap_or(DEFAULT_TOL_REL))?;
            Ok((report(&root_report(&seq), ValueColumn::Value), None))
        }
        Command::Convolve { a, b, n } => {
            let c = binomial_convolve(&load_sequence(a, *n)?, &load_sequence(b, *n)?, *n)?;
            let text = match format {
                Format::Csv => io::sequence_to_csv(&c),
                Format::Json => io::sequence_to_json(&c),
            };
            Ok((text, None))
        }
        Command::Power {
            matrix,
            wiener,
            norm,
            n,
        } => {
            let r = match (matrix, wiener) {
                (Some(path), _) => algebra::power_norms(&load_matrix(path, *norm)?, *n)?,
                (None, Some(spec)) => wiener_spectral_radius(&io::parse_wiener_inline(spec)?, *n, DEFAULT_COEFF_CAP)?,
                (None, None) => return Err(usage("need --matrix or --wiener")),
            };
            Ok((report(&r, ValueColumn::Norm), None))
        }
        Command::Neumann {
            matrix,
            norm,
            max_terms,
            probe,
        } => {
            let x = load_matrix(matrix, *norm)?;
            let opts = NeumannOptions {
                tol: cli.tol.unwrap_or(NeumannOptions::default().tol),
                max_terms: *max_terms,
                probe_depth: *probe,
            };
            let s = neumann_series(&x, &opts)?;
            let text = match format {
                Format::Csv => io::matrix_to_csv(&s.inverse),
                Format::Json => format!(
                    "{{\"inverse\":{},\"terms\":{},\"block\":{},\"contraction\":{},\"tail_bound\":{},\"residual\":{}}}\n",
                    io::matrix_to_json(&s.inverse).trim_end(),
                    s.terms,
                    s.block,
                    json_num(s.contraction),
                    json_num(s.tail_bound),
                    json_num(s.residual)
                ),
            };
            Ok((text, None))
        }
        Command::Resolvent { matrix, lambda, norm } => {
            let x = load_matrix(matrix, *norm)?;
            let lambda = io::parse_complex(lambda)?;
            let r = resolvent(&x, lambda, cli.tol.unwrap_or(NeumannOptions::default().tol))?;
            Ok((matrix_out(&r, format), None))
        }
        Command::Spectrum {
            matrix,
            norm,
            re_min,
            re_max,
            im_min,
            im_max,
            step,
        } => {
            let x = load_matrix(matrix, *norm)?;
            let params = GridParams {
                re_min: *re_min,
                re_max: *re_max,
                im_min: *im_min,
                im_max: *im_max,
                step: *step,
            };
            let grid = spectrum_scan(&x, &params)?;
            let text = match format {
                Format::Csv => grid.to_csv(),
                Format::Json => grid.to_json(),
            };
            Ok((text, None))
        }
        Command::Wiener {
            f,
            input,
            n,
            mode,
            grid,
        } => {
            let f = load_wiener(f.as_deref(), input.as_deref())?;
            let text = match mode {
                WienerMode::Radius => report(&wiener_spectral_radius(&f, *n, DEFAULT_COEFF_CAP)?, ValueColumn::Norm),
                WienerMode::Sup => {
                    let s = f.sup_norm(*grid)?;
                    match format {
                        Format::Csv => format!(
                            "grid_max,certified_upper_error,lower,upper\n{},{},{},{}\n",
                            fmt_f64(s.grid_max),
                            fmt_f64(s.certified_upper_error),
                            fmt_f64(s.lower),
                            fmt_f64(s.upper)
                        ),
                        Format::Json => format!(
                            "{{\"grid_max\":{},\"certified_upper_error\":{},\"lower\":{},\"upper\":{}}}\n",
                            json_num(s.grid_max),
                            json_num(s.certified_upper_error),
                            json_num(s.lower),
                            json_num(s.upper)
                        ),
                    }
                }
                WienerMode::Inverse => {
                    let g = wiener_inverse(&f, cli.tol.unwrap_or(NeumannOptions::default().tol))?;
                    match format {
                        Format::Csv => io::wiener_to_csv(&g),
                        Format::Json => io::wiener_to_json(&g),
                    }
                }
            };
            Ok((text, None))
        }
        Command::Shift {
            weights,
            input,
            m,
            l,
            mode,
            trials,
        } => {
            let t = match (weights, input) {
                (Some(spec), _) => spec.parse::<WeightGen>()?.materialize(*m)?,
                (None, Some(path)) => WeightedShift::new(io::parse_weights_csv(&read(path)?)?)?,
                (None, None) => return Err(usage("need --weights or --input")),
            };
            let text = match mode {
                ShiftMode::Limit => report(&shift_limit_experiment(&t, *l)?, ValueColumn::Norm),
                ShiftMode::Norms => shift_norms(&t, *l, *trials, cli.seed, format)?,
            };
            Ok((text, None))
        }
        Command::Selftest => {
            let outcomes = selftest::run(cli.seed);
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            let text = match format {
                Format::Csv => {
                    let mut out = String::from("check,passed,detail\n");
                    for o in &outcomes {
                        out.push_str(&format!("{},{},{}\n", o.name, o.passed, csv_field(&o.detail)));
                    }
                    out
                }
                Format::Json => {
                    let rows: Vec<String> = outcomes
                        .iter()
                        .map(|o| {
                            format!(
                                "{{\"check\":{},\"passed\":{},\"detail\":{}}}",
                                json_str(o.name),
                                o.passed,
                                json_str(&o.detail)
                            )
                        })
                        .collect();
                    format!(
                        "{{\"passed\":{},\"failed\":{},\"checks\":[{}]}}\n",
                        outcomes.len() - failed,
                        failed,
                        rows.join(",")
                    )
                }
            };
            eprintln!("selftest: {} passed, {} failed", outcomes.len() - failed, failed);
            let failure = (failed > 0).then(|| Failure {
                code: 2,
                msg: format!("{failed} of {} checks failed", outcomes.len()),
            });
            Ok((text, failure))
        }
    }
}

fn shift_norms(t: &WeightedShift, max_l: usize, trials: usize, seed: u64, format: Format) -> Result<String, Failure> {
    let exponents = [
        ("1", LpExponent::Finite(1.0)),
        ("2", LpExponent::Finite(2.0)),
        ("inf", LpExponent::Infinity),
    ];
    let mut rows = Vec::new();
    for l in 1..=max_l {
        let formula = power_norm_formula(t, l);
        for (i, (name, p)) in exponents.iter().enumerate() {
            let e = op_norm_empirical(t, l, *p, trials, seed.wrapping_add((3 * l + i) as u64))?;
            rows.push((l, *name, formula, e.attained, e.max_random_ratio));
        }
    }
    Ok(match format {
        Format::Csv => {
            let mut out = String::from("l,p,formula,attained,max_random_ratio\n");
            for (l, p, formula, attained, ratio) in rows {
                out.push_str(&format!(
                    "{l},{p},{},{},{}\n",
                    fmt_f64(formula),
                    fmt_f64(attained),
                    fmt_f64(ratio)
                ));
            }
            out
        }
        Format::Json => {
            let items: Vec<String> = rows
                .into_iter()
                .map(|(l, p, formula, attained, ratio)| {
                    format!(
                        "{{\"l\":{l},\"p\":\"{p}\",\"formula\":{},\"attained\":{},\"max_random_ratio\":{}}}",
                        json_num(formula),
                        json_num(attained),
                        json_num(ratio)
                    )
                })
                .collect();
            format!("[{}]\n", items.join(","))
        }
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| usage(format!("cannot write output: {e}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = run(&cli).and_then(|(text, failure)| {
        emit(cli.out.as_deref(), &text)?;
        failure.map_or(Ok(()), Err)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("gelfand: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
