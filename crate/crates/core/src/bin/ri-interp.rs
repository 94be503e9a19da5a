use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ri_interp::counterexamples::{rows_to_csv, sequence_rows};
use ri_interp::enclosure::Enclosure;
use ri_interp::hardy::{envelope_norm, hardy, GridConfig, HardyKind};
use ri_interp::harness::{
    generate_corpus, reports_to_csv, CorpusFlags, reports_to_json, run_suite, Suite, SuiteConfig, DEFAULT_CORPUS_SIZE,
};
use ri_interp::interp::{
    default_levels, functor_norm_with, holmstedt_k, k_exact_l1_linf, k_upper_oracle, select_parameters,
    FunctorParams, LorentzCouple,
};
use ri_interp::lorentz::{
    estimate_boyd_indices, fmt_exp, fmt_fraction, lorentz_norm, parse_exponent, LorentzParams, SpaceDescriptor,
};
use ri_interp::{Error, Result, StepFunction};

#[derive(Parser)]
#[command(name = "ri-interp", version, about = "Lorentz norms, Hardy averages and K-functionals of step functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct Input {
    /// Step function JSON (`-` reads stdin).
    #[arg(long)]
    input: String,
}

#[derive(Args)]
struct Space {
    #[arg(long, value_parser = exponent)]
    p: f64,
    #[arg(long, value_parser = exponent)]
    q: f64,
}

#[derive(Args)]
struct Grid {
    #[arg(long = "grid-per-decade", default_value_t = 64)]
    grid_per_decade: u32,
}

#[derive(Args)]
struct Couple {
    #[arg(long, value_parser = exponent, default_value = "1")]
    p0: f64,
    /// Defaults to p0.
    #[arg(long, value_parser = exponent)]
    q0: Option<f64>,
    #[arg(long, value_parser = exponent, default_value = "inf")]
    p1: f64,
    /// Defaults to p1.
    #[arg(long, value_parser = exponent)]
    q1: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Non-increasing rearrangement f*.
    Rearrange {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Lorentz quasi-norm ‖f‖_{p,q}.
    Norm {
        #[command(flatten)]
        space: Space,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Dilation t ↦ f(at).
    Dilate {
        #[arg(long)]
        a: f64,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Hardy average samples (t, value, lower, upper), or its norm with --p/--q.
    Hardy {
        /// Index of the average over (0, t).
        #[arg(long = "U", value_parser = exponent, conflicts_with = "v")]
        u: Option<f64>,
        /// Index of the average over (t, inf).
        #[arg(long = "V", value_parser = exponent)]
        v: Option<f64>,
        #[arg(long = "W", value_parser = exponent)]
        w: f64,
        #[arg(long, value_parser = exponent, requires = "q")]
        p: Option<f64>,
        #[arg(long, value_parser = exponent, requires = "p")]
        q: Option<f64>,
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// K-functional at t: exact (L1, Linf) value, truncation upper bound and
    /// Holmstedt's expression.
    Kfun {
        #[arg(long)]
        t: f64,
        #[command(flatten)]
        couple: Couple,
        /// Defaults to 1/(1/p0 - 1/p1).
        #[arg(long, value_parser = exponent)]
        theta: Option<f64>,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Enclosure of the interpolation functor norm with target space L_{p,q}.
    FunctorNorm {
        #[command(flatten)]
        space: Space,
        #[command(flatten)]
        couple: Couple,
        /// Defaults to 1/(1/p0 - 1/p1).
        #[arg(long, value_parser = exponent)]
        theta: Option<f64>,
        /// Defaults to p0.
        #[arg(long, value_parser = exponent)]
        r: Option<f64>,
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Boyd index estimates of L_{p,q} from dilations of a seeded corpus.
    Boyd {
        #[command(flatten)]
        space: Space,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long = "corpus-size", default_value_t = 200)]
        corpus_size: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Couple (L_p0, L_p1) and theta flanking the Boyd indices of L_{p,q}.
    Params {
        #[command(flatten)]
        space: Space,
        #[command(flatten)]
        out: Output,
    },
    /// Partial sums of the L1 ∩ Linf function outside L_{1,q}.
    #[command(alias = "example18")]
    Counterexample {
        #[arg(long, value_parser = exponent, default_value = "1/2")]
        q: f64,
        /// Largest N; rows are emitted at every power of ten up to it.
        #[arg(long, default_value_t = 1_000_000)]
        n: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Run verification checks on a seeded corpus; exits nonzero on failure.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long = "corpus-size", default_value_t = DEFAULT_CORPUS_SIZE)]
        corpus_size: usize,
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    /// Pointwise bounds between Hardy averages and f*.
    #[value(alias = "lemma10")]
    Pointwise,
    /// Norm equivalence of Hardy averages.
    #[value(alias = "thm11")]
    Hardy,
    /// Norm equivalence of the interpolation functor.
    #[value(alias = "thm15")]
    Functor,
    /// K-functional properties.
    Kprops,
    All,
}

fn exponent(s: &str) -> std::result::Result<f64, String> {
    parse_exponent(s).map_err(|e| e.to_string())
}

fn read_function(input: &Input) -> Result<StepFunction> {
    let text = if input.input == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Parse(format!("reading stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(&input.input).map_err(|e| Error::Parse(format!("reading {}: {e}", input.input)))?
    };
    StepFunction::from_json(&text)
}

fn emit(out: &Output, text: &str) -> Result<()> {
    match &out.output {
        Some(path) => fs::write(path, text).map_err(|e| Error::Parse(format!("writing {path}: {e}"))),
        None => {
            let _ = io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn json_line(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).expect("json serializes") + "\n"
}

/// JSON value of an extended real: non-finite values become strings.
fn ext(v: f64) -> serde_json::Value {
    if v.is_finite() {
        json!(v)
    } else {
        json!(fmt_exp(v))
    }
}

fn enclosure_json(e: Enclosure) -> serde_json::Value {
    json!({"lo": ext(e.lo), "hi": ext(e.hi), "width": ext(e.width())})
}

fn couple_of(c: &Couple) -> Result<LorentzCouple> {
    LorentzCouple::new(
        LorentzParams::new(c.p0, c.q0.unwrap_or(c.p0))?,
        LorentzParams::new(c.p1, c.q1.unwrap_or(c.p1))?,
    )
}

fn grid_of(g: &Grid) -> Result<GridConfig> {
    GridConfig::with_points_per_decade(g.grid_per_decade)
}

fn function_csv(f: &StepFunction) -> String {
    let mut s = String::from("lo,hi,value\n");
    for p in f.pieces() {
        s.push_str(&format!("{},{},{}\n", p.lo, p.hi, p.value));
    }
    s
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Rearrange { input, out } => {
            let fs = read_function(&input)?.rearrange();
            let text = match out.format {
                Format::Json => fs.to_json() + "\n",
                Format::Csv => function_csv(&fs),
            };
            emit(&out, &text)?;
        }
        Command::Norm { space, input, out } => {
            let params = LorentzParams::new(space.p, space.q)?;
            let n = lorentz_norm(&read_function(&input)?, params);
            let text = match out.format {
                Format::Csv => format!("{n}\n"),
                Format::Json => json_line(json!({"space": params.to_string(), "norm": ext(n)})),
            };
            emit(&out, &text)?;
        }
        Command::Dilate { a, input, out } => {
            let g = read_function(&input)?.dilate(a)?;
            let text = match out.format {
                Format::Json => g.to_json() + "\n",
                Format::Csv => function_csv(&g),
            };
            emit(&out, &text)?;
        }
        Command::Hardy {
            u,
            v,
            w,
            p,
            q,
            grid,
            input,
            out,
        } => {
            let (kind, index) = match (u, v) {
                (Some(u), None) => (HardyKind::Upper, u),
                (None, Some(v)) => (HardyKind::Lower, v),
                _ => return Err(Error::Parameter("give exactly one of --U and --V".into())),
            };
            let f = read_function(&input)?;
            let env = hardy(kind, &f, index, w, &grid_of(&grid)?)?;
            let norm = match (p, q) {
                (Some(p), Some(q)) => {
                    let params = LorentzParams::new(p, q)?;
                    Some((params, envelope_norm(&env, params)))
                }
                _ => None,
            };
            let text = match out.format {
                Format::Json => {
                    let samples: Vec<_> = env
                        .samples()
                        .iter()
                        .map(|s| json!({"t": s.t, "value": ext(s.value), "lower": ext(s.lower), "upper": ext(s.upper)}))
                        .collect();
                    let mut v = json!({"operator": env.describe(), "samples": samples});
                    if let Some((params, e)) = norm {
                        v["space"] = json!(params.to_string());
                        v["norm"] = enclosure_json(e);
                    }
                    json_line(v)
                }
                Format::Csv => match norm {
                    Some((_, e)) => format!("lo,hi,width\n{},{},{}\n", e.lo, e.hi, e.width()),
                    None => {
                        let mut s = String::from("t,value,lower,upper\n");
                        for r in env.samples() {
                            s.push_str(&format!("{},{},{},{}\n", r.t, r.value, r.lower, r.upper));
                        }
                        s
                    }
                },
            };
            emit(&out, &text)?;
        }
        Command::Kfun {
            t,
            couple,
            theta,
            input,
            out,
        } => {
            let f = read_function(&input)?;
            let c = couple_of(&couple)?;
            let theta = match theta {
                Some(th) => th,
                None => c.natural_theta()?,
            };
            let exact = if c.is_l1_linf() { Some(k_exact_l1_linf(&f, t)?) } else { None };
            let oracle = k_upper_oracle(&f, t, &c, &default_levels(&f))?;
            // Holmstedt's expression approximates K(t^{1/theta}); evaluate it at t^theta
            let holm = holmstedt_k(&f, t.powf(theta), &c, theta)?;
            let text = match out.format {
                Format::Csv => format!(
                    "t,exact,oracle,holmstedt\n{t},{},{oracle},{holm}\n",
                    exact.map_or(String::new(), |v| v.to_string())
                ),
                Format::Json => json_line(json!({
                    "t": t,
                    "couple": c.to_string(),
                    "theta": theta,
                    "exact": exact.map(ext),
                    "oracle": ext(oracle),
                    "holmstedt": ext(holm),
                })),
            };
            emit(&out, &text)?;
        }
        Command::FunctorNorm {
            space,
            couple,
            theta,
            r,
            grid,
            input,
            out,
        } => {
            let f = read_function(&input)?;
            let c = couple_of(&couple)?;
            let theta = match theta {
                Some(th) => th,
                None => c.natural_theta()?,
            };
            let e = SpaceDescriptor::lorentz(LorentzParams::new(space.p, space.q)?)?;
            let fp = FunctorParams::new(theta, r.unwrap_or(c.x0.p()), e)?;
            let enc = functor_norm_with(&f, &fp, &c, &grid_of(&grid)?)?;
            let text = match out.format {
                Format::Csv => format!("lo,hi,width\n{},{},{}\n", enc.lo, enc.hi, enc.width()),
                Format::Json => json_line(json!({
                    "space": e.params.to_string(),
                    "couple": c.to_string(),
                    "theta": theta,
                    "r": fp.r,
                    "norm": enclosure_json(enc),
                })),
            };
            emit(&out, &text)?;
        }
        Command::Boyd {
            space,
            seed,
            corpus_size,
            out,
        } => {
            let e = SpaceDescriptor::lorentz(LorentzParams::new(space.p, space.q)?)?;
            let corpus = generate_corpus(seed, corpus_size, CorpusFlags::default())?;
            let (lo, hi) = estimate_boyd_indices(&e, &[2.0, 32.0, 1024.0, 1048576.0], &corpus.functions)?;
            let text = match out.format {
                Format::Csv => format!("p_E,q_E\n{lo},{hi}\n"),
                Format::Json => json_line(json!({"space": e.params.to_string(), "p_E": ext(lo), "q_E": ext(hi)})),
            };
            emit(&out, &text)?;
        }
        Command::Params { space, out } => {
            let e = SpaceDescriptor::lorentz(LorentzParams::new(space.p, space.q)?)?;
            let s = select_parameters(&e);
            let text = match out.format {
                Format::Csv => format!(
                    "p0,p1,theta\n{},{},{}\n",
                    fmt_fraction(s.p0),
                    fmt_fraction(s.p1),
                    fmt_fraction(s.theta)
                ),
                Format::Json => json_line(json!({"p0": ext(s.p0), "p1": ext(s.p1), "theta": ext(s.theta)})),
            };
            emit(&out, &text)?;
        }
        Command::Counterexample { q, n, out } => {
            let mut ns: Vec<u64> = std::iter::successors(Some(10u64), |k| k.checked_mul(10))
                .take_while(|&k| k < n)
                .collect();
            ns.push(n);
            let rows = sequence_rows(q, &ns)?;
            let text = match out.format {
                Format::Csv => rows_to_csv(&rows),
                Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n",
            };
            emit(&out, &text)?;
        }
        Command::Verify {
            suite,
            seed,
            corpus_size,
            grid,
            out,
        } => {
            let cfg = SuiteConfig {
                seed,
                corpus_size,
                grid: grid_of(&grid)?,
                ..SuiteConfig::default()
            };
            let suite = match suite {
                SuiteArg::Pointwise => Suite::Pointwise,
                SuiteArg::Hardy => Suite::Hardy,
                SuiteArg::Functor => Suite::Functor,
                SuiteArg::Kprops => Suite::KProperties,
                SuiteArg::All => Suite::All,
            };
            let reports = run_suite(suite, &cfg)?;
            let text = match out.format {
                Format::Csv => reports_to_csv(&reports),
                Format::Json => reports_to_json(&reports),
            };
            emit(&out, &text)?;
            return Ok(reports.iter().all(|r| r.pass));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
