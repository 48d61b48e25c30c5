use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use neg2adic::bench::{run_bench, BenchConfig, DEFAULT_SEED};
use neg2adic::verify::{standard_contenders, verify, VerifyConfig};
use neg2adic::{
    scalar_mul_entry, Algorithm, CostProfile, DigitForm, ModularGroup, MulOptions, OpKind, Preset,
};
use num_bigint::{BigInt, BigUint};
use num_traits::Num;

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "neg2adic",
    version,
    about = "Negation-aware scalar multiplication: recoding, verification and cost benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Binary,
    Naf,
    Wnaf,
}

impl FormArg {
    fn with_width(self, width: u32) -> Result<DigitForm, String> {
        match self {
            FormArg::Binary => Ok(DigitForm::Binary),
            FormArg::Naf => Ok(DigitForm::Naf),
            FormArg::Wnaf => format!("wnaf:{width}")
                .parse()
                .map_err(|e: neg2adic::Error| e.to_string()),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the digits, length and weight of a recoded scalar.
    Recode {
        /// Nonnegative decimal, or hex with a 0x prefix.
        scalar: String,
        #[arg(value_enum, default_value = "naf")]
        form: FormArg,
        #[arg(long, short, default_value_t = 4)]
        width: u32,
    },
    /// Compute m * D mod n with one algorithm and print the element and op tallies.
    Mul {
        n: u64,
        /// Decimal or 0x-prefixed hex; may be negative.
        #[arg(allow_hyphen_values = true)]
        scalar: String,
        /// baseline, neg, online, mixed-dbl, mixed-add, window, window-baseline
        #[arg(long, short, default_value = "neg")]
        algo: String,
        /// Window width for the windowed algorithms.
        #[arg(long, short, default_value_t = 3)]
        width: u32,
        /// Recoding for the non-windowed algorithms.
        #[arg(long, value_enum, default_value = "naf")]
        form: FormArg,
        /// The base element D.
        #[arg(long, default_value_t = 1)]
        base: u64,
    },
    /// Check every algorithm against the modular oracle.
    Verify {
        #[arg(long, default_value_t = 97)]
        max_n: u64,
        /// Scalars m range over [0, multiplier * n).
        #[arg(long, default_value_t = 4)]
        multiplier: u64,
    },
    /// Modelled field-operation costs and savings over random scalars.
    Bench {
        /// picard, hyperelliptic, or custom (requires --profile).
        preset: Option<String>,
        #[arg(long, default_value_t = 160)]
        bits: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, value_enum, default_value = "naf")]
        form: FormArg,
        #[arg(long, short, default_value_t = 4)]
        width: u32,
        /// Ratio overrides, e.g. `sqr=2/3,inv=10,addf=0`.
        #[arg(long)]
        ratios: Option<String>,
        /// Custom cost profile (JSON).
        #[arg(long)]
        profile: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn parse_scalar(s: &str) -> Result<BigInt, String> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let magnitude = match body.strip_prefix("0x").or_else(|| body.strip_prefix("0X")) {
        Some(hex) => BigUint::from_str_radix(hex, 16),
        None => BigUint::from_str_radix(body, 10),
    }
    .map_err(|_| format!("cannot parse scalar `{s}`"))?;
    let v = BigInt::from(magnitude);
    Ok(if neg { -v } else { v })
}

enum Failure {
    Usage(String),
    Check,
}

impl From<neg2adic::Error> for Failure {
    fn from(e: neg2adic::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn recode(scalar: &str, form: FormArg, width: u32) -> Result<(), Failure> {
    let m = parse_scalar(scalar).map_err(Failure::Usage)?;
    let m = m
        .to_biguint()
        .ok_or_else(|| Failure::Usage(format!("scalar must be nonnegative, got {m}")))?;
    let e = form.with_width(width).map_err(Failure::Usage)?.recode(&m)?;
    println!("{e}, l={}, w={}", e.length(), e.weight());
    Ok(())
}

fn mul(
    n: u64,
    scalar: &str,
    algo: &str,
    width: u32,
    form: FormArg,
    base: u64,
) -> Result<(), Failure> {
    if n < 2 {
        return Err(Failure::Usage(format!(
            "modulus must be at least 2, got {n}"
        )));
    }
    let m = parse_scalar(scalar).map_err(Failure::Usage)?;
    let algo = Algorithm::from_id(algo, width)?;
    let g = ModularGroup::new(n)?;
    let form = form.with_width(width).map_err(Failure::Usage)?;
    let r = scalar_mul_entry(&m, &g.element(base), &g, algo, form, MulOptions::default())?;
    println!("{}", r.element);
    let ledger = r.total_ledger();
    let tallies: Vec<String> = OpKind::ALL
        .iter()
        .map(|&k| format!("{k}={}", ledger.count(k)))
        .collect();
    println!("ops: {}", tallies.join(" "));
    if r.final_negation {
        println!("final negation: yes");
    }
    Ok(())
}

fn run_verify(max_n: u64, multiplier: u64) -> Result<(), Failure> {
    let report = verify(VerifyConfig { max_n, multiplier }, &standard_contenders())?;
    let moduli: Vec<String> = report.moduli.iter().map(u64::to_string).collect();
    if report.passed() {
        println!("PASS, 0 mismatches");
        println!(
            "{} checks, {} algorithms, n in {{{}}}, m < {multiplier}n",
            report.checks,
            report.contenders,
            moduli.join(",")
        );
        Ok(())
    } else {
        println!("FAIL, {} mismatches", report.mismatch_count);
        for m in &report.mismatches {
            println!("  {m}");
        }
        Err(Failure::Check)
    }
}

#[allow(clippy::too_many_arguments)]
fn bench(
    preset: Option<&str>,
    bits: u64,
    samples: usize,
    form: FormArg,
    width: u32,
    ratios: Option<&str>,
    profile_path: Option<&PathBuf>,
    format: Format,
    seed: u64,
) -> Result<(), Failure> {
    let (profile, file_ratios) = match (preset, profile_path) {
        (_, Some(path)) => {
            if let Some(p) = preset.filter(|p| *p != "custom") {
                return Err(Failure::Usage(format!(
                    "preset `{p}` conflicts with --profile"
                )));
            }
            CostProfile::from_json_file(path)?
        }
        (Some("custom"), None) => {
            return Err(Failure::Usage("preset `custom` needs --profile".into()))
        }
        (Some(name), None) => (name.parse::<Preset>()?.profile(), None),
        (None, None) => return Err(Failure::Usage("give a preset or --profile".into())),
    };
    let mut r = file_ratios.unwrap_or_default();
    if let Some(spec) = ratios {
        r = r.with_overrides(spec)?;
    }
    for w in profile.warnings(&r) {
        eprintln!("warning: {w}");
    }

    let mut config = BenchConfig::new(
        profile,
        bits,
        samples,
        form.with_width(width).map_err(Failure::Usage)?,
    );
    config.ratios = r;
    config.seed = seed;
    let report = run_bench(&config)?;
    match format {
        Format::Json => print!("{}", report.to_json()),
        Format::Table => print!("{}", report.to_table()),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Recode {
            scalar,
            form,
            width,
        } => recode(scalar, *form, *width),
        Command::Mul {
            n,
            scalar,
            algo,
            width,
            form,
            base,
        } => mul(*n, scalar, algo, *width, *form, *base),
        Command::Verify { max_n, multiplier } => run_verify(*max_n, *multiplier),
        Command::Bench {
            preset,
            bits,
            samples,
            form,
            width,
            ratios,
            profile,
            format,
            seed,
        } => bench(
            preset.as_deref(),
            *bits,
            *samples,
            *form,
            *width,
            ratios.as_deref(),
            profile.as_ref(),
            *format,
            *seed,
        ),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(EXIT_FAILURE),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
