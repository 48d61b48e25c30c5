//! Modelled-cost benchmark: runs every algorithm on a batch of seeded random
//! scalars under a cost profile and reports exact weighted totals and
//! savings.
//!
//! Scalars are drawn from `ChaCha8Rng::seed_from_u64(seed)`: for each sample,
//! `ceil(bits / 8)` bytes are filled little-endian, masked to `bits` bits,
//! and the top bit is set, so every scalar has exactly `bits` bits.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::backends::{CostChargingGroup, CostProfile, ModularGroup};
use crate::error::{Error, Result};
use crate::group::{
    savings_percent, weighted_total, CostLedger, CostRatios, CostVector, Exact, OpKind,
};
use crate::recoding::DigitForm;
use crate::scalar_mul::{Algorithm, MulOptions};

pub const MIN_BITS: u64 = 8;
pub const MAX_BITS: u64 = 4096;
pub const DEFAULT_SEED: u64 = 0x2adc;
pub const GENERATOR: &str = "chacha8/seed_from_u64";

// Element arithmetic runs in Z/(2^61 - 1) so every product can be checked.
const CHECK_MODULUS: u64 = (1 << 61) - 1;

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub profile: CostProfile,
    pub ratios: CostRatios,
    pub bits: u64,
    pub samples: usize,
    pub form: DigitForm,
    pub seed: u64,
}

impl BenchConfig {
    pub fn new(profile: CostProfile, bits: u64, samples: usize, form: DigitForm) -> Self {
        Self {
            profile,
            ratios: CostRatios::default(),
            bits,
            samples,
            form,
            seed: DEFAULT_SEED,
        }
    }

    /// Baseline first, then the negation-aware variants.
    pub fn algorithms(&self) -> Vec<Algorithm> {
        match self.form {
            DigitForm::Wnaf(width) => vec![
                Algorithm::WindowedDoubleAndAdd { width },
                Algorithm::Windowed { width },
            ],
            _ => Algorithm::SIGNED_BINARY.to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleDescriptor {
    pub bits: u64,
    pub samples: usize,
    pub form: String,
    pub width: Option<u32>,
    pub seed: u64,
    pub generator: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileCosts {
    pub add: CostVector,
    pub dbl: CostVector,
    pub neg: CostVector,
    pub neg_add: CostVector,
    pub neg_dbl: CostVector,
}

impl From<&CostProfile> for ProfileCosts {
    fn from(p: &CostProfile) -> Self {
        Self {
            add: p.add_cost,
            dbl: p.dbl_cost,
            neg: p.neg_cost,
            neg_add: p.neg_add_cost,
            neg_dbl: p.neg_dbl_cost,
        }
    }
}

/// Plain versus fused cost of a single group operation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepSaving {
    pub step: String,
    pub plain: Exact,
    pub fused: Exact,
    pub saving_percent: Option<Exact>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgorithmEntry {
    pub id: String,
    pub width: Option<u32>,
    /// Weighted cost summed over all samples, precomputation included.
    pub total_cost: Exact,
    pub mean_cost: Exact,
    pub table_ledger: CostLedger,
    pub main_ledger: CostLedger,
    pub final_negations: u64,
}

impl AlgorithmEntry {
    pub fn ledger(&self) -> CostLedger {
        let mut l = self.table_ledger.clone();
        l.merge(&self.main_ledger);
        l
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SavingEntry {
    pub baseline: String,
    pub variant: String,
    pub percent: Option<Exact>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchReport {
    pub preset: String,
    pub ratios: CostRatios,
    pub sample: SampleDescriptor,
    pub profile: ProfileCosts,
    pub per_step: Vec<StepSaving>,
    pub algorithms: Vec<AlgorithmEntry>,
    pub savings: Vec<SavingEntry>,
    pub notes: Vec<String>,
}

/// A uniform scalar with exactly `bits` bits.
pub fn sample_scalar<R: RngCore>(rng: &mut R, bits: u64) -> BigUint {
    let mut bytes = vec![0u8; bits.div_ceil(8) as usize];
    rng.fill_bytes(&mut bytes);
    let spare = bytes.len() as u64 * 8 - bits;
    if let Some(top) = bytes.last_mut() {
        *top &= 0xff >> spare;
    }
    let mut m = BigUint::from_bytes_le(&bytes);
    m.set_bit(bits - 1, true);
    m
}

pub fn sample_scalars(seed: u64, bits: u64, count: usize) -> Vec<BigUint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| sample_scalar(&mut rng, bits)).collect()
}

fn per_step(profile: &CostProfile, ratios: &CostRatios) -> Vec<StepSaving> {
    [
        ("add", profile.add_cost, profile.neg_add_cost),
        ("dbl", profile.dbl_cost, profile.neg_dbl_cost),
    ]
    .into_iter()
    .map(|(step, plain, fused)| {
        let plain = weighted_total(&plain, ratios);
        let fused = weighted_total(&fused, ratios);
        StepSaving {
            step: step.to_string(),
            saving_percent: savings_percent(&plain, &fused).ok().map(Exact),
            plain: Exact(plain),
            fused: Exact(fused),
        }
    })
    .collect()
}

/// Runs every algorithm for the configured form on the same scalars.
pub fn run_bench(config: &BenchConfig) -> Result<BenchReport> {
    if !(MIN_BITS..=MAX_BITS).contains(&config.bits) {
        return Err(Error::InvalidParameter(format!(
            "bits {} outside [{MIN_BITS}, {MAX_BITS}]",
            config.bits
        )));
    }
    if config.samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    config.ratios.validate()?;

    let group = CostChargingGroup::new(ModularGroup::new(CHECK_MODULUS)?, config.profile.clone());
    let scalars = sample_scalars(config.seed, config.bits, config.samples);
    let algorithms = config.algorithms();

    let mut entries = Vec::with_capacity(algorithms.len());
    for &algo in &algorithms {
        let form = algo.digit_form(config.form)?;
        let mut table = CostLedger::new();
        let mut main = CostLedger::new();
        let mut final_negations = 0;
        for m in &scalars {
            let e = form.recode(m)?;
            let r = algo.run(&e, &1, &group, MulOptions::default())?;
            let expected = group.inner().multiple(m, 1);
            if r.element != expected {
                return Err(Error::InvalidExpansion(format!(
                    "{algo} returned {} for m = {m}, expected {expected}",
                    r.element
                )));
            }
            table.merge(&r.table_ledger);
            main.merge(&r.ledger);
            final_negations += u64::from(r.final_negation);
        }
        let mut all = table.clone();
        all.merge(&main);
        let total = all.weighted(&config.ratios);
        let mean = &total / BigRational::from_integer(BigInt::from(config.samples));
        entries.push(AlgorithmEntry {
            id: algo.id().to_string(),
            width: algo.width(),
            total_cost: Exact(total),
            mean_cost: Exact(mean),
            table_ledger: table,
            main_ledger: main,
            final_negations,
        });
    }

    let baseline = &entries[0];
    let savings = entries[1..]
        .iter()
        .map(|v| SavingEntry {
            baseline: baseline.id.clone(),
            variant: v.id.clone(),
            percent: savings_percent(&baseline.total_cost.0, &v.total_cost.0)
                .ok()
                .map(Exact),
        })
        .collect();

    let mut notes = Vec::new();
    if config.profile.name == "picard" {
        notes.push(
            "neg cost modelled as add - neg_add (11M + 3S); not a published count".to_string(),
        );
    }
    if config.profile.name == "hyperelliptic" {
        notes.push(
            "hyperelliptic add/dbl counts are illustrative; negation modelled as free".to_string(),
        );
    }
    notes.push(
        "-D (or the odd-multiple table) is charged once per scalar multiplication".to_string(),
    );

    Ok(BenchReport {
        preset: config.profile.name.clone(),
        ratios: config.ratios.clone(),
        sample: SampleDescriptor {
            bits: config.bits,
            samples: config.samples,
            form: config.form.name().to_string(),
            width: config.form.width(),
            seed: config.seed,
            generator: GENERATOR.to_string(),
        },
        profile: ProfileCosts::from(&config.profile),
        per_step: per_step(&config.profile, &config.ratios),
        algorithms: entries,
        savings,
        notes,
    })
}

impl BenchReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidParameter(format!("bad report: {e}")))
    }

    pub fn algorithm(&self, id: &str) -> Option<&AlgorithmEntry> {
        self.algorithms.iter().find(|a| a.id == id)
    }

    pub fn saving(&self, variant: &str) -> Option<&BigRational> {
        self.savings
            .iter()
            .find(|s| s.variant == variant)
            .and_then(|s| s.percent.as_ref())
            .map(|p| &p.0)
    }

    pub fn step_saving(&self, step: &str) -> Option<&BigRational> {
        self.per_step
            .iter()
            .find(|s| s.step == step)
            .and_then(|s| s.saving_percent.as_ref())
            .map(|p| &p.0)
    }

    /// Recomputes every derived number from the report's own ledgers and
    /// profile; returns the first field that disagrees.
    pub fn check_consistency(&self) -> std::result::Result<(), String> {
        let r = &self.ratios;
        let n = BigRational::from_integer(BigInt::from(self.sample.samples));
        for a in &self.algorithms {
            let total = a.ledger().weighted(r);
            if total != a.total_cost.0 {
                return Err(format!("{}: total_cost", a.id));
            }
            if &total / &n != a.mean_cost.0 {
                return Err(format!("{}: mean_cost", a.id));
            }
        }
        let base = self.algorithms.first().ok_or("no algorithms")?;
        for s in &self.savings {
            let v = self
                .algorithm(&s.variant)
                .ok_or(format!("missing {}", s.variant))?;
            let expected = savings_percent(&base.total_cost.0, &v.total_cost.0).ok();
            if expected.as_ref() != s.percent.as_ref().map(|p| &p.0) {
                return Err(format!("saving {}", s.variant));
            }
        }
        let p = &self.profile;
        let profile = CostProfile {
            name: self.preset.clone(),
            add_cost: p.add,
            dbl_cost: p.dbl,
            neg_cost: p.neg,
            neg_add_cost: p.neg_add,
            neg_dbl_cost: p.neg_dbl,
        };
        if per_step(&profile, r) != self.per_step {
            return Err("per_step".into());
        }
        Ok(())
    }

    /// Human-readable table; rationals shown with 4 significant digits.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let s = &self.sample;
        let form = match s.width {
            Some(w) => format!("{} (w={w})", s.form),
            None => s.form.clone(),
        };
        let _ = writeln!(out, "preset: {}", self.preset);
        let _ = writeln!(
            out,
            "ratios: S={} I={} A={} (in M)",
            self.ratios.sqr_per_mul, self.ratios.inv_per_mul, self.ratios.addf_per_mul
        );
        let _ = writeln!(
            out,
            "sample: {} scalars of {} bits, {form}, seed {}",
            s.samples, s.bits, s.seed
        );
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{:<6} {:>10} {:>10} {:>9}",
            "step", "plain", "fused", "saving"
        );
        for st in &self.per_step {
            let _ = writeln!(
                out,
                "{:<6} {:>10} {:>10} {:>9}",
                st.step,
                format_sig(&st.plain.0, 4),
                format_sig(&st.fused.0, 4),
                percent_cell(st.saving_percent.as_ref()),
            );
        }
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{:<16} {:>11} {:>9} {:>9} {:>9} {:>9} {:>9} {:>9}",
            "algorithm", "mean cost", "add", "dbl", "neg", "neg_add", "neg_dbl", "saving"
        );
        for a in &self.algorithms {
            let l = a.ledger();
            let saving = self
                .savings
                .iter()
                .find(|x| x.variant == a.id)
                .map(|x| percent_cell(x.percent.as_ref()));
            let _ = write!(out, "{:<16} {:>11}", a.id, format_sig(&a.mean_cost.0, 4));
            for k in OpKind::ALL {
                let _ = write!(out, " {:>9}", l.count(k));
            }
            let _ = writeln!(out, " {:>9}", saving.unwrap_or_else(|| "-".into()));
        }
        if !self.notes.is_empty() {
            let _ = writeln!(out);
            for n in &self.notes {
                let _ = writeln!(out, "note: {n}");
            }
        }
        out
    }
}

fn percent_cell(p: Option<&Exact>) -> String {
    match p {
        Some(p) => format!("{}%", format_sig(&p.0, 4)),
        None => "n/a".into(),
    }
}

/// Decimal rendering of an exact rational, rounded half-up to `sig`
/// significant digits.
pub fn format_sig(r: &BigRational, sig: u32) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    let x = r.abs();
    let ten = BigRational::from_integer(BigInt::from(10));

    // exponent e with 10^e <= x < 10^(e+1)
    let mut e: i64 = 0;
    let mut p = BigRational::one();
    while p > x {
        p /= &ten;
        e -= 1;
    }
    while &p * &ten <= x {
        p *= &ten;
        e += 1;
    }

    let shift = i64::from(sig) - 1 - e;
    let scale = BigInt::from(10).pow(shift.unsigned_abs() as u32);
    let scaled = if shift >= 0 {
        &x * BigRational::from_integer(scale.clone())
    } else {
        &x / BigRational::from_integer(scale.clone())
    };
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut digits = (scaled + half).floor().to_integer();
    let mut shift = shift;
    if digits >= BigInt::from(10).pow(sig) {
        digits = digits.div_floor(&BigInt::from(10));
        shift -= 1;
    }

    let s = digits.to_string();
    let body = if shift <= 0 {
        format!("{s}{}", "0".repeat(shift.unsigned_abs() as usize))
    } else {
        let shift = shift as usize;
        if shift >= s.len() {
            format!("0.{}{s}", "0".repeat(shift - s.len()))
        } else {
            format!("{}.{}", &s[..s.len() - shift], &s[s.len() - shift..])
        }
    };
    format!("{sign}{body}")
}
