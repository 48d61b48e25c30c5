//! Exhaustive agreement check of every algorithm against the modular oracle.

use std::fmt;

use num_bigint::BigInt;

use crate::backends::ModularGroup;
use crate::error::{Error, Result};
use crate::recoding::DigitForm;
use crate::scalar_mul::{scalar_mul_entry, Algorithm, MulOptions};

/// Moduli exercised by [`verify`], filtered by `max_n`.
pub const VERIFY_MODULI: [u64; 8] = [5, 7, 11, 31, 97, 127, 257, 509];

pub const MAX_VERIFY_MODULUS: u64 = 512;

pub const WINDOW_WIDTHS: [u32; 3] = [2, 3, 4];

type RunFn = dyn Fn(&BigInt, u64, &ModularGroup) -> Result<u64> + Send + Sync;

/// A named scalar-multiplication routine over the modular group.
pub struct Contender {
    pub name: String,
    run: Box<RunFn>,
}

impl Contender {
    pub fn new<F>(name: impl Into<String>, run: F) -> Self
    where
        F: Fn(&BigInt, u64, &ModularGroup) -> Result<u64> + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            run: Box::new(run),
        }
    }

    fn from_algorithm(algo: Algorithm, form: DigitForm) -> Self {
        let name = match algo.width() {
            Some(_) => algo.to_string(),
            None => format!("{algo}/{}", form.name()),
        };
        Self::new(name, move |m, d, g| {
            scalar_mul_entry(m, &d, g, algo, form, MulOptions::default()).map(|r| r.element)
        })
    }
}

/// Every algorithm on both binary and NAF input, and both windowed
/// algorithms at each width in [`WINDOW_WIDTHS`].
pub fn standard_contenders() -> Vec<Contender> {
    let mut out = Vec::new();
    for form in [DigitForm::Naf, DigitForm::Binary] {
        for algo in Algorithm::SIGNED_BINARY {
            out.push(Contender::from_algorithm(algo, form));
        }
    }
    for width in WINDOW_WIDTHS {
        out.push(Contender::from_algorithm(
            Algorithm::Windowed { width },
            DigitForm::Wnaf(width),
        ));
        out.push(Contender::from_algorithm(
            Algorithm::WindowedDoubleAndAdd { width },
            DigitForm::Wnaf(width),
        ));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_n: u64,
    pub multiplier: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            max_n: 97,
            multiplier: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub algorithm: String,
    pub n: u64,
    pub d: u64,
    pub m: u64,
    pub expected: u64,
    /// The element returned, or the error message.
    pub got: std::result::Result<u64, String>,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: n={} D={} m={} expected {} got ",
            self.algorithm, self.n, self.d, self.m, self.expected
        )?;
        match &self.got {
            Ok(v) => write!(f, "{v}"),
            Err(e) => write!(f, "error ({e})"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub moduli: Vec<u64>,
    pub contenders: usize,
    pub checks: u64,
    pub mismatch_count: u64,
    /// First mismatches found, capped at [`VerifyReport::KEPT`].
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    pub const KEPT: usize = 16;

    pub fn passed(&self) -> bool {
        self.mismatch_count == 0 && self.checks > 0
    }
}

/// For every modulus `n <= max_n` in [`VERIFY_MODULI`], every `D` in `Z/n`
/// and every `m < multiplier * n`, checks each contender returns `m*D mod n`.
pub fn verify(config: VerifyConfig, contenders: &[Contender]) -> Result<VerifyReport> {
    if config.max_n > MAX_VERIFY_MODULUS {
        return Err(Error::InvalidParameter(format!(
            "max_n {} exceeds {MAX_VERIFY_MODULUS}",
            config.max_n
        )));
    }
    if config.multiplier == 0 {
        return Err(Error::InvalidParameter(
            "multiplier must be positive".into(),
        ));
    }
    let moduli: Vec<u64> = VERIFY_MODULI
        .iter()
        .copied()
        .filter(|&n| n <= config.max_n)
        .collect();
    if moduli.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "no verification modulus <= {}",
            config.max_n
        )));
    }

    let mut report = VerifyReport {
        moduli: moduli.clone(),
        contenders: contenders.len(),
        ..Default::default()
    };
    for &n in &moduli {
        let g = ModularGroup::new(n)?;
        for d in 0..n {
            for m in 0..config.multiplier * n {
                let expected = (m * d) % n;
                let scalar = BigInt::from(m);
                for c in contenders {
                    report.checks += 1;
                    let got = (c.run)(&scalar, d, &g).map_err(|e| e.to_string());
                    if got != Ok(expected) {
                        report.mismatch_count += 1;
                        if report.mismatches.len() < VerifyReport::KEPT {
                            report.mismatches.push(Mismatch {
                                algorithm: c.name.clone(),
                                n,
                                d,
                                m,
                                expected,
                                got,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}
