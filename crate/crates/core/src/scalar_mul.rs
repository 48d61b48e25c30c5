//! Scalar multiplication driven by negated doublings and additions.
//!
//! Every negation-aware variant keeps a sign flag `f` and maintains
//!
//! ```text
//! (-1)^f * E = (sum_{j >= i} m_j 2^(j-i)) * D
//! ```
//!
//! after digit position `i` has been processed. `E := -2E` and
//! `E := -(E + s*D)` each flip the sign of the stored element, so each flips
//! `f`; picking `s = (-1)^f * m_i` keeps the relation intact. Starting from
//! `f = l + w mod 2` makes the total number of flips, `l + w - 2`, bring `f`
//! back to zero, so the stored element is `mD` without a final negation.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::group::{CostLedger, Metered, NegationAwareGroup, OpKind};
use crate::recoding::{DigitForm, SignedExpansion, MAX_WIDTH, MIN_WIDTH};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MixedMode {
    /// Doublings are negated, additions are plain.
    NegDoublingOnly,
    /// Additions are negated, doublings are plain.
    NegAdditionOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepKind {
    Init,
    Dbl,
    NegDbl,
    Add,
    NegAdd,
    FinalNeg,
}

impl StepKind {
    fn of(kind: OpKind) -> StepKind {
        match kind {
            OpKind::Add => StepKind::Add,
            OpKind::Dbl => StepKind::Dbl,
            OpKind::NegAdd => StepKind::NegAdd,
            OpKind::NegDbl => StepKind::NegDbl,
            OpKind::Neg => StepKind::FinalNeg,
        }
    }

    /// True for steps after which digit `position` has been added in.
    pub fn completes_digit(self) -> bool {
        matches!(
            self,
            StepKind::Init | StepKind::Add | StepKind::NegAdd | StepKind::FinalNeg
        )
    }
}

/// One recorded step: the operation, the digit position it belongs to
/// (counted from the least significant end), and the state after it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep<E> {
    pub kind: StepKind,
    pub position: usize,
    pub flag: u8,
    pub element: E,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MulOptions {
    pub trace: bool,
}

impl MulOptions {
    pub fn traced() -> Self {
        Self { trace: true }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MulResult<E> {
    pub element: E,
    /// Main-loop operations, including any final negation.
    pub ledger: CostLedger,
    /// Precomputation: `-D`, or the odd-multiple table for windowed runs.
    pub table_ledger: CostLedger,
    pub trace: Option<Vec<TraceStep<E>>>,
    /// Sign flag when the main loop ends, before any output negation.
    pub final_flag: u8,
    /// Whether the output was negated once more because `final_flag` was 1.
    pub final_negation: bool,
}

impl<E> MulResult<E> {
    fn trivial(element: E) -> Self {
        Self {
            element,
            ledger: CostLedger::new(),
            table_ledger: CostLedger::new(),
            trace: None,
            final_flag: 0,
            final_negation: false,
        }
    }

    /// Precomputation and main loop together.
    pub fn total_ledger(&self) -> CostLedger {
        let mut l = self.table_ledger.clone();
        l.merge(&self.ledger);
        l
    }
}

struct Tracer<E> {
    steps: Option<Vec<TraceStep<E>>>,
}

impl<E: Clone> Tracer<E> {
    fn new(opts: MulOptions) -> Self {
        Self {
            steps: opts.trace.then(Vec::new),
        }
    }

    fn record(&mut self, kind: StepKind, position: usize, flag: u8, element: &E) {
        if let Some(steps) = &mut self.steps {
            steps.push(TraceStep {
                kind,
                position,
                flag,
                element: element.clone(),
            });
        }
    }
}

fn check_unit_digits(e: &SignedExpansion) -> Result<()> {
    if let Some(&d) = e.digits().iter().find(|d| d.abs() > 1) {
        return Err(Error::InvalidDigit { digit: d, bound: 1 });
    }
    Ok(())
}

fn check_leading_one(e: &SignedExpansion) -> Result<()> {
    match e.leading_digit() {
        None => Err(Error::EmptyExpansion),
        Some(1) => Ok(()),
        Some(d) => Err(Error::InvalidExpansion(format!(
            "leading digit {d}, expected +1"
        ))),
    }
}

// (-1)^flag * digit, as a sign.
fn signed_digit(flag: u8, digit: i32) -> i32 {
    if flag == 0 {
        digit
    } else {
        -digit
    }
}

/// Left-to-right double-and-add over a {0, ±1} expansion.
///
/// Uses `l - 1` doublings and `w - 1` additions; `-D` is computed once, and
/// only if a `-1` digit occurs.
pub fn double_and_add<G: NegationAwareGroup>(
    e: &SignedExpansion,
    d: &G::Element,
    g: &G,
    opts: MulOptions,
) -> Result<MulResult<G::Element>> {
    check_unit_digits(e)?;
    if e.is_empty() {
        return Ok(MulResult::trivial(g.identity()));
    }
    check_leading_one(e)?;

    let mut table_ledger = CostLedger::new();
    let neg_d = e
        .digits()
        .contains(&-1)
        .then(|| Metered::new(g, &mut table_ledger).neg(d));

    let mut ledger = CostLedger::new();
    let mut tracer = Tracer::new(opts);
    let mut m = Metered::new(g, &mut ledger);
    let l = e.length();
    let mut acc = d.clone();
    tracer.record(StepKind::Init, l - 1, 0, &acc);
    for (k, &digit) in e.digits().iter().enumerate().skip(1) {
        let pos = l - 1 - k;
        acc = m.dbl(&acc);
        tracer.record(StepKind::Dbl, pos, 0, &acc);
        match digit {
            1 => acc = m.add(&acc, d),
            -1 => acc = m.add(&acc, neg_d.as_ref().expect("-D precomputed")),
            _ => continue,
        }
        tracer.record(StepKind::Add, pos, 0, &acc);
    }

    Ok(MulResult {
        element: acc,
        ledger,
        table_ledger,
        trace: tracer.steps,
        final_flag: 0,
        final_negation: false,
    })
}

#[derive(Clone, Copy)]
enum FlagInit {
    /// Parity of the number of flips the loop will perform.
    Parity(u8),
    /// Start with `E = D, f = 0` and fix the sign at the end.
    Online,
}

#[derive(Clone, Copy)]
struct LoopOps {
    doubling: OpKind,
    addition: OpKind,
}

// Shared body of the {0, ±1} variants.
fn signed_loop<G: NegationAwareGroup>(
    e: &SignedExpansion,
    d: &G::Element,
    g: &G,
    init: FlagInit,
    ops: LoopOps,
    opts: MulOptions,
) -> Result<MulResult<G::Element>> {
    check_unit_digits(e)?;
    check_leading_one(e)?;

    let mut table_ledger = CostLedger::new();
    let neg_d = Metered::new(g, &mut table_ledger).neg(d);

    let mut ledger = CostLedger::new();
    let mut tracer = Tracer::new(opts);
    let mut m = Metered::new(g, &mut ledger);
    let l = e.length();

    let mut f = match init {
        FlagInit::Parity(p) => p,
        FlagInit::Online => 0,
    };
    let mut acc = if f == 1 { neg_d.clone() } else { d.clone() };
    tracer.record(StepKind::Init, l - 1, f, &acc);

    for (k, &digit) in e.digits().iter().enumerate().skip(1) {
        let pos = l - 1 - k;
        acc = match ops.doubling {
            OpKind::NegDbl => {
                f ^= 1;
                m.neg_dbl(&acc)
            }
            _ => m.dbl(&acc),
        };
        tracer.record(StepKind::of(ops.doubling), pos, f, &acc);
        if digit == 0 {
            continue;
        }
        let term = if signed_digit(f, digit) > 0 {
            d
        } else {
            &neg_d
        };
        acc = match ops.addition {
            OpKind::NegAdd => {
                f ^= 1;
                m.neg_add(&acc, term)
            }
            _ => m.add(&acc, term),
        };
        tracer.record(StepKind::of(ops.addition), pos, f, &acc);
    }

    let final_flag = f;
    let final_negation = matches!(init, FlagInit::Online) && f == 1;
    if final_negation {
        acc = m.neg(&acc);
        f = 0;
        tracer.record(StepKind::FinalNeg, 0, f, &acc);
    }

    Ok(MulResult {
        element: acc,
        ledger,
        table_ledger,
        trace: tracer.steps,
        final_flag,
        final_negation,
    })
}

fn parity(n: usize) -> u8 {
    (n % 2) as u8
}

/// Computes `mD` using only negated doublings and negated additions.
///
/// The flag starts at `l + w mod 2`, so the loop ends with `f = 0` and the
/// stored element is already `mD`. Runs `l - 1` `neg_dbl` and `w - 1`
/// `neg_add`, plus one `neg` for the stored `-D`.
pub fn neg_scalar_mul<G: NegationAwareGroup>(
    e: &SignedExpansion,
    d: &G::Element,
    g: &G,
    opts: MulOptions,
) -> Result<MulResult<G::Element>> {
    let ops = LoopOps {
        doubling: OpKind::NegDbl,
        addition: OpKind::NegAdd,
    };
    signed_loop(
        e,
        d,
        g,
        FlagInit::Parity(parity(e.length() + e.weight())),
        ops,
        opts,
    )
}

/// Like [`neg_scalar_mul`] but starting from `E = D, f = 0` without looking
/// at the expansion first; if the loop ends with `f = 1` the output is
/// negated once more.
pub fn neg_scalar_mul_online<G: NegationAwareGroup>(
    e: &SignedExpansion,
    d: &G::Element,
    g: &G,
    opts: MulOptions,
) -> Result<MulResult<G::Element>> {
    let ops = LoopOps {
        doubling: OpKind::NegDbl,
        addition: OpKind::NegAdd,
    };
    signed_loop(e, d, g, FlagInit::Online, ops, opts)
}

/// Replaces only one of doubling or addition by its negated form.
///
/// Only the negated operation flips `f`, so the flag starts at the parity of
/// `l - 1` (doublings) or `w - 1` (additions) and the loop ends with `f = 0`.
pub fn mixed_scalar_mul<G: NegationAwareGroup>(
    e: &SignedExpansion,
    d: &G::Element,
    g: &G,
    mode: MixedMode,
    opts: MulOptions,
) -> Result<MulResult<G::Element>> {
    let (ops, flips) = match mode {
        MixedMode::NegDoublingOnly => (
            LoopOps {
                doubling: OpKind::NegDbl,
                addition: OpKind::Add,
            },
            e.length().saturating_sub(1),
        ),
        MixedMode::NegAdditionOnly => (
            LoopOps {
                doubling: OpKind::Dbl,
                addition: OpKind::NegAdd,
            },
            e.weight().saturating_sub(1),
        ),
    };
    signed_loop(e, d, g, FlagInit::Parity(parity(flips)), ops, opts)
}

/// Table of `rD` and `-rD` for odd `1 <= r < 2^(w-1)`.
struct OddMultiples<E> {
    width: u32,
    pos: Vec<E>,
    neg: Vec<E>,
}

impl<E: Clone> OddMultiples<E> {
    fn build<G: NegationAwareGroup<Element = E>>(
        d: &E,
        g: &G,
        width: u32,
        ledger: &mut CostLedger,
    ) -> Self {
        let size = 1usize << (width - 2);
        let mut m = Metered::new(g, ledger);
        let mut pos = Vec::with_capacity(size);
        pos.push(d.clone());
        if size > 1 {
            let twice = m.dbl(d);
            for k in 1..size {
                let next = m.add(&pos[k - 1], &twice);
                pos.push(next);
            }
        }
        let neg = pos.iter().map(|p| m.neg(p)).collect();
        Self { width, pos, neg }
    }

    fn get(&self, digit: i32) -> Result<&E> {
        let idx = (digit.unsigned_abs() as usize).wrapping_sub(1) / 2;
        if digit % 2 == 0 || idx >= self.pos.len() {
            return Err(Error::DigitOutOfTable {
                digit,
                width: self.width,
            });
        }
        Ok(if digit > 0 {
            &self.pos[idx]
        } else {
            &self.neg[idx]
        })
    }
}

fn check_window(e: &SignedExpansion, width: u32) -> Result<()> {
    if !(MIN_WIDTH..=MAX_WIDTH).contains(&width) {
        return Err(Error::WidthOutOfRange(width));
    }
    let limit = 1i64 << (width - 1);
    if let Some(&d) = e
        .digits()
        .iter()
        .find(|&&d| d != 0 && (d % 2 == 0 || i64::from(d).abs() >= limit))
    {
        return Err(Error::DigitOutOfTable { digit: d, width });
    }
    match e.leading_digit() {
        None => Err(Error::EmptyExpansion),
        Some(d) if d > 0 => Ok(()),
        Some(d) => Err(Error::InvalidExpansion(format!(
            "leading digit {d}, expected positive"
        ))),
    }
}

/// Sliding-window variant over a width-`w` NAF.
///
/// Starts from the table entry of the leading digit with `f = 0`, walks the
/// remaining digits with `neg_dbl` and `neg_add` against `±|d|D` from the
/// table, and negates at the end when `f = 1`. Table construction is charged
/// to `table_ledger`: one doubling and `2^(w-2) - 1` additions for the odd
/// multiples, plus one negation per entry.
pub fn windowed_neg_scalar_mul<G: NegationAwareGroup>(
    e: &SignedExpansion,
    d: &G::Element,
    g: &G,
    width: u32,
    opts: MulOptions,
) -> Result<MulResult<G::Element>> {
    check_window(e, width)?;
    let mut table_ledger = CostLedger::new();
    let table = OddMultiples::build(d, g, width, &mut table_ledger);

    let mut ledger = CostLedger::new();
    let mut tracer = Tracer::new(opts);
    let mut m = Metered::new(g, &mut ledger);
    let digits = e.digits();
    let l = digits.len();

    let mut f = 0u8;
    let mut acc = table.get(digits[0])?.clone();
    tracer.record(StepKind::Init, l - 1, f, &acc);
    for (k, &digit) in digits.iter().enumerate().skip(1) {
        let pos = l - 1 - k;
        acc = m.neg_dbl(&acc);
        f ^= 1;
        tracer.record(StepKind::NegDbl, pos, f, &acc);
        if digit != 0 {
            acc = m.neg_add(&acc, table.get(signed_digit(f, digit))?);
            f ^= 1;
            tracer.record(StepKind::NegAdd, pos, f, &acc);
        }
    }

    let final_flag = f;
    if f == 1 {
        acc = m.neg(&acc);
        tracer.record(StepKind::FinalNeg, 0, 0, &acc);
    }

    Ok(MulResult {
        element: acc,
        ledger,
        table_ledger,
        trace: tracer.steps,
        final_flag,
        final_negation: final_flag == 1,
    })
}

/// Plain sliding-window baseline over a width-`w` NAF, with the same table
/// as [`windowed_neg_scalar_mul`].
pub fn windowed_double_and_add<G: NegationAwareGroup>(
    e: &SignedExpansion,
    d: &G::Element,
    g: &G,
    width: u32,
    opts: MulOptions,
) -> Result<MulResult<G::Element>> {
    check_window(e, width)?;
    let mut table_ledger = CostLedger::new();
    let table = OddMultiples::build(d, g, width, &mut table_ledger);

    let mut ledger = CostLedger::new();
    let mut tracer = Tracer::new(opts);
    let mut m = Metered::new(g, &mut ledger);
    let digits = e.digits();
    let l = digits.len();

    let mut acc = table.get(digits[0])?.clone();
    tracer.record(StepKind::Init, l - 1, 0, &acc);
    for (k, &digit) in digits.iter().enumerate().skip(1) {
        let pos = l - 1 - k;
        acc = m.dbl(&acc);
        tracer.record(StepKind::Dbl, pos, 0, &acc);
        if digit != 0 {
            acc = m.add(&acc, table.get(digit)?);
            tracer.record(StepKind::Add, pos, 0, &acc);
        }
    }

    Ok(MulResult {
        element: acc,
        ledger,
        table_ledger,
        trace: tracer.steps,
        final_flag: 0,
        final_negation: false,
    })
}

/// Algorithm selector for [`scalar_mul_entry`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    DoubleAndAdd,
    NegScalarMul,
    Online,
    Mixed(MixedMode),
    Windowed { width: u32 },
    WindowedDoubleAndAdd { width: u32 },
}

impl Algorithm {
    /// Every {0, ±1} algorithm, baseline first.
    pub const SIGNED_BINARY: [Algorithm; 5] = [
        Algorithm::DoubleAndAdd,
        Algorithm::NegScalarMul,
        Algorithm::Online,
        Algorithm::Mixed(MixedMode::NegDoublingOnly),
        Algorithm::Mixed(MixedMode::NegAdditionOnly),
    ];

    /// Parses a selector id. `width` applies to the windowed ids.
    pub fn from_id(id: &str, width: u32) -> Result<Self> {
        let a = match id {
            "baseline" | "double-and-add" => Algorithm::DoubleAndAdd,
            "neg" => Algorithm::NegScalarMul,
            "online" => Algorithm::Online,
            "mixed-dbl" => Algorithm::Mixed(MixedMode::NegDoublingOnly),
            "mixed-add" => Algorithm::Mixed(MixedMode::NegAdditionOnly),
            "window" => Algorithm::Windowed { width },
            "window-baseline" => Algorithm::WindowedDoubleAndAdd { width },
            other => return Err(Error::UnknownAlgorithm(other.to_string())),
        };
        if let Some(w) = a.width() {
            if !(MIN_WIDTH..=MAX_WIDTH).contains(&w) {
                return Err(Error::WidthOutOfRange(w));
            }
        }
        Ok(a)
    }

    pub fn id(self) -> &'static str {
        match self {
            Algorithm::DoubleAndAdd => "baseline",
            Algorithm::NegScalarMul => "neg",
            Algorithm::Online => "online",
            Algorithm::Mixed(MixedMode::NegDoublingOnly) => "mixed-dbl",
            Algorithm::Mixed(MixedMode::NegAdditionOnly) => "mixed-add",
            Algorithm::Windowed { .. } => "window",
            Algorithm::WindowedDoubleAndAdd { .. } => "window-baseline",
        }
    }

    pub fn width(self) -> Option<u32> {
        match self {
            Algorithm::Windowed { width } | Algorithm::WindowedDoubleAndAdd { width } => {
                Some(width)
            }
            _ => None,
        }
    }

    pub fn is_baseline(self) -> bool {
        matches!(
            self,
            Algorithm::DoubleAndAdd | Algorithm::WindowedDoubleAndAdd { .. }
        )
    }

    /// The digit form this algorithm consumes; `form` picks between binary
    /// and NAF for the {0, ±1} algorithms.
    pub fn digit_form(self, form: DigitForm) -> Result<DigitForm> {
        match (self.width(), form) {
            (Some(w), _) => Ok(DigitForm::Wnaf(w)),
            (None, DigitForm::Wnaf(_)) => Err(Error::InvalidParameter(format!(
                "algorithm `{}` needs a binary or NAF expansion",
                self.id()
            ))),
            (None, f) => Ok(f),
        }
    }

    /// Runs the algorithm on an already recoded expansion.
    pub fn run<G: NegationAwareGroup>(
        self,
        e: &SignedExpansion,
        d: &G::Element,
        g: &G,
        opts: MulOptions,
    ) -> Result<MulResult<G::Element>> {
        match self {
            Algorithm::DoubleAndAdd => double_and_add(e, d, g, opts),
            Algorithm::NegScalarMul => neg_scalar_mul(e, d, g, opts),
            Algorithm::Online => neg_scalar_mul_online(e, d, g, opts),
            Algorithm::Mixed(mode) => mixed_scalar_mul(e, d, g, mode, opts),
            Algorithm::Windowed { width } => windowed_neg_scalar_mul(e, d, g, width, opts),
            Algorithm::WindowedDoubleAndAdd { width } => {
                windowed_double_and_add(e, d, g, width, opts)
            }
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.width() {
            Some(w) => write!(f, "{}(w={w})", self.id()),
            None => f.write_str(self.id()),
        }
    }
}

/// Computes `mD` for any integer `m`.
///
/// `m = 0` returns the identity and `m = 1` returns `D`, both with empty
/// ledgers. Negative `m` is computed as `|m| * (-D)`, charging one `neg` to
/// the precomputation ledger. Otherwise `m` is recoded into the form the
/// algorithm needs and dispatched.
pub fn scalar_mul_entry<G: NegationAwareGroup>(
    m: &BigInt,
    d: &G::Element,
    g: &G,
    algo: Algorithm,
    form: DigitForm,
    opts: MulOptions,
) -> Result<MulResult<G::Element>> {
    let form = algo.digit_form(form)?;
    if m.is_zero() {
        return Ok(MulResult::trivial(g.identity()));
    }

    let mut sign_ledger = CostLedger::new();
    let base = if m.sign() == Sign::Minus {
        Metered::new(g, &mut sign_ledger).neg(d)
    } else {
        d.clone()
    };
    let magnitude = m.abs().to_biguint().expect("nonnegative");

    let mut out = if magnitude == 1u32.into() {
        MulResult::trivial(base)
    } else {
        let e = form.recode(&magnitude)?;
        algo.run(&e, &base, g, opts)?
    };
    sign_ledger.merge(&out.table_ledger);
    out.table_ledger = sign_ledger;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::ModularGroup;
    use crate::recoding::{binary_expansion, naf, width_w_naf};
    use num_bigint::BigUint;

    fn zn(n: u64) -> ModularGroup {
        ModularGroup::new(n).unwrap()
    }

    fn exp(digits: &[i32]) -> SignedExpansion {
        SignedExpansion::from_msb_digits(digits.to_vec(), 1).unwrap()
    }

    fn nafu(m: u64) -> SignedExpansion {
        naf(&BigUint::from(m))
    }

    #[test]
    fn double_and_add_examples() {
        let r = double_and_add(&nafu(3), &1, &zn(7), MulOptions::default()).unwrap();
        assert_eq!(r.element, 3);
        let r = double_and_add(&exp(&[1]), &4, &zn(7), MulOptions::default()).unwrap();
        assert_eq!(r.element, 4);
        assert!(r.total_ledger().is_empty());
        let r = double_and_add(
            &binary_expansion(&BigUint::from(6u32)),
            &2,
            &zn(11),
            MulOptions::default(),
        )
        .unwrap();
        assert_eq!(r.element, 1);
        assert_eq!(r.total_ledger().count(OpKind::Neg), 0);
    }

    #[test]
    fn double_and_add_counts() {
        let r = double_and_add(&nafu(3), &1, &zn(7), MulOptions::default()).unwrap();
        let t = r.total_ledger();
        assert_eq!(
            (
                t.count(OpKind::Dbl),
                t.count(OpKind::Add),
                t.count(OpKind::Neg)
            ),
            (2, 1, 1)
        );
    }

    #[test]
    fn neg_scalar_mul_hand_trace_for_three() {
        let r = neg_scalar_mul(&nafu(3), &1, &zn(7), MulOptions::traced()).unwrap();
        assert_eq!(r.element, 3);
        let trace: Vec<_> = r
            .trace
            .unwrap()
            .into_iter()
            .map(|s| (s.kind, s.flag, s.element))
            .collect();
        assert_eq!(
            trace,
            vec![
                (StepKind::Init, 1, 6),   // -D
                (StepKind::NegDbl, 0, 2), // 2D
                (StepKind::NegDbl, 1, 3), // -4D
                (StepKind::NegAdd, 0, 3), // -(-4D + D) = 3D
            ]
        );
        assert_eq!(r.final_flag, 0);
    }

    #[test]
    fn neg_scalar_mul_small_cases() {
        let r = neg_scalar_mul(&exp(&[1, 0]), &1, &zn(5), MulOptions::traced()).unwrap();
        assert_eq!(r.element, 2);
        let t = r.trace.unwrap();
        assert_eq!((t[0].flag, t[0].element), (1, 4));
        assert_eq!((t[1].flag, t[1].element), (0, 2));

        let r = neg_scalar_mul(&exp(&[1]), &3, &zn(5), MulOptions::default()).unwrap();
        assert_eq!((r.element, r.final_flag), (3, 0));
        assert!(r.ledger.is_empty());
    }

    #[test]
    fn neg_scalar_mul_rejects_bad_input() {
        let g = zn(7);
        assert_eq!(
            neg_scalar_mul(&SignedExpansion::empty(), &1, &g, MulOptions::default()),
            Err(Error::EmptyExpansion)
        );
        let lead_neg = exp(&[-1, 0, 1]);
        assert!(matches!(
            neg_scalar_mul(&lead_neg, &1, &g, MulOptions::default()),
            Err(Error::InvalidExpansion(_))
        ));
        assert!(matches!(
            double_and_add(&lead_neg, &1, &g, MulOptions::default()),
            Err(Error::InvalidExpansion(_))
        ));
        let wide = SignedExpansion::from_msb_digits(vec![1, 0, 3], 3).unwrap();
        assert!(matches!(
            neg_scalar_mul(&wide, &1, &g, MulOptions::default()),
            Err(Error::InvalidDigit { .. })
        ));
    }

    #[test]
    fn online_examples() {
        let r = neg_scalar_mul_online(&exp(&[1, 0]), &1, &zn(5), MulOptions::traced()).unwrap();
        assert_eq!(r.element, 2);
        assert!(r.final_negation);
        let t = r.trace.unwrap();
        assert_eq!(t[t.len() - 2].element, 3); // -2D before the final negation
        assert_eq!(r.ledger.count(OpKind::Neg), 1);

        let r = neg_scalar_mul_online(&exp(&[1]), &2, &zn(5), MulOptions::default()).unwrap();
        assert_eq!((r.element, r.final_negation), (2, false));

        // The loop flips f l + w - 2 times: odd for naf(3) (l + w = 5) as for
        // m = 2, even for m = 4 (l + w = 4).
        let r = neg_scalar_mul_online(&nafu(3), &1, &zn(7), MulOptions::default()).unwrap();
        assert_eq!((r.element, r.final_negation), (3, true));
        let r = neg_scalar_mul_online(&nafu(4), &1, &zn(7), MulOptions::default()).unwrap();
        assert_eq!((r.element, r.final_negation), (4, false));
        assert_eq!(r.ledger.count(OpKind::Neg), 0);
    }

    #[test]
    fn mixed_ledgers_for_three() {
        let g = zn(7);
        let r = mixed_scalar_mul(
            &nafu(3),
            &1,
            &g,
            MixedMode::NegDoublingOnly,
            MulOptions::default(),
        )
        .unwrap();
        assert_eq!(r.element, 3);
        let l = &r.ledger;
        assert_eq!(
            (
                l.count(OpKind::NegDbl),
                l.count(OpKind::Add),
                l.count(OpKind::Dbl)
            ),
            (2, 1, 0)
        );
        let r = mixed_scalar_mul(
            &nafu(3),
            &1,
            &g,
            MixedMode::NegAdditionOnly,
            MulOptions::default(),
        )
        .unwrap();
        assert_eq!(r.element, 3);
        let l = &r.ledger;
        assert_eq!(
            (
                l.count(OpKind::Dbl),
                l.count(OpKind::NegAdd),
                l.count(OpKind::NegDbl)
            ),
            (2, 1, 0)
        );
        assert_eq!(r.final_flag, 0);
    }

    #[test]
    fn windowed_examples() {
        let e = width_w_naf(&BigUint::from(7u32), 3).unwrap();
        let r = windowed_neg_scalar_mul(&e, &1, &zn(13), 3, MulOptions::default()).unwrap();
        assert_eq!(r.element, 7);

        let e = SignedExpansion::from_msb_digits(vec![3], 3).unwrap();
        let r = windowed_neg_scalar_mul(&e, &1, &zn(7), 3, MulOptions::default()).unwrap();
        assert_eq!(r.element, 3);
        assert!(r.ledger.is_empty());
        // D, 3D from one dbl and one add; two negations.
        let t = &r.table_ledger;
        assert_eq!(
            (
                t.count(OpKind::Dbl),
                t.count(OpKind::Add),
                t.count(OpKind::Neg)
            ),
            (1, 1, 2)
        );
    }

    #[test]
    fn windowed_table_bounds() {
        let g = zn(101);
        let e = SignedExpansion::from_msb_digits(vec![5, 0, 0, 1], 7).unwrap();
        assert_eq!(
            windowed_neg_scalar_mul(&e, &1, &g, 3, MulOptions::default()),
            Err(Error::DigitOutOfTable { digit: 5, width: 3 })
        );
        assert_eq!(
            windowed_neg_scalar_mul(&e, &1, &g, 17, MulOptions::default()),
            Err(Error::WidthOutOfRange(17))
        );
        let r = windowed_neg_scalar_mul(&e, &1, &g, 4, MulOptions::default()).unwrap();
        assert_eq!(r.element, 41);
        let neg_lead = SignedExpansion::from_msb_digits(vec![-3, 0, 0, 1], 3).unwrap();
        assert!(matches!(
            windowed_double_and_add(&neg_lead, &1, &g, 3, MulOptions::default()),
            Err(Error::InvalidExpansion(_))
        ));
    }

    #[test]
    fn entry_special_cases() {
        let g = zn(31);
        for algo in Algorithm::SIGNED_BINARY {
            let r = scalar_mul_entry(
                &BigInt::from(0),
                &5,
                &g,
                algo,
                DigitForm::Naf,
                MulOptions::default(),
            )
            .unwrap();
            assert_eq!(r.element, 0);
            assert!(r.total_ledger().is_empty());
            let r = scalar_mul_entry(
                &BigInt::from(1),
                &5,
                &g,
                algo,
                DigitForm::Naf,
                MulOptions::default(),
            )
            .unwrap();
            assert_eq!(r.element, 5);
            let r = scalar_mul_entry(
                &BigInt::from(25),
                &1,
                &g,
                algo,
                DigitForm::Naf,
                MulOptions::default(),
            )
            .unwrap();
            assert_eq!(r.element, 25);
            let r = scalar_mul_entry(
                &BigInt::from(-25),
                &1,
                &g,
                algo,
                DigitForm::Binary,
                MulOptions::default(),
            )
            .unwrap();
            assert_eq!(r.element, 6);
        }
        let r = scalar_mul_entry(
            &BigInt::from(25),
            &1,
            &g,
            Algorithm::Windowed { width: 3 },
            DigitForm::Naf,
            MulOptions::default(),
        )
        .unwrap();
        assert_eq!(r.element, 25);
        assert!(scalar_mul_entry(
            &BigInt::from(25),
            &1,
            &g,
            Algorithm::NegScalarMul,
            DigitForm::Wnaf(3),
            MulOptions::default()
        )
        .is_err());
    }

    #[test]
    fn algorithm_ids() {
        for id in [
            "baseline",
            "neg",
            "online",
            "mixed-dbl",
            "mixed-add",
            "window",
            "window-baseline",
        ] {
            assert_eq!(Algorithm::from_id(id, 3).unwrap().id(), id);
        }
        assert_eq!(
            Algorithm::from_id("ladder", 3),
            Err(Error::UnknownAlgorithm("ladder".into()))
        );
        assert_eq!(
            Algorithm::from_id("window", 1),
            Err(Error::WidthOutOfRange(1))
        );
    }
}
