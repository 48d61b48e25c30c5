//! The negation-aware group interface and field-operation cost accounting.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The five group operations a scalar multiplication may invoke.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpKind {
    Add,
    Dbl,
    Neg,
    NegAdd,
    NegDbl,
}

impl OpKind {
    pub const ALL: [OpKind; 5] = [
        OpKind::Add,
        OpKind::Dbl,
        OpKind::Neg,
        OpKind::NegAdd,
        OpKind::NegDbl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OpKind::Add => "add",
            OpKind::Dbl => "dbl",
            OpKind::Neg => "neg",
            OpKind::NegAdd => "neg_add",
            OpKind::NegDbl => "neg_dbl",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An abelian group in which `-(a + b)` and `-2a` are first-class operations.
///
/// All operations must be pure in their element arguments. The fused
/// negations default to their compositions; implementors override them when
/// they can produce the same element more cheaply, and report what each
/// operation costs through [`NegationAwareGroup::cost`].
pub trait NegationAwareGroup {
    type Element: Clone + PartialEq + fmt::Debug;

    fn identity(&self) -> Self::Element;

    fn add(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;

    fn neg(&self, a: &Self::Element) -> Self::Element;

    fn dbl(&self, a: &Self::Element) -> Self::Element {
        self.add(a, a)
    }

    /// `-(a + b)`.
    fn neg_add(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        self.neg(&self.add(a, b))
    }

    /// `-2a`.
    fn neg_dbl(&self, a: &Self::Element) -> Self::Element {
        self.neg(&self.dbl(a))
    }

    /// Group order, when known.
    fn order(&self) -> Option<BigUint> {
        None
    }

    /// Field-operation cost charged for one invocation of `kind`.
    fn cost(&self, _kind: OpKind) -> CostVector {
        CostVector::ZERO
    }
}

/// Counts of field multiplications, squarings, inversions and additions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CostVector {
    #[serde(rename = "M")]
    pub mul: u64,
    #[serde(rename = "S")]
    pub sqr: u64,
    #[serde(rename = "I")]
    pub inv: u64,
    #[serde(rename = "A")]
    pub add_f: u64,
}

impl CostVector {
    pub const ZERO: CostVector = CostVector {
        mul: 0,
        sqr: 0,
        inv: 0,
        add_f: 0,
    };

    pub const fn new(mul: u64, sqr: u64, inv: u64, add_f: u64) -> Self {
        Self {
            mul,
            sqr,
            inv,
            add_f,
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }
}

impl Add for CostVector {
    type Output = CostVector;

    fn add(self, rhs: CostVector) -> CostVector {
        CostVector {
            mul: self.mul + rhs.mul,
            sqr: self.sqr + rhs.sqr,
            inv: self.inv + rhs.inv,
            add_f: self.add_f + rhs.add_f,
        }
    }
}

impl AddAssign for CostVector {
    fn add_assign(&mut self, rhs: CostVector) {
        *self = *self + rhs;
    }
}

impl Mul<u64> for CostVector {
    type Output = CostVector;

    fn mul(self, k: u64) -> CostVector {
        CostVector {
            mul: self.mul * k,
            sqr: self.sqr * k,
            inv: self.inv * k,
            add_f: self.add_f * k,
        }
    }
}

impl std::iter::Sum for CostVector {
    fn sum<I: Iterator<Item = CostVector>>(iter: I) -> Self {
        iter.fold(CostVector::ZERO, Add::add)
    }
}

impl fmt::Display for CostVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}M {}S {}I {}A",
            self.mul, self.sqr, self.inv, self.add_f
        )
    }
}

/// Exact rational with a string serde form (`"2/3"`, `"10"`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exact(pub BigRational);

impl Exact {
    pub fn integer(n: i64) -> Self {
        Exact(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Exact(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Exact {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::MalformedRatio(s.to_string());
        let value = match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
        };
        Ok(Exact(value))
    }
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Weights converting S, I and A counts into M-equivalents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CostRatios {
    pub sqr_per_mul: Exact,
    pub inv_per_mul: Exact,
    pub addf_per_mul: Exact,
}

impl Default for CostRatios {
    /// I = 10M, S = (2/3)M, A = 0.
    fn default() -> Self {
        Self {
            sqr_per_mul: Exact::ratio(2, 3),
            inv_per_mul: Exact::integer(10),
            addf_per_mul: Exact::integer(0),
        }
    }
}

impl CostRatios {
    pub fn new(sqr_per_mul: Exact, inv_per_mul: Exact, addf_per_mul: Exact) -> Result<Self> {
        let r = Self {
            sqr_per_mul,
            inv_per_mul,
            addf_per_mul,
        };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("sqr_per_mul", &self.sqr_per_mul),
            ("inv_per_mul", &self.inv_per_mul),
            ("addf_per_mul", &self.addf_per_mul),
        ] {
            if v.0.is_negative() {
                return Err(Error::MalformedRatio(format!("{name} = {v} is negative")));
            }
        }
        Ok(())
    }

    /// Parses an override such as `sqr=2/3,inv=10,addf=0`. Missing keys keep
    /// their value from `self`.
    pub fn with_overrides(&self, spec: &str) -> Result<Self> {
        let mut out = self.clone();
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::MalformedRatio(part.to_string()))?;
            let value: Exact = value.parse()?;
            match key.trim() {
                "sqr" | "sqr_per_mul" | "S" => out.sqr_per_mul = value,
                "inv" | "inv_per_mul" | "I" => out.inv_per_mul = value,
                "addf" | "addf_per_mul" | "A" => out.addf_per_mul = value,
                other => return Err(Error::MalformedRatio(format!("unknown ratio `{other}`"))),
            }
        }
        out.validate()?;
        Ok(out)
    }
}

/// `mul + sqr*S + inv*I + add_f*A`, exactly.
pub fn weighted_total(c: &CostVector, r: &CostRatios) -> BigRational {
    let int = |n: u64| BigRational::from_integer(BigInt::from(n));
    int(c.mul)
        + int(c.sqr) * &r.sqr_per_mul.0
        + int(c.inv) * &r.inv_per_mul.0
        + int(c.add_f) * &r.addf_per_mul.0
}

/// `(base - improved) / base * 100`, exactly.
pub fn savings_percent(base: &BigRational, improved: &BigRational) -> Result<BigRational> {
    if !base.is_positive() {
        return Err(Error::NonPositiveBase);
    }
    Ok((base - improved) / base * BigRational::from_integer(BigInt::from(100)))
}

/// Invocation count and accumulated cost for one operation kind.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tally {
    pub count: u64,
    pub cost: CostVector,
}

/// Per-kind tallies for one computation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CostLedger {
    tallies: [Tally; 5],
}

impl CostLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn charge(&mut self, kind: OpKind, cost: CostVector) {
        let t = &mut self.tallies[kind.index()];
        t.count += 1;
        t.cost += cost;
    }

    pub fn tally(&self, kind: OpKind) -> Tally {
        self.tallies[kind.index()]
    }

    pub fn count(&self, kind: OpKind) -> u64 {
        self.tally(kind).count
    }

    pub fn total(&self) -> CostVector {
        self.tallies.iter().map(|t| t.cost).sum()
    }

    pub fn total_count(&self) -> u64 {
        self.tallies.iter().map(|t| t.count).sum()
    }

    pub fn weighted(&self, r: &CostRatios) -> BigRational {
        weighted_total(&self.total(), r)
    }

    pub fn is_empty(&self) -> bool {
        self.total_count() == 0
    }

    pub fn merge(&mut self, other: &CostLedger) {
        for (a, b) in self.tallies.iter_mut().zip(other.tallies.iter()) {
            a.count += b.count;
            a.cost += b.cost;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (OpKind, Tally)> + '_ {
        OpKind::ALL.iter().map(move |&k| (k, self.tally(k)))
    }
}

impl Serialize for CostLedger {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(5))?;
        for (k, t) in self.iter() {
            map.serialize_entry(k.name(), &t)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for CostLedger {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            add: Tally,
            dbl: Tally,
            neg: Tally,
            neg_add: Tally,
            neg_dbl: Tally,
        }
        let r = Raw::deserialize(deserializer)?;
        Ok(CostLedger {
            tallies: [r.add, r.dbl, r.neg, r.neg_add, r.neg_dbl],
        })
    }
}

/// Borrows a group and charges every operation to a ledger.
pub struct Metered<'a, G: NegationAwareGroup + ?Sized> {
    group: &'a G,
    ledger: &'a mut CostLedger,
}

impl<'a, G: NegationAwareGroup + ?Sized> Metered<'a, G> {
    pub fn new(group: &'a G, ledger: &'a mut CostLedger) -> Self {
        Self { group, ledger }
    }

    fn charge(&mut self, kind: OpKind) {
        let c = self.group.cost(kind);
        self.ledger.charge(kind, c);
    }

    pub fn add(&mut self, a: &G::Element, b: &G::Element) -> G::Element {
        self.charge(OpKind::Add);
        self.group.add(a, b)
    }

    pub fn dbl(&mut self, a: &G::Element) -> G::Element {
        self.charge(OpKind::Dbl);
        self.group.dbl(a)
    }

    pub fn neg(&mut self, a: &G::Element) -> G::Element {
        self.charge(OpKind::Neg);
        self.group.neg(a)
    }

    pub fn neg_add(&mut self, a: &G::Element, b: &G::Element) -> G::Element {
        self.charge(OpKind::NegAdd);
        self.group.neg_add(a, b)
    }

    pub fn neg_dbl(&mut self, a: &G::Element) -> G::Element {
        self.charge(OpKind::NegDbl);
        self.group.neg_dbl(a)
    }
}
