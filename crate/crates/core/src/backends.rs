//! Concrete groups: the exact modular oracle and the cost-charging wrapper.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{weighted_total, CostRatios, CostVector, NegationAwareGroup, OpKind};

/// The cyclic group Z/nZ under addition. Residues live in `[0, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModularGroup {
    n: u64,
}

impl ModularGroup {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("modulus must be positive".into()));
        }
        Ok(Self { n })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn element(&self, a: u64) -> u64 {
        a % self.n
    }

    /// `m * d mod n`, computed directly. Used as the reference product.
    pub fn multiple(&self, m: &BigUint, d: u64) -> u64 {
        let m = (m % self.n).iter_u64_digits().next().unwrap_or(0);
        ((u128::from(m) * u128::from(d % self.n)) % u128::from(self.n)) as u64
    }
}

impl NegationAwareGroup for ModularGroup {
    type Element = u64;

    fn identity(&self) -> u64 {
        0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((u128::from(*a) + u128::from(*b)) % u128::from(self.n)) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.n - a % self.n) % self.n
    }

    fn dbl(&self, a: &u64) -> u64 {
        ((u128::from(*a) << 1) % u128::from(self.n)) as u64
    }

    fn neg_add(&self, a: &u64, b: &u64) -> u64 {
        let s = self.add(a, b);
        if s == 0 {
            0
        } else {
            self.n - s
        }
    }

    fn neg_dbl(&self, a: &u64) -> u64 {
        let s = self.dbl(a);
        if s == 0 {
            0
        } else {
            self.n - s
        }
    }

    fn order(&self) -> Option<BigUint> {
        Some(BigUint::from(self.n))
    }
}

/// Field-operation costs of each group operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostProfile {
    pub name: String,
    pub add_cost: CostVector,
    pub dbl_cost: CostVector,
    pub neg_cost: CostVector,
    pub neg_add_cost: CostVector,
    pub neg_dbl_cost: CostVector,
}

impl CostProfile {
    pub fn cost_of(&self, kind: OpKind) -> CostVector {
        match kind {
            OpKind::Add => self.add_cost,
            OpKind::Dbl => self.dbl_cost,
            OpKind::Neg => self.neg_cost,
            OpKind::NegAdd => self.neg_add_cost,
            OpKind::NegDbl => self.neg_dbl_cost,
        }
    }

    pub fn zero(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            add_cost: CostVector::ZERO,
            dbl_cost: CostVector::ZERO,
            neg_cost: CostVector::ZERO,
            neg_add_cost: CostVector::ZERO,
            neg_dbl_cost: CostVector::ZERO,
        }
    }

    /// Picard-curve divisor-class arithmetic, generic case.
    ///
    /// The standalone negation has no published count; it is modelled as the
    /// difference between plain and fused addition, i.e. the final negation
    /// step that the fused operation skips.
    pub fn picard() -> Self {
        let add = CostVector::new(144, 12, 2, 0);
        let neg_add = CostVector::new(133, 9, 2, 0);
        Self {
            name: "picard".into(),
            add_cost: add,
            dbl_cost: CostVector::new(158, 16, 2, 0),
            neg_cost: CostVector::new(add.mul - neg_add.mul, add.sqr - neg_add.sqr, 0, 0),
            neg_add_cost: neg_add,
            neg_dbl_cost: CostVector::new(147, 13, 2, 0),
        }
    }

    /// Genus-3 hyperelliptic Jacobian, where negation is free and the fused
    /// operations cost the same as the plain ones.
    ///
    /// The add/dbl counts (I + 70M + 6S, I + 61M + 10S) are illustrative
    /// affine explicit-formula figures; only their equality with the fused
    /// counts matters for the savings comparison.
    pub fn hyperelliptic() -> Self {
        let add = CostVector::new(70, 6, 1, 0);
        let dbl = CostVector::new(61, 10, 1, 0);
        Self {
            name: "hyperelliptic".into(),
            add_cost: add,
            dbl_cost: dbl,
            neg_cost: CostVector::ZERO,
            neg_add_cost: add,
            neg_dbl_cost: dbl,
        }
    }

    /// Soft checks: a fused negation should never cost more than the plain
    /// operation followed by a negation.
    pub fn warnings(&self, ratios: &CostRatios) -> Vec<String> {
        let w = |c: &CostVector| weighted_total(c, ratios);
        let neg = w(&self.neg_cost);
        let mut out = Vec::new();
        if w(&self.neg_add_cost) > w(&self.add_cost) + &neg {
            out.push(format!(
                "profile `{}`: neg_add costs more than add followed by neg",
                self.name
            ));
        }
        if w(&self.neg_dbl_cost) > w(&self.dbl_cost) + &neg {
            out.push(format!(
                "profile `{}`: neg_dbl costs more than dbl followed by neg",
                self.name
            ));
        }
        out
    }

    /// Reads a JSON profile; returns the profile and any ratio override it carries.
    pub fn from_json_str(name: &str, text: &str) -> Result<(Self, Option<CostRatios>)> {
        let file: ProfileFile =
            serde_json::from_str(text).map_err(|e| Error::MalformedProfile(e.to_string()))?;
        if let Some(r) = &file.ratios {
            r.validate()?;
        }
        let profile = Self {
            name: name.to_string(),
            add_cost: file.add,
            dbl_cost: file.dbl,
            neg_cost: file.neg,
            neg_add_cost: file.neg_add,
            neg_dbl_cost: file.neg_dbl,
        };
        Ok((profile, file.ratios))
    }

    pub fn from_json_file(path: &Path) -> Result<(Self, Option<CostRatios>)> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::MalformedProfile(format!("{}: {e}", path.display())))?;
        let name = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("custom");
        Self::from_json_str(name, &text)
    }

    pub fn to_json(&self, ratios: Option<&CostRatios>) -> String {
        let file = ProfileFile {
            add: self.add_cost,
            dbl: self.dbl_cost,
            neg: self.neg_cost,
            neg_add: self.neg_add_cost,
            neg_dbl: self.neg_dbl_cost,
            ratios: ratios.cloned(),
        };
        serde_json::to_string_pretty(&file).expect("profile serializes")
    }
}

/// On-disk cost profile.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileFile {
    add: CostVector,
    dbl: CostVector,
    neg: CostVector,
    neg_add: CostVector,
    neg_dbl: CostVector,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ratios: Option<CostRatios>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    Picard,
    Hyperelliptic,
}

impl Preset {
    pub fn profile(self) -> CostProfile {
        match self {
            Preset::Picard => CostProfile::picard(),
            Preset::Hyperelliptic => CostProfile::hyperelliptic(),
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "picard" => Ok(Preset::Picard),
            "hyperelliptic" => Ok(Preset::Hyperelliptic),
            other => Err(Error::UnknownPreset(other.to_string())),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Preset::Picard => "picard",
            Preset::Hyperelliptic => "hyperelliptic",
        })
    }
}

/// Looks up a named preset.
pub fn preset(name: &str) -> Result<CostProfile> {
    name.parse::<Preset>().map(Preset::profile)
}

/// Delegates element math to `inner` and reports `profile`'s costs.
#[derive(Clone, Debug)]
pub struct CostChargingGroup<G> {
    inner: G,
    profile: CostProfile,
}

impl<G: NegationAwareGroup> CostChargingGroup<G> {
    pub fn new(inner: G, profile: CostProfile) -> Self {
        Self { inner, profile }
    }

    pub fn inner(&self) -> &G {
        &self.inner
    }

    pub fn profile(&self) -> &CostProfile {
        &self.profile
    }
}

impl<G: NegationAwareGroup> NegationAwareGroup for CostChargingGroup<G> {
    type Element = G::Element;

    fn identity(&self) -> G::Element {
        self.inner.identity()
    }

    fn add(&self, a: &G::Element, b: &G::Element) -> G::Element {
        self.inner.add(a, b)
    }

    fn neg(&self, a: &G::Element) -> G::Element {
        self.inner.neg(a)
    }

    fn dbl(&self, a: &G::Element) -> G::Element {
        self.inner.dbl(a)
    }

    fn neg_add(&self, a: &G::Element, b: &G::Element) -> G::Element {
        self.inner.neg_add(a, b)
    }

    fn neg_dbl(&self, a: &G::Element) -> G::Element {
        self.inner.neg_dbl(a)
    }

    fn order(&self) -> Option<BigUint> {
        self.inner.order()
    }

    fn cost(&self, kind: OpKind) -> CostVector {
        self.profile.cost_of(kind)
    }
}
