//! Closed forms for one branching level: squared reduced Wigner coefficients,
//! the invariants gamma, the squared reduced matrix elements mu and the
//! coupled coefficients omega_kr.
//!
//! Every quantity has two independent evaluations. `Form::RootProduct` uses
//! the deformed roots `a = q^{-x}[x]` and the subalgebra roots in their
//! displayed shifted form `q^{-2(r)} a_0r + (r) q^{-(r)}`. `Form::QNumberPhase`
//! uses q-numbers of classical root differences times a power of q.
//!
//! Public indices `k`, `r` are 1-based global labels.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::branching::{index_sets, BranchingData, BranchingError};
use crate::exactq::{deformed_root, ExactError, QFraction};
use crate::superweight::{classical_roots, RootVariant, Signature, Weight};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WignerError {
    #[error("coinciding roots at index pairs {0:?}")]
    DegenerateRoots(Vec<(usize, usize)>),
    #[error("index {index} is not in the admissible set {set:?}")]
    AdmissibilityError { index: usize, set: Vec<usize> },
    #[error(transparent)]
    Branching(#[from] BranchingError),
    #[error("unknown phase convention {0:?}")]
    UnknownPhaseConvention(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Lower kind uses dual roots and `I0`; raise kind uses adjoint roots and `I0bar`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Lower,
    Raise,
}

impl FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lower" => Ok(Variant::Lower),
            "raise" => Ok(Variant::Raise),
            _ => Err(format!("unknown kind {s:?}")),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Lower => "lower",
            Variant::Raise => "raise",
        })
    }
}

impl Variant {
    pub fn root_variant(self) -> RootVariant {
        match self {
            Variant::Lower => RootVariant::Dual,
            Variant::Raise => RootVariant::Adjoint,
        }
    }

    /// Direction of the subalgebra root shift: `+1` lower, `-1` raise.
    fn dir(self) -> i64 {
        match self {
            Variant::Lower => 1,
            Variant::Raise => -1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Form {
    RootProduct,
    QNumberPhase,
}

impl FromStr for Form {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "root_product" => Ok(Form::RootProduct),
            "qnumber_phase" => Ok(Form::QNumberPhase),
            _ => Err(format!("unknown form {s:?}")),
        }
    }
}

/// Which subalgebra label the second argument of `mu` denotes.
///
/// `CoupledLabel`: the label of the coupled vector, so `mu_r(L, L0)` is
/// `gamma_r(L, L0)` with the subalgebra root shifted. `ModuleLabel`: the
/// label of the module the vector operator acts on, so `mu_r(L, L0)` is
/// `gamma_r(L, L0 - eps_r)` (lower) or `gamma_r(L, L0 + eps_r)` (raise), and
/// zero when that label is not a branching.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MuConvention {
    #[default]
    CoupledLabel,
    ModuleLabel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableKind {
    Lower,
    Raise,
    CoupledLower,
    CoupledRaise,
    Mu,
    MuTilde,
    Gamma,
    GammaTilde,
}

impl TableKind {
    fn variant(self) -> Variant {
        match self {
            TableKind::Lower | TableKind::CoupledLower | TableKind::Mu | TableKind::Gamma => Variant::Lower,
            _ => Variant::Raise,
        }
    }

    fn label(self) -> &'static str {
        match self {
            TableKind::Lower => "omega",
            TableKind::Raise => "omega_tilde",
            TableKind::CoupledLower => "omega",
            TableKind::CoupledRaise => "omega_tilde",
            TableKind::Mu => "mu",
            TableKind::MuTilde => "mu_tilde",
            TableKind::Gamma => "gamma",
            TableKind::GammaTilde => "gamma_tilde",
        }
    }
}

/// Key `(k, None)` for single-index tables, `(k, Some(r))` for coupled ones;
/// gamma and mu tables use `(r, None)`.
pub type EntryKey = (usize, Option<usize>);

#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientTable {
    pub kind: TableKind,
    pub branching: BranchingData,
    pub form: Form,
    pub entries: BTreeMap<EntryKey, QFraction>,
    pub formula: String,
}

impl CoefficientTable {
    pub fn variant(&self) -> Variant {
        self.kind.variant()
    }

    /// Entry value, zero for structurally excluded indices.
    pub fn value(&self, k: usize) -> QFraction {
        self.entries.get(&(k, None)).cloned().unwrap_or_else(QFraction::zero)
    }

    pub fn sum(&self) -> QFraction {
        self.entries.values().fold(QFraction::zero(), |acc, v| acc + v)
    }

    pub fn entry_name(&self, key: &EntryKey) -> String {
        match key {
            (k, None) => format!("{}_{k}", self.kind.label()),
            (k, Some(r)) => format!("{}_{k}{r}", self.kind.label()),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<_> = self
            .entries
            .iter()
            .map(|(key, v)| {
                serde_json::json!({
                    "name": self.entry_name(key),
                    "k": key.0,
                    "r": key.1,
                    "value": v.to_pretty(),
                    "value_json": v.to_json(),
                })
            })
            .collect();
        let mut v = serde_json::json!({
            "kind": self.kind,
            "form": self.form,
            "formula": self.formula,
            "lambda": self.branching.lam.to_string(),
            "lambda0": self.branching.lam0.to_string(),
            "branching": self.branching.to_json(),
            "entries": entries,
        });
        // only the single-index omega tables obey a sum rule
        if matches!(self.kind, TableKind::Lower | TableKind::Raise) {
            v["sum"] = serde_json::Value::String(self.sum().to_pretty());
        }
        v
    }
}

/// Everything one branching contributes to the formulas, in 0-based indices.
struct Data<'a> {
    b: &'a BranchingData,
    sig: Signature,
    alpha: Vec<i64>,
    /// Shifted classical subalgebra roots `alpha_0t + (t)` (lower) or
    /// `alpha_0t - (t)` (raise).
    shifted: Vec<i64>,
    a: Vec<QFraction>,
    /// Displayed shifted deformed subalgebra roots.
    s: Vec<QFraction>,
    rs: Vec<usize>,
    ks: Vec<usize>,
    sign: i64,
}

impl<'a> Data<'a> {
    fn new(b: &'a BranchingData, variant: Variant) -> Self {
        let sig = b.sig();
        let rv = variant.root_variant();
        let alpha = classical_roots(sig, &b.lam_ints, rv);
        let alpha0 = classical_roots(sig.subalgebra(), &b.lam0_ints, rv);
        let dir = variant.dir();
        let shifted = alpha0.iter().enumerate().map(|(t, x)| x + dir * sig.sgn(t)).collect();
        let a = alpha.iter().map(|&x| deformed_root(x)).collect();
        let s = alpha0
            .iter()
            .enumerate()
            .map(|(t, &x)| {
                // lower: q^{-2(t)} a0 + (t) q^{-(t)};  raise: q^{2(t)} a0 - (t) q^{(t)}
                let st = sig.sgn(t);
                let e = -dir * st;
                QFraction::qhalf(4 * e) * deformed_root(x) + QFraction::from_int(dir * st) * QFraction::qhalf(2 * e)
            })
            .collect();
        let (i0, i1) = (
            match variant {
                Variant::Lower => &b.i0,
                Variant::Raise => &b.i0bar,
            },
            &b.i1,
        );
        let rs: Vec<usize> = i0.iter().chain(i1).map(|i| i - 1).collect();
        let mut ks = rs.clone();
        ks.push(sig.d() - 1);
        // I1tilde = I1 + {m+n}: ks is i0 + i1 + last, already sorted
        let sign = if (ks.len() - 1).is_multiple_of(2) { 1 } else { -1 };
        Data { b, sig, alpha, shifted, a, s, rs, ks, sign }
    }

    fn i0_len(&self) -> i64 {
        self.b.i0.len() as i64
    }

    fn check_distinct(vals: &[i64], idx: &[usize]) -> Result<(), WignerError> {
        let mut pairs = Vec::new();
        for (x, &p) in idx.iter().enumerate() {
            for &l in &idx[x + 1..] {
                if vals[p] == vals[l] {
                    pairs.push((p + 1, l + 1));
                }
            }
        }
        if pairs.is_empty() {
            Ok(())
        } else {
            Err(WignerError::DegenerateRoots(pairs))
        }
    }

    fn check_k(&self) -> Result<(), WignerError> {
        Self::check_distinct(&self.alpha, &self.ks)
    }

    fn check_r(&self) -> Result<(), WignerError> {
        Self::check_distinct(&self.shifted, &self.rs)
    }

    fn admissible_r(&self, r: usize) -> Result<usize, WignerError> {
        let r0 = r.wrapping_sub(1);
        if self.rs.contains(&r0) {
            Ok(r0)
        } else {
            Err(WignerError::AdmissibilityError { index: r, set: self.rs.iter().map(|x| x + 1).collect() })
        }
    }

    fn admissible_k(&self, k: usize) -> Result<usize, WignerError> {
        let k0 = k.wrapping_sub(1);
        if self.ks.contains(&k0) {
            Ok(k0)
        } else {
            Err(WignerError::AdmissibilityError { index: k, set: self.ks.iter().map(|x| x + 1).collect() })
        }
    }

    fn omega_rp(&self, k: usize) -> QFraction {
        let num = self.rs.iter().fold(QFraction::one(), |acc, &r| acc * (&self.a[k] - &self.s[r]));
        let den = self.ks.iter().filter(|&&l| l != k).fold(QFraction::one(), |acc, &l| acc * (&self.a[k] - &self.a[l]));
        num.checked_div(&den).expect("denominator checked nonzero")
    }

    fn omega_qp(&self, k: usize) -> QFraction {
        let phase = -(self.i0_len() + self.alpha[k] + self.b.eta);
        let num = self.rs.iter().fold(QFraction::one(), |acc, &r| acc * QFraction::qnum(self.alpha[k] - self.shifted[r]));
        let den = self
            .ks
            .iter()
            .filter(|&&l| l != k)
            .fold(QFraction::one(), |acc, &l| acc * QFraction::qnum(self.alpha[k] - self.alpha[l]));
        QFraction::qhalf(2 * phase) * num.checked_div(&den).expect("denominator checked nonzero")
    }

    fn gamma_rp(&self, r: usize) -> QFraction {
        self.gamma_rp_at(r, &self.s[r])
    }

    /// `sign * prod_k (a_k - x) / prod_{l != r} (x - s_l)`.
    fn gamma_rp_at(&self, r: usize, x: &QFraction) -> QFraction {
        let num = self.ks.iter().fold(QFraction::from_int(self.sign), |acc, &k| acc * (&self.a[k] - x));
        let den = self.rs.iter().filter(|&&l| l != r).fold(QFraction::one(), |acc, &l| acc * (x - &self.s[l]));
        num.checked_div(&den).expect("denominator checked nonzero")
    }

    fn gamma_qp(&self, r: usize) -> QFraction {
        let ar = self.shifted[r];
        let phase = self.i0_len() + self.b.eta - 3 * ar;
        self.gamma_qp_with_phase(r, phase)
    }

    fn gamma_qp_with_phase(&self, r: usize, phase: i64) -> QFraction {
        let ar = self.shifted[r];
        let num = self
            .ks
            .iter()
            .fold(QFraction::from_int(self.sign), |acc, &k| acc * QFraction::qnum(self.alpha[k] - ar));
        let den = self
            .rs
            .iter()
            .filter(|&&l| l != r)
            .fold(QFraction::one(), |acc, &l| acc * QFraction::qnum(ar - self.shifted[l]));
        QFraction::qhalf(2 * phase) * num.checked_div(&den).expect("denominator checked nonzero")
    }

    fn coupled_rp(&self, k: usize, r: usize) -> QFraction {
        let f1n = self.rs.iter().filter(|&&x| x != r).fold(QFraction::one(), |acc, &x| acc * (&self.a[k] - &self.s[x]));
        let f1d = self.ks.iter().filter(|&&l| l != k).fold(QFraction::one(), |acc, &l| acc * (&self.a[k] - &self.a[l]));
        let f2n = self
            .ks
            .iter()
            .filter(|&&x| x != k)
            .fold(QFraction::from_int(self.sign), |acc, &x| acc * (&self.a[x] - &self.s[r]));
        let f2d = self.rs.iter().filter(|&&l| l != r).fold(QFraction::one(), |acc, &l| acc * (&self.s[r] - &self.s[l]));
        (f1n * f2n).checked_div(&(f1d * f2d)).expect("denominator checked nonzero")
    }

    /// q-number form with the r-th subalgebra root `ar` (shifted or not).
    fn coupled_qp_with(&self, k: usize, r: usize, ar: i64) -> Result<QFraction, WignerError> {
        let mut num = QFraction::qhalf(2 * (self.alpha[k] - ar));
        let mut den = QFraction::one();
        for &l in self.rs.iter().filter(|&&l| l != r) {
            num = num * QFraction::qnum(self.alpha[k] - self.shifted[l]);
            den = den * QFraction::qnum(ar - self.shifted[l]);
        }
        for &p in self.ks.iter().filter(|&&p| p != k) {
            num = num * QFraction::qnum(self.alpha[p] - ar);
            den = den * QFraction::qnum(self.alpha[p] - self.alpha[k]);
        }
        num.checked_div(&den).map_err(|_| WignerError::DegenerateRoots(vec![(k + 1, r + 1)]))
    }
}

fn table_formula(kind: TableKind, form: Form) -> String {
    let f = match form {
        Form::RootProduct => "deformed root products",
        Form::QNumberPhase => "q-numbers with q-phase",
    };
    let idx = match kind {
        TableKind::Lower | TableKind::CoupledLower | TableKind::Mu | TableKind::Gamma => "k in I0+I1tilde, r in I0+I1",
        _ => "k in I0bar+I1tilde, r in I0bar+I1",
    };
    format!("{f}; {idx}")
}

fn branching_for(lam: &Weight, lam0: &Weight) -> Result<BranchingData, WignerError> {
    Ok(index_sets(lam, lam0)?)
}

/// `omega_k` (lower) or `omega~_k` (raise) for every admissible `k`.
pub fn omega(b: &BranchingData, variant: Variant, form: Form) -> Result<CoefficientTable, WignerError> {
    let d = Data::new(b, variant);
    d.check_k()?;
    let entries = d
        .ks
        .iter()
        .map(|&k| {
            let v = match form {
                Form::RootProduct => d.omega_rp(k),
                Form::QNumberPhase => d.omega_qp(k),
            };
            ((k + 1, None), v)
        })
        .collect();
    let kind = match variant {
        Variant::Lower => TableKind::Lower,
        Variant::Raise => TableKind::Raise,
    };
    Ok(CoefficientTable { kind, branching: b.clone(), form, entries, formula: table_formula(kind, form) })
}

pub fn omega_lower(b: &BranchingData) -> Result<CoefficientTable, WignerError> {
    omega(b, Variant::Lower, Form::RootProduct)
}

pub fn omega_raise(b: &BranchingData) -> Result<CoefficientTable, WignerError> {
    omega(b, Variant::Raise, Form::RootProduct)
}

/// `sum_k omega_k / (a_k - s_r)` for every admissible `r`; all vanish. An
/// equation with some `a_k = s_r` is undefined and reported as `None`.
pub fn linear_residuals(b: &BranchingData, variant: Variant) -> Result<Vec<(usize, Option<QFraction>)>, WignerError> {
    let d = Data::new(b, variant);
    d.check_k()?;
    let mut out = Vec::new();
    for &r in &d.rs {
        let mut acc = Some(QFraction::zero());
        for &k in &d.ks {
            let den = &d.a[k] - &d.s[r];
            if den.is_zero() {
                acc = None;
                break;
            }
            acc = acc.map(|x| x + d.omega_rp(k).checked_div(&den).expect("nonzero"));
        }
        out.push((r + 1, acc));
    }
    Ok(out)
}

/// The same product built from classical roots over Q.
pub fn omega_classical(b: &BranchingData, variant: Variant) -> Result<BTreeMap<usize, BigRational>, WignerError> {
    let d = Data::new(b, variant);
    d.check_k()?;
    let rat = |x: i64| BigRational::from_integer(x.into());
    Ok(d.ks
        .iter()
        .map(|&k| {
            let num = d.rs.iter().fold(rat(1), |acc, &r| acc * rat(d.alpha[k] - d.shifted[r]));
            let den = d.ks.iter().filter(|&&l| l != k).fold(rat(1), |acc, &l| acc * rat(d.alpha[k] - d.alpha[l]));
            (k + 1, num / den)
        })
        .collect())
}

/// The invariant `gamma_r` (lower) or `gamma~_r` (raise).
pub fn gamma(b: &BranchingData, r: usize, variant: Variant, form: Form) -> Result<QFraction, WignerError> {
    let d = Data::new(b, variant);
    let r0 = d.admissible_r(r)?;
    d.check_r()?;
    Ok(match form {
        Form::RootProduct => d.gamma_rp(r0),
        Form::QNumberPhase => d.gamma_qp(r0),
    })
}

/// `gamma_r` in q-number form with the phase `|I0| + eta - 3 alpha_0r -/+ (r)`
/// evaluated at the unshifted subalgebra root. Kept for comparison only: it
/// disagrees with the root-product form whenever the shift matters.
pub fn gamma_unshifted_phase(b: &BranchingData, r: usize, variant: Variant) -> Result<QFraction, WignerError> {
    let d = Data::new(b, variant);
    let r0 = d.admissible_r(r)?;
    d.check_r()?;
    let a0 = d.shifted[r0] - variant.dir() * d.sig.sgn(r0);
    let phase = d.i0_len() + b.eta - 3 * a0 - variant.dir() * d.sig.sgn(r0);
    Ok(d.gamma_qp_with_phase(r0, phase))
}

fn mu_coupled(b: &BranchingData, r: usize, variant: Variant, form: Form) -> Result<QFraction, WignerError> {
    let d = Data::new(b, variant);
    let r0 = d.admissible_r(r)?;
    d.check_r()?;
    match form {
        Form::QNumberPhase => Ok(d.gamma_qp(r0)),
        Form::RootProduct => {
            // a_0r evaluated at the subalgebra label shifted by +eps_r (lower)
            // or -eps_r (raise), read off that label's own roots
            let sub = d.sig.subalgebra();
            let mut l = b.lam0_ints.clone();
            l[r0] += variant.dir();
            let x = deformed_root(classical_roots(sub, &l, variant.root_variant())[r0]);
            Ok(d.gamma_rp_at(r0, &x))
        }
    }
}

/// Squared reduced matrix element `mu_r` (lower) or `mu~_r` (raise).
pub fn mu(b: &BranchingData, r: usize, variant: Variant, form: Form, conv: MuConvention) -> Result<QFraction, WignerError> {
    match conv {
        MuConvention::CoupledLabel => mu_coupled(b, r, variant, form),
        MuConvention::ModuleLabel => {
            let sig = b.sig();
            if r == 0 || r > sig.d() - 1 {
                return Err(WignerError::AdmissibilityError { index: r, set: (1..sig.d()).collect() });
            }
            let mut l = b.lam0_ints.clone();
            l[r - 1] -= variant.dir();
            let n = Weight::from_ints(sig.subalgebra(), &l).map_err(BranchingError::from)?;
            let nb = match index_sets(&b.lam, &n) {
                Ok(nb) => nb,
                Err(BranchingError::NotABranching { .. }) => return Ok(QFraction::zero()),
                Err(e) => return Err(e.into()),
            };
            match mu_coupled(&nb, r, variant, form) {
                Err(WignerError::AdmissibilityError { .. }) => Ok(QFraction::zero()),
                other => other,
            }
        }
    }
}

/// Coupled coefficient `omega_kr` (lower) or `omega~_kr` (raise), with `b`
/// carrying the subalgebra label of the coupled vector.
pub fn omega_coupled(b: &BranchingData, k: usize, r: usize, variant: Variant, form: Form) -> Result<QFraction, WignerError> {
    let d = Data::new(b, variant);
    let k0 = d.admissible_k(k)?;
    let r0 = d.admissible_r(r)?;
    d.check_k()?;
    d.check_r()?;
    match form {
        Form::RootProduct => Ok(d.coupled_rp(k0, r0)),
        Form::QNumberPhase => d.coupled_qp_with(k0, r0, d.shifted[r0]),
    }
}

/// The q-number product with the r-th subalgebra root left unshifted. Kept
/// for comparison only; it agrees with `omega_coupled` in trivial cases.
pub fn omega_coupled_unshifted(b: &BranchingData, k: usize, r: usize, variant: Variant) -> Result<QFraction, WignerError> {
    let d = Data::new(b, variant);
    let k0 = d.admissible_k(k)?;
    let r0 = d.admissible_r(r)?;
    d.check_k()?;
    let a0 = d.shifted[r0] - variant.dir() * d.sig.sgn(r0);
    d.coupled_qp_with(k0, r0, a0)
}

pub fn coupled_table(b: &BranchingData, variant: Variant, form: Form) -> Result<CoefficientTable, WignerError> {
    let d = Data::new(b, variant);
    d.check_k()?;
    d.check_r()?;
    let mut entries = BTreeMap::new();
    for &k in &d.ks {
        for &r in &d.rs {
            let v = match form {
                Form::RootProduct => d.coupled_rp(k, r),
                Form::QNumberPhase => d.coupled_qp_with(k, r, d.shifted[r])?,
            };
            entries.insert((k + 1, Some(r + 1)), v);
        }
    }
    let kind = match variant {
        Variant::Lower => TableKind::CoupledLower,
        Variant::Raise => TableKind::CoupledRaise,
    };
    Ok(CoefficientTable { kind, branching: b.clone(), form, entries, formula: table_formula(kind, form) })
}

pub fn gamma_table(b: &BranchingData, variant: Variant, form: Form) -> Result<CoefficientTable, WignerError> {
    let d = Data::new(b, variant);
    let mut entries = BTreeMap::new();
    for &r in &d.rs {
        entries.insert((r + 1, None), gamma(b, r + 1, variant, form)?);
    }
    let kind = match variant {
        Variant::Lower => TableKind::Gamma,
        Variant::Raise => TableKind::GammaTilde,
    };
    Ok(CoefficientTable { kind, branching: b.clone(), form, entries, formula: table_formula(kind, form) })
}

pub fn mu_table(b: &BranchingData, variant: Variant, form: Form, conv: MuConvention) -> Result<CoefficientTable, WignerError> {
    let d = Data::new(b, variant);
    let idx: Vec<usize> = match conv {
        MuConvention::CoupledLabel => d.rs.iter().map(|r| r + 1).collect(),
        MuConvention::ModuleLabel => (1..d.sig.d()).collect(),
    };
    let mut entries = BTreeMap::new();
    for r in idx {
        entries.insert((r, None), mu(b, r, variant, form, conv)?);
    }
    let kind = match variant {
        Variant::Lower => TableKind::Mu,
        Variant::Raise => TableKind::MuTilde,
    };
    let formula = format!("{}; {conv:?}", table_formula(kind, form));
    Ok(CoefficientTable { kind, branching: b.clone(), form, entries, formula })
}

/// Convenience wrapper taking weights.
pub fn omega_for(lam: &Weight, lam0: &Weight, variant: Variant, form: Form) -> Result<CoefficientTable, WignerError> {
    omega(&branching_for(lam, lam0)?, variant, form)
}

/// Sign choices for the square roots of squared coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub enum PhaseConvention {
    #[default]
    AllPlus,
    /// Explicit signs keyed by `(variant, k, r)`; missing keys mean `+1`.
    Table(BTreeMap<(Variant, usize, Option<usize>), i8>),
}

impl PhaseConvention {
    pub fn by_name(name: &str) -> Result<Self, WignerError> {
        match name {
            "all_plus" => Ok(PhaseConvention::AllPlus),
            _ => Err(WignerError::UnknownPhaseConvention(name.to_string())),
        }
    }

    fn phase(&self, key: (Variant, usize, Option<usize>)) -> i8 {
        match self {
            PhaseConvention::AllPlus => 1,
            PhaseConvention::Table(t) => t.get(&key).copied().unwrap_or(1),
        }
    }
}

/// A signed square root, returned as its sign and its square.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedRoot {
    pub phase: i8,
    pub squared: QFraction,
}

/// Reduced Wigner coefficient as `(phase, squared value)`; `r = None` for the
/// single-index coefficients.
pub fn rwc(b: &BranchingData, k: usize, r: Option<usize>, variant: Variant, conv: &PhaseConvention) -> Result<SignedRoot, WignerError> {
    let squared = match r {
        None => {
            let d = Data::new(b, variant);
            let k0 = d.admissible_k(k)?;
            d.check_k()?;
            d.omega_rp(k0)
        }
        Some(r) => omega_coupled(b, k, r, variant, Form::QNumberPhase)?,
    };
    Ok(SignedRoot { phase: conv.phase((variant, k, r)), squared })
}
