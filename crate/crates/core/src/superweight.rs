//! Weights of gl(m|n): grading, the invariant form, the graded half-sum rho
//! and the classical characteristic roots with their q-deformations.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactq::{deformed_root, QFraction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("index {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("signature mismatch: gl({0}|{1}) vs gl({2}|{3})")]
    SignatureMismatch(usize, usize, usize, usize),
    #[error("weight has non-integral component {0}")]
    NonIntegralWeight(String),
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("invalid signature gl({0}|{1})")]
    BadSignature(usize, usize),
    #[error("cannot parse weight {0:?}: {1}")]
    Parse(String, String),
}

/// Signature `(m, n)` of gl(m|n). User-facing signatures have `m, n >= 1`;
/// the branching subalgebra gl(m|n-1) may have `n = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    pub m: usize,
    pub n: usize,
}

impl Signature {
    pub fn new(m: usize, n: usize) -> Result<Self, WeightError> {
        if m == 0 || n == 0 {
            return Err(WeightError::BadSignature(m, n));
        }
        Ok(Signature { m, n })
    }

    pub fn d(&self) -> usize {
        self.m + self.n
    }

    /// gl(m|n-1).
    pub fn subalgebra(&self) -> Signature {
        Signature { m: self.m, n: self.n.saturating_sub(1) }
    }

    /// `(i) = (-1)^{[i]}` for a 1-based index.
    pub fn parity(&self, i: usize) -> Result<i64, WeightError> {
        if i == 0 || i > self.d() {
            return Err(WeightError::IndexOutOfRange(i, self.d()));
        }
        Ok(self.sgn(i - 1))
    }

    /// `(i)` for a 0-based index.
    pub fn sgn(&self, i0: usize) -> i64 {
        if i0 < self.m {
            1
        } else {
            -1
        }
    }

    /// `[i]` in {0, 1} for a 0-based index.
    pub fn grade(&self, i0: usize) -> u8 {
        u8::from(i0 >= self.m)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gl({}|{})", self.m, self.n)
    }
}

/// A weight `(L_1..L_m | L_{m+1}..L_{m+n})` in epsilon/delta coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub sig: Signature,
    comps: Vec<BigRational>,
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn half(x: i64) -> BigRational {
    BigRational::new(BigInt::from(x), BigInt::from(2))
}

impl Weight {
    pub fn new(sig: Signature, comps: Vec<BigRational>) -> Result<Self, WeightError> {
        if comps.len() != sig.d() {
            return Err(WeightError::Parse(
                format!("{comps:?}"),
                format!("expected {} components", sig.d()),
            ));
        }
        Ok(Weight { sig, comps })
    }

    pub fn from_ints(sig: Signature, comps: &[i64]) -> Result<Self, WeightError> {
        Self::new(sig, comps.iter().map(|&x| rat(x)).collect())
    }

    pub fn zero(sig: Signature) -> Self {
        Weight { sig, comps: vec![BigRational::zero(); sig.d()] }
    }

    /// The unit weight `eps_i` (0-based `i`; odd indices give `delta`s).
    pub fn unit(sig: Signature, i0: usize) -> Self {
        let mut w = Self::zero(sig);
        w.comps[i0] = rat(1);
        w
    }

    pub fn comps(&self) -> &[BigRational] {
        &self.comps
    }

    pub fn ints(&self) -> Result<Vec<i64>, WeightError> {
        self.comps
            .iter()
            .map(|c| {
                if c.is_integer() {
                    c.to_integer().to_i64().ok_or_else(|| WeightError::NonIntegralWeight(c.to_string()))
                } else {
                    Err(WeightError::NonIntegralWeight(c.to_string()))
                }
            })
            .collect()
    }

    /// Integral differences within each graded block are non-negative.
    pub fn is_dominant(&self) -> bool {
        let m = self.sig.m;
        let ok = |a: &BigRational, b: &BigRational| {
            let d = a - b;
            d.is_integer() && d >= BigRational::zero()
        };
        (1..self.sig.d()).filter(|&i| i != m).all(|i| ok(&self.comps[i - 1], &self.comps[i]))
    }

    /// Dominant with integer components.
    pub fn dominant_ints(&self) -> Result<Vec<i64>, WeightError> {
        let v = self.ints()?;
        if !self.is_dominant() {
            return Err(WeightError::NotDominant(self.to_string()));
        }
        Ok(v)
    }

    /// Parse `"1,0|0"`. Without a `|` all components are taken in order.
    pub fn parse(sig: Signature, s: &str) -> Result<Self, WeightError> {
        let bad = |msg: &str| WeightError::Parse(s.to_string(), msg.to_string());
        let (even, odd) = match s.split_once('|') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let parse_list = |t: &str| -> Result<Vec<BigRational>, WeightError> {
            if t.trim().is_empty() {
                return Ok(Vec::new());
            }
            t.split(',')
                .map(|x| BigRational::from_str(x.trim()).map_err(|_| bad("bad number")))
                .collect()
        };
        let mut comps = parse_list(even)?;
        if let Some(o) = odd {
            if comps.len() != sig.m {
                return Err(bad(&format!("expected {} even labels", sig.m)));
            }
            comps.extend(parse_list(o)?);
        }
        if comps.len() != sig.d() {
            return Err(bad(&format!("expected {} labels for {sig}", sig.d())));
        }
        Ok(Weight { sig, comps })
    }

    /// Parse `"1,0|0"` inferring the signature from the block sizes.
    pub fn parse_infer(s: &str) -> Result<Self, WeightError> {
        let (a, b) = s
            .split_once('|')
            .ok_or_else(|| WeightError::Parse(s.to_string(), "missing '|'".to_string()))?;
        let count = |t: &str| if t.trim().is_empty() { 0 } else { t.split(',').count() };
        let sig = Signature::new(count(a), count(b))?;
        Self::parse(sig, s)
    }

    pub fn add(&self, o: &Weight) -> Result<Weight, WeightError> {
        check_sig(self.sig, o.sig)?;
        Ok(Weight {
            sig: self.sig,
            comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &BigRational) -> Weight {
        Weight { sig: self.sig, comps: self.comps.iter().map(|a| a * c).collect() }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |v: &[BigRational]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        let (e, o) = self.comps.split_at(self.sig.m);
        if self.sig.n == 0 {
            write!(f, "{}", j(e))
        } else {
            write!(f, "{}|{}", j(e), j(o))
        }
    }
}

fn check_sig(a: Signature, b: Signature) -> Result<(), WeightError> {
    if a != b {
        return Err(WeightError::SignatureMismatch(a.m, a.n, b.m, b.n));
    }
    Ok(())
}

/// `(i)` for a 1-based index.
pub fn parity(sig: Signature, i: usize) -> Result<i64, WeightError> {
    sig.parity(i)
}

/// `sum_i (i) l_i u_i`.
pub fn bilinear_form(l: &Weight, u: &Weight) -> Result<BigRational, WeightError> {
    check_sig(l.sig, u.sig)?;
    Ok(l.comps
        .iter()
        .zip(&u.comps)
        .enumerate()
        .fold(BigRational::zero(), |acc, (i, (a, b))| acc + rat(l.sig.sgn(i)) * a * b))
}

/// Even and odd positive roots as weights.
pub fn positive_roots(sig: Signature) -> (Vec<Weight>, Vec<Weight>) {
    let (m, d) = (sig.m, sig.d());
    let diff = |a: usize, b: usize| {
        let mut w = Weight::zero(sig);
        w.comps[a] = rat(1);
        w.comps[b] = rat(-1);
        w
    };
    let mut even = Vec::new();
    for a in 0..d {
        for b in a + 1..d {
            if (a < m) == (b < m) {
                even.push(diff(a, b));
            }
        }
    }
    let odd = (0..m).flat_map(|i| (m..d).map(move |mu| (i, mu))).map(|(i, mu)| diff(i, mu)).collect();
    (even, odd)
}

/// `(rho_0, rho_1)`: half-sums of even and odd positive roots, by enumeration.
pub fn rho_parts(sig: Signature) -> (Weight, Weight) {
    let (even, odd) = positive_roots(sig);
    let halfsum = |rs: Vec<Weight>| {
        rs.iter().fold(Weight::zero(sig), |acc, r| acc.add(r).unwrap()).scale(&half(1))
    };
    (halfsum(even), halfsum(odd))
}

/// Closed form `rho = 1/2 sum_i (m-n-2i+1) eps_i + 1/2 sum_mu (m+n-2mu+1) delta_mu`.
pub fn rho(sig: Signature) -> Weight {
    let (m, n) = (sig.m as i64, sig.n as i64);
    let mut comps: Vec<BigRational> = (1..=m).map(|i| half(m - n - 2 * i + 1)).collect();
    comps.extend((1..=n).map(|mu| half(m + n - 2 * mu + 1)));
    Weight { sig, comps }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootVariant {
    Adjoint,
    Dual,
}

impl FromStr for RootVariant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "adjoint" => Ok(RootVariant::Adjoint),
            "dual" => Ok(RootVariant::Dual),
            _ => Err(format!("unknown root variant {s:?}")),
        }
    }
}

/// Classical characteristic roots and their deformations `q^{-x}[x]_q`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub variant: RootVariant,
    pub values: Vec<i64>,
    pub deformed: Vec<QFraction>,
    pub distinct: bool,
}

impl RootSet {
    fn build(variant: RootVariant, values: Vec<i64>) -> Self {
        let deformed = values.iter().map(|&x| deformed_root(x)).collect();
        let distinct = coinciding_pairs(&values).is_empty();
        RootSet { variant, values, deformed, distinct }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "variant": self.variant,
            "classical": self.values,
            "deformed": self.deformed.iter().map(|f| f.to_json()).collect::<Vec<_>>(),
            "deformed_string": self.deformed.iter().map(|f| f.to_pretty()).collect::<Vec<_>>(),
            "distinct": self.distinct,
        })
    }
}

/// 1-based index pairs with equal values.
pub fn coinciding_pairs(v: &[i64]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..v.len() {
        for b in a + 1..v.len() {
            if v[a] == v[b] {
                out.push((a + 1, b + 1));
            }
        }
    }
    out
}

/// Classical roots from integer labels; works for any `(m, n)` including the
/// subalgebra with `n = 0`.
pub fn classical_roots(sig: Signature, lam: &[i64], variant: RootVariant) -> Vec<i64> {
    let (m, n) = (sig.m as i64, sig.n as i64);
    let mut out = Vec::with_capacity(sig.d());
    for i in 1..=m {
        let l = lam[(i - 1) as usize];
        out.push(match variant {
            RootVariant::Adjoint => l + 1 - i,
            RootVariant::Dual => l + m - n - i,
        });
    }
    for mu in 1..=n {
        let l = lam[(m + mu - 1) as usize];
        out.push(match variant {
            RootVariant::Adjoint => mu - m - 1 - l,
            RootVariant::Dual => mu - n - l,
        });
    }
    out
}

pub fn char_roots(lam: &Weight, variant: RootVariant) -> Result<RootSet, WeightError> {
    let v = lam.dominant_ints()?;
    Ok(RootSet::build(variant, classical_roots(lam.sig, &v, variant)))
}

/// Roots of a gl(m|n-1) weight, for a parent algebra `parent`.
pub fn subalgebra_roots(parent: Signature, lam0: &Weight, variant: RootVariant) -> Result<RootSet, WeightError> {
    let sub = parent.subalgebra();
    check_sig(sub, lam0.sig)?;
    char_roots(lam0, variant)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericReport {
    pub adjoint_pairs: Vec<(usize, usize)>,
    pub dual_pairs: Vec<(usize, usize)>,
}

impl GenericReport {
    pub fn generic(&self) -> bool {
        self.adjoint_pairs.is_empty() && self.dual_pairs.is_empty()
    }
}

pub fn check_generic(lam: &Weight) -> Result<GenericReport, WeightError> {
    let v = lam.dominant_ints()?;
    Ok(GenericReport {
        adjoint_pairs: coinciding_pairs(&classical_roots(lam.sig, &v, RootVariant::Adjoint)),
        dual_pairs: coinciding_pairs(&classical_roots(lam.sig, &v, RootVariant::Dual)),
    })
}
