//! One level of the branching gl(m|n) > gl(m|n-1): interlacing candidates and
//! the index sets that select which factors enter each coefficient formula.

use serde::Serialize;
use thiserror::Error;

use crate::superweight::{Signature, Weight, WeightError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BranchingError {
    #[error("{lam0} is not a branching of {lam}: {why}")]
    NotABranching { lam: String, lam0: String, why: String },
    #[error(transparent)]
    Weight(#[from] WeightError),
}

/// Index data for a pair `(lam, lam0)`. All index sets hold 1-based global
/// indices; odd labels `mu` appear as `m + mu`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchingData {
    #[serde(skip)]
    pub lam: Weight,
    #[serde(skip)]
    pub lam0: Weight,
    pub i0: Vec<usize>,
    pub i0bar: Vec<usize>,
    pub i1: Vec<usize>,
    pub i1tilde: Vec<usize>,
    pub eta: i64,
    pub e_last: i64,
    #[serde(skip)]
    pub lam_ints: Vec<i64>,
    #[serde(skip)]
    pub lam0_ints: Vec<i64>,
}

impl BranchingData {
    pub fn sig(&self) -> Signature {
        self.lam.sig
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("plain data");
        v["lambda"] = serde_json::Value::String(self.lam.to_string());
        v["lambda0"] = serde_json::Value::String(self.lam0.to_string());
        v
    }
}

fn interlacing_violation(sig: Signature, lam: &[i64], lam0: &[i64]) -> Option<String> {
    let m = sig.m;
    for i in 0..m {
        if !(lam[i] >= lam0[i] && lam0[i] >= lam[i] - 1) {
            return Some(format!("even label {} outside [{}, {}]", i + 1, lam[i] - 1, lam[i]));
        }
    }
    for mu in 0..sig.n - 1 {
        let (hi, lo) = (lam[m + mu], lam[m + mu + 1]);
        if !(hi >= lam0[m + mu] && lam0[m + mu] >= lo) {
            return Some(format!("odd label {} outside [{lo}, {hi}]", mu + 1));
        }
    }
    None
}

/// All interlacing, dominant gl(m|n-1) labels, in lexicographic order.
pub fn branch_candidates(lam: &Weight) -> Result<Vec<Weight>, WeightError> {
    let sig = lam.sig;
    let v = lam.dominant_ints()?;
    let m = sig.m;
    let ranges: Vec<(i64, i64)> = (0..m)
        .map(|i| (v[i] - 1, v[i]))
        .chain((0..sig.n - 1).map(|mu| (v[m + mu + 1], v[m + mu])))
        .collect();
    let mut out = Vec::new();
    let mut cur: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    if ranges.iter().any(|r| r.0 > r.1) {
        return Ok(out);
    }
    let sub = sig.subalgebra();
    loop {
        let w = Weight::from_ints(sub, &cur)?;
        if w.is_dominant() {
            out.push(w);
        }
        // odometer, last position fastest, gives lexicographic order
        let mut p = cur.len();
        loop {
            if p == 0 {
                return Ok(out);
            }
            p -= 1;
            if cur[p] < ranges[p].1 {
                cur[p] += 1;
                for (c, r) in cur.iter_mut().zip(&ranges).skip(p + 1) {
                    *c = r.0;
                }
                break;
            }
        }
    }
}

pub fn index_sets(lam: &Weight, lam0: &Weight) -> Result<BranchingData, BranchingError> {
    let sig = lam.sig;
    let sub = sig.subalgebra();
    if lam0.sig != sub {
        return Err(WeightError::SignatureMismatch(sub.m, sub.n, lam0.sig.m, lam0.sig.n).into());
    }
    let lv = lam.dominant_ints()?;
    let l0 = lam0.ints()?;
    let not = |why: String| BranchingError::NotABranching {
        lam: lam.to_string(),
        lam0: lam0.to_string(),
        why,
    };
    if let Some(why) = interlacing_violation(sig, &lv, &l0) {
        return Err(not(why));
    }
    if !lam0.is_dominant() {
        return Err(not("not dominant for the subalgebra".to_string()));
    }
    Ok(index_sets_unchecked(sig, lv, l0, lam.clone(), lam0.clone()))
}

/// Index sets from integer labels without the interlacing check. Used for
/// shifted subalgebra labels, which need not be branchings themselves.
pub(crate) fn index_sets_unchecked(
    sig: Signature,
    lv: Vec<i64>,
    l0: Vec<i64>,
    lam: Weight,
    lam0: Weight,
) -> BranchingData {
    let (m, n) = (sig.m, sig.n);
    let i0: Vec<usize> = (0..m).filter(|&i| l0[i] == lv[i] - 1).map(|i| i + 1).collect();
    let i0bar: Vec<usize> = (1..=m).filter(|i| !i0.contains(i)).collect();
    let i1: Vec<usize> = (m + 1..m + n).collect();
    let mut i1tilde = i1.clone();
    i1tilde.push(m + n);
    let eta = lv[m..].iter().sum::<i64>() - l0[m..].iter().sum::<i64>();
    let e_last = i0.len() as i64 + eta;
    BranchingData { lam, lam0, i0, i0bar, i1, i1tilde, eta, e_last, lam_ints: lv, lam0_ints: l0 }
}
