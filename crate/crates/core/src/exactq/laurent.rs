use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Laurent polynomial in `t = q^{1/2}` with rational coefficients.
///
/// Terms are stored as `(e2, c)` pairs meaning `c * q^{e2/2}`, sorted by
/// ascending `e2`, with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct HalfLaurent {
    terms: Vec<(i64, BigRational)>,
}

impl HalfLaurent {
    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(it: I) -> Self {
        let mut terms: Vec<(i64, BigRational)> = it.into_iter().collect();
        terms.sort_by_key(|t| t.0);
        let mut out: Vec<(i64, BigRational)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        HalfLaurent { terms: out }
    }

    /// `c * q^{e2/2}`.
    pub fn monomial(e2: i64, c: BigRational) -> Self {
        if c.is_zero() {
            return Self::default();
        }
        HalfLaurent { terms: vec![(e2, c)] }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_int(x: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(x)))
    }

    pub fn terms(&self) -> &[(i64, BigRational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|t| t.0)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Multiply by `q^{e2/2}`.
    pub fn shift(&self, e2: i64) -> Self {
        HalfLaurent {
            terms: self.terms.iter().map(|(e, c)| (e + e2, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::default();
        }
        HalfLaurent {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Substitute `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        let mut terms: Vec<_> = self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        terms.reverse();
        HalfLaurent { terms }
    }

    /// Value at `q = 1`.
    pub fn at_one(&self) -> BigRational {
        self.terms.iter().fold(BigRational::zero(), |acc, (_, c)| acc + c)
    }

    /// Value at `q^{1/2} = t0`.
    pub fn eval_sqrt(&self, t0: f64) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c.to_f64().unwrap_or(f64::NAN) * t0.powi(*e as i32))
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        HalfLaurent { terms: out }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_empty() || other.is_empty() {
            return Self::default();
        }
        if self.is_monomial() {
            let (e, c) = &self.terms[0];
            return other.scale(c).shift(*e);
        }
        if other.is_monomial() {
            let (e, c) = &other.terms[0];
            return self.scale(c).shift(*e);
        }
        let lo = self.terms[0].0 + other.terms[0].0;
        let hi = self.terms.last().unwrap().0 + other.terms.last().unwrap().0;
        let mut acc = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                acc[(ea + eb - lo) as usize] += ca * cb;
            }
        }
        HalfLaurent {
            terms: acc
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (lo + k as i64, c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = out.mul_ref(self);
        }
        out
    }

    /// Human-readable form with terms in descending exponent order.
    pub fn to_pretty(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (e2, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push(if neg { '-' } else { '+' });
            }
            if *e2 == 0 {
                s.push_str(&a.to_string());
                continue;
            }
            if !a.is_one() {
                s.push_str(&a.to_string());
                s.push('*');
            }
            s.push_str(&monomial_str(*e2));
        }
        s
    }
}

fn monomial_str(e2: i64) -> String {
    if e2 % 2 == 0 {
        match e2 / 2 {
            1 => "q".to_string(),
            e => format!("q^{e}"),
        }
    } else {
        format!("q^{{{e2}/2}}")
    }
}

impl fmt::Debug for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pretty())
    }
}

impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pretty())
    }
}

impl Zero for HalfLaurent {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for HalfLaurent {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl Add for HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, o: HalfLaurent) -> HalfLaurent {
        self.merge(&o, false)
    }
}

impl<'a> Add<&'a HalfLaurent> for &'a HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, o: &HalfLaurent) -> HalfLaurent {
        self.merge(o, false)
    }
}

impl Sub for HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, o: HalfLaurent) -> HalfLaurent {
        self.merge(&o, true)
    }
}

impl<'a> Sub<&'a HalfLaurent> for &'a HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, o: &HalfLaurent) -> HalfLaurent {
        self.merge(o, true)
    }
}

impl Mul for HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, o: HalfLaurent) -> HalfLaurent {
        self.mul_ref(&o)
    }
}

impl<'a> Mul<&'a HalfLaurent> for &'a HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, o: &HalfLaurent) -> HalfLaurent {
        self.mul_ref(o)
    }
}

impl Neg for HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        HalfLaurent {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

/// `q^{e2/2}`.
pub fn qhalf(e2: i64) -> HalfLaurent {
    HalfLaurent::monomial(e2, BigRational::one())
}

/// `[x]_q = (q^x - q^{-x})/(q - q^{-1})`, expanded as a Laurent polynomial.
pub fn qnum(x: i64) -> HalfLaurent {
    let n = x.abs();
    let sign = if x < 0 { -BigRational::one() } else { BigRational::one() };
    HalfLaurent::from_terms((0..n).map(|j| (2 * (n - 1 - 2 * j), sign.clone())))
}
