use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::laurent::{qhalf, HalfLaurent};
use super::poly::{self, IntPoly};
use super::ExactError;

/// Element of Q(q^{1/2}) in canonical form.
///
/// `num/den` are coprime; `den` has its lowest term at `q^0` with coefficient 1,
/// so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QFraction {
    num: HalfLaurent,
    den: HalfLaurent,
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Scale rational coefficients to a primitive integer vector indexed by
/// `(e - base) / step`; returns the rational factor pulled out.
fn to_int_poly(p: &HalfLaurent, base: i64, step: i64) -> (BigRational, IntPoly) {
    let l = p
        .terms()
        .iter()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let len = ((p.max_exp().unwrap() - base) / step + 1) as usize;
    let mut v = vec![BigInt::zero(); len];
    for (e, c) in p.terms() {
        v[((e - base) / step) as usize] = (c * BigRational::from_integer(l.clone())).to_integer();
    }
    let g = poly::content(&v);
    for c in v.iter_mut() {
        *c = &*c / &g;
    }
    (BigRational::new(g, l), v)
}

fn from_int_poly(v: &IntPoly, base: i64, step: i64, scale: &BigRational) -> HalfLaurent {
    HalfLaurent::from_terms(
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (base + k as i64 * step, BigRational::from_integer(c.clone()) * scale)),
    )
}

impl QFraction {
    pub fn new(num: HalfLaurent, den: HalfLaurent) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: HalfLaurent, den: HalfLaurent) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_monomial() {
            let (e, c) = &den.terms()[0];
            return QFraction {
                num: num.scale(&c.recip()).shift(-e),
                den: HalfLaurent::one(),
            };
        }
        let en = num.min_exp().unwrap();
        let ed = den.min_exp().unwrap();
        let step = num
            .terms()
            .iter()
            .map(|t| t.0 - en)
            .chain(den.terms().iter().map(|t| t.0 - ed))
            .fold(0i64, |g, x| g.gcd(&x))
            .max(1);
        let (cn, n) = to_int_poly(&num, en, step);
        let (cd, d) = to_int_poly(&den, ed, step);
        let g = poly::gcd(&n, &d);
        let (n, d) = if g.len() > 1 {
            (poly::div_exact(&n, &g), poly::div_exact(&d, &g))
        } else {
            (n, d)
        };
        let k = BigRational::from_integer(d[0].clone());
        QFraction {
            num: from_int_poly(&n, en - ed, step, &(cn / (cd * &k))),
            den: from_int_poly(&d, 0, step, &k.recip()),
        }
    }

    pub fn from_laurent(p: HalfLaurent) -> Self {
        QFraction { num: p, den: HalfLaurent::one() }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_laurent(HalfLaurent::constant(r))
    }

    pub fn from_int(x: i64) -> Self {
        Self::from_rational(rat(x))
    }

    /// `q^x` for a half-integer `x`.
    pub fn qpow(x: &BigRational) -> Result<Self, ExactError> {
        let d = x * rat(2);
        if !d.is_integer() {
            return Err(ExactError::NotHalfInteger(x.to_string()));
        }
        let e2 = d.to_integer().to_i64().ok_or(ExactError::Overflow)?;
        Ok(Self::qhalf(e2))
    }

    /// `q^{e2/2}`.
    pub fn qhalf(e2: i64) -> Self {
        Self::from_laurent(qhalf(e2))
    }

    /// `[x]_q`.
    pub fn qnum(x: i64) -> Self {
        Self::from_laurent(super::laurent::qnum(x))
    }

    pub fn num(&self) -> &HalfLaurent {
        &self.num
    }

    pub fn den(&self) -> &HalfLaurent {
        &self.den
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.num.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, ExactError> {
        if o.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        Ok(Self::normalize(self.num.mul_ref(&o.den), self.den.mul_ref(&o.num)))
    }

    pub fn pow(&self, k: i32) -> Result<Self, ExactError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..k.unsigned_abs() {
            out = out * &base;
        }
        Ok(out)
    }

    /// Substitute `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        Self::normalize(self.num.bar(), self.den.bar())
    }

    /// Floating-point value at `q = q0`; a cross-check, never ground truth.
    pub fn eval_numeric(&self, q0: f64) -> Result<f64, ExactError> {
        if !(q0 > 0.0) {
            return Err(ExactError::BadPoint(q0));
        }
        let t0 = q0.sqrt();
        let d = self.den.eval_sqrt(t0);
        let scale = self.den.terms().iter().map(|(e, c)| c.to_f64().unwrap_or(0.0).abs() * t0.powi(*e as i32)).sum::<f64>();
        if d.abs() <= 1e-12 * scale.max(1.0) {
            return Err(ExactError::PoleAtPoint(q0));
        }
        Ok(self.num.eval_sqrt(t0) / d)
    }

    /// Exact value at `q = 1`.
    pub fn limit_q1(&self) -> Result<BigRational, ExactError> {
        let d = self.den.at_one();
        if d.is_zero() {
            return Err(ExactError::PoleAtOne);
        }
        Ok(self.num.at_one() / d)
    }

    pub fn to_pretty(&self) -> String {
        if self.den.is_one() {
            return self.num.to_pretty();
        }
        let n = self.num.to_pretty();
        if self.num.len() > 1 {
            format!("({n})/({})", self.den.to_pretty())
        } else {
            format!("{n}/({})", self.den.to_pretty())
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms = |p: &HalfLaurent| {
            serde_json::Value::Array(
                p.terms()
                    .iter()
                    .map(|(e, c)| serde_json::json!([e, c.to_string()]))
                    .collect(),
            )
        };
        serde_json::json!({"num": terms(&self.num), "den": terms(&self.den)})
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, ExactError> {
        let raw: RawFraction =
            serde_json::from_value(v.clone()).map_err(|e| ExactError::Parse(e.to_string()))?;
        raw.into_fraction()
    }
}

#[derive(Serialize, Deserialize)]
struct RawFraction {
    num: Vec<(i64, String)>,
    den: Vec<(i64, String)>,
}

impl RawFraction {
    fn into_fraction(self) -> Result<QFraction, ExactError> {
        let conv = |ts: Vec<(i64, String)>| -> Result<HalfLaurent, ExactError> {
            let mut out = Vec::with_capacity(ts.len());
            for (e, s) in ts {
                let c = BigRational::from_str(s.trim())
                    .map_err(|_| ExactError::Parse(format!("bad coefficient {s:?}")))?;
                out.push((e, c));
            }
            Ok(HalfLaurent::from_terms(out))
        };
        QFraction::new(conv(self.num)?, conv(self.den)?)
    }
}

impl Serialize for QFraction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let t = |p: &HalfLaurent| p.terms().iter().map(|(e, c)| (*e, c.to_string())).collect();
        RawFraction { num: t(&self.num), den: t(&self.den) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QFraction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        RawFraction::deserialize(d)?
            .into_fraction()
            .map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for QFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pretty())
    }
}

impl fmt::Debug for QFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pretty())
    }
}

impl FromStr for QFraction {
    type Err = ExactError;
    fn from_str(s: &str) -> Result<Self, ExactError> {
        super::parse::parse(s)
    }
}

impl Zero for QFraction {
    fn zero() -> Self {
        QFraction { num: HalfLaurent::zero(), den: HalfLaurent::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for QFraction {
    fn one() -> Self {
        Self::from_int(1)
    }
}

fn add_impl(a: &QFraction, b: &QFraction, negate: bool) -> QFraction {
    let bn = if negate { -b.num.clone() } else { b.num.clone() };
    if a.is_zero() {
        return QFraction { num: bn, den: b.den.clone() };
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.den.is_one() && b.den.is_one() {
        return QFraction::from_laurent(&a.num + &bn);
    }
    if a.den == b.den {
        return QFraction::normalize(&a.num + &bn, a.den.clone());
    }
    QFraction::normalize(
        a.num.mul_ref(&b.den) + bn.mul_ref(&a.den),
        a.den.mul_ref(&b.den),
    )
}

fn mul_impl(a: &QFraction, b: &QFraction) -> QFraction {
    if a.is_zero() || b.is_zero() {
        return QFraction::zero();
    }
    if a.den.is_one() && b.den.is_one() {
        return QFraction::from_laurent(a.num.mul_ref(&b.num));
    }
    QFraction::normalize(a.num.mul_ref(&b.num), a.den.mul_ref(&b.den))
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr for QFraction {
            type Output = QFraction;
            fn $m(self, o: QFraction) -> QFraction {
                $body(&self, &o)
            }
        }
        impl<'a> $tr<&'a QFraction> for QFraction {
            type Output = QFraction;
            fn $m(self, o: &QFraction) -> QFraction {
                $body(&self, o)
            }
        }
        impl<'a> $tr<&'a QFraction> for &'a QFraction {
            type Output = QFraction;
            fn $m(self, o: &QFraction) -> QFraction {
                $body(self, o)
            }
        }
    };
}

binop!(Add, add, |a, b| add_impl(a, b, false));
binop!(Sub, sub, |a, b| add_impl(a, b, true));
binop!(Mul, mul, mul_impl);
binop!(Div, div, |a: &QFraction, b: &QFraction| a
    .checked_div(b)
    .expect("division by the zero fraction"));

impl Neg for QFraction {
    type Output = QFraction;
    fn neg(self) -> QFraction {
        QFraction { num: -self.num, den: self.den }
    }
}

impl Neg for &QFraction {
    type Output = QFraction;
    fn neg(self) -> QFraction {
        QFraction { num: -self.num.clone(), den: self.den.clone() }
    }
}

impl From<HalfLaurent> for QFraction {
    fn from(p: HalfLaurent) -> Self {
        Self::from_laurent(p)
    }
}

impl From<i64> for QFraction {
    fn from(x: i64) -> Self {
        Self::from_int(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QFraction {
        s.parse().unwrap()
    }

    #[test]
    fn adding_halves_of_two() {
        let a = q("q^-1/(q+q^-1)");
        let b = q("q/(q+q^-1)");
        assert_eq!(a + b, QFraction::one());
    }

    #[test]
    fn canonical_denominator() {
        let x = q("q^-1/(q+q^-1)");
        assert_eq!(x.den().min_exp(), Some(0));
        assert!(x.den().terms()[0].1.is_one());
        assert_eq!(x.to_pretty(), "1/(q^2+1)");
    }

    #[test]
    fn self_division_cancels() {
        let x = q("q-q^-1");
        assert_eq!(x.checked_div(&x).unwrap(), QFraction::one());
        let y = q("1-q^-2");
        assert_eq!(y.clone() * y.inv().unwrap(), QFraction::one());
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert_eq!(QFraction::one().checked_div(&QFraction::zero()), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn numeric_evaluation() {
        assert!((QFraction::qnum(2).eval_numeric(2.0).unwrap() - 2.5).abs() < 1e-12);
        assert!((QFraction::qhalf(1).eval_numeric(4.0).unwrap() - 2.0).abs() < 1e-12);
        let f = QFraction::one().checked_div(&q("1-q^-2")).unwrap();
        assert_eq!(f.eval_numeric(1.0), Err(ExactError::PoleAtPoint(1.0)));
    }

    #[test]
    fn classical_limits() {
        assert_eq!(QFraction::qnum(3).limit_q1().unwrap(), rat(3));
        assert_eq!(q("q^-1/(q+q^-1)").limit_q1().unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(q("1/(q-q^-1)").limit_q1(), Err(ExactError::PoleAtOne));
    }

    #[test]
    fn json_round_trip() {
        let x = q("(3/2*q^{1/2}-q^-3)/(q^2+q+1)");
        let v = x.to_json();
        assert_eq!(QFraction::from_json(&v).unwrap(), x);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(serde_json::from_str::<QFraction>(&s).unwrap(), x);
    }

    #[test]
    fn pretty_round_trip() {
        for s in ["0", "1", "-q^-2", "1+q^-2", "q^{1/2}", "(q+1)/(q^3-2)", "-5/3*q^{-7/2}+q"] {
            let x = q(s);
            assert_eq!(q(&x.to_pretty()), x, "{s}");
        }
    }
}
