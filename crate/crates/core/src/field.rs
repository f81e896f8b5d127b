//! Scalar fields the oracle can run over: exact `QFraction`, or `f64` with `q`
//! specialised to a number.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::exactq::{HalfLaurent, QFraction};

pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// Whatever is needed to turn a Laurent polynomial in `q^{1/2}` into a
    /// field element: nothing for the exact field, the value of `q^{1/2}` for
    /// floats.
    type Ctx: Clone + Debug + Send + Sync;

    fn from_laurent(ctx: &Self::Ctx, p: &HalfLaurent) -> Self;

    fn from_rational(r: &BigRational) -> Self;

    fn try_div(&self, o: &Self) -> Option<Self>;

    /// Equality for exact fields, relative closeness for floats.
    fn approx_eq(&self, o: &Self, tol: f64) -> bool;

    fn qhalf(ctx: &Self::Ctx, e2: i64) -> Self {
        Self::from_laurent(ctx, &crate::exactq::qhalf(e2))
    }

    fn from_i64(x: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(x.into()))
    }

    /// Image of an exact value; `None` at a pole.
    fn from_qfraction(ctx: &Self::Ctx, x: &QFraction) -> Option<Self> {
        Self::from_laurent(ctx, x.num()).try_div(&Self::from_laurent(ctx, x.den()))
    }

    fn approx_zero(&self, tol: f64) -> bool {
        self.approx_eq(&Self::zero(), tol)
    }

    /// Size used in residual reports: `|x|` for floats, 0 or 1 for exact.
    fn magnitude(&self) -> f64;

    /// A nonconstant denominator that multiplying through would clear.
    fn denominator(&self) -> Option<Self> {
        None
    }
}

impl Field for QFraction {
    type Ctx = ();

    fn from_laurent(_: &(), p: &HalfLaurent) -> Self {
        QFraction::from_laurent(p.clone())
    }

    fn from_rational(r: &BigRational) -> Self {
        QFraction::from_rational(r.clone())
    }

    fn try_div(&self, o: &Self) -> Option<Self> {
        self.checked_div(o).ok()
    }

    fn from_qfraction(_: &(), x: &QFraction) -> Option<Self> {
        Some(x.clone())
    }

    fn approx_eq(&self, o: &Self, _tol: f64) -> bool {
        self == o
    }

    fn magnitude(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }

    fn denominator(&self) -> Option<Self> {
        if self.den().is_one() {
            None
        } else {
            Some(QFraction::from_laurent(self.den().clone()))
        }
    }
}

impl Field for f64 {
    /// `sqrt(q0)`.
    type Ctx = f64;

    fn from_laurent(t0: &f64, p: &HalfLaurent) -> Self {
        p.eval_sqrt(*t0)
    }

    fn from_rational(r: &BigRational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn try_div(&self, o: &Self) -> Option<Self> {
        if *o == 0.0 {
            None
        } else {
            Some(self / o)
        }
    }

    fn approx_eq(&self, o: &Self, tol: f64) -> bool {
        (self - o).abs() <= tol * self.abs().max(o.abs()).max(1.0)
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

/// Context for evaluating at `q = q0`.
pub fn numeric_ctx(q0: f64) -> f64 {
    q0.sqrt()
}
