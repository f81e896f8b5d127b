//! Eigenvalues of the central elements v, v~ and of the first-order invariants
//! C1, C1~ on an irreducible module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::exactq::QFraction;
use crate::superweight::{bilinear_form, rho, rho_parts, Weight, WeightError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InvariantName {
    V,
    VTilde,
    C1,
    C1Tilde,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvariantValue {
    pub name: InvariantName,
    pub value: QFraction,
    pub weight: Weight,
}

/// `2x` as an integer; every exponent here is a half-integer.
fn twice(x: &BigRational) -> i64 {
    let t = x * BigRational::from_integer(BigInt::from(2));
    assert!(t.is_integer(), "exponent {x} is not a half-integer");
    t.to_integer().to_i64().expect("exponent fits in i64")
}

fn int(x: &BigRational) -> i64 {
    assert!(x.is_integer(), "{x} is not an integer");
    x.to_integer().to_i64().expect("fits in i64")
}

/// `q^{-(L, L+2 rho)}`, or its inverse for `v~`.
pub fn chi_v(lam: &Weight, tilde: bool) -> Result<QFraction, WeightError> {
    lam.dominant_ints()?;
    let two = BigRational::from_integer(BigInt::from(2));
    let e = bilinear_form(lam, &lam.add(&rho(lam.sig).scale(&two))?)?;
    let e2 = twice(&e);
    Ok(QFraction::qhalf(if tilde { e2 } else { -e2 }))
}

/// `sum_i (-1)^[i] q^{-(L + 2 rho, e_i)} [(L, e_i)]` for `C1`, and
/// `sum_i (-1)^[i] q^{-(L - 2 rho_0, e_i)} [(L - 2 rho_1, e_i)]` for `C1~`.
pub fn chi_c1(lam: &Weight, tilde: bool) -> Result<QFraction, WeightError> {
    lam.dominant_ints()?;
    let sig = lam.sig;
    let two = BigRational::from_integer(BigInt::from(2));
    let (phase_w, arg_w) = if tilde {
        let (r0, r1) = rho_parts(sig);
        (lam.add(&r0.scale(&-two.clone()))?, lam.add(&r1.scale(&-two))?)
    } else {
        (lam.add(&rho(sig).scale(&two))?, lam.clone())
    };
    let mut acc = QFraction::zero();
    for i in 0..sig.d() {
        let unit = Weight::unit(sig, i);
        let ph = bilinear_form(&phase_w, &unit)?;
        let arg = bilinear_form(&arg_w, &unit)?;
        let term = QFraction::qhalf(-twice(&ph)) * QFraction::qnum(int(&arg));
        acc = acc + QFraction::from_int(sig.sgn(i)) * term;
    }
    Ok(acc)
}

pub fn all_invariants(lam: &Weight) -> Result<Vec<InvariantValue>, WeightError> {
    let mk = |name, value| InvariantValue { name, value, weight: lam.clone() };
    Ok(vec![
        mk(InvariantName::V, chi_v(lam, false)?),
        mk(InvariantName::VTilde, chi_v(lam, true)?),
        mk(InvariantName::C1, chi_c1(lam, false)?),
        mk(InvariantName::C1Tilde, chi_c1(lam, true)?),
    ])
}
