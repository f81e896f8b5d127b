//! Expressions in U_q[gl(m|n)] built from simple generators, Cartan powers
//! and scalars. The antipode is applied by rewriting, never on matrices:
//! `S(e_a) = -q^{-h_rho} e_a q^{h_rho}`, `S(q^h) = q^{-h}`, and `S` is an
//! anti-homomorphism with the Koszul sign `(-1)^{[a][b]}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::exactq::HalfLaurent;
use crate::field::Field;
use crate::superweight::{rho, Signature};

use super::matrix::Matrix;
use super::module::RepModule;

#[derive(Clone, Debug, PartialEq)]
pub enum AlgExpr {
    E(usize),
    F(usize),
    /// `q^{sum_t c2_t E_tt / 2}`.
    Cartan(Vec<i64>),
    Scalar(HalfLaurent),
    Sum(Vec<AlgExpr>),
    Prod(Vec<AlgExpr>),
    /// `S` for `+1`, `S^-1` for `-1`.
    Antipode(i8, Box<AlgExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("antipode of an inhomogeneous product factor")]
    Inhomogeneous,
}

/// Cartan vector of `q^{h_rho}`: doubled coefficients `(t) 2 rho_t`.
fn rho_c2(sig: Signature) -> Vec<i64> {
    let two = BigRational::from_integer(BigInt::from(2));
    rho(sig)
        .comps()
        .iter()
        .enumerate()
        .map(|(t, x)| sig.sgn(t) * (x * &two).to_integer().to_i64().expect("small"))
        .collect()
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl AlgExpr {
    pub fn scalar_int(x: i64) -> Self {
        AlgExpr::Scalar(HalfLaurent::from_int(x))
    }

    pub fn prod(v: Vec<AlgExpr>) -> Self {
        AlgExpr::Prod(v)
    }

    pub fn antipode(self) -> Self {
        AlgExpr::Antipode(1, Box::new(self))
    }

    pub fn antipode_inv(self) -> Self {
        AlgExpr::Antipode(-1, Box::new(self))
    }

    /// `q^{c h_rho}` for an integer `c`.
    pub fn q_h_rho(sig: Signature, c: i64) -> Self {
        AlgExpr::Cartan(rho_c2(sig).into_iter().map(|x| c * x).collect())
    }

    /// Parity, `None` if inhomogeneous.
    pub fn parity(&self, sig: Signature) -> Option<u8> {
        match self {
            AlgExpr::E(a) | AlgExpr::F(a) => Some(u8::from(a + 1 == sig.m)),
            AlgExpr::Cartan(_) | AlgExpr::Scalar(_) => Some(0),
            AlgExpr::Sum(v) => {
                let ps: Vec<u8> = v.iter().map(|x| x.parity(sig)).collect::<Option<_>>()?;
                match ps.first() {
                    None => Some(0),
                    Some(&p) if ps.iter().all(|&x| x == p) => Some(p),
                    _ => None,
                }
            }
            AlgExpr::Prod(v) => v.iter().try_fold(0u8, |acc, x| Some((acc + x.parity(sig)?) % 2)),
            AlgExpr::Antipode(_, x) => x.parity(sig),
        }
    }

    pub fn has_antipode(&self) -> bool {
        match self {
            AlgExpr::Antipode(..) => true,
            AlgExpr::Sum(v) | AlgExpr::Prod(v) => v.iter().any(|x| x.has_antipode()),
            _ => false,
        }
    }

    /// Eliminate every antipode marker.
    pub fn rewrite(&self, sig: Signature) -> Result<AlgExpr, ExprError> {
        match self {
            AlgExpr::Sum(v) => Ok(AlgExpr::Sum(v.iter().map(|x| x.rewrite(sig)).collect::<Result<_, _>>()?)),
            AlgExpr::Prod(v) => Ok(AlgExpr::Prod(v.iter().map(|x| x.rewrite(sig)).collect::<Result<_, _>>()?)),
            AlgExpr::Antipode(s, x) => {
                let inner = x.rewrite(sig)?;
                apply_antipode(&inner, *s, sig)
            }
            other => Ok(other.clone()),
        }
    }

    /// Matrix of an antipode-free expression on a module.
    pub fn eval<K: Field>(&self, w: &RepModule<K>) -> Matrix<K> {
        let n = w.dim();
        match self {
            AlgExpr::E(a) => w.e[*a].clone(),
            AlgExpr::F(a) => w.f[*a].clone(),
            AlgExpr::Cartan(c) => w.cartan(c),
            AlgExpr::Scalar(s) => Matrix::identity(n).scale(&K::from_laurent(&w.ctx, s)),
            AlgExpr::Sum(v) => v.iter().fold(Matrix::zeros(n, n), |acc, x| &acc + &x.eval(w)),
            AlgExpr::Prod(v) => {
                let mut acc: Option<Matrix<K>> = None;
                let mut scalar = K::one();
                for x in v {
                    match x {
                        AlgExpr::Scalar(s) => scalar = scalar * &K::from_laurent(&w.ctx, s),
                        AlgExpr::Cartan(c) => {
                            let dg = w.cartan_diag(c);
                            acc = Some(match acc {
                                None => Matrix::diag(dg),
                                Some(m) => m.diag_right(&dg),
                            });
                        }
                        other => {
                            let m = other.eval(w);
                            acc = Some(match acc {
                                None => m,
                                Some(a) => &a * &m,
                            });
                        }
                    }
                }
                acc.unwrap_or_else(|| Matrix::identity(n)).scale(&scalar)
            }
            AlgExpr::Antipode(..) => {
                let r = self.rewrite(w.sig).expect("homogeneous factors");
                r.eval(w)
            }
        }
    }
}

fn apply_antipode(x: &AlgExpr, s: i8, sig: Signature) -> Result<AlgExpr, ExprError> {
    let s64 = i64::from(s);
    Ok(match x {
        AlgExpr::E(_) | AlgExpr::F(_) => AlgExpr::Prod(vec![
            AlgExpr::scalar_int(-1),
            AlgExpr::q_h_rho(sig, -s64),
            x.clone(),
            AlgExpr::q_h_rho(sig, s64),
        ]),
        AlgExpr::Cartan(c) => AlgExpr::Cartan(c.iter().map(|t| -t).collect()),
        AlgExpr::Scalar(_) => x.clone(),
        AlgExpr::Sum(v) => AlgExpr::Sum(v.iter().map(|t| apply_antipode(t, s, sig)).collect::<Result<_, _>>()?),
        AlgExpr::Prod(v) => {
            let ps: Vec<u8> = v.iter().map(|t| t.parity(sig).ok_or(ExprError::Inhomogeneous)).collect::<Result<_, _>>()?;
            let mut odd_pairs = 0u32;
            for i in 0..ps.len() {
                for j in i + 1..ps.len() {
                    odd_pairs += u32::from(ps[i] & ps[j]);
                }
            }
            let mut out: Vec<AlgExpr> = v.iter().rev().map(|t| apply_antipode(t, s, sig)).collect::<Result<_, _>>()?;
            if odd_pairs % 2 == 1 {
                out.insert(0, AlgExpr::scalar_int(-1));
            }
            AlgExpr::Prod(out)
        }
        AlgExpr::Antipode(s2, y) => {
            let inner = apply_antipode(y, *s2, sig)?;
            apply_antipode(&inner, s, sig)?
        }
    })
}

/// Nonsimple root vector `E_ij` (0-based, `i != j`) by the recursion
/// `E_ij = E_ik E_kj - q^{-(k)} E_kj E_ik` for `k` strictly between, seeded
/// by `E_{a,a+1} = e_a`, `E_{a+1,a} = f_a`. The default pivot is `i+1`
/// for `i < j` and `j+1` for `i > j`.
pub fn eij_expr(sig: Signature, i: usize, j: usize, pivot: Option<usize>) -> AlgExpr {
    assert_ne!(i, j);
    if i + 1 == j {
        return AlgExpr::E(i);
    }
    if j + 1 == i {
        return AlgExpr::F(j);
    }
    let k = pivot.unwrap_or(if i < j { i + 1 } else { j + 1 });
    assert!(i.min(j) < k && k < i.max(j), "pivot must lie strictly between");
    let a = eij_expr(sig, i, k, None);
    let b = eij_expr(sig, k, j, None);
    let c = -sig.sgn(k);
    AlgExpr::Sum(vec![
        AlgExpr::Prod(vec![a.clone(), b.clone()]),
        AlgExpr::Prod(vec![AlgExpr::Scalar(HalfLaurent::monomial(2 * c, rat(-1))), b, a]),
    ])
}

/// `E~_ii = q^{(i) E_ii}` and, for `i != j`,
/// `E~_ij = (q - q^-1)(-1)^[i] q^{((i)E_ii + (j)E_jj - (i))/2} E_ij`.
pub fn etilde_expr(sig: Signature, i: usize, j: usize) -> AlgExpr {
    let d = sig.d();
    if i == j {
        let mut c = vec![0; d];
        c[i] = 2 * sig.sgn(i);
        return AlgExpr::Cartan(c);
    }
    let (si, sj) = (sig.sgn(i), sig.sgn(j));
    let mut c = vec![0; d];
    c[i] = si;
    c[j] = sj;
    let sign = if sig.grade(i) == 1 { -1 } else { 1 };
    let qq = HalfLaurent::from_terms([(2, rat(sign)), (-2, rat(-sign))]);
    AlgExpr::Prod(vec![
        AlgExpr::Scalar(qq * crate::exactq::qhalf(-si)),
        AlgExpr::Cartan(c),
        eij_expr(sig, i, j, None),
    ])
}

/// True when the expression evaluates to zero on the module.
pub fn is_zero_on<K: Field>(x: &AlgExpr, w: &RepModule<K>) -> bool {
    x.eval(w).is_zero_matrix()
}

impl Zero for AlgExpr {
    fn zero() -> Self {
        AlgExpr::Sum(Vec::new())
    }
    fn is_zero(&self) -> bool {
        matches!(self, AlgExpr::Sum(v) if v.is_empty())
    }
}

impl std::ops::Add for AlgExpr {
    type Output = AlgExpr;
    fn add(self, o: Self) -> AlgExpr {
        AlgExpr::Sum(vec![self, o])
    }
}
