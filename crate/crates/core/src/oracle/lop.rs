//! L-operators `(pi (x) id)R` and relatives on `V (x) W` or `V* (x) W`, and
//! the characteristic matrices built from them.
//!
//! Everything is "scaled": `X = (q - q^-1) A` with roots
//! `b = (q - q^-1) a = 1 - q^{-2 alpha}` (or `1 - q^{2 alpha}`), which keeps
//! the entries Laurent polynomials.

use std::collections::BTreeMap;
use std::str::FromStr;

use crate::field::Field;
use crate::superweight::{classical_roots, coinciding_pairs, rho, RootVariant, Signature};

use super::expr::{etilde_expr, AlgExpr};
use super::matrix::Matrix;
use super::module::RepModule;
use super::OracleError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LKind {
    /// `sum_{i<=j} e_ji (x) E~_ij`.
    R,
    /// `sum_{i<=j} e_ij (x) E~_ji`.
    RT,
    /// `sum_{i<=j} e_ij (x) S(E~_ji)`, the inverse of `RT`.
    Rtilde,
    /// `sum_{i<=j} e_ji (x) S^-1(E~_ij)`, the inverse of `R`.
    RtildeT,
    /// `sum_{i<=j} (-1)^{[j](i+j)} e_ij (x) S^-1(E~_ij)` on `V* (x) W`.
    DualR,
    /// `sum_{i<=j} (-1)^{[i](i+j)} e_ji (x) S^-1(E~_ji)` on `V* (x) W`.
    DualRT,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CharKind {
    /// `I - RT R`; kept as a negative test for block reduction.
    Ahat,
    /// `I - R~^T R~` on `V (x) W`.
    Atilde,
    /// `I - RT_d R_d` on `V* (x) W`.
    Adual,
    /// `Adual` with block `(i, j)` scaled by `q^{(rho, e_j - e_i)}`.
    Abar,
}

impl CharKind {
    pub const ALL: [CharKind; 4] = [CharKind::Ahat, CharKind::Atilde, CharKind::Adual, CharKind::Abar];

    pub fn on_dual(self) -> bool {
        matches!(self, CharKind::Adual | CharKind::Abar)
    }

    pub fn name(self) -> &'static str {
        match self {
            CharKind::Ahat => "Ahat",
            CharKind::Atilde => "Atilde",
            CharKind::Adual => "Adual",
            CharKind::Abar => "Abar",
        }
    }

    /// Classical roots `alpha_r` of the identity, and the sign `s` in
    /// `b_r = 1 - q^{-2 s alpha_r}`.
    pub fn root_data(self, sig: Signature, lam: &[i64]) -> (Vec<i64>, i64) {
        match self {
            CharKind::Ahat => (classical_roots(sig, lam, RootVariant::Adjoint), -1),
            CharKind::Atilde => (classical_roots(sig, lam, RootVariant::Adjoint), 1),
            CharKind::Adual | CharKind::Abar => (classical_roots(sig, lam, RootVariant::Dual), 1),
        }
    }
}

impl FromStr for CharKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        CharKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown characteristic matrix {s:?}"))
    }
}

fn pij(sig: Signature, i: usize, j: usize) -> u8 {
    (sig.grade(i) + sig.grade(j)) % 2
}

/// Caches the `E~_ij` and their antipodes on one module.
pub struct LBuilder<'a, K: Field> {
    w: &'a RepModule<K>,
    vpar: Vec<u8>,
    cache: BTreeMap<(i8, usize, usize), Matrix<K>>,
}

impl<'a, K: Field> LBuilder<'a, K> {
    pub fn new(w: &'a RepModule<K>) -> Self {
        let sig = w.sig;
        LBuilder { w, vpar: (0..sig.d()).map(|i| sig.grade(i)).collect(), cache: BTreeMap::new() }
    }

    pub fn module(&self) -> &RepModule<K> {
        self.w
    }

    /// `S^s(E~_ij)` on `W`, `s` in `{-1, 0, 1}`.
    pub fn etilde(&mut self, s: i8, i: usize, j: usize) -> Matrix<K> {
        if let Some(m) = self.cache.get(&(s, i, j)) {
            return m.clone();
        }
        let sig = self.w.sig;
        let x = etilde_expr(sig, i, j);
        let x = match s {
            0 => x,
            1 => AlgExpr::Antipode(1, Box::new(x)),
            _ => AlgExpr::Antipode(-1, Box::new(x)),
        };
        let m = x.rewrite(sig).expect("E~ is homogeneous").eval(self.w);
        self.cache.insert((s, i, j), m.clone());
        m
    }

    pub fn l_operator(&mut self, kind: LKind) -> Matrix<K> {
        let sig = self.w.sig;
        let d = sig.d();
        let n = d * self.w.dim();
        let mut out = Matrix::zeros(n, n);
        for i in 0..d {
            for j in i..d {
                let p = pij(sig, i, j);
                // (V-slot unit, W-factor, overall sign)
                let (unit, y, neg) = match kind {
                    LKind::R => ((j, i), self.etilde(0, i, j), false),
                    LKind::RT => ((i, j), self.etilde(0, j, i), false),
                    LKind::Rtilde => ((i, j), self.etilde(1, j, i), false),
                    LKind::RtildeT => ((j, i), self.etilde(-1, i, j), false),
                    LKind::DualR => ((i, j), self.etilde(-1, i, j), sig.grade(j) & p == 1),
                    LKind::DualRT => ((j, i), self.etilde(-1, j, i), sig.grade(i) & p == 1),
                };
                let t = Matrix::gkron(&Matrix::unit(d, unit.0, unit.1), &y, p, &self.vpar);
                out = if neg { &out - &t } else { &out + &t };
            }
        }
        out
    }

    /// Scaled characteristic matrix `(q - q^-1) A`.
    pub fn char_matrix_scaled(&mut self, kind: CharKind) -> Matrix<K> {
        let n = self.w.sig.d() * self.w.dim();
        let id = Matrix::identity(n);
        match kind {
            CharKind::Ahat => &id - &(&self.l_operator(LKind::RT) * &self.l_operator(LKind::R)),
            CharKind::Atilde => &id - &(&self.l_operator(LKind::RtildeT) * &self.l_operator(LKind::Rtilde)),
            CharKind::Adual => &id - &(&self.l_operator(LKind::DualRT) * &self.l_operator(LKind::DualR)),
            CharKind::Abar => {
                let a = self.char_matrix_scaled(CharKind::Adual);
                bar_by_blocks(self.w, &a)
            }
        }
    }

    /// `A` itself, dividing by `q - q^-1`.
    pub fn char_matrix(&mut self, kind: CharKind) -> Matrix<K> {
        let ctx = &self.w.ctx;
        let qq = K::qhalf(ctx, 2) - K::qhalf(ctx, -2);
        let inv = K::one().try_div(&qq).expect("q - q^-1 is nonzero");
        self.char_matrix_scaled(kind).scale(&inv)
    }
}

/// `(t) 2 rho_t` as integers.
pub(crate) fn rho2(sig: Signature) -> Vec<i64> {
    rho(sig)
        .comps()
        .iter()
        .enumerate()
        .map(|(t, x)| {
            let v = x * num_rational::BigRational::from_integer(2.into());
            sig.sgn(t) * num_traits::ToPrimitive::to_i64(&v.to_integer()).expect("small")
        })
        .collect()
}

/// Block `(i, j)` of `a` times `q^{(rho, e_j) - (rho, e_i)}`.
pub fn bar_by_blocks<K: Field>(w: &RepModule<K>, a: &Matrix<K>) -> Matrix<K> {
    let d = w.sig.d();
    let dw = w.dim();
    let r = rho2(w.sig);
    let mut out = a.clone();
    for i in 0..d {
        for j in 0..d {
            let c = K::qhalf(&w.ctx, r[j] - r[i]);
            out.set_block(dw, i, j, &a.block(dw, i, j).scale(&c));
        }
    }
    out
}

/// `D a D^-1` with `D = diag(q^{-(rho, e_i)}) (x) 1`.
pub fn bar_by_conjugation<K: Field>(w: &RepModule<K>, a: &Matrix<K>) -> Matrix<K> {
    let r = rho2(w.sig);
    let dw = w.dim();
    let dl: Vec<K> = (0..a.rows()).map(|x| K::qhalf(&w.ctx, -r[x / dw])).collect();
    let dr: Vec<K> = (0..a.rows()).map(|x| K::qhalf(&w.ctx, r[x / dw])).collect();
    a.diag_left(&dl).diag_right(&dr)
}

/// Block super-transpose in the V-slot: new block `(a, b)` is
/// `(-1)^{[b]([a]+[b])} (-1)^{[a]+[b]}` times old block `(b, a)`.
pub fn partial_st<K: Field>(m: &Matrix<K>, vpar: &[u8], dw: usize) -> Matrix<K> {
    let d = vpar.len();
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for a in 0..d {
        for b in 0..d {
            let pab = (vpar[a] + vpar[b]) % 2;
            let neg = ((vpar[b] * pab) + pab) % 2 == 1;
            let blk = m.block(dw, b, a);
            out.set_block(dw, a, b, &if neg { blk.neg() } else { blk });
        }
    }
    out
}

/// Scaled roots `1 - q^{-2 s alpha_r}` of a characteristic identity.
pub fn scaled_roots<K: Field>(ctx: &K::Ctx, alpha: &[i64], s: i64) -> Vec<K> {
    alpha.iter().map(|&x| K::one() - K::qhalf(ctx, -4 * s * x)).collect()
}

/// Roots of `kind` for highest weight `lam`, failing on coincidences.
pub fn distinct_roots<K: Field>(ctx: &K::Ctx, sig: Signature, lam: &[i64], kind: CharKind) -> Result<Vec<K>, OracleError> {
    let (alpha, s) = kind.root_data(sig, lam);
    let pairs = coinciding_pairs(&alpha);
    if !pairs.is_empty() {
        return Err(OracleError::DegenerateRoots(pairs));
    }
    Ok(scaled_roots(ctx, &alpha, s))
}

/// `prod_r (X - b_r)`.
pub fn char_product<K: Field>(x: &Matrix<K>, roots: &[K]) -> Matrix<K> {
    let mut p = Matrix::identity(x.rows());
    for b in roots {
        p = &p * &x.sub_scalar(b);
    }
    p
}

/// Lagrange projectors `P_k = prod_{i != k} (X - b_i) / (b_k - b_i)`.
pub fn projectors<K: Field>(x: &Matrix<K>, roots: &[K]) -> Vec<Matrix<K>> {
    let shifted: Vec<Matrix<K>> = roots.iter().map(|b| x.sub_scalar(b)).collect();
    (0..roots.len())
        .map(|k| {
            let mut p = Matrix::identity(x.rows());
            let mut den = K::one();
            for (i, s) in shifted.iter().enumerate() {
                if i != k {
                    p = &p * s;
                    den = den * &(roots[k].clone() - &roots[i]);
                }
            }
            p.scale(&K::one().try_div(&den).expect("distinct roots"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::QFraction;
    use num_traits::Zero;

    type M = RepModule<QFraction>;

    fn sig(m: usize, n: usize) -> Signature {
        Signature::new(m, n).unwrap()
    }

    fn sigs() -> [Signature; 3] {
        [sig(1, 1), sig(2, 1), sig(1, 2)]
    }

    #[test]
    fn trivial_module_gives_identity() {
        for s in sigs() {
            let t = M::trivial(s, ());
            let mut b = LBuilder::new(&t);
            for k in [LKind::R, LKind::RT, LKind::Rtilde, LKind::RtildeT, LKind::DualR, LKind::DualRT] {
                assert_eq!(b.l_operator(k), Matrix::identity(s.d()), "{k:?}");
            }
            assert!(b.char_matrix_scaled(CharKind::Atilde).is_zero_matrix());
        }
    }

    #[test]
    fn tilde_operators_are_inverses() {
        for s in sigs() {
            let v = M::vector(s, ());
            let mut b = LBuilder::new(&v);
            let n = s.d() * s.d();
            let id = Matrix::identity(n);
            assert_eq!(&b.l_operator(LKind::Rtilde) * &b.l_operator(LKind::RT), id, "{s:?}");
            assert_eq!(&b.l_operator(LKind::RtildeT) * &b.l_operator(LKind::R), id, "{s:?}");
        }
    }

    #[test]
    fn r_intertwines_coproducts() {
        for s in sigs() {
            let v = M::vector(s, ());
            let vv = M::tensor(&v, &v);
            let r = LBuilder::new(&v).l_operator(LKind::R);
            for a in 0..s.d() - 1 {
                for raising in [true, false] {
                    let x = if raising { &vv.e[a] } else { &vv.f[a] };
                    let y = M::delta_t(&v, &v, a, raising);
                    assert_eq!(&r * x, &y * &r, "{s:?} a={a}");
                }
            }
        }
    }

    #[test]
    fn gl11_r_upper_triangular() {
        let s = sig(1, 1);
        let v = M::vector(s, ());
        let r = LBuilder::new(&v).l_operator(LKind::R);
        assert_eq!(r.rows(), 4);
        for i in 0..4 {
            for j in 0..i {
                assert!(r.get(i, j).is_zero() || r.get(j, i).is_zero());
            }
        }
        assert_eq!(*r.get(0, 0), QFraction::qhalf(2));
        assert_eq!(*r.get(3, 3), QFraction::qhalf(-2));
    }

    #[test]
    fn dual_r_matches_partial_supertranspose() {
        for s in sigs() {
            let v = M::vector(s, ());
            let mut b = LBuilder::new(&v);
            let vpar: Vec<u8> = (0..s.d()).map(|i| s.grade(i)).collect();
            let st = partial_st(&b.l_operator(LKind::RtildeT), &vpar, v.dim());
            assert_eq!(b.l_operator(LKind::DualR), st, "{s:?}");
        }
    }

    #[test]
    fn char_identities_on_vector() {
        // gl(2|1), W = V: adjoint roots of e_1 are (1, -1, -2)
        let s = sig(2, 1);
        let v = M::vector(s, ());
        let mut b = LBuilder::new(&v);
        let x = b.char_matrix_scaled(CharKind::Atilde);
        let roots = distinct_roots::<QFraction>(&(), s, &[1, 0, 0], CharKind::Atilde).unwrap();
        assert!(char_product(&x, &roots).is_zero_matrix());
        let s = sig(1, 1);
        let v = M::vector(s, ());
        let mut b = LBuilder::new(&v);
        let x = b.char_matrix_scaled(CharKind::Atilde);
        let roots = distinct_roots::<QFraction>(&(), s, &[1, 0], CharKind::Atilde).unwrap();
        assert!(char_product(&x, &roots).is_zero_matrix());
        let ps = projectors(&x, &roots);
        assert_eq!(&ps[0] + &ps[1], Matrix::identity(4));
        assert!(matches!(distinct_roots::<QFraction>(&(), s, &[1, 0], CharKind::Adual), Err(OracleError::DegenerateRoots(_))));
    }

    #[test]
    fn abar_routes_agree() {
        let s = sig(2, 1);
        let v = M::vector(s, ());
        let mut b = LBuilder::new(&v);
        let a = b.char_matrix_scaled(CharKind::Adual);
        assert_eq!(bar_by_blocks(&v, &a), bar_by_conjugation(&v, &a));
    }
}
