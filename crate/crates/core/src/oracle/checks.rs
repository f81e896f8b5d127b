//! Identity checks on explicit matrices: Yang-Baxter, the coproduct of the
//! L-operator, antipode rewriting, intertwining and block reduction.

use crate::field::Field;
use crate::superweight::Signature;

use super::expr::{eij_expr, etilde_expr, AlgExpr};
use super::lop::{CharKind, LBuilder, LKind};
use super::matrix::Matrix;
use super::module::RepModule;

/// Outcome of one identity: `residual` is the largest entry of the
/// difference (0 or 1 in exact mode).
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub residual: f64,
}

impl Check {
    pub fn compare<K: Field>(name: impl Into<String>, lhs: &Matrix<K>, rhs: &Matrix<K>, tol: f64) -> Self {
        let pass = lhs.approx_eq(rhs, tol);
        let residual = (lhs - rhs).max_magnitude();
        Check { name: name.into(), pass, residual }
    }

    fn expect_differ<K: Field>(name: impl Into<String>, lhs: &Matrix<K>, rhs: &Matrix<K>, tol: f64) -> Self {
        let residual = (lhs - rhs).max_magnitude();
        Check { name: name.into(), pass: !lhs.approx_eq(rhs, tol), residual }
    }
}

fn parities(sig: Signature) -> Vec<u8> {
    (0..sig.d()).map(|i| sig.grade(i)).collect()
}

/// The L-operator on `V (x) W` as its homogeneous terms `(e_ji, E~_ij, p)`.
fn l_terms<K: Field>(w: &RepModule<K>) -> Vec<(Matrix<K>, Matrix<K>, u8)> {
    let sig = w.sig;
    let d = sig.d();
    let mut b = LBuilder::new(w);
    let mut out = Vec::new();
    for i in 0..d {
        for j in i..d {
            let p = (sig.grade(i) + sig.grade(j)) % 2;
            out.push((Matrix::unit(d, j, i), b.etilde(0, i, j), p));
        }
    }
    out
}

/// `sum x (x) 1 (x) y` on `V (x) W1 (x) W2`, with `y` passing both `v` and
/// `w1`.
fn embed13<K: Field>(vpar: &[u8], w1: &RepModule<K>, terms: &[(Matrix<K>, Matrix<K>, u8)]) -> Matrix<K> {
    let (dv, d1) = (vpar.len(), w1.dim());
    let d2 = terms.first().map_or(0, |t| t.1.rows());
    let n = dv * d1 * d2;
    let mut out = Matrix::<K>::zeros(n, n);
    for (x, y, py) in terms {
        for i in 0..dv {
            for k in 0..dv {
                let xv = x.get(i, k);
                if xv.is_zero() {
                    continue;
                }
                for a in 0..d1 {
                    let neg = py & ((vpar[k] + w1.parities[a]) % 2) == 1;
                    for j in 0..d2 {
                        for l in 0..d2 {
                            let yv = y.get(j, l);
                            if yv.is_zero() {
                                continue;
                            }
                            let (row, col) = ((i * d1 + a) * d2 + j, (k * d1 + a) * d2 + l);
                            let t = xv.clone() * yv;
                            let t = if neg { -t } else { t };
                            let cur = out.get(row, col).clone();
                            out.set(row, col, cur + t);
                        }
                    }
                }
            }
        }
    }
    out
}

/// `R12 R13 R23 = R23 R13 R12` on `V (x) V (x) V`.
pub fn qybe_check<K: Field>(sig: Signature, ctx: K::Ctx, tol: f64) -> Check {
    let v = RepModule::<K>::vector(sig, ctx);
    let d = sig.d();
    let vpar = parities(sig);
    let r = LBuilder::new(&v).l_operator(LKind::R);
    let vv = RepModule::tensor(&v, &v);
    let r12 = Matrix::gkron(&r, &Matrix::identity(d), 0, &vv.parities);
    let r23 = Matrix::gkron(&Matrix::identity(d), &r, 0, &vpar);
    let r13 = embed13(&vpar, &v, &l_terms(&v));
    let lhs = &(&r12 * &r13) * &r23;
    let rhs = &(&r23 * &r13) * &r12;
    Check::compare("qybe", &lhs, &rhs, tol)
}

/// `(pi (x) Delta)R = R13 R12` on `V (x) V (x) V`, plus the entrywise
/// coproduct of every `E~_ij`, `i <= j`.
pub fn coproduct_check<K: Field>(sig: Signature, ctx: K::Ctx, tol: f64) -> Vec<Check> {
    let v = RepModule::<K>::vector(sig, ctx);
    let d = sig.d();
    let vpar = parities(sig);
    let vv = RepModule::tensor(&v, &v);
    let lhs = LBuilder::new(&vv).l_operator(LKind::R);
    let r = LBuilder::new(&v).l_operator(LKind::R);
    let r12 = Matrix::gkron(&r, &Matrix::identity(d), 0, &vv.parities);
    let r13 = embed13(&vpar, &v, &l_terms(&v));
    let mut out = vec![Check::compare("coproduct", &lhs, &(&r13 * &r12), tol)];

    let mut b1 = LBuilder::new(&v);
    let mut b12 = LBuilder::new(&vv);
    let diag = |i: usize| {
        let mut c = vec![0; d];
        c[i] = 2 * sig.sgn(i);
        v.cartan(&c)
    };
    for i in 0..d {
        for j in i..d {
            let got = b12.etilde(0, i, j);
            let want = if i == j {
                let e = b1.etilde(0, i, i);
                Matrix::gkron(&e, &e, 0, &vpar)
            } else {
                let pij = (sig.grade(i) + sig.grade(j)) % 2;
                let eij = b1.etilde(0, i, j);
                let mut m = &Matrix::gkron(&diag(i), &eij, pij, &vpar) + &Matrix::gkron(&eij, &diag(j), 0, &vpar);
                for k in i + 1..j {
                    let pkj = (sig.grade(k) + sig.grade(j)) % 2;
                    m = &m + &Matrix::gkron(&b1.etilde(0, i, k), &b1.etilde(0, k, j), pkj, &vpar);
                }
                m
            };
            out.push(Check::compare(format!("delta_etilde_{}{}", i + 1, j + 1), &got, &want, tol));
        }
    }
    out
}

/// `S^2(x) = q^{-2 h_rho} x q^{2 h_rho}` and `S^-1 S(x) = x` for every root
/// vector, evaluated on `w`.
pub fn antipode_checks<K: Field>(w: &RepModule<K>, tol: f64) -> Vec<Check> {
    let sig = w.sig;
    let mut out = Vec::new();
    for i in 0..sig.d() {
        for j in 0..sig.d() {
            if i == j {
                continue;
            }
            let x = eij_expr(sig, i, j, None);
            let plain = x.eval(w);
            let s2 = x.clone().antipode().antipode().rewrite(sig).expect("homogeneous").eval(w);
            let conj = AlgExpr::Prod(vec![AlgExpr::q_h_rho(sig, -2), x.clone(), AlgExpr::q_h_rho(sig, 2)]).eval(w);
            out.push(Check::compare(format!("s2_E{}{}", i + 1, j + 1), &s2, &conj, tol));
            let back = x.antipode().antipode_inv().rewrite(sig).expect("homogeneous").eval(w);
            out.push(Check::compare(format!("sinv_s_E{}{}", i + 1, j + 1), &back, &plain, tol));
        }
    }
    out
}

/// Every admissible pivot gives the same `E_ij` on `w`.
pub fn pivot_checks<K: Field>(w: &RepModule<K>, tol: f64) -> Vec<Check> {
    let sig = w.sig;
    let d = sig.d();
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i.abs_diff(j) < 2 {
                continue;
            }
            let base = eij_expr(sig, i, j, None).eval(w);
            for k in i.min(j) + 1..i.max(j) {
                let m = eij_expr(sig, i, j, Some(k)).eval(w);
                out.push(Check::compare(format!("pivot_E{}{}_k{}", i + 1, j + 1, k + 1), &m, &base, tol));
            }
        }
    }
    out
}

/// `R~ RT = I`, `R~^T R = I`, and the intertwining properties of `R`, `RT`
/// on `V (x) W` and of `R_d`, `RT_d` on `V* (x) W`.
pub fn l_operator_checks<K: Field>(w: &RepModule<K>, tol: f64) -> Vec<Check> {
    let sig = w.sig;
    let n = sig.d() * w.dim();
    let id = Matrix::identity(n);
    let mut b = LBuilder::new(w);
    let r = b.l_operator(LKind::R);
    let rt = b.l_operator(LKind::RT);
    let rd = b.l_operator(LKind::DualR);
    let rtd = b.l_operator(LKind::DualRT);
    let mut out = vec![
        Check::compare("rtilde_rt_inverse", &(&b.l_operator(LKind::Rtilde) * &rt), &id, tol),
        Check::compare("rtildet_r_inverse", &(&b.l_operator(LKind::RtildeT) * &r), &id, tol),
    ];
    let v = RepModule::vector(sig, w.ctx.clone());
    let vs = RepModule::dual(&v);
    let vpar = parities(sig);
    out.push(Check::compare(
        "dual_r_partial_supertranspose",
        &rd,
        &super::lop::partial_st(&b.l_operator(LKind::RtildeT), &vpar, w.dim()),
        tol,
    ));
    for (left, name, rr, rrt) in [(&v, "", &r, &rt), (&vs, "dual_", &rd, &rtd)] {
        let t = RepModule::tensor(left, w);
        for a in 0..sig.d() - 1 {
            for raising in [true, false] {
                let x = if raising { &t.e[a] } else { &t.f[a] };
                let y = RepModule::delta_t(left, w, a, raising);
                let g = if raising { "e" } else { "f" };
                out.push(Check::compare(format!("{name}r_intertwines_{g}{}", a + 1), &(rr * x), &(&y * rr), tol));
                out.push(Check::compare(format!("{name}rt_intertwines_{g}{}", a + 1), &(rrt * &y), &(x * rrt), tol));
            }
        }
    }
    out
}

/// Leading `(d-1)`-block of `X~` and `X_d` equals the subalgebra's own
/// characteristic matrix on the restricted module; for `X^` it must not.
/// The `(d, d)` entry operators commute with the subalgebra generators.
pub fn block_reduction_checks<K: Field>(w: &RepModule<K>, tol: f64) -> Vec<Check> {
    let sig = w.sig;
    let d = sig.d();
    let dw = w.dim();
    let sub = w.restrict_to_subalgebra();
    let lead: Vec<usize> = (0..(d - 1) * dw).collect();
    let mut b = LBuilder::new(w);
    let mut bs = LBuilder::new(&sub);
    let mut out = Vec::new();
    for kind in [CharKind::Atilde, CharKind::Adual, CharKind::Ahat] {
        let x = b.char_matrix_scaled(kind);
        let xs = bs.char_matrix_scaled(kind);
        let name = format!("block_reduction_{}", kind.name());
        if kind == CharKind::Ahat {
            // the leading block of X^ only differs once the subalgebra acts
            if d > 2 && !x.restrict(&lead).is_zero_matrix() {
                out.push(Check::expect_differ(name, &x.restrict(&lead), &xs, tol));
            }
            continue;
        }
        out.push(Check::compare(name, &x.restrict(&lead), &xs, tol));
        let corner = x.block(dw, d - 1, d - 1);
        for a in 0..d.saturating_sub(2) {
            for (g, m) in [("e", &w.e[a]), ("f", &w.f[a])] {
                out.push(Check::compare(format!("corner_{}_commutes_{g}{}", kind.name(), a + 1), &(&corner * m), &(m * &corner), tol));
            }
        }
    }
    out
}

/// `E~_ij` on the vector module is the expected scaled elementary matrix.
pub fn etilde_on_vector<K: Field>(sig: Signature, ctx: K::Ctx) -> bool {
    let v = RepModule::<K>::vector(sig, ctx.clone());
    (0..sig.d()).all(|i| {
        (0..sig.d()).all(|j| {
            let m = etilde_expr(sig, i, j).eval(&v);
            m.nnz() <= usize::from(i != j) + if i == j { sig.d() } else { 0 }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::QFraction;
    use crate::oracle::realize::realize;

    fn sig(m: usize, n: usize) -> Signature {
        Signature::new(m, n).unwrap()
    }

    fn all_pass(cs: &[Check]) {
        for c in cs {
            assert!(c.pass, "{} failed (residual {})", c.name, c.residual);
        }
    }

    #[test]
    fn exact_identities_small() {
        for s in [sig(1, 1), sig(2, 1), sig(1, 2)] {
            assert!(qybe_check::<QFraction>(s, (), 0.0).pass, "{s:?}");
            all_pass(&coproduct_check::<QFraction>(s, (), 0.0));
            let v = RepModule::<QFraction>::vector(s, ());
            all_pass(&antipode_checks(&v, 0.0));
            all_pass(&l_operator_checks(&v, 0.0));
            all_pass(&block_reduction_checks(&v, 0.0));
            assert!(etilde_on_vector::<QFraction>(s, ()));
        }
    }

    #[test]
    fn realized_module_identities() {
        let w = realize::<QFraction>(sig(2, 1), &[2, 0, 0], ()).unwrap();
        all_pass(&pivot_checks(&w, 0.0));
        all_pass(&l_operator_checks(&w, 0.0));
        all_pass(&block_reduction_checks(&w, 0.0));
    }

    #[test]
    fn numeric_gl22() {
        for q0 in [0.7, 2.0] {
            let ctx = crate::field::numeric_ctx(q0);
            assert!(qybe_check::<f64>(sig(2, 2), ctx, 1e-9).pass);
            all_pass(&coproduct_check::<f64>(sig(2, 2), ctx, 1e-9));
        }
    }

    #[test]
    fn qybe_detects_a_wrong_factor_order() {
        let s = sig(2, 1);
        let v = RepModule::<QFraction>::vector(s, ());
        let d = s.d();
        let vpar = parities(s);
        let r = LBuilder::new(&v).l_operator(LKind::R);
        let vv = RepModule::tensor(&v, &v);
        let r12 = Matrix::gkron(&r, &Matrix::identity(d), 0, &vv.parities);
        let r23 = Matrix::gkron(&Matrix::identity(d), &r, 0, &vpar);
        let r13 = embed13(&vpar, &v, &l_terms(&v));
        let lhs = &(&r12 * &r13) * &r23;
        let wrong = &(&r13 * &r12) * &r23;
        assert!(!Check::compare("swapped", &lhs, &wrong, 0.0).pass);
    }
}
