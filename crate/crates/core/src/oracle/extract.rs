//! Reading coefficient eigenvalues off the projectors of a characteristic
//! matrix on `V (x) W` (raise) or `V* (x) W` (lower).
//!
//! Entry operators follow `A(e_a (x) w) = e_b (x) A_ba w`, so the `(d, d)`
//! entry of an operator `P` acting on `w` is block `d` of `P(e_d (x) w)`.

use crate::field::Field;
use crate::wigner::Variant;

use super::linalg::{rank, solve};
use super::lop::{char_product, distinct_roots, CharKind, LBuilder};
use super::matrix::{vec_is_zero, vec_scale, vec_sub, Matrix};
use super::module::RepModule;
use super::realize::{sub_ops, SubComponent};
use super::OracleError;

/// Characteristic data of one realized module for one variant.
pub struct Setup<'a, K: Field> {
    pub w: &'a RepModule<K>,
    pub lam: Vec<i64>,
    pub variant: Variant,
    /// `V (x) W` or `V* (x) W`.
    pub tensor: RepModule<K>,
    /// Scaled characteristic matrix.
    pub x: Matrix<K>,
    /// Scaled roots.
    pub roots: Vec<K>,
}

pub fn kind_for(variant: Variant) -> CharKind {
    match variant {
        Variant::Raise => CharKind::Atilde,
        Variant::Lower => CharKind::Adual,
    }
}

/// `q - q^-1`.
pub fn qq<K: Field>(ctx: &K::Ctx) -> K {
    K::qhalf(ctx, 2) - K::qhalf(ctx, -2)
}

/// `e_b (x) u` in `V (x) W`.
fn embed<K: Field>(d: usize, dw: usize, b: usize, u: &[K]) -> Vec<K> {
    let mut v = vec![K::zero(); d * dw];
    v[b * dw..(b + 1) * dw].clone_from_slice(u);
    v
}

/// Zero the last V-block.
fn compress<K: Field>(y: &[K], d: usize, dw: usize) -> Vec<K> {
    let mut out = y.to_vec();
    for x in &mut out[(d - 1) * dw..] {
        *x = K::zero();
    }
    out
}

/// `Some(c)` with `y = c v`, for nonzero `v`.
fn ratio<K: Field>(y: &[K], v: &[K]) -> Option<K> {
    let c = solve(&[v.to_vec()], y)?;
    c.into_iter().next()
}

/// Result of the single-index oracle.
#[derive(Clone, Debug)]
pub struct WignerReading<K> {
    /// Weight of the subalgebra highest-weight vector used.
    pub w0_weight: Vec<i64>,
    /// `omega_k` for `k = 1..d`; `None` when `w0` is not an eigenvector.
    pub values: Vec<Option<K>>,
}

/// Result of the coupled oracle for one `(L, r)`.
#[derive(Clone, Debug)]
pub struct CoupledReading<K> {
    /// Subalgebra label of the coupled vector, `L + eps_r` or `L - eps_r`.
    pub coupled_label: Vec<i64>,
    /// `omega_kr` for `k = 1..d`.
    pub values: Vec<K>,
}

impl<'a, K: Field> Setup<'a, K> {
    pub fn new(w: &'a RepModule<K>, lam: &[i64], variant: Variant) -> Result<Self, OracleError> {
        let kind = kind_for(variant);
        let roots = distinct_roots(&w.ctx, w.sig, lam, kind)?;
        let x = LBuilder::new(w).char_matrix_scaled(kind);
        let v = RepModule::vector(w.sig, w.ctx.clone());
        let left = match variant {
            Variant::Raise => v,
            Variant::Lower => RepModule::dual(&v),
        };
        let tensor = RepModule::tensor(&left, w);
        Ok(Setup { w, lam: lam.to_vec(), variant, tensor, x, roots })
    }

    fn d(&self) -> usize {
        self.w.sig.d()
    }

    /// `P_k v` without forming `P_k`.
    pub fn apply_projector(&self, k: usize, v: &[K]) -> Vec<K> {
        let mut y = v.to_vec();
        let mut den = K::one();
        for (i, b) in self.roots.iter().enumerate() {
            if i == k {
                continue;
            }
            y = vec_sub(&self.x.matvec(&y), &vec_scale(&y, b));
            den = den * &(self.roots[k].clone() - b);
        }
        vec_scale(&y, &K::one().try_div(&den).expect("distinct roots"))
    }

    /// `(P_k)_{dd}` on the subalgebra highest-weight vector of weight
    /// `lam0` (first `d - 1` components).
    pub fn wigner(&self, lam0: &[i64]) -> Result<WignerReading<K>, OracleError> {
        let d = self.d();
        let dw = self.w.dim();
        let ops = sub_ops(self.w.sig);
        let mut cands = Vec::new();
        for wt in self.w.weight_spaces().keys() {
            if wt[..d - 1] == *lam0 {
                for v in self.w.highest_weight_vectors(wt, &ops) {
                    cands.push((wt.clone(), v));
                }
            }
        }
        let (w0_weight, w0) = match cands.len() {
            0 => return Err(OracleError::NotRealized(format!("{lam0:?}"))),
            1 => cands.pop().expect("one candidate"),
            count => return Err(OracleError::MultiplicityAmbiguous { count }),
        };
        let z = embed(d, dw, d - 1, &w0);
        let values = (0..d)
            .map(|k| {
                let y = self.apply_projector(k, &z);
                ratio(&y[(d - 1) * dw..], &w0)
            })
            .collect();
        Ok(WignerReading { w0_weight, values })
    }

    /// Subalgebra highest-weight vectors of weight `target` inside
    /// `span{e_i (x) u : i < d - 1, u in basis}`.
    fn sub_hw_in(&self, basis: &[Vec<K>], target: &[i64]) -> Vec<Vec<K>> {
        let d = self.d();
        let dw = self.w.dim();
        let mut cands = Vec::new();
        for i in 0..d - 1 {
            for u in basis {
                let v = embed(d, dw, i, u);
                if self.tensor.vector_weight(&v) == Some(target) {
                    cands.push(v);
                }
            }
        }
        if cands.is_empty() {
            return Vec::new();
        }
        let imgs: Vec<Vec<Vec<K>>> = sub_ops(self.w.sig)
            .into_iter()
            .map(|a| cands.iter().map(|c| self.tensor.e[a].matvec(c)).collect())
            .collect();
        let mut rows = Vec::new();
        for img in &imgs {
            for t in 0..d * dw {
                let row: Vec<K> = img.iter().map(|v| v[t].clone()).collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        super::linalg::nullspace(&rows, cands.len())
            .into_iter()
            .map(|c| {
                let mut v = vec![K::zero(); d * dw];
                for (cj, z) in c.iter().zip(&cands) {
                    if !cj.is_zero() {
                        for (x, y) in v.iter_mut().zip(z) {
                            if !y.is_zero() {
                                *x = x.clone() + cj.clone() * y;
                            }
                        }
                    }
                }
                v
            })
            .collect()
    }

    /// The coupled vector `z` for component `me` and every candidate of the
    /// same weight, tagged by owning component.
    fn coupled_vectors(&self, comps: &[SubComponent<K>], me: usize, r: usize) -> Result<Option<(Vec<K>, Vec<(usize, Vec<K>)>, Vec<i64>)>, OracleError> {
        let sh = match self.variant {
            Variant::Raise => 1,
            Variant::Lower => -1,
        };
        let mut target = comps[me].weight.clone();
        target[r] += sh;
        let mine = self.sub_hw_in(&comps[me].basis, &target);
        let z = match mine.len() {
            0 => return Ok(None),
            1 => mine.into_iter().next().expect("one vector"),
            count => return Err(OracleError::MultiplicityAmbiguous { count }),
        };
        let mut all = Vec::new();
        for (ci, c) in comps.iter().enumerate() {
            for v in self.sub_hw_in(&c.basis, &target) {
                all.push((ci, v));
            }
        }
        let label = target[..self.d() - 1].to_vec();
        Ok(Some((z, all, label)))
    }

    /// Sum of the coordinates of `y` on the vectors owned by `me`.
    fn own_coefficient(y: &[K], all: &[(usize, Vec<K>)], me: usize) -> Result<K, OracleError> {
        let basis: Vec<Vec<K>> = all.iter().map(|(_, v)| v.clone()).collect();
        if rank(&basis) != basis.len() {
            return Err(OracleError::MultiplicityAmbiguous { count: basis.len() });
        }
        let c = solve(&basis, y).ok_or(OracleError::NotScalar)?;
        Ok(c.into_iter().zip(all).filter(|(_, (o, _))| *o == me).fold(K::zero(), |acc, (x, _)| acc + &x))
    }

    /// `P0_r P_k P0_r = omega_kr P0_r` read on the component `comps[me]`
    /// coupled with `e_r`; `None` if the coupled weight does not occur.
    pub fn coupled(&self, comps: &[SubComponent<K>], me: usize, r: usize) -> Result<Option<CoupledReading<K>>, OracleError> {
        let Some((z, all, coupled_label)) = self.coupled_vectors(comps, me, r)? else { return Ok(None) };
        let d = self.d();
        let dw = self.w.dim();
        let values = (0..d)
            .map(|k| Self::own_coefficient(&compress(&self.apply_projector(k, &z), d, dw), &all, me))
            .collect::<Result<_, _>>()?;
        Ok(Some(CoupledReading { coupled_label, values }))
    }

    /// Squared reduced matrix element of the `(d, i)` entries of `A`:
    /// the coefficient of `sum_i A_{id} A_{d j}` on the coupled vector.
    pub fn mu(&self, comps: &[SubComponent<K>], me: usize, r: usize) -> Result<Option<(Vec<i64>, K)>, OracleError> {
        let Some((z, all, label)) = self.coupled_vectors(comps, me, r)? else { return Ok(None) };
        let d = self.d();
        let dw = self.w.dim();
        let y = self.x.matvec(&z);
        let mut last = vec![K::zero(); d * dw];
        last[(d - 1) * dw..].clone_from_slice(&y[(d - 1) * dw..]);
        let y = compress(&self.x.matvec(&last), d, dw);
        let c = Self::own_coefficient(&y, &all, me)?;
        let s = qq::<K>(&self.w.ctx);
        let s2 = s.clone() * &s;
        Ok(Some((label, c.try_div(&s2).expect("q - q^-1 is nonzero"))))
    }
}

/// `prod_r (X - b_r)` for the module of highest weight `lam`; zero iff the
/// identity holds.
pub fn char_identity_residual<K: Field>(w: &RepModule<K>, lam: &[i64], kind: CharKind) -> Result<Matrix<K>, OracleError> {
    let roots = distinct_roots(&w.ctx, w.sig, lam, kind)?;
    let x = LBuilder::new(w).char_matrix_scaled(kind);
    Ok(char_product(&x, &roots))
}

/// Idempotence, orthogonality and completeness of the projectors.
pub fn projector_algebra_holds<K: Field>(ps: &[Matrix<K>], tol: f64) -> bool {
    let n = ps.first().map_or(0, |p| p.rows());
    let mut sum = Matrix::zeros(n, n);
    for (i, p) in ps.iter().enumerate() {
        sum = &sum + p;
        for (j, q) in ps.iter().enumerate() {
            let pq = p * q;
            let ok = if i == j { pq.approx_eq(p, tol) } else { pq.approx_eq(&Matrix::zeros(n, n), tol) };
            if !ok {
                return false;
            }
        }
    }
    sum.approx_eq(&Matrix::identity(n), tol)
}

/// `c` with `m = c I`, or `NotScalar`.
pub fn scalar_of<K: Field>(m: &Matrix<K>, tol: f64) -> Result<K, OracleError> {
    if m.rows() == 0 {
        return Ok(K::zero());
    }
    let c = m.get(0, 0).clone();
    if m.approx_eq(&Matrix::identity(m.rows()).scale(&c), tol) {
        Ok(c)
    } else {
        Err(OracleError::NotScalar)
    }
}

/// `sum_i (-1)^[i] q^{2 s (rho, e_i)} (A^p)_ii` on `W`, with `s = -1` for the
/// dual matrices and `+1` on `V (x) W`. Works with the scaled matrix and
/// divides the scalar at the end.
pub fn supertrace_invariant<K: Field>(w: &RepModule<K>, kind: CharKind, p: u32, tol: f64) -> Result<K, OracleError> {
    let sig = w.sig;
    let d = sig.d();
    let dw = w.dim();
    let x = LBuilder::new(w).char_matrix_scaled(kind);
    let mut xp = Matrix::identity(d * dw);
    let mut scale = K::one();
    for _ in 0..p {
        xp = &xp * &x;
        scale = scale * &qq::<K>(&w.ctx);
    }
    let s = if kind.on_dual() { -1 } else { 1 };
    let r2 = super::lop::rho2(sig);
    let mut acc = Matrix::zeros(dw, dw);
    for i in 0..d {
        let mut c = K::qhalf(&w.ctx, 2 * s * r2[i]);
        if sig.grade(i) == 1 {
            c = -c;
        }
        acc = &acc + &xp.block(dw, i, i).scale(&c);
    }
    let c = scalar_of(&acc, tol)?;
    Ok(c.try_div(&scale).expect("q - q^-1 is nonzero"))
}

/// True when `v` is a nonzero weight vector of `w` with the given weight.
pub fn has_weight<K: Field>(w: &RepModule<K>, v: &[K], wt: &[i64]) -> bool {
    !vec_is_zero(v) && v.iter().zip(&w.weights).all(|(x, y)| x.is_zero() || y == wt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::QFraction;
    use crate::oracle::realize::{realize, sub_decompose};
    use crate::superweight::Signature;

    fn sig(m: usize, n: usize) -> Signature {
        Signature::new(m, n).unwrap()
    }

    fn q(s: &str) -> QFraction {
        s.parse().unwrap()
    }

    #[test]
    fn gl11_vector_raise_table() {
        let w = realize::<QFraction>(sig(1, 1), &[1, 0], ()).unwrap();
        let s = Setup::new(&w, &[1, 0], Variant::Raise).unwrap();
        let r = s.wigner(&[1]).unwrap();
        let two = QFraction::qnum(2);
        assert_eq!(r.values[0], Some(QFraction::qhalf(-2).checked_div(&two).unwrap()));
        assert_eq!(r.values[1], Some(QFraction::qhalf(2).checked_div(&two).unwrap()));
        assert!(matches!(Setup::new(&w, &[1, 0], Variant::Lower), Err(OracleError::DegenerateRoots(_))));
    }

    #[test]
    fn gl21_vector_lower_table() {
        let w = realize::<QFraction>(sig(2, 1), &[1, 0, 0], ()).unwrap();
        let s = Setup::new(&w, &[1, 0, 0], Variant::Lower).unwrap();
        let r = s.wigner(&[0, 0]).unwrap();
        let vals: Vec<QFraction> = r.values.into_iter().map(Option::unwrap).collect();
        assert_eq!(vals, vec![q("-q^-2"), QFraction::from_int(0), q("1+q^-2")]);
    }

    #[test]
    fn supertrace_matches_on_vector() {
        let w = realize::<QFraction>(sig(1, 1), &[1, 0], ()).unwrap();
        assert_eq!(supertrace_invariant(&w, CharKind::Adual, 1, 0.0).unwrap(), QFraction::from_int(1));
        let t = RepModule::<QFraction>::trivial(sig(2, 1), ());
        assert_eq!(supertrace_invariant(&t, CharKind::Atilde, 2, 0.0).unwrap(), QFraction::from_int(0));
    }

    #[test]
    fn coupled_gl21_vector() {
        let w = realize::<QFraction>(sig(2, 1), &[1, 0, 0], ()).unwrap();
        let comps = sub_decompose(&w).unwrap();
        let s = Setup::new(&w, &[1, 0, 0], Variant::Raise).unwrap();
        let mut seen = 0;
        for me in 0..comps.len() {
            for r in 0..2 {
                if let Some(c) = s.coupled(&comps, me, r).unwrap() {
                    let total = c.values.iter().fold(QFraction::from_int(0), |a, x| a + x);
                    assert_eq!(total, QFraction::from_int(1));
                    seen += 1;
                }
            }
        }
        assert!(seen > 0);
    }
}
