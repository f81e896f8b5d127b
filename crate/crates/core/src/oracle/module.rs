//! Graded matrix representations given by the simple generators `e_a`, `f_a`
//! together with per-basis-vector weights and parities.

use std::collections::BTreeMap;

use crate::field::Field;
use crate::superweight::{Signature, Weight};

use super::linalg::{clear_denominators, nullspace, solve, SpanBuilder};
use super::matrix::Matrix;

#[derive(Clone, Debug)]
pub struct RepModule<K: Field> {
    pub sig: Signature,
    pub parities: Vec<u8>,
    /// `E_tt` eigenvalues of each basis vector.
    pub weights: Vec<Vec<i64>>,
    pub e: Vec<Matrix<K>>,
    pub f: Vec<Matrix<K>>,
    pub ctx: K::Ctx,
}

impl<K: Field> RepModule<K> {
    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    /// Parity of `e_a` and `f_a` (0-based `a`).
    pub fn gen_parity(&self, a: usize) -> u8 {
        u8::from(a + 1 == self.sig.m)
    }

    /// `h_a(w) = (a) w_a - (a+1) w_{a+1}`.
    pub fn h(&self, a: usize, w: &[i64]) -> i64 {
        self.sig.sgn(a) * w[a] - self.sig.sgn(a + 1) * w[a + 1]
    }

    pub fn weight(&self, i: usize) -> Weight {
        Weight::from_ints(self.sig, &self.weights[i]).expect("weights have d components")
    }

    /// Diagonal of `q^{sum_t c2_t E_tt / 2}`.
    pub fn cartan_diag(&self, c2: &[i64]) -> Vec<K> {
        self.weights
            .iter()
            .map(|w| K::qhalf(&self.ctx, c2.iter().zip(w).map(|(c, x)| c * x).sum()))
            .collect()
    }

    pub fn cartan(&self, c2: &[i64]) -> Matrix<K> {
        Matrix::diag(self.cartan_diag(c2))
    }

    /// Diagonal of `q^{c2 h_a / 2}`.
    pub fn k_diag(&self, a: usize, c2: i64) -> Vec<K> {
        self.weights.iter().map(|w| K::qhalf(&self.ctx, c2 * self.h(a, w))).collect()
    }

    pub fn k_mat(&self, a: usize, c2: i64) -> Matrix<K> {
        Matrix::diag(self.k_diag(a, c2))
    }

    /// The defining vector module: basis vector `i` has parity `[i]` and
    /// weight `eps_i`.
    pub fn vector(sig: Signature, ctx: K::Ctx) -> Self {
        let d = sig.d();
        RepModule {
            sig,
            parities: (0..d).map(|i| sig.grade(i)).collect(),
            weights: (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect(),
            e: (0..d - 1).map(|a| Matrix::unit(d, a, a + 1)).collect(),
            f: (0..d - 1).map(|a| Matrix::unit(d, a + 1, a)).collect(),
            ctx,
        }
    }

    /// The one-dimensional trivial module.
    pub fn trivial(sig: Signature, ctx: K::Ctx) -> Self {
        let d = sig.d();
        RepModule {
            sig,
            parities: vec![0],
            weights: vec![vec![0; d]],
            e: (0..d - 1).map(|_| Matrix::zeros(1, 1)).collect(),
            f: (0..d - 1).map(|_| Matrix::zeros(1, 1)).collect(),
            ctx,
        }
    }

    /// `W1 (x) W2` with `Delta(x) = q^{h/2} (x) x + x (x) q^{-h/2}`.
    pub fn tensor(w1: &Self, w2: &Self) -> Self {
        let sig = w1.sig;
        let parities = w1.parities.iter().flat_map(|p| w2.parities.iter().map(move |r| (p + r) % 2)).collect();
        let weights = w1
            .weights
            .iter()
            .flat_map(|a| w2.weights.iter().map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect()))
            .collect();
        let mut e = Vec::new();
        let mut f = Vec::new();
        for a in 0..sig.d() - 1 {
            let p = w1.gen_parity(a);
            let (kp, km) = (w1.k_mat(a, 1), w2.k_mat(a, -1));
            e.push(&Matrix::gkron(&kp, &w2.e[a], p, &w1.parities) + &Matrix::gkron(&w1.e[a], &km, 0, &w1.parities));
            f.push(&Matrix::gkron(&kp, &w2.f[a], p, &w1.parities) + &Matrix::gkron(&w1.f[a], &km, 0, &w1.parities));
        }
        RepModule { sig, parities, weights, e, f, ctx: w1.ctx.clone() }
    }

    /// `Delta^T(x) = x (x) q^{h/2} + q^{-h/2} (x) x` for `e_a` (`raising`)
    /// or `f_a`, on `W1 (x) W2`.
    pub fn delta_t(w1: &Self, w2: &Self, a: usize, raising: bool) -> Matrix<K> {
        let p = w1.gen_parity(a);
        let (x1, x2) = if raising { (&w1.e[a], &w2.e[a]) } else { (&w1.f[a], &w2.f[a]) };
        &Matrix::gkron(x1, &w2.k_mat(a, 1), 0, &w1.parities) + &Matrix::gkron(&w1.k_mat(a, -1), x2, p, &w1.parities)
    }

    /// Supertranspose `(A^T)_{ab} = (-1)^{[b][A]} A_{ba}`.
    pub fn supertranspose(a: &Matrix<K>, par: &[u8], pa: u8) -> Matrix<K> {
        let n = a.rows();
        let mut out = Matrix::zeros(n, n);
        for x in 0..n {
            for y in 0..n {
                let v = a.get(y, x);
                if !v.is_zero() {
                    out.set(x, y, if par[y] & pa & 1 == 1 { -v.clone() } else { v.clone() });
                }
            }
        }
        out
    }

    /// Dual module: `pi*(x) = pi(S(x))^T` with `S(e_a) = -q^{-h/2} e_a q^{h/2}`.
    pub fn dual(w: &Self) -> Self {
        let mut e = Vec::new();
        let mut f = Vec::new();
        for a in 0..w.sig.d() - 1 {
            let p = w.gen_parity(a);
            let (km, kp) = (w.k_diag(a, -1), w.k_diag(a, 1));
            let s = |x: &Matrix<K>| Self::supertranspose(&x.diag_left(&km).diag_right(&kp).neg(), &w.parities, p);
            e.push(s(&w.e[a]));
            f.push(s(&w.f[a]));
        }
        RepModule {
            sig: w.sig,
            parities: w.parities.clone(),
            weights: w.weights.iter().map(|x| x.iter().map(|y| -y).collect()).collect(),
            e,
            f,
            ctx: w.ctx.clone(),
        }
    }

    /// `e_a` maps weight `w` to `w + eps_a - eps_{a+1}`, `f_a` the other way,
    /// and both flip parity exactly when odd.
    pub fn weights_consistent(&self) -> bool {
        for a in 0..self.sig.d() - 1 {
            let p = self.gen_parity(a);
            for (mats, s) in [(&self.e, 1i64), (&self.f, -1)] {
                let m = &mats[a];
                for i in 0..self.dim() {
                    for j in 0..self.dim() {
                        if m.get(i, j).is_zero() {
                            continue;
                        }
                        let mut w = self.weights[j].clone();
                        w[a] += s;
                        w[a + 1] -= s;
                        if w != self.weights[i] || (self.parities[j] + p) % 2 != self.parities[i] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// `(q_a - q_a^-1)[e_a, f_b} = delta_ab (K_a - K_a^-1)` with
    /// `q_a = q^{(a)}`, exactly or to `tol`.
    pub fn relations_hold(&self, tol: f64) -> bool {
        let d = self.sig.d();
        for a in 0..d - 1 {
            let s = self.sig.sgn(a);
            let qq = K::qhalf(&self.ctx, 2 * s) - K::qhalf(&self.ctx, -2 * s);
            for b in 0..d - 1 {
                let ef = &self.e[a] * &self.f[b];
                let fe = &self.f[b] * &self.e[a];
                let odd = self.gen_parity(a) & self.gen_parity(b) == 1;
                let c = if odd { &ef + &fe } else { &ef - &fe };
                let lhs = c.scale(&qq);
                let rhs = if a == b { &self.k_mat(a, 2) - &self.k_mat(a, -2) } else { Matrix::zeros(self.dim(), self.dim()) };
                if !lhs.approx_eq(&rhs, tol) {
                    return false;
                }
            }
        }
        true
    }

    /// The same space viewed as a gl(m|n-1) module.
    pub fn restrict_to_subalgebra(&self) -> Self {
        let sub = self.sig.subalgebra();
        let k = sub.d();
        RepModule {
            sig: sub,
            parities: self.parities.clone(),
            weights: self.weights.iter().map(|w| w[..k].to_vec()).collect(),
            e: self.e[..k.saturating_sub(1)].to_vec(),
            f: self.f[..k.saturating_sub(1)].to_vec(),
            ctx: self.ctx.clone(),
        }
    }

    /// Weight of a weight-homogeneous vector.
    pub fn vector_weight(&self, v: &[K]) -> Option<&[i64]> {
        let i = v.iter().position(|x| !x.is_zero())?;
        Some(&self.weights[i])
    }

    /// Basis vectors grouped by weight.
    pub fn weight_spaces(&self) -> BTreeMap<Vec<i64>, Vec<usize>> {
        let mut out: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for (i, w) in self.weights.iter().enumerate() {
            out.entry(w.clone()).or_default().push(i);
        }
        out
    }

    /// Basis of the weight-`w` vectors killed by `e_a` for `a` in `ops`.
    pub fn highest_weight_vectors(&self, w: &[i64], ops: &[usize]) -> Vec<Vec<K>> {
        let idx: Vec<usize> = (0..self.dim()).filter(|&i| self.weights[i] == w).collect();
        if idx.is_empty() {
            return Vec::new();
        }
        let mut rows = Vec::new();
        for &a in ops {
            for r in 0..self.dim() {
                let row: Vec<K> = idx.iter().map(|&i| self.e[a].get(r, i).clone()).collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        nullspace(&rows, idx.len())
            .into_iter()
            .map(|c| {
                let mut v = vec![K::zero(); self.dim()];
                for (t, &i) in idx.iter().enumerate() {
                    v[i] = c[t].clone();
                }
                clear_denominators(&mut v);
                v
            })
            .collect()
    }

    /// Span of `seeds` under the lowering operators `f_a`, `a` in `ops`,
    /// returned as weight-homogeneous vectors.
    pub fn closure(&self, seeds: &[Vec<K>], ops: &[usize]) -> Vec<Vec<K>> {
        let mut spans: BTreeMap<Vec<i64>, SpanBuilder<K>> = BTreeMap::new();
        let mut basis = Vec::new();
        let mut queue = Vec::new();
        let add = |v: Vec<K>, spans: &mut BTreeMap<Vec<i64>, SpanBuilder<K>>, basis: &mut Vec<Vec<K>>, queue: &mut Vec<Vec<K>>| {
            let Some(w) = self.vector_weight(&v) else { return };
            if spans.entry(w.to_vec()).or_insert_with(SpanBuilder::new).insert(&v) {
                basis.push(v.clone());
                queue.push(v);
            }
        };
        for s in seeds {
            add(s.clone(), &mut spans, &mut basis, &mut queue);
        }
        while let Some(v) = queue.pop() {
            for &a in ops {
                let u = self.f[a].matvec(&v);
                add(u, &mut spans, &mut basis, &mut queue);
            }
        }
        basis
    }

    /// Matrices of an invariant subspace in the given basis, or `None` if the
    /// span is not invariant.
    pub fn submodule(&self, basis: &[Vec<K>]) -> Option<Self> {
        let k = basis.len();
        let mat = |m: &Matrix<K>| -> Option<Matrix<K>> {
            let mut out = Matrix::zeros(k, k);
            for (j, b) in basis.iter().enumerate() {
                let c = solve(basis, &m.matvec(b))?;
                for (i, x) in c.into_iter().enumerate() {
                    out.set(i, j, x);
                }
            }
            Some(out)
        };
        let mut parities = Vec::new();
        let mut weights = Vec::new();
        for b in basis {
            let i = b.iter().position(|x| !x.is_zero())?;
            parities.push(self.parities[i]);
            weights.push(self.weights[i].clone());
        }
        let e = self.e.iter().map(&mat).collect::<Option<Vec<_>>>()?;
        let f = self.f.iter().map(&mat).collect::<Option<Vec<_>>>()?;
        Some(RepModule { sig: self.sig, parities, weights, e, f, ctx: self.ctx.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::QFraction;

    type M = RepModule<QFraction>;

    fn sig(m: usize, n: usize) -> Signature {
        Signature::new(m, n).unwrap()
    }

    #[test]
    fn vector_module_gl11() {
        let v = M::vector(sig(1, 1), ());
        assert_eq!(v.parities, vec![0, 1]);
        assert_eq!(v.e[0], Matrix::unit(2, 0, 1));
        assert_eq!(v.f[0], Matrix::unit(2, 1, 0));
        assert!(v.relations_hold(0.0));
        assert!(v.weights_consistent());
    }

    #[test]
    fn cartan_on_vector_gl21() {
        let v = M::vector(sig(2, 1), ());
        let c = v.cartan(&[0, 0, 2]);
        assert_eq!(c, Matrix::diag(vec![QFraction::from_int(1), QFraction::from_int(1), QFraction::qhalf(2)]));
    }

    #[test]
    fn tensor_and_dual_relations() {
        for (m, n) in [(1, 1), (2, 1), (1, 2)] {
            let v = M::vector(sig(m, n), ());
            let vv = M::tensor(&v, &v);
            let vs = M::dual(&v);
            let vsv = M::tensor(&vs, &v);
            for w in [&vv, &vs, &vsv] {
                assert!(w.relations_hold(0.0), "gl({m}|{n})");
                assert!(w.weights_consistent(), "gl({m}|{n})");
            }
        }
    }

    #[test]
    fn gl11_square_decomposes() {
        let v = M::vector(sig(1, 1), ());
        let vv = M::tensor(&v, &v);
        let ops = [0];
        let mut dims = Vec::new();
        for w in vv.weight_spaces().keys() {
            for h in vv.highest_weight_vectors(w, &ops) {
                dims.push((w.clone(), vv.closure(&[h], &ops).len()));
            }
        }
        assert_eq!(dims, vec![(vec![1, 1], 2), (vec![2, 0], 2)]);
        let sub = vv.submodule(&vv.closure(&vv.highest_weight_vectors(&[2, 0], &ops), &ops)).unwrap();
        assert!(sub.relations_hold(0.0));
    }
}
