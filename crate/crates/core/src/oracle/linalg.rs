//! Gaussian elimination over a `Field`: kernels, ranks and coordinates.

use crate::field::Field;

/// Zero threshold for floats; exact fields ignore it.
pub const TOL: f64 = 1e-10;

fn negligible<K: Field>(x: &K) -> bool {
    x.approx_zero(TOL)
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref<K: Field>(m: &mut [Vec<K>], ncols: usize) -> Vec<usize> {
    let mut piv = Vec::new();
    let mut row = 0;
    for c in 0..ncols {
        if row == m.len() {
            break;
        }
        let mut best: Option<usize> = None;
        for i in row..m.len() {
            if negligible(&m[i][c]) {
                continue;
            }
            if best.is_none_or(|b| m[i][c].magnitude() > m[b][c].magnitude()) {
                best = Some(i);
            }
        }
        let Some(p) = best else { continue };
        m.swap(row, p);
        let pv = m[row][c].clone();
        let inv = K::one().try_div(&pv).expect("pivot is nonzero");
        for x in m[row].iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * &inv;
            }
        }
        let prow = m[row].clone();
        for (i, r) in m.iter_mut().enumerate() {
            if i == row || r[c].is_zero() {
                continue;
            }
            let f = r[c].clone();
            for (x, y) in r.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y;
                }
            }
        }
        piv.push(c);
        row += 1;
    }
    piv
}

/// Basis of `{x : rows * x = 0}`.
pub fn nullspace<K: Field>(rows: &[Vec<K>], ncols: usize) -> Vec<Vec<K>> {
    let mut m: Vec<Vec<K>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let piv = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![K::zero(); ncols];
            v[fc] = K::one();
            for (r, &pc) in piv.iter().enumerate() {
                v[pc] = -m[r][fc].clone();
            }
            v
        })
        .collect()
}

pub fn rank<K: Field>(vs: &[Vec<K>]) -> usize {
    match vs.first() {
        None => 0,
        Some(v0) => {
            let mut m = vs.to_vec();
            rref(&mut m, v0.len()).len()
        }
    }
}

/// Coordinates `c` with `y = sum_j c_j basis_j`, or `None` if `y` is outside
/// the span. Assumes the basis is independent.
pub fn solve<K: Field>(basis: &[Vec<K>], y: &[K]) -> Option<Vec<K>> {
    let k = basis.len();
    let n = y.len();
    let mut m: Vec<Vec<K>> = (0..n)
        .map(|i| basis.iter().map(|b| b[i].clone()).chain(std::iter::once(y[i].clone())).collect())
        .collect();
    let piv = rref(&mut m, k);
    if m.iter().skip(piv.len()).any(|r| !negligible(&r[k])) {
        return None;
    }
    let mut c = vec![K::zero(); k];
    for (r, &pc) in piv.iter().enumerate() {
        c[pc] = m[r][k].clone();
    }
    Some(c)
}

/// Multiply through by denominators so exact entries become Laurent
/// polynomials; cheaper to act on afterwards.
pub fn clear_denominators<K: Field>(v: &mut [K]) {
    for _ in 0..64 {
        let Some(d) = v.iter().find_map(|x| x.denominator()) else { return };
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * &d;
            }
        }
    }
}

/// Incrementally maintained echelon basis, for independence tests.
#[derive(Clone, Debug, Default)]
pub struct SpanBuilder<K> {
    rows: Vec<(usize, Vec<K>)>,
}

impl<K: Field> SpanBuilder<K> {
    pub fn new() -> Self {
        SpanBuilder { rows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Add `v` if it is independent of what is already spanned.
    pub fn insert(&mut self, v: &[K]) -> bool {
        let mut r = v.to_vec();
        for (p, row) in &self.rows {
            if r[*p].is_zero() {
                continue;
            }
            let f = r[*p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y;
                }
            }
        }
        let Some(p) = (0..r.len()).find(|&i| !negligible(&r[i])) else { return false };
        let inv = K::one().try_div(&r[p]).expect("nonzero");
        let r: Vec<K> = r.into_iter().map(|x| if x.is_zero() { x } else { x * &inv }).collect();
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y;
                }
            }
        }
        self.rows.push((p, r));
        true
    }
}
