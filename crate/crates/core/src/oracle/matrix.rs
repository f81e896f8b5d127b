//! Dense matrices over a `Field`, with products that skip zero entries and
//! the graded Kronecker product.

use std::ops::{Add, Mul, Sub};

use crate::field::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<K> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

impl<K: Field> Matrix<K> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![K::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diag(vec![K::one(); n])
    }

    pub fn diag(d: Vec<K>) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in d.into_iter().enumerate() {
            m.data[i * n + i] = x;
        }
        m
    }

    /// Elementary matrix `e_ij` of size `n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.data[i * n + j] = K::one();
        m
    }

    pub fn from_rows(rows: Vec<Vec<K>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data: Vec<K> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c, "ragged rows");
        Matrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &K {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: K) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[K] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<K> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(|x| x.magnitude()).fold(0.0, f64::max)
    }

    /// Entrywise comparison, exact for exact fields.
    pub fn approx_eq(&self, o: &Self, tol: f64) -> bool {
        self.rows == o.rows && self.cols == o.cols && self.data.iter().zip(&o.data).all(|(a, b)| a.approx_eq(b, tol))
    }

    pub fn scale(&self, c: &K) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.clone() * c).collect() }
    }

    pub fn neg(&self) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x.clone()).collect() }
    }

    /// `self - c I`.
    pub fn sub_scalar(&self, c: &K) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let k = i * self.cols + i;
            m.data[k] = m.data[k].clone() - c;
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        m
    }

    /// `diag(d) * self`.
    pub fn diag_left(&self, d: &[K]) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let k = i * self.cols + j;
                if !m.data[k].is_zero() {
                    m.data[k] = m.data[k].clone() * &d[i];
                }
            }
        }
        m
    }

    /// `self * diag(d)`.
    pub fn diag_right(&self, d: &[K]) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let k = i * self.cols + j;
                if !m.data[k].is_zero() {
                    m.data[k] = m.data[k].clone() * &d[j];
                }
            }
        }
        m
    }

    pub fn matvec(&self, v: &[K]) -> Vec<K> {
        assert_eq!(v.len(), self.cols);
        let nz: Vec<usize> = (0..v.len()).filter(|&j| !v[j].is_zero()).collect();
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let mut acc = K::zero();
                for &j in &nz {
                    if !row[j].is_zero() {
                        acc = acc + row[j].clone() * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    fn mul_impl(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, o.cols);
        let onz: Vec<Vec<usize>> = (0..o.rows).map(|t| (0..o.cols).filter(|&j| !o.get(t, j).is_zero()).collect()).collect();
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a.is_zero() {
                    continue;
                }
                for &j in &onz[t] {
                    let k = i * o.cols + j;
                    out.data[k] = out.data[k].clone() + a.clone() * o.get(t, j);
                }
            }
        }
        out
    }

    /// Graded Kronecker product: entry `((i,j),(k,l))` is
    /// `(-1)^{py * par1[k]} x_ik y_jl`, where `py` is the parity of `y` and
    /// `par1` the parities of the first factor's basis.
    pub fn gkron(x: &Self, y: &Self, py: u8, par1: &[u8]) -> Self {
        let (n1, n2) = (x.rows, y.rows);
        let mut out = Self::zeros(n1 * n2, x.cols * y.cols);
        let c = x.cols * y.cols;
        for i in 0..n1 {
            for k in 0..x.cols {
                let xv = x.get(i, k);
                if xv.is_zero() {
                    continue;
                }
                let xs = if py & par1[k] & 1 == 1 { -xv.clone() } else { xv.clone() };
                for j in 0..n2 {
                    for l in 0..y.cols {
                        let yv = y.get(j, l);
                        if !yv.is_zero() {
                            out.data[(i * n2 + j) * c + k * y.cols + l] = xs.clone() * yv;
                        }
                    }
                }
            }
        }
        out
    }

    /// Block `(b, a)` of size `dw` (the entry operator `M_ba`).
    pub fn block(&self, dw: usize, b: usize, a: usize) -> Self {
        let mut m = Self::zeros(dw, dw);
        for x in 0..dw {
            for y in 0..dw {
                m.data[x * dw + y] = self.get(b * dw + x, a * dw + y).clone();
            }
        }
        m
    }

    pub fn set_block(&mut self, dw: usize, b: usize, a: usize, m: &Self) {
        for x in 0..dw {
            for y in 0..dw {
                self.set(b * dw + x, a * dw + y, m.get(x, y).clone());
            }
        }
    }

    /// Square submatrix on the given index set.
    pub fn restrict(&self, idx: &[usize]) -> Self {
        let n = idx.len();
        let mut m = Self::zeros(n, n);
        for (x, &i) in idx.iter().enumerate() {
            for (y, &j) in idx.iter().enumerate() {
                m.data[x * n + y] = self.get(i, j).clone();
            }
        }
        m
    }
}

impl<K: Field> Add for &Matrix<K> {
    type Output = Matrix<K>;
    fn add(self, o: Self) -> Matrix<K> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b).collect(),
        }
    }
}

impl<K: Field> Sub for &Matrix<K> {
    type Output = Matrix<K>;
    fn sub(self, o: Self) -> Matrix<K> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b).collect(),
        }
    }
}

impl<K: Field> Mul for &Matrix<K> {
    type Output = Matrix<K>;
    fn mul(self, o: Self) -> Matrix<K> {
        self.mul_impl(o)
    }
}

/// Vector helpers.
pub fn vec_sub<K: Field>(a: &[K], b: &[K]) -> Vec<K> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y).collect()
}

pub fn vec_add<K: Field>(a: &[K], b: &[K]) -> Vec<K> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y).collect()
}

pub fn vec_scale<K: Field>(a: &[K], c: &K) -> Vec<K> {
    a.iter().map(|x| x.clone() * c).collect()
}

pub fn vec_is_zero<K: Field>(a: &[K]) -> bool {
    a.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::QFraction;

    fn m(rows: &[&[i64]]) -> Matrix<QFraction> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| QFraction::from_int(x)).collect()).collect())
    }

    #[test]
    fn product_and_identity() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(&a * &Matrix::identity(2), a);
        assert_eq!(&a * &a, m(&[&[7, 10], &[15, 22]]));
        assert_eq!(a.matvec(&[QFraction::from_int(1), QFraction::from_int(1)]), vec![QFraction::from_int(3), QFraction::from_int(7)]);
    }

    #[test]
    fn graded_kron_sign() {
        // odd y picks up a sign on odd columns of x
        let x = Matrix::<QFraction>::identity(2);
        let y = m(&[&[0, 1], &[0, 0]]);
        let k = Matrix::gkron(&x, &y, 1, &[0, 1]);
        assert_eq!(*k.get(0, 1), QFraction::from_int(1));
        assert_eq!(*k.get(2, 3), QFraction::from_int(-1));
        let k0 = Matrix::gkron(&x, &y, 0, &[0, 1]);
        assert_eq!(*k0.get(2, 3), QFraction::from_int(1));
    }
}
