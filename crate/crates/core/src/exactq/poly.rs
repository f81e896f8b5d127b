//! Dense univariate polynomials over the integers, used only for GCD-based
//! normalization of fractions. Index `k` holds the coefficient of `x^k`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) type IntPoly = Vec<BigInt>;

fn trim(p: &mut IntPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn content(p: &IntPoly) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divide out the content and make the leading coefficient positive.
pub(crate) fn primitive(mut p: IntPoly) -> IntPoly {
    trim(&mut p);
    if p.is_empty() {
        return p;
    }
    let mut g = content(&p);
    if p.last().unwrap().is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for c in p.iter_mut() {
            *c = &*c / &g;
        }
    }
    p
}

/// Pseudo-remainder of `a` by `b` (b nonzero).
fn prem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (k, bc) in b.iter().enumerate() {
            r[k + shift] -= &lr * bc;
        }
        trim(&mut r);
    }
    r
}

/// Primitive GCD of two nonzero polynomials, leading coefficient positive.
pub(crate) fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let (mut a, mut b) = if a.len() >= b.len() {
        (primitive(a.clone()), primitive(b.clone()))
    } else {
        (primitive(b.clone()), primitive(a.clone()))
    };
    while !b.is_empty() {
        if b.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = primitive(prem(&a, &b));
        a = b;
        b = r;
    }
    a
}

/// Exact quotient `a / b`; `b` must divide `a` in Z[x].
pub(crate) fn div_exact(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return Vec::new();
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    let lb = &b[db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] / lb;
        if c.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            r[k + j] -= &c * bc;
        }
        q[k] = c;
    }
    trim(&mut q);
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> IntPoly {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x-1)(x+2) and (x-1)(x+3)
        let g = gcd(&p(&[-2, 1, 1]), &p(&[-3, 2, 1]));
        assert_eq!(g, p(&[-1, 1]));
    }

    #[test]
    fn gcd_coprime_is_one() {
        assert_eq!(gcd(&p(&[1, 0, 1]), &p(&[1, 1])), p(&[1]));
    }

    #[test]
    fn exact_division() {
        assert_eq!(div_exact(&p(&[-1, 0, 1]), &p(&[1, 1])), p(&[-1, 1]));
    }
}
