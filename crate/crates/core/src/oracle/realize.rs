//! Irreducible modules realized inside tensor powers of the vector module,
//! and their decomposition over the subalgebra gl(m|n-1).

use crate::field::Field;
use crate::superweight::Signature;

use super::linalg::rank;
use super::module::RepModule;
use super::OracleError;

#[derive(Clone, Debug)]
pub struct Realized<K: Field> {
    /// Highest weight.
    pub lam: Vec<i64>,
    /// Tensor power of `V` the module sits in.
    pub power: usize,
    pub module: RepModule<K>,
}

/// `V^{(x) k}`, the trivial module for `k = 0`.
pub fn tensor_power<K: Field>(sig: Signature, k: usize, ctx: K::Ctx) -> RepModule<K> {
    let v = RepModule::vector(sig, ctx.clone());
    let mut t = RepModule::trivial(sig, ctx);
    for _ in 0..k {
        t = RepModule::tensor(&t, &v);
    }
    t
}

fn all_ops(sig: Signature) -> Vec<usize> {
    (0..sig.d() - 1).collect()
}

/// Subalgebra generator indices.
pub fn sub_ops(sig: Signature) -> Vec<usize> {
    (0..sig.d().saturating_sub(2)).collect()
}

/// The irreducible module of highest weight `lam`, built inside
/// `V^{(x) |lam|}` as the lowering closure of one highest-weight vector.
pub fn realize<K: Field>(sig: Signature, lam: &[i64], ctx: K::Ctx) -> Result<RepModule<K>, OracleError> {
    let total: i64 = lam.iter().sum();
    if total < 0 || lam.iter().any(|&x| x < 0) {
        return Err(OracleError::NotRealized(format!("{lam:?}")));
    }
    let t = tensor_power(sig, total as usize, ctx);
    let ops = all_ops(sig);
    let hw = t.highest_weight_vectors(lam, &ops);
    let Some(v) = hw.into_iter().next() else {
        return Err(OracleError::NotRealized(format!("{lam:?}")));
    };
    Ok(t.submodule(&t.closure(&[v], &ops)).expect("closure is invariant"))
}

/// Every irreducible component type of `V^{(x) k}`, `k <= kmax`, once each,
/// ordered by tensor power and then weight.
pub fn realize_all<K: Field>(sig: Signature, kmax: usize, ctx: K::Ctx) -> Vec<Realized<K>> {
    let ops = all_ops(sig);
    let mut out: Vec<Realized<K>> = Vec::new();
    for k in 0..=kmax {
        let t = tensor_power(sig, k, ctx.clone());
        for w in t.weight_spaces().keys() {
            if out.iter().any(|r| &r.lam == w) {
                continue;
            }
            if let Some(v) = t.highest_weight_vectors(w, &ops).into_iter().next() {
                let module = t.submodule(&t.closure(&[v], &ops)).expect("closure is invariant");
                out.push(Realized { lam: w.clone(), power: k, module });
            }
        }
    }
    out
}

/// One irreducible subalgebra component: highest weight (all `d`
/// components), its highest-weight vector and a weight basis.
#[derive(Clone, Debug)]
pub struct SubComponent<K> {
    pub weight: Vec<i64>,
    pub hw: Vec<K>,
    pub basis: Vec<Vec<K>>,
}

/// Split `w` into subalgebra irreducibles, checking the pieces fill `w`.
pub fn sub_decompose<K: Field>(w: &RepModule<K>) -> Result<Vec<SubComponent<K>>, OracleError> {
    let ops = sub_ops(w.sig);
    let mut comps = Vec::new();
    for wt in w.weight_spaces().keys() {
        for v in w.highest_weight_vectors(wt, &ops) {
            let basis = w.closure(std::slice::from_ref(&v), &ops);
            comps.push(SubComponent { weight: wt.clone(), hw: v, basis });
        }
    }
    let all: Vec<Vec<K>> = comps.iter().flat_map(|c| c.basis.iter().cloned()).collect();
    if all.len() != w.dim() || rank(&all) != w.dim() {
        return Err(OracleError::NotCompletelyReducible);
    }
    Ok(comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::QFraction;

    fn sig(m: usize, n: usize) -> Signature {
        Signature::new(m, n).unwrap()
    }

    #[test]
    fn gl21_square_components() {
        let all = realize_all::<QFraction>(sig(2, 1), 2, ());
        let lams: Vec<&Vec<i64>> = all.iter().filter(|r| r.power == 2).map(|r| &r.lam).collect();
        assert_eq!(lams, vec![&vec![1, 1, 0], &vec![2, 0, 0]]);
        for r in &all {
            assert!(r.module.relations_hold(0.0));
        }
        let dims: usize = all.iter().filter(|r| r.power == 2).map(|r| r.module.dim()).sum();
        assert_eq!(dims, 9);
    }

    #[test]
    fn realize_vector_and_missing() {
        let w = realize::<QFraction>(sig(1, 1), &[1, 0], ()).unwrap();
        assert_eq!(w.dim(), 2);
        assert!(matches!(realize::<QFraction>(sig(1, 1), &[0, 1], ()), Err(OracleError::NotRealized(_))));
    }

    #[test]
    fn decomposes_over_subalgebra() {
        let w = realize::<QFraction>(sig(2, 1), &[2, 0, 0], ()).unwrap();
        let comps = sub_decompose(&w).unwrap();
        let total: usize = comps.iter().map(|c| c.basis.len()).sum();
        assert_eq!(total, w.dim());
    }
}
