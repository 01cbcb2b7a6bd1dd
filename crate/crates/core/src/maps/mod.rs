//! Explicit chain maps: stabilization′ maps with their homotopy, and the
//! saddle maps over the valuation ring.

pub mod domain;
pub mod saddle;
pub mod stabilization;

use crate::complex::monomial::Poly;
use std::collections::BTreeMap;

/// Column-oriented sparse matrix over the polynomial ring, per source.
pub type PolyMatrix = Vec<BTreeMap<usize, Poly>>;

pub fn from_diff(d: &[Vec<(usize, Poly)>]) -> PolyMatrix {
    d.iter().map(|col| col.iter().cloned().collect()).collect()
}

/// `after ∘ before`.
pub fn mul(after: &PolyMatrix, before: &PolyMatrix) -> PolyMatrix {
    before
        .iter()
        .map(|col| {
            let mut acc: BTreeMap<usize, Poly> = BTreeMap::new();
            for (mid, c1) in col {
                for (z, c2) in &after[*mid] {
                    acc.entry(*z).or_default().add_assign(&c1.mul(c2));
                }
            }
            acc.retain(|_, p| !p.is_zero());
            acc
        })
        .collect()
}

pub fn add(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let mut acc = x.clone();
            for (k, p) in y {
                acc.entry(*k).or_default().add_assign(p);
            }
            acc.retain(|_, p| !p.is_zero());
            acc
        })
        .collect()
}

pub fn identity(n: usize) -> PolyMatrix {
    (0..n).map(|i| BTreeMap::from([(i, Poly::one())])).collect()
}

/// First `(source, target, lhs, rhs)` where the matrices disagree.
pub fn first_difference(a: &PolyMatrix, b: &PolyMatrix) -> Option<(usize, usize, Poly, Poly)> {
    for (x, (ca, cb)) in a.iter().zip(b).enumerate() {
        let keys: std::collections::BTreeSet<&usize> = ca.keys().chain(cb.keys()).collect();
        for y in keys {
            let pa = ca.get(y).cloned().unwrap_or_default();
            let pb = cb.get(y).cloned().unwrap_or_default();
            if pa != pb {
                return Some((x, *y, pa, pb));
            }
        }
    }
    if a.len() != b.len() {
        return Some((a.len().min(b.len()), 0, Poly::zero(), Poly::zero()));
    }
    None
}
