//! Dense, deliberately naive oracles for the homology computations.
//!
//! A graded complex over F[w] is, degree by degree, a complex of finite
//! F-vector spaces: the degree-g piece is spanned by the `w^j x` with
//! `gr(x) − j/q = g`, at most one per generator. Everything here is
//! Gaussian elimination on those pieces.

use gridups::complex::tcomplex::GradedDvrComplex;
use gridups::homology::dvr::ModuleDecomposition;
use gridups::Q;
use std::collections::BTreeSet;

/// Rank over GF(2) of a set of bit vectors.
pub fn rank(mut rows: Vec<Vec<u64>>) -> usize {
    let mut r = 0;
    let width = rows.first().map_or(0, |v| v.len() * 64);
    for bit in 0..width {
        let (w, b) = (bit / 64, 1u64 << (bit % 64));
        let Some(p) = (r..rows.len()).find(|&i| rows[i][w] & b != 0) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][w] & b != 0 {
                let pivot = rows[r].clone();
                for (a, c) in rows[i].iter_mut().zip(&pivot) {
                    *a ^= c;
                }
            }
        }
        r += 1;
    }
    r
}

fn bits(n: usize, idx: impl IntoIterator<Item = usize>) -> Vec<u64> {
    let mut v = vec![0u64; n.div_ceil(64).max(1)];
    for i in idx {
        v[i / 64] ^= 1 << (i % 64);
    }
    v
}

/// Generators present in degree `g`.
pub fn present(c: &GradedDvrComplex, g: Q) -> Vec<usize> {
    (0..c.len())
        .filter(|&x| {
            let j = (c.gradings[x] - g) * c.q;
            j.is_integer() && j >= Q::from_integer(0)
        })
        .collect()
}

/// Images under ∂ of the degree-`g` basis, as vectors over generators.
fn boundaries(c: &GradedDvrComplex, g: Q) -> Vec<Vec<u64>> {
    present(c, g).into_iter().map(|x| bits(c.len(), c.diff[x].iter().map(|e| e.0))).collect()
}

/// dim H in degree `g`.
pub fn homology_dim(c: &GradedDvrComplex, g: Q) -> usize {
    let cg = present(c, g).len();
    let dg = rank(boundaries(c, g));
    let dg1 = rank(boundaries(c, g + 1));
    cg - dg - dg1
}

/// Cycles in degree `g` as bit vectors (a kernel basis by elimination).
fn cycles(c: &GradedDvrComplex, g: Q) -> Vec<Vec<u64>> {
    let basis = present(c, g);
    let n = c.len();
    // augment each boundary with its source so the kernel can be read off
    let mut rows: Vec<(Vec<u64>, Vec<u64>)> =
        basis.iter().map(|&x| (bits(n, c.diff[x].iter().map(|e| e.0)), bits(n, [x]))).collect();
    let mut r = 0;
    for bit in 0..n {
        let (w, b) = (bit / 64, 1u64 << (bit % 64));
        let Some(p) = (r..rows.len()).find(|&i| rows[i].0[w] & b != 0) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i].0[w] & b != 0 {
                let (pa, pb) = rows[r].clone();
                for (a, c) in rows[i].0.iter_mut().zip(&pa) {
                    *a ^= c;
                }
                for (a, c) in rows[i].1.iter_mut().zip(&pb) {
                    *a ^= c;
                }
            }
        }
        r += 1;
    }
    rows.into_iter().skip(r).map(|(_, s)| s).collect()
}

/// Largest difference of gradings plus one: no torsion order exceeds this
/// many units of `v`.
fn depth(c: &GradedDvrComplex) -> i64 {
    let hi = c.gradings.iter().max().copied().unwrap_or_default();
    let lo = c.gradings.iter().min().copied().unwrap_or_default();
    ((hi - lo + 1) * c.q).ceil().to_integer() + 1
}

/// Every degree in which some generator is present, down to `depth` below
/// the lowest generator.
pub fn degrees(c: &GradedDvrComplex) -> Vec<Q> {
    let d = depth(c);
    let mut s = BTreeSet::new();
    for &g in &c.gradings {
        for j in 0..=(d + ((g - *c.gradings.iter().min().unwrap()) * c.q).ceil().to_integer()) {
            s.insert(g - Q::new(j, c.q));
        }
    }
    s.into_iter().rev().collect()
}

/// Is some class in degree `g` non-torsion? Multiply by `w^N` for `N` past
/// every torsion order and test against the boundaries there.
pub fn has_free_class(c: &GradedDvrComplex, g: Q) -> bool {
    let z = cycles(c, g);
    if z.is_empty() {
        return false;
    }
    let low = g - Q::new(depth(c), c.q);
    let b = boundaries(c, low + 1);
    let rb = rank(b.clone());
    let mut all = b;
    all.extend(z);
    rank(all) > rb
}

/// Top grading of a non-torsion class.
pub fn upsilon(c: &GradedDvrComplex) -> Option<Q> {
    degrees(c).into_iter().find(|&g| has_free_class(c, g))
}

/// Free rank from the specialization `w = 1`.
pub fn free_rank(c: &GradedDvrComplex) -> usize {
    let rows: Vec<Vec<u64>> = (0..c.len()).map(|x| bits(c.len(), c.diff[x].iter().map(|e| e.0))).collect();
    c.len() - 2 * rank(rows)
}

/// dim H in degree `g` predicted by a decomposition.
pub fn predicted_dim(d: &ModuleDecomposition, g: Q) -> usize {
    let steps = |top: Q| {
        let j = (top - g) * d.q;
        j.is_integer().then(|| j.to_integer()).filter(|&j| j >= 0)
    };
    let free = d.free.iter().filter(|&&top| steps(top).is_some()).count();
    let tors = d.torsion.iter().filter(|&&(top, k)| steps(top).is_some_and(|j| j < k as i64)).count();
    free + tors
}

/// First degree where a decomposition disagrees with the dense homology.
pub fn decomposition_mismatch(c: &GradedDvrComplex, d: &ModuleDecomposition) -> Option<(Q, usize, usize)> {
    degrees(c).into_iter().find_map(|g| {
        let (h, p) = (homology_dim(c, g), predicted_dim(d, g));
        (h != p).then_some((g, h, p))
    })
}
