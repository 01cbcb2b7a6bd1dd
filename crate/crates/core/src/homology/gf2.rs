//! Homology of finite complexes over GF(2).

use crate::error::{GridError, Result};
use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

/// A finite GF(2) complex: graded generators and, per source, the targets of
/// the differential.
#[derive(Clone, Debug, Default)]
pub struct FiniteComplex<G> {
    pub gradings: Vec<G>,
    pub diff: Vec<Vec<usize>>,
}

/// Rank of a sparse GF(2) matrix given as sorted column supports.
pub fn rank(mut cols: Vec<Vec<u32>>) -> usize {
    let mut pivot_of: HashMap<u32, usize> = HashMap::new();
    let mut r = 0;
    for j in 0..cols.len() {
        loop {
            let Some(&low) = cols[j].last() else { break };
            match pivot_of.get(&low) {
                Some(&k) => {
                    let merged = sym_diff(&cols[j], &cols[k]);
                    cols[j] = merged;
                }
                None => {
                    pivot_of.insert(low, j);
                    r += 1;
                    break;
                }
            }
        }
    }
    r
}

fn sym_diff(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else if a[i] > b[j] {
            out.push(b[j]);
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Homology dimension in each grading. `drop` gives the grading of `∂x` from
/// that of `x`; every term must land there.
pub fn gf2_homology<G: Ord + Hash + Clone>(
    c: &FiniteComplex<G>,
    drop: impl Fn(&G) -> G,
) -> Result<BTreeMap<G, usize>> {
    // position of each generator inside its grading block
    let mut blocks: BTreeMap<G, Vec<usize>> = BTreeMap::new();
    for (i, g) in c.gradings.iter().enumerate() {
        blocks.entry(g.clone()).or_default().push(i);
    }
    let mut pos = vec![0u32; c.gradings.len()];
    for members in blocks.values() {
        for (k, &i) in members.iter().enumerate() {
            pos[i] = k as u32;
        }
    }
    for (x, col) in c.diff.iter().enumerate() {
        let want = drop(&c.gradings[x]);
        if col.iter().any(|&y| c.gradings[y] != want) {
            return Err(GridError::Invariant("differential is not homogeneous".into()));
        }
        // ∂² = 0
        let mut acc: Vec<usize> = col.iter().flat_map(|&y| c.diff[y].iter().copied()).collect();
        acc.sort_unstable();
        let mut k = 0;
        while k < acc.len() {
            let mut j = k;
            while j < acc.len() && acc[j] == acc[k] {
                j += 1;
            }
            if (j - k) % 2 == 1 {
                return Err(GridError::Invariant("∂∘∂ ≠ 0 on a finite complex".into()));
            }
            k = j;
        }
    }
    let mut ranks: BTreeMap<G, usize> = BTreeMap::new();
    for (g, members) in &blocks {
        let cols: Vec<Vec<u32>> = members
            .iter()
            .map(|&x| {
                let mut v: Vec<u32> = c.diff[x].iter().map(|&y| pos[y]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        ranks.insert(g.clone(), rank(cols));
    }
    let mut out = BTreeMap::new();
    for (g, members) in &blocks {
        let outgoing = ranks[g];
        // incoming rank: from the block whose drop is g
        let incoming: usize = blocks
            .keys()
            .filter(|h| drop(h) == *g)
            .map(|h| ranks[h])
            .sum();
        let dim = members.len() - outgoing - incoming;
        if dim > 0 {
            out.insert(g.clone(), dim);
        }
    }
    Ok(out)
}
