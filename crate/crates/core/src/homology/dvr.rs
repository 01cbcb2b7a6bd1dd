//! Graded reduction over the discrete valuation ring `F[[w]]`.

use crate::complex::tcomplex::{GradedDvrComplex, TParameter};
use crate::error::{GridError, Result};
use crate::{fmt_q, Q};
use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

/// Free summands by grading and torsion summands `F[[w]]/w^k` by grading of
/// their generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleDecomposition {
    pub q: i64,
    /// sorted
    pub free: Vec<Q>,
    /// sorted `(grading, k)`
    pub torsion: Vec<(Q, u32)>,
}

impl ModuleDecomposition {
    pub fn new(q: i64, mut free: Vec<Q>, mut torsion: Vec<(Q, u32)>) -> Self {
        free.sort();
        torsion.sort();
        ModuleDecomposition { q, free, torsion }
    }

    /// Sorted `free <grading>` / `tors <grading> <order>` lines; orders are
    /// in units of `w = v^{1/q}`.
    pub fn to_lines(&self) -> String {
        let mut s = String::new();
        for g in &self.free {
            let _ = writeln!(s, "free {}", fmt_q(*g));
        }
        for (g, k) in &self.torsion {
            let _ = writeln!(s, "tors {} {}", fmt_q(*g), k);
        }
        s
    }

    pub fn max_free(&self) -> Option<Q> {
        self.free.last().copied()
    }

    pub fn free_rank(&self) -> usize {
        self.free.len()
    }

    /// Tensor with `W_t`: every summand at `γ` doubles to `γ` and `γ − (1 − t)`.
    pub fn tensor_wt(&self, t: TParameter) -> ModuleDecomposition {
        let s = Q::from_integer(1) - t.value();
        let free = self.free.iter().flat_map(|&g| [g, g - s]).collect();
        let torsion = self.torsion.iter().flat_map(|&(g, k)| [(g, k), (g - s, k)]).collect();
        ModuleDecomposition::new(self.q, free, torsion)
    }

    /// Re-expresses torsion orders over a finer uniformizer `w' = v^{1/q'}`.
    pub fn with_q(&self, q: i64) -> Option<ModuleDecomposition> {
        if q % self.q != 0 {
            return None;
        }
        let f = (q / self.q) as u32;
        Some(ModuleDecomposition::new(q, self.free.clone(), self.torsion.iter().map(|&(g, k)| (g, k * f)).collect()))
    }
}

/// Cancels entries of minimal valuation first, ties broken by generator
/// order. A unit pivot removes an acyclic pair; a pivot `w^k`, `k > 0`,
/// splits off a torsion summand. Survivors are free.
pub fn dvr_reduce(c: &GradedDvrComplex) -> Result<ModuleDecomposition> {
    let n = c.len();
    let mut cols: Vec<HashMap<usize, u32>> = vec![HashMap::new(); n];
    let mut rows: Vec<HashMap<usize, u32>> = vec![HashMap::new(); n];
    let mut heap: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    for (x, col) in c.diff.iter().enumerate() {
        for &(y, k) in col {
            let slot = cols[x].entry(y).or_insert(k);
            if *slot != k {
                return Err(GridError::Invariant(format!("non-homogeneous entry {x} → {y}")));
            }
            rows[y].insert(x, k);
            heap.insert((k, x, y));
        }
    }
    let mut alive = vec![true; n];
    let mut torsion = Vec::new();
    while let Some((k0, x0, y0)) = heap.pop_first() {
        if !alive[x0] || !alive[y0] || cols[x0].get(&y0) != Some(&k0) {
            continue;
        }
        let sources: Vec<(usize, u32)> = rows[y0].iter().filter(|e| *e.0 != x0).map(|(&a, &k)| (a, k)).collect();
        let targets: Vec<(usize, u32)> = cols[x0].iter().filter(|e| *e.0 != y0).map(|(&b, &k)| (b, k)).collect();
        for &(a, k1) in &sources {
            for &(b, k2) in &targets {
                // k1, k2 ≥ k0 because the pivot has minimal valuation
                let e = k1 + k2 - k0;
                match cols[a].get(&b) {
                    Some(&old) if old == e => {
                        cols[a].remove(&b);
                        rows[b].remove(&a);
                    }
                    Some(_) => return Err(GridError::Invariant(format!("non-homogeneous fill-in {a} → {b}"))),
                    None => {
                        cols[a].insert(b, e);
                        rows[b].insert(a, e);
                        heap.insert((e, a, b));
                    }
                }
            }
        }
        for z in [x0, y0] {
            alive[z] = false;
            for (b, _) in std::mem::take(&mut cols[z]) {
                rows[b].remove(&z);
            }
            for (a, _) in std::mem::take(&mut rows[z]) {
                cols[a].remove(&z);
            }
        }
        if k0 > 0 {
            torsion.push((c.gradings[y0], k0));
        }
    }
    let free = (0..n).filter(|&i| alive[i]).map(|i| c.gradings[i]).collect();
    Ok(ModuleDecomposition::new(c.q, free, torsion))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(gr: &[(i64, i64)], diff: Vec<Vec<(usize, u32)>>, q: i64) -> GradedDvrComplex {
        GradedDvrComplex {
            q,
            labels: (0..gr.len()).collect(),
            gradings: gr.iter().map(|&(a, b)| Q::new(a, b)).collect(),
            diff,
        }
    }

    #[test]
    fn elementary_pair() {
        // x → w³ y with q = 1: gr(y) − 3 = gr(x) − 1
        let c = cx(&[(0, 1), (2, 1)], vec![vec![(1, 3)], vec![]], 1);
        c.check_grading_drop().unwrap();
        let d = dvr_reduce(&c).unwrap();
        assert!(d.free.is_empty());
        assert_eq!(d.torsion, vec![(Q::from_integer(2), 3)]);
        assert_eq!(d.to_lines(), "tors 2 3\n");
    }

    #[test]
    fn unit_pair_is_invisible() {
        let c = cx(&[(0, 1), (1, 1), (0, 1)], vec![vec![], vec![(2, 0)], vec![]], 1);
        let d = dvr_reduce(&c).unwrap();
        assert_eq!(d.free, vec![Q::from_integer(0)]);
        assert!(d.torsion.is_empty());
    }

    #[test]
    fn wt_tensor() {
        let d = ModuleDecomposition::new(2, vec![Q::from_integer(0)], vec![]);
        let t = TParameter::new(1, 2).unwrap();
        assert_eq!(d.tensor_wt(t).free, vec![Q::new(-1, 2), Q::from_integer(0)]);
    }
}
