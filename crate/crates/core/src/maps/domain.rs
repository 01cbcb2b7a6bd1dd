//! Positive domains between two states and the typed domains that build the
//! stabilization′ maps.
//!
//! A domain from `x` to `y` is a 2-chain `p` on the torus whose horizontal
//! boundary runs from `x` to `y`. Crossing the horizontal circle `α_r` upward,
//! the multiplicity jumps by `λ_r + [c ∈ [x_r, y_r))` (cyclic interval), so
//! every domain has the form `p(r, c) = p0(r, c) + a_r + b_c`.

use crate::combinatorics::State;
use crate::complex::monomial::UMonomial;
use crate::diagram::{GridDiagram, StabilizationData};
use crate::error::{GridError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Domain {
    pub n: usize,
    /// multiplicity of cell `(row, col)` at `row * n + col`
    pub mult: Vec<u32>,
    pub x: Vec<u8>,
    pub y: Vec<u8>,
}

impl Domain {
    pub fn at(&self, row: usize, col: usize) -> u32 {
        self.mult[(row % self.n) * self.n + col % self.n]
    }

    /// `[NE, NW, SW, SE]` multiplicities around the lattice point `(col, row)`.
    pub fn corner(&self, (col, row): (usize, usize)) -> [u32; 4] {
        let n = self.n;
        let (cl, rd) = ((col + n - 1) % n, (row + n - 1) % n);
        [self.at(row, col), self.at(row, cl), self.at(rd, cl), self.at(rd, col)]
    }

    pub fn three_zero(&self, pt: (usize, usize)) -> bool {
        self.corner(pt).iter().filter(|&&m| m == 0).count() >= 3
    }

    pub fn interior(&self, pt: (usize, usize)) -> bool {
        self.corner(pt).iter().all(|&m| m > 0)
    }

    pub fn is_trivial(&self) -> bool {
        self.x == self.y && self.mult.iter().all(|&m| m == 0)
    }

    /// Number of points of `y` not in `x`.
    pub fn moved(&self) -> usize {
        self.x.iter().zip(&self.y).filter(|(a, b)| a != b).count()
    }

    /// Lattice points of `x ∪ y`.
    pub fn union_points(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|r| [(self.x[r] as usize, r), (self.y[r] as usize, r)])
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Lattice points of `x ∆ y`.
    pub fn moved_points(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .filter(|&r| self.x[r] != self.y[r])
            .flat_map(|r| [(self.x[r] as usize, r), (self.y[r] as usize, r)])
            .collect()
    }

    /// Number of horizontal boundary segments (1 for the trivial domain).
    pub fn complexity(&self) -> usize {
        if self.is_trivial() {
            return 1;
        }
        let n = self.n;
        let mut segs = 0;
        for r in 0..n {
            let rd = (r + n - 1) % n;
            let mut prev: Option<i64> = None;
            let jump = |c: usize| self.at(r, c) as i64 - self.at(rd, c) as i64;
            // count maximal runs of equal non-zero jump, cyclically
            let start = (0..n).find(|&c| jump(c) != jump((c + n - 1) % n));
            let Some(s) = start else {
                if jump(0) != 0 {
                    segs += 1;
                }
                continue;
            };
            for k in 0..n {
                let c = (s + k) % n;
                let j = jump(c);
                if Some(j) != prev && j != 0 {
                    segs += 1;
                }
                prev = Some(j);
            }
        }
        segs
    }

    /// An empty rectangle: two moved points, multiplicities 0/1 on a single
    /// rectangle and no point of `x` inside.
    pub fn is_empty_rectangle(&self) -> bool {
        self.moved() == 2
            && self.mult.iter().all(|&m| m <= 1)
            && self.complexity() == 2
            && (0..self.n).all(|r| !self.interior((self.x[r] as usize, r)))
    }

    /// `Π U_i^{O_i(p)}` over the O's of `g`, skipping the row `skip`.
    pub fn weight(&self, g: &GridDiagram, skip: Option<usize>) -> UMonomial {
        let e: Vec<u32> =
            (0..self.n).map(|r| if Some(r) == skip { 0 } else { self.at(r, g.o_col(r)) }).collect();
        UMonomial::from_exponents(&e)
    }
}

/// Every positive domain from `x` to `y` with multiplicities at most `cap`.
pub fn enumerate_domains(x: &[u8], y: &[u8], cap: u32) -> Vec<Domain> {
    let n = x.len();
    let cap = cap as i64;
    // p0(r, c): accumulated jumps from row 0 up to row r
    let mut p0 = vec![0i64; n * n];
    for r in 1..n {
        for c in 0..n {
            let inside = in_cyclic(c, x[r] as usize, y[r] as usize, n) as i64;
            p0[r * n + c] = p0[(r - 1) * n + c] + inside;
        }
    }
    let mut out = Vec::new();
    let mut a = vec![0i64; n];
    // per column: feasible range of b_c given the rows fixed so far
    let lo: Vec<i64> = (0..n).map(|_| 0).collect();
    let hi: Vec<i64> = (0..n).map(|_| cap).collect();
    rec(1, n, cap, &p0, &mut a, lo, hi, x, y, &mut out);
    out
}

fn in_cyclic(c: usize, from: usize, to: usize, n: usize) -> bool {
    from != to && (c + n - from) % n < (to + n - from) % n
}

#[allow(clippy::too_many_arguments)]
fn rec(
    r: usize,
    n: usize,
    cap: i64,
    p0: &[i64],
    a: &mut Vec<i64>,
    lo: Vec<i64>,
    hi: Vec<i64>,
    x: &[u8],
    y: &[u8],
    out: &mut Vec<Domain>,
) {
    if r == n {
        let mut b = lo.clone();
        loop {
            let mult = (0..n * n)
                .map(|i| (p0[i] + a[i / n] + b[i % n]) as u32)
                .collect();
            out.push(Domain { n, mult, x: x.to_vec(), y: y.to_vec() });
            // odometer over b in [lo, hi]
            let mut k = 0;
            loop {
                if k == n {
                    return;
                }
                if b[k] < hi[k] {
                    b[k] += 1;
                    break;
                }
                b[k] = lo[k];
                k += 1;
            }
        }
    }
    let amin = (0..n).map(|c| -cap - p0[r * n + c]).max().unwrap();
    let amax = (0..n).map(|c| cap - p0[r * n + c]).min().unwrap();
    for ar in amin..=amax {
        let mut nlo = lo.clone();
        let mut nhi = hi.clone();
        let mut ok = true;
        for c in 0..n {
            let base = p0[r * n + c] + ar;
            nlo[c] = nlo[c].max(-base);
            nhi[c] = nhi[c].min(cap - base);
            if nlo[c] > nhi[c] {
                ok = false;
                break;
            }
        }
        if ok {
            a[r] = ar;
            rec(r + 1, n, cap, p0, a, nlo, nhi, x, y, out);
        }
    }
    a[r] = 0;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DomainKind {
    IL,
    IR,
    OL,
    OR,
    K1,
    K2,
    K3,
}

impl DomainKind {
    pub const ALL: [DomainKind; 7] =
        [DomainKind::IL, DomainKind::IR, DomainKind::OL, DomainKind::OR, DomainKind::K1, DomainKind::K2, DomainKind::K3];
    pub const K: [DomainKind; 3] = [DomainKind::K1, DomainKind::K2, DomainKind::K3];
}

/// Readings of the K-type conditions that the text leaves open.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KReading {
    /// the "other points" condition also covers points of `x ∩ y`
    pub others_include_fixed: bool,
    /// a domain of several K types is counted once instead of once per type
    pub union: bool,
    /// the upward segment on the next vertical circle must be unique
    pub unique_up_segment: bool,
    /// drop domains whose Maslov degree as a `K` term is not `+1`
    pub graded: bool,
}

impl Default for KReading {
    /// The reading under which the homotopy identity holds.
    fn default() -> Self {
        KReading { others_include_fixed: false, union: false, unique_up_segment: false, graded: true }
    }
}

impl KReading {
    pub fn all() -> Vec<KReading> {
        let mut v = Vec::new();
        for a in [false, true] {
            for b in [false, true] {
                for c in [false, true] {
                    for d in [false, true] {
                        v.push(KReading { others_include_fixed: a, union: b, unique_up_segment: c, graded: d });
                    }
                }
            }
        }
        v
    }
}

/// The stabilized diagram together with its labelled markings.
#[derive(Clone, Debug)]
pub struct StabilizedGrid {
    pub g: GridDiagram,
    pub data: StabilizationData,
}

impl StabilizedGrid {
    pub fn c(&self) -> (usize, usize) {
        self.data.c
    }
    pub fn contains_c(&self, s: &[u8]) -> bool {
        let (cc, cr) = self.data.c;
        s[cr] as usize == cc
    }
    fn mark(&self, p: &Domain, cell: (usize, usize)) -> u32 {
        p.at(cell.0, cell.1)
    }

    /// The three-zero condition at every point of `x ∪ y` except `c`.
    fn corners_clear(&self, p: &Domain) -> bool {
        let c = self.c();
        p.union_points().into_iter().filter(|&pt| pt != c).all(|pt| p.three_zero(pt))
    }

    /// Whether `p` is of type `kind`.
    pub fn is_type(&self, p: &Domain, kind: DomainKind, reading: KReading) -> bool {
        let c = self.c();
        let [ne, nw, sw, se] = p.corner(c);
        let moved = p.moved();
        match kind {
            DomainKind::IL | DomainKind::IR => {
                if !self.contains_c(&p.y) {
                    return false;
                }
                if kind == DomainKind::IL && p.is_trivial() {
                    return true;
                }
                if !self.corners_clear(p) {
                    return false;
                }
                if kind == DomainKind::IL {
                    let k = ne;
                    k >= 1 && nw == k && se == k && sw + 1 == k && moved == 2 * k as usize + 1
                } else {
                    let k = ne;
                    nw == k && sw == k && se == k + 1 && moved == 2 * k as usize + 2
                }
            }
            DomainKind::OL | DomainKind::OR => {
                if !self.contains_c(&p.x) {
                    return false;
                }
                if kind == DomainKind::OL && p.is_trivial() {
                    return true;
                }
                if !self.corners_clear(p) {
                    return false;
                }
                if kind == DomainKind::OL {
                    let k = ne;
                    k >= 1 && sw == k && se == k && nw + 1 == k && moved == 2 * k as usize + 1
                } else {
                    let k = nw;
                    sw == k && se == k && ne == k + 1 && moved == 2 * k as usize + 2
                }
            }
            DomainKind::K1 | DomainKind::K2 | DomainKind::K3 => self.is_k_type(p, kind, reading),
        }
    }

    fn is_k_type(&self, p: &Domain, kind: DomainKind, reading: KReading) -> bool {
        if self.contains_c(&p.x) || self.contains_c(&p.y) {
            return false;
        }
        let m = 2 * p.moved();
        if m == 0 || m % 4 != 0 {
            return false;
        }
        let d = &self.data;
        let (o1, x1, x2) = (self.mark(p, d.o1), self.mark(p, d.x1), self.mark(p, d.x2));
        let marks_ok = match kind {
            DomainKind::K3 => o1 == x2 && x2 == x1,
            _ => o1 == x2 && x2 == x1 + 1,
        };
        if !marks_ok {
            return false;
        }
        let moved_pts = p.moved_points();
        let interior: Vec<(usize, usize)> = moved_pts.iter().copied().filter(|&pt| p.interior(pt)).collect();
        let beta_j = self.c().0;
        match kind {
            DomainKind::K1 => {
                if interior.len() != 1 || interior[0].0 != beta_j {
                    return false;
                }
            }
            _ => {
                if interior.len() != (m - 4) / 4 {
                    return false;
                }
            }
        }
        let others: Vec<(usize, usize)> = if reading.others_include_fixed {
            p.union_points().into_iter().filter(|pt| !interior.contains(pt)).collect()
        } else {
            moved_pts.iter().copied().filter(|pt| !interior.contains(pt)).collect()
        };
        if !others.iter().all(|&pt| p.three_zero(pt)) {
            return false;
        }
        if kind == DomainKind::K3 {
            // vertical boundary on the circle right of β_j, oriented upward
            let n = p.n;
            let line = (beta_j + 1) % n;
            let ups = (0..n).filter(|&r| p.at(r, (line + n - 1) % n) > p.at(r, line)).count();
            let ok = if reading.unique_up_segment { vertical_runs_up(p, line) == 1 } else { ups > 0 };
            if !ok {
                return false;
            }
        }
        true
    }

    /// Typed domains from `x` to `y` with multiplicities at most `cap`.
    pub fn typed_domains(&self, x: &State, y: &State, kind: DomainKind, cap: u32, reading: KReading) -> Result<Vec<Domain>> {
        let xs: Vec<u8> = x.perm.iter().map(|&c| c as u8).collect();
        let ys: Vec<u8> = y.perm.iter().map(|&c| c as u8).collect();
        match kind {
            DomainKind::IL | DomainKind::IR if !self.contains_c(&ys) => {
                return Err(GridError::Unsupported(format!("{kind:?} domains need c ∈ y")))
            }
            DomainKind::OL | DomainKind::OR if !self.contains_c(&xs) => {
                return Err(GridError::Unsupported(format!("{kind:?} domains need c ∈ x")))
            }
            DomainKind::K1 | DomainKind::K2 | DomainKind::K3 if self.contains_c(&xs) || self.contains_c(&ys) => {
                return Err(GridError::Unsupported("K domains need x, y ∉ I".into()))
            }
            _ => {}
        }
        Ok(enumerate_domains(&xs, &ys, cap).into_iter().filter(|p| self.is_type(p, kind, reading)).collect())
    }
}

/// Maximal runs of upward boundary along a vertical circle.
fn vertical_runs_up(p: &Domain, line: usize) -> usize {
    let n = p.n;
    let coef = |r: usize| p.at(r, (line + n - 1) % n) as i64 - p.at(r, line) as i64;
    let mut runs = 0;
    for r in 0..n {
        let here = coef(r);
        let below = coef((r + n - 1) % n);
        if here > 0 && here != below {
            runs += 1;
        }
    }
    runs
}

/// Reflection across the horizontal circle through `c`: rows `r ↦ 2i − r`.
pub fn reflect_state(s: &[u8], i: usize) -> Vec<u8> {
    let n = s.len();
    let mut out = vec![0u8; n];
    for r in 0..n {
        out[(2 * i + n - r) % n] = s[r];
    }
    out
}

pub fn reflect_domain(p: &Domain, i: usize) -> Domain {
    let n = p.n;
    let mut mult = vec![0u32; n * n];
    for r in 0..n {
        let rr = (2 * i + 2 * n - r - 1) % n;
        for c in 0..n {
            mult[rr * n + c] = p.at(r, c);
        }
    }
    Domain { n, mult, x: reflect_state(&p.y, i), y: reflect_state(&p.x, i) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rectangle_is_a_domain() {
        // 2×2: x = [0,1] → y = [1,0] via the rectangle with corner at (0,0)
        let ds = enumerate_domains(&[0, 1], &[1, 0], 1);
        assert!(ds.iter().any(|d| d.mult == vec![1, 0, 0, 0]));
        assert!(ds.iter().all(|d| d.mult.iter().all(|&m| m <= 1)));
        // trivial domain and periodic domains from x to x
        let ds = enumerate_domains(&[0, 1], &[0, 1], 1);
        assert!(ds.iter().any(|d| d.is_trivial()));
        assert!(ds.iter().any(|d| d.mult == vec![1, 1, 0, 0]));
        assert!(ds.iter().any(|d| d.mult == vec![1, 1, 1, 1]));
    }

    #[test]
    fn reflection_involution() {
        let s = vec![2u8, 0, 3, 1];
        assert_eq!(reflect_state(&reflect_state(&s, 1), 1), s);
        let d = Domain { n: 2, mult: vec![1, 0, 0, 0], x: vec![0, 1], y: vec![1, 0] };
        assert_eq!(reflect_domain(&reflect_domain(&d, 1), 1), d);
    }
}
