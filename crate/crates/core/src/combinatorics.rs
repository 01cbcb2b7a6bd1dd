//! States, the J-pairing, raw gradings and empty rectangles.
//!
//! Points are kept in doubled integer coordinates (lattice points even,
//! markings odd) so every pairing is an exact integer count.

use crate::diagram::{GridDiagram, PlanarDiagram};
use crate::Q;

/// `perm[i]` is the column of the point on horizontal circle `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct State {
    pub perm: Vec<usize>,
}

impl State {
    pub fn new(perm: Vec<usize>) -> Self {
        debug_assert!(is_permutation(&perm));
        State { perm }
    }
    pub fn n(&self) -> usize {
        self.perm.len()
    }
    /// Lattice points `(col, row)` of the state.
    pub fn points(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.perm.iter().enumerate().map(|(r, &c)| (c, r))
    }
    pub fn contains(&self, point: (usize, usize)) -> bool {
        self.perm[point.1] == point.0
    }
    /// Position in the lexicographic enumeration.
    pub fn index(&self) -> usize {
        rank_perm(&self.perm)
    }
}

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&v| v < p.len() && !std::mem::replace(&mut seen[v], true))
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Lexicographic rank of a permutation.
pub fn rank_perm(p: &[usize]) -> usize {
    let n = p.len();
    let mut used = 0u32;
    let mut rank = 0;
    for (i, &v) in p.iter().enumerate() {
        let smaller_unused = (0..v).filter(|&u| used & (1 << u) == 0).count();
        rank += smaller_unused * factorial(n - 1 - i);
        used |= 1 << v;
    }
    rank
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All `n!` states in lexicographic order.
pub fn enumerate_states(n: usize) -> impl Iterator<Item = State> {
    let mut cur: Option<Vec<usize>> = Some((0..n).collect());
    std::iter::from_fn(move || {
        let out = cur.take()?;
        let mut next = out.clone();
        if next_permutation(&mut next) {
            cur = Some(next);
        }
        Some(State { perm: out })
    })
}

/// `2·J(A, B) = I(A, B) + I(B, A)` on doubled integer coordinates.
pub fn j2(a: &[(i64, i64)], b: &[(i64, i64)]) -> i64 {
    let mut s = 0;
    for &(ax, ay) in a {
        for &(bx, by) in b {
            if (ax < bx && ay < by) || (bx < ax && by < ay) {
                s += 1;
            }
        }
    }
    s
}

/// The J-pairing on arbitrary rational points.
pub fn j_pairing(a: &[(Q, Q)], b: &[(Q, Q)]) -> Q {
    let mut s = 0i64;
    for (ax, ay) in a {
        for (bx, by) in b {
            if (ax < bx && ay < by) || (bx < ax && by < ay) {
                s += 1;
            }
        }
    }
    Q::new(s, 2)
}

/// Doubled coordinates of a state on the planar diagram cut at `pd.cut`.
pub fn planar_state(pd: &PlanarDiagram, x: &State) -> Vec<(i64, i64)> {
    let n = pd.n;
    let (r0, c0) = pd.cut;
    x.points()
        .map(|(c, r)| {
            let cc = (c + n - c0 % n) % n;
            let rr = (r + n - r0 % n) % n;
            (2 * cc as i64, 2 * rr as i64)
        })
        .collect()
}

pub fn maslov(pd: &PlanarDiagram, x: &State) -> i64 {
    let xs = planar_state(pd, x);
    let os: Vec<(i64, i64)> = pd.o.iter().map(|&(p, _)| p).collect();
    let twice = j2(&xs, &xs) - 2 * j2(&xs, &os) + j2(&os, &os);
    debug_assert!(twice % 2 == 0);
    twice / 2 + 1
}

/// Twice the raw Alexander grading `J(x, X − Σ m_i O_i)`.
pub fn alexander_raw2(pd: &PlanarDiagram, x: &State) -> i64 {
    let xs = planar_state(pd, x);
    let mut s = j2(&xs, &pd.x);
    for &(p, m) in &pd.o {
        s -= m as i64 * j2(&xs, &[p]);
    }
    s
}

pub fn alexander_raw(pd: &PlanarDiagram, x: &State) -> Q {
    Q::new(alexander_raw2(pd, x), 2)
}

/// Marking contents of a toroidal rectangle.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Contents {
    pub xcount: u32,
    pub ocount: u32,
    /// bit `i` set iff `O_i` lies inside
    pub omask: u32,
    /// `Σ m_i` over the O's inside
    pub sum_m: u32,
    /// some O* lies inside
    pub has_star: bool,
}

/// A rectangle on the torus: cells `row0 .. row0+height`, `col0 .. col0+width` (cyclically).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Rectangle {
    pub row0: usize,
    pub height: usize,
    pub col0: usize,
    pub width: usize,
    pub contents: Contents,
}

/// Contents of every `(row0, height, col0, width)` rectangle.
#[derive(Clone, Debug)]
pub struct RectTable {
    n: usize,
    table: Vec<Contents>,
}

impl RectTable {
    pub fn new(g: &GridDiagram) -> Self {
        let n = g.n();
        let w = g.weights();
        let mut table = vec![Contents::default(); n * n * n * n];
        for r0 in 0..n {
            for c0 in 0..n {
                // grow one row at a time
                let mut colsum = vec![Contents::default(); n];
                for h in 1..n {
                    let r = (r0 + h - 1) % n;
                    for dc in 0..n {
                        let c = (c0 + dc) % n;
                        let cell = g.cell(r, c);
                        let s = &mut colsum[dc];
                        if cell.has_x() {
                            s.xcount += 1;
                        }
                        if cell.has_o() {
                            s.ocount += 1;
                            s.omask |= 1 << r;
                            s.sum_m += w[r];
                            s.has_star |= cell.is_star();
                        }
                    }
                    let mut acc = Contents::default();
                    for wd in 1..n {
                        let s = colsum[wd - 1];
                        acc.xcount += s.xcount;
                        acc.ocount += s.ocount;
                        acc.omask |= s.omask;
                        acc.sum_m += s.sum_m;
                        acc.has_star |= s.has_star;
                        table[((r0 * n + h) * n + c0) * n + wd] = acc;
                    }
                }
            }
        }
        RectTable { n, table }
    }

    pub fn get(&self, row0: usize, height: usize, col0: usize, width: usize) -> Contents {
        let n = self.n;
        self.table[((row0 * n + height) * n + col0) * n + width]
    }
}

/// Empty rectangles starting at `x`, with the swapped rows `(i, j)` that
/// produce the target: the target agrees with `x` except `y[i] = x[j]`,
/// `y[j] = x[i]`.
pub fn empty_rectangles_from(table: &RectTable, x: &[u8], mut f: impl FnMut(usize, usize, Rectangle)) {
    let n = x.len();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let h = (j + n - i) % n;
            let (ci, cj) = (x[i] as usize, x[j] as usize);
            let w = (cj + n - ci) % n;
            let mut empty = true;
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                let dr = (k + n - i) % n;
                let dc = (x[k] as usize + n - ci) % n;
                if dr > 0 && dr < h && dc > 0 && dc < w {
                    empty = false;
                    break;
                }
            }
            if empty {
                let rect = Rectangle { row0: i, height: h, col0: ci, width: w, contents: table.get(i, h, ci, w) };
                f(i, j, rect);
            }
        }
    }
}

/// Empty rectangles from `x` to `y` (none unless they differ in exactly two points).
pub fn empty_rectangles(g: &GridDiagram, x: &State, y: &State) -> Vec<Rectangle> {
    let diff: Vec<usize> = (0..x.n()).filter(|&r| x.perm[r] != y.perm[r]).collect();
    if diff.len() != 2 {
        return Vec::new();
    }
    let table = RectTable::new(g);
    let xs: Vec<u8> = x.perm.iter().map(|&c| c as u8).collect();
    let mut out = Vec::new();
    empty_rectangles_from(&table, &xs, |i, j, r| {
        if (i == diff[0] && j == diff[1]) || (i == diff[1] && j == diff[0]) {
            out.push(r);
        }
    });
    out
}

/// All states of a diagram with their raw gradings, laid out for fast
/// rectangle enumeration.
#[derive(Clone, Debug)]
pub struct PreparedDiagram {
    pub n: usize,
    pub weights: Vec<u32>,
    pub star_mask: u32,
    /// flattened permutations, `n` bytes per state, lexicographic order
    pub perms: Vec<u8>,
    pub maslov: Vec<i64>,
    /// doubled raw Alexander grading
    pub alex2: Vec<i64>,
    pub table: RectTable,
}

impl PreparedDiagram {
    pub fn new(g: &GridDiagram) -> Self {
        use rayon::prelude::*;
        let n = g.n();
        let pd = g.planar_realization((0, 0));
        let states: Vec<State> = enumerate_states(n).collect();
        let graded: Vec<(i64, i64)> = states.par_iter().map(|x| (maslov(&pd, x), alexander_raw2(&pd, x))).collect();
        let perms = states.iter().flat_map(|s| s.perm.iter().map(|&c| c as u8)).collect();
        let star_mask = g.star_rows().into_iter().fold(0u32, |m, r| m | 1 << r);
        PreparedDiagram {
            n,
            weights: g.weights(),
            star_mask,
            perms,
            maslov: graded.iter().map(|p| p.0).collect(),
            alex2: graded.iter().map(|p| p.1).collect(),
            table: RectTable::new(g),
        }
    }

    pub fn len(&self) -> usize {
        self.maslov.len()
    }
    pub fn is_empty(&self) -> bool {
        self.maslov.is_empty()
    }
    pub fn perm(&self, idx: usize) -> &[u8] {
        &self.perms[idx * self.n..(idx + 1) * self.n]
    }
    pub fn state(&self, idx: usize) -> State {
        State { perm: self.perm(idx).iter().map(|&c| c as usize).collect() }
    }

    /// Calls `f(target index, rectangle)` for every empty rectangle out of `idx`.
    pub fn for_each_rect(&self, idx: usize, mut f: impl FnMut(usize, Rectangle)) {
        let x = self.perm(idx);
        let mut y = x.to_vec();
        empty_rectangles_from(&self.table, x, |i, j, r| {
            y.swap(i, j);
            let target = rank_perm_u8(&y);
            y.swap(i, j);
            f(target, r);
        });
    }
}

fn rank_perm_u8(p: &[u8]) -> usize {
    let n = p.len();
    let mut used = 0u32;
    let mut rank = 0;
    for (i, &v) in p.iter().enumerate() {
        let below = (used & ((1u32 << v) - 1)).count_ones() as usize;
        rank += (v as usize - below) * factorial(n - 1 - i);
        used |= 1 << v;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Q {
        Q::new(a, b)
    }

    #[test]
    fn state_counts() {
        assert_eq!(enumerate_states(2).map(|s| s.perm).collect::<Vec<_>>(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(enumerate_states(3).count(), 6);
        assert_eq!(enumerate_states(5).count(), 120);
        for (i, s) in enumerate_states(4).enumerate() {
            assert_eq!(s.index(), i);
        }
    }

    #[test]
    fn pairing_examples() {
        let p = |a: i64, b: i64| (q(a, 2), q(b, 2));
        assert_eq!(j_pairing(&[p(2, 4)], &[p(4, 6)]), q(1, 2));
        assert_eq!(j_pairing(&[p(0, 0), p(2, 2)], &[p(0, 0), p(2, 2)]), q(1, 1));
        assert_eq!(j_pairing(&[p(0, 0), p(2, 2)], &[p(1, 1), p(3, 3)]), q(2, 1));
    }

    #[test]
    fn unknot_gradings() {
        let g = GridDiagram::parse("n=2 mode=link\nX,O\nO*,X\n").unwrap();
        let pd = g.planar_realization((0, 0));
        let x1 = State::new(vec![0, 1]);
        let x2 = State::new(vec![1, 0]);
        assert_eq!(maslov(&pd, &x2), 0);
        assert_eq!(maslov(&pd, &x1), -1);
        assert_eq!(alexander_raw(&pd, &x2), q(0, 1));
        assert_eq!(alexander_raw(&pd, &x1), q(-1, 1));
    }

    #[test]
    fn unknot_rectangles() {
        let g = GridDiagram::parse("n=2 mode=link\nX,O\nO*,X\n").unwrap();
        let x1 = State::new(vec![0, 1]);
        let x2 = State::new(vec![1, 0]);
        assert!(empty_rectangles(&g, &x1, &x1).is_empty());
        let down = empty_rectangles(&g, &x2, &x1);
        assert_eq!(down.len(), 2);
        assert!(down.iter().all(|r| r.contents.xcount == 1 && r.contents.ocount == 0));
        let up = empty_rectangles(&g, &x1, &x2);
        assert_eq!(up.len(), 2);
        assert!(up.iter().all(|r| r.contents.xcount == 0 && r.contents.ocount == 1));
    }

    #[test]
    fn planar_cut() {
        let g = GridDiagram::parse("n=2 mode=link\nX,O\nO*,X\n").unwrap();
        let pd = g.planar_realization((0, 0));
        let mut o = pd.o_points();
        o.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(o, vec![(0.5, 0.5), (1.5, 1.5)]);
        let mut x = pd.x_points();
        x.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(x, vec![(0.5, 1.5), (1.5, 0.5)]);
    }
}
