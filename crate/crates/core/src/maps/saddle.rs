//! Saddle maps between t-complexes graded by `A′`: the identity on
//! generators containing the centre of the 2×2 block and a power of `v`
//! elsewhere, or the other way round.

use crate::combinatorics::PreparedDiagram;
use crate::complex::symmetrize::alexander_prime;
use crate::complex::tcomplex::{build_t_complex_with, DvrMatrix, GradedDvrComplex, TParameter};
use crate::diagram::{GridDiagram, MoveDescriptor};
use crate::error::{GridError, Result};
use crate::homology::dvr::{dvr_reduce, ModuleDecomposition};
use crate::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SaddleKind {
    X,
    O,
}

pub struct SaddleMaps {
    pub kind: SaddleKind,
    pub t: TParameter,
    pub before: GridDiagram,
    pub after: GridDiagram,
    /// lattice point at the centre of the block
    pub c: (usize, usize),
    pub src: GradedDvrComplex,
    pub dst: GradedDvrComplex,
    pub sigma: DvrMatrix,
    pub mu: DvrMatrix,
}

impl SaddleMaps {
    /// Maps for the saddle on the 2×2 block whose lower-left cell is
    /// `(row, col)`.
    pub fn build(g: &GridDiagram, row: usize, col: usize, kind: SaddleKind, t: TParameter) -> Result<Self> {
        let mv = match kind {
            SaddleKind::X => MoveDescriptor::XSaddle { row, col },
            SaddleKind::O => MoveDescriptor::OSaddle { row, col },
        };
        let after = g.apply_move(&mv)?;
        let n = g.n();
        let c = ((col + 1) % n, (row + 1) % n);
        let complex = |d: &GridDiagram| -> Result<(PreparedDiagram, GradedDvrComplex)> {
            let prep = PreparedDiagram::new(d);
            let a = alexander_prime(d)?;
            let cx = build_t_complex_with(&prep, t, &a)?;
            Ok((prep, cx))
        };
        let (p1, src) = complex(g)?;
        let (p2, dst) = complex(&after)?;
        if p1.perms != p2.perms {
            return Err(GridError::Invariant("state enumerations differ".into()));
        }
        let e = match kind {
            SaddleKind::X => t.p,
            SaddleKind::O => 2 * t.q - t.p,
        } as u32;
        let has_c = |i: usize| p1.perm(i)[c.1] as usize == c.0;
        let len = src.len();
        let sigma = DvrMatrix { q: t.q, rows: len, cols: (0..len).map(|i| vec![(i, if has_c(i) { 0 } else { e })]).collect() };
        let mu = DvrMatrix { q: t.q, rows: len, cols: (0..len).map(|i| vec![(i, if has_c(i) { e } else { 0 })]).collect() };
        Ok(SaddleMaps { kind, t, before: g.clone(), after, c, src, dst, sigma, mu })
    }

    /// The exponent of `μ∘σ` in units of `w = v^{1/q}`.
    pub fn composite_exponent(&self) -> u32 {
        match self.kind {
            SaddleKind::X => self.t.p as u32,
            SaddleKind::O => (2 * self.t.q - self.t.p) as u32,
        }
    }

    /// The promised t-grading shift of both maps.
    pub fn expected_shift(&self) -> Q {
        let half = self.t.value() / 2;
        match self.kind {
            SaddleKind::X => -half,
            SaddleKind::O => half - 1,
        }
    }

    pub fn check_chain_maps(&self) -> std::result::Result<(), String> {
        let (d, dp) = (self.src.matrix(), self.dst.matrix());
        if dp.compose(&self.sigma) != self.sigma.compose(&d) {
            return Err("∂′σ ≠ σ∂".into());
        }
        if d.compose(&self.mu) != self.mu.compose(&dp) {
            return Err("∂μ ≠ μ∂′".into());
        }
        Ok(())
    }

    pub fn check_compositions(&self) -> std::result::Result<(), String> {
        let s = DvrMatrix::scalar(self.src.len(), self.t.q, self.composite_exponent());
        if self.mu.compose(&self.sigma) != s {
            return Err("μ∘σ is not the expected power of v".into());
        }
        if self.sigma.compose(&self.mu) != s {
            return Err("σ∘μ is not the expected power of v".into());
        }
        Ok(())
    }

    /// Every term of σ and μ shifts the t-grading by [`expected_shift`].
    ///
    /// [`expected_shift`]: SaddleMaps::expected_shift
    pub fn check_shifts(&self) -> std::result::Result<(), String> {
        let want = self.expected_shift();
        let q = self.t.q;
        for (name, m, a, b) in [("σ", &self.sigma, &self.src, &self.dst), ("μ", &self.mu, &self.dst, &self.src)] {
            for (x, col) in m.cols.iter().enumerate() {
                for &(y, k) in col {
                    let got = b.gradings[y] - Q::new(k as i64, q) - a.gradings[x];
                    if got != want {
                        return Err(format!("{name} shifts generator {x} by {got}, expected {want}"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn decompositions(&self) -> Result<(ModuleDecomposition, ModuleDecomposition)> {
        Ok((dvr_reduce(&self.src)?, dvr_reduce(&self.dst)?))
    }

    /// Free ranks agree and the top free gradings differ by at most the
    /// magnitude of the shift.
    pub fn check_persistence(&self) -> Result<std::result::Result<(), String>> {
        let (a, b) = self.decompositions()?;
        if a.free_rank() != b.free_rank() {
            return Ok(Err(format!("free ranks {} and {} differ", a.free_rank(), b.free_rank())));
        }
        let s = self.expected_shift();
        let (ua, ub) = match (a.max_free(), b.max_free()) {
            (Some(x), Some(y)) => (x, y),
            _ => return Ok(Err("no free part".into())),
        };
        if ub < ua + s || ua < ub + s {
            return Ok(Err(format!("top free gradings {ua} and {ub} violate the shift bound {s}")));
        }
        Ok(Ok(()))
    }
}
