//! Toroidal grid diagrams and the grid moves between them.
//!
//! Cells are addressed as `(row, col)` with row 0 at the bottom and column 0 at
//! the left; the state/lattice point `(col, row)` sits at the south-west corner
//! of cell `(row, col)`. Every row carries exactly one O-type marking, and that
//! marking's label is its row index.

use crate::error::{Condition, GridError, Result};
use std::fmt::{self, Write as _};

/// Largest supported grid size (monomials pack one exponent byte per O).
pub const MAX_N: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug)]
pub struct Cell(u8);

impl Cell {
    const XB: u8 = 1;
    const OB: u8 = 2;
    const SB: u8 = 4;

    pub const EMPTY: Cell = Cell(0);
    pub const X: Cell = Cell(Self::XB);
    pub const O: Cell = Cell(Self::OB);
    pub const OSTAR: Cell = Cell(Self::OB | Self::SB);
    pub const XO: Cell = Cell(Self::XB | Self::OB);
    pub const XOSTAR: Cell = Cell(Self::XB | Self::OB | Self::SB);

    pub fn has_x(self) -> bool {
        self.0 & Self::XB != 0
    }
    pub fn has_o(self) -> bool {
        self.0 & Self::OB != 0
    }
    pub fn is_star(self) -> bool {
        self.0 & Self::SB != 0
    }
    pub fn is_shared(self) -> bool {
        self.has_x() && self.has_o()
    }

    pub fn token(self) -> &'static str {
        match self.0 {
            0 => ".",
            1 => "X",
            2 => "O",
            6 => "O*",
            3 => "XO",
            7 => "XO*",
            _ => unreachable!("cell bits are only built from the constants"),
        }
    }

    fn from_token(tok: &str) -> Option<Cell> {
        Some(match tok {
            "." => Cell::EMPTY,
            "X" => Cell::X,
            "O" => Cell::O,
            "O*" => Cell::OSTAR,
            "XO" => Cell::XO,
            "XO*" => Cell::XOSTAR,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Mode {
    Graph,
    Link,
    Extended,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Graph => "graph",
            Mode::Link => "link",
            Mode::Extended => "extended",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Axis {
    Row,
    Col,
}

/// A grid move. Positions always refer to the diagram the move is applied to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum MoveDescriptor {
    /// Row `r` (column `c`) goes to `(r + shift) mod n`.
    CyclicPermutation { axis: Axis, shift: usize },
    /// Swap line `index` with line `index + 1 (mod n)`.
    CommutationPrime { axis: Axis, index: usize },
    /// Stabilize at the X in cell `(row, col)`.
    StabilizationPrime { row: usize, col: usize },
    /// Remove the new O sitting at `(row, col)`.
    DestabilizationPrime { row: usize, col: usize },
    /// Insert a row and a column at these indices with an `XO*` cell at the crossing.
    Birth { row: usize, col: usize },
    /// Remove the isolated shared cell at `(row, col)`.
    Death { row: usize, col: usize },
    /// 2×2 block with lower-left cell `(row, col)`.
    XSaddle { row: usize, col: usize },
    OSaddle { row: usize, col: usize },
}

/// Positional data of a stabilization′: the lattice point `c` and the cells of
/// the four labelled markings in the bigger diagram.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct StabilizationData {
    /// `(col, row)` lattice coordinates of the new intersection point.
    pub c: (usize, usize),
    pub o1: (usize, usize),
    pub o2: (usize, usize),
    pub x1: (usize, usize),
    pub x2: (usize, usize),
    /// Row of the inserted row / column of the inserted column.
    pub new_row: usize,
    pub new_col: usize,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GridDiagram {
    n: usize,
    mode: Mode,
    cells: Vec<Cell>,
}

/// Marking coordinates after cutting the torus; coordinates are doubled so
/// that markings sit at odd and lattice points at even integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarDiagram {
    pub n: usize,
    pub cut: (usize, usize),
    /// `(x, y)` doubled coordinates and weight `m_i` of each O, indexed by label.
    pub o: Vec<((i64, i64), u32)>,
    pub x: Vec<(i64, i64)>,
}

impl PlanarDiagram {
    /// Real coordinates of the O's, as `(x, y)` floats (for display only).
    pub fn o_points(&self) -> Vec<(f64, f64)> {
        self.o.iter().map(|&((a, b), _)| (a as f64 / 2.0, b as f64 / 2.0)).collect()
    }
    pub fn x_points(&self) -> Vec<(f64, f64)> {
        self.x.iter().map(|&(a, b)| (a as f64 / 2.0, b as f64 / 2.0)).collect()
    }
}

impl GridDiagram {
    /// Builds and validates a diagram from rows listed bottom (row 0) to top.
    pub fn from_rows(mode: Mode, rows: Vec<Vec<Cell>>) -> Result<Self> {
        let n = rows.len();
        let mut cells = Vec::with_capacity(n * n);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(GridError::Syntax {
                    line: 0,
                    col: 0,
                    msg: format!("row {r} has {} cells, expected {n}", row.len()),
                });
            }
            cells.extend(row);
        }
        let g = GridDiagram { n, mode, cells };
        g.validate()?;
        Ok(g)
    }

    /// Link diagram from the column of the O and of the X in each row.
    pub fn from_perms(o: &[usize], x: &[usize], stars: &[usize]) -> Result<Self> {
        let n = o.len();
        let mut rows = vec![vec![Cell::EMPTY; n]; n];
        for r in 0..n {
            rows[r][o[r]] = if stars.contains(&r) { Cell::OSTAR } else { Cell::O };
            let cur = rows[r][x[r]];
            rows[r][x[r]] = Cell(cur.0 | Cell::XB);
        }
        let mode = if rows.iter().flatten().any(|c| c.is_shared()) { Mode::Extended } else { Mode::Link };
        Self::from_rows(mode, rows)
    }

    fn from_cells_inferred(n: usize, cells: Vec<Cell>) -> Result<Self> {
        let mut g = GridDiagram { n, mode: Mode::Graph, cells };
        g.mode = g.inferred_mode();
        g.validate()?;
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn mode(&self) -> Mode {
        self.mode
    }
    pub fn cell(&self, row: usize, col: usize) -> Cell {
        self.cells[row * self.n + col]
    }

    /// The mode the markings call for: extended if any square is shared, link
    /// if the X's form a permutation, graph otherwise.
    pub fn inferred_mode(&self) -> Mode {
        if self.cells.iter().any(|c| c.is_shared()) {
            Mode::Extended
        } else if (0..self.n).all(|i| self.row_x_count(i) == 1 && self.col_x_count(i) == 1) {
            Mode::Link
        } else {
            Mode::Graph
        }
    }

    pub fn row_x_count(&self, r: usize) -> usize {
        (0..self.n).filter(|&c| self.cell(r, c).has_x()).count()
    }
    pub fn col_x_count(&self, c: usize) -> usize {
        (0..self.n).filter(|&r| self.cell(r, c).has_x()).count()
    }

    /// Column of the O-type marking in row `r`.
    pub fn o_col(&self, r: usize) -> usize {
        (0..self.n).find(|&c| self.cell(r, c).has_o()).expect("validated diagram")
    }
    /// Row of the O-type marking in column `c`.
    pub fn o_row(&self, c: usize) -> usize {
        (0..self.n).find(|&r| self.cell(r, c).has_o()).expect("validated diagram")
    }
    pub fn is_star(&self, r: usize) -> bool {
        self.cell(r, self.o_col(r)).is_star()
    }
    pub fn star_rows(&self) -> Vec<usize> {
        (0..self.n).filter(|&r| self.is_star(r)).collect()
    }
    /// The weights `m_i`: number of X's in the row of `O_i`.
    pub fn weights(&self) -> Vec<u32> {
        (0..self.n).map(|r| self.row_x_count(r) as u32).collect()
    }
    pub fn max_weight(&self) -> u32 {
        self.weights().into_iter().max().unwrap_or(1)
    }
    pub fn x_positions(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for r in 0..self.n {
            for c in 0..self.n {
                if self.cell(r, c).has_x() {
                    v.push((r, c));
                }
            }
        }
        v
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        if n == 0 || n > MAX_N {
            return Err(GridError::Unsupported(format!("grid size {n} outside 1..={MAX_N}")));
        }
        let cond = |cond, axis, index, detail: String| Err(GridError::Condition { cond, axis, index, detail });
        for r in 0..n {
            let k = (0..n).filter(|&c| self.cell(r, c).has_o()).count();
            if k != 1 {
                return cond(Condition::I, "row", r, format!("{k} O-markings"));
            }
        }
        for c in 0..n {
            let k = (0..n).filter(|&r| self.cell(r, c).has_o()).count();
            if k != 1 {
                return cond(Condition::I, "column", c, format!("{k} O-markings"));
            }
        }
        for i in 0..n {
            if self.row_x_count(i) == 0 {
                return cond(Condition::II, "row", i, "no X-marking".into());
            }
            if self.col_x_count(i) == 0 {
                return cond(Condition::II, "column", i, "no X-marking".into());
            }
        }
        for r in 0..n {
            for c in 0..n {
                let cell = self.cell(r, c);
                if !cell.is_shared() {
                    continue;
                }
                if self.mode != Mode::Extended {
                    return cond(Condition::III, "row", r, format!("cell ({r},{c}) holds both O and X"));
                }
                if self.row_x_count(r) != 1 || self.col_x_count(c) != 1 {
                    return cond(
                        Condition::III,
                        "row",
                        r,
                        format!("shared cell ({r},{c}) must be the only X in its row and column"),
                    );
                }
            }
        }
        if self.mode == Mode::Link {
            for i in 0..n {
                if self.row_x_count(i) != 1 {
                    return cond(Condition::II, "row", i, "link mode needs exactly one X".into());
                }
                if self.col_x_count(i) != 1 {
                    return cond(Condition::II, "column", i, "link mode needs exactly one X".into());
                }
            }
        }
        Ok(())
    }

    /// Why the diagram fails to be balanced, if it does.
    pub fn balance_violation(&self) -> Option<String> {
        for r in 0..self.n {
            let c = self.o_col(r);
            let (rx, cx) = (self.row_x_count(r), self.col_x_count(c));
            if self.is_star(r) {
                if rx != cx {
                    return Some(format!("O* at ({r},{c}): {rx} X's in its row, {cx} in its column"));
                }
            } else if rx != 1 || cx != 1 {
                return Some(format!("O at ({r},{c}) must see exactly one X in its row and column"));
            }
        }
        None
    }

    pub fn is_balanced(&self) -> bool {
        self.balance_violation().is_none()
    }

    /// Component index of every O label; each X joins the O of its row to the
    /// O of its column.
    pub fn component_of(&self) -> Vec<usize> {
        let n = self.n;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        for (r, c) in self.x_positions() {
            let a = find(&mut parent, r);
            let b = find(&mut parent, self.o_row(c));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut ids = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut next = 0;
        for r in 0..n {
            let root = find(&mut parent, r);
            if ids[root] == usize::MAX {
                ids[root] = next;
                next += 1;
            }
            out[r] = ids[root];
        }
        out
    }

    /// Number of connected components of the underlying graph (`l`).
    pub fn components(&self) -> usize {
        self.component_of().into_iter().max().map_or(0, |m| m + 1)
    }

    /// Every component carries at least one O*.
    pub fn every_component_starred(&self) -> bool {
        let comp = self.component_of();
        let mut seen = vec![false; self.components()];
        for r in self.star_rows() {
            seen[comp[r]] = true;
        }
        seen.into_iter().all(|s| s)
    }

    /// A link diagram (possibly extended) with exactly one O* per component.
    /// One X in every row and column.
    pub fn is_link_diagram(&self) -> bool {
        (0..self.n).all(|i| self.row_x_count(i) == 1 && self.col_x_count(i) == 1)
    }

    pub fn is_tight_link(&self) -> bool {
        if !self.is_link_diagram() {
            return false;
        }
        let comp = self.component_of();
        let mut count = vec![0usize; self.components()];
        for r in self.star_rows() {
            count[comp[r]] += 1;
        }
        count.into_iter().all(|k| k == 1)
    }

    /// Writhe of a link diagram, vertical strands passing over horizontal
    /// ones; horizontal strands run O→X, vertical ones X→O.
    pub fn writhe(&self) -> Option<i32> {
        let n = self.n;
        if (0..n).any(|i| self.row_x_count(i) != 1 || self.col_x_count(i) != 1) {
            return None;
        }
        let xcol: Vec<usize> = (0..n).map(|r| (0..n).find(|&c| self.cell(r, c).has_x()).unwrap()).collect();
        let xrow: Vec<usize> = (0..n).map(|c| (0..n).find(|&r| self.cell(r, c).has_x()).unwrap()).collect();
        let mut w = 0i32;
        for c in 0..n {
            let (x_r, o_r) = (xrow[c], self.o_row(c));
            if x_r == o_r {
                continue;
            }
            let up = if o_r > x_r { 1 } else { -1 };
            let (lo, hi) = (x_r.min(o_r), x_r.max(o_r));
            for r in lo + 1..hi {
                let (o_c, x_c) = (self.o_col(r), xcol[r]);
                if o_c == x_c {
                    continue;
                }
                let (l, h) = (o_c.min(x_c), o_c.max(x_c));
                if l < c && c < h {
                    let right = if x_c > o_c { 1 } else { -1 };
                    w += -up * right;
                }
            }
        }
        Some(w)
    }

    pub fn planar_realization(&self, cut: (usize, usize)) -> PlanarDiagram {
        let n = self.n;
        let (r0, c0) = cut;
        let w = self.weights();
        let place = |r: usize, c: usize| {
            let rr = (r + n - r0 % n) % n;
            let cc = (c + n - c0 % n) % n;
            (2 * cc as i64 + 1, 2 * rr as i64 + 1)
        };
        let o = (0..n).map(|r| (place(r, self.o_col(r)), w[r])).collect();
        let x = self.x_positions().into_iter().map(|(r, c)| place(r, c)).collect();
        PlanarDiagram { n, cut, o, x }
    }

    fn map_cells(&self, m: usize, f: impl Fn(usize, usize) -> Option<(usize, usize)>) -> Vec<Cell> {
        let mut out = vec![Cell::EMPTY; m * m];
        for r in 0..self.n {
            for c in 0..self.n {
                if let Some((rr, cc)) = f(r, c) {
                    out[rr * m + cc] = self.cell(r, c);
                }
            }
        }
        out
    }

    fn transpose(&self) -> GridDiagram {
        let n = self.n;
        let mut cells = vec![Cell::EMPTY; n * n];
        for r in 0..n {
            for c in 0..n {
                cells[c * n + r] = self.cell(r, c);
            }
        }
        GridDiagram { n, mode: self.mode, cells }
    }

    /// Rows occupied by markings of column `c`.
    fn column_rows(&self, c: usize) -> Vec<usize> {
        (0..self.n).filter(|&r| self.cell(r, c) != Cell::EMPTY).collect()
    }

    /// Whether columns `a` and `b` can be swapped by a commutation′.
    pub fn columns_commute(&self, a: usize, b: usize) -> bool {
        let n = self.n;
        let (ra, rb) = (self.column_rows(a), self.column_rows(b));
        // cyclic half-open arc [h1, h2) of cell rows
        let inside = |r: usize, h1: usize, h2: usize| (r + n - h1) % n < (h2 + n - h1) % n;
        for h1 in 0..n {
            for h2 in 0..n {
                if h1 == h2 {
                    continue;
                }
                if ra.iter().all(|&r| inside(r, h1, h2)) && rb.iter().all(|&r| inside(r, h2, h1)) {
                    return true;
                }
            }
        }
        false
    }

    pub fn apply_move(&self, m: &MoveDescriptor) -> Result<GridDiagram> {
        let n = self.n;
        match *m {
            MoveDescriptor::CyclicPermutation { axis, shift } => {
                let s = shift % n;
                let cells = match axis {
                    Axis::Row => self.map_cells(n, |r, c| Some(((r + s) % n, c))),
                    Axis::Col => self.map_cells(n, |r, c| Some((r, (c + s) % n))),
                };
                Self::from_cells_inferred(n, cells)
            }
            MoveDescriptor::CommutationPrime { axis, index } => {
                if index >= n || n < 2 {
                    return Err(GridError::IllegalMove(format!("line {index} outside the {n}×{n} grid")));
                }
                let base = if axis == Axis::Row { self.transpose() } else { self.clone() };
                let (a, b) = (index, (index + 1) % n);
                if !base.columns_commute(a, b) {
                    return Err(GridError::IllegalMove(format!(
                        "LS condition violated: markings of lines {a} and {b} interleave"
                    )));
                }
                let cells = base.map_cells(n, |r, c| {
                    Some((r, if c == a { b } else if c == b { a } else { c }))
                });
                let swapped = GridDiagram { n, mode: base.mode, cells };
                let out = if axis == Axis::Row { swapped.transpose() } else { swapped };
                Self::from_cells_inferred(n, out.cells)
            }
            MoveDescriptor::StabilizationPrime { row, col } => self.stabilize(row, col).map(|(g, _)| g),
            MoveDescriptor::DestabilizationPrime { row, col } => self.destabilize(row, col),
            MoveDescriptor::Birth { row, col } => {
                if row > n || col > n {
                    return Err(GridError::IllegalMove(format!("birth position ({row},{col}) outside 0..={n}")));
                }
                if n + 1 > MAX_N {
                    return Err(GridError::Unsupported("grid too large".into()));
                }
                let shift = |i: usize, at: usize| if i >= at { i + 1 } else { i };
                let mut cells = self.map_cells(n + 1, |r, c| Some((shift(r, row), shift(c, col))));
                cells[row * (n + 1) + col] = Cell::XOSTAR;
                Self::from_cells_inferred(n + 1, cells)
            }
            MoveDescriptor::Death { row, col } => {
                if row >= n || col >= n || n < 2 {
                    return Err(GridError::IllegalMove(format!("death position ({row},{col}) invalid")));
                }
                let cell = self.cell(row, col);
                let lonely = (0..n).all(|c| c == col || self.cell(row, c) == Cell::EMPTY)
                    && (0..n).all(|r| r == row || self.cell(r, col) == Cell::EMPTY);
                if !cell.is_shared() || !lonely {
                    return Err(GridError::IllegalMove(format!(
                        "death needs an isolated shared cell at ({row},{col})"
                    )));
                }
                let drop = |i: usize, at: usize| if i > at { Some(i - 1) } else if i < at { Some(i) } else { None };
                let cells = self.map_cells(n - 1, |r, c| Some((drop(r, row)?, drop(c, col)?)));
                Self::from_cells_inferred(n - 1, cells)
            }
            MoveDescriptor::XSaddle { row, col } => self.saddle(row, col, false),
            MoveDescriptor::OSaddle { row, col } => self.saddle(row, col, true),
        }
    }

    /// Stabilization′ at the X in `(row, col)`, returning the labelled positions.
    pub fn stabilize(&self, row: usize, col: usize) -> Result<(GridDiagram, StabilizationData)> {
        let n = self.n;
        if row >= n || col >= n || !self.cell(row, col).has_x() {
            return Err(GridError::IllegalMove(format!("no X-marking at ({row},{col})")));
        }
        if n + 1 > MAX_N {
            return Err(GridError::Unsupported("grid too large".into()));
        }
        let m = n + 1;
        let shift = |i: usize, at: usize| if i > at { i + 1 } else { i };
        let mut cells = self.map_cells(m, |r, c| Some((shift(r, row), shift(c, col))));
        let at = |r: usize, c: usize| r * m + c;
        cells[at(row, col)] = Cell(cells[at(row, col)].0 & !Cell::XB);
        cells[at(row, col + 1)] = Cell::X;
        cells[at(row + 1, col + 1)] = Cell::O;
        cells[at(row + 1, col)] = Cell::X;
        let g = Self::from_cells_inferred(m, cells)?;
        let data = StabilizationData {
            c: (col + 1, row + 1),
            o1: (row + 1, col + 1),
            o2: (row, g.o_col(row)),
            x1: (row + 1, col),
            x2: (row, col + 1),
            new_row: row + 1,
            new_col: col + 1,
        };
        Ok((g, data))
    }

    fn destabilize(&self, row: usize, col: usize) -> Result<GridDiagram> {
        let n = self.n;
        let bad = |why: &str| Err(GridError::IllegalMove(format!("destabilization′ at ({row},{col}): {why}")));
        if row == 0 || col == 0 || row >= n || col >= n || n < 2 {
            return bad("position must satisfy 1 ≤ row, col < n");
        }
        if self.cell(row, col) != Cell::O {
            return bad("no plain O-marking there");
        }
        if self.cell(row, col - 1) != Cell::X || self.cell(row - 1, col) != Cell::X {
            return bad("expected X's to the left and below");
        }
        let row_ok = (0..n).all(|c| c == col || c == col - 1 || self.cell(row, c) == Cell::EMPTY);
        let col_ok = (0..n).all(|r| r == row || r == row - 1 || self.cell(r, col) == Cell::EMPTY);
        if !row_ok || !col_ok || self.cell(row - 1, col - 1).has_x() {
            return bad("row or column carries extra markings");
        }
        let drop = |i: usize, at: usize| if i > at { Some(i - 1) } else if i < at { Some(i) } else { None };
        let m = n - 1;
        let mut cells = self.map_cells(m, |r, c| Some((drop(r, row)?, drop(c, col)?)));
        let at = (row - 1) * m + (col - 1);
        cells[at] = Cell(cells[at].0 | Cell::XB);
        Self::from_cells_inferred(m, cells)
    }

    fn saddle(&self, row: usize, col: usize, o_type: bool) -> Result<GridDiagram> {
        let n = self.n;
        let (r1, c1) = ((row + 1) % n, (col + 1) % n);
        let (tl, tr, bl, br) = (self.cell(r1, col), self.cell(r1, c1), self.cell(row, col), self.cell(row, c1));
        let (want_tl, want_br, put) = if o_type {
            (Cell::OSTAR, Cell::O, Cell::OSTAR)
        } else {
            (Cell::X, Cell::X, Cell::X)
        };
        if n < 2 || row >= n || col >= n || tl != want_tl || br != want_br || tr != Cell::EMPTY || bl != Cell::EMPTY {
            let kind = if o_type { "O" } else { "X" };
            return Err(GridError::IllegalMove(format!(
                "{kind}-saddle block at ({row},{col}) does not have the required pattern"
            )));
        }
        let mut cells = self.cells.clone();
        cells[r1 * n + col] = Cell::EMPTY;
        cells[row * n + c1] = Cell::EMPTY;
        cells[r1 * n + c1] = put;
        cells[row * n + col] = put;
        Self::from_cells_inferred(n, cells)
    }

    /// Attach an unknotted loop at the vertex O* in row `row`.
    pub fn wedge_unknot(&self, row: usize) -> Result<GridDiagram> {
        let n = self.n;
        if row >= n || !self.is_star(row) {
            return Err(GridError::IllegalMove(format!("row {row} carries no O*")));
        }
        if n + 1 > MAX_N {
            return Err(GridError::Unsupported("grid too large".into()));
        }
        let c0 = self.o_col(row);
        let m = n + 1;
        let shift = |i: usize, at: usize| if i > at { i + 1 } else { i };
        let mut cells = self.map_cells(m, |r, c| Some((shift(r, row), shift(c, c0))));
        cells[(row + 1) * m + c0 + 1] = Cell::O;
        cells[(row + 1) * m + c0] = Cell::X;
        cells[row * m + c0 + 1] = Cell::X;
        Self::from_cells_inferred(m, cells)
    }

    /// Block sum: `self` in the lower-left, `other` in the upper-right.
    pub fn disjoint_union(&self, other: &GridDiagram) -> Result<GridDiagram> {
        let (a, b) = (self.n, other.n);
        let m = a + b;
        if m > MAX_N {
            return Err(GridError::Unsupported("grid too large".into()));
        }
        let mut cells = self.map_cells(m, |r, c| Some((r, c)));
        for r in 0..b {
            for c in 0..b {
                cells[(r + a) * m + c + a] = other.cell(r, c);
            }
        }
        Self::from_cells_inferred(m, cells)
    }

    /// Replace every O by O* (or clear the stars) in the given rows.
    pub fn with_stars(&self, rows: &[usize]) -> Result<GridDiagram> {
        let n = self.n;
        let mut cells = self.cells.clone();
        for r in 0..n {
            let c = self.o_col(r);
            let cur = cells[r * n + c];
            cells[r * n + c] = if rows.contains(&r) { Cell(cur.0 | Cell::SB) } else { Cell(cur.0 & !Cell::SB) };
        }
        let g = GridDiagram { n, mode: self.mode, cells };
        g.validate()?;
        Ok(g)
    }

    pub fn serialize(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "n={} mode={}", self.n, self.mode.as_str());
        for r in (0..self.n).rev() {
            let line: Vec<&str> = (0..self.n).map(|c| self.cell(r, c).token()).collect();
            let _ = writeln!(s, "{}", line.join(","));
        }
        s
    }

    pub fn parse(text: &str) -> Result<GridDiagram> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end()));
        let syntax = |line, col, msg: String| GridError::Syntax { line, col, msg };
        let (_, header) = lines.next().ok_or_else(|| syntax(1, 1, "empty input".into()))?;
        let mut n = None;
        let mut mode = None;
        let mut col = 1;
        for word in header.split_whitespace() {
            if let Some(v) = word.strip_prefix("n=") {
                n = Some(v.parse::<usize>().map_err(|_| syntax(1, col, format!("bad size `{v}`")))?);
            } else if let Some(v) = word.strip_prefix("mode=") {
                mode = Some(match v {
                    "graph" => Mode::Graph,
                    "link" => Mode::Link,
                    "extended" => Mode::Extended,
                    _ => return Err(syntax(1, col, format!("unknown mode `{v}`"))),
                });
            } else {
                return Err(syntax(1, col, format!("unexpected `{word}` in header")));
            }
            col += word.len() + 1;
        }
        let n = n.ok_or_else(|| syntax(1, 1, "header lacks n=<int>".into()))?;
        let mode = mode.ok_or_else(|| syntax(1, 1, "header lacks mode=<graph|link|extended>".into()))?;
        if n == 0 || n > MAX_N {
            return Err(syntax(1, 1, format!("size {n} outside 1..={MAX_N}")));
        }
        let mut rows = Vec::with_capacity(n);
        for (lineno, line) in lines.by_ref() {
            if rows.len() == n {
                if line.trim().is_empty() {
                    continue;
                }
                return Err(syntax(lineno, 1, format!("more than {n} rows")));
            }
            let mut row = Vec::with_capacity(n);
            let mut col = 1;
            for tok in line.split(',') {
                let t = tok.trim();
                let cell = Cell::from_token(t).ok_or_else(|| syntax(lineno, col, format!("unknown cell `{t}`")))?;
                row.push(cell);
                col += tok.len() + 1;
            }
            if row.len() != n {
                return Err(syntax(lineno, 1, format!("expected {n} cells, found {}", row.len())));
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(syntax(rows.len() + 2, 1, format!("expected {n} rows, found {}", rows.len())));
        }
        rows.reverse();
        GridDiagram::from_rows(mode, rows)
    }
}

impl fmt::Display for MoveDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ax = |a: Axis| if a == Axis::Row { "row" } else { "col" };
        match *self {
            MoveDescriptor::CyclicPermutation { axis, shift } => write!(f, "cyc {} {shift}", ax(axis)),
            MoveDescriptor::CommutationPrime { axis, index } => write!(f, "comm {} {index}", ax(axis)),
            MoveDescriptor::StabilizationPrime { row, col } => write!(f, "stab {row} {col}"),
            MoveDescriptor::DestabilizationPrime { row, col } => write!(f, "destab {row} {col}"),
            MoveDescriptor::Birth { row, col } => write!(f, "birth {row} {col}"),
            MoveDescriptor::Death { row, col } => write!(f, "death {row} {col}"),
            MoveDescriptor::XSaddle { row, col } => write!(f, "xsaddle {row} {col}"),
            MoveDescriptor::OSaddle { row, col } => write!(f, "osaddle {row} {col}"),
        }
    }
}

impl MoveDescriptor {
    /// Reads one move line such as `stab 0 2` or `cyc col 3`.
    pub fn parse_line(line: &str, lineno: usize) -> Result<MoveDescriptor> {
        let err = |col: usize, msg: String| GridError::Syntax { line: lineno, col, msg };
        let words: Vec<&str> = line.split_whitespace().collect();
        let num = |i: usize| -> Result<usize> {
            let w = words.get(i).ok_or_else(|| err(line.len() + 1, format!("missing argument {i}")))?;
            w.parse().map_err(|_| err(line.find(w).unwrap_or(0) + 1, format!("expected a number, found `{w}`")))
        };
        let axis = |i: usize| -> Result<Axis> {
            match words.get(i) {
                Some(&"row") => Ok(Axis::Row),
                Some(&"col") => Ok(Axis::Col),
                _ => Err(err(1, "expected `row` or `col`".into())),
            }
        };
        let (a, b) = (1, 2);
        let m = match words.first().copied() {
            Some("cyc") => MoveDescriptor::CyclicPermutation { axis: axis(a)?, shift: num(b)? },
            Some("comm") => MoveDescriptor::CommutationPrime { axis: axis(a)?, index: num(b)? },
            Some("stab") => MoveDescriptor::StabilizationPrime { row: num(a)?, col: num(b)? },
            Some("destab") => MoveDescriptor::DestabilizationPrime { row: num(a)?, col: num(b)? },
            Some("birth") => MoveDescriptor::Birth { row: num(a)?, col: num(b)? },
            Some("death") => MoveDescriptor::Death { row: num(a)?, col: num(b)? },
            Some("xsaddle") => MoveDescriptor::XSaddle { row: num(a)?, col: num(b)? },
            Some("osaddle") => MoveDescriptor::OSaddle { row: num(a)?, col: num(b)? },
            Some(w) => return Err(err(1, format!("unknown move `{w}`"))),
            None => return Err(err(1, "empty move".into())),
        };
        if words.len() > 3 {
            return Err(err(1, "too many arguments".into()));
        }
        Ok(m)
    }

    /// One move per line; blank lines and `#` comments are skipped.
    pub fn parse_sequence(text: &str) -> Result<Vec<MoveDescriptor>> {
        text.lines()
            .enumerate()
            .filter_map(|(i, l)| {
                let l = l.split('#').next().unwrap_or("").trim();
                (!l.is_empty()).then(|| MoveDescriptor::parse_line(l, i + 1))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unknot2() -> GridDiagram {
        GridDiagram::parse("n=2 mode=link\nX,O\nO*,X\n").unwrap()
    }

    #[test]
    fn parse_roundtrip() {
        let g = unknot2();
        assert_eq!(g.cell(0, 0), Cell::OSTAR);
        assert_eq!(g.cell(1, 1), Cell::O);
        assert_eq!(GridDiagram::parse(&g.serialize()).unwrap(), g);
        assert_eq!(g.serialize(), "n=2 mode=link\nX,O\nO*,X\n");
    }

    #[test]
    fn two_o_in_a_row() {
        let err = GridDiagram::parse("n=2 mode=graph\nX,X\nO*,O\n").unwrap_err();
        assert!(err.to_string().contains("condition (i)"), "{err}");
    }

    #[test]
    fn syntax_position() {
        let err = GridDiagram::parse("n=2 mode=link\nX,O\nO*,Q\n").unwrap_err();
        match err {
            GridError::Syntax { line, col, .. } => assert_eq!((line, col), (3, 4)),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn cyclic_column_shift_swaps_columns() {
        let g = unknot2();
        let h = g.apply_move(&MoveDescriptor::CyclicPermutation { axis: Axis::Col, shift: 1 }).unwrap();
        for r in 0..2 {
            assert_eq!(h.cell(r, 0), g.cell(r, 1));
            assert_eq!(h.cell(r, 1), g.cell(r, 0));
        }
    }

    #[test]
    fn stabilization_then_destabilization() {
        let g = unknot2();
        let (h, data) = g.stabilize(0, 1).unwrap();
        assert_eq!(h.n(), 3);
        assert!(h.is_balanced());
        assert_eq!(h.cell(data.o1.0, data.o1.1), Cell::O);
        let back = h
            .apply_move(&MoveDescriptor::DestabilizationPrime { row: data.o1.0, col: data.o1.1 })
            .unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn stabilizing_the_one_by_one_unknot() {
        let g = GridDiagram::parse("n=1 mode=extended\nXO*\n").unwrap();
        let (h, _) = g.stabilize(0, 0).unwrap();
        assert_eq!(h, unknot2());
    }

    #[test]
    fn birth_and_death() {
        let g = unknot2();
        let h = g.apply_move(&MoveDescriptor::Birth { row: 2, col: 2 }).unwrap();
        assert_eq!(h.mode(), Mode::Extended);
        assert_eq!(h.cell(2, 2), Cell::XOSTAR);
        assert_eq!(h.components(), 2);
        assert_eq!(h.apply_move(&MoveDescriptor::Death { row: 2, col: 2 }).unwrap(), g);
    }

    #[test]
    fn interleaved_columns_do_not_commute() {
        // columns 0 and 1 hold rows {0,2} and {1,3}
        let g = GridDiagram::from_perms(&[0, 1, 3, 2], &[2, 3, 0, 1], &[0]).unwrap();
        assert!(!g.columns_commute(0, 1));
        let err = g.apply_move(&MoveDescriptor::CommutationPrime { axis: Axis::Col, index: 0 }).unwrap_err();
        assert!(err.to_string().contains("LS condition violated"));
    }

    #[test]
    fn theta_is_balanced() {
        let g = GridDiagram::parse("n=3 mode=graph\nX,.,O\nX,O*,.\nO*,X,X\n").unwrap();
        assert!(g.is_balanced());
        assert_eq!(g.components(), 1);
        assert_eq!(g.max_weight(), 2);
    }
}
