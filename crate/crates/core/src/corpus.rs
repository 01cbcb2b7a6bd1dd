//! Bundled diagrams and the move sequences relating them.

use crate::diagram::{GridDiagram, MoveDescriptor};
use crate::error::{GridError, Result};

macro_rules! corpus {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../corpus/", $name, ".grid")))),*]
    };
}

pub const FILES: &[(&str, &str)] = corpus![
    "unknot1",
    "unknot2",
    "unknot3",
    "trefoil5",
    "trefoil6",
    "trefoil5_cyc",
    "trefoil6_comm",
    "figure8",
    "figure8_cyc",
    "theta3",
    "theta_stab",
    "theta_cyc",
    "theta_wedge",
    "unlink2",
    "unknot_trefoil",
    "trefoil_birth",
];

pub fn text(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn load(name: &str) -> Result<GridDiagram> {
    let t = text(name).ok_or_else(|| GridError::Unsupported(format!("no corpus diagram named {name}")))?;
    GridDiagram::parse(t)
}

pub fn all() -> Vec<(&'static str, GridDiagram)> {
    FILES.iter().map(|(n, t)| (*n, GridDiagram::parse(t).expect("bundled diagram parses"))).collect()
}

/// A recorded move sequence taking one corpus diagram to another.
#[derive(Clone, Copy, Debug)]
pub struct MovePair {
    pub from: &'static str,
    pub moves: &'static str,
    pub to: &'static str,
}

pub const MOVE_PAIRS: &[MovePair] = &[
    MovePair { from: "unknot1", moves: "stab 0 0", to: "unknot2" },
    MovePair { from: "unknot2", moves: "stab 0 1", to: "unknot3" },
    MovePair { from: "trefoil5", moves: "stab 0 2", to: "trefoil6" },
    MovePair { from: "trefoil5", moves: "cyc col 2", to: "trefoil5_cyc" },
    MovePair { from: "trefoil6", moves: "comm col 3", to: "trefoil6_comm" },
    MovePair { from: "figure8", moves: "cyc row 1", to: "figure8_cyc" },
    MovePair { from: "theta3", moves: "stab 0 1", to: "theta_stab" },
    MovePair { from: "theta3", moves: "cyc row 1", to: "theta_cyc" },
];

/// Pairs that are a single stabilization′ apart.
pub fn stabilization_pairs() -> Vec<MovePair> {
    MOVE_PAIRS.iter().copied().filter(|p| p.moves.starts_with("stab") && !p.moves.contains('\n')).collect()
}

/// Presentations of the same object, grouped.
pub const PRESENTATIONS: &[(&str, &[&str])] = &[
    ("unknot", &["unknot1", "unknot2", "unknot3"]),
    ("trefoil", &["trefoil5", "trefoil6", "trefoil5_cyc", "trefoil6_comm"]),
    ("figure8", &["figure8", "figure8_cyc"]),
    ("theta", &["theta3", "theta_stab", "theta_cyc"]),
    ("unknot+trefoil", &["unknot_trefoil", "trefoil_birth"]),
];

/// Applies every move in turn, re-validating at each step.
pub fn replay(g: &GridDiagram, moves: &[MoveDescriptor]) -> Result<GridDiagram> {
    let mut cur = g.clone();
    for m in moves {
        cur = cur.apply_move(m)?;
    }
    Ok(cur)
}

impl MovePair {
    pub fn replay(&self) -> Result<(GridDiagram, GridDiagram)> {
        let a = load(self.from)?;
        let b = load(self.to)?;
        let got = replay(&a, &MoveDescriptor::parse_sequence(self.moves)?)?;
        if got != b {
            return Err(GridError::IllegalMove(format!("replaying {} does not give {}", self.from, self.to)));
        }
        Ok((a, b))
    }
}
