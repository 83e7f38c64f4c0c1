use std::fmt;

use super::quote::key_of;
use super::Neutral;
use crate::levels::{self, Level, StructureId};
use crate::syntax::{RcTm, Tm};

/// A level value in max-plus normal form: `max(floor, n₁+k₁, …, nₘ+kₘ)`.
///
/// Operands are sorted by key and deduplicated (keeping the larger
/// successor count); a finite floor dominated by some `kᵢ` is dropped to
/// zero, so `lzero` is absorbed and `lsup` is idempotent, commutative and
/// associative on the nose.
#[derive(Clone)]
pub struct LevelValue {
    floor: Level,
    atoms: Vec<LevelAtom>,
}

#[derive(Clone)]
pub struct LevelAtom {
    pub neutral: Neutral,
    pub succs: u64,
    key: RcTm,
}

/// The three shapes a level value can take.
pub enum LevelView<'a> {
    Closed(Level),
    /// A neutral with `succs` successors on top.
    Neutral(&'a Neutral, u64),
    /// A supremum with at least two operands.
    Sup(Level, &'a [LevelAtom]),
}

impl LevelValue {
    pub fn closed(level: Level) -> LevelValue {
        LevelValue {
            floor: level,
            atoms: Vec::new(),
        }
    }

    pub fn zero() -> LevelValue {
        LevelValue::closed(Level::ZERO)
    }

    pub fn neutral(neutral: Neutral) -> LevelValue {
        let key = key_of(&neutral).rc();
        LevelValue {
            floor: Level::ZERO,
            atoms: vec![LevelAtom {
                neutral,
                succs: 0,
                key,
            }],
        }
    }

    pub fn as_closed(&self) -> Option<Level> {
        self.atoms.is_empty().then_some(self.floor)
    }

    pub fn as_bare_neutral(&self) -> Option<&Neutral> {
        match self.view() {
            LevelView::Neutral(n, 0) => Some(n),
            _ => None,
        }
    }

    pub fn view(&self) -> LevelView<'_> {
        match (self.atoms.as_slice(), self.floor == Level::ZERO) {
            ([], _) => LevelView::Closed(self.floor),
            ([atom], true) => LevelView::Neutral(&atom.neutral, atom.succs),
            (atoms, _) => LevelView::Sup(self.floor, atoms),
        }
    }

    pub fn floor(&self) -> Level {
        self.floor
    }

    pub fn atoms(&self) -> &[LevelAtom] {
        &self.atoms
    }

    pub fn succ(&self, structure: StructureId) -> LevelValue {
        let mut out = LevelValue {
            floor: self.floor.succ(structure),
            atoms: self.atoms.clone(),
        };
        for atom in &mut out.atoms {
            atom.succs += 1;
        }
        out.normalize();
        out
    }

    pub fn sup(&self, other: &LevelValue) -> LevelValue {
        let mut out = LevelValue {
            floor: levels::sup(self.floor, other.floor),
            atoms: self.atoms.iter().chain(&other.atoms).cloned().collect(),
        };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        self.atoms.sort_by(|a, b| a.key.cmp(&b.key).then(b.succs.cmp(&a.succs)));
        self.atoms.dedup_by(|later, earlier| later.key == earlier.key);
        if self.floor.is_finite()
            && self.atoms.iter().any(|a| a.succs >= self.floor.offset)
        {
            self.floor = Level::ZERO;
        }
    }

    /// Whether the variable with de Bruijn level `var` occurs in this level.
    pub fn mentions_var(&self, var: usize) -> bool {
        self.atoms.iter().any(|a| {
            a.key
                .any(&mut |t| matches!(t, Tm::Global(g, name) if *g == var && name.is_empty()))
        })
    }

    /// Decides `self < other` when both are closed.
    pub fn closed_lt(&self, other: &LevelValue) -> Option<bool> {
        Some(levels::lt(self.as_closed()?, other.as_closed()?))
    }
}

impl PartialEq for LevelValue {
    fn eq(&self, other: &LevelValue) -> bool {
        self.floor == other.floor
            && self.atoms.len() == other.atoms.len()
            && self
                .atoms
                .iter()
                .zip(&other.atoms)
                .all(|(a, b)| a.succs == b.succs && a.key == b.key)
    }
}

impl Eq for LevelValue {}

impl PartialEq for LevelAtom {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key && self.succs == other.succs
    }
}

impl fmt::Debug for LevelValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.view() {
            LevelView::Closed(l) => write!(f, "Closed({}, {})", l.block, l.offset),
            _ => f
                .debug_struct("LevelValue")
                .field("floor", &self.floor)
                .field("atoms", &self.atoms)
                .finish(),
        }
    }
}

impl fmt::Debug for LevelAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + {}", self.key, self.succs)
    }
}
