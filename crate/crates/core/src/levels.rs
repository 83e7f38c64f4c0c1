//! External level structures.
//!
//! Every shipped structure shares one carrier: a level is a pair
//! `(block, offset)` read as `ω·block + offset`, ordered lexicographically.
//! The structures differ only in which pairs are inhabited.

use std::fmt;

/// The active level structure of a kernel session.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StructureId {
    /// The natural numbers.
    Nat,
    /// `ω + 1`: the finite levels plus a single top level `ω`.
    OmegaPlusOne,
    /// `ω + ω`: two copies of the naturals, the second starting at `ω`.
    OmegaPlusOmega,
}

impl StructureId {
    pub const ALL: [StructureId; 3] = [
        StructureId::Nat,
        StructureId::OmegaPlusOne,
        StructureId::OmegaPlusOmega,
    ];

    /// Name used on the command line.
    pub fn flag_name(self) -> &'static str {
        match self {
            StructureId::Nat => "nat",
            StructureId::OmegaPlusOne => "omega1",
            StructureId::OmegaPlusOmega => "omega-omega",
        }
    }

    pub fn from_flag_name(name: &str) -> Option<StructureId> {
        StructureId::ALL.into_iter().find(|s| s.flag_name() == name)
    }

    pub fn has_omega(self) -> bool {
        !matches!(self, StructureId::Nat)
    }

    /// Whether `lsuc` is strictly inflationary on every level, which is what
    /// makes `ltSucSelf` true.
    pub fn successor_is_strict(self) -> bool {
        !matches!(self, StructureId::OmegaPlusOne)
    }

    /// Whether `level` is an element of this structure.
    pub fn contains(self, level: Level) -> bool {
        match self {
            StructureId::Nat => level.block == 0,
            StructureId::OmegaPlusOne => {
                level.block == 0 || (level.block == 1 && level.offset == 0)
            }
            StructureId::OmegaPlusOmega => level.block <= 1,
        }
    }

    /// The levels of this structure inside the box `block <= max.0`,
    /// `offset <= max.1`. Lexicographically the finite block below `ω` is
    /// infinite, so test enumerations bound both coordinates.
    pub fn enumerate(self, max: (u32, u64)) -> Vec<Level> {
        (0..=max.0)
            .flat_map(|block| (0..=max.1).map(move |offset| Level { block, offset }))
            .filter(|level| self.contains(*level))
            .collect()
    }

    /// The smallest pair `(l0, l1)` with a witness `l0 < l1`.
    pub fn bootstrap(self) -> (Level, Level, LtEvidence) {
        let l0 = Level::ZERO;
        let l1 = Level::finite(1);
        (l0, l1, LtEvidence::new())
    }
}

impl fmt::Display for StructureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.flag_name())
    }
}

/// A closed level: `ω·block + offset`.
///
/// The derived ordering is lexicographic on `(block, offset)`, which is the
/// order of every shipped structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Level {
    pub block: u32,
    pub offset: u64,
}

impl Level {
    pub const ZERO: Level = Level {
        block: 0,
        offset: 0,
    };
    pub const OMEGA: Level = Level {
        block: 1,
        offset: 0,
    };

    pub const fn finite(offset: u64) -> Level {
        Level { block: 0, offset }
    }

    pub fn is_finite(self) -> bool {
        self.block == 0
    }

    /// Successor inside `structure`. Under `ω + 1` the top level is its own
    /// successor, so `lsuc` stays total.
    pub fn succ(self, structure: StructureId) -> Level {
        let next = Level {
            block: self.block,
            offset: self.offset + 1,
        };
        if structure.contains(next) {
            next
        } else {
            self
        }
    }

    pub fn display(self, structure: StructureId) -> LevelDisplay {
        LevelDisplay {
            level: self,
            structure,
        }
    }
}

pub struct LevelDisplay {
    level: Level,
    structure: StructureId,
}

impl fmt::Display for LevelDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Level { block, offset } = self.level;
        match (self.structure, block) {
            (_, 0) => write!(f, "{offset}"),
            (StructureId::OmegaPlusOne, _) => write!(f, "ω"),
            (_, _) => write!(f, "ω+{offset}"),
        }
    }
}

/// Proof-irrelevant token for `i < j`. All tokens for the same pair are
/// interchangeable; composing two tokens yields a token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct LtEvidence(());

impl LtEvidence {
    fn new() -> LtEvidence {
        LtEvidence(())
    }

    /// `q : j < k` and `p : i < j` give `i < k`.
    pub fn compose(self, _other: LtEvidence) -> LtEvidence {
        LtEvidence::new()
    }
}

pub fn lt(i: Level, j: Level) -> bool {
    i < j
}

pub fn sup(i: Level, j: Level) -> Level {
    i.max(j)
}

/// Order embedding into lexicographically ordered pairs of naturals, the
/// evidence that every shipped structure is well founded.
pub fn rank(i: Level) -> (u64, u64) {
    (i.block as u64, i.offset)
}

pub fn lt_witness(i: Level, j: Level) -> Option<LtEvidence> {
    lt(i, j).then(LtEvidence::new)
}
