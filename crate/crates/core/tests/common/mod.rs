//! Helpers shared by the integration tests.
#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;
use ttfl::cli::levels_pragma;
use ttfl::elab::{elab_source, ElaboratedModule};
use ttfl::levels::{Level, StructureId};
use ttfl::syntax::Tm;

/// Every enumeration in the tests ranges over levels with
/// `block <= 1` and `offset <= 10`.
pub const BOX: (u32, u64) = (1, 10);

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus"))
}

/// `(file name, text)` of every `.ttfl` file in `corpus/<sub>`, sorted.
pub fn corpus(sub: &str) -> Vec<(String, String)> {
    ttfl::cli::corpus_files(&corpus_dir().join(sub))
        .expect("corpus directory is readable")
        .into_iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, fs::read_to_string(&p).unwrap())
        })
        .collect()
}

pub fn structure_of(text: &str) -> StructureId {
    levels_pragma(text).unwrap_or(StructureId::Nat)
}

/// The accepted corpus, elaborated under each file's declared structure.
pub fn accepted_modules() -> Vec<(String, String, ElaboratedModule)> {
    corpus("accept")
        .into_iter()
        .map(|(name, text)| {
            let m = elab_source(&text, structure_of(&text))
                .unwrap_or_else(|e| panic!("{name}: {e}"));
            (name, text, m)
        })
        .collect()
}

/// A closed level as a term: a numeral, or successors of `lomega`.
pub fn level_tm(l: Level) -> Tm {
    if l.is_finite() {
        Tm::level_literal(l.offset)
    } else {
        (0..l.offset).fold(Tm::LOmega, |acc, _| Tm::LSuc(acc.rc()))
    }
}

/// A closed level in surface syntax.
pub fn level_src(l: Level) -> String {
    if l.is_finite() {
        l.offset.to_string()
    } else {
        (0..l.offset).fold("lomega".to_string(), |acc, _| format!("(lsuc {acc})"))
    }
}

/// Random well-formed types whose level is bounded by a given level.
pub struct TypeGen<'a> {
    pub rng: &'a mut StdRng,
    pub levels: Vec<Level>,
    /// For each binder in scope, the level of the types it ranges over if
    /// it is bound by a universe.
    scope: Vec<Option<Level>>,
}

impl<'a> TypeGen<'a> {
    pub fn new(rng: &'a mut StdRng, structure: StructureId) -> TypeGen<'a> {
        TypeGen {
            rng,
            levels: structure.enumerate(BOX),
            scope: Vec::new(),
        }
    }

    /// A type of level at most `bound`, together with its exact level.
    pub fn ty(&mut self, bound: Level, fuel: u32) -> (Tm, Level) {
        let choice = if fuel == 0 {
            self.rng.gen_range(0..3)
        } else {
            self.rng.gen_range(0..8)
        };
        match choice {
            0 => (
                [Tm::Bool, Tm::Nat, Tm::Empty, Tm::Unit, Tm::LvlTy]
                    .choose(self.rng)
                    .unwrap()
                    .clone(),
                Level::ZERO,
            ),
            1 => {
                let a = *self.levels.choose(self.rng).unwrap();
                let b = *self.levels.choose(self.rng).unwrap();
                (Tm::LtTy(level_tm(a).rc(), level_tm(b).rc()), Level::ZERO)
            }
            2 => self.var(bound).unwrap_or((Tm::Bool, Level::ZERO)),
            3 | 4 => self.universe(bound).unwrap_or((Tm::Nat, Level::ZERO)),
            5 | 6 => {
                let (dom, ld) = self.ty(bound, fuel - 1);
                let binds = match &dom {
                    Tm::Univ(i, _, _) => Some(self.closed(i)),
                    _ => None,
                };
                self.scope.push(binds);
                let (cod, lc) = self.ty(bound, fuel - 1);
                self.scope.pop();
                (Tm::Pi(dom.rc(), cod.rc()), ld.max(lc))
            }
            _ => self.lift(bound, fuel - 1).unwrap_or((Tm::Unit, Level::ZERO)),
        }
    }

    /// A Π type whose level is at most `bound`.
    pub fn pi(&mut self, bound: Level, fuel: u32) -> (Tm, Level) {
        loop {
            if let (t @ Tm::Pi(..), l) = self.ty(bound, fuel.max(1)) {
                return (t, l);
            }
        }
    }

    fn closed(&self, t: &Tm) -> Level {
        let pos = self.levels.iter().position(|l| level_tm(*l) == *t);
        self.levels[pos.expect("generated levels are enumerated")]
    }

    fn below(&self, bound: Level, strict: bool) -> Vec<Level> {
        self.levels
            .iter()
            .copied()
            .filter(|l| if strict { *l < bound } else { *l <= bound })
            .collect()
    }

    fn var(&mut self, bound: Level) -> Option<(Tm, Level)> {
        let candidates: Vec<(usize, Level)> = self
            .scope
            .iter()
            .enumerate()
            .filter_map(|(k, l)| l.filter(|l| *l <= bound).map(|l| (k, l)))
            .collect();
        let (k, l) = *candidates.choose(self.rng)?;
        Some((Tm::Var(self.scope.len() - 1 - k), l))
    }

    /// `U a b` with `a < b <= bound`.
    fn universe(&mut self, bound: Level) -> Option<(Tm, Level)> {
        let b = *self
            .below(bound, false)
            .iter()
            .filter(|b| **b > Level::ZERO)
            .collect::<Vec<_>>()
            .choose(self.rng)?
            .to_owned();
        let a = *self.below(b, true).choose(self.rng)?;
        Some((
            Tm::Univ(level_tm(a).rc(), level_tm(b).rc(), Tm::Erased.rc()),
            b,
        ))
    }

    /// `Lift b A` with `A` strictly below `b <= bound`.
    fn lift(&mut self, bound: Level, fuel: u32) -> Option<(Tm, Level)> {
        let b = *self
            .below(bound, false)
            .iter()
            .filter(|b| **b > Level::ZERO)
            .collect::<Vec<_>>()
            .choose(self.rng)?
            .to_owned();
        let inner = *self.below(b, true).choose(self.rng)?;
        let (ty, _) = self.ty(inner, fuel);
        Some((
            Tm::Lift {
                level: level_tm(b).rc(),
                proof: Tm::Erased.rc(),
                ty: ty.rc(),
            },
            b,
        ))
    }
}
