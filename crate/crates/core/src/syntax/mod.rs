//! The elaborated kernel language.
//!
//! Terms are de Bruijn indexed. Universes are Russell style, so there are no
//! decoding or encoding nodes, and term-level lifting is the identity, so
//! the only lift node is the type former [`Tm::Lift`].

mod print;

pub use print::{print_term, to_source};

use std::rc::Rc;

pub type RcTm = Rc<Tm>;

/// Order lemmas shipped as constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimId {
    /// `ltDec i j : Lt i j` for closed `i < j`.
    LtDec,
    /// `ltFinOmega n : Lt (finToLvl n) lomega`.
    LtFinOmega,
    /// `ltSucSelf l : Lt l (lsuc l)`.
    LtSucSelf,
    /// `ltTrans i j k : Lt j k -> Lt i j -> Lt i k`.
    LtTrans,
}

impl PrimId {
    pub fn arity(self) -> usize {
        match self {
            PrimId::LtDec => 2,
            PrimId::LtFinOmega | PrimId::LtSucSelf => 1,
            PrimId::LtTrans => 5,
        }
    }
}

/// Elaborated coercion along a subtyping derivation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coercion {
    Refl,
    /// `U i j p <= U i' k q`: a code at level `from` becomes a code at `to`.
    Univ { from: RcTm, to: RcTm },
    /// Backwards on the domain, forwards on the codomain. `result` lives
    /// under one extra binder: the argument at the target domain type.
    Pi {
        domain: Box<Coercion>,
        result: Box<Coercion>,
    },
}

impl Coercion {
    pub fn is_refl(&self) -> bool {
        matches!(self, Coercion::Refl)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tm {
    Var(usize),
    /// Reference to an earlier top-level declaration.
    Global(usize, String),
    Lam(RcTm),
    App(RcTm, RcTm),
    Pi(RcTm, RcTm),
    Let { ty: RcTm, def: RcTm, body: RcTm },

    Bool,
    True,
    False,
    If { motive: RcTm, scrut: RcTm, then_: RcTm, else_: RcTm },

    Nat,
    Zero,
    Suc(RcTm),
    NatElim { motive: RcTm, zero: RcTm, suc: RcTm, scrut: RcTm },

    Empty,
    Exfalso { motive: RcTm, scrut: RcTm },
    Unit,
    Tt,

    /// `U i j p`.
    Univ(RcTm, RcTm, RcTm),
    /// `Lift p A` where `p : Lt i level`.
    Lift { level: RcTm, proof: RcTm, ty: RcTm },

    LvlTy,
    LZero,
    LSuc(RcTm),
    LOmega,
    LSup(RcTm, RcTm),
    LtTy(RcTm, RcTm),
    LtPrim(PrimId, Vec<RcTm>),
    LvlElim { motive: RcTm, zero: RcTm, suc: RcTm, scrut: RcTm },

    /// A proof of `Lt` whose identity was erased; only produced by readback.
    Erased,

    Coerce { coercion: Coercion, target: RcTm, term: RcTm },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScopeError {
    #[error("de Bruijn index {index} out of range at depth {depth}")]
    Index { index: usize, depth: usize },
    #[error("global #{0} out of range")]
    Global(usize),
    #[error("{prim:?} applied to {got} arguments")]
    PrimArity { prim: PrimId, got: usize },
}

impl Tm {
    pub fn rc(self) -> RcTm {
        Rc::new(self)
    }

    pub fn level_literal(n: u64) -> Tm {
        (0..n).fold(Tm::LZero, |acc, _| Tm::LSuc(acc.rc()))
    }

    pub fn numeral(n: u64) -> Tm {
        (0..n).fold(Tm::Zero, |acc, _| Tm::Suc(acc.rc()))
    }

    /// Checks that every index is bound within `depth` enclosing binders and
    /// every global refers to one of the first `globals` declarations.
    pub fn validate_scope(&self, depth: usize, globals: usize) -> Result<(), ScopeError> {
        let v = |t: &RcTm, d: usize| t.validate_scope(d, globals);
        match self {
            Tm::Var(ix) => {
                if *ix < depth {
                    Ok(())
                } else {
                    Err(ScopeError::Index { index: *ix, depth })
                }
            }
            Tm::Global(g, _) => {
                if *g < globals {
                    Ok(())
                } else {
                    Err(ScopeError::Global(*g))
                }
            }
            Tm::Lam(b) => v(b, depth + 1),
            Tm::App(f, a) => {
                v(f, depth)?;
                v(a, depth)
            }
            Tm::Pi(a, b) => {
                v(a, depth)?;
                v(b, depth + 1)
            }
            Tm::Let { ty, def, body } => {
                v(ty, depth)?;
                v(def, depth)?;
                v(body, depth + 1)
            }
            Tm::If { motive, scrut, then_, else_ } => {
                for t in [motive, scrut, then_, else_] {
                    v(t, depth)?;
                }
                Ok(())
            }
            Tm::NatElim { motive, zero, suc, scrut } | Tm::LvlElim { motive, zero, suc, scrut } => {
                for t in [motive, zero, suc, scrut] {
                    v(t, depth)?;
                }
                Ok(())
            }
            Tm::Exfalso { motive, scrut } => {
                v(motive, depth)?;
                v(scrut, depth)
            }
            Tm::Suc(t) | Tm::LSuc(t) => v(t, depth),
            Tm::Univ(i, j, p) => {
                v(i, depth)?;
                v(j, depth)?;
                v(p, depth)
            }
            Tm::Lift { level, proof, ty } => {
                v(level, depth)?;
                v(proof, depth)?;
                v(ty, depth)
            }
            Tm::LSup(i, j) | Tm::LtTy(i, j) => {
                v(i, depth)?;
                v(j, depth)
            }
            Tm::LtPrim(prim, args) => {
                if args.len() != prim.arity() {
                    return Err(ScopeError::PrimArity { prim: *prim, got: args.len() });
                }
                args.iter().try_for_each(|a| v(a, depth))
            }
            Tm::Coerce { coercion, target, term } => {
                validate_coercion(coercion, depth, globals)?;
                v(target, depth)?;
                v(term, depth)
            }
            Tm::Bool
            | Tm::True
            | Tm::False
            | Tm::Nat
            | Tm::Zero
            | Tm::Empty
            | Tm::Unit
            | Tm::Tt
            | Tm::LvlTy
            | Tm::LZero
            | Tm::LOmega
            | Tm::Erased => Ok(()),
        }
    }

    /// Whether `f` holds of this term or any subterm, coercions included.
    pub fn any(&self, f: &mut impl FnMut(&Tm) -> bool) -> bool {
        if f(self) {
            return true;
        }
        let mut children: Vec<&RcTm> = Vec::new();
        match self {
            Tm::Lam(b) | Tm::Suc(b) | Tm::LSuc(b) => children.push(b),
            Tm::App(a, b) | Tm::Pi(a, b) | Tm::LSup(a, b) | Tm::LtTy(a, b) => {
                children.extend([a, b])
            }
            Tm::Let { ty, def, body } => children.extend([ty, def, body]),
            Tm::If { motive, scrut, then_, else_ } => children.extend([motive, scrut, then_, else_]),
            Tm::NatElim { motive, zero, suc, scrut } | Tm::LvlElim { motive, zero, suc, scrut } => {
                children.extend([motive, zero, suc, scrut])
            }
            Tm::Exfalso { motive, scrut } => children.extend([motive, scrut]),
            Tm::Univ(i, j, p) => children.extend([i, j, p]),
            Tm::Lift { level, proof, ty } => children.extend([level, proof, ty]),
            Tm::LtPrim(_, args) => children.extend(args),
            Tm::Coerce { coercion, target, term } => {
                if coercion_any(coercion, f) {
                    return true;
                }
                children.extend([target, term])
            }
            _ => {}
        }
        children.into_iter().any(|c| c.any(f))
    }

    /// Whether de Bruijn index `ix` (relative to this term) occurs free.
    pub fn mentions(&self, ix: usize) -> bool {
        let m = |t: &RcTm, i: usize| t.mentions(i);
        match self {
            Tm::Var(i) => *i == ix,
            Tm::Lam(b) => m(b, ix + 1),
            Tm::Pi(a, b) => m(a, ix) || m(b, ix + 1),
            Tm::Let { ty, def, body } => m(ty, ix) || m(def, ix) || m(body, ix + 1),
            Tm::App(a, b) | Tm::LSup(a, b) | Tm::LtTy(a, b) => m(a, ix) || m(b, ix),
            Tm::If { motive, scrut, then_, else_ } => {
                [motive, scrut, then_, else_].into_iter().any(|t| m(t, ix))
            }
            Tm::NatElim { motive, zero, suc, scrut } | Tm::LvlElim { motive, zero, suc, scrut } => {
                [motive, zero, suc, scrut].into_iter().any(|t| m(t, ix))
            }
            Tm::Exfalso { motive, scrut } => m(motive, ix) || m(scrut, ix),
            Tm::Suc(t) | Tm::LSuc(t) => m(t, ix),
            Tm::Univ(i, j, p) => m(i, ix) || m(j, ix) || m(p, ix),
            Tm::Lift { level, proof, ty } => m(level, ix) || m(proof, ix) || m(ty, ix),
            Tm::LtPrim(_, args) => args.iter().any(|a| m(a, ix)),
            Tm::Coerce { coercion, target, term } => {
                coercion_mentions(coercion, ix) || m(target, ix) || m(term, ix)
            }
            _ => false,
        }
    }
}

fn validate_coercion(c: &Coercion, depth: usize, globals: usize) -> Result<(), ScopeError> {
    match c {
        Coercion::Refl => Ok(()),
        Coercion::Univ { from, to } => {
            from.validate_scope(depth, globals)?;
            to.validate_scope(depth, globals)
        }
        Coercion::Pi { domain, result } => {
            validate_coercion(domain, depth, globals)?;
            validate_coercion(result, depth + 1, globals)
        }
    }
}

fn coercion_any(c: &Coercion, f: &mut impl FnMut(&Tm) -> bool) -> bool {
    match c {
        Coercion::Refl => false,
        Coercion::Univ { from, to } => from.any(f) || to.any(f),
        Coercion::Pi { domain, result } => coercion_any(domain, f) || coercion_any(result, f),
    }
}

fn coercion_mentions(c: &Coercion, ix: usize) -> bool {
    match c {
        Coercion::Refl => false,
        Coercion::Univ { from, to } => from.mentions(ix) || to.mentions(ix),
        Coercion::Pi { domain, result } => {
            coercion_mentions(domain, ix) || coercion_mentions(result, ix + 1)
        }
    }
}
