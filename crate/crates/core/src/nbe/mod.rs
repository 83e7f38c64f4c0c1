//! Normalization by evaluation.
//!
//! Values are the semantic counterpart of the inductive-recursive universe
//! codes: a type value is a code, and lifting a code pushes through every
//! former. Proofs of `Lt` are erased to a single token.

mod conv;
mod eval;
mod level;
mod quote;

pub use conv::{conv, conv_modulo_lift, conv_untyped};
pub use eval::{
    apply, coerce_value, do_if, eval, exfalso, lift_value, lvl_elim, nat_elim, Env,
};
pub use level::{LevelAtom, LevelValue, LevelView};
pub use quote::{quote, quote_level, quote_neutral};

use std::rc::Rc;

use crate::syntax::{Coercion, RcTm};

pub type Val = Rc<Value>;

#[derive(Debug, Clone)]
pub enum Value {
    Lam(Closure),
    Pi(Val, Closure),

    Bool,
    True,
    False,
    Nat,
    Zero,
    Suc(Val),
    Empty,
    Unit,
    Tt,

    /// `U i j`; the order proof is erased.
    Univ(LevelValue, LevelValue),
    LvlTy,
    /// A level that is not a bare neutral. Bare neutral levels are
    /// [`Value::Neutral`].
    Lvl(LevelValue),
    LtTy(LevelValue, LevelValue),
    LtTok,

    /// A lift to `level` blocked on a neutral type. Never nested.
    LiftStuck(LevelValue, Neutral),
    Neutral(Neutral),
}

impl Value {
    /// The variable with de Bruijn level `level`.
    pub fn var(level: usize) -> Val {
        Rc::new(Value::Neutral(Neutral {
            head: Head::Var(level),
            spine: Vec::new(),
        }))
    }

    /// A fresh inhabitant of `ty` at de Bruijn level `level`. Proof and unit
    /// types have a single canonical inhabitant, which is used instead of a
    /// variable so that irrelevance survives untyped comparison.
    pub fn fresh(level: usize, ty: &Val) -> Val {
        match &**ty {
            Value::LtTy(..) => Rc::new(Value::LtTok),
            Value::Unit => Rc::new(Value::Tt),
            _ => Value::var(level),
        }
    }

    pub fn level(lv: LevelValue) -> Val {
        match lv.as_bare_neutral() {
            Some(n) => Rc::new(Value::Neutral(n.clone())),
            None => Rc::new(Value::Lvl(lv)),
        }
    }

    pub fn numeral(n: u64) -> Val {
        (0..n).fold(Rc::new(Value::Zero), |acc, _| Rc::new(Value::Suc(acc)))
    }

    /// Reads a value of type `Lvl` as a level.
    ///
    /// # Panics
    /// On values that cannot have type `Lvl`, which elaboration rules out.
    pub fn as_level(&self) -> LevelValue {
        match self {
            Value::Lvl(lv) => lv.clone(),
            Value::Neutral(n) => LevelValue::neutral(n.clone()),
            other => panic!("kernel bug: expected a level, found {other:?}"),
        }
    }

    pub fn as_numeral(&self) -> Option<u64> {
        let mut n = 0;
        let mut v = self;
        loop {
            match v {
                Value::Zero => return Some(n),
                Value::Suc(p) => {
                    n += 1;
                    v = p;
                }
                _ => return None,
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Neutral {
    pub head: Head,
    pub spine: Vec<Elim>,
}

impl Neutral {
    pub fn push(&self, elim: Elim) -> Neutral {
        let mut spine = self.spine.clone();
        spine.push(elim);
        Neutral {
            head: self.head.clone(),
            spine,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Head {
    /// de Bruijn level.
    Var(usize),
    /// A level expression that is not a bare neutral, stuck under `lvlElim`.
    Level(Box<LevelValue>),
}

#[derive(Debug, Clone)]
pub enum Elim {
    App(Val),
    If { motive: Val, then_: Val, else_: Val },
    NatElim { motive: Val, zero: Val, suc: Val },
    Exfalso { motive: Val },
    LvlElim { motive: Val, zero: Val, suc: Val },
}

#[derive(Debug, Clone)]
pub enum Closure {
    Term { env: Env, body: RcTm },
    /// `λa. Lift level (inner a)`: the codomain of a lifted Π.
    Lift { level: LevelValue, inner: Rc<Closure> },
    /// `λa'. coerce result (func (coerce domain a'))`.
    Coerce {
        env: Env,
        domain: Rc<Coercion>,
        result: Rc<Coercion>,
        func: Val,
    },
}

impl Closure {
    pub fn apply(&self, arg: Val) -> Val {
        match self {
            Closure::Term { env, body } => eval(&env.extend(arg), body),
            Closure::Lift { level, inner } => lift_value(level, &inner.apply(arg)),
            Closure::Coerce {
                env,
                domain,
                result,
                func,
            } => {
                let converted = coerce_value(env, domain, &arg);
                let out = apply(func, converted);
                coerce_value(&env.extend(arg), result, &out)
            }
        }
    }
}
