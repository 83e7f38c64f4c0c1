//! Recovering types and levels of values that are already known to be
//! well typed.

use std::rc::Rc;

use super::Ctx;
use crate::nbe::{apply, Elim, Head, LevelValue, Neutral, Val, Value};

/// The level at which a type value lives.
///
/// # Panics
/// If `ty` is not a type in `ctx`; elaboration only calls it on types.
pub fn level_of_type(ctx: &Ctx, ty: &Val) -> LevelValue {
    match &**ty {
        Value::Univ(_, j) => j.clone(),
        Value::Pi(a, b) => {
            let la = level_of_type(ctx, a);
            let inner = ctx.bind("_", a.clone(), la.clone());
            let lb = level_of_type(&inner, &b.apply(inner.last_value()));
            la.sup(&lb)
        }
        Value::Bool | Value::Nat | Value::Empty | Value::Unit | Value::LvlTy | Value::LtTy(..) => {
            LevelValue::zero()
        }
        Value::LiftStuck(j, _) => j.clone(),
        Value::Neutral(n) => match &*infer_neutral_type(ctx, n) {
            Value::Univ(i, _) => i.clone(),
            other => panic!("kernel bug: neutral type of type {other:?}"),
        },
        other => panic!("kernel bug: level of non-type {other:?}"),
    }
}

/// The type of a neutral value, read off its head and spine.
pub fn infer_neutral_type(ctx: &Ctx, n: &Neutral) -> Val {
    let mut ty = match &n.head {
        Head::Var(l) => ctx.type_of_var(*l),
        Head::Level(_) => Rc::new(Value::LvlTy),
    };
    for (k, elim) in n.spine.iter().enumerate() {
        let prefix = || {
            let neutral = Neutral {
                head: n.head.clone(),
                spine: n.spine[..k].to_vec(),
            };
            match (&neutral.head, k) {
                (Head::Level(lv), 0) => Value::level((**lv).clone()),
                _ => Rc::new(Value::Neutral(neutral)),
            }
        };
        ty = match elim {
            Elim::App(a) => match &*ty {
                Value::Pi(_, cod) => cod.apply(a.clone()),
                other => panic!("kernel bug: applied neutral of type {other:?}"),
            },
            Elim::If { motive, .. }
            | Elim::NatElim { motive, .. }
            | Elim::LvlElim { motive, .. } => apply(motive, prefix()),
            Elim::Exfalso { motive } => motive.clone(),
        };
    }
    ty
}
