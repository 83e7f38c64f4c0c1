use std::fmt;
use std::rc::Rc;

use super::{Closure, Elim, Head, LevelValue, LevelView, Neutral, Val, Value};
use crate::levels::{Level, StructureId};
use crate::syntax::{Coercion, RcTm, Tm};

/// Evaluation environment. Locals are stored innermost last, so de Bruijn
/// index `i` is `locals[len - 1 - i]`.
#[derive(Clone)]
pub struct Env {
    pub structure: StructureId,
    pub globals: Rc<Vec<Val>>,
    pub locals: Vec<Val>,
}

impl Env {
    pub fn new(structure: StructureId, globals: Rc<Vec<Val>>) -> Env {
        Env {
            structure,
            globals,
            locals: Vec::new(),
        }
    }

    pub fn extend(&self, v: Val) -> Env {
        let mut locals = self.locals.clone();
        locals.push(v);
        Env {
            structure: self.structure,
            globals: self.globals.clone(),
            locals,
        }
    }

    fn lookup(&self, ix: usize) -> Val {
        self.locals[self.locals.len() - 1 - ix].clone()
    }
}

impl fmt::Debug for Env {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Env")
            .field("structure", &self.structure)
            .field("globals", &self.globals.len())
            .field("locals", &self.locals)
            .finish()
    }
}

fn level_of(env: &Env, t: &RcTm) -> LevelValue {
    eval(env, t).as_level()
}

pub fn eval(env: &Env, t: &RcTm) -> Val {
    let ev = |t: &RcTm| eval(env, t);
    match &**t {
        Tm::Var(ix) => env.lookup(*ix),
        Tm::Global(g, _) => env.globals[*g].clone(),
        Tm::Lam(body) => Rc::new(Value::Lam(Closure::Term {
            env: env.clone(),
            body: body.clone(),
        })),
        Tm::App(f, a) => apply(&ev(f), ev(a)),
        Tm::Pi(a, b) => Rc::new(Value::Pi(
            ev(a),
            Closure::Term {
                env: env.clone(),
                body: b.clone(),
            },
        )),
        Tm::Let { def, body, .. } => eval(&env.extend(ev(def)), body),

        Tm::Bool => Rc::new(Value::Bool),
        Tm::True => Rc::new(Value::True),
        Tm::False => Rc::new(Value::False),
        Tm::If { motive, scrut, then_, else_ } => {
            do_if(&ev(motive), &ev(scrut), ev(then_), ev(else_))
        }
        Tm::Nat => Rc::new(Value::Nat),
        Tm::Zero => Rc::new(Value::Zero),
        Tm::Suc(_) => {
            // numerals can be long; peel them without recursion
            let mut depth = 0;
            let mut t = t;
            while let Tm::Suc(n) = &**t {
                depth += 1;
                t = n;
            }
            (0..depth).fold(ev(t), |acc, _| Rc::new(Value::Suc(acc)))
        }
        Tm::NatElim { motive, zero, suc, scrut } => {
            nat_elim(&ev(motive), &ev(zero), &ev(suc), &ev(scrut))
        }
        Tm::Empty => Rc::new(Value::Empty),
        Tm::Exfalso { motive, scrut } => exfalso(&ev(motive), &ev(scrut)),
        Tm::Unit => Rc::new(Value::Unit),
        Tm::Tt => Rc::new(Value::Tt),

        Tm::Univ(i, j, _) => Rc::new(Value::Univ(level_of(env, i), level_of(env, j))),
        Tm::Lift { level, ty, .. } => lift_value(&level_of(env, level), &ev(ty)),

        Tm::LvlTy => Rc::new(Value::LvlTy),
        Tm::LZero => Value::level(LevelValue::zero()),
        Tm::LSuc(l) => Value::level(level_of(env, l).succ(env.structure)),
        Tm::LOmega => Value::level(LevelValue::closed(Level::OMEGA)),
        Tm::LSup(a, b) => Value::level(level_of(env, a).sup(&level_of(env, b))),
        Tm::LtTy(i, j) => Rc::new(Value::LtTy(level_of(env, i), level_of(env, j))),
        Tm::LtPrim(..) | Tm::Erased => Rc::new(Value::LtTok),
        Tm::LvlElim { motive, zero, suc, scrut } => lvl_elim(
            env.structure,
            &ev(motive),
            &ev(zero),
            &ev(suc),
            &level_of(env, scrut),
        ),

        Tm::Coerce { coercion, term, .. } => coerce_value(env, coercion, &ev(term)),
    }
}

pub fn apply(f: &Val, arg: Val) -> Val {
    match &**f {
        Value::Lam(c) => c.apply(arg),
        Value::Neutral(n) => Rc::new(Value::Neutral(n.push(Elim::App(arg)))),
        other => panic!("kernel bug: applying a non-function {other:?}"),
    }
}

pub fn do_if(motive: &Val, scrut: &Val, then_: Val, else_: Val) -> Val {
    match &**scrut {
        Value::True => then_,
        Value::False => else_,
        Value::Neutral(n) => Rc::new(Value::Neutral(n.push(Elim::If {
            motive: motive.clone(),
            then_,
            else_,
        }))),
        other => panic!("kernel bug: if on {other:?}"),
    }
}

/// Iterative, so long numerals do not exhaust the stack.
pub fn nat_elim(motive: &Val, zero: &Val, suc: &Val, scrut: &Val) -> Val {
    let mut preds = Vec::new();
    let mut v = scrut.clone();
    while let Value::Suc(p) = &*v {
        let p = p.clone();
        preds.push(p.clone());
        v = p;
    }
    let mut acc = match &*v {
        Value::Zero => zero.clone(),
        Value::Neutral(n) => Rc::new(Value::Neutral(n.push(Elim::NatElim {
            motive: motive.clone(),
            zero: zero.clone(),
            suc: suc.clone(),
        }))),
        other => panic!("kernel bug: natElim on {other:?}"),
    };
    for p in preds.into_iter().rev() {
        acc = apply(&apply(suc, p), acc);
    }
    acc
}

pub fn exfalso(motive: &Val, scrut: &Val) -> Val {
    match &**scrut {
        Value::Neutral(n) => Rc::new(Value::Neutral(n.push(Elim::Exfalso {
            motive: motive.clone(),
        }))),
        other => panic!("kernel bug: exfalso on {other:?}"),
    }
}

/// Recursion on finite levels. A level `n + k` over a neutral `n` steps `k`
/// times over the stuck elimination of `n`.
pub fn lvl_elim(
    structure: StructureId,
    motive: &Val,
    zero: &Val,
    suc: &Val,
    scrut: &LevelValue,
) -> Val {
    let stuck = |head: Neutral| {
        Rc::new(Value::Neutral(head.push(Elim::LvlElim {
            motive: motive.clone(),
            zero: zero.clone(),
            suc: suc.clone(),
        })))
    };
    let (mut acc, mut pred, steps) = match scrut.view() {
        LevelView::Closed(l) => {
            assert!(l.is_finite(), "kernel bug: lvlElim on an infinite level");
            (zero.clone(), LevelValue::zero(), l.offset)
        }
        LevelView::Neutral(n, k) => (stuck(n.clone()), LevelValue::neutral(n.clone()), k),
        LevelView::Sup(..) => {
            let head = Neutral {
                head: Head::Level(Box::new(scrut.clone())),
                spine: Vec::new(),
            };
            (stuck(head), scrut.clone(), 0)
        }
    };
    for _ in 0..steps {
        acc = apply(&apply(suc, Value::level(pred.clone())), acc);
        pred = pred.succ(structure);
    }
    acc
}

/// Pushes a lift to `level` through a type value.
pub fn lift_value(level: &LevelValue, ty: &Val) -> Val {
    match &**ty {
        Value::Pi(a, b) => Rc::new(Value::Pi(
            lift_value(level, a),
            Closure::Lift {
                level: level.clone(),
                inner: Rc::new(b.clone()),
            },
        )),
        Value::Bool | Value::Nat | Value::Empty | Value::Unit | Value::LvlTy | Value::LtTy(..) => {
            ty.clone()
        }
        Value::Univ(i, _) => Rc::new(Value::Univ(i.clone(), level.clone())),
        Value::LiftStuck(_, n) | Value::Neutral(n) => {
            Rc::new(Value::LiftStuck(level.clone(), n.clone()))
        }
        other => panic!("kernel bug: lifting a non-type {other:?}"),
    }
}

/// Transports a value along an elaborated coercion.
pub fn coerce_value(env: &Env, coercion: &Coercion, v: &Val) -> Val {
    match coercion {
        Coercion::Refl => v.clone(),
        Coercion::Univ { from, to } => {
            let from = level_of(env, from);
            let to = level_of(env, to);
            if from == to {
                v.clone()
            } else {
                lift_value(&to, v)
            }
        }
        Coercion::Pi { domain, result } => Rc::new(Value::Lam(Closure::Coerce {
            env: env.clone(),
            domain: Rc::new((**domain).clone()),
            result: Rc::new((**result).clone()),
            func: v.clone(),
        })),
    }
}
