use std::cell::Cell;

use super::{Elim, Head, LevelValue, LevelView, Neutral, Val, Value};
use crate::levels::Level;
use crate::syntax::{RcTm, Tm};

/// Reads a value back to a normal form under `depth` binders.
pub fn quote(depth: usize, v: &Val) -> Tm {
    Quote { free_below: 0 }.value(depth, v)
}

pub fn quote_neutral(depth: usize, n: &Neutral) -> Tm {
    Quote { free_below: 0 }.neutral(depth, n)
}

/// Reads back a level as `lsup` of its operands, the closed floor first.
pub fn quote_level(depth: usize, lv: &LevelValue) -> Tm {
    Quote { free_below: 0 }.level(depth, lv)
}

thread_local! {
    static KEY_BASE: Cell<usize> = const { Cell::new(1 << 40) };
}

/// Binders opened by one key computation stay below this many levels, so
/// nested computations start above them.
const KEY_STRIDE: usize = 1 << 20;

/// A canonical, context-independent rendering of a neutral used to sort and
/// compare level operands. Variables free in `n` become `Global(level, "")`
/// and variables bound inside it become indices.
pub(super) fn key_of(n: &Neutral) -> Tm {
    KEY_BASE.with(|base| {
        let b = base.get();
        base.set(b + KEY_STRIDE);
        let key = Quote { free_below: b }.neutral(b, n);
        base.set(b);
        key
    })
}

/// Readback. Variables with a level below `free_below` are rendered as
/// free markers rather than indices.
struct Quote {
    free_below: usize,
}

impl Quote {
    fn value(&self, depth: usize, v: &Val) -> Tm {
        let quote = |d: usize, v: &Val| self.value(d, v);
        let quote_level = |d: usize, l: &LevelValue| self.level(d, l);
        let quote_neutral = |d: usize, n: &Neutral| self.neutral(d, n);
        match &**v {
            Value::Lam(c) => Tm::Lam(quote(depth + 1, &c.apply(Value::var(depth))).rc()),
            Value::Pi(a, b) => Tm::Pi(
                quote(depth, a).rc(),
                quote(depth + 1, &b.apply(Value::var(depth))).rc(),
            ),
            Value::Bool => Tm::Bool,
            Value::True => Tm::True,
            Value::False => Tm::False,
            Value::Nat => Tm::Nat,
            Value::Zero => Tm::Zero,
            Value::Suc(_) => {
                let mut n = 0;
                let mut v = v;
                while let Value::Suc(p) = &**v {
                    n += 1;
                    v = p;
                }
                (0..n).fold(quote(depth, v), |acc, _| Tm::Suc(acc.rc()))
            }
            Value::Empty => Tm::Empty,
            Value::Unit => Tm::Unit,
            Value::Tt => Tm::Tt,
            Value::Univ(i, j) => Tm::Univ(
                quote_level(depth, i).rc(),
                quote_level(depth, j).rc(),
                Tm::Erased.rc(),
            ),
            Value::LvlTy => Tm::LvlTy,
            Value::Lvl(l) => quote_level(depth, l),
            Value::LtTy(i, j) => Tm::LtTy(quote_level(depth, i).rc(), quote_level(depth, j).rc()),
            Value::LtTok => Tm::Erased,
            Value::LiftStuck(l, n) => Tm::Lift {
                level: quote_level(depth, l).rc(),
                proof: Tm::Erased.rc(),
                ty: quote_neutral(depth, n).rc(),
            },
            Value::Neutral(n) => quote_neutral(depth, n),
        }
    }

    fn neutral(&self, depth: usize, n: &Neutral) -> Tm {
        let head = match &n.head {
            Head::Var(l) if *l < self.free_below => Tm::Global(*l, String::new()),
            Head::Var(l) => Tm::Var(depth - 1 - l),
            Head::Level(lv) => self.level(depth, lv),
        };
        let q = |v: &Val| self.value(depth, v).rc();
        n.spine.iter().fold(head, |acc, elim| {
            let scrut: RcTm = acc.rc();
            match elim {
                Elim::App(a) => Tm::App(scrut, q(a)),
                Elim::If {
                    motive,
                    then_,
                    else_,
                } => Tm::If {
                    motive: q(motive),
                    scrut,
                    then_: q(then_),
                    else_: q(else_),
                },
                Elim::NatElim { motive, zero, suc } => Tm::NatElim {
                    motive: q(motive),
                    zero: q(zero),
                    suc: q(suc),
                    scrut,
                },
                Elim::Exfalso { motive } => Tm::Exfalso {
                    motive: q(motive),
                    scrut,
                },
                Elim::LvlElim { motive, zero, suc } => Tm::LvlElim {
                    motive: q(motive),
                    zero: q(zero),
                    suc: q(suc),
                    scrut,
                },
            }
        })
    }

    fn level(&self, depth: usize, lv: &LevelValue) -> Tm {
        let atom = |a: &super::LevelAtom| {
            (0..a.succs).fold(self.neutral(depth, &a.neutral), |acc, _| Tm::LSuc(acc.rc()))
        };
        match lv.view() {
            LevelView::Closed(l) => closed_level(l),
            LevelView::Neutral(..) => atom(&lv.atoms()[0]),
            LevelView::Sup(floor, atoms) => {
                let mut parts = atoms.iter().map(atom);
                let first = if floor == Level::ZERO {
                    parts.next().expect("a supremum has operands")
                } else {
                    closed_level(floor)
                };
                parts.fold(first, |acc, t| Tm::LSup(acc.rc(), t.rc()))
            }
        }
    }
}

fn closed_level(l: Level) -> Tm {
    if l.is_finite() {
        Tm::level_literal(l.offset)
    } else {
        (0..l.offset).fold(Tm::LOmega, |acc, _| Tm::LSuc(acc.rc()))
    }
}
