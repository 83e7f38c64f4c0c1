use super::{apply, Elim, Head, Neutral, Val, Value};

/// Type-directed conversion of `a` and `b` at type `ty` under `depth` binders.
///
/// Proofs of `Lt` and inhabitants of `Unit` are all equal, and functions are
/// compared extensionally.
pub fn conv(depth: usize, ty: &Val, a: &Val, b: &Val) -> bool {
    match &**ty {
        Value::LtTy(..) | Value::Unit => true,
        Value::Pi(dom, cod) => {
            let x = Value::fresh(depth, dom);
            conv(
                depth + 1,
                &cod.apply(x.clone()),
                &apply(a, x.clone()),
                &apply(b, x),
            )
        }
        Value::LvlTy => a.as_level() == b.as_level(),
        _ => conv_untyped(depth, a, b),
    }
}

/// Structural conversion with η for functions. Sound for values of a common
/// type: a proof token or a unit value on either side decides the
/// comparison, since the other side must then be a proof or unit value too.
pub fn conv_untyped(depth: usize, a: &Val, b: &Val) -> bool {
    use Value::*;
    match (&**a, &**b) {
        (LtTok, _) | (_, LtTok) | (Tt, _) | (_, Tt) => true,
        (Lam(f), Lam(g)) => {
            let x = Value::var(depth);
            conv_untyped(depth + 1, &f.apply(x.clone()), &g.apply(x))
        }
        (Lam(f), Neutral(_)) => {
            let x = Value::var(depth);
            conv_untyped(depth + 1, &f.apply(x.clone()), &apply(b, x))
        }
        (Neutral(_), Lam(g)) => {
            let x = Value::var(depth);
            conv_untyped(depth + 1, &apply(a, x.clone()), &g.apply(x))
        }
        (Pi(a1, b1), Pi(a2, b2)) => {
            conv_untyped(depth, a1, a2) && {
                let x = Value::fresh(depth, a1);
                conv_untyped(depth + 1, &b1.apply(x.clone()), &b2.apply(x))
            }
        }
        (Bool, Bool) | (True, True) | (False, False) => true,
        (Nat, Nat) | (Zero, Zero) | (Empty, Empty) | (Unit, Unit) | (LvlTy, LvlTy) => true,
        (Suc(_), Suc(_)) => {
            // walk numerals iteratively
            let (mut x, mut y) = (a, b);
            while let (Suc(p), Suc(q)) = (&**x, &**y) {
                x = p;
                y = q;
            }
            !matches!((&**x, &**y), (Suc(_), _) | (_, Suc(_))) && conv_untyped(depth, x, y)
        }
        (Univ(i1, j1), Univ(i2, j2)) => i1 == i2 && j1 == j2,
        (LtTy(i1, j1), LtTy(i2, j2)) => i1 == i2 && j1 == j2,
        (Lvl(l1), Lvl(l2)) => l1 == l2,
        (LiftStuck(l1, n1), LiftStuck(l2, n2)) => l1 == l2 && conv_neutral(depth, n1, n2),
        (Neutral(n1), Neutral(n2)) => conv_neutral(depth, n1, n2),
        _ => false,
    }
}

fn conv_neutral(depth: usize, n1: &Neutral, n2: &Neutral) -> bool {
    let heads = match (&n1.head, &n2.head) {
        (Head::Var(x), Head::Var(y)) => x == y,
        (Head::Level(x), Head::Level(y)) => x == y,
        _ => false,
    };
    let c = |a: &Val, b: &Val| conv_untyped(depth, a, b);
    heads
        && n1.spine.len() == n2.spine.len()
        && n1.spine.iter().zip(&n2.spine).all(|pair| match pair {
            (Elim::App(a), Elim::App(b)) => c(a, b),
            (
                Elim::If { motive: m1, then_: t1, else_: e1 },
                Elim::If { motive: m2, then_: t2, else_: e2 },
            ) => c(m1, m2) && c(t1, t2) && c(e1, e2),
            (
                Elim::NatElim { motive: m1, zero: z1, suc: s1 },
                Elim::NatElim { motive: m2, zero: z2, suc: s2 },
            )
            | (
                Elim::LvlElim { motive: m1, zero: z1, suc: s1 },
                Elim::LvlElim { motive: m2, zero: z2, suc: s2 },
            ) => c(m1, m2) && c(z1, z2) && c(s1, s2),
            (Elim::Exfalso { motive: m1 }, Elim::Exfalso { motive: m2 }) => c(m1, m2),
            _ => false,
        })
}

/// Conversion of types up to lifting. A lift has the same inhabitants as the
/// type it lifts, so lifts are ignored in every type position, and
/// universes are compared by the level of their inhabitants only.
pub fn conv_modulo_lift(depth: usize, a: &Val, b: &Val) -> bool {
    use Value::*;
    match (&**a, &**b) {
        (LiftStuck(_, n1), LiftStuck(_, n2))
        | (LiftStuck(_, n1), Neutral(n2))
        | (Neutral(n1), LiftStuck(_, n2)) => conv_neutral(depth, n1, n2),
        (Univ(i1, _), Univ(i2, _)) => i1 == i2,
        (Pi(a1, b1), Pi(a2, b2)) => {
            conv_modulo_lift(depth, a1, a2) && {
                let x = Value::fresh(depth, a1);
                conv_modulo_lift(depth + 1, &b1.apply(x.clone()), &b2.apply(x))
            }
        }
        _ => conv_untyped(depth, a, b),
    }
}

#[cfg(test)]
mod tests {
    use std::rc::Rc;

    use super::super::{eval, lift_value, Env, LevelValue};
    use super::*;
    use crate::levels::{Level, StructureId};
    use crate::syntax::Tm;

    fn ev(depth: usize, t: Tm) -> Val {
        let env = Env {
            structure: StructureId::Nat,
            globals: Rc::new(Vec::new()),
            locals: (0..depth).map(Value::var).collect(),
        };
        eval(&env, &t.rc())
    }

    #[test]
    fn eta_for_functions() {
        let f = Value::var(0);
        let expanded = ev(1, Tm::Lam(Tm::App(Tm::Var(1).rc(), Tm::Var(0).rc()).rc()));
        assert!(conv_untyped(1, &f, &expanded));
        assert!(conv_untyped(1, &expanded, &f));
    }

    #[test]
    fn proofs_are_irrelevant() {
        let lt = ev(0, Tm::LtTy(Tm::LZero.rc(), Tm::level_literal(1).rc()));
        assert!(conv(1, &lt, &Value::var(0), &Rc::new(Value::LtTok)));
    }

    #[test]
    fn lifts_are_invisible_to_inhabitants() {
        let two = LevelValue::closed(Level::finite(2));
        let a = Value::var(0);
        let lifted = lift_value(&two, &a);
        assert!(!conv_untyped(1, &a, &lifted));
        assert!(conv_modulo_lift(1, &a, &lifted));
        let pi = ev(1, Tm::Pi(Tm::Var(0).rc(), Tm::Var(1).rc()));
        assert!(conv_modulo_lift(1, &lift_value(&two, &pi), &pi));
    }
}
