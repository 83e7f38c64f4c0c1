//! Printing core terms back as surface syntax.
//!
//! Binders get invented names, chosen per depth so that output is stable, and
//! primed until they clash with no global, builtin or enclosing binder.

use std::rc::Rc;

use super::{PrimId, Tm};
use crate::surface::{pretty_term, Builtin, SourceTerm, Span, TermKind};

const BASES: [&str; 6] = ["x", "y", "z", "w", "v", "u"];

struct Printer<'a> {
    globals: &'a [String],
    locals: Vec<String>,
}

fn mk(kind: TermKind) -> SourceTerm {
    SourceTerm::new(Span::default(), kind)
}

fn var(name: &str) -> SourceTerm {
    mk(TermKind::Var(name.to_string()))
}

fn builtin(b: Builtin, args: Vec<SourceTerm>) -> SourceTerm {
    args.into_iter().fold(mk(TermKind::Builtin(b)), |f, a| {
        mk(TermKind::App(Rc::new(f), Rc::new(a)))
    })
}

fn prim_builtin(p: PrimId) -> Builtin {
    match p {
        PrimId::LtDec => Builtin::LtDec,
        PrimId::LtFinOmega => Builtin::LtFinOmega,
        PrimId::LtSucSelf => Builtin::LtSucSelf,
        PrimId::LtTrans => Builtin::LtTrans,
    }
}

/// `lsuc^n base`, with `base` returned separately.
fn peel_lsuc(t: &Tm) -> (u64, &Tm) {
    let mut n = 0;
    let mut t = t;
    while let Tm::LSuc(inner) = t {
        n += 1;
        t = inner;
    }
    (n, t)
}

impl Printer<'_> {
    fn fresh(&self) -> String {
        let d = self.locals.len();
        let mut name = BASES[d % BASES.len()].to_string();
        if d >= BASES.len() {
            name.push_str(&(d / BASES.len()).to_string());
        }
        while self.globals.contains(&name)
            || self.locals.contains(&name)
            || Builtin::from_name(&name).is_some()
        {
            name.push('\'');
        }
        name
    }

    fn under<T>(&mut self, f: impl FnOnce(&mut Self, String) -> T) -> T {
        let name = self.fresh();
        self.locals.push(name.clone());
        let out = f(self, name);
        self.locals.pop();
        out
    }

    fn go(&mut self, t: &Tm) -> SourceTerm {
        match t {
            Tm::Var(ix) => match self.locals.len().checked_sub(ix + 1) {
                Some(l) => var(&self.locals[l]),
                None => var(&format!("#{ix}")),
            },
            Tm::Global(_, name) => var(name),
            Tm::Lam(b) => self.under(|p, x| {
                let body = p.go(b);
                mk(TermKind::Lambda(x, Rc::new(body)))
            }),
            Tm::App(f, a) => mk(TermKind::App(Rc::new(self.go(f)), Rc::new(self.go(a)))),
            Tm::Pi(a, b) => {
                let dom = self.go(a);
                self.under(|p, x| {
                    let cod = p.go(b);
                    let x = if b.mentions(0) { x } else { "_".to_string() };
                    mk(TermKind::Pi(x, Rc::new(dom), Rc::new(cod)))
                })
            }
            Tm::Let { ty, def, body } => {
                let def = mk(TermKind::Annotation(Rc::new(self.go(def)), Rc::new(self.go(ty))));
                self.under(|p, x| {
                    let body = p.go(body);
                    mk(TermKind::Let(x, Rc::new(def), Rc::new(body)))
                })
            }

            Tm::Bool => builtin(Builtin::Bool, vec![]),
            Tm::True => builtin(Builtin::True, vec![]),
            Tm::False => builtin(Builtin::False, vec![]),
            Tm::If { motive, scrut, then_, else_ } => {
                let args = [motive, scrut, then_, else_].map(|t| self.go(t));
                builtin(Builtin::If, args.into())
            }
            Tm::Nat => builtin(Builtin::Nat, vec![]),
            Tm::Zero => builtin(Builtin::Zero, vec![]),
            Tm::Suc(n) => builtin(Builtin::Suc, vec![self.go(n)]),
            Tm::NatElim { motive, zero, suc, scrut } => {
                let args = [motive, zero, suc, scrut].map(|t| self.go(t));
                builtin(Builtin::NatElim, args.into())
            }
            Tm::Empty => builtin(Builtin::Empty, vec![]),
            Tm::Exfalso { motive, scrut } => {
                builtin(Builtin::Exfalso, vec![self.go(motive), self.go(scrut)])
            }
            Tm::Unit => builtin(Builtin::Unit, vec![]),
            Tm::Tt => builtin(Builtin::Tt, vec![]),

            Tm::Univ(i, j, p) => {
                let mut args = vec![self.go(i), self.go(j)];
                if **p != Tm::Erased {
                    args.push(self.go(p));
                }
                builtin(Builtin::U, args)
            }
            Tm::Lift { proof, ty, .. } => builtin(Builtin::Lift, vec![self.go(proof), self.go(ty)]),

            Tm::LvlTy => builtin(Builtin::Lvl, vec![]),
            Tm::LZero | Tm::LOmega | Tm::LSuc(_) => match peel_lsuc(t) {
                (n, Tm::LZero) => mk(TermKind::Literal(n)),
                (n, base) => {
                    let base = match base {
                        Tm::LOmega => builtin(Builtin::LOmega, vec![]),
                        other => self.go(other),
                    };
                    (0..n).fold(base, |acc, _| builtin(Builtin::LSuc, vec![acc]))
                }
            },
            Tm::LSup(a, b) => builtin(Builtin::LSup, vec![self.go(a), self.go(b)]),
            Tm::LtTy(i, j) => builtin(Builtin::Lt, vec![self.go(i), self.go(j)]),
            Tm::LtPrim(p, args) => builtin(prim_builtin(*p), args.iter().map(|a| self.go(a)).collect()),
            Tm::LvlElim { motive, zero, suc, scrut } => {
                let args = [motive, zero, suc, scrut].map(|t| self.go(t));
                builtin(Builtin::LvlElim, args.into())
            }
            Tm::Erased => var("_"),
            Tm::Coerce { target, term, .. } => {
                builtin(Builtin::Coerce, vec![self.go(target), self.go(term)])
            }
        }
    }
}

/// Converts a core term under the binders `locals` (outermost first) into
/// surface syntax.
pub fn to_source(t: &Tm, locals: &[String], globals: &[String]) -> SourceTerm {
    Printer {
        globals,
        locals: locals.to_vec(),
    }
    .go(t)
}

pub fn print_term(t: &Tm, locals: &[String], globals: &[String]) -> String {
    pretty_term(&to_source(t, locals, globals))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(t: Tm) -> String {
        print_term(&t, &[], &["x".to_string()])
    }

    #[test]
    fn binders_avoid_globals() {
        let id = Tm::Lam(Tm::Var(0).rc());
        assert_eq!(p(id), "\\x'. x'");
        let k = Tm::Lam(Tm::Lam(Tm::Var(1).rc()).rc());
        assert_eq!(p(k), "\\x'. \\y. x'");
    }

    #[test]
    fn arrows_and_levels() {
        let arrow = Tm::Pi(Tm::Bool.rc(), Tm::Nat.rc());
        assert_eq!(p(arrow), "Bool -> Nat");
        let u = Tm::Univ(
            Tm::LZero.rc(),
            Tm::LSuc(Tm::LOmega.rc()).rc(),
            Tm::Erased.rc(),
        );
        assert_eq!(p(u), "U 0 (lsuc lomega)");
        assert_eq!(p(Tm::numeral(2)), "suc (suc zero)");
        let dep = Tm::Pi(Tm::Univ(Tm::LZero.rc(), Tm::level_literal(1).rc(), Tm::Erased.rc()).rc(), Tm::Var(0).rc());
        assert_eq!(p(dep), "(x' : U 0 1) -> x'");
    }
}
