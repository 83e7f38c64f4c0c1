use std::rc::Rc;

use super::ctx::Lookup;
use super::error::{ElabError, ErrorKind, Result};
use super::typing::level_of_type;
use super::Ctx;
use crate::levels::{self, Level, StructureId};
use crate::nbe::{apply, coerce_value, conv_modulo_lift, quote_level, LevelValue, Val, Value};
use crate::surface::{pretty_term, Builtin, SourceTerm, Span, TermKind};
use crate::syntax::{Coercion, PrimId, Tm};

/// Literals are unary in the kernel; larger ones are refused rather than
/// allowed to exhaust memory.
pub const MAX_LITERAL: u64 = 10_000;

fn err(kind: ErrorKind, span: Span, message: impl Into<String>) -> ElabError {
    ElabError::new(kind, span, message)
}

fn arity(b: Builtin) -> usize {
    use Builtin::*;
    match b {
        Bool | Nat | Empty | Unit | Lvl | True | False | Zero | Tt | LZero | LOmega => 0,
        Suc | LSuc | LtFinOmega | LtSucSelf => 1,
        U | Lift | Lt | Exfalso | LSup | LtDec | Coerce => 2,
        If | NatElim | LvlElim => 4,
        LtTrans => 5,
    }
}

/// `t` as a type former applied to arguments, if it is one.
fn type_former(t: &SourceTerm) -> Option<(Builtin, Vec<&SourceTerm>)> {
    let (head, args) = t.spine();
    match head.kind {
        TermKind::Builtin(b) if b.is_type_former() => Some((b, args)),
        _ => None,
    }
}

fn is_type_syntax(t: &SourceTerm) -> bool {
    matches!(t.kind, TermKind::Pi(..)) || type_former(t).is_some()
}

/// `l ≤ i` when it is evident: equal, `l` is zero, or both closed and ordered.
fn level_le(l: &LevelValue, i: &LevelValue) -> bool {
    l == i || *l == LevelValue::zero() || l.closed_lt(i) == Some(true)
}

/// Types whose value is unchanged by lifting.
fn lift_invariant(v: &Val) -> bool {
    matches!(
        **v,
        Value::Bool | Value::Nat | Value::Empty | Value::Unit | Value::LvlTy | Value::LtTy(..)
    )
}

fn literal_bound(span: Span, n: u64) -> Result<()> {
    if n > MAX_LITERAL {
        return Err(err(
            ErrorKind::Mismatch,
            span,
            format!("literal {n} exceeds the supported maximum {MAX_LITERAL}"),
        ));
    }
    Ok(())
}

/// Elaborates `t` as a type, returning it with the level it lives at.
pub fn check_ty(ctx: &Ctx, t: &SourceTerm) -> Result<(Tm, LevelValue)> {
    if let TermKind::Pi(x, dom, cod) = &t.kind {
        let (a, la) = check_ty(ctx, dom)?;
        let inner = ctx.bind(x, ctx.eval(&a), la.clone());
        let (b, lb) = check_ty(&inner, cod)?;
        if lb.mentions_var(ctx.depth()) {
            return Err(err(
                ErrorKind::LevelOrder,
                t.span,
                format!(
                    "the level `{}` of the codomain depends on the bound variable `{x}`",
                    inner.print_level(&lb)
                ),
            ));
        }
        return Ok((Tm::Pi(a.rc(), b.rc()), la.sup(&lb)));
    }
    if let Some((b, args)) = type_former(t) {
        return former(ctx, t, b, &args);
    }
    let (tm, ty) = infer(ctx, t)?;
    match &*ty {
        Value::Univ(i, _) => Ok((tm, i.clone())),
        _ => Err(err(
            ErrorKind::NotAType,
            t.span,
            format!("`{}` has type `{}`, which is not a universe", pretty_term(t), ctx.print_val(&ty)),
        )),
    }
}

fn check_level(ctx: &Ctx, t: &SourceTerm) -> Result<(Tm, LevelValue)> {
    let tm = check(ctx, t, &Rc::new(Value::LvlTy))?;
    let v = ctx.eval(&tm).as_level();
    Ok((tm, v))
}

fn former(ctx: &Ctx, t: &SourceTerm, b: Builtin, args: &[&SourceTerm]) -> Result<(Tm, LevelValue)> {
    let expected = if b == Builtin::U { 2..=3 } else { arity(b)..=arity(b) };
    if !expected.contains(&args.len()) {
        return Err(err(
            ErrorKind::Mismatch,
            t.span,
            format!(
                "`{b}` expects {} argument(s), got {}",
                if b == Builtin::U { "2 or 3".to_string() } else { arity(b).to_string() },
                args.len()
            ),
        ));
    }
    let zero = LevelValue::zero();
    match b {
        Builtin::Bool => Ok((Tm::Bool, zero)),
        Builtin::Nat => Ok((Tm::Nat, zero)),
        Builtin::Empty => Ok((Tm::Empty, zero)),
        Builtin::Unit => Ok((Tm::Unit, zero)),
        Builtin::Lvl => Ok((Tm::LvlTy, zero)),
        Builtin::Lt => {
            let (i, _) = check_level(ctx, args[0])?;
            let (j, _) = check_level(ctx, args[1])?;
            Ok((Tm::LtTy(i.rc(), j.rc()), zero))
        }
        Builtin::U => {
            let (i, vi) = check_level(ctx, args[0])?;
            let (j, vj) = check_level(ctx, args[1])?;
            let p = match args.get(2) {
                Some(p) => check(ctx, p, &Rc::new(Value::LtTy(vi, vj.clone())))?,
                None => match (vi.as_closed(), vj.as_closed()) {
                    (Some(a), Some(c)) if levels::lt(a, c) => {
                        Tm::LtPrim(PrimId::LtDec, vec![i.clone().rc(), j.clone().rc()])
                    }
                    (Some(_), Some(_)) => {
                        return Err(err(
                            ErrorKind::LevelOrder,
                            t.span,
                            format!(
                                "`U {} {}` requires the first level to be below the second",
                                ctx.print_tm(&i),
                                ctx.print_tm(&j)
                            ),
                        ))
                    }
                    _ => {
                        return Err(err(
                            ErrorKind::LevelOrder,
                            t.span,
                            format!(
                                "a universe over open levels needs an explicit proof of `Lt {} {}`",
                                ctx.print_tm(&i),
                                ctx.print_tm(&j)
                            ),
                        ))
                    }
                },
            };
            Ok((Tm::Univ(i.rc(), j.rc(), p.rc()), vj))
        }
        Builtin::Lift => {
            let (p, pty) = infer(ctx, args[0])?;
            let (vi, vj) = match &*pty {
                Value::LtTy(i, j) => (i.clone(), j.clone()),
                _ => {
                    return Err(err(
                        ErrorKind::Mismatch,
                        args[0].span,
                        format!(
                            "`Lift` expects a proof of `Lt i j`, found a term of type `{}`",
                            ctx.print_val(&pty)
                        ),
                    ))
                }
            };
            let (a, la) = check_ty(ctx, args[1])?;
            if !level_le(&la, &vi) {
                return Err(err(
                    ErrorKind::LevelOrder,
                    args[1].span,
                    format!(
                        "`Lift` expects a type at level `{}`, but `{}` is at level `{}`",
                        ctx.print_level(&vi),
                        pretty_term(args[1]),
                        ctx.print_level(&la)
                    ),
                ));
            }
            let level = quote_level(ctx.depth(), &vj);
            Ok((
                Tm::Lift {
                    level: level.rc(),
                    proof: p.rc(),
                    ty: a.rc(),
                },
                vj,
            ))
        }
        _ => unreachable!("not a type former: {b}"),
    }
}

/// Infers the universe of a type written in term position.
fn infer_type_syntax(ctx: &Ctx, t: &SourceTerm) -> Result<(Tm, Val)> {
    let (tm, l) = check_ty(ctx, t)?;
    let structure = ctx.structure();
    let next = match l.as_closed() {
        Some(c) => {
            let s = c.succ(structure);
            if !levels::lt(c, s) {
                return Err(err(
                    ErrorKind::LevelOrder,
                    t.span,
                    format!(
                        "`{}` is a type at level `{}`, which lies in no universe",
                        pretty_term(t),
                        ctx.print_level(&l)
                    ),
                ));
            }
            LevelValue::closed(s)
        }
        None if structure.successor_is_strict() => l.succ(structure),
        None => {
            return Err(err(
                ErrorKind::LevelOrder,
                t.span,
                format!(
                    "`{}` is a type at the open level `{}`, which may be the top level and so lies in no universe",
                    pretty_term(t),
                    ctx.print_level(&l)
                ),
            ))
        }
    };
    Ok((tm, Rc::new(Value::Univ(l, next))))
}

pub fn infer(ctx: &Ctx, t: &SourceTerm) -> Result<(Tm, Val)> {
    match &t.kind {
        TermKind::Var(x) => match ctx.lookup(x) {
            Some(Lookup::Local(ix, ty)) => Ok((Tm::Var(ix), ty)),
            Some(Lookup::Global(g, ty)) => Ok((Tm::Global(g, x.clone()), ty.ty)),
            None => Err(err(ErrorKind::Unbound, t.span, format!("unbound variable `{x}`"))),
        },
        TermKind::Annotation(e, ty) => {
            let (ty, _) = check_ty(ctx, ty)?;
            let vty = ctx.eval(&ty);
            let e = check(ctx, e, &vty)?;
            Ok((e, vty))
        }
        TermKind::Lambda(..) => Err(err(
            ErrorKind::Mismatch,
            t.span,
            "cannot infer the type of a lambda; add an annotation",
        )),
        TermKind::Let(x, def, body) => {
            let (d, dty) = infer(ctx, def)?;
            let inner = ctx.define(x, dty.clone(), level_of_type(ctx, &dty), ctx.eval(&d));
            let (b, bty) = infer(&inner, body)?;
            let ty = ctx.quote(&dty);
            Ok((
                Tm::Let {
                    ty: ty.rc(),
                    def: d.rc(),
                    body: b.rc(),
                },
                bty,
            ))
        }
        TermKind::Literal(n) => {
            literal_bound(t.span, *n)?;
            Ok((Tm::numeral(*n), Rc::new(Value::Nat)))
        }
        _ if is_type_syntax(t) => infer_type_syntax(ctx, t),
        _ => infer_app(ctx, t),
    }
}

fn infer_app(ctx: &Ctx, t: &SourceTerm) -> Result<(Tm, Val)> {
    let (head, args) = t.spine();
    let (mut tm, mut ty, rest) = match head.kind {
        TermKind::Builtin(b) => {
            let n = arity(b);
            if args.len() < n {
                return Err(err(
                    ErrorKind::Mismatch,
                    t.span,
                    format!("`{b}` expects {n} argument(s), got {}", args.len()),
                ));
            }
            let (tm, ty) = builtin(ctx, t, b, &args[..n])?;
            (tm, ty, &args[n..])
        }
        _ => {
            let (tm, ty) = infer(ctx, head)?;
            (tm, ty, &args[..])
        }
    };
    let mut span = head.span;
    for arg in rest {
        let fty = ty.clone();
        match &*fty {
            Value::Pi(dom, cod) => {
                let a = check(ctx, arg, dom)?;
                ty = cod.apply(ctx.eval(&a));
                tm = Tm::App(tm.rc(), a.rc());
                span = span.merge(arg.span);
            }
            _ => {
                return Err(err(
                    ErrorKind::Mismatch,
                    span,
                    format!(
                        "`{}` has type `{}`, which is not a function type",
                        ctx.print_tm(&tm),
                        ctx.print_val(&fty)
                    ),
                ))
            }
        }
    }
    Ok((tm, ty))
}

/// Elaborates an eliminator motive over `dom`, returning it and its value.
fn motive(ctx: &Ctx, m: &SourceTerm, dom: Val) -> Result<(Tm, Val)> {
    let tm = match &m.kind {
        TermKind::Lambda(x, body) => {
            let inner = ctx.bind(x, dom.clone(), level_of_type(ctx, &dom));
            let (b, _) = check_ty(&inner, body)?;
            Tm::Lam(b.rc())
        }
        _ => {
            let (tm, ty) = infer(ctx, m)?;
            let ok = match &*ty {
                Value::Pi(d, cod) => {
                    conv_modulo_lift(ctx.depth(), d, &dom)
                        && matches!(*cod.apply(Value::fresh(ctx.depth(), d)), Value::Univ(..))
                }
                _ => false,
            };
            if !ok {
                return Err(err(
                    ErrorKind::Mismatch,
                    m.span,
                    format!(
                        "expected a family of types over `{}`, found a term of type `{}`",
                        ctx.print_val(&dom),
                        ctx.print_val(&ty)
                    ),
                ));
            }
            tm
        }
    };
    let v = ctx.eval(&tm);
    Ok((tm, v))
}

/// `(n : D) -> M n -> M (step n)` for a motive value `mv`.
fn step_type(ctx: &Ctx, mv: &Val, dom: Tm, step: fn(Tm) -> Tm) -> Val {
    let t = Tm::Pi(
        dom.rc(),
        Tm::Pi(
            Tm::App(Tm::Var(1).rc(), Tm::Var(0).rc()).rc(),
            Tm::App(Tm::Var(2).rc(), step(Tm::Var(1)).rc()).rc(),
        )
        .rc(),
    );
    crate::nbe::eval(&ctx.env().extend(mv.clone()), &t.rc())
}

/// `finToLvl n`: the level obtained by iterating `lsuc` `n` times.
pub fn fin_to_lvl(n: Tm) -> Tm {
    Tm::NatElim {
        motive: Tm::Lam(Tm::LvlTy.rc()).rc(),
        zero: Tm::LZero.rc(),
        suc: Tm::Lam(Tm::Lam(Tm::LSuc(Tm::Var(0).rc()).rc()).rc()).rc(),
        scrut: n.rc(),
    }
}

fn unavailable(ctx: &Ctx, span: Span, what: &str) -> ElabError {
    err(
        ErrorKind::LevelOrder,
        span,
        format!("{what} is not available under the {} level structure", ctx.structure().flag_name()),
    )
}

fn builtin(ctx: &Ctx, t: &SourceTerm, b: Builtin, args: &[&SourceTerm]) -> Result<(Tm, Val)> {
    let structure = ctx.structure();
    let val = |v: Value| Rc::new(v);
    let lvl = || val(Value::LvlTy);
    Ok(match b {
        Builtin::True => (Tm::True, val(Value::Bool)),
        Builtin::False => (Tm::False, val(Value::Bool)),
        Builtin::Zero => (Tm::Zero, val(Value::Nat)),
        Builtin::Tt => (Tm::Tt, val(Value::Unit)),
        Builtin::Suc => {
            let n = check(ctx, args[0], &val(Value::Nat))?;
            (Tm::Suc(n.rc()), val(Value::Nat))
        }
        Builtin::LZero => (Tm::LZero, lvl()),
        Builtin::LOmega => {
            if !structure.has_omega() {
                return Err(unavailable(ctx, t.span, "`lomega`"));
            }
            (Tm::LOmega, lvl())
        }
        Builtin::LSuc => {
            let (l, _) = check_level(ctx, args[0])?;
            (Tm::LSuc(l.rc()), lvl())
        }
        Builtin::LSup => {
            let (a, _) = check_level(ctx, args[0])?;
            let (c, _) = check_level(ctx, args[1])?;
            (Tm::LSup(a.rc(), c.rc()), lvl())
        }
        Builtin::If => {
            let (m, mv) = motive(ctx, args[0], val(Value::Bool))?;
            let s = check(ctx, args[1], &val(Value::Bool))?;
            let then_ = check(ctx, args[2], &apply(&mv, val(Value::True)))?;
            let else_ = check(ctx, args[3], &apply(&mv, val(Value::False)))?;
            let ty = apply(&mv, ctx.eval(&s));
            let tm = Tm::If {
                motive: m.rc(),
                scrut: s.rc(),
                then_: then_.rc(),
                else_: else_.rc(),
            };
            (tm, ty)
        }
        Builtin::NatElim => {
            let (m, mv) = motive(ctx, args[0], val(Value::Nat))?;
            let zero = check(ctx, args[1], &apply(&mv, val(Value::Zero)))?;
            let suc = check(ctx, args[2], &step_type(ctx, &mv, Tm::Nat, |n| Tm::Suc(n.rc())))?;
            let n = check(ctx, args[3], &val(Value::Nat))?;
            let ty = apply(&mv, ctx.eval(&n));
            let tm = Tm::NatElim {
                motive: m.rc(),
                zero: zero.rc(),
                suc: suc.rc(),
                scrut: n.rc(),
            };
            (tm, ty)
        }
        Builtin::LvlElim => {
            if structure != StructureId::Nat {
                return Err(unavailable(ctx, t.span, "`lvlElim`"));
            }
            let (m, mv) = motive(ctx, args[0], lvl())?;
            let zero = check(ctx, args[1], &apply(&mv, Value::level(LevelValue::zero())))?;
            let suc = check(ctx, args[2], &step_type(ctx, &mv, Tm::LvlTy, |l| Tm::LSuc(l.rc())))?;
            let (l, vl) = check_level(ctx, args[3])?;
            let ty = apply(&mv, Value::level(vl));
            let tm = Tm::LvlElim {
                motive: m.rc(),
                zero: zero.rc(),
                suc: suc.rc(),
                scrut: l.rc(),
            };
            (tm, ty)
        }
        Builtin::Exfalso => {
            let (m, _) = check_ty(ctx, args[0])?;
            let e = check(ctx, args[1], &val(Value::Empty))?;
            let ty = ctx.eval(&m);
            (
                Tm::Exfalso {
                    motive: m.rc(),
                    scrut: e.rc(),
                },
                ty,
            )
        }
        Builtin::LtDec => {
            let (i, vi) = check_level(ctx, args[0])?;
            let (j, vj) = check_level(ctx, args[1])?;
            if vi.closed_lt(&vj) != Some(true) {
                return Err(err(
                    ErrorKind::LevelOrder,
                    t.span,
                    format!(
                        "`ltDec` needs closed levels in order, got `{}` and `{}`",
                        ctx.print_level(&vi),
                        ctx.print_level(&vj)
                    ),
                ));
            }
            (
                Tm::LtPrim(PrimId::LtDec, vec![i.rc(), j.rc()]),
                val(Value::LtTy(vi, vj)),
            )
        }
        Builtin::LtFinOmega => {
            if !structure.has_omega() {
                return Err(unavailable(ctx, t.span, "`ltFinOmega`"));
            }
            let n = check(ctx, args[0], &val(Value::Nat))?;
            let fin = ctx.eval(&fin_to_lvl(n.clone())).as_level();
            (
                Tm::LtPrim(PrimId::LtFinOmega, vec![n.rc()]),
                val(Value::LtTy(fin, LevelValue::closed(Level::OMEGA))),
            )
        }
        Builtin::LtSucSelf => {
            if !structure.successor_is_strict() {
                return Err(unavailable(ctx, t.span, "`ltSucSelf`"));
            }
            let (l, vl) = check_level(ctx, args[0])?;
            let next = vl.succ(structure);
            (
                Tm::LtPrim(PrimId::LtSucSelf, vec![l.rc()]),
                val(Value::LtTy(vl, next)),
            )
        }
        Builtin::LtTrans => {
            let (i, vi) = check_level(ctx, args[0])?;
            let (j, vj) = check_level(ctx, args[1])?;
            let (k, vk) = check_level(ctx, args[2])?;
            let p = check(ctx, args[3], &val(Value::LtTy(vj.clone(), vk.clone())))?;
            let q = check(ctx, args[4], &val(Value::LtTy(vi.clone(), vj)))?;
            (
                Tm::LtPrim(PrimId::LtTrans, vec![i.rc(), j.rc(), k.rc(), p.rc(), q.rc()]),
                val(Value::LtTy(vi, vk)),
            )
        }
        Builtin::Coerce => {
            let (target, _) = check_ty(ctx, args[0])?;
            let vt = ctx.eval(&target);
            let (tm, ty) = infer(ctx, args[1])?;
            if conv_modulo_lift(ctx.depth(), &ty, &vt) {
                return Ok((tm, vt));
            }
            match subtype(ctx, &ty, &vt) {
                Some(c) => (apply_coercion(c, tm, target), vt),
                None => {
                    return Err(err(
                        ErrorKind::NoSubtype,
                        t.span,
                        format!(
                            "`{}` is not a subtype of `{}`",
                            ctx.print_val(&ty),
                            ctx.print_val(&vt)
                        ),
                    ))
                }
            }
        }
        Builtin::U | Builtin::Lift | Builtin::Bool | Builtin::Nat | Builtin::Empty | Builtin::Unit
        | Builtin::Lvl | Builtin::Lt => unreachable!("type formers take the type path"),
    })
}

pub fn check(ctx: &Ctx, t: &SourceTerm, expected: &Val) -> Result<Tm> {
    match (&t.kind, &**expected) {
        (TermKind::Lambda(x, body), Value::Pi(dom, cod)) => {
            let inner = ctx.bind(x, dom.clone(), level_of_type(ctx, dom));
            let b = check(&inner, body, &cod.apply(inner.last_value()))?;
            Ok(Tm::Lam(b.rc()))
        }
        (TermKind::Lambda(..), _) => Err(err(
            ErrorKind::Mismatch,
            t.span,
            format!("expected a term of type `{}`, found a lambda", ctx.print_val(expected)),
        )),
        (TermKind::Let(x, def, body), _) => {
            let (d, dty) = infer(ctx, def)?;
            let inner = ctx.define(x, dty.clone(), level_of_type(ctx, &dty), ctx.eval(&d));
            let b = check(&inner, body, expected)?;
            Ok(Tm::Let {
                ty: ctx.quote(&dty).rc(),
                def: d.rc(),
                body: b.rc(),
            })
        }
        (TermKind::Literal(n), Value::Nat) => {
            literal_bound(t.span, *n)?;
            Ok(Tm::numeral(*n))
        }
        (TermKind::Literal(n), Value::LvlTy) => {
            literal_bound(t.span, *n)?;
            Ok(Tm::level_literal(*n))
        }
        (_, Value::Univ(i, _)) if is_type_syntax(t) => {
            let (tm, l) = check_ty(ctx, t)?;
            if l == *i {
                return Ok(tm);
            }
            if !level_le(&l, i) {
                return Err(err(
                    ErrorKind::LevelOrder,
                    t.span,
                    format!(
                        "`{}` is a type at level `{}`, which does not fit in `{}`",
                        pretty_term(t),
                        ctx.print_level(&l),
                        ctx.print_val(expected)
                    ),
                ));
            }
            if lift_invariant(&ctx.eval(&tm)) {
                return Ok(tm);
            }
            let coercion = Coercion::Univ {
                from: quote_level(ctx.depth(), &l).rc(),
                to: quote_level(ctx.depth(), i).rc(),
            };
            Ok(apply_coercion(coercion, tm, coercion_target(ctx, expected)))
        }
        _ => {
            let (tm, ty) = infer(ctx, t)?;
            if conv_modulo_lift(ctx.depth(), &ty, expected) {
                return Ok(tm);
            }
            if let Some(c) = subtype(ctx, &ty, expected) {
                return Ok(apply_coercion(c, tm, coercion_target(ctx, expected)));
            }
            let kind = match (&*ty, &**expected) {
                (Value::Pi(..), Value::Pi(..)) | (Value::Univ(..), Value::Univ(..)) => {
                    ErrorKind::NoSubtype
                }
                _ => ErrorKind::Mismatch,
            };
            Err(err(
                kind,
                t.span,
                format!(
                    "expected a term of type `{}`, found `{}` of type `{}`",
                    ctx.print_val(expected),
                    pretty_term(t),
                    ctx.print_val(&ty)
                ),
            ))
        }
    }
}

/// A coercion from `a` to `b`, if `a ≤ b` is derivable.
pub fn subtype(ctx: &Ctx, a: &Val, b: &Val) -> Option<Coercion> {
    if conv_modulo_lift(ctx.depth(), a, b) {
        return Some(Coercion::Refl);
    }
    match (&**a, &**b) {
        (Value::Univ(i, _), Value::Univ(i2, _)) => level_le(i, i2).then(|| Coercion::Univ {
            from: quote_level(ctx.depth(), i).rc(),
            to: quote_level(ctx.depth(), i2).rc(),
        }),
        (Value::Pi(a1, b1), Value::Pi(a2, b2)) => {
            let domain = subtype(ctx, a2, a1)?;
            let inner = ctx.bind("_", a2.clone(), level_of_type(ctx, a2));
            let x2 = inner.last_value();
            let x1 = coerce_value(ctx.env(), &domain, &x2);
            let result = subtype(&inner, &b1.apply(x1), &b2.apply(x2))?;
            Some(if domain.is_refl() && result.is_refl() {
                Coercion::Refl
            } else {
                Coercion::Pi {
                    domain: Box::new(domain),
                    result: Box::new(result),
                }
            })
        }
        _ => None,
    }
}

/// The type recorded on an inserted coercion. Lifts are dropped and every
/// universe gets the successor of its index as its own level, so checking
/// against a lifted type records the same target.
fn coercion_target(ctx: &Ctx, expected: &Val) -> Tm {
    unlift(ctx.structure(), ctx.quote(expected))
}

fn unlift(structure: StructureId, t: Tm) -> Tm {
    match t {
        Tm::Lift { ty, .. } => unlift(structure, (*ty).clone()),
        Tm::Pi(a, b) => Tm::Pi(
            unlift(structure, (*a).clone()).rc(),
            unlift(structure, (*b).clone()).rc(),
        ),
        Tm::Univ(i, _, _) => {
            let open = i.any(&mut |t| matches!(t, Tm::Var(_)));
            let proof = if open && structure.successor_is_strict() {
                Tm::LtPrim(PrimId::LtSucSelf, vec![i.clone()])
            } else {
                Tm::Erased
            };
            Tm::Univ(i.clone(), Tm::LSuc(i).rc(), proof.rc())
        }
        other => other,
    }
}

/// Wraps `t` in a coercion to `target`; the identity coercion adds nothing.
pub fn apply_coercion(c: Coercion, t: Tm, target: Tm) -> Tm {
    if c.is_refl() {
        t
    } else {
        Tm::Coerce {
            coercion: c,
            target: target.rc(),
            term: t.rc(),
        }
    }
}
