//! The acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the report is always printed; the
//! process fails if any criterion fails.

mod common;

use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::rc::Rc;

use common::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use ttfl::elab::{
    apply_coercion, check, check_ty, elab_source, infer, subtype, Ctx, ErrorKind, TypeAtLevel,
};
use ttfl::levels::{self, Level, StructureId};
use ttfl::nbe::{
    coerce_value, conv, conv_untyped, eval, lift_value, quote, quote_level, Env, LevelValue,
    Value,
};
use ttfl::surface::{parse, parse_term, pretty_module, pretty_term};
use ttfl::syntax::{print_term, Coercion, Tm};

const SEED: u64 = 0x5eed_1e7e1;
/// Criterion 3: closed declarations of type Bool or Nat in the corpus.
const MIN_CANONICAL_DECLS: usize = 20;
/// Criterion 4: random types per structure, each with its own level triple.
const LIFT_LAW_SAMPLES: usize = 250;
const LIFT_LAW_FUEL: u32 = 4;
/// Criterion 6: generated `(i, j)` pairs.
const PROOF_PAIRS: usize = 100;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("worked examples accepted", worked_examples),
        ("negative corpus rejected", negative_corpus),
        ("canonicity", canonicity),
        ("lift laws", lift_laws),
        ("strictness", strictness),
        ("proof irrelevance", proof_irrelevance),
        ("level-structure oracles", level_oracles),
        ("coercion laws", coercion_laws),
        ("NbE stability and parser round trip", stability),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    let mut stdout = std::io::stdout().lock();
    for (n, (title, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let (verdict, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        writeln!(stdout, "criterion {}: {verdict} {title}: {detail}", n + 1).unwrap();
    }
    writeln!(stdout, "{} of 9 criteria passed", 9 - failed).unwrap();
    if failed > 0 {
        std::process::exit(1);
    }
}

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = ttfl::cli::run(args.iter().copied(), &mut out, &mut err, false);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn corpus_path(sub: &str, name: &str) -> String {
    corpus_dir().join(sub).join(name).display().to_string()
}

fn worked_examples() -> Outcome {
    let files = [
        ("bounded_poly.ttfl", "nat"),
        ("large_elim.ttfl", "nat"),
        ("transfinite.ttfl", "omega1"),
        ("finite_poly_omega_omega.ttfl", "omega-omega"),
    ];
    for (file, levels) in files {
        let path = corpus_path("accept", file);
        let (code, _, err) = run_cli(&["ttfl", "check", &path, "--levels", levels]);
        ensure!(code == 0, "{file} exited {code}: {err}");
    }
    // the documented structure dependence
    let transfinite = corpus_path("accept", "transfinite.ttfl");
    let (code, _, _) = run_cli(&["ttfl", "check", &transfinite, "--levels", "omega-omega"]);
    ensure!(code == 0, "transfinite.ttfl rejected under omega-omega");
    let (code, _, err) = run_cli(&["ttfl", "check", &transfinite, "--levels", "nat"]);
    ensure!(
        code == 1 && err.contains("LEVEL_ORDER") && err.contains("lomega"),
        "transfinite.ttfl under nat: exit {code}: {err}"
    );
    Ok(format!("{} files exit 0", files.len()))
}

fn negative_corpus() -> Outcome {
    let required = [
        ("paradox_uii.ttfl", "U i i"),
        ("universe_descending.ttfl", "U 1 0"),
        ("omega_under_nat.ttfl", "lomega under nat"),
        ("top_universe_as_term.ttfl", "the top type as a term"),
    ];
    for (file, what) in required {
        let path = corpus_path("reject", file);
        let (code, _, err) = run_cli(&["ttfl", "check", &path]);
        ensure!(
            code == 1 && err.contains(": LEVEL_ORDER: "),
            "{what} ({file}): exit {code}: {err}"
        );
    }
    let all = corpus("reject");
    for (name, text) in &all {
        ttfl::cli::corpus_verdict(text, true).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!(
        "{} guard rails LEVEL_ORDER, {} reject files with their documented kind",
        required.len(),
        all.len()
    ))
}

/// Global indices referenced by a term.
fn globals_in(t: &Tm, out: &mut Vec<usize>) {
    t.any(&mut |s| {
        if let Tm::Global(g, _) = s {
            out.push(*g);
        }
        false
    });
}

fn canonicity() -> Outcome {
    let mut count = 0;
    let mut used = [false; 5];
    for (file, _, m) in accepted_modules() {
        for d in &m.declarations {
            let (nf, ty) = m.normal_form(&d.name).unwrap();
            let canonical = match ty {
                Tm::Bool => matches!(nf, Tm::True | Tm::False),
                Tm::Nat => is_numeral(&nf),
                _ => continue,
            };
            ensure!(canonical, "{file}: {} normalized to {nf:?}", d.name);
            count += 1;
            // the declarations this one depends on, transitively
            let mut todo = vec![m.declarations.iter().position(|e| e.name == d.name).unwrap()];
            let mut seen = Vec::new();
            while let Some(g) = todo.pop() {
                if seen.contains(&g) {
                    continue;
                }
                seen.push(g);
                let e = &m.declarations[g];
                for t in [&e.term, &e.type_term] {
                    globals_in(t, &mut todo);
                    let kinds = [
                        t.any(&mut |s| matches!(s, Tm::If { .. })),
                        t.any(&mut |s| matches!(s, Tm::NatElim { .. })),
                        t.any(&mut |s| matches!(s, Tm::LvlElim { .. })),
                        t.any(&mut |s| matches!(s, Tm::Coerce { .. })),
                        t.any(&mut |s| matches!(s, Tm::Lift { .. })),
                    ];
                    for (u, k) in used.iter_mut().zip(kinds) {
                        *u |= k;
                    }
                }
            }
        }
    }
    ensure!(count >= MIN_CANONICAL_DECLS, "only {count} closed Bool/Nat declarations");
    let names = ["if", "natElim", "lvlElim", "coercions", "lifts"];
    for (u, n) in used.iter().zip(names) {
        ensure!(*u, "no canonical declaration exercises {n}");
    }
    Ok(format!("{count} closed Bool/Nat declarations normalize to constructors"))
}

fn is_numeral(t: &Tm) -> bool {
    let mut t = t;
    while let Tm::Suc(p) = t {
        t = p;
    }
    matches!(t, Tm::Zero)
}

fn closed_env(structure: StructureId) -> Env {
    Env::new(structure, Rc::new(Vec::new()))
}

fn closed(l: Level) -> LevelValue {
    LevelValue::closed(l)
}

fn lift_laws() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut checked = 0;
    for s in StructureId::ALL {
        let levels = s.enumerate(BOX);
        let env = closed_env(s);
        for n in 0..LIFT_LAW_SAMPLES {
            let mut triple: Vec<Level> = levels.choose_multiple(&mut rng, 3).copied().collect();
            triple.sort();
            let [i, j, k] = [triple[0], triple[1], triple[2]];
            let mut gen = TypeGen::new(&mut rng, s);
            let (tm, _) = if n % 2 == 0 {
                gen.ty(i, LIFT_LAW_FUEL)
            } else {
                gen.pi(i, LIFT_LAW_FUEL)
            };
            let a = eval(&env, &tm.clone().rc());
            let one = quote(0, &lift_value(&closed(k), &a));
            let two = quote(0, &lift_value(&closed(k), &lift_value(&closed(j), &a)));
            ensure!(one == two, "{s}: functoriality fails for {tm:?} at {i:?} < {j:?} < {k:?}");
            let lifted = lift_value(&closed(j), &a);
            match &*a {
                Value::Pi(dom, cod) => {
                    let expected = Tm::Pi(
                        quote(0, &lift_value(&closed(j), dom)).rc(),
                        quote(1, &lift_value(&closed(j), &cod.apply(Value::var(0)))).rc(),
                    );
                    ensure!(quote(0, &lifted) == expected, "{s}: lift does not distribute over {tm:?}");
                }
                Value::Univ(lo, _) => {
                    let expected = Value::Univ(lo.clone(), closed(j));
                    ensure!(
                        quote(0, &lifted) == quote(0, &Rc::new(expected)),
                        "{s}: lift of {tm:?} is not the universe at {j:?}"
                    );
                }
                Value::Bool
                | Value::Nat
                | Value::Empty
                | Value::Unit
                | Value::LvlTy
                | Value::LtTy(..) => {
                    ensure!(quote(0, &lifted) == quote(0, &a), "{s}: lift moves base former {tm:?}");
                }
                _ => {}
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} random types over 3 structures"))
}

/// The level to lift a type at `level` to: strictly above when the
/// structure has room, otherwise the top.
fn lift_target(structure: StructureId, level: &LevelValue) -> LevelValue {
    if structure.successor_is_strict() {
        level.succ(structure).succ(structure)
    } else {
        closed(Level::OMEGA)
    }
}

fn strictness() -> Outcome {
    let mut checked = 0;
    for (file, text, _) in accepted_modules() {
        let s = structure_of(&text);
        let module = parse(&text).unwrap();
        let mut ctx = Ctx::new(s);
        for d in &module.declarations {
            let (term, ty) = match &d.annotation {
                Some(ann) => {
                    let (type_term, level) = check_ty(&ctx, ann).unwrap();
                    let ty = ctx.eval(&type_term);
                    let plain = check(&ctx, &d.body, &ty).unwrap();
                    let up = lift_value(&lift_target(s, &level), &ty);
                    let lifted = check(&ctx, &d.body, &up)
                        .map_err(|e| format!("{file}: {} against its lifted type: {e}", d.name))?;
                    ensure!(
                        format!("{plain:?}") == format!("{lifted:?}"),
                        "{file}: {} elaborates differently against a lift",
                        d.name
                    );
                    checked += 1;
                    (plain, TypeAtLevel { ty, level })
                }
                None => {
                    let (t, ty) = infer(&ctx, &d.body).unwrap();
                    let level = ttfl::elab::level_of_type(&ctx, &ty);
                    (t, TypeAtLevel { ty, level })
                }
            };
            let value = ctx.eval(&term);
            ctx.push_global(d.name.clone(), ty, value);
        }
    }
    Ok(format!("{checked} annotated corpus terms identical against lifted types"))
}

fn proof_irrelevance() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED ^ 6);
    let mut pairs = 0;
    while pairs < PROOF_PAIRS {
        let s = *StructureId::ALL.choose(&mut rng).unwrap();
        let levels = s.enumerate(BOX);
        let mut picked: Vec<Level> = levels.choose_multiple(&mut rng, 3).copied().collect();
        picked.sort();
        let [i, m, j] = [picked[0], picked[1], picked[2]].map(level_src);
        let direct = format!("(ltDec {i} {j})");
        let composed = format!("(ltTrans {i} {m} {j} (ltDec {m} {j}) (ltDec {i} {m}))");
        let text = format!(
            "a1 : (f : Lt {i} {j} -> Bool) -> Bool = \\f. f {direct};\n\
             a2 : (f : Lt {i} {j} -> Bool) -> Bool = \\f. f {composed};\n\
             p1 : Lt {i} {j} = {direct};\n\
             p2 : Lt {i} {j} = {composed};\n\
             same : (P : Lt {i} {j} -> U 0 1) -> P {direct} -> P {composed} = \\P x. x;\n\
             T1 : (X : U {i} {j} {direct}) -> Bool = \\X. true;\n\
             T2 : (X : U {i} {j} {composed}) -> Bool = \\X. true;\n\
             codes : U {i} {j} {direct} -> U {i} {j} {composed} = \\X. X;\n"
        );
        let module = elab_source(&text, s).map_err(|e| format!("{s}: {e} in\n{text}"))?;
        for (x, y) in [("a1", "a2"), ("p1", "p2"), ("T1", "T2")] {
            let (nx, tx) = module.normal_form(x).unwrap();
            let (ny, ty) = module.normal_form(y).unwrap();
            ensure!(nx == ny && tx == ty, "{s}: {x} and {y} differ for {i} < {j}");
        }
        pairs += 1;
    }
    Ok(format!("{pairs} pairs, direct and composed proofs interchangeable"))
}

/// An independent encoding of a level as an ordinal below `ω·2`.
fn ordinal(l: Level) -> u64 {
    l.block as u64 * 1_000 + l.offset
}

fn level_oracles() -> Outcome {
    let mut facts = 0usize;
    for s in StructureId::ALL {
        let ls = s.enumerate(BOX);
        let ctx = Ctx::new(s);
        for &a in &ls {
            ensure!(!levels::lt(a, a), "{s}: {a:?} < itself");
            let back = ctx.eval(&quote_level(0, &closed(a))).as_level();
            ensure!(back == closed(a), "{s}: reflection of {a:?} is not the identity");
            for &b in &ls {
                let lt = levels::lt(a, b);
                ensure!(lt == (ordinal(a) < ordinal(b)), "{s}: lt({a:?}, {b:?}) disagrees with the oracle");
                let trichotomy = [lt, a == b, levels::lt(b, a)].iter().filter(|x| **x).count();
                ensure!(trichotomy == 1, "{s}: trichotomy fails on {a:?}, {b:?}");
                ensure!(lt == (levels::rank(a) < levels::rank(b)), "{s}: rank is not an order embedding");
                let sup = levels::sup(a, b);
                ensure!(s.contains(sup) && (sup == a || sup == b), "{s}: sup({a:?}, {b:?}) escapes");
                ensure!(sup == levels::sup(b, a), "{s}: sup is not commutative");
                ensure!(!levels::lt(sup, a) && !levels::lt(sup, b), "{s}: sup is not an upper bound");
                let least = ls
                    .iter()
                    .filter(|c| !levels::lt(**c, a) && !levels::lt(**c, b))
                    .all(|c| !levels::lt(*c, sup));
                ensure!(least, "{s}: sup({a:?}, {b:?}) is not least");
                ensure!(ordinal(sup) == ordinal(a).max(ordinal(b)), "{s}: sup disagrees with the oracle");
                for &c in &ls {
                    if lt && levels::lt(b, c) {
                        ensure!(levels::lt(a, c), "{s}: transitivity fails on {a:?} {b:?} {c:?}");
                        lemma_type(
                            &ctx,
                            &format!(
                                "ltTrans {x} {y} {z} (ltDec {y} {z}) (ltDec {x} {y})",
                                x = level_src(a),
                                y = level_src(b),
                                z = level_src(c)
                            ),
                            a,
                            c,
                        )?;
                    }
                    facts += 1;
                }
            }
            // ltSucSelf exists exactly where the successor is strict
            let succ_text = format!("ltSucSelf {}", level_src(a));
            if s.successor_is_strict() {
                ensure!(levels::lt(a, a.succ(s)), "{s}: {a:?} is not below its successor");
                lemma_type(&ctx, &succ_text, a, a.succ(s))?;
            } else {
                let e = infer(&ctx, &parse_term(&succ_text).unwrap()).unwrap_err();
                ensure!(e.kind == ErrorKind::LevelOrder, "{s}: ltSucSelf available");
            }
            if s.has_omega() && a.is_finite() {
                ensure!(levels::lt(a, Level::OMEGA), "{s}: {a:?} is not below omega");
                lemma_type(&ctx, &format!("ltFinOmega {}", a.offset), a, Level::OMEGA)?;
            }
        }
    }
    Ok(format!("{facts} level triples over 3 structures"))
}

/// Checks that `text` elaborates to a proof of `Lt i j`.
fn lemma_type(ctx: &Ctx, text: &str, i: Level, j: Level) -> Result<(), String> {
    let (_, ty) = infer(ctx, &parse_term(text).unwrap())
        .map_err(|e| format!("{}: `{text}`: {e}", ctx.structure()))?;
    match &*ty {
        Value::LtTy(a, b) if a.as_closed() == Some(i) && b.as_closed() == Some(j) => Ok(()),
        _ => Err(format!("{}: `{text}` has type {}", ctx.structure(), ctx.print_val(&ty))),
    }
}

fn coercion_laws() -> Outcome {
    // reflexivity is the identity on the nose
    let mut refl = 0;
    for (file, _, m) in accepted_modules() {
        let mut ctx = Ctx::new(m.structure);
        for d in &m.declarations {
            ensure!(
                subtype(&ctx, &d.ty.ty, &d.ty.ty) == Some(Coercion::Refl),
                "{file}: {} is not a subtype of itself by reflexivity",
                d.name
            );
            ensure!(
                apply_coercion(Coercion::Refl, d.term.clone(), d.type_term.clone()) == d.term,
                "{file}: reflexive coercion changed {}",
                d.name
            );
            ctx.push_global(d.name.clone(), d.ty.clone(), d.value.clone());
            refl += 1;
        }
    }

    // a Π-coerced identity returns its argument
    let text = "idU : (X : U 1 2) -> U 1 2 = \\X. X;\n\
                narrowed : (X : U 0 2) -> U 2 3 = idU;\n\
                apply : ((X : U 1 2) -> Bool) -> (X : U 0 2) -> Bool = \\f. f;\n\
                idF : ((X : U 1 2) -> Bool) -> (X : U 1 2) -> Bool = \\f. f;\n\
                idF' : ((X : U 1 2) -> Bool) -> (X : U 0 2) -> Bool = idF;\n\
                k : (X : U 1 2) -> Bool = \\X. false;\n\
                r1 : U 2 3 = narrowed Bool;\n\
                r2 : U 2 3 = narrowed (Nat -> Bool);\n\
                r3 : U 2 3 = narrowed (Lvl -> Unit -> Nat);\n\
                r4 : Bool = idF' k Nat;\n";
    let m = elab_source(text, StructureId::Nat).map_err(|e| e.to_string())?;
    let narrowed = m.get("narrowed").unwrap();
    ensure!(
        matches!(&narrowed.term, Tm::Coerce { coercion: Coercion::Pi { .. }, .. }),
        "no Π coercion inserted: {:?}",
        narrowed.term
    );
    let args = ["Bool", "Nat -> Bool", "Lvl -> Unit -> Nat"];
    for (r, arg) in ["r1", "r2", "r3"].iter().zip(args) {
        let expected = elab_source(&format!("a : U 0 2 = {arg};"), StructureId::Nat).unwrap();
        ensure!(
            m.normal_form(r).unwrap().0 == expected.normal_form("a").unwrap().0,
            "coerced identity applied to {arg} does not return it"
        );
    }
    ensure!(m.normal_form("r4").unwrap().0 == Tm::False, "coerced function identity");

    // domains are contravariant
    let ctx = Ctx::new(StructureId::Nat);
    let ty = |t: &str| ctx.eval(&check_ty(&ctx, &parse_term(t).unwrap()).unwrap().0);
    let wide = ty("(X : U 1 2) -> Bool");
    let narrow = ty("(X : U 0 2) -> Bool");
    ensure!(
        matches!(subtype(&ctx, &wide, &narrow), Some(Coercion::Pi { .. })),
        "wider domain is not a subtype"
    );
    ensure!(subtype(&ctx, &narrow, &wide).is_none(), "narrower domain accepted");
    let bad = elab_source(
        "f0 : (X : U 0 2) -> Bool = \\X. true; bad : (X : U 1 2) -> Bool = f0;",
        StructureId::Nat,
    );
    ensure!(
        bad.as_ref().err().map(|e| e.kind) == Some(ErrorKind::NoSubtype),
        "covariant domain use not rejected with NO_SUBTYPE"
    );

    // coercing in two steps agrees with coercing in one
    let mut composed = 0;
    for a1 in 0..=4u64 {
        for a2 in 0..=a1 {
            for a3 in 0..=a2 {
                for (b1, b2, b3) in [(0, 0, 0), (0, 2, 5), (1, 1, 4), (2, 3, 3), (0, 5, 5)] {
                    let family = |a: u64, b: u64| ty(&format!("(X : U {a} 6) -> U {b} 7"));
                    let (fa, fb, fc) = (family(a1, b1), family(a2, b2), family(a3, b3));
                    let ab = subtype(&ctx, &fa, &fb).ok_or("missing A <= B")?;
                    let bc = subtype(&ctx, &fb, &fc).ok_or("missing B <= C")?;
                    let ac = subtype(&ctx, &fa, &fc).ok_or("missing A <= C")?;
                    let inner = ctx.bind("f", fa.clone(), closed(Level::finite(7)));
                    let f = inner.last_value();
                    let env = inner.env();
                    let two = coerce_value(env, &bc, &coerce_value(env, &ab, &f));
                    let one = coerce_value(env, &ac, &f);
                    ensure!(
                        conv(1, &fc, &two, &one),
                        "composite coercion differs for domains {a1},{a2},{a3} and codomains {b1},{b2},{b3}"
                    );
                    composed += 1;
                }
            }
        }
    }
    Ok(format!(
        "{refl} reflexive coercions, 3 Π-coerced identities, {composed} composites"
    ))
}

fn stability() -> Outcome {
    let mut decls = 0;
    for (file, _, m) in accepted_modules() {
        for d in &m.declarations {
            let nf = quote(0, &d.value);
            let again = eval(m.env(), &nf.clone().rc());
            ensure!(conv(0, &d.ty.ty, &d.value, &again), "{file}: {} unstable under eval-quote", d.name);
            ensure!(quote(0, &again) == nf, "{file}: {} normal form is not a fixed point", d.name);
            let ty_nf = quote(0, &d.ty.ty);
            let ty_again = eval(m.env(), &ty_nf.clone().rc());
            ensure!(conv_untyped(0, &d.ty.ty, &ty_again), "{file}: type of {} unstable", d.name);
            decls += 1;
        }
    }
    let mut files = 0;
    for sub in ["accept", "reject"] {
        for (name, text) in corpus(sub) {
            let Ok(first) = parse(&text) else { continue };
            let second = parse(&pretty_module(&first)).map_err(|e| format!("{name}: {e}"))?;
            ensure!(first.alpha_eq(&second), "{name}: parse . print . parse differs");
            files += 1;
        }
    }
    // printed core parses back the same way
    for (name, text, m) in accepted_modules() {
        let core = pretty_module(&m.core_module());
        let first = parse(&core).map_err(|e| format!("{name} core: {e}"))?;
        let second = parse(&pretty_module(&first)).unwrap();
        ensure!(first.alpha_eq(&second), "{name}: printed core does not round trip");
        let s = structure_of(&text);
        elab_source(&core, s).map_err(|e| format!("{name}: printed core rejected: {e}"))?;
        files += 1;
    }
    let mut rng = StdRng::seed_from_u64(SEED ^ 9);
    let mut terms = 0;
    for s in StructureId::ALL {
        for _ in 0..100 {
            let top = *s.enumerate(BOX).last().unwrap();
            let (tm, _) = TypeGen::new(&mut rng, s).ty(top, LIFT_LAW_FUEL);
            let printed = print_term(&tm, &[], &[]);
            let first = parse_term(&printed).map_err(|e| format!("`{printed}`: {e}"))?;
            let second = parse_term(&pretty_term(&first)).unwrap();
            ensure!(first.alpha_eq(&second), "`{printed}` does not round trip");
            terms += 1;
        }
    }
    Ok(format!(
        "{decls} declarations stable, {files} modules and {terms} random types round trip"
    ))
}
