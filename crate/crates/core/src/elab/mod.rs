//! Bidirectional elaboration of surface terms into the core language.
//!
//! Every type is elaborated together with its level. Checking a term against
//! a lifted type is silent, since lifting is the identity on terms; genuine
//! subtyping between universes and functions inserts a coercion node.

mod check;
mod ctx;
mod error;
mod typing;


pub use check::{apply_coercion, check, check_ty, fin_to_lvl, infer, subtype, MAX_LITERAL};
pub use ctx::Ctx;
pub use error::{ElabError, ErrorKind, Result};
pub use typing::{infer_neutral_type, level_of_type};

use std::rc::Rc;

use crate::levels::StructureId;
use crate::nbe::{quote, Env, LevelValue, Val};
use crate::surface::{Declaration, Module, SourceTerm};
use crate::syntax::{to_source, Tm};

/// A type value together with the level it was shown to live at.
#[derive(Debug, Clone)]
pub struct TypeAtLevel {
    pub ty: Val,
    pub level: LevelValue,
}

/// Infers the type of `t` together with that type's level.
pub fn infer_type(ctx: &Ctx, t: &SourceTerm) -> Result<(Tm, TypeAtLevel)> {
    let (tm, ty) = infer(ctx, t)?;
    let level = level_of_type(ctx, &ty);
    Ok((tm, TypeAtLevel { ty, level }))
}

/// Checks `t` against a type already known to be valid.
pub fn check_type(ctx: &Ctx, t: &SourceTerm, expected: &TypeAtLevel) -> Result<Tm> {
    check(ctx, t, &expected.ty)
}

/// Reads a term of type `Lvl` as a level.
pub fn reflect_level(ctx: &Ctx, t: &Tm) -> LevelValue {
    ctx.eval(t).as_level()
}

#[derive(Debug, Clone)]
pub struct ElaboratedDecl {
    pub name: String,
    /// The declared type, or the read-back inferred type.
    pub type_term: Tm,
    pub ty: TypeAtLevel,
    pub term: Tm,
    pub value: Val,
}

#[derive(Debug, Clone)]
pub struct ElaboratedModule {
    pub structure: StructureId,
    pub declarations: Vec<ElaboratedDecl>,
    env: Env,
}

impl ElaboratedModule {
    pub fn get(&self, name: &str) -> Option<&ElaboratedDecl> {
        self.declarations.iter().find(|d| d.name == name)
    }

    /// Environment holding every declaration's value.
    pub fn env(&self) -> &Env {
        &self.env
    }

    pub fn names(&self) -> Vec<String> {
        self.declarations.iter().map(|d| d.name.clone()).collect()
    }

    /// Normal forms of a declaration's value and type.
    pub fn normal_form(&self, name: &str) -> Option<(Tm, Tm)> {
        let d = self.get(name)?;
        Some((quote(0, &d.value), quote(0, &d.ty.ty)))
    }

    /// The elaborated declarations as a surface module.
    pub fn core_module(&self) -> Module {
        let names = self.names();
        Module {
            declarations: self
                .declarations
                .iter()
                .enumerate()
                .map(|(k, d)| Declaration {
                    name: d.name.clone(),
                    name_span: Default::default(),
                    annotation: Some(to_source(&d.type_term, &[], &names[..k])),
                    body: to_source(&d.term, &[], &names[..k]),
                })
                .collect(),
        }
    }
}

/// Elaborates declarations in order; the first error aborts.
pub fn elab_module(m: &Module, structure: StructureId) -> Result<ElaboratedModule> {
    let mut ctx = Ctx::new(structure);
    let mut declarations = Vec::new();
    for d in &m.declarations {
        let (type_term, ty, term) = match &d.annotation {
            Some(ann) => {
                let (type_term, level) = check_ty(&ctx, ann)?;
                let ty = ctx.eval(&type_term);
                let term = check(&ctx, &d.body, &ty)?;
                (type_term, TypeAtLevel { ty, level }, term)
            }
            None => {
                let (term, ty) = infer_type(&ctx, &d.body)?;
                (ctx.quote(&ty.ty), ty, term)
            }
        };
        let value = ctx.eval(&term);
        ctx.push_global(d.name.clone(), ty.clone(), value.clone());
        declarations.push(ElaboratedDecl {
            name: d.name.clone(),
            type_term,
            ty,
            term,
            value,
        });
    }
    Ok(ElaboratedModule {
        structure,
        declarations,
        env: Env {
            structure,
            globals: Rc::clone(&ctx.env().globals),
            locals: Vec::new(),
        },
    })
}

/// Parses and elaborates a source text.
pub fn elab_source(text: &str, structure: StructureId) -> Result<ElaboratedModule> {
    let module = crate::surface::parse(text)?;
    elab_module(&module, structure)
}
