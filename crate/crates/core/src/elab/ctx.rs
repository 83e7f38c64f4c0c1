use std::rc::Rc;

use super::TypeAtLevel;
use crate::levels::StructureId;
use crate::nbe::{self, Env, LevelValue, Val, Value};
use crate::syntax::{print_term, Tm};

#[derive(Debug, Clone, Default)]
struct Globals {
    names: Vec<String>,
    types: Vec<TypeAtLevel>,
}

/// Elaboration context: the global declarations so far and a telescope of
/// local binders, each with its type and the level of that type.
#[derive(Debug, Clone)]
pub struct Ctx {
    globals: Rc<Globals>,
    names: Vec<String>,
    types: Vec<Val>,
    levels: Vec<LevelValue>,
    env: Env,
}

pub(super) enum Lookup {
    Local(usize, Val),
    Global(usize, TypeAtLevel),
}

impl Ctx {
    pub fn new(structure: StructureId) -> Ctx {
        Ctx {
            globals: Rc::new(Globals::default()),
            names: Vec::new(),
            types: Vec::new(),
            levels: Vec::new(),
            env: Env::new(structure, Rc::new(Vec::new())),
        }
    }

    pub fn structure(&self) -> StructureId {
        self.env.structure
    }

    pub fn depth(&self) -> usize {
        self.names.len()
    }

    pub fn env(&self) -> &Env {
        &self.env
    }

    pub fn global_names(&self) -> &[String] {
        &self.globals.names
    }

    /// Adds a top-level declaration. Only valid with no local binders.
    pub fn push_global(&mut self, name: String, ty: TypeAtLevel, value: Val) {
        assert_eq!(self.depth(), 0, "globals are added at the top level");
        let globals = Rc::make_mut(&mut self.globals);
        globals.names.push(name);
        globals.types.push(ty);
        Rc::make_mut(&mut self.env.globals).push(value);
    }

    /// Extends the context with a variable of type `ty` at `level`.
    pub fn bind(&self, name: &str, ty: Val, level: LevelValue) -> Ctx {
        let value = Value::fresh(self.depth(), &ty);
        self.define(name, ty, level, value)
    }

    /// Extends the context with a binder whose value is known.
    pub fn define(&self, name: &str, ty: Val, level: LevelValue, value: Val) -> Ctx {
        let mut out = self.clone();
        out.names.push(name.to_string());
        out.types.push(ty);
        out.levels.push(level);
        out.env = self.env.extend(value);
        out
    }

    /// The value standing for the innermost binder.
    pub fn last_value(&self) -> Val {
        self.env.locals.last().expect("a bound variable").clone()
    }

    pub(super) fn lookup(&self, name: &str) -> Option<Lookup> {
        if name == "_" {
            return None;
        }
        if let Some(l) = self.names.iter().rposition(|n| n == name) {
            return Some(Lookup::Local(self.depth() - 1 - l, self.types[l].clone()));
        }
        let g = self.globals.names.iter().rposition(|n| n == name)?;
        Some(Lookup::Global(g, self.globals.types[g].clone()))
    }

    /// The local binders, outermost first, with their types and levels.
    pub fn telescope(&self) -> impl Iterator<Item = (&str, &Val, &LevelValue)> {
        self.names
            .iter()
            .zip(&self.types)
            .zip(&self.levels)
            .map(|((n, t), l)| (n.as_str(), t, l))
    }

    /// Type of the variable with de Bruijn level `level`.
    pub(super) fn type_of_var(&self, level: usize) -> Val {
        self.types[level].clone()
    }

    pub fn eval(&self, t: &Tm) -> Val {
        nbe::eval(&self.env, &t.clone().rc())
    }

    pub fn quote(&self, v: &Val) -> Tm {
        nbe::quote(self.depth(), v)
    }

    pub fn print_tm(&self, t: &Tm) -> String {
        print_term(t, &self.names, &self.globals.names)
    }

    pub fn print_val(&self, v: &Val) -> String {
        self.print_tm(&self.quote(v))
    }

    pub fn print_level(&self, l: &LevelValue) -> String {
        self.print_tm(&nbe::quote_level(self.depth(), l))
    }
}
