//! The `ttfl` command-line driver.
//!
//! Every command writes to the given sinks and returns its exit code, so the
//! binary is a thin wrapper and tests can drive the CLI in process.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::elab::{elab_source, ElabError, ErrorKind};
use crate::levels::StructureId;
use crate::surface::pretty_module;
use crate::syntax::print_term;

#[derive(Debug, Parser)]
#[command(name = "ttfl", version, about = "Type checker for a type theory with first-class universe levels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Elaborate files, stopping at the first error.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Level structure: nat, omega1 or omega-omega. Defaults to the
        /// file's `-- levels:` pragma, then nat.
        #[arg(long, value_parser = parse_structure)]
        levels: Option<StructureId>,
    },
    /// Print the normal form of a declaration and its type.
    Nf {
        file: PathBuf,
        #[arg(long)]
        name: String,
        #[arg(long, value_parser = parse_structure)]
        levels: Option<StructureId>,
    },
    /// Print the elaborated core of a file.
    DumpCore {
        file: PathBuf,
        #[arg(long, value_parser = parse_structure)]
        levels: Option<StructureId>,
    },
    /// Run a corpus directory with `accept/` and `reject/` subdirectories.
    Corpus { dir: PathBuf },
}

fn parse_structure(s: &str) -> Result<StructureId, String> {
    StructureId::from_flag_name(s)
        .ok_or_else(|| format!("unknown level structure `{s}` (expected nat, omega1 or omega-omega)"))
}

/// The `-- levels: S` pragma among a file's leading comment lines.
pub fn levels_pragma(text: &str) -> Option<StructureId> {
    text.lines()
        .map(str::trim)
        .take_while(|l| l.starts_with("--") || l.is_empty())
        .filter_map(|l| l.trim_start_matches('-').trim().strip_prefix("levels:"))
        .find_map(|s| StructureId::from_flag_name(s.trim()))
}

/// The `-- expect: KIND` header on the first line of a reject file.
pub fn expect_pragma(text: &str) -> Option<ErrorKind> {
    let first = text.lines().next()?.trim();
    let rest = first.strip_prefix("--")?.trim().strip_prefix("expect:")?;
    ErrorKind::from_name(rest.trim())
}

/// 1-based line and column (in characters) of a byte offset.
pub fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let line_start = before.rfind('\n').map_or(0, |i| i + 1);
    (line, before[line_start..].chars().count() + 1)
}

/// Renders an error as `file:line:col: KIND: message` plus a source excerpt.
pub fn render_error(file: &str, text: &str, e: &ElabError, color: bool) -> String {
    let (line, col) = line_col(text, e.span.start);
    let kind = if color {
        format!("\x1b[1;31m{}\x1b[0m", e.kind.name())
    } else {
        e.kind.name().to_string()
    };
    let mut out = format!("{file}:{line}:{col}: {kind}: {}\n", e.message);
    if let Some(src) = text.lines().nth(line - 1) {
        let gutter = line.to_string();
        let width = text[e.span.start.min(text.len())..e.span.end.min(text.len())]
            .lines()
            .next()
            .map_or(1, |s| s.chars().count().max(1));
        let width = width.min(src.chars().count().saturating_sub(col - 1).max(1));
        out.push_str(&format!("{gutter} | {src}\n"));
        out.push_str(&format!(
            "{} | {}{}\n",
            " ".repeat(gutter.len()),
            " ".repeat(col - 1),
            "^".repeat(width)
        ));
    }
    out
}

struct Sinks<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    color: bool,
}

fn read(path: &Path, sinks: &mut Sinks) -> Option<String> {
    match fs::read_to_string(path) {
        Ok(text) => Some(text),
        Err(e) => {
            let _ = writeln!(sinks.err, "{}: error: {e}", path.display());
            None
        }
    }
}

fn structure_for(flag: Option<StructureId>, text: &str) -> StructureId {
    flag.or_else(|| levels_pragma(text)).unwrap_or(StructureId::Nat)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, color: bool) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    let mut sinks = Sinks { out, err, color };
    match cli.command {
        Command::Check { files, levels } => run_check(&files, levels, &mut sinks),
        Command::Nf { file, name, levels } => run_nf(&file, &name, levels, &mut sinks),
        Command::DumpCore { file, levels } => run_dump_core(&file, levels, &mut sinks),
        Command::Corpus { dir } => run_corpus(&dir, &mut sinks),
    }
}

fn run_check(files: &[PathBuf], levels: Option<StructureId>, sinks: &mut Sinks) -> i32 {
    // read everything first so missing files are reported before any work
    let mut texts = Vec::new();
    for f in files {
        match read(f, sinks) {
            Some(t) => texts.push(t),
            None => return 2,
        }
    }
    for (f, text) in files.iter().zip(&texts) {
        match elab_source(text, structure_for(levels, text)) {
            Ok(m) => {
                let _ = writeln!(
                    sinks.out,
                    "{}: ok ({} declarations)",
                    f.display(),
                    m.declarations.len()
                );
            }
            Err(e) => {
                let _ = write!(sinks.err, "{}", render_error(&f.display().to_string(), text, &e, sinks.color));
                return 1;
            }
        }
    }
    0
}

fn run_nf(file: &Path, name: &str, levels: Option<StructureId>, sinks: &mut Sinks) -> i32 {
    let Some(text) = read(file, sinks) else { return 2 };
    let m = match elab_source(&text, structure_for(levels, &text)) {
        Ok(m) => m,
        Err(e) => {
            let _ = write!(sinks.err, "{}", render_error(&file.display().to_string(), &text, &e, sinks.color));
            return 1;
        }
    };
    let Some((nf, ty)) = m.normal_form(name) else {
        let _ = writeln!(sinks.err, "{}: error: no declaration named `{name}`", file.display());
        return 1;
    };
    let names = m.names();
    let _ = writeln!(sinks.out, "{}", print_term(&nf, &[], &names));
    let _ = writeln!(sinks.out, "  : {}", print_term(&ty, &[], &names));
    0
}

fn run_dump_core(file: &Path, levels: Option<StructureId>, sinks: &mut Sinks) -> i32 {
    let Some(text) = read(file, sinks) else { return 2 };
    match elab_source(&text, structure_for(levels, &text)) {
        Ok(m) => {
            let _ = write!(sinks.out, "{}", pretty_module(&m.core_module()));
            0
        }
        Err(e) => {
            let _ = write!(sinks.err, "{}", render_error(&file.display().to_string(), &text, &e, sinks.color));
            1
        }
    }
}

/// `.ttfl` files of a directory in name order; a missing directory is empty.
pub fn corpus_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    if !dir.is_dir() {
        return Ok(Vec::new());
    }
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    files.retain(|p| p.extension().is_some_and(|e| e == "ttfl"));
    files.sort();
    Ok(files)
}

/// Outcome of one corpus file: `Ok` on the expected behavior, otherwise a
/// description of what went wrong.
pub fn corpus_verdict(text: &str, expect_reject: bool) -> Result<(), String> {
    let structure = levels_pragma(text).unwrap_or(StructureId::Nat);
    let result = elab_source(text, structure);
    if !expect_reject {
        return result.map(|_| ()).map_err(|e| e.to_string());
    }
    let Some(kind) = expect_pragma(text) else {
        return Err("missing `-- expect: KIND` header on line 1".into());
    };
    match result {
        Ok(_) => Err(format!("accepted, expected {kind}")),
        Err(e) if e.kind == kind => Ok(()),
        Err(e) => Err(format!("expected {kind}, got {e}")),
    }
}

fn run_corpus(dir: &Path, sinks: &mut Sinks) -> i32 {
    if !dir.is_dir() {
        let _ = writeln!(sinks.err, "{}: error: not a directory", dir.display());
        return 2;
    }
    let (mut passed, mut failed) = (0, 0);
    for (sub, reject) in [("accept", false), ("reject", true)] {
        let files = match corpus_files(&dir.join(sub)) {
            Ok(f) => f,
            Err(e) => {
                let _ = writeln!(sinks.err, "{}: error: {e}", dir.join(sub).display());
                return 2;
            }
        };
        for f in files {
            let Some(text) = read(&f, sinks) else { return 2 };
            let label = format!("{sub}/{}", f.file_name().unwrap_or_default().to_string_lossy());
            match corpus_verdict(&text, reject) {
                Ok(()) => {
                    passed += 1;
                    let _ = writeln!(sinks.out, "PASS {label}");
                }
                Err(why) => {
                    failed += 1;
                    let _ = writeln!(sinks.out, "FAIL {label}: {why}");
                }
            }
        }
    }
    let _ = writeln!(sinks.out, "{passed} passed, {failed} failed");
    if failed == 0 {
        0
    } else {
        1
    }
}
