//! Typed-slot templating: templates with `{{name:type}}` placeholders,
//! line-oriented content records, and rendering that binds content to slots.
//! Atomic slots compile to an assignment program executed on the machine;
//! composite values are type-checked and substituted from a side table,
//! since the core language has no composite literals.

mod content;

pub use content::parse_content;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::domains::{lookup, Binding, MemoryMap, State, Value};
use crate::machine::{compile_com, run_machine};
use crate::syntax::{Com, Exp, Ident};
use crate::typecheck::{check, parse_type_expr, CheckResult, ContentValue, TypeExpr};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Segment {
    Literal(String),
    Slot { name: Ident, ty: TypeExpr },
}

/// A parsed template: literal runs interleaved with uniquely-named typed
/// slots, in source order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    segments: Vec<Segment>,
}

impl Template {
    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn slots(&self) -> impl Iterator<Item = (&Ident, &TypeExpr)> {
        self.segments.iter().filter_map(|s| match s {
            Segment::Slot { name, ty } => Some((name, ty)),
            Segment::Literal(_) => None,
        })
    }
}

/// A parsed content file: a map from names to content values.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ContentRecord {
    entries: BTreeMap<Ident, ContentValue>,
}

impl ContentRecord {
    pub fn get(&self, name: &Ident) -> Option<&ContentValue> {
        self.entries.get(name)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Ident, &ContentValue)> {
        self.entries.iter()
    }
}

impl FromIterator<(Ident, ContentValue)> for ContentRecord {
    fn from_iter<T: IntoIterator<Item = (Ident, ContentValue)>>(iter: T) -> ContentRecord {
        ContentRecord {
            entries: iter.into_iter().collect(),
        }
    }
}

/// A rendered page. On success it contains no unexpanded slot syntax.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Page {
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, col: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A binding failure, detected before any execution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BindError {
    Unbound {
        slot: Ident,
    },
    TypeMismatch {
        slot: Ident,
        reason: String,
        path: String,
    },
}

impl fmt::Display for BindError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BindError::Unbound { slot } => write!(f, "slot `{slot}` has no content"),
            BindError::TypeMismatch { slot, reason, path } => {
                write!(f, "slot `{slot}`: {reason} at {path}")
            }
        }
    }
}

impl std::error::Error for BindError {}

/// Parses `{{name:type}}` placeholders; `\{{` escapes a literal brace pair.
pub fn parse_template(source: &str) -> Result<Template, ParseError> {
    let chars: Vec<char> = source.chars().collect();
    let mut pos = 0;
    let mut line = 1;
    let mut col = 1;
    let bump = |pos: &mut usize, line: &mut usize, col: &mut usize| {
        if chars.get(*pos) == Some(&'\n') {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
        *pos += 1;
    };

    let mut segments = Vec::new();
    let mut lit = String::new();
    let mut seen: BTreeSet<Ident> = BTreeSet::new();
    while let Some(&c) = chars.get(pos) {
        if c == '\\' && chars.get(pos + 1) == Some(&'{') && chars.get(pos + 2) == Some(&'{') {
            for _ in 0..3 {
                bump(&mut pos, &mut line, &mut col);
            }
            lit.push_str("{{");
        } else if c == '{' && chars.get(pos + 1) == Some(&'{') {
            let (at_line, at_col) = (line, col);
            bump(&mut pos, &mut line, &mut col);
            bump(&mut pos, &mut line, &mut col);
            if !lit.is_empty() {
                segments.push(Segment::Literal(std::mem::take(&mut lit)));
            }
            let mut body = String::new();
            loop {
                match chars.get(pos) {
                    None => {
                        return Err(ParseError::new(at_line, at_col, "unterminated placeholder"))
                    }
                    Some('}') if chars.get(pos + 1) == Some(&'}') => {
                        bump(&mut pos, &mut line, &mut col);
                        bump(&mut pos, &mut line, &mut col);
                        break;
                    }
                    Some(&c) => {
                        body.push(c);
                        bump(&mut pos, &mut line, &mut col);
                    }
                }
            }
            let Some((name_raw, ty_raw)) = body.split_once(':') else {
                return Err(ParseError::new(
                    at_line,
                    at_col,
                    "malformed placeholder: expected `name:type`",
                ));
            };
            let name = Ident::new(name_raw.trim())
                .map_err(|e| ParseError::new(at_line, at_col, e.to_string()))?;
            let ty = parse_type_expr(ty_raw)
                .map_err(|m| ParseError::new(at_line, at_col, m))?;
            if !seen.insert(name.clone()) {
                return Err(ParseError::new(
                    at_line,
                    at_col,
                    format!("duplicate slot `{name}`"),
                ));
            }
            segments.push(Segment::Slot { name, ty });
        } else {
            lit.push(c);
            bump(&mut pos, &mut line, &mut col);
        }
    }
    if !lit.is_empty() {
        segments.push(Segment::Literal(lit));
    }
    Ok(Template { segments })
}

/// The compiled form of a (template, content) pair: an assignment program
/// for the atomic slots plus a side table for composite values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledBinding {
    /// Right-nested sequence of assignments, one per atomic slot in
    /// template order; `None` when the template has no atomic slots.
    pub program: Option<Com>,
    pub composites: BTreeMap<Ident, ContentValue>,
}

fn literal_exp(v: &Value) -> Exp {
    match v {
        Value::IntV(n) => Exp::IntLit(*n),
        Value::BoolV(true) => Exp::TrueLit,
        Value::BoolV(false) => Exp::FalseLit,
        Value::StrV(s) => Exp::StrLit(s.clone()),
    }
}

/// Binds content to slots. Fails on the first slot (in template order) that
/// is unbound or whose content rejects its declared type, before any
/// execution.
pub fn compile_binding(t: &Template, c: &ContentRecord) -> Result<CompiledBinding, BindError> {
    let mut assigns: Vec<Com> = Vec::new();
    let mut composites = BTreeMap::new();
    for (name, ty) in t.slots() {
        let Some(cv) = c.get(name) else {
            return Err(BindError::Unbound { slot: name.clone() });
        };
        if let CheckResult::Reject { reason, path } = check(ty, cv) {
            return Err(BindError::TypeMismatch {
                slot: name.clone(),
                reason,
                path,
            });
        }
        match (ty, cv) {
            (TypeExpr::Int | TypeExpr::Bool | TypeExpr::Str, ContentValue::Atom(v)) => {
                assigns.push(Com::Assign(name.clone(), literal_exp(v)));
            }
            _ => {
                composites.insert(name.clone(), cv.clone());
            }
        }
    }
    let program = assigns.into_iter().rev().reduce(|acc, a| Com::seq(a, acc));
    Ok(CompiledBinding { program, composites })
}

fn render_atom(v: &Value) -> String {
    match v {
        Value::IntV(n) => n.to_string(),
        Value::BoolV(b) => b.to_string(),
        Value::StrV(s) => s.to_string(),
    }
}

/// Page text for a content value: strings are raw, tuples are `(a, b)`,
/// lists are `[a; b]`, and an injection renders its payload alone.
pub fn render_value(cv: &ContentValue) -> String {
    match cv {
        ContentValue::Atom(v) => render_atom(v),
        ContentValue::Tuple(vs) => {
            let items: Vec<String> = vs.iter().map(render_value).collect();
            format!("({})", items.join(", "))
        }
        ContentValue::List(vs) => {
            let items: Vec<String> = vs.iter().map(render_value).collect();
            format!("[{}]", items.join("; "))
        }
        ContentValue::Inj(_, p) => render_value(p),
    }
}

/// Binds, runs the compiled assignment program on an empty state, and
/// substitutes every slot. Atomic slot values are read back from the
/// machine's final memory.
pub fn render(t: &Template, c: &ContentRecord) -> Result<Page, BindError> {
    let binding = compile_binding(t, c)?;
    let memory = match &binding.program {
        Some(com) => {
            let (outcome, _) = run_machine(&compile_com(com), State::empty());
            match outcome {
                Ok(s) => s.memory,
                // The program only assigns literals to identifiers.
                Err(e) => unreachable!("compiled binding program faulted: {e}"),
            }
        }
        None => MemoryMap::new(),
    };
    let mut text = String::new();
    for seg in &t.segments {
        match seg {
            Segment::Literal(s) => text.push_str(s),
            Segment::Slot { name, .. } => {
                if let Some(cv) = binding.composites.get(name) {
                    text.push_str(&render_value(cv));
                } else {
                    match lookup(&memory, name) {
                        Binding::Bound(v) => text.push_str(&render_atom(&v)),
                        Binding::Unbound => {
                            unreachable!("atomic slot `{name}` missing from final memory")
                        }
                    }
                }
            }
        }
    }
    Ok(Page { text })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SlotStatus {
    Ok,
    Unbound,
    Mismatch { reason: String, path: String },
}

/// Per-slot report in template order, for diagnostics that must cover every
/// slot rather than stopping at the first failure.
pub fn check_slots(t: &Template, c: &ContentRecord) -> Vec<(Ident, SlotStatus)> {
    t.slots()
        .map(|(name, ty)| {
            let status = match c.get(name) {
                None => SlotStatus::Unbound,
                Some(cv) => match check(ty, cv) {
                    CheckResult::Accept => SlotStatus::Ok,
                    CheckResult::Reject { reason, path } => SlotStatus::Mismatch { reason, path },
                },
            };
            (name.clone(), status)
        })
        .collect()
}
