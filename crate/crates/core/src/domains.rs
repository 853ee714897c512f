//! Semantic domains: values as a disjunctive sum, memory as a
//! finitely-supported map into `Value + {unbound}`, and the state triple
//! `Memory × Input × Output`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::syntax::{escape_str, Ident};

/// A runtime value. Exactly one tag is inhabited; the tag identifies the
/// component of the sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    IntV(i64),
    BoolV(bool),
    StrV(Arc<str>),
}

impl Value {
    pub fn str(s: &str) -> Value {
        Value::StrV(Arc::from(s))
    }

    /// Component name of the sum: `Int`, `Bool`, or `Str`.
    pub fn tag_name(&self) -> &'static str {
        match self {
            Value::IntV(_) => "Int",
            Value::BoolV(_) => "Bool",
            Value::StrV(_) => "Str",
        }
    }
}

impl fmt::Display for Value {
    /// Canonical literal form: decimal, `true`/`false`, or a quoted,
    /// escaped string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::IntV(n) => write!(f, "{n}"),
            Value::BoolV(b) => write!(f, "{b}"),
            Value::StrV(s) => write!(f, "\"{}\"", escape_str(s)),
        }
    }
}

/// What memory associates with an identifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Binding {
    Bound(Value),
    Unbound,
}

/// Memory as a total map `Ident -> Value + {unbound}`, represented by its
/// finite support. Absent identifiers denote `Unbound`; an `Unbound` entry is
/// never stored, so equal memories are structurally equal maps.
///
/// The map is shared copy-on-write: cloning is O(1), and the machine's
/// traces hold one snapshot per mutation rather than per step.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MemoryMap(Arc<BTreeMap<Ident, Value>>);

impl MemoryMap {
    pub fn new() -> MemoryMap {
        MemoryMap::default()
    }

    pub(crate) fn insert(&mut self, id: Ident, v: Value) {
        Arc::make_mut(&mut self.0).insert(id, v);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Ident, &Value)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<(Ident, Value)> for MemoryMap {
    fn from_iter<T: IntoIterator<Item = (Ident, Value)>>(iter: T) -> MemoryMap {
        MemoryMap(Arc::new(iter.into_iter().collect()))
    }
}

/// Total lookup: identifiers outside the support are `Unbound`.
pub fn lookup(m: &MemoryMap, id: &Ident) -> Binding {
    match m.0.get(id) {
        Some(v) => Binding::Bound(v.clone()),
        None => Binding::Unbound,
    }
}

/// The complete machine state: memory plus finite input and output streams.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct State {
    pub memory: MemoryMap,
    pub input: Vec<Value>,
    pub output: Vec<Value>,
}

impl State {
    pub fn new(memory: MemoryMap, input: Vec<Value>, output: Vec<Value>) -> State {
        State { memory, input, output }
    }

    /// Empty memory, empty streams.
    pub fn empty() -> State {
        State::default()
    }
}

/// The substitution `m[v/I]`: rebinds `id` to `v`, leaving every other
/// binding and both streams untouched. Rebinding overwrites, regardless of
/// the previous value's tag.
pub fn bind_value(mut s: State, id: Ident, v: Value) -> State {
    s.memory.insert(id, v);
    s
}

impl fmt::Display for State {
    /// Canonical textual form, keys sorted: `mem{x=0,y=true} in[] out[]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("mem{")?;
        for (i, (id, v)) in self.memory.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{id}={v}")?;
        }
        f.write_str("} ")?;
        write_stream(f, "in", &self.input)?;
        f.write_str(" ")?;
        write_stream(f, "out", &self.output)
    }
}

pub(crate) fn write_stream(f: &mut fmt::Formatter<'_>, label: &str, vs: &[Value]) -> fmt::Result {
    write!(f, "{label}[")?;
    for (i, v) in vs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    f.write_str("]")
}

/// Runtime errors. Every variant names its trigger site.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ErrorKind {
    /// An identifier was evaluated while unbound.
    UnboundIdentifier(Ident),
    /// A value's tag did not match what the construct at `site` required.
    TypeMismatch {
        expected: &'static str,
        got: &'static str,
        site: &'static str,
    },
    /// `read` on an empty input stream; carries the target identifier.
    InputExhausted(Ident),
    /// The machine's defensive step bound was hit.
    StepLimitExceeded(usize),
}

impl fmt::Display for ErrorKind {
    /// Compact form used in machine traces: `UnboundIdentifier(y)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ErrorKind::UnboundIdentifier(id) => write!(f, "UnboundIdentifier({id})"),
            ErrorKind::TypeMismatch { expected, got, site } => {
                write!(f, "TypeMismatch({expected},{got},{site})")
            }
            ErrorKind::InputExhausted(id) => write!(f, "InputExhausted({id})"),
            ErrorKind::StepLimitExceeded(n) => write!(f, "StepLimitExceeded({n})"),
        }
    }
}

impl ErrorKind {
    /// Human-readable sentence for diagnostics.
    pub fn describe(&self) -> String {
        match self {
            ErrorKind::UnboundIdentifier(id) => format!("unbound identifier `{id}`"),
            ErrorKind::TypeMismatch { expected, got, site } => {
                format!("type mismatch at {site}: expected {expected}, got {got}")
            }
            ErrorKind::InputExhausted(id) => format!("input exhausted at `read {id}`"),
            ErrorKind::StepLimitExceeded(n) => format!("step limit exceeded ({n} steps)"),
        }
    }
}

impl std::error::Error for ErrorKind {}
