//! A small typed content language and the machinery around it:
//!
//! - [`syntax`]: lexer, recursive-descent parser, and pretty-printer for the
//!   command language (`.amcm` files), with a strict mode that accepts only
//!   the minimal illustrative grammar.
//! - [`domains`]: the semantic domains — tagged values, memory as a
//!   finitely-supported identifier map, and the state triple with input and
//!   output streams.
//! - [`denotational`]: the reference semantics. `eval_exp` and `exec_com` are
//!   executable semantic functions; every other execution path in the crate
//!   is checked against them.
//! - [`machine`]: a compiled stack machine with single-step execution and a
//!   full configuration trace.
//! - [`typecheck`]: type expressions built from domain constructors
//!   (product, sequence, disjunctive sum, function space) and a structural
//!   checker for composite content values.
//! - [`templating`]: typed-slot templates (`.tpl`) bound against content
//!   records (`.cnt`) and rendered to pages, with atomic slot values routed
//!   through the compiled machine.

pub mod denotational;
pub mod domains;
pub mod machine;
pub mod syntax;
pub mod templating;
pub mod typecheck;

pub use domains::{bind_value, lookup, Binding, ErrorKind, MemoryMap, State, Value};
pub use syntax::{parse_com, parse_exp, parse_program, pretty_print, Com, Exp, Ident, ParseError};
