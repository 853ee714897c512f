//! Reference semantics. Expression evaluation yields a value paired with a
//! (possibly updated) state; command execution yields a final state. Both
//! are strict in errors: once a subterm fails, the whole term fails with
//! that error and no further effects.

use crate::domains::{bind_value, lookup, Binding, ErrorKind, State, Value};
use crate::syntax::{Com, Exp};

/// Result of evaluating an expression: the value and the state it left
/// behind. Expressions in this language never change the state, but the
/// type threads it anyway so the combinators compose.
pub type EvalOutcome = Result<(Value, State), ErrorKind>;

/// Result of executing a command.
pub type ExecOutcome = Result<State, ErrorKind>;

/// The strict sequencing combinator: feed an evaluation's value and state to
/// the continuation, or short-circuit on error without running it.
pub fn star(o: EvalOutcome, k: impl FnOnce(Value, State) -> ExecOutcome) -> ExecOutcome {
    match o {
        Ok((v, s)) => k(v, s),
        Err(e) => Err(e),
    }
}

pub fn eval_exp(e: &Exp, s: State) -> EvalOutcome {
    match e {
        Exp::TrueLit => Ok((Value::BoolV(true), s)),
        Exp::FalseLit => Ok((Value::BoolV(false), s)),
        Exp::IntLit(n) => Ok((Value::IntV(*n), s)),
        Exp::StrLit(t) => Ok((Value::StrV(t.clone()), s)),
        Exp::Var(id) => match lookup(&s.memory, id) {
            Binding::Bound(v) => Ok((v, s)),
            Binding::Unbound => Err(ErrorKind::UnboundIdentifier(id.clone())),
        },
    }
}

pub fn exec_com(c: &Com, s: State) -> ExecOutcome {
    match c {
        Com::Assign(id, e) => star(eval_exp(e, s), |v, s1| Ok(bind_value(s1, id.clone(), v))),
        Com::If(cond, then, els) => star(eval_exp(cond, s), |v, s1| match v {
            Value::BoolV(true) => exec_com(then, s1),
            Value::BoolV(false) => exec_com(els, s1),
            other => Err(ErrorKind::TypeMismatch {
                expected: "Bool",
                got: other.tag_name(),
                site: "if-condition",
            }),
        }),
        Com::Seq(c1, c2) => exec_com(c1, s).and_then(|s1| exec_com(c2, s1)),
        Com::Read(id) => {
            let mut s = s;
            if s.input.is_empty() {
                return Err(ErrorKind::InputExhausted(id.clone()));
            }
            let v = s.input.remove(0);
            Ok(bind_value(s, id.clone(), v))
        }
        Com::Write(e) => star(eval_exp(e, s), |v, mut s1| {
            s1.output.push(v);
            Ok(s1)
        }),
    }
}
