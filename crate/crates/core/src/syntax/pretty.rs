//! Pretty-printer. Output reparses (in extended mode) to a structurally
//! identical AST.
//!
//! Because the else-arm of `if` and the right arm of `;` both extend as far
//! as possible, a command printed immediately before a `;` must not be able
//! to swallow the separator. Grouping braces are emitted exactly there:
//! around an `if` or a sequence appearing as the left operand of `;`.

use super::{escape_str, Com, Exp};

pub fn pretty_print_exp(e: &Exp) -> String {
    match e {
        Exp::TrueLit => "true".to_string(),
        Exp::FalseLit => "false".to_string(),
        Exp::IntLit(n) => n.to_string(),
        Exp::StrLit(s) => format!("\"{}\"", escape_str(s)),
        Exp::Var(id) => id.name().to_string(),
    }
}

pub fn pretty_print(c: &Com) -> String {
    let mut out = String::new();
    write_com(&mut out, c, false);
    out
}

/// `before_semi` is true when a `;` follows this command at its own level.
fn write_com(out: &mut String, c: &Com, before_semi: bool) {
    if before_semi && matches!(c, Com::If(..) | Com::Seq(..)) {
        out.push('{');
        write_com(out, c, false);
        out.push('}');
        return;
    }
    match c {
        Com::Assign(id, e) => {
            out.push_str(id.name());
            out.push_str(" = ");
            out.push_str(&pretty_print_exp(e));
        }
        Com::If(cond, then, els) => {
            out.push_str("if (");
            out.push_str(&pretty_print_exp(cond));
            out.push_str(") ");
            write_com(out, then, false);
            out.push_str(" else ");
            write_com(out, els, false);
        }
        Com::Seq(first, second) => {
            write_com(out, first, true);
            out.push_str("; ");
            write_com(out, second, false);
        }
        Com::Read(id) => {
            out.push_str("read ");
            out.push_str(id.name());
        }
        Com::Write(e) => {
            out.push_str("write ");
            out.push_str(&pretty_print_exp(e));
        }
    }
}
