//! Types built from four domain constructors (product, sequence, sum,
//! function space) over the atomic value domains, and a structural checker
//! for composite content values. Function-space types are representable but
//! uninhabited by content: checking against one always rejects.

use std::fmt;

use crate::domains::Value;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeExpr {
    Int,
    Bool,
    Str,
    /// Cartesian product; arity ≥ 1.
    Product(Vec<TypeExpr>),
    /// Finite sequences of one element type.
    Seq(Box<TypeExpr>),
    /// Disjunctive sum; arity ≥ 1. Membership is by explicit injection index.
    Sum(Vec<TypeExpr>),
    /// Function space; uninhabited by `ContentValue`.
    Func(Box<TypeExpr>, Box<TypeExpr>),
}

impl fmt::Display for TypeExpr {
    /// The concrete type syntax: `int`, `prod<int,bool>`, `seq<str>`,
    /// `sum<int,str>`, `fn<int,bool>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(f: &mut fmt::Formatter<'_>, ts: &[TypeExpr]) -> fmt::Result {
            for (i, t) in ts.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{t}")?;
            }
            Ok(())
        }
        match self {
            TypeExpr::Int => f.write_str("int"),
            TypeExpr::Bool => f.write_str("bool"),
            TypeExpr::Str => f.write_str("str"),
            TypeExpr::Product(ts) => {
                f.write_str("prod<")?;
                list(f, ts)?;
                f.write_str(">")
            }
            TypeExpr::Seq(t) => write!(f, "seq<{t}>"),
            TypeExpr::Sum(ts) => {
                f.write_str("sum<")?;
                list(f, ts)?;
                f.write_str(">")
            }
            TypeExpr::Func(a, b) => write!(f, "fn<{a},{b}>"),
        }
    }
}

/// A composite content value: atoms, tuples (arity ≥ 1), finite lists, and
/// sum injections with a 1-based index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContentValue {
    Atom(Value),
    Tuple(Vec<ContentValue>),
    List(Vec<ContentValue>),
    Inj(usize, Box<ContentValue>),
}

pub fn is_num(v: &Value) -> bool {
    matches!(v, Value::IntV(_))
}

pub fn is_bool(v: &Value) -> bool {
    matches!(v, Value::BoolV(_))
}

pub fn is_str(v: &Value) -> bool {
    matches!(v, Value::StrV(_))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckResult {
    Accept,
    /// `path` locates the offending node with 1-based `/i` component
    /// indexing from the root (the root itself is `/`).
    Reject { reason: String, path: String },
}

impl CheckResult {
    pub fn is_accept(&self) -> bool {
        matches!(self, CheckResult::Accept)
    }
}

/// Structural type check. Total and deterministic: the leftmost-innermost
/// failure wins.
pub fn check(t: &TypeExpr, cv: &ContentValue) -> CheckResult {
    check_at(t, cv, &mut Vec::new())
}

fn check_at(t: &TypeExpr, cv: &ContentValue, path: &mut Vec<usize>) -> CheckResult {
    let reject = |reason: String, path: &[usize]| CheckResult::Reject {
        reason,
        path: render_path(path),
    };
    match t {
        TypeExpr::Int | TypeExpr::Bool | TypeExpr::Str => {
            let (pred, name): (fn(&Value) -> bool, &str) = match t {
                TypeExpr::Int => (is_num, "Int"),
                TypeExpr::Bool => (is_bool, "Bool"),
                _ => (is_str, "Str"),
            };
            match cv {
                ContentValue::Atom(v) if pred(v) => CheckResult::Accept,
                _ => reject(format!("expected {name}"), path),
            }
        }
        TypeExpr::Product(ts) => match cv {
            ContentValue::Tuple(vs) => {
                if ts.len() != vs.len() {
                    return reject(
                        format!("expected {} components, got {}", ts.len(), vs.len()),
                        path,
                    );
                }
                check_children(ts.iter().zip(vs), path)
            }
            _ => reject("expected tuple".to_string(), path),
        },
        TypeExpr::Seq(elem) => match cv {
            ContentValue::List(vs) => {
                check_children(vs.iter().map(|v| (elem.as_ref(), v)), path)
            }
            _ => reject("expected list".to_string(), path),
        },
        TypeExpr::Sum(ts) => match cv {
            ContentValue::Inj(k, payload) => {
                if *k < 1 || *k > ts.len() {
                    return reject("index out of range".to_string(), path);
                }
                path.push(*k);
                let r = check_at(&ts[*k - 1], payload, path);
                path.pop();
                r
            }
            _ => reject("expected injection".to_string(), path),
        },
        TypeExpr::Func(..) => reject("function types uninhabited by content".to_string(), path),
    }
}

fn check_children<'a>(
    pairs: impl Iterator<Item = (&'a TypeExpr, &'a ContentValue)>,
    path: &mut Vec<usize>,
) -> CheckResult {
    for (i, (t, v)) in pairs.enumerate() {
        path.push(i + 1);
        let r = check_at(t, v, path);
        path.pop();
        if !r.is_accept() {
            return r;
        }
    }
    CheckResult::Accept
}

fn render_path(segs: &[usize]) -> String {
    if segs.is_empty() {
        return "/".to_string();
    }
    let mut out = String::new();
    for s in segs {
        out.push('/');
        out.push_str(&s.to_string());
    }
    out
}

/// Parses the concrete type syntax. Whitespace is permitted around names
/// and punctuation.
pub fn parse_type_expr(source: &str) -> Result<TypeExpr, String> {
    let mut p = TypeParser {
        chars: source.char_indices().peekable(),
        source,
    };
    let t = p.ty()?;
    p.skip_ws();
    match p.chars.peek() {
        None => Ok(t),
        Some((i, c)) => Err(format!("unexpected `{c}` at byte {i} in type")),
    }
}

struct TypeParser<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    source: &'a str,
}

impl TypeParser<'_> {
    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_ascii_whitespace()) {
            self.chars.next();
        }
    }

    fn eat(&mut self, want: char) -> bool {
        self.skip_ws();
        if matches!(self.chars.peek(), Some((_, c)) if *c == want) {
            self.chars.next();
            true
        } else {
            false
        }
    }

    fn name(&mut self) -> Result<&str, String> {
        self.skip_ws();
        let start = match self.chars.peek() {
            Some((i, c)) if c.is_ascii_alphabetic() => *i,
            Some((_, c)) => return Err(format!("expected a type name, found `{c}`")),
            None => return Err("expected a type name, found end of input".to_string()),
        };
        let mut end = self.source.len();
        while let Some((i, c)) = self.chars.peek() {
            if c.is_ascii_alphanumeric() {
                self.chars.next();
            } else {
                end = *i;
                break;
            }
        }
        Ok(&self.source[start..end])
    }

    fn args(&mut self) -> Result<Vec<TypeExpr>, String> {
        if !self.eat('<') {
            return Ok(Vec::new());
        }
        let mut out = vec![self.ty()?];
        while self.eat(',') {
            out.push(self.ty()?);
        }
        if !self.eat('>') {
            return Err("expected `>` in type".to_string());
        }
        Ok(out)
    }

    fn ty(&mut self) -> Result<TypeExpr, String> {
        let name = self.name()?.to_string();
        let args = self.args()?;
        let arity = args.len();
        let arity_err = |want: &str| Err(format!("`{name}` takes {want}, got {arity}"));
        match name.as_str() {
            "int" | "bool" | "str" => {
                if !args.is_empty() {
                    return arity_err("no type arguments");
                }
                Ok(match name.as_str() {
                    "int" => TypeExpr::Int,
                    "bool" => TypeExpr::Bool,
                    _ => TypeExpr::Str,
                })
            }
            "prod" | "sum" => {
                if args.is_empty() {
                    return arity_err("at least 1 type argument");
                }
                Ok(if name == "prod" {
                    TypeExpr::Product(args)
                } else {
                    TypeExpr::Sum(args)
                })
            }
            "seq" => {
                let Ok([elem]) = <[TypeExpr; 1]>::try_from(args) else {
                    return arity_err("exactly 1 type argument");
                };
                Ok(TypeExpr::Seq(Box::new(elem)))
            }
            "fn" => {
                let Ok([dom, cod]) = <[TypeExpr; 2]>::try_from(args) else {
                    return arity_err("exactly 2 type arguments");
                };
                Ok(TypeExpr::Func(Box::new(dom), Box::new(cod)))
            }
            other => Err(format!("unknown type `{other}`")),
        }
    }
}
