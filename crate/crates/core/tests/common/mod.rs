//! Shared generators for the acceptance suite: a tiny deterministic RNG and
//! builders for random programs, states, types, and content values. Kept
//! dependency-free so the acceptance runs are reproducible byte for byte.

use amcm::machine::{Code, Instr};
use amcm::syntax::{Com, Exp, Ident};
use amcm::typecheck::{ContentValue, TypeExpr};
use amcm::{MemoryMap, State, Value};

/// xorshift64* — deterministic, seedable, good enough for test-case choice.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(seed.max(1))
    }

    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    /// Uniform in `0..n`; n must be nonzero.
    pub fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }

    pub fn bool(&mut self) -> bool {
        self.next() & 1 == 1
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len())]
    }
}

pub fn ident(name: &str) -> Ident {
    Ident::new(name).unwrap()
}

pub const NAMES: [&str; 4] = ["x", "y", "z", "w"];

pub fn random_value(rng: &mut Rng) -> Value {
    match rng.below(3) {
        0 => Value::IntV(rng.below(19) as i64 - 9),
        1 => Value::BoolV(rng.bool()),
        _ => {
            let len = rng.below(4);
            let s: String = (0..len).map(|_| (b'a' + rng.below(26) as u8) as char).collect();
            Value::str(&s)
        }
    }
}

pub fn random_exp(rng: &mut Rng) -> Exp {
    match rng.below(5) {
        0 => Exp::TrueLit,
        1 => Exp::FalseLit,
        2 => Exp::IntLit(rng.below(19) as i64 - 9),
        3 => {
            let len = rng.below(4);
            let s: String = (0..len).map(|_| (b'a' + rng.below(26) as u8) as char).collect();
            Exp::str_lit(&s)
        }
        _ => Exp::Var(ident(rng.pick(&NAMES))),
    }
}

/// A random extended-mode command of the given maximum constructor depth,
/// covering all five constructors.
pub fn random_com(rng: &mut Rng, depth: usize) -> Com {
    let leafy = depth <= 1 || rng.below(3) == 0;
    if leafy {
        match rng.below(3) {
            0 => Com::Assign(ident(rng.pick(&NAMES)), random_exp(rng)),
            1 => Com::Read(ident(rng.pick(&NAMES))),
            _ => Com::Write(random_exp(rng)),
        }
    } else if rng.bool() {
        Com::seq(random_com(rng, depth - 1), random_com(rng, depth - 1))
    } else {
        Com::if_(
            random_exp(rng),
            random_com(rng, depth - 1),
            random_com(rng, depth - 1),
        )
    }
}

/// A random command from the strict subset: assignments over {0, 1, true,
/// false, variables}, conditionals, and sequencing.
pub fn random_strict_com(rng: &mut Rng, depth: usize) -> Com {
    let strict_exp = |rng: &mut Rng| match rng.below(5) {
        0 => Exp::TrueLit,
        1 => Exp::FalseLit,
        2 => Exp::IntLit(0),
        3 => Exp::IntLit(1),
        _ => Exp::Var(ident(rng.pick(&NAMES))),
    };
    if depth <= 1 || rng.below(3) == 0 {
        Com::Assign(ident(rng.pick(&NAMES)), strict_exp(rng))
    } else if rng.bool() {
        Com::seq(random_strict_com(rng, depth - 1), random_strict_com(rng, depth - 1))
    } else {
        Com::if_(
            strict_exp(rng),
            random_strict_com(rng, depth - 1),
            random_strict_com(rng, depth - 1),
        )
    }
}

pub fn random_state(rng: &mut Rng, max_input: usize) -> State {
    let mut memory = Vec::new();
    for name in NAMES {
        if rng.bool() {
            memory.push((ident(name), random_value(rng)));
        }
    }
    let input = (0..rng.below(max_input + 1)).map(|_| random_value(rng)).collect();
    State::new(memory.into_iter().collect::<MemoryMap>(), input, vec![])
}

/// Steps a run can take: one per instruction reached, counting only the
/// longer branch arm, plus the final halt step.
pub fn step_weight(code: &Code) -> usize {
    code.instrs()
        .iter()
        .map(|i| match i {
            Instr::Branch(t, e) => 1 + step_weight(t).max(step_weight(e)),
            _ => 1,
        })
        .sum()
}

/// Every type of constructor depth ≤ `depth` with arity ≤ 2, atoms first.
pub fn enumerate_types(depth: usize) -> Vec<TypeExpr> {
    let mut all = vec![TypeExpr::Int, TypeExpr::Bool, TypeExpr::Str];
    if depth <= 1 {
        return all;
    }
    let inner = enumerate_types(depth - 1);
    for t in &inner {
        all.push(TypeExpr::Seq(Box::new(t.clone())));
        all.push(TypeExpr::Product(vec![t.clone()]));
        all.push(TypeExpr::Sum(vec![t.clone()]));
    }
    for a in &inner {
        for b in &inner {
            all.push(TypeExpr::Product(vec![a.clone(), b.clone()]));
            all.push(TypeExpr::Sum(vec![a.clone(), b.clone()]));
            all.push(TypeExpr::Func(Box::new(a.clone()), Box::new(b.clone())));
        }
    }
    all
}

/// Every content value of constructor depth ≤ `depth` with arity ≤ 2 over
/// the atomic seeds {0, true, "a"} and injection indices {1, 2}.
pub fn enumerate_content(depth: usize) -> Vec<ContentValue> {
    let mut all = vec![
        ContentValue::Atom(Value::IntV(0)),
        ContentValue::Atom(Value::BoolV(true)),
        ContentValue::Atom(Value::str("a")),
    ];
    if depth <= 1 {
        return all;
    }
    let inner = enumerate_content(depth - 1);
    all.push(ContentValue::List(vec![]));
    for v in &inner {
        all.push(ContentValue::Tuple(vec![v.clone()]));
        all.push(ContentValue::List(vec![v.clone()]));
        all.push(ContentValue::Inj(1, Box::new(v.clone())));
        all.push(ContentValue::Inj(2, Box::new(v.clone())));
    }
    for a in &inner {
        for b in &inner {
            all.push(ContentValue::Tuple(vec![a.clone(), b.clone()]));
            all.push(ContentValue::List(vec![a.clone(), b.clone()]));
        }
    }
    all
}

/// A random type of the given depth; `atomic_only` restricts to Int/Bool/Str.
pub fn random_type(rng: &mut Rng, depth: usize, atomic_only: bool) -> TypeExpr {
    if atomic_only || depth <= 1 || rng.below(3) == 0 {
        match rng.below(3) {
            0 => TypeExpr::Int,
            1 => TypeExpr::Bool,
            _ => TypeExpr::Str,
        }
    } else {
        match rng.below(4) {
            0 => {
                let n = 1 + rng.below(2);
                TypeExpr::Product((0..n).map(|_| random_type(rng, depth - 1, false)).collect())
            }
            1 => TypeExpr::Seq(Box::new(random_type(rng, depth - 1, false))),
            _ => {
                let n = 1 + rng.below(2);
                TypeExpr::Sum((0..n).map(|_| random_type(rng, depth - 1, false)).collect())
            }
        }
    }
}

/// A content value built to inhabit `t`. Only callable for function-free
/// types.
pub fn inhabit(rng: &mut Rng, t: &TypeExpr) -> ContentValue {
    match t {
        TypeExpr::Int => ContentValue::Atom(Value::IntV(rng.below(15) as i64 - 7)),
        TypeExpr::Bool => ContentValue::Atom(Value::BoolV(rng.bool())),
        TypeExpr::Str => {
            let len = rng.below(5);
            let s: String = (0..len).map(|_| (b'a' + rng.below(26) as u8) as char).collect();
            ContentValue::Atom(Value::str(&s))
        }
        TypeExpr::Product(ts) => {
            ContentValue::Tuple(ts.iter().map(|t| inhabit(rng, t)).collect())
        }
        TypeExpr::Seq(elem) => {
            let n = rng.below(3);
            ContentValue::List((0..n).map(|_| inhabit(rng, elem)).collect())
        }
        TypeExpr::Sum(ts) => {
            let k = 1 + rng.below(ts.len());
            ContentValue::Inj(k, Box::new(inhabit(rng, &ts[k - 1])))
        }
        TypeExpr::Func(..) => panic!("function types are uninhabited"),
    }
}

/// Flips the tag of the first atom, if any.
pub fn mutate_first_atom(cv: &ContentValue) -> Option<ContentValue> {
    match cv {
        ContentValue::Atom(v) => {
            let flipped = match v {
                Value::IntV(_) => Value::BoolV(false),
                Value::BoolV(_) => Value::str("mutant"),
                Value::StrV(_) => Value::IntV(0),
            };
            Some(ContentValue::Atom(flipped))
        }
        ContentValue::Tuple(vs) | ContentValue::List(vs) => {
            for (i, v) in vs.iter().enumerate() {
                if let Some(m) = mutate_first_atom(v) {
                    let mut vs = vs.clone();
                    vs[i] = m;
                    return Some(match cv {
                        ContentValue::Tuple(_) => ContentValue::Tuple(vs),
                        _ => ContentValue::List(vs),
                    });
                }
            }
            None
        }
        ContentValue::Inj(k, p) => Some(ContentValue::Inj(*k, Box::new(mutate_first_atom(p)?))),
    }
}

/// Serializes a content value in the content-file literal syntax.
pub fn content_literal(cv: &ContentValue) -> String {
    match cv {
        ContentValue::Atom(Value::IntV(n)) => n.to_string(),
        ContentValue::Atom(Value::BoolV(b)) => b.to_string(),
        ContentValue::Atom(Value::StrV(s)) => {
            let mut out = String::from("\"");
            for c in s.chars() {
                match c {
                    '\\' => out.push_str("\\\\"),
                    '"' => out.push_str("\\\""),
                    '\n' => out.push_str("\\n"),
                    '\t' => out.push_str("\\t"),
                    '\r' => out.push_str("\\r"),
                    _ => out.push(c),
                }
            }
            out.push('"');
            out
        }
        ContentValue::Tuple(vs) => {
            let items: Vec<String> = vs.iter().map(content_literal).collect();
            format!("({})", items.join(", "))
        }
        ContentValue::List(vs) => {
            let items: Vec<String> = vs.iter().map(content_literal).collect();
            format!("[{}]", items.join("; "))
        }
        ContentValue::Inj(k, p) => format!("inj {k} {}", content_literal(p)),
    }
}
