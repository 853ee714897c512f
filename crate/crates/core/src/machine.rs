//! A compiled stack machine equivalent to the reference semantics. Commands
//! compile to linear instruction sequences; branching splices the chosen
//! arm's code inline. Every step is a pure function from configuration to
//! configuration, and a run is the full list of configurations it visits.

use std::fmt;
use std::sync::Arc;

use crate::domains::{lookup, write_stream, Binding, ErrorKind, State, Value};
use crate::syntax::{Com, Exp, Ident};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instr {
    PushConst(Value),
    LoadVar(Ident),
    Store(Ident),
    /// Pops a boolean and continues with the matching arm spliced in front
    /// of the remaining code.
    Branch(Code, Code),
    ReadIn(Ident),
    WriteOut,
}

impl Instr {
    pub fn name(&self) -> &'static str {
        match self {
            Instr::PushConst(_) => "PushConst",
            Instr::LoadVar(_) => "LoadVar",
            Instr::Store(_) => "Store",
            Instr::Branch(..) => "Branch",
            Instr::ReadIn(_) => "ReadIn",
            Instr::WriteOut => "WriteOut",
        }
    }
}

/// An instruction sequence. The head is the next instruction to run.
///
/// Internally a shared slice plus a start offset, so cloning a code value
/// and dropping its head are both O(1); a run's trace shares one backing
/// allocation per splice.
#[derive(Clone, Default)]
pub struct Code {
    instrs: Arc<[Instr]>,
    start: usize,
}

impl Code {
    pub fn empty() -> Code {
        Code::default()
    }

    pub fn from_instrs(instrs: Vec<Instr>) -> Code {
        Code {
            instrs: instrs.into(),
            start: 0,
        }
    }

    pub fn instrs(&self) -> &[Instr] {
        &self.instrs[self.start..]
    }

    pub fn len(&self) -> usize {
        self.instrs.len() - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.instrs.len()
    }

    pub fn concat(self, other: Code) -> Code {
        if self.is_empty() {
            return other;
        }
        if other.is_empty() {
            return self;
        }
        let mut joined = Vec::with_capacity(self.len() + other.len());
        joined.extend_from_slice(self.instrs());
        joined.extend_from_slice(other.instrs());
        Code::from_instrs(joined)
    }

    fn split_head(&self) -> (&Instr, Code) {
        (
            &self.instrs[self.start],
            Code {
                instrs: Arc::clone(&self.instrs),
                start: self.start + 1,
            },
        )
    }
}

impl PartialEq for Code {
    fn eq(&self, other: &Code) -> bool {
        self.instrs() == other.instrs()
    }
}

impl Eq for Code {}

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Code").field(&self.instrs()).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Running,
    Halted,
    Faulted(ErrorKind),
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Running => f.write_str("Running"),
            Status::Halted => f.write_str("Halted"),
            Status::Faulted(e) => write!(f, "Faulted({e})"),
        }
    }
}

/// One machine configuration: remaining code, operand stack, the state
/// triple, and a status flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineState {
    pub code: Code,
    pub stack: Vec<Value>,
    pub state: State,
    pub status: Status,
}

impl MachineState {
    pub fn initial(code: Code, state: State) -> MachineState {
        MachineState {
            code,
            stack: Vec::new(),
            state,
            status: Status::Running,
        }
    }
}

impl fmt::Display for MachineState {
    /// One-line form: `code=2 instrs stack=[] mem{} in[] out[] status=Running`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "code={} instrs stack=", self.code.len())?;
        write_stream(f, "", &self.stack)?;
        write!(f, " {} status={}", self.state, self.status)
    }
}

/// Stepping a halted or faulted configuration is a caller bug, reported
/// separately from the machine's own runtime errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepMisuse;

impl fmt::Display for StepMisuse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("step applied to a non-running machine")
    }
}

impl std::error::Error for StepMisuse {}

pub fn compile_exp(e: &Exp) -> Code {
    let instr = match e {
        Exp::TrueLit => Instr::PushConst(Value::BoolV(true)),
        Exp::FalseLit => Instr::PushConst(Value::BoolV(false)),
        Exp::IntLit(n) => Instr::PushConst(Value::IntV(*n)),
        Exp::StrLit(s) => Instr::PushConst(Value::StrV(s.clone())),
        Exp::Var(id) => Instr::LoadVar(id.clone()),
    };
    Code::from_instrs(vec![instr])
}

pub fn compile_com(c: &Com) -> Code {
    match c {
        Com::Assign(id, e) => compile_exp(e).concat(Code::from_instrs(vec![Instr::Store(id.clone())])),
        Com::If(cond, then, els) => compile_exp(cond).concat(Code::from_instrs(vec![Instr::Branch(
            compile_com(then),
            compile_com(els),
        )])),
        Com::Seq(c1, c2) => compile_com(c1).concat(compile_com(c2)),
        Com::Read(id) => Code::from_instrs(vec![Instr::ReadIn(id.clone())]),
        Com::Write(e) => compile_exp(e).concat(Code::from_instrs(vec![Instr::WriteOut])),
    }
}

/// Executes one instruction (or halts an exhausted configuration) and
/// returns the successor. A fault consumes the offending instruction, sets
/// the status, and leaves stack and state as they were.
///
/// A configuration halts in the same step that drains both code and stack;
/// with a non-empty stack left behind (possible only for hand-built code),
/// halting takes one further step.
pub fn step(ms: &MachineState) -> Result<MachineState, StepMisuse> {
    if ms.status != Status::Running {
        return Err(StepMisuse);
    }
    if ms.code.is_empty() {
        return Ok(MachineState {
            status: Status::Halted,
            ..ms.clone()
        });
    }

    let (instr, rest) = ms.code.split_head();
    let fault = |e: ErrorKind| MachineState {
        code: rest.clone(),
        stack: ms.stack.clone(),
        state: ms.state.clone(),
        status: Status::Faulted(e),
    };
    let underflow = || {
        fault(ErrorKind::TypeMismatch {
            expected: "stack value",
            got: "empty stack",
            site: instr.name(),
        })
    };

    let mut code = rest.clone();
    let mut stack = ms.stack.clone();
    let mut state = ms.state.clone();
    match instr {
        Instr::PushConst(v) => stack.push(v.clone()),
        Instr::LoadVar(id) => match lookup(&state.memory, id) {
            Binding::Bound(v) => stack.push(v),
            Binding::Unbound => return Ok(fault(ErrorKind::UnboundIdentifier(id.clone()))),
        },
        Instr::Store(id) => match stack.pop() {
            Some(v) => state.memory.insert(id.clone(), v),
            None => return Ok(underflow()),
        },
        Instr::Branch(then_code, else_code) => match stack.pop() {
            Some(Value::BoolV(true)) => code = then_code.clone().concat(code),
            Some(Value::BoolV(false)) => code = else_code.clone().concat(code),
            Some(v) => {
                return Ok(fault(ErrorKind::TypeMismatch {
                    expected: "Bool",
                    got: v.tag_name(),
                    site: "if-condition",
                }))
            }
            None => return Ok(underflow()),
        },
        Instr::ReadIn(id) => {
            if state.input.is_empty() {
                return Ok(fault(ErrorKind::InputExhausted(id.clone())));
            }
            let v = state.input.remove(0);
            state.memory.insert(id.clone(), v);
        }
        Instr::WriteOut => match stack.pop() {
            Some(v) => state.output.push(v),
            None => return Ok(underflow()),
        },
    }

    let status = if code.is_empty() && stack.is_empty() {
        Status::Halted
    } else {
        Status::Running
    };
    Ok(MachineState { code, stack, state, status })
}

/// Every configuration a run visits, in order. The first entry is the
/// initial configuration and the last is the only non-running one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace(Vec<MachineState>);

impl Trace {
    pub fn configs(&self) -> &[MachineState] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn final_config(&self) -> &MachineState {
        self.0.last().expect("a trace is never empty")
    }
}

impl fmt::Display for Trace {
    /// One numbered line per configuration, each newline-terminated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, ms) in self.0.iter().enumerate() {
            writeln!(f, "#{i} {ms}")?;
        }
        Ok(())
    }
}

/// Defensive bound on run length. Compiled programs finish in one step per
/// effective instruction, so only enormous inputs can reach this.
pub const DEFAULT_STEP_LIMIT: usize = 1_000_000;

pub fn run_machine(code: &Code, s: State) -> (Result<State, ErrorKind>, Trace) {
    run_machine_with_limit(code, s, DEFAULT_STEP_LIMIT)
}

pub fn run_machine_with_limit(
    code: &Code,
    s: State,
    limit: usize,
) -> (Result<State, ErrorKind>, Trace) {
    // Linear code runs one step per instruction plus the halt step; splices
    // only lengthen that, so this is a floor, not a bound.
    let mut configs = Vec::with_capacity(code.len() + 2);
    configs.push(MachineState::initial(code.clone(), s));
    let mut steps = 0;
    while configs.last().unwrap().status == Status::Running {
        if steps == limit {
            let mut capped = configs.last().unwrap().clone();
            capped.status = Status::Faulted(ErrorKind::StepLimitExceeded(limit));
            configs.push(capped);
            break;
        }
        let next = step(configs.last().unwrap()).expect("status checked above");
        configs.push(next);
        steps += 1;
    }
    let last = configs.last().unwrap();
    let outcome = match &last.status {
        Status::Halted => Ok(last.state.clone()),
        Status::Faulted(e) => Err(e.clone()),
        Status::Running => unreachable!("loop exits only on a settled status"),
    };
    (outcome, Trace(configs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::denotational::exec_com;
    use crate::syntax::parse_com;
    use proptest::prelude::*;

    fn id(name: &str) -> Ident {
        Ident::new(name).unwrap()
    }

    fn compile(src: &str) -> Code {
        compile_com(&parse_com(src, false).unwrap())
    }

    #[test]
    fn compile_assign() {
        assert_eq!(
            compile("x = 0"),
            Code::from_instrs(vec![Instr::PushConst(Value::IntV(0)), Instr::Store(id("x"))])
        );
    }

    #[test]
    fn compile_if() {
        assert_eq!(
            compile("if (b) x = 0 else x = 1"),
            Code::from_instrs(vec![
                Instr::LoadVar(id("b")),
                Instr::Branch(
                    Code::from_instrs(vec![Instr::PushConst(Value::IntV(0)), Instr::Store(id("x"))]),
                    Code::from_instrs(vec![Instr::PushConst(Value::IntV(1)), Instr::Store(id("x"))]),
                ),
            ])
        );
    }

    #[test]
    fn compile_seq_concatenates() {
        assert_eq!(compile("x = 0; y = 1"), compile("x = 0").concat(compile("y = 1")));
    }

    #[test]
    fn compile_read_write() {
        assert_eq!(compile("read a"), Code::from_instrs(vec![Instr::ReadIn(id("a"))]));
        assert_eq!(
            compile("write x"),
            Code::from_instrs(vec![Instr::LoadVar(id("x")), Instr::WriteOut])
        );
    }

    #[test]
    fn concat_laws() {
        let a = compile("x = 0");
        let b = compile("y = 1");
        let c = compile("z = true");
        assert_eq!(
            a.clone().concat(b.clone()).concat(c.clone()),
            a.clone().concat(b.clone().concat(c.clone()))
        );
        assert_eq!(a.clone().concat(Code::empty()), a);
        assert_eq!(Code::empty().concat(b.clone()), b);
    }

    #[test]
    fn push_leaves_stack_then_halts_next_step() {
        let ms = MachineState::initial(
            Code::from_instrs(vec![Instr::PushConst(Value::IntV(1))]),
            State::empty(),
        );
        let after = step(&ms).unwrap();
        assert_eq!(after.code, Code::empty());
        assert_eq!(after.stack, vec![Value::IntV(1)]);
        assert_eq!(after.status, Status::Running);
        let halted = step(&after).unwrap();
        assert_eq!(halted.status, Status::Halted);
        assert_eq!(halted.stack, vec![Value::IntV(1)]);
    }

    #[test]
    fn load_of_unbound_faults_and_consumes_instruction() {
        let ms = MachineState::initial(compile("x = y"), State::empty());
        let after = step(&ms).unwrap();
        assert_eq!(after.code.len(), 1);
        assert!(after.stack.is_empty());
        assert_eq!(after.status, Status::Faulted(ErrorKind::UnboundIdentifier(id("y"))));
    }

    #[test]
    fn branch_on_non_bool_faults() {
        let ms = MachineState::initial(compile("if (0) x = 0 else x = 1"), State::empty());
        let after = step(&ms).unwrap(); // PushConst(0)
        let after = step(&after).unwrap(); // Branch
        assert_eq!(
            after.status,
            Status::Faulted(ErrorKind::TypeMismatch {
                expected: "Bool",
                got: "Int",
                site: "if-condition",
            })
        );
        // The offending value is left in place for inspection.
        assert_eq!(after.stack, vec![Value::IntV(0)]);
    }

    #[test]
    fn branch_splices_chosen_arm() {
        let ms = MachineState::initial(compile("{if (true) x = 0 else x = 1}; y = 1"), State::empty());
        let after = step(&ms).unwrap(); // PushConst(true)
        let after = step(&after).unwrap(); // Branch
        // Then-arm (2 instrs) spliced ahead of the continuation (2 instrs).
        assert_eq!(after.code.len(), 4);
        assert_eq!(after.status, Status::Running);
    }

    #[test]
    fn store_on_empty_stack_underflows() {
        let ms = MachineState::initial(Code::from_instrs(vec![Instr::Store(id("x"))]), State::empty());
        let after = step(&ms).unwrap();
        assert_eq!(
            after.status,
            Status::Faulted(ErrorKind::TypeMismatch {
                expected: "stack value",
                got: "empty stack",
                site: "Store",
            })
        );
    }

    #[test]
    fn stepping_settled_configurations_is_misuse() {
        let halted = MachineState {
            status: Status::Halted,
            ..MachineState::initial(Code::empty(), State::empty())
        };
        assert_eq!(step(&halted), Err(StepMisuse));
        let faulted = MachineState {
            status: Status::Faulted(ErrorKind::UnboundIdentifier(id("x"))),
            ..MachineState::initial(Code::empty(), State::empty())
        };
        assert_eq!(step(&faulted), Err(StepMisuse));
    }

    #[test]
    fn assign_runs_in_three_configurations() {
        let (outcome, trace) = run_machine(&compile("x = 0"), State::empty());
        let s = outcome.unwrap();
        assert_eq!(s.to_string(), "mem{x=0} in[] out[]");
        assert_eq!(trace.len(), 3);
        assert_eq!(
            trace.to_string(),
            "#0 code=2 instrs stack=[] mem{} in[] out[] status=Running\n\
             #1 code=1 instrs stack=[0] mem{} in[] out[] status=Running\n\
             #2 code=0 instrs stack=[] mem{x=0} in[] out[] status=Halted\n"
        );
    }

    #[test]
    fn empty_code_halts_in_two_configurations() {
        let (outcome, trace) = run_machine(&Code::empty(), State::empty());
        assert_eq!(outcome, Ok(State::empty()));
        assert_eq!(trace.len(), 2);
        assert_eq!(
            trace.to_string(),
            "#0 code=0 instrs stack=[] mem{} in[] out[] status=Running\n\
             #1 code=0 instrs stack=[] mem{} in[] out[] status=Halted\n"
        );
    }

    #[test]
    fn unbound_variable_run_ends_faulted() {
        let (outcome, trace) = run_machine(&compile("x = y"), State::empty());
        assert_eq!(outcome, Err(ErrorKind::UnboundIdentifier(id("y"))));
        assert_eq!(trace.len(), 2);
        assert_eq!(
            trace.to_string(),
            "#0 code=2 instrs stack=[] mem{} in[] out[] status=Running\n\
             #1 code=1 instrs stack=[] mem{} in[] out[] status=Faulted(UnboundIdentifier(y))\n"
        );
    }

    #[test]
    fn read_write_round_trip_through_machine() {
        let s = State::new(Default::default(), vec![Value::IntV(7)], vec![]);
        let (outcome, _) = run_machine(&compile("read a; write a"), s);
        let s = outcome.unwrap();
        assert_eq!(s.to_string(), "mem{a=7} in[] out[7]");
    }

    #[test]
    fn step_limit_faults_distinctly() {
        let (outcome, trace) = run_machine_with_limit(&compile("x = 0; y = 1"), State::empty(), 2);
        assert_eq!(outcome, Err(ErrorKind::StepLimitExceeded(2)));
        assert_eq!(
            trace.final_config().status,
            Status::Faulted(ErrorKind::StepLimitExceeded(2))
        );
    }

    #[test]
    fn halted_compiled_runs_leave_empty_stacks() {
        for src in ["x = 0", "x = 0; y = 1", "if (true) x = 0 else x = 1", "write 0"] {
            let (outcome, trace) = run_machine(&compile(src), State::empty());
            assert!(outcome.is_ok(), "{src}");
            assert!(trace.final_config().stack.is_empty(), "{src}");
            assert_eq!(trace.final_config().status, Status::Halted, "{src}");
        }
    }

    fn small_state_strategy() -> impl Strategy<Value = State> {
        let value = prop_oneof![
            (-3i64..4).prop_map(Value::IntV),
            any::<bool>().prop_map(Value::BoolV),
        ];
        (
            proptest::collection::btree_map(
                crate::syntax::tests::ident_strategy(),
                value.clone(),
                0..3,
            ),
            proptest::collection::vec(value, 0..3),
        )
            .prop_map(|(m, i)| State::new(m.into_iter().collect(), i, vec![]))
    }

    proptest! {
        #[test]
        fn machine_agrees_with_reference_semantics(
            c in crate::syntax::tests::com_strategy(4),
            s in small_state_strategy(),
        ) {
            let reference = exec_com(&c, s.clone());
            let (machine, trace) = run_machine(&compile_com(&c), s);
            prop_assert_eq!(&machine, &reference);
            match trace.final_config().status {
                Status::Halted => prop_assert!(machine.is_ok()),
                Status::Faulted(_) => prop_assert!(machine.is_err()),
                Status::Running => prop_assert!(false, "trace ended running"),
            }
        }
    }
}
