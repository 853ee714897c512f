//! Command-line front door for the amcm core: run programs on the stack
//! machine, trace every configuration, check content against templates, and
//! render pages. Stdout carries only the canonical formats; diagnostics go
//! to stderr. Exit codes: 0 success, 1 type mismatch, 2 unbound, 3 parse
//! error, 4 input exhausted, 5 I/O.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use amcm::machine::{compile_com, run_machine, Code};
use amcm::templating::{
    check_slots, parse_content, parse_template, render, BindError, ContentRecord, SlotStatus,
    Template,
};
use amcm::{parse_program, ErrorKind, MemoryMap, State, Value};

#[derive(Parser)]
#[command(name = "amcm", version, about = "Run, trace, check, and render amcm programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a program and print the final state and its output values.
    Run {
        /// Program file (.amcm).
        program: PathBuf,
        /// Reject everything outside the strict subset of the language.
        #[arg(long)]
        strict: bool,
        /// Comma-separated input literals, e.g. `1,true,"s"`.
        #[arg(long, value_name = "CSV")]
        input: Option<String>,
    },
    /// Print every machine configuration the program passes through.
    Trace {
        /// Program file (.amcm).
        program: PathBuf,
        /// Reject everything outside the strict subset of the language.
        #[arg(long)]
        strict: bool,
        /// Comma-separated input literals, e.g. `1,true,"s"`.
        #[arg(long, value_name = "CSV")]
        input: Option<String>,
    },
    /// Report the binding status of every template slot against content.
    Check {
        /// Template file (.tpl).
        template: PathBuf,
        /// Content file (.cnt).
        content: PathBuf,
    },
    /// Render a template with content, writing the page only on success.
    Render {
        /// Template file (.tpl).
        template: PathBuf,
        /// Content file (.cnt).
        content: PathBuf,
        /// Output path for the rendered page.
        #[arg(short, value_name = "PATH")]
        output: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Run { program, strict, input } => cmd_run(program, *strict, input.as_deref()),
        Command::Trace { program, strict, input } => cmd_trace(program, *strict, input.as_deref()),
        Command::Check { template, content } => cmd_check(template, content),
        Command::Render { template, content, output } => cmd_render(template, content, output),
    };
    ExitCode::from(code)
}

/// Every runtime fault maps to exactly one exit code. The step limit is a
/// resource fault and shares the type-mismatch code.
fn fault_code(err: &ErrorKind) -> u8 {
    match err {
        ErrorKind::TypeMismatch { .. } | ErrorKind::StepLimitExceeded(_) => 1,
        ErrorKind::UnboundIdentifier(_) => 2,
        ErrorKind::InputExhausted(_) => 4,
    }
}

fn read_source(path: &Path) -> Result<String, u8> {
    match fs::read_to_string(path) {
        Ok(text) => Ok(text.replace("\r\n", "\n")),
        Err(err) => {
            eprintln!("error: cannot read {}: {err}", path.display());
            Err(5)
        }
    }
}

/// Parses and compiles a program file; an empty file is the empty code.
fn load_code(path: &Path, strict: bool) -> Result<Code, u8> {
    let source = read_source(path)?;
    match parse_program(&source, strict) {
        Ok(Some(com)) => Ok(compile_com(&com)),
        Ok(None) => Ok(Code::empty()),
        Err(err) => {
            eprintln!("error: {}: {err}", path.display());
            Err(3)
        }
    }
}

fn initial_state(input: Option<&str>) -> Result<State, u8> {
    let values = match input {
        None => Vec::new(),
        Some(csv) => parse_input_csv(csv).map_err(|msg| {
            eprintln!("error: --input: {msg}");
            3u8
        })?,
    };
    Ok(State::new(MemoryMap::new(), values, Vec::new()))
}

fn report_fault(err: &ErrorKind) -> u8 {
    eprintln!("error: {err}: {}", err.describe());
    fault_code(err)
}

fn cmd_run(program: &Path, strict: bool, input: Option<&str>) -> u8 {
    let code = match load_code(program, strict) {
        Ok(code) => code,
        Err(n) => return n,
    };
    let state = match initial_state(input) {
        Ok(state) => state,
        Err(n) => return n,
    };
    match run_machine(&code, state).0 {
        Ok(final_state) => {
            println!("{final_state}");
            for v in &final_state.output {
                println!("out: {v}");
            }
            0
        }
        Err(err) => report_fault(&err),
    }
}

fn cmd_trace(program: &Path, strict: bool, input: Option<&str>) -> u8 {
    let code = match load_code(program, strict) {
        Ok(code) => code,
        Err(n) => return n,
    };
    let state = match initial_state(input) {
        Ok(state) => state,
        Err(n) => return n,
    };
    let (outcome, trace) = run_machine(&code, state);
    print!("{trace}");
    match outcome {
        Ok(_) => 0,
        Err(err) => report_fault(&err),
    }
}

fn load_pair(template_path: &Path, content_path: &Path) -> Result<(Template, ContentRecord), u8> {
    let template = parse_template(&read_source(template_path)?).map_err(|err| {
        eprintln!("error: {}: {err}", template_path.display());
        3u8
    })?;
    let content = parse_content(&read_source(content_path)?).map_err(|err| {
        eprintln!("error: {}: {err}", content_path.display());
        3u8
    })?;
    Ok((template, content))
}

fn cmd_check(template_path: &Path, content_path: &Path) -> u8 {
    let (template, content) = match load_pair(template_path, content_path) {
        Ok(pair) => pair,
        Err(n) => return n,
    };
    // Report every slot in template order; the exit code comes from the
    // first failure.
    let mut exit = 0u8;
    for (name, status) in check_slots(&template, &content) {
        match status {
            SlotStatus::Ok => println!("{name}: OK"),
            SlotStatus::Unbound => {
                println!("{name}: UNBOUND");
                if exit == 0 {
                    exit = 2;
                }
            }
            SlotStatus::Mismatch { reason, path } => {
                println!("{name}: TYPE MISMATCH {reason} at {path}");
                if exit == 0 {
                    exit = 1;
                }
            }
        }
    }
    exit
}

fn cmd_render(template_path: &Path, content_path: &Path, output: &Path) -> u8 {
    let (template, content) = match load_pair(template_path, content_path) {
        Ok(pair) => pair,
        Err(n) => return n,
    };
    let page = match render(&template, &content) {
        Ok(page) => page,
        Err(err) => {
            eprintln!("error: {err}");
            return match err {
                BindError::Unbound { .. } => 2,
                BindError::TypeMismatch { .. } => 1,
            };
        }
    };
    // Write through a temp file in the target directory so a failed run
    // never leaves a partial page behind.
    let dir = match output.parent() {
        Some(parent) if !parent.as_os_str().is_empty() => parent,
        _ => Path::new("."),
    };
    let write_page = || -> std::io::Result<()> {
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(page.text.as_bytes())?;
        tmp.persist(output).map_err(|err| err.error)?;
        Ok(())
    };
    match write_page() {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: cannot write {}: {err}", output.display());
            5
        }
    }
}

/// Splits `1,true,"s"` into values. Commas inside quoted strings do not
/// separate; strings use the same escapes as program literals.
fn parse_input_csv(csv: &str) -> Result<Vec<Value>, String> {
    let mut values = Vec::new();
    let mut rest = csv.trim_start();
    if rest.is_empty() {
        return Ok(values);
    }
    loop {
        let (value, after) = parse_input_value(rest)?;
        values.push(value);
        rest = after.trim_start();
        if rest.is_empty() {
            return Ok(values);
        }
        rest = match rest.strip_prefix(',') {
            Some(after_comma) => after_comma.trim_start(),
            None => return Err(format!("expected `,` before `{rest}`")),
        };
        if rest.is_empty() {
            return Err("trailing comma".to_string());
        }
    }
}

fn parse_input_value(s: &str) -> Result<(Value, &str), String> {
    if let Some(body) = s.strip_prefix('"') {
        let mut out = String::new();
        let mut chars = body.char_indices();
        while let Some((i, c)) = chars.next() {
            match c {
                '"' => return Ok((Value::str(&out), &body[i + 1..])),
                '\\' => match chars.next() {
                    Some((_, 'n')) => out.push('\n'),
                    Some((_, 't')) => out.push('\t'),
                    Some((_, 'r')) => out.push('\r'),
                    Some((_, '"')) => out.push('"'),
                    Some((_, '\\')) => out.push('\\'),
                    Some((_, other)) => return Err(format!("unknown escape sequence `\\{other}`")),
                    None => return Err("unterminated string literal".to_string()),
                },
                _ => out.push(c),
            }
        }
        Err("unterminated string literal".to_string())
    } else {
        let end = s.find(|c: char| c == ',' || c.is_whitespace()).unwrap_or(s.len());
        let word = &s[..end];
        let rest = &s[end..];
        match word {
            "true" => Ok((Value::BoolV(true), rest)),
            "false" => Ok((Value::BoolV(false), rest)),
            _ => word
                .parse::<i64>()
                .map(|n| (Value::IntV(n), rest))
                .map_err(|_| format!("invalid literal `{word}`")),
        }
    }
}
