//! `pi` — command-line front end: type checking, bidirectional
//! evaluation, inversion, equivalence, denotation, permutation
//! synthesis, function factorization, arrow-layer comparison, the
//! quantum backend, and the Turing machine lab.
//!
//! Exit codes: 0 success (or positive verdict), 1 negative verdict
//! (inequivalent, determinism violation), 2 usage, parse or type errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pi_core::ast::{Comb, QComb};
use pi_core::denote::{denote, equiv, synth_perm};
use pi_core::effects::factorize;
use pi_core::eval::{eval, invert};
use pi_core::finfun::FinFun;
use pi_core::parser;
use pi_core::perm::Permutation;
use pi_core::quantum::{self, channel_from_stages, CMatrix, C64};
use pi_core::tm;
use pi_core::typecheck::{check_against, infer, MetaType};
use pi_core::value::Value;
use pi_core::ValueType;

#[derive(Parser)]
#[command(name = "pi", about = "A reversible combinator language toolchain", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Type-check a program and print its principal type
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Evaluate a program on a value
    Run {
        file: PathBuf,
        #[arg(long)]
        input: String,
        /// Run the program backwards
        #[arg(long)]
        reverse: bool,
        /// Ground type `b1 <-> b2` when the program leaves it open
        #[arg(long = "type")]
        ty: Option<String>,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Print the syntactic inverse of a program
    Invert {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Decide extensional equivalence of two programs at a type
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long = "type")]
        ty: String,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Print the permutation a program denotes, as a JSON array
    Denote {
        file: PathBuf,
        #[arg(long = "type")]
        ty: Option<String>,
    },
    /// Synthesize a program denoting a permutation at a type
    Synth {
        /// Permutation image as a JSON array, e.g. `[1,0]`
        #[arg(long)]
        perm: String,
        #[arg(long = "type")]
        ty: String,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Factor a function as injection ; bijection ; projection
    Factor {
        /// Function table "0:0,1:0"
        #[arg(long)]
        fun: String,
        #[arg(long)]
        dom: usize,
        #[arg(long)]
        cod: usize,
    },
    /// Compare two effect-layer terms extensionally
    ArrowEquiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value = "alloc")]
        layer: Layer,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Apply a quantum program to a state vector
    Qrun {
        file: PathBuf,
        /// Basis index, or a JSON state vector `[[re,im],...]`
        #[arg(long)]
        state: String,
        #[arg(long = "type")]
        ty: Option<String>,
    },
    /// Apply a channel pipeline to a density matrix
    Qchan {
        file: PathBuf,
        /// Density matrix as flat row-major JSON `[[re,im],...]`
        #[arg(long)]
        rho: Option<String>,
        /// Print the Stinespring normal form instead
        #[arg(long)]
        normal_form: bool,
        /// Validation tolerance for the input state
        #[arg(long, default_value_t = pi_core::quantum::STRUCT_TOL)]
        tol: f64,
    },
    /// Turing machine lab
    Tm {
        #[command(subcommand)]
        command: TmCommand,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Layer {
    Alloc,
    Hide,
}

#[derive(Subcommand)]
enum TmCommand {
    /// Run a machine on an input
    Run {
        machine: PathBuf,
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 100_000)]
        fuel: usize,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Check forward and backward determinism
    Check {
        machine: PathBuf,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Instrument with a history tape; with --input, run and unwind
    Landauer {
        machine: PathBuf,
        #[arg(long)]
        input: Option<String>,
        #[arg(long, default_value_t = 100_000)]
        fuel: usize,
    },
    /// Build the 3-tape compute-copy-uncompute machine; with --input, run it
    Bennett {
        machine: PathBuf,
        #[arg(long)]
        input: Option<String>,
        #[arg(long, default_value_t = 1_000_000)]
        fuel: usize,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

fn fail<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure { code: 2, msg: msg.into() })
}

fn verdict(msg: impl Into<String>) -> Failure {
    Failure { code: 1, msg: msg.into() }
}

trait OrFail<T> {
    fn or_fail(self) -> Result<T, Failure>;
}

impl<T, E: std::fmt::Display> OrFail<T> for Result<T, E> {
    fn or_fail(self) -> Result<T, Failure> {
        self.map_err(|e| Failure { code: 2, msg: e.to_string() })
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure { code: 2, msg: format!("{}: {e}", path.display()) })
}

fn load_comb(path: &PathBuf) -> Result<Comb, Failure> {
    parser::parse_comb(&read(path)?).or_fail()
}

fn load_qcomb(path: &PathBuf) -> Result<QComb, Failure> {
    parser::parse_qcomb(&read(path)?).or_fail()
}

fn load_machine(path: &PathBuf) -> Result<tm::TuringMachine, Failure> {
    let spec: tm::MachineSpec = serde_json::from_str(&read(path)?).or_fail()?;
    tm::TuringMachine::from_spec(&spec).or_fail()
}

/// Pin the ground type of a term from an optional explicit type, in-file
/// ascriptions, and the shape of the value it is applied to.
fn resolve_type(
    c: &Comb,
    ty: &Option<String>,
    input: &Value,
    reverse: bool,
) -> Result<(ValueType, ValueType), Failure> {
    if let Some(t) = ty {
        let (dom, cod) = parser::parse_comb_type(t).or_fail()?;
        return Ok((dom, cod));
    }
    let mut next = 0;
    let shape = value_shape(input, &mut next);
    let free = MetaType::Var(next);
    let (dom_shape, cod_shape) = if reverse { (free, shape) } else { (shape, free) };
    let tt = check_against(c, &dom_shape, &cod_shape).or_fail()?;
    Ok((tt.dom, tt.cod))
}

fn value_shape(v: &Value, next: &mut u32) -> MetaType {
    match v {
        Value::Unit => MetaType::One,
        Value::InL(x) => {
            let l = value_shape(x, next);
            *next += 1;
            MetaType::sum(l, MetaType::Var(*next - 1))
        }
        Value::InR(x) => {
            let r = value_shape(x, next);
            *next += 1;
            MetaType::sum(MetaType::Var(*next - 1), r)
        }
        Value::Pair(a, b) => {
            let l = value_shape(a, next);
            let r = value_shape(b, next);
            MetaType::prod(l, r)
        }
    }
}

fn parse_state(s: &str, dim: usize) -> Result<Vec<C64>, Failure> {
    if let Ok(k) = s.trim().parse::<usize>() {
        if k >= dim {
            return fail(format!("basis index {k} out of range for dimension {dim}"));
        }
        let mut v = vec![C64::new(0.0, 0.0); dim];
        v[k] = C64::new(1.0, 0.0);
        return Ok(v);
    }
    let raw: Vec<[f64; 2]> = serde_json::from_str(s).or_fail()?;
    if raw.len() != dim {
        return fail(format!("state has {} entries, expected {dim}", raw.len()));
    }
    Ok(raw.into_iter().map(|[re, im]| C64::new(re, im)).collect())
}

fn matrix_json(m: &CMatrix) -> String {
    let flat: Vec<[f64; 2]> = m.data().iter().map(|z| [z.re, z.im]).collect();
    serde_json::to_string(&flat).expect("serializable")
}

fn vector_json(v: &[C64]) -> String {
    let flat: Vec<[f64; 2]> = v.iter().map(|z| [z.re, z.im]).collect();
    serde_json::to_string(&flat).expect("serializable")
}

fn parse_rho(s: &str) -> Result<CMatrix, Failure> {
    let raw: Vec<[f64; 2]> = serde_json::from_str(s).or_fail()?;
    let dim = (raw.len() as f64).sqrt().round() as usize;
    if dim * dim != raw.len() {
        return fail(format!("density matrix needs a square entry count, got {}", raw.len()));
    }
    let data: Vec<C64> = raw.into_iter().map(|[re, im]| C64::new(re, im)).collect();
    Ok(CMatrix::from_fn(dim, dim, |i, j| data[i * dim + j]))
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Check { file, format } => {
            let c = load_comb(&file)?;
            let ty = infer(&c).or_fail()?;
            match format {
                Format::Human => println!("{ty}"),
                Format::Json => {
                    let t = ty.canonicalize();
                    println!(
                        "{}",
                        serde_json::json!({ "dom": t.dom.to_string(), "cod": t.cod.to_string() })
                    );
                }
            }
            Ok(())
        }
        Command::Run { file, input, reverse, ty, format } => {
            let c = load_comb(&file)?;
            let v = parser::parse_value(&input).or_fail()?;
            let (dom, cod) = resolve_type(&c, &ty, &v, reverse)?;
            let c = if reverse { invert(&c) } else { c };
            let (dom, cod) = if reverse { (cod, dom) } else { (dom, cod) };
            pi_core::typecheck::check(&c, &dom, &cod).or_fail()?;
            if !v.has_type(&dom) {
                return fail(format!("input `{v}` does not inhabit `{dom}`"));
            }
            let w = eval(&c, v).or_fail()?;
            match format {
                Format::Human => println!("{w}"),
                Format::Json => println!("{}", serde_json::json!({ "value": w.to_string() })),
            }
            Ok(())
        }
        Command::Invert { file, format } => {
            let c = load_comb(&file)?;
            let inverted = invert(&c);
            match format {
                Format::Human => println!("{inverted}"),
                Format::Json => println!("{}", serde_json::json!({ "term": inverted.to_string() })),
            }
            Ok(())
        }
        Command::Equiv { a, b, ty, format } => {
            let (dom, cod) = parser::parse_comb_type(&ty).or_fail()?;
            let ca = load_comb(&a)?;
            let cb = load_comb(&b)?;
            let same = equiv(&ca, &cb, &dom, &cod).or_fail()?;
            if format == Format::Json {
                println!("{}", serde_json::json!({ "equivalent": same }));
                if same {
                    return Ok(());
                }
                return Err(Failure { code: 1, msg: String::new() });
            }
            if same {
                println!("equivalent");
                Ok(())
            } else {
                Err(verdict("inequivalent"))
            }
        }
        Command::Denote { file, ty } => {
            let c = load_comb(&file)?;
            let (dom, cod) = match ty {
                Some(t) => parser::parse_comb_type(&t).or_fail()?,
                None => {
                    let t = infer(&c).or_fail()?;
                    match (t.dom.to_ground(), t.cod.to_ground()) {
                        (Some(d), Some(k)) => (d, k),
                        _ => return fail(format!("non-ground type `{t}`; pass --type")),
                    }
                }
            };
            let p = denote(&c, &dom, &cod).or_fail()?;
            println!("{}", serde_json::to_string(&p).or_fail()?);
            Ok(())
        }
        Command::Synth { perm, ty, format } => {
            let image: Vec<usize> = serde_json::from_str(&perm).or_fail()?;
            let p = Permutation::from_image(image).or_fail()?;
            let b = parser::parse_type(&ty).or_fail()?;
            let c = synth_perm(&p, &b).or_fail()?;
            match format {
                Format::Human => println!("{c}"),
                Format::Json => println!("{}", serde_json::json!({ "term": c.to_string() })),
            }
            Ok(())
        }
        Command::Factor { fun, dom, cod } => {
            let mut table = vec![0usize; dom];
            let mut seen = vec![false; dom];
            for part in fun.split(',').filter(|p| !p.trim().is_empty()) {
                let (k, v) = part
                    .split_once(':')
                    .ok_or_else(|| Failure { code: 2, msg: format!("bad table entry `{part}`") })?;
                let k: usize = k.trim().parse().or_fail()?;
                let v: usize = v.trim().parse().or_fail()?;
                if k >= dom {
                    return fail(format!("key {k} out of domain 0..{dom}"));
                }
                table[k] = v;
                seen[k] = true;
            }
            if let Some(k) = seen.iter().position(|s| !s) {
                return fail(format!("table misses key {k}"));
            }
            let f = FinFun::new(dom, cod, table).or_fail()?;
            let fact = factorize(&f).or_fail()?;
            println!(
                "{}",
                serde_json::json!({
                    "heap": fact.heap,
                    "garbage": fact.garbage,
                    "bij": fact.bij.image(),
                })
            );
            Ok(())
        }
        Command::ArrowEquiv { a, b, layer, format } => {
            let same = match layer {
                Layer::Alloc => {
                    let ta = parser::parse_arrow_expr(&read(&a)?).or_fail()?.build().or_fail()?;
                    let tb = parser::parse_arrow_expr(&read(&b)?).or_fail()?.build().or_fail()?;
                    ta.ext_eq(&tb)
                }
                Layer::Hide => {
                    let ta = parser::parse_hide_expr(&read(&a)?).or_fail()?.build().or_fail()?;
                    let tb = parser::parse_hide_expr(&read(&b)?).or_fail()?.build().or_fail()?;
                    ta.ext_eq(&tb)
                }
            };
            if format == Format::Json {
                println!("{}", serde_json::json!({ "equivalent": same }));
                if same {
                    return Ok(());
                }
                return Err(Failure { code: 1, msg: String::new() });
            }
            if same {
                println!("equivalent");
                Ok(())
            } else {
                Err(verdict("inequivalent"))
            }
        }
        Command::Qrun { file, state, ty } => {
            let c = load_qcomb(&file)?;
            let (dom, cod) = match ty {
                Some(t) => parser::parse_comb_type(&t).or_fail()?,
                None => {
                    let t = infer(&c).or_fail()?;
                    match (t.dom.to_ground(), t.cod.to_ground()) {
                        (Some(d), Some(k)) => (d, k),
                        _ => return fail(format!("non-ground type `{t}`; pass --type")),
                    }
                }
            };
            let u = quantum::denote_q(&c, &dom, &cod).or_fail()?;
            let s = parse_state(&state, dom.size())?;
            let out = quantum::apply_unitary(u.matrix(), &s).or_fail()?;
            println!("{}", vector_json(&out));
            Ok(())
        }
        Command::Qchan { file, rho, normal_form, tol } => {
            let stages = parser::parse_pipeline(&read(&file)?).or_fail()?;
            let chan = channel_from_stages(&stages).or_fail()?;
            if normal_form {
                println!(
                    "{}",
                    serde_json::json!({
                        "in": chan.in_dim(),
                        "prep": chan.prep_dim(),
                        "out": chan.out_dim(),
                        "discard": chan.discard_dim(),
                        "unitary": serde_json::from_str::<serde_json::Value>(&matrix_json(chan.unitary())).unwrap(),
                    })
                );
                return Ok(());
            }
            let Some(rho) = rho else {
                return fail("pass --rho or --normal-form");
            };
            let m = parse_rho(&rho)?;
            let rho = quantum::DensityMatrix::with_tolerance(m, tol).or_fail()?;
            let out = chan.apply(&rho).or_fail()?;
            println!("{}", matrix_json(out.matrix()));
            Ok(())
        }
        Command::Tm { command } => dispatch_tm(command),
    }
}

fn dispatch_tm(cmd: TmCommand) -> Result<(), Failure> {
    match cmd {
        TmCommand::Run { machine, input, fuel, format } => {
            let m = load_machine(&machine)?;
            let out = tm::run(&m, &input, fuel).or_fail()?;
            if format == Format::Json {
                let status = match out.status {
                    tm::RunStatus::Halted => "halted",
                    tm::RunStatus::FuelExhausted => "fuel-exhausted",
                    tm::RunStatus::Stuck => "stuck",
                };
                let tapes: Vec<String> =
                    (0..m.tapes()).map(|t| out.config.tape_string(&m, t)).collect();
                println!(
                    "{}",
                    serde_json::json!({
                        "status": status,
                        "steps": out.steps,
                        "state": m.state_name(out.config.state),
                        "tapes": tapes,
                    })
                );
                return if out.status == tm::RunStatus::Halted {
                    Ok(())
                } else {
                    Err(Failure { code: 1, msg: String::new() })
                };
            }
            match out.status {
                tm::RunStatus::Halted => {
                    println!("halted after {} steps", out.steps);
                    for t in 0..m.tapes() {
                        println!("tape {}: {}", t + 1, out.config.tape_string(&m, t));
                    }
                    Ok(())
                }
                tm::RunStatus::FuelExhausted => Err(verdict(format!("fuel exhausted after {} steps", out.steps))),
                tm::RunStatus::Stuck => Err(verdict(format!(
                    "stuck in state `{}` after {} steps",
                    m.state_name(out.config.state),
                    out.steps
                ))),
            }
        }
        TmCommand::Check { machine, format } => {
            let m = load_machine(&machine)?;
            let fwd = tm::check_forward_deterministic(&m);
            let bwd = tm::check_backward_deterministic(&m);
            if format == Format::Json {
                println!(
                    "{}",
                    serde_json::json!({
                        "forward": fwd.violations,
                        "backward": bwd.violations,
                        "reversible": fwd.ok() && bwd.ok(),
                    })
                );
                return if fwd.ok() && bwd.ok() {
                    Ok(())
                } else {
                    Err(Failure { code: 1, msg: String::new() })
                };
            }
            let show = |label: &str, report: &tm::DeterminismReport| {
                if report.ok() {
                    println!("{label}: deterministic");
                } else {
                    println!("{label}: {} violating rule pair(s)", report.violations.len());
                    for (i, j) in &report.violations {
                        println!("  rules {i} and {j}");
                    }
                }
            };
            show("forward", &fwd);
            show("backward", &bwd);
            if fwd.ok() && bwd.ok() {
                Ok(())
            } else {
                Err(verdict("machine is not reversible"))
            }
        }
        TmCommand::Landauer { machine, input, fuel } => {
            let m = load_machine(&machine)?;
            let inst = tm::landauer_instrument(&m).or_fail()?;
            match input {
                None => {
                    println!("{}", serde_json::to_string_pretty(&inst.machine().to_spec()).or_fail()?);
                    Ok(())
                }
                Some(input) => {
                    let (fwd, bwd) = inst.run_and_unwind(&input, fuel).or_fail()?;
                    println!("computed in {} steps", fwd.steps);
                    println!("tape 1: {}", fwd.config.tape_string(inst.machine(), 0));
                    println!("tape 2: {}", fwd.config.tape_string(inst.machine(), 1));
                    println!("unwound in {} steps", bwd.steps);
                    println!("tape 1: {}", bwd.config.tape_string(inst.unwinder(), 0));
                    println!("tape 2: {}", bwd.config.tape_string(inst.unwinder(), 1));
                    Ok(())
                }
            }
        }
        TmCommand::Bennett { machine, input, fuel } => {
            let m = load_machine(&machine)?;
            match input {
                None => {
                    let composite = tm::bennett::bennett(&m).or_fail()?;
                    println!("{}", serde_json::to_string_pretty(&composite.to_spec()).or_fail()?);
                    Ok(())
                }
                Some(input) => {
                    let out = tm::bennett::run_bennett(&m, &input, fuel).or_fail()?;
                    println!("halted after {} steps", out.steps);
                    println!("tape 1 (input):   {}", out.input_tape);
                    println!("tape 2 (history): {}", out.history_tape);
                    println!("tape 3 (output):  {}", out.output_tape);
                    Ok(())
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { code: 1, msg }) => {
            if !msg.is_empty() {
                println!("{msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure { code, msg }) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
