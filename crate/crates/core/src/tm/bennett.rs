//! The 3-tape compute-copy-uncompute construction: run the instrumented
//! machine, copy the output to a dedicated tape, then run the inverse
//! rules to swallow the history, leaving input, blank history, output.
//!
//! Stages live in disjoint state-set copies glued by bridge rules, so
//! the composite stays analyzable by the determinism checkers: it is
//! both forward and backward deterministic whenever the source machine
//! is forward deterministic.
//!
//! Machines fed to this construction must follow the standard
//! configuration convention: the head starts on the leftmost input cell
//! and halts on the leftmost output cell, with the output contiguous and
//! the cell left of it blank.

use crate::error::TmError;
use crate::tm::{
    check_forward_deterministic, landauer_instrument, run, Config, Move, Rule, RunOutcome,
    RunStatus, TuringMachine,
};

/// Build the composite 3-tape machine.
pub fn bennett(tm: &TuringMachine) -> Result<TuringMachine, TmError> {
    if tm.tapes() != 1 {
        return Err(TmError::NotOneTape(tm.tapes()));
    }
    let report = check_forward_deterministic(tm);
    if !report.ok() {
        return Err(TmError::NotForwardDeterministic(report.violations.len()));
    }
    if tm.rules().iter().any(|r| r.state == tm.halt()) {
        // the compute-copy bridge owns the halt state
        return Err(TmError::Stuck {
            state: format!("halt state `{}` has outgoing rules", tm.state_name(tm.halt())),
            steps: 0,
        });
    }
    let inst = landauer_instrument(tm)?;
    let fwd = inst.machine();
    let bwd = inst.unwinder();

    let alphabet = fwd.alphabet().to_vec();
    let blank_name = alphabet[fwd.blank()].clone();
    let blank = fwd.blank();
    let base_syms = tm.alphabet().len();

    // composite state space: compute copies, the two copier states, and
    // the unwinder's states verbatim
    let mut states: Vec<String> = fwd.states().iter().map(|s| format!("c:{s}")).collect();
    let compute = |q: usize| q;
    let copy_state = states.len();
    states.push("copy".to_string());
    let rewind_state = states.len();
    states.push("rewind".to_string());
    let unwind_base = states.len();
    states.extend(bwd.states().iter().cloned());
    let unwind = |q: usize| unwind_base + q;

    let mut rules: Vec<Rule> = Vec::new();
    // compute stage: instrumented rules, tape 3 untouched
    for r in fwd.rules() {
        rules.push(Rule {
            state: compute(r.state),
            read: vec![r.read[0], r.read[1], blank],
            next: compute(r.next),
            write: vec![r.write[0], r.write[1], blank],
            moves: vec![r.moves[0], r.moves[1], Move::S],
        });
    }
    // bridge: computing halted, go copy (history head rests on blank)
    for x in 0..base_syms {
        rules.push(Rule {
            state: compute(fwd.halt()),
            read: vec![x, blank, blank],
            next: copy_state,
            write: vec![x, blank, blank],
            moves: vec![Move::S, Move::S, Move::S],
        });
    }
    // copy the output word rightwards onto tape 3
    for x in 0..base_syms {
        if x == blank {
            continue;
        }
        rules.push(Rule {
            state: copy_state,
            read: vec![x, blank, blank],
            next: copy_state,
            write: vec![x, blank, x],
            moves: vec![Move::R, Move::S, Move::R],
        });
    }
    rules.push(Rule {
        state: copy_state,
        read: vec![blank, blank, blank],
        next: rewind_state,
        write: vec![blank, blank, blank],
        moves: vec![Move::L, Move::S, Move::S],
    });
    // walk back to where computing halted
    for x in 0..base_syms {
        if x == blank {
            continue;
        }
        rules.push(Rule {
            state: rewind_state,
            read: vec![x, blank, blank],
            next: rewind_state,
            write: vec![x, blank, blank],
            moves: vec![Move::L, Move::S, Move::S],
        });
    }
    rules.push(Rule {
        state: rewind_state,
        read: vec![blank, blank, blank],
        next: unwind(bwd.start()),
        write: vec![blank, blank, blank],
        moves: vec![Move::R, Move::S, Move::S],
    });
    // uncompute stage: unwinder rules, tape 3 untouched
    for r in bwd.rules() {
        rules.push(Rule {
            state: unwind(r.state),
            read: vec![r.read[0], r.read[1], blank],
            next: unwind(r.next),
            write: vec![r.write[0], r.write[1], blank],
            moves: vec![r.moves[0], r.moves[1], Move::S],
        });
    }

    let start_name = states[compute(fwd.start())].clone();
    let halt_name = states[unwind(bwd.halt())].clone();
    TuringMachine::new(
        format!("{}+bennett", tm.name()),
        3,
        states,
        alphabet,
        &blank_name,
        &start_name,
        &halt_name,
        rules,
    )
}

#[derive(Debug, Clone)]
pub struct BennettOutcome {
    pub input_tape: String,
    pub history_tape: String,
    pub output_tape: String,
    pub steps: usize,
    pub config: Config,
}

/// Run the composite machine on an input and report the three tapes.
pub fn run_bennett(tm: &TuringMachine, input: &str, fuel: usize) -> Result<BennettOutcome, TmError> {
    let composite = bennett(tm)?;
    run_composite(&composite, input, fuel)
}

/// Run an already-built composite machine.
pub fn run_composite(
    composite: &TuringMachine,
    input: &str,
    fuel: usize,
) -> Result<BennettOutcome, TmError> {
    let out: RunOutcome = run(composite, input, fuel)?;
    match out.status {
        RunStatus::Halted => {}
        RunStatus::FuelExhausted => return Err(TmError::FuelExhausted(out.steps)),
        RunStatus::Stuck => {
            return Err(TmError::Stuck {
                state: composite.state_name(out.config.state).to_string(),
                steps: out.steps,
            })
        }
    }
    Ok(BennettOutcome {
        input_tape: out.config.tape_string(composite, 0),
        history_tape: out.config.tape_string(composite, 1),
        output_tape: out.config.tape_string(composite, 2),
        steps: out.steps,
        config: out.config,
    })
}
