//! Multi-tape Turing machines: execution, the two local determinism
//! checks, and history-tape instrumentation that makes any
//! forward-deterministic machine reversible.
//!
//! Machines use quintuple rules — read, write and move in one step. A
//! step fires the unique rule matching (state, read symbols); two
//! matching rules are reported as a forward-determinism violation, not
//! resolved. Backward determinism is the mirrored local criterion: no
//! two rules may share (target state, written symbols, moves).

pub mod bennett;
pub mod samples;

use std::collections::HashMap;
use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::TmError;

pub type StateId = usize;
pub type SymId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    L,
    R,
    S,
}

impl Move {
    pub fn flip(self) -> Move {
        match self {
            Move::L => Move::R,
            Move::R => Move::L,
            Move::S => Move::S,
        }
    }

    fn offset(self) -> isize {
        match self {
            Move::L => -1,
            Move::R => 1,
            Move::S => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub state: StateId,
    pub read: Vec<SymId>,
    pub next: StateId,
    pub write: Vec<SymId>,
    pub moves: Vec<Move>,
}

#[derive(Debug, Clone)]
pub struct TuringMachine {
    name: String,
    tapes: usize,
    states: Vec<String>,
    alphabet: Vec<String>,
    blank: SymId,
    start: StateId,
    halt: StateId,
    rules: Vec<Rule>,
}

/// The JSON file format: everything by name.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MachineSpec {
    pub name: String,
    pub tapes: usize,
    pub blank: String,
    pub alphabet: Vec<String>,
    pub states: Vec<String>,
    pub start: String,
    pub halt: String,
    pub rules: Vec<RuleSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RuleSpec {
    pub state: String,
    pub read: Vec<String>,
    pub next: String,
    pub write: Vec<String>,
    #[serde(rename = "move")]
    pub moves: Vec<String>,
}

impl TuringMachine {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        tapes: usize,
        states: Vec<String>,
        alphabet: Vec<String>,
        blank: &str,
        start: &str,
        halt: &str,
        rules: Vec<Rule>,
    ) -> Result<TuringMachine, TmError> {
        let state_ix: HashMap<&str, usize> =
            states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let sym_ix: HashMap<&str, usize> =
            alphabet.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let blank = *sym_ix.get(blank).ok_or_else(|| TmError::UnknownSymbol(blank.to_string()))?;
        let start = *state_ix.get(start).ok_or_else(|| TmError::UnknownState(start.to_string()))?;
        let halt = *state_ix.get(halt).ok_or_else(|| TmError::UnknownState(halt.to_string()))?;
        for (i, r) in rules.iter().enumerate() {
            if r.read.len() != tapes || r.write.len() != tapes || r.moves.len() != tapes {
                return Err(TmError::TapeArity { rule: i, expected: tapes, tapes: r.read.len() });
            }
            for s in [r.state, r.next] {
                if s >= states.len() {
                    return Err(TmError::UnknownState(format!("#{s}")));
                }
            }
            for &sym in r.read.iter().chain(&r.write) {
                if sym >= alphabet.len() {
                    return Err(TmError::UnknownSymbol(format!("#{sym}")));
                }
            }
        }
        Ok(TuringMachine { name: name.into(), tapes, states, alphabet, blank, start, halt, rules })
    }

    pub fn from_spec(spec: &MachineSpec) -> Result<TuringMachine, TmError> {
        let state_ix: HashMap<&str, usize> =
            spec.states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let sym_ix: HashMap<&str, usize> =
            spec.alphabet.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let state = |s: &str| state_ix.get(s).copied().ok_or_else(|| TmError::UnknownState(s.to_string()));
        let sym = |s: &str| sym_ix.get(s).copied().ok_or_else(|| TmError::UnknownSymbol(s.to_string()));
        let mut rules = Vec::with_capacity(spec.rules.len());
        for r in &spec.rules {
            let moves = r
                .moves
                .iter()
                .map(|m| match m.as_str() {
                    "L" => Ok(Move::L),
                    "R" => Ok(Move::R),
                    "S" => Ok(Move::S),
                    other => Err(TmError::UnknownSymbol(format!("move `{other}`"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            rules.push(Rule {
                state: state(&r.state)?,
                read: r.read.iter().map(|s| sym(s)).collect::<Result<_, _>>()?,
                next: state(&r.next)?,
                write: r.write.iter().map(|s| sym(s)).collect::<Result<_, _>>()?,
                moves,
            });
        }
        TuringMachine::new(
            spec.name.clone(),
            spec.tapes,
            spec.states.clone(),
            spec.alphabet.clone(),
            &spec.blank,
            &spec.start,
            &spec.halt,
            rules,
        )
    }

    pub fn to_spec(&self) -> MachineSpec {
        MachineSpec {
            name: self.name.clone(),
            tapes: self.tapes,
            blank: self.alphabet[self.blank].clone(),
            alphabet: self.alphabet.clone(),
            states: self.states.clone(),
            start: self.states[self.start].clone(),
            halt: self.states[self.halt].clone(),
            rules: self
                .rules
                .iter()
                .map(|r| RuleSpec {
                    state: self.states[r.state].clone(),
                    read: r.read.iter().map(|&s| self.alphabet[s].clone()).collect(),
                    next: self.states[r.next].clone(),
                    write: r.write.iter().map(|&s| self.alphabet[s].clone()).collect(),
                    moves: r
                        .moves
                        .iter()
                        .map(|m| match m {
                            Move::L => "L".to_string(),
                            Move::R => "R".to_string(),
                            Move::S => "S".to_string(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn tapes(&self) -> usize {
        self.tapes
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn blank(&self) -> SymId {
        self.blank
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn halt(&self) -> StateId {
        self.halt
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.states[s]
    }

    pub fn symbol_name(&self, s: SymId) -> &str {
        &self.alphabet[s]
    }

    fn parse_input(&self, input: &str) -> Result<Vec<SymId>, TmError> {
        input
            .chars()
            .map(|c| {
                let s = c.to_string();
                self.alphabet
                    .iter()
                    .position(|a| *a == s)
                    .ok_or(TmError::BadInput(s))
            })
            .collect()
    }

    /// Initial configuration: input on tape 1 starting at cell 0, heads
    /// at 0, other tapes blank.
    pub fn initial_config(&self, input: &str) -> Result<Config, TmError> {
        let syms = self.parse_input(input)?;
        let mut tapes = vec![Tape::blank(self.blank); self.tapes];
        for (i, s) in syms.into_iter().enumerate() {
            tapes[0].set(i as isize, s);
        }
        Ok(Config { state: self.start, tapes })
    }
}

/// One tape with lazily grown cells; `origin` is the absolute position
/// of `cells[0]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tape {
    cells: VecDeque<SymId>,
    origin: isize,
    pub head: isize,
    blank: SymId,
}

impl Tape {
    pub fn blank(blank: SymId) -> Tape {
        Tape { cells: VecDeque::new(), origin: 0, head: 0, blank }
    }

    pub fn get(&self, pos: isize) -> SymId {
        let ix = pos - self.origin;
        if ix < 0 || ix as usize >= self.cells.len() {
            self.blank
        } else {
            self.cells[ix as usize]
        }
    }

    pub fn set(&mut self, pos: isize, sym: SymId) {
        if self.cells.is_empty() {
            self.origin = pos;
            self.cells.push_back(sym);
            return;
        }
        while pos < self.origin {
            self.cells.push_front(self.blank);
            self.origin -= 1;
        }
        while (pos - self.origin) as usize >= self.cells.len() {
            self.cells.push_back(self.blank);
        }
        self.cells[(pos - self.origin) as usize] = sym;
    }

    pub fn read(&self) -> SymId {
        self.get(self.head)
    }

    /// Non-blank extent as `(first, one-past-last)` absolute positions.
    pub fn extent(&self) -> Option<(isize, isize)> {
        let first = self.cells.iter().position(|&s| s != self.blank)?;
        let last = self.cells.iter().rposition(|&s| s != self.blank).expect("nonempty");
        Some((self.origin + first as isize, self.origin + last as isize + 1))
    }

    pub fn is_all_blank(&self) -> bool {
        self.extent().is_none()
    }

    /// The non-blank content, including any interior blanks.
    pub fn content(&self) -> Vec<SymId> {
        match self.extent() {
            None => vec![],
            Some((a, b)) => (a..b).map(|p| self.get(p)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub state: StateId,
    pub tapes: Vec<Tape>,
}

impl Config {
    /// Render a tape's content: single-character symbols concatenate,
    /// anything longer joins with spaces.
    pub fn tape_string(&self, tm: &TuringMachine, tape: usize) -> String {
        let syms = self.tapes[tape].content();
        let names: Vec<&str> = syms.iter().map(|&s| tm.symbol_name(s)).collect();
        if names.iter().all(|n| n.chars().count() == 1) {
            names.concat()
        } else {
            names.join(" ")
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    Halted,
    FuelExhausted,
    Stuck,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub status: RunStatus,
    pub steps: usize,
    pub config: Config,
}

/// Execute from a given configuration for at most `fuel` rule firings.
pub fn run_from(tm: &TuringMachine, mut config: Config, fuel: usize) -> Result<RunOutcome, TmError> {
    let mut steps = 0;
    loop {
        if config.state == tm.halt {
            return Ok(RunOutcome { status: RunStatus::Halted, steps, config });
        }
        if steps >= fuel {
            return Ok(RunOutcome { status: RunStatus::FuelExhausted, steps, config });
        }
        let reads: Vec<SymId> = config.tapes.iter().map(Tape::read).collect();
        let mut fired: Option<usize> = None;
        for (i, r) in tm.rules.iter().enumerate() {
            if r.state == config.state && r.read == reads {
                if let Some(first) = fired {
                    return Err(TmError::AmbiguousStep {
                        a: first,
                        b: i,
                        state: tm.states[config.state].clone(),
                    });
                }
                fired = Some(i);
            }
        }
        let Some(i) = fired else {
            return Ok(RunOutcome { status: RunStatus::Stuck, steps, config });
        };
        let rule = &tm.rules[i];
        for (t, tape) in config.tapes.iter_mut().enumerate() {
            tape.set(tape.head, rule.write[t]);
            tape.head += rule.moves[t].offset();
        }
        config.state = rule.next;
        steps += 1;
    }
}

/// Execute on a fresh input.
pub fn run(tm: &TuringMachine, input: &str, fuel: usize) -> Result<RunOutcome, TmError> {
    run_from(tm, tm.initial_config(input)?, fuel)
}

/// Pairs of rule indices violating a determinism criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminismReport {
    pub violations: Vec<(usize, usize)>,
}

impl DeterminismReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Forward determinism: no two rules share (state, read symbols).
pub fn check_forward_deterministic(tm: &TuringMachine) -> DeterminismReport {
    let mut seen: HashMap<(StateId, &[SymId]), usize> = HashMap::new();
    let mut violations = Vec::new();
    for (i, r) in tm.rules.iter().enumerate() {
        match seen.entry((r.state, r.read.as_slice())) {
            std::collections::hash_map::Entry::Occupied(e) => violations.push((*e.get(), i)),
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(i);
            }
        }
    }
    DeterminismReport { violations }
}

/// Backward determinism, the local syntactic criterion: no two rules
/// share (target state, written symbols, moves).
pub fn check_backward_deterministic(tm: &TuringMachine) -> DeterminismReport {
    let mut seen: HashMap<(StateId, &[SymId], &[Move]), usize> = HashMap::new();
    let mut violations = Vec::new();
    for (i, r) in tm.rules.iter().enumerate() {
        match seen.entry((r.next, r.write.as_slice(), r.moves.as_slice())) {
            std::collections::hash_map::Entry::Occupied(e) => violations.push((*e.get(), i)),
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(i);
            }
        }
    }
    DeterminismReport { violations }
}

/// A 1-tape machine instrumented with a history tape, plus the machine
/// that consumes the history backwards.
#[derive(Debug, Clone)]
pub struct Instrumented {
    forward: TuringMachine,
    backward: TuringMachine,
}

impl Instrumented {
    /// The 2-tape forward machine: simulates the original on tape 1 and
    /// logs one history symbol per step on tape 2. Backward
    /// deterministic by construction.
    pub fn machine(&self) -> &TuringMachine {
        &self.forward
    }

    /// The 2-tape unwind machine: consumes the history right-to-left,
    /// restoring the initial configuration.
    pub fn unwinder(&self) -> &TuringMachine {
        &self.backward
    }

    /// Run forward to the halt state, then unwind. Returns both final
    /// configurations.
    pub fn run_and_unwind(
        &self,
        input: &str,
        fuel: usize,
    ) -> Result<(RunOutcome, RunOutcome), TmError> {
        let fwd = run(&self.forward, input, fuel)?;
        if fwd.status != RunStatus::Halted {
            return Err(match fwd.status {
                RunStatus::FuelExhausted => TmError::FuelExhausted(fwd.steps),
                _ => TmError::Stuck {
                    state: self.forward.states[fwd.config.state].clone(),
                    steps: fwd.steps,
                },
            });
        }
        let cfg = Config { state: self.backward.start, tapes: fwd.config.tapes.clone() };
        let bwd = run_from(&self.backward, cfg, fuel.saturating_mul(3).saturating_add(8))?;
        Ok((fwd, bwd))
    }
}

/// History symbol for rule `i`.
fn hist_sym(i: usize) -> String {
    format!("h{i}")
}

/// Instrument a forward-deterministic 1-tape machine with a history
/// tape. Each firing of original rule `i` writes a dedicated symbol
/// `h{i}` and advances the history head, so distinct predecessors write
/// distinct records.
pub fn landauer_instrument(tm: &TuringMachine) -> Result<Instrumented, TmError> {
    if tm.tapes != 1 {
        return Err(TmError::NotOneTape(tm.tapes));
    }
    let fwd_report = check_forward_deterministic(tm);
    if !fwd_report.ok() {
        return Err(TmError::NotForwardDeterministic(fwd_report.violations.len()));
    }

    let n_rules = tm.rules.len();
    let mut alphabet = tm.alphabet.clone();
    for i in 0..n_rules {
        alphabet.push(hist_sym(i));
    }
    let blank = tm.blank;
    let base_syms = tm.alphabet.len();
    let h = |i: usize| base_syms + i;

    // forward machine: original states only
    let mut fwd_rules = Vec::with_capacity(n_rules);
    for (i, r) in tm.rules.iter().enumerate() {
        fwd_rules.push(Rule {
            state: r.state,
            read: vec![r.read[0], blank],
            next: r.next,
            write: vec![r.write[0], h(i)],
            moves: vec![r.moves[0], Move::R],
        });
    }
    let forward = TuringMachine::new(
        format!("{}+history", tm.name),
        2,
        tm.states.clone(),
        alphabet.clone(),
        &tm.alphabet[blank],
        &tm.states[tm.start],
        &tm.states[tm.halt],
        fwd_rules,
    )?;

    // unwind machine: states u:<q> (history head parked one past the
    // record), p:<q> (head on the record), uw:<i> (undoing rule i), done
    let mut bwd_states: Vec<String> = Vec::new();
    for q in &tm.states {
        bwd_states.push(format!("u:{q}"));
        bwd_states.push(format!("p:{q}"));
    }
    for i in 0..n_rules {
        bwd_states.push(format!("uw:{i}"));
    }
    bwd_states.push("done".to_string());
    let u = |q: StateId| 2 * q;
    let p = |q: StateId| 2 * q + 1;
    let uw = |i: usize| 2 * tm.states.len() + i;
    let done = bwd_states.len() - 1;

    let mut bwd_rules = Vec::new();
    // step the history head onto the most recent record
    for q in 0..tm.states.len() {
        for x in 0..base_syms {
            bwd_rules.push(Rule {
                state: u(q),
                read: vec![x, blank],
                next: p(q),
                write: vec![x, blank],
                moves: vec![Move::S, Move::L],
            });
        }
    }
    for (i, r) in tm.rules.iter().enumerate() {
        // the record names the rule: undo its move, erasing the record
        for x in 0..base_syms {
            bwd_rules.push(Rule {
                state: p(r.next),
                read: vec![x, h(i)],
                next: uw(i),
                write: vec![x, blank],
                moves: vec![r.moves[0].flip(), Move::S],
            });
        }
        // then undo its write
        bwd_rules.push(Rule {
            state: uw(i),
            read: vec![r.write[0], blank],
            next: u(r.state),
            write: vec![r.read[0], blank],
            moves: vec![Move::S, Move::S],
        });
    }
    // empty history at the start state: initial configuration reached
    for x in 0..base_syms {
        bwd_rules.push(Rule {
            state: p(tm.start),
            read: vec![x, blank],
            next: done,
            write: vec![x, blank],
            moves: vec![Move::S, Move::R],
        });
    }
    let backward = TuringMachine::new(
        format!("{}+unwind", tm.name),
        2,
        bwd_states.clone(),
        alphabet,
        &tm.alphabet[blank],
        &format!("u:{}", tm.states[tm.halt]),
        "done",
        bwd_rules,
    )?;

    Ok(Instrumented { forward, backward })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tm::samples;

    #[test]
    fn empty_machine_sticks_immediately() {
        let tm = TuringMachine::new(
            "empty",
            1,
            vec!["s".into(), "h".into()],
            vec!["_".into(), "0".into()],
            "_",
            "s",
            "h",
            vec![],
        )
        .unwrap();
        let out = run(&tm, "0", 100).unwrap();
        assert_eq!(out.status, RunStatus::Stuck);
        assert_eq!(out.steps, 0);
    }

    #[test]
    fn zero_fuel_returns_initial_config() {
        let tm = samples::binary_increment();
        let out = run(&tm, "011", 0).unwrap();
        assert_eq!(out.status, RunStatus::FuelExhausted);
        assert_eq!(out.config.tape_string(&tm, 0), "011");
    }

    #[test]
    fn increment_examples() {
        let tm = samples::binary_increment();
        for (input, expected) in [
            ("011", "100"),
            ("0", "1"),
            ("1", "10"),
            ("111", "1000"),
            ("1010", "1011"),
        ] {
            let out = run(&tm, input, 10_000).unwrap();
            assert_eq!(out.status, RunStatus::Halted, "on {input}");
            assert_eq!(out.config.tape_string(&tm, 0), expected, "on {input}");
        }
    }

    #[test]
    fn ambiguous_firing_is_an_error_not_a_choice() {
        let tm = TuringMachine::new(
            "clash",
            1,
            vec!["q".into(), "r".into(), "s".into(), "h".into()],
            vec!["0".into(), "_".into()],
            "_",
            "q",
            "h",
            vec![
                Rule { state: 0, read: vec![0], next: 1, write: vec![0], moves: vec![Move::R] },
                Rule { state: 0, read: vec![0], next: 2, write: vec![0], moves: vec![Move::L] },
            ],
        )
        .unwrap();
        let err = run(&tm, "0", 10).unwrap_err();
        assert!(matches!(err, TmError::AmbiguousStep { a: 0, b: 1, .. }), "{err}");
    }

    #[test]
    fn forward_violation_detected() {
        let tm = TuringMachine::new(
            "clash",
            1,
            vec!["q".into(), "r".into(), "s".into(), "h".into()],
            vec!["0".into(), "1".into(), "_".into()],
            "_",
            "q",
            "h",
            vec![
                Rule { state: 0, read: vec![0], next: 1, write: vec![1], moves: vec![Move::R] },
                Rule { state: 0, read: vec![0], next: 2, write: vec![0], moves: vec![Move::R] },
            ],
        )
        .unwrap();
        let report = check_forward_deterministic(&tm);
        assert_eq!(report.violations, vec![(0, 1)]);
    }

    #[test]
    fn backward_violation_detected() {
        let tm = TuringMachine::new(
            "clash",
            1,
            vec!["q".into(), "p".into(), "r".into(), "h".into()],
            vec!["0".into(), "1".into(), "_".into()],
            "_",
            "q",
            "h",
            vec![
                Rule { state: 0, read: vec![0], next: 2, write: vec![1], moves: vec![Move::R] },
                Rule { state: 1, read: vec![1], next: 2, write: vec![1], moves: vec![Move::R] },
            ],
        )
        .unwrap();
        let report = check_backward_deterministic(&tm);
        assert_eq!(report.violations, vec![(0, 1)]);
        assert!(check_forward_deterministic(&tm).ok());
    }

    #[test]
    fn instrumented_machine_is_backward_deterministic() {
        for tm in samples::all() {
            let inst = landauer_instrument(&tm).unwrap();
            assert!(check_forward_deterministic(inst.machine()).ok(), "{}", tm.name());
            assert!(check_backward_deterministic(inst.machine()).ok(), "{}", tm.name());
        }
    }

    #[test]
    fn instrumented_simulates_and_unwinds() {
        let tm = samples::binary_increment();
        let inst = landauer_instrument(&tm).unwrap();
        let (fwd, bwd) = inst.run_and_unwind("011", 10_000).unwrap();
        assert_eq!(fwd.config.tape_string(inst.machine(), 0), "100");
        assert!(!fwd.config.tapes[1].is_all_blank(), "history recorded");
        assert_eq!(fwd.config.tapes[1].content().len(), fwd.steps, "one record per step");
        assert_eq!(bwd.status, RunStatus::Halted);
        assert_eq!(bwd.config.tape_string(inst.unwinder(), 0), "011");
        assert!(bwd.config.tapes[1].is_all_blank(), "history consumed");
        assert_eq!(bwd.config.tapes[0].head, 0, "tape 1 head restored");
        assert_eq!(bwd.config.tapes[1].head, 0, "tape 2 head restored");
    }

    #[test]
    fn json_round_trip() {
        let tm = samples::unary_addition();
        let spec = tm.to_spec();
        let text = serde_json::to_string_pretty(&spec).unwrap();
        let back = TuringMachine::from_spec(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.to_spec().rules.len(), spec.rules.len());
        let out = run(&back, "111+11", 10_000).unwrap();
        assert_eq!(out.config.tape_string(&back, 0), "11111");
    }
}
