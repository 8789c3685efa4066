//! The machine corpus: small 1-tape machines following the standard
//! configuration convention (head starts and halts on the leftmost
//! non-blank cell; output contiguous; cell left of the output blank).

use crate::tm::{Move, Rule, TuringMachine};

fn build(
    name: &str,
    states: &[&str],
    alphabet: &[&str],
    rules: &[(&str, &str, &str, &str, Move)],
) -> TuringMachine {
    let find = |xs: &[&str], x: &str| xs.iter().position(|s| *s == x).unwrap_or_else(|| panic!("unknown `{x}`"));
    let rules = rules
        .iter()
        .map(|(q, a, q2, b, m)| Rule {
            state: find(states, q),
            read: vec![find(alphabet, a)],
            next: find(states, q2),
            write: vec![find(alphabet, b)],
            moves: vec![*m],
        })
        .collect();
    TuringMachine::new(
        name,
        1,
        states.iter().map(|s| s.to_string()).collect(),
        alphabet.iter().map(|s| s.to_string()).collect(),
        "_",
        states[0],
        states[states.len() - 1],
        rules,
    )
    .expect("sample machine is well formed")
}

/// Binary increment, most significant bit first: `011` becomes `100`.
pub fn binary_increment() -> TuringMachine {
    use Move::{L, R, S};
    build(
        "binary-increment",
        &["right", "carry", "rewind", "done"],
        &["0", "1", "_"],
        &[
            ("right", "0", "right", "0", R),
            ("right", "1", "right", "1", R),
            ("right", "_", "carry", "_", L),
            ("carry", "1", "carry", "0", L),
            ("carry", "0", "rewind", "1", L),
            ("carry", "_", "done", "1", S),
            ("rewind", "0", "rewind", "0", L),
            ("rewind", "1", "rewind", "1", L),
            ("rewind", "_", "done", "_", R),
        ],
    )
}

/// Unary addition: `111+11` becomes `11111`. The separator turns into a
/// mark and the last mark is chopped off.
pub fn unary_addition() -> TuringMachine {
    use Move::{L, R};
    build(
        "unary-addition",
        &["scan", "tail", "chop", "rewind", "done"],
        &["1", "+", "_"],
        &[
            ("scan", "1", "scan", "1", R),
            ("scan", "+", "tail", "1", R),
            ("tail", "1", "tail", "1", R),
            ("tail", "_", "chop", "_", L),
            ("chop", "1", "rewind", "_", L),
            ("rewind", "1", "rewind", "1", L),
            ("rewind", "_", "done", "_", R),
        ],
    )
}

/// Bit reversal: repeatedly take the leftmost unprocessed bit, leave a
/// placeholder in its cell, and prepend it marked at the left edge; when
/// no bits remain, a right-to-left sweep erases placeholders and
/// unmarks. Prepending in left-to-right takeout order reverses.
pub fn bit_reversal() -> TuringMachine {
    use Move::{L, R, S};
    build(
        "bit-reversal",
        &["start", "find", "carry0", "carry1", "clean", "done"],
        &["0", "1", "A", "B", "X", "_"],
        &[
            ("start", "_", "done", "_", S),
            ("start", "0", "find", "0", S),
            ("start", "1", "find", "1", S),
            ("find", "A", "find", "A", R),
            ("find", "B", "find", "B", R),
            ("find", "X", "find", "X", R),
            ("find", "0", "carry0", "X", L),
            ("find", "1", "carry1", "X", L),
            ("find", "_", "clean", "_", L),
            ("carry0", "0", "carry0", "0", L),
            ("carry0", "1", "carry0", "1", L),
            ("carry0", "A", "carry0", "A", L),
            ("carry0", "B", "carry0", "B", L),
            ("carry0", "X", "carry0", "X", L),
            ("carry0", "_", "find", "A", R),
            ("carry1", "0", "carry1", "0", L),
            ("carry1", "1", "carry1", "1", L),
            ("carry1", "A", "carry1", "A", L),
            ("carry1", "B", "carry1", "B", L),
            ("carry1", "X", "carry1", "X", L),
            ("carry1", "_", "find", "B", R),
            ("clean", "X", "clean", "_", L),
            ("clean", "A", "clean", "0", L),
            ("clean", "B", "clean", "1", L),
            ("clean", "_", "done", "_", R),
        ],
    )
}

/// Halts immediately: output is the input.
pub fn identity() -> TuringMachine {
    build("identity", &["done"], &["0", "1", "_"], &[])
}

pub fn all() -> Vec<TuringMachine> {
    vec![binary_increment(), unary_addition(), bit_reversal(), identity()]
}

pub fn by_name(name: &str) -> Option<TuringMachine> {
    all().into_iter().find(|m| m.name() == name)
}
