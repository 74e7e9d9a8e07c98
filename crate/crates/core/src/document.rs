//! JSON documents for games and strategy machines.
//!
//! Payoffs and probabilities are exact: integers may be written as JSON
//! numbers, anything else as a `"p/q"` string. Serialisation is canonical, so
//! `parse(render(x)) == x` and rendering the parsed value reproduces the text.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::game::{MixedStrategy, Profile, StageGame};
use crate::machine::{MachineState, OutcomeClass, StrategyMachine, Transition};
use crate::rational::{self, Rational};

/// Failure to read a document. Syntax errors carry a 1-based position.
#[derive(Debug, thiserror::Error)]
pub enum DocError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error(transparent)]
    Semantic(#[from] Error),
}

impl DocError {
    fn syntax(e: serde_json::Error, line_offset: usize) -> Self {
        DocError::Syntax { line: e.line() + line_offset, column: e.column(), message: e.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
    Other(serde_json::Value),
}

impl Entry {
    pub fn from_rational(r: &Rational) -> Entry {
        match (r.is_integer(), i64::try_from(r.numer())) {
            (true, Ok(n)) => Entry::Int(n),
            _ => Entry::Text(rational::render(r)),
        }
    }

    pub fn to_rational(&self) -> Result<Rational, String> {
        match self {
            Entry::Int(n) => Ok(rational::int(*n)),
            Entry::Text(s) => rational::parse(s),
            Entry::Other(v) => Err(format!("expected an integer or a \"p/q\" string, found {v}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameDocument {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub u1: Vec<Vec<Entry>>,
    pub u2: Vec<Vec<Entry>>,
}

impl GameDocument {
    pub fn from_game(g: &StageGame) -> Self {
        let matrix = |u: &[Vec<Rational>]| -> Vec<Vec<Entry>> {
            u.iter().map(|r| r.iter().map(Entry::from_rational).collect()).collect()
        };
        GameDocument {
            rows: g.row_labels().to_vec(),
            cols: g.col_labels().to_vec(),
            u1: matrix(g.u(crate::game::Player::One)),
            u2: matrix(g.u(crate::game::Player::Two)),
        }
    }

    pub fn to_game(&self) -> Result<StageGame, Error> {
        let matrix = |name: &str, m: &[Vec<Entry>]| -> Result<Vec<Vec<Rational>>, Error> {
            m.iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(j, e)| e.to_rational().map_err(|msg| Error::Input(format!("{name}[{i}][{j}]: {msg}"))))
                        .collect()
                })
                .collect()
        };
        let (u1, u2) = (matrix("u1", &self.u1)?, matrix("u2", &self.u2)?);
        StageGame::with_labels(u1, u2, self.rows.clone(), self.cols.clone())
    }
}

pub fn parse_game(text: &str) -> Result<StageGame, DocError> {
    parse_game_at(text, 0)
}

/// As [`parse_game`], with syntax error lines shifted by `line_offset`.
pub fn parse_game_at(text: &str, line_offset: usize) -> Result<StageGame, DocError> {
    let doc: GameDocument = serde_json::from_str(text).map_err(|e| DocError::syntax(e, line_offset))?;
    Ok(doc.to_game()?)
}

/// One game per line, as written by the generator. Blank lines are skipped.
pub fn parse_game_lines(text: &str) -> Result<Vec<StageGame>, DocError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(k, l)| parse_game_at(l, k))
        .collect()
}

/// Pretty form, one matrix row per line.
pub fn render_game(g: &StageGame) -> String {
    let doc = GameDocument::from_game(g);
    let line = |v: &serde_json::Value| serde_json::to_string(v).expect("json");
    let labels = |l: &[String]| line(&serde_json::json!(l));
    let matrix = |m: &[Vec<Entry>]| {
        let rows: Vec<String> = m.iter().map(|r| format!("    {}", line(&serde_json::json!(r)))).collect();
        format!("[\n{}\n  ]", rows.join(",\n"))
    };
    format!(
        "{{\n  \"rows\": {},\n  \"cols\": {},\n  \"u1\": {},\n  \"u2\": {}\n}}\n",
        labels(&doc.rows),
        labels(&doc.cols),
        matrix(&doc.u1),
        matrix(&doc.u2)
    )
}

/// Compact single-line form.
pub fn render_game_line(g: &StageGame) -> String {
    serde_json::to_string(&GameDocument::from_game(g)).expect("json")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionDocument {
    /// Missing means any row.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cols: Option<Vec<usize>>,
    pub next: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDocument {
    pub emit: (Vec<Entry>, Vec<Entry>),
    pub transitions: Vec<TransitionDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MachineDocument {
    pub horizon: usize,
    pub start: usize,
    pub states: Vec<StateDocument>,
}

impl MachineDocument {
    pub fn from_machine(m: &StrategyMachine) -> Self {
        let probs = |s: &MixedStrategy| s.probs().iter().map(|p| Entry::Text(rational::render(p))).collect();
        MachineDocument {
            horizon: m.horizon,
            start: m.start,
            states: m
                .states
                .iter()
                .map(|st| StateDocument {
                    emit: (probs(&st.emit.s1), probs(&st.emit.s2)),
                    transitions: st
                        .transitions
                        .iter()
                        .map(|t| TransitionDocument { rows: t.class.rows.clone(), cols: t.class.cols.clone(), next: t.next })
                        .collect(),
                })
                .collect(),
        }
    }

    /// Checks probabilities only; coverage and shapes are checked against a
    /// game by [`StrategyMachine::validate`].
    pub fn to_machine(&self) -> Result<StrategyMachine, Error> {
        let strategy = |s: usize, v: &[Entry]| -> Result<MixedStrategy, Error> {
            let probs = v
                .iter()
                .map(|e| e.to_rational())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|msg| Error::MalformedMachine(format!("state {s}: {msg}")))?;
            MixedStrategy::new(probs).map_err(|e| Error::MalformedMachine(format!("state {s}: {e}")))
        };
        let states = self
            .states
            .iter()
            .enumerate()
            .map(|(s, st)| {
                Ok(MachineState {
                    emit: Profile::new(strategy(s, &st.emit.0)?, strategy(s, &st.emit.1)?),
                    transitions: st
                        .transitions
                        .iter()
                        .map(|t| Transition {
                            class: OutcomeClass { rows: t.rows.clone(), cols: t.cols.clone() },
                            next: t.next,
                        })
                        .collect(),
                })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        Ok(StrategyMachine { horizon: self.horizon, states, start: self.start })
    }
}

pub fn parse_machine(text: &str) -> Result<StrategyMachine, DocError> {
    let doc: MachineDocument = serde_json::from_str(text).map_err(|e| DocError::syntax(e, 0))?;
    Ok(doc.to_machine()?)
}

pub fn render_machine(m: &StrategyMachine) -> String {
    let mut s = serde_json::to_string_pretty(&MachineDocument::from_machine(m)).expect("json");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games;
    use crate::rational::ratio;

    #[test]
    fn games_round_trip() {
        for name in games::NAMES {
            let g = games::by_name(name, Some(&ratio(3, 7))).unwrap();
            let text = render_game(&g);
            assert_eq!(parse_game(&text).unwrap(), g, "{name}");
            assert_eq!(render_game(&parse_game(&text).unwrap()), text);
            assert_eq!(parse_game(&render_game_line(&g)).unwrap(), g);
        }
    }

    #[test]
    fn fractions_and_integers() {
        let g = parse_game(r#"{"rows":["x"],"cols":["y","z"],"u1":[[1,"2/4"]],"u2":[["-6/3"," 0 "]]}"#).unwrap();
        assert_eq!(g.u1(0, 1), &ratio(1, 2));
        assert_eq!(g.u2(0, 0), &ratio(-2, 1));
        assert_eq!(render_game_line(&g), r#"{"rows":["x"],"cols":["y","z"],"u1":[[1,"1/2"]],"u2":[[-2,0]]}"#);
    }

    #[test]
    fn syntax_and_semantic_errors() {
        let err = parse_game("{\n  \"rows\": [\"a\"],\n  \"cols\": oops\n}").unwrap_err();
        assert!(matches!(err, DocError::Syntax { line: 3, .. }), "{err}");
        let err = parse_game(r#"{"rows":["a"],"cols":["b"],"u1":[["1/0"]],"u2":[[0]]}"#).unwrap_err();
        assert!(matches!(err, DocError::Semantic(Error::Input(_))));
        let err = parse_game(r#"{"rows":["a"],"cols":["b"],"u1":[[1.5]],"u2":[[0]]}"#).unwrap_err();
        assert!(matches!(err, DocError::Semantic(Error::Input(_))));
        let err = parse_game(r#"{"rows":["a"],"cols":["b","c"],"u1":[[1,2]],"u2":[[0]]}"#).unwrap_err();
        assert!(matches!(err, DocError::Semantic(Error::Dimension(_))));
    }

    #[test]
    fn line_offsets() {
        let text = "{\"rows\":[\"a\"],\"cols\":[\"b\"],\"u1\":[[1]],\"u2\":[[1]]}\n\n{\"rows\":";
        match parse_game_lines(text).unwrap_err() {
            DocError::Syntax { line, .. } => assert_eq!(line, 3),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn machines_round_trip() {
        let g = games::off_nash_threat();
        let m = crate::witness::grim_trigger(&g, (1, 0), (1, 1), &[(0, 0)], 2);
        let text = render_machine(&m);
        assert_eq!(parse_machine(&text).unwrap(), m);
        let bad = text.replace("\"1\"", "\"2\"");
        assert!(matches!(parse_machine(&bad), Err(DocError::Semantic(Error::MalformedMachine(_)))));
    }
}
