//! Finite-state behaviour strategy profiles for the repeated game.

use crate::error::{Error, Result};
use crate::game::{Profile, StageGame};

/// A set of joint outcomes `(row, col)`. `None` on either side matches every
/// action of that player.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OutcomeClass {
    pub rows: Option<Vec<usize>>,
    pub cols: Option<Vec<usize>>,
}

impl OutcomeClass {
    pub fn any() -> Self {
        OutcomeClass { rows: None, cols: None }
    }

    pub fn rows(rows: Vec<usize>) -> Self {
        OutcomeClass { rows: Some(rows), cols: None }
    }

    pub fn cols(cols: Vec<usize>) -> Self {
        OutcomeClass { rows: None, cols: Some(cols) }
    }

    pub fn cells(rows: Vec<usize>, cols: Vec<usize>) -> Self {
        OutcomeClass { rows: Some(rows), cols: Some(cols) }
    }

    pub fn matches(&self, row: usize, col: usize) -> bool {
        self.rows.as_ref().is_none_or(|r| r.contains(&row))
            && self.cols.as_ref().is_none_or(|c| c.contains(&col))
    }

    fn transposed(&self) -> Self {
        OutcomeClass { rows: self.cols.clone(), cols: self.rows.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub class: OutcomeClass,
    pub next: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MachineState {
    pub emit: Profile,
    /// Checked in order; the first matching class wins.
    pub transitions: Vec<Transition>,
}

/// The profile played in round 1 is `states[start].emit`; after each round the
/// realised outcome selects the successor state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyMachine {
    pub horizon: usize,
    pub states: Vec<MachineState>,
    pub start: usize,
}

impl StrategyMachine {
    pub fn next(&self, state: usize, row: usize, col: usize) -> Option<usize> {
        self.states[state]
            .transitions
            .iter()
            .find(|t| t.class.matches(row, col))
            .map(|t| t.next)
    }

    pub fn validate(&self, g: &StageGame) -> Result<()> {
        let bad = |msg: String| Err(Error::MalformedMachine(msg));
        if self.horizon == 0 {
            return bad("horizon must be at least 1".into());
        }
        if self.start >= self.states.len() {
            return bad(format!("start state {} does not exist", self.start));
        }
        for (s, st) in self.states.iter().enumerate() {
            if st.emit.s1.len() != g.rows() || st.emit.s2.len() != g.cols() {
                return bad(format!("state {s} emits a profile of the wrong shape"));
            }
            for t in &st.transitions {
                if t.next >= self.states.len() {
                    return bad(format!("state {s} points at missing state {}", t.next));
                }
                let rows_ok = t.class.rows.iter().flatten().all(|&i| i < g.rows());
                let cols_ok = t.class.cols.iter().flatten().all(|&j| j < g.cols());
                if !rows_ok || !cols_ok {
                    return bad(format!("state {s} has an outcome class outside the game"));
                }
            }
            for i in 0..g.rows() {
                for j in 0..g.cols() {
                    if self.next(s, i, j).is_none() {
                        return bad(format!("state {s} has no transition for outcome ({i}, {j})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// The same strategy profile for the transposed game.
    pub fn transposed(&self) -> StrategyMachine {
        StrategyMachine {
            horizon: self.horizon,
            start: self.start,
            states: self
                .states
                .iter()
                .map(|s| MachineState {
                    emit: s.emit.transposed(),
                    transitions: s
                        .transitions
                        .iter()
                        .map(|t| Transition { class: t.class.transposed(), next: t.next })
                        .collect(),
                })
                .collect(),
        }
    }

    /// States reachable with `r` rounds left, for `r = horizon` down to 1.
    /// Index 0 of the result holds the round-1 set. Assumes a valid machine.
    pub fn levels(&self, g: &StageGame) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![vec![self.start]];
        let mut seen = vec![usize::MAX; self.states.len()];
        for round in 1..self.horizon {
            let mut next = Vec::new();
            for &s in &out[round - 1] {
                for i in 0..g.rows() {
                    for j in 0..g.cols() {
                        let n = self.next(s, i, j).expect("validated machine");
                        if seen[n] != round {
                            seen[n] = round;
                            next.push(n);
                        }
                    }
                }
            }
            next.sort_unstable();
            out.push(next);
        }
        out
    }
}

/// Incremental construction of machines out of linear paths and cycles.
#[derive(Default)]
pub(crate) struct Builder {
    states: Vec<MachineState>,
}

impl Builder {
    pub fn state(&mut self, emit: Profile, transitions: Vec<(OutcomeClass, usize)>) -> usize {
        self.states.push(MachineState {
            emit,
            transitions: transitions
                .into_iter()
                .map(|(class, next)| Transition { class, next })
                .collect(),
        });
        self.states.len() - 1
    }

    /// Plays `prefix` round by round, then repeats `cycle` until the game
    /// ends, ignoring what happens. Returns the entry state.
    pub fn path(&mut self, prefix: &[Profile], cycle: &[Profile]) -> usize {
        assert!(!cycle.is_empty());
        let base = self.states.len();
        for (k, p) in cycle.iter().enumerate() {
            let next = base + (k + 1) % cycle.len();
            self.state(p.clone(), vec![(OutcomeClass::any(), next)]);
        }
        let mut entry = base;
        for p in prefix.iter().rev() {
            entry = self.state(p.clone(), vec![(OutcomeClass::any(), entry)]);
        }
        entry
    }

    pub fn finish(self, horizon: usize, start: usize) -> StrategyMachine {
        StrategyMachine { horizon, states: self.states, start }
    }
}
