//! Independent checks: an exact subgame-perfection test for machines and a
//! brute-force payoff-set recursion for the pure–pure regime.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::game::{check_regime, Player, Regime, StageGame};
use crate::machine::StrategyMachine;
use crate::nash::pure_nash;
use crate::rational::Rational;

type Values = (Rational, Rational);

/// One-shot deviation check over every state reachable after any history.
/// Continuation values are computed backwards from the last round.
pub fn is_spe(g: &StageGame, machine: &StrategyMachine, regime: Regime) -> Result<bool> {
    machine.validate(g)?;
    for st in &machine.states {
        check_regime(&st.emit, regime)?;
    }
    let levels = machine.levels(g);
    let (m, n) = (g.rows(), g.cols());
    let zero = (Rational::zero(), Rational::zero());
    // `later` holds values with one fewer round to go.
    let mut later: BTreeMap<usize, Values> = BTreeMap::new();
    for (depth, states) in levels.iter().enumerate().rev() {
        let last = depth + 1 == levels.len();
        let mut here = BTreeMap::new();
        for &s in states {
            let emit = &machine.states[s].emit;
            let cont = |i: usize, j: usize| -> &Values {
                if last {
                    &zero
                } else {
                    &later[&machine.next(s, i, j).expect("validated")]
                }
            };
            let total = |i: usize, j: usize, who: Player| -> Rational {
                match who {
                    Player::One => g.u1(i, j) + &cont(i, j).0,
                    Player::Two => g.u2(i, j) + &cont(i, j).1,
                }
            };
            let (s1, s2) = (emit.s1.support(), emit.s2.support());
            let mut v1 = Rational::zero();
            let mut v2 = Rational::zero();
            for &i in &s1 {
                for &j in &s2 {
                    let w = emit.s1.prob(i) * emit.s2.prob(j);
                    v1 += &w * total(i, j, Player::One);
                    v2 += &w * total(i, j, Player::Two);
                }
            }
            for dev in 0..m {
                let pay: Rational = s2.iter().map(|&j| emit.s2.prob(j) * total(dev, j, Player::One)).sum();
                if pay > v1 {
                    return Ok(false);
                }
            }
            for dev in 0..n {
                let pay: Rational = s1.iter().map(|&i| emit.s1.prob(i) * total(i, dev, Player::Two)).sum();
                if pay > v2 {
                    return Ok(false);
                }
            }
            here.insert(s, (v1, v2));
        }
        later = here;
    }
    Ok(true)
}

/// Reachable states whose emitted profile is not a stage equilibrium.
pub fn off_nash_states(g: &StageGame, machine: &StrategyMachine, regime: Regime) -> Result<Vec<usize>> {
    machine.validate(g)?;
    let reachable: BTreeSet<usize> = machine.levels(g).into_iter().flatten().collect();
    let mut out = Vec::new();
    for s in reachable {
        if !g.is_stage_nash(&machine.states[s].emit, regime)? {
            out.push(s);
        }
    }
    Ok(out)
}

/// Total-payoff vectors of pure subgame-perfect equilibria for `t = 1, 2, ...`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PayoffSetLadder {
    pub levels: Vec<LadderLevel>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderLevel {
    pub horizon: usize,
    pub payoffs: BTreeSet<Values>,
    pub supportable: Vec<(usize, usize)>,
    /// Per-player minimum over `payoffs`; `None` when there is no equilibrium.
    pub minpay: Option<Values>,
}

impl PayoffSetLadder {
    pub fn level(&self, t: usize) -> Option<&LadderLevel> {
        self.levels.get(t.checked_sub(1)?)
    }

    /// First horizon whose supportable set contains a non-equilibrium profile.
    pub fn first_off_nash(&self, g: &StageGame) -> Option<usize> {
        let ne = pure_nash(g);
        self.levels
            .iter()
            .find(|l| l.supportable.iter().any(|p| !ne.contains(p)))
            .map(|l| l.horizon)
    }
}

/// A ladder that stopped early because a level grew past the cap.
#[derive(Clone, Debug)]
pub struct LadderOverflow {
    pub partial: PayoffSetLadder,
    pub horizon: usize,
    pub cap: usize,
}

pub const DEFAULT_LADDER_CAP: usize = 100_000;

fn min_pair(set: &BTreeSet<Values>) -> Option<Values> {
    let a = set.iter().map(|v| &v.0).min()?.clone();
    let b = set.iter().map(|v| &v.1).min()?.clone();
    Some((a, b))
}

// A unilateral deviation identifies the deviator, so the continuation after
// it can be any equilibrium of the remaining game; the deviator's worst one
// is the strongest credible punishment.
pub fn payoff_set_ladder(g: &StageGame, t_max: usize, cap: usize) -> std::result::Result<PayoffSetLadder, Box<LadderOverflow>> {
    assert!(t_max >= 1, "ladder needs at least one round");
    let (m, n) = (g.rows(), g.cols());
    let col_best: Vec<Rational> = (0..n).map(|j| (0..m).map(|i| g.u1(i, j).clone()).max().unwrap()).collect();
    let row_best: Vec<Rational> = (0..m).map(|i| (0..n).map(|j| g.u2(i, j).clone()).max().unwrap()).collect();

    let mut ladder = PayoffSetLadder::default();
    let mut prev: BTreeSet<Values> = BTreeSet::from([(Rational::zero(), Rational::zero())]);
    let mut prev_min = (Rational::zero(), Rational::zero());
    for t in 1..=t_max {
        let mut payoffs = BTreeSet::new();
        let mut supportable = Vec::new();
        for i in 0..m {
            for j in 0..n {
                let need1 = &col_best[j] - g.u1(i, j) + &prev_min.0;
                let need2 = &row_best[i] - g.u2(i, j) + &prev_min.1;
                let mut ok = false;
                for w in prev.iter().filter(|w| w.0 >= need1 && w.1 >= need2) {
                    ok = true;
                    payoffs.insert((g.u1(i, j) + &w.0, g.u2(i, j) + &w.1));
                }
                if ok {
                    supportable.push((i, j));
                }
            }
        }
        let minpay = min_pair(&payoffs);
        let size = payoffs.len();
        ladder.levels.push(LadderLevel { horizon: t, payoffs: payoffs.clone(), supportable, minpay: minpay.clone() });
        if size > cap {
            return Err(Box::new(LadderOverflow { partial: ladder, horizon: t, cap }));
        }
        let Some(minpay) = minpay else {
            // No equilibrium now means none at any longer horizon either.
            for t in t + 1..=t_max {
                ladder.levels.push(LadderLevel { horizon: t, payoffs: BTreeSet::new(), supportable: Vec::new(), minpay: None });
            }
            break;
        };
        prev = payoffs;
        prev_min = minpay;
    }
    Ok(ladder)
}

/// Whether some horizon up to `t_max` admits a pure subgame-perfect
/// equilibrium that opens with a non-equilibrium profile.
pub fn oracle_decide_pp(g: &StageGame, t_max: usize) -> Result<bool> {
    Ok(oracle_first_horizon(g, t_max)?.is_some())
}

pub fn oracle_first_horizon(g: &StageGame, t_max: usize) -> Result<Option<usize>> {
    let ladder = payoff_set_ladder(g, t_max, DEFAULT_LADDER_CAP)
        .map_err(|o| Error::LadderCap { cap: o.cap, horizon: o.horizon })?;
    Ok(ladder.first_off_nash(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Profile;
    use crate::games;
    use crate::machine::{MachineState, OutcomeClass, Transition};
    use crate::rational::int;

    /// Round 1 plays (b1, a2); row a1 is punished with (b1, b2), anything else
    /// is rewarded with (a1, a2).
    fn threat_machine(swap: bool) -> StrategyMachine {
        let g = games::off_nash_threat();
        let (punish, reward) = if swap { (2, 1) } else { (1, 2) };
        let stay = |s: usize| vec![Transition { class: OutcomeClass::any(), next: s }];
        StrategyMachine {
            horizon: 2,
            start: 0,
            states: vec![
                MachineState {
                    emit: Profile::pure(&g, 1, 0),
                    transitions: vec![
                        Transition { class: OutcomeClass::rows(vec![0]), next: punish },
                        Transition { class: OutcomeClass::any(), next: reward },
                    ],
                },
                MachineState { emit: Profile::pure(&g, 1, 1), transitions: stay(1) },
                MachineState { emit: Profile::pure(&g, 0, 0), transitions: stay(2) },
            ],
        }
    }

    #[test]
    fn two_round_threat_is_subgame_perfect() {
        let g = games::off_nash_threat();
        assert!(is_spe(&g, &threat_machine(false), Regime::Pp).unwrap());
        assert!(!is_spe(&g, &threat_machine(true), Regime::Pp).unwrap());
        assert_eq!(off_nash_states(&g, &threat_machine(false), Regime::Pp).unwrap(), vec![0]);
    }

    #[test]
    fn repeated_equilibrium_is_subgame_perfect() {
        let g = games::off_nash_threat();
        for t in 1..5 {
            let m = StrategyMachine {
                horizon: t,
                start: 0,
                states: vec![MachineState {
                    emit: Profile::pure(&g, 0, 0),
                    transitions: vec![Transition { class: OutcomeClass::any(), next: 0 }],
                }],
            };
            assert!(is_spe(&g, &m, Regime::Pp).unwrap());
            assert!(off_nash_states(&g, &m, Regime::Pp).unwrap().is_empty());
        }
    }

    #[test]
    fn regime_violations_are_errors() {
        let g = games::off_nash_threat();
        let mut m = threat_machine(false);
        m.states[0].emit.s1 = crate::game::MixedStrategy::mix2(2, 0, 1, &crate::rational::ratio(1, 2));
        assert!(matches!(is_spe(&g, &m, Regime::Pp), Err(Error::Regime(_))));
    }

    #[test]
    fn ladder_for_threat_game() {
        let g = games::off_nash_threat();
        let ladder = payoff_set_ladder(&g, 2, DEFAULT_LADDER_CAP).unwrap();
        let l1 = ladder.level(1).unwrap();
        assert_eq!(l1.payoffs, BTreeSet::from([(int(3), int(1)), (int(1), int(1))]));
        assert_eq!(l1.supportable, vec![(0, 0), (1, 1)]);
        assert!(ladder.level(2).unwrap().supportable.contains(&(1, 0)));
        assert_eq!(oracle_first_horizon(&g, 3).unwrap(), Some(2));
    }

    #[test]
    fn oracle_negatives() {
        assert!(!oracle_decide_pp(&games::no_best_response(), 6).unwrap());
        let g = games::none_to_new_ne();
        let ladder = payoff_set_ladder(&g, 3, DEFAULT_LADDER_CAP).unwrap();
        assert!(ladder.levels.iter().all(|l| l.payoffs.is_empty()));
        assert!(!oracle_decide_pp(&StageGame::from_ints(&[&[(1, 2)]]), 5).unwrap());
    }

    #[test]
    fn ladder_cap_returns_partial() {
        let g = games::grim_cooperation();
        let err = payoff_set_ladder(&g, 6, 2).unwrap_err();
        assert!(err.partial.levels.len() <= 6);
        assert_eq!(err.cap, 2);
    }
}
