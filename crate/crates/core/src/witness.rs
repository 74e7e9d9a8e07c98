//! Explicit subgame-perfect profiles that play a non-equilibrium stage
//! profile in round 1, one construction per positive verdict shape.
//!
//! Every construction plays only stage equilibria after round 1 and decides
//! which ones from the round-1 outcome alone. Horizons follow closed-form
//! bounds on how many reward/punishment rounds are needed to offset the
//! round-1 temptation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::decide::{pure_threat_scan, Evidence, Verdict};
use crate::error::{Error, Result};
use crate::game::{MixedStrategy, Player, Profile, Regime, StageGame};
use crate::machine::{Builder, OutcomeClass, StrategyMachine};
use crate::nash::{equilibrium_points, EqPoint, VSummary};
use crate::rational::{bezout, ceil_usize, floor_usize, int, Rational};

pub const DEFAULT_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TBound {
    pub regime: Regime,
    pub case_id: u8,
    pub t_min: usize,
}

/// Stage equilibria of a regime with quick access to the extreme ones.
struct Eqs {
    points: Vec<EqPoint>,
    summary: VSummary,
}

impl Eqs {
    fn new(g: &StageGame, regime: Regime) -> Self {
        let points = equilibrium_points(g, regime);
        let summary = VSummary::from_points(regime, &points);
        Eqs { points, summary }
    }

    fn with_pay(&self, who: Player, v: &Rational) -> &EqPoint {
        self.points.iter().find(|e| e.pay(who) == v).expect("value comes from this list")
    }

    fn max(&self, who: Player) -> Profile {
        self.with_pay(who, self.summary.max(who).expect("nonempty")).profile.clone()
    }

    fn min(&self, who: Player) -> Profile {
        self.with_pay(who, self.summary.min(who).expect("nonempty")).profile.clone()
    }

    fn span(&self, who: Player) -> Rational {
        self.summary.span(who).expect("nonempty")
    }

    /// The equilibrium used where any equilibrium will do: the first pure
    /// one if there is one.
    fn default(&self, g: &StageGame) -> Profile {
        crate::nash::pure_nash(g)
            .first()
            .map(|&(i, j)| Profile::pure(g, i, j))
            .unwrap_or_else(|| self.points[0].profile.clone())
    }
}

fn col_max(g: &StageGame, j: usize) -> Rational {
    (0..g.rows()).map(|i| g.u1(i, j).clone()).max().unwrap()
}

fn row_max(g: &StageGame, i: usize) -> Rational {
    (0..g.cols()).map(|j| g.u2(i, j).clone()).max().unwrap()
}

fn ceil(r: &Rational) -> usize {
    ceil_usize(r).expect("bound fits in usize")
}

fn pure_u1_against(g: &StageGame, i: usize, s2: &MixedStrategy) -> Rational {
    s2.support().into_iter().map(|j| s2.prob(j) * g.u1(i, j)).sum()
}

/// A fully parameterised construction on an oriented game (the threatened
/// player sits in the row seat unless stated otherwise).
enum Plan {
    /// Round 1 plays the off-equilibrium `(row, col)`; then the players
    /// alternate between each player's favourite equilibrium, swapping in the
    /// deviator's least favourite.
    Alternating { row: usize, col: usize },
    /// Round 1 plays `(row, col)` where only `threatened` is tempted; the
    /// continuation rewards compliance with their best equilibrium.
    Threat { threatened: Player, row: usize, col: usize },
    /// Player 1 mixes over `support` against `col`; a second-round lottery
    /// between two best replies of player 2 to `a_star` equalises player 1's
    /// totals across the support.
    Lottery {
        strategy: MixedStrategy,
        col: usize,
        a_star: usize,
        b_hi: usize,
        b_lo: usize,
        lambdas: Vec<(usize, Rational)>,
        t1: usize,
    },
    /// Mix `i1`, `i2` at the crossing weight where player 2 has two best
    /// replies `j1`, `j2`.
    Crossing { s1: MixedStrategy, i1: usize, i2: usize, j1: usize, j2: usize, tail: CrossingTail },
    /// Player 1 mixes against `col`; each non-anchor support row gets its own
    /// block of equilibrium pairs `(hi, lo, repeats)` whose payoff differences
    /// sum to that row's gap to the anchor.
    Segments { strategy: MixedStrategy, col: usize, blocks: Vec<Block> },
}

/// A support row and its runs `(hi, lo, repeats)` of equilibrium indices.
type Block = (usize, Vec<(usize, usize, usize)>);

enum CrossingTail {
    Equal,
    Unequal { rho: Rational, t1: usize },
}

struct Planned {
    plan: Plan,
    bound: TBound,
    regime: Regime,
    /// Planned on the transposed game.
    flipped: bool,
}

pub fn t_bound(g: &StageGame, verdict: &Verdict) -> Result<TBound> {
    Ok(plan(g, verdict)?.bound)
}

pub fn build_witness(g: &StageGame, verdict: &Verdict, regime: Regime, cap: usize) -> Result<(TBound, StrategyMachine)> {
    if verdict.regime != regime {
        return Err(Error::Input(format!(
            "verdict is for regime {} but a {regime} witness was requested",
            verdict.regime
        )));
    }
    let planned = plan(g, verdict)?;
    if planned.bound.t_min > cap {
        return Err(Error::HorizonExceeded { bound: planned.bound, cap });
    }
    let game = if planned.flipped { g.transpose() } else { g.clone() };
    let machine = materialize(&game, &planned, planned.bound.t_min);
    let machine = if planned.flipped { machine.transposed() } else { machine };
    Ok((planned.bound, machine))
}

fn plan(g: &StageGame, verdict: &Verdict) -> Result<Planned> {
    if !verdict.in_ls {
        return Err(Error::NotInLs);
    }
    let case = verdict.case_id.expect("positive verdict has a case");
    let ev = verdict.evidence.as_ref().expect("positive verdict has evidence");
    let flip = matches!(
        (verdict.regime, ev),
        (Regime::Pm, _)
            | (Regime::Pp | Regime::Mm, Evidence::PureThreat { threatened: Player::Two, .. })
            | (Regime::Mm, Evidence::MixedThreat { threatened: Player::Two, .. })
    );
    if flip {
        let mut p = plan(&g.transpose(), &verdict.transposed())?;
        p.flipped = true;
        p.bound.regime = verdict.regime;
        p.bound.case_id = case;
        return Ok(p);
    }
    let regime = verdict.regime;
    let eqs = Eqs::new(g, regime);
    let (plan, t_min) = match ev.clone() {
        Evidence::OffNash { row, col } => {
            let d1 = col_max(g, col) - g.u1(row, col);
            let d2 = row_max(g, row) - g.u2(row, col);
            let k = ceil(&(d1 / eqs.span(Player::One))).max(ceil(&(d2 / eqs.span(Player::Two))));
            (Plan::Alternating { row, col }, 2 * k + 1)
        }
        Evidence::PureThreat { threatened, row, col, .. } => threat(g, &eqs, threatened, row, col),
        Evidence::Congruent { strategy, pure, anchor, .. } => match strategy.as_pure() {
            Some(row) => threat(g, &eqs, Player::One, row, pure),
            None => segments(g, &eqs, strategy, pure, anchor),
        },
        Evidence::MixedThreat { strategy, pure, .. } => mixed_threat(g, &eqs, strategy, pure),
    };
    Ok(Planned { plan, bound: TBound { regime, case_id: case, t_min }, regime, flipped: false })
}

fn threat(g: &StageGame, eqs: &Eqs, who: Player, row: usize, col: usize) -> (Plan, usize) {
    let gap = match who {
        Player::One => col_max(g, col) - g.u1(row, col),
        Player::Two => row_max(g, row) - g.u2(row, col),
    };
    let t = ceil(&(gap / eqs.span(who))) + 1;
    (Plan::Threat { threatened: who, row, col }, t)
}

fn mixed_threat(g: &StageGame, eqs: &Eqs, strategy: MixedStrategy, col: usize) -> (Plan, usize) {
    if let Some((row, c, _)) = pure_threat_scan(g) {
        return threat(g, eqs, Player::One, row, c);
    }
    let span = eqs.span(Player::One);
    let a_star = (0..g.rows()).find(|&i| g.best_cols(i).len() >= 2);
    match a_star {
        Some(a_star) => {
            let cols = g.best_cols(a_star);
            let (mut b_hi, mut b_lo) = (cols[0], cols[1]);
            if g.u1(a_star, b_hi) < g.u1(a_star, b_lo) {
                std::mem::swap(&mut b_hi, &mut b_lo);
            }
            let support = strategy.support();
            let pays: Vec<Rational> = support.iter().map(|&i| g.u1(i, col).clone()).collect();
            let top = pays.iter().max().unwrap().clone();
            let bottom = pays.iter().min().unwrap().clone();
            let i_m = support[pays.iter().position(|p| p == &top).unwrap()];
            let g_support = &top - &bottom;
            let g_all = col_max(g, col) - (0..g.rows()).map(|i| g.u1(i, col).clone()).min().unwrap();
            let t1 = ceil(&(&g_support / &span)) + 1;
            let t2 = ceil(&((col_max(g, col) - g.u1(i_m, col)) / &span));
            let slope = g.u1(a_star, b_hi) - g.u1(a_star, b_lo) + int(t1 as i64 - 1) * &span;
            let lambdas = support
                .iter()
                .map(|&i| {
                    let gap = &top - g.u1(i, col);
                    let lambda = if gap.is_zero() { Rational::zero() } else { gap / &slope };
                    assert!(!lambda.is_negative() && lambda <= Rational::one(), "lottery weight outside [0, 1]");
                    (i, lambda)
                })
                .collect();
            let t_formula = ceil(&(int(3) + (g_support + g_all) / &span));
            let t = t_formula.max(1 + t1 + t2);
            (Plan::Lottery { strategy, col, a_star, b_hi, b_lo, lambdas, t1 }, t)
        }
        None => crossing(g, eqs),
    }
}

fn crossing(g: &StageGame, eqs: &Eqs) -> (Plan, usize) {
    let span = eqs.span(Player::One);
    // Every row has a unique best reply here; find two rows whose replies
    // differ.
    let reply: Vec<usize> = (0..g.rows()).map(|i| g.best_cols(i)[0]).collect();
    let (mut i1, mut i2) = (0..g.rows())
        .flat_map(|a| (a + 1..g.rows()).map(move |b| (a, b)))
        .find(|&(a, b)| reply[a] != reply[b])
        .expect("two rows with different best replies");
    // Along s = l*i1 + (1-l)*i2, player 2's payoff from column j is affine in
    // l. The reply set changes from {reply[i2]} at 0 to {reply[i1]} at 1; take
    // the first l where it has two members.
    let line = |j: usize, l: &Rational| l * g.u2(i1, j) + (Rational::one() - l) * g.u2(i2, j);
    let mut candidates: Vec<Rational> = Vec::new();
    for a in 0..g.cols() {
        for b in a + 1..g.cols() {
            // l*(p_a - p_b) + (q_a - q_b) = 0 with p = u2(i1) - u2(i2), q = u2(i2)
            let slope = (g.u2(i1, a) - g.u2(i2, a)) - (g.u2(i1, b) - g.u2(i2, b));
            if slope.is_zero() {
                continue;
            }
            let l = -(g.u2(i2, a) - g.u2(i2, b)) / slope;
            if l.is_positive() && l < Rational::one() {
                candidates.push(l);
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    let (lambda, j1, j2) = candidates
        .into_iter()
        .find_map(|l| {
            let vals: Vec<Rational> = (0..g.cols()).map(|j| line(j, &l)).collect();
            let top = vals.iter().max().unwrap();
            let best: Vec<usize> = (0..g.cols()).filter(|&j| &vals[j] == top).collect();
            (best.len() >= 2).then(|| (l, best[0], best[1]))
        })
        .expect("reply set changes somewhere in (0, 1)");
    let mut s1 = MixedStrategy::mix2(g.rows(), i1, i2, &lambda);
    let equal = g.u1(i1, j1) == g.u1(i2, j1);
    if equal {
        let gap = col_max(g, j1) - g.u1(i1, j1);
        let t = ceil(&(gap / &span)) + 1;
        let plan = Plan::Crossing { s1, i1, i2, j1, j2, tail: CrossingTail::Equal };
        return (plan, t);
    }
    if g.u1(i1, j1) < g.u1(i2, j1) {
        std::mem::swap(&mut i1, &mut i2);
        s1 = MixedStrategy::mix2(g.rows(), i1, i2, &(Rational::one() - &lambda));
    }
    let d1 = g.u1(i1, j1) - g.u1(i2, j1);
    let d2 = g.u1(i1, j2) - g.u1(i2, j2);
    // Smallest t1 >= 1 with t1 * span > d2.
    let t1 = (floor_usize(&(&d2 / &span)).expect("fits") + 1).max(1);
    let rho = &d1 / (&d1 + int(t1 as i64) * &span - &d2);
    assert!(rho.is_positive() && rho < Rational::one(), "crossing weight outside (0, 1)");
    let s2 = MixedStrategy::mix2(g.cols(), j2, j1, &rho);
    let worst: Rational = (0..g.rows())
        .map(|i| pure_u1_against(g, i, &s2))
        .max()
        .unwrap()
        - pure_u1_against(g, i2, &s2);
    let t2 = ceil(&(worst / &span)).saturating_sub(t1);
    let mut pairs_gap = Rational::zero();
    for a in 0..g.rows() {
        for &i in &[i1, i2] {
            for &j in &[j1, j2] {
                let d = g.u1(a, j) - g.u1(i, j);
                if d > pairs_gap {
                    pairs_gap = d;
                }
            }
        }
    }
    let t_formula = ceil(&(int(3) + pairs_gap / &span + d2.abs() / &span));
    let t = t_formula.max(1 + t1 + t2);
    (Plan::Crossing { s1, i1, i2, j1, j2, tail: CrossingTail::Unequal { rho, t1 } }, t)
}

fn segments(g: &StageGame, eqs: &Eqs, strategy: MixedStrategy, col: usize, anchor: usize) -> (Plan, usize) {
    let span = eqs.span(Player::One);
    let values = &eqs.summary.v1_values;
    let v0 = &values[0];
    // Integer images of v_k - v_0 over a common denominator.
    let lcm = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scaled: Vec<BigInt> = values
        .iter()
        .map(|v| ((v - v0) * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let (gcd_int, coeffs) = bezout(&scaled);
    let gcd = Rational::new(gcd_int, lcm);
    let index_of = |v: &Rational| eqs.points.iter().position(|e| &e.pay1 == v).expect("listed value");
    let mut blocks = Vec::new();
    for a in strategy.support().into_iter().filter(|&a| a != anchor) {
        let x = g.u1(anchor, col) - g.u1(a, col);
        let mut runs = Vec::new();
        let direct = values
            .iter()
            .flat_map(|v| values.iter().map(move |w| (v, w)))
            .find(|(v, w)| *v - *w == x);
        if x.is_zero() {
        } else if let Some((v, w)) = direct {
            runs.push((index_of(v), index_of(w), 1));
        } else {
            let m = (&x / &gcd).to_integer();
            for (k, c) in coeffs.iter().enumerate() {
                let n = &m * c;
                if n.is_zero() {
                    continue;
                }
                let (hi, lo) = (index_of(&values[k]), index_of(v0));
                let pair = if n.is_positive() { (hi, lo) } else { (lo, hi) };
                let reps = usize::try_from(n.abs()).unwrap_or(usize::MAX);
                runs.push((pair.0, pair.1, reps));
            }
        }
        blocks.push((a, runs));
    }
    let n = blocks
        .iter()
        .flat_map(|(_, r)| r.iter().map(|&(_, _, k)| k))
        .fold(0usize, usize::saturating_add);
    let lo = (0..g.rows()).map(|i| g.u1(i, col).clone()).min().unwrap();
    let hi = col_max(g, col);
    let nbot = ceil(&((&hi - g.u1(anchor, col)) / &span));
    let t_formula = ceil(&((&hi - &lo) / &span)).saturating_add(n).saturating_add(2);
    let t = t_formula.max(n.saturating_add(1).saturating_add(nbot));
    (Plan::Segments { strategy, col, blocks }, t)
}

fn materialize(g: &StageGame, planned: &Planned, horizon: usize) -> StrategyMachine {
    let eqs = Eqs::new(g, planned.regime);
    let mut b = Builder::default();
    let start = match &planned.plan {
        Plan::Alternating { row, col } => {
            let (max1, min1) = (eqs.max(Player::One), eqs.min(Player::One));
            let (max2, min2) = (eqs.max(Player::Two), eqs.min(Player::Two));
            let on = b.path(&[], &[max1.clone(), max2.clone()]);
            let dev1 = b.path(&[], &[min1, max2]);
            let dev2 = b.path(&[], &[max1, min2]);
            let other = b.path(&[], &[eqs.default(g)]);
            let others_rows: Vec<usize> = (0..g.rows()).filter(|i| i != row).collect();
            let others_cols: Vec<usize> = (0..g.cols()).filter(|j| j != col).collect();
            b.state(
                Profile::pure(g, *row, *col),
                vec![
                    (OutcomeClass::cells(vec![*row], vec![*col]), on),
                    (OutcomeClass::cells(others_rows, vec![*col]), dev1),
                    (OutcomeClass::cells(vec![*row], others_cols), dev2),
                    (OutcomeClass::any(), other),
                ],
            )
        }
        Plan::Threat { threatened, row, col } => {
            let reward = b.path(&[], &[eqs.max(*threatened)]);
            let punish = b.path(&[], &[eqs.min(*threatened)]);
            let comply = match threatened {
                Player::One => OutcomeClass::rows(vec![*row]),
                Player::Two => OutcomeClass::cols(vec![*col]),
            };
            b.state(Profile::pure(g, *row, *col), vec![(comply, reward), (OutcomeClass::any(), punish)])
        }
        Plan::Lottery { strategy, col, a_star, b_hi, b_lo, lambdas, t1 } => {
            let (max1, min1) = (eqs.max(Player::One), eqs.min(Player::One));
            let reward = b.path(&[], std::slice::from_ref(&max1));
            let punish_then_reward = b.path(&vec![min1.clone(); t1 - 1], &[max1]);
            let outside = b.path(&[], &[min1]);
            let mut arms = Vec::new();
            for (i, lambda) in lambdas {
                let s2 = MixedStrategy::mix2(g.cols(), *b_hi, *b_lo, lambda);
                let lottery = b.state(
                    Profile::new(MixedStrategy::pure(g.rows(), *a_star), s2),
                    vec![(OutcomeClass::cols(vec![*b_hi]), reward), (OutcomeClass::any(), punish_then_reward)],
                );
                arms.push((OutcomeClass::rows(vec![*i]), lottery));
            }
            arms.push((OutcomeClass::any(), outside));
            b.state(Profile::new(strategy.clone(), MixedStrategy::pure(g.cols(), *col)), arms)
        }
        Plan::Crossing { s1, i1, i2, j1, j2, tail } => {
            let (max1, min1) = (eqs.max(Player::One), eqs.min(Player::One));
            let reward = b.path(&[], std::slice::from_ref(&max1));
            let punish = b.path(&[], std::slice::from_ref(&min1));
            match tail {
                CrossingTail::Equal => b.state(
                    Profile::new(s1.clone(), MixedStrategy::pure(g.cols(), *j1)),
                    vec![(OutcomeClass::rows(vec![*i1, *i2]), reward), (OutcomeClass::any(), punish)],
                ),
                CrossingTail::Unequal { rho, t1 } => {
                    let delayed = b.path(&vec![min1; *t1], &[max1]);
                    let s2 = MixedStrategy::mix2(g.cols(), *j2, *j1, rho);
                    b.state(
                        Profile::new(s1.clone(), s2),
                        vec![
                            (OutcomeClass::cells(vec![*i1], vec![*j2]), delayed),
                            (OutcomeClass::cells(vec![*i1, *i2], vec![*j1, *j2]), reward),
                            (OutcomeClass::any(), punish),
                        ],
                    )
                }
            }
        }
        Plan::Segments { strategy, col, blocks } => {
            let (max1, min1) = (eqs.max(Player::One), eqs.min(Player::One));
            let support = strategy.support();
            // One chain per first-round row class: each non-anchor support row,
            // the anchor class, and everything outside the support.
            let chain = |b: &mut Builder, who: Option<usize>, tail: Profile| {
                let mut prefix = Vec::new();
                for (a, runs) in blocks {
                    for &(hi, lo, reps) in runs {
                        let pick = if who == Some(*a) { hi } else { lo };
                        prefix.extend(std::iter::repeat_n(eqs.points[pick].profile.clone(), reps));
                    }
                }
                b.path(&prefix, &[tail])
            };
            let mut arms = Vec::new();
            for (a, _) in blocks {
                let entry = chain(&mut b, Some(*a), max1.clone());
                arms.push((OutcomeClass::rows(vec![*a]), entry));
            }
            let anchor_entry = chain(&mut b, None, max1.clone());
            arms.push((OutcomeClass::rows(support.clone()), anchor_entry));
            let outside = chain(&mut b, None, min1);
            arms.push((OutcomeClass::any(), outside));
            b.state(Profile::new(strategy.clone(), MixedStrategy::pure(g.cols(), *col)), arms)
        }
    };
    b.finish(horizon, start)
}

/// The classic cooperation machine: play `cooperate` for `horizon - tail.len()`
/// rounds, switching for good to `punish` after any other outcome, and finish
/// with the `tail` equilibria on the cooperative path.
pub fn grim_trigger(
    g: &StageGame,
    cooperate: (usize, usize),
    punish: (usize, usize),
    tail: &[(usize, usize)],
    horizon: usize,
) -> StrategyMachine {
    assert!(horizon > tail.len());
    let mut b = Builder::default();
    let punish_state = b.path(&[], &[Profile::pure(g, punish.0, punish.1)]);
    let tail_profiles: Vec<Profile> = tail.iter().map(|&(i, j)| Profile::pure(g, i, j)).collect();
    let mut next = match tail_profiles.split_last() {
        Some((last, init)) => b.path(init, std::slice::from_ref(last)),
        None => punish_state,
    };
    let coop = OutcomeClass::cells(vec![cooperate.0], vec![cooperate.1]);
    for _ in 0..horizon - tail.len() {
        next = b.state(
            Profile::pure(g, cooperate.0, cooperate.1),
            vec![(coop.clone(), next), (OutcomeClass::any(), punish_state)],
        );
    }
    b.finish(horizon, next)
}
