//! Stage-game equilibrium sets per regime and the payoff summaries derived
//! from them.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::game::{MixedStrategy, Player, Profile, Regime, StageGame};
use crate::linalg::solve_square;
use crate::lp::{self, LinearProgram, Relation};
use crate::rational::Rational;

/// Pure equilibria as `(row, col)` pairs in row-major order.
pub fn pure_nash(g: &StageGame) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..g.rows() {
        for j in 0..g.cols() {
            if g.is_pure_nash(i, j) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Player-1 strategies supported on `allowed` against which column `col` is
/// a best response for player 2. Variables are indexed by all rows; rows
/// outside `allowed` are pinned to zero.
pub fn best_response_region(g: &StageGame, col: usize, allowed: &[usize]) -> LinearProgram {
    let m = g.rows();
    let mut lp = LinearProgram::nonneg(m);
    let ones = (0..m)
        .map(|i| if allowed.contains(&i) { Rational::one() } else { Rational::zero() })
        .collect();
    lp.push(ones, Relation::Eq, Rational::one());
    for i in (0..m).filter(|i| !allowed.contains(i)) {
        let mut row = vec![Rational::zero(); m];
        row[i] = Rational::one();
        lp.push(row, Relation::Eq, Rational::zero());
    }
    for other in (0..g.cols()).filter(|&k| k != col) {
        let row = (0..m).map(|i| g.u2(i, col) - g.u2(i, other)).collect();
        lp.push(row, Relation::Ge, Rational::zero());
    }
    lp
}

/// The set of `sigma1` with `(sigma1, col)` an equilibrium when only player 1
/// may mix.
#[derive(Clone, Debug)]
pub struct MixedPureComponent {
    pub col: usize,
    pub br_rows: Vec<usize>,
    pub v1_value: Rational,
    pub region: LinearProgram,
    pub nonempty: bool,
    /// `(min, max)` of player 2's payoff over the component.
    pub u2_range: Option<(Rational, Rational)>,
    /// Vertices attaining the minimum and maximum of player 2's payoff.
    pub u2_argmin: Option<MixedStrategy>,
    pub u2_argmax: Option<MixedStrategy>,
}

impl MixedPureComponent {
    pub fn contains(&self, s1: &MixedStrategy) -> bool {
        self.nonempty && self.region.is_feasible(s1.probs())
    }
}

fn vertex_strategy(point: &[Rational]) -> MixedStrategy {
    MixedStrategy::new(point.to_vec()).expect("simplex vertex is a distribution")
}

pub fn mixed_pure_components(g: &StageGame) -> Vec<MixedPureComponent> {
    (0..g.cols())
        .map(|j| {
            let br_rows = g.best_rows(j);
            let v1_value = g.u1(br_rows[0], j).clone();
            let region = best_response_region(g, j, &br_rows);
            let form: Vec<Rational> = (0..g.rows()).map(|i| g.u2(i, j).clone()).collect();
            let neg: Vec<Rational> = form.iter().map(|v| -v.clone()).collect();
            let hi = lp::solve(&region.with_objective(form)).expect("well-formed region");
            let lo = lp::solve(&region.with_objective(neg)).expect("well-formed region");
            match (hi.point(), lo.point()) {
                (Some(p_hi), Some(p_lo)) => MixedPureComponent {
                    col: j,
                    br_rows,
                    v1_value,
                    nonempty: true,
                    u2_range: Some((-lo.value().unwrap().clone(), hi.value().unwrap().clone())),
                    u2_argmin: Some(vertex_strategy(p_lo)),
                    u2_argmax: Some(vertex_strategy(p_hi)),
                    region,
                },
                _ => MixedPureComponent {
                    col: j,
                    br_rows,
                    v1_value,
                    nonempty: false,
                    u2_range: None,
                    u2_argmin: None,
                    u2_argmax: None,
                    region,
                },
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExtremeEquilibrium {
    pub s1: MixedStrategy,
    pub s2: MixedStrategy,
    pub pay1: Rational,
    pub pay2: Rational,
}

impl ExtremeEquilibrium {
    pub fn profile(&self) -> Profile {
        Profile::new(self.s1.clone(), self.s2.clone())
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Vertices of `{(x, v) : x >= 0, sum x = 1, sum_i x_i p(i, k) <= v for all k}`
/// with their tight sets: `own[i]` when `x_i = 0`, `opp[k]` when the
/// `k`-th payoff constraint binds.
fn vertices(own: usize, opp: usize, p: impl Fn(usize, usize) -> Rational) -> Vec<(Vec<Rational>, Vec<bool>, Vec<bool>)> {
    let dim = own + 1;
    let mut found: BTreeSet<Vec<Rational>> = BTreeSet::new();
    let mut out = Vec::new();
    for tight in combinations(own + opp, own) {
        let mut a = Vec::with_capacity(dim);
        let mut b = Vec::with_capacity(dim);
        let mut sum = vec![Rational::one(); own];
        sum.push(Rational::zero());
        a.push(sum);
        b.push(Rational::one());
        for &c in &tight {
            let mut row = vec![Rational::zero(); dim];
            if c < own {
                row[c] = Rational::one();
            } else {
                let k = c - own;
                for (i, r) in row.iter_mut().enumerate().take(own) {
                    *r = p(i, k);
                }
                row[own] = -Rational::one();
            }
            a.push(row);
            b.push(Rational::zero());
        }
        let Some(sol) = solve_square(a, b) else { continue };
        let (x, v) = sol.split_at(own);
        if x.iter().any(|xi| xi < &Rational::zero()) {
            continue;
        }
        let pays: Vec<Rational> = (0..opp)
            .map(|k| x.iter().enumerate().map(|(i, xi)| xi * p(i, k)).sum())
            .collect();
        if pays.iter().any(|q| q > &v[0]) {
            continue;
        }
        if !found.insert(x.to_vec()) {
            continue;
        }
        let zero: Vec<bool> = x.iter().map(|xi| xi.is_zero()).collect();
        let bind: Vec<bool> = pays.iter().map(|q| q == &v[0]).collect();
        out.push((x.to_vec(), zero, bind));
    }
    out
}

/// All extreme equilibria (both players may mix), sorted lexicographically by
/// strategy vectors.
pub fn extreme_equilibria_mm(g: &StageGame) -> Vec<ExtremeEquilibrium> {
    let (m, n) = (g.rows(), g.cols());
    // Player 1's vertices are bounded by player 2's payoffs and vice versa.
    let xs = vertices(m, n, |i, j| g.u2(i, j).clone());
    let ys = vertices(n, m, |j, i| g.u1(i, j).clone());
    let mut out = Vec::new();
    for (x, x_zero, col_bind) in &xs {
        for (y, y_zero, row_bind) in &ys {
            // Completely labelled: each row is unused or a best response, and
            // likewise for columns.
            let rows_ok = (0..m).all(|i| x_zero[i] || row_bind[i]);
            let cols_ok = (0..n).all(|j| y_zero[j] || col_bind[j]);
            if rows_ok && cols_ok {
                let s1 = vertex_strategy(x);
                let s2 = vertex_strategy(y);
                let p = Profile::new(s1.clone(), s2.clone());
                out.push(ExtremeEquilibrium {
                    pay1: g.payoff(Player::One, &p),
                    pay2: g.payoff(Player::Two, &p),
                    s1,
                    s2,
                });
            }
        }
    }
    out.sort();
    out
}

/// A stage equilibrium of some regime together with its payoffs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqPoint {
    pub profile: Profile,
    pub pay1: Rational,
    pub pay2: Rational,
}

impl EqPoint {
    pub fn pay(&self, who: Player) -> &Rational {
        match who {
            Player::One => &self.pay1,
            Player::Two => &self.pay2,
        }
    }
}

/// A finite list of equilibria of the regime whose payoffs include every
/// extreme value of V1 and V2. Deterministic order.
pub fn equilibrium_points(g: &StageGame, regime: Regime) -> Vec<EqPoint> {
    match regime {
        Regime::Pp => pure_nash(g)
            .into_iter()
            .map(|(i, j)| EqPoint {
                profile: Profile::pure(g, i, j),
                pay1: g.u1(i, j).clone(),
                pay2: g.u2(i, j).clone(),
            })
            .collect(),
        Regime::Mp => {
            let mut out: Vec<EqPoint> = Vec::new();
            for c in mixed_pure_components(g).into_iter().filter(|c| c.nonempty) {
                for s1 in [c.u2_argmin.clone().unwrap(), c.u2_argmax.clone().unwrap()] {
                    let profile = Profile::new(s1, MixedStrategy::pure(g.cols(), c.col));
                    if out.iter().any(|e| e.profile == profile) {
                        continue;
                    }
                    out.push(EqPoint {
                        pay1: c.v1_value.clone(),
                        pay2: g.payoff(Player::Two, &profile),
                        profile,
                    });
                }
            }
            out
        }
        Regime::Pm => equilibrium_points(&g.transpose(), Regime::Mp)
            .into_iter()
            .map(|e| EqPoint { profile: e.profile.transposed(), pay1: e.pay2, pay2: e.pay1 })
            .collect(),
        Regime::Mm => extreme_equilibria_mm(g)
            .into_iter()
            .map(|e| EqPoint { profile: e.profile(), pay1: e.pay1, pay2: e.pay2 })
            .collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Count {
    Zero,
    One,
    Many,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VSummary {
    pub regime: Regime,
    pub v1_values: Vec<Rational>,
    pub v2_values: Vec<Rational>,
    pub v1_unique: bool,
    pub v2_unique: bool,
    pub empty: bool,
}

impl VSummary {
    pub fn from_points(regime: Regime, points: &[EqPoint]) -> Self {
        let collect = |who| -> Vec<Rational> {
            let set: BTreeSet<Rational> = points.iter().map(|e| e.pay(who).clone()).collect();
            set.into_iter().collect()
        };
        let v1_values = collect(Player::One);
        let v2_values = collect(Player::Two);
        VSummary {
            regime,
            v1_unique: v1_values.len() == 1,
            v2_unique: v2_values.len() == 1,
            empty: points.is_empty(),
            v1_values,
            v2_values,
        }
    }

    pub fn values(&self, who: Player) -> &[Rational] {
        match who {
            Player::One => &self.v1_values,
            Player::Two => &self.v2_values,
        }
    }

    pub fn count(&self, who: Player) -> Count {
        match self.values(who).len() {
            0 => Count::Zero,
            1 => Count::One,
            _ => Count::Many,
        }
    }

    pub fn min(&self, who: Player) -> Option<&Rational> {
        self.values(who).first()
    }

    pub fn max(&self, who: Player) -> Option<&Rational> {
        self.values(who).last()
    }

    /// `max V_i - min V_i`.
    pub fn span(&self, who: Player) -> Option<Rational> {
        Some(self.max(who)? - self.min(who)?)
    }

    pub fn transposed(&self) -> VSummary {
        VSummary {
            regime: self.regime.transposed(),
            v1_values: self.v2_values.clone(),
            v2_values: self.v1_values.clone(),
            v1_unique: self.v2_unique,
            v2_unique: self.v1_unique,
            empty: self.empty,
        }
    }
}

pub fn v_summary(g: &StageGame, regime: Regime) -> VSummary {
    VSummary::from_points(regime, &equilibrium_points(g, regime))
}
