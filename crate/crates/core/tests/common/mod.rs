//! Test-side oracles. Each one recomputes a library result by a different,
//! deliberately naive method.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use offnash::ensemble::{EnsembleSpec, Span};
use offnash::lp::{LinearProgram, Relation};
use offnash::rational::int;
use offnash::{Rational, StageGame};

pub type Q = Rational;

/// The ensemble behind the oracle cross-check: 2-3 actions each, payoffs 0..3.
pub const SMALL: EnsembleSpec = EnsembleSpec { rows: Span::new(2, 3), cols: Span::new(2, 3), payoffs: Span::new(0, 3) };
pub const SMALL_SEED: u64 = 20_240_601;
pub const SMALL_COUNT: usize = 600;
/// Second ensemble for the inclusion properties: payoffs 0..5.
pub const WIDE: EnsembleSpec = EnsembleSpec { rows: Span::new(2, 3), cols: Span::new(2, 3), payoffs: Span::new(0, 5) };
pub const WIDE_SEED: u64 = 7_771;
pub const WIDE_COUNT: usize = 600;

/// Plain Gaussian elimination; `None` when singular.
pub fn gauss(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        b.swap(c, p);
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = &a[r][c] / &a[c][c];
                for k in c..n {
                    let d = &f * &a[c][k];
                    a[r][k] -= d;
                }
                let d = &f * &b[c];
                b[r] -= d;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

/// `u[i][j]` as a matrix indexed by (mixer action, responder action), with
/// `responder` payoffs.
fn seat(g: &StageGame, mixer_is_one: bool) -> (usize, usize, Vec<Vec<Q>>) {
    let (m, n) = (g.rows(), g.cols());
    if mixer_is_one {
        (m, n, (0..m).map(|i| (0..n).map(|j| g.u2(i, j).clone()).collect()).collect())
    } else {
        (n, m, (0..n).map(|j| (0..m).map(|i| g.u1(i, j).clone()).collect()).collect())
    }
}

/// Mixes over `support` (of size k) so that the responder is indifferent among
/// the first k entries of `cols`. Returns the full mixed strategy and value.
fn indifference(resp: &[Vec<Q>], size: usize, support: &[usize], cols: &[usize]) -> Option<(Vec<Q>, Q)> {
    let k = support.len();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for &t in &cols[..k] {
        let mut row: Vec<Q> = support.iter().map(|&s| resp[s][t].clone()).collect();
        row.push(-Q::one());
        a.push(row);
        b.push(Q::zero());
    }
    let mut sum = vec![Q::one(); k];
    sum.push(Q::zero());
    a.push(sum);
    b.push(Q::one());
    let sol = gauss(a, b)?;
    let mut x = vec![Q::zero(); size];
    for (p, &s) in support.iter().enumerate() {
        x[s] = sol[p].clone();
    }
    Some((x, sol[k].clone()))
}

fn payoff_against(resp: &[Vec<Q>], x: &[Q], t: usize) -> Q {
    x.iter().enumerate().map(|(s, p)| p * &resp[s][t]).sum()
}

/// No mixed strategy with support size k has more than k pure best replies,
/// and every indifference system involved is nonsingular.
pub fn is_nondegenerate(g: &StageGame) -> bool {
    for mixer_is_one in [true, false] {
        let (m, n, resp) = seat(g, mixer_is_one);
        for k in 1..=m {
            if k + 1 > n {
                break;
            }
            for support in subsets(m, k) {
                for cols in subsets(n, k + 1) {
                    let Some((x, v)) = indifference(&resp, m, &support, &cols) else {
                        return false;
                    };
                    if x.iter().any(Signed::is_negative) {
                        continue;
                    }
                    let ties = payoff_against(&resp, &x, cols[k]) == v;
                    let best = (0..n).all(|t| payoff_against(&resp, &x, t) <= v);
                    if ties && best {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// All equilibria of a nondegenerate game, found by trying every pair of
/// equal-size supports.
pub fn support_enumeration(g: &StageGame) -> BTreeSet<(Vec<Q>, Vec<Q>)> {
    let (m, n) = (g.rows(), g.cols());
    let (_, _, resp2) = seat(g, true);
    let (_, _, resp1) = seat(g, false);
    let mut out = BTreeSet::new();
    for k in 1..=m.min(n) {
        for s1 in subsets(m, k) {
            for s2 in subsets(n, k) {
                // Player 1's mix makes player 2 indifferent on s2 and vice versa.
                let Some((x, w)) = indifference(&resp2, m, &s1, &s2) else { continue };
                let Some((y, v)) = indifference(&resp1, n, &s2, &s1) else { continue };
                let positive = s1.iter().all(|&i| x[i].is_positive()) && s2.iter().all(|&j| y[j].is_positive());
                let br1 = (0..m).all(|i| payoff_against(&resp1, &y, i) <= v);
                let br2 = (0..n).all(|j| payoff_against(&resp2, &x, j) <= w);
                if positive && br1 && br2 {
                    out.insert((x, y));
                }
            }
        }
    }
    out
}

/// Optimum of a bounded program by trying every basis of tight constraints.
/// `None` means infeasible.
pub fn vertex_max(lp: &LinearProgram) -> Option<Q> {
    let n = lp.vars();
    let mut rows: Vec<(Vec<Q>, Relation, Q)> =
        lp.constraints.iter().map(|c| (c.coeffs.clone(), c.rel, c.rhs.clone())).collect();
    for k in 0..n {
        if lp.nonneg[k] {
            let mut e = vec![Q::zero(); n];
            e[k] = Q::one();
            rows.push((e, Relation::Ge, Q::zero()));
        }
    }
    let feasible = |x: &[Q]| {
        rows.iter().all(|(a, rel, b)| {
            let lhs: Q = a.iter().zip(x).map(|(p, q)| p * q).sum();
            match rel {
                Relation::Le => lhs <= *b,
                Relation::Ge => lhs >= *b,
                Relation::Eq => lhs == *b,
            }
        })
    };
    let mut best: Option<Q> = None;
    // Every vertex is the solution of some n independent rows held tight;
    // equalities outside the chosen rows are enforced by the feasibility test.
    for pick in subsets(rows.len(), n) {
        let a: Vec<Vec<Q>> = pick.iter().map(|&r| rows[r].0.clone()).collect();
        let b: Vec<Q> = pick.iter().map(|&r| rows[r].2.clone()).collect();
        let Some(x) = gauss(a, b) else { continue };
        if feasible(&x) {
            let v: Q = lp.objective.iter().zip(&x).map(|(c, y)| c * y).sum();
            if best.as_ref().is_none_or(|b| v > *b) {
                best = Some(v);
            }
        }
    }
    best
}

/// Whether `x` is a sum of at most `max_len` elements of `d` (repetition allowed).
pub fn multiset_reachable(x: &Q, d: &[Q], max_len: usize) -> bool {
    let mut sums: BTreeSet<Q> = BTreeSet::from([Q::zero()]);
    for _ in 0..max_len {
        if sums.contains(x) {
            return true;
        }
        let next: BTreeSet<Q> = sums.iter().flat_map(|s| d.iter().map(move |e| s + e)).collect();
        sums.extend(next);
    }
    sums.contains(x)
}

/// Pure SPE payoff sets and supportable first-round profiles for horizons
/// `1..=t_max`, assigning every first-round outcome its own continuation
/// equilibrium payoff and trying all such assignments.
pub type OracleLevel = (BTreeSet<(Q, Q)>, BTreeSet<(usize, usize)>);

pub fn exhaustive_ladder(g: &StageGame, t_max: usize) -> Vec<OracleLevel> {
    let (m, n) = (g.rows(), g.cols());
    let outcomes: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let mut prev: Vec<(Q, Q)> = vec![(Q::zero(), Q::zero())];
    let mut out = Vec::new();
    for _ in 0..t_max {
        let mut payoffs = BTreeSet::new();
        let mut supportable = BTreeSet::new();
        if !prev.is_empty() {
            let total = prev.len().pow(outcomes.len() as u32);
            for code in 0..total {
                let mut c = code;
                let cont: Vec<&(Q, Q)> = outcomes
                    .iter()
                    .map(|_| {
                        let w = &prev[c % prev.len()];
                        c /= prev.len();
                        w
                    })
                    .collect();
                let at = |i: usize, j: usize| cont[i * n + j];
                for &(i, j) in &outcomes {
                    let own1 = g.u1(i, j) + &at(i, j).0;
                    let own2 = g.u2(i, j) + &at(i, j).1;
                    let ok1 = (0..m).all(|d| g.u1(d, j) + &at(d, j).0 <= own1);
                    let ok2 = (0..n).all(|d| g.u2(i, d) + &at(i, d).1 <= own2);
                    if ok1 && ok2 {
                        supportable.insert((i, j));
                        payoffs.insert((own1, own2));
                    }
                }
            }
        }
        prev = payoffs.iter().cloned().collect();
        out.push((payoffs, supportable));
    }
    out
}

pub fn q(p: i64, d: i64) -> Q {
    offnash::rational::ratio(p, d)
}

pub fn z(n: i64) -> Q {
    int(n)
}
