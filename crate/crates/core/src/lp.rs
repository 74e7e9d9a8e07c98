//! Exact linear programming: two-phase primal simplex with Bland's rule.
//!
//! Every optimal solve also extracts a dual solution and checks it against the
//! original program (feasibility plus equal objective). A failed check is a
//! bug, so it panics.

use std::sync::atomic::{AtomicU64, Ordering};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rel: Relation,
    pub rhs: Rational,
}

/// `maximize objective · x` subject to the constraints; `nonneg[k]` adds
/// `x_k >= 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub nonneg: Vec<bool>,
}

impl LinearProgram {
    /// A program over `n` nonnegative variables with a zero objective.
    pub fn nonneg(n: usize) -> Self {
        LinearProgram {
            objective: vec![Rational::zero(); n],
            constraints: Vec::new(),
            nonneg: vec![true; n],
        }
    }

    pub fn vars(&self) -> usize {
        self.objective.len()
    }

    pub fn push(&mut self, coeffs: Vec<Rational>, rel: Relation, rhs: Rational) {
        self.constraints.push(Constraint { coeffs, rel, rhs });
    }

    pub fn with_objective(&self, objective: Vec<Rational>) -> Self {
        LinearProgram { objective, ..self.clone() }
    }

    fn validate(&self) -> Result<()> {
        let n = self.vars();
        if n == 0 {
            return Err(Error::MalformedLp("no variables".into()));
        }
        if self.nonneg.len() != n {
            return Err(Error::MalformedLp(format!(
                "{} sign flags for {n} variables",
                self.nonneg.len()
            )));
        }
        for (k, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != n {
                return Err(Error::MalformedLp(format!(
                    "constraint {k} has {} coefficients, expected {n}",
                    c.coeffs.len()
                )));
            }
        }
        Ok(())
    }

    /// Exact check that `x` satisfies every constraint and sign restriction.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        if x.len() != self.vars() {
            return false;
        }
        if x.iter().zip(&self.nonneg).any(|(v, &nn)| nn && v.is_negative()) {
            return false;
        }
        self.constraints.iter().all(|c| {
            let lhs = dot(&c.coeffs, x);
            match c.rel {
                Relation::Le => lhs <= c.rhs,
                Relation::Eq => lhs == c.rhs,
                Relation::Ge => lhs >= c.rhs,
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        point: Vec<Rational>,
        /// One multiplier per constraint, signed for the original program.
        dual: Vec<Rational>,
    },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Checks weak-duality feasibility of `dual` and equality of objectives.
pub fn certificate_holds(lp: &LinearProgram, value: &Rational, point: &[Rational], dual: &[Rational]) -> bool {
    if dual.len() != lp.constraints.len() || !lp.is_feasible(point) {
        return false;
    }
    if &dot(&lp.objective, point) != value {
        return false;
    }
    for (y, c) in dual.iter().zip(&lp.constraints) {
        let ok = match c.rel {
            Relation::Le => !y.is_negative(),
            Relation::Ge => !y.is_positive(),
            Relation::Eq => true,
        };
        if !ok {
            return false;
        }
    }
    for k in 0..lp.vars() {
        let col: Rational = lp
            .constraints
            .iter()
            .zip(dual)
            .map(|(c, y)| &c.coeffs[k] * y)
            .sum();
        let ok = if lp.nonneg[k] {
            col >= lp.objective[k]
        } else {
            col == lp.objective[k]
        };
        if !ok {
            return false;
        }
    }
    let dual_value: Rational = lp.constraints.iter().zip(dual).map(|(c, y)| &c.rhs * y).sum();
    &dual_value == value
}

struct Tableau {
    /// rows × (cols + 1); last column is the right-hand side.
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
}

enum Step {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rational {
        &self.t[r][self.cols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.t[row][col].clone();
        for v in self.t[row].iter_mut() {
            *v = &*v / &p;
        }
        let pivot_row = self.t[row].clone();
        for (r, line) in self.t.iter_mut().enumerate() {
            if r == row || line[col].is_zero() {
                continue;
            }
            let f = line[col].clone();
            for (v, pv) in line.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[row] = col;
    }

    fn reduced_cost(&self, cost: &[Rational], j: usize) -> Rational {
        let mut d = cost[j].clone();
        for (r, &b) in self.basis.iter().enumerate() {
            if !cost[b].is_zero() && !self.t[r][j].is_zero() {
                d -= &cost[b] * &self.t[r][j];
            }
        }
        d
    }

    /// Maximises `cost · x` over columns `< allowed`.
    fn run(&mut self, cost: &[Rational], allowed: usize) -> Step {
        loop {
            let entering = (0..allowed)
                .filter(|j| !self.basis.contains(j))
                .find(|&j| self.reduced_cost(cost, j).is_positive());
            let Some(e) = entering else {
                return Step::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.t.len() {
                let a = &self.t[r][e];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(r) / a;
                leave = match leave {
                    None => Some((r, ratio)),
                    Some((lr, lratio)) => {
                        if ratio < lratio || (ratio == lratio && self.basis[r] < self.basis[lr]) {
                            Some((r, ratio))
                        } else {
                            Some((lr, lratio))
                        }
                    }
                };
            }
            match leave {
                None => return Step::Unbounded,
                Some((r, _)) => self.pivot(r, e),
            }
        }
    }
}

static SOLVES: AtomicU64 = AtomicU64::new(0);
static CERTIFIED: AtomicU64 = AtomicU64::new(0);

/// `(solves, certified optima)` since process start.
pub fn solve_stats() -> (u64, u64) {
    (SOLVES.load(Ordering::Relaxed), CERTIFIED.load(Ordering::Relaxed))
}

pub fn solve(lp: &LinearProgram) -> Result<LpOutcome> {
    lp.validate()?;
    SOLVES.fetch_add(1, Ordering::Relaxed);
    let n = lp.vars();
    let m = lp.constraints.len();

    // Column layout: split variables, then one slack per inequality, then one
    // artificial per row.
    let mut var_cols: Vec<(usize, Option<usize>)> = Vec::with_capacity(n);
    let mut next = 0;
    for k in 0..n {
        if lp.nonneg[k] {
            var_cols.push((next, None));
            next += 1;
        } else {
            var_cols.push((next, Some(next + 1)));
            next += 2;
        }
    }
    let mut slack_of = vec![None; m];
    for (r, c) in lp.constraints.iter().enumerate() {
        if c.rel != Relation::Eq {
            slack_of[r] = Some(next);
            next += 1;
        }
    }
    let structural = next;
    let cols = structural + m;

    let mut flip = vec![false; m];
    let mut t = vec![vec![Rational::zero(); cols + 1]; m];
    for (r, c) in lp.constraints.iter().enumerate() {
        let row = &mut t[r];
        for k in 0..n {
            let (pos, neg) = var_cols[k];
            row[pos] = c.coeffs[k].clone();
            if let Some(neg) = neg {
                row[neg] = -c.coeffs[k].clone();
            }
        }
        if let Some(s) = slack_of[r] {
            row[s] = match c.rel {
                Relation::Le => Rational::one(),
                _ => -Rational::one(),
            };
        }
        row[cols] = c.rhs.clone();
        if c.rhs.is_negative() {
            flip[r] = true;
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
        row[structural + r] = Rational::one();
    }
    let mut tab = Tableau { t, basis: (structural..cols).collect(), cols };

    // Phase 1: maximise minus the sum of artificials.
    let mut cost1 = vec![Rational::zero(); cols];
    for c in cost1.iter_mut().skip(structural) {
        *c = -Rational::one();
    }
    if let Step::Unbounded = tab.run(&cost1, cols) {
        unreachable!("phase one is bounded by zero");
    }
    if (0..m).any(|r| tab.basis[r] >= structural && !tab.rhs(r).is_zero()) {
        return Ok(LpOutcome::Infeasible);
    }
    // Drive zero-valued artificials out of the basis where possible; rows where
    // that fails are redundant and stay inert.
    for r in 0..m {
        if tab.basis[r] >= structural {
            if let Some(j) = (0..structural).find(|&j| !tab.t[r][j].is_zero()) {
                tab.pivot(r, j);
            }
        }
    }

    let mut cost2 = vec![Rational::zero(); cols];
    for k in 0..n {
        let (pos, neg) = var_cols[k];
        cost2[pos] = lp.objective[k].clone();
        if let Some(neg) = neg {
            cost2[neg] = -lp.objective[k].clone();
        }
    }
    if let Step::Unbounded = tab.run(&cost2, structural) {
        return Ok(LpOutcome::Unbounded);
    }

    let mut x_std = vec![Rational::zero(); cols];
    for (r, &b) in tab.basis.iter().enumerate() {
        x_std[b] = tab.rhs(r).clone();
    }
    let point: Vec<Rational> = var_cols
        .iter()
        .map(|&(pos, neg)| match neg {
            Some(neg) => &x_std[pos] - &x_std[neg],
            None => x_std[pos].clone(),
        })
        .collect();
    let value = dot(&lp.objective, &point);

    // The artificial columns of the final tableau hold B^-1, so y = c_B B^-1.
    let dual: Vec<Rational> = (0..m)
        .map(|r| {
            let mut y = Rational::zero();
            for (k, &b) in tab.basis.iter().enumerate() {
                if !cost2[b].is_zero() {
                    y += &cost2[b] * &tab.t[k][structural + r];
                }
            }
            if flip[r] {
                -y
            } else {
                y
            }
        })
        .collect();

    assert!(
        certificate_holds(lp, &value, &point, &dual),
        "simplex optimality certificate failed"
    );
    CERTIFIED.fetch_add(1, Ordering::Relaxed);
    Ok(LpOutcome::Optimal { value, point, dual })
}

/// Maximum and minimum of `form · x` over the feasible region of `region`;
/// `None` when the region is empty.
pub fn max_and_min(region: &LinearProgram, form: &[Rational]) -> Result<Option<(Rational, Rational)>> {
    let hi = solve(&region.with_objective(form.to_vec()))?;
    let lo = solve(&region.with_objective(form.iter().map(|v| -v.clone()).collect()))?;
    match (hi, lo) {
        (LpOutcome::Infeasible, _) | (_, LpOutcome::Infeasible) => Ok(None),
        (LpOutcome::Optimal { value: a, .. }, LpOutcome::Optimal { value: b, .. }) => Ok(Some((a, -b))),
        _ => Err(Error::MalformedLp("linear form unbounded over the region".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn simplex_corner() {
        let mut lp = LinearProgram::nonneg(2);
        lp.objective = ints(&[1, 0]);
        lp.push(ints(&[1, 1]), Relation::Eq, int(1));
        let out = solve(&lp).unwrap();
        assert_eq!(out.value(), Some(&int(1)));
        assert_eq!(out.point().unwrap(), &ints(&[1, 0])[..]);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::nonneg(1);
        lp.objective = ints(&[1]);
        lp.push(ints(&[1]), Relation::Ge, int(2));
        lp.push(ints(&[1]), Relation::Le, int(1));
        assert_eq!(solve(&lp).unwrap(), LpOutcome::Infeasible);

        let mut lp = LinearProgram::nonneg(2);
        lp.objective = ints(&[1, 1]);
        lp.push(ints(&[1, -1]), Relation::Le, int(1));
        assert_eq!(solve(&lp).unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn free_variables_and_negative_rhs() {
        // max -x - y  s.t. x + y >= -3, x free, y >= 0  -> x = -3, y = 0.
        let lp = LinearProgram {
            objective: ints(&[-1, -1]),
            constraints: vec![Constraint { coeffs: ints(&[1, 1]), rel: Relation::Ge, rhs: int(-3) }],
            nonneg: vec![false, true],
        };
        match solve(&lp).unwrap() {
            LpOutcome::Optimal { value, point, dual } => {
                assert_eq!(value, int(3));
                assert_eq!(point, ints(&[-3, 0]));
                assert_eq!(dual, ints(&[-1]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::nonneg(2);
        lp.objective = ints(&[2, 1]);
        lp.push(ints(&[1, 1]), Relation::Eq, int(1));
        lp.push(ints(&[2, 2]), Relation::Eq, int(2));
        let out = solve(&lp).unwrap();
        assert_eq!(out.value(), Some(&int(2)));
    }

    #[test]
    fn malformed_rows_are_rejected() {
        let mut lp = LinearProgram::nonneg(2);
        lp.push(ints(&[1]), Relation::Le, int(1));
        assert!(matches!(solve(&lp), Err(Error::MalformedLp(_))));
    }

    #[test]
    fn mixed_threat_program_for_no_best_response() {
        // Maximise the weight on c1 while a2 remains a best response.
        let g = crate::games::no_best_response();
        let mut lp = LinearProgram::nonneg(3);
        lp.objective = ints(&[0, 0, 1]);
        lp.push(ints(&[1, 1, 1]), Relation::Eq, int(1));
        let row: Vec<Rational> = (0..3).map(|i| g.u2(i, 0) - g.u2(i, 1)).collect();
        lp.push(row, Relation::Ge, int(0));
        let out = solve(&lp).unwrap();
        assert_eq!(out.value(), Some(&ratio(1, 2)));
        assert_eq!(out.point().unwrap(), &[ratio(1, 2), int(0), ratio(1, 2)][..]);
    }

    #[test]
    fn bounds_of_a_linear_form() {
        let g = crate::games::none_to_new_ne();
        let mut simplex = LinearProgram::nonneg(2);
        simplex.push(ints(&[1, 1]), Relation::Eq, int(1));
        let form: Vec<Rational> = (0..2).map(|i| g.u2(i, 0).clone()).collect();
        assert_eq!(max_and_min(&simplex, &form).unwrap(), Some((int(4), int(0))));
        assert_eq!(max_and_min(&simplex, &ints(&[7, 7])).unwrap(), Some((int(7), int(7))));
    }
}
