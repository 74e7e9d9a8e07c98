//! Stage games, strategies and best-response checks.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }
}

/// Which players may randomise. `Mp` lets player 1 mix against a pure player
/// 2; `Pm` is the mirror image and is always evaluated on the transposed game.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Pp,
    Mp,
    Pm,
    Mm,
}

impl Regime {
    pub const ALL: [Regime; 4] = [Regime::Pp, Regime::Mp, Regime::Pm, Regime::Mm];

    pub fn may_mix(self, who: Player) -> bool {
        matches!(
            (self, who),
            (Regime::Mm, _) | (Regime::Mp, Player::One) | (Regime::Pm, Player::Two)
        )
    }

    /// The regime seen from the transposed game.
    pub fn transposed(self) -> Regime {
        match self {
            Regime::Mp => Regime::Pm,
            Regime::Pm => Regime::Mp,
            r => r,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Regime::Pp => "pp",
            Regime::Mp => "mp",
            Regime::Pm => "pm",
            Regime::Mm => "mm",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Regime {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "pp" => Ok(Regime::Pp),
            "mp" => Ok(Regime::Mp),
            "pm" => Ok(Regime::Pm),
            "mm" => Ok(Regime::Mm),
            other => Err(format!("unknown regime {other:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MixedStrategy {
    probs: Vec<Rational>,
}

impl MixedStrategy {
    pub fn new(probs: Vec<Rational>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Input("empty strategy".into()));
        }
        if probs.iter().any(|p| p.is_negative()) {
            return Err(Error::Input("negative probability".into()));
        }
        let total: Rational = probs.iter().sum();
        if !total.is_one() {
            return Err(Error::Input(format!(
                "probabilities sum to {}",
                crate::rational::render(&total)
            )));
        }
        Ok(MixedStrategy { probs })
    }

    pub fn pure(n: usize, action: usize) -> Self {
        assert!(action < n, "action {action} out of range for {n} actions");
        let probs = (0..n)
            .map(|k| if k == action { Rational::one() } else { Rational::zero() })
            .collect();
        MixedStrategy { probs }
    }

    /// Mixture of two actions with weight `w` on `a` and `1 - w` on `b`.
    pub fn mix2(n: usize, a: usize, b: usize, w: &Rational) -> Self {
        let mut probs = vec![Rational::zero(); n];
        probs[a] += w;
        probs[b] += Rational::one() - w;
        MixedStrategy { probs }
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.probs.len())
            .filter(|&k| self.probs[k].is_positive())
            .collect()
    }

    pub fn as_pure(&self) -> Option<usize> {
        match self.support().as_slice() {
            [a] => Some(*a),
            _ => None,
        }
    }

    pub fn prob(&self, k: usize) -> &Rational {
        &self.probs[k]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile {
    pub s1: MixedStrategy,
    pub s2: MixedStrategy,
}

impl Profile {
    pub fn new(s1: MixedStrategy, s2: MixedStrategy) -> Self {
        Profile { s1, s2 }
    }

    pub fn pure(g: &StageGame, row: usize, col: usize) -> Self {
        Profile {
            s1: MixedStrategy::pure(g.rows(), row),
            s2: MixedStrategy::pure(g.cols(), col),
        }
    }

    pub fn strategy(&self, who: Player) -> &MixedStrategy {
        match who {
            Player::One => &self.s1,
            Player::Two => &self.s2,
        }
    }

    pub fn transposed(&self) -> Profile {
        Profile {
            s1: self.s2.clone(),
            s2: self.s1.clone(),
        }
    }

    pub fn as_pure(&self) -> Option<(usize, usize)> {
        Some((self.s1.as_pure()?, self.s2.as_pure()?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageGame {
    u1: Vec<Vec<Rational>>,
    u2: Vec<Vec<Rational>>,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
}

impl StageGame {
    pub fn new(u1: Vec<Vec<Rational>>, u2: Vec<Vec<Rational>>) -> Result<Self> {
        let rows = u1.len();
        let cols = u1.first().map_or(0, Vec::len);
        let rl = (0..rows).map(|i| format!("r{i}")).collect();
        let cl = (0..cols).map(|j| format!("c{j}")).collect();
        Self::with_labels(u1, u2, rl, cl)
    }

    pub fn with_labels(
        u1: Vec<Vec<Rational>>,
        u2: Vec<Vec<Rational>>,
        row_labels: Vec<String>,
        col_labels: Vec<String>,
    ) -> Result<Self> {
        let rows = u1.len();
        if rows == 0 {
            return Err(Error::Dimension("game needs at least one row".into()));
        }
        let cols = u1[0].len();
        if cols == 0 {
            return Err(Error::Dimension("game needs at least one column".into()));
        }
        if u2.len() != rows {
            return Err(Error::Dimension(format!(
                "u1 has {rows} rows but u2 has {}",
                u2.len()
            )));
        }
        for (k, row) in u1.iter().chain(u2.iter()).enumerate() {
            if row.len() != cols {
                let which = if k < rows { "u1" } else { "u2" };
                return Err(Error::Dimension(format!(
                    "{which} row {} has {} entries, expected {cols}",
                    k % rows,
                    row.len()
                )));
            }
        }
        if row_labels.len() != rows || col_labels.len() != cols {
            return Err(Error::Dimension(format!(
                "{} row labels and {} column labels for a {rows}x{cols} game",
                row_labels.len(),
                col_labels.len()
            )));
        }
        Ok(StageGame { u1, u2, row_labels, col_labels })
    }

    /// Builds a game from integer payoff pairs `cells[i][j] = (u1, u2)`.
    pub fn from_ints(cells: &[&[(i64, i64)]]) -> Self {
        let u1 = cells
            .iter()
            .map(|r| r.iter().map(|c| int(c.0)).collect())
            .collect();
        let u2 = cells
            .iter()
            .map(|r| r.iter().map(|c| int(c.1)).collect())
            .collect();
        StageGame::new(u1, u2).expect("well-formed literal game")
    }

    pub fn relabel(mut self, rows: &[&str], cols: &[&str]) -> Self {
        assert_eq!(rows.len(), self.rows());
        assert_eq!(cols.len(), self.cols());
        self.row_labels = rows.iter().map(|s| s.to_string()).collect();
        self.col_labels = cols.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn rows(&self) -> usize {
        self.u1.len()
    }

    pub fn cols(&self) -> usize {
        self.u1[0].len()
    }

    pub fn actions(&self, who: Player) -> usize {
        match who {
            Player::One => self.rows(),
            Player::Two => self.cols(),
        }
    }

    pub fn u(&self, who: Player) -> &[Vec<Rational>] {
        match who {
            Player::One => &self.u1,
            Player::Two => &self.u2,
        }
    }

    pub fn u1(&self, i: usize, j: usize) -> &Rational {
        &self.u1[i][j]
    }

    pub fn u2(&self, i: usize, j: usize) -> &Rational {
        &self.u2[i][j]
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    /// Swaps the players: the new row player is the old column player.
    pub fn transpose(&self) -> StageGame {
        let flip = |m: &Vec<Vec<Rational>>| -> Vec<Vec<Rational>> {
            (0..self.cols())
                .map(|j| (0..self.rows()).map(|i| m[i][j].clone()).collect())
                .collect()
        };
        StageGame {
            u1: flip(&self.u2),
            u2: flip(&self.u1),
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
        }
    }

    fn check_dims(&self, p: &Profile) -> Result<()> {
        if p.s1.len() != self.rows() || p.s2.len() != self.cols() {
            return Err(Error::Dimension(format!(
                "profile is {}x{}, game is {}x{}",
                p.s1.len(),
                p.s2.len(),
                self.rows(),
                self.cols()
            )));
        }
        Ok(())
    }

    pub fn expected_payoff(&self, who: Player, p: &Profile) -> Result<Rational> {
        self.check_dims(p)?;
        Ok(self.payoff(who, p))
    }

    pub(crate) fn payoff(&self, who: Player, p: &Profile) -> Rational {
        let m = self.u(who);
        let mut total = Rational::zero();
        for i in p.s1.support() {
            for j in p.s2.support() {
                total += p.s1.prob(i) * p.s2.prob(j) * &m[i][j];
            }
        }
        total
    }

    /// Payoff to `who` from each of their pure actions against the opponent's
    /// strategy in `p`.
    pub(crate) fn pure_payoffs(&self, who: Player, p: &Profile) -> Vec<Rational> {
        match who {
            Player::One => (0..self.rows())
                .map(|i| {
                    p.s2.support()
                        .into_iter()
                        .map(|j| p.s2.prob(j) * &self.u1[i][j])
                        .sum()
                })
                .collect(),
            Player::Two => (0..self.cols())
                .map(|j| {
                    p.s1.support()
                        .into_iter()
                        .map(|i| p.s1.prob(i) * &self.u2[i][j])
                        .sum()
                })
                .collect(),
        }
    }

    // A mixed deviation earns a convex combination of pure deviations, so the
    // best pure deviation bounds every deviation.
    pub fn is_best_response(&self, who: Player, p: &Profile) -> Result<bool> {
        self.check_dims(p)?;
        Ok(self.best_response_unchecked(who, p))
    }

    pub(crate) fn best_response_unchecked(&self, who: Player, p: &Profile) -> bool {
        let best = self
            .pure_payoffs(who, p)
            .into_iter()
            .max()
            .expect("at least one action");
        self.payoff(who, p) == best
    }

    pub fn is_stage_nash(&self, p: &Profile, regime: Regime) -> Result<bool> {
        self.check_dims(p)?;
        check_regime(p, regime)?;
        Ok(self.best_response_unchecked(Player::One, p)
            && self.best_response_unchecked(Player::Two, p))
    }

    pub fn is_pure_nash(&self, i: usize, j: usize) -> bool {
        let col_max = (0..self.rows()).map(|k| &self.u1[k][j]).max().unwrap();
        let row_max = (0..self.cols()).map(|k| &self.u2[i][k]).max().unwrap();
        &self.u1[i][j] == col_max && &self.u2[i][j] == row_max
    }

    /// Rows maximising u1 in column `j`.
    pub fn best_rows(&self, j: usize) -> Vec<usize> {
        let m = (0..self.rows()).map(|i| &self.u1[i][j]).max().unwrap();
        (0..self.rows()).filter(|&i| &self.u1[i][j] == m).collect()
    }

    /// Columns maximising u2 in row `i`.
    pub fn best_cols(&self, i: usize) -> Vec<usize> {
        let m = (0..self.cols()).map(|j| &self.u2[i][j]).max().unwrap();
        (0..self.cols()).filter(|&j| &self.u2[i][j] == m).collect()
    }
}

pub(crate) fn check_regime(p: &Profile, regime: Regime) -> Result<()> {
    for who in [Player::One, Player::Two] {
        if !regime.may_mix(who) && p.strategy(who).as_pure().is_none() {
            return Err(Error::Regime(format!(
                "player {} must play a pure action in regime {regime}",
                if who == Player::One { 1 } else { 2 }
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games;
    use crate::rational::ratio;

    #[test]
    fn payoff_of_pure_and_mixed_profiles() {
        let g = games::off_nash_threat();
        let p = Profile::pure(&g, 1, 0);
        assert_eq!(g.expected_payoff(Player::One, &p).unwrap(), int(2));

        let g = games::no_best_response();
        let s1 = MixedStrategy::new(vec![ratio(9, 10), int(0), ratio(1, 10)]).unwrap();
        let p = Profile::new(s1, MixedStrategy::pure(2, 0));
        assert_eq!(g.expected_payoff(Player::One, &p).unwrap(), ratio(14, 5));
    }

    #[test]
    fn best_responses_in_the_threat_game() {
        let g = games::off_nash_threat();
        let p = Profile::pure(&g, 1, 0);
        assert!(g.is_best_response(Player::Two, &p).unwrap());
        assert!(!g.is_best_response(Player::One, &p).unwrap());
        assert!(g.is_stage_nash(&Profile::pure(&g, 0, 0), Regime::Pp).unwrap());
    }

    #[test]
    fn regime_rejects_mixed_slot() {
        let g = games::off_nash_threat();
        let half = MixedStrategy::mix2(2, 0, 1, &ratio(1, 2));
        let p = Profile::new(half.clone(), MixedStrategy::pure(2, 0));
        assert!(matches!(g.is_stage_nash(&p, Regime::Pp), Err(Error::Regime(_))));
        assert!(g.is_stage_nash(&p, Regime::Mp).is_ok());
        assert!(matches!(g.is_stage_nash(&p, Regime::Pm), Err(Error::Regime(_))));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let g = games::off_nash_threat();
        let p = Profile::new(MixedStrategy::pure(3, 0), MixedStrategy::pure(2, 0));
        assert!(matches!(g.expected_payoff(Player::One, &p), Err(Error::Dimension(_))));
        assert!(StageGame::new(vec![vec![int(1)]], vec![vec![int(1), int(2)]]).is_err());
    }

    #[test]
    fn one_by_one_game() {
        let g = StageGame::from_ints(&[&[(5, -1)]]);
        let p = Profile::pure(&g, 0, 0);
        assert!(g.is_best_response(Player::One, &p).unwrap());
        let t = g.transpose();
        assert_eq!(t.u1(0, 0), &int(-1));
        assert_eq!(t.u2(0, 0), &int(5));
    }

    #[test]
    fn transpose_is_an_involution_and_maps_flipped_fixture() {
        let g = games::none_to_new_ne();
        assert_eq!(g.transpose().transpose(), g);
        let t = g.transpose();
        let flip = games::none_to_new_ne_flip();
        for i in 0..t.rows() {
            for j in 0..t.cols() {
                assert_eq!(t.u1(i, j), flip.u1(i, j));
                assert_eq!(t.u2(i, j), flip.u2(i, j));
            }
        }
    }
}
