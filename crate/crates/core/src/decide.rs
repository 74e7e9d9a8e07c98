//! Decision procedures: can some subgame-perfect equilibrium of some finite
//! repetition play a non-equilibrium stage profile, per regime?

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::game::{MixedStrategy, Player, Profile, Regime, StageGame};
use crate::lp::{self, LinearProgram, LpOutcome, Relation};
use crate::nash::{self, best_response_region, Count, VSummary};
use crate::rational::{gcd_all, Rational};

/// Data that certifies a positive verdict. Indices refer to the game the
/// verdict was computed for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// A pure profile that is not a stage equilibrium.
    OffNash { row: usize, col: usize },
    /// `threatened` is not best-responding at `(row, col)` (it could switch to
    /// `better`), while the other player is.
    PureThreat { threatened: Player, row: usize, col: usize, better: usize },
    /// `threatened` mixes with `strategy` against the opponent's pure `pure`
    /// action, to which `pure` is a best response; `bad` is a support action
    /// that is not a best response.
    MixedThreat { threatened: Player, strategy: MixedStrategy, pure: usize, bad: usize },
    /// `threatened` mixes against the opponent's pure `pure` action with every
    /// support action congruent to `anchor` modulo the gcd of the difference
    /// set; `better` is a best response to `pure`. Only arises when exactly
    /// one player may mix.
    Congruent { threatened: Player, strategy: MixedStrategy, pure: usize, better: usize, anchor: usize },
}

impl Evidence {
    /// The same evidence expressed for the transposed game.
    pub fn transposed(&self) -> Evidence {
        match self.clone() {
            Evidence::OffNash { row, col } => Evidence::OffNash { row: col, col: row },
            Evidence::PureThreat { threatened, row, col, better } => Evidence::PureThreat {
                threatened: threatened.other(),
                row: col,
                col: row,
                better,
            },
            Evidence::MixedThreat { threatened, strategy, pure, bad } => Evidence::MixedThreat {
                threatened: threatened.other(),
                strategy,
                pure,
                bad,
            },
            Evidence::Congruent { threatened, strategy, pure, better, anchor } => Evidence::Congruent {
                threatened: threatened.other(),
                strategy,
                pure,
                better,
                anchor,
            },
        }
    }

    /// Checks the evidence against the game by direct payoff comparisons.
    pub fn holds(&self, g: &StageGame) -> bool {
        match self {
            Evidence::OffNash { row, col } => !g.is_pure_nash(*row, *col),
            Evidence::PureThreat { threatened: Player::One, row, col, better } => {
                g.u1(*row, *col) < g.u1(*better, *col) && g.best_cols(*row).contains(col)
            }
            Evidence::PureThreat { threatened: Player::Two, row, col, better } => {
                g.u2(*row, *col) < g.u2(*row, *better) && g.best_rows(*col).contains(row)
            }
            Evidence::MixedThreat { threatened, strategy, pure, bad } => {
                let g = oriented(g, *threatened);
                if strategy.len() != g.rows() || *pure >= g.cols() || strategy.prob(*bad).is_zero() {
                    return false;
                }
                let p = Profile::new(strategy.clone(), MixedStrategy::pure(g.cols(), *pure));
                g.best_response_unchecked(Player::Two, &p) && !g.best_rows(*pure).contains(bad)
            }
            Evidence::Congruent { threatened, strategy, pure, better, anchor } => {
                let g = oriented(g, *threatened);
                if strategy.len() != g.rows() || *pure >= g.cols() {
                    return false;
                }
                let p = Profile::new(strategy.clone(), MixedStrategy::pure(g.cols(), *pure));
                g.best_response_unchecked(Player::Two, &p)
                    && !g.best_response_unchecked(Player::One, &p)
                    && g.best_rows(*pure).contains(better)
                    && strategy.prob(*anchor).is_positive()
            }
        }
    }
}

/// The game as seen by `who` in the row player's seat.
pub(crate) fn oriented(g: &StageGame, who: Player) -> StageGame {
    match who {
        Player::One => g.clone(),
        Player::Two => g.transpose(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub regime: Regime,
    pub in_ls: bool,
    pub case_id: Option<u8>,
    pub evidence: Option<Evidence>,
}

impl Verdict {
    fn no(regime: Regime) -> Self {
        Verdict { regime, in_ls: false, case_id: None, evidence: None }
    }

    fn yes(regime: Regime, case: u8, evidence: Evidence) -> Self {
        Verdict { regime, in_ls: true, case_id: Some(case), evidence: Some(evidence) }
    }

    /// Verdict for the transposed game with the players' roles exchanged.
    /// Cases 2 and 3 swap because they are mirror images in every regime
    /// except MP, whose transpose is PM.
    pub fn transposed(&self) -> Verdict {
        let case_id = match (self.regime, self.case_id) {
            (Regime::Pp | Regime::Mm, Some(2)) => Some(3),
            (Regime::Pp | Regime::Mm, Some(3)) => Some(2),
            (_, c) => c,
        };
        Verdict {
            regime: self.regime.transposed(),
            in_ls: self.in_ls,
            case_id,
            evidence: self.evidence.as_ref().map(Evidence::transposed),
        }
    }
}

/// Some column of u1 or some row of u2 is non-constant, i.e. some pure
/// profile is not a stage equilibrium.
pub fn exist_off(g: &StageGame) -> bool {
    first_off_nash(g).is_some()
}

fn first_off_nash(g: &StageGame) -> Option<(usize, usize)> {
    (0..g.rows())
        .flat_map(|i| (0..g.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| !g.is_pure_nash(i, j))
}

/// A mixed strategy for player 1 and a pure best reply `j` to it, where the
/// mixed strategy puts weight on the row `i_bad` that is not a best response
/// to `j`. Each candidate `(j, i_bad)` is one linear program.
pub fn exist_off_2best(g: &StageGame) -> Option<(MixedStrategy, usize, usize)> {
    let all: Vec<usize> = (0..g.rows()).collect();
    for j in 0..g.cols() {
        let best = g.best_rows(j);
        let region = best_response_region(g, j, &all);
        for i in (0..g.rows()).filter(|i| !best.contains(i)) {
            let mut c = vec![Rational::zero(); g.rows()];
            c[i] = Rational::one();
            if let LpOutcome::Optimal { value, point, .. } =
                lp::solve(&region.with_objective(c)).expect("well-formed region")
            {
                if value.is_positive() {
                    return Some((MixedStrategy::new(point).expect("vertex of the simplex"), j, i));
                }
            }
        }
    }
    None
}

pub fn exist_off_1best(g: &StageGame) -> Option<(MixedStrategy, usize, usize)> {
    exist_off_2best(&g.transpose())
}

/// First `(row, col, better)` with `col` a best reply to `row` and `row`
/// strictly improvable to `better` against `col`. Scans columns first.
pub(crate) fn pure_threat_scan(g: &StageGame) -> Option<(usize, usize, usize)> {
    for j in 0..g.cols() {
        let best = g.best_rows(j);
        for i in (0..g.rows()).filter(|i| !best.contains(i)) {
            if g.best_cols(i).contains(&j) {
                return Some((i, j, best[0]));
            }
        }
    }
    None
}

fn player_two_threat(g: &StageGame) -> Option<Evidence> {
    let (col, row, better) = pure_threat_scan(&g.transpose())?;
    Some(Evidence::PureThreat { threatened: Player::Two, row, col, better })
}

/// Pure–pure regime.
pub fn thm1_decide(g: &StageGame) -> Verdict {
    let v = nash::v_summary(g, Regime::Pp);
    pp_with_summary(g, &v)
}

fn pp_with_summary(g: &StageGame, v: &VSummary) -> Verdict {
    let r = Regime::Pp;
    match (v.count(Player::One), v.count(Player::Two)) {
        (Count::Many, Count::Many) => match first_off_nash(g) {
            Some((row, col)) => Verdict::yes(r, 1, Evidence::OffNash { row, col }),
            None => Verdict::no(r),
        },
        (Count::Many, Count::One) => match pure_threat_scan(g) {
            Some((row, col, better)) => Verdict::yes(
                r,
                2,
                Evidence::PureThreat { threatened: Player::One, row, col, better },
            ),
            None => Verdict::no(r),
        },
        (Count::One, Count::Many) => match player_two_threat(g) {
            Some(e) => Verdict::yes(r, 3, e),
            None => Verdict::no(r),
        },
        _ => Verdict::no(r),
    }
}

/// Mixed–mixed regime.
pub fn thm2_decide(g: &StageGame) -> Verdict {
    let r = Regime::Mm;
    let v = nash::v_summary(g, r);
    match (v.v1_unique, v.v2_unique) {
        (true, true) => Verdict::no(r),
        (false, false) => match first_off_nash(g) {
            Some((row, col)) => Verdict::yes(r, 1, Evidence::OffNash { row, col }),
            None => Verdict::no(r),
        },
        (false, true) => match exist_off_2best(g) {
            Some((strategy, pure, bad)) => Verdict::yes(
                r,
                2,
                Evidence::MixedThreat { threatened: Player::One, strategy, pure, bad },
            ),
            None => Verdict::no(r),
        },
        (true, false) => match exist_off_1best(g) {
            Some((strategy, pure, bad)) => Verdict::yes(
                r,
                3,
                Evidence::MixedThreat { threatened: Player::Two, strategy, pure, bad },
            ),
            None => Verdict::no(r),
        },
    }
}

/// `{v - v' : v, v' in V1}` for the mixed–pure regime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceSet {
    pub values: Vec<Rational>,
    pub gcd: Option<Rational>,
}

impl DifferenceSet {
    pub fn from_values(v1: &[Rational]) -> Self {
        let mut set = BTreeSet::new();
        for a in v1 {
            for b in v1 {
                set.insert(a - b);
            }
        }
        let values: Vec<Rational> = set.into_iter().collect();
        let gcd = gcd_all(&values);
        DifferenceSet { values, gcd }
    }
}

/// Whether `x` is a finite sum (repetition allowed) of elements of `d`.
/// The set is symmetric, so such sums form the group `gcd * Z`.
pub fn subset_sum_reachable(x: &Rational, d: &DifferenceSet) -> bool {
    match &d.gcd {
        None => x.is_zero(),
        Some(g) => (x / g).is_integer(),
    }
}

/// Mixed–pure regime (player 1 may mix, player 2 plays pure actions).
pub fn thm3_decide(g: &StageGame) -> Verdict {
    let v = nash::v_summary(g, Regime::Mp);
    mp_with_summary(g, &v)
}

fn mp_with_summary(g: &StageGame, v: &VSummary) -> Verdict {
    let r = Regime::Mp;
    match (v.count(Player::One), v.count(Player::Two)) {
        (Count::Many, Count::Many) => match first_off_nash(g) {
            Some((row, col)) => Verdict::yes(r, 1, Evidence::OffNash { row, col }),
            None => Verdict::no(r),
        },
        (Count::One, Count::Many) => match player_two_threat(g) {
            Some(e) => Verdict::yes(r, 3, e),
            None => Verdict::no(r),
        },
        (Count::Many, Count::One) => match congruent_threat(g, &DifferenceSet::from_values(&v.v1_values)) {
            Some(e) => Verdict::yes(r, 2, e),
            None => Verdict::no(r),
        },
        _ => Verdict::no(r),
    }
}

fn congruent_threat(g: &StageGame, d: &DifferenceSet) -> Option<Evidence> {
    // Pure candidates first: they give the shortest witnesses.
    if let Some((row, col, better)) = pure_threat_scan(g) {
        return Some(Evidence::Congruent {
            threatened: Player::One,
            strategy: MixedStrategy::pure(g.rows(), row),
            pure: col,
            better,
            anchor: row,
        });
    }
    let m = g.rows();
    for col in 0..g.cols() {
        let best = g.best_rows(col);
        if best.len() == m {
            continue;
        }
        for anchor in 0..m {
            let allowed: Vec<usize> = (0..m)
                .filter(|&a| subset_sum_reachable(&(g.u1(anchor, col) - g.u1(a, col)), d))
                .collect();
            if allowed.iter().all(|a| best.contains(a)) {
                continue;
            }
            // Variables: x_0..x_{m-1}, t. Maximise t with t <= x_anchor and
            // t <= total weight on suboptimal rows.
            let region = best_response_region(g, col, &allowed);
            let mut lp = LinearProgram::nonneg(m + 1);
            for c in &region.constraints {
                let mut coeffs = c.coeffs.clone();
                coeffs.push(Rational::zero());
                lp.push(coeffs, c.rel, c.rhs.clone());
            }
            let mut t_le_anchor = vec![Rational::zero(); m + 1];
            t_le_anchor[anchor] = -Rational::one();
            t_le_anchor[m] = Rational::one();
            lp.push(t_le_anchor, Relation::Le, Rational::zero());
            let mut t_le_bad: Vec<Rational> = (0..m)
                .map(|i| if best.contains(&i) { Rational::zero() } else { -Rational::one() })
                .collect();
            t_le_bad.push(Rational::one());
            lp.push(t_le_bad, Relation::Le, Rational::zero());
            lp.objective[m] = Rational::one();
            if let LpOutcome::Optimal { value, mut point, .. } = lp::solve(&lp).expect("well-formed program") {
                if value.is_positive() {
                    point.pop();
                    return Some(Evidence::Congruent {
                        threatened: Player::One,
                        strategy: MixedStrategy::new(point).expect("vertex of the simplex"),
                        pure: col,
                        better: best[0],
                        anchor,
                    });
                }
            }
        }
    }
    None
}

/// The mirror regime: player 2 mixes. Evaluated on the transposed game.
pub fn pm_decide(g: &StageGame) -> Verdict {
    thm3_decide(&g.transpose()).transposed()
}

pub fn decide(g: &StageGame, regime: Regime) -> Verdict {
    match regime {
        Regime::Pp => thm1_decide(g),
        Regime::Mp => thm3_decide(g),
        Regime::Pm => pm_decide(g),
        Regime::Mm => thm2_decide(g),
    }
}

/// Per-regime verdicts plus, when the game separates two regimes, which case
/// of the characterisation explains the separation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaLabel {
    pub pp_in_ls: bool,
    pub mp_in_ls: bool,
    pub pm_in_ls: bool,
    pub mm_in_ls: bool,
    /// In the MP set but not the PP set.
    pub pp_to_mp: Option<u8>,
    /// In the MM set but not the MP set.
    pub mp_to_mm: Option<u8>,
    /// In the MM set but not the PP set.
    pub pp_to_mm: Option<u8>,
}

fn separation_case(v: &VSummary) -> u8 {
    match (v.count(Player::One), v.count(Player::Two)) {
        (Count::Zero, Count::Zero) => 1,
        (Count::One, Count::One) => 2,
        (Count::Many, Count::One) => 3,
        (Count::One, Count::Many) => 4,
        other => panic!("no separation case for value counts {other:?}"),
    }
}

pub fn classify_all(g: &StageGame) -> DeltaLabel {
    let pp = thm1_decide(g).in_ls;
    let mp = thm3_decide(g).in_ls;
    let pm = pm_decide(g).in_ls;
    let mm = thm2_decide(g).in_ls;
    assert!(!pp || (mp && pm), "inclusion violated: pure-pure positive but a mixed-pure regime negative");
    assert!(!(mp || pm) || mm, "inclusion violated: mixed-pure positive but mixed-mixed negative");

    let vpp = nash::v_summary(g, Regime::Pp);
    let vmp = nash::v_summary(g, Regime::Mp);
    let pp_to_mp = (!pp && mp).then(|| separation_case(&vpp));
    let mp_to_mm = (!mp && mm).then(|| separation_case(&vmp));
    let pp_to_mm = (!pp && mm).then(|| separation_case(&vpp));
    if let Some(c) = pp_to_mp {
        assert!(c <= 3, "pure values (1, many) cannot separate pure from mixed-pure");
    }
    DeltaLabel { pp_in_ls: pp, mp_in_ls: mp, pm_in_ls: pm, mm_in_ls: mm, pp_to_mp, mp_to_mm, pp_to_mm }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games;
    use crate::rational::{int, ratio};

    #[test]
    fn off_nash_existence() {
        assert!(!exist_off(&games::all_profiles_nash()));
        assert!(exist_off(&games::off_nash_threat()));
        assert!(!exist_off(&StageGame::from_ints(&[&[(4, 2)]])));
    }

    #[test]
    fn mixed_threats() {
        let (s, j, bad) = exist_off_2best(&games::no_best_response()).unwrap();
        assert_eq!((j, bad), (0, 2));
        assert_eq!(s.probs(), &[ratio(1, 2), int(0), ratio(1, 2)]);
        assert!(exist_off_2best(&games::all_profiles_nash()).is_none());
        let (s, j, bad) = exist_off_2best(&games::none_to_new_ne()).unwrap();
        assert_eq!((s.as_pure(), j, bad), (Some(1), 0, 1));
    }

    #[test]
    fn pure_pure_verdicts() {
        let v = thm1_decide(&games::off_nash_threat());
        assert!(v.in_ls);
        assert_eq!(v.case_id, Some(2));
        assert_eq!(
            v.evidence,
            Some(Evidence::PureThreat { threatened: Player::One, row: 1, col: 0, better: 0 })
        );
        assert!(!thm1_decide(&games::no_best_response()).in_ls);
        assert!(!thm1_decide(&games::none_to_new_ne()).in_ls);
    }

    #[test]
    fn mixed_mixed_and_mixed_pure_verdicts() {
        let v = thm2_decide(&games::no_multiset_sum());
        assert!(v.in_ls);
        assert_eq!(v.case_id, Some(2));
        assert!(!thm2_decide(&games::all_profiles_nash()).in_ls);

        let v = thm3_decide(&games::no_best_response());
        assert_eq!((v.in_ls, v.case_id), (true, Some(2)));
        assert!(!thm3_decide(&games::no_multiset_sum()).in_ls);
        let v = thm3_decide(&games::none_to_new_ne());
        assert_eq!((v.in_ls, v.case_id), (true, Some(2)));
        match v.evidence {
            Some(Evidence::Congruent { strategy, pure, .. }) => {
                assert_eq!(strategy.as_pure(), Some(1));
                assert_eq!(pure, 0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn difference_set_membership() {
        let d = DifferenceSet::from_values(&[int(2), int(3)]);
        assert_eq!(d.values, vec![int(-1), int(0), int(1)]);
        assert!(!subset_sum_reachable(&ratio(1, 2), &d));
        assert!(subset_sum_reachable(&int(-3), &d));
        assert!(subset_sum_reachable(&int(0), &DifferenceSet::from_values(&[int(5)])));
        assert!(!subset_sum_reachable(&int(1), &DifferenceSet::from_values(&[int(5)])));
    }

    #[test]
    fn constant_game_is_never_positive() {
        let g = games::by_name("constant", None).unwrap();
        let d = classify_all(&g);
        assert!(!d.pp_in_ls && !d.mp_in_ls && !d.pm_in_ls && !d.mm_in_ls);
    }

    #[test]
    fn separation_labels() {
        let d = classify_all(&games::none_to_new_ne());
        assert_eq!((d.pp_in_ls, d.mp_in_ls, d.mm_in_ls), (false, true, true));
        assert_eq!(d.pp_to_mp, Some(1));
        let d = classify_all(&games::no_multiset_sum());
        assert_eq!((d.pp_in_ls, d.mp_in_ls, d.mm_in_ls), (false, false, true));
        assert_eq!(d.mp_to_mm, Some(3));
        let d = classify_all(&games::no_best_response_flip());
        assert_eq!((d.pp_in_ls, d.mp_in_ls, d.mm_in_ls), (false, false, true));
        assert_eq!(d.mp_to_mm, Some(4));
    }

    #[test]
    fn evidence_checks_out() {
        for name in games::NAMES {
            let g = games::by_name(name, None).unwrap();
            for r in Regime::ALL {
                let v = decide(&g, r);
                if let Some(e) = &v.evidence {
                    assert!(e.holds(&g), "{name} {r}: {e:?}");
                }
            }
        }
    }
}
