//! Frozen results for the named reference games.

mod common;

use common::{q, z, Q};
use offnash::decide::{self, exist_off, exist_off_2best, subset_sum_reachable, thm1_decide, thm2_decide, thm3_decide, DifferenceSet};
use offnash::games;
use offnash::lp::{self, LinearProgram, LpOutcome, Relation};
use offnash::nash::{self, mixed_pure_components, pure_nash, Count};
use offnash::verify;
use offnash::witness::{self, build_witness, grim_trigger, DEFAULT_CAP};
use offnash::{classify_all, Evidence, MixedStrategy, Player, Profile, Regime, StageGame};

fn mixed(p: &[Q]) -> MixedStrategy {
    MixedStrategy::new(p.to_vec()).unwrap()
}

#[test]
fn payoffs_and_best_responses() {
    let g = games::off_nash_threat();
    let b1a2 = Profile::pure(&g, 1, 0);
    assert_eq!(g.expected_payoff(Player::One, &b1a2).unwrap(), z(2));
    assert!(!g.is_best_response(Player::One, &b1a2).unwrap());
    let p = Profile::new(mixed(&[q(1, 3), q(2, 3)]), mixed(&[q(1, 5), q(4, 5)]));
    assert!(g.is_best_response(Player::Two, &p).unwrap());
    assert!(g.is_stage_nash(&Profile::pure(&g, 0, 0), Regime::Pp).unwrap());

    let t7 = games::no_best_response();
    let p = Profile::new(mixed(&[q(9, 10), z(0), q(1, 10)]), MixedStrategy::pure(2, 0));
    assert_eq!(t7.expected_payoff(Player::One, &p).unwrap(), q(14, 5));

    let t4 = games::all_profiles_nash();
    for i in 0..2 {
        for j in 0..2 {
            assert!(t4.is_stage_nash(&Profile::pure(&t4, i, j), Regime::Mm).unwrap());
        }
    }
}

#[test]
fn transposes() {
    let t8 = games::none_to_new_ne();
    let t11 = games::none_to_new_ne_flip();
    let tr = t8.transpose();
    for who in [Player::One, Player::Two] {
        assert_eq!(tr.u(who), t11.u(who));
    }
    assert_eq!(tr.transpose(), t8);
    let one = StageGame::from_ints(&[&[(4, 9)]]).transpose();
    assert_eq!((one.u1(0, 0), one.u2(0, 0)), (&z(9), &z(4)));
}

#[test]
fn linear_programs() {
    let mut simple = LinearProgram::nonneg(2);
    simple.push(vec![z(1), z(1)], Relation::Eq, z(1));
    let out = lp::solve(&simple.with_objective(vec![z(1), z(0)])).unwrap();
    assert_eq!(out.value(), Some(&z(1)));
    assert_eq!(out.point(), Some(&[z(1), z(0)][..]));

    // Largest weight player 1 can put on c1 while a2 stays a best reply.
    let t7 = games::no_best_response();
    let region = nash::best_response_region(&t7, 0, &[0, 1, 2]);
    let out = lp::solve(&region.with_objective(vec![z(0), z(0), z(1)])).unwrap();
    assert_eq!(out.value(), Some(&q(1, 2)));
    let LpOutcome::Optimal { point, .. } = out else { unreachable!() };
    assert!(point[0] >= point[2]);

    let mut empty = LinearProgram::nonneg(1);
    empty.objective = vec![z(1)];
    empty.push(vec![z(1)], Relation::Ge, z(2));
    empty.push(vec![z(1)], Relation::Le, z(1));
    assert_eq!(lp::solve(&empty).unwrap(), LpOutcome::Infeasible);

    let t8 = games::none_to_new_ne();
    let u2_b = vec![z(3), z(3)];
    let b2 = nash::best_response_region(&t8, 1, &[0, 1]);
    assert_eq!(lp::max_and_min(&b2, &u2_b).unwrap(), Some((z(3), z(3))));
    let mut simplex = LinearProgram::nonneg(2);
    simplex.push(vec![z(1), z(1)], Relation::Eq, z(1));
    assert_eq!(lp::max_and_min(&simplex, &[z(0), z(4)]).unwrap(), Some((z(4), z(0))));
    assert_eq!(lp::max_and_min(&simplex, &[z(5), z(5)]).unwrap(), Some((z(5), z(5))));
}

#[test]
fn pure_equilibria() {
    assert_eq!(pure_nash(&games::off_nash_threat()), vec![(0, 0), (1, 1)]);
    assert_eq!(pure_nash(&games::no_best_response()), vec![(0, 0), (1, 0), (1, 1), (2, 1)]);
    assert!(pure_nash(&games::none_to_new_ne()).is_empty());
}

#[test]
fn mixed_pure_components_of_reference_games() {
    let comps = mixed_pure_components(&games::none_to_new_ne());
    let live: Vec<usize> = comps.iter().filter(|c| c.nonempty).map(|c| c.col).collect();
    assert_eq!(live, vec![1, 2]);
    for c in comps.iter().filter(|c| c.nonempty) {
        for (w, inside) in [(q(1, 4), true), (q(3, 4), true), (q(1, 2), true), (q(1, 5), false), (q(4, 5), false)] {
            let s = mixed(&[w.clone(), z(1) - w]);
            assert_eq!(c.contains(&s), inside);
        }
    }
    let v = nash::v_summary(&games::no_multiset_sum(), Regime::Mp);
    assert_eq!((v.v1_values.clone(), v.v2_values.clone()), (vec![z(2), z(3)], vec![z(2)]));
    let one = mixed_pure_components(&StageGame::from_ints(&[&[(5, 1)]]));
    assert_eq!(one.len(), 1);
    assert!(one[0].nonempty);
    assert_eq!(one[0].v1_value, z(5));
}

#[test]
fn extreme_equilibria_of_reference_games() {
    let ex = nash::extreme_equilibria_mm(&games::grim_cooperation());
    let mut pays: Vec<(Q, Q)> = ex.iter().map(|e| (e.pay1.clone(), e.pay2.clone())).collect();
    pays.sort();
    assert_eq!(pays, vec![(z(1), z(1)), (z(1), z(1)), (z(2), z(2))]);
    let half = mixed(&[z(0), q(1, 2), q(1, 2)]);
    assert!(ex.iter().any(|e| e.s1 == half && e.s2 == half));

    let v = nash::v_summary(&games::large_horizon(&z(1)), Regime::Mm);
    assert_eq!((v.min(Player::One), v.max(Player::One)), (Some(&z(2)), Some(&z(3))));
    assert_eq!(nash::extreme_equilibria_mm(&StageGame::from_ints(&[&[(0, 0)]])).len(), 1);
}

#[test]
fn value_summaries() {
    let v = nash::v_summary(&games::no_best_response(), Regime::Pp);
    assert_eq!((v.v1_values.clone(), v.v1_unique), (vec![z(2), z(3)], false));
    assert_eq!((v.v2_values.clone(), v.v2_unique), (vec![z(2)], true));
    let v = nash::v_summary(&games::new_ne(), Regime::Pp);
    assert!(v.v1_unique && v.v2_unique);
    let v = nash::v_summary(&games::new_ne(), Regime::Mp);
    assert_eq!((v.count(Player::One), v.count(Player::Two)), (Count::Many, Count::Many));
}

#[test]
fn decision_procedures() {
    assert!(!exist_off(&games::all_profiles_nash()));
    assert!(exist_off(&games::off_nash_threat()));
    assert!(!exist_off(&StageGame::from_ints(&[&[(1, 1)]])));

    let (s, j, bad) = exist_off_2best(&games::no_best_response()).unwrap();
    assert_eq!((j, bad), (0, 2));
    assert!(s.prob(2) > &z(0));
    assert!(exist_off_2best(&games::all_profiles_nash()).is_none());
    let (s, j, bad) = exist_off_2best(&games::none_to_new_ne()).unwrap();
    assert_eq!((s.as_pure(), j, bad), (Some(1), 0, 1));

    let v = thm1_decide(&games::off_nash_threat());
    assert_eq!((v.in_ls, v.case_id), (true, Some(2)));
    assert_eq!(v.evidence, Some(Evidence::PureThreat { threatened: Player::One, row: 1, col: 0, better: 0 }));
    assert!(!thm1_decide(&games::no_best_response()).in_ls);
    assert!(!thm1_decide(&games::none_to_new_ne()).in_ls);

    let v = thm2_decide(&games::no_multiset_sum());
    assert_eq!((v.in_ls, v.case_id), (true, Some(2)));
    assert!(!thm2_decide(&games::all_profiles_nash()).in_ls);

    let v = thm3_decide(&games::no_best_response());
    assert_eq!((v.in_ls, v.case_id), (true, Some(2)));
    assert!(!thm3_decide(&games::no_multiset_sum()).in_ls);
    let v = thm3_decide(&games::none_to_new_ne());
    assert_eq!((v.in_ls, v.case_id), (true, Some(2)));
    match v.evidence {
        Some(Evidence::Congruent { strategy, .. }) | Some(Evidence::MixedThreat { strategy, .. }) => {
            assert_eq!(strategy.as_pure(), Some(1))
        }
        other => panic!("unexpected evidence {other:?}"),
    }
}

#[test]
fn difference_sets() {
    let d = DifferenceSet::from_values(&[z(2), z(3)]);
    assert_eq!(d.values, vec![z(-1), z(0), z(1)]);
    assert!(subset_sum_reachable(&z(0), &d));
    assert!(!subset_sum_reachable(&q(1, 2), &d));
    assert!(subset_sum_reachable(&z(-3), &d));
    assert!(common::multiset_reachable(&z(-3), &d.values, 5));
    assert!(subset_sum_reachable(&z(0), &DifferenceSet::from_values(&[z(7)])));
}

/// Regime verdicts `(pp, mp, pm, mm)` and separation labels of the reference games.
#[test]
fn golden_classifications() {
    type Row = (&'static str, [bool; 4], Option<u8>, Option<u8>);
    let table: [Row; 11] = [
        ("off_nash_threat", [true, true, true, true], None, None),
        ("grim_cooperation", [true, true, true, true], None, None),
        ("all_profiles_nash", [false; 4], None, None),
        ("large_horizon", [false, true, false, true], Some(3), None),
        ("no_best_response", [false, true, false, true], Some(3), None),
        ("none_to_new_ne", [false, true, false, true], Some(1), None),
        ("new_ne", [false, true, false, true], Some(2), None),
        ("none_to_new_ne_flip", [false, false, true, true], None, Some(1)),
        ("new_ne_flip", [false, false, true, true], None, Some(2)),
        ("no_multiset_sum", [false, false, false, true], None, Some(3)),
        ("no_best_response_flip", [false, false, true, true], None, Some(4)),
    ];
    for (name, flags, pp_to_mp, mp_to_mm) in table {
        let d = classify_all(&games::by_name(name, None).unwrap());
        assert_eq!([d.pp_in_ls, d.mp_in_ls, d.pm_in_ls, d.mm_in_ls], flags, "{name}");
        assert_eq!((d.pp_to_mp, d.mp_to_mm), (pp_to_mp, mp_to_mm), "{name}");
    }
}

#[test]
fn threat_witness_matches_the_two_round_equilibrium() {
    let g = games::off_nash_threat();
    let v = decide::decide(&g, Regime::Pp);
    assert_eq!(witness::t_bound(&g, &v).unwrap().t_min, 2);
    let (_, m) = build_witness(&g, &v, Regime::Pp, DEFAULT_CAP).unwrap();
    assert_eq!(m.horizon, 2);
    assert_eq!(m.states[m.start].emit, Profile::pure(&g, 1, 0));
    for (i, j, want) in [(0, 0, (1, 1)), (0, 1, (1, 1)), (1, 0, (0, 0)), (1, 1, (0, 0))] {
        let s = m.next(m.start, i, j).unwrap();
        assert_eq!(m.states[s].emit, Profile::pure(&g, want.0, want.1));
    }
    assert!(verify::is_spe(&g, &m, Regime::Pp).unwrap());
    assert_eq!(verify::off_nash_states(&g, &m, Regime::Pp).unwrap(), vec![m.start]);
}

#[test]
fn grim_machine_for_cooperation_game() {
    let g = games::grim_cooperation();
    for t in 3..8 {
        let m = grim_trigger(&g, (0, 0), (2, 2), &[(1, 1), (1, 1)], t);
        assert!(verify::is_spe(&g, &m, Regime::Pp).unwrap(), "T = {t}");
        let off = verify::off_nash_states(&g, &m, Regime::Pp).unwrap();
        assert_eq!(off.len(), t - 2);
        assert!(off.iter().all(|&s| m.states[s].emit == Profile::pure(&g, 0, 0)));
    }
}

#[test]
fn large_horizon_witnesses_exceed_the_known_bound() {
    for alpha in [z(1), q(3, 2), z(0), z(-2)] {
        let g = games::large_horizon(&alpha);
        let v = decide::decide(&g, Regime::Mm);
        assert!(v.in_ls);
        let (bound, m) = build_witness(&g, &v, Regime::Mm, DEFAULT_CAP).unwrap();
        assert!(Q::from_integer((bound.t_min as i64).into()) > z(3) - &alpha);
        assert!(verify::is_spe(&g, &m, Regime::Mm).unwrap());
    }
}

#[test]
fn none_to_new_ne_witness_opens_off_equilibrium() {
    let g = games::none_to_new_ne();
    let v = decide::decide(&g, Regime::Mp);
    let (_, m) = build_witness(&g, &v, Regime::Mp, DEFAULT_CAP).unwrap();
    assert_eq!(m.states[m.start].emit, Profile::pure(&g, 1, 0));
    assert!(verify::is_spe(&g, &m, Regime::Mp).unwrap());
}

#[test]
fn oracle_results() {
    let g = games::off_nash_threat();
    assert!(verify::oracle_decide_pp(&g, 2).unwrap());
    assert_eq!(verify::oracle_first_horizon(&g, 3).unwrap(), Some(2));
    assert!(!verify::oracle_decide_pp(&games::no_best_response(), 6).unwrap());
    let ladder = verify::payoff_set_ladder(&g, 1, verify::DEFAULT_LADDER_CAP).unwrap();
    assert_eq!(ladder.levels[0].supportable, pure_nash(&g));
}
