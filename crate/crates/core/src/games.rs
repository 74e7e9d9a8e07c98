//! Named reference games. Each one isolates a different way off-equilibrium
//! stage play can (or cannot) be sustained in a finitely repeated game.

use crate::game::StageGame;
use crate::rational::{int, ratio, Rational};

/// `a1, b1, c1, ...` for player 1 and `a2, b2, ...` for player 2.
pub fn labels(n: usize, suffix: char) -> Vec<String> {
    (0..n)
        .map(|k| match u8::try_from(k).ok().filter(|&k| k < 26) {
            Some(k) => format!("{}{suffix}", (b'a' + k) as char),
            None => format!("x{k}_{suffix}"),
        })
        .collect()
}

fn build(u1: Vec<Vec<Rational>>, u2: Vec<Vec<Rational>>) -> StageGame {
    let (r, c) = (u1.len(), u1[0].len());
    StageGame::with_labels(u1, u2, labels(r, '1'), labels(c, '2')).expect("fixture dimensions")
}

fn from_pairs(cells: &[&[(i64, i64)]]) -> StageGame {
    let u1 = cells.iter().map(|r| r.iter().map(|c| int(c.0)).collect()).collect();
    let u2 = cells.iter().map(|r| r.iter().map(|c| int(c.1)).collect()).collect();
    build(u1, u2)
}

/// Player 2 is indifferent everywhere; player 1 can be threatened with the
/// worse of two equilibria into playing `b1` against `a2` once.
pub fn off_nash_threat() -> StageGame {
    from_pairs(&[&[(3, 1), (0, 1)], &[(2, 1), (1, 1)]])
}

/// Both players prefer `(a1, a2)` to every equilibrium and can be held to it
/// by a grim switch to the bad equilibrium `(c1, c2)`.
pub fn grim_cooperation() -> StageGame {
    from_pairs(&[
        &[(3, 3), (0, 4), (0, 0)],
        &[(4, 0), (2, 2), (0, 1)],
        &[(0, 0), (1, 0), (1, 1)],
    ])
}

/// Every profile, pure or mixed, is a stage equilibrium.
pub fn all_profiles_nash() -> StageGame {
    from_pairs(&[&[(0, 0), (1, 0)], &[(0, 1), (1, 1)]])
}

/// Parametric game where off-equilibrium play needs mixing and the required
/// horizon grows as `alpha` approaches 2 from below.
pub fn large_horizon(alpha: &Rational) -> StageGame {
    let a = alpha.clone();
    let u1 = vec![
        vec![int(3), a.clone()],
        vec![int(3), int(2)],
        vec![a, int(2)],
    ];
    let u2 = vec![
        vec![int(2), int(1)],
        vec![int(2), int(2)],
        vec![int(1), int(2)],
    ];
    build(u1, u2)
}

/// Off-equilibrium play needs player 1 to mix; pure threats never bind.
pub fn no_best_response() -> StageGame {
    from_pairs(&[&[(3, 2), (1, 1)], &[(3, 2), (2, 2)], &[(1, 1), (2, 2)]])
}

/// No pure equilibrium at all, but a continuum of mixed-pure ones.
pub fn none_to_new_ne() -> StageGame {
    from_pairs(&[
        &[(4, 0), (1, 3), (2, 3), (0, 4)],
        &[(0, 4), (1, 3), (2, 3), (4, 0)],
    ])
}

/// Pure equilibria pay both players the same; mixing adds new values.
pub fn new_ne() -> StageGame {
    from_pairs(&[&[(4, 4), (1, 3), (0, 0)], &[(0, 0), (1, 3), (4, 4)]])
}

/// `none_to_new_ne` with the players exchanged.
pub fn none_to_new_ne_flip() -> StageGame {
    from_pairs(&[&[(0, 4), (4, 0)], &[(3, 1), (3, 1)], &[(3, 2), (3, 2)], &[(4, 0), (0, 4)]])
}

/// `new_ne` with the players exchanged.
pub fn new_ne_flip() -> StageGame {
    from_pairs(&[&[(4, 4), (0, 0)], &[(3, 1), (3, 1)], &[(0, 0), (4, 4)]])
}

/// Player 1's equilibrium values differ by 1 but the needed payoff gap is 1/2,
/// so no sequence of equilibrium rewards can compensate it.
pub fn no_multiset_sum() -> StageGame {
    let u1 = vec![
        vec![int(3), ratio(3, 2)],
        vec![int(3), int(2)],
        vec![ratio(5, 2), int(2)],
    ];
    let u2 = vec![
        vec![int(2), int(1)],
        vec![int(2), int(2)],
        vec![int(1), int(2)],
    ];
    build(u1, u2)
}

/// `no_best_response` with the players exchanged.
pub fn no_best_response_flip() -> StageGame {
    from_pairs(&[&[(2, 3), (2, 3), (1, 1)], &[(1, 1), (2, 2), (2, 2)]])
}

pub const NAMES: [&str; 12] = [
    "off_nash_threat",
    "grim_cooperation",
    "all_profiles_nash",
    "large_horizon",
    "no_best_response",
    "none_to_new_ne",
    "new_ne",
    "none_to_new_ne_flip",
    "new_ne_flip",
    "no_multiset_sum",
    "no_best_response_flip",
    "constant",
];

/// Looks up a named game. `alpha` only matters for `large_horizon`
/// (default 1).
pub fn by_name(name: &str, alpha: Option<&Rational>) -> Option<StageGame> {
    let g = match name {
        "off_nash_threat" => off_nash_threat(),
        "grim_cooperation" => grim_cooperation(),
        "all_profiles_nash" => all_profiles_nash(),
        "large_horizon" => large_horizon(alpha.unwrap_or(&int(1))),
        "no_best_response" => no_best_response(),
        "none_to_new_ne" => none_to_new_ne(),
        "new_ne" => new_ne(),
        "none_to_new_ne_flip" => none_to_new_ne_flip(),
        "new_ne_flip" => new_ne_flip(),
        "no_multiset_sum" => no_multiset_sum(),
        "no_best_response_flip" => no_best_response_flip(),
        "constant" => from_pairs(&[&[(1, 1), (1, 1)], &[(1, 1), (1, 1)]]),
        _ => return None,
    };
    Some(g)
}
