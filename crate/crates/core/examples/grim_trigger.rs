//! Cooperation sustained by a grim switch to the worse equilibrium.

use offnash::games;
use offnash::verify::{is_spe, off_nash_states};
use offnash::witness::grim_trigger;
use offnash::Regime;

fn main() {
    let g = games::grim_cooperation();
    for t in 3..=6 {
        // (a1, a2) until the last two rounds, (b1, b2) to finish, (c1, c2) forever after a deviation.
        let m = grim_trigger(&g, (0, 0), (2, 2), &[(1, 1), (1, 1)], t);
        println!(
            "T = {t}: subgame perfect {}, cooperative rounds {}, total payoff {} each",
            is_spe(&g, &m, Regime::Pp).unwrap(),
            off_nash_states(&g, &m, Regime::Pp).unwrap().len(),
            3 * (t - 2) + 2 * 2
        );
    }
}
