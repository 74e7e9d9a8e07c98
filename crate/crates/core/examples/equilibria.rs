//! Stage equilibria per regime: pure profiles, mixed-pure components and the
//! extreme points of the mixed equilibrium set.

use offnash::games;
use offnash::nash::{extreme_equilibria_mm, mixed_pure_components, pure_nash, v_summary};
use offnash::rational::render;
use offnash::{Player, Regime};

fn main() {
    let g = games::large_horizon(&offnash::rational::int(1));
    println!("pure equilibria: {:?}", pure_nash(&g));

    for c in mixed_pure_components(&g).iter().filter(|c| c.nonempty) {
        let (lo, hi) = c.u2_range.clone().expect("nonempty");
        println!(
            "column {} with rows {:?}: player 1 gets {}, player 2 gets [{}, {}]",
            g.col_labels()[c.col],
            c.br_rows,
            render(&c.v1_value),
            render(&lo),
            render(&hi)
        );
    }

    for e in extreme_equilibria_mm(&g) {
        let probs = |p: &[_]| p.iter().map(render).collect::<Vec<_>>().join(" ");
        println!("extreme ({}) x ({}) pays ({}, {})", probs(e.s1.probs()), probs(e.s2.probs()), render(&e.pay1), render(&e.pay2));
    }

    for r in Regime::ALL {
        let v = v_summary(&g, r);
        let span = |who| v.span(who).map(|s| render(&s)).unwrap_or_else(|| "-".into());
        println!("{r}: V1 span {}, V2 span {}", span(Player::One), span(Player::Two));
    }
}
