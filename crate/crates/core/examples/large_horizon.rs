//! The witness horizon of the parametric game grows as alpha falls.

use offnash::rational::{int, ratio, render};
use offnash::witness::{build_witness, DEFAULT_CAP};
use offnash::{decide, games, Regime};

fn main() {
    for alpha in [ratio(3, 2), int(1), int(0), int(-3), int(-10)] {
        let g = games::large_horizon(&alpha);
        let v = decide(&g, Regime::Mm);
        let (bound, m) = build_witness(&g, &v, Regime::Mm, DEFAULT_CAP).expect("positive for alpha < 2");
        println!("alpha = {:>4}: witness horizon {:>3} ({} states)", render(&alpha), bound.t_min, m.states.len());
    }
}
