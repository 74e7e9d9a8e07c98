//! Brute-force pure subgame-perfect payoff sets, horizon by horizon.

use offnash::games;
use offnash::rational::render;
use offnash::verify::{payoff_set_ladder, DEFAULT_LADDER_CAP};

fn main() {
    let g = games::off_nash_threat();
    let ladder = payoff_set_ladder(&g, 4, DEFAULT_LADDER_CAP).expect("small game");
    for level in &ladder.levels {
        let labels: Vec<String> = level
            .supportable
            .iter()
            .map(|&(i, j)| format!("({}, {})", g.row_labels()[i], g.col_labels()[j]))
            .collect();
        let (m1, m2) = level.minpay.clone().expect("pure equilibria exist");
        println!(
            "t = {}: {} payoff vectors, worst ({}, {}), supportable {}",
            level.horizon,
            level.payoffs.len(),
            render(&m1),
            render(&m2),
            labels.join(" ")
        );
    }
    println!("first horizon with off-equilibrium play: {:?}", ladder.first_off_nash(&g));

    match payoff_set_ladder(&games::grim_cooperation(), 10, 50) {
        Ok(_) => println!("cooperation game stayed under the cap"),
        Err(o) => println!("cooperation game passed {} vectors at t = {}; {} levels kept", o.cap, o.horizon, o.partial.levels.len()),
    }
}
