//! Which payoff gaps can a sequence of equilibrium switches compensate?

use offnash::decide::{subset_sum_reachable, DifferenceSet};
use offnash::rational::{int, ratio, render};

fn main() {
    for values in [vec![int(2), int(3)], vec![ratio(1, 2), ratio(4, 3), int(2)], vec![int(5)]] {
        let d = DifferenceSet::from_values(&values);
        let gcd = d.gcd.as_ref().map(render).unwrap_or_else(|| "none".into());
        let reach: Vec<String> = [ratio(1, 2), int(1), ratio(1, 6), int(-3)]
            .iter()
            .map(|x| format!("{}:{}", render(x), subset_sum_reachable(x, &d)))
            .collect();
        let shown: Vec<String> = values.iter().map(render).collect();
        println!("values {{{}}} gcd {gcd}  {}", shown.join(", "), reach.join("  "));
    }
}
