//! How often each regime admits off-equilibrium play on random games.

use offnash::classify_all;
use offnash::ensemble::{random_games, EnsembleSpec, Span};
use rayon::prelude::*;

fn main() {
    let spec = EnsembleSpec { rows: Span::new(2, 3), cols: Span::new(2, 3), payoffs: Span::new(0, 3) };
    let games = random_games(&spec, 300, 1);
    let labels: Vec<_> = games.par_iter().map(classify_all).collect();
    let count = |f: fn(&offnash::DeltaLabel) -> bool| labels.iter().filter(|d| f(d)).count();
    println!("{} games", labels.len());
    println!("pure-pure   {}", count(|d| d.pp_in_ls));
    println!("mixed-pure  {}", count(|d| d.mp_in_ls));
    println!("pure-mixed  {}", count(|d| d.pm_in_ls));
    println!("mixed-mixed {}", count(|d| d.mm_in_ls));
    println!("mixing needed (mm but not pp) {}", count(|d| d.mm_in_ls && !d.pp_in_ls));
}
