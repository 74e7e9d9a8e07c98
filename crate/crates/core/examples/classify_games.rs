//! Classify every reference game in all four regimes.

use offnash::{classify_all, decide, games, Regime};

fn main() {
    println!("{:<22} {:>5} {:>5} {:>5} {:>5}  separation", "game", "pp", "mp", "pm", "mm");
    for name in games::NAMES {
        let g = games::by_name(name, None).expect("known name");
        let d = classify_all(&g);
        let mark = |b: bool| if b { "yes" } else { "-" };
        println!(
            "{name:<22} {:>5} {:>5} {:>5} {:>5}  pp->mp {:?}, mp->mm {:?}",
            mark(d.pp_in_ls),
            mark(d.mp_in_ls),
            mark(d.pm_in_ls),
            mark(d.mm_in_ls),
            d.pp_to_mp,
            d.mp_to_mm
        );
    }

    let g = games::off_nash_threat();
    let v = decide(&g, Regime::Pp);
    println!("\noff_nash_threat, pure regime: case {:?}, evidence {:?}", v.case_id, v.evidence);
}
