//! Build a subgame-perfect witness machine, check it, and print it.

use offnash::document::render_machine;
use offnash::verify::{is_spe, off_nash_states};
use offnash::witness::{build_witness, DEFAULT_CAP};
use offnash::{decide, games, Regime};

fn main() {
    for (name, g, regime) in [
        ("off_nash_threat", games::off_nash_threat(), Regime::Pp),
        ("none_to_new_ne", games::none_to_new_ne(), Regime::Mp),
        ("no_multiset_sum", games::no_multiset_sum(), Regime::Mm),
    ] {
        let verdict = decide(&g, regime);
        let (bound, m) = build_witness(&g, &verdict, regime, DEFAULT_CAP).expect("positive verdict");
        println!(
            "{name} ({regime}): case {}, horizon {}, {} states, subgame perfect: {}, off-equilibrium states {:?}",
            bound.case_id,
            m.horizon,
            m.states.len(),
            is_spe(&g, &m, regime).unwrap(),
            off_nash_states(&g, &m, regime).unwrap()
        );
    }

    let g = games::off_nash_threat();
    let (_, m) = build_witness(&g, &decide(&g, Regime::Pp), Regime::Pp, DEFAULT_CAP).unwrap();
    print!("{}", render_machine(&m));
}
