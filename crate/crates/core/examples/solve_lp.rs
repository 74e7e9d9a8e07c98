//! Exact simplex with a dual certificate.

use offnash::lp::{self, LinearProgram, LpOutcome, Relation};
use offnash::rational::{int, render};

fn main() {
    // maximize 3x + 2y  s.t.  x + y <= 4,  x + 3y <= 6,  x <= 3,  x, y >= 0
    let mut p = LinearProgram::nonneg(2);
    p.objective = vec![int(3), int(2)];
    p.push(vec![int(1), int(1)], Relation::Le, int(4));
    p.push(vec![int(1), int(3)], Relation::Le, int(6));
    p.push(vec![int(1), int(0)], Relation::Le, int(3));

    match lp::solve(&p).expect("well-formed program") {
        LpOutcome::Optimal { value, point, dual } => {
            let show = |v: &[_]| v.iter().map(render).collect::<Vec<_>>().join(", ");
            println!("optimum {} at ({})", render(&value), show(&point));
            println!("dual ({}) certifies it: {}", show(&dual), lp::certificate_holds(&p, &value, &point, &dual));
        }
        other => println!("{other:?}"),
    }

    let region = p.clone();
    let (hi, lo) = lp::max_and_min(&region, &[int(1), int(-1)]).unwrap().expect("feasible");
    println!("x - y ranges over [{}, {}]", render(&lo), render(&hi));
}
