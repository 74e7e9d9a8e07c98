//! Seeded random integer games.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::StageGame;
use crate::games::labels;
use crate::rational::int;

/// Inclusive integer range written `lo..hi`, or a single value `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub lo: i64,
    pub hi: i64,
}

impl Span {
    pub const fn new(lo: i64, hi: i64) -> Self {
        Span { lo, hi }
    }
}

impl FromStr for Span {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("bad range {s:?}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
            None => (num(s)?, num(s)?),
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Span { lo, hi })
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnsembleSpec {
    pub rows: Span,
    pub cols: Span,
    pub payoffs: Span,
}

/// `count` games drawn from one ChaCha8 stream seeded with `seed`: for each
/// game the shape first, then `u1` and `u2` row by row.
pub fn random_games(spec: &EnsembleSpec, count: usize, seed: u64) -> Vec<StageGame> {
    assert!(spec.rows.lo >= 1 && spec.cols.lo >= 1, "games need at least one action per player");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let m = rng.gen_range(spec.rows.lo..=spec.rows.hi) as usize;
            let n = rng.gen_range(spec.cols.lo..=spec.cols.hi) as usize;
            let mut matrix = || -> Vec<Vec<_>> {
                (0..m).map(|_| (0..n).map(|_| int(rng.gen_range(spec.payoffs.lo..=spec.payoffs.hi))).collect()).collect()
            };
            let u1 = matrix();
            let u2 = matrix();
            StageGame::with_labels(u1, u2, labels(m, '1'), labels(n, '2')).expect("generated shapes agree")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spans() {
        assert_eq!("0..3".parse::<Span>().unwrap(), Span::new(0, 3));
        assert_eq!("0..=3".parse::<Span>().unwrap(), Span::new(0, 3));
        assert_eq!("2".parse::<Span>().unwrap(), Span::new(2, 2));
        assert!("3..1".parse::<Span>().is_err());
    }

    #[test]
    fn seeded_and_within_bounds() {
        let spec = EnsembleSpec { rows: Span::new(2, 3), cols: Span::new(2, 3), payoffs: Span::new(0, 3) };
        let a = random_games(&spec, 50, 11);
        assert_eq!(a, random_games(&spec, 50, 11));
        assert_ne!(a, random_games(&spec, 50, 12));
        for g in &a {
            assert!((2..=3).contains(&g.rows()) && (2..=3).contains(&g.cols()));
        }
    }
}
