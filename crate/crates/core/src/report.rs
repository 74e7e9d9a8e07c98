//! Machine-readable result documents. Rationals are rendered as `"p/q"`
//! strings and actions by their labels, so reports are stable across runs.

use serde::Serialize;

use crate::decide::{self, DeltaLabel, Evidence, Verdict};
use crate::document::MachineDocument;
use crate::error::Result;
use crate::game::{MixedStrategy, Player, Regime, StageGame};
use crate::machine::StrategyMachine;
use crate::nash::{self, VSummary};
use crate::rational::{render, Rational};
use crate::verify::{self, PayoffSetLadder};
use crate::witness::{self, TBound};

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(render).collect()
}

fn player(p: Player) -> &'static str {
    match p {
        Player::One => "one",
        Player::Two => "two",
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EvidenceReport {
    OffNash { row: String, col: String },
    PureThreat { threatened: &'static str, row: String, col: String, better: String },
    MixedThreat { threatened: &'static str, strategy: Vec<String>, pure: String, bad: String },
    Congruent { threatened: &'static str, strategy: Vec<String>, pure: String, better: String, anchor: String },
}

impl EvidenceReport {
    pub fn new(g: &StageGame, e: &Evidence) -> Self {
        let (rl, cl) = (g.row_labels(), g.col_labels());
        // Own and opponent labels from the threatened player's point of view.
        let seats = |who: Player| match who {
            Player::One => (rl, cl),
            Player::Two => (cl, rl),
        };
        let probs = |s: &MixedStrategy| strings(s.probs());
        match e {
            Evidence::OffNash { row, col } => EvidenceReport::OffNash { row: rl[*row].clone(), col: cl[*col].clone() },
            Evidence::PureThreat { threatened, row, col, better } => {
                let better = match threatened {
                    Player::One => rl[*better].clone(),
                    Player::Two => cl[*better].clone(),
                };
                EvidenceReport::PureThreat {
                    threatened: player(*threatened),
                    row: rl[*row].clone(),
                    col: cl[*col].clone(),
                    better,
                }
            }
            Evidence::MixedThreat { threatened, strategy, pure, bad } => {
                let (own, opp) = seats(*threatened);
                EvidenceReport::MixedThreat {
                    threatened: player(*threatened),
                    strategy: probs(strategy),
                    pure: opp[*pure].clone(),
                    bad: own[*bad].clone(),
                }
            }
            Evidence::Congruent { threatened, strategy, pure, better, anchor } => {
                let (own, opp) = seats(*threatened);
                EvidenceReport::Congruent {
                    threatened: player(*threatened),
                    strategy: probs(strategy),
                    pure: opp[*pure].clone(),
                    better: own[*better].clone(),
                    anchor: own[*anchor].clone(),
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub regime: Regime,
    pub in_ls: bool,
    pub case_id: Option<u8>,
    /// Horizon of the witness construction for this verdict.
    pub t_min: Option<usize>,
    pub evidence: Option<EvidenceReport>,
}

impl VerdictReport {
    pub fn new(g: &StageGame, v: &Verdict) -> Result<Self> {
        let t_min = if v.in_ls { Some(witness::t_bound(g, v)?.t_min) } else { None };
        Ok(VerdictReport {
            regime: v.regime,
            in_ls: v.in_ls,
            case_id: v.case_id,
            t_min,
            evidence: v.evidence.as_ref().map(|e| EvidenceReport::new(g, e)),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummaryReport {
    pub regime: Regime,
    pub v1: Vec<String>,
    pub v2: Vec<String>,
    pub v1_unique: bool,
    pub v2_unique: bool,
}

impl From<&VSummary> for SummaryReport {
    fn from(v: &VSummary) -> Self {
        SummaryReport {
            regime: v.regime,
            v1: strings(&v.v1_values),
            v2: strings(&v.v2_values),
            v1_unique: v.v1_unique,
            v2_unique: v.v2_unique,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaReport {
    pub pp_to_mp: Option<u8>,
    pub mp_to_mm: Option<u8>,
    pub pp_to_mm: Option<u8>,
}

impl From<&DeltaLabel> for DeltaReport {
    fn from(d: &DeltaLabel) -> Self {
        DeltaReport { pp_to_mp: d.pp_to_mp, mp_to_mm: d.mp_to_mm, pp_to_mm: d.pp_to_mm }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifyReport {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub verdicts: Vec<VerdictReport>,
    pub summaries: Vec<SummaryReport>,
    /// Present only when every regime was classified.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<DeltaReport>,
}

pub fn classify(g: &StageGame, regimes: &[Regime]) -> Result<ClassifyReport> {
    let mut verdicts = Vec::new();
    let mut summaries = Vec::new();
    for &r in regimes {
        verdicts.push(VerdictReport::new(g, &decide::decide(g, r))?);
        summaries.push(SummaryReport::from(&nash::v_summary(g, r)));
    }
    let delta = (regimes == Regime::ALL).then(|| DeltaReport::from(&decide::classify_all(g)));
    Ok(ClassifyReport { rows: g.row_labels().to_vec(), cols: g.col_labels().to_vec(), verdicts, summaries, delta })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub regime: Regime,
    pub case_id: u8,
    pub t_min: usize,
    pub is_spe: bool,
    pub off_nash_states: Vec<usize>,
    pub machine: MachineDocument,
}

/// Builds and verifies a witness; the machine is only reported once the
/// subgame-perfection check has passed.
pub fn witness(g: &StageGame, regime: Regime, cap: usize) -> Result<WitnessReport> {
    let verdict = decide::decide(g, regime);
    let (TBound { case_id, t_min, .. }, machine) = witness::build_witness(g, &verdict, regime, cap)?;
    let is_spe = verify::is_spe(g, &machine, regime)?;
    let off_nash_states = verify::off_nash_states(g, &machine, regime)?;
    assert!(is_spe && !off_nash_states.is_empty(), "witness failed its own verification");
    Ok(WitnessReport { regime, case_id, t_min, is_spe, off_nash_states, machine: MachineDocument::from_machine(&machine) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub regime: Regime,
    pub horizon: usize,
    pub is_spe: bool,
    pub off_nash_states: Vec<usize>,
}

pub fn verify(g: &StageGame, m: &StrategyMachine, regime: Regime) -> Result<VerifyReport> {
    Ok(VerifyReport {
        regime,
        horizon: m.horizon,
        is_spe: verify::is_spe(g, m, regime)?,
        off_nash_states: verify::off_nash_states(g, m, regime)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub horizon: usize,
    pub payoff_vectors: usize,
    pub supportable: Vec<(String, String)>,
    pub minpay: Option<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub t_max: usize,
    pub min_off_nash_horizon: Option<usize>,
    pub levels: Vec<LevelReport>,
}

pub fn oracle(g: &StageGame, ladder: &PayoffSetLadder, t_max: usize) -> OracleReport {
    let levels = ladder
        .levels
        .iter()
        .map(|l| LevelReport {
            horizon: l.horizon,
            payoff_vectors: l.payoffs.len(),
            supportable: l
                .supportable
                .iter()
                .map(|&(i, j)| (g.row_labels()[i].clone(), g.col_labels()[j].clone()))
                .collect(),
            minpay: l.minpay.as_ref().map(|(a, b)| (render(a), render(b))),
        })
        .collect();
    OracleReport { t_max, min_off_nash_horizon: ladder.first_off_nash(g), levels }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialise");
    s.push('\n');
    s
}
