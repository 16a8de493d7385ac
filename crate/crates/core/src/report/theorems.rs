use std::fmt;

use serde::{Deserialize, Serialize};

use crate::estimators::LyapunovReport;
use crate::system::{Flags, Trivalent};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "prop2.1")]
    Prop21,
    #[serde(rename = "thm3.1")]
    Thm31,
    #[serde(rename = "thm3.2")]
    Thm32,
    #[serde(rename = "thm4.1-1")]
    Thm41Item1,
    #[serde(rename = "thm4.1-2")]
    Thm41Item2,
    #[serde(rename = "thm4.1-3")]
    Thm41Item3,
    #[serde(rename = "chain")]
    Chain,
}

impl TheoremId {
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Prop21 => "prop2.1",
            TheoremId::Thm31 => "thm3.1",
            TheoremId::Thm32 => "thm3.2",
            TheoremId::Thm41Item1 => "thm4.1-1",
            TheoremId::Thm41Item2 => "thm4.1-2",
            TheoremId::Thm41Item3 => "thm4.1-3",
            TheoremId::Chain => "chain",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::NotApplicable => "not-applicable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremCheckResult {
    pub id: TheoremId,
    /// The relation checked, e.g. `L2 = L4`.
    pub claim: String,
    pub applicable: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub verdict: Outcome,
}

impl TheoremCheckResult {
    pub fn failed(&self) -> bool {
        self.verdict == Outcome::Fail
    }
}

struct Row<'a> {
    id: TheoremId,
    claim: &'a str,
    requires: &'a [fn(&Flags) -> Trivalent],
    lhs: f64,
    rhs: f64,
    holds: bool,
}

/// Theorem rows for one report. A row is applicable only when every flag it
/// requires is declared true; unknown counts as not applicable.
///
/// - `chain`: `L2 ≥ L4 ≥ L3`, `L2 ≥ L1 ≥ L3`, always applicable;
/// - `prop2.1`: `L2 ≤ 2·L3`, sensitive systems;
/// - `thm3.1`: `L2 = L4`, transitive and sensitive;
/// - `thm3.2`: `L1 = L3`, minimal and sensitive;
/// - `thm4.1-1`, `thm4.1-2`: `L2 = diam`, `L4 = diam`, weakly mixing;
/// - `thm4.1-3`: all four equal `diam`, weakly mixing and minimal.
pub fn check_theorems(
    report: &LyapunovReport,
    flags: Flags,
    slack: f64,
) -> Vec<TheoremCheckResult> {
    let [l1, l2, l3, l4] = report.numbers();
    let diam = report.diameter;
    let close = |a: f64, b: f64| (a - b).abs() <= slack;
    let sensitive: fn(&Flags) -> Trivalent = |f| f.sensitive;
    let transitive: fn(&Flags) -> Trivalent = |f| f.transitive;
    let minimal: fn(&Flags) -> Trivalent = |f| f.minimal;
    let mixing: fn(&Flags) -> Trivalent = |f| f.weakly_mixing;
    let farthest = report.numbers().into_iter().fold(diam, |acc, v| {
        if (v - diam).abs() > (acc - diam).abs() {
            v
        } else {
            acc
        }
    });
    let rows = [
        Row {
            id: TheoremId::Chain,
            claim: "L2 >= L4",
            requires: &[],
            lhs: l2,
            rhs: l4,
            holds: l2 >= l4 - slack,
        },
        Row {
            id: TheoremId::Chain,
            claim: "L4 >= L3",
            requires: &[],
            lhs: l4,
            rhs: l3,
            holds: l4 >= l3 - slack,
        },
        Row {
            id: TheoremId::Chain,
            claim: "L2 >= L1",
            requires: &[],
            lhs: l2,
            rhs: l1,
            holds: l2 >= l1 - slack,
        },
        Row {
            id: TheoremId::Chain,
            claim: "L1 >= L3",
            requires: &[],
            lhs: l1,
            rhs: l3,
            holds: l1 >= l3 - slack,
        },
        Row {
            id: TheoremId::Prop21,
            claim: "L2 <= 2 L3",
            requires: &[sensitive],
            lhs: l2,
            rhs: 2.0 * l3,
            holds: l2 <= 2.0 * l3 + slack,
        },
        Row {
            id: TheoremId::Thm31,
            claim: "L2 = L4",
            requires: &[transitive, sensitive],
            lhs: l2,
            rhs: l4,
            holds: close(l2, l4),
        },
        Row {
            id: TheoremId::Thm32,
            claim: "L1 = L3",
            requires: &[minimal, sensitive],
            lhs: l1,
            rhs: l3,
            holds: close(l1, l3),
        },
        Row {
            id: TheoremId::Thm41Item1,
            claim: "L2 = diam",
            requires: &[mixing],
            lhs: l2,
            rhs: diam,
            holds: close(l2, diam),
        },
        Row {
            id: TheoremId::Thm41Item2,
            claim: "L4 = diam",
            requires: &[mixing],
            lhs: l4,
            rhs: diam,
            holds: close(l4, diam),
        },
        Row {
            id: TheoremId::Thm41Item3,
            claim: "L1 = L2 = L3 = L4 = diam",
            requires: &[mixing, minimal],
            lhs: farthest,
            rhs: diam,
            holds: close(farthest, diam),
        },
    ];
    rows.into_iter()
        .map(|r| {
            let applicable = r.requires.iter().all(|get| get(&flags).is_true());
            TheoremCheckResult {
                id: r.id,
                claim: r.claim.to_string(),
                applicable,
                lhs: r.lhs,
                rhs: r.rhs,
                slack,
                verdict: match (applicable, r.holds) {
                    (false, _) => Outcome::NotApplicable,
                    (true, true) => Outcome::Pass,
                    (true, false) => Outcome::Fail,
                },
            }
        })
        .collect()
}
