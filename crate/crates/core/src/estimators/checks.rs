use serde::{Deserialize, Serialize};

use super::LyapunovReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    /// `lhs ≥ rhs − slack`.
    #[serde(rename = ">=")]
    Ge,
    /// `lhs ≤ rhs + slack`.
    #[serde(rename = "<=")]
    Le,
}

impl Relation {
    pub fn holds(self, lhs: f64, rhs: f64, slack: f64) -> bool {
        match self {
            Relation::Ge => lhs >= rhs - slack,
            Relation::Le => lhs <= rhs + slack,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub relation: Relation,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub pass: bool,
}

impl Verdict {
    fn new(name: impl Into<String>, lhs: f64, relation: Relation, rhs: f64, slack: f64) -> Self {
        Verdict {
            name: name.into(),
            relation,
            lhs,
            rhs,
            slack,
            pass: relation.holds(lhs, rhs, slack),
        }
    }
}

/// Verdicts for numbers `[L1, L2, L3, L4]`:
///
/// - the chain `L2 ≥ L4 ≥ L3`, `L2 ≥ L1 ≥ L3`;
/// - `prop2.1`: `L2 ≤ 2·L3`;
/// - `Li ≤ 2·Lj` for all `i ≠ j`;
/// - `Li ≤ diam`.
pub fn inequality_rows(l: [f64; 4], diameter: f64, slack: f64) -> Vec<Verdict> {
    use Relation::{Ge, Le};
    let mut rows = vec![
        Verdict::new("L2>=L4", l[1], Ge, l[3], slack),
        Verdict::new("L4>=L3", l[3], Ge, l[2], slack),
        Verdict::new("L2>=L1", l[1], Ge, l[0], slack),
        Verdict::new("L1>=L3", l[0], Ge, l[2], slack),
        Verdict::new("prop2.1", l[1], Le, 2.0 * l[2], slack),
    ];
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                rows.push(Verdict::new(
                    format!("L{}<=2L{}", i + 1, j + 1),
                    l[i],
                    Le,
                    2.0 * l[j],
                    slack,
                ));
            }
        }
    }
    for (i, &li) in l.iter().enumerate() {
        rows.push(Verdict::new(
            format!("L{}<=diam", i + 1),
            li,
            Le,
            diameter,
            slack,
        ));
    }
    rows
}

/// Recomputes the verdicts from the numbers stored in `report`.
pub fn check_inequalities(report: &LyapunovReport, slack: f64) -> Vec<Verdict> {
    inequality_rows(report.numbers(), report.diameter, slack)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn failing(rows: &[Verdict]) -> Vec<&str> {
        rows.iter()
            .filter(|v| !v.pass)
            .map(|v| v.name.as_str())
            .collect()
    }

    #[test]
    fn equal_numbers_pass_everything() {
        assert!(failing(&inequality_rows([1.0; 4], 1.0, 0.0)).is_empty());
    }

    #[test]
    fn surface_like_values_pass() {
        let rows = inequality_rows([2.0, 2.0, 1.0, 2.0], 17f64.sqrt() / 2.0, 0.05);
        assert!(failing(&rows).is_empty(), "{:?}", failing(&rows));
    }

    #[test]
    fn prop21_violation_is_reported() {
        let rows = inequality_rows([1.0, 2.2, 1.0, 1.0], 3.0, 0.05);
        let bad = failing(&rows);
        assert!(bad.contains(&"prop2.1"));
        assert!(bad.contains(&"L2<=2L3"));
    }

    #[test]
    fn row_count() {
        assert_eq!(inequality_rows([0.0; 4], 1.0, 0.0).len(), 5 + 12 + 4);
    }
}
