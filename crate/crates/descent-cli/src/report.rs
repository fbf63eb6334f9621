//! Run reports: the machine-readable verdict for one case, plus a plain-text
//! rendering.
//!
//! Reports are plain data. Serialization order follows struct declaration
//! order, every collection is sorted upstream, and no timestamps or wall
//! times appear in the JSON, so a fixed spec and seed always produce byte
//! identical output. Wall time is shown in the text rendering only.

use serde::Serialize;

use descent_core::group::{ExactnessReport, HypStatus, Hypothesis};

#[derive(Debug, Clone, Serialize)]
pub struct GroupJson {
    pub name: String,
    pub order: usize,
    /// Cyclic invariant factors for abelian objects, absent otherwise.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant_factors: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PositionJson {
    /// Index into `groups` of the object where exactness is measured.
    pub at: usize,
    pub image_order: usize,
    pub kernel_order: usize,
    pub exact: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct HypothesisJson {
    pub name: String,
    pub status: String,
}

/// Degree-one cohomology summary.
#[derive(Debug, Clone, Serialize)]
pub struct H1Json {
    pub order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant_factors: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cocycles: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coboundaries: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<usize>,
}

/// One level of an Amitsur complex.
#[derive(Debug, Clone, Serialize)]
pub struct LevelJson {
    pub order: u64,
    /// Whether the level carries full ring tables or coordinates only.
    pub materialized: bool,
    /// Invariant factors of the unit group, for materialized levels.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit_invariant_factors: Option<Vec<u64>>,
}

/// Picard-kernel comparison summary.
#[derive(Debug, Clone, Serialize)]
pub struct PicJson {
    pub h1_order: usize,
    pub cocycle_count: usize,
    pub module_iso_classes: usize,
    pub base_changes_trivial: bool,
    pub equivalence_respected: bool,
    pub cardinality_match: bool,
}

/// One module of a descent-data versus comonad-coalgebra comparison.
#[derive(Debug, Clone, Serialize)]
pub struct BrbCaseJson {
    pub module_order: usize,
    pub datum_count: usize,
    pub coalgebra_count: usize,
    /// Explicit bijection: index of the coalgebra paired with each datum.
    pub pairing: Vec<usize>,
    pub matched: bool,
}

/// Verdict for one case.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub case: String,
    pub kind: String,
    /// Every requested check passed.
    pub pass: bool,
    /// Some side hypothesis could not be certified; the verdict is advisory.
    pub advisory: bool,
    pub hypotheses: Vec<HypothesisJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequence: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub groups: Option<Vec<GroupJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub positions: Option<Vec<PositionJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<LevelJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h1: Option<H1Json>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pic: Option<PicJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brb: Option<Vec<BrbCaseJson>>,
    /// Witness element, row-major, when a claimed property failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Human-readable notes, e.g. which expectation was missed.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl RunReport {
    pub fn new(case: &str, kind: &str) -> Self {
        RunReport {
            case: String::from(case),
            kind: String::from(kind),
            pass: true,
            advisory: false,
            hypotheses: Vec::new(),
            sequence: None,
            groups: None,
            positions: None,
            levels: None,
            h1: None,
            pic: None,
            brb: None,
            counterexample: None,
            seed: None,
            notes: Vec::new(),
        }
    }
}

pub fn status_str(s: HypStatus) -> &'static str {
    match s {
        HypStatus::Verified => "verified",
        HypStatus::Failed => "failed",
        HypStatus::Unverified => "unverified",
    }
}

pub fn hyps_json(hs: &[Hypothesis]) -> Vec<HypothesisJson> {
    hs.iter()
        .map(|h| HypothesisJson {
            name: h.name.clone(),
            status: String::from(status_str(h.status)),
        })
        .collect()
}

/// Copies an exactness verdict into a report. The engine prefixes sequences
/// with a formal one-element group so that injectivity of the first real map
/// is itself an exactness position; that prefix is bookkeeping, so it is
/// dropped here and positions are renumbered against the visible objects.
pub fn fill_from_exactness(report: &mut RunReport, rep: &ExactnessReport) {
    let trim = rep.sequence.first().map(|s| s == "1").unwrap_or(false);
    let skip = usize::from(trim);
    report.sequence = Some(rep.sequence[skip..].to_vec());
    report.groups = Some(
        rep.groups[skip..]
            .iter()
            .map(|g| GroupJson {
                name: g.name.clone(),
                order: g.order,
                invariant_factors: g.invariant_factors.clone(),
            })
            .collect(),
    );
    report.positions = Some(
        rep.positions
            .iter()
            .map(|p| PositionJson {
                at: p.at - skip,
                image_order: p.image_order,
                kernel_order: p.kernel_order,
                exact: p.exact,
            })
            .collect(),
    );
    report.hypotheses = hyps_json(&rep.hypotheses);
    report.pass = rep.exact_everywhere()
        && rep.hypotheses.iter().all(|h| h.status != HypStatus::Failed);
    report.advisory = rep
        .hypotheses
        .iter()
        .any(|h| h.status == HypStatus::Unverified);
}

/// Exit code for a finished report: 0 clean, 2 failed check, 3 advisory.
pub fn exit_code_for(report: &RunReport, advisory_ok: bool) -> i32 {
    if !report.pass {
        2
    } else if report.advisory && !advisory_ok {
        3
    } else {
        0
    }
}

/// Plain-text rendering of one report, with the measured wall time.
pub fn render_text(report: &RunReport, wall_ms: u128) -> String {
    let mut out = String::new();
    let verdict = if report.pass {
        if report.advisory {
            "PASS (advisory)"
        } else {
            "PASS"
        }
    } else {
        "FAIL"
    };
    out.push_str(&format!(
        "case {} [{}]: {} ({} ms)\n",
        report.case, report.kind, verdict, wall_ms
    ));
    if let Some(groups) = &report.groups {
        out.push_str("  groups:\n");
        for g in groups {
            let factors = match &g.invariant_factors {
                Some(f) if !f.is_empty() => format!(
                    " = C{}",
                    f.iter()
                        .map(|d| d.to_string())
                        .collect::<Vec<_>>()
                        .join(" x C")
                ),
                Some(_) => String::from(" (trivial)"),
                None => String::new(),
            };
            out.push_str(&format!("    {:<16} order {}{}\n", g.name, g.order, factors));
        }
    }
    if let Some(positions) = &report.positions {
        out.push_str("  exactness:\n");
        let names = report.sequence.as_deref().unwrap_or(&[]);
        for p in positions {
            let name = names.get(p.at).map(String::as_str).unwrap_or("?");
            out.push_str(&format!(
                "    at {:<16} image {:>4}  kernel {:>4}  {}\n",
                name,
                p.image_order,
                p.kernel_order,
                if p.exact { "exact" } else { "NOT EXACT" }
            ));
        }
    }
    if let Some(levels) = &report.levels {
        out.push_str("  levels:\n");
        for (n, l) in levels.iter().enumerate() {
            let units = match &l.unit_invariant_factors {
                Some(f) if !f.is_empty() => format!(
                    ", units C{}",
                    f.iter()
                        .map(|d| d.to_string())
                        .collect::<Vec<_>>()
                        .join(" x C")
                ),
                Some(_) => String::from(", units trivial"),
                None => String::from(", units not materialized"),
            };
            out.push_str(&format!("    level {n}: order {}{}\n", l.order, units));
        }
    }
    if let Some(h1) = &report.h1 {
        out.push_str(&format!("  H1 order {}", h1.order));
        if let (Some(z), Some(b)) = (h1.cocycles, h1.coboundaries) {
            out.push_str(&format!(" (cocycles {z}, coboundaries {b})"));
        }
        out.push('\n');
    }
    if let Some(pic) = &report.pic {
        out.push_str(&format!(
            "  pic kernel: {} classes, {} module classes, trivial base change {}\n",
            pic.h1_order, pic.module_iso_classes, pic.base_changes_trivial
        ));
    }
    if let Some(brb) = &report.brb {
        out.push_str("  descent data vs coalgebras:\n");
        for c in brb {
            out.push_str(&format!(
                "    module order {:>3}: {} data, {} coalgebras, {}\n",
                c.module_order,
                c.datum_count,
                c.coalgebra_count,
                if c.matched { "matched" } else { "MISMATCH" }
            ));
        }
    }
    for h in &report.hypotheses {
        out.push_str(&format!("  hypothesis {:<40} {}\n", h.name, h.status));
    }
    for note in &report.notes {
        out.push_str(&format!("  note: {note}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use descent_core::group::{GroupSummary, PositionReport};

    fn sample_exactness() -> ExactnessReport {
        ExactnessReport {
            sequence: vec!["1", "A", "B", "C"]
                .into_iter()
                .map(String::from)
                .collect(),
            groups: [("1", 1), ("A", 2), ("B", 4), ("C", 2)]
                .into_iter()
                .map(|(name, order)| GroupSummary {
                    name: String::from(name),
                    order,
                    invariant_factors: None,
                })
                .collect(),
            positions: vec![
                PositionReport {
                    at: 1,
                    image_order: 1,
                    kernel_order: 1,
                    exact: true,
                },
                PositionReport {
                    at: 2,
                    image_order: 2,
                    kernel_order: 2,
                    exact: true,
                },
            ],
            hypotheses: vec![Hypothesis {
                name: String::from("sample"),
                status: HypStatus::Verified,
            }],
            pointed: false,
        }
    }

    #[test]
    fn formal_leading_group_is_trimmed_and_positions_rebased() {
        let mut report = RunReport::new("t", "seq5");
        fill_from_exactness(&mut report, &sample_exactness());
        let groups = report.groups.as_ref().unwrap();
        assert_eq!(groups.len(), 3);
        assert_eq!(groups[0].name, "A");
        let positions = report.positions.as_ref().unwrap();
        assert_eq!(positions[0].at, 0);
        assert_eq!(positions[1].at, 1);
        assert!(report.pass);
        assert!(!report.advisory);
    }

    #[test]
    fn unverified_hypotheses_downgrade_to_advisory() {
        let mut rep = sample_exactness();
        rep.hypotheses[0].status = HypStatus::Unverified;
        let mut report = RunReport::new("t", "seq5");
        fill_from_exactness(&mut report, &rep);
        assert!(report.pass);
        assert!(report.advisory);
        assert_eq!(exit_code_for(&report, false), 3);
        assert_eq!(exit_code_for(&report, true), 0);

        rep.hypotheses[0].status = HypStatus::Failed;
        fill_from_exactness(&mut report, &rep);
        assert!(!report.pass);
        assert_eq!(exit_code_for(&report, false), 2);
    }

    #[test]
    fn json_omits_empty_sections() {
        let report = RunReport::new("t", "hilbert90");
        let text = serde_json::to_string(&report).unwrap();
        assert!(!text.contains("groups"));
        assert!(!text.contains("notes"));
        assert!(text.contains("\"case\":\"t\""));
    }

    #[test]
    fn text_rendering_shows_positions_by_object_name() {
        let mut report = RunReport::new("t", "seq5");
        fill_from_exactness(&mut report, &sample_exactness());
        let text = render_text(&report, 12);
        assert!(text.contains("case t [seq5]: PASS (12 ms)"));
        assert!(text.contains("at A"));
        assert!(text.contains("exact"));
    }
}
