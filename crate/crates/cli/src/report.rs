//! Serialized report shapes. Keys are camelCase and stable; see
//! `docs/report-schema.json`.

use std::collections::BTreeMap;

use nclosed_core::theorem::TheoremId;
use serde::Serialize;

/// Enough to rerun a failing check from the command line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub theorem: Option<TheoremId>,
    pub group: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rep: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// A tuple of members whose product leaves the set, when one exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    pub detail: String,
    pub replay: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TheoremTally {
    pub checked: u64,
    pub violations: Vec<Certificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GroupSummary {
    pub spec: String,
    pub order: usize,
    pub subgroups: usize,
    pub normal_subgroups: usize,
    pub cosets_analyzed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub corpus: Vec<String>,
    pub seed: u64,
    pub engine: String,
    pub per_theorem: BTreeMap<TheoremId, TheoremTally>,
    pub engine_oracle_cross_checks: u64,
    pub engine_oracle_mismatches: Vec<Certificate>,
    pub groups: Vec<GroupSummary>,
    pub total_violations: usize,
    /// Wall-clock time; kept out of the JSON so reports are reproducible.
    #[serde(skip)]
    pub elapsed: std::time::Duration,
}

impl VerificationReport {
    pub fn is_clean(&self) -> bool {
        self.total_violations == 0
    }

    pub fn checked(&self, theorem: TheoremId) -> u64 {
        self.per_theorem.get(&theorem).map_or(0, |t| t.checked)
    }

    pub fn violations(&self, theorem: TheoremId) -> &[Certificate] {
        self.per_theorem.get(&theorem).map_or(&[], |t| &t.violations)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("corpus: {} groups, seed {}, engine {}\n", self.corpus.len(), self.seed, self.engine));
        for (id, tally) in &self.per_theorem {
            out.push_str(&format!("{:<7} checked {:>7}  violations {}\n", id.as_str(), tally.checked, tally.violations.len()));
        }
        out.push_str(&format!(
            "engine/oracle cross-checks {}  mismatches {}\n",
            self.engine_oracle_cross_checks,
            self.engine_oracle_mismatches.len()
        ));
        let all = self.per_theorem.values().flat_map(|t| &t.violations).chain(&self.engine_oracle_mismatches);
        for cert in all {
            let id = cert.theorem.map_or("oracle", |t| t.as_str());
            out.push_str(&format!("  [{id}] {}: {}\n    replay: {}\n", cert.group, cert.detail, cert.replay));
        }
        out.push_str(&format!("elapsed {:.2?}\n", self.elapsed));
        out.push_str(if self.is_clean() { "result: clean\n" } else { "result: VIOLATIONS\n" });
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CosetRecord {
    pub subgroup: Vec<String>,
    pub rep: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScanEntry {
    pub mask: u64,
    pub subset: Vec<String>,
    /// Least `k >= 2` with the subset k-closed, absent if none up to the bound.
    pub least_closedness: Option<usize>,
    pub closed_arities: Vec<usize>,
    /// Decomposition for subsets that are n-closed but not 2-closed.
    pub coset: Option<CosetRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScanTotals {
    pub classified: usize,
    pub two_closed: usize,
    pub closed_not_two_closed: usize,
    pub never_closed: usize,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScanReport {
    pub group: String,
    pub order: usize,
    pub n_range: [usize; 2],
    pub classified: Vec<ScanEntry>,
    pub totals: ScanTotals,
}

impl ScanReport {
    pub fn render_text(&self) -> String {
        let mut out = format!(
            "{} (order {}), arities {}..={}\n",
            self.group, self.order, self.n_range[0], self.n_range[1]
        );
        for e in &self.classified {
            let least = e.least_closedness.map_or("none".to_string(), |k| k.to_string());
            out.push_str(&format!("{{{}}}  least closedness {least}", e.subset.join(", ")));
            if let Some(c) = &e.coset {
                out.push_str(&format!("  = {} * {{{}}}", c.rep, c.subgroup.join(", ")));
            }
            out.push('\n');
            for v in &e.violations {
                out.push_str(&format!("  violation: {v}\n"));
            }
        }
        let t = &self.totals;
        out.push_str(&format!(
            "classified {}: 2-closed {}, n-closed only for n >= 3 {}, never closed {}, violations {}\n",
            t.classified, t.two_closed, t.closed_not_two_closed, t.never_closed, t.violations
        ));
        out
    }
}
