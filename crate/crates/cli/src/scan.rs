//! Exhaustive classification of every nonempty subset of a small group.

use nclosed_core::extract::extract_subgroup;
use nclosed_core::nclosed::ClosednessProfile;
use nclosed_core::{FiniteGroup, GSubset, Magma};
use rayon::prelude::*;

use crate::corpus::InputError;
use crate::report::{CosetRecord, ScanEntry, ScanReport, ScanTotals};

/// `2^order - 1` subsets are enumerated, so the order is capped.
pub const SCAN_MAX_ORDER: usize = 14;

fn classify(g: &FiniteGroup, mask: u64, n_max: usize) -> ScanEntry {
    let d = GSubset::from_mask(g, mask);
    let profile = ClosednessProfile::compute(g, &d, n_max).expect("nonempty subset, n_max >= 2");
    let least = profile.least_from(2);
    let mut coset = None;
    let mut violations = Vec::new();
    if let Some(k) = least.filter(|&k| k >= 3) {
        match extract_subgroup(g, &d, k) {
            Ok(x) => {
                coset = Some(CosetRecord {
                    subgroup: x.extracted.carrier().labels(g).into_iter().map(String::from).collect(),
                    rep: g.label(x.coset_rep).to_string(),
                });
                violations.extend(x.violations.iter().map(|v| format!("{}: {}", v.theorem, v.detail)));
            }
            Err(e) => violations.push(e.to_string()),
        }
    }
    ScanEntry {
        mask,
        subset: d.labels(g).into_iter().map(String::from).collect(),
        least_closedness: least,
        closed_arities: profile.closed_arities(),
        coset,
        violations,
    }
}

/// Classifies every nonempty subset for arities `2..=n_max`, in parallel,
/// sorted by bitmap.
pub fn run_scan(spec: &str, g: &FiniteGroup, n_max: usize) -> Result<ScanReport, InputError> {
    if g.order() > SCAN_MAX_ORDER {
        return Err(InputError::TooLarge { spec: spec.into(), order: g.order(), max: SCAN_MAX_ORDER });
    }
    if n_max < 2 {
        return Err(InputError::Invalid(format!("--max-n must be at least 2, got {n_max}")));
    }
    let classified: Vec<ScanEntry> =
        (1u64..(1u64 << g.order())).into_par_iter().map(|mask| classify(g, mask, n_max)).collect();
    let mut totals = ScanTotals { classified: classified.len(), ..ScanTotals::default() };
    for e in &classified {
        match e.least_closedness {
            Some(2) => totals.two_closed += 1,
            Some(_) => totals.closed_not_two_closed += 1,
            None => totals.never_closed += 1,
        }
        totals.violations += e.violations.len();
    }
    Ok(ScanReport { group: spec.to_string(), order: g.order(), n_range: [2, n_max], classified, totals })
}
