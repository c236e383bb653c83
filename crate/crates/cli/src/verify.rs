//! Corpus-wide verification: every subgroup, every coset, every checked
//! statement, merged into one deterministic report.

use std::collections::BTreeMap;
use std::time::Instant;

use nclosed_core::algebra::{all_subgroups, is_normal_classic, left_cosets, Subgroup};
use nclosed_core::coset::{
    analyze_coset, check_tuple_shifts, closedness_spectrum_with, least_power_exponent, power_coset_closedness_with,
};
use nclosed_core::extract::{extract_subgroup_with_rng, semigroup_shift_2closed};
use nclosed_core::named::Family;
use nclosed_core::nclosed::{is_n_closed_oracle, n_closed_witness, ClosednessEngine, DEFAULT_TUPLE_BUDGET};
use nclosed_core::normality::{default_witness_bound, normal_iff_existential_with, normal_iff_index_plus_one_with};
use nclosed_core::parse::GroupSpec;
use nclosed_core::sampling::prefix_tuples;
use nclosed_core::theorem::{TheoremId, Violation};
use nclosed_core::{Error, FiniteGroup, FiniteSemigroup, GSubset, Magma};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::corpus::CorpusEntry;
use crate::report::{Certificate, GroupSummary, TheoremTally, VerificationReport};

/// Groups up to this order get every nonempty subset checked against the
/// extraction statements.
pub const EXHAUSTIVE_SUBSET_ORDER: usize = 10;
/// Arities for the exhaustive subset sweep.
pub const EXTRACTION_ARITIES: std::ops::RangeInclusive<usize> = 3..=5;
/// Arities for the coset closedness comparison.
pub const COSET_ARITIES: std::ops::RangeInclusive<usize> = 3..=10;
/// Spectra are compared with the engine up to this arity.
pub const SPECTRUM_BOUND: usize = 20;
/// Groups up to this order get every (subset, arity) pair cross-checked.
pub const ORACLE_EXHAUSTIVE_ORDER: usize = 6;
pub const ORACLE_ARITIES: std::ops::RangeInclusive<usize> = 2..=5;
/// Random (subset, arity) pairs per larger group.
pub const ORACLE_SAMPLES: usize = 48;
/// Multiplicative semigroups mod n are swept for cyclic corpus groups up to
/// this n.
pub const SEMIGROUP_MAX_MODULUS: usize = 10;

pub struct VerifyOptions<'a> {
    pub seed: u64,
    pub engine: &'a dyn ClosednessEngine,
}

fn quote(s: &str) -> String {
    format!("'{}'", s.replace('\'', "'\\''"))
}

fn labels(g: &impl Magma, xs: impl IntoIterator<Item = usize>) -> Vec<String> {
    xs.into_iter().map(|x| g.label(x).to_string()).collect()
}

/// Per-group accumulator.
struct Ledger<'a> {
    spec: &'a str,
    g: &'a FiniteGroup,
    tallies: BTreeMap<TheoremId, TheoremTally>,
    cross_checks: u64,
    mismatches: Vec<Certificate>,
}

impl<'a> Ledger<'a> {
    fn new(spec: &'a str, g: &'a FiniteGroup) -> Self {
        let tallies = TheoremId::ALL.iter().map(|&id| (id, TheoremTally::default())).collect();
        Ledger { spec, g, tallies, cross_checks: 0, mismatches: Vec::new() }
    }

    fn count(&mut self, id: TheoremId, by: u64) {
        self.tallies.get_mut(&id).expect("all ids present").checked += by;
    }

    fn push(&mut self, cert: Certificate) {
        let id = cert.theorem.expect("theorem certificates carry an id");
        self.tallies.get_mut(&id).expect("all ids present").violations.push(cert);
    }

    fn blank(&self, theorem: Option<TheoremId>, detail: String) -> Certificate {
        Certificate {
            theorem,
            group: self.spec.to_string(),
            subset: None,
            subgroup: None,
            rep: None,
            n: None,
            witness: None,
            detail,
            replay: String::new(),
        }
    }

    /// Certificate about the closedness of `d` at arity `n`, with a true
    /// witness attached when `d` is not n-closed.
    fn subset_cert(&self, theorem: Option<TheoremId>, d: &GSubset, n: usize, detail: String) -> Certificate {
        let g = self.g;
        let subset = labels(g, d.iter());
        let witness = n_closed_witness(g, d, n).ok().flatten().map(|w| labels(g, w));
        Certificate {
            subset: Some(subset.clone()),
            n: Some(n),
            witness,
            replay: format!("nclosed check {} --subset {} --n {n}", quote(self.spec), quote(&subset.join(","))),
            ..self.blank(theorem, detail)
        }
    }

    fn coset_cert(&self, v: &Violation, h: &Subgroup, a: usize) -> Certificate {
        let g = self.g;
        let subgroup = labels(g, h.carrier().iter());
        Certificate {
            subgroup: Some(subgroup.clone()),
            rep: Some(g.label(a).to_string()),
            replay: format!(
                "nclosed coset {} --subgroup {} --rep {}",
                quote(self.spec),
                quote(&subgroup.join(",")),
                quote(g.label(a))
            ),
            ..self.blank(Some(v.theorem), v.detail.clone())
        }
    }

    fn subgroup_cert(&self, v: &Violation, h: &Subgroup) -> Certificate {
        let subgroup = labels(self.g, h.carrier().iter());
        Certificate {
            subgroup: Some(subgroup.clone()),
            replay: format!("nclosed subgroups {}", quote(self.spec)),
            ..self.blank(Some(v.theorem), v.detail.clone())
        }
    }
}

struct GroupOutcome {
    tallies: BTreeMap<TheoremId, TheoremTally>,
    cross_checks: u64,
    mismatches: Vec<Certificate>,
    summary: GroupSummary,
}

fn group_rng(seed: u64, position: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(position as u64);
    rng
}

fn verify_cosets(ledger: &mut Ledger, h: &Subgroup, engine: &dyn ClosednessEngine, rng: &mut ChaCha8Rng) -> Result<usize, Error> {
    let g = ledger.g;
    let mut analyzed = 0;
    for a in left_cosets(g, h)?.outside_representatives() {
        analyzed += 1;
        let ea = g.element(a)?;
        let report = analyze_coset(g, ea, h)?;
        let coset = &report.coset;
        for v in &report.violations {
            let cert = ledger.coset_cert(v, h, a);
            ledger.push(cert);
        }

        // No proper coset is 2-closed.
        ledger.count(TheoremId::T2_2_1, 1);
        if engine.is_n_closed(g, coset, 2)? {
            let cert = ledger.subset_cert(Some(TheoremId::T2_2_1), coset, 2, "engine reports a proper coset 2-closed".into());
            ledger.push(cert);
        }

        for n in COSET_ARITIES {
            let engine_says = engine.is_n_closed(g, coset, n)?;
            let predicted = report.commutes && h.contains(g.pow(a, (n - 1) as u64));
            ledger.count(TheoremId::C2_2, 1);
            if engine_says != predicted {
                let detail = format!(
                    "{} = {}H at arity {n}: engine {engine_says}, commuting/power test {predicted}",
                    coset.display(g),
                    g.label(a)
                );
                let cert = ledger.subset_cert(Some(TheoremId::C2_2), coset, n, detail);
                ledger.push(cert);
            }
        }

        if !report.commutes {
            continue;
        }
        let t = report.least_exponent;
        ledger.count(TheoremId::T2_2_2, 1);

        let mut shift_violations = Vec::new();
        for n in [t + 1, 2 * t + 1] {
            check_tuple_shifts(g, coset, h, n, rng, &mut shift_violations);
            ledger.count(TheoremId::T2_2_3, 1);
        }
        for v in &shift_violations {
            let cert = ledger.coset_cert(v, h, a);
            ledger.push(cert);
        }

        for m in 1..=2 * g.order() {
            ledger.count(TheoremId::T2_2_4, 1);
            let inside = h.contains(g.pow(a, m as u64));
            if inside != (m % t == 0) {
                let v = Violation::new(
                    TheoremId::T2_2_4,
                    format!("{}^{m} in H is {inside} but the least exponent is {t}", g.label(a)),
                );
                let cert = ledger.coset_cert(&v, h, a);
                ledger.push(cert);
            }
        }

        let spectrum = closedness_spectrum_with(engine, g, ea, h, SPECTRUM_BOUND)?;
        ledger.count(TheoremId::T2_2_5, 1);
        for v in &spectrum.violations {
            let cert = ledger.coset_cert(v, h, a);
            ledger.push(cert);
        }

        for m in 1..=2 * t {
            let power = least_power_exponent(g, ea, h, m)?;
            ledger.count(TheoremId::L2_1, 1);
            for v in &power.violations {
                let cert = ledger.coset_cert(v, h, a);
                ledger.push(cert);
            }
            let coset_power = power_coset_closedness_with(engine, g, ea, h, m)?;
            ledger.count(TheoremId::T2_3, 1);
            for v in &coset_power.violations {
                let cert = ledger.coset_cert(v, h, a);
                ledger.push(cert);
            }
        }

        // Larger groups skip the exhaustive subset sweep; their commuting
        // cosets still go through extraction.
        if g.order() > EXHAUSTIVE_SUBSET_ORDER {
            check_extraction(ledger, coset, t + 1, engine, rng, Some(h))?;
        }
    }
    Ok(analyzed)
}

/// Extraction on a subset the engine reports n-closed and not 2-closed.
fn check_extraction(
    ledger: &mut Ledger,
    d: &GSubset,
    n: usize,
    engine: &dyn ClosednessEngine,
    rng: &mut ChaCha8Rng,
    expected: Option<&Subgroup>,
) -> Result<(), Error> {
    let g = ledger.g;
    if engine.is_n_closed(g, d, 2)? || !engine.is_n_closed(g, d, n)? {
        return Ok(());
    }
    ledger.count(TheoremId::T2_1, 1);
    ledger.count(TheoremId::C2_01, 1);
    match extract_subgroup_with_rng(g, d, n, rng) {
        Ok(x) => {
            for v in &x.violations {
                let cert = ledger.subset_cert(Some(v.theorem), d, n, v.detail.clone());
                ledger.push(cert);
            }
            if let Some(h) = expected {
                if x.extracted.carrier() != h.carrier() {
                    let detail = format!(
                        "extracted {} but the set is a coset of {}",
                        x.extracted.carrier().display(g),
                        h.carrier().display(g)
                    );
                    let cert = ledger.subset_cert(Some(TheoremId::C2_01), d, n, detail);
                    ledger.push(cert);
                }
            }
        }
        Err(Error::TheoremViolation(v)) => {
            let cert = ledger.subset_cert(Some(v.theorem), d, n, v.detail);
            ledger.push(cert);
        }
        Err(e) => {
            let detail = format!("engine reports {n}-closed and not 2-closed, extraction failed: {e}");
            let cert = ledger.subset_cert(Some(TheoremId::T2_1), d, n, detail);
            ledger.push(cert);
        }
    }
    Ok(())
}

fn exhaustive_extraction(ledger: &mut Ledger, engine: &dyn ClosednessEngine, rng: &mut ChaCha8Rng) -> Result<(), Error> {
    let g = ledger.g;
    for mask in 1u64..(1u64 << g.order()) {
        let d = GSubset::from_mask(g, mask);
        for n in EXTRACTION_ARITIES {
            check_extraction(ledger, &d, n, engine, rng, None)?;
        }
    }
    Ok(())
}

fn tuple_count(len: usize, n: usize) -> u128 {
    (len as u128).saturating_pow(n as u32)
}

fn cross_check(ledger: &mut Ledger, d: &GSubset, n: usize, engine: &dyn ClosednessEngine) -> Result<(), Error> {
    let engine_says = engine.is_n_closed(ledger.g, d, n)?;
    let oracle_says = is_n_closed_oracle(ledger.g, d, n)?;
    ledger.cross_checks += 1;
    if engine_says != oracle_says {
        let detail = format!("engine {engine_says}, tuple oracle {oracle_says}");
        let cert = ledger.subset_cert(None, d, n, detail);
        ledger.mismatches.push(cert);
    }
    Ok(())
}

fn engine_oracle(ledger: &mut Ledger, engine: &dyn ClosednessEngine, rng: &mut ChaCha8Rng) -> Result<(), Error> {
    let g = ledger.g;
    let order = g.order();
    if order <= ORACLE_EXHAUSTIVE_ORDER {
        for mask in 1u64..(1u64 << order) {
            let d = GSubset::from_mask(g, mask);
            for n in ORACLE_ARITIES {
                if tuple_count(d.len(), n) <= DEFAULT_TUPLE_BUDGET {
                    cross_check(ledger, &d, n, engine)?;
                }
            }
        }
        return Ok(());
    }
    let full = if order >= 64 { u64::MAX } else { (1u64 << order) - 1 };
    let mut done = 0;
    while done < ORACLE_SAMPLES {
        let d = GSubset::from_mask(g, rng.gen::<u64>() & full);
        let n = rng.gen_range(ORACLE_ARITIES);
        if d.is_empty() || tuple_count(d.len(), n) > DEFAULT_TUPLE_BUDGET {
            // Thin the subset so large groups still get coverage.
            let keep = rng.gen_range(1..=4usize);
            let thin = GSubset::from_indices(g, d.iter().take(keep)).expect("members are in range");
            if thin.is_empty() {
                continue;
            }
            cross_check(ledger, &thin, n, engine)?;
        } else {
            cross_check(ledger, &d, n, engine)?;
        }
        done += 1;
    }
    Ok(())
}

/// Shift sets in the multiplicative semigroup mod `modulus`.
fn semigroup_shifts(ledger: &mut Ledger, modulus: usize, engine: &dyn ClosednessEngine, rng: &mut ChaCha8Rng) -> Result<(), Error> {
    let s = FiniteSemigroup::multiplicative_mod(modulus)?;
    for mask in 1u64..(1u64 << modulus) {
        let d = GSubset::from_mask(&s, mask);
        if engine.is_n_closed(&s, &d, 2)? {
            continue;
        }
        for n in 3..=4 {
            if !engine.is_n_closed(&s, &d, n)? {
                continue;
            }
            let members = d.indices();
            for prefix in prefix_tuples(&members, n - 2, 256, 64, rng) {
                ledger.count(TheoremId::C2_1, 1);
                let subset = labels(&s, d.iter());
                let describe = |detail: String| Certificate {
                    subset: Some(subset.clone()),
                    n: Some(n),
                    witness: None,
                    replay: format!(
                        "multiplicative semigroup mod {modulus}: subset {{{}}}, n = {n}, prefix ({})",
                        subset.join(", "),
                        labels(&s, prefix.iter().copied()).join(", ")
                    ),
                    ..ledger.blank(Some(TheoremId::C2_1), detail)
                };
                match semigroup_shift_2closed(&s, &d, n, &prefix) {
                    Ok(shift) if shift.two_closed => {}
                    Ok(shift) => {
                        let (x, y) = shift.witness.expect("not 2-closed");
                        let mut cert = describe(format!(
                            "shift set {} is not 2-closed: {} * {} = {}",
                            shift.set.display(&s),
                            s.label(x),
                            s.label(y),
                            s.label(s.op(x, y))
                        ));
                        cert.witness = Some(labels(&s, [x, y]));
                        ledger.push(cert);
                    }
                    Err(e) => {
                        let cert = describe(format!("engine reports {n}-closed, shift check failed: {e}"));
                        ledger.push(cert);
                    }
                }
            }
        }
    }
    Ok(())
}

fn verify_group(entry: &CorpusEntry, position: usize, options: &VerifyOptions) -> Result<GroupOutcome, Error> {
    let g = &entry.group;
    let engine = options.engine;
    let mut rng = group_rng(options.seed, position);
    let mut ledger = Ledger::new(&entry.spec, g);

    let subgroups = all_subgroups(g);
    let mut normal_subgroups = 0;
    let mut cosets_analyzed = 0;
    for h in subgroups.iter() {
        if is_normal_classic(g, h)? {
            normal_subgroups += 1;
        }
        if !h.is_proper(g) {
            continue;
        }
        cosets_analyzed += verify_cosets(&mut ledger, h, engine, &mut rng)?;

        let by_index = normal_iff_index_plus_one_with(engine, g, h)?;
        ledger.count(TheoremId::T3_2, 1);
        for v in &by_index.violations {
            let cert = ledger.subgroup_cert(v, h);
            ledger.push(cert);
        }
        let existential = normal_iff_existential_with(engine, g, h, default_witness_bound(g))?;
        ledger.count(TheoremId::T3_1, 1);
        for v in &existential.violations {
            let cert = ledger.subgroup_cert(v, h);
            ledger.push(cert);
        }
    }

    if g.order() <= EXHAUSTIVE_SUBSET_ORDER {
        exhaustive_extraction(&mut ledger, engine, &mut rng)?;
    }
    engine_oracle(&mut ledger, engine, &mut rng)?;
    if let GroupSpec::Named { family: Family::Cyclic, parameter } = entry.ast {
        if (2..=SEMIGROUP_MAX_MODULUS).contains(&parameter) {
            semigroup_shifts(&mut ledger, parameter, engine, &mut rng)?;
        }
    }

    let summary = GroupSummary {
        spec: entry.spec.clone(),
        order: g.order(),
        subgroups: subgroups.len(),
        normal_subgroups,
        cosets_analyzed,
    };
    Ok(GroupOutcome { tallies: ledger.tallies, cross_checks: ledger.cross_checks, mismatches: ledger.mismatches, summary })
}

/// Runs every check over the corpus. Groups are processed in parallel on
/// the current rayon pool; results are merged in corpus order.
pub fn run_verify(corpus: &[CorpusEntry], options: &VerifyOptions) -> Result<VerificationReport, Error> {
    let start = Instant::now();
    let outcomes: Vec<GroupOutcome> = corpus
        .par_iter()
        .enumerate()
        .map(|(i, entry)| verify_group(entry, i, options))
        .collect::<Result<_, _>>()?;

    let mut per_theorem: BTreeMap<TheoremId, TheoremTally> =
        TheoremId::ALL.iter().map(|&id| (id, TheoremTally::default())).collect();
    let mut cross_checks = 0;
    let mut mismatches = Vec::new();
    let mut groups = Vec::new();
    for outcome in outcomes {
        for (id, tally) in outcome.tallies {
            let slot = per_theorem.get_mut(&id).expect("all ids present");
            slot.checked += tally.checked;
            slot.violations.extend(tally.violations);
        }
        cross_checks += outcome.cross_checks;
        mismatches.extend(outcome.mismatches);
        groups.push(outcome.summary);
    }
    let total_violations = per_theorem.values().map(|t| t.violations.len()).sum::<usize>() + mismatches.len();
    Ok(VerificationReport {
        corpus: corpus.iter().map(|e| e.spec.clone()).collect(),
        seed: options.seed,
        engine: options.engine.name().to_string(),
        per_theorem,
        engine_oracle_cross_checks: cross_checks,
        engine_oracle_mismatches: mismatches,
        groups,
        total_violations,
        elapsed: start.elapsed(),
    })
}
