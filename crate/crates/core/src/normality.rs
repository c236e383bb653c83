//! Normality through closed cosets.
//!
//! For a proper subgroup `H` of index `n` in a finite group, `H` is normal
//! exactly when every left coset `aH` with `a` outside `H` is
//! `(n + 1)`-closed, and exactly when every such coset is m-closed for some
//! `m >= 3`. Both verdicts here are decided by the closedness engine and then
//! compared with the conjugation test; they never consult it.

use crate::algebra::{commutes_index, index, is_normal_classic, left_cosets, translate_index, Side, Subgroup};
use crate::coset::least_exponent;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Magma};
use crate::nclosed::{ClosednessEngine, ProductSetEngine};
use crate::theorem::{TheoremId, Violation};

/// Outcome for one coset representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetCheck {
    pub rep: usize,
    /// Arity tested (index form) or the least witness found (existential
    /// form); `None` when no witness exists up to the bound.
    pub closedness_checked: Option<usize>,
    pub passed: bool,
}

#[derive(Debug, Clone)]
pub struct NormalityVerdict {
    pub subgroup: Subgroup,
    pub index: usize,
    pub verdict_classic: bool,
    pub verdict_via_closedness: bool,
    pub per_coset: Vec<CosetCheck>,
    pub agreement: bool,
    pub violations: Vec<Violation>,
}

fn require_proper(g: &FiniteGroup, h: &Subgroup) -> Result<()> {
    h.carrier().check_owner(g)?;
    if !h.is_proper(g) {
        return Err(Error::NotProperSubgroup);
    }
    Ok(())
}

/// Normal iff every outside coset is `(index + 1)`-closed.
pub fn normal_iff_index_plus_one(g: &FiniteGroup, h: &Subgroup) -> Result<NormalityVerdict> {
    normal_iff_index_plus_one_with(&ProductSetEngine, g, h)
}

pub fn normal_iff_index_plus_one_with(
    engine: &dyn ClosednessEngine,
    g: &FiniteGroup,
    h: &Subgroup,
) -> Result<NormalityVerdict> {
    require_proper(g, h)?;
    let n = index(g, h);
    let partition = left_cosets(g, h)?;
    let mut violations = Vec::new();
    let mut per_coset = Vec::new();
    for a in partition.outside_representatives() {
        let coset = translate_index(g, a, h.carrier(), Side::Left);
        let passed = engine.is_n_closed(g, &coset, n + 1)?;
        let fast = commutes_index(g, a, h) && h.contains(g.pow(a, n as u64));
        if passed != fast {
            violations.push(Violation::new(
                TheoremId::C2_2,
                format!(
                    "{} at arity {}: engine {passed}, commuting/power test {fast}",
                    coset.display(g),
                    n + 1
                ),
            ));
        }
        per_coset.push(CosetCheck { rep: a, closedness_checked: Some(n + 1), passed });
    }
    let verdict_via_closedness = per_coset.iter().all(|c| c.passed);
    let verdict_classic = is_normal_classic(g, h)?;
    if verdict_classic {
        // The quotient has order n, so a^n lands in H.
        if let Some(a) = (0..g.order()).find(|&a| !h.contains(a) && !h.contains(g.pow(a, n as u64))) {
            violations.push(Violation::new(
                TheoremId::T3_2,
                format!("H is normal of index {n} but {}^{n} is outside H", g.label(a)),
            ));
        }
    }
    let agreement = verdict_classic == verdict_via_closedness;
    if !agreement {
        let failing = per_coset.iter().find(|c| c.passed != verdict_classic).map(|c| c.rep);
        violations.push(Violation::new(
            TheoremId::T3_2,
            format!(
                "H = {} of index {n}: conjugation test {verdict_classic}, closed cosets {verdict_via_closedness}{}",
                h.carrier().display(g),
                failing.map(|a| format!(" (coset of {})", g.label(a))).unwrap_or_default()
            ),
        ));
    }
    Ok(NormalityVerdict {
        subgroup: h.clone(),
        index: n,
        verdict_classic,
        verdict_via_closedness,
        per_coset,
        agreement,
        violations,
    })
}

/// Default witness bound `|G| + 1` for the existential form; the least
/// witness `t + 1` never exceeds it because `t <= |a| <= |G|`.
pub fn default_witness_bound(g: &FiniteGroup) -> usize {
    g.order() + 1
}

/// Normal iff every outside coset is m-closed for some `m` in `[3, m_max]`.
pub fn normal_iff_existential(g: &FiniteGroup, h: &Subgroup, m_max: usize) -> Result<NormalityVerdict> {
    normal_iff_existential_with(&ProductSetEngine, g, h, m_max)
}

pub fn normal_iff_existential_with(
    engine: &dyn ClosednessEngine,
    g: &FiniteGroup,
    h: &Subgroup,
    m_max: usize,
) -> Result<NormalityVerdict> {
    require_proper(g, h)?;
    let n = index(g, h);
    let partition = left_cosets(g, h)?;
    let mut violations = Vec::new();
    let mut per_coset = Vec::new();
    for a in partition.outside_representatives() {
        let coset = translate_index(g, a, h.carrier(), Side::Left);
        let profile = engine.profile(g, &coset, m_max.max(2))?;
        if profile[2] {
            violations.push(Violation::new(
                TheoremId::T2_2_1,
                format!("coset {} reported 2-closed", coset.display(g)),
            ));
        }
        let witness = (3..=m_max).find(|&m| profile[m]);
        let t = least_exponent(g, a, h);
        let predicted = commutes_index(g, a, h).then_some(t + 1).filter(|&m| m <= m_max);
        if witness != predicted {
            violations.push(Violation::new(
                TheoremId::C2_2,
                format!("{}: least witness {witness:?}, commuting/power test predicts {predicted:?}", coset.display(g)),
            ));
        }
        if let Some(m) = witness {
            if (m - 1) % t != 0 {
                violations.push(Violation::new(
                    TheoremId::T3_1,
                    format!("witness {m} for {} is not 1 mod {t}", coset.display(g)),
                ));
            }
        }
        per_coset.push(CosetCheck { rep: a, closedness_checked: witness, passed: witness.is_some() });
    }
    let verdict_via_closedness = per_coset.iter().all(|c| c.passed);
    let verdict_classic = is_normal_classic(g, h)?;
    let agreement = verdict_classic == verdict_via_closedness;
    if !agreement {
        violations.push(Violation::new(
            TheoremId::T3_1,
            format!(
                "H = {}: conjugation test {verdict_classic}, witnesses up to {m_max} {verdict_via_closedness}",
                h.carrier().display(g)
            ),
        ));
    }
    Ok(NormalityVerdict {
        subgroup: h.clone(),
        index: n,
        verdict_classic,
        verdict_via_closedness,
        per_coset,
        agreement,
        violations,
    })
}
