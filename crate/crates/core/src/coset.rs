//! Closedness of left cosets `L = aH` with `a` outside `H`.
//!
//! Such a coset is n-closed exactly when `aH = Ha` and `a^{n-1}` lies in
//! `H`. With `t` the least positive exponent putting `a` in `H`, a commuting
//! coset therefore has least closedness `t + 1` and is m-closed exactly for
//! `m ≡ 1 (mod t)`, `m > 1`. A non-commuting coset is never n-closed.

use num_integer::gcd;
use rand::Rng;

use crate::algebra::{commutes_index, translate_index, Side, Subgroup};
use crate::error::{Error, Result};
use crate::group::{Element, FiniteGroup, Magma};
use crate::nclosed::{ClosednessEngine, ProductSetEngine};
use crate::sampling::prefix_tuples;
use crate::subset::GSubset;
use crate::theorem::{TheoremId, Violation};

/// Tuple prefixes are enumerated exhaustively for cosets of at most this
/// many elements (and at most [`TUPLE_EXHAUSTIVE_LIMIT`] tuples).
pub const TUPLE_EXHAUSTIVE_COSET_SIZE: usize = 4;
pub const TUPLE_EXHAUSTIVE_LIMIT: u128 = 4096;
/// Sampled prefixes per check otherwise.
pub const TUPLE_SAMPLES: usize = 64;

/// Least `m >= 1` with `a^m` in `H`.
pub fn least_exponent(g: &FiniteGroup, a: usize, h: &Subgroup) -> usize {
    let mut m = 1;
    let mut acc = a;
    while !h.contains(acc) {
        acc = g.op(acc, a);
        m += 1;
    }
    m
}

fn check_rep(g: &FiniteGroup, a: Element, h: &Subgroup) -> Result<usize> {
    let a = g.index_of(a)?;
    h.carrier().check_owner(g)?;
    if h.contains(a) {
        return Err(Error::RepInSubgroup);
    }
    Ok(a)
}

/// Closedness analysis of one left coset.
#[derive(Debug, Clone)]
pub struct CosetReport {
    pub rep: usize,
    pub subgroup: Subgroup,
    pub coset: GSubset,
    /// `aH = Ha`.
    pub commutes: bool,
    /// Least `t >= 1` with `a^t` in `H`.
    pub least_exponent: usize,
    /// `t + 1` for commuting cosets; absent otherwise, for every arity.
    pub least_closedness: Option<usize>,
    /// Step of the closedness spectrum; equals `least_exponent` when present.
    pub spectrum_step: Option<usize>,
    pub violations: Vec<Violation>,
}

pub fn analyze_coset(g: &FiniteGroup, a: Element, h: &Subgroup) -> Result<CosetReport> {
    let a = check_rep(g, a, h)?;
    Ok(analyze_coset_index(g, a, h))
}

pub(crate) fn analyze_coset_index(g: &FiniteGroup, a: usize, h: &Subgroup) -> CosetReport {
    let coset = translate_index(g, a, h.carrier(), Side::Left);
    let commutes = commutes_index(g, a, h);
    let t = least_exponent(g, a, h);
    let mut violations = Vec::new();
    if commutes {
        if t < 2 {
            violations.push(Violation::new(
                TheoremId::T2_2_1,
                format!("least exponent of {} is {t}, so the coset would be 2-closed", g.label(a)),
            ));
        }
        for b in coset.iter() {
            let left = translate_index(g, b, h.carrier(), Side::Left);
            let right = translate_index(g, b, h.carrier(), Side::Right);
            if left != coset || right != coset {
                violations.push(Violation::new(
                    TheoremId::T2_2_2,
                    format!("{}H or H{} differs from {}H", g.label(b), g.label(b), g.label(a)),
                ));
            }
        }
        // n = t + 1, so the shift is by a^{t-1}.
        let shift = g.pow(a, (t - 1) as u64);
        let left = translate_index(g, shift, &coset, Side::Left);
        let right = translate_index(g, shift, &coset, Side::Right);
        if &left != h.carrier() || &right != h.carrier() {
            violations.push(Violation::new(
                TheoremId::T2_2_3,
                format!("a^{} L or L a^{} is not H for a = {}", t - 1, t - 1, g.label(a)),
            ));
        }
    }
    CosetReport {
        rep: a,
        subgroup: h.clone(),
        coset,
        commutes,
        least_exponent: t,
        least_closedness: commutes.then_some(t + 1),
        spectrum_step: commutes.then_some(t),
        violations,
    }
}

/// Checks that `b_1 * ... * b_{n-2} * L = L * b_1 * ... * b_{n-2} = H` for
/// prefixes drawn from `L`. Returns the number of prefixes checked.
pub fn check_tuple_shifts(
    g: &FiniteGroup,
    coset: &GSubset,
    h: &Subgroup,
    n: usize,
    rng: &mut impl Rng,
    violations: &mut Vec<Violation>,
) -> usize {
    let members = coset.indices();
    let limit = if members.len() <= TUPLE_EXHAUSTIVE_COSET_SIZE { TUPLE_EXHAUSTIVE_LIMIT } else { 0 };
    let prefixes = prefix_tuples(&members, n.saturating_sub(2), limit, TUPLE_SAMPLES, rng);
    for prefix in &prefixes {
        let p = g.product_of(prefix).unwrap_or(g.identity_index());
        let left = translate_index(g, p, coset, Side::Left);
        let right = translate_index(g, p, coset, Side::Right);
        if &left != h.carrier() || &right != h.carrier() {
            let labels: Vec<&str> = prefix.iter().map(|&x| g.label(x)).collect();
            violations.push(Violation::new(
                TheoremId::T2_2_3,
                format!("prefix ({}) does not shift {} onto H", labels.join(", "), coset.display(g)),
            ));
        }
    }
    prefixes.len()
}

/// Closedness spectrum `{c t + 1 : c >= 1}` of a commuting coset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumDescription {
    pub step: usize,
    pub offset: usize,
    /// Arities up to this bound were checked against the engine.
    pub verified_up_to: usize,
    pub violations: Vec<Violation>,
}

impl SpectrumDescription {
    pub fn contains(&self, m: usize) -> bool {
        m >= 2 && (m - self.offset).is_multiple_of(self.step)
    }

    pub fn describe(&self) -> String {
        format!("m ≡ 1 (mod {}), m ≥ {}", self.step, self.step + 1)
    }
}

pub fn closedness_spectrum(
    g: &FiniteGroup,
    a: Element,
    h: &Subgroup,
    verify_up_to: usize,
) -> Result<SpectrumDescription> {
    closedness_spectrum_with(&ProductSetEngine, g, a, h, verify_up_to)
}

pub fn closedness_spectrum_with(
    engine: &dyn ClosednessEngine,
    g: &FiniteGroup,
    a: Element,
    h: &Subgroup,
    verify_up_to: usize,
) -> Result<SpectrumDescription> {
    let a = check_rep(g, a, h)?;
    if !commutes_index(g, a, h) {
        return Err(Error::NonCommutingCoset);
    }
    let t = least_exponent(g, a, h);
    let mut spectrum = SpectrumDescription { step: t, offset: 1, verified_up_to: verify_up_to, violations: Vec::new() };
    let coset = translate_index(g, a, h.carrier(), Side::Left);
    let profile = engine.profile(g, &coset, verify_up_to.max(2))?;
    for m in 2..=verify_up_to {
        if profile[m] != spectrum.contains(m) {
            spectrum.violations.push(Violation::new(
                TheoremId::T2_2_5,
                format!(
                    "{} is {}{m}-closed but the step-{t} spectrum says otherwise",
                    coset.display(g),
                    if profile[m] { "" } else { "not " }
                ),
            ));
        }
    }
    Ok(spectrum)
}

/// Least `c` with `(a^m)^c` in `H`, from the gcd formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerExponent {
    /// Least `k >= 2` with `a^k` in `H`.
    pub k: usize,
    pub m: usize,
    /// `k / gcd(m, k)`.
    pub c: usize,
    pub violations: Vec<Violation>,
}

pub fn least_power_exponent(g: &FiniteGroup, a: Element, h: &Subgroup, m: usize) -> Result<PowerExponent> {
    let a = check_rep(g, a, h)?;
    if m == 0 {
        return Err(Error::InvalidArity { n: m, min: 1 });
    }
    let k = least_exponent(g, a, h);
    let c = k / gcd(m, k);
    let mut violations = Vec::new();
    let base = g.pow(a, m as u64);
    let searched = least_exponent(g, base, h);
    if searched != c {
        violations.push(Violation::new(
            TheoremId::L2_1,
            format!("least c for ({})^{m} is {searched}, formula gives {c}", g.label(a)),
        ));
    }
    let mut acc = g.identity_index();
    for f in 1..=2 * k {
        acc = g.op(acc, base);
        if h.contains(acc) != (f % c == 0) {
            violations.push(Violation::new(
                TheoremId::L2_1,
                format!("(a^{m})^{f} membership disagrees with divisibility by {c}"),
            ));
        }
    }
    Ok(PowerExponent { k, m, c, violations })
}

/// The coset `a^m H` with its least closedness `c + 1`.
#[derive(Debug, Clone)]
pub struct PowerCoset {
    pub m: usize,
    pub coset: GSubset,
    /// `(k - 1) / gcd(m, k - 1)` with `k` the least closedness of `aH`.
    pub c: usize,
    pub closedness: usize,
    pub violations: Vec<Violation>,
}

pub fn power_coset_closedness(g: &FiniteGroup, a: Element, h: &Subgroup, m: usize) -> Result<PowerCoset> {
    power_coset_closedness_with(&ProductSetEngine, g, a, h, m)
}

pub fn power_coset_closedness_with(
    engine: &dyn ClosednessEngine,
    g: &FiniteGroup,
    a: Element,
    h: &Subgroup,
    m: usize,
) -> Result<PowerCoset> {
    let a = check_rep(g, a, h)?;
    if m == 0 {
        return Err(Error::InvalidArity { n: m, min: 1 });
    }
    if !commutes_index(g, a, h) {
        return Err(Error::NonCommutingCoset);
    }
    let t = least_exponent(g, a, h);
    let c = t / gcd(m, t);
    let am = g.pow(a, m as u64);
    let coset = translate_index(g, am, h.carrier(), Side::Left);
    let bound = 3 * c + 1;
    let profile = engine.profile(g, &coset, bound)?;
    let mut violations = Vec::new();
    if !profile[c + 1] {
        violations.push(Violation::new(
            TheoremId::T2_3,
            format!("{} is not {}-closed", coset.display(g), c + 1),
        ));
    }
    if !h.contains(am) {
        if let Some(smaller) = (2..=c).find(|&f| profile[f]) {
            violations.push(Violation::new(
                TheoremId::T2_3,
                format!("{} is already {smaller}-closed, below {}", coset.display(g), c + 1),
            ));
        }
    }
    for f in 2..=bound {
        let predicted = (f - 1) % c == 0;
        if profile[f] != predicted {
            violations.push(Violation::new(
                TheoremId::T2_3,
                format!("{} at arity {f}: engine {} vs formula {predicted}", coset.display(g), profile[f]),
            ));
        }
    }
    Ok(PowerCoset { m, coset, c, closedness: c + 1, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::generated_subgroup;
    use crate::named::{cyclic, symmetric};
    use crate::nclosed::is_n_closed;

    fn subgroup(g: &FiniteGroup, gens: &[usize]) -> Subgroup {
        let gens: Vec<Element> = gens.iter().map(|&x| g.element(x).unwrap()).collect();
        generated_subgroup(g, &gens).unwrap()
    }

    fn el(g: &FiniteGroup, label: &str) -> Element {
        g.element(g.find_label(label).unwrap()).unwrap()
    }

    #[test]
    fn z9_coset() {
        let z9 = cyclic(9).unwrap();
        let h = subgroup(&z9, &[3]);
        let r = analyze_coset(&z9, z9.element(1).unwrap(), &h).unwrap();
        assert!(r.commutes);
        assert_eq!(r.least_exponent, 3);
        assert_eq!(r.least_closedness, Some(4));
        assert_eq!(r.spectrum_step, Some(3));
        assert!(r.violations.is_empty());
    }

    #[test]
    fn s3_coset_is_never_closed() {
        let s3 = symmetric(3).unwrap();
        let h = subgroup(&s3, &[s3.find_label("(1 2)").unwrap()]);
        let a = el(&s3, "(1 3)");
        let r = analyze_coset(&s3, a, &h).unwrap();
        assert!(!r.commutes);
        assert_eq!(r.least_closedness, None);
        assert_eq!(r.spectrum_step, None);
        assert!(h.contains(s3.pow(a.index(), 6)));
        assert_eq!(
            closedness_spectrum(&s3, a, &h, 10).unwrap_err(),
            Error::NonCommutingCoset
        );
        assert_eq!(analyze_coset(&s3, s3.identity(), &h).unwrap_err(), Error::RepInSubgroup);
    }

    #[test]
    fn z4_coset() {
        let z4 = cyclic(4).unwrap();
        let h = subgroup(&z4, &[2]);
        let r = analyze_coset(&z4, z4.element(1).unwrap(), &h).unwrap();
        assert_eq!((r.least_exponent, r.least_closedness), (2, Some(3)));
    }

    #[test]
    fn spectra() {
        let z9 = cyclic(9).unwrap();
        let h = subgroup(&z9, &[3]);
        let s = closedness_spectrum(&z9, z9.element(1).unwrap(), &h, 20).unwrap();
        assert_eq!(s.step, 3);
        assert!(s.violations.is_empty());
        let members: Vec<usize> = (2..=20).filter(|&m| s.contains(m)).collect();
        assert_eq!(members, vec![4, 7, 10, 13, 16, 19]);
        assert_eq!(s.describe(), "m ≡ 1 (mod 3), m ≥ 4");

        let z4 = cyclic(4).unwrap();
        let h = subgroup(&z4, &[2]);
        let s = closedness_spectrum(&z4, z4.element(1).unwrap(), &h, 20).unwrap();
        assert_eq!(s.step, 2);
        assert!((3..=20).all(|m| s.contains(m) == (m % 2 == 1)));

        // Index-2 normal subgroup: A3 in S3.
        let s3 = symmetric(3).unwrap();
        let a3 = subgroup(&s3, &[s3.find_label("(1 2 3)").unwrap()]);
        let s = closedness_spectrum(&s3, el(&s3, "(1 2)"), &a3, 12).unwrap();
        assert_eq!(s.step, 2);
        assert!(s.violations.is_empty());
    }

    #[test]
    fn lemma_formula_in_z12() {
        let z12 = cyclic(12).unwrap();
        let h = subgroup(&z12, &[6]);
        let one = z12.element(1).unwrap();
        for (m, c) in [(4, 3), (6, 1), (5, 6)] {
            let p = least_power_exponent(&z12, one, &h, m).unwrap();
            assert_eq!(p.k, 6);
            assert_eq!(p.c, c, "m = {m}");
            assert!(p.violations.is_empty());
        }
    }

    #[test]
    fn power_cosets() {
        let z9 = cyclic(9).unwrap();
        let h = subgroup(&z9, &[3]);
        let one = z9.element(1).unwrap();
        let p = power_coset_closedness(&z9, one, &h, 2).unwrap();
        assert_eq!(p.coset.indices(), vec![2, 5, 8]);
        assert_eq!(p.closedness, 4);
        assert!(p.violations.is_empty());
        let p = power_coset_closedness(&z9, one, &h, 3).unwrap();
        assert_eq!(&p.coset, h.carrier());
        assert_eq!(p.closedness, 2);
        assert!(p.violations.is_empty());

        let z12 = cyclic(12).unwrap();
        let h = subgroup(&z12, &[6]);
        let p = power_coset_closedness(&z12, z12.element(1).unwrap(), &h, 2).unwrap();
        assert_eq!(p.coset.indices(), vec![2, 8]);
        assert_eq!((p.c, p.closedness), (3, 4));
        assert!(is_n_closed(&z12, &p.coset, 4).unwrap());
        assert!(!is_n_closed(&z12, &p.coset, 2).unwrap());
        assert!(!is_n_closed(&z12, &p.coset, 3).unwrap());
        assert!(p.violations.is_empty());
    }

    #[test]
    fn tuple_shifts() {
        use rand::SeedableRng;
        let z12 = cyclic(12).unwrap();
        let h = subgroup(&z12, &[4]);
        let r = analyze_coset(&z12, z12.element(1).unwrap(), &h).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut violations = Vec::new();
        let n = r.least_closedness.unwrap();
        let checked = check_tuple_shifts(&z12, &r.coset, &h, n, &mut rng, &mut violations);
        assert_eq!(checked, 27);
        assert!(violations.is_empty());
    }
}
