//! Subgroups hiding inside finite n-closed sets, and the semigroup analogue.
//!
//! If a finite `D` is n-closed for some `n >= 3` but not 2-closed, every
//! shift `d_1 * ... * d_{n-2} * D` (all `d_i` in `D`) is one and the same
//! subgroup `H`, and `D` is a left coset of it. In a semigroup the shifts are
//! still 2-closed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{is_subgroup, translate_index, Side, Subgroup};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Magma};
use crate::nclosed::{is_n_closed, n_closed_witness};
use crate::sampling::prefix_tuples;
use crate::subset::GSubset;
use crate::theorem::{TheoremId, Violation};

/// Prefixes are enumerated exhaustively up to this many tuples.
pub const PREFIX_EXHAUSTIVE_LIMIT: u128 = 256;
pub const PREFIX_SAMPLES: usize = 64;

#[derive(Debug, Clone)]
pub struct SubgroupExtraction {
    pub input: GSubset,
    pub n: usize,
    /// `d^{n-2} * D`.
    pub extracted: Subgroup,
    /// The `d` used: the least index in `D`.
    pub witness: usize,
    /// Least `b` with `D = b * H`.
    pub coset_rep: usize,
    /// Number of prefixes `d_1 ... d_{n-2}` compared against `H`.
    pub prefixes_checked: usize,
    pub violations: Vec<Violation>,
}

pub fn extract_subgroup(g: &FiniteGroup, d: &GSubset, n: usize) -> Result<SubgroupExtraction> {
    extract_subgroup_with_rng(g, d, n, &mut ChaCha8Rng::seed_from_u64(0))
}

pub fn extract_subgroup_with_rng(
    g: &FiniteGroup,
    d: &GSubset,
    n: usize,
    rng: &mut impl Rng,
) -> Result<SubgroupExtraction> {
    d.check_owner(g)?;
    if d.is_empty() {
        return Err(Error::EmptySubset);
    }
    if n < 3 {
        return Err(Error::InvalidArity { n, min: 3 });
    }
    if is_n_closed(g, d, 2)? {
        return Err(Error::AlreadyClosed);
    }
    if !is_n_closed(g, d, n)? {
        return Err(Error::NotNClosed { n });
    }
    let witness = d.first().expect("nonempty");
    let shift = |x: usize| translate_index(g, g.pow(x, (n - 2) as u64), d, Side::Left);
    let carrier = shift(witness);
    if !is_subgroup(g, &carrier)? {
        return Err(Error::TheoremViolation(Violation::new(
            TheoremId::T2_1,
            format!("{} shifted by {}^{} is {}, not a subgroup", d.display(g), g.label(witness), n - 2, carrier.display(g)),
        )));
    }
    let extracted = Subgroup::new(g, carrier)?.expect("checked above");
    let mut violations = Vec::new();

    let coset_rep = d.iter().find(|&b| &translate_index(g, b, extracted.carrier(), Side::Left) == d);
    let coset_rep = match coset_rep {
        Some(b) => b,
        None => {
            violations.push(Violation::new(
                TheoremId::C2_01,
                format!("{} is not a left coset of {}", d.display(g), extracted.carrier().display(g)),
            ));
            witness
        }
    };

    for other in d.iter() {
        let h = shift(other);
        if &h != extracted.carrier() {
            violations.push(Violation::new(
                TheoremId::T2_1,
                format!("{}^{} * D = {} differs from {}", g.label(other), n - 2, h.display(g), extracted.carrier().display(g)),
            ));
        }
    }

    let members = d.indices();
    let prefixes = prefix_tuples(&members, n - 2, PREFIX_EXHAUSTIVE_LIMIT, PREFIX_SAMPLES, rng);
    for prefix in &prefixes {
        let p = g.product_of(prefix).expect("n - 2 >= 1");
        let h = translate_index(g, p, d, Side::Left);
        if &h != extracted.carrier() {
            let labels: Vec<&str> = prefix.iter().map(|&x| g.label(x)).collect();
            violations.push(Violation::new(
                TheoremId::T2_1,
                format!("({}) * D = {} differs from {}", labels.join(", "), h.display(g), extracted.carrier().display(g)),
            ));
        }
        // D = b * (prefix * D) for every b in D.
        for &b in &members {
            if &translate_index(g, b, &h, Side::Left) != d {
                violations.push(Violation::new(
                    TheoremId::T2_1,
                    format!("{} * ({}) * D differs from D", g.label(b), prefix.iter().map(|&x| g.label(x)).collect::<Vec<_>>().join(", ")),
                ));
                break;
            }
        }
    }

    Ok(SubgroupExtraction {
        input: d.clone(),
        n,
        extracted,
        witness,
        coset_rep,
        prefixes_checked: prefixes.len(),
        violations,
    })
}

/// A shifted set `d_1 * ... * d_{n-2} * D` and whether it is 2-closed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftSet {
    pub set: GSubset,
    pub two_closed: bool,
    /// A pair of members whose product leaves the set.
    pub witness: Option<(usize, usize)>,
}

pub fn semigroup_shift_2closed(
    owner: &(impl Magma + ?Sized),
    d: &GSubset,
    n: usize,
    prefix: &[usize],
) -> Result<ShiftSet> {
    d.check_owner(owner)?;
    if d.is_empty() {
        return Err(Error::EmptySubset);
    }
    if n < 3 {
        return Err(Error::InvalidArity { n, min: 3 });
    }
    if prefix.len() != n - 2 {
        return Err(Error::PrefixLength { len: prefix.len(), expected: n - 2 });
    }
    if let Some(&bad) = prefix.iter().find(|&&x| !d.contains(x)) {
        return Err(Error::PrefixNotInD { index: bad });
    }
    if !is_n_closed(owner, d, n)? {
        return Err(Error::NotNClosed { n });
    }
    let p = owner.product_of(prefix).expect("prefix is nonempty");
    let set = translate_index(owner, p, d, Side::Left);
    let witness = n_closed_witness(owner, &set, 2)?.map(|w| (w[0], w[1]));
    Ok(ShiftSet { set, two_closed: witness.is_none(), witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteSemigroup;
    use crate::named::{cyclic, symmetric};

    fn set(g: &(impl Magma + ?Sized), indices: &[usize]) -> GSubset {
        GSubset::from_indices(g, indices.iter().copied()).unwrap()
    }

    #[test]
    fn z4_odd() {
        let z4 = cyclic(4).unwrap();
        let d = set(&z4, &[1, 3]);
        let x = extract_subgroup(&z4, &d, 3).unwrap();
        assert_eq!(x.extracted.carrier().indices(), vec![0, 2]);
        assert_eq!(x.coset_rep, 1);
        assert!(x.violations.is_empty());
    }

    #[test]
    fn z9_residue_class() {
        let z9 = cyclic(9).unwrap();
        let d = set(&z9, &[1, 4, 7]);
        let x = extract_subgroup(&z9, &d, 4).unwrap();
        assert_eq!(x.extracted.carrier().indices(), vec![0, 3, 6]);
        assert_eq!(x.coset_rep, 1);
        assert_eq!(x.prefixes_checked, 9);
        assert!(x.violations.is_empty());
        assert_eq!(extract_subgroup(&z9, &d, 3).unwrap_err(), Error::NotNClosed { n: 3 });
    }

    #[test]
    fn s3_involution() {
        let s3 = symmetric(3).unwrap();
        let t = s3.find_label("(1 2)").unwrap();
        let x = extract_subgroup(&s3, &set(&s3, &[t]), 3).unwrap();
        assert_eq!(x.extracted.order(), 1);
        assert_eq!(x.coset_rep, t);
    }

    #[test]
    fn rejects_closed_and_empty() {
        let z4 = cyclic(4).unwrap();
        assert_eq!(extract_subgroup(&z4, &set(&z4, &[0, 2]), 3).unwrap_err(), Error::AlreadyClosed);
        assert_eq!(extract_subgroup(&z4, &GSubset::empty(&z4), 3).unwrap_err(), Error::EmptySubset);
    }

    #[test]
    fn semigroup_shifts() {
        let s = FiniteSemigroup::multiplicative_mod(6).unwrap();
        let d = set(&s, &[3, 5]);
        let by3 = semigroup_shift_2closed(&s, &d, 3, &[3]).unwrap();
        assert_eq!(by3.set.indices(), vec![3]);
        assert!(by3.two_closed);
        let by5 = semigroup_shift_2closed(&s, &d, 3, &[5]).unwrap();
        assert_eq!(by5.set.indices(), vec![1, 3]);
        assert!(by5.two_closed);
        assert_eq!(semigroup_shift_2closed(&s, &d, 3, &[1]).unwrap_err(), Error::PrefixNotInD { index: 1 });
        assert_eq!(
            semigroup_shift_2closed(&s, &set(&s, &[3, 4]), 3, &[3]).unwrap_err(),
            Error::NotNClosed { n: 3 }
        );

        let z4 = cyclic(4).unwrap();
        let shifted = semigroup_shift_2closed(&z4, &set(&z4, &[1, 3]), 3, &[1]).unwrap();
        assert_eq!(shifted.set.indices(), vec![0, 2]);
        assert!(shifted.two_closed);
    }
}
