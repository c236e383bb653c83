//! Product sets, translates, subgroups and cosets inside a fixed finite group.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{Element, FiniteGroup, Magma};
use crate::subset::GSubset;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `{a * b : a in A, b in B}`.
pub fn product_set(owner: &(impl Magma + ?Sized), a: &GSubset, b: &GSubset) -> Result<GSubset> {
    a.check_owner(owner)?;
    b.check_owner(owner)?;
    Ok(product_unchecked(owner, a, b))
}

pub(crate) fn product_unchecked(owner: &(impl Magma + ?Sized), a: &GSubset, b: &GSubset) -> GSubset {
    let mut out = FixedBitSet::with_capacity(owner.order());
    let right: Vec<usize> = b.iter().collect();
    for x in a.iter() {
        for &y in &right {
            out.insert(owner.op(x, y));
        }
    }
    GSubset::with_bits(owner.structure_id(), out)
}

/// `x * A` (left) or `A * x` (right).
pub fn translate(owner: &(impl Magma + ?Sized), x: Element, a: &GSubset, side: Side) -> Result<GSubset> {
    let x = owner.index_of(x)?;
    a.check_owner(owner)?;
    Ok(translate_index(owner, x, a, side))
}

pub(crate) fn translate_index(owner: &(impl Magma + ?Sized), x: usize, a: &GSubset, side: Side) -> GSubset {
    let mut out = FixedBitSet::with_capacity(owner.order());
    for y in a.iter() {
        out.insert(match side {
            Side::Left => owner.op(x, y),
            Side::Right => owner.op(y, x),
        });
    }
    GSubset::with_bits(owner.structure_id(), out)
}

/// Nonempty, contains the identity, closed under products and inverses.
pub fn is_subgroup(g: &FiniteGroup, a: &GSubset) -> Result<bool> {
    a.check_owner(g)?;
    Ok(is_subgroup_unchecked(g, a))
}

fn is_subgroup_unchecked(g: &FiniteGroup, a: &GSubset) -> bool {
    if !a.contains(g.identity_index()) {
        return false;
    }
    let members = a.indices();
    members.iter().all(|&x| a.contains(g.inv(x)))
        && members.iter().all(|&x| members.iter().all(|&y| a.contains(g.op(x, y))))
}

/// A subset certified to be a subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    carrier: GSubset,
}

impl Subgroup {
    /// `None` unless `carrier` passes [`is_subgroup`].
    pub fn new(g: &FiniteGroup, carrier: GSubset) -> Result<Option<Subgroup>> {
        Ok(is_subgroup(g, &carrier)?.then_some(Subgroup { carrier }))
    }

    pub fn whole(g: &FiniteGroup) -> Subgroup {
        Subgroup { carrier: GSubset::full(g) }
    }

    pub fn trivial(g: &FiniteGroup) -> Subgroup {
        let mut carrier = GSubset::empty(g);
        carrier.insert(g.identity_index());
        Subgroup { carrier }
    }

    pub fn carrier(&self) -> &GSubset {
        &self.carrier
    }

    pub fn order(&self) -> usize {
        self.carrier.len()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.carrier.contains(index)
    }

    pub fn is_proper(&self, g: &FiniteGroup) -> bool {
        self.order() < g.order()
    }
}

/// Closure of the generator indices under multiplication.
fn closure(g: &FiniteGroup, gens: &[usize]) -> FixedBitSet {
    let mut seen = FixedBitSet::with_capacity(g.order());
    let mut queue = vec![g.identity_index()];
    seen.insert(g.identity_index());
    while let Some(x) = queue.pop() {
        for &s in gens {
            let y = g.op(x, s);
            if !seen.put(y) {
                queue.push(y);
            }
        }
    }
    seen
}

/// Least subgroup containing every generator.
pub fn generated_subgroup(g: &FiniteGroup, gens: &[Element]) -> Result<Subgroup> {
    if gens.is_empty() {
        return Err(Error::NoGenerators);
    }
    let gens = gens.iter().map(|&x| g.index_of(x)).collect::<Result<Vec<_>>>()?;
    Ok(generated_by_indices(g, &gens))
}

pub(crate) fn generated_by_indices(g: &FiniteGroup, gens: &[usize]) -> Subgroup {
    Subgroup { carrier: GSubset::with_bits(g.structure_id(), closure(g, gens)) }
}

/// Partition of `G` into the left cosets of one subgroup.
#[derive(Debug, Clone)]
pub struct CosetPartition {
    pub subgroup: Subgroup,
    pub cosets: Vec<GSubset>,
    /// Least element index of each coset, aligned with `cosets`.
    pub representatives: Vec<usize>,
}

impl CosetPartition {
    pub fn index(&self) -> usize {
        self.cosets.len()
    }

    /// Representatives of the cosets other than `H` itself.
    pub fn outside_representatives(&self) -> impl Iterator<Item = usize> + '_ {
        self.representatives.iter().copied().filter(|&r| !self.subgroup.contains(r))
    }
}

pub fn left_cosets(g: &FiniteGroup, h: &Subgroup) -> Result<CosetPartition> {
    h.carrier().check_owner(g)?;
    let mut covered = GSubset::empty(g);
    let mut cosets = Vec::new();
    let mut representatives = Vec::new();
    for x in 0..g.order() {
        if covered.contains(x) {
            continue;
        }
        let coset = translate_index(g, x, h.carrier(), Side::Left);
        covered.union_with(&coset);
        cosets.push(coset);
        representatives.push(x);
    }
    Ok(CosetPartition { subgroup: h.clone(), cosets, representatives })
}

/// Number of left cosets, `|G| / |H|`.
pub fn index(g: &FiniteGroup, h: &Subgroup) -> usize {
    g.order() / h.order()
}

/// Conjugation sweep: `g h g^-1` in `H` for every `g` and `h`.
pub fn is_normal_classic(g: &FiniteGroup, h: &Subgroup) -> Result<bool> {
    h.carrier().check_owner(g)?;
    let members = h.carrier().indices();
    Ok((0..g.order())
        .all(|x| members.iter().all(|&m| h.contains(g.op(g.op(x, m), g.inv(x))))))
}

/// `aH = Ha` as sets.
pub fn coset_commutes(g: &FiniteGroup, a: Element, h: &Subgroup) -> Result<bool> {
    let a = g.index_of(a)?;
    h.carrier().check_owner(g)?;
    Ok(commutes_index(g, a, h))
}

pub(crate) fn commutes_index(g: &FiniteGroup, a: usize, h: &Subgroup) -> bool {
    translate_index(g, a, h.carrier(), Side::Left) == translate_index(g, a, h.carrier(), Side::Right)
}

/// Every subgroup of `g`, ordered by size and then by member indices.
///
/// Starts from the cyclic subgroups and repeatedly joins each known subgroup
/// with one more element. Every subgroup arises from a chain
/// `<g1> <= <g1, g2> <= ...`, so the sweep is complete.
pub fn all_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let n = g.order();
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut found: Vec<(FixedBitSet, Vec<usize>)> = Vec::new();
    for x in 0..n {
        let bits = closure(g, &[x]);
        if seen.insert(bits.clone()) {
            found.push((bits, vec![x]));
        }
    }
    let mut i = 0;
    while i < found.len() {
        let (bits, gens) = found[i].clone();
        for x in 0..n {
            if bits.contains(x) {
                continue;
            }
            let mut next_gens = gens.clone();
            next_gens.push(x);
            let next = closure(g, &next_gens);
            if seen.insert(next.clone()) {
                found.push((next, next_gens));
            }
        }
        i += 1;
    }
    let mut subgroups: Vec<Subgroup> = found
        .into_iter()
        .map(|(bits, _)| Subgroup { carrier: GSubset::with_bits(g.structure_id(), bits) })
        .collect();
    subgroups.sort_by(|a, b| {
        a.order().cmp(&b.order()).then_with(|| a.carrier().indices().cmp(&b.carrier().indices()))
    });
    subgroups
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::{cyclic, dihedral, quaternion, symmetric};
    use crate::perm::Permutation;

    fn set(g: &(impl Magma + ?Sized), indices: &[usize]) -> GSubset {
        GSubset::from_indices(g, indices.iter().copied()).unwrap()
    }

    fn s3_set(s3: &FiniteGroup, labels: &[&str]) -> GSubset {
        set(s3, &labels.iter().map(|l| s3.find_label(l).unwrap()).collect::<Vec<_>>())
    }

    #[test]
    fn product_sets() {
        let z4 = cyclic(4).unwrap();
        let odd = set(&z4, &[1, 3]);
        assert_eq!(product_set(&z4, &odd, &odd).unwrap(), set(&z4, &[0, 2]));
        let e = set(&z4, &[0]);
        assert_eq!(product_set(&z4, &odd, &e).unwrap(), odd);
        let s3 = symmetric(3).unwrap();
        let p = product_set(&s3, &s3_set(&s3, &["(1 2)"]), &s3_set(&s3, &["(1 3)"])).unwrap();
        assert_eq!(p, s3_set(&s3, &["(1 3 2)"]));
        let other = cyclic(4).unwrap();
        assert_eq!(product_set(&other, &odd, &odd).unwrap_err(), Error::MixedStructures);
    }

    #[test]
    fn translates() {
        let z4 = cyclic(4).unwrap();
        let h = set(&z4, &[0, 2]);
        let one = z4.element(1).unwrap();
        assert_eq!(translate(&z4, one, &h, Side::Left).unwrap(), set(&z4, &[1, 3]));
        assert_eq!(translate(&z4, z4.identity(), &h, Side::Right).unwrap(), h);

        let s3 = symmetric(3).unwrap();
        let h = s3_set(&s3, &["e", "(1 2)"]);
        let a = s3.element(s3.find_label("(1 3)").unwrap()).unwrap();
        assert_eq!(translate(&s3, a, &h, Side::Left).unwrap(), s3_set(&s3, &["(1 3)", "(1 2 3)"]));
        assert_ne!(translate(&s3, a, &h, Side::Right).unwrap(), s3_set(&s3, &["(1 3)", "(1 2 3)"]));
    }

    #[test]
    fn subgroup_checks() {
        let z4 = cyclic(4).unwrap();
        assert!(is_subgroup(&z4, &set(&z4, &[0, 2])).unwrap());
        assert!(!is_subgroup(&z4, &set(&z4, &[1, 3])).unwrap());
        assert!(!is_subgroup(&z4, &GSubset::empty(&z4)).unwrap());
        let s3 = symmetric(3).unwrap();
        assert!(is_subgroup(&s3, &s3_set(&s3, &["e", "(1 2)"])).unwrap());
    }

    #[test]
    fn generation() {
        let s3 = symmetric(3).unwrap();
        let t = s3.element(s3.find_label("(1 2)").unwrap()).unwrap();
        let c = s3.element(s3.find_label("(1 2 3)").unwrap()).unwrap();
        assert_eq!(generated_subgroup(&s3, &[t]).unwrap().order(), 2);
        assert_eq!(generated_subgroup(&s3, &[t, c]).unwrap().order(), 6);
        assert_eq!(generated_subgroup(&s3, &[s3.identity()]).unwrap().order(), 1);
        assert_eq!(generated_subgroup(&s3, &[]).unwrap_err(), Error::NoGenerators);
    }

    #[test]
    fn generated_subgroup_is_minimal() {
        // No proper subset containing the generators is a subgroup.
        for g in [cyclic(12).unwrap(), dihedral(4).unwrap(), dihedral(6).unwrap()] {
            let n = g.order();
            for x in 0..n {
                let h = generated_by_indices(&g, &[x]);
                assert!(is_subgroup(&g, h.carrier()).unwrap());
                let members = h.carrier().indices();
                let free: Vec<usize> = members.iter().copied().filter(|&m| m != x).collect();
                for mask in 0..(1u64 << free.len()) - 1 {
                    let mut s = set(&g, &[x]);
                    for (i, &m) in free.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            s.insert(m);
                        }
                    }
                    assert!(!is_subgroup(&g, &s).unwrap());
                }
            }
        }
    }

    #[test]
    fn coset_partitions() {
        let s3 = symmetric(3).unwrap();
        let h = Subgroup::new(&s3, s3_set(&s3, &["e", "(1 2)"])).unwrap().unwrap();
        assert_eq!(left_cosets(&s3, &h).unwrap().index(), 3);
        assert_eq!(left_cosets(&s3, &Subgroup::whole(&s3)).unwrap().index(), 1);

        let z9 = cyclic(9).unwrap();
        let h = Subgroup::new(&z9, set(&z9, &[0, 3, 6])).unwrap().unwrap();
        let p = left_cosets(&z9, &h).unwrap();
        assert_eq!(p.cosets, vec![set(&z9, &[0, 3, 6]), set(&z9, &[1, 4, 7]), set(&z9, &[2, 5, 8])]);
        assert_eq!(p.representatives, vec![0, 1, 2]);
        assert_eq!(index(&z9, &h), 3);
    }

    #[test]
    fn classic_normality() {
        let s3 = symmetric(3).unwrap();
        let a3 = Subgroup::new(&s3, s3_set(&s3, &["e", "(1 2 3)", "(1 3 2)"])).unwrap().unwrap();
        assert!(is_normal_classic(&s3, &a3).unwrap());
        let h = Subgroup::new(&s3, s3_set(&s3, &["e", "(1 2)"])).unwrap().unwrap();
        assert!(!is_normal_classic(&s3, &h).unwrap());
        let z12 = cyclic(12).unwrap();
        assert!(all_subgroups(&z12).iter().all(|h| is_normal_classic(&z12, h).unwrap()));
    }

    #[test]
    fn commuting_cosets() {
        let s3 = symmetric(3).unwrap();
        let h = Subgroup::new(&s3, s3_set(&s3, &["e", "(1 2)"])).unwrap().unwrap();
        let a = s3.element(s3.find_label("(1 3)").unwrap()).unwrap();
        assert!(!coset_commutes(&s3, a, &h).unwrap());
        let z9 = cyclic(9).unwrap();
        let h = Subgroup::new(&z9, set(&z9, &[0, 3, 6])).unwrap().unwrap();
        assert!(coset_commutes(&z9, z9.element(1).unwrap(), &h).unwrap());
    }

    #[test]
    fn subgroup_counts() {
        // Known subgroup counts.
        let a4 = crate::named::permutation_group(
            4,
            &[Permutation::cycle(4, &[1, 2, 3]), Permutation::cycle(4, &[2, 3, 4])],
        )
        .unwrap();
        let cases = [
            (symmetric(3).unwrap(), 6),
            (symmetric(4).unwrap(), 30),
            (cyclic(12).unwrap(), 6),
            (dihedral(4).unwrap(), 10),
            (quaternion(8).unwrap(), 6),
            (a4, 10),
            (crate::named::direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap(), 5),
        ];
        for (g, count) in cases {
            let subs = all_subgroups(&g);
            assert_eq!(subs.len(), count, "{g}");
            assert!(subs.iter().all(|h| is_subgroup(&g, h.carrier()).unwrap()));
            assert!(subs.iter().all(|h| g.order() % h.order() == 0));
        }
    }

    #[test]
    fn subgroup_enumeration_matches_brute_force() {
        // Every subset of a small group, tested directly.
        for g in [cyclic(8).unwrap(), dihedral(4).unwrap(), quaternion(8).unwrap(), dihedral(5).unwrap()] {
            let brute: Vec<u64> = (1u64..1 << g.order())
                .filter(|&m| is_subgroup(&g, &GSubset::from_mask(&g, m)).unwrap())
                .collect();
            let mut found: Vec<u64> = all_subgroups(&g).iter().map(|h| h.carrier().mask()).collect();
            found.sort_unstable();
            assert_eq!(found, brute);
        }
    }
}
