use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{Magma, StructureId};

/// Membership bitmap over the element indices of one group or semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GSubset {
    owner: StructureId,
    members: FixedBitSet,
}

impl GSubset {
    pub fn empty(owner: &(impl Magma + ?Sized)) -> Self {
        GSubset { owner: owner.structure_id(), members: FixedBitSet::with_capacity(owner.order()) }
    }

    pub fn full(owner: &(impl Magma + ?Sized)) -> Self {
        let mut s = Self::empty(owner);
        s.members.insert_range(..);
        s
    }

    pub fn from_indices(owner: &(impl Magma + ?Sized), indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(owner);
        for i in indices {
            if i >= owner.order() {
                return Err(Error::IndexOutOfRange { index: i, order: owner.order() });
            }
            s.members.insert(i);
        }
        Ok(s)
    }

    /// Subset whose membership is the low `order` bits of `mask`.
    pub fn from_mask(owner: &(impl Magma + ?Sized), mask: u64) -> Self {
        let mut s = Self::empty(owner);
        for i in 0..owner.order().min(64) {
            if mask >> i & 1 == 1 {
                s.members.insert(i);
            }
        }
        s
    }

    /// Low 64 bits of the membership vector.
    pub fn mask(&self) -> u64 {
        self.members.ones().take_while(|&i| i < 64).fold(0, |m, i| m | 1 << i)
    }

    pub(crate) fn with_bits(owner: StructureId, members: FixedBitSet) -> Self {
        GSubset { owner, members }
    }

    pub fn owner(&self) -> StructureId {
        self.owner
    }

    pub fn check_owner(&self, owner: &(impl Magma + ?Sized)) -> Result<()> {
        if self.owner != owner.structure_id() {
            return Err(Error::MixedStructures);
        }
        Ok(())
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.contains(index)
    }

    pub fn insert(&mut self, index: usize) {
        self.members.insert(index);
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    /// Member indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.members.minimum()
    }

    pub fn is_subset(&self, other: &GSubset) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_disjoint(&self, other: &GSubset) -> bool {
        self.members.is_disjoint(&other.members)
    }

    pub fn union_with(&mut self, other: &GSubset) {
        self.members.union_with(&other.members);
    }

    /// Labels of the members in index order.
    pub fn labels<'a>(&self, owner: &'a (impl Magma + ?Sized)) -> Vec<&'a str> {
        self.iter().map(|i| owner.label(i)).collect()
    }

    /// `{a, b, ...}` rendering with the owner's labels.
    pub fn display(&self, owner: &(impl Magma + ?Sized)) -> String {
        format!("{{{}}}", self.labels(owner).join(", "))
    }
}
