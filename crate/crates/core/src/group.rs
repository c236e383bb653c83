//! Cayley-table backed finite groups and semigroups.
//!
//! Both structures are immutable once validated. Element arithmetic is a
//! table lookup; nothing is recomputed from a generating representation.

use std::fmt;
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest order accepted by any constructor.
pub const MAX_ORDER: usize = 5040;

/// Up to this order associativity is checked over every triple; above it
/// Light's test over a generating set is used.
const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 128;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Identity tag of one constructed structure. Clones share the tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StructureId(u64);

impl StructureId {
    fn fresh() -> Self {
        StructureId(NEXT_ID.fetch_add(1, Ordering::Relaxed))
    }
}

/// An element index bound to the structure it was drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Element {
    owner: StructureId,
    index: usize,
}

impl Element {
    pub fn index(self) -> usize {
        self.index
    }

    pub fn owner(self) -> StructureId {
        self.owner
    }
}

/// Dense row-major multiplication table.
#[derive(Debug, Clone)]
pub(crate) struct Table {
    order: usize,
    cells: Arc<[u32]>,
}

impl Table {
    fn from_rows(rows: &[Vec<usize>]) -> Result<Table> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::EmptyTable);
        }
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge { order, max: MAX_ORDER });
        }
        let mut cells = Vec::with_capacity(order * order);
        for (row, entries) in rows.iter().enumerate() {
            if entries.len() != order {
                return Err(Error::NotSquare { row, len: entries.len(), expected: order });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= order {
                    return Err(Error::NotClosed { row, col, value, order });
                }
                cells.push(value as u32);
            }
        }
        Ok(Table { order, cells: cells.into() })
    }

    /// Builds a table from a product function that is already known to be
    /// closed.
    pub(crate) fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Table> {
        if order == 0 {
            return Err(Error::EmptyTable);
        }
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge { order, max: MAX_ORDER });
        }
        let mut cells = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                let value = f(x, y);
                if value >= order {
                    return Err(Error::NotClosed { row: x, col: y, value, order });
                }
                cells.push(value as u32);
            }
        }
        Ok(Table { order, cells: cells.into() })
    }

    #[inline]
    pub(crate) fn get(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.order + y] as usize
    }

    fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|x| (0..self.order).map(|y| self.get(x, y)).collect())
            .collect()
    }

    fn check_associative(&self) -> Result<()> {
        if self.order <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            self.check_associative_exhaustive()
        } else {
            self.check_associative_light()
        }
    }

    fn check_associative_exhaustive(&self) -> Result<()> {
        let n = self.order;
        for x in 0..n {
            for y in 0..n {
                let xy = self.get(x, y);
                for z in 0..n {
                    if self.get(xy, z) != self.get(x, self.get(y, z)) {
                        return Err(Error::NotAssociative { x, y, z });
                    }
                }
            }
        }
        Ok(())
    }

    /// Light's test: the set of `g` with `(x*g)*y = x*(g*y)` for all `x, y`
    /// is closed under the operation, so checking a generating set suffices.
    fn check_associative_light(&self) -> Result<()> {
        let n = self.order;
        for g in self.generating_set() {
            for x in 0..n {
                let xg = self.get(x, g);
                for y in 0..n {
                    if self.get(xg, y) != self.get(x, self.get(g, y)) {
                        return Err(Error::NotAssociative { x, y: g, z: y });
                    }
                }
            }
        }
        Ok(())
    }

    /// Greedy generating set of the magma: add the least element outside
    /// the current closure until everything is reached.
    fn generating_set(&self) -> Vec<usize> {
        let n = self.order;
        let mut inside = vec![false; n];
        let mut members: Vec<usize> = Vec::new();
        let mut gens = Vec::new();
        for candidate in 0..n {
            if inside[candidate] {
                continue;
            }
            gens.push(candidate);
            inside[candidate] = true;
            let mut frontier = vec![candidate];
            members.push(candidate);
            while let Some(x) = frontier.pop() {
                let mut i = 0;
                while i < members.len() {
                    let y = members[i];
                    for p in [self.get(x, y), self.get(y, x)] {
                        if !inside[p] {
                            inside[p] = true;
                            members.push(p);
                            frontier.push(p);
                        }
                    }
                    i += 1;
                }
            }
        }
        gens
    }

    fn find_identity(&self) -> Result<usize> {
        let n = self.order;
        (0..n)
            .find(|&e| (0..n).all(|x| self.get(e, x) == x && self.get(x, e) == x))
            .ok_or(Error::NoIdentity)
    }

    fn find_inverses(&self, identity: usize) -> Result<Vec<usize>> {
        let n = self.order;
        (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| self.get(x, y) == identity && self.get(y, x) == identity)
                    .ok_or(Error::NoInverse { element: x })
            })
            .collect()
    }
}

fn check_labels(labels: &[String], order: usize) -> Result<()> {
    if labels.len() != order {
        return Err(Error::LabelCount { labels: labels.len(), order });
    }
    let mut seen = std::collections::HashSet::with_capacity(order);
    for label in labels {
        if !seen.insert(label.as_str()) {
            return Err(Error::DuplicateLabel { label: label.clone() });
        }
    }
    Ok(())
}

/// Common read-only surface of groups and semigroups.
pub trait Magma {
    fn structure_id(&self) -> StructureId;
    fn order(&self) -> usize;
    /// Product of two element indices.
    fn op(&self, x: usize, y: usize) -> usize;
    fn labels(&self) -> &[String];

    fn label(&self, index: usize) -> &str {
        &self.labels()[index]
    }

    fn element(&self, index: usize) -> Result<Element> {
        if index >= self.order() {
            return Err(Error::IndexOutOfRange { index, order: self.order() });
        }
        Ok(Element { owner: self.structure_id(), index })
    }

    /// Checks ownership and returns the raw index.
    fn index_of(&self, x: Element) -> Result<usize> {
        if x.owner != self.structure_id() {
            return Err(Error::MixedStructures);
        }
        Ok(x.index)
    }

    fn find_label(&self, label: &str) -> Option<usize> {
        self.labels().iter().position(|l| l == label)
    }

    /// Resolves a user-supplied element token. Exact label match by default.
    fn lookup(&self, token: &str) -> Option<usize> {
        self.find_label(token)
    }

    /// Left-to-right product of a sequence of indices; `None` when empty.
    fn product_of(&self, factors: &[usize]) -> Option<usize> {
        let (&first, rest) = factors.split_first()?;
        Some(rest.iter().fold(first, |acc, &f| self.op(acc, f)))
    }
}

/// Serialized form of a Cayley table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableFile {
    #[serde(default)]
    pub labels: Option<Vec<String>>,
    pub table: Vec<Vec<usize>>,
}

impl TableFile {
    fn into_parts(self) -> (Vec<String>, Vec<Vec<usize>>) {
        let labels = self
            .labels
            .unwrap_or_else(|| (0..self.table.len()).map(|i| i.to_string()).collect());
        (labels, self.table)
    }
}

fn read_table_file(path: &Path) -> Result<TableFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::TableFormat(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::TableFormat(format!("{}: {e}", path.display())))
}

/// Associative magma given by its Cayley table. No identity is required.
#[derive(Debug, Clone)]
pub struct FiniteSemigroup {
    id: StructureId,
    table: Table,
    labels: Vec<String>,
}

impl FiniteSemigroup {
    /// Validates closure and associativity.
    pub fn from_table(table: &[Vec<usize>], labels: Vec<String>) -> Result<Self> {
        let table = Table::from_rows(table)?;
        check_labels(&labels, table.order)?;
        table.check_associative()?;
        Ok(FiniteSemigroup { id: StructureId::fresh(), table, labels })
    }

    /// Integers modulo `n` under multiplication.
    pub fn multiplicative_mod(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::UnsupportedParameter {
                family: "multiplicative semigroup".into(),
                parameter: n.to_string(),
            });
        }
        let table = Table::from_fn(n, |x, y| (x * y) % n)?;
        table.check_associative()?;
        let labels = (0..n).map(|i| i.to_string()).collect();
        Ok(FiniteSemigroup { id: StructureId::fresh(), table, labels })
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: TableFile =
            serde_json::from_str(text).map_err(|e| Error::TableFormat(e.to_string()))?;
        let (labels, table) = file.into_parts();
        Self::from_table(&table, labels)
    }

    pub fn load_json(path: impl AsRef<Path>) -> Result<Self> {
        let (labels, table) = read_table_file(path.as_ref())?.into_parts();
        Self::from_table(&table, labels)
    }
}

impl Magma for FiniteSemigroup {
    fn structure_id(&self) -> StructureId {
        self.id
    }
    fn order(&self) -> usize {
        self.table.order
    }
    #[inline]
    fn op(&self, x: usize, y: usize) -> usize {
        self.table.get(x, y)
    }
    fn labels(&self) -> &[String] {
        &self.labels
    }
}

/// Permutation data kept for groups built from permutations, so elements
/// can be looked up by cycle notation.
#[derive(Debug, Clone)]
pub(crate) struct PermutationCarrier {
    pub(crate) degree: usize,
    pub(crate) perms: Arc<[Permutation]>,
}

/// A finite group given by a validated Cayley table.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    id: StructureId,
    table: Table,
    identity: usize,
    inverses: Arc<[usize]>,
    labels: Vec<String>,
    carrier: Option<PermutationCarrier>,
}

impl FiniteGroup {
    /// Validates a Cayley table: closure, labels, identity, inverses and
    /// associativity, in that order.
    pub fn from_table(table: &[Vec<usize>], labels: Vec<String>) -> Result<Self> {
        let table = Table::from_rows(table)?;
        Self::from_validated_rows(table, labels, None)
    }

    pub(crate) fn from_parts(
        table: Table,
        labels: Vec<String>,
        carrier: Option<PermutationCarrier>,
    ) -> Result<Self> {
        Self::from_validated_rows(table, labels, carrier)
    }

    fn from_validated_rows(
        table: Table,
        labels: Vec<String>,
        carrier: Option<PermutationCarrier>,
    ) -> Result<Self> {
        check_labels(&labels, table.order)?;
        let identity = table.find_identity()?;
        let inverses = table.find_inverses(identity)?;
        table.check_associative()?;
        Ok(FiniteGroup {
            id: StructureId::fresh(),
            table,
            identity,
            inverses: inverses.into(),
            labels,
            carrier,
        })
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: TableFile =
            serde_json::from_str(text).map_err(|e| Error::TableFormat(e.to_string()))?;
        let (labels, table) = file.into_parts();
        Self::from_table(&table, labels)
    }

    pub fn load_json(path: impl AsRef<Path>) -> Result<Self> {
        let (labels, table) = read_table_file(path.as_ref())?.into_parts();
        Self::from_table(&table, labels)
    }

    pub fn to_table_file(&self) -> TableFile {
        TableFile { labels: Some(self.labels.clone()), table: self.table.rows() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_table_file()).expect("table file serializes")
    }

    /// Every group is a semigroup; the copy gets its own structure id.
    pub fn as_semigroup(&self) -> FiniteSemigroup {
        FiniteSemigroup { id: StructureId::fresh(), table: self.table.clone(), labels: self.labels.clone() }
    }

    /// Degree of the permutation representation, when the group has one.
    pub fn permutation_degree(&self) -> Option<usize> {
        self.carrier.as_ref().map(|c| c.degree)
    }

    /// The element acting as `perm`, for permutation groups.
    pub fn perm_element(&self, perm: &Permutation) -> Option<Element> {
        let carrier = self.carrier.as_ref()?;
        let index = carrier.perms.iter().position(|p| p == perm)?;
        Some(Element { owner: self.id, index })
    }

    pub fn permutation(&self, index: usize) -> Option<&Permutation> {
        self.carrier.as_ref().and_then(|c| c.perms.get(index))
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn identity(&self) -> Element {
        Element { owner: self.id, index: self.identity }
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverses[x]
    }

    /// `x^m` by square-and-multiply on indices; `x^0` is the identity.
    pub fn pow(&self, x: usize, mut m: u64) -> usize {
        let mut result = self.identity;
        let mut base = x;
        while m > 0 {
            if m & 1 == 1 {
                result = self.op(result, base);
            }
            base = self.op(base, base);
            m >>= 1;
        }
        result
    }

    /// Least `m >= 1` with `x^m` equal to the identity.
    pub fn order_of(&self, x: usize) -> usize {
        let mut m = 1;
        let mut acc = x;
        while acc != self.identity {
            acc = self.op(acc, x);
            m += 1;
        }
        m
    }

    pub fn mul(&self, x: Element, y: Element) -> Result<Element> {
        let (x, y) = (self.index_of(x)?, self.index_of(y)?);
        Ok(Element { owner: self.id, index: self.op(x, y) })
    }

    pub fn inverse(&self, x: Element) -> Result<Element> {
        let x = self.index_of(x)?;
        Ok(Element { owner: self.id, index: self.inv(x) })
    }

    pub fn power(&self, x: Element, m: u64) -> Result<Element> {
        let x = self.index_of(x)?;
        Ok(Element { owner: self.id, index: self.pow(x, m) })
    }

    pub fn element_order(&self, x: Element) -> Result<usize> {
        Ok(self.order_of(self.index_of(x)?))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|x| (x + 1..n).all(|y| self.op(x, y) == self.op(y, x)))
    }

    /// Sorted multiset of element orders.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut orders: Vec<usize> = (0..self.order()).map(|x| self.order_of(x)).collect();
        orders.sort_unstable();
        orders
    }
}

impl Magma for FiniteGroup {
    fn structure_id(&self) -> StructureId {
        self.id
    }
    fn order(&self) -> usize {
        self.table.order
    }
    #[inline]
    fn op(&self, x: usize, y: usize) -> usize {
        self.table.get(x, y)
    }
    fn labels(&self) -> &[String] {
        &self.labels
    }
    /// Permutation groups also accept any cycle notation for an element,
    /// such as `(2 3 1)` for the label `(1 2 3)`.
    fn lookup(&self, token: &str) -> Option<usize> {
        if let Some(i) = self.find_label(token) {
            return Some(i);
        }
        let degree = self.permutation_degree()?;
        let perm = crate::parse::parse_permutation(token, degree).ok()?;
        self.perm_element(&perm).map(|e| e.index)
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "group of order {}", self.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    fn z_add(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect()
    }

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::from_table(&[vec![0]], labels(1)).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity_index(), 0);
    }

    #[test]
    fn z4_is_a_group() {
        let g = FiniteGroup::from_table(&z_add(4), labels(4)).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.inv(1), 3);
    }

    #[test]
    fn no_inverse_for_absorbing_element() {
        let err = FiniteGroup::from_table(&[vec![0, 1], vec![1, 1]], labels(2)).unwrap_err();
        assert_eq!(err, Error::NoInverse { element: 1 });
    }

    #[test]
    fn not_closed_and_not_square() {
        let err = FiniteGroup::from_table(&[vec![0, 2], vec![1, 0]], labels(2)).unwrap_err();
        assert!(matches!(err, Error::NotClosed { row: 0, col: 1, value: 2, .. }));
        let err = FiniteGroup::from_table(&[vec![0, 1], vec![1]], labels(2)).unwrap_err();
        assert!(matches!(err, Error::NotSquare { row: 1, .. }));
        assert_eq!(FiniteGroup::from_table(&[], vec![]).unwrap_err(), Error::EmptyTable);
    }

    #[test]
    fn no_identity() {
        let err = FiniteGroup::from_table(&[vec![1, 0], vec![0, 0]], labels(2)).unwrap_err();
        assert_eq!(err, Error::NoIdentity);
    }

    #[test]
    fn duplicate_label() {
        let err =
            FiniteGroup::from_table(&z_add(2), vec!["a".into(), "a".into()]).unwrap_err();
        assert_eq!(err, Error::DuplicateLabel { label: "a".into() });
    }

    #[test]
    fn z6_multiplication_is_a_semigroup() {
        let s = FiniteSemigroup::multiplicative_mod(6).unwrap();
        assert_eq!(s.order(), 6);
        let rows: Vec<Vec<usize>> =
            (0..6).map(|x| (0..6).map(|y| (x * y) % 6).collect()).collect();
        assert!(FiniteSemigroup::from_table(&rows, labels(6)).is_ok());
        assert!(FiniteSemigroup::from_table(&z_add(4), labels(4)).is_ok());
    }

    #[test]
    fn non_associative_witness() {
        let err = FiniteSemigroup::from_table(&[vec![1, 0], vec![0, 0]], labels(2)).unwrap_err();
        let Error::NotAssociative { x, y, z } = err else { panic!("{err:?}") };
        let t = [[1, 0], [0, 0]];
        assert_ne!(t[t[x][y]][z], t[x][t[y][z]]);
    }

    #[test]
    fn light_test_agrees_with_exhaustive_sweep() {
        // Z_n addition, Z_n multiplication and a non-associative perturbation.
        for n in [5usize, 9, 12] {
            let add = Table::from_rows(&z_add(n)).unwrap();
            assert!(add.check_associative_light().is_ok());
            let mul = Table::from_fn(n, |x, y| (x * y) % n).unwrap();
            assert!(mul.check_associative_light().is_ok());
            let mut rows = z_add(n);
            rows[1][2] = 0;
            let bad = Table::from_rows(&rows).unwrap();
            assert!(bad.check_associative_exhaustive().is_err());
            assert!(bad.check_associative_light().is_err());
        }
    }

    #[test]
    fn mixed_structures_rejected() {
        let a = FiniteGroup::from_table(&z_add(3), labels(3)).unwrap();
        let b = FiniteGroup::from_table(&z_add(3), labels(3)).unwrap();
        let x = a.element(1).unwrap();
        let y = b.element(1).unwrap();
        assert_eq!(a.mul(x, y).unwrap_err(), Error::MixedStructures);
        assert_eq!(a.mul(x, x).unwrap().index(), 2);
    }

    #[test]
    fn power_and_order_in_z12() {
        let g = FiniteGroup::from_table(&z_add(12), labels(12)).unwrap();
        let four = g.element(4).unwrap();
        assert_eq!(g.power(four, 3).unwrap().index(), 0);
        assert_eq!(g.power(four, 0).unwrap(), g.identity());
        assert_eq!(g.element_order(four).unwrap(), 3);
        assert_eq!(g.element_order(g.identity()).unwrap(), 1);
    }

    #[test]
    fn json_round_trip() {
        let g = FiniteGroup::from_table(&z_add(3), labels(3)).unwrap();
        let h = FiniteGroup::from_json_str(&g.to_json()).unwrap();
        assert_eq!(h.labels(), g.labels());
        assert_eq!(h.to_table_file().table, g.to_table_file().table);
        assert!(matches!(
            FiniteGroup::from_json_str("{\"table\": 3}").unwrap_err(),
            Error::TableFormat(_)
        ));
        let defaulted = FiniteGroup::from_json_str("{\"table\": [[0,1],[1,0]]}").unwrap();
        assert_eq!(defaulted.labels(), &["0", "1"]);
    }
}
