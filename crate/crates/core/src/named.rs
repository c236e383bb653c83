//! Constructors for the standard families, direct products and groups
//! generated by permutations.
//!
//! Every constructor places the identity at index 0. Orderings:
//! cyclic groups list residues ascending, permutation groups list their
//! elements in lexicographic one-line order, dihedral groups list the
//! rotations `r^i` and then the reflections `r^i s`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Magma, PermutationCarrier, Table, MAX_ORDER};
use crate::perm::Permutation;

/// Largest degree for symmetric groups and permutation-generated groups.
pub const MAX_DEGREE: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Cyclic,
    Symmetric,
    /// Parameter `n` gives the group of order `2n`.
    Dihedral,
    /// Parameter must be 8.
    Quaternion,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Cyclic => "cyclic",
            Family::Symmetric => "symmetric",
            Family::Dihedral => "dihedral",
            Family::Quaternion => "quaternion",
        })
    }
}

fn unsupported(family: Family, parameter: usize) -> Error {
    Error::UnsupportedParameter { family: family.to_string(), parameter: parameter.to_string() }
}

pub fn make_named(family: Family, parameter: usize) -> Result<FiniteGroup> {
    match family {
        Family::Cyclic => cyclic(parameter),
        Family::Symmetric => symmetric(parameter),
        Family::Dihedral => dihedral(parameter),
        Family::Quaternion => quaternion(parameter),
    }
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > MAX_ORDER {
        return Err(unsupported(Family::Cyclic, n));
    }
    let table = Table::from_fn(n, |x, y| (x + y) % n)?;
    FiniteGroup::from_parts(table, (0..n).map(|i| i.to_string()).collect(), None)
}

pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if n == 0 || n > MAX_DEGREE {
        return Err(unsupported(Family::Symmetric, n));
    }
    from_sorted_perms(n, Permutation::all(n))
}

pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n < 3 || 2 * n > MAX_ORDER {
        return Err(unsupported(Family::Dihedral, n));
    }
    // index i < n is r^i, index n + i is r^i s; s r^j = r^{-j} s.
    let table = Table::from_fn(2 * n, |x, y| {
        let (i, fx) = (x % n, x / n);
        let (j, fy) = (y % n, y / n);
        let rot = if fx == 0 { (i + j) % n } else { (i + n - j) % n };
        rot + n * (fx ^ fy)
    })?;
    let label = |i: usize| match i {
        0 => String::new(),
        1 => "r".to_string(),
        _ => format!("r{i}"),
    };
    let mut labels: Vec<String> = (0..n).map(|i| if i == 0 { "e".into() } else { label(i) }).collect();
    labels.extend((0..n).map(|i| format!("{}s", label(i))));
    FiniteGroup::from_parts(table, labels, None)
}

pub fn quaternion(parameter: usize) -> Result<FiniteGroup> {
    if parameter != 8 {
        return Err(unsupported(Family::Quaternion, parameter));
    }
    // Units 1, i, j, k as 0..4; element index = 2 * unit + sign bit.
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    let table = Table::from_fn(8, |x, y| {
        let (unit, sign) = UNIT[x / 2][y / 2];
        2 * unit + (sign ^ (x % 2) ^ (y % 2))
    })?;
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].map(String::from).to_vec();
    FiniteGroup::from_parts(table, labels, None)
}

/// Componentwise product. Element `(a, b)` has index `a * |g2| + b` and
/// label `(label_a,label_b)`.
pub fn direct_product(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<FiniteGroup> {
    let (n1, n2) = (g1.order(), g2.order());
    let order = n1.checked_mul(n2).filter(|&o| o <= MAX_ORDER).ok_or(Error::OrderTooLarge {
        order: n1.saturating_mul(n2),
        max: MAX_ORDER,
    })?;
    // Relabel so each factor's identity sits at 0; tables from files may
    // place it elsewhere.
    let order1 = identity_first(g1);
    let order2 = identity_first(g2);
    let mut position1 = vec![0; n1];
    for (i, &x) in order1.iter().enumerate() {
        position1[x] = i;
    }
    let mut position2 = vec![0; n2];
    for (i, &x) in order2.iter().enumerate() {
        position2[x] = i;
    }
    let table = Table::from_fn(order, |x, y| {
        let (a1, b1) = (order1[x / n2], order2[x % n2]);
        let (a2, b2) = (order1[y / n2], order2[y % n2]);
        position1[g1.op(a1, a2)] * n2 + position2[g2.op(b1, b2)]
    })?;
    let labels = (0..order)
        .map(|x| format!("({},{})", g1.label(order1[x / n2]), g2.label(order2[x % n2])))
        .collect();
    FiniteGroup::from_parts(table, labels, None)
}

/// Indices of `g` with the identity moved to the front, others in order.
fn identity_first(g: &FiniteGroup) -> Vec<usize> {
    let e = g.identity_index();
    std::iter::once(e).chain((0..g.order()).filter(|&x| x != e)).collect()
}

/// Subgroup of `S_degree` generated by `generators`, relabeled as a
/// standalone group.
pub fn permutation_group(degree: usize, generators: &[Permutation]) -> Result<FiniteGroup> {
    if degree == 0 || degree > MAX_DEGREE {
        return Err(Error::UnsupportedParameter {
            family: "permutation group degree".into(),
            parameter: degree.to_string(),
        });
    }
    if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
        return Err(Error::UnsupportedParameter {
            family: format!("generator for degree {degree}"),
            parameter: bad.to_string(),
        });
    }
    let identity = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([identity.clone()]);
    let mut elements = vec![identity];
    let mut i = 0;
    while i < elements.len() {
        for g in generators {
            let next = elements[i].compose(g);
            if seen.insert(next.clone()) {
                if elements.len() == MAX_ORDER {
                    return Err(Error::GenerationOverflow { max: MAX_ORDER });
                }
                elements.push(next);
            }
        }
        i += 1;
    }
    elements.sort();
    from_sorted_perms(degree, elements)
}

fn from_sorted_perms(degree: usize, perms: Vec<Permutation>) -> Result<FiniteGroup> {
    let position: HashMap<&Permutation, usize> =
        perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let n = perms.len();
    let table = Table::from_fn(n, |x, y| position.get(&perms[x].compose(&perms[y])).copied().unwrap_or(n))?;
    let labels = perms.iter().map(|p| p.to_string()).collect();
    drop(position);
    let carrier = PermutationCarrier { degree, perms: Arc::from(perms) };
    FiniteGroup::from_parts(table, labels, Some(carrier))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn has_order(g: &FiniteGroup, k: usize) -> bool {
        (0..g.order()).any(|x| g.order_of(x) == k)
    }

    #[test]
    fn symmetric_orders() {
        let factorials = [1, 2, 6, 24, 120, 720];
        for (n, &f) in (1..=6).zip(&factorials) {
            let g = make_named(Family::Symmetric, n).unwrap();
            assert_eq!(g.order(), f);
            assert_eq!(g.identity_index(), 0);
        }
        assert!(make_named(Family::Symmetric, 7).is_err());
        assert!(make_named(Family::Symmetric, 0).is_err());
    }

    #[test]
    fn z9_element_orders() {
        let g = make_named(Family::Cyclic, 9).unwrap();
        assert_eq!(g.order(), 9);
        for x in 1..9 {
            assert!(matches!(g.order_of(x), 3 | 9));
        }
    }

    #[test]
    fn q8_has_one_involution() {
        let q = make_named(Family::Quaternion, 8).unwrap();
        assert_eq!(q.order(), 8);
        let involutions: Vec<_> = (0..8).filter(|&x| q.order_of(x) == 2).collect();
        assert_eq!(involutions, vec![1]);
        assert!(!q.is_abelian());
        assert!(make_named(Family::Quaternion, 4).is_err());
    }

    #[test]
    fn dihedral_structure() {
        for n in 3..=8 {
            let d = make_named(Family::Dihedral, n).unwrap();
            assert_eq!(d.order(), 2 * n);
            assert_eq!(d.order_of(1), n);
            for x in n..2 * n {
                assert_eq!(d.order_of(x), 2, "reflection {x} in D{n}");
            }
        }
        let d4 = dihedral(4).unwrap();
        assert_eq!(d4.labels(), &["e", "r", "r2", "r3", "s", "rs", "r2s", "r3s"]);
        assert!(make_named(Family::Dihedral, 2).is_err());
    }

    #[test]
    fn s3_product_matches_cycle_convention() {
        let s3 = symmetric(3).unwrap();
        let a = s3.find_label("(1 3)").unwrap();
        let b = s3.find_label("(1 2)").unwrap();
        assert_eq!(s3.label(s3.op(a, b)), "(1 2 3)");
        assert_eq!(s3.order_of(s3.find_label("(1 2 3)").unwrap()), 3);
    }

    #[test]
    fn products() {
        let z2 = cyclic(2).unwrap();
        let z3 = cyclic(3).unwrap();
        let p = direct_product(&z2, &z3).unwrap();
        assert_eq!(p.order(), 6);
        assert!(has_order(&p, 6));
        let v4 = direct_product(&z2, &z2).unwrap();
        assert_eq!(v4.order(), 4);
        assert!(!has_order(&v4, 4));
        let s3 = symmetric(3).unwrap();
        let t = direct_product(&cyclic(1).unwrap(), &s3).unwrap();
        assert_eq!(t.order_profile(), s3.order_profile());
        assert!(direct_product(&symmetric(6).unwrap(), &symmetric(4).unwrap()).is_err());
    }

    #[test]
    fn product_orders_are_lcms() {
        let pairs = [(cyclic(4).unwrap(), cyclic(6).unwrap()), (symmetric(3).unwrap(), cyclic(2).unwrap())];
        for (a, b) in &pairs {
            let p = direct_product(a, b).unwrap();
            for x in 0..p.order() {
                let (i, j) = (x / b.order(), x % b.order());
                assert_eq!(p.order_of(x), num_integer::lcm(a.order_of(i), b.order_of(j)));
            }
        }
    }

    #[test]
    fn generated_permutation_groups() {
        let s3 = permutation_group(3, &[Permutation::cycle(3, &[1, 2]), Permutation::cycle(3, &[1, 2, 3])]).unwrap();
        assert_eq!(s3.order(), 6);
        let a4 = permutation_group(4, &[Permutation::cycle(4, &[1, 2, 3]), Permutation::cycle(4, &[2, 3, 4])]).unwrap();
        assert_eq!(a4.order(), 12);
        let trivial = permutation_group(4, &[]).unwrap();
        assert_eq!(trivial.order(), 1);
        assert_eq!(trivial.label(0), "e");
    }
}
