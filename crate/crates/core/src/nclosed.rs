//! Deciding n-closedness.
//!
//! `D` is n-closed when every ordered product `a_1 * ... * a_n` of members
//! (repetition allowed) lies in `D` again. The engine walks the product-set
//! sequence `P_1 = D`, `P_{i+1} = P_i * D` and checks `P_n ⊆ D`, which
//! costs `O(n |G| |D|)` lookups. The oracle enumerates tuples directly and
//! is only meant for cross-checking.

use crate::algebra::product_unchecked;
use crate::error::{Error, Result};
use crate::group::Magma;
use crate::subset::GSubset;

/// Tuple budget of [`is_n_closed_oracle`].
pub const DEFAULT_TUPLE_BUDGET: u128 = 200_000;

/// Default upper bound for closedness scans over a structure of `order`
/// elements.
pub fn default_scan_bound(order: usize) -> usize {
    2 * order + 1
}

fn check_input(owner: &(impl Magma + ?Sized), d: &GSubset, n: usize) -> Result<()> {
    d.check_owner(owner)?;
    if d.is_empty() {
        return Err(Error::EmptySubset);
    }
    if n < 2 {
        return Err(Error::InvalidArity { n, min: 2 });
    }
    Ok(())
}

/// Whether `D` is n-closed, via product sets.
pub fn is_n_closed(owner: &(impl Magma + ?Sized), d: &GSubset, n: usize) -> Result<bool> {
    check_input(owner, d, n)?;
    let mut power = d.clone();
    for _ in 1..n {
        power = product_unchecked(owner, &power, d);
    }
    Ok(power.is_subset(d))
}

/// An ordered n-tuple of members whose product leaves `D`, or `None` when
/// `D` is n-closed.
pub fn n_closed_witness(
    owner: &(impl Magma + ?Sized),
    d: &GSubset,
    n: usize,
) -> Result<Option<Vec<usize>>> {
    check_input(owner, d, n)?;
    let size = owner.order();
    let members = d.indices();
    // parents[i][x] = (y, m): x = y * m with y in P_{i+1}, m in D.
    let mut parents: Vec<Vec<Option<(usize, usize)>>> = Vec::with_capacity(n - 1);
    let mut level: Vec<usize> = members.clone();
    for _ in 1..n {
        let mut parent = vec![None; size];
        let mut next = Vec::new();
        for &y in &level {
            for &m in &members {
                let x = owner.op(y, m);
                if parent[x].is_none() {
                    parent[x] = Some((y, m));
                    next.push(x);
                }
            }
        }
        parents.push(parent);
        level = next;
    }
    let Some(&escape) = level.iter().filter(|&&x| !d.contains(x)).min() else {
        return Ok(None);
    };
    let mut tuple = Vec::with_capacity(n);
    let mut x = escape;
    for parent in parents.iter().rev() {
        let (y, m) = parent[x].expect("reached elements have parents");
        tuple.push(m);
        x = y;
    }
    tuple.push(x);
    tuple.reverse();
    Ok(Some(tuple))
}

/// Closedness of `D` for every arity up to a bound, from one pass over the
/// product-set sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosednessProfile {
    closed: Vec<bool>,
}

impl ClosednessProfile {
    pub fn compute(owner: &(impl Magma + ?Sized), d: &GSubset, n_max: usize) -> Result<Self> {
        check_input(owner, d, n_max.max(2))?;
        let mut closed = vec![false; n_max + 1];
        let mut power = d.clone();
        for slot in closed.iter_mut().skip(2) {
            power = product_unchecked(owner, &power, d);
            *slot = power.is_subset(d);
        }
        Ok(ClosednessProfile { closed })
    }

    pub fn n_max(&self) -> usize {
        self.closed.len() - 1
    }

    /// `false` for arities below 2 or above the bound.
    pub fn is_closed(&self, n: usize) -> bool {
        n >= 2 && self.closed.get(n).copied().unwrap_or(false)
    }

    /// Least arity in `[from, n_max]` at which `D` is closed.
    pub fn least_from(&self, from: usize) -> Option<usize> {
        (from.max(2)..=self.n_max()).find(|&n| self.closed[n])
    }

    pub fn closed_arities(&self) -> Vec<usize> {
        (2..=self.n_max()).filter(|&n| self.closed[n]).collect()
    }
}

/// Least `n` in `[2, n_max]` with `D` n-closed. `None` only means "none up
/// to `n_max`".
pub fn least_closed_scan(owner: &(impl Magma + ?Sized), d: &GSubset, n_max: usize) -> Result<Option<usize>> {
    if n_max < 2 {
        return Err(Error::InvalidArity { n: n_max, min: 2 });
    }
    Ok(ClosednessProfile::compute(owner, d, n_max)?.least_from(2))
}

/// Tuple-enumeration oracle with the default budget.
pub fn is_n_closed_oracle(owner: &(impl Magma + ?Sized), d: &GSubset, n: usize) -> Result<bool> {
    is_n_closed_oracle_with_budget(owner, d, n, DEFAULT_TUPLE_BUDGET)
}

/// Enumerates all `|D|^n` ordered tuples and multiplies each left to right.
pub fn is_n_closed_oracle_with_budget(
    owner: &(impl Magma + ?Sized),
    d: &GSubset,
    n: usize,
    budget: u128,
) -> Result<bool> {
    check_input(owner, d, n)?;
    let members = d.indices();
    let k = members.len() as u128;
    let needed = (0..n).try_fold(1u128, |acc, _| acc.checked_mul(k)).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    // Odometer over tuple positions.
    let mut digits = vec![0usize; n];
    let mut factors = vec![members[0]; n];
    loop {
        let product = owner.product_of(&factors).expect("n >= 2");
        if !d.contains(product) {
            return Ok(false);
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(true);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < members.len() {
                factors[pos] = members[digits[pos]];
                break;
            }
            digits[pos] = 0;
            factors[pos] = members[0];
        }
    }
}

/// A pluggable n-closedness decision, so the verification harness can run
/// against an alternative (or deliberately broken) implementation.
pub trait ClosednessEngine: Send + Sync {
    fn name(&self) -> &str;

    fn is_n_closed(&self, owner: &dyn Magma, d: &GSubset, n: usize) -> Result<bool>;

    /// Closedness for every arity up to `n_max`; index `n` of the result.
    fn profile(&self, owner: &dyn Magma, d: &GSubset, n_max: usize) -> Result<Vec<bool>> {
        let mut out = vec![false; n_max + 1];
        for (n, slot) in out.iter_mut().enumerate().skip(2) {
            *slot = self.is_n_closed(owner, d, n)?;
        }
        Ok(out)
    }
}

/// The product-set engine.
#[derive(Debug, Clone, Copy, Default)]
pub struct ProductSetEngine;

impl ClosednessEngine for ProductSetEngine {
    fn name(&self) -> &str {
        "product-set"
    }

    fn is_n_closed(&self, owner: &dyn Magma, d: &GSubset, n: usize) -> Result<bool> {
        is_n_closed(owner, d, n)
    }

    fn profile(&self, owner: &dyn Magma, d: &GSubset, n_max: usize) -> Result<Vec<bool>> {
        let p = ClosednessProfile::compute(owner, d, n_max)?;
        Ok((0..=n_max).map(|n| p.is_closed(n)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteSemigroup;
    use crate::named::{cyclic, symmetric};

    fn set(g: &impl Magma, indices: &[usize]) -> GSubset {
        GSubset::from_indices(g, indices.iter().copied()).unwrap()
    }

    #[test]
    fn odd_residues_mod_4() {
        let z4 = cyclic(4).unwrap();
        let odd = set(&z4, &[1, 3]);
        assert!(is_n_closed(&z4, &odd, 3).unwrap());
        assert!(!is_n_closed(&z4, &odd, 2).unwrap());
        assert_eq!(least_closed_scan(&z4, &odd, 10).unwrap(), Some(3));
        let w = n_closed_witness(&z4, &odd, 2).unwrap().unwrap();
        assert!(w.iter().all(|&x| odd.contains(x)));
        assert!(!odd.contains(z4.product_of(&w).unwrap()));
        assert_eq!(n_closed_witness(&z4, &odd, 3).unwrap(), None);
    }

    #[test]
    fn s3_coset_witness() {
        let s3 = symmetric(3).unwrap();
        let l = set(&s3, &[s3.find_label("(1 3)").unwrap(), s3.find_label("(1 2 3)").unwrap()]);
        assert!(!is_n_closed(&s3, &l, 3).unwrap());
        let w = n_closed_witness(&s3, &l, 3).unwrap().unwrap();
        assert_eq!(w.len(), 3);
        assert!(w.iter().all(|&x| l.contains(x)));
        assert!(!l.contains(s3.product_of(&w).unwrap()));
        assert_eq!(least_closed_scan(&s3, &l, 12).unwrap(), None);
        // The triple ((1 3), (1 2 3), (1 3)) escapes to (1 3 2).
        let t = ["(1 3)", "(1 2 3)", "(1 3)"].map(|x| s3.find_label(x).unwrap());
        assert_eq!(s3.label(s3.product_of(&t).unwrap()), "(1 3 2)");
    }

    #[test]
    fn z9_surrogate() {
        let z9 = cyclic(9).unwrap();
        let k = set(&z9, &[1, 4, 7]);
        assert!(is_n_closed_oracle(&z9, &k, 4).unwrap());
        assert!(!is_n_closed_oracle(&z9, &k, 3).unwrap());
        assert_eq!(least_closed_scan(&z9, &k, 20).unwrap(), Some(4));
    }

    #[test]
    fn subgroups_close_at_two() {
        let z9 = cyclic(9).unwrap();
        let h = set(&z9, &[0, 3, 6]);
        assert_eq!(least_closed_scan(&z9, &h, 2).unwrap(), Some(2));
        for n in 2..12 {
            assert!(is_n_closed(&z9, &h, n).unwrap());
        }
    }

    #[test]
    fn rejects_empty_and_small_arity() {
        let z4 = cyclic(4).unwrap();
        assert_eq!(is_n_closed(&z4, &GSubset::empty(&z4), 3).unwrap_err(), Error::EmptySubset);
        assert_eq!(is_n_closed_oracle(&z4, &GSubset::empty(&z4), 3).unwrap_err(), Error::EmptySubset);
        assert!(matches!(is_n_closed(&z4, &set(&z4, &[1]), 1), Err(Error::InvalidArity { .. })));
    }

    #[test]
    fn oracle_budget() {
        let z9 = cyclic(9).unwrap();
        let all = GSubset::full(&z9);
        assert!(matches!(
            is_n_closed_oracle(&z9, &all, 6),
            Err(Error::BudgetExceeded { needed: 531_441, .. })
        ));
        assert!(is_n_closed_oracle(&z9, &all, 5).unwrap());
    }

    #[test]
    fn singleton_spectrum() {
        // {a} is m-closed iff |a| divides m - 1.
        let z12 = cyclic(12).unwrap();
        for a in 1..12 {
            let k = z12.order_of(a);
            let p = ClosednessProfile::compute(&z12, &set(&z12, &[a]), 3 * k + 1).unwrap();
            for m in 2..=3 * k + 1 {
                assert_eq!(p.is_closed(m), (m - 1) % k == 0, "a={a} m={m}");
            }
        }
    }

    #[test]
    fn semigroup_closedness() {
        let s = FiniteSemigroup::multiplicative_mod(6).unwrap();
        let d = set(&s, &[3, 5]);
        assert!(is_n_closed(&s, &d, 3).unwrap());
        assert!(!is_n_closed(&s, &d, 2).unwrap());
        assert!(is_n_closed_oracle(&s, &d, 3).unwrap());
    }

    #[test]
    fn engine_trait_profile_matches_direct_calls() {
        let z12 = cyclic(12).unwrap();
        let d = set(&z12, &[1, 7]);
        let via_trait = ProductSetEngine.profile(&z12, &d, 15).unwrap();
        for n in 2..=15 {
            assert_eq!(via_trait[n], is_n_closed(&z12, &d, n).unwrap());
        }
    }
}
