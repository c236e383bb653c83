//! Identifiers for the checked statements and the violation records that
//! the analyses attach to their results.

use std::fmt;

use serde::{Deserialize, Serialize};

/// One checked statement about n-closed sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    /// Shift sets of a finite n-closed set are subgroups, invariant under
    /// the choice of prefix.
    #[serde(rename = "T2.1")]
    T2_1,
    /// A finite n-closed, non-2-closed set is a left coset of `d^{n-2} D`.
    #[serde(rename = "C2.01")]
    C2_01,
    /// Semigroup case: shift sets are 2-closed.
    #[serde(rename = "C2.1")]
    C2_1,
    /// An n-closed coset `aH` has `a^{n-1}` in `H`, so `n >= 3`.
    #[serde(rename = "T2.2.1")]
    T2_2_1,
    /// An n-closed coset satisfies `bH = Hb = aH` for every `b` in it.
    #[serde(rename = "T2.2.2")]
    T2_2_2,
    /// Shifting an n-closed coset by `n - 2` of its elements gives `H`.
    #[serde(rename = "T2.2.3")]
    T2_2_3,
    /// `a^m` lies in `H` exactly when `k - 1` divides `m`.
    #[serde(rename = "T2.2.4")]
    T2_2_4,
    /// The coset is m-closed exactly for `m = c(k - 1) + 1`, `c >= 1`.
    #[serde(rename = "T2.2.5")]
    T2_2_5,
    /// A coset `aH` with `a` outside `H` is n-closed iff `aH = Ha` and
    /// `a^{n-1}` lies in `H`.
    #[serde(rename = "C2.2")]
    C2_2,
    /// Least `c` with `(a^m)^c` in `H` is `k / gcd(m, k)`.
    #[serde(rename = "L2.1")]
    L2_1,
    /// `a^m H` is `(c + 1)`-closed with `c = (k - 1) / gcd(m, k - 1)`.
    #[serde(rename = "T2.3")]
    T2_3,
    /// Normal iff every outside coset is m-closed for some `m >= 3`.
    #[serde(rename = "T3.1")]
    T3_1,
    /// Normal iff every outside coset is `(index + 1)`-closed.
    #[serde(rename = "T3.2")]
    T3_2,
}

impl TheoremId {
    pub const ALL: [TheoremId; 13] = [
        TheoremId::T2_1,
        TheoremId::C2_01,
        TheoremId::C2_1,
        TheoremId::T2_2_1,
        TheoremId::T2_2_2,
        TheoremId::T2_2_3,
        TheoremId::T2_2_4,
        TheoremId::T2_2_5,
        TheoremId::C2_2,
        TheoremId::L2_1,
        TheoremId::T2_3,
        TheoremId::T3_1,
        TheoremId::T3_2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::T2_1 => "T2.1",
            TheoremId::C2_01 => "C2.01",
            TheoremId::C2_1 => "C2.1",
            TheoremId::T2_2_1 => "T2.2.1",
            TheoremId::T2_2_2 => "T2.2.2",
            TheoremId::T2_2_3 => "T2.2.3",
            TheoremId::T2_2_4 => "T2.2.4",
            TheoremId::T2_2_5 => "T2.2.5",
            TheoremId::C2_2 => "C2.2",
            TheoremId::L2_1 => "L2.1",
            TheoremId::T2_3 => "T2.3",
            TheoremId::T3_1 => "T3.1",
            TheoremId::T3_2 => "T3.2",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A failed check. `detail` names the elements involved with their labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub theorem: TheoremId,
    pub detail: String,
}

impl Violation {
    pub fn new(theorem: TheoremId, detail: impl Into<String>) -> Self {
        Violation { theorem, detail: detail.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.theorem, self.detail)
    }
}
