//! A deliberately wrong engine for fault-injection tests of the harness.

use nclosed_core::nclosed::{is_n_closed, ClosednessEngine};
use nclosed_core::{GSubset, Magma, Result};

/// Stops the product-set iteration one step early: it answers
/// (n-1)-closedness when asked about n-closedness for `n >= 3`.
#[derive(Debug, Clone, Copy, Default)]
pub struct OffByOneEngine;

impl ClosednessEngine for OffByOneEngine {
    fn name(&self) -> &str {
        "mutant-off-by-one"
    }

    fn is_n_closed(&self, owner: &dyn Magma, d: &GSubset, n: usize) -> Result<bool> {
        is_n_closed(owner, d, if n >= 3 { n - 1 } else { n })
    }
}
