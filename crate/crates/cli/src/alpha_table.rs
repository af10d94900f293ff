//! Reference shift parameters shipped with the binary, so table-driven
//! benchmark runs need no tuning pass.

use anyhow::{anyhow, Result};
use ave_core::Method;
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
pub struct AlphaEntry {
    pub p: f64,
    pub q: f64,
    pub m: usize,
    pub method: Method,
    pub alpha: f64,
}

static TABLE_JSON: &str = include_str!("../data/alpha_tables.json");

pub fn reference_table() -> Vec<AlphaEntry> {
    serde_json::from_str(TABLE_JSON).expect("embedded alpha table is valid JSON")
}

/// Looks up the reference alpha for one benchmark cell. Monolayer variants
/// share the hss-like entries; Picard has no alpha.
pub fn lookup(table: &[AlphaEntry], p: f64, q: f64, m: usize, method: Method) -> Result<f64> {
    let key_method = match method {
        Method::HssLikeResidual => Method::HssLike,
        other => other,
    };
    table
        .iter()
        .find(|e| e.p == p && e.q == q && e.m == m && e.method == key_method)
        .map(|e| e.alpha)
        .ok_or_else(|| {
            anyhow!("no reference alpha for p={p}, q={q}, m={m}, method={method} (reference data covers p in {{0, 0.5}}, q in {{0, 1, 10, 100}}, m in {{10, 20, 40, 80}})")
        })
}
