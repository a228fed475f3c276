//! Process-wide tally of Weil-bound checks on every computed point count and
//! class number.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use num_bigint::BigUint;
use serde::Serialize;

use crate::weil::WeilInterval;

static CHECKS: AtomicU64 = AtomicU64::new(0);
static VIOLATIONS: AtomicU64 = AtomicU64::new(0);
static DETAILS: Mutex<Vec<String>> = Mutex::new(Vec::new());

#[derive(Clone, Debug, Serialize)]
pub struct AuditSnapshot {
    pub checks: u64,
    pub violations: u64,
    pub details: Vec<String>,
}

fn record(ok: bool, what: impl FnOnce() -> String) -> bool {
    CHECKS.fetch_add(1, Ordering::Relaxed);
    if !ok {
        VIOLATIONS.fetch_add(1, Ordering::Relaxed);
        DETAILS.lock().unwrap().push(what());
    }
    ok
}

/// Checks `#C(F_{q^n})` against its Weil interval.
pub fn check_point_count(q: &BigUint, g: usize, n: usize, count: &BigUint) -> bool {
    let iv = WeilInterval::point_count(q, g, n);
    record(iv.contains(count), || format!("point count {count} for q={q} g={g} n={n} outside [{}, {}]", iv.lower, iv.upper))
}

/// Checks `#Cl(C_n)` against its Weil interval.
pub fn check_class_number(q: &BigUint, g: usize, n: usize, value: &BigUint) -> bool {
    let iv = WeilInterval::class_number(q, g, n);
    record(iv.contains(value), || format!("class number {value} for q={q} g={g} n={n} outside [{}, {}]", iv.lower, iv.upper))
}

pub fn snapshot() -> AuditSnapshot {
    AuditSnapshot {
        checks: CHECKS.load(Ordering::Relaxed),
        violations: VIOLATIONS.load(Ordering::Relaxed),
        details: DETAILS.lock().unwrap().clone(),
    }
}
