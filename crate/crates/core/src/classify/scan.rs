//! Complete search over self-maps of `(CP²)#n`, `n ≡ 2 (mod 4)`, checked
//! against the sum-of-two-squares prediction.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::manifold::QuasitoricSum;
use crate::numtheory::is_sum_of_two_squares;
use crate::search::{find_certificate, Budget, SearchOutcome};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub copies: u32,
    pub k_max: u32,
    pub realizable: Vec<i64>,
    pub not_realizable: Vec<i64>,
    /// Degrees the budget did not settle.
    pub unknown: Vec<i64>,
    pub agreements: usize,
    /// Realizable degrees that are not sums of two squares; each would refute the conjecture.
    pub refutations: Vec<i64>,
    /// Sums of two squares the search failed to realize; each indicates a bug.
    pub missing_members: Vec<i64>,
}

impl ScanReport {
    pub fn consistent(&self) -> bool {
        self.refutations.is_empty() && self.missing_members.is_empty() && self.unknown.is_empty()
    }
}

pub fn conjecture_scan(copies: u32, k_max: u32, budget: &Budget) -> Result<ScanReport> {
    if copies % 4 != 2 || copies < 6 {
        return Err(Error::Invalid(format!(
            "copies must be 2 mod 4 and at least 6, got {copies}; multiples of 4 realize every nonnegative degree"
        )));
    }
    if k_max < 1 {
        return Err(Error::Invalid("k_max must be at least 1".into()));
    }
    let m = QuasitoricSum::new(copies, 0, 0)?;
    let mut report = ScanReport {
        copies,
        k_max,
        realizable: vec![],
        not_realizable: vec![],
        unknown: vec![],
        agreements: 0,
        refutations: vec![],
        missing_members: vec![],
    };
    for k in 0..=k_max as i64 {
        let predicted = is_sum_of_two_squares(k);
        let realized = match find_certificate(&m, &m, k, 1, budget)? {
            SearchOutcome::Found(_) => Some(true),
            SearchOutcome::NoneExists(_) => Some(false),
            SearchOutcome::Unknown(_) => None,
        };
        match realized {
            Some(true) => report.realizable.push(k),
            Some(false) => report.not_realizable.push(k),
            None => report.unknown.push(k),
        }
        match (realized, predicted) {
            (Some(r), p) if r == p => report.agreements += 1,
            (Some(true), false) => report.refutations.push(k),
            (Some(false), true) => report.missing_members.push(k),
            _ => {}
        }
    }
    Ok(report)
}
