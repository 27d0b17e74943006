//! Building certificates: closed-form recipes, then stabilization and block
//! sums of recipes, then bounded search.

use std::collections::HashMap;

use crate::manifold::QuasitoricSum;
use crate::obstructions::run_all;
use crate::search::{default_box_bound, find_certificate, Budget, Certificate, SearchOutcome};

use super::algebra::{
    block_sum_certificates, iso_class, mirror_domain, mirror_target, stabilize_certificate, transport_domain,
    transport_target,
};
use super::recipes::recipe;
use super::{degree_set, sub_triples, BASE_TARGETS};

/// Indefinite searches beyond this many box points are not attempted.
const BOX_POINT_LIMIT: f64 = 5e7;

/// Decides degree `k` with the default budget.
pub fn realize(m: &QuasitoricSum, n: &QuasitoricSum, k: i64) -> SearchOutcome {
    realize_with(m, n, k, &Budget::default(), None)
}

/// As [`realize`]; the fallback search uses `box_bound` (default
/// `max(8, ⌈√|k|⌉ + 4)`) for indefinite domains.
pub fn realize_with(
    m: &QuasitoricSum,
    n: &QuasitoricSum,
    k: i64,
    budget: &Budget,
    box_bound: Option<u64>,
) -> SearchOutcome {
    if k == 0 {
        return SearchOutcome::Found(Certificate::zero(*m, *n));
    }
    if let Some(o) = run_all(m, n, k).into_iter().next() {
        return SearchOutcome::NoneExists(format!("{:?}: {}", o.kind, o.detail));
    }
    let answer = degree_set(m, n);
    if answer.decides(k) == Some(false) {
        return SearchOutcome::NoneExists(answer.set.exclusion().to_string());
    }
    if let Some(cert) = Planner::new(k).build(m, n) {
        return SearchOutcome::Found(cert);
    }
    let bound = box_bound.unwrap_or_else(|| default_box_bound(k)).max(1);
    if !m.is_definite() && ((2 * bound + 1) as f64).powi(m.rank() as i32 - 1) > BOX_POINT_LIMIT {
        return SearchOutcome::Unknown(format!("no construction found and {m} is too large for a bounded search"));
    }
    match find_certificate(m, n, k, bound, budget) {
        Ok(outcome) => outcome,
        Err(e) => SearchOutcome::Unknown(e.to_string()),
    }
}

struct Planner {
    k: i64,
    memo: HashMap<(QuasitoricSum, QuasitoricSum), Option<Certificate>>,
}

impl Planner {
    fn new(k: i64) -> Self {
        Planner { k, memo: HashMap::new() }
    }

    /// A recipe for `(m, n)` itself, after reversing orientations and
    /// changing to isomorphic forms.
    fn direct(&self, m: &QuasitoricSum, n: &QuasitoricSum) -> Option<Certificate> {
        for (flip_m, flip_n) in [(false, false), (true, true), (true, false), (false, true)] {
            let mo = if flip_m { m.reverse_orientation() } else { *m };
            let no = if flip_n { n.reverse_orientation() } else { *n };
            let k = if flip_m != flip_n { -self.k } else { self.k };
            for rm in iso_class(&mo) {
                for rn in iso_class(&no) {
                    let Some(p) = recipe(&rm, &rn, k) else { continue };
                    let Ok(cert) = Certificate::new(p, rm, rn, k) else { continue };
                    let Some(cert) = transport_domain(&cert, &mo) else { continue };
                    let Some(mut cert) = transport_target(&cert, &no) else { continue };
                    if flip_m {
                        cert = mirror_domain(&cert);
                    }
                    if flip_n {
                        cert = mirror_target(&cert);
                    }
                    return Some(cert);
                }
            }
        }
        None
    }

    /// A recipe on a summand of `m`, padded with zero rows.
    fn stabilized(&self, m: &QuasitoricSum, n: &QuasitoricSum) -> Option<Certificate> {
        if let Some(c) = self.direct(m, n) {
            return Some(c);
        }
        for rm in iso_class(m) {
            for sub in sub_triples(&rm).filter(|s| *s != rm && s.rank() >= n.rank()) {
                if !run_all(&sub, n, self.k).is_empty() {
                    continue;
                }
                let Some(c) = self.direct(&sub, n) else { continue };
                let extra = sub.complement_in(&rm).expect("proper summand");
                if let Some(c) = transport_domain(&stabilize_certificate(&c, &extra), m) {
                    return Some(c);
                }
            }
        }
        None
    }

    fn build(&mut self, m: &QuasitoricSum, n: &QuasitoricSum) -> Option<Certificate> {
        if let Some(hit) = self.memo.get(&(*m, *n)) {
            return hit.clone();
        }
        let out = self.build_uncached(m, n);
        self.memo.insert((*m, *n), out.clone());
        out
    }

    fn build_uncached(&mut self, m: &QuasitoricSum, n: &QuasitoricSum) -> Option<Certificate> {
        if !run_all(m, n, self.k).is_empty() {
            return None;
        }
        if let Some(c) = self.stabilized(m, n) {
            return Some(c);
        }
        for rn in iso_class(n) {
            for n1 in BASE_TARGETS.iter().filter(|t| t.is_summand_of(&rn)) {
                let Some(n2) = n1.complement_in(&rn) else { continue };
                for rm in iso_class(m) {
                    for m1 in sub_triples(&rm) {
                        let Some(m2) = m1.complement_in(&rm) else { continue };
                        if !run_all(&m1, n1, self.k).is_empty() || !run_all(&m2, &n2, self.k).is_empty() {
                            continue;
                        }
                        let Some(c1) = self.stabilized(&m1, n1) else { continue };
                        let Some(c2) = self.build(&m2, &n2) else { continue };
                        let Ok(sum) = block_sum_certificates(&c1, &c2) else { continue };
                        let moved = transport_domain(&sum, m).and_then(|c| transport_target(&c, n));
                        if moved.is_some() {
                            return moved;
                        }
                    }
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::quaternion_matrix;
    use crate::search::verify_certificate;

    fn t(a: u32, b: u32, c: u32) -> QuasitoricSum {
        QuasitoricSum::new(a, b, c).unwrap()
    }

    fn found(m: QuasitoricSum, n: QuasitoricSum, k: i64) -> Certificate {
        match realize(&m, &n, k) {
            SearchOutcome::Found(c) => {
                assert!(verify_certificate(c.matrix(), &m, &n, k).unwrap());
                assert_eq!((c.domain(), c.target(), c.degree()), (m, n, k));
                c
            }
            other => panic!("{m} -> {n} at {k}: {other:?}"),
        }
    }

    #[test]
    fn listed_examples() {
        let c = found(t(4, 0, 0), t(4, 0, 0), 7);
        assert_eq!(c.matrix(), &quaternion_matrix(1, 1, 1, 2));
        let c = found(t(1, 0, 1), t(1, 0, 0), 3);
        assert_eq!(c.matrix().to_i64_rows().unwrap(), vec![vec![1], vec![1], vec![1]]);
        assert!(realize(&t(1, 1, 0), &t(1, 1, 0), 6).is_none());
    }

    #[test]
    fn mirrored_and_transported() {
        found(t(0, 2, 0), t(1, 0, 0), -5);
        found(t(0, 1, 1), t(0, 1, 0), 7);
        found(t(2, 1, 0), t(1, 0, 0), -6);
        found(t(3, 1, 0), t(2, 0, 0), 5);
        found(t(0, 0, 1), t(0, 1, 0), -4);
    }

    #[test]
    fn block_sums_and_stabilization() {
        for k in [1, 2, 4, 5, 8, 9, 10, 13] {
            found(t(6, 0, 0), t(6, 0, 0), k);
        }
        found(t(2, 2, 1), t(2, 2, 1), 2);
        found(t(0, 0, 3), t(1, 1, 1), 6);
        found(t(3, 1, 2), t(1, 0, 1), -11);
    }

    #[test]
    fn exact_exclusions_are_reported() {
        match realize(&t(2, 0, 0), &t(1, 0, 0), 3) {
            SearchOutcome::NoneExists(why) => assert_eq!(why, "number_theory: sum of two squares"),
            other => panic!("{other:?}"),
        }
        match realize(&t(1, 0, 0), &t(2, 0, 0), 1) {
            SearchOutcome::NoneExists(why) => assert!(why.starts_with("Rank"), "{why}"),
            other => panic!("{other:?}"),
        }
        assert!(realize(&t(6, 0, 0), &t(6, 0, 0), 3).is_none());
    }
}
