//! Necessary conditions on `Pᵗ A P = k B` that rule a degree out without search.
//!
//! None of these is sufficient: an empty report only means the cheap
//! invariants are silent.

use serde::Serialize;

use crate::manifold::QuasitoricSum;
use crate::numtheory::is_perfect_square;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum ObstructionKind {
    Rank,
    DetSquare,
    Inertia,
    Parity,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    pub detail: String,
    /// Name of the result the check encodes.
    #[serde(rename = "paper_tag")]
    pub source: &'static str,
}

pub const TAG_RANK: &str = "rank: no nonzero degree onto a manifold of larger rank";
pub const TAG_DET: &str = "determinant: det(P)^2 = k^l det B / det A";
pub const TAG_INERTIA: &str = "inertia: kB must embed in the real form of A";
pub const TAG_PARITY: &str = "parity: an even form only takes even values";

pub fn rank_obstruction(m: &QuasitoricSum, n: &QuasitoricSum, k: i64) -> Option<Obstruction> {
    (k != 0 && m.rank() < n.rank()).then(|| Obstruction {
        kind: ObstructionKind::Rank,
        detail: format!("rank {} of {m} is less than rank {} of {n}", m.rank(), n.rank()),
        source: TAG_RANK,
    })
}

pub fn det_square_obstruction(m: &QuasitoricSum, n: &QuasitoricSum, k: i64) -> Option<Obstruction> {
    if k == 0 || m.rank() != n.rank() {
        return None;
    }
    let l = m.rank();
    let s = det_sign(m) * det_sign(n);
    let detail = if l.is_multiple_of(2) {
        (s == -1).then(|| {
            format!("equal even rank {l} with det A * det B = -1 forces det(P)^2 < 0")
        })
    } else if k.signum() != s {
        Some(format!("odd rank {l}: det(P)^2 = {k}^{l} * {s} would be negative"))
    } else if is_perfect_square(k.abs()).is_none() {
        Some(format!("odd rank {l}: |k| = {} is not a perfect square", k.abs()))
    } else {
        None
    };
    detail.map(|detail| Obstruction { kind: ObstructionKind::DetSquare, detail, source: TAG_DET })
}

pub fn inertia_obstruction(m: &QuasitoricSum, n: &QuasitoricSum, k: i64) -> Option<Obstruction> {
    if k == 0 {
        return None;
    }
    let (ap, an) = m.inertia();
    let (mut bp, mut bn) = n.inertia();
    if k < 0 {
        std::mem::swap(&mut bp, &mut bn);
    }
    (bp > ap || bn > an).then(|| Obstruction {
        kind: ObstructionKind::Inertia,
        detail: format!("inertia of kB is ({bp},{bn}) but {m} has only ({ap},{an})"),
        source: TAG_INERTIA,
    })
}

pub fn parity_obstruction(m: &QuasitoricSum, n: &QuasitoricSum, k: i64) -> Option<Obstruction> {
    (!m.is_odd() && n.is_odd() && k % 2 != 0).then(|| Obstruction {
        kind: ObstructionKind::Parity,
        detail: format!("{m} has an even form, {n} has a unit diagonal entry and k = {k} is odd"),
        source: TAG_PARITY,
    })
}

/// Runs every check in the fixed order rank, inertia, det-square, parity.
pub fn run_all(m: &QuasitoricSum, n: &QuasitoricSum, k: i64) -> Vec<Obstruction> {
    [
        rank_obstruction(m, n, k),
        inertia_obstruction(m, n, k),
        det_square_obstruction(m, n, k),
        parity_obstruction(m, n, k),
    ]
    .into_iter()
    .flatten()
    .collect()
}

/// Sign of the determinant of the intersection form: (−1)^(b+c).
pub fn det_sign(m: &QuasitoricSum) -> i64 {
    if (m.b + m.c).is_multiple_of(2) {
        1
    } else {
        -1
    }
}
