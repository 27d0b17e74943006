//! Symbolic degree sets `D(M, N)`.
//!
//! A pair is answered `Exact` when a classification result covers it, up to
//! orientation reversal and isomorphism of odd forms, or when the realized
//! set already fills the bound left by the invariants in
//! [`crate::obstructions`]. Otherwise the answer is a `LowerBound`: degrees
//! built by stabilization and block sums from known pieces.

mod algebra;
mod realize;
mod recipes;
mod scan;
mod sets;

use std::collections::HashMap;

use serde::{Serialize, Serializer};

use crate::manifold::QuasitoricSum;
use crate::obstructions::det_sign;

pub use algebra::{
    block_sum_certificates, iso_between, iso_class, mirror_domain, mirror_target, odd_iso_step, reversal_matrix,
    stabilize_certificate, summand_positions, transport_domain, transport_target, universal_dominator,
};
pub use realize::{realize, realize_with};
pub use recipes::{quaternion_matrix, recipe, square_embedding};
pub use scan::{conjecture_scan, ScanReport};
pub use sets::{DegreeSet, ALL_SETS};

use DegreeSet::*;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Status {
    Exact,
    LowerBound,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DegreeAnswer {
    pub status: Status,
    pub set: DegreeSet,
    pub sources: Vec<String>,
    /// Set when exactness would follow from the open two-square conjecture for self-maps.
    pub conjecture_flag: Option<String>,
}

impl DegreeAnswer {
    pub fn is_exact(&self) -> bool {
        self.status == Status::Exact
    }

    /// Known to be realizable; for exact answers also necessary.
    pub fn contains(&self, k: i64) -> bool {
        self.set.contains(k)
    }

    /// `Some(false)` only when the answer is exact and excludes `k`.
    pub fn decides(&self, k: i64) -> Option<bool> {
        match (self.status, self.set.contains(k)) {
            (_, true) => Some(true),
            (Status::Exact, false) => Some(false),
            (Status::LowerBound, false) => None,
        }
    }
}

impl Serialize for DegreeAnswer {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("DegreeAnswer", 5)?;
        st.serialize_field("status", &self.status)?;
        st.serialize_field("set_name", self.set.name())?;
        st.serialize_field("predicate_examples", &self.set.members_in(-10, 10))?;
        st.serialize_field("sources", &self.sources)?;
        st.serialize_field("conjecture_flag", &self.conjecture_flag)?;
        st.end()
    }
}

const ONTO_CP2_MIXED: &str = "onto CP2: a CP2 or anti-CP2 summand plus an S2xS2 summand gives every degree";
const ONTO_CP2_EVEN: &str = "onto CP2 from (S2xS2)#c: exactly the even degrees";
const ONTO_CP2_FOUR: &str = "onto CP2 from (CP2)#a, a>=4: sums of four squares";
const ONTO_CP2_THREE: &str = "onto CP2 from (CP2)#3: sums of three squares";
const ONTO_CP2_TWO: &str = "onto CP2 from (CP2)#2: sums of two squares";
const ONTO_CP2_DIFF: &str = "onto CP2 from CP2#anti-CP2: differences of two squares";
const ONTO_CP2_ONE: &str = "CP2 to CP2: squares";
const ONTO_H_DEFINITE: &str = "onto S2xS2 from a definite sum: only degree 0";
const ONTO_H_ALL: &str = "onto S2xS2 from an S2xS2 summand or an indefinite odd sum of rank >= 3: every degree";
const ONTO_2CP2_ZERO: &str = "onto CP2#CP2 from CP2#anti-CP2 or S2xS2: only degree 0";
const ONTO_2CP2_TWO: &str = "onto CP2#CP2: sums of two squares";
const ONTO_2CP2_NONNEG: &str = "onto CP2#CP2 from four positive squares: every nonnegative degree";
const ONTO_2CP2_EVEN: &str = "onto CP2#CP2 from (S2xS2)#n, n>=2: exactly the even degrees";
const ONTO_2CP2_ALL: &str = "onto CP2#CP2 from CP2#anti-CP2#S2xS2 or (CP2)#2#(anti-CP2)#2: every degree";
const ONTO_MIXED_ZERO: &str = "onto CP2#anti-CP2 from a definite sum: only degree 0";
const ONTO_MIXED_DIFF: &str = "CP2#anti-CP2 to itself: degrees not 2 mod 4";
const ONTO_MIXED_ALL: &str = "onto CP2#anti-CP2 from a sum containing (CP2)#2#anti-CP2 or CP2#S2xS2: every degree";
const SELF_ODD: &str = "(CP2)#n to itself, n odd: squares";
const SELF_FOUR: &str = "(CP2)#n to itself, n divisible by 4: every nonnegative degree";
const FROM_HYPERBOLIC: &str = "(S2xS2)#l onto (CP2#anti-CP2)#n#(S2xS2)#m, l>=m+n: exactly the even degrees";
const BALANCED: &str = "(CP2#anti-CP2)#p#(S2xS2)#l onto (CP2#anti-CP2)#n#(S2xS2)#m, p>=n, l>=m: every degree";
const DOMINATOR: &str = "domain contains the universal dominator (d, e, d+e+f) of the target: every degree";
const RANK: &str = "rank: no nonzero degree onto a manifold of larger rank";
const OBSTRUCTION_COMPLETE: &str = "obstruction-complete: the realized degrees fill the invariant bound";
const SELF_TWO_MOD_FOUR: &str =
    "(CP2)#n to itself, n = 2 mod 4: sums of two squares are realized; the converse is an open conjecture";

const CONSTRUCTIVE_MIXED_TO_H: &str = "CP2#anti-CP2 onto S2xS2: even degrees by explicit witness";
const CONSTRUCTIVE_H_TO_MIXED: &str = "S2xS2 onto CP2#anti-CP2: even degrees by explicit witness";

/// Stated results for concrete triples; the flag is false for entries that
/// only assert realizability.
fn base_entry(m: QuasitoricSum, n: QuasitoricSum) -> Option<(DegreeSet, &'static str, bool)> {
    let (a, b, c) = m.triple();
    let exact = |s, tag| Some((s, tag, true));
    let contains = |x: u32, y: u32, z: u32| a >= x && b >= y && c >= z;
    match n.triple() {
        (1, 0, 0) => match (a, b, c) {
            _ if (a >= 1 || b >= 1) && c >= 1 => exact(AllIntegers, ONTO_CP2_MIXED),
            (0, 0, _) => exact(Evens, ONTO_CP2_EVEN),
            (_, 0, 0) if a >= 4 => exact(NonNegative, ONTO_CP2_FOUR),
            (0, _, 0) if b >= 4 => exact(NonPositive, ONTO_CP2_FOUR),
            (3, 0, 0) => exact(ThreeSquares, ONTO_CP2_THREE),
            (0, 3, 0) => exact(NegThreeSquares, ONTO_CP2_THREE),
            (2, 0, 0) => exact(SumsOfTwoSquares, ONTO_CP2_TWO),
            (0, 2, 0) => exact(NegSumsOfTwoSquares, ONTO_CP2_TWO),
            (1, 1, 0) => exact(NotTwoModFour, ONTO_CP2_DIFF),
            (1, 0, 0) => exact(PerfectSquares, ONTO_CP2_ONE),
            (0, 1, 0) => exact(NegPerfectSquares, ONTO_CP2_ONE),
            _ => None,
        },
        (0, 0, 1) => match (a, b, c) {
            (_, 0, 0) | (0, _, 0) => exact(ZeroOnly, ONTO_H_DEFINITE),
            _ if c >= 1 || (a >= 2 && b >= 1) || (a >= 1 && b >= 2) => exact(AllIntegers, ONTO_H_ALL),
            (1, 1, 0) => Some((Evens, CONSTRUCTIVE_MIXED_TO_H, false)),
            _ => None,
        },
        (2, 0, 0) => match (a, b, c) {
            (1, 1, 0) | (0, 0, 1) => exact(ZeroOnly, ONTO_2CP2_ZERO),
            (2, 0, 0) | (3, 0, 0) | (1, 0, 1) | (2, 0, 1) | (2, 1, 0) | (3, 1, 0) => {
                exact(SumsOfTwoSquares, ONTO_2CP2_TWO)
            }
            (_, 0, 0) | (_, 1, 0) if a >= 4 => exact(NonNegative, ONTO_2CP2_NONNEG),
            (3, 0, 1) => exact(NonNegative, ONTO_2CP2_NONNEG),
            (0, 0, _) if c >= 2 => exact(Evens, ONTO_2CP2_EVEN),
            (1, 1, 1) | (2, 2, 0) => exact(AllIntegers, ONTO_2CP2_ALL),
            _ => None,
        },
        (1, 1, 0) => match (a, b, c) {
            (_, 0, 0) | (0, _, 0) => exact(ZeroOnly, ONTO_MIXED_ZERO),
            (1, 1, 0) => exact(NotTwoModFour, ONTO_MIXED_DIFF),
            _ if contains(2, 1, 0) || contains(1, 2, 0) || contains(1, 0, 1) || contains(0, 1, 1) => {
                exact(AllIntegers, ONTO_MIXED_ALL)
            }
            (0, 0, _) => Some((Evens, CONSTRUCTIVE_H_TO_MIXED, false)),
            _ => None,
        },
        (x, 0, 0) if m == n && x % 2 == 1 => exact(PerfectSquares, SELF_ODD),
        (x, 0, 0) if m == n && x % 4 == 0 => exact(NonNegative, SELF_FOUR),
        (x, y, z) if x == y && x >= 1 && z >= 1 => {
            if a == 0 && b == 0 && c >= z + x {
                exact(Evens, FROM_HYPERBOLIC)
            } else if a == b && a >= x && c >= z {
                exact(AllIntegers, BALANCED)
            } else {
                None
            }
        }
        _ => None,
    }
}

/// A set for `(m, n)` obtained from [`base_entry`] through orientation
/// reversal on either side and isomorphic odd forms.
#[derive(Clone, Debug)]
struct Known {
    set: DegreeSet,
    source: String,
    exact: bool,
}

fn known_candidates(m: &QuasitoricSum, n: &QuasitoricSum) -> Vec<Known> {
    let mut out = Vec::new();
    if m.rank() < n.rank() {
        out.push(Known { set: ZeroOnly, source: RANK.into(), exact: true });
    }
    if universal_dominator(n).is_summand_of(m) {
        out.push(Known { set: AllIntegers, source: DOMINATOR.into(), exact: true });
    }
    for (flip_m, flip_n) in [(false, false), (true, true), (true, false), (false, true)] {
        let mo = if flip_m { m.reverse_orientation() } else { *m };
        let no = if flip_n { n.reverse_orientation() } else { *n };
        for rm in iso_class(&mo) {
            for rn in iso_class(&no) {
                let Some((set, tag, exact)) = base_entry(rm, rn) else { continue };
                let set = if flip_m != flip_n { set.negate() } else { set };
                let mut source = tag.to_string();
                if flip_m || flip_n {
                    source.push_str(" [orientation reversed]");
                }
                if rm != mo || rn != no {
                    source.push_str(&format!(" [via isomorphic forms {rm} -> {rn}]"));
                }
                out.push(Known { set, source, exact });
            }
        }
    }
    out
}

fn known(m: &QuasitoricSum, n: &QuasitoricSum) -> Option<Known> {
    let cands = known_candidates(m, n);
    cands.iter().find(|k| k.exact).or_else(|| cands.first()).cloned()
}

/// Every exact set the table yields for `(m, n)`; they should all agree.
pub fn exact_sources(m: &QuasitoricSum, n: &QuasitoricSum) -> Vec<(DegreeSet, String)> {
    known_candidates(m, n).into_iter().filter(|k| k.exact).map(|k| (k.set, k.source)).collect()
}

/// Smallest named set containing every degree the invariants allow, if one exists.
pub fn obstruction_bound(m: &QuasitoricSum, n: &QuasitoricSum) -> Option<DegreeSet> {
    if m.rank() < n.rank() {
        return Some(ZeroOnly);
    }
    let (ap, an) = m.inertia();
    let (bp, bn) = n.inertia();
    let pos = bp <= ap && bn <= an;
    let neg = bn <= ap && bp <= an;
    let sign = match (pos, neg) {
        (true, true) => AllIntegers,
        (true, false) => NonNegative,
        (false, true) => NonPositive,
        (false, false) => return Some(ZeroOnly),
    };
    let evens = !m.is_odd() && n.is_odd();
    if m.rank() == n.rank() {
        let s = det_sign(m) * det_sign(n);
        if m.rank().is_multiple_of(2) {
            if s == -1 {
                return Some(ZeroOnly);
            }
        } else {
            // odd rank forces an odd form on both sides, so parity is silent
            let sq = if s == 1 { PerfectSquares } else { NegPerfectSquares };
            return Some(if sq.is_subset_of(sign) { sq } else { ZeroOnly });
        }
    }
    match (sign, evens) {
        (s, false) => Some(s),
        (AllIntegers, true) => Some(Evens),
        _ => None,
    }
}

const BASE_TARGETS: [QuasitoricSum; 6] = [
    QuasitoricSum { a: 1, b: 0, c: 0 },
    QuasitoricSum { a: 0, b: 1, c: 0 },
    QuasitoricSum { a: 0, b: 0, c: 1 },
    QuasitoricSum { a: 2, b: 0, c: 0 },
    QuasitoricSum { a: 0, b: 2, c: 0 },
    QuasitoricSum { a: 1, b: 1, c: 0 },
];

/// Domains larger than this skip block-sum enumeration in the lower bound.
const CLOSURE_RANK_LIMIT: usize = 24;

fn sub_triples(m: &QuasitoricSum) -> impl Iterator<Item = QuasitoricSum> + '_ {
    (0..=m.a).flat_map(move |a| {
        (0..=m.b).flat_map(move |b| (0..=m.c).filter_map(move |c| QuasitoricSum::new(a, b, c).ok()))
    })
}

#[derive(Default)]
struct Closure {
    memo: HashMap<(QuasitoricSum, QuasitoricSum), (DegreeSet, Vec<String>)>,
}

impl Closure {
    /// Realizable degrees for `(m, n)` from known pieces.
    fn lower(&mut self, m: &QuasitoricSum, n: &QuasitoricSum) -> (DegreeSet, Vec<String>) {
        if let Some(hit) = self.memo.get(&(*m, *n)) {
            return hit.clone();
        }
        let mut cands: Vec<(DegreeSet, String)> = Vec::new();
        if let Some(k) = known(m, n) {
            cands.push((k.set, k.source));
        }
        if !cands.iter().any(|c| c.0 == AllIntegers) {
            for rm in iso_class(m) {
                for sub in sub_triples(&rm).filter(|s| *s != rm) {
                    if let Some(k) = known(&sub, n) {
                        if k.set != ZeroOnly {
                            cands.push((k.set, format!("stabilization of {sub} -> {n}: {}", k.source)));
                        }
                    }
                }
            }
        }
        if m.rank() <= CLOSURE_RANK_LIMIT && !cands.iter().any(|c| c.0 == AllIntegers) {
            for rn in iso_class(n) {
                for n1 in BASE_TARGETS.iter().filter(|t| t.is_summand_of(&rn)) {
                    let Some(n2) = n1.complement_in(&rn) else { continue };
                    for rm in iso_class(m) {
                        for m1 in sub_triples(&rm) {
                            let Some(m2) = m1.complement_in(&rm) else { continue };
                            if m1.rank() < n1.rank() || m2.rank() < n2.rank() {
                                continue;
                            }
                            let (s1, _) = self.lower(&m1, n1);
                            if s1 == ZeroOnly {
                                continue;
                            }
                            let (s2, _) = self.lower(&m2, &n2);
                            let s = s1.meet(s2);
                            if s != ZeroOnly {
                                cands.push((s, format!("block sum of {m1} -> {n1} and {m2} -> {n2}")));
                            }
                        }
                    }
                }
            }
        }
        let sets: Vec<DegreeSet> = cands.iter().map(|c| c.0).collect();
        let set = DegreeSet::join_all(&sets);
        let mut sources: Vec<String> = cands
            .into_iter()
            .filter(|(s, _)| *s != ZeroOnly && s.is_subset_of(set))
            .map(|(_, src)| src)
            .collect();
        sources.dedup();
        sources.truncate(3);
        let out = (set, sources);
        self.memo.insert((*m, *n), out.clone());
        out
    }
}

fn two_mod_four_self_map(m: &QuasitoricSum, n: &QuasitoricSum) -> bool {
    m == n && m.c == 0 && (m.a == 0 || m.b == 0) && (m.a + m.b) % 4 == 2 && m.a + m.b >= 6
}

/// The degree set of `m → n` with its provenance.
pub fn degree_set(m: &QuasitoricSum, n: &QuasitoricSum) -> DegreeAnswer {
    let exact = exact_sources(m, n);
    if let Some((set, _)) = exact.first() {
        let mut sources: Vec<String> = exact.iter().filter(|e| e.0 == *set).map(|e| e.1.clone()).collect();
        sources.dedup();
        sources.truncate(3);
        return DegreeAnswer { status: Status::Exact, set: *set, sources, conjecture_flag: None };
    }
    if two_mod_four_self_map(m, n) {
        return DegreeAnswer {
            status: Status::LowerBound,
            set: SumsOfTwoSquares,
            sources: vec![SELF_TWO_MOD_FOUR.into()],
            conjecture_flag: Some(format!(
                "exact if every prime 3 mod 4 divides each realizable degree of {m} to an even power"
            )),
        };
    }
    let (set, mut sources) = Closure::default().lower(m, n);
    if set == AllIntegers || obstruction_bound(m, n) == Some(set) {
        sources.push(OBSTRUCTION_COMPLETE.into());
        return DegreeAnswer { status: Status::Exact, set, sources, conjecture_flag: None };
    }
    DegreeAnswer { status: Status::LowerBound, set, sources, conjecture_flag: None }
}
