//! The named degree sets and the containments between them.

use serde::Serialize;

use crate::numtheory::{is_perfect_square, is_sum_of_three_squares, is_sum_of_two_squares};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, PartialOrd, Ord)]
pub enum DegreeSet {
    ZeroOnly,
    AllIntegers,
    Evens,
    NonNegative,
    NonPositive,
    PerfectSquares,
    NegPerfectSquares,
    SquaresAndTwiceSquares,
    NegSquaresAndTwiceSquares,
    SumsOfTwoSquares,
    NegSumsOfTwoSquares,
    /// `k ≥ 0` and `k ≠ 4^p (8q + 7)`.
    ThreeSquares,
    NegThreeSquares,
    NotTwoModFour,
}

use DegreeSet::*;

pub const ALL_SETS: [DegreeSet; 14] = [
    AllIntegers,
    NotTwoModFour,
    Evens,
    NonNegative,
    NonPositive,
    ThreeSquares,
    NegThreeSquares,
    SumsOfTwoSquares,
    NegSumsOfTwoSquares,
    SquaresAndTwiceSquares,
    NegSquaresAndTwiceSquares,
    PerfectSquares,
    NegPerfectSquares,
    ZeroOnly,
];

fn square_or_twice(k: i64) -> bool {
    is_perfect_square(k).is_some() || (k % 2 == 0 && is_perfect_square(k / 2).is_some())
}

impl DegreeSet {
    pub fn contains(self, k: i64) -> bool {
        match self {
            ZeroOnly => k == 0,
            AllIntegers => true,
            Evens => k % 2 == 0,
            NonNegative => k >= 0,
            NonPositive => k <= 0,
            PerfectSquares => is_perfect_square(k).is_some(),
            NegPerfectSquares => k <= 0 && is_perfect_square(-k).is_some(),
            SquaresAndTwiceSquares => square_or_twice(k),
            NegSquaresAndTwiceSquares => k <= 0 && square_or_twice(-k),
            SumsOfTwoSquares => is_sum_of_two_squares(k),
            NegSumsOfTwoSquares => k <= 0 && is_sum_of_two_squares(-k),
            ThreeSquares => is_sum_of_three_squares(k),
            NegThreeSquares => k <= 0 && is_sum_of_three_squares(-k),
            NotTwoModFour => k.rem_euclid(4) != 2,
        }
    }

    /// `{−k : k ∈ self}`.
    pub fn negate(self) -> DegreeSet {
        match self {
            NonNegative => NonPositive,
            NonPositive => NonNegative,
            PerfectSquares => NegPerfectSquares,
            NegPerfectSquares => PerfectSquares,
            SquaresAndTwiceSquares => NegSquaresAndTwiceSquares,
            NegSquaresAndTwiceSquares => SquaresAndTwiceSquares,
            SumsOfTwoSquares => NegSumsOfTwoSquares,
            NegSumsOfTwoSquares => SumsOfTwoSquares,
            ThreeSquares => NegThreeSquares,
            NegThreeSquares => ThreeSquares,
            other => other,
        }
    }

    fn is_negative_side(self) -> bool {
        matches!(
            self,
            NonPositive | NegPerfectSquares | NegSquaresAndTwiceSquares | NegSumsOfTwoSquares | NegThreeSquares
        )
    }

    /// `self ⊆ other`, from the known chain of inclusions.
    pub fn is_subset_of(self, other: DegreeSet) -> bool {
        if self == other || self == ZeroOnly || other == AllIntegers {
            return true;
        }
        if self.is_negative_side() && (other.is_negative_side() || other == NotTwoModFour) {
            return self.negate().is_subset_of_positive(other.negate());
        }
        self.is_subset_of_positive(other)
    }

    /// Inclusions among the non-negative sets, plus `NotTwoModFour` (closed under negation).
    fn is_subset_of_positive(self, other: DegreeSet) -> bool {
        const CHAIN: [DegreeSet; 5] =
            [PerfectSquares, SquaresAndTwiceSquares, SumsOfTwoSquares, ThreeSquares, NonNegative];
        let pos = |s| CHAIN.iter().position(|&c| c == s);
        match (pos(self), pos(other)) {
            (Some(i), Some(j)) => i <= j,
            _ => self == other || (self == PerfectSquares && other == NotTwoModFour),
        }
    }

    /// Largest named set known to lie inside both.
    pub fn meet(self, other: DegreeSet) -> DegreeSet {
        if self.is_subset_of(other) {
            return self;
        }
        if other.is_subset_of(self) {
            return other;
        }
        ALL_SETS
            .into_iter()
            .find(|s| s.is_subset_of(self) && s.is_subset_of(other))
            .unwrap_or(ZeroOnly)
    }

    /// Largest named set known to lie inside the union of `sets`.
    pub fn join_all(sets: &[DegreeSet]) -> DegreeSet {
        let has = |s: DegreeSet| sets.iter().any(|x| s.is_subset_of(*x));
        if has(AllIntegers)
            || (has(NonNegative) && has(NonPositive))
            || (has(Evens) && has(NotTwoModFour))
        {
            return AllIntegers;
        }
        ALL_SETS.into_iter().find(|&s| has(s)).unwrap_or(ZeroOnly)
    }

    pub fn name(self) -> &'static str {
        match self {
            ZeroOnly => "ZeroOnly",
            AllIntegers => "AllIntegers",
            Evens => "Evens",
            NonNegative => "NonNegative",
            NonPositive => "NonPositive",
            PerfectSquares => "PerfectSquares",
            NegPerfectSquares => "NegPerfectSquares",
            SquaresAndTwiceSquares => "SquaresAndTwiceSquares",
            NegSquaresAndTwiceSquares => "NegSquaresAndTwiceSquares",
            SumsOfTwoSquares => "SumsOfTwoSquares",
            NegSumsOfTwoSquares => "NegSumsOfTwoSquares",
            ThreeSquares => "ThreeSquares",
            NegThreeSquares => "NegThreeSquares",
            NotTwoModFour => "NotTwoModFour",
        }
    }

    /// Why a degree outside the set is excluded, e.g. `number_theory: sum of two squares`.
    pub fn exclusion(self) -> &'static str {
        match self {
            ZeroOnly => "degree: only the zero map exists",
            AllIntegers => "none",
            Evens => "parity: degree must be even",
            NonNegative => "sign: degree must be nonnegative",
            NonPositive => "sign: degree must be nonpositive",
            PerfectSquares => "number_theory: perfect square",
            NegPerfectSquares => "number_theory: negative of a perfect square",
            SquaresAndTwiceSquares => "number_theory: square or twice a square",
            NegSquaresAndTwiceSquares => "number_theory: negative of a square or twice a square",
            SumsOfTwoSquares => "number_theory: sum of two squares",
            NegSumsOfTwoSquares => "number_theory: negative of a sum of two squares",
            ThreeSquares => "number_theory: sum of three squares",
            NegThreeSquares => "number_theory: negative of a sum of three squares",
            NotTwoModFour => "number_theory: difference of two squares (not 2 mod 4)",
        }
    }

    pub fn members_in(self, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).filter(|&k| self.contains(k)).collect()
    }
}
