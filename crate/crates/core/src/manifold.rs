//! Quasitoric 4-manifolds as connected sums `a·CP² # b·(−CP²) # c·(S²×S²)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quadform::{IntForm, IntMatrix};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct QuasitoricSum {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

/// Validating constructor taking signed counts, so callers can report bad input.
pub fn make_sum(a: i64, b: i64, c: i64) -> Result<QuasitoricSum> {
    for (field, value) in [("a", a), ("b", b), ("c", c)] {
        if value < 0 {
            return Err(Error::NegativeCount { field, value });
        }
        if value > u32::MAX as i64 {
            return Err(Error::Invalid(format!("{field} = {value} is too large")));
        }
    }
    QuasitoricSum::new(a as u32, b as u32, c as u32)
}

impl QuasitoricSum {
    pub fn new(a: u32, b: u32, c: u32) -> Result<Self> {
        if a == 0 && b == 0 && c == 0 {
            return Err(Error::EmptySum);
        }
        Ok(QuasitoricSum { a, b, c })
    }

    pub const CP2: QuasitoricSum = QuasitoricSum { a: 1, b: 0, c: 0 };
    pub const ANTI_CP2: QuasitoricSum = QuasitoricSum { a: 0, b: 1, c: 0 };
    pub const S2XS2: QuasitoricSum = QuasitoricSum { a: 0, b: 0, c: 1 };

    pub fn rank(&self) -> usize {
        (self.a + self.b + 2 * self.c) as usize
    }

    pub fn signature(&self) -> i64 {
        self.a as i64 - self.b as i64
    }

    /// Positive and negative inertia of the intersection form.
    pub fn inertia(&self) -> (usize, usize) {
        ((self.a + self.c) as usize, (self.b + self.c) as usize)
    }

    /// Odd intersection form, i.e. some CP² or anti-CP² summand.
    pub fn is_odd(&self) -> bool {
        self.a + self.b > 0
    }

    pub fn is_definite(&self) -> bool {
        self.c == 0 && (self.a == 0 || self.b == 0)
    }

    /// `I_a ⊕ −I_b ⊕ H^c`, in that order.
    pub fn intersection_matrix(&self) -> IntForm {
        let n = self.rank();
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..self.a as usize {
            m.set(i, i, BigInt::from(1));
        }
        for i in self.a as usize..(self.a + self.b) as usize {
            m.set(i, i, BigInt::from(-1));
        }
        for h in 0..self.c as usize {
            let i = (self.a + self.b) as usize + 2 * h;
            m.set(i, i + 1, BigInt::from(1));
            m.set(i + 1, i, BigInt::from(1));
        }
        IntForm::new(m).expect("block form is symmetric")
    }

    pub fn reverse_orientation(&self) -> QuasitoricSum {
        QuasitoricSum { a: self.b, b: self.a, c: self.c }
    }

    pub fn connected_sum(&self, other: &QuasitoricSum) -> QuasitoricSum {
        QuasitoricSum { a: self.a + other.a, b: self.b + other.b, c: self.c + other.c }
    }

    /// Componentwise `self ≤ other`.
    pub fn is_summand_of(&self, other: &QuasitoricSum) -> bool {
        self.a <= other.a && self.b <= other.b && self.c <= other.c
    }

    /// `other − self` when that is a nonempty sum.
    pub fn complement_in(&self, other: &QuasitoricSum) -> Option<QuasitoricSum> {
        if !self.is_summand_of(other) {
            return None;
        }
        QuasitoricSum::new(other.a - self.a, other.b - self.b, other.c - self.c).ok()
    }

    pub fn triple(&self) -> (u32, u32, u32) {
        (self.a, self.b, self.c)
    }
}

/// Canonical text, e.g. `2*CP2 # -CP2 # S2xS2`.
impl fmt::Display for QuasitoricSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (count, atom) in [(self.a, "CP2"), (self.b, "-CP2"), (self.c, "S2xS2")] {
            if count == 0 {
                continue;
            }
            if !first {
                write!(f, " # ")?;
            }
            first = false;
            if count == 1 {
                write!(f, "{atom}")?;
            } else {
                write!(f, "{count}*{atom}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for QuasitoricSum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl FromStr for QuasitoricSum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_spec(s)
    }
}

/// Parses `TERM ("#" TERM)*` with `TERM := [COUNT "*"] ATOM`.
pub fn parse_spec(text: &str) -> Result<QuasitoricSum> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let mut counts = [0u64; 3];
    loop {
        let (idx, n) = p.term()?;
        counts[idx] = counts[idx]
            .checked_add(n)
            .filter(|&v| v <= u32::MAX as u64)
            .ok_or_else(|| p.error("count too large"))?;
        p.skip_ws();
        if p.pos == p.s.len() {
            break;
        }
        if p.peek() != Some(b'#') {
            return Err(p.error("expected '#' or end of input"));
        }
        p.pos += 1;
    }
    QuasitoricSum::new(counts[0] as u32, counts[1] as u32, counts[2] as u32)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> Error {
        Error::Syntax { offset: self.pos, message: message.to_string() }
    }

    fn term(&mut self) -> Result<(usize, u64)> {
        self.skip_ws();
        let mut count = 1u64;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
            count = digits.parse().map_err(|_| Error::Syntax {
                offset: start,
                message: "count too large".into(),
            })?;
            self.skip_ws();
            if self.peek() != Some(b'*') {
                return Err(self.error("expected '*' after count"));
            }
            self.pos += 1;
            self.skip_ws();
        }
        let atom_start = self.pos;
        let mut atom = Vec::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == b'-' {
                atom.push(c);
                self.pos += 1;
            } else if c.is_ascii_whitespace() {
                // whitespace inside an atom, e.g. "- CP2"
                let save = self.pos;
                self.skip_ws();
                if atom == b"-" {
                    continue;
                }
                self.pos = save;
                break;
            } else {
                break;
            }
        }
        let idx = match atom.as_slice() {
            b"CP2" => 0,
            b"-CP2" => 1,
            b"S2xS2" => 2,
            _ => {
                return Err(Error::Syntax {
                    offset: atom_start,
                    message: "expected CP2, -CP2 or S2xS2".into(),
                })
            }
        };
        Ok((idx, count))
    }
}
