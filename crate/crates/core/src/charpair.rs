//! Characteristic pairs over polygons and the intersection forms they define.
//!
//! For facet vectors `λ_1, …, λ_m ∈ Z²` the cohomology ring is
//! `Z[v_1..v_m] / (I_P + (θ_1, θ_2))` with `θ_r = Σ λ_ir v_i`, where `I_P`
//! kills products of non-adjacent facets. Degree 2 is `Z^m / rowspace(Λ)`;
//! degree 4 is spanned by `v_i²` and `v_i v_{i+1}` modulo `θ_r · v_i`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::manifold::QuasitoricSum;
use crate::quadform::{smith_normal_form, IntForm, IntMatrix, Parity};
use crate::search::{search_gram, Budget, GramOutcome};

/// Polygons with more facets are refused.
pub const MAX_FACETS: usize = 64;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CharPair {
    lambdas: Vec<(i64, i64)>,
}

impl CharPair {
    pub fn m(&self) -> usize {
        self.lambdas.len()
    }

    pub fn lambdas(&self) -> &[(i64, i64)] {
        &self.lambdas
    }

    /// The same pair with facets renumbered from `shift`.
    pub fn rotated(&self, shift: usize) -> CharPair {
        let mut l = self.lambdas.clone();
        let n = l.len();
        l.rotate_left(shift % n);
        CharPair { lambdas: l }
    }

    /// The same pair with the facet order reversed.
    pub fn reflected(&self) -> CharPair {
        CharPair { lambdas: self.lambdas.iter().rev().copied().collect() }
    }
}

fn det2(p: (i64, i64), q: (i64, i64)) -> i64 {
    p.0 * q.1 - p.1 * q.0
}

/// Checks the facet count and that adjacent facet vectors form a basis of `Z²`.
///
/// A failing corner is reported with 1-based facet indices.
pub fn validate_pair(m: usize, lambdas: &[(i64, i64)]) -> Result<CharPair> {
    if m < 3 {
        return Err(Error::InvalidPair(format!("a polygon needs at least 3 facets, got {m}")));
    }
    if m > MAX_FACETS {
        return Err(Error::InvalidPair(format!("at most {MAX_FACETS} facets are supported, got {m}")));
    }
    if lambdas.len() != m {
        return Err(Error::InvalidPair(format!("expected {m} facet vectors, got {}", lambdas.len())));
    }
    for i in 0..m {
        let j = (i + 1) % m;
        let d = det2(lambdas[i], lambdas[j]);
        if d.abs() != 1 {
            return Err(Error::SingularCorner(i + 1, j + 1, d));
        }
    }
    Ok(CharPair { lambdas: lambdas.to_vec() })
}

/// Parses `"1,0;0,1;-1,-1"`.
pub fn parse_vectors(text: &str) -> Result<Vec<(i64, i64)>> {
    text.split(';')
        .map(|pair| {
            let parts: Vec<&str> = pair.split(',').map(str::trim).collect();
            match parts.as_slice() {
                [x, y] => Ok((
                    x.parse().map_err(|_| Error::InvalidPair(format!("bad coordinate {x:?}")))?,
                    y.parse().map_err(|_| Error::InvalidPair(format!("bad coordinate {y:?}")))?,
                )),
                _ => Err(Error::InvalidPair(format!("expected two coordinates in {pair:?}"))),
            }
        })
        .collect()
}

fn to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("cohomology entries fit in i64")
}

/// The intersection form on `H²` in the basis given by the Smith normal form.
///
/// The generator of `H⁴` is oriented so that `v_1 v_2` evaluates to `det(λ_1, λ_2)`.
pub fn cohomology_form(pair: &CharPair) -> IntForm {
    let m = pair.m();
    let l = pair.lambdas();
    let adjacent = |i: usize, j: usize| (i + 1) % m == j || (j + 1) % m == i;

    // degree 2: basis lifts are the rows of V⁻¹ past the two relations
    let theta = IntMatrix::from_i64(&[l.iter().map(|p| p.0).collect::<Vec<_>>(), l.iter().map(|p| p.1).collect()])
        .expect("2 x m");
    let snf2 = smith_normal_form(&theta);
    assert!(
        snf2.invariant_factors().iter().all(|d| d.abs().is_one()) && snf2.rank() == 2,
        "facet vectors of a valid pair span Z²"
    );
    let w = snf2.v.inverse_unimodular().expect("unimodular change of basis");

    // degree 4: monomials v_i² (index i) and v_i v_{i+1} (index m + i)
    let mono = |i: usize, j: usize| -> Option<usize> {
        if i == j {
            Some(i)
        } else if (i + 1) % m == j {
            Some(m + i)
        } else if (j + 1) % m == i {
            Some(m + j)
        } else {
            None
        }
    };
    let mut rel = IntMatrix::zeros(2 * m, 2 * m);
    for r in 0..2 {
        for i in 0..m {
            for (j, lj) in l.iter().enumerate() {
                let coeff = if r == 0 { lj.0 } else { lj.1 };
                if let Some(c) = mono(i, j) {
                    let row = r * m + i;
                    let cur = rel.get(row, c).clone();
                    rel.set(row, c, cur + coeff);
                }
            }
        }
    }
    let snf4 = smith_normal_form(&rel);
    assert!(
        snf4.rank() == 2 * m - 1 && snf4.invariant_factors().iter().all(|d| d.abs().is_one()),
        "degree-4 cohomology of a valid pair is infinite cyclic"
    );
    let last = 2 * m - 1;
    let mut eps: Vec<i64> = (0..2 * m).map(|c| to_i64(snf4.v.get(c, last))).collect();
    let orient = det2(l[0], l[1]);
    match eps[m] * orient {
        1 => {}
        -1 => eps.iter_mut().for_each(|e| *e = -*e),
        other => panic!("vertex monomial evaluates to {other}, expected ±1"),
    }

    let mut e = IntMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            if i == j || adjacent(i, j) {
                e.set(i, j, BigInt::from(eps[mono(i, j).expect("adjacent")]));
            }
        }
    }
    let rows: Vec<Vec<BigInt>> = (2..m).map(|i| w.row(i).to_vec()).collect();
    let g = IntMatrix::from_rows(rows).expect("(m-2) x m");
    let q = g.mul(&e).and_then(|ge| ge.mul(&g.transpose())).expect("conformable");
    let form = IntForm::new(q).expect("pairing is symmetric");
    assert!(form.is_unimodular(), "Poincaré duality makes the form unimodular");
    form
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum Identification {
    Manifold(QuasitoricSum),
    Undetermined(String),
}

impl fmt::Display for Identification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Identification::Manifold(q) => write!(f, "{q}"),
            Identification::Undetermined(why) => write!(f, "undetermined: {why}"),
        }
    }
}

/// Reads the connected-sum triple off rank, signature and parity.
pub fn identify_form(q: &IntForm) -> Identification {
    let r = q.order() as u32;
    let sigma = q.signature();
    let inertia = q.inertia();
    if q.parity() == Parity::Even {
        if sigma != 0 {
            return Identification::Undetermined(format!(
                "even form with signature {sigma} cannot come from a quasitoric manifold"
            ));
        }
        return Identification::Manifold(QuasitoricSum { a: 0, b: 0, c: r / 2 });
    }
    if inertia.positive > 0 && inertia.negative > 0 {
        let a = (r as i64 + sigma) / 2;
        let b = (r as i64 - sigma) / 2;
        return Identification::Manifold(QuasitoricSum { a: a as u32, b: b as u32, c: 0 });
    }
    if r > 8 {
        return Identification::Undetermined(format!("odd definite form of rank {r} is not checked"));
    }
    let s: i64 = if sigma > 0 { 1 } else { -1 };
    let unit = IntForm::diagonal(&vec![s; r as usize]);
    match search_gram(q, &unit, None, &Budget::default()) {
        Ok(GramOutcome::Found(_)) => Identification::Manifold(if s > 0 {
            QuasitoricSum { a: r, b: 0, c: 0 }
        } else {
            QuasitoricSum { a: 0, b: r, c: 0 }
        }),
        Ok(other) => Identification::Undetermined(format!("definite form is not diagonal: {other:?}")),
        Err(e) => Identification::Undetermined(e.to_string()),
    }
}

pub fn identify_manifold(pair: &CharPair) -> Identification {
    identify_form(&cohomology_form(pair))
}

/// Builds a pair from `λ_1 = (1,0)`, `λ_2 = (0,1)` and
/// `λ_{i+1} = s·λ_{i−1} + t·λ_i`, which keeps every corner unimodular, then
/// closes the polygon if the last vector can be chosen integrally.
pub fn corner_walk(m: usize, mut step: impl FnMut() -> (bool, i64), close_sign: (bool, bool)) -> Option<CharPair> {
    if m < 3 {
        return None;
    }
    let mut l = vec![(1i64, 0i64), (0, 1)];
    while l.len() < m - 1 {
        let (flip, t) = step();
        let s = if flip { -1 } else { 1 };
        let (p, q) = (l[l.len() - 2], l[l.len() - 1]);
        l.push((s * p.0 + t * q.0, s * p.1 + t * q.1));
    }
    // det(λ_{m−1}, x) = e1 and det(x, λ_1) = e2
    let (p, first) = (l[m - 2], l[0]);
    let e1 = if close_sign.0 { -1 } else { 1 };
    let e2 = if close_sign.1 { -1 } else { 1 };
    // p.0 y − p.1 x = e1 ; x first.1 − y first.0 = e2
    let det = -p.1 * -first.0 - p.0 * first.1;
    if det == 0 {
        return None;
    }
    let xn = e1 * -first.0 - p.0 * e2;
    let yn = -p.1 * e2 - e1 * first.1;
    if xn % det != 0 || yn % det != 0 {
        return None;
    }
    l.push((xn / det, yn / det));
    validate_pair(m, &l).ok()
}

/// Cheap invariants that survive relabeling: rank, signature, parity, |det|.
pub fn invariants(q: &IntForm) -> (usize, i64, Parity, BigInt) {
    (q.order(), q.signature(), q.parity(), q.determinant().abs())
}
