//! Closed-form witnesses `P` for specific `(M, N)` pairs, instantiated from a
//! decomposition of `k`. Each returns `None` outside its degree set.

use num_bigint::BigInt;

use crate::manifold::QuasitoricSum;
use crate::numtheory::{diff_two_squares, is_perfect_square, sum_four_squares, sum_three_squares, sum_two_squares};
use crate::quadform::IntMatrix;
use crate::search::matrix_from_columns;

use super::algebra::summand_positions;

/// The quaternion matrix; `QᵗQ = (a²+b²+c²+d²)·I₄`.
pub fn quaternion_matrix(a: i64, b: i64, c: i64, d: i64) -> IntMatrix {
    IntMatrix::from_i64(&[[a, b, c, d], [b, -a, -d, c], [c, d, -a, -b], [d, -c, b, -a]]).expect("4x4")
}

fn rows(r: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64(r).expect("rectangular")
}

/// `u·E` where `E` embeds the coordinates of `n` into those of `m ⊇ n`; degree `u²`.
pub fn square_embedding(m: &QuasitoricSum, n: &QuasitoricSum, k: i64) -> Option<IntMatrix> {
    if !n.is_summand_of(m) {
        return None;
    }
    let u = is_perfect_square(k)?;
    let (pos, _) = match n.complement_in(m) {
        Some(rest) => summand_positions(n, &rest),
        None => ((0..n.rank()).collect(), vec![]),
    };
    let mut p = IntMatrix::zeros(m.rank(), n.rank());
    for (j, &i) in pos.iter().enumerate() {
        p.set(i, j, BigInt::from(u));
    }
    Some(p)
}

/// Witness for `(1,1,0) → (1,1,0)`: `[[u,v],[v,u]]` with `u² − v² = k`.
fn difference_block(k: i64) -> Option<IntMatrix> {
    let (u, v) = diff_two_squares(k)?;
    Some(rows(&[&[u, v], &[v, u]]))
}

/// A witness for `m → n` of degree `k ≠ 0`, for the pairs with a known formula.
pub fn recipe(m: &QuasitoricSum, n: &QuasitoricSum, k: i64) -> Option<IntMatrix> {
    let cols = |c: &[Vec<i64>]| Some(matrix_from_columns(c));
    let t = k.div_euclid(2);
    let even = k % 2 == 0;
    match (m.triple(), n.triple()) {
        // onto CP²
        ((2, 0, 0), (1, 0, 0)) => sum_two_squares(k).and_then(|(u, v)| cols(&[vec![u, v]])),
        ((3, 0, 0), (1, 0, 0)) => sum_three_squares(k).and_then(|(u, v, w)| cols(&[vec![u, v, w]])),
        ((4, 0, 0), (1, 0, 0)) => sum_four_squares(k).and_then(|(u, v, w, x)| cols(&[vec![u, v, w, x]])),
        ((1, 1, 0), (1, 0, 0)) => diff_two_squares(k).and_then(|(u, v)| cols(&[vec![u, v]])),
        ((1, 0, 1), (1, 0, 0)) => {
            let u = k.rem_euclid(2);
            cols(&[vec![u, 1, (k - u) / 2]])
        }
        ((0, 0, 1), (1, 0, 0)) if even => cols(&[vec![1, t]]),
        // onto S²×S²
        ((0, 0, 1), (0, 0, 1)) => Some(rows(&[&[0, 1], &[k, 0]])),
        ((2, 1, 0), (0, 0, 1)) => Some(rows(&[&[k, 0], &[0, 1], &[-k, 1]])),
        ((1, 1, 0), (0, 0, 1)) if even => cols(&[vec![1, 1], vec![t, -t]]),
        // onto CP² # CP²
        ((2, 0, 0), (2, 0, 0)) => sum_two_squares(k).map(|(u, v)| rows(&[&[u, v], &[v, -u]])),
        ((4, 0, 0), (2, 0, 0)) => sum_four_squares(k).and_then(|(a, b, c, d)| cols(&[vec![a, b, c, d], vec![b, -a, d, -c]])),
        ((0, 0, 2), (2, 0, 0)) if even => cols(&[vec![1, t, 0, 0], vec![0, 0, 1, t]]),
        ((1, 1, 1), (2, 0, 0)) => {
            if even {
                cols(&[vec![0, 0, 1, t], vec![t + 1, t - 1, 1, -t]])
            } else {
                cols(&[vec![1, 0, 1, t], vec![t + 1, t, 0, -(t + 1)]])
            }
        }
        ((2, 2, 0), (2, 0, 0)) => {
            // u² + v² − s² − w² = k, taking v = 1, w = 0 when k ≡ 2 (mod 4)
            let (u, v, s, w) = match diff_two_squares(k) {
                Some((u, s)) => (u, 0, s, 0),
                None => {
                    let (v, w) = diff_two_squares(k - 1)?;
                    (1, v, 0, w)
                }
            };
            cols(&[vec![u, v, s, w], vec![v, -u, w, -s]])
        }
        // onto CP² # anti-CP²
        ((1, 1, 0), (1, 1, 0)) => difference_block(k),
        ((2, 1, 0), (1, 1, 0)) => match diff_two_squares(k) {
            Some((u, v)) => cols(&[vec![0, u, v], vec![0, v, u]]),
            None => {
                let two = rows(&[&[1, 1], &[1, -1], &[0, 2]]);
                two.mul(&difference_block(k / 2)?).ok()
            }
        },
        ((1, 0, 1), (1, 1, 0)) => {
            if even {
                cols(&[vec![0, t, 1], vec![0, t, -1]])
            } else {
                let o = 2 * t + 1;
                cols(&[vec![o, o, -t], vec![o, o, -t - 1]])
            }
        }
        ((0, 0, 1), (1, 1, 0)) if even => cols(&[vec![1, t], vec![1, -t]]),
        // self-maps
        ((4, 0, 0), (4, 0, 0)) => sum_four_squares(k).map(|(a, b, c, d)| quaternion_matrix(a, b, c, d)),
        _ => square_embedding(m, n, k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::verify_certificate;

    fn t(a: u32, b: u32, c: u32) -> QuasitoricSum {
        QuasitoricSum::new(a, b, c).unwrap()
    }

    const PAIRS: [((u32, u32, u32), (u32, u32, u32)); 19] = [
        ((2, 0, 0), (1, 0, 0)),
        ((3, 0, 0), (1, 0, 0)),
        ((4, 0, 0), (1, 0, 0)),
        ((1, 1, 0), (1, 0, 0)),
        ((1, 0, 1), (1, 0, 0)),
        ((0, 0, 1), (1, 0, 0)),
        ((0, 0, 1), (0, 0, 1)),
        ((2, 1, 0), (0, 0, 1)),
        ((1, 1, 0), (0, 0, 1)),
        ((2, 0, 0), (2, 0, 0)),
        ((4, 0, 0), (2, 0, 0)),
        ((0, 0, 2), (2, 0, 0)),
        ((1, 1, 1), (2, 0, 0)),
        ((2, 2, 0), (2, 0, 0)),
        ((1, 1, 0), (1, 1, 0)),
        ((2, 1, 0), (1, 1, 0)),
        ((1, 0, 1), (1, 1, 0)),
        ((0, 0, 1), (1, 1, 0)),
        ((4, 0, 0), (4, 0, 0)),
    ];

    #[test]
    fn every_recipe_output_verifies() {
        for ((a, b, c), (d, e, f)) in PAIRS {
            let (m, n) = (t(a, b, c), t(d, e, f));
            let mut hits = 0;
            for k in -60..=60 {
                if let Some(p) = recipe(&m, &n, k) {
                    assert!(verify_certificate(&p, &m, &n, k).unwrap(), "{m} -> {n} at {k}: {p}");
                    hits += 1;
                }
            }
            assert!(hits > 10, "{m} -> {n}");
        }
    }

    #[test]
    fn recipes_cover_their_sets() {
        let all = |m, n| (-40..=40).all(|k| recipe(&m, &n, k).is_some());
        assert!(all(t(1, 0, 1), t(1, 0, 0)));
        assert!(all(t(0, 0, 1), t(0, 0, 1)));
        assert!(all(t(2, 1, 0), t(0, 0, 1)));
        assert!(all(t(1, 1, 1), t(2, 0, 0)));
        assert!(all(t(2, 2, 0), t(2, 0, 0)));
        assert!(all(t(2, 1, 0), t(1, 1, 0)));
        assert!(all(t(1, 0, 1), t(1, 1, 0)));
        assert!((0..=40).all(|k| recipe(&t(4, 0, 0), &t(4, 0, 0), k).is_some()));
    }

    #[test]
    fn listed_witnesses() {
        let p = recipe(&t(1, 0, 1), &t(1, 0, 0), 3).unwrap();
        assert_eq!(p.to_i64_rows().unwrap(), vec![vec![1], vec![1], vec![1]]);
        let p = recipe(&t(4, 0, 0), &t(4, 0, 0), 7).unwrap();
        assert_eq!(p, quaternion_matrix(1, 1, 1, 2));
        assert!(recipe(&t(1, 1, 0), &t(1, 1, 0), 6).is_none());
        let p = recipe(&t(2, 1, 0), &t(1, 1, 0), 2).unwrap();
        assert_eq!(p.to_i64_rows().unwrap(), vec![vec![1, 1], vec![1, -1], vec![0, 2]]);
    }

    #[test]
    fn quaternion_columns_are_orthogonal() {
        let q = quaternion_matrix(1, -2, 3, 5);
        let g = q.transpose().mul(&q).unwrap();
        assert_eq!(g, IntMatrix::identity(4).scale(&BigInt::from(39)));
    }

    #[test]
    fn square_embedding_places_target_first() {
        let p = square_embedding(&t(2, 1, 1), &t(1, 0, 1), 9).unwrap();
        assert!(verify_certificate(&p, &t(2, 1, 1), &t(1, 0, 1), 9).unwrap());
        assert!(square_embedding(&t(2, 1, 1), &t(1, 0, 1), 8).is_none());
        assert!(square_embedding(&t(2, 0, 0), &t(0, 0, 1), 1).is_none());
    }
}
