//! Certificate algebra: stabilization, block sums, orientation reversal and
//! the isomorphism `[s] ⊕ H ≅ diag(s, s, −s)` between odd forms.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::manifold::QuasitoricSum;
use crate::quadform::IntMatrix;
use crate::search::Certificate;

/// Where the coordinates of `first` and `second` land in the layout of `first # second`.
pub fn summand_positions(first: &QuasitoricSum, second: &QuasitoricSum) -> (Vec<usize>, Vec<usize>) {
    let (a1, b1, c1) = (first.a as usize, first.b as usize, first.c as usize);
    let (a2, b2, c2) = (second.a as usize, second.b as usize, second.c as usize);
    let minus = a1 + a2;
    let hyp = minus + b1 + b2;
    let p1 = (0..a1).chain(minus..minus + b1).chain(hyp..hyp + 2 * c1).collect();
    let p2 = (a1..a1 + a2)
        .chain(minus + b1..minus + b1 + b2)
        .chain(hyp + 2 * c1..hyp + 2 * c1 + 2 * c2)
        .collect();
    (p1, p2)
}

/// Certificate for `extra # domain → target`: the extra summand's rows are zero.
pub fn stabilize_certificate(cert: &Certificate, extra: &QuasitoricSum) -> Certificate {
    let domain = extra.connected_sum(&cert.domain());
    let (_, rows) = summand_positions(extra, &cert.domain());
    let p = cert.matrix();
    let mut out = IntMatrix::zeros(domain.rank(), p.cols());
    for (i, &r) in rows.iter().enumerate() {
        for j in 0..p.cols() {
            out.set(r, j, p.get(i, j).clone());
        }
    }
    Certificate::new(out, domain, cert.target(), cert.degree()).expect("zero rows preserve the congruence")
}

/// Block-diagonal certificate for `M # M' → N # N'` in the canonical layout.
pub fn block_sum_certificates(first: &Certificate, second: &Certificate) -> Result<Certificate> {
    if first.degree() != second.degree() {
        return Err(Error::DegreeMismatch(first.degree(), second.degree()));
    }
    let domain = first.domain().connected_sum(&second.domain());
    let target = first.target().connected_sum(&second.target());
    let (r1, r2) = summand_positions(&first.domain(), &second.domain());
    let (c1, c2) = summand_positions(&first.target(), &second.target());
    let mut out = IntMatrix::zeros(domain.rank(), target.rank());
    for (cert, rows, cols) in [(first, &r1, &c1), (second, &r2, &c2)] {
        let p = cert.matrix();
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, c, p.get(i, j).clone());
            }
        }
    }
    Certificate::new(out, domain, target, first.degree())
}

/// `T` with `Tᵗ A_x T = −A_{rev x}`; columns are coordinates of `rev x`.
pub fn reversal_matrix(x: &QuasitoricSum) -> IntMatrix {
    let (a, b, c) = (x.a as usize, x.b as usize, x.c as usize);
    let mut t = IntMatrix::zeros(x.rank(), x.rank());
    let one = BigInt::from(1);
    for j in 0..b {
        t.set(a + j, j, one.clone());
    }
    for j in 0..a {
        t.set(j, b + j, one.clone());
    }
    for h in 0..c {
        let i = a + b + 2 * h;
        t.set(i, i, one.clone());
        t.set(i + 1, i + 1, -one.clone());
    }
    t
}

/// From `X → N` of degree `k` to `rev X → N` of degree `−k`.
pub fn mirror_domain(cert: &Certificate) -> Certificate {
    let rev = cert.domain().reverse_orientation();
    let p = reversal_matrix(&rev).mul(cert.matrix()).expect("square transport");
    Certificate::new(p, rev, cert.target(), -cert.degree()).expect("orientation transport")
}

/// From `M → Y` of degree `k` to `M → rev Y` of degree `−k`.
pub fn mirror_target(cert: &Certificate) -> Certificate {
    let y = cert.target();
    let p = cert.matrix().mul(&reversal_matrix(&y)).expect("square transport");
    Certificate::new(p, cert.domain(), y.reverse_orientation(), -cert.degree()).expect("orientation transport")
}

/// One step `(a,b,c) ≅ (a+1,b+1,c−1)` for odd sums with `c ≥ 1`.
///
/// Returns the new triple and `Q` with `Qᵗ A_x Q = A_new`. With `e0` a unit
/// vector of norm `s` and `(h1,h2)` the last hyperbolic pair, the vectors
/// `e0+h1`, `e0−s·h2`, `e0+h1−s·h2` are orthogonal of norms `s, s, −s`.
pub fn odd_iso_step(x: &QuasitoricSum) -> Option<(QuasitoricSum, IntMatrix)> {
    if !x.is_odd() || x.c == 0 {
        return None;
    }
    let (a, b, c) = (x.a as usize, x.b as usize, x.c as usize);
    let y = QuasitoricSum { a: x.a + 1, b: x.b + 1, c: x.c - 1 };
    let n = x.rank();
    let h1 = a + b + 2 * (c - 1);
    let h2 = h1 + 1;
    let s: i64 = if a >= 1 { 1 } else { -1 };
    let e0 = if a >= 1 { 0 } else { a };
    let f1 = [(e0, 1), (h1, 1)];
    let f2 = [(e0, 1), (h2, -s)];
    let f3 = [(e0, 1), (h1, 1), (h2, -s)];
    let mut cols: Vec<Vec<(usize, i64)>> = Vec::with_capacity(n);
    if s == 1 {
        cols.push(f1.to_vec());
        cols.push(f2.to_vec());
        cols.extend((1..a).map(|i| vec![(i, 1)]));
        cols.extend((0..b).map(|j| vec![(a + j, 1)]));
        cols.push(f3.to_vec());
    } else {
        cols.push(f3.to_vec());
        cols.push(f1.to_vec());
        cols.push(f2.to_vec());
        cols.extend((1..b).map(|j| vec![(j, 1)]));
    }
    cols.extend((a + b..h1).map(|i| vec![(i, 1)]));
    let mut q = IntMatrix::zeros(n, n);
    for (j, col) in cols.iter().enumerate() {
        for &(i, v) in col {
            q.set(i, j, BigInt::from(v));
        }
    }
    Some((y, q))
}

/// The split representative `(a+c, b+c, 0)` of an odd sum, with its transport matrix.
pub fn odd_split(x: &QuasitoricSum) -> (QuasitoricSum, IntMatrix) {
    let mut cur = *x;
    let mut q = IntMatrix::identity(x.rank());
    while let Some((next, step)) = odd_iso_step(&cur) {
        q = q.mul(&step).expect("square transport");
        cur = next;
    }
    (cur, q)
}

/// Every triple whose form is isomorphic to that of `x` (itself included).
pub fn iso_class(x: &QuasitoricSum) -> Vec<QuasitoricSum> {
    if !x.is_odd() {
        return vec![*x];
    }
    let (p, n) = (x.a + x.c, x.b + x.c);
    (0..=p.min(n))
        .filter(|&j| p + n - 2 * j >= 1)
        .map(|j| QuasitoricSum { a: p - j, b: n - j, c: j })
        .collect()
}

/// `Q` with `Qᵗ A_x Q = A_y`, when the two forms are isomorphic.
pub fn iso_between(x: &QuasitoricSum, y: &QuasitoricSum) -> Option<IntMatrix> {
    if x == y {
        return Some(IntMatrix::identity(x.rank()));
    }
    if !x.is_odd() || !y.is_odd() || x.inertia() != y.inertia() {
        return None;
    }
    let (_, qx) = odd_split(x);
    let (_, qy) = odd_split(y);
    Some(qx.mul(&qy.inverse_unimodular()?).expect("square transport"))
}

/// Moves a certificate out of `cert.domain()` onto an isomorphic `domain`.
pub fn transport_domain(cert: &Certificate, domain: &QuasitoricSum) -> Option<Certificate> {
    let q = iso_between(domain, &cert.domain())?;
    let p = q.mul(cert.matrix()).ok()?;
    Certificate::new(p, *domain, cert.target(), cert.degree()).ok()
}

/// Moves a certificate into `cert.target()` onto an isomorphic `target`.
pub fn transport_target(cert: &Certificate, target: &QuasitoricSum) -> Option<Certificate> {
    let r = iso_between(&cert.target(), target)?;
    let p = cert.matrix().mul(&r).ok()?;
    Certificate::new(p, cert.domain(), *target, cert.degree()).ok()
}

/// `(d, e, d+e+f)` for `N = (d, e, f)`: every degree occurs from it onto `N`.
pub fn universal_dominator(n: &QuasitoricSum) -> QuasitoricSum {
    QuasitoricSum { a: n.a, b: n.b, c: n.a + n.b + n.c }
}
