//! Exact integer and rational matrix routines.
//!
//! Matrices are row-major `Vec<Vec<_>>`. Lattice vectors are rows, so a basis
//! change acts as `B * G * B^T`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Mat = Vec<Vec<BigInt>>;
pub type QMat = Vec<Vec<BigRational>>;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn from_i64(rows: &[Vec<i64>]) -> Mat {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn to_i64(m: &Mat) -> Option<Vec<Vec<i64>>> {
    m.iter().map(|r| r.iter().map(|x| x.to_i64()).collect()).collect()
}

pub fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![BigInt::zero(); c]; r]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    m
}

pub fn ncols(m: &Mat) -> usize {
    m.first().map_or(0, |r| r.len())
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return vec![];
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let n = ncols(b);
    a.iter()
        .map(|r| {
            let mut out = vec![BigInt::zero(); n];
            for (k, x) in r.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b[k].iter().enumerate() {
                    if !y.is_zero() {
                        out[j] += x * y;
                    }
                }
            }
            out
        })
        .collect()
}

pub fn qmul(a: &QMat, b: &QMat) -> QMat {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|r| {
            let mut out = vec![BigRational::zero(); n];
            for (k, x) in r.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b[k].iter().enumerate() {
                    if !y.is_zero() {
                        out[j] += x * y;
                    }
                }
            }
            out
        })
        .collect()
}

pub fn vec_mat(v: &[BigInt], m: &Mat) -> Vec<BigInt> {
    let n = ncols(m);
    let mut out = vec![BigInt::zero(); n];
    for (k, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in m[k].iter().enumerate() {
            out[j] += x * y;
        }
    }
    out
}

pub fn mat_vec(m: &Mat, v: &[BigInt]) -> Vec<BigInt> {
    m.iter().map(|r| dot(r, v)).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `B * G * B^T`.
pub fn congruent(b: &Mat, g: &Mat) -> Mat {
    mul(&mul(b, g), &transpose(b))
}

pub fn to_q(m: &Mat) -> QMat {
    m.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect()
}

/// Returns the integer matrix if every entry of `m` is integral.
pub fn from_q(m: &QMat) -> Option<Mat> {
    m.iter()
        .map(|r| r.iter().map(|x| if x.is_integer() { Some(x.to_integer()) } else { None }).collect())
        .collect()
}

/// Scales a rational matrix to an integer one; returns `(M, d)` with `m = M / d`.
pub fn clear_denominators(m: &QMat) -> (Mat, BigInt) {
    let mut d = BigInt::one();
    for r in m {
        for x in r {
            d = d.lcm(x.denom());
        }
    }
    let out = m
        .iter()
        .map(|r| r.iter().map(|x| (x * BigRational::from_integer(d.clone())).to_integer()).collect())
        .collect();
    (out, d)
}

pub fn is_symmetric(m: &Mat) -> bool {
    let n = m.len();
    m.iter().all(|r| r.len() == n) && (0..n).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

/// Fraction-free Gaussian elimination.
pub fn det(m: &Mat) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

pub fn qinverse(m: &QMat) -> Option<QMat> {
    let n = m.len();
    let mut a: QMat = m.to_vec();
    let mut inv: QMat = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(p, c);
        inv.swap(p, c);
        let piv = a[c][c].clone();
        for j in 0..n {
            a[c][j] = &a[c][j] / &piv;
            inv[c][j] = &inv[c][j] / &piv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..n {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                    let t = &f * &inv[c][j];
                    inv[i][j] -= t;
                }
            }
        }
    }
    Some(inv)
}

pub fn inverse(m: &Mat) -> Option<QMat> {
    qinverse(&to_q(m))
}

fn row_axpy(m: &mut Mat, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (a, b) = if dst < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

/// Row Hermite normal form. Returns `(H, U, r)` with `U * m = H`, `U` unimodular and
/// the first `r` rows of `H` in echelon form with positive pivots, the rest zero.
pub fn hnf(m: &Mat) -> (Mat, Mat, usize) {
    let rows = m.len();
    let cols = ncols(m);
    let mut h = m.clone();
    let mut u = identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let piv = (r..rows)
                .filter(|&i| !h[i][c].is_zero())
                .min_by(|&i, &j| h[i][c].abs().cmp(&h[j][c].abs()));
            let Some(p) = piv else { break };
            h.swap(p, r);
            u.swap(p, r);
            let mut done = true;
            for i in r + 1..rows {
                if !h[i][c].is_zero() {
                    let q = h[i][c].div_floor(&h[r][c]);
                    row_axpy(&mut h, i, r, &q);
                    row_axpy(&mut u, i, r, &q);
                    if !h[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if r < rows && !h[r][c].is_zero() {
            if h[r][c].is_negative() {
                for x in h[r].iter_mut() {
                    *x = -x.clone();
                }
                for x in u[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            for i in 0..r {
                let q = h[i][c].div_floor(&h[r][c]);
                row_axpy(&mut h, i, r, &q);
                row_axpy(&mut u, i, r, &q);
            }
            r += 1;
        }
    }
    (h, u, r)
}

/// Nonzero rows of the Hermite normal form: a canonical basis of the row span.
pub fn hnf_basis(m: &Mat) -> Mat {
    if m.is_empty() {
        return vec![];
    }
    let (h, _, r) = hnf(m);
    h.into_iter().take(r).collect()
}

pub fn rank(m: &Mat) -> usize {
    if m.is_empty() {
        return 0;
    }
    hnf(m).2
}

/// Basis of the integer left kernel `{x : x * m = 0}`; saturated by construction.
pub fn left_kernel(m: &Mat) -> Mat {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    if ncols(m) == 0 {
        return identity(rows);
    }
    let (_, u, r) = hnf(m);
    let k: Mat = u.into_iter().skip(r).collect();
    if k.is_empty() {
        k
    } else {
        hnf_basis(&k)
    }
}

/// Basis of `{x : m * x^T = 0}`.
pub fn right_kernel(m: &Mat) -> Mat {
    left_kernel(&transpose(m))
}

/// Primitive closure `(span_Q rows) ∩ Z^n`.
pub fn saturate(rows: &Mat, n: usize) -> Mat {
    if rows.is_empty() {
        return vec![];
    }
    let k = right_kernel(rows);
    if k.is_empty() {
        return identity(n);
    }
    left_kernel(&transpose(&k))
}

/// Smith normal form `U * m * V = D`; returns `(D, U, V)`.
pub fn snf(m: &Mat) -> (Mat, Mat, Mat) {
    let rows = m.len();
    let cols = ncols(m);
    let mut a = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let t_max = rows.min(cols);
    for t in 0..t_max {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero()
                        && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return (a, u, v);
            };
            a.swap(pi, t);
            u.swap(pi, t);
            for r in a.iter_mut() {
                r.swap(pj, t);
            }
            for r in v.iter_mut() {
                r.swap(pj, t);
            }
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    row_axpy(&mut a, i, t, &q);
                    row_axpy(&mut u, i, t, &q);
                    if !a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for r in a.iter_mut() {
                        let s = &q * &r[t];
                        r[j] -= s;
                    }
                    for r in v.iter_mut() {
                        let s = &q * &r[t];
                        r[j] -= s;
                    }
                    if !a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    row_axpy(&mut a, t, i, &int(-1));
                    row_axpy(&mut u, t, i, &int(-1));
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    (a, u, v)
}

/// Invariant factors (diagonal of the Smith form, zeros included).
pub fn invariant_factors(m: &Mat) -> Vec<BigInt> {
    let (d, _, _) = snf(m);
    (0..m.len().min(ncols(m))).map(|i| d[i][i].clone()).collect()
}

/// Solve `x * b = v` over Q for a full row rank `b`; `None` if `v` is outside the row span.
pub fn solve_row(b: &Mat, v: &[BigRational]) -> Option<Vec<BigRational>> {
    let k = b.len();
    let n = ncols(b);
    // Augmented system b^T x^T = v^T.
    let mut a: QMat = (0..n)
        .map(|j| {
            let mut r: Vec<BigRational> = (0..k).map(|i| BigRational::from_integer(b[i][j].clone())).collect();
            r.push(v[j].clone());
            r
        })
        .collect();
    let mut piv_cols = vec![];
    let mut row = 0;
    for c in 0..k {
        let Some(p) = (row..n).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(p, row);
        let pv = a[row][c].clone();
        for x in a[row].iter_mut() {
            *x = &*x / &pv;
        }
        for i in 0..n {
            if i != row && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..=k {
                    let t = &f * &a[row][j];
                    a[i][j] -= t;
                }
            }
        }
        piv_cols.push(c);
        row += 1;
    }
    if (row..n).any(|i| !a[i][k].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); k];
    for (r, &c) in piv_cols.iter().enumerate() {
        x[c] = a[r][k].clone();
    }
    Some(x)
}

/// Coordinates of each row of `m` in the basis `b` (rational); `None` if some row is outside the span.
pub fn coords_in(b: &Mat, m: &Mat) -> Option<QMat> {
    m.iter()
        .map(|r| solve_row(b, &r.iter().map(|x| BigRational::from_integer(x.clone())).collect::<Vec<_>>()))
        .collect()
}

/// Integer coordinates of the rows of `m` in basis `b`; `None` if not contained.
pub fn int_coords_in(b: &Mat, m: &Mat) -> Option<Mat> {
    from_q(&coords_in(b, m)?)
}

/// Basis of the intersection of two row lattices in Z^n.
pub fn intersect(b1: &Mat, b2: &Mat) -> Mat {
    let mut stacked = b1.clone();
    stacked.extend(b2.iter().cloned());
    let k = left_kernel(&stacked);
    let k1: Mat = k.iter().map(|r| r[..b1.len()].to_vec()).collect();
    let rows = mul(&k1, b1);
    hnf_basis(&rows)
}

/// Inertia `(n+, n-, n0)` by symmetric rational elimination.
pub fn inertia(g: &Mat) -> (usize, usize, usize) {
    let n = g.len();
    let mut a = to_q(g);
    let (mut pos, mut neg) = (0, 0);
    let mut k = 0;
    while k < n {
        let diag = (k..n).find(|&i| !a[i][i].is_zero());
        let p = match diag {
            Some(p) => p,
            None => {
                let off = (k..n).flat_map(|i| (k..n).map(move |j| (i, j))).find(|&(i, j)| i != j && !a[i][j].is_zero());
                let Some((i, j)) = off else { break };
                // v_i <- v_i + v_j makes the diagonal entry 2 a_ij.
                for c in 0..n {
                    let t = a[j][c].clone();
                    a[i][c] += t;
                }
                for r in 0..n {
                    let t = a[r][j].clone();
                    a[r][i] += t;
                }
                i
            }
        };
        a.swap(p, k);
        for r in a.iter_mut() {
            r.swap(p, k);
        }
        let piv = a[k][k].clone();
        if piv.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &piv;
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
        for j in k + 1..n {
            a[k][j] = BigRational::zero();
        }
        for i in k + 1..n {
            a[i][k] = BigRational::zero();
        }
        k += 1;
    }
    (pos, neg, n - pos - neg)
}

/// Integral LLL (δ = 3/4) on a positive definite Gram matrix.
/// Returns `(T, G')` with `G' = T * g * T^T` and `T` unimodular.
pub fn lll_gram(g: &Mat) -> (Mat, Mat) {
    let n = g.len();
    let mut b = g.clone();
    let mut h = identity(n);
    if n <= 1 {
        return (h, b);
    }
    // 1-indexed d and lambda as in the integral algorithm.
    let mut d = vec![BigInt::zero(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n + 1]; n + 1];
    d[0] = BigInt::one();
    d[1] = b[0][0].clone();
    let mut k = 2;
    let mut kmax = 1;

    fn red(k: usize, l: usize, b: &mut Mat, h: &mut Mat, d: &[BigInt], lam: &mut [Vec<BigInt>]) {
        let two_l: BigInt = &lam[k][l] * 2;
        if two_l.abs() <= d[l] {
            return;
        }
        let q = (&two_l + &d[l]).div_floor(&(&d[l] * 2));
        let n = b.len();
        let (k0, l0) = (k - 1, l - 1);
        for j in 0..n {
            let t = &q * &h[l0][j];
            h[k0][j] -= t;
        }
        // Gram update for b_k <- b_k - q b_l.
        let gkk = &b[k0][k0] - &q * &b[k0][l0] * 2 + &q * &q * &b[l0][l0];
        for j in 0..n {
            if j != k0 {
                let t = &q * &b[l0][j];
                b[k0][j] -= t;
                b[j][k0] = b[k0][j].clone();
            }
        }
        b[k0][k0] = gkk;
        let t = &q * &d[l];
        lam[k][l] -= t;
        for i in 1..l {
            let t = &q * &lam[l][i];
            lam[k][i] -= t;
        }
    }

    loop {
        if k > kmax {
            kmax = k;
            for j in 1..=k {
                let mut u = b[k - 1][j - 1].clone();
                for i in 1..j {
                    u = (&d[i] * &u - &lam[k][i] * &lam[j][i]) / &d[i - 1];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    assert!(!u.is_zero(), "lll_gram: dependent vectors");
                    d[k] = u;
                }
            }
        }
        loop {
            red(k, k - 1, &mut b, &mut h, &d, &mut lam);
            let lhs: BigInt = &d[k] * &d[k - 2] * 4;
            let rhs: BigInt = &d[k - 1] * &d[k - 1] * 3 - &lam[k][k - 1] * &lam[k][k - 1] * 4;
            if lhs < rhs {
                // SWAP(k)
                h.swap(k - 1, k - 2);
                b.swap(k - 1, k - 2);
                for r in b.iter_mut() {
                    r.swap(k - 1, k - 2);
                }
                for j in 1..k - 1 {
                    let t = lam[k][j].clone();
                    lam[k][j] = lam[k - 1][j].clone();
                    lam[k - 1][j] = t;
                }
                let l = lam[k][k - 1].clone();
                let bb = (&d[k - 2] * &d[k] + &l * &l) / &d[k - 1];
                for i in k + 1..=kmax {
                    let t = lam[i][k].clone();
                    lam[i][k] = (&d[k] * &lam[i][k - 1] - &l * &t) / &d[k - 1];
                    lam[i][k - 1] = (&bb * &t + &l * &lam[i][k]) / &d[k];
                }
                d[k - 1] = bb;
                if k > 2 {
                    k -= 1;
                }
            } else {
                for l in (1..k - 1).rev() {
                    red(k, l, &mut b, &mut h, &d, &mut lam);
                }
                k += 1;
                break;
            }
        }
        if k > n {
            break;
        }
    }
    (h, b)
}

pub fn gcd_all(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

/// Integer matrix power.
pub fn pow(m: &Mat, e: u64) -> Mat {
    let mut out = identity(m.len());
    for _ in 0..e {
        out = mul(&out, m);
    }
    out
}

pub fn sub(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

pub fn add(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

pub fn scale(a: &Mat, k: &BigInt) -> Mat {
    a.iter().map(|r| r.iter().map(|x| x * k).collect()).collect()
}

pub fn block_diag(parts: &[&Mat]) -> Mat {
    let n: usize = parts.iter().map(|p| p.len()).sum();
    let mut out = zeros(n, n);
    let mut off = 0;
    for p in parts {
        for (i, r) in p.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                out[off + i][off + j] = x.clone();
            }
        }
        off += p.len();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Mat {
        from_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn det_and_inverse() {
        let a = m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(det(&a), int(4));
        let inv = inverse(&a).unwrap();
        let prod = qmul(&to_q(&a), &inv);
        assert_eq!(from_q(&prod).unwrap(), identity(3));
        assert_eq!(det(&m(&[&[0, 1], &[1, 0]])), int(-1));
    }

    #[test]
    fn hnf_transform() {
        let a = m(&[&[4, 6, 2], &[2, 3, 1], &[1, 0, 5]]);
        let (h, u, r) = hnf(&a);
        assert_eq!(mul(&u, &a), h);
        assert_eq!(r, 2);
        assert_eq!(det(&u).abs(), int(1));
        let k = left_kernel(&a);
        assert_eq!(k.len(), 1);
        assert!(vec_mat(&k[0], &a).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn smith_form() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let (d, u, v) = snf(&a);
        assert_eq!(mul(&mul(&u, &a), &v), d);
        assert_eq!(invariant_factors(&a), vec![int(2), int(6), int(12)]);
    }

    #[test]
    fn saturation_of_multiple() {
        let s = saturate(&m(&[&[2, 4]]), 2);
        assert_eq!(s, m(&[&[1, 2]]));
    }

    #[test]
    fn intersection() {
        let a = m(&[&[2, 0], &[0, 1]]);
        let b = m(&[&[1, 0], &[0, 3]]);
        assert_eq!(intersect(&a, &b), m(&[&[2, 0], &[0, 3]]));
    }

    #[test]
    fn signature() {
        assert_eq!(inertia(&m(&[&[0, 1], &[1, 0]])), (1, 1, 0));
        assert_eq!(inertia(&m(&[&[-2, 1], &[1, -2]])), (0, 2, 0));
        assert_eq!(inertia(&m(&[&[1, 1], &[1, 1]])), (1, 0, 1));
    }

    #[test]
    fn lll_reduces_and_preserves() {
        let b = m(&[&[1, 0, 0], &[7, 1, 0], &[31, -5, 1]]);
        let g0 = m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        let g = congruent(&b, &g0);
        let (t, gr) = lll_gram(&g);
        assert_eq!(congruent(&t, &g), gr);
        assert!(gr.iter().enumerate().all(|(i, r)| r[i] == int(2)));
    }
}
