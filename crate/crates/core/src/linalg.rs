//! Exact integer and rational matrix routines.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Mat = Vec<Vec<BigInt>>;

pub fn to_big(m: &[Vec<i64>]) -> Mat {
    m.iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

pub fn mul_vec(a: &Mat, v: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Fraction-free (Bareiss) determinant.
pub fn det(m: &Mat) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
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
    sign * &a[n - 1][n - 1]
}

/// Smith normal form `u * m * v = d` with `d` diagonal, nonnegative,
/// and each diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct Snf {
    pub diag: Vec<BigInt>,
    pub u: Mat,
    pub v: Mat,
}

pub fn smith(m: &Mat) -> Snf {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let r = rows.min(cols);

    for t in 0..r {
        loop {
            // smallest nonzero pivot in the trailing block
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
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            u.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }

            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in 0..cols {
                    let s = &q * &a[t][j];
                    a[i][j] -= s;
                }
                for j in 0..rows {
                    let s = &q * &u[t][j];
                    u[i][j] -= s;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in 0..rows {
                    let s = &q * &a[i][t];
                    a[i][j] -= s;
                }
                for i in 0..cols {
                    let s = &q * &v[i][t];
                    v[i][j] -= s;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // pivot must divide the rest of the block
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
            match bad {
                Some((i, _)) => {
                    for j in 0..cols {
                        let s = a[i][j].clone();
                        a[t][j] += s;
                    }
                    for j in 0..rows {
                        let s = u[i][j].clone();
                        u[t][j] += s;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for j in 0..cols {
                a[t][j] = -a[t][j].clone();
            }
            for j in 0..rows {
                u[t][j] = -u[t][j].clone();
            }
        }
    }
    let diag = (0..r).map(|i| a[i][i].clone()).collect();
    Snf { diag, u, v }
}

/// Some rational solution of `m x = r`, or `None` if inconsistent.
pub fn solve(m: &Mat, r: &[BigInt]) -> Option<Vec<BigRational>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .zip(r)
        .map(|(row, b)| {
            row.iter()
                .chain(std::iter::once(b))
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..=cols {
                    let s = &f * &a[row][j];
                    a[i][j] -= s;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if a[row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][cols].clone();
    }
    Some(x)
}

/// Basis of the rational kernel of `m`.
pub fn kernel(m: &Mat) -> Vec<Vec<BigRational>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| row.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..cols {
                    let s = &f * &a[row][j];
                    a[i][j] -= s;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut k = vec![BigRational::zero(); cols];
            k[free] = BigRational::one();
            for (i, &p) in pivots.iter().enumerate() {
                k[p] = -a[i][free].clone();
            }
            k
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.pos as i64 - self.neg as i64
    }
}

/// Inertia of a symmetric rational matrix by congruence diagonalization.
pub fn inertia(m: &[Vec<BigRational>]) -> Inertia {
    let n = m.len();
    let mut a = m.to_vec();
    let mut res = Inertia { pos: 0, neg: 0, zero: 0 };
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                a.swap(k, i);
                for row in a.iter_mut() {
                    row.swap(k, i);
                }
            } else if let Some(i) = (k + 1..n).find(|&i| !a[k][i].is_zero()) {
                // row/col k += row/col i makes the pivot 2 a[k][i]
                for j in 0..n {
                    let s = a[i][j].clone();
                    a[k][j] += s;
                }
                for j in 0..n {
                    let s = a[j][i].clone();
                    a[j][k] += s;
                }
            }
        }
        let p = a[k][k].clone();
        if p.is_zero() {
            res.zero += 1;
            continue;
        }
        if p.is_positive() {
            res.pos += 1;
        } else {
            res.neg += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &p;
            for j in k..n {
                let s = &f * &a[k][j];
                a[i][j] -= s;
            }
            for j in k..n {
                let s = &f * &a[j][k];
                a[j][i] -= s;
            }
        }
    }
    res
}

pub fn inertia_int(m: &Mat) -> Inertia {
    let q: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| row.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    inertia(&q)
}

/// Coefficients (constant term first) of the polynomial of degree `< xs.len()`
/// through the points `(xs[i], ys[i])`.
pub fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Vec<BigRational> {
    let n = xs.len();
    let mut coeffs = vec![BigRational::zero(); n];
    for i in 0..n {
        // basis polynomial prod_{j != i} (t - x_j) / (x_i - x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigInt::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * BigRational::from_integer(xs[j].clone());
            }
            basis = next;
            denom *= &xs[i] - &xs[j];
        }
        let scale = BigRational::new(ys[i].clone(), denom);
        for (d, c) in basis.into_iter().enumerate() {
            coeffs[d] += c * &scale;
        }
    }
    coeffs
}

/// Integer polynomial given by evaluating `f` at enough points.
pub fn poly_by_evaluation(degree: usize, f: impl Fn(&BigInt) -> BigInt) -> Option<Vec<BigInt>> {
    let xs: Vec<BigInt> = (0..=degree as i64).map(BigInt::from).collect();
    let ys: Vec<BigInt> = xs.iter().map(&f).collect();
    interpolate(&xs, &ys)
        .into_iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect()
}
