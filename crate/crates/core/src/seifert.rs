//! Seifert matrices, Alexander polynomials and signatures.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::linalg::{self, Inertia, Mat};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SeifertError {
    #[error("twist parameter must be at least 1, got {0}")]
    BadTwist(i64),
    #[error("Seifert matrix must be square of even size")]
    Shape,
    #[error("V - V^T is not unimodular (det {0})")]
    NotUnimodular(BigInt),
    #[error("cannot normalize Alexander polynomial: {0}")]
    Normalization(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeifertMatrix {
    rows: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, SeifertError> {
        let n = rows.len();
        if n % 2 != 0 || rows.iter().any(|r| r.len() != n) {
            return Err(SeifertError::Shape);
        }
        let v = SeifertMatrix { rows };
        let d = linalg::det(&linalg::to_big(&v.antisym()));
        if d.abs() != BigInt::one() {
            return Err(SeifertError::NotUnimodular(d));
        }
        Ok(v)
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn genus(&self) -> usize {
        self.rows.len() / 2
    }

    fn transpose(&self) -> Vec<Vec<i64>> {
        let n = self.rows.len();
        (0..n).map(|i| (0..n).map(|j| self.rows[j][i]).collect()).collect()
    }

    fn antisym(&self) -> Vec<Vec<i64>> {
        let t = self.transpose();
        self.rows.iter().zip(&t).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect()).collect()
    }

    pub fn symmetrized(&self) -> Vec<Vec<i64>> {
        let t = self.transpose();
        self.rows.iter().zip(&t).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect()
    }

    /// `V -> -V^T`
    pub fn mirror(&self) -> SeifertMatrix {
        let t = self.transpose();
        SeifertMatrix { rows: t.into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect() }
    }
}

impl fmt::Display for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

pub fn twist_knot_seifert(k: i64) -> Result<SeifertMatrix, SeifertError> {
    if k < 1 {
        return Err(SeifertError::BadTwist(k));
    }
    SeifertMatrix::new(vec![vec![-k, k - 1], vec![k, -k]])
}

/// Laurent polynomial with integer coefficients, keyed by degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn from_coeffs(pairs: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let coeffs = pairs.into_iter().filter(|&(_, c)| c != 0).map(|(d, c)| (d, BigInt::from(c))).collect();
        LaurentPoly { coeffs }
    }

    pub fn coeff(&self, d: i64) -> BigInt {
        self.coeffs.get(&d).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, BigInt> {
        &self.coeffs
    }

    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().all(|(d, c)| self.coeff(-d) == *c)
    }

    /// Value at a nonzero integer.
    pub fn eval(&self, t: i64) -> BigRational {
        let t = BigRational::from_integer(t.into());
        self.coeffs
            .iter()
            .map(|(&d, c)| {
                let base = if d < 0 { t.recip() } else { t.clone() };
                let mut v = BigRational::from_integer(c.clone());
                for _ in 0..d.unsigned_abs() {
                    v *= &base;
                }
                v
            })
            .sum()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (&d, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match d {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{d}"),
            };
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}{mono}"));
            }
        }
        f.write_str(&out)
    }
}

/// `det(V - t V^T)`, shifted to symmetric form with a positive top coefficient.
pub fn alexander(v: &SeifertMatrix) -> Result<LaurentPoly, SeifertError> {
    let n = v.rows.len();
    let a = linalg::to_big(&v.rows);
    let at = linalg::to_big(&v.transpose());
    let eval = |t: &BigInt| -> BigInt {
        let m: Mat = (0..n).map(|i| (0..n).map(|j| &a[i][j] - t * &at[i][j]).collect()).collect();
        linalg::det(&m)
    };
    let raw = linalg::poly_by_evaluation(n, eval)
        .ok_or_else(|| SeifertError::Normalization("non-integral interpolation".into()))?;
    let nonzero: Vec<usize> = (0..raw.len()).filter(|&i| !raw[i].is_zero()).collect();
    let (Some(&lo), Some(&hi)) = (nonzero.first(), nonzero.last()) else {
        return Err(SeifertError::Normalization("zero polynomial".into()));
    };
    if (lo + hi) % 2 != 0 {
        return Err(SeifertError::Normalization("no symmetric shift".into()));
    }
    let mid = ((lo + hi) / 2) as i64;
    let sign = if raw[hi].is_negative() { -BigInt::one() } else { BigInt::one() };
    let coeffs: BTreeMap<i64, BigInt> =
        nonzero.iter().map(|&i| (i as i64 - mid, &raw[i] * &sign)).collect();
    let p = LaurentPoly { coeffs };
    if !p.is_symmetric() {
        return Err(SeifertError::Normalization(format!("{p} is not symmetric")));
    }
    let at_one: BigInt = p.coeffs.values().sum();
    if at_one.abs() != BigInt::one() {
        return Err(SeifertError::Normalization(format!("value {at_one} at t = 1")));
    }
    Ok(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignatureReport {
    pub signature: i64,
    pub inertia: Inertia,
}

impl SignatureReport {
    pub fn degenerate(&self) -> bool {
        self.inertia.zero > 0
    }
}

/// Signature of `V + V^T`; zero directions are reported separately.
pub fn signature(v: &SeifertMatrix) -> SignatureReport {
    let inertia = linalg::inertia_int(&linalg::to_big(&v.symmetrized()));
    SignatureReport { signature: inertia.signature(), inertia }
}

/// Characteristic polynomial `det(x I - A)`, constant term first.
pub fn char_poly(a: &[Vec<i64>]) -> Vec<BigInt> {
    let n = a.len();
    let a = linalg::to_big(a);
    linalg::poly_by_evaluation(n, |x| {
        let m: Mat = (0..n)
            .map(|i| (0..n).map(|j| if i == j { x - &a[i][j] } else { -a[i][j].clone() }).collect())
            .collect();
        linalg::det(&m)
    })
    .expect("integer matrix has integer characteristic polynomial")
}

/// All eigenvalues with multiplicity when every root of the characteristic
/// polynomial is an integer; `None` otherwise.
pub fn integer_eigenvalues(a: &[Vec<i64>]) -> Option<Vec<i64>> {
    let mut p = char_poly(a);
    let mut roots = Vec::new();
    while p.len() > 1 {
        if p[0].is_zero() {
            roots.push(0);
            p.remove(0);
            continue;
        }
        let c = p[0].abs().to_i64()?;
        let root = divisors(c).into_iter().flat_map(|d| [d, -d]).find(|&r| horner(&p, r).is_zero())?;
        roots.push(root);
        p = deflate(&p, root);
    }
    roots.sort_unstable();
    Some(roots)
}

fn divisors(c: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= c {
        if c % d == 0 {
            out.push(d);
            out.push(c / d);
        }
        d += 1;
    }
    out
}

fn horner(p: &[BigInt], x: i64) -> BigInt {
    let x = BigInt::from(x);
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
}

/// Divides by `(t - r)`; `p` is constant-first and `r` a root.
fn deflate(p: &[BigInt], r: i64) -> Vec<BigInt> {
    let r = BigInt::from(r);
    let n = p.len() - 1;
    let mut q = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for i in (0..n).rev() {
        carry = &p[i + 1] + &carry * &r;
        q[i] = carry.clone();
    }
    debug_assert!((&p[0] + &carry * &r).is_zero());
    q
}

pub fn knot_determinant(p: &LaurentPoly) -> BigInt {
    let v = p.eval(-1);
    debug_assert!(v.is_integer());
    v.to_integer().abs()
}
