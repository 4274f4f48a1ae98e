//! Rank and grading bookkeeping for Floer homology shapes.
//!
//! Modules are recorded by tower bottom degrees and a finite graded group;
//! maps are recorded only through the ranks of their images.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::surgery::{homology, IntMatrix};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(n.into(), d.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tower {
    Known(Q),
    /// bottom degree not determined
    Unknown,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedGroup {
    pub free: u32,
    pub torsion: Vec<u64>,
}

impl GradedGroup {
    fn is_trivial(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedModule {
    towers: Vec<Tower>,
    finite: BTreeMap<Q, GradedGroup>,
}

impl GradedModule {
    pub fn new(towers: Vec<Tower>, finite: BTreeMap<Q, GradedGroup>) -> Self {
        let mut m = GradedModule { towers, finite };
        m.normalize();
        m
    }

    fn normalize(&mut self) {
        self.towers.sort();
        self.finite.retain(|_, g| !g.is_trivial());
        for g in self.finite.values_mut() {
            g.torsion.sort_unstable();
        }
    }

    pub fn towers(&self) -> &[Tower] {
        &self.towers
    }

    pub fn finite_part(&self) -> &BTreeMap<Q, GradedGroup> {
        &self.finite
    }

    pub fn add_tower(mut self, t: Tower) -> Self {
        self.towers.push(t);
        self.normalize();
        self
    }

    pub fn add_free(mut self, degree: Q, rank: u32) -> Self {
        self.finite.entry(degree).or_default().free += rank;
        self.normalize();
        self
    }

    pub fn add_torsion(mut self, degree: Q, order: u64) -> Self {
        self.finite.entry(degree).or_default().torsion.push(order);
        self.normalize();
        self
    }

    pub fn finite_rank(&self) -> u64 {
        self.finite.values().map(|g| g.free as u64).sum()
    }

    /// Towers reaching degree `d`, unknown towers, and free rank of the finite part at `d`.
    pub fn degree_count(&self, d: &Q) -> DegreeCount {
        let two = BigRational::from_integer(BigInt::from(2));
        let mut towers = 0;
        let mut unknown = 0;
        for t in &self.towers {
            match t {
                Tower::Known(a) => {
                    let steps = (d - a) / &two;
                    if steps.is_integer() && !steps.is_negative() {
                        towers += 1;
                    }
                }
                Tower::Unknown => unknown += 1,
            }
        }
        let finite = self.finite.get(d).map_or(0, |g| g.free);
        DegreeCount { towers, unknown_towers: unknown, finite }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeCount {
    pub towers: u32,
    pub unknown_towers: u32,
    pub finite: u32,
}

impl DegreeCount {
    /// Rank in the degree when no unknown tower could contribute.
    pub fn rank(&self) -> Option<u32> {
        (self.unknown_towers == 0).then_some(self.towers + self.finite)
    }
}

/// Orientation reversal: towers `a -> -a`, finite degrees `d -> -d-1`.
pub fn dual(m: &GradedModule) -> GradedModule {
    let towers = m
        .towers
        .iter()
        .map(|t| match t {
            Tower::Known(a) => Tower::Known(-a),
            Tower::Unknown => Tower::Unknown,
        })
        .collect();
    let finite = m.finite.iter().map(|(d, g)| (-d - Q::one(), g.clone())).collect();
    GradedModule::new(towers, finite)
}

fn fmt_q(x: &Q) -> String {
    x.to_string()
}

impl fmt::Display for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for t in &self.towers {
            parts.push(match t {
                Tower::Known(a) => format!("T({})", fmt_q(a)),
                Tower::Unknown => "T(?)".to_string(),
            });
        }
        for (d, g) in &self.finite {
            if g.free > 0 {
                parts.push(format!("Z^{}({})", g.free, fmt_q(d)));
            }
            for m in &g.torsion {
                parts.push(format!("Z/{m}({})", fmt_q(d)));
            }
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum HfError {
    #[error("bad module term `{0}`")]
    BadTerm(String),
    #[error("inconsistent triangle ranks ({0}, {1}, {2})")]
    InconsistentTriangle(u64, u64, u64),
    #[error("{0}")]
    Domain(String),
}

fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() || d.is_negative() {
                return None;
            }
            Some(BigRational::new(n.parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl FromStr for GradedModule {
    type Err = HfError;

    fn from_str(s: &str) -> Result<Self, HfError> {
        let s = s.trim();
        let mut m = GradedModule::default();
        if s == "0" {
            return Ok(m);
        }
        for term in s.split('+') {
            let term = term.trim();
            let bad = || HfError::BadTerm(term.to_string());
            let (head, rest) = term.split_once('(').ok_or_else(bad)?;
            let arg = rest.strip_suffix(')').ok_or_else(bad)?;
            if head == "T" {
                let t = if arg == "?" { Tower::Unknown } else { Tower::Known(parse_q(arg).ok_or_else(bad)?) };
                m.towers.push(t);
                continue;
            }
            let d = parse_q(arg).ok_or_else(bad)?;
            if head == "Z" {
                m.finite.entry(d).or_default().free += 1;
            } else if let Some(r) = head.strip_prefix("Z^") {
                let r: u32 = r.parse().map_err(|_| bad())?;
                m.finite.entry(d).or_default().free += r;
            } else if let Some(o) = head.strip_prefix("Z/") {
                let o: u64 = o.parse().map_err(|_| bad())?;
                if o < 2 {
                    return Err(bad());
                }
                m.finite.entry(d).or_default().torsion.push(o);
            } else {
                return Err(bad());
            }
        }
        m.normalize();
        Ok(m)
    }
}

/// Total ranks of the corners of an exact triangle `A -> B -> C -> A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TriangleRanks {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl TriangleRanks {
    pub fn new(a: u64, b: u64, c: u64) -> Result<Self, HfError> {
        let err = HfError::InconsistentTriangle(a, b, c);
        if (a + b + c) % 2 != 0 || a + b < c || b + c < a || c + a < b {
            return Err(err);
        }
        Ok(TriangleRanks { a, b, c })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MapRank {
    pub image: u64,
    pub domain: u64,
}

impl MapRank {
    pub fn forced_zero(&self) -> bool {
        self.image == 0
    }

    pub fn forced_injective(&self) -> bool {
        self.image == self.domain
    }
}

/// Image ranks of `A -> B`, `B -> C`, `C -> A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ImageRanks {
    pub ab: MapRank,
    pub bc: MapRank,
    pub ca: MapRank,
}

impl ImageRanks {
    pub fn tuple(&self) -> (u64, u64, u64) {
        (self.ab.image, self.bc.image, self.ca.image)
    }
}

pub fn image_ranks(t: TriangleRanks) -> Result<ImageRanks, HfError> {
    let t = TriangleRanks::new(t.a, t.b, t.c)?;
    let x = (t.a + t.b - t.c) / 2;
    let y = (t.b + t.c - t.a) / 2;
    let z = (t.c + t.a - t.b) / 2;
    Ok(ImageRanks {
        ab: MapRank { image: x, domain: t.a },
        bc: MapRank { image: y, domain: t.b },
        ca: MapRank { image: z, domain: t.c },
    })
}

/// A closed surface of genus `g` with square above `2g - 2` kills the cobordism map.
pub fn adjunction_vanishes(g: u64, self_int: i64) -> bool {
    self_int > 2 * g as i64 - 2
}

/// `h1_order` is `None` for infinite first homology.
pub fn is_l_space(hf_rank: u64, h1_order: Option<u64>) -> bool {
    h1_order.is_some_and(|n| hf_rank == n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BgrShape {
    SingleTower,
    TwoTowers,
    Indeterminate,
}

impl fmt::Display for BgrShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BgrShape::SingleTower => "single tower",
            BgrShape::TwoTowers => "two towers",
            BgrShape::Indeterminate => "indeterminate",
        })
    }
}

pub fn bgr_shape(hf_rank_per_spinc: u64, b1: u8) -> BgrShape {
    match (hf_rank_per_spinc, b1) {
        (1, 0) => BgrShape::SingleTower,
        (2, 1) => BgrShape::TwoTowers,
        _ => BgrShape::Indeterminate,
    }
}

/// Rank of the hat group of zero-surgery on the trefoil.
pub const ZERO_SURGERY_TREFOIL_RANK: u64 = 2;
/// `V(0)` is `S^1 x S^2`.
pub const V0_RANK: u64 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VRankStep {
    pub k: u64,
    pub triangle: TriangleRanks,
    pub images: ImageRanks,
}

/// Rank of `V(k)` by running the surgery triangle
/// `HF(S^3_0(K)) -> HF(V(j)) -> HF(V(j+1))` for `j < k`.
pub fn v_rank_trace(k: u64) -> Result<(u64, Vec<VRankStep>), HfError> {
    let mut rank = V0_RANK;
    let mut steps = Vec::new();
    for j in 0..k {
        // the 2-handle cobordism contains a torus of square j+1
        if !adjunction_vanishes(1, j as i64 + 1) {
            return Err(HfError::Domain(format!("no vanishing map at step {j}")));
        }
        // a zero map out of A makes the triangle short exact
        let a = ZERO_SURGERY_TREFOIL_RANK;
        let b = rank;
        let c = a + b;
        let images = image_ranks(TriangleRanks::new(a, b, c)?)?;
        if !images.ab.forced_zero() {
            return Err(HfError::Domain(format!("step {j} does not match a zero map")));
        }
        rank = c;
        steps.push(VRankStep { k: j + 1, triangle: TriangleRanks { a, b, c }, images });
    }
    Ok((rank, steps))
}

pub fn v_rank(k: u64) -> u64 {
    v_rank_trace(k).expect("triangle recursion is consistent").0
}

/// Ranks per torsion spin^c structure of `V(k)`, forced by a lower bound of 2
/// on each of the `|Tors H_1|` torsion classes.
pub fn v_rank_split(k: u64) -> Result<Vec<u64>, HfError> {
    let total = v_rank(k);
    let h1 = homology(&IntMatrix::diag(&[0, k as i64 + 1]));
    let classes: u64 = h1.torsion_order().try_into().map_err(|_| HfError::Domain("torsion too large".into()))?;
    let floor = 2;
    if classes * floor != total {
        return Err(HfError::Domain(format!("rank {total} does not split over {classes} classes")));
    }
    Ok(vec![floor; classes as usize])
}

/// The pair for `S^3_0` of the genus-one twist knot with `n` twists and its
/// orientation reversal.
pub fn twist_zero_surgery_hf(n: u64) -> Result<(GradedModule, GradedModule), HfError> {
    if n < 2 || n % 2 != 0 {
        return Err(HfError::Domain(format!("n = {n} must be even and at least 2")));
    }
    let r = (n / 2 - 1) as u32;
    let pos = GradedModule::new(vec![Tower::Known(q(-1, 2)), Tower::Known(q(-3, 2))], BTreeMap::new())
        .add_free(q(-3, 2), r);
    let neg = GradedModule::new(vec![Tower::Known(q(1, 2)), Tower::Known(q(3, 2))], BTreeMap::new())
        .add_free(q(1, 2), r);
    Ok((pos, neg))
}
