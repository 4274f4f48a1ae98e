//! Contact (±1)-surgery diagrams and the invariants read off the linking matrix.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::front::{parse_index, FrontError, FrontFile, FrontWord, LineParser, OrientedFront};
use crate::linalg;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error(transparent)]
    Front(#[from] FrontError),
    #[error("component {0} has no surgery coefficient")]
    MissingCoefficient(usize),
    #[error("coefficient {coeff} on component {component}: only contact +1 and -1 are supported")]
    BadCoefficient { component: usize, coeff: String },
    #[error("component {0} is named more than once")]
    Duplicate(usize),
    #[error("component {component} does not exist (diagram has {count})")]
    UnknownComponent { component: usize, count: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coefficient {
    Plus,
    Minus,
}

impl Coefficient {
    pub fn value(self) -> i64 {
        match self {
            Coefficient::Plus => 1,
            Coefficient::Minus => -1,
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            Coefficient::Plus => Coefficient::Minus,
            Coefficient::Minus => Coefficient::Plus,
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coefficient::Plus => "+1",
            Coefficient::Minus => "-1",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactSurgeryDiagram {
    pub name: String,
    pub front: OrientedFront,
    pub coefficients: Vec<Coefficient>,
    pub labels: Vec<String>,
}

impl ContactSurgeryDiagram {
    pub fn new(front: OrientedFront, coefficients: Vec<Coefficient>) -> Result<Self, DiagramError> {
        let m = front.component_count();
        if coefficients.len() < m {
            return Err(DiagramError::MissingCoefficient(coefficients.len()));
        }
        if coefficients.len() > m {
            return Err(DiagramError::UnknownComponent { component: m, count: m });
        }
        let labels = (0..m).map(|i| format!("K{i}")).collect();
        Ok(ContactSurgeryDiagram { name: "diagram".into(), front, coefficients, labels })
    }

    pub fn from_word(w: &FrontWord, coefficients: Vec<Coefficient>) -> Result<Self, DiagramError> {
        Self::new(crate::front::orient(w, &[])?, coefficients)
    }

    pub fn empty() -> Self {
        Self::from_word(&FrontWord::default(), Vec::new()).expect("empty diagram is valid")
    }

    pub fn size(&self) -> usize {
        self.coefficients.len()
    }

    pub fn smooth_coefficient(&self, c: usize) -> i64 {
        self.front.tb(c) + self.coefficients[c].value()
    }

    pub fn q(&self) -> usize {
        self.coefficients.iter().filter(|&&c| c == Coefficient::Plus).count()
    }

    pub fn rotation_vector(&self) -> Vec<i64> {
        (0..self.size()).map(|c| self.front.rot(c)).collect()
    }

    pub fn reversed(&self, c: usize) -> Self {
        ContactSurgeryDiagram { front: self.front.reversed(c), ..self.clone() }
    }

    /// Appends a push-off of `c` carrying the opposite coefficient; the copy
    /// becomes component `c + 1`.
    pub fn with_cancelling_pushoff(&self, c: usize) -> Result<Self, DiagramError> {
        let word = crate::front::pushoff(&self.front.word, c)?;
        let mut seeds = Vec::new();
        for i in 0..self.size() {
            let d = self.front.seed(i);
            let j = if i > c { i + 1 } else { i };
            seeds.push((j, d));
            if i == c {
                seeds.push((c + 1, d));
            }
        }
        let front = crate::front::orient(&word, &seeds)?;
        let mut coefficients = self.coefficients.clone();
        coefficients.insert(c + 1, self.coefficients[c].opposite());
        let mut labels = self.labels.clone();
        labels.insert(c + 1, format!("{}'", self.labels[c]));
        Ok(ContactSurgeryDiagram { name: self.name.clone(), front, coefficients, labels })
    }
}

/// Square integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    pub rows: Vec<Vec<i64>>,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == rows.len()), "square matrix");
        IntMatrix { rows }
    }

    pub fn diag(d: &[i64]) -> Self {
        let n = d.len();
        IntMatrix::new((0..n).map(|i| (0..n).map(|j| if i == j { d[i] } else { 0 }).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn big(&self) -> linalg::Mat {
        linalg::to_big(&self.rows)
    }

    pub fn det(&self) -> BigInt {
        linalg::det(&self.big())
    }

    pub fn signature(&self) -> i64 {
        linalg::inertia_int(&self.big()).signature()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.rows[i][j] == self.rows[j][i]))
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

pub fn linking_matrix(d: &ContactSurgeryDiagram) -> IntMatrix {
    let m = d.size();
    let rows = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { d.smooth_coefficient(i) } else { d.front.linking(i, j) })
                .collect()
        })
        .collect();
    IntMatrix::new(rows)
}

/// Finitely generated abelian group `Z^free ⊕ Z/d1 ⊕ ... ⊕ Z/dk`, `d1 | d2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    /// `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Cokernel of `m`.
pub fn homology(m: &IntMatrix) -> AbelianGroup {
    let snf = linalg::smith(&m.big());
    let mut free_rank = 0;
    let mut torsion = Vec::new();
    for d in &snf.diag {
        if d.is_zero() {
            free_rank += 1;
        } else if !d.is_one() {
            torsion.push(d.clone());
        }
    }
    AbelianGroup { free_rank, torsion }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Hopf {
    Value(BigRational),
    NonTorsion,
}

impl fmt::Display for Hopf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hopf::Value(v) => write!(f, "{v}"),
            Hopf::NonTorsion => f.write_str("non-torsion"),
        }
    }
}

/// `c^2 = x^T M x` for a rational solution of `M x = r`.
pub fn c_squared(d: &ContactSurgeryDiagram) -> Option<BigRational> {
    let m = linking_matrix(d).big();
    let r: Vec<BigInt> = d.rotation_vector().into_iter().map(BigInt::from).collect();
    let x = linalg::solve(&m, &r)?;
    Some(x.iter().zip(&r).map(|(xi, ri)| xi * BigRational::from_integer(ri.clone())).sum())
}

pub fn hopf_invariant(d: &ContactSurgeryDiagram) -> Hopf {
    let Some(c2) = c_squared(d) else { return Hopf::NonTorsion };
    let m = linking_matrix(d);
    let sigma = BigRational::from_integer(m.signature().into());
    let chi = BigRational::from_integer(BigInt::from(1 + d.size() as i64));
    let two = BigRational::from_integer(2.into());
    let three = BigRational::from_integer(3.into());
    let quarter = BigRational::new(1.into(), 4.into());
    let h = quarter * (c2 - three * sigma - &two * chi + &two) + BigRational::from_integer(d.q().into());
    Hopf::Value(h)
}

pub fn expected_chat_degree(d: &ContactSurgeryDiagram) -> Hopf {
    match hopf_invariant(d) {
        Hopf::Value(h) => Hopf::Value(-h),
        Hopf::NonTorsion => Hopf::NonTorsion,
    }
}

/// Element of `Z^free ⊕ Z/d1 ⊕ ...` written in Smith coordinates.
/// A modulus of 0 marks a free coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CosetVector {
    pub moduli: Vec<BigInt>,
    pub coords: Vec<BigInt>,
}

impl CosetVector {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for CosetVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .moduli
            .iter()
            .zip(&self.coords)
            .map(|(m, c)| if m.is_zero() { format!("{c}") } else { format!("{c} mod {m}") })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `v` modulo `scale * im(M)`, dropping unit factors.
fn reduce(m: &IntMatrix, v: &[i64], scale: i64) -> CosetVector {
    let snf = linalg::smith(&m.big());
    let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
    let uv = linalg::mul_vec(&snf.u, &v);
    let mut moduli = Vec::new();
    let mut coords = Vec::new();
    for (i, y) in uv.into_iter().enumerate() {
        let d = snf.diag.get(i).cloned().unwrap_or_else(BigInt::zero) * scale;
        if d.is_one() {
            continue;
        }
        let c = if d.is_zero() { y } else { y.mod_floor(&d) };
        moduli.push(d);
        coords.push(c);
    }
    CosetVector { moduli, coords }
}

/// Class of the rotation vector in `coker M`.
pub fn c1_class(d: &ContactSurgeryDiagram) -> CosetVector {
    reduce(&linking_matrix(d), &d.rotation_vector(), 1)
}

/// Class of the rotation vector modulo `2 im M`; this separates spin^c
/// structures even where `c1_class` collides on 2-torsion.
pub fn spinc_class(d: &ContactSurgeryDiagram) -> CosetVector {
    reduce(&linking_matrix(d), &d.rotation_vector(), 2)
}

/// Parsed diagram file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramFile {
    pub front: FrontFile,
    pub coefficients: BTreeMap<usize, Coefficient>,
    pub labels: BTreeMap<usize, String>,
}

pub fn parse_diagram(text: &str) -> Result<DiagramFile, DiagramError> {
    let mut p = LineParser::new(text)?;
    let mut coefficients = BTreeMap::new();
    let mut labels = BTreeMap::new();
    while let Some((line, toks)) = p.next_line()? {
        if p.common(line, &toks)? {
            continue;
        }
        match toks.as_slice() {
            ["surgery", c, k] => {
                let c = parse_index(c, line)?;
                let k = match *k {
                    "+1" => Coefficient::Plus,
                    "-1" => Coefficient::Minus,
                    other => return Err(DiagramError::BadCoefficient { component: c, coeff: other.into() }),
                };
                if coefficients.insert(c, k).is_some() {
                    return Err(DiagramError::Duplicate(c));
                }
            }
            ["label", c, name] => {
                let c = parse_index(c, line)?;
                if labels.insert(c, name.to_string()).is_some() {
                    return Err(DiagramError::Duplicate(c));
                }
            }
            _ => {
                return Err(FrontError::Syntax { line, msg: format!("unexpected `{}`", toks.join(" ")) }.into());
            }
        }
    }
    Ok(DiagramFile { front: p.finish()?, coefficients, labels })
}

pub fn print_diagram(d: &DiagramFile) -> String {
    let mut out = format!("front {}\n", d.front.name);
    crate::front::print_events(&mut out, &d.front.word);
    for (c, dir) in &d.front.seeds {
        out.push_str(&format!("orient {c} {dir}\n"));
    }
    for (c, l) in &d.labels {
        out.push_str(&format!("label {c} {l}\n"));
    }
    for (c, k) in &d.coefficients {
        out.push_str(&format!("surgery {c} {k}\n"));
    }
    out.push_str("end\n");
    out
}

impl DiagramFile {
    pub fn build(&self) -> Result<ContactSurgeryDiagram, DiagramError> {
        let front = self.front.oriented()?;
        let m = front.component_count();
        for &c in self.coefficients.keys().chain(self.labels.keys()) {
            if c >= m {
                return Err(DiagramError::UnknownComponent { component: c, count: m });
            }
        }
        let coefficients = (0..m)
            .map(|c| self.coefficients.get(&c).copied().ok_or(DiagramError::MissingCoefficient(c)))
            .collect::<Result<Vec<_>, _>>()?;
        let mut d = ContactSurgeryDiagram::new(front, coefficients)?;
        for (&c, l) in &self.labels {
            d.labels[c] = l.clone();
        }
        d.name = self.front.name.clone();
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::front::FrontWord;

    fn diag(s: &str, k: &[Coefficient]) -> ContactSurgeryDiagram {
        ContactSurgeryDiagram::from_word(&FrontWord::from_tokens(s).unwrap(), k.to_vec()).unwrap()
    }

    fn rat(n: i64, d: i64) -> Hopf {
        Hopf::Value(BigRational::new(n.into(), d.into()))
    }

    use Coefficient::{Minus, Plus};

    #[test]
    fn unknot_plus_one() {
        let d = diag("L1 R1", &[Plus]);
        assert_eq!(linking_matrix(&d), IntMatrix::diag(&[0]));
        assert_eq!(hopf_invariant(&d), rat(1, 2));
        assert_eq!(expected_chat_degree(&d), rat(-1, 2));
        assert_eq!(homology(&linking_matrix(&d)).to_string(), "Z");
    }

    #[test]
    fn empty_diagram() {
        let d = ContactSurgeryDiagram::empty();
        assert_eq!(hopf_invariant(&d), rat(0, 1));
        assert_eq!(expected_chat_degree(&d), rat(0, 1));
    }

    #[test]
    fn tb_one_knot_minus_one() {
        let d = diag("L1 L3 X2 X2 X2 R1 R1", &[Minus]);
        assert_eq!(linking_matrix(&d), IntMatrix::diag(&[0]));
        assert_eq!(hopf_invariant(&d), rat(-1, 2));
    }

    #[test]
    fn lens_space_homology() {
        for n in 1..8 {
            let g = homology(&IntMatrix::diag(&[-n]));
            assert_eq!(g.order(), Some(BigInt::from(n)));
        }
        let g = homology(&IntMatrix::diag(&[0, 4]));
        assert_eq!(g.to_string(), "Z + Z/4");
    }

    #[test]
    fn pushoff_cancels() {
        let d = diag("L1 L3 X2 X2 X2 R1 R1", &[Plus]);
        let e = d.with_cancelling_pushoff(0).unwrap();
        assert_eq!(linking_matrix(&e), IntMatrix::new(vec![vec![2, 1], vec![1, 0]]));
        assert_eq!(hopf_invariant(&e), rat(0, 1));
    }

    #[test]
    fn stabilized_unknot_on_lens_space() {
        // tb -2, rot 1, contact -1: smooth -3
        let d = diag("L1 L2 R3 R1", &[Minus]);
        assert_eq!(homology(&linking_matrix(&d)).order(), Some(BigInt::from(3)));
        let c = c1_class(&d);
        assert_eq!(c.moduli, vec![BigInt::from(3)]);
        assert!(!c.is_zero());
        assert!(c1_class(&diag("L1 R1", &[Minus])).is_zero());
    }

    #[test]
    fn diagram_file_round_trip() {
        let text = "front hopf\nL1 L3 X2 X2 R1 R1\nlabel 0 A\nlabel 1 B\nsurgery 0 +1\nsurgery 1 -1\nend\n";
        let f = parse_diagram(text).unwrap();
        assert_eq!(print_diagram(&f), text);
        let d = f.build().unwrap();
        assert_eq!(d.labels, vec!["A", "B"]);
        assert!(matches!(
            parse_diagram("front a\nL1 R1\nsurgery 0 +2\nend\n"),
            Err(DiagramError::BadCoefficient { .. })
        ));
        assert!(matches!(
            parse_diagram("front a\nL1 R1\nend\n").unwrap().build(),
            Err(DiagramError::MissingCoefficient(0))
        ));
    }
}
