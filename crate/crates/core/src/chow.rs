//! Exact graded-ring arithmetic for the truncated Chow rings of the four
//! supported variety families.
//!
//! A [`GradedClass`] is a sparse map from basis monomials to
//! arbitrary-precision rationals. Products are reduced modulo the family's
//! relations and truncated at the variety dimension; nothing is ever
//! rounded.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub(crate) fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(big(n))
}

pub(crate) fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(big(n), big(d))
}

/// One of the four supported variety families together with its numeric
/// parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VarietySpec {
    /// Nonsingular 3-fold of degree `degree` in P^4.
    Hypersurface3Fold { degree: u32 },
    /// Complete intersection Calabi-Yau 3-fold in P^n, cut out by
    /// hypersurfaces of the listed degrees (so `degrees.len() == n - 3`
    /// and the degrees sum to `n + 1`).
    Cicy3Fold { ambient_dim: u32, degrees: Vec<u32> },
    /// Blow-up of the projective plane at `points` distinct points.
    BlowupPlane { points: u32 },
    /// Product of projective spaces P^n x P^m.
    ProductPP { n: u32, m: u32 },
}

impl VarietySpec {
    pub fn hypersurface(degree: u32) -> Result<Self> {
        let v = VarietySpec::Hypersurface3Fold { degree };
        v.validate()?;
        Ok(v)
    }

    pub fn cicy(ambient_dim: u32, degrees: Vec<u32>) -> Result<Self> {
        let v = VarietySpec::Cicy3Fold {
            ambient_dim,
            degrees,
        };
        v.validate()?;
        Ok(v)
    }

    pub fn blowup_plane(points: u32) -> Self {
        VarietySpec::BlowupPlane { points }
    }

    pub fn product(n: u32, m: u32) -> Result<Self> {
        let v = VarietySpec::ProductPP { n, m };
        v.validate()?;
        Ok(v)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            VarietySpec::Hypersurface3Fold { degree } => {
                if *degree < 1 {
                    return Err(Error::InvalidVariety(
                        "hypersurface degree must be >= 1".into(),
                    ));
                }
            }
            VarietySpec::Cicy3Fold {
                ambient_dim,
                degrees,
            } => {
                if *ambient_dim < 4 {
                    return Err(Error::InvalidVariety(
                        "CICY ambient dimension must be >= 4".into(),
                    ));
                }
                if degrees.len() as u32 != ambient_dim - 3 {
                    return Err(Error::InvalidVariety(format!(
                        "a 3-fold in P^{ambient_dim} needs {} defining degrees",
                        ambient_dim - 3
                    )));
                }
                if degrees.iter().any(|d| *d < 2) {
                    return Err(Error::InvalidVariety(
                        "CICY degrees must all be >= 2".into(),
                    ));
                }
                let sum: u32 = degrees.iter().sum();
                if sum != ambient_dim + 1 {
                    return Err(Error::InvalidVariety(format!(
                        "Calabi-Yau condition fails: degrees sum to {sum}, need {}",
                        ambient_dim + 1
                    )));
                }
            }
            VarietySpec::BlowupPlane { .. } => {}
            VarietySpec::ProductPP { n, m } => {
                if *n < 1 || *m < 1 {
                    return Err(Error::InvalidVariety(
                        "product factors must have dimension >= 1".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Complex dimension: 3, 3, 2 and n+m for the four families.
    pub fn dimension(&self) -> u32 {
        match self {
            VarietySpec::Hypersurface3Fold { .. } | VarietySpec::Cicy3Fold { .. } => 3,
            VarietySpec::BlowupPlane { .. } => 2,
            VarietySpec::ProductPP { n, m } => n + m,
        }
    }

    /// All basis monomials in canonical order.
    pub fn basis(&self) -> Vec<BasisMonomial> {
        let mut out = match self {
            VarietySpec::Hypersurface3Fold { .. } | VarietySpec::Cicy3Fold { .. } => {
                (0..=3).map(BasisMonomial::HPow).collect()
            }
            VarietySpec::BlowupPlane { points } => {
                let mut v = vec![BasisMonomial::HPow(0), BasisMonomial::HPow(1)];
                v.extend((1..=*points).map(BasisMonomial::Exceptional));
                v.push(BasisMonomial::Point);
                v
            }
            VarietySpec::ProductPP { n, m } => {
                let mut v = Vec::new();
                for a in 0..=*n {
                    for b in 0..=*m {
                        v.push(BasisMonomial::Bidegree { a, b });
                    }
                }
                v
            }
        };
        out.sort();
        out
    }

    pub(crate) fn unit_monomial(&self) -> BasisMonomial {
        match self {
            VarietySpec::ProductPP { .. } => BasisMonomial::Bidegree { a: 0, b: 0 },
            _ => BasisMonomial::HPow(0),
        }
    }

    pub(crate) fn top_monomial(&self) -> BasisMonomial {
        match self {
            VarietySpec::Hypersurface3Fold { .. } | VarietySpec::Cicy3Fold { .. } => {
                BasisMonomial::HPow(3)
            }
            VarietySpec::BlowupPlane { .. } => BasisMonomial::Point,
            VarietySpec::ProductPP { n, m } => BasisMonomial::Bidegree { a: *n, b: *m },
        }
    }

    /// Pairing of the top basis monomial against the fundamental class:
    /// H^3 integrates to the degree of the 3-fold, pt and h1^n*h2^m to 1.
    pub(crate) fn top_normalization(&self) -> BigInt {
        match self {
            VarietySpec::Hypersurface3Fold { degree } => big(*degree as i64),
            VarietySpec::Cicy3Fold { degrees, .. } => {
                degrees.iter().map(|d| big(*d as i64)).product()
            }
            VarietySpec::BlowupPlane { .. } | VarietySpec::ProductPP { .. } => BigInt::one(),
        }
    }

    fn monomial_is_valid(&self, m: &BasisMonomial) -> bool {
        match (self, m) {
            (
                VarietySpec::Hypersurface3Fold { .. } | VarietySpec::Cicy3Fold { .. },
                BasisMonomial::HPow(j),
            ) => *j <= 3,
            (VarietySpec::BlowupPlane { .. }, BasisMonomial::HPow(j)) => *j <= 1,
            (VarietySpec::BlowupPlane { points }, BasisMonomial::Exceptional(i)) => {
                *i >= 1 && i <= points
            }
            (VarietySpec::BlowupPlane { .. }, BasisMonomial::Point) => true,
            (VarietySpec::ProductPP { n, m: mm }, BasisMonomial::Bidegree { a, b }) => {
                a <= n && b <= mm
            }
            _ => false,
        }
    }

    /// Monomial product reduced by the family's relations. Returns the
    /// resulting monomial with a sign, or `None` when the product is zero
    /// (truncation or an orthogonality relation).
    fn mono_mul(&self, x: BasisMonomial, y: BasisMonomial) -> Option<(BasisMonomial, i8)> {
        use BasisMonomial::*;
        match self {
            VarietySpec::Hypersurface3Fold { .. } | VarietySpec::Cicy3Fold { .. } => {
                match (x, y) {
                    (HPow(i), HPow(j)) if i + j <= 3 => Some((HPow(i + j), 1)),
                    _ => None,
                }
            }
            VarietySpec::BlowupPlane { .. } => {
                if x.degree() == 0 {
                    return Some((y, 1));
                }
                if y.degree() == 0 {
                    return Some((x, 1));
                }
                // Intersection form: H.H = pt, E_i.E_i = -pt, H.E_i = 0,
                // E_i.E_j = 0 for i != j; everything above degree 2 is zero.
                match (x, y) {
                    (HPow(1), HPow(1)) => Some((Point, 1)),
                    (Exceptional(i), Exceptional(j)) if i == j => Some((Point, -1)),
                    _ => None,
                }
            }
            VarietySpec::ProductPP { n, m } => match (x, y) {
                (Bidegree { a, b }, Bidegree { a: c, b: d }) if a + c <= *n && b + d <= *m => {
                    Some((Bidegree { a: a + c, b: b + d }, 1))
                }
                _ => None,
            },
        }
    }
}

impl fmt::Display for VarietySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietySpec::Hypersurface3Fold { degree } => {
                write!(f, "degree-{degree} 3-fold in P^4")
            }
            VarietySpec::Cicy3Fold {
                ambient_dim,
                degrees,
            } => {
                let list: Vec<String> = degrees.iter().map(|d| d.to_string()).collect();
                write!(f, "({}) complete intersection in P^{ambient_dim}", list.join(","))
            }
            VarietySpec::BlowupPlane { points } => write!(f, "P^2 blown up at {points} points"),
            VarietySpec::ProductPP { n, m } => write!(f, "P^{n} x P^{m}"),
        }
    }
}

/// A basis monomial of one of the four Chow rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisMonomial {
    /// H^j; j = 0 is the unit on every family that uses H.
    HPow(u32),
    /// Exceptional divisor E_i (1-based) on the blown-up plane.
    Exceptional(u32),
    /// The point class on the blown-up plane.
    Point,
    /// h1^a * h2^b on a product of projective spaces; a = b = 0 is the unit.
    Bidegree { a: u32, b: u32 },
}

impl BasisMonomial {
    pub fn degree(&self) -> u32 {
        match self {
            BasisMonomial::HPow(j) => *j,
            BasisMonomial::Exceptional(_) => 1,
            BasisMonomial::Point => 2,
            BasisMonomial::Bidegree { a, b } => a + b,
        }
    }

    // Canonical order: by degree, then H-powers before exceptional classes,
    // and h1-heavy monomials first within a product degree. Injective over
    // all variants so it can back `Ord`.
    fn sort_key(&self) -> (u32, u8, u64) {
        match self {
            BasisMonomial::HPow(j) => (*j, 0, 0),
            BasisMonomial::Exceptional(i) => (1, 1, *i as u64),
            BasisMonomial::Point => (2, 2, 0),
            BasisMonomial::Bidegree { a, b } => {
                (a + b, 3, (((u32::MAX - a) as u64) << 32) | *b as u64)
            }
        }
    }

    /// Canonical rendering: "1", "H", "H^2", "E3", "pt", "h1^2*h2".
    pub fn render(&self) -> String {
        match self {
            BasisMonomial::HPow(0) => "1".into(),
            BasisMonomial::HPow(1) => "H".into(),
            BasisMonomial::HPow(j) => format!("H^{j}"),
            BasisMonomial::Exceptional(i) => format!("E{i}"),
            BasisMonomial::Point => "pt".into(),
            BasisMonomial::Bidegree { a: 0, b: 0 } => "1".into(),
            BasisMonomial::Bidegree { a, b } => {
                let mut parts = Vec::new();
                match a {
                    0 => {}
                    1 => parts.push("h1".to_string()),
                    _ => parts.push(format!("h1^{a}")),
                }
                match b {
                    0 => {}
                    1 => parts.push("h2".to_string()),
                    _ => parts.push(format!("h2^{b}")),
                }
                parts.join("*")
            }
        }
    }
}

impl Ord for BasisMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for BasisMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BasisMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn add_term(map: &mut BTreeMap<BasisMonomial, BigRational>, mono: BasisMonomial, c: BigRational) {
    if c.is_zero() {
        return;
    }
    let entry = map.entry(mono).or_insert_with(BigRational::zero);
    *entry += c;
    if entry.is_zero() {
        map.remove(&mono);
    }
}

/// An element of the truncated Chow ring: exact rational coefficients over
/// the canonical monomial basis of a fixed variety. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedClass {
    variety: VarietySpec,
    coeffs: BTreeMap<BasisMonomial, BigRational>,
}

impl GradedClass {
    pub fn zero(variety: &VarietySpec) -> Self {
        GradedClass {
            variety: variety.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(variety: &VarietySpec) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(variety.unit_monomial(), BigRational::one());
        GradedClass {
            variety: variety.clone(),
            coeffs,
        }
    }

    /// The class of a single basis monomial with coefficient 1.
    pub fn monomial(variety: &VarietySpec, m: BasisMonomial) -> Result<Self> {
        Self::from_terms(variety, &[(m, BigRational::one())])
    }

    pub fn from_terms(
        variety: &VarietySpec,
        terms: &[(BasisMonomial, BigRational)],
    ) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for (m, c) in terms {
            if !variety.monomial_is_valid(m) {
                return Err(Error::InvalidMonomial(m.render()));
            }
            add_term(&mut coeffs, *m, c.clone());
        }
        Ok(GradedClass {
            variety: variety.clone(),
            coeffs,
        })
    }

    pub fn from_integer_terms(variety: &VarietySpec, terms: &[(BasisMonomial, i64)]) -> Result<Self> {
        let terms: Vec<(BasisMonomial, BigRational)> =
            terms.iter().map(|(m, c)| (*m, rat(*c))).collect();
        Self::from_terms(variety, &terms)
    }

    pub fn variety(&self) -> &VarietySpec {
        &self.variety
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1
            && self
                .coeffs
                .get(&self.variety.unit_monomial())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn coefficient(&self, m: &BasisMonomial) -> BigRational {
        self.coeffs.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisMonomial, &BigRational)> {
        self.coeffs.iter()
    }

    /// True when every stored monomial has the given degree (the zero class
    /// is homogeneous in every degree).
    pub fn is_homogeneous(&self, degree: u32) -> bool {
        self.coeffs.keys().all(|m| m.degree() == degree)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// The homogeneous part of the given degree.
    pub fn part(&self, degree: u32) -> Self {
        GradedClass {
            variety: self.variety.clone(),
            coeffs: self
                .coeffs
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.variety != other.variety {
            return Err(Error::VarietyMismatch);
        }
        Ok(self.add_same(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.variety != other.variety {
            return Err(Error::VarietyMismatch);
        }
        Ok(self.sub_same(other))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.variety != other.variety {
            return Err(Error::VarietyMismatch);
        }
        Ok(self.mul_same(other))
    }

    pub(crate) fn add_same(&self, other: &Self) -> Self {
        debug_assert_eq!(self.variety, other.variety);
        let mut coeffs = self.coeffs.clone();
        for (m, c) in &other.coeffs {
            add_term(&mut coeffs, *m, c.clone());
        }
        GradedClass {
            variety: self.variety.clone(),
            coeffs,
        }
    }

    pub(crate) fn sub_same(&self, other: &Self) -> Self {
        self.add_same(&other.neg())
    }

    pub(crate) fn mul_same(&self, other: &Self) -> Self {
        debug_assert_eq!(self.variety, other.variety);
        let mut coeffs = BTreeMap::new();
        for (ma, ca) in &self.coeffs {
            for (mb, cb) in &other.coeffs {
                if let Some((m, sign)) = self.variety.mono_mul(*ma, *mb) {
                    let c = ca * cb;
                    add_term(&mut coeffs, m, if sign < 0 { -c } else { c });
                }
            }
        }
        GradedClass {
            variety: self.variety.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        GradedClass {
            variety: self.variety.clone(),
            coeffs: self.coeffs.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn scaled(&self, by: &BigRational) -> Self {
        if by.is_zero() {
            return Self::zero(&self.variety);
        }
        GradedClass {
            variety: self.variety.clone(),
            coeffs: self.coeffs.iter().map(|(m, c)| (*m, c * by)).collect(),
        }
    }

    pub fn scaled_int(&self, by: i64) -> Self {
        self.scaled(&rat(by))
    }

    /// Power by repeated squaring (all in the truncated ring).
    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.variety);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_same(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_same(&base);
            }
        }
        acc
    }

    /// Pairing against the fundamental class: the coefficient of the top
    /// basis monomial times its normalization (pt -> 1, h1^n*h2^m -> 1,
    /// H^3 -> deg X). Lower-degree parts contribute nothing.
    pub fn integrate(&self) -> BigRational {
        let top = self.coefficient(&self.variety.top_monomial());
        top * BigRational::from_integer(self.variety.top_normalization())
    }

    /// Multiplicative inverse in the truncated ring; requires the degree-0
    /// part to be exactly 1. The result satisfies `self * inv == 1` exactly.
    pub fn truncated_inverse(&self) -> Result<Self> {
        let unit = self.variety.unit_monomial();
        if !self.coefficient(&unit).is_one() {
            return Err(Error::NotAUnit);
        }
        let one = Self::one(&self.variety);
        let positive = self.sub_same(&one);
        // Geometric series 1 - p + p^2 - ...; p^k vanishes past dim X.
        let mut inv = one.clone();
        for _ in 0..self.variety.dimension() {
            inv = one.sub_same(&positive.mul_same(&inv));
        }
        inv
    }

    /// Canonical rendering, e.g. "3*H - E1 - E2" or "-3/2*pt"; the zero
    /// class renders as "0".
    pub fn render(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (mono, coeff)) in self.coeffs.iter().enumerate() {
            let negative = coeff.is_negative();
            let abs = coeff.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if mono.degree() == 0 {
                let _ = write!(out, "{abs}");
            } else if abs.is_one() {
                out.push_str(&mono.render());
            } else {
                let _ = write!(out, "{abs}*{}", mono.render());
            }
        }
        out
    }
}

impl fmt::Display for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
