//! Chern classes and Chern characters of line bundles and their formal
//! sums, together with tangent-bundle and canonical-class data for each
//! variety family.
//!
//! [`BundleChernData`] carries rank, total Chern class and Chern character
//! at once; the degree-2 identity ch2 = (c1^2 - 2 c2)/2 is checked whenever
//! a value is constructed.

use std::fmt;

use num::{BigRational, One};

use crate::chow::{big, rat, ratio, BasisMonomial, GradedClass, VarietySpec};
use crate::error::{Error, Result};

/// An integral divisor class of pure degree 1; the class of a line bundle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineBundleClass {
    divisor: GradedClass,
}

impl LineBundleClass {
    /// Wraps a divisor class. The zero class is allowed (the trivial
    /// bundle); anything inhomogeneous, of other degree, or with
    /// non-integer coefficients is rejected.
    pub fn new(divisor: GradedClass) -> Result<Self> {
        if !divisor.is_homogeneous(1) || !divisor.has_integer_coefficients() {
            return Err(Error::InvalidDivisor);
        }
        Ok(LineBundleClass { divisor })
    }

    /// The structure sheaf O_X.
    pub fn trivial(variety: &VarietySpec) -> Self {
        LineBundleClass {
            divisor: GradedClass::zero(variety),
        }
    }

    pub fn from_terms(variety: &VarietySpec, terms: &[(BasisMonomial, i64)]) -> Result<Self> {
        Self::new(GradedClass::from_integer_terms(variety, terms)?)
    }

    pub fn divisor(&self) -> &GradedClass {
        &self.divisor
    }

    pub fn variety(&self) -> &VarietySpec {
        &self.divisor.variety()
    }

    /// The dual line bundle (negated divisor).
    pub fn dual(&self) -> Self {
        LineBundleClass {
            divisor: self.divisor.neg(),
        }
    }
}

impl fmt::Display for LineBundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O({})", self.divisor.render())
    }
}

/// Rank, total Chern class and Chern character of a bundle (or a formal
/// difference of bundles when the rank is 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleChernData {
    rank: u32,
    total_chern: GradedClass,
    character: GradedClass,
}

impl BundleChernData {
    /// Validates the internal consistency of the triple: the total Chern
    /// class starts at 1, ch0 = rank, ch1 = c1 and ch2 = (c1^2 - 2 c2)/2.
    pub fn new(rank: u32, total_chern: GradedClass, character: GradedClass) -> Result<Self> {
        if total_chern.variety() != character.variety() {
            return Err(Error::VarietyMismatch);
        }
        let v = total_chern.variety().clone();
        let one = GradedClass::one(&v);
        if total_chern.part(0) != one {
            return Err(Error::InvalidChernData(
                "total Chern class must have degree-0 part 1".into(),
            ));
        }
        if character.part(0) != one.scaled_int(rank as i64) {
            return Err(Error::InvalidChernData(
                "character degree-0 part must equal the rank".into(),
            ));
        }
        let c1 = total_chern.part(1);
        if character.part(1) != c1 {
            return Err(Error::InvalidChernData(
                "character degree-1 part must equal c1".into(),
            ));
        }
        let c2 = total_chern.part(2);
        let ch2_expected = c1
            .mul_same(&c1)
            .sub_same(&c2.scaled_int(2))
            .scaled(&ratio(1, 2));
        if character.part(2) != ch2_expected {
            return Err(Error::InvalidChernData(
                "ch2 = (c1^2 - 2*c2)/2 fails".into(),
            ));
        }
        Ok(BundleChernData {
            rank,
            total_chern,
            character,
        })
    }

    /// The trivial bundle O^rank.
    pub fn trivial(variety: &VarietySpec, rank: u32) -> Self {
        BundleChernData {
            rank,
            total_chern: GradedClass::one(variety),
            character: GradedClass::one(variety).scaled_int(rank as i64),
        }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn total_chern(&self) -> &GradedClass {
        &self.total_chern
    }

    pub fn character(&self) -> &GradedClass {
        &self.character
    }

    pub fn variety(&self) -> &VarietySpec {
        self.total_chern.variety()
    }

    pub fn chern_class(&self, i: u32) -> GradedClass {
        self.total_chern.part(i)
    }

    pub fn c1(&self) -> GradedClass {
        self.chern_class(1)
    }

    pub fn c2(&self) -> GradedClass {
        self.chern_class(2)
    }

    pub fn ch_part(&self, i: u32) -> GradedClass {
        self.character.part(i)
    }
}

/// exp(D) truncated at the variety dimension.
fn exp_class(divisor: &GradedClass) -> GradedClass {
    let v = divisor.variety();
    let mut acc = GradedClass::one(v);
    let mut term = GradedClass::one(v);
    for k in 1..=v.dimension() {
        term = term
            .mul_same(divisor)
            .scaled(&BigRational::new(One::one(), big(k as i64)));
        acc = acc.add_same(&term);
    }
    acc
}

/// Chern data of the line bundle O(D): rank 1, c = 1 + D, ch = exp(D).
pub fn line_bundle_data(line: &LineBundleClass) -> BundleChernData {
    let v = line.variety();
    let total = GradedClass::one(v).add_same(line.divisor());
    let character = exp_class(line.divisor());
    BundleChernData::new(1, total, character).expect("line bundle data is consistent")
}

/// Whitney data of a direct sum with multiplicities: ranks add, total
/// Chern classes multiply, characters add.
pub fn whitney_sum(
    variety: &VarietySpec,
    parts: &[(BundleChernData, u32)],
) -> Result<BundleChernData> {
    let mut rank: u64 = 0;
    let mut total = GradedClass::one(variety);
    let mut character = GradedClass::zero(variety);
    for (part, mult) in parts {
        if part.variety() != variety {
            return Err(Error::VarietyMismatch);
        }
        rank += part.rank() as u64 * *mult as u64;
        total = total.mul_same(&part.total_chern().pow(*mult));
        character = character.add_same(&part.character().scaled_int(*mult as i64));
    }
    let rank = u32::try_from(rank)
        .map_err(|_| Error::InvalidChernData("combined rank exceeds u32".into()))?;
    BundleChernData::new(rank, total, character)
}

/// Whitney data of a quotient total/sub: c = c(total) * c(sub)^{-1},
/// ch = ch(total) - ch(sub).
pub fn whitney_quotient(
    total: &BundleChernData,
    sub: &BundleChernData,
) -> Result<BundleChernData> {
    if total.variety() != sub.variety() {
        return Err(Error::VarietyMismatch);
    }
    let rank = total
        .rank()
        .checked_sub(sub.rank())
        .ok_or(Error::RankUnderflow)?;
    let chern = total
        .total_chern()
        .mul_same(&sub.total_chern().truncated_inverse()?);
    let character = total.character().sub_same(sub.character());
    BundleChernData::new(rank, chern, character)
}

/// Bundle data on a surface determined by rank, c1 and c2 alone.
pub fn surface_bundle_from_c1_c2(
    variety: &VarietySpec,
    rank: u32,
    c1: &GradedClass,
    c2: &GradedClass,
) -> Result<BundleChernData> {
    if variety.dimension() != 2 {
        return Err(Error::InvalidChernData(
            "c1/c2 determine a character only on a surface".into(),
        ));
    }
    if c1.variety() != variety || c2.variety() != variety {
        return Err(Error::VarietyMismatch);
    }
    let total = GradedClass::one(variety).add_same(c1).add_same(c2);
    let ch2 = c1
        .mul_same(c1)
        .sub_same(&c2.scaled_int(2))
        .scaled(&ratio(1, 2));
    let character = GradedClass::one(variety)
        .scaled_int(rank as i64)
        .add_same(c1)
        .add_same(&ch2);
    BundleChernData::new(rank, total, character)
}

fn o_h(variety: &VarietySpec, coeff: i64) -> LineBundleClass {
    LineBundleClass::from_terms(variety, &[(BasisMonomial::HPow(1), coeff)])
        .expect("H is a valid divisor here")
}

/// Tangent-bundle Chern data for each family.
///
/// Hypersurfaces and complete intersections restrict the ambient data and
/// quotient by the normal bundle, so c(TX) = (1+H)^{n+1} / prod(1 + d_i H).
/// Products use the Euler sequence
/// 0 -> O^2 -> O(1,0)^{n+1} + O(0,1)^{m+1} -> TX -> 0, giving
/// c(TX) = (1+h1)^{n+1} (1+h2)^{m+1}. The blown-up plane has
/// c1 = 3H - sum E_i and c2 = (3+n) pt (its topological Euler number).
pub fn tangent_data(variety: &VarietySpec) -> BundleChernData {
    match variety {
        VarietySpec::Hypersurface3Fold { degree } => {
            restricted_projective_tangent(variety, 5, &[*degree])
        }
        VarietySpec::Cicy3Fold {
            ambient_dim,
            degrees,
        } => restricted_projective_tangent(variety, ambient_dim + 1, degrees),
        VarietySpec::BlowupPlane { points } => {
            let n = *points;
            let mut c1_terms = vec![(BasisMonomial::HPow(1), 3)];
            for i in 1..=n {
                c1_terms.push((BasisMonomial::Exceptional(i), -1));
            }
            let c1 = GradedClass::from_integer_terms(variety, &c1_terms)
                .expect("anticanonical divisor");
            let c2 = GradedClass::from_integer_terms(
                variety,
                &[(BasisMonomial::Point, 3 + n as i64)],
            )
            .expect("point class");
            surface_bundle_from_c1_c2(variety, 2, &c1, &c2).expect("tangent data is consistent")
        }
        VarietySpec::ProductPP { n, m } => {
            let h1 = LineBundleClass::from_terms(
                variety,
                &[(BasisMonomial::Bidegree { a: 1, b: 0 }, 1)],
            )
            .expect("h1 divisor");
            let h2 = LineBundleClass::from_terms(
                variety,
                &[(BasisMonomial::Bidegree { a: 0, b: 1 }, 1)],
            )
            .expect("h2 divisor");
            let euler_middle = whitney_sum(
                variety,
                &[
                    (line_bundle_data(&h1), n + 1),
                    (line_bundle_data(&h2), m + 1),
                ],
            )
            .expect("Euler middle term");
            whitney_quotient(&euler_middle, &BundleChernData::trivial(variety, 2))
                .expect("Euler sequence quotient")
        }
    }
}

/// Restriction of the ambient projective tangent bundle quotiented by the
/// normal bundle O(d_1) + ... + O(d_l).
fn restricted_projective_tangent(
    variety: &VarietySpec,
    hyperplane_copies: u32,
    normal_degrees: &[u32],
) -> BundleChernData {
    let twists = whitney_sum(
        variety,
        &[(line_bundle_data(&o_h(variety, 1)), hyperplane_copies)],
    )
    .expect("ambient Euler middle term");
    let ambient = whitney_quotient(&twists, &BundleChernData::trivial(variety, 1))
        .expect("ambient tangent restriction");
    let normal_parts: Vec<(BundleChernData, u32)> = normal_degrees
        .iter()
        .map(|d| (line_bundle_data(&o_h(variety, *d as i64)), 1))
        .collect();
    let normal = whitney_sum(variety, &normal_parts).expect("normal bundle");
    whitney_quotient(&ambient, &normal).expect("tangent quotient")
}

/// The canonical divisor class K_X; always equal to -c1(TX).
pub fn canonical_class(variety: &VarietySpec) -> LineBundleClass {
    match variety {
        VarietySpec::Hypersurface3Fold { degree } => o_h(variety, *degree as i64 - 5),
        VarietySpec::Cicy3Fold { .. } => LineBundleClass::trivial(variety),
        VarietySpec::BlowupPlane { points } => {
            let mut terms = vec![(BasisMonomial::HPow(1), -3)];
            for i in 1..=*points {
                terms.push((BasisMonomial::Exceptional(i), 1));
            }
            LineBundleClass::from_terms(variety, &terms).expect("canonical divisor")
        }
        VarietySpec::ProductPP { n, m } => LineBundleClass::from_terms(
            variety,
            &[
                (BasisMonomial::Bidegree { a: 1, b: 0 }, -(*n as i64) - 1),
                (BasisMonomial::Bidegree { a: 0, b: 1 }, -(*m as i64) - 1),
            ],
        )
        .expect("canonical divisor"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Zero;

    fn h2_coeff(c: &GradedClass) -> BigRational {
        c.coefficient(&BasisMonomial::HPow(2))
    }

    #[test]
    fn trivial_line_bundle() {
        let v = VarietySpec::hypersurface(5).unwrap();
        let data = line_bundle_data(&LineBundleClass::trivial(&v));
        assert_eq!(data.rank(), 1);
        assert!(data.total_chern().is_one());
        assert!(data.character().is_one());
    }

    #[test]
    fn line_bundle_exp_on_blowup() {
        let v = VarietySpec::blowup_plane(1);
        let h = LineBundleClass::from_terms(&v, &[(BasisMonomial::HPow(1), 1)]).unwrap();
        let data = line_bundle_data(&h);
        assert_eq!(data.character().coefficient(&BasisMonomial::HPow(0)), rat(1));
        assert_eq!(data.character().coefficient(&BasisMonomial::HPow(1)), rat(1));
        assert_eq!(data.character().coefficient(&BasisMonomial::Point), ratio(1, 2));
    }

    #[test]
    fn line_bundle_null_square() {
        // D = -H + E2 on the blow-up at three points has D^2 = 0.
        let v = VarietySpec::blowup_plane(3);
        let d = LineBundleClass::from_terms(
            &v,
            &[(BasisMonomial::HPow(1), -1), (BasisMonomial::Exceptional(2), 1)],
        )
        .unwrap();
        let data = line_bundle_data(&d);
        assert_eq!(data.c1(), d.divisor().clone());
        assert!(data.ch_part(2).is_zero());
    }

    #[test]
    fn line_bundle_rejects_bad_divisors() {
        let v = VarietySpec::blowup_plane(1);
        let not_deg1 = GradedClass::monomial(&v, BasisMonomial::Point).unwrap();
        assert_eq!(LineBundleClass::new(not_deg1).unwrap_err(), Error::InvalidDivisor);
        let fractional = GradedClass::from_terms(
            &v,
            &[(BasisMonomial::HPow(1), ratio(1, 2))],
        )
        .unwrap();
        assert_eq!(LineBundleClass::new(fractional).unwrap_err(), Error::InvalidDivisor);
    }

    #[test]
    fn whitney_sum_trivial_copies() {
        let v = VarietySpec::hypersurface(5).unwrap();
        let data = whitney_sum(&v, &[(BundleChernData::trivial(&v, 1), 22)]).unwrap();
        assert_eq!(data.rank(), 22);
        assert!(data.total_chern().is_one());
    }

    #[test]
    fn whitney_sum_product_lines() {
        let v = VarietySpec::product(2, 3).unwrap();
        let h1 = LineBundleClass::from_terms(&v, &[(BasisMonomial::Bidegree { a: 1, b: 0 }, 1)])
            .unwrap();
        let h2 = LineBundleClass::from_terms(&v, &[(BasisMonomial::Bidegree { a: 0, b: 1 }, 1)])
            .unwrap();
        let data = whitney_sum(
            &v,
            &[(line_bundle_data(&h1), 3), (line_bundle_data(&h2), 4)],
        )
        .unwrap();
        assert_eq!(data.rank(), 7);
        assert_eq!(
            data.c1(),
            GradedClass::from_integer_terms(
                &v,
                &[
                    (BasisMonomial::Bidegree { a: 1, b: 0 }, 3),
                    (BasisMonomial::Bidegree { a: 0, b: 1 }, 4),
                ],
            )
            .unwrap()
        );
    }

    #[test]
    fn whitney_sum_binomial_chern() {
        let v = VarietySpec::hypersurface(5).unwrap();
        let o1 = o_h(&v, 1);
        let data = whitney_sum(&v, &[(line_bundle_data(&o1), 10)]).unwrap();
        // (1+H)^10 truncated at degree 3.
        assert_eq!(data.total_chern().coefficient(&BasisMonomial::HPow(1)), rat(10));
        assert_eq!(data.total_chern().coefficient(&BasisMonomial::HPow(2)), rat(45));
        assert_eq!(data.total_chern().coefficient(&BasisMonomial::HPow(3)), rat(120));
    }

    #[test]
    fn whitney_quotient_by_trivial() {
        let v = VarietySpec::hypersurface(5).unwrap();
        let total = whitney_sum(&v, &[(line_bundle_data(&o_h(&v, 1)), 4)]).unwrap();
        let q = whitney_quotient(&total, &BundleChernData::trivial(&v, 2)).unwrap();
        assert_eq!(q.rank(), 2);
        assert_eq!(q.total_chern(), total.total_chern());
    }

    #[test]
    fn whitney_quotient_cubic_tangent_values() {
        // (1+H)^5 / (1+3H) on the cubic 3-fold: c1 = 2H, c2 = 4H^2.
        let v = VarietySpec::hypersurface(3).unwrap();
        let total = whitney_sum(&v, &[(line_bundle_data(&o_h(&v, 1)), 5)]).unwrap();
        let q = whitney_quotient(&total, &line_bundle_data(&o_h(&v, 3))).unwrap();
        assert_eq!(q.c1(), GradedClass::from_integer_terms(&v, &[(BasisMonomial::HPow(1), 2)]).unwrap());
        assert_eq!(h2_coeff(&q.c2()), rat(4));
    }

    #[test]
    fn whitney_quotient_cicy33() {
        // (1+H)^6 / (1+3H)^2 on the (3,3) intersection: c2 = 6H^2.
        let v = VarietySpec::cicy(5, vec![3, 3]).unwrap();
        let total = whitney_sum(&v, &[(line_bundle_data(&o_h(&v, 1)), 6)]).unwrap();
        let cubic = line_bundle_data(&o_h(&v, 3));
        let normal = whitney_sum(&v, &[(cubic, 2)]).unwrap();
        let q = whitney_quotient(&total, &normal).unwrap();
        assert!(q.c1().is_zero());
        assert_eq!(h2_coeff(&q.c2()), rat(6));
    }

    #[test]
    fn whitney_quotient_rank_underflow() {
        let v = VarietySpec::hypersurface(5).unwrap();
        let total = BundleChernData::trivial(&v, 1);
        let sub = BundleChernData::trivial(&v, 2);
        assert_eq!(whitney_quotient(&total, &sub).unwrap_err(), Error::RankUnderflow);
    }

    #[test]
    fn tangent_quintic() {
        let v = VarietySpec::hypersurface(5).unwrap();
        let t = tangent_data(&v);
        assert_eq!(t.rank(), 3);
        assert!(t.c1().is_zero());
        assert_eq!(h2_coeff(&t.c2()), rat(10));
    }

    #[test]
    fn tangent_hypersurface_closed_form() {
        for d in 1..=10u32 {
            let v = VarietySpec::hypersurface(d).unwrap();
            let t = tangent_data(&v);
            let di = d as i64;
            assert_eq!(
                t.c1(),
                GradedClass::from_integer_terms(&v, &[(BasisMonomial::HPow(1), 5 - di)]).unwrap()
            );
            assert_eq!(h2_coeff(&t.c2()), rat(di * di - 5 * di + 10));
        }
    }

    #[test]
    fn tangent_product_p1p1() {
        let v = VarietySpec::product(1, 1).unwrap();
        let t = tangent_data(&v);
        assert_eq!(t.rank(), 2);
        assert_eq!(
            t.c1(),
            GradedClass::from_integer_terms(
                &v,
                &[
                    (BasisMonomial::Bidegree { a: 1, b: 0 }, 2),
                    (BasisMonomial::Bidegree { a: 0, b: 1 }, 2),
                ],
            )
            .unwrap()
        );
        assert_eq!(
            t.c2(),
            GradedClass::from_integer_terms(&v, &[(BasisMonomial::Bidegree { a: 1, b: 1 }, 4)])
                .unwrap()
        );
    }

    #[test]
    fn tangent_blowup() {
        let v = VarietySpec::blowup_plane(4);
        let t = tangent_data(&v);
        assert_eq!(t.rank(), 2);
        assert_eq!(
            t.c2(),
            GradedClass::from_integer_terms(&v, &[(BasisMonomial::Point, 7)]).unwrap()
        );
    }

    #[test]
    fn tangent_product_binomial_closed_form() {
        // c2(TX) = C(n+1,2) h1^2 + C(m+1,2) h2^2 + (n+1)(m+1) h1 h2.
        for n in 1..=6u32 {
            for m in 1..=6u32 {
                let v = VarietySpec::product(n, m).unwrap();
                let t = tangent_data(&v);
                let mut expected = Vec::new();
                let choose2 = |k: i64| k * (k - 1) / 2;
                if n >= 2 {
                    expected.push((
                        BasisMonomial::Bidegree { a: 2, b: 0 },
                        choose2(n as i64 + 1),
                    ));
                }
                if m >= 2 {
                    expected.push((
                        BasisMonomial::Bidegree { a: 0, b: 2 },
                        choose2(m as i64 + 1),
                    ));
                }
                expected.push((
                    BasisMonomial::Bidegree { a: 1, b: 1 },
                    (n as i64 + 1) * (m as i64 + 1),
                ));
                let expected = GradedClass::from_integer_terms(&v, &expected).unwrap();
                assert_eq!(t.c2(), expected, "product c2 mismatch at n={n}, m={m}");
            }
        }
    }

    #[test]
    fn canonical_classes() {
        let quintic = VarietySpec::hypersurface(5).unwrap();
        assert!(canonical_class(&quintic).divisor().is_zero());

        let blow2 = VarietySpec::blowup_plane(2);
        assert_eq!(canonical_class(&blow2).divisor().render(), "-3*H + E1 + E2");

        let p32 = VarietySpec::product(3, 2).unwrap();
        assert_eq!(canonical_class(&p32).divisor().render(), "-4*h1 - 3*h2");
    }

    #[test]
    fn canonical_is_minus_tangent_c1() {
        let varieties = vec![
            VarietySpec::hypersurface(3).unwrap(),
            VarietySpec::hypersurface(7).unwrap(),
            VarietySpec::cicy(6, vec![2, 2, 3]).unwrap(),
            VarietySpec::blowup_plane(5),
            VarietySpec::product(2, 4).unwrap(),
        ];
        for v in varieties {
            let k = canonical_class(&v);
            let c1 = tangent_data(&v).c1();
            assert!(k.divisor().add_same(&c1).is_zero(), "K + c1(TX) != 0 on {v}");
        }
    }
}
