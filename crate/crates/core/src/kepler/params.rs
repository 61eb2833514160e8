use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tolerance::Tolerances;

/// The integrals `(E, D)` labelling a level set, with `R² = 1 + 2DE + 4E²`.
///
/// `R` is the non-negative root of `R²`. It is `None` when `R² < 0`, and for
/// exact scalars also when the root does not lie in the scalar field.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemParams<T> {
    energy: T,
    second_integral: T,
    r_squared: T,
    r: Option<T>,
    tol: Tolerances,
}

/// Builds the parameter record for `(E, D)`.
pub fn make_params<T: Scalar>(energy: T, second_integral: T) -> SystemParams<T> {
    SystemParams::new(energy, second_integral)
}

impl<T: Scalar> SystemParams<T> {
    pub fn new(energy: T, second_integral: T) -> Self {
        let r_squared = T::one()
            + T::from_i64(2) * second_integral.clone() * energy.clone()
            + T::from_i64(4) * energy.square();
        let r = match r_squared.sign(0.0) {
            Ordering::Less => None,
            _ => r_squared.sqrt_principal(),
        };
        SystemParams {
            energy,
            second_integral,
            r_squared,
            r,
            tol: Tolerances::default(),
        }
    }

    pub fn with_tolerances(mut self, tol: Tolerances) -> Self {
        self.tol = tol;
        self
    }

    pub fn energy(&self) -> &T {
        &self.energy
    }

    /// The second integral `D = L² − 2A₂`.
    pub fn second_integral(&self) -> &T {
        &self.second_integral
    }

    pub fn r_squared(&self) -> &T {
        &self.r_squared
    }

    pub fn r(&self) -> Option<&T> {
        self.r.as_ref()
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    /// `R`, or the reason it is unavailable.
    pub fn require_r(&self) -> Result<&T> {
        match &self.r {
            Some(r) => Ok(r),
            None if self.r_squared.sign(0.0) == Ordering::Less => {
                Err(Error::NegativeRadicand(self.r_squared.to_f64()))
            }
            None => Err(Error::RadicandNotInField),
        }
    }

    /// `D + 2E`.
    pub fn d_plus_2e(&self) -> T {
        self.second_integral.clone() + T::from_i64(2) * self.energy.clone()
    }

    fn is_zero(&self, v: &T) -> bool {
        v.is_zero_within(self.tol.class)
    }

    /// Checks the three regularity conditions `D² ≠ 4`, `1 + 2DE + 4E² ≠ 0`
    /// and `D + 2E ≠ 0`, reporting the first that fails.
    pub fn check_regular(&self) -> Result<()> {
        let d = &self.second_integral;
        if self.is_zero(&(d.square() - T::from_i64(4))) {
            return Err(Error::SingularParameters { condition: "D^2 != 4" });
        }
        if self.is_zero(&self.r_squared) {
            return Err(Error::SingularParameters { condition: "1 + 2DE + 4E^2 != 0" });
        }
        if self.is_zero(&self.d_plus_2e()) {
            return Err(Error::SingularParameters { condition: "D + 2E != 0" });
        }
        Ok(())
    }

    pub fn is_regular(&self) -> bool {
        self.check_regular().is_ok()
    }

    /// Bounded, real motion: `(E, D)` in the closed region, boundary included.
    pub fn in_region(&self) -> bool {
        self.classify().tag != ParameterTag::OutsideRegion
    }

    pub fn classify(&self) -> ParameterClass {
        classify_parameters(self)
    }

    pub fn to_f64(&self) -> SystemParams<f64> {
        SystemParams::new(self.energy.to_f64(), self.second_integral.to_f64()).with_tolerances(self.tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ParameterTag {
    RegularInterior,
    /// `D + 2E = 0`, `0 < D < 2`.
    BoundaryWallMotion,
    /// `1 + 2DE + 4E² = 0`, `D > 2`.
    BoundaryTwoPeriodic,
    /// `D = 2`, `−1 < E < −1/2`.
    BoundaryD2Low,
    /// `D = 2`, `−1/2 < E < 0`.
    BoundaryD2High,
    OutsideRegion,
}

impl ParameterTag {
    pub fn is_boundary(self) -> bool {
        !matches!(self, ParameterTag::RegularInterior | ParameterTag::OutsideRegion)
    }

    pub fn detail(self) -> &'static str {
        match self {
            ParameterTag::RegularInterior => "regular level set: a single Liouville torus",
            ParameterTag::BoundaryWallMotion => {
                "single closed orbit: limiting motion on the wall between the minor-axis vertices of E+"
            }
            ParameterTag::BoundaryTwoPeriodic => {
                "single closed orbit: 2-periodic trajectory on an ellipse with its minor axis on the wall"
            }
            ParameterTag::BoundaryD2Low => {
                "single closed orbit: vertical bouncing on the x2-axis up to (0, -1/E)"
            }
            ParameterTag::BoundaryD2High => {
                "closed orbit plus separatrix: vertical bouncing between the wall and F(0,2); arcs through F(0,2) form the separatrix"
            }
            ParameterTag::OutsideRegion => "outside the region of bounded real motion",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParameterClass {
    pub tag: ParameterTag,
    pub detail: &'static str,
}

impl From<ParameterTag> for ParameterClass {
    fn from(tag: ParameterTag) -> Self {
        ParameterClass { tag, detail: tag.detail() }
    }
}

/// Assigns exactly one tag to `(E, D)`. Boundary tags win over the interior;
/// points on a boundary curve but outside its admissible range (corners
/// included) are `OutsideRegion`.
pub fn classify_parameters<T: Scalar>(p: &SystemParams<T>) -> ParameterClass {
    use Ordering::*;
    let tol = p.tol.class;
    let e = &p.energy;
    let d = &p.second_integral;
    let sign_e = e.sign(tol);
    let half = T::from_ratio(1, 2);
    let e_vs_half = (e.clone() + half).sign(tol);
    let d_vs_2 = (d.clone() - T::from_i64(2)).sign(tol);
    let wall = p.d_plus_2e().sign(tol);
    let radicand = p.r_squared.sign(tol);

    let tag = if sign_e != Less {
        ParameterTag::OutsideRegion
    } else if wall == Equal {
        if d.sign(tol) == Greater && d_vs_2 == Less {
            ParameterTag::BoundaryWallMotion
        } else {
            ParameterTag::OutsideRegion
        }
    } else if radicand == Equal {
        if d_vs_2 == Greater {
            ParameterTag::BoundaryTwoPeriodic
        } else {
            ParameterTag::OutsideRegion
        }
    } else if d_vs_2 == Equal {
        let e_vs_minus_one = (e.clone() + T::one()).sign(tol);
        match (e_vs_minus_one, e_vs_half) {
            (Greater, Less) => ParameterTag::BoundaryD2Low,
            (_, Greater) => ParameterTag::BoundaryD2High,
            _ => ParameterTag::OutsideRegion,
        }
    } else if wall == Greater && radicand == Greater && (e_vs_half != Less || d_vs_2 == Less) {
        ParameterTag::RegularInterior
    } else {
        ParameterTag::OutsideRegion
    };
    tag.into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::quadext::QuadExt;

    fn exact(e: (i64, i64), d: (i64, i64)) -> SystemParams<QuadExt> {
        SystemParams::new(QuadExt::from_ratio_i64(e.0, e.1), QuadExt::from_ratio_i64(d.0, d.1))
    }

    #[test]
    fn derived_quantities() {
        let p = exact((-5, 24), (7, 4));
        assert_eq!(p.r_squared(), &QuadExt::from_ratio_i64(4, 9));
        assert_eq!(p.r(), Some(&QuadExt::from_ratio_i64(2, 3)));

        let p = exact((-1, 4), (5, 2));
        assert_eq!(p.r_squared(), &QuadExt::zero());
        assert_eq!(p.r(), Some(&QuadExt::zero()));

        let p = exact((-7, 24), (7, 4));
        assert_eq!(p.r_squared(), &QuadExt::from_ratio_i64(23, 72));
        let r = p.r().unwrap();
        assert_eq!(r.clone() * r.clone(), QuadExt::from_ratio_i64(23, 72));
        assert_eq!(r.sign(0.0), Ordering::Greater);

        let f = make_params(-7.0 / 24.0, 1.75);
        assert!((f.r_squared() - 23.0 / 72.0).abs() < 1e-15);
    }

    #[test]
    fn negative_radicand_has_no_r() {
        let p = make_params(-0.1, 10.0);
        assert!(p.r().is_none());
        assert!(matches!(p.require_r(), Err(Error::NegativeRadicand(_))));
    }

    #[test]
    fn classification_examples() {
        let cases = [
            ((-5, 24), (7, 4), ParameterTag::RegularInterior),
            ((-1, 2), (1, 1), ParameterTag::BoundaryWallMotion),
            ((-1, 3), (2, 1), ParameterTag::BoundaryD2High),
            ((-3, 4), (2, 1), ParameterTag::BoundaryD2Low),
            ((-1, 4), (5, 2), ParameterTag::BoundaryTwoPeriodic),
            ((1, 4), (1, 1), ParameterTag::OutsideRegion),
            ((-3, 4), (1, 1), ParameterTag::OutsideRegion),
            ((-3, 4), (21, 10), ParameterTag::OutsideRegion),
            ((-1, 2), (2, 1), ParameterTag::OutsideRegion),
            ((-1, 1), (2, 1), ParameterTag::OutsideRegion),
            ((-1, 10), (3, 1), ParameterTag::RegularInterior),
        ];
        for (e, d, tag) in cases {
            assert_eq!(exact(e, d).classify().tag, tag, "E={e:?} D={d:?}");
            let f = make_params(e.0 as f64 / e.1 as f64, d.0 as f64 / d.1 as f64);
            assert_eq!(f.classify().tag, tag, "float E={e:?} D={d:?}");
        }
        assert!(exact((-1, 3), (2, 1)).classify().detail.contains("closed orbit plus separatrix"));
    }

    #[test]
    fn float_classification_uses_tolerance() {
        let p = make_params(-1.0 / 3.0, 2.0 + 1e-13);
        assert_eq!(p.classify().tag, ParameterTag::BoundaryD2High);
        let p = make_params(-1.0 / 3.0, 2.0 + 1e-9);
        assert_eq!(p.classify().tag, ParameterTag::RegularInterior);
    }

    #[test]
    fn regularity_names_the_failed_condition() {
        assert_eq!(
            exact((-1, 3), (2, 1)).check_regular(),
            Err(Error::SingularParameters { condition: "D^2 != 4" })
        );
        assert_eq!(
            exact((-1, 4), (5, 2)).check_regular(),
            Err(Error::SingularParameters { condition: "1 + 2DE + 4E^2 != 0" })
        );
        assert_eq!(
            exact((-1, 2), (1, 1)).check_regular(),
            Err(Error::SingularParameters { condition: "D + 2E != 0" })
        );
        assert!(exact((-5, 24), (7, 4)).is_regular());
    }
}
