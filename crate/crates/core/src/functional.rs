//! Bounded b-linear functionals on `X x <a_2> x ... x <a_n>`.
//!
//! Every evaluation in this artifact happens at the fixed anchor tail, so
//! a functional is represented by a single coefficient vector `t` with
//! `T(x, a_2, ..., a_n) = <t, x>`. Boundedness with respect to the
//! anchored seminorm is exactly the requirement that `t` annihilates the
//! anchor span, i.e. `t` lies in the complement subspace `U`; the norm
//! then has the closed form `|t| / V` with `V` the anchor volume.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg;
use crate::optimizer::{sphere_extremum, FnObjective, Mode, OptimizerConfig};
use crate::scalar::{real, Scalar};
use crate::space::{NSpace, Vector};

/// How to handle coefficient vectors with components in the anchor span.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Policy {
    /// Reject coefficient vectors with a nonzero anchor component: such a
    /// functional would be unbounded against the anchored seminorm.
    #[default]
    Strict,
    /// Replace the coefficients by their projection onto `U`.
    Project,
}

/// A bounded b-linear functional, stored as its coefficient vector in `U`.
#[derive(Debug, Clone)]
pub struct BFunctional<S> {
    space: Arc<NSpace<S>>,
    coeffs: Vector<S>,
}

impl<S: Scalar> BFunctional<S> {
    /// Builds a functional from ambient coefficients under the given policy.
    pub fn new(space: Arc<NSpace<S>>, t: Vector<S>, policy: Policy) -> Result<Self> {
        if t.len() != space.dimension() {
            return Err(Error::DimensionMismatch {
                expected: space.dimension(),
                got: t.len(),
            });
        }
        if t.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteInput);
        }
        if policy == Policy::Strict {
            let t_norm = linalg::norm2(&t);
            for a in space.anchors().anchors() {
                let ip = linalg::dot(&t, a).abs();
                let scale = t_norm * linalg::norm2(a);
                if ip > S::strict_rel_tol() * scale {
                    return Err(Error::UnboundedFunctional {
                        component: (ip / (scale + S::min_positive_value()))
                            .to_f64()
                            .unwrap_or(f64::NAN),
                    });
                }
            }
        }
        // Both policies store the projected coefficients so that
        // evaluations depend on x only through P_U x.
        let coeffs = space.project_complement(&t)?;
        Ok(Self { space, coeffs })
    }

    /// Functional with the given complement coordinates (internal fast path).
    pub(crate) fn from_reduced(space: Arc<NSpace<S>>, reduced: &[S]) -> Result<Self> {
        let coeffs = space.lift(reduced)?;
        Ok(Self { space, coeffs })
    }

    pub fn zero(space: Arc<NSpace<S>>) -> Self {
        let coeffs = vec![S::zero(); space.dimension()];
        Self { space, coeffs }
    }

    pub fn space(&self) -> &Arc<NSpace<S>> {
        &self.space
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Complement coordinates of the coefficient vector.
    pub fn reduced(&self) -> Vec<S> {
        self.space.reduce(&self.coeffs).expect("coeffs have the space dimension")
    }

    /// `T(x, a_2, ..., a_n) = <t, x>`.
    pub fn evaluate(&self, x: &[S]) -> Result<S> {
        if x.len() != self.space.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.space.dimension(),
                got: x.len(),
            });
        }
        Ok(linalg::dot(&self.coeffs, x))
    }

    /// Exact operator norm `|t| / V`: the supremum of `|T(x, ...)|` over
    /// unit anchored seminorm.
    pub fn norm(&self) -> S {
        linalg::norm2(&self.coeffs) / self.space.volume()
    }

    pub fn is_zero(&self) -> bool {
        linalg::norm2(&self.coeffs) == S::zero()
    }

    pub fn scaled(&self, factor: S) -> Self {
        Self { space: self.space.clone(), coeffs: linalg::scale(&self.coeffs, factor) }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if !self.space.compatible(&other.space) {
            return Err(Error::IncompatibleFamilies("functionals live on different spaces".into()));
        }
        Ok(Self { space: self.space.clone(), coeffs: linalg::add(&self.coeffs, &other.coeffs) })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scaled(-S::one()))
    }
}

/// Optimizer estimates of the three equivalent operator-norm formulas:
/// supremum over the unit seminorm ball, over the unit seminorm sphere,
/// and of the value/seminorm ratio. All must agree with the closed form.
#[derive(Debug, Clone)]
pub struct NormEstimates<S> {
    pub ball: S,
    pub sphere: S,
    pub ratio: S,
}

pub fn functional_norm_estimates<S: Scalar>(
    t: &BFunctional<S>,
    cfg: &OptimizerConfig<S>,
) -> Result<NormEstimates<S>> {
    let space = t.space().clone();
    let volume = space.volume();
    let tau = t.reduced();
    let k = tau.len();

    // Ball formula: the unit seminorm ball in U parameterized by the first
    // k coordinates of a unit (k+1)-vector, so the domain is exactly
    // the ball and the maximum can sit anywhere on it.
    let tau_ball = tau.clone();
    let ball_obj = FnObjective(move |w: &[S]| {
        linalg::dot(&tau_ball, &w[..k]).abs() / volume
    });
    let ball = sphere_extremum(&ball_obj, k + 1, Mode::Max, cfg)?.value;

    // Sphere formula: unit seminorm slice, folded to the unit Euclidean
    // sphere of the complement.
    let tau_sphere = tau.clone();
    let sphere_obj = FnObjective(move |z: &[S]| linalg::dot(&tau_sphere, z).abs() / volume);
    let sphere = sphere_extremum(&sphere_obj, k, Mode::Max, cfg)?.value;

    // Ratio formula over the ambient sphere, kernel directions guarded.
    let coeffs = t.coeffs().to_vec();
    let ratio_space = space.clone();
    let ratio_obj = FnObjective(move |y: &[S]| {
        let s = ratio_space.anchored_seminorm(y).expect("dimension checked");
        if s <= S::min_positive_value() {
            return S::zero();
        }
        linalg::dot(&coeffs, y).abs() / s
    });
    let ratio = sphere_extremum(&ratio_obj, space.dimension(), Mode::Max, cfg)?.value;

    Ok(NormEstimates { ball, sphere, ratio })
}

/// Checks the dual identity `||x, a_2, ..., a_n|| = sup |T(x,...)| / |T|`
/// by sampling nonzero functionals and adding the analytic maximizer
/// `t = P_U x`. Returns `(lhs, rhs)`.
pub fn dual_norm_identity_check<S: Scalar, R: Rng>(
    space: &Arc<NSpace<S>>,
    x: &[S],
    samples: usize,
    rng: &mut R,
) -> Result<(S, S)> {
    let lhs = space.anchored_seminorm(x)?;
    if space.in_kernel(x)? {
        return Err(Error::DegenerateSeminorm);
    }
    let k = space.complement_dim();
    let volume = space.volume();
    let mut rhs = S::zero();
    for _ in 0..samples {
        let mut z: Vec<S> = (0..k).map(|_| real::<S>(rng.gen_range(-1.0..1.0))).collect();
        if linalg::normalize(&mut z) == S::zero() {
            continue;
        }
        let t = space.lift(&z)?;
        // |T(x)| / |T| with |T| = |t|/V and |t| = 1 after normalization.
        let value = linalg::dot(&t, x).abs() * volume;
        if value > rhs {
            rhs = value;
        }
    }
    // The supremum is attained in the direction of P_U x.
    let proj = space.project_complement(x)?;
    let pn = linalg::norm2(&proj);
    if pn > S::zero() {
        let attained = linalg::dot(&proj, x).abs() * volume / pn;
        if attained > rhs {
            rhs = attained;
        }
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn space_e1() -> Arc<NSpace<f64>> {
        Arc::new(NSpace::new(3, vec![vec![1.0, 0.0, 0.0]]).unwrap())
    }

    #[test]
    fn construction_policies() {
        let s = space_e1();
        // Already orthogonal to the anchor: accepted.
        assert!(BFunctional::new(s.clone(), vec![0.0, 0.0, 5.0], Policy::Strict).is_ok());
        // Parallel to the anchor: rejected under strict.
        assert!(matches!(
            BFunctional::new(s.clone(), vec![1.0, 0.0, 0.0], Policy::Strict),
            Err(Error::UnboundedFunctional { .. })
        ));
        // Projection policy strips the anchor component.
        let t = BFunctional::new(s, vec![1.0, 0.0, 5.0], Policy::Project).unwrap();
        assert_relative_eq!(t.coeffs()[0], 0.0, epsilon = 1e-13);
        assert_relative_eq!(t.coeffs()[2], 5.0, epsilon = 1e-13);
    }

    #[test]
    fn evaluation() {
        let s = space_e1();
        let t = BFunctional::new(s, vec![0.0, 0.0, 5.0], Policy::Strict).unwrap();
        assert_relative_eq!(t.evaluate(&[1.0, 1.0, 2.0]).unwrap(), 10.0, max_relative = 1e-14);
        assert_relative_eq!(t.evaluate(&[0.0, 0.0, 0.0]).unwrap(), 0.0);
        assert!(t.evaluate(&[1.0, 2.0]).is_err());
    }

    #[test]
    fn closed_form_norm() {
        let s = space_e1();
        let t = BFunctional::new(s, vec![0.0, 0.0, 5.0], Policy::Strict).unwrap();
        assert_relative_eq!(t.norm(), 5.0, max_relative = 1e-14);
        // Doubled anchor doubles the volume and halves the norm.
        let s2 = Arc::new(NSpace::new(3, vec![vec![2.0, 0.0, 0.0]]).unwrap());
        let t2 = BFunctional::new(s2.clone(), vec![0.0, 0.0, 5.0], Policy::Strict).unwrap();
        assert_relative_eq!(t2.norm(), 2.5, max_relative = 1e-14);
        let z = BFunctional::zero(s2);
        assert_relative_eq!(z.norm(), 0.0);
    }

    #[test]
    fn anchors_annihilated() {
        let s = Arc::new(NSpace::new(4, vec![vec![1.0, 2.0, 0.0, 0.0], vec![0.0, 0.0, 1.0, 1.0]]).unwrap());
        let t = BFunctional::new(s.clone(), vec![0.3, 1.0, -2.0, 0.7], Policy::Project).unwrap();
        let tn = linalg::norm2(t.coeffs());
        for a in s.anchors().anchors() {
            let v: f64 = t.evaluate(a).unwrap();
            assert!(v.abs() <= 1e-10 * tn * linalg::norm2(a));
        }
    }

    #[test]
    fn dual_identity_examples() {
        let s = Arc::new(NSpace::new(3, vec![vec![0.0, 0.0, 1.0]]).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (lhs, rhs) = dual_norm_identity_check(&s, &[3.0, 4.0, 0.0], 64, &mut rng).unwrap();
        assert_relative_eq!(lhs, 5.0, max_relative = 1e-12);
        assert_relative_eq!(rhs, 5.0, max_relative = 1e-9);
        // Kernel input degenerates.
        assert!(matches!(
            dual_norm_identity_check(&s, &[0.0, 0.0, 1.0], 8, &mut rng),
            Err(Error::DegenerateSeminorm)
        ));
    }

    #[test]
    fn norm_formula_estimates_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for trial in 0..20 {
            let d = 3 + trial % 3;
            let anchor: Vec<f64> = (0..d).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let space = match NSpace::new(d, vec![anchor]) {
                Ok(s) => Arc::new(s),
                Err(_) => continue,
            };
            let t_raw: Vec<f64> = (0..d).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let t = BFunctional::new(space, t_raw, Policy::Project).unwrap();
            if t.norm() < 1e-6 {
                continue;
            }
            let cfg = OptimizerConfig::with_seed(900 + trial as u64);
            let est = functional_norm_estimates(&t, &cfg).unwrap();
            let exact = t.norm();
            assert_relative_eq!(est.ball, exact, max_relative = 1e-6);
            assert_relative_eq!(est.sphere, exact, max_relative = 1e-6);
            assert_relative_eq!(est.ratio, exact, max_relative = 1e-6);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        // |T(x)| <= |T| * ||x, a_2, ..., a_n|| + 1e-9.
        #[test]
        fn boundedness_certificate(
            t_raw in proptest::collection::vec(-5.0..5.0f64, 4),
            x in proptest::collection::vec(-5.0..5.0f64, 4),
        ) {
            let s = Arc::new(NSpace::new(4, vec![vec![1.0, 0.0, 1.0, 0.0], vec![0.0, 1.0, 0.0, -1.0]]).unwrap());
            let t = BFunctional::new(s.clone(), t_raw, Policy::Project).unwrap();
            let lhs = t.evaluate(&x).unwrap().abs();
            let rhs = t.norm() * s.anchored_seminorm(&x).unwrap();
            prop_assert!(lhs <= rhs + 1e-9);
        }

        // Additivity in the first slot.
        #[test]
        fn additivity(
            t_raw in proptest::collection::vec(-5.0..5.0f64, 3),
            x in proptest::collection::vec(-5.0..5.0f64, 3),
            y in proptest::collection::vec(-5.0..5.0f64, 3),
        ) {
            let s = space_e1();
            let t = BFunctional::new(s, t_raw, Policy::Project).unwrap();
            let xy = linalg::add(&x, &y);
            let lhs = t.evaluate(&xy).unwrap();
            let rhs = t.evaluate(&x).unwrap() + t.evaluate(&y).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + lhs.abs()));
        }

        // Individual dual-identity samples never exceed the seminorm.
        #[test]
        fn dual_samples_below_lhs(x in proptest::collection::vec(-5.0..5.0f64, 3), seed in 0u64..1000) {
            let s = Arc::new(NSpace::new(3, vec![vec![0.0, 0.0, 1.0]]).unwrap());
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            match dual_norm_identity_check(&s, &x, 32, &mut rng) {
                Ok((lhs, rhs)) => prop_assert!(rhs <= lhs + 1e-9),
                Err(Error::DegenerateSeminorm) => {}
                Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
            }
        }
    }
}
