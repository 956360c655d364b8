//! p-frame families of bounded b-linear functionals: frame sums, optimal
//! bound computation, Parseval rescaling, q-duals via the pseudo-inverse,
//! analysis/synthesis operators and Cartesian products.
//!
//! Optimal bounds are the extremes of the frame sum over the unit sphere
//! of the complement subspace `U` with the anchor volume folded in; the
//! seminorm kernel would make ambient-sphere optimization ill-posed. The
//! exponent two gets an exact symmetric eigendecomposition, every other
//! exponent goes through the sphere optimizer (grid-certified when the
//! complement dimension is at most three).

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::functional::BFunctional;
use crate::linalg::{self, Matrix};
use crate::optimizer::{
    lp_operator_norm, sphere_extremum_seeded, Mode, OptimizerConfig, OutputNorm, SphereObjective,
};
use crate::scalar::{real, Scalar};
use crate::space::{NSpace, Vector};

/// How a pair of frame bounds was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundsMethod {
    /// Exact symmetric eigendecomposition (p = 2).
    Spectral,
    /// Multi-start sphere optimizer.
    Optimizer,
    /// Sphere optimizer cross-checked by the angular grid.
    Grid,
}

/// Optimal lower/upper frame bounds with certifying unit vectors.
#[derive(Debug, Clone, Serialize)]
#[serde(bound(serialize = "S: Serialize"))]
pub struct FrameBounds<S> {
    pub lower: S,
    pub upper: S,
    /// Unit vector (in `U`, ambient coordinates) attaining the lower bound.
    pub arg_lower: Vec<S>,
    pub arg_upper: Vec<S>,
    pub method: BoundsMethod,
}

impl<S: Scalar> FrameBounds<S> {
    /// Scale-free frame verdict: the lower bound must clear a relative
    /// threshold against the upper bound, so numerically-zero lower
    /// bounds never count as frames.
    pub fn is_frame(&self) -> bool {
        self.lower > S::frame_rel_threshold() * self.upper && self.upper > S::zero()
    }

    pub fn is_tight(&self) -> bool {
        (self.upper - self.lower).abs() <= S::tight_rel_tol() * self.upper.max(self.lower)
    }
}

/// Power-sum objective `scale * sum_i |<row_i, y>|^p` with analytic gradient.
pub(crate) struct PowerSum<'a, S> {
    rows: &'a Matrix<S>,
    p: S,
    scale: S,
}

impl<'a, S: Scalar> PowerSum<'a, S> {
    pub(crate) fn new(rows: &'a Matrix<S>, p: S, scale: S) -> Self {
        Self { rows, p, scale }
    }
}

pub(crate) fn power_sum_value<S: Scalar>(rows: &Matrix<S>, p: S, y: &[S]) -> S {
    let two = real::<S>(2.0);
    let mut acc = S::zero();
    for i in 0..rows.rows() {
        let d = linalg::dot(rows.row(i), y);
        acc = acc + if p == two { d * d } else { d.abs().powf(p) };
    }
    acc
}

pub(crate) fn power_sum_gradient<S: Scalar>(
    rows: &Matrix<S>,
    p: S,
    y: &[S],
    weight: S,
    out: &mut [S],
) {
    let two = real::<S>(2.0);
    for i in 0..rows.rows() {
        let d = linalg::dot(rows.row(i), y);
        let factor = if p == two {
            two * d
        } else if d.abs() > S::min_positive_value() {
            p * d.abs().powf(p - S::one()) * d.signum()
        } else {
            S::zero()
        };
        linalg::axpy(out, weight * factor, rows.row(i));
    }
}

impl<'a, S: Scalar> SphereObjective<S> for PowerSum<'a, S> {
    fn value(&self, y: &[S]) -> S {
        self.scale * power_sum_value(self.rows, self.p, y)
    }

    fn gradient(&self, y: &[S], out: &mut [S]) {
        for v in out.iter_mut() {
            *v = S::zero();
        }
        power_sum_gradient(self.rows, self.p, y, self.scale, out);
    }
}

/// Finite family of bounded b-linear functionals with exponent `p`.
#[derive(Debug, Clone)]
pub struct PFrameFamily<S> {
    space: Arc<NSpace<S>>,
    members: Vec<BFunctional<S>>,
    p: S,
}

impl<S: Scalar> PFrameFamily<S> {
    pub fn new(space: Arc<NSpace<S>>, members: Vec<BFunctional<S>>, p: S) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyFamily);
        }
        if !(p > S::one()) || !p.is_finite() {
            return Err(Error::InvalidExponent { p: p.to_f64().unwrap_or(f64::NAN) });
        }
        for m in &members {
            if !m.space().compatible(&space) {
                return Err(Error::IncompatibleFamilies(
                    "member lives on a different space".into(),
                ));
            }
        }
        Ok(Self { space, members, p })
    }

    pub fn space(&self) -> &Arc<NSpace<S>> {
        &self.space
    }

    pub fn members(&self) -> &[BFunctional<S>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn p(&self) -> S {
        self.p
    }

    /// Conjugate exponent, `1/p + 1/q = 1`.
    pub fn q(&self) -> S {
        self.p / (self.p - S::one())
    }

    /// Member coefficient vectors in complement coordinates, one row per member.
    pub fn reduced_matrix(&self) -> Matrix<S> {
        let rows: Vec<Vec<S>> = self.members.iter().map(|m| m.reduced()).collect();
        Matrix::from_rows(&rows)
    }

    /// `sum_i |T_i(x, a_2, ..., a_n)|^p`.
    pub fn frame_sum(&self, x: &[S]) -> Result<S> {
        let two = real::<S>(2.0);
        let mut acc = S::zero();
        for m in &self.members {
            let v = m.evaluate(x)?;
            acc = acc + if self.p == two { v * v } else { v.abs().powf(self.p) };
        }
        Ok(acc)
    }

    /// Coefficient sequence `{T_i(x, a_2, ..., a_n)}`.
    pub fn analysis_sequence(&self, x: &[S]) -> Result<Vec<S>> {
        self.members.iter().map(|m| m.evaluate(x)).collect()
    }

    /// `sum_i d_i T_i` as a functional; linear in `d`.
    pub fn synthesis_apply(&self, d: &[S]) -> Result<BFunctional<S>> {
        if d.len() != self.members.len() {
            return Err(Error::CardinalityMismatch { left: self.members.len(), right: d.len() });
        }
        let mut acc = BFunctional::zero(self.space.clone());
        for (c, m) in d.iter().zip(&self.members) {
            acc = acc.try_add(&m.scaled(*c))?;
        }
        Ok(acc)
    }

    /// Operator norm of the synthesis map from the l^q coefficient sphere
    /// into the functional norm. Closed form (top singular value over the
    /// volume) for p = q = 2; otherwise estimated by the optimizer.
    pub fn synthesis_norm(&self, cfg: &OptimizerConfig<S>) -> Result<S> {
        // Rows of the reduced matrix are the member coefficients, so the
        // synthesis image of d has reduced coordinates M^T d.
        let mt = self.reduced_matrix().transpose();
        lp_operator_norm(&mt, self.q(), OutputNorm::EuclideanOverVolume(self.space.volume()), cfg)
    }

    /// Optimal frame bounds: extremes of the frame sum over unit vectors
    /// of the complement, with the anchor volume folded in.
    pub fn optimal_bounds(&self, cfg: &OptimizerConfig<S>) -> Result<FrameBounds<S>> {
        let k = self.space.complement_dim();
        if k == 0 {
            return Err(Error::DegenerateSpace);
        }
        let volume = self.space.volume();
        let inv_scale = volume.powf(-self.p);
        let reduced = self.reduced_matrix();
        let two = real::<S>(2.0);
        if self.p == two {
            // Exact spectral path: frame sum restricted to U is the
            // quadratic form of M^T M.
            let gram = reduced.transpose().matmul(&reduced);
            let (vals, vecs) = linalg::sym_eigen(&gram);
            let lo = (vals[0].max(S::zero())) * inv_scale;
            let hi = (vals[k - 1].max(S::zero())) * inv_scale;
            let arg_lower = self.space.lift(&vecs.col(0))?;
            let arg_upper = self.space.lift(&vecs.col(k - 1))?;
            return Ok(FrameBounds {
                lower: lo,
                upper: hi,
                arg_lower,
                arg_upper,
                method: BoundsMethod::Spectral,
            });
        }
        let objective = PowerSum::new(&reduced, self.p, inv_scale);
        let seeds: Vec<Vec<S>> = (0..reduced.rows()).map(|i| reduced.row(i).to_vec()).collect();
        let min_res = sphere_extremum_seeded(&objective, k, Mode::Min, cfg, &seeds)?;
        let max_res = sphere_extremum_seeded(&objective, k, Mode::Max, cfg, &seeds)?;
        let method = if k <= 3 { BoundsMethod::Grid } else { BoundsMethod::Optimizer };
        Ok(FrameBounds {
            lower: min_res.value.max(S::zero()),
            upper: max_res.value,
            arg_lower: self.space.lift(&min_res.argument)?,
            arg_upper: self.space.lift(&max_res.argument)?,
            method,
        })
    }

    pub fn is_p_frame(&self, cfg: &OptimizerConfig<S>) -> Result<bool> {
        Ok(self.optimal_bounds(cfg)?.is_frame())
    }

    /// Finite families are always Bessel; when a claimed bound is given,
    /// checks that the optimal upper bound does not exceed it.
    pub fn is_p_bessel(&self, claimed: Option<S>, cfg: &OptimizerConfig<S>) -> Result<bool> {
        let b = self.optimal_bounds(cfg)?.upper;
        Ok(match claimed {
            Some(c) => b.is_finite() && b <= c * (S::one() + real::<S>(1e-9)),
            None => b.is_finite(),
        })
    }

    /// Rescales a tight frame into a Parseval one (members scaled by
    /// `A^(-1/p)`). Errors unless the frame is tight with positive bounds.
    pub fn parseval_rescale(&self, cfg: &OptimizerConfig<S>) -> Result<Self> {
        let bounds = self.optimal_bounds(cfg)?;
        if !bounds.is_frame() {
            return Err(Error::NotAFrame { lower: bounds.lower.to_f64().unwrap_or(0.0) });
        }
        if !bounds.is_tight() {
            return Err(Error::NotTight {
                lower: bounds.lower.to_f64().unwrap_or(f64::NAN),
                upper: bounds.upper.to_f64().unwrap_or(f64::NAN),
            });
        }
        let factor = bounds.lower.powf(-S::one() / self.p);
        self.scaled(factor)
    }

    /// Memberwise scaling by a fixed factor.
    pub fn scaled(&self, factor: S) -> Result<Self> {
        let members = self.members.iter().map(|m| m.scaled(factor)).collect();
        Self::new(self.space.clone(), members, self.p)
    }

    /// Memberwise sum of two families.
    pub fn sum_families(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let members = self
            .members
            .iter()
            .zip(&other.members)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.space.clone(), members, self.p)
    }

    /// Memberwise linear combination `sum_k coeff_k * family_k`.
    pub fn combine(families: &[&Self], coefficients: &[S]) -> Result<Self> {
        if families.is_empty() || families.len() != coefficients.len() {
            return Err(Error::InvalidSpec(
                "combination needs matching nonempty family/coefficient lists".into(),
            ));
        }
        let first = families[0];
        for f in families.iter().skip(1) {
            first.check_compatible(f)?;
        }
        let m = first.len();
        let mut members = Vec::with_capacity(m);
        for i in 0..m {
            let mut acc = BFunctional::zero(first.space.clone());
            for (f, c) in families.iter().zip(coefficients) {
                acc = acc.try_add(&f.members[i].scaled(*c))?;
            }
            members.push(acc);
        }
        Self::new(first.space.clone(), members, first.p)
    }

    /// Memberwise difference, used by the perturbation checkers.
    pub fn difference(&self, other: &Self) -> Result<Self> {
        Self::combine(&[self, other], &[S::one(), -S::one()])
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if !self.space.compatible(&other.space) {
            return Err(Error::IncompatibleFamilies("different spaces".into()));
        }
        if self.p != other.p {
            return Err(Error::IncompatibleFamilies("different exponents".into()));
        }
        if self.members.len() != other.members.len() {
            return Err(Error::CardinalityMismatch {
                left: self.members.len(),
                right: other.members.len(),
            });
        }
        Ok(())
    }

    /// Canonical dual vectors `f_i` in `U` with `P_U x = sum_i T_i(x,...) f_i`,
    /// through the Moore-Penrose pseudo-inverse of the reduced coefficient
    /// matrix. Requires full column rank, which for a finite family is
    /// exactly the frame property (independent of the exponent).
    pub fn canonical_dual(&self) -> Result<QDualFamily<S>> {
        let reduced = self.reduced_matrix();
        let ratio = linalg::sigma_ratio(&reduced);
        if reduced.rows() < self.space.complement_dim() || ratio < S::rank_rel_tol() {
            return Err(Error::NotAFrame { lower: ratio.to_f64().unwrap_or(0.0) });
        }
        // Duals are the rows of pinv(M)^T, lifted back to ambient coordinates.
        let pinv_t = linalg::pinv(&reduced, S::rank_rel_tol()).transpose();
        let members = (0..pinv_t.rows())
            .map(|i| self.space.lift(pinv_t.row(i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(QDualFamily { space: self.space.clone(), members, q: self.q() })
    }

    /// Synthesizes the analysis sequence of `x` against the dual vectors:
    /// `sum_i T_i(x, ...) P_U f_i`. Equals `P_U x` for a valid dual.
    pub fn reconstruct(&self, dual: &QDualFamily<S>, x: &[S]) -> Result<Vector<S>> {
        if dual.members.len() != self.members.len() {
            return Err(Error::CardinalityMismatch {
                left: self.members.len(),
                right: dual.members.len(),
            });
        }
        let coeffs = self.analysis_sequence(x)?;
        let mut out = vec![S::zero(); self.space.dimension()];
        for (c, f) in coeffs.iter().zip(&dual.members) {
            let pf = self.space.project_complement(f)?;
            linalg::axpy(&mut out, *c, &pf);
        }
        Ok(out)
    }
}

/// Family of vectors in `X` paired with an exponent `q`; the dual-side
/// object a p-frame reconstructs through.
#[derive(Debug, Clone)]
pub struct QDualFamily<S> {
    space: Arc<NSpace<S>>,
    members: Vec<Vector<S>>,
    q: S,
}

impl<S: Scalar> QDualFamily<S> {
    pub fn new(space: Arc<NSpace<S>>, members: Vec<Vector<S>>, q: S) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyFamily);
        }
        for m in &members {
            if m.len() != space.dimension() {
                return Err(Error::DimensionMismatch { expected: space.dimension(), got: m.len() });
            }
        }
        Ok(Self { space, members, q })
    }

    pub fn members(&self) -> &[Vector<S>] {
        &self.members
    }

    pub fn q(&self) -> S {
        self.q
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Extremes of `sum_i |T(f_i, ...)|^q / |T|^q` over nonzero bounded
    /// functionals, parameterized by unit coefficient vectors in `U`
    /// (where `|T| = |t|/V`, so the volume enters with a positive power).
    pub fn q_frame_bounds(&self, cfg: &OptimizerConfig<S>) -> Result<FrameBounds<S>> {
        let k = self.space.complement_dim();
        if k == 0 {
            return Err(Error::DegenerateSpace);
        }
        let volume = self.space.volume();
        let scale = volume.powf(self.q);
        let rows: Vec<Vec<S>> = self
            .members
            .iter()
            .map(|f| self.space.reduce(f))
            .collect::<Result<Vec<_>>>()?;
        let reduced = Matrix::from_rows(&rows);
        let two = real::<S>(2.0);
        if self.q == two {
            let gram = reduced.transpose().matmul(&reduced);
            let (vals, vecs) = linalg::sym_eigen(&gram);
            return Ok(FrameBounds {
                lower: vals[0].max(S::zero()) * scale,
                upper: vals[k - 1].max(S::zero()) * scale,
                arg_lower: self.space.lift(&vecs.col(0))?,
                arg_upper: self.space.lift(&vecs.col(k - 1))?,
                method: BoundsMethod::Spectral,
            });
        }
        let objective = PowerSum::new(&reduced, self.q, scale);
        let seeds: Vec<Vec<S>> = (0..reduced.rows()).map(|i| reduced.row(i).to_vec()).collect();
        let min_res = sphere_extremum_seeded(&objective, k, Mode::Min, cfg, &seeds)?;
        let max_res = sphere_extremum_seeded(&objective, k, Mode::Max, cfg, &seeds)?;
        let method = if k <= 3 { BoundsMethod::Grid } else { BoundsMethod::Optimizer };
        Ok(FrameBounds {
            lower: min_res.value.max(S::zero()),
            upper: max_res.value,
            arg_lower: self.space.lift(&min_res.argument)?,
            arg_upper: self.space.lift(&max_res.argument)?,
            method,
        })
    }
}

/// p-frame over the Cartesian product of two spaces under the
/// p-th-power-additive direct-sum n-norm
/// `|x (+) y, ...|^p = |x, ...|^p_X + |y, ...|^p_Y`
/// with paired anchors `a_j (+) b_j`. The seminorm kernel of the product
/// is span(a) (+) span(b), so the product is represented by its two
/// components rather than by a volume-model space.
#[derive(Debug, Clone)]
pub struct ProductFamily<S> {
    left: PFrameFamily<S>,
    right: PFrameFamily<S>,
}

impl<S: Scalar> ProductFamily<S> {
    pub fn new(left: PFrameFamily<S>, right: PFrameFamily<S>) -> Result<Self> {
        if left.p() != right.p() {
            return Err(Error::IncompatibleFamilies("different exponents".into()));
        }
        if left.space().order() != right.space().order() {
            return Err(Error::IncompatibleFamilies("different orders".into()));
        }
        if left.len() != right.len() {
            return Err(Error::CardinalityMismatch { left: left.len(), right: right.len() });
        }
        Ok(Self { left, right })
    }

    pub fn left(&self) -> &PFrameFamily<S> {
        &self.left
    }

    pub fn right(&self) -> &PFrameFamily<S> {
        &self.right
    }

    pub fn p(&self) -> S {
        self.left.p()
    }

    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.left.space().dimension() + self.right.space().dimension()
    }

    fn split<'a>(&self, xy: &'a [S]) -> Result<(&'a [S], &'a [S])> {
        if xy.len() != self.dimension() {
            return Err(Error::DimensionMismatch { expected: self.dimension(), got: xy.len() });
        }
        Ok(xy.split_at(self.left.space().dimension()))
    }

    /// Concatenated member coefficients `(t_i | u_i)`.
    pub fn member_coefficients(&self, i: usize) -> Vec<S> {
        let mut out = self.left.members()[i].coeffs().to_vec();
        out.extend_from_slice(self.right.members()[i].coeffs());
        out
    }

    /// Paired anchors of the product space.
    pub fn anchors(&self) -> Vec<Vec<S>> {
        self.left
            .space()
            .anchors()
            .anchors()
            .iter()
            .zip(self.right.space().anchors().anchors())
            .map(|(a, b)| {
                let mut v = a.clone();
                v.extend_from_slice(b);
                v
            })
            .collect()
    }

    /// p-th power of the product seminorm of `x (+) y`.
    pub fn seminorm_p(&self, xy: &[S]) -> Result<S> {
        let (x, y) = self.split(xy)?;
        let sx = self.left.space().anchored_seminorm(x)?;
        let sy = self.right.space().anchored_seminorm(y)?;
        Ok(sx.powf(self.p()) + sy.powf(self.p()))
    }

    /// Frame sum of the product member pairs: each member contributes
    /// `|T_i(x,...)|^p + |U_i(y,...)|^p`.
    pub fn frame_sum(&self, xy: &[S]) -> Result<S> {
        let (x, y) = self.split(xy)?;
        Ok(self.left.frame_sum(x)? + self.right.frame_sum(y)?)
    }

    /// Optimal bounds of the product family over the joint complement.
    /// For p = 2 the generalized Rayleigh quotient diagonalizes exactly;
    /// otherwise the 0-homogeneous frame-sum/seminorm ratio is extremized
    /// over the joint unit sphere.
    pub fn optimal_bounds(&self, cfg: &OptimizerConfig<S>) -> Result<FrameBounds<S>> {
        let k_l = self.left.space().complement_dim();
        let k_r = self.right.space().complement_dim();
        let v_l = self.left.space().volume();
        let v_r = self.right.space().volume();
        let red_l = self.left.reduced_matrix();
        let red_r = self.right.reduced_matrix();
        let p = self.p();
        let two = real::<S>(2.0);
        if p == two {
            // Substituting block-scaled coordinates turns the ratio into a
            // plain Rayleigh quotient of a block-diagonal matrix.
            let k = k_l + k_r;
            let mut blk = Matrix::zeros(k, k);
            let gram_l = red_l.transpose().matmul(&red_l);
            let gram_r = red_r.transpose().matmul(&red_r);
            for i in 0..k_l {
                for j in 0..k_l {
                    blk[(i, j)] = gram_l[(i, j)] / (v_l * v_l);
                }
            }
            for i in 0..k_r {
                for j in 0..k_r {
                    blk[(k_l + i, k_l + j)] = gram_r[(i, j)] / (v_r * v_r);
                }
            }
            let (vals, vecs) = linalg::sym_eigen(&blk);
            let unscale = |w: &[S]| -> Result<Vec<S>> {
                let mut y_l: Vec<S> = w[..k_l].iter().map(|v| *v / v_l).collect();
                let mut y_r: Vec<S> = w[k_l..].iter().map(|v| *v / v_r).collect();
                let n = (linalg::dot(&y_l, &y_l) + linalg::dot(&y_r, &y_r)).sqrt();
                for v in y_l.iter_mut().chain(y_r.iter_mut()) {
                    *v = *v / n;
                }
                let mut out = self.left.space().lift(&y_l)?;
                out.extend(self.right.space().lift(&y_r)?);
                Ok(out)
            };
            return Ok(FrameBounds {
                lower: vals[0].max(S::zero()),
                upper: vals[k - 1].max(S::zero()),
                arg_lower: unscale(&vecs.col(0))?,
                arg_upper: unscale(&vecs.col(k - 1))?,
                method: BoundsMethod::Spectral,
            });
        }
        let objective = ProductRatio {
            left: &red_l,
            right: &red_r,
            p,
            vol_p_left: v_l.powf(p),
            vol_p_right: v_r.powf(p),
        };
        let k = k_l + k_r;
        // Seed with pure-component directions: extremes are attained there.
        let mut seeds: Vec<Vec<S>> = Vec::new();
        for i in 0..red_l.rows() {
            let mut s = red_l.row(i).to_vec();
            s.extend(vec![S::zero(); k_r]);
            seeds.push(s);
        }
        for i in 0..red_r.rows() {
            let mut s = vec![S::zero(); k_l];
            s.extend_from_slice(red_r.row(i));
            seeds.push(s);
        }
        let min_res = sphere_extremum_seeded(&objective, k, Mode::Min, cfg, &seeds)?;
        let max_res = sphere_extremum_seeded(&objective, k, Mode::Max, cfg, &seeds)?;
        let lift_joint = |y: &[S]| -> Result<Vec<S>> {
            let mut out = self.left.space().lift(&y[..k_l])?;
            out.extend(self.right.space().lift(&y[k_l..])?);
            Ok(out)
        };
        let method = if k <= 3 { BoundsMethod::Grid } else { BoundsMethod::Optimizer };
        Ok(FrameBounds {
            lower: min_res.value.max(S::zero()),
            upper: max_res.value,
            arg_lower: lift_joint(&min_res.argument)?,
            arg_upper: lift_joint(&max_res.argument)?,
            method,
        })
    }
}

/// Builds the Cartesian product family of two p-frames.
pub fn cartesian_product<S: Scalar>(
    left: &PFrameFamily<S>,
    right: &PFrameFamily<S>,
) -> Result<ProductFamily<S>> {
    ProductFamily::new(left.clone(), right.clone())
}

/// Ratio of the joint frame sum to the direct-sum seminorm power,
/// 0-homogeneous in the joint coordinates.
struct ProductRatio<'a, S> {
    left: &'a Matrix<S>,
    right: &'a Matrix<S>,
    p: S,
    vol_p_left: S,
    vol_p_right: S,
}

impl<'a, S: Scalar> ProductRatio<'a, S> {
    fn split<'b>(&self, y: &'b [S]) -> (&'b [S], &'b [S]) {
        y.split_at(self.left.cols())
    }
}

impl<'a, S: Scalar> SphereObjective<S> for ProductRatio<'a, S> {
    fn value(&self, y: &[S]) -> S {
        let (yl, yr) = self.split(y);
        let num = power_sum_value(self.left, self.p, yl) + power_sum_value(self.right, self.p, yr);
        let den = self.vol_p_left * linalg::norm2(yl).powf(self.p)
            + self.vol_p_right * linalg::norm2(yr).powf(self.p);
        num / den
    }

    fn gradient(&self, y: &[S], out: &mut [S]) {
        let (yl, yr) = self.split(y);
        let k_l = yl.len();
        let num =
            power_sum_value(self.left, self.p, yl) + power_sum_value(self.right, self.p, yr);
        let nl = linalg::norm2(yl);
        let nr = linalg::norm2(yr);
        let den = self.vol_p_left * nl.powf(self.p) + self.vol_p_right * nr.powf(self.p);
        let mut dnum = vec![S::zero(); y.len()];
        power_sum_gradient(self.left, self.p, yl, S::one(), &mut dnum[..k_l]);
        power_sum_gradient(self.right, self.p, yr, S::one(), &mut dnum[k_l..]);
        let mut dden = vec![S::zero(); y.len()];
        if nl > S::min_positive_value() {
            let f = self.vol_p_left * self.p * nl.powf(self.p - real::<S>(2.0));
            for i in 0..k_l {
                dden[i] = f * yl[i];
            }
        }
        if nr > S::min_positive_value() {
            let f = self.vol_p_right * self.p * nr.powf(self.p - real::<S>(2.0));
            for i in 0..yr.len() {
                dden[k_l + i] = f * yr[i];
            }
        }
        for i in 0..y.len() {
            out[i] = (dnum[i] * den - num * dden[i]) / (den * den);
        }
    }
}
