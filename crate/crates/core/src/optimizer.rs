//! Deterministic extremum engine over unit spheres.
//!
//! Finds the min/max of a scalar field on the Euclidean unit sphere by
//! multi-start projected gradient ascent with backtracking, followed by a
//! safeguarded Newton polish in tangent coordinates. For intrinsic
//! dimension at most three an angular grid (coarse-to-fine, final
//! resolution `grid_resolution`) runs as an independent cross-check and
//! its best point seeds the refinement, so the refined extremum can never
//! fall behind the grid. Everything is deterministic for a fixed seed.

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::{real, Scalar};

/// Objective on unit vectors. Arguments passed to `value` are always
/// normalized by the driver, so implementations may assume `|y| = 1`.
pub trait SphereObjective<S: Scalar> {
    fn value(&self, y: &[S]) -> S;

    /// Gradient in ambient coordinates; the driver projects onto the
    /// tangent space. Default is central finite differences.
    fn gradient(&self, y: &[S], out: &mut [S]) {
        let h = S::epsilon().powf(real::<S>(1.0 / 3.0));
        let mut probe = y.to_vec();
        for i in 0..y.len() {
            let base = probe[i];
            probe[i] = base + h;
            let fp = eval_normalized(self, &mut probe.clone());
            probe[i] = base - h;
            let fm = eval_normalized(self, &mut probe.clone());
            probe[i] = base;
            out[i] = (fp - fm) / (real::<S>(2.0) * h);
        }
    }
}

/// Wraps a plain closure as an objective (finite-difference gradients).
pub struct FnObjective<F>(pub F);

impl<S: Scalar, F: Fn(&[S]) -> S> SphereObjective<S> for FnObjective<F> {
    fn value(&self, y: &[S]) -> S {
        (self.0)(y)
    }
}

fn eval_normalized<S: Scalar, O: SphereObjective<S> + ?Sized>(obj: &O, y: &mut [S]) -> S {
    linalg::normalize(y);
    obj.value(y)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Min,
    Max,
}

#[derive(Debug, Clone)]
pub struct OptimizerConfig<S> {
    /// Number of refinement starts (axis starts plus quasi-random
    /// antipodal pairs).
    pub starts: usize,
    pub max_iters: usize,
    /// Backtracking shrink factor in (0, 1).
    pub step_shrink: S,
    /// Projected-gradient norm tolerance.
    pub tol: S,
    pub seed: u64,
    /// Final angular resolution of the grid cross-check (dims <= 3).
    pub grid_resolution: S,
}

impl<S: Scalar> Default for OptimizerConfig<S> {
    fn default() -> Self {
        Self {
            starts: 32,
            max_iters: 500,
            step_shrink: real(0.5),
            tol: S::opt_grad_tol(),
            seed: 0,
            grid_resolution: S::grid_resolution(),
        }
    }
}

impl<S: Scalar> OptimizerConfig<S> {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }
}

#[derive(Debug, Clone)]
pub struct ExtremumResult<S> {
    pub value: S,
    /// Unit vector achieving `value`.
    pub argument: Vec<S>,
    /// Gap between the refined extremum and the grid estimate, when the
    /// grid ran; nonnegative because the grid argmax seeds refinement.
    pub certified_margin: Option<S>,
    pub iterations_used: usize,
}

/// splitmix64, used to derive per-coordinate offsets from the seed.
fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

const SQRT_PRIMES: [f64; 16] = [
    2.0, 3.0, 5.0, 7.0, 11.0, 13.0, 17.0, 19.0, 23.0, 29.0, 31.0, 37.0, 41.0, 43.0, 47.0, 53.0,
];

/// j-th point of a Kronecker low-discrepancy sequence in [0,1), coordinate c,
/// phase-shifted by the seed.
fn kronecker(seed: u64, j: usize, c: usize) -> f64 {
    let alpha = SQRT_PRIMES[c % SQRT_PRIMES.len()].sqrt().fract();
    let offset = (splitmix64(seed ^ (c as u64).wrapping_mul(0x9e37)) as f64)
        / (u64::MAX as f64 + 1.0);
    ((j + 1) as f64 * alpha + offset).fract()
}

/// Quasi-random unit direction via Box-Muller over the Kronecker sequence.
fn quasi_normal_direction<S: Scalar>(seed: u64, j: usize, dim: usize) -> Vec<S> {
    let mut out = Vec::with_capacity(dim);
    let mut c = 0;
    while out.len() < dim {
        let u1 = kronecker(seed, j, c).max(1e-12);
        let u2 = kronecker(seed, j, c + 1);
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, co) = (2.0 * std::f64::consts::PI * u2).sin_cos();
        out.push(real::<S>(r * co));
        if out.len() < dim {
            out.push(real::<S>(r * s));
        }
        c += 2;
    }
    if linalg::normalize(&mut out) == S::zero() {
        out[0] = S::one();
    }
    out
}

struct Driver<'a, S: Scalar, O: SphereObjective<S> + ?Sized> {
    obj: &'a O,
    /// +1 for Max, -1 for Min; the driver always ascends `sign * f`.
    sign: S,
}

impl<'a, S: Scalar, O: SphereObjective<S> + ?Sized> Driver<'a, S, O> {
    fn val(&self, y: &[S]) -> Result<S> {
        let v = self.obj.value(y);
        if !v.is_finite() {
            return Err(Error::NonFiniteObjective {
                point: y.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect(),
            });
        }
        Ok(self.sign * v)
    }

    fn val_normalized(&self, y: &[S]) -> Result<S> {
        let mut z = y.to_vec();
        if linalg::normalize(&mut z) == S::zero() {
            return Err(Error::InvalidSpec("zero vector reached the sphere objective".into()));
        }
        self.val(&z)
    }

    fn grad(&self, y: &[S]) -> Vec<S> {
        let mut g = vec![S::zero(); y.len()];
        self.obj.gradient(y, &mut g);
        if self.sign < S::zero() {
            for v in g.iter_mut() {
                *v = -*v;
            }
        }
        g
    }

    /// Projected gradient ascent with backtracking line search.
    fn ascend(&self, start: &[S], cfg: &OptimizerConfig<S>) -> Result<(Vec<S>, S, usize)> {
        let mut y = start.to_vec();
        linalg::normalize(&mut y);
        let mut f = self.val(&y)?;
        let mut step = real::<S>(0.5);
        let mut iters = 0;
        for _ in 0..cfg.max_iters {
            iters += 1;
            let g = self.grad(&y);
            let mut gt = g.clone();
            let radial = linalg::dot(&g, &y);
            linalg::axpy(&mut gt, -radial, &y);
            let gn = linalg::norm2(&gt);
            if !gn.is_finite() {
                break;
            }
            if gn <= cfg.tol * (S::one() + f.abs()) {
                break;
            }
            let mut s = step;
            let mut accepted = false;
            for _ in 0..48 {
                let mut cand = y.clone();
                linalg::axpy(&mut cand, s / gn.max(S::min_positive_value()), &gt);
                if linalg::normalize(&mut cand) == S::zero() {
                    s = s * cfg.step_shrink;
                    continue;
                }
                let fc = self.val(&cand)?;
                if fc > f {
                    y = cand;
                    f = fc;
                    accepted = true;
                    break;
                }
                s = s * cfg.step_shrink;
            }
            if !accepted {
                break;
            }
            step = (s + s).min(real::<S>(4.0));
        }
        Ok((y, f, iters))
    }

    /// Safeguarded Newton refinement in tangent coordinates with
    /// finite-difference Hessian. Only improving steps are accepted.
    fn polish(&self, y0: &[S], f0: S) -> Result<(Vec<S>, S, usize)> {
        let dim = y0.len();
        if dim < 2 {
            return Ok((y0.to_vec(), f0, 0));
        }
        let k = dim - 1;
        let h = S::epsilon().powf(real::<S>(1.0 / 3.0));
        let mut y = y0.to_vec();
        let mut f = f0;
        let mut evals = 0;
        for _round in 0..12 {
            let tangent = linalg::complete_orthonormal_basis(&[y.clone()], dim);
            let phi = |z: &[S]| -> Result<S> {
                let mut p = y.clone();
                for (c, t) in z.iter().zip(&tangent) {
                    linalg::axpy(&mut p, *c, t);
                }
                self.val_normalized(&p)
            };
            let mut grad = vec![S::zero(); k];
            let mut hess = Matrix::zeros(k, k);
            let mut z = vec![S::zero(); k];
            for i in 0..k {
                z[i] = h;
                let fp = phi(&z)?;
                z[i] = -h;
                let fm = phi(&z)?;
                z[i] = S::zero();
                evals += 2;
                grad[i] = (fp - fm) / (real::<S>(2.0) * h);
                hess[(i, i)] = (fp - real::<S>(2.0) * f + fm) / (h * h);
            }
            for i in 0..k {
                for j in i + 1..k {
                    z[i] = h;
                    z[j] = h;
                    let fpp = phi(&z)?;
                    z[j] = -h;
                    let fpm = phi(&z)?;
                    z[i] = -h;
                    let fmm = phi(&z)?;
                    z[j] = h;
                    let fmp = phi(&z)?;
                    z[i] = S::zero();
                    z[j] = S::zero();
                    evals += 4;
                    let v = (fpp - fpm - fmp + fmm) / (real::<S>(4.0) * h * h);
                    hess[(i, j)] = v;
                    hess[(j, i)] = v;
                }
            }
            let gn = linalg::norm2(&grad);
            if gn <= S::epsilon() * (S::one() + f.abs()) {
                break;
            }
            // Newton step: solve H d = -g; fall back to gradient if singular.
            let neg_g: Vec<S> = grad.iter().map(|v| -*v).collect();
            let mut delta = match solve_dense(&hess, &neg_g) {
                Some(d) => d,
                None => linalg::scale(&grad, real::<S>(0.1) / gn),
            };
            let dn = linalg::norm2(&delta);
            if !dn.is_finite() || dn == S::zero() {
                break;
            }
            if dn > real::<S>(0.5) {
                delta = linalg::scale(&delta, real::<S>(0.5) / dn);
            }
            let mut improved = false;
            let mut scale_try = S::one();
            for _ in 0..6 {
                let zt: Vec<S> = delta.iter().map(|v| *v * scale_try).collect();
                let ft = phi(&zt)?;
                evals += 1;
                if ft > f {
                    let mut p = y.clone();
                    for (c, t) in zt.iter().zip(&tangent) {
                        linalg::axpy(&mut p, *c, t);
                    }
                    linalg::normalize(&mut p);
                    y = p;
                    f = ft;
                    improved = true;
                    break;
                }
                scale_try = scale_try * real::<S>(0.5);
            }
            if !improved {
                break;
            }
        }
        Ok((y, f, evals))
    }
}

fn solve_dense<S: Scalar>(a: &Matrix<S>, b: &[S]) -> Option<Vec<S>> {
    let n = a.rows();
    if n != a.cols() || b.len() != n {
        return None;
    }
    let mut m = a.clone();
    let mut rhs = b.to_vec();
    for k in 0..n {
        let mut piv = k;
        let mut best = m[(k, k)].abs();
        for i in k + 1..n {
            if m[(i, k)].abs() > best {
                best = m[(i, k)].abs();
                piv = i;
            }
        }
        if !(best > S::epsilon() * real::<S>(16.0)) {
            return None;
        }
        if piv != k {
            for j in 0..n {
                let tmp = m[(k, j)];
                m[(k, j)] = m[(piv, j)];
                m[(piv, j)] = tmp;
            }
            rhs.swap(k, piv);
        }
        for i in k + 1..n {
            let f = m[(i, k)] / m[(k, k)];
            for j in k..n {
                m[(i, j)] = m[(i, j)] - f * m[(k, j)];
            }
            rhs[i] = rhs[i] - f * rhs[k];
        }
    }
    let mut x = vec![S::zero(); n];
    for i in (0..n).rev() {
        let mut acc = rhs[i];
        for j in i + 1..n {
            acc = acc - m[(i, j)] * x[j];
        }
        x[i] = acc / m[(i, i)];
        if !x[i].is_finite() {
            return None;
        }
    }
    Some(x)
}

fn lat_long_point<S: Scalar>(theta: f64, phi: f64) -> Vec<S> {
    vec![
        real::<S>(theta.sin() * phi.cos()),
        real::<S>(theta.sin() * phi.sin()),
        real::<S>(theta.cos()),
    ]
}

/// Best value over an angular grid; dims 2 and 3 only. The dim-3 grid is
/// coarse-to-fine, terminating at the configured final resolution.
fn grid_search<S: Scalar, O: SphereObjective<S> + ?Sized>(
    driver: &Driver<'_, S, O>,
    dim: usize,
    resolution: S,
) -> Result<Option<(Vec<S>, S)>> {
    let res = resolution.to_f64().unwrap_or(1e-3).max(1e-6);
    match dim {
        2 => {
            let steps = (2.0 * std::f64::consts::PI / res).ceil() as usize;
            let mut best: Option<(Vec<S>, S)> = None;
            for j in 0..steps {
                let theta = j as f64 * res;
                let y = vec![real::<S>(theta.cos()), real::<S>(theta.sin())];
                let v = driver.val(&y)?;
                if best.as_ref().map_or(true, |(_, bv)| v > *bv) {
                    best = Some((y, v));
                }
            }
            Ok(best)
        }
        3 => {
            let coarse = res.max(0.04);
            let mut best: Option<(f64, f64, S)> = None;
            let nt = (std::f64::consts::PI / coarse).ceil() as usize + 1;
            let np = (2.0 * std::f64::consts::PI / coarse).ceil() as usize;
            for it in 0..=nt {
                let theta = std::f64::consts::PI * it as f64 / nt as f64;
                for ip in 0..np {
                    let phi = 2.0 * std::f64::consts::PI * ip as f64 / np as f64;
                    let y = lat_long_point::<S>(theta, phi);
                    let v = driver.val(&y)?;
                    if best.as_ref().map_or(true, |(_, _, bv)| v > *bv) {
                        best = Some((theta, phi, v));
                    }
                }
            }
            let (mut bt, mut bp, mut bv) = best.expect("nonempty grid");
            let mut r = coarse;
            while r > res {
                let r_new = (r / 8.0).max(res);
                let window = 2.0 * r;
                let steps = (2.0 * window / r_new).ceil() as usize;
                for it in 0..=steps {
                    let theta = (bt - window + 2.0 * window * it as f64 / steps as f64)
                        .clamp(0.0, std::f64::consts::PI);
                    for ip in 0..=steps {
                        let phi = bp - window + 2.0 * window * ip as f64 / steps as f64;
                        let y = lat_long_point::<S>(theta, phi);
                        let v = driver.val(&y)?;
                        if v > bv {
                            bt = theta;
                            bp = phi;
                            bv = v;
                        }
                    }
                }
                if r_new >= r {
                    break;
                }
                r = r_new;
            }
            Ok(Some((lat_long_point::<S>(bt, bp), bv)))
        }
        _ => Ok(None),
    }
}

fn lexicographically_smaller<S: Scalar>(a: &[S], b: &[S]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}

/// Extremum of the objective over the unit sphere of dimension `dim`.
pub fn sphere_extremum<S: Scalar, O: SphereObjective<S> + ?Sized>(
    obj: &O,
    dim: usize,
    mode: Mode,
    cfg: &OptimizerConfig<S>,
) -> Result<ExtremumResult<S>> {
    sphere_extremum_seeded(obj, dim, mode, cfg, &[])
}

/// Like [`sphere_extremum`] with caller-supplied extra start directions
/// (e.g. family member directions), which are normalized before use.
pub fn sphere_extremum_seeded<S: Scalar, O: SphereObjective<S> + ?Sized>(
    obj: &O,
    dim: usize,
    mode: Mode,
    cfg: &OptimizerConfig<S>,
    extra_seeds: &[Vec<S>],
) -> Result<ExtremumResult<S>> {
    if dim == 0 {
        return Err(Error::InvalidSpec("sphere of dimension zero".into()));
    }
    let sign = match mode {
        Mode::Max => S::one(),
        Mode::Min => -S::one(),
    };
    let driver = Driver { obj, sign };

    if dim == 1 {
        let pos = driver.val(&[S::one()])?;
        let neg = driver.val(&[-S::one()])?;
        let (v, arg) = if pos >= neg { (pos, vec![S::one()]) } else { (neg, vec![-S::one()]) };
        return Ok(ExtremumResult {
            value: sign * v,
            argument: arg,
            certified_margin: Some(S::zero()),
            iterations_used: 0,
        });
    }

    let grid = grid_search(&driver, dim, cfg.grid_resolution)?;

    let mut starts: Vec<Vec<S>> = Vec::new();
    if let Some((gy, _)) = &grid {
        starts.push(gy.clone());
    }
    for seed_vec in extra_seeds {
        let mut s = seed_vec.clone();
        if s.len() == dim && linalg::normalize(&mut s) > S::zero() {
            starts.push(s);
        }
    }
    for i in 0..dim {
        let mut e = vec![S::zero(); dim];
        e[i] = S::one();
        starts.push(e.clone());
        e[i] = -S::one();
        starts.push(e);
    }
    let mut j = 0;
    while starts.len() < cfg.starts.max(4) {
        let y = quasi_normal_direction::<S>(cfg.seed, j, dim);
        let mut anti = linalg::scale(&y, -S::one());
        starts.push(y);
        if starts.len() < cfg.starts.max(4) {
            linalg::normalize(&mut anti);
            starts.push(anti);
        }
        j += 1;
    }

    let mut best: Option<(Vec<S>, S)> = None;
    let mut total_iters = 0usize;
    for start in &starts {
        let (y1, f1, it1) = driver.ascend(start, cfg)?;
        let (y2, f2, it2) = driver.polish(&y1, f1)?;
        total_iters += it1 + it2;
        let replace = match &best {
            None => true,
            Some((by, bf)) => f2 > *bf || (f2 == *bf && lexicographically_smaller(&y2, by)),
        };
        if replace {
            best = Some((y2, f2));
        }
    }
    let (arg, internal_value) = best.expect("at least one start");
    let certified_margin = grid.as_ref().map(|(_, gv)| internal_value - *gv);
    // Re-evaluate so the reported value is exactly the objective at the argument.
    let final_value = driver.val(&arg)?;
    Ok(ExtremumResult {
        value: sign * final_value,
        argument: arg,
        certified_margin,
        iterations_used: total_iters,
    })
}

/// Output norm for [`lp_operator_norm`].
#[derive(Debug, Clone, Copy)]
pub enum OutputNorm<S> {
    /// Euclidean norm of the image divided by a fixed volume; this is the
    /// functional norm of a synthesized coefficient vector.
    EuclideanOverVolume(S),
    /// Entrywise l^p norm of the image with the given exponent.
    Lp(S),
}

pub fn lp_norm<S: Scalar>(v: &[S], p: S) -> S {
    v.iter().map(|x| x.abs().powf(p)).sum::<S>().powf(S::one() / p)
}

struct OperatorRatio<'a, S> {
    matrix: &'a Matrix<S>,
    domain_p: S,
    out: OutputNorm<S>,
}

impl<'a, S: Scalar> SphereObjective<S> for OperatorRatio<'a, S> {
    fn value(&self, y: &[S]) -> S {
        let w = self.matrix.matvec(y);
        let num = match self.out {
            OutputNorm::EuclideanOverVolume(v) => linalg::norm2(&w) / v,
            OutputNorm::Lp(pe) => lp_norm(&w, pe),
        };
        let den = lp_norm(y, self.domain_p);
        num / den
    }

    fn gradient(&self, y: &[S], out: &mut [S]) {
        let w = self.matrix.matvec(y);
        let den = lp_norm(y, self.domain_p);
        let (num, dnum_dw): (S, Vec<S>) = match self.out {
            OutputNorm::EuclideanOverVolume(v) => {
                let n2 = linalg::norm2(&w);
                let num = n2 / v;
                let g = if n2 > S::min_positive_value() {
                    linalg::scale(&w, S::one() / (n2 * v))
                } else {
                    vec![S::zero(); w.len()]
                };
                (num, g)
            }
            OutputNorm::Lp(pe) => {
                let n = lp_norm(&w, pe);
                let g = if n > S::min_positive_value() {
                    w.iter()
                        .map(|x| (x.abs() / n).powf(pe - S::one()) * x.signum())
                        .collect()
                } else {
                    vec![S::zero(); w.len()]
                };
                (n, g)
            }
        };
        let dnum = self.matrix.tr_matvec(&dnum_dw);
        let p = self.domain_p;
        let dden: Vec<S> =
            y.iter().map(|x| (x.abs() / den).powf(p - S::one()) * x.signum()).collect();
        for i in 0..y.len() {
            out[i] = (dnum[i] * den - num * dden[i]) / (den * den);
        }
    }
}

/// Operator norm from the l^p unit sphere of the domain into the selected
/// output norm. Exact top singular value for `p = 2` with Euclidean-type
/// output; otherwise the 0-homogeneous ratio `|M y|_out / |y|_p` is
/// maximized over the Euclidean sphere, which is equivalent by
/// homogeneity and keeps the objective C^1 for p > 1.
pub fn lp_operator_norm<S: Scalar>(
    matrix: &Matrix<S>,
    domain_p: S,
    out: OutputNorm<S>,
    cfg: &OptimizerConfig<S>,
) -> Result<S> {
    if !(domain_p > S::one()) || !domain_p.is_finite() {
        return Err(Error::InvalidExponent { p: domain_p.to_f64().unwrap_or(f64::NAN) });
    }
    let two = real::<S>(2.0);
    if domain_p == two {
        match out {
            OutputNorm::EuclideanOverVolume(v) => {
                return Ok(linalg::spectral_norm(matrix) / v);
            }
            OutputNorm::Lp(pe) if pe == two => {
                return Ok(linalg::spectral_norm(matrix));
            }
            OutputNorm::Lp(_) => {}
        }
    }
    if let OutputNorm::Lp(pe) = out {
        if !(pe > S::one()) || !pe.is_finite() {
            return Err(Error::InvalidExponent { p: pe.to_f64().unwrap_or(f64::NAN) });
        }
    }
    let ratio = OperatorRatio { matrix, domain_p, out };
    let result = sphere_extremum(&ratio, matrix.cols(), Mode::Max, cfg)?;
    Ok(result.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    struct Quadratic {
        m: Matrix<f64>,
    }

    impl SphereObjective<f64> for Quadratic {
        fn value(&self, y: &[f64]) -> f64 {
            linalg::dot(y, &self.m.matvec(y))
        }
        fn gradient(&self, y: &[f64], out: &mut [f64]) {
            let g = self.m.matvec(y);
            for i in 0..y.len() {
                out[i] = 2.0 * g[i];
            }
        }
    }

    fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> Matrix<f64> {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = rng.gen_range(-3.0..3.0);
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        m
    }

    #[test]
    fn quadratic_matches_eigenvalues() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..100 {
            let n = 2 + (trial % 7);
            let m = random_symmetric(&mut rng, n);
            let (vals, _) = linalg::sym_eigen(&m);
            let obj = Quadratic { m };
            let cfg = OptimizerConfig::with_seed(trial as u64);
            let hi = sphere_extremum(&obj, n, Mode::Max, &cfg).unwrap();
            let lo = sphere_extremum(&obj, n, Mode::Min, &cfg).unwrap();
            let scale = vals[n - 1].abs().max(vals[0].abs()).max(1e-12);
            assert!(
                (hi.value - vals[n - 1]).abs() <= 1e-8 * scale,
                "max mismatch: got {} want {} (n={})",
                hi.value,
                vals[n - 1],
                n
            );
            assert!(
                (lo.value - vals[0]).abs() <= 1e-8 * scale,
                "min mismatch: got {} want {} (n={})",
                lo.value,
                vals[0],
                n
            );
        }
    }

    #[test]
    fn quartic_on_circle() {
        // min of y1^4 + y2^4 on the circle is 1/2 at the diagonal.
        let obj = FnObjective(|y: &[f64]| y[0].powi(4) + y[1].powi(4));
        let cfg = OptimizerConfig::with_seed(3);
        let lo = sphere_extremum(&obj, 2, Mode::Min, &cfg).unwrap();
        assert_relative_eq!(lo.value, 0.5, max_relative = 1e-8);
        let hi = sphere_extremum(&obj, 2, Mode::Max, &cfg).unwrap();
        assert_relative_eq!(hi.value, 1.0, max_relative = 1e-8);
        // Grid ran: sandwich margins are nonnegative.
        assert!(lo.certified_margin.unwrap() >= -1e-12);
        assert!(hi.certified_margin.unwrap() >= -1e-12);
    }

    #[test]
    fn constant_objective() {
        let obj = FnObjective(|_: &[f64]| 4.25);
        let cfg = OptimizerConfig::with_seed(0);
        let r = sphere_extremum(&obj, 3, Mode::Max, &cfg).unwrap();
        assert_relative_eq!(r.value, 4.25);
        assert_relative_eq!(linalg::norm2(&r.argument), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let obj = FnObjective(|y: &[f64]| {
            y.iter().enumerate().map(|(i, v)| (i as f64 + 1.0) * v * v * v.abs()).sum()
        });
        let cfg = OptimizerConfig::with_seed(11);
        let a = sphere_extremum(&obj, 4, Mode::Max, &cfg).unwrap();
        let b = sphere_extremum(&obj, 4, Mode::Max, &cfg).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(
            a.argument.iter().map(|v| v.to_bits()).collect::<Vec<_>>(),
            b.argument.iter().map(|v| v.to_bits()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn operator_norms() {
        let cfg = OptimizerConfig::with_seed(5);
        // Identity on R^2, p = 2.
        let id = Matrix::identity(2);
        let n = lp_operator_norm(&id, 2.0, OutputNorm::Lp(2.0), &cfg).unwrap();
        assert_relative_eq!(n, 1.0, max_relative = 1e-10);
        // diag(2, 1), p = 2.
        let d = Matrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 1.0]]);
        let n = lp_operator_norm(&d, 2.0, OutputNorm::Lp(2.0), &cfg).unwrap();
        assert_relative_eq!(n, 2.0, max_relative = 1e-10);
        // Row (1,1) from l^2: Cauchy-Schwarz gives sqrt(2).
        let r = Matrix::from_rows(&[vec![1.0, 1.0]]);
        let n = lp_operator_norm(&r, 2.0, OutputNorm::EuclideanOverVolume(1.0), &cfg).unwrap();
        assert_relative_eq!(n, 2f64.sqrt(), max_relative = 1e-10);
        // Same row from l^4 (q = 4): the max of |y1 + y2| over |y|_4 = 1 is 2^(3/4).
        let n = lp_operator_norm(&r, 4.0, OutputNorm::Lp(2.0), &cfg).unwrap();
        assert_relative_eq!(n, 2f64.powf(0.75), max_relative = 1e-7);
        // Degenerate exponent.
        assert!(lp_operator_norm(&r, 1.0, OutputNorm::Lp(2.0), &cfg).is_err());
    }

    #[test]
    fn non_finite_objective_is_reported() {
        let obj = FnObjective(|y: &[f64]| if y[0] > 0.5 { f64::NAN } else { y[0] });
        let cfg = OptimizerConfig::with_seed(1);
        assert!(matches!(
            sphere_extremum(&obj, 2, Mode::Max, &cfg),
            Err(Error::NonFiniteObjective { .. })
        ));
    }
}
