//! Finite-dimensional model of a linear n-normed space.
//!
//! Coordinate vectors carry the Gram-determinant (volume) n-norm: the
//! n-norm of a tuple is the volume of the parallelotope it spans. Fixing
//! an anchor tuple (a_2, ..., a_n) turns the n-norm into the anchored
//! seminorm `x -> ||x, a_2, ..., a_n||`, which vanishes exactly on the
//! anchor span. All frame inequalities are therefore non-vacuous only on
//! the orthogonal complement of that span, which this type precomputes.

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::{real, Scalar};

/// Coordinate vector in the ambient space.
pub type Vector<S> = Vec<S>;

fn check_vector<S: Scalar>(v: &[S], dim: usize) -> Result<()> {
    if v.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFiniteInput);
    }
    Ok(())
}

/// Volume of the parallelotope spanned by the given vectors:
/// `sqrt(det(G))` with `G` the pairwise inner-product (Gram) matrix,
/// evaluated as the product of the singular values of the column matrix
/// (identical in exact arithmetic, far better conditioned). Tuples that
/// are rank deficient under the relative singular-value threshold give
/// exactly zero, which subsumes clamping negative roundoff determinants.
pub fn gram_volume<S: Scalar>(vectors: &[Vector<S>]) -> Result<S> {
    let k = vectors.len();
    if k == 0 {
        return Ok(S::one());
    }
    let dim = vectors[0].len();
    for v in vectors {
        check_vector(v, dim)?;
    }
    if k > dim {
        // More vectors than dimensions are always dependent.
        return Ok(S::zero());
    }
    let mat = Matrix::from_cols(vectors);
    let sigma = linalg::svd(&mat).sigma;
    let smax = sigma.first().copied().unwrap_or(S::zero());
    let thresh = smax * S::rank_rel_tol();
    let mut volume = S::one();
    for s in &sigma {
        if *s <= thresh {
            return Ok(S::zero());
        }
        volume = volume * *s;
    }
    Ok(volume)
}

/// The fixed tail (a_2, ..., a_n) shared by every n-norm and functional
/// evaluation, together with its Gram volume.
#[derive(Debug, Clone, PartialEq)]
pub struct AnchorTuple<S> {
    anchors: Vec<Vector<S>>,
    volume: S,
}

impl<S: Scalar> AnchorTuple<S> {
    /// Builds the tuple, rejecting linearly dependent anchors.
    pub fn new(anchors: Vec<Vector<S>>) -> Result<Self> {
        if anchors.is_empty() {
            return Err(Error::InvalidSpec("anchor tuple must be nonempty".into()));
        }
        let dim = anchors[0].len();
        for a in &anchors {
            check_vector(a, dim)?;
        }
        let mat = Matrix::from_cols(&anchors);
        let ratio = linalg::sigma_ratio(&mat);
        if ratio < S::rank_rel_tol() {
            return Err(Error::DependentAnchors {
                sigma_ratio: ratio.to_f64().unwrap_or(0.0),
            });
        }
        let volume = gram_volume(&anchors)?;
        Ok(Self { anchors, volume })
    }

    pub fn anchors(&self) -> &[Vector<S>] {
        &self.anchors
    }

    pub fn volume(&self) -> S {
        self.volume
    }

    pub fn len(&self) -> usize {
        self.anchors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.anchors.is_empty()
    }
}

/// Ambient space with a fixed anchor tuple and the precomputed
/// orthonormal basis of `U`, the orthogonal complement of the anchor span.
#[derive(Debug, Clone, PartialEq)]
pub struct NSpace<S> {
    dimension: usize,
    order: usize,
    anchors: AnchorTuple<S>,
    complement_basis: Vec<Vector<S>>,
}

impl<S: Scalar> NSpace<S> {
    /// Builds a space of the given dimension with order `n = anchors + 1`.
    ///
    /// Requires `2 <= n <= d` and a complement of dimension at least one;
    /// a trivial complement would make the anchored seminorm identically
    /// zero and every frame statement vacuous.
    pub fn new(dimension: usize, anchors: Vec<Vector<S>>) -> Result<Self> {
        let order = anchors.len() + 1;
        if order < 2 || order > dimension {
            return Err(Error::InvalidOrder { order, dimension });
        }
        for a in &anchors {
            check_vector(a, dimension)?;
        }
        let tuple = AnchorTuple::new(anchors)?;
        let complement_dim = dimension - (order - 1);
        if complement_dim == 0 {
            return Err(Error::DegenerateSpace);
        }
        let anchor_basis = linalg::orthonormalize(tuple.anchors())
            .ok_or(Error::DependentAnchors { sigma_ratio: 0.0 })?;
        let complement_basis = linalg::complete_orthonormal_basis(&anchor_basis, dimension);
        debug_assert_eq!(complement_basis.len(), complement_dim);
        Ok(Self { dimension, order, anchors: tuple, complement_basis })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn anchors(&self) -> &AnchorTuple<S> {
        &self.anchors
    }

    pub fn volume(&self) -> S {
        self.anchors.volume()
    }

    /// Orthonormal basis of the complement subspace `U`.
    pub fn complement_basis(&self) -> &[Vector<S>] {
        &self.complement_basis
    }

    pub fn complement_dim(&self) -> usize {
        self.complement_basis.len()
    }

    /// The n-norm of `order` vectors: their Gram volume.
    pub fn n_norm(&self, vectors: &[Vector<S>]) -> Result<S> {
        if vectors.len() != self.order {
            return Err(Error::DimensionMismatch {
                expected: self.order,
                got: vectors.len(),
            });
        }
        for v in vectors {
            check_vector(v, self.dimension)?;
        }
        gram_volume(vectors)
    }

    /// `||x, a_2, ..., a_n||`: the n-norm of `x` against the anchor tuple.
    pub fn anchored_seminorm(&self, x: &[S]) -> Result<S> {
        check_vector(x, self.dimension)?;
        let mut tuple = Vec::with_capacity(self.order);
        tuple.push(x.to_vec());
        tuple.extend(self.anchors.anchors().iter().cloned());
        gram_volume(&tuple)
    }

    /// Orthogonal projection onto the complement subspace `U`.
    pub fn project_complement(&self, x: &[S]) -> Result<Vector<S>> {
        check_vector(x, self.dimension)?;
        let mut out = vec![S::zero(); self.dimension];
        for b in &self.complement_basis {
            let c = linalg::dot(x, b);
            linalg::axpy(&mut out, c, b);
        }
        Ok(out)
    }

    /// Coordinates of `P_U x` in the complement basis.
    pub fn reduce(&self, x: &[S]) -> Result<Vec<S>> {
        check_vector(x, self.dimension)?;
        Ok(self.complement_basis.iter().map(|b| linalg::dot(x, b)).collect())
    }

    /// Embeds complement coordinates back into the ambient space.
    pub fn lift(&self, y: &[S]) -> Result<Vector<S>> {
        if y.len() != self.complement_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.complement_dim(),
                got: y.len(),
            });
        }
        let mut out = vec![S::zero(); self.dimension];
        for (c, b) in y.iter().zip(&self.complement_basis) {
            linalg::axpy(&mut out, *c, b);
        }
        Ok(out)
    }

    /// Structural compatibility: same dimension, order and anchors.
    pub fn compatible(&self, other: &Self) -> bool {
        self.dimension == other.dimension
            && self.order == other.order
            && self.anchors.anchors() == other.anchors.anchors()
    }

    /// True when the seminorm of `x` is negligible relative to its size,
    /// i.e. `x` sits in the kernel span(a_2, ..., a_n).
    pub fn in_kernel(&self, x: &[S]) -> Result<bool> {
        let s = self.anchored_seminorm(x)?;
        let scale = linalg::norm2(x) * self.volume() + S::min_positive_value();
        Ok(s <= scale * real::<S>(1e-12))
    }
}
