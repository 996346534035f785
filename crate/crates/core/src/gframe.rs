//! Single g-frame analyses.
//!
//! A [`GFrame`] is an ordered list of blocks `Λ_m` of shape `d_m × d`; the
//! block realises the operator `H → H_m` in a fixed orthonormal basis of
//! `H_m`. Zero-row blocks encode the zero operator onto a trivial summand.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::induced;
use crate::numkernel::{
    hermitian_eig, hermitian_eigenvalues, inv_sqrt_psd, solve_spd, Matrix, Scalar, ABS_FLOOR,
};
use crate::DEFAULT_TOL;

#[derive(Clone, Debug, PartialEq)]
pub struct GFrame {
    domain_dim: usize,
    blocks: Vec<Matrix>,
    labels: Vec<Option<String>>,
}

/// The frame operator `S = Σ Λ_m* Λ_m` and its extreme eigenpairs.
#[derive(Clone, Debug)]
pub struct FrameOperatorResult {
    pub s: Matrix,
    pub lower: f64,
    pub upper: f64,
    pub witness_low: Vec<Scalar>,
    pub witness_high: Vec<Scalar>,
}

/// Optimal bounds `(A, B) = (λ_min(S), λ_max(S))` with unit witnesses.
#[derive(Clone, Debug)]
pub struct BoundsReport {
    pub lower: f64,
    pub upper: f64,
    pub witness_low: Vec<Scalar>,
    pub witness_high: Vec<Scalar>,
    /// `lower > tol · upper`.
    pub is_frame: bool,
    pub threshold: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DualPairReport {
    pub is_dual: bool,
    /// `‖Σ Λ_m* Γ_m − I‖_F`
    pub residual_forward: f64,
    /// `‖Σ Γ_m* Λ_m − I‖_F`
    pub residual_backward: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactnessReport {
    pub exact: bool,
    /// Blocks (0-based) whose removal leaves a g-frame.
    pub removable: Vec<usize>,
    /// `λ_min` of the family with block `m` removed; `None` for zero-row
    /// blocks, which are never counted as removable elements.
    pub post_removal_lambda_min: Vec<Option<f64>>,
    pub threshold: f64,
}

impl ExactnessReport {
    pub fn witness(&self) -> Option<usize> {
        self.removable.first().copied()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RieszReport {
    pub is_riesz: bool,
    /// `σ_min²` of the synthesis matrix.
    pub lower: f64,
    /// `σ_max²` of the synthesis matrix.
    pub upper: f64,
    pub vector_count: usize,
    pub domain_dim: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OnbReport {
    pub is_onb: bool,
    /// Largest `‖Λ_{m1} Λ_{m2}* − δ I‖_F` over all pairs.
    pub cross_gram_residual: f64,
    pub worst_pair: Option<(usize, usize)>,
    /// `‖S − I‖_F`
    pub parseval_residual: f64,
    pub has_trivial_block: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub is_g_frame: bool,
    pub is_g_exact: bool,
    pub is_g_riesz: bool,
    pub is_g_onb: bool,
    pub exactness_witness: Option<usize>,
    pub detail: String,
}

pub(crate) fn frame_threshold(upper: f64, tol: f64) -> f64 {
    (tol * upper).max(ABS_FLOOR)
}

impl GFrame {
    pub fn new(domain_dim: usize, blocks: Vec<Matrix>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::Empty);
        }
        if domain_dim == 0 {
            return Err(Error::ShapeMismatch("domain dimension must be positive".into()));
        }
        if let Some((m, b)) = blocks.iter().enumerate().find(|(_, b)| b.cols() != domain_dim) {
            return Err(Error::ShapeMismatch(format!(
                "block {} is {}x{}, expected {} columns",
                m + 1,
                b.rows(),
                b.cols(),
                domain_dim
            )));
        }
        let labels = alloc::vec![None; blocks.len()];
        Ok(Self {
            domain_dim,
            blocks,
            labels,
        })
    }

    pub fn with_labels(mut self, labels: Vec<Option<String>>) -> Result<Self> {
        if labels.len() != self.blocks.len() {
            return Err(Error::LengthMismatch {
                left: self.blocks.len(),
                right: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    /// Builds a family from real row-major blocks, each `rows × domain_dim`.
    pub fn from_real_blocks(domain_dim: usize, blocks: &[(usize, Vec<f64>)]) -> Result<Self> {
        let blocks = blocks
            .iter()
            .map(|(rows, data)| Matrix::from_real(*rows, domain_dim, data))
            .collect::<Result<Vec<_>>>()?;
        Self::new(domain_dim, blocks)
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    /// Number of blocks `N`.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn block(&self, m: usize) -> &Matrix {
        &self.blocks[m]
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    pub fn row_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(Matrix::rows).collect()
    }

    pub(crate) fn map_blocks(&self, f: impl Fn(&Matrix) -> Matrix) -> GFrame {
        GFrame {
            domain_dim: self.domain_dim,
            blocks: self.blocks.iter().map(f).collect(),
            labels: self.labels.clone(),
        }
    }

    /// The analysis map: `m`-th entry is `Λ_m h`.
    pub fn apply(&self, h: &[Scalar]) -> Result<Vec<Vec<Scalar>>> {
        self.blocks.iter().map(|b| b.mul_vec(h)).collect()
    }

    /// `Σ_m ‖Λ_m h‖²`.
    pub fn energy(&self, h: &[Scalar]) -> Result<f64> {
        Ok(self
            .apply(h)?
            .iter()
            .flat_map(|c| c.iter().map(|z| z.norm_sqr()))
            .sum())
    }

    /// Per-block Gram matrices `Λ_m* Λ_m`.
    pub fn block_grams(&self) -> Vec<Matrix> {
        self.blocks.iter().map(Matrix::gram).collect()
    }

    pub fn frame_operator_matrix(&self) -> Matrix {
        let mut s = Matrix::zeros(self.domain_dim, self.domain_dim);
        for b in &self.blocks {
            s.add_assign_unchecked(&b.gram());
        }
        s
    }

    pub fn frame_operator(&self) -> Result<FrameOperatorResult> {
        let s = self.frame_operator_matrix();
        let e = hermitian_eig(&s)?;
        let d = self.domain_dim;
        Ok(FrameOperatorResult {
            lower: e.min(),
            upper: e.max(),
            witness_low: e.eigenvectors.column(0),
            witness_high: e.eigenvectors.column(d - 1),
            s,
        })
    }

    pub fn optimal_bounds(&self, tol: f64) -> Result<BoundsReport> {
        let fo = self.frame_operator()?;
        let threshold = frame_threshold(fo.upper, tol);
        Ok(BoundsReport {
            is_frame: fo.lower > threshold,
            lower: fo.lower,
            upper: fo.upper,
            witness_low: fo.witness_low,
            witness_high: fo.witness_high,
            threshold,
        })
    }

    fn require_frame(&self) -> Result<FrameOperatorResult> {
        let fo = self.frame_operator()?;
        let threshold = frame_threshold(fo.upper, DEFAULT_TOL);
        if fo.lower <= threshold {
            return Err(Error::NotAFrame {
                lambda_min: fo.lower,
                threshold,
            });
        }
        Ok(fo)
    }

    /// Canonical dual `Γ_m = Λ_m S^{-1}`.
    pub fn canonical_dual(&self) -> Result<GFrame> {
        let fo = self.require_frame()?;
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                // Γ_m* = S^{-1} Λ_m*
                solve_spd(&fo.s, &b.adjoint()).map(|x| x.adjoint())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GFrame {
            domain_dim: self.domain_dim,
            blocks,
            labels: self.labels.clone(),
        })
    }

    pub(crate) fn check_compatible(&self, other: &GFrame) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        if self.domain_dim != other.domain_dim {
            return Err(Error::ShapeMismatch(format!(
                "domain dimensions {} and {}",
                self.domain_dim, other.domain_dim
            )));
        }
        Ok(())
    }

    pub fn is_dual_pair(&self, other: &GFrame, tol: f64) -> Result<DualPairReport> {
        self.check_compatible(other)?;
        if let Some(m) = (0..self.len()).find(|&m| self.blocks[m].rows() != other.blocks[m].rows()) {
            return Err(Error::ShapeMismatch(format!(
                "block {} has {} rows vs {}",
                m + 1,
                self.blocks[m].rows(),
                other.blocks[m].rows()
            )));
        }
        let d = self.domain_dim;
        let mut fwd = Matrix::zeros(d, d);
        let mut bwd = Matrix::zeros(d, d);
        for (a, b) in self.blocks.iter().zip(&other.blocks) {
            fwd.add_assign_unchecked(&(&a.adjoint() * b));
            bwd.add_assign_unchecked(&(&b.adjoint() * a));
        }
        let id = Matrix::identity(d);
        let residual_forward = (&fwd - &id).frobenius_norm();
        let residual_backward = (&bwd - &id).frobenius_norm();
        Ok(DualPairReport {
            is_dual: residual_forward <= tol && residual_backward <= tol,
            residual_forward,
            residual_backward,
        })
    }

    /// Decides g-exactness by removing each block in turn.
    ///
    /// Zero-row blocks (operators onto a trivial `H_m`) are skipped: removing
    /// them changes neither the frame operator nor the synthesis map.
    pub fn exactness(&self, tol: f64) -> Result<ExactnessReport> {
        let fo = self.require_frame()?;
        let threshold = frame_threshold(fo.upper, tol);
        let grams = self.block_grams();
        let d = self.domain_dim;
        let mut removable = Vec::new();
        let mut post = Vec::with_capacity(self.len());
        for m in 0..self.len() {
            if self.blocks[m].rows() == 0 {
                post.push(None);
                continue;
            }
            let mut s = Matrix::zeros(d, d);
            for (k, g) in grams.iter().enumerate() {
                if k != m {
                    s.add_assign_unchecked(g);
                }
            }
            let lmin = hermitian_eigenvalues(&s)?[0];
            if lmin > threshold {
                removable.push(m);
            }
            post.push(Some(lmin));
        }
        Ok(ExactnessReport {
            exact: removable.is_empty(),
            removable,
            post_removal_lambda_min: post,
            threshold,
        })
    }

    /// g-Riesz test through the induced orthonormal-basis vectors
    /// `Λ_m* e_{n,m}`: they must be exactly `d` vectors with a well
    /// conditioned synthesis matrix. Every `H_m` must be nontrivial.
    pub fn riesz(&self, tol: f64) -> Result<RieszReport> {
        let spec = induced::SubspaceFrameSpec::onb_families(&self.row_dims());
        let vf = induced::induced_vectors(self, &spec)?;
        let mut r = induced::riesz_vectors(&vf, tol)?;
        if self.blocks.iter().any(|b| b.rows() == 0) {
            r.is_riesz = false;
        }
        Ok(r)
    }

    /// g-orthonormal basis test: `Λ_{m1} Λ_{m2}* = δ I` for all pairs and
    /// `S = I`.
    pub fn orthonormality(&self, tol: f64) -> Result<OnbReport> {
        let mut worst = 0.0;
        let mut worst_pair = None;
        for (i, a) in self.blocks.iter().enumerate() {
            for (j, b) in self.blocks.iter().enumerate() {
                let mut g = a * &b.adjoint();
                if i == j {
                    g = &g - &Matrix::identity(a.rows());
                }
                let r = g.frobenius_norm();
                if r > worst {
                    worst = r;
                    worst_pair = Some((i, j));
                }
            }
        }
        let s = self.frame_operator_matrix();
        let parseval_residual = (&s - &Matrix::identity(self.domain_dim)).frobenius_norm();
        let has_trivial_block = self.blocks.iter().any(|b| b.rows() == 0);
        Ok(OnbReport {
            is_onb: worst <= tol && parseval_residual <= tol && !has_trivial_block,
            cross_gram_residual: worst,
            worst_pair,
            parseval_residual,
            has_trivial_block,
        })
    }

    /// `{Λ_m U}`.
    pub fn compose_right(&self, u: &Matrix) -> Result<GFrame> {
        if u.rows() != self.domain_dim || u.cols() != self.domain_dim {
            return Err(Error::ShapeMismatch(format!(
                "operator is {}x{}, domain dimension {}",
                u.rows(),
                u.cols(),
                self.domain_dim
            )));
        }
        Ok(self.map_blocks(|b| b * u))
    }

    /// `{Λ_m S^{-1/2}}`, a Parseval g-frame.
    pub fn transform_sqrt_inv(&self) -> Result<GFrame> {
        let fo = self.require_frame()?;
        let r = inv_sqrt_psd(&fo.s)?;
        Ok(self.map_blocks(|b| b * &r))
    }

    /// The family with block `m` dropped, or `None` if nothing would remain.
    pub fn without_block(&self, m: usize) -> Option<GFrame> {
        if self.len() <= 1 {
            return None;
        }
        let mut out = self.clone();
        out.blocks.remove(m);
        out.labels.remove(m);
        Some(out)
    }

    pub fn classify(&self, tol: f64) -> Result<Classification> {
        let bounds = self.optimal_bounds(tol)?;
        let riesz = self.riesz(tol)?;
        let onb = self.orthonormality(tol)?;
        let mut detail = format!(
            "A={:.12e} B={:.12e}; riesz bounds ({:.12e}, {:.12e}) with {} vectors in dimension {}; \
             cross-Gram residual {:.3e}, Parseval residual {:.3e}",
            bounds.lower,
            bounds.upper,
            riesz.lower,
            riesz.upper,
            riesz.vector_count,
            riesz.domain_dim,
            onb.cross_gram_residual,
            onb.parseval_residual
        );
        let (is_g_exact, witness) = if bounds.is_frame {
            let ex = self.exactness(tol)?;
            if let Some(w) = ex.witness() {
                detail.push_str(&format!("; removing block {} leaves a g-frame", w + 1));
            }
            (ex.exact, ex.witness())
        } else {
            (false, None)
        };
        let is_g_riesz = bounds.is_frame && riesz.is_riesz;
        Ok(Classification {
            is_g_frame: bounds.is_frame,
            is_g_exact,
            is_g_riesz,
            is_g_onb: is_g_riesz && onb.is_onb,
            exactness_witness: witness,
            detail,
        })
    }
}
