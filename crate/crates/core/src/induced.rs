//! Ordinary vector frames induced by g-frames.
//!
//! Given a frame `{f_{n,m}}_n` for each `H_m`, the vectors `Λ_m* f_{n,m}`
//! form an ordinary family in `H`. With orthonormal bases of the `H_m` this
//! family has exactly the g-frame operator `Σ Λ_m* Λ_m` as its frame
//! operator, which is how g-Riesz and g-orthonormal questions reduce to
//! vector questions.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gframe::{frame_threshold, BoundsReport, GFrame, RieszReport};
use crate::numkernel::{hermitian_eig, hermitian_eigenvalues, svd, Matrix, Scalar};
use crate::record::VerificationRecord;
use crate::weaving::{universal_bounds_exhaustive, UniversalReport, WeavingSpectra};
use crate::DEFAULT_TOL;

/// Vectors in `H`, grouped by the block index they came from.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorFamily {
    domain_dim: usize,
    groups: Vec<Vec<Vec<Scalar>>>,
}

impl VectorFamily {
    pub fn new(domain_dim: usize, groups: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        for (m, group) in groups.iter().enumerate() {
            if let Some(v) = group.iter().find(|v| v.len() != domain_dim) {
                return Err(Error::ShapeMismatch(format!(
                    "group {} has a vector of length {}, expected {}",
                    m + 1,
                    v.len(),
                    domain_dim
                )));
            }
        }
        Ok(Self { domain_dim, groups })
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn groups(&self) -> &[Vec<Vec<Scalar>>] {
        &self.groups
    }

    /// All vectors in `(m, n)` lexicographic order.
    pub fn flat(&self) -> impl Iterator<Item = &Vec<Scalar>> {
        self.groups.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `d × K` matrix whose columns are the vectors.
    pub fn synthesis_matrix(&self) -> Matrix {
        let cols: Vec<Vec<Scalar>> = self.flat().cloned().collect();
        Matrix::from_fn(self.domain_dim, cols.len(), |r, c| cols[c][r])
    }

    /// `Σ v v*` restricted to group `m`.
    pub fn group_operator(&self, m: usize) -> Matrix {
        outer_sum(self.domain_dim, &self.groups[m])
    }

    /// `Σ v v*` over every vector.
    pub fn frame_operator_matrix(&self) -> Matrix {
        let all: Vec<Vec<Scalar>> = self.flat().cloned().collect();
        outer_sum(self.domain_dim, &all)
    }
}

fn outer_sum(d: usize, vectors: &[Vec<Scalar>]) -> Matrix {
    let mut s = Matrix::zeros(d, d);
    for v in vectors {
        for i in 0..d {
            for j in 0..d {
                s[(i, j)] += v[i] * v[j].conj();
            }
        }
    }
    s
}

/// One frame of a subspace `H_m` with its computed optimal bounds.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockFrame {
    pub dim: usize,
    pub vectors: Vec<Vec<Scalar>>,
    /// `None` when `dim = 0`.
    pub bounds: Option<(f64, f64)>,
}

/// Frames `{f_{n,m}}` for every `H_m` plus envelope constants
/// `A ≤ A_m ≤ B_m ≤ B`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceFrameSpec {
    blocks: Vec<BlockFrame>,
    lower_envelope: f64,
    upper_envelope: f64,
}

impl SubspaceFrameSpec {
    /// Per-block bounds are computed from the vectors; the envelope is the
    /// tightest one containing them.
    pub fn new(blocks: Vec<(usize, Vec<Vec<Scalar>>)>) -> Result<Self> {
        let mut out = Vec::with_capacity(blocks.len());
        for (m, (dim, vectors)) in blocks.into_iter().enumerate() {
            if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
                return Err(Error::ShapeMismatch(format!(
                    "frame vector of length {} for block {} of dimension {}",
                    v.len(),
                    m + 1,
                    dim
                )));
            }
            let bounds = if dim == 0 {
                None
            } else {
                let ev = hermitian_eigenvalues(&outer_sum(dim, &vectors))?;
                Some((ev[0], ev[dim - 1]))
            };
            out.push(BlockFrame { dim, vectors, bounds });
        }
        let lower_envelope = out
            .iter()
            .filter_map(|b| b.bounds.map(|x| x.0))
            .fold(f64::INFINITY, f64::min);
        let upper_envelope = out
            .iter()
            .filter_map(|b| b.bounds.map(|x| x.1))
            .fold(f64::NEG_INFINITY, f64::max);
        Ok(Self {
            blocks: out,
            lower_envelope,
            upper_envelope,
        })
    }

    /// Replaces the envelope with declared constants after checking
    /// `lower ≤ A_m ≤ B_m ≤ upper` for every nontrivial block.
    pub fn with_envelope(mut self, lower: f64, upper: f64) -> Result<Self> {
        for (m, b) in self.blocks.iter().enumerate() {
            if let Some((a, bb)) = b.bounds {
                if a < lower - 1e-12 || bb > upper + 1e-12 {
                    return Err(Error::EnvelopeViolation {
                        block: m + 1,
                        detail: format!("bounds ({a}, {bb}) outside envelope ({lower}, {upper})"),
                    });
                }
            }
        }
        self.lower_envelope = lower;
        self.upper_envelope = upper;
        Ok(self)
    }

    /// Canonical orthonormal basis of each `H_m`; all bounds equal 1.
    pub fn onb_families(dims: &[usize]) -> Self {
        let blocks = dims
            .iter()
            .map(|&dim| {
                let vectors = (0..dim)
                    .map(|n| {
                        (0..dim)
                            .map(|k| Scalar::new(if k == n { 1.0 } else { 0.0 }, 0.0))
                            .collect()
                    })
                    .collect();
                (dim, vectors)
            })
            .collect();
        Self::new(blocks).expect("orthonormal bases are well formed")
    }

    /// Every vector multiplied by `c`; bounds scale by `c²`.
    pub fn scaled(&self, c: f64) -> Self {
        let k = c * c;
        Self {
            blocks: self
                .blocks
                .iter()
                .map(|b| BlockFrame {
                    dim: b.dim,
                    vectors: b
                        .vectors
                        .iter()
                        .map(|v| v.iter().map(|z| z * c).collect())
                        .collect(),
                    bounds: b.bounds.map(|(a, bb)| (a * k, bb * k)),
                })
                .collect(),
            lower_envelope: self.lower_envelope * k,
            upper_envelope: self.upper_envelope * k,
        }
    }

    pub fn blocks(&self) -> &[BlockFrame] {
        &self.blocks
    }

    pub fn envelope(&self) -> (f64, f64) {
        (self.lower_envelope, self.upper_envelope)
    }
}

/// `group m, entry n = Λ_m* f_{n,m}`.
pub fn induced_vectors(f: &GFrame, spec: &SubspaceFrameSpec) -> Result<VectorFamily> {
    if spec.blocks.len() != f.len() {
        return Err(Error::LengthMismatch {
            left: f.len(),
            right: spec.blocks.len(),
        });
    }
    let mut groups = Vec::with_capacity(f.len());
    for (m, (block, frame)) in f.blocks().iter().zip(&spec.blocks).enumerate() {
        if frame.dim != block.rows() {
            return Err(Error::ShapeMismatch(format!(
                "block {} maps into dimension {}, subspace frame has dimension {}",
                m + 1,
                block.rows(),
                frame.dim
            )));
        }
        let adj = block.adjoint();
        groups.push(
            frame
                .vectors
                .iter()
                .map(|v| adj.mul_vec(v))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    VectorFamily::new(f.domain_dim(), groups)
}

/// Extreme eigenvalues of the ordinary frame operator `Σ v v*`.
pub fn frame_bounds_vectors(v: &VectorFamily, tol: f64) -> Result<BoundsReport> {
    if v.is_empty() {
        return Err(Error::Empty);
    }
    let e = hermitian_eig(&v.frame_operator_matrix())?;
    let threshold = frame_threshold(e.max(), tol);
    Ok(BoundsReport {
        lower: e.min(),
        upper: e.max(),
        witness_low: e.eigenvectors.column(0),
        witness_high: e.eigenvectors.column(v.domain_dim - 1),
        is_frame: e.min() > threshold,
        threshold,
    })
}

/// Riesz basis iff exactly `d` vectors with `σ_min² > tol · σ_max²`;
/// bounds are the squared extreme singular values of the synthesis matrix.
pub fn riesz_vectors(v: &VectorFamily, tol: f64) -> Result<RieszReport> {
    if v.is_empty() {
        return Err(Error::Empty);
    }
    let s = svd(&v.synthesis_matrix())?;
    let smax = s.singular_values[0];
    let smin = *s.singular_values.last().unwrap_or(&0.0);
    let count = v.len();
    Ok(RieszReport {
        is_riesz: count == v.domain_dim && smin * smin > frame_threshold(smax * smax, tol),
        lower: smin * smin,
        upper: smax * smax,
        vector_count: count,
        domain_dim: v.domain_dim,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct OnbVectorsReport {
    pub is_onb: bool,
    /// `‖T* T − I‖_F` for the synthesis matrix `T`.
    pub gram_residual: f64,
    pub vector_count: usize,
    pub domain_dim: usize,
}

/// Orthonormal basis iff the Gram matrix is the identity and there are
/// exactly `d` vectors.
pub fn onb_vectors(v: &VectorFamily, tol: f64) -> Result<OnbVectorsReport> {
    if v.is_empty() {
        return Err(Error::Empty);
    }
    let t = v.synthesis_matrix();
    let gram = t.gram();
    let gram_residual = (&gram - &Matrix::identity(gram.rows())).frobenius_norm();
    Ok(OnbVectorsReport {
        is_onb: v.len() == v.domain_dim && gram_residual <= tol,
        gram_residual,
        vector_count: v.len(),
        domain_dim: v.domain_dim,
    })
}

/// Universal bounds when whole groups are interleaved: group `m` comes from
/// `vf` when `m ∈ σ` and from `vg` otherwise.
pub fn universal_bounds_vectors(
    vf: &VectorFamily,
    vg: &VectorFamily,
    tol: f64,
    cap: usize,
) -> Result<UniversalReport> {
    if vf.groups.len() != vg.groups.len() {
        return Err(Error::LengthMismatch {
            left: vf.groups.len(),
            right: vg.groups.len(),
        });
    }
    if vf.domain_dim != vg.domain_dim {
        return Err(Error::ShapeMismatch(format!(
            "domain dimensions {} and {}",
            vf.domain_dim, vg.domain_dim
        )));
    }
    let gf: Vec<Matrix> = (0..vf.groups.len()).map(|m| vf.group_operator(m)).collect();
    let gg: Vec<Matrix> = (0..vg.groups.len()).map(|m| vg.group_operator(m)).collect();
    WeavingSpectra::new(&gf, &gg, vf.domain_dim)?.exhaustive(tol, cap)
}

/// The g-frame operator equals the frame operator of the induced
/// orthonormal-basis vectors, and the g-Riesz / g-orthonormal verdicts match
/// the vector verdicts.
pub fn check_th26(f: &GFrame, tol: f64) -> Result<VerificationRecord> {
    let s = f.frame_operator_matrix();
    let spec = SubspaceFrameSpec::onb_families(&f.row_dims());
    let v = induced_vectors(f, &spec)?;
    let sv = v.frame_operator_matrix();
    let mut max_diff: f64 = 0.0;
    for i in 0..s.rows() {
        for j in 0..s.cols() {
            max_diff = max_diff.max((s[(i, j)] - sv[(i, j)]).norm());
        }
    }
    let mut rec = VerificationRecord::new("g-frame-vs-induced")
        .value("max_entry_difference", max_diff)
        .require(max_diff <= 1e-12, "frame operators agree entrywise within 1e-12");
    if !v.is_empty() {
        let g_riesz = f.riesz(tol)?.is_riesz;
        let v_riesz = riesz_vectors(&v, tol)?.is_riesz;
        let g_onb = f.orthonormality(tol)?.is_onb;
        let v_onb = onb_vectors(&v, tol)?.is_onb;
        let trivial = f.blocks().iter().any(|b| b.rows() == 0);
        rec = rec
            .value("g_riesz", g_riesz as u8 as f64)
            .value("g_onb", g_onb as u8 as f64)
            .require(trivial || g_riesz == v_riesz, "g-Riesz verdict matches vector Riesz verdict")
            .require(trivial || g_onb == v_onb, "g-ONB verdict matches vector ONB verdict");
    }
    Ok(rec)
}

/// Weaving equivalence between g-frames and their induced vector families,
/// with the quantitative bound transfers
/// `A_vec ≥ min(A_1,A_2)·A_g`, `B_vec ≤ max(B_1,B_2)·B_g`,
/// `A_g ≥ A_vec / max(B_1,B_2)` and `B_g ≤ B_vec / min(A_1,A_2)`.
pub fn check_th33(
    f: &GFrame,
    g: &GFrame,
    spec_f: &SubspaceFrameSpec,
    spec_g: &SubspaceFrameSpec,
    cap: usize,
) -> Result<VerificationRecord> {
    for spec in [spec_f, spec_g] {
        let (lo, hi) = spec.envelope();
        if lo.is_nan() || lo <= 0.0 || !hi.is_finite() {
            return Err(Error::EnvelopeViolation {
                block: 0,
                detail: format!("envelope ({lo}, {hi}) must satisfy 0 < A <= B < inf"),
            });
        }
        // recheck containment against the computed per-block bounds
        spec.clone().with_envelope(lo, hi)?;
    }
    let (a1, b1) = spec_f.envelope();
    let (a2, b2) = spec_g.envelope();
    let g_rep = universal_bounds_exhaustive(f, g, DEFAULT_TOL, cap)?;
    let vf = induced_vectors(f, spec_f)?;
    let vg = induced_vectors(g, spec_g)?;
    let v_rep = universal_bounds_vectors(&vf, &vg, DEFAULT_TOL, cap)?;
    const SLACK: f64 = 1e-9;
    let (ag, bg, av, bv) = (g_rep.lower, g_rep.upper, v_rep.lower, v_rep.upper);
    let mut rec = VerificationRecord::new("weaving-vs-induced-weaving")
        .value("A_g", ag)
        .value("B_g", bg)
        .value("A_vec", av)
        .value("B_vec", bv)
        .value("A_1", a1)
        .value("B_1", b1)
        .value("A_2", a2)
        .value("B_2", b2)
        .value("g_woven", g_rep.woven as u8 as f64)
        .value("vec_woven", v_rep.woven as u8 as f64)
        .require(g_rep.woven == v_rep.woven, "woven iff induced families woven")
        .require(av >= a1.min(a2) * ag - SLACK, "A_vec >= min(A_1, A_2) A_g")
        .require(bv <= b1.max(b2) * bg + SLACK, "B_vec <= max(B_1, B_2) B_g")
        .require(ag >= av / b1.max(b2) - SLACK, "A_g >= A_vec / max(B_1, B_2)")
        .require(bg <= bv / a1.min(a2) + SLACK, "B_g <= B_vec / min(A_1, A_2)");
    if !(a1 < b1 && a2 < b2) {
        rec = rec.note("envelopes are tight (A_i = B_i); strict inequality not met");
    }
    Ok(rec)
}
