//! Weavings of two g-frames and their universal bounds.
//!
//! For a selection `σ ⊆ {1..N}` the weaving takes `Λ_m` for `m ∈ σ` and
//! `Ω_m` otherwise. Its frame operator is `S_σ = Σ_{σ} Λ_m*Λ_m + Σ_{σ^c}
//! Ω_m*Ω_m`, so universal bounds are extremes of `λ_min(S_σ)` and
//! `λ_max(S_σ)` over all `2^N` selections.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::gframe::{frame_threshold, BoundsReport, GFrame};
use crate::numkernel::{hermitian_eigenvalues, Matrix};
use crate::record::VerificationRecord;
use crate::{DEFAULT_EXHAUSTIVE_CAP, DEFAULT_TOL};

/// Bit `m` set means block `m` (0-based) is taken from the first family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeavingSelection {
    n_blocks: usize,
    mask: u64,
}

pub const MAX_BLOCKS: usize = 64;

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl WeavingSelection {
    pub fn new(n_blocks: usize, mask: u64) -> Result<Self> {
        if n_blocks > MAX_BLOCKS {
            return Err(Error::TooManyBlocks {
                n_blocks,
                cap: MAX_BLOCKS,
            });
        }
        if mask & !full_mask(n_blocks) != 0 {
            return Err(Error::InvalidParameter(format!(
                "mask {mask:#b} uses bits beyond {n_blocks} blocks"
            )));
        }
        Ok(Self { n_blocks, mask })
    }

    pub fn empty(n_blocks: usize) -> Self {
        Self { n_blocks, mask: 0 }
    }

    pub fn full(n_blocks: usize) -> Self {
        Self {
            n_blocks,
            mask: full_mask(n_blocks),
        }
    }

    /// From 0-based block indices.
    pub fn from_members(n_blocks: usize, members: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &m in members {
            if m >= n_blocks {
                return Err(Error::InvalidParameter(format!(
                    "block index {m} out of range for {n_blocks} blocks"
                )));
            }
            mask |= 1 << m;
        }
        Self::new(n_blocks, mask)
    }

    /// From the 1-based indices used when writing `σ = {1, 2}`.
    pub fn from_one_based(n_blocks: usize, members: &[usize]) -> Result<Self> {
        if members.contains(&0) {
            return Err(Error::InvalidParameter("1-based index 0".into()));
        }
        let zero: Vec<usize> = members.iter().map(|m| m - 1).collect();
        Self::from_members(n_blocks, &zero)
    }

    pub fn n_blocks(&self) -> usize {
        self.n_blocks
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, m: usize) -> bool {
        m < self.n_blocks && self.mask >> m & 1 == 1
    }

    pub fn complement(&self) -> Self {
        Self {
            n_blocks: self.n_blocks,
            mask: !self.mask & full_mask(self.n_blocks),
        }
    }

    /// 0-based members.
    pub fn members(&self) -> Vec<usize> {
        (0..self.n_blocks).filter(|&m| self.contains(m)).collect()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.members().into_iter().map(|m| m + 1).collect()
    }

    /// `0b…` with one digit per block, block 1 as the least significant bit.
    pub fn bitstring(&self) -> String {
        let mut s = String::from("0b");
        for m in (0..self.n_blocks).rev() {
            s.push(if self.contains(m) { '1' } else { '0' });
        }
        s
    }
}

impl core::fmt::Display for WeavingSelection {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.one_based().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exhaustive,
    Search,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Exhaustive => "exhaustive",
            Method::Search => "search",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Exhaustive { cap: usize },
    Search { budget: usize, seed: u64 },
}

impl Default for Strategy {
    fn default() -> Self {
        Strategy::Exhaustive {
            cap: DEFAULT_EXHAUSTIVE_CAP,
        }
    }
}

/// Extremes of the weaving spectra over the examined selections.
#[derive(Clone, Debug, PartialEq)]
pub struct UniversalReport {
    /// `min_σ λ_min(S_σ)`
    pub lower: f64,
    /// `max_σ λ_max(S_σ)`
    pub upper: f64,
    /// Smallest mask attaining `lower` (within the tie tolerance).
    pub argmin_sigma: WeavingSelection,
    pub argmax_sigma: WeavingSelection,
    /// Every examined selection within the tie tolerance of `lower`, ascending.
    pub argmin_ties: Vec<WeavingSelection>,
    pub argmax_ties: Vec<WeavingSelection>,
    /// Set when a tie list hit [`MAX_TIES`] and stopped growing.
    pub ties_truncated: bool,
    pub woven: bool,
    /// `tol · max(B1, B2)`; woven iff `lower > threshold`.
    pub threshold: f64,
    pub method: Method,
    pub subsets_examined: u64,
}

pub const MAX_TIES: usize = 4096;

fn tie_tol(v: f64) -> f64 {
    1e-10 * v.abs().max(1.0)
}

/// Frame operators of weavings, assembled from per-block Gram matrices.
pub(crate) struct WeavingSpectra<'a> {
    grams_f: &'a [Matrix],
    grams_g: &'a [Matrix],
    dim: usize,
}

impl<'a> WeavingSpectra<'a> {
    pub(crate) fn new(grams_f: &'a [Matrix], grams_g: &'a [Matrix], dim: usize) -> Result<Self> {
        if grams_f.len() != grams_g.len() {
            return Err(Error::LengthMismatch {
                left: grams_f.len(),
                right: grams_g.len(),
            });
        }
        if grams_f.is_empty() {
            return Err(Error::Empty);
        }
        if grams_f.len() > MAX_BLOCKS {
            return Err(Error::TooManyBlocks {
                n_blocks: grams_f.len(),
                cap: MAX_BLOCKS,
            });
        }
        Ok(Self {
            grams_f,
            grams_g,
            dim,
        })
    }

    fn n(&self) -> usize {
        self.grams_f.len()
    }

    pub(crate) fn operator(&self, mask: u64) -> Matrix {
        let mut s = Matrix::zeros(self.dim, self.dim);
        for m in 0..self.n() {
            let g = if mask >> m & 1 == 1 {
                &self.grams_f[m]
            } else {
                &self.grams_g[m]
            };
            s.add_assign_unchecked(g);
        }
        s
    }

    /// `(λ_min, λ_max)` of `S_σ`.
    pub(crate) fn extremes(&self, mask: u64) -> Result<(f64, f64)> {
        let ev = hermitian_eigenvalues(&self.operator(mask))?;
        Ok((ev[0], ev[ev.len() - 1]))
    }

    fn woven_threshold(&self, tol: f64) -> Result<f64> {
        let (_, b1) = self.extremes(full_mask(self.n()))?;
        let (_, b2) = self.extremes(0)?;
        Ok(frame_threshold(b1.max(b2), tol))
    }

    pub(crate) fn exhaustive(&self, tol: f64, cap: usize) -> Result<UniversalReport> {
        let n = self.n();
        if n > cap || n >= MAX_BLOCKS {
            return Err(Error::TooManyBlocks { n_blocks: n, cap });
        }
        let threshold = self.woven_threshold(tol)?;
        let mut acc = Extremes::new(n);
        for mask in 0..=full_mask(n) {
            let (lo, hi) = self.extremes(mask)?;
            acc.push(mask, lo, hi);
        }
        Ok(acc.finish(threshold, Method::Exhaustive))
    }

    pub(crate) fn search(&self, tol: f64, budget: usize, seed: u64) -> Result<UniversalReport> {
        if budget == 0 {
            return Err(Error::InvalidParameter("search budget must be at least 1".into()));
        }
        let n = self.n();
        if n < MAX_BLOCKS && (1u128 << n) <= budget as u128 {
            return self.exhaustive(tol, n);
        }
        let threshold = self.woven_threshold(tol)?;
        let mut cache: BTreeMap<u64, (f64, f64)> = BTreeMap::new();
        let mut eval = |mask: u64| -> Result<(f64, f64)> {
            if let Some(v) = cache.get(&mask) {
                return Ok(*v);
            }
            let v = self.extremes(mask)?;
            cache.insert(mask, v);
            Ok(v)
        };

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let all = full_mask(n);
        let mut starts = alloc::vec![0, all];
        starts.extend((0..budget).map(|_| rng.next_u64() & all));

        for &start in &starts {
            // descend on λ_min
            let mut cur = start;
            let mut val = eval(cur)?.0;
            loop {
                let mut improved = false;
                for bit in 0..n {
                    let cand = cur ^ (1u64 << bit);
                    let v = eval(cand)?.0;
                    if v < val {
                        cur = cand;
                        val = v;
                        improved = true;
                    }
                }
                if !improved {
                    break;
                }
            }
            // ascend on λ_max
            let mut cur = start;
            let mut val = eval(cur)?.1;
            loop {
                let mut improved = false;
                for bit in 0..n {
                    let cand = cur ^ (1u64 << bit);
                    let v = eval(cand)?.1;
                    if v > val {
                        cur = cand;
                        val = v;
                        improved = true;
                    }
                }
                if !improved {
                    break;
                }
            }
        }

        let mut acc = Extremes::new(n);
        for (&mask, &(lo, hi)) in &cache {
            acc.push(mask, lo, hi);
        }
        Ok(acc.finish(threshold, Method::Search))
    }
}

/// Running minimum of `λ_min` and maximum of `λ_max`, with tie lists.
/// Masks must be pushed in ascending order.
struct Extremes {
    n: usize,
    lower: f64,
    upper: f64,
    min_ties: Vec<(u64, f64)>,
    max_ties: Vec<(u64, f64)>,
    truncated: bool,
    count: u64,
}

impl Extremes {
    fn new(n: usize) -> Self {
        Self {
            n,
            lower: f64::INFINITY,
            upper: f64::NEG_INFINITY,
            min_ties: Vec::new(),
            max_ties: Vec::new(),
            truncated: false,
            count: 0,
        }
    }

    fn push(&mut self, mask: u64, lo: f64, hi: f64) {
        self.count += 1;
        if lo < self.lower {
            self.lower = lo;
            let cut = self.lower + tie_tol(self.lower);
            self.min_ties.retain(|&(_, v)| v <= cut);
        }
        if lo <= self.lower + tie_tol(self.lower) {
            if self.min_ties.len() < MAX_TIES {
                self.min_ties.push((mask, lo));
            } else {
                self.truncated = true;
            }
        }
        if hi > self.upper {
            self.upper = hi;
            let cut = self.upper - tie_tol(self.upper);
            self.max_ties.retain(|&(_, v)| v >= cut);
        }
        if hi >= self.upper - tie_tol(self.upper) {
            if self.max_ties.len() < MAX_TIES {
                self.max_ties.push((mask, hi));
            } else {
                self.truncated = true;
            }
        }
    }

    fn finish(self, threshold: f64, method: Method) -> UniversalReport {
        let sel = |m: u64| WeavingSelection {
            n_blocks: self.n,
            mask: m,
        };
        let argmin_ties: Vec<_> = self.min_ties.iter().map(|&(m, _)| sel(m)).collect();
        let argmax_ties: Vec<_> = self.max_ties.iter().map(|&(m, _)| sel(m)).collect();
        UniversalReport {
            lower: self.lower,
            upper: self.upper,
            argmin_sigma: argmin_ties[0],
            argmax_sigma: argmax_ties[0],
            argmin_ties,
            argmax_ties,
            ties_truncated: self.truncated,
            woven: self.lower > threshold,
            threshold,
            method,
            subsets_examined: self.count,
        }
    }
}

/// The weaving `{Λ_m}_{m∈σ} ∪ {Ω_m}_{m∉σ}`.
///
/// Only the block count and the domain must agree; the two families may
/// realise `H_m` with different row counts.
pub fn weave(f: &GFrame, g: &GFrame, sigma: &WeavingSelection) -> Result<GFrame> {
    f.check_compatible(g)?;
    if sigma.n_blocks() != f.len() {
        return Err(Error::LengthMismatch {
            left: f.len(),
            right: sigma.n_blocks(),
        });
    }
    let blocks = (0..f.len())
        .map(|m| {
            if sigma.contains(m) {
                f.block(m).clone()
            } else {
                g.block(m).clone()
            }
        })
        .collect();
    let labels = (0..f.len())
        .map(|m| {
            if sigma.contains(m) {
                f.labels()[m].clone()
            } else {
                g.labels()[m].clone()
            }
        })
        .collect();
    GFrame::new(f.domain_dim(), blocks)?.with_labels(labels)
}

pub fn weaving_bounds(f: &GFrame, g: &GFrame, sigma: &WeavingSelection, tol: f64) -> Result<BoundsReport> {
    weave(f, g, sigma)?.optimal_bounds(tol)
}

fn spectra_grams(f: &GFrame, g: &GFrame) -> Result<(Vec<Matrix>, Vec<Matrix>)> {
    f.check_compatible(g)?;
    Ok((f.block_grams(), g.block_grams()))
}

pub fn universal_bounds_exhaustive(f: &GFrame, g: &GFrame, tol: f64, cap: usize) -> Result<UniversalReport> {
    let (gf, gg) = spectra_grams(f, g)?;
    WeavingSpectra::new(&gf, &gg, f.domain_dim())?.exhaustive(tol, cap)
}

/// Seeded sampling plus single-bit-flip descent (for `λ_min`) and ascent
/// (for `λ_max`) from every sample and from both pure families.
///
/// `lower` over-estimates and `upper` under-estimates the true universal
/// bounds. When `budget ≥ 2^N` every selection is enumerated instead.
pub fn universal_bounds_search(
    f: &GFrame,
    g: &GFrame,
    tol: f64,
    budget: usize,
    seed: u64,
) -> Result<UniversalReport> {
    let (gf, gg) = spectra_grams(f, g)?;
    WeavingSpectra::new(&gf, &gg, f.domain_dim())?.search(tol, budget, seed)
}

pub fn universal_bounds(f: &GFrame, g: &GFrame, tol: f64, strategy: Strategy) -> Result<UniversalReport> {
    match strategy {
        Strategy::Exhaustive { cap } => universal_bounds_exhaustive(f, g, tol, cap),
        Strategy::Search { budget, seed } => universal_bounds_search(f, g, tol, budget, seed),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WovenVerdict {
    pub woven: bool,
    /// False when `woven` only means no counterexample was found.
    pub conclusive: bool,
    /// A selection whose weaving has `λ_min ≤ threshold`.
    pub certificate: Option<WeavingSelection>,
    pub report: UniversalReport,
}

pub fn is_woven(f: &GFrame, g: &GFrame, tol: f64, strategy: Strategy) -> Result<WovenVerdict> {
    let report = universal_bounds(f, g, tol, strategy)?;
    let woven = report.woven;
    Ok(WovenVerdict {
        woven,
        conclusive: !woven || report.method == Method::Exhaustive,
        certificate: (!woven).then_some(report.argmin_sigma),
        report,
    })
}

fn each_selection(n: usize, cap: usize) -> Result<impl Iterator<Item = WeavingSelection>> {
    if n > cap || n >= MAX_BLOCKS {
        return Err(Error::TooManyBlocks { n_blocks: n, cap });
    }
    Ok((0..=full_mask(n)).map(move |mask| WeavingSelection { n_blocks: n, mask }))
}

/// Every weaving is a g-Riesz basis. Returns the first failing selection
/// in ascending mask order.
pub fn is_weaving_g_riesz(
    f: &GFrame,
    g: &GFrame,
    tol: f64,
    cap: usize,
) -> Result<(bool, Option<WeavingSelection>)> {
    f.check_compatible(g)?;
    for sigma in each_selection(f.len(), cap)? {
        if !weave(f, g, &sigma)?.riesz(tol)?.is_riesz {
            return Ok((false, Some(sigma)));
        }
    }
    Ok((true, None))
}

/// Every weaving is a g-orthonormal basis.
pub fn is_weaving_g_onb(
    f: &GFrame,
    g: &GFrame,
    tol: f64,
    cap: usize,
) -> Result<(bool, Option<WeavingSelection>)> {
    f.check_compatible(g)?;
    for sigma in each_selection(f.len(), cap)? {
        if !weave(f, g, &sigma)?.orthonormality(tol)?.is_onb {
            return Ok((false, Some(sigma)));
        }
    }
    Ok((true, None))
}

const SLACK: f64 = 1e-9;

struct PairBounds {
    a1: f64,
    b1: f64,
    a2: f64,
    b2: f64,
    universal: UniversalReport,
}

fn pair_bounds(f: &GFrame, g: &GFrame, cap: usize) -> Result<PairBounds> {
    let bf = f.optimal_bounds(DEFAULT_TOL)?;
    let bg = g.optimal_bounds(DEFAULT_TOL)?;
    let universal = universal_bounds_exhaustive(f, g, DEFAULT_TOL, cap)?;
    Ok(PairBounds {
        a1: bf.lower,
        b1: bf.upper,
        a2: bg.lower,
        b2: bg.upper,
        universal,
    })
}

fn with_pair(rec: VerificationRecord, p: &PairBounds) -> VerificationRecord {
    rec.value("A", p.universal.lower)
        .value("B", p.universal.upper)
        .value("A1", p.a1)
        .value("B1", p.b1)
        .value("A2", p.a2)
        .value("B2", p.b2)
}

/// `B1 + B2` is a universal upper bound for any two g-frames.
pub fn check_prop_upper_sum(f: &GFrame, g: &GFrame, cap: usize) -> Result<VerificationRecord> {
    let p = pair_bounds(f, g, cap)?;
    Ok(with_pair(VerificationRecord::new("upper-sum"), &p)
        .require(p.universal.upper <= p.b1 + p.b2 + SLACK, "B <= B1 + B2"))
}

/// Optimal universal bounds sit outside the individual optimal bounds:
/// `A ≤ min(A1, A2)` and `B ≥ max(B1, B2)`.
pub fn check_optimal_vs_universal(f: &GFrame, g: &GFrame, cap: usize) -> Result<VerificationRecord> {
    let p = pair_bounds(f, g, cap)?;
    if !p.universal.woven {
        return Err(Error::NotWoven {
            lower: p.universal.lower,
        });
    }
    let u = &p.universal;
    Ok(with_pair(VerificationRecord::new("optimal-vs-universal"), &p)
        .require(u.lower <= p.a1.min(p.a2) + SLACK, "A <= min(A1, A2)")
        .require(u.upper >= p.b1.max(p.b2) - SLACK, "B >= max(B1, B2)"))
}

/// Neither `A1 + A2` nor `B1 + B2` is an optimal universal bound.
pub fn check_sum_not_optimal(f: &GFrame, g: &GFrame, cap: usize) -> Result<VerificationRecord> {
    let p = pair_bounds(f, g, cap)?;
    if !p.universal.woven {
        return Err(Error::NotWoven {
            lower: p.universal.lower,
        });
    }
    let u = &p.universal;
    Ok(with_pair(VerificationRecord::new("sum-not-optimal"), &p)
        .require(u.lower < p.a1 + p.a2 - SLACK, "A < A1 + A2")
        .require(u.upper < p.b1 + p.b2 - SLACK, "B < B1 + B2"))
}

/// A g-frame and its canonical dual are woven with universal bounds
/// `min{1/(2B1), 1/(2B2)}` and `B1 + B2`.
pub fn check_dual_weaving(f: &GFrame, cap: usize) -> Result<VerificationRecord> {
    let dual = f.canonical_dual()?;
    let p = pair_bounds(f, &dual, cap)?;
    let guaranteed = (1.0 / (2.0 * p.b1)).min(1.0 / (2.0 * p.b2));
    Ok(with_pair(VerificationRecord::new("dual-weaving"), &p)
        .value("guaranteed_lower", guaranteed)
        .require(p.universal.lower >= guaranteed - SLACK, "A >= min(1/(2B1), 1/(2B2))")
        .require(p.universal.upper <= p.b1 + p.b2 + SLACK, "B <= B1 + B2"))
}

/// `{Λ_m S^{-1/2}}` and `{Ω_m S^{-1/2}}` stay woven with universal bounds
/// inside `[A/B, B/A]`, `S` being the frame operator of the first family.
pub fn check_sqrt_inv_weaving(f: &GFrame, g: &GFrame, cap: usize) -> Result<VerificationRecord> {
    let before = universal_bounds_exhaustive(f, g, DEFAULT_TOL, cap)?;
    if !before.woven {
        return Err(Error::NotWoven { lower: before.lower });
    }
    let fo = f.frame_operator()?;
    let r = crate::numkernel::inv_sqrt_psd(&fo.s)?;
    let tf = f.compose_right(&r)?;
    let tg = g.compose_right(&r)?;
    let after = universal_bounds_exhaustive(&tf, &tg, DEFAULT_TOL, cap)?;
    let (a, b) = (before.lower, before.upper);
    let parseval = (&tf.frame_operator_matrix() - &Matrix::identity(f.domain_dim())).frobenius_norm();
    Ok(VerificationRecord::new("sqrt-inverse-weaving")
        .value("A", a)
        .value("B", b)
        .value("A_transformed", after.lower)
        .value("B_transformed", after.upper)
        .value("parseval_residual", parseval)
        .require(after.woven, "transformed pair woven")
        .require(after.lower >= a / b - SLACK, "A' >= A/B")
        .require(after.upper <= b / a + SLACK, "B' <= B/A")
        .require(parseval <= 1e-8, "transformed first family is Parseval"))
}

/// Composing weaving g-orthonormal bases with a unitary keeps them weaving
/// g-orthonormal bases. Rejects a non-unitary `u` with both residuals.
pub fn check_onb_weaving_unitary(
    f: &GFrame,
    g: &GFrame,
    u: &Matrix,
    tol: f64,
    cap: usize,
) -> Result<VerificationRecord> {
    let d = f.domain_dim();
    if !u.is_square() || u.rows() != d {
        return Err(Error::ShapeMismatch(format!(
            "operator is {}x{}, domain dimension {}",
            u.rows(),
            u.cols(),
            d
        )));
    }
    let id = Matrix::identity(d);
    let isometry = (&(&u.adjoint() * u) - &id).frobenius_norm();
    let surjectivity = (&(u * &u.adjoint()) - &id).frobenius_norm();
    if isometry > tol || surjectivity > tol {
        return Err(Error::NotUnitary {
            isometry,
            surjectivity,
        });
    }
    let (before, _) = is_weaving_g_onb(f, g, tol, cap)?;
    let (after, failing) = is_weaving_g_onb(&f.compose_right(u)?, &g.compose_right(u)?, tol, cap)?;
    let mut rec = VerificationRecord::new("unitary-onb-weaving")
        .value("isometry_residual", isometry)
        .value("surjectivity_residual", surjectivity)
        .require(before, "input pair is weaving g-orthonormal")
        .require(after, "composed pair is weaving g-orthonormal");
    if let Some(s) = failing {
        rec = rec.note(&format!("composed weaving fails at σ={s}"));
    }
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn family(d: usize, rows: &[&[f64]]) -> GFrame {
        let blocks: Vec<(usize, Vec<f64>)> = rows.iter().map(|r| (1, r.to_vec())).collect();
        GFrame::from_real_blocks(d, &blocks).unwrap()
    }

    #[test]
    fn selection_basics() {
        let s = WeavingSelection::from_one_based(9, &[2]).unwrap();
        assert_eq!(s.bitstring(), "0b000000010");
        assert_eq!(alloc::format!("{s}"), "{2}");
        assert_eq!(s.complement().members().len(), 8);
        assert!(WeavingSelection::new(3, 0b1000).is_err());
        assert!(WeavingSelection::from_members(3, &[3]).is_err());
        assert_eq!(WeavingSelection::full(64).mask(), u64::MAX);
    }

    #[test]
    fn weave_extremes() {
        let f = family(2, &[&[1.0, 0.0], &[0.0, 1.0]]);
        let g = family(2, &[&[2.0, 0.0], &[0.0, 3.0]]);
        assert_eq!(weave(&f, &g, &WeavingSelection::full(2)).unwrap().blocks(), f.blocks());
        assert_eq!(weave(&f, &g, &WeavingSelection::empty(2)).unwrap().blocks(), g.blocks());
        let bad = WeavingSelection::empty(3);
        assert!(matches!(weave(&f, &g, &bad), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn exhaustive_cap_enforced() {
        let f = family(1, &[&[1.0], &[1.0], &[1.0]]);
        assert!(matches!(
            universal_bounds_exhaustive(&f, &f, DEFAULT_TOL, 2),
            Err(Error::TooManyBlocks { n_blocks: 3, cap: 2 })
        ));
    }

    #[test]
    fn scalar_weavings_enumerated() {
        // S_σ ∈ {2, 1.25, 1.25, 0.5}
        let f = family(1, &[&[1.0], &[1.0]]);
        let g = family(1, &[&[0.5], &[0.5]]);
        let r = universal_bounds_exhaustive(&f, &g, DEFAULT_TOL, 20).unwrap();
        assert!((r.lower - 0.5).abs() < 1e-15);
        assert!((r.upper - 2.0).abs() < 1e-15);
        assert_eq!(r.argmin_sigma.mask(), 0);
        assert_eq!(r.argmax_sigma.mask(), 0b11);
        assert_eq!(r.subsets_examined, 4);
        assert!(r.woven);
    }

    #[test]
    fn ties_are_listed_in_mask_order() {
        let f = family(1, &[&[1.0], &[0.0]]);
        let g = family(1, &[&[0.0], &[1.0]]);
        // σ={1} gives 2, σ={2} gives 0, ∅ and full give 1
        let r = universal_bounds_exhaustive(&f, &g, DEFAULT_TOL, 20).unwrap();
        assert_eq!(r.lower, 0.0);
        assert_eq!(r.argmin_sigma.one_based(), vec![2]);
        assert!(!r.woven);
        let v = is_woven(&f, &g, DEFAULT_TOL, Strategy::default()).unwrap();
        assert_eq!(v.certificate.unwrap().one_based(), vec![2]);
        assert!(v.conclusive);
    }

    #[test]
    fn search_budget_zero_rejected() {
        let f = family(1, &[&[1.0]]);
        assert!(universal_bounds_search(&f, &f, DEFAULT_TOL, 0, 1).is_err());
    }

    #[test]
    fn non_unitary_rejected() {
        let f = family(2, &[&[1.0, 0.0], &[0.0, 1.0]]);
        let err = check_onb_weaving_unitary(&f, &f, &Matrix::identity(2).scale_real(2.0), 1e-8, 20);
        match err {
            Err(Error::NotUnitary {
                isometry,
                surjectivity,
            }) => {
                assert!((isometry - 3.0 * 2f64.sqrt()).abs() < 1e-12);
                assert!((surjectivity - 3.0 * 2f64.sqrt()).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
