//! Dense multipartite pure states and their elementary algebra.
//!
//! A state lives on an explicit list of party dimensions `d_0, ..., d_{n-1}`
//! (each at least 2) and stores its amplitudes flat. The index convention is
//! fixed and part of the I/O contract: basis label `(i_0, ..., i_{n-1})` maps
//! to flat index `sum_k i_k * prod_{j>k} d_j`, i.e. party 0 is most
//! significant, matching the usual reading of a ket string `|i_0 i_1 ...>`.
//!
//! All values are immutable after construction and every operation is pure,
//! so everything here is safe to share across threads.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rng;
use crate::tol;

/// Party dimensions of a multipartite Hilbert space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertDims {
    dims: Vec<usize>,
}

impl HilbertDims {
    /// Validates `n >= 1` and every `d_k >= 2`.
    pub fn new(dims: impl Into<Vec<usize>>) -> Result<Self> {
        let dims = dims.into();
        if dims.is_empty() {
            return Err(Error::InvalidDims("need at least one party".into()));
        }
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidDims(format!(
                "every local dimension must be at least 2, got {d}"
            )));
        }
        Ok(Self { dims })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn n_parties(&self) -> usize {
        self.dims.len()
    }

    /// Total dimension `D = prod_k d_k`.
    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// `strides[k] = prod_{j>k} d_j`, so `flat = sum_k i_k * strides[k]`.
    pub fn strides(&self) -> Vec<usize> {
        let n = self.dims.len();
        let mut s = vec![1usize; n];
        for k in (0..n.saturating_sub(1)).rev() {
            s[k] = s[k + 1] * self.dims[k + 1];
        }
        s
    }

    /// Flat index of a basis label. Panics if the label is out of range.
    pub fn flat_index(&self, multi: &[usize]) -> usize {
        assert_eq!(multi.len(), self.dims.len(), "label length != party count");
        let mut flat = 0usize;
        for (k, (&i, &d)) in multi.iter().zip(&self.dims).enumerate() {
            assert!(i < d, "label {i} out of range for party {k} (dim {d})");
            flat = flat * d + i;
        }
        flat
    }

    /// Basis label of a flat index.
    pub fn multi_index(&self, flat: usize) -> Vec<usize> {
        let mut out = vec![0usize; self.dims.len()];
        let mut rem = flat;
        for k in (0..self.dims.len()).rev() {
            out[k] = rem % self.dims[k];
            rem /= self.dims[k];
        }
        out
    }
}

/// A cut of the parties into a nonempty proper subset and its complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    left: Vec<usize>,
    n_parties: usize,
}

impl Bipartition {
    pub fn new(left: impl IntoIterator<Item = usize>, n_parties: usize) -> Result<Self> {
        let mut left: Vec<usize> = left.into_iter().collect();
        left.sort_unstable();
        left.dedup();
        if left.is_empty() || left.len() >= n_parties {
            return Err(Error::InvalidCut(format!(
                "cut must be a nonempty proper subset of 0..{n_parties}"
            )));
        }
        if let Some(&p) = left.iter().find(|&&p| p >= n_parties) {
            return Err(Error::InvalidCut(format!(
                "party {p} out of range for {n_parties} parties"
            )));
        }
        Ok(Self { left, n_parties })
    }

    /// Single party `p` against the rest.
    pub fn single(party: usize, n_parties: usize) -> Result<Self> {
        Self::new([party], n_parties)
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> Vec<usize> {
        (0..self.n_parties).filter(|p| !self.left.contains(p)).collect()
    }

    pub fn n_parties(&self) -> usize {
        self.n_parties
    }
}

/// Dense pure state: amplitudes over the flat basis of `dims`.
#[derive(Debug, Clone)]
pub struct PureState {
    dims: HilbertDims,
    amps: Vec<Complex64>,
}

impl PureState {
    /// Wraps raw amplitudes; checks the length against `dims` but does not
    /// normalize.
    pub fn new(dims: HilbertDims, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != dims.total_dim() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} amplitudes for dims {:?}, got {}",
                dims.total_dim(),
                dims.dims(),
                amps.len()
            )));
        }
        Ok(Self { dims, amps })
    }

    /// Computational basis state `|i_0 i_1 ...>`.
    pub fn basis_state(dims: HilbertDims, labels: &[usize]) -> Result<Self> {
        if labels.len() != dims.n_parties() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} labels, got {}",
                dims.n_parties(),
                labels.len()
            )));
        }
        let flat = dims.flat_index(labels);
        let mut amps = vec![Complex64::ZERO; dims.total_dim()];
        amps[flat] = Complex64::ONE;
        Ok(Self { dims, amps })
    }

    pub fn dims(&self) -> &HilbertDims {
        &self.dims
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amp(&self, multi: &[usize]) -> Complex64 {
        self.amps[self.dims.flat_index(multi)]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `<self|other>`, conjugating `self`. Panics on mismatched dims.
    pub fn inner(&self, other: &PureState) -> Complex64 {
        assert_eq!(self.dims, other.dims, "inner product across mismatched dims");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|<self|other>|` — the phase-blind comparison primitive. Two unit
    /// states agree up to global phase when this is close to 1.
    pub fn overlap(&self, other: &PureState) -> f64 {
        self.inner(other).norm()
    }

    /// Reorders parties: new party `i` is old party `order[i]`.
    pub fn permute_parties(&self, order: &[usize]) -> Result<PureState> {
        let n = self.dims.n_parties();
        let mut seen = vec![false; n];
        if order.len() != n || order.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidDims(format!(
                "order {:?} is not a permutation of 0..{n}",
                order
            )));
        }
        let new_dims = HilbertDims::new(
            order.iter().map(|&p| self.dims.dims()[p]).collect::<Vec<_>>(),
        )?;
        let mut amps = vec![Complex64::ZERO; self.amps.len()];
        let mut old_multi = vec![0usize; n];
        for (flat, amp) in amps.iter_mut().enumerate() {
            let new_multi = new_dims.multi_index(flat);
            for (i, &p) in order.iter().enumerate() {
                old_multi[p] = new_multi[i];
            }
            *amp = self.amps[self.dims.flat_index(&old_multi)];
        }
        PureState::new(new_dims, amps)
    }
}

/// Rescales to unit norm, preserving the global phase.
pub fn normalize(state: &PureState) -> Result<PureState> {
    let norm = state.norm();
    if norm <= tol::ZERO_VECTOR_TOL {
        return Err(Error::ZeroVector);
    }
    let amps = state.amps.iter().map(|z| z / norm).collect();
    PureState::new(state.dims.clone(), amps)
}

/// Normalized tensor product of one local vector per party. Dimensions are
/// read off the factor lengths.
pub fn product_state(factors: &[Vec<Complex64>]) -> Result<PureState> {
    let dims = HilbertDims::new(factors.iter().map(|f| f.len()).collect::<Vec<_>>())?;
    for f in factors {
        let n: f64 = f.iter().map(|z| z.norm_sqr()).sum();
        if n.sqrt() <= tol::ZERO_VECTOR_TOL {
            return Err(Error::ZeroVector);
        }
    }
    let mut amps = vec![Complex64::ONE; dims.total_dim()];
    let strides = dims.strides();
    for (flat, amp) in amps.iter_mut().enumerate() {
        for (k, f) in factors.iter().enumerate() {
            let i = (flat / strides[k]) % f.len();
            *amp *= f[i];
        }
    }
    normalize(&PureState::new(dims, amps)?)
}

/// Assembles a full state from disjoint blocks of parties. Each block pairs
/// the (strictly increasing) global party indices it covers with a state on
/// those parties; together the blocks must cover every party exactly once.
pub fn tensor_blocks(blocks: &[(Vec<usize>, PureState)]) -> Result<PureState> {
    let n: usize = blocks.iter().map(|(ps, _)| ps.len()).sum();
    let mut dims = vec![0usize; n];
    let mut owner = vec![usize::MAX; n];
    for (bi, (parties, state)) in blocks.iter().enumerate() {
        if parties.len() != state.dims().n_parties() {
            return Err(Error::DimensionMismatch(
                "block party list does not match its state".into(),
            ));
        }
        if parties.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidDims("block parties must be strictly increasing".into()));
        }
        for (slot, &p) in parties.iter().enumerate() {
            if p >= n || owner[p] != usize::MAX {
                return Err(Error::InvalidDims(format!(
                    "blocks must partition the parties; party {p} misassigned"
                )));
            }
            owner[p] = bi;
            dims[p] = state.dims().dims()[slot];
        }
    }
    let dims = HilbertDims::new(dims)?;
    let mut amps = vec![Complex64::ONE; dims.total_dim()];
    for (flat, amp) in amps.iter_mut().enumerate() {
        let multi = dims.multi_index(flat);
        for (parties, state) in blocks {
            let sub: Vec<usize> = parties.iter().map(|&p| multi[p]).collect();
            *amp *= state.amps()[state.dims().flat_index(&sub)];
        }
    }
    PureState::new(dims, amps)
}

/// Normalized `a|psi> + b|p>`. Both coefficients must be nontrivial and the
/// states must share dims; a vanishing combination (possible only when the
/// two states are parallel) is rejected.
pub fn superpose(
    a: Complex64,
    psi: &PureState,
    b: Complex64,
    p: &PureState,
) -> Result<PureState> {
    if a.norm() <= tol::TRIVIAL_COEFF_TOL || b.norm() <= tol::TRIVIAL_COEFF_TOL {
        return Err(Error::TrivialCoefficient);
    }
    if psi.dims != p.dims {
        return Err(Error::DimensionMismatch(format!(
            "cannot superpose states over dims {:?} and {:?}",
            psi.dims.dims(),
            p.dims.dims()
        )));
    }
    let amps: Vec<Complex64> = psi
        .amps
        .iter()
        .zip(&p.amps)
        .map(|(x, y)| a * x + b * y)
        .collect();
    normalize(&PureState::new(psi.dims.clone(), amps)?)
}

/// Haar-random unit state: i.i.d. complex Gaussian amplitudes, normalized.
/// Deterministic for a fixed seed.
pub fn random_state(dims: &HilbertDims, seed: u64) -> PureState {
    let mut rng = rng::stream(seed, 0);
    let amps = rng::unit_vector(&mut rng, dims.total_dim());
    PureState::new(dims.clone(), amps).expect("length matches by construction")
}

/// Independent Haar-random local factor on each party, tensored together.
/// Deterministic for a fixed seed.
pub fn random_product_state(dims: &HilbertDims, seed: u64) -> PureState {
    let mut rng = rng::stream(seed, 0);
    let factors: Vec<Vec<Complex64>> = dims
        .dims()
        .iter()
        .map(|&d| rng::unit_vector(&mut rng, d))
        .collect();
    product_state(&factors).expect("factors are unit vectors")
}

/// Applies a `d x d` unitary to one party.
pub fn apply_local_unitary(
    state: &PureState,
    party: usize,
    u: &DMatrix<Complex64>,
) -> Result<PureState> {
    let n = state.dims.n_parties();
    if party >= n {
        return Err(Error::IndexOutOfRange { index: party, len: n });
    }
    let d = state.dims.dims()[party];
    if u.nrows() != d || u.ncols() != d {
        return Err(Error::DimensionMismatch(format!(
            "unitary is {}x{} but party {party} has dimension {d}",
            u.nrows(),
            u.ncols()
        )));
    }
    let stride = state.dims.strides()[party];
    let mut amps = vec![Complex64::ZERO; state.amps.len()];
    for (flat, amp) in amps.iter_mut().enumerate() {
        let i = (flat / stride) % d;
        let base = flat - i * stride;
        for j in 0..d {
            *amp += u[(i, j)] * state.amps[base + j * stride];
        }
    }
    PureState::new(state.dims.clone(), amps)
}
