//! Internal dense kernels: cut reshaping, sorted complex SVD, small
//! Hermitian eigenproblems.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::state::{Bipartition, HilbertDims, PureState};

/// Reshapes a state into the matrix of the given cut. Row index runs over
/// the cut parties (ascending, first one most significant), column index
/// over the complement, both inheriting the global index convention.
/// Returns the matrix together with the two party lists.
pub(crate) fn to_matrix(
    state: &PureState,
    cut: &Bipartition,
) -> (DMatrix<Complex64>, Vec<usize>, Vec<usize>) {
    let dims = state.dims();
    let left = cut.left().to_vec();
    let right = cut.right();
    let d_left: usize = left.iter().map(|&p| dims.dims()[p]).product();
    let d_right: usize = right.iter().map(|&p| dims.dims()[p]).product();
    let mut m = DMatrix::zeros(d_left, d_right);
    for (flat, &amp) in state.amps().iter().enumerate() {
        let multi = dims.multi_index(flat);
        let mut r = 0usize;
        for &p in &left {
            r = r * dims.dims()[p] + multi[p];
        }
        let mut c = 0usize;
        for &p in &right {
            c = c * dims.dims()[p] + multi[p];
        }
        m[(r, c)] = amp;
    }
    (m, left, right)
}

/// Sub-dims of a party subset.
pub(crate) fn sub_dims(dims: &HilbertDims, parties: &[usize]) -> HilbertDims {
    HilbertDims::new(parties.iter().map(|&p| dims.dims()[p]).collect::<Vec<_>>())
        .expect("subset of valid dims is valid")
}

/// Thin SVD with singular values sorted in decreasing order.
/// Returns (U, sigma, V_t) with `m = U diag(sigma) V_t`.
pub(crate) fn svd_sorted(m: &DMatrix<Complex64>) -> (DMatrix<Complex64>, Vec<f64>, DMatrix<Complex64>) {
    let svd = m.clone().svd(true, true);
    let u = svd.u.expect("u requested");
    let v_t = svd.v_t.expect("v_t requested");
    let sigma: Vec<f64> = svd.singular_values.iter().copied().collect();
    let mut order: Vec<usize> = (0..sigma.len()).collect();
    order.sort_by(|&i, &j| sigma[j].partial_cmp(&sigma[i]).unwrap());
    let sigma_sorted: Vec<f64> = order.iter().map(|&i| sigma[i]).collect();
    let u_sorted = DMatrix::from_fn(u.nrows(), order.len(), |r, c| u[(r, order[c])]);
    let v_t_sorted = DMatrix::from_fn(order.len(), v_t.ncols(), |r, c| v_t[(order[r], c)]);
    (u_sorted, sigma_sorted, v_t_sorted)
}

/// Singular values only, sorted in decreasing order.
pub(crate) fn singular_values_sorted(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut s: Vec<f64> = m.clone().singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    s
}

/// Largest eigenpair of a Hermitian matrix.
pub(crate) fn hermitian_top_eigenpair(m: &DMatrix<Complex64>) -> (f64, DVector<Complex64>) {
    let eig = nalgebra::SymmetricEigen::new(m.clone());
    let mut best = 0usize;
    for i in 1..eig.eigenvalues.len() {
        if eig.eigenvalues[i] > eig.eigenvalues[best] {
            best = i;
        }
    }
    (eig.eigenvalues[best], eig.eigenvectors.column(best).into_owned())
}

/// Max deviation of the Gram matrix from the identity.
pub(crate) fn gram_error(states: &[PureState]) -> f64 {
    let mut err: f64 = 0.0;
    for i in 0..states.len() {
        for j in i..states.len() {
            let g = states[i].inner(&states[j]);
            let target = if i == j { Complex64::ONE } else { Complex64::ZERO };
            err = err.max((g - target).norm());
        }
    }
    err
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{random_state, HilbertDims};

    #[test]
    fn svd_reconstructs_and_sorts() {
        let h = HilbertDims::new(vec![2, 3, 2]).unwrap();
        let s = random_state(&h, 5);
        let cut = Bipartition::new([0, 2], 3).unwrap();
        let (m, left, right) = to_matrix(&s, &cut);
        assert_eq!(left, vec![0, 2]);
        assert_eq!(right, vec![1]);
        assert_eq!((m.nrows(), m.ncols()), (4, 3));
        let (u, sigma, v_t) = svd_sorted(&m);
        assert!(sigma.windows(2).all(|w| w[0] >= w[1]));
        let diag = DMatrix::from_fn(sigma.len(), sigma.len(), |r, c| {
            if r == c {
                Complex64::new(sigma[r], 0.0)
            } else {
                Complex64::ZERO
            }
        });
        let rebuilt = &u * diag * &v_t;
        assert!((&rebuilt - &m).norm() < 1e-12);
    }

    #[test]
    fn hermitian_top_eigenpair_on_projector() {
        let v = DVector::from_vec(vec![
            Complex64::new(0.6, 0.0),
            Complex64::new(0.0, 0.8),
        ]);
        let m = &v * v.adjoint();
        let (lambda, vec) = hermitian_top_eigenpair(&m);
        assert!((lambda - 1.0).abs() < 1e-12);
        let overlap = (vec.adjoint() * &v)[(0, 0)].norm();
        assert!((overlap - 1.0).abs() < 1e-10);
    }
}
