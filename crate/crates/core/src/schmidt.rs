//! Schmidt analysis across bipartitions and separability classification.

use num_complex::Complex64;

use crate::linalg;
use crate::state::{normalize, Bipartition, PureState};
use crate::tol;

/// Singular-value form of a state across one cut.
///
/// All `min(D_left, D_right)` coefficients are retained, in decreasing
/// order, so the reconstruction `sum_i coeffs[i] left[i] (x) right[i]`
/// reproduces the input exactly; `rank` counts only the coefficients above
/// `tol * coeffs[0]`.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    pub cut: Bipartition,
    pub coeffs: Vec<f64>,
    pub left_states: Vec<PureState>,
    pub right_states: Vec<PureState>,
    pub rank: usize,
}

/// Coarseness of a state's finest product factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparabilityTag {
    CompletelyProduct,
    Biseparable,
    GenuinelyEntangled,
}

/// Finest grouping of parties into product factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparabilityClass {
    pub tag: SeparabilityTag,
    /// Blocks of party indices, each sorted, ordered by smallest member.
    pub partition: Vec<Vec<usize>>,
}

impl SeparabilityTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            SeparabilityTag::CompletelyProduct => "COMPLETELY_PRODUCT",
            SeparabilityTag::Biseparable => "BISEPARABLE",
            SeparabilityTag::GenuinelyEntangled => "GENUINELY_ENTANGLED",
        }
    }
}

/// Schmidt coefficients across a cut, decreasing; no factor states.
pub fn schmidt_coeffs(state: &PureState, cut: &Bipartition) -> Vec<f64> {
    let (m, _, _) = linalg::to_matrix(state, cut);
    linalg::singular_values_sorted(&m)
}

/// Number of Schmidt coefficients above `tol * coeffs[0]`. Rank 1 exactly
/// when the state is product across the cut.
pub fn schmidt_rank(state: &PureState, cut: &Bipartition, tol: f64) -> usize {
    let coeffs = schmidt_coeffs(state, cut);
    count_rank(&coeffs, tol)
}

fn count_rank(coeffs: &[f64], tol: f64) -> usize {
    if coeffs.is_empty() || coeffs[0] <= 0.0 {
        return 0;
    }
    coeffs.iter().filter(|&&s| s > tol * coeffs[0]).count()
}

/// Full Schmidt decomposition across a cut. Expects a normalized state.
pub fn schmidt_decompose(state: &PureState, cut: &Bipartition, tol: f64) -> SchmidtDecomposition {
    let (m, left_parties, right_parties) = linalg::to_matrix(state, cut);
    let (u, coeffs, v_t) = linalg::svd_sorted(&m);
    let left_dims = linalg::sub_dims(state.dims(), &left_parties);
    let right_dims = linalg::sub_dims(state.dims(), &right_parties);
    let k = coeffs.len();
    let left_states = (0..k)
        .map(|i| {
            let amps: Vec<Complex64> = (0..u.nrows()).map(|r| u[(r, i)]).collect();
            PureState::new(left_dims.clone(), amps).expect("column length matches")
        })
        .collect();
    let right_states = (0..k)
        .map(|i| {
            let amps: Vec<Complex64> = (0..v_t.ncols()).map(|c| v_t[(i, c)]).collect();
            PureState::new(right_dims.clone(), amps).expect("row length matches")
        })
        .collect();
    let rank = count_rank(&coeffs, tol);
    SchmidtDecomposition {
        cut: cut.clone(),
        coeffs,
        left_states,
        right_states,
        rank,
    }
}

/// Splits a state into its finest product blocks, recursively cutting along
/// any bipartition of Schmidt rank 1 (lowest-index cut first; the result is
/// independent of that order by uniqueness of the finest factorization).
/// Returns (global party indices, factor state) per block, ordered by
/// smallest party index.
pub fn finest_factorization(state: &PureState, tol: f64) -> Vec<(Vec<usize>, PureState)> {
    let parties: Vec<usize> = (0..state.dims().n_parties()).collect();
    let mut out = Vec::new();
    split_block(parties, state.clone(), tol, &mut out);
    out.sort_by_key(|(ps, _)| ps[0]);
    out
}

fn split_block(parties: Vec<usize>, state: PureState, tol: f64, out: &mut Vec<(Vec<usize>, PureState)>) {
    let k = parties.len();
    if k == 1 {
        out.push((parties, state));
        return;
    }
    // Masks over local positions that contain position 0, ascending; the
    // full mask is excluded.
    let full = (1usize << k) - 1;
    let mut mask = 1usize;
    while mask < full {
        let cut = Bipartition::new(
            (0..k).filter(|&b| mask & (1 << b) != 0),
            k,
        )
        .expect("mask is a proper nonempty subset");
        let sd = schmidt_decompose(&state, &cut, tol);
        if sd.rank == 1 {
            let left: Vec<usize> = (0..k).filter(|&b| mask & (1 << b) != 0).map(|b| parties[b]).collect();
            let right: Vec<usize> = (0..k).filter(|&b| mask & (1 << b) == 0).map(|b| parties[b]).collect();
            let ls = normalize(&sd.left_states[0]).expect("top Schmidt vector is unit");
            let rs = normalize(&sd.right_states[0]).expect("top Schmidt vector is unit");
            split_block(left, ls, tol, out);
            split_block(right, rs, tol, out);
            return;
        }
        mask += 2;
    }
    out.push((parties, state));
}

/// Tag plus finest partition. Expects a normalized state.
pub fn separability_class(state: &PureState, tol: f64) -> SeparabilityClass {
    let blocks = finest_factorization(state, tol);
    let n = state.dims().n_parties();
    let partition: Vec<Vec<usize>> = blocks.iter().map(|(ps, _)| ps.clone()).collect();
    let tag = if partition.len() == n {
        SeparabilityTag::CompletelyProduct
    } else if partition.len() == 1 {
        SeparabilityTag::GenuinelyEntangled
    } else {
        SeparabilityTag::Biseparable
    };
    SeparabilityClass { tag, partition }
}

/// Per-party local factors when the state is completely product, in party
/// order; `None` otherwise.
pub fn product_factors(state: &PureState, tol: f64) -> Option<Vec<PureState>> {
    let blocks = finest_factorization(state, tol);
    if blocks.len() != state.dims().n_parties() {
        return None;
    }
    Some(blocks.into_iter().map(|(_, s)| s).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{
        apply_local_unitary, product_state, random_state, superpose, HilbertDims, PureState,
    };
    use crate::{rng, tol};
    use nalgebra::DMatrix;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ket(dims: &[usize], labels: &[usize]) -> PureState {
        PureState::basis_state(HilbertDims::new(dims.to_vec()).unwrap(), labels).unwrap()
    }

    fn ghz() -> PureState {
        let a = ket(&[2, 2, 2], &[0, 0, 0]);
        let b = ket(&[2, 2, 2], &[1, 1, 1]);
        let r = c(0.5f64.sqrt(), 0.0);
        superpose(r, &a, r, &b).unwrap()
    }

    fn w_state() -> PureState {
        let h = HilbertDims::new(vec![2, 2, 2]).unwrap();
        let mut amps = vec![Complex64::ZERO; 8];
        let v = c((1.0f64 / 3.0).sqrt(), 0.0);
        amps[h.flat_index(&[0, 0, 1])] = v;
        amps[h.flat_index(&[0, 1, 0])] = v;
        amps[h.flat_index(&[1, 0, 0])] = v;
        PureState::new(h, amps).unwrap()
    }

    #[test]
    fn ghz_single_cut_coeffs_are_equal() {
        let cut = Bipartition::single(0, 3).unwrap();
        let sd = schmidt_decompose(&ghz(), &cut, tol::RANK_TOL);
        assert_eq!(sd.rank, 2);
        let r = 0.5f64.sqrt();
        assert!((sd.coeffs[0] - r).abs() < 1e-12);
        assert!((sd.coeffs[1] - r).abs() < 1e-12);
    }

    #[test]
    fn w_state_cut_coeffs_match_reduced_density_spectrum() {
        // Oracle: eigenvalues of the 2x2 reduced density matrix are 2/3 and
        // 1/3, so the coefficients are their square roots.
        let cut = Bipartition::single(0, 3).unwrap();
        let sd = schmidt_decompose(&w_state(), &cut, tol::RANK_TOL);
        assert_eq!(sd.rank, 2);
        assert!((sd.coeffs[0] - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert!((sd.coeffs[1] - (1.0f64 / 3.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn rank3_state_has_three_equal_coeffs() {
        let h = HilbertDims::new(vec![3, 2, 2]).unwrap();
        let mut amps = vec![Complex64::ZERO; 12];
        let v = c((1.0f64 / 3.0).sqrt(), 0.0);
        amps[h.flat_index(&[0, 0, 0])] = v;
        amps[h.flat_index(&[1, 0, 1])] = v;
        amps[h.flat_index(&[2, 1, 0])] = v;
        let s = PureState::new(h, amps).unwrap();
        let cut = Bipartition::single(0, 3).unwrap();
        let sd = schmidt_decompose(&s, &cut, tol::RANK_TOL);
        assert_eq!(sd.rank, 3);
        for k in 0..3 {
            assert!((sd.coeffs[k] - (1.0f64 / 3.0).sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn four_qubit_pair_cut_rank_three() {
        let h = HilbertDims::new(vec![2, 2, 2, 2]).unwrap();
        let mut amps = vec![Complex64::ZERO; 16];
        let v = c((1.0f64 / 3.0).sqrt(), 0.0);
        amps[h.flat_index(&[0, 0, 0, 0])] = v;
        amps[h.flat_index(&[0, 1, 0, 1])] = v;
        amps[h.flat_index(&[1, 0, 1, 0])] = v;
        let s = PureState::new(h, amps).unwrap();
        let cut = Bipartition::new([0, 1], 4).unwrap();
        assert_eq!(schmidt_rank(&s, &cut, tol::RANK_TOL), 3);
    }

    #[test]
    fn product_states_have_rank_one_everywhere_and_bell_spectator_splits() {
        let p = product_state(&[
            vec![c(0.3, 0.1), c(0.9, -0.2)],
            vec![c(1.0, 0.0), c(0.5, 0.5)],
            vec![c(0.2, 0.0), c(0.0, 1.0)],
        ])
        .unwrap();
        for cut in [
            Bipartition::single(0, 3).unwrap(),
            Bipartition::single(1, 3).unwrap(),
            Bipartition::single(2, 3).unwrap(),
            Bipartition::new([0, 1], 3).unwrap(),
        ] {
            assert_eq!(schmidt_rank(&p, &cut, tol::RANK_TOL), 1);
        }

        // Bell pair on {0,1} with a spectator qubit on {2}.
        let bell = superpose(
            c(0.5f64.sqrt(), 0.0),
            &ket(&[2, 2], &[0, 0]),
            c(0.5f64.sqrt(), 0.0),
            &ket(&[2, 2], &[1, 1]),
        )
        .unwrap();
        let full = crate::state::tensor_blocks(&[(vec![0, 1], bell), (vec![2], ket(&[2], &[0]))])
            .unwrap();
        assert_eq!(schmidt_rank(&full, &Bipartition::single(0, 3).unwrap(), tol::RANK_TOL), 2);
        assert_eq!(schmidt_rank(&full, &Bipartition::single(2, 3).unwrap(), tol::RANK_TOL), 1);
    }

    #[test]
    fn separability_tags_and_partitions() {
        let s = ket(&[2, 2, 2], &[0, 0, 0]);
        let cls = separability_class(&s, tol::RANK_TOL);
        assert_eq!(cls.tag, SeparabilityTag::CompletelyProduct);
        assert_eq!(cls.partition, vec![vec![0], vec![1], vec![2]]);

        let bell = superpose(
            c(0.5f64.sqrt(), 0.0),
            &ket(&[2, 2], &[0, 0]),
            c(0.5f64.sqrt(), 0.0),
            &ket(&[2, 2], &[1, 1]),
        )
        .unwrap();
        let bi = crate::state::tensor_blocks(&[(vec![0], ket(&[2], &[0])), (vec![1, 2], bell)])
            .unwrap();
        let cls = separability_class(&bi, tol::RANK_TOL);
        assert_eq!(cls.tag, SeparabilityTag::Biseparable);
        assert_eq!(cls.partition, vec![vec![0], vec![1, 2]]);

        let cls = separability_class(&w_state(), tol::RANK_TOL);
        assert_eq!(cls.tag, SeparabilityTag::GenuinelyEntangled);
        assert_eq!(cls.partition, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn schmidt_squares_match_reduced_density_eigenvalues_on_both_sides() {
        let h = HilbertDims::new(vec![2, 3, 2]).unwrap();
        for seed in 0..20u64 {
            let s = random_state(&h, seed);
            for cut in [
                Bipartition::single(0, 3).unwrap(),
                Bipartition::single(1, 3).unwrap(),
                Bipartition::new([0, 2], 3).unwrap(),
            ] {
                let coeffs = schmidt_coeffs(&s, &cut);
                let (m, _, _) = crate::linalg::to_matrix(&s, &cut);
                for rho in [&m * m.adjoint(), m.adjoint() * &m] {
                    let mut ev: Vec<f64> =
                        nalgebra::SymmetricEigen::new(rho).eigenvalues.iter().copied().collect();
                    ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
                    for (i, &c2) in coeffs.iter().enumerate() {
                        assert!((c2 * c2 - ev[i]).abs() < 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn rank_is_invariant_under_local_unitaries() {
        let states = [w_state(), ghz()];
        for s in &states {
            let cut = Bipartition::single(0, 3).unwrap();
            let base = schmidt_rank(s, &cut, tol::RANK_TOL);
            let mut r = rng::stream(42, 0);
            for _ in 0..100 {
                let mut rotated = s.clone();
                for party in 0..3 {
                    let u: DMatrix<Complex64> = rng::unitary(&mut r, 2);
                    rotated = apply_local_unitary(&rotated, party, &u).unwrap();
                }
                assert_eq!(schmidt_rank(&rotated, &cut, tol::RANK_TOL), base);
            }
        }
    }

    #[test]
    fn finest_partition_commutes_with_party_permutation() {
        let bell = superpose(
            c(0.5f64.sqrt(), 0.0),
            &ket(&[2, 2], &[0, 0]),
            c(0.5f64.sqrt(), 0.0),
            &ket(&[2, 2], &[1, 1]),
        )
        .unwrap();
        let s = crate::state::tensor_blocks(&[(vec![0], ket(&[2], &[1])), (vec![1, 2], bell)])
            .unwrap();
        // New order: party 0 <- old 1, party 1 <- old 2, party 2 <- old 0.
        let perm = [1usize, 2, 0];
        let sp = s.permute_parties(&perm).unwrap();
        let cls = separability_class(&sp, tol::RANK_TOL);
        assert_eq!(cls.tag, SeparabilityTag::Biseparable);
        assert_eq!(cls.partition, vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn reconstruction_from_factors_matches() {
        let p = product_state(&[
            vec![c(0.6, 0.2), c(0.7, -0.3)],
            vec![c(0.1, 0.9), c(0.4, 0.0)],
        ])
        .unwrap();
        let factors = product_factors(&p, tol::RANK_TOL).unwrap();
        let rebuilt = crate::state::tensor_blocks(&[
            (vec![0], factors[0].clone()),
            (vec![1], factors[1].clone()),
        ])
        .unwrap();
        assert!(rebuilt.overlap(&p) > 1.0 - 1e-12);
    }
}
