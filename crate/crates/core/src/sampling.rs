//! Seeded random states and unitaries for property sweeps.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{c64, CMatrix, CVector, DensityOperator, Ket, C64};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c64(re, im)
}

/// Complex Ginibre matrix with standard normal entries.
pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Haar-random pure state.
pub fn random_ket<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Ket {
    let v = CVector::from_fn(dim, |_, _| gaussian(rng));
    Ket::normalized(v).expect("gaussian vector is non-zero")
}

/// Random mixed state `GG^dagger / Tr` with `G` a `dim x rank` Ginibre matrix.
pub fn random_density_with_rank<R: Rng + ?Sized>(rng: &mut R, dim: usize, rank: usize) -> DensityOperator {
    let g = ginibre(rng, dim, rank.max(1));
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    DensityOperator::from_matrix_unchecked(m.unscale(tr))
}

/// Random state with a uniformly chosen rank, so sweeps cover pure and
/// mixed inputs alike.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DensityOperator {
    let rank = rng.random_range(1..=dim);
    random_density_with_rank(rng, dim, rank)
}

/// Haar-random unitary via QR of a Ginibre matrix with the phase fix on
/// the diagonal of `R`.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CMatrix {
    let qr = ginibre(rng, dim, dim).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..dim {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            let mut col = q.column_mut(j);
            col *= phase;
        }
    }
    q
}

/// Random Hermitian matrix `(G + G^dagger)/2`.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CMatrix {
    let g = ginibre(rng, dim, dim);
    (&g + g.adjoint()).scale(0.5)
}

/// Random point on the probability simplex (flat Dirichlet).
pub fn random_distribution<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let draws: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let total: f64 = draws.iter().sum();
    draws.into_iter().map(|x| x / total).collect()
}
