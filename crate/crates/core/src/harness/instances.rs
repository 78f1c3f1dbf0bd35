//! QPE instances with known eigenpairs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::circuit::QpeInstance;
use crate::error::{Error, Result};
use crate::linalg::{check_qubits, turn, Complex, Matrix, StateVector, UnitaryMatrix, ZERO};
use crate::phase::Phase;
use crate::tolerances;

const MAX_ATTEMPTS: u32 = 3;

/// Columns whose norm drops below this during orthonormalization count as
/// linearly dependent.
const RANK_THRESHOLD: f64 = 1e-8;

/// `U = diag(e^{2πiφ}, e^{2πi/2^s}, e^{2πi·2/2^s}, …)` with `u = |0⟩`.
pub fn diagonal_instance(t: u32, s: u32, phase: Phase) -> Result<QpeInstance> {
    if s == 0 {
        return Err(Error::domain("second register size s must be >= 1"));
    }
    check_qubits(s)?;
    let dim = 1usize << s;
    let mut diag = Vec::with_capacity(dim);
    diag.push(turn(phase.value()));
    diag.extend((1..dim).map(|j| turn(j as f64 / dim as f64)));
    let u = UnitaryMatrix::new(Matrix::diagonal(&diag), tolerances::UNITARITY)?;
    QpeInstance::new(t, s, u, StateVector::basis(dim, 0)?, phase)
}

/// Mixes a base seed with instance coordinates into an independent seed
/// (splitmix64 finalizer).
pub fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    let mut z = base;
    for &p in parts {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15).wrapping_add(p);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
    }
    z
}

fn gaussian_matrix(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Vec<Complex>> {
    (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect()
        })
        .collect()
}

/// Modified Gram-Schmidt on columns; `None` on rank deficiency.
fn orthonormalize(mut columns: Vec<Vec<Complex>>) -> Option<Vec<Vec<Complex>>> {
    for j in 0..columns.len() {
        for i in 0..j {
            let (done, rest) = columns.split_at_mut(j);
            let q = &done[i];
            let proj: Complex = q.iter().zip(&rest[0]).map(|(a, b)| a.conj() * b).sum();
            for (c, qv) in rest[0].iter_mut().zip(q) {
                *c -= proj * qv;
            }
        }
        let norm = columns[j].iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm < RANK_THRESHOLD {
            return None;
        }
        for c in &mut columns[j] {
            *c /= norm;
        }
    }
    Some(columns)
}

/// `U = V·diag(e^{2πiφ}, random phases)·V†` for a seeded random unitary
/// `V`, with `u` the first column of `V`.
pub fn random_instance(t: u32, s: u32, phase: Phase, seed: u64) -> Result<QpeInstance> {
    if s == 0 {
        return Err(Error::domain("second register size s must be >= 1"));
    }
    check_qubits(s)?;
    let dim = 1usize << s;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let Some(v) = orthonormalize(gaussian_matrix(&mut rng, dim)) else {
            continue;
        };
        let mut eigen = vec![turn(phase.value())];
        eigen.extend((1..dim).map(|_| turn(rng.random::<f64>())));
        // v[c][r] is entry (r, c) of V.
        let u = Matrix::from_fn(dim, |r, c| {
            (0..dim).fold(ZERO, |acc, k| acc + v[k][r] * eigen[k] * v[k][c].conj())
        });
        let u = UnitaryMatrix::new(u, tolerances::UNITARITY)?;
        let eigenvector = StateVector::new(v[0].clone())?;
        return QpeInstance::new(t, s, u, eigenvector, phase);
    }
    Err(Error::DegenerateDraw {
        attempts: MAX_ATTEMPTS,
    })
}
