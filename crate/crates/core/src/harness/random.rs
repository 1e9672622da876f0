//! Random test inputs drawn from a [`SeededRng`].

use crate::linalg::{ComplexMatrix, StateVector, C64, ZERO};
use crate::sampling::SeededRng;

/// Entries uniform in the unit square, scaled by `1/√dim` so products of a
/// few such matrices stay of order one.
pub fn random_matrix(rng: &mut SeededRng, dim: usize) -> ComplexMatrix {
    let scale = 1.0 / (dim as f64).sqrt();
    let data = (0..dim * dim).map(|_| rng.complex() * scale).collect();
    ComplexMatrix::from_vec(dim, dim, data).expect("dim x dim")
}

pub fn random_state(rng: &mut SeededRng, dim: usize) -> StateVector {
    let amps = (0..dim).map(|_| rng.complex()).collect();
    StateVector::from_amplitudes(amps)
        .normalized()
        .expect("a random vector is nonzero")
}

/// Random unitary by Gram-Schmidt on the columns of a random matrix.
pub fn random_unitary(rng: &mut SeededRng, dim: usize) -> ComplexMatrix {
    let mut columns: Vec<Vec<C64>> = Vec::with_capacity(dim);
    while columns.len() < dim {
        let mut v: Vec<C64> = (0..dim).map(|_| rng.complex()).collect();
        for q in &columns {
            let proj: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, qa) in v.iter_mut().zip(q) {
                *x -= proj * qa;
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue;
        }
        columns.push(v.into_iter().map(|x| x / norm).collect());
    }
    let mut u = ComplexMatrix::zeros(dim, dim);
    for (j, col) in columns.iter().enumerate() {
        for (i, &x) in col.iter().enumerate() {
            u[(i, j)] = x;
        }
    }
    u
}

/// Embeds `v` on the aux `|branch>` of `register ⊗ aux`.
pub fn on_aux_branch(v: &StateVector, branch: usize) -> StateVector {
    let mut amps = vec![ZERO; 2 * v.dim()];
    for (i, &a) in v.amplitudes().iter().enumerate() {
        amps[2 * i + branch] = a;
    }
    StateVector::from_amplitudes(amps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitary_is_unitary() {
        let mut rng = SeededRng::new(5);
        for dim in [1, 2, 4, 8] {
            let u = random_unitary(&mut rng, dim);
            assert!(u.unitarity_residual().unwrap() < 1e-13);
        }
    }

    #[test]
    fn state_is_normalized() {
        let mut rng = SeededRng::new(5);
        assert!(random_state(&mut rng, 8).is_normalized(1e-14));
    }
}
