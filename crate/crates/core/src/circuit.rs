//! The QPE circuit as explicit unitaries, simulated on a dense statevector.
//!
//! Nothing in this module evaluates a closed form for `ψ_t`, `Ψ` or `α_m`;
//! states are obtained by applying gates. It is the oracle the analytic
//! module is checked against.
//!
//! Register layout: a full-register index is `k·2^s + x` with `k` the
//! first-register value (big-endian, top line most significant) and `x` the
//! second-register index. The line carrying bit `j` of `k` controls
//! `U^{2^j}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    check_qubits, inner_product, tensor_mat, tensor_vec, turn, Complex, Matrix, StateVector,
    UnitaryMatrix, ONE, ZERO,
};
use crate::phase::Phase;
use crate::tolerances;

/// The problem data `(t, s, U, |u⟩, φ)` with `U|u⟩ = e^{2πiφ}|u⟩`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QpeInstance {
    t: u32,
    s: u32,
    unitary: UnitaryMatrix,
    eigenvector: StateVector,
    phase: Phase,
}

impl QpeInstance {
    /// Validates the eigenpair and register sizes.
    pub fn new(
        t: u32,
        s: u32,
        unitary: UnitaryMatrix,
        eigenvector: StateVector,
        phase: Phase,
    ) -> Result<Self> {
        if t == 0 || s == 0 {
            return Err(Error::InvalidInstance(
                "register sizes t and s must be positive".into(),
            ));
        }
        check_qubits(t + s)?;
        let dim = 1usize << s;
        if unitary.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: unitary.dim(),
            });
        }
        if eigenvector.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: eigenvector.dim(),
            });
        }
        if (eigenvector.norm() - 1.0).abs() >= tolerances::NORM {
            return Err(Error::InvalidInstance(format!(
                "eigenvector norm {} is not 1",
                eigenvector.norm()
            )));
        }
        if unitary.unitarity_defect() > tolerances::UNITARITY {
            return Err(Error::InvalidInstance("U is not unitary".into()));
        }
        let instance = QpeInstance {
            t,
            s,
            unitary,
            eigenvector,
            phase,
        };
        let residual = instance.eigen_residual();
        if !(residual < tolerances::EIGEN_RESIDUAL) {
            return Err(Error::InvalidInstance(format!(
                "‖U·u − e^(2πiφ)u‖ = {residual:e} for φ = {phase}"
            )));
        }
        Ok(instance)
    }

    /// The same eigenpair with a different first-register size.
    pub fn with_t(&self, t: u32) -> Result<Self> {
        Self::new(
            t,
            self.s,
            self.unitary.clone(),
            self.eigenvector.clone(),
            self.phase,
        )
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn unitary(&self) -> &UnitaryMatrix {
        &self.unitary
    }

    pub fn eigenvector(&self) -> &StateVector {
        &self.eigenvector
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn phase_is_dyadic(&self) -> bool {
        self.phase.dyadic_parts().is_some()
    }

    /// `‖U·u − e^{2πiφ}u‖`.
    pub fn eigen_residual(&self) -> f64 {
        let uu = self
            .unitary
            .apply(&self.eigenvector)
            .expect("dimensions validated");
        let expected = self.eigenvector.scale(turn(self.phase.value()));
        uu.amplitudes()
            .iter()
            .zip(expected.amplitudes())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Exact outcome probabilities of measuring the first register.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementDistribution {
    t: u32,
    probs: Vec<f64>,
}

impl MeasurementDistribution {
    /// Entries may overshoot `[0, 1]` by rounding noise up to `1e-12`; they
    /// are clamped. The total must be one within the normalization
    /// tolerance.
    pub fn new(t: u32, probs: Vec<f64>) -> Result<Self> {
        const SLACK: f64 = 1e-12;
        if t == 0 || probs.len() != 1usize << t {
            return Err(Error::DimensionMismatch {
                expected: 1usize << t,
                found: probs.len(),
            });
        }
        if let Some((m, p)) = probs
            .iter()
            .enumerate()
            .find(|(_, p)| !(-SLACK..=1.0 + SLACK).contains(*p))
        {
            return Err(Error::domain(format!("probability {p} of outcome {m}")));
        }
        let probs: Vec<f64> = probs.into_iter().map(|p| p.clamp(0.0, 1.0)).collect();
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > tolerances::NORMALIZATION {
            return Err(Error::domain(format!("probabilities sum to {total}")));
        }
        Ok(MeasurementDistribution { t, probs })
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, m: u64) -> f64 {
        self.probs[m as usize]
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Probability of the event "outcome ∈ `outcomes`". Repeated outcomes
    /// count once.
    pub fn event_prob(&self, outcomes: impl IntoIterator<Item = u64>) -> f64 {
        let mut seen = vec![false; self.probs.len()];
        let mut p = 0.0;
        for m in outcomes {
            let m = m as usize;
            if !seen[m] {
                seen[m] = true;
                p += self.probs[m];
            }
        }
        p
    }

    /// Most likely outcome (lowest index on ties).
    pub fn argmax(&self) -> u64 {
        let mut best = 0;
        for (m, &p) in self.probs.iter().enumerate() {
            if p > self.probs[best] {
                best = m;
            }
        }
        best as u64
    }
}

/// `(1/2^{t/2}) Σ_k |k⟩_t`.
pub fn plus_register(t: u32) -> Result<StateVector> {
    if t == 0 {
        return Err(Error::domain("register size must be positive"));
    }
    check_qubits(t)?;
    let dim = 1usize << t;
    let a = Complex::new((dim as f64).sqrt().recip(), 0.0);
    Ok(StateVector::from_vec_unchecked(vec![a; dim]))
}

/// The `n`-qubit inverse Fourier transform, entry `(l, k) = 2^{−n/2}
/// e^{−2πikl/2^n}`.
pub fn inv_qft(n: u32) -> Result<UnitaryMatrix> {
    if n == 0 {
        return Err(Error::domain("transform size must be positive"));
    }
    check_qubits(n)?;
    let dim = 1usize << n;
    let norm = (dim as f64).sqrt().recip();
    let mask = dim - 1;
    // Reduce k·l modulo 2^n in integers, then look the root of unity up.
    let roots: Vec<Complex> = (0..dim)
        .map(|r| turn(-(r as f64) / dim as f64) * norm)
        .collect();
    let m = Matrix::from_fn(dim, |l, k| roots[(k * l) & mask]);
    Ok(UnitaryMatrix::from_matrix_unchecked(m))
}

/// `|0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ U^{2^j}` with the control as the leading factor.
pub fn controlled_power(u: &UnitaryMatrix, j: u32) -> UnitaryMatrix {
    controlled(&u.pow2(j))
}

fn controlled(block: &Matrix) -> UnitaryMatrix {
    let d = block.dim();
    let m = Matrix::from_fn(2 * d, |r, c| match (r < d, c < d) {
        (true, true) => {
            if r == c {
                ONE
            } else {
                ZERO
            }
        }
        (false, false) => block.get(r - d, c - d),
        _ => ZERO,
    });
    UnitaryMatrix::from_matrix_unchecked(m)
}

/// The controlled `block` with its control on the first-register line of
/// weight `2^j`, identity-padded to the full `t + s` register:
/// `I_{2^{t−1−j}} ⊗ (|0⟩⟨0| ⊗ I_{2^j} ⊗ I + |1⟩⟨1| ⊗ I_{2^j} ⊗ block)`.
fn embed_controlled(block: &Matrix, j: u32, t: u32) -> UnitaryMatrix {
    let d = block.dim();
    let p0 = Matrix::diagonal(&[ONE, ZERO]);
    let p1 = Matrix::diagonal(&[ZERO, ONE]);
    let idle = p0.kron(&Matrix::identity((1usize << j) * d));
    let active = p1.kron(&Matrix::identity(1usize << j).kron(block));
    let local = idle.add(&active).expect("same dims");
    let full = Matrix::identity(1usize << (t - 1 - j)).kron(&local);
    UnitaryMatrix::from_matrix_unchecked(full)
}

fn check_sizes(u: &UnitaryMatrix, t: u32) -> Result<u32> {
    let d = u.dim();
    if !d.is_power_of_two() || d < 2 {
        return Err(Error::domain(format!(
            "U has dimension {d}, expected 2^s with s >= 1"
        )));
    }
    if t == 0 {
        return Err(Error::domain("t must be positive"));
    }
    let s = d.trailing_zeros();
    check_qubits(t + s)?;
    Ok(s)
}

/// `QPE₁(U, t)`: controlled `U^{2^j}` for every first-register line, as one
/// dense `2^{t+s}` matrix.
pub fn build_qpe1(u: &UnitaryMatrix, t: u32) -> Result<UnitaryMatrix> {
    let s = check_sizes(u, t)?;
    let mut total = UnitaryMatrix::identity(1usize << (t + s));
    let mut power = u.matrix().clone();
    for j in 0..t {
        if j > 0 {
            power = power.matmul(&power)?;
        }
        total = embed_controlled(&power, j, t).compose(&total)?;
    }
    Ok(total)
}

/// `QPE(U, t) = (FT†_t ⊗ I_{2^s}) · QPE₁(U, t)`.
pub fn build_qpe(u: &UnitaryMatrix, t: u32) -> Result<UnitaryMatrix> {
    let s = check_sizes(u, t)?;
    let ft = tensor_mat(&inv_qft(t)?, &UnitaryMatrix::identity(1usize << s));
    ft.compose(&build_qpe1(u, t)?)
}

/// `U^{2^j}` for `j = 0..t`, each from the previous by one squaring.
fn power_ladder(u: &Matrix, t: u32) -> Vec<Matrix> {
    let mut powers = Vec::with_capacity(t as usize);
    powers.push(u.clone());
    for j in 1..t as usize {
        let next = powers[j - 1].matmul(&powers[j - 1]).expect("square");
        powers.push(next);
    }
    powers
}

/// Applies the controlled `block` (control on the line of weight `2^j`) in
/// place. Equivalent to multiplying by the identity-padded dense gate.
fn apply_controlled_in_place(state: &mut [Complex], s: u32, j: u32, block: &Matrix) {
    let d = 1usize << s;
    let mut scratch = vec![ZERO; d];
    for (k, chunk) in state.chunks_exact_mut(d).enumerate() {
        if (k >> j) & 1 == 0 {
            continue;
        }
        for (r, out) in scratch.iter_mut().enumerate() {
            *out = block.row(r).iter().zip(chunk.iter()).map(|(a, b)| a * b).sum();
        }
        chunk.copy_from_slice(&scratch);
    }
}

/// Applies `F ⊗ I_{2^s}` in place.
fn apply_first_register_in_place(state: &mut [Complex], s: u32, f: &Matrix) {
    let d = 1usize << s;
    let n = f.dim();
    let mut column = vec![ZERO; n];
    for x in 0..d {
        for (k, c) in column.iter_mut().enumerate() {
            *c = state[k * d + x];
        }
        for l in 0..n {
            state[l * d + x] = f.row(l).iter().zip(&column).map(|(a, b)| a * b).sum();
        }
    }
}

fn input_state(inst: &QpeInstance) -> Result<StateVector> {
    Ok(tensor_vec(&plus_register(inst.t)?, &inst.eigenvector))
}

/// Full `t + s` register after `QPE₁` on `|+⟩^{⊗t} ⊗ |u⟩`.
pub fn stage2_full_state(inst: &QpeInstance) -> Result<StateVector> {
    let mut state = input_state(inst)?.into_amplitudes();
    for (j, power) in power_ladder(inst.unitary.matrix(), inst.t).iter().enumerate() {
        apply_controlled_in_place(&mut state, inst.s, j as u32, power);
    }
    Ok(StateVector::from_vec_unchecked(state))
}

/// Full `t + s` register after `QPE` on `|+⟩^{⊗t} ⊗ |u⟩`.
pub fn stage3_full_state(inst: &QpeInstance) -> Result<StateVector> {
    let mut state = stage2_full_state(inst)?.into_amplitudes();
    apply_first_register_in_place(&mut state, inst.s, inv_qft(inst.t)?.matrix());
    Ok(StateVector::from_vec_unchecked(state))
}

/// The same state as [`stage3_full_state`], through the dense
/// [`build_qpe`] matrix.
pub fn stage3_full_state_dense(inst: &QpeInstance) -> Result<StateVector> {
    build_qpe(&inst.unitary, inst.t)?.apply(&input_state(inst)?)
}

/// Splits `full = first ⊗ u + residual` by projecting the second register
/// onto `u`; returns `first` and `‖residual‖`.
pub fn factor_out_second(
    full: &StateVector,
    u: &StateVector,
) -> Result<(StateVector, f64)> {
    let d = u.dim();
    if full.dim() % d != 0 {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: full.dim(),
        });
    }
    let first: Vec<Complex> = full
        .amplitudes()
        .chunks_exact(d)
        .map(|chunk| {
            u.amplitudes()
                .iter()
                .zip(chunk)
                .map(|(a, b)| a.conj() * b)
                .sum()
        })
        .collect();
    let first = StateVector::from_vec_unchecked(first);
    let product = tensor_vec(&first, u);
    let residual = full
        .amplitudes()
        .iter()
        .zip(product.amplitudes())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok((first, residual))
}

fn factor_checked(full: &StateVector, u: &StateVector) -> Result<StateVector> {
    let (first, residual) = factor_out_second(full, u)?;
    if residual > tolerances::ENTANGLEMENT {
        return Err(Error::Entanglement {
            residual,
            threshold: tolerances::ENTANGLEMENT,
        });
    }
    Ok(first)
}

/// First-register state after `QPE₁`, with `|u⟩` factored out.
pub fn stage2_state(inst: &QpeInstance) -> Result<StateVector> {
    factor_checked(&stage2_full_state(inst)?, &inst.eigenvector)
}

/// First-register state after `QPE`, with `|u⟩` factored out.
pub fn stage3_state(inst: &QpeInstance) -> Result<StateVector> {
    factor_checked(&stage3_full_state(inst)?, &inst.eigenvector)
}

/// Magnitude of the overlap of the second register with `|u⟩` after the
/// full circuit: `‖(I ⊗ ⟨u|)·state‖`.
pub fn second_register_overlap(inst: &QpeInstance) -> Result<f64> {
    let (first, _) = factor_out_second(&stage3_full_state(inst)?, &inst.eigenvector)?;
    Ok(first.norm())
}

fn born_marginal(full: &StateVector, t: u32, s: u32) -> Result<MeasurementDistribution> {
    let d = 1usize << s;
    let probs = full
        .amplitudes()
        .chunks_exact(d)
        .map(|chunk| chunk.iter().map(|a| a.norm_sqr()).sum())
        .collect();
    MeasurementDistribution::new(t, probs)
}

/// Born-rule distribution of the first-register measurement after
/// `QPE(U, t)` on `|+⟩^{⊗t} ⊗ |u⟩`. Each probability is the marginal over
/// the second register; the second register is also required to factor out
/// as `|u⟩`.
pub fn output_distribution(inst: &QpeInstance) -> Result<MeasurementDistribution> {
    let full = stage3_full_state(inst)?;
    factor_checked(&full, &inst.eigenvector)?;
    born_marginal(&full, inst.t, inst.s)
}

/// [`output_distribution`] through the dense `QPE` matrix.
pub fn output_distribution_dense(inst: &QpeInstance) -> Result<MeasurementDistribution> {
    let full = stage3_full_state_dense(inst)?;
    factor_checked(&full, &inst.eigenvector)?;
    born_marginal(&full, inst.t, inst.s)
}

/// `controlled_power(U, j)` applied to `|+⟩ ⊗ |u⟩`.
pub fn kickback_state(inst: &QpeInstance, j: u32) -> Result<StateVector> {
    let gate = controlled_power(&inst.unitary, j);
    gate.apply(&tensor_vec(&plus_register(1)?, &inst.eigenvector))
}

/// `⟨m|Ψ⟩` read off a first-register state.
pub fn amplitude(state: &StateVector, m: u64, t: u32) -> Result<Complex> {
    inner_product(&crate::linalg::number_ket(m, t)?, state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{check_unitary, number_ket};

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn diag_instance(t: u32, s: u32, phase: Phase) -> QpeInstance {
        let mut diag = vec![turn(phase.value())];
        diag.extend((1..1usize << s).map(|k| turn(k as f64 / (1usize << s) as f64)));
        let u = UnitaryMatrix::new(Matrix::diagonal(&diag), 1e-12).unwrap();
        QpeInstance::new(t, s, u, StateVector::basis(1 << s, 0).unwrap(), phase).unwrap()
    }

    #[test]
    fn plus_register_examples() {
        assert!(
            plus_register(1)
                .unwrap()
                .max_abs_diff(&StateVector::from_real(&[H, H]).unwrap())
                .unwrap()
                < 1e-15
        );
        assert_eq!(
            plus_register(2).unwrap(),
            StateVector::from_real(&[0.5; 4]).unwrap()
        );
        assert!(matches!(plus_register(15), Err(Error::Resource { .. })));
    }

    #[test]
    fn inv_qft_examples() {
        let h = inv_qft(1).unwrap();
        assert!(h.max_abs_diff(&UnitaryMatrix::hadamard()).unwrap() < 1e-15);
        let f2 = inv_qft(2).unwrap();
        assert!((f2.get(1, 1) - Complex::new(0.0, -0.5)).norm() < 1e-16);
        for n in 1..=8 {
            assert!(check_unitary(&inv_qft(n).unwrap(), 1e-10), "n = {n}");
        }
        assert!(matches!(inv_qft(15), Err(Error::Resource { .. })));
    }

    #[test]
    fn inv_qft_undoes_fourier_basis_states() {
        // Fourier basis state |k̃⟩ = 2^{-n/2} Σ_l e^{2πikl/2^n}|l⟩ built from
        // its definition, then inverted.
        for n in 1..=6u32 {
            let dim = 1usize << n;
            let f = inv_qft(n).unwrap();
            for k in 0..dim {
                let amps = (0..dim)
                    .map(|l| turn((k * l) as f64 / dim as f64) / (dim as f64).sqrt())
                    .collect();
                let out = f.apply(&StateVector::new(amps).unwrap()).unwrap();
                let diff = out.max_abs_diff(&number_ket(k as u64, n).unwrap()).unwrap();
                assert!(diff < 1e-12, "n={n} k={k} diff={diff}");
            }
        }
    }

    #[test]
    fn controlled_x_is_cnot() {
        let cnot = controlled_power(&UnitaryMatrix::pauli_x(), 0);
        let expected = Matrix::from_fn(4, |r, c| {
            let perm = [0, 1, 3, 2];
            if perm[r] == c {
                ONE
            } else {
                ZERO
            }
        });
        assert_eq!(*cnot.matrix(), expected);
    }

    #[test]
    fn inactive_control_leaves_target() {
        let inst = diag_instance(1, 2, Phase::rational(1, 3).unwrap());
        let v = StateVector::new(vec![
            Complex::new(0.5, 0.1),
            Complex::new(-0.2, 0.3),
            Complex::new(0.0, 0.7),
            Complex::new(0.1, 0.0),
        ])
        .unwrap();
        let gate = controlled_power(inst.unitary(), 3);
        let input = tensor_vec(&number_ket(0, 1).unwrap(), &v);
        assert_eq!(gate.apply(&input).unwrap(), input);
    }

    #[test]
    fn kickback_on_eigenvector() {
        let phase = Phase::rational(3, 10).unwrap();
        let inst = diag_instance(4, 1, phase);
        for j in 0..4 {
            let out = gate_on_one(&inst, j);
            let expected = tensor_vec(
                &number_ket(1, 1).unwrap(),
                &inst.eigenvector().scale(turn(phase.value() * (1u64 << j) as f64)),
            );
            assert!(out.max_abs_diff(&expected).unwrap() < 1e-12);
        }
    }

    fn gate_on_one(inst: &QpeInstance, j: u32) -> StateVector {
        controlled_power(inst.unitary(), j)
            .apply(&tensor_vec(&number_ket(1, 1).unwrap(), inst.eigenvector()))
            .unwrap()
    }

    #[test]
    fn trivial_qpe_matrices() {
        let id = UnitaryMatrix::identity(2);
        assert_eq!(build_qpe1(&id, 1).unwrap(), UnitaryMatrix::identity(4));
        let expected = tensor_mat(&UnitaryMatrix::hadamard(), &id);
        assert!(build_qpe(&id, 1).unwrap().max_abs_diff(&expected).unwrap() < 1e-15);
    }

    #[test]
    fn structured_and_dense_routes_agree() {
        for (t, s) in [(1, 1), (2, 1), (3, 2), (4, 1), (2, 3)] {
            let inst = diag_instance(t, s, Phase::rational(2, 7).unwrap());
            let a = stage3_full_state(&inst).unwrap();
            let b = stage3_full_state_dense(&inst).unwrap();
            assert!(a.max_abs_diff(&b).unwrap() < 1e-12, "t={t} s={s}");
        }
    }

    #[test]
    fn qpe_is_unitary() {
        let inst = diag_instance(4, 2, Phase::rational(1, 3).unwrap());
        assert!(check_unitary(&build_qpe(inst.unitary(), 4).unwrap(), 1e-10));
    }

    #[test]
    fn stage2_examples() {
        let zero = diag_instance(3, 1, Phase::zero());
        let out = stage2_state(&zero).unwrap();
        assert!(out.max_abs_diff(&plus_register(3).unwrap()).unwrap() < 1e-15);

        let half = diag_instance(1, 1, Phase::dyadic(1, 1).unwrap());
        let out = stage2_state(&half).unwrap();
        let expected = StateVector::from_real(&[H, -H]).unwrap();
        assert!(out.max_abs_diff(&expected).unwrap() < 1e-15);
    }

    #[test]
    fn exact_phase_distribution() {
        let inst = diag_instance(3, 1, Phase::dyadic(5, 3).unwrap());
        let dist = output_distribution(&inst).unwrap();
        assert!((dist.prob(5) - 1.0).abs() < 1e-10);
        assert_eq!(dist.argmax(), 5);
        let zero = output_distribution(&diag_instance(3, 1, Phase::zero())).unwrap();
        assert!((zero.prob(0) - 1.0).abs() < 1e-12);
        assert!(zero.probs()[1..].iter().all(|&p| p < 1e-12));
    }

    #[test]
    fn entanglement_is_detected() {
        // |u⟩ that is not an eigenvector: bypass validation by hand.
        let mut inst = diag_instance(2, 1, Phase::rational(1, 3).unwrap());
        inst.eigenvector = StateVector::from_real(&[H, H]).unwrap();
        assert!(matches!(
            output_distribution(&inst),
            Err(Error::Entanglement { .. })
        ));
        assert!(matches!(stage2_state(&inst), Err(Error::Entanglement { .. })));
    }

    #[test]
    fn instance_validation() {
        let phase = Phase::rational(1, 3).unwrap();
        let u = diag_instance(1, 1, phase).unitary().clone();
        let wrong = StateVector::basis(2, 1).unwrap();
        assert!(matches!(
            QpeInstance::new(2, 1, u.clone(), wrong, phase),
            Err(Error::InvalidInstance(_))
        ));
        let unnormalized = StateVector::from_real(&[2.0, 0.0]).unwrap();
        assert!(QpeInstance::new(2, 1, u.clone(), unnormalized, phase).is_err());
        let e0 = StateVector::basis(2, 0).unwrap();
        assert!(matches!(
            QpeInstance::new(14, 1, u.clone(), e0.clone(), phase),
            Err(Error::Resource { .. })
        ));
        assert!(QpeInstance::new(0, 1, u, e0, phase).is_err());
    }

    #[test]
    fn event_probability_counts_outcomes_once() {
        let dist = MeasurementDistribution::new(2, vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        assert!((dist.event_prob([1, 3, 3]) - 0.6).abs() < 1e-15);
        assert!(MeasurementDistribution::new(2, vec![0.5; 4]).is_err());
        assert!(MeasurementDistribution::new(2, vec![1.0; 3]).is_err());
    }
}
