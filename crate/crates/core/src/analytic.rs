//! Closed-form states, amplitudes and bounds of phase estimation.
//!
//! Everything here is evaluated directly from its formula; the circuit
//! module provides the independent simulated values these are checked
//! against.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::circuit::{inv_qft, MeasurementDistribution};
use crate::error::{Error, Result};
use crate::linalg::{check_qubits, tensor_vec, turn, Complex, StateVector, ZERO};
use crate::phase::Phase;

/// `(a + b) mod 2^t`, always in `{0, …, 2^t − 1}`.
pub fn mod_add(a: i64, b: i64, t: u32) -> u64 {
    (a as i128 + b as i128).rem_euclid(1i128 << t) as u64
}

/// Distance from `x` to the nearest integer multiple of `n`; in `[0, n/2]`.
pub fn mod_abs(x: f64, n: f64) -> f64 {
    let r = x.rem_euclid(n);
    r.min(n - r)
}

/// [`mod_abs`] on integers, exact.
pub fn mod_abs_int(x: i64, n: u64) -> u64 {
    let r = (x as i128).rem_euclid(n as i128) as u64;
    r.min(n - r)
}

fn check_phase(phi: f64) -> Result<()> {
    if phi.is_finite() && (0.0..1.0).contains(&phi) {
        Ok(())
    } else {
        Err(Error::domain(format!("phase {phi} is not in [0, 1)")))
    }
}

fn check_register(t: u32) -> Result<()> {
    if t == 0 {
        return Err(Error::domain("register size must be positive"));
    }
    check_qubits(t)
}

#[inline]
fn pow2(t: u32) -> f64 {
    (1u64 << t) as f64
}

/// `b_f = ⌊2^t·φ⌋`.
pub fn best_floor(phi: f64, t: u32) -> Result<i64> {
    check_phase(phi)?;
    Ok(Phase::Real { value: phi }.scaled_floor(t))
}

/// `b_r = ⌊2^t·φ + 1/2⌋`. May equal `2^t`; reduce with [`mod_add`] before
/// using it as an outcome.
pub fn best_round(phi: f64, t: u32) -> i64 {
    let y = phi * pow2(t);
    let fl = y.floor();
    if y - fl >= 0.5 {
        fl as i64 + 1
    } else {
        fl as i64
    }
}

/// `δ_b = φ − b/2^t`.
pub fn delta_b(phi: f64, t: u32, b: i64) -> f64 {
    (phi * pow2(t) - b as f64) / pow2(t)
}

/// The best estimates of `2^t·φ` and their residuals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseGeometry {
    pub t: u32,
    pub phase: Phase,
    /// `⌊2^t·φ⌋`.
    pub b_floor: i64,
    /// `round(2^t·φ)`, not reduced modulo `2^t`.
    pub b_round: i64,
    pub delta_floor: f64,
    pub delta_round: f64,
    /// `2^t·δ_{b_f}`.
    pub scaled_delta_floor: f64,
    /// `2^t·δ_{b_r}`.
    pub scaled_delta_round: f64,
    /// `δ_{b_f} = 0`, decided exactly.
    pub floor_exact: bool,
    /// `δ_{b_r} = 0`, decided exactly.
    pub round_exact: bool,
}

impl PhaseGeometry {
    pub fn new(phase: &Phase, t: u32) -> PhaseGeometry {
        let b_floor = phase.scaled_floor(t);
        let b_round = phase.scaled_round(t);
        PhaseGeometry {
            t,
            phase: *phase,
            b_floor,
            b_round,
            delta_floor: phase.delta(t, b_floor),
            delta_round: phase.delta(t, b_round),
            scaled_delta_floor: phase.scaled_delta(t, b_floor),
            scaled_delta_round: phase.scaled_delta(t, b_round),
            floor_exact: phase.scaled_delta_is_zero(t, b_floor),
            round_exact: phase.scaled_delta_is_zero(t, b_round),
        }
    }

    /// `b_r mod 2^t`, the outcome index of the rounded estimate.
    pub fn round_outcome(&self) -> u64 {
        mod_add(self.b_round, 0, self.t)
    }

    /// Names of the interval invariants that fail for this geometry.
    pub fn interval_violations(&self) -> Vec<&'static str> {
        let two_t = 1i64 << self.t;
        let mut bad = Vec::new();
        if !(0..two_t).contains(&self.b_floor) {
            bad.push("b_f in {0..2^t-1}");
        }
        if !(0.0..1.0).contains(&self.scaled_delta_floor) {
            bad.push("2^t delta_bf in [0,1)");
        }
        if !(-0.5..0.5).contains(&self.scaled_delta_round) {
            bad.push("2^t delta_br in [-1/2,1/2)");
        }
        for d in [self.delta_floor, self.delta_round] {
            if !(d > -0.5 && d <= 0.5) {
                bad.push("delta_b in (-1/2,1/2]");
            }
        }
        let phi = self.phase.value();
        for (b, d) in [
            (self.b_floor, self.delta_floor),
            (self.b_round, self.delta_round),
        ] {
            if (b as f64 / pow2(self.t) + d - phi).abs() > 1e-15 {
                bad.push("phi = b/2^t + delta_b");
            }
        }
        bad
    }
}

/// `2^{−t/2} ⊗_{j=t−1..0} (|0⟩ + e^{2πi·2^j·φ}|1⟩)`, built factor by factor.
pub fn psi_t_tensor(phi: f64, t: u32) -> Result<StateVector> {
    check_register(t)?;
    let factor = |j: u32| {
        StateVector::from_vec_unchecked(vec![Complex::new(1.0, 0.0), turn(phi * pow2(j))])
    };
    let mut state = factor(t - 1);
    for j in (0..t - 1).rev() {
        state = tensor_vec(&state, &factor(j));
    }
    Ok(state.scale(Complex::new(pow2(t).sqrt().recip(), 0.0)))
}

/// `2^{−t/2} Σ_k e^{2πiφk} |k⟩_t`.
pub fn psi_t_sum(phi: f64, t: u32) -> Result<StateVector> {
    check_register(t)?;
    let norm = pow2(t).sqrt().recip();
    let amps = (0..1u64 << t)
        .map(|k| turn(phi * k as f64) * norm)
        .collect();
    Ok(StateVector::from_vec_unchecked(amps))
}

/// `|Ψ⟩ = FT†_t |ψ_t⟩`.
pub fn big_psi(phi: f64, t: u32) -> Result<StateVector> {
    inv_qft(t)?.apply(&psi_t_sum(phi, t)?)
}

/// `α_m = (1/2^t) Σ_k e^{−2πikm/2^t} e^{2πiφk}` for `m ∈ {0, …, 2^t − 1}`.
pub fn alpha_m_eval(phi: f64, t: u32, m: u64) -> Result<Complex> {
    check_register(t)?;
    let dim = 1u64 << t;
    if m >= dim {
        return Err(Error::domain(format!("outcome {m} out of range for t = {t}")));
    }
    let mask = dim - 1;
    let sum: Complex = (0..dim)
        .map(|k| turn(-(((k * m) & mask) as f64) / dim as f64) * turn(phi * k as f64))
        .sum();
    Ok(sum / dim as f64)
}

/// `(1/2^t) Σ_k e^{−2πikm/2^t} e^{2πiφk}` for any integer `m`, with no
/// reduction of `m`; equals `α_{m mod 2^t}`.
pub fn alpha_m_unreduced(phi: f64, t: u32, m: i64) -> Complex {
    let dim = 1u64 << t;
    let sum: Complex = (0..dim)
        .map(|k| turn(-((k as f64) * m as f64) / dim as f64) * turn(phi * k as f64))
        .sum();
    sum / dim as f64
}

/// `(1/2^t) Σ_k r^k` with common ratio `r = e^{2πi(φ − m/2^t)}`; equals
/// `α_{m mod 2^t}` for every integer `m`.
pub fn alpha_geom(phi: f64, t: u32, m: i64) -> Complex {
    let dim = 1u64 << t;
    let x = (phi - m as f64 / dim as f64).rem_euclid(1.0);
    let sum: Complex = (0..dim).map(|k| turn(x * k as f64)).sum();
    sum / dim as f64
}

/// `1 − e^{2πiy} = −2i·sin(πy)·e^{iπy}`, with `y` first reduced to
/// `[−1/2, 1/2)` to avoid cancellation.
fn one_minus_turn(y: f64) -> Complex {
    let y = y - (y + 0.5).floor();
    let half = PI * y;
    Complex::new(0.0, -2.0 * half.sin()) * Complex::new(half.cos(), half.sin())
}

fn check_offset(t: u32, ell: i64) -> Result<()> {
    let half = 1i64 << (t - 1);
    if ell == 0 || ell <= -half || ell > half {
        return Err(Error::domain(format!(
            "offset {ell} outside {{-2^(t-1)+1, …, 2^(t-1)}} \\ {{0}} for t = {t}"
        )));
    }
    Ok(())
}

/// `α_{b_f ⊕ ℓ} = (1/2^t)·(1 − e^{2πi(2^tδ_{b_f} − ℓ)}) / (1 − e^{2πi(δ_{b_f} − ℓ/2^t)})`.
///
/// When `δ_{b_f} = 0` the numerator vanishes identically and exact zero is
/// returned.
pub fn alpha_closed(phase: &Phase, t: u32, ell: i64) -> Result<Complex> {
    check_register(t)?;
    check_offset(t, ell)?;
    let geom = PhaseGeometry::new(phase, t);
    if geom.floor_exact {
        return Ok(ZERO);
    }
    let x = geom.scaled_delta_floor - ell as f64;
    let den = one_minus_turn(x / pow2(t));
    if den.norm() < 1e-14 {
        return Err(Error::Singularity(format!(
            "geometric ratio is 1 at φ = {phase}, t = {t}, ℓ = {ell}"
        )));
    }
    Ok(one_minus_turn(x) / den / pow2(t))
}

/// `1 / (4(ℓ − 2^tδ_{b_f})²)`.
pub fn alpha_sqrd_bound(t: u32, delta_bf: f64, ell: i64) -> Result<f64> {
    check_register(t)?;
    check_offset(t, ell)?;
    let gap = ell as f64 - pow2(t) * delta_bf;
    if gap == 0.0 {
        return Err(Error::Singularity(format!(
            "ℓ = 2^t·δ_bf = {ell} makes the bound infinite"
        )));
    }
    Ok(1.0 / (4.0 * gap * gap))
}

fn check_tolerance(t: u32, e: u64) -> Result<()> {
    let max = if t >= 2 { (1i64 << (t - 1)) - 2 } else { 0 };
    if e == 0 || e as i64 > max {
        return Err(Error::domain(format!(
            "error tolerance e = {e} outside {{1, …, 2^(t-1)-2}} for t = {t}"
        )));
    }
    Ok(())
}

/// How [`fail_prob`] evaluates the failure probability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailMode {
    /// Sum the distribution over outcomes with `|m − b_f|_{mod 2^t} > e`.
    Definition,
    /// The two `ℓ`-range sums of `|α_{b_f ⊕ ℓ}|²`, with each amplitude from
    /// [`alpha_geom`]. The distribution only supplies `t`.
    Sum,
}

/// Outcomes within mod-distance `e` of `b_f`, summed, without checking the
/// domain of `e`.
pub fn success_mass(dist: &MeasurementDistribution, b_floor: i64, e: u64) -> f64 {
    let n = 1u64 << dist.t();
    dist.probs()
        .iter()
        .enumerate()
        .filter(|(m, _)| mod_abs_int(*m as i64 - b_floor, n) <= e)
        .map(|(_, p)| p)
        .sum()
}

/// `P_fail(e)`: probability that the outcome is more than `e` steps (mod
/// `2^t`) from `b_f`.
pub fn fail_prob(
    dist: &MeasurementDistribution,
    phase: &Phase,
    e: u64,
    mode: FailMode,
) -> Result<f64> {
    let t = dist.t();
    check_tolerance(t, e)?;
    let b_f = phase.scaled_floor(t);
    let p = match mode {
        FailMode::Definition => {
            let n = 1u64 << t;
            dist.probs()
                .iter()
                .enumerate()
                .filter(|(m, _)| mod_abs_int(*m as i64 - b_f, n) > e)
                .map(|(_, p)| p)
                .sum()
        }
        FailMode::Sum => {
            let half = 1i64 << (t - 1);
            let e = e as i64;
            let phi = phase.value();
            let amp2 = |ell: i64| alpha_geom(phi, t, b_f + ell).norm_sqr();
            let low: f64 = (-half + 1..=-(e + 1)).map(amp2).sum();
            let high: f64 = (e + 1..=half).map(amp2).sum();
            low + high
        }
    };
    Ok(p)
}

/// `P_success(e)`: probability that the outcome is within `e` steps (mod
/// `2^t`) of `b_f`.
pub fn success_prob(dist: &MeasurementDistribution, phase: &Phase, e: u64) -> Result<f64> {
    check_tolerance(dist.t(), e)?;
    Ok(success_mass(dist, phase.scaled_floor(dist.t()), e))
}

/// Probability that the estimate `m/2^t` lies within `2^{−n}` of `φ` on the
/// unit circle.
pub fn precision_success_prob(dist: &MeasurementDistribution, phase: &Phase, n: u32) -> f64 {
    let radius = 1.0 / pow2(n);
    let scale = pow2(dist.t());
    let phi = phase.value();
    dist.probs()
        .iter()
        .enumerate()
        .filter(|(m, _)| mod_abs(*m as f64 / scale - phi, 1.0) <= radius)
        .map(|(_, p)| p)
        .sum()
}

/// `1/(2e) + 1/(4e²)`, valid for `e ≥ 1`.
pub fn tight_failure_bound(e: u64) -> Result<f64> {
    if e == 0 {
        return Err(Error::domain("error tolerance e must be >= 1"));
    }
    let e = e as f64;
    Ok(1.0 / (2.0 * e) + 1.0 / (4.0 * e * e))
}

/// The textbook bound `1/(2(e − 1))`, valid for `e ≥ 2`.
pub fn original_failure_bound(e: u64) -> Result<f64> {
    if e < 2 {
        return Err(Error::domain(format!(
            "original failure bound needs e >= 2, got {e}"
        )));
    }
    Ok(1.0 / (2.0 * (e as f64 - 1.0)))
}

/// `(1/4)(Σ_{ℓ=−2^{t−1}+1}^{−(e+1)} + Σ_{ℓ=e+1}^{2^{t−1}}) 1/(ℓ − 2^tδ)²`.
pub fn failure_bound_lemma(t: u32, scaled_delta: f64, e: u64) -> Result<f64> {
    check_tolerance(t, e)?;
    let half = 1i64 << (t - 1);
    let e = e as i64;
    let term = |ell: i64| {
        let gap = ell as f64 - scaled_delta;
        1.0 / (gap * gap)
    };
    let low: f64 = (-half + 1..=-(e + 1)).map(term).sum();
    let high: f64 = (e + 1..=half).map(term).sum();
    Ok((low + high) / 4.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FailureBounds {
    pub tight: f64,
    /// Present when a `(t, 2^tδ_{b_f})` pair was supplied.
    pub lemma_form: Option<f64>,
    /// Absent for `e = 1`, where the textbook bound does not apply.
    pub original: Option<f64>,
}

/// The tight and textbook failure bounds at tolerance `e`.
pub fn failure_bounds(e: u64) -> Result<FailureBounds> {
    Ok(FailureBounds {
        tight: tight_failure_bound(e)?,
        lemma_form: None,
        original: original_failure_bound(e).ok(),
    })
}

impl FailureBounds {
    pub fn with_lemma(mut self, t: u32, scaled_delta: f64, e: u64) -> Result<Self> {
        self.lemma_form = Some(failure_bound_lemma(t, scaled_delta, e)?);
        Ok(self)
    }
}

/// Target precision: `n` bits with failure probability at most `ε`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionSpec {
    n: u32,
    epsilon: f64,
}

impl PrecisionSpec {
    pub fn new(n: u32, epsilon: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("precision bits n must be >= 1"));
        }
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(Error::domain(format!("ε = {epsilon} not in (0, 1]")));
        }
        Ok(PrecisionSpec { n, epsilon })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

/// `n + ⌈log₂(2 + 1/(2ε))⌉`, with the ceiling found by doubling so exact
/// powers of two are not at the mercy of `log2` rounding.
pub fn t_required(spec: &PrecisionSpec) -> u32 {
    let x = 2.0 + 1.0 / (2.0 * spec.epsilon);
    let mut c = 0u32;
    while pow2(c) < x {
        c += 1;
    }
    spec.n + c
}

/// `2^{t−n} − 1`.
pub fn e_value(t: u32, n: u32) -> Result<u64> {
    if t <= n {
        return Err(Error::domain(format!("e_value needs t > n, got t = {t}, n = {n}")));
    }
    if t - n >= 63 {
        return Err(Error::domain("t − n too large"));
    }
    Ok((1u64 << (t - n)) - 1)
}

/// Outcome of [`trig_bound_checks`]: one flag per inequality, each true iff
/// it held at every sample in its domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrigBoundReport {
    /// `(2/π)θ ≤ |1 − e^{iθ}|` on `[0, π]`.
    pub chord_lower: bool,
    /// `|1 − e^{iθ}| ≤ 2` on `[0, π]`.
    pub chord_upper: bool,
    /// `sin θ ≥ (2/π)θ` on `[0, π/2]`.
    pub sine_lower: bool,
    /// `sin θ < θ` on `(0, ∞)`, for samples above `1e-15`.
    pub sine_below_identity: bool,
    /// `|1 − e^{iθ}| = 2 sin(θ/2)` within `1e-15` on `[0, π]`.
    pub chord_identity: bool,
    pub samples_checked: [usize; 4],
}

impl TrigBoundReport {
    pub fn all_hold(&self) -> bool {
        self.chord_lower
            && self.chord_upper
            && self.sine_lower
            && self.sine_below_identity
            && self.chord_identity
    }
}

/// `|1 − e^{iθ}|`.
pub fn chord(theta: f64) -> f64 {
    (1.0 - theta.cos()).hypot(theta.sin())
}

/// Checks the chord and sine bounds at every sample that lies in the
/// corresponding domain. Negative or non-finite samples are rejected.
pub fn trig_bound_checks(samples: &[f64]) -> Result<TrigBoundReport> {
    if let Some(bad) = samples.iter().find(|x| !x.is_finite() || **x < 0.0) {
        return Err(Error::domain(format!("angle sample {bad} outside [0, ∞)")));
    }
    let mut r = TrigBoundReport {
        chord_lower: true,
        chord_upper: true,
        sine_lower: true,
        sine_below_identity: true,
        chord_identity: true,
        samples_checked: [0; 4],
    };
    for &theta in samples {
        // (2θ)/π rather than (2/π)·θ: exact at θ = π/2 and θ = π.
        let line = 2.0 * theta / PI;
        if theta <= PI {
            let c = chord(theta);
            r.chord_lower &= line <= c;
            r.chord_upper &= c <= 2.0;
            r.chord_identity &= (c - 2.0 * (theta / 2.0).sin()).abs() <= 1e-15;
            r.samples_checked[0] += 1;
            r.samples_checked[1] += 1;
        }
        if theta <= PI / 2.0 {
            r.sine_lower &= theta.sin() >= line;
            r.samples_checked[2] += 1;
        }
        if theta > 1e-15 {
            r.sine_below_identity &= theta.sin() < theta;
            r.samples_checked[3] += 1;
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::plus_register;
    use crate::linalg::{inner_product, number_ket};

    fn close(a: Complex, b: Complex, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn mod_add_examples() {
        assert_eq!(mod_add(5, 6, 3), 3);
        assert_eq!(mod_add(0, 0, 5), 0);
        assert_eq!(mod_add(-1, 0, 3), 7);
        assert_eq!(mod_add(8, 0, 3), 0);
    }

    #[test]
    fn mod_abs_examples() {
        assert_eq!(mod_abs(7.0, 8.0), 1.0);
        assert!((mod_abs(0.3, 1.0) - 0.3).abs() < 1e-15);
        assert!((mod_abs(0.7, 1.0) - 0.3).abs() < 1e-15);
        for t in 1..=6u32 {
            let half = 1i64 << (t - 1);
            for ell in -half + 1..=half {
                assert_eq!(mod_abs(ell as f64, pow2(t)), ell.abs() as f64);
                assert_eq!(mod_abs_int(ell, 1 << t), ell.unsigned_abs());
            }
        }
    }

    #[test]
    fn floor_round_delta_examples() {
        assert_eq!(best_floor(0.3, 3).unwrap(), 2);
        assert_eq!(best_floor(0.0, 5).unwrap(), 0);
        assert_eq!(best_floor(0.875, 3).unwrap(), 7);
        assert!(best_floor(1.0, 3).is_err());
        assert!(best_floor(-0.1, 3).is_err());
        assert_eq!(best_round(0.3, 3), 2);
        assert_eq!(best_round(0.96875, 3), 8);
        assert_eq!(mod_add(best_round(0.96875, 3), 0, 3), 0);
        assert_eq!(best_round(0.3125, 3), 3);
        assert!((delta_b(0.3, 3, 2) - 0.05).abs() < 1e-16);
        assert_eq!(delta_b(0.625, 3, 5), 0.0);
    }

    #[test]
    fn psi_t_examples() {
        let phi = 0.3;
        let psi1 = psi_t_tensor(phi, 1).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(psi1.get(0).unwrap(), Complex::new(h, 0.0), 1e-15));
        assert!(close(psi1.get(1).unwrap(), turn(phi) * h, 1e-15));

        for t in 1..=6 {
            let plus = plus_register(t).unwrap();
            assert!(psi_t_tensor(0.0, t).unwrap().max_abs_diff(&plus).unwrap() < 1e-15);
            assert!(psi_t_sum(0.0, t).unwrap().max_abs_diff(&plus).unwrap() < 1e-15);
        }

        let quarter = psi_t_sum(0.25, 2).unwrap();
        let expected = [
            Complex::new(0.5, 0.0),
            Complex::new(0.0, 0.5),
            Complex::new(-0.5, 0.0),
            Complex::new(0.0, -0.5),
        ];
        for (a, b) in quarter.amplitudes().iter().zip(expected) {
            assert!(close(*a, b, 1e-15));
        }
    }

    #[test]
    fn psi_t_direct_evaluation() {
        let psi = psi_t_tensor(0.3, 2).unwrap();
        for k in 0..4 {
            let direct = Complex::from_polar(0.5, 2.0 * PI * 0.3 * k as f64);
            assert!(close(psi.get(k).unwrap(), direct, 1e-15));
        }
    }

    #[test]
    fn big_psi_examples() {
        for t in 1..=5u32 {
            for k in 0..(1u64 << t) {
                let psi = big_psi(k as f64 / pow2(t), t).unwrap();
                assert!(psi.max_abs_diff(&number_ket(k, t).unwrap()).unwrap() < 1e-10);
            }
        }
        let psi = big_psi(0.3, 3).unwrap();
        for m in 0..8 {
            assert!(close(psi.get(m as usize).unwrap(), alpha_m_eval(0.3, 3, m).unwrap(), 1e-12));
        }
    }

    #[test]
    fn alpha_examples() {
        assert!(close(alpha_m_eval(5.0 / 8.0, 3, 5).unwrap(), Complex::new(1.0, 0.0), 1e-14));
        for m in 1..8 {
            assert!(alpha_m_eval(0.0, 3, m).unwrap().norm() < 1e-15);
        }
        assert!(alpha_m_eval(0.3, 3, 8).is_err());
        let a = alpha_m_eval(0.3, 3, 2).unwrap();
        let sim = inner_product(&number_ket(2, 3).unwrap(), &big_psi(0.3, 3).unwrap()).unwrap();
        assert!(close(a, sim, 1e-12));
        assert!(close(alpha_geom(0.625, 3, 5), Complex::new(1.0, 0.0), 1e-15));
        for m in -20..20 {
            let g = alpha_geom(0.3, 3, m);
            assert!(close(g, alpha_geom(0.3, 3, m + 8), 1e-12));
            assert!(close(g, alpha_m_unreduced(0.3, 3, m), 1e-12));
            assert!(close(g, alpha_m_eval(0.3, 3, mod_add(m, 0, 3)).unwrap(), 1e-12));
        }
    }

    #[test]
    fn alpha_closed_matches_geometric_sum() {
        let phase = Phase::rational(3, 10).unwrap();
        let b_f = phase.scaled_floor(4);
        for ell in -7..=8 {
            if ell == 0 {
                assert!(alpha_closed(&phase, 4, ell).is_err());
                continue;
            }
            let c = alpha_closed(&phase, 4, ell).unwrap();
            assert!(close(c, alpha_geom(0.3, 4, b_f + ell), 1e-13), "ℓ = {ell}");
            assert!(c.norm() <= 1.0);
        }
        assert!(alpha_closed(&phase, 4, 9).is_err());
        assert!(alpha_closed(&phase, 4, -8).is_err());
    }

    #[test]
    fn alpha_closed_vanishes_on_exact_phase() {
        let phase = Phase::dyadic(5, 3).unwrap();
        for ell in [-3, -1, 1, 2, 4] {
            assert_eq!(alpha_closed(&phase, 3, ell).unwrap(), ZERO);
        }
    }

    #[test]
    fn alpha_sqrd_bound_examples() {
        assert_eq!(alpha_sqrd_bound(3, 0.0, 1).unwrap(), 0.25);
        assert!((alpha_sqrd_bound(3, 0.05, 2).unwrap() - 0.09765625).abs() < 1e-15);
        assert!(alpha_sqrd_bound(3, 0.05, 0).is_err());
    }

    #[test]
    fn failure_bound_values() {
        assert_eq!(tight_failure_bound(1).unwrap(), 0.75);
        assert_eq!(tight_failure_bound(2).unwrap(), 0.3125);
        assert_eq!(original_failure_bound(2).unwrap(), 0.5);
        assert_eq!(tight_failure_bound(4).unwrap(), 0.140625);
        assert!(original_failure_bound(1).is_err());
        assert!(tight_failure_bound(0).is_err());
        let b = failure_bounds(1).unwrap();
        assert_eq!(b.original, None);
        let b = failure_bounds(2).unwrap().with_lemma(5, 0.4, 2).unwrap();
        assert!(b.tight < b.original.unwrap());
        assert!(b.lemma_form.unwrap() > 0.0);
    }

    #[test]
    fn t_required_examples() {
        let t = |n, eps| t_required(&PrecisionSpec::new(n, eps).unwrap());
        assert_eq!(t(3, 0.25), 5);
        assert_eq!(t(1, 1.0), 3);
        assert_eq!(t(4, 0.1), 7);
        assert!(PrecisionSpec::new(0, 0.5).is_err());
        assert!(PrecisionSpec::new(2, 0.0).is_err());
        assert!(PrecisionSpec::new(2, 1.5).is_err());
    }

    #[test]
    fn e_value_examples() {
        assert_eq!(e_value(5, 3).unwrap(), 3);
        assert_eq!(e_value(3, 1).unwrap(), 3);
        assert!(e_value(3, 3).is_err());
    }

    #[test]
    fn trig_equalities() {
        assert_eq!(chord(PI), 2.0);
        assert_eq!((PI / 2.0).sin(), 2.0 * (PI / 2.0) / PI);
        let r = trig_bound_checks(&[0.0, 0.1, PI / 2.0, 1.0, PI, 5.0]).unwrap();
        assert!(r.all_hold());
        assert_eq!(r.samples_checked, [5, 5, 4, 5]);
        assert!(trig_bound_checks(&[-0.1]).is_err());
        assert!(trig_bound_checks(&[f64::NAN]).is_err());
    }

    #[test]
    fn fail_and_success_domain() {
        let dist = MeasurementDistribution::new(3, {
            let mut p = vec![0.0; 8];
            p[5] = 1.0;
            p
        })
        .unwrap();
        let phase = Phase::dyadic(5, 3).unwrap();
        for mode in [FailMode::Definition, FailMode::Sum] {
            assert!(fail_prob(&dist, &phase, 0, mode).is_err());
            assert!(fail_prob(&dist, &phase, 3, mode).is_err());
            assert!(fail_prob(&dist, &phase, 2, mode).unwrap().abs() < 1e-12);
        }
        assert!((success_prob(&dist, &phase, 1).unwrap() - 1.0).abs() < 1e-15);
    }
}
