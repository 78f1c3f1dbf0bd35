//! One runner per theorem, and the dependency graph between them.

use std::f64::consts::PI;

use crate::analytic::{
    self, alpha_closed, alpha_geom, alpha_m_eval, alpha_m_unreduced, alpha_sqrd_bound, big_psi,
    e_value, fail_prob, failure_bound_lemma, mod_abs, mod_abs_int, mod_add,
    original_failure_bound, precision_success_prob, psi_t_sum, psi_t_tensor, success_mass,
    success_prob, t_required, tight_failure_bound, trig_bound_checks, FailMode, PhaseGeometry,
    PrecisionSpec,
};
use crate::circuit::{
    amplitude, kickback_state, output_distribution, stage2_state, stage3_state,
    MeasurementDistribution, QpeInstance,
};
use crate::config::RunConfig;
use crate::error::Result;
use crate::harness::graph::{CheckContext, CheckGraph, CheckNode};
use crate::harness::grid::{dyadic_grid, phase_grid};
use crate::harness::instances::{derive_seed, diagonal_instance, random_instance};
use crate::harness::report::Tally;
use crate::linalg::{inner_product, number_ket, tensor_vec, turn, Complex, StateVector};
use crate::phase::Phase;
use crate::MAX_QUBITS;

const FOUR_OVER_PI_SQ: f64 = 4.0 / (PI * PI);

/// Largest register for the exhaustive basis-ket checks.
const KET_T_MAX: u32 = 6;

/// Samples per domain for the trigonometric bounds.
const TRIG_SAMPLES: usize = 10_000;

/// Largest `e` in the bound comparison.
pub const BOUND_COMPARISON_E_MAX: u64 = 1 << 13;

fn grid(ctx: &CheckContext<'_>, t: u32) -> Vec<Phase> {
    phase_grid(t, ctx.config.phase_kind)
}

fn analytic_ts(ctx: &CheckContext<'_>) -> std::ops::RangeInclusive<u32> {
    1..=ctx.config.t_max_analytic
}

fn sim_ts(ctx: &CheckContext<'_>) -> std::ops::RangeInclusive<u32> {
    1..=ctx.config.t_max
}

/// Diagonal instance plus `random_draws` random ones, for every configured
/// `s` that fits next to `t`.
fn instances(ctx: &CheckContext<'_>, t: u32, phase: Phase) -> Vec<(String, Result<QpeInstance>)> {
    let mut out = Vec::new();
    for &s in &ctx.config.s_values {
        if t + s > MAX_QUBITS {
            continue;
        }
        out.push((
            format!("t={t} s={s} φ={phase} diagonal"),
            diagonal_instance(t, s, phase),
        ));
        for draw in 0..ctx.config.random_draws {
            let seed = derive_seed(
                ctx.seed,
                &[t as u64, s as u64, phase.value().to_bits(), draw as u64],
            );
            out.push((
                format!("t={t} s={s} φ={phase} random seed={seed}"),
                random_instance(t, s, phase, seed),
            ));
        }
    }
    out
}

/// Diagonal instances only; enough where the distribution is what matters
/// and its independence from `U` is certified elsewhere.
fn diagonal_instances(
    ctx: &CheckContext<'_>,
    t: u32,
    phase: Phase,
) -> Vec<(String, Result<QpeInstance>)> {
    ctx.config
        .s_values
        .iter()
        .filter(|&&s| t + s <= MAX_QUBITS)
        .map(|&s| (format!("t={t} s={s} φ={phase}"), diagonal_instance(t, s, phase)))
        .collect()
}

fn distribution_of(tally: &mut Tally, label: &str, inst: &Result<QpeInstance>) -> Option<MeasurementDistribution> {
    match inst.as_ref().map_err(Clone::clone).and_then(output_distribution) {
        Ok(d) => Some(d),
        Err(e) => {
            tally.error(&e, || label.to_string());
            None
        }
    }
}

fn analytic_distribution(phase: &Phase, t: u32) -> Result<MeasurementDistribution> {
    let phi = phase.value();
    let probs = (0..1u64 << t)
        .map(|m| alpha_m_eval(phi, t, m).map(|a| a.norm_sqr()))
        .collect::<Result<Vec<_>>>()?;
    MeasurementDistribution::new(t, probs)
}

fn offsets(t: u32) -> impl Iterator<Item = i64> {
    let half = 1i64 << (t - 1);
    (-half + 1..=half).filter(|&l| l != 0)
}

fn admissible_e(t: u32) -> std::ops::RangeInclusive<u64> {
    1..=((1u64 << (t - 1)).saturating_sub(2))
}

/// Tolerances at which the O(4^t) sum mode is evaluated: all of them up
/// to `t = 6`, then both ends of the range and its middle.
fn sum_mode_e(t: u32) -> Vec<u64> {
    let all: Vec<u64> = admissible_e(t).collect();
    if t <= 6 {
        return all;
    }
    let max = *all.last().expect("t >= 3");
    let mut picked = vec![1, 2, 3, 4, max / 2, max - 1, max];
    picked.dedup();
    picked
}

fn precision_grid(ctx: &CheckContext<'_>) -> Vec<(PrecisionSpec, u32)> {
    let mut out = Vec::new();
    for &n in &ctx.config.precision_bits {
        for &eps in &ctx.config.epsilons {
            if let Ok(spec) = PrecisionSpec::new(n, eps) {
                out.push((spec, t_required(&spec)));
            }
        }
    }
    out
}

fn note_over_cap(tally: &mut Tally, skipped: &[String], cap: u32) {
    if !skipped.is_empty() {
        tally.set_note(format!(
            "t_required above {cap} not run for (n, ε) = {}",
            skipped.join(" ")
        ));
    }
}

// ----- foundations -------------------------------------------------------

fn two_pow_t_is_nat_pos(ctx: &CheckContext<'_>) -> Tally {
    let mut tally = Tally::new();
    for t in analytic_ts(ctx) {
        let v = 1u64.checked_shl(t);
        tally.exact(matches!(v, Some(x) if x >= 1), || format!("t={t}"));
    }
    tally
}

fn two_pow_t_minus_one_is_nat_pos(ctx: &CheckContext<'_>) -> Tally {
    let mut tally = Tally::new();
    for t in analytic_ts(ctx) {
        let v = 1u64.checked_shl(t - 1);
        tally.exact(matches!(v, Some(x) if x >= 1), || format!("t={t}"));
    }
    tally
}

fn phase_is_real(ctx: &CheckContext<'_>) -> Tally {
    let mut tally = Tally::new();
    for t in analytic_ts(ctx) {
        for p in grid(ctx, t) {
            let v = p.value();
            tally.exact(v.is_finite() && (0.0..1.0).contains(&v), || format!("φ={p}"));
        }
    }
    tally
}

fn mod_add_closure(ctx: &CheckContext<'_>) -> Tally {
    let mut tally = Tally::new();
    for t in 1..=ctx.config.t_max_analytic.min(KET_T_MAX) {
        let n = 1i64 << t;
        for a in -2 * n..2 * n {
            for b in [-n - 1, -1, 0, 1, n - 1, n, 3 * n + 1] {
                let r = mod_add(a, b, t);
                let holds = r < n as u64 && (a + b - r as i64) % n == 0;
                tally.exact(holds, || format!("t={t} a={a} b={b}"));
            }
        }
    }
    tally
}

fn modabs_in_full_domain(ctx: &CheckContext<'_>) -> Tally {
    let mut tally = Tally::new();
    for t in analytic_ts(ctx) {
        for ell in offsets(t).chain([0]) {
            let holds = mod_abs_int(ell, 1 << t) == ell.unsigned_abs()
                && mod_abs(ell as f64, (1u64 << t) as f64) == ell.abs() as f64;
            tally.exact(holds, || format!("t={t} ℓ={ell}"));
        }
    }
    tally
}

fn geometry_check(
    ctx: &CheckContext<'_>,
    mut f: impl FnMut(&mut Tally, &PhaseGeometry, u32, &Phase),
) -> Tally {
    let mut tally = Tally::new();
    for t in analytic_ts(ctx) {
        for p in grid(ctx, t) {
            f(&mut tally, &PhaseGeometry::new(&p, t), t, &p);
        }
    }
    tally
}

fn best_floor_is_int(ctx: &CheckContext<'_>) -> Tally {
    geometry_check(ctx, |tally, g, t, p| {
        // b_f·q ≤ 2^t·p < (b_f + 1)·q for exact phases; the float route
        // must agree for decimal ones.
        let holds = match *p {
            Phase::Rational {
                numerator,
                denominator,
            } => {
                let lhs = (numerator as i128) << t;
                let b = g.b_floor as i128;
                b * denominator as i128 <= lhs && lhs < (b + 1) * denominator as i128
            }
            Phase::Real { value } => analytic::best_floor(value, t).ok() == Some(g.b_floor),
        };
        tally.exact(holds, || format!("t={t} φ={p}"));
    })
}

fn best_round_is_int(ctx: &CheckContext<'_>) -> Tally {
    geometry_check(ctx, |tally, g, t, p| {
        let d = g.b_round - g.b_floor;
        let holds = (d == 0 || d == 1) && (d == 1) == (g.scaled_delta_floor >= 0.5);
        tally.exact(holds, || format!("t={t} φ={p}"));
    })
}

fn best_floor_in_m_domain(ctx: &CheckContext<'_>) -> Tally {
    geometry_check(ctx, |tally, g, t, p| {
        let margin = g.b_floor.min((1i64 << t) - 1 - g.b_floor) as f64;
        tally.record(margin, margin >= 0.0, || format!("t={t} φ={p}"));
    })
}

fn delta_b_is_real(ctx: &CheckContext<'_>) -> Tally {
    geometry_check(ctx, |tally, g, t, p| {
        tally.exact(
            g.delta_floor.is_finite() && g.delta_round.is_finite(),
            || format!("t={t} φ={p}"),
        );
    })
}

fn phase_from_best_with_delta(ctx: &CheckContext<'_>) -> Tally {
    let tol = ctx.config.tolerances.elementwise;
    geometry_check(ctx, |tally, g, t, p| {
        let scale = (1u64 << t) as f64;
        for (b, d) in [(g.b_floor, g.delta_floor), (g.b_round, g.delta_round)] {
            let err = (b as f64 / scale + d - p.value()).abs();
            tally.within(err, tol, || format!("t={t} φ={p} b={b}"));
        }
    })
}

fn half_open_margin(x: f64, lo: f64, hi: f64) -> (f64, bool) {
    ((x - lo).min(hi - x), x >= lo && x < hi)
}

fn scaled_delta_floor_interval(ctx: &CheckContext<'_>) -> Tally {
    geometry_check(ctx, |tally, g, t, p| {
        let (m, ok) = half_open_margin(g.scaled_delta_floor, 0.0, 1.0);
        tally.record(m, ok, || format!("t={t} φ={p} 2^tδ={}", g.scaled_delta_floor));
    })
}

fn scaled_delta_round_interval(ctx: &CheckContext<'_>) -> Tally {
    geometry_check(ctx, |tally, g, t, p| {
        let (m, ok) = half_open_margin(g.scaled_delta_round, -0.5, 0.5);
        tally.record(m, ok, || format!("t={t} φ={p} 2^tδ={}", g.scaled_delta_round));
    })
}

fn delta_b_interval(ctx: &CheckContext<'_>) -> Tally {
    geometry_check(ctx, |tally, g, t, p| {
        for d in [g.delta_floor, g.delta_round] {
            let ok = d > -0.5 && d <= 0.5;
            tally.record((d + 0.5).min(0.5 - d), ok, || format!("t={t} φ={p} δ={d}"));
        }
        let bad = g.interval_violations();
        tally.exact(bad.is_empty(), || format!("t={t} φ={p}: {}", bad.join("; ")));
    })
}

fn delta_b_zero_or_non_int(ctx: &CheckContext<'_>) -> Tally {
    geometry_check(ctx, |tally, g, t, p| {
        for (b, d) in [(g.b_floor, g.delta_floor), (g.b_round, g.delta_round)] {
            let zero = p.scaled_delta_is_zero(t, b);
            let holds = if zero { d == 0.0 } else { d.fract() != 0.0 };
            tally.exact(holds, || format!("t={t} φ={p} b={b}"));
        }
    })
}

fn scaled_delta_zero_or_non_int(ctx: &CheckContext<'_>) -> Tally {
    geometry_check(ctx, |tally, g, t, p| {
        for (b, x) in [
            (g.b_floor, g.scaled_delta_floor),
            (g.b_round, g.scaled_delta_round),
        ] {
            let zero = p.scaled_delta_is_zero(t, b);
            let holds = if zero { x == 0.0 } else { x.fract() != 0.0 };
            tally.exact(holds, || format!("t={t} φ={p} b={b}"));
        }
    })
}

fn scaled_delta_not_nonzero_int(ctx: &CheckContext<'_>) -> Tally {
    geometry_check(ctx, |tally, g, t, p| {
        for b in [g.b_floor, g.b_round] {
            for ell in offsets(t) {
                // 2^tδ_b = ℓ  ⇔  2^tφ − (b + ℓ) = 0
                tally.exact(!p.scaled_delta_is_zero(t, b + ell), || {
                    format!("t={t} φ={p} b={b} ℓ={ell}")
                });
            }
        }
    })
}

fn delta_not_scaled_nonzero_int(ctx: &CheckContext<'_>) -> Tally {
    geometry_check(ctx, |tally, g, t, p| {
        for b in [g.b_floor, g.b_round] {
            for ell in offsets(t) {
                tally.exact(!p.delta_minus_offset_is_integer(t, b, ell), || {
                    format!("t={t} φ={p} b={b} ℓ={ell}")
                });
            }
        }
    })
}

fn delta_floor_diff_interval(ctx: &CheckContext<'_>) -> Tally {
    geometry_check(ctx, |tally, g, t, p| {
        let scale = (1u64 << t) as f64;
        for ell in offsets(t) {
            // (2^tδ_bf − ℓ)/2^t, formed from exact pieces.
            let x = (g.scaled_delta_floor - ell as f64) / scale;
            let (m, ok) = half_open_margin(x, -0.5, 0.5);
            tally.record(m, ok, || format!("t={t} φ={p} ℓ={ell}"));
        }
    })
}

fn non_int_delta_diff(ctx: &CheckContext<'_>) -> Tally {
    geometry_check(ctx, |tally, g, t, p| {
        let scale = (1u64 << t) as f64;
        for ell in offsets(t) {
            let x = (g.scaled_delta_floor - ell as f64) / scale;
            let exact = !p.delta_minus_offset_is_integer(t, g.b_floor, ell);
            tally.exact(exact && x.fract() != 0.0, || format!("t={t} φ={p} ℓ={ell}"));
        }
    })
}

fn scaled_abs_delta_floor_diff(ctx: &CheckContext<'_>) -> Tally {
    geometry_check(ctx, |tally, g, t, p| {
        for ell in offsets(t) {
            let gap = (ell as f64 - g.scaled_delta_floor).abs();
            let a = ell.unsigned_abs() as f64;
            // ℓ ≥ 1: |ℓ − 2^tδ| ∈ (ℓ−1, ℓ];  ℓ ≤ −1: |ℓ − 2^tδ| ∈ [|ℓ|, |ℓ|+1).
            let (m, ok) = if ell > 0 {
                ((gap - (a - 1.0)).min(a - gap), gap > a - 1.0 && gap <= a)
            } else {
                half_open_margin(gap, a, a + 1.0)
            };
            tally.record(m, ok, || format!("t={t} φ={p} ℓ={ell}"));
        }
    })
}

fn alpha_are_complex(ctx: &CheckContext<'_>) -> Tally {
    let mut tally = Tally::new();
    for t in sim_ts(ctx) {
        for p in grid(ctx, t) {
            for m in 0..1u64 << t {
                match alpha_m_eval(p.value(), t, m) {
                    Ok(a) => tally.exact(a.re.is_finite() && a.im.is_finite(), || {
                        format!("t={t} φ={p} m={m}")
                    }),
                    Err(e) => tally.error(&e, || format!("t={t} φ={p} m={m}")),
                }
            }
        }
    }
    tally
}

fn psi_t_normalized(ctx: &CheckContext<'_>) -> Tally {
    let tol = ctx.config.tolerances.amplitude;
    let mut tally = Tally::new();
    for t in analytic_ts(ctx) {
        for p in grid(ctx, t) {
            let n = psi_t_sum(p.value(), t).map(|v| v.norm());
            match n {
                Ok(n) => tally.within((n - 1.0).abs(), tol, || format!("t={t} φ={p}")),
                Err(e) => tally.error(&e, || format!("t={t} φ={p}")),
            }
        }
    }
    tally
}

fn big_psi_normalized(ctx: &CheckContext<'_>) -> Tally {
    let tol = ctx.config.tolerances.amplitude;
    let mut tally = Tally::new();
    for t in sim_ts(ctx) {
        for p in grid(ctx, t) {
            match big_psi(p.value(), t).map(|v| v.norm()) {
                Ok(n) => tally.within((n - 1.0).abs(), tol, || format!("t={t} φ={p}")),
                Err(e) => tally.error(&e, || format!("t={t} φ={p}")),
            }
        }
    }
    tally
}

fn pfail_in_real(ctx: &CheckContext<'_>) -> Tally {
    let mut tally = Tally::new();
    for t in 3..=ctx.config.t_max {
        for p in grid(ctx, t) {
            let dist = match analytic_distribution(&p, t) {
                Ok(d) => d,
                Err(e) => {
                    tally.error(&e, || format!("t={t} φ={p}"));
                    continue;
                }
            };
            for e in admissible_e(t) {
                match fail_prob(&dist, &p, e, FailMode::Definition) {
                    Ok(f) => {
                        let ok = f.is_finite() && (0.0..=1.0 + 1e-12).contains(&f);
                        tally.exact(ok, || format!("t={t} φ={p} e={e} P={f}"))
                    }
                    Err(err) => tally.error(&err, || format!("t={t} φ={p} e={e}")),
                }
            }
        }
    }
    tally
}

fn e_value_ge_two(ctx: &CheckContext<'_>) -> Tally {
    let mut tally = Tally::new();
    for (spec, t) in precision_grid(ctx) {
        match e_value(t, spec.n()) {
            Ok(e) => tally.record(e as f64 - 2.0, e >= 2, || {
                format!("n={} ε={} e={e}", spec.n(), spec.epsilon())
            }),
            Err(err) => tally.error(&err, || format!("n={}", spec.n())),
        }
    }
    tally
}

fn e_value_in_e_domain(ctx: &CheckContext<'_>) -> Tally {
    let mut tally = Tally::new();
    let mut single_bit = false;
    for (spec, t) in precision_grid(ctx) {
        if spec.n() < 2 {
            // 2^{t−1} − 1 is one past the admissible range when n = 1.
            single_bit = true;
            continue;
        }
        match e_value(t, spec.n()) {
            Ok(e) => {
                let max = (1u64 << (t - 1)) - 2;
                tally.record(max as f64 - e as f64, e <= max, || {
                    format!("n={} ε={} t={t} e={e}", spec.n(), spec.epsilon())
                })
            }
            Err(err) => tally.error(&err, || format!("n={}", spec.n())),
        }
    }
    if single_bit {
        tally.set_note("n = 1 excluded: e_value = 2^(t-1) - 1 lies outside {1..2^(t-1)-2}");
    }
    tally
}

// ----- circuit states ----------------------------------------------------

fn kickback_factor(phi: f64, j: u32) -> StateVector {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    StateVector::new(vec![Complex::new(h, 0.0), turn(phi * (1u64 << j) as f64) * h])
        .expect("finite")
}

fn phase_kickbacks(ctx: &CheckContext<'_>) -> Tally {
    let tol = ctx.config.tolerances.state;
    let t = ctx.config.t_max;
    let mut tally = Tally::new();
    for p in grid(ctx, t) {
        for (label, inst) in instances(ctx, t, p) {
            let inst = match inst {
                Ok(i) => i,
                Err(e) => {
                    tally.error(&e, || label.clone());
                    continue;
                }
            };
            for j in 0..t {
                let expected = tensor_vec(&kickback_factor(p.value(), j), inst.eigenvector());
                let err = kickback_state(&inst, j).and_then(|v| v.max_abs_diff(&expected));
                match err {
                    Ok(err) => tally.within(err, tol, || format!("{label} j={j}")),
                    Err(e) => tally.error(&e, || format!("{label} j={j}")),
                }
            }
        }
    }
    tally
}

fn stage_check(
    ctx: &CheckContext<'_>,
    simulated: fn(&QpeInstance) -> Result<StateVector>,
    expected: fn(f64, u32) -> Result<StateVector>,
) -> Tally {
    let tol = ctx.config.tolerances.state;
    let mut tally = Tally::new();
    for t in sim_ts(ctx) {
        for p in grid(ctx, t) {
            for (label, inst) in instances(ctx, t, p) {
                let err = inst.and_then(|inst| {
                    simulated(&inst)?.max_abs_diff(&expected(p.value(), t)?)
                });
                match err {
                    Ok(err) => tally.within(err, tol, || label),
                    Err(e) => tally.error(&e, || label),
                }
            }
        }
    }
    tally
}

fn psi_t_output(ctx: &CheckContext<'_>) -> Tally {
    stage_check(ctx, stage2_state, psi_t_tensor)
}

fn big_psi_output(ctx: &CheckContext<'_>) -> Tally {
    stage_check(ctx, stage3_state, big_psi)
}

fn sample_space_bijection(ctx: &CheckContext<'_>) -> Tally {
    let mut tally = Tally::new();
    for t in 1..=ctx.config.t_max_analytic.min(KET_T_MAX) {
        let kets: Vec<StateVector> = (0..1u64 << t)
            .map(|m| number_ket(m, t).expect("m < 2^t"))
            .collect();
        for (m, a) in kets.iter().enumerate() {
            // The ket of m is the tensor product of its bits, MSB first.
            let mut bits = number_ket((m >> (t - 1)) as u64 & 1, 1).expect("bit");
            for j in (0..t - 1).rev() {
                bits = tensor_vec(&bits, &number_ket((m >> j) as u64 & 1, 1).expect("bit"));
            }
            tally.exact(a == &bits, || format!("t={t} m={m} bits"));
            for (n, b) in kets.iter().enumerate() {
                let ip = inner_product(a, b).expect("same width");
                let want = if m == n { 1.0 } else { 0.0 };
                tally.exact(ip == Complex::new(want, 0.0), || format!("t={t} ⟨{m}|{n}⟩"));
            }
        }
    }
    tally
}

fn outcome_prob(ctx: &CheckContext<'_>) -> Tally {
    let tol = ctx.config.tolerances.probability;
    let mut tally = Tally::new();
    for t in sim_ts(ctx) {
        for p in grid(ctx, t) {
            let psi = match big_psi(p.value(), t) {
                Ok(v) => v,
                Err(e) => {
                    tally.error(&e, || format!("t={t} φ={p}"));
                    continue;
                }
            };
            for (label, inst) in instances(ctx, t, p) {
                let Some(dist) = distribution_of(&mut tally, &label, &inst) else {
                    continue;
                };
                let err = (0..1u64 << t)
                    .map(|m| (dist.prob(m) - psi.amplitudes()[m as usize].norm_sqr()).abs())
                    .fold(0.0, f64::max);
                tally.within(err, tol, || label);
            }
        }
    }
    tally
}

fn omega_is_sample_space(ctx: &CheckContext<'_>) -> Tally {
    let tol = ctx.config.tolerances.probability;
    let mut tally = Tally::new();
    for t in sim_ts(ctx) {
        for p in grid(ctx, t) {
            for (label, inst) in diagonal_instances(ctx, t, p) {
                let Some(dist) = distribution_of(&mut tally, &label, &inst) else {
                    continue;
                };
                tally.within((dist.total() - 1.0).abs(), tol, || format!("{label} total"));
                let n = 1u64 << t;
                let evens = dist.event_prob((0..n).step_by(2));
                let odds = dist.event_prob((1..n).step_by(2));
                let all = dist.event_prob(0..n);
                tally.within((evens + odds - all).abs(), tol, || format!("{label} additivity"));
                tally.exact(dist.probs().iter().all(|&x| x >= 0.0), || format!("{label} sign"));
            }
            let analytic: Result<f64> = (0..1u64 << t)
                .map(|m| alpha_m_eval(p.value(), t, m).map(|a| a.norm_sqr()))
                .sum();
            match analytic {
                Ok(s) => tally.within((s - 1.0).abs(), tol, || format!("t={t} φ={p} Σ|α|²")),
                Err(e) => tally.error(&e, || format!("t={t} φ={p}")),
            }
        }
    }
    tally
}

// ----- ψ_t and amplitudes ------------------------------------------------

fn psi_t_formula(ctx: &CheckContext<'_>) -> Tally {
    let tol = ctx.config.tolerances.elementwise;
    let mut tally = Tally::new();
    for t in analytic_ts(ctx) {
        for p in grid(ctx, t) {
            let phi = p.value();
            let err = psi_t_tensor(phi, t).and_then(|a| a.max_abs_diff(&psi_t_sum(phi, t)?));
            match err {
                Ok(err) => tally.within(err, tol, || format!("t={t} φ={p} tensor=sum")),
                Err(e) => tally.error(&e, || format!("t={t} φ={p}")),
            }
            if t < ctx.config.t_max_analytic {
                induction_identities(&mut tally, phi, t, tol, &p);
            }
        }
    }
    for t in 1..=ctx.config.t_max_analytic.min(KET_T_MAX) {
        let zero = number_ket(0, 1).expect("bit");
        let one = number_ket(1, 1).expect("bit");
        for k in 0..1u64 << t {
            let kt = number_ket(k, t).expect("k < 2^t");
            let lo = number_ket(k, t + 1).expect("k < 2^(t+1)");
            let hi = number_ket((1 << t) + k, t + 1).expect("k < 2^(t+1)");
            tally.exact(tensor_vec(&zero, &kt) == lo, || format!("|0⟩⊗|{k}⟩_{t}"));
            tally.exact(tensor_vec(&one, &kt) == hi, || format!("|1⟩⊗|{k}⟩_{t}"));
        }
    }
    tally
}

/// Sum split, sum shift and the ψ recursion from `t` to `t + 1`.
fn induction_identities(tally: &mut Tally, phi: f64, t: u32, tol: f64, p: &Phase) {
    let n = 1usize << t;
    let term = |k: usize| turn(phi * k as f64);
    let full: Vec<Complex> = (0..2 * n).map(term).collect();
    let mut low = vec![Complex::new(0.0, 0.0); 2 * n];
    let mut high = low.clone();
    for k in 0..n {
        low[k] = term(k);
    }
    for k in n..2 * n {
        high[k] = term(k);
    }
    let split = full
        .iter()
        .zip(low.iter().zip(&high))
        .map(|(f, (a, b))| (f - (a + b)).norm())
        .fold(0.0, f64::max);
    tally.within(split, tol, || format!("t={t} φ={p} split"));

    let step = turn(phi * n as f64);
    let shift = (0..n)
        .map(|k| (high[k + n] - term(k) * step).norm())
        .fold(0.0, f64::max);
    tally.within(shift, tol, || format!("t={t} φ={p} shift"));

    let recursion = psi_t_sum(phi, t).and_then(|psi| {
        let factor = StateVector::new(vec![Complex::new(1.0, 0.0), step])?;
        let rhs = tensor_vec(&factor, &psi).scale(Complex::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
        psi_t_sum(phi, t + 1)?.max_abs_diff(&rhs)
    });
    match recursion {
        Ok(err) => tally.within(err, tol, || format!("t={t} φ={p} recursion")),
        Err(e) => tally.error(&e, || format!("t={t} φ={p} recursion")),
    }
}

fn alpha_m_evaluation(ctx: &CheckContext<'_>) -> Tally {
    let tol = ctx.config.tolerances.amplitude;
    let mut tally = Tally::new();
    for t in sim_ts(ctx) {
        for p in grid(ctx, t) {
            let phi = p.value();
            let run = || -> Result<(f64, f64)> {
                let psi = big_psi(phi, t)?;
                let inst = diagonal_instance(t, ctx.config.s_values[0], p)?;
                let sim = stage3_state(&inst)?;
                let (mut e_psi, mut e_sim) = (0.0f64, 0.0f64);
                for m in 0..1u64 << t {
                    let a = alpha_m_eval(phi, t, m)?;
                    let ket = number_ket(m, t)?;
                    e_psi = e_psi.max((a - inner_product(&ket, &psi)?).norm());
                    e_sim = e_sim.max((a - amplitude(&sim, m, t)?).norm());
                }
                Ok((e_psi, e_sim))
            };
            match run() {
                Ok((a, b)) => {
                    tally.within(a, tol, || format!("t={t} φ={p} vs ⟨m|Ψ⟩"));
                    tally.within(b, tol, || format!("t={t} φ={p} vs simulated"));
                }
                Err(e) => tally.error(&e, || format!("t={t} φ={p}")),
            }
        }
    }
    tally
}

fn alpha_ideal_case(ctx: &CheckContext<'_>) -> Tally {
    let tol = ctx.config.tolerances.amplitude;
    let mut tally = Tally::new();
    for t in sim_ts(ctx) {
        for (k, p) in dyadic_grid(t).into_iter().enumerate() {
            for m in 0..1u64 << t {
                let want = if m as usize == k { 1.0 } else { 0.0 };
                match alpha_m_eval(p.value(), t, m) {
                    Ok(a) => tally.within((a - Complex::new(want, 0.0)).norm(), tol, || {
                        format!("t={t} φ={p} m={m}")
                    }),
                    Err(e) => tally.error(&e, || format!("t={t} m={m}")),
                }
            }
        }
    }
    tally
}

fn qpe_exact(ctx: &CheckContext<'_>) -> Tally {
    let tol = ctx.config.tolerances.probability;
    let mut tally = Tally::new();
    for t in sim_ts(ctx) {
        for (k, p) in dyadic_grid(t).into_iter().enumerate() {
            for (label, inst) in instances(ctx, t, p) {
                let Some(dist) = distribution_of(&mut tally, &label, &inst) else {
                    continue;
                };
                let hit = dist.prob(k as u64);
                let residual: f64 = dist
                    .probs()
                    .iter()
                    .enumerate()
                    .filter(|(m, _)| *m != k)
                    .map(|(_, x)| x)
                    .sum();
                let margin = (hit - (1.0 - tol)).min(tol - residual);
                tally.record(margin, margin >= 0.0, || format!("{label} P[{k}]={hit}"));
            }
        }
    }
    tally
}

fn alpha_m_mod_evaluation(ctx: &CheckContext<'_>) -> Tally {
    let tol = ctx.config.tolerances.amplitude;
    let mut tally = Tally::new();
    for t in sim_ts(ctx) {
        let n = 1i64 << t;
        for p in grid(ctx, t) {
            let phi = p.value();
            for m in 0..n {
                let Ok(base) = alpha_m_eval(phi, t, m as u64) else {
                    continue;
                };
                let err = [-n, n]
                    .iter()
                    .map(|j| (alpha_m_unreduced(phi, t, m + j) - base).norm())
                    .fold(0.0, f64::max);
                tally.within(err, tol, || format!("t={t} φ={p} m={m}"));
            }
        }
    }
    tally
}

fn alpha_m_mod_geometric(ctx: &CheckContext<'_>) -> Tally {
    let tol = ctx.config.tolerances.amplitude;
    let mut tally = Tally::new();
    for t in sim_ts(ctx) {
        let n = 1i64 << t;
        for p in grid(ctx, t) {
            let phi = p.value();
            for m in -n / 2..n + n / 2 {
                let Ok(a) = alpha_m_eval(phi, t, mod_add(m, 0, t)) else {
                    continue;
                };
                tally.within((alpha_geom(phi, t, m) - a).norm(), tol, || {
                    format!("t={t} φ={p} m={m}")
                });
            }
        }
    }
    tally
}

fn best_amplitude_margin(p: &Phase, t: u32) -> f64 {
    let g = PhaseGeometry::new(p, t);
    alpha_geom(p.value(), t, g.round_outcome() as i64).norm_sqr() - FOUR_OVER_PI_SQ
}

fn best_guarantee_delta_nonzero(ctx: &CheckContext<'_>) -> Tally {
    let strict = ctx.config.tolerances.strict_margin;
    let mut tally = Tally::new();
    for t in analytic_ts(ctx) {
        for p in grid(ctx, t) {
            if PhaseGeometry::new(&p, t).round_exact {
                continue;
            }
            let m = best_amplitude_margin(&p, t);
            tally.record(m, m > strict, || format!("t={t} φ={p}"));
        }
    }
    tally
}

fn best_guarantee(ctx: &CheckContext<'_>) -> Tally {
    let strict = ctx.config.tolerances.strict_margin;
    let mut tally = Tally::new();
    for t in analytic_ts(ctx) {
        for p in grid(ctx, t) {
            let m = best_amplitude_margin(&p, t);
            tally.record(m, m > strict, || format!("t={t} φ={p}"));
        }
    }
    tally
}

fn qpe_best_guarantee(ctx: &CheckContext<'_>) -> Tally {
    let strict = ctx.config.tolerances.strict_margin;
    let mut tally = Tally::new();
    for t in 2..=ctx.config.t_max {
        for p in grid(ctx, t) {
            let outcome = PhaseGeometry::new(&p, t).round_outcome();
            for (label, inst) in instances(ctx, t, p) {
                let Some(dist) = distribution_of(&mut tally, &label, &inst) else {
                    continue;
                };
                let m = dist.prob(outcome) - FOUR_OVER_PI_SQ;
                tally.record(m, m > strict, || format!("{label} P[{outcome}]"));
            }
        }
    }
    tally
}

fn alpha_summed(ctx: &CheckContext<'_>) -> Tally {
    let tol = ctx.config.tolerances.amplitude;
    let mut tally = Tally::new();
    for t in 2..=ctx.config.t_max {
        for p in grid(ctx, t) {
            let b_f = p.scaled_floor(t);
            for ell in offsets(t) {
                match alpha_closed(&p, t, ell) {
                    Ok(c) => {
                        let err = (c - alpha_geom(p.value(), t, b_f + ell)).norm();
                        tally.within(err, tol, || format!("t={t} φ={p} ℓ={ell}"))
                    }
                    Err(e) => tally.error(&e, || format!("t={t} φ={p} ℓ={ell}")),
                }
            }
        }
    }
    tally
}

// ----- failure probability -----------------------------------------------

fn fail_conditions_equivalent(ctx: &CheckContext<'_>) -> Tally {
    let mut tally = Tally::new();
    for t in 3..=ctx.config.t_max {
        let n = 1i64 << t;
        let half = n / 2;
        for b_f in [0, 1, n / 3, n - 1] {
            for e in admissible_e(t) {
                let e_i = e as i64;
                let mut via_offset = vec![false; n as usize];
                for ell in (-half + 1..=-(e_i + 1)).chain(e_i + 1..=half) {
                    via_offset[mod_add(b_f, ell, t) as usize] = true;
                }
                let holds = (0..n).all(|m| (mod_abs_int(m - b_f, n as u64) > e) == via_offset[m as usize]);
                tally.exact(holds, || format!("t={t} b_f={b_f} e={e}"));
            }
        }
    }
    tally
}

fn failure_sweep(
    ctx: &CheckContext<'_>,
    mut f: impl FnMut(&mut Tally, &MeasurementDistribution, &Phase, u32, u64, &str),
) -> Tally {
    let mut tally = Tally::new();
    for t in 3..=ctx.config.t_max {
        for p in grid(ctx, t) {
            for (label, inst) in diagonal_instances(ctx, t, p) {
                let Some(dist) = distribution_of(&mut tally, &label, &inst) else {
                    continue;
                };
                for e in admissible_e(t) {
                    f(&mut tally, &dist, &p, t, e, &label);
                }
            }
        }
    }
    tally
}

fn fail_sum(ctx: &CheckContext<'_>) -> Tally {
    let tol = ctx.config.tolerances.probability;
    failure_sweep(ctx, |tally, dist, p, t, e, label| {
        if !sum_mode_e(t).contains(&e) {
            return;
        }
        let d = fail_prob(dist, p, e, FailMode::Definition);
        let s = fail_prob(dist, p, e, FailMode::Sum);
        match d.and_then(|d| Ok((d, s?))) {
            Ok((d, s)) => tally.within((d - s).abs(), tol, || format!("{label} e={e}")),
            Err(err) => tally.error(&err, || format!("{label} e={e}")),
        }
    })
}

fn alpha_sqrd_upper_bound(ctx: &CheckContext<'_>) -> Tally {
    let slack = ctx.config.tolerances.bound_slack;
    geometry_check(ctx, |tally, g, t, p| {
        if t < 2 || g.floor_exact {
            return;
        }
        for ell in offsets(t) {
            let r = alpha_closed(p, t, ell)
                .and_then(|a| Ok((a.norm_sqr(), alpha_sqrd_bound(t, g.delta_floor, ell)?)));
            match r {
                Ok((a2, bound)) => tally.record(bound - a2, a2 <= bound + slack, || {
                    format!("t={t} φ={p} ℓ={ell}")
                }),
                Err(e) => tally.error(&e, || format!("t={t} φ={p} ℓ={ell}")),
            }
        }
    })
}

fn failure_upper_bound_lemma(ctx: &CheckContext<'_>) -> Tally {
    let slack = ctx.config.tolerances.bound_slack;
    failure_sweep(ctx, |tally, dist, p, t, e, label| {
        let x = PhaseGeometry::new(p, t).scaled_delta_floor;
        let r = fail_prob(dist, p, e, FailMode::Definition)
            .and_then(|f| Ok((f, failure_bound_lemma(t, x, e)?)));
        match r {
            Ok((f, bound)) => {
                tally.record(bound - f, f <= bound + slack, || format!("{label} e={e}"))
            }
            Err(err) => tally.error(&err, || format!("{label} e={e}")),
        }
    })
}

fn failure_upper_bound(ctx: &CheckContext<'_>) -> Tally {
    let slack = ctx.config.tolerances.bound_slack;
    failure_sweep(ctx, |tally, dist, p, t, e, label| {
        let x = PhaseGeometry::new(p, t).scaled_delta_floor;
        let r = fail_prob(dist, p, e, FailMode::Definition).and_then(|f| {
            Ok((f, tight_failure_bound(e)?, failure_bound_lemma(t, x, e)?))
        });
        match r {
            Ok((f, tight, lemma)) => {
                tally.record(tight - f, f <= tight + slack, || format!("{label} e={e}"));
                tally.record(tight - lemma, lemma <= tight + slack, || {
                    format!("{label} e={e} lemma form")
                });
            }
            Err(err) => tally.error(&err, || format!("{label} e={e}")),
        }
    })
}

fn success_complements_failure(ctx: &CheckContext<'_>) -> Tally {
    let tol = ctx.config.tolerances.probability;
    failure_sweep(ctx, |tally, dist, p, _, e, label| {
        let r = fail_prob(dist, p, e, FailMode::Definition)
            .and_then(|f| Ok(f + success_prob(dist, p, e)?));
        match r {
            Ok(total) => tally.within((total - 1.0).abs(), tol, || format!("{label} e={e}")),
            Err(err) => tally.error(&err, || format!("{label} e={e}")),
        }
    })
}

// ----- precision ---------------------------------------------------------

fn lemma_01_margin(e: u64, eps: f64) -> f64 {
    let e = e as f64;
    (1.0 - 1.0 / (2.0 * e) - 1.0 / (4.0 * e * e)) - (1.0 - eps)
}

fn precision_lemma_01(ctx: &CheckContext<'_>) -> Tally {
    let strict = ctx.config.tolerances.strict_margin;
    let mut tally = Tally::new();
    for (spec, t) in precision_grid(ctx) {
        match e_value(t, spec.n()) {
            Ok(e) => {
                let m = lemma_01_margin(e, spec.epsilon());
                tally.record(m, m > strict, || {
                    format!("n={} ε={} t={t}", spec.n(), spec.epsilon())
                })
            }
            Err(err) => tally.error(&err, || format!("n={}", spec.n())),
        }
    }
    tally
}

fn precision_lemma_02(ctx: &CheckContext<'_>) -> Tally {
    let mut tally = Tally::new();
    let mut bits: Vec<u32> = ctx.config.precision_bits.clone();
    bits.sort_unstable();
    bits.dedup();
    for &n in &bits {
        for t in n + 1..=ctx.config.t_max_analytic {
            let Ok(e) = e_value(t, n) else { continue };
            let radius = 1.0 / (1u64 << n) as f64;
            let scale = (1u64 << t) as f64;
            for p in grid(ctx, t) {
                let b_f = p.scaled_floor(t);
                let mut worst = f64::INFINITY;
                let mut holds = true;
                for m in 0..1i64 << t {
                    if mod_abs_int(m - b_f, 1 << t) <= e {
                        let d = mod_abs(m as f64 / scale - p.value(), 1.0);
                        worst = worst.min(radius - d);
                        holds &= d <= radius;
                    }
                }
                tally.record(worst, holds, || format!("n={n} t={t} φ={p}"));
            }
        }
    }
    tally
}

fn precision_guarantee(ctx: &CheckContext<'_>) -> Tally {
    let cap = ctx.config.t_max_analytic;
    let mut tally = Tally::new();
    let mut over = Vec::new();
    for (spec, t) in precision_grid(ctx) {
        let (n, eps) = (spec.n(), spec.epsilon());
        if t > cap {
            over.push(format!("({n},{eps})"));
            continue;
        }
        let e = e_value(t, n).expect("t_required > n");
        for p in grid(ctx, t) {
            let dist = match analytic_distribution(&p, t) {
                Ok(d) => d,
                Err(err) => {
                    tally.error(&err, || format!("n={n} ε={eps} φ={p}"));
                    continue;
                }
            };
            precision_instance(&mut tally, &dist, &p, n, eps, e, &format!("n={n} ε={eps} t={t} φ={p}"));
        }
    }
    note_over_cap(&mut tally, &over, cap);
    tally
}

/// Direct route (radius `2^{−n}`) and the route through `e_value`,
/// `success_prob` and the tight bound must both reach `1 − ε`.
fn precision_instance(
    tally: &mut Tally,
    dist: &MeasurementDistribution,
    p: &Phase,
    n: u32,
    eps: f64,
    e: u64,
    label: &str,
) {
    let direct = precision_success_prob(dist, p, n);
    let m = direct - (1.0 - eps);
    tally.record(m, m >= 0.0, || format!("{label} direct P={direct}"));
    let windowed = success_mass(dist, p.scaled_floor(dist.t()), e);
    // The e-window is contained in the radius event.
    tally.record(direct - windowed, windowed <= direct + 1e-12, || {
        format!("{label} window ⊄ radius")
    });
    let via_e = if n >= 2 {
        tight_failure_bound(e).map(|b| (windowed, 1.0 - b))
    } else {
        Ok((windowed, windowed))
    };
    match via_e {
        Ok((w, guaranteed)) => {
            let m = w.min(guaranteed) - (1.0 - eps);
            tally.record(m, m >= 0.0, || format!("{label} via e={e}"));
        }
        Err(err) => tally.error(&err, || label.to_string()),
    }
}

fn qpe_precision_guarantee(ctx: &CheckContext<'_>) -> Tally {
    let cap = ctx.config.t_max_analytic;
    let mut tally = Tally::new();
    let mut over = Vec::new();
    for (spec, t) in precision_grid(ctx) {
        let (n, eps) = (spec.n(), spec.epsilon());
        if t > cap {
            over.push(format!("({n},{eps})"));
            continue;
        }
        let e = e_value(t, n).expect("t_required > n");
        for p in grid(ctx, t) {
            for (label, inst) in diagonal_instances(ctx, t, p) {
                let Some(dist) = distribution_of(&mut tally, &label, &inst) else {
                    continue;
                };
                precision_instance(&mut tally, &dist, &p, n, eps, e, &format!("{label} n={n} ε={eps}"));
            }
        }
    }
    note_over_cap(&mut tally, &over, cap);
    tally
}

// ----- figures -----------------------------------------------------------

fn failure_bound_comparison(_ctx: &CheckContext<'_>) -> Tally {
    let mut tally = Tally::new();
    for e in 2..=BOUND_COMPARISON_E_MAX {
        match tight_failure_bound(e).and_then(|t| Ok((t, original_failure_bound(e)?))) {
            Ok((tight, original)) => {
                tally.record(original - tight, tight < original, || format!("e={e}"))
            }
            Err(err) => tally.error(&err, || format!("e={e}")),
        }
    }
    tally
}

/// `θ_i = hi·(i/N)` for `i = 0..=N`, so that `hi/2` is hit exactly.
pub fn trig_samples(hi: f64, skip_zero: bool) -> Vec<f64> {
    let n = TRIG_SAMPLES as f64;
    (usize::from(skip_zero)..=TRIG_SAMPLES)
        .map(|i| hi * (i as f64 / n))
        .collect()
}

fn sine_chord_bounds(_ctx: &CheckContext<'_>) -> Tally {
    let mut tally = Tally::new();
    let mut samples = trig_samples(PI, false);
    samples.extend(trig_samples(PI / 2.0, false));
    samples.extend(trig_samples(4.0 * PI, true));
    match trig_bound_checks(&samples) {
        Ok(r) => {
            for (name, ok) in [
                ("chord lower", r.chord_lower),
                ("chord upper", r.chord_upper),
                ("sine lower", r.sine_lower),
                ("sin θ < θ", r.sine_below_identity),
                ("chord identity", r.chord_identity),
            ] {
                tally.exact(ok, || name.to_string());
            }
        }
        Err(e) => tally.error(&e, || "samples".into()),
    }
    tally.exact(analytic::chord(PI) == 2.0, || "equality at θ = π".into());
    let half = PI / 2.0;
    tally.exact(half.sin() == 2.0 * half / PI, || "equality at θ = π/2".into());
    tally
}

// ----- registry ----------------------------------------------------------

type RunnerFn = fn(&CheckContext<'_>) -> Tally;

/// `(name, prerequisites, grid, runner)`, in an order where every node
/// comes after its prerequisites.
const REGISTRY: &[(&str, &[&str], &str, RunnerFn)] = &[
    ("_two_pow_t_is_nat_pos", &[], "t ≤ t_max_analytic", two_pow_t_is_nat_pos),
    ("_two_pow_t_minus_one_is_nat_pos", &[], "t ≤ t_max_analytic", two_pow_t_minus_one_is_nat_pos),
    ("_phase_is_real", &[], "phase grid, t ≤ t_max_analytic", phase_is_real),
    ("_mod_add_closure", &["_two_pow_t_is_nat_pos"], "t ≤ 6, a ∈ [−2^{t+1}, 2^{t+1})", mod_add_closure),
    ("_modabs_in_full_domain_simp", &["_two_pow_t_minus_one_is_nat_pos"], "all offsets, t ≤ t_max_analytic", modabs_in_full_domain),
    ("_best_floor_is_int", &["_phase_is_real"], "phase grid, t ≤ t_max_analytic", best_floor_is_int),
    ("_best_round_is_int", &["_phase_is_real"], "phase grid, t ≤ t_max_analytic", best_round_is_int),
    ("_best_floor_is_in_m_domain", &["_best_floor_is_int", "_two_pow_t_is_nat_pos"], "phase grid, t ≤ t_max_analytic", best_floor_in_m_domain),
    ("_delta_b_is_real", &["_phase_is_real"], "phase grid, t ≤ t_max_analytic", delta_b_is_real),
    ("_phase_from_best_with_delta_b", &["_delta_b_is_real", "_best_floor_is_int", "_best_round_is_int"], "phase grid, t ≤ t_max_analytic", phase_from_best_with_delta),
    ("_scaled_delta_b_floor_in_interval", &["_best_floor_is_int", "_delta_b_is_real"], "phase grid, t ≤ t_max_analytic", scaled_delta_floor_interval),
    ("_scaled_delta_b_round_in_interval", &["_best_round_is_int", "_delta_b_is_real"], "phase grid, t ≤ t_max_analytic", scaled_delta_round_interval),
    ("_delta_b_in_interval", &["_scaled_delta_b_floor_in_interval", "_scaled_delta_b_round_in_interval", "_phase_from_best_with_delta_b"], "phase grid, t ≤ t_max_analytic", delta_b_interval),
    ("_delta_b_is_zero_or_non_int", &["_delta_b_in_interval"], "phase grid, t ≤ t_max_analytic", delta_b_zero_or_non_int),
    ("_scaled_delta_b_is_zero_or_non_int", &["_scaled_delta_b_floor_in_interval", "_scaled_delta_b_round_in_interval"], "phase grid, t ≤ t_max_analytic", scaled_delta_zero_or_non_int),
    ("_scaled_delta_b_not_eq_nonzeroInt", &["_scaled_delta_b_is_zero_or_non_int"], "phase grid × offsets", scaled_delta_not_nonzero_int),
    ("_delta_b_not_eq_scaledNonzeroInt", &["_delta_b_is_zero_or_non_int", "_scaled_delta_b_not_eq_nonzeroInt"], "phase grid × offsets", delta_not_scaled_nonzero_int),
    ("_delta_b_floor_diff_in_interval", &["_scaled_delta_b_floor_in_interval"], "phase grid × offsets", delta_floor_diff_interval),
    ("_non_int_delta_b_diff", &["_delta_b_floor_diff_in_interval", "_delta_b_not_eq_scaledNonzeroInt"], "phase grid × offsets", non_int_delta_diff),
    ("_scaled_abs_delta_b_floor_diff_interval", &["_scaled_delta_b_floor_in_interval"], "phase grid × offsets", scaled_abs_delta_floor_diff),
    ("_alpha_are_complex", &["_phase_is_real"], "phase grid × outcomes, t ≤ t_max", alpha_are_complex),
    ("_psi_t_ket_is_normalized_vec", &["_phase_is_real"], "phase grid, t ≤ t_max_analytic", psi_t_normalized),
    ("_Psi_ket_is_normalized_vec", &["_psi_t_ket_is_normalized_vec"], "phase grid, t ≤ t_max", big_psi_normalized),
    ("_pfail_in_real", &["_alpha_are_complex"], "phase grid × e, 3 ≤ t ≤ t_max", pfail_in_real),
    ("_e_value_ge_two", &[], "(n, ε) grid", e_value_ge_two),
    ("_e_value_in_e_domain", &["_e_value_ge_two"], "(n, ε) grid, n ≥ 2", e_value_in_e_domain),
    ("sine_chord_bounds", &[], "10^4 samples per domain", sine_chord_bounds),
    ("phase_kickbacks_on_register", &["_phase_is_real"], "instances at t = t_max, every control line", phase_kickbacks),
    ("_psi_t_output", &["phase_kickbacks_on_register", "_psi_t_ket_is_normalized_vec"], "instances, t ≤ t_max", psi_t_output),
    ("_psi_t_formula", &["_psi_t_output"], "phase grid, t ≤ t_max_analytic", psi_t_formula),
    ("_Psi_output", &["_psi_t_output", "_Psi_ket_is_normalized_vec"], "instances, t ≤ t_max", big_psi_output),
    ("_sample_space_bijection", &["_two_pow_t_is_nat_pos"], "all kets, t ≤ 6", sample_space_bijection),
    ("_outcome_prob", &["_Psi_output", "_sample_space_bijection"], "instances, t ≤ t_max", outcome_prob),
    ("_Omega_is_sample_space", &["_outcome_prob"], "diagonal instances, t ≤ t_max", omega_is_sample_space),
    ("_alpha_m_evaluation", &["_psi_t_formula", "_Psi_output", "_alpha_are_complex"], "phase grid × outcomes, t ≤ t_max", alpha_m_evaluation),
    ("_alpha_ideal_case", &["_alpha_m_evaluation"], "dyadic grid, t ≤ t_max", alpha_ideal_case),
    ("qpe_exact", &["_alpha_ideal_case", "_outcome_prob", "_Omega_is_sample_space"], "dyadic grid × instances, t ≤ t_max", qpe_exact),
    ("_alpha_m_mod_evaluation", &["_alpha_m_evaluation", "_mod_add_closure"], "phase grid × outcomes, t ≤ t_max", alpha_m_mod_evaluation),
    ("_alpha_m_mod_as_geometric_sum", &["_alpha_m_mod_evaluation"], "phase grid × outcomes, t ≤ t_max", alpha_m_mod_geometric),
    ("_best_guarantee_delta_nonzero", &["_alpha_m_mod_as_geometric_sum", "_delta_b_not_eq_scaledNonzeroInt", "_scaled_delta_b_round_in_interval", "sine_chord_bounds"], "inexact phases, t ≤ t_max_analytic", best_guarantee_delta_nonzero),
    ("_best_guarantee", &["_best_guarantee_delta_nonzero", "_alpha_ideal_case"], "phase grid, t ≤ t_max_analytic", best_guarantee),
    ("qpe_best_guarantee", &["_best_guarantee", "_outcome_prob"], "phase grid × instances, 2 ≤ t ≤ t_max", qpe_best_guarantee),
    ("_alpha_summed", &["_alpha_m_mod_as_geometric_sum", "_non_int_delta_b_diff"], "phase grid × offsets, 2 ≤ t ≤ t_max", alpha_summed),
    ("_fail_sum_prob_conds_equiv_lemma", &["_modabs_in_full_domain_simp", "_mod_add_closure"], "b_f samples × e, 3 ≤ t ≤ t_max", fail_conditions_equivalent),
    ("_fail_sum", &["_alpha_summed", "_fail_sum_prob_conds_equiv_lemma", "_outcome_prob", "_pfail_in_real"], "diagonal instances × e (sampled above t = 6), 3 ≤ t ≤ t_max", fail_sum),
    ("_alpha_sqrd_upper_bound", &["_alpha_summed", "_scaled_abs_delta_b_floor_diff_interval", "sine_chord_bounds"], "inexact phases × offsets, t ≤ t_max_analytic", alpha_sqrd_upper_bound),
    ("_failure_upper_bound_lemma", &["_fail_sum", "_alpha_sqrd_upper_bound"], "diagonal instances × e, 3 ≤ t ≤ t_max", failure_upper_bound_lemma),
    ("_failure_upper_bound", &["_failure_upper_bound_lemma"], "diagonal instances × e, 3 ≤ t ≤ t_max", failure_upper_bound),
    ("_success_complements_failure", &["_Omega_is_sample_space", "_fail_sum_prob_conds_equiv_lemma"], "diagonal instances × e, 3 ≤ t ≤ t_max", success_complements_failure),
    ("_precision_guarantee_lemma_01", &["_e_value_ge_two"], "(n, ε) grid", precision_lemma_01),
    ("_precision_guarantee_lemma_02", &["_modabs_in_full_domain_simp", "_best_floor_is_in_m_domain"], "n × t ≤ t_max_analytic × phase grid × outcomes", precision_lemma_02),
    ("_precision_guarantee", &["_failure_upper_bound", "_success_complements_failure", "_precision_guarantee_lemma_01", "_precision_guarantee_lemma_02", "_e_value_in_e_domain"], "(n, ε) grid × phase grid, closed form", precision_guarantee),
    ("qpe_precision_guarantee", &["_precision_guarantee", "_outcome_prob"], "(n, ε) grid × phase grid × diagonal instances", qpe_precision_guarantee),
    ("failure_bound_comparison", &["_failure_upper_bound"], "2 ≤ e ≤ 8192", failure_bound_comparison),
];

/// Names of every registered check, in registration order.
pub fn registry_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|(n, ..)| *n).collect()
}

/// The full graph, narrowed by the config's include list (plus
/// prerequisites) and exclude list (plus dependents).
pub fn build_check_graph(config: &RunConfig) -> Result<CheckGraph> {
    let nodes = REGISTRY
        .iter()
        .map(|&(name, pre, params, run)| CheckNode::new(name, pre, params, run))
        .collect();
    let mut graph = CheckGraph::new(nodes)?;
    if !config.include.is_empty() {
        graph = graph.restrict_to(&config.include)?;
    }
    if !config.exclude.is_empty() {
        graph = graph.exclude(&config.exclude)?;
    }
    Ok(graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn default_graph_is_acyclic_and_large() {
        let g = build_check_graph(&RunConfig::default()).unwrap();
        assert!(g.len() >= 20);
        assert_eq!(g.len(), registry_names().len());
        let order = g.topological_order().unwrap();
        assert_eq!(order.len(), g.len());
    }

    #[test]
    fn registry_is_listed_in_dependency_order() {
        let names = registry_names();
        for (i, (_, pre, ..)) in REGISTRY.iter().enumerate() {
            for p in *pre {
                let j = names.iter().position(|n| n == p).unwrap();
                assert!(j < i, "{} before {p}", names[i]);
            }
        }
    }

    #[test]
    fn fig6_edges_present() {
        let g = build_check_graph(&RunConfig::default()).unwrap();
        let pre = |n: &str| g.node(n).unwrap().prerequisites.clone();
        assert!(pre("qpe_exact").contains(&"_alpha_ideal_case".to_string()));
        assert!(pre("_alpha_ideal_case").contains(&"_alpha_m_evaluation".to_string()));
        assert!(pre("_alpha_m_evaluation").contains(&"_psi_t_formula".to_string()));
        assert!(pre("_psi_t_formula").contains(&"_psi_t_output".to_string()));
        let anc = g.ancestors("qpe_precision_guarantee").unwrap();
        for n in ["_fail_sum", "_alpha_summed", "_alpha_sqrd_upper_bound", "_fail_sum_prob_conds_equiv_lemma"] {
            assert!(anc.contains(n), "{n}");
        }
    }

    #[test]
    fn cycle_rejected() {
        let mut g = build_check_graph(&RunConfig::default()).unwrap();
        assert!(matches!(g.add_edge("_psi_t_output", "qpe_exact"), Err(Error::Graph(_))));
    }

    #[test]
    fn include_and_exclude() {
        let mut c = RunConfig::default();
        c.include = vec!["qpe_exact".into()];
        let g = build_check_graph(&c).unwrap();
        let full = build_check_graph(&RunConfig::default()).unwrap();
        let mut expected = full.ancestors("qpe_exact").unwrap();
        expected.insert("qpe_exact".into());
        let got: std::collections::BTreeSet<String> =
            g.names().into_iter().map(String::from).collect();
        assert_eq!(got, expected);

        let mut c = RunConfig::default();
        c.exclude = vec!["_fail_sum".into()];
        let g = build_check_graph(&c).unwrap();
        assert!(g.node("_fail_sum").is_none());
        assert!(g.node("qpe_precision_guarantee").is_none());
        assert!(g.node("qpe_exact").is_some());

        c.include = vec!["no_such_check".into()];
        assert!(matches!(build_check_graph(&c), Err(Error::Config(_))));
    }

    #[test]
    fn trig_samples_hit_endpoints() {
        let s = trig_samples(PI, false);
        assert_eq!(s.len(), TRIG_SAMPLES + 1);
        assert_eq!(s[TRIG_SAMPLES / 2], PI / 2.0);
        assert_eq!(*s.last().unwrap(), PI);
        assert_eq!(trig_samples(1.0, true)[0], 1e-4);
    }
}
