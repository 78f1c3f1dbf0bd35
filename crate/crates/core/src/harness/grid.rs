//! Phase grids.

use crate::config::PhaseKind;
use crate::phase::Phase;

/// Fixed rationals with denominators that are not powers of two, so none
/// of them is dyadic at any register size.
const RATIONALS: &[(u64, u64)] = &[
    (3, 10),
    (7, 10),
    (1, 10),
    (9, 10),
    (1, 3),
    (2, 3),
    (1, 5),
    (2, 5),
    (3, 5),
    (4, 5),
    (1, 6),
    (5, 6),
    (1, 7),
    (2, 7),
    (3, 7),
    (6, 7),
    (1, 9),
    (4, 9),
    (8, 9),
    (1, 11),
    (5, 11),
    (10, 11),
    (3, 13),
    (12, 13),
    (1, 17),
    (16, 17),
    (7, 24),
    (11, 12),
    (1, 100),
    (99, 100),
    (355, 1131),
    (1, 1000),
    (999, 1000),
];

/// Decimal phases with no exact form attached.
const DECIMALS: &[f64] = &[0.123456789, 0.987654321, 0.5 + 1e-9, 1e-6, 1.0 - 1e-6];

/// Phases `k / 2^t`.
pub fn dyadic_grid(t: u32) -> Vec<Phase> {
    (0..1u64 << t)
        .map(|k| Phase::dyadic(k, t).expect("k < 2^t"))
        .collect()
}

/// Fixed rationals and decimals, plus a few half-step phases
/// `(2k+1)/2^{t+1}` on which `b_r` rounds a tie. Nothing dyadic in `t`.
pub fn nondyadic_grid(t: u32) -> Vec<Phase> {
    let mut out: Vec<Phase> = RATIONALS
        .iter()
        .map(|&(p, q)| Phase::rational(p, q).expect("fixed grid"))
        .collect();
    out.extend(DECIMALS.iter().map(|&x| Phase::real(x).expect("fixed grid")));
    let n = 1u64 << t;
    let mut ks = vec![0, n / 3, n - 1];
    ks.dedup();
    for k in ks {
        out.push(Phase::dyadic(2 * k + 1, t + 1).expect("odd numerator"));
    }
    out.retain(|p| !p.is_dyadic_in(t));
    out
}

pub fn phase_grid(t: u32, kind: PhaseKind) -> Vec<Phase> {
    match kind {
        PhaseKind::Dyadic => dyadic_grid(t),
        PhaseKind::Nondyadic => nondyadic_grid(t),
        PhaseKind::Mixed => {
            let mut all = dyadic_grid(t);
            all.extend(nondyadic_grid(t));
            all
        }
    }
}
