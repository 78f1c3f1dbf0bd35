//! Eigenphases in `[0, 1)`, carried exactly whenever possible.
//!
//! Whether `2^t·φ` is an integer decides between the exact and inexact
//! branches of the analysis, so that question is answered with integer
//! arithmetic for rational phases. Decimal phases are stored as `f64`; for
//! those the scaled quantities `2^t·φ − b` are still exact because scaling
//! by a power of two and subtracting a nearby integer do not round.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest denominator accepted for a rational phase.
pub const MAX_DENOMINATOR: u64 = 1 << 52;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Phase {
    /// `numerator / denominator` in lowest terms, `numerator < denominator`.
    Rational { numerator: u64, denominator: u64 },
    /// A decimal phase with no exact rational form attached.
    Real { value: f64 },
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Phase {
    pub fn zero() -> Phase {
        Phase::Rational {
            numerator: 0,
            denominator: 1,
        }
    }

    /// `p / q`, reduced. Requires `0 ≤ p < q ≤ 2^52`.
    pub fn rational(p: u64, q: u64) -> Result<Phase> {
        if q == 0 {
            return Err(Error::domain("phase denominator must be positive"));
        }
        if q > MAX_DENOMINATOR {
            return Err(Error::domain(format!(
                "phase denominator {q} exceeds 2^52"
            )));
        }
        if p >= q {
            return Err(Error::domain(format!("phase {p}/{q} is not in [0, 1)")));
        }
        let g = gcd(p, q).max(1);
        Ok(Phase::Rational {
            numerator: p / g,
            denominator: q / g,
        })
    }

    /// `a / 2^q`.
    pub fn dyadic(a: u64, q: u32) -> Result<Phase> {
        if q > 52 {
            return Err(Error::domain(format!("dyadic exponent {q} exceeds 52")));
        }
        Phase::rational(a, 1u64 << q)
    }

    pub fn real(value: f64) -> Result<Phase> {
        if !value.is_finite() || !(0.0..1.0).contains(&value) {
            return Err(Error::domain(format!("phase {value} is not in [0, 1)")));
        }
        Ok(Phase::Real { value })
    }

    pub fn value(&self) -> f64 {
        match *self {
            Phase::Rational {
                numerator,
                denominator,
            } => numerator as f64 / denominator as f64,
            Phase::Real { value } => value,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Phase::Rational { .. })
    }

    /// `(a, q)` with `φ = a / 2^q` in lowest terms, for exact dyadic phases.
    pub fn dyadic_parts(&self) -> Option<(u64, u32)> {
        match *self {
            Phase::Rational {
                numerator,
                denominator,
            } if denominator.is_power_of_two() => {
                Some((numerator, denominator.trailing_zeros()))
            }
            _ => None,
        }
    }

    /// Whether `2^t·φ` is an integer.
    pub fn is_dyadic_in(&self, t: u32) -> bool {
        match *self {
            Phase::Rational { denominator, .. } => {
                denominator.is_power_of_two() && denominator.trailing_zeros() <= t
            }
            Phase::Real { value } => scale(value, t).fract() == 0.0,
        }
    }

    /// `⌊2^t·φ⌋`.
    pub fn scaled_floor(&self, t: u32) -> i64 {
        match *self {
            Phase::Rational {
                numerator,
                denominator,
            } => ((numerator as u128) << t).div_euclid(denominator as u128) as i64,
            Phase::Real { value } => scale(value, t).floor() as i64,
        }
    }

    /// `⌊2^t·φ + 1/2⌋`, i.e. rounding with ties going up.
    pub fn scaled_round(&self, t: u32) -> i64 {
        match *self {
            Phase::Rational {
                numerator,
                denominator,
            } => {
                let num = ((numerator as u128) << (t + 1)) + denominator as u128;
                num.div_euclid(2 * denominator as u128) as i64
            }
            Phase::Real { value } => {
                let y = scale(value, t);
                let fl = y.floor();
                // y − ⌊y⌋ is exact; y + 0.5 need not be.
                if y - fl >= 0.5 {
                    fl as i64 + 1
                } else {
                    fl as i64
                }
            }
        }
    }

    /// `2^t·φ − b`.
    pub fn scaled_delta(&self, t: u32, b: i64) -> f64 {
        match *self {
            Phase::Rational {
                numerator,
                denominator,
            } => {
                let num = ((numerator as i128) << t) - b as i128 * denominator as i128;
                num as f64 / denominator as f64
            }
            Phase::Real { value } => scale(value, t) - b as f64,
        }
    }

    /// `δ_b = φ − b/2^t`.
    pub fn delta(&self, t: u32, b: i64) -> f64 {
        self.scaled_delta(t, b) / scale(1.0, t)
    }

    /// Whether `2^t·φ − b` is exactly zero.
    pub fn scaled_delta_is_zero(&self, t: u32, b: i64) -> bool {
        match *self {
            Phase::Rational {
                numerator,
                denominator,
            } => ((numerator as i128) << t) == b as i128 * denominator as i128,
            Phase::Real { value } => scale(value, t) == b as f64,
        }
    }

    /// Whether `2^t·φ − b − ℓ` is a multiple of `2^t`, i.e. whether
    /// `δ_b − ℓ/2^t` is an integer. Exact for both representations.
    pub fn delta_minus_offset_is_integer(&self, t: u32, b: i64, ell: i64) -> bool {
        let two_t = 1i128 << t;
        match *self {
            Phase::Rational {
                numerator,
                denominator,
            } => {
                let d = denominator as i128;
                let num = ((numerator as i128) << t) - (b as i128 + ell as i128) * d;
                num.rem_euclid(two_t * d) == 0
            }
            Phase::Real { value } => {
                let x = scale(value, t) - b as f64 - ell as f64;
                x.fract() == 0.0 && (x as i128).rem_euclid(two_t) == 0
            }
        }
    }
}

#[inline]
fn scale(x: f64, t: u32) -> f64 {
    x * (1u64 << t) as f64
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Phase::Rational {
                numerator,
                denominator,
            } => match self.dyadic_parts() {
                Some((a, q)) if q > 0 => write!(f, "{a}/2^{q}"),
                Some(_) => write!(f, "0/1"),
                None => write!(f, "{numerator}/{denominator}"),
            },
            Phase::Real { value } => write!(f, "{value}"),
        }
    }
}

impl FromStr for Phase {
    type Err = Error;

    /// Accepts `a/2^q` (exact dyadic), `p/q` (exact rational) or a decimal.
    fn from_str(s: &str) -> Result<Phase> {
        let s = s.trim();
        let bad = |why: &str| Error::PhaseParse(format!("{s:?}: {why}"));
        if let Some((num, den)) = s.split_once('/') {
            let num: u64 = num
                .trim()
                .parse()
                .map_err(|_| bad("numerator is not a nonnegative integer"))?;
            let den = den.trim();
            let phase = if let Some(exp) = den.strip_prefix("2^") {
                let q: u32 = exp.trim().parse().map_err(|_| bad("bad exponent"))?;
                Phase::dyadic(num, q)
            } else {
                let q: u64 = den.parse().map_err(|_| bad("bad denominator"))?;
                Phase::rational(num, q)
            };
            phase.map_err(|e| bad(&e.to_string()))
        } else {
            let value: f64 = s.parse().map_err(|_| bad("not a number"))?;
            Phase::real(value).map_err(|e| bad(&e.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_three_forms() {
        assert_eq!(
            "5/2^3".parse::<Phase>().unwrap(),
            Phase::Rational {
                numerator: 5,
                denominator: 8
            }
        );
        assert_eq!("3/10".parse::<Phase>().unwrap(), Phase::rational(3, 10).unwrap());
        assert_eq!("0.3".parse::<Phase>().unwrap(), Phase::Real { value: 0.3 });
        assert_eq!("6/8".parse::<Phase>().unwrap().dyadic_parts(), Some((3, 2)));
        for bad in ["1.2", "-0.1", "1/1", "3/0", "x", "1/2^x", "nan", "1/2^60"] {
            assert!(bad.parse::<Phase>().is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["5/2^3", "3/10", "0.3", "1/7"] {
            let p: Phase = s.parse().unwrap();
            assert_eq!(p.to_string().parse::<Phase>().unwrap(), p);
        }
        assert_eq!(Phase::zero().to_string(), "0/1");
        assert_eq!("0/1".parse::<Phase>().unwrap(), Phase::zero());
    }

    #[test]
    fn decimal_phases_are_not_dyadic_flagged() {
        let p: Phase = "0.5".parse().unwrap();
        assert_eq!(p.dyadic_parts(), None);
        // ...but the scaled arithmetic is still exact.
        assert!(p.is_dyadic_in(1));
        assert!(p.scaled_delta_is_zero(3, 4));
    }

    #[test]
    fn floor_and_round() {
        let p = Phase::rational(3, 10).unwrap();
        assert_eq!(p.scaled_floor(3), 2);
        assert_eq!(p.scaled_round(3), 2);
        let p = Phase::dyadic(31, 5).unwrap(); // 0.96875, 2^3·φ = 7.75
        assert_eq!(p.scaled_round(3), 8);
        let p = Phase::dyadic(5, 4).unwrap(); // 0.3125, 2^3·φ = 2.5
        assert_eq!(p.scaled_round(3), 3);
        assert_eq!(Phase::real(0.3125).unwrap().scaled_round(3), 3);
        // 0.49999999999999994 must not round up through `y + 0.5`.
        let p = Phase::real(0.49999999999999994).unwrap();
        assert_eq!(p.scaled_round(0), 0);
    }

    #[test]
    fn exact_delta_zero_detection() {
        let p = Phase::dyadic(5, 3).unwrap();
        assert!(p.is_dyadic_in(3));
        assert!(!p.is_dyadic_in(2));
        assert!(p.scaled_delta_is_zero(3, 5));
        let q = Phase::rational(1, 3).unwrap();
        for t in 0..20 {
            assert!(!q.is_dyadic_in(t));
            assert!(!q.scaled_delta_is_zero(t, q.scaled_floor(t)));
        }
    }

    #[test]
    fn integer_offset_detection() {
        let p = Phase::dyadic(5, 3).unwrap();
        // δ_5 = 0, ℓ = 8 → δ − 1 = −1 ∈ ℤ.
        assert!(p.delta_minus_offset_is_integer(3, 5, 8));
        assert!(!p.delta_minus_offset_is_integer(3, 5, 4));
        assert!(p.delta_minus_offset_is_integer(3, 5, 0));
        let r = Phase::real(0.625).unwrap();
        assert!(r.delta_minus_offset_is_integer(3, 5, -8));
        assert!(!r.delta_minus_offset_is_integer(3, 5, 1));
    }
}
