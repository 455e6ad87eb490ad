//! Elliptic/hyperbolic classification and growth of the rational ranks.
//!
//! For `b2 = k >= 3` the ranks satisfy `n m_n / beta^n -> 1`, where
//! `beta = (k + sqrt(k^2 - 4)) / 2` is the larger root of `x^2 - kx + 1`.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::decimal::Decimal;
use crate::error::{domain, Result};
use crate::ranks::{cumulative_bound_check, homotopy_ranks};

/// Working precision (decimal digits) for the real quantities below.
pub const WORKING_DIGITS: u32 = 60;
/// Digits reported in serialized output.
pub const REPORTED_DIGITS: u32 = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Elliptic,
    Hyperbolic,
}

impl Classification {
    pub fn of(b2: u64) -> Self {
        if b2 >= 3 {
            Classification::Hyperbolic
        } else {
            Classification::Elliptic
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Elliptic => "elliptic",
            Classification::Hyperbolic => "hyperbolic",
        }
    }
}

/// Exponential fit `max_{j<=n} m_j >= lambda C^n` over the upper half of the probe window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentialFit {
    pub base: Decimal,
    pub scale: Decimal,
    pub exponential: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthReport {
    pub betti: u64,
    pub probe_degree: usize,
    pub classification: Classification,
    /// `beta`, present for hyperbolic cases.
    pub growth_base: Option<Decimal>,
    /// `|N m_N / beta^N - 1|` at the probe degree.
    pub limit_residual: Option<Decimal>,
    /// Cumulative lower bound for `n = 1..=N/2` (hyperbolic cases only).
    pub cumulative_bound_ok: Vec<bool>,
    pub fit: Option<ExponentialFit>,
}

impl GrowthReport {
    pub fn precision_digits(&self) -> u32 {
        REPORTED_DIGITS
    }

    pub fn exponential_growth(&self) -> bool {
        self.fit.as_ref().is_some_and(|f| f.exponential)
    }
}

/// `(k + sqrt(k^2 - 4)) / 2` at `digits` working digits; `k >= 2`.
pub fn growth_base(k: u64, digits: u32) -> Result<Decimal> {
    if k < 2 {
        return Err(domain("growth base needs k >= 2"));
    }
    let disc = Decimal::from_int(k * k - 4, digits);
    let root = disc.sqrt().ok_or_else(|| domain("negative discriminant"))?;
    let sum = Decimal::from_int(k, digits).add(&root);
    Ok(sum.mul(&Decimal::from_ratio(1, 2, digits)))
}

fn fit_exponential(ranks: &[BigUint], digits: u32) -> Option<ExponentialFit> {
    let n = ranks.len();
    if n < 2 {
        return None;
    }
    let mut running = Vec::with_capacity(n);
    let mut best = BigUint::zero();
    for r in ranks {
        if *r > best {
            best = r.clone();
        }
        running.push(best.clone());
    }
    let half = n / 2;
    let (lo, hi) = (&running[half - 1], &running[n - 1]);
    if lo.is_zero() {
        return None;
    }
    let ratio = Decimal::from_ratio(hi.clone(), lo.clone(), digits);
    let base = ratio.nth_root((n - half) as u32)?;
    let mut scale: Option<Decimal> = None;
    for deg in half..=n {
        let value = Decimal::from_biguint(&running[deg - 1], digits);
        let candidate = value.div(&base.pow(deg as u32))?;
        if scale.as_ref().is_none_or(|s| candidate < *s) {
            scale = Some(candidate);
        }
    }
    let scale = scale?;
    let one = Decimal::from_int(1, digits);
    let exponential = base > one && scale > Decimal::from_int(0, digits);
    Some(ExponentialFit {
        base,
        scale,
        exponential,
    })
}

/// Growth data for `b2` probed at degree `probe` (ranks `m_1..=m_probe`).
pub fn growth_report(b2: u64, probe: usize) -> Result<GrowthReport> {
    if b2 < 1 {
        return Err(domain("second Betti number must be >= 1"));
    }
    if probe < 1 {
        return Err(domain("probe degree must be >= 1"));
    }
    let classification = Classification::of(b2);
    let table = homotopy_ranks(b2, probe)?;
    let fit = fit_exponential(table.ranks(), WORKING_DIGITS);

    let mut report = GrowthReport {
        betti: b2,
        probe_degree: probe,
        classification,
        growth_base: None,
        limit_residual: None,
        cumulative_bound_ok: Vec::new(),
        fit,
    };
    if classification == Classification::Hyperbolic {
        let beta = growth_base(b2, WORKING_DIGITS)?;
        let scaled =
            Decimal::from_biguint(&(table.ranks()[probe - 1].clone() * probe), WORKING_DIGITS);
        let ratio = scaled
            .div(&beta.pow(probe as u32))
            .ok_or_else(|| domain("beta^N vanished at working precision"))?;
        report.limit_residual = Some(ratio.sub(&Decimal::from_int(1, WORKING_DIGITS)).abs());
        report.growth_base = Some(beta);
        report.cumulative_bound_ok = cumulative_bound_check(b2, probe / 2)?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_squared() {
        let beta = growth_base(3, WORKING_DIGITS).unwrap();
        assert_eq!(
            beta.to_string_digits(50),
            "2.61803398874989484820458683436563811772030917980576"
        );
    }

    #[test]
    fn hyperbolic_three() {
        let r = growth_report(3, 60).unwrap();
        assert_eq!(r.classification, Classification::Hyperbolic);
        assert_eq!(
            &r.growth_base.as_ref().unwrap().to_string_digits(10),
            "2.6180339887"
        );
        let tol = Decimal::from_ratio(1, 1_000_000, WORKING_DIGITS);
        assert!(*r.limit_residual.as_ref().unwrap() < tol);
        assert_eq!(r.cumulative_bound_ok.len(), 30);
        assert!(r.cumulative_bound_ok.iter().all(|&b| b));
        assert!(r.exponential_growth());
    }

    #[test]
    fn elliptic_cases() {
        for b2 in [1, 2] {
            let r = growth_report(b2, 20).unwrap();
            assert_eq!(r.classification, Classification::Elliptic);
            assert!(r.growth_base.is_none());
            assert!(r.limit_residual.is_none());
            assert!(!r.exponential_growth());
        }
    }

    #[test]
    fn growth_base_exceeds_one() {
        let one = Decimal::from_int(1, WORKING_DIGITS);
        for k in 3..=12 {
            assert!(growth_base(k, WORKING_DIGITS).unwrap() > one);
        }
    }
}
