#![allow(clippy::excessive_precision)]

//! Low-level quadrature building blocks: adaptive Gauss–Kronrod on finite
//! intervals and the Levin u-transform used to sum alternating series of
//! half-period contributions.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

// 21-point Kronrod extension of the 10-point Gauss rule, abscissae on [0, 1]
// of the symmetric interval [-1, 1]. Odd indices are the Gauss nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_600_525_775_126,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_277,
];

/// Outcome of a finite-interval quadrature.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Quad {
    pub value: f64,
    pub error: f64,
    /// ∫|f|, used to bound rounding in later cancellations.
    pub abs_value: f64,
}

struct Segment {
    a: f64,
    b: f64,
    quad: Quad,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.quad.error == other.quad.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.quad.error.total_cmp(&other.quad.error)
    }
}

/// One application of the 21-point Kronrod rule. The error estimate is the
/// raw Kronrod–Gauss difference, floored at the rounding level.
pub(crate) fn gk21<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Result<Quad> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    if !fc.is_finite() {
        return Err(Error::Evaluation { r: center });
    }
    let mut kronrod = fc * WGK[10];
    let mut gauss = 0.0;
    let mut abs_sum = fc.abs() * WGK[10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let (x1, x2) = (center - dx, center + dx);
        let (f1, f2) = (f(x1), f(x2));
        if !f1.is_finite() {
            return Err(Error::Evaluation { r: x1 });
        }
        if !f2.is_finite() {
            return Err(Error::Evaluation { r: x2 });
        }
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let value = kronrod * half;
    let abs_value = abs_sum * half.abs();
    let error = ((kronrod - gauss) * half).abs().max(50.0 * f64::EPSILON * abs_value);
    Ok(Quad {
        value,
        error,
        abs_value,
    })
}

/// Globally adaptive bisection (QAG style) on `[a, b]` until the summed
/// error estimate drops below `max(abs_tol, rel_tol |I|)`.
///
/// Running out of subdivisions is not an error: the caller receives the
/// best estimate together with its (too large) error and decides.
pub(crate) fn adaptive<F: FnMut(f64) -> f64>(
    f: &mut F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_segments: usize,
) -> Result<Quad> {
    if a == b {
        return Ok(Quad {
            value: 0.0,
            error: 0.0,
            abs_value: 0.0,
        });
    }
    let first = gk21(f, a, b)?;
    let mut total = first;
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, quad: first });

    while total.error > abs_tol.max(rel_tol * total.value.abs()) && heap.len() < max_segments {
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval exhausted at machine resolution.
            heap.push(worst);
            break;
        }
        let left = gk21(f, worst.a, mid)?;
        let right = gk21(f, mid, worst.b)?;
        total.value += left.value + right.value - worst.quad.value;
        total.error += left.error + right.error - worst.quad.error;
        total.abs_value += left.abs_value + right.abs_value - worst.quad.abs_value;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            quad: left,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            quad: right,
        });
    }
    // Re-sum to shed the drift of the incremental updates.
    let mut value = 0.0;
    let mut error = 0.0;
    let mut abs_value = 0.0;
    for s in heap.iter() {
        value += s.quad.value;
        error += s.quad.error;
        abs_value += s.quad.abs_value;
    }
    Ok(Quad {
        value,
        error,
        abs_value,
    })
}

/// Levin u-transform of order `k = sums.len() - 1` applied to the partial
/// sums `S_n .. S_{n+k}` whose last terms are `terms`; `first_index` is `n`.
///
/// Returns `None` when a remainder estimate vanishes (the transform is then
/// undefined; the series has usually terminated).
pub(crate) fn levin_u(sums: &[f64], terms: &[f64], first_index: usize) -> Option<f64> {
    debug_assert_eq!(sums.len(), terms.len());
    let k = sums.len().checked_sub(1)?;
    if k == 0 {
        return sums.first().copied();
    }
    const BETA: f64 = 1.0;
    let n = first_index as f64;
    let denom_base = BETA + n + k as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    let mut binom = 1.0;
    for j in 0..=k {
        let m = n + j as f64;
        let omega = (BETA + m) * terms[j];
        if omega == 0.0 || !omega.is_finite() {
            return None;
        }
        let ratio = ((BETA + m) / denom_base).powi(k as i32 - 1);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let w = sign * binom * ratio / omega;
        num += w * sums[j];
        den += w;
        binom = binom * (k - j) as f64 / (j + 1) as f64;
    }
    let est = num / den;
    est.is_finite().then_some(est)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_weights_sum_to_two() {
        let s: f64 = 2.0 * WGK[..10].iter().sum::<f64>() + WGK[10];
        assert!((s - 2.0).abs() < 1e-15);
        let g: f64 = 2.0 * WG.iter().sum::<f64>();
        assert!((g - 2.0).abs() < 1e-15);
    }

    #[test]
    fn kronrod_is_exact_for_high_degree_polynomials() {
        // Kronrod-21 integrates degree 31 exactly; Gauss-10 only to 19.
        for deg in [2_i32, 10, 19, 24, 30] {
            let mut f = |x: f64| x.powi(deg);
            let q = gk21(&mut f, 0.0, 1.0).unwrap();
            let exact = 1.0 / (deg as f64 + 1.0);
            assert!((q.value - exact).abs() < 1e-15, "deg {deg}: {}", q.value);
        }
        let mut f = |x: f64| x.powi(24);
        let q = gk21(&mut f, 0.0, 1.0).unwrap();
        assert!(q.error > 1e-12, "Gauss part should be inexact at degree 24");
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        let mut f = |x: f64| 1.0 / x.sqrt();
        let q = adaptive(&mut f, 0.0, 1.0, 1e-13, 1e-13, 500).unwrap();
        assert!((q.value - 2.0).abs() < 1e-10, "{}", q.value);
    }

    #[test]
    fn non_finite_integrand_is_reported() {
        let mut f = |x: f64| if x > 0.5 { f64::NAN } else { x };
        assert!(matches!(
            adaptive(&mut f, 0.0, 1.0, 1e-12, 1e-12, 50),
            Err(Error::Evaluation { .. })
        ));
    }

    #[test]
    fn levin_sums_alternating_harmonic_series() {
        // Σ (-1)^n / (n+1) = ln 2
        let terms: Vec<f64> = (0..14)
            .map(|n| if n % 2 == 0 { 1.0 } else { -1.0 } / (n as f64 + 1.0))
            .collect();
        let mut sums = Vec::new();
        let mut s = 0.0;
        for t in &terms {
            s += t;
            sums.push(s);
        }
        let est = levin_u(&sums[1..], &terms[1..], 1).unwrap();
        assert!((est - 2f64.ln()).abs() < 1e-12, "{}", est - 2f64.ln());
    }
}
