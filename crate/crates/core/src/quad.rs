//! Adaptive Gauss–Kronrod (7/15) quadrature, a nested 2-D driver, and Wynn's
//! epsilon algorithm for accelerating slowly converging partial sums.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Stopping rule for the adaptive driver: stop when the summed error estimate falls below
/// `max(abs, rel·|I|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_subdivisions: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: 1e-10, rel: 1e-12, max_subdivisions: 2000 }
    }
}

impl Tolerance {
    pub fn abs(abs: f64) -> Self {
        Tolerance { abs, rel: 0.0, ..Default::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

/// One 15-point Kronrod panel with the QUADPACK error heuristic.
pub fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let centr = 0.5 * (a + b);
    let hlgth = 0.5 * (b - a);
    let fc = f(centr);
    let mut resg = fc * WG[3];
    let mut resk = fc * WGK[7];
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = hlgth * XGK[j];
        let f1 = f(centr - dx);
        let f2 = f(centr + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let reskh = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let result = resk * hlgth;
    resasc *= hlgth.abs();
    let mut err = ((resk - resg) * hlgth).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    let resabs_floor = 50.0 * f64::EPSILON * result.abs();
    (result, err.max(resabs_floor))
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive integration of `f` over `[a, b]`.
///
/// The panel with the largest error estimate is bisected until the total estimate meets
/// the tolerance. Exceeding the subdivision budget is an error carrying the final estimate.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: Tolerance) -> Result<Estimate> {
    if a == b {
        return Ok(Estimate { value: 0.0, error: 0.0, evaluations: 0 });
    }
    let (v, e) = gk15(&mut f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value: v, error: e });
    let mut total = v;
    let mut err = e;
    let mut evaluations = 15;
    loop {
        let target = tol.abs.max(tol.rel * total.abs());
        if err <= target {
            break;
        }
        if heap.len() >= tol.max_subdivisions {
            return Err(Error::Quadrature { estimate: err, tolerance: target });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            // interval collapsed to adjacent floats; accept what we have
            heap.push(worst);
            return Err(Error::Quadrature { estimate: err, tolerance: target });
        }
        let (v1, e1) = gk15(&mut f, worst.a, mid);
        let (v2, e2) = gk15(&mut f, mid, worst.b);
        evaluations += 30;
        total += v1 + v2 - worst.value;
        err += e1 + e2 - worst.error;
        heap.push(Panel { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, error: e2 });
    }
    // re-sum to shed the drift of the running updates
    let (value, error) = heap.iter().fold((0.0, 0.0), |(s, e), p| (s + p.value, e + p.error));
    Ok(Estimate { value, error, evaluations })
}

/// Integrate over a sequence of breakpoints, panel by panel, splitting the tolerance.
pub fn integrate_breaks<F: FnMut(f64) -> f64>(mut f: F, breaks: &[f64], tol: Tolerance) -> Result<Estimate> {
    let pieces = breaks.len().saturating_sub(1).max(1) as f64;
    let sub = Tolerance { abs: tol.abs / pieces, ..tol };
    let mut out = Estimate { value: 0.0, error: 0.0, evaluations: 0 };
    for w in breaks.windows(2) {
        let e = integrate(&mut f, w[0], w[1], sub)?;
        out.value += e.value;
        out.error += e.error;
        out.evaluations += e.evaluations;
    }
    Ok(out)
}

/// Iterated integral `∫_a^b ∫_{lo(x)}^{hi(x)} f(x, y) dy dx`.
///
/// The inner integral runs at a tolerance tighter than the outer one so its noise does
/// not stall the outer refinement.
pub fn integrate_2d<F, L, H>(f: F, a: f64, b: f64, lo: L, hi: H, tol: Tolerance) -> Result<Estimate>
where
    F: Fn(f64, f64) -> f64,
    L: Fn(f64) -> f64,
    H: Fn(f64) -> f64,
{
    let inner_tol = Tolerance { abs: 0.1 * tol.abs / (b - a).abs().max(1.0), rel: 0.1 * tol.rel, ..tol };
    let mut inner_err: Option<Error> = None;
    let mut evaluations = 0;
    let outer = integrate(
        |x| match integrate(|y| f(x, y), lo(x), hi(x), inner_tol) {
            Ok(e) => {
                evaluations += e.evaluations;
                e.value
            }
            Err(e) => {
                inner_err.get_or_insert(e);
                f64::NAN
            }
        },
        a,
        b,
        tol,
    )?;
    if let Some(e) = inner_err {
        return Err(e);
    }
    Ok(Estimate { evaluations, ..outer })
}

/// Wynn's epsilon algorithm applied to a sequence of partial sums.
///
/// Returns the last accelerated estimate and the distance between the two most recent
/// accelerated estimates, a practical error indicator. Sequences shorter than three fall
/// back to the last entry.
pub fn wynn_epsilon(partial_sums: &[f64]) -> (f64, f64) {
    let n = partial_sums.len();
    if n == 0 {
        return (0.0, f64::INFINITY);
    }
    if n < 3 {
        let last = partial_sums[n - 1];
        let diff = if n == 2 { (last - partial_sums[0]).abs() } else { f64::INFINITY };
        return (last, diff);
    }
    // eps[k] holds column k of the epsilon table for the current diagonal
    let mut prev_col: Vec<f64> = partial_sums.to_vec();
    let mut prev_prev: Vec<f64> = vec![0.0; n + 1];
    let mut estimates: Vec<f64> = vec![partial_sums[n - 1]];
    let mut k = 1;
    while prev_col.len() > 1 {
        let mut next = Vec::with_capacity(prev_col.len() - 1);
        let mut broke = false;
        for i in 0..prev_col.len() - 1 {
            let d = prev_col[i + 1] - prev_col[i];
            if d == 0.0 || !d.is_finite() {
                broke = true;
                break;
            }
            next.push(prev_prev[i + 1] + 1.0 / d);
        }
        if broke || next.is_empty() {
            break;
        }
        if k % 2 == 0 {
            estimates.push(*next.last().expect("non-empty"));
        }
        prev_prev = prev_col;
        prev_col = next;
        k += 1;
    }
    let m = estimates.len();
    let value = estimates[m - 1];
    let err = if m >= 2 { (estimates[m - 1] - estimates[m - 2]).abs() } else { f64::INFINITY };
    (value, err)
}
