use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Largest order for which every coefficient fits the 128-bit exact solve.
pub const MAX_COEFF_ORDER: usize = 20;

/// Coefficients `a_{0,n} … a_{n,n}` expanding the odd product
/// `P(m) = (2m+1)(2m+3)⋯(2m+2n-1)` in the falling-factorial basis
/// `m^{(j)} = m(m-1)⋯(m-j+1)`:
///
/// `P(m) = Σ_j a_{j,n} · m^{(j)}`.
///
/// Also the weights of the `sin^{2n}` azimuthal Bessel expansion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffTable {
    n: usize,
    coeffs: Vec<u128>,
}

impl CoeffTable {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[u128] {
        &self.coeffs
    }

    /// `a_{j,n}`, or zero past the end of the table.
    pub fn get(&self, j: usize) -> u128 {
        self.coeffs.get(j).copied().unwrap_or(0)
    }

    /// Right-hand side `Σ_j a_{j,n} m!/(m-j)!` evaluated exactly.
    pub fn expand_at(&self, m: u64) -> Option<u128> {
        self.coeffs
            .iter()
            .enumerate()
            .try_fold(0u128, |acc, (j, &a)| acc.checked_add(a.checked_mul(falling(m, j)?)?))
    }
}

/// `(2n-1)!!`, with the empty product `(-1)!! = 1` at `n = 0`.
pub fn double_factorial_odd(n: usize) -> u128 {
    (1..=n as u128).map(|i| 2 * i - 1).product()
}

/// The odd product `P(m) = Π_{i=1}^{n} (2m + 2i - 1)`, exact.
pub fn odd_product(n: usize, m: u64) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, i| acc.checked_mul(2 * m as u128 + 2 * i - 1))
}

fn falling(m: u64, j: usize) -> Option<u128> {
    if (m as u128) < j as u128 {
        return Some(0);
    }
    (0..j as u128).try_fold(1u128, |acc, i| acc.checked_mul(m as u128 - i))
}

/// Solve for the falling-factorial coefficients of `P` exactly.
///
/// Evaluating at `m = 0, 1, …, n` makes the system lower triangular:
/// `P(m) = Σ_{j≤m} a_j m!/(m-j)!`, so `a_m = (P(m) - Σ_{j<m} a_j m!/(m-j)!) / m!`.
/// Every division is exact.
pub fn falling_factorial_coeffs(n: usize) -> Result<CoeffTable> {
    if n > MAX_COEFF_ORDER {
        return domain(format!(
            "coefficient order {n} exceeds the exact-arithmetic limit {MAX_COEFF_ORDER}"
        ));
    }
    let mut coeffs: Vec<u128> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let target = odd_product(n, m as u64).expect("bounded by MAX_COEFF_ORDER");
        let known: u128 = coeffs
            .iter()
            .enumerate()
            .map(|(j, &a)| a * falling(m as u64, j).expect("bounded"))
            .sum();
        let fact = falling(m as u64, m).expect("bounded");
        let rem = target - known;
        debug_assert_eq!(rem % fact, 0);
        coeffs.push(rem / fact);
    }
    Ok(CoeffTable { n, coeffs })
}
