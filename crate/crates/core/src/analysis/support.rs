use crate::error::{invalid, Result};
use crate::symmetry::binomial;

/// `sum_{i=k2}^{2 k2} C(6 k2, i) C(n - 6 k2 - k1, 2 k2 - i)`: the support
/// size of the uniform construction.
pub fn support_size_formula(n: u32, k1: u32, k2: u32) -> Result<u128> {
    if n < 6 * k2 + k1 {
        return Err(invalid(format!(
            "support formula needs n >= 6 k2 + k1 = {}",
            6 * k2 + k1
        )));
    }
    let c = 6 * k2 as u64;
    let d = (n - 6 * k2 - k1) as u64;
    Ok((k2 as u64..=2 * k2 as u64)
        .map(|i| binomial(c, i) * binomial(d, 2 * k2 as u64 - i))
        .sum())
}
