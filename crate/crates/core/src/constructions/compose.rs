use crate::boolfn::PartialAssignment;
use crate::error::{invalid, Result};

/// Product composition: `p(i_1,…,i_l) = XOR_j p_j(i_j)`, star whenever any
/// operand is star. Variable `(i_1,…,i_l)` is numbered mixed-radix with the
/// first coordinate most significant.
pub fn xor_compose_minterms(parts: &[PartialAssignment]) -> Result<PartialAssignment> {
    let Some(first) = parts.first() else {
        return Err(invalid("xor composition needs at least one part"));
    };
    if parts.iter().any(|p| p.is_empty()) {
        return Err(invalid("xor composition part with empty support"));
    }
    let mut n_vars = first.n_vars();
    let mut entries: Vec<(usize, bool)> = first.entries().to_vec();
    for p in &parts[1..] {
        let m = p.n_vars();
        n_vars = n_vars
            .checked_mul(m)
            .filter(|&v| v <= u32::MAX as usize)
            .ok_or_else(|| invalid("composed variable count overflows"))?;
        let mut next = Vec::with_capacity(entries.len() * p.len());
        for &(i, a) in &entries {
            for &(j, b) in p.entries() {
                next.push((i * m + j, a ^ b));
            }
        }
        entries = next;
    }
    PartialAssignment::new(n_vars, entries)
}

/// Reference cyclically invariant base minterm on `m` variables: a block of
/// `t = round(m^{1/3})` ones followed by a single zero.
pub fn reference_cyclic_minterm(m: usize) -> Result<PartialAssignment> {
    let t = ((m as f64).cbrt().round() as usize).max(1);
    if m < t + 1 {
        return Err(invalid(format!(
            "reference cyclic minterm needs m >= {}, got {m}",
            t + 1
        )));
    }
    let mut entries: Vec<(usize, bool)> = (0..t).map(|i| (i, true)).collect();
    entries.push((t, false));
    PartialAssignment::new(m, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pa(n: usize, e: &[(usize, bool)]) -> PartialAssignment {
        PartialAssignment::new(n, e.to_vec()).unwrap()
    }

    #[test]
    fn single_part_is_identity() {
        let p = pa(5, &[(1, true), (3, false)]);
        assert_eq!(xor_compose_minterms(std::slice::from_ref(&p)).unwrap(), p);
        assert!(xor_compose_minterms(&[]).is_err());
    }

    #[test]
    fn two_by_three_xor_table() {
        let a = pa(3, &[(0, true), (2, false)]);
        let b = pa(4, &[(0, true), (1, false), (3, true)]);
        let c = xor_compose_minterms(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(c.n_vars(), 12);
        assert_eq!(c.len(), 6);
        for i in 0..3 {
            for j in 0..4 {
                let want = match (a.get(i), b.get(j)) {
                    (Some(x), Some(y)) => Some(x ^ y),
                    _ => None,
                };
                assert_eq!(c.get(i * 4 + j), want);
            }
        }
    }

    #[test]
    fn support_factorizes() {
        let parts: Vec<_> = [8, 27, 10]
            .iter()
            .map(|&m| reference_cyclic_minterm(m).unwrap())
            .collect();
        let c = xor_compose_minterms(&parts).unwrap();
        assert_eq!(c.len(), parts.iter().map(|p| p.len()).product::<usize>());
        assert_eq!(reference_cyclic_minterm(27).unwrap().len(), 4);
    }
}
