use crate::error::{invalid, Result};
use crate::symmetry::{GroupSpec, VarPerm};

/// Relabeling of `[n]` as `Z_{m1} × … × Z_{ml}` (mixed radix, first
/// coordinate most significant). A transitive abelian group acts regularly,
/// so after relabeling each generator is a cyclic shift of one coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianLabeling {
    orders: Vec<u32>,
    n: usize,
}

impl AbelianLabeling {
    pub fn new(orders: Vec<u32>, n: usize) -> Result<Self> {
        let prod: u64 = orders.iter().map(|&m| m as u64).product();
        if orders.is_empty() || orders.contains(&0) || prod != n as u64 {
            return Err(invalid(format!(
                "orders {orders:?} do not multiply to n = {n}"
            )));
        }
        Ok(Self { orders, n })
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self, index: usize) -> Vec<u32> {
        let mut r = index;
        let mut out = vec![0; self.orders.len()];
        for (slot, &m) in out.iter_mut().zip(&self.orders).rev() {
            *slot = (r % m as usize) as u32;
            r /= m as usize;
        }
        out
    }

    pub fn index(&self, label: &[u32]) -> usize {
        label
            .iter()
            .zip(&self.orders)
            .fold(0, |acc, (&v, &m)| acc * m as usize + (v % m) as usize)
    }

    /// Coordinate-wise addition.
    pub fn act(&self, element: &[u32], label: &[u32]) -> Vec<u32> {
        element
            .iter()
            .zip(label)
            .zip(&self.orders)
            .map(|((&g, &v), &m)| (g + v) % m)
            .collect()
    }

    /// Translation by the element with index `g`: `image[S] = S + g`.
    pub fn translation(&self, g: usize) -> VarPerm {
        let gl = self.label(g);
        VarPerm(
            (0..self.n)
                .map(|s| self.index(&self.act(&gl, &self.label(s))) as u32)
                .collect(),
        )
    }

    /// One cyclic shift per coordinate.
    pub fn generator_perms(&self) -> Vec<VarPerm> {
        (0..self.orders.len())
            .map(|j| {
                let mut e = vec![0u32; self.orders.len()];
                e[j] = 1;
                self.translation(self.index(&e))
            })
            .collect()
    }
}

/// The relabeling for an abelian group spec acting on `n` points.
pub fn abelian_relabel(spec: &GroupSpec, n: usize) -> Result<AbelianLabeling> {
    match spec {
        GroupSpec::Abelian { orders } => AbelianLabeling::new(orders.clone(), n),
        other => Err(invalid(format!("{other} is not an abelian group spec"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn cyclic_group_is_identity_relabeling() {
        let lab = abelian_relabel(&GroupSpec::Abelian { orders: vec![5] }, 5).unwrap();
        assert!((0..5).all(|i| lab.label(i) == vec![i as u32]));
        let gens = lab.generator_perms();
        assert_eq!(gens, vec![VarPerm(vec![1, 2, 3, 4, 0])]);
    }

    #[test]
    fn coordinatewise_addition() {
        let lab = AbelianLabeling::new(vec![2, 3], 6).unwrap();
        assert_eq!(lab.act(&[1, 0], &[0, 2]), vec![1, 2]);
        assert_eq!(lab.act(&[1, 2], &[1, 2]), vec![0, 1]);
    }

    #[test]
    fn transitive_orbits() {
        let lab = AbelianLabeling::new(vec![2, 3, 2], 12).unwrap();
        for start in 0..12 {
            let orbit: HashSet<usize> = (0..12)
                .map(|g| lab.index(&lab.act(&lab.label(g), &lab.label(start))))
                .collect();
            assert_eq!(orbit.len(), 12);
        }
    }

    #[test]
    fn mismatch_rejected() {
        assert!(abelian_relabel(&GroupSpec::Abelian { orders: vec![2, 3] }, 7).is_err());
        assert!(abelian_relabel(&GroupSpec::Trivial, 1).is_err());
    }
}
