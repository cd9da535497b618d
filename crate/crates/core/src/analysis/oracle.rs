use serde::Serialize;

use crate::boolfn::{
    block_sensitivity, certificate_profile, sensitivity_profile, MeasureBudget, TruthTable,
};
use crate::constructions::MintermFunction;
use crate::error::{Error, Result};

/// Largest variable count the oracle accepts.
pub const ORACLE_MAX_VARS: usize = 27;

/// Exact measures of a materialized minterm function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub n_vars: usize,
    pub ones: u64,
    pub s: usize,
    pub s0: usize,
    pub s1: usize,
    /// Only within the exact block-sensitivity / certificate budget.
    pub bs: Option<usize>,
    pub c: Option<usize>,
    pub c0: Option<usize>,
    pub c1: Option<usize>,
}

/// Materializes `f` from its translates' subcubes and runs the exact
/// measure engine on the table.
pub fn bruteforce_oracle(
    f: &MintermFunction,
    cap: u64,
    budget: MeasureBudget,
) -> Result<(TruthTable, OracleReport)> {
    if f.n_vars() > ORACLE_MAX_VARS {
        return Err(Error::BudgetExceeded {
            what: "oracle variables",
            limit: ORACLE_MAX_VARS,
            actual: f.n_vars(),
        });
    }
    let table = f.materialize(cap)?;
    let prof = sensitivity_profile(&table);
    let small = f.n_vars() <= budget.global_vars as usize;
    let (bs, cert) = if small {
        (
            Some(block_sensitivity(&table, budget)?.value),
            Some(certificate_profile(&table, budget)?),
        )
    } else {
        (None, None)
    };
    let report = OracleReport {
        n_vars: f.n_vars(),
        ones: table.count_ones(),
        s: prof.s.value,
        s0: prof.s0.value,
        s1: prof.s1.value,
        bs,
        c: cert.as_ref().map(|c| c.c.value),
        c0: cert.as_ref().map(|c| c.c0.value),
        c1: cert.as_ref().map(|c| c.c1.value),
    };
    Ok((table, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::PartialAssignment;
    use crate::symmetry::{GroupAction, GroupSpec};

    #[test]
    fn trivial_group_gives_subcube() {
        let p = PartialAssignment::new(6, vec![(1, true), (4, false)]).unwrap();
        let f = MintermFunction::explicit(
            p.clone(),
            GroupAction::new(GroupSpec::Trivial, None, 6).unwrap(),
            10,
        )
        .unwrap();
        let (t, rep) = bruteforce_oracle(&f, 10, MeasureBudget::default()).unwrap();
        assert_eq!(rep.ones, 16);
        for x in 0..64u64 {
            assert_eq!(t.get(x), x >> 1 & 1 == 1 && x >> 4 & 1 == 0);
        }
        assert_eq!((rep.s1, rep.c1), (2, Some(2)));
    }

    #[test]
    fn full_support_two_translates_overlap() {
        // Cyclic shifts of 110 on 3 variables: 3 masks, pairwise disjoint
        // points, so exactly orbit-size many ones.
        let p = PartialAssignment::new(3, vec![(0, true), (1, true), (2, false)]).unwrap();
        let g = GroupAction::new(GroupSpec::Abelian { orders: vec![3] }, None, 3).unwrap();
        let f = MintermFunction::explicit(p, g, 10).unwrap();
        let (_, rep) = bruteforce_oracle(&f, 10, MeasureBudget::default()).unwrap();
        assert_eq!(rep.ones, 3);
        // Z2 x Z2 moves support {0, 1} to {2, 3}: the two subcubes meet in
        // one point, so 4 + 4 - 1 ones.
        let a = PartialAssignment::new(4, vec![(0, true), (1, true)]).unwrap();
        let g = GroupAction::new(GroupSpec::Abelian { orders: vec![2, 2] }, None, 4).unwrap();
        let f = MintermFunction::explicit(a, g, 10).unwrap();
        assert_eq!(f.translates(10).unwrap().len(), 2);
        let (_, rep) = bruteforce_oracle(&f, 10, MeasureBudget::default()).unwrap();
        assert_eq!(rep.ones, 7);
    }
}
