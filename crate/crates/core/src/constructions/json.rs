use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::boolfn::PartialAssignment;
use crate::constructions::{Construction, LabeledMinterm};
use crate::error::{invalid, Error, Result};
use crate::symmetry::{EdgeKind, VarIndexer};

/// On-disk minterm. Edges are 0-based vertex lists (uniform, sorted) or
/// tuples (partite); `entries` is always written and is authoritative only
/// for `"explicit"` minterms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MintermFile {
    pub n: u32,
    pub k: u32,
    pub kind: EdgeKind,
    pub rule: String,
    #[serde(default)]
    pub roles: Value,
    #[serde(default)]
    pub entries: Vec<(Vec<u32>, u8)>,
}

/// A minterm read back from a [`MintermFile`].
#[derive(Clone, Debug)]
pub enum LoadedMinterm {
    Labeled(LabeledMinterm),
    Explicit(VarIndexer, PartialAssignment),
}

impl LoadedMinterm {
    pub fn indexer(&self) -> &VarIndexer {
        match self {
            Self::Labeled(m) => m.indexer(),
            Self::Explicit(ix, _) => ix,
        }
    }

    pub fn partial(&self) -> PartialAssignment {
        match self {
            Self::Labeled(m) => m.to_partial(),
            Self::Explicit(_, p) => p.clone(),
        }
    }
}

fn entries_of(ix: &VarIndexer, p: &PartialAssignment) -> Result<Vec<(Vec<u32>, u8)>> {
    p.entries()
        .iter()
        .map(|&(i, b)| Ok((ix.unrank(i)?, b as u8)))
        .collect()
}

impl MintermFile {
    pub fn from_labeled(m: &LabeledMinterm) -> Result<Self> {
        Ok(Self {
            n: m.n(),
            k: m.k(),
            kind: m.indexer().kind(),
            rule: m.construction().id().to_string(),
            roles: m.descriptor_json(m.layout().canonical()),
            entries: entries_of(m.indexer(), &m.to_partial())?,
        })
    }

    pub fn from_explicit(ix: &VarIndexer, p: &PartialAssignment) -> Result<Self> {
        if p.n_vars() != ix.n_vars() {
            return Err(Error::DimensionMismatch {
                expected: ix.n_vars(),
                actual: p.n_vars(),
            });
        }
        Ok(Self {
            n: ix.n(),
            k: ix.k(),
            kind: ix.kind(),
            rule: "explicit".into(),
            roles: Value::Object(Default::default()),
            entries: entries_of(ix, p)?,
        })
    }

    fn explicit_partial(&self, ix: &VarIndexer) -> Result<PartialAssignment> {
        let entries = self
            .entries
            .iter()
            .map(|(e, b)| match b {
                0 | 1 => Ok((ix.rank(e)?, *b == 1)),
                _ => Err(Error::Format(format!("entry bit must be 0 or 1, got {b}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        PartialAssignment::new(ix.n_vars(), entries)
    }

    pub fn load(&self) -> Result<LoadedMinterm> {
        let ix = VarIndexer::new(self.kind, self.n, self.k)?;
        if self.rule == "explicit" {
            let p = self.explicit_partial(&ix)?;
            return Ok(LoadedMinterm::Explicit(ix, p));
        }
        let c = match self.rule.as_str() {
            "thm1" => Construction::Thm1,
            "thm2" => Construction::Thm2,
            "thm3" => Construction::Thm3,
            "thm4" => Construction::Thm4,
            other => return Err(Error::Format(format!("unknown minterm rule {other:?}"))),
        };
        if c.kind() != self.kind {
            return Err(invalid(format!(
                "rule {} is not {:?}",
                self.rule, self.kind
            )));
        }
        let m = LabeledMinterm::new(c, self.n, self.k)?;
        if !self.entries.is_empty() && self.explicit_partial(&ix)? != m.to_partial() {
            return Err(Error::Format(format!(
                "entries disagree with the {} rule",
                self.rule
            )));
        }
        Ok(LoadedMinterm::Labeled(m))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_round_trip() {
        let m = LabeledMinterm::thm1(12, 3).unwrap();
        let f = MintermFile::from_labeled(&m).unwrap();
        assert_eq!(f.entries.len(), 45);
        assert_eq!(f.roles["B"], serde_json::json!([11]));
        let back = MintermFile::from_json(&f.to_json().unwrap()).unwrap();
        assert_eq!(back, f);
        let LoadedMinterm::Labeled(m2) = back.load().unwrap() else {
            panic!("expected a labeled minterm");
        };
        assert_eq!(m2.to_partial(), m.to_partial());
    }

    #[test]
    fn explicit_round_trip_and_validation() {
        let ix = VarIndexer::uniform(4, 2).unwrap();
        let p = PartialAssignment::new(6, vec![(0, true), (5, false)]).unwrap();
        let f = MintermFile::from_explicit(&ix, &p).unwrap();
        assert_eq!(f.entries, vec![(vec![0, 1], 1), (vec![2, 3], 0)]);
        assert_eq!(f.load().unwrap().partial(), p);
        let mut bad = f.clone();
        bad.entries[0].1 = 2;
        assert!(bad.load().is_err());
        let mut tampered = MintermFile::from_labeled(&LabeledMinterm::thm3(4, 3).unwrap()).unwrap();
        tampered.entries[0].1 ^= 1;
        assert!(tampered.load().is_err());
    }
}
