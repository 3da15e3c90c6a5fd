//! `{"rank": r, "torsion": [d1, d2, ...]}` group serialization.

use anyhow::{anyhow, bail, Result};
use g2topo::specseq::Slot;
use g2topo::FGAbelianGroup;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl GroupJson {
    pub fn from_group(g: &FGAbelianGroup) -> Result<Self> {
        let torsion = g
            .torsion_u64()
            .ok_or_else(|| anyhow!("invariant factor of {g} does not fit in 64 bits"))?;
        Ok(GroupJson { rank: g.rank(), torsion })
    }

    /// Requires the divisibility chain `d1 | d2 | ...`.
    pub fn to_group(&self) -> Result<FGAbelianGroup> {
        let torsion = self.torsion.iter().map(|&d| BigInt::from(d)).collect();
        Ok(FGAbelianGroup::new(self.rank, torsion)?)
    }
}

pub fn table_to_json(groups: &[FGAbelianGroup]) -> Result<Vec<GroupJson>> {
    groups.iter().map(GroupJson::from_group).collect()
}

pub fn table_from_json(groups: &[GroupJson]) -> Result<Vec<FGAbelianGroup>> {
    groups.iter().map(GroupJson::to_group).collect()
}

/// A table cell in a problem file: a group object, compact notation such as
/// `"Z+Z2"`, or `"?"` for an unknown.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CellJson {
    Group(GroupJson),
    Text(String),
}

impl CellJson {
    pub fn to_slot(&self) -> Result<Slot> {
        match self {
            CellJson::Group(g) => Ok(Slot::Known(g.to_group()?)),
            CellJson::Text(t) if t.trim() == "?" => Ok(Slot::Unknown),
            CellJson::Text(t) => match t.parse() {
                Ok(g) => Ok(Slot::Known(g)),
                Err(e) => bail!("bad group `{t}`: {e}"),
            },
        }
    }
}

pub fn slot_to_json(slot: &Slot) -> Result<CellJson> {
    match slot {
        Slot::Known(g) => Ok(CellJson::Group(GroupJson::from_group(g)?)),
        Slot::Unknown => Ok(CellJson::Text("?".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in ["0", "Z", "Z^2+Z2", "Z2+Z4", "Z3"] {
            let g: FGAbelianGroup = s.parse().unwrap();
            let j = GroupJson::from_group(&g).unwrap();
            assert_eq!(j.to_group().unwrap(), g);
            let text = serde_json::to_string(&j).unwrap();
            let back: GroupJson = serde_json::from_str(&text).unwrap();
            assert_eq!(back, j);
        }
        assert_eq!(
            serde_json::to_string(&GroupJson::from_group(&FGAbelianGroup::zero()).unwrap()).unwrap(),
            r#"{"rank":0,"torsion":[]}"#
        );
    }

    #[test]
    fn chain_is_enforced() {
        let bad = GroupJson { rank: 0, torsion: vec![4, 2] };
        assert!(bad.to_group().is_err());
    }

    #[test]
    fn cells() {
        let cells: Vec<CellJson> = serde_json::from_str(r#"[{"rank":1,"torsion":[]},"Z2","?"]"#).unwrap();
        let slots: Vec<Slot> = cells.iter().map(|c| c.to_slot().unwrap()).collect();
        assert_eq!(slots[0], Slot::Known(FGAbelianGroup::free(1)));
        assert_eq!(slots[1], Slot::Known(FGAbelianGroup::cyclic(2)));
        assert_eq!(slots[2], Slot::Unknown);
    }
}
