use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::families::{construct_family, members_in, FamilyList, FamilyMember};
use super::ClassificationError;
use crate::graph::{are_isomorphic_with, IsoConfig};

/// Two members of the same order that are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Overlap {
    pub a: FamilyMember,
    pub b: FamilyMember,
    /// Same group and connection set, not merely isomorphic.
    pub identical: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub order: u32,
    pub members: Vec<FamilyMember>,
    pub overlaps: Vec<Overlap>,
}

/// Members of every catalogue at each order, and all isomorphic pairs among
/// them.
pub fn family_census(
    orders: core::ops::RangeInclusive<u32>,
    iso: &IsoConfig,
) -> Result<Vec<CensusRow>, ClassificationError> {
    let mut rows = Vec::new();
    for n in orders {
        let mut members: Vec<FamilyMember> = [FamilyList::OddCycles, FamilyList::Even, FamilyList::Main]
            .into_iter()
            .flat_map(|list| members_in(list, n..=n))
            .collect();
        members.sort();
        let graphs = members
            .iter()
            .map(|&m| construct_family(m))
            .collect::<Result<Vec<_>, _>>()?;
        let mut overlaps = Vec::new();
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                let (g, h) = (&graphs[i], &graphs[j]);
                if g.edge_count() != h.edge_count() {
                    continue;
                }
                if are_isomorphic_with(g, h, iso)?.is_some() {
                    overlaps.push(Overlap {
                        a: members[i],
                        b: members[j],
                        identical: g.provenance().cayley_spec() == h.provenance().cayley_spec(),
                    });
                }
            }
        }
        rows.push(CensusRow {
            order: n,
            members,
            overlaps,
        });
    }
    Ok(rows)
}
