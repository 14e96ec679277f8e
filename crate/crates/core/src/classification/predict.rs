use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::families::{construct_family, FamilyList, FamilyMember};
use super::ClassificationError;
use crate::graph::{are_isomorphic_with, cayley_graph, multiplier_isomorphism, Graph, IsoConfig};
use crate::groups::{AbelianGroup, ConnectionSet};

/// How a graph was matched to a family member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "via", rename_all = "snake_case")]
pub enum Recognition {
    /// `v -> k v` maps the member onto the graph; both are circulants.
    Multiplier { k: u32 },
    /// `phi[v]` is the image in the member of vertex `v` of the graph.
    Isomorphism { phi: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub extendable: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub family: Option<FamilyMember>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub recognition: Option<Recognition>,
}

/// Full residue list of a circulant on `Z_n`, read from its provenance.
fn circulant_residues(g: &Graph) -> Option<Vec<u32>> {
    let spec = g.provenance().cayley_spec()?;
    if !spec.group.is_cyclic() || spec.group.order() != g.order() {
        return None;
    }
    Some(spec.connection_set.indices(&spec.group).into_iter().map(|i| i as u32).collect())
}

/// The least family member of `list` isomorphic to `g`. Circulants are first
/// compared by multipliers; a miss there is settled by the exact engine.
pub fn recognize(
    g: &Graph,
    list: FamilyList,
    iso: &IsoConfig,
) -> Result<Option<(FamilyMember, Recognition)>, ClassificationError> {
    let n = g.order();
    let degree = g.regular_degree();
    let residues = circulant_residues(g);
    for &id in list.ids() {
        let Some(member) = id.member_of_order(n as u32) else {
            continue;
        };
        let candidate = construct_family(member)?;
        if candidate.regular_degree() != degree || candidate.edge_count() != g.edge_count() {
            continue;
        }
        if let (Some(s), Some(t)) = (circulant_residues(&candidate), residues.as_ref()) {
            if let Some(k) = multiplier_isomorphism(n as u32, &s, t) {
                return Ok(Some((member, Recognition::Multiplier { k })));
            }
        }
        if let Some(phi) = are_isomorphic_with(g, &candidate, iso)? {
            return Ok(Some((member, Recognition::Isomorphism { phi })));
        }
    }
    Ok(None)
}

/// Prediction for a connected graph: extendable iff it lies in no family of
/// `list`.
pub fn predict(g: &Graph, list: FamilyList, iso: &IsoConfig) -> Result<Prediction, ClassificationError> {
    let min = match list {
        FamilyList::OddCycles => 3,
        FamilyList::Main => 5,
        FamilyList::Even => 6,
    };
    let connected = g.is_connected();
    if !connected || g.order() < min {
        return Err(ClassificationError::Precondition {
            order: g.order(),
            min,
            connected,
        });
    }
    Ok(match recognize(g, list, iso)? {
        Some((member, recognition)) => Prediction {
            extendable: false,
            family: Some(member),
            recognition: Some(recognition),
        },
        None => Prediction {
            extendable: true,
            family: None,
            recognition: None,
        },
    })
}

/// Predicted fractional 2-extendability of `Cay(A; S)`.
pub fn theorem_f2e_verdict(
    group: &AbelianGroup,
    set: &ConnectionSet,
    iso: &IsoConfig,
) -> Result<Prediction, ClassificationError> {
    predict(&cayley_graph(group, set)?, FamilyList::Main, iso)
}

/// Predicted fractional 1-extendability of `Cay(A; S)`: all but odd cycles.
pub fn theorem_f1e_verdict(group: &AbelianGroup, set: &ConnectionSet) -> Result<Prediction, ClassificationError> {
    predict(&cayley_graph(group, set)?, FamilyList::OddCycles, &IsoConfig::default())
}
