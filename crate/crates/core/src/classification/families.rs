use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ClassificationError;
use crate::graph::{cayley_graph, CayleySpec, Graph, Provenance, MAX_VERTICES};
use crate::groups::{AbelianGroup, ConnectionSet, CyclicProduct};

/// The exceptional families. Declaration order is the recognizer's
/// preference order when a graph lies in several families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyId {
    OddCycle,
    EvenI,
    EvenII,
    EvenIII,
    EvenIV,
    EvenV,
    MainI,
    MainII,
    MainIII,
    MainIV,
    MainV,
    MainVI,
    MainVII,
    MainVIII,
    MainIX,
    MainX,
}

/// Which catalogue a prediction is taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyList {
    /// Connected Cayley graphs that fail fractional 1-extendability.
    OddCycles,
    /// Even-order exceptions to fractional 2-extendability.
    Even,
    /// Exceptions to fractional 2-extendability for every order `n >= 5`.
    Main,
}

impl FamilyList {
    pub fn ids(self) -> &'static [FamilyId] {
        use FamilyId::*;
        match self {
            FamilyList::OddCycles => &[OddCycle],
            FamilyList::Even => &[EvenI, EvenII, EvenIII, EvenIV, EvenV],
            FamilyList::Main => &[
                MainI, MainII, MainIII, MainIV, MainV, MainVI, MainVII, MainVIII, MainIX, MainX,
            ],
        }
    }
}

impl FamilyId {
    pub const ALL: [FamilyId; 16] = {
        use FamilyId::*;
        [
            OddCycle, EvenI, EvenII, EvenIII, EvenIV, EvenV, MainI, MainII, MainIII, MainIV,
            MainV, MainVI, MainVII, MainVIII, MainIX, MainX,
        ]
    };

    pub fn name(self) -> &'static str {
        use FamilyId::*;
        match self {
            OddCycle => "odd-cycle",
            EvenI => "even-i",
            EvenII => "even-ii",
            EvenIII => "even-iii",
            EvenIV => "even-iv",
            EvenV => "even-v",
            MainI => "main-i",
            MainII => "main-ii",
            MainIII => "main-iii",
            MainIV => "main-iv",
            MainV => "main-v",
            MainVI => "main-vi",
            MainVII => "main-vii",
            MainVIII => "main-viii",
            MainIX => "main-ix",
            MainX => "main-x",
        }
    }

    /// `'n'` when the family is indexed by its order, `'m'` otherwise.
    pub fn parameter(self) -> char {
        use FamilyId::*;
        match self {
            OddCycle | MainI | MainIV | MainV => 'n',
            _ => 'm',
        }
    }

    /// Admissible parameter range, as text.
    pub fn range(self) -> &'static str {
        use FamilyId::*;
        match self {
            OddCycle => "n odd, n >= 3",
            EvenI | EvenV => "m >= 3",
            EvenII => "m >= 2",
            EvenIII | EvenIV => "m >= 1",
            MainI | MainIV => "n >= 5",
            MainII => "n = 4m >= 8",
            MainIII | MainVI => "n = 4m+2 >= 6",
            MainV => "n odd, n >= 5",
            MainVII | MainVIII | MainIX | MainX => "n = 3m >= 9 with m odd",
        }
    }

    fn admits(self, p: u32) -> bool {
        use FamilyId::*;
        match self {
            OddCycle => p >= 3 && p % 2 == 1,
            EvenI | EvenV => p >= 3,
            EvenII | MainII => p >= 2,
            EvenIII | EvenIV | MainIII | MainVI => p >= 1,
            MainI | MainIV => p >= 5,
            MainV => p >= 5 && p % 2 == 1,
            MainVII | MainVIII | MainIX | MainX => p >= 3 && p % 2 == 1,
        }
    }

    /// Order of the member with parameter `p`.
    pub fn order(self, p: u32) -> u64 {
        use FamilyId::*;
        let p = p as u64;
        match self {
            OddCycle | MainI | MainIV | MainV => p,
            EvenI | EvenV => 2 * p,
            EvenII | MainII => 4 * p,
            EvenIII | EvenIV | MainIII | MainVI => 4 * p + 2,
            MainVII | MainVIII | MainIX | MainX => 3 * p,
        }
    }

    /// The member of order `n`, if the family has one.
    pub fn member_of_order(self, n: u32) -> Option<FamilyMember> {
        use FamilyId::*;
        let p = match self {
            OddCycle | MainI | MainIV | MainV => Some(n),
            EvenI | EvenV => n.is_multiple_of(2).then_some(n / 2),
            EvenII | MainII => n.is_multiple_of(4).then_some(n / 4),
            EvenIII | EvenIV | MainIII | MainVI => (n % 4 == 2).then_some(n / 4),
            MainVII | MainVIII | MainIX | MainX => n.is_multiple_of(3).then_some(n / 3),
        }?;
        self.admits(p).then_some(FamilyMember { id: self, param: p })
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = ClassificationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| ClassificationError::Parse(format!("unknown family '{s}'")))
    }
}

/// One family member, written `main-ix:3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct FamilyMember {
    pub id: FamilyId,
    pub param: u32,
}

impl FamilyMember {
    pub fn new(id: FamilyId, param: u32) -> Result<Self, ClassificationError> {
        if !id.admits(param) || id.order(param) > MAX_VERTICES as u64 {
            return Err(ClassificationError::OutOfRange {
                family: id,
                param,
                range: id.range(),
            });
        }
        Ok(FamilyMember { id, param })
    }

    pub fn order(&self) -> usize {
        self.id.order(self.param) as usize
    }

    /// Group and connection set of the member.
    pub fn spec(&self) -> Result<CayleySpec, ClassificationError> {
        use FamilyId::*;
        let n = self.order() as u32;
        let m = self.param as i64;
        let residues: Vec<i64> = match self.id {
            OddCycle | EvenI | MainI => vec![1],
            EvenII | MainII => vec![1, 2 * m],
            EvenIII | MainIII => vec![2, 2 * m + 1],
            EvenIV | MainVI => vec![1, 2 * m],
            EvenV | MainIV => vec![1, 2],
            MainV => vec![1, 3],
            MainVII => vec![1, m - 1],
            MainVIII => vec![1, m + 1],
            MainIX => vec![1, m - 1, m + 1],
            MainX => {
                let product = CyclicProduct::new(&[self.param, 3])?;
                let gens = [[1, 0], [1, 1]]
                    .iter()
                    .map(|c| product.to_canonical(c))
                    .collect::<Result<Vec<_>, _>>()?;
                let group = product.group().clone();
                let connection_set = ConnectionSet::closure(&group, gens)?;
                return Ok(CayleySpec {
                    group,
                    connection_set,
                });
            }
        };
        let group = AbelianGroup::cyclic(n)?;
        let connection_set = ConnectionSet::from_residues(&group, &residues)?;
        Ok(CayleySpec {
            group,
            connection_set,
        })
    }

    /// Whether the member is a circulant on its canonical group.
    pub fn is_circulant(&self) -> bool {
        self.id != FamilyId::MainX || !self.param.is_multiple_of(3)
    }
}

impl fmt::Display for FamilyMember {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.id, self.param)
    }
}

impl FromStr for FamilyMember {
    type Err = ClassificationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, param) = s
            .split_once(':')
            .ok_or_else(|| ClassificationError::Parse(format!("expected FAMILY:PARAM, got '{s}'")))?;
        let id: FamilyId = name.trim().parse()?;
        let param: u32 = param
            .trim()
            .parse()
            .map_err(|_| ClassificationError::Parse(format!("bad parameter '{param}'")))?;
        FamilyMember::new(id, param)
    }
}

impl TryFrom<String> for FamilyMember {
    type Error = ClassificationError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<FamilyMember> for String {
    fn from(m: FamilyMember) -> Self {
        m.to_string()
    }
}

/// Builds the family member with its provenance recorded.
pub fn construct_family(member: FamilyMember) -> Result<Graph, ClassificationError> {
    let member = FamilyMember::new(member.id, member.param)?;
    let spec = member.spec()?;
    let g = cayley_graph(&spec.group, &spec.connection_set)?;
    Ok(g.with_provenance(Provenance::Family {
        family: member,
        spec,
    }))
}

/// All members of the listed families with order in `orders`.
pub fn members_in(list: FamilyList, orders: core::ops::RangeInclusive<u32>) -> Vec<FamilyMember> {
    let mut out = Vec::new();
    for n in orders {
        for &id in list.ids() {
            if let Some(member) = id.member_of_order(n) {
                if member.order() <= MAX_VERTICES {
                    out.push(member);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::circulant;

    fn member(s: &str) -> FamilyMember {
        s.parse().unwrap()
    }

    #[test]
    fn constructions() {
        let v9 = construct_family(member("main-v:9")).unwrap();
        assert_eq!(v9.rows(), circulant(9, &[1, 3]).unwrap().rows());
        let prism = construct_family(member("even-iii:1")).unwrap();
        assert_eq!(prism.rows(), circulant(6, &[2, 3]).unwrap().rows());
        assert_eq!(prism.regular_degree(), Some(3));
        let x3 = construct_family(member("main-x:3")).unwrap();
        let spec = x3.provenance().cayley_spec().unwrap();
        assert_eq!(spec.group.factors(), &[3, 3]);
        assert_eq!(spec.connection_set.to_text(), "{(1,0),(1,1),(2,0),(2,2)}");
    }

    #[test]
    fn ranges_are_enforced() {
        for bad in ["main-ii:1", "main-vii:5x", "main-vii:4", "main-v:8", "odd-cycle:4", "even-i:2"] {
            assert!(bad.parse::<FamilyMember>().is_err(), "{bad}");
        }
        let err = "main-ii:1".parse::<FamilyMember>().unwrap_err();
        assert_eq!(err.to_string(), "main-ii requires n = 4m >= 8, got m = 1");
        assert!("main-ix:23".parse::<FamilyMember>().is_err(), "order 69 exceeds the vertex cap");
    }

    #[test]
    fn members_are_connected_and_regular() {
        for m in members_in(FamilyList::Main, 5..=45)
            .into_iter()
            .chain(members_in(FamilyList::Even, 6..=40))
        {
            let g = construct_family(m).unwrap();
            assert_eq!(g.order(), m.order());
            assert!(g.is_connected(), "{m}");
            let spec = g.provenance().cayley_spec().unwrap();
            assert_eq!(g.regular_degree(), Some(spec.connection_set.len()), "{m}");
        }
    }

    #[test]
    fn order_lookup() {
        assert_eq!(FamilyId::MainII.member_of_order(8), Some(FamilyMember { id: FamilyId::MainII, param: 2 }));
        assert_eq!(FamilyId::MainII.member_of_order(4), None);
        assert_eq!(FamilyId::MainIX.member_of_order(15).unwrap().param, 5);
        assert_eq!(FamilyId::MainIX.member_of_order(12), None);
        assert_eq!(FamilyId::MainIII.member_of_order(6).unwrap().param, 1);
        let at9: Vec<_> = members_in(FamilyList::Main, 9..=9).iter().map(|m| m.id).collect();
        use FamilyId::*;
        assert_eq!(at9, vec![MainI, MainIV, MainV, MainVII, MainVIII, MainIX, MainX]);
    }

    #[test]
    fn text_round_trip() {
        let m = member("main-ix:3");
        assert_eq!(m.to_string(), "main-ix:3");
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, "\"main-ix:3\"");
        assert_eq!(serde_json::from_str::<FamilyMember>(&json).unwrap(), m);
    }
}
