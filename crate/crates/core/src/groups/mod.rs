//! Finite Abelian groups in invariant-factor form, their elements, and
//! connection sets.
//!
//! Groups are written additively. An element is a tuple of residues
//! `(x_1, .., x_k)` with `0 <= x_i < d_i` where `d_1 | d_2 | .. | d_k` are
//! the invariant factors. Elements are indexed in lexicographic tuple order,
//! which is also the vertex order of every Cayley graph built from the group.

mod automorphism;
mod enumerate;

pub use automorphism::{
    automorphisms, connection_set_orbit_reps, inverse_classes, DedupOptions, DedupStatus,
    OrbitRep, OrbitReps,
};
pub use enumerate::{enumerate_abelian_groups, partition_count};

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

/// Errors raised while building or operating on groups and connection sets.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("invariant factor {0} is smaller than 2")]
    FactorTooSmall(u32),
    #[error("invariant factors are not a divisibility chain: {0} does not divide {1}")]
    NotAChain(u32, u32),
    #[error("cyclic modulus must be at least 1, got {0}")]
    BadModulus(u32),
    #[error("group order overflows")]
    OrderOverflow,
    #[error("element has {got} coordinates, group has {expected} invariant factors")]
    LengthMismatch { expected: usize, got: usize },
    #[error("coordinate {coord} is out of range for factor {factor}")]
    CoordinateOutOfRange { coord: u32, factor: u32 },
    #[error("connection set contains the identity")]
    ContainsIdentity,
    #[error("connection set is not inverse-closed: {0} is present but its inverse is not")]
    NotInverseClosed(String),
    #[error("connection set is empty")]
    EmptyConnectionSet,
    #[error("{classes} inverse classes give too many subsets to enumerate (limit {limit})")]
    TooManySubsets { classes: usize, limit: usize },
}

/// A finite Abelian group `Z_{d_1} x .. x Z_{d_k}` with `d_i | d_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct AbelianGroup {
    factors: Vec<u32>,
    order: usize,
}

impl TryFrom<Vec<u32>> for AbelianGroup {
    type Error = GroupError;

    fn try_from(factors: Vec<u32>) -> Result<Self, GroupError> {
        AbelianGroup::new(factors)
    }
}

impl From<AbelianGroup> for Vec<u32> {
    fn from(group: AbelianGroup) -> Self {
        group.factors
    }
}

/// An element of an [`AbelianGroup`]; coordinates are residues modulo the
/// invariant factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    coords: Vec<u32>,
}

impl GroupElement {
    pub fn new(coords: Vec<u32>) -> Self {
        GroupElement { coords }
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            return write!(f, "{}", self.coords[0]);
        }
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl AbelianGroup {
    /// Builds a group from an invariant-factor chain. The empty chain is the
    /// trivial group.
    pub fn new(factors: Vec<u32>) -> Result<Self, GroupError> {
        let mut order: usize = 1;
        for (i, &d) in factors.iter().enumerate() {
            if d < 2 {
                return Err(GroupError::FactorTooSmall(d));
            }
            if i + 1 < factors.len() && !factors[i + 1].is_multiple_of(d) {
                return Err(GroupError::NotAChain(d, factors[i + 1]));
            }
            order = order
                .checked_mul(d as usize)
                .ok_or(GroupError::OrderOverflow)?;
        }
        Ok(AbelianGroup { factors, order })
    }

    /// The cyclic group `Z_n`; `n = 1` gives the trivial group.
    pub fn cyclic(n: u32) -> Result<Self, GroupError> {
        match n {
            0 => Err(GroupError::BadModulus(0)),
            1 => AbelianGroup::new(Vec::new()),
            _ => AbelianGroup::new(vec![n]),
        }
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement::new(vec![0; self.factors.len()])
    }

    pub fn validate(&self, x: &GroupElement) -> Result<(), GroupError> {
        if x.coords.len() != self.factors.len() {
            return Err(GroupError::LengthMismatch {
                expected: self.factors.len(),
                got: x.coords.len(),
            });
        }
        for (&c, &d) in x.coords.iter().zip(&self.factors) {
            if c >= d {
                return Err(GroupError::CoordinateOutOfRange { coord: c, factor: d });
            }
        }
        Ok(())
    }

    /// Reduces arbitrary integer coordinates into a group element.
    pub fn element_from_ints(&self, coords: &[i64]) -> Result<GroupElement, GroupError> {
        if coords.len() != self.factors.len() {
            return Err(GroupError::LengthMismatch {
                expected: self.factors.len(),
                got: coords.len(),
            });
        }
        Ok(GroupElement::new(
            coords
                .iter()
                .zip(&self.factors)
                .map(|(&c, &d)| c.rem_euclid(d as i64) as u32)
                .collect(),
        ))
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement, GroupError> {
        self.validate(x)?;
        self.validate(y)?;
        Ok(GroupElement::new(
            x.coords
                .iter()
                .zip(&y.coords)
                .zip(&self.factors)
                .map(|((&a, &b), &d)| (a + b) % d)
                .collect(),
        ))
    }

    pub fn neg(&self, x: &GroupElement) -> Result<GroupElement, GroupError> {
        self.validate(x)?;
        Ok(GroupElement::new(
            x.coords
                .iter()
                .zip(&self.factors)
                .map(|(&a, &d)| (d - a) % d)
                .collect(),
        ))
    }

    /// Least `m >= 1` with `m x = 0`.
    pub fn element_order(&self, x: &GroupElement) -> Result<u32, GroupError> {
        self.validate(x)?;
        Ok(x.coords
            .iter()
            .zip(&self.factors)
            .map(|(&a, &d)| d / gcd(a, d))
            .fold(1, lcm))
    }

    /// Lexicographic rank of an element; the identity has index 0.
    pub fn index_of(&self, x: &GroupElement) -> Result<usize, GroupError> {
        self.validate(x)?;
        Ok(self.encode(&x.coords))
    }

    pub fn element(&self, index: usize) -> GroupElement {
        assert!(index < self.order, "element index {index} out of range");
        GroupElement::new(self.decode(index))
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |i| self.element(i))
    }

    pub(crate) fn encode(&self, coords: &[u32]) -> usize {
        coords
            .iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&c, &d)| acc * d as usize + c as usize)
    }

    pub(crate) fn decode(&self, mut index: usize) -> Vec<u32> {
        let mut coords = vec![0u32; self.factors.len()];
        for (slot, &d) in coords.iter_mut().zip(&self.factors).rev() {
            *slot = (index % d as usize) as u32;
            index /= d as usize;
        }
        coords
    }

    pub(crate) fn add_idx(&self, i: usize, j: usize) -> usize {
        let (mut i, mut j) = (i, j);
        let mut out = 0usize;
        let mut place = 1usize;
        for &d in self.factors.iter().rev() {
            let d = d as usize;
            out += ((i % d + j % d) % d) * place;
            place *= d;
            i /= d;
            j /= d;
        }
        out
    }

    pub(crate) fn neg_idx(&self, i: usize) -> usize {
        let mut i = i;
        let mut out = 0usize;
        let mut place = 1usize;
        for &d in self.factors.iter().rev() {
            let d = d as usize;
            out += ((d - i % d) % d) * place;
            place *= d;
            i /= d;
        }
        out
    }

    /// Whether `S` generates the whole group (closure of `{0}` under adding
    /// elements of `S`).
    pub fn generates(&self, set: &ConnectionSet) -> bool {
        let gens: Vec<usize> = set.elements.iter().map(|x| self.encode(&x.coords)).collect();
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut stack = vec![0usize];
        let mut reached = 1usize;
        while let Some(v) = stack.pop() {
            for &s in &gens {
                let w = self.add_idx(v, s);
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == self.order
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("Z1");
        }
        for (i, d) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "Z{d}")?;
        }
        Ok(())
    }
}

/// An inverse-closed, identity-free set of group elements, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConnectionSet {
    elements: Vec<GroupElement>,
}

impl ConnectionSet {
    /// Validates an explicit set: every element lies in `group`, the identity
    /// is absent, the set is nonempty and closed under negation.
    pub fn new(group: &AbelianGroup, elements: Vec<GroupElement>) -> Result<Self, GroupError> {
        let mut set = BTreeSet::new();
        for x in elements {
            group.validate(&x)?;
            if x.is_zero() {
                return Err(GroupError::ContainsIdentity);
            }
            set.insert(x);
        }
        if set.is_empty() {
            return Err(GroupError::EmptyConnectionSet);
        }
        for x in &set {
            let inv = group.neg(x)?;
            if !set.contains(&inv) {
                return Err(GroupError::NotInverseClosed(x.to_string()));
            }
        }
        Ok(ConnectionSet {
            elements: set.into_iter().collect(),
        })
    }

    /// Closes the given elements under negation before validating.
    pub fn closure(group: &AbelianGroup, elements: Vec<GroupElement>) -> Result<Self, GroupError> {
        let mut all = Vec::with_capacity(elements.len() * 2);
        for x in elements {
            let inv = group.neg(&x)?;
            all.push(x);
            all.push(inv);
        }
        ConnectionSet::new(group, all)
    }

    /// Circulant-style connection set in `Z_n`: residues are reduced mod `n`
    /// and closed under negation.
    pub fn from_residues(group: &AbelianGroup, residues: &[i64]) -> Result<Self, GroupError> {
        let elems = residues
            .iter()
            .map(|&r| group.element_from_ints(&[r]))
            .collect::<Result<Vec<_>, _>>()?;
        ConnectionSet::closure(group, elems)
    }

    pub(crate) fn from_indices_unchecked(group: &AbelianGroup, indices: &[usize]) -> Self {
        let mut elements: Vec<GroupElement> = indices.iter().map(|&i| group.element(i)).collect();
        elements.sort();
        ConnectionSet { elements }
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Vertex indices of the elements in `group`.
    pub fn indices(&self, group: &AbelianGroup) -> Vec<usize> {
        self.elements.iter().map(|x| group.encode(&x.coords)).collect()
    }

    /// For a cyclic group: the residues `s` with `s <= n - s`, one per `±`
    /// pair, ascending.
    pub fn half_residues(&self, group: &AbelianGroup) -> Vec<u32> {
        let n = group.order() as u32;
        self.elements
            .iter()
            .filter_map(|x| x.coords.first().copied())
            .filter(|&s| s <= n - s)
            .collect()
    }

    /// Renders the set in the text syntax accepted by the parser.
    pub fn to_text(&self) -> String {
        use core::fmt::Write;
        let mut out = String::from("{");
        for (i, x) in self.elements.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{x}");
        }
        out.push('}');
        out
    }
}

impl fmt::Display for ConnectionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A direct product `Z_{a_1} x .. x Z_{a_r}` in arbitrary (not necessarily
/// invariant-factor) form, together with the isomorphism onto the canonical
/// group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicProduct {
    moduli: Vec<u32>,
    group: AbelianGroup,
    // For every input modulus and every prime-power component of it:
    // (component modulus, canonical slot).
    components: Vec<Vec<(u64, usize)>>,
}

impl CyclicProduct {
    pub fn new(moduli: &[u32]) -> Result<Self, GroupError> {
        if let Some(&bad) = moduli.iter().find(|&&a| a == 0) {
            return Err(GroupError::BadModulus(bad));
        }
        // prime -> list of (exponent, prime power, input index)
        let mut by_prime: alloc::collections::BTreeMap<u64, Vec<(u32, u64, usize)>> =
            alloc::collections::BTreeMap::new();
        for (idx, &a) in moduli.iter().enumerate() {
            for (p, e) in factorize(a as u64) {
                by_prime.entry(p).or_default().push((e, p.pow(e), idx));
            }
        }
        let slots = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; slots];
        let mut components: Vec<Vec<(u64, usize)>> = vec![Vec::new(); moduli.len()];
        for parts in by_prime.values_mut() {
            parts.sort();
            let offset = slots - parts.len();
            for (i, &(_, q, idx)) in parts.iter().enumerate() {
                factors[offset + i] *= q;
                components[idx].push((q, offset + i));
            }
        }
        let factors: Vec<u32> = factors
            .into_iter()
            .map(|d| u32::try_from(d).map_err(|_| GroupError::OrderOverflow))
            .collect::<Result<_, _>>()?;
        let group = AbelianGroup::new(factors)?;
        Ok(CyclicProduct {
            moduli: moduli.to_vec(),
            group,
            components,
        })
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// Image of `coords` (one integer per input modulus, any sign) in the
    /// canonical group.
    pub fn to_canonical(&self, coords: &[i64]) -> Result<GroupElement, GroupError> {
        if coords.len() != self.moduli.len() {
            return Err(GroupError::LengthMismatch {
                expected: self.moduli.len(),
                got: coords.len(),
            });
        }
        // residues per canonical slot, combined by CRT
        let mut slot_parts: Vec<Vec<(u64, u64)>> = vec![Vec::new(); self.group.rank()];
        for (comps, &c) in self.components.iter().zip(coords) {
            for &(q, slot) in comps {
                slot_parts[slot].push((c.rem_euclid(q as i64) as u64, q));
            }
        }
        let coords = slot_parts
            .iter()
            .map(|parts| crt(parts) as u32)
            .collect::<Vec<_>>();
        Ok(GroupElement::new(coords))
    }
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    // extended Euclid on signed values; m > 1 and gcd(a, m) = 1
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(m as i128) as u64
}

/// Chinese remaindering over pairwise coprime moduli.
fn crt(parts: &[(u64, u64)]) -> u64 {
    let mut value = 0u64;
    let mut modulus = 1u64;
    for &(r, q) in parts {
        // value + modulus * k = r (mod q)
        let diff = (r + q - value % q) % q;
        let k = if q == 1 {
            0
        } else {
            (diff as u128 * mod_inverse(modulus % q, q) as u128 % q as u128) as u64
        };
        value += modulus * k;
        modulus *= q;
    }
    value
}
