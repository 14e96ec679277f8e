//! Automorphisms of finite Abelian groups and orbit representatives of
//! connection sets under them.
//!
//! An automorphism is determined by the images of the unit generators
//! `e_1, .., e_k`. The image of `e_i` must have order dividing `d_i`; every
//! such choice defines a homomorphism, and it is an automorphism exactly when
//! it is injective. Cayley graphs of sets in one orbit are isomorphic, so a
//! scan only needs one set per orbit.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{AbelianGroup, ConnectionSet, GroupError};

/// Limits for orbit deduplication.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DedupOptions {
    pub enabled: bool,
    /// Groups above this order are not deduplicated.
    pub max_order: usize,
    /// Upper bound on the number of candidate generator images examined.
    pub max_candidates: u64,
    /// Upper bound on the number of inverse classes (subsets are `2^classes`).
    pub max_classes: usize,
}

impl Default for DedupOptions {
    fn default() -> Self {
        DedupOptions {
            enabled: true,
            max_order: 64,
            max_candidates: 1 << 22,
            max_classes: 24,
        }
    }
}

impl DedupOptions {
    pub fn disabled() -> Self {
        DedupOptions {
            enabled: false,
            ..DedupOptions::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DedupStatus {
    Applied { automorphisms: usize },
    Disabled,
    /// Deduplication was requested but is out of budget; every set is returned.
    Unavailable { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRep {
    pub set: ConnectionSet,
    /// Number of connection sets in the orbit (1 without deduplication).
    pub orbit_size: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReps {
    pub reps: Vec<OrbitRep>,
    pub dedup: DedupStatus,
    /// Nonempty inverse-closed identity-free subsets examined.
    pub subsets: u64,
}

/// Inverse classes `{s, -s}` of nonzero elements, as element indices, ordered
/// by their smallest member.
pub fn inverse_classes(group: &AbelianGroup) -> Vec<Vec<usize>> {
    let mut classes = Vec::new();
    for s in 1..group.order() {
        let t = group.neg_idx(s);
        if s < t {
            classes.push(vec![s, t]);
        } else if s == t {
            classes.push(vec![s]);
        }
    }
    classes
}

/// All automorphisms as permutations of element indices, or `None` when the
/// candidate space exceeds `max_candidates`.
pub fn automorphisms(group: &AbelianGroup, max_candidates: u64) -> Option<Vec<Vec<u32>>> {
    let n = group.order();
    let k = group.rank();
    // candidate images per generator: order divides d_i
    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(k);
    let mut space: u64 = 1;
    for &d in group.factors() {
        let c: Vec<usize> = (0..n)
            .filter(|&x| d % group.element_order(&group.element(x)).unwrap() == 0)
            .collect();
        space = space.saturating_mul(c.len() as u64);
        candidates.push(c);
    }
    if space > max_candidates {
        return None;
    }
    let elements: Vec<Vec<u32>> = (0..n).map(|x| group.decode(x)).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; k];
    let mut seen = vec![false; n];
    // multiples[i][c] = c * image_i
    let mut multiples: Vec<Vec<usize>> = vec![Vec::new(); k];
    loop {
        for i in 0..k {
            let img = candidates[i][choice[i]];
            let d = group.factors()[i] as usize;
            let m = &mut multiples[i];
            m.clear();
            let mut acc = 0usize;
            for _ in 0..d {
                m.push(acc);
                acc = group.add_idx(acc, img);
            }
        }
        seen.iter_mut().for_each(|s| *s = false);
        let mut perm = Vec::with_capacity(n);
        let mut injective = true;
        for x in &elements {
            let mut acc = 0usize;
            for (i, &c) in x.iter().enumerate() {
                acc = group.add_idx(acc, multiples[i][c as usize]);
            }
            if seen[acc] {
                injective = false;
                break;
            }
            seen[acc] = true;
            perm.push(acc as u32);
        }
        if injective {
            out.push(perm);
        }
        // odometer
        let mut i = k;
        loop {
            if i == 0 {
                return Some(out);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// One representative per `Aut(A)`-orbit of nonempty inverse-closed,
/// identity-free subsets satisfying `predicate`.
///
/// `predicate` must be invariant under automorphisms (generation and size
/// bounds are); it is only evaluated on representatives. The representative of
/// an orbit is its member with the smallest class bitmask, where bit `i`
/// stands for the `i`-th inverse class. Output is sorted by the set's
/// lexicographic order.
pub fn connection_set_orbit_reps<P>(
    group: &AbelianGroup,
    predicate: P,
    options: &DedupOptions,
) -> Result<OrbitReps, GroupError>
where
    P: Fn(&ConnectionSet) -> bool,
{
    let classes = inverse_classes(group);
    let k = classes.len();
    if k > options.max_classes || k >= 64 {
        return Err(GroupError::TooManySubsets {
            classes: k,
            limit: options.max_classes,
        });
    }
    let total: u64 = (1u64 << k) - 1;
    let build = |mask: u64| {
        let idx: Vec<usize> = (0..k)
            .filter(|&i| mask >> i & 1 == 1)
            .flat_map(|i| classes[i].iter().copied())
            .collect();
        ConnectionSet::from_indices_unchecked(group, &idx)
    };

    let mut status = DedupStatus::Disabled;
    let mut auts = None;
    if options.enabled {
        if group.order() > options.max_order {
            status = DedupStatus::Unavailable {
                reason: alloc::format!(
                    "group order {} exceeds dedup cap {}",
                    group.order(),
                    options.max_order
                ),
            };
        } else {
            match automorphisms(group, options.max_candidates) {
                Some(a) => {
                    status = DedupStatus::Applied {
                        automorphisms: a.len(),
                    };
                    auts = Some(a);
                }
                None => {
                    status = DedupStatus::Unavailable {
                        reason: alloc::format!(
                            "automorphism candidate space of {group} exceeds {}",
                            options.max_candidates
                        ),
                    }
                }
            }
        }
    }

    let mut reps = Vec::new();
    match auts {
        None => {
            for mask in 1..=total {
                let set = build(mask);
                if predicate(&set) {
                    reps.push(OrbitRep { set, orbit_size: 1 });
                }
            }
        }
        Some(auts) => {
            let mut class_of = vec![usize::MAX; group.order()];
            for (c, members) in classes.iter().enumerate() {
                for &m in members {
                    class_of[m] = c;
                }
            }
            let class_perms: Vec<Vec<u8>> = auts
                .iter()
                .map(|perm| {
                    classes
                        .iter()
                        .map(|members| class_of[perm[members[0]] as usize] as u8)
                        .collect()
                })
                .collect();
            let mut visited = vec![0u64; ((total + 1) as usize).div_ceil(64)];
            for mask in 1..=total {
                if visited[(mask >> 6) as usize] >> (mask & 63) & 1 == 1 {
                    continue;
                }
                let mut orbit_size = 0u64;
                for cp in &class_perms {
                    let mut image = 0u64;
                    let mut rest = mask;
                    while rest != 0 {
                        let i = rest.trailing_zeros() as usize;
                        rest &= rest - 1;
                        image |= 1u64 << cp[i];
                    }
                    let word = &mut visited[(image >> 6) as usize];
                    if *word >> (image & 63) & 1 == 0 {
                        *word |= 1u64 << (image & 63);
                        orbit_size += 1;
                    }
                }
                let set = build(mask);
                if predicate(&set) {
                    reps.push(OrbitRep { set, orbit_size });
                }
            }
        }
    }
    reps.sort_by(|a, b| a.set.cmp(&b.set));
    Ok(OrbitReps {
        reps,
        dedup: status,
        subsets: total,
    })
}
