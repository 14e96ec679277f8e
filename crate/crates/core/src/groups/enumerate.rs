use alloc::vec;
use alloc::vec::Vec;

use super::{factorize, AbelianGroup};

/// One group per isomorphism class of Abelian groups of order `n`, in
/// invariant-factor form. Ordered by number of factors, then
/// lexicographically on the factor list, so the cyclic group comes first.
pub fn enumerate_abelian_groups(n: u32) -> Vec<AbelianGroup> {
    assert!(n >= 1, "group order must be positive");
    // For each prime: every partition of its exponent, parts descending.
    let mut choices: Vec<(u64, Vec<Vec<u32>>)> = Vec::new();
    for (p, e) in factorize(n as u64) {
        choices.push((p, partitions(e)));
    }
    let mut lists: Vec<Vec<u64>> = vec![Vec::new()];
    for (p, parts) in &choices {
        let mut next = Vec::new();
        for acc in &lists {
            for part in parts {
                next.push(merge(acc, *p, part));
            }
        }
        lists = next;
    }
    let mut groups: Vec<AbelianGroup> = lists
        .into_iter()
        .map(|f| {
            AbelianGroup::new(f.into_iter().map(|d| d as u32).collect())
                .expect("prime-power merge yields a divisibility chain")
        })
        .collect();
    groups.sort_by(|a, b| {
        a.factors()
            .len()
            .cmp(&b.factors().len())
            .then_with(|| a.factors().cmp(b.factors()))
    });
    groups
}

/// Multiplies the prime-power parts of `p` into an ascending invariant-factor
/// list, aligning the largest parts with the largest factors.
fn merge(acc: &[u64], p: u64, part: &[u32]) -> Vec<u64> {
    let len = acc.len().max(part.len());
    let mut out = vec![1u64; len];
    for (i, &d) in acc.iter().enumerate() {
        out[len - acc.len() + i] *= d;
    }
    // `part` is descending; reverse it so the biggest power lands last.
    for (i, &k) in part.iter().rev().enumerate() {
        out[len - part.len() + i] *= p.pow(k);
    }
    out
}

/// All partitions of `e` with parts in non-increasing order.
fn partitions(e: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            go(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(e, e, &mut Vec::new(), &mut out);
    out
}

/// Number of integer partitions of `e`.
pub fn partition_count(e: u32) -> usize {
    partitions(e).len()
}
