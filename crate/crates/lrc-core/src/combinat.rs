//! Small enumeration helpers.

use alloc::vec;
use alloc::vec::Vec;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // Next lexicographic permutation.
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { break };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

pub fn permutation_sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Partitions of `d` into at most `n` parts, each padded with zeros to length `n`, parts decreasing.
pub fn partitions_at_most(d: u32, n: usize) -> Vec<Vec<u32>> {
    fn rec(rem: u32, max: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let top = rem.min(max);
        for p in (0..=top).rev() {
            // The remaining slots must be able to absorb what is left.
            if (rem - p) as usize > p as usize * (slots - 1) {
                break;
            }
            cur.push(p);
            rec(rem - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, n, &mut Vec::new(), &mut out);
    out
}

/// Distinct rearrangements of a multiset.
pub fn multiset_permutations(items: &[u32]) -> Vec<Vec<u32>> {
    let mut v = items.to_vec();
    v.sort_unstable();
    let n = v.len();
    let mut out = Vec::new();
    loop {
        out.push(v.clone());
        let Some(i) = (1..n).rev().find(|&i| v[i - 1] < v[i]) else { break };
        let j = (i..n).rev().find(|&j| v[j] > v[i - 1]).expect("successor exists");
        v.swap(i - 1, j);
        v[i..].reverse();
    }
    out
}

/// Set partitions of `0..n` as lists of blocks; blocks are increasing and ordered by their minimum.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, n: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(i);
            rec(i + 1, n, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![i]);
        rec(i + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), &mut out);
    out
}

/// Exponent vectors in `n` variables of total degree at most `d`, in lexicographic order.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for p in 0..=rem {
            cur.push(p);
            rec(n, rem - p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(set_partitions(4).len(), 15);
        assert_eq!(partitions_at_most(12, 4).len(), 34);
        assert_eq!(partitions_at_most(4, 4).len(), 5);
        assert_eq!(multiset_permutations(&[2, 1, 1]).len(), 3);
        assert_eq!(monomials_up_to(4, 12).len(), 1820);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
    }
}
