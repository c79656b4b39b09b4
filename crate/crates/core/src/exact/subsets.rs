//! Lexicographically ordered k-subsets of `{0, …, n-1}`.
//!
//! Every external format lists subsets in this order, so the ranking here is
//! the single source of truth for coordinate positions.

use itertools::Itertools;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All k-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..n).combinations(k).collect()
}

/// Position of a sorted k-subset of `0..n` in lexicographic order.
pub fn subset_rank(n: usize, subset: &[usize]) -> usize {
    let k = subset.len();
    let mut rank = 0;
    let mut next = 0;
    for (i, &c) in subset.iter().enumerate() {
        for skipped in next..c {
            rank += binomial(n - 1 - skipped, k - 1 - i);
        }
        next = c + 1;
    }
    rank
}

/// Sorts a sequence of indices and returns the sign of the sorting permutation,
/// or `None` when an index repeats.
pub fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = indices.to_vec();
    let mut sign = 1;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((v, sign))
    }
}

/// Parses a 1-based subset key such as `"1,3,4"` into sorted 0-based indices.
pub fn parse_subset_key(key: &str) -> Option<Vec<usize>> {
    let mut out = Vec::new();
    for part in key.split(',') {
        let i: usize = part.trim().parse().ok()?;
        if i == 0 {
            return None;
        }
        out.push(i - 1);
    }
    out.sort_unstable();
    Some(out)
}

/// Formats sorted 0-based indices as a 1-based key such as `"1,3,4"`.
pub fn subset_key(subset: &[usize]) -> String {
    subset.iter().map(|i| (i + 1).to_string()).join(",")
}
