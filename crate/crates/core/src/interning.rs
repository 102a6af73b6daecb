//! Synchronized interning of color signatures.
//!
//! Refinement rounds build one structured signature per item (vertex or
//! pair) in each graph of a comparison. All signatures of a round are pooled,
//! sorted and deduplicated; an item's new color is the rank of its signature.
//! Ranks depend only on the multiset of signatures, so colors are comparable
//! across the graphs and independent of the order the graphs are given in.

/// Replaces each signature by the rank of its value among all distinct
/// signatures of all groups. Returns the ranked groups and the number of
/// distinct values.
pub fn rank_jointly<S: Ord>(groups: &[Vec<S>]) -> (Vec<Vec<u32>>, usize) {
    let mut pool: Vec<&S> = groups.iter().flatten().collect();
    pool.sort_unstable();
    pool.dedup();
    let ranked = groups
        .iter()
        .map(|group| {
            group
                .iter()
                .map(|s| pool.binary_search(&s).expect("signature present in pool") as u32)
                .collect()
        })
        .collect();
    (ranked, pool.len())
}

/// Sorted `(color, count)` pairs.
pub fn histogram(colors: &[u32]) -> Vec<(u32, usize)> {
    let mut sorted = colors.to_vec();
    sorted.sort_unstable();
    let mut out: Vec<(u32, usize)> = Vec::new();
    for c in sorted {
        match out.last_mut() {
            Some((last, count)) if *last == c => *count += 1,
            _ => out.push((c, 1)),
        }
    }
    out
}
