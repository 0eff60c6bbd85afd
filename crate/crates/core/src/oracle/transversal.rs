//! Minimal transversals (minimal hitting sets) of a family of sets given as
//! bitmasks, by Berge's incremental method.

/// Keeps only the inclusion-minimal masks, sorted ascending.
pub(crate) fn minimalize(mut masks: Vec<u64>) -> Vec<u64> {
    masks.sort_unstable_by_key(|m| (m.count_ones(), *m));
    masks.dedup();
    let mut kept: Vec<u64> = Vec::with_capacity(masks.len());
    for m in masks {
        if !kept.iter().any(|&k| k & !m == 0) {
            kept.push(m);
        }
    }
    kept.sort_unstable();
    kept
}

/// All minimal sets meeting every edge of `edges`. An empty family has the
/// empty set as its only transversal; a family containing the empty set has
/// none.
pub(crate) fn minimal_transversals(edges: &[u64]) -> Vec<u64> {
    let mut transversals: Vec<u64> = vec![0];
    for &edge in edges {
        let mut next: Vec<u64> = Vec::with_capacity(transversals.len() * 2);
        for &t in &transversals {
            if t & edge != 0 {
                next.push(t);
                continue;
            }
            let mut rest = edge;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                next.push(t | bit);
                rest ^= bit;
            }
        }
        transversals = minimalize(next);
    }
    transversals
}
