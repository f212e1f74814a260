//! Rank of 0/1 matrices over GF(2).

use fixedbitset::FixedBitSet;

/// Rank of the matrix whose rows are `rows` (all of equal bit length).
pub(crate) fn rank(rows: &[FixedBitSet]) -> usize {
    let mut rows: Vec<FixedBitSet> = rows.iter().filter(|r| !r.is_clear()).cloned().collect();
    let mut rank = 0;
    while let Some(pivot_row) = rows.pop() {
        let Some(pivot) = pivot_row.minimum() else {
            continue;
        };
        rank += 1;
        for r in rows.iter_mut() {
            if r.contains(pivot) {
                r.symmetric_difference_with(&pivot_row);
            }
        }
        rows.retain(|r| !r.is_clear());
    }
    rank
}
