//! Rank over GF(2) of small sets of bit vectors.

/// Rank of the span of `vectors`, each a row of at most 64 bits.
///
/// Keeps an xor basis indexed by leading bit; each new vector is reduced
/// against it and inserted if anything survives.
pub fn rank<I>(vectors: I) -> u32
where
    I: IntoIterator<Item = u64>,
{
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for mut v in vectors {
        while v != 0 {
            let lead = 63 - v.leading_zeros() as usize;
            if basis[lead] == 0 {
                basis[lead] = v;
                rank += 1;
                break;
            }
            v ^= basis[lead];
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Plain Gaussian elimination on a row list, as a cross-check.
    fn rank_by_elimination(mut rows: Vec<u64>) -> u32 {
        let mut rank = 0;
        for col in 0..64 {
            let bit = 1u64 << col;
            let Some(p) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && *row & bit != 0 {
                    *row ^= pivot;
                }
            }
            rank += 1;
        }
        rank as u32
    }

    #[test]
    fn small_cases() {
        assert_eq!(rank([]), 0);
        assert_eq!(rank([0, 0]), 0);
        assert_eq!(rank([0b01, 0b10, 0b11]), 2);
        // all seven nonzero 3-bit vectors
        assert_eq!(rank(1..8u64), 3);
    }

    proptest! {
        #[test]
        fn agrees_with_elimination(rows in proptest::collection::vec(any::<u64>(), 0..20)) {
            prop_assert_eq!(rank(rows.iter().copied()), rank_by_elimination(rows));
        }
    }
}
