//! Binomial coefficients and colexicographic ranking of 3-subsets.

/// `C(n, k)` in `u64`. Returns 0 when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        acc = acc * (n as u128 - k as u128 + i) / i;
    }
    acc as u64
}

/// Colex rank of a strictly increasing 0-based triple `a < b < c`:
/// `C(a,1) + C(b,2) + C(c,3)`. Independent of the ground set size.
#[inline]
pub fn colex_rank3(a: usize, b: usize, c: usize) -> usize {
    debug_assert!(a < b && b < c);
    a + b * (b - 1) / 2 + c * (c - 1) * (c - 2) / 6
}

/// Inverse of [`colex_rank3`].
pub fn colex_unrank3(rank: usize) -> (usize, usize, usize) {
    let mut rest = rank;
    // largest c with C(c,3) <= rest
    let mut c = 2usize;
    while binomial(c as u64 + 1, 3) as usize <= rest {
        c += 1;
    }
    rest -= binomial(c as u64, 3) as usize;
    let mut b = 1usize;
    while binomial(b as u64 + 1, 2) as usize <= rest {
        b += 1;
    }
    rest -= binomial(b as u64, 2) as usize;
    (rest, b, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(5, 6), 0);
        assert_eq!(binomial(1000, 3), 166_167_000);
        assert_eq!(binomial(3, 2), 3);
    }

    #[test]
    fn colex_roundtrip_small() {
        for c in 2..14 {
            for b in 1..c {
                for a in 0..b {
                    assert_eq!(colex_unrank3(colex_rank3(a, b, c)), (a, b, c));
                }
            }
        }
    }

    #[test]
    fn colex_is_dense_and_ordered() {
        let mut ranks = Vec::new();
        for c in 2..12 {
            for b in 1..c {
                for a in 0..b {
                    ranks.push(colex_rank3(a, b, c));
                }
            }
        }
        let sorted: Vec<usize> = (0..ranks.len()).collect();
        assert_eq!(ranks, sorted);
    }
}
