use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Count;

/// Stirling numbers of the second kind, by `S(n,k) = k·S(n−1,k) + S(n−1,k−1)`.
pub fn stirling2(n: usize, k: usize) -> Count {
    if k > n {
        return Count::zero();
    }
    // row[j] = S(i, j) for the current i.
    let mut row = vec![Count::zero(); k + 1];
    row[0] = Count::one();
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            row[j] = &row[j] * j + &row[j - 1];
        }
        row[0] = Count::zero();
    }
    row[k].clone()
}

/// `n (n−1) ⋯ (n−k+1)`, with the empty product equal to 1.
pub fn falling_factorial(n: usize, k: usize) -> Count {
    if k > n {
        return Count::zero();
    }
    (n - k + 1..=n).fold(Count::one(), |acc, x| acc * x)
}

pub fn factorial(n: usize) -> Count {
    falling_factorial(n, n)
}

/// `f_{ℓ,s}(k) = k^{(ℓ)} (s−ℓ)! S(k−ℓ, s−ℓ)`: ordered partitions of a
/// `k`-set into `s` labelled parts, the first `ℓ` of them singletons and the
/// rest nonempty.
pub fn f(ell: usize, s: usize, k: usize) -> Result<Count> {
    if ell >= s {
        return Err(Error::Domain(format!(
            "f needs l < s, got l = {ell}, s = {s}"
        )));
    }
    if k < ell {
        return Ok(Count::zero());
    }
    Ok(falling_factorial(k, ell) * factorial(s - ell) * stirling2(k - ell, s - ell))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(x: u64) -> Count {
        Count::from(x)
    }

    /// Labellings `[k] → [s]` that are onto and whose first `ell` labels
    /// are used exactly once.
    fn brute_f(ell: usize, s: usize, k: usize) -> u64 {
        let total = s.pow(k as u32);
        let mut count = 0;
        for code in 0..total {
            let mut sizes = vec![0usize; s];
            let mut x = code;
            for _ in 0..k {
                sizes[x % s] += 1;
                x /= s;
            }
            if sizes.iter().all(|&n| n > 0) && sizes[..ell].iter().all(|&n| n == 1) {
                count += 1;
            }
        }
        count
    }

    /// Set partitions of `[n]` into `k` blocks via restricted growth strings.
    fn brute_stirling(n: usize, k: usize) -> u64 {
        fn go(i: usize, n: usize, k: usize, used: usize) -> u64 {
            if i == n {
                return (used == k) as u64;
            }
            (0..=used.min(k.saturating_sub(1)))
                .map(|b| go(i + 1, n, k, used.max(b + 1)))
                .sum()
        }
        if n == 0 {
            return (k == 0) as u64;
        }
        go(0, n, k, 0)
    }

    #[test]
    fn examples() {
        assert_eq!(stirling2(4, 2), c(7));
        assert_eq!(stirling2(0, 0), c(1));
        assert_eq!(stirling2(3, 0), c(0));
        for n in 1..12 {
            assert_eq!(stirling2(n, 1), c(1));
            assert_eq!(stirling2(n, n), c(1));
        }
        assert_eq!(falling_factorial(5, 0), c(1));
        assert_eq!(falling_factorial(5, 2), c(20));
        assert_eq!(falling_factorial(3, 4), c(0));
        for k in 1..8 {
            assert_eq!(f(0, 1, k).unwrap(), c(1));
        }
        assert_eq!(f(0, 2, 5).unwrap(), c(30));
        assert_eq!(f(1, 3, 5).unwrap(), c(70));
        assert!(f(2, 2, 5).is_err());
    }

    #[test]
    fn stirling_matches_set_partitions() {
        for n in 0..=9 {
            for k in 0..=n {
                assert_eq!(stirling2(n, k), c(brute_stirling(n, k)), "S({n},{k})");
            }
        }
    }

    #[test]
    fn f_matches_labellings() {
        for k in 0..=10 {
            for s in 1usize..=5 {
                if s.pow(k as u32) > 2_000_000 {
                    continue;
                }
                for ell in 0..s {
                    assert_eq!(
                        f(ell, s, k).unwrap(),
                        c(brute_f(ell, s, k)),
                        "f({ell},{s},{k})"
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn stirling_recurrence_closed_form(n in 0usize..30, k in 0usize..10) {
            // k! S(n,k) = Σ_j (−1)^{k−j} C(k,j) j^n, checked without signs.
            let mut pos = Count::zero();
            let mut neg = Count::zero();
            for j in 0..=k {
                let term = factorial(k) / (factorial(j) * factorial(k - j)) * Count::from(j).pow(n as u32);
                if (k - j) % 2 == 0 { pos += term } else { neg += term }
            }
            prop_assert_eq!(factorial(k) * stirling2(n, k) + neg, pos);
        }
    }
}
