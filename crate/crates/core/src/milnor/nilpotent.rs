//! Ranks attached to the lower central series of a free group.

use num_bigint::BigInt;
use num_traits::Zero;

use super::MilnorError;

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Witt number `(1/i) Σ_{d|i} μ(d) m^{i/d}`: the rank of `F_i/F_{i+1}`
/// for the free group of rank `m`, equivalently of the degree-`i` part of
/// the free Lie ring.
pub fn witt_rank(m: u64, i: u32) -> BigInt {
    if i == 0 {
        return BigInt::zero();
    }
    let base = BigInt::from(m);
    let total: BigInt = (1..=i)
        .filter(|d| i.is_multiple_of(*d))
        .map(|d| BigInt::from(mobius(u64::from(d))) * base.pow(i / d))
        .sum();
    total / BigInt::from(i)
}

/// Rank of `H₃(F/F_k; Z)` for `F` free of rank `m`:
/// `Σ_{i=k}^{2k−2} (m·Nᵢ − N_{i+1})` with `Nᵢ = rank H₂(F/Fᵢ) = rank Fᵢ/F_{i+1}`.
pub fn free_nilpotent_h3_rank(m: u64, k: u32) -> Result<BigInt, MilnorError> {
    if m < 1 || k < 2 {
        return Err(MilnorError::InvalidRankArguments { m, k });
    }
    let mb = BigInt::from(m);
    Ok((k..=2 * k - 2)
        .map(|i| &mb * witt_rank(m, i) - witt_rank(m, i + 1))
        .sum())
}
