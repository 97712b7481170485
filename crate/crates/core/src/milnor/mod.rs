//! Milnor μ̄-invariants from Magnus expansions of longitudes.
//!
//! `μ(i₁…i_r)` is the coefficient of `X_{i₁}…X_{i_{r−1}}` in the Magnus
//! expansion of the longitude of component `i_r`. It is only defined modulo
//! `Δ(I)`, the gcd of `μ(J)` over all `J` obtained from `I` by deleting at
//! least one index and permuting cyclically.

mod artin;
mod magnus;
mod nilpotent;
pub(crate) mod word;

pub use artin::{artin_image, artin_longitudes};
pub use magnus::{magnus_expand, MagnusSeries};
pub use nilpotent::{free_nilpotent_h3_rank, witt_rank};
pub use word::{FreeWord, Letter};

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::presentation::FramedLink;

/// Default bound on μ̄ lengths searched by [`first_nonvanishing_length`].
pub const DEFAULT_MAX_LENGTH: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MilnorError {
    #[error("braid is not pure")]
    NotPure,
    #[error("link has neither braid nor longitude data")]
    NoLongitudeData,
    #[error("index {index} out of range for {components} components")]
    IndexOutOfRange { index: usize, components: usize },
    #[error("μ̄ needs at least two indices")]
    IndexTooShort,
    #[error("rank formula needs m >= 1 and k >= 2 (got m={m}, k={k})")]
    InvalidRankArguments { m: u64, k: u32 },
    #[error("parse error: {0}")]
    Parse(String),
}

/// A μ̄ value with its indeterminacy; `modulus == 0` means the value is an
/// honest integer. The index is one-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuInvariant {
    pub index: Vec<usize>,
    pub value: BigInt,
    pub modulus: BigInt,
}

impl MuInvariant {
    pub fn index_string(&self) -> String {
        self.index
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for MuInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mu({}) = {}", self.index_string(), self.value)?;
        if !self.modulus.is_zero() {
            write!(f, " mod {}", self.modulus)?;
        }
        Ok(())
    }
}

/// Longitudes of a link together with their Magnus expansions, truncated
/// for μ̄ lengths up to `max_length`.
#[derive(Clone, Debug)]
pub struct MilnorData {
    longitudes: Vec<FreeWord>,
    series: Vec<MagnusSeries>,
    max_length: usize,
}

impl MilnorData {
    pub fn new(link: &FramedLink, max_length: usize) -> Result<Self, MilnorError> {
        let longitudes = match (link.longitudes(), link.braid()) {
            (Some(ls), _) => ls.to_vec(),
            (None, Some(b)) => artin_longitudes(b)?,
            (None, None) => return Err(MilnorError::NoLongitudeData),
        };
        Ok(Self::from_longitudes(longitudes, max_length))
    }

    pub fn from_longitudes(longitudes: Vec<FreeWord>, max_length: usize) -> Self {
        let m = longitudes.len();
        let degree = max_length.saturating_sub(1);
        let series = longitudes
            .iter()
            .map(|w| magnus_expand(w, m, degree))
            .collect();
        MilnorData {
            longitudes,
            series,
            max_length,
        }
    }

    pub fn components(&self) -> usize {
        self.longitudes.len()
    }

    pub fn longitudes(&self) -> &[FreeWord] {
        &self.longitudes
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }

    fn check_index(&self, index: &[usize]) -> Result<Vec<usize>, MilnorError> {
        if index.len() < 2 {
            return Err(MilnorError::IndexTooShort);
        }
        let m = self.components();
        index
            .iter()
            .map(|&i| {
                if i == 0 || i > m {
                    Err(MilnorError::IndexOutOfRange {
                        index: i,
                        components: m,
                    })
                } else {
                    Ok(i - 1)
                }
            })
            .collect()
    }

    fn ensure_degree(&mut self, length: usize) {
        if length > self.max_length {
            *self = Self::from_longitudes(std::mem::take(&mut self.longitudes), length);
        }
    }

    /// Raw Magnus coefficient for a zero-based index.
    fn raw(&self, index: &[usize]) -> BigInt {
        let (&last, head) = index.split_last().expect("nonempty index");
        self.series[last].coeff(head)
    }

    /// `Δ(I)` for a zero-based index.
    fn indeterminacy(&self, index: &[usize]) -> BigInt {
        let r = index.len();
        let mut seen = BTreeSet::new();
        let mut g = BigInt::zero();
        for mask in 1u32..(1 << r) - 1 {
            if mask.count_ones() < 2 {
                continue;
            }
            let sub: Vec<usize> = (0..r).filter(|k| mask & (1 << k) != 0).map(|k| index[k]).collect();
            for rot in 0..sub.len() {
                let mut j = sub.clone();
                j.rotate_left(rot);
                if seen.insert(j.clone()) {
                    g = g.gcd(&self.raw(&j));
                    if g.is_one() {
                        return g;
                    }
                }
            }
        }
        g
    }

    /// `μ̄(I)` for a one-based index, reduced into `[0, Δ)` when `Δ > 0`.
    pub fn mu_bar(&mut self, index: &[usize]) -> Result<MuInvariant, MilnorError> {
        let zero_based = self.check_index(index)?;
        self.ensure_degree(index.len());
        let raw = self.raw(&zero_based);
        let modulus = self.indeterminacy(&zero_based);
        let value = if modulus.is_zero() { raw } else { raw.mod_floor(&modulus) };
        Ok(MuInvariant {
            index: index.to_vec(),
            value,
            modulus,
        })
    }

    /// Smallest `r ≤ max_length` with a nonzero μ̄ of length `r`, together
    /// with the lexicographically first witness. At the first nonvanishing
    /// length every indeterminacy is zero, so raw coefficients decide.
    pub fn first_nonvanishing(&mut self, max_length: usize) -> Option<MuInvariant> {
        self.ensure_degree(max_length);
        let m = self.components();
        if m == 0 {
            return None;
        }
        for r in 2..=max_length {
            let mut idx = vec![0usize; r];
            loop {
                let v = self.raw(&idx);
                if !v.is_zero() {
                    return Some(MuInvariant {
                        index: idx.iter().map(|i| i + 1).collect(),
                        value: v,
                        modulus: BigInt::zero(),
                    });
                }
                if !advance(&mut idx, m) {
                    break;
                }
            }
        }
        None
    }

    /// Every μ̄ of length `2..=max_length` whose reduced value is nonzero.
    pub fn nonzero_table(&mut self, max_length: usize) -> Vec<MuInvariant> {
        self.ensure_degree(max_length);
        let m = self.components();
        let mut out = Vec::new();
        if m == 0 {
            return out;
        }
        for r in 2..=max_length {
            let mut idx = vec![0usize; r];
            loop {
                let raw = self.raw(&idx);
                // A zero raw coefficient reduces to zero under any modulus.
                if !raw.is_zero() {
                    let modulus = self.indeterminacy(&idx);
                    let value = if modulus.is_zero() { raw } else { raw.mod_floor(&modulus) };
                    if !value.is_zero() {
                        out.push(MuInvariant {
                            index: idx.iter().map(|i| i + 1).collect(),
                            value,
                            modulus,
                        });
                    }
                }
                if !advance(&mut idx, m) {
                    break;
                }
            }
        }
        out
    }
}

fn advance(idx: &mut [usize], m: usize) -> bool {
    for slot in idx.iter_mut().rev() {
        *slot += 1;
        if *slot < m {
            return true;
        }
        *slot = 0;
    }
    false
}

/// `μ̄(I)` of a link with braid or longitude data; `index` is one-based.
pub fn mu_bar(link: &FramedLink, index: &[usize]) -> Result<MuInvariant, MilnorError> {
    MilnorData::new(link, index.len())?.mu_bar(index)
}

/// Length of the first nonvanishing μ̄ up to `max_length`, if any.
pub fn first_nonvanishing_length(link: &FramedLink, max_length: usize) -> Result<Option<usize>, MilnorError> {
    Ok(MilnorData::new(link, max_length)?
        .first_nonvanishing(max_length)
        .map(|mu| mu.index.len()))
}
