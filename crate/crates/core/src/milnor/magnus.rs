use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::word::{FreeWord, Letter};

/// Truncated noncommutative power series in `X₁ … X_m` with integer
/// coefficients.
///
/// Degree `d` coefficients are stored densely, indexed by reading the
/// monomial `X_{i₁}…X_{i_d}` as a base-`m` number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagnusSeries {
    generators: usize,
    degree: usize,
    levels: Vec<Vec<BigInt>>,
}

impl MagnusSeries {
    pub fn zero(generators: usize, degree: usize) -> Self {
        let levels = (0..=degree)
            .map(|d| vec![BigInt::zero(); generators.pow(d as u32)])
            .collect();
        MagnusSeries {
            generators,
            degree,
            levels,
        }
    }

    pub fn one(generators: usize, degree: usize) -> Self {
        let mut s = Self::zero(generators, degree);
        s.levels[0][0] = BigInt::one();
        s
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn index(&self, monomial: &[usize]) -> usize {
        monomial
            .iter()
            .fold(0, |acc, &g| acc * self.generators + g)
    }

    fn monomial(&self, d: usize, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; d];
        for slot in out.iter_mut().rev() {
            *slot = idx % self.generators;
            idx /= self.generators;
        }
        out
    }

    /// Coefficient of `X_{i₁}…X_{i_d}` (zero-based generators). Monomials
    /// beyond the truncation degree read as zero.
    pub fn coeff(&self, monomial: &[usize]) -> BigInt {
        if monomial.len() > self.degree || monomial.iter().any(|&g| g >= self.generators) {
            return BigInt::zero();
        }
        self.levels[monomial.len()][self.index(monomial)].clone()
    }

    /// Nonzero terms as `(monomial, coefficient)` in degree-then-lex order.
    pub fn terms(&self) -> Vec<(Vec<usize>, BigInt)> {
        let mut out = Vec::new();
        for (d, level) in self.levels.iter().enumerate() {
            for (idx, c) in level.iter().enumerate() {
                if !c.is_zero() {
                    out.push((self.monomial(d, idx), c.clone()));
                }
            }
        }
        out
    }

    /// Right multiplication by the image of one letter:
    /// `x ↦ 1 + X`, `x⁻¹ ↦ 1 − X + X² − …`.
    pub fn mul_letter(&mut self, letter: Letter) {
        let m = self.generators;
        let g = letter.generator;
        assert!(g < m, "generator out of range");
        if letter.exponent > 0 {
            for d in (1..=self.degree).rev() {
                let (lower, upper) = self.levels.split_at_mut(d);
                let prev = &lower[d - 1];
                let cur = &mut upper[0];
                for (idx, c) in prev.iter().enumerate() {
                    if !c.is_zero() {
                        cur[idx * m + g] += c;
                    }
                }
            }
        } else {
            // S' = S·(1+X)⁻¹ satisfies S'[J·g] = S[J·g] − S'[J].
            for d in 1..=self.degree {
                let (lower, upper) = self.levels.split_at_mut(d);
                let prev = &lower[d - 1];
                let cur = &mut upper[0];
                for (idx, c) in prev.iter().enumerate() {
                    if !c.is_zero() {
                        cur[idx * m + g] -= c;
                    }
                }
            }
        }
    }

    pub fn mul(&self, rhs: &MagnusSeries) -> MagnusSeries {
        assert_eq!(self.generators, rhs.generators);
        let degree = self.degree.min(rhs.degree);
        let mut out = MagnusSeries::zero(self.generators, degree);
        for d1 in 0..=degree {
            for d2 in 0..=degree - d1 {
                let shift = self.generators.pow(d2 as u32);
                for (i, a) in self.levels[d1].iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in rhs.levels[d2].iter().enumerate() {
                        if !b.is_zero() {
                            out.levels[d1 + d2][i * shift + j] += a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Inverse of a series with constant term 1.
    pub fn inverse(&self) -> Option<MagnusSeries> {
        if !self.levels[0][0].is_one() {
            return None;
        }
        let m = self.generators;
        let mut t = MagnusSeries::one(m, self.degree);
        for d in 1..=self.degree {
            for k in 1..=d {
                let shift = m.pow((d - k) as u32);
                for (i, a) in self.levels[k].iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for j in 0..t.levels[d - k].len() {
                        let b = &t.levels[d - k][j];
                        if !b.is_zero() {
                            let v = a * b;
                            t.levels[d][i * shift + j] -= v;
                        }
                    }
                }
            }
        }
        Some(t)
    }

    pub fn is_one(&self) -> bool {
        self.levels[0][0].is_one() && self.levels[1..].iter().flatten().all(Zero::is_zero)
    }
}

/// Magnus expansion of `word` in `generators` variables, truncated above
/// `degree`.
pub fn magnus_expand(word: &FreeWord, generators: usize, degree: usize) -> MagnusSeries {
    let mut s = MagnusSeries::one(generators, degree);
    for &l in word.letters() {
        s.mul_letter(l);
    }
    s
}
