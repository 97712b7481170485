use std::fmt;

use num_bigint::BigInt;

use super::PresentationError;
use crate::linalg::IntMatrix;
use crate::milnor::word::parse_power_token;

/// Standard generator `σ_{i+1}^{±1}` crossing positions `i` and `i + 1`
/// (zero-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BraidLetter {
    pub generator: usize,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<BraidLetter>) -> Result<Self, PresentationError> {
        if let Some(l) = letters.iter().find(|l| l.generator + 1 >= strands) {
            return Err(PresentationError::BraidGenerator {
                generator: l.generator + 1,
                strands,
            });
        }
        if letters.iter().any(|l| l.sign != 1 && l.sign != -1) {
            return Err(PresentationError::Syntax("braid letter sign must be ±1".into()));
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parses `"s1 s2^-1 …"`; `sK^n` repeats the letter `|n|` times.
    pub fn parse(strands: usize, word: &str) -> Result<Self, PresentationError> {
        let mut letters = Vec::new();
        for token in word.split_whitespace() {
            let (idx, exp) = parse_power_token(token, 's')
                .ok_or_else(|| PresentationError::Syntax(format!("bad braid token `{token}`")))?;
            let sign = if exp < 0 { -1 } else { 1 };
            letters.extend(std::iter::repeat_n(
                BraidLetter {
                    generator: idx - 1,
                    sign,
                },
                exp.unsigned_abs() as usize,
            ));
        }
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    /// `perm[i]` is the final position of the strand starting at position `i`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for l in &self.letters {
            at.swap(l.generator, l.generator + 1);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    pub fn is_pure(&self) -> bool {
        self.permutation().iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Pairwise linking numbers of the closure's components, counted as
    /// half the signed crossings between two strands. Only meaningful for
    /// pure braids.
    pub fn linking_numbers(&self) -> Result<IntMatrix, PresentationError> {
        if !self.is_pure() {
            return Err(PresentationError::BraidNotPure);
        }
        let n = self.strands;
        let mut twice = vec![vec![0i64; n]; n];
        let mut at: Vec<usize> = (0..n).collect();
        for l in &self.letters {
            let (a, b) = (at[l.generator], at[l.generator + 1]);
            twice[a][b] += i64::from(l.sign);
            twice[b][a] += i64::from(l.sign);
            at.swap(l.generator, l.generator + 1);
        }
        let mut lk = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                // Pure braids cross each pair of strands an even number of times.
                debug_assert_eq!(twice[i][j] % 2, 0);
                lk[(i, j)] = BigInt::from(twice[i][j] / 2);
            }
        }
        Ok(lk)
    }

    /// Crossing-switched braid; its closure is the mirror image.
    pub fn mirror(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self
                .letters
                .iter()
                .map(|l| BraidLetter {
                    generator: l.generator,
                    sign: -l.sign,
                })
                .collect(),
        }
    }

    pub fn word_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "s{}", l.generator + 1)?;
            if l.sign < 0 {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}
