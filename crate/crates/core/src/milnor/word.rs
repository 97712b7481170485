use std::fmt;
use std::str::FromStr;

use super::MilnorError;

/// A letter `x_g^{±1}`; `generator` is zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub exponent: i8,
}

impl Letter {
    pub fn new(generator: usize, exponent: i8) -> Self {
        debug_assert!(exponent == 1 || exponent == -1);
        Letter {
            generator,
            exponent,
        }
    }

    pub fn inverse(self) -> Self {
        Letter {
            generator: self.generator,
            exponent: -self.exponent,
        }
    }
}

/// Word in the free group on `x₁, x₂, …`. Always stored freely reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn generator(g: usize) -> Self {
        FreeWord {
            letters: vec![Letter::new(g, 1)],
        }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = FreeWord::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Appends a letter, cancelling against the last one if possible.
    pub fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inverse()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn inverse(&self) -> Self {
        FreeWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &FreeWord) -> Self {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn conjugate_by(&self, g: &FreeWord) -> Self {
        g.concat(self).concat(&g.inverse())
    }

    pub fn exponent_sum(&self, generator: usize) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.generator == generator)
            .map(|l| i64::from(l.exponent))
            .sum()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }

    /// Replaces every letter `x_g^{±1}` by `image(g)^{±1}`.
    pub fn substitute<F: Fn(usize) -> FreeWord>(&self, image: F) -> FreeWord {
        let mut out = FreeWord::identity();
        for l in &self.letters {
            let img = image(l.generator);
            let piece = if l.exponent > 0 { img } else { img.inverse() };
            for &x in &piece.letters {
                out.push(x);
            }
        }
        out
    }

    /// Reflects every letter `x ↦ x⁻¹` without reversing order.
    pub fn mirror(&self) -> Self {
        FreeWord::from_letters(self.letters.iter().map(|l| l.inverse()))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "x{}", l.generator + 1)?;
            if l.exponent < 0 {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// Parses a whitespace-separated token like `x3`, `x3^-1` or `s2^2` with the
/// given prefix into `(one-based index, exponent)`.
pub(crate) fn parse_power_token(token: &str, prefix: char) -> Option<(usize, i64)> {
    let rest = token.strip_prefix(prefix)?;
    let (idx, exp) = match rest.split_once('^') {
        Some((i, e)) => (i, e.parse::<i64>().ok()?),
        None => (rest, 1),
    };
    let idx = idx.parse::<usize>().ok()?;
    (idx >= 1).then_some((idx, exp))
}

impl FromStr for FreeWord {
    type Err = MilnorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut w = FreeWord::identity();
        for token in s.split_whitespace() {
            let (idx, exp) = parse_power_token(token, 'x')
                .ok_or_else(|| MilnorError::Parse(format!("bad word token `{token}`")))?;
            let letter = Letter::new(idx - 1, if exp < 0 { -1 } else { 1 });
            for _ in 0..exp.unsigned_abs() {
                w.push(letter);
            }
        }
        Ok(w)
    }
}
