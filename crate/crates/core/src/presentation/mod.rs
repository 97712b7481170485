//! Framed-link surgery presentations in S³.
//!
//! A presentation records only what the invariants consume: rational
//! framings, pairwise linking numbers, and optionally either a pure braid
//! whose closure is the link or Seifert-framed longitude words.

mod braid;

pub use braid::{BraidLetter, BraidWord};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{IntMatrix, RatMatrix};
use crate::milnor::FreeWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("framing {p}/{q} is invalid: need q >= 1 and gcd(p, q) = 1")]
    InvalidFraming { p: BigInt, q: BigInt },
    #[error("linking matrix must be {expected}x{expected}")]
    LinkingShape { expected: usize },
    #[error("linking matrix is not symmetric")]
    LinkingNotSymmetric,
    #[error("linking matrix has nonzero diagonal entry at component {0}")]
    LinkingDiagonal(usize),
    #[error("braid generator s{generator} needs more than {strands} strands")]
    BraidGenerator { generator: usize, strands: usize },
    #[error("braid is not pure")]
    BraidNotPure,
    #[error("braid has {strands} strands but the link has {components} components")]
    BraidStrandCount { strands: usize, components: usize },
    #[error("braid linking numbers disagree with lk at ({0}, {1})")]
    BraidLinkingMismatch(usize, usize),
    #[error("expected {expected} longitudes, found {found}")]
    LongitudeCount { expected: usize, found: usize },
    #[error("longitude {0} uses a generator beyond the component count")]
    LongitudeGenerator(usize),
    #[error("exponent sum of x{generator} in longitude {longitude} is {found}, expected {expected}")]
    LongitudeExponent {
        longitude: usize,
        generator: usize,
        found: i64,
        expected: BigInt,
    },
    #[error("syntax error: {0}")]
    Syntax(String),
}

/// Surgery coefficient `p/q` with `q ≥ 1` and `gcd(p, q) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Framing {
    p: BigInt,
    q: BigInt,
}

impl Framing {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self, PresentationError> {
        let (p, q) = (p.into(), q.into());
        if q < BigInt::one() || !p.gcd(&q).is_one() {
            return Err(PresentationError::InvalidFraming { p, q });
        }
        Ok(Framing { p, q })
    }

    pub fn integral(n: impl Into<BigInt>) -> Self {
        Framing {
            p: n.into(),
            q: BigInt::one(),
        }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn is_integral(&self) -> bool {
        self.q.is_one()
    }

    pub fn as_rational(&self) -> BigRational {
        BigRational::new(self.p.clone(), self.q.clone())
    }

    pub fn neg(&self) -> Self {
        Framing {
            p: -&self.p,
            q: self.q.clone(),
        }
    }
}

impl fmt::Display for Framing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Framing {
    type Err = PresentationError;

    /// Accepts `"p/q"` or a bare integer `"p"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PresentationError::Syntax(format!("bad framing `{s}`"));
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => Framing::new(
                p.trim().parse::<BigInt>().map_err(|_| bad())?,
                q.trim().parse::<BigInt>().map_err(|_| bad())?,
            ),
            None => Ok(Framing::integral(s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

/// Integer continued fraction `p/q = a₁ − 1/(a₂ − 1/(… − 1/a_k))`.
///
/// For `p/q > 0` every `aᵢ` after the first is at least 2; negative
/// coefficients expand `−p/q` and negate.
pub fn chain_coefficients(framing: &Framing) -> Vec<BigInt> {
    if framing.p.is_negative() {
        return chain_coefficients(&framing.neg()).into_iter().map(|a| -a).collect();
    }
    let (mut p, mut q) = (framing.p.clone(), framing.q.clone());
    let mut out = Vec::new();
    loop {
        let a = p.div_ceil(&q);
        let rem = &a * &q - &p;
        out.push(a);
        if rem.is_zero() {
            return out;
        }
        // 1 / (a − p/q) = q / (a·q − p)
        p = std::mem::replace(&mut q, rem);
    }
}

/// Recombines chain coefficients into the rational `a₁ − 1/(a₂ − …)`.
pub fn evaluate_chain(coeffs: &[BigInt]) -> Option<BigRational> {
    let (last, rest) = coeffs.split_last()?;
    let mut acc = BigRational::from_integer(last.clone());
    for a in rest.iter().rev() {
        if acc.is_zero() {
            return None;
        }
        acc = BigRational::from_integer(a.clone()) - acc.recip();
    }
    Some(acc)
}

/// A framed link in S³ described by framings and linking numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedLink {
    framings: Vec<Framing>,
    lk: IntMatrix,
    braid: Option<BraidWord>,
    longitudes: Option<Vec<FreeWord>>,
}

impl FramedLink {
    /// Validates every invariant; nothing is silently repaired.
    pub fn new(
        framings: Vec<Framing>,
        lk: IntMatrix,
        braid: Option<BraidWord>,
        longitudes: Option<Vec<FreeWord>>,
    ) -> Result<Self, PresentationError> {
        let m = framings.len();
        if lk.rows() != m || lk.cols() != m {
            return Err(PresentationError::LinkingShape { expected: m });
        }
        if !lk.is_symmetric() {
            return Err(PresentationError::LinkingNotSymmetric);
        }
        if let Some(i) = (0..m).find(|&i| !lk[(i, i)].is_zero()) {
            return Err(PresentationError::LinkingDiagonal(i + 1));
        }
        if let Some(b) = &braid {
            if b.strands() != m {
                return Err(PresentationError::BraidStrandCount {
                    strands: b.strands(),
                    components: m,
                });
            }
            let from_braid = b.linking_numbers()?;
            for i in 0..m {
                for j in 0..m {
                    if from_braid[(i, j)] != lk[(i, j)] {
                        return Err(PresentationError::BraidLinkingMismatch(i + 1, j + 1));
                    }
                }
            }
        }
        if let Some(ls) = &longitudes {
            if ls.len() != m {
                return Err(PresentationError::LongitudeCount {
                    expected: m,
                    found: ls.len(),
                });
            }
            for (i, w) in ls.iter().enumerate() {
                if w.max_generator().is_some_and(|g| g >= m) {
                    return Err(PresentationError::LongitudeGenerator(i + 1));
                }
                for j in 0..m {
                    let found = w.exponent_sum(j);
                    if BigInt::from(found) != lk[(i, j)] {
                        return Err(PresentationError::LongitudeExponent {
                            longitude: i + 1,
                            generator: j + 1,
                            found,
                            expected: lk[(i, j)].clone(),
                        });
                    }
                }
            }
        }
        Ok(FramedLink {
            framings,
            lk,
            braid,
            longitudes,
        })
    }

    /// Split link of unknots with integral framings.
    pub fn unlink(framings: &[i64]) -> Self {
        let m = framings.len();
        FramedLink {
            framings: framings.iter().map(|&n| Framing::integral(n)).collect(),
            lk: IntMatrix::zeros(m, m),
            braid: None,
            longitudes: None,
        }
    }

    /// Single unknot with framing `p/q`.
    pub fn unknot(p: i64, q: i64) -> Result<Self, PresentationError> {
        Self::new(vec![Framing::new(p, q)?], IntMatrix::zeros(1, 1), None, None)
    }

    /// Closure of a pure braid with the given framings.
    pub fn from_braid(framings: Vec<Framing>, braid: BraidWord) -> Result<Self, PresentationError> {
        let lk = braid.linking_numbers()?;
        Self::new(framings, lk, Some(braid), None)
    }

    /// Link described by its Seifert longitudes; linking numbers are read
    /// off the exponent sums.
    pub fn from_longitudes(
        framings: Vec<Framing>,
        longitudes: Vec<FreeWord>,
    ) -> Result<Self, PresentationError> {
        let m = framings.len();
        let mut lk = IntMatrix::zeros(m, m);
        for (i, w) in longitudes.iter().enumerate().take(m) {
            for j in 0..m {
                if i != j {
                    lk[(i, j)] = BigInt::from(w.exponent_sum(j));
                }
            }
        }
        Self::new(framings, lk, None, Some(longitudes))
    }

    pub fn components(&self) -> usize {
        self.framings.len()
    }

    pub fn framings(&self) -> &[Framing] {
        &self.framings
    }

    pub fn linking_numbers(&self) -> &IntMatrix {
        &self.lk
    }

    pub fn braid(&self) -> Option<&BraidWord> {
        self.braid.as_ref()
    }

    pub fn longitudes(&self) -> Option<&[FreeWord]> {
        self.longitudes.as_deref()
    }

    pub fn is_integral(&self) -> bool {
        self.framings.iter().all(Framing::is_integral)
    }

    pub fn all_zero_framed(&self) -> bool {
        self.framings.iter().all(|f| f.p.is_zero())
    }

    /// Row `i` is the relation `pᵢ·μᵢ + qᵢ·Σⱼ lk(i,j)·μⱼ = 0`.
    pub fn presentation_matrix(&self) -> IntMatrix {
        let m = self.components();
        let mut a = IntMatrix::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                a[(i, j)] = if i == j {
                    self.framings[i].p.clone()
                } else {
                    &self.framings[i].q * &self.lk[(i, j)]
                };
            }
        }
        a
    }

    /// Symmetric rational matrix with `pᵢ/qᵢ` on the diagonal and linking
    /// numbers off it.
    pub fn rational_linking_matrix(&self) -> RatMatrix {
        let m = self.components();
        let mut a = RatMatrix::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                a[(i, j)] = if i == j {
                    self.framings[i].as_rational()
                } else {
                    BigRational::from_integer(self.lk[(i, j)].clone())
                };
            }
        }
        a
    }

    /// Replaces each non-integral `p/q` component by a chain of
    /// integer-framed unknots (continued-fraction expansion). The original
    /// component keeps its index and linking numbers and becomes the first
    /// chain circle; the remaining chain circles are appended in order, each
    /// linking its predecessor once. Braid and longitude data are dropped
    /// when anything is expanded.
    pub fn expand_to_integral(&self) -> FramedLink {
        if self.is_integral() {
            return self.clone();
        }
        let m = self.components();
        let chains: Vec<Vec<BigInt>> = self.framings.iter().map(chain_coefficients).collect();
        let total = chains.iter().map(Vec::len).sum::<usize>();

        let mut framings: Vec<Framing> = chains.iter().map(|c| Framing::integral(c[0].clone())).collect();
        let mut lk = IntMatrix::zeros(total, total);
        for i in 0..m {
            for j in 0..m {
                lk[(i, j)] = self.lk[(i, j)].clone();
            }
        }
        let mut next = m;
        for (i, chain) in chains.iter().enumerate() {
            let mut prev = i;
            for a in &chain[1..] {
                framings.push(Framing::integral(a.clone()));
                lk[(prev, next)] = BigInt::one();
                lk[(next, prev)] = BigInt::one();
                prev = next;
                next += 1;
            }
        }
        FramedLink {
            framings,
            lk,
            braid: None,
            longitudes: None,
        }
    }

    /// Orientation reverse: framings and linking numbers negate, the braid's
    /// crossings switch and longitude letters invert in place.
    pub fn mirror(&self) -> FramedLink {
        FramedLink {
            framings: self.framings.iter().map(Framing::neg).collect(),
            lk: self.lk.neg(),
            braid: self.braid.as_ref().map(BraidWord::mirror),
            longitudes: self
                .longitudes
                .as_ref()
                .map(|ls| ls.iter().map(FreeWord::mirror).collect()),
        }
    }

    /// Every framing is `±1` and all linking numbers vanish.
    pub fn is_admissible_2surgery(&self) -> bool {
        self.framings
            .iter()
            .all(|f| f.is_integral() && f.p.abs().is_one())
            && self.lk.is_zero()
    }

    /// The presentation matrix is nonsingular over Q.
    pub fn is_admissible_rational_2surgery(&self) -> bool {
        !self
            .presentation_matrix()
            .determinant()
            .expect("square")
            .is_zero()
    }
}
