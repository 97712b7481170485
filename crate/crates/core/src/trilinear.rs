//! Alternating integer trilinear forms on `Zᵐ` and their `GLₘ(Z)` orbits.
//!
//! `g ∈ GLₘ(Z)` acts on the right by `(F·g)(u, v, w) = F(gu, gv, gw)`. An
//! equivalence witness `G` satisfies `f1.apply(G) == f2`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::form_iso::IsoAnswer;
use crate::linalg::{smith_normal_form, unimodular_inverse, IntMatrix};
use crate::milnor::{MilnorData, MilnorError};
use crate::presentation::FramedLink;

/// Default total number of generator moves in the bidirectional search.
pub const DEFAULT_DEPTH: usize = 12;

/// Distinct states stored per search direction before giving up.
const STATE_CAP: usize = 400_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrilinearError {
    #[error("expected vectors of length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("triple ({0}, {1}, {2}) is not strictly increasing within rank {3}")]
    InvalidTriple(usize, usize, usize, usize),
    #[error("framing of component {0} is not 0")]
    NotZeroFramed(usize),
    #[error("linking number of components {0} and {1} is nonzero")]
    LinkingNonzero(usize, usize),
    #[error("link has neither braid nor longitude data")]
    NoLongitudeData,
    #[error(transparent)]
    Milnor(#[from] MilnorError),
}

/// `Σ a_{ijk} eᵢ∧eⱼ∧e_k`, keys zero-based and strictly increasing, values nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TrilinearForm {
    m: usize,
    coeffs: BTreeMap<[usize; 3], BigInt>,
}

fn triples(m: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                out.push([i, j, k]);
            }
        }
    }
    out
}

impl TrilinearForm {
    pub fn zero(m: usize) -> Self {
        TrilinearForm {
            m,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn new<I>(m: usize, coeffs: I) -> Result<Self, TrilinearError>
    where
        I: IntoIterator<Item = ([usize; 3], BigInt)>,
    {
        let mut form = Self::zero(m);
        for ([i, j, k], v) in coeffs {
            if !(i < j && j < k && k < m) {
                return Err(TrilinearError::InvalidTriple(i, j, k, m));
            }
            if !v.is_zero() {
                form.coeffs.insert([i, j, k], v);
            }
        }
        Ok(form)
    }

    /// `c · e_{i}∧e_{j}∧e_{k}` from zero-based indices.
    pub fn monomial(m: usize, triple: [usize; 3], c: impl Into<BigInt>) -> Result<Self, TrilinearError> {
        Self::new(m, [(triple, c.into())])
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn coeffs(&self) -> &BTreeMap<[usize; 3], BigInt> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Alternating extension: `a` of any index triple.
    pub fn coeff(&self, i: usize, j: usize, k: usize) -> BigInt {
        let mut t = [i, j, k];
        if i == j || j == k || i == k {
            return BigInt::zero();
        }
        let mut sign = 1;
        for a in 0..3 {
            for b in 0..2 - a {
                if t[b] > t[b + 1] {
                    t.swap(b, b + 1);
                    sign = -sign;
                }
            }
        }
        match self.coeffs.get(&t) {
            Some(v) if sign > 0 => v.clone(),
            Some(v) => -v,
            None => BigInt::zero(),
        }
    }

    pub fn evaluate(&self, u: &[BigInt], v: &[BigInt], w: &[BigInt]) -> Result<BigInt, TrilinearError> {
        for x in [u, v, w] {
            if x.len() != self.m {
                return Err(TrilinearError::DimensionMismatch {
                    expected: self.m,
                    found: x.len(),
                });
            }
        }
        let mut acc = BigInt::zero();
        for ([i, j, k], a) in &self.coeffs {
            let det = &u[*i] * (&v[*j] * &w[*k] - &v[*k] * &w[*j])
                - &u[*j] * (&v[*i] * &w[*k] - &v[*k] * &w[*i])
                + &u[*k] * (&v[*i] * &w[*j] - &v[*j] * &w[*i]);
            acc += a * det;
        }
        Ok(acc)
    }

    /// `a'_{ijk} = F(g eᵢ, g eⱼ, g e_k)`.
    pub fn apply(&self, g: &IntMatrix) -> Result<TrilinearForm, TrilinearError> {
        if g.rows() != self.m || g.cols() != self.m {
            return Err(TrilinearError::DimensionMismatch {
                expected: self.m,
                found: g.rows().max(g.cols()),
            });
        }
        let cols: Vec<Vec<BigInt>> = (0..self.m).map(|j| g.column(j)).collect();
        let mut out = Self::zero(self.m);
        for t in triples(self.m) {
            let v = self.evaluate(&cols[t[0]], &cols[t[1]], &cols[t[2]])?;
            if !v.is_zero() {
                out.coeffs.insert(t, v);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        TrilinearForm {
            m: self.m,
            coeffs: self.coeffs.iter().map(|(t, v)| (*t, -v)).collect(),
        }
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.values().fold(BigInt::zero(), |g, v| g.gcd(v))
    }

    pub fn max_abs(&self) -> BigInt {
        self.coeffs.values().map(Signed::abs).max().unwrap_or_default()
    }

    /// Row `i` holds `F(eᵢ, eⱼ, e_k)` over pairs `j < k`.
    pub fn contraction_matrix(&self) -> IntMatrix {
        let pairs: Vec<(usize, usize)> = (0..self.m)
            .flat_map(|j| (j + 1..self.m).map(move |k| (j, k)))
            .collect();
        let mut c = IntMatrix::zeros(self.m, pairs.len());
        for i in 0..self.m {
            for (col, &(j, k)) in pairs.iter().enumerate() {
                c[(i, col)] = self.coeff(i, j, k);
            }
        }
        c
    }

    pub fn orbit_invariants(&self) -> OrbitInvariants {
        let snf = smith_normal_form(&self.contraction_matrix());
        OrbitInvariants {
            m: self.m,
            content: self.content(),
            contraction_factors: snf.diagonal().into_iter().filter(|d| !d.is_zero()).collect(),
        }
    }

    /// `a_{ijk} = μ̄(ijk)` of a 0-framed link with vanishing linking numbers.
    pub fn from_mu_triple(link: &FramedLink) -> Result<Self, TrilinearError> {
        let m = link.components();
        for (i, f) in link.framings().iter().enumerate() {
            if !f.p().is_zero() || !f.q().is_one() {
                return Err(TrilinearError::NotZeroFramed(i + 1));
            }
        }
        let lk = link.linking_numbers();
        for i in 0..m {
            for j in i + 1..m {
                if !lk[(i, j)].is_zero() {
                    return Err(TrilinearError::LinkingNonzero(i + 1, j + 1));
                }
            }
        }
        if m < 3 {
            return Ok(Self::zero(m));
        }
        let mut data = MilnorData::new(link, 3).map_err(|e| match e {
            MilnorError::NoLongitudeData => TrilinearError::NoLongitudeData,
            other => TrilinearError::Milnor(other),
        })?;
        let mut coeffs = Vec::new();
        for t in triples(m) {
            let mu = data.mu_bar(&[t[0] + 1, t[1] + 1, t[2] + 1])?;
            coeffs.push((t, mu.value));
        }
        Self::new(m, coeffs)
    }

    fn key(&self, order: &[[usize; 3]]) -> Option<Vec<i64>> {
        order
            .iter()
            .map(|t| self.coeffs.get(t).map_or(Some(0), ToPrimitive::to_i64))
            .collect()
    }

    fn from_key(m: usize, order: &[[usize; 3]], key: &[i64]) -> Self {
        let coeffs = order
            .iter()
            .zip(key)
            .filter(|(_, v)| **v != 0)
            .map(|(t, v)| (*t, BigInt::from(*v)))
            .collect();
        TrilinearForm { m, coeffs }
    }
}

impl fmt::Display for TrilinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|([i, j, k], v)| format!("{v}*e{}^e{}^e{}", i + 1, j + 1, k + 1))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// `GLₘ(Z)`-invariants: rank, content and the nonzero invariant factors of
/// the contraction matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrbitInvariants {
    pub m: usize,
    pub content: BigInt,
    pub contraction_factors: Vec<BigInt>,
}

/// A generator of `GLₘ(Z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// `e_col ↦ e_col + t·e_row`.
    Transvection { row: usize, col: usize, t: i64 },
    Swap(usize, usize),
    Flip(usize),
}

impl Move {
    pub fn matrix(self, m: usize) -> IntMatrix {
        let mut g = IntMatrix::identity(m);
        match self {
            Move::Transvection { row, col, t } => g[(row, col)] = BigInt::from(t),
            Move::Swap(a, b) => {
                g[(a, a)] = BigInt::zero();
                g[(b, b)] = BigInt::zero();
                g[(a, b)] = BigInt::one();
                g[(b, a)] = BigInt::one();
            }
            Move::Flip(a) => g[(a, a)] = BigInt::from(-1),
        }
        g
    }

    pub fn inverse(self) -> Move {
        match self {
            Move::Transvection { row, col, t } => Move::Transvection { row, col, t: -t },
            other => other,
        }
    }

    /// Unit moves used by the search.
    pub fn generators(m: usize) -> Vec<Move> {
        let mut out = Vec::new();
        for row in 0..m {
            for col in 0..m {
                if row != col {
                    out.push(Move::Transvection { row, col, t: 1 });
                    out.push(Move::Transvection { row, col, t: -1 });
                }
            }
        }
        for a in 0..m {
            for b in a + 1..m {
                out.push(Move::Swap(a, b));
            }
        }
        out.extend((0..m).map(Move::Flip));
        out
    }
}

fn product(m: usize, moves: impl IntoIterator<Item = Move>) -> IntMatrix {
    moves
        .into_iter()
        .fold(IntMatrix::identity(m), |acc, mv| &acc * &mv.matrix(m))
}

fn checked(f1: &TrilinearForm, f2: &TrilinearForm, g: IntMatrix) -> IsoAnswer {
    match f1.apply(&g) {
        Ok(h) if h == *f2 && g.is_unimodular() => IsoAnswer::yes(g),
        _ => IsoAnswer::unknown("constructed witness failed verification"),
    }
}

/// Reduces a rank-4 form to `c·e₁∧e₂∧e₃` with `c ≥ 0`, returning `(G, c)`
/// with `f.apply(G) = c·e₁∧e₂∧e₃`.
pub fn reduce_rank4(f: &TrilinearForm) -> (IntMatrix, BigInt) {
    assert_eq!(f.m, 4);
    // Index x stands for the complementary triple; the transvection moving
    // e_x by e_y changes only the coordinate at y, by ± that at x.
    let comp = |x: usize| -> [usize; 3] {
        let v: Vec<usize> = (0..4).filter(|&i| i != x).collect();
        [v[0], v[1], v[2]]
    };
    let b = |g: &TrilinearForm, x: usize| {
        let t = comp(x);
        g.coeff(t[0], t[1], t[2])
    };
    let mut cur = f.clone();
    let mut g = IntMatrix::identity(4);
    let step = |cur: &mut TrilinearForm, g: &mut IntMatrix, mv: IntMatrix| {
        *cur = cur.apply(&mv).expect("rank 4");
        *g = &*g * &mv;
    };
    loop {
        let nonzero: Vec<usize> = (0..4).filter(|&x| !b(&cur, x).is_zero()).collect();
        if nonzero.len() <= 1 {
            break;
        }
        let x = *nonzero
            .iter()
            .min_by_key(|&&x| b(&cur, x).abs())
            .expect("nonempty");
        for &y in &nonzero {
            if y == x {
                continue;
            }
            let unit = Move::Transvection { row: y, col: x, t: 1 }.matrix(4);
            let delta = b(&cur.apply(&unit).expect("rank 4"), y) - b(&cur, y);
            let t = -b(&cur, y).div_floor(&delta);
            let t = t.to_i64().expect("quotient fits");
            step(&mut cur, &mut g, Move::Transvection { row: y, col: x, t }.matrix(4));
        }
    }
    if let Some(x) = (0..4).find(|&x| !b(&cur, x).is_zero()) {
        if x != 3 {
            step(&mut cur, &mut g, Move::Swap(x, 3).matrix(4));
        }
        if cur.coeff(0, 1, 2).is_negative() {
            step(&mut cur, &mut g, Move::Flip(0).matrix(4));
        }
    }
    let c = cur.coeff(0, 1, 2);
    debug_assert_eq!(cur, TrilinearForm::monomial(4, [0, 1, 2], c.clone()).unwrap());
    (g, c)
}

/// Decides `GLₘ(Z)`-equivalence where it is classified (`m ≤ 4`); for
/// `m ≥ 5` compares invariants, then searches.
pub fn equivalent(f1: &TrilinearForm, f2: &TrilinearForm, depth: usize) -> IsoAnswer {
    if f1.m != f2.m {
        return IsoAnswer::no(format!("ranks differ: {} vs {}", f1.m, f2.m));
    }
    let m = f1.m;
    match m {
        0..=2 => IsoAnswer::yes(IntMatrix::identity(m)),
        3 => {
            let (a, b) = (f1.coeff(0, 1, 2), f2.coeff(0, 1, 2));
            if a == b {
                IsoAnswer::yes(IntMatrix::identity(3))
            } else if a == -&b {
                checked(f1, f2, Move::Flip(0).matrix(3))
            } else {
                IsoAnswer::no(format!("|a123| differ: {} vs {}", a.abs(), b.abs()))
            }
        }
        4 => {
            let (c1, c2) = (f1.content(), f2.content());
            if c1 != c2 {
                return IsoAnswer::no(format!("contents differ: {c1} vs {c2}"));
            }
            let (g1, _) = reduce_rank4(f1);
            let (g2, _) = reduce_rank4(f2);
            let g2_inv = unimodular_inverse(&g2).expect("product of generators");
            checked(f1, f2, &g1 * &g2_inv)
        }
        _ => {
            let (i1, i2) = (f1.orbit_invariants(), f2.orbit_invariants());
            if i1 != i2 {
                return IsoAnswer::no(format!(
                    "orbit invariants differ: content {} vs {}, contraction factors {:?} vs {:?}",
                    i1.content, i2.content, i1.contraction_factors, i2.contraction_factors
                ));
            }
            search_equivalence(f1, f2, depth)
        }
    }
}

struct Side {
    parents: HashMap<Vec<i64>, Option<(Vec<i64>, Move)>>,
    frontier: VecDeque<Vec<i64>>,
    depth: usize,
}

impl Side {
    fn new(start: Vec<i64>) -> Self {
        let mut parents = HashMap::new();
        parents.insert(start.clone(), None);
        Side {
            parents,
            frontier: VecDeque::from([start]),
            depth: 0,
        }
    }

    /// Moves taking the start state to `state`, in application order.
    fn path(&self, state: &[i64]) -> Vec<Move> {
        let mut moves = Vec::new();
        let mut cur = state.to_vec();
        while let Some(Some((parent, mv))) = self.parents.get(&cur) {
            moves.push(*mv);
            cur = parent.clone();
        }
        moves.reverse();
        moves
    }
}

/// Bidirectional breadth-first search over unit generator moves, with at
/// most `depth` moves in total and coefficients bounded by the larger of
/// the two inputs' maxima.
pub fn search_equivalence(f1: &TrilinearForm, f2: &TrilinearForm, depth: usize) -> IsoAnswer {
    if f1.m != f2.m {
        return IsoAnswer::no(format!("ranks differ: {} vs {}", f1.m, f2.m));
    }
    let m = f1.m;
    if f1 == f2 {
        return IsoAnswer::yes(IntMatrix::identity(m));
    }
    let order = triples(m);
    let (Some(k1), Some(k2)) = (f1.key(&order), f2.key(&order)) else {
        return IsoAnswer::unknown("coefficients exceed machine range");
    };
    let bound = k1.iter().chain(&k2).map(|v| v.abs()).max().unwrap_or(0).max(1);
    let moves = Move::generators(m);
    let mut sides = [Side::new(k1), Side::new(k2)];
    let mut used = 0;
    while used < depth {
        let s = if sides[0].frontier.len() <= sides[1].frontier.len() { 0 } else { 1 };
        if sides[s].frontier.is_empty() {
            break;
        }
        let layer: Vec<Vec<i64>> = sides[s].frontier.drain(..).collect();
        sides[s].depth += 1;
        used += 1;
        for state in layer {
            let form = TrilinearForm::from_key(m, &order, &state);
            for &mv in &moves {
                let next = form.apply(&mv.matrix(m)).expect("square move");
                let Some(key) = next.key(&order) else { continue };
                if key.iter().any(|v| v.abs() > bound) || sides[s].parents.contains_key(&key) {
                    continue;
                }
                sides[s].parents.insert(key.clone(), Some((state.clone(), mv)));
                if sides[1 - s].parents.contains_key(&key) {
                    let forward = sides[0].path(&key);
                    let backward = sides[1].path(&key);
                    let g = product(m, forward.into_iter().chain(backward.into_iter().rev().map(Move::inverse)));
                    return checked(f1, f2, g);
                }
                if sides[s].parents.len() > STATE_CAP {
                    return IsoAnswer::unknown(format!("search exceeded {STATE_CAP} states"));
                }
                sides[s].frontier.push_back(key);
            }
        }
    }
    IsoAnswer::unknown(format!("no connection within {depth} moves"))
}
