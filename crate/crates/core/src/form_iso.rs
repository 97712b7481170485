//! Isomorphism of linking forms on finite abelian groups.
//!
//! A witness is an integer matrix `P` whose column `j` is the image of the
//! `j`-th generator of the second form's group, written in the first form's
//! generators; it satisfies `Pᵀ Λ₁ P ≡ Λ₂ (mod 1)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::homology::{first_homology, LinkingForm};
use crate::linalg::IntMatrix;
use crate::numtheory::{factor, inv_mod, is_square_unit, sqrt_mod};

/// Default cap on the order of a non-cyclic primary block searched exhaustively.
pub const DEFAULT_BOUND: u64 = 10_000;

/// Nodes visited by one exhaustive search before it gives up with Unknown.
const NODE_BUDGET: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IsoStatus {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for IsoStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IsoStatus::Yes => "Yes",
            IsoStatus::No => "No",
            IsoStatus::Unknown => "Unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoAnswer {
    pub status: IsoStatus,
    pub witness: Option<IntMatrix>,
    pub reason: Option<String>,
}

impl IsoAnswer {
    pub fn yes(witness: IntMatrix) -> Self {
        IsoAnswer {
            status: IsoStatus::Yes,
            witness: Some(witness),
            reason: None,
        }
    }

    pub fn no(reason: impl Into<String>) -> Self {
        IsoAnswer {
            status: IsoStatus::No,
            witness: None,
            reason: Some(reason.into()),
        }
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        IsoAnswer {
            status: IsoStatus::Unknown,
            witness: None,
            reason: Some(reason.into()),
        }
    }

    pub fn is_yes(&self) -> bool {
        self.status == IsoStatus::Yes
    }

    pub fn is_no(&self) -> bool {
        self.status == IsoStatus::No
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("linking form is not on a cyclic group (rank {rank})")]
    NotCyclic { rank: usize },
    #[error("cyclic form {a}/{n} is degenerate")]
    Degenerate { a: BigInt, n: BigInt },
}

/// The residue `a` with `λ(g, g) = a/n` on a cyclic group `Z_n`.
pub fn cyclic_class(form: &LinkingForm) -> Result<BigInt, IsoError> {
    if !form.is_cyclic() {
        return Err(IsoError::NotCyclic { rank: form.rank() });
    }
    let n = form.orders()[0].clone();
    let a = (form.value(0, 0) * BigRational::from_integer(n.clone())).to_integer();
    if !a.gcd(&n).is_one() {
        return Err(IsoError::Degenerate { a, n });
    }
    Ok(a)
}

/// Checks that `p` defines a well-defined bijection `G₂ → G₁` carrying `f1`
/// to `f2`.
pub fn verify_witness(f1: &LinkingForm, f2: &LinkingForm, p: &IntMatrix) -> bool {
    let (r1, r2) = (f1.rank(), f2.rank());
    if p.rows() != r1 || p.cols() != r2 || f1.order() != f2.order() {
        return false;
    }
    for j in 0..r2 {
        for a in 0..r1 {
            if !(&p[(a, j)] * &f2.orders()[j]).is_multiple_of(&f1.orders()[a]) {
                return false;
            }
        }
    }
    if f1.pull_back(p) != f2.values() {
        return false;
    }
    // Surjective onto G₁; with equal orders that is bijective.
    let mut rel = IntMatrix::zeros(r1, r2 + r1);
    for a in 0..r1 {
        for j in 0..r2 {
            rel[(a, j)] = p[(a, j)].clone();
        }
        rel[(a, r2 + a)] = f1.orders()[a].clone();
    }
    first_homology(&rel).is_trivial()
}

/// A form with machine-word orders; `λ(eᵢ, eⱼ) = mat[i][j] / modulus`.
#[derive(Clone, Debug)]
struct SmallForm {
    orders: Vec<u64>,
    modulus: u64,
    mat: Vec<Vec<u64>>,
}

impl SmallForm {
    fn new(orders: Vec<u64>, modulus: u64, value: impl Fn(usize, usize) -> BigRational) -> Self {
        let r = orders.len();
        let m = BigRational::from_integer(BigInt::from(modulus));
        let mat = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let v = crate::homology::frac(&value(i, j)) * &m;
                        v.to_integer().to_u64().expect("value below modulus")
                    })
                    .collect()
            })
            .collect();
        SmallForm { orders, modulus, mat }
    }

    fn order(&self) -> Option<u64> {
        self.orders.iter().try_fold(1u64, |acc, &o| acc.checked_mul(o))
    }

    /// Elements `x` with `k·x = 0`, lexicographic in coordinates.
    fn killed_by(&self, k: u64) -> Vec<Vec<u64>> {
        let steps: Vec<(u64, u64)> = self
            .orders
            .iter()
            .map(|&o| (o / num_integer::gcd(o, k), o))
            .collect();
        let mut out = Vec::new();
        let mut cur = vec![0u64; steps.len()];
        loop {
            out.push(cur.clone());
            let mut i = steps.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                cur[i] += steps[i].0;
                if cur[i] < steps[i].1 {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    /// `Λ x` reduced mod `modulus`.
    fn image(&self, x: &[u64]) -> Vec<u64> {
        let n = u128::from(self.modulus);
        (0..self.orders.len())
            .map(|a| {
                let s: u128 = x
                    .iter()
                    .zip(&self.mat)
                    .map(|(&xb, row)| u128::from(xb) * u128::from(row[a]) % n)
                    .sum();
                (s % n) as u64
            })
            .collect()
    }
}

fn pair(x: &[u64], lam_y: &[u64], modulus: u64) -> u64 {
    let n = u128::from(modulus);
    let s: u128 = x
        .iter()
        .zip(lam_y)
        .map(|(&a, &b)| u128::from(a) * u128::from(b) % n)
        .sum();
    (s % n) as u64
}

/// Candidate images of one order, with their images under the form.
type Candidates = (Vec<Vec<u64>>, Vec<Vec<u64>>);

enum Search {
    Found(Vec<Vec<u64>>),
    Exhausted,
    OutOfBudget,
}

/// Lexicographic backtracking over generator images. Both forms must share
/// `modulus`.
fn search(f1: &SmallForm, f2: &SmallForm) -> Search {
    debug_assert_eq!(f1.modulus, f2.modulus);
    let mut by_order: BTreeMap<u64, Candidates> = BTreeMap::new();
    for &o in &f2.orders {
        by_order.entry(o).or_insert_with(|| {
            let xs = f1.killed_by(o);
            let ims = xs.iter().map(|x| f1.image(x)).collect();
            (xs, ims)
        });
    }
    let levels: Vec<&Candidates> = f2.orders.iter().map(|o| &by_order[o]).collect();
    let s = f2.orders.len();
    let mut chosen: Vec<usize> = Vec::with_capacity(s);
    let mut next = vec![0usize; s + 1];
    let mut budget = NODE_BUDGET;
    loop {
        let depth = chosen.len();
        if depth == s {
            let cols: Vec<Vec<u64>> = (0..s).map(|j| levels[j].0[chosen[j]].clone()).collect();
            if generates(f1, &cols) {
                return Search::Found(cols);
            }
            match chosen.pop() {
                Some(_) => continue,
                None => return Search::Exhausted,
            }
        }
        let (xs, ims) = levels[depth];
        let mut advanced = false;
        while next[depth] < xs.len() {
            let c = next[depth];
            next[depth] += 1;
            if budget == 0 {
                return Search::OutOfBudget;
            }
            budget -= 1;
            let ok = (0..=depth).all(|k| {
                let y = if k == depth { &xs[c] } else { &levels[k].0[chosen[k]] };
                pair(y, &ims[c], f1.modulus) == f2.mat[k][depth]
            });
            if ok {
                chosen.push(c);
                next[depth + 1] = 0;
                advanced = true;
                break;
            }
        }
        if !advanced && chosen.pop().is_none() {
            return Search::Exhausted;
        }
    }
}

fn generates(f: &SmallForm, cols: &[Vec<u64>]) -> bool {
    let r = f.orders.len();
    let s = cols.len();
    let mut rel = IntMatrix::zeros(r, s + r);
    for a in 0..r {
        for (j, c) in cols.iter().enumerate() {
            rel[(a, j)] = BigInt::from(c[a]);
        }
        rel[(a, s + a)] = BigInt::from(f.orders[a]);
    }
    first_homology(&rel).is_trivial()
}

fn small_orders(form: &LinkingForm) -> Option<Vec<u64>> {
    form.orders().iter().map(ToPrimitive::to_u64).collect()
}

fn lcm_all(orders: impl IntoIterator<Item = u64>) -> u64 {
    orders.into_iter().fold(1, |acc, o| acc.lcm(&o))
}

/// Sorted prime-power decomposition of `⊕ Z_{orders}`.
fn elementary_divisors(orders: &[u64]) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = orders.iter().flat_map(|&o| factor(o)).collect();
    out.sort_unstable();
    out
}

/// Exhaustive lexicographic search for an isomorphism, with no primary
/// decomposition. Groups larger than `bound` are Unknown.
pub fn enumerate_isomorphism(f1: &LinkingForm, f2: &LinkingForm, bound: u64) -> IsoAnswer {
    let (Some(o1), Some(o2)) = (small_orders(f1), small_orders(f2)) else {
        return IsoAnswer::unknown("group order exceeds machine range");
    };
    if elementary_divisors(&o1) != elementary_divisors(&o2) {
        return IsoAnswer::no("groups are not isomorphic");
    }
    let modulus = lcm_all(o1.iter().chain(&o2).copied());
    let s1 = SmallForm::new(o1, modulus, |i, j| f1.value(i, j).clone());
    let s2 = SmallForm::new(o2, modulus, |i, j| f2.value(i, j).clone());
    match s1.order() {
        Some(n) if n <= bound => {}
        _ => return IsoAnswer::unknown(format!("group order exceeds bound {bound}")),
    }
    match search(&s1, &s2) {
        Search::Found(cols) => {
            let p = columns_to_matrix(s1.orders.len(), &cols);
            IsoAnswer::yes(p)
        }
        Search::Exhausted => IsoAnswer::no("no group isomorphism preserves the form"),
        Search::OutOfBudget => IsoAnswer::unknown("search budget exhausted"),
    }
}

fn columns_to_matrix(rows: usize, cols: &[Vec<u64>]) -> IntMatrix {
    let mut p = IntMatrix::zeros(rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (a, v) in c.iter().enumerate() {
            p[(a, j)] = BigInt::from(*v);
        }
    }
    p
}

/// The `p`-primary part of a form: generators `hₐ = rₐ gₐ` where `rₐ` is the
/// prime-to-`p` cofactor of `dₐ`.
struct Block {
    gens: Vec<usize>,
    cofactors: Vec<u64>,
    form: SmallForm,
}

fn primary_block(form: &LinkingForm, orders: &[u64], p: u64) -> Block {
    let mut gens = Vec::new();
    let mut cofactors = Vec::new();
    let mut block_orders = Vec::new();
    for (i, &d) in orders.iter().enumerate() {
        let mut pe = 1u64;
        while d % (pe * p) == 0 {
            pe *= p;
        }
        if pe > 1 {
            gens.push(i);
            cofactors.push(d / pe);
            block_orders.push(pe);
        }
    }
    let modulus = lcm_all(block_orders.iter().copied());
    let small = SmallForm::new(block_orders, modulus, |a, b| {
        let r = BigInt::from(cofactors[a]) * BigInt::from(cofactors[b]);
        form.value(gens[a], gens[b]) * BigRational::from_integer(r)
    });
    Block {
        gens,
        cofactors,
        form: small,
    }
}

fn unit_square_witness(a1: u64, a2: u64, n: u64) -> Option<Result<u64, u64>> {
    let inv = inv_mod(a1, n)?;
    if num_integer::gcd(a2, n) != 1 {
        return None;
    }
    let u = crate::numtheory::mul_mod(a2, inv, n);
    Some(if is_square_unit(u, n) {
        Ok(sqrt_mod(u, n).expect("square unit has a root"))
    } else {
        Err(u)
    })
}

/// Decides `f1 ≅ f2`. Cyclic blocks use the unit-square test; non-cyclic
/// primary blocks of order at most `bound` are searched exhaustively.
pub fn isomorphic(f1: &LinkingForm, f2: &LinkingForm, bound: u64) -> IsoAnswer {
    if f1 == f2 {
        return IsoAnswer::yes(IntMatrix::identity(f1.rank()));
    }
    let (Some(o1), Some(o2)) = (small_orders(f1), small_orders(f2)) else {
        return IsoAnswer::unknown("group order exceeds machine range");
    };
    let cyclic_same_order = o1.len() == 1 && o2.len() == 1 && o1[0] == o2[0];
    if cyclic_same_order {
        let n = o1[0];
        let a1 = f1.value(0, 0) * BigRational::from_integer(BigInt::from(n));
        let a2 = f2.value(0, 0) * BigRational::from_integer(BigInt::from(n));
        let (a1, a2) = (a1.to_integer().to_u64(), a2.to_integer().to_u64());
        if let (Some(a1), Some(a2)) = (a1, a2) {
            match unit_square_witness(a1, a2, n) {
                Some(Ok(k)) => {
                    // g ↦ k·g is bijective iff k is a unit, and carries a₁ to k²a₁.
                    let ok = num_integer::gcd(k, n) == 1
                        && crate::numtheory::mul_mod(crate::numtheory::mul_mod(k, k, n), a1, n) == a2 % n;
                    let p = IntMatrix::from_rows(&[vec![BigInt::from(k)]]);
                    return if ok {
                        IsoAnswer::yes(p)
                    } else {
                        IsoAnswer::unknown("constructed witness failed verification")
                    };
                }
                Some(Err(u)) => {
                    return IsoAnswer::no(format!(
                        "classes {a1} and {a2} mod {n} differ: ratio {u} is not a square unit"
                    ));
                }
                None => {}
            }
        }
    }
    let e1 = elementary_divisors(&o1);
    let e2 = elementary_divisors(&o2);
    if e1 != e2 {
        return IsoAnswer::no(format!(
            "torsion groups differ: orders {:?} vs {:?}",
            o1, o2
        ));
    }
    let mut primes: Vec<u64> = e1.iter().map(|&(p, _)| p).collect();
    primes.dedup();

    let mut p_mat = IntMatrix::zeros(o1.len(), o2.len());
    for &p in &primes {
        let b1 = primary_block(f1, &o1, p);
        let b2 = primary_block(f2, &o2, p);
        let block_witness: Vec<Vec<u64>> = if b1.gens.len() == 1 && b2.gens.len() == 1 {
            let n = b1.form.orders[0];
            match unit_square_witness(b1.form.mat[0][0], b2.form.mat[0][0], n) {
                Some(Ok(k)) => vec![vec![k]],
                Some(Err(u)) => {
                    return IsoAnswer::no(format!(
                        "{p}-primary parts differ: ratio {u} is not a square unit mod {n}"
                    ));
                }
                None => match block_search(&b1, &b2, p, bound) {
                    Ok(cols) => cols,
                    Err(ans) => return ans,
                },
            }
        } else {
            match block_search(&b1, &b2, p, bound) {
                Ok(cols) => cols,
                Err(ans) => return ans,
            }
        };
        // g₂ⱼ = Σ_p (r_{p,j}⁻¹ mod p^e)·h₂_{p,j}, and h₂ ↦ Σₐ B[a][j]·r₁ₐ g₁ₐ.
        for (jj, &j) in b2.gens.iter().enumerate() {
            let pe = b2.form.orders[jj];
            let inv = inv_mod(b2.cofactors[jj] % pe, pe).expect("cofactor prime to p");
            for (aa, &a) in b1.gens.iter().enumerate() {
                let term = BigInt::from(inv)
                    * BigInt::from(block_witness[jj][aa])
                    * BigInt::from(b1.cofactors[aa]);
                p_mat[(a, j)] += term;
            }
        }
    }
    for a in 0..o1.len() {
        for j in 0..o2.len() {
            let v = p_mat[(a, j)].mod_floor(&BigInt::from(o1[a]));
            p_mat[(a, j)] = v;
        }
    }
    checked(f1, f2, p_mat)
}

fn block_search(b1: &Block, b2: &Block, p: u64, bound: u64) -> Result<Vec<Vec<u64>>, IsoAnswer> {
    match b1.form.order() {
        Some(n) if n <= bound => {}
        _ => {
            return Err(IsoAnswer::unknown(format!(
                "{p}-primary part exceeds enumeration bound {bound}"
            )))
        }
    }
    match search(&b1.form, &b2.form) {
        Search::Found(cols) => Ok(cols),
        Search::Exhausted => Err(IsoAnswer::no(format!(
            "{p}-primary parts are not isomorphic (exhaustive search)"
        ))),
        Search::OutOfBudget => Err(IsoAnswer::unknown(format!(
            "search budget exhausted on the {p}-primary part"
        ))),
    }
}

fn checked(f1: &LinkingForm, f2: &LinkingForm, p: IntMatrix) -> IsoAnswer {
    if verify_witness(f1, f2, &p) {
        IsoAnswer::yes(p)
    } else {
        IsoAnswer::unknown("constructed witness failed verification")
    }
}

/// Number of isomorphism classes among the cyclic forms `a/n`, `a` a unit.
pub fn cyclic_class_count(n: u64) -> usize {
    let units: Vec<u64> = (1..n.max(2)).filter(|&a| num_integer::gcd(a, n) == 1).collect();
    let mut reps: Vec<u64> = Vec::new();
    for &a in &units {
        let fresh = reps.iter().all(|&r| {
            let inv = inv_mod(r, n).expect("unit");
            !is_square_unit(crate::numtheory::mul_mod(a, inv, n), n)
        });
        if fresh {
            reps.push(a);
        }
    }
    reps.len()
}

/// Order-`n` cyclic form with `λ(g,g) = a/n`, for tests and fixtures.
pub fn cyclic_form(n: u64, a: u64) -> LinkingForm {
    LinkingForm::cyclic(BigInt::from(n), BigInt::from(a)).expect("valid cyclic form")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::linking_form;
    use crate::presentation::FramedLink;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn lens_form(n: i64, q: i64) -> LinkingForm {
        let link = FramedLink::unknot(n, q).unwrap().expand_to_integral();
        linking_form(&link.presentation_matrix()).unwrap()
    }

    fn block_sum(parts: &[(u64, u64)]) -> LinkingForm {
        let orders: Vec<BigInt> = parts.iter().map(|&(n, _)| BigInt::from(n)).collect();
        let r = parts.len();
        let mut values = vec![vec![BigRational::zero(); r]; r];
        for (i, &(n, a)) in parts.iter().enumerate() {
            values[i][i] = BigRational::new(BigInt::from(a), BigInt::from(n));
        }
        LinkingForm::new(orders, values).unwrap()
    }

    #[test]
    fn cyclic_classes() {
        assert_eq!(cyclic_class(&cyclic_form(9, 1)).unwrap(), BigInt::from(1));
        assert_eq!(cyclic_class(&lens_form(5, 2)).unwrap(), BigInt::from(2));
        assert_eq!(cyclic_class(&lens_form(7, 4)).unwrap(), BigInt::from(4));
        assert!(isomorphic(&lens_form(7, 4), &cyclic_form(7, 1), DEFAULT_BOUND).is_yes());
        // 1/6 splits as 1/2 ⊕ 2/3, and 2 is not a square mod 3.
        assert!(isomorphic(&cyclic_form(6, 1), &block_sum(&[(2, 1), (3, 1)]), DEFAULT_BOUND).is_no());
        assert!(matches!(
            cyclic_class(&cyclic_form(6, 2)),
            Err(IsoError::Degenerate { .. })
        ));
        assert!(matches!(
            cyclic_class(&block_sum(&[(2, 1), (2, 1)])),
            Err(IsoError::NotCyclic { rank: 2 })
        ));
    }

    #[test]
    fn identity_witness() {
        let f = block_sum(&[(3, 1), (9, 2)]);
        let ans = isomorphic(&f, &f, DEFAULT_BOUND);
        assert_eq!(ans.witness, Some(IntMatrix::identity(2)));
    }

    #[test]
    fn z5_and_z7() {
        assert!(isomorphic(&cyclic_form(5, 1), &cyclic_form(5, 2), DEFAULT_BOUND).is_no());
        let ans = isomorphic(&cyclic_form(7, 1), &cyclic_form(7, 2), DEFAULT_BOUND);
        assert!(ans.is_yes());
        let k = ans.witness.unwrap()[(0, 0)].to_u64().unwrap();
        assert_eq!(k * k % 7, 2);
    }

    #[test]
    fn different_groups() {
        let ans = isomorphic(&cyclic_form(4, 1), &block_sum(&[(2, 1), (2, 1)]), DEFAULT_BOUND);
        assert!(ans.is_no());
        assert!(isomorphic(&cyclic_form(6, 1), &block_sum(&[(2, 1), (3, 2)]), DEFAULT_BOUND).is_yes());
    }

    #[test]
    fn prime_fields_have_two_classes() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            assert_eq!(cyclic_class_count(p), 2, "p={p}");
        }
        assert_eq!(cyclic_class_count(2), 1);
    }

    #[test]
    fn fast_path_matches_enumeration_small() {
        for n in 2..=40u64 {
            for a in (1..n).filter(|&a| num_integer::gcd(a, n) == 1) {
                for b in (1..n).filter(|&b| num_integer::gcd(b, n) == 1) {
                    let fast = isomorphic(&cyclic_form(n, a), &cyclic_form(n, b), DEFAULT_BOUND);
                    let slow = enumerate_isomorphism(&cyclic_form(n, a), &cyclic_form(n, b), DEFAULT_BOUND);
                    assert_eq!(fast.status, slow.status, "n={n} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn hyperbolic_vs_diagonal_on_z2_squared() {
        // The hyperbolic form on Z₂² and 1/2 ⊕ 1/2 are not isomorphic; 1/2 ⊕ 1/2
        // and 1/2 ⊕ 1/2 with a different basis are.
        let half = BigRational::new(1.into(), 2.into());
        let hyp = LinkingForm::new(
            vec![2.into(), 2.into()],
            vec![vec![BigRational::zero(), half.clone()], vec![half.clone(), BigRational::zero()]],
        )
        .unwrap();
        let diag = block_sum(&[(2, 1), (2, 1)]);
        assert!(isomorphic(&hyp, &diag, DEFAULT_BOUND).is_no());
        let mixed = LinkingForm::new(
            vec![2.into(), 2.into()],
            vec![vec![half.clone(), BigRational::zero()], vec![BigRational::zero(), half.clone()]],
        )
        .unwrap();
        assert!(isomorphic(&diag, &mixed, DEFAULT_BOUND).is_yes());
    }

    #[test]
    fn non_cyclic_odd_block() {
        // 1/3 ⊕ 1/3 ≅ 2/3 ⊕ 2/3 (−1 is a sum of two squares mod 3), but not 1/3 ⊕ 2/3.
        let a = block_sum(&[(3, 1), (3, 1)]);
        let b = block_sum(&[(3, 2), (3, 2)]);
        let c = block_sum(&[(3, 1), (3, 2)]);
        assert!(isomorphic(&a, &b, DEFAULT_BOUND).is_yes());
        assert!(isomorphic(&a, &c, DEFAULT_BOUND).is_no());
        assert!(enumerate_isomorphism(&a, &c, DEFAULT_BOUND).is_no());
    }

    #[test]
    fn bound_is_respected() {
        let a = block_sum(&[(3, 1), (3, 1)]);
        let b = block_sum(&[(3, 2), (3, 2)]);
        assert_eq!(isomorphic(&a, &b, 8).status, IsoStatus::Unknown);
    }

    fn unit_below(n: u64) -> impl Strategy<Value = u64> {
        (1..n).prop_filter("unit", move |&a| num_integer::gcd(a, n) == 1)
    }

    fn small_cyclic() -> impl Strategy<Value = (u64, u64)> {
        prop_oneof![Just(2u64), Just(3), Just(4), Just(5), Just(8), Just(9)]
            .prop_flat_map(|n| (Just(n), unit_below(n)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn witnesses_are_sound(
            a in proptest::collection::vec(small_cyclic(), 1..=3),
            b_units in proptest::collection::vec(1u64..100, 3),
        ) {
            let f1 = block_sum(&a);
            let b: Vec<(u64, u64)> = a
                .iter()
                .zip(&b_units)
                .map(|(&(n, _), &u)| {
                    let unit = (0..n).map(|k| (u + k) % n).find(|&x| num_integer::gcd(x, n) == 1).unwrap();
                    (n, unit)
                })
                .collect();
            let f2 = block_sum(&b);
            let fast = isomorphic(&f1, &f2, DEFAULT_BOUND);
            let slow = enumerate_isomorphism(&f1, &f2, DEFAULT_BOUND);
            prop_assert_eq!(fast.status, slow.status);
            if let Some(w) = &fast.witness {
                prop_assert!(verify_witness(&f1, &f2, w));
            }
            if let Some(w) = &slow.witness {
                prop_assert!(verify_witness(&f1, &f2, w));
            }
        }

        #[test]
        fn primary_blocks_decide(
            a3 in unit_below(9), b3 in unit_below(9),
            a2 in unit_below(4), b2 in unit_below(4),
            a5 in unit_below(5), b5 in unit_below(5),
        ) {
            let f1 = block_sum(&[(9, a3), (4, a2), (5, a5)]);
            let f2 = block_sum(&[(4, b2), (5, b5), (9, b3)]);
            let blockwise = isomorphic(&cyclic_form(9, a3), &cyclic_form(9, b3), DEFAULT_BOUND).is_yes()
                && isomorphic(&cyclic_form(4, a2), &cyclic_form(4, b2), DEFAULT_BOUND).is_yes()
                && isomorphic(&cyclic_form(5, a5), &cyclic_form(5, b5), DEFAULT_BOUND).is_yes();
            let whole = isomorphic(&f1, &f2, DEFAULT_BOUND);
            prop_assert_eq!(whole.is_yes(), blockwise);
            prop_assert_eq!(whole.is_no(), !blockwise);
        }
    }
}
