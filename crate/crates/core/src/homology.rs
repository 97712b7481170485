//! First homology and the torsion linking form of an integral surgery.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{smith_normal_form, unimodular_inverse, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("presentation matrix is not symmetric")]
    NotSymmetric,
    #[error("linking form is malformed: {0}")]
    Malformed(String),
}

/// `Z^betti ⊕ Z_{d₁} ⊕ … ⊕ Z_{d_k}` with `2 ≤ d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FirstHomology {
    pub betti: usize,
    pub factors: Vec<BigInt>,
}

impl FirstHomology {
    pub fn is_torsion_free(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.factors.is_empty()
    }

    pub fn torsion_order(&self) -> BigInt {
        self.factors.iter().product()
    }
}

impl fmt::Display for FirstHomology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.factors.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Cokernel of `a`, i.e. `Z^rows / a·Z^cols`.
pub fn first_homology(a: &IntMatrix) -> FirstHomology {
    let snf = smith_normal_form(a);
    let diag = snf.diagonal();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    FirstHomology {
        betti: a.rows() - rank,
        factors: diag.into_iter().filter(|d| *d > BigInt::one()).collect(),
    }
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &BigRational) -> BigRational {
    x - BigRational::from_integer(x.floor().to_integer())
}

/// Symmetric `Q/Z`-valued pairing on `⊕ Z_{orders[i]}`, stored on the
/// standard generators with every value reduced into `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinkingForm {
    orders: Vec<BigInt>,
    values: Vec<Vec<BigRational>>,
}

impl LinkingForm {
    /// Checks shape, symmetry and that `λ(gᵢ,gⱼ)` has denominator dividing
    /// `gcd(dᵢ, dⱼ)`. Nondegeneracy is checked separately.
    pub fn new(orders: Vec<BigInt>, values: Vec<Vec<BigRational>>) -> Result<Self, HomologyError> {
        let r = orders.len();
        if values.len() != r || values.iter().any(|row| row.len() != r) {
            return Err(HomologyError::Malformed("value matrix shape".into()));
        }
        if orders.iter().any(|d| *d < BigInt::from(2)) {
            return Err(HomologyError::Malformed("generator orders must be >= 2".into()));
        }
        let values: Vec<Vec<BigRational>> = values
            .into_iter()
            .map(|row| row.iter().map(frac).collect())
            .collect();
        for i in 0..r {
            for j in 0..r {
                if values[i][j] != values[j][i] {
                    return Err(HomologyError::Malformed("values not symmetric".into()));
                }
                let g = orders[i].gcd(&orders[j]);
                if !g.is_multiple_of(values[i][j].denom()) {
                    return Err(HomologyError::Malformed(format!(
                        "value ({}, {}) has denominator not dividing {g}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(LinkingForm { orders, values })
    }

    /// Cyclic form `λ(g,g) = a/n`.
    pub fn cyclic(n: impl Into<BigInt>, a: impl Into<BigInt>) -> Result<Self, HomologyError> {
        let n = n.into();
        let v = BigRational::new(a.into(), n.clone());
        Self::new(vec![n], vec![vec![v]])
    }

    /// Form on the trivial group.
    pub fn trivial() -> Self {
        LinkingForm {
            orders: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn values(&self) -> &[Vec<BigRational>] {
        &self.values
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> BigInt {
        self.orders.iter().product()
    }

    pub fn is_cyclic(&self) -> bool {
        self.orders.len() == 1
    }

    pub fn value(&self, i: usize, j: usize) -> &BigRational {
        &self.values[i][j]
    }

    /// `λ(x, y)` for coordinate vectors over the generators.
    pub fn evaluate(&self, x: &[BigInt], y: &[BigInt]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    acc += &self.values[i][j] * BigRational::from_integer(xi * yj);
                }
            }
        }
        frac(&acc)
    }

    /// The adjoint `T → Hom(T, Q/Z)` is a bijection.
    pub fn is_nondegenerate(&self) -> bool {
        let r = self.rank();
        if r == 0 {
            return true;
        }
        // Image of gᵢ in ⊕ Z_{dⱼ} is (λᵢⱼ·dⱼ)ⱼ; surjective iff the relations
        // it generates together with dⱼ·eⱼ present the trivial group.
        let mut rel = IntMatrix::zeros(r, 2 * r);
        for i in 0..r {
            for j in 0..r {
                let scaled = &self.values[i][j] * BigRational::from_integer(self.orders[j].clone());
                rel[(j, i)] = scaled.to_integer();
            }
            rel[(i, r + i)] = self.orders[i].clone();
        }
        first_homology(&rel).is_trivial()
    }

    /// `Pᵀ Λ P` reduced mod 1, where column `j` of `P` gives the image of
    /// the `j`-th generator of the target group in this form's coordinates.
    pub fn pull_back(&self, p: &IntMatrix) -> Vec<Vec<BigRational>> {
        let cols: Vec<Vec<BigInt>> = (0..p.cols()).map(|j| p.column(j)).collect();
        cols.iter()
            .map(|a| cols.iter().map(|b| self.evaluate(a, b)).collect())
            .collect()
    }

    /// Renders each value as an exact `"a/b"` string.
    pub fn value_strings(&self) -> Vec<Vec<String>> {
        self.values
            .iter()
            .map(|row| row.iter().map(rational_string).collect())
            .collect()
    }
}

pub fn rational_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Torsion data of `coker V` aligned with its invariant-factor basis:
/// integer lifts of each torsion generator and the solutions `z` of
/// `V z = d·lift`.
#[derive(Clone, Debug)]
pub struct TorsionBasis {
    pub orders: Vec<BigInt>,
    pub lifts: Vec<Vec<BigInt>>,
    pub solutions: Vec<Vec<BigInt>>,
    /// Rows of `U`: coordinates of an integer vector in the SNF basis.
    coordinates: IntMatrix,
    diagonal: Vec<BigInt>,
}

impl TorsionBasis {
    pub fn new(v: &IntMatrix) -> Self {
        let snf = smith_normal_form(v);
        let u_inv = unimodular_inverse(&snf.u).expect("SNF transform is unimodular");
        let diagonal: Vec<BigInt> = (0..v.rows())
            .map(|i| if i < v.cols() { snf.d[(i, i)].clone() } else { BigInt::zero() })
            .collect();
        let mut orders = Vec::new();
        let mut lifts = Vec::new();
        let mut solutions = Vec::new();
        for (i, d) in diagonal.iter().enumerate() {
            if *d > BigInt::one() {
                orders.push(d.clone());
                lifts.push(u_inv.column(i));
                solutions.push(snf.w.column(i));
            }
        }
        TorsionBasis {
            orders,
            lifts,
            solutions,
            coordinates: snf.u,
            diagonal,
        }
    }

    /// Coordinates of an integer vector in terms of the torsion generators,
    /// or `None` if it is not a torsion class.
    pub fn torsion_coordinates(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let c = self.coordinates.mul_vec(x);
        let mut out = Vec::new();
        for (ci, d) in c.iter().zip(&self.diagonal) {
            if d.is_zero() {
                if !ci.is_zero() {
                    return None;
                }
            } else if *d > BigInt::one() {
                out.push(ci.mod_floor(d));
            }
        }
        Some(out)
    }
}

/// Linking form on the torsion of `coker V` for symmetric integral `V`.
///
/// For torsion classes with lifts `x̃, ỹ`, `n = ord(x)` and `V z = n x̃`,
/// `λ(x, y) = (z · ỹ)/n mod 1`; for nonsingular `V` this is `x̃ᵀ V⁻¹ ỹ`.
pub fn linking_form(v: &IntMatrix) -> Result<LinkingForm, HomologyError> {
    if !v.is_symmetric() {
        return Err(HomologyError::NotSymmetric);
    }
    let basis = TorsionBasis::new(v);
    let form = form_from_basis(&basis);
    Ok(meridian_normalised(v, &basis, form))
}

/// On a cyclic torsion group, re-expresses the form on the lowest-index
/// meridian that generates it, if any.
fn meridian_normalised(v: &IntMatrix, basis: &TorsionBasis, form: LinkingForm) -> LinkingForm {
    if !form.is_cyclic() {
        return form;
    }
    let n = &form.orders[0];
    for i in 0..v.rows() {
        let mut e = vec![BigInt::zero(); v.rows()];
        e[i] = BigInt::one();
        if let Some(c) = basis.torsion_coordinates(&e) {
            if c[0].gcd(n).is_one() {
                let value = frac(&(&form.values[0][0] * BigRational::from_integer(&c[0] * &c[0])));
                return LinkingForm {
                    orders: form.orders,
                    values: vec![vec![value]],
                };
            }
        }
    }
    form
}

pub fn form_from_basis(basis: &TorsionBasis) -> LinkingForm {
    let r = basis.orders.len();
    let mut values = vec![vec![BigRational::zero(); r]; r];
    for i in 0..r {
        for j in 0..r {
            let dot: BigInt = basis.solutions[i]
                .iter()
                .zip(&basis.lifts[j])
                .map(|(a, b)| a * b)
                .sum();
            values[i][j] = frac(&BigRational::new(dot, basis.orders[i].clone()));
        }
    }
    LinkingForm {
        orders: basis.orders.clone(),
        values,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RatMatrix;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn homology_examples() {
        for n in 2..10 {
            let h = first_homology(&IntMatrix::from_rows(&[vec![n]]));
            assert_eq!(h, FirstHomology { betti: 0, factors: vec![BigInt::from(n)] });
        }
        let h = first_homology(&IntMatrix::zeros(3, 3));
        assert_eq!(h, FirstHomology { betti: 3, factors: vec![] });
        let h = first_homology(&IntMatrix::from_rows(&[vec![3, 1], vec![1, 2]]));
        assert_eq!(h, FirstHomology { betti: 0, factors: vec![BigInt::from(5)] });
        assert_eq!(h.to_string(), "Z/5");
        assert!(first_homology(&IntMatrix::from_rows(&[vec![1]])).is_trivial());
    }

    #[test]
    fn lens_forms() {
        let f = linking_form(&IntMatrix::from_rows(&[vec![2]])).unwrap();
        assert_eq!(f.values(), &[vec![q(1, 2)]]);
        for n in 2..12 {
            let f = linking_form(&IntMatrix::from_rows(&[vec![n]])).unwrap();
            assert_eq!(f.values(), &[vec![q(1, n)]]);
        }
        let f = linking_form(&IntMatrix::from_rows(&[vec![3, 1], vec![1, 2]])).unwrap();
        assert_eq!(f.orders(), &[BigInt::from(5)]);
        // λ(g,g) = k²·2/5 for some unit k: 2/5 or 3/5.
        let v = f.value(0, 0).clone();
        assert!(v == q(2, 5) || v == q(3, 5), "{v}");
    }

    #[test]
    fn singular_presentation_splits_free_part() {
        // S¹×S² # L(3,1): V = diag(0, 3).
        let f = linking_form(&IntMatrix::from_rows(&[vec![0, 0], vec![0, 3]])).unwrap();
        assert_eq!(f.orders(), &[BigInt::from(3)]);
        assert_eq!(f.values(), &[vec![q(1, 3)]]);
        assert!(f.is_nondegenerate());
    }

    #[test]
    fn not_symmetric() {
        let a = IntMatrix::from_rows(&[vec![3, 2], vec![1, 1]]);
        assert_eq!(linking_form(&a), Err(HomologyError::NotSymmetric));
    }

    #[test]
    fn nondegeneracy_detects_bad_forms() {
        assert!(LinkingForm::cyclic(5, 2).unwrap().is_nondegenerate());
        assert!(!LinkingForm::cyclic(6, 2).unwrap().is_nondegenerate());
        let hyperbolic = LinkingForm::new(
            vec![BigInt::from(2), BigInt::from(2)],
            vec![vec![q(0, 1), q(1, 2)], vec![q(1, 2), q(0, 1)]],
        )
        .unwrap();
        assert!(hyperbolic.is_nondegenerate());
        assert!(LinkingForm::new(vec![BigInt::from(4)], vec![vec![q(1, 3)]]).is_err());
    }

    fn symmetric_int() -> impl Strategy<Value = IntMatrix> {
        (1usize..=5).prop_flat_map(|n| {
            proptest::collection::vec(-5i64..=5, n * (n + 1) / 2).prop_map(move |vals| {
                let mut m = IntMatrix::zeros(n, n);
                let mut it = vals.into_iter();
                for i in 0..n {
                    for j in i..n {
                        let v = BigInt::from(it.next().unwrap());
                        m[(i, j)] = v.clone();
                        m[(j, i)] = v;
                    }
                }
                m
            })
        })
    }

    proptest! {
        #[test]
        fn matches_inverse_on_meridians(v in symmetric_int()) {
            prop_assume!(!v.determinant().unwrap().is_zero());
            let basis = TorsionBasis::new(&v);
            let form = form_from_basis(&basis);
            let inv = RatMatrix::from(&v).inverse().unwrap();
            let n = v.rows();
            for a in 0..n {
                for b in 0..n {
                    let mut ea = vec![BigInt::zero(); n];
                    ea[a] = BigInt::one();
                    let mut eb = vec![BigInt::zero(); n];
                    eb[b] = BigInt::one();
                    let ca = basis.torsion_coordinates(&ea).unwrap();
                    let cb = basis.torsion_coordinates(&eb).unwrap();
                    prop_assert_eq!(form.evaluate(&ca, &cb), frac(&inv[(a, b)]));
                }
            }
        }

        #[test]
        fn symmetric_and_nondegenerate(v in symmetric_int()) {
            let form = linking_form(&v).unwrap();
            for i in 0..form.rank() {
                for j in 0..form.rank() {
                    prop_assert_eq!(form.value(i, j), form.value(j, i));
                }
            }
            prop_assert!(form.is_nondegenerate());
        }

        #[test]
        fn lifts_are_well_defined(v in symmetric_int(), shift in proptest::collection::vec(-3i64..=3, 5)) {
            let basis = TorsionBasis::new(&v);
            let form = form_from_basis(&basis);
            let n = v.rows();
            let shift: Vec<BigInt> = shift[..n].iter().map(|&s| BigInt::from(s)).collect();
            let moved = v.mul_vec(&shift);
            for (i, lift) in basis.lifts.iter().enumerate() {
                let other: Vec<BigInt> = lift.iter().zip(&moved).map(|(a, b)| a + b).collect();
                let c = basis.torsion_coordinates(&other).unwrap();
                for j in 0..form.rank() {
                    let mut ej = vec![BigInt::zero(); form.rank()];
                    ej[j] = BigInt::one();
                    prop_assert_eq!(&form.evaluate(&c, &ej), form.value(i, j));
                }
            }
        }
    }
}
