//! Integral bases in which a nonsingular symmetric rational form restricts
//! nondegenerately to every initial span `⟨e₁,…,eᵢ⟩`.
//!
//! The construction works one index at a time. With the first `i` basis
//! vectors already fixed, the form is split rationally as
//! `[[A, B], [Bᵀ, C]]` and the complement block is replaced by the Schur
//! complement `D = C − Bᵀ A⁻¹ B`. An integral move on the trailing vectors
//! that makes the first diagonal entry of `D` nonzero extends the good
//! prefix by one. Such a move is either a transposition (some diagonal
//! entry of `D` is nonzero) or `e₁ ↦ e₁ + eⱼ` (all diagonal entries vanish,
//! so nonsingularity forces some `D₁ⱼ ≠ 0` and the new entry is `2·D₁ⱼ`).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{IntMatrix, LinalgError, RatMatrix};

/// Returns a unimodular `P` such that every leading principal minor of
/// `Pᵀ q P` is nonzero. Columns of `P` are the new basis vectors.
pub fn prefix_nonsingular_basis(q: &RatMatrix) -> Result<IntMatrix, LinalgError> {
    if !q.is_square() {
        return Err(LinalgError::NotSquare {
            rows: q.rows(),
            cols: q.cols(),
        });
    }
    if !q.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    if q.determinant()?.is_zero() {
        return Err(LinalgError::Singular);
    }

    let n = q.rows();
    let mut basis = IntMatrix::identity(n);
    for i in 0..n {
        let form = congruence(q, &basis);
        let schur = schur_complement(&form, i)?;
        let size = n - i;

        let step = if let Some(j) = (0..size).find(|&j| !schur[(j, j)].is_zero()) {
            let mut p = IntMatrix::identity(size);
            p.swap_cols(0, j);
            p
        } else {
            // All diagonal entries vanish; the first row cannot, since D is
            // nonsingular.
            let j = (1..size)
                .find(|&j| !schur[(0, j)].is_zero())
                .ok_or(LinalgError::Singular)?;
            let mut p = IntMatrix::identity(size);
            p[(j, 0)] = BigInt::one();
            p
        };
        basis = &basis * &embed_trailing(&step, n);
    }
    Ok(basis)
}

/// `Pᵀ q P` for integral `P`.
pub fn congruence(q: &RatMatrix, p: &IntMatrix) -> RatMatrix {
    let pr = RatMatrix::from(p);
    pr.transpose()
        .checked_mul(q)
        .and_then(|x| x.checked_mul(&pr))
        .expect("congruence dimensions")
}

fn schur_complement(form: &RatMatrix, k: usize) -> Result<RatMatrix, LinalgError> {
    let n = form.rows();
    let c = form.submatrix(k..n, k..n);
    if k == 0 {
        return Ok(c);
    }
    let a = form.submatrix(0..k, 0..k);
    let b = form.submatrix(0..k, k..n);
    let correction = b.transpose().checked_mul(&a.inverse()?)?.checked_mul(&b)?;
    let mut d = c;
    for i in 0..n - k {
        for j in 0..n - k {
            d[(i, j)] -= &correction[(i, j)];
        }
    }
    Ok(d)
}

fn embed_trailing(block: &IntMatrix, n: usize) -> IntMatrix {
    let offset = n - block.rows();
    let mut out = IntMatrix::identity(n);
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            out[(offset + i, offset + j)] = block[(i, j)].clone();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn assert_prefix_good(q: &RatMatrix, p: &IntMatrix) {
        assert!(p.determinant().unwrap().abs().is_one());
        let form = congruence(q, p);
        for m in form.leading_minors().unwrap() {
            assert!(!m.is_zero());
        }
    }

    #[test]
    fn identity_is_fixed() {
        let q = RatMatrix::identity(3);
        assert_eq!(prefix_nonsingular_basis(&q).unwrap(), IntMatrix::identity(3));
    }

    #[test]
    fn hyperbolic_plane() {
        let q = RatMatrix::from_fractions(&[vec![(0, 1), (1, 1)], vec![(1, 1), (0, 1)]]);
        let p = prefix_nonsingular_basis(&q).unwrap();
        assert_eq!(p, IntMatrix::from_rows(&[vec![1, 0], vec![1, 1]]));
        let form = congruence(&q, &p);
        assert_eq!(
            form,
            RatMatrix::from_fractions(&[vec![(2, 1), (1, 1)], vec![(1, 1), (0, 1)]])
        );
        assert_prefix_good(&q, &p);
    }

    #[test]
    fn already_good_diagonal() {
        let q = RatMatrix::from_fractions(&[vec![(1, 2), (0, 1)], vec![(0, 1), (3, 1)]]);
        assert_eq!(prefix_nonsingular_basis(&q).unwrap(), IntMatrix::identity(2));
    }

    #[test]
    fn needs_reordering_later() {
        // Leading 1×1 fine, but the 2×2 prefix is singular until reordered.
        let q = RatMatrix::from_fractions(&[
            vec![(1, 1), (1, 1), (0, 1)],
            vec![(1, 1), (1, 1), (1, 1)],
            vec![(0, 1), (1, 1), (0, 1)],
        ]);
        let p = prefix_nonsingular_basis(&q).unwrap();
        assert_prefix_good(&q, &p);
    }

    #[test]
    fn errors() {
        let asym = RatMatrix::from_fractions(&[vec![(1, 1), (2, 1)], vec![(0, 1), (1, 1)]]);
        assert_eq!(prefix_nonsingular_basis(&asym), Err(LinalgError::NotSymmetric));
        let sing = RatMatrix::from_fractions(&[vec![(1, 1), (1, 1)], vec![(1, 1), (1, 1)]]);
        assert_eq!(prefix_nonsingular_basis(&sing), Err(LinalgError::Singular));
    }

    fn symmetric_rational() -> impl Strategy<Value = RatMatrix> {
        (1usize..=6).prop_flat_map(|n| {
            proptest::collection::vec((-4i64..=4, 1i64..=3), n * (n + 1) / 2).prop_map(move |vals| {
                let mut m = RatMatrix::zeros(n, n);
                let mut it = vals.into_iter();
                for i in 0..n {
                    for j in i..n {
                        let (a, b) = it.next().unwrap();
                        let v = BigRational::new(a.into(), b.into());
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
        fn random_forms(q in symmetric_rational()) {
            prop_assume!(!q.determinant().unwrap().is_zero());
            let p = prefix_nonsingular_basis(&q).unwrap();
            assert_prefix_good(&q, &p);
        }
    }
}
