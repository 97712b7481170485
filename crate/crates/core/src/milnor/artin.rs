use super::word::{FreeWord, Letter};
use super::MilnorError;
use crate::presentation::{BraidLetter, BraidWord};

/// Image of `x_g` under one braid generator (left Artin action):
/// `σᵢ: xᵢ ↦ xᵢ xᵢ₊₁ xᵢ⁻¹, xᵢ₊₁ ↦ xᵢ`,
/// `σᵢ⁻¹: xᵢ ↦ xᵢ₊₁, xᵢ₊₁ ↦ xᵢ₊₁⁻¹ xᵢ xᵢ₊₁`.
fn generator_image(letter: BraidLetter, g: usize) -> FreeWord {
    let i = letter.generator;
    let x = |k: usize, e: i8| Letter::new(k, e);
    match (letter.sign > 0, g) {
        (true, g) if g == i => FreeWord::from_letters([x(i, 1), x(i + 1, 1), x(i, -1)]),
        (true, g) if g == i + 1 => FreeWord::generator(i),
        (false, g) if g == i => FreeWord::generator(i + 1),
        (false, g) if g == i + 1 => FreeWord::from_letters([x(i + 1, -1), x(i, 1), x(i + 1, 1)]),
        _ => FreeWord::generator(g),
    }
}

/// Image of `x_g` under the automorphism `φ_{b₁} ∘ … ∘ φ_{b_k}` of the
/// whole braid word.
pub fn artin_image(braid: &BraidWord, g: usize) -> FreeWord {
    let mut w = FreeWord::generator(g);
    for &l in braid.letters().iter().rev() {
        w = w.substitute(|k| generator_image(l, k));
    }
    w
}

/// Seifert-framed longitudes of the closure of a pure braid, one per
/// strand, as words in the meridians.
///
/// For a pure braid the image of `xᵢ` is a conjugate `wᵢ xᵢ wᵢ⁻¹`; the
/// conjugator commutes with `xᵢ` in the link group and, corrected by
/// `xᵢ^{−e}` where `e` is its own exponent sum, is the longitude.
pub fn artin_longitudes(braid: &BraidWord) -> Result<Vec<FreeWord>, MilnorError> {
    if !braid.is_pure() {
        return Err(MilnorError::NotPure);
    }
    (0..braid.strands())
        .map(|i| {
            let image = artin_image(braid, i);
            let letters = image.letters();
            let k = letters.len() / 2;
            let conj = FreeWord::from_letters(letters[..k].iter().copied());
            // Reduced conjugates of a generator are palindromic around it.
            debug_assert_eq!(letters[k], Letter::new(i, 1));
            debug_assert_eq!(FreeWord::generator(i).conjugate_by(&conj), image);
            let e = conj.exponent_sum(i);
            let fix = Letter::new(i, if e > 0 { -1 } else { 1 });
            Ok(conj.concat(&FreeWord::from_letters(
                std::iter::repeat_n(fix, e.unsigned_abs() as usize),
            )))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_braid_has_empty_longitudes() {
        let b = BraidWord::parse(3, "").unwrap();
        assert!(artin_longitudes(&b).unwrap().iter().all(FreeWord::is_empty));
    }

    #[test]
    fn hopf_longitude() {
        let b = BraidWord::parse(2, "s1 s1").unwrap();
        let ls = artin_longitudes(&b).unwrap();
        assert_eq!(ls[0].exponent_sum(1), 1);
        assert_eq!(ls[1].exponent_sum(0), 1);
        assert_eq!(ls[0].exponent_sum(0), 0);
    }

    #[test]
    fn borromean_longitudes_have_zero_exponents() {
        let b = BraidWord::parse(3, "s1 s2^-1 s1 s2^-1 s1 s2^-1").unwrap();
        let ls = artin_longitudes(&b).unwrap();
        for l in &ls {
            for g in 0..3 {
                assert_eq!(l.exponent_sum(g), 0);
            }
        }
        assert!(ls.iter().all(|l| !l.is_empty()));
    }

    #[test]
    fn non_pure_rejected() {
        let b = BraidWord::parse(3, "s1 s2").unwrap();
        assert_eq!(artin_longitudes(&b), Err(MilnorError::NotPure));
    }

    #[test]
    fn automorphism_preserves_product_of_generators() {
        // The Artin action fixes x₁x₂…xₙ.
        let b = BraidWord::parse(4, "s1 s3^-1 s2 s2 s1^-1 s3").unwrap();
        let prod = FreeWord::from_letters((0..4).map(|g| Letter::new(g, 1)));
        let image = prod.substitute(|g| artin_image(&b, g));
        assert_eq!(image, prod);
    }
}
