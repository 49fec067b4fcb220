//! The three reference-based measures.
//!
//! Cosine similarity is a similarity (higher is closer); chi-square and
//! Euclidean distance are distances (lower is closer). Chi-square is
//! oriented with the cluster centroid as the observed data O and the test
//! vector as the expected data E; the orientation is a fixed constant, not
//! a configuration knob, so that model scores stay comparable.

use crate::error::{Error, Result};

/// Substituted for a zero expected component when the observed component is
/// nonzero, standing in for an infinite penalty. Marker percentages are
/// frequently exactly zero, so plain division is not an option.
pub const CHI_SQUARE_EPSILON: f64 = 1e-9;

fn check_dimensions(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() == b.len() {
        Ok(())
    } else {
        Err(Error::Dimension {
            expected: a.len(),
            actual: b.len(),
        })
    }
}

/// Cosine of the angle between `r` and `t`: dot(r, t) / (|r| * |t|).
///
/// Ranges over [-1, 1]. An all-zero vector has no direction; the similarity
/// is 0 by convention.
pub fn cosine_similarity(r: &[f64], t: &[f64]) -> Result<f64> {
    check_dimensions(r, t)?;
    let mut dot = 0.0;
    let mut norm_r = 0.0;
    let mut norm_t = 0.0;
    for (&a, &b) in r.iter().zip(t.iter()) {
        dot += a * b;
        norm_r += a * a;
        norm_t += b * b;
    }
    if norm_r == 0.0 || norm_t == 0.0 {
        log::warn!("cosine similarity of an all-zero vector defaults to 0");
        return Ok(0.0);
    }
    Ok(dot / (norm_r.sqrt() * norm_t.sqrt()))
}

/// Chi-square distance: sum of (O_i - E_i)^2 / E_i with `reference` as O
/// and `test` as E.
///
/// A component with O_i = E_i = 0 contributes nothing; E_i = 0 with
/// O_i != 0 uses [`CHI_SQUARE_EPSILON`] in place of E_i. Not symmetric.
pub fn chi_square(reference: &[f64], test: &[f64]) -> Result<f64> {
    check_dimensions(reference, test)?;
    let mut sum = 0.0;
    for (&o, &e) in reference.iter().zip(test.iter()) {
        if e == 0.0 {
            if o != 0.0 {
                sum += o * o / CHI_SQUARE_EPSILON;
            }
        } else {
            let d = o - e;
            sum += d * d / e;
        }
    }
    Ok(sum)
}

/// Euclidean distance between `p` and `q`.
pub fn euclidean_distance(p: &[f64], q: &[f64]) -> Result<f64> {
    check_dimensions(p, q)?;
    let sum: f64 = p
        .iter()
        .zip(q.iter())
        .map(|(&a, &b)| (a - b) * (a - b))
        .sum();
    Ok(sum.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) {
        assert!((a - b).abs() < 1e-12, "{a} != {b}");
    }

    #[test]
    fn cosine_of_identical_vectors_is_one() {
        let v = [1.0, 2.0, 3.0];
        close(cosine_similarity(&v, &v).unwrap(), 1.0);
    }

    #[test]
    fn cosine_of_orthogonal_vectors_is_zero() {
        close(cosine_similarity(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 0.0);
    }

    #[test]
    fn cosine_hand_arithmetic() {
        // dot = 32, |r| = sqrt(14), |t| = sqrt(77)
        let expected = 32.0 / (14.0_f64.sqrt() * 77.0_f64.sqrt());
        close(
            cosine_similarity(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]).unwrap(),
            expected,
        );
    }

    #[test]
    fn cosine_of_opposite_vectors_is_minus_one() {
        close(cosine_similarity(&[1.0, 2.0], &[-1.0, -2.0]).unwrap(), -1.0);
    }

    #[test]
    fn cosine_zero_vector_convention() {
        close(cosine_similarity(&[0.0, 0.0], &[1.0, 2.0]).unwrap(), 0.0);
        close(cosine_similarity(&[1.0, 2.0], &[0.0, 0.0]).unwrap(), 0.0);
    }

    #[test]
    fn chi_square_of_identical_vectors_is_zero() {
        close(chi_square(&[3.0, 7.0], &[3.0, 7.0]).unwrap(), 0.0);
    }

    #[test]
    fn chi_square_hand_arithmetic() {
        // (10-5)^2/5 + (10-20)^2/20 = 5 + 5
        close(chi_square(&[10.0, 10.0], &[5.0, 20.0]).unwrap(), 10.0);
    }

    #[test]
    fn chi_square_is_asymmetric() {
        close(chi_square(&[10.0, 10.0], &[5.0, 20.0]).unwrap(), 10.0);
        // (5-10)^2/10 + (20-10)^2/10 = 2.5 + 10
        close(chi_square(&[5.0, 20.0], &[10.0, 10.0]).unwrap(), 12.5);
    }

    #[test]
    fn chi_square_epsilon_substitution() {
        // component 1 contributes 1/epsilon, component 2 nothing
        let value = chi_square(&[1.0, 0.0], &[0.0, 0.0]).unwrap();
        assert_eq!(value, 1.0 / CHI_SQUARE_EPSILON);
        assert!((value - 1e9).abs() / 1e9 < 1e-12);
    }

    #[test]
    fn euclidean_of_identical_vectors_is_zero() {
        close(euclidean_distance(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 0.0);
    }

    #[test]
    fn euclidean_three_four_five() {
        close(euclidean_distance(&[0.0, 0.0], &[3.0, 4.0]).unwrap(), 5.0);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        assert!(cosine_similarity(&[1.0], &[1.0, 2.0]).is_err());
        assert!(chi_square(&[1.0], &[1.0, 2.0]).is_err());
        assert!(euclidean_distance(&[1.0], &[1.0, 2.0]).is_err());
    }
}
