use num::One;

use super::poly::GradedPoly;
use super::rational::{int, Rational};
use super::RingError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NewtonDirection {
    PowerToElementary,
    ElementaryToPower,
}

/// Newton's identities between the first `m` power sums and the first `m`
/// elementary symmetric functions of `num_variables` variables. With squared
/// Chern roots as variables, the elementary side is the Pontryagin classes.
pub fn newton_convert(direction: NewtonDirection, values: &[GradedPoly], num_variables: usize) -> Result<Vec<GradedPoly>, RingError> {
    if values.len() > num_variables {
        return Err(RingError::TooManyValues { given: values.len(), variables: num_variables });
    }
    let Some(first) = values.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring().clone();
    let one = GradedPoly::one(&ring);
    let sign = |k: usize| if k.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    let mut out: Vec<GradedPoly> = Vec::with_capacity(values.len());
    match direction {
        NewtonDirection::PowerToElementary => {
            // k e_k = Σ_{i=1..k} (-1)^(i-1) e_{k-i} p_i
            for k in 1..=values.len() {
                let mut acc = GradedPoly::zero(&ring);
                for i in 1..=k {
                    let e_prev = if k == i { &one } else { &out[k - i - 1] };
                    acc.add_scaled(&e_prev.try_mul(&values[i - 1])?, &sign(i - 1));
                }
                out.push(acc.scale(&int(k as i64).recip()));
            }
        }
        NewtonDirection::ElementaryToPower => {
            // p_k = (-1)^(k-1) k e_k + Σ_{i=1..k-1} (-1)^(k-1+i) e_{k-i} p_i
            for k in 1..=values.len() {
                let mut acc = values[k - 1].scale(&(sign(k - 1) * int(k as i64)));
                for i in 1..k {
                    acc.add_scaled(&values[k - i - 1].try_mul(&out[i - 1])?, &sign(k - 1 + i));
                }
                out.push(acc);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::GeneratorTable;

    #[test]
    fn first_identities() {
        let r = GeneratorTable::new(&[("s1", 4), ("s2", 8), ("s3", 12)], 12).unwrap();
        let s: Vec<_> = ["s1", "s2", "s3"].iter().map(|n| GradedPoly::generator(&r, n).unwrap()).collect();
        let e = newton_convert(NewtonDirection::PowerToElementary, &s, 6).unwrap();
        assert_eq!(e[0], s[0]);
        assert_eq!(e[1].to_string(), "1/2 s1^2 - 1/2 s2");
        // e3 = (s1^3 - 3 s1 s2 + 2 s3)/6
        assert_eq!(e[2].to_string(), "1/6 s1^3 - 1/2 s1*s2 + 1/3 s3");
        let back = newton_convert(NewtonDirection::ElementaryToPower, &e, 6).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn too_many_values() {
        let r = GeneratorTable::new(&[("s1", 4), ("s2", 8)], 8).unwrap();
        let s: Vec<_> = ["s1", "s2"].iter().map(|n| GradedPoly::generator(&r, n).unwrap()).collect();
        assert!(matches!(
            newton_convert(NewtonDirection::PowerToElementary, &s, 1),
            Err(RingError::TooManyValues { given: 2, variables: 1 })
        ));
    }
}
