//! Truncated polynomial ring `K[h]/(h^N)` with coefficients in an arbitrary
//! module: scalars, coordinate vectors, or matrices.
//!
//! The truncation order is carried on the value; mixing orders is an error
//! rather than an implicit coercion, since everything downstream (deviation
//! calculus in particular) is order-sensitive.

use crate::field::Field;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Element of `M ⊗ K[h]/(h^N)`: exactly `order` coefficients, `coeffs[k]` the
/// coefficient of `h^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedSeries<C> {
    pub order: usize,
    pub coeffs: Vec<C>,
}

impl<C: Clone> TruncatedSeries<C> {
    pub fn new(order: usize, coeffs: Vec<C>) -> Self {
        assert_eq!(coeffs.len(), order, "coefficient count must equal the order");
        TruncatedSeries { order, coeffs }
    }

    pub fn constant(order: usize, zero: C, c: C) -> Self {
        assert!(order > 0);
        let mut coeffs = vec![zero; order];
        coeffs[0] = c;
        TruncatedSeries { order, coeffs }
    }

    /// Re-truncate to a (possibly larger) order, padding with zeros.
    pub fn retruncate(&self, order: usize, zero: C) -> Self {
        let mut coeffs: Vec<C> = self.coeffs.iter().take(order).cloned().collect();
        coeffs.resize(order, zero);
        TruncatedSeries { order, coeffs }
    }

    /// Cauchy product under an arbitrary bilinear coefficient product.
    ///
    /// `mul(a, b)` is the product of a coefficient of `self` with one of
    /// `other`; `add` combines contributions of equal degree.
    pub fn mul_with<D, E>(
        &self,
        other: &TruncatedSeries<D>,
        zero: impl Fn() -> E,
        add: impl Fn(&E, &E) -> E,
        mul: impl Fn(&C, &D) -> E,
    ) -> Result<TruncatedSeries<E>>
    where
        D: Clone,
        E: Clone,
    {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        let n = self.order;
        let mut coeffs = Vec::with_capacity(n);
        for m in 0..n {
            let mut acc = zero();
            for p in 0..=m {
                acc = add(&acc, &mul(&self.coeffs[p], &other.coeffs[m - p]));
            }
            coeffs.push(acc);
        }
        Ok(TruncatedSeries { order: n, coeffs })
    }

    pub fn add_with(&self, other: &Self, add: impl Fn(&C, &C) -> C) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| add(a, b)).collect(),
        })
    }

    /// First index with a nonzero coefficient, if any.
    pub fn lowest_nonzero(&self, is_zero: impl Fn(&C) -> bool) -> Option<usize> {
        self.coeffs.iter().position(|c| !is_zero(c))
    }
}

/// Scalar series over a field, where the coefficient product is field
/// multiplication. The formal parameter is `h(order)`.
pub type ScalarSeries<F> = TruncatedSeries<F>;

pub fn scalar_series<F: Field>(order: usize, coeffs: &[i64]) -> ScalarSeries<F> {
    assert!(coeffs.len() <= order);
    let mut v: Vec<F> = coeffs.iter().map(|&c| F::from_i64(c)).collect();
    v.resize(order, F::zero());
    TruncatedSeries::new(order, v)
}

/// The formal parameter `h` at a given truncation order (order must be >= 2).
pub fn h<F: Field>(order: usize) -> ScalarSeries<F> {
    scalar_series(order, &[0, 1])
}

/// Product of scalar series; errors on order mismatch.
pub fn series_mul<F: Field>(a: &ScalarSeries<F>, b: &ScalarSeries<F>) -> Result<ScalarSeries<F>> {
    a.mul_with(b, F::zero, |x, y| x.add(y), |x, y| x.mul(y))
}

pub fn series_add<F: Field>(a: &ScalarSeries<F>, b: &ScalarSeries<F>) -> Result<ScalarSeries<F>> {
    a.add_with(b, |x, y| x.add(y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, Rat};
    use proptest::prelude::*;

    #[test]
    fn difference_of_squares() {
        // (1 + h)(1 - h) = 1 - h^2 at N = 3
        let a = scalar_series::<Rat>(3, &[1, 1]);
        let b = scalar_series::<Rat>(3, &[1, -1]);
        assert_eq!(series_mul(&a, &b).unwrap(), scalar_series::<Rat>(3, &[1, 0, -1]));
    }

    #[test]
    fn unit_law() {
        let c = scalar_series::<Rat>(2, &[5, 7]);
        let one = scalar_series::<Rat>(2, &[1]);
        assert_eq!(series_mul(&c, &one).unwrap(), c);
    }

    #[test]
    fn nilpotent_coefficients_square_to_zero() {
        // Coefficients in Q[x]/(x^2) represented as pairs (a, b) = a + b x.
        // Oracle: direct polynomial multiplication then reduction by x^2 = 0:
        // (x h)(x h) = x^2 h^2 = 0.
        type QX = (Rat, Rat);
        let zero = || (Rat::zero(), Rat::zero());
        let add = |a: &QX, b: &QX| (a.0.add(&b.0), a.1.add(&b.1));
        let mul = |a: &QX, b: &QX| {
            // (a0 + a1 x)(b0 + b1 x) = a0 b0 + (a0 b1 + a1 b0) x, x^2 = 0
            (a.0.mul(&b.0), a.0.mul(&b.1).add(&a.1.mul(&b.0)))
        };
        let xh = TruncatedSeries::new(3, vec![zero(), (Rat::zero(), Rat::one()), zero()]);
        let sq = xh.mul_with(&xh, zero, add, mul).unwrap();
        assert_eq!(sq.coeffs, vec![zero(), zero(), zero()]);
    }

    #[test]
    fn order_mismatch_is_rejected() {
        let a = scalar_series::<Rat>(3, &[1]);
        let b = scalar_series::<Rat>(2, &[1]);
        assert!(series_mul(&a, &b).is_err());
    }

    fn arb_series(order: usize) -> impl Strategy<Value = ScalarSeries<Rat>> {
        proptest::collection::vec(-9i64..9, order)
            .prop_map(move |v| scalar_series::<Rat>(order, &v))
    }

    proptest! {
        #[test]
        fn mul_associative_and_distributive(order in 1usize..6, seed in 0u64..1000) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut rand_series = || {
                let v: Vec<i64> = (0..order).map(|_| rng.gen_range(-9..9)).collect();
                scalar_series::<Rat>(order, &v)
            };
            let (a, b, c) = (rand_series(), rand_series(), rand_series());
            let ab_c = series_mul(&series_mul(&a, &b).unwrap(), &c).unwrap();
            let a_bc = series_mul(&a, &series_mul(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            let lhs = series_mul(&a, &series_add(&b, &c).unwrap()).unwrap();
            let rhs = series_add(&series_mul(&a, &b).unwrap(), &series_mul(&a, &c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn mul_matches_untruncated_polynomial_product(a in arb_series(4), b in arb_series(4)) {
            // Oracle: multiply as honest polynomials, then discard degree >= N.
            let mut full = vec![Rat::zero(); 7];
            for (i, x) in a.coeffs.iter().enumerate() {
                for (j, y) in b.coeffs.iter().enumerate() {
                    full[i + j] = full[i + j].add(&x.mul(y));
                }
            }
            let got = series_mul(&a, &b).unwrap();
            prop_assert_eq!(&got.coeffs[..], &full[..4]);
        }
    }
}
