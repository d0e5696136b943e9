//! Truncated formal power series over exact rationals.
//!
//! A [`Series`] carries coefficients for x^0..=x^order plus a [`Flavor`] tag
//! (exponential or ordinary generating function). The flavor never changes
//! arithmetic; it only guards against mixing the two conventions and selects
//! how [`Series::sequence_values`] scales coefficients back into counts.
//!
//! Binary operations require equal flavors and truncate to the shorter
//! operand's order. `exp`, `log`, and `inv` run the classical coefficient
//! recurrences; everything stays exact.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::sequences::{self, Count};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Generating-function convention of a [`Series`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Exponential: term n counts n-element labeled structures as n! c_n.
    Egf,
    /// Ordinary: term n is the count itself.
    Ogf,
}

/// A power series truncated at a fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    flavor: Flavor,
    coeffs: Vec<Rational>,
}

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn count_to_int(c: &Count) -> BigInt {
    BigInt::from(c.clone())
}

impl Series {
    /// Builds a series from coefficients c_0..=c_order.
    ///
    /// # Panics
    ///
    /// Panics if `coeffs` is empty (a series always has a constant term).
    pub fn new(flavor: Flavor, coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least a constant term");
        Self { flavor, coeffs }
    }

    /// The zero series at the given order.
    pub fn zero(flavor: Flavor, order: usize) -> Self {
        Self::new(flavor, vec![Rational::zero(); order + 1])
    }

    /// The constant series c at the given order.
    pub fn constant(flavor: Flavor, c: Rational, order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[0] = c;
        Self::new(flavor, coeffs)
    }

    /// The series x at the given order.
    pub fn x(flavor: Flavor, order: usize) -> Self {
        let mut s = Self::zero(flavor, order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    /// e^x truncated: coefficients 1/k!.
    pub fn exp_x(flavor: Flavor, order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|k| Rational::new(BigInt::one(), count_to_int(&sequences::factorial(k))))
            .collect();
        Self::new(flavor, coeffs)
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// Truncation order (largest retained exponent).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of x^k.
    ///
    /// # Panics
    ///
    /// Panics if `k` exceeds the order.
    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Copy truncated to a smaller (or equal) order.
    ///
    /// # Panics
    ///
    /// Panics if `order` exceeds the current order.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot truncate upward");
        Self::new(self.flavor, self.coeffs[..=order].to_vec())
    }

    /// The counting sequence the series generates: n! c_n for an e.g.f.,
    /// c_n unchanged for an o.g.f.
    pub fn sequence_values(&self) -> Vec<Rational> {
        match self.flavor {
            Flavor::Egf => self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c * Rational::from_integer(count_to_int(&sequences::factorial(n))))
                .collect(),
            Flavor::Ogf => self.coeffs.clone(),
        }
    }

    fn check_flavor(&self, other: &Self) {
        assert!(
            self.flavor == other.flavor,
            "series flavor mismatch: {:?} vs {:?}",
            self.flavor,
            other.flavor
        );
    }

    /// Cauchy product, truncated to the shorter operand's order.
    ///
    /// # Panics
    ///
    /// Panics on flavor mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_flavor(other);
        let order = self.order().min(other.order());
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::new(self.flavor, coeffs)
    }

    /// Multiplicative inverse: c_0 = 1/a_0,
    /// c_n = -(1/a_0) sum_{k=1..n} a_k c_{n-k}.
    ///
    /// # Panics
    ///
    /// Panics if the constant term is zero.
    pub fn inv(&self) -> Self {
        assert!(
            !self.coeffs[0].is_zero(),
            "series inverse requires a nonzero constant term"
        );
        let order = self.order();
        let a0 = &self.coeffs[0];
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[0] = a0.recip();
        for n in 1..=order {
            let mut sum = Rational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    sum += &self.coeffs[k] * &coeffs[n - k];
                }
            }
            coeffs[n] = -(sum / a0);
        }
        Self::new(self.flavor, coeffs)
    }

    /// exp of a series with zero constant term, via the differential
    /// recurrence n b_n = sum_{k=1..n} k a_k b_{n-k}.
    ///
    /// # Panics
    ///
    /// Panics if the constant term is nonzero.
    pub fn exp(&self) -> Self {
        assert!(
            self.coeffs[0].is_zero(),
            "series exp requires a zero constant term"
        );
        let order = self.order();
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[0] = Rational::one();
        for n in 1..=order {
            let mut sum = Rational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    sum += &self.coeffs[k] * int(k as i64) * &coeffs[n - k];
                }
            }
            coeffs[n] = sum / int(n as i64);
        }
        Self::new(self.flavor, coeffs)
    }

    /// log of a series with constant term one, via l' = a'/a:
    /// l_n = a_n - (1/n) sum_{k=1..n-1} k l_k a_{n-k}.
    ///
    /// # Panics
    ///
    /// Panics if the constant term is not one.
    pub fn log(&self) -> Self {
        assert!(
            self.coeffs[0].is_one(),
            "series log requires constant term one"
        );
        let order = self.order();
        let mut coeffs = vec![Rational::zero(); order + 1];
        for n in 1..=order {
            let mut sum = Rational::zero();
            for (k, c) in coeffs.iter().enumerate().take(n).skip(1) {
                if !c.is_zero() && !self.coeffs[n - k].is_zero() {
                    sum += c * int(k as i64) * &self.coeffs[n - k];
                }
            }
            coeffs[n] = &self.coeffs[n] - sum / int(n as i64);
        }
        Self::new(self.flavor, coeffs)
    }

    /// Formal derivative; drops the order by one.
    ///
    /// # Panics
    ///
    /// Panics on a constant-only series (order 0).
    pub fn derivative(&self) -> Self {
        assert!(self.order() >= 1, "derivative needs order >= 1");
        let coeffs = (1..=self.order())
            .map(|k| &self.coeffs[k] * int(k as i64))
            .collect();
        Self::new(self.flavor, coeffs)
    }

    /// Sum, truncated to the shorter operand's order.
    ///
    /// # Panics
    ///
    /// Panics on flavor mismatch.
    pub fn add(&self, other: &Self) -> Self {
        self.check_flavor(other);
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|k| &self.coeffs[k] + &other.coeffs[k])
            .collect();
        Self::new(self.flavor, coeffs)
    }

    /// Difference, truncated to the shorter operand's order.
    ///
    /// # Panics
    ///
    /// Panics on flavor mismatch.
    pub fn sub(&self, other: &Self) -> Self {
        self.check_flavor(other);
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|k| &self.coeffs[k] - &other.coeffs[k])
            .collect();
        Self::new(self.flavor, coeffs)
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.flavor, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Adds a constant to the series.
    pub fn shift_constant(&self, c: &Rational) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += c;
        Self::new(self.flavor, coeffs)
    }
}

/// E.g.f. of ordered Bell numbers: 1/(2 - e^x), truncated.
pub fn ordered_bell_egf(order: usize) -> Series {
    Series::exp_x(Flavor::Egf, order)
        .scale(&int(-1))
        .shift_constant(&int(2))
        .inv()
}

/// E.g.f. of hierarchical orderings: exp(B(x) - 1) where B is the ordered
/// Bell e.g.f.
pub fn hierarchical_egf(order: usize) -> Series {
    ordered_bell_egf(order).shift_constant(&int(-1)).exp()
}

/// E.g.f. of the doubly nested sequence: exp applied twice more on top of
/// the hierarchical e.g.f.
pub fn nested_hierarchical_egf(order: usize) -> Series {
    hierarchical_egf(order)
        .shift_constant(&int(-1))
        .exp()
        .shift_constant(&int(-1))
        .exp()
}

/// O.g.f. of unlabeled hierarchical orderings as the finite truncated
/// product over j <= order of (1 - x^j)^(-2^(j-1)).
pub fn unlabeled_ogf(order: usize) -> Series {
    let mut acc = Series::constant(Flavor::Ogf, Rational::one(), order);
    for j in 1..=order {
        let m = Count::one() << (j - 1); // 2^(j-1)
        let mut coeffs = vec![Rational::zero(); order + 1];
        // (1 - x^j)^(-m) = sum_i C(m+i-1, i) x^(j i), built multiplicatively.
        let mut c = Count::one();
        let mut i = 0usize;
        loop {
            coeffs[j * i] = Rational::from_integer(count_to_int(&c));
            i += 1;
            if j * i > order {
                break;
            }
            c = (c * (&m + Count::from(i - 1))) / Count::from(i);
        }
        acc = acc.mul(&Series::new(Flavor::Ogf, coeffs));
    }
    acc
}

/// Closed form of log of the unlabeled o.g.f.:
/// sum_{k>=1} (1/k) x^k/(1 - 2 x^k), truncated. The coefficient of x^N is
/// sum over divisors d of N of d 2^(d-1) / N.
pub fn log_unlabeled_identity(order: usize) -> Series {
    let mut coeffs = vec![Rational::zero(); order + 1];
    for k in 1..=order {
        let mut m = 1usize;
        while k * m <= order {
            // (1/k) * 2^(m-1) x^(k m)
            coeffs[k * m] +=
                Rational::new(count_to_int(&(Count::one() << (m - 1))), BigInt::from(k));
            m += 1;
        }
    }
    Series::new(Flavor::Ogf, coeffs)
}

/// E.g.f. whose n-th count is a_n B_n (average rank times the ordered Bell
/// number): -(1/2) (e^x - 1)(e^x - 3) / (e^x - 2)^2.
pub fn rank_numerator_egf(order: usize) -> Series {
    let e = Series::exp_x(Flavor::Egf, order);
    let numerator = e
        .shift_constant(&int(-1))
        .mul(&e.shift_constant(&int(-3)))
        .scale(&Rational::new(BigInt::from(-1), BigInt::from(2)));
    let em2 = e.shift_constant(&int(-2));
    numerator.mul(&em2.mul(&em2).inv())
}
