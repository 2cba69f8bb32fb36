//! Scaled Bernoulli numbers `B_n / n!` as exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Grows a table of `B_n / n!` on demand from the recurrence
/// `Σ_{j=0}^{n} b_j / (n+1-j)! = 0` for `n ≥ 1`, `b_0 = 1`.
#[derive(Debug, Clone)]
pub struct ScaledBernoulli {
    scaled: Vec<BigRational>,
    inv_factorials: Vec<BigRational>,
}

impl Default for ScaledBernoulli {
    fn default() -> Self {
        Self::new()
    }
}

impl ScaledBernoulli {
    pub fn new() -> Self {
        ScaledBernoulli {
            scaled: vec![BigRational::one()],
            inv_factorials: vec![BigRational::one(), BigRational::one()],
        }
    }

    fn inv_factorial(&mut self, k: usize) -> &BigRational {
        while self.inv_factorials.len() <= k {
            let m = self.inv_factorials.len();
            let next = &self.inv_factorials[m - 1] / BigRational::from_integer(BigInt::from(m));
            self.inv_factorials.push(next);
        }
        &self.inv_factorials[k]
    }

    /// `B_n / n!`.
    pub fn get(&mut self, n: usize) -> BigRational {
        while self.scaled.len() <= n {
            let m = self.scaled.len();
            let mut acc = BigRational::zero();
            for j in 0..m {
                let f = self.inv_factorial(m + 1 - j).clone();
                acc += &self.scaled[j] * f;
            }
            self.scaled.push(-acc);
        }
        self.scaled[n].clone()
    }

    /// `B_n` itself.
    pub fn bernoulli(&mut self, n: usize) -> BigRational {
        let mut fact = BigInt::one();
        for k in 2..=n {
            fact *= BigInt::from(k);
        }
        self.get(n) * BigRational::from_integer(fact)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn first_bernoulli_numbers() {
        let mut b = ScaledBernoulli::new();
        assert_eq!(b.bernoulli(0), q(1, 1));
        assert_eq!(b.bernoulli(1), q(-1, 2));
        assert_eq!(b.bernoulli(2), q(1, 6));
        assert_eq!(b.bernoulli(3), q(0, 1));
        assert_eq!(b.bernoulli(4), q(-1, 30));
        assert_eq!(b.bernoulli(6), q(1, 42));
        assert_eq!(b.bernoulli(8), q(-1, 30));
        assert_eq!(b.bernoulli(10), q(5, 66));
        assert_eq!(b.bernoulli(12), q(-691, 2730));
        assert_eq!(b.bernoulli(15), q(0, 1));
    }

    #[test]
    fn scaled_values_alternate_in_sign() {
        let mut b = ScaledBernoulli::new();
        for k in 1..30usize {
            let v = b.get(2 * k);
            let positive = v > BigRational::zero();
            assert_eq!(positive, k % 2 == 1, "sign of B_{}", 2 * k);
        }
    }
}
