//! Exact coefficient fields for the plane-cubic engine: prime fields
//! `F_p` with `p > 3`, and the rationals.

use num_traits::{One, Signed, Zero};

use crate::rat::Rat;
use crate::rng::Rng;
use crate::{Error, Result};

/// A field given as a context object; elements are plain values.
pub trait FieldCtx: Clone + Send + Sync {
    type Elem: Clone + PartialEq + std::fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
    /// A random element suitable for sampling curve data.
    fn sample(&self, rng: &mut Rng) -> Self::Elem;
    /// Upper bound for random scalar multiples during sampling. Rational
    /// points double their digit count with every few multiplications, so
    /// the bound is small over Q.
    fn scalar_bound(&self) -> i64 {
        64
    }
    fn display(&self, a: &Self::Elem) -> String;
}

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Requires `p` prime and `p > 3` (the chord–tangent constructions
    /// divide by 2 and the Weierstrass certificate needs char ≠ 2, 3).
    pub fn new(p: u64) -> Result<Self> {
        if p <= 3 {
            return Err(Error::Parse(format!(
                "field size {p} is too small (need p > 3)"
            )));
        }
        if !is_prime_u64(p) {
            return Err(Error::Parse(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    /// The default sampling field, of size about 10^9.
    pub fn default_large() -> Self {
        PrimeField { p: 1_000_000_007 }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(acc, base, self.p);
            }
            base = mulmod(base, base, self.p);
            exp >>= 1;
        }
        acc
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Deterministic Miller–Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = {
            let mut acc = 1u64;
            let mut base = a % n;
            let mut exp = d;
            while exp > 0 {
                if exp & 1 == 1 {
                    acc = mulmod(acc, base, n);
                }
                base = mulmod(base, base, n);
                exp >>= 1;
            }
            acc
        };
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl FieldCtx for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }

    fn sample(&self, rng: &mut Rng) -> u64 {
        rng.below(self.p)
    }

    fn display(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rationals;

impl FieldCtx for Rationals {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }

    fn one(&self) -> Rat {
        Rat::one()
    }

    fn from_i64(&self, v: i64) -> Rat {
        crate::rat::rat(v)
    }

    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }

    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a - b
    }

    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }

    fn neg(&self, a: &Rat) -> Rat {
        -a
    }

    fn inv(&self, a: &Rat) -> Option<Rat> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }

    // Small numerators keep coefficient growth in check when sampling over Q.
    fn sample(&self, rng: &mut Rng) -> Rat {
        crate::rat::rat(rng.range_i64(-12, 13))
    }

    fn scalar_bound(&self) -> i64 {
        6
    }

    fn display(&self, a: &Rat) -> String {
        debug_assert!(a.is_positive() || !a.is_positive());
        crate::rat::fmt_rat(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(1_000_000_007).unwrap();
        let a = 123_456_789u64;
        let inv = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &inv), 1);
        assert_eq!(f.add(&f.neg(&a), &a), 0);
        assert_eq!(f.from_i64(-1), 1_000_000_006);
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(1_000_000_007));
        assert!(is_prime_u64(4_294_967_291));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(1_000_000_008));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to base 2
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(3).is_err());
    }
}
