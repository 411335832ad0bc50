//! Rational functions `N(t)/D(t)` in lowest terms.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::poly::Polynomial;
use crate::power_series::PowerSeries;
use crate::scalar::Field;

/// Quotient of two polynomials.
///
/// The stored form is canonical: numerator and denominator are coprime, and
/// the denominator has constant term 1 (or, when `D(0) = 0`, is monic). Zero
/// is `0/1`. Structural equality is therefore equality of functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction<T> {
    num: Polynomial<T>,
    den: Polynomial<T>,
}

impl<T: Field> RationalFunction<T> {
    pub fn new(num: Polynomial<T>, den: Polynomial<T>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RationalFunction { num, den };
        r.normalize();
        r
    }

    pub fn from_poly(p: Polynomial<T>) -> Self {
        Self::new(p, Polynomial::one())
    }

    pub fn numerator(&self) -> &Polynomial<T> {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial<T> {
        &self.den
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Polynomial::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree().is_some_and(|d| d > 0) {
            self.num = self.num.div_rem(&g).0;
            self.den = self.den.div_rem(&g).0;
        }
        let c0 = self.den.coeff(0);
        let unit = if c0.is_zero() {
            self.den.leading().cloned().expect("nonzero denominator")
        } else {
            c0
        };
        let inv = T::one() / unit;
        self.num = self.num.scale(&inv);
        self.den = self.den.scale(&inv);
    }

    pub fn recip(&self) -> Self {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, e: i32) -> Self {
        let base = if e < 0 { self.recip() } else { self.clone() };
        let n = e.unsigned_abs();
        Self::new(base.num.pow(n), base.den.pow(n))
    }

    /// Substitutes `t ↦ t^k`.
    pub fn compose_power(&self, k: usize) -> Self {
        Self::new(self.num.compose_power(k), self.den.compose_power(k))
    }

    /// Equality decided by cross-multiplication, independent of normal form.
    pub fn equivalent(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Taylor expansion at `t = 0` through `t^order`; requires `D(0) ≠ 0`.
    pub fn expand(&self, order: usize) -> PowerSeries<T> {
        let d0 = self.den.coeff(0);
        assert!(!d0.is_zero(), "pole at t = 0");
        let inv0 = T::one() / d0;
        let mut out: Vec<T> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.num.coeff(n);
            for k in 1..=n.min(self.den.coeffs().len().saturating_sub(1)) {
                acc = acc - self.den.coeff(k) * out[n - k].clone();
            }
            out.push(acc * inv0.clone());
        }
        PowerSeries::new(out)
    }
}

impl<T: Field> Zero for RationalFunction<T> {
    fn zero() -> Self {
        RationalFunction { num: Polynomial::zero(), den: Polynomial::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<T: Field> One for RationalFunction<T> {
    fn one() -> Self {
        RationalFunction { num: Polynomial::one(), den: Polynomial::one() }
    }
}

impl<T: Field> Add<&RationalFunction<T>> for &RationalFunction<T> {
    type Output = RationalFunction<T>;
    fn add(self, rhs: &RationalFunction<T>) -> RationalFunction<T> {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<T: Field> Sub<&RationalFunction<T>> for &RationalFunction<T> {
    type Output = RationalFunction<T>;
    fn sub(self, rhs: &RationalFunction<T>) -> RationalFunction<T> {
        self + &(-rhs)
    }
}

impl<T: Field> Mul<&RationalFunction<T>> for &RationalFunction<T> {
    type Output = RationalFunction<T>;
    fn mul(self, rhs: &RationalFunction<T>) -> RationalFunction<T> {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<T: Field> Div<&RationalFunction<T>> for &RationalFunction<T> {
    type Output = RationalFunction<T>;
    fn div(self, rhs: &RationalFunction<T>) -> RationalFunction<T> {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl<T: Field> Neg for &RationalFunction<T> {
    type Output = RationalFunction<T>;
    fn neg(self) -> RationalFunction<T> {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Field> $tr for RationalFunction<T> {
            type Output = RationalFunction<T>;
            fn $m(self, rhs: RationalFunction<T>) -> RationalFunction<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl<T: Field> Neg for RationalFunction<T> {
    type Output = RationalFunction<T>;
    fn neg(self) -> RationalFunction<T> {
        -&self
    }
}

impl<T: Field + Signed + fmt::Display> fmt::Display for RationalFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}
