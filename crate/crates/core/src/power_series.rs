//! Truncated power series and the exp/log/sqrt recurrences.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::FromPrimitive;

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Coefficients `c_0, ..., c_order`; everything past `order` is unknown.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Field> PowerSeries<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a series keeps at least c_0");
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries { coeffs: vec![T::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = T::one();
        s
    }

    /// `t` truncated at `order`.
    pub fn t(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = T::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &T {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order());
        PowerSeries { coeffs: self.coeffs[..=order].to_vec() }
    }

    /// Substitutes `t ↦ t^k`, keeping the same order.
    pub fn compose_power(&self, k: usize) -> Self {
        assert!(k >= 1);
        let mut out = Self::zero(self.order());
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * k > self.order() {
                break;
            }
            out.coeffs[i * k] = c.clone();
        }
        out
    }

    pub fn scale(&self, c: &T) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect() }
    }
}

impl<T: Field + FromPrimitive> PowerSeries<T> {
    fn int(n: usize) -> T {
        T::from_usize(n).expect("scalar type represents small integers")
    }

    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        PowerSeries {
            coeffs: (1..=self.order()).map(|k| self.coeffs[k].clone() * Self::int(k)).collect(),
        }
    }

    /// `exp(s)` for `s(0) = 0`, via `n f_n = Σ_{k=1}^n k s_k f_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::BadConstantTerm("exp"));
        }
        let order = self.order();
        let mut f: Vec<T> = Vec::with_capacity(order + 1);
        f.push(T::one());
        for n in 1..=order {
            let mut acc = T::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc = acc + Self::int(k) * self.coeffs[k].clone() * f[n - k].clone();
            }
            f.push(acc / Self::int(n));
        }
        Ok(PowerSeries { coeffs: f })
    }

    /// `log(f)` for `f(0) = 1`, i.e. `log(1 + s)` with `s = f - 1`.
    pub fn ln(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::BadConstantTerm("log"));
        }
        let order = self.order();
        let mut h: Vec<T> = vec![T::zero(); order + 1];
        for n in 1..=order {
            let mut acc = Self::int(n) * self.coeffs[n].clone();
            for k in 1..n {
                acc = acc - Self::int(k) * h[k].clone() * self.coeffs[n - k].clone();
            }
            h[n] = acc / Self::int(n);
        }
        Ok(PowerSeries { coeffs: h })
    }

    /// Square root with constant term 1, for `f(0) = 1`.
    pub fn sqrt(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::BadConstantTerm("sqrt"));
        }
        let order = self.order();
        let two = Self::int(2);
        let mut g: Vec<T> = vec![T::zero(); order + 1];
        g[0] = T::one();
        for n in 1..=order {
            let mut acc = self.coeffs[n].clone();
            for k in 1..n {
                acc = acc - g[k].clone() * g[n - k].clone();
            }
            g[n] = acc / two.clone();
        }
        Ok(PowerSeries { coeffs: g })
    }
}

impl<T: Field> Add<&PowerSeries<T>> for &PowerSeries<T> {
    type Output = PowerSeries<T>;
    fn add(self, rhs: &PowerSeries<T>) -> PowerSeries<T> {
        let n = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=n).map(|i| self.coeffs[i].clone() + rhs.coeffs[i].clone()).collect(),
        }
    }
}

impl<T: Field> Sub<&PowerSeries<T>> for &PowerSeries<T> {
    type Output = PowerSeries<T>;
    fn sub(self, rhs: &PowerSeries<T>) -> PowerSeries<T> {
        let n = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=n).map(|i| self.coeffs[i].clone() - rhs.coeffs[i].clone()).collect(),
        }
    }
}

impl<T: Field> Mul<&PowerSeries<T>> for &PowerSeries<T> {
    type Output = PowerSeries<T>;
    fn mul(self, rhs: &PowerSeries<T>) -> PowerSeries<T> {
        let n = self.order().min(rhs.order());
        let mut out = vec![T::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        PowerSeries { coeffs: out }
    }
}

/// One coefficient per line, `m<TAB>c_m`.
impl<T: fmt::Display> fmt::Display for PowerSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (m, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "{m}\t{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn exp_of_t_is_factorial_series() {
        let e = PowerSeries::<BigRational>::t(5).exp().unwrap();
        let want = [q(1, 1), q(1, 1), q(1, 2), q(1, 6), q(1, 24), q(1, 120)];
        assert_eq!(e.coeffs(), &want);
    }

    #[test]
    fn log_of_one_plus_t() {
        let one_plus_t = &PowerSeries::<BigRational>::one(4) + &PowerSeries::t(4);
        let l = one_plus_t.ln().unwrap();
        assert_eq!(l.coeffs(), &[q(0, 1), q(1, 1), q(-1, 2), q(1, 3), q(-1, 4)]);
    }

    #[test]
    fn sqrt_of_one_plus_t() {
        let one_plus_t = &PowerSeries::<BigRational>::one(3) + &PowerSeries::t(3);
        let s = one_plus_t.sqrt().unwrap();
        assert_eq!(s.coeffs(), &[q(1, 1), q(1, 2), q(-1, 8), q(1, 16)]);
    }

    #[test]
    fn constant_term_preconditions() {
        let one = PowerSeries::<BigRational>::one(3);
        assert_eq!(one.exp(), Err(Error::BadConstantTerm("exp")));
        let t = PowerSeries::<BigRational>::t(3);
        assert_eq!(t.ln(), Err(Error::BadConstantTerm("log")));
        assert_eq!(t.sqrt(), Err(Error::BadConstantTerm("sqrt")));
    }

    #[test]
    fn f64_series_work_too() {
        let e = PowerSeries::<f64>::t(10).exp().unwrap();
        let sum: f64 = e.coeffs().iter().sum();
        assert!((sum - std::f64::consts::E).abs() < 1e-7);
    }

    #[test]
    fn display_is_tab_separated() {
        let s = PowerSeries::<BigRational>::new(vec![q(1, 1), q(-1, 2)]);
        assert_eq!(s.to_string(), "0\t1\n1\t-1/2\n");
    }
}
