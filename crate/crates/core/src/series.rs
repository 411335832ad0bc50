//! Closed forms of `ζ_σ` and `G_{σ,φ}`, and the expansion of `ζ_{σ,φ}`.
//!
//! ```text
//! ζ_σ(t)     = exp(Σ p_m t^m / m)            = Π_k det(I - t A_k)^{(-1)^k}
//! G_{σ,φ}(t) = Σ_m p_{2m-1,0} t^{2m-1} + (p_{2m,0} + p_{2m,1})/2 · t^{2m}
//! ζ_{σ,φ}(t) = ζ_σ(t²)^{1/2} exp(G_{σ,φ}(t))
//! ```
//!
//! `G` is summed in closed form through the resolvent `(I - sB_k)^{-1}`,
//! `s = t²`: each term `u·(I - sB)^{-1} v` equals `N(s) / det(I - sB)` with
//! `deg N < n`, and `N` is read off the product of the determinant with the
//! first `n` coefficients of `Σ_m (u·B^m v) s^m`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::counting::{CountTable, Count, count_levels};
use crate::error::Result;
use crate::linalg::Matrix;
use crate::poly::Polynomial;
use crate::signed_subsets::{LevelMatrices, Levels};
use crate::{QPoly, QRationalFunction, QSeries, ZPoly};

fn to_q(p: &ZPoly) -> QPoly {
    p.map(|c| BigRational::from_integer(c.clone()))
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `ζ_σ` as a normalized rational function.
pub fn zeta_rational(levels: &Levels) -> Result<QRationalFunction> {
    let mut out = QRationalFunction::one();
    for l in levels.complete()? {
        let det = QRationalFunction::from_poly(to_q(&l.a.det_one_minus_t()));
        out = if l.k() % 2 == 1 { &out / &det } else { &out * &det };
    }
    Ok(out)
}

/// `u·(I - sB)^{-1} v` as a rational function of `s`, given `det(I - sB)`.
fn resolvent_form(b: &Matrix<BigInt>, det: &ZPoly, u: &[BigInt], v: &[BigInt]) -> QRationalFunction {
    let n = b.rows();
    let mut coeffs = Vec::with_capacity(n);
    let mut w = v.to_vec();
    for _ in 0..n {
        coeffs.push(u.iter().zip(&w).fold(BigInt::zero(), |acc, (x, y)| acc + x * y));
        w = b.mul_vec(&w);
    }
    let num = (det * &Polynomial::new(coeffs)).truncate(n);
    QRationalFunction::new(to_q(&num), to_q(det))
}

fn product_diagonal(x: &Matrix<BigInt>, y: &Matrix<BigInt>) -> Vec<BigInt> {
    (0..x.rows())
        .map(|i| (0..x.cols()).fold(BigInt::zero(), |acc, j| acc + &x[(i, j)] * &y[(j, i)]))
        .collect()
}

fn level_generating_term(l: &LevelMatrices) -> QRationalFunction {
    let det = l.b.det_one_minus_t();
    let jd = l.j.diagonal_entries();
    let aj = product_diagonal(&l.a, &l.j);
    let ja = product_diagonal(&l.j, &l.a);
    // u·B as a vector, for the B(I - sB)^{-1} term
    let jb: Vec<BigInt> = l.b.transpose().mul_vec(&jd);
    let odd = resolvent_form(&l.b, &det, &jd, &aj);
    let even0 = resolvent_form(&l.b, &det, &jb, &jd);
    let even1 = resolvent_form(&l.b, &det, &ja, &aj);
    let t = QRationalFunction::from_poly(QPoly::t());
    let half_t2 = QRationalFunction::from_poly(QPoly::monomial(q(1, 2), 2));
    let odd = &odd.compose_power(2) * &t;
    let even = &(&even0 + &even1).compose_power(2) * &half_t2;
    &odd + &even
}

/// `G_{σ,φ}` as a normalized rational function.
pub fn generating_rational(levels: &Levels) -> Result<QRationalFunction> {
    let mut out = QRationalFunction::zero();
    for l in levels.complete()? {
        let term = level_generating_term(l);
        out = if l.k() % 2 == 1 { &out + &term } else { &out - &term };
    }
    Ok(out)
}

/// Coefficients of `G` through `t^order`, assembled from individual counts.
pub fn generating_series_from_counts(levels: &Levels, order: usize) -> Result<QSeries> {
    let mut coeffs = vec![BigRational::zero(); order + 1];
    for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
        let p0 = count_levels(levels, Count::FlipFixed { period: n, delta: 0 })?;
        *c = if n % 2 == 1 {
            BigRational::from_integer(p0)
        } else {
            let p1 = count_levels(levels, Count::FlipFixed { period: n, delta: 1 })?;
            BigRational::new(p0 + p1, BigInt::from(2))
        };
    }
    Ok(QSeries::new(coeffs))
}

/// `Σ_m p_m t^m / m` through `t^order`, from a count table.
pub fn log_zeta_series(table: &CountTable, order: usize) -> QSeries {
    let mut coeffs = vec![BigRational::zero(); order + 1];
    for row in table.rows.iter().filter(|r| r.m <= order) {
        coeffs[row.m] = BigRational::new(row.p.clone(), BigInt::from(row.m));
    }
    QSeries::new(coeffs)
}

/// `ζ_σ(t²)^{1/2} exp(G(t))` through `t^order`.
pub fn flip_zeta_series(zeta: &QRationalFunction, g: &QRationalFunction, order: usize) -> Result<QSeries> {
    let root = zeta.compose_power(2).expand(order).sqrt()?;
    let e = g.expand(order).exp()?;
    Ok(&root * &e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::krieger::build_joint_chain;
    use crate::oracle::CorpusSystem;
    use crate::presentations::FlipSpec;

    fn levels(c: CorpusSystem) -> Levels {
        let sys = c.system();
        let FlipSpec::OneBlock { tau } = &sys.flip else { unreachable!() };
        Levels::build(&build_joint_chain(&sys.graph, tau).unwrap())
    }

    fn poly(c: &[i64]) -> QPoly {
        Polynomial::new(c.iter().map(|&x| q(x, 1)).collect())
    }

    fn ratio(n: &[i64], d: &[i64]) -> QRationalFunction {
        QRationalFunction::new(poly(n), poly(d))
    }

    #[test]
    fn full1_closed_forms() {
        let l = levels(CorpusSystem::Full1);
        assert_eq!(zeta_rational(&l).unwrap(), ratio(&[1], &[1, -1]));
        assert_eq!(generating_rational(&l).unwrap(), ratio(&[0, 1], &[1, -1]));
    }

    #[test]
    fn golden_zeta() {
        let l = levels(CorpusSystem::Golden);
        assert_eq!(zeta_rational(&l).unwrap(), ratio(&[1], &[1, -1, -1]));
    }

    #[test]
    fn even_shift_closed_forms() {
        let l = levels(CorpusSystem::Even);
        assert_eq!(zeta_rational(&l).unwrap(), ratio(&[1, 1], &[1, -1, -1]));
        // (1 - t²)(1 - t² - t⁴) = 1 - 2t² + t⁶
        let g = ratio(&[0, 2, 2, -1, -1, -2, -1], &[1, 0, -2, 0, 0, 0, 1]);
        assert_eq!(generating_rational(&l).unwrap(), g);
    }

    #[test]
    fn generating_expansion_matches_counts() {
        for c in CorpusSystem::ALL {
            let l = levels(c);
            let g = generating_rational(&l).unwrap().expand(12);
            assert_eq!(g, generating_series_from_counts(&l, 12).unwrap(), "{c:?}");
        }
    }

    #[test]
    fn trivial_flip_zeta_is_one() {
        let s = flip_zeta_series(&QRationalFunction::one(), &QRationalFunction::zero(), 5).unwrap();
        assert_eq!(s, QSeries::one(5));
    }

    #[test]
    fn one_point_flip_zeta() {
        let l = levels(CorpusSystem::Full1);
        let s = flip_zeta_series(&zeta_rational(&l).unwrap(), &generating_rational(&l).unwrap(), 6)
            .unwrap();
        let direct = &ratio(&[1], &[1, 0, -1]).expand(6).sqrt().unwrap()
            * &ratio(&[0, 1], &[1, -1]).expand(6).exp().unwrap();
        assert_eq!(s, direct);
        assert_eq!(s.coeff(0), &q(1, 1));
    }
}
