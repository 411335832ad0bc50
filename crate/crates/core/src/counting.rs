//! Periodic and flip-fixed point counts from the matrix formulas.
//!
//! For a shift of finite type with transition matrix `A` and flip matrix
//! `J`:
//!
//! ```text
//! p_m        = tr(A^m)
//! p_{2m,0}   = 𝒮[J^Δ A^m J^Δ]
//! p_{2m,1}   = 𝒮[(JA)^Δ A^{m-1} (AJ)^Δ]
//! p_{2m-1,0} = 𝒮[J^Δ A^{m-1} (AJ)^Δ]
//! ```
//!
//! For a sofic shift the same expressions are summed over levels with sign
//! `(-1)^{k+1}`, with `A_k` in the traces and `B_k` in the middle powers.
//! Since the outer factors are diagonal, every `𝒮[D₁ M^e D₂]` is evaluated
//! as `u·M^e v` with `e` matrix-vector products.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Ring;
use crate::signed_subsets::{LevelMatrices, Levels};

/// Reduces `p_{m,n}` to `p_{m,δ}`: `δ = 0` for odd `m`, `n mod 2` otherwise.
pub fn reduce_index(m: usize, n: i64) -> (usize, u8) {
    assert!(m >= 1);
    if m % 2 == 1 {
        (m, 0)
    } else {
        (m, n.rem_euclid(2) as u8)
    }
}

/// `M^Δ`.
pub fn matrix_diag<T: Ring>(m: &Matrix<T>) -> Matrix<T> {
    m.diag()
}

/// `𝒮[M]`.
pub fn entry_sum<T: Ring>(m: &Matrix<T>) -> T {
    m.entry_sum()
}

/// What to count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Count {
    /// `p_m`.
    Periodic(usize),
    /// `p_{N,δ}` with `δ ∈ {0, 1}` (reduced first).
    FlipFixed { period: usize, delta: u8 },
}

/// Diagonal of `XY`.
fn product_diagonal<T: Ring>(x: &Matrix<T>, y: &Matrix<T>) -> Vec<T> {
    (0..x.rows())
        .map(|i| (0..x.cols()).fold(T::zero(), |acc, j| acc + x[(i, j)].clone() * y[(j, i)].clone()))
        .collect()
}

/// `u · M^e v`.
fn sandwich<T: Ring>(u: &[T], m: &Matrix<T>, e: usize, v: &[T]) -> T {
    let mut w = v.to_vec();
    for _ in 0..e {
        w = m.mul_vec(&w);
    }
    u.iter().zip(&w).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
}

/// The flip-fixed term on one level: `A`, the middle matrix `B` and `J`.
fn flip_term<T: Ring>(a: &Matrix<T>, b: &Matrix<T>, j: &Matrix<T>, period: usize, delta: u8) -> T {
    let (period, delta) = reduce_index(period, delta as i64);
    let jd = j.diagonal_entries();
    if period % 2 == 1 {
        let aj = product_diagonal(a, j);
        sandwich(&jd, b, (period - 1) / 2, &aj)
    } else if delta == 0 {
        sandwich(&jd, b, period / 2, &jd)
    } else {
        let ja = product_diagonal(j, a);
        let aj = product_diagonal(a, j);
        sandwich(&ja, b, period / 2 - 1, &aj)
    }
}

fn check_flip_pair<T: Ring>(a: &Matrix<T>, j: &Matrix<T>) -> Result<()> {
    if !a.is_square() || !j.is_square() || a.rows() != j.rows() {
        return Err(Error::FlipIncompatible);
    }
    if j * j != Matrix::identity(j.rows()) || j * a != &a.transpose() * j {
        return Err(Error::FlipIncompatible);
    }
    Ok(())
}

/// Counts for a shift of finite type directly from `(A, J)`.
pub fn count_sft<T: Ring>(a: &Matrix<T>, j: &Matrix<T>, what: Count) -> Result<T> {
    check_flip_pair(a, j)?;
    Ok(match what {
        Count::Periodic(m) => a.trace_of_power(m as u32),
        Count::FlipFixed { period, delta } => flip_term(a, a, j, period, delta),
    })
}

/// Counts for a sofic shift from its level matrices.
pub fn count_levels(levels: &Levels, what: Count) -> Result<BigInt> {
    let levels = levels.complete()?;
    Ok(signed_level_sum(levels, |l| match what {
        Count::Periodic(m) => l.a.trace_of_power(m as u32),
        Count::FlipFixed { period, delta } => flip_term(&l.a, &l.b, &l.j, period, delta),
    }))
}

/// `Σ_k (-1)^{k+1} term(level k)`, in ascending `k`.
pub fn signed_level_sum(levels: &[LevelMatrices], term: impl Fn(&LevelMatrices) -> BigInt) -> BigInt {
    levels.iter().fold(BigInt::from(0), |acc, l| {
        let t = term(l);
        if l.k() % 2 == 1 {
            acc + t
        } else {
            acc - t
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRow {
    pub m: usize,
    pub p: BigInt,
    pub p0: BigInt,
    /// Only for even `m`; for odd `m`, `p_{m,1} = p_{m,0}`.
    pub p1: Option<BigInt>,
}

/// `p_m`, `p_{m,0}` and `p_{m,1}` for `m = 1..=M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub rows: Vec<CountRow>,
    /// Which formula produced the values.
    pub provenance: String,
}

impl CountTable {
    fn build(max_m: usize, provenance: &str, count: impl Fn(Count) -> Result<BigInt>) -> Result<CountTable> {
        let rows = (1..=max_m)
            .map(|m| {
                Ok(CountRow {
                    m,
                    p: count(Count::Periodic(m))?,
                    p0: count(Count::FlipFixed { period: m, delta: 0 })?,
                    p1: if m % 2 == 0 {
                        Some(count(Count::FlipFixed { period: m, delta: 1 })?)
                    } else {
                        None
                    },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CountTable { rows, provenance: provenance.to_string() })
    }

    pub fn from_levels(levels: &Levels, max_m: usize) -> Result<CountTable> {
        CountTable::build(max_m, "levels", |c| count_levels(levels, c))
    }

    pub fn from_sft(a: &Matrix<BigInt>, j: &Matrix<BigInt>, max_m: usize) -> Result<CountTable> {
        CountTable::build(max_m, "sft", |c| count_sft(a, j, c))
    }
}

/// Tab-separated, header `m p_m p_{m,0} p_{m,1}`, `-` where undefined.
impl fmt::Display for CountTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "m\tp_m\tp_{{m,0}}\tp_{{m,1}}")?;
        for r in &self.rows {
            let p1 = r.p1.as_ref().map_or("-".to_string(), |x| x.to_string());
            writeln!(f, "{}\t{}\t{}\t{}", r.m, r.p, r.p0, p1)?;
        }
        Ok(())
    }
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

    fn m(rows: Vec<Vec<i64>>) -> Matrix<i64> {
        Matrix::from_rows(rows)
    }

    #[test]
    fn reduce_index_examples() {
        assert_eq!(reduce_index(4, 7), (4, 1));
        assert_eq!(reduce_index(5, -3), (5, 0));
        assert_eq!(reduce_index(6, 0), (6, 0));
    }

    #[test]
    fn diag_and_entry_sum() {
        let x = m(vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(entry_sum(&x), 10);
        assert_eq!(matrix_diag(&x), m(vec![vec![1, 0], vec![0, 4]]));
        assert_eq!(entry_sum(&matrix_diag(&x)), x.trace());
        assert_eq!(entry_sum(&Matrix::<i64>::zeros(2, 2)), 0);
    }

    #[test]
    fn sft_count_examples() {
        let golden = m(vec![vec![1, 1], vec![1, 0]]);
        let id = Matrix::identity(2);
        assert_eq!(count_sft(&golden, &id, Count::FlipFixed { period: 2, delta: 0 }).unwrap(), 3);
        assert_eq!(count_sft(&golden, &id, Count::FlipFixed { period: 1, delta: 0 }).unwrap(), 1);
        let full = m(vec![vec![1, 1], vec![1, 1]]);
        let swap = m(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(count_sft(&full, &swap, Count::FlipFixed { period: 2, delta: 1 }).unwrap(), 2);
    }

    #[test]
    fn sft_count_rejects_incompatible_flip() {
        let a = m(vec![vec![0, 1], vec![0, 1]]);
        let id = Matrix::identity(2);
        assert_eq!(count_sft(&a, &id, Count::Periodic(1)), Err(Error::FlipIncompatible));
    }

    #[test]
    fn even_shift_examples() {
        let l = levels(CorpusSystem::Even);
        let c = |what| count_levels(&l, what).unwrap();
        assert_eq!(c(Count::FlipFixed { period: 1, delta: 0 }), BigInt::from(2));
        assert_eq!(c(Count::FlipFixed { period: 3, delta: 0 }), BigInt::from(3));
        assert_eq!(c(Count::FlipFixed { period: 2, delta: 0 }), BigInt::from(2));
        assert_eq!(c(Count::FlipFixed { period: 2, delta: 1 }), BigInt::from(2));
        assert_eq!(c(Count::Periodic(3)), BigInt::from(5));
    }

    #[test]
    fn table_format() {
        let t = CountTable::from_levels(&levels(CorpusSystem::Full1), 2).unwrap();
        assert_eq!(t.to_string(), "m\tp_m\tp_{m,0}\tp_{m,1}\n1\t1\t1\t-\n2\t1\t1\t1\n");
    }
}
