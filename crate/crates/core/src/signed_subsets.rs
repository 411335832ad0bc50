//! Level-`k` subset alphabets and the signed matrices `A_k`, `B_k`, `J_k`.
//!
//! `𝒜_k` consists of the `k`-element sets of chain states sharing one label.
//! For `S₁, S₂ ∈ 𝒜_k`, `A_k(S₁, S₂)` sums `sgn(f)` over the bijections
//! `f: S₁ → S₂` with `A(s, f(s)) = 1` for every `s`, the sign being the
//! parity of inversions of `f` in the chain's state order; `B_k` records
//! whether any such bijection exists; `J_k(S, S*)` is the sign of the star
//! map restricted to `S`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::krieger::JointStateChain;
use crate::linalg::Matrix;

/// `𝒜_k`, members as sorted state lists in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetAlphabet {
    pub k: usize,
    pub members: Vec<Vec<usize>>,
}

impl SubsetAlphabet {
    pub fn new(labels: &[usize], k: usize) -> SubsetAlphabet {
        assert!(k >= 1);
        let mut members = Vec::new();
        let symbols = labels.iter().copied().max().map_or(0, |m| m + 1);
        for a in 0..symbols {
            let fiber: Vec<usize> = (0..labels.len()).filter(|&s| labels[s] == a).collect();
            combinations(&fiber, k, &mut Vec::new(), 0, &mut members);
        }
        members.sort();
        SubsetAlphabet { k, members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index_of(&self, set: &[usize]) -> Option<usize> {
        self.members.binary_search_by(|m| m.as_slice().cmp(set)).ok()
    }
}

fn combinations(
    items: &[usize],
    k: usize,
    current: &mut Vec<usize>,
    from: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if current.len() == k {
        out.push(current.clone());
        return;
    }
    for i in from..items.len() {
        if items.len() - i < k - current.len() {
            break;
        }
        current.push(items[i]);
        combinations(items, k, current, i + 1, out);
        current.pop();
    }
}

/// Parity sign of a permutation of `0..n` given as an image vector.
fn inversion_sign(perm: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[j] < perm[i] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `(Σ_f sgn(f), [some f exists])` over the `A`-compatible bijections
/// `S₁ → S₂`; both sets sorted in state order.
pub fn injection_sign_sum(a: &Matrix<i64>, s1: &[usize], s2: &[usize]) -> (i64, bool) {
    assert_eq!(s1.len(), s2.len());
    let k = s1.len();
    let mut image = Vec::with_capacity(k);
    let mut used = vec![false; k];
    let mut sum = 0;
    let mut any = false;
    fn walk(
        a: &Matrix<i64>,
        s1: &[usize],
        s2: &[usize],
        image: &mut Vec<usize>,
        used: &mut [bool],
        sum: &mut i64,
        any: &mut bool,
    ) {
        let i = image.len();
        if i == s1.len() {
            *sum += inversion_sign(image);
            *any = true;
            return;
        }
        for j in 0..s2.len() {
            if !used[j] && a[(s1[i], s2[j])] != 0 {
                used[j] = true;
                image.push(j);
                walk(a, s1, s2, image, used, sum, any);
                image.pop();
                used[j] = false;
            }
        }
    }
    walk(a, s1, s2, &mut image, &mut used, &mut sum, &mut any);
    (sum, any)
}

/// `A_k`, `B_k` and `J_k` on `𝒜_k`.
#[derive(Clone, Debug)]
pub struct LevelMatrices {
    pub alphabet: SubsetAlphabet,
    pub a: Matrix<BigInt>,
    pub b: Matrix<BigInt>,
    pub j: Matrix<BigInt>,
}

impl LevelMatrices {
    pub fn k(&self) -> usize {
        self.alphabet.k
    }

    pub fn size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let n = self.size();
        let mut factorial = BigInt::one();
        for i in 2..=self.k() {
            factorial *= i;
        }
        for r in 0..n {
            for c in 0..n {
                let x = &self.a[(r, c)];
                if x.magnitude() > factorial.magnitude() {
                    return Err(format!("|A_k| exceeds k! at ({r},{c})"));
                }
                if self.b[(r, c)].is_zero() && !x.is_zero() {
                    return Err(format!("B_k = 0 but A_k ≠ 0 at ({r},{c})"));
                }
            }
        }
        if &self.j * &self.j != Matrix::identity(n) {
            return Err("J_k² ≠ I".into());
        }
        if &self.j * &self.a != &self.a.transpose() * &self.j {
            return Err("J_k A_k ≠ A_kᵀ J_k".into());
        }
        // B_k is unsigned, so its symmetry is B_k(S, T) = B_k(T*, S*): the
        // identity holds for |J_k|, not for J_k itself
        let pairing = self.j.map(|x| x.abs());
        if &pairing * &self.b != &self.b.transpose() * &pairing {
            return Err("|J_k| B_k ≠ B_kᵀ |J_k|".into());
        }
        Ok(())
    }

    /// `level k / size n` followed by `A_k`, `B_k`, `J_k` in row-major
    /// order, one row per line.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        writeln!(out, "level {} / size {}", self.k(), self.size()).unwrap();
        for (name, m) in [("A", &self.a), ("B", &self.b), ("J", &self.j)] {
            writeln!(out, "{name}").unwrap();
            write!(out, "{m}").unwrap();
        }
        out
    }
}

/// Builds the level matrices of `chain` at level `k`, asserting their
/// invariants.
pub fn build_level_matrices(chain: &JointStateChain, k: usize) -> LevelMatrices {
    let alphabet = SubsetAlphabet::new(&chain.labels, k);
    let n = alphabet.len();
    let mut a = Matrix::zeros(n, n);
    let mut b = Matrix::zeros(n, n);
    let mut j = Matrix::zeros(n, n);
    for (r, s1) in alphabet.members.iter().enumerate() {
        for (c, s2) in alphabet.members.iter().enumerate() {
            let (sum, any) = injection_sign_sum(&chain.a, s1, s2);
            a[(r, c)] = BigInt::from(sum);
            if any {
                b[(r, c)] = BigInt::one();
            }
        }
        let mut image: Vec<usize> = s1.iter().map(|&s| chain.star[s]).collect();
        let mut sorted = image.clone();
        sorted.sort_unstable();
        let target = alphabet.index_of(&sorted).expect("star maps 𝒜_k into itself");
        for x in image.iter_mut() {
            *x = sorted.binary_search(x).unwrap();
        }
        j[(r, target)] = BigInt::from(inversion_sign(&image));
    }
    let level = LevelMatrices { alphabet, a, b, j };
    if let Err(msg) = level.check_invariants() {
        panic!("level {k} invariant violated: {msg}");
    }
    level
}

/// All nonempty levels `k = 1..=r` of a chain, `r` the largest fiber.
#[derive(Clone, Debug)]
pub struct Levels {
    pub levels: Vec<LevelMatrices>,
    /// `r = max{k : 𝒜_k ≠ ∅}`.
    pub r: usize,
}

impl Levels {
    pub fn build(chain: &JointStateChain) -> Levels {
        let r = chain.fiber_sizes().into_iter().max().unwrap_or(0);
        Levels { levels: (1..=r).map(|k| build_level_matrices(chain, k)).collect(), r }
    }

    /// Levels in ascending `k`, erroring when some nonempty level is missing.
    pub fn complete(&self) -> Result<&[LevelMatrices]> {
        for k in 1..=self.r {
            match self.levels.get(k - 1) {
                Some(l) if l.k() == k => {}
                _ => return Err(Error::IncompleteLevels { k }),
            }
        }
        Ok(&self.levels)
    }

    pub fn dump(&self) -> String {
        self.levels.iter().map(|l| l.dump()).collect()
    }
}
