//! Unit-diagonal upper-triangular matrices and the Parikh matrix morphism.
//!
//! All indices in this module are 0-based: the generator for the rank-`q`
//! letter has its off-diagonal 1 at `(q, q + 1)`, and entry `(i, j + 1)` of
//! a Parikh matrix counts the factor spanning ranks `i..=j`.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::word::{apply_permutation, permute_alphabet, OrderedAlphabet, Permutation, Word};

/// An element of the monoid of `dim × dim` upper-triangular matrices with
/// nonnegative integer entries and unit diagonal. Dense, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ParikhMatrix {
    dim: usize,
    entries: Vec<u64>,
}

impl ParikhMatrix {
    pub fn identity(dim: usize) -> ParikhMatrix {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        ParikhMatrix { dim, entries }
    }

    /// Validates the unit-diagonal upper-triangular shape.
    pub fn from_rows(rows: Vec<Vec<u64>>) -> Result<ParikhMatrix> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if (i == j && v != 1) || (j < i && v != 0) {
                    return Err(Error::InvalidMatrix(format!("entry ({i},{j}) is {v}")));
                }
            }
            entries.extend(row);
        }
        Ok(ParikhMatrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u64]> {
        self.entries.chunks(self.dim.max(1))
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        self.rows().map(<[u64]>::to_vec).collect()
    }

    /// The second diagonal, `(0,1), (1,2), ...`.
    pub fn second_diagonal(&self) -> Vec<u64> {
        (1..self.dim).map(|i| self.get(i - 1, i)).collect()
    }

    pub fn is_unit_upper_triangular(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| match j.cmp(&i) {
                std::cmp::Ordering::Less => self.get(i, j) == 0,
                std::cmp::Ordering::Equal => self.get(i, j) == 1,
                std::cmp::Ordering::Greater => true,
            })
        })
    }

    pub fn multiply(&self, other: &ParikhMatrix) -> Result<ParikhMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let n = self.dim;
        let mut entries = vec![0u64; n * n];
        for i in 0..n {
            // both factors are upper triangular, so only i <= k <= j contributes
            for j in i..n {
                let mut acc = 0u64;
                for k in i..=j {
                    let term = self
                        .get(i, k)
                        .checked_mul(other.get(k, j))
                        .ok_or(Error::ArithmeticOverflow)?;
                    acc = acc.checked_add(term).ok_or(Error::ArithmeticOverflow)?;
                }
                entries[i * n + j] = acc;
            }
        }
        Ok(ParikhMatrix { dim: n, entries })
    }

    /// Right multiplication by the rank-`q` generator: column `q` is added to
    /// column `q + 1`.
    fn push_generator(&mut self, q: usize) -> Result<()> {
        let n = self.dim;
        for i in 0..=q {
            let add = self.entries[i * n + q];
            let cell = &mut self.entries[i * n + q + 1];
            *cell = cell.checked_add(add).ok_or(Error::ArithmeticOverflow)?;
        }
        Ok(())
    }
}

impl fmt::Display for ParikhMatrix {
    /// One row per line, entries separated by single spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            writeln!(f, "{}", row.iter().join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for ParikhMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl serde::Serialize for ParikhMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.rows())
    }
}

/// Identity of size `s + 1` plus a single 1 at `(q, q + 1)`.
pub fn generator_matrix(q: usize, s: usize) -> Result<ParikhMatrix> {
    if q >= s {
        return Err(Error::IndexOutOfRange { index: q, size: s });
    }
    let mut m = ParikhMatrix::identity(s + 1);
    m.entries[q * (s + 1) + q + 1] = 1;
    Ok(m)
}

/// `Ψ_Σ(w)`, the product of the generators of the letters of `w`.
pub fn parikh_matrix_of(w: &Word, sigma: &OrderedAlphabet) -> Result<ParikhMatrix> {
    let mut m = ParikhMatrix::identity(sigma.len() + 1);
    for q in sigma.ranks_of(w)? {
        m.push_generator(q)?;
    }
    Ok(m)
}

/// The word spelled by ranks `i..=j` of `sigma`.
pub fn alphabet_factor(sigma: &OrderedAlphabet, i: usize, j: usize) -> Result<Word> {
    if j >= sigma.len() {
        return Err(Error::IndexOutOfRange {
            index: j,
            size: sigma.len(),
        });
    }
    if i > j {
        return Err(Error::IndexOutOfRange { index: i, size: j + 1 });
    }
    Ok(sigma.letters()[i..=j].iter().copied().collect())
}

/// Equality of Parikh matrices under `sigma`.
pub fn m_equivalent(w: &Word, w2: &Word, sigma: &OrderedAlphabet) -> Result<bool> {
    Ok(parikh_matrix_of(w, sigma)? == parikh_matrix_of(w2, sigma)?)
}

/// Checks `Ψ_Σ(σw) = Ψ_{σΣ}(w)`.
pub fn permutation_transfer_holds(w: &Word, perm: &Permutation, sigma: &OrderedAlphabet) -> Result<bool> {
    let moved = apply_permutation(perm, w, sigma)?;
    let reordered = permute_alphabet(perm, sigma)?;
    Ok(parikh_matrix_of(&moved, sigma)? == parikh_matrix_of(w, &reordered)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn ord(s: &str) -> OrderedAlphabet {
        s.parse().unwrap()
    }

    #[test]
    fn generators() {
        let g = generator_matrix(0, 3).unwrap();
        assert_eq!(
            g.to_rows(),
            vec![vec![1, 1, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]
        );
        let g = generator_matrix(2, 3).unwrap();
        assert_eq!(g.get(2, 3), 1);
        assert_eq!(g.entries.iter().sum::<u64>(), 5);
        let g = generator_matrix(1, 2).unwrap();
        assert_eq!(g.to_rows(), vec![vec![1, 0, 0], vec![0, 1, 1], vec![0, 0, 1]]);
        assert_eq!(
            generator_matrix(3, 3),
            Err(Error::IndexOutOfRange { index: 3, size: 3 })
        );
    }

    #[test]
    fn babcc_matrix() {
        let expected = vec![vec![1, 1, 1, 2], vec![0, 1, 2, 4], vec![0, 0, 1, 2], vec![0, 0, 0, 1]];
        let m = parikh_matrix_of(&w("babcc"), &ord("abc")).unwrap();
        assert_eq!(m.to_rows(), expected);
        assert_eq!(m.to_string(), "1 1 1 2\n0 1 2 4\n0 0 1 2\n0 0 0 1\n");

        // explicit product Ψ(b)Ψ(a)Ψ(b)Ψ(c)Ψ(c)
        let product = [1, 0, 1, 2, 2]
            .iter()
            .map(|&q| generator_matrix(q, 3).unwrap())
            .try_fold(ParikhMatrix::identity(4), |acc, g| acc.multiply(&g))
            .unwrap();
        assert_eq!(product.to_rows(), expected);
    }

    #[test]
    fn identity_cases() {
        let m = parikh_matrix_of(&w("babcc"), &ord("abc")).unwrap();
        assert_eq!(ParikhMatrix::identity(4).multiply(&m).unwrap(), m);
        assert_eq!(
            parikh_matrix_of(&Word::empty(), &ord("cab")).unwrap(),
            ParikhMatrix::identity(4)
        );
        assert!(matches!(
            ParikhMatrix::identity(3).multiply(&m),
            Err(Error::DimensionMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn abc_entries_are_one() {
        let m = parikh_matrix_of(&w("abc"), &ord("abc")).unwrap();
        for i in 0..3 {
            for j in i + 1..4 {
                assert_eq!(m.get(i, j), 1, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn factors() {
        assert_eq!(alphabet_factor(&ord("abc"), 0, 2).unwrap(), w("abc"));
        assert_eq!(alphabet_factor(&ord("abc"), 1, 1).unwrap(), w("b"));
        assert_eq!(alphabet_factor(&ord("cab"), 0, 1).unwrap(), w("ca"));
        assert!(alphabet_factor(&ord("abc"), 2, 1).is_err());
        assert!(alphabet_factor(&ord("abc"), 0, 3).is_err());
    }

    #[test]
    fn m_equivalence_examples() {
        assert!(m_equivalent(&w("acb"), &w("cab"), &ord("abc")).unwrap());
        assert!(!m_equivalent(&w("acb"), &w("cab"), &ord("acb")).unwrap());
        assert!(m_equivalent(&w("babcbabcbabcbab"), &w("bbacabbcabbcbba"), &ord("abc")).unwrap());
        assert!(m_equivalent(&w("cbbabcab"), &w("bcabcbba"), &ord("abc")).unwrap());
        assert!(m_equivalent(&w("ab"), &w("ad"), &ord("abc")).is_err());
    }

    #[test]
    fn permutation_transfer() {
        let swap = Permutation::transposition(3, 0, 2).unwrap();
        assert!(permutation_transfer_holds(&w("babcc"), &swap, &ord("abc")).unwrap());
        assert!(permutation_transfer_holds(&w("babcc"), &Permutation::identity(3), &ord("abc")).unwrap());
    }

    #[test]
    fn from_rows_validates() {
        assert!(ParikhMatrix::from_rows(vec![vec![1, 5], vec![0, 1]]).is_ok());
        assert!(ParikhMatrix::from_rows(vec![vec![1, 5], vec![1, 1]]).is_err());
        assert!(ParikhMatrix::from_rows(vec![vec![2, 5], vec![0, 1]]).is_err());
        assert!(ParikhMatrix::from_rows(vec![vec![1, 5, 0], vec![0, 1]]).is_err());
    }
}
