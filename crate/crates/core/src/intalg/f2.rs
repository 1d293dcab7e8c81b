use alloc::vec;
use alloc::vec::Vec;

use super::AlgebraError;

const WORD: usize = 64;

/// Dense matrix over F₂ with bit-packed rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(WORD);
        F2Matrix { rows, cols, words_per_row, data: vec![0; rows * words_per_row] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows<R: AsRef<[bool]>>(cols: usize, rows: &[R]) -> Result<Self, AlgebraError> {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(AlgebraError::DimensionMismatch { expected: cols, found: row.len() });
            }
            for (c, &bit) in row.iter().enumerate() {
                m.set(r, c, bit);
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.data[r * self.words_per_row + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        let w = &mut self.data[r * self.words_per_row + c / WORD];
        let mask = 1u64 << (c % WORD);
        if bit {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r * self.words_per_row + c / WORD] ^= 1u64 << (c % WORD);
    }

    /// `A · x` over F₂.
    pub fn apply(&self, x: &[bool]) -> Result<Vec<bool>, AlgebraError> {
        if x.len() != self.cols {
            return Err(AlgebraError::DimensionMismatch { expected: self.cols, found: x.len() });
        }
        Ok((0..self.rows)
            .map(|r| (0..self.cols).filter(|&c| x[c] && self.get(r, c)).count() % 2 == 1)
            .collect())
    }

    fn xor_row_into(&mut self, dst: usize, src: usize) {
        let w = self.words_per_row;
        for k in 0..w {
            let v = self.data[src * w + k];
            self.data[dst * w + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words_per_row;
        for k in 0..w {
            self.data.swap(a * w + k, b * w + k);
        }
    }
}

/// A solution of `A x = b` over F₂ together with a basis of `ker A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Solution {
    pub particular: Vec<bool>,
    pub kernel: Vec<Vec<bool>>,
}

/// Solves `A x = b` over F₂ by Gauss–Jordan elimination on the augmented
/// matrix. Free variables are set to zero in the particular solution, and
/// the kernel basis has one vector per free column (in column order).
pub fn solve_f2(a: &F2Matrix, b: &[bool]) -> Result<Option<F2Solution>, AlgebraError> {
    if b.len() != a.rows() {
        return Err(AlgebraError::DimensionMismatch { expected: a.rows(), found: b.len() });
    }
    let n = a.cols();
    let mut aug = F2Matrix::zeros(a.rows(), n + 1);
    for r in 0..a.rows() {
        for c in 0..n {
            if a.get(r, c) {
                aug.set(r, c, true);
            }
        }
        aug.set(r, n, b[r]);
    }

    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == aug.rows() {
            break;
        }
        let Some(p) = (row..aug.rows()).find(|&r| aug.get(r, col)) else {
            continue;
        };
        aug.swap_rows(row, p);
        for r in 0..aug.rows() {
            if r != row && aug.get(r, col) {
                aug.xor_row_into(r, row);
            }
        }
        pivot_cols.push(col);
        row += 1;
    }

    if (row..aug.rows()).any(|r| aug.get(r, n)) {
        return Ok(None);
    }

    let mut particular = vec![false; n];
    for (r, &c) in pivot_cols.iter().enumerate() {
        particular[c] = aug.get(r, n);
    }

    let mut is_pivot = vec![false; n];
    for &c in &pivot_cols {
        is_pivot[c] = true;
    }
    let kernel = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![false; n];
            v[f] = true;
            for (r, &c) in pivot_cols.iter().enumerate() {
                v[c] = aug.get(r, f);
            }
            v
        })
        .collect();

    Ok(Some(F2Solution { particular, kernel }))
}

/// Rank of an F₂ matrix.
pub fn rank_f2(a: &F2Matrix) -> usize {
    let zero = vec![false; a.rows()];
    let sol = solve_f2(a, &zero).expect("shape is consistent");
    a.cols() - sol.expect("homogeneous systems are solvable").kernel.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn enumerate(a: &F2Matrix, b: &[bool]) -> Vec<Vec<bool>> {
        let n = a.cols();
        (0u32..1 << n)
            .map(|mask| (0..n).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|x| a.apply(x).unwrap() == b)
            .collect()
    }

    #[test]
    fn identity_system() {
        let a = F2Matrix::identity(2);
        let s = solve_f2(&a, &[true, false]).unwrap().unwrap();
        assert_eq!(s.particular, vec![true, false]);
        assert!(s.kernel.is_empty());
    }

    #[test]
    fn one_equation_two_unknowns() {
        let a = F2Matrix::from_rows(2, &[[true, true]]).unwrap();
        let s = solve_f2(&a, &[true]).unwrap().unwrap();
        // exhaustive: solutions are (1,0) and (0,1); kernel is {(0,0),(1,1)}
        assert_eq!(enumerate(&a, &[true]), vec![vec![true, false], vec![false, true]]);
        assert_eq!(s.particular, vec![true, false]);
        assert_eq!(s.kernel, vec![vec![true, true]]);
    }

    #[test]
    fn inconsistent() {
        let a = F2Matrix::from_rows(2, &[[true, true], [true, true]]).unwrap();
        assert!(enumerate(&a, &[true, false]).is_empty());
        assert_eq!(solve_f2(&a, &[true, false]).unwrap(), None);
    }

    #[test]
    fn dimension_mismatch() {
        let a = F2Matrix::identity(3);
        assert!(solve_f2(&a, &[true]).is_err());
    }

    #[test]
    fn wide_rows_cross_word_boundary() {
        let n = 130;
        let mut a = F2Matrix::zeros(1, n);
        a.set(0, 0, true);
        a.set(0, 129, true);
        let s = solve_f2(&a, &[true]).unwrap().unwrap();
        assert_eq!(a.apply(&s.particular).unwrap(), vec![true]);
        assert_eq!(s.kernel.len(), n - 1);
    }

    proptest! {
        #[test]
        fn agrees_with_exhaustive_search(
            rows in 0usize..8,
            cols in 0usize..=12,
            bits in proptest::collection::vec(any::<bool>(), 8 * 12),
            rhs in proptest::collection::vec(any::<bool>(), 8),
        ) {
            let mut a = F2Matrix::zeros(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    a.set(r, c, bits[r * 12 + c]);
                }
            }
            let b = &rhs[..rows];
            let all = enumerate(&a, b);
            match solve_f2(&a, b).unwrap() {
                None => prop_assert!(all.is_empty()),
                Some(s) => {
                    prop_assert_eq!(a.apply(&s.particular).unwrap(), b.to_vec());
                    prop_assert_eq!(all.len(), 1usize << s.kernel.len());
                    for k in &s.kernel {
                        prop_assert!(a.apply(k).unwrap().iter().all(|x| !x));
                    }
                    let kernel_rank = {
                        let m = F2Matrix::from_rows(cols, &s.kernel).unwrap();
                        rank_f2(&m)
                    };
                    prop_assert_eq!(kernel_rank, s.kernel.len());
                }
            }
        }
    }
}
