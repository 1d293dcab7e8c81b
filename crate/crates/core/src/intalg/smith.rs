use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Result of [`smith_normal_form`]: unimodular `u`, `v` with `u * a * v = d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries `d[i][i]` for `i < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }
}

/// Internal form that also carries `v⁻¹`, needed for lattice bases.
pub(crate) struct FullSmith {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub d: IntMatrix,
}

/// Smith normal form of an integer matrix.
///
/// Pivots on the smallest nonzero absolute value in the active block, with
/// ties broken by lowest row and then lowest column, so the output is a
/// deterministic function of the input.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let full = smith_full(a);
    SmithDecomposition { u: full.u, v: full.v, d: full.d }
}

pub(crate) fn smith_full(a: &IntMatrix) -> FullSmith {
    let m = a.rows();
    let n = a.cols();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            let Some((pr, pc)) = find_pivot(&d, t) else {
                return FullSmith { u, v, v_inv, d };
            };
            if pr != t {
                d.swap_rows(t, pr);
                u.swap_rows(t, pr);
            }
            if pc != t {
                d.swap_cols(t, pc);
                v.swap_cols(t, pc);
                v_inv.swap_rows(t, pc);
            }

            let mut clean = true;
            for i in t + 1..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -(d.get(i, t) / d.get(t, t));
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -(d.get(t, j) / d.get(t, t));
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                // v_inv <- F^{-1} v_inv, F^{-1} subtracts q * row j from row t
                v_inv.add_row_multiple(t, j, &-&q);
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }

            let pivot = d.get(t, t).clone();
            let bad_row = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(d.get(i, j) % &pivot).is_zero()));
            if let Some(i) = bad_row {
                let one = BigInt::from(1);
                d.add_row_multiple(t, i, &one);
                u.add_row_multiple(t, i, &one);
                continue;
            }
            break;
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    FullSmith { u, v, v_inv, d }
}

fn find_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for r in t..d.rows() {
        for c in t..d.cols() {
            let x = d.get(r, c);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            let better = match &best {
                None => true,
                Some((_, _, b)) => ax < *b,
            };
            if better {
                best = Some((r, c, ax));
            }
        }
    }
    best.map(|(r, c, _)| (r, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intalg::big_vec;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn check(a: &IntMatrix) {
        let s = smith_full(a);
        assert_eq!(&(&s.u * a) * &s.v, s.d);
        assert!(s.u.determinant().unwrap().abs() == BigInt::from(1));
        assert!(s.v.determinant().unwrap().abs() == BigInt::from(1));
        assert!((&s.v * &s.v_inv).is_identity());
        let diag: Vec<BigInt> = (0..a.rows().min(a.cols())).map(|i| s.d.get(i, i).clone()).collect();
        for r in 0..s.d.rows() {
            for c in 0..s.d.cols() {
                if r != c {
                    assert!(s.d.get(r, c).is_zero());
                }
            }
        }
        for w in diag.windows(2) {
            assert!(!w[0].is_negative() && !w[1].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero(), "zeros must trail: {diag:?}");
            } else {
                assert!(w[1].is_multiple_of(&w[0]), "divisibility: {diag:?}");
            }
        }
    }

    #[test]
    fn identity_matrix() {
        let a = IntMatrix::identity(2);
        let s = smith_normal_form(&a);
        assert_eq!(s.d, a);
        check(&a);
    }

    #[test]
    fn two_by_two_example() {
        // d1 = gcd(2, 4, 0, 6) = 2, d1 * d2 = |det| = 12
        let a = IntMatrix::from_rows(2, &[[2, 4], [0, 6]]).unwrap();
        let s = smith_normal_form(&a);
        assert_eq!(s.diagonal(), big_vec(&[2, 6]));
        check(&a);
    }

    #[test]
    fn zero_matrix() {
        let a = IntMatrix::zeros(3, 2);
        let s = smith_normal_form(&a);
        assert!(s.d.is_zero());
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn empty_matrices() {
        for (r, c) in [(0, 0), (0, 3), (2, 0)] {
            let a = IntMatrix::zeros(r, c);
            let s = smith_normal_form(&a);
            assert_eq!((s.u.rows(), s.v.rows()), (r, c));
            check(&a);
        }
    }

    #[test]
    fn needs_divisibility_fix() {
        // diag(2, 3) is not in Smith form; the result must be diag(1, 6).
        let a = IntMatrix::from_rows(2, &[[2, 0], [0, 3]]).unwrap();
        assert_eq!(smith_normal_form(&a).diagonal(), big_vec(&[1, 6]));
        check(&a);
    }

    #[test]
    fn deterministic() {
        let a = IntMatrix::from_rows(3, &[[4, -6, 2], [3, 9, -12], [0, 5, 5]]).unwrap();
        assert_eq!(smith_normal_form(&a), smith_normal_form(&a));
    }

    proptest! {
        #[test]
        fn invariants_hold(rows in 0usize..6, cols in 0usize..6, seed in proptest::collection::vec(-10i64..=10, 36)) {
            let entries = seed[..rows * cols].iter().map(|&x| BigInt::from(x)).collect();
            let a = IntMatrix::from_entries(rows, cols, entries).unwrap();
            check(&a);
        }
    }
}
