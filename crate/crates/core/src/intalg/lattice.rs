//! Lattice computations on presented abelian groups `Zⁿ / rowspan(R)`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::smith::smith_full;
use super::{AlgebraError, IntMatrix};

/// Solves `a · x = b` over the integers. Returns `None` when no integral
/// solution exists.
pub fn solve_int(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, AlgebraError> {
    if b.len() != a.rows() {
        return Err(AlgebraError::DimensionMismatch { expected: a.rows(), found: b.len() });
    }
    let s = smith_full(a);
    let ub = s.u.apply(b)?;
    let k = a.rows().min(a.cols());
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, rhs) in ub.iter().enumerate() {
        let d = if i < k { s.d.get(i, i) } else { &BigInt::ZERO };
        if d.is_zero() {
            if !rhs.is_zero() {
                return Ok(None);
            }
        } else {
            let (q, r) = rhs.div_rem(d);
            if !r.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        }
    }
    Ok(Some(s.v.apply(&y)?))
}

/// Is `x` an integer combination of the rows of `relations`?
pub fn in_row_lattice(relations: &IntMatrix, x: &[BigInt]) -> Result<bool, AlgebraError> {
    if x.len() != relations.cols() {
        return Err(AlgebraError::DimensionMismatch { expected: relations.cols(), found: x.len() });
    }
    if x.iter().all(Zero::is_zero) {
        return Ok(true);
    }
    Ok(solve_int(&relations.transpose(), x)?.is_some())
}

/// A basis of the integer kernel `{x : a · x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let s = smith_full(a);
    let rank = (0..a.rows().min(a.cols())).take_while(|&i| !s.d.get(i, i).is_zero()).count();
    (rank..a.cols()).map(|j| s.v.column(j)).collect()
}

/// Rank plus invariant factors (each ≥ 2, in divisibility order) of a
/// finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl CanonicalForm {
    pub fn trivial() -> Self {
        CanonicalForm { rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        CanonicalForm { rank, torsion: Vec::new() }
    }

    /// Canonical form of `Z^rank ⊕ ⊕ Z/tᵢ` for an arbitrary list of `tᵢ`.
    pub fn from_cyclic_factors(rank: usize, torsion: &[BigInt]) -> Self {
        let diag: Vec<BigInt> = torsion.to_vec();
        let rel = IntMatrix::diagonal(&diag);
        let mut c = presentation_invariants(torsion.len(), &rel).expect("square diagonal");
        c.rank += rank;
        c
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Group order, or `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.rank > 0 {
            return None;
        }
        Some(self.torsion.iter().fold(BigInt::one(), |acc, t| acc * t))
    }
}

impl core::fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut first = true;
        for t in &self.torsion {
            if !first {
                write!(f, " ⊕ ")?;
            }
            write!(f, "Z/{t}")?;
            first = false;
        }
        if self.rank > 0 {
            if !first {
                write!(f, " ⊕ ")?;
            }
            if self.rank == 1 {
                write!(f, "Z")?;
            } else {
                write!(f, "Z^{}", self.rank)?;
            }
        }
        Ok(())
    }
}

/// Canonical form of `Z^ngens / rowspan(relations)`.
pub fn presentation_invariants(ngens: usize, relations: &IntMatrix) -> Result<CanonicalForm, AlgebraError> {
    if relations.cols() != ngens {
        return Err(AlgebraError::DimensionMismatch { expected: ngens, found: relations.cols() });
    }
    let s = smith_full(relations);
    let diag: Vec<BigInt> =
        (0..relations.rows().min(ngens)).map(|i| s.d.get(i, i).clone()).filter(|d| !d.is_zero()).collect();
    let rank = ngens - diag.len();
    let torsion = diag.into_iter().filter(|d| !d.is_one()).collect();
    Ok(CanonicalForm { rank, torsion })
}

/// A subquotient `P / L` of `Zⁿ` in invariant-factor form.
///
/// `generators[j]` is an element of `P` whose image generates a cyclic
/// summand of order `orders[j]` (zero meaning infinite). The summands form a
/// direct-sum decomposition of `P / L`; trivial summands are dropped.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub ambient: usize,
    pub generators: Vec<Vec<BigInt>>,
    pub orders: Vec<BigInt>,
    // coordinates: x ∈ P  ↦  c = (xV)_{<r} / diag  ↦  z = c · v2, keep `kept`
    basis_v: IntMatrix,
    basis_diag: Vec<BigInt>,
    v2: IntMatrix,
    kept: Vec<usize>,
}

impl Subquotient {
    pub fn canonical_form(&self) -> CanonicalForm {
        let rank = self.orders.iter().filter(|o| o.is_zero()).count();
        let torsion = self.orders.iter().filter(|o| !o.is_zero()).cloned().collect();
        CanonicalForm { rank, torsion }
    }

    /// Coordinates of `x ∈ P` with respect to [`Self::generators`], reduced
    /// modulo the finite orders. `None` when `x ∉ P`.
    pub fn coordinates(&self, x: &[BigInt]) -> Result<Option<Vec<BigInt>>, AlgebraError> {
        if x.len() != self.ambient {
            return Err(AlgebraError::DimensionMismatch { expected: self.ambient, found: x.len() });
        }
        let r = self.basis_diag.len();
        let xv: Vec<BigInt> = (0..self.ambient)
            .map(|j| x.iter().enumerate().map(|(i, xi)| xi * self.basis_v.get(i, j)).sum())
            .collect();
        if xv[r..].iter().any(|t| !t.is_zero()) {
            return Ok(None);
        }
        let mut c = Vec::with_capacity(r);
        for (t, d) in xv[..r].iter().zip(&self.basis_diag) {
            let (q, rem) = t.div_rem(d);
            if !rem.is_zero() {
                return Ok(None);
            }
            c.push(q);
        }
        let z: Vec<BigInt> =
            (0..r).map(|j| c.iter().enumerate().map(|(i, ci)| ci * self.v2.get(i, j)).sum()).collect();
        Ok(Some(
            self.kept
                .iter()
                .zip(&self.orders)
                .map(|(&j, o)| if o.is_zero() { z[j].clone() } else { z[j].mod_floor(o) })
                .collect(),
        ))
    }

    /// Does `x ∈ P` map to zero in `P / L`?
    pub fn is_zero_element(&self, x: &[BigInt]) -> Result<bool, AlgebraError> {
        Ok(self.coordinates(x)?.map(|c| c.iter().all(Zero::is_zero)).unwrap_or(false))
    }
}

/// Computes `span(gens) / rowspan(lattice)` in invariant-factor form.
/// Every row of `lattice` must lie in `span(gens)`.
pub fn subquotient(ambient: usize, gens: &[Vec<BigInt>], lattice: &IntMatrix) -> Result<Subquotient, AlgebraError> {
    if lattice.cols() != ambient {
        return Err(AlgebraError::DimensionMismatch { expected: ambient, found: lattice.cols() });
    }
    let gm = IntMatrix::from_big_rows(ambient, gens)?;
    let s = smith_full(&gm);
    let r = (0..gm.rows().min(ambient)).take_while(|&i| !s.d.get(i, i).is_zero()).count();
    let basis_diag: Vec<BigInt> = (0..r).map(|i| s.d.get(i, i).clone()).collect();

    // Express the lattice rows in the basis b_i = d_i · (row i of V⁻¹).
    let mut c_rows = Vec::with_capacity(lattice.rows());
    for k in 0..lattice.rows() {
        let x = lattice.row(k);
        let xv: Vec<BigInt> = (0..ambient)
            .map(|j| x.iter().enumerate().map(|(i, xi)| xi * s.v.get(i, j)).sum())
            .collect();
        if xv[r..].iter().any(|t| !t.is_zero()) {
            return Err(AlgebraError::LatticeNotContained);
        }
        let mut row = Vec::with_capacity(r);
        for (t, d) in xv[..r].iter().zip(&basis_diag) {
            let (q, rem) = t.div_rem(d);
            if !rem.is_zero() {
                return Err(AlgebraError::LatticeNotContained);
            }
            row.push(q);
        }
        c_rows.push(row);
    }
    let cm = IntMatrix::from_big_rows(r, &c_rows)?;
    let s2 = smith_full(&cm);
    let k2 = cm.rows().min(r);

    let mut generators = Vec::new();
    let mut orders = Vec::new();
    let mut kept = Vec::new();
    let mut v2 = s2.v.clone();
    for j in 0..r {
        let order = if j < k2 { s2.d.get(j, j).clone() } else { BigInt::zero() };
        if order.is_one() {
            continue;
        }
        // f_j = row j of v2⁻¹ in P-coordinates; map to Zⁿ through the basis.
        let f = s2.v_inv.row(j);
        let mut g: Vec<BigInt> = (0..ambient)
            .map(|col| (0..r).map(|i| &f[i] * &basis_diag[i] * s.v_inv.get(i, col)).sum())
            .collect();
        if g.iter().find(|t| !t.is_zero()).is_some_and(|t| t.is_negative()) {
            for t in &mut g {
                *t = -&*t;
            }
            v2.negate_col(j);
        }
        generators.push(g);
        orders.push(order);
        kept.push(j);
    }
    Ok(Subquotient { ambient, generators, orders, basis_v: s.v, basis_diag, v2, kept })
}

/// Generators of `{x ∈ Zⁿ : a·x ∈ rowspan(r)} / rowspan(r)`: the kernel of
/// the endomorphism `a` induced on the presented group `Zⁿ / rowspan(r)`.
pub fn kernel_mod_lattice(a: &IntMatrix, r: &IntMatrix) -> Result<Vec<Vec<BigInt>>, AlgebraError> {
    Ok(kernel_mod_lattice_structured(a, r)?.generators)
}

/// As [`kernel_mod_lattice`], returning the full invariant-factor structure.
pub fn kernel_mod_lattice_structured(a: &IntMatrix, r: &IntMatrix) -> Result<Subquotient, AlgebraError> {
    let n = a.cols();
    if !a.is_square() {
        return Err(AlgebraError::ShapeMismatch { left: (a.rows(), a.cols()), right: (n, n) });
    }
    if r.cols() != n {
        return Err(AlgebraError::DimensionMismatch { expected: n, found: r.cols() });
    }
    // a·x = Rᵀ·y  ⟺  [a | -Rᵀ] (x; y) = 0
    let system = a.hstack(&r.transpose().negate())?;
    let preimage: Vec<Vec<BigInt>> = integer_kernel(&system).into_iter().map(|v| v[..n].to_vec()).collect();
    subquotient(n, &preimage, r)
}

/// Invariant-factor generators of the presented group `Z^ngens / rowspan(relations)`.
pub fn quotient_structure(ngens: usize, relations: &IntMatrix) -> Result<Subquotient, AlgebraError> {
    let basis: Vec<Vec<BigInt>> = IntMatrix::identity(ngens).row_vectors();
    subquotient(ngens, &basis, relations)
}

/// Inverse of a square matrix acting on `Zⁿ / rowspan(relations)`, i.e. a
/// matrix `b` with `a·b ≡ I` column-wise modulo the lattice. `None` if `a`
/// is not surjective on the presented group.
pub fn inverse_mod_lattice(a: &IntMatrix, relations: &IntMatrix) -> Result<Option<IntMatrix>, AlgebraError> {
    let n = a.cols();
    if !a.is_square() || relations.cols() != n {
        return Err(AlgebraError::ShapeMismatch { left: (a.rows(), a.cols()), right: (relations.rows(), n) });
    }
    let system = a.hstack(&relations.transpose().negate())?;
    let mut inv = IntMatrix::zeros(n, n);
    for j in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[j] = BigInt::one();
        let Some(sol) = solve_int(&system, &e)? else {
            return Ok(None);
        };
        for i in 0..n {
            inv.set(i, j, sol[i].clone());
        }
    }
    Ok(Some(inv))
}

/// Do two matrices agree as maps `Zⁿ → Zⁿ / rowspan(relations)`?
pub fn congruent_mod_lattice(a: &IntMatrix, b: &IntMatrix, relations: &IntMatrix) -> Result<bool, AlgebraError> {
    let diff = a.checked_sub(b)?;
    for j in 0..diff.cols() {
        if !in_row_lattice(relations, &diff.column(j))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Does `a` map `rowspan(relations)` into itself?
pub fn preserves_lattice(a: &IntMatrix, relations: &IntMatrix) -> Result<bool, AlgebraError> {
    for k in 0..relations.rows() {
        let image = a.apply(relations.row(k))?;
        if !in_row_lattice(relations, &image)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intalg::big_vec;

    fn empty(n: usize) -> IntMatrix {
        IntMatrix::zeros(0, n)
    }

    #[test]
    fn zero_endomorphism_kills_everything() {
        let gens = kernel_mod_lattice(&IntMatrix::zeros(3, 3), &empty(3)).unwrap();
        assert_eq!(gens, IntMatrix::identity(3).row_vectors());
    }

    #[test]
    fn swap_minus_identity() {
        let a = IntMatrix::from_rows(2, &[[1, -1], [-1, 1]]).unwrap();
        let s = kernel_mod_lattice_structured(&a, &empty(2)).unwrap();
        assert_eq!(s.generators, vec![big_vec(&[1, 1])]);
        assert_eq!(s.canonical_form(), CanonicalForm::free(1));
    }

    #[test]
    fn doubling_on_z4() {
        let a = IntMatrix::from_rows(1, &[[2]]).unwrap();
        let r = IntMatrix::from_rows(1, &[[4]]).unwrap();
        let s = kernel_mod_lattice_structured(&a, &r).unwrap();
        assert_eq!(s.generators, vec![big_vec(&[2])]);
        assert_eq!(s.orders, big_vec(&[2]));
    }

    #[test]
    fn dimension_checks() {
        assert!(kernel_mod_lattice(&IntMatrix::zeros(2, 3), &empty(3)).is_err());
        assert!(kernel_mod_lattice(&IntMatrix::zeros(2, 2), &empty(3)).is_err());
    }

    #[test]
    fn solve_and_membership() {
        let a = IntMatrix::from_rows(2, &[[2, 4], [0, 6]]).unwrap();
        let x = solve_int(&a, &big_vec(&[6, 6])).unwrap().unwrap();
        assert_eq!(a.apply(&x).unwrap(), big_vec(&[6, 6]));
        assert!(solve_int(&a, &big_vec(&[1, 0])).unwrap().is_none());
        let rel = IntMatrix::from_rows(2, &[[2, 0], [0, 3]]).unwrap();
        assert!(in_row_lattice(&rel, &big_vec(&[4, -3])).unwrap());
        assert!(!in_row_lattice(&rel, &big_vec(&[1, 0])).unwrap());
    }

    #[test]
    fn presentation_canonical_forms() {
        let rel = IntMatrix::from_rows(3, &[[2, 0, 0], [0, 3, 0]]).unwrap();
        let c = presentation_invariants(3, &rel).unwrap();
        assert_eq!(c, CanonicalForm { rank: 1, torsion: big_vec(&[6]) });
        assert_eq!(alloc::format!("{c}"), "Z/6 ⊕ Z");
        assert!(presentation_invariants(0, &empty(0)).unwrap().is_trivial());
        let c = CanonicalForm::from_cyclic_factors(1, &big_vec(&[2, 4, 3]));
        assert_eq!(c, CanonicalForm { rank: 1, torsion: big_vec(&[2, 12]) });
    }

    #[test]
    fn quotient_coordinates() {
        // Z² / <(2, 2)> ≅ Z ⊕ Z/2
        let rel = IntMatrix::from_rows(2, &[[2, 2]]).unwrap();
        let q = quotient_structure(2, &rel).unwrap();
        assert_eq!(q.canonical_form(), CanonicalForm { rank: 1, torsion: big_vec(&[2]) });
        assert!(q.is_zero_element(&big_vec(&[2, 2])).unwrap());
        assert!(q.is_zero_element(&big_vec(&[-4, -4])).unwrap());
        assert!(!q.is_zero_element(&big_vec(&[1, 1])).unwrap());
        assert!(!q.is_zero_element(&big_vec(&[1, 0])).unwrap());
        for g in &q.generators {
            assert!(!q.is_zero_element(g).unwrap());
        }
        // generators map to unit coordinate vectors
        for (j, g) in q.generators.iter().enumerate() {
            let c = q.coordinates(g).unwrap().unwrap();
            for (k, ck) in c.iter().enumerate() {
                assert_eq!(ck.is_one(), j == k, "{c:?}");
            }
        }
    }

    #[test]
    fn inverse_on_torsion() {
        let a = IntMatrix::from_rows(1, &[[3]]).unwrap();
        let rel = IntMatrix::from_rows(1, &[[4]]).unwrap();
        let inv = inverse_mod_lattice(&a, &rel).unwrap().unwrap();
        assert!(congruent_mod_lattice(&(&a * &inv), &IntMatrix::identity(1), &rel).unwrap());
        let two = IntMatrix::from_rows(1, &[[2]]).unwrap();
        assert!(inverse_mod_lattice(&two, &empty(1)).unwrap().is_none());
    }
}
