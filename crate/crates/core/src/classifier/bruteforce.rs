//! Exhaustive reference implementations used to cross-check the fast paths.
//! All of them are exponential or quadratic in the size of the objects and
//! return `None` beyond their bounds.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{DaxOracle, DaxOutcome};
use crate::groups::{finite_abelian_invariants, FiniteTableGroup, GroupElement, GroupModel};
use crate::intalg::{CanonicalForm, IntMatrix};
use crate::pi2mod::Pi2Module;
use crate::spinclass::Cocycle;

/// Is `omega` of the form `δf` for some normalised `f`? Tries all
/// `2^(|G|−1)` candidates.
pub fn is_coboundary_exhaustive(omega: &Cocycle, g: &FiniteTableGroup) -> Option<bool> {
    let n = g.order();
    let free: Vec<usize> = (0..n).filter(|&x| x != g.identity()).collect();
    if free.len() > 20 {
        return None;
    }
    let mut f = vec![false; n];
    for mask in 0u32..(1 << free.len()) {
        for (bit, &x) in free.iter().enumerate() {
            f[x] = mask >> bit & 1 == 1;
        }
        let hit = (0..n).all(|a| (0..n).all(|b| omega[a][b] == (f[a] ^ f[b] ^ f[g.mul(a, b)])));
        if hit {
            return Some(true);
        }
    }
    Some(false)
}

fn subsets(k: usize, max_bits: u32) -> Option<impl Iterator<Item = u64>> {
    (k as u32 <= max_bits).then(|| 1u64..(1u64 << k))
}

fn combination(gens: &[Vec<BigInt>], ambient: usize, mask: u64) -> Vec<BigInt> {
    let mut b = vec![BigInt::zero(); ambient];
    for (i, g) in gens.iter().enumerate() {
        if mask >> i & 1 == 1 {
            for (x, y) in b.iter_mut().zip(g) {
                *x += y;
            }
        }
    }
    b
}

/// Some 0/1-combination `b` of `fix_gens` with `w2s(b) = 1`, evaluated on
/// the combined vector.
pub fn odd_fixed_combination(
    module: &Pi2Module,
    w2s: &[bool],
    fix_gens: &[Vec<BigInt>],
    max_bits: u32,
) -> Option<Option<Vec<BigInt>>> {
    for mask in subsets(fix_gens.len(), max_bits)? {
        let b = combination(fix_gens, module.ngens(), mask);
        if module.evaluate_functional(w2s, &b).ok()? {
            return Some(Some(b));
        }
    }
    Some(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Dax {
    Vanishes,
    Nonzero,
    Unknown,
}

/// [`super::dax_search`] by enumerating every 0/1-combination of Fix
/// generators and evaluating the oracle on it. Returns the outcome kind
/// only: `"dies"`, `"survives"` or `"conditional"`.
pub fn dax_outcome_by_enumeration(w2s_on_fix: &[bool], dax: &DaxOracle, max_bits: u32) -> Option<&'static str> {
    let mut any_unknown = false;
    for mask in subsets(w2s_on_fix.len(), max_bits)? {
        let support: Vec<usize> = (0..w2s_on_fix.len()).filter(|&i| mask >> i & 1 == 1).collect();
        let odd = support.iter().filter(|&&i| w2s_on_fix[i]).count() % 2 == 1;
        if !odd {
            continue;
        }
        let value = match dax {
            DaxOracle::AllZero => Dax::Vanishes,
            DaxOracle::AllNonzero => Dax::Nonzero,
            DaxOracle::Absent => Dax::Unknown,
            DaxOracle::PerGenerator(v) => match support.iter().filter(|&&i| !v[i]).count() {
                0 => Dax::Vanishes,
                1 => Dax::Nonzero,
                _ => Dax::Unknown,
            },
        };
        match value {
            Dax::Vanishes => return Some("dies"),
            Dax::Unknown => any_unknown = true,
            Dax::Nonzero => {}
        }
    }
    Some(if any_unknown { "conditional" } else { "survives" })
}

/// Outcome kind of a [`DaxOutcome`], for comparison with
/// [`dax_outcome_by_enumeration`].
pub fn outcome_kind(o: &DaxOutcome) -> &'static str {
    match o {
        DaxOutcome::Dies(_) => "dies",
        DaxOutcome::Survives => "survives",
        DaxOutcome::Conditional(_) => "conditional",
    }
}

/// Upper-triangular basis of a full-rank lattice in `Zⁿ` with positive
/// pivots, by Euclid's algorithm on columns. `None` if the rank is short.
struct TriangularLattice {
    rows: Vec<Vec<BigInt>>,
}

impl TriangularLattice {
    fn new(n: usize, generators: Vec<Vec<BigInt>>) -> Option<Self> {
        let mut pool = generators;
        let mut rows = Vec::with_capacity(n);
        for j in 0..n {
            loop {
                let live: Vec<usize> = (0..pool.len()).filter(|&r| !pool[r][j].is_zero()).collect();
                let &p = live.iter().min_by_key(|&&r| pool[r][j].magnitude().clone())?;
                if live.len() == 1 {
                    let mut row = pool.swap_remove(p);
                    if row[j].is_negative() {
                        row.iter_mut().for_each(|x| *x = -x.clone());
                    }
                    rows.push(row);
                    break;
                }
                let pivot = pool[p].clone();
                for &r in &live {
                    if r != p {
                        let q = &pool[r][j] / &pivot[j];
                        for (x, y) in pool[r].iter_mut().zip(&pivot) {
                            *x -= &q * y;
                        }
                    }
                }
            }
        }
        Some(TriangularLattice { rows })
    }

    /// The representative of `x + L` with `0 ≤ xᵢ < pivotᵢ`.
    fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut x = x.to_vec();
        for (i, row) in self.rows.iter().enumerate() {
            let q = x[i].div_floor(&row[i]);
            for (a, b) in x.iter_mut().zip(row) {
                *a -= &q * b;
            }
        }
        x
    }

    fn contains(&self, x: &[BigInt]) -> bool {
        self.reduce(x).iter().all(Zero::is_zero)
    }

    /// Every reduced representative, or `None` beyond `max`.
    fn elements(&self, max: usize) -> Option<Vec<Vec<BigInt>>> {
        let sizes: Vec<usize> = self.rows.iter().enumerate().map(|(i, r)| r[i].to_usize()).collect::<Option<_>>()?;
        let total = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s))?;
        if total > max {
            return None;
        }
        let mut out = Vec::with_capacity(total);
        let mut digits = vec![0usize; sizes.len()];
        for _ in 0..total {
            out.push(digits.iter().map(|&d| BigInt::from(d)).collect());
            for (d, &s) in digits.iter_mut().zip(&sizes).rev() {
                *d += 1;
                if *d < s {
                    break;
                }
                *d = 0;
            }
        }
        Some(out)
    }
}

fn lattice_of(n: usize, relations: &[Vec<BigInt>]) -> Option<TriangularLattice> {
    TriangularLattice::new(n, relations.to_vec())
}

/// Representatives of `Zⁿ / rowspan(lattice)`, one per coset. `None` if the
/// quotient is infinite or has more than `max` elements.
pub fn quotient_elements(n: usize, lattice: &IntMatrix, max: usize) -> Option<Vec<Vec<BigInt>>> {
    lattice_of(n, &lattice.row_vectors())?.elements(max)
}

fn element_order(lattice: &TriangularLattice, x: &[BigInt], max: usize) -> Option<u64> {
    (1..=max as u64).find(|&k| {
        let kx: Vec<BigInt> = x.iter().map(|v| v * k).collect();
        lattice.contains(&kx)
    })
}

fn invariants_of(lattice: &TriangularLattice, elems: &[Vec<BigInt>], max: usize) -> Option<CanonicalForm> {
    let orders: Option<Vec<u64>> = elems.iter().map(|x| element_order(lattice, x, max)).collect();
    Some(finite_abelian_invariants(&orders?))
}

/// Invariants of `Fix_c` for a finite module, by listing fixed elements.
pub fn fixed_points_by_enumeration(
    module: &Pi2Module,
    group: &GroupModel,
    c: &GroupElement,
    max: usize,
) -> Option<CanonicalForm> {
    let n = module.ngens();
    let lattice = lattice_of(n, &module.relations().row_vectors())?;
    let a = module.action_matrix(group, c).ok()?;
    let fixed: Vec<Vec<BigInt>> = lattice
        .elements(max)?
        .into_iter()
        .filter(|x| {
            let ax = a.apply(x).expect("square action");
            let diff: Vec<BigInt> = ax.iter().zip(x).map(|(p, q)| p - q).collect();
            lattice.contains(&diff)
        })
        .collect();
    invariants_of(&lattice, &fixed, max)
}

/// Invariants of the coinvariants `π₂ / (b = c·b)` for a finite module,
/// with the relations `b − c·b` generated element by element.
pub fn coinvariants_by_enumeration(
    module: &Pi2Module,
    group: &GroupModel,
    c: &GroupElement,
    max: usize,
) -> Option<CanonicalForm> {
    let n = module.ngens();
    let rel = module.relations().row_vectors();
    let a = module.action_matrix(group, c).ok()?;
    let mut rows = rel.clone();
    for x in lattice_of(n, &rel)?.elements(max)? {
        let ax = a.apply(&x).ok()?;
        rows.push(x.iter().zip(&ax).map(|(p, q)| p - q).collect());
    }
    let bigger = lattice_of(n, &rows)?;
    let elems = bigger.elements(max)?;
    invariants_of(&bigger, &elems, max)
}
