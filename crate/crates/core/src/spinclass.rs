//! Second Stiefel–Whitney data, the spin alternatives, and π₁ of the
//! frame bundle as an explicit central Z/2-extension of π₁X.
//!
//! Extension conventions: `E = Z/2 ×_ω G` has elements `(a, g)` with
//! `(a, g)(b, h) = (a + b + ω(g, h), gh)`, stored at index `g + a·|G|`.
//! A cocycle `ω` is a coboundary when `ω(g, h) = f(g) + f(h) + f(gh)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::groups::{
    nonassociative_triple, FgAbelianGroup, FiniteTableGroup, GroupElement, GroupError, GroupModel,
    SubgroupDescriptor,
};
use crate::intalg::{presentation_invariants, solve_f2, subquotient, CanonicalForm, F2Matrix, IntMatrix};
use crate::pi2mod::{ModuleError, Pi2Module};

/// A Z/2-valued 2-cochain on a Cayley-table group, `omega[g][h]`.
pub type Cocycle = Vec<Vec<bool>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum W2Data {
    Spin,
    /// `w₂` pulled back from a class on π₁ given by a normalised cocycle.
    AlmostSpinCocycle { omega: Cocycle },
    /// `w₂` pulled back from π₁ abelian, via its Ext part (`ext_bits`, one
    /// per generator) and Hom part (`pairing`, alternating).
    AlmostSpinAbelian { ext_bits: Vec<bool>, pairing: Vec<Vec<bool>> },
    /// Nonzero spherical class `w₂ˢ` as a functional on π₂ generators.
    TotallyNonspin { w2s: Vec<bool> },
}

impl W2Data {
    pub fn kind(&self) -> &'static str {
        match self {
            W2Data::Spin => "spin",
            W2Data::AlmostSpinCocycle { .. } => "almost_spin_cocycle",
            W2Data::AlmostSpinAbelian { .. } => "almost_spin_abelian",
            W2Data::TotallyNonspin { .. } => "totally_nonspin",
        }
    }

    /// `w₂ˢ` as a functional on π₂; zero unless totally nonspin.
    pub fn w2s(&self, ngens: usize) -> Vec<bool> {
        match self {
            W2Data::TotallyNonspin { w2s } => w2s.clone(),
            _ => vec![false; ngens],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpinAlternative {
    TotallyNonspin,
    HNonspin,
    HSpin,
    Spin,
}

impl SpinAlternative {
    pub const ALL: [SpinAlternative; 4] =
        [SpinAlternative::TotallyNonspin, SpinAlternative::HNonspin, SpinAlternative::HSpin, SpinAlternative::Spin];

    pub fn as_str(self) -> &'static str {
        match self {
            SpinAlternative::TotallyNonspin => "totally-nonspin",
            SpinAlternative::HNonspin => "h-nonspin",
            SpinAlternative::HSpin => "h-spin",
            SpinAlternative::Spin => "spin",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.as_str() == s)
    }

    /// `w₂ˢ = 0`.
    pub fn is_almost_spin_or_spin(self) -> bool {
        self != SpinAlternative::TotallyNonspin
    }
}

impl fmt::Display for SpinAlternative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A failed check on [`W2Data`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum W2Violation {
    WrongGroupModel { kind: &'static str, model: &'static str },
    CocycleShape { expected: usize },
    NotNormalized { g: usize },
    CocycleIdentity { g: usize, h: usize, k: usize },
    AbelianShape { expected: usize },
    PairingNotSymmetric { i: usize, j: usize },
    PairingDiagonal { i: usize },
    ExtOnNonEvenGenerator { i: usize },
    PairingOnOddGenerator { i: usize, j: usize },
    ZeroSphericalClass,
    Functional(ModuleError),
}

impl fmt::Display for W2Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            W2Violation::WrongGroupModel { kind, model } => {
                write!(f, "w2 kind {kind} is not supported for a {model} fundamental group")
            }
            W2Violation::CocycleShape { expected } => write!(f, "cocycle table must be {expected}x{expected}"),
            W2Violation::NotNormalized { g } => write!(f, "cocycle not normalised at index:{g} (omega(e,g) or omega(g,e) is 1)"),
            W2Violation::CocycleIdentity { g, h, k } => {
                write!(f, "cocycle identity fails on triple (index:{g}, index:{h}, index:{k})")
            }
            W2Violation::AbelianShape { expected } => {
                write!(f, "ext_bits and pairing must have {expected} generators")
            }
            W2Violation::PairingNotSymmetric { i, j } => write!(f, "pairing not symmetric at ({i},{j})"),
            W2Violation::PairingDiagonal { i } => write!(f, "pairing has nonzero diagonal entry at {i}"),
            W2Violation::ExtOnNonEvenGenerator { i } => {
                write!(f, "ext bit set on generator {i}, which is free or of odd order")
            }
            W2Violation::PairingOnOddGenerator { i, j } => {
                write!(f, "pairing entry ({i},{j}) involves a generator of odd order")
            }
            W2Violation::ZeroSphericalClass => {
                write!(f, "totally_nonspin requires a nonzero w2s; enter w2s = 0 as spin or almost spin")
            }
            W2Violation::Functional(e) => write!(f, "w2s: {e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SpinError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("invalid w2 data: {}", .0.first().map(|v| format!("{v}")).unwrap_or_default())]
    Invalid(Vec<W2Violation>),
    #[error("{0} and {1} do not commute")]
    NonCommuting(String, String),
    #[error("{0}")]
    Unsupported(&'static str),
    #[error("subgroup is not enumerable")]
    NotEnumerable,
}

/// Every violation of the [`W2Data`] invariants for the given π₁ and π₂.
pub fn validate_w2(w2: &W2Data, group: &GroupModel, module: &Pi2Module) -> Vec<W2Violation> {
    let wrong = || vec![W2Violation::WrongGroupModel { kind: w2.kind(), model: group.kind() }];
    match (w2, group) {
        (W2Data::Spin, _) => Vec::new(),
        (W2Data::AlmostSpinCocycle { omega }, GroupModel::FiniteTable(g)) => cocycle_violations(omega, g),
        (W2Data::AlmostSpinCocycle { .. }, _) => wrong(),
        (W2Data::AlmostSpinAbelian { ext_bits, pairing }, GroupModel::FgAbelian(g)) => {
            abelian_violations(ext_bits, pairing, g)
        }
        (W2Data::AlmostSpinAbelian { .. }, _) => wrong(),
        (W2Data::TotallyNonspin { w2s }, _) => {
            let mut out = Vec::new();
            if let Err(e) = module.check_functional_invariance(w2s) {
                out.push(W2Violation::Functional(e));
            }
            // a well-defined functional is nonzero iff it is odd on a generator
            if out.is_empty() && !w2s.iter().any(|&b| b) {
                out.push(W2Violation::ZeroSphericalClass);
            }
            out
        }
    }
}

/// Normalisation and the cocycle identity
/// `ω(g,h) + ω(gh,k) = ω(h,k) + ω(g,hk)`.
///
/// The identity is equivalent to associativity of `Z/2 ×_ω G`, which is
/// checked with Light's test instead of over all `|G|³` triples.
pub fn cocycle_violations(omega: &Cocycle, g: &FiniteTableGroup) -> Vec<W2Violation> {
    let n = g.order();
    if omega.len() != n || omega.iter().any(|r| r.len() != n) {
        return vec![W2Violation::CocycleShape { expected: n }];
    }
    let e = g.identity();
    let out: Vec<W2Violation> =
        (0..n).filter(|&x| omega[e][x] || omega[x][e]).map(|x| W2Violation::NotNormalized { g: x }).collect();
    if !out.is_empty() {
        return out;
    }
    let mul = |x: usize, y: usize| extension_mul(g, omega, x, y);
    match nonassociative_triple(2 * n, mul) {
        Some((a, b, c)) => vec![W2Violation::CocycleIdentity { g: a % n, h: b % n, k: c % n }],
        None => Vec::new(),
    }
}

#[inline]
fn extension_mul(g: &FiniteTableGroup, omega: &Cocycle, x: usize, y: usize) -> usize {
    let n = g.order();
    let (a, gx) = (x / n, x % n);
    let (b, hy) = (y / n, y % n);
    let c = (a ^ b) ^ usize::from(omega[gx][hy]);
    g.mul(gx, hy) + c * n
}

fn abelian_violations(ext_bits: &[bool], pairing: &[Vec<bool>], g: &FgAbelianGroup) -> Vec<W2Violation> {
    let k = g.ngens();
    if ext_bits.len() != k || pairing.len() != k || pairing.iter().any(|r| r.len() != k) {
        return vec![W2Violation::AbelianShape { expected: k }];
    }
    let even = |i: usize| g.modulus(i).is_some_and(|m| m % 2 == 0);
    let odd = |i: usize| g.modulus(i).is_some_and(|m| m % 2 == 1);
    let mut out = Vec::new();
    for i in 0..k {
        if ext_bits[i] && !even(i) {
            out.push(W2Violation::ExtOnNonEvenGenerator { i });
        }
        if pairing[i][i] {
            out.push(W2Violation::PairingDiagonal { i });
        }
        for j in i + 1..k {
            if pairing[i][j] != pairing[j][i] {
                out.push(W2Violation::PairingNotSymmetric { i, j });
            }
            if (pairing[i][j] || pairing[j][i]) && (odd(i) || odd(j)) {
                out.push(W2Violation::PairingOnOddGenerator { i, j });
            }
        }
    }
    out
}

/// The explicit cocycle attached to abelian data:
/// `ω(x,y) = Σ extᵢ·carryᵢ(xᵢ,yᵢ) + Σ_{i<j} βᵢⱼ xᵢ yⱼ (mod 2)`.
pub fn abelian_cocycle(ext_bits: &[bool], pairing: &[Vec<bool>], g: &FgAbelianGroup, x: &[i64], y: &[i64]) -> bool {
    let mut acc = false;
    for i in 0..g.ngens() {
        if ext_bits[i] {
            if let Some(m) = g.modulus(i) {
                let s = x[i].rem_euclid(m as i64) + y[i].rem_euclid(m as i64);
                if s >= m as i64 {
                    acc = !acc;
                }
            }
        }
        if x[i] & 1 == 1 {
            for j in i + 1..g.ngens() {
                if pairing[i][j] && y[j] & 1 == 1 {
                    acc = !acc;
                }
            }
        }
    }
    acc
}

/// `xᵀ β y mod 2`.
fn pairing_value(pairing: &[Vec<bool>], x: &[i64], y: &[i64]) -> bool {
    let mut acc = false;
    for (i, row) in pairing.iter().enumerate() {
        if x[i] & 1 == 1 {
            for (j, &b) in row.iter().enumerate() {
                if b && y[j] & 1 == 1 {
                    acc = !acc;
                }
            }
        }
    }
    acc
}

/// Central part of `[g̃₁, g̃₂]` for commuting `g₁, g₂`.
pub fn lifted_commutator(
    w2: &W2Data,
    group: &GroupModel,
    g1: &GroupElement,
    g2: &GroupElement,
) -> Result<bool, SpinError> {
    if !group.commutes(g1, g2)? {
        return Err(SpinError::NonCommuting(group.describe(g1), group.describe(g2)));
    }
    Ok(match (w2, g1, g2) {
        (W2Data::AlmostSpinCocycle { omega }, GroupElement::Index(a), GroupElement::Index(b)) => {
            omega[*a][*b] ^ omega[*b][*a]
        }
        (W2Data::AlmostSpinAbelian { pairing, .. }, GroupElement::Vector(x), GroupElement::Vector(y)) => {
            pairing_value(pairing, x, y)
        }
        (W2Data::Spin | W2Data::TotallyNonspin { .. }, _, _) => false,
        _ => return Err(SpinError::Unsupported("w2 data does not match the group model")),
    })
}

/// Which of the four alternatives holds. Expects validated data.
pub fn classify_spin_type(w2: &W2Data, group: &GroupModel) -> Result<SpinAlternative, SpinError> {
    match (w2, group) {
        (W2Data::Spin, _) => Ok(SpinAlternative::Spin),
        (W2Data::TotallyNonspin { .. }, _) => Ok(SpinAlternative::TotallyNonspin),
        (W2Data::AlmostSpinCocycle { omega }, GroupModel::FiniteTable(g)) => {
            let n = g.order();
            let pairing_nonzero = (0..n).any(|a| {
                (0..a).any(|b| g.mul(a, b) == g.mul(b, a) && (omega[a][b] ^ omega[b][a]))
            });
            if pairing_nonzero {
                Ok(SpinAlternative::HNonspin)
            } else if is_coboundary(omega, g).is_none() {
                Ok(SpinAlternative::HSpin)
            } else {
                Ok(SpinAlternative::Spin)
            }
        }
        (W2Data::AlmostSpinAbelian { ext_bits, pairing }, GroupModel::FgAbelian(_)) => {
            if pairing.iter().flatten().any(|&b| b) {
                Ok(SpinAlternative::HNonspin)
            } else if ext_bits.iter().any(|&b| b) {
                Ok(SpinAlternative::HSpin)
            } else {
                Ok(SpinAlternative::Spin)
            }
        }
        _ => Err(SpinError::Unsupported("almost-spin data is not supported for this group model")),
    }
}

/// `δf(g, h) = f(g) + f(h) + f(gh)`.
pub fn coboundary(f: &[bool], g: &FiniteTableGroup) -> Cocycle {
    let n = g.order();
    (0..n).map(|a| (0..n).map(|b| f[a] ^ f[b] ^ f[g.mul(a, b)]).collect()).collect()
}

/// A witness `f` with `ω = δf`, or `None`.
pub fn is_coboundary(omega: &Cocycle, g: &FiniteTableGroup) -> Option<Vec<bool>> {
    let elements: Vec<usize> = (0..g.order()).collect();
    let values = coboundary_on_subgroup(omega, g, &elements, &g.generators())?;
    Some(values.into_iter().map(|(_, v)| v).collect())
}

/// Solves `ω(h, s) = f(h) + f(s) + f(hs)` for `h` in the subgroup and `s`
/// among its generators, then checks the witness on all pairs.
///
/// Right multiplication by generators suffices: if the cocycle
/// `ω' = ω + δf` vanishes on `H × S`, the cocycle identity gives
/// `ω'(g, h) = ω'(g, hs)`, so `ω'` vanishes on `H × H`.
pub fn coboundary_on_subgroup(
    omega: &Cocycle,
    g: &FiniteTableGroup,
    elements: &[usize],
    gens: &[usize],
) -> Option<Vec<(usize, bool)>> {
    let pos: BTreeMap<usize, usize> = elements.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let m = elements.len();
    let rows = m * gens.len() + 1;
    let mut a = F2Matrix::zeros(rows, m);
    let mut b = vec![false; rows];
    let mut r = 0;
    for &h in elements {
        for &s in gens {
            let hs = g.mul(h, s);
            a.flip(r, pos[&h]);
            a.flip(r, pos[&s]);
            a.flip(r, pos[&hs]);
            b[r] = omega[h][s];
            r += 1;
        }
    }
    // f(e) = 0 pins the normalised witness
    a.set(r, pos[&g.identity()], true);
    let sol = solve_f2(&a, &b).expect("consistent dimensions")?;
    let f = sol.particular;
    let ok = elements.iter().all(|&x| elements.iter().all(|&y| omega[x][y] == (f[pos[&x]] ^ f[pos[&y]] ^ f[pos[&g.mul(x, y)]])));
    debug_assert!(ok, "generator-reduced coboundary system must be exact");
    ok.then(|| elements.iter().zip(f).map(|(&x, v)| (x, v)).collect())
}

/// `E = Z/2 ×_ω G` as a Cayley table together with its defining data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitExtension {
    pub table: FiniteTableGroup,
    pub omega: Cocycle,
    /// `base[i]` is the π₁ element with index `i` in the table of `G`.
    pub base: Vec<GroupElement>,
}

impl ExplicitExtension {
    pub fn from_cocycle(omega: Cocycle, g: &FiniteTableGroup, base: Vec<GroupElement>) -> Self {
        let n = g.order();
        let mut table = Vec::with_capacity(4 * n * n);
        for x in 0..2 * n {
            for y in 0..2 * n {
                table.push(extension_mul(g, &omega, x, y));
            }
        }
        ExplicitExtension { table: FiniteTableGroup::from_flat_unchecked(2 * n, table), omega, base }
    }

    pub fn base_order(&self) -> usize {
        self.base.len()
    }

    /// The central element `z = (1, e)`.
    pub fn z(&self) -> usize {
        self.base_order() + self.table.identity()
    }

    /// The lift `(0, g)` of base index `g`.
    pub fn lift(&self, g: usize) -> usize {
        g
    }

    pub fn project(&self, x: usize) -> usize {
        x % self.base_order()
    }

    pub fn base_index(&self, g: &GroupElement) -> Option<usize> {
        self.base.iter().position(|b| b == g)
    }
}

/// How π₁FrX relates to π₁X.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrameBundleData {
    /// Totally nonspin: `π₁FrX ≅ π₁X`.
    IsoToBase,
    /// Spin: `π₁FrX ≅ Z/2 × π₁X`.
    Product,
    /// Almost spin over a Cayley-table group.
    Cocycle { omega: Cocycle },
    /// Almost spin over an abelian group.
    Abelian { ext_bits: Vec<bool>, pairing: Vec<Vec<bool>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameBundlePi1 {
    pub base: GroupModel,
    pub alternative: SpinAlternative,
    pub data: FrameBundleData,
    /// The extension as a table, when π₁X is finite and small enough.
    /// Present for every alternative except totally nonspin.
    pub explicit: Option<ExplicitExtension>,
}

/// Builds π₁FrX from validated inputs. `max_order` bounds the order of π₁X
/// for which an explicit table of `E` is built.
pub fn build_pi1_frame_bundle(w2: &W2Data, group: &GroupModel, max_order: usize) -> Result<FrameBundlePi1, SpinError> {
    let alternative = classify_spin_type(w2, group)?;
    let data = match w2 {
        W2Data::Spin => FrameBundleData::Product,
        W2Data::TotallyNonspin { .. } => FrameBundleData::IsoToBase,
        W2Data::AlmostSpinCocycle { omega } => FrameBundleData::Cocycle { omega: omega.clone() },
        W2Data::AlmostSpinAbelian { ext_bits, pairing } => {
            FrameBundleData::Abelian { ext_bits: ext_bits.clone(), pairing: pairing.clone() }
        }
    };
    let explicit = if alternative == SpinAlternative::TotallyNonspin {
        None
    } else {
        explicit_extension(&data, group, max_order)
    };
    Ok(FrameBundlePi1 { base: group.clone(), alternative, data, explicit })
}

fn explicit_extension(data: &FrameBundleData, group: &GroupModel, max_order: usize) -> Option<ExplicitExtension> {
    match group {
        GroupModel::FiniteTable(g) if g.order() <= max_order => {
            let n = g.order();
            let omega = match data {
                FrameBundleData::Cocycle { omega } => omega.clone(),
                _ => vec![vec![false; n]; n],
            };
            let base = (0..n).map(GroupElement::Index).collect();
            Some(ExplicitExtension::from_cocycle(omega, g, base))
        }
        GroupModel::FgAbelian(a) => {
            let elems = a.elements(max_order)?;
            let n = elems.len();
            let table = crate::groups::catalog::abelian_table(
                &a.torsion().iter().map(|&t| t as usize).collect::<Vec<_>>(),
            );
            debug_assert_eq!(table.order(), n);
            let omega = match data {
                FrameBundleData::Abelian { ext_bits, pairing } => elems
                    .iter()
                    .map(|x| elems.iter().map(|y| abelian_cocycle(ext_bits, pairing, a, x, y)).collect())
                    .collect(),
                _ => vec![vec![false; n]; n],
            };
            let base = elems.into_iter().map(GroupElement::Vector).collect();
            Some(ExplicitExtension::from_cocycle(omega, &table, base))
        }
        _ => None,
    }
}

/// `H₁` of π₁X or of π₁FrX: a canonical form when computable, and a
/// symbolic rendering either way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Description {
    pub form: Option<CanonicalForm>,
    pub symbolic: String,
}

/// `H₁X = π₁X^ab`, via the Cayley-graph presentation for tables.
pub fn h1_base(group: &GroupModel) -> Option<CanonicalForm> {
    match group {
        GroupModel::FiniteTable(g) => {
            let n = g.order();
            let z = vec![vec![false; n]; n];
            Some(cayley_abelianization(g, &z, false))
        }
        GroupModel::FgAbelian(a) => Some(a.canonical_form()),
        GroupModel::SelfCentralizingZ(_) => None,
    }
}

/// Abelianisation of `Z/2 ×_ω G` (or of `G` when `with_z` is false) from
/// the presentation with generators `z, x_g` and relations `2z`, `x_e`,
/// `x_g + x_s − x_{gs} − ω(g,s)·z` for `s` in a generating set of `G`.
fn cayley_abelianization(g: &FiniteTableGroup, omega: &Cocycle, with_z: bool) -> CanonicalForm {
    let n = g.order();
    let off = usize::from(with_z);
    let cols = n + off;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let unit = |i: usize| {
        let mut r = vec![0i64; cols];
        r[i] = 1;
        r
    };
    if with_z {
        let mut r = unit(0);
        r[0] = 2;
        rows.push(r);
    }
    rows.push(unit(off + g.identity()));
    for x in 0..n {
        for &s in &g.generators() {
            let mut r = vec![0i64; cols];
            r[off + x] += 1;
            r[off + s] += 1;
            r[off + g.mul(x, s)] -= 1;
            if with_z && omega[x][s] {
                r[0] -= 1;
            }
            rows.push(r);
        }
    }
    let rel = IntMatrix::from_rows(cols, &rows).expect("rectangular");
    presentation_invariants(cols, &rel).expect("consistent widths")
}

/// Abelianisation of the extension described by abelian data: generators
/// `z, a₁, …, a_k`, relations `2z`, `nᵢaᵢ = extᵢ·z`, and `z = 0` when the
/// pairing is nonzero (then `z` is a commutator).
fn abelian_data_h1(a: &FgAbelianGroup, ext_bits: &[bool], pairing: &[Vec<bool>]) -> CanonicalForm {
    let k = a.ngens();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut z = vec![0i64; k + 1];
    z[0] = if pairing.iter().flatten().any(|&b| b) { 1 } else { 2 };
    rows.push(z);
    for i in 0..k {
        if let Some(m) = a.modulus(i) {
            let mut r = vec![0i64; k + 1];
            r[1 + i] = m as i64;
            r[0] = -i64::from(ext_bits[i]);
            rows.push(r);
        }
    }
    let rel = IntMatrix::from_rows(k + 1, &rows).expect("rectangular");
    presentation_invariants(k + 1, &rel).expect("consistent widths")
}

fn with_z2(form: &CanonicalForm) -> CanonicalForm {
    let mut t = form.torsion.clone();
    t.push(BigInt::from(2));
    CanonicalForm::from_cyclic_factors(form.rank, &t)
}

/// Predicted `H₁(FrX)` for the spin alternative of `fb`.
pub fn h1_frame_bundle(fb: &FrameBundlePi1) -> H1Description {
    let base = h1_base(&fb.base);
    let form = match fb.alternative {
        SpinAlternative::TotallyNonspin | SpinAlternative::HNonspin => base.clone(),
        SpinAlternative::Spin => base.as_ref().map(with_z2),
        SpinAlternative::HSpin => match (&fb.data, &fb.base) {
            (FrameBundleData::Abelian { ext_bits, pairing }, GroupModel::FgAbelian(a)) => {
                Some(abelian_data_h1(a, ext_bits, pairing))
            }
            (FrameBundleData::Cocycle { omega }, GroupModel::FiniteTable(g)) => Some(cayley_abelianization(g, omega, true)),
            _ => None,
        },
    };
    let symbolic = match (&form, fb.alternative) {
        (Some(f), _) => f.to_string(),
        (None, SpinAlternative::Spin) => "Z/2 ⊕ H₁X".to_string(),
        (None, SpinAlternative::HSpin) => "nonsplit Z/2 ↣ H₁(FrX) ↠ H₁X".to_string(),
        (None, _) => "H₁X".to_string(),
    };
    H1Description { form, symbolic }
}

/// Does `h1_e` have the shape the alternative predicts relative to
/// `h1_g = H₁X`? For h-spin the extension `Z/2 ↣ H₁E ↠ H₁X` must be
/// nonsplit; for finite groups that means `|H₁E| = 2|H₁X|` and
/// `H₁E ≇ Z/2 ⊕ H₁X`.
pub fn h1_matches_alternative(alt: SpinAlternative, h1_e: &CanonicalForm, h1_g: &CanonicalForm) -> bool {
    match alt {
        SpinAlternative::TotallyNonspin | SpinAlternative::HNonspin => h1_e == h1_g,
        SpinAlternative::Spin => *h1_e == with_z2(h1_g),
        SpinAlternative::HSpin => match (h1_e.order(), h1_g.order()) {
            (Some(e), Some(g)) => e == g * 2 && *h1_e != with_z2(h1_g),
            _ => h1_e.rank == h1_g.rank && *h1_e != with_z2(h1_g),
        },
    }
}

/// Whether an extension splits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SplitStatus {
    SplitWithWitness,
    Nonsplit,
    Undetermined,
}

impl SplitStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SplitStatus::SplitWithWitness => "split-with-witness",
            SplitStatus::Nonsplit => "nonsplit",
            SplitStatus::Undetermined => "undetermined",
        }
    }
}

/// Evidence for a splitting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitWitness {
    /// The zero section `h ↦ (0, h)` (or no kernel at all).
    ZeroSection,
    /// The section `h ↦ (f(h), h)`, verified on all pairs.
    Coboundary(Vec<(GroupElement, bool)>),
    /// Lifts `(aₖ, hₖ)` of independent generators, each of the same order
    /// as `hₖ`, which therefore span a complement.
    GeneratorLifts(Vec<(GroupElement, bool)>),
    /// The quotient is free cyclic, so any lift of its generator splits.
    FreeCyclic(GroupElement),
    /// Direct product of the named pieces.
    Product(String),
}

/// A central extension `kernel ↣ E ↠ quotient`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionDescriptor {
    pub kernel: CanonicalForm,
    pub kernel_label: String,
    pub quotient: SubgroupDescriptor,
    pub quotient_label: String,
    pub status: SplitStatus,
    pub witness: Option<SplitWitness>,
    /// Restricted cocycle on the quotient's elements, when finite.
    pub cocycle: Option<Vec<(GroupElement, GroupElement, bool)>>,
    /// Action of quotient generators on the kernel presentation.
    pub action: Vec<(GroupElement, IntMatrix)>,
    /// Named kernel elements, e.g. `z`, `rot`, `unrot`.
    pub named_generators: Vec<(String, Vec<BigInt>)>,
}

/// The extension `Z/2 ↣ Ẽ ↠ H` obtained by restricting π₁FrX over a
/// subgroup `H` of π₁X.
pub fn restricted_splitting(fb: &FrameBundlePi1, h: &SubgroupDescriptor) -> Result<ExtensionDescriptor, SpinError> {
    let z2 = CanonicalForm::from_cyclic_factors(0, &[BigInt::from(2)]);
    let mut ext = ExtensionDescriptor {
        kernel: z2,
        kernel_label: "Z/2".into(),
        quotient: h.clone(),
        quotient_label: "H".into(),
        status: SplitStatus::SplitWithWitness,
        witness: Some(SplitWitness::ZeroSection),
        cocycle: None,
        action: Vec::new(),
        named_generators: vec![("z".into(), vec![BigInt::from(1)])],
    };
    match (&fb.data, &fb.base) {
        (FrameBundleData::Product, _) => {}
        (FrameBundleData::IsoToBase, _) => {
            ext.kernel = CanonicalForm::trivial();
            ext.kernel_label = "0".into();
            ext.named_generators.clear();
        }
        (_, GroupModel::SelfCentralizingZ(_)) => {
            ext.witness = Some(SplitWitness::FreeCyclic(GroupElement::CPower(1)));
        }
        (FrameBundleData::Cocycle { omega }, GroupModel::FiniteTable(g)) => {
            let elems = indices(h.elements.as_ref().ok_or(SpinError::NotEnumerable)?)?;
            let gens = indices(&h.generators)?;
            ext.cocycle = Some(
                elems
                    .iter()
                    .flat_map(|&a| elems.iter().map(move |&b| (a, b)))
                    .map(|(a, b)| (GroupElement::Index(a), GroupElement::Index(b), omega[a][b]))
                    .collect(),
            );
            match coboundary_on_subgroup(omega, g, &elems, &gens) {
                Some(f) => {
                    ext.witness =
                        Some(SplitWitness::Coboundary(f.into_iter().map(|(x, v)| (GroupElement::Index(x), v)).collect()))
                }
                None => {
                    ext.status = SplitStatus::Nonsplit;
                    ext.witness = None;
                }
            }
        }
        (FrameBundleData::Abelian { ext_bits, pairing }, GroupModel::FgAbelian(a)) => {
            match abelian_restricted_lifts(a, ext_bits, pairing, &h.generators)? {
                Some(lifts) => ext.witness = Some(SplitWitness::GeneratorLifts(lifts)),
                None => {
                    ext.status = SplitStatus::Nonsplit;
                    ext.witness = None;
                }
            }
        }
        _ => return Err(SpinError::Unsupported("frame bundle data does not match the group model")),
    }
    Ok(ext)
}

fn indices(v: &[GroupElement]) -> Result<Vec<usize>, SpinError> {
    v.iter()
        .map(|e| match e {
            GroupElement::Index(i) => Ok(*i),
            _ => Err(SpinError::Unsupported("expected table elements")),
        })
        .collect()
}

/// Power `(0, x)^m` in the extension defined by abelian data, returned as
/// its central coordinate (the base coordinate is `m·x`).
fn abelian_lift_power(a: &FgAbelianGroup, ext_bits: &[bool], pairing: &[Vec<bool>], x: &[i64], m: u64) -> bool {
    let mul = |p: &(bool, Vec<i64>), q: &(bool, Vec<i64>)| -> (bool, Vec<i64>) {
        let c = p.0 ^ q.0 ^ abelian_cocycle(ext_bits, pairing, a, &p.1, &q.1);
        (c, a.add(&p.1, &q.1).expect("bounded by the group order"))
    };
    let mut acc = (false, vec![0; a.ngens()]);
    let mut base = (false, x.to_vec());
    let mut e = m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        base = mul(&base, &base);
        e >>= 1;
    }
    acc.0
}

/// Splitting over the subgroup generated by `gens`: decompose it into
/// independent cyclic summands `⟨hₖ⟩` of order `mₖ`; the restriction splits
/// iff it is abelian (pairing vanishes on the subgroup) and each `hₖ`
/// admits a lift of order `mₖ`.
fn abelian_restricted_lifts(
    a: &FgAbelianGroup,
    ext_bits: &[bool],
    pairing: &[Vec<bool>],
    gens: &[GroupElement],
) -> Result<Option<Vec<(GroupElement, bool)>>, SpinError> {
    let k = a.ngens();
    let vecs: Vec<Vec<i64>> = gens
        .iter()
        .map(|g| match g {
            GroupElement::Vector(v) => Ok(v.clone()),
            _ => Err(SpinError::Unsupported("expected abelian elements")),
        })
        .collect::<Result<_, _>>()?;
    for x in &vecs {
        for y in &vecs {
            if pairing_value(pairing, x, y) {
                return Ok(None);
            }
        }
    }
    let mut lattice_rows = Vec::new();
    for i in a.rank()..k {
        let mut r = vec![BigInt::zero(); k];
        r[i] = BigInt::from(a.modulus(i).expect("torsion"));
        lattice_rows.push(r);
    }
    let mut span: Vec<Vec<BigInt>> = vecs.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    span.extend(lattice_rows.iter().cloned());
    let lattice = IntMatrix::from_big_rows(k, &lattice_rows).expect("rectangular");
    let sq = subquotient(k, &span, &lattice).expect("lattice lies in the span");
    let mut lifts = Vec::new();
    for (gen, order) in sq.generators.iter().zip(&sq.orders) {
        let h: Vec<i64> = a.reduce(&gen.iter().map(|x| x.to_i64().expect("small coordinates")).collect::<Vec<_>>());
        let lift = if order.is_zero() {
            false
        } else {
            let m = order.to_u64().expect("finite order fits");
            let c = abelian_lift_power(a, ext_bits, pairing, &h, m);
            if m % 2 == 0 {
                if c {
                    return Ok(None);
                }
                false
            } else {
                // (c, h)^m = (c·m + c, 0) = (0, 0) for m odd
                c
            }
        };
        lifts.push((GroupElement::Vector(h), lift));
    }
    Ok(Some(lifts))
}
