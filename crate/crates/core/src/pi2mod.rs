//! π₂X as a finitely generated abelian group `Z^n / rowspan(R)` with a
//! π₁-action by integer matrices acting on column vectors.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::groups::{GroupElement, GroupError, GroupModel};
use crate::intalg::{
    congruent_mod_lattice, inverse_mod_lattice, kernel_mod_lattice_structured, preserves_lattice,
    quotient_structure, AlgebraError, CanonicalForm, IntMatrix, Subquotient,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("action matrix for {0} is not {1}x{1}")]
    MatrixShape(ActionKey, usize),
    #[error("action matrix for {0} is not invertible on the module")]
    NotInvertible(ActionKey),
    #[error("{y} does not commute with the circle class {c}")]
    NotInCentralizer { y: String, c: String },
    #[error("action of {0} does not preserve the enlarged relation lattice")]
    NotWellDefined(String),
    #[error("functional has length {found}, module has {expected} generators")]
    FunctionalLength { expected: usize, found: usize },
    #[error("functional is odd on relator {0}")]
    IllDefinedFunctional(usize),
    #[error("functional is not invariant under {key}: differs on generator {generator}")]
    NotInvariant { key: ActionKey, generator: usize },
}

/// Which π₁-element an action matrix belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ActionKey {
    /// Element index of a Cayley-table group.
    Element(usize),
    /// Generator of an abelian group.
    Generator(usize),
    /// The distinguished class `c` of the self-centralising model.
    C,
}

impl fmt::Display for ActionKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionKey::Element(i) => write!(f, "index:{i}"),
            ActionKey::Generator(i) => write!(f, "gen:{i}"),
            ActionKey::C => write!(f, "c"),
        }
    }
}

/// A failed check of the module axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionViolation {
    KeyMismatch { key: ActionKey },
    Shape { key: ActionKey },
    LatticeNotPreserved { key: ActionKey },
    IdentityNotTrivial,
    NotHomomorphism { g: usize, h: usize },
    PowerNotIdentity { generator: usize, order: u64 },
    NotCommuting { i: usize, j: usize },
    NotInvertible { key: ActionKey },
}

impl fmt::Display for ActionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionViolation::KeyMismatch { key } => write!(f, "action key {key} does not fit the group model"),
            ActionViolation::Shape { key } => write!(f, "action matrix for {key} has the wrong shape"),
            ActionViolation::LatticeNotPreserved { key } => {
                write!(f, "action matrix for {key} does not preserve the relation lattice")
            }
            ActionViolation::IdentityNotTrivial => write!(f, "the identity acts nontrivially"),
            ActionViolation::NotHomomorphism { g, h } => {
                write!(f, "A_g·A_h != A_gh modulo relations for g=index:{g}, h=index:{h}")
            }
            ActionViolation::PowerNotIdentity { generator, order } => {
                write!(f, "generator gen:{generator} has order {order} but A^{order} != I")
            }
            ActionViolation::NotCommuting { i, j } => {
                write!(f, "action matrices of gen:{i} and gen:{j} do not commute")
            }
            ActionViolation::NotInvertible { key } => write!(f, "action matrix for {key} is not invertible"),
        }
    }
}

/// `Z^ngens / rowspan(relations)` together with its invariant-factor data.
#[derive(Clone, Debug)]
pub struct PresentedAbelianGroup {
    pub ngens: usize,
    pub relations: IntMatrix,
    pub structure: Subquotient,
}

impl PresentedAbelianGroup {
    pub fn new(ngens: usize, relations: IntMatrix) -> Result<Self, AlgebraError> {
        let structure = quotient_structure(ngens, &relations)?;
        Ok(PresentedAbelianGroup { ngens, relations, structure })
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        self.structure.canonical_form()
    }

    /// Is `x ∈ Z^ngens` zero in the quotient?
    pub fn is_zero(&self, x: &[BigInt]) -> Result<bool, AlgebraError> {
        self.structure.is_zero_element(x)
    }
}

/// A subgroup of a presented group, by generators in the ambient `Zⁿ`.
#[derive(Clone, Debug)]
pub struct SubmoduleDescriptor {
    /// Generators of independent cyclic summands.
    pub generators: Vec<Vec<BigInt>>,
    /// Order of each generator, 0 for infinite.
    pub orders: Vec<BigInt>,
    pub canonical_form: CanonicalForm,
}

impl From<Subquotient> for SubmoduleDescriptor {
    fn from(s: Subquotient) -> Self {
        let canonical_form = s.canonical_form();
        SubmoduleDescriptor { generators: s.generators, orders: s.orders, canonical_form }
    }
}

/// π₂X with its π₁-action.
///
/// Missing action keys act by the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi2Module {
    ngens: usize,
    relations: IntMatrix,
    action: BTreeMap<ActionKey, IntMatrix>,
}

impl Pi2Module {
    pub fn new(ngens: usize, relations: IntMatrix, action: BTreeMap<ActionKey, IntMatrix>) -> Result<Self, ModuleError> {
        if relations.cols() != ngens {
            return Err(AlgebraError::DimensionMismatch { expected: ngens, found: relations.cols() }.into());
        }
        for (k, m) in &action {
            if m.rows() != ngens || m.cols() != ngens {
                return Err(ModuleError::MatrixShape(*k, ngens));
            }
        }
        Ok(Pi2Module { ngens, relations, action })
    }

    pub fn zero() -> Self {
        Pi2Module { ngens: 0, relations: IntMatrix::zeros(0, 0), action: BTreeMap::new() }
    }

    /// Free module `Z^n` with trivial action.
    pub fn free_trivial(n: usize) -> Self {
        Pi2Module { ngens: n, relations: IntMatrix::zeros(0, n), action: BTreeMap::new() }
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn action(&self) -> &BTreeMap<ActionKey, IntMatrix> {
        &self.action
    }

    pub fn underlying_group(&self) -> Result<PresentedAbelianGroup, AlgebraError> {
        PresentedAbelianGroup::new(self.ngens, self.relations.clone())
    }

    fn key_matrix(&self, key: ActionKey) -> IntMatrix {
        self.action.get(&key).cloned().unwrap_or_else(|| IntMatrix::identity(self.ngens))
    }

    /// `A^k` for a possibly negative `k`, inverting modulo the relations.
    fn signed_power(&self, a: &IntMatrix, k: i64, key: ActionKey) -> Result<IntMatrix, ModuleError> {
        if k >= 0 {
            return Ok(a.pow(k as u64));
        }
        let inv = inverse_mod_lattice(a, &self.relations)?.ok_or(ModuleError::NotInvertible(key))?;
        Ok(inv.pow(k.unsigned_abs()))
    }

    /// Matrix by which `g` acts. For abelian π₁ this is the product of
    /// generator-matrix powers in generator order.
    pub fn action_matrix(&self, group: &GroupModel, g: &GroupElement) -> Result<IntMatrix, ModuleError> {
        group.check(g)?;
        match g {
            GroupElement::Index(i) => Ok(self.key_matrix(ActionKey::Element(*i))),
            GroupElement::Vector(v) => {
                let mut acc = IntMatrix::identity(self.ngens);
                for (i, &x) in v.iter().enumerate() {
                    if x != 0 {
                        let key = ActionKey::Generator(i);
                        let p = self.signed_power(&self.key_matrix(key), x, key)?;
                        acc = acc.checked_mul(&p)?;
                    }
                }
                Ok(acc)
            }
            GroupElement::CPower(k) => self.signed_power(&self.key_matrix(ActionKey::C), *k, ActionKey::C),
        }
    }

    /// Checks lattice preservation and the homomorphism property.
    pub fn validate_action(&self, group: &GroupModel) -> Vec<ActionViolation> {
        let mut out = Vec::new();
        for (key, m) in &self.action {
            let fits = match (group, key) {
                (GroupModel::FiniteTable(g), ActionKey::Element(i)) => *i < g.order(),
                (GroupModel::FgAbelian(g), ActionKey::Generator(i)) => *i < g.ngens(),
                (GroupModel::SelfCentralizingZ(_), ActionKey::C) => true,
                _ => false,
            };
            if !fits {
                out.push(ActionViolation::KeyMismatch { key: *key });
                continue;
            }
            if m.rows() != self.ngens || m.cols() != self.ngens {
                out.push(ActionViolation::Shape { key: *key });
                continue;
            }
            if !preserves_lattice(m, &self.relations).unwrap_or(false) {
                out.push(ActionViolation::LatticeNotPreserved { key: *key });
            }
        }
        if !out.is_empty() {
            return out;
        }
        let congruent = |a: &IntMatrix, b: &IntMatrix| congruent_mod_lattice(a, b, &self.relations).unwrap_or(false);
        let id = IntMatrix::identity(self.ngens);
        match group {
            GroupModel::FiniteTable(g) => {
                if self.action.is_empty() {
                    return out;
                }
                if !congruent(&self.key_matrix(ActionKey::Element(g.identity())), &id) {
                    out.push(ActionViolation::IdentityNotTrivial);
                }
                let mats: Vec<IntMatrix> = (0..g.order()).map(|i| self.key_matrix(ActionKey::Element(i))).collect();
                for a in 0..g.order() {
                    for b in 0..g.order() {
                        let prod = mats[a].checked_mul(&mats[b]).expect("square");
                        if !congruent(&prod, &mats[g.mul(a, b)]) {
                            out.push(ActionViolation::NotHomomorphism { g: a, h: b });
                        }
                    }
                }
            }
            GroupModel::FgAbelian(g) => {
                for i in 0..g.ngens() {
                    let key = ActionKey::Generator(i);
                    let a = self.key_matrix(key);
                    if inverse_mod_lattice(&a, &self.relations).ok().flatten().is_none() {
                        out.push(ActionViolation::NotInvertible { key });
                    }
                    if let Some(n) = g.modulus(i) {
                        if !congruent(&a.pow(n), &id) {
                            out.push(ActionViolation::PowerNotIdentity { generator: i, order: n });
                        }
                    }
                    for j in i + 1..g.ngens() {
                        let b = self.key_matrix(ActionKey::Generator(j));
                        if !congruent(&(&a * &b), &(&b * &a)) {
                            out.push(ActionViolation::NotCommuting { i, j });
                        }
                    }
                }
            }
            GroupModel::SelfCentralizingZ(_) => {
                let a = self.key_matrix(ActionKey::C);
                if inverse_mod_lattice(&a, &self.relations).ok().flatten().is_none() {
                    out.push(ActionViolation::NotInvertible { key: ActionKey::C });
                }
            }
        }
        out
    }

    /// `Fix_c = ker(A_c − I)` on the presented group.
    pub fn fixed_submodule(&self, group: &GroupModel, c: &GroupElement) -> Result<SubmoduleDescriptor, ModuleError> {
        let a = self.action_matrix(group, c)?;
        Ok(kernel_mod_lattice_structured(&a.minus_identity(), &self.relations)?.into())
    }

    /// Relations of the coinvariant quotient: `R` together with the
    /// images `(A_c − I)eⱼ`, i.e. the columns of `A_c − I`.
    pub fn coinvariant_relations(&self, group: &GroupModel, c: &GroupElement) -> Result<IntMatrix, ModuleError> {
        let a = self.action_matrix(group, c)?;
        Ok(self.relations.vstack(&a.minus_identity().transpose())?)
    }

    /// `π₂ / (b = c·b)`.
    pub fn coinvariants(&self, group: &GroupModel, c: &GroupElement) -> Result<PresentedAbelianGroup, ModuleError> {
        let rel = self.coinvariant_relations(group, c)?;
        Ok(PresentedAbelianGroup::new(self.ngens, rel)?)
    }

    /// Matrix of `y` acting on the coinvariants at `c`, for `y` in the
    /// centraliser of `c`.
    pub fn induced_action_on_coinvariants(
        &self,
        group: &GroupModel,
        c: &GroupElement,
        y: &GroupElement,
    ) -> Result<IntMatrix, ModuleError> {
        if !group.commutes(y, c)? {
            return Err(ModuleError::NotInCentralizer { y: group.describe(y), c: group.describe(c) });
        }
        let a_y = self.action_matrix(group, y)?;
        let rel = self.coinvariant_relations(group, c)?;
        if !preserves_lattice(&a_y, &rel)? {
            return Err(ModuleError::NotWellDefined(group.describe(y)));
        }
        Ok(a_y)
    }

    /// Rejects functionals that are odd on some relator.
    pub fn check_functional(&self, f: &[bool]) -> Result<(), ModuleError> {
        if f.len() != self.ngens {
            return Err(ModuleError::FunctionalLength { expected: self.ngens, found: f.len() });
        }
        for k in 0..self.relations.rows() {
            if pairing_mod2(f, self.relations.row(k)) {
                return Err(ModuleError::IllDefinedFunctional(k));
            }
        }
        Ok(())
    }

    /// Rejects functionals with `f(A_g b) ≠ f(b)` for some action matrix.
    pub fn check_functional_invariance(&self, f: &[bool]) -> Result<(), ModuleError> {
        self.check_functional(f)?;
        for (key, m) in &self.action {
            for j in 0..self.ngens {
                let image = m.column(j);
                if pairing_mod2(f, &image) != f[j] {
                    return Err(ModuleError::NotInvariant { key: *key, generator: j });
                }
            }
        }
        Ok(())
    }

    /// `f(b) mod 2`.
    pub fn evaluate_functional(&self, f: &[bool], b: &[BigInt]) -> Result<bool, ModuleError> {
        self.check_functional(f)?;
        if b.len() != self.ngens {
            return Err(AlgebraError::DimensionMismatch { expected: self.ngens, found: b.len() }.into());
        }
        Ok(pairing_mod2(f, b))
    }
}

pub(crate) fn pairing_mod2(f: &[bool], b: &[BigInt]) -> bool {
    let mut acc = false;
    for (bit, x) in f.iter().zip(b) {
        if *bit && x.is_odd() {
            acc = !acc;
        }
    }
    acc
}

/// Short description of a vector, e.g. `(1, -1)`.
pub fn format_vector(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x}")).collect();
    format!("({})", parts.join(", "))
}

/// Unit vector `eᵢ` in `Zⁿ`.
pub fn unit_vector(n: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{FgAbelianGroup, FiniteTableGroup, SelfCentralizingZ};
    use crate::intalg::big_vec;

    fn z2() -> GroupModel {
        GroupModel::FiniteTable(FiniteTableGroup::cyclic(2))
    }

    fn module(n: usize, rel: &[&[i64]], action: &[(ActionKey, &[&[i64]])]) -> Pi2Module {
        let r = IntMatrix::from_rows(n, rel).unwrap();
        let a = action.iter().map(|(k, m)| (*k, IntMatrix::from_rows(n, m).unwrap())).collect();
        Pi2Module::new(n, r, a).unwrap()
    }

    fn swap_module() -> Pi2Module {
        module(2, &[], &[(ActionKey::Element(1), &[&[0, 1], &[1, 0]])])
    }

    #[test]
    fn validate_examples() {
        assert!(Pi2Module::free_trivial(3).validate_action(&z2()).is_empty());
        assert!(swap_module().validate_action(&z2()).is_empty());
        let bad = module(1, &[], &[(ActionKey::Element(1), &[&[2]])]);
        let v = bad.validate_action(&z2());
        assert!(v.contains(&ActionViolation::NotHomomorphism { g: 1, h: 1 }), "{v:?}");
        assert!(format!("{}", v[0]).contains("index:1"));
    }

    #[test]
    fn validate_abelian_generators() {
        let g = GroupModel::FgAbelian(FgAbelianGroup::new(1, vec![2]).unwrap());
        let ok = module(2, &[], &[(ActionKey::Generator(1), &[&[0, 1], &[1, 0]])]);
        assert!(ok.validate_action(&g).is_empty());
        let not_inv = module(1, &[], &[(ActionKey::Generator(0), &[&[2]])]);
        assert!(not_inv.validate_action(&g).contains(&ActionViolation::NotInvertible { key: ActionKey::Generator(0) }));
        let order = module(1, &[], &[(ActionKey::Generator(1), &[&[3]])]);
        assert!(order
            .validate_action(&g)
            .contains(&ActionViolation::PowerNotIdentity { generator: 1, order: 2 }));
        let g2 = GroupModel::FgAbelian(FgAbelianGroup::new(2, vec![]).unwrap());
        let noncomm = module(
            2,
            &[],
            &[(ActionKey::Generator(0), &[&[1, 1], &[0, 1]]), (ActionKey::Generator(1), &[&[1, 0], &[1, 1]])],
        );
        assert!(noncomm.validate_action(&g2).contains(&ActionViolation::NotCommuting { i: 0, j: 1 }));
        let wrong_key = module(1, &[], &[(ActionKey::C, &[&[1]])]);
        assert_eq!(wrong_key.validate_action(&g2), vec![ActionViolation::KeyMismatch { key: ActionKey::C }]);
    }

    #[test]
    fn lattice_preservation_is_checked() {
        // Z/2 ⊕ Z with a matrix sending the relator (2,0) to (2,1)
        let m = module(2, &[&[2, 0]], &[(ActionKey::Element(1), &[&[1, 0], &[1, 1]])]);
        assert!(m.validate_action(&z2()).contains(&ActionViolation::LatticeNotPreserved { key: ActionKey::Element(1) }));
    }

    #[test]
    fn fixed_submodule_examples() {
        let g = z2();
        let c = GroupElement::Index(1);
        let triv = Pi2Module::free_trivial(2).fixed_submodule(&g, &c).unwrap();
        assert_eq!(triv.canonical_form, CanonicalForm::free(2));
        let sw = swap_module().fixed_submodule(&g, &c).unwrap();
        assert_eq!(sw.canonical_form, CanonicalForm::free(1));
        assert_eq!(sw.generators, vec![big_vec(&[1, 1])]);
        let neg = module(1, &[], &[(ActionKey::Element(1), &[&[-1]])]).fixed_submodule(&g, &c).unwrap();
        assert!(neg.canonical_form.is_trivial());
    }

    #[test]
    fn coinvariant_examples() {
        let g = z2();
        let c = GroupElement::Index(1);
        let triv = Pi2Module::free_trivial(2).coinvariants(&g, &c).unwrap();
        assert_eq!(triv.canonical_form(), CanonicalForm::free(2));
        let sw = swap_module().coinvariants(&g, &c).unwrap();
        assert_eq!(sw.canonical_form(), CanonicalForm::free(1));
        assert!(sw.is_zero(&big_vec(&[1, -1])).unwrap());
        let neg = module(1, &[], &[(ActionKey::Element(1), &[&[-1]])]).coinvariants(&g, &c).unwrap();
        assert_eq!(format!("{}", neg.canonical_form()), "Z/2");
    }

    #[test]
    fn coinvariants_use_images_not_rows() {
        // A = [[1,1],[0,1]]: b − A·b = (−b₂, 0), so e₁ dies and e₂ survives.
        // Quotienting by the rows of A − I would kill e₂ instead.
        let g = GroupModel::FgAbelian(FgAbelianGroup::new(1, vec![]).unwrap());
        let m = module(2, &[], &[(ActionKey::Generator(0), &[&[1, 1], &[0, 1]])]);
        let co = m.coinvariants(&g, &GroupElement::Vector(vec![1])).unwrap();
        assert!(co.is_zero(&big_vec(&[1, 0])).unwrap());
        assert!(!co.is_zero(&big_vec(&[0, 1])).unwrap());
    }

    #[test]
    fn induced_action_examples() {
        let g = z2();
        let sw = swap_module();
        let c = GroupElement::Index(1);
        assert!(sw.induced_action_on_coinvariants(&g, &c, &GroupElement::Index(0)).unwrap().is_identity());
        let a = sw.induced_action_on_coinvariants(&g, &c, &c).unwrap();
        let rel = sw.coinvariant_relations(&g, &c).unwrap();
        assert!(congruent_mod_lattice(&a, &IntMatrix::identity(2), &rel).unwrap());

        let z2g = GroupModel::FgAbelian(FgAbelianGroup::new(2, vec![]).unwrap());
        let m = module(1, &[], &[(ActionKey::Generator(1), &[&[-1]])]);
        let a = m
            .induced_action_on_coinvariants(&z2g, &GroupElement::Vector(vec![1, 0]), &GroupElement::Vector(vec![0, 1]))
            .unwrap();
        assert_eq!(a, IntMatrix::from_rows(1, &[[-1]]).unwrap());
    }

    #[test]
    fn induced_action_requires_centralizer() {
        let s3 = GroupModel::FiniteTable(crate::groups::catalog::s3());
        let m = Pi2Module::zero();
        let err = m.induced_action_on_coinvariants(&s3, &GroupElement::Index(1), &GroupElement::Index(2));
        assert!(matches!(err, Err(ModuleError::NotInCentralizer { .. })));
    }

    #[test]
    fn abelian_element_matrices_compose_generators() {
        let g = GroupModel::FgAbelian(FgAbelianGroup::new(1, vec![]).unwrap());
        let m = module(2, &[], &[(ActionKey::Generator(0), &[&[1, 1], &[0, 1]])]);
        let a = m.action_matrix(&g, &GroupElement::Vector(vec![-2])).unwrap();
        assert_eq!(a, IntMatrix::from_rows(2, &[[1, -2], [0, 1]]).unwrap());
        let s = GroupModel::SelfCentralizingZ(SelfCentralizingZ { label: "M".into() });
        let mc = module(1, &[], &[(ActionKey::C, &[&[-1]])]);
        assert_eq!(mc.action_matrix(&s, &GroupElement::CPower(3)).unwrap(), IntMatrix::from_rows(1, &[[-1]]).unwrap());
    }

    #[test]
    fn functional_examples() {
        let z = Pi2Module::free_trivial(1);
        assert!(!z.evaluate_functional(&[false], &big_vec(&[3])).unwrap());
        assert!(z.evaluate_functional(&[true], &big_vec(&[3])).unwrap());
        let m = module(2, &[&[2, 0]], &[]);
        assert!(m.evaluate_functional(&[true, false], &big_vec(&[1, 5])).unwrap());
        let odd = module(1, &[&[3]], &[]);
        assert_eq!(odd.check_functional(&[true]), Err(ModuleError::IllDefinedFunctional(0)));
        let sw = swap_module();
        assert!(sw.check_functional_invariance(&[true, true]).is_ok());
        assert!(matches!(sw.check_functional_invariance(&[true, false]), Err(ModuleError::NotInvariant { .. })));
    }

    #[test]
    fn zero_module_everywhere() {
        let m = Pi2Module::zero();
        let g = GroupModel::FgAbelian(FgAbelianGroup::new(4, vec![]).unwrap());
        let c = GroupElement::Vector(vec![1, 0, 0, 0]);
        assert!(m.validate_action(&g).is_empty());
        assert!(m.fixed_submodule(&g, &c).unwrap().canonical_form.is_trivial());
        assert!(m.coinvariants(&g, &c).unwrap().canonical_form().is_trivial());
        assert!(m.check_functional(&[]).is_ok());
    }
}
