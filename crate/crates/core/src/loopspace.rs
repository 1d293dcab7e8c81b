//! Free loop space at `c`: π₀ as conjugacy classes and π₁ as the central
//! extension `π₂X/(b = c·b) ↣ π₁(ΛX; c) ↠ Fix_c(π₁X)`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::groups::{ConjugacyClasses, GroupElement, GroupError, GroupModel};
use crate::intalg::CanonicalForm;
use crate::pi2mod::{ModuleError, Pi2Module};
use crate::spinclass::{ExtensionDescriptor, SplitStatus, SplitWitness};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LoopError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

pub const KERNEL_LABEL: &str = "π₂X/(b=c̄·b)";
pub const FIX_LABEL: &str = "Fix_c̄(π₁X)";

/// `b ↦ b − A_c·b`, the connecting map in degree one.
pub fn delta_lambda(module: &Pi2Module, group: &GroupModel, c: &GroupElement, b: &[BigInt]) -> Result<Vec<BigInt>, LoopError> {
    let a = module.action_matrix(group, c)?;
    let ab = a.apply(b).map_err(ModuleError::from)?;
    Ok(b.iter().zip(ab).map(|(x, y)| x - y).collect())
}

/// `h ↦ h·c·h⁻¹`, the action in degree zero.
pub fn delta_lambda_0(group: &GroupModel, h: &GroupElement, c: &GroupElement) -> Result<GroupElement, LoopError> {
    Ok(group.conjugate(h, c)?)
}

/// π₀ of the free loop space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pi0Description {
    Classes(Vec<Vec<GroupElement>>),
    Symbolic(String),
}

/// `π₁(ΛX; c) ≅ ⟨c⟩ × π₂X/(b = c·b)` in the self-centralising case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductDecomposition {
    pub generator: GroupElement,
    /// Order of `c`, `None` when infinite.
    pub generator_order: Option<u64>,
    pub kernel: CanonicalForm,
    /// Kernel coordinates: generators of the coinvariants in π₂ coordinates.
    pub unrot: Vec<Vec<BigInt>>,
    pub unrot_orders: Vec<BigInt>,
    /// Isomorphism type of the (abelian) product.
    pub group: CanonicalForm,
    pub rendered: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopSpaceReport {
    pub pi0: Pi0Description,
    pub pi1_extension: Option<ExtensionDescriptor>,
    pub self_centralizing: Option<bool>,
    pub product_decomposition: Option<ProductDecomposition>,
    pub warnings: Vec<String>,
}

/// The extension `π₂X/(b = c·b) ↣ π₁(ΛX; c) ↠ Fix_c(π₁X)` with the
/// induced action of centraliser generators on the kernel.
pub fn pi1_free_loop_extension(
    group: &GroupModel,
    module: &Pi2Module,
    c: &GroupElement,
    max_enumerate: usize,
) -> Result<ExtensionDescriptor, LoopError> {
    let coinv = module.coinvariants(group, c)?;
    let kernel = coinv.canonical_form();
    let quotient = group.centralizer(c, max_enumerate)?;
    let mut action = Vec::with_capacity(quotient.generators.len());
    for y in &quotient.generators {
        action.push((y.clone(), module.induced_action_on_coinvariants(group, c, y)?));
    }
    let self_centralizing = group.is_self_centralizing(c)?;
    let c_infinite = group.element_order(c)?.is_none();
    let (status, witness, named) = if kernel.is_trivial() {
        (SplitStatus::SplitWithWitness, Some(SplitWitness::ZeroSection), Vec::new())
    } else if self_centralizing {
        let named = coinv
            .structure
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| (format!("unrot[{i}]"), g.clone()))
            .collect();
        if c_infinite {
            (SplitStatus::SplitWithWitness, Some(SplitWitness::Product("rot × unrot: ⟨c̄⟩ × π₂X/(b=c̄·b)".into())), named)
        } else {
            (SplitStatus::Undetermined, None, named)
        }
    } else {
        (SplitStatus::Undetermined, None, Vec::new())
    };
    Ok(ExtensionDescriptor {
        kernel,
        kernel_label: KERNEL_LABEL.into(),
        quotient,
        quotient_label: FIX_LABEL.into(),
        status,
        witness,
        cocycle: None,
        action,
        named_generators: named,
    })
}

/// π₀ and π₁ of `Imm(S¹, X)` at `c`. Unsupported sub-queries degrade to
/// symbolic output with a warning.
pub fn imm_invariants(group: &GroupModel, module: &Pi2Module, c: &GroupElement, max_enumerate: usize) -> LoopSpaceReport {
    let mut warnings = Vec::new();
    let pi0 = match group.conjugacy_classes() {
        ConjugacyClasses::Classes(cl) => Pi0Description::Classes(cl),
        ConjugacyClasses::OneClassPerElement => {
            let form = group.abelianization().map(|f| f.to_string()).unwrap_or_else(|| "π₁X".into());
            Pi0Description::Symbolic(format!("elements of {form}"))
        }
        ConjugacyClasses::Unsupported => {
            warnings.push("conjugacy classes are not computable in the self-centralizing model; π₀ left symbolic".into());
            Pi0Description::Symbolic("conjugacy classes of π₁X".into())
        }
    };
    let ext = match pi1_free_loop_extension(group, module, c, max_enumerate) {
        Ok(e) => Some(e),
        Err(e) => {
            warnings.push(format!("π₁Imm extension not computed: {e}"));
            None
        }
    };
    let self_centralizing = group.is_self_centralizing(c).ok();
    let product_decomposition = match (&ext, self_centralizing) {
        (Some(e), Some(true)) => {
            let order = group.element_order(c).ok().flatten();
            if order.is_some_and(|k| k > 1) && !e.kernel.is_trivial() {
                warnings.push(
                    "c̄ is self-centralizing but has finite order; the rotation splitting is only a homomorphism on ⟨c̄⟩ ≅ Z, so the product form is not guaranteed"
                        .into(),
                );
            }
            Some(product_decomposition(group, module, c, e, order))
        }
        _ => None,
    };
    LoopSpaceReport { pi0, pi1_extension: ext, self_centralizing, product_decomposition, warnings }
}

fn product_decomposition(
    group: &GroupModel,
    module: &Pi2Module,
    c: &GroupElement,
    ext: &ExtensionDescriptor,
    order: Option<u64>,
) -> ProductDecomposition {
    let mut torsion = ext.kernel.torsion.clone();
    let mut rank = ext.kernel.rank;
    match order {
        None => rank += 1,
        Some(k) => torsion.push(BigInt::from(k)),
    }
    let combined = CanonicalForm::from_cyclic_factors(rank, &torsion);
    let (unrot, unrot_orders) = match module.coinvariants(group, c) {
        Ok(co) => (co.structure.generators, co.structure.orders),
        Err(_) => (Vec::new(), Vec::new()),
    };
    let cyc = match order {
        None => "Z".to_string(),
        Some(1) => "0".to_string(),
        Some(k) => format!("Z/{k}"),
    };
    ProductDecomposition {
        generator: c.clone(),
        generator_order: order,
        kernel: ext.kernel.clone(),
        unrot,
        unrot_orders,
        rendered: format!("⟨{}⟩ × {KERNEL_LABEL} ≅ {cyc} × {} ≅ {combined}", group.describe(c), ext.kernel),
        group: combined,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::catalog::s3;
    use crate::groups::{FgAbelianGroup, FiniteTableGroup, SelfCentralizingZ};
    use crate::intalg::{big_vec, IntMatrix};
    use crate::pi2mod::ActionKey;
    use alloc::collections::BTreeMap;
    use alloc::vec;

    fn z() -> GroupModel {
        GroupModel::FgAbelian(FgAbelianGroup::new(1, vec![]).unwrap())
    }

    #[test]
    fn delta_examples() {
        let g = GroupModel::FiniteTable(FiniteTableGroup::cyclic(2));
        let c = GroupElement::Index(1);
        let triv = Pi2Module::free_trivial(2);
        assert_eq!(delta_lambda(&triv, &g, &c, &big_vec(&[3, 4])).unwrap(), big_vec(&[0, 0]));
        let sw = Pi2Module::new(
            2,
            IntMatrix::zeros(0, 2),
            BTreeMap::from([(ActionKey::Element(1), IntMatrix::from_rows(2, &[[0, 1], [1, 0]]).unwrap())]),
        )
        .unwrap();
        assert_eq!(delta_lambda(&sw, &g, &c, &big_vec(&[1, 0])).unwrap(), big_vec(&[1, -1]));
        let a = GroupModel::FgAbelian(FgAbelianGroup::new(1, vec![2]).unwrap());
        let cv = GroupElement::Vector(vec![1, 1]);
        assert_eq!(delta_lambda_0(&a, &GroupElement::Vector(vec![-4, 1]), &cv).unwrap(), cv);
    }

    #[test]
    fn coinvariants_are_pi2_mod_delta_image() {
        let g = GroupModel::FiniteTable(FiniteTableGroup::cyclic(2));
        let c = GroupElement::Index(1);
        let m = Pi2Module::new(
            3,
            IntMatrix::zeros(0, 3),
            BTreeMap::from([(ActionKey::Element(1), IntMatrix::from_rows(3, &[[0, 1, 0], [1, 0, 0], [0, 0, -1]]).unwrap())]),
        )
        .unwrap();
        let images: Vec<Vec<i64>> = (0..3)
            .map(|i| {
                let mut e = vec![0i64; 3];
                e[i] = 1;
                delta_lambda(&m, &g, &c, &big_vec(&e)).unwrap().iter().map(|x| i64::try_from(x).unwrap()).collect()
            })
            .collect();
        let rel = IntMatrix::from_rows(3, &images).unwrap();
        let direct = crate::intalg::presentation_invariants(3, &rel).unwrap();
        assert_eq!(m.coinvariants(&g, &c).unwrap().canonical_form(), direct);
        assert_eq!(direct.to_string(), "Z/2 ⊕ Z");
    }

    #[test]
    fn free_loop_extension_examples() {
        let c = GroupElement::Vector(vec![1]);
        let e = pi1_free_loop_extension(&z(), &Pi2Module::zero(), &c, 64).unwrap();
        assert!(e.kernel.is_trivial());
        assert_eq!(e.quotient.order, None);

        let e = pi1_free_loop_extension(&z(), &Pi2Module::free_trivial(1), &c, 64).unwrap();
        assert_eq!(e.kernel, CanonicalForm::free(1));
        assert_eq!(e.status, SplitStatus::SplitWithWitness);
        let r = imm_invariants(&z(), &Pi2Module::free_trivial(1), &c, 64);
        assert_eq!(r.product_decomposition.unwrap().group, CanonicalForm::free(2));

        let s = GroupModel::FiniteTable(s3());
        let t = GroupElement::Index(1);
        let e = pi1_free_loop_extension(&s, &Pi2Module::zero(), &t, 64).unwrap();
        assert_eq!(e.quotient.order, Some(2));
    }

    #[test]
    fn imm_invariant_examples() {
        let triv = GroupModel::FiniteTable(FiniteTableGroup::cyclic(1));
        let r = imm_invariants(&triv, &Pi2Module::free_trivial(1), &GroupElement::Index(0), 64);
        assert_eq!(r.pi0, Pi0Description::Classes(vec![vec![GroupElement::Index(0)]]));
        assert_eq!(r.pi1_extension.unwrap().kernel, CanonicalForm::free(1));

        let r = imm_invariants(&z(), &Pi2Module::zero(), &GroupElement::Vector(vec![1]), 64);
        assert_eq!(r.pi0, Pi0Description::Symbolic("elements of Z".into()));
        let p = r.product_decomposition.unwrap();
        assert_eq!(p.group, CanonicalForm::free(1));

        let s = GroupModel::FiniteTable(s3());
        let r = imm_invariants(&s, &Pi2Module::free_trivial(1), &GroupElement::Index(0), 64);
        let e = r.pi1_extension.unwrap();
        assert!(e.quotient.whole_group);
        assert_eq!(e.status, SplitStatus::Undetermined);
        assert_eq!(r.self_centralizing, Some(false));
        assert!(r.product_decomposition.is_none());
    }

    #[test]
    fn self_centralizing_model_degrades_pi0() {
        let g = GroupModel::SelfCentralizingZ(SelfCentralizingZ { label: "M".into() });
        let r = imm_invariants(&g, &Pi2Module::free_trivial(2), &GroupElement::CPower(1), 64);
        assert!(matches!(r.pi0, Pi0Description::Symbolic(_)));
        assert_eq!(r.warnings.len(), 1);
        let p = r.product_decomposition.unwrap();
        assert_eq!(p.group, CanonicalForm::free(3));
        assert_eq!(p.unrot.len(), 2);
    }

    #[test]
    fn finite_order_self_centralizing_warns() {
        let g = GroupModel::FiniteTable(FiniteTableGroup::cyclic(2));
        let r = imm_invariants(&g, &Pi2Module::free_trivial(1), &GroupElement::Index(1), 64);
        assert!(r.product_decomposition.is_some());
        assert_eq!(r.pi1_extension.unwrap().status, SplitStatus::Undetermined);
        assert_eq!(r.warnings.len(), 1);
    }

    #[test]
    fn pi0_class_count_matches_brute_force() {
        for (_, g) in crate::testkit::small_groups() {
            let n = g.order();
            // count orbits of conjugation with a union-find free scan
            let mut seen = vec![false; n];
            let mut count = 0;
            for x in 0..n {
                if seen[x] {
                    continue;
                }
                count += 1;
                for h in 0..n {
                    seen[g.mul(g.mul(h, x), g.inv(h))] = true;
                }
            }
            let m = GroupModel::FiniteTable(g);
            let r = imm_invariants(&m, &Pi2Module::zero(), &m.identity(), 64);
            let Pi0Description::Classes(cl) = r.pi0 else { panic!() };
            assert_eq!(cl.len(), count);
        }
    }
}
