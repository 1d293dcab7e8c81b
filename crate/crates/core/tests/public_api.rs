//! The library surface as a downstream crate sees it.

use flc_core::builtins;
use flc_core::classifier::TheoremACase;
use flc_core::groups::catalog::{dihedral, q8};
use flc_core::intalg::{presentation_invariants, smith_normal_form};
use flc_core::spinclass::{build_pi1_frame_bundle, coboundary, is_coboundary};
use flc_core::{classify, ClassifyOptions, DaxOracle, GroupElement, GroupModel, IntMatrix, SpinAlternative};
use num_bigint::BigInt;
use proptest::prelude::*;

fn case_of(name: &str, circle: GroupElement) -> TheoremACase {
    let x = builtins::builtin(name).unwrap();
    classify(&x, &circle, &DaxOracle::Absent, &ClassifyOptions::default()).unwrap().theorem_a.case
}

#[test]
fn builtin_cases() {
    assert_eq!(case_of("cp2", GroupElement::Index(0)), TheoremACase::OneA);
    assert_eq!(case_of("s4", GroupElement::Index(0)), TheoremACase::TwoB);
    assert_eq!(case_of("q8pair", GroupElement::Vector(vec![1, 0])), TheoremACase::TwoA);
    assert_eq!(case_of("q8pair", GroupElement::Vector(vec![0, 0])), TheoremACase::TwoB);
    assert_eq!(case_of("t4", GroupElement::Vector(vec![0, 1, 0, 0])), TheoremACase::TwoB);
}

#[test]
fn circle_from_another_model_is_rejected() {
    let x = builtins::builtin("q8pair").unwrap();
    assert!(classify(&x, &GroupElement::Index(1), &DaxOracle::Absent, &ClassifyOptions::default()).is_err());
}

#[test]
fn q8_and_d4_abelianise_alike() {
    // both have H₁ = Z/2 ⊕ Z/2 but different centres of commutators
    assert_eq!(q8().abelianization(), dihedral(4).abelianization());
    assert_eq!(q8().abelianization().to_string(), "Z/2 ⊕ Z/2");
    let g = GroupModel::FiniteTable(q8());
    let fb = build_pi1_frame_bundle(&flc_core::W2Data::Spin, &g, 64).unwrap();
    assert_eq!(fb.alternative, SpinAlternative::Spin);
    assert_eq!(fb.explicit.unwrap().table.order(), 16);
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-12i64..=12, c), r))
}

proptest! {
    #[test]
    fn smith_form_reconstructs(rows in matrix()) {
        let a = IntMatrix::from_rows(rows[0].len(), &rows).unwrap();
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.checked_mul(&a).unwrap().checked_mul(&s.v).unwrap(), s.d.clone());
        for m in [&s.u, &s.v] {
            let d = m.determinant().unwrap();
            prop_assert!(d == BigInt::from(1) || d == BigInt::from(-1));
        }
    }

    #[test]
    fn presentation_order_is_determinant(rows in matrix()) {
        let n = rows[0].len();
        let square: Vec<Vec<i64>> = rows.iter().cycle().take(n).cloned().collect();
        let a = IntMatrix::from_rows(n, &square).unwrap();
        let det = a.determinant().unwrap();
        let form = presentation_invariants(n, &a).unwrap();
        match form.order() {
            Some(o) => prop_assert_eq!(o, det.magnitude().clone().into()),
            None => prop_assert_eq!(det, BigInt::from(0)),
        }
    }

    #[test]
    fn coboundaries_are_recognised(bits in proptest::collection::vec(any::<bool>(), 8)) {
        let g = dihedral(4);
        let mut f = bits;
        f[g.identity()] = false;
        let omega = coboundary(&f, &g);
        let witness = is_coboundary(&omega, &g);
        prop_assert!(witness.is_some());
        prop_assert_eq!(coboundary(&witness.unwrap(), &g), omega);
    }
}
