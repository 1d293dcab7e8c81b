//! Named example manifolds, described by their algebraic data.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::classifier::ManifoldData;
use crate::groups::{FgAbelianGroup, FiniteTableGroup, GroupModel, SelfCentralizingZ};
use crate::intalg::IntMatrix;
use crate::pi2mod::{ActionKey, Pi2Module};
use crate::spinclass::W2Data;

pub const NAMES: [&str; 8] = ["s4", "s1xs3", "cp2", "s2xs2", "t4", "enriques_like", "q8pair", "m_conn_s3s1"];

fn trivial_group() -> GroupModel {
    GroupModel::FiniteTable(FiniteTableGroup::cyclic(1))
}

fn data(name: &str, pi1: GroupModel, pi2: Pi2Module, w2: W2Data, notes: &str) -> ManifoldData {
    ManifoldData { name: name.to_string(), pi1, pi2, w2, notes: Some(notes.to_string()) }
}

/// The builtin called `name`.
pub fn builtin(name: &str) -> Option<ManifoldData> {
    Some(match name {
        "s4" => data("s4", trivial_group(), Pi2Module::zero(), W2Data::Spin, "S⁴"),
        "s1xs3" => {
            let z = FgAbelianGroup::new(1, Vec::new()).expect("valid").with_names(vec!["t".into()]).expect("one name");
            data("s1xs3", GroupModel::FgAbelian(z), Pi2Module::zero(), W2Data::Spin, "S¹ × S³")
        }
        "cp2" => data(
            "cp2",
            trivial_group(),
            Pi2Module::free_trivial(1),
            W2Data::TotallyNonspin { w2s: vec![true] },
            "CP²; the generator of π₂ has odd self-intersection",
        ),
        "s2xs2" => data("s2xs2", trivial_group(), Pi2Module::free_trivial(2), W2Data::Spin, "S² × S², even form"),
        "t4" => {
            let names = ["t1", "t2", "t3", "t4"].iter().map(|s| String::from(*s)).collect();
            let z4 = FgAbelianGroup::new(4, Vec::new()).expect("valid").with_names(names).expect("four names");
            data("t4", GroupModel::FgAbelian(z4), Pi2Module::zero(), W2Data::Spin, "T⁴")
        }
        "enriques_like" => {
            let g = FiniteTableGroup::cyclic(2).with_labels(vec!["e".into(), "g".into()]).expect("two labels");
            let swap = IntMatrix::from_rows(2, &[[0i64, 1], [1, 0]]).expect("2x2");
            let action = BTreeMap::from([(ActionKey::Element(1), swap)]);
            let pi2 = Pi2Module::new(2, IntMatrix::zeros(0, 2), action).expect("valid shape");
            let omega = vec![vec![false, false], vec![false, true]];
            data(
                "enriques_like",
                GroupModel::FiniteTable(g),
                pi2,
                W2Data::AlmostSpinCocycle { omega },
                "π₁ = Z/2 with π₁FrX ≅ Z/4; the deck involution swaps two spheres",
            )
        }
        "q8pair" => {
            let v4 = FgAbelianGroup::new(0, vec![2, 2]).expect("valid").with_names(vec!["x".into(), "y".into()]).expect("two names");
            data(
                "q8pair",
                GroupModel::FgAbelian(v4),
                Pi2Module::zero(),
                W2Data::AlmostSpinAbelian {
                    ext_bits: vec![true, true],
                    pairing: vec![vec![false, true], vec![true, false]],
                },
                "π₁ = Z/2 × Z/2 with π₁FrX ≅ Q₈",
            )
        }
        "m_conn_s3s1" => data(
            "m_conn_s3s1",
            GroupModel::SelfCentralizingZ(SelfCentralizingZ { label: "π₁(M # S³×S¹)".into() }),
            Pi2Module::free_trivial(2),
            W2Data::Spin,
            "M # S³ × S¹ for a spin M; c is the S¹ factor, π₂ stands for π₂M",
        ),
        _ => return None,
    })
}

/// All builtins, in [`NAMES`] order.
pub fn all() -> Vec<ManifoldData> {
    NAMES.iter().map(|n| builtin(n).expect("listed builtin")).collect()
}
