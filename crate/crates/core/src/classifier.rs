//! Decisions about a framed circle `νc` in X: whether the full twist
//! `tw_{νc}` is isotopic to `νc`, whether the normal rotation `rot_{νc}` dies
//! in framed immersions, which immersion sequence holds, which embedding
//! sequence holds given Dax data, and the assembled report.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::groups::{minimal_generators, ConjugacyClasses, GroupElement, GroupError, GroupModel, SubgroupDescriptor};
use crate::intalg::CanonicalForm;
use crate::loopspace::{imm_invariants, Pi0Description, ProductDecomposition};
use crate::pi2mod::{ActionViolation, ModuleError, Pi2Module, SubmoduleDescriptor};
use crate::spinclass::{
    build_pi1_frame_bundle, classify_spin_type, h1_frame_bundle, lifted_commutator, restricted_splitting,
    validate_w2, ExtensionDescriptor, FrameBundleData, FrameBundlePi1, H1Description, SpinAlternative, SpinError,
    SplitStatus, W2Data, W2Violation,
};

pub mod bruteforce;

/// The algebraic data of an oriented 4-manifold X.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldData {
    pub name: String,
    pub pi1: GroupModel,
    pub pi2: Pi2Module,
    pub w2: W2Data,
    pub notes: Option<String>,
}

/// One failed check on [`ManifoldData`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ManifoldIssue {
    Action(ActionViolation),
    W2(W2Violation),
}

impl fmt::Display for ManifoldIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifoldIssue::Action(v) => write!(f, "pi2 action: {v}"),
            ManifoldIssue::W2(v) => write!(f, "w2: {v}"),
        }
    }
}

impl ManifoldData {
    /// Every violation of the module and `w₂` invariants.
    pub fn violations(&self) -> Vec<ManifoldIssue> {
        let mut out: Vec<ManifoldIssue> =
            self.pi2.validate_action(&self.pi1).into_iter().map(ManifoldIssue::Action).collect();
        if out.is_empty() {
            out.extend(validate_w2(&self.w2, &self.pi1, &self.pi2).into_iter().map(ManifoldIssue::W2));
        }
        out
    }

    pub fn validate(&self) -> Result<(), ClassifyError> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(ClassifyError::Invalid(v))
        }
    }

    pub fn spin_alternative(&self) -> Result<SpinAlternative, ClassifyError> {
        Ok(classify_spin_type(&self.w2, &self.pi1)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("invalid manifold data: {}", .0.iter().map(|v| format!("{v}")).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<ManifoldIssue>),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Spin(#[from] SpinError),
    #[error("dax table has {found} entries but Fix_c(π₂X) has {expected} generators")]
    DaxLength { expected: usize, found: usize },
    #[error("oracle unavailable: {0}")]
    OracleUnavailable(&'static str),
}

/// The class `c̄ ∈ π₁X` of the circle with its centraliser and the
/// `c̄`-fixed part of π₂X.
#[derive(Clone, Debug)]
pub struct CircleClass {
    pub element: GroupElement,
    /// `None` when the group model cannot answer the query.
    pub centralizer: Option<SubgroupDescriptor>,
    pub fixed: SubmoduleDescriptor,
}

impl CircleClass {
    pub fn new(x: &ManifoldData, element: GroupElement, max_enumerate: usize) -> Result<Self, ClassifyError> {
        x.pi1.check(&element)?;
        let centralizer = match x.pi1.centralizer(&element, max_enumerate) {
            Ok(c) => Some(c),
            Err(GroupError::Unsupported { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        let fixed = x.pi2.fixed_submodule(&x.pi1, &element)?;
        Ok(CircleClass { element, centralizer, fixed })
    }

    pub fn is_trivial(&self, x: &ManifoldData) -> bool {
        x.pi1.is_identity(&self.element)
    }
}

/// Dax data `dax^whisk_c` on `Fix_c(π₂X)`; only vanishing is consumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DaxOracle {
    /// Vanishes on all of `Fix_c(π₂X)`.
    AllZero,
    /// Nonzero on every nonzero 0/1-combination of Fix generators.
    AllNonzero,
    /// `vanishes[i]` for the i-th Fix generator. A combination vanishes
    /// when all of its generators do, is nonzero when exactly one does
    /// not, and is undetermined otherwise.
    PerGenerator(Vec<bool>),
    Absent,
}

impl DaxOracle {
    pub fn as_str(&self) -> &'static str {
        match self {
            DaxOracle::AllZero => "all-zero",
            DaxOracle::AllNonzero => "all-nonzero",
            DaxOracle::PerGenerator(_) => "per-generator",
            DaxOracle::Absent => "absent",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Largest subgroup enumerated element by element.
    pub max_enumerate: usize,
    /// Largest |π₁X| for which the frame bundle group is built as a table
    /// (the table has `4|π₁X|²` entries).
    pub max_explicit_order: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { max_enumerate: crate::groups::DEFAULT_MAX_ORDER, max_explicit_order: 256 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwJustification {
    TotallyNonspin,
    CommutatorWitness,
    NoCommutatorWitness,
    /// The centraliser is `⟨c̄⟩`, on which the lifted commutator vanishes.
    SelfCentralizing,
    PairingVanishes,
    Spin,
}

impl TwJustification {
    pub fn as_str(self) -> &'static str {
        match self {
            TwJustification::TotallyNonspin => "totally-nonspin",
            TwJustification::CommutatorWitness => "commutator-witness",
            TwJustification::NoCommutatorWitness => "no-commutator-witness",
            TwJustification::SelfCentralizing => "self-centralizing",
            TwJustification::PairingVanishes => "pairing-vanishes",
            TwJustification::Spin => "spin",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwStatus {
    pub equal: bool,
    pub justification: TwJustification,
    /// `y` in the centraliser with `[ỹ, c̃] = z`.
    pub witness: Option<GroupElement>,
}

/// Is `tw_{νc}` isotopic to `νc`?
pub fn tw_status(x: &ManifoldData, c: &CircleClass) -> Result<TwStatus, ClassifyError> {
    let status = |equal, justification, witness| TwStatus { equal, justification, witness };
    Ok(match x.spin_alternative()? {
        SpinAlternative::TotallyNonspin => status(true, TwJustification::TotallyNonspin, None),
        SpinAlternative::Spin => status(false, TwJustification::Spin, None),
        SpinAlternative::HSpin => status(false, TwJustification::PairingVanishes, None),
        SpinAlternative::HNonspin => {
            let candidates: Vec<GroupElement> = match &x.pi1 {
                GroupModel::FiniteTable(_) => c
                    .centralizer
                    .as_ref()
                    .and_then(|h| h.elements.clone())
                    .ok_or(ClassifyError::Spin(SpinError::NotEnumerable))?,
                // the pairing is bilinear, so testing generators suffices
                GroupModel::FgAbelian(a) => (0..a.ngens()).map(|i| GroupElement::Vector(a.generator(i))).collect(),
                GroupModel::SelfCentralizingZ(_) => {
                    return Ok(status(false, TwJustification::SelfCentralizing, None));
                }
            };
            let mut witness = None;
            for y in candidates {
                if lifted_commutator(&x.w2, &x.pi1, &y, &c.element)? {
                    witness = Some(y);
                    break;
                }
            }
            match witness {
                Some(y) => status(true, TwJustification::CommutatorWitness, Some(y)),
                None => status(false, TwJustification::NoCommutatorWitness, None),
            }
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotStatus {
    /// `rot_{νc}` is trivial in `π₁Imm^fr`.
    pub trivial: bool,
    /// A `c̄`-fixed class with odd `w₂ˢ`.
    pub witness: Option<Vec<BigInt>>,
    /// `w₂ˢ` on each generator of `Fix_c(π₂X)`.
    pub w2s_on_fix: Vec<bool>,
}

/// `rot_{νc}` dies in framed immersions iff `w₂ˢ` is odd on some
/// `c̄`-fixed class. As `w₂ˢ` is additive mod 2, testing Fix generators is
/// enough.
pub fn rot_status_imm(x: &ManifoldData, c: &CircleClass) -> Result<RotStatus, ClassifyError> {
    let w2s = x.w2.w2s(x.pi2.ngens());
    let mut values = Vec::with_capacity(c.fixed.generators.len());
    for g in &c.fixed.generators {
        values.push(x.pi2.evaluate_functional(&w2s, g)?);
    }
    let witness = values.iter().position(|&v| v).map(|i| c.fixed.generators[i].clone());
    Ok(RotStatus { trivial: witness.is_some(), witness, w2s_on_fix: values })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremACase {
    OneA,
    OneB,
    TwoA,
    TwoB,
}

impl TheoremACase {
    pub const ALL: [TheoremACase; 4] = [TheoremACase::OneA, TheoremACase::OneB, TheoremACase::TwoA, TheoremACase::TwoB];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremACase::OneA => "1a",
            TheoremACase::OneB => "1b",
            TheoremACase::TwoA => "2a",
            TheoremACase::TwoB => "2b",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.as_str() == s)
    }
}

impl fmt::Display for TheoremACase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arrow {
    Injective,
    Surjective,
    Plain,
}

impl Arrow {
    pub fn symbol(self) -> &'static str {
        match self {
            Arrow::Injective => "↣",
            Arrow::Surjective => "↠",
            Arrow::Plain => "→",
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Arrow::Injective => "injective",
            Arrow::Surjective => "surjective",
            Arrow::Plain => "plain",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedMap {
    pub name: String,
    pub from: String,
    pub to: String,
    pub arrow: Arrow,
}

impl NamedMap {
    fn new(name: &str, from: &str, to: &str, arrow: Arrow) -> Self {
        NamedMap { name: name.into(), from: from.into(), to: to.into(), arrow }
    }
}

/// `[Z/2 ↣rot] framed → unframed [↠ Z/2]` together with the framing
/// annotation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSequence {
    /// `rot: Z/2 ↣ framed`, absent when `rot` dies.
    pub head: Option<NamedMap>,
    /// The forgetful map.
    pub middle: NamedMap,
    /// `unframed ↠ Z/2`, present when the cokernel is `Z/2`.
    pub tail: Option<NamedMap>,
    pub tw_equals_nu: bool,
}

impl ExactSequence {
    fn build(framed: &str, unframed: &str, rot_dies: bool, tw_equals_nu: bool) -> Self {
        let middle = match (rot_dies, tw_equals_nu) {
            (true, _) => Arrow::Injective,
            (false, true) => Arrow::Plain,
            (false, false) => Arrow::Surjective,
        };
        ExactSequence {
            head: (!rot_dies).then(|| NamedMap::new("rot", "Z/2", framed, Arrow::Injective)),
            middle: NamedMap::new("forg", framed, unframed, middle),
            tail: tw_equals_nu.then(|| NamedMap::new("tw", unframed, "Z/2", Arrow::Surjective)),
            tw_equals_nu,
        }
    }

    /// The arrow string, e.g. `Z/2 ↣ π₁Imm^fr → π₁Imm ↠ Z/2`.
    pub fn arrows(&self) -> String {
        let mut s = String::new();
        if let Some(h) = &self.head {
            s.push_str(&format!("{} {} ", h.from, h.arrow.symbol()));
        }
        s.push_str(&format!("{} {} {}", self.middle.from, self.middle.arrow.symbol(), self.middle.to));
        if let Some(t) = &self.tail {
            s.push_str(&format!(" {} {}", t.arrow.symbol(), t.to));
        }
        s
    }

    /// [`arrows`](Self::arrows) followed by the framing annotation.
    pub fn rendered(&self) -> String {
        let rel = if self.tw_equals_nu { "=" } else { "≠" };
        format!("{}, νc {rel} tw", self.arrows())
    }

    /// `framed ≅ Z/2 × unframed` when the sequence is short exact with a
    /// split head. A split central Z/2 is a direct factor.
    pub fn product_form(&self, rot_splits: bool) -> Option<String> {
        (rot_splits && self.head.is_some() && self.middle.arrow == Arrow::Surjective)
            .then(|| format!("{} ≅ Z/2 × {}", self.middle.from, self.middle.to))
    }
}

pub const IMM_FR: &str = "π₁Imm^fr";
pub const IMM: &str = "π₁Imm";
pub const EMB_FR: &str = "π₁Emb^fr";
pub const EMB: &str = "π₁Emb";

/// The immersion case, from the spin alternative, `rot` and `tw`.
pub fn theorem_a_case(alt: SpinAlternative, rot: &RotStatus, tw: &TwStatus) -> (TheoremACase, ExactSequence) {
    let case = match (alt, rot.trivial, tw.equal) {
        (SpinAlternative::TotallyNonspin, true, _) => TheoremACase::OneA,
        (SpinAlternative::TotallyNonspin, false, _) => TheoremACase::OneB,
        (_, _, true) => TheoremACase::TwoA,
        (_, _, false) => TheoremACase::TwoB,
    };
    let rot_dies = case == TheoremACase::OneA;
    (case, ExactSequence::build(IMM_FR, IMM, rot_dies, tw.equal))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RotSplitKind {
    BySpin,
    ByRestriction,
    Unknown,
}

impl RotSplitKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RotSplitKind::BySpin => "by-spin",
            RotSplitKind::ByRestriction => "by-restriction",
            RotSplitKind::Unknown => "unknown",
        }
    }

    pub fn splits(self) -> bool {
        self != RotSplitKind::Unknown
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotSplitting {
    pub kind: RotSplitKind,
    /// `Z/2 ↣ Fix_{νc}(π₁FrX) ↠ H` with `H` the image in `Fix_c(π₁X)`.
    pub restriction: Option<ExtensionDescriptor>,
    /// Whether `H` is all of `Fix_c(π₁X)`.
    pub image_is_full: Option<bool>,
    pub warnings: Vec<String>,
}

/// Image of `Fix_{νc}(π₁FrX)` in π₁X: centraliser elements whose lifted
/// commutator with `c̄` vanishes.
fn framed_fix_image(x: &ManifoldData, c: &CircleClass, max_enumerate: usize) -> Result<SubgroupDescriptor, ClassifyError> {
    let cent = c.centralizer.as_ref().ok_or(ClassifyError::Spin(SpinError::Unsupported("centralizer not available")))?;
    match &x.pi1 {
        GroupModel::FiniteTable(g) => {
            let elems = cent.elements.as_ref().ok_or(ClassifyError::Spin(SpinError::NotEnumerable))?;
            let mut keep = Vec::new();
            for y in elems {
                if !lifted_commutator(&x.w2, &x.pi1, y, &c.element)? {
                    if let GroupElement::Index(i) = y {
                        keep.push(*i);
                    }
                }
            }
            let gens = minimal_generators(g, &keep);
            Ok(SubgroupDescriptor {
                generators: gens.into_iter().map(GroupElement::Index).collect(),
                order: Some(keep.len() as u64),
                whole_group: keep.len() == g.order(),
                elements: Some(keep.into_iter().map(GroupElement::Index).collect()),
            })
        }
        GroupModel::FgAbelian(a) => {
            let gens: Vec<Vec<i64>> = (0..a.ngens()).map(|i| a.generator(i)).collect();
            let mut values = Vec::with_capacity(gens.len());
            for e in &gens {
                values.push(lifted_commutator(&x.w2, &x.pi1, &GroupElement::Vector(e.clone()), &c.element)?);
            }
            let Some(pivot) = values.iter().position(|&v| v) else {
                return Ok(cent.clone());
            };
            // kernel of y ↦ [ỹ, c̃], an index-2 subgroup
            let mut out = Vec::new();
            for (i, e) in gens.iter().enumerate() {
                let v = if i == pivot {
                    a.scale(e, 2)?
                } else if values[i] {
                    a.add(e, &gens[pivot])?
                } else {
                    e.clone()
                };
                out.push(GroupElement::Vector(v));
            }
            let elements = a.elements(max_enumerate).map(|all| {
                let mut kept = Vec::new();
                for y in all {
                    let y = GroupElement::Vector(y);
                    if !lifted_commutator(&x.w2, &x.pi1, &y, &c.element).unwrap_or(true) {
                        kept.push(y);
                    }
                }
                kept
            });
            Ok(SubgroupDescriptor {
                generators: out,
                order: a.order().map(|n| n / 2),
                whole_group: false,
                elements,
            })
        }
        GroupModel::SelfCentralizingZ(_) => Ok(cent.clone()),
    }
}

/// Does `rot_{νc}` split? Sufficient conditions only: `w₂ = 0`, or the
/// restriction of π₁FrX over the image of the framed fixed group splits.
pub fn rot_splitting(
    x: &ManifoldData,
    c: &CircleClass,
    fb: &FrameBundlePi1,
    max_enumerate: usize,
) -> Result<RotSplitting, ClassifyError> {
    let mut out = RotSplitting { kind: RotSplitKind::Unknown, restriction: None, image_is_full: None, warnings: Vec::new() };
    match fb.alternative {
        SpinAlternative::Spin => {
            out.kind = RotSplitKind::BySpin;
            return Ok(out);
        }
        SpinAlternative::TotallyNonspin => {
            // π₁FrX ≅ π₁X: the kernel is already trivial
            out.kind = RotSplitKind::ByRestriction;
            if let Some(cent) = &c.centralizer {
                out.restriction = Some(restricted_splitting(fb, cent)?);
                out.image_is_full = Some(true);
            }
            return Ok(out);
        }
        SpinAlternative::HSpin | SpinAlternative::HNonspin => {}
    }
    let h = framed_fix_image(x, c, max_enumerate)?;
    let full = c.centralizer.as_ref().map(|cent| cent.order.is_some() && h.order == cent.order);
    if full == Some(false) {
        out.warnings.push(
            "Fix_{νc}(π₁FrX) → Fix_c̄(π₁X) is not onto; splitting was tested over its image, an index-2 subgroup".into(),
        );
    }
    out.image_is_full = full;
    let ext = restricted_splitting(fb, &h)?;
    if ext.status == SplitStatus::SplitWithWitness {
        out.kind = RotSplitKind::ByRestriction;
    }
    out.restriction = Some(ext);
    Ok(out)
}

/// The fate of `rot_{νc}` in framed embeddings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RotFate {
    /// Some `b` with odd `w₂ˢ`, fixed by `c̄` and with vanishing Dax
    /// invariant exists: `rot` dies.
    Dies { generator: usize, b: Vec<BigInt> },
    Survives,
    /// The outcome depends on Dax values the oracle does not fix.
    Conditional { deciding: Vec<usize> },
}

impl RotFate {
    pub fn as_str(&self) -> &'static str {
        match self {
            RotFate::Dies { .. } => "dies",
            RotFate::Survives => "survives",
            RotFate::Conditional { .. } => "conditional",
        }
    }
}

/// Closed-form search for `b ∈ Fix_c(π₂X)` with `w₂ˢ(b) = 1` and vanishing
/// Dax invariant over 0/1-combinations of Fix generators.
///
/// `w2s_on_fix` gives `w₂ˢ` on each generator.
pub fn dax_search(w2s_on_fix: &[bool], dax: &DaxOracle) -> Result<DaxOutcome, ClassifyError> {
    let odd: Vec<usize> = w2s_on_fix.iter().enumerate().filter(|(_, &v)| v).map(|(i, _)| i).collect();
    Ok(match dax {
        DaxOracle::AllZero => match odd.first() {
            Some(&i) => DaxOutcome::Dies(i),
            None => DaxOutcome::Survives,
        },
        DaxOracle::AllNonzero => DaxOutcome::Survives,
        DaxOracle::Absent if odd.is_empty() => DaxOutcome::Survives,
        DaxOracle::Absent => DaxOutcome::Conditional(odd),
        DaxOracle::PerGenerator(vanishes) => {
            if vanishes.len() != w2s_on_fix.len() {
                return Err(ClassifyError::DaxLength { expected: w2s_on_fix.len(), found: vanishes.len() });
            }
            if let Some(&i) = odd.iter().find(|&&i| vanishes[i]) {
                return Ok(DaxOutcome::Dies(i));
            }
            let nonvanishing: Vec<usize> = (0..vanishes.len()).filter(|&i| !vanishes[i]).collect();
            // every odd generator is nonvanishing here; an undetermined
            // candidate needs odd w₂ˢ and two or more nonvanishing terms,
            // which fails only for two nonvanishing generators that are
            // both odd
            let two_odd_only = nonvanishing.len() == 2 && odd.len() == 2;
            if odd.is_empty() || nonvanishing.len() < 2 || two_odd_only {
                DaxOutcome::Survives
            } else {
                DaxOutcome::Conditional(nonvanishing)
            }
        }
    })
}

/// Result of [`dax_search`], by Fix-generator index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DaxOutcome {
    Dies(usize),
    Survives,
    Conditional(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheoremBBranch {
    Decided(ExactSequence),
    Conditional {
        /// Fix generators whose Dax values decide the branch.
        deciding: Vec<usize>,
        if_vanishing: ExactSequence,
        otherwise: ExactSequence,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremB {
    /// The oracle actually used.
    pub dax: DaxOracle,
    /// Set when `c̄ = 1` forced the oracle to all-zero.
    pub dax_forced: bool,
    pub tw_equals_nu: bool,
    pub rot: RotFate,
    pub branch: TheoremBBranch,
    pub rot_splits: RotSplitKind,
    /// `π₁Emb^fr ≅ Z/2 × π₁Emb` when it follows.
    pub product_form: Option<String>,
}

impl TheoremB {
    pub fn rendered(&self) -> String {
        match &self.branch {
            TheoremBBranch::Decided(s) => match &self.product_form {
                Some(p) => format!("{p}, νc {} tw", if self.tw_equals_nu { "=" } else { "≠" }),
                None => s.rendered(),
            },
            TheoremBBranch::Conditional { deciding, if_vanishing, otherwise } => {
                let names: Vec<String> = deciding.iter().map(|i| format!("fix[{i}]")).collect();
                format!(
                    "conditional on Dax oracle ({}): if dax vanishes on a candidate then {}; otherwise {}",
                    names.join(", "),
                    if_vanishing.rendered(),
                    otherwise.rendered()
                )
            }
        }
    }
}

/// The embedding sequence.
pub fn theorem_b_branch(
    x: &ManifoldData,
    c: &CircleClass,
    tw: &TwStatus,
    rot: &RotStatus,
    splits: RotSplitKind,
    dax: &DaxOracle,
) -> Result<TheoremB, ClassifyError> {
    let forced = c.is_trivial(x) && *dax != DaxOracle::AllZero;
    let dax = if c.is_trivial(x) { DaxOracle::AllZero } else { dax.clone() };
    let outcome = dax_search(&rot.w2s_on_fix, &dax)?;
    let seq = |dies| ExactSequence::build(EMB_FR, EMB, dies, tw.equal);
    let (fate, branch, product_form) = match outcome {
        DaxOutcome::Dies(i) => {
            let b = c.fixed.generators[i].clone();
            (RotFate::Dies { generator: i, b }, TheoremBBranch::Decided(seq(true)), None)
        }
        DaxOutcome::Survives => {
            let s = seq(false);
            let p = s.product_form(splits.splits());
            (RotFate::Survives, TheoremBBranch::Decided(s), p)
        }
        DaxOutcome::Conditional(deciding) => (
            RotFate::Conditional { deciding: deciding.clone() },
            TheoremBBranch::Conditional { deciding, if_vanishing: seq(true), otherwise: seq(false) },
            None,
        ),
    };
    Ok(TheoremB { dax, dax_forced: forced, tw_equals_nu: tw.equal, rot: fate, branch, rot_splits: splits, product_form })
}

/// Decides `tw = νc` directly: is `z·c̃` conjugate to `c̃` in π₁FrX?
pub fn tw_bruteforce_oracle(fb: &FrameBundlePi1, c: &GroupElement) -> Result<bool, ClassifyError> {
    if fb.alternative == SpinAlternative::TotallyNonspin {
        // π₁FrX ≅ π₁X, so z·c̃ = c̃
        return match fb.base.order() {
            Some(_) => Ok(true),
            None => Err(ClassifyError::OracleUnavailable("π₁X is infinite")),
        };
    }
    let e = fb.explicit.as_ref().ok_or(ClassifyError::OracleUnavailable("π₁FrX has no explicit table"))?;
    let ci = e.base_index(c).ok_or(ClassifyError::OracleUnavailable("circle class not in the table"))?;
    let t = &e.table;
    let lift = e.lift(ci);
    let target = t.mul(e.z(), lift);
    Ok((0..t.order()).any(|w| t.mul(t.mul(w, lift), t.inv(w)) == target))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameBundleSummary {
    pub alternative: SpinAlternative,
    pub data: &'static str,
    /// Order of the explicit table of π₁FrX, when built.
    pub explicit_order: Option<usize>,
    pub h1_base: Option<CanonicalForm>,
    pub h1: H1Description,
}

fn frame_bundle_summary(fb: &FrameBundlePi1) -> FrameBundleSummary {
    FrameBundleSummary {
        alternative: fb.alternative,
        data: match fb.data {
            FrameBundleData::IsoToBase => "iso-to-base",
            FrameBundleData::Product => "product",
            FrameBundleData::Cocycle { .. } => "cocycle",
            FrameBundleData::Abelian { .. } => "abelian",
        },
        explicit_order: fb.explicit.as_ref().map(|e| e.table.order()),
        h1_base: crate::spinclass::h1_base(&fb.base),
        h1: h1_frame_bundle(fb),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremA {
    pub case: TheoremACase,
    pub sequence: ExactSequence,
    pub product_form: Option<String>,
}

/// Everything the classifier knows about `(X, νc)`.
#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub manifold: String,
    pub circle: GroupElement,
    pub circle_label: String,
    pub spin_alternative: SpinAlternative,
    pub centralizer: Option<SubgroupDescriptor>,
    pub fixed: SubmoduleDescriptor,
    pub pi0_imm: Pi0Description,
    pub pi1_imm: Option<ExtensionDescriptor>,
    pub product_decomposition: Option<ProductDecomposition>,
    pub frame_bundle: FrameBundleSummary,
    pub tw: TwStatus,
    /// [`tw_bruteforce_oracle`], when available.
    pub tw_oracle: Option<bool>,
    pub rot_imm: RotStatus,
    pub theorem_a: TheoremA,
    pub rot_splitting: RotSplitting,
    pub theorem_b: TheoremB,
    pub warnings: Vec<String>,
    /// Some query was unsupported by the group model and left symbolic.
    pub degraded: bool,
}

/// Validates `x` and assembles the full report for the circle class `c`.
pub fn classify(
    x: &ManifoldData,
    c: &GroupElement,
    dax: &DaxOracle,
    opts: &ClassifyOptions,
) -> Result<ClassificationReport, ClassifyError> {
    x.validate()?;
    let circle = CircleClass::new(x, c.clone(), opts.max_enumerate)?;
    let alt = x.spin_alternative()?;
    let mut warnings = Vec::new();
    let mut degraded = false;
    if circle.centralizer.is_none() {
        degraded = true;
        warnings.push(format!("centralizer of {} is not available in the {} model", x.pi1.describe(c), x.pi1.kind()));
    }

    let loops = imm_invariants(&x.pi1, &x.pi2, c, opts.max_enumerate);
    degraded |= loops.pi1_extension.is_none() || matches!(x.pi1.conjugacy_classes(), ConjugacyClasses::Unsupported);
    warnings.extend(loops.warnings.iter().cloned());

    let fb = build_pi1_frame_bundle(&x.w2, &x.pi1, opts.max_explicit_order)?;
    let frame_bundle = frame_bundle_summary(&fb);
    if frame_bundle.h1.form.is_none() {
        degraded = true;
        warnings.push(format!("H₁(FrX) left symbolic: {}", frame_bundle.h1.symbolic));
    }

    let tw = tw_status(x, &circle)?;
    let tw_oracle = tw_bruteforce_oracle(&fb, c).ok();
    if tw_oracle.is_some_and(|o| o != tw.equal) {
        warnings.push("conjugacy search in π₁FrX disagrees with the tw decision".into());
    }
    let rot_imm = rot_status_imm(x, &circle)?;
    let (case, sequence) = theorem_a_case(alt, &rot_imm, &tw);
    let splitting = rot_splitting(x, &circle, &fb, opts.max_enumerate)?;
    warnings.extend(splitting.warnings.iter().cloned());
    let theorem_a = TheoremA { case, product_form: sequence.product_form(splitting.kind.splits()), sequence };
    let theorem_b = theorem_b_branch(x, &circle, &tw, &rot_imm, splitting.kind, dax)?;
    if theorem_b.dax_forced {
        warnings.push("c̄ = 1 forces dax^whisk_c = 0 on all of π₂X; the supplied Dax data was ignored".into());
    }

    Ok(ClassificationReport {
        manifold: x.name.clone(),
        circle: c.clone(),
        circle_label: x.pi1.describe(c),
        spin_alternative: alt,
        centralizer: circle.centralizer,
        fixed: circle.fixed,
        pi0_imm: loops.pi0,
        pi1_imm: loops.pi1_extension,
        product_decomposition: loops.product_decomposition,
        frame_bundle,
        tw,
        tw_oracle,
        rot_imm,
        theorem_a,
        rot_splitting: splitting,
        theorem_b,
        warnings,
        degraded,
    })
}

impl ClassificationReport {
    /// Short multi-line summary.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("manifold: {}\ncircle: {}\n", self.manifold, self.circle_label));
        s.push_str(&format!("spin alternative: {}\n", self.spin_alternative));
        s.push_str(&format!("tw = νc: {} ({})\n", self.tw.equal, self.tw.justification.as_str()));
        s.push_str(&format!("rot trivial in π₁Imm^fr: {}\n", self.rot_imm.trivial));
        s.push_str(&format!("immersions, case {}: {}\n", self.theorem_a.case, self.theorem_a.sequence.rendered()));
        s.push_str(&format!("rot splits: {}\n", self.rot_splitting.kind.as_str()));
        s.push_str(&format!("embeddings: {}\n", self.theorem_b.rendered()));
        s
    }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary())
    }
}
