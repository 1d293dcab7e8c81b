//! Serializable form of a [`ClassificationReport`] and its text rendering.
//!
//! Group elements are written in the `index:K`, `vec:a,b`, `c^k` syntax,
//! integers through [`Big`] and bits as `0`/`1`. Field order is fixed, so
//! the output of a given input is byte-stable.

use std::fmt::Write as _;

use flc_core::classifier::{
    ExactSequence, NamedMap, RotFate, RotSplitting, TheoremB, TheoremBBranch,
};
use flc_core::groups::SubgroupDescriptor;
use flc_core::loopspace::{Pi0Description, ProductDecomposition};
use flc_core::pi2mod::SubmoduleDescriptor;
use flc_core::spinclass::{ExtensionDescriptor, SplitWitness};
use flc_core::{CanonicalForm, ClassificationReport, DaxOracle};
use serde::{Deserialize, Serialize};

use crate::number::{big_rows, big_vec, bit_vec, Big, Bit};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportFile {
    pub schema_version: String,
    pub manifold: String,
    pub circle: String,
    pub circle_label: String,
    pub spin_alternative: String,
    pub centralizer: Option<SubgroupDto>,
    pub fixed: SubmoduleDto,
    pub pi0_imm: Pi0Dto,
    pub pi1_imm: Option<ExtensionDto>,
    pub product_decomposition: Option<ProductDto>,
    pub frame_bundle: FrameBundleDto,
    pub tw: TwDto,
    pub rot_imm: RotImmDto,
    pub theorem_a: TheoremADto,
    pub rot_splitting: RotSplittingDto,
    pub theorem_b: TheoremBDto,
    pub warnings: Vec<String>,
    pub degraded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFormDto {
    pub rank: usize,
    pub torsion: Vec<Big>,
    pub rendered: String,
}

impl From<&CanonicalForm> for GroupFormDto {
    fn from(c: &CanonicalForm) -> Self {
        GroupFormDto { rank: c.rank, torsion: big_vec(&c.torsion), rendered: c.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupDto {
    pub generators: Vec<String>,
    pub elements: Option<Vec<String>>,
    pub order: Option<u64>,
    pub whole_group: bool,
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

impl From<&SubgroupDescriptor> for SubgroupDto {
    fn from(s: &SubgroupDescriptor) -> Self {
        SubgroupDto {
            generators: strings(&s.generators),
            elements: s.elements.as_deref().map(strings),
            order: s.order,
            whole_group: s.whole_group,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubmoduleDto {
    pub generators: Vec<Vec<Big>>,
    /// 0 marks an infinite-order generator.
    pub orders: Vec<Big>,
    pub group: GroupFormDto,
}

impl From<&SubmoduleDescriptor> for SubmoduleDto {
    fn from(s: &SubmoduleDescriptor) -> Self {
        SubmoduleDto {
            generators: s.generators.iter().map(|g| big_vec(g)).collect(),
            orders: big_vec(&s.orders),
            group: (&s.canonical_form).into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Pi0Dto {
    Classes { classes: Vec<Vec<String>> },
    Symbolic { text: String },
}

impl From<&Pi0Description> for Pi0Dto {
    fn from(p: &Pi0Description) -> Self {
        match p {
            Pi0Description::Classes(cs) => Pi0Dto::Classes { classes: cs.iter().map(|c| strings(c)).collect() },
            Pi0Description::Symbolic(t) => Pi0Dto::Symbolic { text: t.clone() },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementBit {
    pub element: String,
    pub bit: Bit,
}

fn element_bits(v: &[(flc_core::GroupElement, bool)]) -> Vec<ElementBit> {
    v.iter().map(|(g, b)| ElementBit { element: g.to_string(), bit: Bit(*b) }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessDto {
    ZeroSection,
    Coboundary { values: Vec<ElementBit> },
    GeneratorLifts { lifts: Vec<ElementBit> },
    FreeCyclic { generator: String },
    Product { pieces: String },
}

impl From<&SplitWitness> for WitnessDto {
    fn from(w: &SplitWitness) -> Self {
        match w {
            SplitWitness::ZeroSection => WitnessDto::ZeroSection,
            SplitWitness::Coboundary(v) => WitnessDto::Coboundary { values: element_bits(v) },
            SplitWitness::GeneratorLifts(v) => WitnessDto::GeneratorLifts { lifts: element_bits(v) },
            SplitWitness::FreeCyclic(g) => WitnessDto::FreeCyclic { generator: g.to_string() },
            SplitWitness::Product(p) => WitnessDto::Product { pieces: p.clone() },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleEntry {
    pub a: String,
    pub b: String,
    pub value: Bit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionDto {
    pub element: String,
    pub matrix: Vec<Vec<Big>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedVector {
    pub name: String,
    pub vector: Vec<Big>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionDto {
    pub kernel: GroupFormDto,
    pub kernel_label: String,
    pub quotient: SubgroupDto,
    pub quotient_label: String,
    pub status: String,
    pub witness: Option<WitnessDto>,
    pub cocycle: Option<Vec<CocycleEntry>>,
    pub action: Vec<ActionDto>,
    pub named_generators: Vec<NamedVector>,
}

impl From<&ExtensionDescriptor> for ExtensionDto {
    fn from(e: &ExtensionDescriptor) -> Self {
        ExtensionDto {
            kernel: (&e.kernel).into(),
            kernel_label: e.kernel_label.clone(),
            quotient: (&e.quotient).into(),
            quotient_label: e.quotient_label.clone(),
            status: e.status.as_str().into(),
            witness: e.witness.as_ref().map(Into::into),
            cocycle: e.cocycle.as_ref().map(|c| {
                c.iter().map(|(a, b, v)| CocycleEntry { a: a.to_string(), b: b.to_string(), value: Bit(*v) }).collect()
            }),
            action: e.action.iter().map(|(g, m)| ActionDto { element: g.to_string(), matrix: big_rows(m) }).collect(),
            named_generators: e
                .named_generators
                .iter()
                .map(|(n, v)| NamedVector { name: n.clone(), vector: big_vec(v) })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductDto {
    pub generator: String,
    pub generator_order: Option<u64>,
    pub kernel: GroupFormDto,
    pub unrot: Vec<Vec<Big>>,
    pub unrot_orders: Vec<Big>,
    pub group: GroupFormDto,
    pub rendered: String,
}

impl From<&ProductDecomposition> for ProductDto {
    fn from(p: &ProductDecomposition) -> Self {
        ProductDto {
            generator: p.generator.to_string(),
            generator_order: p.generator_order,
            kernel: (&p.kernel).into(),
            unrot: p.unrot.iter().map(|v| big_vec(v)).collect(),
            unrot_orders: big_vec(&p.unrot_orders),
            group: (&p.group).into(),
            rendered: p.rendered.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1Dto {
    pub form: Option<GroupFormDto>,
    pub symbolic: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameBundleDto {
    pub alternative: String,
    pub data: String,
    pub explicit_order: Option<usize>,
    pub h1_base: Option<GroupFormDto>,
    pub h1: H1Dto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwDto {
    pub equal: bool,
    pub justification: String,
    pub witness: Option<String>,
    /// Independent conjugacy search in an explicit π₁FrX, when available.
    pub oracle: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotImmDto {
    pub trivial: bool,
    pub witness: Option<Vec<Big>>,
    pub w2s_on_fix: Vec<Bit>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDto {
    pub name: String,
    pub from: String,
    pub to: String,
    pub arrow: String,
}

impl From<&NamedMap> for MapDto {
    fn from(m: &NamedMap) -> Self {
        MapDto { name: m.name.clone(), from: m.from.clone(), to: m.to.clone(), arrow: m.arrow.as_str().into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceDto {
    pub head: Option<MapDto>,
    pub middle: MapDto,
    pub tail: Option<MapDto>,
    pub tw_equals_nu: bool,
    pub rendered: String,
}

impl From<&ExactSequence> for SequenceDto {
    fn from(s: &ExactSequence) -> Self {
        SequenceDto {
            head: s.head.as_ref().map(Into::into),
            middle: (&s.middle).into(),
            tail: s.tail.as_ref().map(Into::into),
            tw_equals_nu: s.tw_equals_nu,
            rendered: s.rendered(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremADto {
    pub case: String,
    pub sequence: SequenceDto,
    pub product_form: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotSplittingDto {
    pub kind: String,
    pub restriction: Option<ExtensionDto>,
    pub image_is_full: Option<bool>,
    pub warnings: Vec<String>,
}

impl From<&RotSplitting> for RotSplittingDto {
    fn from(r: &RotSplitting) -> Self {
        RotSplittingDto {
            kind: r.kind.as_str().into(),
            restriction: r.restriction.as_ref().map(Into::into),
            image_is_full: r.image_is_full,
            warnings: r.warnings.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DaxDto {
    pub mode: String,
    /// Per-generator vanishing flags, for the `per-generator` mode.
    pub vanishes: Option<Vec<Bit>>,
}

impl From<&DaxOracle> for DaxDto {
    fn from(d: &DaxOracle) -> Self {
        let vanishes = match d {
            DaxOracle::PerGenerator(v) => Some(bit_vec(v)),
            _ => None,
        };
        DaxDto { mode: d.as_str().into(), vanishes }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "fate", rename_all = "snake_case")]
pub enum RotFateDto {
    Dies { generator: usize, b: Vec<Big> },
    Survives,
    Conditional { deciding: Vec<usize> },
}

impl From<&RotFate> for RotFateDto {
    fn from(r: &RotFate) -> Self {
        match r {
            RotFate::Dies { generator, b } => RotFateDto::Dies { generator: *generator, b: big_vec(b) },
            RotFate::Survives => RotFateDto::Survives,
            RotFate::Conditional { deciding } => RotFateDto::Conditional { deciding: deciding.clone() },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BranchDto {
    Decided { sequence: SequenceDto },
    Conditional { deciding: Vec<usize>, if_vanishing: SequenceDto, otherwise: SequenceDto },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremBDto {
    pub dax: DaxDto,
    pub dax_forced: bool,
    pub tw_equals_nu: bool,
    pub rot: RotFateDto,
    pub branch: BranchDto,
    pub rot_splits: String,
    pub product_form: Option<String>,
    pub rendered: String,
}

impl From<&TheoremB> for TheoremBDto {
    fn from(t: &TheoremB) -> Self {
        let branch = match &t.branch {
            TheoremBBranch::Decided(s) => BranchDto::Decided { sequence: s.into() },
            TheoremBBranch::Conditional { deciding, if_vanishing, otherwise } => BranchDto::Conditional {
                deciding: deciding.clone(),
                if_vanishing: if_vanishing.into(),
                otherwise: otherwise.into(),
            },
        };
        TheoremBDto {
            dax: (&t.dax).into(),
            dax_forced: t.dax_forced,
            tw_equals_nu: t.tw_equals_nu,
            rot: (&t.rot).into(),
            branch,
            rot_splits: t.rot_splits.as_str().into(),
            product_form: t.product_form.clone(),
            rendered: t.rendered(),
        }
    }
}

impl From<&ClassificationReport> for ReportFile {
    fn from(r: &ClassificationReport) -> Self {
        let fb = &r.frame_bundle;
        ReportFile {
            schema_version: SCHEMA_VERSION.into(),
            manifold: r.manifold.clone(),
            circle: r.circle.to_string(),
            circle_label: r.circle_label.clone(),
            spin_alternative: r.spin_alternative.as_str().into(),
            centralizer: r.centralizer.as_ref().map(Into::into),
            fixed: (&r.fixed).into(),
            pi0_imm: (&r.pi0_imm).into(),
            pi1_imm: r.pi1_imm.as_ref().map(Into::into),
            product_decomposition: r.product_decomposition.as_ref().map(Into::into),
            frame_bundle: FrameBundleDto {
                alternative: fb.alternative.as_str().into(),
                data: fb.data.into(),
                explicit_order: fb.explicit_order,
                h1_base: fb.h1_base.as_ref().map(Into::into),
                h1: H1Dto { form: fb.h1.form.as_ref().map(Into::into), symbolic: fb.h1.symbolic.clone() },
            },
            tw: TwDto {
                equal: r.tw.equal,
                justification: r.tw.justification.as_str().into(),
                witness: r.tw.witness.as_ref().map(ToString::to_string),
                oracle: r.tw_oracle,
            },
            rot_imm: RotImmDto {
                trivial: r.rot_imm.trivial,
                witness: r.rot_imm.witness.as_deref().map(big_vec),
                w2s_on_fix: bit_vec(&r.rot_imm.w2s_on_fix),
            },
            theorem_a: TheoremADto {
                case: r.theorem_a.case.as_str().into(),
                sequence: (&r.theorem_a.sequence).into(),
                product_form: r.theorem_a.product_form.clone(),
            },
            rot_splitting: (&r.rot_splitting).into(),
            theorem_b: (&r.theorem_b).into(),
            warnings: r.warnings.clone(),
            degraded: r.degraded,
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn vector(v: &[Big]) -> String {
    let parts: Vec<String> = v.iter().map(|b| b.0.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn extension_line(out: &mut String, title: &str, e: &ExtensionDto) {
    let _ = writeln!(
        out,
        "{title}{} ↣ E ↠ {}, kernel {}, {}",
        e.kernel_label, e.quotient_label, e.kernel.rendered, e.status
    );
}

impl ReportFile {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Human-readable rendering; every fact shown is read from the DTO.
    pub fn to_text(&self) -> String {
        let mut o = String::new();
        let _ = writeln!(o, "manifold          {}", self.manifold);
        let _ = writeln!(o, "circle            {} ({})", self.circle_label, self.circle);
        let _ = writeln!(o, "spin alternative  {}", self.spin_alternative);
        o.push('\n');

        let _ = writeln!(o, "[loop space]");
        match &self.centralizer {
            Some(c) => {
                let order = c.order.map_or("infinite".to_string(), |n| n.to_string());
                let gens = if c.generators.is_empty() { "nothing".into() } else { c.generators.join(", ") };
                let _ = writeln!(o, "C(c)              order {order}, generated by {gens}");
            }
            None => {
                let _ = writeln!(o, "C(c)              unavailable");
            }
        }
        let _ = writeln!(o, "Fix_c(π₂X)        {}", self.fixed.group.rendered);
        match &self.pi0_imm {
            Pi0Dto::Classes { classes } => {
                let _ = writeln!(o, "π₀Imm             {} conjugacy classes", classes.len());
            }
            Pi0Dto::Symbolic { text } => {
                let _ = writeln!(o, "π₀Imm             {text}");
            }
        }
        if let Some(e) = &self.pi1_imm {
            extension_line(&mut o, "π₁Imm             ", e);
        }
        if let Some(p) = &self.product_decomposition {
            let _ = writeln!(o, "product           {}", p.rendered);
        }
        o.push('\n');

        let fb = &self.frame_bundle;
        let _ = writeln!(o, "[frame bundle]");
        let _ = writeln!(o, "π₁FrX             {} data", fb.data);
        if let Some(n) = fb.explicit_order {
            let _ = writeln!(o, "explicit order    {n}");
        }
        if let Some(h) = &fb.h1_base {
            let _ = writeln!(o, "H₁X               {}", h.rendered);
        }
        let _ = writeln!(o, "H₁FrX             {}", fb.h1.form.as_ref().map_or(&fb.h1.symbolic, |f| &f.rendered));
        o.push('\n');

        let _ = writeln!(o, "[invariants]");
        let w = self.tw.witness.as_deref().map(|w| format!(", witness {w}")).unwrap_or_default();
        let _ = writeln!(o, "tw = νc           {} ({}{w})", yes_no(self.tw.equal), self.tw.justification);
        if let Some(v) = self.tw.oracle {
            let _ = writeln!(o, "tw by search      {}", yes_no(v));
        }
        let rot_w = self.rot_imm.witness.as_deref().map(|b| format!(", b = {}", vector(b))).unwrap_or_default();
        let _ = writeln!(o, "rot trivial       {}{rot_w}", yes_no(self.rot_imm.trivial));
        let _ = writeln!(o, "rot splits        {}", self.rot_splitting.kind);
        if let Some(e) = &self.rot_splitting.restriction {
            extension_line(&mut o, "restriction       ", e);
        }
        o.push('\n');

        let _ = writeln!(o, "[immersions]");
        let _ = writeln!(o, "case {}            {}", self.theorem_a.case, self.theorem_a.sequence.rendered);
        if let Some(p) = &self.theorem_a.product_form {
            let _ = writeln!(o, "product form      {p}");
        }
        o.push('\n');

        let b = &self.theorem_b;
        let _ = writeln!(o, "[embeddings]");
        let forced = if b.dax_forced { ", forced" } else { "" };
        let _ = writeln!(o, "dax oracle        {}{forced}", b.dax.mode);
        let fate = match &b.rot {
            RotFateDto::Dies { generator, b } => format!("dies (fix[{generator}], b = {})", vector(b)),
            RotFateDto::Survives => "survives".into(),
            RotFateDto::Conditional { .. } => "conditional".into(),
        };
        let _ = writeln!(o, "rot in π₁Emb^fr   {fate}");
        let _ = writeln!(o, "sequence          {}", b.rendered);

        if !self.warnings.is_empty() {
            o.push('\n');
            let _ = writeln!(o, "[warnings]");
            for w in &self.warnings {
                let _ = writeln!(o, "- {w}");
            }
        }
        if self.degraded {
            let _ = writeln!(o, "\nsome queries were left symbolic (degraded)");
        }
        o
    }
}
