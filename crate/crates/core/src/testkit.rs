//! Seeded random inputs for property tests and the acceptance suite.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::classifier::ManifoldData;
use crate::groups::catalog::{a4, abelian_table, dicyclic, dihedral, q8, s3};
use crate::groups::{FgAbelianGroup, FiniteTableGroup, GroupElement, GroupModel, SelfCentralizingZ};
use crate::intalg::IntMatrix;
use crate::pi2mod::{ActionKey, Pi2Module};
use crate::spinclass::{classify_spin_type, coboundary, Cocycle, SpinAlternative, W2Data};

/// `ω(g, g) = 1` on `Z/2`, the extension `Z/4`.
pub fn z2_sq_cocycle() -> Cocycle {
    vec![vec![false, false], vec![false, true]]
}

/// Cocycle on `Z/2 × Z/2` (index `2a + b`) whose extension is `Q₈`:
/// `ω(x, y) = x₀y₀ + x₁y₁ + x₀y₁`.
pub fn q8_cocycle_over_v4() -> Cocycle {
    let bits = |i: usize| (i / 2 == 1, i % 2 == 1);
    (0..4)
        .map(|x| {
            (0..4)
                .map(|y| {
                    let (x0, x1) = bits(x);
                    let (y0, y1) = bits(y);
                    (x0 & y0) ^ (x1 & y1) ^ (x0 & y1)
                })
                .collect()
        })
        .collect()
}

/// All homomorphisms `G → Z/m`, as value tables.
pub fn homomorphisms_to_cyclic(g: &FiniteTableGroup, m: usize) -> Vec<Vec<usize>> {
    let gens = g.generators();
    let mut out = Vec::new();
    let total = m.pow(gens.len() as u32);
    for code in 0..total {
        let mut vals = vec![usize::MAX; g.order()];
        vals[g.identity()] = 0;
        let mut c = code;
        let gen_vals: Vec<usize> = gens
            .iter()
            .map(|_| {
                let v = c % m;
                c /= m;
                v
            })
            .collect();
        // breadth-first extension along right multiplication by generators
        let mut queue = vec![g.identity()];
        let mut ok = true;
        while let Some(x) = queue.pop() {
            for (&s, &v) in gens.iter().zip(&gen_vals) {
                let y = g.mul(x, s);
                let want = (vals[x] + v) % m;
                if vals[y] == usize::MAX {
                    vals[y] = want;
                    queue.push(y);
                } else if vals[y] != want {
                    ok = false;
                }
            }
        }
        if ok && (0..g.order()).all(|a| (0..g.order()).all(|b| vals[g.mul(a, b)] == (vals[a] + vals[b]) % m)) {
            out.push(vals);
        }
    }
    out
}

/// Cocycles spanning a large part of `H²(G; Z/2)`: cup products of
/// characters `G → Z/2` and pullbacks of the carry cocycle of `Z/4`, `Z/8`.
pub fn cocycle_basis(g: &FiniteTableGroup) -> Vec<Cocycle> {
    let n = g.order();
    let mut out = Vec::new();
    let chars = homomorphisms_to_cyclic(g, 2);
    for phi in &chars {
        for psi in &chars {
            out.push((0..n).map(|a| (0..n).map(|b| phi[a] * psi[b] == 1).collect()).collect());
        }
    }
    for m in [4usize, 8] {
        for phi in homomorphisms_to_cyclic(g, m) {
            out.push((0..n).map(|a| (0..n).map(|b| phi[a] + phi[b] >= m).collect()).collect());
        }
    }
    out
}

/// A random normalised cocycle: a random coboundary plus a random sum of
/// basis cocycles.
pub fn random_cocycle<R: Rng>(g: &FiniteTableGroup, rng: &mut R) -> Cocycle {
    let n = g.order();
    let mut f: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
    f[g.identity()] = false;
    let mut omega = coboundary(&f, g);
    for b in cocycle_basis(g) {
        if rng.gen_bool(0.5) {
            for x in 0..n {
                for y in 0..n {
                    omega[x][y] ^= b[x][y];
                }
            }
        }
    }
    omega
}

/// Finite groups of order at most 16 used in randomized corpora.
pub fn small_groups() -> Vec<(&'static str, FiniteTableGroup)> {
    vec![
        ("Z1", FiniteTableGroup::cyclic(1)),
        ("Z2", FiniteTableGroup::cyclic(2)),
        ("Z3", FiniteTableGroup::cyclic(3)),
        ("Z4", FiniteTableGroup::cyclic(4)),
        ("V4", abelian_table(&[2, 2])),
        ("Z6", FiniteTableGroup::cyclic(6)),
        ("S3", s3()),
        ("Z8", FiniteTableGroup::cyclic(8)),
        ("Z2xZ4", abelian_table(&[2, 4])),
        ("Z2^3", abelian_table(&[2, 2, 2])),
        ("D4", dihedral(4)),
        ("Q8", q8()),
        ("D5", dihedral(5)),
        ("A4", a4()),
        ("Dic3", dicyclic(3)),
        ("D6", dihedral(6)),
        ("Z2xZ6", abelian_table(&[2, 6])),
        ("Z4xZ4", abelian_table(&[4, 4])),
        ("Z2xD4", FiniteTableGroup::cyclic(2).direct_product(&dihedral(4))),
        ("Z2xQ8", FiniteTableGroup::cyclic(2).direct_product(&q8())),
        ("D8", dihedral(8)),
    ]
}

/// Groups of a given order from [`small_groups`].
pub fn small_groups_of_order(n: usize) -> Vec<(&'static str, FiniteTableGroup)> {
    small_groups().into_iter().filter(|(_, g)| g.order() == n).collect()
}

/// A random group from [`small_groups`].
pub fn random_small_group<R: Rng>(rng: &mut R) -> (&'static str, FiniteTableGroup) {
    small_groups().choose(rng).cloned().expect("nonempty catalog")
}

/// Random matrix of finite order on `Zⁿ` built from signed permutations.
pub fn random_signed_permutation<R: Rng>(n: usize, rng: &mut R) -> Vec<Vec<i64>> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut m = vec![vec![0i64; n]; n];
    for (i, &p) in perm.iter().enumerate() {
        m[p][i] = if rng.gen_bool(0.3) { -1 } else { 1 };
    }
    m
}

/// A random π₂ before the action is chosen: its presentation and a list
/// of commuting involutions that group elements may apply.
struct ModuleShape {
    ngens: usize,
    relations: IntMatrix,
    involutions: Vec<IntMatrix>,
}

fn random_shape<R: Rng>(rng: &mut R) -> ModuleShape {
    let m = |rows: &[&[i64]], n| IntMatrix::from_rows(n, rows).expect("rectangular");
    match rng.gen_range(0..6) {
        0 => ModuleShape { ngens: 0, relations: IntMatrix::zeros(0, 0), involutions: Vec::new() },
        1 => {
            let n = rng.gen_range(1..=2);
            ModuleShape { ngens: n, relations: IntMatrix::zeros(0, n), involutions: Vec::new() }
        }
        2 => ModuleShape { ngens: 2, relations: IntMatrix::zeros(0, 2), involutions: vec![m(&[&[0, 1], &[1, 0]], 2)] },
        3 => ModuleShape { ngens: 1, relations: IntMatrix::zeros(0, 1), involutions: vec![m(&[&[-1]], 1)] },
        4 => {
            let k = *[2i64, 3, 4, 6].choose(rng).expect("nonempty");
            ModuleShape { ngens: 1, relations: m(&[&[k]], 1), involutions: vec![m(&[&[-1]], 1)] }
        }
        _ => ModuleShape {
            ngens: 2,
            relations: m(&[&[0, 4]], 2),
            involutions: vec![m(&[&[-1, 0], &[0, 1]], 2), m(&[&[1, 0], &[0, -1]], 2)],
        },
    }
}

impl ModuleShape {
    fn matrix(&self, flips: &[bool]) -> IntMatrix {
        let mut a = IntMatrix::identity(self.ngens);
        for (inv, &on) in self.involutions.iter().zip(flips) {
            if on {
                a = a.checked_mul(inv).expect("square");
            }
        }
        a
    }

    fn module(&self, action: BTreeMap<ActionKey, IntMatrix>) -> Pi2Module {
        Pi2Module::new(self.ngens, self.relations.clone(), action).expect("shapes agree")
    }
}

/// A nonzero π₁-invariant functional on π₂, if there is one.
fn random_w2s<R: Rng>(pi2: &Pi2Module, rng: &mut R) -> Option<Vec<bool>> {
    let n = pi2.ngens();
    let options: Vec<Vec<bool>> = (1u32..(1 << n))
        .map(|mask| (0..n).map(|i| mask >> i & 1 == 1).collect::<Vec<bool>>())
        .filter(|f| pi2.check_functional_invariance(f).is_ok())
        .collect();
    options.choose(rng).cloned()
}

/// A random validated manifold over a Cayley-table group, with a circle
/// class, realising the requested spin alternative when possible.
pub fn random_finite_manifold<R: Rng>(alt: SpinAlternative, rng: &mut R) -> Option<(ManifoldData, GroupElement)> {
    let (name, g) = random_small_group(rng);
    let shape = random_shape(rng);
    let chars = homomorphisms_to_cyclic(&g, 2);
    let picks: Vec<&Vec<usize>> = shape.involutions.iter().map(|_| chars.choose(rng).expect("trivial character")).collect();
    let mut action = BTreeMap::new();
    for x in 0..g.order() {
        let flips: Vec<bool> = picks.iter().map(|chi| chi[x] == 1).collect();
        if flips.iter().any(|&f| f) {
            action.insert(ActionKey::Element(x), shape.matrix(&flips));
        }
    }
    let pi2 = shape.module(action);
    let pi1 = GroupModel::FiniteTable(g.clone());
    let w2 = match alt {
        SpinAlternative::Spin => W2Data::Spin,
        SpinAlternative::TotallyNonspin => W2Data::TotallyNonspin { w2s: random_w2s(&pi2, rng)? },
        _ => (0..8)
            .map(|_| W2Data::AlmostSpinCocycle { omega: random_cocycle(&g, rng) })
            .find(|w| classify_spin_type(w, &pi1).ok() == Some(alt))?,
    };
    let c = GroupElement::Index(rng.gen_range(0..g.order()));
    let x = ManifoldData { name: format!("random-{name}"), pi1, pi2, w2, notes: None };
    Some((x, c))
}

/// A random validated manifold over an abelian group given by generators.
pub fn random_abelian_manifold<R: Rng>(rng: &mut R) -> (ManifoldData, GroupElement) {
    let rank = rng.gen_range(0..=1);
    let ntors = rng.gen_range(usize::from(rank == 0)..=2);
    let torsion: Vec<u64> = (0..ntors).map(|_| *[2u64, 2, 3, 4, 6].choose(rng).expect("nonempty")).collect();
    let a = FgAbelianGroup::new(rank, torsion).expect("positive moduli");
    let k = a.ngens();
    let even_or_free = |i: usize| a.modulus(i).is_none_or(|m| m % 2 == 0);
    let shape = random_shape(rng);
    let mut action = BTreeMap::new();
    for i in 0..k {
        let flips: Vec<bool> = shape.involutions.iter().map(|_| even_or_free(i) && rng.gen_bool(0.5)).collect();
        if flips.iter().any(|&f| f) {
            action.insert(ActionKey::Generator(i), shape.matrix(&flips));
        }
    }
    let pi2 = shape.module(action);
    let w2 = match rng.gen_range(0..4) {
        0 => W2Data::Spin,
        1 => match random_w2s(&pi2, rng) {
            Some(w2s) => W2Data::TotallyNonspin { w2s },
            None => W2Data::Spin,
        },
        _ => {
            let ext_bits = (0..k).map(|i| a.modulus(i).is_some_and(|m| m % 2 == 0) && rng.gen_bool(0.6)).collect();
            let mut pairing = vec![vec![false; k]; k];
            for i in 0..k {
                for j in i + 1..k {
                    let bit = even_or_free(i) && even_or_free(j) && rng.gen_bool(0.6);
                    pairing[i][j] = bit;
                    pairing[j][i] = bit;
                }
            }
            W2Data::AlmostSpinAbelian { ext_bits, pairing }
        }
    };
    let c: Vec<i64> = (0..k).map(|_| rng.gen_range(-2..=2)).collect();
    let c = a.reduce(&c);
    let x = ManifoldData { name: "random-abelian".into(), pi1: GroupModel::FgAbelian(a), pi2, w2, notes: None };
    (x, GroupElement::Vector(c))
}

/// A random validated manifold in the self-centralising model.
pub fn random_scz_manifold<R: Rng>(rng: &mut R) -> (ManifoldData, GroupElement) {
    let n = rng.gen_range(0..=2);
    let mut action = BTreeMap::new();
    if n == 2 && rng.gen_bool(0.5) {
        action.insert(ActionKey::C, IntMatrix::from_rows(2, &[[0i64, 1], [1, 0]]).expect("2x2"));
    }
    let pi2 = Pi2Module::new(n, IntMatrix::zeros(0, n), action).expect("shapes agree");
    let w2 = match rng.gen_bool(0.5).then(|| random_w2s(&pi2, rng)).flatten() {
        Some(w2s) => W2Data::TotallyNonspin { w2s },
        None => W2Data::Spin,
    };
    let c = GroupElement::CPower(*[1i64, 1, -1, 2].choose(rng).expect("nonempty"));
    let pi1 = GroupModel::SelfCentralizingZ(SelfCentralizingZ { label: "G".into() });
    (ManifoldData { name: "random-scz".into(), pi1, pi2, w2, notes: None }, c)
}

/// Mixed corpus entry: mostly finite tables, some abelian, a few
/// self-centralising.
pub fn random_manifold<R: Rng>(rng: &mut R) -> (ManifoldData, GroupElement) {
    loop {
        let roll = rng.gen_range(0..20);
        if roll < 13 {
            let alt = *SpinAlternative::ALL.choose(rng).expect("nonempty");
            if let Some(out) = random_finite_manifold(alt, rng) {
                return out;
            }
        } else if roll < 19 {
            return random_abelian_manifold(rng);
        } else {
            return random_scz_manifold(rng);
        }
    }
}
