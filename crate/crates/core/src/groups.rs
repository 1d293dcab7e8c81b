//! Concrete models of π₁X.
//!
//! Three representations are supported: a finite group given by its Cayley
//! table, a finitely generated abelian group `Z^r ⊕ ⊕ Z/nᵢ`, and an abstract
//! group in which a distinguished element `c` has infinite order and
//! centraliser exactly `⟨c⟩` (the situation of `M # S¹×S³` with `c` the
//! `S¹` factor). The last model answers only the queries that concern `c`.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::intalg::{presentation_invariants, CanonicalForm, IntMatrix};

/// Default cap on the order of a Cayley-table group.
pub const DEFAULT_MAX_ORDER: usize = 2048;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("element {element} does not belong to {model}")]
    ElementMismatch { element: String, model: &'static str },
    #[error("query `{query}` is not supported by the {model} model")]
    Unsupported { query: &'static str, model: &'static str },
    #[error("invalid Cayley table: {}", first_violation(.0))]
    InvalidTable(Vec<TableViolation>),
    #[error("group order {order} exceeds the configured maximum {max}")]
    TooLarge { order: usize, max: usize },
    #[error("torsion coefficient {0} must be at least 2")]
    InvalidTorsion(u64),
    #[error("{0} labels supplied for {1} elements")]
    LabelCount(usize, usize),
    #[error("arithmetic overflow in group coordinates")]
    Overflow,
}

fn first_violation(v: &[TableViolation]) -> String {
    v.first().map(|x| format!("{x}")).unwrap_or_default()
}

/// One reason a Cayley table fails to define a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableViolation {
    Shape { row: usize, len: usize, expected: usize },
    EntryOutOfRange { row: usize, col: usize, value: usize },
    RowNotPermutation { row: usize },
    ColumnNotPermutation { col: usize },
    NoIdentity,
    NonAssociative { a: usize, b: usize, c: usize },
    Empty,
}

impl fmt::Display for TableViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableViolation::Shape { row, len, expected } => {
                write!(f, "row {row} has {len} entries, expected {expected}")
            }
            TableViolation::EntryOutOfRange { row, col, value } => {
                write!(f, "entry ({row},{col}) = {value} is out of range")
            }
            TableViolation::RowNotPermutation { row } => write!(f, "row {row} is not a permutation (not a Latin square)"),
            TableViolation::ColumnNotPermutation { col } => {
                write!(f, "column {col} is not a permutation (not a Latin square)")
            }
            TableViolation::NoIdentity => write!(f, "no two-sided identity element"),
            TableViolation::NonAssociative { a, b, c } => {
                write!(f, "associativity fails on ({a},{b},{c}): (ab)c != a(bc)")
            }
            TableViolation::Empty => write!(f, "a group needs at least one element"),
        }
    }
}

/// Finite group given by a validated Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTableGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    identity: usize,
    labels: Option<Vec<String>>,
}

impl FiniteTableGroup {
    /// Validates `rows` as a Cayley table (`rows[a][b] = a·b`).
    pub fn from_table(rows: &[Vec<usize>], max_order: usize) -> Result<Self, GroupError> {
        let n = rows.len();
        if n > max_order {
            return Err(GroupError::TooLarge { order: n, max: max_order });
        }
        let violations = table_violations(rows);
        if !violations.is_empty() {
            return Err(GroupError::InvalidTable(violations));
        }
        let table: Vec<usize> = rows.iter().flatten().copied().collect();
        Ok(Self::from_flat_unchecked(n, table))
    }

    /// Builds the table `a·b = mul(a, b)` and validates it.
    pub fn from_fn(order: usize, max_order: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self, GroupError> {
        let rows: Vec<Vec<usize>> = (0..order).map(|a| (0..order).map(|b| mul(a, b)).collect()).collect();
        Self::from_table(&rows, max_order)
    }

    pub(crate) fn from_flat_unchecked(n: usize, table: Vec<usize>) -> Self {
        let identity = (0..n).find(|&e| (0..n).all(|x| table[e * n + x] == x)).expect("validated");
        let inverse = (0..n).map(|a| (0..n).find(|&b| table[a * n + b] == identity).expect("validated")).collect();
        FiniteTableGroup { order: n, table, inverse, identity, labels: None }
    }

    /// Cyclic group `Z/n` with `k·l = k + l mod n`.
    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, usize::MAX, |a, b| (a + b) % n).expect("cyclic tables are groups")
    }

    /// Closure of a set of permutations of `{0, …, degree-1}` under
    /// composition, with `a·b = a ∘ b` (apply `b` first). Elements are
    /// numbered in breadth-first order from the identity and labelled in
    /// 1-based cycle notation.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>], max_order: usize) -> Result<Self, GroupError> {
        let id: Vec<usize> = (0..degree).collect();
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut elems = vec![id.clone()];
        index.insert(id, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let p: Vec<usize> = (0..degree).map(|k| elems[i][g[k]]).collect();
                if !index.contains_key(&p) {
                    if elems.len() >= max_order {
                        return Err(GroupError::TooLarge { order: elems.len() + 1, max: max_order });
                    }
                    index.insert(p.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(p);
                }
            }
        }
        let n = elems.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                let p: Vec<usize> = (0..degree).map(|k| a[b[k]]).collect();
                table.push(index[&p]);
            }
        }
        let mut g = Self::from_flat_unchecked(n, table);
        g.labels = Some(elems.iter().map(|p| cycle_notation(p)).collect());
        Ok(g)
    }

    /// Direct product with `(a, b)` numbered `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteTableGroup) -> Self {
        let m = other.order;
        let n = self.order * m;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let a = self.mul(x / m, y / m);
                let b = other.mul(x % m, y % m);
                table.push(a * m + b);
            }
        }
        Self::from_flat_unchecked(n, table)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GroupError> {
        if labels.len() != self.order {
            return Err(GroupError::LabelCount(labels.len(), self.order));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => format!("#{g}"),
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ab_inv = self.mul(self.inv(a), self.inv(b));
        self.mul(ab, ab_inv)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Smallest subgroup containing `gens`, as a sorted element list.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::from([self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// A generating set, chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let all: Vec<usize> = (0..self.order).collect();
        minimal_generators(self, &all)
    }

    pub fn centralizer_elements(&self, c: usize) -> Vec<usize> {
        (0..self.order).filter(|&y| self.mul(y, c) == self.mul(c, y)).collect()
    }

    /// Conjugacy classes, each sorted, ordered by smallest member.
    pub fn conjugacy_class_indices(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order];
        let mut classes = Vec::new();
        for x in 0..self.order {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = BTreeSet::new();
            for g in 0..self.order {
                let y = self.mul(self.mul(g, x), self.inv(g));
                members.insert(y);
            }
            for &m in &members {
                class_of[m] = id;
            }
            classes.push(members.into_iter().collect());
        }
        classes
    }

    /// Commutator subgroup `[G, G]` as a sorted element list.
    pub fn derived_subgroup(&self) -> Vec<usize> {
        let comms: BTreeSet<usize> =
            (0..self.order).flat_map(|a| (0..self.order).map(move |b| (a, b))).map(|(a, b)| self.commutator(a, b)).collect();
        let gens: Vec<usize> = comms.into_iter().collect();
        self.generated_subgroup(&gens)
    }

    /// Invariant factors of the abelianisation `G / [G, G]`, read off from
    /// element-order statistics of the quotient (no linear algebra).
    pub fn abelianization(&self) -> CanonicalForm {
        let derived = self.derived_subgroup();
        let in_derived = {
            let mut v = vec![false; self.order];
            for &d in &derived {
                v[d] = true;
            }
            v
        };
        // coset representatives: smallest element of each coset g[G,G]
        let mut rep_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if rep_of[g] != usize::MAX {
                continue;
            }
            for &d in &derived {
                rep_of[self.mul(g, d)] = g;
            }
            reps.push(g);
        }
        let orders: Vec<u64> = reps
            .iter()
            .map(|&g| {
                let mut x = g;
                let mut k = 1u64;
                while !in_derived[x] {
                    x = self.mul(x, g);
                    k += 1;
                }
                k
            })
            .collect();
        finite_abelian_invariants(&orders)
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut k = start;
        let mut first = true;
        while !seen[k] {
            seen[k] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&format!("{}", k + 1));
            first = false;
            k = p[k];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Invariant factors of a finite abelian group from the multiset of its
/// element orders. For each prime `p`, the number of elements killed by
/// `p^k` is `p^(Σᵢ min(k, aᵢ))`, which determines the exponents `aᵢ`.
pub fn finite_abelian_invariants(element_orders: &[u64]) -> CanonicalForm {
    let n = element_orders.len() as u64;
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            primes.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    // exponents per prime, sorted descending
    let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for &p in &primes {
        let mut logs = vec![0u32];
        let mut k = 1u32;
        loop {
            let pk = p.pow(k);
            let count = element_orders.iter().filter(|&&o| pk % o == 0).count() as u64;
            let mut l = 0u32;
            let mut c = count;
            while c > 1 && c.is_multiple_of(p) {
                c /= p;
                l += 1;
            }
            logs.push(l);
            if l == logs[logs.len() - 2] {
                break;
            }
            k += 1;
        }
        // number of aᵢ ≥ k is logs[k] - logs[k-1]
        let at_least: Vec<u32> = logs.windows(2).map(|w| w[1] - w[0]).collect();
        let count = at_least.first().copied().unwrap_or(0) as usize;
        let mut exps = Vec::with_capacity(count);
        for i in 0..count {
            let e = at_least.iter().filter(|&&a| a as usize > i).count() as u32;
            exps.push(e);
        }
        per_prime.push((p, exps));
    }
    let width = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors: Vec<BigInt> = (0..width)
        .map(|j| {
            per_prime.iter().fold(BigInt::from(1u32), |acc, (p, exps)| {
                let e = exps.get(j).copied().unwrap_or(0);
                acc * BigInt::from(p.pow(e))
            })
        })
        .collect();
    factors.reverse();
    CanonicalForm { rank: 0, torsion: factors }
}

/// Validation of a candidate Cayley table.
///
/// Associativity uses Light's test: the set of `g` with `(xy)g = x(yg)` for
/// all `x, y` is closed under multiplication, so checking it on a set that
/// generates the table as a magma proves associativity everywhere.
pub fn table_violations(rows: &[Vec<usize>]) -> Vec<TableViolation> {
    let n = rows.len();
    if n == 0 {
        return vec![TableViolation::Empty];
    }
    let mut out = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        if row.len() != n {
            out.push(TableViolation::Shape { row: r, len: row.len(), expected: n });
        }
    }
    if !out.is_empty() {
        return out;
    }
    for (r, row) in rows.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            if v >= n {
                out.push(TableViolation::EntryOutOfRange { row: r, col: c, value: v });
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    for (r, row) in rows.iter().enumerate() {
        let mut seen = vec![false; n];
        if !row.iter().all(|&v| !core::mem::replace(&mut seen[v], true)) {
            out.push(TableViolation::RowNotPermutation { row: r });
        }
    }
    for c in 0..n {
        let mut seen = vec![false; n];
        if !rows.iter().all(|row| !core::mem::replace(&mut seen[row[c]], true)) {
            out.push(TableViolation::ColumnNotPermutation { col: c });
        }
    }
    let identity = (0..n).find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x));
    if identity.is_none() {
        out.push(TableViolation::NoIdentity);
    }
    if !out.is_empty() {
        return out;
    }

    if let Some((a, b, c)) = nonassociative_triple(n, |a, b| rows[a][b]) {
        out.push(TableViolation::NonAssociative { a, b, c });
    }
    out
}

/// Light's associativity test on a Latin square with identity: returns a
/// triple with `(ab)c != a(bc)`, or `None` if the operation is associative.
pub(crate) fn nonassociative_triple(n: usize, mul: impl Fn(usize, usize) -> usize) -> Option<(usize, usize, usize)> {
    let mut gens = Vec::new();
    let mut closure = BTreeSet::new();
    for g in 0..n {
        if closure.contains(&g) {
            continue;
        }
        gens.push(g);
        closure = magma_closure(n, &gens, &mul);
        if closure.len() == n {
            break;
        }
    }
    for &g in &gens {
        for x in 0..n {
            for y in 0..n {
                if mul(mul(x, y), g) != mul(x, mul(y, g)) {
                    return Some((x, y, g));
                }
            }
        }
    }
    None
}

fn magma_closure(n: usize, gens: &[usize], mul: &impl Fn(usize, usize) -> usize) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = gens.iter().copied().collect();
    let mut frontier: Vec<usize> = gens.to_vec();
    while !frontier.is_empty() && set.len() < n {
        let current: Vec<usize> = set.iter().copied().collect();
        let mut next = Vec::new();
        for &a in &frontier {
            for &b in &current {
                for v in [mul(a, b), mul(b, a)] {
                    if set.insert(v) {
                        next.push(v);
                    }
                }
            }
        }
        frontier = next;
    }
    set
}

/// `Z^rank ⊕ Z/t₁ ⊕ … ⊕ Z/t_k`, with coordinates free part first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgAbelianGroup {
    rank: usize,
    torsion: Vec<u64>,
    names: Option<Vec<String>>,
}

impl FgAbelianGroup {
    pub fn new(rank: usize, torsion: Vec<u64>) -> Result<Self, GroupError> {
        if let Some(&t) = torsion.iter().find(|&&t| t < 2) {
            return Err(GroupError::InvalidTorsion(t));
        }
        Ok(FgAbelianGroup { rank, torsion, names: None })
    }

    pub fn trivial() -> Self {
        FgAbelianGroup { rank: 0, torsion: Vec::new(), names: None }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, GroupError> {
        if names.len() != self.ngens() {
            return Err(GroupError::LabelCount(names.len(), self.ngens()));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    /// Number of coordinates (= number of cyclic generators).
    pub fn ngens(&self) -> usize {
        self.rank + self.torsion.len()
    }

    /// Modulus of coordinate `i`, `None` for free coordinates.
    pub fn modulus(&self, i: usize) -> Option<u64> {
        if i < self.rank { None } else { Some(self.torsion[i - self.rank]) }
    }

    pub fn generator(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.ngens()];
        v[i] = 1;
        self.reduce(&v)
    }

    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        v.iter()
            .enumerate()
            .map(|(i, &x)| match self.modulus(i) {
                None => x,
                Some(m) => x.rem_euclid(m as i64),
            })
            .collect()
    }

    pub fn is_reduced(&self, v: &[i64]) -> bool {
        v.len() == self.ngens() && self.reduce(v) == v
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Result<Vec<i64>, GroupError> {
        let sum: Option<Vec<i64>> = a.iter().zip(b).map(|(x, y)| x.checked_add(*y)).collect();
        Ok(self.reduce(&sum.ok_or(GroupError::Overflow)?))
    }

    pub fn neg(&self, a: &[i64]) -> Vec<i64> {
        self.reduce(&a.iter().map(|x| -x).collect::<Vec<_>>())
    }

    pub fn scale(&self, a: &[i64], k: i64) -> Result<Vec<i64>, GroupError> {
        let v: Option<Vec<i64>> = a.iter().map(|x| x.checked_mul(k)).collect();
        Ok(self.reduce(&v.ok_or(GroupError::Overflow)?))
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn order(&self) -> Option<u64> {
        if self.rank > 0 {
            return None;
        }
        self.torsion.iter().try_fold(1u64, |acc, &t| acc.checked_mul(t))
    }

    /// Order of an element, `None` if infinite.
    pub fn element_order(&self, a: &[i64]) -> Option<u64> {
        if a[..self.rank].iter().any(|&x| x != 0) {
            return None;
        }
        let mut ord = 1u64;
        for (i, &t) in self.torsion.iter().enumerate() {
            let x = a[self.rank + i].rem_euclid(t as i64) as u64;
            let o = t / gcd(t, x);
            ord = ord / gcd(ord, o) * o;
        }
        Some(ord)
    }

    /// All elements in mixed-radix order (last coordinate fastest), or
    /// `None` if the group is infinite or larger than `max`.
    pub fn elements(&self, max: usize) -> Option<Vec<Vec<i64>>> {
        let order = self.order()?;
        if order > max as u64 {
            return None;
        }
        let mut out = Vec::with_capacity(order as usize);
        for mut idx in 0..order {
            let mut v = vec![0i64; self.torsion.len()];
            for i in (0..self.torsion.len()).rev() {
                v[i] = (idx % self.torsion[i]) as i64;
                idx /= self.torsion[i];
            }
            out.push(v);
        }
        Some(out)
    }

    /// Index of a reduced element in [`Self::elements`] order.
    pub fn element_index(&self, a: &[i64]) -> usize {
        let mut idx = 0u64;
        for (i, &t) in self.torsion.iter().enumerate() {
            idx = idx * t + a[self.rank + i].rem_euclid(t as i64) as u64;
        }
        idx as usize
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        let t: Vec<BigInt> = self.torsion.iter().map(|&x| BigInt::from(x)).collect();
        CanonicalForm::from_cyclic_factors(self.rank, &t)
    }

    /// Is the whole group generated by `g`?
    pub fn is_generated_by(&self, g: &[i64]) -> bool {
        let n = self.ngens();
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for (i, &t) in self.torsion.iter().enumerate() {
            let mut r = vec![BigInt::from(0); n];
            r[self.rank + i] = BigInt::from(t);
            rows.push(r);
        }
        rows.push(g.iter().map(|&x| BigInt::from(x)).collect());
        let rel = IntMatrix::from_big_rows(n, &rows).expect("consistent widths");
        presentation_invariants(n, &rel).expect("consistent widths").is_trivial()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Abstract group with a distinguished self-centralising element `c` of
/// infinite order. Elements other than powers of `c` are not representable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfCentralizingZ {
    pub label: String,
}

/// π₁X in one of the three supported representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupModel {
    FiniteTable(FiniteTableGroup),
    FgAbelian(FgAbelianGroup),
    SelfCentralizingZ(SelfCentralizingZ),
}

/// An element of a [`GroupModel`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupElement {
    /// Index into a Cayley table.
    Index(usize),
    /// Coordinates in `Z^r ⊕ ⊕ Z/nᵢ`, torsion coordinates reduced.
    Vector(Vec<i64>),
    /// `c^k` in the self-centralising model.
    CPower(i64),
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Index(i) => write!(f, "index:{i}"),
            GroupElement::Vector(v) => {
                write!(f, "vec:")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            GroupElement::CPower(1) => write!(f, "c"),
            GroupElement::CPower(k) => write!(f, "c^{k}"),
        }
    }
}

/// A subgroup, described by generators and, when finite, its elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupDescriptor {
    pub generators: Vec<GroupElement>,
    /// Full element list when the subgroup is finite and enumerable.
    pub elements: Option<Vec<GroupElement>>,
    /// Order, `None` when infinite.
    pub order: Option<u64>,
    pub whole_group: bool,
}

impl SubgroupDescriptor {
    pub fn enumerable(&self) -> bool {
        self.elements.is_some()
    }
}

/// Result of [`GroupModel::conjugacy_classes`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConjugacyClasses {
    Classes(Vec<Vec<GroupElement>>),
    /// Abelian group: every element is its own class.
    OneClassPerElement,
    Unsupported,
}

impl GroupModel {
    pub fn kind(&self) -> &'static str {
        match self {
            GroupModel::FiniteTable(_) => "finite_table",
            GroupModel::FgAbelian(_) => "fg_abelian",
            GroupModel::SelfCentralizingZ(_) => "self_centralizing_z",
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GroupModel::FiniteTable(g) => GroupElement::Index(g.identity()),
            GroupModel::FgAbelian(g) => GroupElement::Vector(vec![0; g.ngens()]),
            GroupModel::SelfCentralizingZ(_) => GroupElement::CPower(0),
        }
    }

    pub fn is_identity(&self, a: &GroupElement) -> bool {
        *a == self.identity()
    }

    /// Checks that `a` is a (reduced) element of this model.
    pub fn check(&self, a: &GroupElement) -> Result<(), GroupError> {
        let ok = match (self, a) {
            (GroupModel::FiniteTable(g), GroupElement::Index(i)) => *i < g.order(),
            (GroupModel::FgAbelian(g), GroupElement::Vector(v)) => g.is_reduced(v),
            (GroupModel::SelfCentralizingZ(_), GroupElement::CPower(_)) => true,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(GroupError::ElementMismatch { element: format!("{a}"), model: self.kind() })
        }
    }

    pub fn product(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (self, a, b) {
            (GroupModel::FiniteTable(g), GroupElement::Index(x), GroupElement::Index(y)) => {
                GroupElement::Index(g.mul(*x, *y))
            }
            (GroupModel::FgAbelian(g), GroupElement::Vector(x), GroupElement::Vector(y)) => {
                GroupElement::Vector(g.add(x, y)?)
            }
            (GroupModel::SelfCentralizingZ(_), GroupElement::CPower(x), GroupElement::CPower(y)) => {
                GroupElement::CPower(x.checked_add(*y).ok_or(GroupError::Overflow)?)
            }
            _ => unreachable!("checked above"),
        })
    }

    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        Ok(match (self, a) {
            (GroupModel::FiniteTable(g), GroupElement::Index(x)) => GroupElement::Index(g.inv(*x)),
            (GroupModel::FgAbelian(g), GroupElement::Vector(x)) => GroupElement::Vector(g.neg(x)),
            (GroupModel::SelfCentralizingZ(_), GroupElement::CPower(k)) => GroupElement::CPower(-k),
            _ => unreachable!("checked above"),
        })
    }

    /// `h · c · h⁻¹`.
    pub fn conjugate(&self, h: &GroupElement, c: &GroupElement) -> Result<GroupElement, GroupError> {
        let hc = self.product(h, c)?;
        self.product(&hc, &self.inverse(h)?)
    }

    pub fn commutes(&self, a: &GroupElement, b: &GroupElement) -> Result<bool, GroupError> {
        match self {
            GroupModel::FiniteTable(g) => {
                self.check(a)?;
                self.check(b)?;
                let (GroupElement::Index(x), GroupElement::Index(y)) = (a, b) else { unreachable!() };
                Ok(g.mul(*x, *y) == g.mul(*y, *x))
            }
            GroupModel::FgAbelian(_) => {
                self.check(a)?;
                self.check(b)?;
                Ok(true)
            }
            GroupModel::SelfCentralizingZ(_) => {
                self.check(a)?;
                self.check(b)?;
                Ok(true)
            }
        }
    }

    /// Element order, `None` for infinite order.
    pub fn element_order(&self, a: &GroupElement) -> Result<Option<u64>, GroupError> {
        self.check(a)?;
        Ok(match (self, a) {
            (GroupModel::FiniteTable(g), GroupElement::Index(x)) => Some(g.element_order(*x) as u64),
            (GroupModel::FgAbelian(g), GroupElement::Vector(x)) => g.element_order(x),
            (GroupModel::SelfCentralizingZ(_), GroupElement::CPower(k)) => {
                if *k == 0 {
                    Some(1)
                } else {
                    None
                }
            }
            _ => unreachable!("checked above"),
        })
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        match self {
            GroupModel::FiniteTable(g) => Some(g.order() as u64),
            GroupModel::FgAbelian(g) => g.order(),
            GroupModel::SelfCentralizingZ(_) => None,
        }
    }

    /// All elements, when the group is finite and has at most `max` elements.
    pub fn elements(&self, max: usize) -> Option<Vec<GroupElement>> {
        match self {
            GroupModel::FiniteTable(g) if g.order() <= max => Some((0..g.order()).map(GroupElement::Index).collect()),
            GroupModel::FgAbelian(g) => g.elements(max).map(|v| v.into_iter().map(GroupElement::Vector).collect()),
            _ => None,
        }
    }

    /// Centraliser of `c`, which is also its stabiliser under conjugation.
    pub fn centralizer(&self, c: &GroupElement, max_enumerate: usize) -> Result<SubgroupDescriptor, GroupError> {
        self.check(c)?;
        match (self, c) {
            (GroupModel::FiniteTable(g), GroupElement::Index(x)) => {
                let elems = g.centralizer_elements(*x);
                let gens = minimal_generators(g, &elems);
                Ok(SubgroupDescriptor {
                    generators: gens.into_iter().map(GroupElement::Index).collect(),
                    order: Some(elems.len() as u64),
                    whole_group: elems.len() == g.order(),
                    elements: Some(elems.into_iter().map(GroupElement::Index).collect()),
                })
            }
            (GroupModel::FgAbelian(g), _) => Ok(SubgroupDescriptor {
                generators: (0..g.ngens()).map(|i| GroupElement::Vector(g.generator(i))).collect(),
                elements: self.elements(max_enumerate),
                order: g.order(),
                whole_group: true,
            }),
            (GroupModel::SelfCentralizingZ(_), GroupElement::CPower(k)) => {
                if *k == 0 {
                    return Err(GroupError::Unsupported {
                        query: "centralizer of the identity",
                        model: "self_centralizing_z",
                    });
                }
                Ok(SubgroupDescriptor {
                    generators: vec![GroupElement::CPower(1)],
                    elements: None,
                    order: None,
                    whole_group: false,
                })
            }
            _ => unreachable!("checked above"),
        }
    }

    pub fn conjugacy_classes(&self) -> ConjugacyClasses {
        match self {
            GroupModel::FiniteTable(g) => ConjugacyClasses::Classes(
                g.conjugacy_class_indices()
                    .into_iter()
                    .map(|c| c.into_iter().map(GroupElement::Index).collect())
                    .collect(),
            ),
            GroupModel::FgAbelian(_) => ConjugacyClasses::OneClassPerElement,
            GroupModel::SelfCentralizingZ(_) => ConjugacyClasses::Unsupported,
        }
    }

    /// Does the centraliser of `c` coincide with the cyclic group `⟨c⟩`?
    pub fn is_self_centralizing(&self, c: &GroupElement) -> Result<bool, GroupError> {
        self.check(c)?;
        Ok(match (self, c) {
            (GroupModel::FiniteTable(g), GroupElement::Index(x)) => {
                g.centralizer_elements(*x) == g.generated_subgroup(&[*x])
            }
            (GroupModel::FgAbelian(g), GroupElement::Vector(x)) => g.is_generated_by(x),
            (GroupModel::SelfCentralizingZ(_), GroupElement::CPower(k)) => k.abs() == 1,
            _ => unreachable!("checked above"),
        })
    }

    /// First Betti number and torsion of `H₁ = π₁^ab`, when computable.
    pub fn abelianization(&self) -> Option<CanonicalForm> {
        match self {
            GroupModel::FiniteTable(g) => Some(g.abelianization()),
            GroupModel::FgAbelian(g) => Some(g.canonical_form()),
            GroupModel::SelfCentralizingZ(_) => None,
        }
    }

    /// Looks up an element by label (finite tables) or generator name
    /// (abelian groups).
    pub fn element_by_name(&self, name: &str) -> Option<GroupElement> {
        match self {
            GroupModel::FiniteTable(g) => {
                g.labels()?.iter().position(|l| l == name).map(GroupElement::Index)
            }
            GroupModel::FgAbelian(g) => {
                g.names()?.iter().position(|l| l == name).map(|i| GroupElement::Vector(g.generator(i)))
            }
            GroupModel::SelfCentralizingZ(_) => (name == "c").then_some(GroupElement::CPower(1)),
        }
    }

    /// Human-readable name of an element.
    pub fn describe(&self, a: &GroupElement) -> String {
        match (self, a) {
            (GroupModel::FiniteTable(g), GroupElement::Index(i)) if *i < g.order() => g.label(*i),
            (GroupModel::FgAbelian(g), GroupElement::Vector(v)) if v.len() == g.ngens() => match g.names() {
                Some(names) => named_sum(names, v),
                None => format!("{a}"),
            },
            _ => format!("{a}"),
        }
    }
}

/// `v` written additively in the generator names, e.g. `x + 2y`.
fn named_sum(names: &[String], v: &[i64]) -> String {
    let mut out = String::new();
    for (name, &k) in names.iter().zip(v) {
        if k == 0 {
            continue;
        }
        let sep = if out.is_empty() { if k < 0 { "-" } else { "" } } else if k < 0 { " - " } else { " + " };
        out.push_str(sep);
        if k.unsigned_abs() != 1 {
            out.push_str(&format!("{}", k.unsigned_abs()));
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A small generating set of a subgroup given by its elements, chosen
/// greedily in index order.
pub(crate) fn minimal_generators(g: &FiniteTableGroup, elems: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = BTreeSet::from([g.identity()]);
    for &x in elems {
        if !span.contains(&x) {
            gens.push(x);
            span = g.generated_subgroup(&gens).into_iter().collect();
        }
    }
    gens
}

/// Small finite groups used by builtins and tests.
pub mod catalog {
    use super::*;

    /// Symmetric group S₃ on `{1,2,3}` generated by (1 2) and (1 3).
    pub fn s3() -> FiniteTableGroup {
        FiniteTableGroup::from_permutations(3, &[vec![1, 0, 2], vec![2, 1, 0]], DEFAULT_MAX_ORDER)
            .expect("S3 is small")
    }

    /// Dihedral group of order `2n` acting on the `n`-gon.
    pub fn dihedral(n: usize) -> FiniteTableGroup {
        let rot: Vec<usize> = (0..n).map(|k| (k + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|k| (n - k) % n).collect();
        FiniteTableGroup::from_permutations(n, &[rot, refl], DEFAULT_MAX_ORDER).expect("dihedral is small")
    }

    /// Alternating group A₄.
    pub fn a4() -> FiniteTableGroup {
        FiniteTableGroup::from_permutations(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]], DEFAULT_MAX_ORDER)
            .expect("A4 is small")
    }

    /// Quaternion group Q₈ as permutations of `{±1, ±i, ±j, ±k}`.
    pub fn q8() -> FiniteTableGroup {
        // points: 0=1 1=i 2=j 3=k 4=-1 5=-i 6=-j 7=-k; left multiplication
        let li = vec![1, 4, 3, 6, 5, 0, 7, 2];
        let lj = vec![2, 7, 4, 1, 6, 3, 0, 5];
        FiniteTableGroup::from_permutations(8, &[li, lj], DEFAULT_MAX_ORDER).expect("Q8 is small")
    }

    /// Dicyclic group of order `4n`: `⟨a, x | a^{2n} = 1, x² = aⁿ, x a x⁻¹ = a⁻¹⟩`.
    pub fn dicyclic(n: usize) -> FiniteTableGroup {
        // elements a^k x^e, k < 2n, e ∈ {0,1}, index = e·2n + k
        let m = 2 * n;
        FiniteTableGroup::from_fn(2 * m, DEFAULT_MAX_ORDER, |p, q| {
            let (e1, k1) = (p / m, p % m);
            let (e2, k2) = (q / m, q % m);
            // a^k1 x^e1 a^k2 x^e2 = a^(k1 ± k2) x^(e1+e2)
            let k = if e1 == 1 { (k1 + m - k2) % m } else { (k1 + k2) % m };
            match (e1, e2) {
                (1, 1) => (k + n) % m,
                _ => (e1 + e2) * m + k,
            }
        })
        .expect("dicyclic is a group")
    }

    /// `SL(2, 3)`, the binary tetrahedral group, as 2×2 matrices over F₃.
    pub fn sl2_3() -> FiniteTableGroup {
        let mut mats = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        if (a * d + 3 * 3 - b * c) % 3 == 1 {
                            mats.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        let idx = |m: [usize; 4]| mats.iter().position(|x| *x == m).expect("closed");
        let mats2 = mats.clone();
        FiniteTableGroup::from_fn(mats.len(), DEFAULT_MAX_ORDER, move |p, q| {
            let [a, b, c, d] = mats2[p];
            let [e, f, g, h] = mats2[q];
            idx([(a * e + b * g) % 3, (a * f + b * h) % 3, (c * e + d * g) % 3, (c * f + d * h) % 3])
        })
        .expect("SL(2,3) is a group")
    }

    /// `Z/n₁ × … × Z/n_k` as a table, coordinates in mixed radix.
    pub fn abelian_table(torsion: &[usize]) -> FiniteTableGroup {
        torsion
            .iter()
            .fold(FiniteTableGroup::cyclic(1), |acc, &n| acc.direct_product(&FiniteTableGroup::cyclic(n)))
    }
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;

    fn s3_model() -> (GroupModel, FiniteTableGroup) {
        let g = s3();
        (GroupModel::FiniteTable(g.clone()), g)
    }

    fn idx(g: &FiniteTableGroup, label: &str) -> usize {
        g.labels().unwrap().iter().position(|l| l == label).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let (m, _) = s3_model();
        for a in m.elements(100).unwrap() {
            assert_eq!(m.product(&a, &m.identity()).unwrap(), a);
        }
        let z = GroupModel::FgAbelian(FgAbelianGroup::new(1, vec![4]).unwrap());
        let a = GroupElement::Vector(vec![-3, 2]);
        assert_eq!(z.product(&a, &z.identity()).unwrap(), a);
    }

    #[test]
    fn abelian_product_mod_four() {
        let g = GroupModel::FgAbelian(FgAbelianGroup::new(0, vec![4]).unwrap());
        let p = g.product(&GroupElement::Vector(vec![3]), &GroupElement::Vector(vec![2])).unwrap();
        assert_eq!(p, GroupElement::Vector(vec![1]));
    }

    #[test]
    fn s3_products_follow_composition() {
        let (m, g) = s3_model();
        // (1 2)(1 3) = (1 3 2), composing right to left
        let p = m.product(&GroupElement::Index(idx(&g, "(1 2)")), &GroupElement::Index(idx(&g, "(1 3)"))).unwrap();
        assert_eq!(m.describe(&p), "(1 3 2)");
    }

    #[test]
    fn s3_centralizer_of_transposition() {
        let (m, g) = s3_model();
        let c = GroupElement::Index(idx(&g, "(1 2)"));
        let z = m.centralizer(&c, 100).unwrap();
        let mut labels: Vec<String> = z.elements.unwrap().iter().map(|e| m.describe(e)).collect();
        labels.sort();
        assert_eq!(labels, ["()", "(1 2)"]);
        assert_eq!(z.order, Some(2));
    }

    #[test]
    fn abelian_centralizer_is_whole_group() {
        let g = GroupModel::FgAbelian(FgAbelianGroup::new(2, vec![3]).unwrap());
        let z = g.centralizer(&GroupElement::Vector(vec![1, 0, 2]), 100).unwrap();
        assert!(z.whole_group);
        assert_eq!(z.order, None);
        assert_eq!(z.generators.len(), 3);
    }

    #[test]
    fn self_centralizing_queries() {
        let g = GroupModel::SelfCentralizingZ(SelfCentralizingZ { label: "M".into() });
        let z = g.centralizer(&GroupElement::CPower(1), 100).unwrap();
        assert_eq!(z.generators, vec![GroupElement::CPower(1)]);
        assert_eq!(z.order, None);
        assert!(g.commutes(&GroupElement::CPower(3), &GroupElement::CPower(-2)).unwrap());
        assert_eq!(g.element_order(&GroupElement::CPower(2)).unwrap(), None);
        assert_eq!(g.conjugacy_classes(), ConjugacyClasses::Unsupported);
        assert!(g.is_self_centralizing(&GroupElement::CPower(1)).unwrap());
        assert!(g.centralizer(&GroupElement::CPower(0), 10).is_err());
    }

    #[test]
    fn conjugacy_classes_of_s3() {
        let (m, _) = s3_model();
        let ConjugacyClasses::Classes(cl) = m.conjugacy_classes() else { panic!() };
        let mut sizes: Vec<usize> = cl.iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, [1, 2, 3]);
        let trivial = GroupModel::FiniteTable(FiniteTableGroup::cyclic(1));
        assert_eq!(trivial.conjugacy_classes(), ConjugacyClasses::Classes(vec![vec![GroupElement::Index(0)]]));
        let z = GroupModel::FgAbelian(FgAbelianGroup::new(1, vec![]).unwrap());
        assert_eq!(z.conjugacy_classes(), ConjugacyClasses::OneClassPerElement);
    }

    #[test]
    fn commutation() {
        let (m, g) = s3_model();
        let a = GroupElement::Index(idx(&g, "(1 2)"));
        let b = GroupElement::Index(idx(&g, "(1 3)"));
        assert!(!m.commutes(&a, &b).unwrap());
        assert!(m.commutes(&a, &m.identity()).unwrap());
        let z = GroupModel::FgAbelian(FgAbelianGroup::new(1, vec![2]).unwrap());
        assert!(z.commutes(&GroupElement::Vector(vec![5, 1]), &GroupElement::Vector(vec![-1, 0])).unwrap());
    }

    #[test]
    fn element_mismatch_is_rejected() {
        let (m, _) = s3_model();
        assert!(m.product(&GroupElement::Index(7), &GroupElement::Index(0)).is_err());
        assert!(m.product(&GroupElement::Vector(vec![1]), &GroupElement::Index(0)).is_err());
        let z = GroupModel::FgAbelian(FgAbelianGroup::new(0, vec![4]).unwrap());
        assert!(z.check(&GroupElement::Vector(vec![4])).is_err());
    }

    #[test]
    fn mutated_tables_are_rejected() {
        let g = dihedral(4);
        let rows = g.rows();
        assert!(table_violations(&rows).is_empty());
        // swap two entries inside a row: still a Latin square row, but breaks columns
        let mut bad = rows.clone();
        bad[2].swap(3, 5);
        assert!(!table_violations(&bad).is_empty());
        // a Latin square with identity that is not associative (order 5 loop)
        let loop5: Vec<Vec<usize>> = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let v = table_violations(&loop5);
        assert!(matches!(v.as_slice(), [TableViolation::NonAssociative { .. }]), "{v:?}");
        assert!(matches!(
            FiniteTableGroup::from_table(&loop5, 100),
            Err(GroupError::InvalidTable(_))
        ));
        assert!(matches!(FiniteTableGroup::from_table(&rows, 4), Err(GroupError::TooLarge { .. })));
    }

    #[test]
    fn catalog_groups_are_valid() {
        for (g, n) in [(s3(), 6), (dihedral(4), 8), (q8(), 8), (a4(), 12), (dicyclic(3), 12), (sl2_3(), 24)] {
            assert_eq!(g.order(), n);
            assert!(table_violations(&g.rows()).is_empty());
        }
        assert!(!q8().is_abelian());
        assert!(abelian_table(&[2, 4]).is_abelian());
    }

    #[test]
    fn abelianizations() {
        let t = |v: &[u64]| CanonicalForm { rank: 0, torsion: v.iter().map(|&x| BigInt::from(x)).collect() };
        assert_eq!(s3().abelianization(), t(&[2]));
        assert_eq!(q8().abelianization(), t(&[2, 2]));
        assert_eq!(dihedral(4).abelianization(), t(&[2, 2]));
        assert_eq!(a4().abelianization(), t(&[3]));
        assert_eq!(sl2_3().abelianization(), t(&[3]));
        assert_eq!(abelian_table(&[2, 4, 6]).abelianization(), t(&[2, 2, 12]));
        assert_eq!(FiniteTableGroup::cyclic(1).abelianization(), CanonicalForm::trivial());
    }

    #[test]
    fn self_centralizing_in_finite_and_abelian_models() {
        let (m, g) = s3_model();
        assert!(m.is_self_centralizing(&GroupElement::Index(idx(&g, "(1 2 3)"))).unwrap());
        assert!(m.is_self_centralizing(&GroupElement::Index(idx(&g, "(1 2)"))).unwrap());
        assert!(!m.is_self_centralizing(&m.identity()).unwrap());
        let z = GroupModel::FgAbelian(FgAbelianGroup::new(1, vec![]).unwrap());
        assert!(z.is_self_centralizing(&GroupElement::Vector(vec![1])).unwrap());
        assert!(!z.is_self_centralizing(&GroupElement::Vector(vec![2])).unwrap());
        let z6 = GroupModel::FgAbelian(FgAbelianGroup::new(0, vec![2, 3]).unwrap());
        assert!(z6.is_self_centralizing(&GroupElement::Vector(vec![1, 1])).unwrap());
    }

    #[test]
    fn class_sizes_divide_order_and_centralizers_are_subgroups() {
        for g in [s3(), dihedral(5), q8(), a4(), sl2_3(), dicyclic(2)] {
            let n = g.order();
            let classes = g.conjugacy_class_indices();
            let mut all: Vec<usize> = classes.iter().flatten().copied().collect();
            all.sort();
            assert_eq!(all, (0..n).collect::<Vec<_>>());
            for c in &classes {
                assert_eq!(n % c.len(), 0);
            }
            for c in 0..n {
                let z = g.centralizer_elements(c);
                assert!(z.contains(&c));
                for &a in &z {
                    assert!(z.contains(&g.inv(a)));
                    for &b in &z {
                        assert!(z.contains(&g.mul(a, b)));
                    }
                }
            }
        }
    }

    #[test]
    fn named_abelian_elements_read_additively() {
        let a = FgAbelianGroup::new(1, vec![4]).unwrap().with_names(vec!["t".into(), "x".into()]).unwrap();
        let m = GroupModel::FgAbelian(a);
        assert_eq!(m.describe(&GroupElement::Vector(vec![0, 0])), "0");
        assert_eq!(m.describe(&GroupElement::Vector(vec![1, 3])), "t + 3x");
        assert_eq!(m.describe(&GroupElement::Vector(vec![-2, 1])), "-2t + x");
        assert_eq!(m.describe(&GroupElement::Vector(vec![0, -1])), "-x");
    }
}
