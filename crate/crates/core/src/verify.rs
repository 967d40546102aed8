//! Verification drivers: injectivity scans, the bundled collision pair and
//! the seeded property suite.

use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::classes::{
    class_c_membership, enumerate_all_posets, enumerate_njoinfree_bounded, enumerate_rooted_trees,
    is_njoinfree_scan, posets_by_extension_levels, ALL_POSETS_BOUND,
};
use crate::composition::Composition;
use crate::error::Error;
use crate::partitions::{enumerate_stable_partitions, gamma, gamma_strict, gamma_weak, jump_sequence, StableOrderedPartition};
use crate::poset::{bit, mask_elements, LabelKind, LabeledPoset, Mask, Poset};
use crate::qsym::{oshuffle_compositions_direct, oshuffle_compositions_rec, QSymElement};

/// Default size bound for rooted-tree injectivity scans.
pub const TREES_DEFAULT_NMAX: usize = 9;
/// Default size bound for (N,⋈)-free injectivity scans.
pub const NJOINFREE_DEFAULT_NMAX: usize = 7;
/// Size bound for scans with the bounds lifted.
pub const TREES_UNBOUNDED_NMAX: usize = 16;
pub const NJOINFREE_UNBOUNDED_NMAX: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub description: String,
    /// Canonical descriptions of the offending objects.
    pub objects: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub instances: usize,
    /// Informational lines such as per-size counts.
    pub details: Vec<String>,
    pub violations: Vec<Violation>,
    #[serde(serialize_with = "ser_millis", rename = "elapsed_ms")]
    pub elapsed: Duration,
    pub pass: bool,
}

fn ser_millis<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u128(d.as_millis())
}

impl VerificationReport {
    fn new(suite: impl Into<String>) -> Self {
        VerificationReport {
            suite: suite.into(),
            instances: 0,
            details: Vec::new(),
            violations: Vec::new(),
            elapsed: Duration::ZERO,
            pass: true,
        }
    }

    fn violation(&mut self, description: impl Into<String>, objects: Vec<String>) {
        self.violations.push(Violation { description: description.into(), objects });
    }

    fn finish(mut self, start: Instant) -> Self {
        self.elapsed = start.elapsed();
        self.pass = self.violations.is_empty();
        self
    }

    /// Deterministic text rendering; elapsed time is left out.
    pub fn body(&self) -> String {
        let mut s = format!(
            "{}: {} instances, {} violations, {}\n",
            self.suite,
            self.instances,
            self.violations.len(),
            if self.pass { "PASS" } else { "FAIL" }
        );
        for d in &self.details {
            s.push_str(&format!("  {d}\n"));
        }
        for v in &self.violations {
            s.push_str(&format!("  violation: {}\n", v.description));
            for o in &v.objects {
                s.push_str(&format!("    {o}\n"));
            }
        }
        s
    }
}

/// Classes with an injectivity scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanClass {
    RootedTrees,
    NjoinFree,
}

impl ScanClass {
    pub fn default_nmax(self) -> usize {
        match self {
            ScanClass::RootedTrees => TREES_DEFAULT_NMAX,
            ScanClass::NjoinFree => NJOINFREE_DEFAULT_NMAX,
        }
    }

    fn bound(self, unbounded: bool) -> usize {
        match (self, unbounded) {
            (c, false) => c.default_nmax(),
            (ScanClass::RootedTrees, true) => TREES_UNBOUNDED_NMAX,
            (ScanClass::NjoinFree, true) => NJOINFREE_UNBOUNDED_NMAX,
        }
    }
}

fn poset_description(p: &Poset) -> String {
    match p.canonical_form() {
        Ok(cf) => format!("{} covers={:?}", cf, p.covers()),
        Err(_) => format!("covers={:?}", p.covers()),
    }
}

/// Computes `Γ^<` for every isomorphism class with `1 ≤ n ≤ nmax` and reports
/// every group of classes sharing a value.
pub fn verify_injectivity(class: ScanClass, nmax: usize, unbounded: bool) -> Result<VerificationReport, Error> {
    let bound = class.bound(unbounded);
    if nmax > bound {
        return Err(Error::TooLarge { size: nmax, bound });
    }
    let start = Instant::now();
    let suite = match class {
        ScanClass::RootedTrees => "injectivity/rooted-trees",
        ScanClass::NjoinFree => "injectivity/njoinfree",
    };
    let mut report = VerificationReport::new(suite);
    for n in 1..=nmax {
        let items: Vec<(String, Poset)> = match class {
            ScanClass::RootedTrees => enumerate_rooted_trees(n)
                .into_iter()
                .map(|t| Ok((t.encoding().to_string(), t.to_poset()?)))
                .collect::<Result<_, Error>>()?,
            ScanClass::NjoinFree => enumerate_njoinfree_bounded(n, bound)?
                .into_iter()
                .map(|p| (poset_description(&p), p))
                .collect(),
        };
        let gammas: Vec<QSymElement> = items.par_iter().map(|(_, p)| gamma_strict(p)).collect();
        let mut groups: HashMap<&QSymElement, Vec<usize>> = HashMap::new();
        for (i, g) in gammas.iter().enumerate() {
            groups.entry(g).or_default().push(i);
        }
        let mut collisions: Vec<&Vec<usize>> = groups.values().filter(|g| g.len() > 1).collect();
        collisions.sort();
        for group in collisions {
            report.violation(
                format!("n={n}: {} classes share Γ^< = {}", group.len(), gammas[group[0]]),
                group.iter().map(|&i| items[i].0.clone()).collect(),
            );
        }
        report.instances += items.len();
        let noun = match class {
            ScanClass::RootedTrees => "trees",
            ScanClass::NjoinFree => "posets",
        };
        report.details.push(format!("n={n}: {} {noun}, {} distinct Γ^<", items.len(), groups.len()));
    }
    Ok(report.finish(start))
}

/// The two 7-element posets sharing `Γ^<`, as cover lists on `1..=7`
/// (`(a, b)` meaning `a < b`).
pub const COUNTEREXAMPLE_LEFT: [(usize, usize); 8] =
    [(2, 1), (3, 2), (3, 4), (5, 4), (6, 5), (6, 7), (6, 1), (7, 4)];
pub const COUNTEREXAMPLE_RIGHT: [(usize, usize); 8] =
    [(2, 1), (3, 2), (3, 4), (5, 4), (6, 5), (6, 7), (6, 1), (7, 1)];

/// Their common strict order quasisymmetric function (31 terms).
pub const COUNTEREXAMPLE_SERIES: &str = "\
M_232 + 2M_2311 + 3M_2221 + 3M_2212 + 9M_22111 + M_2131 + 3M_2122 + 8M_21211 \
+ 7M_21121 + 6M_21112 + 20M_211111 + M_1321 + M_1312 + 3M_13111 + M_1231 + 3M_1222 \
+ 8M_12211 + 8M_12121 + 7M_12112 + 23M_121111 + 2M_1132 + 4M_11311 + 8M_11221 + 8M_11212 \
+ 24M_112111 + 3M_11131 + 9M_11122 + 24M_111211 + 23M_111121 + 20M_111112 + 66M_1111111";

fn fixture_poset(covers: &[(usize, usize)]) -> Poset {
    let zero_based: Vec<(usize, usize)> = covers.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
    Poset::from_covers(7, &zero_based).expect("fixture is a partial order")
}

pub fn counterexample_posets() -> (Poset, Poset) {
    (fixture_poset(&COUNTEREXAMPLE_LEFT), fixture_poset(&COUNTEREXAMPLE_RIGHT))
}

pub fn counterexample_series() -> QSymElement {
    COUNTEREXAMPLE_SERIES.parse().expect("embedded series parses")
}

pub fn verify_counterexample() -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport::new("counterexample");
    let (left, right) = counterexample_posets();
    let expected = counterexample_series();
    report.instances = 2;
    let objects = || vec![poset_description(&left), poset_description(&right)];
    if left.is_isomorphic(&right).unwrap_or(true) {
        report.violation("fixture posets are isomorphic", objects());
    }
    let (gl, gr) = (gamma_strict(&left), gamma_strict(&right));
    if gl != gr {
        report.violation(format!("Γ^< differ: {gl} vs {gr}"), objects());
    }
    for (side, g) in [("left", &gl), ("right", &gr)] {
        if g != &expected {
            let diff = g - &expected;
            report.violation(format!("{side} Γ^< differs from the published series by {diff}"), objects());
        }
    }
    report.details.push(format!("expected series has {} terms", expected.num_terms()));
    report.details.push(format!("Γ^<(left) has {} terms", gl.num_terms()));
    for alpha in ["1111111", "232", "121111", "22111", "112111"] {
        let a: Composition = alpha.parse().expect("valid");
        report.details.push(format!(
            "coefficient of M_{alpha}: left {} right {}",
            gl.coefficient(&a),
            gr.coefficient(&a)
        ));
    }
    report.finish(start)
}

/// Number of linear extensions, by dynamic programming over down-sets.
pub fn count_linear_extensions(p: &Poset) -> BigInt {
    let mut memo: HashMap<Mask, BigInt> = HashMap::new();
    fn go(p: &Poset, placed: Mask, memo: &mut HashMap<Mask, BigInt>) -> BigInt {
        if placed == p.elements() {
            return BigInt::one();
        }
        if let Some(c) = memo.get(&placed) {
            return c.clone();
        }
        let mut total = BigInt::default();
        for v in mask_elements(p.elements() & !placed) {
            if p.below(v) & !placed == 0 {
                total += go(p, placed | bit(v), memo);
            }
        }
        memo.insert(placed, total.clone());
        total
    }
    go(p, 0, &mut memo)
}

/// Every ordered set partition of `0..n`, unfiltered.
pub fn ordered_set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in 1..=n {
        for assign in (0..n).map(|_| 0..k).multi_cartesian_product() {
            if (0..k).all(|b| assign.contains(&b)) {
                out.push((0..k).map(|b| (0..n).filter(|&v| assign[v] == b).collect()).collect());
            }
        }
    }
    out
}

/// Stable ordered partitions by filtering every ordered set partition.
pub fn stable_partitions_brute_force(lp: &LabeledPoset) -> Vec<StableOrderedPartition> {
    let mut out: Vec<StableOrderedPartition> = ordered_set_partitions(lp.len())
        .into_iter()
        .map(StableOrderedPartition::from_blocks)
        .filter(|s| s.is_stable_for(lp))
        .collect();
    out.sort();
    out
}

/// Greedy shrinking: repeatedly moves to the first smaller candidate that still fails.
fn minimize<T: Clone>(mut x: T, shrink: impl Fn(&T) -> Vec<T>, fails: impl Fn(&T) -> bool) -> T {
    'outer: loop {
        for cand in shrink(&x) {
            if fails(&cand) {
                x = cand;
                continue 'outer;
            }
        }
        return x;
    }
}

fn shrink_composition(c: &Composition) -> Vec<Composition> {
    let parts = c.parts();
    let mut out = Vec::new();
    for i in 0..parts.len() {
        let mut v = parts.to_vec();
        v.remove(i);
        out.push(Composition::new(v).expect("positive"));
    }
    for i in 0..parts.len() {
        if parts[i] > 1 {
            let mut v = parts.to_vec();
            v[i] -= 1;
            out.push(Composition::new(v).expect("positive"));
        }
    }
    out
}

fn shrink_pair(pair: &(Composition, Composition)) -> Vec<(Composition, Composition)> {
    let (a, b) = pair;
    shrink_composition(a)
        .into_iter()
        .map(|x| (x, b.clone()))
        .chain(shrink_composition(b).into_iter().map(|y| (a.clone(), y)))
        .collect()
}

fn shrink_elements(pair: &(QSymElement, QSymElement)) -> Vec<(QSymElement, QSymElement)> {
    let drop_each = |p: &QSymElement| -> Vec<QSymElement> {
        let terms: Vec<(Composition, BigInt)> = p.terms().map(|(a, c)| (a.clone(), c.clone())).collect();
        (0..terms.len())
            .map(|i| {
                QSymElement::from_terms(terms.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, t)| t.clone()))
            })
            .collect()
    };
    let (p, q) = pair;
    drop_each(p)
        .into_iter()
        .map(|x| (x, q.clone()))
        .chain(drop_each(q).into_iter().map(|y| (p.clone(), y)))
        .collect()
}

fn random_composition(rng: &mut ChaCha8Rng, max_len: usize) -> Composition {
    let len = rng.gen_range(0..=max_len);
    Composition::new((0..len).map(|_| rng.gen_range(1..=4)).collect()).expect("positive")
}

fn random_element(rng: &mut ChaCha8Rng, positive_lead: bool) -> QSymElement {
    loop {
        let terms = rng.gen_range(1..=4);
        let p = QSymElement::from_terms((0..terms).map(|_| {
            let c: i64 = *[-3, -2, -1, 1, 2, 3].choose(rng).expect("non-empty");
            (random_composition(rng, 3), c)
        }));
        if p.is_zero() {
            continue;
        }
        if positive_lead && p.leading_term().map(|(_, c)| c.sign() != num_bigint::Sign::Plus).unwrap_or(true) {
            return -&p;
        }
        return p;
    }
}

fn random_labeling(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut omega: Vec<usize> = (1..=n).collect();
    omega.shuffle(rng);
    omega
}

fn pair_desc(a: &impl std::fmt::Display, b: &impl std::fmt::Display) -> Vec<String> {
    vec![a.to_string(), b.to_string()]
}

/// Shared enumerations for the exhaustive sections.
struct Universe {
    /// `all[n]`: classes on `n ≤ 6` from the labeled enumerator.
    all: Vec<Vec<Poset>>,
    /// `ext[n]`: classes on `n ≤ 7` from the extension enumerator.
    ext: Vec<Vec<Poset>>,
    strict: HashMap<Poset, QSymElement>,
}

impl Universe {
    fn build() -> Result<Self, Error> {
        let all = (0..=ALL_POSETS_BOUND).map(enumerate_all_posets).collect::<Result<Vec<_>, _>>()?;
        let ext = posets_by_extension_levels(7)?;
        let everyone: Vec<&Poset> = all.iter().chain(&ext).flatten().collect();
        let strict = everyone
            .par_iter()
            .map(|p| ((*p).clone(), gamma_strict(p)))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        Ok(Universe { all, ext, strict })
    }

    fn strict(&self, p: &Poset) -> QSymElement {
        self.strict.get(p).cloned().unwrap_or_else(|| gamma_strict(p))
    }

    /// Ordered pairs of non-empty classes with `|P| + |Q| ≤ max_total`.
    fn pairs(&self, max_total: usize) -> Vec<(&Poset, &Poset)> {
        let mut out = Vec::new();
        for a in 1..max_total {
            for b in 1..=(max_total - a) {
                for p in &self.all[a] {
                    for q in &self.all[b] {
                        out.push((p, q));
                    }
                }
            }
        }
        out
    }
}

fn section_oshuffle(rng: &mut ChaCha8Rng, budget: usize) -> VerificationReport {
    let start = Instant::now();
    let mut r = VerificationReport::new("oshuffle-routes-and-polynomial-oracle");
    let fails = |(a, b): &(Composition, Composition)| {
        let direct = oshuffle_compositions_direct(a, b);
        if direct != oshuffle_compositions_rec(a, b) {
            return true;
        }
        let k = (a.len() + b.len()).max(1);
        let deg = a.weight() + b.weight();
        let lhs = direct.expand_truncated(k, deg);
        let rhs = QSymElement::monomial(a.clone())
            .expand_truncated(k, deg)
            .mul(&QSymElement::monomial(b.clone()).expand_truncated(k, deg));
        lhs != rhs
    };
    for _ in 0..budget {
        let a = random_composition(rng, 4);
        let max_b = 7 - a.len();
        let b = random_composition(rng, max_b.min(4));
        r.instances += 1;
        if fails(&(a.clone(), b.clone())) {
            let (a, b) = minimize((a, b), shrink_pair, fails);
            r.violation("⊛ routes or polynomial oracle disagree", pair_desc(&a, &b));
        }
    }
    r.finish(start)
}

fn section_leading_terms(rng: &mut ChaCha8Rng, budget: usize) -> VerificationReport {
    let start = Instant::now();
    let mut r = VerificationReport::new("leading-term-of-products");
    let fails_lt1 = |(a, b): &(Composition, Composition)| {
        let p = oshuffle_compositions_direct(a, b);
        p.leading_term().map(|(c, x)| c != &a.dotplus(b) || !x.is_one()).unwrap_or(true)
    };
    let fails_lt2 = |(p, q): &(QSymElement, QSymElement)| {
        let (Ok((a, c)), Ok((b, d))) = (p.leading_term(), q.leading_term()) else {
            return false;
        };
        if c.sign() != num_bigint::Sign::Plus || d.sign() != num_bigint::Sign::Plus {
            return false;
        }
        let prod = p.mul_oshuffle(q);
        match prod.leading_term() {
            Ok((lead, coeff)) => lead != &a.dotplus(b) || coeff != &(c * d),
            Err(_) => true,
        }
    };
    for _ in 0..budget {
        let (a, b) = (random_composition(rng, 4), random_composition(rng, 3));
        r.instances += 1;
        if fails_lt1(&(a.clone(), b.clone())) {
            let (a, b) = minimize((a, b), shrink_pair, fails_lt1);
            r.violation("leading composition of α⊛β is not α∔β", pair_desc(&a, &b));
        }
        let (p, q) = (random_element(rng, true), random_element(rng, true));
        if fails_lt2(&(p.clone(), q.clone())) {
            let (p, q) = minimize((p, q), shrink_elements, fails_lt2);
            r.violation("leading term of p⊛q is not the product of leading terms", pair_desc(&p, &q));
        }
    }
    r.finish(start)
}

fn section_rho(rng: &mut ChaCha8Rng, budget: usize) -> VerificationReport {
    let start = Instant::now();
    let mut r = VerificationReport::new("rho-compatibility");
    let fails = |(p, q): &(QSymElement, QSymElement)| {
        p.mul_oshuffle(q).rho() != p.rho().mul_oshuffle(&q.rho()) || p.rho().rho() != *p
    };
    for _ in 0..budget {
        let (p, q) = (random_element(rng, false), random_element(rng, false));
        r.instances += 1;
        if fails(&(p.clone(), q.clone())) {
            let (p, q) = minimize((p, q), shrink_elements, fails);
            r.violation("ρ(p⊛q) ≠ ρ(p)⊛ρ(q)", pair_desc(&p, &q));
        }
    }
    r.finish(start)
}

fn section_ring_axioms(rng: &mut ChaCha8Rng, budget: usize) -> VerificationReport {
    let start = Instant::now();
    let mut r = VerificationReport::new("ring-axioms");
    let one = QSymElement::one();
    let m1 = QSymElement::monomial(Composition::single(1));
    for _ in 0..budget {
        let (p, q, s) = (random_element(rng, false), random_element(rng, false), random_element(rng, false));
        r.instances += 1;
        let checks = [
            ("⊛ commutative", p.mul_oshuffle(&q) == q.mul_oshuffle(&p)),
            ("⊛ associative", p.mul_oshuffle(&q).mul_oshuffle(&s) == p.mul_oshuffle(&q.mul_oshuffle(&s))),
            ("⊛ distributive", p.mul_oshuffle(&(&q + &s)) == &p.mul_oshuffle(&q) + &p.mul_oshuffle(&s)),
            ("∗ associative", p.mul_concat(&q).mul_concat(&s) == p.mul_concat(&q.mul_concat(&s))),
            ("M_∅ unit", p.mul_oshuffle(&one) == p && p.mul_concat(&one) == p && one.mul_concat(&p) == p),
            ("M_(1) cancellation", (m1.mul_concat(&p) == m1.mul_concat(&q)) == (p == q)),
        ];
        for (name, ok) in checks {
            if !ok {
                r.violation(name, vec![p.to_string(), q.to_string(), s.to_string()]);
            }
        }
    }
    r.finish(start)
}

type Blocks = Vec<Vec<usize>>;

fn section_products(u: &Universe) -> Vec<VerificationReport> {
    let start = Instant::now();
    let pairs = u.pairs(7);
    let results: Vec<(bool, bool)> = pairs
        .par_iter()
        .map(|(p, q)| {
            let (gp, gq) = (u.strict(p), u.strict(q));
            let union = gamma_strict(&p.disjoint_union(q).expect("small"));
            let sum = gamma_strict(&p.ordinal_sum(q).expect("small"));
            (union == gp.mul_oshuffle(&gq), sum == gp.mul_concat(&gq))
        })
        .collect();
    let mut union = VerificationReport::new("disjoint-union-is-oshuffle");
    let mut sum = VerificationReport::new("ordinal-sum-is-concat");
    for ((p, q), (ok_u, ok_s)) in pairs.iter().zip(results) {
        union.instances += 1;
        sum.instances += 1;
        if !ok_u {
            union.violation("Γ^<(P⊔Q) ≠ Γ^<(P)⊛Γ^<(Q)", vec![poset_description(p), poset_description(q)]);
        }
        if !ok_s {
            sum.violation("Γ^<(P⊕Q) ≠ Γ^<(P)∗Γ^<(Q)", vec![poset_description(p), poset_description(q)]);
        }
    }
    union.details.push("all ordered pairs of classes with |P|+|Q| ≤ 7".into());
    sum.details.push("all ordered pairs of classes with |P|+|Q| ≤ 7".into());

    // block-level bijection St^<(P) × St^<(Q) → St^<(P⊕Q)
    let small = u.pairs(6);
    let bij_fail: Vec<bool> = small
        .par_iter()
        .map(|(p, q)| {
            let sp = enumerate_stable_partitions(&LabeledPoset::with_kind((*p).clone(), LabelKind::Strict));
            let sq = enumerate_stable_partitions(&LabeledPoset::with_kind((*q).clone(), LabelKind::Strict));
            let pq = LabeledPoset::with_kind(p.ordinal_sum(q).expect("small"), LabelKind::Strict);
            let all = enumerate_stable_partitions(&pq);
            if all.len() != sp.len() * sq.len() {
                return true;
            }
            let np = p.len();
            let mut images: Vec<(Blocks, Blocks)> = Vec::new();
            for s in &all {
                let k = s.blocks().iter().take_while(|b| b.iter().all(|&v| v < np)).count();
                let (lo, hi) = s.blocks().split_at(k);
                if hi.iter().flatten().any(|&v| v < np) {
                    return true;
                }
                let hi: Blocks = hi.iter().map(|b| b.iter().map(|v| v - np).collect()).collect();
                images.push((lo.to_vec(), hi));
            }
            let mut want: Vec<(Blocks, Blocks)> = sp
                .iter()
                .flat_map(|a| sq.iter().map(move |b| (a.blocks().to_vec(), b.blocks().to_vec())))
                .collect();
            images.sort();
            want.sort();
            images != want
        })
        .collect();
    for ((p, q), bad) in small.iter().zip(bij_fail) {
        sum.instances += 1;
        if bad {
            sum.violation("splitting St^<(P⊕Q) is not a bijection onto St^<(P)×St^<(Q)", vec![poset_description(p), poset_description(q)]);
        }
    }
    sum.details.push("block-level bijection checked for |P|+|Q| ≤ 6".into());
    vec![union.finish(start), sum.finish(start)]
}

fn section_jump(u: &Universe, rng: &mut ChaCha8Rng, budget: usize) -> VerificationReport {
    let start = Instant::now();
    let mut r = VerificationReport::new("leading-term-is-jump");
    let mut labeled: Vec<LabeledPoset> = Vec::new();
    for p in u.ext.iter().flatten().filter(|p| !p.is_empty()) {
        labeled.push(LabeledPoset::with_kind(p.clone(), LabelKind::Strict));
        labeled.push(LabeledPoset::with_kind(p.clone(), LabelKind::Natural));
    }
    let pool: Vec<&Poset> = u.ext.iter().flatten().filter(|p| !p.is_empty()).collect();
    for _ in 0..budget {
        let p = pool.choose(rng).expect("non-empty");
        let omega = random_labeling(rng, p.len());
        labeled.push(LabeledPoset::new((*p).clone(), omega).expect("bijection"));
    }
    let bad: Vec<bool> = labeled
        .par_iter()
        .map(|lp| {
            let g = gamma(lp);
            match g.leading_term() {
                Ok((lead, c)) => lead != &jump_sequence(lp) || !c.is_one() || g.is_primitive() != Ok(true),
                Err(_) => true,
            }
        })
        .collect();
    for (lp, bad) in labeled.iter().zip(bad) {
        r.instances += 1;
        if bad {
            r.violation("leading term of Γ(P,ω) is not M_jump with coefficient 1", vec![format!("{:?} ω={:?}", lp.poset(), lp.omega())]);
        }
    }
    r.details.push("strict and natural labelings of every class with |P| ≤ 7, plus random labelings".into());
    r.finish(start)
}

fn section_lemma_irred(u: &Universe, rng: &mut ChaCha8Rng, budget: usize) -> VerificationReport {
    let start = Instant::now();
    let mut r = VerificationReport::new("lemma-irred-certificate");
    let mut cases: Vec<Poset> = u
        .ext
        .iter()
        .flatten()
        .filter(|p| !p.is_empty() && (p.minimals().len() == 1 || p.maximals().len() == 1))
        .cloned()
        .collect();
    let exhaustive = cases.len();
    // [1]⊕P and P⊕[1] for random P on 7 elements
    let sevens = &u.ext[7];
    for _ in 0..budget {
        let p = sevens.choose(rng).expect("non-empty");
        let q = if rng.gen_bool(0.5) { Poset::point().ordinal_sum(p) } else { p.ordinal_sum(&Poset::point()) };
        cases.push(q.expect("small"));
    }
    let ok: Vec<bool> = cases
        .par_iter()
        .map(|p| u.strict(p).irreducible_by_lemma().map(|c| c.is_certified()).unwrap_or(false))
        .collect();
    for (p, ok) in cases.iter().zip(ok) {
        r.instances += 1;
        if !ok {
            r.violation("no M_(1) factor certificate despite a unique minimum or maximum", vec![poset_description(p)]);
        }
    }
    r.details.push(format!("{exhaustive} classes with |P| ≤ 7 and a unique minimal or maximal element"));
    r.details.push("random 8-element posets with an adjoined minimum or maximum".into());
    r.finish(start)
}

/// Groups indices by key, returning the groups as sorted index lists.
fn partition_by<K: std::hash::Hash + Eq>(keys: &[K]) -> Vec<Vec<usize>> {
    let mut map: HashMap<&K, Vec<usize>> = HashMap::new();
    for (i, k) in keys.iter().enumerate() {
        map.entry(k).or_default().push(i);
    }
    let mut groups: Vec<Vec<usize>> = map.into_values().collect();
    groups.sort();
    groups
}

fn section_strict_weak(u: &Universe, rng: &mut ChaCha8Rng, budget: usize) -> Vec<VerificationReport> {
    let start = Instant::now();
    let mut r = VerificationReport::new("strict-weak-equivalence");
    let mut mm = VerificationReport::new("equal-gamma-same-min-max-counts");
    let posets: Vec<&Poset> = u.ext.iter().flatten().collect();
    let strict: Vec<QSymElement> = posets.iter().map(|p| u.strict(p)).collect();
    let weak: Vec<QSymElement> = posets.par_iter().map(|p| gamma_weak(p)).collect();
    r.instances += posets.len() * (posets.len() - 1) / 2;
    let (gs, gw) = (partition_by(&strict), partition_by(&weak));
    if gs != gw {
        let diff = gs.iter().find(|g| !gw.contains(g)).or_else(|| gw.iter().find(|g| !gs.contains(g)));
        let objects = diff.map(|g| g.iter().map(|&i| poset_description(posets[i])).collect()).unwrap_or_default();
        r.violation("classes with equal Γ^< differ from classes with equal Γ^≤", objects);
    }
    let collisions: Vec<&Vec<usize>> = gs.iter().filter(|g| g.len() > 1).collect();
    r.details.push(format!(
        "all {} classes with |P| ≤ 7: {} groups sharing Γ^<",
        posets.len(),
        collisions.len()
    ));
    for g in &collisions {
        mm.instances += 1;
        let sig = |p: &Poset| (p.minimals().len(), p.maximals().len());
        if !g.iter().map(|&i| sig(posets[i])).all_equal() {
            mm.violation("posets with equal Γ^< have different numbers of minimal or maximal elements", g.iter().map(|&i| poset_description(posets[i])).collect());
        }
    }

    // random labeled pairs, biased toward the same underlying poset
    let pool: Vec<&Poset> = posets.iter().copied().filter(|p| (1..=5).contains(&p.len())).collect();
    for _ in 0..budget {
        let p1 = *pool.choose(rng).expect("non-empty");
        let p2 = if rng.gen_bool(0.5) {
            p1
        } else {
            *pool.iter().filter(|q| q.len() == p1.len()).collect::<Vec<_>>().choose(rng).expect("non-empty")
        };
        let a = LabeledPoset::new(p1.clone(), random_labeling(rng, p1.len())).expect("bijection");
        let b = LabeledPoset::new(p2.clone(), random_labeling(rng, p2.len())).expect("bijection");
        r.instances += 1;
        let same = gamma(&a) == gamma(&b);
        let same_bar = gamma(&a.complement()) == gamma(&b.complement());
        if same != same_bar {
            r.violation(
                "Γ(P,ω)=Γ(Q,τ) does not match Γ(P,ω̄)=Γ(Q,τ̄)",
                vec![format!("{:?} ω={:?}", a.poset(), a.omega()), format!("{:?} ω={:?}", b.poset(), b.omega())],
            );
        }
    }
    vec![r.finish(start), mm.finish(start)]
}

fn section_linear_extensions(u: &Universe) -> VerificationReport {
    let start = Instant::now();
    let mut r = VerificationReport::new("singleton-coefficient-counts-linear-extensions");
    for p in u.ext.iter().flatten() {
        r.instances += 1;
        let ones = Composition::new(vec![1; p.len()]).expect("positive");
        if u.strict(p).coefficient(&ones) != count_linear_extensions(p) {
            r.violation("coefficient of M_(1,…,1) is not the number of linear extensions", vec![poset_description(p)]);
        }
    }
    r.finish(start)
}

fn section_brute_force(u: &Universe, rng: &mut ChaCha8Rng, budget: usize) -> VerificationReport {
    let start = Instant::now();
    let mut r = VerificationReport::new("stable-partitions-vs-brute-force");
    let mut cases: Vec<LabeledPoset> = Vec::new();
    // every labeling of every class up to 4 elements
    for p in u.all.iter().take(5).flatten() {
        for omega in (1..=p.len()).permutations(p.len()) {
            cases.push(LabeledPoset::new(p.clone(), omega).expect("bijection"));
        }
    }
    let five: &Vec<Poset> = &u.all[5];
    for _ in 0..budget {
        let p = five.choose(rng).expect("non-empty");
        cases.push(LabeledPoset::new(p.clone(), random_labeling(rng, 5)).expect("bijection"));
    }
    let bad: Vec<bool> = cases
        .par_iter()
        .map(|lp| {
            let mut got = enumerate_stable_partitions(lp);
            got.sort();
            got != stable_partitions_brute_force(lp) || gamma(lp) != {
                let mut g = QSymElement::zero();
                for s in &got {
                    g.add_term(s.type_composition(), BigInt::one());
                }
                g
            }
        })
        .collect();
    for (lp, bad) in cases.iter().zip(bad) {
        r.instances += 1;
        if bad {
            r.violation("recursive enumeration differs from the brute-force filter", vec![format!("{:?} ω={:?}", lp.poset(), lp.omega())]);
        }
    }
    r.details.push("all labelings for |P| ≤ 4, random labelings for |P| = 5".into());
    r.finish(start)
}

fn section_n_tie(u: &Universe) -> VerificationReport {
    let start = Instant::now();
    let mut r = VerificationReport::new("n-tie-recognizers-agree");
    for (n, level) in u.all.iter().enumerate().skip(1) {
        let mut free_forms = Vec::new();
        for p in level {
            r.instances += 1;
            let scan = is_njoinfree_scan(p);
            let term = class_c_membership(p);
            if scan != term.is_some() {
                r.violation(format!("scan says {scan}, decomposition says {}", term.is_some()), vec![poset_description(p)]);
            }
            if let Some(t) = &term {
                let rebuilt = t.to_poset().and_then(|q| q.is_isomorphic(p));
                if rebuilt != Ok(true) {
                    r.violation(format!("replaying {t} does not rebuild the poset"), vec![poset_description(p)]);
                }
            }
            if scan && p.is_connected() && p.minimals().len() != 1 && p.maximals().len() != 1 {
                r.violation("connected (N,⋈)-free poset without a unique minimum or maximum", vec![poset_description(p)]);
            }
            if scan {
                free_forms.push(p.canonical_form().expect("small"));
            }
        }
        let mut generated: Vec<_> = enumerate_njoinfree_bounded(n, n)
            .map(|v| v.iter().map(|p| p.canonical_form().expect("small")).collect())
            .unwrap_or_default();
        generated.sort();
        free_forms.sort();
        if generated != free_forms {
            r.violation(format!("n={n}: generator yields {} classes, filter yields {}", generated.len(), free_forms.len()), Vec::new());
        }
        r.details.push(format!("n={n}: {} posets, {} (N,⋈)-free", level.len(), free_forms.len()));
    }
    for n in 1..=8 {
        for t in enumerate_rooted_trees(n) {
            r.instances += 1;
            let free = t.to_poset().map(|p| is_njoinfree_scan(&p)).unwrap_or(false);
            if !free {
                r.violation("rooted tree contains N or ⋈", vec![t.encoding().to_string()]);
            }
        }
    }
    r.details.push("rooted trees with n ≤ 8 are (N,⋈)-free".into());
    r.finish(start)
}

/// Runs every property section with a fixed seed; deterministic given `(seed, budget)`.
pub fn property_suite(seed: u64, budget: usize) -> Result<Vec<VerificationReport>, Error> {
    let rng = |section: u64| ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(section));
    let u = Universe::build()?;
    let mut out = vec![
        section_oshuffle(&mut rng(1), budget),
        section_leading_terms(&mut rng(2), budget),
        section_rho(&mut rng(3), budget),
        section_ring_axioms(&mut rng(4), budget),
    ];
    out.extend(section_products(&u));
    out.push(section_jump(&u, &mut rng(5), budget));
    out.push(section_lemma_irred(&u, &mut rng(8), budget));
    out.extend(section_strict_weak(&u, &mut rng(6), budget));
    out.push(section_linear_extensions(&u));
    out.push(section_brute_force(&u, &mut rng(7), budget));
    out.push(section_n_tie(&u));
    Ok(out)
}

/// Per-size counts of a class, keyed by size.
pub fn count_table(counts: &[usize]) -> BTreeMap<usize, usize> {
    counts.iter().enumerate().map(|(i, &c)| (i + 1, c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp;

    #[test]
    fn counterexample_fixture() {
        let series = counterexample_series();
        assert_eq!(series.num_terms(), 31);
        assert_eq!(series.coefficient(&comp![1, 1, 1, 1, 1, 1, 1]), BigInt::from(66));
        let report = verify_counterexample();
        assert!(report.pass, "{}", report.body());
    }

    #[test]
    fn linear_extension_counter() {
        assert_eq!(count_linear_extensions(&Poset::antichain(4)), BigInt::from(24));
        assert_eq!(count_linear_extensions(&Poset::chain(4)), BigInt::from(1));
        let vee = Poset::from_covers(3, &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(count_linear_extensions(&vee), BigInt::from(2));
    }

    #[test]
    fn minimize_shrinks() {
        // fails whenever the first composition has weight ≥ 3
        let fails = |(a, _): &(Composition, Composition)| a.weight() >= 3;
        let (a, b) = minimize((comp![2, 4, 1], comp![3, 3]), shrink_pair, fails);
        assert_eq!(a.weight(), 3);
        assert_eq!(b, comp![]);
    }

    #[test]
    fn small_injectivity_scans() {
        let r = verify_injectivity(ScanClass::RootedTrees, 6, false).unwrap();
        assert!(r.pass);
        assert_eq!(r.instances, 1 + 1 + 2 + 4 + 9 + 20);
        let r = verify_injectivity(ScanClass::NjoinFree, 5, false).unwrap();
        assert!(r.pass);
        assert_eq!(r.instances, 1 + 2 + 5 + 14 + 40);
        assert!(verify_injectivity(ScanClass::NjoinFree, 8, false).is_err());
        assert!(verify_injectivity(ScanClass::RootedTrees, 10, false).is_err());
    }
}
