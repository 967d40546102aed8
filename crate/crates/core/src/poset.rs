//! Finite posets on `{0, …, n−1}` and labeled posets.
//!
//! The strict order is stored as bitset rows: `up[u]` holds every `v` with
//! `u < v` and `down[v]` every `u` with `u < v`. Posets have at most 64
//! elements.

use std::fmt;

use crate::error::Error;

pub const MAX_ELEMENTS: usize = 64;

/// Default size bound for [`Poset::canonical_form`].
pub const CANONICAL_FORM_BOUND: usize = 12;

pub type Mask = u64;

#[inline]
pub fn bit(i: usize) -> Mask {
    1 << i
}

pub fn mask_elements(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

pub fn full_mask(n: usize) -> Mask {
    if n == 64 {
        !0
    } else {
        (1 << n) - 1
    }
}

/// A finite strict partial order with its transitive closure and covers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    up: Vec<Mask>,
    down: Vec<Mask>,
    covers: Vec<(usize, usize)>,
}

impl Poset {
    /// Builds the poset generated by `pairs`, each `(u, v)` meaning `u < v`.
    ///
    /// Redundant pairs are allowed and dropped from the stored covers.
    pub fn from_covers(n: usize, pairs: &[(usize, usize)]) -> Result<Self, Error> {
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge { size: n, bound: MAX_ELEMENTS });
        }
        let mut up = vec![0 as Mask; n];
        for &(u, v) in pairs {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::OutOfRange { index: x, size: n });
                }
            }
            up[u] |= bit(v);
        }
        // Warshall over bit rows
        for k in 0..n {
            let row = up[k];
            for r in up.iter_mut() {
                if *r & bit(k) != 0 {
                    *r |= row;
                }
            }
        }
        if let Some(u) = (0..n).find(|&u| up[u] & bit(u) != 0) {
            return Err(Error::NotPartialOrder(u));
        }
        Ok(Self::from_closure(up))
    }

    /// `up` must already be transitively closed and irreflexive.
    fn from_closure(up: Vec<Mask>) -> Self {
        let n = up.len();
        let mut down = vec![0 as Mask; n];
        for (u, &row) in up.iter().enumerate() {
            for v in mask_elements(row) {
                down[v] |= bit(u);
            }
        }
        let mut covers = Vec::new();
        for u in 0..n {
            for v in mask_elements(up[u]) {
                if up[u] & down[v] == 0 {
                    covers.push((u, v));
                }
            }
        }
        Poset { n, up, down, covers }
    }

    pub fn empty() -> Self {
        Self::antichain(0)
    }

    /// The one-element poset `[1]`.
    pub fn point() -> Self {
        Self::antichain(1)
    }

    pub fn antichain(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS);
        Self::from_closure(vec![0; n])
    }

    /// The chain `[n]`: `0 < 1 < … < n−1`.
    pub fn chain(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS);
        Self::from_closure((0..n).map(|i| full_mask(n) & !full_mask(i + 1)).collect())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn elements(&self) -> Mask {
        full_mask(self.n)
    }

    /// `u < v`.
    #[inline]
    pub fn lt(&self, u: usize, v: usize) -> bool {
        self.up[u] & bit(v) != 0
    }

    #[inline]
    pub fn le(&self, u: usize, v: usize) -> bool {
        u == v || self.lt(u, v)
    }

    pub fn comparable(&self, u: usize, v: usize) -> bool {
        self.lt(u, v) || self.lt(v, u)
    }

    /// Elements strictly above `u`.
    pub fn above(&self, u: usize) -> Mask {
        self.up[u]
    }

    /// Elements strictly below `v`.
    pub fn below(&self, v: usize) -> Mask {
        self.down[v]
    }

    /// Cover pairs `(u, v)` with `v` covering `u`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// All pairs `(u, v)` with `u < v`, sorted.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| mask_elements(self.up[u]).map(move |v| (u, v)))
            .collect()
    }

    pub fn num_relations(&self) -> usize {
        self.up.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn minimals(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.down[v] == 0).collect()
    }

    pub fn maximals(&self) -> Vec<usize> {
        (0..self.n).filter(|&u| self.up[u] == 0).collect()
    }

    pub fn minimals_maximals(&self) -> (Vec<usize>, Vec<usize>) {
        (self.minimals(), self.maximals())
    }

    /// Minimal elements of the full subposet on `within`.
    pub fn minimals_in(&self, within: Mask) -> Mask {
        mask_elements(within)
            .filter(|&v| self.down[v] & within == 0)
            .fold(0, |m, v| m | bit(v))
    }

    /// Element sets of the connected components, ordered by least element.
    pub fn component_masks(&self) -> Vec<Mask> {
        let mut seen: Mask = 0;
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen & bit(start) != 0 {
                continue;
            }
            let mut comp = bit(start);
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for v in mask_elements(frontier) {
                    next |= self.up[v] | self.down[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn connected_components(&self) -> Vec<Poset> {
        self.component_masks()
            .into_iter()
            .map(|m| self.full_subposet_mask(m))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.component_masks().len() == 1
    }

    /// `self ⊔ other`: elements of `other` are shifted by `self.len()`.
    pub fn disjoint_union(&self, other: &Poset) -> Result<Poset, Error> {
        self.combine(other, false)
    }

    /// `self ⊕ other`: every element of `self` lies below every element of `other`.
    pub fn ordinal_sum(&self, other: &Poset) -> Result<Poset, Error> {
        self.combine(other, true)
    }

    fn combine(&self, other: &Poset, series: bool) -> Result<Poset, Error> {
        let n = self.n + other.n;
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge { size: n, bound: MAX_ELEMENTS });
        }
        let shift = self.n;
        let upper = full_mask(n) & !full_mask(shift);
        let mut up: Vec<Mask> = self
            .up
            .iter()
            .map(|&r| if series { r | upper } else { r })
            .collect();
        up.extend(other.up.iter().map(|&r| r << shift));
        Ok(Self::from_closure(up))
    }

    /// The induced order on `elements`, re-indexed in increasing order.
    pub fn full_subposet(&self, elements: &[usize]) -> Result<Poset, Error> {
        let mut m: Mask = 0;
        for &e in elements {
            if e >= self.n {
                return Err(Error::OutOfRange { index: e, size: self.n });
            }
            m |= bit(e);
        }
        Ok(self.full_subposet_mask(m))
    }

    pub fn full_subposet_mask(&self, m: Mask) -> Poset {
        let elems: Vec<usize> = mask_elements(m & self.elements()).collect();
        let up = elems
            .iter()
            .map(|&u| {
                elems
                    .iter()
                    .enumerate()
                    .filter(|&(_, &v)| self.lt(u, v))
                    .fold(0, |r, (j, _)| r | bit(j))
            })
            .collect();
        Self::from_closure(up)
    }

    /// Applies `perm`: element `u` becomes `perm[u]`.
    pub fn relabel(&self, perm: &[usize]) -> Poset {
        assert_eq!(perm.len(), self.n);
        let mut up = vec![0 as Mask; self.n];
        for u in 0..self.n {
            for v in mask_elements(self.up[u]) {
                up[perm[u]] |= bit(perm[v]);
            }
        }
        Self::from_closure(up)
    }

    /// A linear extension, smallest available index first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut placed: Mask = 0;
        let mut out = Vec::with_capacity(self.n);
        while out.len() < self.n {
            let v = (0..self.n)
                .find(|&v| placed & bit(v) == 0 && self.down[v] & !placed == 0)
                .expect("acyclic");
            placed |= bit(v);
            out.push(v);
        }
        out
    }

    /// Longest chain length from a minimal element (minimal elements have level 0).
    pub fn levels(&self) -> Vec<usize> {
        let mut level = vec![0usize; self.n];
        for v in self.linear_extension() {
            level[v] = mask_elements(self.down[v]).map(|u| level[u] + 1).max().unwrap_or(0);
        }
        level
    }

    pub fn canonical_form(&self) -> Result<CanonicalForm, Error> {
        self.canonical_form_bounded(CANONICAL_FORM_BOUND)
    }

    /// Canonical encoding: equal for two posets iff they are isomorphic.
    pub fn canonical_form_bounded(&self, bound: usize) -> Result<CanonicalForm, Error> {
        if self.n > bound {
            return Err(Error::TooLarge { size: self.n, bound });
        }
        let order = canonical::canonical_order(self);
        Ok(CanonicalForm(canonical::encode(self, &order)))
    }

    /// Relabels the poset into its canonical representative.
    pub fn canonical_poset(&self) -> Result<Poset, Error> {
        if self.n > CANONICAL_FORM_BOUND {
            return Err(Error::TooLarge { size: self.n, bound: CANONICAL_FORM_BOUND });
        }
        let order = canonical::canonical_order(self);
        let mut perm = vec![0; self.n];
        for (pos, &v) in order.iter().enumerate() {
            perm[v] = pos;
        }
        Ok(self.relabel(&perm))
    }

    pub fn is_isomorphic(&self, other: &Poset) -> Result<bool, Error> {
        if self.n != other.n || self.num_relations() != other.num_relations() {
            return Ok(false);
        }
        Ok(self.canonical_form()? == other.canonical_form()?)
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset({}; {:?})", self.n, self.covers)
    }
}

/// Canonical encoding of an unlabeled poset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(pub Vec<u8>);

impl CanonicalForm {
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

mod canonical {
    //! Individualization/refinement search for the least adjacency encoding.
    //!
    //! Colors are "cell start" indices: a vertex's color is the number of
    //! vertices in strictly smaller cells, so a discrete coloring is itself a
    //! canonical position assignment. Refinement only uses isomorphism
    //! invariant data, so the set of leaves reached is invariant and its least
    //! encoding is canonical.

    use super::{bit, mask_elements, Mask, Poset};

    fn refine(p: &Poset, colors: &mut [usize]) {
        let n = p.n;
        loop {
            let mut sigs: Vec<(Vec<usize>, usize)> = (0..n)
                .map(|v| {
                    let mut ups: Vec<usize> = mask_elements(p.up[v]).map(|w| colors[w]).collect();
                    let mut downs: Vec<usize> = mask_elements(p.down[v]).map(|w| colors[w]).collect();
                    ups.sort_unstable();
                    downs.sort_unstable();
                    let mut sig = Vec::with_capacity(ups.len() + downs.len() + 3);
                    sig.push(colors[v]);
                    sig.push(ups.len());
                    sig.extend(ups);
                    sig.push(downs.len());
                    sig.extend(downs);
                    (sig, v)
                })
                .collect();
            sigs.sort_unstable();
            let mut next = vec![0usize; n];
            let mut start = 0;
            for i in 0..n {
                if i > 0 && sigs[i].0 != sigs[i - 1].0 {
                    start = i;
                }
                next[sigs[i].1] = start;
            }
            let before = distinct(colors);
            colors.copy_from_slice(&next);
            if distinct(colors) == before {
                return;
            }
        }
    }

    fn distinct(colors: &[usize]) -> usize {
        let mut seen = colors.to_vec();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Encoding bits for positions `0..len` of `order`.
    fn push_bits(p: &Poset, order: &[usize], from: usize, to: usize, out: &mut Vec<bool>) {
        for k in from..to {
            for j in 0..k {
                out.push(p.lt(order[j], order[k]));
                out.push(p.lt(order[k], order[j]));
            }
        }
    }

    pub(super) fn encode(p: &Poset, order: &[usize]) -> Vec<u8> {
        let mut bits = Vec::new();
        push_bits(p, order, 0, order.len(), &mut bits);
        let mut out = vec![p.n as u8];
        for chunk in bits.chunks(8) {
            out.push(chunk.iter().enumerate().fold(0u8, |b, (i, &x)| b | ((x as u8) << (7 - i))));
        }
        out
    }

    struct Search<'a> {
        p: &'a Poset,
        twin_class: Vec<usize>,
        best_bits: Option<Vec<bool>>,
        best_order: Vec<usize>,
    }

    impl Search<'_> {
        fn prefix_order(&self, colors: &[usize]) -> Vec<usize> {
            // leading positions held by singleton cells
            let n = self.p.n;
            let mut count = vec![0usize; n];
            let mut who = vec![usize::MAX; n];
            for (v, &c) in colors.iter().enumerate() {
                count[c] += 1;
                who[c] = v;
            }
            let mut order = Vec::new();
            for pos in 0..n {
                if count[pos] != 1 {
                    break;
                }
                order.push(who[pos]);
            }
            order
        }

        fn visit(&mut self, mut colors: Vec<usize>) {
            refine(self.p, &mut colors);
            let n = self.p.n;
            let prefix = self.prefix_order(&colors);
            let mut bits = Vec::new();
            push_bits(self.p, &prefix, 0, prefix.len(), &mut bits);
            if let Some(best) = &self.best_bits {
                if bits.as_slice() > &best[..bits.len()] {
                    return;
                }
            }
            if prefix.len() == n {
                let better = match &self.best_bits {
                    None => true,
                    Some(best) => bits < *best,
                };
                if better {
                    self.best_bits = Some(bits);
                    self.best_order = prefix;
                }
                return;
            }
            // first non-singleton cell
            let mut count = vec![0usize; n];
            for &c in &colors {
                count[c] += 1;
            }
            let target = (0..n).find(|&c| count[c] > 1).expect("non-discrete");
            let cell: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
            let mut tried: Mask = 0;
            for &v in &cell {
                if tried & bit(self.twin_class[v]) != 0 {
                    continue;
                }
                tried |= bit(self.twin_class[v]);
                let mut next = colors.clone();
                for &w in &cell {
                    if w != v {
                        next[w] = target + 1;
                    }
                }
                self.visit(next);
            }
        }
    }

    /// Vertices listed in canonical position order.
    pub(super) fn canonical_order(p: &Poset) -> Vec<usize> {
        let n = p.n;
        if n == 0 {
            return Vec::new();
        }
        // twins: identical strict up- and down-sets; swapping them is an automorphism
        let twin_class = (0..n)
            .map(|v| {
                (0..=v)
                    .find(|&u| p.up[u] == p.up[v] && p.down[u] == p.down[v])
                    .expect("v is its own twin")
            })
            .collect();
        let levels = p.levels();
        let keys: Vec<(usize, u32, u32)> = (0..n)
            .map(|v| (levels[v], p.down[v].count_ones(), p.up[v].count_ones()))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        let colors = keys
            .iter()
            .map(|k| sorted.iter().position(|s| s == k).expect("present"))
            .collect();
        let mut search = Search { p, twin_class, best_bits: None, best_order: Vec::new() };
        search.visit(colors);
        search.best_order
    }
}

/// Which family of labelings to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LabelKind {
    /// `u < v ⟹ ω(u) > ω(v)`.
    Strict,
    /// `u < v ⟹ ω(u) < ω(v)`.
    Natural,
}

/// A poset with a bijective labeling `ω` onto `{1, …, n}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LabeledPoset {
    poset: Poset,
    omega: Vec<usize>,
}

impl LabeledPoset {
    pub fn new(poset: Poset, omega: Vec<usize>) -> Result<Self, Error> {
        let n = poset.len();
        if omega.len() != n {
            return Err(Error::BadLabeling(n));
        }
        let mut seen = vec![false; n + 1];
        for &k in &omega {
            if k == 0 || k > n || seen[k] {
                return Err(Error::BadLabeling(n));
            }
            seen[k] = true;
        }
        Ok(LabeledPoset { poset, omega })
    }

    /// Natural labelings follow a linear extension; strict ones are its complement.
    pub fn with_kind(poset: Poset, kind: LabelKind) -> Self {
        let n = poset.len();
        let mut omega = vec![0; n];
        for (i, v) in poset.linear_extension().into_iter().enumerate() {
            omega[v] = match kind {
                LabelKind::Natural => i + 1,
                LabelKind::Strict => n - i,
            };
        }
        LabeledPoset { poset, omega }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn omega(&self) -> &[usize] {
        &self.omega
    }

    pub fn label(&self, v: usize) -> usize {
        self.omega[v]
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn is_strict(&self) -> bool {
        self.poset.relations().into_iter().all(|(u, v)| self.omega[u] > self.omega[v])
    }

    pub fn is_natural(&self) -> bool {
        self.poset.relations().into_iter().all(|(u, v)| self.omega[u] < self.omega[v])
    }

    /// `ω̄(v) = n + 1 − ω(v)`.
    pub fn complement(&self) -> Self {
        let n = self.len();
        LabeledPoset {
            poset: self.poset.clone(),
            omega: self.omega.iter().map(|&k| n + 1 - k).collect(),
        }
    }

    /// Whether the cover `(u, v)` is a strict edge, i.e. `ω(u) > ω(v)`.
    pub fn is_strict_edge(&self, u: usize, v: usize) -> bool {
        self.omega[u] > self.omega[v]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn vee() -> Poset {
        Poset::from_covers(3, &[(0, 1), (0, 2)]).unwrap()
    }

    pub(crate) fn n_poset() -> Poset {
        // a < b > c < d
        Poset::from_covers(4, &[(0, 1), (2, 1), (2, 3)]).unwrap()
    }

    fn bowtie() -> Poset {
        Poset::from_covers(4, &[(0, 1), (2, 1), (2, 3), (0, 3)]).unwrap()
    }

    #[test]
    fn from_covers_examples() {
        let v = vee();
        assert_eq!(v.covers(), &[(0, 1), (0, 2)]);
        assert!(v.lt(0, 1) && v.lt(0, 2) && !v.comparable(1, 2));
        assert_eq!(Poset::from_covers(1, &[]).unwrap(), Poset::point());
        assert_eq!(
            Poset::from_covers(2, &[(0, 1), (1, 0)]),
            Err(Error::NotPartialOrder(0))
        );
        assert_eq!(
            Poset::from_covers(2, &[(0, 2)]),
            Err(Error::OutOfRange { index: 2, size: 2 })
        );
        // redundant pair dropped from the covers
        let c = Poset::from_covers(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(c.covers(), &[(0, 1), (1, 2)]);
        assert_eq!(c, Poset::chain(3));
    }

    #[test]
    fn closure_and_reduction() {
        let c = Poset::chain(4);
        assert_eq!(c.num_relations(), 6);
        let rebuilt = Poset::from_covers(4, c.covers()).unwrap();
        assert_eq!(rebuilt, c);
        let again = Poset::from_covers(4, &c.relations()).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn minimals_maximals_examples() {
        assert_eq!(vee().minimals_maximals(), (vec![0], vec![1, 2]));
        assert_eq!(Poset::antichain(3).minimals_maximals(), (vec![0, 1, 2], vec![0, 1, 2]));
        assert_eq!(Poset::chain(3).minimals_maximals(), (vec![0], vec![2]));
    }

    #[test]
    fn components_examples() {
        let p = Poset::chain(2).disjoint_union(&vee()).unwrap();
        assert_eq!(p.connected_components(), vec![Poset::chain(2), vee()]);
        assert_eq!(vee().connected_components(), vec![vee()]);
        assert_eq!(
            Poset::antichain(2).connected_components(),
            vec![Poset::point(), Poset::point()]
        );
        assert!(!Poset::empty().is_connected());
    }

    #[test]
    fn union_and_sum_examples() {
        let p1 = Poset::point();
        assert_eq!(p1.disjoint_union(&p1).unwrap(), Poset::antichain(2));
        assert_eq!(p1.ordinal_sum(&p1).unwrap(), Poset::chain(2));
        let wedge = Poset::antichain(2).ordinal_sum(&p1).unwrap();
        assert_eq!(wedge.covers(), &[(0, 2), (1, 2)]);
        let u = vee().disjoint_union(&p1).unwrap();
        assert_eq!(u.len(), 4);
        assert_eq!(u.component_masks(), vec![0b0111, 0b1000]);
        assert_eq!(Poset::empty().disjoint_union(&vee()).unwrap(), vee());
        assert_eq!(Poset::empty().ordinal_sum(&vee()).unwrap(), vee());
        let t = p1.ordinal_sum(&vee()).unwrap();
        assert_eq!(t.covers(), &[(0, 1), (1, 2), (1, 3)]);
        assert_eq!(t.minimals(), vec![0]);
    }

    #[test]
    fn full_subposet_examples() {
        assert_eq!(vee().full_subposet(&[1, 2]).unwrap(), Poset::antichain(2));
        assert_eq!(Poset::chain(3).full_subposet(&[0, 2]).unwrap(), Poset::chain(2));
        assert_eq!(vee().full_subposet(&[0, 1, 2]).unwrap(), vee());
        assert!(vee().full_subposet(&[5]).is_err());
        // nested restriction equals restriction to the intersection
        let p = bowtie();
        let outer = p.full_subposet_mask(0b1110);
        let inner = outer.full_subposet_mask(0b011);
        assert_eq!(inner, p.full_subposet_mask(0b0110));
    }

    #[test]
    fn canonical_form_examples() {
        let a = vee();
        let b = Poset::from_covers(3, &[(2, 0), (2, 1)]).unwrap();
        assert_eq!(a.canonical_form().unwrap(), b.canonical_form().unwrap());
        assert_ne!(n_poset().canonical_form().unwrap(), bowtie().canonical_form().unwrap());
        assert_ne!(
            Poset::chain(2).canonical_form().unwrap(),
            Poset::antichain(2).canonical_form().unwrap()
        );
        assert!(Poset::antichain(13).canonical_form().is_err());
        assert!(Poset::antichain(12).canonical_form().is_ok());
    }

    #[test]
    fn canonical_form_permutation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let samples = [
            vee(),
            n_poset(),
            bowtie(),
            Poset::chain(5),
            Poset::antichain(6),
            Poset::chain(2)
                .disjoint_union(&Poset::chain(2))
                .unwrap()
                .disjoint_union(&Poset::chain(2))
                .unwrap()
                .ordinal_sum(&vee())
                .unwrap(),
        ];
        for p in samples {
            let cf = p.canonical_form().unwrap();
            let mut perm: Vec<usize> = (0..p.len()).collect();
            for _ in 0..100 {
                perm.shuffle(&mut rng);
                let q = p.relabel(&perm);
                assert_eq!(q.canonical_form().unwrap(), cf);
            }
            assert_eq!(p.canonical_poset().unwrap().canonical_form().unwrap(), cf);
        }
    }

    #[test]
    fn union_sum_associative_up_to_iso() {
        let parts = [vee(), Poset::chain(2), n_poset()];
        let [a, b, c] = &parts;
        let l = a.disjoint_union(b).unwrap().disjoint_union(c).unwrap();
        let r = a.disjoint_union(&b.disjoint_union(c).unwrap()).unwrap();
        assert!(l.is_isomorphic(&r).unwrap());
        let l = a.ordinal_sum(b).unwrap().ordinal_sum(c).unwrap();
        let r = a.ordinal_sum(&b.ordinal_sum(c).unwrap()).unwrap();
        assert!(l.is_isomorphic(&r).unwrap());
        let swapped = b.disjoint_union(a).unwrap();
        assert!(a.disjoint_union(b).unwrap().is_isomorphic(&swapped).unwrap());
        assert!(!a.ordinal_sum(b).unwrap().is_isomorphic(&b.ordinal_sum(a).unwrap()).unwrap());
    }

    #[test]
    fn labelings() {
        let s = LabeledPoset::with_kind(vee(), LabelKind::Strict);
        assert_eq!(s.label(0), 3);
        assert!(s.is_strict() && !s.is_natural());
        let mut leaves = vec![s.label(1), s.label(2)];
        leaves.sort();
        assert_eq!(leaves, vec![1, 2]);
        assert!(s.complement().is_natural());
        assert_eq!(s.complement().complement(), s);

        assert_eq!(LabeledPoset::with_kind(Poset::point(), LabelKind::Natural).omega(), &[1]);
        assert_eq!(LabeledPoset::with_kind(Poset::chain(2), LabelKind::Natural).omega(), &[1, 2]);

        let c3 = LabeledPoset::new(Poset::chain(3), vec![1, 2, 3]).unwrap();
        assert_eq!(c3.complement().omega(), &[3, 2, 1]);
        assert!(LabeledPoset::new(Poset::chain(3), vec![1, 1, 3]).is_err());
        assert!(LabeledPoset::new(Poset::chain(3), vec![1, 2, 4]).is_err());
        assert!(LabeledPoset::new(Poset::chain(3), vec![1, 2]).is_err());
    }
}
