//! Rooted trees, (N,⋈)-free posets and isomorphism-class enumeration.
//!
//! The class 𝒞 is generated from `[1]` by disjoint unions and by adjoining a
//! new bottom (`[1] ⊕ P`) or top (`P ⊕ [1]`). A finite poset lies in 𝒞 iff it
//! has no full subposet isomorphic to `N` or `⋈`; both tests are provided
//! and cross-checked.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::Error;
use crate::poset::{bit, full_mask, mask_elements, CanonicalForm, Mask, Poset, CANONICAL_FORM_BOUND};

/// Default size bound for [`enumerate_njoinfree`].
pub const NJOINFREE_BOUND: usize = 8;
/// Hard size bound for [`enumerate_all_posets`].
pub const ALL_POSETS_BOUND: usize = 6;
/// Size bound for [`enumerate_posets_by_extension`].
pub const EXTENSION_BOUND: usize = 8;

/// An unlabeled rooted tree kept in canonical form: children sorted by
/// their encodings, so equal values are exactly isomorphic trees.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RootedTree {
    children: Vec<RootedTree>,
    size: usize,
    encoding: String,
}

impl RootedTree {
    pub fn leaf() -> Self {
        Self::from_children(Vec::new())
    }

    pub fn from_children(mut children: Vec<RootedTree>) -> Self {
        children.sort_by(|a, b| a.encoding.cmp(&b.encoding));
        let size = 1 + children.iter().map(|c| c.size).sum::<usize>();
        let mut encoding = String::with_capacity(2 * size);
        encoding.push('(');
        for c in &children {
            encoding.push_str(&c.encoding);
        }
        encoding.push(')');
        RootedTree { children, size, encoding }
    }

    pub fn children(&self) -> &[RootedTree] {
        &self.children
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Nested-parentheses encoding, e.g. `(()())` for a root with two leaves.
    pub fn encoding(&self) -> &str {
        &self.encoding
    }

    /// The tree order: root is the unique minimum, covers are parent-child
    /// edges. Vertices are numbered in preorder.
    pub fn to_poset(&self) -> Result<Poset, Error> {
        let mut covers = Vec::with_capacity(self.size.saturating_sub(1));
        fn walk(t: &RootedTree, next: &mut usize, covers: &mut Vec<(usize, usize)>) -> usize {
            let me = *next;
            *next += 1;
            for c in &t.children {
                let child = walk(c, next, covers);
                covers.push((me, child));
            }
            me
        }
        let mut next = 0;
        walk(self, &mut next, &mut covers);
        Poset::from_covers(self.size, &covers)
    }
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encoding)
    }
}

impl fmt::Debug for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootedTree{}", self.encoding)
    }
}

impl FromStr for RootedTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes: Vec<u8> = s.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        let err = |msg: &str| Error::Parse { line: 1, msg: format!("{msg} in tree {s:?}") };
        fn parse(b: &[u8], pos: &mut usize) -> Option<RootedTree> {
            if b.get(*pos) != Some(&b'(') {
                return None;
            }
            *pos += 1;
            let mut children = Vec::new();
            while b.get(*pos) == Some(&b'(') {
                children.push(parse(b, pos)?);
            }
            if b.get(*pos) != Some(&b')') {
                return None;
            }
            *pos += 1;
            Some(RootedTree::from_children(children))
        }
        let mut pos = 0;
        let t = parse(&bytes, &mut pos).ok_or_else(|| err("unbalanced parentheses"))?;
        if pos != bytes.len() {
            return Err(err("trailing input"));
        }
        if t.size > crate::poset::MAX_ELEMENTS {
            return Err(Error::TooLarge { size: t.size, bound: crate::poset::MAX_ELEMENTS });
        }
        Ok(t)
    }
}

/// One representative per isomorphism class of rooted trees on `n` vertices,
/// sorted by encoding.
pub fn enumerate_rooted_trees(n: usize) -> Vec<RootedTree> {
    if n == 0 {
        return Vec::new();
    }
    let mut by_size: Vec<Vec<RootedTree>> = vec![Vec::new(), vec![RootedTree::leaf()]];
    for k in 2..=n {
        // multisets of subtrees with total size k-1, as non-increasing (size, index) sequences
        let mut out = Vec::new();
        let mut stack: Vec<(usize, usize)> = Vec::new();
        fn fill(
            by_size: &[Vec<RootedTree>],
            remaining: usize,
            max: (usize, usize),
            stack: &mut Vec<(usize, usize)>,
            out: &mut Vec<RootedTree>,
        ) {
            if remaining == 0 {
                let children = stack.iter().map(|&(s, i)| by_size[s][i].clone()).collect();
                out.push(RootedTree::from_children(children));
                return;
            }
            for s in (1..=remaining.min(max.0)).rev() {
                let top = if s == max.0 { max.1 + 1 } else { by_size[s].len() };
                for i in (0..top.min(by_size[s].len())).rev() {
                    stack.push((s, i));
                    fill(by_size, remaining - s, (s, i), stack, out);
                    stack.pop();
                }
            }
        }
        fill(&by_size, k - 1, (k - 1, usize::MAX - 1), &mut stack, &mut out);
        out.sort_by(|a, b| a.encoding.cmp(&b.encoding));
        by_size.push(out);
    }
    by_size.swap_remove(n)
}

/// `N`: `a < b > c < d`.
pub fn n_poset() -> Poset {
    Poset::from_covers(4, &[(0, 1), (2, 1), (2, 3)]).expect("valid")
}

/// `⋈`: `a < b > c < d` and `a < d`.
pub fn bowtie_poset() -> Poset {
    Poset::from_covers(4, &[(0, 1), (2, 1), (2, 3), (0, 3)]).expect("valid")
}

fn matches_template(p: &Poset, quad: [usize; 4], template: &Poset) -> bool {
    let rel = |x: &Poset, q: &[usize; 4]| {
        let mut m = 0u16;
        for i in 0..4 {
            for j in 0..4 {
                if x.lt(q[i], q[j]) {
                    m |= 1 << (4 * i + j);
                }
            }
        }
        m
    };
    let target = rel(template, &[0, 1, 2, 3]);
    if target.count_ones() != rel(p, &quad).count_ones() {
        return false;
    }
    (0..4).permutations(4).any(|perm| {
        let mapped = [quad[perm[0]], quad[perm[1]], quad[perm[2]], quad[perm[3]]];
        rel(p, &mapped) == target
    })
}

/// Scans every 4-element subset for a full subposet isomorphic to `N` or `⋈`,
/// returning the first one found.
pub fn find_n_or_bowtie(p: &Poset) -> Option<[usize; 4]> {
    let (n, bowtie) = (n_poset(), bowtie_poset());
    (0..p.len()).combinations(4).find_map(|q| {
        let quad = [q[0], q[1], q[2], q[3]];
        let count = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| p.lt(quad[i], quad[j]))
            .count();
        let hit = match count {
            3 => matches_template(p, quad, &n),
            4 => matches_template(p, quad, &bowtie),
            _ => false,
        };
        hit.then_some(quad)
    })
}

/// Whether `p` avoids `N` and `⋈` as full subposets, by exhaustive scan.
pub fn is_njoinfree_scan(p: &Poset) -> bool {
    find_n_or_bowtie(p).is_none()
}

/// A term over `[1]`, `⊔`, `[1] ⊕ ·` and `· ⊕ [1]` building a member of 𝒞.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum BuildTerm {
    Point,
    Union(Vec<BuildTerm>),
    /// `[1] ⊕ t`
    BottomPlus(Box<BuildTerm>),
    /// `t ⊕ [1]`
    PlusTop(Box<BuildTerm>),
}

impl BuildTerm {
    pub fn to_poset(&self) -> Result<Poset, Error> {
        match self {
            BuildTerm::Point => Ok(Poset::point()),
            BuildTerm::Union(parts) => parts
                .iter()
                .try_fold(Poset::empty(), |acc, t| acc.disjoint_union(&t.to_poset()?)),
            BuildTerm::BottomPlus(t) => Poset::point().ordinal_sum(&t.to_poset()?),
            BuildTerm::PlusTop(t) => t.to_poset()?.ordinal_sum(&Poset::point()),
        }
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildTerm::Union(parts) if parts.len() > 1 => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

impl fmt::Display for BuildTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildTerm::Point => f.write_str("[1]"),
            BuildTerm::Union(parts) if parts.is_empty() => f.write_str("∅"),
            BuildTerm::Union(parts) => {
                for (i, t) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("⊔")?;
                    }
                    match t {
                        BuildTerm::BottomPlus(_) | BuildTerm::PlusTop(_) => write!(f, "({t})")?,
                        _ => write!(f, "{t}")?,
                    }
                }
                Ok(())
            }
            BuildTerm::BottomPlus(t) => {
                f.write_str("[1]⊕")?;
                t.fmt_operand(f)
            }
            BuildTerm::PlusTop(t) => {
                t.fmt_operand(f)?;
                f.write_str("⊕[1]")
            }
        }
    }
}

/// Decides membership in 𝒞 by decomposition: split into components, and
/// strip a unique minimum (preferred) or unique maximum from connected
/// pieces. Returns the build term on success.
pub fn class_c_membership(p: &Poset) -> Option<BuildTerm> {
    fn decide(p: &Poset, within: Mask) -> Option<BuildTerm> {
        let sub = p.full_subposet_mask(within);
        let elems: Vec<usize> = mask_elements(within).collect();
        let comps = sub.component_masks();
        if comps.len() != 1 {
            let parts = comps
                .into_iter()
                .map(|m| decide(p, lift(m, &elems)))
                .collect::<Option<Vec<_>>>()?;
            return Some(BuildTerm::Union(parts));
        }
        if elems.len() == 1 {
            return Some(BuildTerm::Point);
        }
        let mins = sub.minimals();
        if mins.len() == 1 {
            let rest = within & !bit(elems[mins[0]]);
            return Some(BuildTerm::BottomPlus(Box::new(decide(p, rest)?)));
        }
        let maxs = sub.maximals();
        if maxs.len() == 1 {
            let rest = within & !bit(elems[maxs[0]]);
            return Some(BuildTerm::PlusTop(Box::new(decide(p, rest)?)));
        }
        None
    }
    fn lift(local: Mask, elems: &[usize]) -> Mask {
        mask_elements(local).fold(0, |m, i| m | bit(elems[i]))
    }
    decide(p, p.elements())
}

fn dedup_canonical(candidates: Vec<Poset>) -> Result<Vec<Poset>, Error> {
    let keyed = candidates
        .into_par_iter()
        .map(|p| Ok((p.canonical_form()?, p)))
        .collect::<Result<Vec<(CanonicalForm, Poset)>, Error>>()?;
    let mut map: BTreeMap<CanonicalForm, Poset> = BTreeMap::new();
    for (k, p) in keyed {
        map.entry(k).or_insert(p);
    }
    map.into_values()
        .map(|p| p.canonical_poset())
        .collect()
}

/// Connected and all members of 𝒞 for each size `0..=n`.
fn njoinfree_tables(n: usize) -> Result<(Vec<Vec<Poset>>, Vec<Vec<Poset>>), Error> {
    let mut connected: Vec<Vec<Poset>> = vec![Vec::new(), vec![Poset::point()]];
    let mut all: Vec<Vec<Poset>> = vec![vec![Poset::empty()], vec![Poset::point()]];
    for k in 2..=n {
        let mut cand = Vec::new();
        for p in &all[k - 1] {
            cand.push(Poset::point().ordinal_sum(p)?);
            cand.push(p.ordinal_sum(&Poset::point())?);
        }
        let conn = dedup_canonical(cand)?;

        // disconnected: multisets of ≥ 2 connected members, sizes summing to k
        let mut disc = Vec::new();
        let mut stack: Vec<(usize, usize)> = Vec::new();
        fn fill(
            connected: &[Vec<Poset>],
            remaining: usize,
            max: (usize, usize),
            stack: &mut Vec<(usize, usize)>,
            out: &mut Vec<Poset>,
        ) -> Result<(), Error> {
            if remaining == 0 {
                if stack.len() >= 2 {
                    let p = stack.iter().try_fold(Poset::empty(), |acc, &(s, i)| {
                        acc.disjoint_union(&connected[s][i])
                    })?;
                    out.push(p);
                }
                return Ok(());
            }
            for s in (1..=remaining.min(max.0)).rev() {
                let top = if s == max.0 { max.1 + 1 } else { connected[s].len() };
                for i in (0..top.min(connected[s].len())).rev() {
                    stack.push((s, i));
                    fill(connected, remaining - s, (s, i), stack, out)?;
                    stack.pop();
                }
            }
            Ok(())
        }
        // sizes below k only, the connected table for k is not needed here
        fill(&connected, k, (k - 1, usize::MAX - 1), &mut stack, &mut disc)?;
        connected.push(conn.clone());
        let mut every = conn;
        every.extend(disc);
        all.push(dedup_canonical(every)?);
    }
    connected.truncate(n + 1);
    all.truncate(n + 1);
    Ok((connected, all))
}

/// Pairwise non-isomorphic (N,⋈)-free posets on `n` elements, generated as
/// members of 𝒞 and sorted by canonical form. Bounded by [`NJOINFREE_BOUND`].
pub fn enumerate_njoinfree(n: usize) -> Result<Vec<Poset>, Error> {
    enumerate_njoinfree_bounded(n, NJOINFREE_BOUND)
}

pub fn enumerate_njoinfree_bounded(n: usize, bound: usize) -> Result<Vec<Poset>, Error> {
    let bound = bound.min(CANONICAL_FORM_BOUND);
    if n > bound {
        return Err(Error::TooLarge { size: n, bound });
    }
    let (_, mut all) = njoinfree_tables(n)?;
    Ok(all.swap_remove(n))
}

/// Number of (N,⋈)-free posets for each size `1..=nmax`.
pub fn count_njoinfree(nmax: usize) -> Result<Vec<usize>, Error> {
    count_njoinfree_bounded(nmax, NJOINFREE_BOUND)
}

pub fn count_njoinfree_bounded(nmax: usize, bound: usize) -> Result<Vec<usize>, Error> {
    let bound = bound.min(CANONICAL_FORM_BOUND);
    if nmax > bound {
        return Err(Error::TooLarge { size: nmax, bound });
    }
    let (_, all) = njoinfree_tables(nmax)?;
    Ok(all[1..].iter().map(Vec::len).collect())
}

/// Every strict partial order on the labeled points `0..n`.
///
/// Element `k` is added to each order on `0..k` with a chosen down-set `D`
/// and up-set `U` such that every element of `D` lies below every element
/// of `U`. Each labeled order arises once, from its restriction to `0..k`.
pub fn labeled_posets(n: usize) -> Result<Vec<Poset>, Error> {
    if n > ALL_POSETS_BOUND {
        return Err(Error::TooLarge { size: n, bound: ALL_POSETS_BOUND });
    }
    let mut level = vec![Poset::empty()];
    for k in 0..n {
        level = level
            .par_iter()
            .flat_map_iter(|p| {
                let mut out = Vec::new();
                let all = full_mask(k);
                for down in 0..=all {
                    if !is_down_set(p, down) {
                        continue;
                    }
                    // everything in `up` must sit above all of `down`
                    let allowed = mask_elements(down).fold(all & !down, |m, d| m & p.above(d));
                    let mut up = allowed;
                    loop {
                        if is_up_set(p, up) {
                            out.push(extend(p, down, up));
                        }
                        if up == 0 {
                            break;
                        }
                        up = (up - 1) & allowed;
                    }
                }
                out
            })
            .collect();
    }
    Ok(level)
}

fn is_down_set(p: &Poset, m: Mask) -> bool {
    mask_elements(m).all(|v| p.below(v) & !m == 0)
}

fn is_up_set(p: &Poset, m: Mask) -> bool {
    mask_elements(m).all(|v| p.above(v) & !m == 0)
}

/// Adds a new element above `down` and below `up`.
fn extend(p: &Poset, down: Mask, up: Mask) -> Poset {
    let k = p.len();
    let mut pairs = p.covers().to_vec();
    pairs.extend(mask_elements(down).map(|d| (d, k)));
    pairs.extend(mask_elements(up).map(|u| (k, u)));
    Poset::from_covers(k + 1, &pairs).expect("extension of a poset by a compatible cut is a poset")
}

/// Pairwise non-isomorphic posets on `n` elements by exhaustive labeled
/// enumeration and canonical dedup. Hard bound [`ALL_POSETS_BOUND`].
pub fn enumerate_all_posets(n: usize) -> Result<Vec<Poset>, Error> {
    dedup_canonical(labeled_posets(n)?)
}

/// Pairwise non-isomorphic posets on `n` elements, built from the classes on
/// `n − 1` elements by adjoining a new maximal element above an order ideal.
pub fn enumerate_posets_by_extension(n: usize) -> Result<Vec<Poset>, Error> {
    let mut levels = posets_by_extension_levels(n)?;
    Ok(levels.swap_remove(n))
}

/// Isomorphism classes for every size `0..=n`, by the extension route.
pub fn posets_by_extension_levels(n: usize) -> Result<Vec<Vec<Poset>>, Error> {
    if n > EXTENSION_BOUND {
        return Err(Error::TooLarge { size: n, bound: EXTENSION_BOUND });
    }
    let mut levels = vec![vec![Poset::empty()]];
    for k in 0..n {
        let cand: Vec<Poset> = levels[k]
            .par_iter()
            .flat_map_iter(|p| {
                (0..=full_mask(k))
                    .filter(|&d| is_down_set(p, d))
                    .map(|d| extend(p, d, 0))
                    .collect::<Vec<_>>()
            })
            .collect();
        levels.push(dedup_canonical(cand)?);
    }
    Ok(levels)
}
