//! Stable ordered partitions and (P,ω)-partition generating functions.
//!
//! `Γ(P,ω) = Σ_α |St_α(P,ω)| M_α`, where `St_α` is the set of stable ordered
//! partitions of type `α`.
//!
//! First blocks. A tuple `(π₁,…,π_ℓ)` is stable iff `π₁` is a non-empty order
//! ideal `S` of `P` containing no pair `u < v` with `ω(u) > ω(v)`, and
//! `(π₂,…,π_ℓ)` is stable for the full subposet on `P ∖ S`:
//! * if `v ∈ π₁` and `u < v` then `u` must sit in a block of index ≤ 1, so
//!   `π₁` is down-closed;
//! * a label-inverted pair `u < v` may not share a block;
//! * every condition between later blocks only involves `P ∖ S`, and any
//!   pair with one end in `π₁` and the other later is satisfied because the
//!   later element cannot be below an element of the ideal.
//!
//! The remainder `P ∖ S` is an up-set, so the recursion is keyed on up-set
//! bitmasks. For strict labelings every comparable pair is inverted and first
//! blocks reduce to non-empty sets of current minimal elements.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::composition::Composition;
use crate::poset::{bit, mask_elements, LabelKind, LabeledPoset, Mask, Poset};
use crate::qsym::QSymElement;

/// An ordered tuple of non-empty, pairwise disjoint blocks covering a labeled poset.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct StableOrderedPartition {
    blocks: Vec<Vec<usize>>,
}

impl StableOrderedPartition {
    pub fn from_blocks(blocks: Vec<Vec<usize>>) -> Self {
        StableOrderedPartition { blocks }
    }

    fn from_masks(masks: &[Mask]) -> Self {
        StableOrderedPartition {
            blocks: masks.iter().map(|&m| mask_elements(m).collect()).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// `type(Π) = (|π₁|, …, |π_ℓ|)`.
    pub fn type_composition(&self) -> Composition {
        Composition::from_parts_unchecked(self.blocks.iter().map(Vec::len).collect())
    }

    /// Checks the three defining conditions directly.
    pub fn is_stable_for(&self, lp: &LabeledPoset) -> bool {
        let n = lp.len();
        let mut block_of = vec![usize::MAX; n];
        for (i, b) in self.blocks.iter().enumerate() {
            if b.is_empty() {
                return false;
            }
            for &v in b {
                if v >= n || block_of[v] != usize::MAX {
                    return false;
                }
                block_of[v] = i;
            }
        }
        if block_of.contains(&usize::MAX) {
            return false;
        }
        lp.poset().relations().into_iter().all(|(u, v)| {
            let (i, j) = (block_of[u], block_of[v]);
            i <= j && (lp.label(u) < lp.label(v) || i < j)
        })
    }
}

/// Admissible first blocks of the remaining up-set `remaining`, in a fixed order.
fn first_blocks(lp: &LabeledPoset, order: &[usize], remaining: Mask) -> Vec<Mask> {
    let p = lp.poset();
    let candidates: Vec<usize> = order.iter().copied().filter(|&v| remaining & bit(v) != 0).collect();
    let mut out = Vec::new();
    // candidates follow a linear extension, so predecessors are decided first
    fn go(
        lp: &LabeledPoset,
        p: &Poset,
        candidates: &[usize],
        remaining: Mask,
        i: usize,
        chosen: Mask,
        out: &mut Vec<Mask>,
    ) {
        if i == candidates.len() {
            if chosen != 0 {
                out.push(chosen);
            }
            return;
        }
        let v = candidates[i];
        let below = p.below(v) & remaining;
        if below & !chosen == 0
            && mask_elements(below).all(|u| lp.label(u) < lp.label(v))
        {
            go(lp, p, candidates, remaining, i + 1, chosen | bit(v), out);
        }
        go(lp, p, candidates, remaining, i + 1, chosen, out);
    }
    go(lp, p, &candidates, remaining, 0, 0, &mut out);
    out
}

/// Calls `visit` with every stable ordered partition of `lp`, each exactly once.
pub fn for_each_stable_partition(lp: &LabeledPoset, mut visit: impl FnMut(&StableOrderedPartition)) {
    let order = lp.poset().linear_extension();
    let mut stack = Vec::new();
    fn go(
        lp: &LabeledPoset,
        order: &[usize],
        remaining: Mask,
        stack: &mut Vec<Mask>,
        visit: &mut dyn FnMut(&StableOrderedPartition),
    ) {
        if remaining == 0 {
            visit(&StableOrderedPartition::from_masks(stack));
            return;
        }
        for s in first_blocks(lp, order, remaining) {
            stack.push(s);
            go(lp, order, remaining & !s, stack, visit);
            stack.pop();
        }
    }
    go(lp, &order, lp.poset().elements(), &mut stack, &mut visit);
}

pub fn enumerate_stable_partitions(lp: &LabeledPoset) -> Vec<StableOrderedPartition> {
    let mut out = Vec::new();
    for_each_stable_partition(lp, |sop| out.push(sop.clone()));
    out
}

/// `Γ(P,ω)` by explicit enumeration of stable ordered partitions.
pub fn gamma_by_enumeration(lp: &LabeledPoset) -> QSymElement {
    let mut out = QSymElement::zero();
    for_each_stable_partition(lp, |sop| out.add_term(sop.type_composition(), BigInt::one()));
    out
}

/// `Γ(P,ω) = Σ_α |St_α(P,ω)| M_α`, counted by type with a memo on remaining up-sets.
pub fn gamma(lp: &LabeledPoset) -> QSymElement {
    let order = lp.poset().linear_extension();
    let mut memo: HashMap<Mask, QSymElement> = HashMap::new();
    fn go(
        lp: &LabeledPoset,
        order: &[usize],
        remaining: Mask,
        memo: &mut HashMap<Mask, QSymElement>,
    ) -> QSymElement {
        if remaining == 0 {
            return QSymElement::one();
        }
        if let Some(v) = memo.get(&remaining) {
            return v.clone();
        }
        let mut out = QSymElement::zero();
        for s in first_blocks(lp, order, remaining) {
            let head = s.count_ones() as usize;
            let rest = go(lp, order, remaining & !s, memo);
            for (alpha, c) in rest.terms() {
                out.add_term(alpha.prepend(head), c.clone());
            }
        }
        memo.insert(remaining, out.clone());
        out
    }
    go(lp, &order, lp.poset().elements(), &mut memo)
}

/// Strict order quasisymmetric function `Γ^<(P)`.
pub fn gamma_strict(p: &Poset) -> QSymElement {
    gamma(&LabeledPoset::with_kind(p.clone(), LabelKind::Strict))
}

/// Weak order quasisymmetric function `Γ^≤(P)`.
pub fn gamma_weak(p: &Poset) -> QSymElement {
    gamma(&LabeledPoset::with_kind(p.clone(), LabelKind::Natural))
}

/// Per-element jump: the most strict edges on a downward chain of covers
/// ending at a minimal element.
pub fn jumps(lp: &LabeledPoset) -> Vec<usize> {
    let p = lp.poset();
    let mut jump = vec![0usize; p.len()];
    let mut lower_covers: Vec<Vec<usize>> = vec![Vec::new(); p.len()];
    for &(u, v) in p.covers() {
        lower_covers[v].push(u);
    }
    for v in p.linear_extension() {
        jump[v] = lower_covers[v]
            .iter()
            .map(|&u| jump[u] + usize::from(lp.is_strict_edge(u, v)))
            .max()
            .unwrap_or(0);
    }
    jump
}

/// `jump(P,ω) = (j₀, …, j_ℓ)` with `j_i` the number of elements of jump `i`.
pub fn jump_sequence(lp: &LabeledPoset) -> Composition {
    let jump = jumps(lp);
    let Some(&top) = jump.iter().max() else {
        return Composition::empty();
    };
    let mut counts = vec![0usize; top + 1];
    for j in jump {
        counts[j] += 1;
    }
    Composition::new(counts).expect("every jump value below the maximum is attained")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp;
    use itertools::Itertools;

    fn vee() -> Poset {
        Poset::from_covers(3, &[(0, 1), (0, 2)]).unwrap()
    }

    fn q(terms: &[(Composition, i64)]) -> QSymElement {
        QSymElement::from_terms(terms.iter().cloned())
    }

    fn sop(blocks: &[&[usize]]) -> StableOrderedPartition {
        StableOrderedPartition::from_blocks(blocks.iter().map(|b| b.to_vec()).collect())
    }

    /// Every ordered set partition of `0..n`, unfiltered.
    fn ordered_set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        // assign each element a block index, keep surjective assignments
        for k in 1..=n.max(1) {
            for assign in (0..n).map(|_| 0..k).multi_cartesian_product() {
                if (0..k).all(|b| assign.contains(&b)) {
                    out.push((0..k).map(|b| (0..n).filter(|&v| assign[v] == b).collect()).collect());
                }
            }
        }
        if n == 0 {
            out = vec![vec![]];
        }
        out
    }

    #[test]
    fn vee_strict_partitions() {
        let lp = LabeledPoset::with_kind(vee(), LabelKind::Strict);
        let mut got = enumerate_stable_partitions(&lp);
        got.sort();
        let mut want = vec![sop(&[&[0], &[1], &[2]]), sop(&[&[0], &[2], &[1]]), sop(&[&[0], &[1, 2]])];
        want.sort();
        assert_eq!(got, want);
        assert_eq!(gamma(&lp), q(&[(comp![1, 1, 1], 2), (comp![1, 2], 1)]));
    }

    #[test]
    fn vee_mixed_labeling() {
        // ω'(a)=2, ω'(b)=1, ω'(c)=3
        let lp = LabeledPoset::new(vee(), vec![2, 1, 3]).unwrap();
        let mut got = enumerate_stable_partitions(&lp);
        got.sort();
        let mut want = vec![
            sop(&[&[0], &[1], &[2]]),
            sop(&[&[0], &[2], &[1]]),
            sop(&[&[0], &[1, 2]]),
            sop(&[&[0, 2], &[1]]),
        ];
        want.sort();
        assert_eq!(got, want);
        assert_eq!(
            gamma(&lp),
            q(&[(comp![1, 1, 1], 2), (comp![1, 2], 1), (comp![2, 1], 1)])
        );
    }

    #[test]
    fn single_point() {
        let lp = LabeledPoset::new(Poset::point(), vec![1]).unwrap();
        assert_eq!(enumerate_stable_partitions(&lp), vec![sop(&[&[0]])]);
        assert_eq!(gamma(&lp), QSymElement::monomial(comp![1]));
        assert_eq!(gamma_strict(&Poset::empty()), QSymElement::one());
    }

    #[test]
    fn strict_and_weak_examples() {
        assert_eq!(gamma_strict(&vee()), q(&[(comp![1, 1, 1], 2), (comp![1, 2], 1)]));
        assert_eq!(gamma_strict(&Poset::antichain(2)), q(&[(comp![1, 1], 2), (comp![2], 1)]));
        assert_eq!(gamma_strict(&Poset::chain(2)), q(&[(comp![1, 1], 1)]));
        assert_eq!(gamma_weak(&Poset::chain(2)), q(&[(comp![1, 1], 1), (comp![2], 1)]));
    }

    #[test]
    fn jump_examples() {
        let lp = LabeledPoset::with_kind(vee(), LabelKind::Strict);
        assert_eq!(jump_sequence(&lp), comp![1, 2]);
        assert_eq!(gamma(&lp).leading_term().unwrap().0, &comp![1, 2]);
        let c3 = Poset::chain(3);
        assert_eq!(jump_sequence(&LabeledPoset::with_kind(c3.clone(), LabelKind::Natural)), comp![3]);
        assert_eq!(jump_sequence(&LabeledPoset::with_kind(c3, LabelKind::Strict)), comp![1, 1, 1]);
        assert_eq!(jump_sequence(&LabeledPoset::with_kind(Poset::empty(), LabelKind::Strict)), comp![]);
    }

    #[test]
    fn recursion_matches_brute_force_filter() {
        // every labeling of a few small posets, |P| ≤ 5
        let posets = [
            Poset::antichain(3),
            vee(),
            Poset::chain(3),
            Poset::from_covers(4, &[(0, 1), (2, 1), (2, 3)]).unwrap(),
            Poset::from_covers(5, &[(0, 2), (1, 2), (2, 3), (2, 4)]).unwrap(),
        ];
        for p in posets {
            let n = p.len();
            for perm in (1..=n).permutations(n) {
                let lp = LabeledPoset::new(p.clone(), perm).unwrap();
                let mut want: Vec<StableOrderedPartition> = ordered_set_partitions(n)
                    .into_iter()
                    .map(StableOrderedPartition::from_blocks)
                    .filter(|s| s.is_stable_for(&lp))
                    .collect();
                want.sort();
                let mut got = enumerate_stable_partitions(&lp);
                assert!(got.iter().all(|s| s.is_stable_for(&lp)));
                got.sort();
                assert_eq!(got, want, "{lp:?}");
                assert_eq!(gamma(&lp), gamma_by_enumeration(&lp));
            }
        }
    }

    #[test]
    fn ordered_set_partition_counts() {
        // Fubini numbers
        let counts: Vec<usize> = (0..=4).map(|n| ordered_set_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 13, 75]);
    }
}
