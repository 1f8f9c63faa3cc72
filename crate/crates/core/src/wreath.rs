//! The iterated wreath product `[C_2]^n` as automorphisms of the perfect
//! binary tree of depth `n`.
//!
//! An element is a labelling of the `2^n - 1` internal nodes (heap order:
//! root 0, children of `v` at `2v + 1` and `2v + 2`); a set bit swaps the two
//! subtrees below that node. Every labelling is an element, so the group has
//! order `2^(2^n - 1)`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::effort::CAPS;
use crate::error::{Error, Result};

/// Deepest tree whose labelling fits in the `u64` bit array.
pub const MAX_DEPTH: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TreeAutomorphism {
    pub depth: u32,
    pub bits: u64,
}

fn internal_nodes(depth: u32) -> u32 {
    (1u32 << depth) - 1
}

impl TreeAutomorphism {
    pub fn new(depth: u32, bits: u64) -> Result<Self> {
        if depth == 0 || depth > MAX_DEPTH {
            return Err(Error::invalid(format!(
                "tree depth must lie in 1..={MAX_DEPTH}, got {depth}"
            )));
        }
        let nodes = internal_nodes(depth);
        if nodes < 64 && bits >> nodes != 0 {
            return Err(Error::invalid(format!(
                "labelling {bits:#b} has bits beyond the {nodes} internal nodes"
            )));
        }
        Ok(TreeAutomorphism { depth, bits })
    }

    pub fn identity(depth: u32) -> Self {
        TreeAutomorphism { depth, bits: 0 }
    }

    /// Swap at a single node.
    pub fn swap_at(depth: u32, node: u32) -> Self {
        debug_assert!(node < internal_nodes(depth));
        TreeAutomorphism {
            depth,
            bits: 1 << node,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.bits == 0
    }

    fn label(&self, node: u32) -> bool {
        self.bits >> node & 1 == 1
    }

    /// Image of a node (internal or leaf) under this automorphism.
    pub fn act(&self, node: u32) -> u32 {
        let level = 31 - (node + 1).leading_zeros();
        let offset = node + 1 - (1 << level);
        let (mut src, mut dst) = (0u32, 0u32);
        for k in (0..level).rev() {
            let dir = offset >> k & 1;
            let flipped = dir ^ self.label(src) as u32;
            src = 2 * src + 1 + dir;
            dst = 2 * dst + 1 + flipped;
        }
        dst
    }

    /// Where each of the `2^depth` leaves goes, leaves numbered left to right.
    pub fn leaf_permutation(&self) -> Vec<u32> {
        let first = internal_nodes(self.depth);
        (0..1u32 << self.depth)
            .map(|i| self.act(first + i) - first)
            .collect()
    }

    /// `self` after `other`: the label at `v` is `other_v XOR self_{other(v)}`.
    pub fn compose(&self, other: &TreeAutomorphism) -> Result<TreeAutomorphism> {
        if self.depth != other.depth {
            return Err(Error::invalid(format!(
                "cannot compose depth {} with depth {}",
                self.depth, other.depth
            )));
        }
        Ok(self.then_unchecked(other))
    }

    fn then_unchecked(&self, other: &TreeAutomorphism) -> TreeAutomorphism {
        let mut bits = 0u64;
        for v in 0..internal_nodes(self.depth) {
            if other.label(v) ^ self.label(other.act(v)) {
                bits |= 1 << v;
            }
        }
        TreeAutomorphism {
            depth: self.depth,
            bits,
        }
    }

    pub fn inverse(&self) -> TreeAutomorphism {
        let mut bits = 0u64;
        for v in 0..internal_nodes(self.depth) {
            if self.label(v) {
                bits |= 1 << self.act(v);
            }
        }
        TreeAutomorphism {
            depth: self.depth,
            bits,
        }
    }

    pub fn order(&self) -> u64 {
        let mut power = *self;
        let mut k = 1;
        while !power.is_identity() {
            power = power.then_unchecked(self);
            k += 1;
        }
        k
    }
}

fn check_depth(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("tree depth must be at least 1"));
    }
    if n > CAPS.wreath_depth {
        return Err(Error::limit("tree depth n", n, CAPS.wreath_depth));
    }
    Ok(())
}

/// `2^(2^n - 1)`
pub fn group_order(n: u32) -> u64 {
    1 << internal_nodes(n)
}

/// Every element of `[C_2]^n`.
pub fn all_elements(n: u32) -> Vec<TreeAutomorphism> {
    (0..group_order(n))
        .map(|bits| TreeAutomorphism { depth: n, bits })
        .collect()
}

/// Subgroup generated by `gens` (work-list closure under right multiplication).
pub fn closure(depth: u32, gens: &[TreeAutomorphism]) -> HashSet<TreeAutomorphism> {
    let gens: Vec<_> = gens
        .iter()
        .copied()
        .collect::<HashSet<_>>()
        .into_iter()
        .filter(|g| !g.is_identity())
        .collect();
    let id = TreeAutomorphism::identity(depth);
    let mut seen = HashSet::from([id]);
    let mut work = vec![id];
    while let Some(x) = work.pop() {
        for g in &gens {
            let y = x.then_unchecked(g);
            if seen.insert(y) {
                work.push(y);
            }
        }
    }
    seen
}

/// `a_1` = root swap, `a_k` = `a_{k-1}` pushed down to the left child.
pub fn minimal_generators(n: u32) -> Result<Vec<TreeAutomorphism>> {
    check_depth(n)?;
    Ok((0..n)
        .map(|k| TreeAutomorphism::swap_at(n, (1 << k) - 1))
        .collect())
}

/// `V = <g^2, [g, s] : g in G, s a generator>`; contains every commutator,
/// since `[a, b] = a^-2 (a b^-1)^2 b^2`.
pub fn squares_and_commutators(n: u32) -> Result<HashSet<TreeAutomorphism>> {
    check_depth(n)?;
    let gens = minimal_generators(n)?;
    let mut seeds: HashSet<TreeAutomorphism> = HashSet::new();
    for g in all_elements(n) {
        seeds.insert(g.then_unchecked(&g));
        let gi = g.inverse();
        for s in &gens {
            // g^-1 s^-1 g s
            let c = gi
                .then_unchecked(&s.inverse())
                .then_unchecked(&g)
                .then_unchecked(s);
            seeds.insert(c);
        }
    }
    let seeds: Vec<_> = seeds.into_iter().collect();
    Ok(closure(n, &seeds))
}

/// Dimension of `G / V` over F_2, which must equal `n`.
pub fn agemo_rank(n: u32) -> Result<u32> {
    let v = squares_and_commutators(n)?;
    let quotient = group_order(n) / v.len() as u64;
    if !quotient.is_power_of_two() {
        return Err(Error::invariant(format!(
            "|G/V| = {quotient} is not a power of two at depth {n}"
        )));
    }
    let d = quotient.trailing_zeros();
    if d != n {
        return Err(Error::invariant(format!(
            "G/V has dimension {d}, expected {n}"
        )));
    }
    Ok(d)
}

/// All subgroups of index 2, by testing every subset of the group. `n <= 2`.
pub fn index2_subgroups_exhaustive(n: u32) -> Result<Vec<HashSet<TreeAutomorphism>>> {
    check_depth(n)?;
    if n > 2 {
        return Err(Error::limit("exhaustive enumeration depth", n, 2u32));
    }
    let elems = all_elements(n);
    let order = elems.len();
    let mut found = Vec::new();
    for mask in 1u64..1 << order {
        if mask.count_ones() as usize != order / 2 {
            continue;
        }
        let members: HashSet<_> = (0..order)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| elems[i])
            .collect();
        let closed = members.iter().all(|a| {
            members
                .iter()
                .all(|b| members.contains(&a.then_unchecked(b)))
        });
        if closed {
            found.push(members);
        }
    }
    Ok(found)
}

/// Number of index-2 subgroups: `2^d - 1` hyperplanes of `G / V`; for `n <= 2`
/// also counted by exhaustive enumeration, and the two counts must agree.
pub fn count_index2_subgroups(n: u32) -> Result<u64> {
    let d = agemo_rank(n)?;
    let count = (1u64 << d) - 1;
    if n <= 2 {
        let brute = index2_subgroups_exhaustive(n)?.len() as u64;
        if brute != count {
            return Err(Error::invariant(format!(
                "hyperplane count {count} differs from exhaustive count {brute} at depth {n}"
            )));
        }
    }
    Ok(count)
}

/// Coordinates of every element in `G / V = F_2^d`, with respect to a
/// greedily chosen basis of coset representatives.
pub fn quotient_coordinates(
    n: u32,
    v: &HashSet<TreeAutomorphism>,
) -> Result<std::collections::HashMap<TreeAutomorphism, u64>> {
    check_depth(n)?;
    let mut coords: std::collections::HashMap<TreeAutomorphism, u64> =
        v.iter().map(|&x| (x, 0)).collect();
    let mut dim = 0;
    for g in all_elements(n) {
        if coords.contains_key(&g) {
            continue;
        }
        // extend the span by g: new cosets are g * (old span)
        let old: Vec<_> = coords.iter().map(|(&x, &c)| (x, c)).collect();
        for (x, c) in old {
            coords.insert(g.then_unchecked(&x), c | 1 << dim);
        }
        dim += 1;
    }
    Ok(coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_laws() {
        let id = TreeAutomorphism::identity(2);
        let g = TreeAutomorphism::new(2, 0b101).unwrap();
        assert_eq!(id.compose(&g).unwrap(), g);
        assert_eq!(g.compose(&id).unwrap(), g);
        let swap = TreeAutomorphism::swap_at(1, 0);
        assert!(swap.compose(&swap).unwrap().is_identity());
        assert!(g.compose(&TreeAutomorphism::identity(3)).is_err());
        assert!(TreeAutomorphism::new(2, 0b1000).is_err());
    }

    #[test]
    fn root_swap_after_left_swap_has_order_four() {
        let r = TreeAutomorphism::swap_at(2, 0);
        let l = TreeAutomorphism::swap_at(2, 1);
        assert_eq!(r.compose(&l).unwrap().order(), 4);
    }

    #[test]
    fn composition_matches_leaf_action() {
        for a in all_elements(3) {
            for b in [0b1u64, 0b110, 0b1010101, 0b1111111] {
                let b = TreeAutomorphism::new(3, b).unwrap();
                let ab = a.compose(&b).unwrap().leaf_permutation();
                let pa = a.leaf_permutation();
                let pb = b.leaf_permutation();
                let expected: Vec<u32> = pb.iter().map(|&i| pa[i as usize]).collect();
                assert_eq!(ab, expected);
            }
        }
    }

    #[test]
    fn inverses() {
        for g in all_elements(3) {
            assert!(g.compose(&g.inverse()).unwrap().is_identity());
            assert!(g.inverse().compose(&g).unwrap().is_identity());
        }
    }

    #[test]
    fn generators_and_closures() {
        for (n, order) in [(1, 2usize), (2, 8), (3, 128)] {
            let gens = minimal_generators(n).unwrap();
            assert_eq!(gens.len(), n as usize);
            assert_eq!(closure(n, &gens).len(), order);
        }
        assert!(matches!(
            minimal_generators(5),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn ranks_and_counts() {
        assert_eq!(agemo_rank(1).unwrap(), 1);
        assert_eq!(agemo_rank(2).unwrap(), 2);
        assert_eq!(squares_and_commutators(2).unwrap().len(), 2);
        assert_eq!(agemo_rank(3).unwrap(), 3);
        assert_eq!(squares_and_commutators(3).unwrap().len(), 16);
        assert_eq!(count_index2_subgroups(1).unwrap(), 1);
        assert_eq!(count_index2_subgroups(2).unwrap(), 3);
        assert_eq!(count_index2_subgroups(3).unwrap(), 7);
    }

    #[test]
    fn exhaustive_subgroups_contain_v() {
        for n in 1..=2 {
            let v = squares_and_commutators(n).unwrap();
            for h in index2_subgroups_exhaustive(n).unwrap() {
                assert!(v.is_subset(&h));
            }
        }
    }

    #[test]
    fn hyperplane_preimages_are_index_two_subgroups() {
        for n in 1..=3 {
            let v = squares_and_commutators(n).unwrap();
            let coords = quotient_coordinates(n, &v).unwrap();
            let elems = all_elements(n);
            for phi in 1u64..1 << n {
                let h: HashSet<_> = elems
                    .iter()
                    .copied()
                    .filter(|g| (coords[g] & phi).count_ones().is_multiple_of(2))
                    .collect();
                assert_eq!(h.len() as u64 * 2, group_order(n));
                for a in &h {
                    for b in &h {
                        assert!(h.contains(&a.then_unchecked(b)));
                    }
                }
            }
        }
    }
}
