//! Seeded random quadtrees.
//!
//! Every node draws its split decision from its own ChaCha8 stream: the
//! generator is seeded from the configuration seed and the stream id is the
//! node's packed key. A node's fate therefore depends only on `(seed, key)`,
//! which makes trees reproducible and independent of traversal order. This
//! generator choice is part of the compatibility contract for generated
//! files; changing it changes every seeded tree.

use alloc::vec::Vec;
use core::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::balance::balance;
use crate::key::{SquareKey, MAX_LEVEL};
use crate::tree::Quadtree;

/// An exact probability `num / den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SplitProb {
    num: u64,
    den: u64,
}

impl SplitProb {
    pub const NEVER: SplitProb = SplitProb { num: 0, den: 1 };
    pub const ALWAYS: SplitProb = SplitProb { num: 1, den: 1 };

    /// `None` unless `den > 0` and `num <= den`.
    pub fn new(num: u64, den: u64) -> Option<SplitProb> {
        (den > 0 && num <= den).then_some(SplitProb { num, den })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// Maps a uniform 64-bit draw onto `[0, den)` and compares with `num`.
    #[inline]
    fn accepts(&self, draw: u64) -> bool {
        (((draw as u128) * (self.den as u128)) >> 64) < self.num as u128
    }
}

impl fmt::Display for SplitProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Parameters for [`generate_random`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RandomCfg {
    pub seed: u64,
    pub max_depth: u8,
    pub split_prob: SplitProb,
    pub balanced: bool,
}

/// The split decision for one node: first word of stream `key.packed()`.
fn node_draw(seed: u64, key: &SquareKey) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(key.packed());
    rng.next_u64()
}

/// Recursive splitting: each node above `max_depth` splits with
/// probability `split_prob`; balanced configurations are then refined
/// with [`balance`].
pub fn generate_random(cfg: &RandomCfg) -> Quadtree {
    let max_depth = cfg.max_depth.min(MAX_LEVEL);
    let mut leaves = Vec::new();
    let mut stack = alloc::vec![SquareKey::ROOT];
    while let Some(node) = stack.pop() {
        if node.level < max_depth && cfg.split_prob.accepts(node_draw(cfg.seed, &node)) {
            stack.extend(node.children());
        } else {
            leaves.push(node);
        }
    }
    leaves.sort_unstable();
    let tree = Quadtree::from_sorted_unchecked(leaves);
    if cfg.balanced {
        balance(&tree).expect("balancing never goes below the deepest leaf")
    } else {
        tree
    }
}

/// Grows a tree to roughly `target_leaves` leaves by repeatedly splitting a
/// uniformly chosen leaf shallower than `max_depth`. Used to size benchmark
/// inputs; the result has between `target_leaves` and `target_leaves + 2`
/// leaves unless every leaf reaches `max_depth` first.
pub fn grow_random(seed: u64, target_leaves: usize, max_depth: u8) -> Quadtree {
    let max_depth = max_depth.min(MAX_LEVEL);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut open = alloc::vec![SquareKey::ROOT];
    let mut done = Vec::new();
    while open.len() + done.len() < target_leaves && !open.is_empty() {
        let pick = (((rng.next_u64() as u128) * (open.len() as u128)) >> 64) as usize;
        let leaf = open.swap_remove(pick);
        if leaf.level >= max_depth {
            done.push(leaf);
        } else {
            open.extend(leaf.children());
        }
    }
    open.append(&mut done);
    open.sort_unstable();
    Quadtree::from_sorted_unchecked(open)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balance::is_balanced;

    fn cfg(seed: u64, max_depth: u8, num: u64, den: u64, balanced: bool) -> RandomCfg {
        RandomCfg {
            seed,
            max_depth,
            split_prob: SplitProb::new(num, den).unwrap(),
            balanced,
        }
    }

    #[test]
    fn never_split_is_root() {
        assert_eq!(generate_random(&cfg(7, 6, 0, 1, false)), Quadtree::root());
    }

    #[test]
    fn always_split_is_full_grid() {
        let t = generate_random(&cfg(7, 2, 1, 1, false));
        assert_eq!(t.len(), 16);
        assert!(t.leaves().iter().all(|k| k.level == 2));
    }

    #[test]
    fn reproducible_and_seed_sensitive() {
        let a = generate_random(&cfg(42, 6, 1, 2, false));
        let b = generate_random(&cfg(42, 6, 1, 2, false));
        assert_eq!(a, b);
        let differs = (0..8).any(|s| generate_random(&cfg(s, 6, 1, 2, false)) != a);
        assert!(differs);
    }

    #[test]
    fn balanced_flag_balances() {
        for seed in 0..20 {
            let t = generate_random(&cfg(seed, 7, 1, 2, true));
            assert!(is_balanced(&t));
            assert!(t.area_is_unit());
        }
    }

    #[test]
    fn invalid_probabilities() {
        assert!(SplitProb::new(1, 0).is_none());
        assert!(SplitProb::new(3, 2).is_none());
        assert!(SplitProb::new(0, 5).is_some());
    }

    #[test]
    fn grow_hits_target() {
        let t = grow_random(3, 1000, 20);
        assert!((1000..=1002).contains(&t.len()));
        assert!(t.area_is_unit());
        assert_eq!(grow_random(3, 1000, 20), t);
        // Depth cap stops growth at the full grid.
        assert_eq!(grow_random(3, 1000, 1).len(), 4);
    }
}
