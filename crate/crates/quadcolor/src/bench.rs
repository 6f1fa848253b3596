//! Timing the three coloring algorithms on seeded trees of growing size.

use std::fmt::Write;
use std::hint::black_box;
use std::time::Instant;

use quadcolor_core::{
    balance, color_balanced_3, color_corner_6, color_edge_4, grow_random, Coloring, ColoringError,
    Quadtree, MAX_LEVEL,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Algo {
    Balanced3,
    Edge4,
    Corner6,
}

impl Algo {
    pub fn as_str(&self) -> &'static str {
        match self {
            Algo::Balanced3 => "balanced3",
            Algo::Edge4 => "edge4",
            Algo::Corner6 => "corner6",
        }
    }

    pub fn run(&self, tree: &Quadtree) -> Result<Coloring, ColoringError> {
        match self {
            Algo::Balanced3 => color_balanced_3(tree),
            Algo::Edge4 => color_edge_4(tree),
            Algo::Corner6 => color_corner_6(tree),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub target: usize,
    pub leaves: usize,
    /// Fastest of the timed repetitions.
    pub seconds: f64,
    /// `seconds` over the previous row's.
    pub ratio: Option<f64>,
}

/// A seeded tree with about `target` leaves. For `balanced3` the grown
/// tree is balanced, and the growth target is rescaled until the balanced
/// result lands within 10% of `target`.
pub fn bench_tree(seed: u64, target: usize, algo: Algo) -> Quadtree {
    if algo != Algo::Balanced3 {
        return grow_random(seed, target, MAX_LEVEL);
    }
    let mut grow = target;
    let mut tree = Quadtree::root();
    for _ in 0..6 {
        tree = balance(&grow_random(seed, grow, MAX_LEVEL)).expect("depth stays below the limit");
        let n = tree.len();
        if n.abs_diff(target) * 10 <= target {
            break;
        }
        grow = ((grow as u128 * target as u128) / n.max(1) as u128).max(1) as usize;
    }
    tree
}

/// Minimum wall time of `reps` runs of `algo` on `tree`.
pub fn time_algo(tree: &Quadtree, algo: Algo, reps: usize) -> Result<f64, ColoringError> {
    let mut best = f64::INFINITY;
    for _ in 0..reps.max(1) {
        let start = Instant::now();
        let c = algo.run(black_box(tree))?;
        best = best.min(start.elapsed().as_secs_f64());
        black_box(c);
    }
    Ok(best)
}

pub fn bench(
    sizes: &[usize],
    algo: Algo,
    seed: u64,
    reps: usize,
) -> Result<Vec<BenchRow>, ColoringError> {
    let mut rows: Vec<BenchRow> = Vec::with_capacity(sizes.len());
    for &target in sizes {
        let tree = bench_tree(seed, target, algo);
        let seconds = time_algo(&tree, algo, reps)?;
        let ratio = rows.last().map(|prev| seconds / prev.seconds);
        rows.push(BenchRow {
            target,
            leaves: tree.len(),
            seconds,
            ratio,
        });
    }
    Ok(rows)
}

pub fn format_table(algo: Algo, rows: &[BenchRow]) -> String {
    let mut s = format!("algo {}\n", algo.as_str());
    let _ = writeln!(
        s,
        "{:>10} {:>10} {:>12} {:>12} {:>7}",
        "target", "leaves", "seconds", "ns/leaf", "ratio"
    );
    for r in rows {
        let ratio = r
            .ratio
            .map_or_else(|| "-".to_string(), |x| format!("{x:.2}"));
        let _ = writeln!(
            s,
            "{:>10} {:>10} {:>12.6} {:>12.1} {:>7}",
            r.target,
            r.leaves,
            r.seconds,
            r.seconds * 1e9 / r.leaves.max(1) as f64,
            ratio
        );
    }
    s
}
