//! Flat-file formats: trees (JSON and text), colorings, witness
//! certificates, and graph dumps.
//!
//! Every writer emits leaves in canonical `(level, x, y)` order. Readers
//! reject out-of-order input with [`FormatError::NonCanonical`] unless asked
//! to re-canonicalize.

use quadcolor_core::oracle::{Certificate, WitnessReport};
use quadcolor_core::{
    AdjacencyGraph, AdjacencyMode, Color, Coloring, ColoringError, Quadtree, SplitProb, SquareKey,
    TreeError,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const TREE_FORMAT: &str = "quadtree-v1";
pub const COLORING_FORMAT: &str = "coloring-v1";
pub const WITNESS_FORMAT: &str = "witness-v1";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("ParseError: {0}")]
    Json(#[from] serde_json::Error),
    #[error("ParseError: line {line}: {msg}")]
    Text { line: usize, msg: String },
    #[error("ParseError: expected format \"{expected}\", found \"{found}\"")]
    WrongFormat {
        expected: &'static str,
        found: String,
    },
    #[error("KeyRangeError: ({0},{1},{2}) is not a valid square")]
    KeyRange(u64, u64, u64),
    #[error("NonCanonical: entry {0} is out of canonical order or repeated (pass --canonicalize to re-sort)")]
    NonCanonical(SquareKey),
    #[error("ParseError: unknown mode \"{0}\" (expected edge or corner)")]
    Mode(String),
    #[error("ParseError: color {0} does not fit a 32-bit color id")]
    ColorRange(u64),
    #[error("ParseError: split probability \"{0}\" is not a/b or a decimal in [0,1]")]
    SplitProb(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

fn key_from(l: u64, x: u64, y: u64) -> Result<SquareKey, FormatError> {
    let bad = || FormatError::KeyRange(l, x, y);
    let level = u8::try_from(l).map_err(|_| bad())?;
    let x = u32::try_from(x).map_err(|_| bad())?;
    let y = u32::try_from(y).map_err(|_| bad())?;
    SquareKey::new(level, x, y).ok_or_else(bad)
}

/// First key that is not strictly after its predecessor.
fn first_out_of_order(keys: &[SquareKey]) -> Option<SquareKey> {
    keys.windows(2).find(|w| w[0] >= w[1]).map(|w| w[1])
}

fn tree_from_keys(keys: Vec<SquareKey>, canonicalize: bool) -> Result<Quadtree, FormatError> {
    if !canonicalize {
        if let Some(k) = first_out_of_order(&keys) {
            return Err(FormatError::NonCanonical(k));
        }
    }
    Ok(Quadtree::from_leaves(keys)?)
}

#[derive(Serialize, Deserialize)]
struct TreeDoc {
    format: String,
    leaves: Vec<(u64, u64, u64)>,
}

impl TreeDoc {
    fn of(tree: &Quadtree) -> TreeDoc {
        TreeDoc {
            format: TREE_FORMAT.into(),
            leaves: tree
                .leaves()
                .iter()
                .map(|k| (k.level as u64, k.x as u64, k.y as u64))
                .collect(),
        }
    }

    fn into_tree(self, canonicalize: bool) -> Result<Quadtree, FormatError> {
        if self.format != TREE_FORMAT {
            return Err(FormatError::WrongFormat {
                expected: TREE_FORMAT,
                found: self.format,
            });
        }
        let keys = self
            .leaves
            .into_iter()
            .map(|(l, x, y)| key_from(l, x, y))
            .collect::<Result<Vec<_>, _>>()?;
        tree_from_keys(keys, canonicalize)
    }
}

/// `{"format":"quadtree-v1","leaves":[[level,x,y],...]}` plus a newline.
pub fn tree_to_json(tree: &Quadtree) -> String {
    let mut s = serde_json::to_string(&TreeDoc::of(tree)).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn tree_from_json(src: &str, canonicalize: bool) -> Result<Quadtree, FormatError> {
    serde_json::from_str::<TreeDoc>(src)?.into_tree(canonicalize)
}

/// Header line `quadtree-v1`, then one `level x y` line per leaf.
pub fn tree_to_text(tree: &Quadtree) -> String {
    let mut s = String::with_capacity(12 + tree.len() * 12);
    s.push_str(TREE_FORMAT);
    s.push('\n');
    for k in tree.leaves() {
        s.push_str(&format!("{} {} {}\n", k.level, k.x, k.y));
    }
    s
}

pub fn tree_from_text(src: &str, canonicalize: bool) -> Result<Quadtree, FormatError> {
    let mut lines = src
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, TREE_FORMAT)) => {}
        Some((_, other)) => {
            return Err(FormatError::WrongFormat {
                expected: TREE_FORMAT,
                found: other.to_string(),
            })
        }
        None => {
            return Err(FormatError::Text {
                line: 1,
                msg: "empty input".into(),
            })
        }
    }
    let mut keys = Vec::new();
    for (line, text) in lines {
        let nums: Vec<u64> = text
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|e| FormatError::Text {
                line,
                msg: format!("{e}"),
            })?;
        let [l, x, y] = nums[..] else {
            return Err(FormatError::Text {
                line,
                msg: format!("expected three integers, found {}", nums.len()),
            });
        };
        keys.push(key_from(l, x, y)?);
    }
    tree_from_keys(keys, canonicalize)
}

/// Accepts either tree format, told apart by the first non-blank byte.
pub fn parse_tree(src: &str, canonicalize: bool) -> Result<Quadtree, FormatError> {
    if src.trim_start().starts_with('{') {
        tree_from_json(src, canonicalize)
    } else {
        tree_from_text(src, canonicalize)
    }
}

pub fn parse_mode(s: &str) -> Result<AdjacencyMode, FormatError> {
    s.parse().map_err(|_| FormatError::Mode(s.to_string()))
}

#[derive(Serialize, Deserialize)]
struct ColoringDoc {
    format: String,
    mode: String,
    colors: Vec<(u64, u64, u64, u64)>,
}

impl ColoringDoc {
    fn of(c: &Coloring) -> ColoringDoc {
        ColoringDoc {
            format: COLORING_FORMAT.into(),
            mode: c.mode().as_str().into(),
            colors: c
                .iter()
                .map(|(k, col)| (k.level as u64, k.x as u64, k.y as u64, col as u64))
                .collect(),
        }
    }

    fn into_coloring(self, canonicalize: bool) -> Result<Coloring, FormatError> {
        if self.format != COLORING_FORMAT {
            return Err(FormatError::WrongFormat {
                expected: COLORING_FORMAT,
                found: self.format,
            });
        }
        let mode = parse_mode(&self.mode)?;
        let pairs = self
            .colors
            .into_iter()
            .map(|(l, x, y, c)| {
                let color = Color::try_from(c).map_err(|_| FormatError::ColorRange(c))?;
                Ok((key_from(l, x, y)?, color))
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        if !canonicalize {
            let keys: Vec<SquareKey> = pairs.iter().map(|p| p.0).collect();
            if let Some(k) = first_out_of_order(&keys) {
                return Err(FormatError::NonCanonical(k));
            }
        }
        Ok(Coloring::from_pairs(pairs, mode)?)
    }
}

/// `{"format":"coloring-v1","mode":"edge|corner","colors":[[level,x,y,color],...]}`.
pub fn coloring_to_json(c: &Coloring) -> String {
    let mut s = serde_json::to_string(&ColoringDoc::of(c)).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn coloring_from_json(src: &str, canonicalize: bool) -> Result<Coloring, FormatError> {
    serde_json::from_str::<ColoringDoc>(src)?.into_coloring(canonicalize)
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    mode: String,
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// `{"mode":"edge|corner","n":N,"edges":[[i,j],...]}`, `i < j`, sorted.
pub fn graph_to_json(g: &AdjacencyGraph) -> String {
    let doc = GraphDoc {
        mode: g.mode().as_str().into(),
        n: g.len(),
        edges: g.edges().collect(),
    };
    let mut s = serde_json::to_string(&doc).expect("plain data serializes");
    s.push('\n');
    s
}

#[derive(Serialize, Deserialize)]
struct WitnessDoc {
    format: String,
    found: bool,
    mode: String,
    target_chi: usize,
    require_balanced: bool,
    chi: usize,
    k_minus_1_exhausted: bool,
    k_minus_1_nodes: u64,
    candidates_tried: usize,
    candidate_index: usize,
    tree: TreeDoc,
    coloring: ColoringDoc,
}

/// A parsed witness certificate file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessFile {
    pub found: bool,
    pub target_chi: usize,
    pub require_balanced: bool,
    pub candidates_tried: usize,
    pub certificate: Certificate,
}

/// The report's best certificate with the search summary, or `None` when
/// nothing was certified.
pub fn witness_to_json(report: &WitnessReport) -> Option<String> {
    let cert = report.best.as_ref()?;
    let doc = WitnessDoc {
        format: WITNESS_FORMAT.into(),
        found: report.found,
        mode: report.mode.as_str().into(),
        target_chi: report.target_chi,
        require_balanced: report.require_balanced,
        chi: cert.chi,
        k_minus_1_exhausted: cert.k_minus_1_exhausted,
        k_minus_1_nodes: cert.k_minus_1_nodes,
        candidates_tried: report.candidates_tried,
        candidate_index: cert.candidate_index,
        tree: TreeDoc::of(&cert.tree),
        coloring: ColoringDoc::of(&cert.coloring),
    };
    let mut s = serde_json::to_string(&doc).expect("plain data serializes");
    s.push('\n');
    Some(s)
}

pub fn witness_from_json(src: &str) -> Result<WitnessFile, FormatError> {
    let doc: WitnessDoc = serde_json::from_str(src)?;
    if doc.format != WITNESS_FORMAT {
        return Err(FormatError::WrongFormat {
            expected: WITNESS_FORMAT,
            found: doc.format,
        });
    }
    let mode = parse_mode(&doc.mode)?;
    let tree = doc.tree.into_tree(false)?;
    let coloring = doc.coloring.into_coloring(false)?;
    if coloring.mode() != mode {
        return Err(FormatError::Mode(doc.mode));
    }
    Ok(WitnessFile {
        found: doc.found,
        target_chi: doc.target_chi,
        require_balanced: doc.require_balanced,
        candidates_tried: doc.candidates_tried,
        certificate: Certificate {
            tree,
            chi: doc.chi,
            coloring,
            k_minus_1_exhausted: doc.k_minus_1_exhausted,
            k_minus_1_nodes: doc.k_minus_1_nodes,
            candidate_index: doc.candidate_index,
        },
    })
}

/// `a/b` or a finite decimal such as `0.25`, both exact.
pub fn parse_split_prob(s: &str) -> Result<SplitProb, FormatError> {
    let bad = || FormatError::SplitProb(s.to_string());
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().parse().map_err(|_| bad())?;
        return SplitProb::new(a, b).ok_or_else(bad);
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits_ok = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
    if (int.is_empty() && frac.is_empty()) || !digits_ok(int) || !digits_ok(frac) || frac.len() > 18
    {
        return Err(bad());
    }
    let den = 10u64.pow(frac.len() as u32);
    let int: u64 = if int.is_empty() {
        0
    } else {
        int.parse().map_err(|_| bad())?
    };
    let frac: u64 = if frac.is_empty() {
        0
    } else {
        frac.parse().map_err(|_| bad())?
    };
    let num = int
        .checked_mul(den)
        .and_then(|v| v.checked_add(frac))
        .ok_or_else(bad)?;
    SplitProb::new(num, den).ok_or_else(bad)
}
