//! Colored bipartite gap instances and everything that produces them:
//! parameter preprocessing, left-side duplication, coloring attachment, and
//! seeded synthetic generators whose promises are brute-force verified
//! before an instance leaves this module.
//!
//! The external reduction that would produce such instances from real clique
//! inputs is out of scope; its output contract is modeled by
//! [`GapBicliqueInstance`] and realized by the verified generators here.

use crate::colorcoding::{binomial, build_family, FamilyError, HashFamily};
use crate::detrand::SplitMix64;
use crate::frac::Frac;
use crate::graphs::{BipartiteGraph, ColoredBipartiteGraph, Graph, GraphError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Subset-enumeration cap for the brute-force promise verifiers.
pub const ENUM_CAP: u128 = 10_000_000;

/// Bounded retries for rejection-sampled sparse instances.
pub const NO_RETRY_BUDGET: u64 = 64;

const COLORED_VERTEX_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GapError {
    #[error("bad range: {0}")]
    BadRange(String),
    #[error("{count} subsets exceed the enumeration cap {cap}")]
    EnumCap { count: u128, cap: u128 },
    #[error("colored output would have {vertices} vertices (cap {cap})")]
    VertexCap { vertices: usize, cap: usize },
    #[error("promise verification failed: {0}")]
    PromiseViolated(String),
    #[error("gave up after {attempts} seeds; lower edge_prob or the sparsity requirement")]
    RetriesExhausted { attempts: u64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Promise {
    #[serde(rename = "YES")]
    Yes,
    #[serde(rename = "NO")]
    No,
    #[serde(rename = "UNKNOWN")]
    Unknown,
}

/// A bipartite instance promised to either contain `s` left vertices with at
/// least `d` common neighbors (YES) or to have no dense common neighborhoods
/// at all (NO).
///
/// `dup_factor` tracks how many times the left side has been duplicated; a
/// NO promise then applies to every subset of `s - dup_factor + 1` left
/// vertices, which is what downstream constructions rely on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapBicliqueInstance {
    pub graph: BipartiteGraph,
    pub s: usize,
    pub d: usize,
    pub no_threshold: usize,
    pub promise: Promise,
    pub seed: u64,
    pub dup_factor: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct InstanceJson {
    a_size: usize,
    b_size: usize,
    edges: Vec<(u32, u32)>,
    s: usize,
    d: usize,
    no_threshold: usize,
    promise: Promise,
    seed: u64,
    #[serde(default = "one")]
    delta: usize,
}

fn one() -> usize {
    1
}

impl GapBicliqueInstance {
    /// Subset size the NO promise quantifies over.
    pub fn no_subset_size(&self) -> usize {
        self.s + 1 - self.dup_factor
    }

    pub fn to_json(&self) -> String {
        let repr = InstanceJson {
            a_size: self.graph.a_size(),
            b_size: self.graph.b_size(),
            edges: self.graph.edges(),
            s: self.s,
            d: self.d,
            no_threshold: self.no_threshold,
            promise: self.promise,
            seed: self.seed,
            delta: self.dup_factor,
        };
        serde_json::to_string(&repr).expect("instance serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, GapError> {
        let repr: InstanceJson =
            serde_json::from_str(text).map_err(|e| GapError::BadRange(format!("json: {e}")))?;
        if repr.delta == 0 || repr.s == 0 || repr.s < repr.delta {
            return Err(GapError::BadRange(
                "need s >= delta >= 1 in instance".into(),
            ));
        }
        let mut graph = BipartiteGraph::new(repr.a_size, repr.b_size);
        for (a, b) in repr.edges {
            graph.add_edge(a, b)?;
        }
        Ok(Self {
            graph,
            s: repr.s,
            d: repr.d,
            no_threshold: repr.no_threshold,
            promise: repr.promise,
            seed: repr.seed,
            dup_factor: repr.delta,
        })
    }

    /// Brute-force checks the stated promise. `Ok` verdicts certify it; an
    /// `Err(PromiseViolated)` carries the refuting witness.
    pub fn verify_promise(&self) -> Result<PromiseCheck, GapError> {
        match self.promise {
            Promise::Unknown => Ok(PromiseCheck::NothingToVerify),
            Promise::Yes => {
                let (count, witness) = max_common_neighbors(&self.graph, self.s)?;
                if count >= self.d {
                    Ok(PromiseCheck::YesHolds { count, witness })
                } else {
                    Err(GapError::PromiseViolated(format!(
                        "max common neighborhood over {}-subsets is {count} < d={}",
                        self.s, self.d
                    )))
                }
            }
            Promise::No => {
                let size = self.no_subset_size();
                match verify_no_promise(&self.graph, size, self.no_threshold)? {
                    None => Ok(PromiseCheck::NoHolds { subset_size: size }),
                    Some(witness) => Err(GapError::PromiseViolated(format!(
                        "left subset {witness:?} has more than {} common neighbors",
                        self.no_threshold
                    ))),
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PromiseCheck {
    YesHolds { count: usize, witness: Vec<u32> },
    NoHolds { subset_size: usize },
    NothingToVerify,
}

// ---------------------------------------------------------------------------
// Preprocessing
// ---------------------------------------------------------------------------

/// Output of [`preprocess`]: the padded graph, the adjusted parameter, and
/// the ids of the universal vertices that were added.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreprocessResult {
    pub graph: Graph,
    pub k_out: usize,
    pub added: Vec<u32>,
}

/// Pads `k` up to the smallest `k' >= k` with `6 | k' + 1`, adding `k' - k`
/// universal vertices (a clique joined to everything) so that the input has
/// a k-clique iff the output has a k'-clique.
pub fn preprocess(g: &Graph, k: usize) -> PreprocessResult {
    let mut k_out = k;
    while !(k_out + 1).is_multiple_of(6) {
        k_out += 1;
    }
    let extra = k_out - k;
    let n = g.n();
    let mut out = Graph::new(n + extra);
    for (u, v) in g.edges() {
        out.add_edge(u, v).expect("original edges stay in range");
    }
    let added: Vec<u32> = (n as u32 + 1..=(n + extra) as u32).collect();
    for &w in &added {
        for v in 1..=(n + extra) as u32 {
            if v != w {
                out.add_edge(w, v).expect("universal edges in range");
            }
        }
    }
    PreprocessResult {
        graph: out,
        k_out,
        added,
    }
}

// ---------------------------------------------------------------------------
// Common-neighborhood oracles
// ---------------------------------------------------------------------------

fn b_masks(h: &BipartiteGraph) -> Vec<Vec<u64>> {
    let words = h.b_size().div_ceil(64).max(1);
    (1..=h.a_size() as u32)
        .map(|a| {
            let mut mask = vec![0u64; words];
            for &b in h.neighbors_of_a(a) {
                let i = b as usize - 1;
                mask[i / 64] |= 1 << (i % 64);
            }
            mask
        })
        .collect()
}

fn popcount(mask: &[u64]) -> usize {
    mask.iter().map(|w| w.count_ones() as usize).sum()
}

struct CommonSearch<'a> {
    a_size: usize,
    s: usize,
    masks: &'a [Vec<u64>],
    best: usize,
    witness: Vec<u32>,
    found: bool,
}

impl CommonSearch<'_> {
    fn run(&mut self, start: u32, acc: Option<&Vec<u64>>, chosen: &mut Vec<u32>) {
        if chosen.len() == self.s {
            let current = popcount(acc.expect("s >= 1"));
            if !self.found || current > self.best {
                self.best = current;
                self.witness = chosen.clone();
                self.found = true;
            }
            return;
        }
        let need = self.s - chosen.len();
        for a in start..=(self.a_size - need + 1) as u32 {
            let next_mask: Vec<u64> = match acc {
                None => self.masks[a as usize - 1].clone(),
                Some(prev) => prev
                    .iter()
                    .zip(&self.masks[a as usize - 1])
                    .map(|(x, y)| x & y)
                    .collect(),
            };
            // Intersections only shrink, so a branch already at or below the
            // incumbent cannot beat it; the incumbent is updated on strict
            // improvement only, which keeps the first witness in subset
            // order.
            if self.found && popcount(&next_mask) <= self.best {
                continue;
            }
            chosen.push(a);
            self.run(a + 1, Some(&next_mask), chosen);
            chosen.pop();
        }
    }
}

/// Maximum, over all s-subsets `S` of the left part, of the number of common
/// neighbors of `S`, with the lexicographically least attaining subset.
pub fn max_common_neighbors(h: &BipartiteGraph, s: usize) -> Result<(usize, Vec<u32>), GapError> {
    if s == 0 || s > h.a_size() {
        return Err(GapError::BadRange(format!(
            "need 1 <= s <= a_size, got s={s}, a_size={}",
            h.a_size()
        )));
    }
    let count = binomial(h.a_size(), s);
    if count > ENUM_CAP {
        return Err(GapError::EnumCap {
            count,
            cap: ENUM_CAP,
        });
    }
    let masks = b_masks(h);
    let mut search = CommonSearch {
        a_size: h.a_size(),
        s,
        masks: &masks,
        best: 0,
        witness: (1..=s as u32).collect(),
        found: false,
    };
    let mut chosen: Vec<u32> = Vec::with_capacity(s);
    search.run(1, None, &mut chosen);
    let CommonSearch { best, witness, .. } = search;
    Ok((best, witness))
}

/// Checks that every `subset_size`-subset of the left part has at most
/// `threshold` common neighbors; returns the lexicographically first
/// violating subset otherwise.
pub fn verify_no_promise(
    h: &BipartiteGraph,
    subset_size: usize,
    threshold: usize,
) -> Result<Option<Vec<u32>>, GapError> {
    if subset_size == 0 || subset_size > h.a_size() {
        return Err(GapError::BadRange(format!(
            "need 1 <= subset size <= a_size, got {subset_size} vs {}",
            h.a_size()
        )));
    }
    let count = binomial(h.a_size(), subset_size);
    if count > ENUM_CAP {
        return Err(GapError::EnumCap {
            count,
            cap: ENUM_CAP,
        });
    }
    let masks = b_masks(h);
    let mut chosen: Vec<u32> = Vec::with_capacity(subset_size);
    fn recurse(
        a_size: usize,
        need: usize,
        threshold: usize,
        masks: &[Vec<u64>],
        start: u32,
        acc: Option<&Vec<u64>>,
        chosen: &mut Vec<u32>,
    ) -> Option<Vec<u32>> {
        if need == 0 {
            let common = acc.map(|m| popcount(m)).unwrap_or(0);
            if common > threshold {
                return Some(chosen.clone());
            }
            return None;
        }
        for a in start..=(a_size - need + 1) as u32 {
            let next: Vec<u64> = match acc {
                None => masks[a as usize - 1].clone(),
                Some(prev) => prev
                    .iter()
                    .zip(&masks[a as usize - 1])
                    .map(|(x, y)| x & y)
                    .collect(),
            };
            // Once the running intersection is within the threshold the
            // whole branch is safe.
            if popcount(&next) <= threshold {
                continue;
            }
            chosen.push(a);
            if let Some(w) = recurse(
                a_size,
                need - 1,
                threshold,
                masks,
                a + 1,
                Some(&next),
                chosen,
            ) {
                return Some(w);
            }
            chosen.pop();
        }
        None
    }
    Ok(recurse(
        h.a_size(),
        subset_size,
        threshold,
        &masks,
        1,
        None,
        &mut chosen,
    ))
}

// ---------------------------------------------------------------------------
// Duplication and colorings
// ---------------------------------------------------------------------------

/// Replaces the left part by `dup` copies of itself, each copy keeping the
/// original neighborhood. Copy `(u, i)` becomes id `(u-1)*dup + i`. The
/// YES side scales to `dup*s` vertices with the same common neighborhood;
/// the NO promise now covers every `dup*(s-1)+1` left vertices, which holds
/// because that many copies always include `s` distinct originals.
pub fn duplicate_side(inst: &GapBicliqueInstance, dup: usize) -> GapBicliqueInstance {
    assert!(dup >= 1, "duplication factor must be positive");
    let a0 = inst.graph.a_size();
    let mut graph = BipartiteGraph::new(a0 * dup, inst.graph.b_size());
    for (u, b) in inst.graph.edges() {
        for i in 1..=dup as u32 {
            let copy = (u - 1) * dup as u32 + i;
            graph.add_edge(copy, b).expect("duplicated edges in range");
        }
    }
    let out = GapBicliqueInstance {
        graph,
        s: inst.s * dup,
        d: inst.d,
        no_threshold: inst.no_threshold,
        promise: inst.promise,
        seed: inst.seed,
        dup_factor: inst.dup_factor * dup,
    };
    // Re-certify the promise whenever the subset space stays enumerable.
    match out.promise {
        Promise::Yes => {
            if binomial(out.graph.a_size(), out.s) <= ENUM_CAP {
                out.verify_promise()
                    .expect("duplication preserves a verified YES promise");
            }
        }
        Promise::No => {
            if binomial(out.graph.a_size(), out.no_subset_size()) <= ENUM_CAP {
                out.verify_promise()
                    .expect("duplication preserves a verified NO promise");
            }
        }
        Promise::Unknown => {}
    }
    out
}

/// A colored instance built with hash-family colorings, retaining the
/// families and block geometry for witness extraction and tests.
#[derive(Debug, Clone)]
pub struct ColoredGapGraph {
    pub cbg: ColoredBipartiteGraph,
    pub family_a: HashFamily,
    pub family_b: HashFamily,
    pub base_a: usize,
    pub base_b: usize,
}

impl ColoredGapGraph {
    pub fn block_count(&self) -> usize {
        self.family_a.len() * self.family_b.len()
    }

    /// Left vertex id of base vertex `u` inside block `block` (0-based).
    pub fn a_id(&self, block: usize, u: u32) -> u32 {
        (block * self.base_a) as u32 + u
    }

    pub fn b_id(&self, block: usize, v: u32) -> u32 {
        (block * self.base_b) as u32 + v
    }
}

/// Blows the instance up into one block per pair of coloring functions:
/// vertices are `(original, h1, h2)` with edges only inside matching
/// `(h1, h2)` blocks, colored by `h1` on the left and `h2` on the right.
pub fn attach_colorings(
    inst: &GapBicliqueInstance,
    a_colors: usize,
    b_colors: usize,
) -> Result<ColoredGapGraph, GapError> {
    let a_size = inst.graph.a_size();
    let b_size = inst.graph.b_size();
    if a_colors > a_size || b_colors > b_size {
        return Err(GapError::BadRange(format!(
            "need a_colors <= {a_size} and b_colors <= {b_size}"
        )));
    }
    let family_a = build_family(a_size, a_colors)?.family;
    let family_b = build_family(b_size, b_colors)?.family;
    let blocks = family_a.len() * family_b.len();
    let total = blocks * (a_size + b_size);
    if total > COLORED_VERTEX_CAP {
        return Err(GapError::VertexCap {
            vertices: total,
            cap: COLORED_VERTEX_CAP,
        });
    }

    let mut graph = BipartiteGraph::new(blocks * a_size, blocks * b_size);
    let base_edges = inst.graph.edges();
    let mut alpha = Vec::with_capacity(blocks * a_size);
    let mut beta = Vec::with_capacity(blocks * b_size);
    for h1 in 0..family_a.len() {
        for h2 in 0..family_b.len() {
            let block = h1 * family_b.len() + h2;
            for (u, v) in &base_edges {
                graph
                    .add_edge((block * a_size) as u32 + u, (block * b_size) as u32 + v)
                    .expect("block edges in range");
            }
            for u in 1..=a_size as u32 {
                alpha.push(family_a.apply(h1, u));
            }
            for v in 1..=b_size as u32 {
                beta.push(family_b.apply(h2, v));
            }
        }
    }
    let cbg = ColoredBipartiteGraph::new(graph, a_colors, b_colors, alpha, beta)?;
    Ok(ColoredGapGraph {
        cbg,
        family_a,
        family_b,
        base_a: a_size,
        base_b: b_size,
    })
}

/// Single-block coloring that just cycles colors along each side. Keeps tiny
/// instances tiny while staying surjective, which is all the desk-scale
/// constructions need.
pub fn attach_cyclic_colorings(
    inst: &GapBicliqueInstance,
    a_colors: usize,
    b_colors: usize,
) -> Result<ColoredBipartiteGraph, GapError> {
    let a_size = inst.graph.a_size();
    let b_size = inst.graph.b_size();
    if a_colors > a_size || b_colors > b_size {
        return Err(GapError::BadRange(format!(
            "need a_colors <= {a_size} and b_colors <= {b_size}"
        )));
    }
    let alpha: Vec<u32> = (0..a_size).map(|i| (i % a_colors) as u32 + 1).collect();
    let beta: Vec<u32> = (0..b_size).map(|i| (i % b_colors) as u32 + 1).collect();
    Ok(ColoredBipartiteGraph::new(
        inst.graph.clone(),
        a_colors,
        b_colors,
        alpha,
        beta,
    )?)
}

// ---------------------------------------------------------------------------
// Synthetic generators
// ---------------------------------------------------------------------------

/// Plants a complete `s x d` biclique on the prefix vertices, pads both
/// sides, sprinkles seeded noise outside the planted block, and verifies the
/// YES promise before returning.
pub fn synth_yes_instance(
    s: usize,
    d: usize,
    left_pad: usize,
    right_pad: usize,
    seed: u64,
) -> Result<GapBicliqueInstance, GapError> {
    if s == 0 || d == 0 {
        return Err(GapError::BadRange("need s >= 1 and d >= 1".into()));
    }
    let a_size = s + left_pad;
    let b_size = d + right_pad;
    if binomial(a_size, s) > ENUM_CAP {
        return Err(GapError::EnumCap {
            count: binomial(a_size, s),
            cap: ENUM_CAP,
        });
    }
    let mut graph = BipartiteGraph::new(a_size, b_size);
    for a in 1..=s as u32 {
        for b in 1..=d as u32 {
            graph.add_edge(a, b).expect("planted edges in range");
        }
    }
    let mut rng = SplitMix64::new(seed);
    for a in 1..=a_size as u32 {
        for b in 1..=b_size as u32 {
            let planted = a as usize <= s && b as usize <= d;
            if !planted && rng.chance(1, 3) {
                graph.add_edge(a, b).expect("noise edges in range");
            }
        }
    }
    let inst = GapBicliqueInstance {
        graph,
        s,
        d,
        no_threshold: 0,
        promise: Promise::Yes,
        seed,
        dup_factor: 1,
    };
    inst.verify_promise()?;
    Ok(inst)
}

/// Seeded sparse instance whose every `s`-subset of the left part has at
/// most `no_threshold` common neighbors, verified by brute force. Retries
/// with incremented seeds up to [`NO_RETRY_BUDGET`] times.
pub fn synth_no_instance(
    s: usize,
    no_threshold: usize,
    a_size: usize,
    b_size: usize,
    edge_prob: Frac,
    seed: u64,
) -> Result<GapBicliqueInstance, GapError> {
    if s == 0 || s > a_size {
        return Err(GapError::BadRange(format!(
            "need 1 <= s <= a_size, got s={s}, a_size={a_size}"
        )));
    }
    if binomial(a_size, s) > ENUM_CAP {
        return Err(GapError::EnumCap {
            count: binomial(a_size, s),
            cap: ENUM_CAP,
        });
    }
    for attempt in 0..NO_RETRY_BUDGET {
        let actual_seed = seed.wrapping_add(attempt);
        let mut rng = SplitMix64::new(actual_seed);
        let mut graph = BipartiteGraph::new(a_size, b_size);
        for a in 1..=a_size as u32 {
            for b in 1..=b_size as u32 {
                if !edge_prob.is_zero() && rng.chance(edge_prob.num(), edge_prob.den()) {
                    graph.add_edge(a, b).expect("sampled edges in range");
                }
            }
        }
        if verify_no_promise(&graph, s, no_threshold)?.is_none() {
            return Ok(GapBicliqueInstance {
                graph,
                s,
                d: 0,
                no_threshold,
                promise: Promise::No,
                seed: actual_seed,
                dup_factor: 1,
            });
        }
    }
    Err(GapError::RetriesExhausted {
        attempts: NO_RETRY_BUDGET,
    })
}

// ---------------------------------------------------------------------------
// Directly colored generators for the graph constructions
// ---------------------------------------------------------------------------

/// Colored YES instance with a planted rainbow biclique: left prefix
/// `1..=a_colors` and right prefix `1..=b_colors` are completely joined and
/// rainbow under the cyclic colorings. Returns the planted sides.
pub fn planted_colored_yes(
    a_colors: usize,
    b_colors: usize,
    a_size: usize,
    b_size: usize,
    seed: u64,
) -> Result<(ColoredBipartiteGraph, Vec<u32>, Vec<u32>), GapError> {
    if a_size < a_colors || b_size < b_colors || a_colors == 0 || b_colors == 0 {
        return Err(GapError::BadRange(format!(
            "need a_size >= a_colors >= 1 and b_size >= b_colors >= 1, got \
             ({a_size},{a_colors}) and ({b_size},{b_colors})"
        )));
    }
    let mut graph = BipartiteGraph::new(a_size, b_size);
    for a in 1..=a_colors as u32 {
        for b in 1..=b_colors as u32 {
            graph.add_edge(a, b).expect("planted edges in range");
        }
    }
    let mut rng = SplitMix64::new(seed);
    for a in 1..=a_size as u32 {
        for b in 1..=b_size as u32 {
            let planted = a as usize <= a_colors && b as usize <= b_colors;
            if !planted && rng.chance(1, 4) {
                graph.add_edge(a, b).expect("noise edges in range");
            }
        }
    }
    let alpha: Vec<u32> = (0..a_size).map(|i| (i % a_colors) as u32 + 1).collect();
    let beta: Vec<u32> = (0..b_size).map(|i| (i % b_colors) as u32 + 1).collect();
    let cbg = ColoredBipartiteGraph::new(graph, a_colors, b_colors, alpha, beta)?;
    let left: Vec<u32> = (1..=a_colors as u32).collect();
    let right: Vec<u32> = (1..=b_colors as u32).collect();
    Ok((cbg, left, right))
}

/// Colored NO-side instance: seeded sparse edges under cyclic colorings,
/// verified so that every `subset_size`-subset of the left part has at most
/// `max_common` common neighbors. Retries seeds like [`synth_no_instance`].
#[allow(clippy::too_many_arguments)]
pub fn sparse_colored_no(
    a_colors: usize,
    b_colors: usize,
    a_size: usize,
    b_size: usize,
    subset_size: usize,
    max_common: usize,
    edge_prob: Frac,
    seed: u64,
) -> Result<ColoredBipartiteGraph, GapError> {
    if a_size < a_colors || b_size < b_colors || a_colors == 0 || b_colors == 0 {
        return Err(GapError::BadRange(
            "sides must be at least as large as their color counts".into(),
        ));
    }
    if subset_size == 0 || subset_size > a_size {
        return Err(GapError::BadRange(format!(
            "need 1 <= subset_size <= a_size, got {subset_size} vs {a_size}"
        )));
    }
    for attempt in 0..NO_RETRY_BUDGET {
        let actual_seed = seed.wrapping_add(attempt);
        let mut rng = SplitMix64::new(actual_seed);
        let mut graph = BipartiteGraph::new(a_size, b_size);
        for a in 1..=a_size as u32 {
            for b in 1..=b_size as u32 {
                if !edge_prob.is_zero() && rng.chance(edge_prob.num(), edge_prob.den()) {
                    graph.add_edge(a, b).expect("sampled edges in range");
                }
            }
        }
        if verify_no_promise(&graph, subset_size, max_common)?.is_none() {
            let alpha: Vec<u32> = (0..a_size).map(|i| (i % a_colors) as u32 + 1).collect();
            let beta: Vec<u32> = (0..b_size).map(|i| (i % b_colors) as u32 + 1).collect();
            return Ok(ColoredBipartiteGraph::new(
                graph, a_colors, b_colors, alpha, beta,
            )?);
        }
    }
    Err(GapError::RetriesExhausted {
        attempts: NO_RETRY_BUDGET,
    })
}
