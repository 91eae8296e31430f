//! The product gap construction: right-side vertices are replaced by
//! c-tuples grouped into color-pattern classes, left vertices by selector
//! copies indexed by coordinate and copy index, and probe vertices tie the
//! two together. A rainbow biclique in the source yields a dominating set of
//! size `d^c + dup*s*c*t`; sparse instances force solutions larger by a
//! factor growing with `c`.
//!
//! Also here: the exact big-integer parameter derivation for the
//! construction's intended asymptotic regime, and the tuple counting bound
//! (`|V| <= t^c - dup^c` for coordinate-constrained tuple sets) that the
//! soundness argument leans on, checked by brute force.
//!
//! Edge rules:
//!   (P1) tuples with the same color pattern form a clique;
//!   (P2) probe (v, j, i) is adjacent to tuple v' of v's pattern class iff
//!        v and v' differ in every coordinate;
//!   (P3) selector (u, l, i) is adjacent to probe (v, j, i) iff {u, v(l)}
//!        is an input edge and j(l) is u's color;
//!   (P4) selectors with the same (coordinate, copy) form a clique.

use crate::graphs::{is_dominating, ColoredBipartiteGraph, DominatingSetResult, Graph, GraphError};
use crate::manifest::{digest_hex, Manifest, RoleSection};
use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

pub const DEFAULT_VERTEX_CAP: usize = 1_000_000;
pub const TUPLE_SPACE_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("beta color class {color} is empty; its tuple classes would be empty")]
    EmptyColorClass { color: u32 },
    #[error("tuple space has {tuples} elements (cap {cap})")]
    TupleCap { tuples: usize, cap: usize },
    #[error("output would have {vertices} vertices (cap {cap})")]
    VertexCap { vertices: usize, cap: usize },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("witness has wrong shape: {0}")]
    WitnessShape(String),
    #[error("witness is not a biclique: missing edge ({a},{b})")]
    WitnessMissingEdge { a: u32, b: u32 },
    #[error("theta must assign a coordinate in 1..={c} to every tuple; {msg}")]
    BadTheta { msg: String, c: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

// ---------------------------------------------------------------------------
// Parameter derivation
// ---------------------------------------------------------------------------

/// Exact parameters of the product reduction in its intended regime. `d` is
/// astronomically large in its intended regime; it is compute-only and never
/// drives graph construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductParams {
    pub k: usize,
    pub c: usize,
    /// Left-side duplication factor (fixed at 2).
    pub dup: usize,
    pub s: usize,
    /// `(30 * c^2 * (k+1)^2)^(4k^3 + 3c)` before any adjustment.
    pub d_initial: BigUint,
    /// Final `d`, equal to `d_initial` or `d_initial^(2*dup*s)` when the
    /// exponent of `t` would otherwise be fractional.
    pub d: BigUint,
    pub adjusted: bool,
    /// `c * d^(c - 1/(2*dup*s))`, an exact integer after adjustment.
    pub t: BigUint,
    pub regime: ProductRegime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProductRegime {
    /// `d^(1/2 - 1/(2s)) > c * s^c`
    pub root_margin: bool,
    /// `d > (3 * (k+1)!)^(2s)`
    pub factorial_gap: bool,
    /// `d > (10 * dup * s * c^2)^(2 * dup * s)`
    pub degree_gap: bool,
    /// `dup * s * c * t < 0.1 * d^c`
    pub selector_budget: bool,
    /// `c * d^c / (3t) <= d^(1/(2 * dup * s))`
    pub cover_ratio_root: bool,
    /// `(k+1)! < d^(1/(2s)) / 3`
    pub factorial_root: bool,
    /// `c*d^c + c*dup^c*s^c*d^(c - 1/2 + 1/(2s)) < 2*dup^c*d^c`
    pub split_balance: bool,
    pub all: bool,
}

fn factorial(n: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    acc
}

/// Compares `scale * base^(p/q)` with `rhs` exactly by raising both sides to
/// the q-th power.
fn cmp_scaled_root(
    scale: &BigUint,
    base: &BigUint,
    p: u32,
    q: u32,
    rhs: &BigUint,
) -> std::cmp::Ordering {
    (scale.pow(q) * base.pow(p)).cmp(&rhs.pow(q))
}

/// Derives the exact parameter set for `(k, c)`. The modest caps keep the
/// cross-powered comparisons below a few megabits.
pub fn derive_product_params(k: usize, c: usize) -> Result<ProductParams, ProductError> {
    if k < 3 || c < 1 {
        return Err(ProductError::BadParams(format!(
            "need k >= 3 and c >= 1, got k={k}, c={c}"
        )));
    }
    if k > 6 || c > 4 {
        return Err(ProductError::BadParams(format!(
            "k={k}, c={c} would push the exact comparisons past the megabit range; \
             supported region is k <= 6, c <= 4"
        )));
    }
    let dup = 2usize;
    let s = k * (k - 1) / 2;
    let q = (2 * dup * s) as u32;
    let base = BigUint::from(30u32 * (c * c) as u32 * ((k + 1) * (k + 1)) as u32);
    let exp = (4 * k * k * k + 3 * c) as u32;
    let d_initial = base.pow(exp);

    // t = c * d^(c - 1/q) needs d^(1/q) to be an integer; otherwise raise d
    // to the q-th power, which keeps every regime inequality intact.
    let root = d_initial.nth_root(q);
    let integral = root.pow(q) == d_initial;
    let (d, t, adjusted) = if integral {
        let t = BigUint::from(c as u32) * root.pow(q * c as u32 - 1);
        (d_initial.clone(), t, false)
    } else {
        let d = d_initial.pow(q);
        let t = BigUint::from(c as u32) * d_initial.pow(q * c as u32 - 1);
        (d, t, true)
    };

    let c_big = BigUint::from(c as u32);
    let d_pow_c = d.pow(c as u32);
    // d^(1/2 - 1/(2s)) > c*s^c  <=>  d^(s-1) > (c*s^c)^(2s)
    let root_margin = {
        let rhs = c_big.clone() * BigUint::from(s as u32).pow(c as u32);
        d.pow(s as u32 - 1) > rhs.pow(2 * s as u32)
    };
    let factorial_gap = d > (BigUint::from(3u8) * factorial(k + 1)).pow(2 * s as u32);
    let degree_gap = d > BigUint::from((10 * dup * s * c * c) as u64).pow(q);
    // dup*s*c*t < d^c / 10
    let selector_budget = BigUint::from((10 * dup * s * c) as u64) * &t < d_pow_c;
    // c*d^c <= 3t * d^(1/q)  <=>  (c*d^c)^q <= (3t)^q * d
    let cover_ratio_root = {
        let lhs = (c_big.clone() * &d_pow_c).pow(q);
        let rhs = (BigUint::from(3u8) * &t).pow(q) * &d;
        lhs <= rhs
    };
    // (k+1)! < d^(1/(2s)) / 3  <=>  (3*(k+1)!)^(2s) < d
    let factorial_root = (BigUint::from(3u8) * factorial(k + 1)).pow(2 * s as u32) < d;
    // c*d^c + c*dup^c*s^c*d^((2sc - s + 1)/(2s)) < 2*dup^c*d^c
    let split_balance = {
        let dup_pow_c = BigUint::from(dup as u32).pow(c as u32);
        let two_dup_dc = BigUint::from(2u8) * &dup_pow_c * &d_pow_c;
        let c_dc = c_big.clone() * &d_pow_c;
        if two_dup_dc <= c_dc {
            false
        } else {
            let margin = two_dup_dc - c_dc;
            let scale = c_big.clone() * dup_pow_c * BigUint::from(s as u64).pow(c as u32);
            let p = (2 * s * c - s + 1) as u32;
            cmp_scaled_root(&scale, &d, p, 2 * s as u32, &margin).is_lt()
        }
    };
    let all = root_margin
        && factorial_gap
        && degree_gap
        && selector_budget
        && cover_ratio_root
        && factorial_root
        && split_balance;
    Ok(ProductParams {
        k,
        c,
        dup,
        s,
        d_initial,
        d,
        adjusted,
        t,
        regime: ProductRegime {
            root_margin,
            factorial_gap,
            degree_gap,
            selector_budget,
            cover_ratio_root,
            factorial_root,
            split_balance,
            all,
        },
    })
}

impl ProductParams {
    pub fn to_json(&self) -> String {
        let value = serde_json::json!({
            "k": self.k,
            "c": self.c,
            "dup": self.dup,
            "s": self.s,
            "d_initial": self.d_initial.to_string(),
            "d": self.d.to_string(),
            "adjusted": self.adjusted,
            "t": self.t.to_string(),
            "regime": self.regime,
        });
        serde_json::to_string(&value).expect("params serialize")
    }
}

// ---------------------------------------------------------------------------
// Tuple space
// ---------------------------------------------------------------------------

/// The bijection between right-vertex tuples `B^c` and their lexicographic
/// ranks, plus the partition into color-pattern classes.
#[derive(Debug, Clone)]
pub struct TupleSpace {
    pub c: usize,
    pub b_size: usize,
    pub d: usize,
    beta: Vec<u32>,
}

impl TupleSpace {
    pub fn new(h: &ColoredBipartiteGraph, c: usize) -> Result<Self, ProductError> {
        if c == 0 {
            return Err(ProductError::BadParams("need c >= 1".into()));
        }
        let tuples = h.b_size().checked_pow(c as u32).unwrap_or(usize::MAX);
        if tuples > TUPLE_SPACE_CAP {
            return Err(ProductError::TupleCap {
                tuples,
                cap: TUPLE_SPACE_CAP,
            });
        }
        if let Some(color) = h.beta_class_sizes().iter().position(|&n| n == 0) {
            return Err(ProductError::EmptyColorClass {
                color: color as u32 + 1,
            });
        }
        Ok(Self {
            c,
            b_size: h.b_size(),
            d: h.b_colors(),
            beta: (1..=h.b_size() as u32).map(|b| h.beta(b)).collect(),
        })
    }

    pub fn tuple_count(&self) -> usize {
        self.b_size.pow(self.c as u32)
    }

    pub fn pattern_count(&self) -> usize {
        self.d.pow(self.c as u32)
    }

    /// Lexicographic rank of a tuple over `1..=b_size`, first coordinate
    /// most significant.
    pub fn tuple_rank(&self, tuple: &[u32]) -> usize {
        debug_assert_eq!(tuple.len(), self.c);
        tuple
            .iter()
            .fold(0usize, |acc, &v| acc * self.b_size + (v as usize - 1))
    }

    pub fn tuple_of_rank(&self, mut rank: usize) -> Vec<u32> {
        let mut tuple = vec![0u32; self.c];
        for slot in tuple.iter_mut().rev() {
            *slot = (rank % self.b_size) as u32 + 1;
            rank /= self.b_size;
        }
        tuple
    }

    pub fn pattern_rank(&self, pattern: &[u32]) -> usize {
        debug_assert_eq!(pattern.len(), self.c);
        pattern
            .iter()
            .fold(0usize, |acc, &v| acc * self.d + (v as usize - 1))
    }

    /// Componentwise right coloring of a tuple.
    pub fn pattern_of(&self, tuple: &[u32]) -> Vec<u32> {
        tuple.iter().map(|&b| self.beta[b as usize - 1]).collect()
    }

    /// Tuple ranks grouped by pattern rank; every pattern class is nonempty
    /// when every base color class is.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.pattern_count()];
        for rank in 0..self.tuple_count() {
            let tuple = self.tuple_of_rank(rank);
            classes[self.pattern_rank(&self.pattern_of(&tuple))].push(rank);
        }
        classes
    }
}

// ---------------------------------------------------------------------------
// Graph construction
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProductRole {
    /// Right-vertex tuple with the given lexicographic rank.
    Tuple { rank: usize },
    /// Selector copy `(u, coord, copy)` of left vertex `u`.
    Selector { u: u32, coord: u32, copy: u32 },
    /// Probe for (tuple rank, pattern rank over left colors, copy).
    Probe {
        v_rank: usize,
        j_rank: usize,
        copy: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductDims {
    pub a_size: usize,
    pub b_size: usize,
    pub a_colors: usize,
    pub d_small: usize,
    pub c: usize,
    pub t: usize,
}

impl ProductDims {
    pub fn tuple_count(&self) -> usize {
        self.b_size.pow(self.c as u32)
    }

    /// Number of left-color patterns `[a_colors]^c`.
    pub fn j_count(&self) -> usize {
        self.a_colors.pow(self.c as u32)
    }

    pub fn vertex_count(&self) -> usize {
        self.tuple_count() * (1 + self.j_count() * self.t) + self.a_size * self.c * self.t
    }

    pub fn tuple_id(&self, rank: usize) -> u32 {
        rank as u32 + 1
    }

    pub fn selector_id(&self, u: u32, coord: u32, copy: u32) -> u32 {
        self.tuple_count() as u32 + ((u - 1) * self.c as u32 + (coord - 1)) * self.t as u32 + copy
    }

    pub fn probe_id(&self, v_rank: usize, j_rank: usize, copy: u32) -> u32 {
        (self.tuple_count() + self.a_size * self.c * self.t) as u32
            + ((v_rank * self.j_count() + j_rank) * self.t) as u32
            + copy
    }

    pub fn role_of(&self, id: u32) -> ProductRole {
        let mut x = id as usize - 1;
        if x < self.tuple_count() {
            return ProductRole::Tuple { rank: x };
        }
        x -= self.tuple_count();
        if x < self.a_size * self.c * self.t {
            let copy = (x % self.t) as u32 + 1;
            let rest = x / self.t;
            return ProductRole::Selector {
                u: (rest / self.c) as u32 + 1,
                coord: (rest % self.c) as u32 + 1,
                copy,
            };
        }
        x -= self.a_size * self.c * self.t;
        let copy = (x % self.t) as u32 + 1;
        let rest = x / self.t;
        ProductRole::Probe {
            v_rank: rest / self.j_count(),
            j_rank: rest % self.j_count(),
            copy,
        }
    }

    /// Lexicographic rank over `[a_colors]^c`, first coordinate most
    /// significant.
    pub fn j_rank(&self, pattern: &[u32]) -> usize {
        pattern
            .iter()
            .fold(0usize, |acc, &v| acc * self.a_colors + (v as usize - 1))
    }

    pub fn j_of_rank(&self, mut rank: usize) -> Vec<u32> {
        let mut pattern = vec![0u32; self.c];
        for slot in pattern.iter_mut().rev() {
            *slot = (rank % self.a_colors) as u32 + 1;
            rank /= self.a_colors;
        }
        pattern
    }
}

#[derive(Debug, Clone)]
pub struct ProductOutput {
    pub graph: Graph,
    pub roles: Vec<ProductRole>,
    pub dims: ProductDims,
    pub space: TupleSpace,
    pub manifest: Manifest,
}

/// Builds the product graph with `c` coordinates and `t` selector copies
/// from a colored bipartite instance.
pub fn build_product(
    h: &ColoredBipartiteGraph,
    c: usize,
    t: usize,
    cap_vertices: usize,
) -> Result<ProductOutput, ProductError> {
    if t == 0 {
        return Err(ProductError::BadParams("need t >= 1".into()));
    }
    let space = TupleSpace::new(h, c)?;
    let dims = ProductDims {
        a_size: h.a_size(),
        b_size: h.b_size(),
        a_colors: h.a_colors(),
        d_small: h.b_colors(),
        c,
        t,
    };
    let n = dims.vertex_count();
    if n > cap_vertices {
        return Err(ProductError::VertexCap {
            vertices: n,
            cap: cap_vertices,
        });
    }

    let mut g = Graph::new(n);
    let classes = space.classes();
    // (P1): each pattern class is a clique. (P2): probes of v reach the
    // classmates differing from v everywhere.
    for class in &classes {
        for (i, &v1) in class.iter().enumerate() {
            let t1 = space.tuple_of_rank(v1);
            for &v2 in &class[i + 1..] {
                let t2 = space.tuple_of_rank(v2);
                g.add_edge(dims.tuple_id(v1), dims.tuple_id(v2))?;
                let all_differ = t1.iter().zip(&t2).all(|(x, y)| x != y);
                if all_differ {
                    for j_rank in 0..dims.j_count() {
                        for copy in 1..=t as u32 {
                            g.add_edge(dims.probe_id(v1, j_rank, copy), dims.tuple_id(v2))?;
                            g.add_edge(dims.probe_id(v2, j_rank, copy), dims.tuple_id(v1))?;
                        }
                    }
                }
            }
        }
    }
    // (P3): selector (u, coord, copy) reaches probe (v, j, copy) when u is a
    // neighbor of v's coord-th entry and j agrees with u's color there.
    for v_rank in 0..dims.tuple_count() {
        let tuple = space.tuple_of_rank(v_rank);
        for coord in 1..=c as u32 {
            let b = tuple[coord as usize - 1];
            for &u in h.graph().neighbors_of_b(b) {
                let color = h.alpha(u);
                for j_rank in 0..dims.j_count() {
                    let j = dims.j_of_rank(j_rank);
                    if j[coord as usize - 1] != color {
                        continue;
                    }
                    for copy in 1..=t as u32 {
                        g.add_edge(
                            dims.selector_id(u, coord, copy),
                            dims.probe_id(v_rank, j_rank, copy),
                        )?;
                    }
                }
            }
        }
    }
    // (P4): selector cliques per (coordinate, copy).
    for coord in 1..=c as u32 {
        for copy in 1..=t as u32 {
            for u in 1..=dims.a_size as u32 {
                for u2 in (u + 1)..=dims.a_size as u32 {
                    g.add_edge(
                        dims.selector_id(u, coord, copy),
                        dims.selector_id(u2, coord, copy),
                    )?;
                }
            }
        }
    }

    let roles: Vec<ProductRole> = (1..=n as u32).map(|id| dims.role_of(id)).collect();
    let manifest = Manifest {
        construction: "product".into(),
        parameters: serde_json::json!({
            "a_size": dims.a_size,
            "b_size": dims.b_size,
            "a_colors": dims.a_colors,
            "d_small": dims.d_small,
            "c": c,
            "t": t,
        }),
        source_digest: digest_hex(h.to_json().as_bytes()),
        vertex_count: n,
        edge_count: g.edge_count(),
        sections: vec![
            RoleSection {
                role: "tuple".into(),
                start: 1,
                len: dims.tuple_count(),
            },
            RoleSection {
                role: "selector".into(),
                start: dims.tuple_count() as u32 + 1,
                len: dims.a_size * c * t,
            },
            RoleSection {
                role: "probe".into(),
                start: (dims.tuple_count() + dims.a_size * c * t) as u32 + 1,
                len: dims.tuple_count() * dims.j_count() * t,
            },
        ],
    };
    Ok(ProductOutput {
        graph: g,
        roles,
        dims,
        space,
        manifest,
    })
}

/// Maps a rainbow biclique witness (left side hitting every left color,
/// right side every right color) to its dominating set: all tuples over the
/// witness right side plus every selector copy of the witness left side.
/// Size is exactly `d_small^c + a_colors * c * t`.
pub fn extract_product_witness(
    out: &ProductOutput,
    h: &ColoredBipartiteGraph,
    left: &[u32],
    right: &[u32],
) -> Result<DominatingSetResult, ProductError> {
    let dims = &out.dims;
    if left.len() != dims.a_colors || right.len() != dims.d_small {
        return Err(ProductError::WitnessShape(format!(
            "need {} left and {} right vertices, got {} and {}",
            dims.a_colors,
            dims.d_small,
            left.len(),
            right.len()
        )));
    }
    let left_colors: BTreeSet<u32> = left.iter().map(|&u| h.alpha(u)).collect();
    if left_colors.len() != dims.a_colors {
        let missing = (1..=dims.a_colors as u32)
            .find(|c| !left_colors.contains(c))
            .expect("some color must be missing");
        return Err(ProductError::WitnessShape(format!(
            "alpha not surjective onto 1..={}: color {missing} missing on the left side",
            dims.a_colors
        )));
    }
    let right_colors: BTreeSet<u32> = right.iter().map(|&b| h.beta(b)).collect();
    if right_colors.len() != dims.d_small {
        let missing = (1..=dims.d_small as u32)
            .find(|c| !right_colors.contains(c))
            .expect("some color must be missing");
        return Err(ProductError::WitnessShape(format!(
            "beta not surjective onto 1..={}: color {missing} missing on the right side",
            dims.d_small
        )));
    }
    for &u in left {
        for &b in right {
            if !h.graph().has_edge(u, b) {
                return Err(ProductError::WitnessMissingEdge { a: u, b });
            }
        }
    }

    let mut vertices: BTreeSet<u32> = BTreeSet::new();
    // All c-tuples over the witness right side.
    let d = right.len();
    let mut idx = vec![0usize; out.dims.c];
    loop {
        let tuple: Vec<u32> = idx.iter().map(|&i| right[i]).collect();
        vertices.insert(dims.tuple_id(out.space.tuple_rank(&tuple)));
        let mut pos = out.dims.c;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < d {
                break;
            }
            idx[pos] = 0;
        }
        if idx.iter().all(|&i| i == 0) {
            break;
        }
    }
    for &u in left {
        for coord in 1..=dims.c as u32 {
            for copy in 1..=dims.t as u32 {
                vertices.insert(dims.selector_id(u, coord, copy));
            }
        }
    }
    let expected = d.pow(dims.c as u32) + dims.a_colors * dims.c * dims.t;
    assert_eq!(vertices.len(), expected, "witness size formula violated");
    let dominating = is_dominating(&out.graph, &vertices)?;
    assert!(
        dominating,
        "rainbow biclique witness must dominate the product graph"
    );
    Ok(DominatingSetResult::new(vertices, 1, false))
}

// ---------------------------------------------------------------------------
// Tuple counting bound
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProductBoundVerdict {
    /// The coordinate hypothesis fails at this coordinate (1-based); no
    /// bound is asserted.
    HypothesisFails { coordinate: usize },
    /// Hypothesis holds; `|V| <= bound` was checked, with the given slack.
    Holds { bound: usize, slack: usize },
}

/// Checks the counting bound for coordinate-constrained tuple sets: if some
/// assignment `theta` of tuples to coordinates uses at most `t - dup`
/// distinct values per coordinate, then `|V| <= t^c - dup^c`.
///
/// Panics if the hypothesis holds but the bound fails; that cannot happen
/// for correct inputs, so a panic means this implementation is broken.
pub fn product_bound_check(
    tuples: &[Vec<u32>],
    theta: &[u32],
    t: usize,
    c: usize,
    dup: usize,
) -> Result<ProductBoundVerdict, ProductError> {
    if c == 0 || t == 0 || dup == 0 || dup >= t {
        return Err(ProductError::BadParams(format!(
            "need c >= 1 and 0 < dup < t, got c={c}, t={t}, dup={dup}"
        )));
    }
    if theta.len() != tuples.len() {
        return Err(ProductError::BadTheta {
            msg: format!("{} assignments for {} tuples", theta.len(), tuples.len()),
            c,
        });
    }
    let mut seen: BTreeSet<&[u32]> = BTreeSet::new();
    for tuple in tuples {
        if tuple.len() != c || tuple.iter().any(|&x| x == 0 || x as usize > t) {
            return Err(ProductError::BadParams(format!(
                "tuple {tuple:?} is not in [t]^c for t={t}, c={c}"
            )));
        }
        if !seen.insert(tuple) {
            return Err(ProductError::BadParams(format!(
                "duplicate tuple {tuple:?}; the bound is about sets"
            )));
        }
    }
    if let Some(&bad) = theta.iter().find(|&&x| x == 0 || x as usize > c) {
        return Err(ProductError::BadTheta {
            msg: format!("assignment {bad} outside 1..={c}"),
            c,
        });
    }
    for coord in 1..=c {
        let values: BTreeSet<u32> = tuples
            .iter()
            .zip(theta)
            .filter(|(_, &th)| th as usize == coord)
            .map(|(tuple, _)| tuple[coord - 1])
            .collect();
        if values.len() > t - dup {
            return Ok(ProductBoundVerdict::HypothesisFails { coordinate: coord });
        }
    }
    let bound = t.pow(c as u32) - dup.pow(c as u32);
    assert!(
        tuples.len() <= bound,
        "counting bound violated: |V|={} > {bound}; product_bound_check is buggy",
        tuples.len()
    );
    Ok(ProductBoundVerdict::Holds {
        bound,
        slack: bound - tuples.len(),
    })
}
