//! The anchored gap construction: from a colored bipartite graph whose left
//! colors number `s` and right colors number `d`, build a graph in which a
//! rainbow `s x d` biclique yields a dominating set of size `d + s*t`, while
//! sparse common neighborhoods force strictly larger solutions.
//!
//! Vertex families, in id order:
//!   * one vertex per right-side vertex, clustered into color classes;
//!   * two anchor vertices per right color, adjacent only to their class
//!     (they pin every dominating set to touch each class group);
//!   * `t` selector copies of every left vertex;
//!   * one probe vertex per (right vertex, left color, copy index).
//!
//! Edge rules:
//!   (R1) same-color right vertices form a clique;
//!   (R2) both anchors of color c are adjacent to every class-c vertex;
//!   (R3) a probe for right vertex b is adjacent to every other vertex of
//!        b's color class;
//!   (R4) selector (a, i) is adjacent to probe (b, j, i) iff {a, b} is an
//!        input edge and j is a's color;
//!   (R5) selectors with the same copy index form a clique.

use crate::frac::Frac;
use crate::graphs::{is_dominating, ColoredBipartiteGraph, DominatingSetResult, Graph, GraphError};
use crate::manifest::{digest_hex, Manifest, RoleSection};
use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

pub const DEFAULT_VERTEX_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnchoredError {
    #[error("beta color class {color} is empty; anchors would be isolated")]
    EmptyColorClass { color: u32 },
    #[error("output would have {vertices} vertices (cap {cap})")]
    VertexCap { vertices: usize, cap: usize },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("witness has wrong shape: {0}")]
    WitnessShape(String),
    #[error("witness is not a biclique: missing edge ({a},{b})")]
    WitnessMissingEdge { a: u32, b: u32 },
    #[error("witness coloring not injective on side {side}: vertices {x} and {y} share a color")]
    WitnessColorClash { side: char, x: u32, y: u32 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

// ---------------------------------------------------------------------------
// Parameter derivation
// ---------------------------------------------------------------------------

/// Exact parameter set for the anchored reduction, with the regime
/// inequalities the asymptotic argument relies on evaluated exactly and
/// recorded rather than enforced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnchoredParams {
    pub k: usize,
    pub s: usize,
    pub epsilon: Frac,
    pub delta: Frac,
    /// Strict supremum of approximation ratios the gap rules out:
    /// `(3/2 - delta) / (1 + epsilon)`.
    pub rho_bound: Frac,
    pub d: BigUint,
    pub t: BigUint,
    pub regime: AnchoredRegime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AnchoredRegime {
    /// `s*t < epsilon*d`
    pub st_below_eps_d: bool,
    /// `(1/2 - delta) * d / t <= d^(1/(2s))`
    pub ratio_within_root: bool,
    /// `(k+1)! < 2*delta*sqrt(d) - 1`
    pub factorial_margin: bool,
    /// `d <= ceil(n^(6/(k+1)))`
    pub d_within_n_budget: bool,
    /// All of the above.
    pub all: bool,
}

fn factorial(n: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    acc
}

/// Smallest integer `z` with `z^e >= x`.
fn ceil_root(x: &BigUint, e: u32) -> BigUint {
    let r = x.nth_root(e);
    if &r.pow(e) >= x {
        r
    } else {
        r + BigUint::one()
    }
}

pub fn choose2(k: usize) -> usize {
    k * (k - 1) / 2
}

/// Derives `s = C(k,2)`, `d = ceil(s/eps)^(2s)`, and
/// `t = ceil((1/2 - delta) * d^(1 - 1/(2s)))` in exact arithmetic, plus the
/// regime flags for instance size `n`.
pub fn derive_anchored_params(
    k: usize,
    n: usize,
    epsilon: Frac,
    delta: Frac,
) -> Result<AnchoredParams, AnchoredError> {
    if k < 3 {
        return Err(AnchoredError::BadParams(format!("need k >= 3, got {k}")));
    }
    if k > 64 {
        return Err(AnchoredError::BadParams(format!(
            "k = {k} would make d astronomically large even to store"
        )));
    }
    if epsilon.is_zero() || epsilon.cmp_ratio(1, 1).is_ge() {
        return Err(AnchoredError::BadParams(format!(
            "need 0 < epsilon < 1, got {epsilon}"
        )));
    }
    if delta.is_zero() || delta.cmp_ratio(1, 2).is_ge() {
        return Err(AnchoredError::BadParams(format!(
            "need 0 < delta < 1/2, got {delta}"
        )));
    }
    let s = choose2(k);
    // m = ceil(s / epsilon); then d = m^(2s) and d^(1/(2s)) = m exactly.
    let m_int = (s as u128 * epsilon.den() as u128).div_ceil(epsilon.num() as u128);
    let m = BigUint::from(m_int);
    let d = m.pow(2 * s as u32);
    let half_minus_delta = Frac::new(1, 2).unwrap().sub_or_zero(delta);
    let t = half_minus_delta.ceil_times_big(&m.pow(2 * s as u32 - 1));

    // s*t < eps*d
    let st_below_eps_d = {
        let lhs = BigUint::from(s as u64) * &t * BigUint::from(epsilon.den());
        let rhs = BigUint::from(epsilon.num()) * &d;
        lhs < rhs
    };
    // (1/2 - delta) * d <= d^(1/(2s)) * t, i.e. num*d <= den*m*t
    let ratio_within_root = {
        let lhs = BigUint::from(half_minus_delta.num()) * &d;
        let rhs = BigUint::from(half_minus_delta.den()) * &m * &t;
        lhs <= rhs
    };
    // (k+1)! + 1 < 2*delta*sqrt(d), with sqrt(d) = m^s exactly
    let factorial_margin = {
        let two_delta = delta + delta;
        let lhs = (factorial(k + 1) + BigUint::one()) * BigUint::from(two_delta.den());
        let rhs = BigUint::from(two_delta.num()) * m.pow(s as u32);
        lhs < rhs
    };
    // d <= ceil(n^(6/(k+1)))
    let d_within_n_budget = {
        let n_pow6 = BigUint::from(n as u64).pow(6);
        d <= ceil_root(&n_pow6, k as u32 + 1)
    };
    let rho_bound = Frac::new(3, 2)
        .unwrap()
        .sub_or_zero(delta)
        .checked_div(Frac::one() + epsilon)
        .expect("denominator 1 + epsilon is positive");

    let all = st_below_eps_d && ratio_within_root && factorial_margin && d_within_n_budget;
    Ok(AnchoredParams {
        k,
        s,
        epsilon,
        delta,
        rho_bound,
        d,
        t,
        regime: AnchoredRegime {
            st_below_eps_d,
            ratio_within_root,
            factorial_margin,
            d_within_n_budget,
            all,
        },
    })
}

impl AnchoredParams {
    pub fn to_json(&self) -> String {
        let value = serde_json::json!({
            "k": self.k,
            "s": self.s,
            "epsilon": self.epsilon.to_string(),
            "delta": self.delta.to_string(),
            "rho_bound": self.rho_bound.to_string(),
            "d": self.d.to_string(),
            "t": self.t.to_string(),
            "regime": self.regime,
        });
        serde_json::to_string(&value).expect("params serialize")
    }
}

// ---------------------------------------------------------------------------
// Graph construction
// ---------------------------------------------------------------------------

/// Per-vertex role tag of the anchored construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnchoredRole {
    /// Copy of right-side vertex `b`, clustered with its color class.
    Block { b: u32 },
    /// First anchor of a right color class.
    AnchorX { color: u32 },
    /// Second anchor of a right color class.
    AnchorY { color: u32 },
    /// Selector copy `(a, copy)` of left vertex `a`.
    Selector { a: u32, copy: u32 },
    /// Probe for right vertex `b`, left color `j`, copy index `copy`.
    Probe { b: u32, j: u32, copy: u32 },
}

/// Fixed id layout of the construction; everything is derivable from the
/// five dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnchoredDims {
    pub a_size: usize,
    pub b_size: usize,
    pub s: usize,
    pub d: usize,
    pub t: usize,
}

impl AnchoredDims {
    pub fn vertex_count(&self) -> usize {
        self.b_size + 2 * self.d + self.a_size * self.t + self.b_size * self.s * self.t
    }

    pub fn block_id(&self, b: u32) -> u32 {
        b
    }

    pub fn anchor_x_id(&self, color: u32) -> u32 {
        self.b_size as u32 + color
    }

    pub fn anchor_y_id(&self, color: u32) -> u32 {
        (self.b_size + self.d) as u32 + color
    }

    pub fn selector_id(&self, a: u32, copy: u32) -> u32 {
        (self.b_size + 2 * self.d) as u32 + (a - 1) * self.t as u32 + copy
    }

    pub fn probe_id(&self, b: u32, j: u32, copy: u32) -> u32 {
        (self.b_size + 2 * self.d + self.a_size * self.t) as u32
            + ((b - 1) * self.s as u32 + (j - 1)) * self.t as u32
            + copy
    }

    pub fn role_of(&self, id: u32) -> AnchoredRole {
        let mut x = id as usize - 1;
        if x < self.b_size {
            return AnchoredRole::Block { b: x as u32 + 1 };
        }
        x -= self.b_size;
        if x < self.d {
            return AnchoredRole::AnchorX {
                color: x as u32 + 1,
            };
        }
        x -= self.d;
        if x < self.d {
            return AnchoredRole::AnchorY {
                color: x as u32 + 1,
            };
        }
        x -= self.d;
        if x < self.a_size * self.t {
            return AnchoredRole::Selector {
                a: (x / self.t) as u32 + 1,
                copy: (x % self.t) as u32 + 1,
            };
        }
        x -= self.a_size * self.t;
        let copy = (x % self.t) as u32 + 1;
        let rest = x / self.t;
        AnchoredRole::Probe {
            b: (rest / self.s) as u32 + 1,
            j: (rest % self.s) as u32 + 1,
            copy,
        }
    }
}

#[derive(Debug, Clone)]
pub struct AnchoredOutput {
    pub graph: Graph,
    pub roles: Vec<AnchoredRole>,
    pub dims: AnchoredDims,
    pub manifest: Manifest,
}

impl AnchoredOutput {
    /// Ids of the group a dominating set must intersect for `color`:
    /// the color class plus its two anchors.
    pub fn class_group(&self, h: &ColoredBipartiteGraph, color: u32) -> BTreeSet<u32> {
        let mut group: BTreeSet<u32> = h
            .beta_class(color)
            .into_iter()
            .map(|b| self.dims.block_id(b))
            .collect();
        group.insert(self.dims.anchor_x_id(color));
        group.insert(self.dims.anchor_y_id(color));
        group
    }
}

/// Builds the anchored graph from a colored bipartite instance whose left
/// colors play the role of `s` and right colors the role of `d`, with `t`
/// selector copies.
pub fn build_anchored(
    h: &ColoredBipartiteGraph,
    t: usize,
    cap_vertices: usize,
) -> Result<AnchoredOutput, AnchoredError> {
    if t == 0 {
        return Err(AnchoredError::BadParams("need t >= 1".into()));
    }
    let s = h.a_colors();
    let d = h.b_colors();
    let dims = AnchoredDims {
        a_size: h.a_size(),
        b_size: h.b_size(),
        s,
        d,
        t,
    };
    if let Some(color) = h.beta_class_sizes().iter().position(|&size| size == 0) {
        return Err(AnchoredError::EmptyColorClass {
            color: color as u32 + 1,
        });
    }
    let n = dims.vertex_count();
    if n > cap_vertices {
        return Err(AnchoredError::VertexCap {
            vertices: n,
            cap: cap_vertices,
        });
    }

    let mut g = Graph::new(n);
    // (R1) and (R2): color-class cliques and their anchors; (R3): probes of
    // every class member reach the rest of the class.
    for color in 1..=d as u32 {
        let class = h.beta_class(color);
        for (idx, &b) in class.iter().enumerate() {
            g.add_edge(dims.anchor_x_id(color), dims.block_id(b))?;
            g.add_edge(dims.anchor_y_id(color), dims.block_id(b))?;
            for &b2 in &class[idx + 1..] {
                g.add_edge(dims.block_id(b), dims.block_id(b2))?;
                for j in 1..=s as u32 {
                    for copy in 1..=t as u32 {
                        g.add_edge(dims.probe_id(b, j, copy), dims.block_id(b2))?;
                        g.add_edge(dims.probe_id(b2, j, copy), dims.block_id(b))?;
                    }
                }
            }
        }
    }
    // (R4): selectors reach the probes of their neighbors at their own color.
    for a in 1..=h.a_size() as u32 {
        let j = h.alpha(a);
        for &b in h.graph().neighbors_of_a(a) {
            for copy in 1..=t as u32 {
                g.add_edge(dims.selector_id(a, copy), dims.probe_id(b, j, copy))?;
            }
        }
    }
    // (R5): selector cliques per copy index.
    for copy in 1..=t as u32 {
        for a in 1..=h.a_size() as u32 {
            for a2 in (a + 1)..=h.a_size() as u32 {
                g.add_edge(dims.selector_id(a, copy), dims.selector_id(a2, copy))?;
            }
        }
    }

    let roles: Vec<AnchoredRole> = (1..=n as u32).map(|id| dims.role_of(id)).collect();
    let manifest = Manifest {
        construction: "anchored".into(),
        parameters: serde_json::json!({
            "a_size": dims.a_size,
            "b_size": dims.b_size,
            "s": s,
            "d": d,
            "t": t,
        }),
        source_digest: digest_hex(h.to_json().as_bytes()),
        vertex_count: n,
        edge_count: g.edge_count(),
        sections: vec![
            RoleSection {
                role: "block".into(),
                start: 1,
                len: dims.b_size,
            },
            RoleSection {
                role: "anchor_x".into(),
                start: dims.b_size as u32 + 1,
                len: d,
            },
            RoleSection {
                role: "anchor_y".into(),
                start: (dims.b_size + d) as u32 + 1,
                len: d,
            },
            RoleSection {
                role: "selector".into(),
                start: (dims.b_size + 2 * d) as u32 + 1,
                len: dims.a_size * t,
            },
            RoleSection {
                role: "probe".into(),
                start: (dims.b_size + 2 * d + dims.a_size * t) as u32 + 1,
                len: dims.b_size * s * t,
            },
        ],
    };
    Ok(AnchoredOutput {
        graph: g,
        roles,
        dims,
        manifest,
    })
}

/// Turns a rainbow biclique witness of the source instance into the
/// dominating set it induces: the right side of the biclique plus every
/// selector copy of its left side. Size is exactly `d + s*t`.
pub fn extract_anchored_witness(
    out: &AnchoredOutput,
    h: &ColoredBipartiteGraph,
    left: &[u32],
    right: &[u32],
) -> Result<DominatingSetResult, AnchoredError> {
    let dims = &out.dims;
    if left.len() != dims.s || right.len() != dims.d {
        return Err(AnchoredError::WitnessShape(format!(
            "need {} left and {} right vertices, got {} and {}",
            dims.s,
            dims.d,
            left.len(),
            right.len()
        )));
    }
    for (i, &a) in left.iter().enumerate() {
        for &a2 in &left[i + 1..] {
            if h.alpha(a) == h.alpha(a2) {
                return Err(AnchoredError::WitnessColorClash {
                    side: 'A',
                    x: a,
                    y: a2,
                });
            }
        }
    }
    for (i, &b) in right.iter().enumerate() {
        for &b2 in &right[i + 1..] {
            if h.beta(b) == h.beta(b2) {
                return Err(AnchoredError::WitnessColorClash {
                    side: 'B',
                    x: b,
                    y: b2,
                });
            }
        }
    }
    for &a in left {
        for &b in right {
            if !h.graph().has_edge(a, b) {
                return Err(AnchoredError::WitnessMissingEdge { a, b });
            }
        }
    }
    let mut vertices: BTreeSet<u32> = right.iter().map(|&b| dims.block_id(b)).collect();
    for &a in left {
        for copy in 1..=dims.t as u32 {
            vertices.insert(dims.selector_id(a, copy));
        }
    }
    let dominating = is_dominating(&out.graph, &vertices)?;
    assert!(
        dominating,
        "rainbow biclique witness must dominate the anchored graph"
    );
    // Anchors of distinct colors have disjoint closed neighborhoods, so any
    // dominating set has at least d vertices.
    Ok(DominatingSetResult::new(vertices, dims.d, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gapsource::{planted_colored_yes, sparse_colored_no};
    use crate::graphs::BipartiteGraph;
    use crate::solvers::{exact_min_dominating_set, SolverBudget};

    fn colored(
        a_size: usize,
        b_size: usize,
        s: usize,
        d: usize,
        edges: &[(u32, u32)],
    ) -> ColoredBipartiteGraph {
        let mut g = BipartiteGraph::new(a_size, b_size);
        for &(a, b) in edges {
            g.add_edge(a, b).unwrap();
        }
        let alpha = (0..a_size).map(|i| (i % s) as u32 + 1).collect();
        let beta = (0..b_size).map(|i| (i % d) as u32 + 1).collect();
        ColoredBipartiteGraph::new(g, s, d, alpha, beta).unwrap()
    }

    #[test]
    fn derive_params_matches_hand_computation() {
        let p = derive_anchored_params(
            3,
            300,
            Frac::parse("0.9").unwrap(),
            Frac::parse("0.4").unwrap(),
        )
        .unwrap();
        assert_eq!(p.s, 3);
        // ceil(3/0.9) = 4, d = 4^6.
        assert_eq!(p.d, BigUint::from(4096u32));
        // t = ceil(0.1 * 4^5) = ceil(102.4).
        assert_eq!(p.t, BigUint::from(103u32));
        assert_eq!(p.rho_bound, Frac::new(11, 19).unwrap());
        assert!(p.regime.st_below_eps_d);
        assert!(p.regime.ratio_within_root);
        assert!(p.regime.factorial_margin);
        // 300^1.5 ~ 5196 >= 4096.
        assert!(p.regime.d_within_n_budget);
        assert!(p.regime.all);
    }

    #[test]
    fn derive_params_flags_small_n() {
        let p = derive_anchored_params(
            3,
            100,
            Frac::parse("0.9").unwrap(),
            Frac::parse("0.4").unwrap(),
        )
        .unwrap();
        // ceil(100^1.5) = 1000 < 4096.
        assert!(!p.regime.d_within_n_budget);
        assert!(!p.regime.all);
    }

    #[test]
    fn d_is_monotone_as_epsilon_shrinks() {
        let mut last = BigUint::from(0u8);
        for eps in ["0.9", "0.7", "0.5", "0.3", "0.1"] {
            let p = derive_anchored_params(
                3,
                10,
                Frac::parse(eps).unwrap(),
                Frac::parse("0.4").unwrap(),
            )
            .unwrap();
            assert!(p.d >= last, "d decreased at eps={eps}");
            last = p.d;
        }
    }

    #[test]
    fn derive_params_rejects_bad_domains() {
        let e = Frac::parse("0.9").unwrap();
        let d = Frac::parse("0.4").unwrap();
        assert!(derive_anchored_params(2, 10, e, d).is_err());
        assert!(derive_anchored_params(3, 10, Frac::one(), d).is_err());
        assert!(derive_anchored_params(3, 10, e, Frac::new(1, 2).unwrap()).is_err());
        assert!(derive_anchored_params(3, 10, e, Frac::zero()).is_err());
    }

    #[test]
    fn empty_bipartite_edges_give_no_selector_probe_edges() {
        // |A| = s = 2, |B| = d = 2, no edges, t = 1.
        let h = colored(2, 2, 2, 2, &[]);
        let out = build_anchored(&h, 1, DEFAULT_VERTEX_CAP).unwrap();
        let dims = out.dims;
        for a in 1..=2u32 {
            for b in 1..=2u32 {
                for j in 1..=2u32 {
                    assert!(!out
                        .graph
                        .has_edge(dims.selector_id(a, 1), dims.probe_id(b, j, 1)));
                }
            }
        }
        // Anchors see exactly their color class.
        for color in 1..=2u32 {
            let class: Vec<u32> = h.beta_class(color);
            for anchor in [dims.anchor_x_id(color), dims.anchor_y_id(color)] {
                let nbrs: Vec<u32> = out.graph.neighbors(anchor).collect();
                let expect: Vec<u32> = class.iter().map(|&b| dims.block_id(b)).collect();
                assert_eq!(nbrs, expect);
            }
        }
    }

    #[test]
    fn anchors_never_touch_each_other_or_leave_their_class() {
        let (h, _, _) = planted_colored_yes(2, 3, 3, 5, 21).unwrap();
        let out = build_anchored(&h, 2, DEFAULT_VERTEX_CAP).unwrap();
        let dims = out.dims;
        for color in 1..=dims.d as u32 {
            let group = out.class_group(&h, color);
            for anchor in [dims.anchor_x_id(color), dims.anchor_y_id(color)] {
                assert!(!out
                    .graph
                    .has_edge(dims.anchor_x_id(color), dims.anchor_y_id(color)));
                for nb in out.graph.neighbors(anchor) {
                    assert!(group.contains(&nb), "anchor {anchor} leaks to {nb}");
                }
            }
        }
    }

    #[test]
    fn vertex_count_and_roles_match_dimensions() {
        let (h, _, _) = planted_colored_yes(2, 2, 3, 4, 5).unwrap();
        let out = build_anchored(&h, 2, DEFAULT_VERTEX_CAP).unwrap();
        let dims = out.dims;
        assert_eq!(
            out.graph.n(),
            dims.b_size + 2 * dims.d + dims.a_size * dims.t + dims.b_size * dims.s * dims.t
        );
        assert_eq!(out.roles.len(), out.graph.n());
        // Role sections partition the id space.
        let total: usize = out.manifest.sections.iter().map(|s| s.len).sum();
        assert_eq!(total, out.graph.n());
        // Spot-check id round-trips.
        assert_eq!(
            dims.role_of(dims.probe_id(2, 1, 2)),
            AnchoredRole::Probe {
                b: 2,
                j: 1,
                copy: 2
            }
        );
        assert_eq!(
            dims.role_of(dims.selector_id(3, 1)),
            AnchoredRole::Selector { a: 3, copy: 1 }
        );
    }

    #[test]
    fn complete_block_has_exact_domination_number() {
        // Rainbow 2x2 block with t = 1: the witness set has size d + s*t = 4
        // and the solver agrees it is optimal.
        let (h, left, right) = planted_colored_yes(2, 2, 2, 2, 1).unwrap();
        let out = build_anchored(&h, 1, DEFAULT_VERTEX_CAP).unwrap();
        let witness = extract_anchored_witness(&out, &h, &left, &right).unwrap();
        assert_eq!(witness.size, 4);
        assert!(is_dominating(&out.graph, &witness.vertices).unwrap());
        let exact = exact_min_dominating_set(&out.graph, SolverBudget::exact_bb()).unwrap();
        assert_eq!(exact.size, 4);
    }

    #[test]
    fn witness_sizes_scale_with_t() {
        let (h, left, right) = planted_colored_yes(2, 3, 2, 3, 7).unwrap();
        let out = build_anchored(&h, 2, DEFAULT_VERTEX_CAP).unwrap();
        let w = extract_anchored_witness(&out, &h, &left, &right).unwrap();
        assert_eq!(w.size, 3 + 2 * 2);
        assert!(is_dominating(&out.graph, &w.vertices).unwrap());
        assert_eq!(w.gamma_lower_bound, 3);
    }

    #[test]
    fn malformed_witness_is_named() {
        let (h, left, right) = planted_colored_yes(2, 2, 3, 3, 3).unwrap();
        let out = build_anchored(&h, 1, DEFAULT_VERTEX_CAP).unwrap();
        // Vertices 1 and 3 share a color under the cyclic coloring.
        let mut bad_left = left.clone();
        bad_left[1] = 3;
        match extract_anchored_witness(&out, &h, &bad_left, &right) {
            Err(AnchoredError::WitnessColorClash { side: 'A', .. }) => {}
            other => panic!("expected color clash, got {other:?}"),
        }
        // Missing-edge case: drop the planted edge by pointing at a right
        // vertex outside the planted block.
        let mut h2 = BipartiteGraph::new(2, 2);
        h2.add_edge(1, 1).unwrap();
        h2.add_edge(1, 2).unwrap();
        h2.add_edge(2, 1).unwrap();
        let h2 = ColoredBipartiteGraph::new(h2, 2, 2, vec![1, 2], vec![1, 2]).unwrap();
        let out2 = build_anchored(&h2, 1, DEFAULT_VERTEX_CAP).unwrap();
        match extract_anchored_witness(&out2, &h2, &[1, 2], &[1, 2]) {
            Err(AnchoredError::WitnessMissingEdge { a: 2, b: 2 }) => {}
            other => panic!("expected missing edge (2,2), got {other:?}"),
        }
    }

    #[test]
    fn every_minimal_dominating_set_hits_every_class_group() {
        let (h, _, _) = planted_colored_yes(2, 2, 2, 2, 9).unwrap();
        let out = build_anchored(&h, 1, DEFAULT_VERTEX_CAP).unwrap();
        let n = out.graph.n();
        assert!(n <= 16, "keep the exhaustive sweep small");
        let groups: Vec<BTreeSet<u32>> = (1..=2u32).map(|c| out.class_group(&h, c)).collect();
        for mask in 1u32..(1 << n) {
            let d: BTreeSet<u32> = (0..n as u32)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| i + 1)
                .collect();
            if !is_dominating(&out.graph, &d).unwrap() {
                continue;
            }
            let minimal = d.iter().all(|&v| {
                let mut smaller = d.clone();
                smaller.remove(&v);
                !is_dominating(&out.graph, &smaller).unwrap()
            });
            if !minimal {
                continue;
            }
            for (c, group) in groups.iter().enumerate() {
                assert!(
                    !d.is_disjoint(group),
                    "minimal dominating set {d:?} misses class group {}",
                    c + 1
                );
            }
        }
    }

    #[test]
    fn single_vertex_sides_build_and_dominate() {
        // Smallest nondegenerate instance: one vertex per side, one edge,
        // one color each. Five-vertex output, domination number 2 = d + s*t.
        let mut g = BipartiteGraph::new(1, 1);
        g.add_edge(1, 1).unwrap();
        let h = ColoredBipartiteGraph::new(g, 1, 1, vec![1], vec![1]).unwrap();
        let out = build_anchored(&h, 1, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(out.graph.n(), 5);
        let w = extract_anchored_witness(&out, &h, &[1], &[1]).unwrap();
        assert_eq!(w.size, 2);
        let exact = exact_min_dominating_set(&out.graph, SolverBudget::exact_bb()).unwrap();
        assert_eq!(exact.size, 2);
    }

    #[test]
    fn rejects_empty_color_class() {
        let mut g = BipartiteGraph::new(2, 2);
        g.add_edge(1, 1).unwrap();
        // Both right vertices get color 1, leaving color 2 empty.
        let h = ColoredBipartiteGraph::new(g, 2, 2, vec![1, 2], vec![1, 1]).unwrap();
        assert!(matches!(
            build_anchored(&h, 1, DEFAULT_VERTEX_CAP),
            Err(AnchoredError::EmptyColorClass { color: 2 })
        ));
    }

    #[test]
    fn respects_vertex_cap() {
        let (h, _, _) = planted_colored_yes(2, 2, 4, 4, 2).unwrap();
        assert!(matches!(
            build_anchored(&h, 1, 10),
            Err(AnchoredError::VertexCap { .. })
        ));
    }

    #[test]
    fn construction_is_deterministic() {
        let (h, _, _) = planted_colored_yes(2, 3, 4, 5, 13).unwrap();
        let a = build_anchored(&h, 2, DEFAULT_VERTEX_CAP).unwrap();
        let b = build_anchored(&h, 2, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.manifest, b.manifest);
    }

    #[test]
    fn edge_set_matches_rule_by_rule_rederivation() {
        let (h, _, _) = planted_colored_yes(2, 2, 3, 4, 17).unwrap();
        let out = build_anchored(&h, 2, DEFAULT_VERTEX_CAP).unwrap();
        // Rebuild the id layout purely from the manifest, then re-derive
        // adjacency by classifying every vertex pair through the role
        // decoder and applying the rules directly.
        let params = &out.manifest.parameters;
        let dims = AnchoredDims {
            a_size: params["a_size"].as_u64().unwrap() as usize,
            b_size: params["b_size"].as_u64().unwrap() as usize,
            s: params["s"].as_u64().unwrap() as usize,
            d: params["d"].as_u64().unwrap() as usize,
            t: params["t"].as_u64().unwrap() as usize,
        };
        assert_eq!(dims, out.dims);
        assert_eq!(dims.vertex_count(), out.manifest.vertex_count);
        let mut expected: BTreeSet<(u32, u32)> = BTreeSet::new();
        let n = out.graph.n() as u32;
        for u in 1..=n {
            for v in (u + 1)..=n {
                let justified: Vec<&str> = [
                    rule_same_color_clique(&h, dims, u, v),
                    rule_anchor_to_class(&h, dims, u, v),
                    rule_probe_to_classmates(&h, dims, u, v),
                    rule_selector_to_probe(&h, dims, u, v),
                    rule_selector_clique(dims, u, v),
                ]
                .into_iter()
                .flatten()
                .collect();
                assert!(
                    justified.len() <= 1,
                    "edge ({u},{v}) justified twice: {justified:?}"
                );
                if !justified.is_empty() {
                    expected.insert((u, v));
                }
            }
        }
        let actual: BTreeSet<(u32, u32)> = out.graph.edges().into_iter().collect();
        assert_eq!(actual, expected);
    }

    fn rule_same_color_clique(
        h: &ColoredBipartiteGraph,
        dims: AnchoredDims,
        u: u32,
        v: u32,
    ) -> Option<&'static str> {
        match (dims.role_of(u), dims.role_of(v)) {
            (AnchoredRole::Block { b: b1 }, AnchoredRole::Block { b: b2 })
                if b1 != b2 && h.beta(b1) == h.beta(b2) =>
            {
                Some("same_color_clique")
            }
            _ => None,
        }
    }

    fn rule_anchor_to_class(
        h: &ColoredBipartiteGraph,
        dims: AnchoredDims,
        u: u32,
        v: u32,
    ) -> Option<&'static str> {
        let pair = (dims.role_of(u), dims.role_of(v));
        let hit = match pair {
            (AnchoredRole::Block { b }, AnchoredRole::AnchorX { color })
            | (AnchoredRole::AnchorX { color }, AnchoredRole::Block { b })
            | (AnchoredRole::Block { b }, AnchoredRole::AnchorY { color })
            | (AnchoredRole::AnchorY { color }, AnchoredRole::Block { b }) => h.beta(b) == color,
            _ => false,
        };
        hit.then_some("anchor_to_class")
    }

    fn rule_probe_to_classmates(
        h: &ColoredBipartiteGraph,
        dims: AnchoredDims,
        u: u32,
        v: u32,
    ) -> Option<&'static str> {
        let hit = match (dims.role_of(u), dims.role_of(v)) {
            (AnchoredRole::Probe { b, .. }, AnchoredRole::Block { b: b2 })
            | (AnchoredRole::Block { b: b2 }, AnchoredRole::Probe { b, .. }) => {
                b != b2 && h.beta(b) == h.beta(b2)
            }
            _ => false,
        };
        hit.then_some("probe_to_classmates")
    }

    fn rule_selector_to_probe(
        h: &ColoredBipartiteGraph,
        dims: AnchoredDims,
        u: u32,
        v: u32,
    ) -> Option<&'static str> {
        let hit = match (dims.role_of(u), dims.role_of(v)) {
            (AnchoredRole::Selector { a, copy }, AnchoredRole::Probe { b, j, copy: copy2 })
            | (AnchoredRole::Probe { b, j, copy: copy2 }, AnchoredRole::Selector { a, copy }) => {
                copy == copy2 && h.alpha(a) == j && h.graph().has_edge(a, b)
            }
            _ => false,
        };
        hit.then_some("selector_to_probe")
    }

    fn rule_selector_clique(dims: AnchoredDims, u: u32, v: u32) -> Option<&'static str> {
        let hit = matches!(
            (dims.role_of(u), dims.role_of(v)),
            (
                AnchoredRole::Selector { a, copy },
                AnchoredRole::Selector { a: a2, copy: copy2 }
            ) if a != a2 && copy == copy2
        );
        hit.then_some("selector_clique")
    }

    #[test]
    fn no_side_outputs_have_larger_domination_number() {
        // One matched pair at (s, d, t) = (2, 2, 1); the full sweep lives in
        // the acceptance suite.
        let (hy, left, right) = planted_colored_yes(2, 2, 2, 2, 41).unwrap();
        let yes = build_anchored(&hy, 1, DEFAULT_VERTEX_CAP).unwrap();
        let bound = extract_anchored_witness(&yes, &hy, &left, &right)
            .unwrap()
            .size;
        let hn = sparse_colored_no(2, 2, 2, 2, 2, 1, Frac::new(1, 3).unwrap(), 41).unwrap();
        let no = build_anchored(&hn, 1, DEFAULT_VERTEX_CAP).unwrap();
        let gamma_yes = exact_min_dominating_set(&yes.graph, SolverBudget::exact_bb())
            .unwrap()
            .size;
        let gamma_no = exact_min_dominating_set(&no.graph, SolverBudget::exact_bb())
            .unwrap()
            .size;
        assert!(gamma_yes <= bound);
        assert!(gamma_no > gamma_yes, "no gap: {gamma_no} vs {gamma_yes}");
    }
}
