//! Gap-producing reductions from rainbow-biclique promise instances to
//! minimum dominating set, with every structural claim certified at small
//! scale by brute-force oracles.
//!
//! The pipeline: [`gapsource`] produces colored bipartite instances that are
//! promised to either contain a large rainbow biclique or to have uniformly
//! sparse common neighborhoods (with [`colorcoding`] families supplying the
//! colorings); [`reduce_anchored`] and [`reduce_product`] turn such
//! instances into graphs whose domination number separates the two cases;
//! [`solvers`] and [`circuits`] provide the exact oracles that verify the
//! separation and the translation to depth-2 monotone circuits.

pub mod circuits;
pub mod colorcoding;
pub mod detrand;
pub mod frac;
pub mod gapsource;
pub mod graphs;
pub mod manifest;
pub mod reduce_anchored;
pub mod reduce_product;
pub mod solvers;
