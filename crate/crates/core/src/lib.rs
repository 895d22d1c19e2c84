//! Two-level network creation game between edge-fog devices and job devices.
//!
//! The edge-fog devices play a sum-distance network creation game among
//! themselves; each job device then buys links into the edge-fog network,
//! paying `beta` per link plus a distance term (Type I or Type II). The crate
//! evaluates costs, computes exact best responses, Nash equilibria and social
//! optima on small instances, and checks the closed-form lower bounds and
//! Price-of-Anarchy statements against those exact results.

pub mod bounds;
pub mod cost;
pub mod domination;
pub mod equilibrium;
pub mod error;
pub mod game;
pub mod generate;
pub mod graph;
pub mod subsets;

pub use cost::Cost;
pub use domination::{greedy_dominating_set, is_dominating_set, min_dominating_set};
pub use error::{Error, Result};
pub use game::{
    build_combined_graph, build_level1_graph, edge_fog_player_cost, job_player_cost,
    social_cost_level1, social_cost_level2, CostReport, GameConfig, GameState, JobCostType, Level1,
    Level1Profile, Level2Profile, TransitPolicy,
};
pub use generate::{generate, Generator};
pub use graph::{all_pairs_distances, Distance, DistanceMatrix, Graph, VertexSet};
