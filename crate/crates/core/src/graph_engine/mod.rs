//! Graph expansion of vacuum expectation values: VEV forests, combined
//! forests over r-sets, tree pole data and edge maps.

mod combined;
mod edge_map;
mod forest;
mod poles;

pub use combined::{
    enumerate_combined_forests, enumerate_combined_forests_with, Block, Bridge, BridgePairing,
    CombinedForest, LeafRef, LeafRole, Source, TreeRef,
};
pub use edge_map::{check_edge_map, cycle_rank, edge_map};
pub use forest::{
    generate_vev_forests, matrix_element_word, vev_graphs, Color, Label, Tree, Vertex, VevForest,
};
pub use poles::{classify, tree_pole_data, PoleType, TreePoleData};
