//! Breadth-first search over the graph of all non-degenerate codes, used to
//! confirm the structural distance computation.

use std::sync::Arc;

use grassmann_codes::graph::{oracle_distance, restricted_distance, RestrictedGraph, DEFAULT_ORACLE_CAP};
use grassmann_codes::witness::example2_pair;
use grassmann_codes::FieldSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f2 = Arc::new(FieldSpec::with_order(2)?);
    let (x, y) = example2_pair(&f2)?;
    let fast = restricted_distance(&x, &y)?;
    let bfs = oracle_distance(&x, &y, DEFAULT_ORACLE_CAP)?;
    println!("[9,2]_2 pair: d={} d_c={} by search, d_c={} by BFS", fast.d, fast.d_c, bfs.d_c);

    let g = RestrictedGraph::build(&f2, 6, 2, DEFAULT_ORACLE_CAP)?;
    let edges: usize = (0..g.len()).map(|v| g.neighbors(v).len()).sum::<usize>() / 2;
    let diameter = (0..g.len()).flat_map(|v| g.distances_from(v)).max().unwrap_or(0);
    println!("[6,2]_2 graph: {} codes, {edges} edges, diameter {diameter}", g.len());

    let mut mismatches = 0;
    for i in 0..g.len() {
        let dist = g.distances_from(i);
        for j in i + 1..g.len() {
            let r = restricted_distance(&g.vertices()[i], &g.vertices()[j])?;
            mismatches += (r.d_c != dist[j]) as usize;
        }
    }
    println!("pairs where search and BFS disagree: {mismatches}");
    Ok(())
}
