//! Edge maps: each edge is sent to one of its endpoints so that every vertex
//! (but an optional base vertex on trees) is hit.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Cycle rank `#E - #V + #components`.
pub fn cycle_rank(vertex_count: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..vertex_count).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let mut components = vertex_count;
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            components -= 1;
        }
    }
    edges.len() + components - vertex_count
}

/// Builds an edge map of a connected multigraph without self-loops.
///
/// With cycle rank zero, `base` must be given and receives no edge while
/// every other vertex receives exactly one. Otherwise every vertex receives
/// at least one edge (and `base` only picks the deletion start).
pub fn edge_map(
    vertex_count: usize,
    edges: &[(usize, usize)],
    base: Option<usize>,
) -> Result<Vec<usize>> {
    if vertex_count == 0 {
        return Err(Error::Graph("graph has no vertices".into()));
    }
    for (i, &(a, b)) in edges.iter().enumerate() {
        if a >= vertex_count || b >= vertex_count {
            return Err(Error::Graph(format!(
                "edge {i} has an endpoint out of range"
            )));
        }
        if a == b {
            return Err(Error::Graph(format!("edge {i} is a self-loop at {a}")));
        }
    }
    let start = base.unwrap_or(0);
    if start >= vertex_count {
        return Err(Error::Graph(format!("base vertex {start} is out of range")));
    }

    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
    for (i, &(a, b)) in edges.iter().enumerate() {
        incident[a].push(i);
        incident[b].push(i);
    }
    // breadth-first deletion order from the base; `via[w]` is the edge that
    // first reached w
    let mut order = vec![usize::MAX; vertex_count];
    let mut via = vec![usize::MAX; vertex_count];
    let mut queue = VecDeque::from([start]);
    order[start] = 0;
    let mut seen = 1;
    while let Some(u) = queue.pop_front() {
        for &e in &incident[u] {
            let (a, b) = edges[e];
            let w = if a == u { b } else { a };
            if order[w] == usize::MAX {
                order[w] = seen;
                via[w] = e;
                seen += 1;
                queue.push_back(w);
            }
        }
    }
    if seen != vertex_count {
        return Err(Error::Graph("graph is disconnected".into()));
    }
    let other = |e: usize, v: usize| {
        if edges[e].0 == v {
            edges[e].1
        } else {
            edges[e].0
        }
    };

    // each vertex past the base takes the edge that discovered it
    let mut image = vec![usize::MAX; edges.len()];
    for w in 0..vertex_count {
        if w != start {
            image[via[w]] = w;
        }
    }
    let spare: Vec<usize> = (0..edges.len())
        .filter(|&e| image[e] == usize::MAX)
        .collect();
    match spare.first() {
        None => {
            if base.is_none() {
                return Err(Error::Graph("a tree needs a base vertex".into()));
            }
        }
        Some(&cycle_edge) => {
            // reroute along the tree path from the base to one end of a
            // spare edge, then give that end the spare edge
            let (end, _) = edges[cycle_edge];
            let mut w = end;
            while w != start {
                let e = via[w];
                let up = other(e, w);
                image[e] = up;
                w = up;
            }
            image[cycle_edge] = end;
            for &e in &spare[1..] {
                image[e] = edges[e].0;
            }
        }
    }
    check_edge_map(
        vertex_count,
        edges,
        base.filter(|_| spare.is_empty()),
        &image,
    )?;
    Ok(image)
}

/// Checks the edge-map conditions for `image`.
pub fn check_edge_map(
    vertex_count: usize,
    edges: &[(usize, usize)],
    tree_base: Option<usize>,
    image: &[usize],
) -> Result<()> {
    if image.len() != edges.len() {
        return Err(Error::Graph("edge map has the wrong length".into()));
    }
    let mut hits = vec![0usize; vertex_count];
    for (e, &v) in image.iter().enumerate() {
        if v != edges[e].0 && v != edges[e].1 {
            return Err(Error::Graph(format!(
                "edge {e} is sent to a non-endpoint {v}"
            )));
        }
        hits[v] += 1;
    }
    for (v, &h) in hits.iter().enumerate() {
        let ok = match tree_base {
            Some(b) if v == b => h == 0,
            Some(_) => h == 1,
            None => h >= 1,
        };
        if !ok {
            return Err(Error::Graph(format!("vertex {v} receives {h} edges")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forced_examples() {
        let star = [(0, 1), (0, 2), (0, 3)];
        assert_eq!(edge_map(4, &star, Some(0)).unwrap(), vec![1, 2, 3]);
        let path = [(0, 1), (1, 2)];
        assert_eq!(edge_map(3, &path, Some(0)).unwrap(), vec![1, 2]);
        let triangle = [(0, 1), (1, 2), (2, 0)];
        let image = edge_map(3, &triangle, None).unwrap();
        check_edge_map(3, &triangle, None, &image).unwrap();
    }

    #[test]
    fn multi_edges() {
        let doubled = [(0, 1), (0, 1)];
        let image = edge_map(2, &doubled, Some(1)).unwrap();
        check_edge_map(2, &doubled, None, &image).unwrap();
        let theta = [(0, 1), (0, 1), (0, 1), (1, 2)];
        check_edge_map(3, &theta, None, &edge_map(3, &theta, None).unwrap()).unwrap();
    }

    #[test]
    fn rejects_bad_input() {
        assert!(edge_map(2, &[(0, 0), (0, 1)], None).is_err());
        assert!(edge_map(3, &[(0, 1)], Some(0)).is_err());
        assert!(edge_map(2, &[(0, 1)], None).is_err());
        assert!(edge_map(1, &[], Some(0)).unwrap().is_empty());
    }

    #[test]
    fn cycle_ranks() {
        assert_eq!(cycle_rank(3, &[(0, 1), (1, 2), (2, 0)]), 1);
        assert_eq!(cycle_rank(4, &[(0, 1), (2, 3)]), 0);
        assert_eq!(cycle_rank(2, &[(0, 1), (0, 1), (0, 1)]), 2);
    }
}
