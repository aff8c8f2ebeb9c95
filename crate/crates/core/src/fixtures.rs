//! Small named graphs used throughout the tests, the CLI examples and the
//! acceptance suite, plus a seeded random multigraph generator.
//!
//! Edge ids are auto-assigned (`e0`, `e1`, ...) in the order listed here, and
//! each edge is oriented from the first to the second vertex written.

use crate::graph::MultiGraph;

fn build(vertices: &[&str], edges: &[(&str, &str)]) -> MultiGraph {
    MultiGraph::from_edges(vertices, edges).expect("fixture graphs are valid")
}

/// Two vertices `u`, `w` joined by two parallel edges.
pub fn b2() -> MultiGraph {
    build(&["u", "w"], &[("u", "w"), ("u", "w")])
}

/// Two vertices `u`, `w` joined by three parallel edges.
pub fn b3() -> MultiGraph {
    build(&["u", "w"], &[("u", "w"), ("u", "w"), ("u", "w")])
}

/// Triangle `a, b, c`.
pub fn c3() -> MultiGraph {
    build(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")])
}

/// Cycle `a – b – c – d – a`.
pub fn c4() -> MultiGraph {
    build(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
}

pub fn k4() -> MultiGraph {
    build(
        &["a", "b", "c", "d"],
        &[("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")],
    )
}

/// Triangle `a, b, c` plus `b – d`, `c – d`.
pub fn kite() -> MultiGraph {
    build(&["a", "b", "c", "d"], &[("a", "b"), ("a", "c"), ("b", "c"), ("b", "d"), ("c", "d")])
}

/// `a – b`, `a – c`, `b – c`, `b – d`, `c – e`, `d – e`.
pub fn kite_extended() -> MultiGraph {
    build(
        &["a", "b", "c", "d", "e"],
        &[("a", "b"), ("a", "c"), ("b", "c"), ("b", "d"), ("c", "e"), ("d", "e")],
    )
}

/// Kite with the chord `b – c` doubled.
pub fn kite_doubled() -> MultiGraph {
    build(
        &["a", "b", "c", "d"],
        &[("a", "b"), ("a", "c"), ("b", "c"), ("b", "c"), ("b", "d"), ("c", "d")],
    )
}

/// Six-cycle `a – b – c – d – e – f – a` with the chord `b – e`.
pub fn w() -> MultiGraph {
    build(
        &["a", "b", "c", "d", "e", "f"],
        &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "f"), ("f", "a"), ("b", "e")],
    )
}

/// Triangle `a, b, c` with a bridge `c – d`.
pub fn triangle_with_bridge() -> MultiGraph {
    build(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "a"), ("c", "d")])
}

/// Triangle `a, b, c` with the edge `a – b` doubled.
pub fn triangle_doubled() -> MultiGraph {
    build(&["a", "b", "c"], &[("a", "b"), ("a", "b"), ("b", "c"), ("c", "a")])
}

/// Every fixture, bridgeless ones first.
pub fn all() -> Vec<MultiGraph> {
    vec![
        b2(),
        b3(),
        c3(),
        c4(),
        k4(),
        kite(),
        kite_extended(),
        w(),
        kite_doubled(),
        triangle_doubled(),
        triangle_with_bridge(),
    ]
}

pub fn by_name(name: &str) -> Option<MultiGraph> {
    Some(match name {
        "b2" => b2(),
        "b3" => b3(),
        "c3" => c3(),
        "c4" => c4(),
        "k4" => k4(),
        "kite" => kite(),
        "kite_extended" => kite_extended(),
        "kite_doubled" => kite_doubled(),
        "w" => w(),
        "triangle_with_bridge" => triangle_with_bridge(),
        "triangle_doubled" => triangle_doubled(),
        _ => return None,
    })
}

/// A connected loopless multigraph on `2..=max_vertices` vertices `v0, v1, …`
/// with at most `max_edges` edges. `pick(k)` must return a value in `0..k`.
pub fn random_graph(mut pick: impl FnMut(usize) -> usize, max_vertices: usize, max_edges: usize) -> MultiGraph {
    assert!(max_vertices >= 2 && max_edges + 1 >= max_vertices);
    let n = 2 + pick(max_vertices - 1);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 1..n {
        let j = pick(i);
        edges.push((j, i));
    }
    let extra = pick(max_edges + 2 - n);
    for _ in 0..extra {
        let a = pick(n);
        let b = (a + 1 + pick(n - 1)) % n;
        edges.push((a, b));
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let pairs: Vec<(&str, &str)> = edges.iter().map(|&(a, b)| (refs[a], refs[b])).collect();
    build(&refs, &pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fixtures_have_expected_sizes() {
        let sizes: Vec<(usize, usize)> = all().iter().map(|g| (g.vertex_count(), g.edge_count())).collect();
        assert_eq!(sizes, [(2, 2), (2, 3), (3, 3), (4, 4), (4, 6), (4, 5), (5, 6), (6, 7), (4, 6), (3, 4), (4, 4)]);
        assert!(all()[..10].iter().all(|g| g.bridges().is_empty()));
    }

    #[test]
    fn random_graphs_respect_limits() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let g = random_graph(|k| rng.random_range(0..k), 5, 8);
            assert!((2..=5).contains(&g.vertex_count()));
            assert!(g.edge_count() <= 8 && g.edge_count() + 1 >= g.vertex_count());
        }
    }
}
