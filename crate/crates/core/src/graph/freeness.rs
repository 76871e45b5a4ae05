use crate::graph::structure::{c4_condition, connected_components, contains_diamond};
use crate::graph::{Graph, PatternId};

/// Whether `g` has no topological minor isomorphic to `pattern`, decided by
/// the structural characterization of each pattern.
pub fn is_free(g: &Graph, pattern: PatternId) -> bool {
    explain_violation(g, pattern).is_none()
}

/// `None` if `g` is `pattern`-free, otherwise the clause of the
/// characterization that fails.
pub fn explain_violation(g: &Graph, pattern: PatternId) -> Option<String> {
    match pattern {
        PatternId::P3 => degree_violation(g, 1),
        PatternId::K1s(0) => (g.n() > 0).then(|| "a single vertex is a topological minor".into()),
        PatternId::K1s(s) => degree_violation(g, s - 1),
        PatternId::P4 => component_violation(g, |c| c.is_triangle || c.is_star, "a triangle or a star"),
        PatternId::Paw => component_violation(g, |c| c.is_cycle || c.is_tree, "a cycle or a tree"),
        PatternId::Chair => component_violation(
            g,
            |c| c.size() <= 4 || c.is_path || c.is_cycle || c.is_star,
            "of size at most 4, a path, a cycle or a star",
        ),
        PatternId::C4 => {
            if contains_diamond(g) {
                Some("contains diamond".into())
            } else if !c4_condition(g) {
                Some("n - m + #triangles != #components".into())
            } else {
                None
            }
        }
        PatternId::Banner => {
            for c in connected_components(g) {
                if c.size() <= 4 || c.is_cycle {
                    continue;
                }
                if !c4_condition(&g.induced(&c.vertices)) {
                    return Some(format!(
                        "component containing vertex {} has {} vertices, is not a cycle and contains C4",
                        c.vertices[0],
                        c.size()
                    ));
                }
            }
            None
        }
    }
}

fn degree_violation(g: &Graph, max: usize) -> Option<String> {
    (0..g.n())
        .find(|&v| g.degree(v) > max)
        .map(|v| format!("vertex {v} has degree {} > {max}", g.degree(v)))
}

fn component_violation<F>(g: &Graph, ok: F, what: &str) -> Option<String>
where
    F: Fn(&crate::graph::ComponentSummary) -> bool,
{
    connected_components(g).into_iter().find(|c| !ok(c)).map(|c| {
        format!(
            "component containing vertex {} ({} vertices, {} edges) is not {what}",
            c.vertices[0],
            c.size(),
            c.edges
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    #[test]
    fn patterns_are_not_free_of_themselves() {
        for p in PatternId::catalogue() {
            assert!(!is_free(&p.graph(), p), "{p}");
            assert!(is_free(&Graph::new(0), p), "{p}");
        }
    }

    #[test]
    fn small_examples() {
        assert!(is_free(&path(2), PatternId::P3));
        assert!(!is_free(&path(3), PatternId::P3));
        assert!(is_free(&star(5), PatternId::P4));
        assert!(is_free(&cycle(3), PatternId::P4));
        assert!(!is_free(&cycle(4), PatternId::P4));
        assert!(is_free(&star(3), PatternId::K1s(4)));
        assert!(!is_free(&star(4), PatternId::K1s(4)));
        assert!(is_free(&cycle(7), PatternId::Paw));
        assert!(!is_free(&paw(), PatternId::Paw));
        assert!(is_free(&cycle(8), PatternId::Chair));
        assert!(is_free(&complete(4), PatternId::Chair));
        assert!(!is_free(&complete(5), PatternId::Chair));
        assert!(is_free(&cycle(6), PatternId::Banner));
        assert!(is_free(&complete(4), PatternId::Banner));
        assert!(!is_free(&complete(5), PatternId::Banner));
    }

    #[test]
    fn explanation_names_the_vertex() {
        let msg = explain_violation(&star(3), PatternId::P3).unwrap();
        assert!(msg.contains("vertex 0"), "{msg}");
    }
}
