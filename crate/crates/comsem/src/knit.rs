use crate::error::{Error, Result};
use crate::graph::{commuting_graph, Graph};
use crate::par;
use crate::semigroup::FiniteSemigroup;

/// A certified left path: a simple path a1, .., am in the commuting graph
/// whose endpoints act identically by left multiplication on every vertex
/// of the path, i.e. a1 * ai = am * ai for all i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftPath {
    /// Element indices in path order.
    pub vertices: Vec<usize>,
    /// Whether the endpoint condition holds along the path.
    pub certified: bool,
}

impl LeftPath {
    /// Number of edges.
    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// Checks whether `path` (a sequence of element indices) is a certified
/// left path. Returns `Ok(false)` when the sequence is a simple path in
/// the commuting graph but the endpoint condition fails, and an error when
/// it is not a simple path at all.
pub fn is_left_path(s: &FiniteSemigroup, path: &[usize]) -> Result<bool> {
    validate_path(s, path)?;
    Ok(certifies(s, path))
}

fn certifies(s: &FiniteSemigroup, path: &[usize]) -> bool {
    let first = path[0];
    let last = *path.last().unwrap();
    path.iter().all(|&a| s.mul(first, a) == s.mul(last, a))
}

fn validate_path(s: &FiniteSemigroup, path: &[usize]) -> Result<()> {
    for &i in path {
        if i >= s.order() {
            return Err(Error::Precondition(format!(
                "element index {i} out of range for a semigroup of order {}",
                s.order()
            )));
        }
    }
    if path.len() < 2 {
        return Err(Error::NotAPath(
            "a left path needs at least two vertices".into(),
        ));
    }
    let mut seen = vec![false; s.order()];
    for &i in path {
        if seen[i] {
            return Err(Error::NotAPath(format!(
                "vertex {} repeats",
                s.element_name(i)
            )));
        }
        seen[i] = true;
    }
    let center = s.center();
    for &i in path {
        if center.contains(i) {
            return Err(Error::NotAPath(format!(
                "{} is central, so it is not a vertex of the commuting graph",
                s.element_name(i)
            )));
        }
    }
    for w in path.windows(2) {
        if !s.commutes(w[0], w[1]) {
            return Err(Error::NotAPath(format!(
                "{} and {} do not commute",
                s.element_name(w[0]),
                s.element_name(w[1])
            )));
        }
    }
    Ok(())
}

/// Shortest certified left path, or `None` when no path of any length is
/// certified. Ties break to the lexicographically least vertex sequence.
/// The search is exhaustive, iterating path lengths in increasing order;
/// it is guaranteed cheap for commuting graphs of up to 16 vertices and
/// for graphs where short paths certify.
pub fn shortest_left_path(s: &FiniteSemigroup) -> Option<LeftPath> {
    let gamma = commuting_graph(s);
    let n = gamma.order();
    if n < 2 {
        return None;
    }
    let elem: Vec<usize> = gamma
        .labels()
        .iter()
        .map(|l| s.index_of(l).expect("commuting graph labels are element names"))
        .collect();
    for edges in 1..n {
        let hits = par::map_range(n, |start| first_path_from(&gamma, s, &elem, start, edges));
        if let Some(best) = hits.into_iter().flatten().min() {
            return Some(LeftPath {
                vertices: best,
                certified: true,
            });
        }
    }
    None
}

/// Length of the shortest certified left path.
pub fn knit_degree(s: &FiniteSemigroup) -> Option<usize> {
    shortest_left_path(s).map(|p| p.length())
}

/// First certified path with `edges` edges found by depth-first search
/// from `start`, visiting neighbors in ascending order, so the result is
/// the lexicographically least such path starting there.
fn first_path_from(
    gamma: &Graph,
    s: &FiniteSemigroup,
    elem: &[usize],
    start: usize,
    edges: usize,
) -> Option<Vec<usize>> {
    let mut on_path = vec![false; gamma.order()];
    on_path[start] = true;
    let mut path = vec![start];
    extend(gamma, s, elem, &mut path, &mut on_path, edges + 1)
}

fn extend(
    gamma: &Graph,
    s: &FiniteSemigroup,
    elem: &[usize],
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    want: usize,
) -> Option<Vec<usize>> {
    if path.len() == want {
        let epath: Vec<usize> = path.iter().map(|&v| elem[v]).collect();
        if certifies(s, &epath) {
            return Some(epath);
        }
        return None;
    }
    let cur = *path.last().unwrap();
    for &nb in gamma.neighbors(cur) {
        if on_path[nb] {
            continue;
        }
        on_path[nb] = true;
        path.push(nb);
        if let Some(hit) = extend(gamma, s, elem, path, on_path, want) {
            return Some(hit);
        }
        path.pop();
        on_path[nb] = false;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{knit_path_semigroup, odd_clique_semigroup};

    #[test]
    fn path_example_has_degree_three() {
        let s = knit_path_semigroup();
        let idx = |n: &str| s.index_of(n).unwrap();
        let full = vec![idx("x1"), idx("x2"), idx("x3"), idx("x4")];
        assert_eq!(is_left_path(&s, &full), Ok(true));
        let p = shortest_left_path(&s).unwrap();
        assert_eq!(p.vertices, full);
        assert_eq!(p.length(), 3);
        assert!(p.certified);
        assert_eq!(knit_degree(&s), Some(3));
    }

    #[test]
    fn path_example_rejects_short_witnesses() {
        let s = knit_path_semigroup();
        let idx = |n: &str| s.index_of(n).unwrap();
        assert_eq!(is_left_path(&s, &[idx("x1"), idx("x2")]), Ok(false));
        assert_eq!(
            is_left_path(&s, &[idx("x1"), idx("x2"), idx("x3")]),
            Ok(false)
        );
    }

    #[test]
    fn invalid_paths_are_errors() {
        let s = knit_path_semigroup();
        let idx = |n: &str| s.index_of(n).unwrap();
        assert!(matches!(
            is_left_path(&s, &[idx("x1")]),
            Err(Error::NotAPath(_))
        ));
        assert!(matches!(
            is_left_path(&s, &[idx("x1"), idx("x1")]),
            Err(Error::NotAPath(_))
        ));
        // x1 and x4 commute but x1 - x4 is not an edge path through the graph
        assert!(matches!(
            is_left_path(&s, &[idx("x1"), idx("x3")]),
            Err(Error::NotAPath(_))
        ));
        assert!(matches!(
            is_left_path(&s, &[0, idx("x2")]),
            Err(Error::NotAPath(_))
        ));
        assert!(matches!(
            is_left_path(&s, &[99, 1]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn odd_clique_has_degree_one() {
        // ab * x = 0 = b * x for x in {ab, b}, so (ab, b) certifies
        let s = odd_clique_semigroup(2);
        assert_eq!(knit_degree(&s), Some(1));
    }

    #[test]
    fn five_element_semigroup_has_no_left_path() {
        let s = odd_clique_semigroup(1);
        assert_eq!(shortest_left_path(&s), None);
        assert_eq!(knit_degree(&s), None);
    }
}
