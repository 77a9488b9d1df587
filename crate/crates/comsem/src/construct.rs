use std::str::FromStr;

use crate::enumerate::{enumerate, EnumerationBudget};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::invariants::star_vertex;
use crate::presentation::Presentation;
use crate::semigroup::FiniteSemigroup;
use crate::word::Word;

/// How a graph edge is turned into relations when realizing a graph as a
/// commuting graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealizationVariant {
    /// Edge uv becomes the relation uv = vu.
    Equational,
    /// Edge uv becomes the relations uv = 0 and vu = 0.
    Monomial,
}

impl FromStr for RealizationVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<RealizationVariant> {
        match s {
            "equational" => Ok(RealizationVariant::Equational),
            "monomial" => Ok(RealizationVariant::Monomial),
            other => Err(Error::Precondition(format!(
                "unknown realization variant {other:?} (expected equational or monomial)"
            ))),
        }
    }
}

/// Builds a presentation whose commuting graph is exactly `g`: one
/// generator per vertex, every length-3 word equal to zero, and one
/// relation pair per edge chosen by `variant`.
///
/// Requires `g` to be nonempty and star-free (no vertex adjacent to all
/// others); a graph with a star vertex is never a commuting graph here
/// because such a vertex would be central.
pub fn realize_graph(g: &Graph, variant: RealizationVariant) -> Result<Presentation> {
    if g.order() == 0 {
        return Err(Error::Precondition(
            "cannot realize a graph with no vertices".into(),
        ));
    }
    if let Some(v) = star_vertex(g) {
        return Err(Error::NotStarFree(g.label(v).to_string()));
    }
    let mut p = Presentation::new(g.labels().to_vec())?;
    p.set_all_zero(3)?;
    for (i, j) in g.edges() {
        let uv = Word::letters(vec![i as u32, j as u32]);
        let vu = Word::letters(vec![j as u32, i as u32]);
        match variant {
            RealizationVariant::Equational => p.add_equation(uv, vu)?,
            RealizationVariant::Monomial => {
                p.add_monomial(uv)?;
                p.add_monomial(vu)?;
            }
        }
    }
    Ok(p)
}

/// Two-generator family with relations a^(n+1) = 0, b^2 = 0, aba = 0 and
/// b a^i b = 0 for i = 1..n. Its commuting graph has 3n - 1 vertices and
/// clique number 2n - 1.
pub fn odd_clique_presentation(n: usize) -> Presentation {
    assert!(n >= 1, "family is defined for n >= 1");
    let a = 0u32;
    let b = 1u32;
    let mut p = Presentation::new(vec!["a", "b"]).unwrap();
    p.add_monomial(Word::letters(vec![a; n + 1])).unwrap();
    p.add_monomial(Word::letters(vec![b, b])).unwrap();
    p.add_monomial(Word::letters(vec![a, b, a])).unwrap();
    for i in 1..=n {
        let mut w = vec![b];
        w.extend(std::iter::repeat_n(a, i));
        w.push(b);
        p.add_monomial(Word::letters(w)).unwrap();
    }
    p
}

/// Enumerated member of the odd clique family; 3n + 2 elements, words of
/// length n + 2 all vanish.
pub fn odd_clique_semigroup(n: usize) -> FiniteSemigroup {
    let budget = EnumerationBudget {
        max_word_length: (n + 2).max(8),
        ..EnumerationBudget::default()
    };
    enumerate(&odd_clique_presentation(n), &budget)
        .expect("family is nilpotent of degree n + 2")
        .0
}

/// Null union of the n-th odd clique member with the five element
/// semigroup; its commuting graph has clique number 2n.
pub fn even_clique_semigroup(n: usize) -> FiniteSemigroup {
    odd_clique_semigroup(n).null_union(&odd_clique_semigroup(1))
}

/// n-fold null union of the five element semigroup with itself; has
/// 4n + 1 elements and rank 2n.
pub fn null_union_power(n: usize) -> FiniteSemigroup {
    assert!(n >= 1, "need at least one factor");
    let five = odd_clique_semigroup(1);
    let mut s = five.clone();
    for _ in 1..n {
        s = s.null_union(&five);
    }
    s
}

/// Four-generator example whose commuting graph is the path
/// x1 - x2 - x3 - x4 and whose knit degree is three: x1 and x4 act the
/// same by left multiplication on the whole path, but no shorter left
/// path is certified.
pub fn knit_path_presentation() -> Presentation {
    let (x1, x2, x3, x4) = (0u32, 1u32, 2u32, 3u32);
    let mut p = Presentation::new(vec!["x1", "x2", "x3", "x4"]).unwrap();
    p.set_all_zero(3).unwrap();
    for (u, v) in [
        (x1, x2),
        (x4, x2),
        (x1, x3),
        (x4, x3),
        (x2, x1),
        (x2, x3),
        (x3, x2),
        (x3, x4),
    ] {
        p.add_monomial(Word::letters(vec![u, v])).unwrap();
    }
    p.add_equation(Word::letters(vec![x1, x1]), Word::letters(vec![x4, x1]))
        .unwrap();
    p.add_equation(Word::letters(vec![x4, x4]), Word::letters(vec![x1, x4]))
        .unwrap();
    p
}

/// Enumerated knit path example; 11 elements.
pub fn knit_path_semigroup() -> FiniteSemigroup {
    enumerate(&knit_path_presentation(), &EnumerationBudget::default())
        .expect("all length-3 words vanish")
        .0
}

/// Cycle on n >= 3 vertices labeled v1..vn.
pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Precondition(format!(
            "cycle graph needs at least 3 vertices, got {n}"
        )));
    }
    let mut g = Graph::with_order(n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n)?;
    }
    Ok(g)
}

/// Complete graph on 2n vertices minus a perfect matching; every vertex
/// has degree 2n - 2, so the graph is star-free for n >= 2.
pub fn cocktail_party_graph(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::Precondition(format!(
            "cocktail party graph needs n >= 2, got {n}"
        )));
    }
    let mut g = Graph::with_order(2 * n);
    for i in 0..2 * n {
        for j in i + 1..2 * n {
            if !(i % 2 == 0 && j == i + 1) {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g)
}
