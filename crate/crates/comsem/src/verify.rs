use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::construct::{
    cocktail_party_graph, cycle_graph, even_clique_semigroup, knit_path_presentation,
    null_union_power, odd_clique_semigroup, realize_graph, RealizationVariant,
};
use crate::enumerate::{enumerate, EnumerationBudget};
use crate::error::{Error, Result};
use crate::explore::mix64;
use crate::graph::{commuting_graph, Graph};
use crate::invariants::{
    are_isomorphic, clique_number, diameter, is_clique, is_connected, is_star_free, Diameter,
};
use crate::knit::{is_left_path, knit_degree, shortest_left_path};
use crate::par;
use crate::presentation::Presentation;
use crate::semigroup::{combinations, FiniteSemigroup};
use crate::word::{all_words, Word};

/// Suite names accepted by [`run_suite`].
pub const SUITES: [&str; 6] = ["prop3", "prop5", "prop6", "knit3", "rank", "nullunion"];

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Largest family index for the clique-number suites.
    pub n_max: usize,
    /// Corpus size for the randomized suites.
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> VerifyOptions {
        VerifyOptions {
            n_max: 8,
            samples: 1000,
            seed: 7,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifySuiteResult {
    pub suite: String,
    pub cases_run: usize,
    pub cases_passed: usize,
    pub first_failure: Option<String>,
    pub wall_time_ms: u64,
}

impl VerifySuiteResult {
    pub fn passed(&self) -> bool {
        self.cases_run > 0 && self.cases_passed == self.cases_run
    }
}

type Cases = Vec<(String, bool)>;

fn finish(suite: &str, cases: Cases, start: Instant) -> VerifySuiteResult {
    let cases_run = cases.len();
    let cases_passed = cases.iter().filter(|c| c.1).count();
    let first_failure = cases.iter().find(|c| !c.1).map(|c| c.0.clone());
    VerifySuiteResult {
        suite: suite.to_string(),
        cases_run,
        cases_passed,
        first_failure,
        wall_time_ms: start.elapsed().as_millis() as u64,
    }
}

/// Runs one verification suite by name. Every case re-derives its expected
/// values from scratch; a result with `cases_passed < cases_run` names the
/// first failing case.
pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<VerifySuiteResult> {
    let start = Instant::now();
    let cases = match name {
        "prop3" => realization_cases()?,
        "prop5" => clique_family_cases(opts),
        "prop6" => diameter_bound_cases(opts),
        "knit3" => knit_example_cases()?,
        "rank" => rank_cases()?,
        "nullunion" => null_union_cases(opts)?,
        other => {
            return Err(Error::Precondition(format!(
                "unknown suite {other:?} (expected one of {})",
                SUITES.join(", ")
            )))
        }
    };
    Ok(finish(name, cases, start))
}

fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::with_order(n);
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                g.add_edge(i, j).expect("indices in range");
            }
            bit += 1;
        }
    }
    g
}

/// Realization round trip over every star-free labeled graph on 2..=5
/// vertices: for both variants the commuting graph of the realized
/// semigroup equals the input graph, and the equational variant has
/// exactly n^2 + n + 1 - |E| elements. The 1-vertex graph is excluded:
/// its single generator is central, so no semigroup realizes it even
/// though it is star-free by convention.
fn realization_cases() -> Result<Cases> {
    let budget = EnumerationBudget::default();
    let mut cases = Cases::new();
    for n in 2..=5usize {
        let masks: Vec<u64> = (0..1u64 << (n * (n - 1) / 2)).collect();
        let per_mask = par::map_vec(&masks, |&mask| {
            let g = graph_from_mask(n, mask);
            if !is_star_free(&g) {
                return Cases::new();
            }
            let mut out = Cases::new();
            for variant in [RealizationVariant::Equational, RealizationVariant::Monomial] {
                let label = format!("n={n} mask={mask} {variant:?}");
                let ok = check_round_trip(&g, variant, &budget);
                out.push((label, ok));
            }
            out
        });
        cases.extend(per_mask.into_iter().flatten());
    }
    Ok(cases)
}

fn check_round_trip(g: &Graph, variant: RealizationVariant, budget: &EnumerationBudget) -> bool {
    let p = match realize_graph(g, variant) {
        Ok(p) => p,
        Err(_) => return false,
    };
    let s = match enumerate(&p, budget) {
        Ok((s, _)) => s,
        Err(_) => return false,
    };
    let gamma = commuting_graph(&s);
    if gamma.labels() != g.labels() || gamma.edges() != g.edges() {
        return false;
    }
    if variant == RealizationVariant::Equational {
        let n = g.order();
        if s.order() != n * n + n + 1 - g.size() {
            return false;
        }
    }
    is_star_free(&gamma)
}

/// Clique-number families: the two-generator members have order 3n + 2,
/// center {0, a^n b, b a^n}, a commuting graph on 3n - 1 vertices with
/// clique number exactly 2n - 1, and nilpotency degree n + 2; the null
/// unions with the five element member have order 3n + 6, clique number
/// exactly 2n, and rank 4.
fn clique_family_cases(opts: &VerifyOptions) -> Cases {
    let ns: Vec<usize> = (1..=opts.n_max.max(1)).collect();
    let per_n = par::map_vec(&ns, |&n| {
        let mut out = Cases::new();
        let s = odd_clique_semigroup(n);
        out.push((format!("odd n={n} order"), s.order() == 3 * n + 2));
        let center_names: Vec<String> = s
            .center()
            .iter()
            .map(|i| s.element_name(i).to_string())
            .collect();
        let a_n_b = format!("{}b", "a".repeat(n));
        let b_a_n = format!("b{}", "a".repeat(n));
        out.push((
            format!("odd n={n} center"),
            center_names == vec!["0".to_string(), a_n_b, b_a_n],
        ));
        let gamma = commuting_graph(&s);
        out.push((format!("odd n={n} graph order"), gamma.order() == 3 * n - 1));
        out.push((
            format!("odd n={n} clique number"),
            clique_number(&gamma) == 2 * n - 1,
        ));
        let mut witness_labels = vec!["b".to_string()];
        for i in 1..n {
            witness_labels.push(format!("{}b", "a".repeat(i)));
            witness_labels.push(format!("b{}", "a".repeat(i)));
        }
        let witness: Option<Vec<usize>> =
            witness_labels.iter().map(|l| gamma.index_of(l)).collect();
        out.push((
            format!("odd n={n} witness clique"),
            witness
                .map(|v| v.len() == 2 * n - 1 && is_clique(&gamma, &v))
                .unwrap_or(false),
        ));
        // any clique through b excludes every power of a
        let b_vertex = gamma.index_of("b");
        let powers_ok = (1..=n).all(|i| {
            match (b_vertex, gamma.index_of(&"a".repeat(i))) {
                (Some(b), Some(a)) => !gamma.has_edge(b, a),
                _ => false,
            }
        });
        out.push((format!("odd n={n} b excludes powers"), powers_ok));
        out.push((format!("odd n={n} star free"), is_star_free(&gamma)));
        let nil = s.nilpotency();
        out.push((
            format!("odd n={n} nilpotency"),
            nil.degree == Some(n + 2) && nil.central_exponent == Some(n + 1),
        ));

        let t = even_clique_semigroup(n);
        out.push((format!("even n={n} order"), t.order() == 3 * n + 6));
        let gt = commuting_graph(&t);
        out.push((
            format!("even n={n} clique number"),
            clique_number(&gt) == 2 * n,
        ));
        out.push((
            format!("even n={n} four generators"),
            t.generators().len() == 4 && t.generates(t.generators()),
        ));
        out.push((
            format!("even n={n} rank"),
            t.minimal_generating_set(4)
                .map(|g| g.len() == 4)
                .unwrap_or(false),
        ));
        out.push((format!("even n={n} star free"), is_star_free(&gt)));
        out
    });
    per_n.into_iter().flatten().collect()
}

/// One entry of the seeded verification corpus: a random monomial
/// presentation that passed the finiteness certificate.
#[derive(Clone)]
pub struct CorpusEntry {
    pub declared_generators: usize,
    pub presentation: Presentation,
    pub semigroup: FiniteSemigroup,
}

/// Builds a deterministic corpus of certified monomial semigroups of order
/// at most 64. Attempt shapes cycle through (2 generators, relation words
/// up to length 4), (3, up to 3) and (4, up to 3).
pub fn certified_corpus(samples: usize, seed: u64) -> Vec<CorpusEntry> {
    const SHAPES: [(usize, usize); 3] = [(2, 4), (3, 3), (4, 3)];
    let pools: Vec<Vec<Word>> = SHAPES
        .iter()
        .map(|&(d, l)| {
            all_words(d, l)
                .into_iter()
                .filter(|w| w.len() >= 2)
                .collect()
        })
        .collect();
    let names = ["a", "b", "c", "d"];
    let mut out = Vec::new();
    let cap = samples.saturating_mul(100).max(1000) as u64;
    let chunk = 256u64;
    let mut next = 0u64;
    while next < cap && out.len() < samples {
        let hi = (next + chunk).min(cap);
        let indices: Vec<u64> = (next..hi).collect();
        let batch = par::map_vec(&indices, |&i| {
            let shape = (i % 3) as usize;
            let (d, l) = SHAPES[shape];
            let mut rng = ChaCha8Rng::seed_from_u64(mix64(seed) ^ mix64(i.wrapping_add(1)));
            let density = rng.random_range(0.25..0.70);
            let mut p = Presentation::new(names[..d].to_vec()).expect("names are valid");
            for w in &pools[shape] {
                if rng.random_bool(density) {
                    p.add_monomial(w.clone()).expect("pool words are in range");
                }
            }
            let budget = EnumerationBudget {
                max_word_length: l + 3,
                max_classes: 10_000,
            };
            match enumerate(&p, &budget) {
                Ok((s, _)) if s.order() <= 64 => Some(CorpusEntry {
                    declared_generators: d,
                    presentation: p,
                    semigroup: s,
                }),
                _ => None,
            }
        });
        for entry in batch.into_iter().flatten() {
            if out.len() < samples {
                out.push(entry);
            }
        }
        next = hi;
    }
    out
}

/// Diameter bound over the seeded corpus: wherever a centralizing ideal
/// exists and the commuting graph is connected, the diameter is at most
/// rank + 2. The ideal witness itself is rechecked against the full table,
/// and the weaker bound using the declared generator count is tallied as a
/// separate case.
fn diameter_bound_cases(opts: &VerifyOptions) -> Cases {
    let corpus = certified_corpus(opts.samples, opts.seed);
    let mut cases = Cases::new();
    cases.push((
        format!(
            "corpus yields {} of {} requested samples",
            corpus.len(),
            opts.samples
        ),
        corpus.len() >= opts.samples,
    ));
    let judged: Vec<(bool, bool)> = par::map_vec(&corpus, judge_entry);
    let mut declared_ok = true;
    for (i, (ok, declared)) in judged.iter().enumerate() {
        cases.push((format!("sample {i}"), *ok));
        declared_ok &= declared;
    }
    cases.push((
        "diameter within declared generator count + 2".to_string(),
        declared_ok,
    ));
    cases
}

/// Returns (strong-form ok, declared-form ok) for one corpus entry.
fn judge_entry(entry: &CorpusEntry) -> (bool, bool) {
    let s = &entry.semigroup;
    let witness = s.centralizing_ideal();
    if s.is_commutative() {
        // no non-central subset exists, so the finder must come up empty
        return (witness.is_none(), true);
    }
    let t = match witness {
        Some(t) => t,
        None => return (false, true),
    };
    let z = s.center();
    let non_central = t.iter().any(|i| !z.contains(i));
    let ideal = s.is_ideal(&t);
    let products_central = t.iter().all(|i| {
        (0..s.order()).all(|x| z.contains(s.mul(i, x)) && z.contains(s.mul(x, i)))
    });
    let gamma = commuting_graph(s);
    let (bound_rank, bound_declared) = if is_connected(&gamma) {
        match (diameter(&gamma), s.rank(s.order())) {
            (Diameter::Finite(d), Ok(r)) => (d <= r + 2, d <= entry.declared_generators + 2),
            _ => (false, false),
        }
    } else {
        (true, true)
    };
    (
        non_central && ideal && products_central && bound_rank,
        bound_declared,
    )
}

/// The knit example: its commuting graph is the labeled path
/// x1 - x2 - x3 - x4, the knit degree is exactly 3 with the full path as
/// witness, no certified left path or walk of length 1 or 2 exists, and
/// swapping x1 with x4 and x2 with x3 is a Cayley-table automorphism.
fn knit_example_cases() -> Result<Cases> {
    let (s, table) = enumerate(&knit_path_presentation(), &EnumerationBudget::default())?;
    let mut cases = Cases::new();
    cases.push(("order".to_string(), s.order() == 11));
    let gamma = commuting_graph(&s);
    cases.push((
        "graph is the labeled path".to_string(),
        gamma.labels() == ["x1", "x2", "x3", "x4"]
            && gamma.edges() == vec![(0, 1), (1, 2), (2, 3)],
    ));
    let witness: Option<Vec<usize>> = ["x1", "x2", "x3", "x4"]
        .iter()
        .map(|l| s.index_of(l))
        .collect();
    let witness = witness.unwrap_or_default();
    cases.push((
        "full path certifies".to_string(),
        witness.len() == 4 && is_left_path(&s, &witness) == Ok(true),
    ));
    cases.push((
        "knit degree three".to_string(),
        knit_degree(&s) == Some(3)
            && shortest_left_path(&s).map(|p| p.vertices) == Some(witness.clone()),
    ));

    let z = s.center();
    let verts: Vec<usize> = (0..s.order()).filter(|&i| !z.contains(i)).collect();
    let mut certified_edge = false;
    for &a in &verts {
        for &b in &verts {
            if a != b
                && s.commutes(a, b)
                && s.mul(a, a) == s.mul(b, a)
                && s.mul(a, b) == s.mul(b, b)
            {
                certified_edge = true;
            }
        }
    }
    cases.push(("no certified walk of length one".to_string(), !certified_edge));
    let mut certified_triple = false;
    for &a in &verts {
        for &b in &verts {
            for &c in &verts {
                if a != b
                    && b != c
                    && a != c
                    && s.commutes(a, b)
                    && s.commutes(b, c)
                    && s.mul(a, a) == s.mul(c, a)
                    && s.mul(a, b) == s.mul(c, b)
                    && s.mul(a, c) == s.mul(c, c)
                {
                    certified_triple = true;
                }
            }
        }
    }
    cases.push((
        "no certified walk of length two".to_string(),
        !certified_triple,
    ));

    // the swap x1 <-> x4, x2 <-> x3 lifted through the congruence
    let swap = |w: &Word| -> Word {
        match w.as_letters() {
            None => Word::Zero,
            Some(ls) => Word::letters(ls.iter().map(|&l| 3 - l).collect()),
        }
    };
    let perm: Result<Vec<usize>> = table
        .representatives()
        .iter()
        .map(|rep| table.element_of(&swap(rep)))
        .collect();
    let auto_ok = match perm {
        Ok(perm) => {
            let x1 = s.index_of("x1").unwrap_or(usize::MAX);
            let x4 = s.index_of("x4").unwrap_or(usize::MAX);
            x1 < s.order() && perm[x1] == x4 && s.is_automorphism(&perm)
        }
        Err(_) => false,
    };
    cases.push(("endpoint swap is an automorphism".to_string(), auto_ok));
    cases.push(("star free".to_string(), is_star_free(&gamma)));
    Ok(cases)
}

/// Rank facts: the monomial realization of the square has rank exactly 4
/// (with a brute-force floor check), iterated null unions of the five
/// element semigroup have rank 2n, the odd clique family has rank 2, and
/// equational realizations of the complete-minus-matching graphs on 2n
/// vertices have rank 2n.
fn rank_cases() -> Result<Cases> {
    let budget = EnumerationBudget::default();
    let mut cases = Cases::new();

    let square = cycle_graph(4)?;
    let (sq, _) = enumerate(&realize_graph(&square, RealizationVariant::Monomial)?, &budget)?;
    cases.push((
        "square monomial realization has rank four".to_string(),
        sq.rank(sq.order()).map(|r| r == 4).unwrap_or(false),
    ));
    let mut small_generates = false;
    for k in 1..=3 {
        for combo in combinations(sq.order(), k) {
            if sq.generates(&combo) {
                small_generates = true;
            }
        }
    }
    cases.push((
        "square monomial realization resists three generators".to_string(),
        !small_generates,
    ));

    for n in 1..=3usize {
        let u = null_union_power(n);
        cases.push((
            format!("union power {n} rank"),
            u.rank(u.order()).map(|r| r == 2 * n).unwrap_or(false),
        ));
        let mut floor_broken = false;
        for k in 1..2 * n {
            for combo in combinations(u.order(), k) {
                if u.generates(&combo) {
                    floor_broken = true;
                }
            }
        }
        cases.push((format!("union power {n} floor"), !floor_broken));
    }

    for n in 1..=5usize {
        let s = odd_clique_semigroup(n);
        cases.push((
            format!("odd n={n} rank two"),
            s.rank(s.order()).map(|r| r == 2).unwrap_or(false),
        ));
    }

    for n in 2..=3usize {
        let g = cocktail_party_graph(n)?;
        let (s, _) = enumerate(&realize_graph(&g, RealizationVariant::Equational)?, &budget)?;
        cases.push((
            format!("complete minus matching on {} vertices rank", 2 * n),
            s.rank(s.order()).map(|r| r == 2 * n).unwrap_or(false),
        ));
    }

    // reported value only: the realized pentagon needs all five generators
    let pentagon = cycle_graph(5)?;
    let (pent, _) = enumerate(&realize_graph(&pentagon, RealizationVariant::Equational)?, &budget)?;
    cases.push((
        "pentagon realization rank".to_string(),
        pent.rank(pent.order()).map(|r| r == 5).unwrap_or(false),
    ));

    Ok(cases)
}

/// Null union structure: order and center arithmetic, the commuting graph
/// of a union equals the join of the commuting graphs as labeled graphs,
/// clique numbers add, and the result stays star-free. Checked on the
/// clique families and on random pairs from the certified corpus.
fn null_union_cases(opts: &VerifyOptions) -> Result<Cases> {
    let mut cases = Cases::new();
    let five = odd_clique_semigroup(1);
    for n in 1..=4usize {
        let a = odd_clique_semigroup(n);
        let u = a.null_union(&five);
        cases.push((
            format!("family n={n} order arithmetic"),
            u.order() == a.order() + five.order() - 1,
        ));
        cases.push((
            format!("family n={n} center arithmetic"),
            u.center().len() == a.center().len() + five.center().len() - 1,
        ));
        let expected_center: Vec<String> = std::iter::once("0".to_string())
            .chain(
                a.center()
                    .iter()
                    .filter(|&i| i != 0)
                    .map(|i| format!("L:{}", a.element_name(i))),
            )
            .chain(
                five.center()
                    .iter()
                    .filter(|&i| i != 0)
                    .map(|i| format!("R:{}", five.element_name(i))),
            )
            .collect();
        let got_center: Vec<String> = u
            .center()
            .iter()
            .map(|i| u.element_name(i).to_string())
            .collect();
        cases.push((format!("family n={n} center labels"), got_center == expected_center));
        let join = commuting_graph(&a).join(&commuting_graph(&five));
        let gu = commuting_graph(&u);
        cases.push((
            format!("family n={n} graph equals join"),
            gu.labels() == join.labels() && gu.edges() == join.edges(),
        ));
        cases.push((
            format!("family n={n} cliques add"),
            clique_number(&gu)
                == clique_number(&commuting_graph(&a)) + clique_number(&commuting_graph(&five)),
        ));
        cases.push((format!("family n={n} star free"), is_star_free(&gu)));
    }

    let uu = null_union_power(2);
    let square_iso = are_isomorphic(&commuting_graph(&uu), &cycle_graph(4)?).unwrap_or(false);
    cases.push(("doubled five element graph is the square".to_string(), square_iso));

    let pair_target = opts.samples.min(300);
    let corpus: Vec<CorpusEntry> = certified_corpus(pair_target * 3, opts.seed.wrapping_add(1))
        .into_iter()
        .filter(|e| commuting_graph(&e.semigroup).order() <= 20)
        .collect();
    let pairs: Vec<(&CorpusEntry, &CorpusEntry)> = corpus
        .chunks_exact(2)
        .map(|c| (&c[0], &c[1]))
        .take(pair_target)
        .collect();
    let judged = par::map_vec(&pairs, |&(x, y)| {
        let a = &x.semigroup;
        let b = &y.semigroup;
        let u = a.null_union(b);
        if u.order() != a.order() + b.order() - 1 {
            return false;
        }
        if u.center().len() != a.center().len() + b.center().len() - 1 {
            return false;
        }
        let ga = commuting_graph(a);
        let gb = commuting_graph(b);
        let join = ga.join(&gb);
        let gu = commuting_graph(&u);
        gu.labels() == join.labels()
            && gu.edges() == join.edges()
            && clique_number(&gu) == clique_number(&ga) + clique_number(&gb)
            && is_star_free(&gu)
    });
    cases.push((
        format!("random pair corpus of {}", pairs.len()),
        !pairs.is_empty(),
    ));
    for (i, ok) in judged.iter().enumerate() {
        cases.push((format!("random pair {i}"), *ok));
    }
    Ok(cases)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_opts() -> VerifyOptions {
        VerifyOptions {
            n_max: 3,
            samples: 40,
            seed: 11,
        }
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(matches!(
            run_suite("prop4", &VerifyOptions::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn knit_suite_passes() {
        let r = run_suite("knit3", &VerifyOptions::default()).unwrap();
        assert!(r.passed(), "first failure: {:?}", r.first_failure);
        assert_eq!(r.suite, "knit3");
    }

    #[test]
    fn clique_suite_passes_small() {
        let r = run_suite("prop5", &quick_opts()).unwrap();
        assert!(r.passed(), "first failure: {:?}", r.first_failure);
    }

    #[test]
    fn diameter_suite_passes_small() {
        let r = run_suite("prop6", &quick_opts()).unwrap();
        assert!(r.passed(), "first failure: {:?}", r.first_failure);
        assert!(r.cases_run >= 40);
    }

    #[test]
    fn rank_suite_passes() {
        let r = run_suite("rank", &VerifyOptions::default()).unwrap();
        assert!(r.passed(), "first failure: {:?}", r.first_failure);
    }

    #[test]
    fn null_union_suite_passes_small() {
        let r = run_suite("nullunion", &quick_opts()).unwrap();
        assert!(r.passed(), "first failure: {:?}", r.first_failure);
    }

    #[test]
    fn corpus_is_deterministic() {
        let a = certified_corpus(25, 3);
        let b = certified_corpus(25, 3);
        assert_eq!(a.len(), 25);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.presentation.to_compact_string(), y.presentation.to_compact_string());
            assert_eq!(x.semigroup.element_names(), y.semigroup.element_names());
        }
    }
}
