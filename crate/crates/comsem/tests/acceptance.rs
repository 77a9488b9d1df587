//! Acceptance gate: one test per headline claim, each printing a single
//! pass line with its wall time. Limits are generous; the point is to fail
//! loudly if a kernel change makes something explode.

mod common;

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use comsem::construct::{
    even_clique_semigroup, null_union_power, odd_clique_semigroup, realize_graph,
    RealizationVariant,
};
use comsem::enumerate::{enumerate, EnumerationBudget};
use comsem::graph::{commuting_graph, Graph};
use comsem::invariants::{self, is_star_free, Girth};
use comsem::knit;
use comsem::presentation::Presentation;
use comsem::semigroup::FiniteSemigroup;
use comsem::verify::{certified_corpus, run_suite, VerifyOptions};
use comsem::word::Word;

fn finish(name: &str, started: Instant, limit_ms: Option<u128>) {
    let ms = started.elapsed().as_millis();
    if let Some(limit) = limit_ms {
        assert!(ms < limit, "{name} took {ms} ms, limit {limit} ms");
    }
    println!("{name}: PASS ({ms} ms)");
}

#[test]
fn odd_clique_family() {
    let started = Instant::now();
    for n in 1..=8usize {
        let s = odd_clique_semigroup(n);
        assert_eq!(s.order(), 3 * n + 2, "order of odd member {n}");
        let center = s.center();
        let center_names: Vec<&str> =
            center.iter().map(|i| s.element_name(i)).collect();
        let an_b = format!("{}b", "a".repeat(n));
        let b_an = format!("b{}", "a".repeat(n));
        assert_eq!(center_names, vec!["0", an_b.as_str(), b_an.as_str()]);
        let gamma = commuting_graph(&s);
        assert_eq!(gamma.order(), 3 * n - 1, "graph order of odd member {n}");
        assert_eq!(
            invariants::clique_number(&gamma),
            2 * n - 1,
            "clique number of odd member {n}"
        );
    }
    finish("odd clique family", started, Some(5_000));
}

#[test]
fn even_clique_family() {
    let started = Instant::now();
    for n in 1..=8usize {
        let t = even_clique_semigroup(n);
        let gamma = commuting_graph(&t);
        assert_eq!(
            invariants::clique_number(&gamma),
            2 * n,
            "clique number of even member {n}"
        );
        let gens = t.minimal_generating_set(4).expect("four generators");
        assert_eq!(gens.len(), 4, "generating set size of even member {n}");
        assert!(t.generates(&gens));
    }
    // no three elements generate the small members
    for n in 1..=4usize {
        let t = even_clique_semigroup(n);
        let m = t.order();
        for a in 0..m {
            for b in a..m {
                for c in b..m {
                    assert!(
                        !t.generates(&[a, b, c]),
                        "member {n} generated by three elements"
                    );
                }
            }
        }
    }
    finish("even clique family", started, Some(30_000));
}

/// Star-free masks counted by degree arithmetic alone, no graph machinery.
fn count_star_free_masks(n: usize) -> usize {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut count = 0;
    for mask in 0u32..1 << pairs.len() {
        let mut degree = vec![0usize; n];
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                degree[i] += 1;
                degree[j] += 1;
            }
        }
        if degree.iter().all(|&d| d + 1 != n) {
            count += 1;
        }
    }
    count
}

#[test]
fn star_free_realization_round_trip() {
    let started = Instant::now();
    let expected: usize = (2..=5).map(count_star_free_masks).sum();
    let result = run_suite("prop3", &VerifyOptions::default()).expect("suite runs");
    assert!(result.passed(), "round trip failed: {:?}", result.first_failure);
    assert_eq!(
        result.cases_run,
        2 * expected,
        "one case per star-free graph per variant"
    );
    finish("star-free realization round trip", started, Some(60_000));
}

#[test]
fn knit_degree_example() {
    let started = Instant::now();
    let (s, table) = enumerate(
        &comsem::construct::knit_path_presentation(),
        &EnumerationBudget::default(),
    )
    .expect("example enumerates");

    let gamma = commuting_graph(&s);
    assert_eq!(gamma.labels(), ["x1", "x2", "x3", "x4"]);
    assert_eq!(gamma.edges(), vec![(0, 1), (1, 2), (2, 3)]);

    assert_eq!(knit::knit_degree(&s), Some(3));
    let witness = knit::shortest_left_path(&s).expect("witness exists");
    assert!(witness.certified);
    let names: Vec<&str> = witness.vertices.iter().map(|&v| s.element_name(v)).collect();
    assert_eq!(names, ["x1", "x2", "x3", "x4"]);

    // no certified walk of one or two steps anywhere in the semigroup
    let center = s.center();
    let live: Vec<usize> = (0..s.order()).filter(|&x| !center.contains(x)).collect();
    for &u in &live {
        for &v in &live {
            if u != v && s.commutes(u, v) {
                assert_eq!(knit::is_left_path(&s, &[u, v]), Ok(false));
                for &w in &live {
                    if w != u && w != v && s.commutes(v, w) {
                        assert_eq!(knit::is_left_path(&s, &[u, v, w]), Ok(false));
                    }
                }
            }
        }
    }

    // letter swap x1<->x4, x2<->x3 induces an automorphism exchanging the ends
    let mut perm = Vec::with_capacity(s.order());
    for rep in table.representatives() {
        let image = match rep.as_letters() {
            None => Word::Zero,
            Some(ls) => Word::letters(ls.iter().map(|&g| 3 - g).collect()),
        };
        perm.push(table.element_of(&image).expect("image in table"));
    }
    let x1 = s.index_of("x1").unwrap();
    let x4 = s.index_of("x4").unwrap();
    assert_eq!(perm[x1], x4);
    assert_eq!(perm[x4], x1);
    assert!(s.is_automorphism(&perm));

    finish("knit degree example", started, Some(1_000));
}

#[test]
fn diameter_bound_random_corpus() {
    let started = Instant::now();
    let corpus = certified_corpus(1000, 7);
    assert_eq!(corpus.len(), 1000, "corpus fills up");
    let opts = VerifyOptions { n_max: 8, samples: 1000, seed: 7 };
    let result = run_suite("prop6", &opts).expect("suite runs");
    assert!(result.passed(), "bound violated: {:?}", result.first_failure);
    assert!(result.cases_run > 1000);
    assert_eq!(result.cases_run, result.cases_passed);
    finish("diameter bound random corpus", started, Some(120_000));
}

#[test]
fn commuting_graphs_are_star_free() {
    let started = Instant::now();
    let mut graphs = 0usize;
    let mut check = |s: &FiniteSemigroup| {
        assert!(is_star_free(&commuting_graph(s)), "star vertex in some graph");
        graphs += 1;
    };
    for n in 1..=8 {
        check(&odd_clique_semigroup(n));
        check(&even_clique_semigroup(n));
    }
    for n in 1..=4 {
        check(&null_union_power(n));
    }
    check(&comsem::construct::knit_path_semigroup());
    for entry in certified_corpus(1000, 7) {
        check(&entry.semigroup);
    }
    // every realized star-free graph, both variants
    let budget = EnumerationBudget::default();
    for n in 2..=5usize {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        for mask in 0u32..1 << pairs.len() {
            let labels: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
            let mut g = Graph::new(labels).unwrap();
            for (b, &(i, j)) in pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    g.add_edge(i, j).unwrap();
                }
            }
            if !is_star_free(&g) {
                continue;
            }
            for variant in [RealizationVariant::Equational, RealizationVariant::Monomial] {
                let p = realize_graph(&g, variant).expect("star-free realizes");
                let (s, _) = enumerate(&p, &budget).expect("realization enumerates");
                check(&s);
            }
        }
    }
    assert!(graphs > 2600, "swept {graphs} graphs");
    println!("checked {graphs} commuting graphs");
    finish("commuting graphs are star-free", started, None);
}

#[test]
fn rank_of_constructions() {
    let started = Instant::now();

    let square = comsem::construct::cycle_graph(4).unwrap();
    let p = realize_graph(&square, RealizationVariant::Monomial).unwrap();
    let (s, _) = enumerate(&p, &EnumerationBudget::default()).unwrap();
    assert_eq!(s.rank(s.order()).unwrap(), 4);
    // exhaustive floor: no smaller subset generates
    let m = s.order();
    for a in 0..m {
        for b in a..m {
            for c in b..m {
                assert!(!s.generates(&[a, b, c]));
            }
        }
    }

    for n in 1..=3usize {
        let u = null_union_power(n);
        assert_eq!(u.rank(u.order()).unwrap(), 2 * n, "rank of union power {n}");
        let floor = common_subset_floor(&u, 2 * n - 1);
        assert!(floor, "union power {n} has a small generating set");
    }

    finish("rank of constructions", started, Some(60_000));
}

/// True if no subset of size at most `k` generates `s`.
fn common_subset_floor(s: &FiniteSemigroup, k: usize) -> bool {
    fn go(s: &FiniteSemigroup, chosen: &mut Vec<usize>, from: usize, k: usize) -> bool {
        if s.generates(chosen) {
            return false;
        }
        if chosen.len() == k {
            return true;
        }
        for x in from..s.order() {
            chosen.push(x);
            if !go(s, chosen, x + 1, k) {
                return false;
            }
            chosen.pop();
        }
        true
    }
    go(s, &mut Vec::new(), 0, k)
}

#[test]
fn solvers_match_brute_force() {
    let started = Instant::now();

    // enumeration kernel against the full-rescan oracle
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let names = ["a", "b", "c"];
    let budget = EnumerationBudget { max_word_length: 4, max_classes: 10_000 };
    let mut kept = 0usize;
    let mut attempts = 0usize;
    while kept < 100 {
        attempts += 1;
        assert!(attempts < 3000, "presentation corpus ran dry");
        let d = rng.random_range(1..=3usize);
        let mut p = Presentation::new(names[..d].to_vec()).unwrap();
        p.set_all_zero(rng.random_range(3..=4usize)).unwrap();
        let random_word = |rng: &mut ChaCha8Rng, len: usize| {
            Word::letters((0..len).map(|_| rng.random_range(0..d as u32)).collect())
        };
        for _ in 0..rng.random_range(0..=4usize) {
            let len = rng.random_range(2..=3usize);
            p.add_monomial(random_word(&mut rng, len)).unwrap();
        }
        for _ in 0..rng.random_range(0..=2usize) {
            let (lu, lv) = (rng.random_range(1..=3usize), rng.random_range(2..=3usize));
            let u = random_word(&mut rng, lu);
            let v = random_word(&mut rng, lv);
            if u != v {
                p.add_equation(u, v).unwrap();
            }
        }
        let Ok((s, _)) = enumerate(&p, &budget) else { continue };
        let (names, table) =
            common::naive_enumerate(&p, 4).expect("oracle certifies what the kernel does");
        assert_eq!(s.element_names(), &names[..], "element names for {p}");
        for (x, row) in table.iter().enumerate() {
            for (y, &want) in row.iter().enumerate() {
                assert_eq!(s.mul(x, y), want, "table entry for {p}");
            }
        }
        kept += 1;
    }

    // clique and girth against subset and path enumeration
    let mut rng = ChaCha8Rng::seed_from_u64(4096);
    for case in 0..200 {
        let n = rng.random_range(4..=12usize);
        let p = rng.random_range(0.2..0.8);
        let mut g = Graph::with_order(n);
        for i in 0..n {
            for j in i + 1..n {
                if rng.random_bool(p) {
                    g.add_edge(i, j).unwrap();
                }
            }
        }
        assert_eq!(
            invariants::clique_number(&g),
            common::brute_clique_number(&g),
            "clique mismatch on case {case}"
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8192);
    for case in 0..200 {
        let n = rng.random_range(4..=10usize);
        let p = rng.random_range(0.2..0.8);
        let mut g = Graph::with_order(n);
        for i in 0..n {
            for j in i + 1..n {
                if rng.random_bool(p) {
                    g.add_edge(i, j).unwrap();
                }
            }
        }
        let fast = match invariants::girth(&g) {
            Girth::Finite(k) => Some(k),
            Girth::Infinite => None,
        };
        assert_eq!(fast, common::brute_girth(&g), "girth mismatch on case {case}");
    }

    finish("solvers match brute force", started, None);
}
