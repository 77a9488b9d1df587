//! Brute-force oracles, deliberately dumber and structurally different
//! from the library's solvers.

use std::collections::HashMap;

use comsem::graph::Graph;
use comsem::presentation::Presentation;
use comsem::word::Word;

/// All letter vectors over `k` letters of the given length, lexicographic.
fn vectors_of_len(k: usize, len: usize) -> Vec<Vec<u32>> {
    let mut level: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::with_capacity(level.len() * k);
        for w in &level {
            for g in 0..k as u32 {
                let mut v = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        level = next;
    }
    level
}

fn vectors_up_to(k: usize, hi: usize) -> Vec<Vec<u32>> {
    (1..=hi).flat_map(|len| vectors_of_len(k, len)).collect()
}

/// Naive enumeration by repeated full rescans over an explicit word
/// universe: every relation is applied in every context each pass, classes
/// are merged by relabeling the whole universe, and the pass loop runs to
/// a fixpoint. Tries certificate lengths 1..=max_len; returns element names
/// and the Cayley table for the first length whose top two word layers all
/// collapse to zero, or None.
pub fn naive_enumerate(p: &Presentation, max_len: usize) -> Option<(Vec<String>, Vec<Vec<usize>>)> {
    let k = p.generator_count();
    let base_monomials: Vec<Vec<u32>> = p
        .monomial_relations()
        .filter_map(|w| w.as_letters().map(|ls| ls.to_vec()))
        .collect();
    let equations: Vec<(Vec<u32>, Vec<u32>)> = p
        .equational_relations()
        .filter_map(|(u, v)| Some((u.as_letters()?.to_vec(), v.as_letters()?.to_vec())))
        .collect();
    'lengths: for l in 1..=max_len {
        let win = l + 1;
        let mut monomials = base_monomials.clone();
        if let Some(az) = p.all_zero_len() {
            if az <= win {
                monomials.extend(vectors_of_len(k, az));
            }
        }
        // index 0 is the zero symbol, then all words of length 1..=win
        let universe: Vec<Option<Vec<u32>>> = std::iter::once(None)
            .chain(vectors_up_to(k, win).into_iter().map(Some))
            .collect();
        let index: HashMap<Vec<u32>, usize> = universe
            .iter()
            .enumerate()
            .filter_map(|(i, u)| u.clone().map(|w| (w, i)))
            .collect();
        let find = |w: &[u32]| index.get(w).copied();
        let mut label: Vec<usize> = (0..universe.len()).collect();
        let contexts: Vec<(Vec<u32>, Vec<u32>)> = {
            let mut cs = vec![(vec![], vec![])];
            for left_len in 0..win {
                for right_len in 0..win - left_len {
                    if left_len + right_len == 0 {
                        continue;
                    }
                    for lw in vectors_of_len(k, left_len) {
                        for rw in vectors_of_len(k, right_len) {
                            cs.push((lw.clone(), rw));
                        }
                    }
                }
            }
            cs
        };
        let glue = |a: &[u32], b: &[u32], c: &[u32]| -> Vec<u32> {
            let mut v = Vec::with_capacity(a.len() + b.len() + c.len());
            v.extend_from_slice(a);
            v.extend_from_slice(b);
            v.extend_from_slice(c);
            v
        };
        loop {
            let mut changed = false;
            let merge = |label: &mut Vec<usize>, a: usize, b: usize, changed: &mut bool| {
                let (la, lb) = (label[a], label[b]);
                if la != lb {
                    let keep = la.min(lb);
                    for x in label.iter_mut() {
                        if *x == la || *x == lb {
                            *x = keep;
                        }
                    }
                    *changed = true;
                }
            };
            for w in &monomials {
                for (lw, rw) in &contexts {
                    if lw.len() + w.len() + rw.len() > win {
                        continue;
                    }
                    if let Some(i) = find(&glue(lw, w, rw)) {
                        merge(&mut label, i, 0, &mut changed);
                    }
                }
            }
            for (u, v) in &equations {
                for (lw, rw) in &contexts {
                    let fit = lw.len() + u.len().max(v.len()) + rw.len() <= win;
                    if !fit {
                        continue;
                    }
                    if let (Some(i), Some(j)) = (find(&glue(lw, u, rw)), find(&glue(lw, v, rw))) {
                        merge(&mut label, i, j, &mut changed);
                    }
                }
            }
            // close equal pairs under one-letter extension on both sides
            for i in 0..universe.len() {
                for j in i + 1..universe.len() {
                    if label[i] != label[j] {
                        continue;
                    }
                    for g in 0..k as u32 {
                        let extend = |w: &Option<Vec<u32>>, front: bool| -> Option<Vec<u32>> {
                            let ls = w.as_ref()?;
                            let mut out = Vec::with_capacity(ls.len() + 1);
                            if front {
                                out.push(g);
                                out.extend_from_slice(ls);
                            } else {
                                out.extend_from_slice(ls);
                                out.push(g);
                            }
                            Some(out)
                        };
                        for front in [true, false] {
                            let a = extend(&universe[i], front).and_then(|w| find(&w));
                            let b = extend(&universe[j], front).and_then(|w| find(&w));
                            if let (Some(a), Some(b)) = (a, b) {
                                merge(&mut label, a, b, &mut changed);
                            }
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        // certificate: both top layers must vanish
        for (i, u) in universe.iter().enumerate() {
            if let Some(w) = u {
                if w.len() >= l && label[i] != label[0] {
                    continue 'lengths;
                }
            }
        }
        // elements are the classes met by zero and the short words
        let mut reps: Vec<usize> = Vec::new();
        for (i, u) in universe.iter().enumerate() {
            let keep = u.as_ref().map(|w| w.len() < l).unwrap_or(true);
            if keep && !reps.iter().any(|&r| label[r] == label[i]) {
                reps.push(i);
            }
        }
        // universe order is shortlex with zero first, so reps are canonical
        let names: Vec<String> = reps
            .iter()
            .map(|&i| match &universe[i] {
                None => "0".to_string(),
                Some(w) => p.render_word(&Word::letters(w.clone())),
            })
            .collect();
        let class_of = |lab: usize| reps.iter().position(|&r| label[r] == lab).unwrap();
        let mut table = vec![vec![0usize; reps.len()]; reps.len()];
        for (x, &ix) in reps.iter().enumerate() {
            for (y, &iy) in reps.iter().enumerate() {
                table[x][y] = match (&universe[ix], &universe[iy]) {
                    (None, _) | (_, None) => 0,
                    (Some(u), Some(v)) => {
                        let product = glue(u, v, &[]);
                        if product.len() >= l {
                            0
                        } else {
                            class_of(label[find(&product).unwrap()])
                        }
                    }
                };
            }
        }
        return Some((names, table));
    }
    None
}

/// Maximum clique size by scanning every vertex subset.
pub fn brute_clique_number(g: &Graph) -> usize {
    let n = g.order();
    assert!(n <= 20, "oracle is exponential");
    let mut best = 0;
    for mask in 0u32..1 << n {
        let verts: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if verts.len() <= best {
            continue;
        }
        let all_adjacent = verts
            .iter()
            .enumerate()
            .all(|(i, &u)| verts[i + 1..].iter().all(|&v| g.has_edge(u, v)));
        if all_adjacent {
            best = verts.len();
        }
    }
    best
}

/// Shortest cycle length by enumerating simple paths; `None` for forests.
pub fn brute_girth(g: &Graph) -> Option<usize> {
    let n = g.order();
    let mut best: Option<usize> = None;
    for start in 0..n {
        let mut on = vec![false; n];
        on[start] = true;
        let mut path = vec![start];
        cycle_search(g, start, &mut path, &mut on, &mut best);
        if best == Some(3) {
            break;
        }
    }
    best
}

fn cycle_search(
    g: &Graph,
    start: usize,
    path: &mut Vec<usize>,
    on: &mut [bool],
    best: &mut Option<usize>,
) {
    let cur = *path.last().unwrap();
    for &nb in g.neighbors(cur) {
        if nb == start && path.len() >= 3 && best.map(|b| path.len() < b).unwrap_or(true) {
            *best = Some(path.len());
        }
        // keep start minimal on the cycle so each cycle is counted once
        if nb > start && !on[nb] {
            on[nb] = true;
            path.push(nb);
            cycle_search(g, start, path, on, best);
            path.pop();
            on[nb] = false;
        }
    }
}
