use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::semigroup::FiniteSemigroup;
use crate::word::{all_words, Word};

/// Limits for the enumeration kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    /// Certificate search stops after this word length.
    pub max_word_length: usize,
    /// Abort if more words than this would be materialized.
    pub max_classes: usize,
}

impl Default for EnumerationBudget {
    fn default() -> EnumerationBudget {
        EnumerationBudget {
            max_word_length: 8,
            max_classes: 1_000_000,
        }
    }
}

/// Union-find over word ids that tracks the minimum id in each class. Word
/// ids follow shortlex order, so the minimum id is the shortlex-least word.
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    min_id: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            min_id: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Union two classes; returns false if they were already one.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.min_id[ra] = self.min_id[ra].min(self.min_id[rb]);
        true
    }
}

/// How to treat words longer than the materialized limit.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Overflow {
    /// Identify them with zero (valid once a nilpotency certificate says
    /// every word of that length is zero).
    Zero,
    /// Ignore relation instances that mention them (used while searching
    /// for the certificate, so the closure stays an underapproximation).
    Drop,
}

/// Congruence closure over all words of length at most `limit`, plus zero.
struct Closure {
    k: usize,
    limit: usize,
    /// `starts[l]` is the id of the first word of length `l`; id 0 is zero.
    starts: Vec<usize>,
    words: Vec<Word>,
    uf: UnionFind,
}

impl Closure {
    fn build(
        p: &Presentation,
        limit: usize,
        overflow: Overflow,
        max_classes: usize,
    ) -> Result<Closure> {
        let k = p.generator_count();
        let mut starts = Vec::with_capacity(limit + 2);
        starts.push(0);
        let mut total: u128 = 1;
        let mut block: u128 = 1;
        for _ in 1..=limit {
            starts.push(total as usize);
            block = block.saturating_mul(k as u128);
            total = total.saturating_add(block);
            if total > max_classes as u128 {
                return Err(Error::BudgetExceeded(format!(
                    "more than {max_classes} words of length at most {limit}"
                )));
            }
        }
        starts.push(total as usize);

        let mut words = Vec::with_capacity(total as usize);
        words.push(Word::Zero);
        words.extend(all_words(k, limit));
        debug_assert_eq!(words.len(), total as usize);

        let mut closure = Closure {
            k,
            limit,
            starts,
            words,
            uf: UnionFind::new(total as usize),
        };
        closure.run(p, overflow);
        Ok(closure)
    }

    /// Id of a word of length 1..=limit: block start plus base-k digits.
    fn word_id(&self, letters: &[u32]) -> usize {
        let mut v = 0usize;
        for &l in letters {
            v = v * self.k + l as usize;
        }
        self.starts[letters.len()] + v
    }

    /// Id of an arbitrary word, if the closure can talk about it.
    fn image(&self, w: &Word, overflow: Overflow) -> Option<usize> {
        match w.as_letters() {
            None => Some(0),
            Some(ls) if ls.len() <= self.limit => Some(self.word_id(ls)),
            Some(_) => match overflow {
                Overflow::Zero => Some(0),
                Overflow::Drop => None,
            },
        }
    }

    fn run(&mut self, p: &Presentation, overflow: Overflow) {
        let mut pending: Vec<(usize, usize)> = Vec::new();
        for id in 1..self.words.len() {
            if p.reduce_zero(&self.words[id]).is_zero() {
                pending.push((id, 0));
            }
        }
        for (u, v) in p.equational_relations() {
            if let (Some(a), Some(b)) = (self.image(u, overflow), self.image(v, overflow)) {
                pending.push((a, b));
            }
        }
        // Each merged pair re-emits its one-generator extensions, which by
        // transitivity closes the relation under arbitrary contexts.
        while let Some((a, b)) = pending.pop() {
            if !self.uf.union(a, b) {
                continue;
            }
            let (wa, wb) = (self.words[a].clone(), self.words[b].clone());
            for g in 0..self.k as u32 {
                let pairs = [
                    (wa.prepend(g), wb.prepend(g)),
                    (wa.append(g), wb.append(g)),
                ];
                for (na, nb) in pairs {
                    if let (Some(ia), Some(ib)) = (self.image(&na, overflow), self.image(&nb, overflow)) {
                        if ia != ib {
                            pending.push((ia, ib));
                        }
                    }
                }
            }
        }
    }

    /// Are all words of exactly length `l` identified with zero?
    fn level_is_zero(&mut self, l: usize) -> bool {
        let zero_root = self.uf.find(0);
        (self.starts[l]..self.starts[l + 1]).all(|id| self.uf.find(id) == zero_root)
    }
}

/// Least `l` such that every word of length `l` collapses to zero under the
/// relations, or an error if no such `l` exists within the budget.
///
/// The search closes relations restricted to words of length at most `l`
/// (longer instances are dropped), which can only underapproximate the real
/// congruence; a positive answer is therefore a sound nilpotency witness.
pub fn certificate_length(p: &Presentation, budget: &EnumerationBudget) -> Result<usize> {
    for l in 1..=budget.max_word_length {
        let mut closure = Closure::build(p, l, Overflow::Drop, budget.max_classes)?;
        if closure.level_is_zero(l) {
            return Ok(l);
        }
    }
    Err(Error::BudgetExceeded(format!(
        "no nilpotency certificate up to word length {}",
        budget.max_word_length
    )))
}

/// The finished congruence over words below the certified length. Supports
/// looking up normal forms after enumeration.
#[derive(Clone, Debug)]
pub struct CongruenceTable {
    presentation: Presentation,
    /// Certified length: every word at least this long is zero, and the
    /// table stores all shorter words.
    working_len: usize,
    words: Vec<Word>,
    starts: Vec<usize>,
    /// Word id to element index in the enumerated semigroup.
    class_of: Vec<usize>,
    /// Element index to its shortlex-least word.
    reps: Vec<Word>,
}

impl CongruenceTable {
    pub fn working_len(&self) -> usize {
        self.working_len
    }

    pub fn word_count(&self) -> usize {
        self.words.len()
    }

    pub fn class_count(&self) -> usize {
        self.reps.len()
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn representatives(&self) -> &[Word] {
        &self.reps
    }

    fn id_of(&self, letters: &[u32]) -> usize {
        let k = self.presentation.generator_count();
        let mut v = 0usize;
        for &l in letters {
            v = v * k + l as usize;
        }
        self.starts[letters.len()] + v
    }

    /// Element index of a word, or `OutOfTable` if the word is too long to
    /// be stored and has no zero reduction.
    pub fn element_of(&self, w: &Word) -> Result<usize> {
        if let Some(ls) = w.as_letters() {
            let k = self.presentation.generator_count() as u32;
            if let Some(&bad) = ls.iter().find(|&&l| l >= k) {
                return Err(Error::Precondition(format!("letter index {bad} out of range")));
            }
        }
        let reduced = self.presentation.reduce_zero(w);
        if reduced.is_zero() {
            return Ok(0);
        }
        let len = reduced.len();
        if len >= self.working_len {
            return Err(Error::OutOfTable {
                len,
                working_len: self.working_len,
            });
        }
        Ok(self.class_of[self.id_of(reduced.as_letters().expect("nonzero"))])
    }

    /// Shortlex-least word congruent to `w`. Applies zero reductions first;
    /// any other word at least as long as the working length is out of
    /// table, even though the certificate implies it is zero.
    pub fn normal_form(&self, w: &Word) -> Result<Word> {
        Ok(self.reps[self.element_of(w)?].clone())
    }
}

/// Enumerate the semigroup presented by `p`.
///
/// Finds the least length at which all words die, materializes every shorter
/// word, closes the congruence with longer products truncated to zero, and
/// reads the Cayley table off the class representatives. Fails with
/// `BudgetExceeded` when no certificate exists within the budget, which
/// includes every infinite presented semigroup.
pub fn enumerate(
    p: &Presentation,
    budget: &EnumerationBudget,
) -> Result<(FiniteSemigroup, CongruenceTable)> {
    let len = certificate_length(p, budget)?;
    if len == 1 {
        // every generator is zero
        let s = FiniteSemigroup::new(vec!["0".to_string()], vec![0], vec![0])?;
        let table = CongruenceTable {
            presentation: p.clone(),
            working_len: 1,
            words: vec![Word::Zero],
            starts: vec![0, 1],
            class_of: vec![0],
            reps: vec![Word::Zero],
        };
        return Ok((s, table));
    }

    let mut closure = Closure::build(p, len - 1, Overflow::Zero, budget.max_classes)?;
    let word_count = closure.words.len();

    // Classes sorted by minimum word id = shortlex order of representatives;
    // zero's class carries id 0 and lands at element 0.
    let roots: Vec<usize> = (0..word_count).map(|id| closure.uf.find(id)).collect();
    let mut class_by_min: Vec<(usize, usize)> = Vec::new();
    let mut root_to_class: Vec<Option<usize>> = vec![None; word_count];
    for &root in &roots {
        if root_to_class[root].is_none() {
            class_by_min.push((closure.uf.min_id[root], root));
            root_to_class[root] = Some(0);
        }
    }
    class_by_min.sort_unstable();
    for (idx, &(_, root)) in class_by_min.iter().enumerate() {
        root_to_class[root] = Some(idx);
    }
    let class_of: Vec<usize> = roots
        .iter()
        .map(|&r| root_to_class[r].expect("root indexed"))
        .collect();
    let reps: Vec<Word> = class_by_min
        .iter()
        .map(|&(min_id, _)| closure.words[min_id].clone())
        .collect();
    debug_assert_eq!(reps[0], Word::Zero);

    let n = reps.len();
    let names: Vec<String> = reps.iter().map(|w| p.render_word(w)).collect();
    let mut table = vec![0usize; n * n];
    for x in 0..n {
        for y in 0..n {
            let prod = reps[x].concat(&reps[y]);
            table[x * n + y] = match prod.as_letters() {
                None => 0,
                Some(ls) if ls.len() < len => class_of[closure.word_id(ls)],
                // certified: anything at least `len` long is zero
                Some(_) => 0,
            };
        }
    }
    let generators: Vec<usize> = (0..p.generator_count() as u32)
        .map(|g| class_of[closure.word_id(&[g])])
        .collect();

    let s = FiniteSemigroup::new(names, table, generators)?;
    let table = CongruenceTable {
        presentation: p.clone(),
        working_len: len,
        words: std::mem::take(&mut closure.words),
        starts: std::mem::take(&mut closure.starts),
        class_of,
        reps,
    };
    Ok((s, table))
}
