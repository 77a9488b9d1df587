use std::cmp::Ordering;

/// A word over a presentation's generator alphabet, or the distinguished zero.
///
/// Letters are indices into the owning presentation's generator list. Words
/// compare in shortlex order: shorter before longer, ties broken left to
/// right by letter index. `Zero` sorts before everything else.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Word {
    Zero,
    Letters(Vec<u32>),
}

impl Word {
    pub fn letters(letters: Vec<u32>) -> Word {
        debug_assert!(!letters.is_empty(), "proper words are nonempty");
        Word::Letters(letters)
    }

    pub fn single(g: u32) -> Word {
        Word::Letters(vec![g])
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Word::Zero)
    }

    /// Letter count; zero has length 0.
    pub fn len(&self) -> usize {
        match self {
            Word::Zero => 0,
            Word::Letters(ls) => ls.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_letters(&self) -> Option<&[u32]> {
        match self {
            Word::Zero => None,
            Word::Letters(ls) => Some(ls),
        }
    }

    /// Product in the free semigroup with zero: zero absorbs.
    pub fn concat(&self, other: &Word) -> Word {
        match (self, other) {
            (Word::Zero, _) | (_, Word::Zero) => Word::Zero,
            (Word::Letters(a), Word::Letters(b)) => {
                let mut ls = Vec::with_capacity(a.len() + b.len());
                ls.extend_from_slice(a);
                ls.extend_from_slice(b);
                Word::Letters(ls)
            }
        }
    }

    pub fn prepend(&self, g: u32) -> Word {
        match self {
            Word::Zero => Word::Zero,
            Word::Letters(ls) => {
                let mut out = Vec::with_capacity(ls.len() + 1);
                out.push(g);
                out.extend_from_slice(ls);
                Word::Letters(out)
            }
        }
    }

    pub fn append(&self, g: u32) -> Word {
        match self {
            Word::Zero => Word::Zero,
            Word::Letters(ls) => {
                let mut out = Vec::with_capacity(ls.len() + 1);
                out.extend_from_slice(ls);
                out.push(g);
                Word::Letters(out)
            }
        }
    }

    /// True if `factor` occurs contiguously in `self`. Zero is a factor only
    /// of zero.
    pub fn contains_factor(&self, factor: &Word) -> bool {
        match (self, factor) {
            (w, Word::Zero) => w.is_zero(),
            (Word::Zero, _) => false,
            (Word::Letters(w), Word::Letters(f)) => w.windows(f.len()).any(|win| win == &f[..]),
        }
    }
}

/// All proper words over `k` letters of length 1..=max_len, in shortlex
/// order (length-major, lexicographic inside each length).
pub(crate) fn all_words(k: usize, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut level: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 1..=max_len {
        let mut next = Vec::with_capacity(level.len() * k);
        for prefix in &level {
            for g in 0..k as u32 {
                let mut w = prefix.clone();
                w.push(g);
                next.push(w);
            }
        }
        out.extend(next.iter().cloned().map(Word::Letters));
        level = next;
    }
    out
}

impl Ord for Word {
    fn cmp(&self, other: &Word) -> Ordering {
        match (self, other) {
            (Word::Zero, Word::Zero) => Ordering::Equal,
            (Word::Zero, _) => Ordering::Less,
            (_, Word::Zero) => Ordering::Greater,
            (Word::Letters(a), Word::Letters(b)) => {
                a.len().cmp(&b.len()).then_with(|| a.cmp(b))
            }
        }
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Word) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(ls: &[u32]) -> Word {
        Word::letters(ls.to_vec())
    }

    #[test]
    fn shortlex_orders_by_length_then_lex() {
        let mut words = vec![w(&[1]), w(&[0, 1]), Word::Zero, w(&[0]), w(&[1, 0]), w(&[0, 0])];
        words.sort();
        assert_eq!(
            words,
            vec![Word::Zero, w(&[0]), w(&[1]), w(&[0, 0]), w(&[0, 1]), w(&[1, 0])]
        );
    }

    #[test]
    fn zero_absorbs_in_concat() {
        assert_eq!(w(&[0]).concat(&Word::Zero), Word::Zero);
        assert_eq!(Word::Zero.concat(&w(&[0])), Word::Zero);
        assert_eq!(w(&[0]).concat(&w(&[1, 1])), w(&[0, 1, 1]));
    }

    #[test]
    fn factor_search_is_contiguous() {
        let word = w(&[0, 1, 0, 0]);
        assert!(word.contains_factor(&w(&[1, 0])));
        assert!(word.contains_factor(&w(&[0, 0])));
        assert!(!word.contains_factor(&w(&[1, 1])));
        assert!(!word.contains_factor(&w(&[0, 0, 1])));
        assert!(!Word::Zero.contains_factor(&w(&[0])));
        assert!(Word::Zero.contains_factor(&Word::Zero));
    }

    #[test]
    fn all_words_are_shortlex_sorted_and_complete() {
        let words = all_words(2, 3);
        assert_eq!(words.len(), 2 + 4 + 8);
        assert!(words.windows(2).all(|p| p[0] < p[1]));
        assert_eq!(words[0], w(&[0]));
        assert_eq!(words[2], w(&[0, 0]));
        assert_eq!(words.last().unwrap(), &w(&[1, 1, 1]));
        assert_eq!(all_words(1, 4).len(), 4);
    }

    #[test]
    fn prepend_append_extend_by_one() {
        assert_eq!(w(&[1, 0]).prepend(2), w(&[2, 1, 0]));
        assert_eq!(w(&[1, 0]).append(2), w(&[1, 0, 2]));
        assert_eq!(Word::Zero.prepend(1), Word::Zero);
        assert_eq!(Word::Zero.append(1), Word::Zero);
    }
}
