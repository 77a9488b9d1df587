use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::word::Word;

/// A presentation of a semigroup with zero: a generator alphabet, monomial
/// relations `w = 0`, and equational relations `u = v`.
///
/// The presented semigroup is the quotient of the free semigroup with zero on
/// the alphabet by the smallest congruence containing the relations, where a
/// monomial relation kills every word containing `w` as a contiguous factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    monomial: BTreeSet<Word>,
    equational: BTreeSet<(Word, Word)>,
    all_zero_len: Option<usize>,
}

fn valid_generator_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric())
}

impl Presentation {
    pub fn new<S: Into<String>>(generators: Vec<S>) -> Result<Presentation> {
        let generators: Vec<String> = generators.into_iter().map(Into::into).collect();
        if generators.is_empty() {
            return Err(Error::Precondition("a presentation needs at least one generator".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if !valid_generator_name(g) {
                return Err(Error::Precondition(format!("invalid generator name {g:?}")));
            }
            if generators[..i].contains(g) {
                return Err(Error::Precondition(format!("duplicate generator {g:?}")));
            }
        }
        Ok(Presentation {
            generators,
            monomial: BTreeSet::new(),
            equational: BTreeSet::new(),
            all_zero_len: None,
        })
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<u32> {
        self.generators.iter().position(|g| g == name).map(|i| i as u32)
    }

    pub fn monomial_relations(&self) -> impl Iterator<Item = &Word> {
        self.monomial.iter()
    }

    pub fn equational_relations(&self) -> impl Iterator<Item = &(Word, Word)> {
        self.equational.iter()
    }

    /// Length threshold from an `allzero:` clause, if any: every word at
    /// least this long is a relation.
    pub fn all_zero_len(&self) -> Option<usize> {
        self.all_zero_len
    }

    pub fn relation_count(&self) -> usize {
        self.monomial.len() + self.equational.len()
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        let letters = w
            .as_letters()
            .ok_or_else(|| Error::Precondition("relation words must be nonzero".into()))?;
        for &l in letters {
            if l as usize >= self.generators.len() {
                return Err(Error::Precondition(format!("letter index {l} out of range")));
            }
        }
        Ok(())
    }

    pub fn add_monomial(&mut self, w: Word) -> Result<()> {
        self.check_word(&w)?;
        self.monomial.insert(w);
        Ok(())
    }

    pub fn add_equation(&mut self, u: Word, v: Word) -> Result<()> {
        self.check_word(&u)?;
        self.check_word(&v)?;
        if u == v {
            return Err(Error::Precondition("equational relation with equal sides".into()));
        }
        let (lo, hi) = if u < v { (u, v) } else { (v, u) };
        self.equational.insert((lo, hi));
        Ok(())
    }

    /// Declare every word of length at least `k` to be zero.
    pub fn set_all_zero(&mut self, k: usize) -> Result<()> {
        if k == 0 {
            return Err(Error::Precondition("allzero length must be at least 1".into()));
        }
        self.all_zero_len = Some(match self.all_zero_len {
            Some(old) => old.min(k),
            None => k,
        });
        Ok(())
    }

    /// Map `w` to zero if a monomial relation or the `allzero` threshold
    /// applies; otherwise return it unchanged.
    pub fn reduce_zero(&self, w: &Word) -> Word {
        if w.is_zero() {
            return Word::Zero;
        }
        if let Some(k) = self.all_zero_len {
            if w.len() >= k {
                return Word::Zero;
            }
        }
        if self.monomial.iter().any(|m| w.contains_factor(m)) {
            return Word::Zero;
        }
        w.clone()
    }

    /// Render a word as an element name. Single-character alphabets join
    /// letters directly (`ab`), longer names are space separated (`x1 x4`).
    /// Zero renders as `0`.
    pub fn render_word(&self, w: &Word) -> String {
        match w.as_letters() {
            None => "0".to_string(),
            Some(ls) => {
                let compact = self.generators.iter().all(|g| g.chars().count() == 1);
                let sep = if compact { "" } else { " " };
                ls.iter()
                    .map(|&l| self.generators[l as usize].as_str())
                    .collect::<Vec<_>>()
                    .join(sep)
            }
        }
    }

    fn spaced_word(&self, w: &Word) -> String {
        match w.as_letters() {
            None => "0".to_string(),
            Some(ls) => ls
                .iter()
                .map(|&l| self.generators[l as usize].as_str())
                .collect::<Vec<_>>()
                .join(" "),
        }
    }

    /// Canonical file-format lines: `gens:`, then `allzero:`, then monomial
    /// relations, then equational relations, each set in shortlex order.
    pub fn to_lines(&self) -> Vec<String> {
        let mut lines = vec![format!("gens: {}", self.generators.join(" "))];
        if let Some(k) = self.all_zero_len {
            lines.push(format!("allzero: {k}"));
        }
        for m in &self.monomial {
            lines.push(format!("rel: {} = 0", self.spaced_word(m)));
        }
        for (u, v) in &self.equational {
            lines.push(format!("rel: {} = {}", self.spaced_word(u), self.spaced_word(v)));
        }
        lines
    }

    /// One-line encoding used in JSON output; parses back via `parse`.
    pub fn to_compact_string(&self) -> String {
        self.to_lines().join("; ")
    }

    /// Parse the presentation file format. Accepts the same text that
    /// `Display` produces, with `;` as an alternative line separator.
    pub fn parse(text: &str) -> Result<Presentation> {
        let mut pres: Option<Presentation> = None;
        let mut line_count = 0;
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            line_count = line_no;
            // comments run to the end of the physical line, so strip them
            // before splitting the compact `;` form
            let without_comment = match raw_line.find('#') {
                Some(pos) => &raw_line[..pos],
                None => raw_line,
            };
            for piece in without_comment.split(';') {
                let line = piece.trim();
                if line.is_empty() {
                    continue;
                }
                let (key, rest) = line
                    .split_once(':')
                    .ok_or_else(|| parse_err(line_no, format!("expected `key: ...`, got {line:?}")))?;
                match key.trim() {
                    "gens" => {
                        if pres.is_some() {
                            return Err(parse_err(line_no, "duplicate `gens:` line".into()));
                        }
                        let names: Vec<&str> = rest.split_whitespace().collect();
                        pres = Some(Presentation::new(names).map_err(|e| lift(line_no, e))?);
                    }
                    "rel" => {
                        let p = pres
                            .as_mut()
                            .ok_or_else(|| parse_err(line_no, "`rel:` before `gens:`".into()))?;
                        parse_relation(p, rest, line_no)?;
                    }
                    "allzero" => {
                        let p = pres
                            .as_mut()
                            .ok_or_else(|| parse_err(line_no, "`allzero:` before `gens:`".into()))?;
                        let k: usize = rest
                            .trim()
                            .parse()
                            .map_err(|_| parse_err(line_no, format!("bad allzero length {:?}", rest.trim())))?;
                        p.set_all_zero(k).map_err(|e| lift(line_no, e))?;
                    }
                    other => {
                        return Err(parse_err(line_no, format!("unknown directive {other:?}")));
                    }
                }
            }
        }
        pres.ok_or_else(|| parse_err(line_count.max(1), "missing `gens:` declaration".into()))
    }
}

fn parse_err(line: usize, msg: String) -> Error {
    Error::Parse { line, msg }
}

/// Re-attach a line number to validation errors raised while building.
fn lift(line: usize, e: Error) -> Error {
    match e {
        Error::Precondition(msg) => Error::Parse { line, msg },
        other => other,
    }
}

fn parse_relation(p: &mut Presentation, rest: &str, line_no: usize) -> Result<()> {
    let sides: Vec<&str> = rest.split('=').collect();
    if sides.len() != 2 {
        return Err(parse_err(line_no, "relation needs exactly one `=`".into()));
    }
    let left = parse_side(p, sides[0], line_no)?;
    let right = parse_side(p, sides[1], line_no)?;
    match (left, right) {
        (None, None) => Err(parse_err(line_no, "relation `0 = 0` is vacuous".into())),
        (Some(w), None) | (None, Some(w)) => p.add_monomial(w).map_err(|e| lift(line_no, e)),
        (Some(u), Some(v)) => p.add_equation(u, v).map_err(|e| lift(line_no, e)),
    }
}

/// One side of a relation: `None` encodes the zero symbol `0`.
fn parse_side(p: &Presentation, side: &str, line_no: usize) -> Result<Option<Word>> {
    let tokens: Vec<&str> = side.split_whitespace().collect();
    if tokens.is_empty() {
        return Err(parse_err(line_no, "empty relation side".into()));
    }
    if tokens == ["0"] {
        return Ok(None);
    }
    let mut letters = Vec::new();
    for tok in tokens {
        let (name, power) = match tok.split_once('^') {
            Some((name, exp)) => {
                let k: usize = exp
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("bad exponent in {tok:?}")))?;
                if k == 0 {
                    return Err(parse_err(line_no, format!("zero exponent in {tok:?}")));
                }
                (name, k)
            }
            None => (tok, 1),
        };
        let idx = p
            .generator_index(name)
            .ok_or_else(|| parse_err(line_no, format!("unknown generator {name:?}")))?;
        letters.extend(std::iter::repeat_n(idx, power));
    }
    Ok(Some(Word::letters(letters)))
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.to_lines() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(ls: &[u32]) -> Word {
        Word::letters(ls.to_vec())
    }

    #[test]
    fn parses_generators_relations_and_powers() {
        let p = Presentation::parse(
            "# five element example\n\
             gens: a b\n\
             rel: a^2 = 0\n\
             rel: b b = 0\n\
             rel: a b a = 0\n\
             rel: b a b = 0\n",
        )
        .unwrap();
        assert_eq!(p.generator_names(), ["a", "b"]);
        assert_eq!(p.monomial.len(), 4);
        assert!(p.monomial.contains(&w(&[0, 0])));
        assert!(p.monomial.contains(&w(&[1, 0, 1])));
        assert!(p.equational.is_empty());
    }

    #[test]
    fn parses_equations_and_allzero() {
        let p = Presentation::parse("gens: x1 x2\nallzero: 3\nrel: x1 x1 = x2 x1\n").unwrap();
        assert_eq!(p.all_zero_len(), Some(3));
        assert!(p.equational.contains(&(w(&[0, 0]), w(&[1, 0]))));
    }

    #[test]
    fn zero_side_may_appear_on_either_side() {
        let p = Presentation::parse("gens: a\nrel: 0 = a^3\n").unwrap();
        assert!(p.monomial.contains(&w(&[0, 0, 0])));
    }

    #[test]
    fn error_lines_are_one_based() {
        let err = Presentation::parse("gens: a\n\nrel: b = 0\n").unwrap_err();
        match err {
            Error::Parse { line, msg } => {
                assert_eq!(line, 3);
                assert!(msg.contains("unknown generator"));
            }
            other => panic!("unexpected error {other:?}"),
        }
        let err = Presentation::parse("rel: a = 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = Presentation::parse("gens: a\nrel: a = a\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = Presentation::parse("# nothing\n").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn reduce_zero_applies_factors_and_threshold() {
        let mut p = Presentation::new(vec!["a", "b"]).unwrap();
        p.add_monomial(w(&[0, 0])).unwrap();
        p.set_all_zero(4).unwrap();
        assert_eq!(p.reduce_zero(&w(&[1, 0, 0])), Word::Zero);
        assert_eq!(p.reduce_zero(&w(&[1, 0, 1])), w(&[1, 0, 1]));
        assert_eq!(p.reduce_zero(&w(&[1, 0, 1, 1])), Word::Zero);
        assert_eq!(p.reduce_zero(&Word::Zero), Word::Zero);
    }

    #[test]
    fn display_round_trips() {
        let text = "gens: a b\nallzero: 3\nrel: a a = 0\nrel: a b = b a\n";
        let p = Presentation::parse(text).unwrap();
        assert_eq!(p.to_string(), text);
        let again = Presentation::parse(&p.to_string()).unwrap();
        assert_eq!(again, p);
        let compact = Presentation::parse(&p.to_compact_string()).unwrap();
        assert_eq!(compact, p);
    }

    #[test]
    fn render_word_compact_and_spaced() {
        let short = Presentation::new(vec!["a", "b"]).unwrap();
        assert_eq!(short.render_word(&w(&[0, 1, 0])), "aba");
        let long = Presentation::new(vec!["x1", "x4"]).unwrap();
        assert_eq!(long.render_word(&w(&[0, 1])), "x1 x4");
        assert_eq!(long.render_word(&Word::Zero), "0");
    }
}
