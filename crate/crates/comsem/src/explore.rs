use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::enumerate::{enumerate, EnumerationBudget};
use crate::error::{Error, Result};
use crate::par;
use crate::presentation::Presentation;
use crate::report::InvariantReport;
use crate::word::{all_words, Word};

/// Spaces with at most this many candidate relation words are swept
/// exhaustively (one attempt per subset); larger spaces are sampled.
pub const EXHAUSTIVE_WORD_LIMIT: usize = 16;

/// Semigroups larger than this are skipped so every emitted report stays
/// within the exact solvers' comfort zone.
pub const DEFAULT_MAX_ORDER: usize = 64;

/// Predicate on invariant reports, conjunctive across set fields.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExploreFilter {
    pub connected_only: bool,
    /// Acyclic graphs (infinite girth) pass any bound.
    pub min_girth: Option<usize>,
    /// Requires the graph to be connected.
    pub min_diameter: Option<usize>,
}

impl ExploreFilter {
    /// Parses one filter spec: `connected`, `girth>=N` or `diameter>=N`.
    pub fn add_spec(&mut self, spec: &str) -> Result<()> {
        let spec = spec.trim();
        if spec == "connected" {
            self.connected_only = true;
            return Ok(());
        }
        for (key, slot) in [
            ("girth>=", &mut self.min_girth),
            ("diameter>=", &mut self.min_diameter),
        ] {
            if let Some(rest) = spec.strip_prefix(key) {
                let n: usize = rest.trim().parse().map_err(|_| {
                    Error::Precondition(format!("filter {spec:?}: {rest:?} is not a number"))
                })?;
                *slot = Some(n);
                return Ok(());
            }
        }
        Err(Error::Precondition(format!(
            "unknown filter {spec:?} (expected connected, girth>=N or diameter>=N)"
        )))
    }

    pub fn admits(&self, r: &InvariantReport) -> bool {
        if self.connected_only && !r.graph.is_connected {
            return false;
        }
        if let Some(bound) = self.min_girth {
            if let Some(g) = r.graph.girth {
                if g < bound {
                    return false;
                }
            }
        }
        if let Some(bound) = self.min_diameter {
            match r.graph.diameter {
                Some(d) if d >= bound => {}
                _ => return false,
            }
        }
        true
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ExploreConfig {
    pub generators: usize,
    /// Longest relation word; candidate relations range over all words of
    /// length 2..=max_relation_len.
    pub max_relation_len: usize,
    /// Target number of emitted reports.
    pub budget: usize,
    pub seed: u64,
    pub filter: ExploreFilter,
    pub max_order: usize,
}

impl ExploreConfig {
    pub fn new(generators: usize, max_relation_len: usize, budget: usize, seed: u64) -> ExploreConfig {
        ExploreConfig {
            generators,
            max_relation_len,
            budget,
            seed,
            filter: ExploreFilter::default(),
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

/// One emitted line: the presentation in compact form plus its report.
#[derive(Clone, Debug, Serialize)]
pub struct ExploreRecord {
    pub presentation: String,
    pub report: InvariantReport,
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct ExploreSummary {
    pub attempted: usize,
    pub certified: usize,
    pub emitted: usize,
    pub too_large: usize,
    pub filtered_out: usize,
    pub exhaustive: bool,
}

enum Attempt {
    Emitted(Box<ExploreRecord>),
    Uncertified,
    TooLarge,
    Filtered,
}

/// Sweeps a space of monomial presentations on `generators` letters: each
/// attempt picks a subset of the candidate words (all words of length 2 up
/// to `max_relation_len`) as zero relations, enumerates the quotient, and
/// reports invariants for every certified semigroup of order at most
/// `max_order` passing the filter. Small spaces are swept exhaustively in
/// subset order; large ones are sampled with a per-attempt seeded density.
/// Records come back sorted by presentation text.
pub fn explore(cfg: &ExploreConfig) -> Result<(Vec<ExploreRecord>, ExploreSummary)> {
    if cfg.generators < 1 || cfg.generators > 26 {
        return Err(Error::Precondition(format!(
            "explore supports 1 to 26 generators, got {}",
            cfg.generators
        )));
    }
    if cfg.max_relation_len < 2 {
        return Err(Error::Precondition(format!(
            "relation words need length at least 2, got {}",
            cfg.max_relation_len
        )));
    }
    let names: Vec<String> = (0..cfg.generators)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    let pool: Vec<Word> = all_words(cfg.generators, cfg.max_relation_len)
        .into_iter()
        .filter(|w| w.len() >= 2)
        .collect();
    let enum_budget = EnumerationBudget {
        max_word_length: cfg.max_relation_len + 3,
        max_classes: 10_000,
    };

    let exhaustive = pool.len() <= EXHAUSTIVE_WORD_LIMIT;
    let total: u64 = if exhaustive {
        1u64 << pool.len()
    } else {
        cfg.budget.saturating_mul(200).max(10_000) as u64
    };

    let mut summary = ExploreSummary {
        exhaustive,
        ..ExploreSummary::default()
    };
    let mut records: Vec<ExploreRecord> = Vec::new();
    let chunk = 512u64;
    let mut next = 0u64;
    'scan: while next < total {
        let hi = (next + chunk).min(total);
        let outcomes = par::map_vec(&(next..hi).collect::<Vec<u64>>(), |&i| {
            run_attempt(cfg, &names, &pool, &enum_budget, exhaustive, i)
        });
        for outcome in outcomes {
            summary.attempted += 1;
            match outcome {
                Attempt::Emitted(rec) => {
                    summary.certified += 1;
                    summary.emitted += 1;
                    records.push(*rec);
                    if summary.emitted == cfg.budget {
                        break 'scan;
                    }
                }
                Attempt::Uncertified => {}
                Attempt::TooLarge => {
                    summary.certified += 1;
                    summary.too_large += 1;
                }
                Attempt::Filtered => {
                    summary.certified += 1;
                    summary.filtered_out += 1;
                }
            }
        }
        next = hi;
    }
    records.sort_by(|x, y| x.presentation.cmp(&y.presentation));
    Ok((records, summary))
}

fn run_attempt(
    cfg: &ExploreConfig,
    names: &[String],
    pool: &[Word],
    enum_budget: &EnumerationBudget,
    exhaustive: bool,
    index: u64,
) -> Attempt {
    let mut p = Presentation::new(names.to_vec()).expect("generator names are valid");
    if exhaustive {
        for (j, w) in pool.iter().enumerate() {
            if index >> j & 1 == 1 {
                p.add_monomial(w.clone()).expect("pool words are in range");
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(mix64(cfg.seed) ^ mix64(index.wrapping_add(1)));
        let density = rng.random_range(0.15..0.60);
        for w in pool {
            if rng.random_bool(density) {
                p.add_monomial(w.clone()).expect("pool words are in range");
            }
        }
    }
    let s = match enumerate(&p, enum_budget) {
        Ok((s, _)) => s,
        Err(_) => return Attempt::Uncertified,
    };
    if s.order() > cfg.max_order {
        return Attempt::TooLarge;
    }
    let report = match InvariantReport::for_semigroup(&s) {
        Ok(r) => r,
        Err(_) => return Attempt::TooLarge,
    };
    if !cfg.filter.admits(&report) {
        return Attempt::Filtered;
    }
    Attempt::Emitted(Box::new(ExploreRecord {
        presentation: p.to_compact_string(),
        report,
    }))
}

pub(crate) fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_specs_parse() {
        let mut f = ExploreFilter::default();
        f.add_spec("connected").unwrap();
        f.add_spec("girth>=4").unwrap();
        f.add_spec("diameter>= 2").unwrap();
        assert!(f.connected_only);
        assert_eq!(f.min_girth, Some(4));
        assert_eq!(f.min_diameter, Some(2));
        assert!(ExploreFilter::default().add_spec("order>=5").is_err());
        assert!(ExploreFilter::default().add_spec("girth>=x").is_err());
    }

    #[test]
    fn tiny_space_is_exhaustive_and_contains_five_element() {
        // two generators, relation words of length two only: 4 words, 16 subsets
        let cfg = ExploreConfig::new(2, 2, 100, 0);
        let (records, summary) = explore(&cfg).unwrap();
        assert!(summary.exhaustive);
        assert_eq!(summary.attempted, 16);
        // the subset {aa, bb} certifies nothing (ab, ba, abab.. survive),
        // but {aa, ab, ba, bb} does
        assert!(records
            .iter()
            .any(|r| r.presentation.contains("rel: a a = 0") && r.report.order == 3));
        for r in &records {
            assert!(r.report.order <= cfg.max_order);
        }
        assert_eq!(summary.emitted, records.len());
    }

    #[test]
    fn sampling_is_deterministic() {
        let cfg = ExploreConfig::new(2, 4, 25, 42);
        let (a, sa) = explore(&cfg).unwrap();
        let (b, sb) = explore(&cfg).unwrap();
        assert_eq!(a.len(), b.len());
        assert_eq!(sa.attempted, sb.attempted);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.presentation, y.presentation);
            assert_eq!(x.report, y.report);
        }
        assert!(!sa.exhaustive);
        assert!(sa.emitted > 0);
    }

    #[test]
    fn filters_drop_reports() {
        let mut cfg = ExploreConfig::new(2, 3, 40, 7);
        let (all, _) = explore(&cfg).unwrap();
        cfg.filter.add_spec("connected").unwrap();
        let (connected, summary) = explore(&cfg).unwrap();
        assert!(connected.len() <= all.len());
        for r in &connected {
            assert!(r.report.graph.is_connected);
        }
        assert!(summary.filtered_out > 0 || connected.len() == all.len());
    }

    #[test]
    fn bad_configs_are_rejected() {
        assert!(explore(&ExploreConfig::new(0, 3, 10, 0)).is_err());
        assert!(explore(&ExploreConfig::new(2, 1, 10, 0)).is_err());
    }
}
