use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;
use crate::{LEFT_TAG, RIGHT_TAG};

/// A finite semigroup with zero, stored as a full Cayley table.
///
/// Element 0 is always the zero. `table[x * n + y]` is the product `xy`.
/// Construction validates associativity, both-sided absorption by zero, and
/// that the recorded generators reach every element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TableRepr", into = "TableRepr")]
pub struct FiniteSemigroup {
    elements: Vec<String>,
    table: Vec<usize>,
    generators: Vec<usize>,
}

/// JSON shape: `{"elements": [...], "zero": 0, "generators": [...], "table": [[...]]}`.
#[derive(Serialize, Deserialize)]
struct TableRepr {
    elements: Vec<String>,
    zero: usize,
    generators: Vec<usize>,
    table: Vec<Vec<usize>>,
}

impl From<FiniteSemigroup> for TableRepr {
    fn from(s: FiniteSemigroup) -> TableRepr {
        let n = s.order();
        let table = (0..n)
            .map(|x| s.table[x * n..(x + 1) * n].to_vec())
            .collect();
        TableRepr {
            elements: s.elements,
            zero: 0,
            generators: s.generators,
            table,
        }
    }
}

impl TryFrom<TableRepr> for FiniteSemigroup {
    type Error = Error;

    fn try_from(repr: TableRepr) -> Result<FiniteSemigroup> {
        if repr.zero != 0 {
            return Err(Error::InvalidTable("zero must be element 0".into()));
        }
        let n = repr.elements.len();
        if repr.table.len() != n {
            return Err(Error::InvalidTable("table must have one row per element".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in &repr.table {
            if row.len() != n {
                return Err(Error::InvalidTable("table rows must have one entry per element".into()));
            }
            flat.extend_from_slice(row);
        }
        FiniteSemigroup::new(repr.elements, flat, repr.generators)
    }
}

/// Exhaustive associativity checking up to this order; larger tables get a
/// fixed-seed random audit instead.
const EXHAUSTIVE_ASSOC_LIMIT: usize = 128;

impl FiniteSemigroup {
    pub fn new(
        elements: Vec<String>,
        table: Vec<usize>,
        generators: Vec<usize>,
    ) -> Result<FiniteSemigroup> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::InvalidTable("a semigroup with zero is nonempty".into()));
        }
        if table.len() != n * n {
            return Err(Error::InvalidTable(format!(
                "table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        if let Some(&bad) = table.iter().find(|&&e| e >= n) {
            return Err(Error::InvalidTable(format!("table entry {bad} out of range")));
        }
        for (i, name) in elements.iter().enumerate() {
            if elements[..i].contains(name) {
                return Err(Error::InvalidTable(format!("duplicate element name {name:?}")));
            }
        }
        let mut generators = generators;
        generators.sort_unstable();
        generators.dedup();
        if generators.is_empty() || generators.iter().any(|&g| g >= n) {
            return Err(Error::InvalidTable("generators must be a nonempty set of element indices".into()));
        }
        let s = FiniteSemigroup {
            elements,
            table,
            generators,
        };
        for x in 0..n {
            if s.mul(0, x) != 0 || s.mul(x, 0) != 0 {
                return Err(Error::InvalidTable(format!(
                    "element 0 does not absorb {:?}",
                    s.elements[x]
                )));
            }
        }
        if let Some((x, y, z)) = s.associativity_violation() {
            return Err(Error::InvalidTable(format!(
                "({} {}) {} differs from {} ({} {})",
                s.elements[x], s.elements[y], s.elements[z], s.elements[x], s.elements[y], s.elements[z]
            )));
        }
        if !s.generates(&s.generators.clone()) {
            return Err(Error::InvalidTable("generators do not reach every element".into()));
        }
        Ok(s)
    }

    fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.order();
        if n <= EXHAUSTIVE_ASSOC_LIMIT {
            let per_x = par::map_range(n, |x| {
                for y in 0..n {
                    let xy = self.mul(x, y);
                    for z in 0..n {
                        if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                            return Some((x, y, z));
                        }
                    }
                }
                None
            });
            per_x.into_iter().flatten().next()
        } else {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5EA1);
            for _ in 0..100_000 {
                let x = rng.random_range(0..n);
                let y = rng.random_range(0..n);
                let z = rng.random_range(0..n);
                if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                    return Some((x, y, z));
                }
            }
            None
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.elements.len() + y]
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn element_names(&self) -> &[String] {
        &self.elements
    }

    pub fn element_name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    /// Indices of the generators, sorted and deduplicated.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn commutes(&self, x: usize, y: usize) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    pub fn is_commutative(&self) -> bool {
        self.center().len() == self.order()
    }

    /// Elements commuting with everything. Always contains zero.
    pub fn center(&self) -> Subset {
        let n = self.order();
        let indices = (0..n)
            .filter(|&x| (0..n).all(|y| self.commutes(x, y)))
            .collect();
        Subset::new(n, indices)
    }

    /// `S^m`: products of `m` elements. `power_set(1)` is all of `S`.
    pub fn power_set(&self, m: usize) -> Subset {
        assert!(m >= 1, "power_set wants m >= 1");
        let n = self.order();
        let mut cur: Vec<bool> = vec![true; n];
        for _ in 1..m {
            let mut next = vec![false; n];
            for x in 0..n {
                for (y, _) in cur.iter().enumerate().filter(|(_, &in_cur)| in_cur) {
                    next[self.mul(x, y)] = true;
                }
            }
            cur = next;
        }
        Subset::new(n, (0..n).filter(|&i| cur[i]).collect())
    }

    /// Nilpotency data: `degree` is the least `c` with `S^c = {0}`,
    /// `central_exponent` the least `m` with `S^m` central. Both are `None`
    /// when the power chain stabilizes without getting there.
    pub fn nilpotency(&self) -> Nilpotency {
        let n = self.order();
        let center = self.center();
        let mut cur = self.power_set(1);
        let mut degree = None;
        let mut central_exponent = None;
        let mut m = 1;
        loop {
            if degree.is_none() && cur.len() == 1 {
                degree = Some(m);
            }
            if central_exponent.is_none() && cur.is_subset_of(&center) {
                central_exponent = Some(m);
            }
            if degree.is_some() && central_exponent.is_some() {
                break;
            }
            let mut next = vec![false; n];
            for x in 0..n {
                for y in cur.iter() {
                    next[self.mul(x, y)] = true;
                }
            }
            let next = Subset::new(n, (0..n).filter(|&i| next[i]).collect());
            if next == cur {
                break;
            }
            cur = next;
            m += 1;
        }
        Nilpotency {
            degree,
            central_exponent,
        }
    }

    /// Closure of `seed` under the product.
    pub fn closure_of(&self, seed: &[usize]) -> Subset {
        let n = self.order();
        let mut in_set = vec![false; n];
        let mut stack: Vec<usize> = Vec::new();
        for &x in seed {
            if !in_set[x] {
                in_set[x] = true;
                stack.push(x);
            }
        }
        let mut members: Vec<usize> = stack.clone();
        while let Some(x) = stack.pop() {
            for i in 0..members.len() {
                let y = members[i];
                for p in [self.mul(x, y), self.mul(y, x)] {
                    if !in_set[p] {
                        in_set[p] = true;
                        stack.push(p);
                        members.push(p);
                    }
                }
            }
        }
        Subset::new(n, members)
    }

    pub fn generates(&self, subset: &[usize]) -> bool {
        self.closure_of(subset).len() == self.order()
    }

    /// Null union: glue the two zeros and let every cross product vanish.
    /// Elements are ordered zero, then `self`'s nonzero elements tagged
    /// `L:`, then `other`'s tagged `R:`.
    pub fn null_union(&self, other: &FiniteSemigroup) -> FiniteSemigroup {
        let ns = self.order();
        let nt = other.order();
        let n = ns + nt - 1;
        let mut elements = Vec::with_capacity(n);
        elements.push("0".to_string());
        for i in 1..ns {
            elements.push(format!("{LEFT_TAG}{}", self.elements[i]));
        }
        for j in 1..nt {
            elements.push(format!("{RIGHT_TAG}{}", other.elements[j]));
        }
        let left = |i: usize| if i == 0 { 0 } else { i };
        let right = |j: usize| if j == 0 { 0 } else { ns - 1 + j };
        let mut table = vec![0usize; n * n];
        for x in 1..ns {
            for y in 1..ns {
                table[left(x) * n + left(y)] = left(self.mul(x, y));
            }
        }
        for x in 1..nt {
            for y in 1..nt {
                table[right(x) * n + right(y)] = right(other.mul(x, y));
            }
        }
        let mut generators: Vec<usize> = self
            .generators
            .iter()
            .map(|&g| left(g))
            .chain(other.generators.iter().map(|&g| right(g)))
            .collect();
        generators.sort_unstable();
        generators.dedup();
        FiniteSemigroup::new(elements, table, generators)
            .expect("null union of valid tables is valid")
    }

    /// Lexicographically least generating set of minimum size, searched in
    /// increasing size up to `cap`. Every generating set must contain the
    /// elements outside `S^2`, which prunes the search hard.
    pub fn minimal_generating_set(&self, cap: usize) -> Result<Vec<usize>> {
        let n = self.order();
        let sq = self.power_set(2);
        let mandatory: Vec<usize> = (0..n).filter(|&i| !sq.contains(i)).collect();
        if mandatory.len() > cap {
            return Err(Error::CapExceeded { cap });
        }
        let optional: Vec<usize> = (0..n).filter(|&i| sq.contains(i)).collect();
        for size in mandatory.len().max(1)..=cap.min(n) {
            let extra = size - mandatory.len();
            if extra > optional.len() {
                break;
            }
            let combos: Vec<Vec<usize>> = combinations(optional.len(), extra).collect();
            for chunk in combos.chunks(4096) {
                let hits = par::map_vec(chunk, |combo| {
                    let mut cand = mandatory.clone();
                    cand.extend(combo.iter().map(|&c| optional[c]));
                    cand.sort_unstable();
                    if self.generates(&cand) {
                        Some(cand)
                    } else {
                        None
                    }
                });
                if let Some(found) = hits.into_iter().flatten().next() {
                    return Ok(found);
                }
            }
        }
        Err(Error::CapExceeded { cap })
    }

    /// Minimum size of a generating set (the rank), up to `cap`.
    pub fn rank(&self, cap: usize) -> Result<usize> {
        self.minimal_generating_set(cap).map(|s| s.len())
    }

    pub fn is_ideal(&self, sub: &Subset) -> bool {
        let n = self.order();
        sub.iter().all(|i| {
            (0..n).all(|s| sub.contains(self.mul(i, s)) && sub.contains(self.mul(s, i)))
        })
    }

    /// A two-sided ideal that is not central but multiplies everything into
    /// the center. Tries `S^{m-1}` for the central exponent `m` first, then
    /// principal ideals.
    pub fn centralizing_ideal(&self) -> Option<Subset> {
        let n = self.order();
        let center = self.center();
        if center.len() == n {
            return None;
        }
        let mut candidates: Vec<Subset> = Vec::new();
        if let Some(m) = self.nilpotency().central_exponent {
            if m >= 2 {
                candidates.push(self.power_set(m - 1));
            }
        }
        for x in 0..n {
            candidates.push(self.principal_ideal(x));
        }
        candidates.into_iter().find(|c| {
            let non_central = c.iter().any(|i| !center.contains(i));
            non_central
                && self.is_ideal(c)
                && c.iter().all(|i| {
                    (0..n).all(|s| {
                        center.contains(self.mul(i, s)) && center.contains(self.mul(s, i))
                    })
                })
        })
    }

    /// Smallest two-sided ideal containing `x`.
    pub fn principal_ideal(&self, x: usize) -> Subset {
        let n = self.order();
        let mut in_set = vec![false; n];
        in_set[x] = true;
        let mut stack = vec![x];
        let mut members = vec![x];
        while let Some(i) = stack.pop() {
            for s in 0..n {
                for p in [self.mul(i, s), self.mul(s, i)] {
                    if !in_set[p] {
                        in_set[p] = true;
                        stack.push(p);
                        members.push(p);
                    }
                }
            }
        }
        Subset::new(n, members)
    }

    /// Does `perm` (as the map `i -> perm[i]`) preserve the table?
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        let n = self.order();
        if perm.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        (0..n).all(|x| (0..n).all(|y| perm[self.mul(x, y)] == self.mul(perm[x], perm[y])))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nilpotency {
    pub degree: Option<usize>,
    pub central_exponent: Option<usize>,
}

/// A subset of a semigroup's (or graph's) index space, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subset {
    universe: usize,
    indices: Vec<usize>,
}

impl Subset {
    pub fn new(universe: usize, mut indices: Vec<usize>) -> Subset {
        indices.sort_unstable();
        indices.dedup();
        assert!(indices.last().is_none_or(|&i| i < universe));
        Subset { universe, indices }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.indices.iter().all(|&i| other.contains(i))
    }

    pub fn complement(&self) -> Subset {
        let indices = (0..self.universe).filter(|&i| !self.contains(i)).collect();
        Subset {
            universe: self.universe,
            indices,
        }
    }
}

/// Size-`k` index combinations from `0..m` in lexicographic order.
pub(crate) fn combinations(m: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let first: Option<Vec<usize>> = if k <= m { Some((0..k).collect()) } else { None };
    std::iter::successors(first, move |prev| {
        let mut next = prev.clone();
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if next[i] < m - (k - i) {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                return Some(next);
            }
        }
    })
}
