use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::{full_mask, has_no_empty_set, layout, CanonicalCode, Hypergraph, MAX_VERTICES};
use crate::error::{Error, Result};
use crate::parallel::{flat_map_chunks, Exec};

/// Largest `C(n, k)` for which every labelled mask is scanned.
pub const MAX_ENUMERATION_SLOTS: usize = 20;

const CHUNK: u64 = 1 << 12;

/// Class filter applied after deduplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ClassFilter {
    #[default]
    None,
    /// Every `m`-subset spans an edge.
    NoEmptySet(usize),
}

impl ClassFilter {
    pub fn accepts(&self, g: &Hypergraph) -> bool {
        match *self {
            ClassFilter::None => true,
            ClassFilter::NoEmptySet(m) => has_no_empty_set(g, m),
        }
    }

    pub fn tag(&self) -> String {
        match self {
            ClassFilter::None => "none".to_string(),
            ClassFilter::NoEmptySet(m) => format!("no-empty-{m}"),
        }
    }
}

impl fmt::Display for ClassFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl FromStr for ClassFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "none" {
            return Ok(ClassFilter::None);
        }
        s.strip_prefix("no-empty-")
            .and_then(|m| m.parse().ok())
            .map(ClassFilter::NoEmptySet)
            .ok_or_else(|| {
                Error::InvalidParameters(format!(
                    "unknown filter {s:?} (expected none or no-empty-<m>)"
                ))
            })
    }
}

fn check_enumerable(n: usize, k: usize) -> Result<usize> {
    if n > MAX_VERTICES || k == 0 || k > MAX_VERTICES {
        return Err(Error::InvalidParameters(format!(
            "enumeration needs n <= {MAX_VERTICES} and 1 <= k <= {MAX_VERTICES}, got n = {n}, k = {k}"
        )));
    }
    let slots = layout(n, k).subsets.len();
    if slots > MAX_ENUMERATION_SLOTS {
        return Err(Error::EnumerationTooLarge {
            n,
            k,
            subsets: slots,
            limit: MAX_ENUMERATION_SLOTS,
        });
    }
    Ok(slots)
}

/// One representative per isomorphism class of `n`-vertex `k`-graphs
/// (the canonical mask), ascending by code, filtered after deduplication.
pub fn enumerate_all(n: usize, k: usize, filter: ClassFilter) -> Result<Vec<Hypergraph>> {
    enumerate_all_with(Exec::default(), n, k, |g| filter.accepts(g))
}

/// [`enumerate_all`] with an explicit execution strategy and an arbitrary
/// predicate.
pub fn enumerate_all_with<P>(exec: Exec, n: usize, k: usize, predicate: P) -> Result<Vec<Hypergraph>>
where
    P: Fn(&Hypergraph) -> bool + Sync + Send,
{
    let slots = check_enumerable(n, k)?;
    let total = full_mask(slots) as u64 + 1;
    Ok(flat_map_chunks(exec, total, CHUNK, |range| {
        range
            .filter_map(|mask| {
                let g = Hypergraph::from_mask(n, k, u128::from(mask)).expect("mask in range");
                (g.is_canonical() && predicate(&g)).then_some(g)
            })
            .collect()
    }))
}

/// The enumerated classes of one size together with a code index.
#[derive(Debug, Clone)]
pub struct Catalog {
    n: usize,
    k: usize,
    filter: ClassFilter,
    graphs: Vec<Hypergraph>,
    index: HashMap<u128, usize>,
}

impl Catalog {
    pub fn new(n: usize, k: usize, filter: ClassFilter) -> Result<Self> {
        Self::with_exec(Exec::default(), n, k, filter)
    }

    pub fn with_exec(exec: Exec, n: usize, k: usize, filter: ClassFilter) -> Result<Self> {
        let graphs = enumerate_all_with(exec, n, k, |g| filter.accepts(g))?;
        Ok(Self::from_parts(n, k, filter, graphs))
    }

    /// Wraps an already enumerated list, e.g. one read from a cache file.
    /// Graphs must be canonical representatives in ascending order.
    pub fn from_graphs(n: usize, k: usize, filter: ClassFilter, graphs: Vec<Hypergraph>) -> Result<Self> {
        for w in graphs.windows(2) {
            if w[0].mask() >= w[1].mask() {
                return Err(Error::Format("graphs are not strictly ascending".into()));
            }
        }
        for g in &graphs {
            if g.n() != n || g.k() != k || !g.is_canonical() {
                return Err(Error::Format(format!(
                    "{:x} is not a canonical {n}-vertex {k}-graph",
                    g.mask()
                )));
            }
        }
        Ok(Self::from_parts(n, k, filter, graphs))
    }

    fn from_parts(n: usize, k: usize, filter: ClassFilter, graphs: Vec<Hypergraph>) -> Self {
        let index = graphs.iter().enumerate().map(|(i, g)| (g.mask(), i)).collect();
        Catalog {
            n,
            k,
            filter,
            graphs,
            index,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn filter(&self) -> ClassFilter {
        self.filter
    }

    pub fn graphs(&self) -> &[Hypergraph] {
        &self.graphs
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn codes(&self) -> impl Iterator<Item = CanonicalCode> + '_ {
        self.graphs.iter().map(|g| CanonicalCode {
            n: self.n as u8,
            k: self.k as u8,
            mask: g.mask(),
        })
    }

    pub fn position(&self, code: &CanonicalCode) -> Option<usize> {
        if code.n as usize != self.n || code.k as usize != self.k {
            return None;
        }
        self.index.get(&code.mask).copied()
    }
}
