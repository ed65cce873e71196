//! Small `k`-uniform hypergraphs on at most eight labelled vertices.
//!
//! The edge set is a bitmask over the `C(n, k)` `k`-subsets of `{0..n-1}`
//! in colexicographic order: bit `i` is set iff the `i`-th subset is an
//! edge.

mod density;
mod enumerate;
pub mod hgr1;
mod layout;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub(crate) use density::subsets_of_size;
pub(crate) use layout::{apply_slot_map, extract_bits, layout, perm_table, permute_vertex_mask};

pub use density::{
    clique_density, containment_density, density_profile, has_no_empty_set, induced_density,
    local_stats, s_statistic, DensityProfile, LocalStats,
};
pub use enumerate::{enumerate_all, enumerate_all_with, Catalog, ClassFilter, MAX_ENUMERATION_SLOTS};

pub const MAX_VERTICES: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: u8,
    k: u8,
    edges: u128,
}

/// Isomorphism-class identifier: the smallest edge mask over all `n!`
/// relabellings.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalCode {
    pub n: u8,
    pub k: u8,
    #[serde(with = "hex_mask")]
    pub mask: u128,
}

/// Masks travel as lowercase hex strings; JSON numbers cannot hold 128 bits.
mod hex_mask {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(mask: &u128, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{mask:x}"))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u128, D::Error> {
        let text = String::deserialize(d)?;
        u128::from_str_radix(&text, 16).map_err(serde::de::Error::custom)
    }
}

impl CanonicalCode {
    pub fn hypergraph(&self) -> Hypergraph {
        Hypergraph {
            n: self.n,
            k: self.k,
            edges: self.mask,
        }
    }

    pub fn hex(&self) -> String {
        format!("{:x}", self.mask)
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode(n={}, k={}, {:#x})", self.n, self.k, self.mask)
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.mask)
    }
}

fn check_shape(n: usize, k: usize) -> Result<()> {
    if n > MAX_VERTICES || k == 0 || k > MAX_VERTICES {
        return Err(Error::InvalidParameters(format!(
            "hypergraphs need n <= {MAX_VERTICES} and 1 <= k <= {MAX_VERTICES}, got n = {n}, k = {k}"
        )));
    }
    Ok(())
}

impl Hypergraph {
    pub fn empty(n: usize, k: usize) -> Result<Self> {
        Self::from_mask(n, k, 0)
    }

    pub fn complete(n: usize, k: usize) -> Result<Self> {
        check_shape(n, k)?;
        let slots = layout(n, k).subsets.len();
        Self::from_mask(n, k, full_mask(slots))
    }

    pub fn from_mask(n: usize, k: usize, mask: u128) -> Result<Self> {
        check_shape(n, k)?;
        let slots = layout(n, k).subsets.len();
        if mask & !full_mask(slots) != 0 {
            return Err(Error::InvalidParameters(format!(
                "edge mask {mask:#x} has bits beyond the {slots} slots of C({n}, {k})"
            )));
        }
        Ok(Hypergraph {
            n: n as u8,
            k: k as u8,
            edges: mask,
        })
    }

    /// Builds a hypergraph from explicit vertex lists. Duplicate edges are
    /// merged.
    pub fn from_edges(n: usize, k: usize, edges: &[&[u8]]) -> Result<Self> {
        check_shape(n, k)?;
        let lay = layout(n, k);
        let mut mask = 0u128;
        for edge in edges {
            let mut set = 0u16;
            for &v in *edge {
                if v as usize >= n {
                    return Err(Error::InvalidParameters(format!(
                        "vertex {v} out of range for n = {n}"
                    )));
                }
                set |= 1 << v;
            }
            if set.count_ones() as usize != k || edge.len() != k {
                return Err(Error::InvalidParameters(format!(
                    "edge {edge:?} is not a set of {k} distinct vertices"
                )));
            }
            mask |= 1u128 << lay.slot[set as usize];
        }
        Ok(Hypergraph {
            n: n as u8,
            k: k as u8,
            edges: mask,
        })
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn k(&self) -> usize {
        self.k as usize
    }

    pub fn mask(&self) -> u128 {
        self.edges
    }

    /// Number of `k`-subsets, i.e. of potential edges.
    pub fn slots(&self) -> usize {
        layout(self.n(), self.k()).subsets.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.count_ones() as usize
    }

    /// Whether the `k`-set given as a vertex bitmask is an edge.
    pub fn has_edge(&self, vertex_set: u8) -> bool {
        let lay = layout(self.n(), self.k());
        match lay.slot.get(vertex_set as usize) {
            Some(&s) if s != u8::MAX => self.edges >> s & 1 == 1,
            _ => false,
        }
    }

    /// Edges as sorted vertex lists, in colex order.
    pub fn edges(&self) -> Vec<Vec<u8>> {
        let lay = layout(self.n(), self.k());
        lay.subsets
            .iter()
            .enumerate()
            .filter(|(i, _)| self.edges >> i & 1 == 1)
            .map(|(_, &s)| (0..8u8).filter(|v| s >> v & 1 == 1).collect())
            .collect()
    }

    pub fn vertex_mask(&self) -> u8 {
        ((1u16 << self.n) - 1) as u8
    }

    /// Every `k`-subset of `vertex_set` is an edge (vacuous below `k`).
    pub fn is_complete_on(&self, vertex_set: u8) -> bool {
        let within = layout(self.n(), self.k()).within[vertex_set as usize];
        self.edges & within == within
    }

    /// No `k`-subset of `vertex_set` is an edge.
    pub fn is_empty_on(&self, vertex_set: u8) -> bool {
        self.edges & layout(self.n(), self.k()).within[vertex_set as usize] == 0
    }

    pub fn is_complete(&self) -> bool {
        self.is_complete_on(self.vertex_mask())
    }

    pub fn complement(&self) -> Hypergraph {
        Hypergraph {
            edges: !self.edges & full_mask(self.slots()),
            ..*self
        }
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[u8]) -> Hypergraph {
        assert_eq!(perm.len(), self.n(), "permutation length must equal n");
        let lay = layout(self.n(), self.k());
        let mut out = 0u128;
        let mut rest = self.edges;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            out |= 1u128 << lay.slot[permute_vertex_mask(lay.subsets[i], perm) as usize];
            rest &= rest - 1;
        }
        Hypergraph { edges: out, ..*self }
    }

    /// Sub-hypergraph induced on `vertex_set`, relabelled in increasing
    /// vertex order.
    pub fn induced(&self, vertex_set: u8) -> Hypergraph {
        let size = vertex_set.count_ones() as u8;
        let within = layout(self.n(), self.k()).within[vertex_set as usize];
        Hypergraph {
            n: size,
            k: self.k,
            edges: extract_bits(self.edges, within),
        }
    }

    /// Sub-hypergraph on the listed vertices where new vertex `i` is old
    /// vertex `order[i]`.
    pub fn relabel(&self, order: &[u8]) -> Hypergraph {
        let m = order.len();
        let lay = layout(self.n(), self.k());
        let target = layout(m, self.k());
        let mut out = 0u128;
        for (j, &s) in target.subsets.iter().enumerate() {
            let original = permute_vertex_mask(s, order);
            if self.edges >> lay.slot[original as usize] & 1 == 1 {
                out |= 1u128 << j;
            }
        }
        Hypergraph {
            n: m as u8,
            k: self.k,
            edges: out,
        }
    }

    /// Vertex-disjoint union; `other`'s vertices follow `self`'s.
    pub fn disjoint_union(&self, other: &Hypergraph) -> Result<Hypergraph> {
        if self.k != other.k {
            return Err(Error::SizeMismatch(format!(
                "cannot join a {}-graph with a {}-graph",
                self.k, other.k
            )));
        }
        let n = self.n() + other.n();
        check_shape(n, self.k())?;
        let shift = self.n;
        let mut edges: Vec<Vec<u8>> = self.edges();
        edges.extend(
            other
                .edges()
                .into_iter()
                .map(|e| e.into_iter().map(|v| v + shift).collect()),
        );
        let refs: Vec<&[u8]> = edges.iter().map(Vec::as_slice).collect();
        Hypergraph::from_edges(n, self.k(), &refs)
    }

    pub fn canonical(&self) -> CanonicalCode {
        let table = perm_table(self.n(), self.k());
        let mut best = self.edges;
        for i in 1..table.len() {
            let image = apply_slot_map(self.edges, table.map(i));
            if image < best {
                best = image;
            }
        }
        CanonicalCode {
            n: self.n,
            k: self.k,
            mask: best,
        }
    }

    /// `true` iff this mask is already the canonical representative; stops
    /// at the first relabelling that produces a smaller mask.
    pub fn is_canonical(&self) -> bool {
        let table = perm_table(self.n(), self.k());
        (1..table.len()).all(|i| apply_slot_map(self.edges, table.map(i)) >= self.edges)
    }

    pub fn is_isomorphic(&self, other: &Hypergraph) -> bool {
        self.n == other.n
            && self.k == other.k
            && self.edge_count() == other.edge_count()
            && self.canonical() == other.canonical()
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph(n={}, k={}, edges={:?})", self.n, self.k, self.edges())
    }
}

pub(crate) fn full_mask(slots: usize) -> u128 {
    if slots >= 128 {
        u128::MAX
    } else {
        (1u128 << slots) - 1
    }
}
