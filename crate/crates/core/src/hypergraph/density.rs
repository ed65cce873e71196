use std::collections::BTreeMap;

use num_traits::Zero;

use super::{apply_slot_map, perm_table, CanonicalCode, Hypergraph};
use crate::combinatorics::{binomial_u64, ratio_of, Rational};
use crate::error::{Error, Result};

/// Vertex subsets of `{0..n-1}` with exactly `size` elements, ascending.
pub(crate) fn subsets_of_size(n: usize, size: usize) -> impl Iterator<Item = u8> {
    (0u16..1 << n)
        .filter(move |s| s.count_ones() as usize == size)
        .map(|s| s as u8)
}

/// How often each isomorphism class appears as an induced `t`-vertex
/// sub-hypergraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityProfile {
    pub t: usize,
    /// `C(n, t)`.
    pub total: u64,
    pub counts: BTreeMap<CanonicalCode, u64>,
}

impl DensityProfile {
    pub fn density(&self, code: &CanonicalCode) -> Rational {
        let hits = self.counts.get(code).copied().unwrap_or(0);
        ratio_of(hits, self.total)
    }
}

pub fn density_profile(g: &Hypergraph, t: usize) -> Result<DensityProfile> {
    if t > g.n() {
        return Err(Error::SizeMismatch(format!(
            "cannot take {t}-vertex subsets of a {}-vertex hypergraph",
            g.n()
        )));
    }
    let mut counts = BTreeMap::new();
    for set in subsets_of_size(g.n(), t) {
        *counts.entry(g.induced(set).canonical()).or_insert(0) += 1;
    }
    Ok(DensityProfile {
        t,
        total: binomial_u64(g.n() as u64, t as u64),
        counts,
    })
}

fn check_pair(f: &Hypergraph, g: &Hypergraph) -> Result<()> {
    if f.k() != g.k() || f.n() > g.n() {
        return Err(Error::SizeMismatch(format!(
            "density of a {}-vertex {}-graph in a {}-vertex {}-graph",
            f.n(),
            f.k(),
            g.n(),
            g.k()
        )));
    }
    Ok(())
}

/// `d(F, G)` (induced) or `d_s(F, G)` (containment of a copy of `F`),
/// both over uniformly random `|F|`-subsets of `V(G)`.
pub fn induced_density(f: &Hypergraph, g: &Hypergraph, induced: bool) -> Result<Rational> {
    if induced {
        check_pair(f, g)?;
        let code = f.canonical();
        let hits = subsets_of_size(g.n(), f.n())
            .filter(|&set| g.induced(set).canonical() == code)
            .count() as u64;
        Ok(ratio_of(hits, binomial_u64(g.n() as u64, f.n() as u64)))
    } else {
        containment_density(f, g)
    }
}

/// `d_s(F, G)`: probability a random `|F|`-set spans a copy of `F` as a
/// (not necessarily induced) sub-hypergraph.
pub fn containment_density(f: &Hypergraph, g: &Hypergraph) -> Result<Rational> {
    check_pair(f, g)?;
    let table = perm_table(f.n(), f.k());
    let images: Vec<u128> = (0..table.len())
        .map(|i| apply_slot_map(f.mask(), table.map(i)))
        .collect();
    let hits = subsets_of_size(g.n(), f.n())
        .filter(|&set| {
            let host = g.induced(set).mask();
            images.iter().any(|img| img & !host == 0)
        })
        .count() as u64;
    Ok(ratio_of(hits, binomial_u64(g.n() as u64, f.n() as u64)))
}

/// `d(K_j, G)`; sets with fewer than `k` vertices count as complete.
pub fn clique_density(g: &Hypergraph, j: usize) -> Result<Rational> {
    if j > g.n() {
        return Err(Error::SizeMismatch(format!(
            "d(K_{j}, G) needs j <= |G| = {}",
            g.n()
        )));
    }
    let hits = subsets_of_size(g.n(), j)
        .filter(|&set| g.is_complete_on(set))
        .count() as u64;
    Ok(ratio_of(hits, binomial_u64(g.n() as u64, j as u64)))
}

/// Local statistics of a vertex set `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalStats {
    /// `G` restricted to `S` is complete.
    pub q: bool,
    /// Number of outside vertices `v` with `S + v` complete.
    pub l: usize,
    /// `l / (n - |S|)`, or `0` when `S` is everything.
    pub r: Rational,
    /// `C(l, 2) / C(n - |S|, 2)`, or `0` when fewer than two vertices remain.
    pub rr: Rational,
}

pub fn local_stats(g: &Hypergraph, set: u8) -> LocalStats {
    assert_eq!(set & !g.vertex_mask(), 0, "vertex set outside V(G)");
    let q = g.is_complete_on(set);
    let outside = g.n() - set.count_ones() as usize;
    let l = (0..g.n())
        .filter(|&v| set >> v & 1 == 0 && g.is_complete_on(set | 1 << v))
        .count();
    let r = if outside == 0 {
        Rational::zero()
    } else {
        ratio_of(l as u64, outside as u64)
    };
    let pairs = binomial_u64(outside as u64, 2);
    let rr = if pairs == 0 {
        Rational::zero()
    } else {
        ratio_of(binomial_u64(l as u64, 2), pairs)
    };
    LocalStats { q, l, r, rr }
}

/// Size of the common intersection of all non-edges; `n` when there are
/// none.
pub fn s_statistic(h: &Hypergraph) -> usize {
    let lay = super::layout(h.n(), h.k());
    let missing = !h.mask() & super::full_mask(lay.subsets.len());
    let mut common = h.vertex_mask();
    let mut rest = missing;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        common &= lay.subsets[i];
        rest &= rest - 1;
    }
    common.count_ones() as usize
}

/// Every `size`-subset of `V(G)` spans at least one edge.
pub fn has_no_empty_set(g: &Hypergraph, size: usize) -> bool {
    size <= g.n() && subsets_of_size(g.n(), size).all(|set| !g.is_empty_on(set))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{int, rat};

    fn two_triangles() -> Hypergraph {
        let k3 = Hypergraph::complete(3, 3).unwrap();
        k3.disjoint_union(&k3).unwrap()
    }

    #[test]
    fn complete_densities() {
        for n in 3..=7 {
            let kn = Hypergraph::complete(n, 3).unwrap();
            for m in 3..=n {
                let km = Hypergraph::complete(m, 3).unwrap();
                assert_eq!(induced_density(&km, &kn, true).unwrap(), int(1));
                assert_eq!(clique_density(&kn, m).unwrap(), int(1));
            }
        }
    }

    #[test]
    fn empty_four_set_in_two_triangles() {
        let e4 = Hypergraph::empty(4, 3).unwrap();
        assert_eq!(induced_density(&e4, &two_triangles(), true).unwrap(), rat(3, 5));
    }

    #[test]
    fn induced_and_containment_agree_on_complete() {
        let g = Hypergraph::from_edges(6, 3, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3], &[3, 4, 5]]).unwrap();
        for m in 3..=5 {
            let km = Hypergraph::complete(m, 3).unwrap();
            assert_eq!(
                induced_density(&km, &g, true).unwrap(),
                induced_density(&km, &g, false).unwrap()
            );
        }
        // a single edge is contained far more often than it is induced
        let one = Hypergraph::from_edges(4, 3, &[&[0, 1, 2]]).unwrap();
        assert!(containment_density(&one, &g).unwrap() > induced_density(&one, &g, true).unwrap());
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let small = Hypergraph::complete(4, 3).unwrap();
        let big = Hypergraph::complete(5, 3).unwrap();
        assert!(induced_density(&big, &small, true).is_err());
        let graph = Hypergraph::complete(4, 2).unwrap();
        assert!(induced_density(&graph, &big, true).is_err());
        assert!(clique_density(&small, 5).is_err());
    }

    #[test]
    fn local_stats_examples() {
        let k5 = Hypergraph::complete(5, 3).unwrap();
        let s = local_stats(&k5, 0b00011);
        assert_eq!((s.q, s.l, s.r, s.rr), (true, 3, int(1), int(1)));
        let e5 = Hypergraph::empty(5, 3).unwrap();
        let s = local_stats(&e5, 0b00011);
        assert!(s.q);
        assert_eq!(s.l, 0);
    }

    #[test]
    fn s_statistic_examples() {
        for n in 3..=7 {
            assert_eq!(s_statistic(&Hypergraph::complete(n, 3).unwrap()), n);
            let minus = Hypergraph::complete(n, 3).unwrap().mask() & !1;
            assert_eq!(s_statistic(&Hypergraph::from_mask(n, 3, minus).unwrap()), 3);
        }
        for k in 2..=5 {
            assert_eq!(s_statistic(&Hypergraph::empty(k + 1, k).unwrap()), 0);
        }
    }

    #[test]
    fn no_empty_set_examples() {
        assert!(has_no_empty_set(&Hypergraph::complete(6, 3).unwrap(), 5));
        assert!(!has_no_empty_set(&Hypergraph::empty(6, 3).unwrap(), 5));
        assert!(has_no_empty_set(&two_triangles(), 5));
        assert!(!has_no_empty_set(&two_triangles(), 4));
    }

    #[test]
    fn profile_sums_to_one() {
        let g = two_triangles();
        for t in 0..=6 {
            let p = density_profile(&g, t).unwrap();
            let sum = p.counts.keys().fold(int(0), |acc, c| acc + p.density(c));
            assert_eq!(sum, int(1));
        }
    }
}
