//! Brute-force checks of the linear density relations behind the bound:
//! the main lemma, the local square estimates, and the rows `E_m` with
//! their telescoping sum.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::combinatorics::{
    binomial_u64, epsilon_value, int, ratio_of, serde_rational, x_ratio, EpsilonMode, Rational,
};
use crate::error::{Error, Result};
use crate::hypergraph::{
    clique_density, density_profile, local_stats, s_statistic, subsets_of_size, CanonicalCode,
    Catalog, Hypergraph,
};
use crate::parallel::{map_slice, Exec};
use crate::tridiagonal::solve_delta;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LemmaCheckResult {
    pub graph_code: CanonicalCode,
    pub m: usize,
    #[serde(with = "serde_rational")]
    pub x: Rational,
    /// Negated lemma expression; the lemma holds when this is `>= 0`.
    #[serde(with = "serde_rational")]
    pub lhs_slack: Rational,
    pub holds: bool,
}

fn m_in_range(g: &Hypergraph, m: usize) -> Result<()> {
    if m < g.k() || m >= g.n() {
        return Err(Error::InvalidParameters(format!(
            "need k <= m < n, got k = {}, m = {m}, n = {}",
            g.k(),
            g.n()
        )));
    }
    Ok(())
}

/// Evaluates
/// `-(1-(k-1)/m)/x f_{m+1} + (2 - (k-1)/(mx) - 1/((n-m)x)) f_m - x f_{m-1}`
/// with `f_j = d(K_j, G)`.
pub fn main_lemma_value(g: &Hypergraph, m: usize, x: &Rational) -> Result<Rational> {
    m_in_range(g, m)?;
    if !x.is_positive() {
        return Err(Error::InvalidParameters(format!("the lemma needs x > 0, got {x}")));
    }
    let (k, n) = (g.k() as i64, g.n() as i64);
    let mi = m as i64;
    let f_up = clique_density(g, m + 1)?;
    let f_mid = clique_density(g, m)?;
    let f_down = clique_density(g, m - 1)?;
    let a = -(Rational::one() - ratio(k - 1, mi)) / x;
    let b = int(2) - ratio(k - 1, mi) / x - Rational::one() / (int(n - mi) * x);
    Ok(a * f_up + b * f_mid - x * f_down)
}

fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

pub fn check_main_lemma(g: &Hypergraph, m: usize, x: &Rational) -> Result<LemmaCheckResult> {
    let value = main_lemma_value(g, m, x)?;
    let lhs_slack = -value;
    Ok(LemmaCheckResult {
        graph_code: g.canonical(),
        m,
        x: x.clone(),
        holds: !lhs_slack.is_negative(),
        lhs_slack,
    })
}

/// Both sides of one expectation identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    #[serde(with = "serde_rational")]
    pub lhs: Rational,
    #[serde(with = "serde_rational")]
    pub rhs: Rational,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SquareIntermediate {
    pub graph_code: CanonicalCode,
    pub m: usize,
    /// `r(S)^2 <= rr(S) + r(S)/(n-m)` for every `(m-1)`-set `S`.
    pub pointwise: bool,
    /// `E[q r] = d(K_m, G)`.
    pub first_moment: IdentityCheck,
    /// `E[q rr] = sum_H C(s(H),2)/C(m+1,2) d(H, G)` over `(m+1)`-vertex `H`.
    pub second_moment: IdentityCheck,
}

impl SquareIntermediate {
    pub fn holds(&self) -> bool {
        self.pointwise && self.first_moment.holds() && self.second_moment.holds()
    }
}

/// Enumerates every `(m-1)`-subset of `V(G)`.
pub fn check_square_intermediate(g: &Hypergraph, m: usize) -> Result<SquareIntermediate> {
    m_in_range(g, m)?;
    let n = g.n();
    let gap = ratio(1, (n - m) as i64);
    let mut pointwise = true;
    let mut sum_qr = Rational::zero();
    let mut sum_qrr = Rational::zero();
    let mut sets = 0u64;
    for set in subsets_of_size(n, m - 1) {
        let st = local_stats(g, set);
        sets += 1;
        if &st.r * &st.r > &st.rr + &st.r * &gap {
            pointwise = false;
        }
        if st.q {
            sum_qr += &st.r;
            sum_qrr += &st.rr;
        }
    }
    let sets = Rational::from_integer(sets.into());

    let profile = density_profile(g, m + 1)?;
    let pairs = binomial_u64(m as u64 + 1, 2);
    let rhs = profile.counts.iter().fold(Rational::zero(), |acc, (code, count)| {
        let s = s_statistic(&code.hypergraph()) as u64;
        acc + ratio_of(binomial_u64(s, 2), pairs) * ratio_of(*count, profile.total)
    });

    Ok(SquareIntermediate {
        graph_code: g.canonical(),
        m,
        pointwise,
        first_moment: IdentityCheck {
            lhs: sum_qr / &sets,
            rhs: clique_density(g, m)?,
        },
        second_moment: IdentityCheck {
            lhs: sum_qrr / sets,
            rhs,
        },
    })
}

/// The rows `E_k, ..., E_{r-1}` on one host, with `1/((n-m) x_{m,r})`
/// replaced by a single `epsilon`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EmRows {
    pub graph_code: CanonicalCode,
    pub r: u32,
    pub mode: EpsilonMode,
    #[serde(with = "serde_rational")]
    pub epsilon: Rational,
    #[serde(with = "serde_rational::vec")]
    pub values: Vec<Rational>,
    /// Indices `m` with `E_m > 0`.
    pub violations: Vec<u32>,
}

impl EmRows {
    pub fn all_nonpositive(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn value(&self, m: u32) -> &Rational {
        &self.values[(m - self.graph_code.k as u32) as usize]
    }
}

fn em_shape(g: &Hypergraph, r: u32) -> Result<(u32, u64)> {
    let k = g.k() as u32;
    let n = g.n() as u64;
    if r <= k || n <= u64::from(r) {
        return Err(Error::InvalidParameters(format!(
            "rows E_m need k < r < n, got k = {k}, r = {r}, n = {n}"
        )));
    }
    Ok((k, n))
}

pub fn check_em_rows(g: &Hypergraph, r: u32, mode: EpsilonMode) -> Result<EmRows> {
    let (k, n) = em_shape(g, r)?;
    let eps = epsilon_value(k, r, n, mode)?;
    let f: Vec<Rational> = (0..=r as usize).map(|j| clique_density(g, j)).collect::<Result<_>>()?;
    let values: Vec<Rational> = (k..r)
        .map(|m| -> Result<Rational> {
            let x = x_ratio(k, m, r)?;
            let lead = ratio(i64::from(k) - 1, i64::from(m));
            let up = -(Rational::one() - &lead) / &x;
            let mid = int(2) - &lead / &x - &eps;
            let mu = m as usize;
            Ok(up * &f[mu + 1] + mid * &f[mu] - x * &f[mu - 1])
        })
        .collect::<Result<_>>()?;
    let violations = (k..r).zip(&values).filter(|(_, v)| v.is_positive()).map(|(m, _)| m).collect();
    Ok(EmRows {
        graph_code: g.canonical(),
        r,
        mode,
        epsilon: eps,
        values,
        violations,
    })
}

/// `sum_m delta_m E_m` against the boundary form
/// `-delta_k x_{k,r} f_{k-1} + f_g - delta_{r-1} (1-(k-1)/(r-1))/x_{r-1,r} f_r`,
/// with `delta` the `g`-th column of `(D - eps I)^{-1}`.
pub fn check_telescoping(g: &Hypergraph, target: u32, r: u32, mode: EpsilonMode) -> Result<IdentityCheck> {
    let rows = check_em_rows(g, r, mode)?;
    let k = g.k() as u32;
    let delta = solve_delta(k, target, r, &rows.epsilon)?;
    let lhs = delta.iter().zip(&rows.values).fold(Rational::zero(), |acc, (d, e)| acc + d * e);

    let x_low = x_ratio(k, k, r)?;
    let x_high = x_ratio(k, r - 1, r)?;
    let high = (Rational::one() - ratio(i64::from(k) - 1, i64::from(r) - 1)) / x_high;
    let last = delta.last().expect("at least one row");
    let rhs = -(&delta[0] * x_low * clique_density(g, k as usize - 1)?) + clique_density(g, target as usize)?
        - last * high * clique_density(g, r as usize)?;
    Ok(IdentityCheck { lhs, rhs })
}

/// Non-complete classes whose common non-edge intersection exceeds `k`.
pub fn s_bound_violations(catalog: &Catalog) -> Vec<CanonicalCode> {
    catalog
        .graphs()
        .iter()
        .filter(|h| !h.is_complete() && s_statistic(h) > h.k())
        .map(|h| h.canonical())
        .collect()
}

/// Lemma checks over every graph of every catalog, every `m` in
/// `k..n-1`, and every `x` of the grid. Returns the failures only.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LemmaSweep {
    pub checked: usize,
    pub failures: Vec<LemmaCheckResult>,
}

pub fn lemma_sweep(exec: Exec, catalogs: &[&Catalog], grid: &[Rational]) -> Result<LemmaSweep> {
    let graphs: Vec<Hypergraph> = catalogs.iter().flat_map(|c| c.graphs().iter().copied()).collect();
    let per_graph = map_slice(exec, &graphs, |g| -> Result<Vec<LemmaCheckResult>> {
        let mut out = Vec::new();
        for m in g.k()..g.n() {
            for x in grid {
                out.push(check_main_lemma(g, m, x)?);
            }
        }
        Ok(out)
    });
    let mut checked = 0;
    let mut failures = Vec::new();
    for batch in per_graph {
        let batch = batch?;
        checked += batch.len();
        failures.extend(batch.into_iter().filter(|c| !c.holds));
    }
    Ok(LemmaSweep { checked, failures })
}

/// `{ j/8 : 1 <= j <= 16 }`.
pub fn dyadic_grid() -> Vec<Rational> {
    (1..=16).map(|j| ratio(j, 8)).collect()
}

/// `x_{m,r}` for `k <= m < r` and every `r` in `rs`.
pub fn theorem_grid(k: u32, rs: impl IntoIterator<Item = u32>) -> Result<Vec<Rational>> {
    let mut xs = Vec::new();
    for r in rs {
        for m in k..r {
            xs.push(x_ratio(k, m, r)?);
        }
    }
    xs.sort();
    xs.dedup();
    Ok(xs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::rat;
    use crate::hypergraph::ClassFilter;

    fn two_triangles() -> Hypergraph {
        let k3 = Hypergraph::complete(3, 3).unwrap();
        k3.disjoint_union(&k3).unwrap()
    }

    #[test]
    fn complete_host_closed_form() {
        let n = 7;
        let kn = Hypergraph::complete(n, 3).unwrap();
        for m in 3..n {
            for x in [rat(1, 3), int(1), rat(5, 2)] {
                let v = main_lemma_value(&kn, m, &x).unwrap();
                let expected = int(2) - &x - (int(1) + ratio(1, (n - m) as i64)) / &x;
                assert_eq!(v, expected);
                assert!(v.is_negative());
            }
        }
    }

    #[test]
    fn empty_host_at_m_equal_k() {
        let en = Hypergraph::empty(6, 3).unwrap();
        let x = rat(3, 7);
        assert_eq!(main_lemma_value(&en, 3, &x).unwrap(), -x);
    }

    #[test]
    fn rejects_nonpositive_x_and_bad_m() {
        let g = Hypergraph::complete(5, 3).unwrap();
        assert!(check_main_lemma(&g, 3, &int(0)).is_err());
        assert!(check_main_lemma(&g, 3, &rat(-1, 2)).is_err());
        assert!(check_main_lemma(&g, 2, &int(1)).is_err());
        assert!(check_main_lemma(&g, 5, &int(1)).is_err());
    }

    #[test]
    fn lemma_on_all_five_vertex_graphs() {
        let h5 = Catalog::new(5, 3, ClassFilter::None).unwrap();
        let xs = theorem_grid(3, 5..=8).unwrap();
        for g in h5.graphs() {
            for m in 3..=4 {
                for x in &xs {
                    assert!(check_main_lemma(g, m, x).unwrap().holds);
                }
            }
        }
    }

    #[test]
    fn square_intermediate_examples() {
        let k5 = Hypergraph::complete(5, 3).unwrap();
        let c = check_square_intermediate(&k5, 4).unwrap();
        assert!(c.holds());
        assert_eq!(c.first_moment.lhs, int(1));

        let g = two_triangles();
        let c = check_square_intermediate(&g, 3).unwrap();
        assert!(c.holds());
        // pairs inside one triangle extend to it; 6 of 15 pairs, each with l = 1
        assert_eq!(c.first_moment.lhs, rat(6, 15) * rat(1, 4));
        assert_eq!(c.first_moment.rhs, rat(1, 10));
    }

    #[test]
    fn em_rows_modes() {
        let k7 = Hypergraph::complete(7, 3).unwrap();
        let corrected = check_em_rows(&k7, 5, EpsilonMode::Corrected).unwrap();
        let literal = check_em_rows(&k7, 5, EpsilonMode::PaperLiteral).unwrap();
        assert!(corrected.all_nonpositive());
        assert_eq!(corrected.values.len(), 2);
        assert!(literal.epsilon < corrected.epsilon);
        for (a, b) in literal.values.iter().zip(&corrected.values) {
            assert_eq!(a - b, &corrected.epsilon - &literal.epsilon);
        }
        assert!(check_em_rows(&k7, 7, EpsilonMode::Corrected).is_err());
    }

    #[test]
    fn telescoping_identity() {
        let g = two_triangles().disjoint_union(&Hypergraph::empty(1, 3).unwrap()).unwrap();
        for mode in [EpsilonMode::PaperLiteral, EpsilonMode::Corrected] {
            for target in 3..5 {
                assert!(check_telescoping(&g, target, 5, mode).unwrap().holds());
            }
        }
    }

    #[test]
    fn s_bound_on_five_vertices() {
        let h5 = Catalog::new(5, 3, ClassFilter::None).unwrap();
        assert!(s_bound_violations(&h5).is_empty());
    }
}
