//! Sum-of-squares certificate for `pi(K4^(3), K5^(3)) = 3/8`.
//!
//! Checked per graph over every 6-vertex 3-graph without an independent
//! 5-set: `3/8 - d(E4, H) - sum_k w_k c_k(H) >= 0`.
//!
//! The O flags carry the edge sets `{(0,1,4)}` and `{(2,3,4)}` with labels
//! on `0..3`, which induces the edgeless type `P4`; the last square is
//! averaged over `P4`. Reading the labels as a complete `T4` instead
//! (which forces the four type edges into both hosts) is kept as
//! [`OReading::CompleteType`] for comparison: it leaves the two disjoint
//! edges graph with slack `-1/10`.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::combinatorics::{binomial, int, rat, ratio_of, serde_rational, Rational};
use crate::error::{Error, Result};
use crate::flag::{ExpansionVector, Flag, FlagSquare, TypeSigma};
use crate::hypergraph::{has_no_empty_set, induced_density, Catalog, ClassFilter, Hypergraph};
use crate::parallel::{map_slice, Exec};

pub const K: usize = 3;
pub const HOST_SIZE: usize = 6;
/// Hosts may not contain an independent set of this size.
pub const FORBIDDEN_EMPTY: usize = 5;

pub fn upper_value() -> Rational {
    rat(3, 8)
}

/// The six types used by the certificate.
#[derive(Debug, Clone)]
pub struct CertificateTypes {
    pub p1: TypeSigma,
    pub p2: TypeSigma,
    pub p3: TypeSigma,
    pub p4: TypeSigma,
    pub q4: TypeSigma,
    pub t4: TypeSigma,
}

impl CertificateTypes {
    pub fn new() -> Result<Self> {
        Ok(CertificateTypes {
            p1: TypeSigma::empty(1, K)?,
            p2: TypeSigma::empty(2, K)?,
            p3: TypeSigma::empty(3, K)?,
            p4: TypeSigma::empty(4, K)?,
            q4: TypeSigma::new(Hypergraph::from_edges(4, K, &[&[0, 1, 2]])?),
            t4: TypeSigma::complete(4, K)?,
        })
    }
}

/// Which type the two O flags are read over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum OReading {
    /// Edge sets as listed; the labels induce `P4`.
    #[default]
    #[serde(rename = "p4")]
    EdgelessType,
    /// Labels on a complete `T4`; hosts gain the four type edges.
    #[serde(rename = "t4")]
    CompleteType,
}

impl std::fmt::Display for OReading {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OReading::EdgelessType => "p4",
            OReading::CompleteType => "t4",
        })
    }
}

impl std::str::FromStr for OReading {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "p4" => Ok(OReading::EdgelessType),
            "t4" => Ok(OReading::CompleteType),
            _ => Err(Error::InvalidParameters(format!("unknown O reading {s:?}, expected p4 or t4"))),
        }
    }
}

/// The eleven flags, each with its type on the leading vertices.
#[derive(Debug, Clone)]
pub struct CertificateFlags {
    pub e4: Flag,
    pub e3_p1: Flag,
    pub l_a: Flag,
    pub l_b: Flag,
    pub m_a: Flag,
    pub m_b: Flag,
    pub m_c: Flag,
    pub e4_p3: Flag,
    pub n_q4: Flag,
    pub o_a: Flag,
    pub o_b: Flag,
}

fn flag(n: usize, edges: &[&[u8]], sigma: TypeSigma) -> Result<Flag> {
    Flag::with_leading_type(Hypergraph::from_edges(n, K, edges)?, sigma)
}

const T4_EDGES: [&[u8]; 4] = [&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]];

impl CertificateFlags {
    pub fn new(types: &CertificateTypes) -> Result<Self> {
        Self::with_reading(types, OReading::default())
    }

    pub fn with_reading(types: &CertificateTypes, reading: OReading) -> Result<Self> {
        let (o_a, o_b) = match reading {
            OReading::EdgelessType => (
                flag(5, &[&[0, 1, 4]], types.p4)?,
                flag(5, &[&[2, 3, 4]], types.p4)?,
            ),
            OReading::CompleteType => {
                let with_t4 = |extra: &'static [u8]| -> Vec<&'static [u8]> {
                    T4_EDGES.iter().copied().chain([extra]).collect()
                };
                (
                    flag(5, &with_t4(&[0, 1, 4]), types.t4)?,
                    flag(5, &with_t4(&[2, 3, 4]), types.t4)?,
                )
            }
        };
        Ok(CertificateFlags {
            e4: flag(4, &[], TypeSigma::empty(0, K)?)?,
            e3_p1: flag(3, &[], types.p1)?,
            l_a: flag(4, &[&[0, 2, 3]], types.p2)?,
            l_b: flag(4, &[&[1, 2, 3]], types.p2)?,
            m_a: flag(4, &[&[1, 2, 3]], types.p3)?,
            m_b: flag(4, &[&[0, 2, 3]], types.p3)?,
            m_c: flag(4, &[&[0, 1, 3]], types.p3)?,
            e4_p3: flag(4, &[], types.p3)?,
            n_q4: flag(5, &[&[0, 1, 2]], types.q4)?,
            o_a,
            o_b,
        })
    }

    pub fn named(&self) -> [(&'static str, &Flag); 11] {
        [
            ("E4", &self.e4),
            ("E3^P1", &self.e3_p1),
            ("L_a^P2", &self.l_a),
            ("L_b^P2", &self.l_b),
            ("M_a^P3", &self.m_a),
            ("M_b^P3", &self.m_b),
            ("M_c^P3", &self.m_c),
            ("E4^P3", &self.e4_p3),
            ("N^Q4", &self.n_q4),
            ("O_a", &self.o_a),
            ("O_b", &self.o_b),
        ]
    }
}

/// `weight * [[ (sum_i a_i F_i - c sigma)^2 ]]_sigma`.
#[derive(Debug, Clone)]
pub struct CertificateTerm {
    pub name: &'static str,
    pub weight: Rational,
    pub square: FlagSquare,
}

pub fn certificate_terms() -> Result<Vec<CertificateTerm>> {
    certificate_terms_with(OReading::default())
}

pub fn certificate_terms_with(reading: OReading) -> Result<Vec<CertificateTerm>> {
    let ty = CertificateTypes::new()?;
    let f = CertificateFlags::with_reading(&ty, reading)?;
    let one = || int(1);
    let term = |name, weight, sigma, terms, constant| -> Result<CertificateTerm> {
        Ok(CertificateTerm {
            name,
            weight,
            square: FlagSquare::new(sigma, terms, constant)?,
        })
    };
    Ok(vec![
        term("E3", rat(2, 3), ty.p1, vec![(one(), f.e3_p1.clone())], rat(3, 4))?,
        term("L", rat(1, 6), ty.p2, vec![(one(), f.l_a.clone()), (int(-1), f.l_b.clone())], int(0))?,
        term(
            "M",
            rat(13, 12),
            ty.p3,
            vec![(one(), f.m_a.clone()), (one(), f.m_b.clone()), (one(), f.m_c.clone())],
            rat(1, 2),
        )?,
        term("E4P3", rat(11, 12), ty.p3, vec![(one(), f.e4_p3.clone())], rat(1, 2))?,
        term("N", int(2), ty.q4, vec![(one(), f.n_q4.clone())], rat(1, 2))?,
        term("O", rat(1, 2), *f.o_a.sigma(), vec![(one(), f.o_a.clone()), (int(-1), f.o_b.clone())], int(0))?,
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GraphSlack {
    pub code: String,
    #[serde(with = "serde_rational")]
    pub e4_density: Rational,
    /// Unweighted square values, in certificate order.
    #[serde(with = "serde_rational::vec")]
    pub squares: Vec<Rational>,
    /// `sum_k w_k c_k(H)`.
    #[serde(with = "serde_rational")]
    pub square_sum: Rational,
    #[serde(with = "serde_rational")]
    pub slack: Rational,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CertificateReport {
    pub k: usize,
    pub o_reading: OReading,
    pub n: usize,
    pub graph_count: usize,
    #[serde(with = "serde_rational")]
    pub min_slack: Rational,
    pub tight_graphs: Vec<String>,
    pub verdict: Verdict,
    /// Graphs whose weighted square sum is negative; informational only.
    pub negative_square_sums: usize,
    #[serde(with = "serde_rational")]
    pub min_square_sum: Rational,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub graphs: Vec<GraphSlack>,
}

impl CertificateReport {
    pub fn slacks(&self) -> BTreeMap<String, Rational> {
        self.graphs.iter().map(|g| (g.code.clone(), g.slack.clone())).collect()
    }

    pub fn without_graphs(mut self) -> Self {
        self.graphs.clear();
        self
    }
}

/// Expansions of all six squares over `catalog`, in certificate order.
pub fn square_expansions(
    exec: Exec,
    reading: OReading,
    catalog: &Catalog,
) -> Result<Vec<(CertificateTerm, ExpansionVector)>> {
    certificate_terms_with(reading)?
        .into_iter()
        .map(|t| {
            let v = t.square.expansion_with(exec, catalog)?;
            Ok((t, v))
        })
        .collect()
}

pub fn verify_certificate(catalog: &Catalog) -> Result<CertificateReport> {
    verify_certificate_with(Exec::default(), catalog)
}

pub fn verify_certificate_with(exec: Exec, catalog: &Catalog) -> Result<CertificateReport> {
    verify_certificate_reading(exec, OReading::default(), catalog)
}

pub fn verify_certificate_reading(exec: Exec, reading: OReading, catalog: &Catalog) -> Result<CertificateReport> {
    if catalog.n() != HOST_SIZE || catalog.k() != K || catalog.filter() != ClassFilter::NoEmptySet(FORBIDDEN_EMPTY) {
        return Err(Error::SizeMismatch(format!(
            "certificate needs the {}-vertex {}-graph catalog without an independent {}-set",
            HOST_SIZE, K, FORBIDDEN_EMPTY
        )));
    }
    let expansions = square_expansions(exec, reading, catalog)?;
    let e4 = Hypergraph::empty(4, K)?;
    let top = upper_value();
    let graphs = map_slice(exec, catalog.graphs(), |h| -> Result<GraphSlack> {
        let code = h.canonical();
        let squares: Vec<Rational> = expansions.iter().map(|(_, v)| v.get(&code)).collect();
        let square_sum = expansions
            .iter()
            .zip(&squares)
            .fold(Rational::zero(), |acc, ((t, _), c)| acc + &t.weight * c);
        let e4_density = induced_density(&e4, h, true)?;
        let slack = &top - &e4_density - &square_sum;
        Ok(GraphSlack {
            code: code.hex(),
            e4_density,
            squares,
            square_sum,
            slack,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let min_slack = graphs.iter().map(|g| g.slack.clone()).min().unwrap_or_else(Rational::zero);
    let tight_graphs = graphs.iter().filter(|g| g.slack.is_zero()).map(|g| g.code.clone()).collect();
    let verdict = if graphs.iter().all(|g| !g.slack.is_negative()) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(CertificateReport {
        k: K,
        o_reading: reading,
        n: HOST_SIZE,
        graph_count: graphs.len(),
        min_slack,
        tight_graphs,
        verdict,
        negative_square_sums: graphs.iter().filter(|g| g.square_sum.is_negative()).count(),
        min_square_sum: graphs.iter().map(|g| g.square_sum.clone()).min().unwrap_or_else(Rational::zero),
        graphs,
    })
}

/// Weighted square sum of the certificate evaluated on a larger host via
/// its 6-vertex profile.
pub fn square_sum_on(report: &CertificateReport, g: &Hypergraph) -> Result<Rational> {
    let profile = crate::hypergraph::density_profile(g, HOST_SIZE)?;
    let mut acc = Rational::zero();
    for (code, d) in &profile.counts {
        let hex = code.hex();
        let entry = report
            .graphs
            .iter()
            .find(|s| s.code == hex)
            .ok_or_else(|| Error::SizeMismatch(format!("{hex} is not in the certificate catalog")))?;
        acc += &entry.square_sum * ratio_of(*d, profile.total);
    }
    Ok(acc)
}

/// `G_n`: disjoint cliques on `floor(n/2)` and `ceil(n/2)` vertices.
pub fn two_clique_graph(n: usize) -> Result<Hypergraph> {
    let a = Hypergraph::complete(n / 2, K)?;
    let b = Hypergraph::complete(n - n / 2, K)?;
    a.disjoint_union(&b)
}

/// `d(E4, G_n)`.
///
/// Up to 8 vertices the graph is built and counted directly; up to 16 the
/// 4-sets are enumerated and 2+2 splits counted; beyond that the closed
/// form `C(a,2) C(b,2) / C(n,4)` is used.
pub fn two_clique_density(n: usize) -> Result<Rational> {
    if n < 4 {
        return Err(Error::InvalidParameters(format!("two-clique density needs n >= 4, got {n}")));
    }
    let a = n / 2;
    if n <= crate::hypergraph::MAX_VERTICES {
        let g = two_clique_graph(n)?;
        if n >= FORBIDDEN_EMPTY && !has_no_empty_set(&g, FORBIDDEN_EMPTY) {
            return Err(Error::InvalidParameters(format!("G_{n} has an independent 5-set")));
        }
        return induced_density(&Hypergraph::empty(4, K)?, &g, true);
    }
    if n <= 16 {
        let split = (0..n)
            .combinations(4)
            .filter(|q| q.iter().filter(|&&v| v < a).count() == 2)
            .count() as u64;
        return Ok(ratio_of(split, crate::combinatorics::binomial_u64(n as u64, 4)));
    }
    let b = (n - a) as u64;
    let num = binomial(a as u64, 2) * binomial(b, 2);
    Ok(Rational::new(num, binomial(n as u64, 4)))
}

/// `C(a,2) C(b,2) / C(n,4)` in closed form, used as an oracle.
pub fn two_clique_closed_form(n: usize) -> Rational {
    let a = (n / 2) as u64;
    let b = (n as u64) - a;
    Rational::new(binomial(a, 2) * binomial(b, 2), binomial(n as u64, 4).max(BigInt::from(1)))
}
