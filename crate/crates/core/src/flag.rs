//! Typed flags and exact finite-size flag-algebra arithmetic.
//!
//! Products count *ordered disjoint* extension pairs, so every expansion
//! here is an exact identity on the host size it is evaluated at, not an
//! asymptotic approximation. Averaging over a type ranges over all
//! injective placements of the type's labels; placements that do not
//! induce the type contribute zero.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::{binomial_u64, int, ratio_of, Rational};
use crate::error::{Error, Result};
use crate::hypergraph::{
    apply_slot_map, density_profile, perm_table, CanonicalCode, Catalog, ClassFilter, Hypergraph,
    MAX_VERTICES,
};
use crate::parallel::{map_slice, Exec};

/// A fully labelled hypergraph; labels `0..s-1` are part of its identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TypeSigma {
    graph: Hypergraph,
}

impl TypeSigma {
    pub fn new(graph: Hypergraph) -> Self {
        TypeSigma { graph }
    }

    /// `P_s`: `s` labelled vertices, no edges.
    pub fn empty(s: usize, k: usize) -> Result<Self> {
        Ok(TypeSigma::new(Hypergraph::empty(s, k)?))
    }

    /// `T_s`: `s` labelled vertices, every `k`-set an edge.
    pub fn complete(s: usize, k: usize) -> Result<Self> {
        Ok(TypeSigma::new(Hypergraph::complete(s, k)?))
    }

    pub fn size(&self) -> usize {
        self.graph.n()
    }

    pub fn k(&self) -> usize {
        self.graph.k()
    }

    pub fn graph(&self) -> &Hypergraph {
        &self.graph
    }
}

/// A hypergraph with an ordered injection of type labels into its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    host: Hypergraph,
    type_map: Vec<u8>,
    sigma: TypeSigma,
    /// Host relabelled so the type sits on `0..s-1`, free vertices after.
    normal: Hypergraph,
    code: u128,
}

const SIDE: usize = MAX_VERTICES + 1;
static PREFIX_FIXING: [[OnceLock<usize>; SIDE]; SIDE] = [const { [const { OnceLock::new() }; SIDE] }; SIDE];

/// Number of leading entries of the lexicographic permutation table that
/// fix `0..s-1` pointwise, i.e. `(t - s)!`.
fn prefix_fixing_count(t: usize, s: usize) -> usize {
    *PREFIX_FIXING[t][s].get_or_init(|| (1..=t - s).product())
}

/// Minimum mask over relabellings of the untyped vertices `s..t-1`.
fn typed_code(normal: &Hypergraph, s: usize) -> u128 {
    let table = perm_table(normal.n(), normal.k());
    (0..prefix_fixing_count(normal.n(), s))
        .map(|i| apply_slot_map(normal.mask(), table.map(i)))
        .min()
        .expect("identity permutation is always present")
}

impl Flag {
    pub fn new(host: Hypergraph, type_map: Vec<u8>, sigma: TypeSigma) -> Result<Self> {
        let s = sigma.size();
        if host.k() != sigma.k() {
            return Err(Error::InvalidFlag(format!(
                "host is a {}-graph but the type is a {}-graph",
                host.k(),
                sigma.k()
            )));
        }
        if type_map.len() != s || s > host.n() {
            return Err(Error::InvalidFlag(format!(
                "type map {type_map:?} does not place {s} labels into {} vertices",
                host.n()
            )));
        }
        if !type_map.iter().all_unique() || type_map.iter().any(|&v| v as usize >= host.n()) {
            return Err(Error::InvalidFlag(format!("type map {type_map:?} is not injective into V(host)")));
        }
        if host.relabel(&type_map) != *sigma.graph() {
            return Err(Error::InvalidFlag(format!(
                "host restricted to {type_map:?} is {:?}, not the type {:?}",
                host.relabel(&type_map),
                sigma.graph()
            )));
        }
        let mut order = type_map.clone();
        order.extend((0..host.n() as u8).filter(|v| !type_map.contains(v)));
        let normal = host.relabel(&order);
        let code = typed_code(&normal, s);
        Ok(Flag {
            host,
            type_map,
            sigma,
            normal,
            code,
        })
    }

    /// Flag whose type occupies vertices `0..s-1` of `host`.
    pub fn with_leading_type(host: Hypergraph, sigma: TypeSigma) -> Result<Self> {
        let map = (0..sigma.size() as u8).collect();
        Flag::new(host, map, sigma)
    }

    pub fn host(&self) -> &Hypergraph {
        &self.host
    }

    pub fn type_map(&self) -> &[u8] {
        &self.type_map
    }

    pub fn sigma(&self) -> &TypeSigma {
        &self.sigma
    }

    pub fn size(&self) -> usize {
        self.host.n()
    }

    pub fn free_size(&self) -> usize {
        self.size() - self.sigma.size()
    }

    /// Typed isomorphism: type vertices fixed pointwise, free vertices
    /// permuted.
    pub fn is_isomorphic(&self, other: &Flag) -> bool {
        self.sigma == other.sigma && self.size() == other.size() && self.code == other.code
    }

    fn matches(&self, host: &Hypergraph, theta: &[u8], extension: &[u8]) -> bool {
        let order: Vec<u8> = theta.iter().chain(extension).copied().collect();
        let candidate = host.relabel(&order);
        typed_code(&candidate, theta.len()) == self.code
    }
}

/// All injective label placements `theta` with `H` restricted to
/// `theta(0..s-1)`, read in label order, equal to `sigma`.
pub fn type_embeddings(sigma: &TypeSigma, host: &Hypergraph) -> Vec<Vec<u8>> {
    if sigma.size() > host.n() || sigma.k() != host.k() {
        return Vec::new();
    }
    (0..host.n() as u8)
        .permutations(sigma.size())
        .filter(|theta| host.relabel(theta) == *sigma.graph())
        .collect()
}

fn free_vertices(host: &Hypergraph, theta: &[u8]) -> Vec<u8> {
    (0..host.n() as u8).filter(|v| !theta.contains(v)).collect()
}

fn vertex_set(vs: &[u8]) -> u8 {
    vs.iter().fold(0u8, |acc, &v| acc | 1 << v)
}

/// Probability that a uniformly random `t - s` extension of `theta` spans
/// a copy of `F`.
pub fn flag_density(flag: &Flag, host: &Hypergraph, theta: &[u8]) -> Result<Rational> {
    let free = free_vertices(host, theta);
    let a = flag.free_size();
    if a > free.len() {
        return Err(Error::SizeMismatch(format!(
            "flag needs {a} free vertices, host leaves {}",
            free.len()
        )));
    }
    let hits = free
        .iter()
        .copied()
        .combinations(a)
        .filter(|ext| flag.matches(host, theta, ext))
        .count() as u64;
    Ok(ratio_of(hits, binomial_u64(free.len() as u64, a as u64)))
}

/// Probability over a uniformly random ordered pair of disjoint extensions
/// `(Sa, Sb)` of `theta` that `(Sa, theta) ~ Fa` and `(Sb, theta) ~ Fb`.
pub fn pair_density(fa: &Flag, fb: &Flag, host: &Hypergraph, theta: &[u8]) -> Result<Rational> {
    if fa.sigma != fb.sigma {
        return Err(Error::InvalidFlag("pair density needs a shared type".into()));
    }
    let free = free_vertices(host, theta);
    let (a, b) = (fa.free_size(), fb.free_size());
    if a + b > free.len() {
        return Err(Error::SizeMismatch(format!(
            "flags need {} free vertices, host leaves {}",
            a + b,
            free.len()
        )));
    }
    let left: Vec<u8> = free
        .iter()
        .copied()
        .combinations(a)
        .filter(|ext| fa.matches(host, theta, ext))
        .map(|ext| vertex_set(&ext))
        .collect();
    let right: Vec<u8> = free
        .iter()
        .copied()
        .combinations(b)
        .filter(|ext| fb.matches(host, theta, ext))
        .map(|ext| vertex_set(&ext))
        .collect();
    let hits = left
        .iter()
        .map(|&x| right.iter().filter(|&&y| x & y == 0).count() as u64)
        .sum::<u64>();
    let pairs = binomial_u64(free.len() as u64, a as u64)
        * binomial_u64((free.len() - a) as u64, b as u64);
    Ok(ratio_of(hits, pairs))
}

/// Integer tallies over all embeddings of the type into one host.
struct ExtensionCounts {
    /// Number of injective `s`-tuples.
    injections: u64,
    embeddings: u64,
    singles: Vec<u64>,
    pairs: Vec<Vec<u64>>,
    /// Extensions per placement, `C(f, a)`.
    single_norm: u64,
    /// Ordered disjoint extension pairs per placement, `C(f, a) C(f-a, a)`.
    pair_norm: u64,
}

fn common_shape(sigma: &TypeSigma, flags: &[&Flag]) -> Result<usize> {
    let t = flags.first().map_or(sigma.size(), |f| f.size());
    for f in flags {
        if f.sigma != *sigma {
            return Err(Error::InvalidFlag("all flags must share the averaging type".into()));
        }
        if f.size() != t {
            return Err(Error::InvalidFlag("all flags must have the same size".into()));
        }
    }
    Ok(t)
}

fn count_extensions(
    sigma: &TypeSigma,
    flags: &[&Flag],
    host: &Hypergraph,
    with_pairs: bool,
) -> Result<ExtensionCounts> {
    let t = common_shape(sigma, flags)?;
    let s = sigma.size();
    let a = t - s;
    let needed = if with_pairs { s + 2 * a } else { t };
    if host.n() < needed || host.k() != sigma.k() {
        return Err(Error::SizeMismatch(format!(
            "a {}-vertex host cannot carry {needed}-vertex configurations",
            host.n()
        )));
    }
    let f = host.n() - s;
    let mut counts = ExtensionCounts {
        injections: (0..s as u64).map(|i| host.n() as u64 - i).product(),
        embeddings: 0,
        singles: vec![0; flags.len()],
        pairs: vec![vec![0; flags.len()]; flags.len()],
        single_norm: binomial_u64(f as u64, a as u64),
        pair_norm: binomial_u64(f as u64, a as u64) * binomial_u64((f - a) as u64, a as u64),
    };
    for theta in type_embeddings(sigma, host) {
        counts.embeddings += 1;
        if flags.is_empty() {
            continue;
        }
        let free = free_vertices(host, &theta);
        let matched: Vec<(u8, Vec<usize>)> = free
            .iter()
            .copied()
            .combinations(a)
            .filter_map(|ext| {
                let hits: Vec<usize> = flags
                    .iter()
                    .enumerate()
                    .filter(|(_, fl)| fl.matches(host, &theta, &ext))
                    .map(|(i, _)| i)
                    .collect();
                (!hits.is_empty()).then(|| (vertex_set(&ext), hits))
            })
            .collect();
        for (_, hits) in &matched {
            for &i in hits {
                counts.singles[i] += 1;
            }
        }
        if with_pairs {
            for (x, hx) in &matched {
                for (y, hy) in &matched {
                    if x & y != 0 {
                        continue;
                    }
                    for &i in hx {
                        for &j in hy {
                            counts.pairs[i][j] += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(counts)
}

/// `[[ sum_i a_i F_i ]]_sigma` evaluated directly on `host`.
pub fn average_density(sigma: &TypeSigma, terms: &[(Rational, Flag)], host: &Hypergraph) -> Result<Rational> {
    let flags: Vec<&Flag> = terms.iter().map(|(_, f)| f).collect();
    let c = count_extensions(sigma, &flags, host, false)?;
    let mut acc = Rational::zero();
    for (i, (coef, _)) in terms.iter().enumerate() {
        acc += coef * ratio_of(c.singles[i], c.single_norm);
    }
    Ok(acc / Rational::from_integer(BigInt::from(c.injections)))
}

/// `[[ (sum_i a_i F_i - c sigma)^2 ]]_sigma`: a single square in the
/// averaging argument of a sum-of-squares certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagSquare {
    pub sigma: TypeSigma,
    pub terms: Vec<(Rational, Flag)>,
    pub constant: Rational,
}

impl FlagSquare {
    pub fn new(sigma: TypeSigma, terms: Vec<(Rational, Flag)>, constant: Rational) -> Result<Self> {
        let flags: Vec<&Flag> = terms.iter().map(|(_, f)| f).collect();
        common_shape(&sigma, &flags)?;
        Ok(FlagSquare {
            sigma,
            terms,
            constant,
        })
    }

    pub fn k(&self) -> usize {
        self.sigma.k()
    }

    /// Smallest host size on which the product is defined: `2t - s`.
    pub fn natural_size(&self) -> usize {
        let s = self.sigma.size();
        match self.terms.first() {
            Some((_, f)) => 2 * f.size() - s,
            None => s,
        }
    }

    /// Exact value on one host of size at least [`Self::natural_size`].
    pub fn density_at(&self, host: &Hypergraph) -> Result<Rational> {
        let flags: Vec<&Flag> = self.terms.iter().map(|(_, f)| f).collect();
        let c = count_extensions(&self.sigma, &flags, host, true)?;
        let mut value = Rational::zero();
        if !flags.is_empty() {
            let mut pair_sum = Rational::zero();
            let mut single_sum = Rational::zero();
            for (i, (ai, _)) in self.terms.iter().enumerate() {
                single_sum += ai * Rational::from_integer(BigInt::from(c.singles[i]));
                for (j, (aj, _)) in self.terms.iter().enumerate() {
                    pair_sum += ai * aj * Rational::from_integer(BigInt::from(c.pairs[i][j]));
                }
            }
            value += pair_sum / Rational::from_integer(BigInt::from(c.pair_norm));
            value -= int(2) * &self.constant * single_sum
                / Rational::from_integer(BigInt::from(c.single_norm));
        }
        value += &self.constant * &self.constant * Rational::from_integer(BigInt::from(c.embeddings));
        Ok(value / Rational::from_integer(BigInt::from(c.injections)))
    }

    /// Coefficients over the classes of `target`: computed on all classes of
    /// the natural size, then lifted with the chain rule.
    pub fn expansion(&self, target: &Catalog) -> Result<ExpansionVector> {
        self.expansion_with(Exec::default(), target)
    }

    pub fn expansion_with(&self, exec: Exec, target: &Catalog) -> Result<ExpansionVector> {
        let natural = self.natural_size();
        if target.k() != self.k() || natural > target.n() {
            return Err(Error::SizeMismatch(format!(
                "square needs hosts of size {natural}, target catalog has size {}",
                target.n()
            )));
        }
        if natural == target.n() {
            return ExpansionVector::from_fn(exec, target, |h| self.density_at(h));
        }
        let base = Catalog::with_exec(exec, natural, self.k(), ClassFilter::None)?;
        let small = ExpansionVector::from_fn(exec, &base, |h| self.density_at(h))?;
        chain_lift_with(exec, &small, target)
    }
}

/// `[[ sum_i a_i F_i ]]_sigma` as coefficients over `target` (computed at
/// the flags' size, then lifted).
pub fn average_expansion(sigma: &TypeSigma, terms: &[(Rational, Flag)], target: &Catalog) -> Result<ExpansionVector> {
    let flags: Vec<&Flag> = terms.iter().map(|(_, f)| f).collect();
    let t = common_shape(sigma, &flags)?;
    if target.k() != sigma.k() || t > target.n() {
        return Err(Error::SizeMismatch(format!(
            "average needs hosts of size {t}, target catalog has size {}",
            target.n()
        )));
    }
    if t == target.n() {
        return ExpansionVector::from_fn(Exec::default(), target, |h| average_density(sigma, terms, h));
    }
    let base = Catalog::new(t, sigma.k(), ClassFilter::None)?;
    let small = ExpansionVector::from_fn(Exec::default(), &base, |h| average_density(sigma, terms, h))?;
    chain_lift(&small, target)
}

/// A linear combination of untyped `N`-vertex classes, keyed by canonical
/// code. Missing classes have coefficient zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionVector {
    pub k: usize,
    pub size: usize,
    pub coeffs: BTreeMap<CanonicalCode, Rational>,
}

impl ExpansionVector {
    pub fn from_fn<F>(exec: Exec, catalog: &Catalog, f: F) -> Result<Self>
    where
        F: Fn(&Hypergraph) -> Result<Rational> + Sync + Send,
    {
        let values = map_slice(exec, catalog.graphs(), |h| f(h));
        let coeffs = catalog
            .codes()
            .zip(values)
            .map(|(code, v)| v.map(|v| (code, v)))
            .collect::<Result<_>>()?;
        Ok(ExpansionVector {
            k: catalog.k(),
            size: catalog.n(),
            coeffs,
        })
    }

    /// Single class with coefficient one.
    pub fn indicator(h: &Hypergraph) -> Self {
        ExpansionVector {
            k: h.k(),
            size: h.n(),
            coeffs: BTreeMap::from([(h.canonical(), Rational::one())]),
        }
    }

    pub fn get(&self, code: &CanonicalCode) -> Rational {
        self.coeffs.get(code).cloned().unwrap_or_else(Rational::zero)
    }

    /// `sum_H coeff(H) d(H, G)` for a host with at least `size` vertices.
    pub fn evaluate(&self, g: &Hypergraph) -> Result<Rational> {
        let profile = density_profile(g, self.size)?;
        Ok(self
            .coeffs
            .iter()
            .fold(Rational::zero(), |acc, (code, c)| acc + c * profile.density(code)))
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        ExpansionVector {
            coeffs: self.coeffs.iter().map(|(c, v)| (*c, v * factor)).collect(),
            ..self.clone()
        }
    }
}

/// Re-expresses `v` over the classes of `target` via
/// `d(F, G) = sum_{H in H_N} d(F, H) d(H, G)`.
pub fn chain_lift(v: &ExpansionVector, target: &Catalog) -> Result<ExpansionVector> {
    chain_lift_with(Exec::default(), v, target)
}

pub fn chain_lift_with(exec: Exec, v: &ExpansionVector, target: &Catalog) -> Result<ExpansionVector> {
    if v.k != target.k() || v.size > target.n() {
        return Err(Error::SizeMismatch(format!(
            "cannot lift size-{} expansion to size {}",
            v.size,
            target.n()
        )));
    }
    ExpansionVector::from_fn(exec, target, |h| v.evaluate(h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::rat;
    use crate::hypergraph::s_statistic;

    fn e3_p1() -> Flag {
        Flag::with_leading_type(Hypergraph::empty(3, 3).unwrap(), TypeSigma::empty(1, 3).unwrap()).unwrap()
    }

    fn two_triangles() -> Hypergraph {
        let k3 = Hypergraph::complete(3, 3).unwrap();
        k3.disjoint_union(&k3).unwrap()
    }

    #[test]
    fn lexicographic_block_fixes_prefix() {
        let table = perm_table(5, 3);
        for i in 0..prefix_fixing_count(5, 3) {
            assert_eq!(&table.perms[i][..3], &[0, 1, 2]);
        }
        assert_ne!(&table.perms[prefix_fixing_count(5, 3)][..3], &[0, 1, 2]);
    }

    #[test]
    fn flag_validation() {
        let p2 = TypeSigma::empty(2, 3).unwrap();
        let host = Hypergraph::from_edges(4, 3, &[&[0, 1, 2]]).unwrap();
        // labels on {0,1}: (0,1,x) triples are outside the type, fine.
        assert!(Flag::new(host, vec![0, 1], p2).is_ok());
        assert!(Flag::new(host, vec![0, 0], p2).is_err());
        assert!(Flag::new(host, vec![0, 4], p2).is_err());
        let p3 = TypeSigma::empty(3, 3).unwrap();
        assert!(Flag::new(host, vec![0, 1, 2], p3).is_err());
        assert!(Flag::new(host, vec![0, 1, 3], p3).is_ok());
    }

    #[test]
    fn typed_isomorphism_respects_labels() {
        let p2 = TypeSigma::empty(2, 3).unwrap();
        let la = Flag::with_leading_type(Hypergraph::from_edges(4, 3, &[&[0, 2, 3]]).unwrap(), p2).unwrap();
        let lb = Flag::with_leading_type(Hypergraph::from_edges(4, 3, &[&[1, 2, 3]]).unwrap(), p2).unwrap();
        assert!(!la.is_isomorphic(&lb));
        assert!(la.host().is_isomorphic(lb.host()));
        // the same flag with labels swapped is L_b
        let swapped = Flag::new(*la.host(), vec![1, 0], p2).unwrap();
        assert!(swapped.is_isomorphic(&lb));
    }

    #[test]
    fn embedding_counts() {
        let p1 = TypeSigma::empty(1, 3).unwrap();
        let g = two_triangles();
        assert_eq!(type_embeddings(&p1, &g).len(), 6);
        let p3 = TypeSigma::empty(3, 3).unwrap();
        assert!(type_embeddings(&p3, &Hypergraph::complete(6, 3).unwrap()).is_empty());

        let q4 = TypeSigma::new(Hypergraph::from_edges(4, 3, &[&[0, 1, 2]]).unwrap());
        let brute = (0..6u8)
            .permutations(4)
            .filter(|t| {
                let edge = |a: u8, b: u8, c: u8| g.has_edge(1 << a | 1 << b | 1 << c);
                edge(t[0], t[1], t[2])
                    && !edge(t[0], t[1], t[3])
                    && !edge(t[0], t[2], t[3])
                    && !edge(t[1], t[2], t[3])
            })
            .count();
        assert_eq!(type_embeddings(&q4, &g).len(), brute);
        assert_eq!(brute, 36);
    }

    #[test]
    fn pair_density_extremes() {
        let f = e3_p1();
        let e6 = Hypergraph::empty(6, 3).unwrap();
        let k6 = Hypergraph::complete(6, 3).unwrap();
        for v in 0..6u8 {
            assert_eq!(pair_density(&f, &f, &e6, &[v]).unwrap(), int(1));
            assert_eq!(pair_density(&f, &f, &k6, &[v]).unwrap(), int(0));
        }
        let small = Hypergraph::empty(4, 3).unwrap();
        assert!(pair_density(&f, &f, &small, &[0]).is_err());
    }

    #[test]
    fn pair_density_matches_brute_force() {
        let f = e3_p1();
        let g = two_triangles();
        // theta = 0: free {1..5}; E3 extensions {a,b} with {0,a,b} not an edge.
        let free: Vec<u8> = (1..6).collect();
        let ok = |p: &[u8]| !g.has_edge(1 | 1 << p[0] | 1 << p[1]);
        let mut hits = 0;
        let mut total = 0;
        for a in free.iter().copied().combinations(2) {
            for b in free.iter().copied().combinations(2) {
                if a.iter().any(|v| b.contains(v)) {
                    continue;
                }
                total += 1;
                if ok(&a) && ok(&b) {
                    hits += 1;
                }
            }
        }
        assert_eq!(pair_density(&f, &f, &g, &[0]).unwrap(), ratio_of(hits, total));
    }

    #[test]
    fn square_at_extreme_hosts() {
        let p1 = TypeSigma::empty(1, 3).unwrap();
        let sq = FlagSquare::new(p1, vec![(int(1), e3_p1())], rat(3, 4)).unwrap();
        assert_eq!(sq.natural_size(), 5);
        assert_eq!(sq.density_at(&Hypergraph::complete(6, 3).unwrap()).unwrap(), rat(9, 16));
        assert_eq!(sq.density_at(&Hypergraph::empty(6, 3).unwrap()).unwrap(), rat(1, 16));
    }

    #[test]
    fn unit_law() {
        let p1 = TypeSigma::empty(1, 3).unwrap();
        let sq = FlagSquare::new(p1, vec![], rat(2, 5)).unwrap();
        let cat = Catalog::new(5, 3, ClassFilter::None).unwrap();
        let v = sq.expansion(&cat).unwrap();
        assert!(v.coeffs.values().all(|c| *c == rat(4, 25)));

        let p3 = TypeSigma::empty(3, 3).unwrap();
        let sq = FlagSquare::new(p3, vec![], rat(1, 2)).unwrap();
        for h in cat.graphs() {
            let frac = ratio_of(type_embeddings(&p3, h).len() as u64, 60);
            assert_eq!(sq.density_at(h).unwrap(), rat(1, 4) * frac);
        }
    }

    #[test]
    fn averaging_complete_flag_gives_clique() {
        for m in 3..=4usize {
            let t = TypeSigma::complete(m - 1, 3).unwrap();
            let km = Flag::with_leading_type(Hypergraph::complete(m, 3).unwrap(), t).unwrap();
            let cat = Catalog::new(m, 3, ClassFilter::None).unwrap();
            let v = average_expansion(&t, &[(int(1), km)], &cat).unwrap();
            for (code, c) in &v.coeffs {
                let expected = if code.hypergraph().is_complete() { int(1) } else { int(0) };
                assert_eq!(*c, expected);
            }
        }
    }

    #[test]
    fn square_of_complete_flag_counts_pairs_in_common_non_edges() {
        let m = 4usize;
        let t = TypeSigma::complete(m - 1, 3).unwrap();
        let km = Flag::with_leading_type(Hypergraph::complete(m, 3).unwrap(), t).unwrap();
        let sq = FlagSquare::new(t, vec![(int(1), km)], int(0)).unwrap();
        let cat = Catalog::new(m + 1, 3, ClassFilter::None).unwrap();
        let v = sq.expansion(&cat).unwrap();
        for h in cat.graphs() {
            let s = s_statistic(h) as u64;
            let expected = ratio_of(binomial_u64(s, 2), binomial_u64(m as u64 + 1, 2));
            assert_eq!(v.get(&h.canonical()), expected);
        }
    }

    #[test]
    fn lift_of_indicator_is_density() {
        let e4 = Hypergraph::empty(4, 3).unwrap();
        let v = ExpansionVector::indicator(&e4);
        let cat = Catalog::new(6, 3, ClassFilter::NoEmptySet(5)).unwrap();
        let lifted = chain_lift(&v, &cat).unwrap();
        for h in cat.graphs().iter().step_by(97) {
            assert_eq!(
                lifted.get(&h.canonical()),
                crate::hypergraph::induced_density(&e4, h, true).unwrap()
            );
        }
    }
}
