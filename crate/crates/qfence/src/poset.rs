//! Finite posets on bitmask-indexed nodes, compositions describing fences,
//! and the brute-force order-ideal oracle.
//!
//! The oracle is the ground truth everything else in the crate is checked
//! against: `rank_poly` counts order ideals by size with the recursion
//!
//! ```text
//! Z(S) = Z(S \ up(v))  +  q^|down(v) ∩ S| * Z(S \ down(v)),   v = min(S)
//! ```
//!
//! (ideals avoiding `v`, plus ideals containing `v` and hence all of
//! `down(v)`), memoized on the remaining node set. It works verbatim on
//! preorders — reachability masks may contain two-sided pairs — which is how
//! degenerate closures of circular fences are counted.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::qpoly::LaurentPoly;

/// Hard cap imposed by the `u32` node-set representation.
const MASK_LIMIT: usize = 32;

/// Default node cap for the exponential-state oracle.
pub const DEFAULT_NODE_LIMIT: usize = 24;

/// A composition of a positive integer: the run lengths of a fence.
///
/// Interior parts are always >= 1. A zero *first* or *last* part is allowed;
/// those encode the empty-boundary-run conventions used by the oriented and
/// fence modules (for example the composition attached to the rational 2/1).
/// Constructors of plain posets reject zero parts outright.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidComposition("no parts".into()));
        }
        let last = parts.len() - 1;
        for (i, &p) in parts.iter().enumerate() {
            if p == 0 && i != 0 && i != last {
                return Err(Error::InvalidComposition(format!(
                    "interior part {} (position {}) is zero",
                    p,
                    i + 1
                )));
            }
        }
        Ok(Composition { parts })
    }

    /// Like [`Composition::new`] but zero parts are rejected everywhere.
    pub fn strict(parts: Vec<u32>) -> Result<Self> {
        let c = Composition::new(parts)?;
        if c.parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidComposition(
                "zero part not allowed here".into(),
            ));
        }
        Ok(c)
    }

    /// Parses `"2,1,1,3"`, optionally parenthesized, with power shorthand:
    /// `"3,1^4"` means `3,1,1,1,1`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(s);
        if s.trim().is_empty() {
            return Err(Error::Parse("empty composition".into()));
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let (base, reps) = match tok.split_once('^') {
                Some((b, e)) => {
                    let reps: usize = e
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?;
                    (b.trim(), reps)
                }
                None => (tok, 1),
            };
            let val: u32 = base
                .parse()
                .map_err(|_| Error::Parse(format!("bad part `{tok}`")))?;
            parts.extend(std::iter::repeat(val).take(reps));
        }
        Composition::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false // the constructor rejects empty part lists
    }

    /// Sum of the parts (the number of cover relations of the fence).
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn reversed(&self) -> Self {
        let mut parts = self.parts.clone();
        parts.reverse();
        Composition { parts }
    }

    pub fn is_palindromic(&self) -> bool {
        let n = self.parts.len();
        (0..n / 2).all(|i| self.parts[i] == self.parts[n - 1 - i])
    }

    /// Cyclic left rotation by `k` parts.
    pub fn rotated_left(&self, k: usize) -> Self {
        let n = self.parts.len();
        let k = k % n;
        let mut parts = Vec::with_capacity(n);
        parts.extend_from_slice(&self.parts[k..]);
        parts.extend_from_slice(&self.parts[..k]);
        Composition { parts }
    }

    /// The composition with `n` added to its leftmost part.
    pub fn add_to_first(&self, n: u32) -> Self {
        let mut parts = self.parts.clone();
        parts[0] += n;
        Composition { parts }
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

/// Reflexive reachability masks of a relation on `n <= 32` nodes.
///
/// `below[v]` holds every `u` with `u <= v` (including `v`); `above[v]` the
/// dual. For a poset the two intersect only in `{v}`; a preorder may have
/// genuinely two-sided pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Reach {
    n: usize,
    below: Vec<u32>,
    above: Vec<u32>,
}

impl Reach {
    /// Transitive-reflexive closure of the given directed edges
    /// (`(lo, hi)` meaning `lo <= hi`).
    fn closure(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MASK_LIMIT {
            return Err(Error::TooLarge {
                what: "poset nodes",
                got: n,
                limit: MASK_LIMIT,
            });
        }
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidParams(format!(
                    "relation ({a}, {b}) out of range for {n} nodes"
                )));
            }
        }
        // above[v] as adjacency rows, saturated by iterating until fixpoint.
        let mut above: Vec<u32> = (0..n).map(|v| 1u32 << v).collect();
        for &(lo, hi) in edges {
            above[lo] |= 1 << hi;
        }
        let mut changed = true;
        while changed {
            changed = false;
            for v in 0..n {
                let mut row = above[v];
                let mut todo = row;
                while todo != 0 {
                    let w = todo.trailing_zeros() as usize;
                    todo &= todo - 1;
                    row |= above[w];
                }
                if row != above[v] {
                    above[v] = row;
                    changed = true;
                }
            }
        }
        let mut below = vec![0u32; n];
        for v in 0..n {
            let mut row = above[v];
            while row != 0 {
                let w = row.trailing_zeros() as usize;
                row &= row - 1;
                below[w] |= 1 << v;
            }
        }
        Ok(Reach { n, below, above })
    }

    fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|v| self.below[v] & self.above[v] == 1 << v)
    }

    fn full_mask(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }
}

/// Memoized ideal-counting DP over a fixed reachability structure.
struct IdealDp<'a> {
    reach: &'a Reach,
    memo: HashMap<u32, LaurentPoly>,
}

impl<'a> IdealDp<'a> {
    fn new(reach: &'a Reach) -> Self {
        IdealDp {
            reach,
            memo: HashMap::new(),
        }
    }

    /// Ideal-size generating polynomial of the subposet induced on `set`.
    fn poly(&mut self, set: u32) -> LaurentPoly {
        if set == 0 {
            return LaurentPoly::one();
        }
        if let Some(p) = self.memo.get(&set) {
            return p.clone();
        }
        let v = set.trailing_zeros() as usize;
        let up = self.reach.above[v] & set;
        let down = self.reach.below[v] & set;
        let without = self.poly(set & !up);
        let with = self.poly(set & !down).shifted(down.count_ones() as i64);
        let res = &without + &with;
        self.memo.insert(set, res.clone());
        res
    }
}

fn rank_poly_of_reach(reach: &Reach, limit: usize) -> Result<LaurentPoly> {
    if reach.n > limit {
        return Err(Error::TooLarge {
            what: "poset nodes",
            got: reach.n,
            limit,
        });
    }
    Ok(IdealDp::new(reach).poly(reach.full_mask()))
}

/// Counts ideals subject to membership constraints: every node of
/// `forced_out` must be absent, every node of `forced_in` present. Ideal
/// sizes are measured in the full poset. This is the primitive behind rank
/// matrices.
fn restricted_rank_poly_of_reach(
    reach: &Reach,
    forced_in: u32,
    forced_out: u32,
    limit: usize,
) -> Result<LaurentPoly> {
    if reach.n > limit {
        return Err(Error::TooLarge {
            what: "poset nodes",
            got: reach.n,
            limit,
        });
    }
    let mut set = reach.full_mask();
    let mut out = forced_out;
    while out != 0 {
        let v = out.trailing_zeros() as usize;
        out &= out - 1;
        set &= !reach.above[v]; // nothing above an excluded node can enter
    }
    if forced_in & !set != 0 {
        // A required node sits above an excluded one: no such ideal.
        return Ok(LaurentPoly::zero());
    }
    let mut seed = 0u32;
    let mut inn = forced_in;
    while inn != 0 {
        let v = inn.trailing_zeros() as usize;
        inn &= inn - 1;
        seed |= reach.below[v] & set;
    }
    Ok(IdealDp::new(reach)
        .poly(set & !seed)
        .shifted(seed.count_ones() as i64))
}

/// Enumerates every ideal (as a node bitmask) of the subposet on `set`.
fn enum_ideals(reach: &Reach, set: u32, acc: u32, out: &mut Vec<u32>) {
    if set == 0 {
        out.push(acc);
        return;
    }
    let v = set.trailing_zeros() as usize;
    let up = reach.above[v] & set;
    let down = reach.below[v] & set;
    enum_ideals(reach, set & !up, acc, out);
    enum_ideals(reach, set & !down, acc | down, out);
}

/// A finite partial order on nodes `0..n`, `n <= 32`.
#[derive(Clone, Debug)]
pub struct FinitePoset {
    relations: Vec<(usize, usize)>,
    reach: Reach,
}

impl FinitePoset {
    /// Builds a poset from generating relations `(lo, hi)` meaning
    /// `lo <= hi`. Fails with [`Error::NotAPoset`] if the relations force a
    /// cycle through distinct nodes.
    pub fn new(n: usize, relations: Vec<(usize, usize)>) -> Result<Self> {
        let reach = Reach::closure(n, &relations)?;
        if !reach.is_antisymmetric() {
            let witness = (0..n)
                .find(|&v| reach.below[v] & reach.above[v] != 1 << v)
                .unwrap();
            return Err(Error::NotAPoset(format!(
                "node {witness} lies on a cycle"
            )));
        }
        let mut relations = relations;
        relations.sort_unstable();
        relations.dedup();
        Ok(FinitePoset { relations, reach })
    }

    /// The antichain on `n` nodes.
    pub fn antichain(n: usize) -> Result<Self> {
        FinitePoset::new(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.reach.n
    }

    /// The generating relations as supplied (sorted, deduplicated).
    pub fn relations(&self) -> &[(usize, usize)] {
        &self.relations
    }

    /// True when `i <= j` in the order.
    pub fn le(&self, i: usize, j: usize) -> bool {
        i < self.n() && j < self.n() && self.reach.below[j] >> i & 1 == 1
    }

    /// Mask of `{u : u <= v}`, including `v`.
    pub fn down_mask(&self, v: usize) -> u32 {
        self.reach.below[v]
    }

    /// Mask of `{u : v <= u}`, including `v`.
    pub fn up_mask(&self, v: usize) -> u32 {
        self.reach.above[v]
    }

    /// The order dual: all relations reversed.
    pub fn flipped(&self) -> Self {
        let relations: Vec<(usize, usize)> =
            self.relations.iter().map(|&(a, b)| (b, a)).collect();
        FinitePoset::new(self.n(), relations).expect("dual of a poset is a poset")
    }

    /// Ideal-size generating polynomial, with the default node cap.
    pub fn rank_poly(&self) -> Result<LaurentPoly> {
        self.rank_poly_bounded(DEFAULT_NODE_LIMIT)
    }

    /// Ideal-size generating polynomial with an explicit node cap.
    pub fn rank_poly_bounded(&self, limit: usize) -> Result<LaurentPoly> {
        rank_poly_of_reach(&self.reach, limit)
    }

    /// Ideal counting restricted by forced memberships (see module docs).
    /// `forced_in`/`forced_out` are node lists; a node required on both
    /// sides yields zero.
    pub fn restricted_rank_poly(
        &self,
        forced_in: &[usize],
        forced_out: &[usize],
    ) -> Result<LaurentPoly> {
        let mut inn = 0u32;
        let mut out = 0u32;
        for &v in forced_in {
            if v >= self.n() {
                return Err(Error::InvalidParams(format!("node {v} out of range")));
            }
            inn |= 1 << v;
        }
        for &v in forced_out {
            if v >= self.n() {
                return Err(Error::InvalidParams(format!("node {v} out of range")));
            }
            out |= 1 << v;
        }
        if inn & out != 0 {
            return Ok(LaurentPoly::zero());
        }
        restricted_rank_poly_of_reach(&self.reach, inn, out, DEFAULT_NODE_LIMIT)
    }

    /// Every order ideal as a node bitmask, ascending.
    pub fn ideals(&self) -> Result<Vec<u32>> {
        if self.n() > DEFAULT_NODE_LIMIT {
            return Err(Error::TooLarge {
                what: "poset nodes",
                got: self.n(),
                limit: DEFAULT_NODE_LIMIT,
            });
        }
        let mut out = Vec::new();
        enum_ideals(&self.reach, self.reach.full_mask(), 0, &mut out);
        out.sort_unstable();
        out
            .windows(2)
            .all(|w| w[0] != w[1])
            .then_some(())
            .ok_or_else(|| Error::InternalMismatch("duplicate ideal enumerated".into()))?;
        Ok(out)
    }

    /// Adds the relation `lo <= hi` and transitively closes. Adding an
    /// already-implied relation returns the poset unchanged; adding the
    /// reverse of a strict relation does not fail but yields a preorder,
    /// reported as [`Closure::Degenerate`].
    pub fn with_relation(&self, lo: usize, hi: usize) -> Result<Closure> {
        self.with_relations(&[(lo, hi)])
    }

    /// Adds several relations at once (used by multi-interface closures).
    pub fn with_relations(&self, added: &[(usize, usize)]) -> Result<Closure> {
        for &(a, b) in added {
            if a >= self.n() || b >= self.n() {
                return Err(Error::InvalidParams(format!(
                    "relation ({a}, {b}) out of range for {} nodes",
                    self.n()
                )));
            }
        }
        if added.iter().all(|&(a, b)| self.le(a, b)) {
            return Ok(Closure::Poset(self.clone()));
        }
        let mut relations = self.relations.clone();
        relations.extend(added.iter().copied());
        let reach = Reach::closure(self.n(), &relations)?;
        if reach.is_antisymmetric() {
            relations.sort_unstable();
            relations.dedup();
            Ok(Closure::Poset(FinitePoset { relations, reach }))
        } else {
            Ok(Closure::Degenerate(Preorder { reach }))
        }
    }
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        // Equality of the orders themselves, not of the generating lists.
        self.reach == other.reach
    }
}

impl Eq for FinitePoset {}

/// A reflexive transitive relation that is not antisymmetric: the result of
/// closing a poset against one of its own strict relations. Its "ideals" are
/// the down-closed node sets of the relation; sizes count nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preorder {
    reach: Reach,
}

impl Preorder {
    pub fn n(&self) -> usize {
        self.reach.n
    }

    pub fn rank_poly(&self) -> Result<LaurentPoly> {
        rank_poly_of_reach(&self.reach, DEFAULT_NODE_LIMIT)
    }

    pub fn ideals(&self) -> Result<Vec<u32>> {
        let mut out = Vec::new();
        enum_ideals(&self.reach, self.reach.full_mask(), 0, &mut out);
        out.sort_unstable();
        Ok(out)
    }
}

/// Result of adding relations to a poset: either still a poset, or a
/// degenerate (preorder) closure. Both can count their down-closed sets, so
/// trace identities extend to the degenerate boundary cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Closure {
    Poset(FinitePoset),
    Degenerate(Preorder),
}

impl Closure {
    pub fn is_degenerate(&self) -> bool {
        matches!(self, Closure::Degenerate(_))
    }

    pub fn n(&self) -> usize {
        match self {
            Closure::Poset(p) => p.n(),
            Closure::Degenerate(p) => p.n(),
        }
    }

    pub fn rank_poly(&self) -> Result<LaurentPoly> {
        match self {
            Closure::Poset(p) => p.rank_poly(),
            Closure::Degenerate(p) => p.rank_poly(),
        }
    }

    pub fn ideals(&self) -> Result<Vec<u32>> {
        match self {
            Closure::Poset(p) => p.ideals(),
            Closure::Degenerate(p) => p.ideals(),
        }
    }
}

/// Cover edges of the fence with run lengths `parts` (first run ascending),
/// on `sum(parts) + 1` nodes. Zero boundary parts contribute no edges.
pub(crate) fn fence_edges(parts: &[u32]) -> (usize, Vec<(usize, usize)>) {
    let n = parts.iter().map(|&p| p as usize).sum::<usize>() + 1;
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut cur = 0usize;
    for (run, &len) in parts.iter().enumerate() {
        for _ in 0..len {
            if run % 2 == 0 {
                edges.push((cur, cur + 1));
            } else {
                edges.push((cur + 1, cur));
            }
            cur += 1;
        }
    }
    (n, edges)
}

/// The fence poset of a composition: runs of covers alternating upward /
/// downward, starting upward. `F(2,1,1,3)` has 8 nodes and relations
/// `x1<=x2<=x3, x4<=x3, x4<=x5, x6<=x5, x7<=x6, x8<=x7` (1-indexed).
pub fn fence(alpha: &Composition) -> Result<FinitePoset> {
    if alpha.parts().iter().any(|&p| p == 0) {
        return Err(Error::InvalidComposition(
            "fence posets need parts >= 1; zero-boundary forms exist only on the oriented side"
                .into(),
        ));
    }
    let (n, edges) = fence_edges(alpha.parts());
    FinitePoset::new(n, edges)
}

/// The circular fence: the fence of `alpha` (which must have an even number
/// of parts, all >= 1) with its last node identified with its first, giving
/// `sum(alpha)` nodes.
pub fn circular_fence(alpha: &Composition) -> Result<FinitePoset> {
    if alpha.len() % 2 != 0 {
        return Err(Error::OddLength { len: alpha.len() });
    }
    if alpha.parts().iter().any(|&p| p == 0) {
        return Err(Error::InvalidComposition(
            "circular fence posets need parts >= 1".into(),
        ));
    }
    let (n_linear, edges) = fence_edges(alpha.parts());
    let n = n_linear - 1;
    let wrap = |v: usize| if v == n { 0 } else { v };
    let mut edges: Vec<(usize, usize)> = edges
        .into_iter()
        .map(|(a, b)| (wrap(a), wrap(b)))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    FinitePoset::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::LaurentPoly;

    fn poly(coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_int_coeffs(0, coeffs)
    }

    fn comp(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn composition_validation() {
        assert!(Composition::new(vec![]).is_err());
        assert!(Composition::new(vec![2, 0, 3]).is_err());
        assert!(Composition::new(vec![0, 1]).is_ok());
        assert!(Composition::new(vec![3, 0]).is_ok());
        assert!(Composition::new(vec![0, 0]).is_ok());
        assert!(Composition::strict(vec![0, 1]).is_err());
    }

    #[test]
    fn composition_parsing() {
        assert_eq!(Composition::parse("2,1,1,3").unwrap(), comp(&[2, 1, 1, 3]));
        assert_eq!(Composition::parse("(2, 1, 1, 3)").unwrap(), comp(&[2, 1, 1, 3]));
        assert_eq!(
            Composition::parse("3,1^4").unwrap(),
            comp(&[3, 1, 1, 1, 1])
        );
        assert_eq!(Composition::parse("2^2,5").unwrap(), comp(&[2, 2, 5]));
        assert!(Composition::parse("").is_err());
        assert!(Composition::parse("2,x").is_err());
        assert!(Composition::parse("-1,2").is_err());
        assert_eq!(comp(&[2, 1, 1, 3]).to_string(), "2,1,1,3");
    }

    #[test]
    fn composition_helpers() {
        assert!(comp(&[1, 2, 2, 1]).is_palindromic());
        assert!(!comp(&[1, 2]).is_palindromic());
        assert_eq!(comp(&[1, 2, 3]).rotated_left(1), comp(&[2, 3, 1]));
        assert_eq!(comp(&[1, 2, 3]).add_to_first(2), comp(&[3, 2, 3]));
        assert_eq!(comp(&[2, 1, 1, 3]).size(), 7);
    }

    #[test]
    fn chain_rank_poly() {
        // A 3-chain has ideals of sizes 0..3.
        let chain = FinitePoset::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(chain.rank_poly().unwrap(), poly(&[1, 1, 1, 1]));
        assert!(chain.le(0, 2));
        assert!(!chain.le(2, 0));
        let anti = FinitePoset::antichain(3).unwrap();
        assert_eq!(anti.rank_poly().unwrap(), poly(&[1, 3, 3, 1]));
    }

    #[test]
    fn cycle_is_rejected() {
        let err = FinitePoset::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap_err();
        assert!(matches!(err, Error::NotAPoset(_)));
    }

    #[test]
    fn fence_structure_and_rank() {
        let f = fence(&comp(&[2, 1, 1, 3])).unwrap();
        assert_eq!(f.n(), 8);
        // 1-indexed in the docs; 0-indexed here.
        assert_eq!(
            f.relations(),
            &[
                (0, 1),
                (1, 2),
                (3, 2),
                (3, 4),
                (5, 4),
                (6, 5),
                (7, 6)
            ]
        );
        let rank = f.rank_poly().unwrap();
        assert_eq!(rank, poly(&[1, 3, 5, 6, 6, 5, 3, 2, 1]));
        assert_eq!(f.ideals().unwrap().len(), 32);
        // Flipping reverses the coefficient sequence.
        assert_eq!(f.flipped().rank_poly().unwrap(), rank.reversed());
    }

    #[test]
    fn circular_fence_structure_and_rank() {
        let cf = circular_fence(&comp(&[2, 1, 1, 3])).unwrap();
        assert_eq!(cf.n(), 7);
        let rank = cf.rank_poly().unwrap();
        // [5]_q * [4]_q restricted to the circular fence:
        assert_eq!(rank, poly(&[1, 2, 3, 4, 4, 3, 2, 1]));
        let expected = &LaurentPoly::q_int(5) * &LaurentPoly::q_int(4);
        assert_eq!(rank, expected);

        // Smallest case: two nodes, one cover.
        let small = circular_fence(&comp(&[1, 1])).unwrap();
        assert_eq!(small.n(), 2);
        assert_eq!(small.relations(), &[(0, 1)]);
        assert_eq!(small.rank_poly().unwrap(), poly(&[1, 1, 1]));

        assert!(circular_fence(&comp(&[1, 1, 1])).is_err());
    }

    #[test]
    fn with_relation_cases() {
        let chain = FinitePoset::new(2, vec![(0, 1)]).unwrap();
        // Implied relation: unchanged.
        match chain.with_relation(0, 1).unwrap() {
            Closure::Poset(p) => assert_eq!(p, chain),
            _ => panic!("expected poset"),
        }
        // New relation on an antichain: still a poset.
        let anti = FinitePoset::antichain(2).unwrap();
        match anti.with_relation(1, 0).unwrap() {
            Closure::Poset(p) => assert_eq!(p.rank_poly().unwrap(), poly(&[1, 1, 1])),
            _ => panic!("expected poset"),
        }
        // Reversing a strict relation: a preorder whose down-closed sets are
        // the empty set and the whole 2-cycle.
        let closed = chain.with_relation(1, 0).unwrap();
        assert!(closed.is_degenerate());
        assert_eq!(
            closed.rank_poly().unwrap(),
            LaurentPoly::from_int_coeffs(0, &[1, 0, 1])
        );

        // A closed k-chain collapses to {empty, everything}: 1 + q^k.
        let chain4 = FinitePoset::new(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        let closed4 = chain4.with_relation(3, 0).unwrap();
        assert!(closed4.is_degenerate());
        assert_eq!(
            closed4.rank_poly().unwrap(),
            LaurentPoly::from_int_coeffs(0, &[1, 0, 0, 0, 1])
        );
        assert_eq!(closed4.ideals().unwrap(), vec![0b0000, 0b1111]);
    }

    #[test]
    fn restricted_counts() {
        let f = fence(&comp(&[2, 1, 1, 3])).unwrap();
        let left = 0;
        let right = 7;
        let all = f.rank_poly().unwrap();
        let with_l = f.restricted_rank_poly(&[left], &[]).unwrap();
        let without_l = f.restricted_rank_poly(&[], &[left]).unwrap();
        assert_eq!(&with_l + &without_l, all);
        let with_r = f.restricted_rank_poly(&[right], &[]).unwrap();
        let without_r = f.restricted_rank_poly(&[], &[right]).unwrap();
        assert_eq!(&with_r + &without_r, all);
        // Contradictory constraints vanish.
        assert_eq!(
            f.restricted_rank_poly(&[left], &[left]).unwrap(),
            LaurentPoly::zero()
        );
        // Forcing a node in forces its down-set in: minimum degree grows.
        assert!(with_r.min_deg() >= 1);
    }

    #[test]
    fn ideal_enumeration_matches_counting() {
        for parts in [vec![1, 1], vec![2, 1, 1, 3], vec![3, 4]] {
            let f = fence(&comp(&parts)).unwrap();
            let ideals = f.ideals().unwrap();
            let rank = f.rank_poly().unwrap();
            assert_eq!(ideals.len(), usize::try_from(rank.eval_one()).unwrap());
            // Every enumerated set is down-closed.
            for &i in &ideals {
                for v in 0..f.n() {
                    if i >> v & 1 == 1 {
                        assert_eq!(i & f.down_mask(v), f.down_mask(v));
                    }
                }
            }
        }
    }

    #[test]
    fn node_cap_respected() {
        let big = FinitePoset::antichain(25).unwrap();
        assert!(matches!(
            big.rank_poly(),
            Err(Error::TooLarge { .. })
        ));
        assert!(big.rank_poly_bounded(25).is_ok());
        assert!(FinitePoset::antichain(33).is_err());
    }
}
