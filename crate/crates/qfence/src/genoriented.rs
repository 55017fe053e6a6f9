//! Posets with several marked left and right nodes, and the block
//! generalization of the 2x2 rank matrices.
//!
//! A `(t, s)`-oriented poset marks `t` left nodes and `s` right nodes. Its
//! rank matrix is `2^t x 2^s`, indexed by subsets (as bitmasks, so index 0
//! is the empty subset): the primal entry at `(A, B)` is
//! `(-1)^|B| * rank(ideals containing every right node of B and avoiding
//! every left node of A)`, and the dual entry at `(A, B)` counts ideals
//! containing the right nodes outside `B` and avoiding both the left nodes
//! of `A` and the right nodes of `B`.
//!
//! Gluing right boundary to left boundary pairwise multiplies these
//! matrices exactly as in the 2x2 case, and the matched-arity closure
//! traces count the down-sets of the (possibly degenerate) closure.

use rand::seq::index::sample;
use rand::Rng;

use crate::error::{Error, Result};
use crate::oriented::{OrientedPoset, RankMatrix};
use crate::poset::{Closure, FinitePoset};
use crate::qpoly::LaurentPoly;

/// Cap on the number of marked nodes per side; matrices grow as `2^t x 2^s`.
pub const MAX_ARITY: usize = 4;

/// A rectangular matrix of Laurent polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl GenMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<LaurentPoly>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::InvalidParams(format!(
                "matrix shape {rows}x{cols} does not fit {} entries",
                entries.len()
            )));
        }
        Ok(GenMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![LaurentPoly::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = LaurentPoly::one();
        }
        GenMatrix {
            rows: n,
            cols: n,
            entries,
        }
    }

    /// Embeds a 2x2 rank matrix; the subset indexing coincides.
    pub fn from_rank_matrix(m: &RankMatrix) -> Self {
        GenMatrix {
            rows: 2,
            cols: 2,
            entries: vec![
                m.entry(0, 0).clone(),
                m.entry(0, 1).clone(),
                m.entry(1, 0).clone(),
                m.entry(1, 1).clone(),
            ],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> &LaurentPoly {
        &self.entries[row * self.cols + col]
    }

    pub fn mul(&self, rhs: &GenMatrix) -> Result<GenMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::ArityMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = LaurentPoly::zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.entry(r, k) * rhs.entry(k, c));
                }
                entries.push(acc);
            }
        }
        GenMatrix::new(self.rows, rhs.cols, entries)
    }

    pub fn trace(&self) -> Result<LaurentPoly> {
        if self.rows != self.cols {
            return Err(Error::ArityMismatch(format!(
                "trace of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut acc = LaurentPoly::zero();
        for i in 0..self.rows {
            acc = &acc + self.entry(i, i);
        }
        Ok(acc)
    }
}

/// A poset with `t` marked left nodes and `s` marked right nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenOrientedPoset {
    poset: FinitePoset,
    lefts: Vec<usize>,
    rights: Vec<usize>,
}

fn validate_marks(n: usize, marks: &[usize], side: &str) -> Result<()> {
    if marks.is_empty() {
        return Err(Error::InvalidParams(format!("no {side} nodes marked")));
    }
    if marks.len() > MAX_ARITY {
        return Err(Error::TooLarge {
            what: "marked boundary nodes",
            got: marks.len(),
            limit: MAX_ARITY,
        });
    }
    for (i, &v) in marks.iter().enumerate() {
        if v >= n {
            return Err(Error::InvalidParams(format!(
                "{side} node {v} out of range for {n} nodes"
            )));
        }
        if marks[..i].contains(&v) {
            return Err(Error::InvalidParams(format!(
                "{side} node {v} marked twice"
            )));
        }
    }
    Ok(())
}

impl GenOrientedPoset {
    pub fn new(poset: FinitePoset, lefts: Vec<usize>, rights: Vec<usize>) -> Result<Self> {
        validate_marks(poset.n(), &lefts, "left")?;
        validate_marks(poset.n(), &rights, "right")?;
        Ok(GenOrientedPoset {
            poset,
            lefts,
            rights,
        })
    }

    /// A singly-oriented poset viewed as a `(1, 1)`-oriented one.
    pub fn from_oriented(p: &OrientedPoset) -> Self {
        GenOrientedPoset {
            poset: p.poset().clone(),
            lefts: vec![p.left()],
            rights: vec![p.right()],
        }
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn lefts(&self) -> &[usize] {
        &self.lefts
    }

    pub fn rights(&self) -> &[usize] {
        &self.rights
    }

    pub fn n(&self) -> usize {
        self.poset.n()
    }

    fn subset(marks: &[usize], mask: usize) -> Vec<usize> {
        marks
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect()
    }

    /// The `2^t x 2^s` primal rank matrix.
    pub fn rank_matrix(&self) -> Result<GenMatrix> {
        let rows = 1usize << self.lefts.len();
        let cols = 1usize << self.rights.len();
        let mut entries = Vec::with_capacity(rows * cols);
        for a in 0..rows {
            let out_nodes = Self::subset(&self.lefts, a);
            for b in 0..cols {
                let in_nodes = Self::subset(&self.rights, b);
                let p = self.poset.restricted_rank_poly(&in_nodes, &out_nodes)?;
                entries.push(if (b as u32).count_ones() % 2 == 1 {
                    -&p
                } else {
                    p
                });
            }
        }
        GenMatrix::new(rows, cols, entries)
    }

    /// The `2^t x 2^s` dual rank matrix.
    pub fn dual_rank_matrix(&self) -> Result<GenMatrix> {
        let rows = 1usize << self.lefts.len();
        let cols = 1usize << self.rights.len();
        let full = (1usize << self.rights.len()) - 1;
        let mut entries = Vec::with_capacity(rows * cols);
        for a in 0..rows {
            for b in 0..cols {
                let in_nodes = Self::subset(&self.rights, full & !b);
                let mut out_nodes = Self::subset(&self.lefts, a);
                out_nodes.extend(Self::subset(&self.rights, b));
                entries.push(self.poset.restricted_rank_poly(&in_nodes, &out_nodes)?);
            }
        }
        GenMatrix::new(rows, cols, entries)
    }

    fn glue_inner(&self, other: &GenOrientedPoset, dual: bool) -> Result<Self> {
        if self.rights.len() != other.lefts.len() {
            return Err(Error::ArityMismatch(format!(
                "gluing {} right nodes to {} left nodes",
                self.rights.len(),
                other.lefts.len()
            )));
        }
        let off = self.n();
        let mut edges: Vec<(usize, usize)> = self.poset.relations().to_vec();
        edges.extend(
            other
                .poset
                .relations()
                .iter()
                .map(|&(a, b)| (a + off, b + off)),
        );
        for (&r, &l) in self.rights.iter().zip(&other.lefts) {
            if dual {
                edges.push((r, l + off));
            } else {
                edges.push((l + off, r));
            }
        }
        Ok(GenOrientedPoset {
            poset: FinitePoset::new(off + other.n(), edges)?,
            lefts: self.lefts.clone(),
            rights: other.rights.iter().map(|&r| r + off).collect(),
        })
    }

    /// Disjoint union with each of `other`'s left nodes placed below the
    /// matching right node of `self`. Multiplies primal matrices.
    pub fn glue(&self, other: &GenOrientedPoset) -> Result<Self> {
        self.glue_inner(other, false)
    }

    /// The opposite boundary orientation; multiplies dual matrices.
    pub fn dual_glue(&self, other: &GenOrientedPoset) -> Result<Self> {
        self.glue_inner(other, true)
    }

    /// Adds `left_i <= right_i` for every matched pair. Requires equal
    /// arities; the result may be degenerate.
    pub fn close(&self) -> Result<Closure> {
        if self.lefts.len() != self.rights.len() {
            return Err(Error::ArityMismatch(format!(
                "closing {} left nodes against {} right nodes",
                self.lefts.len(),
                self.rights.len()
            )));
        }
        let pairs: Vec<(usize, usize)> = self
            .lefts
            .iter()
            .zip(&self.rights)
            .map(|(&l, &r)| (l, r))
            .collect();
        self.poset.with_relations(&pairs)
    }

    /// Adds `right_i <= left_i` for every matched pair.
    pub fn reverse_close(&self) -> Result<Closure> {
        if self.lefts.len() != self.rights.len() {
            return Err(Error::ArityMismatch(format!(
                "closing {} right nodes against {} left nodes",
                self.rights.len(),
                self.lefts.len()
            )));
        }
        let pairs: Vec<(usize, usize)> = self
            .rights
            .iter()
            .zip(&self.lefts)
            .map(|(&r, &l)| (r, l))
            .collect();
        self.poset.with_relations(&pairs)
    }
}

/// A random poset on at most `max_nodes` nodes with random marked
/// boundaries of arity at most `max_arity` per side.
pub fn random_gen_poset<R: Rng>(
    rng: &mut R,
    max_nodes: usize,
    max_arity: usize,
) -> Result<GenOrientedPoset> {
    let arity_cap = max_arity.min(MAX_ARITY).max(1);
    let n = rng.gen_range(arity_cap..=max_nodes.max(arity_cap));
    // Random edges on a shuffled linear order keep the digraph acyclic.
    let mut labels: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        labels.swap(i, rng.gen_range(0..=i));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.3) {
                edges.push((labels[i], labels[j]));
            }
        }
    }
    let poset = FinitePoset::new(n, edges)?;
    let t = rng.gen_range(1..=arity_cap);
    let s = rng.gen_range(1..=arity_cap);
    let lefts = sample(rng, n, t).into_vec();
    let rights = sample(rng, n, s).into_vec();
    GenOrientedPoset::new(poset, lefts, rights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Composition;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn reduces_to_the_two_by_two_case() {
        for alpha in [vec![2, 1, 1, 3], vec![1, 2], vec![3, 4]] {
            let f = OrientedPoset::fence(&Composition::new(alpha).unwrap()).unwrap();
            let g = GenOrientedPoset::from_oriented(&f);
            assert_eq!(
                g.rank_matrix().unwrap(),
                GenMatrix::from_rank_matrix(&f.rank_matrix().unwrap())
            );
            assert_eq!(
                g.dual_rank_matrix().unwrap(),
                GenMatrix::from_rank_matrix(&f.dual_rank_matrix().unwrap())
            );
        }
        let s = GenOrientedPoset::from_oriented(&OrientedPoset::singleton());
        assert_eq!(
            s.rank_matrix().unwrap(),
            GenMatrix::from_rank_matrix(&RankMatrix::down_step())
        );
    }

    #[test]
    fn matrix_shape_checks() {
        assert!(GenMatrix::new(2, 2, vec![LaurentPoly::one(); 3]).is_err());
        let a = GenMatrix::identity(2);
        let b = GenMatrix::identity(4);
        assert!(a.mul(&b).is_err());
        assert_eq!(a.mul(&a).unwrap(), a);
        let rect = GenMatrix::new(2, 4, vec![LaurentPoly::one(); 8]).unwrap();
        assert!(rect.trace().is_err());
        assert_eq!(a.mul(&rect).unwrap(), rect);
    }

    #[test]
    fn validation_rejects_bad_marks() {
        let p = FinitePoset::antichain(3).unwrap();
        assert!(GenOrientedPoset::new(p.clone(), vec![], vec![0]).is_err());
        assert!(GenOrientedPoset::new(p.clone(), vec![0, 0], vec![1]).is_err());
        assert!(GenOrientedPoset::new(p.clone(), vec![3], vec![1]).is_err());
        assert!(GenOrientedPoset::new(p.clone(), vec![0; 5], vec![1]).is_err());
        assert!(GenOrientedPoset::new(p, vec![0, 1], vec![1, 2]).is_ok());
    }

    #[test]
    fn hand_built_two_by_two_glue() {
        // Two antichains of 2 nodes, all nodes marked on both sides.
        let p = GenOrientedPoset::new(
            FinitePoset::antichain(2).unwrap(),
            vec![0, 1],
            vec![0, 1],
        )
        .unwrap();
        let glued = p.glue(&p).unwrap();
        assert_eq!(glued.n(), 4);
        assert_eq!(
            glued.rank_matrix().unwrap(),
            p.rank_matrix()
                .unwrap()
                .mul(&p.rank_matrix().unwrap())
                .unwrap()
        );
        let dual_glued = p.dual_glue(&p).unwrap();
        assert_eq!(
            dual_glued.dual_rank_matrix().unwrap(),
            p.dual_rank_matrix()
                .unwrap()
                .mul(&p.dual_rank_matrix().unwrap())
                .unwrap()
        );
    }

    #[test]
    fn arity_mismatch_is_rejected() {
        let p = FinitePoset::antichain(3).unwrap();
        let a = GenOrientedPoset::new(p.clone(), vec![0], vec![1, 2]).unwrap();
        let b = GenOrientedPoset::new(p, vec![0], vec![1]).unwrap();
        assert!(matches!(a.glue(&b), Err(Error::ArityMismatch(_))));
        assert!(matches!(a.close(), Err(Error::ArityMismatch(_))));
        assert!(a.glue(&a).is_err());
        assert!(b.glue(&b).is_ok());
    }

    #[test]
    fn random_glue_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut done = 0;
        while done < 25 {
            let p = random_gen_poset(&mut rng, 6, 2).unwrap();
            let q = random_gen_poset(&mut rng, 6, 2).unwrap();
            if p.rights().len() != q.lefts().len() {
                continue;
            }
            done += 1;
            let glued = p.glue(&q).unwrap();
            assert_eq!(
                glued.rank_matrix().unwrap(),
                p.rank_matrix().unwrap().mul(&q.rank_matrix().unwrap()).unwrap()
            );
            let dual_glued = p.dual_glue(&q).unwrap();
            assert_eq!(
                dual_glued.dual_rank_matrix().unwrap(),
                p.dual_rank_matrix()
                    .unwrap()
                    .mul(&q.dual_rank_matrix().unwrap())
                    .unwrap()
            );
            // Mixed laws.
            assert_eq!(
                dual_glued.rank_matrix().unwrap(),
                p.dual_rank_matrix()
                    .unwrap()
                    .mul(&q.rank_matrix().unwrap())
                    .unwrap()
            );
            assert_eq!(
                glued.dual_rank_matrix().unwrap(),
                p.rank_matrix()
                    .unwrap()
                    .mul(&q.dual_rank_matrix().unwrap())
                    .unwrap()
            );
        }
    }

    #[test]
    fn closure_traces_count_downsets() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut degenerate_seen = false;
        let mut done = 0;
        while done < 25 {
            let p = random_gen_poset(&mut rng, 6, 2).unwrap();
            if p.lefts().len() != p.rights().len() {
                continue;
            }
            done += 1;
            let close = p.close().unwrap();
            degenerate_seen |= close.is_degenerate();
            assert_eq!(
                p.rank_matrix().unwrap().trace().unwrap(),
                close.rank_poly().unwrap()
            );
            assert_eq!(
                p.dual_rank_matrix().unwrap().trace().unwrap(),
                p.reverse_close().unwrap().rank_poly().unwrap()
            );
        }
        assert!(degenerate_seen, "want at least one degenerate closure");
    }
}
