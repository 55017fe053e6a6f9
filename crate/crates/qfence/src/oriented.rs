//! Posets with a marked left and right node, and their 2x2 rank matrices.
//!
//! For an oriented poset `(P, x_L, x_R)` write `rank` for the ideal-size
//! polynomial, a subscript `1` for "ideals containing x_R", and a prefix
//! subscript `0` for "ideals avoiding x_L". The two matrix forms are
//!
//! ```text
//! rmm(P) = [ rank   -rank_1  ]      drm(P) = [ rank_1    rank_0  ]
//!          [ 0rank  -0rank_1 ]               [ 0rank_1   0rank_0 ]
//! ```
//!
//! Gluing the right node of `P` under the left node of `Q` multiplies rmm;
//! the dual glue multiplies drm; mixed products convert one into the other.
//! The one-node poset has `rmm = D0` and `drm = U0 = R_q`, and every fence
//! matrix is a word in those two steps.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poset::{fence_edges, Closure, Composition, FinitePoset};
use crate::qpoly::LaurentPoly;

/// A 2x2 matrix of Laurent polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankMatrix {
    e: [[LaurentPoly; 2]; 2],
}

impl RankMatrix {
    pub fn new(e: [[LaurentPoly; 2]; 2]) -> Self {
        RankMatrix { e }
    }

    pub fn identity() -> Self {
        RankMatrix::new([
            [LaurentPoly::one(), LaurentPoly::zero()],
            [LaurentPoly::zero(), LaurentPoly::one()],
        ])
    }

    /// `R_q = [[q, 1], [0, 1]]`.
    pub fn r_q() -> Self {
        RankMatrix::new([
            [LaurentPoly::q_power(1), LaurentPoly::one()],
            [LaurentPoly::zero(), LaurentPoly::one()],
        ])
    }

    /// `S_q = [[0, -q^-1], [1, 0]]`.
    pub fn s_q() -> Self {
        RankMatrix::new([
            [LaurentPoly::zero(), -LaurentPoly::q_power(-1)],
            [LaurentPoly::one(), LaurentPoly::zero()],
        ])
    }

    /// The upward transfer step `U0 = R_q`: drm of the one-node poset.
    pub fn up_step() -> Self {
        RankMatrix::r_q()
    }

    /// The downward transfer step `D0 = R_q^2 S_q = [[1+q, -q], [1, 0]]`:
    /// rmm of the one-node poset.
    pub fn down_step() -> Self {
        RankMatrix::new([
            [LaurentPoly::q_int(2), -LaurentPoly::q_power(1)],
            [LaurentPoly::one(), LaurentPoly::zero()],
        ])
    }

    /// `U0^-1 = [[q^-1, -q^-1], [0, 1]]`.
    pub fn up_step_inv() -> Self {
        RankMatrix::new([
            [LaurentPoly::q_power(-1), -LaurentPoly::q_power(-1)],
            [LaurentPoly::zero(), LaurentPoly::one()],
        ])
    }

    /// `D0^-1 = [[0, 1], [-q^-1, 1 + q^-1]]`.
    pub fn down_step_inv() -> Self {
        RankMatrix::new([
            [LaurentPoly::zero(), LaurentPoly::one()],
            [
                -LaurentPoly::q_power(-1),
                &LaurentPoly::one() + &LaurentPoly::q_power(-1),
            ],
        ])
    }

    pub fn entry(&self, row: usize, col: usize) -> &LaurentPoly {
        &self.e[row][col]
    }

    pub fn trace(&self) -> LaurentPoly {
        &self.e[0][0] + &self.e[1][1]
    }

    pub fn det(&self) -> LaurentPoly {
        &(&self.e[0][0] * &self.e[1][1]) - &(&self.e[0][1] * &self.e[1][0])
    }

    /// Inverse over Laurent polynomials; exists iff the determinant is a
    /// unit `±q^k`.
    pub fn inverse(&self) -> Result<RankMatrix> {
        let det = self.det();
        let adj = [
            [self.e[1][1].clone(), -&self.e[0][1]],
            [-&self.e[1][0], self.e[0][0].clone()],
        ];
        let mut out = RankMatrix::identity();
        for r in 0..2 {
            for c in 0..2 {
                out.e[r][c] = adj[r][c].divide_exact(&det)?;
            }
        }
        Ok(out)
    }

    /// Multiplies every entry by `q^k`.
    pub fn scaled_by_power(&self, k: i64) -> RankMatrix {
        RankMatrix::new([
            [self.e[0][0].shifted(k), self.e[0][1].shifted(k)],
            [self.e[1][0].shifted(k), self.e[1][1].shifted(k)],
        ])
    }

    pub fn pow(&self, n: u32) -> RankMatrix {
        let mut acc = RankMatrix::identity();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// Converts an rmm into the drm of the same oriented poset:
    /// `drm = rmm * [[0, 1], [-1, 1]]`.
    pub fn to_dual(&self) -> RankMatrix {
        self * &conversion_to_dual()
    }

    /// Converts a drm back into the rmm: `rmm = drm * [[1, -1], [1, 0]]`.
    pub fn to_primal(&self) -> RankMatrix {
        self * &conversion_to_primal()
    }
}

fn conversion_to_dual() -> RankMatrix {
    let one = BigInt::one();
    RankMatrix::new([
        [LaurentPoly::zero(), LaurentPoly::one()],
        [LaurentPoly::monomial(0, -&one), LaurentPoly::one()],
    ])
}

fn conversion_to_primal() -> RankMatrix {
    let one = BigInt::one();
    RankMatrix::new([
        [LaurentPoly::one(), LaurentPoly::monomial(0, -&one)],
        [LaurentPoly::one(), LaurentPoly::zero()],
    ])
}

impl Mul for &RankMatrix {
    type Output = RankMatrix;
    fn mul(self, rhs: &RankMatrix) -> RankMatrix {
        let mut out = RankMatrix::new([
            [LaurentPoly::zero(), LaurentPoly::zero()],
            [LaurentPoly::zero(), LaurentPoly::zero()],
        ]);
        for r in 0..2 {
            for c in 0..2 {
                out.e[r][c] = &(&self.e[r][0] * &rhs.e[0][c]) + &(&self.e[r][1] * &rhs.e[1][c]);
            }
        }
        out
    }
}

impl Mul for RankMatrix {
    type Output = RankMatrix;
    fn mul(self, rhs: RankMatrix) -> RankMatrix {
        &self * &rhs
    }
}

impl fmt::Display for RankMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.e[0][0], self.e[0][1], self.e[1][0], self.e[1][1]
        )
    }
}

/// A poset with designated left and right nodes (which coincide for the
/// one-node poset).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedPoset {
    poset: FinitePoset,
    left: usize,
    right: usize,
}

impl OrientedPoset {
    pub fn new(poset: FinitePoset, left: usize, right: usize) -> Result<Self> {
        if left >= poset.n() || right >= poset.n() {
            return Err(Error::InvalidParams(format!(
                "marked nodes ({left}, {right}) out of range for {} nodes",
                poset.n()
            )));
        }
        Ok(OrientedPoset { poset, left, right })
    }

    /// The one-node oriented poset; its x_L and x_R coincide.
    pub fn singleton() -> Self {
        OrientedPoset {
            poset: FinitePoset::antichain(1).expect("one node"),
            left: 0,
            right: 0,
        }
    }

    /// Chain of `covers` upward covers (so `covers + 1` nodes), oriented
    /// from its minimum to its maximum.
    pub fn up_chain(covers: u32) -> Result<Self> {
        let n = covers as usize + 1;
        let edges = (0..covers as usize).map(|i| (i, i + 1)).collect();
        Ok(OrientedPoset {
            poset: FinitePoset::new(n, edges)?,
            left: 0,
            right: n - 1,
        })
    }

    /// Chain of `covers` downward covers, oriented from its maximum to its
    /// minimum.
    pub fn down_chain(covers: u32) -> Result<Self> {
        let n = covers as usize + 1;
        let edges = (0..covers as usize).map(|i| (i + 1, i)).collect();
        Ok(OrientedPoset {
            poset: FinitePoset::new(n, edges)?,
            left: 0,
            right: n - 1,
        })
    }

    /// The fence of a composition, oriented from its first node to its
    /// last. Unlike [`crate::poset::fence`], a zero first or last part is
    /// accepted here: it denotes an empty boundary run, as needed by the
    /// compositions attached to rationals like 2/1.
    pub fn fence(alpha: &Composition) -> Result<Self> {
        let (n, edges) = fence_edges(alpha.parts());
        Ok(OrientedPoset {
            poset: FinitePoset::new(n, edges)?,
            left: 0,
            right: n - 1,
        })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn n(&self) -> usize {
        self.poset.n()
    }

    /// Disjoint union with `other` plus the relation
    /// `other.left <= self.right`; oriented from `self.left` to
    /// `other.right`. Multiplies rank-matrix forms: `rmm(P glue Q) =
    /// rmm(P) * rmm(Q)`.
    pub fn glue(&self, other: &OrientedPoset) -> Result<Self> {
        self.glue_inner(other, false)
    }

    /// Disjoint union with `other` plus the opposite boundary relation
    /// `self.right <= other.left`. Multiplies dual forms:
    /// `drm(P dual_glue Q) = drm(P) * drm(Q)`.
    pub fn dual_glue(&self, other: &OrientedPoset) -> Result<Self> {
        self.glue_inner(other, true)
    }

    fn glue_inner(&self, other: &OrientedPoset, dual: bool) -> Result<Self> {
        let off = self.n();
        let mut edges: Vec<(usize, usize)> = self.poset.relations().to_vec();
        edges.extend(
            other
                .poset
                .relations()
                .iter()
                .map(|&(a, b)| (a + off, b + off)),
        );
        if dual {
            edges.push((self.right, other.left + off));
        } else {
            edges.push((other.left + off, self.right));
        }
        Ok(OrientedPoset {
            poset: FinitePoset::new(off + other.n(), edges)?,
            left: self.left,
            right: other.right + off,
        })
    }

    /// Adds `x_L <= x_R`. May be a no-op (already implied) or degenerate
    /// (a preorder), both of which still count their down-closed sets.
    pub fn close(&self) -> Result<Closure> {
        self.poset.with_relation(self.left, self.right)
    }

    /// Adds `x_R <= x_L`.
    pub fn reverse_close(&self) -> Result<Closure> {
        self.poset.with_relation(self.right, self.left)
    }

    /// The rank matrix, computed from the ideal oracle.
    pub fn rank_matrix(&self) -> Result<RankMatrix> {
        let p = &self.poset;
        let l = self.left;
        let r = self.right;
        Ok(RankMatrix::new([
            [
                p.restricted_rank_poly(&[], &[])?,
                -&p.restricted_rank_poly(&[r], &[])?,
            ],
            [
                p.restricted_rank_poly(&[], &[l])?,
                -&p.restricted_rank_poly(&[r], &[l])?,
            ],
        ]))
    }

    /// The dual rank matrix, computed from the ideal oracle.
    pub fn dual_rank_matrix(&self) -> Result<RankMatrix> {
        let p = &self.poset;
        let l = self.left;
        let r = self.right;
        Ok(RankMatrix::new([
            [
                p.restricted_rank_poly(&[r], &[])?,
                p.restricted_rank_poly(&[], &[r])?,
            ],
            [
                p.restricted_rank_poly(&[r], &[l])?,
                p.restricted_rank_poly(&[], &[l, r])?,
            ],
        ]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(min_deg: i64, coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_int_coeffs(min_deg, coeffs)
    }

    #[test]
    fn generator_relations() {
        // D0 = R^2 S and the printed inverses really invert.
        let r = RankMatrix::r_q();
        let s = RankMatrix::s_q();
        assert_eq!(&r.pow(2) * &s, RankMatrix::down_step());
        assert_eq!(
            &RankMatrix::up_step() * &RankMatrix::up_step_inv(),
            RankMatrix::identity()
        );
        assert_eq!(
            &RankMatrix::down_step() * &RankMatrix::down_step_inv(),
            RankMatrix::identity()
        );
        assert_eq!(RankMatrix::up_step().inverse().unwrap(), RankMatrix::up_step_inv());
        assert_eq!(
            RankMatrix::down_step().inverse().unwrap(),
            RankMatrix::down_step_inv()
        );
        // det U0 = det D0 = q.
        assert_eq!(RankMatrix::up_step().det(), poly(1, &[1]));
        assert_eq!(RankMatrix::down_step().det(), poly(1, &[1]));
        // Conversion matrices are mutually inverse.
        let id = RankMatrix::identity();
        assert_eq!(id.to_dual().to_primal(), id);
    }

    #[test]
    fn singleton_matrices() {
        let p = OrientedPoset::singleton();
        assert_eq!(p.rank_matrix().unwrap(), RankMatrix::down_step());
        assert_eq!(p.dual_rank_matrix().unwrap(), RankMatrix::up_step());
        // Closing the singleton is a no-op; its closed rank is 1 + q.
        let closed = p.close().unwrap();
        assert!(!closed.is_degenerate());
        assert_eq!(closed.rank_poly().unwrap(), poly(0, &[1, 1]));
        assert_eq!(p.rank_matrix().unwrap().trace(), poly(0, &[1, 1]));
    }

    #[test]
    fn chain_matrices_match_closed_forms() {
        for n in 0..=10u32 {
            let up = OrientedPoset::up_chain(n).unwrap();
            let down = OrientedPoset::down_chain(n).unwrap();
            // rmm of a down chain is D0^(n+1); drm of an up chain is U0^(n+1).
            assert_eq!(
                down.rank_matrix().unwrap(),
                RankMatrix::down_step().pow(n + 1)
            );
            assert_eq!(
                up.dual_rank_matrix().unwrap(),
                RankMatrix::up_step().pow(n + 1)
            );
            // rmm(up chain) = [[ [n+2], -q^(n+1) ], [1, 0]].
            let rm = up.rank_matrix().unwrap();
            assert_eq!(rm.entry(0, 0), &LaurentPoly::q_int(n as i64 + 2));
            assert_eq!(rm.entry(0, 1), &(-LaurentPoly::q_power(n as i64 + 1)));
            assert_eq!(rm.entry(1, 0), &LaurentPoly::one());
            assert_eq!(rm.entry(1, 1), &LaurentPoly::zero());
            // drm(down chain) = [[ q[n+1], 1 ], [ q[n], 1 ]].
            let dm = down.dual_rank_matrix().unwrap();
            assert_eq!(dm.entry(0, 0), &LaurentPoly::q_int(n as i64 + 1).shifted(1));
            assert_eq!(dm.entry(0, 1), &LaurentPoly::one());
            assert_eq!(dm.entry(1, 0), &LaurentPoly::q_int(n as i64).shifted(1));
            assert_eq!(dm.entry(1, 1), &LaurentPoly::one());
        }
    }

    #[test]
    fn conversion_matches_oracle() {
        let alpha = Composition::new(vec![2, 1, 1, 3]).unwrap();
        let f = OrientedPoset::fence(&alpha).unwrap();
        let rmm = f.rank_matrix().unwrap();
        let drm = f.dual_rank_matrix().unwrap();
        assert_eq!(rmm.to_dual(), drm);
        assert_eq!(drm.to_primal(), rmm);
        // Column relations: rank = rank_0 + rank_1 in both column slots.
        assert_eq!(rmm.entry(0, 0), &(drm.entry(0, 0) + drm.entry(0, 1)));
        assert_eq!(rmm.entry(1, 0), &(drm.entry(1, 0) + drm.entry(1, 1)));
    }

    #[test]
    fn glue_multiplies_matrices() {
        let a = OrientedPoset::fence(&Composition::new(vec![1, 2]).unwrap()).unwrap();
        let b = OrientedPoset::fence(&Composition::new(vec![2, 1]).unwrap()).unwrap();
        let glued = a.glue(&b).unwrap();
        assert_eq!(glued.n(), a.n() + b.n());
        assert_eq!(
            glued.rank_matrix().unwrap(),
            &a.rank_matrix().unwrap() * &b.rank_matrix().unwrap()
        );
        let dual_glued = a.dual_glue(&b).unwrap();
        assert_eq!(
            dual_glued.dual_rank_matrix().unwrap(),
            &a.dual_rank_matrix().unwrap() * &b.dual_rank_matrix().unwrap()
        );
        // Mixed conversions.
        assert_eq!(
            dual_glued.rank_matrix().unwrap(),
            &a.dual_rank_matrix().unwrap() * &b.rank_matrix().unwrap()
        );
        assert_eq!(
            glued.dual_rank_matrix().unwrap(),
            &a.rank_matrix().unwrap() * &b.dual_rank_matrix().unwrap()
        );
    }

    #[test]
    fn closure_traces() {
        // tr rmm = rank of close, tr drm = rank of reverse close; the
        // reverse close of an up chain is degenerate and still works.
        for n in 0..4u32 {
            let up = OrientedPoset::up_chain(n).unwrap();
            assert_eq!(
                up.rank_matrix().unwrap().trace(),
                up.close().unwrap().rank_poly().unwrap()
            );
            let rc = up.reverse_close().unwrap();
            if n > 0 {
                assert!(rc.is_degenerate());
            }
            assert_eq!(up.dual_rank_matrix().unwrap().trace(), rc.rank_poly().unwrap());
        }
        let f =
            OrientedPoset::fence(&Composition::new(vec![2, 1, 1, 2]).unwrap()).unwrap();
        assert_eq!(
            f.rank_matrix().unwrap().trace(),
            f.close().unwrap().rank_poly().unwrap()
        );
        assert_eq!(
            f.dual_rank_matrix().unwrap().trace(),
            f.reverse_close().unwrap().rank_poly().unwrap()
        );
    }

    #[test]
    fn boundary_zero_fences() {
        // (0,0) is the one-node fence used by the rational 2/1.
        let alpha = Composition::new(vec![0, 0]).unwrap();
        let p = OrientedPoset::fence(&alpha).unwrap();
        assert_eq!(p.n(), 1);
        assert_eq!(p.rank_matrix().unwrap(), RankMatrix::down_step());
        // (0,1) is a single downward cover.
        let alpha = Composition::new(vec![0, 1]).unwrap();
        let p = OrientedPoset::fence(&alpha).unwrap();
        assert_eq!(p.n(), 2);
        assert_eq!(
            p.rank_matrix().unwrap(),
            RankMatrix::down_step().pow(2)
        );
    }
}
