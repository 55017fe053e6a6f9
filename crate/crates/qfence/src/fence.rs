//! Transfer-matrix calculus for fence compositions.
//!
//! A composition `(a1, a2, ..., as)` drives an alternating product of the
//! two step matrices: `closure_matrix = U0^a1 D0^a2 U0^a3 ...`. Its trace is
//! the rank polynomial of the circular fence (for even length), while the
//! rank matrix of the *linear* fence is the closure matrix of the "closed"
//! composition (last part raised by one for even length, a part 1 appended
//! for odd length):
//!
//! ```text
//! rmm(F(a1..as)) = U0^a1 D0^a2 ... D0^(as + 1)        (s even)
//! drm(F(a1..as)) = rmm(F(a1..as)) * [[0,1],[-1,1]]
//! ```
//!
//! A zero first or last part denotes an empty boundary run; the matrix
//! product handles those transparently (`U0^0 = I`), and the poset oracle
//! counterparts here resolve them by rotating the cyclic run sequence.

use crate::error::{Error, Result};
use crate::oriented::{OrientedPoset, RankMatrix};
use crate::poset::{circular_fence, Composition};
use crate::qpoly::LaurentPoly;

/// `U0^a1 D0^a2 U0^a3 ...` — the plain alternating product, starting with
/// the upward step.
pub fn closure_matrix(alpha: &Composition) -> RankMatrix {
    closure_matrix_of_parts(alpha.parts())
}

fn closure_matrix_of_parts(parts: &[u32]) -> RankMatrix {
    let mut acc = RankMatrix::identity();
    for (i, &p) in parts.iter().enumerate() {
        if p == 0 {
            continue;
        }
        let step = if i % 2 == 0 {
            RankMatrix::up_step()
        } else {
            RankMatrix::down_step()
        };
        acc = &acc * &step.pow(p);
    }
    acc
}

/// The composition whose closure matrix equals the rank matrix of the
/// linear fence: even length gets its last part raised by one, odd length
/// gets a part `1` appended (a trailing zero part is normalized away
/// first).
pub fn closed_composition(alpha: &Composition) -> Result<Composition> {
    let mut parts = alpha.parts().to_vec();
    if parts.len() % 2 == 1 {
        if *parts.last().unwrap() == 0 {
            parts.pop();
            *parts.last_mut().unwrap() += 1;
        } else {
            parts.push(1);
        }
    } else {
        *parts.last_mut().unwrap() += 1;
    }
    Composition::new(parts)
}

/// Rank matrix of the linear fence of `alpha`, as a transfer-matrix
/// product. Agrees entrywise with the ideal oracle on the oriented fence.
pub fn rank_matrix_of(alpha: &Composition) -> Result<RankMatrix> {
    Ok(closure_matrix(&closed_composition(alpha)?))
}

/// Dual rank matrix of the linear fence of `alpha`.
pub fn dual_rank_matrix_of(alpha: &Composition) -> Result<RankMatrix> {
    Ok(rank_matrix_of(alpha)?.to_dual())
}

/// Rank polynomial of the linear fence: top-left entry of the rank matrix.
pub fn rank_of(alpha: &Composition) -> Result<LaurentPoly> {
    Ok(rank_matrix_of(alpha)?.entry(0, 0).clone())
}

/// Rank polynomial of the circular fence: trace of the closure matrix.
/// Requires an even number of parts; boundary zeros are allowed and denote
/// empty runs of the cyclic run sequence.
pub fn circular_rank(alpha: &Composition) -> Result<LaurentPoly> {
    if alpha.len() % 2 != 0 {
        return Err(Error::OddLength { len: alpha.len() });
    }
    Ok(closure_matrix(alpha).trace())
}

/// Circular rank computed entirely on the poset side, independently of the
/// matrix calculus. Strictly positive parts go through the circular-fence
/// oracle; boundary zeros are resolved by rotating the cyclic run sequence,
/// bottoming out at closed chains (which are degenerate closures).
pub fn circular_rank_oracle(alpha: &Composition) -> Result<LaurentPoly> {
    if alpha.len() % 2 != 0 {
        return Err(Error::OddLength { len: alpha.len() });
    }
    let parts = alpha.parts();
    if parts.iter().all(|&p| p > 0) {
        return circular_fence(alpha)?.rank_poly();
    }
    if alpha.size() == 0 {
        return Err(Error::InvalidParams(
            "circular fence of the empty composition".into(),
        ));
    }
    if parts.len() == 2 {
        // (u, 0): the closed rising chain; (0, d): the closed falling
        // chain. Both closures are degenerate preorders.
        let (covers, rising) = if parts[1] == 0 {
            (parts[0], true)
        } else {
            (parts[1], false)
        };
        let chain = if rising {
            OrientedPoset::up_chain(covers - 1)?
        } else {
            OrientedPoset::down_chain(covers - 1)?
        };
        // Closing top-to-bottom is the degenerate direction for a rising
        // chain and the implied one for a falling chain; the cyclic wrap
        // of the run sequence corresponds to reverse_close / close
        // respectively.
        return if rising {
            chain.reverse_close()?.rank_poly()
        } else {
            chain.close()?.rank_poly()
        };
    }
    if parts[0] == 0 {
        // (0, d1, u2, d2, ..., us, ds) is the same cyclic run sequence as
        // (u2, d2, ..., us, ds + d1).
        let mut rotated = parts[1..].to_vec();
        let d1 = rotated.remove(0);
        *rotated.last_mut().unwrap() += d1;
        return circular_rank_oracle(&Composition::new(rotated)?);
    }
    // Trailing zero: (u1, d1, ..., us, 0) ~ (us + u1, d1, ..., d(s-1)).
    let mut rotated = parts[..parts.len() - 1].to_vec();
    let us = rotated.pop().unwrap();
    rotated[0] += us;
    circular_rank_oracle(&Composition::new(rotated)?)
}

/// The even-palindrome annihilator: `psi_plus(clmat(rho)) = 0` for every
/// palindromic `rho` with an even number of parts.
pub fn psi_plus(m: &RankMatrix) -> LaurentPoly {
    m.entry(0, 0) + m.entry(0, 1)
        - &LaurentPoly::q_int(2) * m.entry(1, 0)
        - m.entry(1, 1)
}

/// The odd-palindrome annihilator: `psi_minus(clmat(0, rho)) =
/// psi_minus(clmat(rho, 0)) = 0` for every palindromic `rho` with an odd
/// number of parts.
pub fn psi_minus(m: &RankMatrix) -> LaurentPoly {
    let one_minus_q = LaurentPoly::from_int_coeffs(0, &[1, -1]);
    let one_plus_q2 = LaurentPoly::from_int_coeffs(0, &[1, 0, 1]);
    m.entry(0, 0) + &one_minus_q * m.entry(0, 1)
        - &one_plus_q2 * m.entry(1, 0)
        - m.entry(1, 1)
}

/// A rank-polynomial identity instance for circular fences. Every variant
/// states `circular_rank(lhs) = factor * circular_rank(rhs)`.
#[derive(Clone, Debug)]
pub enum Identity {
    /// `(k, 2, 1^(2s+2)) = [k+1] * (3, 1^(2s+1))`, k >= 1.
    TailOfOnesA { k: u32, s: u32 },
    /// `(k+1, 1, k, 1^(2s+1)) = [k+1] * (k+2, 1^(2s+1))`, k >= 1.
    TailOfOnesB { k: u32, s: u32 },
    /// `(1, k, r+1, X, r) = [k+1] * (r+2, X, r)` for palindromic
    /// even-length `X` (possibly empty), k, r >= 1.
    UnitFirst { k: u32, r: u32, middle: Vec<u32> },
    /// `(k, 1, k+r, X, r) = [k+1] * (k+r+1, X, r)`, same hypotheses.
    UnitSecond { k: u32, r: u32, middle: Vec<u32> },
    /// `(1, k, rho+1) = [k+1] * (rho+2)` where `rho+n` adds `n` to the
    /// leftmost part of a nonempty palindromic even-length `rho`.
    UnitFirstReduced { k: u32, rho: Composition },
    /// `(k, 1, rho+k) = [k+1] * (rho+k+1)`, same hypotheses.
    UnitSecondReduced { k: u32, rho: Composition },
    /// `(2k, k^(2s+1)) = (1 + q^k) * (k+1, k-1, k^(2s))`, k >= 2.
    EqualParts { k: u32, s: u32 },
}

/// Outcome of checking one identity instance exactly.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub label: String,
    pub lhs_composition: Composition,
    pub rhs_composition: Composition,
    pub factor: LaurentPoly,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
    pub holds: bool,
}

fn validated_middle(x: &[u32]) -> Result<()> {
    if x.len() % 2 != 0 {
        return Err(Error::OddLength { len: x.len() });
    }
    if x.iter().any(|&p| p == 0) {
        return Err(Error::InvalidComposition(
            "palindromic middle needs parts >= 1".into(),
        ));
    }
    if !x.iter().eq(x.iter().rev()) {
        return Err(Error::InvalidParams("middle is not palindromic".into()));
    }
    Ok(())
}

fn validated_rho(rho: &Composition) -> Result<()> {
    if rho.len() % 2 != 0 {
        return Err(Error::OddLength { len: rho.len() });
    }
    if rho.parts().iter().any(|&p| p == 0) || !rho.is_palindromic() {
        return Err(Error::InvalidParams(
            "reduced-form identities need a nonempty palindromic composition with parts >= 1"
                .into(),
        ));
    }
    Ok(())
}

/// Builds both sides of the identity and compares them exactly.
pub fn check_identity(id: &Identity) -> Result<IdentityCheck> {
    let (label, lhs_parts, rhs_parts, factor): (String, Vec<u32>, Vec<u32>, LaurentPoly) =
        match id {
            Identity::TailOfOnesA { k, s } => {
                if *k < 1 {
                    return Err(Error::InvalidParams("tail-of-ones-a needs k >= 1".into()));
                }
                let mut lhs = vec![*k, 2];
                lhs.extend(std::iter::repeat(1).take((2 * s + 2) as usize));
                let mut rhs = vec![3];
                rhs.extend(std::iter::repeat(1).take((2 * s + 1) as usize));
                (
                    format!("tail-of-ones-a(k={k}, s={s})"),
                    lhs,
                    rhs,
                    LaurentPoly::q_int(*k as i64 + 1),
                )
            }
            Identity::TailOfOnesB { k, s } => {
                if *k < 1 {
                    return Err(Error::InvalidParams("tail-of-ones-b needs k >= 1".into()));
                }
                let mut lhs = vec![k + 1, 1, *k];
                lhs.extend(std::iter::repeat(1).take((2 * s + 1) as usize));
                let mut rhs = vec![k + 2];
                rhs.extend(std::iter::repeat(1).take((2 * s + 1) as usize));
                (
                    format!("tail-of-ones-b(k={k}, s={s})"),
                    lhs,
                    rhs,
                    LaurentPoly::q_int(*k as i64 + 1),
                )
            }
            Identity::UnitFirst { k, r, middle } => {
                if *k < 1 || *r < 1 {
                    return Err(Error::InvalidParams("unit-first needs k, r >= 1".into()));
                }
                validated_middle(middle)?;
                let mut lhs = vec![1, *k, r + 1];
                lhs.extend_from_slice(middle);
                lhs.push(*r);
                let mut rhs = vec![r + 2];
                rhs.extend_from_slice(middle);
                rhs.push(*r);
                (
                    format!("unit-first(k={k}, r={r}, X=({}))", join(middle)),
                    lhs,
                    rhs,
                    LaurentPoly::q_int(*k as i64 + 1),
                )
            }
            Identity::UnitSecond { k, r, middle } => {
                if *k < 1 || *r < 1 {
                    return Err(Error::InvalidParams("unit-second needs k, r >= 1".into()));
                }
                validated_middle(middle)?;
                let mut lhs = vec![*k, 1, k + r];
                lhs.extend_from_slice(middle);
                lhs.push(*r);
                let mut rhs = vec![k + r + 1];
                rhs.extend_from_slice(middle);
                rhs.push(*r);
                (
                    format!("unit-second(k={k}, r={r}, X=({}))", join(middle)),
                    lhs,
                    rhs,
                    LaurentPoly::q_int(*k as i64 + 1),
                )
            }
            Identity::UnitFirstReduced { k, rho } => {
                if *k < 1 {
                    return Err(Error::InvalidParams("unit-first-reduced needs k >= 1".into()));
                }
                validated_rho(rho)?;
                let mut lhs = vec![1, *k];
                lhs.extend_from_slice(rho.add_to_first(1).parts());
                let rhs = rho.add_to_first(2).parts().to_vec();
                (
                    format!("unit-first-reduced(k={k}, rho=({rho}))"),
                    lhs,
                    rhs,
                    LaurentPoly::q_int(*k as i64 + 1),
                )
            }
            Identity::UnitSecondReduced { k, rho } => {
                if *k < 1 {
                    return Err(Error::InvalidParams(
                        "unit-second-reduced needs k >= 1".into(),
                    ));
                }
                validated_rho(rho)?;
                let mut lhs = vec![*k, 1];
                lhs.extend_from_slice(rho.add_to_first(*k).parts());
                let rhs = rho.add_to_first(k + 1).parts().to_vec();
                (
                    format!("unit-second-reduced(k={k}, rho=({rho}))"),
                    lhs,
                    rhs,
                    LaurentPoly::q_int(*k as i64 + 1),
                )
            }
            Identity::EqualParts { k, s } => {
                if *k < 2 {
                    return Err(Error::InvalidParams("equal-parts needs k >= 2".into()));
                }
                let mut lhs = vec![2 * k];
                lhs.extend(std::iter::repeat(*k).take((2 * s + 1) as usize));
                let mut rhs = vec![k + 1, k - 1];
                rhs.extend(std::iter::repeat(*k).take((2 * s) as usize));
                let factor =
                    &LaurentPoly::one() + &LaurentPoly::q_power(*k as i64);
                (format!("equal-parts(k={k}, s={s})"), lhs, rhs, factor)
            }
        };
    let lhs_composition = Composition::new(lhs_parts)?;
    let rhs_composition = Composition::new(rhs_parts)?;
    let lhs = circular_rank(&lhs_composition)?;
    let rhs = circular_rank(&rhs_composition)?;
    let holds = lhs == &factor * &rhs;
    Ok(IdentityCheck {
        label,
        lhs_composition,
        rhs_composition,
        factor,
        lhs,
        rhs,
        holds,
    })
}

fn join(parts: &[u32]) -> String {
    parts
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::fence;

    fn comp(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    fn poly(coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_int_coeffs(0, coeffs)
    }

    #[test]
    fn closed_composition_normalization() {
        assert_eq!(closed_composition(&comp(&[2, 1, 1, 3])).unwrap(), comp(&[2, 1, 1, 4]));
        assert_eq!(closed_composition(&comp(&[2, 1, 1])).unwrap(), comp(&[2, 1, 1, 1]));
        assert_eq!(closed_composition(&comp(&[3, 0])).unwrap(), comp(&[3, 1]));
        assert_eq!(closed_composition(&comp(&[0, 0])).unwrap(), comp(&[0, 1]));
    }

    #[test]
    fn matrix_matches_oracle_on_worked_example() {
        let alpha = comp(&[2, 1, 1, 3]);
        let rank = rank_of(&alpha).unwrap();
        assert_eq!(rank, poly(&[1, 3, 5, 6, 6, 5, 3, 2, 1]));
        assert_eq!(rank, fence(&alpha).unwrap().rank_poly().unwrap());
        let oriented = OrientedPoset::fence(&alpha).unwrap();
        assert_eq!(rank_matrix_of(&alpha).unwrap(), oriented.rank_matrix().unwrap());
        assert_eq!(
            dual_rank_matrix_of(&alpha).unwrap(),
            oriented.dual_rank_matrix().unwrap()
        );
    }

    #[test]
    fn circular_rank_matches_oracle() {
        for parts in [
            vec![1, 1],
            vec![2, 1, 1, 3],
            vec![5, 3],
            vec![1, 2, 1, 1, 1, 1],
            vec![4, 2],
        ] {
            let alpha = comp(&parts);
            assert_eq!(
                circular_rank(&alpha).unwrap(),
                circular_rank_oracle(&alpha).unwrap(),
                "mismatch at ({alpha})"
            );
        }
        assert_eq!(
            circular_rank(&comp(&[2, 1, 1, 3])).unwrap(),
            poly(&[1, 2, 3, 4, 4, 3, 2, 1])
        );
        assert_eq!(
            circular_rank(&comp(&[5, 3])).unwrap(),
            poly(&[1, 1, 2, 3, 3, 3, 2, 1, 1])
        );
        assert!(circular_rank(&comp(&[1, 1, 1])).is_err());
    }

    #[test]
    fn circular_rank_boundary_zeros() {
        // (u, 0) and (0, d) are closed chains: 1 + q^size.
        for k in 1..=6u32 {
            let rising = comp(&[k, 0]);
            let falling = comp(&[0, k]);
            let expect = &LaurentPoly::one() + &LaurentPoly::q_power(k as i64);
            assert_eq!(circular_rank(&rising).unwrap(), expect);
            assert_eq!(circular_rank(&falling).unwrap(), expect);
            assert_eq!(circular_rank_oracle(&rising).unwrap(), expect);
            assert_eq!(circular_rank_oracle(&falling).unwrap(), expect);
        }
        // Rotations with boundary zeros still match the oracle.
        for parts in [vec![0, 1, 1, 2], vec![0, 2, 1, 1], vec![1, 1, 2, 0], vec![0, 1, 2, 0]] {
            let alpha = comp(&parts);
            assert_eq!(
                circular_rank(&alpha).unwrap(),
                circular_rank_oracle(&alpha).unwrap(),
                "mismatch at ({alpha})"
            );
        }
    }

    #[test]
    fn divisibility_worked_example() {
        // circular (1,2,1,1,1,1) = (1 + q) * (q^6 + 2q^5 + 2q^4 + 3q^3 + 2q^2 + 2q + 1)
        let big = circular_rank(&comp(&[1, 2, 1, 1, 1, 1])).unwrap();
        let quotient = big.divide_exact(&poly(&[1, 1])).unwrap();
        assert_eq!(quotient, poly(&[1, 2, 2, 3, 2, 2, 1]));
        // ... which is itself the circular rank of (3,1,1,1).
        assert_eq!(quotient, circular_rank(&comp(&[3, 1, 1, 1])).unwrap());
    }

    #[test]
    fn psi_annihilators() {
        // Even palindromes: psi_plus kills clmat(rho) and clmat(0, rho, 0).
        for rho in [vec![1, 1], vec![2, 2], vec![1, 2, 2, 1], vec![3, 1, 1, 3]] {
            let m = closure_matrix(&comp(&rho));
            assert!(psi_plus(&m).is_zero(), "psi+ failed at {rho:?}");
            let mut padded = vec![0];
            padded.extend(&rho);
            padded.push(0);
            let mp = closure_matrix(&comp(&padded));
            assert!(psi_plus(&mp).is_zero(), "psi+ failed at padded {rho:?}");
        }
        // Odd palindromes: psi_minus kills both padded forms...
        for rho in [vec![1], vec![2], vec![1, 2, 1], vec![2, 1, 2], vec![1, 1, 1]] {
            let mut lead = vec![0];
            lead.extend(&rho);
            let mut trail = rho.clone();
            trail.push(0);
            assert!(psi_minus(&closure_matrix(&comp(&lead))).is_zero());
            assert!(psi_minus(&closure_matrix(&comp(&trail))).is_zero());
        }
        // ... while psi_plus does not (the corrected reading matters):
        let u0 = closure_matrix(&comp(&[1, 0]));
        assert_eq!(psi_plus(&u0), LaurentPoly::q_power(1));
        // Peeling relations behind the induction.
        let x = closure_matrix(&comp(&[2, 1, 1, 3])); // arbitrary test matrix
        let u = RankMatrix::up_step();
        let d = RankMatrix::down_step();
        let q = LaurentPoly::q_power(1);
        assert_eq!(psi_plus(&(&(&u * &x) * &d)), &q * &psi_plus(&x));
        assert_eq!(psi_plus(&(&(&d * &x) * &u)), &q * &psi_plus(&x));
        assert_eq!(psi_minus(&(&(&u * &x) * &u)), &q * &psi_minus(&x));
        assert_eq!(psi_minus(&(&(&d * &x) * &d)), &q * &psi_minus(&x));
        assert!(psi_plus(&RankMatrix::identity()).is_zero());
        assert!(psi_minus(&RankMatrix::identity()).is_zero());
        assert!(psi_minus(&u).is_zero());
        assert!(psi_minus(&d).is_zero());
    }

    #[test]
    fn identity_instances() {
        // tail-of-ones-a at k=2: s=0 gives (2,2,1,1); s=1 gives (2,2,1,1,1,1).
        let c = check_identity(&Identity::TailOfOnesA { k: 2, s: 0 }).unwrap();
        assert_eq!(c.lhs_composition, comp(&[2, 2, 1, 1]));
        assert_eq!(c.rhs_composition, comp(&[3, 1]));
        assert!(c.holds);
        let c = check_identity(&Identity::TailOfOnesA { k: 2, s: 1 }).unwrap();
        assert_eq!(c.lhs_composition, comp(&[2, 2, 1, 1, 1, 1]));
        assert_eq!(c.rhs_composition, comp(&[3, 1, 1, 1]));
        assert!(c.holds);

        let c = check_identity(&Identity::TailOfOnesB { k: 2, s: 0 }).unwrap();
        assert_eq!(c.lhs_composition, comp(&[3, 1, 2, 1]));
        assert_eq!(c.rhs_composition, comp(&[4, 1]));
        assert!(c.holds);

        let c = check_identity(&Identity::UnitFirst {
            k: 2,
            r: 1,
            middle: vec![2, 2],
        })
        .unwrap();
        assert_eq!(c.lhs_composition, comp(&[1, 2, 2, 2, 2, 1]));
        assert_eq!(c.rhs_composition, comp(&[3, 2, 2, 1]));
        assert!(c.holds);

        let c = check_identity(&Identity::UnitSecond {
            k: 3,
            r: 2,
            middle: vec![],
        })
        .unwrap();
        assert_eq!(c.lhs_composition, comp(&[3, 1, 5, 2]));
        assert_eq!(c.rhs_composition, comp(&[6, 2]));
        assert!(c.holds);

        let c = check_identity(&Identity::UnitFirstReduced {
            k: 2,
            rho: comp(&[1, 1]),
        })
        .unwrap();
        assert_eq!(c.lhs_composition, comp(&[1, 2, 2, 1]));
        assert_eq!(c.rhs_composition, comp(&[3, 1]));
        assert!(c.holds);

        let c = check_identity(&Identity::UnitSecondReduced {
            k: 3,
            rho: comp(&[2, 2]),
        })
        .unwrap();
        assert_eq!(c.lhs_composition, comp(&[3, 1, 5, 2]));
        assert_eq!(c.rhs_composition, comp(&[6, 2]));
        assert!(c.holds);

        // equal-parts at k=2, s=0: (4,2) = (1+q^2) * (3,1).
        let c = check_identity(&Identity::EqualParts { k: 2, s: 0 }).unwrap();
        assert_eq!(c.lhs_composition, comp(&[4, 2]));
        assert_eq!(c.rhs_composition, comp(&[3, 1]));
        assert_eq!(c.factor, poly(&[1, 0, 1]));
        assert!(c.holds);

        // Bad parameters are rejected.
        assert!(check_identity(&Identity::EqualParts { k: 1, s: 0 }).is_err());
        assert!(check_identity(&Identity::UnitFirst {
            k: 1,
            r: 1,
            middle: vec![1, 2],
        })
        .is_err());
    }
}
