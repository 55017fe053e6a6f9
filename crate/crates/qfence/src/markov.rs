//! q-deformed Markov numbers via Christoffel words.
//!
//! Each lower Christoffel word `w` in `{a, b}` maps to a 2x2 matrix by
//! substituting a q-deformed Cohn pair for the letters. The trace of the
//! resulting product is divisible by `[3]_q`, and the quotient is the
//! q-Markov number of `w` — a polynomial specializing to the classical
//! Markov number at `q = 1`, and equal to the circular fence rank of the
//! composition `(3, 1) ++ alpha(middle(w))` where `a -> (1, 1)` and
//! `b -> (2, 2)`.
//!
//! The letter matrices are themselves dual rank matrices of small oriented
//! posets (a 2-chain for `a`, the fence of `(1, 2)` for `b`), so the whole
//! construction stays inside the oriented-poset calculus.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::fence;
use crate::oriented::{OrientedPoset, RankMatrix};
use crate::poset::Composition;
use crate::qpoly::LaurentPoly;

/// Maximum tree depth / path length accepted by the tree walkers. Word
/// lengths grow Fibonacci-fast along a branch, so this is already generous.
pub const MAX_TREE_DEPTH: usize = 24;

/// A lower Christoffel word over `{a, b}` (single letters included).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChristoffelWord {
    letters: String,
}

fn lower_christoffel(count_a: u64, count_b: u64) -> String {
    let n = count_a + count_b;
    let p = count_b;
    (1..=n)
        .map(|k| if k * p / n == (k - 1) * p / n { 'a' } else { 'b' })
        .collect()
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl ChristoffelWord {
    /// Validates that `s` is a lower Christoffel word: coprime letter counts
    /// and letters placed by the floor-of-slope rule.
    pub fn parse(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::InvalidWord("empty word".into()));
        }
        if let Some(c) = s.chars().find(|&c| c != 'a' && c != 'b') {
            return Err(Error::InvalidWord(format!(
                "unexpected letter `{c}` (alphabet is a, b)"
            )));
        }
        let count_a = s.chars().filter(|&c| c == 'a').count() as u64;
        let count_b = s.len() as u64 - count_a;
        if gcd(count_a, count_b) != 1 {
            return Err(Error::InvalidWord(format!(
                "`{s}` has {count_a} a's and {count_b} b's, which are not coprime"
            )));
        }
        let expected = lower_christoffel(count_a, count_b);
        if s != expected {
            return Err(Error::InvalidWord(format!(
                "`{s}` is not a lower Christoffel word (the word with the same letter counts is `{expected}`)"
            )));
        }
        Ok(ChristoffelWord {
            letters: s.to_string(),
        })
    }

    /// The lower Christoffel word with the given letter counts.
    pub fn from_counts(count_a: u64, count_b: u64) -> Result<Self> {
        if count_a + count_b == 0 {
            return Err(Error::InvalidWord("empty word".into()));
        }
        if gcd(count_a, count_b) != 1 {
            return Err(Error::InvalidWord(format!(
                "letter counts {count_a}, {count_b} are not coprime"
            )));
        }
        Ok(ChristoffelWord {
            letters: lower_christoffel(count_a, count_b),
        })
    }

    pub fn as_str(&self) -> &str {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn count_a(&self) -> u64 {
        self.letters.chars().filter(|&c| c == 'a').count() as u64
    }

    pub fn count_b(&self) -> u64 {
        self.len() as u64 - self.count_a()
    }

    /// `true` for the single letters `a` and `b`, which sit outside the
    /// binary tree of proper Christoffel words.
    pub fn is_single_letter(&self) -> bool {
        self.len() == 1
    }

    /// The word with first and last letter removed. Proper Christoffel words
    /// start with `a` and end with `b`; their middle drives the fence
    /// composition.
    pub fn middle(&self) -> Result<&str> {
        if self.is_single_letter() {
            return Err(Error::TrivialWord(self.letters.clone()));
        }
        Ok(&self.letters[1..self.letters.len() - 1])
    }
}

impl std::fmt::Display for ChristoffelWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.letters)
    }
}

/// A node of the Christoffel tree: `middle = left + right` as words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordTriple {
    pub left: ChristoffelWord,
    pub middle: ChristoffelWord,
    pub right: ChristoffelWord,
}

impl WordTriple {
    pub fn root() -> Self {
        WordTriple {
            left: ChristoffelWord::parse("a").unwrap(),
            middle: ChristoffelWord::parse("ab").unwrap(),
            right: ChristoffelWord::parse("b").unwrap(),
        }
    }

    fn concat(u: &ChristoffelWord, v: &ChristoffelWord) -> Result<ChristoffelWord> {
        let mut s = String::with_capacity(u.len() + v.len());
        s.push_str(u.as_str());
        s.push_str(v.as_str());
        ChristoffelWord::parse(&s)
    }

    pub fn left_child(&self) -> Result<WordTriple> {
        Ok(WordTriple {
            left: self.left.clone(),
            middle: Self::concat(&self.left, &self.middle)?,
            right: self.middle.clone(),
        })
    }

    pub fn right_child(&self) -> Result<WordTriple> {
        Ok(WordTriple {
            left: self.middle.clone(),
            middle: Self::concat(&self.middle, &self.right)?,
            right: self.right.clone(),
        })
    }
}

/// Walks the Christoffel tree along a path of `L`/`R` steps from the root
/// triple `(a, ab, b)`.
pub fn triple_at_path(path: &str) -> Result<WordTriple> {
    if path.len() > MAX_TREE_DEPTH {
        return Err(Error::TooLarge {
            what: "tree path",
            got: path.len(),
            limit: MAX_TREE_DEPTH,
        });
    }
    let mut node = WordTriple::root();
    for c in path.chars() {
        node = match c {
            'L' | 'l' => node.left_child()?,
            'R' | 'r' => node.right_child()?,
            _ => {
                return Err(Error::Parse(format!(
                    "bad path step `{c}` (expected L or R)"
                )))
            }
        };
    }
    Ok(node)
}

/// Locates the proper Christoffel word `w` in the tree, returning its
/// `L`/`R` path from the root (empty for `ab`).
pub fn tree_path(w: &ChristoffelWord) -> Result<String> {
    if w.is_single_letter() {
        return Err(Error::TrivialWord(w.as_str().into()));
    }
    // Slopes count_b/count_a increase strictly left to right across each
    // tree level, so this is a binary search.
    let slope_lt = |x: &ChristoffelWord, y: &ChristoffelWord| {
        (x.count_b() as u128) * (y.count_a() as u128)
            < (y.count_b() as u128) * (x.count_a() as u128)
    };
    let mut node = WordTriple::root();
    let mut path = String::new();
    loop {
        if node.middle == *w {
            return Ok(path);
        }
        if path.len() >= MAX_TREE_DEPTH {
            return Err(Error::TooLarge {
                what: "tree path",
                got: path.len() + 1,
                limit: MAX_TREE_DEPTH,
            });
        }
        if slope_lt(w, &node.middle) {
            path.push('L');
            node = node.left_child()?;
        } else {
            path.push('R');
            node = node.right_child()?;
        }
    }
}

/// One node of the breadth-first tree listing.
#[derive(Clone, Debug)]
pub struct TreeNode {
    pub path: String,
    pub triple: WordTriple,
}

/// All tree nodes with path length at most `depth`, breadth-first, left to
/// right (`2^(depth+1) - 1` nodes).
pub fn tree_to_depth(depth: usize) -> Result<Vec<TreeNode>> {
    if depth > MAX_TREE_DEPTH {
        return Err(Error::TooLarge {
            what: "tree depth",
            got: depth,
            limit: MAX_TREE_DEPTH,
        });
    }
    let mut nodes = vec![TreeNode {
        path: String::new(),
        triple: WordTriple::root(),
    }];
    let mut level_start = 0;
    for _ in 0..depth {
        let level_end = nodes.len();
        for i in level_start..level_end {
            let TreeNode { path, triple } = nodes[i].clone();
            nodes.push(TreeNode {
                path: format!("{path}L"),
                triple: triple.left_child()?,
            });
            nodes.push(TreeNode {
                path: format!("{path}R"),
                triple: triple.right_child()?,
            });
        }
        level_start = level_end;
    }
    // Breadth-first order: sort by (depth, path) with L < R, which is the
    // order the loop already produced level by level.
    Ok(nodes)
}

/// Matrix normalization: `Standard` uses the raw Cohn pair (determinants
/// `q^2` and `q^4`); `Unimodular` divides each letter by `q` or `q^2`, so
/// every word matrix has determinant 1 and the Markov equation closes up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    Standard,
    Unimodular,
}

/// The oriented poset whose dual rank matrix is the letter's Cohn matrix:
/// a 2-node descending chain for `a`, the fence of `(1, 2)` for `b`.
pub fn cohn_poset(letter: char) -> Result<OrientedPoset> {
    match letter {
        'a' => OrientedPoset::down_chain(1),
        'b' => OrientedPoset::fence(&Composition::new(vec![1, 2])?),
        _ => Err(Error::InvalidWord(format!(
            "unexpected letter `{letter}` (alphabet is a, b)"
        ))),
    }
}

/// The q-deformed Cohn matrix of a single letter, standard convention.
pub fn cohn_matrix(letter: char) -> Result<RankMatrix> {
    cohn_poset(letter)?.dual_rank_matrix()
}

/// The unimodular-normalization exponent of a word: 1 per `a`, 2 per `b`.
fn shift_exponent(w: &ChristoffelWord) -> i64 {
    w.count_a() as i64 + 2 * w.count_b() as i64
}

/// The product of letter Cohn matrices over `w`, in the given convention.
pub fn word_matrix(w: &ChristoffelWord, convention: Convention) -> Result<RankMatrix> {
    let a = cohn_matrix('a')?;
    let b = cohn_matrix('b')?;
    let mut acc = RankMatrix::identity();
    for c in w.as_str().chars() {
        acc = &acc * if c == 'a' { &a } else { &b };
    }
    Ok(match convention {
        Convention::Standard => acc,
        Convention::Unimodular => acc.scaled_by_power(-shift_exponent(w)),
    })
}

/// `tr` of the word matrix.
pub fn word_trace(w: &ChristoffelWord, convention: Convention) -> Result<LaurentPoly> {
    Ok(word_matrix(w, convention)?.trace())
}

/// The fence composition of a proper Christoffel word:
/// `(3, 1) ++ alpha(middle(w))` with `a -> (1, 1)`, `b -> (2, 2)`.
pub fn fence_composition(w: &ChristoffelWord) -> Result<Composition> {
    let middle = w.middle()?;
    let mut parts = vec![3u32, 1];
    for c in middle.chars() {
        match c {
            'a' => parts.extend([1, 1]),
            _ => parts.extend([2, 2]),
        }
    }
    Composition::new(parts)
}

/// The q-Markov number of `w`: `tr(word matrix) / [3]_q`, a polynomial with
/// nonnegative coefficients summing to the classical Markov number.
pub fn q_markov(w: &ChristoffelWord) -> Result<LaurentPoly> {
    let trace = word_trace(w, Convention::Standard)?;
    trace
        .divide_exact(&LaurentPoly::q_int(3))
        .map_err(|_| Error::InternalMismatch(format!("tr of `{w}` is not divisible by [3]_q")))
}

/// The classical Markov number of `w`.
pub fn markov_number(w: &ChristoffelWord) -> Result<BigInt> {
    Ok(q_markov(w)?.eval_one())
}

/// One row of the reference table relating Christoffel words,
/// fence compositions, and q-Markov coefficient lists.
#[derive(Clone, Copy, Debug)]
pub struct ReferenceRow {
    pub label: &'static str,
    pub alpha: &'static [u32],
    pub coeffs: &'static [i64],
}

/// The eight-row reference table of known q-Markov data. One row (index 5)
/// carries a label inconsistent with its own composition and coefficients —
/// they belong to `abbb`, not `abb` — and [`reference_table_report`] flags
/// exactly that row.
pub const REFERENCE_TABLE: &[ReferenceRow] = &[
    ReferenceRow {
        label: "ab",
        alpha: &[3, 1],
        coeffs: &[1, 1, 1, 1, 1],
    },
    ReferenceRow {
        label: "aab",
        alpha: &[3, 1, 1, 1],
        coeffs: &[1, 2, 2, 3, 2, 2, 1],
    },
    ReferenceRow {
        label: "abb",
        alpha: &[3, 1, 2, 2],
        coeffs: &[1, 2, 4, 5, 5, 5, 4, 2, 1],
    },
    ReferenceRow {
        label: "aaab",
        alpha: &[3, 1, 1, 1, 1, 1],
        coeffs: &[1, 3, 4, 6, 6, 6, 4, 3, 1],
    },
    ReferenceRow {
        label: "ababb",
        alpha: &[3, 1, 2, 2, 1, 1, 2, 2],
        coeffs: &[
            1, 4, 11, 22, 36, 50, 60, 65, 60, 50, 36, 22, 11, 4, 1,
        ],
    },
    ReferenceRow {
        label: "abb",
        alpha: &[3, 1, 2, 2, 2, 2],
        coeffs: &[1, 3, 8, 14, 20, 25, 27, 25, 20, 14, 8, 3, 1],
    },
    ReferenceRow {
        label: "aaaab",
        alpha: &[3, 1, 1, 1, 1, 1, 1, 1],
        coeffs: &[1, 4, 7, 11, 14, 15, 14, 11, 7, 4, 1],
    },
    ReferenceRow {
        label: "abbbb",
        alpha: &[3, 1, 2, 2, 2, 2, 2, 2],
        coeffs: &[
            1, 4, 13, 29, 53, 82, 110, 131, 139, 131, 110, 82, 53, 29, 13, 4, 1,
        ],
    },
];

/// The verdict on one reference-table row.
#[derive(Clone, Debug)]
pub struct TableRowCheck {
    pub index: usize,
    pub label: &'static str,
    /// The row's own composition and coefficient list agree (circular fence
    /// rank of `alpha` has exactly these coefficients).
    pub coeffs_match_alpha: bool,
    /// The labeled word's q-Markov number reproduces the row's coefficients.
    pub label_matches_coeffs: bool,
    /// The word whose fence composition the row actually printed.
    pub actual_word: Option<String>,
}

/// Checks every reference-table row both ways: composition against
/// coefficients, and label against coefficients. The known bad row keeps
/// its printed label but reports the word its data belongs to.
pub fn reference_table_report() -> Result<Vec<TableRowCheck>> {
    let mut checks = Vec::with_capacity(REFERENCE_TABLE.len());
    for (index, row) in REFERENCE_TABLE.iter().enumerate() {
        let alpha = Composition::new(row.alpha.to_vec())?;
        let expected = LaurentPoly::from_int_coeffs(0, row.coeffs);
        let from_alpha = fence::circular_rank(&alpha)?;
        let word = ChristoffelWord::parse(row.label)?;
        let from_label = q_markov(&word)?;
        let coeffs_match_alpha = from_alpha == expected;
        let label_matches_coeffs = from_label == expected;
        let actual_word = if label_matches_coeffs {
            None
        } else {
            find_word_with_composition(&alpha)?
        };
        checks.push(TableRowCheck {
            index,
            label: row.label,
            coeffs_match_alpha,
            label_matches_coeffs,
            actual_word,
        });
    }
    Ok(checks)
}

/// Inverts [`fence_composition`]: reads the middle letters back off the
/// composition, if it has the `(3, 1) ++ blocks` shape.
fn find_word_with_composition(alpha: &Composition) -> Result<Option<String>> {
    let parts = alpha.parts();
    if parts.len() < 2 || parts[0] != 3 || parts[1] != 1 || parts.len() % 2 != 0 {
        return Ok(None);
    }
    let mut middle = String::new();
    for chunk in parts[2..].chunks(2) {
        match chunk {
            [1, 1] => middle.push('a'),
            [2, 2] => middle.push('b'),
            _ => return Ok(None),
        }
    }
    let word = format!("a{middle}b");
    match ChristoffelWord::parse(&word) {
        Ok(_) => Ok(Some(word)),
        Err(_) => Ok(None),
    }
}

/// The q-Markov equation checked at one tree node, as an exact polynomial
/// identity in Laurent arithmetic.
#[derive(Clone, Debug)]
pub struct EquationCheck {
    pub path: String,
    pub words: (String, String, String),
    /// With `(x, y, z)` the q-Markov numbers of the triple and
    /// `c_w` the word's unimodular shift exponent:
    /// `(x/q^{c_x})^2 + (y/q^{c_y})^2 + (z/q^{c_z})^2 + (q-1)^2 q^{-3}
    ///  = [3]_q xyz q^{-(c_x+c_y+c_z)}`.
    pub holds: bool,
    /// The classical Markov equation `m_x^2 + m_y^2 + m_z^2 = 3 m_x m_y m_z`
    /// at `q = 1`.
    pub classical_holds: bool,
}

/// Exhaustively checks the q-Markov equation at one triple; see
/// [`EquationCheck::holds`] for the statement.
pub fn equation_holds(triple: &WordTriple) -> Result<bool> {
    let x = q_markov(&triple.left)?;
    let y = q_markov(&triple.middle)?;
    let z = q_markov(&triple.right)?;
    let c_x = shift_exponent(&triple.left);
    let c_z = shift_exponent(&triple.right);
    let c_y = c_x + c_z;
    let sq_shifted = |p: &LaurentPoly, c: i64| (p * p).shifted(-2 * c);
    let perturbation = {
        let q_minus_one = &LaurentPoly::q_power(1) - &LaurentPoly::one();
        (&q_minus_one * &q_minus_one).shifted(-3)
    };
    let lhs = &(&(&sq_shifted(&x, c_x) + &sq_shifted(&y, c_y)) + &sq_shifted(&z, c_z))
        + &perturbation;
    let rhs = (&(&(&LaurentPoly::q_int(3) * &x) * &y) * &z).shifted(-(c_x + c_y + c_z));
    Ok(lhs == rhs)
}

/// Checks the q-Markov equation on every tree node with path length at most
/// `depth`.
pub fn equation_check(depth: usize) -> Result<Vec<EquationCheck>> {
    let mut out = Vec::new();
    for node in tree_to_depth(depth)? {
        let holds = equation_holds(&node.triple)?;
        let m = |w: &ChristoffelWord| markov_number(w);
        let (mx, my, mz) = (
            m(&node.triple.left)?,
            m(&node.triple.middle)?,
            m(&node.triple.right)?,
        );
        let classical_holds = &mx * &mx + &my * &my + &mz * &mz == 3 * mx * my * mz;
        out.push(EquationCheck {
            path: node.path,
            words: (
                node.triple.left.as_str().into(),
                node.triple.middle.as_str().into(),
                node.triple.right.as_str().into(),
            ),
            holds,
            classical_holds,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> ChristoffelWord {
        ChristoffelWord::parse(s).unwrap()
    }

    fn poly(coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_int_coeffs(0, coeffs)
    }

    #[test]
    fn word_validation() {
        for good in ["a", "b", "ab", "aab", "abb", "aabab", "ababb", "aabaabab"] {
            assert!(ChristoffelWord::parse(good).is_ok(), "{good}");
        }
        for bad in ["", "ba", "aa", "abab", "abba", "axb", "aabb"] {
            assert!(ChristoffelWord::parse(bad).is_err(), "{bad}");
        }
        assert_eq!(ChristoffelWord::from_counts(3, 2).unwrap().as_str(), "aabab");
        assert_eq!(word("aabab").middle().unwrap(), "aba");
        assert!(word("a").middle().is_err());
    }

    #[test]
    fn cohn_matrices_and_posets() {
        let a = cohn_matrix('a').unwrap();
        assert_eq!(a.entry(0, 0), &poly(&[0, 1, 1]).shifted(0));
        assert_eq!(a.entry(0, 1), &LaurentPoly::one());
        assert_eq!(a.entry(1, 0), &LaurentPoly::q_power(1));
        assert_eq!(a.entry(1, 1), &LaurentPoly::one());
        assert_eq!(a.det(), LaurentPoly::q_power(2));
        let b = cohn_matrix('b').unwrap();
        assert_eq!(b.entry(0, 0), &LaurentPoly::from_int_coeffs(1, &[1, 2, 1, 1]));
        assert_eq!(b.entry(0, 1), &poly(&[1, 1]));
        assert_eq!(b.entry(1, 0), &LaurentPoly::from_int_coeffs(1, &[1, 1]));
        assert_eq!(b.entry(1, 1), &LaurentPoly::one());
        assert_eq!(b.det(), LaurentPoly::q_power(4));
        assert!(cohn_matrix('c').is_err());
    }

    #[test]
    fn unimodular_convention_has_det_one() {
        for w in ["a", "b", "ab", "aab", "aabab"] {
            let m = word_matrix(&word(w), Convention::Unimodular).unwrap();
            assert_eq!(m.det(), LaurentPoly::one(), "{w}");
        }
    }

    #[test]
    fn tree_navigation() {
        let root = WordTriple::root();
        assert_eq!(root.middle.as_str(), "ab");
        assert_eq!(root.left_child().unwrap().middle.as_str(), "aab");
        assert_eq!(root.right_child().unwrap().middle.as_str(), "abb");
        assert_eq!(triple_at_path("LR").unwrap().middle.as_str(), "aabab");
        assert_eq!(triple_at_path("RL").unwrap().middle.as_str(), "ababb");
        assert_eq!(tree_path(&word("aabab")).unwrap(), "LR");
        assert_eq!(tree_path(&word("ab")).unwrap(), "");
        assert_eq!(tree_path(&word("abbbb")).unwrap(), "RRR");
        assert!(tree_path(&word("a")).is_err());
        assert!(triple_at_path("LX").is_err());
        let nodes = tree_to_depth(2).unwrap();
        assert_eq!(nodes.len(), 7);
        let middles: Vec<&str> = nodes
            .iter()
            .map(|n| n.triple.middle.as_str())
            .collect();
        assert_eq!(
            middles,
            ["ab", "aab", "abb", "aaab", "aabab", "ababb", "abbb"]
        );
    }

    #[test]
    fn small_q_markov_numbers() {
        assert_eq!(q_markov(&word("a")).unwrap(), LaurentPoly::one());
        assert_eq!(q_markov(&word("b")).unwrap(), poly(&[1, 0, 1]));
        assert_eq!(q_markov(&word("ab")).unwrap(), poly(&[1, 1, 1, 1, 1]));
        assert_eq!(markov_number(&word("aab")).unwrap(), 13.into());
        assert_eq!(markov_number(&word("abb")).unwrap(), 29.into());
        assert_eq!(markov_number(&word("aabab")).unwrap(), 194.into());
        // The worked depth-2 example in full.
        assert_eq!(
            q_markov(&word("aabab")).unwrap(),
            poly(&[1, 4, 9, 16, 23, 29, 30, 29, 23, 16, 9, 4, 1])
        );
    }

    #[test]
    fn q_markov_equals_circular_fence_rank() {
        for w in ["ab", "aab", "abb", "aaab", "abbb", "aabab", "ababb"] {
            let w = word(w);
            let alpha = fence_composition(&w).unwrap();
            assert_eq!(
                q_markov(&w).unwrap(),
                fence::circular_rank(&alpha).unwrap(),
                "{w}"
            );
        }
        assert_eq!(
            fence_composition(&word("aabab")).unwrap(),
            Composition::new(vec![3, 1, 1, 1, 2, 2, 1, 1]).unwrap()
        );
        assert!(fence_composition(&word("b")).is_err());
    }

    #[test]
    fn reference_table_flags_exactly_the_bad_row() {
        let checks = reference_table_report().unwrap();
        assert_eq!(checks.len(), 8);
        for check in &checks {
            assert!(check.coeffs_match_alpha, "row {} composition", check.index);
            if check.index == 5 {
                assert!(!check.label_matches_coeffs, "row 5 should be flagged");
                assert_eq!(check.actual_word.as_deref(), Some("abbb"));
            } else {
                assert!(
                    check.label_matches_coeffs,
                    "row {} label `{}`",
                    check.index, check.label
                );
            }
        }
    }

    #[test]
    fn markov_equation_holds_on_small_tree() {
        let checks = equation_check(2).unwrap();
        assert_eq!(checks.len(), 7);
        for check in &checks {
            assert!(check.holds, "q-identity at `{}`", check.path);
            assert!(check.classical_holds, "classical at `{}`", check.path);
        }
    }

    #[test]
    fn trace_is_divisible_only_after_three() {
        // tr(w)/[3] has nonnegative coefficients and the right value at 1.
        for w in ["aaab", "abbb"] {
            let w = word(w);
            let p = q_markov(&w).unwrap();
            assert!(p.coeffs().iter().all(|c| c >= &0.into()), "{w}");
            assert_eq!(
                p.eval_one() * 3,
                word_trace(&w, Convention::Standard).unwrap().eval_one(),
                "{w}"
            );
        }
    }
}
