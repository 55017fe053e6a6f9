//! End-to-end acceptance checks. Each test exercises one verification batch
//! under a hard wall-clock budget and prints a single PASS/FAIL line
//! (visible with `cargo test --test acceptance -- --nocapture`).

use std::time::{Duration, Instant};

use qfence::fence;
use qfence::oriented::RankMatrix;
use qfence::poset::Composition;
use qfence::qpoly::LaurentPoly;
use qfence::qrational::{self, Rational};
use qfence::verify::{self, SuiteReport};

fn comp(parts: &[u32]) -> Composition {
    Composition::new(parts.to_vec()).expect("valid composition literal")
}

fn poly(coeffs: &[i64]) -> LaurentPoly {
    LaurentPoly::from_int_coeffs(0, coeffs)
}

fn ensure(cond: bool, label: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(format!("`{label}` does not hold"))
    }
}

fn suite_outcome(report: SuiteReport) -> Result<(), String> {
    if report.passed {
        Ok(())
    } else {
        Err(format!("\n{}", report.render_text()))
    }
}

/// Runs one acceptance criterion, enforcing its wall-clock budget, and
/// prints exactly one PASS/FAIL line.
fn criterion(name: &str, budget: Duration, run: impl FnOnce() -> Result<(), String>) {
    let started = Instant::now();
    let outcome = run();
    let elapsed = started.elapsed();
    match outcome {
        Ok(()) if elapsed <= budget => {
            println!("PASS {name} ({elapsed:.2?} within {budget:?})");
        }
        Ok(()) => {
            println!("FAIL {name}: budget exceeded ({elapsed:.2?} > {budget:?})");
            panic!("{name}: budget exceeded ({elapsed:?} > {budget:?})");
        }
        Err(e) => {
            println!("FAIL {name}: {e}");
            panic!("{name}: {e}");
        }
    }
}

#[test]
fn worked_examples() {
    criterion("worked examples", Duration::from_secs(1), || {
        let e = |err: qfence::Error| err.to_string();

        // Linear and circular rank of (2,1,1,3).
        let alpha = comp(&[2, 1, 1, 3]);
        ensure(
            fence::rank_of(&alpha).map_err(e)? == poly(&[1, 3, 5, 6, 6, 5, 3, 2, 1]),
            "rank of (2,1,1,3)",
        )?;
        let five_times_four = &LaurentPoly::q_int(5) * &LaurentPoly::q_int(4);
        ensure(
            fence::circular_rank(&alpha).map_err(e)? == five_times_four,
            "circular rank of (2,1,1,3) is [5][4]",
        )?;

        // Rank of (3,4) in closed form.
        let closed_form = &LaurentPoly::q_int(5).pow(2) - &LaurentPoly::q_int(4).shifted(4);
        ensure(
            fence::rank_of(&comp(&[3, 4])).map_err(e)? == closed_form
                && closed_form == poly(&[1, 2, 3, 4, 4, 3, 2, 1, 1]),
            "rank of (3,4) is [5]^2 - q^4 [4]",
        )?;

        // Circular rank of (5,3).
        ensure(
            fence::circular_rank(&comp(&[5, 3])).map_err(e)? == poly(&[1, 1, 2, 3, 3, 3, 2, 1, 1]),
            "circular rank of (5,3)",
        )?;

        // The full matrix of the negative continued fraction of 32/9. The
        // top-right entry is -q times the rank polynomial of (2,1,1,2),
        // which the ideal oracle independently pins down.
        let m = qrational::matrix_m(&[4, 3, 2, 2, 2]).map_err(e)?;
        let minor = fence::rank_of(&comp(&[2, 1, 1, 2])).map_err(e)?;
        ensure(
            minor == poly(&[1, 3, 5, 5, 5, 3, 2, 1]),
            "rank of (2,1,1,2)",
        )?;
        let m_expected = RankMatrix::new([
            [
                poly(&[1, 3, 5, 6, 6, 5, 3, 2, 1]),
                -minor.shifted(1),
            ],
            [
                poly(&[1, 2, 2, 2, 1, 1]),
                -poly(&[1, 2, 2, 1, 1]).shifted(1),
            ],
        ]);
        ensure(m == m_expected, "M_q(4,3,2,2,2) entrywise")?;

        // The full matrix of the regular continued fraction of 32/9.
        let m_plus = qrational::matrix_m_plus(&[3, 1, 1, 4]).map_err(e)?;
        let m_plus_expected = RankMatrix::new([
            [
                poly(&[1, 3, 5, 6, 6, 5, 3, 2, 1]).shifted(1),
                poly(&[1, 2, 2, 1, 1]),
            ],
            [poly(&[1, 2, 2, 2, 1, 1]).shifted(1), poly(&[1, 1])],
        ]);
        ensure(m_plus == m_plus_expected, "M_q^+(3,1,1,4) entrywise")?;

        // Both traces, with their circular-rank identifications.
        let trace_m = m.trace();
        ensure(
            trace_m == poly(&[1, 2, 3, 4, 5, 4, 3, 2, 1])
                && trace_m == fence::circular_rank(&comp(&[2, 1, 1, 4])).map_err(e)?,
            "tr M_q(4,3,2,2,2) is the circular rank of (2,1,1,4)",
        )?;
        let trace_m_plus = m_plus.trace();
        ensure(
            trace_m_plus == poly(&[1, 2, 3, 5, 6, 6, 5, 3, 2, 1])
                && trace_m_plus == fence::circular_rank(&comp(&[3, 1, 1, 4])).map_err(e)?,
            "tr M_q^+(3,1,1,4) is the circular rank of (3,1,1,4)",
        )?;

        // The q-rational of 32/9.
        let q = qrational::q_rational(&Rational::new(32, 9).map_err(e)?).map_err(e)?;
        ensure(
            q.num == poly(&[1, 3, 5, 6, 6, 5, 3, 2, 1]) && q.den == poly(&[1, 2, 2, 2, 1, 1]),
            "[32/9]_q = R/T",
        )?;
        ensure(
            q.regular_cf == [3, 1, 1, 4] && q.negative_cf == [4, 3, 2, 2, 2],
            "continued fractions of 32/9",
        )?;
        Ok(())
    });
}

#[test]
fn oracle_equivalence() {
    criterion(
        "oracle equivalence up to size 12",
        Duration::from_secs(120),
        // Single-threaded on purpose: the budget is for one core.
        || suite_outcome(verify::oracle_sweep(12, false).map_err(|e| e.to_string())?),
    );
}

#[test]
fn trace_theorems_to_40() {
    criterion(
        "trace theorems for r <= 40",
        Duration::from_secs(60),
        || {
            let (report, rows) = verify::trace_theorem_sweep(40, true).map_err(|e| e.to_string())?;
            ensure(!rows.is_empty(), "sweep produced rows")?;
            suite_outcome(report)
        },
    );
}

#[test]
fn q_rational_well_definedness() {
    criterion(
        "q-rational well-definedness for r <= 40",
        Duration::from_secs(60),
        || suite_outcome(verify::q_rational_sweep(40, true).map_err(|e| e.to_string())?),
    );
}

#[test]
fn identity_suite() {
    criterion("identity suite", Duration::from_secs(300), || {
        suite_outcome(verify::identities_suite(true).map_err(|e| e.to_string())?)
    });
}

#[test]
fn counterexample_families() {
    criterion("counterexample families", Duration::from_secs(1), || {
        suite_outcome(verify::counterexamples_suite(10, 8).map_err(|e| e.to_string())?)
    });
}

#[test]
fn markov_suite() {
    criterion("Markov suite", Duration::from_secs(120), || {
        suite_outcome(verify::markov_table_suite().map_err(|e| e.to_string())?)?;
        suite_outcome(verify::markov_properties_suite(5, true).map_err(|e| e.to_string())?)?;
        suite_outcome(verify::markov_equation_suite(3).map_err(|e| e.to_string())?)
    });
}

#[test]
fn unimodality_classification() {
    criterion(
        "unimodality classification up to size 12",
        Duration::from_secs(300),
        || {
            let (report, rows) = verify::unimodal_sweep(12, true).map_err(|e| e.to_string())?;
            ensure(!rows.is_empty(), "sweep produced rows")?;
            suite_outcome(report)
        },
    );
}

#[test]
fn generalized_poset_laws() {
    criterion(
        "generalized-poset laws on 200 random posets",
        Duration::from_secs(120),
        || suite_outcome(verify::gen_suite(2026, 200, 8, 2, true).map_err(|e| e.to_string())?),
    );
}
