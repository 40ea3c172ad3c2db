//! Acceptance gate: every criterion runs at its stated trial count with
//! exact (zero-tolerance) comparisons and prints one pass/fail line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::Instant;

use residue_core::suites::{run_check, run_suite, SuiteConfig, SuiteKind};
use residue_core::{FqField, DEFAULT_PRECISION};

const FIELDS: [u64; 5] = [3, 5, 7, 11, 13];

fn cfg(p: u64, trials: u64) -> SuiteConfig {
    SuiteConfig { p, d: 1, seed: 0, trials, precision: DEFAULT_PRECISION }
}

fn criterion(n: u32, label: &str, body: impl FnOnce() -> Result<(), String>) {
    let start = Instant::now();
    match body() {
        Ok(()) => println!(
            "[acceptance] criterion {} ({}): PASS ({:.2?})",
            n,
            label,
            start.elapsed()
        ),
        Err(msg) => {
            println!("[acceptance] criterion {} ({}): FAIL - {}", n, label, msg);
            panic!("criterion {} failed: {}", n, msg);
        }
    }
}

fn require_clean(check: residue_core::suites::CheckResult, what: &str) -> Result<(), String> {
    if check.failures != 0 {
        return Err(format!(
            "{}: {}/{} failures, counterexample: {:?}",
            what, check.failures, check.trials, check.counterexample
        ));
    }
    Ok(())
}

#[test]
fn criterion_1_main_lemma_suite() {
    criterion(1, "residue identity on 10^4 pairs per field", || {
        for p in FIELDS {
            let c = cfg(p, 10_000);
            let r = run_check("main_lemma_random", &c).map_err(|e| e.to_string())?;
            if r.trials != 10_000 {
                return Err(format!("expected 10^4 trials, ran {}", r.trials));
            }
            require_clean(r, &format!("main lemma over F_{}((t))", p))?;
        }
        Ok(())
    });
}

#[test]
fn criterion_2_oracle_triangulation() {
    criterion(2, "tame vs conic vs norm obstruction, 10^4 per field", || {
        for p in FIELDS {
            let c = cfg(p, 10_000);
            require_clean(
                run_check("oracle_agreement_random", &c).map_err(|e| e.to_string())?,
                &format!("tame = conic over F_{}((t))", p),
            )?;
            require_clean(
                run_check("obstruction_symbol_link", &c).map_err(|e| e.to_string())?,
                &format!("symbol = -1 iff odd-parity obstruction over F_{}((t))", p),
            )?;
        }
        Ok(())
    });
}

#[test]
fn criterion_3_theorem_suite() {
    criterion(3, "bundle residues match tau*alpha, 10^3 bundles per field", || {
        for p in [3u64, 5, 7] {
            let c = cfg(p, 1_000);
            require_clean(
                run_check("theorem_random", &c).map_err(|e| e.to_string())?,
                &format!("component verdicts over F_{}", p),
            )?;
            require_clean(
                run_check("even_tau_trivial", &c).map_err(|e| e.to_string())?,
                &format!("even-tau residues trivial over F_{}", p),
            )?;
            require_clean(
                run_check("remark13_random", &c).map_err(|e| e.to_string())?,
                &format!("tau=1 vanishing implication over F_{}", p),
            )?;
        }
        Ok(())
    });
}

#[test]
fn criterion_4_symbol_algebra() {
    criterion(4, "bilinearity, symmetry, Steinberg, square invariance", || {
        for p in FIELDS {
            let c = cfg(p, 2_000);
            for name in [
                "symbol_bilinearity",
                "symbol_symmetry",
                "steinberg",
                "square_invariance",
            ] {
                require_clean(
                    run_check(name, &c).map_err(|e| e.to_string())?,
                    &format!("{} over F_{}((t))", name, p),
                )?;
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_5_norm_parity_and_cocycles() {
    criterion(5, "norms have even valuation; h*sigma(h) = b*I", || {
        for p in [3u64, 5] {
            let c = cfg(p, 10_000);
            let parity = run_check("norm_parity_even", &c).map_err(|e| e.to_string())?;
            if parity.trials != 10_000 {
                return Err(format!("expected 10^4 parity trials, ran {}", parity.trials));
            }
            require_clean(parity, &format!("norm parity over F_{}((t))", p))?;
            let coc = run_check("standard_cocycle_scalar", &c).map_err(|e| e.to_string())?;
            if coc.trials < 100 {
                return Err(format!("expected >= 10^2 cocycle trials, ran {}", coc.trials));
            }
            require_clean(coc, &format!("standard cocycle scalar over F_{}((t))", p))?;
        }
        Ok(())
    });
}

#[test]
fn criterion_6_reciprocity() {
    criterion(6, "global product of local symbols is +1, 10^3 per field", || {
        for p in FIELDS {
            let c = cfg(p, 1_000);
            require_clean(
                run_check("reciprocity_random", &c).map_err(|e| e.to_string())?,
                &format!("reciprocity over F_{}(t)", p),
            )?;
        }
        Ok(())
    });
}

#[test]
fn criterion_7_exhaustive_small_field_grounding() {
    criterion(7, "exhaustive F_3/F_5 grounding against brute force", || {
        for p in [3u64, 5] {
            let field = FqField::new(p, 1).map_err(|e| e.to_string())?;
            // square tables against the brute-force set {y^2}
            let mut squares = vec![false; field.size() as usize];
            for y in field.elements().skip(1) {
                squares[y.mul(&y).index() as usize] = true;
            }
            for x in field.elements().skip(1) {
                let claimed = x.is_square().map_err(|e| e.to_string())?;
                if claimed != squares[x.index() as usize] {
                    return Err(format!("square table mismatch at {} in F_{}", x, p));
                }
            }
            // degenerate-fiber verdicts against the same table
            for a in field.elements().skip(1) {
                let fiber = residue_core::degenerate_fiber(&a).map_err(|e| e.to_string())?;
                if fiber.is_split() != squares[a.index() as usize] {
                    return Err(format!("fiber split mismatch at {} in F_{}", a, p));
                }
            }
            // all 16 square-class symbol pairs, both implementations
            let c = cfg(p, 16);
            let classes = run_check("oracle_agreement_classes", &c).map_err(|e| e.to_string())?;
            if classes.trials != 16 {
                return Err(format!("expected 16 class pairs, ran {}", classes.trials));
            }
            require_clean(classes, &format!("4x4 class pairs over F_{}((t))", p))?;
        }
        Ok(())
    });
}

#[test]
fn criterion_8_determinism() {
    criterion(8, "same seed gives byte-identical JSON reports", || {
        for kind in [
            SuiteKind::Symbols,
            SuiteKind::Lemma,
            SuiteKind::Cocycles,
            SuiteKind::Bundles,
        ] {
            let c = SuiteConfig { p: 5, d: 1, seed: 1234, trials: 50, precision: 16 };
            let r1 = run_suite(kind, &c).map_err(|e| e.to_string())?;
            let r2 = run_suite(kind, &c).map_err(|e| e.to_string())?;
            let j1 = serde_json::to_string(&r1).map_err(|e| e.to_string())?;
            let j2 = serde_json::to_string(&r2).map_err(|e| e.to_string())?;
            if j1 != j2 {
                return Err(format!("suite {} not deterministic", kind));
            }
            if !r1.all_pass {
                return Err(format!("suite {} failed during determinism run", kind));
            }
        }
        Ok(())
    });
}
