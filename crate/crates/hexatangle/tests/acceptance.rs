//! Acceptance gate: the seven headline checks of the crate, each reported
//! with a single PASS/FAIL line (run with `--nocapture` to see the lines for
//! passing criteria).
//!
//! 1. Every classification-table row, instantiated over `[-6, 6]`, has the
//!    full set of unknot invariants (exact; < 60 s).
//! 2. Exhaustive `|x_i| ≤ 3` sweep, deduplicated to orbits: the classifier
//!    verdict coincides with the invariant oracle everywhere (< 5 min).
//! 3. Named-knot spot checks: determinant 13 / 7 / 5 families and the
//!    composite closures of the opposite-twist braid family.
//! 4. The 3-braid normal-form engine reproduces the trivial classes, the
//!    all-negative fixed points, the quoted one- and three-positive-region
//!    normal forms, and both composite patterns; conjugacy invariance holds
//!    on 1000 random conjugations.
//! 5. The surgery family `σ1^4 σ2^{2γ} (σ2σ1σ2)^{-2}` with framings
//!    `(-4, 1-γ, -γ)` has homology order 1 and a trivially-classified
//!    filling for `γ ∈ [-6,-2] ∪ [2,6]` (< 5 s).
//! 6. The closure determinant equals the homology order of the surgery
//!    presentation for every single-component filling with `|x_i| ≤ 3`.
//! 7. The multilinear bracket equals the brute-force state sum exhaustively
//!    over `|x_i| ≤ 2` and on 500 random larger fillings.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use hexatangle::braids::{
    closed_braid_class, filling_to_surgery, h1_order, schreier_normal_form, triple_twist_braid,
    triple_twist_filling, BraidLetter, BraidWord3, ClosedBraidClass, LinkingModel, SchreierForm,
    SchreierTail,
};
use hexatangle::diagrams::{hex_bracket, hex_component_count, hex_determinant, hex_diagram};
use hexatangle::exact::Int;
use hexatangle::harness::{
    braid_family_check, census_mismatches, enumerate, verify_tables, RunConfig,
};
use hexatangle::hexcore::HexFilling;

/// Prints the criterion's PASS/FAIL line and panics on failure.
fn conclude(name: &str, failures: &[String], elapsed: Duration, budget: Option<Duration>) {
    let within_budget = budget.map_or(true, |b| elapsed < b);
    if failures.is_empty() && within_budget {
        println!("{name}: PASS ({elapsed:.2?})");
    } else {
        println!(
            "{name}: FAIL ({} mismatches, {elapsed:.2?}, within budget: {within_budget})",
            failures.len()
        );
        for failure in failures.iter().take(10) {
            println!("  {failure}");
        }
        panic!(
            "{name}: {} mismatches, within budget: {within_budget}",
            failures.len()
        );
    }
}

/// Every filling with parameters in `[-bound, bound]`.
fn all_fillings(bound: Int) -> Vec<HexFilling> {
    let mut out = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                for d in -bound..=bound {
                    for e in -bound..=bound {
                        for h in -bound..=bound {
                            out.push(HexFilling([a, b, c, d, e, h]));
                        }
                    }
                }
            }
        }
    }
    out
}

#[test]
fn criterion_1_table_rows_have_unknot_invariants() {
    let start = Instant::now();
    let report = verify_tables(6);
    let mut failures: Vec<String> = Vec::new();
    if report.rows.len() != 132 {
        failures.push(format!("expected 132 rows, got {}", report.rows.len()));
    }
    for row in &report.rows {
        for filling in &row.failures {
            failures.push(format!(
                "table {} line {}: instance {} fails an invariant",
                row.table, row.line, filling
            ));
        }
    }
    // The one-free-parameter rows sweep all 13 values of [-6, 6].
    if let Some(row) = report.rows.iter().find(|r| r.table == 3 && r.line == 1) {
        if row.instances != 13 {
            failures.push(format!("table 3 line 1: {} instances, expected 13", row.instances));
        }
    }
    conclude(
        "criterion 1 (table verification over [-6,6])",
        &failures,
        start.elapsed(),
        Some(Duration::from_secs(60)),
    );
}

#[test]
fn criterion_2_exhaustive_classifier_matches_oracle() {
    let start = Instant::now();
    let records = enumerate(&RunConfig::exhaustive(3));
    let mut failures: Vec<String> = census_mismatches(&records)
        .iter()
        .map(|r| format!("orbit {}: verdict disagrees with oracle", r.filling))
        .collect();
    if records.len() < 2_000 {
        failures.push(format!("suspiciously few orbits: {}", records.len()));
    }
    conclude(
        "criterion 2 (exhaustive |x|≤3 orbit census vs oracle)",
        &failures,
        start.elapsed(),
        Some(Duration::from_secs(300)),
    );
}

#[test]
fn criterion_3_named_knot_spot_checks() {
    let start = Instant::now();
    let mut failures: Vec<String> = Vec::new();

    let det13 = hex_determinant(&[1, -1, -2, 1, 2, 1]);
    if det13 != 13 {
        failures.push(format!("H(1,-1,-2,1,2,1) determinant {det13}, expected 13"));
    }

    for b in -6..=6 {
        let class = closed_braid_class(&triple_twist_braid(-2, b, -b));
        if class != ClosedBraidClass::CompositeLink {
            failures.push(format!("(-2,{b},{}) closure classified {class:?}", -b));
        }
        let seven = hex_determinant(&triple_twist_filling(-2, b, 1 - b).values());
        if seven != 7 {
            failures.push(format!("(-2,{b},{}) determinant {seven}, expected 7", 1 - b));
        }
        let five = hex_determinant(&triple_twist_filling(-2, b, -1 - b).values());
        if five != 5 {
            failures.push(format!("(-2,{b},{}) determinant {five}, expected 5", -1 - b));
        }
    }
    conclude(
        "criterion 3 (named-knot determinants and composite family)",
        &failures,
        start.elapsed(),
        None,
    );
}

#[test]
fn criterion_4_normal_form_engine() {
    let start = Instant::now();
    let mut failures: Vec<String> = Vec::new();
    let mut expect = |ok: bool, message: String| {
        if !ok {
            failures.push(message);
        }
    };
    let form = |central_power: Int, tail: SchreierTail| SchreierForm { central_power, tail };
    let parse = |text: &str| text.parse::<BraidWord3>().expect("test words parse");

    // The three trivial-knot classes, distinct and recognized.
    let trivial_forms = [
        (parse("s1 s2"), form(0, SchreierTail::ThirdTwist)),
        (parse("s1^-1 s2"), form(0, SchreierTail::Syllables(vec![(1, 1)]))),
        (
            BraidWord3::full_twist_power(-1).concatenated(&parse("s1 s2 s1 s2")),
            form(-1, SchreierTail::TwoThirdsTwist),
        ),
    ];
    for (word, expected) in &trivial_forms {
        let nf = schreier_normal_form(word);
        expect(nf == *expected, format!("{word}: normal form {nf:?}"));
        expect(
            closed_braid_class(word) == ClosedBraidClass::TrivialKnot,
            format!("{word}: not recognized as the trivial knot"),
        );
    }

    // All-negative twist words are literal fixed points.
    for a in 1..=4 as Int {
        for b in 1..=4 {
            for c in 1..=4 {
                let word = triple_twist_braid(a, b, c);
                let nf = schreier_normal_form(&word);
                let rotations = [
                    vec![(a, 1), (b, 1), (c, 1)],
                    vec![(b, 1), (c, 1), (a, 1)],
                    vec![(c, 1), (a, 1), (b, 1)],
                ];
                let least = rotations.iter().min().unwrap().clone();
                expect(
                    nf == form(0, SchreierTail::Syllables(least)),
                    format!("({a},{b},{c}): normal form {nf:?}"),
                );
            }
        }
    }
    let fixed = parse("s1^-2 s2 s1^-3 s2 s1^-4 s2");
    expect(
        schreier_normal_form(&fixed).word() == fixed,
        "canonical word of s1^-2 s2 s1^-3 s2 s1^-4 s2 changed".to_string(),
    );

    // One positive region: quoted normal form with one full twist.
    for a in -6..=-3 as Int {
        for b in 1..=3 {
            for c in 1..=3 {
                let nf = schreier_normal_form(&triple_twist_braid(a, b, c));
                let mut quoted = BraidWord3::full_twist_power(1);
                quoted.push_power(1, -c - 1);
                quoted.push_power(2, -a - 2);
                quoted.push_power(1, -b - 1);
                quoted.push_power(2, 1);
                expect(
                    schreier_normal_form(&quoted) == nf && nf.central_power == 1,
                    format!("({a},{b},{c}): quoted one-region form mismatch, got {nf:?}"),
                );
            }
        }
    }

    // Three positive regions: quoted generic form with three full twists,
    // plus the degenerate corner cases.
    for a in -8..=-5 as Int {
        for b in -8..=-5 {
            for c in -8..=-5 {
                let nf = schreier_normal_form(&triple_twist_braid(a, b, c));
                let mut quoted = BraidWord3::full_twist_power(3);
                for t in [a, b, c] {
                    quoted.push_power(1, -1);
                    quoted.push_power(2, -t - 4);
                }
                expect(
                    schreier_normal_form(&quoted) == nf && nf.central_power == 3,
                    format!("({a},{b},{c}): quoted three-region form mismatch, got {nf:?}"),
                );
            }
        }
    }
    let specials: [(Int, Int, Int, SchreierForm); 6] = [
        (-3, -3, -3, form(2, SchreierTail::Empty)),
        (-3, -3, -5, form(2, SchreierTail::PositiveRun(2))),
        (-3, -4, -4, form(2, SchreierTail::ThirdTwist)),
        (-3, -4, -5, form(2, SchreierTail::HalfTwist)),
        (-3, -4, -6, form(2, SchreierTail::TwoThirdsTwist)),
        (-3, -4, -7, form(3, SchreierTail::NegativeRun(1))),
    ];
    for (a, b, c, expected) in specials {
        let nf = schreier_normal_form(&triple_twist_braid(a, b, c));
        expect(nf == expected, format!("({a},{b},{c}): {nf:?}, expected {expected:?}"));
    }

    // Both composite patterns, verbatim.
    for u in 2..=6 as Int {
        for v in 2..=u {
            let mut word = BraidWord3::new();
            word.push_power(1, -u);
            word.push_power(2, v);
            let nf = schreier_normal_form(&word);
            expect(
                nf == form(0, SchreierTail::Syllables(vec![(u, v)]))
                    && closed_braid_class(&word) == ClosedBraidClass::CompositeLink,
                format!("pattern s1^-{u} s2^{v}: {nf:?}"),
            );
        }
    }
    for u in 1..=5 as Int {
        for v in 1..=u {
            let mut word = BraidWord3::full_twist_power(-1);
            word.push_power(1, -u);
            word.push_power(2, 1);
            word.push_power(1, -v);
            word.push_power(2, 1);
            let nf = schreier_normal_form(&word);
            let mut pairs = vec![(u, 1), (v, 1)];
            pairs.sort();
            expect(
                nf == form(-1, SchreierTail::Syllables(pairs))
                    && closed_braid_class(&word) == ClosedBraidClass::CompositeLink,
                format!("pattern C^-1 s1^-{u} s2 s1^-{v} s2: {nf:?}"),
            );
        }
    }

    // 1000 random conjugations preserve the normal form.
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce97);
    let random_word = |rng: &mut ChaCha8Rng, max_len: usize| {
        let len = rng.gen_range(0..=max_len);
        let mut word = BraidWord3::new();
        for _ in 0..len {
            let generator = if rng.gen_bool(0.5) { 1 } else { 2 };
            word.push(BraidLetter::new(generator, rng.gen_bool(0.5)));
        }
        word
    };
    for _ in 0..250 {
        let word = random_word(&mut rng, 30);
        let nf = schreier_normal_form(&word);
        for _ in 0..4 {
            let conjugator = random_word(&mut rng, 12);
            let conjugated = word.conjugated_by(&conjugator);
            expect(
                schreier_normal_form(&conjugated) == nf,
                format!("conjugating {word} by {conjugator} changed the form"),
            );
        }
    }

    conclude(
        "criterion 4 (normal-form engine and composite patterns)",
        &failures,
        start.elapsed(),
        None,
    );
}

#[test]
fn criterion_5_surgery_family_gives_the_three_sphere() {
    let start = Instant::now();
    let mut failures: Vec<String> = Vec::new();
    for (lo, hi) in [(-6, -2), (2, 6)] {
        let report = braid_family_check(lo, hi, 0xacce97);
        for check in &report.checks {
            let gamma = check.gamma;
            let mut expected = BraidWord3::new();
            expected.push_power(1, 4);
            expected.push_power(2, 2 * gamma);
            expected.push_half_twists(-2);
            if check.braid != expected.to_string() {
                failures.push(format!("γ = {gamma}: braid {}", check.braid));
            }
            if check.framings != [-4, 1 - gamma, -gamma] {
                failures.push(format!("γ = {gamma}: framings {:?}", check.framings));
            }
            if !check.passed() {
                failures.push(format!("γ = {gamma}: {check:?}"));
            }
        }
    }
    conclude(
        "criterion 5 (trivial surgeries on the braid family)",
        &failures,
        start.elapsed(),
        Some(Duration::from_secs(5)),
    );
}

#[test]
fn criterion_6_determinant_equals_surgery_homology() {
    let start = Instant::now();
    let linking = LinkingModel::standard();
    let failures: Vec<String> = all_fillings(3)
        .into_par_iter()
        .filter_map(|filling| {
            if hex_component_count(&filling.values()) != 1 {
                return None;
            }
            let determinant = hex_determinant(&filling.values());
            let h1 = h1_order(&filling_to_surgery(&filling), &linking);
            (determinant != h1).then(|| format!("{filling}: determinant {determinant}, h1 {h1}"))
        })
        .collect();
    conclude(
        "criterion 6 (determinant = homology order, |x|≤3 knots)",
        &failures,
        start.elapsed(),
        None,
    );
}

#[test]
fn criterion_7_multilinear_bracket_matches_state_sum() {
    let start = Instant::now();
    let mut failures: Vec<String> = all_fillings(2)
        .into_par_iter()
        .filter_map(|filling| {
            let fast = hex_bracket(&filling.values());
            let brute = hex_diagram(&filling.values()).bracket();
            (fast != brute).then(|| format!("{filling}: bracket mismatch"))
        })
        .collect();

    // 500 random fillings with more crossings than the exhaustive box.
    let mut rng = ChaCha8Rng::seed_from_u64(0xb4ac8e7);
    let mut larger: Vec<HexFilling> = Vec::new();
    while larger.len() < 500 {
        let values: [Int; 6] = std::array::from_fn(|_| rng.gen_range(-4..=4));
        let crossings: Int = values.iter().map(|v| v.abs()).sum();
        if crossings > 12 && crossings <= 16 {
            larger.push(HexFilling(values));
        }
    }
    let large_failures: Vec<String> = larger
        .into_par_iter()
        .filter_map(|filling| {
            let fast = hex_bracket(&filling.values());
            let brute = hex_diagram(&filling.values()).bracket();
            (fast != brute).then(|| format!("{filling}: bracket mismatch (large)"))
        })
        .collect();
    failures.extend(large_failures);
    conclude(
        "criterion 7 (multilinear bracket vs brute state sum)",
        &failures,
        start.elapsed(),
        None,
    );
}
