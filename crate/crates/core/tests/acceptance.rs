//! Runs every reference case and prints one PASS/FAIL line per case.
//!
//! Case 1 asks for `gb` on the triangle to be exactly the four listed
//! generators of the kernel. Those four generate the kernel but are not a
//! Groebner basis under the lex order used here, so the basis has seven
//! elements and the case is reported as FAIL. The test requires that exact
//! outcome (and fails if case 1 ever starts passing) while every other
//! case must pass.

use multirees::golden::cases;

const KNOWN_UNATTAINABLE: &[u32] = &[1];

#[test]
fn acceptance() {
    let mut unexpected = Vec::new();
    for case in cases() {
        let report = case.run();
        println!("{}", report.line());
        for note in &report.notes {
            println!("    {note}");
        }
        let expected_pass = !KNOWN_UNATTAINABLE.contains(&report.id);
        if report.passed != expected_pass {
            unexpected.push(report.line());
        }
    }
    assert!(unexpected.is_empty(), "unexpected outcomes: {unexpected:#?}");
}

#[test]
fn triangle_failure_is_the_documented_one() {
    let report = cases().into_iter().find(|c| c.id == 1).unwrap().run();
    assert!(!report.passed);
    let notes = report.notes.join("\n");
    assert!(notes.contains("gb has 7 elements"), "{notes}");
    assert!(notes.contains("equals the four: true"), "{notes}");
    assert!(notes.contains("the four are a Groebner basis: false"), "{notes}");
    assert!(notes.contains("gb is a Groebner basis: true; the four lie in the ideal of gb: true; every other gb element rewrites over the four: true"), "{notes}");
}
