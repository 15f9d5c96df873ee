//! Acceptance suite: one PASS/FAIL line per criterion, with one indented
//! line per individual check.
//!
//! Checks listed in `KNOWN_UNATTAINABLE` are run exactly as stated and
//! reported as FAIL with the reason; every other check must pass.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;

use gsdrum::action::coset_action;
use gsdrum::exactla::{find_invertible_intertwiner, intertwiner_space, IntertwinerProblem, SearchOptions};
use gsdrum::gallery::{
    corpus_triple, dihedral_geometry, fano_triple, gww_domains, quadratic_design, FormType, QuadraticDesignSpec,
    TileDomain, CONTROLS, CORPUS, Q,
};
use gsdrum::geom::{pa_eq_al, DesignParameters};
use gsdrum::spectral::{compare_spectra, compute_spectrum, rectangle_eigenvalues, weyl_check, EigenOptions};
use gsdrum::{build_drum_geometry, check_flags, fixed_point_formula, GSTriple, Spectrum64};

/// Largest group order for which fixed cosets are counted by brute force.
const ORACLE_ORDER_LIMIT: usize = 5000;
/// Largest coset index at which the intertwiner search must be exact.
const INTERTWINER_INDEX_LIMIT: usize = 49;
/// Largest accepted relative eigenvalue difference for the GWW pair.
const SPECTRAL_TOLERANCE: f64 = 0.02;
/// Smallest accepted shrink of that difference from `h = 1/16` to `h = 1/32`.
const REFINEMENT_FACTOR: f64 = 1.5;
/// Smallest accepted ratio of the control difference to the GWW difference.
const CONTROL_SEPARATION: f64 = 10.0;
/// Accepted `|ratio − 1|` of the counting slope for the analytic unit square.
const WEYL_SQUARE_TOLERANCE: f64 = 0.05;
/// Accepted `|ratio − 1|` of the counting slope for the GWW domains.
const WEYL_GWW_TOLERANCE: f64 = 0.10;
/// Analytic unit-square eigenvalues are counted up to this value.
const WEYL_SQUARE_LIMIT: f64 = 2000.0;

/// `(criterion, check label, reason)` for checks that cannot pass as stated.
const KNOWN_UNATTAINABLE: &[(u32, &str, &str)] = &[
    (
        9,
        "difference shrinks from h = 1/16 to h = 1/32",
        "the discrete GWW operators are exactly isospectral, so both differences are rounding noise (~1e-14)",
    ),
    (
        10,
        "analytic unit square within 5%",
        "the perimeter term of the counting function biases the fitted slope by about 6% at this range",
    ),
];

/// A criterion: number, title and the function running its checks.
type Criterion = (u32, &'static str, fn() -> Vec<Check>);

struct Check {
    label: String,
    pass: bool,
    detail: String,
}

fn check(label: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
    Check { label: label.into(), pass, detail: detail.into() }
}

fn within(label: &str, elapsed: Duration, limit: Duration) -> Check {
    check(format!("{label} runtime < {}s", limit.as_secs()), elapsed < limit, format!("{:.2}s", elapsed.as_secs_f64()))
}

fn triple(name: &str) -> GSTriple {
    corpus_triple(name).unwrap_or_else(|e| panic!("corpus triple {name}: {e}"))
}

fn gsdrum(dir: &Path, args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_gsdrum"))
        .current_dir(dir)
        .args(args)
        .arg("--json")
        .output()
        .expect("run gsdrum");
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), report)
}

fn fano_pipeline() -> Vec<Check> {
    let start = Instant::now();
    let dir = tempfile::tempdir().expect("temporary directory");
    let (code_gen, generated) = gsdrum(dir.path(), &["gen", "pg", "--n", "3", "--p", "2", "--out", "fano.json"]);
    let (code_check, checked) = gsdrum(dir.path(), &["check", "--triple", "fano.json"]);
    let (code_geometry, geometry) = gsdrum(dir.path(), &["geometry", "--triple", "fano.json"]);
    let elapsed = start.elapsed();
    let flags = &checked["results"]["flags"];
    let all_true = ["ac", "ec", "ff", "max", "pair"].iter().all(|f| flags[f] == true);
    let g = &geometry["results"];
    vec![
        check(
            "commands exit 0",
            [code_gen, code_check, code_geometry] == [0, 0, 0],
            format!("{code_gen}, {code_check}, {code_geometry}"),
        ),
        check(
            "group order 168",
            generated["results"]["triple"]["group_order"] == 168,
            generated["results"]["triple"]["group_order"].to_string(),
        ),
        check(
            "AC, EC, FF, MAX, PAIR all true",
            all_true,
            ["ac", "ec", "ff", "max", "pair"].map(|f| format!("{f} {}", flags[f])).join(", "),
        ),
        check("subgroups nonconjugate", flags["conjugate"] == false, flags["conjugate"].to_string()),
        check(
            "7 points, 7 lines, all degrees 3",
            g["points"] == 7
                && g["lines"] == 7
                && g["point_degrees"] == serde_json::json!([3])
                && g["line_degrees"] == serde_json::json!([3]),
            format!(
                "{} points, {} lines, degrees {} / {}",
                g["points"], g["lines"], g["point_degrees"], g["line_degrees"]
            ),
        ),
        within("pipeline", elapsed, Duration::from_secs(5)),
    ]
}

fn round_trip() -> Vec<Check> {
    let start = Instant::now();
    let mut checks = Vec::new();
    for name in CORPUS {
        let t = triple(name);
        let flags = check_flags(&t).expect("flags");
        let d = build_drum_geometry(&t).expect("geometry");
        let (dcheck, sd) = (d.verify_d(), d.verify_sd());
        checks.push(check(
            format!("{name}: AC ⇔ SD and EC ⇔ D"),
            flags.ac == sd.holds && flags.ec == dcheck.holds,
            format!("AC {} SD {} EC {} D {}", flags.ac, sd.holds, flags.ec, dcheck.holds),
        ));
    }
    checks.push(within("corpus", start.elapsed(), Duration::from_secs(300)));
    checks
}

fn fixed_point_oracle() -> Vec<Check> {
    let mut checks = Vec::new();
    for name in CORPUS.iter().chain(&CONTROLS) {
        let t = triple(name);
        let g = t.group();
        if g.order() > ORACLE_ORDER_LIMIT {
            continue;
        }
        let mut pairs = 0;
        let mut mismatch = None;
        for h in [t.left(), t.right()] {
            let action = coset_action(g, h).expect("coset action");
            for class in g.conjugacy_classes().iter() {
                let rep = g.element(class.representative);
                let (formula, brute) =
                    (fixed_point_formula(g, h, rep).expect("formula"), action.fixed_points(rep).expect("count"));
                pairs += 1;
                if formula != brute && mismatch.is_none() {
                    mismatch = Some(format!("{rep}: formula {formula}, count {brute}"));
                }
            }
        }
        checks.push(check(
            format!("{name} (order {})", g.order()),
            mismatch.is_none(),
            mismatch.unwrap_or_else(|| format!("{pairs} (class, subgroup) pairs agree")),
        ));
    }
    checks
}

fn pa_al() -> Vec<Check> {
    let mut checks = Vec::new();
    for name in CORPUS {
        let d = build_drum_geometry(&triple(name)).expect("geometry");
        let generators = d.group().generators();
        let holds = generators.iter().all(|a| d.verify_pa_eq_al(a).expect("member"));
        let mut mutated = d.geometry().clone();
        mutated.flip(0, 0);
        let broken = generators.iter().filter(|a| !pa_eq_al(&mutated, &d.point_perm(a), &d.line_perm(a))).count();
        checks.push(check(
            format!("{name}: PA = AL for all generators; one flipped incidence breaks it"),
            holds && broken > 0,
            format!("{} generators, {broken} broken after the flip", generators.len()),
        ));
    }
    checks
}

fn determinants() -> Vec<Check> {
    let fano = build_drum_geometry(&fano_triple().expect("fano")).expect("geometry");
    let det = fano.geometry().is_super_strong().expect("square").determinant;
    let (v, k, lambda) = (7u32, 3i64, 1i64);
    let design_formula = (k - lambda).pow(v - 1) * (k + lambda * (v as i64 - 1));
    let square = dihedral_geometry(4).expect("square").geometry().is_super_strong().expect("square").determinant;
    let mut checks = vec![
        check("Fano |det| = 24", det.magnitude().to_string() == "24", det.to_string()),
        check(
            "Fano det² = (k−λ)^{v−1}(k+λ(v−1)) = 576",
            (&det * &det).to_string() == design_formula.to_string() && design_formula == 576,
            format!("det² = {}, formula {design_formula}", &det * &det),
        ),
        check("square det = 0", square.to_string() == "0", square.to_string()),
    ];
    for form in [FormType::Hyperbolic, FormType::Elliptic] {
        let design = quadratic_design(QuadraticDesignSpec { m: 2, form, orthogonal: false }).expect("design");
        let det = design.geometry.geometry().is_super_strong().expect("square").determinant;
        let magnitude = det.magnitude().to_string();
        checks.push(check(
            format!("{form:?} design |det| ∉ {{0, 1}}"),
            magnitude != "0" && magnitude != "1",
            det.to_string(),
        ));
    }
    checks
}

fn intertwiners() -> Vec<Check> {
    let start = Instant::now();
    let mut checks = Vec::new();
    for name in CORPUS.iter().chain(&CONTROLS) {
        let t = triple(name);
        let ac = check_flags(&t).expect("flags").ac;
        let index = t.left_index().max(t.right_index());
        let (found, detail) = if t.left_index() != t.right_index() {
            (false, format!("indices {} and {} differ: no square intertwiner", t.left_index(), t.right_index()))
        } else {
            let basis = intertwiner_space(&t).expect("intertwiner space");
            match find_invertible_intertwiner(&basis, &SearchOptions::default()) {
                Some(f) => {
                    let verified = IntertwinerProblem::from_triple(&t).expect("problem").is_intertwiner(&f.matrix);
                    (verified, format!("dimension {}, det {}, intertwines {verified}", basis.len(), f.determinant))
                }
                None => (false, format!("dimension {}, every candidate singular", basis.len())),
            }
        };
        checks.push(check(
            format!("{name} (index {index}): invertible intertwiner ⇔ AC"),
            index <= INTERTWINER_INDEX_LIMIT && found == ac,
            format!("AC {ac}; {detail}"),
        ));
    }
    checks.push(within("search", start.elapsed(), Duration::from_secs(120)));
    checks
}

fn wreath() -> Vec<Check> {
    let start = Instant::now();
    let t = triple("fano-wreath-s2");
    let flags = check_flags(&t).expect("flags");
    let elapsed = start.elapsed();
    vec![
        check("order 56448", t.group().order() == 56448, t.group().order().to_string()),
        check(
            "index 49",
            t.left_index() == 49 && t.right_index() == 49,
            format!("{} / {}", t.left_index(), t.right_index()),
        ),
        check(
            "AC, FF, MAX, PAIR true",
            flags.ac && flags.ff && flags.max && flags.pair,
            format!("AC {} FF {} MAX {} PAIR {}", flags.ac, flags.ff, flags.max, flags.pair),
        ),
        check("stabilizers nonconjugate", !flags.conjugate, flags.witnesses.conjugate.clone()),
        within("construction and flags", elapsed, Duration::from_secs(180)),
    ]
}

fn designs() -> Vec<Check> {
    let mut checks = Vec::new();
    let mut found = Vec::new();
    for form in [FormType::Hyperbolic, FormType::Elliptic] {
        let design = quadratic_design(QuadraticDesignSpec { m: 2, form, orthogonal: false }).expect("design");
        let sd = design.geometry.verify_sd();
        checks.push(check(
            format!("{form:?}: translations fix equally many points and blocks"),
            sd.holds,
            format!("{} classes checked", sd.classes_checked),
        ));
        let parameters = design.geometry.geometry().is_symmetric_design();
        checks.push(check(format!("{form:?}: symmetric design"), parameters.is_some(), format!("{parameters:?}")));
        found.extend(parameters);
    }
    found.sort_by_key(|p| (p.v, p.k, p.lambda));
    let expected = vec![DesignParameters { v: 16, k: 6, lambda: 2 }, DesignParameters { v: 16, k: 10, lambda: 6 }];
    checks.push(check("parameters (16,10,6) and (16,6,2)", found == expected, format!("{found:?}")));
    checks
}

fn eigen_options() -> EigenOptions {
    EigenOptions::default()
}

fn max_difference(a: &TileDomain, b: &TileDomain, h: Q, k: usize) -> f64 {
    let sa: Spectrum64 = compute_spectrum(a, h, k, &eigen_options()).expect("spectrum");
    let sb: Spectrum64 = compute_spectrum(b, h, k, &eigen_options()).expect("spectrum");
    compare_spectra(&sa, &sb, k).expect("comparison").max_difference
}

fn spectral() -> Vec<Check> {
    let start = Instant::now();
    let (a, b) = gww_domains();
    let k = 10;
    let coarse = max_difference(&a, &b, Q::new(1, 16), k);
    let fine = max_difference(&a, &b, Q::new(1, 32), k);
    let rectangle = TileDomain::rectangle(Q::from_integer(1), Q::from_integer(2)).expect("rectangle");
    let control = max_difference(&TileDomain::unit_square(), &rectangle, Q::new(1, 32), k);
    let elapsed = start.elapsed();
    vec![
        check("max relative difference at h = 1/32 below 2%", fine < SPECTRAL_TOLERANCE, format!("{fine:e}")),
        check(
            "difference shrinks from h = 1/16 to h = 1/32",
            coarse / fine >= REFINEMENT_FACTOR,
            format!("{coarse:e} → {fine:e}, ratio {:.3} (needs ≥ {REFINEMENT_FACTOR})", coarse / fine),
        ),
        check(
            "unit square vs 1×2 rectangle separates by more than 10×",
            control > CONTROL_SEPARATION * fine && control > CONTROL_SEPARATION * SPECTRAL_TOLERANCE,
            format!("control {control:.4}, GWW {fine:e}"),
        ),
        within("spectra", elapsed, Duration::from_secs(180)),
    ]
}

fn weyl() -> Vec<Check> {
    let analytic = rectangle_eigenvalues(1.0, 1.0, WEYL_SQUARE_LIMIT);
    let square = weyl_check(&analytic, Q::from_integer(1)).expect("weyl");
    let mut checks = vec![check(
        "analytic unit square within 5%",
        (square.ratio - 1.0).abs() <= WEYL_SQUARE_TOLERANCE,
        format!("ratio {:.4} over {} eigenvalues", square.ratio, analytic.len()),
    )];
    let (a, b) = gww_domains();
    for (name, domain) in [("A", a), ("B", b)] {
        let s: Spectrum64 = compute_spectrum(&domain, Q::new(1, 32), 100, &eigen_options()).expect("spectrum");
        let w = weyl_check(&s.eigenvalues, domain.area()).expect("weyl");
        checks.push(check(
            format!("GWW {name} (area {}) within 10% at k = 100, h = 1/32", domain.area()),
            (w.ratio - 1.0).abs() <= WEYL_GWW_TOLERANCE,
            format!("ratio {:.4}", w.ratio),
        ));
    }
    checks
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "Fano pipeline", fano_pipeline),
        (2, "AC ⇔ SD and EC ⇔ D on the corpus", round_trip),
        (3, "fixed-point formula against fixed-coset counts", fixed_point_oracle),
        (4, "PA = AL and its failure under mutation", pa_al),
        (5, "incidence determinants", determinants),
        (6, "invertible intertwiners exactly on AC triples", intertwiners),
        (7, "wreath product Fano ≀ S2", wreath),
        (8, "quadratic designs", designs),
        (9, "GWW spectra under refinement", spectral),
        (10, "Weyl counting slope", weyl),
    ];
    let mut unexpected = Vec::new();
    for (n, title, run) in criteria {
        let checks = run();
        let pass = checks.iter().all(|c| c.pass);
        println!("criterion {n:>2}: {} — {title}", if pass { "PASS" } else { "FAIL" });
        for c in &checks {
            let known = KNOWN_UNATTAINABLE.iter().find(|(m, label, _)| *m == n && *label == c.label);
            let status = if c.pass { "pass" } else { "FAIL" };
            println!("    {status}: {} ({})", c.label, c.detail);
            match (c.pass, known) {
                (false, Some((_, _, reason))) => println!("          known unattainable: {reason}"),
                (false, None) => unexpected.push(format!("criterion {n}: {}", c.label)),
                (true, _) => {}
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures:\n  {}", unexpected.join("\n  "));
        std::process::exit(1);
    }
}
