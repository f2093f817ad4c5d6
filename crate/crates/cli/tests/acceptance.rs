//! One line per acceptance criterion. Run with `cargo test -p colorhom-cli --test acceptance -- --nocapture`.

use std::path::PathBuf;
use std::process::Command as Process;
use std::time::{Duration, Instant};

use colorhom::ce_cohomology::{
    check_delta_squared, check_koszul_identities, homotopy_check, lie_cohomology_dims,
    lie_cohomology_total,
};
use colorhom::enveloping::{
    check_confluence, check_hopf_axioms, check_psi, Enveloping, PSI_SAMPLES,
};
use colorhom::gmodules::{adjoint_module, GradedModule};
use colorhom::grading::DegreeWindow;
use colorhom::hochschild::compare_theorem5;
use colorhom::ValidationReport;
use colorhom_cli::commands::PSI_SEED;
use colorhom_cli::spec::ModuleData;
use colorhom_cli::{parse_spec, run_command, Command, Overrides, ProblemSpec, Report};

const VALIDATE_LIMIT: Duration = Duration::from_secs(1);
const CONFLUENCE_LIMIT: Duration = Duration::from_secs(10);
const HOPF_LIMIT: Duration = Duration::from_secs(30);
const KOSZUL_LIMIT: Duration = Duration::from_secs(60);
const COMPARE_LIMIT: Duration = Duration::from_secs(120);

const GOOD: [&str; 4] = ["abelian_odd_1", "abelian_odd_2", "heis3", "glcolor"];
/// Mutated fixture and the check that must fail on it.
const MUTANTS: [(&str, &str); 6] = [
    ("chi_antisymmetry", "antisymmetry"),
    ("chi_bilinearity", "bilinearity_left"),
    ("bracket_grading", "grading"),
    ("bracket_antisymmetry", "antisymmetry"),
    ("jacobi", "jacobi"),
    ("module_grading", "grading"),
];

fn fixture_path(name: &str) -> PathBuf {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let direct = root.join(format!("{name}.json"));
    if direct.exists() {
        direct
    } else {
        root.join("mutated").join(format!("{name}.json"))
    }
}

fn load(name: &str) -> ProblemSpec {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    parse_spec(&text).unwrap()
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn first_failure(reports: &[ValidationReport]) -> Option<String> {
    reports.iter().find_map(|r| {
        r.failed_checks().next().map(|c| {
            format!(
                "{}/{}: {}",
                r.subject,
                c.name,
                c.witness.clone().unwrap_or_default()
            )
        })
    })
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn criterion_1() -> Outcome {
    for name in GOOD {
        let spec = load(name);
        let (r, dt) =
            timed(|| run_command(Command::Validate, &spec, &Overrides::default()).unwrap());
        let Report::Validate { passed, reports } = &r else {
            unreachable!()
        };
        if !passed || dt > VALIDATE_LIMIT {
            return outcome(
                false,
                format!(
                    "{name}: passed={passed} in {dt:?}; {:?}",
                    first_failure(reports)
                ),
            );
        }
    }
    for (name, check) in MUTANTS {
        let spec = load(name);
        let (r, dt) =
            timed(|| run_command(Command::Validate, &spec, &Overrides::default()).unwrap());
        let Report::Validate { reports, .. } = &r else {
            unreachable!()
        };
        let located = reports
            .iter()
            .flat_map(|rep| rep.failed_checks())
            .any(|c| c.name == check && c.witness.is_some());
        if !located || r.exit_code() != 1 || dt > VALIDATE_LIMIT {
            return outcome(
                false,
                format!(
                    "{name}: expected a located {check} failure, exit {} in {dt:?}",
                    r.exit_code()
                ),
            );
        }
    }
    outcome(
        true,
        "4 fixtures pass, 6 mutants fail with located witnesses",
    )
}

fn criterion_2() -> Outcome {
    let (res, dt) = timed(|| {
        ["heis3", "glcolor"]
            .map(|n| check_confluence(&Enveloping::new(load(n).lie), 4))
            .to_vec()
    });
    let cases: usize = res.iter().map(|r| r.checks[0].cases).sum();
    let ok = res.iter().all(ValidationReport::passed) && dt < CONFLUENCE_LIMIT;
    outcome(
        ok,
        format!(
            "{cases} redex choices agree; {dt:.2?} {:?}",
            first_failure(&res)
        ),
    )
}

fn criterion_3() -> Outcome {
    let (res, dt) = timed(|| {
        vec![
            check_hopf_axioms(&Enveloping::new(load("heis3").lie), 3),
            check_hopf_axioms(&Enveloping::new(load("abelian_odd_2").lie), 4),
        ]
    });
    let required = [
        "coassociativity",
        "counit_left",
        "counit_right",
        "antipode_left",
        "antipode_right",
        "antipode_antihomomorphism",
        "inverse_antipode_identity",
    ];
    let present = res
        .iter()
        .all(|r| required.iter().all(|n| r.check(n).is_some()));
    let ok = present && res.iter().all(ValidationReport::passed) && dt < HOPF_LIMIT;
    outcome(
        ok,
        format!(
            "heis3 len 3, abelian_odd_2 len 4; {dt:.2?} {:?}",
            first_failure(&res)
        ),
    )
}

fn criterion_4() -> Outcome {
    let res: Vec<ValidationReport> = ["heis3", "glcolor", "abelian_odd_2"]
        .iter()
        .map(|n| check_psi(&Enveloping::new(load(n).lie), 3, PSI_SAMPLES, PSI_SEED))
        .collect();
    let samples_ok = res
        .iter()
        .all(|r| r.check("psi_module_morphism").map(|c| c.cases) == Some(PSI_SAMPLES));
    let ok = samples_ok && res.iter().all(ValidationReport::passed);
    outcome(
        ok,
        format!(
            "round trip on length ≤ 3, {PSI_SAMPLES} random triples each {:?}",
            first_failure(&res)
        ),
    )
}

fn criterion_5() -> Outcome {
    let (res, dt) = timed(|| {
        ["heis3", "abelian_odd_2"]
            .map(|n| check_koszul_identities(&Enveloping::new(load(n).lie), 3, 3))
            .to_vec()
    });
    let ok = res.iter().all(|r| r.checks.len() == 5)
        && res.iter().all(ValidationReport::passed)
        && dt < KOSZUL_LIMIT;
    outcome(
        ok,
        format!("n ≤ 3, PBW length ≤ 3; {dt:.2?} {:?}", first_failure(&res)),
    )
}

fn criterion_6() -> Outcome {
    let r = homotopy_check(&Enveloping::new(load("heis3").lie), 3);
    let cases = r.checks[0].cases;
    outcome(
        r.passed(),
        format!(
            "{cases} basis elements of W^p, p ≤ 3 {:?}",
            first_failure(&[r])
        ),
    )
}

fn shipped_modules(spec: &ProblemSpec) -> Vec<(String, GradedModule)> {
    let mut out = Vec::new();
    for m in &spec.modules {
        out.push((m.name.clone(), m.data.left().clone()));
        if let ModuleData::Bimodule(b) = &m.data {
            out.push((format!("ad({})", m.name), adjoint_module(&spec.lie, b)));
        }
    }
    out
}

fn criterion_7() -> Outcome {
    let mut blocks = 0;
    for name in GOOD {
        let spec = load(name);
        for (mname, m) in shipped_modules(&spec) {
            let c = check_delta_squared(&spec.lie, &m, 3, &DegreeWindow::All).unwrap();
            blocks += c.cases;
            if !c.passed() {
                return outcome(false, format!("{name}/{mname}: {:?}", c.witness));
            }
        }
    }
    outcome(true, format!("{blocks} blocks"))
}

fn criterion_8() -> Outcome {
    let (res, dt) = timed(|| {
        let mut cells = 0;
        for name in ["abelian_odd_1", "abelian_odd_2"] {
            let spec = load(name);
            let u = Enveloping::new(spec.lie.clone());
            for mname in ["U", "k"] {
                let b = spec.module(mname).and_then(|m| m.data.bimodule()).unwrap();
                let r = compare_theorem5(&u, b, 3, &DegreeWindow::All).unwrap();
                if !r.all_equal {
                    return Err(format!("{name}/{mname}:\n{r}"));
                }
                cells += r.cells.len();
            }
        }
        Ok(cells)
    });
    match res {
        Ok(cells) => outcome(dt < COMPARE_LIMIT, format!("{cells} cells equal; {dt:.2?}")),
        Err(e) => outcome(false, e),
    }
}

fn criterion_9() -> Outcome {
    let spec = load("abelian_odd_1");
    for (mname, m) in shipped_modules(&spec) {
        let t = lie_cohomology_dims(&spec.lie, &m, 2, &DegreeWindow::All).unwrap();
        let total = lie_cohomology_total(&spec.lie, &m, 2);
        for (n, &dim) in total.iter().enumerate() {
            if t.total(n) != dim {
                return outcome(
                    false,
                    format!("{mname}, n={n}: per-h sum {} vs one pass {dim}", t.total(n)),
                );
            }
        }
    }
    outcome(true, "per-degree sums equal the one-pass totals for n ≤ 2")
}

fn criterion_10() -> Outcome {
    let run = || {
        Process::new(env!("CARGO_BIN_EXE_colorhom"))
            .arg("compare")
            .arg(fixture_path("abelian_odd_2"))
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    let ok = a.status.success() && a.stdout == b.stdout && !a.stdout.is_empty();
    outcome(
        ok,
        format!(
            "{} bytes, identical: {}",
            a.stdout.len(),
            a.stdout == b.stdout
        ),
    )
}

#[test]
fn acceptance() {
    let criteria: [(usize, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, f) in criteria {
        let o = f();
        println!(
            "criterion {i:>2}: {}  {}",
            if o.ok { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.ok {
            failed.push(i);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
