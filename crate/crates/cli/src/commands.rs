//! Command dispatch and report rendering.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use colorhom::ce_cohomology::{
    ce_complex, check_koszul_identities, homotopy_check, lie_cohomology_dims,
};
use colorhom::color_lie::validate_color_lie;
use colorhom::enveloping::{
    check_confluence, check_hopf_axioms, check_psi, Enveloping, PSI_SAMPLES,
};
use colorhom::gmodules::{validate_bimodule, validate_module};
use colorhom::grading::DegreeWindow;
use colorhom::hochschild::{
    bar_complex, compare_theorem5, hochschild_dims, truncate_enveloping, AlgebraBimodule,
    BarComplex, ComparisonReport,
};
use colorhom::report::DimTable;
use colorhom::scalars::format_scalar;
use colorhom::{validate_bicharacter, ExactMatrix, ValidationReport};
use serde::Serialize;
use thiserror::Error;

use crate::spec::{degree_tag, ProblemSpec, ENVELOPING_CAP};

/// Seed for the random Ψ samples; fixed so that reports are reproducible.
pub const PSI_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Validate,
    HopfCheck,
    KoszulCheck,
    LieCohomology,
    Hochschild,
    Compare,
}

/// Command-line overrides of the spec's options.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub n_max: Option<usize>,
    pub p_max: Option<usize>,
    pub word_len: Option<usize>,
    pub degree_window: Option<DegreeWindow>,
    pub dump_matrices: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Core(#[from] colorhom::Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Precondition(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct ModuleTable {
    pub module: String,
    pub table: DimTable,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModuleComparison {
    pub module: String,
    #[serde(flatten)]
    pub report: ComparisonReport,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Validate {
        passed: bool,
        reports: Vec<ValidationReport>,
    },
    HopfCheck {
        passed: bool,
        reports: Vec<ValidationReport>,
    },
    KoszulCheck {
        passed: bool,
        reports: Vec<ValidationReport>,
    },
    LieCohomology {
        n_max: usize,
        modules: Vec<ModuleTable>,
    },
    Hochschild {
        n_max: usize,
        modules: Vec<ModuleTable>,
        skipped: Vec<String>,
    },
    Compare {
        n_max: usize,
        all_equal: bool,
        modules: Vec<ModuleComparison>,
    },
}

impl Report {
    /// 0 when every check passes or the computation completes, 1 on a failed check.
    pub fn exit_code(&self) -> i32 {
        let ok = match self {
            Report::Validate { passed, .. }
            | Report::HopfCheck { passed, .. }
            | Report::KoszulCheck { passed, .. } => *passed,
            Report::Compare { all_equal, .. } => *all_equal,
            Report::LieCohomology { .. } | Report::Hochschild { .. } => true,
        };
        i32::from(!ok)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Report::Validate { passed, reports }
            | Report::HopfCheck { passed, reports }
            | Report::KoszulCheck { passed, reports } => {
                for r in reports {
                    write!(f, "{r}")?;
                }
                writeln!(f, "passed: {passed}")
            }
            Report::LieCohomology { modules, .. } => {
                for m in modules {
                    writeln!(f, "H^n(L, {})_h", m.module)?;
                    write!(f, "{}", m.table)?;
                }
                Ok(())
            }
            Report::Hochschild {
                modules, skipped, ..
            } => {
                for m in modules {
                    writeln!(f, "HH^n(U(L), {})_h", m.module)?;
                    write!(f, "{}", m.table)?;
                }
                for s in skipped {
                    writeln!(f, "skipped {s}: not a bimodule")?;
                }
                Ok(())
            }
            Report::Compare {
                modules, all_equal, ..
            } => {
                for m in modules {
                    writeln!(f, "{}", m.module)?;
                    write!(f, "{}", m.report)?;
                }
                writeln!(f, "overall all_equal: {all_equal}")
            }
        }
    }
}

struct Settings {
    n_max: usize,
    p_max: usize,
    word_len: usize,
    window: DegreeWindow,
    dump: Option<PathBuf>,
}

fn settings(spec: &ProblemSpec, o: &Overrides) -> Settings {
    Settings {
        n_max: o.n_max.unwrap_or(spec.options.n_max),
        p_max: o.p_max.unwrap_or(spec.options.p_max),
        word_len: o.word_len.unwrap_or(spec.options.word_len),
        window: o
            .degree_window
            .clone()
            .unwrap_or_else(|| spec.options.degree_window.clone()),
        dump: o.dump_matrices.clone(),
    }
}

pub fn run_command(
    cmd: Command,
    spec: &ProblemSpec,
    overrides: &Overrides,
) -> Result<Report, RunError> {
    let s = settings(spec, overrides);
    let lie = &spec.lie;
    match cmd {
        Command::Validate => {
            let mut reports = vec![validate_bicharacter(lie.chi()), validate_color_lie(lie)];
            for m in &spec.modules {
                let mut r = match m.data.bimodule() {
                    Some(b) => validate_bimodule(lie, b),
                    None => validate_module(lie, m.data.left()),
                };
                r.subject = format!("module {}", m.name);
                reports.push(r);
            }
            let passed = reports.iter().all(ValidationReport::passed);
            Ok(Report::Validate { passed, reports })
        }
        Command::HopfCheck => {
            let u = Enveloping::new(lie.clone());
            let reports = vec![
                check_confluence(&u, s.word_len.max(2)),
                check_hopf_axioms(&u, s.word_len),
                check_psi(&u, s.word_len, PSI_SAMPLES, PSI_SEED),
            ];
            let passed = reports.iter().all(ValidationReport::passed);
            Ok(Report::HopfCheck { passed, reports })
        }
        Command::KoszulCheck => {
            if s.n_max == 0 || s.p_max == 0 {
                return Err(RunError::Precondition(
                    "koszul-check needs n_max ≥ 1 and p_max ≥ 1".into(),
                ));
            }
            let u = Enveloping::new(lie.clone());
            let reports = vec![
                check_koszul_identities(&u, s.n_max, s.word_len),
                homotopy_check(&u, s.p_max),
            ];
            let passed = reports.iter().all(ValidationReport::passed);
            Ok(Report::KoszulCheck { passed, reports })
        }
        Command::LieCohomology => {
            let mut modules = Vec::new();
            for m in &spec.modules {
                let left = m.data.left();
                if let Some(dir) = &s.dump {
                    for b in ce_complex(lie, left, s.n_max, &s.window)? {
                        let rows = b
                            .codomain
                            .iter()
                            .map(|(w, j)| {
                                cochain_label(lie, w.indices(), left.basis()[*j].name.as_str(), "^")
                            })
                            .collect();
                        let cols = b
                            .domain
                            .iter()
                            .map(|(w, j)| {
                                cochain_label(lie, w.indices(), left.basis()[*j].name.as_str(), "^")
                            })
                            .collect();
                        dump(
                            dir,
                            &format!("{}.ce.n{}.h{}.json", m.name, b.n, degree_tag(&b.h)),
                            &b.n,
                            &b.h,
                            rows,
                            cols,
                            &b.matrix,
                        )?;
                    }
                }
                modules.push(ModuleTable {
                    module: m.name.clone(),
                    table: lie_cohomology_dims(lie, left, s.n_max, &s.window)?,
                });
            }
            Ok(Report::LieCohomology {
                n_max: s.n_max,
                modules,
            })
        }
        Command::Hochschild => {
            let u = Enveloping::new(lie.clone());
            let a = truncate_enveloping(&u, ENVELOPING_CAP)?;
            let mut modules = Vec::new();
            let mut skipped = Vec::new();
            for m in &spec.modules {
                let Some(b) = m.data.bimodule() else {
                    skipped.push(m.name.clone());
                    continue;
                };
                let am = AlgebraBimodule::from_enveloping(&u, &a, b, ENVELOPING_CAP)?;
                if let Some(dir) = &s.dump {
                    for blk in bar_complex(&a, &am, s.n_max, &s.window, BarComplex::Normalized)? {
                        let label = |(w, j): &(Vec<usize>, usize)| {
                            let names: Vec<&str> =
                                w.iter().map(|&i| a.basis()[i].name.as_str()).collect();
                            format!("[{}]:{}", names.join("|"), am.basis()[*j].name)
                        };
                        let rows = blk.codomain.iter().map(label).collect();
                        let cols = blk.domain.iter().map(label).collect();
                        dump(
                            dir,
                            &format!("{}.bar.n{}.h{}.json", m.name, blk.n, degree_tag(&blk.h)),
                            &blk.n,
                            &blk.h,
                            rows,
                            cols,
                            &blk.matrix,
                        )?;
                    }
                }
                modules.push(ModuleTable {
                    module: m.name.clone(),
                    table: hochschild_dims(&a, &am, s.n_max, &s.window)?,
                });
            }
            Ok(Report::Hochschild {
                n_max: s.n_max,
                modules,
                skipped,
            })
        }
        Command::Compare => {
            let u = Enveloping::new(lie.clone());
            let mut modules = Vec::new();
            for m in &spec.modules {
                if let Some(b) = m.data.bimodule() {
                    modules.push(ModuleComparison {
                        module: m.name.clone(),
                        report: compare_theorem5(&u, b, s.n_max, &s.window)?,
                    });
                }
            }
            if modules.is_empty() {
                return Err(RunError::Precondition(
                    "compare needs at least one bimodule in the spec".into(),
                ));
            }
            let all_equal = modules.iter().all(|m| m.report.all_equal);
            Ok(Report::Compare {
                n_max: s.n_max,
                all_equal,
                modules,
            })
        }
    }
}

fn cochain_label(lie: &colorhom::ColorLieAlgebra, w: &[usize], target: &str, sep: &str) -> String {
    let names: Vec<&str> = w.iter().map(|&i| lie.name(i)).collect();
    format!("<{}>:{target}", names.join(sep))
}

#[derive(Serialize)]
struct MatrixDump<'a> {
    n: usize,
    h: &'a colorhom::GroupElement,
    rows: Vec<String>,
    cols: Vec<String>,
    entries: Vec<Vec<String>>,
}

fn dump(
    dir: &Path,
    file: &str,
    n: &usize,
    h: &colorhom::GroupElement,
    rows: Vec<String>,
    cols: Vec<String>,
    m: &ExactMatrix,
) -> Result<(), RunError> {
    let io = |path: &Path| {
        let path = path.display().to_string();
        move |source| RunError::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io(dir))?;
    let entries = (0..m.rows())
        .map(|r| m.row(r).iter().map(format_scalar).collect())
        .collect();
    let doc = MatrixDump {
        n: *n,
        h,
        rows,
        cols,
        entries,
    };
    let path = dir.join(file);
    let text = serde_json::to_string_pretty(&doc).expect("dumps serialize");
    fs::write(&path, text).map_err(io(&path))
}
