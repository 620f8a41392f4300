use std::fs;

use hypercoh_core::filtered::{er_page, sigma_r_filtration, stable_page, FilteredComplex, FilteredCosimplicial};
use hypercoh_core::godement::{derived_betti, derived_direct_image, derived_ring, descent_diagnostics, godement_sections, Engine};
use hypercoh_core::homalg::is_graded_commutative;
use hypercoh_core::operads::{validate_algebra_with, validate_operad_with, Policy, SheafOperad};
use hypercoh_core::site::MonotoneMap;
use hypercoh_core::{Fp, Rational};

use crate::format::{Document, MapDocument};
use crate::model::{monotone_map, Coefficients, Problem};
use crate::report::{class_name, combination, Body, CheckLine, PageLine, ProductEntry, Report, StalkLine};
use crate::{examples, CliError, Command, FieldChoice, Input, JobSpec, OutputFormat};

/// Exit code and rendered streams of one job.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Run a job: 0 on success, 2 on parse errors, 3 on validation failures and
/// unsupported combinations, 4 on truncation errors.
pub fn run(job: &JobSpec) -> Outcome {
    match execute(job) {
        Ok(report) => {
            let stdout = match job.format {
                OutputFormat::Text => report.to_string(),
                OutputFormat::Json => report.to_json(),
            };
            let failure = match &report.body {
                Body::Checks { checks, .. } => checks.iter().find(|c| !c.passed),
                _ => None,
            };
            match failure {
                None => Outcome { code: 0, stdout, stderr: String::new() },
                Some(c) => {
                    let e = CliError::Validation(format!("{}: {}", c.name, c.witness.as_deref().unwrap_or("failed")));
                    Outcome { code: e.exit_code(), stdout, stderr: format!("{e}\n") }
                }
            }
        }
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("{e}\n") },
    }
}

pub(crate) fn read_input(input: &Input) -> Result<String, CliError> {
    match input {
        Input::Path(p) => fs::read_to_string(p).map_err(|e| CliError::Parse(format!("{}: {e}", p.display()))),
        Input::Builtin(name) => examples::builtin(name)
            .map(str::to_string)
            .ok_or_else(|| CliError::Parse(format!("no built-in example `{name}`; available: {}", examples::names().join(", ")))),
        Input::Text(t) => Ok(t.clone()),
    }
}

/// Parse the input and compute the report.
pub fn execute(job: &JobSpec) -> Result<Report, CliError> {
    let doc = Document::parse(&read_input(&job.input)?)?;
    if job.engine == Engine::Tw && job.field != FieldChoice::Rationals {
        return Err(CliError::Unsupported(format!("the tw engine needs characteristic 0, not {}", job.field.characteristic())));
    }
    match job.field {
        FieldChoice::Rationals => go::<Rational>(job, &doc),
        FieldChoice::Prime(2) => go::<Fp<2>>(job, &doc),
        FieldChoice::Prime(3) => go::<Fp<3>>(job, &doc),
        FieldChoice::Prime(5) => go::<Fp<5>>(job, &doc),
        FieldChoice::Prime(7) => go::<Fp<7>>(job, &doc),
        FieldChoice::Prime(11) => go::<Fp<11>>(job, &doc),
        FieldChoice::Prime(13) => go::<Fp<13>>(job, &doc),
        FieldChoice::Prime(101) => go::<Fp<101>>(job, &doc),
        FieldChoice::Prime(32003) => go::<Fp<32003>>(job, &doc),
        FieldChoice::Prime(65521) => go::<Fp<65521>>(job, &doc),
        FieldChoice::Prime(p) => Err(CliError::Unsupported(format!("no field implementation for p = {p}"))),
    }
}

fn engine_name(e: Engine) -> &'static str {
    match e {
        Engine::Aw => "aw",
        Engine::Tw => "tw",
    }
}

fn go<F: Coefficients>(job: &JobSpec, doc: &Document) -> Result<Report, CliError> {
    let prob = Problem::<F>::load(doc)?;
    let n = job.degree;
    let site = &prob.site;
    let f = &prob.sheaf;
    let u = prob.open(job.open.as_deref())?;
    let open: Vec<String> = u.elements().iter().map(|&x| site.name(x).to_string()).collect();
    let core = CliError::from_core;
    let body = match job.command {
        Command::Cohomology => Body::Cohomology { open, betti: derived_betti(f, &u, n) },
        Command::Ring => {
            let m = prob.product.as_ref().ok_or_else(|| CliError::Validation("ring: the document has no [product] section".into()))?;
            let (model, mu, table) = derived_ring(f, m, &u, n, job.engine).map_err(core)?;
            let betti: Vec<usize> = (0..=n).map(|k| model.complex.cohomology(k).dim()).collect();
            let mut products = Vec::new();
            for i in 0..=n {
                for j in 0..=n - i {
                    for a in 0..betti[i] {
                        for b in 0..betti[j] {
                            let v = table.get(i, j, a, b);
                            let terms: Vec<(usize, String)> = v.iter().map(|(k, c)| (*k, c.to_string())).collect();
                            products.push(ProductEntry { left: class_name(i, a), right: class_name(j, b), value: combination(i + j, &terms) });
                        }
                    }
                }
            }
            let strict = is_graded_commutative(&mu, &model.complex);
            Body::Ring { engine: engine_name(job.engine).into(), open, betti, strictly_graded_commutative: strict, products }
        }
        Command::DescentCheck => {
            let r = descent_diagnostics(f, n).map_err(core)?;
            let line = |name: &str, c: &hypercoh_core::godement::Check| CheckLine { name: name.into(), passed: c.passed, witness: c.witness.clone() };
            let checks = vec![
                line("rho is a stalk-wise quasi-isomorphism", &r.rho_local),
                line("the simple commutes with stalks", &r.simple_commutes),
                line("rho of the hypercohomology sheaf is a quasi-isomorphism on every open", &r.thomason),
            ];
            Body::Checks { passed: r.passed(), checks }
        }
        Command::Spectral => {
            let (label, filt) = match &prob.filtrations {
                Some(levels) => {
                    let v = FilteredCosimplicial::godement(f, levels, &u, n + 1).map_err(core)?;
                    let (_, filt) = sigma_r_filtration(&v, job.sigma, n).map_err(core)?;
                    (format!("sigma_{}", job.sigma), filt)
                }
                None => {
                    let tot = godement_sections(f, &u, n + 1).tot_simple(n).map_err(core)?;
                    ("columns".to_string(), FilteredComplex::columns(&tot))
                }
            };
            let (page, label_page) = match job.page {
                Some(r) => (er_page(&filt, r), r.to_string()),
                None => (stable_page(&filt), "inf".to_string()),
            };
            let entries = page
                .dims()
                .into_iter()
                .filter(|((p, q), _)| p + q <= n as i64)
                .map(|((p, q), dim)| PageLine { p, q, dim })
                .collect();
            let abutment = (0..=n).map(|k| filt.complex().cohomology(k).dim()).collect();
            Body::Spectral { filtration: label, page: label_page, entries, abutment }
        }
        Command::DirectImage => {
            let phi = match &job.map {
                None => MonotoneMap::to_point(site),
                Some(m) => monotone_map(site, &MapDocument::parse(&read_input(m)?)?)?,
            };
            let g = derived_direct_image(&phi, f, n).map_err(core)?;
            let target = (0..phi.target.len())
                .map(|y| StalkLine { element: phi.target.name(y).to_string(), betti: (0..=n).map(|k| g.value(y).cohomology(k).dim()).collect() })
                .collect();
            Body::DirectImage { target }
        }
        Command::Validate => validate(&prob, n),
    };
    Ok(Report { command: job.command.name().into(), field: job.field.to_string(), degree: n, body })
}

fn validate<F: Coefficients>(prob: &Problem<F>, n: usize) -> Body {
    let ok = |name: &str| CheckLine { name: name.into(), passed: true, witness: None };
    let mut checks = vec![ok("poset"), ok("sheaf")];
    if prob.product.is_some() {
        checks.push(ok("product"));
    }
    if prob.filtrations.is_some() {
        checks.push(ok("filtration"));
    }
    let mut absorb = |prefix: &str, r: hypercoh_core::operads::Report| {
        for c in r.checks {
            checks.push(CheckLine { name: format!("{prefix}: {}", c.axiom), passed: c.failure.is_none(), witness: c.failure });
        }
    };
    if let Some(p) = &prob.operad {
        let policy = Policy::exact(p.cap(), n);
        absorb(&format!("operad {}", p.name), validate_operad_with(p, &policy));
        absorb(&format!("constant sheaf of {}", p.name), SheafOperad::constant(&prob.site, p).validate(&policy));
    }
    if let Some(a) = &prob.algebra {
        let policy = Policy::exact(a.operad().cap(), n);
        absorb(&format!("{}-algebra", a.operad().name), validate_algebra_with(a, &policy));
    }
    let passed = checks.iter().all(|c| c.passed);
    Body::Checks { passed, checks }
}
