use hypercoh::examples::{BUILTIN, MAPS};
use hypercoh::format::{Document, MapDocument};
use hypercoh::model::Problem;
use hypercoh::report::Body;
use hypercoh::{execute, run, CliError, Command, FieldChoice, Input, JobSpec, OutputFormat};
use hypercoh_core::godement::Engine;
use hypercoh_core::site::{PosetSite, Sheaf};
use hypercoh_core::{random, Rational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Q = Rational;

fn job(name: &str, command: Command) -> JobSpec {
    JobSpec::new(Input::Builtin(name.into()), command)
}

fn text_job(doc: &str, command: Command) -> JobSpec {
    JobSpec::new(Input::Text(doc.into()), command)
}

fn betti(j: &JobSpec) -> Vec<usize> {
    match execute(j).unwrap().body {
        Body::Cohomology { betti, .. } => betti,
        other => panic!("unexpected report {other:?}"),
    }
}

#[test]
fn bundled_examples_round_trip() {
    for (name, text) in BUILTIN {
        let doc = Document::parse(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let again = Document::parse(&doc.to_toml()).unwrap();
        assert_eq!(again, doc, "{name}");
        assert_eq!(again.to_toml(), doc.to_toml(), "{name}");
        Problem::<Q>::load(&doc).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    for (name, text) in MAPS {
        let doc = MapDocument::parse(text).unwrap();
        assert_eq!(MapDocument::parse(&doc.to_toml()).unwrap(), doc, "{name}");
    }
}

#[test]
fn bundled_models_are_the_library_posets() {
    for (name, site) in [
        ("two-chain", PosetSite::two_chain()),
        ("pseudocircle", PosetSite::pseudocircle()),
        ("sphere", PosetSite::sphere()),
        ("torus", PosetSite::torus()),
    ] {
        let p = Problem::<Q>::load(&Document::parse(hypercoh::examples::builtin(name).unwrap()).unwrap()).unwrap();
        assert_eq!(p.site, site, "{name}");
        assert_eq!(p.sheaf, Sheaf::constant_field(&site), "{name}");
    }
}

#[test]
fn pseudocircle_has_the_betti_numbers_of_a_circle() {
    assert_eq!(betti(&job("pseudocircle", Command::Cohomology)), vec![1, 1, 0]);
    let mut j = job("sphere", Command::Cohomology);
    j.field = FieldChoice::Prime(2);
    assert_eq!(betti(&j), vec![1, 0, 1]);
}

#[test]
fn point_echoes_the_cohomology_of_its_value() {
    let p = Problem::<Q>::load(&Document::parse(hypercoh::examples::builtin("point").unwrap()).unwrap()).unwrap();
    let value = p.sheaf.value(0);
    let want: Vec<usize> = (0..=2).map(|n| value.cohomology(n).dim()).collect();
    assert_eq!(betti(&job("point", Command::Cohomology)), want);
    assert_eq!(want, vec![1, 1, 0]);
}

#[test]
fn opens_restrict_the_sections() {
    let mut j = job("pseudocircle", Command::Cohomology);
    j.open = Some(vec!["c".into()]);
    assert_eq!(betti(&j), vec![1, 0, 0]);
    j.open = Some(vec!["a".into()]);
    let out = run(&j);
    assert_eq!(out.code, 3, "{}", out.stderr);
    assert!(out.stderr.contains("up-closed"), "{}", out.stderr);
}

#[test]
fn torus_ring_with_tw_is_an_exterior_algebra() {
    let mut j = job("torus", Command::Ring);
    j.engine = Engine::Tw;
    let r = execute(&j).unwrap();
    let Body::Ring { betti, strictly_graded_commutative, products, .. } = r.body else { panic!() };
    assert_eq!(betti, vec![1, 2, 1]);
    assert!(strictly_graded_commutative);
    let get = |l: &str, r: &str| products.iter().find(|p| p.left == l && p.right == r).unwrap().value.clone();
    let ab = get("h1_0", "h1_1");
    let ba = get("h1_1", "h1_0");
    assert_ne!(ab, "0");
    assert_eq!(format!("-{ab}").replace("--", ""), ba);
    assert_eq!(get("h1_0", "h1_0"), "0");
    assert_eq!(get("h1_1", "h1_1"), "0");
    assert_eq!(get("h0_0", "h2_0"), "h2_0");
}

#[test]
fn output_is_deterministic_and_json_is_well_formed() {
    let mut j = job("torus", Command::Ring);
    j.format = OutputFormat::Json;
    let (a, b) = (run(&j), run(&j));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["command"], "ring");
    assert_eq!(v["betti"], serde_json::json!([1, 2, 1]));
    j.format = OutputFormat::Text;
    assert_eq!(run(&j).stdout, run(&j).stdout);
}

#[test]
fn descent_check_and_validate_pass_on_examples() {
    for name in ["point", "two-chain", "pseudocircle", "sphere", "filtered-two-step"] {
        let out = run(&job(name, Command::DescentCheck));
        assert_eq!(out.code, 0, "{name}: {}", out.stderr);
        assert_eq!(out.stdout.matches("[PASS]").count(), 3);
    }
    let mut j = job("multidifferential", Command::Validate);
    j.degree = 0;
    let out = run(&j);
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
    assert!(out.stdout.contains("operad Diff: associativity"));
    assert!(out.stdout.contains("uCom-algebra: associativity"));
}

#[test]
fn spectral_sequence_of_the_filtered_example() {
    let pages: Vec<Vec<(i64, i64, usize)>> = (0..3)
        .map(|r| {
            let mut j = job("filtered-two-step", Command::Spectral);
            j.page = Some(r);
            match execute(&j).unwrap().body {
                Body::Spectral { entries, abutment, .. } => {
                    assert_eq!(abutment, vec![0, 0, 0]);
                    entries.iter().map(|e| (e.p, e.q, e.dim)).collect()
                }
                other => panic!("{other:?}"),
            }
        })
        .collect();
    // E_1 is two copies of the cohomology of the circle, cancelled by d_1
    assert_eq!(pages[1], vec![(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)]);
    assert!(pages[2].is_empty());
    let mut j = job("torus", Command::Spectral);
    j.page = None;
    let Body::Spectral { entries, abutment, .. } = execute(&j).unwrap().body else { panic!() };
    for n in 0..=2 {
        let total: usize = entries.iter().filter(|e| e.p + e.q == n as i64).map(|e| e.dim).sum();
        assert_eq!(total, abutment[n]);
    }
}

#[test]
fn direct_image_along_the_collapse() {
    let mut j = job("pseudocircle", Command::DirectImage);
    j.map = Some(Input::Builtin("pseudocircle-collapse".into()));
    let Body::DirectImage { target } = execute(&j).unwrap().body else { panic!() };
    let got: Vec<(String, Vec<usize>)> = target.into_iter().map(|s| (s.element, s.betti)).collect();
    assert_eq!(got, vec![("a".into(), vec![1, 1, 0]), ("b".into(), vec![2, 0, 0])]);
    j.map = None;
    let Body::DirectImage { target } = execute(&j).unwrap().body else { panic!() };
    assert_eq!(target[0].betti, vec![1, 1, 0]);
}

const TWO_CHAIN_HEAD: &str = "[poset]\nelements = [\"a\", \"b\"]\ncovers = [[\"a\", \"b\"]]\n";

#[test]
fn exit_codes() {
    let cases: Vec<(String, Command, i32)> = vec![
        ("[poset]\nelements = [\"a\"\n".into(), Command::Cohomology, 2),
        (format!("{TWO_CHAIN_HEAD}[sheaf.constant]\ndims = [1, 1]\ndifferentials = [[[\"1/0\"]]]\n"), Command::Cohomology, 2),
        (format!("{TWO_CHAIN_HEAD}[sheaf]\nconstant = {{ dims = [1] }}\nextra = 1\n"), Command::Cohomology, 2),
        (format!("{TWO_CHAIN_HEAD}[sheaf.constant]\ndims = [1, 1, 1]\ndifferentials = [[[\"1\"]], [[\"1\"]]]\n"), Command::Cohomology, 3),
        (
            format!(
                "{TWO_CHAIN_HEAD}[[sheaf.values]]\nelement = \"a\"\ndims = [1, 1]\ndifferentials = [[[\"1\"]]]\n\
                 [[sheaf.values]]\nelement = \"b\"\ndims = [1, 1]\ndifferentials = [[[\"1\"]]]\n\
                 [[sheaf.restrictions]]\nfrom = \"a\"\nto = \"b\"\nmaps = [[[\"1\"]], [[\"2\"]]]\n"
            ),
            Command::Cohomology,
            3,
        ),
        (format!("{TWO_CHAIN_HEAD}[sheaf.constant]\ndims = [2]\n"), Command::Ring, 3),
        (
            format!("{TWO_CHAIN_HEAD}[sheaf.constant]\ndims = [2]\n[product]\nmaps = [[[\"0\", \"0\", \"1\", \"0\"], [\"1\", \"0\", \"0\", \"0\"]]]\n[algebra]\nkind = \"commutative\"\ncap = 3\n"),
            Command::Validate,
            3,
        ),
        (format!("{TWO_CHAIN_HEAD}[operad]\nbuiltin = \"lie\"\n"), Command::Validate, 3),
    ];
    for (i, (doc, command, code)) in cases.into_iter().enumerate() {
        let out = run(&text_job(&doc, command));
        assert_eq!(out.code, code, "case {i}: {}", out.stderr);
        assert!(!out.stderr.is_empty(), "case {i}");
    }
    let mut j = job("torus", Command::Ring);
    j.engine = Engine::Tw;
    j.field = FieldChoice::Prime(7);
    let out = run(&j);
    assert_eq!(out.code, 3);
    assert!(out.stderr.starts_with("unsupported combination"));
    assert_eq!(run(&job("nope", Command::Cohomology)).code, 2);
    let truncated = CliError::from_core(hypercoh_core::Error::InsufficientTruncation { needed: 4, available: 3 });
    assert_eq!(truncated.exit_code(), 4);
}

#[test]
fn failing_validation_names_the_first_violated_axiom() {
    let doc = format!("{TWO_CHAIN_HEAD}[sheaf.constant]\ndims = [2]\n[product]\nmaps = [[[\"0\", \"0\", \"1\", \"0\"], [\"1\", \"0\", \"0\", \"0\"]]]\n[algebra]\nkind = \"commutative\"\ncap = 3\n");
    let out = run(&text_job(&doc, Command::Validate));
    assert!(out.stderr.starts_with("validation error: Com-algebra: "), "{}", out.stderr);
    assert!(out.stdout.contains("[FAIL]"));
}

#[test]
fn filtration_generators_match_weights() {
    let weights = format!("{TWO_CHAIN_HEAD}[sheaf.constant]\ndims = [2]\n[[filtration]]\nelement = \"a\"\nweights = [[0, 1]]\n[[filtration]]\nelement = \"b\"\nweights = [[0, 1]]\n");
    let gens = format!(
        "{TWO_CHAIN_HEAD}[sheaf.constant]\ndims = [2]\n[[filtration]]\nelement = \"a\"\ngenerators = [{{ level = 1, degree = 0, vectors = [[\"0\", \"1\"]] }}]\n\
         [[filtration]]\nelement = \"b\"\ngenerators = [{{ level = 1, degree = 0, vectors = [[\"0\", \"1\"]] }}]\n"
    );
    let a = Problem::<Q>::load(&Document::parse(&weights).unwrap()).unwrap();
    let b = Problem::<Q>::load(&Document::parse(&gens).unwrap()).unwrap();
    assert_eq!(a.filtrations, b.filtrations);
    // not preserved by the restriction
    let bad = format!("{TWO_CHAIN_HEAD}[sheaf.constant]\ndims = [2]\n[[filtration]]\nelement = \"a\"\nweights = [[0, 1]]\n");
    assert_eq!(run(&text_job(&bad, Command::Spectral)).code, 3);
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_hypercoh");
    let out = std::process::Command::new(bin).args(["cohomology", "builtin:pseudocircle", "--degree", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "cohomology over Q, degrees 0..=1\nopen: a b c d\nH^0 = 1\nH^1 = 1\n");
    let out = std::process::Command::new(bin).args(["ring", "builtin:torus", "--engine", "tw", "--field", "7"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn random_sheaves_survive_serialization(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let site = random::poset(&mut rng, 5, 0.5);
        let f = random::sheaf::<Q, _>(&mut rng, &site, 3, 2);
        let doc = Document::from_sheaf(&f);
        let text = doc.to_toml();
        let back = Document::parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        let p = Problem::<Q>::load(&back).unwrap();
        prop_assert_eq!(p.sheaf, f);
    }
}
