use kxval::basefield::FieldSpec;
use kxval::ordgroup::ExtScalar;
use kxval_cli::descr::{parse_descriptor, DescrSpec};
use kxval_cli::{run, Output};
use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn kxval(args: &[&str]) -> Output {
    let mut all = vec!["kxval"];
    all.extend_from_slice(args);
    run(all)
}

fn on(file: &str, args: &[&str]) -> Output {
    let path = fixture(file);
    let mut all = vec!["--input", path.as_str()];
    all.extend_from_slice(args);
    kxval(&all)
}

fn first_line(o: &Output) -> &str {
    o.stdout.lines().next().unwrap_or("")
}

#[test]
fn eval_on_builtin_workspace() {
    let o = kxval(&["eval", "v_t2", "x"]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "1\n"));
    assert_eq!(kxval(&["eval", "v_t2", "1"]).stdout, "0\n");
    assert_eq!(kxval(&["eval", "nt_val", "x^2+x+t"]).stdout, "inf\n");
    assert_eq!(kxval(&["eval", "v_t2", "x - t"]).stdout, "2\n");
}

#[test]
fn eval_with_descriptor_literal() {
    let o = kxval(&["eval", r#"monomial a="t" gamma="3/2""#, "x^2 - t^2"]);
    // (x - t)^2 in characteristic 2
    assert_eq!(o.stdout, "3\n");
}

#[test]
fn eval_on_fixture() {
    assert_eq!(on("golden_p3.json", &["eval", "v_t2", "x"]).stdout, "1\n");
    assert_eq!(on("golden_p3.json", &["eval", "nt_val", "F"]).stdout, "inf\n");
    assert_eq!(on("golden_p3.json", &["eval", "mu_vt", "G"]).stdout, "0-\n");
}

#[test]
fn printed_values_parse_back() {
    for (val, poly) in [("v_t2", "x"), ("nt_val", "F"), ("mu_vt", "G"), ("mu_vt", "x")] {
        let o = on("golden_p3.json", &["eval", val, poly]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let text = o.stdout.trim();
        let parsed: ExtScalar = text.parse().unwrap();
        assert_eq!(parsed.to_string(), text);
    }
}

#[test]
fn classify_reference_sequences() {
    assert_eq!(first_line(&kxval(&["classify", "rt_seq"])), "RT, gamma=2");
    assert_eq!(first_line(&kxval(&["classify", "nt_seq"])), "NT, gamma=inf");
    assert_eq!(first_line(&kxval(&["classify", "vt_seq"])), "VT, gamma=0-");
    let al = kxval(&["classify", "al_seq"]);
    assert_eq!(al.code, 0);
    assert!(first_line(&al).starts_with("AL, certified up to degree 3"), "{}", al.stdout);
    assert_eq!(first_line(&on("golden_p3.json", &["classify", "vt_seq"])), "VT, gamma=0-");
}

#[test]
fn printed_descriptors_parse_back() {
    let field = FieldSpec::perfect_hull(3).unwrap();
    for name in ["rt_seq", "nt_seq", "vt_seq"] {
        let o = on("golden_p3.json", &["classify", name]);
        let line = o.stdout.lines().find_map(|l| l.strip_prefix("descriptor: ")).unwrap();
        let spec = parse_descriptor(field, line).unwrap();
        let expect_seq = name != "rt_seq";
        assert_eq!(spec.sequence().is_some(), expect_seq, "{line}");
        // the descriptor evaluates like the original
        let same = on("golden_p3.json", &["eval", line, "x^3 - x + t"]);
        let orig = on("golden_p3.json", &["eval", &format!("psi seq={name}"), "x^3 - x + t"]);
        assert_eq!(same.stdout, orig.stdout);
    }
    let al = kxval(&["classify", "al_seq"]);
    let line = al.stdout.lines().find_map(|l| l.strip_prefix("descriptor: ")).unwrap();
    assert!(matches!(parse_descriptor(FieldSpec::perfect_hull(2).unwrap(), line).unwrap(), DescrSpec::Psi { .. }));
}

#[test]
fn missing_witness_is_inconclusive() {
    let o = on("golden_p3.json", &["classify", "approach"]);
    assert_eq!(o.code, 2);
    assert!(o.stdout.starts_with("Inconclusive:"), "{}", o.stdout);
    let j = on("golden_p3.json", &["--format", "json", "classify", "approach"]);
    assert_eq!(j.code, 2);
    let v: Value = serde_json::from_str(&j.stdout).unwrap();
    assert_eq!(v["status"], "inconclusive");
}

#[test]
fn single_sequence_document() {
    let o = on("single_seq.json", &["classify", "seq"]);
    assert_eq!(first_line(&o), "NT, gamma=inf");
}

#[test]
fn rational_field_workspace() {
    assert_eq!(on("rational_p5.json", &["compare", "gauss", "fine"]).stdout, "<=\n");
    assert_eq!(on("rational_p5.json", &["compare", "fine", "gauss"]).stdout, ">=\n");
    assert_eq!(on("rational_p5.json", &["compare", "fine", "fine"]).stdout, "=\n");
    assert_eq!(first_line(&on("rational_p5.json", &["classify", "s"])), "RT, gamma=2");
    assert_eq!(on("rational_p5.json", &["eval", "fine", "x - 5"]).stdout, "2\n");
}

#[test]
fn compare_pointwise_and_sampled() {
    let o = kxval(&["compare", "v_t2", "nt_val", "--poly", "x"]);
    assert_eq!(o.stdout, "1 = 1\n");
    let o = kxval(&["compare", "v_t2", "nt_val"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("sampled polynomials"), "{}", o.stdout);
}

#[test]
fn expand_in_powers_of_q() {
    let o = on("golden_p3.json", &["expand", "F", "x-t"]);
    assert_eq!(o.stdout, "t^3\n2\n0\n1\n");
    let j = on("golden_p3.json", &["--format", "json", "expand", "F", "x"]);
    let v: Value = serde_json::from_str(&j.stdout).unwrap();
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 4);
}

#[test]
fn approximation_type_commands() {
    let o = kxval(&["appr", "from-seq", "rt_seq"]);
    assert_eq!(o.stdout, "principal\nB(t, 2)\nsupp: 2\n");
    assert_eq!(kxval(&["appr", "classify", "from-seq", "vt_seq"]).stdout, "VT\n");
    assert_eq!(kxval(&["appr", "classify", "from-seq", "nt_seq"]).stdout, "NT\n");
    let phi = kxval(&["appr", "phi", "principal", "a=t", "gamma=2"]);
    assert_eq!(phi.stdout, "monomial a=\"t\" gamma=\"2\"\n");
    let g = kxval(&["appr", "from-seq", "nt_seq"]);
    assert!(g.stdout.starts_with("generated\n"), "{}", g.stdout);
}

#[test]
fn json_output_is_structured() {
    let o = kxval(&["--format", "json", "classify", "vt_seq"]);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["type"], "VT");
    assert_eq!(v["gamma"], "0-");
    let e = kxval(&["--format", "json", "eval", "v_t2", "x^2"]);
    let v: Value = serde_json::from_str(&e.stdout).unwrap();
    assert_eq!(v["value"], "2");
}

#[test]
fn reference_examples_pass() {
    let o = kxval(&["examples", "--p", "2", "--depth", "5"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert!(!o.stdout.contains("FAIL"));
    let o = kxval(&["examples", "--p", "3", "--depth", "4"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
}

#[test]
fn errors_exit_with_one() {
    assert_eq!(kxval(&["examples", "--p", "4"]).code, 1);
    assert_eq!(kxval(&["eval", "no_such", "x"]).code, 1);
    assert_eq!(kxval(&["classify", "no_such"]).code, 1);
    assert_eq!(kxval(&["frobnicate"]).code, 1);
    let o = kxval(&["eval", "v_t2", "x^^2"]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.starts_with("error:"));
}
