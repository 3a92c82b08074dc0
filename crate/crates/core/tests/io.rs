use cellalg::io::*;
use cellalg::Field;

fn spec(family: Family, n: usize, m: usize, delta: &[&str]) -> AlgebraSpec {
    AlgebraSpec::new(family, n, m, delta, Field::Rational)
}

#[test]
fn algebra_file_round_trips() {
    for s in [
        spec(Family::Quiver, 0, 1, &[]),
        spec(Family::Matrix, 3, 1, &[]),
        spec(Family::Tl, 4, 1, &["1/2"]),
        spec(Family::Bubble, 2, 2, &["3", "5"]),
        spec(Family::Pnm, 1, 2, &["5", "7"]),
    ] {
        let f = AlgebraFile::build(&s).unwrap();
        let text = f.to_json().unwrap();
        let back = AlgebraFile::from_json(&text).unwrap();
        assert_eq!(back, f);
        let rebuilt = AlgebraBody::from_built(&back.load().unwrap());
        assert_eq!(rebuilt, f.body, "{:?}", s.family);
        // building twice gives identical bytes
        assert_eq!(AlgebraFile::build(&s).unwrap().to_json().unwrap(), text);
    }
}

#[test]
fn dimensions_of_built_files() {
    assert_eq!(AlgebraFile::build(&spec(Family::Quiver, 0, 1, &[])).unwrap().load().unwrap().dim(), 6);
    assert_eq!(AlgebraFile::build(&spec(Family::Bubble, 2, 2, &["3", "5"])).unwrap().load().unwrap().dim(), 10);
    assert_eq!(AlgebraFile::build(&spec(Family::Pnm, 2, 2, &["5", "7"])).unwrap().load().unwrap().dim(), 94);
}

#[test]
fn invalid_specs_are_rejected() {
    assert!(spec(Family::Matrix, 0, 1, &[]).validate().is_err());
    assert!(spec(Family::Bubble, 2, 2, &["3"]).validate().is_err());
    assert!(spec(Family::Tl, 2, 1, &["x"]).validate().is_err());
    assert!(spec(Family::Pnm, 9, 3, &["1", "2", "3"]).validate().is_err());
    assert!(AlgebraSpec::new(Family::Tl, 2, 1, &["1/7"], Field::prime(7).unwrap()).validate().is_err());
    assert!(AlgebraSpec::new(Family::Tl, 2, 1, &["-1"], Field::prime(7).unwrap()).validate().is_ok());
}

#[test]
fn tampering_is_detected() {
    let f = AlgebraFile::build(&spec(Family::Quiver, 0, 1, &[])).unwrap();
    let text = f.to_json().unwrap().replacen("\"λ0\"", "\"μ0\"", 1);
    assert!(AlgebraFile::from_json(&text).is_err());
    let text = f.to_json().unwrap().replace("\"format_version\": 1", "\"format_version\": 99");
    assert!(AlgebraFile::from_json(&text).is_err());
}

#[test]
fn custom_datum_loads_and_validates() {
    let f = AlgebraFile::build(&spec(Family::Matrix, 2, 1, &[])).unwrap();
    let AlgebraBody::Cellular(datum) = f.body.clone() else { panic!("cellular") };
    let custom = AlgebraFile::from_custom(datum.clone()).unwrap();
    assert_eq!(custom.spec.family, Family::CustomJson);
    let doc = run_report(&custom, &ReportOptions::default()).unwrap();
    assert_eq!(doc.exit_code(), 0);
    // a larger index set still loads, but is not cellular
    let mut bigger = datum.clone();
    bigger.t_sets[0].push("3".into());
    let doc = run_report(&AlgebraFile::from_custom(bigger).unwrap(), &ReportOptions::default()).unwrap();
    assert_eq!(doc.exit_code(), 1);
    // products outside the basis do not load
    let mut smaller = datum;
    smaller.t_sets[0].pop();
    assert!(AlgebraFile::from_custom(smaller).is_err());
}

#[test]
fn cache_returns_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let s = spec(Family::Bubble, 2, 2, &["3", "5"]);
    let first = build_cached(&s, Some(dir.path())).unwrap();
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let second = build_cached(&s, Some(dir.path())).unwrap();
    assert_eq!(first, second);
    assert_eq!(first, build_cached(&s, None).unwrap());
}

#[test]
fn quiver_report() {
    let f = AlgebraFile::build(&spec(Family::Quiver, 0, 1, &[])).unwrap();
    let doc = run_report(&f, &ReportOptions::default()).unwrap();
    assert_eq!(doc.exit_code(), 0);
    let gram = &doc.section(Section::Gram).unwrap().data;
    assert_eq!(gram["lambda_zero"], serde_json::json!(["λ1", "λ2"]));
    assert_eq!(gram["cells"][1]["matrix"], serde_json::json!([["1", "0"], ["0", "0"]]));
    assert_eq!(gram["radicals"][1]["radical_isomorphic_to"], serde_json::json!(["λ2"]));
    let blocks = &doc.section(Section::Blocks).unwrap().data;
    assert_eq!(blocks["direct"]["blocks"], serde_json::json!([["λ1", "λ2"]]));
    let back = ReportDocument::from_json(&doc.to_json().unwrap()).unwrap();
    assert_eq!(back, doc);
    assert_eq!(run_report(&f, &ReportOptions::default()).unwrap().to_json().unwrap(), doc.to_json().unwrap());
}

#[test]
fn matrix_report() {
    let f = AlgebraFile::build(&spec(Family::Matrix, 3, 1, &[])).unwrap();
    let doc = run_report(&f, &ReportOptions::default()).unwrap();
    assert_eq!(doc.exit_code(), 0);
    assert_eq!(doc.section(Section::Simples).unwrap().data["semisimple_by_gram"], true);
    assert_eq!(doc.section(Section::Loewy).unwrap().data["decomposition"]["entries"], serde_json::json!([[1]]));
}

#[test]
fn bubble_report_merges_blocks() {
    let f = AlgebraFile::build(&spec(Family::Bubble, 3, 2, &["1", "3"])).unwrap();
    let doc = run_report(&f, &ReportOptions::default()).unwrap();
    assert_eq!(doc.exit_code(), 0, "{:?}", doc.failed());
    let blocks = &doc.section(Section::Blocks).unwrap();
    assert_eq!(blocks.status, Status::Pass);
    let merged = blocks.data["via_localization"]["blocks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|b| b.as_array().unwrap().contains(&"(3,0)".into()) && b.as_array().unwrap().contains(&"(1,0)".into()));
    assert!(merged);
    let tensor = &doc.section(Section::VerifyTheorems).unwrap().data["tensor_factors"];
    assert_eq!(tensor.as_array().unwrap().len(), 8);
}

#[test]
fn prime_field_marks_radical_sections_unsupported() {
    let s = AlgebraSpec::new(Family::Tl, 3, 1, &["1"], Field::prime(5).unwrap());
    let f = AlgebraFile::build(&s).unwrap();
    let doc = run_report(&f, &ReportOptions::default()).unwrap();
    assert_eq!(doc.exit_code(), 0);
    for sec in [Section::Loewy, Section::Blocks, Section::Oracle] {
        assert_eq!(doc.section(sec).unwrap().status, Status::Unsupported);
    }
    assert_eq!(doc.section(Section::Gram).unwrap().status, Status::Info);
}

#[test]
fn partition_report() {
    let f = AlgebraFile::build(&spec(Family::Pnm, 2, 2, &["5", "7"])).unwrap();
    let doc = run_report(&f, &ReportOptions::default()).unwrap();
    assert_eq!(doc.exit_code(), 0);
    assert_eq!(doc.section(Section::Oracle).unwrap().data["semisimple"], true);
    assert_eq!(doc.section(Section::VerifyTheorems).unwrap().status, Status::Pass);
    assert_eq!(doc.section(Section::Gram).unwrap().status, Status::Unsupported);
}

#[test]
fn failing_checks_give_exit_code_one() {
    // a datum whose involution is not an anti-automorphism
    let f = AlgebraFile::build(&spec(Family::Matrix, 2, 1, &[])).unwrap();
    let AlgebraBody::Cellular(mut datum) = f.body else { panic!("cellular") };
    datum.star = Some(vec![1, 0, 2, 3]);
    let custom = AlgebraFile::from_custom(datum).unwrap();
    let doc = run_report(&custom, &ReportOptions { sections: vec![Section::VerifyAssumptions], seed: 0 }).unwrap();
    assert_eq!(doc.exit_code(), 1);
}
