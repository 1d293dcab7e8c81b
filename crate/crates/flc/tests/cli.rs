mod common;

use common::{classify_json, flc, temp_json, GOLDEN};
use flc::manifold::{parse_manifold, ManifoldFile};
use flc::report::{BranchDto, ReportFile};
use flc_core::builtins;
use serde_json::Value;

fn show(name: &str) -> Value {
    let out = flc(&["builtin", "show", name]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn validate(v: &Value) -> flc::cli::Outcome {
    let f = temp_json(&v.to_string());
    flc(&["validate", f.path().to_str().unwrap()])
}

#[test]
fn builtin_list_has_eight_names() {
    let out = flc(&["builtin", "list"]);
    assert_eq!(out.code, 0);
    let names: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(names, builtins::NAMES);
}

#[test]
fn builtin_show_gives_standard_data() {
    let s1xs3 = show("s1xs3");
    assert_eq!(s1xs3["pi1"]["kind"], "fg_abelian");
    assert_eq!(s1xs3["pi1"]["rank"], 1);
    assert_eq!(s1xs3["pi2"]["generators"], 0);
    assert_eq!(s1xs3["w2"]["kind"], "spin");

    let cp2 = show("cp2");
    assert_eq!(cp2["pi1"]["kind"], "trivial");
    assert_eq!(cp2["pi2"]["generators"], 1);
    assert_eq!(cp2["w2"], serde_json::json!({"kind": "totally_nonspin", "w2s": [1]}));

    let out = flc(&["builtin", "show", "rp4"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("unknown builtin `rp4`"));
}

#[test]
fn every_builtin_validates_and_round_trips() {
    for name in builtins::NAMES {
        let v = show(name);
        let out = validate(&v);
        assert_eq!((out.code, out.stdout.as_str()), (0, "OK\n"), "{name}");

        let file = parse_manifold(&v.to_string()).unwrap();
        let data = file.to_data(2048).unwrap();
        assert_eq!(data, builtins::builtin(name).unwrap());
        assert_eq!(ManifoldFile::from(&data), file);
    }
}

#[test]
fn broken_cocycle_names_the_triple() {
    // Z/4 with the zero cocycle, then one entry flipped
    let table: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| (a + b) % 4).collect()).collect();
    let mut omega = vec![vec![0u8; 4]; 4];
    let good = serde_json::json!({
        "name": "z4",
        "pi1": {"kind": "finite_table", "table": table},
        "pi2": {"generators": 0},
        "w2": {"kind": "almost_spin_cocycle", "omega": omega},
    });
    assert_eq!(validate(&good).code, 0);

    omega[1][2] = 1;
    let mut bad = good.clone();
    bad["w2"]["omega"] = serde_json::json!(omega);
    let out = validate(&bad);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("cocycle identity fails on triple (index:"), "{}", out.stdout);
    assert!(out.stdout.contains("violation(s)"));
}

#[test]
fn action_not_squaring_to_identity_names_the_element() {
    let finite = serde_json::json!({
        "name": "z2-shear",
        "pi1": {"kind": "finite_table", "table": [[0, 1], [1, 0]]},
        "pi2": {"generators": 2, "action": {"index:1": [[1, 1], [0, 1]]}},
        "w2": {"kind": "spin"},
    });
    let out = validate(&finite);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("g=index:1, h=index:1"), "{}", out.stdout);

    let abelian = serde_json::json!({
        "name": "z2-shear-abelian",
        "pi1": {"kind": "fg_abelian", "rank": 0, "torsion": [2]},
        "pi2": {"generators": 2, "action": {"gen:0": [[1, 1], [0, 1]]}},
        "w2": {"kind": "spin"},
    });
    let out = validate(&abelian);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("gen:0 has order 2"), "{}", out.stdout);
}

#[test]
fn broken_cayley_tables_list_every_violation() {
    let v = serde_json::json!({
        "name": "not-a-group",
        "pi1": {"kind": "finite_table", "table": [[0, 1, 2], [1, 1, 0], [2, 0, 1]]},
        "pi2": {"generators": 0},
        "w2": {"kind": "spin"},
    });
    let out = validate(&v);
    assert_eq!(out.code, 1);
    assert!(out.stdout.lines().filter(|l| l.starts_with("pi1.table:")).count() >= 2, "{}", out.stdout);
}

#[test]
fn malformed_json_points_at_the_field() {
    let v = serde_json::json!({
        "name": "x",
        "pi1": {"kind": "trivial"},
        "pi2": {"generators": "two"},
        "w2": {"kind": "spin"},
    });
    let out = validate(&v);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("pi2.generators"), "{}", out.stderr);

    let f = temp_json(r#"{"name": "x", "pi1": {"kind": "klein"}}"#);
    let out = flc(&["classify", f.path().to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("pi1"), "{}", out.stderr);

    let v = serde_json::json!({
        "name": "x",
        "pi1": {"kind": "trivial"},
        "pi2": {"generators": 1, "relations": [[2, 0]]},
        "w2": {"kind": "spin"},
    });
    let out = validate(&v);
    assert!(out.stdout.contains("row 0 has 2 entries, expected 1"), "{}", out.stdout);
}

#[test]
fn classify_examples() {
    let r: ReportFile = serde_json::from_str(&classify_json("cp2", "trivial").stdout).unwrap();
    assert_eq!(r.theorem_a.case, "1a");

    let out = flc(&["classify", "--builtin", "s4", "--circle", "trivial"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("case 2b"));
    assert!(out.stdout.contains("rot splits        by-spin"));

    let r: ReportFile = serde_json::from_str(&classify_json("q8pair", "x").stdout).unwrap();
    assert_eq!(r.theorem_a.case, "2a");
    assert!(r.tw.equal);
}

#[test]
fn circle_specs_resolve_or_fail_cleanly() {
    for (name, circle) in [("q8pair", "vec:1,0"), ("q8pair", "vec:3,2"), ("enriques_like", "index:1"), ("m_conn_s3s1", "c^2")] {
        let out = classify_json(name, circle);
        assert_eq!(out.code, 0, "{name} {circle}: {}", out.stderr);
    }
    let same = |a: &str, b: &str| classify_json("q8pair", a).stdout == classify_json("q8pair", b).stdout;
    assert!(same("x", "vec:1,0"));
    assert!(same("x", "vec:3,2"));
    for (name, circle) in [("q8pair", "index:0"), ("cp2", "index:5"), ("q8pair", "z"), ("s4", "vec:1")] {
        let out = classify_json(name, circle);
        assert_eq!(out.code, 1, "{name} {circle}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn dax_specs() {
    let mut bits = temp_json("[1, 0]");
    let path = format!("file:{}", bits.path().display());
    let out = flc(&["classify", "--builtin", "s2xs2", "--dax", &path, "--format", "json"]);
    // c̄ = 1 overrides the supplied bits
    let r: ReportFile = serde_json::from_str(&out.stdout).unwrap();
    assert!(r.theorem_b.dax_forced);
    assert_eq!(r.theorem_b.dax.mode, "all-zero");

    for spec in ["zero", "nonzero", "absent"] {
        assert_eq!(flc(&["classify", "--builtin", "q8pair", "--circle", "x", "--dax", spec]).code, 0);
    }
    let out = flc(&["classify", "--builtin", "q8pair", "--dax", "sometimes"]);
    assert_eq!(out.code, 1);
    std::io::Write::write_all(&mut bits, b"]").unwrap();
    let out = flc(&["classify", "--builtin", "q8pair", "--dax", &path]);
    assert_eq!(out.code, 1);
}

#[test]
fn exit_codes() {
    assert_eq!(flc(&["classify", "--builtin", "m_conn_s3s1", "--circle", "c"]).code, 0);
    let strict = flc(&["classify", "--builtin", "m_conn_s3s1", "--circle", "c", "--strict"]);
    assert_eq!(strict.code, 2);
    assert!(!strict.stdout.is_empty());
    assert_eq!(flc(&["classify", "--builtin", "cp2", "--strict"]).code, 0);
    assert_eq!(flc(&["classify"]).code, 1);
    assert_eq!(flc(&["frobnicate"]).code, 1);
    assert_eq!(flc(&["validate", "/nonexistent/manifold.json"]).code, 1);
    assert_eq!(flc(&["--help"]).code, 0);
}

#[test]
fn reports_round_trip() {
    for (name, circle) in GOLDEN {
        let json = classify_json(name, circle).stdout;
        let r: ReportFile = serde_json::from_str(&json).unwrap();
        assert_eq!(r.to_json(), json, "{name}");
        assert_eq!(r.schema_version, "1");
    }
}

#[test]
fn text_and_json_agree() {
    for (name, circle) in GOLDEN {
        let r: ReportFile = serde_json::from_str(&classify_json(name, circle).stdout).unwrap();
        let text = flc(&["classify", "--builtin", name, "--circle", circle]).stdout;
        let line = |key: &str| -> String {
            text.lines()
                .find(|l| l.starts_with(key))
                .unwrap_or_else(|| panic!("{name}: no `{key}` line"))[key.len()..]
                .trim()
                .to_string()
        };
        assert_eq!(line("manifold"), r.manifold);
        assert_eq!(line("spin alternative"), r.spin_alternative);
        assert!(line("tw = νc").starts_with(if r.tw.equal { "yes" } else { "no" }));
        assert!(line("rot trivial").starts_with(if r.rot_imm.trivial { "yes" } else { "no" }));
        assert_eq!(line("rot splits"), r.rot_splitting.kind);
        assert_eq!(line(&format!("case {}", r.theorem_a.case)), r.theorem_a.sequence.rendered);
        assert_eq!(line("sequence"), r.theorem_b.rendered);
        assert_eq!(line("Fix_c(π₂X)"), r.fixed.group.rendered);
        assert!(line("dax oracle").starts_with(&r.theorem_b.dax.mode));
        if let BranchDto::Decided { sequence } = &r.theorem_b.branch {
            if r.theorem_b.product_form.is_none() {
                assert_eq!(sequence.rendered, r.theorem_b.rendered);
            }
        }
        for w in &r.warnings {
            assert!(text.contains(w.as_str()), "{name}: {w}");
        }
        assert_eq!(text.contains("(degraded)"), r.degraded);
    }
}

#[test]
fn random_manifolds_survive_the_file_format() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
    for _ in 0..100 {
        let (x, c) = flc_core::testkit::random_manifold(&mut rng);
        let text = serde_json::to_string(&ManifoldFile::from(&x)).unwrap();
        let back = parse_manifold(&text).unwrap().to_data(2048).unwrap();
        assert_eq!(back, x);
        let f = temp_json(&text);
        let out = flc(&["classify", f.path().to_str().unwrap(), "--circle", &c.to_string(), "--format", "json"]);
        assert_eq!(out.code, 0, "{}: {}", x.name, out.stderr);
    }
}
