use zmackey::mackey::{constant_z, quotient, NamedModule};
use zmackey_cli::{json, run, EXIT_FAILURE, EXIT_USAGE};

fn zm(args: &[&str]) -> zmackey_cli::Run {
    run(std::iter::once("zmackey").chain(args.iter().copied()))
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/golden/{}", env!("CARGO_MANIFEST_DIR"), name)).unwrap()
}

#[test]
fn c45_lewis_goldens() {
    for (tag, file) in [("z", "c45_z.txt"), ("family-ideal:1,3", "c45_family_ideal.txt"), ("family-quotient:1,3", "c45_family_quotient.txt")] {
        let r = zm(&["module", "--n", "45", "--name", tag, "--lewis"]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert_eq!(r.stdout, golden(file), "{}", tag);
    }
    // the ideal by its divisor renders the same diagram
    let r = zm(&["module", "--n", "45", "--name", "ideal:15", "--lewis"]);
    assert_eq!(r.stdout, golden("c45_family_ideal.txt"));
}

#[test]
fn every_spot_is_listed() {
    let r = zm(&["module", "--n", "60", "--name", "quotient:12", "--lewis"]);
    for d in zmackey::exactalg::divisors(60) {
        assert!(r.stdout.contains(&format!("Θ_{} ", d)), "{}", d);
    }
}

#[test]
fn tor_and_ext_tables() {
    let r = zm(&["tor", "--n", "45", "--left", "quotient:15", "--right", "quotient:9"]);
    assert_eq!(r.stdout, golden("c45_tor_15_9.txt"));
    let r = zm(&["ext", "--n", "12", "--left", "quotient:4", "--right", "z", "--degrees", "2..4"]);
    assert_eq!(r.stdout, "i=2: 0\ni=3: Z/I_4\ni=4: 0\n");
    let r = zm(&["tor", "--n", "12", "--left", "ideal:4", "--right", "ideal:6", "--degrees", "0..2"]);
    assert_eq!(r.stdout, "i=0: I_12\ni=1: Z/I_2\ni=2: 0\n");
}

#[test]
fn bredon_tables() {
    let r = zm(&["bredon", "--n", "12", "--spheres", "4,6"]);
    assert_eq!(r.stdout, "H_4: Z\nH_3: 0\nH_2: Z/I_12\nH_1: 0\nH_0: Z/I_2\n");
    let r = zm(&["bredon", "--n", "12", "--spheres", "4", "--dual", "1"]);
    assert!(r.stdout.contains("H_-2: I_4"), "{}", r.stdout);
}

#[test]
fn zero_module_and_json_sample() {
    let r = zm(&["module", "--n", "45", "--name", "quotient:1"]);
    assert!(r.stdout.starts_with("0\n"));
    let r = zm(&["module", "--n", "2", "--name", "z", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    let want: serde_json::Value = serde_json::from_str(
        r#"{"n":2, "values":{"1":{"rank":1,"torsion":[]},"2":{"rank":1,"torsion":[]}}, "res":{"1->2":[[1]]}, "tr":{"2->1":[[2]]}, "act":{"1":[[1]],"2":[[1]]}}"#,
    )
    .unwrap();
    assert_eq!(v, want);
}

#[test]
fn json_round_trips() {
    let mut ms = vec![quotient(45, 15).unwrap(), constant_z(12).unwrap()];
    for tag in ["formz:12,2", "free:2,3", "fpsign", "iamodib:2,12", "colonkernel:4,2,12"] {
        ms.push(NamedModule::parse(tag).unwrap().build(12).unwrap());
    }
    for m in ms {
        let s = json::to_string(&m).unwrap();
        assert_eq!(json::from_str(&s).unwrap(), m);
    }
    assert_eq!(json::from_str(&golden("c45_quotient15.json")).unwrap(), quotient(45, 15).unwrap());
}

#[test]
fn json_rejections() {
    let bad_tr = r#"{"n":2, "values":{"1":{"rank":1,"torsion":[]},"2":{"rank":1,"torsion":[]}}, "res":{"1->2":[[1]]}, "tr":{"2->1":[[3]]}, "act":{"1":[[1]],"2":[[1]]}}"#;
    match json::from_str(bad_tr) {
        Err(json::JsonError::Model(zmackey::Error::Axiom(s))) => assert!(s.contains("tr∘res"), "{}", s),
        other => panic!("expected a relation failure, got {:?}", other.map(|_| ())),
    }
    let missing = r#"{"n":2, "values":{"1":{"rank":1,"torsion":[]},"2":{"rank":1,"torsion":[]}}, "res":{}, "tr":{"2->1":[[2]]}, "act":{"1":[[1]],"2":[[1]]}}"#;
    assert!(matches!(json::from_str(missing), Err(json::JsonError::Schema(_))));
    let shape = r#"{"n":2, "values":{"1":{"rank":1,"torsion":[]},"2":{"rank":1,"torsion":[]}}, "res":{"1->2":[[1, 0]]}, "tr":{"2->1":[[2]]}, "act":{"1":[[1]],"2":[[1]]}}"#;
    assert!(matches!(json::from_str(shape), Err(json::JsonError::Schema(_))));
    assert!(matches!(json::from_str("{\"n\": 2}"), Err(json::JsonError::Schema(_))));
}

#[test]
fn load_command() {
    let dir = std::env::temp_dir().join(format!("zmackey-load-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("q.json");
    std::fs::write(&p, golden("c45_quotient15.json")).unwrap();
    let r = zm(&["load", p.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("Z/I_15\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(zm(&["module", "--n", "12", "--name", "bogus"]).code, EXIT_USAGE);
    assert_eq!(zm(&["module", "--n", "12"]).code, EXIT_USAGE);
    assert_eq!(zm(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(zm(&["tor", "--n", "12", "--left", "z", "--right", "z", "--degrees", "5..2"]).code, EXIT_USAGE);
    assert_eq!(zm(&["verify", "--suite", "nope"]).code, EXIT_USAGE);
    let r = zm(&["module", "--n", "12", "--name", "quotient:5"]);
    assert_eq!(r.code, EXIT_FAILURE);
    assert!(r.stderr.contains("5 does not divide 12"), "{}", r.stderr);
    assert_eq!(zm(&["module", "--n", "12", "--name", "family-ideal:2"]).code, EXIT_FAILURE);
    assert_eq!(zm(&["--help"]).code, 0);
}

#[test]
fn verify_reports_counts() {
    let r = zm(&["verify", "--suite", "c45-family"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("PASS  1 c45-family"));
    assert!(r.stdout.ends_with("1/1 passed\n"));
}
