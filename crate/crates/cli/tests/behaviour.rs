//! Exit codes, error messages, citations and JSON round-trips.

use serde_json::Value;
use splitcheck::bbfix::{BbAnalysis, OneParamSubgroup, PositivityCertificate};
use splitcheck::grassmod::{catalog_ppos, GrassmannianModel, SubFamily};
use splitcheck::poscalc::PositivityFact;
use splitcheck::rootsys::{RootSystem, DEFAULT_WEYL_CAP};
use splitcheck_cli::args::Cli;
use splitcheck_cli::{dispatch, run, EXIT_OK, EXIT_STRICT, EXIT_USAGE};

use clap::Parser;

fn argv(s: &str) -> Vec<String> {
    std::iter::once("splitcheck".to_string())
        .chain(s.split_whitespace().map(String::from))
        .collect()
}

fn json(s: &str) -> Value {
    let out = run(argv(s));
    assert_eq!(out.code, EXIT_OK, "{s}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn usage_errors_exit_two_and_name_the_flag() {
    for (cmd, flag) in [
        ("onesplit --type A3 --levi 0,2", "--levi"),
        ("onesplit --type A3 --levi 4", "--levi"),
        ("onesplit --type Q3 --levi 1", "--type"),
        ("bb --type C3 --levi 1,3 --lambda -1,0", "--lambda"),
        ("bb --type C3 --levi 1,3 --lambda 0,0,0", "--lambda"),
        ("bwb --type A2 --weight 1,x", "--weight"),
        ("bwb --type A2 --weight 1,1 --levi 2", "--weight"),
        ("reduce --model sp:3,10,1", "--model"),
        ("reduce --model gl:1,5", "--model"),
        ("crosscheck --model gl:3,7 --family lagrangian", "--family"),
        ("ppos --rule fiber --args 1,2,3", "--args"),
        ("dynkin --type A3 --format latex", "--format"),
        ("dynkin --type A3 --colour red", "--colour"),
    ] {
        let out = run(argv(cmd));
        assert_eq!(out.code, EXIT_USAGE, "{cmd}");
        assert!(out.stdout.is_empty(), "{cmd}");
        assert_eq!(out.stderr.lines().count(), 1, "{cmd}: {}", out.stderr);
        assert!(out.stderr.contains(flag), "{cmd}: {}", out.stderr);
    }
}

#[test]
fn strict_reduce_exit_codes() {
    let terminal = run(argv("reduce --model sp:2,4,0 --strict"));
    assert_eq!(terminal.code, EXIT_OK);
    let plan: Value = serde_json::from_str(&terminal.stdout).unwrap();
    assert_eq!(plan["payload"]["steps"].as_array().unwrap().len(), 0);
    assert_eq!(plan["payload"]["terminal"], plan["payload"]["start"]);

    let failing = run(argv("reduce --model sp:3,10,0 --strict"));
    assert_eq!(failing.code, EXIT_STRICT);
    assert!(!failing.stdout.is_empty(), "the report is still printed");
    assert_eq!(run(argv("reduce --model sp:3,10,0")).code, EXIT_OK);
    assert_eq!(run(argv("reduce --model gl:3,7 --strict")).code, EXIT_OK);
}

#[test]
fn citations_are_empty_only_for_dynkin() {
    for cmd in [
        "onesplit --type B3 --levi 1",
        "bwb --type A2 --weight -3,0",
        "bb --type A3 --levi 1,3 --lambda -1,0,0",
        "ppos --model sp:3,10,0 --family point",
        "ppos --rule pullback --args 4",
        "reduce --model o:4,12",
        "catalog --model o:3,8",
        "crosscheck --model gl:3,7 --family hyperplane",
    ] {
        assert!(
            !json(cmd)["citations"].as_array().unwrap().is_empty(),
            "{cmd}"
        );
    }
    assert_eq!(json("dynkin --type F4")["citations"], Value::Array(vec![]));
}

fn has_number(v: &Value) -> bool {
    match v {
        Value::Number(_) => true,
        Value::Array(a) => a.iter().any(has_number),
        _ => false,
    }
}

/// Every numeric leaf of the payload has an entry in the provenance map.
#[test]
fn every_number_has_provenance() {
    fn walk(v: &Value, path: &str, tags: &serde_json::Map<String, Value>) {
        match v {
            Value::Number(_) => assert!(tags.contains_key(path), "{path}"),
            Value::Object(m) => {
                for (k, c) in m {
                    let p = if path.is_empty() {
                        k.clone()
                    } else {
                        format!("{path}.{k}")
                    };
                    walk(c, &p, tags);
                }
            }
            Value::Array(a) if a.iter().any(Value::is_object) => {
                for (i, c) in a.iter().enumerate() {
                    walk(c, &format!("{path}[{i}]"), tags);
                }
            }
            Value::Array(_) if has_number(v) => assert!(tags.contains_key(path), "{path}"),
            _ => {}
        }
    }
    for cmd in [
        "bb --type C3 --levi 1,3 --lambda 0,0,-2",
        "catalog --model sp:3,10,0",
        "reduce --model sp:3,10,0",
        "dynkin --type B3 --levi 1,2",
    ] {
        let v = json(cmd);
        walk(&v["payload"], "", v["provenance"].as_object().unwrap());
    }
    let v = json("catalog --model sp:3,10,0");
    let tags = v["provenance"].as_object().unwrap();
    assert_eq!(tags["entries[1].p"], "Asserted");
    assert_eq!(tags["entries[2].p"], "Certified");
}

#[test]
fn json_round_trips_to_the_in_memory_report() {
    for cmd in [
        "bb --type C3 --levi 1,3 --lambda 0,0,-2",
        "onesplit --type A4 --levi 1",
        "ppos --model gl:3,7 --family point",
        "reduce --model o:5,13",
    ] {
        let (report, ..) = dispatch(&Cli::try_parse_from(argv(cmd)).unwrap()).unwrap();
        assert_eq!(json(cmd), report.to_value(), "{cmd}");
    }

    let v = json("bb --type C3 --levi 1,3 --lambda 0,0,-2");
    let cert: PositivityCertificate =
        serde_json::from_value(v["payload"]["certificate"].clone()).unwrap();
    let rs = RootSystem::new('C', 3).unwrap();
    let expected = BbAnalysis::new(
        &rs,
        &[0, 2],
        &OneParamSubgroup::new(vec![0, 0, -2]),
        DEFAULT_WEYL_CAP,
    )
    .unwrap()
    .certificate();
    assert_eq!(cert, expected);

    let v = json("ppos --model gl:3,7 --family point");
    let fact: PositivityFact = serde_json::from_value(v["payload"]["fact"].clone()).unwrap();
    let m = GrassmannianModel::linear(3, 7).unwrap();
    assert_eq!(
        fact,
        catalog_ppos(&m, SubFamily::Point, DEFAULT_WEYL_CAP)
            .unwrap()
            .fact
    );
}

#[test]
fn table_mode_never_emits_json() {
    for cmd in [
        "bb --type A3 --levi 1,3 --lambda -1,0,0",
        "catalog --model gl:3,7",
        "dynkin --type G2",
    ] {
        let out = run(argv(&format!("{cmd} --format table")));
        assert_eq!(out.code, EXIT_OK);
        assert!(serde_json::from_str::<Value>(&out.stdout).is_err());
        assert!(!out.stdout.trim_start().starts_with('{'));
    }
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(run(argv("--help")).code, EXIT_OK);
    assert_eq!(run(argv("--version")).code, EXIT_OK);
    assert_eq!(run(argv("")).code, EXIT_USAGE);
}
