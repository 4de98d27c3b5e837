use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_fatpoints"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    {
        let mut input = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            input.write_all(text.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str], stdin: Option<&str>) -> String {
    let out = run(args, stdin);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn gen(args: &[&str]) -> String {
    let mut all = vec!["gen"];
    all.extend_from_slice(args);
    ok(&all, None)
}

#[test]
fn bounds_of_a_vector() {
    assert_eq!(
        ok(&["bounds", "--vector", "6,6,6,2,1"], None),
        "f: 1,3,6,10,15,18,20,21,…\nF: 1,3,6,10,15,18,21,…\n"
    );
    assert_eq!(
        ok(&["bounds", "--vector", "3,3,2,2"], None),
        "f: 1,3,6,9,10,…\nF: 1,3,6,10,…\n"
    );
}

#[test]
fn gms_verdicts() {
    assert_eq!(
        ok(&["gms", "--vector", "3,3,2,2"], None),
        "false: pattern (3,3,2,2)\n"
    );
    assert_eq!(
        ok(&["gms", "--vector", "12,11,10,9,8,4,3,2,1"], None),
        "true\n"
    );
    assert_eq!(ok(&["gms", "--vector", "1,3"], None), "false: pair (1,2)\n");
    assert_eq!(
        ok(&["gms", "--vector", "5,4,4,3,3"], None),
        "false: pattern (4,4,3,3)\n"
    );
    let json: serde_json::Value =
        serde_json::from_str(&ok(&["--json", "gms", "--vector", "3,3,2,2"], None)).unwrap();
    assert_eq!(json["gms"], false);
    assert_eq!(json["witness"]["entries"], serde_json::json!([3, 3, 2, 2]));
}

#[test]
fn star_configuration_checks_at_every_degree() {
    let scheme = gen(&["--family", "star", "--s", "5", "--m", "3"]);
    let out = ok(&["check", "--scheme", "-", "--greedy"], Some(&scheme));
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("vector: (12,11,10,9,8,4,3,2,1)"));
    assert_eq!(lines.next(), Some("t\tf\th\tF\tverdict"));
    let want = [1, 3, 6, 10, 15, 21, 28, 36, 45, 50, 55, 60, 60];
    for (t, &h) in want.iter().enumerate() {
        assert_eq!(
            lines.next(),
            Some(format!("{t}\t{h}\t{h}\t{h}\tPASS").as_str())
        );
    }
    assert_eq!(lines.next(), Some("verdict: PASS"));
    assert_eq!(lines.next(), None);
}

#[test]
fn betti_table_of_the_star_vector() {
    let out = ok(&["betti", "--vector", "12,11,10,9,8,4,3,2,1"], None);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows[0], "t\tnu_lo\tnu_hi\tsigma_lo\tsigma_hi");
    assert_eq!(rows[10], "9\t5\t5\t0\t0");
    assert_eq!(rows[11], "10\t0\t0\t4\t4");
    assert_eq!(rows[13], "12\t5\t5\t0\t0");
    assert_eq!(rows[14], "13\t0\t0\t5\t5");
    let json: serde_json::Value = serde_json::from_str(&ok(
        &["--json", "betti", "--vector", "12,11,10,9,8,4,3,2,1"],
        None,
    ))
    .unwrap();
    assert_eq!(json["alpha"], 9);
    assert_eq!(json["reg"], 12);
    assert_eq!(json["exact"], true);
}

#[test]
fn grid_schedules() {
    let scheme = gen(&["--family", "nongreedy-grid"]);
    let a = ok(
        &["bounds", "--scheme", "-", "--lines", "H1,H2,H3,V1,V2"],
        Some(&scheme),
    );
    assert_eq!(
        a,
        "vector: (6,6,6,2,1)\nf: 1,3,6,10,15,18,20,21,…\nF: 1,3,6,10,15,18,21,…\n"
    );
    let b = ok(
        &["bounds", "--scheme", "-", "--lines", "V1,V2,V3,V4,V5,V1,V2"],
        Some(&scheme),
    );
    assert_eq!(
        b,
        "vector: (5,4,3,3,3,2,1)\nf: 1,3,6,10,15,18,21,…\nF: 1,3,6,10,15,21,…\n"
    );
    let h = ok(
        &["hilbert", "--scheme", "-", "--max-degree", "7"],
        Some(&scheme),
    );
    assert_eq!(
        h,
        "t\th\n0\t1\n1\t3\n2\t6\n3\t10\n4\t15\n5\t18\n6\t21\n7\t21\n"
    );
}

#[test]
fn generated_schemes_round_trip_through_every_subcommand() {
    let families: [&[&str]; 9] = [
        &["--family", "star", "--s", "4", "--m", "2"],
        &["--family", "nongreedy-grid"],
        &[
            "--family",
            "grid",
            "--rows",
            "2",
            "--cols",
            "3",
            "--doubles",
            "1:1",
        ],
        &["--family", "six-point"],
        &["--family", "line-count", "--a", "2,1", "--m", "3,2"],
        &["--family", "linear", "--counts", "3,1", "--m", "2"],
        &["--family", "intersections", "--s", "4", "--e", "1,2,1,1"],
        &["--family", "projective-plane", "--q", "2"],
        &["--family", "dual-hesse", "--p", "7"],
    ];
    for args in families {
        let scheme = gen(args);
        let again = ok(
            &["gen", "--output", "/dev/stdout"]
                .iter()
                .chain(args)
                .copied()
                .collect::<Vec<_>>(),
            None,
        );
        assert_eq!(again, scheme, "{args:?}");
        let reduce = ok(&["reduce", "--scheme", "-", "--greedy"], Some(&scheme));
        assert!(reduce.starts_with("step\tline\tdegree\n"), "{args:?}");
        assert!(reduce.ends_with("full: true\n"), "{args:?}: {reduce}");
        for cmd in [
            &["bounds", "--scheme", "-", "--greedy"][..],
            &["check", "--scheme", "-", "--greedy"][..],
            &["hilbert", "--scheme", "-"][..],
            &["--json", "reduce", "--scheme", "-", "--greedy"][..],
        ] {
            ok(cmd, Some(&scheme));
        }
    }
}

#[test]
fn outputs_are_deterministic() {
    let scheme = gen(&["--family", "projective-plane", "--q", "3", "--m", "2"]);
    for cmd in [
        &["check", "--scheme", "-", "--greedy"][..],
        &["--json", "check", "--scheme", "-", "--greedy"][..],
        &["--json", "hilbert", "--scheme", "-"][..],
    ] {
        let first = run(cmd, Some(&scheme));
        let second = run(cmd, Some(&scheme));
        assert_eq!(first.stdout, second.stdout);
        assert_eq!(first.stderr, second.stderr);
    }
}

#[test]
fn input_errors_exit_with_2() {
    for (args, stdin) in [
        (&["bounds", "--vector", "3,x"][..], None),
        (&["gms", "--vector", "-1"][..], None),
        (
            &["reduce", "--scheme", "-", "--greedy"][..],
            Some("not json"),
        ),
        (
            &["reduce", "--scheme", "-", "--greedy"][..],
            Some(r#"{"ambient_dim":2,"points":[],"lines":[],"colour":1}"#),
        ),
        (
            &["reduce", "--scheme", "-", "--lines", "Z"][..],
            Some(
                r#"{"ambient_dim":2,"points":[{"id":"a","mult":1}],"lines":[{"name":"L","points":["a"]}]}"#,
            ),
        ),
        (&["gen", "--family", "star"][..], None),
        (&["frobnicate"][..], None),
    ] {
        let out = run(args, stdin);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn validation_failures_name_the_violation() {
    let two_shared = r#"{"ambient_dim":2,"points":[{"id":"a","mult":1},{"id":"b","mult":1}],
        "lines":[{"name":"L","points":["a","b"]},{"name":"M","points":["a","b"]}]}"#;
    let out = run(&["reduce", "--scheme", "-", "--greedy"], Some(two_shared));
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("`L`") && err.contains("`M`"), "{err}");
}

#[test]
fn precondition_errors_exit_with_3() {
    let out = run(&["betti", "--vector", "3,3,2,2"], None);
    assert_eq!(out.status.code(), Some(3));
    let scheme = gen(&["--family", "star", "--s", "4", "--m", "2"]);
    let partial = run(&["bounds", "--scheme", "-", "--lines", "L1"], Some(&scheme));
    assert_eq!(partial.status.code(), Some(3));
    let bare = gen(&["--family", "projective-plane", "--q", "4"]);
    let no_coords = run(&["check", "--scheme", "-", "--greedy"], Some(&bare));
    assert_eq!(no_coords.status.code(), Some(3));
}

#[test]
fn sandwich_failure_exits_with_4() {
    // `c` lies on the line through `a` and `b` but `L` does not list it
    let scheme = r#"{"ambient_dim":2,"field":{"kind":"Q"},
        "points":[{"id":"a","mult":1,"coords":["0","0","1"]},
                  {"id":"b","mult":1,"coords":["1","0","1"]},
                  {"id":"c","mult":1,"coords":["2","0","1"]}],
        "lines":[{"name":"L","points":["a","b"]},{"name":"M","points":["c"]}]}"#;
    let out = run(&["check", "--scheme", "-", "--lines", "L,M"], Some(scheme));
    assert_eq!(out.status.code(), Some(4));
    let text = stdout(&out);
    assert!(text.contains("1\t3\t2\t3\tFAIL"), "{text}");
    assert!(text.ends_with("verdict: FAIL\n"));
}
