mod common;

use std::fs;

use common::*;

const OUTPUT_FILES: [&str; 9] = [
    "records.csv",
    "records.json",
    "summary.json",
    "interactions.csv",
    "emotion_bar.svg",
    "sentiment_hist.svg",
    "character_bar.svg",
    "absurdity_line.svg",
    "dialogue_pie.svg",
];

#[test]
fn analyze_writes_nine_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("nested/out");
    let o = analyze(&sample_path(), &out, &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let mut names: Vec<String> = fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    let mut want: Vec<String> = OUTPUT_FILES.iter().map(|s| (*s).to_owned()).collect();
    want.sort();
    assert_eq!(names, want);
    let stdout = String::from_utf8_lossy(&o.stdout).into_owned();
    assert!(stdout.contains("paragraphs"), "{stdout}");
    assert!(stdout.contains("240"), "{stdout}");
    assert!(o.stderr.is_empty(), "{}", stderr(&o));
}

#[test]
fn missing_input_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["analyze", "--out", &dir.path().display().to_string()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    let err = stderr(&o);
    assert!(err.contains("--input"), "{err}");
    assert!(err.contains("Usage: datafy analyze"), "{err}");
}

#[test]
fn bad_flags_are_usage_errors() {
    for args in [
        vec!["analyze", "--bogus"],
        vec!["analyze", "--window", "0", "--input", "x", "--out", "y"],
        vec!["analyze", "--jobs", "0", "--input", "x", "--out", "y"],
        vec!["analyze", "--dialogue-weighting", "words"],
        vec!["frobnicate"],
        vec![],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", stderr(&o));
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn help_and_version_exit_zero() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("analyze"));
    let o = run(&["--version"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("datafy "));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");

    let o = analyze(&dir.path().join("missing.txt"), &out, &[]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, b"fine text\n\nthen \xff\xfe bytes").unwrap();
    let o = analyze(&bad, &out, &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("byte offset 16"), "{}", stderr(&o));

    let blank = dir.path().join("blank.txt");
    fs::write(&blank, "\n  \n\t\n").unwrap();
    let o = analyze(&blank, &out, &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn lexicon_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let lex = dir.path().join("v.tsv");
    fs::write(&lex, "good\t1.9\nbad\tworse\n").unwrap();
    let o = analyze(
        &sample_path(),
        &out,
        &["--valence-lexicon", &lex.display().to_string()],
    );
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    let o = analyze(&sample_path(), &out, &["--narrator", "Nobody"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));

    let gaz = dir.path().join("g.json");
    fs::write(&gaz, r#"{"characters":{"A":["Ann"],"B":["Ann"]}}"#).unwrap();
    let o = analyze(
        &sample_path(),
        &out,
        &["--characters", &gaz.display().to_string()],
    );
    assert_eq!(o.status.code(), Some(3));
    assert!(!out.exists(), "no outputs on failure");
}

#[test]
fn failing_adapter_exits_four() {
    let dir = tempfile::tempdir().unwrap();
    let o = analyze(
        &sample_path(),
        &dir.path().join("out"),
        &["--emotion-adapter", "false"],
    );
    assert_eq!(o.status.code(), Some(4));
    assert!(o.stdout.is_empty());
    assert!(stderr(&o).contains("adapter"), "{}", stderr(&o));
}

#[test]
fn fallback_warns_on_stderr_only() {
    let dir = tempfile::tempdir().unwrap();
    let o = analyze(
        &sample_path(),
        &dir.path().join("out"),
        &["--emotion-adapter", "false", "--adapter-fallback"],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning"));
    assert!(!String::from_utf8_lossy(&o.stdout).contains("warning"));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.txt");
    fs::write(
        &input,
        "\"Hi,\" she said.\n\nNothing else happened here at all.\n",
    )
    .unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(
        &cfg,
        r#"{"input":"in.txt","out":"from-config","dialogue-weighting":"characters","window":1,
            "sentiment-rules":{"alpha":1.0},"quote-styles":["curly"]}"#,
    )
    .unwrap();

    let cfg_arg = cfg.display().to_string();
    let o = run(&["analyze", "--config", &cfg_arg]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let summary = fs::read_to_string(dir.path().join("from-config/summary.json")).unwrap();
    assert!(
        summary.contains("\"dialogue_weighting\": \"characters\""),
        "{summary}"
    );
    assert!(summary.contains("\"absurdity_window\": 1"), "{summary}");
    // straight quotes are not a configured style here
    assert!(
        summary.contains("\"dialogue_share\": 0.000000"),
        "{summary}"
    );

    let flag_out = dir.path().join("from-flag");
    let o = run(&[
        "analyze",
        "--config",
        &cfg_arg,
        "--out",
        &flag_out.display().to_string(),
        "--window",
        "5",
        "--dialogue-weighting",
        "paragraphs",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let summary = fs::read_to_string(flag_out.join("summary.json")).unwrap();
    assert!(summary.contains("\"absurdity_window\": 5"));
    assert!(summary.contains("\"dialogue_weighting\": \"paragraphs\""));

    fs::write(&cfg, r#"{"windw": 3}"#).unwrap();
    let o = run(&["analyze", "--config", &cfg_arg]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("windw"), "{}", stderr(&o));
}

#[test]
fn chart_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    assert!(analyze(&sample_path(), &out, &[]).status.success());
    let summary = out.join("summary.json").display().to_string();

    let svg = dir.path().join("pie.svg");
    let o = run(&[
        "chart",
        "--summary",
        &summary,
        "--kind",
        "dialogue_pie",
        "--out",
        &svg.display().to_string(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        fs::read(&svg).unwrap(),
        fs::read(out.join("dialogue_pie.svg")).unwrap()
    );

    let o = run(&[
        "chart",
        "--summary",
        &summary,
        "--kind",
        "pie",
        "--out",
        "x.svg",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    for kind in [
        "emotion_bar",
        "sentiment_hist",
        "character_bar",
        "absurdity_line",
        "dialogue_pie",
    ] {
        assert!(err.contains(kind), "{err}");
    }

    let broken = dir.path().join("broken.json");
    fs::write(&broken, "{\"n_paragraphs\": ").unwrap();
    let o = run(&[
        "chart",
        "--summary",
        &broken.display().to_string(),
        "--kind",
        "emotion_bar",
        "--out",
        &svg.display().to_string(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn lexicon_validate() {
    let data = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let cases = [
        ("valence", "valence.tsv"),
        ("emotion", "emotion.tsv"),
        ("themes", "themes.txt"),
        ("gazetteer", "stranger_gazetteer.json"),
    ];
    for (kind, file) in cases {
        let o = run(&[
            "lexicon",
            "validate",
            "--type",
            kind,
            &data.join(file).display().to_string(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{kind}: {}", stderr(&o));
        let stdout = String::from_utf8(o.stdout).unwrap();
        assert!(
            stdout.starts_with("OK, ") && stdout.trim_end().ends_with(" entries"),
            "{stdout}"
        );
    }

    // each bundled file under every other type is rejected
    for (kind, _) in cases {
        for (other, file) in cases {
            if kind == other {
                continue;
            }
            let o = run(&[
                "lexicon",
                "validate",
                "--type",
                kind,
                &data.join(file).display().to_string(),
            ]);
            assert_eq!(o.status.code(), Some(3), "{file} as {kind}");
            assert!(o.stdout.is_empty());
        }
    }

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.tsv");
    fs::write(&bad, "# comment\ngood\t1.9\nawful\t-9\n").unwrap();
    let o = run(&[
        "lexicon",
        "validate",
        "--type",
        "valence",
        &bad.display().to_string(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let dup = dir.path().join("dup.tsv");
    fs::write(&dup, "good\t1.9\ngood\t2.0\n").unwrap();
    let o = run(&[
        "lexicon",
        "validate",
        "--type",
        "valence",
        &dup.display().to_string(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout), "OK, 1 entries\n");
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}
