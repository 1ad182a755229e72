use std::process::Command;

use proptest::prelude::*;
use stopping_core::cli::run;
use stopping_core::document::{parse, serialize, InstanceDocument, Process};
use stopping_core::generate::{
    gen_adapted_real_process, gen_borel_set, gen_filtration, gen_stopping_process,
    gen_stopping_time, ValueRange,
};

const REFERENCE: &str = r#"{"filtration":{"levels":[[["a","b","c","d"]],[["a","b"],["c","d"]],[["a"],["b"],["c"],["d"]]],"terminal":[["a"],["b"],["c"],["d"]]},"grid":["0","1","2"],"space":{"atoms":["a","b","c","d"],"weights":{"a":"1/4","b":"1/4","c":"1/4","d":"1/4"}}"#;

fn with(section: &str) -> String {
    format!("{REFERENCE},{section},\"version\":\"1\"}}\n")
}

fn bare() -> String {
    format!("{REFERENCE},\"version\":\"1\"}}\n")
}

fn call(args: &[&str], input: &str) -> (u8, String, String) {
    let mut stdin = input.as_bytes();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("stopping").chain(args.iter().copied());
    let code = run(argv, &mut stdin, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn verify_deterministic_time() {
    let doc = with(r#""time":{"a":"1","b":"1","c":"1","d":"1"}"#);
    let (code, out, _) = call(&["verify-time"], &doc);
    assert_eq!((code, out.as_str()), (0, "ok\n"));
}

#[test]
fn verify_future_peeking_time() {
    let doc = with(r#""time":{"a":"0","b":"inf","c":"inf","d":"inf"}"#);
    let (code, out, _) = call(&["verify-time"], &doc);
    assert_eq!(code, 1);
    assert_eq!(
        out,
        "not a stopping time at t=0: event {tau <= 0} = {a} is not measurable\n"
    );
}

#[test]
fn verify_filtration_and_process() {
    assert_eq!(call(&["verify-filtration"], &bare()).0, 0);
    let swapped = bare().replacen(
        r#"[["a","b","c","d"]],[["a","b"],["c","d"]]"#,
        r#"[["a","b"],["c","d"]],[["a","b","c","d"]]"#,
        1,
    );
    let (code, out, _) = call(&["verify-filtration"], &swapped);
    assert_eq!(code, 1);
    assert!(out.contains("(0, 1)"), "{out}");

    let rising = with(
        r#""process":{"0":{"a":0,"b":0,"c":0,"d":0},"1":{"a":1,"b":1,"c":1,"d":1},"2":{"a":1,"b":1,"c":1,"d":1}}"#,
    );
    let (code, out, _) = call(&["verify-process"], &rising);
    assert_eq!(code, 1);
    assert!(out.contains("non-increasing"), "{out}");

    let split = with(
        r#""process":{"0":{"a":1,"b":1,"c":1,"d":1},"1":{"a":1,"b":0,"c":0,"d":0},"2":{"a":0,"b":0,"c":0,"d":0}}"#,
    );
    let (code, out, _) = call(&["verify-process"], &split);
    assert_eq!(code, 1);
    assert!(out.contains("not adapted at t=1"), "{out}");
}

#[test]
fn conversion_round_trip_is_byte_identical() {
    let doc = with(r#""time":{"a":"1","b":"1","c":"inf","d":"2"}"#);
    let (code, proc_doc, _) = call(&["to-process"], &doc);
    assert_eq!(code, 0);
    assert!(proc_doc.contains(r#""process":{"0":{"a":1,"b":1,"c":1,"d":1},"1":{"a":0,"b":0,"c":1,"d":1},"2":{"a":0,"b":0,"c":1,"d":0}}"#), "{proc_doc}");
    let (code, back, _) = call(&["to-time"], &proc_doc);
    assert_eq!(code, 0);
    assert_eq!(back, doc);
}

#[test]
fn conversion_refuses_non_stopping_time() {
    let doc = with(r#""time":{"a":"0","b":"inf","c":"inf","d":"inf"}"#);
    let (code, out, _) = call(&["to-process"], &doc);
    assert_eq!(code, 1);
    assert!(out.starts_with("not a stopping time"));
}

#[test]
fn hit_writes_time_and_verdict() {
    let doc = with(
        r#""borel_set":{"intervals":[],"points":["0"]},"process":{"0":{"a":"1","b":"1","c":"1","d":"1"},"1":{"a":"0","b":"0","c":"1","d":"1"},"2":{"a":"0","b":"0","c":"0","d":"1"}}"#,
    );
    let (code, out, _) = call(&["hit"], &doc);
    assert_eq!(code, 0);
    assert!(
        out.contains(r#""time":{"a":"1","b":"1","c":"2","d":"inf"}"#),
        "{out}"
    );

    let peeking = with(
        r#""borel_set":{"intervals":[],"points":["0"]},"process":{"0":{"a":"0","b":"1","c":"1","d":"1"},"1":{"a":"1","b":"1","c":"1","d":"1"},"2":{"a":"1","b":"1","c":"1","d":"1"}}"#,
    );
    let (code, out, _) = call(&["hit"], &peeking);
    assert_eq!(code, 1);
    assert!(out
        .lines()
        .last()
        .unwrap()
        .starts_with("not a stopping time at t=0"));
}

#[test]
fn enumerate_and_check_bijection() {
    let (code, out, _) = call(&["enumerate"], &bare());
    assert_eq!(code, 0);
    assert!(
        out.starts_with(r#"{"count":26,"times":[{"a":"0","b":"0","c":"0","d":"0"},"#),
        "{out}"
    );
    let (code, out, _) = call(&["enumerate", "--kind", "processes"], &bare());
    assert_eq!(code, 0);
    assert!(out.starts_with(r#"{"count":26,"processes":["#));

    let (code, out, _) = call(&["check-bijection"], &bare());
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "{\"bijection\":true,\"comparison\":\"exact\",\"roundtrip_failures\":[],\"stopping_process_count\":26,\"stopping_time_count\":26}\n"
    );
    let (code, out, _) = call(&["check-bijection", "--as"], &bare());
    assert_eq!(code, 0);
    assert!(out.contains("almost_sure"));

    let (code, _, err) = call(&["enumerate", "--cap", "3"], &bare());
    assert_eq!(code, 2);
    assert!(err.contains("cap"));
}

#[test]
fn gen_is_deterministic_and_valid() {
    for kind in ["time", "process", "hit"] {
        let (code, a, _) = call(
            &[
                "gen",
                "--seed",
                "17",
                "--max-atoms",
                "5",
                "--max-times",
                "4",
                "--kind",
                kind,
            ],
            "",
        );
        assert_eq!(code, 0);
        let (_, b, _) = call(
            &[
                "gen",
                "--seed",
                "17",
                "--max-atoms",
                "5",
                "--max-times",
                "4",
                "--kind",
                kind,
            ],
            "",
        );
        assert_eq!(a, b);
        assert_eq!(serialize(&parse(&a).unwrap()), a);
        assert_eq!(call(&["verify-filtration"], &a).0, 0);
    }
    let (_, t, _) = call(&["gen", "--seed", "17"], "");
    assert_eq!(call(&["verify-time"], &t).0, 0);
    let (_, p, _) = call(&["gen", "--seed", "17", "--kind", "process"], "");
    assert_eq!(call(&["verify-process"], &p).0, 0);
    let (_, h, _) = call(&["gen", "--seed", "17", "--kind", "hit"], "");
    assert_eq!(call(&["hit"], &h).0, 0);
    assert_eq!(call(&["gen", "--max-atoms", "0"], "").0, 2);
}

#[test]
fn render_traffic_light() {
    let doc = with(r#""time":{"a":"1","b":"1","c":"inf","d":"0"}"#);
    let (code, out, _) = call(&["render"], &doc);
    assert_eq!(code, 0);
    assert_eq!(out, "t 0 1 2\na G R R\nb G R R\nc G G G\nd R R R\n");
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(call(&["no-such-command"], "").0, 2);
    assert_eq!(call(&["verify-time"], "{not json").0, 2);
    assert_eq!(call(&["verify-time"], &bare()).0, 2);
    assert_eq!(
        call(
            &["verify-time"],
            &bare().replace(r#""version":"1""#, r#""version":"9""#)
        )
        .0,
        2
    );
    let dangling = with(r#""time":{"a":"1","b":"1","c":"1","d":"1","zz":"1"}"#);
    let (code, _, err) = call(&["verify-time"], &dangling);
    assert_eq!(code, 2);
    assert!(err.contains("time.zz"), "{err}");
    assert_eq!(
        call(&["verify-time", "--in", "/nonexistent/file.json"], "").0,
        2
    );
}

#[test]
fn files_in_and_out() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.json");
    let output = dir.path().join("out.json");
    let doc = with(r#""time":{"a":"2","b":"2","c":"1","d":"1"}"#);
    std::fs::write(&input, &doc).unwrap();
    let (code, out, _) = call(
        &[
            "to-process",
            "--in",
            input.to_str().unwrap(),
            "--out",
            output.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!((code, out.as_str()), (0, ""));
    let (code, back, _) = call(&["to-time", "--in", output.to_str().unwrap()], "");
    assert_eq!(code, 0);
    assert_eq!(back, doc);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_stopping");
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    let bad = dir.path().join("bad.json");
    let broken = dir.path().join("broken.json");
    std::fs::write(
        &good,
        with(r#""time":{"a":"inf","b":"inf","c":"inf","d":"inf"}"#),
    )
    .unwrap();
    std::fs::write(
        &bad,
        with(r#""time":{"a":"0","b":"inf","c":"inf","d":"inf"}"#),
    )
    .unwrap();
    std::fs::write(&broken, "[").unwrap();
    for (path, expected) in [(&good, 0), (&bad, 1), (&broken, 2)] {
        let status = Command::new(bin)
            .args(["verify-time", "--in", path.to_str().unwrap()])
            .output()
            .unwrap();
        assert_eq!(status.status.code(), Some(expected));
    }
}

fn generated_document(seed: u64) -> InstanceDocument {
    let f = gen_filtration(seed, 6, 5);
    let mut doc = InstanceDocument::from_filtration(f.clone());
    let range = ValueRange::default();
    match seed % 3 {
        0 => doc.set_time(Some(gen_stopping_time(seed, &f))).unwrap(),
        1 => doc
            .set_process(Some(Process::Binary(gen_stopping_process(seed, &f))))
            .unwrap(),
        _ => {
            doc.set_process(Some(Process::Real(gen_adapted_real_process(
                seed, &f, &range,
            ))))
            .unwrap();
            doc.set_borel_set(Some(gen_borel_set(seed, &range)));
        }
    }
    doc
}

proptest! {
    #[test]
    fn parse_serialize_round_trip(seed in any::<u64>()) {
        let doc = generated_document(seed);
        let text = serialize(&doc);
        let again = parse(&text).unwrap();
        prop_assert_eq!(&again, &doc);
        prop_assert_eq!(serialize(&again), text);
    }
}
