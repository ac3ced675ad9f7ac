mod common;

use std::fs;
use std::path::Path;
use std::process::Command;

use jguard::cli::{run, EXIT_DATA, EXIT_OK, EXIT_USAGE};
use jguard::corpus::{load_corpus, write_corpus, Article, Corpus, Label};
use jguard::eval::{read_report, ReportEntry};
use jguard::synth::{generate_corpus, SynthConfig};

fn jg(args: &[&str]) -> i32 {
    let mut argv = vec!["jguard"];
    argv.extend_from_slice(args);
    run(argv)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn three_articles() -> Corpus {
    Corpus::new(
        "three",
        vec![
            Article::new("a1", "The council approved the plan on Jan. 5.\nIt takes effect in May.", Label::Human),
            Article::new("a2", "The plan, which was approved by the council on January 5, 2021, funds schools, parks, and roads.", Label::Ai)
                .with_generator("gpt3"),
            Article::new("a3,quoted", "Officials say 5 people attended at 8 PM!", Label::Ai).with_generator("gpt3"),
        ],
    )
    .unwrap()
}

#[test]
fn extract_writes_header_and_rows() {
    let dir = tempfile::tempdir().unwrap();
    let (c, out) = (dir.path().join("c.jsonl"), dir.path().join("f.csv"));
    write_corpus(&three_articles(), &c).unwrap();
    assert_eq!(jg(&["extract", "--in", s(&c), "--out", s(&out)]), EXIT_OK);
    let csv = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("id,label,mean_word_count_sent,"));
    assert!(lines[0].ends_with(",number_violations"));
    assert_eq!(lines[0].split(',').count(), 15);
    assert!(lines[1].starts_with("a1,0,"));
    assert!(lines[3].starts_with("\"a3,quoted\",1,"));
    let mut reader = csv::Reader::from_path(&out).unwrap();
    for rec in reader.records() {
        assert_eq!(rec.unwrap().len(), 15);
    }
}

#[test]
fn raw_and_normalized_extracts_differ() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.jsonl");
    write_corpus(&three_articles(), &c).unwrap();
    let (n, r) = (dir.path().join("n.csv"), dir.path().join("r.csv"));
    assert_eq!(jg(&["extract", "--in", s(&c), "--out", s(&n)]), EXIT_OK);
    assert_eq!(jg(&["extract", "--in", s(&c), "--out", s(&r), "--raw"]), EXIT_OK);
    let raw = fs::read_to_string(&r).unwrap();
    assert_ne!(fs::read_to_string(&n).unwrap(), raw);
    // a2: one sentence, 21 words in the lead
    let a2: Vec<&str> = raw.lines().nth(2).unwrap().split(',').collect();
    assert_eq!(a2[0], "a2");
    assert_eq!(a2[4], a2[2]);
}

#[test]
fn attack_then_extract_is_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (c, adv) = (dir.path().join("c.jsonl"), dir.path().join("adv.jsonl"));
    write_corpus(&three_articles(), &c).unwrap();
    assert_eq!(jg(&["attack", "--kind", "cyrillic", "--in", s(&c), "--out", s(&adv)]), EXIT_OK);
    let attacked = load_corpus(&adv).unwrap();
    assert_ne!(attacked.articles[0].text, three_articles().articles[0].text);
    assert!(attacked.articles[0].text.contains('\u{0430}'));
    let (f1, f2) = (dir.path().join("1.csv"), dir.path().join("2.csv"));
    assert_eq!(jg(&["extract", "--in", s(&c), "--out", s(&f1)]), EXIT_OK);
    assert_eq!(jg(&["extract", "--in", s(&adv), "--out", s(&f2)]), EXIT_OK);
    assert_eq!(fs::read(&f1).unwrap(), fs::read(&f2).unwrap());
}

#[test]
fn paraphrase_attack_needs_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.jsonl");
    write_corpus(&three_articles(), &c).unwrap();
    let out = dir.path().join("p.jsonl");
    assert_eq!(jg(&["attack", "--kind", "paraphrase", "--in", s(&c), "--out", s(&out)]), EXIT_USAGE);
    let para = dir.path().join("para.jsonl");
    fs::write(&para, "{\"id\":\"a1\",\"text\":\"Council backs plan.\"}\n").unwrap();
    assert_eq!(
        jg(&["attack", "--kind", "paraphrase", "--paraphrases", s(&para), "--in", s(&c), "--out", s(&out)]),
        EXIT_OK
    );
    assert_eq!(load_corpus(&out).unwrap().articles[0].text, "Council backs plan.");
    fs::write(&para, "{\"id\":\"zz\",\"text\":\"x\"}\n").unwrap();
    assert_eq!(
        jg(&["attack", "--kind", "paraphrase", "--paraphrases", s(&para), "--in", s(&c), "--out", s(&out)]),
        EXIT_DATA
    );
}

#[test]
fn train_eval_robustness_report() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = generate_corpus(&SynthConfig { n_per_class: 150, ai_trait_prob: 1.0, human_trait_prob: 0.0, ..Default::default() });
    let c = dir.path().join("synth.jsonl");
    write_corpus(&corpus, &c).unwrap();
    let splits = dir.path().join("splits");
    assert_eq!(jg(&["split", "--in", s(&c), "--out-dir", s(&splits)]), EXIT_OK);
    let (train, test, val) = (
        splits.join("synth-train.jsonl"),
        splits.join("synth-test.jsonl"),
        splits.join("synth-val.jsonl"),
    );
    assert_eq!(load_corpus(&train).unwrap().len() + load_corpus(&test).unwrap().len() + load_corpus(&val).unwrap().len(), 300);

    let lr = dir.path().join("lr.json");
    assert_eq!(jg(&["train-lr", "--train", s(&train), "--out", s(&lr)]), EXIT_OK);
    let eval = dir.path().join("eval.json");
    assert_eq!(jg(&["eval", "--model", s(&lr), "--test", s(&test), "--out", s(&eval)]), EXIT_OK);
    let entries = read_report(&eval).unwrap();
    let ReportEntry::Eval(r) = &entries[0] else { panic!("expected eval entry") };
    assert!(r.auroc >= 0.95, "auroc {}", r.auroc);
    assert_eq!(r.detector, "LR+JF");
    assert_eq!(r.generator, "synth");
    assert_eq!(r.n_test, 60);
    assert!(eval.with_extension("txt").exists());

    let rob = dir.path().join("rob.json");
    assert_eq!(jg(&["robustness", "--model", s(&lr), "--test", s(&test), "--kind", "cyrillic", "--out", s(&rob)]), EXIT_OK);
    let ReportEntry::Robustness(r) = &read_report(&rob).unwrap()[0] else { panic!("expected robustness entry") };
    assert_eq!(r.delta, 0.0);

    let fusion = dir.path().join("fusion.json");
    let emb = ["--pseudo-embeddings", "--dim", "8"];
    let mut args = vec!["train-fusion", "--train", s(&train), "--val", s(&val), "--out", s(&fusion)];
    args.extend(emb);
    args.extend(["--guidance-hidden", "32", "--guidance-out", "8", "--class-hidden", "4", "--epochs", "5", "--lr", "0.05"]);
    assert_eq!(jg(&args), EXIT_OK);
    let feval = dir.path().join("feval.json");
    let mut args = vec!["eval", "--model", s(&fusion), "--test", s(&test), "--out", s(&feval)];
    args.extend(emb);
    assert_eq!(jg(&args), EXIT_OK);
    assert_eq!(jg(&["eval", "--model", s(&fusion), "--test", s(&test), "--out", s(&feval)]), EXIT_USAGE);
    let wrong_dim = ["eval", "--model", s(&fusion), "--test", s(&test), "--out", s(&feval), "--pseudo-embeddings", "--dim", "4"];
    assert_eq!(jg(&wrong_dim), EXIT_DATA);
    let frob = dir.path().join("frob.json");
    let mut args = vec!["robustness", "--model", s(&fusion), "--test", s(&test), "--kind", "cyrillic", "--out", s(&frob)];
    args.extend(emb);
    assert_eq!(jg(&args), EXIT_OK);

    let all = dir.path().join("all.json");
    assert_eq!(jg(&["report", "--in", s(&eval), "--in", s(&feval), "--in", s(&rob), "--in", s(&frob), "--out", s(&all)]), EXIT_OK);
    assert_eq!(read_report(&all).unwrap().len(), 4);
    let table = fs::read_to_string(all.with_extension("txt")).unwrap();
    assert!(table.contains("LR+JF") && table.contains("Fusion+JF") && table.contains("synth/cyrillic"));
}

#[test]
fn binary_exit_codes_and_single_line_errors() {
    let bin = env!("CARGO_BIN_EXE_jguard");
    let out = Command::new(bin).args(["extract", "--in", "/nonexistent/c.jsonl", "--out", "/tmp/never.csv"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_DATA));
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with("error[data]: "));

    let out = Command::new(bin).args(["extract", "--bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    assert_eq!(String::from_utf8(out.stderr).unwrap().lines().count(), 1);

    let out = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
}

#[test]
fn malformed_corpus_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("bad.jsonl");
    fs::write(&c, "{\"id\":\"a\",\"text\":\"x\",\"label\":1}\nnot json\n").unwrap();
    assert_eq!(jg(&["extract", "--in", s(&c), "--out", s(&dir.path().join("o.csv"))]), EXIT_DATA);
    assert_eq!(jg(&["split", "--in", s(&c), "--out-dir", s(dir.path()), "--ratios", "7:x:1"]), EXIT_USAGE);
}
