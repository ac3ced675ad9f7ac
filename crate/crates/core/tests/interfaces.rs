//! Reading encoder and paraphraser output files.

use std::fs;

use jguard::attack::{robustness_eval, AttackSpec};
use jguard::corpus::{load_paraphrases, Article, Corpus, Label};
use jguard::fusion::{
    decode_embeddings, encode_embeddings, load_embeddings, EmbeddingError, EmbeddingFile,
    EmbeddingRecord, EmbeddingSource, FusionModel, HeadShape, Model,
};
use jguard::FEATURE_COUNT;
use proptest::prelude::*;

/// Writes the layout by hand so the decoder is not checked against itself.
fn hand_encode(dim: u32, records: &[(&str, &[f32])]) -> Vec<u8> {
    let mut out = b"JGEMB1".to_vec();
    out.extend((records.len() as u32).to_le_bytes());
    out.extend(dim.to_le_bytes());
    for (id, v) in records {
        out.extend((id.len() as u16).to_le_bytes());
        out.extend(id.as_bytes());
        for x in *v {
            out.extend(x.to_le_bytes());
        }
    }
    out
}

#[test]
fn decodes_hand_built_file() {
    let bytes = hand_encode(2, &[("n-1", &[0.5, -1.25]), ("n-2", &[3.0, 0.0])]);
    let f = decode_embeddings(&bytes).unwrap();
    assert_eq!(f.dim, 2);
    assert_eq!(f.records[0], EmbeddingRecord { id: "n-1".into(), vector: vec![0.5, -1.25] });
    assert_eq!(f.records[1].vector, [3.0, 0.0]);
    assert_eq!(encode_embeddings(&f).unwrap(), bytes);
}

#[test]
fn rejects_duplicate_ids_and_bad_utf8() {
    let dup = hand_encode(1, &[("x", &[1.0]), ("x", &[2.0])]);
    assert_eq!(decode_embeddings(&dup), Err(EmbeddingError::DuplicateId("x".into())));
    let mut bad = hand_encode(1, &[("ab", &[1.0])]);
    bad[16] = 0xff;
    assert_eq!(decode_embeddings(&bad), Err(EmbeddingError::InvalidId(0)));
}

fn corpus() -> Corpus {
    let texts = [
        ("h1", "Officials say the plan will help five families.", Label::Human),
        ("h2", "The mayor plans to review the budget on Jan. 5.", Label::Human),
        ("a1", "The budget was approved by the council on January 5, 2021, and officials said it helped 7 families.", Label::Ai),
        ("a2", "The proposal was rejected at 3 PM, and researchers said schools, parks, and roads lost.", Label::Ai),
    ];
    Corpus::new("files", texts.iter().map(|(i, t, l)| Article::new(*i, *t, *l)).collect()).unwrap()
}

#[test]
fn fusion_robustness_from_sidecar_files() {
    let dir = tempfile::tempdir().unwrap();
    let c = corpus();
    let vec_for = |i: usize, shift: f32| -> Vec<f32> { vec![i as f32 + shift, 1.0, -0.5] };
    let write = |name: &str, shift: f32| {
        let f = EmbeddingFile {
            dim: 3,
            records: c
                .articles
                .iter()
                .enumerate()
                .map(|(i, a)| EmbeddingRecord { id: a.id.clone(), vector: vec_for(i, shift) })
                .collect(),
        };
        let p = dir.path().join(name);
        fs::write(&p, encode_embeddings(&f).unwrap()).unwrap();
        p
    };
    let pre = EmbeddingSource::from_file(load_embeddings(write("pre.jgemb", 0.0)).unwrap());
    let post = EmbeddingSource::from_file(load_embeddings(write("post.jgemb", 0.25)).unwrap());

    let para = dir.path().join("para.jsonl");
    fs::write(&para, "{\"id\":\"a1\",\"text\":\"The council approves the budget.\"}\n\n{\"id\":\"h2\",\"text\":\"The mayor reviews it.\"}\n").unwrap();
    assert_eq!(load_paraphrases(&para).unwrap().len(), 2);

    let shape = HeadShape { guidance_hidden: 16, guidance_out: 4, class_hidden: 4 };
    let model = Model::Fusion(FusionModel::new(3, FEATURE_COUNT, shape, 1).unwrap());
    let r = robustness_eval(&model, &c, Some(&pre), Some(&post), &AttackSpec::paraphrase(&para)).unwrap();
    assert_eq!(r.attack, "paraphrase");
    assert_eq!(r.delta, r.auroc_pre - r.auroc_post);
    assert!(robustness_eval(&model, &c, Some(&pre), None, &AttackSpec::cyrillic()).is_err());

    let partial = EmbeddingSource::from_file(decode_embeddings(&hand_encode(3, &[("h1", &[1.0, 0.0, 0.0])])).unwrap());
    assert!(robustness_eval(&model, &c, Some(&partial), Some(&post), &AttackSpec::cyrillic()).is_err());
}

proptest! {
    #[test]
    fn round_trips_any_file(
        dim in 1usize..6,
        rows in prop::collection::btree_map("\\PC{0,12}", prop::collection::vec(-1e30f32..1e30, 5), 0..8),
    ) {
        let f = EmbeddingFile {
            dim,
            records: rows.into_iter().map(|(id, v)| EmbeddingRecord { id, vector: v[..dim].to_vec() }).collect(),
        };
        let bytes = encode_embeddings(&f).unwrap();
        prop_assert_eq!(decode_embeddings(&bytes).unwrap(), f);
        for cut in [0, 5, 13, bytes.len().saturating_sub(1)] {
            if cut < bytes.len() {
                prop_assert!(decode_embeddings(&bytes[..cut]).is_err());
            }
        }
    }
}
