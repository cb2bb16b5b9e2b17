//! Regenerates the bundled POS weight file from the tagged corpus.
//!
//! ```text
//! cargo run -p issuelens-core --example train_tagger -- \
//!     crates/core/assets/pos_train.tsv crates/core/assets/pos_weights.json
//! ```
//!
//! Training is seeded, so the output is reproducible byte for byte.

use std::path::PathBuf;

use issuelens_core::annotate::{parse_tagged_blocks, PerceptronModel};

fn main() {
    let mut args = std::env::args().skip(1);
    let corpus_path = PathBuf::from(args.next().unwrap_or_else(|| {
        "crates/core/assets/pos_train.tsv".to_string()
    }));
    let out_path = PathBuf::from(args.next().unwrap_or_else(|| {
        "crates/core/assets/pos_weights.json".to_string()
    }));

    let contents = std::fs::read_to_string(&corpus_path)
        .unwrap_or_else(|e| panic!("cannot read {}: {e}", corpus_path.display()));
    let sentences = parse_tagged_blocks(&contents, &corpus_path.display().to_string())
        .unwrap_or_else(|e| panic!("bad corpus: {e}"));
    eprintln!("training on {} sentences", sentences.len());

    let model = PerceptronModel::train(&sentences, 12, 42);
    let accuracy = model.evaluate(&sentences);
    eprintln!("training-set accuracy: {:.4}", accuracy);

    std::fs::write(&out_path, model.to_json())
        .unwrap_or_else(|e| panic!("cannot write {}: {e}", out_path.display()));
    eprintln!("wrote {}", out_path.display());
}
