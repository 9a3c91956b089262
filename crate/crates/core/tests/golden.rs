//! Byte-for-byte comparison against committed outputs for the sample corpus.
//! Regenerate with `UPDATE_GOLDEN=1 cargo test --test golden`.

mod common;

use std::fs;

use common::*;

const GOLDEN: [&str; 7] = [
    "records.csv",
    "summary.json",
    "emotion_bar.svg",
    "sentiment_hist.svg",
    "character_bar.svg",
    "absurdity_line.svg",
    "dialogue_pie.svg",
];

#[test]
fn sample_outputs_match_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = analyze(&sample_path(), dir.path(), &["--jobs", "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let golden = data_dir().join("golden");
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    if update {
        fs::create_dir_all(&golden).unwrap();
    }
    for name in GOLDEN {
        let got = fs::read(dir.path().join(name)).unwrap();
        if update {
            fs::write(golden.join(name), &got).unwrap();
            continue;
        }
        let want = fs::read(golden.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(got == want, "{name} differs from the golden copy");
    }
}
