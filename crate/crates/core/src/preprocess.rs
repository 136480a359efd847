//! Corpus cleaning: exact-duplicate-pair removal, length-ratio filtering,
//! and stopword-coverage language identification.
//!
//! All filters are pure per-segment predicates except dedup, which keeps a
//! set of 128-bit content hashes so the seen-set stays small on very large
//! corpora.

use std::collections::{HashMap, HashSet};
use std::fmt;

use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::corpus::ParallelSegment;

/// Languages the toolchain can identify.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lang {
    En,
    Fr,
    De,
    Es,
    Unknown,
}

impl Lang {
    pub fn code(self) -> &'static str {
        match self {
            Lang::En => "en",
            Lang::Fr => "fr",
            Lang::De => "de",
            Lang::Es => "es",
            Lang::Unknown => "unknown",
        }
    }

    pub fn from_code(code: &str) -> Option<Lang> {
        match code {
            "en" => Some(Lang::En),
            "fr" => Some(Lang::Fr),
            "de" => Some(Lang::De),
            "es" => Some(Lang::Es),
            _ => None,
        }
    }
}

impl fmt::Display for Lang {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Candidate languages in tie-break order.
const KNOWN_LANGS: [Lang; 4] = [Lang::En, Lang::Fr, Lang::De, Lang::Es];

static STOPWORDS: Lazy<HashMap<Lang, HashSet<&'static str>>> = Lazy::new(|| {
    let mut map = HashMap::new();
    map.insert(
        Lang::En,
        include_str!("../data/stopwords/en.txt").lines().collect(),
    );
    map.insert(
        Lang::Fr,
        include_str!("../data/stopwords/fr.txt").lines().collect(),
    );
    map.insert(
        Lang::De,
        include_str!("../data/stopwords/de.txt").lines().collect(),
    );
    map.insert(
        Lang::Es,
        include_str!("../data/stopwords/es.txt").lines().collect(),
    );
    map
});

/// Cleaning thresholds and expected language pair.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PreprocessConfig {
    /// Maximum allowed token-count ratio between the longer and shorter side.
    pub max_length_ratio: f64,
    pub expected_src_lang: Lang,
    pub expected_tgt_lang: Lang,
    /// Sides with fewer whitespace tokens than this bypass the language
    /// filter.
    pub min_tokens_for_langid: usize,
    /// Disabled by the `--no-ratio` flag.
    pub ratio_filter: bool,
    /// Disabled by the `--no-langid` flag.
    pub langid_filter: bool,
}

impl PreprocessConfig {
    pub fn new(src_lang: Lang, tgt_lang: Lang) -> Self {
        PreprocessConfig {
            max_length_ratio: 9.0,
            expected_src_lang: src_lang,
            expected_tgt_lang: tgt_lang,
            min_tokens_for_langid: 4,
            ratio_filter: true,
            langid_filter: true,
        }
    }
}

impl Default for PreprocessConfig {
    fn default() -> Self {
        PreprocessConfig::new(Lang::En, Lang::De)
    }
}

/// 128-bit content hash of a sentence pair, compared after trimming
/// trailing whitespace. The 0x1F separator keeps ("ab","c") and ("a","bc")
/// distinct.
pub fn pair_hash(src: &str, tgt: &str) -> u128 {
    let mut hasher = Sha256::new();
    hasher.update(src.trim_end().as_bytes());
    hasher.update([0x1f]);
    hasher.update(tgt.trim_end().as_bytes());
    let digest = hasher.finalize();
    u128::from_be_bytes(digest[..16].try_into().expect("digest is 32 bytes"))
}

/// Remove exact duplicate sentence pairs, keeping the first occurrence.
pub fn dedup_exact_pairs(corpus: Vec<ParallelSegment>) -> Vec<ParallelSegment> {
    let mut seen = HashSet::new();
    corpus
        .into_iter()
        .filter(|seg| seen.insert(pair_hash(&seg.src, &seg.tgt)))
        .collect()
}

fn token_count(text: &str) -> usize {
    text.split_whitespace().count()
}

/// True iff both sides have at least one whitespace token and their token
/// counts are within `max_length_ratio` of each other.
pub fn length_ratio_ok(seg: &ParallelSegment, cfg: &PreprocessConfig) -> bool {
    let s = token_count(&seg.src);
    let t = token_count(&seg.tgt);
    if s == 0 || t == 0 {
        return false;
    }
    let (long, short) = if s >= t { (s, t) } else { (t, s) };
    long as f64 / short as f64 <= cfg.max_length_ratio
}

/// Identify the language whose stopword list covers the highest fraction of
/// the text's lowercased whitespace tokens.
///
/// Returns [`Lang::Unknown`] when no list matches any token. A tie between
/// languages with nonzero coverage resolves to the first of en, fr, de, es.
pub fn langid_of(text: &str) -> Lang {
    let tokens: Vec<String> = text
        .split_whitespace()
        .map(|t| t.to_lowercase())
        .collect();
    if tokens.is_empty() {
        return Lang::Unknown;
    }
    let mut best = Lang::Unknown;
    let mut best_hits = 0usize;
    for lang in KNOWN_LANGS {
        let list = &STOPWORDS[&lang];
        let hits = tokens.iter().filter(|t| list.contains(t.as_str())).count();
        if hits > best_hits {
            best = lang;
            best_hits = hits;
        }
    }
    best
}

fn langid_side_ok(text: &str, expected: Lang, cfg: &PreprocessConfig) -> bool {
    if token_count(text) < cfg.min_tokens_for_langid {
        return true;
    }
    let detected = langid_of(text);
    // Unknown means "not classified", which is not evidence of a wrong
    // language.
    detected == Lang::Unknown || detected == expected
}

/// Run the full cleaning pass: dedup, then per-segment filters, then dense
/// re-indexing from 0.
///
/// Segments with an empty side are always dropped so downstream stages can
/// assume non-empty text; `ratio_filter`/`langid_filter` toggle only their
/// respective checks.
pub fn preprocess(corpus: Vec<ParallelSegment>, cfg: &PreprocessConfig) -> Vec<ParallelSegment> {
    let deduped = dedup_exact_pairs(corpus);
    let mut kept: Vec<ParallelSegment> = deduped
        .into_iter()
        .filter(|seg| {
            if token_count(&seg.src) == 0 || token_count(&seg.tgt) == 0 {
                return false;
            }
            if cfg.ratio_filter && !length_ratio_ok(seg, cfg) {
                return false;
            }
            if cfg.langid_filter
                && (!langid_side_ok(&seg.src, cfg.expected_src_lang, cfg)
                    || !langid_side_ok(&seg.tgt, cfg.expected_tgt_lang, cfg))
            {
                return false;
            }
            true
        })
        .collect();
    for (i, seg) in kept.iter_mut().enumerate() {
        seg.index = i;
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(src: &str, tgt: &str) -> ParallelSegment {
        ParallelSegment::new(0, src, tgt)
    }

    fn pairs(corpus: &[ParallelSegment]) -> Vec<(String, String)> {
        corpus
            .iter()
            .map(|s| (s.src.clone(), s.tgt.clone()))
            .collect()
    }

    #[test]
    fn dedup_drops_exact_pairs_only() {
        let corpus = vec![seg("Hi", "Salut"), seg("Hi", "Salut")];
        assert_eq!(dedup_exact_pairs(corpus).len(), 1);

        let corpus = vec![seg("Hi", "Salut"), seg("Hi", "Coucou")];
        assert_eq!(dedup_exact_pairs(corpus).len(), 2);

        assert!(dedup_exact_pairs(Vec::new()).is_empty());
    }

    #[test]
    fn dedup_trims_trailing_whitespace_for_comparison() {
        let corpus = vec![seg("Hi", "Salut"), seg("Hi  ", "Salut")];
        let out = dedup_exact_pairs(corpus);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].src, "Hi");
    }

    #[test]
    fn ratio_rejects_ten_to_one_at_default_cap() {
        let cfg = PreprocessConfig::default();
        let s = seg("a b c d e f g h i j", "x");
        assert!(!length_ratio_ok(&s, &cfg));
    }

    #[test]
    fn ratio_accepts_equal_lengths() {
        let cfg = PreprocessConfig::default();
        assert!(length_ratio_ok(&seg("a b c", "x y z"), &cfg));
    }

    #[test]
    fn ratio_rejects_empty_side() {
        let cfg = PreprocessConfig::default();
        assert!(!length_ratio_ok(&seg("", "x"), &cfg));
    }

    #[test]
    fn langid_matches_bundled_lists() {
        assert_eq!(langid_of("the cat is on the mat"), Lang::En);
        assert_eq!(langid_of("le chat est sur le tapis"), Lang::Fr);
        assert_eq!(langid_of("xyzzy qwerty"), Lang::Unknown);
    }

    #[test]
    fn langid_examples_for_de_and_es() {
        assert_eq!(langid_of("das wetter war heute furchtbar"), Lang::De);
        assert_eq!(langid_of("el perro está en la casa"), Lang::Es);
    }

    #[test]
    fn preprocess_applies_all_three_filters() {
        let cfg = PreprocessConfig::default();
        let corpus = vec![
            seg("Hello there friend .", "Guten Morgen allerseits ."),
            seg("Hello there friend .", "Guten Morgen allerseits ."),
            seg("a b c d e f g h i j", "x"),
        ];
        let out = preprocess(corpus, &cfg);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].index, 0);
    }

    #[test]
    fn preprocess_drops_wrong_language_sides() {
        let cfg = PreprocessConfig::new(Lang::En, Lang::De);
        let corpus = vec![
            seg("You know where it is .", "Das werden wir sehen ."),
            seg("le chat est sur le tapis .", "Die Katze ist auf dem Teppich ."),
        ];
        let out = preprocess(corpus, &cfg);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].src, "You know where it is .");
    }

    #[test]
    fn short_lines_bypass_langid() {
        let cfg = PreprocessConfig::new(Lang::En, Lang::De);
        // "le chat" would classify as French but is below the token floor.
        let corpus = vec![seg("le chat", "Katze da")];
        assert_eq!(preprocess(corpus, &cfg).len(), 1);
    }

    #[test]
    fn preprocess_is_idempotent_and_reindexes() {
        let cfg = PreprocessConfig::default();
        let corpus = vec![
            seg("Good evening to all .", "Guten Abend zusammen ."),
            seg("Good evening to all .", "Guten Abend zusammen ."),
            seg("See you soon .", "Bis bald ."),
        ];
        let once = preprocess(corpus, &cfg);
        let twice = preprocess(once.clone(), &cfg);
        assert_eq!(once, twice);
        assert_eq!(
            once.iter().map(|s| s.index).collect::<Vec<_>>(),
            (0..once.len()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn preprocess_output_is_a_subsequence() {
        let cfg = PreprocessConfig::default();
        let corpus = vec![
            seg("One two three .", "Eins zwei drei ."),
            seg("", "leer"),
            seg("Next line here .", "Hier die nächste Zeile ."),
        ];
        let input_pairs = pairs(&corpus);
        let out = preprocess(corpus, &cfg);
        let out_pairs = pairs(&out);
        let mut cursor = 0;
        for p in &out_pairs {
            let pos = input_pairs[cursor..].iter().position(|q| q == p);
            assert!(pos.is_some(), "output pair not found in order: {p:?}");
            cursor += pos.unwrap() + 1;
        }
    }
}
