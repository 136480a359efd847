//! Data model and I/O for parallel bitext, CoNLL-U target parses, and NER
//! annotation sidecars, aligned by line index.
//!
//! Bitext comes as two plain-text files, one sentence per line. Parses come
//! as a CoNLL-U sidecar whose sentences align by order with the target
//! lines. NER spans come as a JSONL sidecar keyed by line number. Alignment
//! is strictly by index; there is no fuzzy realignment.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One aligned source/target sentence pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParallelSegment {
    /// 0-based line number within the corpus.
    pub index: usize,
    /// Source sentence text (English).
    pub src: String,
    /// Target sentence text.
    pub tgt: String,
    /// Dependency parse of the target sentence, when attached.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tgt_parse: Option<Vec<ParsedToken>>,
    /// NER spans over the source sentence, when attached.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ner_spans: Option<Vec<NerSpan>>,
}

impl ParallelSegment {
    pub fn new(index: usize, src: impl Into<String>, tgt: impl Into<String>) -> Self {
        ParallelSegment {
            index,
            src: src.into(),
            tgt: tgt.into(),
            tgt_parse: None,
            ner_spans: None,
        }
    }
}

/// One CoNLL-U token.
///
/// Feature maps use a `BTreeMap` so serialized output is deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParsedToken {
    /// 1-based token index within the sentence.
    pub id: usize,
    /// Surface form.
    pub form: String,
    /// Universal POS tag.
    pub upos: String,
    /// Morphological features; the key "Gender" with values "Masc"/"Fem"
    /// is the one consumed downstream.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub feats: BTreeMap<String, String>,
    /// Id of the governing token, 0 for the sentence root.
    pub head: usize,
    /// Dependency relation label.
    pub deprel: String,
}

impl ParsedToken {
    /// The token's "Gender" feature value, if any.
    pub fn gender_feat(&self) -> Option<&str> {
        self.feats.get("Gender").map(String::as_str)
    }
}

/// A named-entity span over the source sentence, in character offsets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NerSpan {
    /// Inclusive character offset into src.
    pub start: usize,
    /// Exclusive character offset into src.
    pub end: usize,
    /// Entity-type label, e.g. "PERSON" or "ORG".
    pub label: String,
}

/// One record of the NER JSONL sidecar.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NerRecord {
    pub line: usize,
    pub spans: Vec<NerSpan>,
}

fn read_lines(path: &Path) -> Result<Vec<String>> {
    let mut bytes = Vec::new();
    File::open(path)?.read_to_end(&mut bytes)?;
    let text = String::from_utf8(bytes).map_err(|e| Error::InvalidUtf8 {
        path: path.display().to_string(),
        line: e.as_bytes()[..e.utf8_error().valid_up_to()]
            .iter()
            .filter(|&&b| b == b'\n')
            .count()
            + 1,
    })?;
    Ok(text
        .lines()
        .map(|l| l.strip_suffix('\r').unwrap_or(l).to_string())
        .collect())
}

/// Load a parallel corpus from two one-sentence-per-line files.
///
/// Segment `i` pairs line `i` of each file; differing line counts are an
/// error rather than a silent truncation.
pub fn load_parallel_corpus(src_path: &Path, tgt_path: &Path) -> Result<Vec<ParallelSegment>> {
    let src_lines = read_lines(src_path)?;
    let tgt_lines = read_lines(tgt_path)?;
    if src_lines.len() != tgt_lines.len() {
        return Err(Error::LineCountMismatch {
            src: src_lines.len(),
            tgt: tgt_lines.len(),
        });
    }
    Ok(src_lines
        .into_iter()
        .zip(tgt_lines)
        .enumerate()
        .map(|(index, (src, tgt))| ParallelSegment::new(index, src, tgt))
        .collect())
}

/// Parse a CoNLL-U file into one token sequence per sentence.
///
/// Multiword-token ranges (ids like `1-2`) and empty nodes (ids like `1.1`)
/// are skipped. Comment lines start with `#`; blank lines separate
/// sentences. The head relation of every sentence is checked to form a tree
/// with a single root.
pub fn parse_conllu(path: &Path) -> Result<Vec<Vec<ParsedToken>>> {
    let reader = BufReader::new(File::open(path)?);
    parse_conllu_reader(reader)
}

/// [`parse_conllu`] over any buffered reader.
pub fn parse_conllu_reader<R: BufRead>(reader: R) -> Result<Vec<Vec<ParsedToken>>> {
    let mut sentences = Vec::new();
    let mut current: Vec<ParsedToken> = Vec::new();
    let mut sentence_start_line = 1;

    for (lineno, line) in reader.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line?;
        let line = line.strip_suffix('\r').unwrap_or(&line);

        if line.trim().is_empty() {
            if !current.is_empty() {
                validate_tree(&current, sentence_start_line)?;
                sentences.push(std::mem::take(&mut current));
            }
            sentence_start_line = lineno + 1;
            continue;
        }
        if line.starts_with('#') {
            continue;
        }

        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 10 {
            return Err(Error::Conllu {
                line: lineno,
                message: format!("expected 10 tab-separated columns, found {}", cols.len()),
            });
        }
        // Multiword-token ranges ("1-2") and empty nodes ("1.1") carry no
        // dependency structure of their own.
        if cols[0].contains('-') || cols[0].contains('.') {
            continue;
        }
        let id: usize = cols[0].parse().map_err(|_| Error::Conllu {
            line: lineno,
            message: format!("invalid token id {:?}", cols[0]),
        })?;
        let head: usize = cols[6].parse().map_err(|_| Error::Conllu {
            line: lineno,
            message: format!("non-integer head {:?}", cols[6]),
        })?;
        current.push(ParsedToken {
            id,
            form: cols[1].to_string(),
            upos: cols[3].to_string(),
            feats: parse_feats(cols[5]),
            head,
            deprel: cols[7].to_string(),
        });
    }
    if !current.is_empty() {
        validate_tree(&current, sentence_start_line)?;
        sentences.push(current);
    }
    Ok(sentences)
}

fn parse_feats(field: &str) -> BTreeMap<String, String> {
    let mut feats = BTreeMap::new();
    if field == "_" || field.is_empty() {
        return feats;
    }
    for pair in field.split('|') {
        if let Some((name, value)) = pair.split_once('=') {
            feats.insert(name.to_string(), value.to_string());
        }
    }
    feats
}

/// Check that token ids are 1..=n in order and heads form a single-rooted
/// tree with no cycles.
fn validate_tree(tokens: &[ParsedToken], line: usize) -> Result<()> {
    let n = tokens.len();
    let fail = |message: String| Error::Conllu { line, message };
    for (i, tok) in tokens.iter().enumerate() {
        if tok.id != i + 1 {
            return Err(fail(format!(
                "token ids are not consecutive: expected {}, found {}",
                i + 1,
                tok.id
            )));
        }
        if tok.head > n {
            return Err(fail(format!(
                "token {} has head {} outside the sentence",
                tok.id, tok.head
            )));
        }
        if tok.head == tok.id {
            return Err(fail(format!("token {} is its own head", tok.id)));
        }
    }
    let roots = tokens.iter().filter(|t| t.head == 0).count();
    if roots != 1 {
        return Err(fail(format!("expected a single root, found {roots}")));
    }
    // With exactly one root, a cycle exists iff some walk to the root
    // exceeds n steps.
    for tok in tokens {
        let mut cursor = tok.head;
        let mut steps = 0;
        while cursor != 0 {
            cursor = tokens[cursor - 1].head;
            steps += 1;
            if steps > n {
                return Err(fail(format!("cycle involving token {}", tok.id)));
            }
        }
    }
    Ok(())
}

/// Attach parsed sentences to segments by index. Counts must match.
pub fn attach_parses(
    mut corpus: Vec<ParallelSegment>,
    parses: Vec<Vec<ParsedToken>>,
) -> Result<Vec<ParallelSegment>> {
    if corpus.len() != parses.len() {
        return Err(Error::ParseCountMismatch {
            segments: corpus.len(),
            parses: parses.len(),
        });
    }
    for (seg, parse) in corpus.iter_mut().zip(parses) {
        seg.tgt_parse = Some(parse);
    }
    Ok(corpus)
}

/// Read an NER JSONL sidecar into a per-line span table for a corpus of
/// `total` segments. Lines without a record get an empty span list.
pub fn read_ner_sidecar(path: &Path, total: usize) -> Result<Vec<Vec<NerSpan>>> {
    let reader = BufReader::new(File::open(path)?);
    let mut table = vec![Vec::new(); total];
    for line in reader.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: NerRecord = serde_json::from_str(&line)?;
        if record.line >= total {
            return Err(Error::NerLineOutOfRange {
                line: record.line,
                total,
            });
        }
        table[record.line] = record.spans;
    }
    Ok(table)
}

/// Attach NER span tables to segments by index.
pub fn attach_ner(
    mut corpus: Vec<ParallelSegment>,
    ner: Vec<Vec<NerSpan>>,
) -> Result<Vec<ParallelSegment>> {
    if corpus.len() != ner.len() {
        return Err(Error::ParseCountMismatch {
            segments: corpus.len(),
            parses: ner.len(),
        });
    }
    for (seg, spans) in corpus.iter_mut().zip(ner) {
        seg.ner_spans = Some(spans);
    }
    Ok(corpus)
}

/// Write segments to the JSONL interchange format, one record per line.
pub fn write_corpus_jsonl<W: Write>(mut writer: W, corpus: &[ParallelSegment]) -> Result<()> {
    for seg in corpus {
        serde_json::to_writer(&mut writer, seg)?;
        writer.write_all(b"\n")?;
    }
    Ok(())
}

/// Read segments back from the JSONL interchange format.
pub fn read_corpus_jsonl<R: BufRead>(reader: R) -> Result<Vec<ParallelSegment>> {
    let mut corpus = Vec::new();
    for line in reader.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        corpus.push(serde_json::from_str(&line)?);
    }
    Ok(corpus)
}
