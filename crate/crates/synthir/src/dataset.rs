//! Corpus, query and qrels loading plus few-shot example sampling.
//!
//! File layouts follow the public BEIR distribution: corpus and query files
//! are JSONL with `_id`/`title`/`text` fields, qrels are tab-separated
//! `query-id  corpus-id  score` with a header row. A plain TSV layout is
//! supported as an alternative for corpora and queries.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tokens::TokenCounter;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub doc_id: String,
    pub title: String,
    pub text: String,
}

impl Document {
    /// Title and body joined into the single field used for indexing and
    /// prompt rendering. Empty titles contribute nothing.
    pub fn flattened(&self) -> String {
        if self.title.is_empty() {
            self.text.clone()
        } else {
            format!("{} {}", self.title, self.text)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Query {
    pub query_id: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QrelEntry {
    pub query_id: String,
    pub doc_id: String,
    pub relevance: u32,
}

/// Dataset splits in few-shot sampling priority order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Dev,
    Test,
}

impl Split {
    pub const ALL: [Split; 3] = [Split::Train, Split::Dev, Split::Test];

    pub fn name(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Dev => "dev",
            Split::Test => "test",
        }
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Split {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "train" => Ok(Split::Train),
            "dev" => Ok(Split::Dev),
            "test" => Ok(Split::Test),
            other => Err(Error::Config(format!("unknown split {other:?}"))),
        }
    }
}

/// Queries and judgments for one split.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SplitData {
    pub queries: BTreeMap<String, Query>,
    pub qrels: Vec<QrelEntry>,
}

/// An immutable corpus plus whichever splits were loaded. Splits that were
/// not loaded are absent from the map, not empty.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Dataset {
    pub corpus: BTreeMap<String, Document>,
    pub splits: BTreeMap<Split, SplitData>,
}

impl Dataset {
    pub fn split(&self, split: Split) -> Option<&SplitData> {
        self.splits.get(&split)
    }
}

/// A (query, document) pair with a positive judgment, used as a prompt example.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FewShotExample {
    pub query: Query,
    pub document: Document,
    pub origin_split: Split,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorpusStats {
    pub mean_doc_words: f64,
    pub mean_doc_tokens: f64,
    pub mean_query_words: f64,
    pub mean_query_tokens: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileFormat {
    BeirJsonl,
    Tsv,
}

impl std::str::FromStr for FileFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "beir-jsonl" => Ok(FileFormat::BeirJsonl),
            "tsv" => Ok(FileFormat::Tsv),
            other => Err(Error::Config(format!(
                "unknown format {other:?} (expected \"beir-jsonl\" or \"tsv\")"
            ))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CorpusLine {
    _id: String,
    #[serde(default)]
    title: String,
    #[serde(default)]
    text: String,
}

#[derive(Serialize, Deserialize)]
struct QueryLine {
    _id: String,
    #[serde(default)]
    text: String,
}

fn open_lines(path: &Path) -> Result<impl Iterator<Item = (usize, std::io::Result<String>)>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    Ok(BufReader::new(file).lines().enumerate().map(|(i, l)| (i + 1, l)))
}

fn clip(line: &str) -> String {
    if line.chars().count() > 120 {
        let cut: String = line.chars().take(120).collect();
        format!("{cut}…")
    } else {
        line.to_string()
    }
}

/// Loads a corpus file. One document per line; duplicate or empty ids are errors.
pub fn load_corpus(path: &Path, format: FileFormat) -> Result<BTreeMap<String, Document>> {
    let mut corpus = BTreeMap::new();
    for (line_no, line) in open_lines(path)? {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let doc = match format {
            FileFormat::BeirJsonl => {
                let parsed: CorpusLine = serde_json::from_str(&line).map_err(|e| {
                    Error::parse(path, line_no, format!("{e} in line: {}", clip(&line)))
                })?;
                Document { doc_id: parsed._id, title: parsed.title, text: parsed.text }
            }
            FileFormat::Tsv => {
                let fields: Vec<&str> = line.split('\t').collect();
                match fields.as_slice() {
                    [id, text] => Document {
                        doc_id: id.to_string(),
                        title: String::new(),
                        text: text.to_string(),
                    },
                    [id, title, text] => Document {
                        doc_id: id.to_string(),
                        title: title.to_string(),
                        text: text.to_string(),
                    },
                    _ => {
                        return Err(Error::parse(
                            path,
                            line_no,
                            format!(
                                "expected 2 or 3 tab-separated fields, found {} in line: {}",
                                fields.len(),
                                clip(&line)
                            ),
                        ))
                    }
                }
            }
        };
        if doc.doc_id.is_empty() {
            return Err(Error::parse(path, line_no, "empty doc_id"));
        }
        if corpus.contains_key(&doc.doc_id) {
            return Err(Error::DuplicateDocId { doc_id: doc.doc_id, line: line_no });
        }
        corpus.insert(doc.doc_id.clone(), doc);
    }
    Ok(corpus)
}

/// Loads a query file (same formats as the corpus, without titles).
pub fn load_queries(path: &Path, format: FileFormat) -> Result<BTreeMap<String, Query>> {
    let mut queries = BTreeMap::new();
    for (line_no, line) in open_lines(path)? {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let query = match format {
            FileFormat::BeirJsonl => {
                let parsed: QueryLine = serde_json::from_str(&line).map_err(|e| {
                    Error::parse(path, line_no, format!("{e} in line: {}", clip(&line)))
                })?;
                Query { query_id: parsed._id, text: parsed.text }
            }
            FileFormat::Tsv => {
                let fields: Vec<&str> = line.split('\t').collect();
                match fields.as_slice() {
                    [id, text] => Query { query_id: id.to_string(), text: text.to_string() },
                    _ => {
                        return Err(Error::parse(
                            path,
                            line_no,
                            format!(
                                "expected 2 tab-separated fields, found {} in line: {}",
                                fields.len(),
                                clip(&line)
                            ),
                        ))
                    }
                }
            }
        };
        if query.query_id.is_empty() {
            return Err(Error::parse(path, line_no, "empty query_id"));
        }
        if queries.contains_key(&query.query_id) {
            return Err(Error::parse(
                path,
                line_no,
                format!("duplicate query_id {:?}", query.query_id),
            ));
        }
        queries.insert(query.query_id.clone(), query);
    }
    Ok(queries)
}

/// Loads qrels from `query-id<TAB>corpus-id<TAB>score`. A header row is
/// detected by a non-numeric score field and skipped.
pub fn load_qrels(path: &Path) -> Result<Vec<QrelEntry>> {
    let mut qrels = Vec::new();
    let mut seen: BTreeSet<(String, String)> = BTreeSet::new();
    for (line_no, line) in open_lines(path)? {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(Error::parse(
                path,
                line_no,
                format!(
                    "expected 3 tab-separated fields, found {} in line: {}",
                    fields.len(),
                    clip(&line)
                ),
            ));
        }
        let relevance = match fields[2].trim().parse::<u32>() {
            Ok(r) => r,
            Err(_) if line_no == 1 => continue, // header row
            Err(e) => {
                return Err(Error::parse(
                    path,
                    line_no,
                    format!("bad relevance {:?}: {e}", fields[2]),
                ))
            }
        };
        let (query_id, doc_id) = (fields[0].to_string(), fields[1].to_string());
        if query_id.is_empty() || doc_id.is_empty() {
            return Err(Error::parse(path, line_no, "empty query_id or doc_id"));
        }
        if !seen.insert((query_id.clone(), doc_id.clone())) {
            return Err(Error::DuplicateQrel { query_id, doc_id, line: line_no });
        }
        qrels.push(QrelEntry { query_id, doc_id, relevance });
    }
    Ok(qrels)
}

/// Loads a corpus plus any provided splits and validates referential
/// integrity: every qrel must name a query of its split.
pub fn load_dataset(
    corpus_path: &Path,
    queries_paths: &BTreeMap<Split, std::path::PathBuf>,
    qrels_paths: &BTreeMap<Split, std::path::PathBuf>,
    format: FileFormat,
) -> Result<Dataset> {
    for split in qrels_paths.keys() {
        if !queries_paths.contains_key(split) {
            return Err(Error::Config(format!(
                "qrels provided for split {split} without a queries file"
            )));
        }
    }
    let corpus = load_corpus(corpus_path, format)?;
    let mut splits = BTreeMap::new();
    for (&split, queries_path) in queries_paths {
        let queries = load_queries(queries_path, format)?;
        let qrels = match qrels_paths.get(&split) {
            Some(path) => load_qrels(path)?,
            None => Vec::new(),
        };
        let offenders: Vec<String> = qrels
            .iter()
            .filter(|q| !queries.contains_key(&q.query_id))
            .map(|q| q.query_id.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if !offenders.is_empty() {
            return Err(Error::UnknownQrelQueries { split: split.name().to_string(), offenders });
        }
        splits.insert(split, SplitData { queries, qrels });
    }
    Ok(Dataset { corpus, splits })
}

/// Writes a corpus back to BEIR JSONL, sorted by doc id.
pub fn save_corpus(corpus: &BTreeMap<String, Document>, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    for doc in corpus.values() {
        let line = CorpusLine { _id: doc.doc_id.clone(), title: doc.title.clone(), text: doc.text.clone() };
        serde_json::to_writer(&mut out, &line).map_err(|e| Error::io(path, e.into()))?;
        out.write_all(b"\n").map_err(|e| Error::io(path, e))?;
    }
    out.flush().map_err(|e| Error::io(path, e))
}

/// Writes queries back to BEIR JSONL, sorted by query id.
pub fn save_queries(queries: &BTreeMap<String, Query>, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    for query in queries.values() {
        let line = QueryLine { _id: query.query_id.clone(), text: query.text.clone() };
        serde_json::to_writer(&mut out, &line).map_err(|e| Error::io(path, e.into()))?;
        out.write_all(b"\n").map_err(|e| Error::io(path, e))?;
    }
    out.flush().map_err(|e| Error::io(path, e))
}

/// Writes qrels with the standard header row.
pub fn save_qrels(qrels: &[QrelEntry], path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    writeln!(out, "query-id\tcorpus-id\tscore").map_err(|e| Error::io(path, e))?;
    for entry in qrels {
        writeln!(out, "{}\t{}\t{}", entry.query_id, entry.doc_id, entry.relevance)
            .map_err(|e| Error::io(path, e))?;
    }
    out.flush().map_err(|e| Error::io(path, e))
}

/// Draws `n` few-shot examples from the highest-priority split that has any
/// usable relevant pair (train, then dev, then test — the fallback chain used
/// when a dataset lacks training data).
///
/// A pair is usable when its judgment is positive, its query and document both
/// resolve, and the document is not excluded. Queries are drawn without
/// replacement: candidates are ordered lexicographically by query id and
/// shuffled with a seeded generator, so the draw is independent of map
/// iteration order. The second return value records queries taken from dev or
/// test, which callers must later withhold from evaluation.
pub fn sample_fewshot(
    dataset: &Dataset,
    n: usize,
    seed: u64,
    exclude_doc_ids: &BTreeSet<String>,
) -> Result<(Vec<FewShotExample>, BTreeSet<String>)> {
    if n == 0 {
        return Err(Error::Config("n must be at least 1".into()));
    }
    let mut chosen: Option<(Split, BTreeMap<&String, Vec<&String>>)> = None;
    for split in Split::ALL {
        let Some(data) = dataset.split(split) else { continue };
        let mut eligible: BTreeMap<&String, Vec<&String>> = BTreeMap::new();
        for qrel in &data.qrels {
            if qrel.relevance >= 1
                && data.queries.contains_key(&qrel.query_id)
                && dataset.corpus.contains_key(&qrel.doc_id)
                && !exclude_doc_ids.contains(&qrel.doc_id)
            {
                eligible.entry(&qrel.query_id).or_default().push(&qrel.doc_id);
            }
        }
        if !eligible.is_empty() {
            chosen = Some((split, eligible));
            break;
        }
    }
    let Some((split, eligible)) = chosen else {
        return Err(Error::InsufficientExamples { requested: n, available: 0, split: "any".into() });
    };
    if eligible.len() < n {
        return Err(Error::InsufficientExamples {
            requested: n,
            available: eligible.len(),
            split: split.name().to_string(),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut query_ids: Vec<&String> = eligible.keys().copied().collect();
    let (picked, _) = query_ids.partial_shuffle(&mut rng, n);

    let data = dataset.split(split).expect("chosen split present");
    let mut examples = Vec::with_capacity(n);
    let mut used_query_ids = BTreeSet::new();
    for &query_id in picked.iter() {
        let mut docs = eligible[query_id].clone();
        docs.sort();
        docs.dedup();
        let doc_id = docs[rng.gen_range(0..docs.len())];
        examples.push(FewShotExample {
            query: data.queries[query_id].clone(),
            document: dataset.corpus[doc_id].clone(),
            origin_split: split,
        });
        if split != Split::Train {
            used_query_ids.insert(query_id.clone());
        }
    }
    Ok((examples, used_query_ids))
}

/// Mean word and token counts over all documents (flattened) and all queries
/// across every loaded split. Word counts split on whitespace runs; token
/// counts come from the supplied counter. Values are kept at full precision;
/// rounding happens only at display time.
pub fn corpus_stats(dataset: &Dataset, counter: &dyn TokenCounter) -> Result<CorpusStats> {
    if dataset.corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut doc_words = 0usize;
    let mut doc_tokens = 0usize;
    for doc in dataset.corpus.values() {
        let flat = doc.flattened();
        doc_words += flat.split_whitespace().count();
        doc_tokens += counter.count(&flat);
    }
    let n_docs = dataset.corpus.len() as f64;

    let mut query_words = 0usize;
    let mut query_tokens = 0usize;
    let mut n_queries = 0usize;
    for data in dataset.splits.values() {
        for query in data.queries.values() {
            query_words += query.text.split_whitespace().count();
            query_tokens += counter.count(&query.text);
            n_queries += 1;
        }
    }
    let (mean_query_words, mean_query_tokens) = if n_queries == 0 {
        (0.0, 0.0)
    } else {
        (query_words as f64 / n_queries as f64, query_tokens as f64 / n_queries as f64)
    };
    Ok(CorpusStats {
        mean_doc_words: doc_words as f64 / n_docs,
        mean_doc_tokens: doc_tokens as f64 / n_docs,
        mean_query_words,
        mean_query_tokens,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tokens::WhitespaceTokenCounter;
    use std::io::Write as _;
    use std::path::PathBuf;
    use tempfile::TempDir;

    fn write_file(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
        let path = dir.path().join(name);
        let mut file = File::create(&path).unwrap();
        file.write_all(contents.as_bytes()).unwrap();
        path
    }

    pub(crate) fn toy_dataset() -> Dataset {
        let mut corpus = BTreeMap::new();
        for (id, title, text) in [
            ("d1", "Cats", "cats sit on mats"),
            ("d2", "Dogs", "dogs chase cats"),
            ("d3", "", "fish swim in water"),
            ("d4", "Birds", "birds fly high above"),
        ] {
            corpus.insert(
                id.to_string(),
                Document { doc_id: id.into(), title: title.into(), text: text.into() },
            );
        }
        let mut splits = BTreeMap::new();
        splits.insert(
            Split::Train,
            SplitData {
                queries: [
                    ("q1", "where do cats sit"),
                    ("q2", "what chases cats"),
                    ("q3", "where do fish swim"),
                ]
                .into_iter()
                .map(|(id, text)| {
                    (id.to_string(), Query { query_id: id.into(), text: text.into() })
                })
                .collect(),
                qrels: vec![
                    QrelEntry { query_id: "q1".into(), doc_id: "d1".into(), relevance: 1 },
                    QrelEntry { query_id: "q2".into(), doc_id: "d2".into(), relevance: 2 },
                    QrelEntry { query_id: "q3".into(), doc_id: "d3".into(), relevance: 1 },
                ],
            },
        );
        Dataset { corpus, splits }
    }

    #[test]
    fn loads_three_line_corpus() {
        let dir = TempDir::new().unwrap();
        let path = write_file(
            &dir,
            "corpus.jsonl",
            r#"{"_id": "a", "title": "T", "text": "one"}
{"_id": "b", "title": "", "text": "two"}
{"_id": "c", "text": "three"}
"#,
        );
        let corpus = load_corpus(&path, FileFormat::BeirJsonl).unwrap();
        assert_eq!(corpus.len(), 3);
        assert_eq!(corpus["a"].flattened(), "T one");
        assert_eq!(corpus["c"].flattened(), "three");
    }

    #[test]
    fn duplicate_doc_id_names_line() {
        let dir = TempDir::new().unwrap();
        let path = write_file(
            &dir,
            "corpus.jsonl",
            "{\"_id\": \"a\", \"text\": \"one\"}\n{\"_id\": \"a\", \"text\": \"two\"}\n",
        );
        match load_corpus(&path, FileFormat::BeirJsonl) {
            Err(Error::DuplicateDocId { doc_id, line }) => {
                assert_eq!(doc_id, "a");
                assert_eq!(line, 2);
            }
            other => panic!("expected duplicate error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_line_reports_position_and_content() {
        let dir = TempDir::new().unwrap();
        let path =
            write_file(&dir, "corpus.jsonl", "{\"_id\": \"a\", \"text\": \"one\"}\nnot json\n");
        match load_corpus(&path, FileFormat::BeirJsonl) {
            Err(Error::Parse { line, message, .. }) => {
                assert_eq!(line, 2);
                assert!(message.contains("not json"), "message: {message}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn tsv_corpus_two_and_three_columns() {
        let dir = TempDir::new().unwrap();
        let path = write_file(&dir, "corpus.tsv", "a\tAlpha\tfirst doc\nb\tsecond doc\n");
        let corpus = load_corpus(&path, FileFormat::Tsv).unwrap();
        assert_eq!(corpus["a"].title, "Alpha");
        assert_eq!(corpus["b"].title, "");
        assert_eq!(corpus["b"].text, "second doc");
    }

    #[test]
    fn qrels_header_detected_and_skipped() {
        let dir = TempDir::new().unwrap();
        let path =
            write_file(&dir, "qrels.tsv", "query-id\tcorpus-id\tscore\nq1\td1\t1\nq1\td2\t0\n");
        let qrels = load_qrels(&path).unwrap();
        assert_eq!(qrels.len(), 2);
        assert_eq!(qrels[0].relevance, 1);
    }

    #[test]
    fn qrels_headerless_also_accepted() {
        let dir = TempDir::new().unwrap();
        let path = write_file(&dir, "qrels.tsv", "q1\td1\t2\n");
        let qrels = load_qrels(&path).unwrap();
        assert_eq!(qrels.len(), 1);
        assert_eq!(qrels[0].relevance, 2);
    }

    #[test]
    fn qrel_with_unknown_query_lists_offenders() {
        let dir = TempDir::new().unwrap();
        let corpus = write_file(&dir, "corpus.jsonl", "{\"_id\": \"d1\", \"text\": \"x\"}\n");
        let queries = write_file(&dir, "queries.jsonl", "{\"_id\": \"q1\", \"text\": \"x\"}\n");
        let qrels = write_file(
            &dir,
            "qrels.tsv",
            "query-id\tcorpus-id\tscore\nq1\td1\t1\nq9\td1\t1\nq8\td1\t1\n",
        );
        let queries_paths = BTreeMap::from([(Split::Test, queries)]);
        let qrels_paths = BTreeMap::from([(Split::Test, qrels)]);
        match load_dataset(&corpus, &queries_paths, &qrels_paths, FileFormat::BeirJsonl) {
            Err(Error::UnknownQrelQueries { split, offenders }) => {
                assert_eq!(split, "test");
                assert_eq!(offenders, vec!["q8".to_string(), "q9".to_string()]);
            }
            other => panic!("expected unknown-query error, got {other:?}"),
        }
    }

    #[test]
    fn fewshot_prefers_train_split() {
        let dataset = toy_dataset();
        let (examples, used) = sample_fewshot(&dataset, 3, 7, &BTreeSet::new()).unwrap();
        assert_eq!(examples.len(), 3);
        assert!(examples.iter().all(|e| e.origin_split == Split::Train));
        assert!(used.is_empty());
    }

    #[test]
    fn fewshot_falls_back_to_test_and_records_queries() {
        let mut dataset = toy_dataset();
        let data = dataset.splits.remove(&Split::Train).unwrap();
        dataset.splits.insert(Split::Test, data);
        let (examples, used) = sample_fewshot(&dataset, 2, 7, &BTreeSet::new()).unwrap();
        assert_eq!(examples.len(), 2);
        assert!(examples.iter().all(|e| e.origin_split == Split::Test));
        assert_eq!(used.len(), 2);
    }

    #[test]
    fn fewshot_deterministic_for_seed() {
        let dataset = toy_dataset();
        let a = sample_fewshot(&dataset, 2, 3, &BTreeSet::new()).unwrap();
        let b = sample_fewshot(&dataset, 2, 3, &BTreeSet::new()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn fewshot_insufficient_pairs_is_an_error() {
        let dataset = toy_dataset();
        match sample_fewshot(&dataset, 10, 1, &BTreeSet::new()) {
            Err(Error::InsufficientExamples { requested, available, split }) => {
                assert_eq!(requested, 10);
                assert_eq!(available, 3);
                assert_eq!(split, "train");
            }
            other => panic!("expected insufficient-examples error, got {other:?}"),
        }
    }

    #[test]
    fn fewshot_respects_excluded_docs() {
        let dataset = toy_dataset();
        let exclude = BTreeSet::from(["d1".to_string()]);
        let (examples, _) = sample_fewshot(&dataset, 2, 5, &exclude).unwrap();
        assert!(examples.iter().all(|e| e.document.doc_id != "d1"));
    }

    #[test]
    fn fewshot_only_returns_positive_pairs() {
        let mut dataset = toy_dataset();
        dataset
            .splits
            .get_mut(&Split::Train)
            .unwrap()
            .qrels
            .push(QrelEntry { query_id: "q1".into(), doc_id: "d4".into(), relevance: 0 });
        for seed in 0..20 {
            let (examples, _) = sample_fewshot(&dataset, 3, seed, &BTreeSet::new()).unwrap();
            for example in &examples {
                let data = dataset.split(example.origin_split).unwrap();
                assert!(data.qrels.iter().any(|q| {
                    q.query_id == example.query.query_id
                        && q.doc_id == example.document.doc_id
                        && q.relevance >= 1
                }));
            }
        }
    }

    #[test]
    fn stats_single_doc() {
        let mut dataset = Dataset::default();
        dataset.corpus.insert(
            "d1".into(),
            Document { doc_id: "d1".into(), title: String::new(), text: "hello world".into() },
        );
        let stats = corpus_stats(&dataset, &WhitespaceTokenCounter).unwrap();
        assert_eq!(stats.mean_doc_words, 2.0);
        assert_eq!(stats.mean_query_words, 0.0);
    }

    #[test]
    fn stats_mean_over_docs() {
        let mut dataset = Dataset::default();
        for (id, text) in [("a", "a b"), ("b", "a b c d")] {
            dataset.corpus.insert(
                id.into(),
                Document { doc_id: id.into(), title: String::new(), text: text.into() },
            );
        }
        let stats = corpus_stats(&dataset, &WhitespaceTokenCounter).unwrap();
        assert_eq!(stats.mean_doc_words, 3.0);
    }

    #[test]
    fn stats_empty_corpus_is_an_error() {
        let dataset = Dataset::default();
        assert!(matches!(corpus_stats(&dataset, &WhitespaceTokenCounter), Err(Error::EmptyCorpus)));
    }

    #[test]
    fn save_load_round_trip_identity() {
        let dataset = toy_dataset();
        let dir = TempDir::new().unwrap();
        let corpus_path = dir.path().join("corpus.jsonl");
        let queries_path = dir.path().join("queries.jsonl");
        let qrels_path = dir.path().join("qrels.tsv");
        save_corpus(&dataset.corpus, &corpus_path).unwrap();
        let train = dataset.split(Split::Train).unwrap();
        save_queries(&train.queries, &queries_path).unwrap();
        save_qrels(&train.qrels, &qrels_path).unwrap();

        let queries_paths = BTreeMap::from([(Split::Train, queries_path)]);
        let qrels_paths = BTreeMap::from([(Split::Train, qrels_path)]);
        let reloaded =
            load_dataset(&corpus_path, &queries_paths, &qrels_paths, FileFormat::BeirJsonl)
                .unwrap();
        assert_eq!(reloaded, dataset);

        // and once more through serialization to confirm a fixed point
        let corpus_path2 = dir.path().join("corpus2.jsonl");
        save_corpus(&reloaded.corpus, &corpus_path2).unwrap();
        assert_eq!(
            std::fs::read(&corpus_path).unwrap(),
            std::fs::read(&corpus_path2).unwrap()
        );
    }
}
