//! Pluggable token counting.
//!
//! Word statistics use plain whitespace splitting; subword statistics depend
//! on whichever model tokenizer a deployment pairs with, so counting is a
//! trait rather than a built-in. The default counter splits on whitespace.
//! [`VocabTokenCounter`] loads a subword vocabulary file and approximates a
//! byte-pair tokenizer by greedy longest-prefix segmentation.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// Counts the tokens a text would occupy in some tokenization scheme.
pub trait TokenCounter: Send + Sync {
    fn count(&self, text: &str) -> usize;
}

/// Counts whitespace-delimited words. `str::split_whitespace` semantics:
/// any run of whitespace separates, leading/trailing runs are ignored.
#[derive(Debug, Clone, Copy, Default)]
pub struct WhitespaceTokenCounter;

impl TokenCounter for WhitespaceTokenCounter {
    fn count(&self, text: &str) -> usize {
        text.split_whitespace().count()
    }
}

/// Approximates a subword tokenizer from a plain vocabulary file
/// (one token per line, `#` comments allowed).
///
/// Each whitespace word is segmented greedily: repeatedly take the longest
/// vocabulary entry that prefixes the remaining word, falling back to a
/// single character when nothing matches. The piece count is the token count.
pub struct VocabTokenCounter {
    vocab: HashSet<String>,
    max_token_len: usize,
}

impl VocabTokenCounter {
    pub fn from_file(path: &Path) -> Result<Self> {
        let contents = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let vocab: HashSet<String> = contents
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_string)
            .collect();
        if vocab.is_empty() {
            return Err(Error::parse(path, 0, "vocabulary file contains no tokens"));
        }
        let max_token_len = vocab.iter().map(|t| t.chars().count()).max().unwrap_or(1);
        Ok(Self { vocab, max_token_len })
    }

    fn count_word(&self, word: &str) -> usize {
        let chars: Vec<char> = word.chars().collect();
        let mut pieces = 0;
        let mut start = 0;
        while start < chars.len() {
            let longest = (start + 1..=chars.len().min(start + self.max_token_len))
                .rev()
                .find(|&end| {
                    let candidate: String = chars[start..end].iter().collect();
                    self.vocab.contains(&candidate)
                });
            let end = longest.unwrap_or(start + 1);
            pieces += 1;
            start = end;
        }
        pieces
    }
}

impl TokenCounter for VocabTokenCounter {
    fn count(&self, text: &str) -> usize {
        text.split_whitespace().map(|w| self.count_word(w)).sum()
    }
}
