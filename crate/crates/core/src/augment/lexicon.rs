use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::tsv::numbered_lines;

const BUNDLED_SYNONYMS: &str = include_str!("../../data/synonyms.tsv");
const BUNDLED_STOPWORDS: &str = include_str!("../../data/stopwords.txt");

/// Lowercase token to synonym tokens or phrases. Built from WordNet 3.0
/// synsets for the bundled English lexicon.
#[derive(Debug, Clone, Default)]
pub struct SynonymLexicon {
    entries: HashMap<String, Vec<String>>,
}

impl SynonymLexicon {
    pub fn english() -> Self {
        Self::from_tsv(BUNDLED_SYNONYMS).expect("bundled lexicon is valid")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_tsv(&content)
    }

    /// Rows are `token<TAB>syn1,syn2,...`; `#` lines are comments.
    pub fn from_tsv(content: &str) -> Result<Self> {
        let mut lexicon = SynonymLexicon::default();
        for (line, row) in numbered_lines(content) {
            if row.starts_with('#') {
                continue;
            }
            let (token, synonyms) = row
                .split_once('\t')
                .ok_or_else(|| Error::parse(line, "expected <token>\\t<synonyms>"))?;
            if token.trim().is_empty() {
                return Err(Error::parse(line, "empty token"));
            }
            lexicon.insert(token, synonyms.split(','));
        }
        Ok(lexicon)
    }

    /// Adds synonyms for `token`. Case is folded, whitespace normalized, and
    /// the token itself and duplicates are skipped.
    pub fn insert<'a>(&mut self, token: &str, synonyms: impl IntoIterator<Item = &'a str>) {
        let key = token.trim().to_lowercase();
        let entry = self.entries.entry(key.clone()).or_default();
        for synonym in synonyms {
            let synonym = synonym.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase();
            if !synonym.is_empty() && synonym != key && !entry.contains(&synonym) {
                entry.push(synonym);
            }
        }
        if entry.is_empty() {
            self.entries.remove(&key);
        }
    }

    /// Case-insensitive lookup; empty when the token has no synonyms.
    pub fn synonyms(&self, token: &str) -> &[String] {
        let found = match self.entries.get(token) {
            Some(list) => Some(list),
            None if token.chars().any(char::is_uppercase) => self.entries.get(&token.to_lowercase()),
            None => None,
        };
        found.map_or(&[], Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Tokens that synonym replacement and insertion never pick.
#[derive(Debug, Clone, Default)]
pub struct StopwordList {
    words: HashSet<String>,
}

impl StopwordList {
    pub fn english() -> Self {
        Self::from_lines(BUNDLED_STOPWORDS)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::from_lines(&content))
    }

    /// One token per line; blank and `#` lines are ignored.
    pub fn from_lines(content: &str) -> Self {
        let words = content
            .lines()
            .map(str::trim)
            .filter(|w| !w.is_empty() && !w.starts_with('#'))
            .map(str::to_lowercase)
            .collect();
        StopwordList { words }
    }

    pub fn contains(&self, token: &str) -> bool {
        self.words.contains(token) || self.words.contains(&token.to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

impl<S: AsRef<str>> FromIterator<S> for StopwordList {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        StopwordList {
            words: iter.into_iter().map(|w| w.as_ref().to_lowercase()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_lexicon_has_sad() {
        let lexicon = SynonymLexicon::english();
        let sad = lexicon.synonyms("sad");
        assert!(sad.iter().any(|s| s == "pitiful"), "{sad:?}");
        assert!(sad.iter().any(|s| s == "distressing"), "{sad:?}");
        assert_eq!(lexicon.synonyms("SAD"), sad);
        assert!(lexicon.synonyms("qwzx").is_empty());
    }

    #[test]
    fn self_synonyms_are_dropped() {
        let lexicon = SynonymLexicon::from_tsv("Sad\tsad,pitiful,Pitiful, sorry \nonly\tonly\n").unwrap();
        assert_eq!(lexicon.synonyms("sad"), ["pitiful", "sorry"]);
        assert!(lexicon.synonyms("only").is_empty());
        assert_eq!(lexicon.len(), 1);
    }

    #[test]
    fn malformed_lexicon_row() {
        let err = SynonymLexicon::from_tsv("good\tfine\nbroken\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn bundled_stopwords() {
        let stop = StopwordList::english();
        assert!(!stop.is_empty());
        for word in ["i", "have", "to", "that", "so", "the"] {
            assert!(stop.contains(word), "{word}");
        }
        assert!(stop.contains("The"));
        assert!(!stop.contains("sad"));
    }
}
