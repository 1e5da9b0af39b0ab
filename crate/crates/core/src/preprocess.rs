//! Track-aware text normalization.
//!
//! English text gets emoji names, punctuation removal and Latin lowercasing.
//! Tamil and code-mixed text keep their punctuation. Non-Latin scripts pass
//! through every recipe unchanged.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;

use unicode_categories::UnicodeCategories;

use crate::corpus::Track;
use crate::error::{Error, Result};
use crate::tsv::numbered_lines;

const BUNDLED_EMOJI: &str = include_str!("../data/emoji.tsv");

/// Emoji sequence to lowercase name words, e.g. `💗` to `growing heart`.
///
/// Names are made of alphanumeric characters and single spaces, so they can
/// never contain an emoji and replacement is idempotent.
#[derive(Debug, Clone)]
pub struct EmojiTable {
    names: HashMap<String, String>,
    first_chars: HashSet<char>,
    key_chars: HashSet<char>,
    longest_key: usize,
}

impl EmojiTable {
    /// The table shipped with the crate (CLDR short names).
    pub fn bundled() -> Self {
        Self::from_tsv(BUNDLED_EMOJI).expect("bundled emoji table is valid")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_tsv(&content)
    }

    /// Parses `1F497<TAB>growing heart` rows; `#` lines are comments.
    pub fn from_tsv(content: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (line, row) in numbered_lines(content) {
            if row.starts_with('#') {
                continue;
            }
            let (codes, name) = row
                .split_once('\t')
                .ok_or_else(|| Error::parse(line, "expected <codepoints>\\t<name>"))?;
            let key = codes
                .split('-')
                .map(|hex| {
                    u32::from_str_radix(hex, 16)
                        .ok()
                        .and_then(char::from_u32)
                        .ok_or_else(|| Error::parse(line, format!("bad code point {hex:?}")))
                })
                .collect::<Result<String>>()?;
            entries.push((line, key, name.to_string()));
        }
        Self::build(entries)
    }

    pub fn from_entries<I, K, V>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (K, V)>,
        K: Into<String>,
        V: Into<String>,
    {
        Self::build(
            entries
                .into_iter()
                .enumerate()
                .map(|(i, (k, v))| (i + 1, k.into(), v.into()))
                .collect(),
        )
    }

    fn build(entries: Vec<(usize, String, String)>) -> Result<Self> {
        let mut table = EmojiTable {
            names: HashMap::with_capacity(entries.len()),
            first_chars: HashSet::new(),
            key_chars: HashSet::new(),
            longest_key: 0,
        };
        for (line, key, name) in entries {
            let words_ok = !name.is_empty()
                && name.split(' ').all(|w| !w.is_empty())
                && name.chars().all(|c| c == ' ' || c.is_alphanumeric());
            if !words_ok {
                return Err(Error::parse(
                    line,
                    format!("emoji name {name:?} must be words separated by single spaces"),
                ));
            }
            let Some(first) = key.chars().next() else {
                return Err(Error::parse(line, "empty emoji key"));
            };
            table.first_chars.insert(first);
            table.key_chars.extend(key.chars());
            table.longest_key = table.longest_key.max(key.chars().count());
            table.names.insert(key, name);
        }
        // A key made only of name-like characters could reappear inside a
        // replacement, which would break idempotence.
        for key in table.names.keys() {
            if key.chars().all(|c| c == ' ' || c.is_alphanumeric()) {
                if let Some(name) = table.names.values().find(|n| n.contains(key.as_str())) {
                    return Err(Error::Config(format!("emoji name {name:?} contains the key {key:?}")));
                }
            }
        }
        Ok(table)
    }

    pub fn get(&self, emoji: &str) -> Option<&str> {
        self.names.get(emoji).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    fn is_pictographic(&self, c: char) -> bool {
        let cp = c as u32;
        matches!(cp, 0x1F000..=0x1FAFF | 0x2600..=0x27BF)
            || (cp >= 0x2000 && c != '\u{200D}' && !is_presentation_mark(c) && self.key_chars.contains(&c))
    }
}

/// Selectors, keycap combiner and tag characters carry no text of their own.
fn is_presentation_mark(c: char) -> bool {
    matches!(c as u32, 0xFE0E | 0xFE0F | 0x20E3 | 0xE0020..=0xE007F)
}

/// Which transforms [`preprocess`] applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PreprocessRecipe {
    pub strip_punctuation: bool,
    pub deemojify: bool,
    pub lowercase_latin: bool,
}

impl PreprocessRecipe {
    /// English strips punctuation; all tracks de-emojify and lowercase.
    pub fn for_track(track: Track) -> Self {
        PreprocessRecipe {
            strip_punctuation: track == Track::English,
            deemojify: true,
            lowercase_latin: true,
        }
    }

    /// Whitespace normalization only.
    pub fn none() -> Self {
        PreprocessRecipe {
            strip_punctuation: false,
            deemojify: false,
            lowercase_latin: false,
        }
    }
}

fn collapse_whitespace(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for word in text.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(word);
    }
    out
}

/// Deletes every Unicode punctuation character (Pc, Pd, Ps, Pe, Pi, Pf, Po)
/// and collapses the remaining whitespace.
pub fn remove_punctuation(text: &str) -> String {
    let kept: String = text.chars().filter(|c| !c.is_punctuation()).collect();
    collapse_whitespace(&kept)
}

pub fn deemojify(text: &str, table: &EmojiTable) -> String {
    deemojify_counted(text, table).0
}

/// Replaces each emoji with its name words (longest match first) and returns
/// the number of unknown emoji that were dropped.
///
/// A zero-width joiner is only removed when it sits inside an emoji run, as
/// Indic scripts use it within words.
pub fn deemojify_counted(text: &str, table: &EmojiTable) -> (String, usize) {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = String::with_capacity(text.len() + 16);
    let mut unknown = 0;
    let mut in_emoji = false;
    let mut i = 0;

    while i < chars.len() {
        let (start, c) = chars[i];
        if table.first_chars.contains(&c) {
            let longest = table.longest_key.min(chars.len() - i);
            let found = (1..=longest).rev().find_map(|n| {
                let end = chars.get(i + n).map_or(text.len(), |&(pos, _)| pos);
                table.get(&text[start..end]).map(|name| (n, name))
            });
            if let Some((n, name)) = found {
                out.push(' ');
                out.push_str(name);
                out.push(' ');
                in_emoji = true;
                i += n;
                continue;
            }
        }

        if table.is_pictographic(c) {
            unknown += 1;
            out.push(' ');
            in_emoji = true;
        } else if is_presentation_mark(c) || (c == '\u{200D}' && in_emoji) {
            // dropped
        } else {
            out.push(c);
            in_emoji = false;
        }
        i += 1;
    }
    (collapse_whitespace(&out), unknown)
}

fn is_latin(c: char) -> bool {
    matches!(c as u32,
        0x41..=0x5A | 0xC0..=0x24F | 0x1E00..=0x1EFF | 0x2C60..=0x2C7F | 0xA720..=0xA7FF | 0xFF21..=0xFF3A)
}

/// Lowercases Latin-script letters and leaves every other script as is.
pub fn lowercase_latin(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        if is_latin(c) {
            out.extend(c.to_lowercase());
        } else {
            out.push(c);
        }
    }
    out
}

pub fn preprocess(text: &str, recipe: PreprocessRecipe, table: &EmojiTable) -> String {
    preprocess_counted(text, recipe, table).0
}

/// De-emojify, strip punctuation, lowercase, then normalize whitespace.
/// Also returns the number of unknown emoji dropped.
pub fn preprocess_counted(text: &str, recipe: PreprocessRecipe, table: &EmojiTable) -> (String, usize) {
    let (mut out, unknown) = if recipe.deemojify {
        deemojify_counted(text, table)
    } else {
        (text.to_string(), 0)
    };
    if recipe.strip_punctuation {
        out = remove_punctuation(&out);
    }
    if recipe.lowercase_latin {
        out = lowercase_latin(&out);
    }
    (collapse_whitespace(&out), unknown)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::sync::OnceLock;

    fn table() -> &'static EmojiTable {
        static TABLE: OnceLock<EmojiTable> = OnceLock::new();
        TABLE.get_or_init(EmojiTable::bundled)
    }

    #[test]
    fn punctuation_examples() {
        assert_eq!(remove_punctuation(""), "");
        assert_eq!(remove_punctuation("!!!"), "");
        assert_eq!(
            remove_punctuation("I have to experience like that. So sad"),
            "I have to experience like that So sad"
        );
        assert_eq!(remove_punctuation("a - b"), "a b");
        assert_eq!(remove_punctuation("«quoted» (x) [y] {z} _u_ “v”"), "quoted x y z u v");
        assert_eq!(remove_punctuation("$5 + #tag @me"), "$5 + tag me");
    }

    #[test]
    fn bundled_table_names() {
        assert_eq!(table().get("💗"), Some("growing heart"));
        assert_eq!(deemojify("🙂", table()), "slightly smiling face");
        assert_eq!(deemojify("no emoji here", table()), "no emoji here");
    }

    #[test]
    fn deemojify_growing_hearts() {
        let out = lowercase_latin(&deemojify("I love it 💗💗💗", table()));
        assert_eq!(out, "i love it growing heart growing heart growing heart");
    }

    #[test]
    fn longest_sequence_wins() {
        // red heart with variation selector, and a ZWJ family sequence
        assert_eq!(deemojify("❤\u{FE0F}", table()), "red heart");
        assert_eq!(deemojify("❤", table()), "red heart");
        let family = "👨\u{200D}👩\u{200D}👧";
        assert_eq!(deemojify(family, table()), "family man woman girl");
        assert_eq!(deemojify("👨 👩", table()), "man woman");
    }

    #[test]
    fn unknown_emoji_are_counted_and_dropped() {
        let custom = EmojiTable::from_entries([("💗", "growing heart")]).unwrap();
        let (out, unknown) = deemojify_counted("ok 🙂 fine 💗\u{FE0F}", &custom);
        assert_eq!(out, "ok fine growing heart");
        assert_eq!(unknown, 1);
        assert_eq!(
            deemojify_counted("x\u{FE0F}\u{200D}y", table()),
            ("x\u{200D}y".to_string(), 0)
        );
    }

    #[test]
    fn zwj_survives_outside_emoji() {
        let text = "க்\u{200D}ஷ";
        assert_eq!(deemojify(text, table()), text);
    }

    #[test]
    fn table_rejects_bad_names() {
        assert!(EmojiTable::from_entries([("💗", "growing  heart")]).is_err());
        assert!(EmojiTable::from_entries([("💗", "growing_heart")]).is_err());
        assert!(EmojiTable::from_tsv("ZZZ\tname\n").is_err());
        assert!(EmojiTable::from_entries([("ab", "x"), ("💗", "grab")]).is_err());
    }

    #[test]
    fn english_recipe() {
        let english = PreprocessRecipe::for_track(Track::English);
        assert_eq!(preprocess("I love it 💗", english, table()), "i love it growing heart");
        assert_eq!(
            preprocess("I love it 💗💗💗", english, table()),
            "i love it growing heart growing heart growing heart"
        );
    }

    #[test]
    fn tamil_recipe_keeps_punctuation() {
        let tamil = PreprocessRecipe::for_track(Track::Tamil);
        assert_eq!(preprocess("நன்று!", tamil, table()), "நன்று!");
        assert_eq!(
            preprocess(
                "Semma Padam!! 😂",
                PreprocessRecipe::for_track(Track::TamilEnglish),
                table()
            ),
            "semma padam!! face with tears of joy"
        );
    }

    #[test]
    fn recipes_per_track() {
        assert!(PreprocessRecipe::for_track(Track::English).strip_punctuation);
        assert!(!PreprocessRecipe::for_track(Track::Tamil).strip_punctuation);
        assert!(!PreprocessRecipe::for_track(Track::TamilEnglish).strip_punctuation);
        for track in Track::ALL {
            assert!(PreprocessRecipe::for_track(track).deemojify);
        }
    }

    fn recipes() -> impl Strategy<Value = PreprocessRecipe> {
        (any::<bool>(), any::<bool>(), any::<bool>()).prop_map(|(s, d, l)| PreprocessRecipe {
            strip_punctuation: s,
            deemojify: d,
            lowercase_latin: l,
        })
    }

    const MIXED: &str = "[a-zA-Z .,!?'\\-\t\n]|[\u{0B80}-\u{0BFF}]|[😀-🙏]|💗|❤|\u{FE0F}|\u{200D}|\u{20E3}|[0-9#*]|©";

    proptest! {
        #[test]
        fn preprocess_is_idempotent(parts in proptest::collection::vec(MIXED, 0..40), recipe in recipes()) {
            let text: String = parts.concat();
            let once = preprocess(&text, recipe, table());
            prop_assert_eq!(preprocess(&once, recipe, table()), once.clone());
            prop_assert!(!once.contains(['\t', '\n']));
            prop_assert!(!once.contains("  "));
            prop_assert_eq!(once.trim(), once.as_str());
        }

        #[test]
        fn deemojify_is_idempotent(text in "\\PC{0,40}") {
            let once = deemojify(&text, table());
            prop_assert_eq!(deemojify(&once, table()), once);
        }

        #[test]
        fn punctuation_removal_shrinks_and_is_idempotent(text in "\\PC{0,60}") {
            let once = remove_punctuation(&text);
            prop_assert!(once.len() <= text.len());
            prop_assert_eq!(remove_punctuation(&once), once);
        }

        #[test]
        fn tamil_code_points_survive(tamil in "[\u{0B80}-\u{0BFF}]{1,20}", recipe in recipes()) {
            prop_assume!(!tamil.chars().any(char::is_whitespace));
            prop_assert_eq!(preprocess(&tamil, recipe, table()), tamil);
        }
    }
}
