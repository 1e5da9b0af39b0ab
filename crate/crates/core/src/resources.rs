//! Lookup tables used by preprocessing and augmentation.

use std::path::Path;

use crate::augment::{StopwordList, SynonymLexicon};
use crate::error::Result;
use crate::preprocess::EmojiTable;

#[derive(Debug, Clone)]
pub struct Resources {
    pub emoji: EmojiTable,
    pub lexicon: SynonymLexicon,
    pub stopwords: StopwordList,
}

impl Resources {
    pub fn bundled() -> Self {
        Resources {
            emoji: EmojiTable::bundled(),
            lexicon: SynonymLexicon::english(),
            stopwords: StopwordList::english(),
        }
    }

    /// Bundled tables, each replaced by the file given for it.
    pub fn load(emoji: Option<&Path>, lexicon: Option<&Path>, stopwords: Option<&Path>) -> Result<Self> {
        Ok(Resources {
            emoji: emoji.map_or_else(|| Ok(EmojiTable::bundled()), EmojiTable::load)?,
            lexicon: lexicon.map_or_else(|| Ok(SynonymLexicon::english()), SynonymLexicon::load)?,
            stopwords: stopwords.map_or_else(|| Ok(StopwordList::english()), StopwordList::load)?,
        })
    }
}
