//! Character mentions from gazetteer aliases and static pronoun mapping,
//! plus paragraph-level interaction counts.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::lexicon::{CharacterGazetteer, PronounClass};
use crate::text::words;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mention {
    /// Char offset within the paragraph.
    pub offset: usize,
    pub surface: String,
    pub character: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MentionSet {
    pub characters: BTreeSet<String>,
    pub evidence: Vec<Mention>,
}

fn boundary_before(text: &str, byte: usize) -> bool {
    text[..byte]
        .chars()
        .next_back()
        .is_none_or(|c| !c.is_alphanumeric())
}

fn boundary_after(text: &str, byte: usize) -> bool {
    text[byte..]
        .chars()
        .next()
        .is_none_or(|c| !c.is_alphanumeric())
}

pub fn detect_mentions(text: &str, gaz: &CharacterGazetteer) -> MentionSet {
    // byte ranges per character
    let mut hits: BTreeMap<&str, Vec<(usize, usize)>> = BTreeMap::new();
    for (alias, owner) in gaz.aliases() {
        for (start, m) in text.match_indices(alias) {
            let end = start + m.len();
            if boundary_before(text, start) && boundary_after(text, end) {
                hits.entry(owner).or_default().push((start, end));
            }
        }
    }

    let mut set = MentionSet::default();
    for (owner, mut ranges) in hits {
        // longest first at each start, then drop anything overlapping a kept range
        ranges.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        let mut kept_end = 0;
        for (start, end) in ranges {
            if start < kept_end {
                continue;
            }
            kept_end = end;
            set.evidence.push(Mention {
                offset: text[..start].chars().count(),
                surface: text[start..end].to_owned(),
                character: owner.to_owned(),
            });
        }
        set.characters.insert(owner.to_owned());
    }

    let pronouns = gaz.pronoun_map();
    for word in words(text) {
        let Some(class) = PronounClass::classify(&word.folded()) else {
            continue;
        };
        if let Some(target) = pronouns.get(class) {
            set.characters.insert(target.to_owned());
            set.evidence.push(Mention {
                offset: word.start,
                surface: word.surface.to_owned(),
                character: target.to_owned(),
            });
        }
    }
    set.evidence.sort();
    set
}

/// Number of paragraphs mentioning each character. Characters never
/// mentioned are absent.
pub fn interaction_counts<'a, I>(sets: I) -> BTreeMap<String, usize>
where
    I: IntoIterator<Item = &'a MentionSet>,
{
    let mut counts = BTreeMap::new();
    for set in sets {
        for name in &set.characters {
            *counts.entry(name.clone()).or_insert(0) += 1;
        }
    }
    counts
}

/// Paragraph co-occurrence counts keyed by name pair, smaller name first.
pub fn co_occurrence_edges<'a, I>(sets: I) -> BTreeMap<(String, String), usize>
where
    I: IntoIterator<Item = &'a MentionSet>,
{
    let mut edges = BTreeMap::new();
    for set in sets {
        let names: Vec<&String> = set.characters.iter().collect();
        for (i, a) in names.iter().enumerate() {
            for b in &names[i + 1..] {
                *edges.entry(((*a).clone(), (*b).clone())).or_insert(0) += 1;
            }
        }
    }
    edges
}
