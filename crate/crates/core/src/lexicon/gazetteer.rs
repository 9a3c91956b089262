use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::LexiconError;

const BUNDLED: &str = include_str!("../../data/stranger_gazetteer.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PronounClass {
    FirstPerson,
    ThirdMasculine,
    ThirdFeminine,
}

impl PronounClass {
    pub const ALL: [PronounClass; 3] = [
        PronounClass::FirstPerson,
        PronounClass::ThirdMasculine,
        PronounClass::ThirdFeminine,
    ];

    /// Folded surface forms belonging to this class.
    pub fn forms(self) -> &'static [&'static str] {
        match self {
            PronounClass::FirstPerson => &[
                "i", "me", "my", "mine", "myself", "i'm", "i've", "i'd", "i'll",
            ],
            PronounClass::ThirdMasculine => {
                &["he", "him", "his", "himself", "he's", "he'd", "he'll"]
            }
            PronounClass::ThirdFeminine => {
                &["she", "her", "hers", "herself", "she's", "she'd", "she'll"]
            }
        }
    }

    pub fn classify(folded: &str) -> Option<PronounClass> {
        PronounClass::ALL
            .into_iter()
            .find(|c| c.forms().contains(&folded))
    }
}

/// Static pronoun resolution targets.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PronounMap {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_person: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub third_masculine: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub third_feminine: Option<String>,
}

impl PronounMap {
    pub fn get(&self, class: PronounClass) -> Option<&str> {
        match class {
            PronounClass::FirstPerson => self.first_person.as_deref(),
            PronounClass::ThirdMasculine => self.third_masculine.as_deref(),
            PronounClass::ThirdFeminine => self.third_feminine.as_deref(),
        }
    }

    pub fn set(&mut self, class: PronounClass, target: Option<String>) {
        let slot = match class {
            PronounClass::FirstPerson => &mut self.first_person,
            PronounClass::ThirdMasculine => &mut self.third_masculine,
            PronounClass::ThirdFeminine => &mut self.third_feminine,
        };
        *slot = target;
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GazetteerDoc {
    characters: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    narrator: Option<String>,
    #[serde(default)]
    pronoun_map: PronounMap,
}

#[derive(Serialize)]
struct GazetteerOut<'a> {
    characters: &'a BTreeMap<String, BTreeSet<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    narrator: &'a Option<String>,
    pronoun_map: &'a PronounMap,
}

/// Canonical character names with case-sensitive aliases, plus static
/// pronoun resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterGazetteer {
    characters: BTreeMap<String, BTreeSet<String>>,
    narrator: Option<String>,
    pronoun_map: PronounMap,
    alias_owner: HashMap<String, String>,
}

impl CharacterGazetteer {
    pub fn from_json(src: &str) -> Result<Self, LexiconError> {
        let de = &mut serde_json::Deserializer::from_str(src);
        let doc: GazetteerDoc = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            let message = format!("{inner}");
            LexiconError::json(
                if path == "." {
                    "$".into()
                } else {
                    format!("$.{path}")
                },
                message,
            )
        })?;
        Self::new(doc.characters, doc.narrator, doc.pronoun_map)
    }

    pub fn new(
        characters: BTreeMap<String, Vec<String>>,
        narrator: Option<String>,
        mut pronoun_map: PronounMap,
    ) -> Result<Self, LexiconError> {
        if characters.is_empty() {
            return Err(LexiconError::json("$.characters", "no characters defined"));
        }
        let mut alias_owner: HashMap<String, String> = HashMap::new();
        let mut sets = BTreeMap::new();
        for (name, aliases) in characters {
            if name.trim().is_empty() {
                return Err(LexiconError::json("$.characters", "empty character name"));
            }
            if aliases.is_empty() {
                return Err(LexiconError::json(
                    format!("$.characters.{name}"),
                    "character has no aliases",
                ));
            }
            for (i, alias) in aliases.iter().enumerate() {
                if alias.trim().is_empty() || alias.trim() != alias {
                    return Err(LexiconError::json(
                        format!("$.characters.{name}[{i}]"),
                        "alias is empty or has surrounding whitespace",
                    ));
                }
                if let Some(other) = alias_owner.get(alias) {
                    if other != &name {
                        return Err(LexiconError::json(
                            format!("$.characters.{name}[{i}]"),
                            format!("alias '{alias}' is claimed by both '{other}' and '{name}'"),
                        ));
                    }
                }
                alias_owner.insert(alias.clone(), name.clone());
            }
            sets.insert(name, aliases.into_iter().collect::<BTreeSet<_>>());
        }
        if let Some(n) = &narrator {
            if !sets.contains_key(n) {
                return Err(LexiconError::json(
                    "$.narrator",
                    format!("narrator '{n}' is not a defined character"),
                ));
            }
            if pronoun_map.first_person.is_none() {
                pronoun_map.first_person = Some(n.clone());
            }
        }
        for class in PronounClass::ALL {
            if let Some(target) = pronoun_map.get(class) {
                if !sets.contains_key(target) {
                    return Err(LexiconError::json(
                        format!("$.pronoun_map.{}", class_key(class)),
                        format!("target '{target}' is not a defined character"),
                    ));
                }
            }
        }
        Ok(CharacterGazetteer {
            characters: sets,
            narrator,
            pronoun_map,
            alias_owner,
        })
    }

    pub fn bundled() -> Self {
        Self::from_json(BUNDLED).expect("bundled gazetteer is valid")
    }

    /// Replace the narrator; first-person pronouns follow the new narrator.
    pub fn with_narrator(self, narrator: &str) -> Result<Self, LexiconError> {
        let mut pronouns = self.pronoun_map.clone();
        if pronouns.first_person == self.narrator {
            pronouns.first_person = None;
        }
        Self::new(
            self.characters_as_lists(),
            Some(narrator.to_owned()),
            pronouns,
        )
    }

    pub fn with_pronoun(
        self,
        class: PronounClass,
        target: Option<&str>,
    ) -> Result<Self, LexiconError> {
        let mut pronouns = self.pronoun_map.clone();
        pronouns.set(class, target.map(str::to_owned));
        Self::new(self.characters_as_lists(), self.narrator.clone(), pronouns)
    }

    /// Add an alias to an existing character.
    pub fn with_alias(self, character: &str, alias: &str) -> Result<Self, LexiconError> {
        let mut lists = self.characters_as_lists();
        lists
            .get_mut(character)
            .ok_or_else(|| {
                LexiconError::json("$.characters", format!("unknown character '{character}'"))
            })?
            .push(alias.to_owned());
        Self::new(lists, self.narrator.clone(), self.pronoun_map.clone())
    }

    fn characters_as_lists(&self) -> BTreeMap<String, Vec<String>> {
        self.characters
            .iter()
            .map(|(k, v)| (k.clone(), v.iter().cloned().collect()))
            .collect()
    }

    pub fn characters(&self) -> &BTreeMap<String, BTreeSet<String>> {
        &self.characters
    }

    pub fn narrator(&self) -> Option<&str> {
        self.narrator.as_deref()
    }

    pub fn pronoun_map(&self) -> &PronounMap {
        &self.pronoun_map
    }

    /// Canonical owner of an alias.
    pub fn owner(&self, alias: &str) -> Option<&str> {
        self.alias_owner.get(alias).map(String::as_str)
    }

    pub fn aliases(&self) -> impl Iterator<Item = (&str, &str)> {
        self.characters
            .iter()
            .flat_map(|(name, set)| set.iter().map(move |a| (a.as_str(), name.as_str())))
    }

    pub fn alias_count(&self) -> usize {
        self.alias_owner.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&GazetteerOut {
            characters: &self.characters,
            narrator: &self.narrator,
            pronoun_map: &self.pronoun_map,
        })
        .expect("gazetteer serializes")
    }
}

fn class_key(class: PronounClass) -> &'static str {
    match class {
        PronounClass::FirstPerson => "first_person",
        PronounClass::ThirdMasculine => "third_masculine",
        PronounClass::ThirdFeminine => "third_feminine",
    }
}
