//! Binary gendered English pronoun detection.
//!
//! Matches the eight forms she/her/hers/herself/he/him/his/himself as whole
//! words, case-insensitively. "they" is deliberately not matched.

use serde::{Deserialize, Serialize};

/// The eight binary pronoun forms, lowercased.
pub const BINARY_PRONOUNS: [&str; 8] = [
    "she", "her", "hers", "herself", "he", "him", "his", "himself",
];

/// One pronoun occurrence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PronounHit {
    /// The matched form, lowercased.
    pub pronoun: String,
    /// Index of the word (maximal run of word characters) within the text.
    pub token_index: usize,
}

/// Word characters for boundary purposes: letters, digits, underscore.
/// Accented letters count as word characters, so "hers" does not match
/// inside "hersé".
fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Find all whole-word, case-insensitive occurrences of the binary pronoun
/// forms, in order of occurrence.
///
/// A whole word is a maximal run of word characters, so "she's" contains
/// the word "she" but "Shepherd" does not.
pub fn binary_pronouns(text: &str) -> Vec<PronounHit> {
    let mut hits = Vec::new();
    let mut token_index = 0;
    let mut chars = text.chars().peekable();
    let mut word = String::new();

    loop {
        match chars.next() {
            Some(c) if is_word_char(c) => {
                word.extend(c.to_lowercase());
                continue;
            }
            rest => {
                if !word.is_empty() {
                    if BINARY_PRONOUNS.contains(&word.as_str()) {
                        hits.push(PronounHit {
                            pronoun: std::mem::take(&mut word),
                            token_index,
                        });
                    } else {
                        word.clear();
                    }
                    token_index += 1;
                }
                if rest.is_none() {
                    break;
                }
            }
        }
    }
    hits
}

/// Line-level verdict used by segment labelling.
pub fn has_binary_pronoun(text: &str) -> bool {
    !binary_pronouns(text).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn forms(text: &str) -> Vec<String> {
        binary_pronouns(text).into_iter().map(|h| h.pronoun).collect()
    }

    #[test]
    fn finds_sentence_initial_she() {
        let hits = binary_pronouns("She is an engineer");
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].pronoun, "she");
        assert_eq!(hits[0].token_index, 0);
    }

    #[test]
    fn they_is_not_a_binary_pronoun() {
        assert!(forms("They slaughtered my wife, Adalind, and my three children.").is_empty());
    }

    #[test]
    fn no_match_inside_words() {
        assert!(forms("Shepherd chased the sheep").is_empty());
        assert!(forms("The theme is there").is_empty());
        assert!(forms("his_torian hers_elf").is_empty());
    }

    #[test]
    fn case_insensitive() {
        assert_eq!(forms("HIS work"), forms("his work"));
        assert_eq!(forms("He said SHE said hE"), vec!["he", "she", "he"]);
    }

    #[test]
    fn apostrophes_break_words() {
        assert_eq!(forms("she's gone"), vec!["she"]);
        assert_eq!(forms("it's his"), vec!["his"]);
    }

    #[test]
    fn accented_letters_extend_words() {
        // "hé" followed by more letters does not expose a bare "he".
        assert!(forms("hém hers\u{e9}").is_empty());
        assert_eq!(forms("hé he"), vec!["he"]);
    }

    #[test]
    fn token_index_counts_word_runs() {
        let hits = binary_pronouns("Well, he saw her.");
        assert_eq!(
            hits,
            vec![
                PronounHit { pronoun: "he".into(), token_index: 1 },
                PronounHit { pronoun: "her".into(), token_index: 3 },
            ]
        );
    }

    #[test]
    fn all_eight_forms_match() {
        for form in BINARY_PRONOUNS {
            assert_eq!(forms(&format!("x {form} y")), vec![form.to_string()]);
        }
    }
}
