//! Helpers shared by the unit tests.

use crate::entry::{ConceptEntry, Token};
use crate::morphotag::TagsetMapping;
use crate::tokenize::classify_surface;

/// Build a tagged entry from (surface, tag-string) pairs using the builtin
/// mapping; every tag must decode cleanly.
pub(crate) fn tagged_entry(pairs: &[(&str, &str)]) -> ConceptEntry {
    let mapping = TagsetMapping::builtin();
    let mut entry = ConceptEntry::new("t:1", "", "el", "t");
    let mut label = String::new();
    for (i, (surface, tag)) in pairs.iter().enumerate() {
        if i > 0 {
            label.push(' ');
        }
        label.push_str(surface);
        let mut token = Token::new(*surface, classify_surface(surface), i);
        if i > 0 {
            token.gap_before = " ".into();
        }
        let mut diags = Vec::new();
        token.tag = Some(mapping.decode_tag(tag, &mut diags).unwrap());
        assert!(diags.is_empty(), "tag {tag} decodes cleanly");
        entry.tokens.push(token);
    }
    entry.raw_label = label;
    entry
}
