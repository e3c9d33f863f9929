//! Deterministic synthetic two-class corpus generator.
//!
//! Generates documents with planted class-correlated vocabulary, shared
//! filler words, cross-class noise, and raw URLs/mentions/casing for the
//! cleaner to normalize. One block of always-co-occurring words violates
//! the per-word independence assumption on purpose: its eight members look
//! individually offensive by their marginal rates, while the rarer
//! non-offensive block documents are marked by a single override word.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const NON_OFFENSIVE: &str = "non-offensive";
pub const OFFENSIVE: &str = "offensive";

const FILLER: &[&str] = &[
    "the", "a", "to", "and", "of", "in", "on", "we", "you", "they", "day", "time", "people", "see",
    "know", "go", "make", "think", "just", "really", "about", "there", "what", "when", "who",
    "out", "up", "how", "this", "that", "with", "from", "have", "was", "will", "now", "today",
    "week", "thing", "still",
];

const FRIENDLY: &[&str] = &[
    "friend", "happy", "lovely", "great", "nice", "coffee", "music", "sunshine", "weekend",
    "family", "peace", "kind", "thanks", "smile", "garden", "brunch",
];

const HOSTILE: &[&str] = &[
    "hate",
    "stupid",
    "idiot",
    "trash",
    "ugly",
    "disgusting",
    "vile",
    "loser",
    "garbage",
    "pathetic",
    "scum",
    "awful",
    "worthless",
    "shut",
    "clown",
    "failure",
];

const URLS: &[&str] = &[
    "https://t.co/x1Y2z",
    "http://example.com/a",
    "https://news.site/p?q=1",
];
const MENTIONS: &[&str] = &["@someone", "@news_guy", "@a_friend", "@moderator"];

// the block words always appear together and mostly in offensive documents,
// so their marginal ratios look like eight independent offensive votes; in
// the rarer non-offensive block documents a single override word flips the
// true label. counting the block once (joint weights) handles this,
// counting it eight times (per-word independence) does not
const BLOCK: &[&str] = &[
    "press",
    "conference",
    "statement",
    "official",
    "remarks",
    "briefing",
    "sources",
    "reporters",
];
const OVERRIDE: &[&str] = &["apology", "clarified", "resolved"];

/// One generated document and its label.
pub type SynthDoc = (String, &'static str);

/// Generates `n` documents, roughly half per class, fully determined by the
/// seed.
pub fn generate(n: usize, seed: u64) -> Vec<SynthDoc> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut docs = Vec::with_capacity(n);
    for i in 0..n {
        let offensive = i % 2 == 1;
        docs.push((
            make_doc(&mut rng, offensive),
            if offensive { OFFENSIVE } else { NON_OFFENSIVE },
        ));
    }
    docs.shuffle(&mut rng);
    docs
}

fn make_doc(rng: &mut ChaCha8Rng, offensive: bool) -> String {
    let (own, other) = if offensive {
        (HOSTILE, FRIENDLY)
    } else {
        (FRIENDLY, HOSTILE)
    };
    let mut tokens: Vec<String> = Vec::new();
    if !offensive && rng.gen::<f64>() < 0.07 {
        // non-offensive block document: filler plus the whole block plus a
        // single override word, with no friendly markers to lean on
        let len = rng.gen_range(6..=10);
        for _ in 0..len {
            let word = FILLER[rng.gen_range(0..FILLER.len())];
            tokens.push(maybe_shout(rng, word));
        }
        tokens.extend(BLOCK.iter().map(|w| w.to_string()));
        tokens.push(OVERRIDE[rng.gen_range(0..OVERRIDE.len())].to_string());
    } else {
        let len = rng.gen_range(8..=18);
        for _ in 0..len {
            let roll: f64 = rng.gen();
            let word = if roll < 0.45 {
                own[rng.gen_range(0..own.len())]
            } else if roll < 0.48 {
                other[rng.gen_range(0..other.len())]
            } else {
                FILLER[rng.gen_range(0..FILLER.len())]
            };
            tokens.push(maybe_shout(rng, word));
        }
        if offensive && rng.gen::<f64>() < 0.35 {
            tokens.extend(BLOCK.iter().map(|w| w.to_string()));
        }
    }
    if rng.gen::<f64>() < 0.08 {
        tokens.push(URLS[rng.gen_range(0..URLS.len())].to_string());
    }
    if rng.gen::<f64>() < 0.08 {
        tokens.push(MENTIONS[rng.gen_range(0..MENTIONS.len())].to_string());
    }
    tokens.shuffle(rng);
    tokens.join(" ")
}

/// Uppercases some words so the cleaning stage has real work to do.
fn maybe_shout(rng: &mut ChaCha8Rng, word: &str) -> String {
    if rng.gen::<f64>() < 0.06 {
        word.to_uppercase()
    } else {
        word.to_string()
    }
}

fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// Renders the corpus as `text,label` CSV.
pub fn to_csv(docs: &[SynthDoc]) -> String {
    let mut out = String::from("text,label\n");
    for (text, label) in docs {
        out.push_str(&format!("{},{}\n", csv_escape(text), label));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        assert_eq!(generate(50, 7), generate(50, 7));
        assert_ne!(generate(50, 7), generate(50, 8));
    }

    #[test]
    fn classes_are_roughly_balanced() {
        let docs = generate(1000, 3);
        let offensive = docs.iter().filter(|(_, l)| *l == OFFENSIVE).count();
        assert_eq!(offensive, 500);
    }

    #[test]
    fn csv_output_parses_back() {
        use hatepipe_core::corpus::{parse_csv, ClassColumn};
        let docs = generate(200, 11);
        let ds = parse_csv(&to_csv(&docs), ClassColumn::Name("label".into()), true).unwrap();
        assert_eq!(ds.n_instances(), 200);
        assert_eq!(ds.n_classes(), 2);
    }
}
