//! Porter's suffix-stripping stemmer, original 1980 rule set.
//!
//! Operates on lowercase input. Letters other than `a e i o u` count as
//! consonants, with `y` a vowel when it follows a consonant. No minimum word
//! length is applied.

type Cond = fn(&[char]) -> bool;

struct Rule {
    suffix: &'static str,
    replacement: &'static str,
    cond: Option<Cond>,
}

const fn rule(suffix: &'static str, replacement: &'static str, cond: Option<Cond>) -> Rule {
    Rule {
        suffix,
        replacement,
        cond,
    }
}

/// Stem one lowercase word.
pub fn stem(word: &str) -> String {
    let mut w: Vec<char> = word.chars().collect();
    step1a(&mut w);
    step1b(&mut w);
    step1c(&mut w);
    apply_first(&mut w, STEP2);
    apply_first(&mut w, STEP3);
    apply_first(&mut w, STEP4);
    step5a(&mut w);
    step5b(&mut w);
    w.into_iter().collect()
}

fn consonant_flags(w: &[char]) -> Vec<bool> {
    let mut flags: Vec<bool> = Vec::with_capacity(w.len());
    for (i, &c) in w.iter().enumerate() {
        let cons = match c {
            'a' | 'e' | 'i' | 'o' | 'u' => false,
            'y' => i == 0 || !flags[i - 1],
            _ => true,
        };
        flags.push(cons);
    }
    flags
}

/// Number of VC sequences in `[C](VC)^m[V]`.
fn measure(w: &[char]) -> usize {
    let flags = consonant_flags(w);
    let mut m = 0;
    let mut prev_vowel = false;
    for cons in flags {
        if cons && prev_vowel {
            m += 1;
        }
        prev_vowel = !cons;
    }
    m
}

fn contains_vowel(w: &[char]) -> bool {
    consonant_flags(w).iter().any(|c| !c)
}

fn ends_double_consonant(w: &[char]) -> bool {
    let n = w.len();
    n >= 2 && w[n - 1] == w[n - 2] && consonant_flags(w)[n - 1]
}

/// `*o`: stem ends consonant-vowel-consonant, last not w, x or y.
fn ends_cvc(w: &[char]) -> bool {
    let n = w.len();
    if n < 3 {
        return false;
    }
    let f = consonant_flags(w);
    f[n - 3] && !f[n - 2] && f[n - 1] && !matches!(w[n - 1], 'w' | 'x' | 'y')
}

fn ends_with(w: &[char], suffix: &str) -> bool {
    let n = suffix.chars().count();
    w.len() >= n && w[w.len() - n..].iter().copied().eq(suffix.chars())
}

fn m_gt0(stem: &[char]) -> bool {
    measure(stem) > 0
}

fn m_gt1(stem: &[char]) -> bool {
    measure(stem) > 1
}

fn m_gt1_s_or_t(stem: &[char]) -> bool {
    measure(stem) > 1 && matches!(stem.last(), Some('s' | 't'))
}

/// Applies the first rule whose suffix matches; a failed condition stops the
/// search.
fn apply_first(w: &mut Vec<char>, rules: &[Rule]) -> bool {
    for r in rules {
        if ends_with(w, r.suffix) {
            let stem_len = w.len() - r.suffix.chars().count();
            if r.cond.is_none_or(|c| c(&w[..stem_len])) {
                w.truncate(stem_len);
                w.extend(r.replacement.chars());
                return true;
            }
            return false;
        }
    }
    false
}

fn step1a(w: &mut Vec<char>) {
    const RULES: &[Rule] = &[
        rule("sses", "ss", None),
        rule("ies", "i", None),
        rule("ss", "ss", None),
        rule("s", "", None),
    ];
    apply_first(w, RULES);
}

fn step1b(w: &mut Vec<char>) {
    if ends_with(w, "eed") {
        let stem_len = w.len() - 3;
        if measure(&w[..stem_len]) > 0 {
            w.truncate(stem_len + 2);
        }
        return;
    }
    let mut stripped = false;
    for suffix in ["ed", "ing"] {
        if ends_with(w, suffix) {
            let stem_len = w.len() - suffix.len();
            if contains_vowel(&w[..stem_len]) {
                w.truncate(stem_len);
                stripped = true;
                break;
            }
        }
    }
    if !stripped {
        return;
    }
    if ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz") {
        w.push('e');
    } else if ends_double_consonant(w) {
        if !matches!(w.last(), Some('l' | 's' | 'z')) {
            w.pop();
        }
    } else if measure(w) == 1 && ends_cvc(w) {
        w.push('e');
    }
}

fn step1c(w: &mut [char]) {
    if w.last() == Some(&'y') && contains_vowel(&w[..w.len() - 1]) {
        let n = w.len();
        w[n - 1] = 'i';
    }
}

const STEP2: &[Rule] = &[
    rule("ational", "ate", Some(m_gt0)),
    rule("tional", "tion", Some(m_gt0)),
    rule("enci", "ence", Some(m_gt0)),
    rule("anci", "ance", Some(m_gt0)),
    rule("izer", "ize", Some(m_gt0)),
    rule("abli", "able", Some(m_gt0)),
    rule("alli", "al", Some(m_gt0)),
    rule("entli", "ent", Some(m_gt0)),
    rule("eli", "e", Some(m_gt0)),
    rule("ousli", "ous", Some(m_gt0)),
    rule("ization", "ize", Some(m_gt0)),
    rule("ation", "ate", Some(m_gt0)),
    rule("ator", "ate", Some(m_gt0)),
    rule("alism", "al", Some(m_gt0)),
    rule("iveness", "ive", Some(m_gt0)),
    rule("fulness", "ful", Some(m_gt0)),
    rule("ousness", "ous", Some(m_gt0)),
    rule("aliti", "al", Some(m_gt0)),
    rule("iviti", "ive", Some(m_gt0)),
    rule("biliti", "ble", Some(m_gt0)),
];

const STEP3: &[Rule] = &[
    rule("icate", "ic", Some(m_gt0)),
    rule("ative", "", Some(m_gt0)),
    rule("alize", "al", Some(m_gt0)),
    rule("iciti", "ic", Some(m_gt0)),
    rule("ical", "ic", Some(m_gt0)),
    rule("ful", "", Some(m_gt0)),
    rule("ness", "", Some(m_gt0)),
];

const STEP4: &[Rule] = &[
    rule("al", "", Some(m_gt1)),
    rule("ance", "", Some(m_gt1)),
    rule("ence", "", Some(m_gt1)),
    rule("er", "", Some(m_gt1)),
    rule("ic", "", Some(m_gt1)),
    rule("able", "", Some(m_gt1)),
    rule("ible", "", Some(m_gt1)),
    rule("ant", "", Some(m_gt1)),
    rule("ement", "", Some(m_gt1)),
    rule("ment", "", Some(m_gt1)),
    rule("ent", "", Some(m_gt1)),
    rule("ion", "", Some(m_gt1_s_or_t)),
    rule("ou", "", Some(m_gt1)),
    rule("ism", "", Some(m_gt1)),
    rule("ate", "", Some(m_gt1)),
    rule("iti", "", Some(m_gt1)),
    rule("ous", "", Some(m_gt1)),
    rule("ive", "", Some(m_gt1)),
    rule("ize", "", Some(m_gt1)),
];

fn step5a(w: &mut Vec<char>) {
    if w.last() == Some(&'e') {
        let stem = &w[..w.len() - 1];
        let m = measure(stem);
        if m > 1 || (m == 1 && !ends_cvc(stem)) {
            w.pop();
        }
    }
}

fn step5b(w: &mut Vec<char>) {
    if ends_with(w, "ll") && measure(&w[..w.len() - 1]) > 1 {
        w.pop();
    }
}
