//! Map a free-text profile location onto a configured region.
//!
//! A region matches when its full name occurs anywhere in the location
//! (case-insensitive), or when its two-letter code occurs in uppercase. In the
//! default strict mode the code must be a whole run of letters, so `NYC` does
//! not match `NY`; [`AbbrevMatch::Loose`] accepts any uppercase substring.
//! When several regions match, the first one in table order wins.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    code: String,
    full_name: String,
    // cached lowercase form used for substring matching
    name_lower: String,
}

impl Region {
    pub fn code(&self) -> &str {
        &self.code
    }

    pub fn full_name(&self) -> &str {
        &self.full_name
    }
}

/// How region codes are recognised inside a location string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AbbrevMatch {
    /// Code must equal a maximal run of letters.
    #[default]
    Token,
    /// Code may appear anywhere as an uppercase substring.
    Loose,
}

/// Ordered list of regions. Order is significant: it resolves ambiguity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionTable {
    entries: Vec<Region>,
}

// CA, NY and TX lead so that they win any tie. West Virginia precedes
// Virginia and Arkansas precedes Kansas because the later names are
// substrings of the earlier ones.
const US_STATES: &[(&str, &str)] = &[
    ("CA", "California"),
    ("NY", "New York"),
    ("TX", "Texas"),
    ("AL", "Alabama"),
    ("AK", "Alaska"),
    ("AZ", "Arizona"),
    ("AR", "Arkansas"),
    ("CO", "Colorado"),
    ("CT", "Connecticut"),
    ("DE", "Delaware"),
    ("FL", "Florida"),
    ("GA", "Georgia"),
    ("HI", "Hawaii"),
    ("ID", "Idaho"),
    ("IL", "Illinois"),
    ("IN", "Indiana"),
    ("IA", "Iowa"),
    ("KS", "Kansas"),
    ("KY", "Kentucky"),
    ("LA", "Louisiana"),
    ("ME", "Maine"),
    ("MD", "Maryland"),
    ("MA", "Massachusetts"),
    ("MI", "Michigan"),
    ("MN", "Minnesota"),
    ("MS", "Mississippi"),
    ("MO", "Missouri"),
    ("MT", "Montana"),
    ("NE", "Nebraska"),
    ("NV", "Nevada"),
    ("NH", "New Hampshire"),
    ("NJ", "New Jersey"),
    ("NM", "New Mexico"),
    ("NC", "North Carolina"),
    ("ND", "North Dakota"),
    ("OH", "Ohio"),
    ("OK", "Oklahoma"),
    ("OR", "Oregon"),
    ("PA", "Pennsylvania"),
    ("RI", "Rhode Island"),
    ("SC", "South Carolina"),
    ("SD", "South Dakota"),
    ("TN", "Tennessee"),
    ("UT", "Utah"),
    ("VT", "Vermont"),
    ("WV", "West Virginia"),
    ("VA", "Virginia"),
    ("WA", "Washington"),
    ("WI", "Wisconsin"),
    ("WY", "Wyoming"),
];

impl RegionTable {
    /// Builds a table, validating code shape and uniqueness.
    pub fn new<I, C, N>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (C, N)>,
        C: Into<String>,
        N: Into<String>,
    {
        let mut codes = HashSet::new();
        let mut names = HashSet::new();
        let mut out = Vec::new();
        for (code, name) in entries {
            let code = code.into();
            let full_name = name.into().trim().to_string();
            if code.chars().count() != 2 || !code.chars().all(|c| c.is_ascii_uppercase()) {
                return Err(Error::input(format!(
                    "region code `{code}` is not two uppercase letters"
                )));
            }
            if full_name.is_empty() {
                return Err(Error::input(format!("region `{code}` has an empty name")));
            }
            let name_lower = full_name.to_lowercase();
            if !codes.insert(code.clone()) {
                return Err(Error::input(format!("duplicate region code `{code}`")));
            }
            if !names.insert(name_lower.clone()) {
                return Err(Error::input(format!("duplicate region name `{full_name}`")));
            }
            out.push(Region {
                code,
                full_name,
                name_lower,
            });
        }
        Ok(RegionTable { entries: out })
    }

    /// The 50 US states, with CA, NY and TX first.
    pub fn us_states() -> Self {
        RegionTable::new(US_STATES.iter().copied()).expect("built-in table is valid")
    }

    /// Parses `code,full_name` lines. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (code, name) = line.split_once(',').ok_or_else(|| {
                Error::input(format!(
                    "region table line {}: expected `code,full_name`",
                    lineno + 1
                ))
            })?;
            rows.push((code.trim().to_string(), name.trim().to_string()));
        }
        RegionTable::new(rows)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::io(format!("reading region table {}", path.display()), e))?;
        RegionTable::parse(&text)
    }

    pub fn contains(&self, code: &str) -> bool {
        self.entries.iter().any(|r| r.code == code)
    }

    pub fn get(&self, code: &str) -> Option<&Region> {
        self.entries.iter().find(|r| r.code == code)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Region> {
        self.entries.iter()
    }

    pub fn codes(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|r| r.code.as_str())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl Default for RegionTable {
    fn default() -> Self {
        RegionTable::us_states()
    }
}

/// Strict-token resolution; see [`resolve_region_with`].
pub fn resolve_region<'t>(location: &str, table: &'t RegionTable) -> Option<&'t str> {
    resolve_region_with(location, table, AbbrevMatch::Token)
}

pub fn resolve_region_with<'t>(
    location: &str,
    table: &'t RegionTable,
    mode: AbbrevMatch,
) -> Option<&'t str> {
    if location.is_empty() {
        return None;
    }
    let lower = location.to_lowercase();
    let tokens: Vec<&str> = match mode {
        AbbrevMatch::Token => letter_runs(location).collect(),
        AbbrevMatch::Loose => Vec::new(),
    };
    table
        .entries
        .iter()
        .find(|region| {
            if lower.contains(&region.name_lower) {
                return true;
            }
            match mode {
                AbbrevMatch::Token => tokens.iter().any(|t| *t == region.code),
                AbbrevMatch::Loose => location.contains(region.code.as_str()),
            }
        })
        .map(|r| r.code.as_str())
}

fn letter_runs(text: &str) -> impl Iterator<Item = &str> {
    text.split(|c: char| !c.is_alphabetic())
        .filter(|s| !s.is_empty())
}
