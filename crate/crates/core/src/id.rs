use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

/// Opaque user or object identifier carried over from the input data.
///
/// Identifiers made only of ASCII digits order numerically (so `"9" < "10"`)
/// and sort before every non-numeric identifier; everything else orders
/// lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Id(String);

impl Id {
    pub fn new(raw: impl Into<String>) -> Self {
        Id(raw.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn numeric(&self) -> Option<u128> {
        let s = self.0.as_bytes();
        if s.is_empty() || s.len() > 38 || !s.iter().all(u8::is_ascii_digit) {
            return None;
        }
        self.0.parse().ok()
    }
}

impl Ord for Id {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.numeric(), other.numeric()) {
            (Some(a), Some(b)) => a.cmp(&b).then_with(|| self.0.cmp(&other.0)),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => self.0.cmp(&other.0),
        }
    }
}

impl PartialOrd for Id {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Id {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Id {
    fn from(s: &str) -> Self {
        Id(String::from(s))
    }
}

impl From<String> for Id {
    fn from(s: String) -> Self {
        Id(s)
    }
}
